//! Matrix-space descriptors, the solvable groups acting on them, and the
//! proof-prescribed generator and coordinate orderings for each family of
//! block representations.

use crate::linalg::{commutator, Span};
use crate::poly::{
    generic_general, generic_skew, generic_symmetric, pfaffian_sub, v, Polynomial, PolyMatrix,
    Rat, Variable,
};
use num::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("family {family} requires m >= {min}, got {m}")]
    SizeTooSmall { family: String, m: u32, min: u32 },
    #[error("unknown family name: {0}")]
    UnknownFamily(String),
    #[error("generator span is not closed under the Lie bracket (pair {i}, {j})")]
    NotClosedUnderBracket { i: usize, j: usize },
}

/// The ambient matrix space a family acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum SpaceKind {
    General { rows: u32, cols: u32 },
    Symmetric { m: u32 },
    Skew { m: u32 },
}

impl SpaceKind {
    pub fn rows(&self) -> u32 {
        match *self {
            SpaceKind::General { rows, .. } => rows,
            SpaceKind::Symmetric { m } | SpaceKind::Skew { m } => m,
        }
    }

    pub fn cols(&self) -> u32 {
        match *self {
            SpaceKind::General { cols, .. } => cols,
            SpaceKind::Symmetric { m } | SpaceKind::Skew { m } => m,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            SpaceKind::General { rows, cols } => (rows * cols) as usize,
            SpaceKind::Symmetric { m } => (m * (m + 1) / 2) as usize,
            SpaceKind::Skew { m } => (m * (m - 1) / 2) as usize,
        }
    }

    /// Full ambient coordinate basis in row-major order of canonical entry.
    pub fn coordinates(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        match *self {
            SpaceKind::General { rows, cols } => {
                for i in 1..=rows {
                    for j in 1..=cols {
                        out.push(v(i, j));
                    }
                }
            }
            SpaceKind::Symmetric { m } => {
                for i in 1..=m {
                    for j in i..=m {
                        out.push(v(i, j));
                    }
                }
            }
            SpaceKind::Skew { m } => {
                for i in 1..=m {
                    for j in i + 1..=m {
                        out.push(v(i, j));
                    }
                }
            }
        }
        out
    }

    /// Generic matrix of the full ambient space.
    pub fn generic(&self) -> PolyMatrix {
        match *self {
            SpaceKind::General { rows, cols } => generic_general(rows as usize, cols as usize),
            SpaceKind::Symmetric { m } => generic_symmetric(m as usize),
            SpaceKind::Skew { m } => generic_skew(m as usize),
        }
    }

    /// Canonical coordinate variable for matrix position (i, j), 1-based;
    /// `None` where the space stores no independent entry (skew diagonal).
    pub fn canonical_var(&self, i: u32, j: u32) -> Option<Variable> {
        match *self {
            SpaceKind::General { .. } => Some(v(i, j)),
            SpaceKind::Symmetric { .. } => Some(v(i.min(j), i.max(j))),
            SpaceKind::Skew { .. } => {
                if i == j {
                    None
                } else {
                    Some(v(i.min(j), i.max(j)))
                }
            }
        }
    }
}

/// Which factor of the acting group a generator belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Side {
    Left,
    Right,
    Bilinear,
}

/// The Lie-algebra element a linear generator exponentiates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenMatrix {
    /// Elementary matrix `E_{i,j}`, 1-based.
    Elementary(u32, u32),
    /// `E_{2t-1,2t-1} + E_{2t,2t}`: the scalar direction of the t-th 2x2
    /// diagonal block.
    PairScalar(u32),
}

impl GenMatrix {
    /// Dense row-major rational matrix of size n x n.
    pub fn dense(&self, n: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n * n];
        match *self {
            GenMatrix::Elementary(i, j) => {
                out[(i as usize - 1) * n + (j as usize - 1)] = Rat::one();
            }
            GenMatrix::PairScalar(t) => {
                let a = 2 * t as usize - 2;
                let b = 2 * t as usize - 1;
                out[a * n + a] = Rat::one();
                out[b * n + b] = Rat::one();
            }
        }
        out
    }
}

impl fmt::Display for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenMatrix::Elementary(i, j) => write!(f, "E_{}_{}", i, j),
            GenMatrix::PairScalar(t) => {
                write!(f, "E_{}_{}+E_{}_{}", 2 * t - 1, 2 * t - 1, 2 * t, 2 * t)
            }
        }
    }
}

/// A linear generator of the acting group's Lie algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub side: Side,
    pub mat: GenMatrix,
    pub label: String,
}

impl Generator {
    pub fn new(side: Side, mat: GenMatrix) -> Self {
        let label = match side {
            Side::Right => format!("zeta({})", mat),
            Side::Left | Side::Bilinear => format!("xi({})", mat),
        };
        Generator { side, mat, label }
    }
}

/// One generator slot of a family: a linear field or a nonlinear eta field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenSpec {
    Linear(Generator),
    Eta(u32),
}

impl GenSpec {
    pub fn label(&self) -> String {
        match self {
            GenSpec::Linear(g) => g.label.clone(),
            GenSpec::Eta(k) => format!("eta_{}", k),
        }
    }
}

/// The closed enumeration of representation families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize)]
pub enum Family {
    Sym,
    GenLU,
    SkewD,
    SkewG,
    ModLU,
    ModLURect,
    SkewNonlinear,
    SymRestrict1,
    SymRestrict2,
    GenRestrict,
    GenRestrictRect,
    SymExtension,
}

pub const ALL_FAMILIES: [Family; 12] = [
    Family::Sym,
    Family::GenLU,
    Family::SkewD,
    Family::SkewG,
    Family::ModLU,
    Family::ModLURect,
    Family::SkewNonlinear,
    Family::SymRestrict1,
    Family::SymRestrict2,
    Family::GenRestrict,
    Family::GenRestrictRect,
    Family::SymExtension,
];

impl Family {
    pub fn min_m(&self) -> u32 {
        match self {
            Family::Sym | Family::GenLU => 1,
            Family::ModLU | Family::ModLURect | Family::SkewD => 2,
            Family::SkewG
            | Family::SkewNonlinear
            | Family::SymRestrict1
            | Family::SymExtension
            | Family::GenRestrict
            | Family::GenRestrictRect => 3,
            Family::SymRestrict2 => 4,
        }
    }

    pub fn cli_name(&self) -> &'static str {
        match self {
            Family::Sym => "sym",
            Family::GenLU => "gen-lu",
            Family::SkewD => "skew-d",
            Family::SkewG => "skew-g",
            Family::ModLU => "mod-lu",
            Family::ModLURect => "mod-lu-rect",
            Family::SkewNonlinear => "skew-nonlinear",
            Family::SymRestrict1 => "sym-restrict-1",
            Family::SymRestrict2 => "sym-restrict-2",
            Family::GenRestrict => "gen-restrict",
            Family::GenRestrictRect => "gen-restrict-rect",
            Family::SymExtension => "sym-extension",
        }
    }

    pub fn from_cli_name(name: &str) -> Result<Family, SpaceError> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.cli_name() == name)
            .ok_or_else(|| SpaceError::UnknownFamily(name.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cli_name())
    }
}

/// Full descriptor of one representation family at a fixed size.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: Family,
    pub m: u32,
    pub space: SpaceKind,
    /// Generators grouped block by block, highest block first.
    pub generators: Vec<GenSpec>,
    /// Coordinates grouped to match `generators`.
    pub coord_order: Vec<Variable>,
    pub block_sizes: Vec<usize>,
}

/// Parity partner of `k`: 1 for even `k`, 2 for odd `k`.
pub fn epsilon(k: u32) -> u32 {
    if k % 2 == 0 {
        1
    } else {
        2
    }
}

/// The contiguous Pfaffian index set `{epsilon(k), …, k}`.
pub fn pf_range(k: u32) -> BTreeSet<u32> {
    (epsilon(k)..=k).collect()
}

fn bil(i: u32, j: u32) -> GenSpec {
    GenSpec::Linear(Generator::new(Side::Bilinear, GenMatrix::Elementary(i, j)))
}

fn pair(t: u32) -> GenSpec {
    GenSpec::Linear(Generator::new(Side::Bilinear, GenMatrix::PairScalar(t)))
}

fn left(i: u32, j: u32) -> GenSpec {
    GenSpec::Linear(Generator::new(Side::Left, GenMatrix::Elementary(i, j)))
}

fn right(i: u32, j: u32) -> GenSpec {
    GenSpec::Linear(Generator::new(Side::Right, GenMatrix::Elementary(i, j)))
}

/// Construct a family descriptor with the generator and coordinate
/// orderings under which its Saito matrix is block lower triangular.
pub fn build_family(name: Family, m: u32) -> Result<FamilySpec, SpaceError> {
    if m < name.min_m() {
        return Err(SpaceError::SizeTooSmall {
            family: name.cli_name().to_string(),
            m,
            min: name.min_m(),
        });
    }
    let mut gens: Vec<GenSpec> = Vec::new();
    let mut coords: Vec<Variable> = Vec::new();
    let mut blocks: Vec<usize> = Vec::new();
    let block = |gens: &mut Vec<GenSpec>,
                     coords: &mut Vec<Variable>,
                     blocks: &mut Vec<usize>,
                     g: Vec<GenSpec>,
                     c: Vec<Variable>| {
        assert_eq!(g.len(), c.len(), "blocks are square");
        if g.is_empty() {
            return;
        }
        blocks.push(g.len());
        gens.extend(g);
        coords.extend(c);
    };

    let space = match name {
        Family::Sym
        | Family::SymRestrict1
        | Family::SymRestrict2
        | Family::SymExtension => SpaceKind::Symmetric { m },
        Family::SkewD | Family::SkewG | Family::SkewNonlinear => SpaceKind::Skew { m },
        Family::GenLU | Family::ModLU | Family::GenRestrict => SpaceKind::General {
            rows: m,
            cols: m,
        },
        Family::ModLURect | Family::GenRestrictRect => SpaceKind::General {
            rows: m - 1,
            cols: m,
        },
    };

    match name {
        Family::Sym => {
            // One block per new column j: coordinates a_{1,j}..a_{j,j},
            // generators E_{j,1}..E_{j,j}.
            for j in 1..=m {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=j).map(|i| bil(j, i)).collect(),
                    (1..=j).map(|i| v(i, j)).collect(),
                );
            }
        }
        Family::GenLU | Family::ModLU => {
            // Per level lp: the strictly-upper part of column lp+1 paired
            // with right-side generators, then row lp+1 paired with
            // left-side generators. The modified variant drops the
            // first-row right generators in favour of the diagonal ones.
            for lp in 0..m {
                if lp > 0 {
                    let j_range: Vec<u32> = if name == Family::ModLU {
                        (2..=lp + 1).collect()
                    } else {
                        (1..=lp).collect()
                    };
                    block(
                        &mut gens,
                        &mut coords,
                        &mut blocks,
                        j_range.iter().map(|&j| right(j, lp + 1)).collect(),
                        (1..=lp).map(|i| v(i, lp + 1)).collect(),
                    );
                }
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=lp + 1).map(|j| left(lp + 1, j)).collect(),
                    (1..=lp + 1).map(|j| v(lp + 1, j)).collect(),
                );
            }
        }
        Family::ModLURect => {
            for lp in 0..m - 1 {
                if lp > 0 {
                    block(
                        &mut gens,
                        &mut coords,
                        &mut blocks,
                        (2..=lp + 1).map(|j| right(j, lp + 1)).collect(),
                        (1..=lp).map(|i| v(i, lp + 1)).collect(),
                    );
                }
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=lp + 1).map(|j| left(lp + 1, j)).collect(),
                    (1..=lp + 1).map(|j| v(lp + 1, j)).collect(),
                );
            }
            block(
                &mut gens,
                &mut coords,
                &mut blocks,
                (2..=m).map(|j| right(j, m)).collect(),
                (1..=m - 1).map(|i| v(i, m)).collect(),
            );
        }
        Family::SkewD => {
            // Column pairs (2t-1, 2t) form one block each; the scalar
            // direction of the t-th 2x2 diagonal block closes the square.
            for t in 1..=m / 2 {
                let mut g: Vec<GenSpec> = (1..=2 * t - 2).map(|j| bil(2 * t - 1, j)).collect();
                g.extend((1..=2 * t - 2).map(|j| bil(2 * t, j)));
                g.push(pair(t));
                let mut c: Vec<Variable> = (1..=2 * t - 2).map(|i| v(i, 2 * t - 1)).collect();
                c.extend((1..=2 * t - 1).map(|i| v(i, 2 * t)));
                block(&mut gens, &mut coords, &mut blocks, g, c);
            }
            if m % 2 == 1 {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=m - 1).map(|j| bil(m, j)).collect(),
                    (1..=m - 1).map(|i| v(i, m)).collect(),
                );
            }
        }
        Family::SkewG => {
            // One block per column lp+1; odd levels swap the last
            // below-diagonal generator for the diagonal direction.
            for lp in 1..=m - 1 {
                let g: Vec<GenSpec> = if lp % 2 == 0 {
                    (1..=lp).map(|j| bil(lp + 1, j)).collect()
                } else {
                    (1..=lp - 1)
                        .map(|j| bil(lp + 1, j))
                        .chain(std::iter::once(bil(lp + 1, lp + 1)))
                        .collect()
                };
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    g,
                    (1..=lp).map(|i| v(i, lp + 1)).collect(),
                );
            }
        }
        Family::SkewNonlinear => {
            block(
                &mut gens,
                &mut coords,
                &mut blocks,
                vec![bil(1, 1), bil(2, 2), bil(3, 3)],
                vec![v(1, 2), v(1, 3), v(2, 3)],
            );
            for c in 4..=m {
                let mut g: Vec<GenSpec> = (3..=c).map(|j| bil(c, j)).collect();
                g.push(GenSpec::Eta(c - 2));
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    g,
                    (1..=c - 1).map(|i| v(i, c)).collect(),
                );
            }
        }
        Family::SymRestrict1 => {
            block(
                &mut gens,
                &mut coords,
                &mut blocks,
                vec![bil(1, 1), bil(2, 2)],
                vec![v(1, 2), v(2, 2)],
            );
            for j in 3..=m {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=j).map(|i| bil(j, i)).collect(),
                    (1..=j).map(|i| v(i, j)).collect(),
                );
            }
        }
        Family::SymRestrict2 => {
            block(
                &mut gens,
                &mut coords,
                &mut blocks,
                vec![
                    bil(1, 1),
                    bil(2, 2),
                    bil(3, 2),
                    bil(3, 3),
                    bil(4, 2),
                    bil(4, 3),
                    bil(4, 4),
                ],
                vec![
                    v(1, 3),
                    v(2, 3),
                    v(3, 3),
                    v(1, 4),
                    v(2, 4),
                    v(3, 4),
                    v(4, 4),
                ],
            );
            for j in 5..=m {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=j).map(|i| bil(j, i)).collect(),
                    (1..=j).map(|i| v(i, j)).collect(),
                );
            }
        }
        Family::SymExtension => {
            block(
                &mut gens,
                &mut coords,
                &mut blocks,
                vec![bil(1, 1), bil(2, 2), bil(2, 3), bil(3, 2), bil(3, 3)],
                vec![v(1, 2), v(1, 3), v(2, 2), v(2, 3), v(3, 3)],
            );
            for j in 4..=m {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=j).map(|i| bil(j, i)).collect(),
                    (1..=j).map(|i| v(i, j)).collect(),
                );
            }
        }
        Family::GenRestrict | Family::GenRestrictRect => {
            block(
                &mut gens,
                &mut coords,
                &mut blocks,
                vec![left(1, 1), left(2, 2), right(2, 2)],
                vec![v(1, 2), v(2, 1), v(2, 2)],
            );
            let top = if name == Family::GenRestrict { m - 1 } else { m - 2 };
            for lp in 2..=top {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (2..=lp + 1).map(|j| right(j, lp + 1)).collect(),
                    (1..=lp).map(|i| v(i, lp + 1)).collect(),
                );
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (1..=lp + 1).map(|j| left(lp + 1, j)).collect(),
                    (1..=lp + 1).map(|j| v(lp + 1, j)).collect(),
                );
            }
            if name == Family::GenRestrictRect {
                block(
                    &mut gens,
                    &mut coords,
                    &mut blocks,
                    (2..=m).map(|j| right(j, m)).collect(),
                    (1..=m - 1).map(|i| v(i, m)).collect(),
                );
            }
        }
    }

    let spec = FamilySpec {
        name,
        m,
        space,
        generators: gens,
        coord_order: coords,
        block_sizes: blocks,
    };
    debug_assert_eq!(spec.generators.len(), spec.coord_order.len());
    debug_assert_eq!(
        spec.block_sizes.iter().sum::<usize>(),
        spec.generators.len()
    );
    Ok(spec)
}

impl FamilySpec {
    /// Dimension of the (possibly restricted) space the family acts on.
    pub fn dim(&self) -> usize {
        self.coord_order.len()
    }

    pub fn coord_set(&self) -> BTreeSet<Variable> {
        self.coord_order.iter().copied().collect()
    }

    /// Generic matrix of the family's space with every non-coordinate
    /// entry (the restricted directions) set to zero.
    pub fn generic_matrix(&self) -> PolyMatrix {
        let coords = self.coord_set();
        let mut g = self.space.generic();
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                match self.space.canonical_var(i as u32 + 1, j as u32 + 1) {
                    Some(var) if coords.contains(&var) => {}
                    _ => *g.at_mut(i, j) = Polynomial::zero(),
                }
            }
        }
        g
    }

    /// The previous level of the tower, when one exists.
    pub fn tower_predecessor(&self) -> Option<u32> {
        let min = self.name.min_m();
        let prev = match self.name {
            // The skew pair tower steps two columns at a time on even sizes.
            Family::SkewD => {
                if self.m % 2 == 0 {
                    self.m.checked_sub(2)
                } else {
                    self.m.checked_sub(1)
                }
            }
            _ => self.m.checked_sub(1),
        }?;
        (prev >= min).then_some(prev)
    }

    /// Half-open generator index ranges of the diagonal blocks.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.block_sizes.len());
        let mut start = 0;
        for &s in &self.block_sizes {
            out.push(start..start + s);
            start += s;
        }
        out
    }

    /// Linear generators embedded as rational matrices in `gl_r ⊕ gl_c`
    /// (left/right actions) or `gl_m` (bilinear actions); eta markers are
    /// degree-positive and excluded per the solvability reduction.
    pub fn embedded_linear_generators(&self) -> (Vec<Vec<Rat>>, usize) {
        let r = self.space.rows() as usize;
        let c = self.space.cols() as usize;
        let two_sided = self
            .generators
            .iter()
            .any(|g| matches!(g, GenSpec::Linear(g) if g.side == Side::Right));
        let n = if two_sided { r + c } else { r };
        let mats = self
            .generators
            .iter()
            .filter_map(|g| match g {
                GenSpec::Linear(g) => {
                    let mut out = vec![Rat::zero(); n * n];
                    let (dim, off) = match g.side {
                        Side::Left | Side::Bilinear => (r, 0),
                        Side::Right => (c, r),
                    };
                    let dense = g.mat.dense(dim);
                    for i in 0..dim {
                        for j in 0..dim {
                            out[(off + i) * n + (off + j)] = dense[i * dim + j].clone();
                        }
                    }
                    Some(out)
                }
                GenSpec::Eta(_) => None,
            })
            .collect();
        (mats, n)
    }

    /// Derived series of the family's linear Lie algebra.
    pub fn derived_series(&self) -> Result<DerivedSeries, SpaceError> {
        let (mats, n) = self.embedded_linear_generators();
        derived_series_of_matrices(&mats, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DerivedSeries {
    /// Dimensions of the successive derived algebras, starting with the
    /// span itself; ends with 0 or with the first repeated dimension.
    pub dims: Vec<usize>,
    pub solvable: bool,
}

/// Derived series of the Lie algebra spanned by square rational matrices.
///
/// Fails with `NotClosedUnderBracket` when the span is not a subalgebra.
pub fn derived_series_of_matrices(
    basis: &[Vec<Rat>],
    n: usize,
) -> Result<DerivedSeries, SpaceError> {
    let mut span = Span::new(n * n);
    let mut current: Vec<Vec<Rat>> = Vec::new();
    for b in basis {
        if span.insert(b) {
            current.push(b.clone());
        }
    }
    for i in 0..current.len() {
        for j in i + 1..current.len() {
            let br = commutator(&current[i], &current[j], n);
            if !span.contains(&br) {
                return Err(SpaceError::NotClosedUnderBracket { i, j });
            }
        }
    }

    let mut dims = vec![span.dim()];
    loop {
        let mut next_span = Span::new(n * n);
        let mut next: Vec<Vec<Rat>> = Vec::new();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let br = commutator(&current[i], &current[j], n);
                if next_span.insert(&br) {
                    next.push(br);
                }
            }
        }
        let d = next_span.dim();
        dims.push(d);
        let stabilized = d == *dims[dims.len() - 2..].first().unwrap();
        current = next;
        if d == 0 || stabilized {
            return Ok(DerivedSeries {
                dims,
                solvable: d == 0,
            });
        }
    }
}

/// The named minors and Pfaffians whose product is the family's expected
/// defining equation (distinct factors, without multiplicities).
pub fn minor_polynomials(family: &FamilySpec) -> Vec<(String, Polynomial)> {
    let m = family.m;
    let a = family.generic_matrix();
    let var = |i, j| Polynomial::var(v(i, j));
    let det = |k: u32| {
        (
            format!("det(A^({}))", k),
            a.corner(k as usize).determinant().unwrap(),
        )
    };
    let det_hat = |k: u32| {
        (
            format!("det(Ahat^({}))", k),
            a.shifted_corner(1, k as usize).determinant().unwrap(),
        )
    };
    let mut out = Vec::new();
    match family.name {
        Family::Sym | Family::GenLU => {
            out.extend((1..=m).map(det));
        }
        Family::SkewD | Family::SkewG => {
            out.extend((1..=m / 2).map(|t| det(2 * t)));
        }
        Family::ModLU => {
            out.extend((1..=m).map(det));
            out.extend((1..=m - 1).map(det_hat));
        }
        Family::ModLURect => {
            out.extend((1..=m - 1).map(det));
            out.extend((1..=m - 1).map(det_hat));
        }
        Family::SkewNonlinear => {
            for k in 1..=m - 2 {
                out.push((
                    format!("det(Ahathat^({}))", k),
                    a.shifted_corner(2, k as usize).determinant().unwrap(),
                ));
            }
            for k in 2..=m {
                let set = pf_range(k);
                let name = format!(
                    "Pf({})",
                    set.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                out.push((name, pfaffian_sub(&a, &set)));
            }
        }
        Family::SymRestrict1 => {
            out.push(("a_1_2".into(), var(1, 2)));
            out.push(("a_2_2".into(), var(2, 2)));
            // a_3_3 a_1_2^2 - 2 a_2_3 a_1_2 a_1_3 + a_2_2 a_1_3^2
            let q = var(3, 3)
                .mul(&var(1, 2).pow(2))
                .sub(&var(2, 3).mul(&var(1, 2)).mul(&var(1, 3)).scale(&crate::poly::rat(2)))
                .add(&var(2, 2).mul(&var(1, 3).pow(2)));
            out.push(("q3".into(), q));
            out.extend((4..=m).map(det));
        }
        Family::SymRestrict2 => {
            out.push(("a_1_3".into(), var(1, 3)));
            out.push(("a_2_3".into(), var(2, 3)));
            out.push((
                "m2".into(),
                var(1, 3).mul(&var(2, 4)).sub(&var(1, 4).mul(&var(2, 3))),
            ));
            // a_3_3 a_2_4^2 - 2 a_3_4 a_2_4 a_2_3 + a_4_4 a_2_3^2
            let q = var(3, 3)
                .mul(&var(2, 4).pow(2))
                .sub(&var(3, 4).mul(&var(2, 4)).mul(&var(2, 3)).scale(&crate::poly::rat(2)))
                .add(&var(4, 4).mul(&var(2, 3).pow(2)));
            out.push(("q4".into(), q));
            out.extend((5..=m).map(det));
        }
        Family::GenRestrict | Family::GenRestrictRect => {
            out.push(("a_1_2".into(), var(1, 2)));
            out.push(("a_2_1".into(), var(2, 1)));
            out.push(("a_2_2".into(), var(2, 2)));
            out.push((
                "m2".into(),
                var(1, 2).mul(&var(2, 3)).sub(&var(1, 3).mul(&var(2, 2))),
            ));
            let top = if family.name == Family::GenRestrict {
                m
            } else {
                m - 1
            };
            out.extend((3..=top).map(det));
            out.extend((3..=m - 1).map(det_hat));
        }
        Family::SymExtension => {
            out.push((
                "q2".into(),
                var(2, 2).mul(&var(3, 3)).sub(&var(2, 3).pow(2)),
            ));
            out.extend((3..=m).map(det));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_2_matches_expected_shape() {
        let f = build_family(Family::Sym, 2).unwrap();
        assert_eq!(f.dim(), 3);
        assert_eq!(f.block_sizes, vec![1, 2]);
        let labels: Vec<String> = f.generators.iter().map(GenSpec::label).collect();
        assert_eq!(labels, vec!["xi(E_1_1)", "xi(E_2_1)", "xi(E_2_2)"]);
        assert_eq!(f.coord_order, vec![v(1, 1), v(1, 2), v(2, 2)]);
    }

    #[test]
    fn skew_nonlinear_4_generators() {
        let f = build_family(Family::SkewNonlinear, 4).unwrap();
        let labels: Vec<String> = f.generators.iter().map(GenSpec::label).collect();
        assert_eq!(
            labels,
            vec![
                "xi(E_1_1)",
                "xi(E_2_2)",
                "xi(E_3_3)",
                "xi(E_4_3)",
                "xi(E_4_4)",
                "eta_2"
            ]
        );
        assert_eq!(f.block_sizes, vec![3, 3]);
    }

    #[test]
    fn mod_lu_rect_3_shape() {
        let f = build_family(Family::ModLURect, 3).unwrap();
        assert_eq!(f.space, SpaceKind::General { rows: 2, cols: 3 });
        assert_eq!(f.dim(), 6);
        // B_2 contributes 3 generators, C_3 contributes 3.
        let lefts = f
            .generators
            .iter()
            .filter(|g| matches!(g, GenSpec::Linear(g) if g.side == Side::Left))
            .count();
        let rights = f
            .generators
            .iter()
            .filter(|g| matches!(g, GenSpec::Linear(g) if g.side == Side::Right))
            .count();
        assert_eq!((lefts, rights), (3, 3));
    }

    #[test]
    fn size_bounds_are_enforced() {
        assert!(matches!(
            build_family(Family::SymRestrict2, 3),
            Err(SpaceError::SizeTooSmall { .. })
        ));
        assert!(matches!(
            build_family(Family::SkewG, 2),
            Err(SpaceError::SizeTooSmall { .. })
        ));
        assert!(build_family(Family::Sym, 1).is_ok());
        assert!(matches!(
            Family::from_cli_name("nope"),
            Err(SpaceError::UnknownFamily(_))
        ));
    }

    #[test]
    fn equidimensionality_for_all_families() {
        for f in ALL_FAMILIES {
            for m in f.min_m()..=6 {
                let spec = build_family(f, m).unwrap();
                assert_eq!(
                    spec.generators.len(),
                    spec.dim(),
                    "{} at m={}",
                    f.cli_name(),
                    m
                );
                assert_eq!(
                    spec.block_sizes.iter().sum::<usize>(),
                    spec.dim(),
                    "{} at m={}",
                    f.cli_name(),
                    m
                );
            }
        }
    }

    #[test]
    fn restricted_generic_matrices_zero_the_corner() {
        let f = build_family(Family::SymRestrict2, 4).unwrap();
        let g = f.generic_matrix();
        assert!(g.at(0, 0).is_zero());
        assert!(g.at(0, 1).is_zero());
        assert!(g.at(1, 0).is_zero());
        assert!(g.at(1, 1).is_zero());
        assert!(!g.at(0, 2).is_zero());
    }

    #[test]
    fn epsilon_parity() {
        assert_eq!(epsilon(2), 1);
        assert_eq!(epsilon(3), 2);
        assert_eq!(epsilon(4), 1);
        assert_eq!(epsilon(5), 2);
    }

    #[test]
    fn derived_series_examples() {
        // Lower-triangular 2x2: dims [3, 1, 0].
        let e11 = GenMatrix::Elementary(1, 1).dense(2);
        let e21 = GenMatrix::Elementary(2, 1).dense(2);
        let e22 = GenMatrix::Elementary(2, 2).dense(2);
        let s = derived_series_of_matrices(&[e11.clone(), e21.clone(), e22.clone()], 2).unwrap();
        assert_eq!(s.dims, vec![3, 1, 0]);
        assert!(s.solvable);

        // Full gl_2 stabilizes at sl_2 (dim 3), not solvable.
        let e12 = GenMatrix::Elementary(1, 2).dense(2);
        let s = derived_series_of_matrices(&[e11.clone(), e12.clone(), e21, e22], 2).unwrap();
        assert_eq!(s.dims, vec![4, 3, 3]);
        assert!(!s.solvable);

        // Abelian diagonal algebra: [m, 0].
        let d: Vec<Vec<Rat>> = (1..=3)
            .map(|i| GenMatrix::Elementary(i, i).dense(3))
            .collect();
        let s = derived_series_of_matrices(&d, 3).unwrap();
        assert_eq!(s.dims, vec![3, 0]);
        assert!(s.solvable);

        // A non-subalgebra span is rejected.
        let bad = vec![GenMatrix::Elementary(1, 2).dense(2), GenMatrix::Elementary(2, 1).dense(2)];
        assert!(matches!(
            derived_series_of_matrices(&bad, 2),
            Err(SpaceError::NotClosedUnderBracket { .. })
        ));
    }

    #[test]
    fn family_algebras_are_closed_and_mostly_solvable() {
        for f in ALL_FAMILIES {
            for m in f.min_m()..=5 {
                let spec = build_family(f, m).unwrap();
                let series = spec.derived_series().unwrap();
                if f == Family::SymExtension {
                    // Contains a gl_2 corner; the series is reported
                    // without a solvability assertion.
                    assert!(!series.solvable);
                } else {
                    assert!(series.solvable, "{} at m={}", f.cli_name(), m);
                }
            }
        }
    }

    #[test]
    fn minor_lists_match_expected_names() {
        let f = build_family(Family::Sym, 3).unwrap();
        let names: Vec<String> = minor_polynomials(&f).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["det(A^(1))", "det(A^(2))", "det(A^(3))"]);

        let f = build_family(Family::SkewNonlinear, 4).unwrap();
        let names: Vec<String> = minor_polynomials(&f).into_iter().map(|(n, _)| n).collect();
        assert_eq!(
            names,
            vec![
                "det(Ahathat^(1))",
                "det(Ahathat^(2))",
                "Pf(1,2)",
                "Pf(2,3)",
                "Pf(1,2,3,4)"
            ]
        );

        let f = build_family(Family::SkewD, 4).unwrap();
        let names: Vec<String> = minor_polynomials(&f).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["det(A^(2))", "det(A^(4))"]);
    }

    #[test]
    fn tower_predecessors() {
        assert_eq!(build_family(Family::Sym, 3).unwrap().tower_predecessor(), Some(2));
        assert_eq!(build_family(Family::Sym, 1).unwrap().tower_predecessor(), None);
        assert_eq!(build_family(Family::SkewD, 6).unwrap().tower_predecessor(), Some(4));
        assert_eq!(build_family(Family::SkewD, 5).unwrap().tower_predecessor(), Some(4));
        assert_eq!(build_family(Family::SkewD, 3).unwrap().tower_predecessor(), Some(2));
        assert_eq!(build_family(Family::SkewD, 2).unwrap().tower_predecessor(), None);
        assert_eq!(build_family(Family::SkewG, 3).unwrap().tower_predecessor(), None);
        assert_eq!(
            build_family(Family::SymRestrict2, 5).unwrap().tower_predecessor(),
            Some(4)
        );
    }
}
