//! Representation vector fields for the linear and bilinear matrix actions,
//! the nonlinear Pfaffian fields eta_k, Lie brackets, and bracket-closure
//! verification for every family.

use crate::linalg::solve_combination;
use crate::poly::{generic_skew, pfaffian_sub, v, PolyMatrix, Polynomial, Rat, Variable};
use crate::spaces::{epsilon, pf_range, Family, FamilySpec, GenSpec, Side, SpaceKind};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum VFieldError {
    #[error("matrix argument has the wrong shape for the action")]
    ShapeMismatch,
    #[error("action value at ({row}, {col}) leaves the subspace: {value}")]
    ValueNotInSpace { row: u32, col: u32, value: String },
    #[error("eta index {k} out of range for size {m} (need 2 <= k <= m-2)")]
    IndexOutOfRange { m: u32, k: u32 },
    #[error("vector fields live on different spaces")]
    SpaceMismatch,
    #[error("bracket [{left}, {right}] is not in the generated module; residual {residual}")]
    ClosureFailure {
        left: String,
        right: String,
        residual: String,
    },
}

/// A polynomial vector field on a matrix space, stored as the coefficient
/// of each coordinate derivation; absent coordinates have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    pub space: SpaceKind,
    pub coeffs: BTreeMap<Variable, Polynomial>,
}

impl PolyVectorField {
    pub fn zero(space: SpaceKind) -> Self {
        PolyVectorField {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    fn set(&mut self, x: Variable, p: Polynomial) {
        if p.is_zero() {
            self.coeffs.remove(&x);
        } else {
            self.coeffs.insert(x, p);
        }
    }

    pub fn coeff(&self, x: Variable) -> Polynomial {
        self.coeffs.get(&x).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        let mut out = self.clone();
        for (x, p) in &other.coeffs {
            let s = out.coeff(*x).add(p);
            out.set(*x, s);
        }
        out
    }

    pub fn neg(&self) -> PolyVectorField {
        PolyVectorField {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(x, p)| (*x, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &PolyVectorField) -> PolyVectorField {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> PolyVectorField {
        if c.is_zero() {
            return PolyVectorField::zero(self.space);
        }
        PolyVectorField {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(x, p)| (*x, p.scale(c))).collect(),
        }
    }

    pub fn scale_poly(&self, q: &Polynomial) -> PolyVectorField {
        if q.is_zero() {
            return PolyVectorField::zero(self.space);
        }
        PolyVectorField {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(x, p)| (*x, p.mul(q))).collect(),
        }
    }

    /// Apply the field as a derivation to a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (x, p) in &self.coeffs {
            out = out.add(&p.mul(&f.derivative(*x)));
        }
        out
    }

    /// Restriction under the tower projection: keep only the surviving
    /// coordinates and set the deleted variables to zero in the survivors.
    pub fn restrict_to(&self, keep: &BTreeSet<Variable>) -> PolyVectorField {
        let mut out = PolyVectorField::zero(self.space);
        for (x, p) in &self.coeffs {
            if !keep.contains(x) {
                continue;
            }
            let map: BTreeMap<Variable, Polynomial> = p
                .variables()
                .into_iter()
                .map(|y| {
                    let img = if keep.contains(&y) {
                        Polynomial::var(y)
                    } else {
                        Polynomial::zero()
                    };
                    (y, img)
                })
                .collect();
            out.set(*x, p.pullback(&map).expect("all variables mapped"));
        }
        out
    }
}

/// Field whose value at the point `a` is the matrix `value`; coefficients
/// are read off at the canonical entry of each coordinate. Fails when the
/// value does not respect the space's symmetry or its restriction.
fn field_from_value(
    space: SpaceKind,
    coords: &BTreeSet<Variable>,
    value: &PolyMatrix,
) -> Result<PolyVectorField, VFieldError> {
    let mut out = PolyVectorField::zero(space);
    for i in 0..value.rows() {
        for j in 0..value.cols() {
            let e = value.at(i, j);
            if e.is_zero() {
                continue;
            }
            let (ri, rj) = (i as u32 + 1, j as u32 + 1);
            let not_in_space = || VFieldError::ValueNotInSpace {
                row: ri,
                col: rj,
                value: e.to_string(),
            };
            let var = space.canonical_var(ri, rj).ok_or_else(not_in_space)?;
            if !coords.contains(&var) {
                return Err(not_in_space());
            }
            match space {
                SpaceKind::General { .. } => out.set(var, e.clone()),
                SpaceKind::Symmetric { .. } => {
                    if ri <= rj {
                        // Mirror entries must agree.
                        if e != value.at(j, i) {
                            return Err(not_in_space());
                        }
                        out.set(var, e.clone());
                    }
                }
                SpaceKind::Skew { .. } => {
                    if ri < rj {
                        if *e != value.at(j, i).neg() {
                            return Err(not_in_space());
                        }
                        out.set(var, e.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

fn rat_times_poly_matrix(b: &[Rat], n: usize, a: &PolyMatrix) -> PolyMatrix {
    PolyMatrix::from_fn(n, a.cols(), |i, j| {
        let mut acc = Polynomial::zero();
        for k in 0..a.rows() {
            if !b[i * n + k].is_zero() {
                acc = acc.add(&a.at(k, j).scale(&b[i * n + k]));
            }
        }
        acc
    })
}

fn poly_matrix_times_rat(a: &PolyMatrix, c: &[Rat], n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(a.rows(), n, |i, j| {
        let mut acc = Polynomial::zero();
        for k in 0..a.cols() {
            if !c[k * n + j].is_zero() {
                acc = acc.add(&a.at(i, k).scale(&c[k * n + j]));
            }
        }
        acc
    })
}

fn transpose_rat(b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = b[i * n + j].clone();
        }
    }
    out
}

fn add_matrices(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    PolyMatrix::from_fn(x.rows(), x.cols(), |i, j| x.at(i, j).add(y.at(i, j)))
}

fn sub_matrices(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    PolyMatrix::from_fn(x.rows(), x.cols(), |i, j| x.at(i, j).sub(y.at(i, j)))
}

/// Field of the two-sided action at the point `a`: value `B·A − A·C`.
fn linear_field_at(
    space: SpaceKind,
    coords: &BTreeSet<Variable>,
    a: &PolyMatrix,
    b: Option<&[Rat]>,
    c: Option<&[Rat]>,
) -> Result<PolyVectorField, VFieldError> {
    let (r, cl) = (a.rows(), a.cols());
    if let Some(b) = b {
        if b.len() != r * r {
            return Err(VFieldError::ShapeMismatch);
        }
    }
    if let Some(c) = c {
        if c.len() != cl * cl {
            return Err(VFieldError::ShapeMismatch);
        }
    }
    let ba = b.map(|b| rat_times_poly_matrix(b, r, a));
    let ac = c.map(|c| poly_matrix_times_rat(a, c, cl));
    let value = match (ba, ac) {
        (Some(x), Some(y)) => sub_matrices(&x, &y),
        (Some(x), None) => x,
        (None, Some(y)) => PolyMatrix::from_fn(r, cl, |i, j| y.at(i, j).neg()),
        (None, None) => PolyMatrix::zero(r, cl),
    };
    field_from_value(space, coords, &value)
}

/// Field of the bilinear action at the point `a`: value `B·A + A·Bᵀ`.
fn bilinear_field_at(
    space: SpaceKind,
    coords: &BTreeSet<Variable>,
    a: &PolyMatrix,
    b: &[Rat],
) -> Result<PolyVectorField, VFieldError> {
    let m = a.rows();
    if a.cols() != m || b.len() != m * m {
        return Err(VFieldError::ShapeMismatch);
    }
    let value = add_matrices(
        &rat_times_poly_matrix(b, m, a),
        &poly_matrix_times_rat(a, &transpose_rat(b, m), m),
    );
    field_from_value(space, coords, &value)
}

/// Representation field of the two-sided linear action `A ↦ B·A − A·C` on
/// the full space of `rows × cols` matrices.
pub fn rep_field_linear(
    space: SpaceKind,
    b: Option<&[Rat]>,
    c: Option<&[Rat]>,
) -> Result<PolyVectorField, VFieldError> {
    let SpaceKind::General { .. } = space else {
        return Err(VFieldError::ShapeMismatch);
    };
    let coords: BTreeSet<Variable> = space.coordinates().into_iter().collect();
    linear_field_at(space, &coords, &space.generic(), b, c)
}

/// Representation field of the bilinear action `A ↦ B·A + A·Bᵀ` on the
/// full symmetric or skew-symmetric space.
pub fn rep_field_bilinear(space: SpaceKind, b: &[Rat]) -> Result<PolyVectorField, VFieldError> {
    if matches!(space, SpaceKind::General { .. }) {
        return Err(VFieldError::ShapeMismatch);
    }
    let coords: BTreeSet<Variable> = space.coordinates().into_iter().collect();
    bilinear_field_at(space, &coords, &space.generic(), b)
}

/// The nonlinear Pfaffian field
/// `eta_k(A) = Σ_{k<p<q<=m} Pf_{{epsilon(k),…,k,p,q}}(A) · ∂/∂a_p_q`.
pub fn eta_field(m: u32, k: u32) -> Result<PolyVectorField, VFieldError> {
    if k < 2 || k + 2 > m {
        return Err(VFieldError::IndexOutOfRange { m, k });
    }
    let a = generic_skew(m as usize);
    let mut out = PolyVectorField::zero(SpaceKind::Skew { m });
    for p in k + 1..=m {
        for q in p + 1..=m {
            let mut set = pf_range(k);
            set.insert(p);
            set.insert(q);
            out.set(v(p, q), pfaffian_sub(&a, &set));
        }
    }
    Ok(out)
}

/// Standard coordinate Lie bracket
/// `[X,Y]_i = Σ_j (X_j ∂Y_i/∂x_j − Y_j ∂X_i/∂x_j)`.
pub fn lie_bracket(
    x: &PolyVectorField,
    y: &PolyVectorField,
) -> Result<PolyVectorField, VFieldError> {
    if x.space != y.space {
        return Err(VFieldError::SpaceMismatch);
    }
    let mut out = PolyVectorField::zero(x.space);
    let coords: BTreeSet<Variable> = x.coeffs.keys().chain(y.coeffs.keys()).copied().collect();
    for i in coords {
        let c = x.apply(&y.coeff(i)).sub(&y.apply(&x.coeff(i)));
        out.set(i, c);
    }
    Ok(out)
}

/// The vector field of one family generator, evaluated at the family's
/// (possibly restricted) generic matrix.
pub fn field_for(spec: &FamilySpec, g: &GenSpec) -> Result<PolyVectorField, VFieldError> {
    let coords = spec.coord_set();
    let a = spec.generic_matrix();
    match g {
        GenSpec::Linear(g) => {
            let n = match g.side {
                Side::Left | Side::Bilinear => spec.space.rows() as usize,
                Side::Right => spec.space.cols() as usize,
            };
            let dense = g.mat.dense(n);
            match g.side {
                Side::Bilinear => bilinear_field_at(spec.space, &coords, &a, &dense),
                Side::Left => linear_field_at(spec.space, &coords, &a, Some(&dense), None),
                Side::Right => linear_field_at(spec.space, &coords, &a, None, Some(&dense)),
            }
        }
        GenSpec::Eta(k) => eta_field(spec.m, *k),
    }
}

/// All generator fields of a family, in generator order.
pub fn family_fields(spec: &FamilySpec) -> Result<Vec<PolyVectorField>, VFieldError> {
    spec.generators.iter().map(|g| field_for(spec, g)).collect()
}

/// If `b = q · e` for a polynomial `q`, return `q` (zero when `b` is zero).
fn proportional(b: &PolyVectorField, e: &PolyVectorField) -> Option<Polynomial> {
    if b.is_zero() {
        return Some(Polynomial::zero());
    }
    let (x, ex) = e.coeffs.iter().next()?;
    let q = b.coeff(*x).exact_div(ex)?;
    (b == &e.scale_poly(&q)).then_some(q)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub verdict: bool,
    /// Coefficient combination expressing the bracket in the family's
    /// generator fields: pairs (generator label, polynomial coefficient).
    pub witness: Vec<(String, String)>,
    /// For pairs involving an eta field: whether the bracket matches the
    /// closed-form table exactly (constant-factor discrepancies are
    /// reported here rather than absorbed).
    pub table_match: Option<bool>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BracketReport {
    pub family: String,
    pub m: u32,
    pub entries: Vec<BracketEntry>,
    pub closed: bool,
}

/// Closed form of `[xi_{E_{p,q}}, eta_k]`: `eta_k` when `p = q` and
/// `epsilon(k) <= p <= k`, otherwise zero.
fn xi_eta_constant(p: u32, q: u32, k: u32) -> Rat {
    if p == q && epsilon(k) <= p && p <= k {
        Rat::one()
    } else {
        Rat::zero()
    }
}

/// Closed form of `[eta_k, eta_l]` for `k < l`:
/// `(1/2)(δ_{epsilon(k),epsilon(l)} + l − k − 1) · Pf_{{epsilon(k),…,k}} · eta_l`.
fn eta_eta_coefficient(m: u32, k: u32, l: u32) -> Polynomial {
    let delta: i64 = if epsilon(k) == epsilon(l) { 1 } else { 0 };
    let c = crate::poly::ratio(delta + l as i64 - k as i64 - 1, 2);
    pfaffian_sub(&generic_skew(m as usize), &pf_range(k)).scale(&c)
}

/// Verify that the family's generator fields are closed under the Lie
/// bracket, producing an exact witness for every ordered pair.
pub fn verify_bracket_closure(spec: &FamilySpec) -> Result<BracketReport, VFieldError> {
    let fields = family_fields(spec)?;
    let labels: Vec<String> = spec.generators.iter().map(GenSpec::label).collect();
    let (embedded, n) = spec.embedded_linear_generators();
    // Map generator index -> index in the embedded linear list.
    let mut lin_index = Vec::with_capacity(spec.generators.len());
    let mut next = 0usize;
    for g in &spec.generators {
        match g {
            GenSpec::Linear(_) => {
                lin_index.push(Some(next));
                next += 1;
            }
            GenSpec::Eta(_) => lin_index.push(None),
        }
    }

    let mut entries = Vec::new();
    for i in 0..fields.len() {
        for j in 0..fields.len() {
            if i == j {
                continue;
            }
            let br = lie_bracket(&fields[i], &fields[j])?;
            let fail = |residual: &PolyVectorField| VFieldError::ClosureFailure {
                left: labels[i].clone(),
                right: labels[j].clone(),
                residual: residual
                    .coeffs
                    .values()
                    .next()
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "0".into()),
            };
            let entry = match (&spec.generators[i], &spec.generators[j]) {
                (GenSpec::Linear(_), GenSpec::Linear(_)) => {
                    // Bracket of matrices in the embedded algebra, solved
                    // as an exact constant combination of the generators;
                    // the field identity [xi_A, xi_B] = −xi_{[A,B]} turns
                    // the combination into a field witness, verified
                    // exactly at field level.
                    let mi = &embedded[lin_index[i].unwrap()];
                    let mj = &embedded[lin_index[j].unwrap()];
                    let mbr = crate::linalg::commutator(mi, mj, n);
                    let sol = solve_combination(&embedded, &mbr).ok_or_else(|| fail(&br))?;
                    let mut candidate = PolyVectorField::zero(spec.space);
                    let mut witness = Vec::new();
                    let mut li = 0usize;
                    for (gi, g) in spec.generators.iter().enumerate() {
                        if matches!(g, GenSpec::Eta(_)) {
                            continue;
                        }
                        let c = -sol[li].clone();
                        li += 1;
                        if !c.is_zero() {
                            candidate = candidate.add(&fields[gi].scale(&c));
                            witness.push((labels[gi].clone(), Polynomial::constant(c).to_string()));
                        }
                    }
                    if br != candidate {
                        return Err(fail(&br.sub(&candidate)));
                    }
                    BracketEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        verdict: true,
                        witness,
                        table_match: None,
                    }
                }
                (GenSpec::Linear(g), GenSpec::Eta(k))
                | (GenSpec::Eta(k), GenSpec::Linear(g)) => {
                    let crate::spaces::GenMatrix::Elementary(p, q) = g.mat else {
                        return Err(fail(&br));
                    };
                    let mut c = xi_eta_constant(p, q, *k);
                    if matches!(&spec.generators[i], GenSpec::Eta(_)) {
                        c = -c;
                    }
                    let eta = eta_field(spec.m, *k)?;
                    let expected = eta.scale(&c);
                    let table_match = br == expected;
                    let q_actual = proportional(&br, &eta).ok_or_else(|| fail(&br))?;
                    let witness = if q_actual.is_zero() {
                        vec![]
                    } else {
                        vec![(format!("eta_{}", k), q_actual.to_string())]
                    };
                    BracketEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        verdict: true,
                        witness,
                        table_match: Some(table_match),
                    }
                }
                (GenSpec::Eta(k), GenSpec::Eta(l)) => {
                    let (lo, hi, sign) = if k < l { (*k, *l, 1) } else { (*l, *k, -1) };
                    let expected_q = eta_eta_coefficient(spec.m, lo, hi)
                        .scale(&crate::poly::rat(sign));
                    let eta_hi = eta_field(spec.m, hi)?;
                    let table_match = br == eta_hi.scale_poly(&expected_q);
                    let q_actual = proportional(&br, &eta_hi).ok_or_else(|| fail(&br))?;
                    let witness = if q_actual.is_zero() {
                        vec![]
                    } else {
                        vec![(format!("eta_{}", hi), q_actual.to_string())]
                    };
                    BracketEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        verdict: true,
                        witness,
                        table_match: Some(table_match),
                    }
                }
            };
            entries.push(entry);
        }
    }
    let closed = entries.iter().all(|e| e.verdict);
    Ok(BracketReport {
        family: spec.name.cli_name().to_string(),
        m: spec.m,
        entries,
        closed,
    })
}

/// Check `[xi_A, xi_B] + xi_{[A,B]} = 0` for the two-sided action on the
/// full space of `rows × cols` matrices, for arbitrary algebra elements.
pub fn linear_bracket_identity(
    rows: u32,
    cols: u32,
    b1: &[Rat],
    c1: &[Rat],
    b2: &[Rat],
    c2: &[Rat],
) -> Result<bool, VFieldError> {
    let space = SpaceKind::General { rows, cols };
    let x = rep_field_linear(space, Some(b1), Some(c1))?;
    let y = rep_field_linear(space, Some(b2), Some(c2))?;
    let bb = crate::linalg::commutator(b1, b2, rows as usize);
    let cc = crate::linalg::commutator(c1, c2, cols as usize);
    let z = rep_field_linear(space, Some(&bb), Some(&cc))?;
    Ok(lie_bracket(&x, &y)?.add(&z).is_zero())
}

/// Check `[xi_A, xi_B] + xi_{[A,B]} = 0` for the bilinear action on the
/// symmetric or skew space.
pub fn bilinear_bracket_identity(
    space: SpaceKind,
    b1: &[Rat],
    b2: &[Rat],
) -> Result<bool, VFieldError> {
    let x = rep_field_bilinear(space, b1)?;
    let y = rep_field_bilinear(space, b2)?;
    let bb = crate::linalg::commutator(b1, b2, space.rows() as usize);
    let z = rep_field_bilinear(space, &bb)?;
    Ok(lie_bracket(&x, &y)?.add(&z).is_zero())
}

/// Check that every generator shared between a family at size m and its
/// tower predecessor restricts correctly: deleting the new coordinates
/// from the upstairs field yields exactly the downstairs field.
pub fn pi_relatedness_check(spec: &FamilySpec) -> Result<bool, VFieldError> {
    let Some(prev_m) = spec.tower_predecessor() else {
        return Ok(true);
    };
    let prev = crate::spaces::build_family(spec.name, prev_m).expect("predecessor is valid");
    let keep = prev.coord_set();
    let labels: Vec<String> = spec.generators.iter().map(GenSpec::label).collect();
    for (pg, plabel) in prev
        .generators
        .iter()
        .map(|g| (g, g.label()))
    {
        let Some(idx) = labels.iter().position(|l| *l == plabel) else {
            return Ok(false);
        };
        let up = field_for(spec, &spec.generators[idx])?;
        let down = field_for(&prev, pg)?;
        if up.restrict_to(&keep).coeffs != down.coeffs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each eta_k coefficient is homogeneous; all coefficients share the
/// degree `⌊k/2⌋ + 1`.
pub fn eta_is_homogeneous(m: u32, k: u32) -> Result<bool, VFieldError> {
    let f = eta_field(m, k)?;
    let want = k / 2 + 1;
    Ok(f.coeffs.values().all(|p| {
        p.terms().all(|(mono, _)| mono.degree() == want)
    }))
}

/// Convenience: bracket table for the nonlinear skew family.
pub fn bracket_table(family: Family, m: u32) -> Result<BracketReport, VFieldError> {
    let spec = crate::spaces::build_family(family, m).map_err(|_| VFieldError::ShapeMismatch)?;
    verify_bracket_closure(&spec)
}
