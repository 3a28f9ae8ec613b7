//! Numerical complex bilinear factorizations: Cholesky `A = B·Bᵀ`,
//! LU `A = B·C`, skew Cholesky `A = B·J·Bᵀ`, and the modified
//! decompositions `A = B·K·C` for square and `(m−1) × m` matrices, with
//! exact evaluation of the determinantal existence conditions.
//!
//! All transposes are bilinear (no conjugation).

use num_complex::Complex64;
use rand::Rng;
use serde::ser::SerializeStruct;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum FactorError {
    #[error("existence condition violated: {minor} vanishes")]
    ExistenceConditionViolated { minor: String },
    #[error("matrix has the wrong shape: {0}")]
    ShapeError(String),
    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,
    #[error("matrix is not skew-symmetric within tolerance")]
    NotSkew,
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        ComplexMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real(rows: Vec<Vec<f64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self[(i, k)];
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += x * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant of the submatrix with the given row and column index
    /// lists, by Gaussian elimination with partial pivoting.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Complex64 {
        assert_eq!(rows.len(), cols.len());
        let n = rows.len();
        let mut m: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self[(i, j)]).collect())
            .collect();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let (p, _) = (k..n)
                .map(|i| (i, m[i][k].norm()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if m[p][k].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if p != k {
                m.swap(p, k);
                det = -det;
            }
            det *= m[k][k];
            for i in k + 1..n {
                let f = m[i][k] / m[k][k];
                for j in k..n {
                    let s = f * m[k][j];
                    m[i][j] -= s;
                }
            }
        }
        det
    }

    /// Determinant of the upper-left `k × k` corner.
    pub fn corner_det(&self, k: usize) -> Complex64 {
        let idx: Vec<usize> = (0..k).collect();
        self.minor_det(&idx, &idx)
    }

    /// Determinant of the `k × k` corner of the matrix with its first
    /// column deleted.
    pub fn hat_corner_det(&self, k: usize) -> Complex64 {
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (1..=k).collect();
        self.minor_det(&rows, &cols)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl serde::Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ComplexMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let entries: Vec<[f64; 2]> = self.entries.iter().map(|z| [z.re, z.im]).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(serde::de::Error::custom("entries length != rows * cols"));
        }
        if raw
            .entries
            .iter()
            .any(|e| !e[0].is_finite() || !e[1].is_finite())
        {
            return Err(serde::de::Error::custom("non-finite entry"));
        }
        Ok(ComplexMatrix {
            rows: raw.rows,
            cols: raw.cols,
            entries: raw
                .entries
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FactorKind {
    Cholesky,
    LU,
    SkewCholesky,
    ModLU,
    ModLURect,
}

impl FactorKind {
    pub fn cli_name(&self) -> &'static str {
        match self {
            FactorKind::Cholesky => "cholesky",
            FactorKind::LU => "lu",
            FactorKind::SkewCholesky => "skew-cholesky",
            FactorKind::ModLU => "mod-lu",
            FactorKind::ModLURect => "mod-lu-rect",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<FactorKind> {
        [
            FactorKind::Cholesky,
            FactorKind::LU,
            FactorKind::SkewCholesky,
            FactorKind::ModLU,
            FactorKind::ModLURect,
        ]
        .into_iter()
        .find(|k| k.cli_name() == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// Relative magnitude below which a pivot / existence minor counts
    /// as zero.
    pub pivot_tol: f64,
    /// Relative bound the reconstruction residual must satisfy.
    pub residual_tol: f64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            pivot_tol: 1e-12,
            residual_tol: 1e-10,
        }
    }
}

impl FactorOptions {
    /// Default options, with the residual tolerance overridden by the
    /// SAITO_TOL environment variable when set.
    pub fn from_env() -> Self {
        let mut o = Self::default();
        if let Some(t) = std::env::var("SAITO_TOL")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
        {
            o.residual_tol = t;
        }
        o
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Factorization {
    pub kind: FactorKind,
    /// Named factors, in product order.
    pub factors: Vec<(String, ComplexMatrix)>,
    /// Max-norm of `A − (product of factors)`.
    pub residual: f64,
    /// The existence minors, evaluated at A in theorem order.
    pub conditions: Vec<(String, [f64; 2])>,
}

impl Factorization {
    pub fn factor(&self, name: &str) -> &ComplexMatrix {
        &self
            .factors
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("no factor named {}", name))
            .1
    }

    pub fn product(&self) -> ComplexMatrix {
        let mut it = self.factors.iter().map(|(_, m)| m);
        let first = it.next().expect("at least one factor").clone();
        it.fold(first, |acc, m| acc.mul(m))
    }
}

fn check_shape(kind: FactorKind, a: &ComplexMatrix) -> Result<usize, FactorError> {
    match kind {
        FactorKind::ModLURect => {
            if a.rows + 1 != a.cols || a.rows == 0 {
                return Err(FactorError::ShapeError(format!(
                    "expected (m-1) x m, got {} x {}",
                    a.rows, a.cols
                )));
            }
            Ok(a.cols)
        }
        _ => {
            if a.rows != a.cols || a.rows == 0 {
                return Err(FactorError::ShapeError(format!(
                    "expected square, got {} x {}",
                    a.rows, a.cols
                )));
            }
            Ok(a.rows)
        }
    }
}

/// Evaluate the existence minors named by the relevant theorem at A.
pub fn existence_conditions(
    kind: FactorKind,
    a: &ComplexMatrix,
) -> Result<Vec<(String, Complex64)>, FactorError> {
    let m = check_shape(kind, a)?;
    let mut out = Vec::new();
    match kind {
        FactorKind::Cholesky | FactorKind::LU => {
            for k in 1..=m {
                out.push((format!("det(A^({}))", k), a.corner_det(k)));
            }
        }
        FactorKind::SkewCholesky => {
            for k in 1..=m / 2 {
                out.push((format!("det(A^({}))", 2 * k), a.corner_det(2 * k)));
            }
        }
        FactorKind::ModLU => {
            for k in 1..=m {
                out.push((format!("det(A^({}))", k), a.corner_det(k)));
            }
            for k in 1..m {
                out.push((format!("det(Ahat^({}))", k), a.hat_corner_det(k)));
            }
        }
        FactorKind::ModLURect => {
            for k in 1..m {
                out.push((format!("det(A^({}))", k), a.corner_det(k)));
            }
            for k in 1..m {
                out.push((format!("det(Ahat^({}))", k), a.hat_corner_det(k)));
            }
        }
    }
    Ok(out)
}

fn check_conditions(
    kind: FactorKind,
    a: &ComplexMatrix,
    opts: &FactorOptions,
) -> Result<Vec<(String, Complex64)>, FactorError> {
    let conditions = existence_conditions(kind, a)?;
    let scale = 1.0 + a.max_norm();
    for (name, value) in &conditions {
        if value.norm() <= opts.pivot_tol * scale {
            return Err(FactorError::ExistenceConditionViolated {
                minor: name.clone(),
            });
        }
    }
    Ok(conditions)
}

fn check_symmetric(a: &ComplexMatrix, tol: f64) -> Result<(), FactorError> {
    let scale = 1.0 + a.max_norm();
    for i in 0..a.rows {
        for j in i + 1..a.cols {
            if (a[(i, j)] - a[(j, i)]).norm() > tol * scale {
                return Err(FactorError::NotSymmetric);
            }
        }
    }
    Ok(())
}

fn check_skew(a: &ComplexMatrix, tol: f64) -> Result<(), FactorError> {
    let scale = 1.0 + a.max_norm();
    for i in 0..a.rows {
        if a[(i, i)].norm() > tol * scale {
            return Err(FactorError::NotSkew);
        }
        for j in i + 1..a.cols {
            if (a[(i, j)] + a[(j, i)]).norm() > tol * scale {
                return Err(FactorError::NotSkew);
            }
        }
    }
    Ok(())
}

/// The skew base matrix with `[[0, −1], [1, 0]]` diagonal blocks (and a
/// zero trailing row/column for odd m).
pub fn j_base(m: usize) -> ComplexMatrix {
    let mut j = ComplexMatrix::zero(m, m);
    for t in 0..m / 2 {
        j[(2 * t, 2 * t + 1)] = Complex64::new(-1.0, 0.0);
        j[(2 * t + 1, 2 * t)] = Complex64::new(1.0, 0.0);
    }
    j
}

/// The upper bidiagonal all-ones base matrix of the modified
/// decompositions: ones on the diagonal and superdiagonal.
pub fn k_base(rows: usize, cols: usize) -> ComplexMatrix {
    let mut k = ComplexMatrix::zero(rows, cols);
    for i in 0..rows {
        k[(i, i)] = Complex64::new(1.0, 0.0);
        if i + 1 < cols {
            k[(i, i + 1)] = Complex64::new(1.0, 0.0);
        }
    }
    k
}

fn cholesky(a: &ComplexMatrix) -> ComplexMatrix {
    let m = a.rows;
    let mut b = ComplexMatrix::zero(m, m);
    for j in 0..m {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= b[(j, k)] * b[(j, k)];
        }
        b[(j, j)] = d.sqrt();
        for i in j + 1..m {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= b[(i, k)] * b[(j, k)];
            }
            b[(i, j)] = s / b[(j, j)];
        }
    }
    b
}

fn lu(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let m = a.rows;
    let mut b = ComplexMatrix::zero(m, m);
    let mut c = ComplexMatrix::identity(m);
    for j in 0..m {
        for i in j..m {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= b[(i, k)] * c[(k, j)];
            }
            b[(i, j)] = s;
        }
        for i in j + 1..m {
            let mut s = a[(j, i)];
            for k in 0..j {
                s -= b[(j, k)] * c[(k, i)];
            }
            c[(j, i)] = s / b[(j, j)];
        }
    }
    (b, c)
}

fn skew_cholesky(a: &ComplexMatrix) -> ComplexMatrix {
    let m = a.rows;
    let blocks = m / 2;
    let mut b = ComplexMatrix::zero(m, m);
    if m % 2 == 1 {
        b[(m - 1, m - 1)] = Complex64::new(1.0, 0.0);
    }
    // Row index range of "block" u: full 2x2 blocks, plus the trailing
    // single row for odd m.
    let row_range = |u: usize| -> std::ops::Range<usize> {
        if u < blocks {
            2 * u..2 * u + 2
        } else {
            m - 1..m
        }
    };
    let n_row_blocks = blocks + (m % 2);
    for t in 0..blocks {
        // Pivot block M = A_tt − Σ_{s<t} B_ts·Jhat·B_tsᵀ, which must be
        // r²·Jhat; r is the principal square root of its (2,1) entry.
        let mut m21 = a[(2 * t + 1, 2 * t)];
        for s in 0..t {
            // (B_ts Jhat B_tsᵀ)_{21} with Jhat = [[0,-1],[1,0]]:
            // row2 × Jhat × row1ᵀ.
            let (r1a, r1b) = (b[(2 * t, 2 * s)], b[(2 * t, 2 * s + 1)]);
            let (r2a, r2b) = (b[(2 * t + 1, 2 * s)], b[(2 * t + 1, 2 * s + 1)]);
            // u·Jhat·vᵀ = u_2 v_1 − u_1 v_2 for row vectors u, v.
            m21 -= r2b * r1a - r2a * r1b;
        }
        let r = m21.sqrt();
        b[(2 * t, 2 * t)] = r;
        b[(2 * t + 1, 2 * t + 1)] = r;
        for u in t + 1..n_row_blocks {
            for i in row_range(u) {
                // Solve A_i,(t-block) = Σ_{s<t} B_is Jhat B_tsᵀ + B_it·(r·Jhat)
                // for the row vector B_it.
                let mut res = [a[(i, 2 * t)], a[(i, 2 * t + 1)]];
                for s in 0..t {
                    let (ua, ub) = (b[(i, 2 * s)], b[(i, 2 * s + 1)]);
                    let (v1a, v1b) = (b[(2 * t, 2 * s)], b[(2 * t, 2 * s + 1)]);
                    let (v2a, v2b) = (b[(2 * t + 1, 2 * s)], b[(2 * t + 1, 2 * s + 1)]);
                    res[0] -= ub * v1a - ua * v1b;
                    res[1] -= ub * v2a - ua * v2b;
                }
                // B_it = (1/r)·res·Jhat⁻¹ with Jhat⁻¹ = [[0,1],[-1,0]].
                b[(i, 2 * t)] = -res[1] / r;
                b[(i, 2 * t + 1)] = res[0] / r;
            }
        }
    }
    b
}

/// Solve `A = B·K·C` by sequential entrywise substitution in column-major
/// order of A's entries: each equation introduces exactly one unknown.
fn modified_lu(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (rows, cols) = (a.rows, a.cols);
    let mut b = ComplexMatrix::zero(rows, rows);
    let mut c = ComplexMatrix::zero(cols, cols);
    c[(0, 0)] = Complex64::new(1.0, 0.0);
    // (K·C)[k][j] = C[k][j] + C[k+1][j], reading C[rows][j] as 0 in the
    // square case.
    let kc = |c: &ComplexMatrix, k: usize, j: usize| -> Complex64 {
        let lower = c[(k, j)];
        if k + 1 < c.rows {
            lower + c[(k + 1, j)]
        } else {
            lower
        }
    };
    for j in 0..cols {
        for i in 0..rows {
            let mut partial = a[(i, j)];
            if i < j {
                // Unknown: C[i+1][j], with pivot B[i][i].
                for k in 0..i {
                    partial -= b[(i, k)] * kc(&c, k, j);
                }
                partial -= b[(i, i)] * c[(i, j)];
                c[(i + 1, j)] = partial / b[(i, i)];
            } else if i == j {
                // Unknown: B[j][j], with pivot C[j][j] (C[0][0] = 1).
                for k in 0..j {
                    partial -= b[(i, k)] * kc(&c, k, j);
                }
                b[(j, j)] = partial / c[(j, j)];
            } else {
                // Unknown: B[i][j], with pivot C[j][j].
                for k in 0..j {
                    partial -= b[(i, k)] * kc(&c, k, j);
                }
                b[(i, j)] = partial / c[(j, j)];
            }
        }
    }
    (b, c)
}

/// Compute the requested factorization with residual certification.
pub fn factorize(
    kind: FactorKind,
    a: &ComplexMatrix,
    opts: &FactorOptions,
) -> Result<Factorization, FactorError> {
    check_shape(kind, a)?;
    match kind {
        FactorKind::Cholesky => check_symmetric(a, opts.residual_tol)?,
        FactorKind::SkewCholesky => check_skew(a, opts.residual_tol)?,
        _ => {}
    }
    let conditions = check_conditions(kind, a, opts)?;
    let factors: Vec<(String, ComplexMatrix)> = match kind {
        FactorKind::Cholesky => {
            let b = cholesky(a);
            vec![("B".into(), b.clone()), ("Bt".into(), b.transpose())]
        }
        FactorKind::LU => {
            let (b, c) = lu(a);
            vec![("B".into(), b), ("C".into(), c)]
        }
        FactorKind::SkewCholesky => {
            let b = skew_cholesky(a);
            vec![
                ("B".into(), b.clone()),
                ("J".into(), j_base(a.rows)),
                ("Bt".into(), b.transpose()),
            ]
        }
        FactorKind::ModLU | FactorKind::ModLURect => {
            let (b, c) = modified_lu(a);
            vec![
                ("B".into(), b),
                ("K".into(), k_base(a.rows, a.cols)),
                ("C".into(), c),
            ]
        }
    };
    let f = Factorization {
        kind,
        factors,
        residual: 0.0,
        conditions: conditions
            .into_iter()
            .map(|(n, z)| (n, [z.re, z.im]))
            .collect(),
    };
    let residual = a.sub(&f.product()).max_norm();
    Ok(Factorization { residual, ..f })
}

fn random_sign<R: Rng>(rng: &mut R) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Probe the stated uniqueness of the factorization: the allowed sign
/// ambiguities must still reconstruct A, and perturbing a mandated entry
/// must break reconstruction.
pub fn uniqueness_probe(
    kind: FactorKind,
    a: &ComplexMatrix,
    trials: usize,
    opts: &FactorOptions,
) -> Result<bool, FactorError> {
    let f = factorize(kind, a, opts)?;
    let tol = opts.residual_tol * (1.0 + a.max_norm());
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5A1705EED);
    use rand::SeedableRng;
    let b = f.factor("B").clone();
    for _ in 0..trials {
        match kind {
            FactorKind::Cholesky => {
                // B·S with S = diag(±1): (BS)(BS)ᵀ = A.
                let mut bs = b.clone();
                for j in 0..bs.cols {
                    let s = random_sign(&mut rng);
                    for i in 0..bs.rows {
                        bs[(i, j)] *= s;
                    }
                }
                if a.sub(&bs.mul(&bs.transpose())).max_norm() > tol {
                    return Ok(false);
                }
            }
            FactorKind::SkewCholesky => {
                // B·S with S block-diagonal, blocks ±I₂ (trailing ±1):
                // S·J·Sᵀ = J, so (BS)·J·(BS)ᵀ = A.
                let mut bs = b.clone();
                let m = bs.cols;
                let mut j = 0;
                while j < m {
                    let s = random_sign(&mut rng);
                    let w = if j + 1 < m { 2 } else { 1 };
                    for jj in j..j + w {
                        for i in 0..bs.rows {
                            bs[(i, jj)] *= s;
                        }
                    }
                    j += w;
                }
                let jm = j_base(m);
                if a.sub(&bs.mul(&jm).mul(&bs.transpose())).max_norm() > tol {
                    return Ok(false);
                }
            }
            _ => {}
        }
        // Perturbing a structural entry must break reconstruction.
        let mut g = f.clone();
        let target = match kind {
            FactorKind::LU | FactorKind::ModLU | FactorKind::ModLURect => "C",
            _ => "B",
        };
        let idx = g.factors.iter().position(|(n, _)| n == target).unwrap();
        let mat = &mut g.factors[idx].1;
        let d = rng.gen_range(0..mat.rows.min(mat.cols));
        mat[(d, d)] *= Complex64::new(1.37, 0.0);
        if a.sub(&g.product()).max_norm() <= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> FactorOptions {
        FactorOptions::default()
    }

    #[test]
    fn cholesky_identity() {
        let a = ComplexMatrix::identity(3);
        let f = factorize(FactorKind::Cholesky, &a, &opts()).unwrap();
        assert_eq!(f.factor("B"), &ComplexMatrix::identity(3));
        assert_eq!(f.residual, 0.0);
    }

    #[test]
    fn lu_example() {
        let a = ComplexMatrix::from_real(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let f = factorize(FactorKind::LU, &a, &opts()).unwrap();
        let b = f.factor("B");
        let c = f.factor("C");
        assert_eq!(b, &ComplexMatrix::from_real(vec![vec![1.0, 0.0], vec![3.0, -2.0]]));
        assert_eq!(c, &ComplexMatrix::from_real(vec![vec![1.0, 2.0], vec![0.0, 1.0]]));
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn cholesky_violation_names_first_minor() {
        let a = ComplexMatrix::from_real(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let err = factorize(FactorKind::Cholesky, &a, &opts()).unwrap_err();
        assert_eq!(
            err,
            FactorError::ExistenceConditionViolated {
                minor: "det(A^(1))".into()
            }
        );
    }

    #[test]
    fn skew_cholesky_base_point() {
        let m = 4;
        let a = {
            let j = j_base(m);
            ComplexMatrix {
                rows: m,
                cols: m,
                entries: j.entries.clone(),
            }
        };
        let f = factorize(FactorKind::SkewCholesky, &a, &opts()).unwrap();
        assert_eq!(f.factor("B"), &ComplexMatrix::identity(m));
        assert_eq!(f.residual, 0.0);
        // Conditions are det(A^(2)) = det(A^(4)) = 1.
        assert_eq!(f.conditions.len(), 2);
        for (_, v) in &f.conditions {
            assert!((v[0] - 1.0).abs() < 1e-14 && v[1].abs() < 1e-14);
        }
    }

    #[test]
    fn mod_lu_base_point_and_example() {
        // A = K: B = C = I.
        let a = ComplexMatrix::from_real(vec![vec![1.0, 1.0], vec![0.0, 1.0]]);
        let f = factorize(FactorKind::ModLU, &a, &opts()).unwrap();
        assert_eq!(f.factor("B"), &ComplexMatrix::identity(2));
        assert_eq!(f.factor("C"), &ComplexMatrix::identity(2));
        assert!(f.residual < 1e-12);

        let a = ComplexMatrix::from_real(vec![vec![2.0, 2.0], vec![1.0, 2.0]]);
        let f = factorize(FactorKind::ModLU, &a, &opts()).unwrap();
        assert_eq!(f.factor("B"), &ComplexMatrix::from_real(vec![vec![2.0, 0.0], vec![1.0, 1.0]]));
        assert_eq!(f.factor("C"), &ComplexMatrix::identity(2));
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn mod_lu_conditions_example() {
        let a = ComplexMatrix::from_real(vec![vec![1.0, 1.0], vec![0.0, 1.0]]);
        let cs = existence_conditions(FactorKind::ModLU, &a).unwrap();
        let names: Vec<&str> = cs.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["det(A^(1))", "det(A^(2))", "det(Ahat^(1))"]);
        for (_, v) in &cs {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn mod_lu_rect_shape_and_roundtrip() {
        let a = ComplexMatrix::from_real(vec![vec![1.0, 2.0, 3.0], vec![2.0, 1.0, 1.0]]);
        let f = factorize(FactorKind::ModLURect, &a, &opts()).unwrap();
        assert!(f.residual < 1e-10 * (1.0 + a.max_norm()), "residual {}", f.residual);
        let b = f.factor("B");
        assert_eq!((b.rows, b.cols), (2, 2));
        // C's first row is (1, 0, 0) exactly.
        let c = f.factor("C");
        assert_eq!(c[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(c[(0, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(c[(0, 2)], Complex64::new(0.0, 0.0));
        // Square input is a shape error for the rectangular kind.
        let sq = ComplexMatrix::identity(2);
        assert!(matches!(
            factorize(FactorKind::ModLURect, &sq, &opts()),
            Err(FactorError::ShapeError(_))
        ));
    }

    #[test]
    fn symmetry_guards() {
        let a = ComplexMatrix::from_real(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(matches!(
            factorize(FactorKind::Cholesky, &a, &opts()),
            Err(FactorError::NotSymmetric)
        ));
        assert!(matches!(
            factorize(FactorKind::SkewCholesky, &a, &opts()),
            Err(FactorError::NotSkew)
        ));
    }

    #[test]
    fn uniqueness_probes() {
        let a = ComplexMatrix::from_real(vec![vec![4.0, 2.0], vec![2.0, 3.0]]);
        assert!(uniqueness_probe(FactorKind::Cholesky, &a, 8, &opts()).unwrap());
        let j = j_base(4);
        assert!(uniqueness_probe(FactorKind::SkewCholesky, &j, 8, &opts()).unwrap());
        let a = ComplexMatrix::from_real(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(uniqueness_probe(FactorKind::LU, &a, 8, &opts()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(3.5, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let s = serde_json::to_string(&a).unwrap();
        let b: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
