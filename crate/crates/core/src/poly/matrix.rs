//! Dense polynomial matrices: fraction-free determinants, Pfaffians and
//! the generic matrices of the three coordinate spaces.

use super::{v, Polynomial, PolyError, Rat};
use num::One;
use std::collections::BTreeSet;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Polynomial::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.cols + j]
    }

    /// Submatrix on the given (0-based) row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    /// Upper-left k x k corner.
    pub fn corner(&self, k: usize) -> PolyMatrix {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    /// Delete the leftmost `d` columns, then take the upper-left k x k corner.
    pub fn shifted_corner(&self, d: usize, k: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (d..d + k).collect();
        self.submatrix(&rows, &cols)
    }

    /// Exact determinant by fraction-free Bareiss elimination, falling back
    /// to sparse cofactor expansion when no nonzero pivot is available.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = Polynomial::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            let tmp = m.at(k, j).clone();
                            *m.at_mut(k, j) = m.at(r, j).clone();
                            *m.at_mut(r, j) = tmp;
                        }
                        sign = !sign;
                    }
                    None => {
                        // Bareiss state has a structurally singular column;
                        // finish with cofactor expansion on the original.
                        return self.determinant_cofactor();
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(k, k).mul(m.at(i, j)).sub(&m.at(i, k).mul(m.at(k, j)));
                    *m.at_mut(i, j) = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact");
                }
                *m.at_mut(i, k) = Polynomial::zero();
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        Ok(if sign { det.neg() } else { det })
    }

    /// Exact determinant by cofactor expansion along the sparsest column;
    /// exposed separately as an independent oracle for cross-checks.
    pub fn determinant_cofactor(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.cofactor_rec(&idx, &idx))
    }

    fn cofactor_rec(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let n = rows.len();
        if n == 0 {
            return Polynomial::one();
        }
        if n == 1 {
            return self.at(rows[0], cols[0]).clone();
        }
        // Expand along the column with the most zero entries.
        let best = (0..n)
            .max_by_key(|&j| {
                rows.iter()
                    .filter(|&&i| self.at(i, cols[j]).is_zero())
                    .count()
            })
            .unwrap();
        let col = cols[best];
        let sub_cols: Vec<usize> = cols
            .iter()
            .copied()
            .enumerate()
            .filter(|&(j, _)| j != best)
            .map(|(_, c)| c)
            .collect();
        let mut det = Polynomial::zero();
        for (i, &row) in rows.iter().enumerate() {
            let e = self.at(row, col);
            if e.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows
                .iter()
                .copied()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, r)| r)
                .collect();
            let minor = self.cofactor_rec(&sub_rows, &sub_cols);
            let term = e.mul(&minor);
            det = if (i + best) % 2 == 0 {
                det.add(&term)
            } else {
                det.sub(&term)
            };
        }
        det
    }

    fn check_skew(&self) -> Result<(), PolyError> {
        for i in 0..self.rows {
            for j in i..self.cols {
                if !self.at(i, j).add(self.at(j, i)).is_zero() {
                    return Err(PolyError::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Pfaffian under the convention `Pf([[0, a], [-a, 0]]) = a`, by
    /// first-row expansion; odd sizes give 0, the empty matrix gives 1.
    pub fn pfaffian(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.check_skew()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pfaffian_rec(&idx))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> Polynomial {
        let n = idx.len();
        if n % 2 == 1 {
            return Polynomial::zero();
        }
        if n == 0 {
            return Polynomial::one();
        }
        let mut pf = Polynomial::zero();
        for t in 1..n {
            let e = self.at(idx[0], idx[t]);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .copied()
                .filter(|&r| r != idx[t])
                .collect();
            let term = e.mul(&self.pfaffian_rec(&rest));
            // Sign (-1)^j for the 1-based column position j = t + 1.
            pf = if t % 2 == 1 { pf.add(&term) } else { pf.sub(&term) };
        }
        pf
    }
}

impl serde::Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PolyMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let grid: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_string()).collect())
            .collect();
        st.serialize_field("entries", &grid)?;
        st.end()
    }
}

/// Generic m x p matrix of independent entry variables.
pub fn generic_general(m: usize, p: usize) -> PolyMatrix {
    PolyMatrix::from_fn(m, p, |i, j| {
        Polynomial::var(v(i as u32 + 1, j as u32 + 1))
    })
}

/// Generic symmetric matrix: entry (i,j) is the variable a_{min,max}.
pub fn generic_symmetric(m: usize) -> PolyMatrix {
    PolyMatrix::from_fn(m, m, |i, j| {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        Polynomial::var(v(r as u32 + 1, c as u32 + 1))
    })
}

/// Generic skew-symmetric matrix: a_{i,j} above the diagonal, mirrored
/// negatively below, zero on the diagonal.
pub fn generic_skew(m: usize) -> PolyMatrix {
    PolyMatrix::from_fn(m, m, |i, j| {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Polynomial::var(v(i as u32 + 1, j as u32 + 1)),
            Equal => Polynomial::zero(),
            Greater => Polynomial::var(v(j as u32 + 1, i as u32 + 1)).neg(),
        }
    })
}

/// `Pf_S`: Pfaffian of the generic skew matrix restricted to the (1-based)
/// index set `S`.
pub fn pfaffian_sub(skew: &PolyMatrix, set: &BTreeSet<u32>) -> Polynomial {
    let idx: Vec<usize> = set.iter().map(|&i| i as usize - 1).collect();
    skew.pfaffian_sub_indices(&idx)
}

impl PolyMatrix {
    fn pfaffian_sub_indices(&self, idx: &[usize]) -> Polynomial {
        self.pfaffian_rec(idx)
    }
}

/// Constant matrix `J` with 2x2 diagonal blocks `[[0,-1],[1,0]]`; for odd
/// `m` the trailing row/column is zero.
pub fn j_matrix(m: usize) -> PolyMatrix {
    let mut j = PolyMatrix::zero(m, m);
    for t in 0..m / 2 {
        *j.at_mut(2 * t, 2 * t + 1) = Polynomial::constant(-Rat::one());
        *j.at_mut(2 * t + 1, 2 * t) = Polynomial::constant(Rat::one());
    }
    j
}

/// Verifies the Pfaffian summation identity for the pair of index sets on a
/// generic skew matrix of size `m`: writing `I1 Δ I2 = {i_1 < … < i_l}`,
/// the alternating sum `Σ_τ (-1)^τ Pf_{I1 Δ {i_τ}} · Pf_{I2 Δ {i_τ}}`
/// vanishes identically.
pub fn dress_wenzel_check(
    i1: &BTreeSet<u32>,
    i2: &BTreeSet<u32>,
    m: u32,
) -> Result<bool, PolyError> {
    for &i in i1.iter().chain(i2.iter()) {
        if i < 1 || i > m {
            return Err(PolyError::IndexOutOfRange(i, m));
        }
    }
    let skew = generic_skew(m as usize);
    let sym_diff: Vec<u32> = i1.symmetric_difference(i2).copied().collect();
    let mut sum = Polynomial::zero();
    for (tau0, &i) in sym_diff.iter().enumerate() {
        let toggle = |s: &BTreeSet<u32>| -> BTreeSet<u32> {
            let mut t = s.clone();
            if !t.remove(&i) {
                t.insert(i);
            }
            t
        };
        let term = pfaffian_sub(&skew, &toggle(i1)).mul(&pfaffian_sub(&skew, &toggle(i2)));
        // tau is 1-based in the alternating sign.
        sum = if tau0 % 2 == 0 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
    }
    Ok(sum.is_zero())
}
