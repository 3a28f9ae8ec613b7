//! Small exact linear algebra over the rationals: spans, membership tests
//! and linear solves used for Lie-algebra closure and bracket witnesses.

use crate::poly::Rat;
use num::Zero;

/// A growable row space in reduced echelon form over the rationals.
#[derive(Clone, Debug, Default)]
pub struct Span {
    /// Rows in reduced form, each paired with its pivot column.
    rows: Vec<(usize, Vec<Rat>)>,
    width: usize,
}

impl Span {
    pub fn new(width: usize) -> Self {
        Span {
            rows: Vec::new(),
            width,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `x` against the span in place; the remainder is returned.
    fn reduce(&self, mut x: Vec<Rat>) -> Vec<Rat> {
        for (pivot, row) in &self.rows {
            if !x[*pivot].is_zero() {
                let f = x[*pivot].clone();
                for (xi, ri) in x.iter_mut().zip(row.iter()) {
                    *xi -= &f * ri;
                }
            }
        }
        x
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.reduce(x.to_vec()).iter().all(Rat::is_zero)
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.width);
        let mut r = self.reduce(x.to_vec());
        let Some(pivot) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = Rat::from_integer(1.into()) / r[pivot].clone();
        for c in r.iter_mut() {
            *c *= &inv;
        }
        // Back-substitute into existing rows to keep the form reduced.
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (ri, ci) in row.iter_mut().zip(r.iter()) {
                    *ri -= &f * ci;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }
}

/// Solve `Σ_k c_k columns[k] = target` exactly; `None` when the target is
/// outside the column span. The solution returned is the unique one when
/// the columns are independent (the only case used here).
pub fn solve_combination(columns: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = columns.len();
    let rows = target.len();
    // Gaussian elimination on the augmented matrix [columns | target].
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rat::from_integer(1.into()) / aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let s = &f * &aug[r][j];
                    aug[i][j] -= s;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for row in aug.iter() {
        if row[..n].iter().all(Rat::is_zero) && !row[n].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); n];
    for c in 0..n {
        if let Some(p) = pivot_of_col[c] {
            sol[c] = aug[p][n].clone();
        }
    }
    // Free columns default to zero; verify the candidate exactly.
    for i in 0..rows {
        let mut acc = Rat::zero();
        for (k, col) in columns.iter().enumerate() {
            acc += &sol[k] * &col[i];
        }
        if acc != target[i] {
            return None;
        }
    }
    Some(sol)
}

/// Commutator `xy - yx` of square rational matrices stored row-major.
pub fn commutator(x: &[Rat], y: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Rat::zero();
            for k in 0..n {
                acc += &x[i * n + k] * &y[k * n + j];
                acc -= &y[i * n + k] * &x[k * n + j];
            }
            out[i * n + j] = acc;
        }
    }
    out
}
