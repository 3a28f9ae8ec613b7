//! Multivariate gcd via primitive-part recursion with a subresultant
//! pseudo-remainder sequence, plus the squarefree predicates built on it.

use super::{Polynomial, PolyError, Variable};

/// Content of `p` viewed as univariate in `x`: the gcd of its coefficient
/// polynomials.
fn content_in(p: &Polynomial, x: Variable) -> Polynomial {
    let mut c = Polynomial::zero();
    for coeff in p.coefficients_in(x) {
        if !coeff.is_zero() {
            c = gcd(&c, &coeff);
            if c.is_constant() && !c.is_zero() {
                break;
            }
        }
    }
    c
}

fn leading_in(p: &Polynomial, x: Variable) -> Polynomial {
    p.coefficients_in(x).pop().expect("nonzero polynomial")
}

/// Pseudo-remainder of `a` by `b` with respect to `x`:
/// `lc_x(b)^(deg a - deg b + 1) * a  mod  b`.
fn prem(a: &Polynomial, b: &Polynomial, x: Variable) -> Polynomial {
    let db = b.degree_in(x);
    let lb = leading_in(b, x);
    let mut r = a.clone();
    let mut scalings = a.degree_in(x) as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = leading_in(&r, x);
        let shift = Polynomial::var(x).pow(dr - db);
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
        scalings -= 1;
    }
    for _ in 0..scalings.max(0) {
        r = r.mul(&lb);
    }
    r
}

/// Greatest common divisor, normalized with content 1 and positive leading
/// coefficient in the fixed monomial order; `gcd(0, q)` is normalized `q`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one();
    }
    // Main variable: the largest variable occurring in either operand.
    let x = *p
        .variables()
        .iter()
        .chain(q.variables().iter())
        .max()
        .expect("nonconstant operands");
    let (dp, dq) = (p.degree_in(x), q.degree_in(x));
    if dp == 0 {
        // x occurs only in q: any common divisor is free of x, hence
        // divides q's content with respect to x.
        return gcd(p, &content_in(q, x));
    }
    if dq == 0 {
        return gcd(&content_in(p, x), q);
    }

    let cp = content_in(p, x);
    let cq = content_in(q, x);
    let c = gcd(&cp, &cq);
    let a0 = p.exact_div(&cp).expect("content divides");
    let b0 = q.exact_div(&cq).expect("content divides");
    let (mut a, mut b) = if a0.degree_in(x) >= b0.degree_in(x) {
        (a0, b0)
    } else {
        (b0, a0)
    };

    // Subresultant pseudo-remainder sequence on the primitive parts.
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let delta = a.degree_in(x) - b.degree_in(x);
        let r = prem(&a, &b, x);
        if r.is_zero() {
            let pp = b.exact_div(&content_in(&b, x)).expect("content divides");
            return c.mul(&pp).normalized();
        }
        if r.degree_in(x) == 0 {
            // Primitive parts are coprime with respect to x.
            return c.normalized();
        }
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = leading_in(&a, x);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h-update is exact")
        };
    }
}

/// True iff the joint gcd of `p` with all its partial derivatives is
/// constant, i.e. `p` has no repeated factor.
pub fn is_squarefree(p: &Polynomial) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(repeated_part(p).is_constant())
}

/// The joint gcd of `p` and all its partials: for `p = Π p_i^{e_i}` over a
/// field of characteristic zero this is `Π p_i^{e_i - 1}` up to a constant.
fn repeated_part(p: &Polynomial) -> Polynomial {
    let mut g = p.normalized();
    for x in p.variables() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p.derivative(x));
    }
    g
}

/// The product of the distinct irreducible factors of `p`, normalized.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let rep = repeated_part(p);
    Ok(p.exact_div(&rep)
        .expect("repeated part divides")
        .normalized())
}

/// True iff the nonzero polynomials in `ps` are pairwise coprime.
pub fn pairwise_coprime(ps: &[Polynomial]) -> bool {
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if !gcd(&ps[i], &ps[j]).is_constant() {
                return false;
            }
        }
    }
    true
}
