//! Compositional factorization: given a left factor V of theta, recover H
//! with theta = V o H by a truncated power-series Newton solve followed by
//! Pade reconstruction.  The series work is untrusted scaffolding; candidates
//! are accepted only after exact recomposition.

use std::sync::Arc;

use crate::error::Error;
use crate::field::{rat_int, Field, NFElem, NumberField};
use crate::linalg::nullspace;
use crate::poly::Poly;
use crate::qfactor::roots_in_field;
use crate::ramification::coefficient_field;
use crate::ratfunc::RatFunc;
use crate::KRatFunc;

type S = Vec<NFElem>;

fn s_trunc(mut x: S, len: usize) -> S {
    x.truncate(len);
    x.resize(len, <NFElem as Field>::zero());
    x
}

fn s_mul(x: &S, y: &S, len: usize) -> S {
    let mut out = vec![<NFElem as Field>::zero(); len];
    for (i, xi) in x.iter().enumerate().take(len) {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&xi.mul(yj));
        }
    }
    out
}

fn s_sub(x: &S, y: &S) -> S {
    x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
}

/// Multiplicative inverse of a series with a unit constant term.
fn s_inv(x: &S, len: usize) -> Option<S> {
    let c0 = x[0].inv()?;
    let mut out = vec![<NFElem as Field>::zero(); len];
    out[0] = c0.clone();
    for k in 1..len {
        let mut acc = <NFElem as Field>::zero();
        for j in 1..=k {
            acc = acc.add(&x.get(j).cloned().unwrap_or_else(<NFElem as Field>::zero).mul(&out[k - j]));
        }
        out[k] = acc.neg().mul(&c0);
    }
    Some(out)
}

/// Evaluate a polynomial at a series (Horner).
fn s_poly_at(p: &Poly<NFElem>, w: &S, len: usize) -> S {
    let mut acc = vec![<NFElem as Field>::zero(); len];
    for c in p.coeffs().iter().rev() {
        acc = s_mul(&acc, w, len);
        acc[0] = acc[0].add(c);
    }
    acc
}

/// The Taylor series of `f` at z0 (which must not be a pole), to `len` terms.
fn ratfunc_series(f: &KRatFunc, z0: &NFElem, len: usize) -> Option<S> {
    let num = s_trunc(f.num().translate(z0).coeffs().to_vec(), len);
    let den = s_trunc(f.den().translate(z0).coeffs().to_vec(), len);
    let den_inv = s_inv(&den, len)?;
    Some(s_mul(&num, &den_inv, len))
}

/// Solve left(w(t)) = target(t) for a series w with w(0) = w0, by Newton
/// iteration on Phi(w) = P(w) - target * Q(w).  Requires Phi'(w0) to be a
/// unit (w0 not a critical point of `left` over target(0)).
fn series_preimage(left: &KRatFunc, target: &S, w0: &NFElem, len: usize) -> Option<S> {
    let p = left.num();
    let q = left.den();
    let dp = p.derivative();
    let dq = q.derivative();
    let mut w = vec![w0.clone()];
    let mut l = 1usize;
    while l < len {
        l = (2 * l).min(len);
        w = s_trunc(w, l);
        let t = s_trunc(target[..l.min(target.len())].to_vec(), l);
        let phi = s_sub(&s_poly_at(p, &w, l), &s_mul(&t, &s_poly_at(q, &w, l), l));
        let dphi = s_sub(&s_poly_at(&dp, &w, l), &s_mul(&t, &s_poly_at(&dq, &w, l), l));
        let dphi_inv = s_inv(&dphi, l)?;
        w = s_sub(&w, &s_mul(&phi, &dphi_inv, l));
    }
    Some(w)
}

/// Rational reconstruction of a series as a degree <= d rational function
/// of t, by the linear Pade system; all candidates from the kernel.
fn pade_candidates(w: &S, d: usize) -> Vec<(Poly<NFElem>, Poly<NFElem>)> {
    // a(t) - w(t) b(t) = O(t^(2d+2)), unknowns a_0..a_d, b_0..b_d.
    let rows_n = 2 * d + 2;
    let cols = 2 * (d + 1);
    let mut rows = vec![vec![<NFElem as Field>::zero(); cols]; rows_n];
    for k in 0..rows_n {
        if k <= d {
            rows[k][k] = <NFElem as Field>::one();
        }
        for j in 0..=d.min(k) {
            rows[k][d + 1 + j] = w[k - j].neg();
        }
    }
    nullspace(rows)
        .into_iter()
        .filter_map(|v| {
            let a = Poly::new(v[..=d].to_vec());
            let b = Poly::new(v[d + 1..].to_vec());
            if b.is_zero() {
                None
            } else {
                Some((a, b))
            }
        })
        .collect()
}

fn candidate_fields(whole: &KRatFunc, left: &KRatFunc) -> Vec<Option<Arc<NumberField>>> {
    match coefficient_field(whole).or_else(|| coefficient_field(left)) {
        Some(f) => vec![Some(f)],
        // Rational data may still factor through a small extension; the
        // Gaussian rationals cover the constructions in scope.
        None => vec![None, Some(NumberField::gaussian())],
    }
}

/// Find H with left o H = whole, exactly.  The series search runs over the
/// coefficient field of the inputs (falling back to Q(i) for rational
/// data); the result is only returned after exact verification.
pub fn compose_quotient(left: &KRatFunc, whole: &KRatFunc) -> Result<KRatFunc, Error> {
    let dl = left.degree();
    let dw = whole.degree();
    if dl == 0 || dw == 0 || dw % dl != 0 {
        return Err(Error::NotALeftFactor);
    }
    let d = dw / dl;
    let len = 2 * d + 4;
    for field in candidate_fields(whole, left) {
        for base in 0..24i64 {
            let z0 = match &field {
                Some(f) => NFElem::from_rat_in(f, rat_int(base)),
                None => NFElem::from_rat(rat_int(base)),
            };
            if whole.den().eval(&z0).is_zero() {
                continue;
            }
            let Some(target) = ratfunc_series(whole, &z0, len) else { continue };
            let y0 = target[0].clone();
            let fiber = left.map(|c| match &field {
                Some(f) => c.lift(f),
                None => c.clone(),
            });
            let g = fiber.fiber_poly(&y0);
            let Ok(roots) = roots_in_field(&g, field.as_ref()) else { continue };
            for w0 in roots {
                // Skip critical preimages: Newton needs a simple root.
                let dphi0 = left
                    .num()
                    .derivative()
                    .eval(&w0)
                    .sub(&y0.mul(&left.den().derivative().eval(&w0)));
                if dphi0.is_zero() {
                    continue;
                }
                let Some(w) = series_preimage(left, &target, &w0, len) else { continue };
                for (a, b) in pade_candidates(&w, d) {
                    let shift = z0.neg();
                    let (an, bn) = (a.translate(&shift), b.translate(&shift));
                    if bn.is_zero() {
                        continue;
                    }
                    let Ok(h) = RatFunc::new(an, bn) else { continue };
                    if h.degree() == d && left.compose(&h) == *whole {
                        return Ok(h);
                    }
                }
            }
        }
    }
    Err(Error::NotALeftFactor)
}

/// H with theta = v o H: the universal covering of the source orbifold of v
/// when theta covers the target.
pub fn right_factor(theta: &KRatFunc, v: &KRatFunc) -> Result<KRatFunc, Error> {
    compose_quotient(v, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiconjugacy::{chebyshev_map, power_map, q_map};

    #[test]
    fn power_map_quotient() {
        // H is determined only up to the deck ambiguity (here a sign).
        let h = right_factor(&power_map(6), &power_map(2)).unwrap();
        assert_eq!(h.degree(), 3);
        assert_eq!(power_map(2).compose(&h), power_map(6));
    }

    #[test]
    fn chebyshev_quotient() {
        let h = right_factor(&chebyshev_map(6), &chebyshev_map(2)).unwrap();
        assert_eq!(h.degree(), 3);
        assert_eq!(chebyshev_map(2).compose(&h), chebyshev_map(6));
    }

    #[test]
    fn quotient_with_moebius_inner() {
        // whole = z^2 o (z+5); the factor comes back as +-(z+5).
        let whole = q_map(&[25, 10, 1], &[1]);
        let h = compose_quotient(&power_map(2), &whole).unwrap();
        assert!(h == q_map(&[5, 1], &[1]) || h == q_map(&[-5, -1], &[1]));
    }

    #[test]
    fn non_factor_rejected() {
        assert!(matches!(
            compose_quotient(&chebyshev_map(2), &power_map(4)),
            Err(Error::NotALeftFactor)
        ));
        assert!(matches!(
            compose_quotient(&power_map(2), &power_map(3)),
            Err(Error::NotALeftFactor)
        ));
    }

    #[test]
    fn rational_quotient_of_rational_whole() {
        // whole = ((z^2+1)/z)^2 with left z^2.
        let inner = q_map(&[1, 0, 1], &[0, 1]);
        let whole = power_map(2).compose(&inner);
        let h = compose_quotient(&power_map(2), &whole).unwrap();
        assert_eq!(power_map(2).compose(&h), whole);
    }
}
