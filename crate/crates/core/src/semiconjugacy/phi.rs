//! Expressing U o B in the fiber basis 1, U, ..., U^(n-1) over C(V).
//!
//! When U and V together generate the rational function field, every
//! rational function — in particular U o B for a commuting mate B of V —
//! is a combination sum P_i(V) U^i with rational-function coefficients
//! P_i and n = deg V.  The coefficients are found by exact linear
//! algebra over the coefficient field and certified by recomposition.

use crate::error::Error;
use crate::field::{Field, NFElem};
use crate::linalg::nullspace;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::{KPoly, KRatFunc};

fn const_rf(c: &NFElem) -> KRatFunc {
    RatFunc::new(Poly::constant(c.clone()), Poly::one()).unwrap()
}

/// p(w) - f(z) q(w) as a polynomial in w over the field K(z).
fn fiber_poly_in_w(f: &KRatFunc) -> Poly<KRatFunc> {
    let p = Poly::new(f.num().coeffs().iter().map(const_rf).collect());
    let q = Poly::new(f.den().coeffs().iter().map(const_rf).collect());
    p.sub(&q.scale(f))
}

/// True when z -> (U(z), V(z)) is generically injective, i.e. the pair
/// generates the function field.
fn generates(u: &KRatFunc, v: &KRatFunc) -> bool {
    let gw = fiber_poly_in_w(u).gcd(&fiber_poly_in_w(v));
    gw.deg() == 1
}

/// Homogenization N~(g, h) of sum_j c_j t^j at formal degree d, with the
/// coefficients c_j supplied as the polynomial basis index.
fn homog_basis(g: &KPoly, h: &KPoly, d: usize) -> Vec<KPoly> {
    (0..=d).map(|j| g.pow(j).mul(&h.pow(d - j))).collect()
}

/// Write U o B = sum_i P_i(V) U^i with i < n = deg V and rational
/// functions P_i, exactly.
///
/// Unknown numerators N_i and a shared denominator D of degree at most d
/// turn the identity into a homogeneous linear system once denominators
/// are cleared; d is escalated until a verifying solution appears.
pub fn phi_fiber_decomposition(
    u: &KRatFunc,
    v: &KRatFunc,
    b: &KRatFunc,
) -> Result<Vec<KRatFunc>, Error> {
    let n = v.degree();
    if n == 0 || u.degree() == 0 {
        return Err(Error::Validation("U and V must be nonconstant".into()));
    }
    if !generates(u, v) {
        return Err(Error::DoesNotGenerate);
    }
    let target = u.compose(b);
    let (s, t) = (target.num().clone(), target.den().clone());
    let (g, h) = (v.num().clone(), v.den().clone());
    let (p, q) = (u.num().clone(), u.den().clone());

    let d_max = u.degree() * b.degree() + 2;
    for d in 0..=d_max {
        let hom = homog_basis(&g, &h, d);
        // Columns: D-coefficients j = 0..=d, then N_i-coefficients per i.
        let mut cols: Vec<KPoly> = Vec::new();
        let q_pow = q.pow(n - 1);
        for base in &hom {
            cols.push(s.mul(base).mul(&q_pow));
        }
        for i in 0..n {
            let weight = t.mul(&p.pow(i)).mul(&q.pow(n - 1 - i)).neg();
            for base in &hom {
                cols.push(weight.mul(base));
            }
        }
        let height = cols.iter().map(|c| c.deg() + 1).max().unwrap_or(1);
        let rows: Vec<Vec<NFElem>> =
            (0..height).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
        for sol in nullspace(rows) {
            let den = Poly::new(sol[..=d].to_vec());
            if den.is_zero() {
                continue;
            }
            let coeffs: Vec<KRatFunc> = (0..n)
                .map(|i| {
                    let lo = (i + 1) * (d + 1);
                    let num = Poly::new(sol[lo..lo + d + 1].to_vec());
                    RatFunc::new(num, den.clone())
                })
                .collect::<Result<_, _>>()?;
            // Exact certification: recompose and compare.
            let mut acc = <KRatFunc as Field>::zero();
            let mut u_pow = <KRatFunc as Field>::one();
            for pi in &coeffs {
                acc = acc.add(&pi.compose(v).mul(&u_pow));
                u_pow = u_pow.mul(u);
            }
            if acc == target {
                return Ok(coeffs);
            }
        }
    }
    Err(Error::Internal("fiber decomposition not found within the degree bound".into()))
}
