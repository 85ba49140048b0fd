//! Construction and verification of semiconjugacies A o V = V o B.
//!
//! The constructions follow the universal-covering route: V with a spherical
//! or euclidean target orbifold is a compositional factor of an invariant
//! covering theta, an equivariant F descends to the pair (A, B), and every
//! produced pair is certified by the exact composition identity.

mod decompose;
mod factor;
mod lattes;
mod phi;
mod s4;

pub use decompose::{
    construct_pair_power_dihedral, decompose_dihedral, decompose_power, DihedralKind,
};
pub use factor::{compose_quotient, right_factor};
pub use lattes::{construct_pair_euclid2222, division_polynomials, DivisionPolynomials};
pub use phi::phi_fiber_decomposition;
pub use s4::{construct_pair_s4, klein_group_s4, s4_data, solve_a_from_theta};

pub use crate::poly::chebyshev;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{rat, Field, NFElem, Rat};
use crate::moebius::Moebius;
use crate::numeric::{Cx, Embedding};
use crate::poly::Poly;
use crate::qfactor::poly_from_rat;
use crate::ramification::coefficient_field;
use crate::ratfunc::RatFunc;
use crate::{KMoebius, KRatFunc};

/// T_n as a rational map over the working field.
pub fn chebyshev_map(n: usize) -> KRatFunc {
    RatFunc::from_poly(chebyshev::<NFElem>(n))
}

/// The power map z^n over the working field.
pub fn power_map(n: usize) -> KRatFunc {
    RatFunc::from_poly(Poly::monomial(<NFElem as Field>::one(), n))
}

/// (1/2)(z^n + z^-n), the degree-2n map with the same target orbifold as
/// the Chebyshev family.
pub fn zhukovski_map(n: usize) -> KRatFunc {
    let mut num = Poly::monomial(NFElem::from_rat(rat(1, 2)), 2 * n);
    num = num.add(&Poly::constant(NFElem::from_rat(rat(1, 2))));
    RatFunc::new(num, Poly::monomial(<NFElem as Field>::one(), n)).unwrap()
}

/// One sampled fiber of the bijectivity spot check.
#[derive(Debug, Clone)]
pub struct SpotCheck {
    pub y0: Rat,
    pub fiber_size: usize,
    pub injective: bool,
    /// log2 of the worst |V(B(zeta)) - A(y0)| over the fiber.
    pub max_residual_log2: i64,
}

/// The certified data of a semiconjugacy A o V = V o B.
#[derive(Debug, Clone)]
pub struct SemiconjugacyCertificate {
    pub v: KRatFunc,
    pub a: KRatFunc,
    pub b: KRatFunc,
    /// Exact identity A o V = V o B.
    pub identity_checked: bool,
    /// gcd(deg B, deg V) = 1.
    pub degrees_coprime: bool,
    pub spot_checks: Vec<SpotCheck>,
}

impl SemiconjugacyCertificate {
    pub fn is_valid(&self) -> bool {
        self.identity_checked
    }
}

/// Equivariant covering data: theta invariant under a finite Moebius group,
/// F commuting with every group element.
#[derive(Debug, Clone)]
pub struct EquivariantData {
    pub theta: KRatFunc,
    pub f: KRatFunc,
    pub group_generators: Vec<KMoebius>,
}

/// Check A o V = V o B exactly, record degree coprimality, and spot-check
/// generic fiber bijectivity numerically.  A failing check is reported in
/// the certificate flags, never as an error.
pub fn verify_semiconjugacy(a: &KRatFunc, v: &KRatFunc, b: &KRatFunc) -> SemiconjugacyCertificate {
    let identity_checked = a.compose(v) == v.compose(b);
    let degrees_coprime = b.degree().gcd(&v.degree()) == 1;
    let spot_checks = if identity_checked { spot_check_fibers(a, v, b, 10, 0) } else { vec![] };
    SemiconjugacyCertificate {
        v: v.clone(),
        a: a.clone(),
        b: b.clone(),
        identity_checked,
        degrees_coprime,
        spot_checks,
    }
}

/// Numeric fiber transport samples: for random regular values y0, check
/// that B is injective on V^{-1}(y0) and lands in V^{-1}(A(y0)).
pub fn spot_check_fibers(
    a: &KRatFunc,
    v: &KRatFunc,
    b: &KRatFunc,
    samples: usize,
    seed: u64,
) -> Vec<SpotCheck> {
    const PREC: u32 = 256;
    let emb = match coefficient_field(v).or_else(|| coefficient_field(b)) {
        Some(f) => Embedding {
            alpha: crate::numeric::field_embeddings(f.minpoly(), PREC)
                .into_iter()
                .next()
                .map(|e| e.alpha)
                .unwrap(),
        },
        None => Embedding::rational(PREC),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut attempts = 0;
    while out.len() < samples && attempts < samples * 20 {
        attempts += 1;
        let y0 = rat(rng.gen_range(-99..100), rng.gen_range(1..40));
        let fiber = v.fiber_poly(&NFElem::from_rat(y0.clone()));
        // Regular value: full fiber of distinct points.
        if fiber.degree() != Some(v.degree()) || !fiber.is_squarefree() {
            continue;
        }
        let roots = crate::numeric::roots_embedded(&fiber, &emb, PREC);
        let sep_floor = -((PREC / 2) as i64);
        let mut images: Vec<Cx> = vec![];
        let mut injective = true;
        let mut max_res = i64::MIN;
        let target = match a.eval(&NFElem::from_rat(y0.clone())) {
            crate::ratfunc::P1::Finite(t) => emb.apply(&t),
            crate::ratfunc::P1::Infinity => continue,
        };
        for z in &roots {
            let Some(bz) = emb.eval_ratfunc(b, z) else {
                injective = false;
                break;
            };
            for prev in &images {
                if bz.dist(prev).log2_abs() < sep_floor {
                    injective = false;
                }
            }
            if let Some(vbz) = emb.eval_ratfunc(v, &bz) {
                max_res = max_res.max(vbz.sub(&target).abs().log2_abs());
            } else {
                injective = false;
            }
            images.push(bz);
        }
        out.push(SpotCheck {
            y0,
            fiber_size: roots.len(),
            injective,
            max_residual_log2: max_res,
        });
    }
    out
}

/// A degree-1 rational map as a Moebius transformation.
pub fn ratfunc_to_moebius(f: &KRatFunc) -> Option<KMoebius> {
    if f.degree() != 1 {
        return None;
    }
    let a = f.num().coeff(1);
    let b = f.num().coeff(0);
    let c = f.den().coeff(1);
    let d = f.den().coeff(0);
    Moebius::new(a, b, c, d).ok()
}

/// Rational map with integer coefficient lists, low to high (test helper
/// shared across the construction layers).
pub(crate) fn q_map(num: &[i64], den: &[i64]) -> KRatFunc {
    RatFunc::new(poly_from_rat(&Poly::from_ints(num)), poly_from_rat(&Poly::from_ints(den)))
        .unwrap()
}

/// The flagship quartic 3z^4 - 4z^3.
pub fn flagship_quartic() -> KRatFunc {
    q_map(&[0, 0, 0, -4, 3], &[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_commutation_small() {
        for m in 1..=6usize {
            for n in 1..=6usize {
                let tm: Poly<NFElem> = chebyshev(m);
                let tn = chebyshev(n);
                assert_eq!(tm.compose(&tn), chebyshev(m * n));
            }
        }
    }

    #[test]
    fn zhukovski_against_chebyshev() {
        // T_m o Zh_n = Zh_(mn).
        let t2 = chebyshev_map(2);
        let zh3 = zhukovski_map(3);
        assert_eq!(t2.compose(&zh3), zhukovski_map(6));
    }

    #[test]
    fn verify_trivial_power_triple() {
        let s = power_map(2);
        let cert = verify_semiconjugacy(&s, &s, &s);
        assert!(cert.identity_checked);
        assert!(!cert.degrees_coprime);
    }

    #[test]
    fn verify_chebyshev_triple() {
        let cert = verify_semiconjugacy(&chebyshev_map(2), &chebyshev_map(3), &chebyshev_map(2));
        assert!(cert.identity_checked);
        assert!(cert.degrees_coprime);
        assert!(cert.spot_checks.iter().all(|s| s.injective && s.fiber_size == 3));
        assert!(cert.spot_checks.iter().all(|s| s.max_residual_log2 < -100));
    }

    #[test]
    fn moebius_conversion_roundtrip() {
        let f = q_map(&[1, 2], &[3, 1]);
        let m = ratfunc_to_moebius(&f).unwrap();
        assert_eq!(m.to_ratfunc(), f);
        assert!(ratfunc_to_moebius(&power_map(2)).is_none());
    }
}
