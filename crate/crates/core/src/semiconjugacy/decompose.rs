//! Decompositions V = z^n o mu, V = T_n o mu, V = Zh_n o mu and the
//! commuting pairs they induce.
//!
//! Maps with signature {n, n} are power maps up to a right Moebius
//! change of variable, and maps with signature {2, 2, n} are Chebyshev
//! or Zhukovski (z^n + z^-n)/2 maps up to the same.  In either case a
//! commuting mate of any coprime degree m comes for free: A = z^m or
//! T_m upstairs, B = mu^-1 o (z^m or T_m) o mu downstairs.

use num_integer::Integer;

use crate::classifier::{SignatureClass, signature_class};
use crate::error::Error;
use crate::field::{Field, NFElem};
use crate::moebius::Moebius;
use crate::poly::Poly;
use crate::qfactor::{factor_over_q, poly_to_rat, roots_in_field};
use crate::ramification::{Orbifold, PointClass, coefficient_field, orbifold_o2};
use crate::semiconjugacy::factor::compose_quotient;
use crate::semiconjugacy::{
    SemiconjugacyCertificate, chebyshev_map, power_map, ratfunc_to_moebius, verify_semiconjugacy,
    zhukovski_map,
};
use crate::{KMoebius, KRatFunc};

fn decomposition_failed() -> Error {
    Error::DecompositionFailed("map does not match the power or dihedral model".into())
}

/// Which degree-2n dihedral model a {2, 2, n} map reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralKind {
    /// V = T_n o mu with deg V = n.
    Chebyshev,
    /// V = (z^n + z^-n)/2 o mu with deg V = 2n.
    Zhukovski,
}

fn has_marked(o2: &Orbifold, pc: &PointClass, nu: usize) -> bool {
    o2.points.iter().any(|(p, m)| p == pc && *m == nu)
}

/// The unique totally ramified preimage of 0 (from the numerator) or of
/// infinity (from the denominator), as z - z0 or None for the point at
/// infinity.
fn total_preimage(p: &Poly<NFElem>, n: usize) -> Result<Option<NFElem>, Error> {
    if p.deg() == 0 {
        return Ok(None);
    }
    let radical = p.exact_div(&p.gcd(&p.derivative())).unwrap().monic();
    if p.deg() != n || radical.deg() != 1 {
        return Err(decomposition_failed());
    }
    Ok(Some(radical.coeff(0).neg()))
}

fn root_moebius(z0: Option<NFElem>, zinf: Option<NFElem>) -> KMoebius {
    let one = <NFElem as Field>::one();
    let zero = <NFElem as Field>::zero();
    match (z0, zinf) {
        (Some(a), Some(b)) => Moebius::new(one.clone(), a.neg(), one, b.neg()).unwrap(),
        (Some(a), None) => Moebius::new(one.clone(), a.neg(), zero, one).unwrap(),
        (None, Some(b)) => Moebius::new(zero, one.clone(), one, b.neg()).unwrap(),
        (None, None) => unreachable!("0 and infinity cannot share a preimage"),
    }
}

/// Recognize V = z^n o mu for a map with signature {n, n}.
///
/// The two totally ramified points are sent to 0 and infinity; the
/// remaining scaling is an n-th root of the leading ratio and may fail
/// to exist in the coefficient field.
pub fn decompose_power(v: &KRatFunc) -> Result<(usize, KMoebius), Error> {
    let n = v.degree();
    let o2 = orbifold_o2(v)?;
    if signature_class(&o2)? != SignatureClass::NN(n) {
        return Err(decomposition_failed());
    }
    if !has_marked(&o2, &PointClass::Finite(<NFElem as Field>::zero()), n)
        || !has_marked(&o2, &PointClass::Infinity, n)
    {
        return Err(decomposition_failed());
    }
    let z0 = total_preimage(v.num(), n)?;
    let zinf = total_preimage(v.den(), n)?;
    let mu0 = root_moebius(z0, zinf);
    let ratio = v.mul(&mu0.to_ratfunc().pow(n).recip()?);
    if ratio.degree() != 0 {
        return Err(decomposition_failed());
    }
    let gamma = ratio.num().coeff(0).div(&ratio.den().coeff(0));
    // c with c^n = gamma, searched in the coefficient field of V.
    let mut root_poly = vec![gamma.neg()];
    root_poly.extend(std::iter::repeat_n(<NFElem as Field>::zero(), n - 1));
    root_poly.push(<NFElem as Field>::one());
    let root_poly = Poly::new(root_poly);
    let field = coefficient_field(v);
    let roots = roots_in_field(&root_poly, field.as_ref())?;
    let c = roots.into_iter().next().ok_or_else(|| {
        let witness = poly_to_rat(&root_poly)
            .map(|p| {
                let (_, factors) = factor_over_q(&p);
                factors
                    .iter()
                    .map(|(f, _)| f.clone())
                    .min_by_key(|f| f.deg())
                    .map(|f| f.to_string())
                    .unwrap_or_else(|| p.to_string())
            })
            .unwrap_or_else(|| root_poly.to_string());
        Error::NeedsExtension(witness)
    })?;
    let mu = Moebius::scaling(c)?.compose(&mu0);
    if power_map(n).compose(&mu.to_ratfunc()) != *v {
        return Err(decomposition_failed());
    }
    Ok((n, mu))
}

/// Recognize V = T_n o mu or V = (z^n + z^-n)/2 o mu for a map with
/// signature {2, 2, n} (with {2, 2} read as the n = 2 Chebyshev case).
pub fn decompose_dihedral(v: &KRatFunc) -> Result<(DihedralKind, usize, KMoebius), Error> {
    let o2 = orbifold_o2(v)?;
    let n = match signature_class(&o2)? {
        SignatureClass::TwoTwoN(n) => n,
        // T_2 itself has the degenerate signature {2, 2}.
        SignatureClass::NN(2) => 2,
        _ => return Err(decomposition_failed()),
    };
    let kind = if v.degree() == n {
        DihedralKind::Chebyshev
    } else if v.degree() == 2 * n {
        DihedralKind::Zhukovski
    } else {
        return Err(decomposition_failed());
    };
    let model = match kind {
        DihedralKind::Chebyshev => chebyshev_map(n),
        DihedralKind::Zhukovski => zhukovski_map(n),
    };
    let mu = compose_quotient(&model, v).map_err(|e| match e {
        Error::NotALeftFactor => decomposition_failed(),
        other => other,
    })?;
    let mu = ratfunc_to_moebius(&mu).ok_or_else(decomposition_failed)?;
    Ok((kind, n, mu))
}

/// Build A o V = V o B for a power or dihedral map V and a commuting
/// degree m coprime to deg V.
pub fn construct_pair_power_dihedral(
    v: &KRatFunc,
    m: usize,
) -> Result<SemiconjugacyCertificate, Error> {
    if m < 2 || m.gcd(&v.degree()) != 1 {
        return Err(Error::CoprimalityRequired(m, v.degree()));
    }
    let (a, inner, mu) = match decompose_power(v) {
        Ok((_, mu)) => (power_map(m), power_map(m), mu),
        Err(Error::DecompositionFailed(_)) => {
            let (kind, _, mu) = decompose_dihedral(v)?;
            let inner = match kind {
                // T_m o T_n = T_n o T_m; T_m o Zh_n = Zh_n o z^m.
                DihedralKind::Chebyshev => chebyshev_map(m),
                DihedralKind::Zhukovski => power_map(m),
            };
            (chebyshev_map(m), inner, mu)
        }
        Err(e) => return Err(e),
    };
    let mu_r = mu.to_ratfunc();
    let b = mu.inverse().to_ratfunc().compose(&inner).compose(&mu_r);
    let cert = verify_semiconjugacy(&a, v, &b);
    if !cert.identity_checked {
        return Err(Error::Internal("power/dihedral construction failed verification".into()));
    }
    Ok(cert)
}
