//! Division polynomials and the Lattès construction for {2, 2, 2, 2} maps.
//!
//! Multiplication by m on an elliptic curve y^2 = x^3 + ax + b descends
//! to a degree-m^2 rational map of the x-line, computed by the classical
//! division polynomials.  A map V with signature {2, 2, 2, 2} is a
//! quotient of an elliptic curve, so after moving one of its four marked
//! points to infinity and depressing the resulting cubic, the
//! multiplication map provides a commuting mate in the original
//! coordinates.

use num_integer::Integer;

use crate::classifier::{EllipticCurve, SignatureClass, signature_class};
use crate::error::Error;
use crate::field::{Field, NFElem, rat, rat_int};
use crate::moebius::Moebius;
use crate::poly::Poly;
use crate::qfactor::poly_from_rat;
use crate::ramification::{PointClass, orbifold_o2};
use crate::ratfunc::RatFunc;
use crate::{KPoly, KRatFunc};

/// Division-polynomial data for multiplication by m on y^2 = x^3 + ax + b.
#[derive(Debug, Clone)]
pub struct DivisionPolynomials {
    pub m: usize,
    /// psi_m^2 as a polynomial in x alone.
    pub psi_squared: KPoly,
    /// phi_m = x psi_m^2 - psi_{m+1} psi_{m-1}.
    pub phi: KPoly,
    /// The x-coordinate of multiplication by m: phi_m / psi_m^2.
    pub x_map: KRatFunc,
}

/// Compute psi_m^2, phi_m and the multiplication-by-m x-map.
///
/// Internally psi_k is stored as f_k(x) y^(k mod 2 == 0), with y^2
/// eliminated through the curve equation, so every returned object is a
/// polynomial in x alone.
pub fn division_polynomials(e: &EllipticCurve, m: usize) -> Result<DivisionPolynomials, Error> {
    if m < 2 {
        return Err(Error::Validation("division polynomials need m >= 2".into()));
    }
    let a = e.a.clone();
    let b = e.b.clone();
    let x = Poly::<NFElem>::x();
    let c = x.pow(3).add(&x.scale(&a)).add(&Poly::constant(b.clone()));
    let c2 = c.mul(&c);
    let half = NFElem::from_rat(rat(1, 2));

    // f[k] with psi_k = f_k y^(parity of k); f[-1] = -1 handled inline.
    let mut f: Vec<KPoly> = vec![
        Poly::zero(),
        Poly::one(),
        Poly::constant(rat_to_nf(2)),
        poly_f3(&a, &b),
        poly_f4(&a, &b),
    ];
    let minus_one = Poly::constant(<NFElem as Field>::one().neg());
    let fat = |f: &Vec<KPoly>, i: isize| -> KPoly {
        if i < 0 { minus_one.clone() } else { f[i as usize].clone() }
    };
    for j in 5..=(m + 2) {
        let next = if j % 2 == 1 {
            let k = (j - 1) / 2;
            let lead = f[k + 2].mul(&f[k].pow(3));
            let trail = fat(&f, k as isize - 1).mul(&f[k + 1].pow(3));
            if k % 2 == 0 { lead.mul(&c2).sub(&trail) } else { lead.sub(&trail.mul(&c2)) }
        } else {
            let k = j / 2;
            let lead = f[k + 2].mul(&fat(&f, k as isize - 1).pow(2));
            let trail = fat(&f, k as isize - 2).mul(&f[k + 1].pow(2));
            f[k].mul(&lead.sub(&trail)).scale(&half)
        };
        f.push(next);
    }

    let psi_squared =
        if m % 2 == 0 { f[m].mul(&f[m]).mul(&c) } else { f[m].mul(&f[m]) };
    let cross = f[m + 1].mul(&fat(&f, m as isize - 1));
    let cross = if m % 2 == 1 { cross.mul(&c) } else { cross };
    let phi = x.mul(&psi_squared).sub(&cross);
    let x_map = RatFunc::new(phi.clone(), psi_squared.clone())?;
    if x_map.degree() != m * m {
        return Err(Error::Internal("multiplication map has wrong degree".into()));
    }
    Ok(DivisionPolynomials { m, psi_squared, phi, x_map })
}

fn rat_to_nf(n: i64) -> NFElem {
    NFElem::from_rat(rat_int(n))
}

fn poly_f3(a: &NFElem, b: &NFElem) -> KPoly {
    // 3x^4 + 6a x^2 + 12b x - a^2.
    Poly::new(vec![
        a.mul(a).neg(),
        b.mul(&rat_to_nf(12)),
        a.mul(&rat_to_nf(6)),
        <NFElem as Field>::zero(),
        rat_to_nf(3),
    ])
}

fn poly_f4(a: &NFElem, b: &NFElem) -> KPoly {
    // 4(x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3).
    let a2 = a.mul(a);
    Poly::new(vec![
        b.mul(b).mul(&rat_to_nf(8)).add(&a2.mul(a)).neg(),
        a.mul(b).mul(&rat_to_nf(4)).neg(),
        a2.mul(&rat_to_nf(5)).neg(),
        b.mul(&rat_to_nf(20)),
        a.mul(&rat_to_nf(5)),
        <NFElem as Field>::zero(),
        <NFElem as Field>::one(),
    ])
    .scale(&rat_to_nf(4))
}

/// Minimal polynomial of the images of a marked point class under
/// w = 1/(z - p): for d(z) this is the reversal of d(z + p).
fn image_factor(pc: &PointClass, pivot: &Option<NFElem>) -> KPoly {
    match (pc, pivot) {
        (PointClass::Infinity, Some(_)) => Poly::x(),
        (PointClass::Infinity, None) => unreachable!("pivot is the point sent to infinity"),
        (PointClass::Finite(q), Some(p)) => {
            // 1/(q - p) as a root.
            Poly::new(vec![q.sub(p).inv().unwrap().neg(), <NFElem as Field>::one()])
        }
        (PointClass::Finite(q), None) => Poly::new(vec![q.neg(), <NFElem as Field>::one()]),
        (PointClass::Conjugacy(d), Some(p)) => {
            lift_poly(d).translate(p).reversed().monic()
        }
        (PointClass::Conjugacy(d), None) => lift_poly(d),
    }
}

fn lift_poly(d: &Poly<crate::field::Rat>) -> KPoly {
    poly_from_rat(d)
}

/// Build the Lattès commuting mate for a {2, 2, 2, 2} map: the x-map of
/// multiplication by m on the curve read off from the marked points of
/// the orbifold, conjugated back to the original coordinates.
pub fn construct_pair_euclid2222(v: &KRatFunc, m: usize) -> Result<KRatFunc, Error> {
    if m < 2 || m.gcd(&v.degree()) != 1 {
        return Err(Error::CoprimalityRequired(m, v.degree()));
    }
    let o2 = orbifold_o2(v)?;
    if signature_class(&o2)? != SignatureClass::Euclid2222 {
        return Err(Error::NotFiberCompatible(
            "Lattes construction requires signature {2, 2, 2, 2}".into(),
        ));
    }

    // Send one explicit marked point to infinity by mu; conjugacy classes
    // cannot serve as the pivot without extending the field.
    let pivot_class = o2
        .points
        .iter()
        .find(|(pc, _)| matches!(pc, PointClass::Infinity))
        .or_else(|| o2.points.iter().find(|(pc, _)| matches!(pc, PointClass::Finite(_))))
        .map(|(pc, _)| pc.clone());
    let (mu, pivot): (Moebius<NFElem>, Option<NFElem>) = match pivot_class.clone() {
        Some(PointClass::Infinity) => (Moebius::identity(), None),
        Some(PointClass::Finite(p)) => (
            Moebius::new(
                <NFElem as Field>::zero(),
                <NFElem as Field>::one(),
                <NFElem as Field>::one(),
                p.neg(),
            )
            .unwrap(),
            Some(p),
        ),
        _ => {
            return Err(Error::NeedsExtension(
                "all marked points of the orbifold are irrational conjugacy classes".into(),
            ));
        }
    };

    let mut cubic = Poly::one();
    for (pc, _) in &o2.points {
        if Some(pc) == pivot_class.as_ref() {
            continue;
        }
        cubic = cubic.mul(&image_factor(pc, &pivot));
    }
    if cubic.deg() != 3 {
        return Err(Error::Internal("marked points do not yield a cubic".into()));
    }
    let cubic = cubic.monic();

    // Depress: shift roots by t = c2/3 so the square term vanishes.
    let t = cubic.coeff(2).mul(&NFElem::from_rat(rat(1, 3)));
    let short = cubic.translate(&t.neg());
    debug_assert!(short.coeff(2).is_zero());
    let curve = EllipticCurve::new(short.coeff(1), short.coeff(0))?;
    let data = division_polynomials(&curve, m)?;

    let sigma = Moebius::translation(t);
    let conj = sigma.compose(&mu);
    let a = conj
        .inverse()
        .to_ratfunc()
        .compose(&data.x_map)
        .compose(&conj.to_ratfunc());
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiconjugacy::q_map;

    fn curve(a: i64, b: i64) -> EllipticCurve {
        EllipticCurve::new(rat_to_nf(a), rat_to_nf(b)).unwrap()
    }

    #[test]
    fn doubling_formula() {
        for (a, b) in [(-1i64, 0i64), (0, 1), (2, 3), (-4, 7)] {
            let d = division_polynomials(&curve(a, b), 2).unwrap();
            let expected = q_map(&[a * a, -8 * b, -2 * a, 0, 1], &[4 * b, 4 * a, 0, 4]);
            assert_eq!(d.x_map, expected);
        }
    }

    #[test]
    fn degrees_are_m_squared() {
        let e = curve(-1, 0);
        for m in 2..=5 {
            assert_eq!(division_polynomials(&e, m).unwrap().x_map.degree(), m * m);
        }
    }

    #[test]
    fn multiplication_maps_commute() {
        let e = curve(-1, 0);
        let two = division_polynomials(&e, 2).unwrap().x_map;
        let three = division_polynomials(&e, 3).unwrap().x_map;
        assert_eq!(two.compose(&three), three.compose(&two));
        // [2] o [3] = [6] = [3] o [2]: a genuine commuting pair of
        // coprime degrees 4 and 9.
        assert_eq!(two.compose(&three).degree(), 36);
    }

    #[test]
    fn lattes_pair_from_tripling_map() {
        // V = the [3] x-map on y^2 = x^3 - x has signature {2,2,2,2}
        // (the even maps are unramified over infinity and drop a marked
        // point); the construction recovers the commuting [2] map.
        let e = curve(-1, 0);
        let v = division_polynomials(&e, 3).unwrap().x_map;
        let a = construct_pair_euclid2222(&v, 2).unwrap();
        assert_eq!(a, division_polynomials(&e, 2).unwrap().x_map);
        assert_eq!(a.compose(&v), v.compose(&a));
    }

    #[test]
    fn coprimality_and_signature_guards() {
        let v = division_polynomials(&curve(-1, 0), 3).unwrap().x_map;
        assert!(matches!(
            construct_pair_euclid2222(&v, 3),
            Err(Error::CoprimalityRequired(..))
        ));
        assert!(construct_pair_euclid2222(&q_map(&[0, 0, 1], &[1]), 3).is_err());
    }
}
