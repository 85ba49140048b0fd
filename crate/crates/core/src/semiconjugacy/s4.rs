//! Octahedral equivariant data and the construction for {2, 3, 4} maps.
//!
//! The octahedral triple consists of a degree-24 invariant quotient map
//! theta, a degree-5 rational map F commuting with every element of the
//! rotation group of the octahedron (realized as 24 Moebius
//! transformations over Q(i)), and the induced degree-5 map A with
//! theta o F = A o theta.  Any map whose critical orbifold has signature
//! {2, 3, 4} is, after a Moebius change of coordinates, a left
//! compositional factor of theta, which yields a commuting mate of
//! coprime degree through the shared equivariant F.

use std::sync::Arc;

use crate::classifier::SignatureClass;
use crate::classifier::signature_class;
use crate::error::Error;
use crate::field::{Field, NFElem, NumberField, rat_int};
use crate::linalg::nullspace;
use crate::moebius::Moebius;
use crate::poly::Poly;
use crate::qfactor::poly_from_rat;
use crate::ramification::{Orbifold, PointClass, orbifold_o2};
use crate::ratfunc::{P1, RatFunc};
use crate::semiconjugacy::factor::compose_quotient;
use crate::semiconjugacy::{
    EquivariantData, SemiconjugacyCertificate, q_map, verify_semiconjugacy,
};
use crate::{KMoebius, KPoly, KRatFunc};

fn gaussian_i() -> (Arc<NumberField>, NFElem) {
    let k = NumberField::gaussian();
    let i = NFElem::generator(&k);
    (k, i)
}

/// The degree-24 octahedral invariant quotient, the degree-5 equivariant
/// map, and generators for the 24-element rotation group.
///
/// theta = -(z^8 + 14 z^4 + 1)^3 / (108 z^4 (z^4 - 1)^4) has the three
/// critical values 0, -1, infinity with local multiplicities 3, 2, 4.
/// F = (-z^5 + 5z) / (5 z^4 - 1) commutes with the whole group, and
/// theta o sigma = theta for every group element sigma.
pub fn s4_data() -> EquivariantData {
    let octic = poly_from_rat(&Poly::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]));
    let num = octic.pow(3).neg();
    let quartic = poly_from_rat(&Poly::from_ints(&[-1, 0, 0, 0, 1]));
    let den = quartic.pow(4).mul(&poly_from_rat(&Poly::monomial(rat_int(108), 4)));
    let theta = RatFunc::new(num, den).unwrap();
    let f = q_map(&[0, 5, 0, 0, 0, -1], &[-1, 0, 0, 0, 5]);

    let (k, i) = gaussian_i();
    let one = NFElem::from_rat_in(&k, rat_int(1));
    let rotate = Moebius::new(
        i.clone(),
        <NFElem as Field>::zero(),
        <NFElem as Field>::zero(),
        one.clone(),
    )
    .unwrap();
    let swap = Moebius::new(one.clone(), i.clone(), one, i.neg()).unwrap();
    EquivariantData { theta, f, group_generators: vec![rotate, swap] }
}

/// The full 24-element rotation group generated by the octahedral
/// generators, closed under composition.
pub fn klein_group_s4() -> Vec<KMoebius> {
    let gens = s4_data().group_generators;
    let mut group: Vec<KMoebius> = vec![Moebius::identity()];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = s.compose(g);
                if !group.contains(&h) {
                    group.push(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    assert_eq!(group.len(), 24, "octahedral closure must have order 24");
    group
}

/// Solve theta o F = A o theta for A of degree m by matching coefficients.
///
/// Writing theta = N/D and A = P/Q, the identity cross-multiplies to a
/// linear system in the coefficients of P and Q; a one-dimensional
/// solution space pins A down up to the canonical rational-map scaling.
pub fn solve_a_from_theta(theta: &KRatFunc, f: &KRatFunc, m: usize) -> Result<KRatFunc, Error> {
    let lhs = theta.compose(f);
    let (s, t) = (lhs.num().clone(), lhs.den().clone());
    let (n, d) = (theta.num().clone(), theta.den().clone());

    // basis[i] = N^i D^(m-i), the numerator of theta^i after clearing D^m.
    let mut basis: Vec<KPoly> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        basis.push(n.pow(i).mul(&d.pow(m - i)));
    }
    // Columns p_0..p_m, q_0..q_m of S * sum q_i basis_i - T * sum p_i basis_i = 0.
    let cols: Vec<KPoly> = basis
        .iter()
        .map(|e| t.mul(e).neg())
        .chain(basis.iter().map(|e| s.mul(e)))
        .collect();
    let height = cols.iter().map(|p| p.deg() + 1).max().unwrap_or(1);
    let rows: Vec<Vec<NFElem>> =
        (0..height).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    let kernel = nullspace(rows);
    if kernel.len() != 1 {
        return Err(Error::NotFiberCompatible(format!(
            "coefficient system for the induced map has kernel dimension {}",
            kernel.len()
        )));
    }
    let sol = &kernel[0];
    let p = Poly::new(sol[..=m].to_vec());
    let q = Poly::new(sol[m + 1..].to_vec());
    let a = RatFunc::new(p, q)?;
    if a.degree() != m || a.compose(theta) != lhs {
        return Err(Error::NotFiberCompatible(
            "candidate induced map fails the defining identity".into(),
        ));
    }
    Ok(a)
}

fn explicit_point(pc: &PointClass) -> Result<P1<NFElem>, Error> {
    match pc {
        PointClass::Finite(x) => Ok(P1::Finite(x.clone())),
        PointClass::Infinity => Ok(P1::Infinity),
        PointClass::Conjugacy(d) => Err(Error::NeedsExtension(format!(
            "marked point is an irrational conjugacy class with minimal polynomial {d}"
        ))),
    }
}

fn marked_point(o2: &Orbifold, nu: usize) -> Result<P1<NFElem>, Error> {
    for (pc, m) in &o2.points {
        if *m == nu {
            return explicit_point(pc);
        }
    }
    Err(Error::Internal(format!("octahedral orbifold is missing a point of order {nu}")))
}

/// Construct a commuting pair A o V = V o B for a map V whose critical
/// orbifold has the octahedral signature {2, 3, 4}.
///
/// The marked points of V are moved onto the critical values of theta by
/// a Moebius map mu, the normalized map is recognized as a left factor of
/// theta, and both A and B are induced from the shared equivariant F, so
/// deg B = 5 is automatically coprime to deg V | 24.
pub fn construct_pair_s4(v: &KRatFunc) -> Result<SemiconjugacyCertificate, Error> {
    let o2 = orbifold_o2(v)?;
    match signature_class(&o2)? {
        SignatureClass::Octahedral => {}
        SignatureClass::Tetrahedral => {
            return Err(Error::ConstructionNotImplemented(
                "tetrahedral signature {2, 3, 3}: equivariant data over Q(i, sqrt 3) is not shipped"
                    .into(),
            ));
        }
        other => {
            return Err(Error::NotFiberCompatible(format!(
                "octahedral construction requires signature {{2, 3, 4}}, found {other}"
            )));
        }
    }
    if v.degree() == 0 || 24 % v.degree() != 0 {
        return Err(Error::NotALeftFactor);
    }

    let data = s4_data();
    let p3 = marked_point(&o2, 3)?;
    let p2 = marked_point(&o2, 2)?;
    let p4 = marked_point(&o2, 4)?;
    let zero = P1::Finite(NFElem::from_rat(rat_int(0)));
    let minus_one = P1::Finite(NFElem::from_rat(rat_int(-1)));
    let mu = Moebius::through_point_pairs((&p3, &p2, &p4), (&zero, &minus_one, &P1::Infinity))?;
    let v_norm = mu.to_ratfunc().compose(v);

    // theta = v_norm o h exhibits v_norm as a left factor of theta.
    let h = compose_quotient(&v_norm, &data.theta)?;
    let a_norm = solve_a_from_theta(&data.theta, &data.f, 5)?;
    let b = solve_a_from_theta(&h, &data.f, 5)?;
    let a = mu
        .inverse()
        .to_ratfunc()
        .compose(&a_norm)
        .compose(&mu.to_ratfunc());
    let cert = verify_semiconjugacy(&a, v, &b);
    if !cert.identity_checked {
        return Err(Error::Internal("octahedral construction failed verification".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::chi_o2;
    use crate::field::rat;
    use crate::semiconjugacy::flagship_quartic;

    #[test]
    fn data_degrees() {
        let data = s4_data();
        assert_eq!(data.theta.degree(), 24);
        assert_eq!(data.f.degree(), 5);
    }

    #[test]
    fn group_order_and_equivariance() {
        let data = s4_data();
        let group = klein_group_s4();
        assert_eq!(group.len(), 24);
        for sigma in &group {
            let s = sigma.to_ratfunc();
            assert_eq!(data.theta.compose(&s), data.theta, "theta must be invariant");
            assert_eq!(data.f.compose(&s), s.compose(&data.f), "F must be equivariant");
        }
    }

    #[test]
    fn theta_orbifold_is_octahedral() {
        let o2 = orbifold_o2(&s4_data().theta).unwrap();
        assert_eq!(o2.signature(), vec![2, 3, 4]);
        assert_eq!(chi_o2(&s4_data().theta).unwrap(), rat(1, 12));
    }

    #[test]
    fn solve_trivial_power_case() {
        // z^2 o z^3 = A o z^2 with A = z^3.
        let theta = q_map(&[0, 0, 1], &[1]);
        let f = q_map(&[0, 0, 0, 1], &[1]);
        let a = solve_a_from_theta(&theta, &f, 3).unwrap();
        assert_eq!(a, f);
    }

    #[test]
    fn solve_chebyshev_case() {
        // T3 o T2 = T2 o T3.
        let t2 = crate::semiconjugacy::chebyshev_map(2);
        let t3 = crate::semiconjugacy::chebyshev_map(3);
        let a = solve_a_from_theta(&t3, &t2, 2).unwrap();
        assert_eq!(a, t2);
    }

    #[test]
    fn flagship_pair() {
        let v = flagship_quartic();
        let cert = construct_pair_s4(&v).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.b.degree(), 5);
        assert_eq!(cert.a.degree(), 5);
        // Known closed forms for the induced pair, up to nothing: the
        // composition identity pins both maps exactly.
        let a_expected = q_map(
            &[0, 0, -512000, 19200, -240, 1],
            &[1048576, 655360, 153600, 16000, 625],
        );
        let b_expected = q_map(&[0, 0, 40, -20, 10, -3], &[32, 0, 0, -20, 15]);
        assert_eq!(cert.a, a_expected);
        assert_eq!(cert.b, b_expected);
    }

    #[test]
    fn theta_itself_has_a_pair() {
        let cert = construct_pair_s4(&s4_data().theta).unwrap();
        assert!(cert.identity_checked);
        assert_eq!(cert.b.degree(), 5);
    }

    #[test]
    fn wrong_degree_is_rejected() {
        // A degree-7 map cannot be a left factor of the degree-24 theta;
        // generic degree-7 maps are hyperbolic anyway.
        let v = q_map(&[0, 0, 0, 0, 0, 0, 0, 1], &[1]);
        assert!(construct_pair_s4(&v).is_err());
    }
}
