//! Signature classification of orbifolds, the genus bucket of the normalized
//! covering, and the headline fiber-value decisions (including the elliptic
//! curve specializations).

use crate::error::Error;
use crate::field::{rat_int, Field, NFElem, Rat};
use crate::poly::Poly;
use crate::qfactor::factor_over_q;
use crate::ramification::{
    euler_characteristic, orbifold_o2, Orbifold, PointClass,
};
use crate::ratfunc::RatFunc;
use crate::KRatFunc;

/// The possible signatures of orbifolds admitting a universal covering of
/// genus 0 or 1, plus the hyperbolic catch-all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureClass {
    Unramified,
    /// {n, n}: covered by z^n.
    NN(usize),
    /// {2, 2, n}: dihedral, covered through Chebyshev / Zhukovski maps.
    TwoTwoN(usize),
    /// {2, 3, 3}.
    Tetrahedral,
    /// {2, 3, 4}.
    Octahedral,
    /// {2, 3, 5}.
    Icosahedral,
    /// {2, 2, 2, 2}.
    Euclid2222,
    /// {3, 3, 3}.
    Euclid333,
    /// {2, 4, 4}.
    Euclid244,
    /// {2, 3, 6}.
    Euclid236,
    Hyperbolic,
}

impl SignatureClass {
    pub fn is_spherical(&self) -> bool {
        matches!(
            self,
            SignatureClass::Unramified
                | SignatureClass::NN(_)
                | SignatureClass::TwoTwoN(_)
                | SignatureClass::Tetrahedral
                | SignatureClass::Octahedral
                | SignatureClass::Icosahedral
        )
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(
            self,
            SignatureClass::Euclid2222
                | SignatureClass::Euclid333
                | SignatureClass::Euclid244
                | SignatureClass::Euclid236
        )
    }
}

impl std::fmt::Display for SignatureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SignatureClass::Unramified => write!(f, "unramified"),
            SignatureClass::NN(n) => write!(f, "{{{}, {}}}", n, n),
            SignatureClass::TwoTwoN(n) => write!(f, "{{2, 2, {}}}", n),
            SignatureClass::Tetrahedral => write!(f, "tetrahedral {{2, 3, 3}}"),
            SignatureClass::Octahedral => write!(f, "octahedral {{2, 3, 4}}"),
            SignatureClass::Icosahedral => write!(f, "icosahedral {{2, 3, 5}}"),
            SignatureClass::Euclid2222 => write!(f, "euclidean {{2, 2, 2, 2}}"),
            SignatureClass::Euclid333 => write!(f, "euclidean {{3, 3, 3}}"),
            SignatureClass::Euclid244 => write!(f, "euclidean {{2, 4, 4}}"),
            SignatureClass::Euclid236 => write!(f, "euclidean {{2, 3, 6}}"),
            SignatureClass::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

/// Exact membership of a signature in the spherical/euclidean lists.
pub fn signature_class(o: &Orbifold) -> Result<SignatureClass, Error> {
    let sig = o.signature();
    match sig.as_slice() {
        [] => Ok(SignatureClass::Unramified),
        [n] => Err(Error::NoUniversalCovering(format!("signature {{{}}}", n))),
        [m, n] if m != n => {
            Err(Error::NoUniversalCovering(format!("signature {{{}, {}}}", m, n)))
        }
        [n, _] => Ok(SignatureClass::NN(*n)),
        [2, 2, 2, 2] => Ok(SignatureClass::Euclid2222),
        [2, 2, n] => Ok(SignatureClass::TwoTwoN(*n)),
        [2, 3, 3] => Ok(SignatureClass::Tetrahedral),
        [2, 3, 4] => Ok(SignatureClass::Octahedral),
        [2, 3, 5] => Ok(SignatureClass::Icosahedral),
        [3, 3, 3] => Ok(SignatureClass::Euclid333),
        [2, 4, 4] => Ok(SignatureClass::Euclid244),
        [2, 3, 6] => Ok(SignatureClass::Euclid236),
        _ => Ok(SignatureClass::Hyperbolic),
    }
}

/// Genus of the normalized covering, bucketed: 0, 1, or at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusBucket {
    Zero,
    One,
    AtLeastTwo,
}

impl std::fmt::Display for GenusBucket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenusBucket::Zero => write!(f, "0"),
            GenusBucket::One => write!(f, "1"),
            GenusBucket::AtLeastTwo => write!(f, ">=2"),
        }
    }
}

/// The genus bucket read off the sign of chi(O2).
pub fn genus_bucket(v: &KRatFunc) -> Result<GenusBucket, Error> {
    let chi = euler_characteristic(&orbifold_o2(v)?);
    let zero = rat_int(0);
    Ok(if chi > zero {
        GenusBucket::Zero
    } else if chi == zero {
        GenusBucket::One
    } else {
        GenusBucket::AtLeastTwo
    })
}

/// Does v take values with full fibers in some fixed number field at
/// infinitely many points?  Equivalent to chi(O2) >= 0.
pub fn has_infinitely_many_fiber_values(v: &KRatFunc) -> Result<bool, Error> {
    Ok(genus_bucket(v)? != GenusBucket::AtLeastTwo)
}

/// A nonsingular short Weierstrass curve y^2 = x^3 + ax + b.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticCurve {
    pub a: NFElem,
    pub b: NFElem,
}

impl EllipticCurve {
    pub fn new(a: NFElem, b: NFElem) -> Result<Self, Error> {
        let four = NFElem::from_rat(rat_int(4));
        let twenty_seven = NFElem::from_rat(rat_int(27));
        let disc = four.mul(&a.mul(&a).mul(&a)).add(&twenty_seven.mul(&b.mul(&b)));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(EllipticCurve { a, b })
    }

    pub fn from_rats(a: Rat, b: Rat) -> Result<Self, Error> {
        Self::new(NFElem::from_rat(a), NFElem::from_rat(b))
    }
}

/// Decide whether the degree-3 y-coordinate map of E has infinitely many
/// full fibers in a number field, with the target orbifold as witness.
///
/// A value y0 is critical exactly when x^3 + ax + (b - y0^2) has a repeated
/// root, i.e. when 4a^3 + 27(y0^2 - b)^2 vanishes; infinity is totally
/// ramified of degree 3.
pub fn elliptic_y_fiber_decision(e: &EllipticCurve) -> Result<(bool, Orbifold), Error> {
    let (a, b) = (&e.a, &e.b);
    let (ar, br) = match (a.to_rat(), b.to_rat()) {
        (Some(ar), Some(br)) => (ar, br),
        _ => {
            return Err(Error::Validation(
                "elliptic decisions are implemented for rational coefficients".into(),
            ))
        }
    };
    // D(y) = 4a^3 + 27 (y^2 - b)^2.
    let ysq_minus_b = Poly::new(vec![-br.clone(), rat_int(0), rat_int(1)]);
    let disc = Poly::constant(rat_int(4) * &ar * &ar * &ar)
        .add(&ysq_minus_b.mul(&ysq_minus_b).scale(&rat_int(27)));
    let mut points = vec![];
    let (_, factors) = factor_over_q(&disc);
    for (d, _) in factors {
        let pc = if d.deg() == 1 {
            PointClass::Finite(NFElem::from_rat(-d.coeff(0)))
        } else {
            PointClass::Conjugacy(d)
        };
        // Local degrees of the y-map above this critical value: root
        // multiplicities of the cubic in x at y = y0.
        let local = y_map_local_degrees(&ar, &br, &pc)?;
        let nu = local.iter().fold(1usize, |acc, &m| num_integer::lcm(acc, m));
        if nu >= 2 {
            points.push((pc, nu));
        }
    }
    points.push((PointClass::Infinity, 3));
    points.sort_by(|x, y| format!("{:?}", x.0).cmp(&format!("{:?}", y.0)));
    let witness = Orbifold { points };
    let decision = euler_characteristic(&witness) >= rat_int(0);
    Ok((decision, witness))
}

/// Root multiplicities of x^3 + ax + (b - y0^2) for y0 in the given class.
fn y_map_local_degrees(a: &Rat, b: &Rat, pc: &PointClass) -> Result<Vec<usize>, Error> {
    // Evaluate through the generic fiber machinery: treat the cubic as the
    // fiber polynomial of the composite map y -> cubic coefficients.  The
    // multiset is obtained from the squarefree decomposition over the class
    // field.
    let cubic_at = |y0: &NFElem| -> Poly<NFElem> {
        let c0 = NFElem::from_rat(b.clone()).sub(&y0.mul(y0));
        Poly::new(vec![
            c0,
            NFElem::from_rat(a.clone()),
            <NFElem as Field>::zero(),
            <NFElem as Field>::one(),
        ])
    };
    let y0 = match pc {
        PointClass::Finite(c) => c.clone(),
        PointClass::Conjugacy(d) => {
            let field = crate::field::NumberField::new_unchecked(d.coeffs().to_vec(), "y");
            NFElem::generator(&field)
        }
        PointClass::Infinity => return Ok(vec![3]),
    };
    let mut out = vec![];
    for (part, m) in cubic_at(&y0).squarefree_decomposition() {
        for _ in 0..part.deg() {
            out.push(m);
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    Ok(out)
}

/// The x-coordinate map of a nonsingular curve always has infinitely many
/// full fibers in a quadratic extension: the degree-2 covering is Galois.
pub fn elliptic_x_fiber_decision(e: &EllipticCurve) -> Result<bool, Error> {
    let _ = e;
    Ok(true)
}

/// Convenience: chi of O2 for maps with rational display in reports.
pub fn chi_o2(v: &KRatFunc) -> Result<Rat, Error> {
    Ok(euler_characteristic(&orbifold_o2(v)?))
}

/// Build a rational map over the working field from rational coefficient
/// lists, low to high.
pub fn ratfunc_from_q(num: &Poly<Rat>, den: &Poly<Rat>) -> Result<KRatFunc, Error> {
    RatFunc::new(
        num.map(|c| NFElem::from_rat(c.clone())),
        den.map(|c| NFElem::from_rat(c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::qfactor::poly_from_rat;

    fn q_ratfunc(num: &[i64], den: &[i64]) -> KRatFunc {
        RatFunc::new(
            poly_from_rat(&Poly::from_ints(num)),
            poly_from_rat(&Poly::from_ints(den)),
        )
        .unwrap()
    }

    fn sig(points: &[usize]) -> Orbifold {
        Orbifold {
            points: points
                .iter()
                .enumerate()
                .map(|(i, &nu)| (PointClass::Finite(NFElem::from_rat(rat_int(i as i64))), nu))
                .collect(),
        }
    }

    #[test]
    fn signature_classes() {
        assert_eq!(signature_class(&sig(&[])).unwrap(), SignatureClass::Unramified);
        assert_eq!(signature_class(&sig(&[3, 3])).unwrap(), SignatureClass::NN(3));
        assert_eq!(signature_class(&sig(&[2, 2, 7])).unwrap(), SignatureClass::TwoTwoN(7));
        assert_eq!(signature_class(&sig(&[3, 2, 4])).unwrap(), SignatureClass::Octahedral);
        assert_eq!(signature_class(&sig(&[2, 3, 3])).unwrap(), SignatureClass::Tetrahedral);
        assert_eq!(signature_class(&sig(&[2, 3, 5])).unwrap(), SignatureClass::Icosahedral);
        assert_eq!(signature_class(&sig(&[2, 2, 2, 2])).unwrap(), SignatureClass::Euclid2222);
        assert_eq!(signature_class(&sig(&[3, 3, 3])).unwrap(), SignatureClass::Euclid333);
        assert_eq!(signature_class(&sig(&[4, 2, 4])).unwrap(), SignatureClass::Euclid244);
        assert_eq!(signature_class(&sig(&[2, 3, 6])).unwrap(), SignatureClass::Euclid236);
        assert_eq!(signature_class(&sig(&[2, 3, 7])).unwrap(), SignatureClass::Hyperbolic);
        assert!(matches!(signature_class(&sig(&[4])), Err(Error::NoUniversalCovering(_))));
        assert!(matches!(signature_class(&sig(&[2, 3])), Err(Error::NoUniversalCovering(_))));
    }

    #[test]
    fn class_agrees_with_chi_sign_exhaustively() {
        // All signatures with at most 5 points and nu <= 8.
        fn gen(cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
            if cur.len() <= 5 {
                out.push(cur.clone());
            }
            if cur.len() == 5 {
                return;
            }
            for nu in start..=8 {
                cur.push(nu);
                gen(cur, nu, out);
                cur.pop();
            }
        }
        let mut sigs = vec![];
        gen(&mut Vec::new(), 2, &mut sigs);
        for s in sigs {
            let o = sig(&s);
            let chi = euler_characteristic(&o);
            match signature_class(&o) {
                Ok(c) => {
                    assert_eq!(c.is_spherical(), chi > rat_int(0), "sig {:?}", s);
                    assert_eq!(c.is_euclidean(), chi == rat_int(0), "sig {:?}", s);
                }
                Err(_) => assert!(s.len() <= 2, "unexpected covering failure for {:?}", s),
            }
        }
    }

    #[test]
    fn flagship_is_spherical_genus_zero() {
        let v = q_ratfunc(&[0, 0, 0, -4, 3], &[1]);
        assert_eq!(genus_bucket(&v).unwrap(), GenusBucket::Zero);
        assert!(has_infinitely_many_fiber_values(&v).unwrap());
        assert_eq!(chi_o2(&v).unwrap(), rat(1, 12));
    }

    #[test]
    fn generic_quartic_is_hyperbolic() {
        // z^4 + z has five distinct finite critical values plus infinity.
        let v = q_ratfunc(&[0, 1, 0, 0, 1], &[1]);
        assert_eq!(genus_bucket(&v).unwrap(), GenusBucket::AtLeastTwo);
        assert!(!has_infinitely_many_fiber_values(&v).unwrap());
    }

    #[test]
    fn elliptic_y_decision_matches_closed_form() {
        let (yes, witness) = elliptic_y_fiber_decision(
            &EllipticCurve::from_rats(rat_int(0), rat_int(1)).unwrap(),
        )
        .unwrap();
        assert!(yes);
        assert_eq!(witness.signature(), vec![3, 3, 3]);

        let (no, witness) = elliptic_y_fiber_decision(
            &EllipticCurve::from_rats(rat_int(1), rat_int(1)).unwrap(),
        )
        .unwrap();
        assert!(!no);
        assert!(euler_characteristic(&witness) < rat_int(0));

        assert!(matches!(
            EllipticCurve::from_rats(rat_int(0), rat_int(0)),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn elliptic_x_decision_always_true() {
        let e = EllipticCurve::from_rats(rat_int(1), rat_int(1)).unwrap();
        assert!(elliptic_x_fiber_decision(&e).unwrap());
        let e = EllipticCurve::from_rats(rat_int(0), rat_int(1)).unwrap();
        assert!(elliptic_x_fiber_decision(&e).unwrap());
    }
}
