//! Ramification portraits and orbifold structures of rational maps.
//!
//! The portrait of V lists, for each critical value, the multiset of local
//! degrees of V on the fiber above it.  Conjugate algebraic critical values
//! are kept together as one class described by an irreducible rational
//! polynomial, so the whole computation stays inside exact arithmetic over Q
//! (plus the quotient ring Q[t]/(d) for local degrees within a class).

use std::sync::Arc;

use crate::error::Error;
use crate::field::{rat_int, Field, NFElem, NumberField, Rat};
use crate::poly::{lagrange_interpolate, Poly};
use crate::qfactor::{factor_over_q, is_irreducible_over_q, poly_to_rat, roots_in_field};
use crate::ratfunc::P1;
use crate::{KPoly, KRatFunc};

/// A point of the target (or source) sphere, up to conjugacy over Q.
#[derive(Debug, Clone, PartialEq)]
pub enum PointClass {
    /// An explicit value in the working field.
    Finite(NFElem),
    /// A full conjugacy class of algebraic values: the monic irreducible
    /// minimal polynomial over Q, of degree >= 2.
    Conjugacy(Poly<Rat>),
    Infinity,
}

impl PointClass {
    /// How many geometric points the class represents.
    pub fn multiplicity(&self) -> usize {
        match self {
            PointClass::Conjugacy(d) => d.deg(),
            _ => 1,
        }
    }

    fn sort_key(&self) -> (u8, Vec<Rat>) {
        match self {
            PointClass::Finite(c) => (0, crate::field::nf_sort_key(c)),
            PointClass::Conjugacy(d) => (1, d.coeffs().to_vec()),
            PointClass::Infinity => (2, vec![]),
        }
    }
}

impl std::fmt::Display for PointClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointClass::Finite(c) => write!(f, "{}", c),
            PointClass::Conjugacy(d) => write!(f, "class[{}]", d),
            PointClass::Infinity => write!(f, "inf"),
        }
    }
}

/// One critical value class together with the local degrees on its fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalClass {
    pub point: PointClass,
    /// Local degrees above one representative value, sorted descending.
    pub local_degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamificationPortrait {
    pub map_degree: usize,
    pub classes: Vec<CriticalClass>,
}

impl RamificationPortrait {
    /// Riemann-Hurwitz count: sum of (e-1) over all critical points, with
    /// conjugacy classes weighted by their size.  Must equal 2 deg - 2.
    pub fn riemann_hurwitz_defect(&self) -> usize {
        self.classes
            .iter()
            .map(|c| {
                c.point.multiplicity() * c.local_degrees.iter().map(|e| e - 1).sum::<usize>()
            })
            .sum()
    }
}

/// A genus-0 orbifold: marked point classes with indices nu >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbifold {
    pub points: Vec<(PointClass, usize)>,
}

impl Orbifold {
    pub fn trivial() -> Self {
        Orbifold { points: vec![] }
    }

    /// The signature: all nu values, conjugate points contributing one copy
    /// each, sorted ascending.
    pub fn signature(&self) -> Vec<usize> {
        let mut sig = vec![];
        for (pc, nu) in &self.points {
            for _ in 0..pc.multiplicity() {
                sig.push(*nu);
            }
        }
        sig.sort();
        sig
    }

    pub fn nu_at(&self, pc: &PointClass) -> usize {
        self.points.iter().find(|(p, _)| p == pc).map_or(1, |(_, nu)| *nu)
    }
}

/// chi(O) = 2 + sum (1/nu - 1) over marked points of a genus-0 orbifold.
pub fn euler_characteristic(o: &Orbifold) -> Rat {
    let mut chi = rat_int(2);
    for nu in o.signature() {
        chi += Rat::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(nu as i64)) - rat_int(1);
    }
    chi
}

/// The working number field of a rational map, if any coefficient carries one.
pub fn coefficient_field(v: &KRatFunc) -> Option<Arc<NumberField>> {
    v.num()
        .coeffs()
        .iter()
        .chain(v.den().coeffs())
        .find_map(|c| c.field().cloned())
}

/// Multiset of local degrees of `v` on the fiber above a point class,
/// sorted descending.  Non-critical classes give all ones.
pub fn local_degree_multiset(v: &KRatFunc, pc: &PointClass) -> Result<Vec<usize>, Error> {
    if v.degree() == 0 {
        return Err(Error::NoRamification);
    }
    let mut out: Vec<usize> = vec![];
    match pc {
        PointClass::Infinity => {
            for (part, m) in v.den().squarefree_decomposition() {
                for _ in 0..part.deg() {
                    out.push(m);
                }
            }
            let (dn, dd) = (v.num().deg(), v.den().deg());
            if dn > dd {
                out.push(dn - dd);
            }
        }
        PointClass::Finite(c) => {
            let f = v.fiber_poly(c);
            if f.is_zero() {
                return Err(Error::Validation("constant map has no fibers".into()));
            }
            for (part, m) in f.squarefree_decomposition() {
                for _ in 0..part.deg() {
                    out.push(m);
                }
            }
            let drop = v.degree() - f.degree().unwrap_or(0);
            if drop > 0 {
                out.push(drop);
            }
        }
        PointClass::Conjugacy(d) => {
            if !is_irreducible_over_q(d) {
                return Err(Error::Validation("not a conjugacy class: reducible polynomial".into()));
            }
            if poly_to_rat(v.num()).is_none() || poly_to_rat(v.den()).is_none() {
                return Err(Error::Validation(
                    "conjugacy classes are supported for maps with rational coefficients".into(),
                ));
            }
            let field = NumberField::new_unchecked(d.coeffs().to_vec(), "t");
            let tau = NFElem::generator(&field);
            let lifted = v.map(|c| c.lift(&field));
            return local_degree_multiset(&lifted, &PointClass::Finite(tau));
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Numerator of d(V(z)) for a rational polynomial d: the fiber polynomial
/// of the whole conjugacy class of roots of d.
fn class_fiber_poly(p: &Poly<Rat>, q: &Poly<Rat>, d: &Poly<Rat>) -> Poly<Rat> {
    let r = d.deg();
    let mut acc = Poly::zero();
    let mut ppow = Poly::one();
    let mut qpows = vec![Poly::one()];
    for _ in 0..r {
        qpows.push(qpows.last().unwrap().mul(q));
    }
    for k in 0..=r {
        acc = acc.add(&ppow.mul(&qpows[r - k]).scale(&d.coeff(k)));
        ppow = ppow.mul(p);
    }
    acc
}

/// Squarefree polynomial whose roots are the finite critical points of
/// (p/q), excluding poles.
fn critical_point_radical(p: &Poly<Rat>, q: &Poly<Rat>) -> Poly<Rat> {
    let w = p.derivative().mul(q).sub(&p.mul(&q.derivative()));
    if w.is_zero() {
        return Poly::one();
    }
    let mut u = Poly::one();
    for (part, _) in w.squarefree_decomposition() {
        u = u.mul(&part);
    }
    // Poles of the map show up in w; strip them.
    loop {
        let g = u.gcd(q);
        if g.deg() == 0 {
            break;
        }
        u = u.exact_div(&g).unwrap();
    }
    u.monic()
}

/// Res_z(u(z), p(z) - c q(z)) as a polynomial in c, by interpolation at
/// sample values where the z-degree does not drop.
fn critical_value_resultant(u: &Poly<Rat>, p: &Poly<Rat>, q: &Poly<Rat>) -> Poly<Rat> {
    let generic_deg = p.deg().max(q.deg());
    let need = u.deg() + 1;
    let mut pts = Vec::with_capacity(need);
    let mut c = 0i64;
    while pts.len() < need {
        let cv = rat_int(c);
        c += 1;
        let g = p.sub(&q.scale(&cv));
        if g.degree() != Some(generic_deg) {
            continue;
        }
        pts.push((cv.clone(), u.resultant(&g)));
    }
    lagrange_interpolate(&pts)
}

/// Finite value of v at infinity together with the local degree there, if
/// infinity is not a fixed point.
fn value_and_degree_at_infinity(v: &KRatFunc) -> Option<(NFElem, usize)> {
    match v.value_at_infinity() {
        P1::Infinity => None,
        P1::Finite(c) => Some((c, v.local_degree_at_infinity())),
    }
}

/// The squarefree polynomial of finite critical values, plus a flag for
/// ramification above infinity.
pub fn critical_value_polynomial(v: &KRatFunc) -> Result<(KPoly, bool), Error> {
    let pt = portrait(v)?;
    let mut acc: KPoly = Poly::one();
    let mut inf_critical = false;
    for class in &pt.classes {
        match &class.point {
            PointClass::Finite(c) => {
                acc = acc.mul(&Poly::new(vec![c.neg(), <NFElem as Field>::one()]));
            }
            PointClass::Conjugacy(d) => {
                acc = acc.mul(&d.map(|x| NFElem::from_rat(x.clone())));
            }
            PointClass::Infinity => inf_critical = true,
        }
    }
    Ok((acc, inf_critical))
}

/// The full ramification portrait of v (deg >= 2 required).
pub fn portrait(v: &KRatFunc) -> Result<RamificationPortrait, Error> {
    let deg = v.degree();
    if deg < 2 {
        return Err(Error::NoRamification);
    }
    let classes = match (poly_to_rat(v.num()), poly_to_rat(v.den())) {
        (Some(p), Some(q)) => portrait_classes_rational(v, &p, &q)?,
        _ => portrait_classes_explicit(v)?,
    };
    let mut classes: Vec<CriticalClass> =
        classes.into_iter().filter(|c| c.local_degrees.iter().any(|&e| e > 1)).collect();
    classes.sort_by(|a, b| a.point.sort_key().cmp(&b.point.sort_key()));
    let pt = RamificationPortrait { map_degree: deg, classes };
    if pt.riemann_hurwitz_defect() != 2 * deg - 2 {
        return Err(Error::Internal(format!(
            "Riemann-Hurwitz mismatch: defect {} for degree {}",
            pt.riemann_hurwitz_defect(),
            deg
        )));
    }
    Ok(pt)
}

fn portrait_classes_rational(
    v: &KRatFunc,
    p: &Poly<Rat>,
    q: &Poly<Rat>,
) -> Result<Vec<CriticalClass>, Error> {
    let u = critical_point_radical(p, q);
    let mut minpolys: Vec<Poly<Rat>> = vec![];
    if u.deg() >= 1 {
        let r = critical_value_resultant(&u, p, q);
        let (_, factors) = factor_over_q(&r);
        for (d, _) in factors {
            if !minpolys.contains(&d) {
                minpolys.push(d);
            }
        }
    }
    // Infinity as a critical point over a finite value.
    if let Some((c0, e)) = value_and_degree_at_infinity(v) {
        if e >= 2 {
            let c0r = c0.to_rat().expect("rational map has rational value at infinity");
            let lin = Poly::new(vec![-c0r, rat_int(1)]);
            if !minpolys.contains(&lin) {
                minpolys.push(lin);
            }
        }
    }
    let mut classes = vec![];
    for d in minpolys {
        let pc = if d.deg() == 1 {
            PointClass::Finite(NFElem::from_rat(-d.coeff(0)))
        } else {
            PointClass::Conjugacy(d)
        };
        let local = local_degree_multiset(v, &pc)?;
        classes.push(CriticalClass { point: pc, local_degrees: local });
    }
    classes.push(CriticalClass {
        point: PointClass::Infinity,
        local_degrees: local_degree_multiset(v, &PointClass::Infinity)?,
    });
    Ok(classes)
}

fn portrait_classes_explicit(v: &KRatFunc) -> Result<Vec<CriticalClass>, Error> {
    // Coefficients live in a proper number field: we can handle maps whose
    // critical values all lie in that field, and report the obstruction
    // otherwise (factorization over general number fields is out of scope).
    let field = coefficient_field(v).expect("explicit path requires a coefficient field");
    let num = v.num().map(|c| c.lift(&field));
    let den = v.den().map(|c| c.lift(&field));
    let w = num.derivative().mul(&den).sub(&num.mul(&den.derivative()));
    let mut u: KPoly = Poly::one();
    if !w.is_zero() {
        for (part, _) in w.squarefree_decomposition() {
            u = u.mul(&part);
        }
        loop {
            let g = u.gcd(&den);
            if g.deg() == 0 {
                break;
            }
            u = u.exact_div(&g).unwrap();
        }
    }
    let roots = roots_in_field(&u, Some(&field))?;
    if roots.len() < u.deg() {
        return Err(Error::NeedsExtension(format!(
            "critical points outside the coefficient field (splitting {} needs an extension)",
            u
        )));
    }
    let mut values: Vec<NFElem> = vec![];
    for z in &roots {
        if let P1::Finite(c) = v.eval(z) {
            if !values.contains(&c) {
                values.push(c);
            }
        }
    }
    if let Some((c0, e)) = value_and_degree_at_infinity(v) {
        let c0 = c0.lift(&field);
        if e >= 2 && !values.contains(&c0) {
            values.push(c0);
        }
    }
    let mut classes = vec![];
    for c in values {
        let pc = PointClass::Finite(c);
        let local = local_degree_multiset(v, &pc)?;
        classes.push(CriticalClass { point: pc, local_degrees: local });
    }
    classes.push(CriticalClass {
        point: PointClass::Infinity,
        local_degrees: local_degree_multiset(v, &PointClass::Infinity)?,
    });
    Ok(classes)
}

/// The target orbifold O2 of v: nu(c) = lcm of the local degrees above c,
/// kept where nu >= 2.
pub fn orbifold_o2(v: &KRatFunc) -> Result<Orbifold, Error> {
    let pt = portrait(v)?;
    let mut points = vec![];
    for class in pt.classes {
        let nu = class.local_degrees.iter().fold(1usize, |a, &e| num_integer::lcm(a, e));
        if nu >= 2 {
            points.push((class.point, nu));
        }
    }
    Ok(Orbifold { points })
}

/// Decompose the fiber of (p/q) over a point class into source point
/// classes over Q with their local degrees.
fn fiber_classes_rational(
    v: &KRatFunc,
    p: &Poly<Rat>,
    q: &Poly<Rat>,
    pc: &PointClass,
) -> Result<Vec<(PointClass, usize)>, Error> {
    let mut out: Vec<(PointClass, usize)> = vec![];
    let mut push_factors = |g: &Poly<Rat>| {
        let (_, factors) = factor_over_q(g);
        for (m, e) in factors {
            let spc = if m.deg() == 1 {
                PointClass::Finite(NFElem::from_rat(-m.coeff(0)))
            } else {
                PointClass::Conjugacy(m)
            };
            out.push((spc, e));
        }
    };
    match pc {
        PointClass::Infinity => {
            push_factors(q);
            if p.deg() > q.deg() {
                out.push((PointClass::Infinity, p.deg() - q.deg()));
            }
        }
        PointClass::Finite(c) => {
            let cr = c.to_rat().ok_or_else(|| {
                Error::Validation("irrational explicit point over a rational map".into())
            })?;
            let g = p.sub(&q.scale(&cr));
            push_factors(&g);
            let drop = v.degree() - g.degree().unwrap_or(0);
            if drop > 0 {
                out.push((PointClass::Infinity, drop));
            }
        }
        PointClass::Conjugacy(d) => {
            let g = class_fiber_poly(p, q, d);
            push_factors(&g);
            if let Some((c0, e)) = value_and_degree_at_infinity(v) {
                let c0r = c0.to_rat().unwrap();
                if d.eval(&c0r).is_zero() {
                    out.push((PointClass::Infinity, e));
                }
            }
        }
    }
    Ok(out)
}

/// The source orbifold O1 of v: nu1(z) = nu2(v(z)) / deg_z v, kept where
/// the quotient exceeds 1.  `o2` must be orbifold_o2(v).
pub fn orbifold_o1(v: &KRatFunc, o2: &Orbifold) -> Result<Orbifold, Error> {
    let (p, q) = match (poly_to_rat(v.num()), poly_to_rat(v.den())) {
        (Some(p), Some(q)) => (p, q),
        _ => return orbifold_o1_explicit(v, o2),
    };
    let mut points = vec![];
    for (pc, nu2) in &o2.points {
        for (spc, e) in fiber_classes_rational(v, &p, &q, pc)? {
            if nu2 % e != 0 {
                return Err(Error::Internal(format!(
                    "non-integral orbifold quotient {}/{} above {}",
                    nu2, e, pc
                )));
            }
            let nu1 = nu2 / e;
            if nu1 > 1 {
                points.push((spc, nu1));
            }
        }
    }
    points.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    Ok(Orbifold { points })
}

fn orbifold_o1_explicit(v: &KRatFunc, o2: &Orbifold) -> Result<Orbifold, Error> {
    let field = coefficient_field(v).expect("explicit path requires a coefficient field");
    let mut points = vec![];
    for (pc, nu2) in &o2.points {
        let fiber: Vec<(P1<NFElem>, usize)> = match pc {
            PointClass::Conjugacy(_) => {
                return Err(Error::Validation(
                    "conjugacy classes are supported for maps with rational coefficients".into(),
                ))
            }
            PointClass::Infinity => {
                let den = v.den().map(|c| c.lift(&field));
                let mut pts = vec![];
                for (part, m) in den.squarefree_decomposition() {
                    let roots = roots_in_field(&part, Some(&field))?;
                    if roots.len() < part.deg() {
                        return Err(Error::NeedsExtension("pole outside coefficient field".into()));
                    }
                    for r in roots {
                        pts.push((P1::Finite(r), m));
                    }
                }
                if v.num().deg() > v.den().deg() {
                    pts.push((P1::Infinity, v.num().deg() - v.den().deg()));
                }
                pts
            }
            PointClass::Finite(c) => {
                let f = v.map(|x| x.lift(&field)).fiber_poly(&c.lift(&field));
                let mut pts = vec![];
                for (part, m) in f.squarefree_decomposition() {
                    let roots = roots_in_field(&part, Some(&field))?;
                    if roots.len() < part.deg() {
                        return Err(Error::NeedsExtension(
                            "fiber point outside coefficient field".into(),
                        ));
                    }
                    for r in roots {
                        pts.push((P1::Finite(r), m));
                    }
                }
                let drop = v.degree() - f.degree().unwrap_or(0);
                if drop > 0 {
                    pts.push((P1::Infinity, drop));
                }
                pts
            }
        };
        for (z, e) in fiber {
            if nu2 % e != 0 {
                return Err(Error::Internal(format!("non-integral orbifold quotient above {}", pc)));
            }
            let nu1 = nu2 / e;
            if nu1 > 1 {
                let spc = match z {
                    P1::Finite(r) => PointClass::Finite(r),
                    P1::Infinity => PointClass::Infinity,
                };
                points.push((spc, nu1));
            }
        }
    }
    points.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    Ok(Orbifold { points })
}

/// Does f define an orbifold covering O1 -> O2, i.e. nu2(f(z)) =
/// nu1(z) * deg_z f at every point?
pub fn is_covering_map(f: &KRatFunc, o1: &Orbifold, o2: &Orbifold) -> Result<bool, Error> {
    let (p, q) = match (poly_to_rat(f.num()), poly_to_rat(f.den())) {
        (Some(p), Some(q)) => (p, q),
        _ => {
            return Err(Error::Validation(
                "covering check is supported for maps with rational coefficients".into(),
            ))
        }
    };
    let mut covered: Vec<PointClass> = vec![];
    for (pc, nu2) in &o2.points {
        for (spc, e) in fiber_classes_rational(f, &p, &q, pc)? {
            let nu1 = o1.nu_at(&spc);
            if nu1 * e != *nu2 {
                return Ok(false);
            }
            covered.push(spc);
        }
    }
    // Source markings must all sit above target markings.
    for (pc, _) in &o1.points {
        if !covered.contains(pc) {
            return Ok(false);
        }
    }
    // Critical values of f must be marked in O2.
    if f.degree() >= 2 {
        for class in portrait(f)?.classes {
            if o2.nu_at(&class.point) == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::qfactor::poly_from_rat;
    use crate::ratfunc::RatFunc;

    fn q_ratfunc(num: &[i64], den: &[i64]) -> KRatFunc {
        RatFunc::new(
            poly_from_rat(&Poly::from_ints(num)),
            poly_from_rat(&Poly::from_ints(den)),
        )
        .unwrap()
    }

    fn vv() -> KRatFunc {
        // 3z^4 - 4z^3.
        q_ratfunc(&[0, 0, 0, -4, 3], &[1])
    }

    #[test]
    fn portrait_of_z_squared() {
        let v = q_ratfunc(&[0, 0, 1], &[1]);
        let pt = portrait(&v).unwrap();
        assert_eq!(pt.map_degree, 2);
        assert_eq!(pt.classes.len(), 2);
        assert_eq!(pt.classes[0].point, PointClass::Finite(NFElem::from_rat(rat_int(0))));
        assert_eq!(pt.classes[0].local_degrees, vec![2]);
        assert_eq!(pt.classes[1].point, PointClass::Infinity);
        assert_eq!(pt.classes[1].local_degrees, vec![2]);
    }

    #[test]
    fn portrait_of_flagship_quartic() {
        let pt = portrait(&vv()).unwrap();
        let by_point: Vec<(String, Vec<usize>)> = pt
            .classes
            .iter()
            .map(|c| (format!("{}", c.point), c.local_degrees.clone()))
            .collect();
        assert_eq!(
            by_point,
            vec![
                ("-1".to_string(), vec![2, 1, 1]),
                ("0".to_string(), vec![3, 1]),
                ("inf".to_string(), vec![4]),
            ]
        );
    }

    #[test]
    fn critical_values_of_chebyshev_t3() {
        // T3 = 4z^3 - 3z ramifies over -1, 1, infinity.
        let v = q_ratfunc(&[0, -3, 0, 4], &[1]);
        let (cv, inf) = critical_value_polynomial(&v).unwrap();
        assert!(inf);
        let cvr = poly_to_rat(&cv).unwrap();
        assert_eq!(cvr, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn local_degrees_of_flagship() {
        let v = vv();
        let zero = PointClass::Finite(NFElem::from_rat(rat_int(0)));
        let minus_one = PointClass::Finite(NFElem::from_rat(rat_int(-1)));
        assert_eq!(local_degree_multiset(&v, &zero).unwrap(), vec![3, 1]);
        assert_eq!(local_degree_multiset(&v, &minus_one).unwrap(), vec![2, 1, 1]);
        assert_eq!(local_degree_multiset(&v, &PointClass::Infinity).unwrap(), vec![4]);
        // Non-critical value: all ones.
        let five = PointClass::Finite(NFElem::from_rat(rat_int(5)));
        assert_eq!(local_degree_multiset(&v, &five).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn conjugacy_class_local_degrees() {
        // z^3 - 3z has critical points +-1 with values -+2; but pick a map
        // with an irrational critical value pair: V = z^3 - 3z, values +-2
        // are rational, so use V = z^3 - z instead whose critical values
        // +-2/(3 sqrt 3) have minpoly 27c^2 - 4.
        let v = q_ratfunc(&[0, -1, 0, 1], &[1]);
        let pt = portrait(&v).unwrap();
        assert_eq!(pt.classes.len(), 2);
        match &pt.classes[0].point {
            PointClass::Conjugacy(d) => {
                assert_eq!(d, &Poly::new(vec![rat(-4, 27), rat_int(0), rat_int(1)]));
            }
            other => panic!("expected conjugacy class, got {}", other),
        }
        assert_eq!(pt.classes[0].local_degrees, vec![2, 1]);
        assert_eq!(pt.classes[1].point, PointClass::Infinity);
    }

    #[test]
    fn orbifold_o2_signatures() {
        let o = orbifold_o2(&vv()).unwrap();
        assert_eq!(o.signature(), vec![2, 3, 4]);
        assert_eq!(euler_characteristic(&o), rat(1, 12));

        let zn = q_ratfunc(&[0, 0, 0, 0, 0, 1], &[1]);
        let o = orbifold_o2(&zn).unwrap();
        assert_eq!(o.signature(), vec![5, 5]);
        assert_eq!(euler_characteristic(&o), rat(0, 1) + rat(2, 5) - rat(2, 1) + rat(2, 1));
    }

    #[test]
    fn euler_characteristic_cases() {
        assert_eq!(euler_characteristic(&Orbifold::trivial()), rat_int(2));
        let o = Orbifold {
            points: vec![
                (PointClass::Finite(NFElem::from_rat(rat_int(0))), 2),
                (PointClass::Finite(NFElem::from_rat(rat_int(1))), 2),
                (PointClass::Finite(NFElem::from_rat(rat_int(2))), 2),
                (PointClass::Infinity, 2),
            ],
        };
        assert_eq!(euler_characteristic(&o), rat_int(0));
    }

    #[test]
    fn orbifold_o1_of_flagship() {
        let v = vv();
        let o2 = orbifold_o2(&v).unwrap();
        let o1 = orbifold_o1(&v, &o2).unwrap();
        // Above -1 the simple roots of 3z^2+2z+1 get nu1=2; above 0 the
        // simple root 4/3 gets nu1=3; nothing above infinity.
        assert_eq!(o1.signature(), vec![2, 2, 3]);
        assert!(is_covering_map(&v, &o1, &o2).unwrap());
    }

    #[test]
    fn orbifold_o1_trivial_for_power_and_t2() {
        let zn = q_ratfunc(&[0, 0, 0, 1], &[1]);
        let o2 = orbifold_o2(&zn).unwrap();
        assert_eq!(orbifold_o1(&zn, &o2).unwrap(), Orbifold::trivial());

        let t2 = q_ratfunc(&[-1, 0, 2], &[1]);
        let o2 = orbifold_o2(&t2).unwrap();
        assert_eq!(o2.signature(), vec![2, 2]);
        assert_eq!(orbifold_o1(&t2, &o2).unwrap(), Orbifold::trivial());
    }

    #[test]
    fn covering_checks() {
        let sq = q_ratfunc(&[0, 0, 1], &[1]);
        let marked = Orbifold {
            points: vec![
                (PointClass::Finite(NFElem::from_rat(rat_int(0))), 2),
                (PointClass::Infinity, 2),
            ],
        };
        assert!(is_covering_map(&sq, &Orbifold::trivial(), &marked).unwrap());
        // Identity with mismatched orbifolds is not a covering.
        let id = q_ratfunc(&[0, 1], &[1]);
        assert!(!is_covering_map(&id, &Orbifold::trivial(), &marked).unwrap());
    }

    #[test]
    fn degree_one_rejected() {
        let id = q_ratfunc(&[0, 1], &[1]);
        assert!(matches!(portrait(&id), Err(Error::NoRamification)));
    }
}
