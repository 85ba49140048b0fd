//! Exact coefficient arithmetic: arbitrary-precision rationals and simple
//! number fields Q(alpha) given by a monic irreducible minimal polynomial.
//!
//! Elements of a number field are stored as coordinate vectors in the power
//! basis 1, alpha, ..., alpha^{d-1}.  A degree-1 field encodes Q itself; an
//! element may also be "unattached" (no field handle), in which case it is a
//! plain rational that embeds into any field on demand.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational p/q from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from(BigInt::from(p))
}

fn rzero() -> Rat {
    <Rat as Zero>::zero()
}

fn rone() -> Rat {
    <Rat as One>::one()
}

/// An abstract field of characteristic zero.
///
/// `zero`/`one` produce unattached constants; for number-field elements these
/// coerce to the field of the other operand when combined.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero"))
    }
}

impl Field for Rat {
    fn zero() -> Self {
        rzero()
    }
    fn one() -> Self {
        rone()
    }
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// A simple number field Q[t]/(m(t)) with monic minimal polynomial `m`.
///
/// Coefficients of `m` are stored low-to-high; the leading 1 is included.
/// Irreducibility is the caller's responsibility for `new_unchecked`; the
/// checked constructor lives in `qfactor` to avoid a dependency cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    minpoly: Vec<Rat>,
    label: String,
}

impl NumberField {
    /// Build a field from a monic minimal polynomial (low-to-high, leading 1
    /// included).  Panics if the polynomial is not monic of degree >= 1.
    pub fn new_unchecked(minpoly: Vec<Rat>, label: &str) -> Arc<Self> {
        assert!(minpoly.len() >= 2, "minimal polynomial must have degree >= 1");
        assert!(num_traits::One::is_one(minpoly.last().unwrap()), "minimal polynomial must be monic");
        Arc::new(NumberField { minpoly, label: label.to_string() })
    }

    /// The Gaussian rationals Q(i).
    pub fn gaussian() -> Arc<Self> {
        Self::new_unchecked(vec![rat_int(1), rat_int(0), rat_int(1)], "i")
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rat] {
        &self.minpoly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Reduce a coefficient vector (any length) modulo the minimal polynomial.
    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        let d = self.degree();
        while v.len() > d {
            let top = v.pop().unwrap();
            if !Zero::is_zero(&top) {
                let k = v.len() - d;
                for j in 0..d {
                    let t = &self.minpoly[j] * &top;
                    v[k + j] -= t;
                }
            }
        }
        v.resize(d, rzero());
        v
    }
}

/// An element of a number field (or an unattached rational constant).
#[derive(Debug, Clone)]
pub struct NFElem {
    field: Option<Arc<NumberField>>,
    coords: Vec<Rat>,
}

impl NFElem {
    pub fn from_rat(q: Rat) -> Self {
        NFElem { field: None, coords: vec![q] }
    }

    pub fn from_rat_in(field: &Arc<NumberField>, q: Rat) -> Self {
        let mut coords = vec![rzero(); field.degree()];
        coords[0] = q;
        NFElem { field: Some(field.clone()), coords }
    }

    /// The generator alpha of the field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        let d = field.degree();
        let mut coords = vec![rzero(); d];
        if d == 1 {
            // Q itself: alpha is the root of a linear minpoly t + c.
            coords[0] = -field.minpoly()[0].clone();
        } else {
            coords[1] = rone();
        }
        NFElem { field: Some(field.clone()), coords }
    }

    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate length mismatch");
        NFElem { field: Some(field.clone()), coords }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Power-basis coordinates, padded to the field degree (length 1 for
    /// unattached rationals).
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// The element as a rational, if it lies in Q.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rat().is_some()
    }

    /// Re-attach to `field` (no-op when already there; panics on a genuine
    /// cross-field mix).
    pub fn lift(&self, field: &Arc<NumberField>) -> Self {
        match &self.field {
            None => {
                NFElem::from_rat_in(field, self.coords[0].clone())
            }
            Some(f) => {
                if Arc::ptr_eq(f, field) || f.minpoly() == field.minpoly() {
                    NFElem { field: Some(field.clone()), coords: self.coords.clone() }
                } else if let Some(q) = self.to_rat() {
                    NFElem::from_rat_in(field, q)
                } else {
                    panic!("cannot lift element of Q({}) into Q({})", f.label(), field.label())
                }
            }
        }
    }

    /// The field handle shared by two operands, if any.
    fn unify<'a>(&'a self, other: &'a NFElem) -> Option<&'a Arc<NumberField>> {
        match (&self.field, &other.field) {
            (Some(f), Some(g)) => {
                assert!(
                    Arc::ptr_eq(f, g) || f.minpoly() == g.minpoly(),
                    "mixed number fields: Q({}) vs Q({})",
                    f.label(),
                    g.label()
                );
                Some(f)
            }
            (Some(f), None) => Some(f),
            (None, Some(g)) => Some(g),
            (None, None) => None,
        }
    }

    fn coords_in(&self, d: usize) -> Vec<Rat> {
        let mut v = self.coords.clone();
        v.resize(d.max(v.len()), rzero());
        v
    }
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        let d = self.coords.len().max(other.coords.len());
        self.coords_in(d) == other.coords_in(d)
    }
}

impl Field for NFElem {
    fn zero() -> Self {
        NFElem::from_rat(rzero())
    }
    fn one() -> Self {
        NFElem::from_rat(rone())
    }
    fn from_int(n: i64) -> Self {
        NFElem::from_rat(rat_int(n))
    }

    fn add(&self, other: &Self) -> Self {
        let field = self.unify(other).cloned();
        let d = field.as_ref().map_or(1, |f| f.degree());
        let a = self.coords_in(d);
        let b = other.coords_in(d);
        let coords = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        NFElem { field, coords }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let field = self.unify(other).cloned();
        match &field {
            None => NFElem::from_rat(&self.coords[0] * &other.coords[0]),
            Some(f) => {
                let d = f.degree();
                let a = self.coords_in(d);
                let b = other.coords_in(d);
                let mut prod = vec![rzero(); 2 * d - 1];
                for (i, x) in a.iter().enumerate() {
                    if Zero::is_zero(x) {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !Zero::is_zero(y) {
                            prod[i + j] += x * y;
                        }
                    }
                }
                NFElem { field: Some(f.clone()), coords: f.reduce(prod) }
            }
        }
    }

    fn neg(&self) -> Self {
        NFElem { field: self.field.clone(), coords: self.coords.iter().map(|x| -x).collect() }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.field {
            None => Some(NFElem::from_rat(self.coords[0].recip())),
            Some(f) => {
                if let Some(q) = self.to_rat() {
                    return Some(NFElem::from_rat_in(f, q.recip()));
                }
                // Extended Euclid of the coordinate polynomial with the
                // minimal polynomial over Q.
                let inv = poly_mod_inverse(&self.coords, f.minpoly())?;
                Some(NFElem { field: Some(f.clone()), coords: f.reduce(inv) })
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Inverse of `a` modulo the monic polynomial `m`, both as low-to-high
/// rational coefficient vectors.  Returns `None` when gcd(a, m) != 1.
fn poly_mod_inverse(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    // (r0, s0) and (r1, s1) with s*a = r (mod m).
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rat> = vec![];
    let mut s1: Vec<Rat> = vec![rone()];
    while !r1.is_empty() {
        let (q, r) = raw_divrem(&r0, &r1);
        let s = raw_sub(&s0, &raw_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.iter().map(|x| x * &c).collect())
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
}

fn raw_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![rzero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn raw_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), rzero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn raw_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![rzero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().recip();
    while rem.len() >= b.len() {
        let c = rem.last().unwrap() * &lead;
        let k = rem.len() - b.len();
        quot[k] = c.clone();
        for (j, y) in b.iter().enumerate() {
            let t = y * &c;
            rem[k + j] -= t;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = self.field.as_ref().map_or("a", |fl| fl.label());
        let mut terms: Vec<String> = vec![];
        for (i, c) in self.coords.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let t = match i {
                0 => fmt_rat(c),
                1 if num_traits::One::is_one(c) => label.to_string(),
                1 => format!("{}*{}", fmt_rat(c), label),
                _ if num_traits::One::is_one(c) => format!("{}^{}", label, i),
                _ => format!("{}*{}^{}", fmt_rat(c), label, i),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Total order key for deterministic sorting of field elements.
pub fn nf_sort_key(x: &NFElem) -> Vec<Rat> {
    x.coords.to_vec()
}

/// |x| as a crude magnitude bound (sum of |coords|), for pivot heuristics.
pub fn nf_magnitude(x: &NFElem) -> Rat {
    x.coords.iter().map(|c| c.abs()).sum()
}
