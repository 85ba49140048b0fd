//! Moebius transformations (az+b)/(cz+d) with exact coefficients.
//!
//! The canonical scaling makes the first nonzero entry of (a, b, c, d)
//! equal to one, so equality of transformations is structural.

use std::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::poly::Poly;
use crate::ratfunc::{P1, RatFunc};

#[derive(Debug, Clone, PartialEq)]
pub struct Moebius<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> Moebius<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self, Error> {
        let det = a.mul(&d).sub(&b.mul(&c));
        if det.is_zero() {
            return Err(Error::Validation("degenerate Moebius transformation".into()));
        }
        Ok(Moebius { a, b, c, d }.canonical())
    }

    pub fn identity() -> Self {
        Moebius { a: F::one(), b: F::zero(), c: F::zero(), d: F::one() }
    }

    /// z -> s*z.
    pub fn scaling(s: F) -> Result<Self, Error> {
        Moebius::new(s, F::zero(), F::zero(), F::one())
    }

    /// z -> z + t.
    pub fn translation(t: F) -> Self {
        Moebius { a: F::one(), b: t, c: F::zero(), d: F::one() }
    }

    fn canonical(self) -> Self {
        for lead in [&self.a, &self.b, &self.c, &self.d] {
            if !lead.is_zero() {
                let inv = lead.inv().unwrap();
                return Moebius {
                    a: self.a.mul(&inv),
                    b: self.b.mul(&inv),
                    c: self.c.mul(&inv),
                    d: self.d.mul(&inv),
                };
            }
        }
        unreachable!("zero Moebius matrix")
    }

    pub fn is_identity(&self) -> bool {
        *self == Moebius::identity()
    }

    pub fn inverse(&self) -> Self {
        Moebius {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
        .canonical()
    }

    /// self(other(z)).
    pub fn compose(&self, other: &Self) -> Self {
        Moebius {
            a: self.a.mul(&other.a).add(&self.b.mul(&other.c)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.d)),
            c: self.c.mul(&other.a).add(&self.d.mul(&other.c)),
            d: self.c.mul(&other.b).add(&self.d.mul(&other.d)),
        }
        .canonical()
    }

    pub fn apply(&self, x: &P1<F>) -> P1<F> {
        match x {
            P1::Finite(v) => {
                let den = self.c.mul(v).add(&self.d);
                if den.is_zero() {
                    P1::Infinity
                } else {
                    P1::Finite(self.a.mul(v).add(&self.b).div(&den))
                }
            }
            P1::Infinity => {
                if self.c.is_zero() {
                    P1::Infinity
                } else {
                    P1::Finite(self.a.div(&self.c))
                }
            }
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc<F> {
        RatFunc::new(
            Poly::new(vec![self.b.clone(), self.a.clone()]),
            Poly::new(vec![self.d.clone(), self.c.clone()]),
        )
        .unwrap()
    }

    /// The unique Moebius map sending (p, q, r) to (0, 1, infinity).
    pub fn through_three_points(p: &P1<F>, q: &P1<F>, r: &P1<F>) -> Result<Self, Error> {
        if p == q || q == r || p == r {
            return Err(Error::CoincidentPoints);
        }
        // mu(z) = (z-p)(q-r) / ((z-r)(q-p)), degenerating when one of the
        // anchors is infinity.
        let one = F::one();
        let (a, b, c, d) = match (p, q, r) {
            (P1::Finite(p), P1::Finite(q), P1::Finite(r)) => {
                let qr = q.sub(r);
                let qp = q.sub(p);
                (qr.clone(), p.mul(&qr).neg(), qp.clone(), r.mul(&qp).neg())
            }
            (P1::Infinity, P1::Finite(q), P1::Finite(r)) => {
                // (q - r) / (z - r).
                (F::zero(), q.sub(r), one.clone(), r.neg())
            }
            (P1::Finite(p), P1::Infinity, P1::Finite(r)) => {
                // (z - p) / (z - r).
                (one.clone(), p.neg(), one.clone(), r.neg())
            }
            (P1::Finite(p), P1::Finite(q), P1::Infinity) => {
                // (z - p) / (q - p).
                (one.clone(), p.neg(), F::zero(), q.sub(p))
            }
            _ => return Err(Error::CoincidentPoints),
        };
        Moebius::new(a, b, c, d)
    }

    /// The map sending (p, q, r) to (p2, q2, r2).
    pub fn through_point_pairs(
        from: (&P1<F>, &P1<F>, &P1<F>),
        to: (&P1<F>, &P1<F>, &P1<F>),
    ) -> Result<Self, Error> {
        let m1 = Self::through_three_points(from.0, from.1, from.2)?;
        let m2 = Self::through_three_points(to.0, to.1, to.2)?;
        Ok(m2.inverse().compose(&m1))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Moebius<G> {
        Moebius { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }.canonical()
    }
}

impl<F: Field> fmt::Display for Moebius<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}
