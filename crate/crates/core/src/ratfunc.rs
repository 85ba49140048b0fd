//! Normalized rational functions over an abstract field, and points of the
//! projective line.
//!
//! The canonical form has coprime numerator/denominator and a monic
//! denominator, so equality of functions is structural equality.

use std::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::poly::Poly;

/// A point of P^1 over F.
#[derive(Debug, Clone, PartialEq)]
pub enum P1<F: Field> {
    Finite(F),
    Infinity,
}

impl<F: Field> P1<F> {
    pub fn finite(&self) -> Option<&F> {
        match self {
            P1::Finite(x) => Some(x),
            P1::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1::Infinity)
    }
}

impl<F: Field> fmt::Display for P1<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Finite(x) => write!(f, "{}", x),
            P1::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Canonical representative with coprime parts and monic denominator.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::NotAFunction);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc_inv = den.leading().inv().unwrap();
        Ok(RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The identity map z.
    pub fn identity() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_identity(&self) -> bool {
        self.den.is_constant() && self.num == Poly::x()
    }

    /// max(deg num, deg den); 0 for constants.
    pub fn degree(&self) -> usize {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.deg();
        dn.max(dd)
    }

    pub fn eval(&self, x: &F) -> P1<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            // Coprimality: numerator cannot vanish there too.
            P1::Infinity
        } else {
            P1::Finite(self.num.eval(x).div(&d))
        }
    }

    /// Value at a projective point.
    pub fn eval_p1(&self, x: &P1<F>) -> P1<F> {
        match x {
            P1::Finite(v) => self.eval(v),
            P1::Infinity => self.value_at_infinity(),
        }
    }

    pub fn value_at_infinity(&self) -> P1<F> {
        let dn = self.num.degree();
        let dd = self.den.deg();
        match dn {
            None => P1::Finite(F::zero()),
            Some(dn) if dn > dd => P1::Infinity,
            Some(dn) if dn < dd => P1::Finite(F::zero()),
            Some(_) => P1::Finite(self.num.leading().div(&self.den.leading())),
        }
    }

    /// Local degree of the map at infinity.
    pub fn local_degree_at_infinity(&self) -> usize {
        match self.value_at_infinity() {
            P1::Infinity => self.num.deg() - self.den.deg(),
            P1::Finite(c) => {
                // Order of vanishing of f(1/z) - c at z = 0.
                let shifted = self.num.sub(&self.den.scale(&c));
                self.degree() - shifted.degree().unwrap_or(0)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn recip(&self) -> Result<Self, Error> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Exact composition self(other(z)).
    pub fn compose(&self, inner: &Self) -> Self {
        // p(g/h) = sum p_i g^i h^(n-i) / h^n, similarly for the denominator,
        // then cross-multiply by the missing h powers.
        let n = self.num.degree().unwrap_or(0).max(self.den.deg());
        let top = homogeneous_eval(&self.num, &inner.num, &inner.den, n);
        let bot = homogeneous_eval(&self.den, &inner.num, &inner.den, n);
        RatFunc::new(top, bot).expect("composition denominator vanished identically")
    }

    pub fn derivative(&self) -> Self {
        let num = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(num, self.den.mul(&self.den)).unwrap()
    }

    pub fn pow(&self, e: usize) -> Self {
        RatFunc::new(self.num.pow(e), self.den.pow(e)).unwrap()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::new(self.num.map(&f), self.den.map(&f)).unwrap()
    }

    /// Numerator of self - c, i.e. the fiber polynomial over the finite
    /// value c.
    pub fn fiber_poly(&self, c: &F) -> Poly<F> {
        self.num.sub(&self.den.scale(c))
    }
}

/// sum_i p_i a^i b^(n-i) for p of formal degree n.
fn homogeneous_eval<F: Field>(p: &Poly<F>, a: &Poly<F>, b: &Poly<F>, n: usize) -> Poly<F> {
    let mut acc = Poly::zero();
    let mut b_pow = Poly::one();
    let mut a_pows = Vec::with_capacity(n + 1);
    let mut ap = Poly::one();
    for _ in 0..=n {
        a_pows.push(ap.clone());
        ap = ap.mul(a);
    }
    for i in (0..=n).rev() {
        let c = p.coeff(i);
        if !c.is_zero() {
            acc = acc.add(&a_pows[i].scale(&c).mul(&b_pow));
        }
        b_pow = b_pow.mul(b);
    }
    acc
}

/// Field structure on rational functions (the function field F(z)); used for
/// symbolic coefficients and function-field gcds.
impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn from_int(n: i64) -> Self {
        RatFunc::constant(F::from_int(n))
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.recip().unwrap())
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
