//! High-precision numerics: fixed-point big floats, complex arithmetic, a
//! Durand-Kerner polynomial root finder, and rational reconstruction.
//!
//! The numeric layer is untrusted scaffolding: every exact result recovered
//! through it is verified by exact arithmetic before use.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{NFElem, Rat};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Fixed-point real number: value = mant * 2^-prec.
#[derive(Debug, Clone, PartialEq)]
pub struct Fx {
    pub mant: BigInt,
    pub prec: u32,
}

impl Fx {
    pub fn zero(prec: u32) -> Self {
        Fx { mant: BigInt::zero(), prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Fx { mant: BigInt::from(n) << prec, prec }
    }

    pub fn from_rat(q: &Rat, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        Fx { mant: div_round(&scaled, q.denom()), prec }
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mant.clone(), BigInt::one() << self.prec)
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx { mant: &self.mant + &o.mant, prec: self.prec }
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx { mant: &self.mant - &o.mant, prec: self.prec }
    }

    pub fn neg(&self) -> Fx {
        Fx { mant: -&self.mant, prec: self.prec }
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        Fx { mant: shift_round(&(&self.mant * &o.mant), self.prec), prec: self.prec }
    }

    pub fn div(&self, o: &Fx) -> Fx {
        assert!(!o.mant.is_zero(), "fixed-point division by zero");
        Fx { mant: div_round(&(&self.mant << self.prec), &o.mant), prec: self.prec }
    }

    pub fn abs(&self) -> Fx {
        Fx { mant: self.mant.abs(), prec: self.prec }
    }

    /// Nonnegative square root.
    pub fn sqrt(&self) -> Fx {
        assert!(!self.mant.is_negative(), "sqrt of negative");
        Fx { mant: (&self.mant << self.prec).sqrt(), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// log2 of |self|, rounded up; i64::MIN for zero.
    pub fn log2_abs(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 - self.prec as i64
        }
    }

    pub fn cmp_abs(&self, o: &Fx) -> std::cmp::Ordering {
        self.mant.abs().cmp(&o.mant.abs())
    }
}

impl std::fmt::Display for Fx {
    /// Approximate decimal rendering for reports; the exact value is
    /// `mant / 2^prec`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::ToPrimitive;
        let shift = self.mant.bits().saturating_sub(64);
        let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        let approx = top * (shift as f64 - self.prec as f64).exp2();
        write!(f, "{approx:.8}")
    }
}

fn shift_round(x: &BigInt, k: u32) -> BigInt {
    // Round-to-nearest on a right shift.
    let half = BigInt::one() << (k - 1);
    if x.is_negative() {
        -((-x + half) >> k)
    } else {
        (x + half) >> k
    }
}

fn div_round(x: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = x.div_rem(d);
    let two_r = r.abs() << 1;
    if two_r >= d.abs() {
        if (x.is_negative()) == (d.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl std::fmt::Display for Cx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// Fixed-point complex number.
#[derive(Debug, Clone, PartialEq)]
pub struct Cx {
    pub re: Fx,
    pub im: Fx,
}

impl Cx {
    pub fn zero(prec: u32) -> Self {
        Cx { re: Fx::zero(prec), im: Fx::zero(prec) }
    }

    pub fn from_rat(q: &Rat, prec: u32) -> Self {
        Cx { re: Fx::from_rat(q, prec), im: Fx::zero(prec) }
    }

    pub fn from_rat_pair(re: &Rat, im: &Rat, prec: u32) -> Self {
        Cx { re: Fx::from_rat(re, prec), im: Fx::from_rat(im, prec) }
    }

    pub fn from_ints(re: i64, im: i64, prec: u32) -> Self {
        Cx { re: Fx::from_int(re, prec), im: Fx::from_int(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Cx {
        Cx { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        assert!(!n.is_zero(), "complex division by zero");
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&n);
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&n);
        Cx { re, im }
    }

    pub fn norm_sq(&self) -> Fx {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Fx {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, o: &Cx) -> Fx {
        self.sub(o).abs()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Horner evaluation of a complex-coefficient polynomial.
pub fn eval_cx_poly(coeffs: &[Cx], z: &Cx) -> Cx {
    let prec = z.prec();
    let mut acc = Cx::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// A complex embedding of a number field: the generator mapped to a chosen
/// root of the minimal polynomial.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub alpha: Cx,
}

impl Embedding {
    /// Rational embedding (no proper field); alpha unused.
    pub fn rational(prec: u32) -> Self {
        Embedding { alpha: Cx::zero(prec) }
    }

    pub fn apply(&self, x: &NFElem) -> Cx {
        let prec = self.alpha.prec();
        let mut acc = Cx::zero(prec);
        for c in x.coords().iter().rev() {
            acc = acc.mul(&self.alpha).add(&Cx::from_rat(c, prec));
        }
        acc
    }

    pub fn eval_poly(&self, p: &Poly<NFElem>, z: &Cx) -> Cx {
        let prec = z.prec();
        let mut acc = Cx::zero(prec);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(z).add(&self.apply(c));
        }
        acc
    }

    /// `None` at a pole (denominator tiny).
    pub fn eval_ratfunc(&self, f: &RatFunc<NFElem>, z: &Cx) -> Option<Cx> {
        let den = self.eval_poly(f.den(), z);
        if den.abs().log2_abs() < -((z.prec() / 2) as i64) {
            return None;
        }
        Some(self.eval_poly(f.num(), z).div(&den))
    }
}

/// All complex embeddings of the field of `minpoly` (its numeric roots).
pub fn field_embeddings(minpoly: &[Rat], prec: u32) -> Vec<Embedding> {
    let coeffs: Vec<Cx> = minpoly.iter().map(|c| Cx::from_rat(c, prec)).collect();
    roots_complex(&coeffs, prec).into_iter().map(|alpha| Embedding { alpha }).collect()
}

/// Durand-Kerner simultaneous iteration on a complex-coefficient polynomial
/// (low-to-high coefficients).  Handles multiple roots by brute iteration
/// count; accuracy near a root of multiplicity m is about prec/m bits.
pub fn roots_complex(coeffs: &[Cx], prec: u32) -> Vec<Cx> {
    let mut cs = coeffs.to_vec();
    while cs.last().map_or(false, |c| c.is_zero()) {
        cs.pop();
    }
    let n = cs.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = cs.last().unwrap().clone();
    let monic: Vec<Cx> = cs.iter().map(|c| c.div(&lead)).collect();

    // Root radius bound: 1 + max |c_i|.
    let mut radius = Fx::from_int(1, prec);
    for c in &monic[..n] {
        let a = c.abs();
        if a.cmp_abs(&radius) == std::cmp::Ordering::Greater {
            radius = a;
        }
    }
    radius = radius.add(&Fx::from_int(1, prec));

    // Initial guesses r * (0.4 + 0.9i)^k, pairwise distinct and asymmetric.
    let seed = Cx::from_rat_pair(&Rat::new(2.into(), 5.into()), &Rat::new(9.into(), 10.into()), prec);
    let mut z = Vec::with_capacity(n);
    let mut p = Cx { re: radius, im: Fx::zero(prec) };
    for _ in 0..n {
        p = p.mul(&seed);
        z.push(p.clone());
    }

    let target = -(prec as i64) + 6;
    let max_iter = 600 + 40 * prec as usize / 8;
    for _ in 0..max_iter {
        let mut worst = i64::MIN;
        for i in 0..n {
            let mut denom = Cx::from_ints(1, 0, prec);
            for j in 0..n {
                if j != i {
                    denom = denom.mul(&z[i].sub(&z[j]));
                }
            }
            if denom.is_zero() {
                // Perturb collided guesses.
                z[i] = z[i].add(&Cx::from_rat_pair(
                    &Rat::new(1.into(), 979.into()),
                    &Rat::new(1.into(), 1013.into()),
                    prec,
                ));
                worst = worst.max(0);
                continue;
            }
            let delta = eval_cx_poly(&monic, &z[i]).div(&denom);
            z[i] = z[i].sub(&delta);
            worst = worst.max(delta.abs().log2_abs());
        }
        if worst < target {
            break;
        }
    }
    z
}

/// Roots of a number-field polynomial under a fixed embedding.
pub fn roots_embedded(p: &Poly<NFElem>, emb: &Embedding, prec: u32) -> Vec<Cx> {
    let coeffs: Vec<Cx> = p.coeffs().iter().map(|c| emb.apply(c)).collect();
    roots_complex(&coeffs, prec)
}

/// Best rational approximation with bounded denominator, by continued
/// fractions.  The caller must verify the result exactly.
pub fn reconstruct_rat(x: &Fx, max_den_bits: u64) -> Option<Rat> {
    let q = x.to_rat();
    let mut p0 = BigInt::one();
    let mut q0 = BigInt::zero();
    let mut p1 = BigInt::zero();
    let mut q1 = BigInt::one();
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    loop {
        if den.is_zero() {
            break;
        }
        let (a, r) = num.div_mod_floor(&den);
        let p2 = &a * &p0 + &p1;
        let q2 = &a * &q0 + &q1;
        if q2.bits() > max_den_bits {
            // Previous convergent is the answer.
            if q0.is_zero() {
                return None;
            }
            return Some(Rat::new(p0, q0));
        }
        p1 = std::mem::replace(&mut p0, p2);
        q1 = std::mem::replace(&mut q0, q2);
        num = den;
        den = r;
    }
    if q0.is_zero() {
        None
    } else {
        Some(Rat::new(p0, q0))
    }
}

/// Reconstruct a rational from a fixed-point value, requiring the
/// approximation to be tight: |x - p/q| < 2^-(prec/2) and q small.
pub fn reconstruct_rat_checked(x: &Fx) -> Option<Rat> {
    let prec = x.prec;
    let cand = reconstruct_rat(x, (prec / 3) as u64)?;
    let diff = Fx::from_rat(&cand, prec).sub(x);
    if diff.log2_abs() < -((prec / 2) as i64) {
        Some(cand)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};
    use crate::poly::Poly;

    const P: u32 = 256;

    #[test]
    fn fixed_point_basics() {
        let a = Fx::from_rat(&rat(1, 3), P);
        let b = Fx::from_rat(&rat(3, 1), P);
        let c = a.mul(&b);
        assert!(c.sub(&Fx::from_int(1, P)).log2_abs() < -250);
        let s = Fx::from_int(2, P).sqrt();
        assert!(s.mul(&s).sub(&Fx::from_int(2, P)).log2_abs() < -120);
    }

    #[test]
    fn roots_of_quadratic() {
        // z^2 + 1 -> +-i.
        let coeffs = vec![Cx::from_ints(1, 0, P), Cx::from_ints(0, 0, P), Cx::from_ints(1, 0, P)];
        let mut rs = roots_complex(&coeffs, P);
        rs.sort_by(|a, b| a.im.mant.cmp(&b.im.mant));
        assert_eq!(rs.len(), 2);
        assert!(rs[0].add(&Cx::from_ints(0, 1, P)).abs().log2_abs() < -200);
        assert!(rs[1].sub(&Cx::from_ints(0, 1, P)).abs().log2_abs() < -200);
    }

    #[test]
    fn roots_with_multiplicity_cluster() {
        // (z-1)^3 (z+2): roots cluster near 1 with accuracy ~ prec/3.
        let p: Poly<Rat> = Poly::from_ints(&[-1, 1]).pow(3).mul(&Poly::from_ints(&[2, 1]));
        let coeffs: Vec<Cx> = p.coeffs().iter().map(|c| Cx::from_rat(c, P)).collect();
        let rs = roots_complex(&coeffs, P);
        assert_eq!(rs.len(), 4);
        let near_one = rs
            .iter()
            .filter(|r| r.sub(&Cx::from_ints(1, 0, P)).abs().log2_abs() < -40)
            .count();
        assert_eq!(near_one, 3);
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let q = rat(-355, 113);
        let x = Fx::from_rat(&q, P);
        assert_eq!(reconstruct_rat_checked(&x), Some(q));
    }
}
