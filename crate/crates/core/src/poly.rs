//! Dense univariate polynomials over an abstract field.
//!
//! Coefficients are stored low-to-high with no trailing zeros; the zero
//! polynomial is the empty vector.

use std::fmt;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial z.
    pub fn x() -> Self {
        Poly { coeffs: vec![F::zero(), F::one()] }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&n| F::from_int(n)).collect())
    }

    /// c * z^k.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the convention deg 0 = 0 (panics on the zero polynomial).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().expect("leading coefficient of zero polynomial")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&other.coeff(k)));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = divisor.coeffs.len();
        if rem.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().inv().unwrap();
        let mut quot = vec![F::zero(); rem.len() - dn + 1];
        while rem.len() >= dn {
            let c = rem.last().unwrap().mul(&lead_inv);
            let k = rem.len() - dn;
            quot[k] = c.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&b.mul(&c));
            }
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().inv().unwrap())
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&F::from_int(i as i64)));
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Coefficients reversed: z^n * p(1/z) for n = deg p.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs)
    }

    /// p(z + c).
    pub fn translate(&self, c: &F) -> Self {
        self.compose(&Poly::new(vec![c.clone(), F::one()]))
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun squarefree decomposition: pairs (monic factor, multiplicity) with
    /// pairwise-coprime squarefree factors whose weighted product rebuilds
    /// the input up to a constant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        if self.is_constant() {
            return vec![];
        }
        let mut out = vec![];
        let d = self.derivative();
        let mut a = self.gcd(&d);
        let mut b = self.exact_div(&a).unwrap();
        let mut c = d.exact_div(&a).unwrap();
        let mut i = 1usize;
        loop {
            let z = c.sub(&b.derivative());
            if z.is_zero() {
                if !b.is_constant() {
                    out.push((b.monic(), i));
                }
                break;
            }
            a = b.gcd(&z);
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = z.exact_div(&a).unwrap();
            i += 1;
        }
        out
    }

    /// Resultant of two nonzero polynomials via the Euclidean remainder
    /// sequence.
    pub fn resultant(&self, other: &Self) -> F {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            return F::zero();
        }
        let mut acc = F::one();
        let mut sign = false;
        while let Some(db) = b.degree() {
            if db == 0 {
                // res(a, c) = c^deg(a).
                let c = b.coeff(0);
                let mut p = F::one();
                for _ in 0..a.degree().unwrap_or(0) {
                    p = p.mul(&c);
                }
                return finish_resultant(acc, sign, p);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero();
            }
            let da = a.deg();
            let dr = r.deg();
            // res(a,b) = (-1)^(da*db) lc(b)^(da-dr) res(b,r).
            if (da * db) % 2 == 1 {
                sign = !sign;
            }
            let lc = b.leading();
            for _ in 0..(da - dr) {
                acc = acc.mul(&lc);
            }
            a = b;
            b = r;
        }
        F::zero()
    }

    /// Map coefficients into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Lagrange interpolation through distinct sample points.
pub fn lagrange_interpolate<F: Field>(pts: &[(F, F)]) -> Poly<F> {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let scale = xi.sub(xj).inv().expect("interpolation nodes must be distinct");
            basis = basis.mul(&Poly::new(vec![xj.neg().mul(&scale), scale]));
        }
        acc = acc.add(&basis);
    }
    acc
}

fn finish_resultant<F: Field>(acc: F, sign: bool, tail: F) -> F {
    let v = acc.mul(&tail);
    if sign {
        v.neg()
    } else {
        v
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{}", c);
            let needs_parens = cs.contains('+') || (cs.contains('-') && !cs.starts_with('-'));
            let cs = if needs_parens { format!("({})", cs) } else { cs };
            parts.push(match i {
                0 => cs,
                1 if c.is_one() => "z".to_string(),
                1 => format!("{}*z", cs),
                _ if c.is_one() => format!("z^{}", i),
                _ => format!("{}*z^{}", cs, i),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Chebyshev polynomial T_n with T_n(cos t) = cos(nt), via the
/// three-term recurrence.
pub fn chebyshev<F: Field>(n: usize) -> Poly<F> {
    assert!(n >= 1, "chebyshev index must be positive");
    let two_z = Poly::new(vec![F::zero(), F::from_int(2)]);
    let mut prev: Poly<F> = Poly::one();
    let mut cur: Poly<F> = Poly::x();
    for _ in 1..n {
        let next = two_z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}
