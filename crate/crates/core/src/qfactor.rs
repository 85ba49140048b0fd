//! Factorization of rational polynomials into irreducibles, and exact root
//! finding inside small number fields.
//!
//! The factoring strategy is root-recombination: compute high-precision
//! complex roots, try subsets whose symmetric functions round to integers,
//! and confirm every candidate by exact trial division.  The numeric layer is
//! only ever a guess generator; nothing unverified escapes this module.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::field::{Field, NFElem, NumberField, Rat};
use crate::numeric::{field_embeddings, roots_complex, roots_embedded, reconstruct_rat_checked, Cx, Fx};
use crate::poly::Poly;

/// Scale a rational polynomial to primitive integer coefficients with a
/// positive leading coefficient.
pub fn primitive_integer(p: &Poly<Rat>) -> Vec<BigInt> {
    assert!(!p.is_zero(), "primitive part of zero polynomial");
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    for c in &mut v {
        *c = &*c / &g;
    }
    v
}

fn int_poly(v: &[BigInt]) -> Poly<Rat> {
    Poly::new(v.iter().map(|c| Rat::from(c.clone())).collect())
}

/// Round a fixed-point number to the nearest integer; returns the integer
/// and the log2 of the rounding error.
fn fx_round(x: &Fx) -> (BigInt, i64) {
    let half = BigInt::one() << (x.prec - 1);
    let n = if x.mant.is_negative() {
        -((-&x.mant + &half) >> x.prec)
    } else {
        (&x.mant + &half) >> x.prec
    };
    let err = Fx { mant: &x.mant - (&n << x.prec), prec: x.prec };
    (n, err.log2_abs())
}

/// Visit k-subsets of `items` in lexicographic order until `f` returns true.
fn any_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let n = items.len();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let chosen: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
        if f(&chosen) {
            return true;
        }
        // Advance the index vector.
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Factor a squarefree rational polynomial into monic irreducibles over Q.
fn factor_squarefree(g: &Poly<Rat>) -> Vec<Poly<Rat>> {
    let n = g.deg();
    if n <= 1 {
        return if n == 1 { vec![g.monic()] } else { vec![] };
    }
    let u = primitive_integer(g);
    let lead = u.last().unwrap().clone();
    let max_bits = u.iter().map(|c| c.bits()).max().unwrap_or(1);
    let mut prec = (160 + 2 * max_bits as u32 + 8 * n as u32).max(256);
    prec = (prec + 63) / 64 * 64;

    let coeffs: Vec<Cx> = u.iter().map(|c| Cx::from_rat(&Rat::from(c.clone()), prec)).collect();
    let roots = roots_complex(&coeffs, prec);
    let tol = -((prec / 4) as i64);
    let lead_fx = Cx::from_rat(&Rat::from(lead.clone()), prec);

    let mut avail: Vec<usize> = (0..n).collect();
    let mut remaining = int_poly(&u);
    let mut factors: Vec<Poly<Rat>> = Vec::new();

    'outer: while !avail.is_empty() {
        let m = avail.len();
        for k in 1..=m {
            if k == m {
                // No proper subset worked: what is left is irreducible.
                factors.push(remaining.monic());
                break 'outer;
            }
            let mut hit: Option<(Vec<usize>, Poly<Rat>, Poly<Rat>)> = None;
            any_combination(&avail, k, &mut |subset| {
                // Cheap filter: the constant term must round to an integer.
                let mut c0 = lead_fx.clone();
                for &i in subset {
                    c0 = c0.mul(&roots[i].neg());
                }
                if c0.im.log2_abs() >= tol {
                    return false;
                }
                let (_, e) = fx_round(&c0.re);
                if e >= tol {
                    return false;
                }
                // Full product lead * prod (z - r_i), rounded coefficient-wise.
                let mut prod = vec![lead_fx.clone()];
                for &i in subset {
                    let mut next = vec![Cx::zero(prec); prod.len() + 1];
                    for (j, c) in prod.iter().enumerate() {
                        next[j + 1] = next[j + 1].add(c);
                        next[j] = next[j].sub(&c.mul(&roots[i]));
                    }
                    prod = next;
                }
                let mut ints = Vec::with_capacity(prod.len());
                for c in &prod {
                    if c.im.log2_abs() >= tol {
                        return false;
                    }
                    let (v, e) = fx_round(&c.re);
                    if e >= tol {
                        return false;
                    }
                    ints.push(v);
                }
                let cand = int_poly(&primitive_integer(&int_poly(&ints))).monic();
                match remaining.exact_div(&cand) {
                    Some(q) => {
                        hit = Some((subset.to_vec(), cand, q));
                        true
                    }
                    None => false,
                }
            });
            if let Some((subset, cand, quot)) = hit {
                factors.push(cand);
                remaining = quot;
                avail.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
    }
    factors.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    factors
}

/// Factor a rational polynomial over Q: leading constant and monic
/// irreducible factors with multiplicities, sorted deterministically.
pub fn factor_over_q(p: &Poly<Rat>) -> (Rat, Vec<(Poly<Rat>, usize)>) {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let lead = p.leading();
    if p.is_constant() {
        return (lead, vec![]);
    }
    let mut out: Vec<(Poly<Rat>, usize)> = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())).then_with(|| a.1.cmp(&b.1))
    });
    (lead, out)
}

pub fn is_irreducible_over_q(p: &Poly<Rat>) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(d) => {
            let (_, fs) = factor_over_q(p);
            fs.len() == 1 && fs[0].1 == 1 && fs[0].0.deg() == d
        }
    }
}

/// The distinct rational roots of a rational polynomial.
pub fn rational_roots(p: &Poly<Rat>) -> Vec<Rat> {
    let (_, fs) = factor_over_q(p);
    let mut out: Vec<Rat> = fs
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| -f.coeff(0))
        .collect();
    out.sort();
    out
}

/// Checked number-field constructor: the minimal polynomial must be monic
/// and irreducible over Q.
pub fn number_field(minpoly: Vec<Rat>, label: &str) -> Result<Arc<NumberField>, Error> {
    let p = Poly::new(minpoly.clone());
    if p.degree().map_or(true, |d| d == 0) {
        return Err(Error::ReducibleMinpoly);
    }
    if !p.is_monic() || !is_irreducible_over_q(&p) {
        return Err(Error::ReducibleMinpoly);
    }
    Ok(NumberField::new_unchecked(minpoly, label))
}

/// A number-field polynomial with all-rational coefficients, if it has them.
pub fn poly_to_rat(p: &Poly<NFElem>) -> Option<Poly<Rat>> {
    let mut cs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        cs.push(c.to_rat()?);
    }
    Some(Poly::new(cs))
}

pub fn poly_from_rat(p: &Poly<Rat>) -> Poly<NFElem> {
    p.map(|c| NFElem::from_rat(c.clone()))
}

/// Solve a small complex linear system by Gaussian elimination with
/// (absolute-value) pivoting.  Returns `None` on a near-singular pivot.
fn solve_cx(mut a: Vec<Vec<Cx>>, mut b: Vec<Cx>, prec: u32) -> Option<Vec<Cx>> {
    let n = b.len();
    let floor = -((prec as i64) * 3 / 4);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm_sq().cmp_abs(&a[j][col].norm_sq()))?;
        if a[piv][col].abs().log2_abs() < floor {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col].div(&a[col][col]);
            for k in col..n {
                let t = f.mul(&a[col][k]);
                a[row][k] = a[row][k].sub(&t);
            }
            let t = f.mul(&b[col]);
            b[row] = b[row].sub(&t);
        }
    }
    Some((0..n).map(|i| b[i].div(&a[i][i])).collect())
}

/// The distinct roots of `p` that lie in the given number field (`None`
/// meaning Q itself).  Exact over Q; over proper fields the roots are
/// recovered from complex embeddings and then verified exactly.
pub fn roots_in_field(
    p: &Poly<NFElem>,
    field: Option<&Arc<NumberField>>,
) -> Result<Vec<NFElem>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(vec![]);
    }
    let deg_k = field.map_or(1, |f| f.degree());
    if deg_k == 1 || field.is_none() {
        let pr = poly_to_rat(p).ok_or_else(|| {
            Error::Validation("polynomial has irrational coefficients but no field was given".into())
        })?;
        let mut roots: Vec<NFElem> = rational_roots(&pr)
            .into_iter()
            .map(|r| match field {
                Some(f) => NFElem::from_rat_in(f, r),
                None => NFElem::from_rat(r),
            })
            .collect();
        roots.sort_by(|a, b| crate::field::nf_sort_key(a).cmp(&crate::field::nf_sort_key(b)));
        return Ok(roots);
    }
    let kf = field.unwrap();
    if deg_k > 4 {
        return Err(Error::NeedsExtension(format!(
            "root search implemented for fields of degree <= 4, got {}",
            deg_k
        )));
    }
    let prec: u32 = 384;
    let p_lifted = p.map(|c| c.lift(kf));
    let embs = field_embeddings(kf.minpoly(), prec);
    assert_eq!(embs.len(), deg_k);
    let root_lists: Vec<Vec<Cx>> = embs.iter().map(|e| roots_embedded(&p_lifted, e, prec)).collect();

    // Powers of alpha under each embedding form the coefficient matrix of
    // the linear system  sum_j c_j sigma_i(alpha)^j = sigma_i(beta).
    let mut mat = Vec::with_capacity(deg_k);
    for e in &embs {
        let mut row = Vec::with_capacity(deg_k);
        let mut pw = Cx::from_ints(1, 0, prec);
        for _ in 0..deg_k {
            row.push(pw.clone());
            pw = pw.mul(&e.alpha);
        }
        mat.push(row);
    }

    let tol = -((prec / 3) as i64);
    let mut found: Vec<NFElem> = Vec::new();
    let mut tuple = vec![0usize; deg_k];
    'tuples: loop {
        // Candidate: root tuple (one per embedding), presumed conjugate
        // images of a single field element.
        if root_lists.iter().all(|l| !l.is_empty()) {
            let b: Vec<Cx> = (0..deg_k).map(|i| root_lists[i][tuple[i]].clone()).collect();
            if let Some(sol) = solve_cx(mat.clone(), b, prec) {
                let mut coords = Vec::with_capacity(deg_k);
                let mut ok = true;
                for c in &sol {
                    if c.im.log2_abs() >= tol {
                        ok = false;
                        break;
                    }
                    match reconstruct_rat_checked(&c.re) {
                        Some(q) => coords.push(q),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    let beta = NFElem::from_coords(kf, coords);
                    if p_lifted.eval(&beta).is_zero() && !found.contains(&beta) {
                        found.push(beta);
                    }
                }
            }
        }
        // Advance the tuple odometer.
        for i in (0..deg_k).rev() {
            tuple[i] += 1;
            if tuple[i] < root_lists[i].len().max(1) {
                continue 'tuples;
            }
            tuple[i] = 0;
        }
        break;
    }
    found.sort_by(|a, b| crate::field::nf_sort_key(a).cmp(&crate::field::nf_sort_key(b)));
    Ok(found)
}

/// A square root of `x` inside its own field, if one exists there.
pub fn sqrt_in_field(x: &NFElem) -> Option<NFElem> {
    let p = Poly::new(vec![x.neg(), <NFElem as Field>::zero(), <NFElem as Field>::one()]);
    let roots = roots_in_field(&p, x.field()).ok()?;
    roots.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    #[test]
    fn primitive_part_scales_and_signs() {
        let p = Poly::new(vec![rat(1, 2), rat(-3, 4)]);
        assert_eq!(primitive_integer(&p), vec![BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn factors_quartic_with_rational_root() {
        // 3z^4 - 4z^3 + 1 = (z - 1)^2 (3z^2 + 2z + 1).
        let p: Poly<Rat> = Poly::from_ints(&[1, 0, 0, -4, 3]);
        let (lead, fs) = factor_over_q(&p);
        assert_eq!(lead, rat_int(3));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (Poly::from_ints(&[-1, 1]), 2));
        assert_eq!(fs[1], (Poly::new(vec![rat(1, 3), rat(2, 3), rat_int(1)]), 1));
    }

    #[test]
    fn factors_octic_invariant() {
        // z^8 + 14z^4 + 1 splits into two quartics over Q.
        let p: Poly<Rat> = Poly::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
        let (_, fs) = factor_over_q(&p);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, Poly::from_ints(&[1, -2, 2, 2, 1]));
        assert_eq!(fs[1].0, Poly::from_ints(&[1, 2, 2, -2, 1]));
        assert_eq!(fs[0].0.mul(&fs[1].0), p);
    }

    #[test]
    fn irreducibility_checks() {
        assert!(is_irreducible_over_q(&Poly::from_ints(&[1, 0, 1])));
        assert!(is_irreducible_over_q(&Poly::from_ints(&[-2, 0, 0, 1])));
        assert!(!is_irreducible_over_q(&Poly::from_ints(&[-1, 0, 1])));
        assert!(!is_irreducible_over_q(&Poly::from_ints(&[5])));
    }

    #[test]
    fn rational_roots_of_cubic() {
        // (z - 1)(z + 2)(2z - 3).
        let p = Poly::from_ints(&[-1, 1]).mul(&Poly::from_ints(&[2, 1])).mul(&Poly::from_ints(&[-3, 2]));
        assert_eq!(rational_roots(&p), vec![rat_int(-2), rat_int(1), rat(3, 2)]);
    }

    #[test]
    fn checked_field_constructor() {
        assert!(number_field(vec![rat_int(1), rat_int(0), rat_int(1)], "i").is_ok());
        assert!(number_field(vec![rat_int(-1), rat_int(0), rat_int(1)], "bad").is_err());
        assert!(number_field(vec![rat_int(0), rat_int(0), rat_int(2)], "nonmonic").is_err());
    }

    #[test]
    fn roots_in_gaussian_field() {
        // z^2 + 1 has roots +-i in Q(i).
        let k = NumberField::gaussian();
        let p = poly_from_rat(&Poly::from_ints(&[1, 0, 1])).map(|c| c.lift(&k));
        let roots = roots_in_field(&p, Some(&k)).unwrap();
        assert_eq!(roots.len(), 2);
        let i = NFElem::generator(&k);
        assert!(roots.contains(&i));
        assert!(roots.contains(&i.neg()));
    }

    #[test]
    fn roots_in_cubic_field() {
        // In Q(c) with c^3 = 2: z^3 - 2 has the single root c; z^2 - c^2
        // likewise picks out +-c... only c and -c lie in the field.
        let k = number_field(vec![rat_int(-2), rat_int(0), rat_int(0), rat_int(1)], "c").unwrap();
        let c = NFElem::generator(&k);
        let p = poly_from_rat(&Poly::from_ints(&[-2, 0, 0, 1])).map(|x| x.lift(&k));
        let roots = roots_in_field(&p, Some(&k)).unwrap();
        assert_eq!(roots, vec![c.clone()]);
        let csq = c.mul(&c);
        let q = Poly::new(vec![csq.neg(), <NFElem as Field>::zero(), <NFElem as Field>::one()]);
        let roots2 = roots_in_field(&q, Some(&k)).unwrap();
        assert_eq!(roots2.len(), 2);
        assert!(roots2.contains(&c));
    }

    #[test]
    fn sqrt_inside_field() {
        let k = NumberField::gaussian();
        // sqrt(-1) = +-i exists in Q(i); sqrt(2) does not.
        let minus_one = NFElem::from_rat_in(&k, rat_int(-1));
        let s = sqrt_in_field(&minus_one).unwrap();
        assert!(s.mul(&s) == minus_one);
        let two = NFElem::from_rat_in(&k, rat_int(2));
        assert!(sqrt_in_field(&two).is_none());
    }
}
