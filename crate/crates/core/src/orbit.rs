//! Forward orbits and fiber transport along a commuting pair.
//!
//! Given A o V = V o B, the map B carries the fiber V^{-1}(y) onto the
//! fiber V^{-1}(A(y)) bijectively for all but finitely many y.  The
//! tracker iterates the orbit of A at high working precision (the exact
//! orbit heights grow like deg(A)^n, so fiber transport is certified
//! numerically), while preperiodicity scanning and the Klein-orbit case
//! over Q(i) stay exact.

use crate::error::Error;
use crate::field::{Field, NFElem, NumberField, Rat, nf_sort_key};
use crate::numeric::{Cx, Embedding, Fx, field_embeddings, roots_complex};
use crate::ramification::coefficient_field;
use crate::ratfunc::P1;
use crate::semiconjugacy::klein_group_s4;
use crate::KRatFunc;

/// Numeric orbit values with per-step fiber transport data.
#[derive(Debug, Clone)]
pub struct FiberOrbitTrace {
    /// y0, A(y0), A(A(y0)), ... at working precision, length n + 1;
    /// None marks an infinite value (pole hit), after which the orbit
    /// is not resumed.
    pub y_orbit: Vec<Option<Cx>>,
    /// Numeric fiber of V over each orbit value.
    pub fibers: Vec<Vec<Cx>>,
    /// Per transport step, log2 of the worst matching residual
    /// (i64::MIN when every match was exact or the step degenerated).
    pub transport_residuals: Vec<i64>,
    /// Per transport step, whether B mapped the fiber bijectively onto
    /// the next one within tolerance.
    pub bijective_flags: Vec<bool>,
    pub precision_bits: u32,
}

/// The exact forward orbit y0, A(y0), ..., A^n(y0).  Infinity is an
/// ordinary point: the orbit continues through it via A(infinity).
pub fn forward_orbit(a: &KRatFunc, y0: &NFElem, n: usize) -> Vec<P1<NFElem>> {
    let mut orbit = Vec::with_capacity(n + 1);
    orbit.push(P1::Finite(y0.clone()));
    for i in 0..n {
        let next = a.eval_p1(&orbit[i]);
        orbit.push(next);
    }
    orbit
}

fn embedding_for(maps: &[&KRatFunc], prec: u32) -> Embedding {
    for f in maps {
        if let Some(k) = coefficient_field(f) {
            let alpha =
                field_embeddings(k.minpoly(), prec).into_iter().next().map(|e| e.alpha).unwrap();
            return Embedding { alpha };
        }
    }
    Embedding::rational(prec)
}

/// Track the fibers of V along the A-orbit of y0 and certify that B
/// transports each fiber onto the next.
///
/// A step is marked non-bijective when the fiber degenerates (critical
/// value, infinite point, matching tie or pole of B); iteration always
/// continues to the requested length.
pub fn fiber_track(
    v: &KRatFunc,
    a: &KRatFunc,
    b: &KRatFunc,
    y0: &NFElem,
    n: usize,
    precision_bits: u32,
) -> Result<FiberOrbitTrace, Error> {
    if a.compose(v) != v.compose(b) {
        return Err(Error::Validation("A o V = V o B must hold exactly".into()));
    }
    // Superattracting cycles drive orbit values toward critical values at
    // doubly exponential speed, so the requested precision may not separate
    // a late fiber; escalate the working precision until transport
    // certifies (or give up at 16x).
    let base = precision_bits.max(128);
    let mut trace = track_at(v, a, b, y0, n, base);
    let mut prec = base;
    while trace.bijective_flags.iter().any(|f| !f) && prec < base * 16 {
        prec *= 2;
        trace = track_at(v, a, b, y0, n, prec);
    }
    Ok(trace)
}

fn track_at(
    v: &KRatFunc,
    a: &KRatFunc,
    b: &KRatFunc,
    y0: &NFElem,
    n: usize,
    prec: u32,
) -> FiberOrbitTrace {
    let emb = embedding_for(&[v, a, b], prec);
    let tolerance = -((prec / 2) as i64);

    // Orbit at working precision: heights of the exact orbit grow like
    // deg(A)^n, so the transport certificate is numeric by design.
    let mut y_orbit: Vec<Option<Cx>> = Vec::with_capacity(n + 1);
    y_orbit.push(Some(emb.apply(y0)));
    for i in 0..n {
        let next = y_orbit[i].as_ref().and_then(|z| emb.eval_ratfunc(a, z));
        y_orbit.push(next);
    }

    // Fiber over each orbit value, kept only when it has full cardinality
    // with pairwise-separated roots.
    let num_cx: Vec<Cx> = v.num().coeffs().iter().map(|c| emb.apply(c)).collect();
    let den_cx: Vec<Cx> = v.den().coeffs().iter().map(|c| emb.apply(c)).collect();
    let mut fibers: Vec<Vec<Cx>> = Vec::with_capacity(n + 1);
    for y in &y_orbit {
        let fiber = match y {
            Some(yc) => {
                let len = num_cx.len().max(den_cx.len());
                let mut coeffs = vec![Cx::zero(prec); len];
                for (k, c) in num_cx.iter().enumerate() {
                    coeffs[k] = c.clone();
                }
                for (k, c) in den_cx.iter().enumerate() {
                    coeffs[k] = coeffs[k].sub(&yc.mul(c));
                }
                while coeffs.len() > 1 && coeffs.last().unwrap().abs().log2_abs() < tolerance {
                    coeffs.pop();
                }
                if coeffs.len() != v.degree() + 1 {
                    vec![]
                } else {
                    let roots = roots_complex(&coeffs, prec);
                    let separated = (0..roots.len()).all(|i| {
                        (i + 1..roots.len())
                            .all(|j| roots[i].dist(&roots[j]).log2_abs() >= tolerance)
                    });
                    if roots.len() == v.degree() && separated { roots } else { vec![] }
                }
            }
            None => vec![],
        };
        fibers.push(fiber);
    }
    let mut transport_residuals = Vec::with_capacity(n);
    let mut bijective_flags = Vec::with_capacity(n);
    for i in 0..n {
        let (src, dst) = (&fibers[i], &fibers[i + 1]);
        if src.len() != v.degree() || dst.len() != v.degree() {
            transport_residuals.push(i64::MIN);
            bijective_flags.push(false);
            continue;
        }
        let mut taken = vec![false; dst.len()];
        let mut worst = i64::MIN;
        let mut ok = true;
        for z in src {
            let Some(bz) = emb.eval_ratfunc(b, z) else {
                ok = false;
                break;
            };
            // Nearest unclaimed target; claiming twice is a tie/collision.
            let mut best: Option<(usize, Fx)> = None;
            for (j, w) in dst.iter().enumerate() {
                let d = bz.dist(w);
                if best.as_ref().is_none_or(|(_, bd)| d.cmp_abs(bd) == std::cmp::Ordering::Less) {
                    best = Some((j, d));
                }
            }
            let (j, d) = best.unwrap();
            if taken[j] || d.log2_abs() >= tolerance {
                ok = false;
                break;
            }
            taken[j] = true;
            worst = worst.max(d.log2_abs());
        }
        transport_residuals.push(worst);
        bijective_flags.push(ok && taken.iter().all(|t| *t));
    }

    FiberOrbitTrace {
        y_orbit,
        fibers,
        transport_residuals,
        bijective_flags,
        precision_bits: prec,
    }
}

/// The orbit of a rational point under the 24-element octahedral Moebius
/// group, as exact points of P^1 over Q(i), deduplicated and sorted.
///
/// The invariant theta is exactly constant on the orbit, whose size
/// divides 24; poles of group elements contribute the point at infinity.
pub fn klein_fiber_exact(a: &Rat) -> Vec<P1<NFElem>> {
    let k = NumberField::gaussian();
    let x = P1::Finite(NFElem::from_rat_in(&k, a.clone()));
    let mut orbit: Vec<P1<NFElem>> = vec![];
    for sigma in klein_group_s4() {
        let image = sigma.apply(&x);
        if !orbit.contains(&image) {
            orbit.push(image);
        }
    }
    orbit.sort_by_key(|p| match p {
        P1::Finite(z) => (0, nf_sort_key(z)),
        P1::Infinity => (1, nf_sort_key(&<NFElem as Field>::zero())),
    });
    orbit
}

/// Outcome of an exact repetition scan along a forward orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreperiodicityReport {
    /// The orbit enters a cycle: `tail` steps of approach, then a cycle
    /// of length `period`.
    Preperiodic { tail: usize, period: usize },
    /// No exact repetition within the scanned bound; not a proof of
    /// non-preperiodicity.
    NoRepetitionWithin(usize),
}

/// Detect exact repetition in the orbit of y0 under A within `bound`
/// steps.
pub fn preperiodicity_scan(a: &KRatFunc, y0: &NFElem, bound: usize) -> PreperiodicityReport {
    let orbit = forward_orbit(a, y0, bound);
    for i in 1..orbit.len() {
        for j in 0..i {
            if orbit[i] == orbit[j] {
                return PreperiodicityReport::Preperiodic { tail: j, period: i - j };
            }
        }
    }
    PreperiodicityReport::NoRepetitionWithin(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use crate::semiconjugacy::{chebyshev_map, power_map, s4_data};

    fn nf(n: i64) -> NFElem {
        NFElem::from_rat(rat_int(n))
    }

    #[test]
    fn square_orbit() {
        let orbit = forward_orbit(&power_map(2), &nf(2), 3);
        let expected: Vec<P1<NFElem>> =
            [2, 4, 16, 256].iter().map(|&n| P1::Finite(nf(n))).collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn square_fiber_track() {
        let v = power_map(2);
        let cube = power_map(3);
        let trace = fiber_track(&v, &cube, &cube, &nf(4), 4, 256).unwrap();
        assert!(trace.bijective_flags.iter().all(|&f| f));
        assert!(trace.transport_residuals.iter().all(|&r| r < -120));
    }

    #[test]
    fn chebyshev_fiber_track() {
        let trace = fiber_track(
            &chebyshev_map(3),
            &chebyshev_map(2),
            &chebyshev_map(2),
            &NFElem::from_rat(rat(1, 3)),
            8,
            256,
        )
        .unwrap();
        assert!(trace.bijective_flags.iter().all(|&f| f));
    }

    #[test]
    fn klein_orbit_generic_and_special() {
        let orbit = klein_fiber_exact(&rat_int(2));
        assert_eq!(orbit.len(), 24);
        let theta = s4_data().theta;
        let value = theta.eval_p1(&orbit[0]);
        for p in &orbit {
            assert_eq!(theta.eval_p1(p), value);
        }

        // 1 lies in the ramification locus of theta: smaller orbit.
        assert!(klein_fiber_exact(&rat_int(1)).len() < 24);

        // The orbit of 0 contains both 0 and infinity.
        let zero_orbit = klein_fiber_exact(&rat_int(0));
        assert!(zero_orbit.contains(&P1::Infinity));
        assert!(zero_orbit.contains(&P1::Finite(NFElem::from_rat_in(
            &NumberField::gaussian(),
            rat_int(0)
        ))));
    }

    #[test]
    fn preperiodicity_cases() {
        let sq = power_map(2);
        assert_eq!(
            preperiodicity_scan(&sq, &nf(1), 10),
            PreperiodicityReport::Preperiodic { tail: 0, period: 1 }
        );
        assert_eq!(
            preperiodicity_scan(&sq, &nf(-1), 10),
            PreperiodicityReport::Preperiodic { tail: 1, period: 1 }
        );
        let shifted = crate::semiconjugacy::q_map(&[-1, 0, 1], &[1]);
        assert_eq!(
            preperiodicity_scan(&shifted, &nf(0), 10),
            PreperiodicityReport::Preperiodic { tail: 0, period: 2 }
        );
        assert_eq!(
            preperiodicity_scan(&sq, &nf(2), 10),
            PreperiodicityReport::NoRepetitionWithin(10)
        );
    }
}
