//! Dense exact linear algebra over an abstract field: Gaussian elimination,
//! kernels, and linear solves.  Desk-scale only.

use crate::field::Field;

/// Row-reduce in place; returns the pivot column of each pivot row.
fn row_reduce<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the kernel of the matrix (rows of equal length).
pub fn nullspace<F: Field>(mut rows: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let pivots = row_reduce(&mut rows);
    let mut basis = vec![];
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[ri][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve A x = b; `None` if inconsistent.  When the system is
/// underdetermined an arbitrary solution (free variables zero) is returned.
pub fn solve<F: Field>(a: Vec<Vec<F>>, b: Vec<F>) -> Option<Vec<F>> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<F>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    // A pivot in the RHS column means inconsistency.
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[ri][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_int, Rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = nullspace(m(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Rat = v
                .iter()
                .zip([1, 2, 3])
                .map(|(x, c)| x * rat_int(c))
                .sum();
            assert!(num_traits::Zero::is_zero(&dot));
        }
    }

    #[test]
    fn solve_square() {
        let x = solve(m(&[&[2, 1], &[1, -1]]), vec![rat_int(5), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        assert!(solve(m(&[&[1, 1], &[1, 1]]), vec![rat_int(0), rat_int(1)]).is_none());
    }
}
