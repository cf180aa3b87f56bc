//! Exact linear algebra over the rationals by fraction-free elimination.
//!
//! Rows are scaled to primitive integer vectors, and every elimination step
//! `row <- p·row - a·pivot_row` is followed by content removal, which keeps
//! entry growth in check without ever forming fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Scales a rational row to a primitive integer row (content one).
pub fn primitive_integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = super::denominator_lcm(row);
    let ints: Vec<BigInt> = row
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    remove_content(ints)
}

fn remove_content(row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return row;
    }
    row.into_iter().map(|x| x / &g).collect()
}

/// Reduced echelon form: returns the nonzero rows and their pivot columns.
/// Pivot choice per column: the candidate entry of smallest magnitude, ties
/// broken by row index.
pub fn echelon(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length");
            primitive_integer_row(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let pick = (rank..a.len())
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()).then(i.cmp(&j)));
        let Some(p) = pick else { continue };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        let pv = pivot_row[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let updated: Vec<BigInt> = row
                .iter()
                .zip(&pivot_row)
                .map(|(x, y)| &pv * x - &factor * y)
                .collect();
            *row = remove_content(updated);
        }
        pivots.push(col);
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    a.truncate(rank);
    (a, pivots)
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    echelon(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (a, pivots) = echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::from_integer(1.into());
            for (row, &pc) in a.iter().zip(&pivots) {
                x[pc] = BigRational::new(-row[f].clone(), row[pc].clone());
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: BigRational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&a, 3), 2);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[1, 0], &[0, 3]]);
        assert!(nullspace(&a, 2).is_empty());
    }
}
