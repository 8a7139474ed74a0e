//! Exact nullspaces by fraction-free Gaussian elimination over the integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::gcd_all;
use crate::scalar::{common_denominator, Rational};

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let den = common_denominator(row);
            row.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = gcd_all(row.iter());
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Divides out the gcd of the entries (`v` is left untouched if it is zero).
pub fn make_primitive(v: &mut [BigInt]) {
    remove_content(v);
}

/// Reduced row echelon form over `Z`: every pivot row has zeros in all
/// other pivot columns, and rows are kept primitive.
///
/// Returns the nonzero rows and their pivot columns.
pub fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        remove_content(&mut rows[rank]);
        let pivot_row = rows[rank].clone();
        let p = &pivot_row[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            let g = p.gcd(&f);
            let (ps, fs) = (p / &g, &f / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &ps - y * &fs;
            }
            remove_content(row);
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Integer basis of the right kernel, one primitive vector per free column,
/// in increasing order of that column.
///
/// The vector for free column `f` is supported on columns `<= f`, so the
/// first vector has the most trailing zeros.
pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<BigInt>> {
    let (ech, pivots) = echelon(integer_rows(rows), cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let scale = ech
            .iter()
            .zip(&pivots)
            .filter(|(row, _)| !row[free].is_zero())
            .fold(BigInt::one(), |acc, (row, &p)| acc.lcm(&row[p].abs()));
        let mut v = vec_zero(cols);
        v[free] = scale.clone();
        for (row, &p) in ech.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -(&row[free] * &scale) / &row[p];
            }
        }
        make_primitive(&mut v);
        basis.push(v);
    }
    basis
}

fn vec_zero(n: usize) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::zero()).collect()
}

/// `Σ_j rows[i][j]·v[j]` for every row.
pub fn apply(rows: &[Vec<Rational>], v: &[BigInt]) -> Vec<Rational> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (a, x)| acc + a * Rational::from_integer(x.clone()))
        })
        .collect()
}
