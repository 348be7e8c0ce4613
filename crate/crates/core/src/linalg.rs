//! Small exact linear algebra: cofactor determinants and fraction-free ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::{Rational, Scalar};

/// Largest size for which [`det_cofactor`] is attempted by callers.
pub const COFACTOR_LIMIT: usize = 6;

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    expand(m, 0, &cols)
}

fn expand(m: &[Vec<Scalar>], row: usize, cols: &[usize]) -> Scalar {
    if cols.is_empty() {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for (i, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = entry * &expand(m, row + 1, &rest);
        if i % 2 == 0 {
            acc += &minor;
        } else {
            acc -= &minor;
        }
    }
    acc
}

/// Rank over `Q` via Bareiss elimination on integer rows (each row is first
/// scaled by the lcm of its denominators, which does not change the rank).
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    bareiss_rank(
        &mut rows,
        |x| x.is_zero(),
        |a, b, c, d, p| Ok((a * b - c * d) / p),
        BigInt::one(),
        BigInt::zero(),
    )
    .expect("integer Bareiss divisions are exact")
}

/// Rank over the Laurent ring via Bareiss elimination with exact division.
/// Entries must be `gam`-free (or at least give `gam`-homogeneous pivots).
pub fn rank_laurent(m: &[Vec<Scalar>]) -> Result<usize> {
    let mut rows = m.to_vec();
    bareiss_rank(
        &mut rows,
        |x| x.is_zero(),
        |a, b, c, d, p| (&(a * b) - &(c * d)).div_exact(p),
        Scalar::one(),
        Scalar::zero(),
    )
}

fn bareiss_rank<T: Clone>(
    rows: &mut [Vec<T>],
    is_zero: impl Fn(&T) -> bool,
    step: impl Fn(&T, &T, &T, &T, &T) -> Result<T>,
    one: T,
    zero: T,
) -> Result<usize> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut prev = one;
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..n_rows {
            for j in c + 1..n_cols {
                let v = step(&rows[r][c], &rows[i][j], &rows[i][c], &rows[r][j], &prev)?;
                rows[i][j] = v;
            }
        }
        for row in rows.iter_mut().skip(r + 1) {
            row[c] = zero.clone();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn cofactor_2x2() {
        let q = Scalar::q_pow(1);
        let m = vec![
            vec![q.clone(), Scalar::one()],
            vec![Scalar::one(), q.clone()],
        ];
        assert_eq!(det_cofactor(&m), Scalar::q_pow(2) - Scalar::one());
        assert_eq!(det_cofactor(&[]), Scalar::one());
    }

    #[test]
    fn rational_rank() {
        let m = vec![
            vec![rat(1, 2), int(1), int(0)],
            vec![int(1), int(2), int(0)],
            vec![int(0), int(0), rat(3, 7)],
        ];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_rational(&[vec![int(0), int(0)]]), 0);
    }

    #[test]
    fn laurent_rank_matches_cofactor() {
        let q2 = Scalar::q_pow(2);
        let m = vec![
            vec![Scalar::one(), q2.clone(), Scalar::zero()],
            vec![q2.clone(), Scalar::q_pow(4), Scalar::one()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::q_pow(1)],
        ];
        assert_eq!(rank_laurent(&m).unwrap(), 2);
        assert!(det_cofactor(&m).is_zero());
    }
}
