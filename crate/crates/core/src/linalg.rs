//! Exact dense linear algebra: ranks and kernels over a field, Smith form over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ring::{Ring, RingError, Scalar};

/// Reduced row echelon form over a field. Returns the nonzero rows and pivot columns.
pub fn row_reduce(ring: Ring, mut rows: Vec<Vec<Scalar>>) -> Result<(Vec<Vec<Scalar>>, Vec<usize>), RingError> {
    if !ring.is_field() {
        return Err(RingError::NotAField(ring));
    }
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ring.inv(&rows[r][col])?;
        for x in rows[r].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = ring.sub(x, &ring.mul(&f, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Ok((rows, pivots))
}

pub fn rank(ring: Ring, rows: Vec<Vec<Scalar>>) -> Result<usize, RingError> {
    Ok(row_reduce(ring, rows)?.1.len())
}

/// Basis of `{x : A x = 0}` for `A` given by its rows, each of length `ncols`.
pub fn kernel_basis(ring: Ring, rows: Vec<Vec<Scalar>>, ncols: usize) -> Result<Vec<Vec<Scalar>>, RingError> {
    let (reduced, pivots) = row_reduce(ring, rows)?;
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = ring.one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = ring.neg(&row[f]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..ncols {
                    let sub = &q * &m[t][j];
                    m[i][j] -= sub;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..nrows {
                    let sub = &q * &m[i][t];
                    m[i][j] -= sub;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // pivot must divide the rest of the block
                let bad = (t + 1..nrows)
                    .find(|&i| (t + 1..ncols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..ncols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            }
            if best.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn scalars(ring: Ring, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect()
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows: &[&[i64]] = &[&[2, 0], &[0, 1]];
        assert_eq!(rank(Ring::Rationals, scalars(Ring::Rationals, rows)).unwrap(), 2);
        let f2 = Ring::PrimeField(2);
        assert_eq!(rank(f2, scalars(f2, rows)).unwrap(), 1);
        assert!(rank(Ring::Integers, scalars(Ring::Integers, rows)).is_err());
    }

    #[test]
    fn kernel_is_annihilated() {
        let q = Ring::Rationals;
        let a = scalars(q, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = kernel_basis(q, a.clone(), 4).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &a {
                let dot = row.iter().zip(v).fold(Scalar::zero(), |acc, (x, y)| acc + x * y);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn smith_forms() {
        let f = smith_invariant_factors(ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let f = smith_invariant_factors(ints(&[&[1, 1], &[1, -1]]));
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(2)]);
        let f = smith_invariant_factors(ints(&[&[0, 0], &[0, 0]]));
        assert!(f.is_empty());
        let f = smith_invariant_factors(ints(&[&[2, 1, 0], &[4, 2, 0]]));
        assert_eq!(f, vec![BigInt::from(1)]);
    }
}
