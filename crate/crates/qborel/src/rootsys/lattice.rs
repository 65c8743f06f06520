use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::LatVec;

/// Rank of the lattice spanned by integer vectors (rank over Q).
pub fn integer_rank(vectors: &[LatVec]) -> usize {
    rref(vectors.iter().map(|v| v.iter().map(|&x| Rational64::from_integer(x.into())).collect()).collect()).1.len()
}

/// Primitive integer vectors spanning `{v : row · v = 0 for every row}` over Q.
pub fn integer_kernel(rows: &[LatVec], dim: usize) -> Vec<LatVec> {
    let mat: Vec<Vec<Rational64>> =
        rows.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x.into())).collect()).collect();
    let (reduced, pivots) = rref(mat);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational64::zero(); dim];
            v[f] = Rational64::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f];
            }
            primitive(&v)
        })
        .collect()
}

fn primitive(v: &[Rational64]) -> LatVec {
    let lcm = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * Rational64::from_integer(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x)).max(1);
    let sign = if ints.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    ints.iter().map(|x| (sign * x / g) as i32).collect()
}

/// Reduced row echelon form; returns nonzero rows and pivot columns.
fn rref(mut m: Vec<Vec<Rational64>>) -> (Vec<Vec<Rational64>>, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let delta = f * m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![-1, 0], vec![0, -1]]), 2);
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[vec![0, 0, 0]]), 0);
    }

    #[test]
    fn kernels() {
        // (v, α1) = 2 v1 - v2 in A2.
        assert_eq!(integer_kernel(&[vec![2, -1]], 2), vec![vec![1, 2]]);
        assert_eq!(integer_kernel(&[], 2), vec![vec![1, 0], vec![0, 1]]);
        assert!(integer_kernel(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }
}
