//! Exact Gaussian elimination over Q.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::vector::{LatticeVector, RationalVector};

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn to_rat_rows(rows: &[LatticeVector]) -> RatMatrix {
    rows.iter()
        .map(|r| r.coords().iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &RatMatrix) -> usize {
    let mut m = rows.clone();
    rref(&mut m).len()
}

pub fn rank_lattice(rows: &[LatticeVector]) -> usize {
    rank(&to_rat_rows(rows))
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut m: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Determinant by elimination.
pub fn det(a: &RatMatrix) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    d
}

/// Integer determinant of the square matrix whose rows are `rows`.
pub fn int_det(rows: &[LatticeVector]) -> BigInt {
    det(&to_rat_rows(rows)).to_integer()
}

/// Basis of `{x : rows * x = 0}` in `Q^ncols`.
pub fn null_space(rows: &RatMatrix, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a non-zero rational vector by a positive factor to a primitive
/// integer vector. Returns the vector and the factor used.
pub fn primitive_integer(v: &[BigRational]) -> (LatticeVector, BigRational) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    let prim: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
    (
        LatticeVector::new(prim),
        BigRational::new(lcm, g),
    )
}

/// Affine rank (dimension of the affine hull) of a point set.
pub fn affine_dim(points: &[RationalVector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: RatMatrix = points[1..]
        .iter()
        .map(|p| (p - base).into_coords())
        .collect();
    rank(&diffs)
}
