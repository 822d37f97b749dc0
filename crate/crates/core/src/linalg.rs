//! Small dense linear algebra over the rationals.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i64>;
/// Row-major matrix; an `r x c` matrix with `r == 0` still records `c` via
/// the explicit column count where needed.
pub type Mat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for t in 0..inner {
            let x = row[t];
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                let y = b[t][j];
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Mat, cols: usize) -> Vec<usize> {
    let rows = m.len();
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
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j];
                    if !v.is_zero() {
                        m[i][j] -= f * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat, cols: usize) -> usize {
    let mut w = m.clone();
    rref(&mut w, cols).len()
}

/// Basis of `{x : m x = 0}`, returned as column vectors.
pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<Q>> {
    let mut w = m.clone();
    let pivots = rref(&mut w, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -w[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Indices of standard basis vectors that, added one at a time, extend the
/// span of the given column vectors to the whole space.
pub fn complement_basis(span: &[Vec<Q>], dim: usize) -> Vec<usize> {
    let mut rows: Mat = span.to_vec();
    let mut r = rank(&rows, dim);
    let mut out = Vec::new();
    for e in 0..dim {
        let mut v = vec![Q::zero(); dim];
        v[e] = Q::one();
        rows.push(v);
        let r2 = rank(&rows, dim);
        if r2 > r {
            out.push(e);
            r = r2;
        } else {
            rows.pop();
        }
    }
    out
}
