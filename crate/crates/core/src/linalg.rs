//! Gaussian elimination over a tower field.
//!
//! Matrices are row-major `Vec<Vec<Elem>>`. Pivots are taken as the first
//! nonzero entry in each column, which keeps results deterministic.

use crate::error::{Error, Result};
use crate::tower::{Elem, Tower};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(t: &Tower, m: &mut Matrix) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
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
        let inv = t.inv(&m[r][c])?;
        if !inv.is_one() {
            for x in m[r][c..].iter_mut() {
                *x = t.mul(x, &inv);
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if !m[r][j].is_zero() {
                    m[i][j] = &m[i][j] - &t.mul(&f, &m[r][j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank(t: &Tower, m: &[Vec<Elem>]) -> Result<usize> {
    let mut m = m.to_vec();
    Ok(row_reduce(t, &mut m)?.len())
}

/// Basis of `{x : m·x = 0}` for a matrix with `cols` columns.
pub fn nullspace(t: &Tower, m: &[Vec<Elem>], cols: usize) -> Result<Matrix> {
    let mut m = m.to_vec();
    let pivots = row_reduce(t, &mut m)?;
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Elem::zero(); cols];
        x[f] = Elem::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -&m[i][f];
        }
        basis.push(x);
    }
    Ok(basis)
}

/// Some solution of `m·x = b`, or `None` if the system is inconsistent.
pub fn solve(t: &Tower, m: &[Vec<Elem>], b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut row = row.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = row_reduce(t, &mut aug)?;
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Elem::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Ok(Some(x))
}

/// Inverse of a square matrix.
pub fn inverse(t: &Tower, m: &[Vec<Elem>]) -> Result<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|j| if i == j { Elem::one() } else { Elem::zero() }));
            row
        })
        .collect();
    let pivots = row_reduce(t, &mut aug)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::BasisDependent);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(t: &Tower, m: &[Vec<Elem>], x: &[Elem]) -> Vec<Elem> {
    m.iter().map(|row| dot(t, row, x)).collect()
}

pub fn dot(t: &Tower, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Elem::zero(), |acc, (x, y)| &acc + &t.mul(x, y))
}

pub fn transpose(m: &[Vec<Elem>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// `Σ coeffs[i]·vectors[i]`.
pub fn combine(t: &Tower, coeffs: &[Elem], vectors: &[Vec<Elem>]) -> Vec<Elem> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = vec![Elem::zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = &*o + &t.mul(c, x);
            }
        }
    }
    out
}

/// Vectors from `candidates` that extend the span of `start`, chosen greedily
/// in order; together with `start` they span the same space as both lists.
pub fn extend_basis(t: &Tower, start: &[Vec<Elem>], candidates: &[Vec<Elem>]) -> Result<Matrix> {
    let mut span: Matrix = start.to_vec();
    let mut r = rank(t, &span)?;
    let mut added = Vec::new();
    for c in candidates {
        span.push(c.clone());
        let r2 = rank(t, &span)?;
        if r2 > r {
            r = r2;
            added.push(c.clone());
        } else {
            span.pop();
        }
    }
    Ok(added)
}

/// Coordinates of `x` (at level ≤ `hi`) over level `lo`: the coefficients of
/// the monomial basis `θ_{lo+1}^{i_1}⋯θ_{hi}^{i_hi}`, slowest index at `hi`.
pub fn coords_over(t: &Tower, x: &Elem, lo: usize, hi: usize) -> Vec<Elem> {
    if hi == lo {
        return vec![x.clone()];
    }
    let d = t.degree_of(hi);
    (0..d)
        .flat_map(|i| coords_over(t, &x.coeff(hi, i), lo, hi - 1))
        .collect()
}

/// Inverse of [`coords_over`].
pub fn from_coords(t: &Tower, v: &[Elem], lo: usize, hi: usize) -> Elem {
    if hi == lo {
        return v[0].clone();
    }
    let chunk = t.degree_between(lo, hi - 1);
    let coeffs = v.chunks(chunk).map(|c| from_coords(t, c, lo, hi - 1)).collect();
    Elem::from_coeffs(hi, coeffs)
}

/// The monomial basis of level `hi` over level `lo`, in [`coords_over`] order.
pub fn monomial_basis(t: &Tower, lo: usize, hi: usize) -> Vec<Elem> {
    let n = t.degree_between(lo, hi);
    (0..n)
        .map(|i| {
            let mut v = vec![Elem::zero(); n];
            v[i] = Elem::one();
            from_coords(t, &v, lo, hi)
        })
        .collect()
}
