//! Exact dense linear algebra over [`CycScalar`].

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

pub type Matrix = Vec<Vec<CycScalar>>;

fn check_rect(m: &Matrix) -> Result<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged matrix".into()));
    }
    Ok(cols)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det_exact(m: &Matrix) -> Result<CycScalar> {
    let cols = check_rect(m)?;
    let n = m.len();
    if n != cols && !(n == 0 && cols == 0) {
        return Err(Error::NotSquare { rows: n, cols });
    }
    if n == 0 {
        return Ok(CycScalar::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = CycScalar::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(CycScalar::zero()),
            }
        }
        let inv_prev = prev.inverse()?;
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = v.mul_ref(&inv_prev);
            }
            a[i][k] = CycScalar::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg_ref() } else { d })
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    let cols = check_rect(m)?;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inverse()?;
        for x in a[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok((a, pivots))
}

pub fn rank(m: &Matrix) -> Result<usize> {
    Ok(rref(m)?.1.len())
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &Matrix) -> Result<Vec<Vec<CycScalar>>> {
    let cols = check_rect(m)?;
    let (r, pivots) = rref(m)?;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![CycScalar::zero(); cols];
        v[free] = CycScalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = r[row][free].neg_ref();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let cols = check_rect(m)?;
    if n != cols {
        return Err(Error::NotSquare { rows: n, cols });
    }
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { CycScalar::one() } else { CycScalar::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::DivisionByZero);
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// One solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[CycScalar]) -> Result<Option<Vec<CycScalar>>> {
    let cols = check_rect(m)?;
    if b.len() != m.len() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug)?;
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![CycScalar::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Ok(Some(x))
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = CycScalar::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add_ref(&row[k].mul_ref(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Row space maintained in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<CycScalar>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(y));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if independent; returns whether the span grew.
    pub fn insert(&mut self, v: &[CycScalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(y));
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<CycScalar>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Basis of the vectors of length `cols` orthogonal to every row, one per free column.
    pub fn kernel(&self, cols: usize) -> Vec<Vec<CycScalar>> {
        let pivots = self.pivots();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![CycScalar::zero(); cols];
                v[free] = CycScalar::one();
                for (p, row) in &self.rows {
                    v[*p] = row[free].neg_ref();
                }
                v
            })
            .collect()
    }
}
