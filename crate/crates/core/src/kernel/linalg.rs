use std::fmt;

use super::{Coeff, KernelError, RatFunc, Rational};

/// Coefficient types with exact inverses of nonzero elements.
pub trait Field: Coeff {
    fn inv_ref(&self) -> Self;
    /// Rough size used to pick small pivots.
    fn weight(&self) -> usize {
        1
    }
}

impl Field for Rational {
    fn inv_ref(&self) -> Self {
        self.recip()
    }
}

impl Field for RatFunc {
    fn inv_ref(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
    fn weight(&self) -> usize {
        self.num().num_terms() + self.den().num_terms()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Matrix<C> {
    pub fn filled(rows: usize, cols: usize, zero: &C) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, template: &C) -> Self {
        let mut m = Self::filled(n, n, template);
        for i in 0..n {
            m[(i, i)] = template.one_like();
        }
        m
    }

    pub fn diagonal(entries: Vec<C>) -> Self {
        let n = entries.len();
        let mut m = Self::filled(n, n, &entries[0]);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(k, c)| (k / cols, k % cols, c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.vanishes())
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, c)| i == j || c.vanishes())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coeff, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Matrix<D>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| s.mul_ref(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let zero = self.data.first().or(o.data.first()).expect("non-empty").zero_like();
        let mut out = Matrix::filled(self.rows, o.cols, &zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.vanishes() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.vanishes() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.vanishes() && !b.vanishes() {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> C {
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add_ref(&self[(i, i)]);
        }
        acc
    }
}

impl<C: Field> Matrix<C> {
    /// Row echelon form in place; returns pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .filter(|&i| !self[(i, c)].vanishes())
                .min_by_key(|&i| self[(i, c)].weight());
            let Some(p) = best else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv_ref();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].mul_ref(&inv);
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].vanishes() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].vanishes() {
                        continue;
                    }
                    let d = f.mul_ref(&self[(r, j)]);
                    self[(i, j)] = self[(i, j)].sub_ref(&d);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn inverse(&self) -> Result<Self, KernelError> {
        if self.rows != self.cols {
            return Err(KernelError::Dimension(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let id = Matrix::identity(n, &self.data[0]);
        let mut aug = Matrix::filled(n, 2 * n, &self.data[0]);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
                aug[(i, n + j)] = id[(i, j)].clone();
            }
        }
        let pivots = aug.echelon();
        let rank = pivots.iter().filter(|&&c| c < n).count();
        if rank < n {
            return Err(KernelError::Singular { rank, size: n });
        }
        let mut out = Matrix::filled(n, n, &self.data[0]);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> C {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.data[0].one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].vanishes()) else {
                return det.zero_like();
            };
            if p != c {
                m.swap_rows(p, c);
                det = det.neg_ref();
            }
            let piv = m[(c, c)].clone();
            det = det.mul_ref(&piv);
            let inv = piv.inv_ref();
            for i in c + 1..n {
                if m[(i, c)].vanishes() {
                    continue;
                }
                let f = m[(i, c)].mul_ref(&inv);
                for j in c..n {
                    let d = f.mul_ref(&m[(c, j)]);
                    m[(i, j)] = m[(i, j)].sub_ref(&d);
                }
            }
        }
        det
    }

    /// Basis of `{x : self x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = one.clone();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }
}

/// Exact solution of `m x = b` for square nonsingular `m`.
pub fn solve_linear<C: Field>(m: &Matrix<C>, b: &[C]) -> Result<Vec<C>, KernelError> {
    let n = m.rows;
    if m.cols != n || b.len() != n {
        return Err(KernelError::Dimension(format!(
            "system {}x{} with right-hand side of length {}",
            m.rows,
            m.cols,
            b.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut aug = Matrix::filled(n, n + 1, &m.data[0]);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.echelon();
    let rank = pivots.iter().filter(|&&c| c < n).count();
    if rank < n {
        return Err(KernelError::Singular { rank, size: n });
    }
    Ok((0..n).map(|i| aug[(i, n)].clone()).collect())
}

impl<C> std::ops::Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> std::ops::IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<C: fmt::Debug> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<C: Coeff> Coeff for Matrix<C> {
    fn vanishes(&self) -> bool {
        Matrix::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        Matrix::filled(self.rows, self.cols, &self.data[0])
    }
    fn one_like(&self) -> Self {
        Matrix::identity(self.rows, &self.data[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Poly};

    #[test]
    fn identity_solve() {
        let id = Matrix::identity(3, &rat(0));
        let b = vec![rat(1), rat(-2), rat(5)];
        assert_eq!(solve_linear(&id, &b).unwrap(), b);
    }

    #[test]
    fn diagonal_symbolic_solve() {
        let a = RatFunc::var(2, 0);
        let t = RatFunc::var(2, 1);
        let z = RatFunc::zero(2);
        let m = Matrix::from_rows(vec![vec![a.clone(), z.clone()], vec![z, t.clone()]]);
        let x = solve_linear(&m, &[a, t]).unwrap();
        assert!(x.iter().all(|c| c.is_one()));
    }

    #[test]
    fn singular_reports_rank() {
        let m = Matrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
        assert_eq!(
            solve_linear(&m, &[rat(1), rat(1)]).unwrap_err(),
            KernelError::Singular { rank: 1, size: 2 }
        );
        assert_eq!(m.nullspace().len(), 1);
    }

    #[test]
    fn symbolic_inverse_and_determinant() {
        let x = RatFunc::from_poly(Poly::var(1, 0));
        let one = RatFunc::one(1);
        let m = Matrix::from_rows(vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, &one));
        assert_eq!(m.determinant(), &(&x * &x) - &one);
    }
}
