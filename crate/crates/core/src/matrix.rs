//! Dense matrices of polynomials; columns are images of basis vectors.

use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::FreeVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::scalar(ring, n, &Poly::one(ring))
    }

    /// `f * I_n`.
    pub fn scalar(_ring: &Ring, n: usize, f: &Poly) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[FreeVector]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.rank(), rows, "column rank mismatch");
            for i in 0..rows {
                m.set(i, j, c.get(i).clone());
            }
        }
        m
    }

    /// Row-major construction.
    pub fn from_rows(rows: Vec<Vec<Poly>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, f: Poly) {
        self.data[i * self.cols + j] = f;
    }

    pub fn column(&self, j: usize) -> FreeVector {
        FreeVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> FreeVector {
        FreeVector::new((0..self.cols).map(|j| self.get(i, j).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, ring: &Ring, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(ring, &a.mul(ring, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, ring: &Ring, v: &FreeVector) -> FreeVector {
        assert_eq!(self.cols, v.rank(), "matrix/vector shape mismatch");
        let mut out = vec![Poly::zero(); self.rows];
        for (k, vk) in v.components().iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o = o.add(ring, &a.mul(ring, vk));
                }
            }
        }
        FreeVector::new(out)
    }

    pub fn add(&self, ring: &Ring, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(ring, b)).collect(),
        }
    }

    pub fn sub(&self, ring: &Ring, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(ring, b)).collect(),
        }
    }

    pub fn mul_poly(&self, ring: &Ring, f: &Poly) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(ring, f)).collect() }
    }

    pub fn neg(&self, ring: &Ring) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.neg(ring)).collect() }
    }

    /// Block matrix from a grid of blocks; `row_sizes`/`col_sizes` fix the
    /// shape so that `None` blocks are zero.
    pub fn blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Matrix>>]) -> Matrix {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Matrix::zero(rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!((b.rows, b.cols), (rs, cs), "block ({bi},{bj}) has wrong shape");
                    for i in 0..rs {
                        for j in 0..cs {
                            out.set(r0 + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    pub fn block_diagonal(parts: &[&Matrix]) -> Matrix {
        let rs: Vec<usize> = parts.iter().map(|m| m.rows).collect();
        let cs: Vec<usize> = parts.iter().map(|m| m.cols).collect();
        let grid: Vec<Vec<Option<&Matrix>>> = (0..parts.len())
            .map(|i| (0..parts.len()).map(|j| (i == j).then_some(parts[i])).collect())
            .collect();
        Self::blocks(&rs, &cs, &grid)
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cs: Vec<usize> = parts.iter().map(|m| m.cols).collect();
        Self::blocks(&[rows], &cs, &[parts.iter().map(|m| Some(*m)).collect()])
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rs: Vec<usize> = parts.iter().map(|m| m.rows).collect();
        let grid: Vec<Vec<Option<&Matrix>>> = parts.iter().map(|m| vec![Some(*m)]).collect();
        Self::blocks(&rs, &[cols], &grid)
    }

    /// Rows `rows` and columns `cols` as a new matrix.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product with an identity: `self ⊗ I_n` (each entry becomes
    /// an `n × n` scalar block).
    pub fn kron_identity(&self, n: usize) -> Matrix {
        let mut out = Matrix::zero(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out.set(i * n + k, j * n + k, a.clone());
                }
            }
        }
        out
    }

    /// `I_n ⊗ self` (block diagonal with `n` copies).
    pub fn identity_kron(&self, n: usize) -> Matrix {
        let copies: Vec<&Matrix> = std::iter::repeat_n(self, n).collect();
        Self::block_diagonal(&copies)
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_canonical(&self, ring: &Ring) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_canonical(ring)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    #[test]
    fn multiplication_and_transpose() {
        let r = Ring::bare(7, vec!["x".into()], MonomialOrder::Grevlex).unwrap();
        let p = |s: &str| Poly::parse(&r, s).unwrap();
        let a = Matrix::from_rows(vec![vec![p("x"), p("1")]], 2);
        let b = Matrix::from_rows(vec![vec![p("x")], vec![p("6*x^2")]], 1);
        let ab = a.mul(&r, &b);
        assert!(ab.is_zero());
        assert_eq!(a.transpose(), Matrix::from_rows(vec![vec![p("x")], vec![p("1")]], 1));
        let k = a.kron_identity(2);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k.get(1, 3), &p("1"));
        assert_eq!(a.identity_kron(2).get(1, 2), &p("x"));
    }
}
