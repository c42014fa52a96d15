use nalgebra::DMatrix;
use num::complex::Complex64;
use rayon::prelude::*;

/// Compressed sparse row matrix with complex entries; columns sorted per row.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseOperator {
    /// Builds from (row, col, value) triplets; duplicates are summed.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            assert!(r < n && c < n, "triplet ({r}, {c}) out of range for dimension {n}");
            if last == Some((r, c)) {
                *values.last_mut().expect("previous entry") += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self {
            n,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Builds row by row; `row(i)` must return entries with increasing columns.
    pub(crate) fn from_rows(n: usize, row: impl Fn(usize, &mut Vec<(usize, Complex64)>) + Sync) -> Self {
        let rows: Vec<Vec<(usize, Complex64)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut buf = Vec::with_capacity(9);
                row(i, &mut buf);
                buf
            })
            .collect();
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut col_idx = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        for r in rows {
            for (c, v) in r {
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            n,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, (0..n).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.col_idx[a..b]
            .iter()
            .copied()
            .zip(self.values[a..b].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col_idx[a..b].binary_search(&j) {
            Ok(k) => self.values[a + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// y = M x. Rows are computed independently, so the result does not
    /// depend on the number of threads.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        y.par_chunks_mut(1024).enumerate().for_each(|(chunk, ys)| {
            let base = chunk * 1024;
            for (off, yi) in ys.iter_mut().enumerate() {
                let i = base + off;
                let mut acc = Complex64::new(0.0, 0.0);
                for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                    acc += self.values[k] * x[self.col_idx[k]];
                }
                *yi = acc;
            }
        });
    }

    /// max |M_ij − conj(M_ji)|.
    pub fn hermiticity_residual(&self) -> f64 {
        (0..self.n)
            .into_par_iter()
            .map(|i| {
                self.row(i)
                    .map(|(j, v)| (v - self.get(j, i).conj()).norm())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// A ⊕ B = A ⊗ I + I ⊗ B on the index layout i_a + dim(A)·i_b.
    pub fn kronecker_sum(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.n, b.n);
        Self::from_rows(na * nb, |idx, out| {
            let (ia, ib) = (idx % na, idx / na);
            let mut entries: Vec<(usize, Complex64)> = a.row(ia).map(|(j, v)| (j + na * ib, v)).collect();
            entries.extend(b.row(ib).map(|(j, v)| (ia + na * j, v)));
            entries.sort_by_key(|e| e.0);
            for (c, v) in entries {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => out.push((c, v)),
                }
            }
        })
    }
}
