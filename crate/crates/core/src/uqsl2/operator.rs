//! Dense operators between tensor products of `U_q(sl2)` irreps.
//!
//! Factor `V_j` carries the weight basis `v_0, ..., v_{2j}` with `v_k` of
//! weight `m = j - k` (descending). Multi-indices are flattened with the
//! first factor most significant.

use crate::laurent::{LaurentScalar, Ring};
use crate::uqsl2::Spin;
use crate::Error;

#[derive(Clone, PartialEq)]
pub struct TensorOperator<S: Ring = LaurentScalar> {
    rows: Vec<Spin>,
    cols: Vec<Spin>,
    nrows: usize,
    ncols: usize,
    entries: Vec<S>,
}

pub fn space_dim(spins: &[Spin]) -> usize {
    spins.iter().map(|s| s.dim()).product()
}

/// Splits a flat index into per-factor basis indices.
pub fn unflatten(spins: &[Spin], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; spins.len()];
    for (slot, s) in spins.iter().enumerate().rev() {
        out[slot] = flat % s.dim();
        flat /= s.dim();
    }
    out
}

pub fn flatten(spins: &[Spin], idx: &[usize]) -> usize {
    spins.iter().zip(idx).fold(0, |acc, (s, &k)| acc * s.dim() + k)
}

impl<S: Ring> TensorOperator<S> {
    pub fn zeros(rows: Vec<Spin>, cols: Vec<Spin>) -> Self {
        let nrows = space_dim(&rows);
        let ncols = space_dim(&cols);
        Self { rows, cols, nrows, ncols, entries: vec![S::zero(); nrows * ncols] }
    }

    pub fn identity(spins: Vec<Spin>) -> Self {
        let mut op = Self::zeros(spins.clone(), spins);
        for i in 0..op.nrows {
            op.entries[i * op.ncols + i] = S::one();
        }
        op
    }

    pub fn from_fn(rows: Vec<Spin>, cols: Vec<Spin>, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut op = Self::zeros(rows, cols);
        for r in 0..op.nrows {
            for c in 0..op.ncols {
                op.entries[r * op.ncols + c] = f(r, c);
            }
        }
        op
    }

    pub fn row_spins(&self) -> &[Spin] {
        &self.rows
    }

    pub fn col_spins(&self) -> &[Spin] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.entries[r * self.ncols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Non-zero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (i / self.ncols, i % self.ncols, v))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> TensorOperator<T> {
        TensorOperator {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.times(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = a.plus(b);
            }
        }
        Ok(out)
    }

    /// `self ∘ rhs`; the inner index tuples must agree factor for factor.
    pub fn compose(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = Self::zeros(self.rows.clone(), rhs.cols.clone());
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.ncols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.entries[r * out.ncols + c];
                    *cell = cell.plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, `self` on the leading factors.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = [self.rows.clone(), other.rows.clone()].concat();
        let cols = [self.cols.clone(), other.cols.clone()].concat();
        let mut out = Self::zeros(rows, cols);
        for (r1, c1, a) in self.nonzeros() {
            for (r2, c2, b) in other.nonzeros() {
                out.set(r1 * other.nrows + r2, c1 * other.ncols + c2, a.times(b));
            }
        }
        out
    }

    /// Sum of diagonal entries; requires identical row and column factors.
    pub fn trace(&self) -> Result<S, Error> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        Ok((0..self.nrows).fold(S::zero(), |acc, i| acc.plus(self.get(i, i))))
    }

    /// If `self = s * id`, returns `s`.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<S> {
        if !self.is_square() {
            return None;
        }
        let s = self.get(0, 0).clone();
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let v = self.get(r, c);
                let ok = if r == c { *v == s } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// `(id ⊗ local ⊗ id) ∘ self`, with `local` acting on the two row
    /// factors starting at `slot`.
    pub fn apply_two_site(&self, slot: usize, local: &Self) -> Result<Self, Error> {
        if local.cols.len() != 2
            || local.rows.len() != 2
            || slot + 1 >= self.rows.len()
            || self.rows[slot..slot + 2] != local.cols[..]
        {
            return Err(Error::ShapeMismatch);
        }
        let mut new_rows = self.rows.clone();
        new_rows[slot] = local.rows[0];
        new_rows[slot + 1] = local.rows[1];
        let mut out = Self::zeros(new_rows.clone(), self.cols.clone());
        // local columns indexed by (k_slot, k_slot+1)
        let mut by_col: Vec<Vec<(usize, &S)>> = vec![Vec::new(); local.ncols];
        for (r, c, v) in local.nonzeros() {
            by_col[c].push((r, v));
        }
        let d_out1 = local.rows[1].dim();
        let d_in1 = local.cols[1].dim();
        let ncols = self.ncols;
        let rows_of = |flat: usize| unflatten(&self.rows, flat);
        let body = |r: usize| -> Vec<(usize, S)> {
            let idx = rows_of(r);
            let local_c = idx[slot] * d_in1 + idx[slot + 1];
            let mut acc = Vec::new();
            for &(lr, v) in &by_col[local_c] {
                let mut nidx = idx.clone();
                nidx[slot] = lr / d_out1;
                nidx[slot + 1] = lr % d_out1;
                acc.push((flatten(&new_rows, &nidx), v.clone()));
            }
            acc
        };
        for r in 0..self.nrows {
            let targets = body(r);
            if targets.is_empty() {
                continue;
            }
            for c in 0..ncols {
                let x = self.get(r, c);
                if x.is_zero() {
                    continue;
                }
                for (nr, v) in &targets {
                    let cell = &mut out.entries[nr * ncols + c];
                    *cell = cell.plus(&v.times(x));
                }
            }
        }
        Ok(out)
    }
}

impl<S: Ring + std::fmt::Display> std::fmt::Debug for TensorOperator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "TensorOperator {:?} <- {:?}", self.rows, self.cols)?;
        for r in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
