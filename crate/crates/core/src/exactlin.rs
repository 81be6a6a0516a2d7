//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices act on column vectors: a `rows x cols` matrix is a linear map
//! from `F^cols` to `F^rows`. Subspaces are stored by the reduced row
//! echelon form of a spanning set, so two subspaces are equal exactly when
//! their stored bases are equal.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(self.apply(v))
    }

    /// Unchecked matrix-vector product; callers guarantee the length.
    pub(crate) fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += a.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[k * other.cols + c];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref(&mut rows, self.cols).len()
    }

    /// Square and of full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

/// Row-reduces `rows` in place to reduced echelon form, drops zero rows and
/// returns the pivot column of each remaining row.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x *= inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F^n` in canonical reduced-echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Result<Self> {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::Shape(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
        let pivots = rref(&mut rows, ambient);
        Ok(Subspace {
            ambient,
            basis: rows,
            pivots,
        })
    }

    /// Span of the coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx.iter().map(|&i| unit_vector(ambient, i)).collect();
        Subspace {
            ambient,
            basis,
            pivots: idx,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the echelon basis from `v`; the result is zero iff `v` lies
    /// in the subspace and is supported on non-pivot columns otherwise.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= f.clone() * y.clone();
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Vectors orthogonal to the subspace under the standard pairing.
    pub fn annihilator(&self) -> Subspace<F> {
        let m = Matrix::from_rows(self.basis.clone(), self.ambient).expect("basis rows have ambient length");
        kernel(&m)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Rows of a matrix whose kernel is exactly this subspace.
    pub fn equations(&self) -> Matrix<F> {
        let ann = self.annihilator();
        Matrix::from_rows(ann.basis, self.ambient).expect("annihilator rows")
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Null space `{x : Mx = 0}` as a subspace of `F^cols`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let n = m.cols();
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n).filter(|&c| !is_pivot[c]).map(|free| {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        v
    });
    Subspace::span(n, vectors).expect("kernel vectors have length cols")
}

/// Column space of `m` as a subspace of `F^rows`.
pub fn image<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m.rows(), (0..m.cols()).map(|c| m.column(c))).expect("columns have length rows")
}

/// Some `x` with `Mx = b`, or `None` when `b` is not in the image.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut rows: Vec<Vec<F>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

/// Image of a subspace under a linear map.
pub fn apply<F: Field>(m: &Matrix<F>, v: &Subspace<F>) -> Result<Subspace<F>> {
    if v.ambient_dim() != m.cols() {
        return Err(Error::Shape(format!(
            "subspace of F^{} pushed through {}x{} matrix",
            v.ambient_dim(),
            m.rows(),
            m.cols()
        )));
    }
    Subspace::span(m.rows(), v.basis().iter().map(|b| m.apply(b)))
}

/// Coordinates of vectors with respect to an arbitrary (linearly
/// independent) basis, via a precomputed echelon transform.
#[derive(Clone, Debug)]
pub struct BasisSolver<F> {
    ambient: usize,
    size: usize,
    echelon: Vec<Vec<F>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<F>>,
}

impl<F: Field> BasisSolver<F> {
    pub fn new(ambient: usize, basis: &[Vec<F>]) -> Result<Self> {
        let k = basis.len();
        let mut rows: Vec<Vec<F>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut row = b.clone();
                row.extend(unit_vector::<F>(k, i));
                row
            })
            .collect();
        let pivots = rref(&mut rows, ambient);
        if pivots.len() != k || pivots.iter().any(|&p| p >= ambient) {
            return Err(Error::Shape("basis vectors are linearly dependent".into()));
        }
        let echelon = rows.iter().map(|r| r[..ambient].to_vec()).collect();
        let transform = rows.iter().map(|r| r[ambient..].to_vec()).collect();
        Ok(BasisSolver {
            ambient,
            size: k,
            echelon,
            pivots,
            transform,
        })
    }

    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut c = vec![F::zero(); self.size];
        let mut rest = v.to_vec();
        for ((row, t), &p) in self.echelon.iter().zip(&self.transform).zip(&self.pivots) {
            let f = rest[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= f.clone() * y.clone();
                }
            }
            for (ci, ti) in c.iter_mut().zip(t) {
                if !ti.is_zero() {
                    *ci += f.clone() * ti.clone();
                }
            }
        }
        rest.iter().all(|x| x.is_zero()).then_some(c)
    }
}

/// A basis whose vectors carry idempotent labels.
///
/// Over a split basic degree-zero part `A_0 = K^k`, a vector `b` of a
/// bimodule component satisfies `e_l b e_r = b` for its left tag `l` and
/// right tag `r`. Right modules only carry right tags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledSpace {
    pub idempotents: usize,
    pub left: Option<Vec<usize>>,
    pub right: Vec<usize>,
}

impl LabeledSpace {
    pub fn bimodule(idempotents: usize, left: Vec<usize>, right: Vec<usize>) -> Self {
        assert_eq!(left.len(), right.len(), "left and right tags differ in length");
        LabeledSpace {
            idempotents,
            left: Some(left),
            right,
        }
    }

    pub fn right_module(idempotents: usize, right: Vec<usize>) -> Self {
        LabeledSpace {
            idempotents,
            left: None,
            right,
        }
    }

    pub fn zero(idempotents: usize, with_left: bool) -> Self {
        LabeledSpace {
            idempotents,
            left: with_left.then(Vec::new),
            right: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.right.len()
    }

    pub fn left_tag(&self, i: usize) -> usize {
        self.left.as_ref().map_or(0, |l| l[i])
    }

    pub fn check(&self) -> Result<()> {
        let bad = |t: &usize| *t >= self.idempotents;
        if self.right.iter().any(bad) || self.left.iter().flatten().any(bad) {
            return Err(Error::Label(format!(
                "tag out of range for {} idempotents",
                self.idempotents
            )));
        }
        if let Some(l) = &self.left {
            if l.len() != self.right.len() {
                return Err(Error::Label("left and right tag lists differ in length".into()));
            }
        }
        Ok(())
    }
}

/// Basis of `X ⊗_{A_0} Y`: pairs `(i, j)` whose right tag of `x_i` equals
/// the left tag of `y_j`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBasis {
    pub pairs: Vec<(usize, usize)>,
    pub space: LabeledSpace,
    index: HashMap<(usize, usize), usize>,
    right_dim: usize,
}

impl TensorBasis {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }
}

pub fn matched_tensor(x: &LabeledSpace, y: &LabeledSpace) -> Result<TensorBasis> {
    if x.idempotents != y.idempotents {
        return Err(Error::Label(format!(
            "tensor over different idempotent sets ({} vs {})",
            x.idempotents, y.idempotents
        )));
    }
    x.check()?;
    y.check()?;
    let y_left = y
        .left
        .as_ref()
        .ok_or_else(|| Error::Label("right factor of a tensor needs left tags".into()))?;
    let mut pairs = Vec::new();
    let mut left = x.left.as_ref().map(|_| Vec::new());
    let mut right = Vec::new();
    let mut index = HashMap::new();
    for (i, &rx) in x.right.iter().enumerate() {
        for (j, &ly) in y_left.iter().enumerate() {
            if rx == ly {
                index.insert((i, j), pairs.len());
                pairs.push((i, j));
                if let Some(l) = left.as_mut() {
                    l.push(x.left_tag(i));
                }
                right.push(y.right[j]);
            }
        }
    }
    Ok(TensorBasis {
        pairs,
        space: LabeledSpace {
            idempotents: x.idempotents,
            left,
            right,
        },
        index,
        right_dim: y.dim(),
    })
}
