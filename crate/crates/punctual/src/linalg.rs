//! Dense exact linear algebra over the rationals.
//!
//! [`Matrix`] is a plain row-major store. [`Subspace`] keeps its basis in
//! reduced row-echelon form with pivot columns strictly increasing, pivot
//! entries equal to one and zeros elsewhere in pivot columns. That form is a
//! canonical representative of the subspace, so `==` on two subspaces of the
//! same ambient space decides equality of the spaces themselves.

use crate::rat::Rat;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [Rat] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Rat]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        self.rows_iter()
            .map(|row| row.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduced row-echelon form. Returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            // find a row at or below `lead` with a nonzero entry in this column
            let Some(src) = (lead..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.data.swap_chunks(src, lead, self.cols);
            let inv = {
                let p = &self[(lead, col)];
                Rat::one() / p.clone()
            };
            for x in self.row_mut(lead) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            for r in 0..self.rows {
                if r == lead || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                let (head, tail) = split_rows(&mut self.data, self.cols, r, lead);
                for (x, p) in head.iter_mut().zip(tail.iter()) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Right kernel `{v : Mv = 0}` as a canonical subspace of `Q^cols`.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, c) in pivots.iter().copied().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (c, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = -m[(*r, free)].clone();
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }

    /// One solution of `Mx = b` when the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "rhs length differs from row count");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, c) in pivots.iter().copied().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Determinant by fraction-producing elimination; square matrices only.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if src != col {
                m.data.swap_chunks(src, col, n);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            let inv = Rat::one() / pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                let (head, tail) = split_rows(&mut m.data, n, r, col);
                for (x, p) in head.iter_mut().zip(tail.iter()) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
        }
        det
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.rows_iter() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Swap two equally sized row chunks of a flat buffer.
trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<Rat> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b || width == 0 {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (left, right) = self.split_at_mut(hi * width);
        left[lo * width..(lo + 1) * width].swap_with_slice(&mut right[..width]);
    }
}

/// Disjoint mutable/shared views of rows `r` and `p` (`r != p`).
fn split_rows(data: &mut [Rat], width: usize, r: usize, p: usize) -> (&mut [Rat], &[Rat]) {
    debug_assert_ne!(r, p);
    if r < p {
        let (a, b) = data.split_at_mut(p * width);
        (&mut a[r * width..(r + 1) * width], &b[..width])
    } else {
        let (a, b) = data.split_at_mut(r * width);
        (&mut b[..width], &a[p * width..(p + 1) * width])
    }
}

/// A linear subspace of `Q^ambient` in canonical form.
///
/// Structural equality of two `Subspace` values with the same ambient
/// dimension coincides with equality of the subspaces: the reduced
/// row-echelon basis of a subspace is unique.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the given vectors inside `Q^ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length differs from ambient");
        let mut m = Matrix::from_rows(vectors);
        if m.rows == 0 {
            m = Matrix::zeros(0, ambient);
        }
        let pivots = m.rref();
        let basis = Matrix {
            rows: pivots.len(),
            cols: ambient,
            data: m.data[..pivots.len() * ambient.max(1)].to_vec(),
        };
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::span(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect();
        Subspace::span(ambient, rows)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.row_count()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    /// Canonical basis rows, pivots strictly increasing.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; the corresponding coordinate subspace is a
    /// complement of this subspace.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Residual of `v` after eliminating all pivot coordinates; zero exactly
    /// when `v` lies in the subspace.
    pub fn reduce_vector(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient, "ambient dimensions differ");
        let mut w = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if w[c].is_zero() {
                continue;
            }
            let factor = w[c].clone();
            for (x, b) in w.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *x -= &factor * b;
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        self.reduce_vector(v).iter().all(Rat::is_zero)
    }

    /// Whether `other` is contained in `self`. Panics when the ambient
    /// dimensions differ.
    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        other.basis.rows_iter().all(|row| self.contains_vector(row))
    }

    /// Sum of subspaces. Panics when the ambient dimensions differ.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let rows = self
            .basis
            .rows_iter()
            .chain(other.basis.rows_iter())
            .map(<[Rat]>::to_vec)
            .collect();
        Subspace::span(self.ambient, rows)
    }

    /// Intersection of subspaces. Panics when the ambient dimensions differ.
    ///
    /// A combination row `(u, w)` of the stacked basis with `u A + w B = 0`
    /// yields the intersection vector `u A`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let stacked = self.basis.vcat(&other.basis).transpose();
        let combos = stacked.kernel();
        let ra = self.dim();
        let mut rows = Vec::with_capacity(combos.dim());
        for combo in combos.basis.rows_iter() {
            let mut v = vec![Rat::zero(); self.ambient];
            for (i, c) in combo[..ra].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x += c * b;
                }
            }
            rows.push(v);
        }
        Subspace::span(self.ambient, rows)
    }

    /// Annihilator under the standard pairing: `{x : B x = 0}` for the basis
    /// matrix `B`. Lives in the dual, which we identify with `Q^ambient`.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of Q^{}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Dimension formula helper used in tests: `dim(A) + dim(B)`.
pub fn dim_sum(a: &Subspace, b: &Subspace) -> usize {
    a.dim() + b.dim()
}

/// Standard basis vector of `Q^n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Dot product of two equal-length slices.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Scale-invariant canonical form of a nonzero vector: divide by the first
/// nonzero entry. Used when comparing projective data.
pub fn projective_normalize(v: &[Rat]) -> Option<Vec<Rat>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = Rat::one() / lead.clone();
    Some(v.iter().map(|x| x * &inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_canonical_form() {
        let s = Subspace::span(3, vec![v(&[2, 4, 0]), v(&[1, 2, 1])]);
        // pivots at 0 and 2, pivot columns cleared elsewhere
        assert_eq!(s.pivots(), &[0, 2]);
        assert_eq!(s.basis().row(0), &v(&[1, 2, 0])[..]);
        assert_eq!(s.basis().row(1), &v(&[0, 0, 1])[..]);
    }

    #[test]
    fn span_is_order_independent() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, vec![v(&[1, 2, 1]), v(&[1, 1, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_example_matrix() {
        // x + y + z = 0 has a 2-dimensional kernel
        let m = Matrix::from_rows(vec![v(&[1, 1, 1])]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains_vector(&v(&[1, -1, 0])));
        assert!(k.contains_vector(&v(&[0, 1, -1])));
        assert!(!k.contains_vector(&v(&[1, 0, 0])));
    }

    #[test]
    fn sum_intersect_modular_dimensions() {
        let a = Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        let b = Subspace::span(4, vec![v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        let s = a.sum(&b);
        let i = a.intersect(&b);
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vector(&v(&[0, 1, 0, 0])));
        assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    }

    #[test]
    fn containment_and_annihilator() {
        let a = Subspace::span(3, vec![v(&[1, 0, 1])]);
        let b = Subspace::span(3, vec![v(&[1, 0, 1]), v(&[0, 1, 0])]);
        assert!(b.contains(&a));
        assert!(!a.contains(&b));
        let ann = b.annihilator();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains_vector(&v(&[1, 0, -1])));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(vec![v(&[1, 2]), v(&[2, 4])]);
        assert_eq!(m.solve(&v(&[3, 6])), Some(vec![rat(3), rat(0)]));
        assert_eq!(m.solve(&v(&[3, 7])), None);
    }

    #[test]
    fn determinant_values() {
        let m = Matrix::from_rows(vec![v(&[2, 1]), v(&[1, 1])]);
        assert_eq!(m.det(), rat(1));
        let singular = Matrix::from_rows(vec![v(&[1, 2]), v(&[2, 4])]);
        assert_eq!(singular.det(), rat(0));
        let half = Matrix::from_rows(vec![
            vec![ratio(1, 2), rat(0)],
            vec![rat(0), ratio(1, 3)],
        ]);
        assert_eq!(half.det(), ratio(1, 6));
    }

    #[test]
    #[should_panic(expected = "ambient dimensions differ")]
    fn mismatched_ambient_panics() {
        let a = Subspace::span(2, vec![v(&[1, 0])]);
        let b = Subspace::span(3, vec![v(&[1, 0, 0])]);
        let _ = a.sum(&b);
    }
}
