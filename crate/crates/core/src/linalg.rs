//! Exact linear algebra over ℚ(i).
//!
//! A [`Subspace`] is stored by the reduced row echelon form of a basis, so
//! two subspaces are equal exactly when their stored bases are identical.
//! Everything else (sums, intersections, images, preimages, quotients) is
//! built on the single primitive [`rref`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exactfield::{GaussianRational, Rational};

pub type Scalar = GaussianRational;
pub type Vector = Vec<Scalar>;

/// Dense row-major matrix. As a linear map it acts on column vectors, so a
/// `rows × cols` matrix maps `K^cols` to `K^rows`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(CoreError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(CoreError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self> {
        Ok(Matrix::from_rows(columns, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
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

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(Scalar::is_real)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(CoreError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(CoreError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(CoreError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(CoreError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Kronecker product, matching the basis order `e_i ⊗ e'_j ↦ i·n' + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&mut rows, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&rows[r][f];
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).ok()?;
        let mut rows = aug.row_vectors();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[..n].iter().copied().ne(0..n) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate().take(n) {
            for j in 0..n {
                inv[(i, j)] = row[n + j].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// Gaussian integer `re + im·i`, used for fraction-free elimination.
#[derive(Clone)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// `(self·a − other·b) / d`, the division being exact.
    fn cross_div(a: &GaussInt, x: &GaussInt, b: &GaussInt, y: &GaussInt, d: Option<&GaussInt>) -> GaussInt {
        let ax = a.mul(x);
        let by = b.mul(y);
        let diff = GaussInt {
            re: ax.re - by.re,
            im: ax.im - by.im,
        };
        match d {
            None => diff,
            Some(d) => diff.exact_div(d),
        }
    }

    fn exact_div(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        debug_assert!((&re % &norm).is_zero() && (&im % &norm).is_zero());
        GaussInt {
            re: re / &norm,
            im: im / &norm,
        }
    }
}

/// Clears denominators of a row and removes the integer content.
fn integral_row(row: &[Scalar]) -> Vec<GaussInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.re.denom()).lcm(x.im.denom());
    }
    let mut out: Vec<GaussInt> = row
        .iter()
        .map(|x| GaussInt {
            re: x.re.numer() * (&lcm / x.re.denom()),
            im: x.im.numer() * (&lcm / x.im.denom()),
        })
        .collect();
    let content = out.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.re).gcd(&x.im));
    if !content.is_zero() && !content.is_one() {
        for x in out.iter_mut() {
            x.re /= &content;
            x.im /= &content;
        }
    }
    out
}

/// Reduces `rows` (each of length `cols`) to reduced row echelon form and
/// returns the pivot columns. Zero rows end up at the bottom.
///
/// Elimination is fraction-free over ℤ[i] (each step divides exactly by
/// the previous pivot, so intermediate entries stay minors of the input);
/// the single division by the final pivot happens at the end.
pub(crate) fn rref_in_place(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut m: Vec<Vec<GaussInt>> = rows.iter().map(|r| integral_row(r)).collect();
    let mut pivots = Vec::new();
    let mut prev: Option<GaussInt> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (before, rest) = m.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        let piv = pivot_row[c].clone();
        for other in before.iter_mut().chain(after.iter_mut()) {
            let factor = other[c].clone();
            if factor.is_zero() {
                if let Some(d) = &prev {
                    if d.re != piv.re || d.im != piv.im {
                        for x in other.iter_mut().filter(|x| !x.is_zero()) {
                            *x = piv.mul(x).exact_div(d);
                        }
                    }
                } else {
                    for x in other.iter_mut().filter(|x| !x.is_zero()) {
                        *x = piv.mul(x);
                    }
                }
                continue;
            }
            for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                *x = GaussInt::cross_div(&piv, x, &factor, y, prev.as_ref());
            }
        }
        prev = Some(piv);
        pivots.push(c);
        r += 1;
    }
    let zero = Scalar::zero();
    if let Some(d) = prev {
        // Every pivot entry now equals the last pivot `d`.
        let norm = &d.re * &d.re + &d.im * &d.im;
        for (out, row) in rows.iter_mut().zip(&m).take(pivots.len()) {
            for (o, x) in out.iter_mut().zip(row) {
                *o = if x.is_zero() {
                    zero.clone()
                } else if d.im.is_zero() {
                    GaussianRational::new(
                        Rational::new(x.re.clone(), d.re.clone()),
                        Rational::new(x.im.clone(), d.re.clone()),
                    )
                } else {
                    GaussianRational::new(
                        Rational::new(&x.re * &d.re + &x.im * &d.im, norm.clone()),
                        Rational::new(&x.im * &d.re - &x.re * &d.im, norm.clone()),
                    )
                };
            }
        }
    }
    for out in rows.iter_mut().skip(pivots.len()) {
        for o in out.iter_mut() {
            *o = zero.clone();
        }
    }
    pivots
}

/// Reduced row echelon form and rank. The output has the input's shape with
/// zero rows moved to the bottom.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut rows = m.row_vectors();
    let rank = rref_in_place(&mut rows, m.cols).len();
    let out = Matrix::from_rows(&rows, m.cols).expect("rows keep their length");
    (out, rank)
}

/// A linear subspace of `K^n`, stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = Matrix::identity(ambient_dim).row_vectors();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of `vectors`, each of length `ambient_dim`.
    pub fn span<V: AsRef<[Scalar]>>(vectors: &[V], ambient_dim: usize) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient_dim {
                return Err(CoreError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v.to_vec());
            }
        }
        Ok(Self::from_rows_unchecked(rows, ambient_dim))
    }

    pub(crate) fn from_rows_unchecked(mut rows: Vec<Vector>, ambient_dim: usize) -> Self {
        let pivots = rref_in_place(&mut rows, ambient_dim);
        rows.truncate(pivots.len());
        Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis rows (reduced row echelon form).
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.basis, self.ambient_dim).expect("basis rows have ambient length")
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Residual of `v` after eliminating the pivot coordinates; zero iff `v`
    /// lies in the subspace.
    fn residual(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.residual(v).iter().all(Scalar::is_zero)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && other.dim() <= self.dim()
            && other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.contains(other) {
            return Ok(self.clone());
        }
        if other.contains(self) {
            return Ok(other.clone());
        }
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows_unchecked(rows, self.ambient_dim))
    }

    /// Intersection via the left kernel of the stacked bases: `x·A = y·B`
    /// gives the common vectors `x·A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        let k = self.dim();
        let stacked: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        let m = Matrix::from_rows(&stacked, self.ambient_dim)?.transpose();
        let common: Vec<Vector> = m
            .kernel()
            .into_iter()
            .map(|coeffs| combine(&self.basis, &coeffs[..k], self.ambient_dim))
            .collect();
        Ok(Self::from_rows_unchecked(common, self.ambient_dim))
    }

    /// `dim self − dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        self.check_ambient(sub)?;
        if !self.contains(sub) {
            return Err(CoreError::NotContained("the numerator subspace".into()));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Entry-wise conjugate subspace.
    pub fn conj(&self) -> Subspace {
        if self.basis.iter().flatten().all(Scalar::is_real) {
            return self.clone();
        }
        let rows = self
            .basis
            .iter()
            .map(|v| v.iter().map(Scalar::conj).collect())
            .collect();
        Self::from_rows_unchecked(rows, self.ambient_dim)
    }

    /// Stable under conjugation. In canonical form this is equivalent to a
    /// basis with real entries.
    pub fn is_real(&self) -> bool {
        self.basis.iter().flatten().all(Scalar::is_real)
    }

    /// Coordinates of `v ∈ self` in the canonical basis (the entries of `v`
    /// at the pivot columns).
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vector> {
        if !self.contains_vector(v) {
            return Err(CoreError::NotContained("the subspace".into()));
        }
        Ok(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The subspace `sub ⊆ self` expressed in coordinates of `self`.
    pub fn restrict(&self, sub: &Subspace) -> Result<Subspace> {
        if !self.contains(sub) {
            return Err(CoreError::NotContained("the ambient subspace".into()));
        }
        let rows: Vec<Vector> = sub
            .basis
            .iter()
            .map(|v| self.pivots.iter().map(|&p| v[p].clone()).collect())
            .collect();
        Ok(Self::from_rows_unchecked(rows, self.dim()))
    }

    /// `n × dim` matrix whose columns are the canonical basis vectors.
    pub fn inclusion_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis, self.ambient_dim).expect("basis rows have ambient length")
    }

    /// The projection `K^n → K^n / self`, with the quotient identified with
    /// the non-pivot coordinates.
    pub fn quotient_matrix(&self) -> Matrix {
        let free: Vec<usize> = (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect();
        let mut q = Matrix::zeros(free.len(), self.ambient_dim);
        for (i, &f) in free.iter().enumerate() {
            q[(i, f)] = Scalar::one();
            for (row, &p) in self.basis.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    q[(i, p)] = -&row[f];
                }
            }
        }
        q
    }

    /// Vectors completing a basis of `self` (which must contain `sub`) over
    /// `sub`, chosen greedily from the canonical basis of `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Result<Vec<Vector>> {
        if !self.contains(sub) {
            return Err(CoreError::NotContained("the larger subspace".into()));
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if acc.dim() == self.dim() {
                break;
            }
            if !acc.contains_vector(v) {
                acc = acc.sum(&Subspace::from_rows_unchecked(vec![v.clone()], self.ambient_dim))?;
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    /// Embeds into `K^{offset + n + trailing}` at coordinates `offset..offset+n`.
    pub fn embed(&self, offset: usize, total: usize) -> Subspace {
        let rows = self
            .basis
            .iter()
            .map(|v| {
                let mut w = vec![Scalar::zero(); total];
                w[offset..offset + v.len()].clone_from_slice(v);
                w
            })
            .collect();
        Self::from_rows_unchecked(rows, total)
    }

    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let total = self.ambient_dim + other.ambient_dim;
        self.embed(0, total)
            .sum(&other.embed(self.ambient_dim, total))
            .expect("same ambient after embedding")
    }
}

fn combine(basis: &[Vector], coeffs: &[Scalar], n: usize) -> Vector {
    let mut out = vec![Scalar::zero(); n];
    for (c, v) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

/// Sum of a family of subspaces of `K^n`.
pub fn sum_all<'a, I: IntoIterator<Item = &'a Subspace>>(spaces: I, ambient_dim: usize) -> Result<Subspace> {
    let mut rows = Vec::new();
    for s in spaces {
        if s.ambient_dim() != ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: ambient_dim,
                found: s.ambient_dim(),
            });
        }
        rows.extend(s.basis().iter().cloned());
    }
    Ok(Subspace::from_rows_unchecked(rows, ambient_dim))
}

/// `f(a)` for `f: K^n → K^m` and `a ⊆ K^n`.
pub fn image(f: &Matrix, a: &Subspace) -> Result<Subspace> {
    if f.cols() != a.ambient_dim() {
        return Err(CoreError::DimensionMismatch {
            expected: f.cols(),
            found: a.ambient_dim(),
        });
    }
    let rows = a.basis().iter().map(|v| f.apply(v)).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_rows_unchecked(rows, f.rows()))
}

/// `f⁻¹(b)` for `f: K^n → K^m` and `b ⊆ K^m`.
pub fn preimage(f: &Matrix, b: &Subspace) -> Result<Subspace> {
    if f.rows() != b.ambient_dim() {
        return Err(CoreError::DimensionMismatch {
            expected: f.rows(),
            found: b.ambient_dim(),
        });
    }
    let composite = b.quotient_matrix().mul(f)?;
    Ok(Subspace::from_rows_unchecked(composite.kernel(), f.cols()))
}

/// Kernel of `f` as a subspace of its source.
pub fn kernel(f: &Matrix) -> Subspace {
    Subspace::from_rows_unchecked(f.kernel(), f.cols())
}

pub fn conj_subspace(a: &Subspace) -> Subspace {
    a.conj()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn v(items: &[&str]) -> Vector {
        items.iter().map(|s| g(s)).collect()
    }

    fn m(rows: &[&[&str]]) -> Matrix {
        let rs: Vec<Vector> = rows.iter().map(|r| v(r)).collect();
        Matrix::from_rows(&rs, rs[0].len()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, rank) = rref(&m(&[&["2", "0"], &["0", "2"]]));
        assert_eq!((r, rank), (Matrix::identity(2), 2));
        let (r, rank) = rref(&m(&[&["1", "i"], &["i", "-1"]]));
        assert_eq!(rank, 1);
        assert_eq!(r, m(&[&["1", "i"], &["0", "0"]]));
        let (r, rank) = rref(&Matrix::zeros(3, 3));
        assert_eq!((r, rank), (Matrix::zeros(3, 3), 0));
    }

    #[test]
    fn span_examples() {
        let empty: Vec<Vector> = vec![];
        assert_eq!(Subspace::span(&empty, 3).unwrap(), Subspace::zero(3));
        assert_eq!(
            Subspace::span(&[v(&["1", "0"]), v(&["1", "1"])], 2).unwrap(),
            Subspace::full(2)
        );
        let line = Subspace::span(&[v(&["1", "3+i"]), v(&["2", "6+2i"])], 2).unwrap();
        assert_eq!(line, Subspace::span(&[v(&["1", "3+i"])], 2).unwrap());
        assert_eq!(line.dim(), 1);
        assert!(matches!(
            Subspace::span(&[v(&["1"])], 2),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let a = Subspace::span(&[v(&["1", "2", "0"]), v(&["0", "1", "1"])], 3).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        let x = Subspace::span(&[v(&["1", "0"])], 2).unwrap();
        let y = Subspace::span(&[v(&["0", "1"])], 2).unwrap();
        assert!(x.intersect(&y).unwrap().is_zero());
        let p = Subspace::span(&[v(&["1", "i"])], 2).unwrap();
        let q = Subspace::span(&[v(&["1", "-i"])], 2).unwrap();
        assert!(p.intersect(&q).unwrap().is_zero());
        assert!(a.intersect(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn quotient_dims() {
        let a = Subspace::full(4);
        let b = Subspace::span(&[v(&["1", "1", "0", "0"])], 4).unwrap();
        assert_eq!(a.quotient_dim(&a).unwrap(), 0);
        assert_eq!(a.quotient_dim(&Subspace::zero(4)).unwrap(), 4);
        let c = Subspace::span(
            &[
                v(&["1", "1", "0", "0"]),
                v(&["0", "0", "1", "0"]),
                v(&["0", "0", "0", "1"]),
            ],
            4,
        )
        .unwrap();
        assert_eq!(c.quotient_dim(&b).unwrap(), 2);
        assert!(b.quotient_dim(&c).is_err());
    }

    #[test]
    fn conj_image_preimage_examples() {
        let p = Subspace::span(&[v(&["1", "i"])], 2).unwrap();
        assert_eq!(p.conj(), Subspace::span(&[v(&["1", "-i"])], 2).unwrap());
        assert_eq!(image(&Matrix::identity(2), &p).unwrap(), p);
        assert_eq!(
            preimage(&Matrix::zeros(2, 3), &Subspace::zero(2)).unwrap(),
            Subspace::full(3)
        );
        assert!(image(&Matrix::identity(3), &p).is_err());
    }

    #[test]
    fn quotient_matrix_kills_subspace() {
        let s = Subspace::span(&[v(&["1", "2", "i"]), v(&["0", "1", "1"])], 3).unwrap();
        let q = s.quotient_matrix();
        assert_eq!(q.rows(), 1);
        for b in s.basis() {
            assert!(q.apply(b).unwrap().iter().all(Scalar::is_zero));
        }
        assert_eq!(q.rank(), 1);
    }

    #[test]
    fn inverse_and_kernel() {
        let a = m(&[&["1", "i"], &["2", "3"]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&["1", "i"], &["i", "-1"]]).inverse().is_none());
        let k = m(&[&["1", "i"], &["i", "-1"]]).kernel();
        assert_eq!(k, vec![v(&["-i", "1"])]);
    }

    #[test]
    fn complement_extends_to_basis() {
        let big = Subspace::full(3);
        let small = Subspace::span(&[v(&["1", "1", "1"])], 3).unwrap();
        let comp = big.complement_of(&small).unwrap();
        assert_eq!(comp.len(), 2);
        let all: Vec<Vector> = small.basis().iter().cloned().chain(comp).collect();
        assert_eq!(Subspace::span(&all, 3).unwrap(), big);
    }
}
