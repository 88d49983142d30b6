//! Exact linear algebra on the `n^2`-dimensional space of `n x n` matrices.
//!
//! Matrices are flattened row-major. Subspaces keep a reduced row-echelon
//! basis with leading ones, so two subspaces are equal exactly when their
//! stored rows are equal.

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("vectors are linearly dependent")]
    Dependent,
}

/// A square matrix with entries in some field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_flat(n: usize, entries: Vec<E>) -> Result<Self, LinalgError> {
        if entries.len() != n * n {
            return Err(LinalgError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Mat { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare);
        }
        Ok(Mat {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[E] {
        &self.entries
    }

    pub fn into_flat(self) -> Vec<E> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        if self.n == 0 {
            return Vec::new();
        }
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl<E: Clone + PartialEq> Mat<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Mat {
            n,
            entries: vec![f.zero(); n * n],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Mat::zero(f, n);
        for i in 0..n {
            m.entries[i * n + i] = f.one();
        }
        m
    }

    /// The matrix unit `E_{ij}` (zero-based).
    pub fn unit<F: Field<Elem = E>>(f: &F, n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zero(f, n);
        m.entries[i * n + j] = f.one();
        m
    }

    pub fn from_i64<F: Field<Elem = E>>(f: &F, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.entries.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Mat {
            n: self.n,
            entries: matmul(f, self.n, &self.entries, &other.entries),
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Mat {
            n: self.n,
            entries: axpy(f, &f.one(), &other.entries, &self.entries),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Mat {
            n: self.n,
            entries: axpy(f, &f.neg(&f.one()), &other.entries, &self.entries),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Mat {
            n: self.n,
            entries: self.entries.iter().map(|x| f.mul(c, x)).collect(),
        }
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u64) -> Self {
        let mut acc = Mat::identity(f, self.n);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        let inv = invert_square(f, self.rows())?;
        Some(Mat {
            n: self.n,
            entries: inv.into_iter().flatten().collect(),
        })
    }
}

/// Product of two flattened `n x n` matrices.
pub fn matmul<F: Field>(f: &F, n: usize, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !f.is_zero(bkj) {
                    let t = f.mul(aik, bkj);
                    out[i * n + j] = f.add(&out[i * n + j], &t);
                }
            }
        }
    }
    out
}

/// `c * x + y`.
pub fn axpy<F: Field>(f: &F, c: &F::Elem, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    x.iter()
        .zip(y)
        .map(|(a, b)| f.add(&f.mul(c, a), b))
        .collect()
}

fn sub_scaled<F: Field>(f: &F, target: &mut [F::Elem], c: &F::Elem, row: &[F::Elem]) {
    for (t, r) in target.iter_mut().zip(row) {
        if !f.is_zero(r) {
            *t = f.sub(t, &f.mul(c, r));
        }
    }
}

/// Gauss-Jordan inverse of a square matrix given as rows.
pub fn invert_square<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>) -> Option<Vec<Vec<F::Elem>>> {
    let d = m.len();
    let mut inv: Vec<Vec<F::Elem>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !f.is_zero(&m[r][col]))?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let s = f.inv(&m[col][col])?;
        m[col] = m[col].iter().map(|x| f.mul(&s, x)).collect();
        inv[col] = inv[col].iter().map(|x| f.mul(&s, x)).collect();
        for r in 0..d {
            if r != col && !f.is_zero(&m[r][col]) {
                let c = m[r][col].clone();
                let (mr, ir) = (m[col].clone(), inv[col].clone());
                sub_scaled(f, &mut m[r], &c, &mr);
                sub_scaled(f, &mut inv[r], &c, &ir);
            }
        }
    }
    Some(inv)
}

/// A linear subspace of `K^ambient` in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| if i == j { f.one() } else { f.zero() })
                    .collect()
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<F, I, V>(f: &F, ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = V>,
        V: AsRef<[E]>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(f, v.as_ref().to_vec())?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, len: usize) -> Result<(), LinalgError> {
        if len == self.ambient {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: len,
            })
        }
    }

    /// Remainder of `v` after eliminating the pivot columns.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Result<Vec<E>, LinalgError> {
        self.check(v.len())?;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = v[p].clone();
                sub_scaled(f, &mut v, &c, row);
            }
        }
        Ok(v)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: Vec<E>) -> Result<bool, LinalgError> {
        let mut v = self.reduce(f, &v)?;
        let Some(lead) = v.iter().position(|x| !f.is_zero(x)) else {
            return Ok(false);
        };
        let s = f.inv(&v[lead]).expect("nonzero leading entry");
        for x in v.iter_mut() {
            *x = f.mul(&s, x);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[lead]) {
                let c = row[lead].clone();
                sub_scaled(f, row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Result<bool, LinalgError> {
        Ok(self.reduce(f, v)?.iter().all(|x| f.is_zero(x)))
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(
        &self,
        f: &F,
        other: &Self,
    ) -> Result<bool, LinalgError> {
        other.check(self.ambient)?;
        for r in &self.rows {
            if !other.contains(f, r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First basis row of `self` outside `other`, if any.
    pub fn first_outside<F: Field<Elem = E>>(
        &self,
        f: &F,
        other: &Self,
    ) -> Result<Option<Vec<E>>, LinalgError> {
        other.check(self.ambient)?;
        for r in &self.rows {
            if !other.contains(f, r)? {
                return Ok(Some(r.clone()));
            }
        }
        Ok(None)
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        self.check(other.ambient)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(f, r.clone())?;
        }
        Ok(s)
    }

    /// Intersection from the left kernel of the stacked bases `[U; V]`:
    /// every relation `aU + bV = 0` contributes the vector `aU`.
    pub fn intersect<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        self.check(other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let stacked: Vec<Vec<E>> = self.rows.iter().chain(&other.rows).cloned().collect();
        let r = self.dim();
        let mut out = Subspace::zero(self.ambient);
        for rel in left_kernel(f, &stacked, self.ambient) {
            let mut v = vec![f.zero(); self.ambient];
            for (c, row) in rel[..r].iter().zip(&self.rows) {
                if !f.is_zero(c) {
                    v = axpy(f, c, row, &v);
                }
            }
            out.insert(f, v)?;
        }
        Ok(out)
    }

    /// Span of the basis rows of `larger` that are not already in `self + chosen`,
    /// added greedily in basis order: a complement of `self` inside `larger`.
    pub fn complement_in<F: Field<Elem = E>>(
        &self,
        f: &F,
        larger: &Self,
    ) -> Result<Self, LinalgError> {
        self.check(larger.ambient)?;
        let mut acc = self.clone();
        let mut comp = Subspace::zero(self.ambient);
        for r in &larger.rows {
            if acc.insert(f, r.clone())? {
                comp.insert(f, r.clone())?;
            }
        }
        Ok(comp)
    }

    /// Image under a linear map given pointwise.
    pub fn image<F: Field<Elem = E>>(
        &self,
        f: &F,
        map: impl Fn(&[E]) -> Vec<E>,
    ) -> Result<Self, LinalgError> {
        Subspace::span(f, self.ambient, self.rows.iter().map(|r| map(r)))
    }

    /// Span of `prod(u, v)` over basis pairs; `prod` must be bilinear.
    pub fn product_span<F: Field<Elem = E>>(
        f: &F,
        u: &Self,
        v: &Self,
        prod: impl Fn(&[E], &[E]) -> Vec<E>,
    ) -> Result<Self, LinalgError> {
        u.check(v.ambient)?;
        let mut out = Subspace::zero(u.ambient);
        for a in &u.rows {
            for b in &v.rows {
                out.insert(f, prod(a, b))?;
            }
        }
        Ok(out)
    }

    /// `{x in domain : m(x) = 0 for every map m}`, computed as the left kernel
    /// of the matrix whose row `i` concatenates all images of basis vector `i`.
    pub fn annihilator_kernel<F: Field<Elem = E>>(
        f: &F,
        domain: &Self,
        maps: &[&dyn Fn(&[E]) -> Vec<E>],
    ) -> Result<Self, LinalgError> {
        if maps.is_empty() {
            return Ok(domain.clone());
        }
        let rows: Vec<Vec<E>> = domain
            .rows
            .iter()
            .map(|b| maps.iter().flat_map(|m| m(b)).collect())
            .collect();
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(LinalgError::DimensionMismatch {
                expected: width,
                found: rows.iter().map(|r| r.len()).find(|&l| l != width).unwrap_or(0),
            });
        }
        let mut out = Subspace::zero(domain.ambient);
        for rel in left_kernel(f, &rows, width) {
            let mut v = vec![f.zero(); domain.ambient];
            for (c, row) in rel.iter().zip(&domain.rows) {
                if !f.is_zero(c) {
                    v = axpy(f, c, row, &v);
                }
            }
            out.insert(f, v)?;
        }
        Ok(out)
    }
}

/// Basis of `{c : sum_i c_i rows[i] = 0}`, by row-reducing `[rows | I]`.
pub fn left_kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], width: usize) -> Vec<Vec<F::Elem>> {
    let m = rows.len();
    let mut aug: Vec<Vec<F::Elem>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend((0..m).map(|j| if i == j { f.one() } else { f.zero() }));
            a
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m).find(|&r| !f.is_zero(&aug[r][col])) else {
            continue;
        };
        aug.swap(rank, p);
        let piv = aug[rank].clone();
        for r in rank + 1..m {
            if !f.is_zero(&aug[r][col]) {
                let c = f.div(&aug[r][col], &piv[col]).expect("nonzero pivot");
                sub_scaled(f, &mut aug[r], &c, &piv);
            }
        }
        rank += 1;
    }
    aug.into_iter()
        .skip(rank)
        .map(|a| a[width..].to_vec())
        .collect()
}

/// Coordinates with respect to a fixed independent family of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates<E> {
    basis: Vec<Vec<E>>,
    cols: Vec<usize>,
    inv: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> Coordinates<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, basis: Vec<Vec<E>>) -> Result<Self, LinalgError> {
        let ambient = basis.first().map_or(0, |b| b.len());
        let span = Subspace::span(f, ambient, &basis)?;
        if span.dim() != basis.len() {
            return Err(LinalgError::Dependent);
        }
        // The pivot columns of the span select an invertible square minor.
        let cols = span.pivots().to_vec();
        let minor: Vec<Vec<E>> = cols
            .iter()
            .map(|&c| basis.iter().map(|b| b[c].clone()).collect())
            .collect();
        let inv = invert_square(f, minor).ok_or(LinalgError::Dependent)?;
        Ok(Coordinates { basis, cols, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    /// `Some(c)` with `sum c_j basis[j] = v`, or `None` if `v` is outside the span.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let d = self.basis.len();
        if d == 0 {
            return v.iter().all(|x| f.is_zero(x)).then(Vec::new);
        }
        if v.len() != self.basis[0].len() {
            return None;
        }
        let coeffs: Vec<E> = (0..d)
            .map(|j| {
                self.cols.iter().enumerate().fold(f.zero(), |acc, (i, &c)| {
                    f.add(&acc, &f.mul(&self.inv[j][i], &v[c]))
                })
            })
            .collect();
        let mut rebuilt = vec![f.zero(); v.len()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            rebuilt = axpy(f, c, b, &rebuilt);
        }
        (rebuilt == v).then_some(coeffs)
    }
}

/// Every subspace of the span of an independent family over a finite field,
/// in a deterministic order. `None` over infinite fields.
pub fn all_subspaces<F: Field>(
    f: &F,
    ambient: usize,
    basis: &[Vec<F::Elem>],
) -> Option<Vec<Subspace<F::Elem>>> {
    let elems = f.elements()?;
    let d = basis.len();
    let mut found = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let zero = Subspace::zero(ambient);
    found.insert(zero.rows.clone());
    out.push(zero);
    // Breadth-first over dimension: extend each subspace by one vector.
    let mut frontier = vec![Subspace::zero(ambient)];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &frontier {
            for coeffs in coefficient_vectors(&elems, d) {
                let mut v = vec![f.zero(); ambient];
                for (c, b) in coeffs.iter().zip(basis) {
                    v = axpy(f, c, b, &v);
                }
                let mut t = s.clone();
                if t.insert(f, v).ok()? && found.insert(t.rows.clone()) {
                    next.push(t.clone());
                    out.push(t);
                }
            }
        }
        frontier = next;
    }
    Some(out)
}

fn coefficient_vectors<E: Clone>(elems: &[E], d: usize) -> Vec<Vec<E>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Number of subspaces of `F_q^d` (sum of Gaussian binomials).
pub fn subspace_count(q: u64, d: u32) -> u128 {
    let q = q as u128;
    let mut total = 0u128;
    for k in 0..=d {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..k {
            num *= q.pow(d - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        total += num / den;
    }
    total
}
