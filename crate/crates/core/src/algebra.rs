//! Graded BiHom matrix algebras: a subspace `A` of `M_n(K)` split into
//! homogeneous components indexed by a regular BiHom-group, with the twisted
//! product `x * y = psi(x) phi(y)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::group::{BiHomGroup, GroupElem};
use crate::linalg::{left_kernel, matmul, Coordinates, LinalgError, Mat, Subspace};
use crate::verdict::{BasisRef, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("matrix of size {found} in an algebra of {expected}x{expected} matrices")]
    MatrixSize { expected: usize, found: usize },
    #[error("degree {0} is not an element of the grading group")]
    DegreeOutsideGroup(GroupElem),
    #[error("degree {0} is listed twice")]
    DuplicateDegree(GroupElem),
    #[error("{0} conjugator is not invertible")]
    SingularConjugator(&'static str),
    #[error("{which} lists {found} images for a homogeneous basis of size {expected}")]
    ImageCount {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("explicit twists need linearly independent homogeneous basis matrices")]
    DependentBasis,
    #[error("element is not in the algebra")]
    NotInAlgebra,
    #[error("subspace is not graded: it is not the sum of its homogeneous parts")]
    NotGraded,
}

/// How a twisting map is specified on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistSpec<E> {
    Identity,
    /// `x -> S x S^-1`.
    Conjugator(Mat<E>),
    /// Images of the concatenated input basis matrices, in input order.
    Images(Vec<Mat<E>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistMap<E> {
    Identity,
    Conjugator {
        s: Mat<E>,
        s_inv: Mat<E>,
    },
    Explicit {
        domain: Coordinates<E>,
        images: Vec<Vec<E>>,
    },
}

impl<E: Clone + PartialEq> TwistMap<E> {
    fn build<F: Field<Elem = E>>(
        f: &F,
        n: usize,
        which: &'static str,
        spec: TwistSpec<E>,
        given: &[Vec<E>],
    ) -> Result<Self, AlgebraError> {
        match spec {
            TwistSpec::Identity => Ok(TwistMap::Identity),
            TwistSpec::Conjugator(s) => {
                check_size(n, &s)?;
                let s_inv = s.inverse(f).ok_or(AlgebraError::SingularConjugator(which))?;
                Ok(TwistMap::Conjugator { s, s_inv })
            }
            TwistSpec::Images(images) => {
                if images.len() != given.len() {
                    return Err(AlgebraError::ImageCount {
                        which,
                        expected: given.len(),
                        found: images.len(),
                    });
                }
                for m in &images {
                    check_size(n, m)?;
                }
                let domain = Coordinates::new(f, given.to_vec()).map_err(|e| match e {
                    LinalgError::Dependent => AlgebraError::DependentBasis,
                    other => other.into(),
                })?;
                Ok(TwistMap::Explicit {
                    domain,
                    images: images.into_iter().map(Mat::into_flat).collect(),
                })
            }
        }
    }

    /// `None` when an explicit map is asked about a vector outside its domain.
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, n: usize, x: &[E]) -> Option<Vec<E>> {
        match self {
            TwistMap::Identity => Some(x.to_vec()),
            TwistMap::Conjugator { s, s_inv } => {
                let sx = matmul(f, n, s.as_slice(), x);
                Some(matmul(f, n, &sx, s_inv.as_slice()))
            }
            TwistMap::Explicit { domain, images } => {
                let c = domain.solve(f, x)?;
                let mut out = vec![f.zero(); x.len()];
                for (ci, img) in c.iter().zip(images) {
                    if !f.is_zero(ci) {
                        out = crate::linalg::axpy(f, ci, img, &out);
                    }
                }
                Some(out)
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, TwistMap::Identity)
    }

    /// The same map, with explicit maps re-expressed on a smaller domain.
    fn restrict<F: Field<Elem = E>>(
        &self,
        f: &F,
        n: usize,
        basis: &[Vec<E>],
    ) -> Result<Self, AlgebraError> {
        match self {
            TwistMap::Explicit { .. } => {
                let images = basis
                    .iter()
                    .map(|b| self.apply(f, n, b).ok_or(AlgebraError::NotInAlgebra))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(TwistMap::Explicit {
                    domain: Coordinates::new(f, basis.to_vec())?,
                    images,
                })
            }
            other => Ok(other.clone()),
        }
    }

    /// Input form; explicit images are aligned with the domain basis.
    pub fn to_spec(&self, n: usize) -> TwistSpec<E> {
        match self {
            TwistMap::Identity => TwistSpec::Identity,
            TwistMap::Conjugator { s, .. } => TwistSpec::Conjugator(s.clone()),
            TwistMap::Explicit { images, .. } => TwistSpec::Images(
                images
                    .iter()
                    .map(|v| Mat::from_flat(n, v.clone()).expect("stored images are n x n"))
                    .collect(),
            ),
        }
    }
}

fn check_size<E: Clone>(n: usize, m: &Mat<E>) -> Result<(), AlgebraError> {
    if m.n() == n {
        Ok(())
    } else {
        Err(AlgebraError::MatrixSize {
            expected: n,
            found: m.n(),
        })
    }
}

/// Nonzero degrees with a nonzero component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Support {
    sigma: BTreeSet<GroupElem>,
    #[serde(skip)]
    asymmetric: Option<GroupElem>,
}

impl Support {
    pub fn degrees(&self) -> &BTreeSet<GroupElem> {
        &self.sigma
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.sigma.contains(g)
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetric.is_none()
    }

    /// First `g` in the support whose negative is missing.
    pub fn asymmetric_witness(&self) -> Option<&GroupElem> {
        self.asymmetric.as_ref()
    }
}

pub const CHECK_NAMES: [&str; 12] = [
    "alpha_beta_commute",
    "components_independent",
    "underlying_space_closed",
    "psi_bijective",
    "phi_bijective",
    "psi_multiplicative",
    "phi_multiplicative",
    "twists_commute",
    "psi_compatible",
    "phi_compatible",
    "grading_closure",
    "bihom_associative",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedVerdict {
    pub check: &'static str,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<NamedVerdict>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passed)
    }

    pub fn get(&self, check: &str) -> Option<&Verdict> {
        self.checks
            .iter()
            .find(|c| c.check == check)
            .map(|c| &c.verdict)
    }

    pub fn failures(&self) -> impl Iterator<Item = &NamedVerdict> {
        self.checks.iter().filter(|c| !c.verdict.passed)
    }
}

#[derive(Debug, Clone)]
pub struct GradedBiHomAlgebra<F: Field> {
    field: F,
    n: usize,
    bhg: BiHomGroup,
    given: Vec<(GroupElem, Vec<Mat<F::Elem>>)>,
    components: BTreeMap<GroupElem, Subspace<F::Elem>>,
    total: Subspace<F::Elem>,
    coords: Option<Coordinates<F::Elem>>,
    psi: TwistMap<F::Elem>,
    phi: TwistMap<F::Elem>,
    zero_space: Subspace<F::Elem>,
}

impl<F: Field> GradedBiHomAlgebra<F> {
    pub fn new(
        field: F,
        n: usize,
        bhg: BiHomGroup,
        components: Vec<(GroupElem, Vec<Mat<F::Elem>>)>,
        psi: TwistSpec<F::Elem>,
        phi: TwistSpec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let ambient = n * n;
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (g, mats) in &components {
            if !bhg.group().contains(g) {
                return Err(AlgebraError::DegreeOutsideGroup(g.clone()));
            }
            if !seen.insert(g.clone()) {
                return Err(AlgebraError::DuplicateDegree(g.clone()));
            }
            for m in mats {
                check_size(n, m)?;
            }
            let s = Subspace::span(&field, ambient, mats.iter().map(Mat::as_slice))?;
            if !s.is_zero() {
                map.insert(g.clone(), s);
            }
        }
        let given_flat: Vec<Vec<F::Elem>> = components
            .iter()
            .flat_map(|(_, ms)| ms.iter().map(|m| m.as_slice().to_vec()))
            .collect();
        let psi = TwistMap::build(&field, n, "psi", psi, &given_flat)?;
        let phi = TwistMap::build(&field, n, "phi", phi, &given_flat)?;
        let mut total = Subspace::zero(ambient);
        for s in map.values() {
            total = total.sum(&field, s)?;
        }
        let hom: Vec<Vec<F::Elem>> = map.values().flat_map(|s| s.basis().to_vec()).collect();
        let coords = Coordinates::new(&field, hom).ok();
        Ok(GradedBiHomAlgebra {
            field,
            n,
            bhg,
            given: components,
            components: map,
            total,
            coords,
            psi,
            phi,
            zero_space: Subspace::zero(ambient),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &BiHomGroup {
        &self.bhg
    }

    pub fn psi(&self) -> &TwistMap<F::Elem> {
        &self.psi
    }

    pub fn phi(&self) -> &TwistMap<F::Elem> {
        &self.phi
    }

    /// Components exactly as supplied, in input order.
    pub fn given_components(&self) -> &[(GroupElem, Vec<Mat<F::Elem>>)] {
        &self.given
    }

    /// Nonzero components keyed by degree.
    pub fn components(&self) -> &BTreeMap<GroupElem, Subspace<F::Elem>> {
        &self.components
    }

    /// `M_g`, the zero subspace when `g` carries nothing.
    pub fn component(&self, g: &GroupElem) -> &Subspace<F::Elem> {
        self.components.get(g).unwrap_or(&self.zero_space)
    }

    pub fn degree_zero(&self) -> &Subspace<F::Elem> {
        self.component(&self.bhg.group().zero())
    }

    /// The underlying space `A`, the sum of all components.
    pub fn underlying(&self) -> &Subspace<F::Elem> {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn components_independent(&self) -> bool {
        self.coords.is_some()
    }

    pub fn support(&self) -> Support {
        let group = self.bhg.group();
        let zero = group.zero();
        let sigma: BTreeSet<GroupElem> = self
            .components
            .keys()
            .filter(|g| **g != zero)
            .cloned()
            .collect();
        let asymmetric = sigma
            .iter()
            .find(|g| !sigma.contains(&group.neg(g)))
            .cloned();
        Support { sigma, asymmetric }
    }

    /// Canonical homogeneous basis, by degree then row.
    pub fn homogeneous_basis(&self) -> Vec<(BasisRef, &[F::Elem])> {
        self.components
            .iter()
            .flat_map(|(g, s)| {
                s.basis().iter().enumerate().map(move |(index, v)| {
                    (
                        BasisRef {
                            degree: g.clone(),
                            index,
                        },
                        v.as_slice(),
                    )
                })
            })
            .collect()
    }

    pub fn apply_psi(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.psi.apply(&self.field, self.n, x)
    }

    pub fn apply_phi(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.phi.apply(&self.field, self.n, x)
    }

    /// `psi(x) phi(y)` on flattened matrices, without a membership check.
    pub fn star_flat(&self, x: &[F::Elem], y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let px = self.apply_psi(x)?;
        let py = self.apply_phi(y)?;
        Some(matmul(&self.field, self.n, &px, &py))
    }

    pub fn star(&self, x: &Mat<F::Elem>, y: &Mat<F::Elem>) -> Result<Mat<F::Elem>, AlgebraError> {
        for m in [x, y] {
            check_size(self.n, m)?;
            if !self.total.contains(&self.field, m.as_slice())? {
                return Err(AlgebraError::NotInAlgebra);
            }
        }
        let v = self
            .star_flat(x.as_slice(), y.as_slice())
            .ok_or(AlgebraError::NotInAlgebra)?;
        Ok(Mat::from_flat(self.n, v)?)
    }

    /// Span of `u * v` over bases of `U` and `V`.
    pub fn product_span(
        &self,
        u: &Subspace<F::Elem>,
        v: &Subspace<F::Elem>,
    ) -> Result<Subspace<F::Elem>, AlgebraError> {
        let mut out = Subspace::zero(self.n * self.n);
        for a in u.basis() {
            for b in v.basis() {
                let p = self.star_flat(a, b).ok_or(AlgebraError::NotInAlgebra)?;
                out.insert(&self.field, p)?;
            }
        }
        Ok(out)
    }

    /// Unique homogeneous parts of `x`, zero parts omitted.
    pub fn homogeneous_decompose(
        &self,
        x: &Mat<F::Elem>,
    ) -> Result<BTreeMap<GroupElem, Mat<F::Elem>>, AlgebraError> {
        check_size(self.n, x)?;
        let coords = self.coords.as_ref().ok_or(AlgebraError::DependentBasis)?;
        let c = coords
            .solve(&self.field, x.as_slice())
            .ok_or(AlgebraError::NotInAlgebra)?;
        let f = &self.field;
        let mut out = BTreeMap::new();
        for ((r, v), ci) in self.homogeneous_basis().into_iter().zip(&c) {
            if f.is_zero(ci) {
                continue;
            }
            let part = out
                .entry(r.degree)
                .or_insert_with(|| vec![f.zero(); self.n * self.n]);
            *part = crate::linalg::axpy(f, ci, v, part);
        }
        out.into_iter()
            .filter(|(_, v)| v.iter().any(|e| !f.is_zero(e)))
            .map(|(g, v)| Ok((g, Mat::from_flat(self.n, v)?)))
            .collect()
    }

    /// The subspace viewed as a graded BiHom-algebra in its own right.
    /// It must be graded and stable under both twists.
    pub fn restrict(&self, sub: &Subspace<F::Elem>) -> Result<Self, AlgebraError> {
        let f = &self.field;
        let mut comps = Vec::new();
        let mut dims = 0;
        for (g, s) in &self.components {
            let part = s.intersect(f, sub)?;
            dims += part.dim();
            if !part.is_zero() {
                comps.push((g.clone(), part));
            }
        }
        if dims != sub.dim() {
            return Err(AlgebraError::NotGraded);
        }
        let basis: Vec<Vec<F::Elem>> = comps
            .iter()
            .flat_map(|(_, s)| s.basis().to_vec())
            .collect();
        let psi = self.psi.restrict(f, self.n, &basis)?;
        let phi = self.phi.restrict(f, self.n, &basis)?;
        let components = comps
            .into_iter()
            .map(|(g, s)| {
                let mats = s
                    .basis()
                    .iter()
                    .map(|v| Mat::from_flat(self.n, v.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((g, mats))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let mut out = GradedBiHomAlgebra::new(
            f.clone(),
            self.n,
            self.bhg.clone(),
            components,
            TwistSpec::Identity,
            TwistSpec::Identity,
        )?;
        out.psi = psi;
        out.phi = phi;
        Ok(out)
    }

    pub fn render(&self, v: &[F::Elem]) -> Vec<Vec<String>> {
        if self.n == 0 {
            return Vec::new();
        }
        v.chunks(self.n)
            .map(|r| r.iter().map(|x| self.field.render(x)).collect())
            .collect()
    }

    /// Every axiom of a graded BiHom-algebra, checked on homogeneous basis elements.
    pub fn validate(&self) -> ValidationReport {
        let v = Validator::new(self);
        let checks = vec![
            (
                "alpha_beta_commute",
                Verdict::from_option(
                    self.bhg
                        .check_commuting()
                        .err()
                        .map(|degree| Witness::Degree { degree }),
                ),
            ),
            ("components_independent", v.independent()),
            ("underlying_space_closed", v.closed()),
            ("psi_bijective", v.bijective(&v.psi)),
            ("phi_bijective", v.bijective(&v.phi)),
            ("psi_multiplicative", v.multiplicative(&self.psi)),
            ("phi_multiplicative", v.multiplicative(&self.phi)),
            ("twists_commute", v.twists_commute()),
            ("psi_compatible", v.compatible(&v.psi, |g| self.bhg.apply_alpha(g))),
            ("phi_compatible", v.compatible(&v.phi, |g| self.bhg.apply_beta(g))),
            ("grading_closure", v.grading_closure()),
            ("bihom_associative", v.associative()),
        ];
        ValidationReport {
            checks: checks
                .into_iter()
                .map(|(check, verdict)| NamedVerdict { check, verdict })
                .collect(),
        }
    }
}

/// Precomputed twist images and products on the homogeneous basis.
struct Validator<'a, F: Field> {
    a: &'a GradedBiHomAlgebra<F>,
    basis: Vec<(BasisRef, &'a [F::Elem])>,
    psi: Vec<Option<Vec<F::Elem>>>,
    phi: Vec<Option<Vec<F::Elem>>>,
    star: Vec<Vec<Option<Vec<F::Elem>>>>,
}

impl<'a, F: Field> Validator<'a, F> {
    fn new(a: &'a GradedBiHomAlgebra<F>) -> Self {
        let basis = a.homogeneous_basis();
        let psi: Vec<_> = basis.iter().map(|(_, b)| a.apply_psi(b)).collect();
        let phi: Vec<_> = basis.iter().map(|(_, b)| a.apply_phi(b)).collect();
        let star = psi
            .iter()
            .map(|x| {
                phi.iter()
                    .map(|y| match (x, y) {
                        (Some(x), Some(y)) => Some(matmul(&a.field, a.n, x, y)),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        Validator {
            a,
            basis,
            psi,
            phi,
            star,
        }
    }

    fn f(&self) -> &F {
        &self.a.field
    }

    fn contains(&self, s: &Subspace<F::Elem>, v: &[F::Elem]) -> bool {
        s.contains(self.f(), v).unwrap_or(false)
    }

    fn pair(&self, i: usize, j: usize) -> Witness {
        Witness::BasisPair {
            left: self.basis[i].0.clone(),
            right: self.basis[j].0.clone(),
        }
    }

    fn single(&self, i: usize) -> Witness {
        Witness::Basis {
            element: self.basis[i].0.clone(),
        }
    }

    fn independent(&self) -> Verdict {
        let f = self.f();
        let mut acc = Subspace::zero(self.a.n * self.a.n);
        for (g, s) in &self.a.components {
            let before = acc.dim();
            acc = acc.sum(f, s).expect("same ambient");
            if acc.dim() != before + s.dim() {
                return Verdict::fail(Witness::Degree { degree: g.clone() });
            }
        }
        Verdict::pass()
    }

    fn closed(&self) -> Verdict {
        let (f, n) = (self.f(), self.a.n);
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                let p = matmul(f, n, self.basis[i].1, self.basis[j].1);
                if !self.contains(&self.a.total, &p) {
                    return Verdict::fail(self.pair(i, j));
                }
            }
        }
        for i in 0..self.basis.len() {
            for img in [&self.psi[i], &self.phi[i]] {
                match img {
                    Some(v) if self.contains(&self.a.total, v) => {}
                    _ => return Verdict::fail(self.single(i)),
                }
            }
        }
        Verdict::pass()
    }

    fn bijective(&self, images: &[Option<Vec<F::Elem>>]) -> Verdict {
        let mut rows = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            match img {
                Some(v) => rows.push(v.clone()),
                None => return Verdict::fail(self.single(i)),
            }
        }
        let f = self.f();
        let ambient = self.a.n * self.a.n;
        match left_kernel(f, &rows, ambient).into_iter().next() {
            None => Verdict::pass(),
            Some(c) => {
                let mut x = vec![f.zero(); ambient];
                for (ci, (_, b)) in c.iter().zip(&self.basis) {
                    x = crate::linalg::axpy(f, ci, b, &x);
                }
                Verdict::fail(Witness::Element {
                    matrix: self.a.render(&x),
                })
            }
        }
    }

    fn multiplicative(&self, t: &TwistMap<F::Elem>) -> Verdict {
        let (f, n) = (self.f(), self.a.n);
        let images: Vec<_> = self.basis.iter().map(|(_, b)| t.apply(f, n, b)).collect();
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                let p = matmul(f, n, self.basis[i].1, self.basis[j].1);
                let ok = match (t.apply(f, n, &p), &images[i], &images[j]) {
                    (Some(lhs), Some(x), Some(y)) => lhs == matmul(f, n, x, y),
                    _ => false,
                };
                if !ok {
                    return Verdict::fail(self.pair(i, j));
                }
            }
        }
        Verdict::pass()
    }

    fn twists_commute(&self) -> Verdict {
        for i in 0..self.basis.len() {
            let lhs = self.phi[i].as_ref().and_then(|v| self.a.apply_psi(v));
            let rhs = self.psi[i].as_ref().and_then(|v| self.a.apply_phi(v));
            if lhs.is_none() || lhs != rhs {
                return Verdict::fail(self.single(i));
            }
        }
        Verdict::pass()
    }

    fn compatible(
        &self,
        images: &[Option<Vec<F::Elem>>],
        shift: impl Fn(&GroupElem) -> GroupElem,
    ) -> Verdict {
        for (i, img) in images.iter().enumerate() {
            let target = self.a.component(&shift(&self.basis[i].0.degree));
            match img {
                Some(v) if self.contains(target, v) => {}
                _ => return Verdict::fail(self.single(i)),
            }
        }
        Verdict::pass()
    }

    fn grading_closure(&self) -> Verdict {
        let bhg = &self.a.bhg;
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                let target = bhg.bihom_sum(&self.basis[i].0.degree, &self.basis[j].0.degree);
                match &self.star[i][j] {
                    Some(p) if self.contains(self.a.component(&target), p) => {}
                    _ => return Verdict::fail(self.pair(i, j)),
                }
            }
        }
        Verdict::pass()
    }

    /// `psi(x) * (y * z) = (x * y) * phi(z)`, i.e.
    /// `psi(psi(x)) phi(y * z) = psi(x * y) phi(phi(z))`.
    fn associative(&self) -> Verdict {
        let (f, n) = (self.f(), self.a.n);
        let d = self.basis.len();
        let psi_psi: Vec<_> = self
            .psi
            .iter()
            .map(|v| v.as_ref().and_then(|v| self.a.apply_psi(v)))
            .collect();
        let phi_phi: Vec<_> = self
            .phi
            .iter()
            .map(|v| v.as_ref().and_then(|v| self.a.apply_phi(v)))
            .collect();
        let phi_star: Vec<Vec<_>> = self
            .star
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.as_ref().and_then(|p| self.a.apply_phi(p)))
                    .collect()
            })
            .collect();
        let psi_star: Vec<Vec<_>> = self
            .star
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.as_ref().and_then(|p| self.a.apply_psi(p)))
                    .collect()
            })
            .collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ok = match (&psi_psi[i], &phi_star[j][k], &psi_star[i][j], &phi_phi[k]) {
                        (Some(a), Some(b), Some(c), Some(e)) => {
                            matmul(f, n, a, b) == matmul(f, n, c, e)
                        }
                        _ => false,
                    };
                    if !ok {
                        return Verdict::fail(Witness::BasisTriple {
                            first: self.basis[i].0.clone(),
                            second: self.basis[j].0.clone(),
                            third: self.basis[k].0.clone(),
                        });
                    }
                }
            }
        }
        Verdict::pass()
    }
}
