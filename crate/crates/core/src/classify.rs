//! Structure theory: multiplicativity on the support, maximal length, the
//! graded-simplicity criterion, and an exhaustive graded-ideal search used
//! to certify its verdicts on small instances.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedBiHomAlgebra};
use crate::connect::{classes, ConnectError};
use crate::decompose::{centre, decompose, m0_condition, DecomposeError, GradedIdeal};
use crate::field::Field;
use crate::group::GroupElem;
use crate::linalg::{all_subspaces, LinalgError, Subspace};
use crate::verdict::{Verdict, Witness};

pub const DEFAULT_DIM_CAP: usize = 10;
/// Largest prime for the unrestricted search.
pub const SMALL_PRIME_CAP: u64 = 7;
/// Most support degrees for the subset search under maximal length.
pub const SUBSET_SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("hypotheses not met: {}", .0.join(", "))]
    HypothesisUnmet(Vec<&'static str>),
    #[error("{property} fails")]
    InvariantViolation {
        property: &'static str,
        witness: Option<Witness>,
    },
    #[error("exhaustive search is out of reach: {0}")]
    TooLarge(String),
}

impl From<LinalgError> for ClassifyError {
    fn from(e: LinalgError) -> Self {
        ClassifyError::Algebra(e.into())
    }
}

impl From<ConnectError> for ClassifyError {
    fn from(e: ConnectError) -> Self {
        ClassifyError::Decompose(e.into())
    }
}

/// `M_g * M_h = M_{alpha(g) + beta(h)}` whenever the target lies in the support or is zero.
pub fn sigma_multiplicative<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<Verdict, AlgebraError> {
    let bhg = a.group();
    let sigma = a.support();
    let zero = bhg.group().zero();
    for g in sigma.degrees() {
        for h in sigma.degrees() {
            let t = bhg.bihom_sum(g, h);
            if t != zero && !sigma.contains(&t) {
                continue;
            }
            if a.product_span(a.component(g), a.component(h))? != *a.component(&t) {
                return Ok(Verdict::fail(Witness::DegreePair {
                    left: g.clone(),
                    right: h.clone(),
                }));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Every support component is one-dimensional.
pub fn maximal_length<F: Field>(a: &GradedBiHomAlgebra<F>) -> Verdict {
    Verdict::from_option(
        a.support()
            .degrees()
            .iter()
            .find(|g| a.component(g).dim() != 1)
            .map(|g| Witness::Degree { degree: g.clone() }),
    )
}

/// Whether `j` is a graded ideal: inside `A`, the sum of its homogeneous
/// parts, stable under both twists, and absorbing on both sides.
pub fn is_graded_ideal<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    j: &Subspace<F::Elem>,
) -> Result<bool, AlgebraError> {
    let f = a.field();
    if !j.is_subspace_of(f, a.underlying())? {
        return Ok(false);
    }
    let mut graded = 0;
    for c in a.components().values() {
        graded += c.intersect(f, j)?.dim();
    }
    if graded != j.dim() {
        return Ok(false);
    }
    let basis = a.homogeneous_basis();
    for x in j.basis() {
        for img in [a.apply_psi(x), a.apply_phi(x)] {
            if !j.contains(f, &img.ok_or(AlgebraError::NotInAlgebra)?)? {
                return Ok(false);
            }
        }
        for (_, y) in &basis {
            for p in [a.star_flat(x, y), a.star_flat(y, x)] {
                if !j.contains(f, &p.ok_or(AlgebraError::NotInAlgebra)?)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A graded ideal inside `M_0` lies in the centre, provided the degree-zero
/// condition holds. Unmet hypotheses are reported as errors, not failures.
pub fn central_ideal_check<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    j: &Subspace<F::Elem>,
) -> Result<Verdict, ClassifyError> {
    let f = a.field();
    let mut unmet = Vec::new();
    if !m0_condition(a)?.verdict.passed {
        unmet.push("m0_condition");
    }
    if !is_graded_ideal(a, j)? {
        unmet.push("graded_ideal");
    }
    if !j.is_subspace_of(f, a.degree_zero())? {
        unmet.push("inside_degree_zero");
    }
    if !unmet.is_empty() {
        return Err(ClassifyError::HypothesisUnmet(unmet));
    }
    let z = centre(a);
    Ok(match j.first_outside(f, &z)? {
        None => Verdict::pass(),
        Some(v) => Verdict::fail(Witness::Element {
            matrix: a.render(&v),
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Yes,
    No,
    CriterionInapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub route: SearchRoute,
    pub candidates: u64,
    /// Dimensions of every graded ideal found, ascending.
    pub ideal_dims: Vec<usize>,
    /// Only `0` and `A` are graded ideals, and `A * A != 0`.
    pub simple: bool,
    /// Agreement with the criterion; absent when the criterion does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub support_symmetric: Verdict,
    pub sigma_multiplicative: Verdict,
    pub maximal_length: Verdict,
    pub centre_zero: Verdict,
    pub m0_generated: Verdict,
    pub all_connected: Verdict,
    pub nonzero_product: Verdict,
    pub graded_simple: Criterion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

impl SimplicityReport {
    /// The settled answer: the exhaustive search when it ran, otherwise the
    /// criterion together with the nonzero-product clause.
    pub fn decided(&self) -> Option<bool> {
        if let Some(o) = &self.oracle {
            return Some(o.simple);
        }
        match self.graded_simple {
            Criterion::Yes => Some(self.nonzero_product.passed),
            Criterion::No => Some(false),
            Criterion::CriterionInapplicable => None,
        }
    }
}

/// Evaluates the criterion's hypotheses and, when they hold, its three conditions.
pub fn graded_simple<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<SimplicityReport, ClassifyError> {
    let sigma = a.support();
    let support_symmetric = Verdict::from_option(
        sigma
            .asymmetric_witness()
            .map(|g| Witness::Degree { degree: g.clone() }),
    );
    let sigma_multiplicative = sigma_multiplicative(a)?;
    let maximal_length = maximal_length(a);
    let z = centre(a);
    let centre_zero = match z.basis().first() {
        None => Verdict::pass(),
        Some(v) => Verdict::fail(Witness::Element {
            matrix: a.render(v),
        }),
    };
    let m0_generated = m0_condition(a)?.verdict;
    let all_connected = if support_symmetric.passed {
        let p = classes(a)?;
        if p.len() <= 1 {
            Verdict::pass()
        } else {
            Verdict::fail(Witness::Classes {
                left: p.classes()[0].clone(),
                right: p.classes()[1].clone(),
            })
        }
    } else {
        Verdict::fail_bare()
    };
    let whole = a.underlying().clone();
    let nonzero_product = if a.product_span(&whole, &whole)?.is_zero() {
        Verdict::fail_bare()
    } else {
        Verdict::pass()
    };
    let graded_simple = if !(support_symmetric.passed
        && sigma_multiplicative.passed
        && maximal_length.passed)
    {
        Criterion::CriterionInapplicable
    } else if centre_zero.passed && m0_generated.passed && all_connected.passed {
        Criterion::Yes
    } else {
        Criterion::No
    };
    Ok(SimplicityReport {
        support_symmetric,
        sigma_multiplicative,
        maximal_length,
        centre_zero,
        m0_generated,
        all_connected,
        nonzero_product,
        graded_simple,
        oracle: None,
    })
}

/// [`graded_simple`] plus the exhaustive graded-ideal search.
pub fn graded_simple_with_oracle<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    dim_cap: usize,
) -> Result<SimplicityReport, ClassifyError> {
    let mut report = graded_simple(a)?;
    let search = brute_force_graded_ideals(a, dim_cap)?;
    let full = a.underlying();
    let trivial_only = search
        .ideals
        .iter()
        .all(|i| i.is_zero() || i == full);
    let simple = trivial_only && !full.is_zero() && report.nonzero_product.passed;
    let agrees = match report.graded_simple {
        Criterion::Yes => Some(simple),
        Criterion::No => Some(!simple),
        Criterion::CriterionInapplicable => None,
    };
    let mut ideal_dims: Vec<usize> = search.ideals.iter().map(|i| i.dim()).collect();
    ideal_dims.sort();
    report.oracle = Some(OracleSummary {
        route: search.route,
        candidates: search.candidates,
        ideal_dims,
        simple,
        agrees,
    });
    Ok(report)
}

/// Runs the decomposition and re-examines each ideal as an algebra in its
/// own right; every ideal must be graded simple with a single class.
pub fn decompose_simple<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<Vec<(GradedIdeal<F::Elem>, SimplicityReport)>, ClassifyError> {
    let top = graded_simple(a)?;
    let mut unmet = Vec::new();
    for (name, v) in [
        ("support_symmetric", &top.support_symmetric),
        ("sigma_multiplicative", &top.sigma_multiplicative),
        ("maximal_length", &top.maximal_length),
        ("centre_zero", &top.centre_zero),
        ("m0_generated", &top.m0_generated),
    ] {
        if !v.passed {
            unmet.push(name);
        }
    }
    if !unmet.is_empty() {
        return Err(ClassifyError::HypothesisUnmet(unmet));
    }
    let report = decompose(a)?;
    let mut out = Vec::new();
    for ideal in report.ideals {
        let (sub, r) = restricted_report(a, &ideal)?;
        if r.graded_simple != Criterion::Yes || !r.nonzero_product.passed {
            return Err(ClassifyError::InvariantViolation {
                property: "ideal_graded_simple",
                witness: Some(Witness::Classes {
                    left: ideal.class_support.clone(),
                    right: Vec::new(),
                }),
            });
        }
        let p = classes(&sub)?;
        if p.len() != 1 {
            return Err(ClassifyError::InvariantViolation {
                property: "ideal_single_class",
                witness: Some(Witness::Classes {
                    left: ideal.class_support.clone(),
                    right: Vec::new(),
                }),
            });
        }
        out.push((ideal, r));
    }
    Ok(out)
}

/// Restricts to the ideal, revalidates, and runs the criterion there.
pub fn restricted_report<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    ideal: &GradedIdeal<F::Elem>,
) -> Result<(GradedBiHomAlgebra<F>, SimplicityReport), ClassifyError> {
    let sub = a.restrict(&ideal.total)?;
    let v = sub.validate();
    if let Some(bad) = v.failures().next() {
        return Err(ClassifyError::InvariantViolation {
            property: bad.check,
            witness: bad.verdict.witness.clone(),
        });
    }
    let r = graded_simple(&sub)?;
    Ok((sub, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchRoute {
    /// Subsets of the support times subspaces of `M_0`.
    SupportSubsets,
    /// Ideals generated by every homogeneous element, closed under sums.
    HomogeneousGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSearch<E> {
    pub route: SearchRoute,
    /// Candidate subspaces (or generators) examined.
    pub candidates: u64,
    /// Every graded ideal, ordered by dimension then basis.
    pub ideals: Vec<Subspace<E>>,
}

/// Every graded ideal of a small algebra, found without using the criterion.
pub fn brute_force_graded_ideals<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    dim_cap: usize,
) -> Result<IdealSearch<F::Elem>, ClassifyError> {
    let m0_dim = a.degree_zero().dim();
    let finite = a.field().spec().modulus();
    let sigma_len = a.support().len();
    let subset_route = maximal_length(a).passed
        && sigma_len <= SUBSET_SEARCH_CAP
        && (m0_dim <= 1 || (m0_dim <= 2 && finite.is_some_and(|p| p <= 13)));
    let mut search = if subset_route {
        subset_search(a)?
    } else if a.dim() <= dim_cap && finite.is_some_and(|p| p <= SMALL_PRIME_CAP) {
        generator_search(a)?
    } else {
        return Err(ClassifyError::TooLarge(format!(
            "dim {} over {}, {} support degrees, dim M_0 = {}",
            a.dim(),
            a.field().spec(),
            sigma_len,
            m0_dim
        )));
    };
    search
        .ideals
        .sort_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.basis().cmp(y.basis())));
    Ok(search)
}

/// Under maximal length a graded subspace is `W + sum of M_g over a subset S`
/// with `W` inside `M_0`. Products of homogeneous pieces are homogeneous, so
/// each candidate is tested with precomputed product data.
fn subset_search<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<IdealSearch<F::Elem>, ClassifyError> {
    let f = a.field();
    let bhg = a.group();
    let zero = bhg.group().zero();
    let sigma: Vec<GroupElem> = a.support().degrees().iter().cloned().collect();
    let index: BTreeMap<&GroupElem, usize> = sigma.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let m0 = a.degree_zero().clone();
    let ws: Vec<Subspace<F::Elem>> = if m0.dim() <= 1 {
        if m0.is_zero() {
            vec![m0.clone()]
        } else {
            vec![Subspace::zero(m0.ambient()), m0.clone()]
        }
    } else {
        all_subspaces(f, m0.ambient(), m0.basis())
            .ok_or_else(|| ClassifyError::TooLarge("M_0 over an infinite field".into()))?
    };

    // Where a homogeneous product lands: nowhere, a support degree, or inside M_0.
    enum Lands<E> {
        Zero,
        Degree(usize),
        DegreeZero(Subspace<E>),
    }
    let classify_space = |s: Subspace<F::Elem>, t: &GroupElem| -> Result<Lands<F::Elem>, ClassifyError> {
        if s.is_zero() {
            return Ok(Lands::Zero);
        }
        if !s.is_subspace_of(f, a.component(t))? {
            return Err(ClassifyError::InvariantViolation {
                property: "grading_closure",
                witness: None,
            });
        }
        Ok(if *t == zero {
            Lands::DegreeZero(s)
        } else {
            Lands::Degree(index[t])
        })
    };
    let all_degrees: Vec<&GroupElem> = a.components().keys().collect();
    // Requirements imposed by including M_g, for g in the support.
    let mut needs: Vec<Vec<Lands<F::Elem>>> = Vec::new();
    for g in &sigma {
        let mg = a.component(g);
        let mut req = Vec::new();
        for h in &all_degrees {
            let mh = a.component(h);
            req.push(classify_space(a.product_span(mg, mh)?, &bhg.bihom_sum(g, h))?);
            req.push(classify_space(a.product_span(mh, mg)?, &bhg.bihom_sum(h, g))?);
        }
        req.push(classify_space(image(a, mg, true)?, &bhg.apply_alpha(g))?);
        req.push(classify_space(image(a, mg, false)?, &bhg.apply_beta(g))?);
        needs.push(req);
    }
    let mut w_needs: Vec<Vec<Lands<F::Elem>>> = Vec::new();
    for w in &ws {
        let mut req = Vec::new();
        for h in &all_degrees {
            let mh = a.component(h);
            req.push(classify_space(a.product_span(w, mh)?, &bhg.bihom_sum(&zero, h))?);
            req.push(classify_space(a.product_span(mh, w)?, &bhg.bihom_sum(h, &zero))?);
        }
        req.push(classify_space(image(a, w, true)?, &zero)?);
        req.push(classify_space(image(a, w, false)?, &zero)?);
        w_needs.push(req);
    }
    // For each W and each requirement landing in M_0, whether W contains it.
    let holds = |req: &Lands<F::Elem>, subset: u64, w: &Subspace<F::Elem>| -> bool {
        match req {
            Lands::Zero => true,
            Lands::Degree(i) => subset >> i & 1 == 1,
            Lands::DegreeZero(s) => s.is_subspace_of(f, w).unwrap_or(false),
        }
    };
    let mut ideals = Vec::new();
    let mut candidates = 0u64;
    for subset in 0..(1u64 << sigma.len()) {
        for (wi, w) in ws.iter().enumerate() {
            candidates += 1;
            let ok = (0..sigma.len())
                .filter(|i| subset >> i & 1 == 1)
                .all(|i| needs[i].iter().all(|r| holds(r, subset, w)))
                && w_needs[wi].iter().all(|r| holds(r, subset, w));
            if ok {
                let mut s = w.clone();
                for (i, g) in sigma.iter().enumerate() {
                    if subset >> i & 1 == 1 {
                        s = s.sum(f, a.component(g))?;
                    }
                }
                ideals.push(s);
            }
        }
    }
    Ok(IdealSearch {
        route: SearchRoute::SupportSubsets,
        candidates,
        ideals,
    })
}

fn image<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    s: &Subspace<F::Elem>,
    psi: bool,
) -> Result<Subspace<F::Elem>, ClassifyError> {
    let mut out = Subspace::zero(s.ambient());
    for v in s.basis() {
        let img = if psi { a.apply_psi(v) } else { a.apply_phi(v) };
        out.insert(a.field(), img.ok_or(AlgebraError::NotInAlgebra)?)?;
    }
    Ok(out)
}

/// Every graded ideal is the sum of the ideals generated by its homogeneous
/// elements, so closing the set of principal ideals under sums finds them all.
fn generator_search<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<IdealSearch<F::Elem>, ClassifyError> {
    let f = a.field();
    let mut principal = BTreeSet::new();
    let mut candidates = 0u64;
    for comp in a.components().values() {
        for line in all_subspaces(f, comp.ambient(), comp.basis())
            .ok_or_else(|| ClassifyError::TooLarge("infinite field".into()))?
            .into_iter()
            .filter(|s| s.dim() == 1)
        {
            candidates += 1;
            principal.insert(generated_ideal(a, &line.basis()[0])?.basis().to_vec());
        }
    }
    let ambient = a.n() * a.n();
    let principal: Vec<Subspace<F::Elem>> = principal
        .into_iter()
        .map(|rows| Subspace::span(f, ambient, rows))
        .collect::<Result<_, _>>()?;
    let mut found: BTreeSet<Vec<Vec<F::Elem>>> = BTreeSet::new();
    found.insert(Vec::new());
    let mut frontier = vec![Subspace::zero(ambient)];
    let mut ideals = vec![Subspace::zero(ambient)];
    while let Some(s) = frontier.pop() {
        for p in &principal {
            let t = s.sum(f, p)?;
            if found.insert(t.basis().to_vec()) {
                frontier.push(t.clone());
                ideals.push(t);
            }
        }
    }
    Ok(IdealSearch {
        route: SearchRoute::HomogeneousGenerators,
        candidates,
        ideals,
    })
}

/// Smallest subspace containing `x` that is stable under both twists and
/// under multiplication by the algebra on either side.
pub fn generated_ideal<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    x: &[F::Elem],
) -> Result<Subspace<F::Elem>, ClassifyError> {
    let f = a.field();
    let basis: Vec<Vec<F::Elem>> = a
        .homogeneous_basis()
        .into_iter()
        .map(|(_, v)| v.to_vec())
        .collect();
    let mut s = Subspace::zero(a.n() * a.n());
    let mut queue = vec![x.to_vec()];
    while let Some(v) = queue.pop() {
        if !s.insert(f, v.clone())? {
            continue;
        }
        let mut push = |w: Option<Vec<F::Elem>>| -> Result<(), ClassifyError> {
            queue.push(w.ok_or(AlgebraError::NotInAlgebra)?);
            Ok(())
        };
        push(a.apply_psi(&v))?;
        push(a.apply_phi(&v))?;
        for b in &basis {
            push(a.star_flat(&v, b))?;
            push(a.star_flat(b, &v))?;
        }
    }
    Ok(s)
}
