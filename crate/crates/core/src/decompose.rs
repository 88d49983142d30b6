//! Graded ideals attached to connection classes, the centre, and the
//! decomposition `A = U + sum of I_[g]`.

use thiserror::Error;

use crate::algebra::{AlgebraError, GradedBiHomAlgebra};
use crate::connect::{classes, ClassPartition, ConnectError};
use crate::field::Field;
use crate::group::GroupElem;
use crate::linalg::{LinalgError, Subspace};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Connect(#[from] ConnectError),
    #[error("degree {0} has no component although the class needs it")]
    MissingComponent(GroupElem),
    #[error("{property} fails")]
    InvariantViolation {
        property: &'static str,
        witness: Witness,
    },
}

impl From<LinalgError> for DecomposeError {
    fn from(e: LinalgError) -> Self {
        DecomposeError::Algebra(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal<E> {
    /// The connection class, sorted.
    pub class_support: Vec<GroupElem>,
    /// Degree-zero part, spanned by products landing in degree zero.
    pub zero_part: Subspace<E>,
    pub total: Subspace<E>,
}

impl<E: Clone + PartialEq> GradedIdeal<E> {
    pub fn dim(&self) -> usize {
        self.total.dim()
    }
}

fn violation(property: &'static str, witness: Witness) -> DecomposeError {
    DecomposeError::InvariantViolation { property, witness }
}

fn nonzero_component<'a, F: Field>(
    a: &'a GradedBiHomAlgebra<F>,
    g: &GroupElem,
) -> Result<&'a Subspace<F::Elem>, DecomposeError> {
    let s = a.component(g);
    if s.is_zero() {
        Err(DecomposeError::MissingComponent(g.clone()))
    } else {
        Ok(s)
    }
}

/// `sum over g' in class of M_{beta(g')} * M_{-alpha(g')}`.
pub fn zero_part<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    class: &[GroupElem],
) -> Result<Subspace<F::Elem>, DecomposeError> {
    let bhg = a.group();
    let group = bhg.group();
    let mut out = Subspace::zero(a.n() * a.n());
    for g in class {
        let left = bhg.apply_beta(g);
        let right = group.neg(&bhg.apply_alpha(g));
        if bhg.bihom_sum(&left, &right) != group.zero() {
            return Err(violation(
                "zero_part_degree",
                Witness::DegreePair { left, right },
            ));
        }
        let p = a.product_span(nonzero_component(a, &left)?, nonzero_component(a, &right)?)?;
        out = out.sum(a.field(), &p)?;
    }
    Ok(out)
}

/// `sum over g' in class of M_{g'} * M_{-beta^-1 alpha(g')}`.
pub fn zero_part_partner_form<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    class: &[GroupElem],
) -> Result<Subspace<F::Elem>, DecomposeError> {
    let bhg = a.group();
    let mut out = Subspace::zero(a.n() * a.n());
    for g in class {
        let partner = bhg.zero_partner(g);
        let p = a.product_span(nonzero_component(a, g)?, nonzero_component(a, &partner)?)?;
        out = out.sum(a.field(), &p)?;
    }
    Ok(out)
}

/// `I_[g]`, with every ideal property verified before it is returned.
pub fn ideal_for_class<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    class: &[GroupElem],
) -> Result<GradedIdeal<F::Elem>, DecomposeError> {
    let f = a.field();
    let mut class_support = class.to_vec();
    class_support.sort();
    let zero = zero_part(a, &class_support)?;
    let mut total = zero.clone();
    let mut expected_dim = zero.dim();
    for g in &class_support {
        let c = nonzero_component(a, g)?;
        expected_dim += c.dim();
        total = total.sum(f, c)?;
    }
    let ideal = GradedIdeal {
        class_support,
        zero_part: zero,
        total,
    };
    if ideal.total.dim() != expected_dim {
        return Err(violation(
            "graded_sum",
            Witness::Classes {
                left: ideal.class_support.clone(),
                right: Vec::new(),
            },
        ));
    }
    verify_ideal(a, &ideal)?;
    Ok(ideal)
}

fn element<F: Field>(a: &GradedBiHomAlgebra<F>, v: &[F::Elem]) -> Witness {
    Witness::Element {
        matrix: a.render(v),
    }
}

fn verify_ideal<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    ideal: &GradedIdeal<F::Elem>,
) -> Result<(), DecomposeError> {
    let f = a.field();
    let i = &ideal.total;
    let basis = a.homogeneous_basis();
    for x in i.basis() {
        for (label, img) in [("psi_stable", a.apply_psi(x)), ("phi_stable", a.apply_phi(x))] {
            let img = img.ok_or(AlgebraError::NotInAlgebra)?;
            if !i.contains(f, &img)? {
                return Err(violation(label, element(a, &img)));
            }
        }
        // Absorption on both sides covers closure of the ideal itself.
        for (_, y) in &basis {
            for (label, p) in [
                ("right_absorption", a.star_flat(x, y)),
                ("left_absorption", a.star_flat(y, x)),
            ] {
                let p = p.ok_or(AlgebraError::NotInAlgebra)?;
                if !i.contains(f, &p)? {
                    return Err(violation(label, element(a, &p)));
                }
            }
        }
    }
    let zero = a.group().group().zero();
    for (g, comp) in a.components() {
        let expected = if *g == zero {
            ideal.zero_part.clone()
        } else if ideal.class_support.binary_search(g).is_ok() {
            comp.clone()
        } else {
            Subspace::zero(i.ambient())
        };
        if i.intersect(f, comp)? != expected {
            return Err(violation("graded_pieces", Witness::Degree { degree: g.clone() }));
        }
    }
    Ok(())
}

/// `{v in A : v * A + A * v = 0}`.
pub fn centre<F: Field>(a: &GradedBiHomAlgebra<F>) -> Subspace<F::Elem> {
    let basis: Vec<Vec<F::Elem>> = a
        .homogeneous_basis()
        .into_iter()
        .map(|(_, v)| v.to_vec())
        .collect();
    let zero = vec![a.field().zero(); a.n() * a.n()];
    let right: Vec<Box<dyn Fn(&[F::Elem]) -> Vec<F::Elem> + '_>> = basis
        .iter()
        .flat_map(|b| {
            let z1 = zero.clone();
            let z2 = zero.clone();
            [
                Box::new(move |v: &[F::Elem]| a.star_flat(v, b).unwrap_or(z1.clone()))
                    as Box<dyn Fn(&[F::Elem]) -> Vec<F::Elem>>,
                Box::new(move |v: &[F::Elem]| a.star_flat(b, v).unwrap_or(z2.clone())),
            ]
        })
        .collect();
    let maps: Vec<&dyn Fn(&[F::Elem]) -> Vec<F::Elem>> = right.iter().map(|m| m.as_ref()).collect();
    Subspace::annihilator_kernel(a.field(), a.underlying(), &maps)
        .expect("all maps act on the same ambient space")
}

/// Outcome of the degree-zero generation condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M0Check<E> {
    pub verdict: Verdict,
    /// `sum over g in the support of M_g * M_{-beta^-1 alpha(g)}`.
    pub generated: Subspace<E>,
}

/// `M_0 = sum over g in the support of M_g * M_{-beta^-1 alpha(g)}`.
pub fn m0_condition<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<M0Check<F::Elem>, DecomposeError> {
    let bhg = a.group();
    let f = a.field();
    let mut generated = Subspace::zero(a.n() * a.n());
    for g in a.support().degrees() {
        let partner = bhg.zero_partner(g);
        let p = a.product_span(a.component(g), a.component(&partner))?;
        generated = generated.sum(f, &p)?;
    }
    let m0 = a.degree_zero();
    let missing = m0
        .first_outside(f, &generated)?
        .or(generated.first_outside(f, m0)?);
    let verdict = match missing {
        None => Verdict::pass(),
        Some(v) => Verdict::fail(element(a, &v)),
    };
    Ok(M0Check { verdict, generated })
}

/// `I * J = J * I = 0` for every pair of distinct ideals.
pub fn orthogonality<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    ideals: &[GradedIdeal<F::Elem>],
) -> Result<(Verdict, usize), DecomposeError> {
    let mut checked = 0;
    for (i, x) in ideals.iter().enumerate() {
        for y in &ideals[i + 1..] {
            checked += 1;
            let xy = a.product_span(&x.total, &y.total)?;
            let yx = a.product_span(&y.total, &x.total)?;
            if !xy.is_zero() || !yx.is_zero() {
                return Ok((
                    Verdict::fail(Witness::Classes {
                        left: x.class_support.clone(),
                        right: y.class_support.clone(),
                    }),
                    checked,
                ));
            }
        }
    }
    Ok((Verdict::pass(), checked))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport<E> {
    pub partition: ClassPartition,
    pub ideals: Vec<GradedIdeal<E>>,
    /// A complement of the degree-zero products inside `M_0`.
    pub complement_u: Subspace<E>,
    pub centre: Subspace<E>,
    pub centre_zero: Verdict,
    pub m0_condition: Verdict,
    /// Opening-form and generator-form zero parts agree class by class.
    pub zero_part_forms_agree: Verdict,
    pub intersections_zero: Verdict,
    pub orthogonality: Verdict,
    pub orthogonal_pairs_checked: usize,
    /// Centre zero, degree-zero condition, and trivial pairwise intersections.
    pub direct: bool,
    /// `U + sum of ideals` equals the algebra.
    pub reconstructs: bool,
    /// `dim U + sum of ideal dimensions`.
    pub summed_dim: usize,
}

impl<E: Clone + PartialEq> DecompositionReport<E> {
    /// Whether `U + sum of ideals` is a direct sum of vector spaces.
    pub fn sum_is_direct(&self, algebra_dim: usize) -> bool {
        self.reconstructs && self.summed_dim == algebra_dim
    }
}

pub fn decompose<F: Field>(
    a: &GradedBiHomAlgebra<F>,
) -> Result<DecompositionReport<F::Elem>, DecomposeError> {
    let f = a.field();
    let ambient = a.n() * a.n();
    let partition = classes(a)?;
    let mut ideals = Vec::new();
    let mut forms = Verdict::pass();
    let mut products = Subspace::zero(ambient);
    for class in partition.classes() {
        let ideal = ideal_for_class(a, class)?;
        if forms.passed && zero_part_partner_form(a, class)? != ideal.zero_part {
            forms = Verdict::fail(Witness::Classes {
                left: class.clone(),
                right: Vec::new(),
            });
        }
        products = products.sum(f, &ideal.zero_part)?;
        ideals.push(ideal);
    }
    let complement_u = products.complement_in(f, a.degree_zero())?;
    let centre = centre(a);
    let centre_zero = match centre.basis().first() {
        None => Verdict::pass(),
        Some(v) => Verdict::fail(element(a, v)),
    };
    let m0 = m0_condition(a)?.verdict;
    let mut intersections_zero = Verdict::pass();
    'outer: for (i, x) in ideals.iter().enumerate() {
        for y in &ideals[i + 1..] {
            if !x.total.intersect(f, &y.total)?.is_zero() {
                intersections_zero = Verdict::fail(Witness::Classes {
                    left: x.class_support.clone(),
                    right: y.class_support.clone(),
                });
                break 'outer;
            }
        }
    }
    let (orthogonality, orthogonal_pairs_checked) = orthogonality(a, &ideals)?;
    let mut sum = complement_u.clone();
    let mut summed_dim = complement_u.dim();
    for i in &ideals {
        sum = sum.sum(f, &i.total)?;
        summed_dim += i.dim();
    }
    let reconstructs = sum == *a.underlying();
    let direct = centre_zero.passed && m0.passed && intersections_zero.passed;
    Ok(DecompositionReport {
        partition,
        ideals,
        complement_u,
        centre,
        centre_zero,
        m0_condition: m0,
        zero_part_forms_agree: forms,
        intersections_zero,
        orthogonality,
        orthogonal_pairs_checked,
        direct,
        reconstructs,
        summed_dim,
    })
}
