#![allow(clippy::type_complexity)]
mod common;

use std::sync::OnceLock;

use bihom_core::catalog::{self, pauli_matrices};
use bihom_core::classify::{
    brute_force_graded_ideals, central_ideal_check, decompose_simple, generated_ideal,
    graded_simple, graded_simple_with_oracle, is_graded_ideal, maximal_length, restricted_report,
    sigma_multiplicative, ClassifyError, SearchRoute, DEFAULT_DIM_CAP,
};
use bihom_core::decompose::decompose;
use bihom_core::{
    BiHomGroup, Criterion, Field, GradedBiHomAlgebra, GroupSpec, Mat, PrimeField, Rationals,
    Subspace, TwistSpec, Witness,
};
use common::{deg, for_each_entry, Visitor};
use proptest::prelude::*;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn single<F: Field>(a: &GradedBiHomAlgebra<F>, m: &Mat<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(a.field(), a.n() * a.n(), [m.as_slice()]).unwrap()
}

fn untwisted<F: Field>(
    f: F,
    n: usize,
    g: GroupSpec,
    comps: Vec<(&[i64], Vec<Mat<F::Elem>>)>,
) -> GradedBiHomAlgebra<F> {
    let comps = comps
        .into_iter()
        .map(|(c, m)| (g.elem(c).unwrap(), m))
        .collect();
    GradedBiHomAlgebra::new(
        f,
        n,
        BiHomGroup::untwisted(g),
        comps,
        TwistSpec::Identity,
        TwistSpec::Identity,
    )
    .unwrap()
}

#[test]
fn sigma_multiplicativity() {
    assert!(sigma_multiplicative(&catalog::pauli_m2(fp(5)).unwrap()).unwrap().passed);
    assert!(sigma_multiplicative(&catalog::generalized_pauli(fp(7), 3).unwrap()).unwrap().passed);
    let v = sigma_multiplicative(&catalog::block_diagonal_pair(fp(5)).unwrap()).unwrap();
    assert!(matches!(v.witness, Some(Witness::DegreePair { .. })));
}

#[test]
fn deleting_a_pauli_component_breaks_closure_first() {
    let f = fp(5);
    let [s1, _, s3] = pauli_matrices(&f).unwrap();
    let a = untwisted(
        f,
        2,
        GroupSpec::new(vec![2, 2]).unwrap(),
        vec![(&[0, 0], vec![Mat::identity(&f, 2)]), (&[1, 0], vec![s3]), (&[0, 1], vec![s1])],
    );
    let r = a.validate();
    assert!(!r.get("grading_closure").unwrap().passed);
}

#[test]
fn maximal_length_examples() {
    assert!(maximal_length(&catalog::pauli_m2(fp(5)).unwrap()).passed);
    let block = catalog::block_diagonal_pair(fp(5)).unwrap();
    match maximal_length(&block).witness {
        Some(Witness::Degree { degree }) => assert_eq!(block.component(&degree).dim(), 2),
        other => panic!("{other:?}"),
    }
    let q = Rationals;
    let lone = untwisted(
        q,
        1,
        GroupSpec::new(vec![2]).unwrap(),
        vec![(&[0], vec![Mat::identity(&q, 1)])],
    );
    assert!(lone.support().is_empty());
    assert!(maximal_length(&lone).passed);
}

#[test]
fn central_ideal_needs_its_hypothesis() {
    let f = fp(5);
    let corner = catalog::corner_with_annihilator(f).unwrap();
    let j = single(&corner, &Mat::unit(&f, 4, 2, 3));
    assert_eq!(
        central_ideal_check(&corner, &j),
        Err(ClassifyError::HypothesisUnmet(vec!["m0_condition"]))
    );
    let pauli = catalog::pauli_m2(f).unwrap();
    assert!(central_ideal_check(&pauli, &Subspace::zero(4)).unwrap().passed);

    let q = Rationals;
    let nil = catalog::nilpotent_z4(q).unwrap();
    let z = single(&nil, &Mat::unit(&q, 4, 0, 3));
    assert!(central_ideal_check(&nil, &z).unwrap().passed);
}

#[test]
fn pauli_is_graded_simple() {
    let a = catalog::pauli_m2(fp(5)).unwrap();
    let r = graded_simple_with_oracle(&a, DEFAULT_DIM_CAP).unwrap();
    assert_eq!(r.graded_simple, Criterion::Yes);
    for v in [
        &r.support_symmetric,
        &r.sigma_multiplicative,
        &r.maximal_length,
        &r.centre_zero,
        &r.m0_generated,
        &r.all_connected,
        &r.nonzero_product,
    ] {
        assert!(v.passed);
    }
    let o = r.oracle.unwrap();
    assert_eq!(o.route, SearchRoute::SupportSubsets);
    assert_eq!(o.candidates, 16);
    assert_eq!(o.ideal_dims, vec![0, 4]);
    assert_eq!(o.agrees, Some(true));
}

#[test]
fn block_pair_needs_the_exhaustive_search() {
    let a = catalog::block_diagonal_pair(fp(5)).unwrap();
    let r = graded_simple_with_oracle(&a, DEFAULT_DIM_CAP).unwrap();
    assert_eq!(r.graded_simple, Criterion::CriterionInapplicable);
    assert_eq!(r.decided(), Some(false));
    let o = r.oracle.unwrap();
    assert_eq!(o.route, SearchRoute::HomogeneousGenerators);
    assert_eq!(o.ideal_dims, vec![0, 4, 4, 8]);

    for ideal in decompose(&a).unwrap().ideals {
        let (sub, report) = restricted_report(&a, &ideal).unwrap();
        assert!(sub.validate().passed());
        assert_eq!(report.graded_simple, Criterion::CriterionInapplicable);
        let r = graded_simple_with_oracle(&sub, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(r.decided(), Some(true));
    }
}

#[test]
fn corner_has_a_central_ideal() {
    let f = fp(5);
    let a = catalog::corner_with_annihilator(f).unwrap();
    let r = graded_simple_with_oracle(&a, DEFAULT_DIM_CAP).unwrap();
    assert!(!r.centre_zero.passed);
    assert!(!r.sigma_multiplicative.passed);
    assert_eq!(r.graded_simple, Criterion::CriterionInapplicable);
    assert_eq!(r.decided(), Some(false));
    let search = brute_force_graded_ideals(&a, DEFAULT_DIM_CAP).unwrap();
    assert!(search.ideals.contains(&single(&a, &Mat::unit(&f, 4, 2, 3))));
}

#[test]
fn nonzero_centre_makes_the_criterion_say_no() {
    let a = catalog::nilpotent_z4(Rationals).unwrap();
    let r = graded_simple_with_oracle(&a, DEFAULT_DIM_CAP).unwrap();
    assert!(r.sigma_multiplicative.passed && r.maximal_length.passed);
    assert!(r.m0_generated.passed && r.all_connected.passed);
    assert!(!r.centre_zero.passed);
    assert_eq!(r.graded_simple, Criterion::No);
    assert_eq!(r.oracle.unwrap().agrees, Some(true));
}

#[test]
fn zero_algebra_passes_the_criterion_but_is_not_simple() {
    let a = untwisted(Rationals, 1, GroupSpec::new(vec![2]).unwrap(), Vec::new());
    let r = graded_simple_with_oracle(&a, DEFAULT_DIM_CAP).unwrap();
    assert_eq!(r.graded_simple, Criterion::Yes);
    assert!(!r.nonzero_product.passed);
    assert_eq!(r.decided(), Some(false));
    let search = brute_force_graded_ideals(&a, DEFAULT_DIM_CAP).unwrap();
    assert_eq!(search.ideals, vec![Subspace::zero(1)]);
}

#[test]
fn field_in_degree_zero_is_simple_despite_the_criterion() {
    let q = Rationals;
    let a = untwisted(
        q,
        2,
        GroupSpec::new(vec![2]).unwrap(),
        vec![(&[0], vec![Mat::unit(&q, 2, 0, 0)])],
    );
    let r = graded_simple_with_oracle(&a, DEFAULT_DIM_CAP).unwrap();
    assert!(!r.m0_generated.passed);
    assert_eq!(r.graded_simple, Criterion::No);
    let o = r.oracle.unwrap();
    assert!(o.simple);
    assert_eq!(o.agrees, Some(false));
}

#[test]
fn decompose_simple_on_simple_algebras() {
    for a in [
        catalog::generalized_pauli(fp(7), 3).unwrap(),
        catalog::pauli_m2(fp(5)).unwrap(),
        catalog::twisted_pauli(fp(5)).unwrap(),
    ] {
        let parts = decompose_simple(&a).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1.graded_simple, Criterion::Yes);
        assert_eq!(parts[0].0.dim(), a.dim());
    }
    let corner = catalog::corner_with_annihilator(fp(5)).unwrap();
    assert!(matches!(
        decompose_simple(&corner),
        Err(ClassifyError::HypothesisUnmet(_))
    ));
}

#[test]
fn oracle_refuses_large_rational_algebras() {
    let a = catalog::block_diagonal_pair(Rationals).unwrap();
    assert!(matches!(
        brute_force_graded_ideals(&a, DEFAULT_DIM_CAP),
        Err(ClassifyError::TooLarge(_))
    ));
}

struct OracleAgreement;

impl Visitor for OracleAgreement {
    fn visit<F: Field>(&mut self, name: &str, a: &GradedBiHomAlgebra<F>) {
        let search = match brute_force_graded_ideals(a, DEFAULT_DIM_CAP) {
            Ok(s) => s,
            Err(ClassifyError::TooLarge(_)) => return,
            Err(e) => panic!("{name}: {e}"),
        };
        let bhg = a.group();
        for ideal in &search.ideals {
            assert!(is_graded_ideal(a, ideal).unwrap(), "{name}");
            // Supports of ideals are closed under both twists and their inverses.
            for (g, comp) in a.components() {
                if comp.intersect(a.field(), ideal).unwrap().is_zero() {
                    continue;
                }
                for h in [
                    bhg.apply_alpha(g),
                    bhg.apply_beta(g),
                    bhg.alpha_inverse(g),
                    bhg.beta_inverse(g),
                ] {
                    let part = a.component(&h).intersect(a.field(), ideal).unwrap();
                    assert!(!part.is_zero(), "{name}: {g} -> {h}");
                }
            }
        }
        let r = graded_simple(a).unwrap();
        let full = a.underlying();
        let trivial = search.ideals.iter().all(|i| i.is_zero() || i == full);
        let simple = trivial && r.nonzero_product.passed && !full.is_zero();
        match r.graded_simple {
            Criterion::Yes => assert!(simple, "{name}"),
            Criterion::No => assert!(!simple, "{name}"),
            Criterion::CriterionInapplicable => {}
        }
    }
}

#[test]
fn oracle_agrees_with_the_criterion_on_the_catalog() {
    for_each_entry(&mut OracleAgreement);
}

fn block_ideals() -> &'static [Subspace<u64>] {
    static IDEALS: OnceLock<Vec<Subspace<u64>>> = OnceLock::new();
    IDEALS.get_or_init(|| {
        let a = catalog::block_diagonal_pair(fp(5)).unwrap();
        brute_force_graded_ideals(&a, DEFAULT_DIM_CAP).unwrap().ideals
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn generated_ideals_are_ideals(coeffs in proptest::collection::vec(0i64..5, 8)) {
        let f = fp(5);
        let a = catalog::block_diagonal_pair(f).unwrap();
        let mut x = vec![f.zero(); 16];
        for ((_, v), c) in a.homogeneous_basis().into_iter().zip(&coeffs) {
            x = bihom_core::linalg::axpy(&f, &f.from_i64(*c), v, &x);
        }
        let j = generated_ideal(&a, &x).unwrap();
        prop_assert!(j.contains(&f, &x).unwrap());
        // Every generated ideal of this algebra happens to be graded.
        prop_assert!(block_ideals().contains(&j));
    }
}

#[test]
fn degree_helper_round_trips() {
    let a = catalog::pauli_m2(fp(5)).unwrap();
    assert_eq!(deg(&a, &[1, 1]).to_string(), "(1,1)");
}
