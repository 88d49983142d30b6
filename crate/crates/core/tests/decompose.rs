mod common;

use bihom_core::catalog;
use bihom_core::classify::{graded_simple_with_oracle, is_graded_ideal, DEFAULT_DIM_CAP};
use bihom_core::connect::classes;
use bihom_core::decompose::{
    centre, decompose, ideal_for_class, m0_condition, orthogonality, zero_part,
    zero_part_partner_form,
};
use bihom_core::{
    BiHomGroup, Field, GradedBiHomAlgebra, GroupSpec, Mat, PrimeField, Rationals, Subspace,
    TwistSpec,
};
use common::{deg, for_each_entry, Visitor};

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn span<F: Field>(f: &F, n: usize, mats: &[Mat<F::Elem>]) -> Subspace<F::Elem> {
    Subspace::span(f, n * n, mats.iter().map(|m| m.as_slice())).unwrap()
}

#[test]
fn pauli_zero_part_is_the_identity_line() {
    let f = f5();
    let a = catalog::pauli_m2(f).unwrap();
    let class: Vec<_> = a.support().degrees().iter().cloned().collect();
    assert_eq!(
        zero_part(&a, &class).unwrap(),
        span(&f, 2, &[Mat::identity(&f, 2)])
    );
    assert!(zero_part(&a, &[]).unwrap().is_zero());
    let ideal = ideal_for_class(&a, &class).unwrap();
    assert_eq!(ideal.dim(), 4);
    assert_eq!(&ideal.total, a.underlying());
}

#[test]
fn block_class_gives_the_block() {
    let f = f5();
    let a = catalog::block_diagonal_pair(f).unwrap();
    let e = |i, j| Mat::unit(&f, 4, i, j);
    let class = vec![deg(&a, &[1, 0])];
    assert_eq!(zero_part(&a, &class).unwrap(), span(&f, 4, &[e(0, 0), e(1, 1)]));
    let ideal = ideal_for_class(&a, &class).unwrap();
    assert_eq!(
        ideal.total,
        span(&f, 4, &[e(0, 0), e(0, 1), e(1, 0), e(1, 1)])
    );
}

#[test]
fn twisted_pauli_class_is_everything() {
    let a = catalog::twisted_pauli(f5()).unwrap();
    let p = classes(&a).unwrap();
    assert_eq!(p.len(), 1);
    let ideal = ideal_for_class(&a, &p.classes()[0]).unwrap();
    assert_eq!(&ideal.total, a.underlying());
}

#[test]
fn centres() {
    let f = f5();
    assert!(centre(&catalog::pauli_m2(f).unwrap()).is_zero());
    let c = catalog::corner_with_annihilator(f).unwrap();
    assert_eq!(centre(&c), span(&f, 4, &[Mat::unit(&f, 4, 2, 3)]));
}

fn zero_algebra() -> GradedBiHomAlgebra<Rationals> {
    let g = GroupSpec::new(vec![2]).unwrap();
    GradedBiHomAlgebra::new(
        Rationals,
        2,
        BiHomGroup::untwisted(g),
        Vec::new(),
        TwistSpec::Identity,
        TwistSpec::Identity,
    )
    .unwrap()
}

#[test]
fn zero_algebra_decomposes_to_nothing() {
    let a = zero_algebra();
    assert!(centre(&a).is_zero());
    let d = decompose(&a).unwrap();
    assert!(d.ideals.is_empty());
    assert!(d.complement_u.is_zero());
    assert!(d.reconstructs);
}

#[test]
fn m0_condition_examples() {
    let f = f5();
    assert!(m0_condition(&catalog::pauli_m2(f).unwrap()).unwrap().verdict.passed);
    let c = m0_condition(&catalog::corner_with_annihilator(f).unwrap()).unwrap();
    assert!(!c.verdict.passed);
    // Square-zero products and nothing in degree zero.
    let q = Rationals;
    let g = GroupSpec::new(vec![3]).unwrap();
    let a = GradedBiHomAlgebra::new(
        q,
        3,
        BiHomGroup::untwisted(g.clone()),
        vec![
            (g.elem(&[1]).unwrap(), vec![Mat::unit(&q, 3, 0, 2)]),
            (g.elem(&[2]).unwrap(), vec![Mat::unit(&q, 3, 1, 2)]),
        ],
        TwistSpec::Identity,
        TwistSpec::Identity,
    )
    .unwrap();
    assert!(a.validate().passed());
    let m = m0_condition(&a).unwrap();
    assert!(m.verdict.passed);
    assert!(m.generated.is_zero());
}

#[test]
fn orthogonality_examples() {
    let f = f5();
    let pauli = decompose(&catalog::pauli_m2(f).unwrap()).unwrap();
    assert!(pauli.orthogonality.passed);
    assert_eq!(pauli.orthogonal_pairs_checked, 0);

    let block = catalog::block_diagonal_pair(f).unwrap();
    let d = decompose(&block).unwrap();
    let (v, checked) = orthogonality(&block, &d.ideals).unwrap();
    assert!(v.passed);
    assert_eq!(checked, 1);
    let (x, y) = (&d.ideals[0].total, &d.ideals[1].total);
    assert!(block.product_span(x, y).unwrap().is_zero());
    assert!(block.product_span(y, x).unwrap().is_zero());
}

#[test]
fn decomposition_examples() {
    let f = f5();
    let d = decompose(&catalog::pauli_m2(f).unwrap()).unwrap();
    assert_eq!(d.ideals.len(), 1);
    assert!(d.complement_u.is_zero());
    assert!(d.direct);

    let d = decompose(&catalog::block_diagonal_pair(f).unwrap()).unwrap();
    assert_eq!(d.ideals.len(), 2);
    assert!(d.complement_u.is_zero());
    assert!(d.direct);
    assert_eq!(d.summed_dim, 8);

    let c = catalog::corner_with_annihilator(f).unwrap();
    let d = decompose(&c).unwrap();
    assert_eq!(d.ideals.len(), 1);
    assert_eq!(d.ideals[0].dim(), 4);
    assert_eq!(d.complement_u, span(&f, 4, &[Mat::unit(&f, 4, 2, 3)]));
    assert!(!d.direct);
    assert!(!d.centre_zero.passed);
    assert!(d.reconstructs);
    assert!(d.sum_is_direct(c.dim()));
}

struct IdealProperties;

impl Visitor for IdealProperties {
    fn visit<F: Field>(&mut self, name: &str, a: &GradedBiHomAlgebra<F>) {
        let f = a.field();
        let d = decompose(a).unwrap();
        assert!(d.zero_part_forms_agree.passed, "{name}");
        for ideal in &d.ideals {
            let i = &ideal.total;
            assert!(a.product_span(i, i).unwrap().is_subspace_of(f, i).unwrap(), "{name}");
            assert!(a.product_span(i, a.underlying()).unwrap().is_subspace_of(f, i).unwrap());
            assert!(a.product_span(a.underlying(), i).unwrap().is_subspace_of(f, i).unwrap());
            for v in i.basis() {
                assert!(i.contains(f, &a.apply_psi(v).unwrap()).unwrap(), "{name}");
                assert!(i.contains(f, &a.apply_phi(v).unwrap()).unwrap(), "{name}");
            }
            assert!(is_graded_ideal(a, i).unwrap(), "{name}");
            for (g, comp) in a.components() {
                let piece = comp.intersect(f, i).unwrap();
                assert!(piece.is_zero() || piece == *comp || *g == a.group().group().zero());
            }
            assert_eq!(
                zero_part(a, &ideal.class_support).unwrap(),
                zero_part_partner_form(a, &ideal.class_support).unwrap(),
                "{name}"
            );
        }
        let total = d.summed_dim;
        assert!(total >= a.dim(), "{name}");
        assert!(d.reconstructs, "{name}");
        assert_eq!(d.intersections_zero.passed, total == a.dim(), "{name}");
    }
}

#[test]
fn ideal_properties_hold_on_every_catalog_algebra() {
    for_each_entry(&mut IdealProperties);
}

struct SimpleImpliesOneClass;

impl Visitor for SimpleImpliesOneClass {
    fn visit<F: Field>(&mut self, name: &str, a: &GradedBiHomAlgebra<F>) {
        let Ok(r) = graded_simple_with_oracle(a, DEFAULT_DIM_CAP) else {
            return;
        };
        if r.decided() == Some(true) {
            assert_eq!(classes(a).unwrap().len(), 1, "{name}");
            assert!(m0_condition(a).unwrap().verdict.passed, "{name}");
        }
    }
}

#[test]
fn graded_simple_algebras_have_one_class_and_generated_m0() {
    for_each_entry(&mut SimpleImpliesOneClass);
}
