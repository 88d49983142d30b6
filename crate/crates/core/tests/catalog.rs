use bihom_core::catalog::{self, AnyAlgebra, CatalogEntry};
use bihom_core::classify::{
    graded_simple, graded_simple_with_oracle, ClassifyError, DEFAULT_DIM_CAP,
};
use bihom_core::connect::classes;
use bihom_core::decompose::decompose;
use bihom_core::{Field, GradedBiHomAlgebra};

fn check<F: Field>(e: &CatalogEntry, a: &GradedBiHomAlgebra<F>) {
    let v = a.validate();
    assert!(v.passed(), "{}: {:?}", e.name, v.failures().collect::<Vec<_>>());
    let x = &e.expected;
    assert_eq!(a.dim(), x.dim, "{} dim", e.name);
    assert_eq!(a.support().len(), x.support_size, "{} support", e.name);
    assert_eq!(classes(a).unwrap().len(), x.classes, "{} classes", e.name);
    let d = decompose(a).unwrap();
    assert_eq!(d.centre.dim(), x.centre_dim, "{} centre", e.name);
    assert_eq!(d.direct, x.direct, "{} direct", e.name);
    assert!(d.sum_is_direct(a.dim()), "{} reconstruction", e.name);
    let r = match graded_simple_with_oracle(a, DEFAULT_DIM_CAP) {
        Err(ClassifyError::TooLarge(_)) => graded_simple(a).unwrap(),
        other => other.unwrap(),
    };
    assert_eq!(r.graded_simple, x.criterion, "{} criterion", e.name);
    assert_eq!(r.decided(), x.graded_simple, "{} decided", e.name);
    if let Some(o) = &r.oracle {
        assert_ne!(o.agrees, Some(false), "{} oracle disagrees", e.name);
    }
}

#[test]
fn every_entry_matches_its_expectations() {
    for e in catalog::entries() {
        match catalog::build(e.name).unwrap() {
            AnyAlgebra::Rational(a) => check(&e, &a),
            AnyAlgebra::Prime(a) => check(&e, &a),
        }
    }
}

#[test]
fn unknown_entry_is_an_error() {
    assert!(catalog::build("nope").is_err());
    assert!(catalog::entry("pauli_f5").is_some());
}
