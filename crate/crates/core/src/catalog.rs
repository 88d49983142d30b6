//! Ready-made graded BiHom algebras: Pauli and clock-and-shift gradings, twisted
//! variants, and small synthetic algebras with several classes, a nonzero
//! centre, or a degenerate product.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedBiHomAlgebra, TwistSpec};
use crate::classify::Criterion;
use crate::field::{Field, FieldError, PrimeField, Rationals};
use crate::group::{BiHomGroup, GroupAuto, GroupElem, GroupError, GroupSpec};
use crate::linalg::{LinalgError, Mat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("defining relation fails: {0}")]
    RelationViolation(&'static str),
    #[error("no catalog entry named {0:?}")]
    UnknownEntry(String),
}

impl From<LinalgError> for CatalogError {
    fn from(e: LinalgError) -> Self {
        CatalogError::Algebra(e.into())
    }
}

type Built<F> = Result<GradedBiHomAlgebra<F>, CatalogError>;

fn klein() -> GroupSpec {
    GroupSpec::new(vec![2, 2]).expect("Z_2 x Z_2")
}

fn elem(g: &GroupSpec, c: &[i64]) -> GroupElem {
    g.elem(c).expect("catalog degrees are reduced")
}

fn swap(g: &GroupSpec) -> GroupAuto {
    GroupAuto::new(g, vec![vec![0, 1], vec![1, 0]]).expect("swap is an automorphism")
}

/// `sigma_1, sigma_2, sigma_3` with `i` the least primitive fourth root of unity.
pub fn pauli_matrices<F: Field>(f: &F) -> Result<[Mat<F::Elem>; 3], CatalogError> {
    let i = f.primitive_root_of_unity(4)?;
    let (o, z) = (f.one(), f.zero());
    let s1 = Mat::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]])?;
    let s2 = Mat::from_rows(vec![vec![z.clone(), i.clone()], vec![f.neg(&i), z.clone()]])?;
    let s3 = Mat::from_rows(vec![vec![o.clone(), z.clone()], vec![z, f.neg(&o)]])?;
    Ok([s1, s2, s3])
}

fn pauli_components<F: Field>(f: &F) -> Result<Vec<(GroupElem, Vec<Mat<F::Elem>>)>, CatalogError> {
    let g = klein();
    let [s1, s2, s3] = pauli_matrices(f)?;
    Ok(vec![
        (elem(&g, &[0, 0]), vec![Mat::identity(f, 2)]),
        (elem(&g, &[1, 0]), vec![s3]),
        (elem(&g, &[0, 1]), vec![s1]),
        (elem(&g, &[1, 1]), vec![s2]),
    ])
}

/// The `Z_2 x Z_2` Pauli grading of `M_2`, identity twists. Needs `sqrt(-1)`.
pub fn pauli_m2<F: Field>(f: F) -> Built<F> {
    let comps = pauli_components(&f)?;
    Ok(GradedBiHomAlgebra::new(
        f,
        2,
        BiHomGroup::untwisted(klein()),
        comps,
        TwistSpec::Identity,
        TwistSpec::Identity,
    )?)
}

/// `X_a = diag(e^{n-1}, ..., e, 1)` and the cyclic shift `X_b` with ones on
/// the superdiagonal and in the bottom-left corner.
pub fn clock_and_shift<F: Field>(
    f: &F,
    n: usize,
) -> Result<(F::Elem, Mat<F::Elem>, Mat<F::Elem>), CatalogError> {
    let eps = f.primitive_root_of_unity(n as u64)?;
    let mut xa = Mat::zero(f, n).rows();
    let mut xb = Mat::zero(f, n).rows();
    for i in 0..n {
        xa[i][i] = f.pow(&eps, (n - 1 - i) as u64);
        xb[i][(i + 1) % n] = f.one();
    }
    let xa = Mat::from_rows(xa)?;
    let xb = Mat::from_rows(xb)?;
    if xa.mul(f, &xb) != xb.mul(f, &xa).scale(f, &eps) {
        return Err(CatalogError::RelationViolation("X_a X_b = e X_b X_a"));
    }
    let id = Mat::identity(f, n);
    if xa.pow(f, n as u64) != id || xb.pow(f, n as u64) != id {
        return Err(CatalogError::RelationViolation("X_a^n = X_b^n = I"));
    }
    Ok((eps, xa, xb))
}

fn clock_shift_components<F: Field>(
    f: &F,
    n: usize,
    xa: &Mat<F::Elem>,
    xb: &Mat<F::Elem>,
) -> Result<(GroupSpec, Vec<(GroupElem, Vec<Mat<F::Elem>>)>), CatalogError> {
    let g = GroupSpec::new(vec![n as u64, n as u64])?;
    let mut comps = Vec::new();
    for k in 0..n {
        for l in 0..n {
            let m = xa.pow(f, k as u64).mul(f, &xb.pow(f, l as u64));
            comps.push((elem(&g, &[k as i64, l as i64]), vec![m]));
        }
    }
    Ok((g, comps))
}

/// The `Z_n x Z_n` grading `M_(k,l) = K X_a^k X_b^l` of `M_n`, identity twists.
pub fn generalized_pauli<F: Field>(f: F, n: usize) -> Built<F> {
    let (_, xa, xb) = clock_and_shift(&f, n)?;
    let (g, comps) = clock_shift_components(&f, n, &xa, &xb)?;
    Ok(GradedBiHomAlgebra::new(
        f,
        n,
        BiHomGroup::untwisted(g),
        comps,
        TwistSpec::Identity,
        TwistSpec::Identity,
    )?)
}

/// The clock-and-shift grading twisted by `psi = conj(X_a)`, `phi = conj(X_b)`;
/// both preserve every component, so `alpha = beta = Id`.
pub fn clock_shift_twisted<F: Field>(f: F, n: usize) -> Built<F> {
    let (_, xa, xb) = clock_and_shift(&f, n)?;
    let (g, comps) = clock_shift_components(&f, n, &xa, &xb)?;
    Ok(GradedBiHomAlgebra::new(
        f,
        n,
        BiHomGroup::untwisted(g),
        comps,
        TwistSpec::Conjugator(xa),
        TwistSpec::Conjugator(xb),
    )?)
}

fn hadamard<F: Field>(f: &F) -> Result<Mat<F::Elem>, CatalogError> {
    Ok(Mat::from_i64(f, &[&[1, 1], &[1, -1]])?)
}

/// Pauli components with `psi = conj(S)`, `S = (1 1; 1 -1)`, `phi = Id`,
/// `alpha` the coordinate swap and `beta = Id`.
pub fn twisted_pauli<F: Field>(f: F) -> Built<F> {
    let comps = pauli_components(&f)?;
    let s = hadamard(&f)?;
    let g = klein();
    Ok(GradedBiHomAlgebra::new(
        f,
        2,
        BiHomGroup::new(g.clone(), swap(&g), GroupAuto::identity(&g)),
        comps,
        TwistSpec::Conjugator(s),
        TwistSpec::Identity,
    )?)
}

/// Pauli components with `psi = phi = conj(S)` and `alpha = beta = swap`.
pub fn hom_pauli<F: Field>(f: F) -> Built<F> {
    let comps = pauli_components(&f)?;
    let s = hadamard(&f)?;
    let g = klein();
    Ok(GradedBiHomAlgebra::new(
        f,
        2,
        BiHomGroup::new(g.clone(), swap(&g), swap(&g)),
        comps,
        TwistSpec::Conjugator(s.clone()),
        TwistSpec::Conjugator(s),
    )?)
}

/// Two copies of `M_2` on the diagonal of `M_4`: both block diagonals in
/// degree zero, the off-diagonal parts of block one in `(1,0)` and of
/// block two in `(0,1)`.
pub fn block_diagonal_pair<F: Field>(f: F) -> Built<F> {
    let g = klein();
    let e = |i, j| Mat::unit(&f, 4, i, j);
    let comps = vec![
        (elem(&g, &[0, 0]), vec![e(0, 0), e(1, 1), e(2, 2), e(3, 3)]),
        (elem(&g, &[1, 0]), vec![e(0, 1), e(1, 0)]),
        (elem(&g, &[0, 1]), vec![e(2, 3), e(3, 2)]),
    ];
    Ok(GradedBiHomAlgebra::new(
        f,
        4,
        BiHomGroup::untwisted(g),
        comps,
        TwistSpec::Identity,
        TwistSpec::Identity,
    )?)
}

/// The Pauli grading on the top-left corner of `M_4`, with the square-zero
/// unit `N = E_{2,3}` (zero-based) adjoined in degree zero. `N` spans the centre.
pub fn corner_with_annihilator<F: Field>(f: F) -> Built<F> {
    let embed = |m: &Mat<F::Elem>| {
        let mut rows = Mat::zero(&f, 4).rows();
        for i in 0..2 {
            for j in 0..2 {
                rows[i][j] = m.get(i, j).clone();
            }
        }
        Mat::from_rows(rows).expect("square")
    };
    let g = klein();
    let [s1, s2, s3] = pauli_matrices(&f)?;
    let comps = vec![
        (
            elem(&g, &[0, 0]),
            vec![embed(&Mat::identity(&f, 2)), Mat::unit(&f, 4, 2, 3)],
        ),
        (elem(&g, &[1, 0]), vec![embed(&s3)]),
        (elem(&g, &[0, 1]), vec![embed(&s1)]),
        (elem(&g, &[1, 1]), vec![embed(&s2)]),
    ];
    Ok(GradedBiHomAlgebra::new(
        f,
        4,
        BiHomGroup::untwisted(g),
        comps,
        TwistSpec::Identity,
        TwistSpec::Identity,
    )?)
}

/// A commutative nilpotent algebra in `M_4` graded by `Z_4`:
/// `x = E_02 + E_13` in degree 1, `y = E_01 + E_23` in degree 3 and
/// `xy = yx = E_03` in degree 0. Every hypothesis of the simplicity criterion
/// holds and only the centre condition fails.
pub fn nilpotent_z4<F: Field>(f: F) -> Built<F> {
    let g = GroupSpec::new(vec![4])?;
    let e = |i, j| Mat::unit(&f, 4, i, j);
    let x = e(0, 2).add(&f, &e(1, 3));
    let y = e(0, 1).add(&f, &e(2, 3));
    let comps = vec![
        (elem(&g, &[0]), vec![e(0, 3)]),
        (elem(&g, &[1]), vec![x]),
        (elem(&g, &[3]), vec![y]),
    ];
    Ok(GradedBiHomAlgebra::new(
        f,
        4,
        BiHomGroup::untwisted(g),
        comps,
        TwistSpec::Identity,
        TwistSpec::Identity,
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Worked examples of Pauli and clock-and-shift gradings.
    Published,
    /// Built to exercise a particular branch of the theory.
    Synthetic,
}

/// What an entry is expected to show; tests recompute every field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub dim: usize,
    pub support_size: usize,
    pub classes: usize,
    pub centre_dim: usize,
    pub criterion: Criterion,
    /// Absent when neither the criterion nor the exhaustive search settles it.
    pub graded_simple: Option<bool>,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub origin: Origin,
    pub expected: Expected,
}

#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Rational(GradedBiHomAlgebra<Rationals>),
    Prime(GradedBiHomAlgebra<PrimeField>),
}

const fn expect(
    dim: usize,
    support_size: usize,
    classes: usize,
    centre_dim: usize,
    criterion: Criterion,
    graded_simple: Option<bool>,
    direct: bool,
) -> Expected {
    Expected {
        dim,
        support_size,
        classes,
        centre_dim,
        criterion,
        graded_simple,
        direct,
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    use Criterion::*;
    use Origin::*;
    let simple = |dim, support| expect(dim, support, 1, 0, Yes, Some(true), true);
    vec![
        CatalogEntry {
            name: "pauli_f5",
            summary: "Pauli grading of M_2(F_5)",
            origin: Published,
            expected: simple(4, 3),
        },
        CatalogEntry {
            name: "pauli_f13",
            summary: "Pauli grading of M_2(F_13)",
            origin: Published,
            expected: simple(4, 3),
        },
        CatalogEntry {
            name: "generalized_pauli_f7_n3",
            summary: "clock-and-shift Z_3 x Z_3 grading of M_3(F_7)",
            origin: Published,
            expected: simple(9, 8),
        },
        CatalogEntry {
            name: "generalized_pauli_f5_n2",
            summary: "clock-and-shift Z_2 x Z_2 grading of M_2(F_5)",
            origin: Published,
            expected: simple(4, 3),
        },
        CatalogEntry {
            name: "generalized_pauli_f5_n4",
            summary: "clock-and-shift Z_4 x Z_4 grading of M_4(F_5)",
            origin: Published,
            expected: simple(16, 15),
        },
        CatalogEntry {
            name: "twisted_pauli_f5",
            summary: "Pauli grading with psi = conj(S), alpha = swap",
            origin: Synthetic,
            expected: simple(4, 3),
        },
        CatalogEntry {
            name: "hom_pauli_f5",
            summary: "Pauli grading with psi = phi = conj(S), alpha = beta = swap",
            origin: Synthetic,
            expected: simple(4, 3),
        },
        CatalogEntry {
            name: "clock_shift_twisted_f7_n3",
            summary: "clock-and-shift grading of M_3(F_7) with psi = conj(X_a), phi = conj(X_b)",
            origin: Synthetic,
            expected: simple(9, 8),
        },
        CatalogEntry {
            name: "block_diagonal_pair_f5",
            summary: "two M_2 blocks in M_4(F_5), one class each",
            origin: Synthetic,
            expected: expect(8, 2, 2, 0, CriterionInapplicable, Some(false), true),
        },
        CatalogEntry {
            name: "block_diagonal_pair_q",
            summary: "two M_2 blocks in M_4(Q), one class each",
            origin: Synthetic,
            expected: expect(8, 2, 2, 0, CriterionInapplicable, None, true),
        },
        CatalogEntry {
            name: "corner_with_annihilator_f5",
            summary: "Pauli corner of M_4(F_5) plus a central square-zero element",
            origin: Synthetic,
            expected: expect(5, 3, 1, 1, CriterionInapplicable, Some(false), false),
        },
        CatalogEntry {
            name: "nilpotent_z4_q",
            summary: "Z_4-graded nilpotent algebra in M_4(Q) with a nonzero centre",
            origin: Synthetic,
            expected: expect(3, 2, 1, 1, No, Some(false), false),
        },
    ]
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

pub fn build(name: &str) -> Result<AnyAlgebra, CatalogError> {
    let fp = |p| PrimeField::new(p).expect("catalog moduli are prime");
    Ok(match name {
        "pauli_f5" => AnyAlgebra::Prime(pauli_m2(fp(5))?),
        "pauli_f13" => AnyAlgebra::Prime(pauli_m2(fp(13))?),
        "generalized_pauli_f7_n3" => AnyAlgebra::Prime(generalized_pauli(fp(7), 3)?),
        "generalized_pauli_f5_n2" => AnyAlgebra::Prime(generalized_pauli(fp(5), 2)?),
        "generalized_pauli_f5_n4" => AnyAlgebra::Prime(generalized_pauli(fp(5), 4)?),
        "twisted_pauli_f5" => AnyAlgebra::Prime(twisted_pauli(fp(5))?),
        "hom_pauli_f5" => AnyAlgebra::Prime(hom_pauli(fp(5))?),
        "clock_shift_twisted_f7_n3" => AnyAlgebra::Prime(clock_shift_twisted(fp(7), 3)?),
        "block_diagonal_pair_f5" => AnyAlgebra::Prime(block_diagonal_pair(fp(5))?),
        "block_diagonal_pair_q" => AnyAlgebra::Rational(block_diagonal_pair(Rationals)?),
        "corner_with_annihilator_f5" => AnyAlgebra::Prime(corner_with_annihilator(fp(5))?),
        "nilpotent_z4_q" => AnyAlgebra::Rational(nilpotent_z4(Rationals)?),
        other => return Err(CatalogError::UnknownEntry(other.to_string())),
    })
}
