//! Finite abelian grading groups `Z_{m_1} x ... x Z_{m_k}`, automorphisms
//! acting through integer matrices, and the twisted sum
//! `g (+) h = alpha(g) + beta(h)` of a regular BiHom-group.
//!
//! Automorphisms are tabulated as permutations of the element index on
//! construction, so every later query is a table lookup. Element indices are
//! mixed-radix with the first coordinate most significant, which makes index
//! order coincide with lexicographic order on coordinates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Groups larger than this are rejected; every check here is exhaustive.
pub const MAX_GROUP_SIZE: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic factor orders must be at least 1, got {0}")]
    BadOrder(u64),
    #[error("group has more than {MAX_GROUP_SIZE} elements")]
    TooLarge,
    #[error("expected {expected} coordinates, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("coordinate {index} = {value} is outside [0, {order})")]
    OutOfRange { index: usize, value: i64, order: u64 },
    #[error("automorphism matrix must be {0}x{0}")]
    BadMatrixShape(usize),
    #[error("matrix entry ({row},{col}) does not respect the cyclic orders")]
    NotWellDefined { row: usize, col: usize },
    #[error("map is not bijective: {0} and {1} have the same image")]
    NotBijective(GroupElem, GroupElem),
}

/// An element of the grading group, reduced modulo the factor orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(Vec<u64>);

impl GroupElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
}

impl GroupSpec {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        let mut size: usize = 1;
        for &m in &orders {
            if m == 0 {
                return Err(GroupError::BadOrder(m));
            }
            size = usize::try_from(m)
                .ok()
                .and_then(|m| size.checked_mul(m))
                .filter(|&s| s <= MAX_GROUP_SIZE)
                .ok_or(GroupError::TooLarge)?;
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        Ok(GroupSpec {
            orders,
            strides,
            size,
        })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Validates already-reduced coordinates.
    pub fn elem(&self, coords: &[i64]) -> Result<GroupElem, GroupError> {
        self.check_rank(coords.len())?;
        for (index, (&value, &order)) in coords.iter().zip(&self.orders).enumerate() {
            if value < 0 || value as u64 >= order {
                return Err(GroupError::OutOfRange {
                    index,
                    value,
                    order,
                });
            }
        }
        Ok(GroupElem(coords.iter().map(|&c| c as u64).collect()))
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElem, GroupError> {
        self.check_rank(coords.len())?;
        Ok(GroupElem(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &m)| (c as i128).rem_euclid(m as i128) as u64)
                .collect(),
        ))
    }

    fn check_rank(&self, found: usize) -> Result<(), GroupError> {
        if found == self.rank() {
            Ok(())
        } else {
            Err(GroupError::RankMismatch {
                expected: self.rank(),
                found,
            })
        }
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.orders).all(|(c, m)| c < m)
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.rank()])
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), m)| ((*x as u128 + *y as u128) % *m as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, m)| (m - x) % m)
                .collect(),
        )
    }

    pub fn index(&self, g: &GroupElem) -> usize {
        g.0.iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element(&self, mut index: usize) -> GroupElem {
        let mut coords = Vec::with_capacity(self.rank());
        for &s in &self.strides {
            coords.push((index / s) as u64);
            index %= s;
        }
        GroupElem(coords)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.size).map(move |i| self.element(i))
    }

    /// The standard generators `e_1, ..., e_k` (skipping trivial factors).
    pub fn generators(&self) -> Vec<GroupElem> {
        (0..self.rank())
            .filter(|&i| self.orders[i] > 1)
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = 1;
                GroupElem(c)
            })
            .collect()
    }
}

/// A group automorphism `g -> M g`, tabulated as a permutation of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAuto {
    matrix: Vec<Vec<i64>>,
    image: Vec<usize>,
    preimage: Vec<usize>,
}

impl GroupAuto {
    pub fn new(group: &GroupSpec, matrix: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let k = group.rank();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(GroupError::BadMatrixShape(k));
        }
        // Entry (i,j) must send m_j * e_j to zero in Z_{m_i}.
        for (i, row) in matrix.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let scaled = a as i128 * group.orders[j] as i128;
                if scaled.rem_euclid(group.orders[i] as i128) != 0 {
                    return Err(GroupError::NotWellDefined { row: i, col: j });
                }
            }
        }
        let mut image = Vec::with_capacity(group.size());
        let mut preimage = vec![usize::MAX; group.size()];
        for (idx, g) in group.elements().enumerate() {
            let coords: Vec<i64> = (0..k)
                .map(|i| {
                    let s = (0..k)
                        .map(|j| matrix[i][j] as i128 * g.0[j] as i128)
                        .sum::<i128>()
                        .rem_euclid(group.orders[i] as i128);
                    s as i64
                })
                .collect();
            let h = group.elem(&coords).expect("reduced coordinates");
            let hi = group.index(&h);
            if preimage[hi] != usize::MAX {
                return Err(GroupError::NotBijective(group.element(preimage[hi]), g));
            }
            preimage[hi] = idx;
            image.push(hi);
        }
        Ok(GroupAuto {
            matrix,
            image,
            preimage,
        })
    }

    pub fn identity(group: &GroupSpec) -> Self {
        let k = group.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        GroupAuto::new(group, matrix).expect("identity is an automorphism")
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn apply_inverse_index(&self, i: usize) -> usize {
        self.preimage[i]
    }

    /// Order of the automorphism as a permutation.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.image.len()];
        let mut acc: u64 = 1;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i];
                len += 1;
            }
            acc = num_integer::lcm(acc, len);
        }
        acc
    }
}

/// A regular BiHom-group: an abelian group with two automorphisms.
/// Commutation of `alpha` and `beta` is checked by [`BiHomGroup::check_commuting`],
/// not assumed, so that non-commuting input can be reported with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiHomGroup {
    group: GroupSpec,
    alpha: GroupAuto,
    beta: GroupAuto,
}

impl BiHomGroup {
    pub fn new(group: GroupSpec, alpha: GroupAuto, beta: GroupAuto) -> Self {
        BiHomGroup { group, alpha, beta }
    }

    /// Both twists trivial: an ordinary abelian group grading.
    pub fn untwisted(group: GroupSpec) -> Self {
        let id = GroupAuto::identity(&group);
        BiHomGroup::new(group, id.clone(), id)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn alpha(&self) -> &GroupAuto {
        &self.alpha
    }

    pub fn beta(&self) -> &GroupAuto {
        &self.beta
    }

    pub fn apply_alpha(&self, g: &GroupElem) -> GroupElem {
        self.group.element(self.alpha.apply_index(self.group.index(g)))
    }

    pub fn apply_beta(&self, g: &GroupElem) -> GroupElem {
        self.group.element(self.beta.apply_index(self.group.index(g)))
    }

    pub fn alpha_inverse(&self, g: &GroupElem) -> GroupElem {
        self.group
            .element(self.alpha.apply_inverse_index(self.group.index(g)))
    }

    pub fn beta_inverse(&self, g: &GroupElem) -> GroupElem {
        self.group
            .element(self.beta.apply_inverse_index(self.group.index(g)))
    }

    /// `alpha^i(beta^j(g))`.
    pub fn twist_power(&self, i: u64, j: u64, g: &GroupElem) -> GroupElem {
        let mut idx = self.group.index(g);
        for _ in 0..j % self.beta.order() {
            idx = self.beta.apply_index(idx);
        }
        for _ in 0..i % self.alpha.order() {
            idx = self.alpha.apply_index(idx);
        }
        self.group.element(idx)
    }

    /// `g (+) h = alpha(g) + beta(h)`.
    pub fn bihom_sum(&self, g: &GroupElem, h: &GroupElem) -> GroupElem {
        self.group.add(&self.apply_alpha(g), &self.apply_beta(h))
    }

    /// `-beta^{-1}(alpha(g))`, the partner degree whose product with `g` lands in degree zero.
    pub fn zero_partner(&self, g: &GroupElem) -> GroupElem {
        self.group.neg(&self.beta_inverse(&self.apply_alpha(g)))
    }

    /// `{alpha^i beta^j (g) : i, j >= 0}`, plus negatives when `signed`.
    pub fn orbit(&self, g: &GroupElem, signed: bool) -> BTreeSet<GroupElem> {
        let mut seen = vec![false; self.group.size()];
        let start = self.group.index(g);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in [self.alpha.apply_index(i), self.beta.apply_index(i)] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let mut out = BTreeSet::new();
        for (i, s) in seen.iter().enumerate() {
            if *s {
                let e = self.group.element(i);
                if signed {
                    out.insert(self.group.neg(&e));
                }
                out.insert(e);
            }
        }
        out
    }

    /// `Err(g)` with the first `g` where `alpha(beta(g)) != beta(alpha(g))`.
    /// Generators are tried first; the remaining elements follow in lexicographic order.
    pub fn check_commuting(&self) -> Result<(), GroupElem> {
        let commutes = |i: usize| {
            self.alpha.apply_index(self.beta.apply_index(i))
                == self.beta.apply_index(self.alpha.apply_index(i))
        };
        for g in self.group.generators() {
            if !commutes(self.group.index(&g)) {
                return Err(g);
            }
        }
        match (0..self.group.size()).find(|&i| !commutes(i)) {
            Some(i) => Err(self.group.element(i)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn klein() -> GroupSpec {
        GroupSpec::new(vec![2, 2]).unwrap()
    }

    fn swap(g: &GroupSpec) -> GroupAuto {
        GroupAuto::new(g, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn e(g: &GroupSpec, c: &[i64]) -> GroupElem {
        g.elem(c).unwrap()
    }

    #[test]
    fn untwisted_sum_is_addition() {
        let g = klein();
        let bh = BiHomGroup::untwisted(g.clone());
        assert_eq!(bh.bihom_sum(&e(&g, &[1, 0]), &e(&g, &[0, 1])), e(&g, &[1, 1]));
        assert_eq!(bh.bihom_sum(&g.zero(), &g.zero()), g.zero());
    }

    #[test]
    fn swap_twisted_sum() {
        let g = klein();
        let bh = BiHomGroup::new(g.clone(), swap(&g), GroupAuto::identity(&g));
        // swap(1,0) + (0,1) = (0,1) + (0,1)
        assert_eq!(bh.bihom_sum(&e(&g, &[1, 0]), &e(&g, &[0, 1])), g.zero());
        assert_eq!(bh.bihom_sum(&g.zero(), &g.zero()), g.zero());
    }

    #[test]
    fn orbits() {
        let g = klein();
        let id = BiHomGroup::untwisted(g.clone());
        assert_eq!(
            id.orbit(&e(&g, &[1, 0]), false),
            BTreeSet::from([e(&g, &[1, 0])])
        );
        let sw = BiHomGroup::new(g.clone(), swap(&g), GroupAuto::identity(&g));
        let orbit = sw.orbit(&e(&g, &[1, 0]), false);
        assert_eq!(orbit, BTreeSet::from([e(&g, &[0, 1]), e(&g, &[1, 0])]));
        assert_eq!(sw.orbit(&e(&g, &[1, 0]), true), orbit);
    }

    #[test]
    fn signed_orbit_in_z3() {
        let g = GroupSpec::new(vec![3]).unwrap();
        let bh = BiHomGroup::untwisted(g.clone());
        assert_eq!(
            bh.orbit(&e(&g, &[1]), true),
            BTreeSet::from([e(&g, &[1]), e(&g, &[2])])
        );
    }

    #[test]
    fn commuting_checks() {
        let g = klein();
        let sw = swap(&g);
        assert!(BiHomGroup::new(g.clone(), sw.clone(), sw.clone())
            .check_commuting()
            .is_ok());
        assert!(
            BiHomGroup::new(g.clone(), sw.clone(), GroupAuto::identity(&g))
                .check_commuting()
                .is_ok()
        );
        let shear = GroupAuto::new(&g, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let bh = BiHomGroup::new(g.clone(), sw, shear);
        // alpha(beta(1,0)) = swap(1,1) = (1,1); beta(alpha(1,0)) = shear(0,1) = (0,1)
        assert_eq!(bh.check_commuting(), Err(e(&g, &[1, 0])));
        assert_ne!(
            bh.apply_alpha(&bh.apply_beta(&e(&g, &[1, 0]))),
            bh.apply_beta(&bh.apply_alpha(&e(&g, &[1, 0])))
        );
    }

    #[test]
    fn rejects_bad_automorphisms() {
        let g = GroupSpec::new(vec![2, 4]).unwrap();
        // Z_2 -> Z_4 via 1 is not well defined: 2 * 1 != 0 mod 4.
        assert!(matches!(
            GroupAuto::new(&g, vec![vec![1, 0], vec![1, 1]]),
            Err(GroupError::NotWellDefined { row: 1, col: 0 })
        ));
        // Z_2 -> Z_4 via 2 is fine; x -> 2x on Z_4 is not injective.
        assert!(GroupAuto::new(&g, vec![vec![1, 0], vec![2, 1]]).is_ok());
        assert!(matches!(
            GroupAuto::new(&g, vec![vec![1, 0], vec![0, 2]]),
            Err(GroupError::NotBijective(..))
        ));
        assert!(matches!(
            GroupAuto::new(&g, vec![vec![1, 0]]),
            Err(GroupError::BadMatrixShape(2))
        ));
    }

    #[test]
    fn element_validation() {
        let g = klein();
        assert!(g.elem(&[2, 0]).is_err());
        assert!(g.elem(&[0]).is_err());
        assert_eq!(g.reduce(&[-1, 3]).unwrap(), e(&g, &[1, 1]));
        assert!(GroupSpec::new(vec![0]).is_err());
        assert!(GroupSpec::new(vec![1 << 11, 1 << 11]).is_err());
        let trivial = GroupSpec::new(vec![]).unwrap();
        assert_eq!(trivial.size(), 1);
        assert_eq!(trivial.zero().to_string(), "()");
    }

    /// Random pair of automorphisms of `Z_2^2` or `Z_3 x Z_3` or `Z_2 x Z_4`.
    fn twisted_group() -> impl Strategy<Value = BiHomGroup> {
        let shapes = prop_oneof![Just(vec![2u64, 2]), Just(vec![3u64, 3]), Just(vec![2u64, 4])];
        (shapes, prop::collection::vec(-3i64..4, 8)).prop_filter_map(
            "matrices must be automorphisms",
            |(orders, m)| {
                let g = GroupSpec::new(orders).ok()?;
                let a = GroupAuto::new(&g, vec![vec![m[0], m[1]], vec![m[2], m[3]]]).ok()?;
                let b = GroupAuto::new(&g, vec![vec![m[4], m[5]], vec![m[6], m[7]]]).ok()?;
                Some(BiHomGroup::new(g, a, b))
            },
        )
    }

    proptest! {
        #[test]
        fn orbit_is_idempotent_and_inverse_closed(bh in twisted_group(), seed in 0usize..64) {
            let g = bh.group().element(seed % bh.group().size());
            let orbit = bh.orbit(&g, false);
            for h in &orbit {
                prop_assert!(bh.orbit(h, false).is_subset(&orbit));
                prop_assert!(orbit.contains(&bh.alpha_inverse(h)));
                prop_assert!(orbit.contains(&bh.beta_inverse(h)));
            }
            let signed = bh.orbit(&g, true);
            for h in &orbit {
                prop_assert!(signed.contains(&bh.group().neg(h)));
            }
        }

        #[test]
        fn bihom_sum_matches_direct_evaluation(bh in twisted_group()) {
            let grp = bh.group();
            let m = bh.alpha().matrix().to_vec();
            let n = bh.beta().matrix().to_vec();
            for g in grp.elements() {
                for h in grp.elements() {
                    let coords: Vec<i64> = (0..2).map(|i| {
                        (0..2).map(|j| m[i][j] * g.coords()[j] as i64 + n[i][j] * h.coords()[j] as i64).sum()
                    }).collect();
                    prop_assert_eq!(bh.bihom_sum(&g, &h), grp.reduce(&coords).unwrap());
                }
            }
        }

        #[test]
        fn commuting_verdict_is_exhaustive(bh in twisted_group()) {
            let exhaustive = bh.group().elements().find(|g| {
                bh.apply_alpha(&bh.apply_beta(g)) != bh.apply_beta(&bh.apply_alpha(g))
            });
            match bh.check_commuting() {
                Ok(()) => prop_assert!(exhaustive.is_none()),
                Err(w) => {
                    prop_assert!(exhaustive.is_some());
                    prop_assert_ne!(bh.apply_alpha(&bh.apply_beta(&w)), bh.apply_beta(&bh.apply_alpha(&w)));
                }
            }
        }

        #[test]
        fn twist_power_composes(bh in twisted_group(), seed in 0usize..64, i in 0u64..6, j in 0u64..6) {
            let g = bh.group().element(seed % bh.group().size());
            let mut direct = g.clone();
            for _ in 0..j { direct = bh.apply_beta(&direct); }
            for _ in 0..i { direct = bh.apply_alpha(&direct); }
            prop_assert_eq!(bh.twist_power(i, j, &g), direct);
        }
    }
}
