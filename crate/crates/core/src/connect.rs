//! Connections between support degrees and the classes they induce.
//!
//! A chain `g_1, ..., g_k` from `g` to `g'` is tracked through its partial
//! sums `s_2 = alpha(g_1) + beta(g_2)`, `s_{t+1} = alpha(s_t) + beta(g_{t+1})`.
//! Intermediate sums must stay in the support and the last one must land in
//! the signed orbit of `g'`, so the search is a breadth-first walk over
//! support elements.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{GradedBiHomAlgebra, Support};
use crate::field::Field;
use crate::group::{BiHomGroup, GroupElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error("degree {0} is not in the support")]
    NotInSupport(GroupElem),
    #[error("support is not symmetric: the negative of {0} is missing")]
    AsymmetricSupport(GroupElem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Certificate that `g` is connected to `g'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionWitness {
    pub chain: Vec<GroupElem>,
    /// `(i, j)` with `g_1 = alpha^i beta^j (g)`.
    pub entry_exponents: (u64, u64),
    pub exit_sign: Sign,
    /// `(m, n)` with final sum `= sign * alpha^m beta^n (g')`.
    pub exit_exponents: (u64, u64),
    /// `s_2, ..., s_k`; empty when the chain has one element.
    pub partial_sums: Vec<GroupElem>,
}

impl ConnectionWitness {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// The total sum, which is `g_1` itself for a one-element chain.
    pub fn final_sum(&self) -> Option<&GroupElem> {
        self.partial_sums.last().or(self.chain.first())
    }
}

/// A broken condition found while replaying a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptyChain,
    /// `g_t` is not in the support.
    ChainOutsideSupport { position: usize, degree: GroupElem },
    /// Condition (1): `g_1` is not `alpha^i beta^j (g)` for the recorded exponents.
    Condition1 { expected: GroupElem, found: GroupElem },
    /// Recorded partial sums disagree with the recurrence.
    PartialSums { position: usize, expected: Option<GroupElem> },
    /// Condition (2): an intermediate sum leaves the support.
    Condition2 { position: usize, sum: GroupElem },
    /// Condition (3): the total sum is not the recorded signed image of `g'`.
    Condition3 { expected: GroupElem, found: GroupElem },
}

impl Violation {
    /// Which numbered condition the violation breaks; 0 for structural problems.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Condition1 { .. } => 1,
            Violation::Condition2 { .. } => 2,
            Violation::Condition3 { .. } => 3,
            _ => 0,
        }
    }
}

fn check_inputs<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    sigma: &Support,
    degrees: &[&GroupElem],
) -> Result<(), ConnectError> {
    if let Some(w) = sigma.asymmetric_witness() {
        return Err(ConnectError::AsymmetricSupport(w.clone()));
    }
    for g in degrees {
        if !sigma.contains(g) || !a.group().group().contains(g) {
            return Err(ConnectError::NotInSupport((*g).clone()));
        }
    }
    Ok(())
}

fn signed(bhg: &BiHomGroup, sign: Sign, g: &GroupElem) -> GroupElem {
    match sign {
        Sign::Plus => g.clone(),
        Sign::Minus => bhg.group().neg(g),
    }
}

/// Least `(i, j)` in lexicographic order with `alpha^i beta^j (from) = to`.
fn exponents(bhg: &BiHomGroup, from: &GroupElem, to: &GroupElem) -> Option<(u64, u64)> {
    for i in 0..bhg.alpha().order() {
        for j in 0..bhg.beta().order() {
            if bhg.twist_power(i, j, from) == *to {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(sign, m, n)` with `sign * alpha^m beta^n (target) = s`, preferring `+`.
fn exit_data(bhg: &BiHomGroup, target: &GroupElem, s: &GroupElem) -> Option<(Sign, (u64, u64))> {
    for sign in [Sign::Plus, Sign::Minus] {
        if let Some(e) = exponents(bhg, target, &signed(bhg, sign, s)) {
            return Some((sign, e));
        }
    }
    None
}

/// Shortest connection from `g` to `g'`, lexicographically least among the shortest.
pub fn connected<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    g: &GroupElem,
    target: &GroupElem,
) -> Result<Option<ConnectionWitness>, ConnectError> {
    let sigma = a.support();
    check_inputs(a, &sigma, &[g, target])?;
    let starts: Vec<GroupElem> = a
        .group()
        .orbit(g, false)
        .into_iter()
        .filter(|h| sigma.contains(h))
        .collect();
    Ok(search(a.group(), &sigma, g, target, &starts))
}

/// Like [`connected`], with the first chain element fixed to `start`,
/// which must lie in the orbit of `g` and in the support.
pub fn connected_from<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    g: &GroupElem,
    target: &GroupElem,
    start: &GroupElem,
) -> Result<Option<ConnectionWitness>, ConnectError> {
    let sigma = a.support();
    check_inputs(a, &sigma, &[g, target, start])?;
    if !a.group().orbit(g, false).contains(start) {
        return Ok(None);
    }
    Ok(search(a.group(), &sigma, g, target, std::slice::from_ref(start)))
}

fn search(
    bhg: &BiHomGroup,
    sigma: &Support,
    g: &GroupElem,
    target: &GroupElem,
    starts: &[GroupElem],
) -> Option<ConnectionWitness> {
    let exits = bhg.orbit(target, true);
    let finish = |chain: Vec<GroupElem>, partial_sums: Vec<GroupElem>| {
        let total = partial_sums.last().unwrap_or(&chain[0]).clone();
        let entry_exponents = exponents(bhg, g, &chain[0]).expect("start lies in the orbit");
        let (exit_sign, exit_exponents) =
            exit_data(bhg, target, &total).expect("accepted sums lie in the signed orbit");
        ConnectionWitness {
            chain,
            entry_exponents,
            exit_sign,
            exit_exponents,
            partial_sums,
        }
    };
    let mut starts = starts.to_vec();
    starts.sort();
    if let Some(s) = starts.iter().find(|s| exits.contains(*s)) {
        return Some(finish(vec![s.clone()], Vec::new()));
    }
    // Each frontier entry is (chain, partial sums); the state is the last sum.
    let mut visited: BTreeSet<GroupElem> = starts.iter().cloned().collect();
    let mut frontier: Vec<(Vec<GroupElem>, Vec<GroupElem>)> =
        starts.iter().map(|s| (vec![s.clone()], Vec::new())).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (chain, sums) in &frontier {
            let state = sums.last().unwrap_or(&chain[0]);
            let shifted = bhg.apply_alpha(state);
            for h in sigma.degrees() {
                let t = bhg.group().add(&shifted, &bhg.apply_beta(h));
                if exits.contains(&t) {
                    let mut c = chain.clone();
                    c.push(h.clone());
                    let mut s = sums.clone();
                    s.push(t);
                    return Some(finish(c, s));
                }
                if sigma.contains(&t) && visited.insert(t.clone()) {
                    let mut c = chain.clone();
                    c.push(h.clone());
                    let mut s = sums.clone();
                    s.push(t);
                    next.push((c, s));
                }
            }
        }
        frontier = next;
    }
    None
}

/// Replays every condition of a witness independently of the search.
pub fn verify_witness<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    g: &GroupElem,
    target: &GroupElem,
    w: &ConnectionWitness,
) -> Result<(), Vec<Violation>> {
    let bhg = a.group();
    let sigma = a.support();
    let mut out = Vec::new();
    if w.chain.is_empty() {
        return Err(vec![Violation::EmptyChain]);
    }
    for (position, d) in w.chain.iter().enumerate() {
        if !sigma.contains(d) {
            out.push(Violation::ChainOutsideSupport {
                position,
                degree: d.clone(),
            });
        }
    }
    let (i, j) = w.entry_exponents;
    let entry = bhg.twist_power(i, j, g);
    if entry != w.chain[0] {
        out.push(Violation::Condition1 {
            expected: entry,
            found: w.chain[0].clone(),
        });
    }
    let mut state = w.chain[0].clone();
    let k = w.chain.len();
    for t in 1..k {
        state = bhg.bihom_sum(&state, &w.chain[t]);
        let recorded = w.partial_sums.get(t - 1);
        if recorded != Some(&state) {
            out.push(Violation::PartialSums {
                position: t + 1,
                expected: Some(state.clone()),
            });
        }
        if t < k - 1 {
            // Condition (2) reads the recorded sum when present.
            let s = recorded.unwrap_or(&state);
            if !sigma.contains(s) {
                out.push(Violation::Condition2 {
                    position: t + 1,
                    sum: s.clone(),
                });
            }
        }
    }
    if w.partial_sums.len() != k - 1 {
        out.push(Violation::PartialSums {
            position: w.partial_sums.len() + 1,
            expected: None,
        });
    }
    let (m, n) = w.exit_exponents;
    let expected = signed(bhg, w.exit_sign, &bhg.twist_power(m, n, target));
    if expected != state {
        out.push(Violation::Condition3 {
            expected,
            found: state,
        });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// The quotient of the support by the connection relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    classes: Vec<Vec<GroupElem>>,
    #[serde(serialize_with = "serialize_table")]
    witnesses: BTreeMap<(GroupElem, GroupElem), ConnectionWitness>,
}

fn serialize_table<S: serde::Serializer>(
    table: &BTreeMap<(GroupElem, GroupElem), ConnectionWitness>,
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        from: &'a GroupElem,
        to: &'a GroupElem,
        witness: &'a ConnectionWitness,
    }
    s.collect_seq(table.iter().map(|((from, to), witness)| Entry { from, to, witness }))
}

impl ClassPartition {
    /// Classes sorted internally, ordered by least element.
    pub fn classes(&self) -> &[Vec<GroupElem>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, g: &GroupElem) -> Option<&[GroupElem]> {
        self.classes
            .iter()
            .find(|c| c.binary_search(g).is_ok())
            .map(|c| c.as_slice())
    }

    /// Witnesses for every ordered pair found connected.
    pub fn witnesses(&self) -> &BTreeMap<(GroupElem, GroupElem), ConnectionWitness> {
        &self.witnesses
    }

    pub fn witness(&self, g: &GroupElem, h: &GroupElem) -> Option<&ConnectionWitness> {
        self.witnesses.get(&(g.clone(), h.clone()))
    }

    /// Same-class ordered pairs with no stored witness; empty whenever the
    /// relation is an equivalence.
    pub fn missing_witnesses(&self) -> Vec<(GroupElem, GroupElem)> {
        let mut out = Vec::new();
        for c in &self.classes {
            for g in c {
                for h in c {
                    if !self.witnesses.contains_key(&(g.clone(), h.clone())) {
                        out.push((g.clone(), h.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Runs the search on every ordered pair and merges connected pairs.
pub fn classes<F: Field>(a: &GradedBiHomAlgebra<F>) -> Result<ClassPartition, ConnectError> {
    let sigma = a.support();
    if let Some(w) = sigma.asymmetric_witness() {
        return Err(ConnectError::AsymmetricSupport(w.clone()));
    }
    let degrees: Vec<GroupElem> = sigma.degrees().iter().cloned().collect();
    let mut uf = UnionFind::<usize>::new(degrees.len());
    let mut witnesses = BTreeMap::new();
    for (i, g) in degrees.iter().enumerate() {
        for (j, h) in degrees.iter().enumerate() {
            if let Some(w) = connected(a, g, h)? {
                uf.union(i, j);
                witnesses.insert((g.clone(), h.clone()), w);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<GroupElem>> = BTreeMap::new();
    for (i, g) in degrees.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(g.clone());
    }
    let mut classes: Vec<Vec<GroupElem>> = groups.into_values().collect();
    classes.sort();
    Ok(ClassPartition { classes, witnesses })
}
