#![allow(dead_code)]

use std::collections::BTreeSet;

use bihom_core::catalog::{self, AnyAlgebra};
use bihom_core::{BiHomGroup, Field, GradedBiHomAlgebra, GroupElem};

pub trait Visitor {
    fn visit<F: Field>(&mut self, name: &str, a: &GradedBiHomAlgebra<F>);
}

pub fn for_each_entry<V: Visitor>(v: &mut V) {
    for e in catalog::entries() {
        match catalog::build(e.name).unwrap() {
            AnyAlgebra::Rational(a) => v.visit(e.name, &a),
            AnyAlgebra::Prime(a) => v.visit(e.name, &a),
        }
    }
}

pub fn deg<F: Field>(a: &GradedBiHomAlgebra<F>, c: &[i64]) -> GroupElem {
    a.group().group().elem(c).unwrap()
}

/// `{ alpha^i beta^j (g) }` by exhausting exponents, optionally with negatives.
pub fn orbit_by_exponents(bhg: &BiHomGroup, g: &GroupElem, signed: bool) -> BTreeSet<GroupElem> {
    let mut out = BTreeSet::new();
    for i in 0..bhg.alpha().order() {
        for j in 0..bhg.beta().order() {
            let h = bhg.twist_power(i, j, g);
            if signed {
                out.insert(bhg.group().neg(&h));
            }
            out.insert(h);
        }
    }
    out
}

fn iterate(bhg: &BiHomGroup, times: usize, g: &GroupElem) -> GroupElem {
    (0..times).fold(g.clone(), |x, _| bhg.apply_alpha(&x))
}

/// `alpha^{t-1}(g_1) + sum_{s=2..t} alpha^{t-s} beta(g_s)`, written out term by term.
pub fn closed_form_sum(bhg: &BiHomGroup, chain: &[GroupElem]) -> GroupElem {
    let t = chain.len();
    let mut total = iterate(bhg, t - 1, &chain[0]);
    for s in 2..=t {
        let term = iterate(bhg, t - s, &bhg.apply_beta(&chain[s - 1]));
        total = bhg.group().add(&total, &term);
    }
    total
}

/// Length of the shortest chain from `g` to `target` found by enumerating
/// every chain of length at most `|support| + 1`.
pub fn brute_force_connection(
    bhg: &BiHomGroup,
    sigma: &BTreeSet<GroupElem>,
    g: &GroupElem,
    target: &GroupElem,
) -> Option<usize> {
    let entry = orbit_by_exponents(bhg, g, false);
    let exit = orbit_by_exponents(bhg, target, true);
    let max = sigma.len() + 1;
    let degrees: Vec<&GroupElem> = sigma.iter().collect();
    let mut best: Option<usize> = None;
    for first in degrees.iter().filter(|d| entry.contains(**d)) {
        let mut chain = vec![(*first).clone()];
        extend(bhg, sigma, &degrees, &exit, max, &mut chain, &mut best);
    }
    best
}

fn extend(
    bhg: &BiHomGroup,
    sigma: &BTreeSet<GroupElem>,
    degrees: &[&GroupElem],
    exit: &BTreeSet<GroupElem>,
    max: usize,
    chain: &mut Vec<GroupElem>,
    best: &mut Option<usize>,
) {
    if best.is_some_and(|b| b <= chain.len()) {
        return;
    }
    let total = closed_form_sum(bhg, chain);
    if exit.contains(&total) {
        *best = Some(chain.len());
        return;
    }
    // Only a final sum may leave the support.
    if chain.len() > 1 && !sigma.contains(&total) {
        return;
    }
    if chain.len() == max {
        return;
    }
    for d in degrees {
        chain.push((*d).clone());
        extend(bhg, sigma, degrees, exit, max, chain, best);
        chain.pop();
    }
}
