//! Sublattice embedding search and forbidden-sublattice profiles.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Default node budget for a single embedding search.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

const UNSET: usize = usize::MAX;

/// An injective map whose image is a sublattice isomorphic to the source.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub source: FiniteLattice,
    pub target: FiniteLattice,
    pub map: Vec<Elem>,
}

impl EmbeddingWitness {
    /// Validates injectivity and preservation of meets and joins.
    pub fn new(source: &FiniteLattice, target: &FiniteLattice, map: Vec<Elem>) -> Result<Self> {
        if let Some(msg) = embedding_defect(source, target, &map) {
            return Err(Error::ConstructionFailed(msg));
        }
        Ok(EmbeddingWitness {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    /// Pairs of `(source label, target label)` in source index order.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(s, &t)| (self.source.label(s).to_string(), self.target.label(t).to_string()))
            .collect()
    }

    pub fn image(&self) -> Vec<Elem> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len()
    }

    pub fn compose(&self, next: &EmbeddingWitness) -> Result<EmbeddingWitness> {
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        EmbeddingWitness::new(&self.source, &next.target, map)
    }
}

/// Describes why `map` is not a lattice embedding, or `None` if it is one.
pub fn embedding_defect(source: &FiniteLattice, target: &FiniteLattice, map: &[Elem]) -> Option<String> {
    let n = source.len();
    if map.len() != n {
        return Some(format!("map has {} entries for {} elements", map.len(), n));
    }
    if let Some(&bad) = map.iter().find(|&&t| t >= target.len()) {
        return Some(format!("image index {bad} out of range"));
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && map[a] == map[b] {
                return Some(format!("`{}` and `{}` share an image", source.label(a), source.label(b)));
            }
            if map[source.meet(a, b)] != target.meet(map[a], map[b]) {
                return Some(format!("meet of `{}` and `{}` not preserved", source.label(a), source.label(b)));
            }
            if map[source.join(a, b)] != target.join(map[a], map[b]) {
                return Some(format!("join of `{}` and `{}` not preserved", source.label(a), source.label(b)));
            }
        }
    }
    None
}

type Forced = Option<(Elem, Elem, bool)>;

struct Plan {
    order: Vec<Elem>,
    /// For each step, an earlier pair whose meet or join is the element placed at this step.
    forced: Vec<Forced>,
}

fn plan(p: &FiniteLattice) -> Plan {
    let k = p.len();
    let h = p.heights();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    let mut forced = Vec::with_capacity(k);
    for _ in 0..k {
        let mut pick: Option<(Elem, Forced)> = None;
        'scan: for &a in &order {
            for &b in &order {
                for (is_join, c) in [(false, p.meet(a, b)), (true, p.join(a, b))] {
                    if !placed[c] {
                        pick = Some((c, Some((a, b, is_join))));
                        break 'scan;
                    }
                }
            }
        }
        let (e, f) = pick.unwrap_or_else(|| {
            let e = (0..k)
                .filter(|&e| !placed[e])
                .min_by_key(|&e| {
                    let links = order.iter().filter(|&&q| p.comparable(e, q)).count();
                    (usize::MAX - links, h[e], e)
                })
                .expect("unplaced element");
            (e, None)
        });
        placed[e] = true;
        order.push(e);
        forced.push(f);
    }
    Plan { order, forced }
}

struct Searcher<'a> {
    p: &'a FiniteLattice,
    h: &'a FiniteLattice,
    plan: Plan,
    map: Vec<Elem>,
    inverse: Vec<Elem>,
    nodes: u64,
    budget: u64,
}

impl Searcher<'_> {
    fn consistent(&self, step: usize, x: Elem, y: Elem) -> bool {
        let (p, h) = (self.p, self.h);
        if self.inverse[y] != UNSET {
            return false;
        }
        if p.down_set(x).len() > h.down_set(y).len() || p.up_set(x).len() > h.up_set(y).len() {
            return false;
        }
        for &q in &self.plan.order[..step] {
            let yq = self.map[q];
            if p.leq(x, q) != h.leq(y, yq) || p.leq(q, x) != h.leq(yq, y) {
                return false;
            }
            for (pm, hm) in [(p.meet(x, q), h.meet(y, yq)), (p.join(x, q), h.join(y, yq))] {
                let img = if pm == x { y } else { self.map[pm] };
                if img != UNSET && img != hm {
                    return false;
                }
                let pre = if hm == y { x } else { self.inverse[hm] };
                if pre != UNSET && pre != pm {
                    return false;
                }
            }
        }
        true
    }

    fn run<F: FnMut(&[Elem]) -> ControlFlow<()>>(&mut self, step: usize, f: &mut F) -> Result<ControlFlow<()>> {
        if step == self.p.len() {
            return Ok(f(&self.map));
        }
        let x = self.plan.order[step];
        let candidates: Vec<Elem> = match self.plan.forced[step] {
            Some((a, b, is_join)) => {
                let (ya, yb) = (self.map[a], self.map[b]);
                vec![if is_join { self.h.join(ya, yb) } else { self.h.meet(ya, yb) }]
            }
            None => (0..self.h.len()).collect(),
        };
        for y in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            if !self.consistent(step, x, y) {
                continue;
            }
            self.map[x] = y;
            self.inverse[y] = x;
            let flow = self.run(step + 1, f);
            self.map[x] = UNSET;
            self.inverse[y] = UNSET;
            if flow? == ControlFlow::Break(()) {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `f` on every embedding of `pattern` into `host`, in search order, until it breaks.
pub fn for_each_embedding<F: FnMut(&[Elem]) -> ControlFlow<()>>(
    pattern: &FiniteLattice,
    host: &FiniteLattice,
    budget: u64,
    mut f: F,
) -> Result<()> {
    if pattern.len() > host.len() {
        return Ok(());
    }
    let mut s = Searcher {
        p: pattern,
        h: host,
        plan: plan(pattern),
        map: vec![UNSET; pattern.len()],
        inverse: vec![UNSET; host.len()],
        nodes: 0,
        budget,
    };
    let _ = s.run(0, &mut f)?;
    Ok(())
}

pub fn all_embeddings(pattern: &FiniteLattice, host: &FiniteLattice, budget: u64) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for_each_embedding(pattern, host, budget, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

pub fn find_embedding_budgeted(
    pattern: &FiniteLattice,
    host: &FiniteLattice,
    budget: u64,
) -> Result<Option<EmbeddingWitness>> {
    let mut found = None;
    for_each_embedding(pattern, host, budget, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    })?;
    found
        .map(|m| EmbeddingWitness::new(pattern, host, m))
        .transpose()
}

pub fn find_embedding(pattern: &FiniteLattice, host: &FiniteLattice) -> Result<Option<EmbeddingWitness>> {
    find_embedding_budgeted(pattern, host, DEFAULT_BUDGET)
}

pub fn embeds(pattern: &FiniteLattice, host: &FiniteLattice) -> Result<bool> {
    Ok(find_embedding(pattern, host)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenProfile {
    pub name: String,
    pub patterns: Vec<String>,
}

/// Profile names: the full pentagon-variety list and one per semidistributive cover sequence.
pub const PROFILE_NAMES: [&str; 6] = ["n-full", "l6-8", "l9", "l10", "l13", "l14"];

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn dual_list(list: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = list
        .iter()
        .map(|n| catalog::dual_name(n).expect("catalog entries in profiles have duals").to_string())
        .collect();
    v.sort_by_key(|n| catalog::FIXED.iter().position(|m| m == n));
    v
}

pub fn profile(name: &str) -> Result<ForbiddenProfile> {
    const L9_UP: &[&str] = &["L9", "L10", "L11", "L12", "L13", "L14", "L15"];
    const L10_UP: &[&str] = &["L10", "L11", "L12", "L13", "L14", "L15"];
    const L13_SET: &[&str] = &["L6", "L7", "L8", "L9", "L10", "L11", "L12", "L14", "L15"];
    let patterns = match name {
        "n-full" => {
            let mut v = vec!["M3".to_string()];
            v.extend(names(&catalog::MCKENZIE));
            v
        }
        "l6-8" => names(L9_UP),
        "l9" => names(L10_UP),
        "l10" => dual_list(L10_UP),
        "l13" => names(L13_SET),
        "l14" => dual_list(L13_SET),
        _ => return Err(Error::UnknownProfile(name.to_string())),
    };
    Ok(ForbiddenProfile {
        name: name.to_string(),
        patterns,
    })
}

/// Every profile pattern that embeds in `host`, each with one witness.
pub fn contains_forbidden(
    host: &FiniteLattice,
    profile: &ForbiddenProfile,
    budget: u64,
) -> Result<Vec<(String, EmbeddingWitness)>> {
    let mut hits = Vec::new();
    for name in &profile.patterns {
        let p = catalog::get(name)?;
        if let Some(w) = find_embedding_budgeted(&p, host, budget)? {
            hits.push((name.clone(), w));
        }
    }
    Ok(hits)
}
