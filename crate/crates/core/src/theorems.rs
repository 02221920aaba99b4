//! Structural statements about lattices in the pentagon variety, checked exhaustively on finite lattices.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::decomp;
use crate::embed::{self, EmbeddingWitness};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::laws;
use crate::variety;

/// Violations kept verbatim per report; the rest are only counted.
pub const MAX_LISTED: usize = 16;
/// Largest lattice whose sublattices are enumerated by subset masks.
pub const SUBLATTICE_SCAN_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    L15Sublattice,
    CubeMeet,
    CubeJoin,
    DecBound,
    Degeneracy,
    TwelveElement,
    Staircase,
    StaircaseDual,
    TripleMeetCover,
    TripleJoinCover,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::L15Sublattice,
        TheoremId::CubeMeet,
        TheoremId::CubeJoin,
        TheoremId::DecBound,
        TheoremId::Degeneracy,
        TheoremId::TwelveElement,
        TheoremId::Staircase,
        TheoremId::StaircaseDual,
        TheoremId::TripleMeetCover,
        TheoremId::TripleJoinCover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::L15Sublattice => "l15-sublattice",
            TheoremId::CubeMeet => "cube-meet",
            TheoremId::CubeJoin => "cube-join",
            TheoremId::DecBound => "dec-bound",
            TheoremId::Degeneracy => "degeneracy",
            TheoremId::TwelveElement => "twelve-element",
            TheoremId::Staircase => "staircase",
            TheoremId::StaircaseDual => "staircase-dual",
            TheoremId::TripleMeetCover => "triple-meet-cover",
            TheoremId::TripleJoinCover => "triple-join-cover",
        }
    }

    /// The statement obtained by reversing the order.
    pub fn dual(self) -> TheoremId {
        match self {
            TheoremId::CubeMeet => TheoremId::CubeJoin,
            TheoremId::CubeJoin => TheoremId::CubeMeet,
            TheoremId::Staircase => TheoremId::StaircaseDual,
            TheoremId::StaircaseDual => TheoremId::Staircase,
            TheoremId::TripleMeetCover => TheoremId::TripleJoinCover,
            TheoremId::TripleJoinCover => TheoremId::TripleMeetCover,
            other => other,
        }
    }

    pub fn hypotheses(self) -> &'static [Hypothesis] {
        use Hypothesis::*;
        match self {
            TheoremId::L15Sublattice => &[NoDoublyReducible],
            TheoremId::CubeMeet
            | TheoremId::CubeJoin
            | TheoremId::Degeneracy
            | TheoremId::TripleMeetCover
            | TheoremId::TripleJoinCover => &[Whitman, InN5],
            TheoremId::DecBound
            | TheoremId::TwelveElement
            | TheoremId::Staircase
            | TheoremId::StaircaseDual => &[InN5, NoDoublyReducible],
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Whitman,
    InN5,
    NoDoublyReducible,
}

/// The gating facts of one lattice, computed once.
#[derive(Clone, Debug)]
pub struct Facts {
    pub whitman: bool,
    pub semidistributive: bool,
    pub in_n5: bool,
    pub doubly_reducible: Vec<Elem>,
}

impl Facts {
    pub fn of(l: &FiniteLattice) -> Result<Facts> {
        Ok(Facts {
            whitman: laws::whitman(l),
            semidistributive: laws::is_semidistributive(l),
            in_n5: variety::is_in_n5_variety(l)?,
            doubly_reducible: laws::doubly_reducible_elements(l),
        })
    }

    fn failure(&self, l: &FiniteLattice, hyps: &[Hypothesis]) -> Option<String> {
        for h in hyps {
            match h {
                Hypothesis::Whitman if !self.whitman => return Some("fails Whitman's condition".into()),
                Hypothesis::InN5 if !self.in_n5 => return Some("not in the variety generated by N5".into()),
                Hypothesis::NoDoublyReducible if !self.doubly_reducible.is_empty() => {
                    return Some(format!(
                        "doubly reducible elements: {}",
                        l.names(self.doubly_reducible.iter().copied()).join(", ")
                    ))
                }
                _ => {}
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Held,
    Violated,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub lattice: String,
    pub hash: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped_reason: Option<String>,
    pub hypothesis_instances: u64,
    pub violation_count: u64,
    pub conclusion_violations: Vec<Violation>,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl TheoremReport {
    fn skipped(id: TheoremId, l: &FiniteLattice, reason: String) -> TheoremReport {
        TheoremReport {
            theorem: id,
            lattice: l.display_name(),
            hash: l.canonical_form().hash_hex(),
            outcome: Outcome::Skipped,
            skipped_reason: Some(reason),
            hypothesis_instances: 0,
            violation_count: 0,
            conclusion_violations: Vec::new(),
            vacuous: true,
            elapsed_ms: None,
        }
    }

    fn from_tally(id: TheoremId, l: &FiniteLattice, t: Tally) -> TheoremReport {
        TheoremReport {
            theorem: id,
            lattice: l.display_name(),
            hash: l.canonical_form().hash_hex(),
            outcome: if t.count == 0 { Outcome::Held } else { Outcome::Violated },
            skipped_reason: None,
            hypothesis_instances: t.instances,
            violation_count: t.count,
            conclusion_violations: t.listed,
            vacuous: t.instances == 0,
            elapsed_ms: None,
        }
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    count: u64,
    listed: Vec<Violation>,
}

impl Tally {
    fn violation(&mut self, l: &FiniteLattice, elems: &[Elem], detail: impl Into<String>) {
        self.count += 1;
        if self.listed.len() < MAX_LISTED {
            self.listed.push(Violation {
                elements: l.names(elems.iter().copied()),
                detail: detail.into(),
            });
        }
    }
}

/// `(a1, a2, a3, b1, b2, b3)` in the order the hypotheses name them.
pub type SixTuple = [Elem; 6];

fn l15_defect(l: &FiniteLattice, t: &SixTuple) -> Option<&'static str> {
    let [a1, a2, a3, b1, b2, b3] = *t;
    let mut seen = t.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 6 {
        return Some("elements are not distinct");
    }
    if !(l.lt(a1, a2) && l.lt(a2, a3)) {
        return Some("a1 < a2 < a3");
    }
    if !(l.lt(b1, b2) && l.lt(b2, b3)) {
        return Some("b1 < b2 < b3");
    }
    if !l.lt(a1, b3) {
        return Some("a1 < b3");
    }
    if !l.lt(b1, a3) {
        return Some("b1 < a3");
    }
    if ![b1, b2, b3].iter().all(|&b| l.incomparable(a2, b)) {
        return Some("a2 incomparable to every b");
    }
    if ![a1, a2, a3].iter().all(|&a| l.incomparable(a, b2)) {
        return Some("b2 incomparable to every a");
    }
    if l.join(a2, b2) != l.join(a3, b3) {
        return Some("a2 v b2 = a3 v b3");
    }
    if l.meet(a2, b2) != l.meet(a1, b1) {
        return Some("a2 ^ b2 = a1 ^ b1");
    }
    None
}

/// Every six-tuple satisfying the order hypotheses, in lexicographic index order.
pub fn l15_tuples(l: &FiniteLattice) -> Vec<SixTuple> {
    let n = l.len();
    let mut out = Vec::new();
    for a2 in 0..n {
        for b2 in 0..n {
            if !l.incomparable(a2, b2) {
                continue;
            }
            let top = l.join(a2, b2);
            let bot = l.meet(a2, b2);
            for a1 in l.down_set(a2).iter().filter(|&x| x != a2 && l.incomparable(x, b2)) {
                for a3 in l.up_set(a2).iter().filter(|&x| x != a2 && l.incomparable(x, b2)) {
                    for b1 in l.down_set(b2).iter().filter(|&x| x != b2 && l.incomparable(a2, x)) {
                        if !l.lt(b1, a3) || l.meet(a1, b1) != bot {
                            continue;
                        }
                        for b3 in l.up_set(b2).iter().filter(|&x| x != b2 && l.incomparable(a2, x)) {
                            if l.lt(a1, b3) && l.join(a3, b3) == top {
                                out.push([a1, a2, a3, b1, b2, b3]);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The ten elements built from a hypothesis tuple, checked to form a copy of L15.
pub fn lemma_l15_witness(l: &FiniteLattice, t: &SixTuple) -> Result<EmbeddingWitness> {
    if let Some(clause) = l15_defect(l, t) {
        return Err(Error::HypothesisViolated(clause.to_string()));
    }
    if laws::has_doubly_reducible(l) {
        return Err(Error::HypothesisViolated("lattice has doubly reducible elements".into()));
    }
    let [_, a2, a3, _, b2, b3] = *t;
    let a1p = l.meet(a2, b3);
    let b1p = l.meet(a3, b2);
    let a3pp = l.join(a2, b1p);
    let b3pp = l.join(a1p, b2);
    let image = [
        ("a", l.join(a2, b2)),
        ("b", a3pp),
        ("c", b3pp),
        ("d", l.meet(a3pp, b3pp)),
        ("e", a2),
        ("f", l.join(a1p, b1p)),
        ("g", b2),
        ("h", a1p),
        ("i", b1p),
        ("j", l.meet(a2, b2)),
    ];
    let l15 = catalog::get("L15")?;
    let mut map = vec![0; l15.len()];
    for (label, e) in image {
        map[l15.elem(label)?] = e;
    }
    EmbeddingWitness::new(&l15, l, map).map_err(|e| Error::ConstructionFailed(e.to_string()))
}

fn scan_l15(l: &FiniteLattice, budget: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let mut exists: Option<bool> = None;
    for tuple in l15_tuples(l) {
        t.instances += 1;
        if lemma_l15_witness(l, &tuple).is_ok() {
            continue;
        }
        let has = match exists {
            Some(h) => h,
            None => {
                let h = embed::find_embedding_budgeted(&catalog::get("L15")?, l, budget)?.is_some();
                exists = Some(h);
                h
            }
        };
        if !has {
            t.violation(l, &tuple, "no sublattice isomorphic to L15");
        }
    }
    Ok(t)
}

/// Antichains of size 3 or 4 whose pairwise meets all equal `d`, as `(d, Y)`.
fn constant_meet_antichains(l: &FiniteLattice, max: usize) -> Vec<(Elem, Vec<Elem>)> {
    fn grow(l: &FiniteLattice, d: Elem, cand: &[Elem], cur: &mut Vec<Elem>, max: usize, out: &mut Vec<(Elem, Vec<Elem>)>) {
        if cur.len() >= 3 {
            out.push((d, cur.clone()));
        }
        if cur.len() == max {
            return;
        }
        for (i, &x) in cand.iter().enumerate() {
            if cur.iter().all(|&y| l.incomparable(x, y) && l.meet(x, y) == d) {
                cur.push(x);
                grow(l, d, &cand[i + 1..], cur, max, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for d in 0..l.len() {
        let cand: Vec<Elem> = l.up_set(d).iter().filter(|&x| x != d).collect();
        grow(l, d, &cand, &mut Vec::new(), max, &mut out);
    }
    out
}

fn scan_cube(l: &FiniteLattice) -> Tally {
    let mut t = Tally::default();
    for (d, y) in constant_meet_antichains(l, 4) {
        t.instances += 1;
        let mut elems = vec![d];
        elems.extend(&y);
        if y.len() > 3 {
            t.violation(l, &elems, "antichain with constant pairwise meet has more than three elements");
        } else if y.iter().all(|&x| !l.covers(d, x)) {
            t.violation(l, &elems, "no element of the antichain covers the common meet");
        }
    }
    t
}

fn scan_triples(l: &FiniteLattice) -> Tally {
    let mut t = Tally::default();
    for (d, y) in constant_meet_antichains(l, 3) {
        t.instances += 1;
        if y.iter().all(|&x| !l.covers(d, x)) {
            let mut elems = vec![d];
            elems.extend(&y);
            t.violation(l, &elems, "no element of the antichain covers the common meet");
        }
    }
    t
}

/// The Boolean cube built from a three-element antichain with common pairwise meet `d`.
pub fn boolean_cube_witness(l: &FiniteLattice, y: [Elem; 3], d: Elem) -> Result<EmbeddingWitness> {
    let [a, b, c] = y;
    for (p, q) in [(a, b), (b, c), (c, a)] {
        if !l.incomparable(p, q) {
            return Err(Error::HypothesisViolated(format!("{} and {} are comparable", l.label(p), l.label(q))));
        }
        if l.meet(p, q) != d {
            return Err(Error::HypothesisViolated(format!(
                "{} ^ {} is not {}",
                l.label(p),
                l.label(q),
                l.label(d)
            )));
        }
    }
    let (ab, bc, ca) = (l.join(a, b), l.join(b, c), l.join(c, a));
    if ab == bc || bc == ca || ca == ab {
        return Err(Error::HypothesisViolated("pairwise joins are not distinct".into()));
    }
    let image = [
        ("0", d),
        ("a", l.meet(ab, ca)),
        ("b", l.meet(ab, bc)),
        ("c", l.meet(ca, bc)),
        ("ab", ab),
        ("ac", ca),
        ("bc", bc),
        ("abc", l.join(ab, c)),
    ];
    let b3 = catalog::get("B3")?;
    let mut map = vec![0; b3.len()];
    for (label, e) in image {
        map[b3.elem(label)?] = e;
    }
    EmbeddingWitness::new(&b3, l, map).map_err(|e| Error::ConstructionFailed(e.to_string()))
}

fn incomparable_masks(l: &FiniteLattice) -> Vec<u64> {
    (0..l.len())
        .map(|a| (0..l.len()).filter(|&b| l.incomparable(a, b)).fold(0u64, |m, b| m | (1 << b)))
        .collect()
}

fn mask_elems(mask: u64) -> Vec<Elem> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn is_sublattice_mask(l: &FiniteLattice, mask: u64) -> bool {
    let e = mask_elems(mask);
    e.iter().enumerate().all(|(i, &x)| {
        e[i + 1..]
            .iter()
            .all(|&y| mask >> l.meet(x, y) & 1 == 1 && mask >> l.join(x, y) & 1 == 1)
    })
}

fn is_convex_mask(l: &FiniteLattice, mask: u64) -> bool {
    let e = mask_elems(mask);
    e.iter().all(|&x| {
        e.iter()
            .all(|&y| !l.leq(x, y) || l.interval(x, y).iter().all(|z| mask >> z & 1 == 1))
    })
}

/// Sublattices `K` (as masks) inside the set of elements incomparable to `a`, visiting every submask.
fn for_each_sublattice_beside(l: &FiniteLattice, inc: u64, mut f: impl FnMut(u64) -> Result<()>) -> Result<()> {
    let mut sub = inc;
    while sub != 0 {
        if is_sublattice_mask(l, sub) {
            f(sub)?;
        }
        sub = (sub - 1) & inc;
    }
    Ok(())
}

fn fibers(l: &FiniteLattice, a: Elem, k: &[Elem]) -> (usize, usize) {
    let mut joins: Vec<Elem> = k.iter().map(|&b| l.join(a, b)).collect();
    let mut meets: Vec<Elem> = k.iter().map(|&b| l.meet(a, b)).collect();
    joins.sort_unstable();
    joins.dedup();
    meets.sort_unstable();
    meets.dedup();
    (joins.len(), meets.len())
}

fn check_scan_size(l: &FiniteLattice) -> Result<()> {
    if l.len() > SUBLATTICE_SCAN_CAP {
        return Err(Error::SizeLimit {
            size: l.len(),
            cap: SUBLATTICE_SCAN_CAP,
        });
    }
    Ok(())
}

fn scan_dec_bound(l: &FiniteLattice) -> Result<Tally> {
    check_scan_size(l)?;
    let mut t = Tally::default();
    let mut dec_cache: HashMap<u64, usize> = HashMap::new();
    for (a, inc) in incomparable_masks(l).into_iter().enumerate() {
        for_each_sublattice_beside(l, inc, |mask| {
            t.instances += 1;
            let k = mask_elems(mask);
            let (j, m) = fibers(l, a, &k);
            let dec = match dec_cache.get(&mask) {
                Some(&v) => v,
                None => {
                    let v = decomp::dec(&l.induced(&k)?)?.value;
                    dec_cache.insert(mask, v);
                    v
                }
            };
            if dec > j * m {
                let mut elems = vec![a];
                elems.extend(&k);
                t.violation(l, &elems, format!("Dec(K) = {dec} exceeds {j} * {m}"));
            }
            Ok(())
        })?;
    }
    Ok(t)
}

fn scan_degeneracy(l: &FiniteLattice) -> Result<Tally> {
    check_scan_size(l)?;
    let mut t = Tally::default();
    for (a, inc) in incomparable_masks(l).into_iter().enumerate() {
        for_each_sublattice_beside(l, inc, |mask| {
            if !is_convex_mask(l, mask) {
                return Ok(());
            }
            t.instances += 1;
            let k = mask_elems(mask);
            let (j, m) = fibers(l, a, &k);
            if j < 3 && m < 3 && !laws::distributive_on(l, &k) {
                let mut elems = vec![a];
                elems.extend(&k);
                t.violation(l, &elems, format!("K is not distributive with fibers of sizes {j} and {m}"));
            }
            Ok(())
        })?;
    }
    Ok(t)
}

fn scan_twelve(l: &FiniteLattice, budget: u64) -> Result<Tally> {
    let shape = catalog::get("shape_2x5_plus")?;
    let extra = [shape.elem("c")?, shape.elem("s")?];
    let grid_idx: Vec<Elem> = (0..shape.len()).filter(|x| !extra.contains(x)).collect();
    let grid = shape.induced(&grid_idx)?;
    let mut t = Tally::default();
    let mut placed = vec![usize::MAX; shape.len()];
    let fits = |placed: &[Elem], p: Elem, x: Elem| {
        (0..shape.len()).filter(|&q| placed[q] != usize::MAX).all(|q| {
            let y = placed[q];
            x != y && shape.leq(p, q) == l.leq(x, y) && shape.leq(q, p) == l.leq(y, x)
        })
    };
    embed::for_each_embedding(&grid, l, budget, |map| {
        t.instances += 1;
        placed.iter_mut().for_each(|v| *v = usize::MAX);
        for (i, &g) in grid_idx.iter().enumerate() {
            placed[g] = map[i];
        }
        for c in 0..l.len() {
            if !fits(&placed, extra[0], c) {
                continue;
            }
            placed[extra[0]] = c;
            for s in 0..l.len() {
                if fits(&placed, extra[1], s) {
                    let mut elems: Vec<Elem> = grid_idx.iter().map(|&g| placed[g]).collect();
                    elems.extend([c, s]);
                    t.violation(l, &elems, "twelve-element configuration present");
                }
            }
            placed[extra[0]] = usize::MAX;
        }
        ControlFlow::Continue(())
    })?;
    Ok(t)
}

fn scan_staircase(l: &FiniteLattice) -> Tally {
    fn extend(l: &FiniteLattice, a: Elem, chain: &mut Vec<Elem>, t: &mut Tally) {
        if chain.len() == 5 {
            t.instances += 1;
            let (b3, b4, b5) = (chain[2], chain[3], chain[4]);
            if l.meet(l.join(a, b4), b5) != b4 {
                let top = l.join(a, b3);
                let low = l.meet(top, b5);
                if !l.covers(low, top) {
                    let mut elems = vec![a];
                    elems.extend(chain.iter());
                    t.violation(l, &elems, format!("{} is not covered by {}", l.label(low), l.label(top)));
                }
            }
            return;
        }
        let last = *chain.last().expect("nonempty");
        let last_join = l.join(a, last);
        for b in l.up_set(last).iter() {
            if b != last && l.incomparable(a, b) && l.lt(last_join, l.join(a, b)) {
                chain.push(b);
                extend(l, a, chain, t);
                chain.pop();
            }
        }
    }
    let mut t = Tally::default();
    for a in 0..l.len() {
        for b1 in 0..l.len() {
            if l.incomparable(a, b1) {
                extend(l, a, &mut vec![b1], &mut t);
            }
        }
    }
    t
}

/// Runs one statement without any hypothesis gate.
pub fn scan(id: TheoremId, l: &FiniteLattice, budget: u64) -> Result<TheoremReport> {
    let tally = match id {
        TheoremId::L15Sublattice => scan_l15(l, budget)?,
        TheoremId::CubeMeet => scan_cube(l),
        TheoremId::CubeJoin => scan_cube(&l.dual()),
        TheoremId::DecBound => scan_dec_bound(l)?,
        TheoremId::Degeneracy => scan_degeneracy(l)?,
        TheoremId::TwelveElement => scan_twelve(l, budget)?,
        TheoremId::Staircase => scan_staircase(l),
        TheoremId::StaircaseDual => scan_staircase(&l.dual()),
        TheoremId::TripleMeetCover => scan_triples(l),
        TheoremId::TripleJoinCover => scan_triples(&l.dual()),
    };
    Ok(TheoremReport::from_tally(id, l, tally))
}

fn check_with(id: TheoremId, l: &FiniteLattice, facts: &Facts, budget: u64) -> Result<TheoremReport> {
    match facts.failure(l, id.hypotheses()) {
        Some(reason) => Ok(TheoremReport::skipped(id, l, reason)),
        None => scan(id, l, budget),
    }
}

/// Runs one statement if the lattice meets its hypotheses, otherwise reports it skipped.
pub fn check(id: TheoremId, l: &FiniteLattice, budget: u64) -> Result<TheoremReport> {
    check_with(id, l, &Facts::of(l)?, budget)
}

pub fn lemma_l15_check(l: &FiniteLattice) -> Result<TheoremReport> {
    check(TheoremId::L15Sublattice, l, embed::DEFAULT_BUDGET)
}

pub fn cube_theorem_check(l: &FiniteLattice) -> Result<TheoremReport> {
    check(TheoremId::CubeMeet, l, embed::DEFAULT_BUDGET)
}

pub fn dec_bound_check(l: &FiniteLattice) -> Result<TheoremReport> {
    check(TheoremId::DecBound, l, embed::DEFAULT_BUDGET)
}

pub fn degeneracy_lemma_check(l: &FiniteLattice) -> Result<TheoremReport> {
    check(TheoremId::Degeneracy, l, embed::DEFAULT_BUDGET)
}

pub fn twelve_element_lemma_check(l: &FiniteLattice) -> Result<TheoremReport> {
    check(TheoremId::TwelveElement, l, embed::DEFAULT_BUDGET)
}

pub fn staircase_cover_check(l: &FiniteLattice) -> Result<TheoremReport> {
    check(TheoremId::Staircase, l, embed::DEFAULT_BUDGET)
}

/// The statements each forbidden-sublattice profile supports.
pub fn profile_theorems(name: &str) -> Result<&'static [TheoremId]> {
    use TheoremId::*;
    Ok(match name {
        "n-full" => &[
            L15Sublattice,
            CubeMeet,
            CubeJoin,
            DecBound,
            Degeneracy,
            TwelveElement,
            Staircase,
            StaircaseDual,
        ],
        "l6-8" => &[CubeMeet, CubeJoin, Staircase, StaircaseDual],
        "l9" => &[CubeMeet, CubeJoin, StaircaseDual],
        "l10" => &[CubeMeet, CubeJoin, Staircase],
        "l13" => &[DecBound, Staircase, StaircaseDual, TripleJoinCover],
        "l14" => &[DecBound, Staircase, StaircaseDual, TripleMeetCover],
        _ => return Err(Error::UnknownProfile(name.to_string())),
    })
}

fn profile_gate(l: &FiniteLattice, facts: &Facts, name: &str, budget: u64) -> Result<Option<String>> {
    if !facts.whitman {
        return Ok(Some("fails Whitman's condition".into()));
    }
    if !facts.semidistributive {
        return Ok(Some("not semidistributive".into()));
    }
    let hits = embed::contains_forbidden(l, &embed::profile(name)?, budget)?;
    Ok((!hits.is_empty()).then(|| {
        let names: Vec<&str> = hits.iter().map(|(n, _)| n.as_str()).collect();
        format!("contains forbidden sublattices: {}", names.join(", "))
    }))
}

fn profile_with(l: &FiniteLattice, facts: &Facts, name: &str, only: &[TheoremId], budget: u64) -> Result<Vec<TheoremReport>> {
    let ids: Vec<TheoremId> = profile_theorems(name)?
        .iter()
        .copied()
        .filter(|t| only.is_empty() || only.contains(t))
        .collect();
    match profile_gate(l, facts, name, budget)? {
        Some(reason) => Ok(ids.into_iter().map(|id| TheoremReport::skipped(id, l, reason.clone())).collect()),
        None => ids.into_iter().map(|id| scan(id, l, budget)).collect(),
    }
}

/// Runs a profile's statements, gated on Whitman, semidistributivity and its forbidden sublattices.
pub fn run_profile(l: &FiniteLattice, name: &str, budget: u64) -> Result<Vec<TheoremReport>> {
    profile_with(l, &Facts::of(l)?, name, &[], budget)
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub min_size: usize,
    pub max_size: usize,
    pub theorems: Vec<TheoremId>,
    pub profile: Option<String>,
    pub budget: u64,
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            min_size: 1,
            max_size: 7,
            theorems: Vec::new(),
            profile: None,
            budget: embed::DEFAULT_BUDGET,
            sample: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeViolation {
    pub lattice: String,
    pub hash: String,
    pub size: usize,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub lattices_run: u64,
    pub lattices_skipped: u64,
    pub hypothesis_instances: u64,
    pub violation_count: u64,
    pub violations: Vec<LatticeViolation>,
    pub vacuous: bool,
    pub smallest_instance_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarnessReport {
    pub profile: Option<String>,
    pub sizes: Vec<(usize, usize)>,
    pub theorems: Vec<TheoremSummary>,
}

impl HarnessReport {
    pub fn violation_count(&self) -> u64 {
        self.theorems.iter().map(|t| t.violation_count).sum()
    }

    pub fn summary(&self, id: TheoremId) -> Option<&TheoremSummary> {
        self.theorems.iter().find(|t| t.theorem == id)
    }
}

fn reports_for(l: &FiniteLattice, cfg: &HarnessConfig, ids: &[TheoremId]) -> Result<Vec<TheoremReport>> {
    let facts = Facts::of(l)?;
    match &cfg.profile {
        Some(p) => profile_with(l, &facts, p, &cfg.theorems, cfg.budget),
        None => ids.iter().map(|&id| check_with(id, l, &facts, cfg.budget)).collect(),
    }
}

/// Runs the selected statements over every enumerated lattice in the size range.
pub fn run_harness(cfg: &HarnessConfig) -> Result<HarnessReport> {
    let ids: Vec<TheoremId> = match &cfg.profile {
        Some(p) => profile_theorems(p)?
            .iter()
            .copied()
            .filter(|t| cfg.theorems.is_empty() || cfg.theorems.contains(t))
            .collect(),
        None if cfg.theorems.is_empty() => TheoremId::ALL.to_vec(),
        None => cfg.theorems.clone(),
    };
    let mut summaries: Vec<TheoremSummary> = ids
        .iter()
        .map(|&theorem| TheoremSummary {
            theorem,
            lattices_run: 0,
            lattices_skipped: 0,
            hypothesis_instances: 0,
            violation_count: 0,
            violations: Vec::new(),
            vacuous: true,
            smallest_instance_size: None,
        })
        .collect();
    let mut sizes = Vec::new();
    for n in cfg.min_size.max(1)..=cfg.max_size {
        let mut ls = enumerate::all_lattices_capped(n, enumerate::MAX_SIZE)?;
        if let Some(k) = cfg.sample {
            if k < ls.len() {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ n as u64);
                let mut pick = index::sample(&mut rng, ls.len(), k).into_vec();
                pick.sort_unstable();
                ls = pick.into_iter().map(|i| ls[i].clone()).collect();
            }
        }
        sizes.push((n, ls.len()));
        let all: Vec<Result<Vec<TheoremReport>>> = ls.par_iter().map(|l| reports_for(l, cfg, &ids)).collect();
        for (l, reports) in ls.iter().zip(all) {
            for r in reports? {
                let s = summaries.iter_mut().find(|s| s.theorem == r.theorem).expect("selected");
                if r.outcome == Outcome::Skipped {
                    s.lattices_skipped += 1;
                    continue;
                }
                s.lattices_run += 1;
                s.hypothesis_instances += r.hypothesis_instances;
                if r.hypothesis_instances > 0 && s.smallest_instance_size.is_none() {
                    s.smallest_instance_size = Some(l.len());
                }
                s.violation_count += r.violation_count;
                for v in r.conclusion_violations {
                    if s.violations.len() < MAX_LISTED {
                        s.violations.push(LatticeViolation {
                            lattice: r.lattice.clone(),
                            hash: r.hash.clone(),
                            size: l.len(),
                            violation: v,
                        });
                    }
                }
            }
        }
    }
    for s in &mut summaries {
        s.vacuous = s.hypothesis_instances == 0;
    }
    Ok(HarnessReport {
        profile: cfg.profile.clone(),
        sizes,
        theorems: summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;

    fn el(l: &FiniteLattice, s: &str) -> Elem {
        l.elem(s).unwrap()
    }

    #[test]
    fn l15_self_witness() {
        let l = get("L15").unwrap();
        let t = ["h", "e", "b", "i", "g", "c"].map(|s| el(&l, s));
        let w = lemma_l15_witness(&l, &t).unwrap();
        assert!(w.is_bijective());
        assert_eq!(w.map, (0..l.len()).collect::<Vec<_>>());
        assert!(l15_tuples(&l).contains(&t));
        let r = lemma_l15_check(&l).unwrap();
        assert_eq!(r.outcome, Outcome::Held);
        assert!(r.hypothesis_instances >= 1);
    }

    #[test]
    fn l15_hypothesis_errors() {
        let l = get("L15").unwrap();
        let t = ["e", "h", "b", "i", "g", "c"].map(|s| el(&l, s));
        assert_eq!(
            lemma_l15_witness(&l, &t).unwrap_err(),
            Error::HypothesisViolated("a1 < a2 < a3".into())
        );
    }

    #[test]
    fn l15_vacuous_on_small_lattices() {
        for name in ["N5", "B3"] {
            let r = lemma_l15_check(&get(name).unwrap()).unwrap();
            assert_eq!(r.outcome, Outcome::Held, "{name}");
            assert!(r.vacuous, "{name}");
        }
    }

    #[test]
    fn cube_on_b3() {
        let l = get("B3").unwrap();
        let w = boolean_cube_witness(&l, ["a", "b", "c"].map(|s| el(&l, s)), el(&l, "0")).unwrap();
        assert!(w.is_bijective());
        assert_eq!(w.image().len(), 8);
        let r = cube_theorem_check(&l).unwrap();
        assert_eq!((r.outcome, r.hypothesis_instances), (Outcome::Held, 1));
        let r = check(TheoremId::CubeJoin, &l, embed::DEFAULT_BUDGET).unwrap();
        assert_eq!((r.outcome, r.hypothesis_instances), (Outcome::Held, 1));
        let n5 = get("N5").unwrap();
        assert!(cube_theorem_check(&n5).unwrap().vacuous);
    }

    #[test]
    fn cube_witness_rejects_bad_input() {
        let l = get("N5").unwrap();
        let r = boolean_cube_witness(&l, ["x2", "x3", "x4"].map(|s| el(&l, s)), el(&l, "x5"));
        assert!(matches!(r, Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn cube_fails_without_hypotheses() {
        let m4 = FiniteLattice::build(&crate::CoverDiagram::new(
            Some("M4"),
            &["0", "p", "q", "r", "s", "1"],
            &[("0", "p"), ("0", "q"), ("0", "r"), ("0", "s"), ("p", "1"), ("q", "1"), ("r", "1"), ("s", "1")],
        ))
        .unwrap();
        let r = cube_theorem_check(&m4).unwrap();
        assert_eq!(r.outcome, Outcome::Skipped);
        let r = scan(TheoremId::CubeMeet, &m4, embed::DEFAULT_BUDGET).unwrap();
        assert_eq!(r.outcome, Outcome::Violated);
        assert_eq!(r.violation_count, 1);
        assert_eq!(scan(TheoremId::CubeMeet, &get("M3").unwrap(), embed::DEFAULT_BUDGET).unwrap().outcome, Outcome::Held);
    }

    #[test]
    fn pentagon_dec_bound_and_degeneracy() {
        let l = get("N5").unwrap();
        let k = [el(&l, "x3"), el(&l, "x4")];
        assert_eq!(fibers(&l, el(&l, "x2"), &k), (1, 1));
        let r = dec_bound_check(&l).unwrap();
        assert_eq!(r.outcome, Outcome::Held);
        // {x3}, {x4}, {x3,x4} beside x2.
        assert_eq!(r.hypothesis_instances, 3 + 1 + 1);
        let r = degeneracy_lemma_check(&l).unwrap();
        assert_eq!(r.outcome, Outcome::Held);
        assert!(r.hypothesis_instances > 0);
    }

    #[test]
    fn staircase_on_long_grid() {
        let l = get("grid(2,7)").unwrap();
        let a = el(&l, "c1.c0");
        let bs: Vec<Elem> = (1..=5).map(|i| el(&l, &format!("c0.c{i}"))).collect();
        assert_eq!(l.meet(l.join(a, bs[3]), bs[4]), bs[3]);
        let r = staircase_cover_check(&l).unwrap();
        assert_eq!(r.outcome, Outcome::Held);
        assert!(r.hypothesis_instances > 0);
        assert!(staircase_cover_check(&get("chain(6)").unwrap()).unwrap().vacuous);
    }

    #[test]
    fn twelve_element_on_grid() {
        let g = get("grid(2,5)").unwrap();
        let r = twelve_element_lemma_check(&g).unwrap();
        assert_eq!(r.outcome, Outcome::Held);
        assert!(r.hypothesis_instances > 0);
        let shape = get("shape_2x5_plus").unwrap();
        let r = scan(TheoremId::TwelveElement, &shape, embed::DEFAULT_BUDGET).unwrap();
        assert_eq!(r.outcome, Outcome::Violated);
        assert!(twelve_element_lemma_check(&get("chain(7)").unwrap()).unwrap().vacuous);
    }

    #[test]
    fn dual_reports_mirror() {
        for name in ["N5", "B3", "L13", "stacked_n5", "grid(2,4)"] {
            let l = get(name).unwrap();
            let d = l.dual();
            for id in TheoremId::ALL {
                let a = scan(id, &l, embed::DEFAULT_BUDGET).unwrap();
                let b = scan(id.dual(), &d, embed::DEFAULT_BUDGET).unwrap();
                assert_eq!(
                    (a.outcome, a.hypothesis_instances, a.violation_count),
                    (b.outcome, b.hypothesis_instances, b.violation_count),
                    "{name} {id}"
                );
            }
        }
    }

    #[test]
    fn profiles() {
        let stacked = get("stacked_n5").unwrap();
        for r in run_profile(&stacked, "n-full", embed::DEFAULT_BUDGET).unwrap() {
            assert_eq!(r.outcome, Outcome::Held, "{}", r.theorem);
        }
        let l9 = get("L9").unwrap();
        for r in run_profile(&l9, "l6-8", embed::DEFAULT_BUDGET).unwrap() {
            assert_eq!(r.outcome, Outcome::Skipped);
        }
        let b3 = get("B3").unwrap();
        let rs = run_profile(&b3, "l13", embed::DEFAULT_BUDGET).unwrap();
        assert_eq!(rs.len(), 4);
        assert!(rs.iter().all(|r| r.outcome == Outcome::Held));
        assert_eq!(profile_theorems("cor").unwrap_err(), Error::UnknownProfile("cor".into()));
    }

    #[test]
    fn theorem_names_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            assert_eq!(id.dual().dual(), id);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn small_harness_run() {
        let cfg = HarnessConfig {
            max_size: 6,
            ..HarnessConfig::default()
        };
        let r = run_harness(&cfg).unwrap();
        assert_eq!(r.violation_count(), 0);
        assert_eq!(r.sizes, vec![(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15)]);
    }
}
