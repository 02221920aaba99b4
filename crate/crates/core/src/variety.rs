//! Congruences, quotients, subdirect irreducibility and membership in the pentagon variety.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::canon::CanonicalForm;
use crate::catalog;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Default cap on lattice size for full congruence-lattice scans.
pub const CONGRUENCE_CAP: usize = 16;

/// A partition of the elements, stored as block numbers in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_of: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            block_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence {
            block_of: vec![0; n],
        }
    }

    /// Normalizes an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let k = map.len();
                *map.entry(*l).or_insert(k)
            })
            .collect();
        Congruence { block_of }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Elem>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (k, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n {
                    return Err(Error::BadIndex(x));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::NotAPartition(format!("element {x} in two blocks")));
                }
                labels[x] = k;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotAPartition(format!("element {x} in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    fn from_union_find(mut uf: UnionFind) -> Self {
        let n = uf.0.len();
        let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        Self::from_labels(&labels)
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_of(&self, x: Elem) -> usize {
        self.block_of[x]
    }

    pub fn same(&self, a: Elem, b: Elem) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut rep = vec![usize::MAX; self.num_blocks()];
        for (x, &b) in self.block_of.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = x;
            } else if !other.same(rep[b], x) {
                return false;
            }
        }
        true
    }

    /// Join as equivalence relations, which is also the join of congruences.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for rel in [self, other] {
            let mut first = vec![usize::MAX; rel.num_blocks()];
            for (x, &b) in rel.block_of.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    uf.union(first[b], x);
                }
            }
        }
        Self::from_union_find(uf)
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n).map(|x| (self.block_of[x], other.block_of[x])).collect();
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = pairs
            .iter()
            .map(|p| {
                let k = map.len();
                *map.entry(*p).or_insert(k)
            })
            .collect();
        Self::from_labels(&labels)
    }
}

/// Whether the partition is compatible with meets and joins.
pub fn is_congruence(l: &FiniteLattice, c: &Congruence) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            !c.same(a, b)
                || (0..n).all(|x| c.same(l.join(a, x), l.join(b, x)) && c.same(l.meet(a, x), l.meet(b, x)))
        })
    })
}

fn close(l: &FiniteLattice, mut uf: UnionFind) -> Congruence {
    let n = l.len();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for c in 0..n {
                changed |= uf.union(l.join(x, c), l.join(r, c));
                changed |= uf.union(l.meet(x, c), l.meet(r, c));
            }
        }
        if !changed {
            return Congruence::from_union_find(uf);
        }
    }
}

/// Smallest congruence collapsing every listed pair.
pub fn generated_congruence(l: &FiniteLattice, pairs: &[(Elem, Elem)]) -> Congruence {
    let mut uf = UnionFind::new(l.len());
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    close(l, uf)
}

pub fn principal_congruence(l: &FiniteLattice, a: Elem, b: Elem) -> Congruence {
    generated_congruence(l, &[(a, b)])
}

fn check_cap(l: &FiniteLattice, cap: usize) -> Result<()> {
    if l.len() > cap {
        return Err(Error::SizeLimit { size: l.len(), cap });
    }
    Ok(())
}

/// Principal congruences of cover pairs, deduplicated and sorted.
pub fn cover_congruences(l: &FiniteLattice) -> Vec<Congruence> {
    let set: BTreeSet<Congruence> = l
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| principal_congruence(l, a, b))
        .collect();
    set.into_iter().collect()
}

pub fn all_congruences(l: &FiniteLattice) -> Result<Vec<Congruence>> {
    all_congruences_capped(l, CONGRUENCE_CAP)
}

/// Every congruence, as the join-closure of the cover congruences, sorted.
pub fn all_congruences_capped(l: &FiniteLattice, cap: usize) -> Result<Vec<Congruence>> {
    check_cap(l, cap)?;
    let gens = cover_congruences(l);
    let mut seen: HashSet<Congruence> = HashSet::new();
    let id = Congruence::identity(l.len());
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(c) = queue.pop() {
        for g in &gens {
            let j = c.join(g);
            if seen.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    let mut out: Vec<Congruence> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Upper covers of `theta` in the congruence lattice.
pub fn congruence_upper_covers(l: &FiniteLattice, theta: &Congruence) -> Vec<Congruence> {
    let mut cands: BTreeSet<Congruence> = BTreeSet::new();
    for (a, b) in l.cover_pairs() {
        if !theta.same(a, b) {
            let mut pairs: Vec<(Elem, Elem)> = vec![(a, b)];
            for blk in theta.blocks() {
                for w in blk.windows(2) {
                    pairs.push((w[0], w[1]));
                }
            }
            cands.insert(generated_congruence(l, &pairs));
        }
    }
    let cands: Vec<Congruence> = cands.into_iter().collect();
    cands
        .iter()
        .filter(|c| !cands.iter().any(|d| d != *c && d.refines(c)))
        .cloned()
        .collect()
}

pub fn is_meet_irreducible(l: &FiniteLattice, theta: &Congruence) -> bool {
    congruence_upper_covers(l, theta).len() == 1
}

/// Nontrivial and the identity congruence has a single upper cover.
pub fn is_subdirectly_irreducible(l: &FiniteLattice) -> bool {
    l.len() >= 2 && is_meet_irreducible(l, &Congruence::identity(l.len()))
}

pub fn quotient(l: &FiniteLattice, c: &Congruence) -> Result<FiniteLattice> {
    if c.len() != l.len() {
        return Err(Error::NotACongruence("partition size differs from lattice size".into()));
    }
    if !is_congruence(l, c) {
        return Err(Error::NotACongruence("partition is not compatible with meet and join".into()));
    }
    let blocks = c.blocks();
    let labels = blocks
        .iter()
        .map(|b| b.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join("~"))
        .collect();
    let name = l.name().map(|n| format!("{n}/~"));
    FiniteLattice::from_leq(name, labels, |i, j| {
        let (a, b) = (blocks[i][0], blocks[j][0]);
        c.same(l.join(a, b), b)
    })
}

/// Quotients by all meet-irreducible congruences, one per isomorphism type, sorted by canonical form.
pub fn si_factors(l: &FiniteLattice) -> Result<Vec<FiniteLattice>> {
    let mut out: Vec<(CanonicalForm, FiniteLattice)> = Vec::new();
    for theta in all_congruences(l)? {
        if !theta.is_total() && is_meet_irreducible(l, &theta) {
            let q = quotient(l, &theta)?;
            let f = q.canonical_form();
            if !out.iter().any(|(g, _)| *g == f) {
                out.push((f, q));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, q)| q).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct VarietyCertificate {
    pub member: bool,
    /// Subdirectly irreducible quotients.
    #[serde(skip)]
    pub factors: Vec<FiniteLattice>,
    /// First factor that is neither the 2-element chain nor the pentagon.
    #[serde(skip)]
    pub offending: Option<FiniteLattice>,
}

/// Membership in the variety generated by the pentagon, decided by subdirectly irreducible quotients.
pub fn in_n5_variety(l: &FiniteLattice) -> Result<VarietyCertificate> {
    let factors = si_factors(l)?;
    let two = catalog::chain(2)?.canonical_form();
    let n5 = catalog::get("N5")?.canonical_form();
    let offending = factors
        .iter()
        .find(|f| {
            let c = f.canonical_form();
            c != two && c != n5
        })
        .cloned();
    Ok(VarietyCertificate {
        member: offending.is_none(),
        factors,
        offending,
    })
}

pub fn is_in_n5_variety(l: &FiniteLattice) -> Result<bool> {
    Ok(in_n5_variety(l)?.member)
}
