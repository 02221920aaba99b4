//! Distributive partitions, the Dec invariant, and linear-sum shape classification
//! of finite distributive lattices.

use serde::Serialize;

use crate::bits::BitSet;
use crate::catalog;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::laws;

/// Default cap on lattice size for Dec computations.
pub const DEC_CAP: usize = 24;

/// A set partition with sorted blocks, ordered by their least index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DistributivePartition {
    pub blocks: Vec<Vec<Elem>>,
}

impl DistributivePartition {
    pub fn new(mut blocks: Vec<Vec<Elem>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        DistributivePartition { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn labelled(&self, l: &FiniteLattice) -> Vec<Vec<String>> {
        self.blocks.iter().map(|b| l.names(b.iter().copied())).collect()
    }
}

/// The first failing condition of a candidate distributive partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum PartitionDefect {
    BlockNotSublattice { block: usize },
    BlockNotConvex { block: usize },
    BlockNotDistributive { block: usize },
    UnionNotDistributive { first: usize, second: usize },
}

fn check_partition(n: usize, blocks: &[Vec<Elem>]) -> Result<Vec<BitSet>> {
    let mut seen = BitSet::new(n);
    let mut sets = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_empty() {
            return Err(Error::NotAPartition("empty block".into()));
        }
        for &x in b {
            if x >= n {
                return Err(Error::BadIndex(x));
            }
            if !seen.insert(x) {
                return Err(Error::NotAPartition(format!("element {x} in two blocks")));
            }
        }
        sets.push(BitSet::from_indices(n, b.iter().copied()));
    }
    if seen.len() != n {
        return Err(Error::NotAPartition("some element is in no block".into()));
    }
    Ok(sets)
}

/// Checks every block and every pair of blocks, returning the first defect in block order.
pub fn distributive_partition_defect(l: &FiniteLattice, blocks: &[Vec<Elem>]) -> Result<Option<PartitionDefect>> {
    let sets = check_partition(l.len(), blocks)?;
    for (k, s) in sets.iter().enumerate() {
        if !l.is_sublattice(s) {
            return Ok(Some(PartitionDefect::BlockNotSublattice { block: k }));
        }
        if !l.is_convex(s) {
            return Ok(Some(PartitionDefect::BlockNotConvex { block: k }));
        }
        if !laws::distributive_on(l, &s.to_vec()) {
            return Ok(Some(PartitionDefect::BlockNotDistributive { block: k }));
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let u = sets[i].or(&sets[j]);
            if l.is_sublattice(&u) && l.is_convex(&u) && !laws::distributive_on(l, &u.to_vec()) {
                return Ok(Some(PartitionDefect::UnionNotDistributive { first: i, second: j }));
            }
        }
    }
    Ok(None)
}

pub fn is_distributive_partition(l: &FiniteLattice, blocks: &[Vec<Elem>]) -> Result<bool> {
    Ok(distributive_partition_defect(l, blocks)?.is_none())
}

struct Intervals {
    n: usize,
    sets: Vec<Option<BitSet>>,
    distributive: Vec<bool>,
}

impl Intervals {
    fn new(l: &FiniteLattice) -> Self {
        let n = l.len();
        let mut sets = vec![None; n * n];
        let mut distributive = vec![false; n * n];
        for a in 0..n {
            for b in l.up_set(a).iter() {
                let s = l.interval(a, b);
                distributive[a * n + b] = laws::distributive_on(l, &s.to_vec());
                sets[a * n + b] = Some(s);
            }
        }
        Intervals { n, sets, distributive }
    }

    fn set(&self, a: Elem, b: Elem) -> &BitSet {
        self.sets[a * self.n + b].as_ref().expect("a <= b")
    }

    fn is_distributive(&self, a: Elem, b: Elem) -> bool {
        self.distributive[a * self.n + b]
    }
}

#[derive(Clone, Copy)]
struct Block {
    lo: Elem,
    hi: Elem,
    size: usize,
}

enum Goal {
    Minimize,
    CollectAt(usize),
}

struct DecSearch<'a> {
    l: &'a FiniteLattice,
    iv: Intervals,
    order: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    goal: Goal,
    best: usize,
    best_blocks: Vec<Block>,
    found: Vec<Vec<Block>>,
}

impl DecSearch<'_> {
    fn compatible(&self, a: Block, b: Block) -> bool {
        let lo = self.l.meet(a.lo, b.lo);
        let hi = self.l.join(a.hi, b.hi);
        let union_is_interval = self.iv.set(lo, hi).len() == a.size + b.size;
        !union_is_interval || self.iv.is_distributive(lo, hi)
    }

    fn descend(&mut self, assigned: &mut BitSet, blocks: &mut Vec<Block>) {
        let Some(x) = self.order.iter().copied().find(|&x| !assigned.contains(x)) else {
            match self.goal {
                Goal::Minimize => {
                    if blocks.len() < self.best {
                        self.best = blocks.len();
                        self.best_blocks = blocks.clone();
                    }
                }
                Goal::CollectAt(_) => self.found.push(blocks.clone()),
            }
            return;
        };
        let limit = match self.goal {
            Goal::Minimize => self.best,
            Goal::CollectAt(t) => t + 1,
        };
        if blocks.len() + 1 >= limit {
            return;
        }
        for i in 0..self.candidates[x].len() {
            let hi = self.candidates[x][i];
            let set = self.iv.set(x, hi);
            if set.intersects(assigned) {
                continue;
            }
            let b = Block { lo: x, hi, size: set.len() };
            if !blocks.iter().all(|&o| self.compatible(o, b)) {
                continue;
            }
            let set = set.clone();
            assigned.union_with(&set);
            blocks.push(b);
            self.descend(assigned, blocks);
            blocks.pop();
            for e in set.iter() {
                assigned.remove(e);
            }
        }
    }

    fn to_partition(&self, blocks: &[Block]) -> DistributivePartition {
        DistributivePartition::new(blocks.iter().map(|b| self.iv.set(b.lo, b.hi).to_vec()).collect())
    }
}

fn searcher(l: &FiniteLattice, goal: Goal) -> Result<DecSearch<'_>> {
    if l.len() > DEC_CAP {
        return Err(Error::SizeLimit { size: l.len(), cap: DEC_CAP });
    }
    let iv = Intervals::new(l);
    let candidates = (0..l.len())
        .map(|x| {
            let mut c: Vec<Elem> = l.up_set(x).iter().filter(|&m| iv.is_distributive(x, m)).collect();
            c.sort_by_key(|&m| (usize::MAX - iv.set(x, m).len(), m));
            c
        })
        .collect();
    Ok(DecSearch {
        l,
        iv,
        order: l.linear_extension(),
        candidates,
        goal,
        best: l.len() + 1,
        best_blocks: Vec::new(),
        found: Vec::new(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecResult {
    pub value: usize,
    pub witness: DistributivePartition,
}

/// Minimum number of blocks of a distributive partition, with a minimizing witness.
pub fn dec(l: &FiniteLattice) -> Result<DecResult> {
    let mut s = searcher(l, Goal::Minimize)?;
    s.descend(&mut BitSet::new(l.len()), &mut Vec::new());
    let witness = s.to_partition(&s.best_blocks);
    Ok(DecResult {
        value: s.best,
        witness,
    })
}

/// Every distributive partition with the minimum number of blocks, sorted.
pub fn minimum_distributive_partitions(l: &FiniteLattice) -> Result<Vec<DistributivePartition>> {
    let value = dec(l)?.value;
    let mut s = searcher(l, Goal::CollectAt(value))?;
    s.descend(&mut BitSet::new(l.len()), &mut Vec::new());
    let mut out: Vec<DistributivePartition> = s.found.iter().map(|b| s.to_partition(b)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Chain,
    TwoTimesChain,
    Boolean3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GjBlock {
    pub elements: Vec<Elem>,
    pub shape: Shape,
}

/// Blocks of a linear sum, from the bottom up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GjDecomposition {
    pub blocks: Vec<GjBlock>,
}

fn shape_of(l: &FiniteLattice, elems: &[Elem]) -> Result<Option<Shape>> {
    if elems.iter().all(|&a| elems.iter().all(|&b| l.comparable(a, b))) {
        return Ok(Some(Shape::Chain));
    }
    let sub = l.induced(elems)?;
    if elems.len() == 8 && sub.is_isomorphic(&catalog::get("B3")?) {
        return Ok(Some(Shape::Boolean3));
    }
    if elems.len().is_multiple_of(2) && sub.is_isomorphic(&catalog::grid(elems.len() / 2)?) {
        return Ok(Some(Shape::TwoTimesChain));
    }
    Ok(None)
}

/// Splits a distributive lattice into a linear sum of chains, `2 x chain` blocks and 8-element cubes.
pub fn gj_classify(d: &FiniteLattice) -> Result<Option<GjDecomposition>> {
    if !laws::distributive(d) {
        return Err(Error::NotDistributive);
    }
    let n = d.len();
    let mut cuts: Vec<Elem> = (0..n).filter(|&a| (0..n).all(|b| d.comparable(a, b))).collect();
    cuts.sort_by_key(|&c| d.down_set(c).len());
    let k = cuts.len();
    let mut best: Vec<Option<(usize, usize, Shape)>> = vec![None; k + 1];
    let mut cost = vec![usize::MAX; k + 1];
    cost[k] = 0;
    for i in (0..k).rev() {
        for j in i..k {
            let tail = if j + 1 == k {
                0
            } else if d.covers(cuts[j], cuts[j + 1]) {
                cost[j + 1]
            } else {
                continue;
            };
            if tail == usize::MAX {
                continue;
            }
            let elems = d.interval(cuts[i], cuts[j]).to_vec();
            if let Some(shape) = shape_of(d, &elems)? {
                if tail + 1 < cost[i] {
                    cost[i] = tail + 1;
                    best[i] = Some((j, tail, shape));
                }
            }
        }
    }
    if cost[0] == usize::MAX {
        return Ok(None);
    }
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < k {
        let (j, _, shape) = best[i].expect("reachable");
        let mut elements = d.interval(cuts[i], cuts[j]).to_vec();
        elements.sort_by_key(|&e| (d.down_set(e).len(), e));
        blocks.push(GjBlock { elements, shape });
        i = j + 1;
    }
    Ok(Some(GjDecomposition { blocks }))
}
