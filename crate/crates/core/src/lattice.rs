//! Finite lattices stored as dense order bit sets with precomputed meet and join tables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};

pub type Elem = usize;

/// Default cap on the size of a direct product.
pub const PRODUCT_CAP: usize = 4096;

/// Labelled cover relation: `(a, b)` means `b` covers `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDiagram {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl CoverDiagram {
    pub fn new(name: Option<&str>, elements: &[&str], covers: &[(&str, &str)]) -> Self {
        CoverDiagram {
            name: name.map(str::to_string),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    name: Option<String>,
    labels: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    upper: Vec<Vec<Elem>>,
    lower: Vec<Vec<Elem>>,
    bottom: Elem,
    top: Elem,
}

fn index_labels(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl FiniteLattice {
    /// Builds the lattice whose order is the reflexive-transitive closure of the covers.
    pub fn build(d: &CoverDiagram) -> Result<Self> {
        let n = d.elements.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let index = index_labels(&d.elements)?;
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (a, b) in &d.covers {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            if ia == ib {
                return Err(Error::SelfCover(a.clone()));
            }
            if !seen.insert((ia, ib)) {
                return Err(Error::DuplicateCover(a.clone(), b.clone()));
            }
            succ[ia].push(ib);
        }
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let a = order[head];
            head += 1;
            for &b in &succ[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    order.push(b);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(Error::CyclicCovers(d.elements[stuck].clone()));
        }
        let mut up = vec![BitSet::new(n); n];
        for &a in order.iter().rev() {
            let mut s = BitSet::new(n);
            s.insert(a);
            for &b in &succ[a] {
                s.union_with(&up[b]);
            }
            up[a] = s;
        }
        Self::from_up_sets(d.name.clone(), d.elements.clone(), up)
    }

    /// Builds from principal filters: `up[a]` is the set of `b` with `a <= b`.
    pub fn from_up_sets(name: Option<String>, labels: Vec<String>, up: Vec<BitSet>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        index_labels(&labels)?;
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(Error::BadParameter(format!("order is not reflexive at `{}`", labels[a])));
            }
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::CyclicCovers(labels[a].clone()));
                }
                if !up[b].is_subset(&up[a]) {
                    return Err(Error::BadParameter(format!(
                        "order is not transitive at `{}`",
                        labels[a]
                    )));
                }
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (a, s) in up.iter().enumerate() {
            for b in s.iter() {
                down[b].insert(a);
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a].and(&down[b]);
                let m = lower
                    .iter()
                    .find(|&g| lower.is_subset(&down[g]))
                    .ok_or_else(|| Error::NotALattice(labels[a].clone(), labels[b].clone(), "meet"))?;
                let upper = up[a].and(&up[b]);
                let j = upper
                    .iter()
                    .find(|&g| upper.is_subset(&up[g]))
                    .ok_or_else(|| Error::NotALattice(labels[a].clone(), labels[b].clone(), "join"))?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n).find(|&a| up[a].len() == n).expect("meet table ensures a bottom");
        let top = (0..n).find(|&a| down[a].len() == n).expect("join table ensures a top");
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[a].and(&down[b]).len() == 2 {
                    upper[a].push(b);
                    lower[b].push(a);
                }
            }
        }
        Ok(FiniteLattice {
            name,
            labels,
            up,
            down,
            meet,
            join,
            upper,
            lower,
            bottom,
            top,
        })
    }

    /// Builds from an order predicate on `0..n`.
    pub fn from_leq(
        name: Option<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = labels.len();
        let up = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq(a, b))))
            .collect();
        Self::from_up_sets(name, labels, up)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".to_string())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn names(&self, elems: impl IntoIterator<Item = Elem>) -> Vec<String> {
        elems.into_iter().map(|e| self.labels[e].clone()).collect()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn incomparable(&self, a: Elem, b: Elem) -> bool {
        !self.comparable(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn meet_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.top, |m, x| self.meet(m, x))
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.bottom, |m, x| self.join(m, x))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Principal filter of `a`.
    pub fn up_set(&self, a: Elem) -> &BitSet {
        &self.up[a]
    }

    /// Principal ideal of `a`.
    pub fn down_set(&self, a: Elem) -> &BitSet {
        &self.down[a]
    }

    /// Elements covering `a`.
    pub fn covers_of(&self, a: Elem) -> &[Elem] {
        &self.upper[a]
    }

    /// Elements covered by `a`.
    pub fn covered_by(&self, a: Elem) -> &[Elem] {
        &self.lower[a]
    }

    pub fn covers(&self, lo: Elem, hi: Elem) -> bool {
        self.upper[lo].contains(&hi)
    }

    pub fn atoms(&self) -> Vec<Elem> {
        self.upper[self.bottom].clone()
    }

    pub fn coatoms(&self) -> Vec<Elem> {
        self.lower[self.top].clone()
    }

    /// All cover pairs `(lo, hi)` in index order.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for &b in &self.upper[a] {
                out.push((a, b));
            }
        }
        out
    }

    /// Elements ordered so that every element precedes everything above it.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = (0..self.len()).collect();
        v.sort_by_key(|&a| (self.down[a].len(), a));
        v
    }

    /// Length of the longest chain from the bottom, counted in edges.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for a in self.linear_extension() {
            h[a] = self.lower[a].iter().map(|&b| h[b] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain to the top, counted in edges.
    pub fn depths(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for a in self.linear_extension().into_iter().rev() {
            h[a] = self.upper[a].iter().map(|&b| h[b] + 1).max().unwrap_or(0);
        }
        h
    }

    /// The closed interval `[a, b]`.
    pub fn interval(&self, a: Elem, b: Elem) -> BitSet {
        self.up[a].and(&self.down[b])
    }

    pub fn generated_sublattice(&self, seeds: &[Elem]) -> Result<BitSet> {
        if seeds.is_empty() {
            return Err(Error::EmptySeeds);
        }
        if let Some(&bad) = seeds.iter().find(|&&s| s >= self.len()) {
            return Err(Error::BadIndex(bad));
        }
        let mut set = BitSet::from_indices(self.len(), seeds.iter().copied());
        let mut members: Vec<Elem> = set.to_vec();
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for j in 0..=i {
                let y = members[j];
                for z in [self.meet(x, y), self.join(x, y)] {
                    if set.insert(z) {
                        members.push(z);
                    }
                }
            }
            i += 1;
        }
        Ok(set)
    }

    pub fn is_sublattice(&self, set: &BitSet) -> bool {
        let m = set.to_vec();
        m.iter().enumerate().all(|(i, &a)| {
            m[i + 1..]
                .iter()
                .all(|&b| set.contains(self.meet(a, b)) && set.contains(self.join(a, b)))
        })
    }

    /// Whether every element between two members is a member.
    pub fn is_convex(&self, set: &BitSet) -> bool {
        set.iter()
            .all(|a| set.iter().all(|b| !self.leq(a, b) || self.interval(a, b).is_subset(set)))
    }

    /// The subset with the induced order; fails if that order is not a lattice.
    pub fn induced(&self, elems: &[Elem]) -> Result<FiniteLattice> {
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        FiniteLattice::from_leq(self.name.clone(), labels, |i, j| self.leq(elems[i], elems[j]))
    }

    /// The lattice with new index `i` holding old element `order[i]`.
    pub fn permuted(&self, order: &[Elem]) -> FiniteLattice {
        self.induced(order).expect("a permutation of a lattice is a lattice")
    }

    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice {
            name: self.name.as_ref().map(|n| format!("dual({n})")),
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            upper: self.lower.clone(),
            lower: self.upper.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn direct_product(&self, other: &FiniteLattice) -> Result<FiniteLattice> {
        self.direct_product_capped(other, PRODUCT_CAP)
    }

    pub fn direct_product_capped(&self, other: &FiniteLattice, cap: usize) -> Result<FiniteLattice> {
        let (n, m) = (self.len(), other.len());
        let size = n.saturating_mul(m);
        if size > cap {
            return Err(Error::SizeLimit { size, cap });
        }
        let mut labels = Vec::with_capacity(size);
        for a in 0..n {
            for b in 0..m {
                labels.push(format!("{}.{}", self.labels[a], other.labels[b]));
            }
        }
        let name = match (&self.name, &other.name) {
            (Some(x), Some(y)) => Some(format!("{x}x{y}")),
            _ => None,
        };
        FiniteLattice::from_leq(name, labels, |i, j| {
            self.leq(i / m, j / m) && other.leq(i % m, j % m)
        })
    }

    /// All maximal antichains, each as a sorted index list, in lexicographic order.
    pub fn maximal_antichains(&self) -> Vec<Vec<Elem>> {
        let n = self.len();
        let incomparable: Vec<BitSet> = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| self.incomparable(a, b))))
            .collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        bron_kerbosch(
            &incomparable,
            &mut current,
            BitSet::full(n),
            BitSet::new(n),
            &mut out,
        );
        for a in &mut out {
            a.sort_unstable();
        }
        out.sort();
        out
    }

    /// The cover diagram with covers listed in index order.
    pub fn to_diagram(&self) -> CoverDiagram {
        CoverDiagram {
            name: self.name.clone(),
            elements: self.labels.clone(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        }
    }
}

fn bron_kerbosch(
    adj: &[BitSet],
    current: &mut Vec<Elem>,
    mut candidates: BitSet,
    mut excluded: BitSet,
    out: &mut Vec<Vec<Elem>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .or(&excluded)
        .iter()
        .max_by_key(|&p| adj[p].and(&candidates).len())
        .expect("nonempty");
    let branch: Vec<Elem> = candidates.iter().filter(|&v| !adj[pivot].contains(v)).collect();
    for v in branch {
        current.push(v);
        bron_kerbosch(adj, current, candidates.and(&adj[v]), excluded.and(&adj[v]), out);
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n5() -> FiniteLattice {
        FiniteLattice::build(&CoverDiagram::new(
            Some("N5"),
            &["x1", "x2", "x3", "x4", "x5"],
            &[("x2", "x1"), ("x5", "x2"), ("x5", "x4"), ("x4", "x3"), ("x3", "x1")],
        ))
        .unwrap()
    }

    fn chain(k: usize) -> FiniteLattice {
        let labels: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
        FiniteLattice::from_leq(None, labels, |a, b| a <= b).unwrap()
    }

    #[test]
    fn pentagon_tables() {
        let l = n5();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(l.meet(e("x2"), e("x3")), e("x5"));
        assert_eq!(l.join(e("x2"), e("x4")), e("x1"));
        assert_eq!(l.bottom(), e("x5"));
        assert_eq!(l.top(), e("x1"));
        let mut c = l.covers_of(e("x5")).to_vec();
        c.sort();
        assert_eq!(c, vec![e("x2"), e("x4")]);
    }

    #[test]
    fn chain_meet_is_min() {
        let l = chain(3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.meet(a, b), a.min(b));
                assert_eq!(l.join(a, b), a.max(b));
            }
        }
    }

    #[test]
    fn two_maximal_elements_rejected() {
        let d = CoverDiagram::new(None, &["0", "a", "b"], &[("0", "a"), ("0", "b")]);
        assert_eq!(
            FiniteLattice::build(&d).unwrap_err(),
            Error::NotALattice("a".into(), "b".into(), "join")
        );
    }

    #[test]
    fn diagram_errors() {
        let cyc = CoverDiagram::new(None, &["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(FiniteLattice::build(&cyc), Err(Error::CyclicCovers(_))));
        let dup = CoverDiagram::new(None, &["a", "a"], &[]);
        assert_eq!(FiniteLattice::build(&dup).unwrap_err(), Error::DuplicateLabel("a".into()));
        let unk = CoverDiagram::new(None, &["a"], &[("a", "z")]);
        assert_eq!(FiniteLattice::build(&unk).unwrap_err(), Error::UnknownLabel("z".into()));
        let twice = CoverDiagram::new(None, &["a", "b"], &[("a", "b"), ("a", "b")]);
        assert!(matches!(FiniteLattice::build(&twice), Err(Error::DuplicateCover(..))));
        let selfc = CoverDiagram::new(None, &["a"], &[("a", "a")]);
        assert!(matches!(FiniteLattice::build(&selfc), Err(Error::SelfCover(_))));
    }

    #[test]
    fn generated_sublattice_in_pentagon() {
        let l = n5();
        let e = |s| l.elem(s).unwrap();
        let s = l.generated_sublattice(&[e("x2"), e("x4")]).unwrap();
        let mut got = l.names(s.iter());
        got.sort();
        assert_eq!(got, vec!["x1", "x2", "x4", "x5"]);
        assert_eq!(l.generated_sublattice(&[]).unwrap_err(), Error::EmptySeeds);
        let all: Vec<_> = (0..5).collect();
        assert_eq!(l.generated_sublattice(&all).unwrap().len(), 5);
    }

    #[test]
    fn product_sizes_and_labels() {
        let sq = chain(2).direct_product(&chain(2)).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.atoms().len(), 2);
        assert_eq!(sq.label(1), "c0.c1");
        let g = chain(2).direct_product(&chain(5)).unwrap();
        assert_eq!(g.len(), 10);
        let big = n5().direct_product(&n5()).unwrap();
        assert_eq!(big.len(), 25);
        assert!(matches!(
            n5().direct_product_capped(&n5(), 20),
            Err(Error::SizeLimit { size: 25, cap: 20 })
        ));
    }

    #[test]
    fn dual_swaps_operations() {
        let l = n5();
        let d = l.dual();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(d.leq(a, b), l.leq(b, a));
                assert_eq!(d.meet(a, b), l.join(a, b));
            }
            let mut x = d.covers_of(a).to_vec();
            x.sort();
            let mut y = l.covered_by(a).to_vec();
            y.sort();
            assert_eq!(x, y);
        }
        assert_eq!(d.bottom(), l.top());
    }

    #[test]
    fn maximal_antichains_of_chain_and_pentagon() {
        assert_eq!(chain(4).maximal_antichains(), vec![vec![0], vec![1], vec![2], vec![3]]);
        let l = n5();
        let got: Vec<Vec<String>> = l.maximal_antichains().into_iter().map(|a| l.names(a)).collect();
        assert_eq!(
            got,
            vec![
                vec!["x1".to_string()],
                vec!["x2".into(), "x3".into()],
                vec!["x2".into(), "x4".into()],
                vec!["x5".into()]
            ]
        );
    }

    #[test]
    fn convex_and_sublattice_tests() {
        let l = n5();
        let e = |s| l.elem(s).unwrap();
        let side = BitSet::from_indices(5, [e("x3"), e("x4")]);
        assert!(l.is_convex(&side) && l.is_sublattice(&side));
        let gap = BitSet::from_indices(5, [e("x5"), e("x3")]);
        assert!(!l.is_convex(&gap) && l.is_sublattice(&gap));
        let pair = BitSet::from_indices(5, [e("x2"), e("x4")]);
        assert!(!l.is_sublattice(&pair));
    }

    #[test]
    fn heights_and_depths() {
        let l = n5();
        let h = l.heights();
        let d = l.depths();
        assert_eq!(h[l.elem("x1").unwrap()], 3);
        assert_eq!(h[l.elem("x2").unwrap()], 1);
        assert_eq!(d[l.elem("x4").unwrap()], 2);
    }
}
