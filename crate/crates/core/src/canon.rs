//! Canonical labelling by colour refinement and individualization.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::lattice::{Elem, FiniteLattice};

/// Byte string that is equal for two lattices exactly when they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Short stable hex digest, used to name lattices in reports.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(&self.0);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.hash_hex())
    }
}

struct Search<'a> {
    l: &'a FiniteLattice,
    best: Option<(Vec<u8>, Vec<Elem>)>,
}

impl FiniteLattice {
    /// Elements in canonical position order.
    pub fn canonical_order(&self) -> Vec<Elem> {
        let h = self.heights();
        let d = self.depths();
        let initial: Vec<(usize, usize, usize, usize)> = (0..self.len())
            .map(|a| (h[a], d[a], self.covers_of(a).len(), self.covered_by(a).len()))
            .collect();
        let colors = ranks(&initial);
        let mut s = Search { l: self, best: None };
        s.descend(colors);
        s.best.expect("at least one leaf").1
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm(encode(self, &self.canonical_order()))
    }

    /// The lattice relabelled into canonical position order, keeping labels.
    pub fn canonical(&self) -> FiniteLattice {
        self.permuted(&self.canonical_order())
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// An isomorphism as a map from indices of `self` to indices of `other`.
    pub fn isomorphism_to(&self, other: &FiniteLattice) -> Option<Vec<Elem>> {
        if self.len() != other.len() {
            return None;
        }
        let a = self.canonical_order();
        let b = other.canonical_order();
        if encode(self, &a) != encode(other, &b) {
            return None;
        }
        let mut map = vec![0; self.len()];
        for (x, y) in a.into_iter().zip(b) {
            map[x] = y;
        }
        Some(map)
    }
}

fn ranks<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present") as u32)
        .collect()
}

fn encode(l: &FiniteLattice, order: &[Elem]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(2 + (n * n).div_ceil(8));
    out.extend_from_slice(&(n as u16).to_be_bytes());
    let mut byte = 0u8;
    let mut k = 0;
    for &a in order {
        for &b in order {
            byte = byte << 1 | l.leq(a, b) as u8;
            k += 1;
            if k == 8 {
                out.push(byte);
                byte = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(byte << (8 - k));
    }
    out
}

fn class_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

impl Search<'_> {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let l = self.l;
        let n = l.len();
        let mut count = class_count(&colors);
        loop {
            let sigs: Vec<Vec<u32>> = (0..n)
                .map(|x| {
                    let mut up: Vec<u32> = l.covers_of(x).iter().map(|&y| colors[y]).collect();
                    let mut dn: Vec<u32> = l.covered_by(x).iter().map(|&y| colors[y]).collect();
                    let mut above: Vec<u32> =
                        l.up_set(x).iter().filter(|&y| y != x).map(|y| colors[y]).collect();
                    let mut below: Vec<u32> =
                        l.down_set(x).iter().filter(|&y| y != x).map(|y| colors[y]).collect();
                    up.sort_unstable();
                    dn.sort_unstable();
                    above.sort_unstable();
                    below.sort_unstable();
                    let mut s = vec![colors[x], up.len() as u32];
                    s.extend(up);
                    s.push(u32::MAX);
                    s.extend(dn);
                    s.push(u32::MAX);
                    s.extend(above);
                    s.push(u32::MAX);
                    s.extend(below);
                    s
                })
                .collect();
            let next = ranks(&sigs);
            let c = class_count(&next);
            colors = next;
            if c == count {
                return colors;
            }
            count = c;
        }
    }

    fn twins(&self, x: Elem, y: Elem) -> bool {
        let l = self.l;
        let strip = |s: &crate::bits::BitSet, e: Elem| {
            let mut s = s.clone();
            s.remove(e);
            s
        };
        let (mut ux, mut uy) = (strip(l.up_set(x), x), strip(l.up_set(y), y));
        let (mut dx, mut dy) = (strip(l.down_set(x), x), strip(l.down_set(y), y));
        ux.remove(y);
        uy.remove(x);
        dx.remove(y);
        dy.remove(x);
        l.incomparable(x, y) && ux == uy && dx == dy
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let colors = self.refine(colors);
        let n = self.l.len();
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            let mut order: Vec<Elem> = (0..n).collect();
            order.sort_by_key(|&x| colors[x]);
            let code = encode(self.l, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell: Vec<Elem> = (0..n).filter(|&x| colors[x] as usize == target).collect();
        let mut tried: Vec<Elem> = Vec::new();
        for &x in &cell {
            if tried.iter().any(|&t| self.twins(t, x)) {
                continue;
            }
            tried.push(x);
            let next: Vec<u32> = (0..n)
                .map(|y| 2 * colors[y] + u32::from(colors[y] as usize == target && y != x))
                .collect();
            self.descend(next);
        }
    }
}
