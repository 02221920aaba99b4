//! Brute-force oracles that share no code with the library beyond reading `leq`.

#![allow(dead_code)]

use latcheck::FiniteLattice;

/// An order on `0..n` as a full relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    pub le: Vec<Vec<bool>>,
}

impl Order {
    pub fn of(l: &FiniteLattice) -> Order {
        let n = l.len();
        Order {
            le: (0..n).map(|a| (0..n).map(|b| l.leq(a, b)).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    fn bound(&self, a: usize, b: usize, upper: bool) -> Option<usize> {
        let n = self.len();
        let rel = |x: usize, y: usize| if upper { self.le[x][y] } else { self.le[y][x] };
        let bounds: Vec<usize> = (0..n).filter(|&z| rel(a, z) && rel(b, z)).collect();
        bounds.iter().copied().find(|&z| bounds.iter().all(|&w| rel(z, w)))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.bound(a, b, true).expect("a lattice")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.bound(a, b, false).expect("a lattice")
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.bound(a, b, true).is_some() && self.bound(a, b, false).is_some()))
    }

    pub fn to_lattice(&self) -> FiniteLattice {
        let labels = (0..self.len()).map(|i| format!("e{i}")).collect();
        FiniteLattice::from_leq(None, labels, |a, b| self.le[a][b]).expect("a lattice")
    }
}

/// Lattices on `0..n` with 0 at the bottom, n-1 at the top, and `i <= j` only when `i <= j` as integers.
fn naturally_labelled(n: usize) -> Vec<Order> {
    if n == 1 {
        return vec![Order { le: vec![vec![true]] }];
    }
    let inner: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << inner.len()) {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
            row[n - 1] = true;
        }
        le[0].fill(true);
        for (k, &(i, j)) in inner.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[i][j] = true;
            }
        }
        let closed = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
        if !closed {
            continue;
        }
        let o = Order { le };
        if o.is_lattice() {
            out.push(o);
        }
    }
    out
}

fn signature(o: &Order, a: usize) -> (usize, usize) {
    let n = o.len();
    ((0..n).filter(|&b| o.le[b][a]).count(), (0..n).filter(|&b| o.le[a][b]).count())
}

/// Order isomorphism by backtracking over signature-compatible bijections.
pub fn isomorphic(x: &Order, y: &Order) -> bool {
    let n = x.len();
    if n != y.len() {
        return false;
    }
    let sx: Vec<_> = (0..n).map(|a| signature(x, a)).collect();
    let sy: Vec<_> = (0..n).map(|a| signature(y, a)).collect();
    let (mut a, mut b) = (sx.clone(), sy.clone());
    a.sort();
    b.sort();
    if a != b {
        return false;
    }
    fn go(x: &Order, y: &Order, sx: &[(usize, usize)], sy: &[(usize, usize)], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == x.len() {
            return true;
        }
        for j in 0..y.len() {
            if used[j] || sx[i] != sy[j] {
                continue;
            }
            if (0..i).all(|k| x.le[k][i] == y.le[map[k]][j] && x.le[i][k] == y.le[j][map[k]]) {
                map.push(j);
                used[j] = true;
                if go(x, y, sx, sy, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(x, y, &sx, &sy, &mut Vec::new(), &mut vec![false; n])
}

/// One representative per isomorphism class of `n`-element lattices.
pub fn lattice_classes(n: usize) -> Vec<Order> {
    let mut reps: Vec<Order> = Vec::new();
    for o in naturally_labelled(n) {
        if !reps.iter().any(|r| isomorphic(r, &o)) {
            reps.push(o);
        }
    }
    reps
}

/// Whether some injective map from `h` into `l` preserves meets and joins.
pub fn embeds(h: &Order, l: &Order) -> bool {
    fn go(h: &Order, l: &Order, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == h.len() {
            return (0..i).all(|a| {
                (0..i).all(|b| map[h.meet(a, b)] == l.meet(map[a], map[b]) && map[h.join(a, b)] == l.join(map[a], map[b]))
            });
        }
        for j in 0..l.len() {
            if used[j] {
                continue;
            }
            if (0..i).all(|k| h.le[k][i] == l.le[map[k]][j] && h.le[i][k] == l.le[j][map[k]]) {
                map.push(j);
                used[j] = true;
                if go(h, l, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(h, l, &mut Vec::new(), &mut vec![false; l.len()])
}

fn is_sublattice(o: &Order, s: &[usize]) -> bool {
    s.iter().all(|&a| s.iter().all(|&b| s.contains(&o.meet(a, b)) && s.contains(&o.join(a, b))))
}

fn is_convex(o: &Order, s: &[usize]) -> bool {
    (0..o.len()).all(|z| s.contains(&z) || !s.iter().any(|&a| s.iter().any(|&b| o.le[a][z] && o.le[z][b])))
}

fn distributive_on(o: &Order, s: &[usize]) -> bool {
    s.iter().all(|&a| {
        s.iter().all(|&b| s.iter().all(|&c| o.meet(a, o.join(b, c)) == o.join(o.meet(a, b), o.meet(a, c))))
    })
}

fn good_block(o: &Order, s: &[usize]) -> bool {
    is_sublattice(o, s) && is_convex(o, s) && distributive_on(o, s)
}

/// Every block is a convex distributive sublattice, and any two blocks whose union is a convex
/// sublattice have a distributive union.
pub fn is_distributive_partition(o: &Order, blocks: &[Vec<usize>]) -> bool {
    if !blocks.iter().all(|b| good_block(o, b)) {
        return false;
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let u: Vec<usize> = blocks[i].iter().chain(&blocks[j]).copied().collect();
            if is_sublattice(o, &u) && is_convex(o, &u) && !distributive_on(o, &u) {
                return false;
            }
        }
    }
    true
}

/// All set partitions of `0..n` via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if rgs.len() == n {
            let mut blocks = vec![Vec::new(); max];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            go(n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), 0, &mut out);
    out
}

/// The minimum number of blocks of a distributive partition and every partition attaining it.
pub fn dec(o: &Order) -> (usize, Vec<Vec<Vec<usize>>>) {
    let mut best = usize::MAX;
    let mut all = Vec::new();
    for p in set_partitions(o.len()) {
        if p.len() > best || !is_distributive_partition(o, &p) {
            continue;
        }
        if p.len() < best {
            best = p.len();
            all.clear();
        }
        all.push(p);
    }
    (best, all)
}

/// Normal form of a partition for comparisons: sorted blocks of sorted labels.
pub fn normalize(blocks: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut b: Vec<Vec<String>> = blocks
        .iter()
        .map(|x| {
            let mut x = x.clone();
            x.sort();
            x
        })
        .collect();
    b.sort();
    b
}
