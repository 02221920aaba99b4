//! Law predicates evaluated by exhaustive tuple scans.
//!
//! Every counterexample returned is the first one in lexicographic index order.

use serde::Serialize;

use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawProfile {
    pub whitman: bool,
    pub sd_join: bool,
    pub sd_meet: bool,
    pub distributive: bool,
    pub modular: bool,
    pub doubly_reducible: Vec<Elem>,
    pub length: usize,
    pub free_sublattice_finite: bool,
}

/// First `(a, b, c, d)` with `a ∧ b <= c ∨ d` where none of the four alternatives hold.
pub fn whitman_counterexample(l: &FiniteLattice) -> Option<[Elem; 4]> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            let m = l.meet(a, b);
            for c in 0..n {
                if l.leq(m, c) {
                    continue;
                }
                for d in 0..n {
                    let j = l.join(c, d);
                    if l.leq(m, j) && !l.leq(a, j) && !l.leq(b, j) && !l.leq(m, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn whitman(l: &FiniteLattice) -> bool {
    whitman_counterexample(l).is_none()
}

/// First `(a, b, c)` with `a ∨ b = a ∨ c` but `a ∨ (b ∧ c)` different.
pub fn sd_join_counterexample(l: &FiniteLattice) -> Option<[Elem; 3]> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            let d = l.join(a, b);
            for c in 0..n {
                if l.join(a, c) == d && l.join(a, l.meet(b, c)) != d {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First `(a, b, c)` with `a ∧ b = a ∧ c` but `a ∧ (b ∨ c)` different.
pub fn sd_meet_counterexample(l: &FiniteLattice) -> Option<[Elem; 3]> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            let d = l.meet(a, b);
            for c in 0..n {
                if l.meet(a, c) == d && l.meet(a, l.join(b, c)) != d {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn semidistributive(l: &FiniteLattice) -> (bool, bool) {
    (
        sd_join_counterexample(l).is_none(),
        sd_meet_counterexample(l).is_none(),
    )
}

pub fn is_semidistributive(l: &FiniteLattice) -> bool {
    let (j, m) = semidistributive(l);
    j && m
}

/// First triple drawn from `elems` violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
pub fn distributive_counterexample_on(l: &FiniteLattice, elems: &[Elem]) -> Option<[Elem; 3]> {
    for &a in elems {
        for &b in elems {
            for &c in elems {
                if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Distributivity of the sublattice formed by `elems`.
pub fn distributive_on(l: &FiniteLattice, elems: &[Elem]) -> bool {
    distributive_counterexample_on(l, elems).is_none()
}

pub fn distributive(l: &FiniteLattice) -> bool {
    let all: Vec<Elem> = (0..l.len()).collect();
    distributive_on(l, &all)
}

/// First `(a, b, c)` with `a <= c` and `(a ∨ b) ∧ c` different from `a ∨ (b ∧ c)`.
pub fn modular_counterexample(l: &FiniteLattice) -> Option<[Elem; 3]> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            for c in l.up_set(a).iter() {
                if l.meet(l.join(a, b), c) != l.join(a, l.meet(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn modular(l: &FiniteLattice) -> bool {
    modular_counterexample(l).is_none()
}

pub fn is_join_reducible(l: &FiniteLattice, a: Elem) -> bool {
    let below: Vec<Elem> = l.down_set(a).iter().collect();
    below.iter().any(|&x| {
        below
            .iter()
            .any(|&y| l.incomparable(x, y) && l.join(x, y) == a)
    })
}

pub fn is_meet_reducible(l: &FiniteLattice, a: Elem) -> bool {
    let above: Vec<Elem> = l.up_set(a).iter().collect();
    above.iter().any(|&x| {
        above
            .iter()
            .any(|&y| l.incomparable(x, y) && l.meet(x, y) == a)
    })
}

pub fn doubly_reducible_elements(l: &FiniteLattice) -> Vec<Elem> {
    (0..l.len())
        .filter(|&a| is_join_reducible(l, a) && is_meet_reducible(l, a))
        .collect()
}

pub fn has_doubly_reducible(l: &FiniteLattice) -> bool {
    (0..l.len()).any(|a| is_join_reducible(l, a) && is_meet_reducible(l, a))
}

/// Cardinality of the longest chain.
pub fn length(l: &FiniteLattice) -> usize {
    l.heights()[l.top()] + 1
}

/// Whether a semidistributive lattice has at most `2^(length-1)` elements.
pub fn dilworth_bound_holds(l: &FiniteLattice) -> bool {
    if !is_semidistributive(l) {
        return true;
    }
    let exp = length(l) - 1;
    exp >= usize::BITS as usize - 1 || l.len() <= 1usize << exp
}

/// Finite sublattices of free lattices are exactly the semidistributive lattices with Whitman's condition.
pub fn is_finite_free_sublattice(l: &FiniteLattice) -> bool {
    is_semidistributive(l) && whitman(l)
}

pub fn law_profile(l: &FiniteLattice) -> LawProfile {
    let whitman = whitman(l);
    let (sd_join, sd_meet) = semidistributive(l);
    LawProfile {
        whitman,
        sd_join,
        sd_meet,
        distributive: distributive(l),
        modular: modular(l),
        doubly_reducible: doubly_reducible_elements(l),
        length: length(l),
        free_sublattice_finite: whitman && sd_join && sd_meet,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoverDiagram;

    fn build(elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
        FiniteLattice::build(&CoverDiagram::new(None, elements, covers)).unwrap()
    }

    fn n5() -> FiniteLattice {
        build(
            &["x1", "x2", "x3", "x4", "x5"],
            &[("x2", "x1"), ("x5", "x2"), ("x5", "x4"), ("x4", "x3"), ("x3", "x1")],
        )
    }

    fn m3() -> FiniteLattice {
        build(
            &["1", "a", "b", "c", "0"],
            &[("a", "1"), ("b", "1"), ("c", "1"), ("0", "a"), ("0", "b"), ("0", "c")],
        )
    }

    fn chain(k: usize) -> FiniteLattice {
        FiniteLattice::from_leq(None, (0..k).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap()
    }

    fn boolean(k: u32) -> FiniteLattice {
        let n = 1usize << k;
        FiniteLattice::from_leq(None, (0..n).map(|i| format!("{i:b}")).collect(), |a, b| a & !b == 0)
            .unwrap()
    }

    #[test]
    fn chains_satisfy_everything() {
        let p = law_profile(&chain(4));
        assert!(p.whitman && p.sd_join && p.sd_meet && p.distributive && p.modular);
        assert_eq!(p.length, 4);
        assert!(p.doubly_reducible.is_empty());
    }

    #[test]
    fn diamond_laws() {
        let l = m3();
        assert!(whitman(&l));
        assert_eq!(semidistributive(&l), (false, false));
        assert!(modular(&l));
        assert!(!distributive(&l));
        assert!(!is_finite_free_sublattice(&l));
    }

    #[test]
    fn pentagon_laws() {
        let l = n5();
        let p = law_profile(&l);
        assert!(p.whitman && p.sd_join && p.sd_meet);
        assert!(!p.modular && !p.distributive);
        assert!(p.doubly_reducible.is_empty());
        assert_eq!(p.length, 4);
        assert!(dilworth_bound_holds(&l));
        assert!(p.free_sublattice_finite);
    }

    #[test]
    fn doubly_reducible_middle_breaks_whitman() {
        let l = build(
            &["0", "a", "b", "m", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "m"),
                ("b", "m"),
                ("m", "c"),
                ("m", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        );
        let e = |s| l.elem(s).unwrap();
        assert_eq!(doubly_reducible_elements(&l), vec![e("m")]);
        assert!(!whitman(&l));
        let [a, b, c, d] = whitman_counterexample(&l).unwrap();
        let m = l.meet(a, b);
        let j = l.join(c, d);
        assert!(l.leq(m, j) && !l.leq(a, j) && !l.leq(b, j) && !l.leq(m, c) && !l.leq(m, d));
        let (c_, d_, a_, b_) = (e("c"), e("d"), e("a"), e("b"));
        let mm = l.meet(c_, d_);
        let jj = l.join(a_, b_);
        assert!(l.leq(mm, jj) && !l.leq(c_, jj) && !l.leq(d_, jj) && !l.leq(mm, a_) && !l.leq(mm, b_));
    }

    #[test]
    fn cubes() {
        let b3 = boolean(3);
        let p = law_profile(&b3);
        assert!(p.distributive && p.whitman && p.free_sublattice_finite);
        assert_eq!(p.length, 4);
        assert_eq!(b3.len(), 1 << (p.length - 1));
        let b4 = boolean(4);
        let dr = doubly_reducible_elements(&b4);
        let ranks: Vec<u32> = dr.iter().map(|&x| (x as u32).count_ones()).collect();
        assert_eq!(dr.len(), 6);
        assert!(ranks.iter().all(|&r| r == 2));
        assert!(!whitman(&b4));
    }

    #[test]
    fn duality_swaps_semidistributive_sides() {
        let l = build(
            &["0", "a", "b", "c", "ab", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "ab"), ("b", "ab"), ("ab", "1"), ("c", "1")],
        );
        let (j, m) = semidistributive(&l);
        let (dj, dm) = semidistributive(&l.dual());
        assert_eq!((j, m), (dm, dj));
        assert_eq!(whitman(&l), whitman(&l.dual()));
    }
}
