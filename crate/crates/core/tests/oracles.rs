mod common;

use common::Order;
use latcheck::{catalog, decomp, embed, enumerate};

#[test]
fn set_partition_counts_are_bell_numbers() {
    let counts: Vec<usize> = (1..=7).map(|n| common::set_partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 15, 52, 203, 877]);
}

#[test]
fn oracle_isomorphism_sees_the_pentagon_dual() {
    let n5 = Order::of(&catalog::get("N5").unwrap());
    let dual = Order::of(&catalog::get("N5").unwrap().dual());
    let m3 = Order::of(&catalog::get("M3").unwrap());
    assert!(common::isomorphic(&n5, &dual));
    assert!(!common::isomorphic(&n5, &m3));
}

#[test]
fn enumeration_matches_labelled_oracle() {
    for n in 1..=8 {
        let oracle = common::lattice_classes(n);
        let ours = enumerate::all_lattices(n).unwrap();
        assert_eq!(ours.len(), oracle.len(), "n = {n}");
        for l in &ours {
            let o = Order::of(l);
            assert_eq!(oracle.iter().filter(|r| common::isomorphic(r, &o)).count(), 1, "{}", l.display_name());
        }
    }
}

#[test]
fn embedding_search_matches_brute_force() {
    let patterns: Vec<_> = ["N5", "M3", "chain(3)", "grid(2,2)", "grid(2,3)"]
        .iter()
        .map(|n| catalog::get(n).unwrap())
        .collect();
    for n in 1..=7 {
        for host in enumerate::all_lattices(n).unwrap() {
            let ho = Order::of(&host);
            for p in &patterns {
                let expected = common::embeds(&Order::of(p), &ho);
                assert_eq!(embed::embeds(p, &host).unwrap(), expected, "{} in {}", p.display_name(), host.display_name());
            }
        }
    }
}

#[test]
fn dec_matches_exhaustive_partitions() {
    for n in 1..=7 {
        for l in enumerate::all_lattices(n).unwrap() {
            let (best, all) = common::dec(&Order::of(&l));
            let d = decomp::dec(&l).unwrap();
            assert_eq!(d.value, best, "{}", l.display_name());
            assert!(common::is_distributive_partition(&Order::of(&l), &d.witness.blocks));
            let mins = decomp::minimum_distributive_partitions(&l).unwrap();
            assert_eq!(mins.len(), all.len(), "{}", l.display_name());
        }
    }
}

#[test]
fn pentagon_has_seven_minimum_partitions() {
    let l = catalog::get("N5").unwrap();
    let (best, all) = common::dec(&Order::of(&l));
    assert_eq!(best, 3);
    assert_eq!(all.len(), 7);
    let named: Vec<Vec<Vec<String>>> = all
        .iter()
        .map(|p| common::normalize(&p.iter().map(|b| l.names(b.iter().copied())).collect::<Vec<_>>()))
        .collect();
    let extra = common::normalize(&[vec!["x1".into(), "x3".into()], vec!["x2".into()], vec!["x4".into(), "x5".into()]]);
    assert!(named.contains(&extra));
}

#[test]
fn partition_checker_agrees_on_catalog() {
    for name in ["N5", "M3", "grid(2,3)", "chain(4)"] {
        let l = catalog::get(name).unwrap();
        let o = Order::of(&l);
        for p in common::set_partitions(l.len()) {
            assert_eq!(decomp::is_distributive_partition(&l, &p).unwrap(), common::is_distributive_partition(&o, &p), "{name} {p:?}");
        }
    }
}
