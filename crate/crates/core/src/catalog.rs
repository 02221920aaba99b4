//! Built-in named lattices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CoverDiagram, FiniteLattice};

/// Known facts about an entry, checked against the computed laws in tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub semidistributive: Option<bool>,
    pub subdirectly_irreducible: Option<bool>,
    pub in_n5_variety: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub diagram: CoverDiagram,
    pub expected: Expected,
}

/// The fifteen subdirectly irreducible covers of the pentagon variety, in order.
pub const MCKENZIE: [&str; 15] = [
    "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "L11", "L12", "L13", "L14", "L15",
];

/// Names of all entries without a parameter.
pub const FIXED: [&str; 20] = [
    "M3", "N5", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "L11", "L12", "L13",
    "L14", "L15", "B3", "stacked_n5", "shape_2x5_plus",
];

/// Pairs of catalog entries that are dual to each other.
pub const DUAL_PAIRS: [(&str, &str); 6] = [
    ("L1", "L2"),
    ("L4", "L5"),
    ("L7", "L8"),
    ("L9", "L10"),
    ("L11", "L12"),
    ("L13", "L14"),
];

/// The entry isomorphic to the dual of `name`; `None` when the dual is not in the catalog.
pub fn dual_name(name: &str) -> Option<&str> {
    for (a, b) in DUAL_PAIRS {
        if name == a {
            return Some(b);
        }
        if name == b {
            return Some(a);
        }
    }
    (name != "shape_2x5_plus").then_some(name)
}

pub fn mckenzie_semidistributive_split() -> (Vec<&'static str>, Vec<&'static str>) {
    let mut non_sd = vec!["M3"];
    non_sd.extend(&MCKENZIE[..5]);
    (non_sd, MCKENZIE[5..].to_vec())
}

type Covers = &'static [(&'static str, &'static str)];

fn fixed_covers(name: &str) -> Option<(&'static [&'static str], Covers)> {
    const ABCDEFG: &[&str] = &["a", "b", "c", "d", "e", "f", "g"];
    const ABCDEF: &[&str] = &["a", "b", "c", "d", "e", "f"];
    const ATOH: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h"];
    const ATOI: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h", "i"];
    const ATOJ: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    Some(match name {
        "M3" => (
            &["x1", "x2", "x3", "x4", "x5"],
            &[("x2", "x1"), ("x3", "x1"), ("x4", "x1"), ("x5", "x2"), ("x5", "x3"), ("x5", "x4")],
        ),
        "N5" => (
            &["x1", "x2", "x3", "x4", "x5"],
            &[("x2", "x1"), ("x5", "x2"), ("x5", "x4"), ("x4", "x3"), ("x3", "x1")],
        ),
        "L1" => (
            ABCDEFG,
            &[
                ("g", "e"), ("g", "f"), ("g", "d"), ("e", "b"), ("d", "b"),
                ("d", "c"), ("f", "c"), ("b", "a"), ("c", "a"),
            ],
        ),
        "L3" => (
            ABCDEFG,
            &[
                ("g", "d"), ("g", "f"), ("d", "c"), ("d", "e"), ("c", "b"),
                ("f", "b"), ("b", "a"), ("e", "a"),
            ],
        ),
        "L4" => (
            ABCDEF,
            &[("f", "c"), ("f", "d"), ("f", "e"), ("c", "b"), ("d", "b"), ("b", "a"), ("e", "a")],
        ),
        "L6" => (
            ATOH,
            &[
                ("g", "f"), ("g", "h"), ("f", "e"), ("f", "d"), ("e", "c"),
                ("c", "b"), ("d", "b"), ("b", "a"), ("h", "a"),
            ],
        ),
        "L7" => (
            ATOI,
            &[
                ("i", "h"), ("i", "f"), ("h", "g"), ("h", "d"), ("g", "e"), ("e", "b"),
                ("e", "c"), ("d", "b"), ("f", "c"), ("b", "a"), ("c", "a"),
            ],
        ),
        "L9" => (
            ATOI,
            &[
                ("i", "g"), ("i", "h"), ("g", "f"), ("g", "e"), ("f", "d"), ("d", "b"),
                ("e", "b"), ("e", "c"), ("h", "c"), ("b", "a"), ("c", "a"),
            ],
        ),
        "L11" => (
            ATOJ,
            &[
                ("j", "f"), ("j", "i"), ("f", "d"), ("i", "g"), ("i", "h"), ("g", "d"), ("g", "e"),
                ("d", "b"), ("e", "b"), ("e", "c"), ("h", "c"), ("b", "a"), ("c", "a"),
            ],
        ),
        "L13" => (
            &["a", "b", "c", "d", "e", "f", "g", "h", "hh"],
            &[
                ("h", "g"), ("h", "hh"), ("h", "f"), ("hh", "e"), ("e", "b"), ("e", "c"), ("f", "b"),
                ("f", "d"), ("g", "d"), ("g", "c"), ("b", "a"), ("c", "a"), ("d", "a"),
            ],
        ),
        "L14" => (
            &["a", "aa", "b", "c", "d", "e", "f", "g", "h"],
            &[
                ("h", "e"), ("h", "f"), ("h", "g"), ("e", "b"), ("e", "c"), ("f", "b"), ("f", "d"),
                ("g", "d"), ("g", "c"), ("d", "aa"), ("aa", "a"), ("b", "a"), ("c", "a"),
            ],
        ),
        "L15" => (
            ATOJ,
            &[
                ("j", "h"), ("j", "i"), ("h", "e"), ("h", "f"), ("i", "g"), ("i", "f"), ("f", "d"),
                ("e", "b"), ("g", "c"), ("d", "b"), ("d", "c"), ("b", "a"), ("c", "a"),
            ],
        ),
        "B3" => (
            &["0", "a", "b", "c", "ab", "ac", "bc", "abc"],
            &[
                ("0", "a"), ("0", "b"), ("0", "c"), ("a", "ab"), ("a", "ac"), ("b", "ab"),
                ("b", "bc"), ("c", "ac"), ("c", "bc"), ("ab", "abc"), ("ac", "abc"), ("bc", "abc"),
            ],
        ),
        "stacked_n5" => (
            &["x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4", "y5"],
            &[
                ("x2", "x1"), ("x5", "x2"), ("x5", "x4"), ("x4", "x3"), ("x3", "x1"),
                ("y2", "y1"), ("y5", "y2"), ("y5", "y4"), ("y4", "y3"), ("y3", "y1"),
                ("y1", "x5"),
            ],
        ),
        "shape_2x5_plus" => (
            &["x'", "x", "b", "z", "z'", "w'", "w", "a", "y", "y'", "c", "s"],
            &[
                ("x'", "x"), ("x", "b"), ("b", "z"), ("z", "z'"),
                ("w'", "w"), ("w", "a"), ("a", "s"), ("s", "y"), ("y", "y'"),
                ("w'", "x'"), ("w", "x"), ("y", "z"), ("y'", "z'"),
                ("a", "c"), ("c", "b"),
            ],
        ),
        _ => return None,
    })
}

fn reversed(d: CoverDiagram, name: &str) -> CoverDiagram {
    CoverDiagram {
        name: Some(name.to_string()),
        elements: d.elements,
        covers: d.covers.into_iter().map(|(a, b)| (b, a)).collect(),
    }
}

fn fixed_diagram(name: &str) -> Option<CoverDiagram> {
    if let Some((elements, covers)) = fixed_covers(name) {
        return Some(CoverDiagram::new(Some(name), elements, covers));
    }
    let source = match name {
        "L2" => "L1",
        "L5" => "L4",
        "L8" => "L7",
        "L10" => "L9",
        "L12" => "L11",
        _ => return None,
    };
    fixed_diagram(source).map(|d| reversed(d, name))
}

fn expected_for(name: &str) -> Expected {
    let (non_sd, sd) = mckenzie_semidistributive_split();
    if non_sd.contains(&name) || sd.contains(&name) {
        return Expected {
            semidistributive: Some(sd.contains(&name)),
            subdirectly_irreducible: Some(true),
            in_n5_variety: Some(false),
        };
    }
    match name {
        "N5" => Expected {
            semidistributive: Some(true),
            subdirectly_irreducible: Some(true),
            in_n5_variety: Some(true),
        },
        "B3" => Expected {
            semidistributive: Some(true),
            subdirectly_irreducible: Some(false),
            in_n5_variety: Some(true),
        },
        "stacked_n5" => Expected {
            semidistributive: Some(true),
            subdirectly_irreducible: None,
            in_n5_variety: Some(true),
        },
        "shape_2x5_plus" => Expected {
            semidistributive: Some(false),
            subdirectly_irreducible: None,
            in_n5_variety: Some(false),
        },
        _ => Expected::default(),
    }
}

pub fn chain(k: usize) -> Result<FiniteLattice> {
    if k < 1 {
        return Err(Error::BadParameter(format!("chain({k}) needs k >= 1")));
    }
    let labels = (0..k).map(|i| format!("c{i}")).collect();
    FiniteLattice::from_leq(Some(format!("chain({k})")), labels, |a, b| a <= b)
}

/// The product of a 2-element chain and a k-element chain.
pub fn grid(k: usize) -> Result<FiniteLattice> {
    if k < 1 {
        return Err(Error::BadParameter(format!("grid(2,{k}) needs k >= 1")));
    }
    Ok(chain(2)?.direct_product(&chain(k)?)?.with_name(format!("grid(2,{k})")))
}

/// A single left element beside a chain of `2k` elements, closed off by a top and a bottom.
pub fn ninf(k: usize) -> Result<FiniteLattice> {
    if k < 1 {
        return Err(Error::BadParameter(format!("ninf({k}) needs k >= 1")));
    }
    let mut elements = vec!["top".to_string(), "bot".to_string(), "left".to_string()];
    elements.extend((1..=2 * k).map(|i| format!("r{i}")));
    let mut covers = vec![
        ("bot".to_string(), "left".to_string()),
        ("left".to_string(), "top".to_string()),
        ("bot".to_string(), "r1".to_string()),
        (format!("r{}", 2 * k), "top".to_string()),
    ];
    for i in 1..2 * k {
        covers.push((format!("r{i}"), format!("r{}", i + 1)));
    }
    FiniteLattice::build(&CoverDiagram {
        name: Some(format!("ninf({k})")),
        elements,
        covers,
    })
}

fn parse_param(name: &str, prefix: &str) -> Option<Result<usize>> {
    let inner = name.strip_prefix(prefix)?.strip_suffix(')')?;
    Some(
        inner
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::BadParameter(format!("`{inner}` in `{name}` is not a size"))),
    )
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    let diagram = fixed_diagram(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    Ok(CatalogEntry {
        name: name.to_string(),
        diagram,
        expected: expected_for(name),
    })
}

pub fn entries() -> Vec<CatalogEntry> {
    FIXED.iter().map(|n| entry(n).expect("fixed entry")).collect()
}

/// Looks up a named lattice; parametrized families are written `chain(k)`, `grid(2,k)`, `ninf(k)`.
pub fn get(name: &str) -> Result<FiniteLattice> {
    if let Some(k) = parse_param(name, "chain(") {
        return chain(k?);
    }
    if let Some(k) = parse_param(name, "grid(2,") {
        return grid(k?);
    }
    if let Some(k) = parse_param(name, "ninf(") {
        return ninf(k?);
    }
    FiniteLattice::build(&entry(name)?.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws;

    #[test]
    fn element_counts() {
        let expect = [
            ("M3", 5), ("N5", 5), ("L1", 7), ("L2", 7), ("L3", 7), ("L4", 6), ("L5", 6),
            ("L6", 8), ("L7", 9), ("L8", 9), ("L9", 9), ("L10", 9), ("L11", 10), ("L12", 10),
            ("L13", 9), ("L14", 9), ("L15", 10), ("B3", 8), ("stacked_n5", 10),
            ("shape_2x5_plus", 12),
        ];
        for (name, n) in expect {
            assert_eq!(get(name).unwrap().len(), n, "{name}");
        }
    }

    #[test]
    fn families() {
        assert_eq!(get("chain(4)").unwrap().len(), 4);
        assert_eq!(get("grid(2,4)").unwrap().len(), 8);
        assert_eq!(get("ninf(3)").unwrap().len(), 9);
        assert!(get("ninf(1)").unwrap().is_isomorphic(&get("N5").unwrap()));
        assert!(matches!(get("chain(0)"), Err(Error::BadParameter(_))));
        assert!(matches!(get("L16"), Err(Error::UnknownName(_))));
        assert!(matches!(get("chain(x)"), Err(Error::BadParameter(_))));
    }

    #[test]
    fn semidistributive_split_matches_laws() {
        let (non_sd, sd) = mckenzie_semidistributive_split();
        for name in non_sd {
            assert!(!laws::is_semidistributive(&get(name).unwrap()), "{name}");
        }
        for name in sd {
            assert!(laws::is_semidistributive(&get(name).unwrap()), "{name}");
        }
    }

    #[test]
    fn duality_pairing_holds() {
        for name in FIXED {
            let l = get(name).unwrap();
            let Some(dn) = dual_name(name) else {
                assert!(FIXED.iter().all(|m| !get(m).unwrap().is_isomorphic(&l.dual())));
                continue;
            };
            let d = get(dn).unwrap();
            assert!(l.dual().is_isomorphic(&d), "{name}");
        }
    }

    #[test]
    fn entries_pairwise_non_isomorphic() {
        let forms: Vec<_> = FIXED.iter().map(|n| get(n).unwrap().canonical_form()).collect();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                assert_ne!(forms[i], forms[j], "{} vs {}", FIXED[i], FIXED[j]);
            }
        }
    }
}
