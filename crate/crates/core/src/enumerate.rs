//! All lattices of a given size up to isomorphism, grown by adding one atom at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::BitSet;
use crate::canon::CanonicalForm;
use crate::embed::{self, ForbiddenProfile};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::{laws, variety};

pub const DEFAULT_CAP: usize = 9;
pub const MAX_SIZE: usize = 11;

fn labelled(l: &FiniteLattice, n: usize, k: usize) -> FiniteLattice {
    let order = l.canonical_order();
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteLattice::from_leq(Some(format!("lat{n}_{k}")), labels, |i, j| l.leq(order[i], order[j]))
        .expect("relabelling keeps the order")
}

fn antichains_above_bottom(m: &FiniteLattice) -> Vec<Vec<Elem>> {
    fn go(m: &FiniteLattice, next: Elem, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        for x in next..m.len() {
            if x == m.bottom() || cur.iter().any(|&y| m.comparable(x, y)) {
                continue;
            }
            cur.push(x);
            out.push(cur.clone());
            go(m, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 0, &mut Vec::new(), &mut out);
    out
}

/// The lattice `m` with a new atom whose strict up-set is generated by `u`, if that is a lattice.
fn add_atom(m: &FiniteLattice, u: &[Elem]) -> Option<FiniteLattice> {
    let n = m.len();
    let mut up = BitSet::new(n + 1);
    for &x in u {
        up.union_with(m.up_set(x));
    }
    let members = up.to_vec();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let z = m.meet(x, y);
            if z != m.bottom() && !up.contains(z) {
                return None;
            }
        }
    }
    let mut sets: Vec<BitSet> = (0..n)
        .map(|x| {
            let mut s = BitSet::new(n + 1);
            s.union_with(m.up_set(x));
            s
        })
        .collect();
    sets[m.bottom()].insert(n);
    up.insert(n);
    sets.push(up);
    let labels = (0..=n).map(|i| i.to_string()).collect();
    FiniteLattice::from_up_sets(None, labels, sets).ok()
}

/// The atom that comes first in canonical position order.
fn canonical_atom(l: &FiniteLattice) -> Elem {
    l.canonical_order()
        .into_iter()
        .find(|&x| l.covers(l.bottom(), x))
        .expect("a lattice with at least two elements has an atom")
}

fn children(m: &FiniteLattice, parent_form: &CanonicalForm) -> Vec<(CanonicalForm, FiniteLattice)> {
    let n = m.len();
    let mut found: BTreeMap<CanonicalForm, FiniteLattice> = BTreeMap::new();
    for u in antichains_above_bottom(m) {
        let Some(child) = add_atom(m, &u) else { continue };
        let form = child.canonical_form();
        if found.contains_key(&form) {
            continue;
        }
        let c = canonical_atom(&child);
        let accept = c == n || {
            let rest: Vec<Elem> = (0..=n).filter(|&x| x != c).collect();
            child
                .induced(&rest)
                .map(|p| p.canonical_form() == *parent_form)
                .unwrap_or(false)
        };
        if accept {
            found.insert(form, child);
        }
    }
    found.into_iter().collect()
}

/// One representative per isomorphism class of `n`-element lattices, sorted by canonical form.
pub fn all_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    all_lattices_capped(n, DEFAULT_CAP)
}

pub fn all_lattices_capped(n: usize, cap: usize) -> Result<Vec<FiniteLattice>> {
    let cap = cap.min(MAX_SIZE);
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > cap {
        return Err(Error::SizeLimit { size: n, cap });
    }
    let base = |k: usize| {
        FiniteLattice::from_leq(None, (0..k).map(|i| i.to_string()).collect(), |i, j| i <= j)
            .expect("chain")
    };
    let mut level: Vec<(CanonicalForm, FiniteLattice)> = if n == 1 {
        vec![(base(1).canonical_form(), base(1))]
    } else {
        vec![(base(2).canonical_form(), base(2))]
    };
    for _ in 2..n {
        let mut next: Vec<(CanonicalForm, FiniteLattice)> = level
            .par_iter()
            .flat_map_iter(|(form, m)| children(m, form))
            .collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next;
    }
    Ok(level.into_iter().enumerate().map(|(k, (_, l))| labelled(&l, n, k)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    Sd,
    Whitman,
    Distributive,
    InN5,
    Profile(String),
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "sd" => Filter::Sd,
            "whitman" => Filter::Whitman,
            "distributive" => Filter::Distributive,
            "in_n5" | "in-n5" => Filter::InN5,
            _ => match s.strip_prefix("profile:").or_else(|| s.strip_prefix("profile=")) {
                Some(p) => {
                    embed::profile(p)?;
                    Filter::Profile(p.to_string())
                }
                None => return Err(Error::BadParameter(format!("unknown filter `{s}`"))),
            },
        })
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Sd => write!(f, "sd"),
            Filter::Whitman => write!(f, "whitman"),
            Filter::Distributive => write!(f, "distributive"),
            Filter::InN5 => write!(f, "in_n5"),
            Filter::Profile(p) => write!(f, "profile:{p}"),
        }
    }
}

pub fn parse_filters(list: &str) -> Result<Vec<Filter>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

enum Compiled {
    Plain(Filter),
    Forbidden(ForbiddenProfile),
}

fn compile(filters: &[Filter]) -> Result<Vec<Compiled>> {
    filters
        .iter()
        .map(|f| match f {
            Filter::Profile(p) => Ok(Compiled::Forbidden(embed::profile(p)?)),
            other => Ok(Compiled::Plain(other.clone())),
        })
        .collect()
}

fn passes(l: &FiniteLattice, filters: &[Compiled], budget: u64) -> Result<bool> {
    for f in filters {
        let ok = match f {
            Compiled::Plain(Filter::Sd) => laws::is_semidistributive(l),
            Compiled::Plain(Filter::Whitman) => laws::whitman(l),
            Compiled::Plain(Filter::Distributive) => laws::distributive(l),
            Compiled::Plain(Filter::InN5) => variety::is_in_n5_variety(l)?,
            Compiled::Plain(Filter::Profile(_)) => unreachable!("compiled"),
            Compiled::Forbidden(p) => embed::contains_forbidden(l, p, budget)?.is_empty(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lattices of size `n` satisfying every filter.
pub fn filtered(n: usize, filters: &[Filter]) -> Result<Vec<FiniteLattice>> {
    filter_lattices(all_lattices(n)?, filters, embed::DEFAULT_BUDGET)
}

pub fn filter_lattices(ls: Vec<FiniteLattice>, filters: &[Filter], budget: u64) -> Result<Vec<FiniteLattice>> {
    let compiled = compile(filters)?;
    let keep: Vec<Result<bool>> = ls.par_iter().map(|l| passes(l, &compiled, budget)).collect();
    let mut out = Vec::new();
    for (l, k) in ls.into_iter().zip(keep) {
        if k? {
            out.push(l);
        }
    }
    Ok(out)
}
