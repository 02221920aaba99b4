//! Words in free lattices: Whitman's order, canonical forms, evaluation and embedding search.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::laws;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FreeTerm {
    Gen(String),
    Join(Vec<FreeTerm>),
    Meet(Vec<FreeTerm>),
}

impl FreeTerm {
    pub fn gen(name: &str) -> FreeTerm {
        FreeTerm::Gen(name.to_string())
    }

    pub fn join2(a: FreeTerm, b: FreeTerm) -> FreeTerm {
        FreeTerm::Join(vec![a, b])
    }

    pub fn meet2(a: FreeTerm, b: FreeTerm) -> FreeTerm {
        FreeTerm::Meet(vec![a, b])
    }

    pub fn depth(&self) -> usize {
        match self {
            FreeTerm::Gen(_) => 0,
            FreeTerm::Join(v) | FreeTerm::Meet(v) => 1 + v.iter().map(|t| t.depth()).max().unwrap_or(0),
        }
    }

    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_generators(&self, out: &mut Vec<String>) {
        match self {
            FreeTerm::Gen(x) => out.push(x.clone()),
            FreeTerm::Join(v) | FreeTerm::Meet(v) => v.iter().for_each(|t| t.collect_generators(out)),
        }
    }

    pub fn parse(text: &str) -> Result<FreeTerm> {
        let mut p = Parser { text, pos: 0 };
        let t = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(Error::parse_at(text, p.pos, "unexpected trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for FreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeTerm::Gen(x) => write!(f, "{x}"),
            FreeTerm::Join(v) => {
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            FreeTerm::Meet(v) => {
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    match t {
                        FreeTerm::Join(_) => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expr(&mut self) -> Result<FreeTerm> {
        let mut args = vec![self.term()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            args.push(self.term()?);
        }
        Ok(if args.len() == 1 { args.pop().expect("one") } else { FreeTerm::Join(args) })
    }

    fn term(&mut self) -> Result<FreeTerm> {
        let mut args = vec![self.factor()?];
        while self.peek() == Some('&') {
            self.pos += 1;
            args.push(self.factor()?);
        }
        Ok(if args.len() == 1 { args.pop().expect("one") } else { FreeTerm::Meet(args) })
    }

    fn factor(&mut self) -> Result<FreeTerm> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse_at(self.text, self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.text[self.pos..].chars().next() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        self.pos += c.len_utf8();
                    } else {
                        break;
                    }
                }
                Ok(FreeTerm::Gen(self.text[start..self.pos].to_string()))
            }
            Some(c) => Err(Error::parse_at(self.text, self.pos, format!("unexpected `{c}`"))),
            None => Err(Error::parse_at(self.text, self.pos, "unexpected end of term")),
        }
    }
}

type Id = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Node {
    Gen(String),
    Join(Vec<Id>),
    Meet(Vec<Id>),
}

#[derive(Default)]
struct Store {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    encoding: Vec<String>,
    leq: HashMap<(Id, Id), bool>,
    canon: HashMap<Id, Id>,
}

/// Total order key: generators by name, then meets, then joins, then length-lex encoding.
fn kind_rank(n: &Node) -> u8 {
    match n {
        Node::Gen(_) => 0,
        Node::Meet(_) => 1,
        Node::Join(_) => 2,
    }
}

impl Store {
    fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let enc = match &node {
            Node::Gen(x) => x.clone(),
            Node::Join(v) => format!(
                "J({})",
                v.iter().map(|&i| self.encoding[i as usize].as_str()).collect::<Vec<_>>().join(",")
            ),
            Node::Meet(v) => format!(
                "M({})",
                v.iter().map(|&i| self.encoding[i as usize].as_str()).collect::<Vec<_>>().join(",")
            ),
        };
        let id = self.nodes.len() as Id;
        self.nodes.push(node.clone());
        self.encoding.push(enc);
        self.index.insert(node, id);
        id
    }

    fn add_term(&mut self, t: &FreeTerm) -> Id {
        let node = match t {
            FreeTerm::Gen(x) => Node::Gen(x.clone()),
            FreeTerm::Join(v) => Node::Join(v.iter().map(|s| self.add_term(s)).collect()),
            FreeTerm::Meet(v) => Node::Meet(v.iter().map(|s| self.add_term(s)).collect()),
        };
        self.intern(node)
    }

    fn to_term(&self, id: Id) -> FreeTerm {
        match &self.nodes[id as usize] {
            Node::Gen(x) => FreeTerm::Gen(x.clone()),
            Node::Join(v) => FreeTerm::Join(v.iter().map(|&i| self.to_term(i)).collect()),
            Node::Meet(v) => FreeTerm::Meet(v.iter().map(|&i| self.to_term(i)).collect()),
        }
    }

    fn order_key(&self, id: Id) -> (u8, &str, usize, &str) {
        let node = &self.nodes[id as usize];
        let enc = self.encoding[id as usize].as_str();
        match node {
            Node::Gen(x) => (0, x.as_str(), 0, ""),
            _ => (kind_rank(node), "", enc.len(), enc),
        }
    }

    fn leq(&mut self, s: Id, t: Id) -> bool {
        if s == t {
            return true;
        }
        if let Some(&r) = self.leq.get(&(s, t)) {
            return r;
        }
        let sn = self.nodes[s as usize].clone();
        let tn = self.nodes[t as usize].clone();
        let r = match (&sn, &tn) {
            (Node::Join(ss), _) => ss.iter().all(|&a| self.leq(a, t)),
            (_, Node::Meet(ts)) => ts.iter().all(|&b| self.leq(s, b)),
            (Node::Gen(x), Node::Gen(y)) => x == y,
            (Node::Gen(_), Node::Join(ts)) => ts.iter().any(|&b| self.leq(s, b)),
            (Node::Meet(ss), Node::Gen(_)) => ss.iter().any(|&a| self.leq(a, t)),
            (Node::Meet(ss), Node::Join(ts)) => {
                ss.iter().any(|&a| self.leq(a, t)) || ts.iter().any(|&b| self.leq(s, b))
            }
        };
        self.leq.insert((s, t), r);
        r
    }

    fn sort_args(&self, v: &mut [Id]) {
        v.sort_by(|&a, &b| self.order_key(a).cmp(&self.order_key(b)));
    }

    /// Builds the canonical join (or meet) of canonical arguments.
    fn combine(&mut self, args: Vec<Id>, is_join: bool) -> Id {
        let mut flat: Vec<Id> = Vec::new();
        for a in args {
            match (&self.nodes[a as usize], is_join) {
                (Node::Join(v), true) | (Node::Meet(v), false) => flat.extend(v.iter().copied()),
                _ => flat.push(a),
            }
        }
        loop {
            flat.sort_unstable();
            flat.dedup();
            let mut keep: Vec<Id> = Vec::new();
            for (i, &a) in flat.iter().enumerate() {
                let dominated = flat.iter().enumerate().any(|(j, &b)| {
                    i != j && if is_join { self.leq(a, b) } else { self.leq(b, a) }
                });
                if !dominated {
                    keep.push(a);
                }
            }
            if keep.len() == 1 {
                return keep[0];
            }
            self.sort_args(&mut keep);
            let whole = self.intern(if is_join { Node::Join(keep.clone()) } else { Node::Meet(keep.clone()) });
            let mut changed = false;
            for slot in keep.iter_mut() {
                let inner = match (&self.nodes[*slot as usize], is_join) {
                    (Node::Meet(v), true) | (Node::Join(v), false) => v.clone(),
                    _ => continue,
                };
                let hit = inner.into_iter().find(|&c| {
                    if is_join { self.leq(c, whole) } else { self.leq(whole, c) }
                });
                if let Some(c) = hit {
                    *slot = c;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return whole;
            }
            let mut next = Vec::new();
            for a in keep {
                match (&self.nodes[a as usize], is_join) {
                    (Node::Join(v), true) | (Node::Meet(v), false) => next.extend(v.iter().copied()),
                    _ => next.push(a),
                }
            }
            flat = next;
        }
    }

    fn canonical(&mut self, id: Id) -> Id {
        if let Some(&c) = self.canon.get(&id) {
            return c;
        }
        let c = match self.nodes[id as usize].clone() {
            Node::Gen(_) => id,
            Node::Join(v) => {
                let args = v.into_iter().map(|a| self.canonical(a)).collect();
                self.combine(args, true)
            }
            Node::Meet(v) => {
                let args = v.into_iter().map(|a| self.canonical(a)).collect();
                self.combine(args, false)
            }
        };
        self.canon.insert(id, c);
        self.canon.insert(c, c);
        c
    }
}

static STORE: LazyLock<RwLock<Store>> = LazyLock::new(|| RwLock::new(Store::default()));

fn with_store<T>(f: impl FnOnce(&mut Store) -> T) -> T {
    let mut guard = STORE.write().unwrap_or_else(|e| e.into_inner());
    f(&mut guard)
}

/// Decides `s <= t` in the free lattice.
pub fn leq(s: &FreeTerm, t: &FreeTerm) -> bool {
    with_store(|st| {
        let (a, b) = (st.add_term(s), st.add_term(t));
        st.leq(a, b)
    })
}

pub fn term_equal(s: &FreeTerm, t: &FreeTerm) -> bool {
    with_store(|st| {
        let (a, b) = (st.add_term(s), st.add_term(t));
        st.leq(a, b) && st.leq(b, a)
    })
}

/// The unique shortest representative: flattened, antichain arguments, reduced and sorted.
pub fn canonicalize(t: &FreeTerm) -> FreeTerm {
    with_store(|st| {
        let id = st.add_term(t);
        let c = st.canonical(id);
        st.to_term(c)
    })
}

/// Whether a term is already in canonical form.
pub fn is_canonical(t: &FreeTerm) -> bool {
    canonicalize(t) == *t
}

pub fn evaluate(t: &FreeTerm, l: &FiniteLattice, assignment: &HashMap<String, Elem>) -> Result<Elem> {
    Ok(match t {
        FreeTerm::Gen(x) => {
            let e = *assignment.get(x).ok_or_else(|| Error::UnassignedGenerator(x.clone()))?;
            if e >= l.len() {
                return Err(Error::BadIndex(e));
            }
            e
        }
        FreeTerm::Join(v) => {
            let mut acc = evaluate(&v[0], l, assignment)?;
            for s in &v[1..] {
                acc = l.join(acc, evaluate(s, l, assignment)?);
            }
            acc
        }
        FreeTerm::Meet(v) => {
            let mut acc = evaluate(&v[0], l, assignment)?;
            for s in &v[1..] {
                acc = l.meet(acc, evaluate(s, l, assignment)?);
            }
            acc
        }
    })
}

fn verify_ids(st: &mut Store, l: &FiniteLattice, ids: &[Id]) -> bool {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            if st.leq(ids[a], ids[b]) != l.leq(a, b) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let j = st.combine(vec![ids[a], ids[b]], true);
            let m = st.combine(vec![ids[a], ids[b]], false);
            let (jj, mm) = (ids[l.join(a, b)], ids[l.meet(a, b)]);
            if !(st.leq(j, jj) && st.leq(jj, j) && st.leq(m, mm) && st.leq(mm, m)) {
                return false;
            }
        }
    }
    true
}

/// Whether `terms[a]` for each element `a` gives a lattice embedding into the free lattice.
pub fn verify_free_embedding(l: &FiniteLattice, terms: &[FreeTerm]) -> bool {
    if terms.len() != l.len() {
        return false;
    }
    with_store(|st| {
        let ids: Vec<Id> = terms
            .iter()
            .map(|t| {
                let id = st.add_term(t);
                st.canonical(id)
            })
            .collect();
        verify_ids(st, l, &ids)
    })
}

#[derive(Clone, Copy, Debug)]
pub struct FreeSearchLimits {
    pub generators: usize,
    pub depth: usize,
    pub pool_cap: usize,
    pub budget: u64,
}

impl Default for FreeSearchLimits {
    fn default() -> Self {
        FreeSearchLimits {
            generators: 3,
            depth: 4,
            pool_cap: 400,
            budget: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeEmbeddingSearch {
    Found(Vec<FreeTerm>),
    /// The lattice fails semidistributivity or Whitman's condition, so no embedding exists.
    Impossible(String),
    /// Nothing found within the limits; no conclusion is drawn.
    Inconclusive,
}

pub fn generator_names(k: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
    (0..k)
        .map(|i| NAMES.get(i).map_or_else(|| format!("g{i}"), |s| s.to_string()))
        .collect()
}

/// Canonical terms over `k` generators, built by pairwise joins and meets up to `depth`,
/// shortest first, truncated to `cap` terms.
fn term_pool(st: &mut Store, k: usize, depth: usize, cap: usize) -> Vec<Id> {
    let mut pool: Vec<Id> = generator_names(k).into_iter().map(|g| st.intern(Node::Gen(g))).collect();
    for _ in 0..depth {
        let mut next = pool.clone();
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                next.push(st.combine(vec![pool[i], pool[j]], true));
                next.push(st.combine(vec![pool[i], pool[j]], false));
            }
        }
        next.sort_by(|&a, &b| st.order_key(a).cmp(&st.order_key(b)));
        next.dedup();
        next.truncate(cap);
        if next == pool {
            break;
        }
        pool = next;
    }
    pool
}

/// A small generating set, with a construction `(x, y, is_join)` for every other element.
/// How to rebuild an element from two earlier ones: `(a, b, is_join)`.
type Recipe = Option<(Elem, Elem, bool)>;

fn generation_plan(l: &FiniteLattice) -> (Vec<Elem>, Vec<Recipe>) {
    let n = l.len();
    let mut gens: Vec<Elem> = Vec::new();
    let mut recipe: Vec<Recipe> = vec![None; n];
    let mut have = vec![false; n];
    let mut members: Vec<Elem> = Vec::new();
    let irreducible = |a: Elem| !laws::is_join_reducible(l, a) && !laws::is_meet_reducible(l, a);
    let mut by_priority: Vec<Elem> = (0..n).collect();
    by_priority.sort_by_key(|&a| (!irreducible(a), l.down_set(a).len(), a));
    for &g in &by_priority {
        if have[g] {
            continue;
        }
        gens.push(g);
        have[g] = true;
        members.push(g);
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for j in 0..=i {
                let y = members[j];
                for (z, is_join) in [(l.join(x, y), true), (l.meet(x, y), false)] {
                    if !have[z] {
                        have[z] = true;
                        recipe[z] = Some((x, y, is_join));
                        members.push(z);
                    }
                }
            }
            i += 1;
        }
    }
    (gens, recipe)
}

struct FreeSearch<'a> {
    l: &'a FiniteLattice,
    gens: Vec<Elem>,
    recipe: Vec<Recipe>,
    pool: Vec<Id>,
    nodes: u64,
    budget: u64,
}

impl FreeSearch<'_> {
    /// Images of everything generated by the assigned generators, if consistent so far.
    fn images(&self, st: &mut Store, assigned: &[Id]) -> Option<Vec<Option<Id>>> {
        let l = self.l;
        let mut img: Vec<Option<Id>> = vec![None; l.len()];
        for (k, &g) in self.gens[..assigned.len()].iter().enumerate() {
            img[g] = Some(assigned[k]);
        }
        let seeds: Vec<Elem> = self.gens[..assigned.len()].to_vec();
        let closure = l.generated_sublattice(&seeds).ok()?;
        let mut changed = true;
        while changed {
            changed = false;
            for z in closure.iter() {
                if img[z].is_some() {
                    continue;
                }
                if let Some((x, y, is_join)) = self.recipe[z] {
                    if let (Some(a), Some(b)) = (img[x], img[y]) {
                        img[z] = Some(st.combine(vec![a, b], is_join));
                        changed = true;
                    }
                }
            }
        }
        let defined: Vec<Elem> = closure.iter().collect();
        for &a in &defined {
            let ia = img[a]?;
            for &b in &defined {
                let ib = img[b]?;
                if st.leq(ia, ib) != l.leq(a, b) {
                    return None;
                }
                if a < b {
                    let j = st.combine(vec![ia, ib], true);
                    let m = st.combine(vec![ia, ib], false);
                    if Some(j) != img[l.join(a, b)] || Some(m) != img[l.meet(a, b)] {
                        return None;
                    }
                }
            }
        }
        Some(img)
    }

    fn descend(&mut self, st: &mut Store, assigned: &mut Vec<Id>) -> Result<Option<Vec<Id>>> {
        if assigned.len() == self.gens.len() {
            let img = self.images(st, assigned).expect("checked on last assignment");
            return Ok(Some(img.into_iter().map(|x| x.expect("generated")).collect()));
        }
        for i in 0..self.pool.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            assigned.push(self.pool[i]);
            if self.images(st, assigned).is_some() {
                if let Some(found) = self.descend(st, assigned)? {
                    return Ok(Some(found));
                }
            }
            assigned.pop();
        }
        Ok(None)
    }
}

/// Searches for terms over a few generators that embed `l` into the free lattice.
pub fn find_free_embedding(l: &FiniteLattice, limits: FreeSearchLimits) -> Result<FreeEmbeddingSearch> {
    if !laws::whitman(l) {
        return Ok(FreeEmbeddingSearch::Impossible("fails Whitman's condition".into()));
    }
    if !laws::is_semidistributive(l) {
        return Ok(FreeEmbeddingSearch::Impossible("not semidistributive".into()));
    }
    let found = with_store(|st| -> Result<Option<Vec<FreeTerm>>> {
        let pool = term_pool(st, limits.generators, limits.depth, limits.pool_cap);
        let (gens, recipe) = generation_plan(l);
        let mut s = FreeSearch {
            l,
            gens,
            recipe,
            pool,
            nodes: 0,
            budget: limits.budget,
        };
        let found = s.descend(st, &mut Vec::new())?;
        Ok(found.map(|ids| ids.into_iter().map(|i| st.to_term(i)).collect()))
    });
    match found {
        Ok(Some(terms)) => {
            debug_assert!(verify_free_embedding(l, &terms));
            Ok(FreeEmbeddingSearch::Found(terms))
        }
        Ok(None) => Ok(FreeEmbeddingSearch::Inconclusive),
        Err(Error::SearchBudgetExceeded(_)) => Ok(FreeEmbeddingSearch::Inconclusive),
        Err(e) => Err(e),
    }
}
