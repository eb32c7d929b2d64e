//! Group elements as words over a commutation graph: geodesic reduction,
//! the word problem, cyclic reduction, alphabets, blocks and roots.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::pcgraph::{link, noncommutation_components, CommutationGraph, VertexSet};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// Two letters depend on each other iff they share a generator or their
/// generators do not commute.
#[inline]
pub fn dependent(g: &CommutationGraph, a: Letter, b: Letter) -> bool {
    a.gen == b.gen || !g.commute(a.gen, b.gen)
}

/// ShortLex key: generator name order, positive before negative.
#[inline]
pub fn letter_key(g: &CommutationGraph, l: Letter) -> (usize, bool) {
    (g.rank(l.gen), l.inv)
}

pub fn invert(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Reduces to a geodesic by cancelling `x … x⁻¹` pairs whose middle commutes
/// with `x`. The letter order of survivors is kept.
pub fn geodesic(g: &CommutationGraph, letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    'next: for &x in letters {
        for j in (0..out.len()).rev() {
            let y = out[j];
            if y == x.inverse() {
                out.remove(j);
                continue 'next;
            }
            if dependent(g, x, y) {
                break;
            }
        }
        out.push(x);
    }
    out
}

pub fn is_geodesic(g: &CommutationGraph, letters: &[Letter]) -> bool {
    geodesic(g, letters).len() == letters.len()
}

/// Lexicographically least linearization of the trace of `letters`.
pub fn shortlex_order(g: &CommutationGraph, letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for j in 0..n {
            if used[j] {
                continue;
            }
            let blocked = (0..j).any(|i| !used[i] && dependent(g, letters[i], letters[j]));
            if blocked {
                continue;
            }
            if best.is_none_or(|b| letter_key(g, letters[j]) < letter_key(g, letters[b])) {
                best = Some(j);
            }
        }
        let b = best.expect("a trace always has a minimal letter");
        used[b] = true;
        out.push(letters[b]);
    }
    out
}

/// Canonical form: ShortLex-least shuffle of a geodesic.
pub fn canonical(g: &CommutationGraph, letters: &[Letter]) -> Vec<Letter> {
    shortlex_order(g, &geodesic(g, letters))
}

/// An element of the partially commutative group of `graph`.
#[derive(Clone)]
pub struct GroupWord {
    graph: Arc<CommutationGraph>,
    letters: Vec<Letter>,
    canon: OnceLock<Vec<Letter>>,
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({})", self)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.graph, &self.letters))
    }
}

/// Text form: space separated, inverses marked with a trailing `'`, `1` for empty.
pub fn format_letters(g: &CommutationGraph, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters
        .iter()
        .map(|l| if l.inv { format!("{}'", g.name(l.gen)) } else { g.name(l.gen).to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_letters(g: &CommutationGraph, text: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" && g.index_of("1").is_err() {
            continue;
        }
        let (name, inv) = match tok.strip_suffix('\'') {
            Some(n) => (n, true),
            None => (tok, false),
        };
        out.push(Letter { gen: g.index_of(name)?, inv });
    }
    Ok(out)
}

impl PartialEq for GroupWord {
    /// Equality as group elements.
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.canonical() == other.canonical()
    }
}

impl Eq for GroupWord {}

fn same_graph(a: &Arc<CommutationGraph>, b: &Arc<CommutationGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupWord {
    pub fn new(graph: Arc<CommutationGraph>, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.gen >= graph.len()) {
            return Err(Error::VertexOutOfRange(l.gen));
        }
        Ok(GroupWord { graph, letters, canon: OnceLock::new() })
    }

    pub fn identity(graph: Arc<CommutationGraph>) -> Self {
        GroupWord { graph, letters: Vec::new(), canon: OnceLock::new() }
    }

    pub fn generator(graph: Arc<CommutationGraph>, gen: usize) -> Result<Self> {
        Self::new(graph, vec![Letter::pos(gen)])
    }

    pub fn parse(graph: Arc<CommutationGraph>, text: &str) -> Result<Self> {
        let letters = parse_letters(&graph, text)?;
        Ok(GroupWord { graph, letters, canon: OnceLock::new() })
    }

    pub fn graph(&self) -> &Arc<CommutationGraph> {
        &self.graph
    }

    /// The letters as given, not necessarily reduced.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn canonical(&self) -> &[Letter] {
        self.canon.get_or_init(|| canonical(&self.graph, &self.letters))
    }

    /// Geodesic length.
    pub fn len(&self) -> usize {
        self.canonical().len()
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical().is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn is_geodesic(&self) -> bool {
        is_geodesic(&self.graph, &self.letters)
    }

    pub fn with_letters(&self, letters: Vec<Letter>) -> GroupWord {
        GroupWord { graph: self.graph.clone(), letters, canon: OnceLock::new() }
    }

    pub fn inverse(&self) -> GroupWord {
        self.with_letters(invert(&self.letters))
    }

    /// Concatenation (unreduced).
    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        let mut l = self.letters.clone();
        l.extend_from_slice(&other.letters);
        Ok(self.with_letters(l))
    }

    /// Product, reduced to canonical form.
    pub fn mul(&self, other: &GroupWord) -> Result<GroupWord> {
        Ok(reduce(&self.concat(other)?))
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        let mut l = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            l.extend_from_slice(&self.letters);
        }
        self.with_letters(l)
    }

    pub fn to_text(&self) -> String {
        format_letters(&self.graph, &self.letters)
    }
}

/// The canonical geodesic representative.
pub fn reduce(w: &GroupWord) -> GroupWord {
    let c = w.canonical().to_vec();
    let out = w.with_letters(c.clone());
    let _ = out.canon.set(c);
    out
}

pub fn equal(u: &GroupWord, v: &GroupWord) -> Result<bool> {
    if !same_graph(&u.graph, &v.graph) {
        return Err(Error::GraphMismatch);
    }
    Ok(u.canonical() == v.canonical())
}

fn initial_positions(g: &CommutationGraph, w: &[Letter]) -> Vec<usize> {
    (0..w.len()).filter(|&j| (0..j).all(|i| !dependent(g, w[i], w[j]))).collect()
}

fn terminal_positions(g: &CommutationGraph, w: &[Letter]) -> Vec<usize> {
    (0..w.len()).filter(|&j| (j + 1..w.len()).all(|i| !dependent(g, w[i], w[j]))).collect()
}

/// Returns `(core, conjugator)` with `w = conjugator · core · conjugator⁻¹`
/// and `core` cyclically reduced.
pub fn cyclic_reduce(w: &GroupWord) -> (GroupWord, GroupWord) {
    let g = &w.graph;
    let mut cur = w.canonical().to_vec();
    let mut conj = Vec::new();
    loop {
        let init = initial_positions(g, &cur);
        let term = terminal_positions(g, &cur);
        let hit = init.iter().find_map(|&i| term.iter().find(|&&j| cur[j] == cur[i].inverse()).map(|&j| (i, j)));
        match hit {
            Some((i, j)) => {
                conj.push(cur[i]);
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                cur.remove(b);
                cur.remove(a);
            }
            None => break,
        }
    }
    (reduce(&w.with_letters(cur)), reduce(&w.with_letters(conj)))
}

pub fn is_cyclically_reduced(w: &GroupWord) -> bool {
    let w2 = w.pow(2);
    w2.len() == 2 * w.len()
}

/// `az(w)`: generators occurring in a geodesic of `w`.
pub fn alphabet(w: &GroupWord) -> VertexSet {
    w.canonical().iter().map(|l| l.gen).collect()
}

/// `𝔸(w)`: generators outside `az(w)` that commute with `w`.
pub fn centralizer_alphabet(w: &GroupWord) -> VertexSet {
    let az = alphabet(w);
    (0..w.graph.len())
        .filter(|x| !az.contains(x))
        .filter(|&x| {
            let xw = w.with_letters(std::iter::once(Letter::pos(x)).chain(w.letters.iter().copied()).collect());
            let wx = w.with_letters(w.letters.iter().copied().chain(std::iter::once(Letter::pos(x))).collect());
            xw.canonical() == wx.canonical()
        })
        .collect()
}

pub fn disjointly_commutes(u: &GroupWord, v: &GroupWord) -> Result<bool> {
    if !same_graph(&u.graph, &v.graph) {
        return Err(Error::GraphMismatch);
    }
    if !alphabet(u).is_disjoint(&alphabet(v)) {
        return Ok(false);
    }
    equal(&u.concat(v)?, &v.concat(u)?)
}

/// Splitting of an element into pairwise disjointly commuting blocks.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<GroupWord>,
    /// Alphabet of each block; together a partition of `az(w)`.
    pub partition: Vec<VertexSet>,
}

pub fn block_decomposition(w: &GroupWord) -> BlockDecomposition {
    let g = &w.graph;
    let mut parts = noncommutation_components(g, &alphabet(w));
    parts.sort_by_key(|p| p.iter().map(|&v| g.rank(v)).min());
    let blocks = parts
        .iter()
        .map(|p| reduce(&w.with_letters(w.canonical().iter().copied().filter(|l| p.contains(&l.gen)).collect())))
        .collect();
    BlockDecomposition { blocks, partition: parts }
}

pub fn is_block(w: &GroupWord) -> bool {
    !w.is_trivial() && noncommutation_components(&w.graph, &alphabet(w)).len() == 1
}

/// True iff `w` is conjugate to a cyclically reduced block.
pub fn is_irreducible(w: &GroupWord) -> Result<bool> {
    if w.is_trivial() {
        return Err(Error::TrivialWord);
    }
    Ok(is_block(&cyclic_reduce(w).0))
}

/// Calls `f` on every order ideal of size `k` of the trace of `w` (as a
/// sorted list of positions). Stops early when `f` returns true.
fn for_each_ideal(g: &CommutationGraph, w: &[Letter], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let n = w.len();
    let preds: Vec<Vec<usize>> = (0..n).map(|j| (0..j).filter(|&i| dependent(g, w[i], w[j])).collect()).collect();
    let mut inside = vec![false; n];
    let mut chosen = Vec::with_capacity(k);
    fn rec(
        start: usize,
        k: usize,
        preds: &[Vec<usize>],
        inside: &mut [bool],
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        let n = preds.len();
        for j in start..n {
            if n - j < k - chosen.len() {
                break;
            }
            if preds[j].iter().all(|&i| inside[i]) {
                inside[j] = true;
                chosen.push(j);
                if rec(j + 1, k, preds, inside, chosen, f) {
                    return true;
                }
                chosen.pop();
                inside[j] = false;
            }
        }
        false
    }
    rec(0, k, &preds, &mut inside, &mut chosen, f)
}

/// Least root: `w = root^exponent` with the exponent maximal.
pub fn least_root(w: &GroupWord) -> Result<(GroupWord, usize)> {
    if w.is_trivial() {
        return Err(Error::TrivialWord);
    }
    let g = w.graph.clone();
    let (core, conj) = cyclic_reduce(w);
    let z = core.canonical().to_vec();
    let n = z.len();
    let mut counts = std::collections::HashMap::new();
    for l in &z {
        *counts.entry(*l).or_insert(0usize) += 1;
    }
    for m in (1..=n).rev() {
        if n % m != 0 || counts.values().any(|c| c % m != 0) {
            continue;
        }
        let mut found: Option<Vec<Letter>> = None;
        for_each_ideal(&g, &z, n / m, &mut |ideal| {
            let u: Vec<Letter> = ideal.iter().map(|&i| z[i]).collect();
            let mut p = Vec::with_capacity(n);
            for _ in 0..m {
                p.extend_from_slice(&u);
            }
            if canonical(&g, &p) == z {
                found = Some(u);
                true
            } else {
                false
            }
        });
        if let Some(u) = found {
            let mut r = conj.letters().to_vec();
            r.extend(u);
            r.extend(invert(conj.letters()));
            return Ok((reduce(&w.with_letters(r)), m));
        }
    }
    unreachable!("the core is its own first power")
}

/// `link(az(w))`, which equals `𝔸(w)`.
pub fn link_of_alphabet(w: &GroupWord) -> VertexSet {
    link(&w.graph, &alphabet(w), None).expect("alphabet lies in the graph")
}

/// Uniform random word (not reduced) of the given length.
pub fn random_letters<R: Rng>(g: &CommutationGraph, len: usize, rng: &mut R) -> Vec<Letter> {
    (0..len).map(|_| Letter { gen: rng.gen_range(0..g.len()), inv: rng.gen_bool(0.5) }).collect()
}

/// Random geodesic of exactly the given length (retries a reduced random walk).
pub fn random_geodesic<R: Rng>(g: &CommutationGraph, len: usize, rng: &mut R) -> Vec<Letter> {
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    while w.len() < len {
        let l = Letter { gen: rng.gen_range(0..g.len()), inv: rng.gen_bool(0.5) };
        let mut next = w.clone();
        next.push(l);
        if is_geodesic(g, &next) {
            w = next;
        }
    }
    w
}
