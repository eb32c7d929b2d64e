//! Constrained generalised equations: solutions, tribes, the entire
//! transformation, and the quadratic presentation of a one-section equation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcgraph::{link, CommutationGraph, EdgeTag, VertexSet};
use crate::present::{Presentation, SymWord};
use crate::words::{alphabet, disjointly_commutes, invert, random_geodesic, reduce, GroupWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Base {
    pub name: String,
    pub alpha: usize,
    pub beta: usize,
    pub eps: i8,
    pub dual: String,
}

impl Base {
    pub fn new(name: &str, alpha: usize, beta: usize, eps: i8, dual: &str) -> Self {
        Base { name: name.into(), alpha, beta, eps, dual: dual.into() }
    }

    pub fn len(&self) -> usize {
        self.beta - self.alpha
    }

    pub fn is_empty(&self) -> bool {
        self.beta == self.alpha
    }

    pub fn covers(&self, item: usize) -> bool {
        self.alpha <= item && item < self.beta
    }
}

/// Item → label `S`, standing for the parabolic subgroup on `link(S)`.
pub type TribeAssignment = BTreeMap<usize, VertexSet>;

/// Values of the items `h₁ … h_ρ`, in order.
pub type Solution = Vec<GroupWord>;

pub fn item_name(i: usize) -> String {
    format!("h{i}")
}

/// Items are `1..=rho`, boundaries `1..=rho+1`; items below `rho_a` are active.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralisedEquation {
    pub rho: usize,
    pub rho_a: usize,
    pub bases: Vec<Base>,
    /// Unordered pairs `(i, j)` with `i < j`.
    pub constraints: BTreeSet<(usize, usize)>,
    pub tribes: TribeAssignment,
    pub graph: Option<Arc<CommutationGraph>>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn letter_word(name: &str, eps: i8) -> SymWord {
    SymWord::letter(name, eps < 0)
}

fn product(parts: &[GroupWord], g: &Arc<CommutationGraph>) -> GroupWord {
    let mut l: Vec<Letter> = Vec::new();
    for p in parts {
        l.extend_from_slice(p.letters());
    }
    GroupWord::new(g.clone(), l).expect("parts share the graph")
}

impl GeneralisedEquation {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(rho: usize, rho_a: usize, bases: Vec<Base>, constraints: I) -> Result<Self> {
        let eq = GeneralisedEquation {
            rho,
            rho_a,
            bases,
            constraints: constraints.into_iter().map(|(i, j)| ordered(i, j)).collect(),
            tribes: TribeAssignment::new(),
            graph: None,
        };
        eq.validate()?;
        Ok(eq)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rho_a == 0 || self.rho_a > self.rho + 1 {
            return Err(Error::Shape(format!("rho_A = {} outside 1..={}", self.rho_a, self.rho + 1)));
        }
        let mut names = BTreeSet::new();
        for b in &self.bases {
            if !names.insert(b.name.as_str()) {
                return Err(Error::DuplicateVertex(b.name.clone()));
            }
            if b.alpha < 1 || b.alpha >= b.beta || b.beta > self.rho + 1 {
                return Err(Error::Shape(format!("base {} has interval [{},{})", b.name, b.alpha, b.beta)));
            }
            if b.eps != 1 && b.eps != -1 {
                return Err(Error::Shape(format!("base {} has eps {}", b.name, b.eps)));
            }
        }
        for b in &self.bases {
            let d = self.base(&b.dual)?;
            if d.name == b.name || d.dual != b.name {
                return Err(Error::Shape(format!("dual of {} is not an involution", b.name)));
            }
        }
        for &(i, j) in &self.constraints {
            if i == j || i < 1 || j > self.rho {
                return Err(Error::Shape(format!("constraint ({i},{j}) is not a pair of distinct items")));
            }
        }
        Ok(())
    }

    pub fn base(&self, name: &str) -> Result<&Base> {
        self.bases.iter().find(|b| b.name == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    fn base_index(&self, name: &str) -> Result<usize> {
        self.bases.iter().position(|b| b.name == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn constrained(&self, i: usize, j: usize) -> bool {
        self.constraints.contains(&ordered(i, j))
    }

    /// Dual pairs as base indices, each once, in list order of the first member.
    pub fn dual_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, b) in self.bases.iter().enumerate() {
            let j = self.base_index(&b.dual).expect("validated");
            if i < j {
                out.push((i, j));
            }
        }
        out
    }

    pub fn is_active_base(&self, b: &Base) -> bool {
        b.beta <= self.rho_a
    }

    /// `h_α ⋯ h_{β−1}`.
    pub fn base_word(&self, b: &Base) -> SymWord {
        SymWord((b.alpha..b.beta).map(|i| SymWord::gen(&item_name(i)).0[0].clone()).collect())
    }

    /// One relation per dual pair, then one commutator per constrained pair.
    pub fn relations_of(&self) -> Presentation {
        let mut p = Presentation::new((1..=self.rho).map(item_name).collect());
        for (i, j) in self.dual_pairs() {
            let (a, b) = (&self.bases[i], &self.bases[j]);
            p.relations.push(self.base_word(a).pow(a.eps as i64).mul(&self.base_word(b).pow(-b.eps as i64)));
        }
        for &(i, j) in &self.constraints {
            p.relations.push(SymWord::commutator(&SymWord::gen(&item_name(i)), &SymWord::gen(&item_name(j))));
        }
        p
    }

    /// Side of a base under `h`: the concatenation, inverted when `ε = −1`.
    fn side(&self, b: &Base, h: &[GroupWord], g: &Arc<CommutationGraph>) -> GroupWord {
        let w = product(&h[b.alpha - 1..b.beta - 1], g);
        if b.eps < 0 {
            w.inverse()
        } else {
            w
        }
    }

    /// Graphical check on canonical forms.
    pub fn check_solution(&self, h: &[GroupWord]) -> Result<bool> {
        if h.len() != self.rho {
            return Err(Error::Invalid(format!("solution has {} items, equation has {}", h.len(), self.rho)));
        }
        let Some(first) = h.first() else { return Ok(true) };
        let g = first.graph().clone();
        if h.iter().any(|w| **w.graph() != *g) || self.graph.as_ref().is_some_and(|eg| **eg != *g) {
            return Err(Error::GraphMismatch);
        }
        if h.iter().any(|w| w.is_trivial() || !w.is_geodesic()) {
            return Ok(false);
        }
        for (i, j) in self.dual_pairs() {
            let (a, b) = (&self.bases[i], &self.bases[j]);
            let (sa, sb) = (self.side(a, h, &g), self.side(b, h, &g));
            if !sa.is_geodesic() || !sb.is_geodesic() || sa.canonical() != sb.canonical() {
                return Ok(false);
            }
        }
        for &(i, j) in &self.constraints {
            if !disjointly_commutes(&h[i - 1], &h[j - 1])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn tribe_of<'a>(&self, t: &'a TribeAssignment, i: usize) -> Result<&'a VertexSet> {
        t.get(&i).ok_or_else(|| Error::Precondition(format!("item {i} has no tribe")))
    }

    /// Closes the constraints under dominance: if `t(h_j)` dominates `t(h_i)`
    /// and `h_i` is constrained with `h_k`, so is `h_j`.
    pub fn complete_constraints(&self, g: &CommutationGraph, t: &TribeAssignment) -> Result<GeneralisedEquation> {
        let items: Vec<usize> = (1..=self.rho).collect();
        let mut links = BTreeMap::new();
        for &i in &items {
            links.insert(i, link(g, self.tribe_of(t, i)?, None)?);
        }
        let dom = |j: usize, i: usize| links[&j].is_superset(&links[&i]);
        let mut out = self.clone();
        loop {
            let mut added = Vec::new();
            for &(a, b) in &out.constraints {
                for (i, k) in [(a, b), (b, a)] {
                    for &j in &items {
                        if j != k && dom(j, i) && !out.constrained(j, k) {
                            added.push(ordered(j, k));
                        }
                    }
                }
            }
            if added.is_empty() {
                return Ok(out);
            }
            out.constraints.extend(added);
        }
    }

    /// Labels of active, non-fixed items that strictly dominate no other such label.
    pub fn minimal_tribes(&self, g: &CommutationGraph, t: &TribeAssignment, fixed: &BTreeSet<usize>) -> Result<Vec<VertexSet>> {
        let mut labels: Vec<VertexSet> = Vec::new();
        for i in (1..self.rho_a).filter(|i| !fixed.contains(i)) {
            let s = self.tribe_of(t, i)?.clone();
            if !labels.contains(&s) {
                labels.push(s);
            }
        }
        let links: Vec<VertexSet> = labels.iter().map(|s| link(g, s, None)).collect::<Result<_>>()?;
        let strictly = |a: usize, b: usize| links[a].is_superset(&links[b]) && links[a] != links[b];
        let mut out: Vec<VertexSet> =
            (0..labels.len()).filter(|&a| !(0..labels.len()).any(|b| strictly(a, b))).map(|a| labels[a].clone()).collect();
        out.sort();
        Ok(out)
    }

    fn active_bases(&self) -> Vec<&Base> {
        self.bases.iter().filter(|b| self.is_active_base(b)).collect()
    }

    /// One closed active section with no free boundaries, each boundary
    /// touched by exactly two bases.
    pub fn check_type12(&self) -> Result<()> {
        if self.rho_a < 2 {
            return Err(Error::Shape("empty active part".into()));
        }
        for b in &self.bases {
            if b.alpha < self.rho_a && b.beta > self.rho_a {
                return Err(Error::Shape(format!("base {} crosses the active boundary", b.name)));
            }
        }
        let act = self.active_bases();
        let starts = |p: usize| act.iter().filter(|b| b.alpha == p).count();
        let ends = |p: usize| act.iter().filter(|b| b.beta == p).count();
        if starts(1) != 2 || ends(self.rho_a) != 2 {
            return Err(Error::Shape("boundaries 1 and rho_A must each touch two bases".into()));
        }
        for p in 2..self.rho_a {
            if starts(p) != 1 || ends(p) != 1 {
                return Err(Error::Shape(format!("boundary {p} does not touch exactly two bases")));
            }
        }
        Ok(())
    }

    /// `ψ(h_i)` as a word in base names, for `i = 1..=ρ`.
    pub fn base_change_psi(&self) -> Result<Vec<SymWord>> {
        self.check_type12()?;
        let act = self.active_bases();
        let mut psi: Vec<SymWord> = Vec::with_capacity(self.rho);
        for k in 1..self.rho_a {
            let cover: Vec<&&Base> = act.iter().filter(|b| b.covers(k)).collect();
            if let Some(short) = cover.iter().find(|b| b.len() == 1) {
                psi.push(SymWord::gen(&short.name));
                continue;
            }
            let before: Vec<&&&Base> = cover.iter().filter(|b| b.alpha < k).collect();
            let [k1] = before.as_slice() else {
                return Err(Error::Shape(format!("item {k} is not covered by exactly one earlier long base")));
            };
            if k1.beta != k + 1 {
                return Err(Error::Shape(format!("base {} does not end after item {k}", k1.name)));
            }
            let mut w = SymWord::empty();
            for i in (k1.alpha..k).rev() {
                w = w.mul(&psi[i - 1].inverse());
            }
            psi.push(w.mul(&SymWord::gen(&k1.name)));
        }
        for k in self.rho_a..=self.rho {
            psi.push(SymWord::gen(&item_name(k)));
        }
        Ok(psi)
    }

    /// `ϱ`: base name ↦ `h_α ⋯ h_{β−1}`.
    pub fn rho_map(&self) -> BTreeMap<String, SymWord> {
        self.bases.iter().map(|b| (b.name.clone(), self.base_word(b))).collect()
    }

    fn chain(&self, start: &Base) -> Result<Vec<String>> {
        let act = self.active_bases();
        let mut out = vec![start.name.clone()];
        let mut cur = start;
        while cur.beta != self.rho_a {
            cur = act
                .iter()
                .find(|b| b.alpha == cur.beta)
                .ok_or_else(|| Error::Shape(format!("no base starts at boundary {}", cur.beta)))?;
            out.push(cur.name.clone());
        }
        Ok(out)
    }

    /// `(W₁, W₂, W₁W₂⁻¹)`. `W₁` chains from the shorter base at boundary 1,
    /// `W₂` from the carrier; both read base symbols without orientation.
    pub fn quadratic_word(&self) -> Result<(SymWord, SymWord, SymWord)> {
        self.check_type12()?;
        let mut first: Vec<&Base> = self.active_bases().into_iter().filter(|b| b.alpha == 1).collect();
        first.sort_by_key(|b| b.beta);
        let to_word = |names: Vec<String>| SymWord(names.iter().flat_map(|n| SymWord::gen(n).0).collect());
        let w1 = to_word(self.chain(first[0])?);
        let w2 = to_word(self.chain(first[1])?);
        let w = w1.mul(&w2.inverse());
        Ok((w1, w2, w))
    }

    fn item_kind(&self, i: usize) -> ItemKind {
        if i >= self.rho_a {
            return ItemKind::NonActive;
        }
        match self.active_bases().into_iter().find(|b| b.covers(i) && b.len() == 1) {
            Some(b) => ItemKind::Short(b.name.clone()),
            None => ItemKind::Long,
        }
    }

    /// Commutators forced by constraints, by the kinds of the two items.
    pub fn xi_set(&self) -> Result<Vec<SymWord>> {
        self.check_type12()?;
        let mut out: Vec<SymWord> = Vec::new();
        let mut push = |w: SymWord| {
            if !out.contains(&w) {
                out.push(w);
            }
        };
        let h = |i: usize| SymWord::gen(&item_name(i));
        for &(i, j) in &self.constraints {
            match (self.item_kind(i), self.item_kind(j)) {
                (ItemKind::Short(a), ItemKind::Short(b)) => push(SymWord::commutator(&SymWord::gen(&a), &SymWord::gen(&b))),
                (ItemKind::Short(a), ItemKind::NonActive) => push(SymWord::commutator(&SymWord::gen(&a), &h(j))),
                (ItemKind::NonActive, ItemKind::Short(a)) => push(SymWord::commutator(&SymWord::gen(&a), &h(i))),
                (ItemKind::Long, ItemKind::NonActive) | (ItemKind::NonActive, ItemKind::Long) => {
                    let k = if i >= self.rho_a { i } else { j };
                    for b in self.active_bases() {
                        push(SymWord::commutator(&SymWord::gen(&b.name), &h(k)));
                    }
                }
                (ItemKind::NonActive, ItemKind::NonActive) => push(SymWord::commutator(&h(i), &h(j))),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Generators: active bases and non-active items. Relations: `W`, dual
    /// identifications, coefficient identifications, non-active relations, `Ξ`.
    pub fn presentation_k(&self) -> Result<Presentation> {
        self.check_type12()?;
        let act = self.active_bases();
        let mut gens: Vec<String> = act.iter().map(|b| b.name.clone()).collect();
        gens.extend((self.rho_a..=self.rho).map(item_name));
        let mut p = Presentation::new(gens);
        p.push(self.quadratic_word()?.2);
        for (i, j) in self.dual_pairs() {
            let (a, b) = (&self.bases[i], &self.bases[j]);
            let (aa, ba) = (self.is_active_base(a), self.is_active_base(b));
            let side = |x: &Base, active: bool| if active { letter_word(&x.name, x.eps) } else { self.base_word(x).pow(x.eps as i64) };
            if aa || ba {
                let (x, y) = if aa { (a, b) } else { (b, a) };
                let ya = self.is_active_base(y);
                p.push(side(x, true).mul(&side(y, ya).inverse()));
            } else {
                p.push(side(a, false).mul(&side(b, false).inverse()));
            }
        }
        for r in self.xi_set()? {
            p.push(r);
        }
        Ok(p)
    }

    /// `ϱψ(h_i) = h_i` for every item, and `ψϱ(η)` is `η` or, for the one
    /// base solved out of `W`, the corresponding expression.
    pub fn check_round_trip(&self) -> Result<bool> {
        let psi = self.base_change_psi()?;
        let rho = self.rho_map();
        for (i, p) in psi.iter().enumerate() {
            let back = p.substitute(&|n| rho.get(n).cloned());
            if back != SymWord::gen(&item_name(i + 1)) {
                return Ok(false);
            }
        }
        let (_, _, w) = self.quadratic_word()?;
        let psi_of = |n: &str| -> Option<SymWord> { n.strip_prefix('h').and_then(|k| k.parse::<usize>().ok()).map(|k| psi[k - 1].clone()) };
        for b in self.active_bases() {
            let img = self.base_word(b).substitute(&psi_of);
            if img == SymWord::gen(&b.name) {
                continue;
            }
            let Some(pos) = w.0.iter().position(|s| s.name == b.name) else { return Ok(false) };
            let (x, y) = (SymWord(w.0[..pos].to_vec()), SymWord(w.0[pos + 1..].to_vec()));
            let solved = if w.0[pos].inv { y.mul(&x) } else { x.inverse().mul(&y.inverse()) };
            if img != solved {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ItemKind {
    Short(String),
    Long,
    NonActive,
}

/// Where the carrier is tied to its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiePlacement {
    /// Item-count correspondence between the carrier and its dual.
    Auto,
    /// An existing interior boundary of the dual.
    Boundary(usize),
    /// Split this item of the dual; the new boundary follows it.
    SplitItem(usize),
}

/// Result of one entire transformation.
#[derive(Clone, Debug)]
pub struct Step {
    pub equation: GeneralisedEquation,
    /// Image of each old item `h_i` as a word in the new items.
    pub item_map: Vec<SymWord>,
    pub carrier: String,
    pub transfer: String,
    pub tie: TiePlacement,
    pub solution: Option<Solution>,
}

impl GeneralisedEquation {
    fn carrier_and_transfer(&self) -> Result<(usize, usize)> {
        let at1: Vec<usize> = (0..self.bases.len()).filter(|&i| self.bases[i].alpha == 1).collect();
        let mu = *at1.iter().max_by_key(|&&i| (self.bases[i].beta, std::cmp::Reverse(i))).ok_or_else(|| Error::Precondition("no carrier base".into()))?;
        let others: Vec<usize> = at1.into_iter().filter(|&i| i != mu).collect();
        let [lam] = others.as_slice() else {
            return Err(Error::Precondition("need exactly one transfer base at boundary 1".into()));
        };
        if self.bases[*lam].beta != 2 || self.bases[mu].beta <= 2 {
            return Err(Error::Precondition("transfer base must be [1,2) and the carrier long".into()));
        }
        Ok((mu, *lam))
    }

    /// Splits item `l` in two; later items and boundaries move up by one.
    fn split_item(&self, l: usize) -> GeneralisedEquation {
        let up = |p: usize| if p > l { p + 1 } else { p };
        let mut out = self.clone();
        for b in &mut out.bases {
            b.alpha = up(b.alpha);
            b.beta = up(b.beta);
        }
        out.rho += 1;
        if l < self.rho_a {
            out.rho_a += 1;
        }
        let images = |i: usize| if i == l { vec![l, l + 1] } else { vec![up(i)] };
        out.constraints.clear();
        for &(i, j) in &self.constraints {
            for a in images(i) {
                for b in images(j) {
                    out.constraints.insert(ordered(a, b));
                }
            }
        }
        out.tribes.clear();
        for (&i, s) in &self.tribes {
            for a in images(i) {
                out.tribes.insert(a, s.clone());
            }
        }
        out
    }

    /// Ties boundary 2 of the carrier to its dual, transfers the base
    /// `[1,2)` onto the dual, cuts the carrier and deletes item 1.
    pub fn entire_transformation(&self, tie: TiePlacement) -> Result<Step> {
        self.entire_with(tie, None)
    }

    /// Entire transformation with the tie read off a solution; also returns
    /// the transported solution.
    pub fn entire_transformation_with_solution(&self, h: &[GroupWord]) -> Result<Step> {
        if !self.check_solution(h)? {
            return Err(Error::Precondition("not a solution".into()));
        }
        let (mu, _) = self.carrier_and_transfer()?;
        let dm = self.base(&self.bases[mu].dual)?;
        let sigma = self.bases[mu].eps * dm.eps;
        let g = h[0].graph().clone();
        let h1 = &h[0];
        let (a, b) = (dm.alpha, dm.beta);
        let mut choice: Option<(TiePlacement, Option<(GroupWord, GroupWord)>)> = None;
        if sigma > 0 {
            for p in a + 1..b {
                if product(&h[a - 1..p - 1], &g) == *h1 {
                    choice = Some((TiePlacement::Boundary(p), None));
                    break;
                }
            }
            if choice.is_none() {
                for l in a..b {
                    let x = product(&h[a - 1..l - 1], &g);
                    let p = reduce(&x.inverse().concat(h1)?);
                    let rest = reduce(&p.inverse().concat(&h[l - 1])?);
                    if !p.is_trivial() && !rest.is_trivial() && p.len() + rest.len() == h[l - 1].len() {
                        choice = Some((TiePlacement::SplitItem(l), Some((p, rest))));
                        break;
                    }
                }
            }
        } else {
            let target = h1.inverse();
            for p in (a + 1..b).rev() {
                if product(&h[p - 1..b - 1], &g) == target {
                    choice = Some((TiePlacement::Boundary(p), None));
                    break;
                }
            }
            if choice.is_none() {
                for l in (a..b).rev() {
                    let s = product(&h[l..b - 1], &g);
                    let q = reduce(&target.concat(&s.inverse())?);
                    let head = reduce(&h[l - 1].concat(&q.inverse())?);
                    if !q.is_trivial() && !head.is_trivial() && head.len() + q.len() == h[l - 1].len() {
                        choice = Some((TiePlacement::SplitItem(l), Some((head, q))));
                        break;
                    }
                }
            }
        }
        let (tie, pieces) = choice.ok_or_else(|| Error::Precondition("no tie position is compatible with the solution".into()))?;
        let mut hs: Vec<GroupWord> = h.to_vec();
        if let (TiePlacement::SplitItem(l), Some((x, y))) = (tie, pieces) {
            hs.splice(l - 1..l, [x, y]);
        }
        self.entire_with(tie, Some(hs))
    }

    fn entire_with(&self, tie: TiePlacement, split_solution: Option<Solution>) -> Result<Step> {
        let (mu_i, lam_i) = self.carrier_and_transfer()?;
        let mu_name = self.bases[mu_i].name.clone();
        let lam_name = self.bases[lam_i].name.clone();
        let dual_name = self.bases[mu_i].dual.clone();
        let dm = self.base(&dual_name)?.clone();
        let sigma = self.bases[mu_i].eps * dm.eps;
        let (tie_b, split) = match tie {
            TiePlacement::Auto => {
                if self.bases[mu_i].len() != dm.len() {
                    return Err(Error::Precondition("carrier and dual differ in item count; give a tie position".into()));
                }
                (if sigma > 0 { dm.alpha + 1 } else { dm.beta - 1 }, None)
            }
            TiePlacement::Boundary(p) => {
                if p <= dm.alpha || p >= dm.beta {
                    return Err(Error::Shape(format!("boundary {p} is not interior to {dual_name}")));
                }
                (p, None)
            }
            TiePlacement::SplitItem(l) => {
                if l < dm.alpha || l >= dm.beta {
                    return Err(Error::Shape(format!("item {l} is not inside {dual_name}")));
                }
                (l + 1, Some(l))
            }
        };
        let mut eq0 = match split {
            Some(l) => self.split_item(l),
            None => self.clone(),
        };
        let first_map = |i: usize| -> Vec<usize> {
            match split {
                Some(l) if i == l => vec![l, l + 1],
                Some(l) if i > l => vec![i + 1],
                _ => vec![i],
            }
        };
        let dm0 = eq0.base(&dual_name)?.clone();
        let (seg, rem) = if sigma > 0 { ((dm0.alpha, tie_b), (tie_b, dm0.beta)) } else { ((tie_b, dm0.beta), (dm0.alpha, tie_b)) };
        {
            let li = eq0.base_index(&lam_name)?;
            let lam_eps = eq0.bases[li].eps;
            let lb = &mut eq0.bases[li];
            lb.alpha = seg.0;
            lb.beta = seg.1;
            lb.eps = sigma * lam_eps;
            let mi = eq0.base_index(&mu_name)?;
            eq0.bases[mi].alpha = 2;
            let di = eq0.base_index(&dual_name)?;
            eq0.bases[di].alpha = rem.0;
            eq0.bases[di].beta = rem.1;
        }
        // delete item 1
        let mut out = eq0.clone();
        for b in &mut out.bases {
            b.alpha -= 1;
            b.beta -= 1;
        }
        out.rho -= 1;
        out.rho_a -= 1;
        let shift = |i: usize| i - 1;
        let seg_items: Vec<usize> = (seg.0..seg.1).map(shift).collect();
        let image_items = |i: usize| -> Vec<usize> {
            if i == 1 {
                seg_items.clone()
            } else {
                first_map(i).into_iter().map(shift).collect()
            }
        };
        let item_map: Vec<SymWord> = (1..=self.rho)
            .map(|i| {
                let w = SymWord(image_items(i).iter().flat_map(|&k| SymWord::gen(&item_name(k)).0).collect());
                if i == 1 && sigma < 0 {
                    w.inverse()
                } else {
                    w
                }
            })
            .collect();
        out.constraints.clear();
        for &(i, j) in &self.constraints {
            for a in image_items(i) {
                for b in image_items(j) {
                    if a != b {
                        out.constraints.insert(ordered(a, b));
                    }
                }
            }
        }
        out.tribes = eq0.tribes.iter().filter(|(&i, _)| i >= 2).map(|(&i, s)| (i - 1, s.clone())).collect();
        let solution = split_solution.map(|hs| hs[1..].to_vec());
        if let Some(hs) = &solution {
            out.tribes = tribes_from_solution(hs);
        }
        out.validate()?;
        let tie = match split {
            Some(l) => TiePlacement::SplitItem(l),
            None => TiePlacement::Boundary(tie_b),
        };
        Ok(Step { equation: out, item_map, carrier: mu_name, transfer: lam_name, tie, solution })
    }

    /// Repeats the entire transformation while the carrier is long and a
    /// transfer base exists.
    pub fn complete_entire_transformation(&self, h: Option<&[GroupWord]>, max_steps: usize) -> Result<Vec<Step>> {
        let mut steps: Vec<Step> = Vec::new();
        let mut cur = self.clone();
        let mut sol: Option<Solution> = h.map(|x| x.to_vec());
        while steps.len() < max_steps && cur.carrier_and_transfer().is_ok() {
            let step = match &sol {
                Some(s) => cur.entire_transformation_with_solution(s)?,
                None => cur.entire_transformation(TiePlacement::Auto)?,
            };
            cur = step.equation.clone();
            sol = step.solution.clone();
            steps.push(step);
        }
        Ok(steps)
    }

    /// Substitutes the item map into a solution of the image equation.
    pub fn pull_back(item_map: &[SymWord], h: &[GroupWord]) -> Result<Solution> {
        let g = h.first().map(|w| w.graph().clone()).ok_or_else(|| Error::Invalid("empty solution".into()))?;
        item_map
            .iter()
            .map(|w| {
                let mut l = Vec::new();
                for s in &w.0 {
                    let k: usize = s.name[1..].parse().map_err(|_| Error::UnknownVertex(s.name.clone()))?;
                    let x = h.get(k - 1).ok_or(Error::VertexOutOfRange(k))?;
                    if s.inv {
                        l.extend(invert(x.letters()));
                    } else {
                        l.extend_from_slice(x.letters());
                    }
                }
                GroupWord::new(g.clone(), l)
            })
            .collect()
    }
}

/// Labels dominance: `link(big) ⊇ link(small)`.
pub fn dominates(g: &CommutationGraph, big: &VertexSet, small: &VertexSet) -> Result<bool> {
    Ok(link(g, big, None)?.is_superset(&link(g, small, None)?))
}

pub fn tribes_from_solution(h: &[GroupWord]) -> TribeAssignment {
    h.iter().enumerate().map(|(k, w)| (k + 1, alphabet(w))).collect()
}

/// The one-section equation with eight bases used as the running example.
pub fn figure2_equation() -> GeneralisedEquation {
    let bases = vec![
        Base::new("ν", 1, 2, 1, "Δ(ν)"),
        Base::new("η", 2, 3, 1, "Δ(η)"),
        Base::new("μ", 1, 4, 1, "Δ(μ)"),
        Base::new("λ", 6, 7, 1, "Δ(λ)"),
        Base::new("Δ(ν)", 3, 6, 1, "ν"),
        Base::new("Δ(η)", 7, 8, 1, "η"),
        Base::new("Δ(μ)", 5, 8, 1, "μ"),
        Base::new("Δ(λ)", 4, 5, 1, "λ"),
    ];
    GeneralisedEquation::new(7, 8, bases, []).expect("well formed")
}

/// Random one-section equation: two interval partitions of the active part
/// whose interior breakpoints are disjoint and cover every interior boundary.
pub fn random_type12<R: Rng>(rng: &mut R, rho_a: usize, mixed_eps: bool, constraint_p: f64) -> GeneralisedEquation {
    assert!(rho_a >= 3);
    let mut cuts_a = vec![1, 2];
    let mut cuts_b = vec![1];
    for p in 3..rho_a {
        if rng.gen_bool(0.5) {
            cuts_a.push(p);
        } else {
            cuts_b.push(p);
        }
    }
    cuts_a.push(rho_a);
    cuts_b.push(rho_a);
    let mut intervals: Vec<(usize, usize)> = Vec::new();
    for cuts in [&cuts_a, &cuts_b] {
        for w in cuts.windows(2) {
            intervals.push((w[0], w[1]));
        }
    }
    let mut rho = rho_a - 1;
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.shuffle(rng);
    let eps = |rng: &mut R| if mixed_eps && rng.gen_bool(0.5) { -1 } else { 1 };
    let mut bases: Vec<Base> = intervals.iter().enumerate().map(|(i, &(a, b))| Base::new(&format!("x{}", i + 1), a, b, 1, "")).collect();
    for b in &mut bases {
        b.eps = eps(rng);
    }
    let mut k = 0;
    while k + 1 < order.len() {
        let (i, j) = (order[k], order[k + 1]);
        bases[i].dual = bases[j].name.clone();
        bases[j].dual = bases[i].name.clone();
        k += 2;
    }
    if order.len() % 2 == 1 {
        let i = order[order.len() - 1];
        rho += 1;
        let name = format!("x{}", bases.len() + 1);
        bases[i].dual = name.clone();
        let e = eps(rng);
        bases.push(Base::new(&name, rho_a, rho_a + 1, e, &bases[i].name.clone()));
    }
    let mut cons = Vec::new();
    for i in 1..=rho {
        for j in i + 1..=rho {
            if rng.gen_bool(constraint_p) {
                cons.push((i, j));
            }
        }
    }
    GeneralisedEquation::new(rho, rho_a, bases, cons).expect("generated shape is valid")
}

/// Random graph on `n ≤ 4` generators `a, b, c, d`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Arc<CommutationGraph> {
    let names = ["a", "b", "c", "d"];
    let mut g = CommutationGraph::new(&names[..n]).expect("distinct");
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j, EdgeTag::D).expect("valid");
            }
        }
    }
    Arc::new(g)
}

fn cut<R: Rng>(rng: &mut R, letters: &[Letter], pieces: usize) -> Vec<Vec<Letter>> {
    let mut pos: Vec<usize> = (1..letters.len()).collect();
    pos.shuffle(rng);
    let mut cuts: Vec<usize> = pos[..pieces - 1].to_vec();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(letters.len());
    cuts.windows(2).map(|w| letters[w[0]..w[1]].to_vec()).collect()
}

/// Equation with a planted solution: a carrier over the first section with a
/// transfer base on item 1, its dual cut elsewhere, and short bases on the
/// remaining carrier items whose duals sit in later sections.
pub fn planted_instance<R: Rng>(rng: &mut R) -> (GeneralisedEquation, Solution) {
    let n = rng.gen_range(2..=4);
    let g = random_graph(rng, n, 0.4);
    loop {
        let len = rng.gen_range(2..=7);
        let u = random_geodesic(&g, len, rng);
        let p = rng.gen_range(2..=len.min(4));
        let q = rng.gen_range(1..=len.min(4));
        let eps_mu: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let eps_dm: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let sigma = eps_mu * eps_dm;
        let first = cut(rng, &u, p);
        let dual_content = if sigma > 0 { u.clone() } else { invert(&u) };
        let second = cut(rng, &dual_content, q);
        // sections after the first, each a list of item contents plus the bases on it
        let eps_l: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let eps_dl: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut sections: Vec<(Vec<Vec<Letter>>, String, i8, String)> = vec![
            (second, "Δμ".into(), eps_dm, "μ".into()),
            (vec![if eps_l * eps_dl > 0 { first[0].clone() } else { invert(&first[0]) }], "Δλ".into(), eps_dl, "λ".into()),
        ];
        let mut extra: Vec<(usize, i8, String)> = Vec::new();
        for (k, piece) in first.iter().enumerate().skip(1) {
            if rng.gen_bool(0.6) {
                let name = format!("ν{}", k + 1);
                let e: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
                let de: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
                let content = if e * de > 0 { piece.clone() } else { invert(piece) };
                sections.push((vec![content], format!("Δ{name}"), de, name.clone()));
                extra.push((k + 1, e, name));
            }
        }
        sections.shuffle(rng);
        let mut items: Vec<Vec<Letter>> = first.clone();
        let mut bases = vec![Base::new("μ", 1, p + 1, eps_mu, "Δμ"), Base::new("λ", 1, 2, eps_l, "Δλ")];
        for (k, e, name) in &extra {
            bases.push(Base::new(name, *k, k + 1, *e, &format!("Δ{name}")));
        }
        for (content, name, e, dual) in sections {
            let a = items.len() + 1;
            items.extend(content);
            bases.push(Base::new(&name, a, items.len() + 1, e, &dual));
        }
        let rho = items.len();
        let h: Solution = items.into_iter().map(|l| GroupWord::new(g.clone(), l).expect("in graph")).collect();
        if h.iter().any(|w| w.is_trivial() || !w.is_geodesic()) {
            continue;
        }
        let mut cons = Vec::new();
        for i in 1..=rho {
            for j in i + 1..=rho {
                if disjointly_commutes(&h[i - 1], &h[j - 1]).expect("same graph") && rng.gen_bool(0.5) {
                    cons.push((i, j));
                }
            }
        }
        let mut eq = GeneralisedEquation::new(rho, rho + 1, bases, cons).expect("planted shape is valid");
        eq.graph = Some(g.clone());
        eq.tribes = tribes_from_solution(&h);
        debug_assert!(eq.check_solution(&h).unwrap());
        return (eq, h);
    }
}
