//! Diekert–Muscholl normal form: thin clans are serialised one at a time by
//! comparing global positions, until the dependence graph is a chain.

use crate::error::{Error, Result};
use crate::pcgraph::{CommutationGraph, VertexSet};
use crate::words::{is_geodesic, GroupWord, Letter};

/// Maximal set of letters with identical dependence behaviour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clan {
    pub gens: VertexSet,
    pub thin: bool,
}

impl Clan {
    /// The signed letters `C = 𝒞 ∪ 𝒞⁻¹`.
    pub fn letters(&self) -> Vec<Letter> {
        self.gens.iter().flat_map(|&g| [Letter::pos(g), Letter::neg(g)]).collect()
    }
}

/// Clans for a commutation relation given as a matrix on generators,
/// ordered by least generator name.
fn clans_of(g: &CommutationGraph, indep: &[Vec<bool>]) -> Vec<Clan> {
    let n = g.len();
    let dep_row = |a: usize| -> Vec<bool> { (0..n).map(|b| a == b || !indep[a][b]).collect() };
    let rows: Vec<Vec<bool>> = (0..n).map(dep_row).collect();
    let mut groups: Vec<VertexSet> = Vec::new();
    for a in 0..n {
        match groups.iter_mut().find(|c| rows[*c.iter().next().expect("nonempty")] == rows[a]) {
            Some(c) => {
                c.insert(a);
            }
            None => groups.push([a].into()),
        }
    }
    let mut out: Vec<Clan> = groups
        .into_iter()
        .map(|c| {
            let thin = c.iter().any(|&a| (0..n).any(|b| !c.contains(&b) && indep[a][b]));
            Clan { gens: c, thin }
        })
        .collect();
    out.sort_by_key(|c| c.gens.iter().map(|&v| g.rank(v)).min());
    out
}

fn commutation_matrix(g: &CommutationGraph) -> Vec<Vec<bool>> {
    (0..g.len()).map(|a| (0..g.len()).map(|b| g.commute(a, b)).collect()).collect()
}

pub fn clans(g: &CommutationGraph) -> Vec<Clan> {
    clans_of(g, &commutation_matrix(g))
}

/// Vertices `0..n` labelled by letters; `i → j` iff `i < j` and dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceGraph {
    pub labels: Vec<Letter>,
    pub edges: Vec<(usize, usize)>,
}

pub fn dependence_graph_of(g: &CommutationGraph, letters: &[Letter]) -> DependenceGraph {
    let n = letters.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if crate::words::dependent(g, letters[i], letters[j]) {
                edges.push((i, j));
            }
        }
    }
    DependenceGraph { labels: letters.to_vec(), edges }
}

/// Dependence graph of the letters of `w` as written.
pub fn dependence_graph(w: &GroupWord) -> DependenceGraph {
    dependence_graph_of(w.graph(), w.letters())
}

/// Positions computed for one designated thin clan. Global positions are
/// stored doubled so that medians `l + ½` stay integral.
#[derive(Clone, Debug)]
pub struct PositionData {
    pub clan: Clan,
    /// `c₁ < … < c_q`, as vertex indices.
    pub occurrences: Vec<usize>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub global2: Vec<usize>,
}

/// Doubled median `2·m(s,t)` for the clan occurrence signs `inv[0..q]`
/// (`inv[i]` is the sign of `c_{i+1}`).
pub fn median2(inv: &[bool], s: usize, t: usize) -> usize {
    if s == t {
        return 2 * s;
    }
    // f(l) = #neg(c_{s+1..l}) − #pos(c_{l+1..t−1}) rises by exactly one per step
    let inner = &inv[s..t - 1];
    let mut f: isize = -(inner.iter().filter(|&&x| !x).count() as isize);
    let mut l = s;
    while f < 0 {
        f += 1;
        l += 1;
    }
    debug_assert!(l < t);
    2 * l + 1
}

fn closure(n: usize, e: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for s in 0..n {
        let mut stack = vec![s];
        reach[s][s] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if e[v][u] && !reach[s][u] {
                    reach[s][u] = true;
                    stack.push(u);
                }
            }
        }
    }
    reach
}

/// Runs the normal-form procedure on a geodesic, returning the output
/// sequence and the position data of every round.
pub fn dm_trace(g: &CommutationGraph, letters: &[Letter]) -> Result<(Vec<Letter>, Vec<PositionData>)> {
    if !is_geodesic(g, letters) {
        return Err(Error::NotGeodesic);
    }
    let n = letters.len();
    let mut indep = commutation_matrix(g);
    let mut e = vec![vec![false; n]; n];
    for (i, j) in dependence_graph_of(g, letters).edges {
        e[i][j] = true;
    }
    let mut rounds = Vec::new();
    loop {
        let Some(clan) = clans_of(g, &indep).into_iter().find(|c| c.thin) else { break };
        let reach = closure(n, &e);
        let in_clan = |v: usize| clan.gens.contains(&letters[v].gen);
        let mut occ: Vec<usize> = (0..n).filter(|&v| in_clan(v)).collect();
        let all = occ.clone();
        occ.sort_by_key(|&v| all.iter().filter(|&&u| reach[u][v]).count());
        let q = occ.len();
        let inv: Vec<bool> = occ.iter().map(|&v| letters[v].inv).collect();
        let mut source = vec![0; n];
        let mut target = vec![q + 1; n];
        let mut global2 = vec![0; n];
        for v in 0..n {
            source[v] = (1..=q).filter(|&i| reach[occ[i - 1]][v]).max().unwrap_or(0);
            target[v] = (1..=q).filter(|&i| reach[v][occ[i - 1]]).min().unwrap_or(q + 1);
            global2[v] = median2(&inv, source[v], target[v]);
        }
        for v in (0..n).filter(|&v| in_clan(v)) {
            for u in (0..n).filter(|&u| !in_clan(u) && indep[letters[u].gen][letters[v].gen]) {
                if global2[u] < global2[v] {
                    e[u][v] = true;
                } else {
                    e[v][u] = true;
                }
            }
        }
        for &a in &clan.gens {
            for b in 0..g.len() {
                indep[a][b] = false;
                indep[b][a] = false;
            }
        }
        rounds.push(PositionData { clan, occurrences: occ, source, target, global2 });
    }
    // every pair is now joined, so the order is forced
    let mut indeg: Vec<usize> = (0..n).map(|v| (0..n).filter(|&u| e[u][v]).count()).collect();
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let src: Vec<usize> = (0..n).filter(|&v| !done[v] && indeg[v] == 0).collect();
        if src.len() != 1 {
            return Err(Error::Invalid("augmented dependence graph is not a chain".into()));
        }
        let v = src[0];
        done[v] = true;
        out.push(letters[v]);
        for u in 0..n {
            if e[v][u] {
                indeg[u] -= 1;
            }
        }
    }
    Ok((out, rounds))
}

/// Normal form of a geodesic letter sequence.
pub fn dm_normal_form_of(g: &CommutationGraph, letters: &[Letter]) -> Result<Vec<Letter>> {
    Ok(dm_trace(g, letters)?.0)
}

/// Normal form of an element, computed on its canonical geodesic.
pub fn dm_normal_form(w: &GroupWord) -> Vec<Letter> {
    dm_normal_form_of(w.graph(), w.canonical()).expect("canonical forms are geodesic")
}

/// `2k − 1` for the largest `k` such that `seq` has a factor
/// `v₁u₁…v_k u_k` with nonempty `v_i` over `H1` and `u_i` over `H2`; `0` if none.
pub fn count_alternations(g: &CommutationGraph, seq: &[Letter], h1: &VertexSet, h2: &VertexSet) -> Result<usize> {
    if h1.is_empty() || h2.is_empty() {
        return Err(Error::Precondition("H1 and H2 must be nonempty".into()));
    }
    if !h1.is_disjoint(h2) {
        return Err(Error::Precondition("H1 and H2 must be disjoint".into()));
    }
    if let Some(v) = h1.iter().chain(h2).find(|&&v| v >= g.len()) {
        return Err(Error::VertexOutOfRange(*v));
    }
    if h1.iter().any(|&a| h2.iter().any(|&b| !g.commute(a, b))) {
        return Err(Error::Precondition("H1 and H2 do not disjointly commute".into()));
    }
    let side = |l: &Letter| {
        if h1.contains(&l.gen) {
            Some(1u8)
        } else if h2.contains(&l.gen) {
            Some(2u8)
        } else {
            None
        }
    };
    let mut best = 0;
    let mut runs: Vec<u8> = Vec::new();
    let mut flush = |runs: &mut Vec<u8>| {
        if let Some(&first) = runs.first() {
            let usable = if first == 1 { runs.len() } else { runs.len() - 1 };
            best = best.max(usable / 2);
        }
        runs.clear();
    };
    for l in seq {
        match side(l) {
            Some(s) => {
                if runs.last() != Some(&s) {
                    runs.push(s);
                }
            }
            None => flush(&mut runs),
        }
    }
    flush(&mut runs);
    Ok(if best == 0 { 0 } else { 2 * best - 1 })
}
