//! Brute-force reference implementations used by the integration tests.
//! They share no code with the library beyond the graph data.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use pcg::pcgraph::{CommutationGraph, EdgeTag};
use pcg::words::Letter;

/// Letter code `2·gen + inv`.
pub type W = Vec<u8>;

pub fn enc(l: Letter) -> u8 {
    (l.gen as u8) << 1 | l.inv as u8
}

pub fn dec(c: u8) -> Letter {
    Letter { gen: (c >> 1) as usize, inv: c & 1 == 1 }
}

pub fn enc_all(ls: &[Letter]) -> W {
    ls.iter().map(|&l| enc(l)).collect()
}

pub fn dec_all(w: &[u8]) -> Vec<Letter> {
    w.iter().map(|&c| dec(c)).collect()
}

pub fn inv_word(w: &[u8]) -> W {
    w.iter().rev().map(|&c| c ^ 1).collect()
}

pub struct Oracle {
    pub n: usize,
    commute: Vec<Vec<bool>>,
    names: Vec<String>,
}

impl Oracle {
    pub fn new(g: &CommutationGraph) -> Self {
        let n = g.len();
        let commute = (0..n).map(|a| (0..n).map(|b| a != b && g.commute(a, b)).collect()).collect();
        Oracle { n, commute, names: g.names().to_vec() }
    }

    fn swappable(&self, a: u8, b: u8) -> bool {
        self.commute[(a >> 1) as usize][(b >> 1) as usize]
    }

    /// Every word reachable by swapping adjacent commuting letters and
    /// deleting adjacent inverse pairs.
    pub fn class(&self, w: &[u8]) -> HashSet<W> {
        let mut seen: HashSet<W> = HashSet::new();
        let mut queue: VecDeque<W> = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..v.len().saturating_sub(1) {
                let (a, b) = (v[i], v[i + 1]);
                let next = if a ^ 1 == b {
                    let mut x = v[..i].to_vec();
                    x.extend_from_slice(&v[i + 2..]);
                    x
                } else if self.swappable(a, b) {
                    let mut x = v.clone();
                    x.swap(i, i + 1);
                    x
                } else {
                    continue;
                };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    pub fn geodesics(&self, w: &[u8]) -> Vec<W> {
        let c = self.class(w);
        let m = c.iter().map(Vec::len).min().unwrap_or(0);
        let mut out: Vec<W> = c.into_iter().filter(|v| v.len() == m).collect();
        out.sort();
        out
    }

    fn key(&self, w: &[u8]) -> Vec<(String, bool)> {
        w.iter().map(|&c| (self.names[(c >> 1) as usize].clone(), c & 1 == 1)).collect()
    }

    /// ShortLex-least geodesic, ordering generators by name and `x < x'`.
    pub fn canon(&self, w: &[u8]) -> W {
        self.geodesics(w).into_iter().min_by_key(|v| self.key(v)).unwrap_or_default()
    }

    pub fn trivial(&self, w: &[u8]) -> bool {
        self.class(w).contains(&Vec::new())
    }

    pub fn equal(&self, u: &[u8], v: &[u8]) -> bool {
        let mut x = u.to_vec();
        x.extend(inv_word(v));
        self.trivial(&x)
    }

    /// Geodesic splittings `P · Z^m · P⁻¹`, as `(P, Z, m)`.
    fn splittings(&self, w: &[u8]) -> Vec<(W, W, usize)> {
        let mut out = Vec::new();
        for g in self.geodesics(w) {
            let n = g.len();
            for p in 0..=n / 2 {
                if g[n - p..] != inv_word(&g[..p])[..] {
                    continue;
                }
                let mid = &g[p..n - p];
                for zl in 1..=mid.len() {
                    if mid.len() % zl == 0 && mid.chunks(zl).all(|c| c == &mid[..zl]) {
                        out.push((g[..p].to_vec(), mid[..zl].to_vec(), mid.len() / zl));
                    }
                }
            }
        }
        out
    }

    /// `(root, exponent)` with the exponent maximal.
    pub fn least_root(&self, w: &[u8]) -> Option<(W, usize)> {
        let (p, z, m) = self.splittings(w).into_iter().max_by_key(|s| s.2)?;
        let mut r = p.clone();
        r.extend(z);
        r.extend(inv_word(&p));
        Some((self.canon(&r), m))
    }

    /// Alphabet of the cyclically reduced core: the middle of a geodesic
    /// `P Z P⁻¹` with `P` longest.
    pub fn core_alphabet(&self, w: &[u8]) -> BTreeSet<usize> {
        let (_, z, _) = self.splittings(w).into_iter().max_by_key(|s| s.0.len()).expect("nontrivial");
        z.iter().map(|&c| (c >> 1) as usize).collect()
    }

    pub fn alphabet(&self, w: &[u8]) -> BTreeSet<usize> {
        self.canon(w).iter().map(|&c| (c >> 1) as usize).collect()
    }

    /// Connected components of the non-commutation graph on `s`.
    pub fn components(&self, s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left: Vec<usize> = s.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(start) = left.pop() {
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let (near, far): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&u| !self.commute[u][v]);
                left = far;
                for u in near {
                    comp.insert(u);
                    stack.push(u);
                }
            }
            out.push(comp);
        }
        out.sort();
        out
    }

    pub fn irreducible(&self, w: &[u8]) -> bool {
        self.components(&self.core_alphabet(w)).len() == 1
    }

    /// Projection of a geodesic onto a set of generators, as an element.
    pub fn project(&self, w: &[u8], s: &BTreeSet<usize>) -> W {
        let g = self.canon(w);
        self.canon(&g.iter().copied().filter(|&c| s.contains(&((c >> 1) as usize))).collect::<Vec<_>>())
    }
}

/// Every word of length at most `max_len` over `n` generators.
pub fn all_words(n: usize, max_len: usize) -> Vec<W> {
    let mut out: Vec<W> = vec![Vec::new()];
    let mut layer: Vec<W> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..(2 * n) as u8 {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every graph on the vertices `a, b, c, …` (`n` of them), all d-edges.
pub fn all_graphs(n: usize) -> Vec<CommutationGraph> {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let mut g = CommutationGraph::new(&names).unwrap();
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(a, b, EdgeTag::D).unwrap();
                }
            }
            g
        })
        .collect()
}

/// Number of classes of vertices with equal neighbourhoods.
pub fn twin_classes(g: &CommutationGraph) -> usize {
    let n = g.len();
    let nbhd: HashSet<Vec<bool>> = (0..n).map(|v| (0..n).map(|u| u != v && g.commute(u, v)).collect()).collect();
    nbhd.len()
}
