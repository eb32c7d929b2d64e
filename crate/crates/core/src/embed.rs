//! Explicit embeddings between partially commutative groups: the padded
//! embedding of a free group into F(b,c), the doubling embedding, and
//! displacement bounds.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcgraph::{deflate, double, double_name, CommutationGraph, VertexSet};
use crate::words::{alphabet, invert, is_geodesic, GroupWord, Letter};

/// Assignment of a target element to every source generator.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub source: Arc<CommutationGraph>,
    pub target: Arc<CommutationGraph>,
    pub images: Vec<GroupWord>,
}

impl GeneratorMap {
    pub fn new(source: Arc<CommutationGraph>, target: Arc<CommutationGraph>, images: Vec<GroupWord>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Invalid(format!("{} images for {} generators", images.len(), source.len())));
        }
        if images.iter().any(|w| **w.graph() != *target) {
            return Err(Error::GraphMismatch);
        }
        Ok(GeneratorMap { source, target, images })
    }

    pub fn image(&self, gen: usize) -> &GroupWord {
        &self.images[gen]
    }

    /// Image of a source word, unreduced.
    pub fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        for l in letters {
            let img = self.images[l.gen].letters();
            if l.inv {
                out.extend(invert(img));
            } else {
                out.extend_from_slice(img);
            }
        }
        out
    }

    pub fn apply(&self, w: &GroupWord) -> Result<GroupWord> {
        if **w.graph() != *self.source {
            return Err(Error::GraphMismatch);
        }
        GroupWord::new(self.target.clone(), self.apply_letters(w.letters()))
    }

    /// Images of commuting source generators commute.
    pub fn is_homomorphism(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (a + 1..n).filter(|&b| self.source.commute(a, b)).all(|b| {
                let (x, y) = (&self.images[a], &self.images[b]);
                x.concat(y).expect("same target") == y.concat(x).expect("same target")
            })
        })
    }

    pub fn table(&self) -> Vec<(String, String)> {
        (0..self.source.len()).map(|i| (self.source.name(i).to_string(), self.images[i].to_text())).collect()
    }
}

/// The free group `F(b, c)`.
pub fn bc_graph() -> Arc<CommutationGraph> {
    Arc::new(CommutationGraph::new(&["b", "c"]).expect("distinct"))
}

fn reduced_words(r: usize, alphabet: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &out {
            for &l in alphabet {
                if w.last().is_some_and(|&p: &Letter| p == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn check_pad_words(r: usize, b: usize, c: usize, w: &[Vec<Letter>]) -> Result<()> {
    if w.len() != r {
        return Err(Error::Precondition(format!("expected {r} padding words, got {}", w.len())));
    }
    for (i, wi) in w.iter().enumerate() {
        if wi.len() != r || wi.windows(2).any(|p| p[0] == p[1].inverse()) {
            return Err(Error::Precondition(format!("padding word {} is not reduced of length {r}", i + 1)));
        }
        if wi.iter().any(|l| l.gen != b && l.gen != c) {
            return Err(Error::Precondition(format!("padding word {} leaves F(b,c)", i + 1)));
        }
        if wi.first() == Some(&Letter::neg(b)) || wi.last() == Some(&Letter::neg(b)) {
            return Err(Error::Precondition(format!("padding word {} begins or ends with b'", i + 1)));
        }
        if !wi.iter().any(|l| l.gen == c) {
            return Err(Error::Precondition(format!("padding word {} has no c", i + 1)));
        }
        for wj in &w[..i] {
            if wi == wj || *wi == invert(wj) {
                return Err(Error::Precondition("padding words must be distinct up to inversion".into()));
            }
        }
    }
    Ok(())
}

/// First admissible `r` words in the order induced by `c < b < c' < b'`,
/// chosen greedily.
pub fn default_pad_words(r: usize, b: usize, c: usize) -> Vec<Vec<Letter>> {
    let order = [Letter::pos(c), Letter::pos(b), Letter::neg(c), Letter::neg(b)];
    let mut chosen: Vec<Vec<Letter>> = Vec::new();
    for w in reduced_words(r, &order) {
        if chosen.len() == r {
            break;
        }
        let ok = w.first() != Some(&Letter::neg(b))
            && w.last() != Some(&Letter::neg(b))
            && w.iter().any(|l| l.gen == c)
            && chosen.iter().all(|u| *u != w && *u != invert(&w));
        if ok {
            chosen.push(w);
        }
    }
    chosen
}

fn padded_image(b: usize, c: usize, w: Option<&[Letter]>, pad: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    if let Some(w) = w {
        out.extend_from_slice(w);
    }
    out.extend(std::iter::repeat_n(Letter::pos(b), pad));
    out.push(Letter::pos(c));
    out.extend(std::iter::repeat_n(Letter::pos(b), pad));
    if let Some(w) = w {
        out.extend_from_slice(w);
    }
    out
}

/// `a_i ↦ w_i b^{L+i} c b^{L+i} w_i` for `i ≤ r`, and
/// `a_j ↦ b^{L+r+j} c b^{L+r+j}` for the `extra` generators `j = r+1, …`.
/// Padding words are given as text over `b, c`; `None` picks the defaults.
pub fn padded_embedding(r: usize, l: usize, w: Option<&[&str]>, extra: usize) -> Result<GeneratorMap> {
    if l == 0 {
        return Err(Error::Precondition("L must be positive".into()));
    }
    let target = bc_graph();
    let words: Vec<Vec<Letter>> = match w {
        Some(ws) => ws.iter().map(|s| Ok(GroupWord::parse(target.clone(), s)?.letters().to_vec())).collect::<Result<_>>()?,
        None => default_pad_words(r, 0, 1),
    };
    check_pad_words(r, 0, 1, &words)?;
    let source = Arc::new(CommutationGraph::edgeless(r + extra, "a"));
    let images = (1..=r + extra)
        .map(|i| {
            let letters = if i <= r { padded_image(0, 1, Some(&words[i - 1]), l + i) } else { padded_image(0, 1, None, l + r + i) };
            GroupWord::new(target.clone(), letters)
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorMap::new(source, target, images)
}

/// Embedding of the group of `g` into the group of `double(g)`: each
/// deflation class goes into the free group on its two copies.
pub fn doubling_embedding(g: &CommutationGraph, l: usize) -> Result<GeneratorMap> {
    if l == 0 {
        return Err(Error::Precondition("L must be positive".into()));
    }
    let d = deflate(g);
    let target = Arc::new(double(g));
    let mut images = vec![None; g.len()];
    for (k, members) in d.classes.iter().enumerate() {
        let cls = d.graph.name(k);
        let b = target.index_of(&double_name(cls, 1))?;
        let c = target.index_of(&double_name(cls, 2))?;
        let r = members.len();
        let words = default_pad_words(r, b, c);
        for (i, &v) in members.iter().enumerate() {
            let letters = padded_image(b, c, Some(&words[i]), l + i + 1);
            images[v] = Some(GroupWord::new(target.clone(), letters)?);
        }
    }
    let images = images.into_iter().map(|w| w.expect("every vertex has a class")).collect();
    GeneratorMap::new(Arc::new(g.clone()), target, images)
}

/// Largest geodesic length among `gens`: how far the generators move the
/// identity vertex of the standard complex.
pub fn displacement(gens: &[GroupWord]) -> Result<usize> {
    if gens.is_empty() {
        return Err(Error::Invalid("empty generator list".into()));
    }
    Ok(gens.iter().map(GroupWord::len).max().unwrap_or(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplacementReport {
    pub k: usize,
    pub d_alpha: usize,
    pub d_beta: usize,
    pub lower: usize,
    pub upper: usize,
    pub holds: bool,
}

/// Pushes `k` elements of a free group into `F(b,c)` with `L = k·∂α` and
/// compares the new displacement with `2k∂α²` and `7k∂α²`.
pub fn check_displacement(gens: &[GroupWord]) -> Result<DisplacementReport> {
    let d_alpha = displacement(gens)?;
    if gens.iter().any(GroupWord::is_trivial) {
        return Err(Error::Precondition("generators must be nontrivial".into()));
    }
    let g = gens[0].graph().clone();
    if g.edge_count() > 0 {
        return Err(Error::Precondition("generators must lie in a free group".into()));
    }
    let mut b: VertexSet = VertexSet::new();
    for w in gens {
        if **w.graph() != *g {
            return Err(Error::GraphMismatch);
        }
        b.extend(alphabet(w));
    }
    let mut basis: Vec<usize> = b.into_iter().collect();
    basis.sort_by_key(|&v| g.rank(v));
    let k = gens.len();
    let l = k * d_alpha;
    let psi = padded_embedding(basis.len(), l, None, 0)?;
    let d_beta = gens
        .iter()
        .map(|w| {
            let src: Vec<Letter> = w
                .canonical()
                .iter()
                .map(|x| Letter { gen: basis.iter().position(|&v| v == x.gen).expect("in basis"), inv: x.inv })
                .collect();
            GroupWord::new(psi.target.clone(), psi.apply_letters(&src)).map(|w| w.len())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let lower = 2 * k * d_alpha * d_alpha;
    let upper = 7 * k * d_alpha * d_alpha;
    Ok(DisplacementReport { k, d_alpha, d_beta, lower, upper, holds: lower <= d_beta && d_beta <= upper })
}

/// Sanity check used by callers that build padding words by hand.
pub fn is_valid_pad(r: usize, words: &[&str]) -> bool {
    let t = bc_graph();
    let parsed: Result<Vec<Vec<Letter>>> = words.iter().map(|s| Ok(GroupWord::parse(t.clone(), s)?.letters().to_vec())).collect();
    parsed.is_ok_and(|w| w.iter().all(|x| is_geodesic(&t, x)) && check_pad_words(r, 0, 1, &w).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgraph::EdgeTag;

    #[test]
    fn single_generator_image() {
        let m = padded_embedding(1, 1, None, 0).unwrap();
        assert_eq!(m.image(0).to_text(), "c b b c b b c");
        assert_eq!(m.image(0).len(), 7);
        let m = padded_embedding(1, 1, Some(&["c"]), 1).unwrap();
        assert_eq!(m.image(1).to_text(), "b b b b c b b b b");
    }

    #[test]
    fn padding_preconditions() {
        assert!(padded_embedding(1, 1, Some(&["b"]), 0).is_err());
        assert!(padded_embedding(2, 1, Some(&["c b", "b' c"]), 0).is_err());
        assert!(padded_embedding(2, 1, Some(&["c b", "b' c'"]), 0).is_err());
        assert!(padded_embedding(2, 1, Some(&["c b", "c c"]), 0).is_ok());
        assert!(is_valid_pad(2, &["c b", "c c"]));
        assert_eq!(default_pad_words(2, 0, 1), vec![vec![Letter::pos(1), Letter::pos(1)], vec![Letter::pos(1), Letter::pos(0)]]);
    }

    #[test]
    fn doubling_examples() {
        let one = CommutationGraph::new(&["a"]).unwrap();
        let m = doubling_embedding(&one, 1).unwrap();
        assert_eq!(m.image(0).to_text(), "a_2 a_1 a_1 a_2 a_1 a_1 a_2");
        let k2 = CommutationGraph::from_edges(&["a", "b"], &[("a", "b", EdgeTag::D)]).unwrap();
        let m = doubling_embedding(&k2, 2).unwrap();
        assert_eq!(m.target.len(), 4);
        assert!(m.is_homomorphism());
        let e3 = CommutationGraph::edgeless(3, "v");
        let m = doubling_embedding(&e3, 1).unwrap();
        for i in 0..3 {
            for j in 0..i {
                assert_ne!(m.image(i), m.image(j));
            }
        }
    }

    #[test]
    fn displacement_examples() {
        let f = Arc::new(CommutationGraph::new(&["a", "b"]).unwrap());
        let w = |s| GroupWord::parse(f.clone(), s).unwrap();
        assert_eq!(displacement(&[w("a"), w("a b")]).unwrap(), 2);
        assert_eq!(displacement(&[w("1")]).unwrap(), 0);
        assert!(displacement(&[]).is_err());
        let r = check_displacement(&[w("a")]).unwrap();
        assert_eq!((r.lower, r.upper), (2, 7));
        assert!(r.holds);
        let r = check_displacement(&[w("a b"), w("b a")]).unwrap();
        assert_eq!((r.lower, r.upper), (16, 56));
        assert!(r.holds);
        assert!(check_displacement(&[w("1")]).is_err());
    }
}
