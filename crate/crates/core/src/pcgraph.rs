//! Commutation graphs and the purely graph-theoretic constructions on them:
//! links, closure, deflation, width, doubling and universal graphs.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge kind in a tower graph. Untagged graphs are all `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeTag {
    D,
    C,
}

impl EdgeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeTag::D => "d",
            EdgeTag::C => "c",
        }
    }
}

/// Subset of the vertices of a graph, by index.
pub type VertexSet = BTreeSet<usize>;

/// Finite simplicial graph on named generators. An edge means the two
/// generators commute.
#[derive(Clone, Debug)]
pub struct CommutationGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Option<EdgeTag>>,
    rank: Vec<usize>,
}

impl PartialEq for CommutationGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for CommutationGraph {}

impl CommutationGraph {
    /// Edgeless graph on the given names.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '\'') {
                return Err(Error::Invalid(format!("bad generator name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut rank = vec![0; names.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let n = names.len();
        Ok(CommutationGraph { names, index, adj: vec![None; n * n], rank })
    }

    /// Graph from names and `(u, v, tag)` triples.
    pub fn from_edges<S: AsRef<str>>(names: &[S], edges: &[(&str, &str, EdgeTag)]) -> Result<Self> {
        let mut g = Self::new(names)?;
        for &(u, v, t) in edges {
            let (a, b) = (g.index_of(u)?, g.index_of(v)?);
            g.add_edge(a, b, t)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize, prefix: &str) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names).expect("generated names are distinct")
    }

    pub fn complete(n: usize, prefix: &str) -> Self {
        let mut g = Self::edgeless(n, prefix);
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, Some(EdgeTag::D));
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Position of `v` in the name order; used for ShortLex comparisons.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.len()).collect()
    }

    fn set(&mut self, a: usize, b: usize, t: Option<EdgeTag>) {
        let n = self.len();
        self.adj[a * n + b] = t;
        self.adj[b * n + a] = t;
    }

    pub fn add_edge(&mut self, a: usize, b: usize, t: EdgeTag) -> Result<()> {
        if a >= self.len() {
            return Err(Error::VertexOutOfRange(a));
        }
        if b >= self.len() {
            return Err(Error::VertexOutOfRange(b));
        }
        if a == b {
            return Err(Error::SelfLoop(self.names[a].clone()));
        }
        self.set(a, b, Some(t));
        Ok(())
    }

    /// Returns a copy with extra vertices appended (no new edges).
    pub fn with_vertices<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        let mut g = Self::new(&names)?;
        for (a, b, t) in self.edges() {
            g.set(a, b, Some(t));
        }
        Ok(g)
    }

    pub fn tag(&self, a: usize, b: usize) -> Option<EdgeTag> {
        self.adj[a * self.len() + b]
    }

    /// True iff the generators commute (distinct and adjacent).
    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.len() + b].is_some()
    }

    fn passes(&self, a: usize, b: usize, filter: Option<EdgeTag>) -> bool {
        match (self.tag(a, b), filter) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(t), Some(f)) => t == f,
        }
    }

    /// Edges as `(u, v, tag)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeTag)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if let Some(t) = self.tag(a, b) {
                    out.push((a, b, t));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn has_c_edges(&self) -> bool {
        self.edges().iter().any(|e| e.2 == EdgeTag::C)
    }

    /// Checks transitivity of the c-edge relation.
    pub fn check_ec_property(&self) -> Result<()> {
        let n = self.len();
        for y in 0..n {
            let nb: Vec<usize> = (0..n).filter(|&x| self.tag(x, y) == Some(EdgeTag::C)).collect();
            for &x in &nb {
                for &z in &nb {
                    if x != z && self.tag(x, z) != Some(EdgeTag::C) {
                        return Err(Error::EcProperty(
                            self.names[x].clone(),
                            self.names[y].clone(),
                            self.names[z].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn induced(&self, s: &VertexSet) -> CommutationGraph {
        let vs: Vec<usize> = s.iter().copied().collect();
        let names: Vec<&str> = vs.iter().map(|&v| self.name(v)).collect();
        let mut g = CommutationGraph::new(&names).expect("subset of distinct names");
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if let Some(t) = self.tag(a, b) {
                    g.set(i, j, Some(t));
                }
            }
        }
        g
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&&v| v >= self.len()) {
            Some(&v) => Err(Error::VertexOutOfRange(v)),
            None => Ok(()),
        }
    }
}

/// Non-commutation graph: same vertices, edges exactly the non-edges.
pub fn complement(g: &CommutationGraph) -> CommutationGraph {
    let mut h = CommutationGraph::new(g.names()).expect("names already validated");
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            if !g.commute(a, b) {
                h.set(a, b, Some(EdgeTag::D));
            }
        }
    }
    h
}

/// Connected components, each sorted, ordered by least member.
pub fn components(g: &CommutationGraph) -> Vec<VertexSet> {
    components_of(g.len(), &g.all_vertices(), |a, b| g.commute(a, b))
}

fn components_of(n: usize, within: &VertexSet, adjacent: impl Fn(usize, usize) -> bool) -> Vec<VertexSet> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for &s in within {
        if seen[s] {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &u in within {
                if !seen[u] && u != v && adjacent(v, u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Components of the non-commutation graph restricted to `s`.
pub fn noncommutation_components(g: &CommutationGraph, s: &VertexSet) -> Vec<VertexSet> {
    components_of(g.len(), s, |a, b| !g.commute(a, b))
}

/// `X^⊥`: vertices adjacent (through edges passing `filter`) to every vertex of `X`.
pub fn link(g: &CommutationGraph, x: &VertexSet, filter: Option<EdgeTag>) -> Result<VertexSet> {
    g.check_set(x)?;
    Ok((0..g.len()).filter(|&v| x.iter().all(|&u| g.passes(u, v, filter))).collect())
}

pub fn is_closed(g: &CommutationGraph, k: &VertexSet, filter: Option<EdgeTag>) -> Result<bool> {
    let kk = link(g, &link(g, k, filter)?, filter)?;
    Ok(&kk == k)
}

/// True iff the complement of the induced subgraph on `s` (over edges
/// passing `filter`) is connected. The empty set counts as disconnected.
pub fn complement_connected(g: &CommutationGraph, s: &VertexSet, filter: Option<EdgeTag>) -> bool {
    !s.is_empty() && components_of(g.len(), s, |a, b| !g.passes(a, b, filter)).len() == 1
}

pub fn is_coirreducible(g: &CommutationGraph, k: &VertexSet, filter: Option<EdgeTag>) -> Result<bool> {
    if !is_closed(g, k, filter)? {
        return Ok(false);
    }
    let kp = link(g, k, filter)?;
    Ok(complement_connected(g, &kp, filter))
}

/// Quotient of a graph by the equal-link relation.
#[derive(Clone, Debug)]
pub struct Deflation {
    pub graph: CommutationGraph,
    /// `class_of[v]` is the vertex of `graph` that `v` collapses to.
    pub class_of: Vec<usize>,
    /// Members of each class in declared order.
    pub classes: Vec<Vec<usize>>,
}

pub fn deflate(g: &CommutationGraph) -> Deflation {
    let n = g.len();
    let links: Vec<Vec<bool>> = (0..n).map(|v| (0..n).map(|u| g.commute(v, u)).collect()).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for v in 0..n {
        match classes.iter().position(|c| links[c[0]] == links[v]) {
            Some(i) => {
                classes[i].push(v);
                class_of[v] = i;
            }
            None => {
                class_of[v] = classes.len();
                classes.push(vec![v]);
            }
        }
    }
    let names: Vec<&str> = classes.iter().map(|c| g.name(c[0])).collect();
    let mut h = CommutationGraph::new(&names).expect("representatives are distinct");
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if g.commute(classes[i][0], classes[j][0]) {
                h.set(i, j, Some(EdgeTag::D));
            }
        }
    }
    Deflation { graph: h, class_of, classes }
}

pub fn is_deflated(g: &CommutationGraph) -> bool {
    deflate(g).classes.len() == g.len()
}

pub fn width(g: &CommutationGraph) -> Result<usize> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(deflate(g).graph.len())
}

/// Name of the `i`-th copy (`i` ∈ {1,2}) of a deflation class in the doubled graph.
pub fn double_name(class: &str, i: usize) -> String {
    format!("{class}_{i}")
}

/// Deflates, then takes two copies of every class; copies of distinct classes
/// are joined exactly when the classes are.
pub fn double(g: &CommutationGraph) -> CommutationGraph {
    let d = deflate(g).graph;
    let k = d.len();
    let names: Vec<String> =
        (0..k).flat_map(|c| [double_name(d.name(c), 1), double_name(d.name(c), 2)]).collect();
    let mut h = CommutationGraph::new(&names).expect("doubled names are distinct");
    for a in 0..k {
        for b in a + 1..k {
            if d.commute(a, b) {
                for i in 0..2 {
                    for j in 0..2 {
                        h.set(2 * a + i, 2 * b + j, Some(EdgeTag::D));
                    }
                }
            }
        }
    }
    h
}

/// Disjoint union. Names must not clash.
pub fn disjoint_union(a: &CommutationGraph, b: &CommutationGraph) -> Result<CommutationGraph> {
    let mut g = a.with_vertices(b.names())?;
    let off = a.len();
    for (u, v, t) in b.edges() {
        g.set(off + u, off + v, Some(t));
    }
    Ok(g)
}

/// Join: disjoint union plus every edge between the two sides.
pub fn join(a: &CommutationGraph, b: &CommutationGraph) -> Result<CommutationGraph> {
    let mut g = disjoint_union(a, b)?;
    for u in 0..a.len() {
        for v in 0..b.len() {
            g.set(u, a.len() + v, Some(EdgeTag::D));
        }
    }
    Ok(g)
}

/// Colour refinement starting from degrees; returns a stable colour per vertex.
fn refine(g: &CommutationGraph) -> Vec<usize> {
    let n = g.len();
    let mut colour = vec![0usize; n];
    let mut count = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| g.commute(u, v)).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(s).expect("present")).collect();
        colour = next;
        if uniq.len() == count {
            return colour;
        }
        count = uniq.len();
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Isomorphism-invariant code of an untagged graph: the least upper-triangle
/// adjacency string over all orderings compatible with the refined colouring.
pub fn canonical_code(g: &CommutationGraph) -> (usize, Vec<bool>) {
    let n = g.len();
    let colour = refine(g);
    let ncol = colour.iter().copied().max().map_or(0, |m| m + 1);
    let cells: Vec<Vec<usize>> = (0..ncol).map(|c| (0..n).filter(|&v| colour[v] == c).collect()).collect();
    let cell_perms: Vec<Vec<Vec<usize>>> = cells.iter().map(|c| permutations(c)).collect();
    let mut best: Option<Vec<bool>> = None;
    let mut choice = vec![0usize; cells.len()];
    loop {
        let order: Vec<usize> = choice.iter().enumerate().flat_map(|(c, &i)| cell_perms[c][i].clone()).collect();
        let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(g.commute(order[i], order[j]));
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        let mut c = 0;
        loop {
            if c == cells.len() {
                return (n, best.unwrap_or_default());
            }
            choice[c] += 1;
            if choice[c] < cell_perms[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

pub fn isomorphic(a: &CommutationGraph, b: &CommutationGraph) -> bool {
    a.len() == b.len() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b)
}

pub const UNIVERSAL_CAP: usize = 5;

/// Representatives of the isomorphism classes of deflated graphs on
/// `1..=n_max` vertices, in enumeration order (by size, then code).
pub fn deflated_graph_classes(n_max: usize) -> Vec<CommutationGraph> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut reps: Vec<(Vec<bool>, CommutationGraph)> = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut g = CommutationGraph::edgeless(n, "v");
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.set(i, j, Some(EdgeTag::D));
                }
            }
            if !is_deflated(&g) {
                continue;
            }
            let (_, code) = canonical_code(&g);
            if seen.insert(code.clone()) {
                reps.push((code, g));
            }
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(reps.into_iter().map(|(_, g)| g));
    }
    out
}

/// Disjoint union of the doubles of all deflated graphs with at most `n` vertices.
pub fn universal_graph(n: usize) -> Result<CommutationGraph> {
    universal_graph_with_cap(n, UNIVERSAL_CAP)
}

pub fn universal_graph_with_cap(n: usize, cap: usize) -> Result<CommutationGraph> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    if n > cap {
        return Err(Error::AboveCap { requested: n, cap });
    }
    let mut acc = CommutationGraph::new::<&str>(&[])?;
    for (k, g) in deflated_graph_classes(n).iter().enumerate() {
        let d = double(g);
        let names: Vec<String> = d.names().iter().map(|s| format!("g{}{}", k + 1, s)).collect();
        let mut renamed = CommutationGraph::new(&names)?;
        for (a, b, t) in d.edges() {
            renamed.set(a, b, Some(t));
        }
        acc = disjoint_union(&acc, &renamed)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> CommutationGraph {
        CommutationGraph::from_edges(
            &["a1", "a2", "b1", "b2"],
            &[("a1", "b1", EdgeTag::D), ("a1", "b2", EdgeTag::D), ("a2", "b1", EdgeTag::D), ("a2", "b2", EdgeTag::D)],
        )
        .unwrap()
    }

    #[test]
    fn complement_examples() {
        let e = CommutationGraph::new(&["a", "b", "c"]).unwrap();
        assert_eq!(complement(&e).edge_count(), 3);
        let k3 = CommutationGraph::complete(3, "a");
        assert_eq!(complement(&k3).edge_count(), 0);
        let p = CommutationGraph::from_edges(&["a", "b", "c"], &[("a", "b", EdgeTag::D), ("b", "c", EdgeTag::D)])
            .unwrap();
        let c = complement(&p);
        assert_eq!(c.edges(), vec![(0, 2, EdgeTag::D)]);
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&CommutationGraph::complete(3, "a")).len(), 1);
        assert_eq!(components(&CommutationGraph::edgeless(2, "a")).len(), 2);
        let g = k22();
        let comps = components(&complement(&g));
        assert_eq!(comps, vec![[0, 1].into(), [2, 3].into()]);
    }

    #[test]
    fn link_examples() {
        let g = k22();
        assert_eq!(link(&g, &[0].into(), None).unwrap(), [2, 3].into());
        assert_eq!(link(&g, &VertexSet::new(), None).unwrap(), g.all_vertices());
        let k3 = CommutationGraph::complete(3, "a");
        assert_eq!(link(&k3, &[0, 1].into(), None).unwrap(), [2].into());
        assert!(link(&k3, &[7].into(), None).is_err());
    }

    #[test]
    fn closure_examples() {
        let g = k22();
        assert!(is_closed(&g, &[0, 1].into(), None).unwrap());
        assert!(!is_closed(&g, &[0].into(), None).unwrap());
        // V^⊥ of K_{2,2} is empty, and ∅^⊥ = V
        assert!(is_closed(&g, &g.all_vertices(), None).unwrap());
        let p = CommutationGraph::from_edges(&["a", "b"], &[]).unwrap();
        assert!(is_closed(&p, &p.all_vertices(), None).unwrap());
    }

    #[test]
    fn coirreducible_examples() {
        let g = k22();
        assert!(is_coirreducible(&g, &[0, 1].into(), None).unwrap());
        let k3 = CommutationGraph::complete(3, "a");
        // {a1,a2}^⊥ = {a3}, {a3}^⊥ = {a1,a2}: closed, singleton complement
        assert!(is_coirreducible(&k3, &[0, 1].into(), None).unwrap());
        let c4 = CommutationGraph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b", EdgeTag::D), ("b", "c", EdgeTag::D), ("c", "d", EdgeTag::D), ("d", "a", EdgeTag::D)],
        )
        .unwrap();
        // {a,c}^⊥ = {b,d}, {b,d}^⊥ = {a,c}; b,d non-adjacent
        assert!(is_coirreducible(&c4, &[0, 2].into(), None).unwrap());
        assert!(!is_coirreducible(&c4, &[0].into(), None).unwrap());
    }

    #[test]
    fn tag_filtered_link() {
        let g = CommutationGraph::from_edges(&["a", "b", "c"], &[("a", "b", EdgeTag::D), ("a", "c", EdgeTag::C)])
            .unwrap();
        assert_eq!(link(&g, &[0].into(), Some(EdgeTag::D)).unwrap(), [1].into());
        assert_eq!(link(&g, &[0].into(), None).unwrap(), [1, 2].into());
    }

    #[test]
    fn deflate_examples() {
        assert_eq!(deflate(&CommutationGraph::edgeless(5, "x")).graph.len(), 1);
        assert_eq!(deflate(&CommutationGraph::complete(4, "x")).graph.len(), 4);
        let d = deflate(&k22());
        assert_eq!(d.graph.len(), 2);
        assert_eq!(d.graph.edge_count(), 1);
        assert_eq!(d.classes, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn width_examples() {
        assert_eq!(width(&CommutationGraph::edgeless(7, "x")).unwrap(), 1);
        for n in 1..=6 {
            assert_eq!(width(&CommutationGraph::complete(n, "x")).unwrap(), n);
        }
        let k23 = join(&CommutationGraph::edgeless(2, "a"), &CommutationGraph::edgeless(3, "b")).unwrap();
        assert_eq!(width(&k23).unwrap(), 2);
        assert_eq!(width(&CommutationGraph::new::<&str>(&[]).unwrap()), Err(Error::EmptyGraph));
    }

    #[test]
    fn double_examples() {
        let one = CommutationGraph::new(&["a"]).unwrap();
        let d = double(&one);
        assert_eq!((d.len(), d.edge_count()), (2, 0));
        let k2 = CommutationGraph::complete(2, "a");
        assert!(isomorphic(&double(&k2), &k22()));
        assert!(isomorphic(&double(&k22()), &k22()));
    }

    #[test]
    fn universal_examples() {
        let u1 = universal_graph(1).unwrap();
        assert_eq!((u1.len(), u1.edge_count()), (2, 0));
        let u2 = universal_graph(2).unwrap();
        let comps = components(&u2);
        assert_eq!(u2.len(), 6);
        assert_eq!(comps.len(), 3);
        assert!(matches!(universal_graph(6), Err(Error::AboveCap { .. })));
        assert!(universal_graph(0).is_err());
    }

    #[test]
    fn ec_property() {
        let ok = CommutationGraph::from_edges(
            &["x", "y", "z"],
            &[("x", "y", EdgeTag::C), ("y", "z", EdgeTag::C), ("x", "z", EdgeTag::C)],
        )
        .unwrap();
        assert!(ok.check_ec_property().is_ok());
        let bad = CommutationGraph::from_edges(&["x", "y", "z"], &[("x", "y", EdgeTag::C), ("y", "z", EdgeTag::C)])
            .unwrap();
        assert!(bad.check_ec_property().is_err());
    }
}
