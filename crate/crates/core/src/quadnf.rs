//! Normalization of quadratic words by explicit automorphisms of the
//! ambient group, with the witnessing generator map and its inverse.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::embed::GeneratorMap;
use crate::error::{Error, Result};
use crate::pcgraph::{CommutationGraph, EdgeTag, VertexSet};
use crate::words::{equal, format_letters, invert, parse_letters, reduce, GroupWord, Letter};

/// Word over variables and coefficients of `ℳ`. Every variable that occurs
/// does so exactly twice.
#[derive(Clone, Debug)]
pub struct QuadraticWord {
    pub graph: Arc<CommutationGraph>,
    pub vars: VertexSet,
    pub letters: Vec<Letter>,
}

fn occurrences(letters: &[Letter], vars: &VertexSet) -> BTreeMap<usize, Vec<usize>> {
    let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, l) in letters.iter().enumerate() {
        if vars.contains(&l.gen) {
            m.entry(l.gen).or_default().push(i);
        }
    }
    m
}

fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn substitute(w: &[Letter], x: usize, img: &[Letter]) -> Vec<Letter> {
    let inv = invert(img);
    let mut out = Vec::with_capacity(w.len());
    for l in w {
        if l.gen != x {
            out.push(*l);
        } else if l.inv {
            out.extend_from_slice(&inv);
        } else {
            out.extend_from_slice(img);
        }
    }
    free_reduce(&out)
}

fn substitute_all(w: &[Letter], images: &[Vec<Letter>]) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in w {
        let img = &images[l.gen];
        if l.inv {
            out.extend(invert(img));
        } else {
            out.extend_from_slice(img);
        }
    }
    free_reduce(&out)
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    free_reduce(&parts.concat())
}

impl QuadraticWord {
    pub fn new(graph: Arc<CommutationGraph>, vars: VertexSet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(&v) = vars.iter().find(|&&v| v >= graph.len()) {
            return Err(Error::VertexOutOfRange(v));
        }
        if let Some(l) = letters.iter().find(|l| l.gen >= graph.len()) {
            return Err(Error::VertexOutOfRange(l.gen));
        }
        for (v, pos) in occurrences(&letters, &vars) {
            if pos.len() != 2 {
                return Err(Error::Invalid(format!(
                    "not quadratic: variable `{}` occurs {} times",
                    graph.name(v),
                    pos.len()
                )));
            }
        }
        Ok(QuadraticWord { graph, vars, letters })
    }

    /// Builds `ℳ` from declared names. Coefficient edges become d-edges;
    /// variables commute with nothing.
    pub fn from_names<S: AsRef<str>>(vars: &[S], coeffs: &[S], coeff_edges: &[(S, S)], word: &str) -> Result<Self> {
        let mut names: Vec<&str> = vars.iter().map(|s| s.as_ref()).collect();
        for c in coeffs {
            if names.contains(&c.as_ref()) {
                return Err(Error::Invalid(format!("`{}` is declared both variable and coefficient", c.as_ref())));
            }
            names.push(c.as_ref());
        }
        let mut g = CommutationGraph::new(&names)?;
        for (a, b) in coeff_edges {
            let (i, j) = (g.index_of(a.as_ref())?, g.index_of(b.as_ref())?);
            if i < vars.len() || j < vars.len() {
                return Err(Error::Invalid("commutations are only allowed between coefficients".into()));
            }
            g.add_edge(i, j, EdgeTag::D)?;
        }
        let letters = parse_letters(&g, word)?;
        QuadraticWord::new(Arc::new(g), (0..vars.len()).collect(), letters)
    }

    pub fn is_variable(&self, g: usize) -> bool {
        self.vars.contains(&g)
    }

    /// Variables that actually occur.
    pub fn variables(&self) -> VertexSet {
        occurrences(&self.letters, &self.vars).into_keys().collect()
    }

    pub fn as_group_word(&self) -> GroupWord {
        GroupWord::new(self.graph.clone(), self.letters.clone()).expect("letters checked")
    }

    pub fn to_text(&self) -> String {
        format_letters(&self.graph, &self.letters)
    }
}

/// One atom of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Atom {
    Square(usize),
    Commutator(usize, usize),
}

/// Parsed normal form: atoms, then coefficient conjugates `c^y`, then a
/// coefficient tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalShape {
    pub atoms: Vec<Atom>,
    pub conjugates: Vec<(Vec<Letter>, usize)>,
    pub tail: Vec<Letter>,
}

impl NormalShape {
    pub fn orientable(&self) -> bool {
        self.atoms.iter().all(|a| matches!(a, Atom::Commutator(..)))
    }

    pub fn squares(&self) -> usize {
        self.atoms.iter().filter(|a| matches!(a, Atom::Square(_))).count()
    }

    pub fn commutators(&self) -> usize {
        self.atoms.len() - self.squares()
    }

    /// Commutator count when orientable, square count otherwise.
    pub fn genus(&self) -> usize {
        if self.orientable() {
            self.commutators()
        } else {
            self.squares()
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for a in &self.atoms {
            match *a {
                Atom::Square(x) => out.extend([Letter::pos(x), Letter::pos(x)]),
                Atom::Commutator(x, y) => out.extend([Letter::neg(x), Letter::neg(y), Letter::pos(x), Letter::pos(y)]),
            }
        }
        for (c, y) in &self.conjugates {
            out.push(Letter::neg(*y));
            out.extend_from_slice(c);
            out.push(Letter::pos(*y));
        }
        out.extend_from_slice(&self.tail);
        out
    }
}

/// Reads `w` against the normal-form grammar: squares only or commutators
/// only, then conjugates of nonempty coefficient words by distinct fresh
/// variables, then coefficients. Each variable is used by exactly one item.
pub fn parse_normal_shape(w: &QuadraticWord) -> Result<NormalShape> {
    let l = &w.letters;
    let is_var = |i: usize| i < l.len() && w.is_variable(l[i].gen);
    let mut used = VertexSet::new();
    let fresh = |v: usize, used: &mut VertexSet| -> Result<()> {
        if used.insert(v) {
            Ok(())
        } else {
            Err(Error::Shape(format!("variable `{}` reused", w.graph.name(v))))
        }
    };
    let mut atoms = Vec::new();
    let mut i = 0;
    loop {
        if is_var(i) && is_var(i + 1) && l[i] == l[i + 1] && !l[i].inv {
            fresh(l[i].gen, &mut used)?;
            atoms.push(Atom::Square(l[i].gen));
            i += 2;
        } else if i + 3 < l.len()
            && (i..i + 4).all(is_var)
            && l[i].inv
            && l[i + 1].inv
            && l[i + 2] == l[i].inverse()
            && l[i + 3] == l[i + 1].inverse()
            && l[i].gen != l[i + 1].gen
        {
            fresh(l[i].gen, &mut used)?;
            fresh(l[i + 1].gen, &mut used)?;
            atoms.push(Atom::Commutator(l[i].gen, l[i + 1].gen));
            i += 4;
        } else {
            break;
        }
    }
    let shape_kinds = atoms.iter().map(|a| matches!(a, Atom::Square(_))).collect::<std::collections::BTreeSet<_>>();
    if shape_kinds.len() > 1 {
        return Err(Error::Shape("squares and commutators are mixed".into()));
    }
    let mut conjugates = Vec::new();
    while is_var(i) && l[i].inv {
        let y = l[i].gen;
        let mut j = i + 1;
        while j < l.len() && !is_var(j) {
            j += 1;
        }
        if j == i + 1 || j == l.len() || l[j] != Letter::pos(y) {
            return Err(Error::Shape(format!("malformed conjugate at position {i}")));
        }
        fresh(y, &mut used)?;
        conjugates.push((l[i + 1..j].to_vec(), y));
        i = j + 1;
    }
    if let Some(j) = (i..l.len()).find(|&j| is_var(j)) {
        return Err(Error::Shape(format!("unexpected variable at position {j}")));
    }
    Ok(NormalShape { atoms, conjugates, tail: l[i..].to_vec() })
}

/// Output of [`normalize`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub nf: QuadraticWord,
    pub shape: NormalShape,
    pub auto: GeneratorMap,
    pub inverse: GeneratorMap,
    /// Variables left in the unprocessed part after each reduction step.
    pub trace: Vec<usize>,
}

struct State<'a> {
    g: &'a CommutationGraph,
    vars: &'a VertexSet,
    r: Vec<Letter>,
    auto: Vec<Vec<Letter>>,
    inv: Vec<Vec<Letter>>,
}

impl State<'_> {
    /// Applies `x ↦ img`, whose inverse substitution is `x ↦ back`.
    fn elementary(&mut self, x: usize, img: &[Letter], back: &[Letter]) {
        self.r = substitute(&self.r, x, img);
        for a in &mut self.auto {
            *a = substitute(a, x, img);
        }
        self.inv[x] = substitute_all(back, &self.inv);
    }

    /// `x ↦ u x v`.
    fn transvect(&mut self, x: usize, u: &[Letter], v: &[Letter]) {
        let img = cat(&[u, &[Letter::pos(x)], v]);
        let back = cat(&[&invert(u), &[Letter::pos(x)], &invert(v)]);
        self.elementary(x, &img, &back);
    }

    fn flip(&mut self, x: usize) {
        self.elementary(x, &[Letter::neg(x)], &[Letter::neg(x)]);
    }

    fn occ(&self) -> BTreeMap<usize, Vec<usize>> {
        occurrences(&self.r, self.vars)
    }

    fn var_count(&self, w: &[Letter]) -> usize {
        w.iter().filter(|l| self.vars.contains(&l.gen)).map(|l| l.gen).collect::<VertexSet>().len()
    }

    fn least(&self, vs: impl Iterator<Item = usize>) -> Option<usize> {
        vs.min_by(|&a, &b| self.g.name(a).cmp(self.g.name(b)))
    }
}

/// `x²[y,z] → x²y²z²`.
fn absorb_commutator(st: &mut State<'_>, x: usize, y: usize, z: usize) {
    st.transvect(x, &[], &[Letter::pos(y)]);
    st.transvect(x, &[], &[Letter::pos(z)]);
    st.transvect(x, &[], &[Letter::neg(y)]);
    st.transvect(y, &[], &[Letter::neg(x)]);
    st.transvect(z, &[Letter::neg(y)], &[]);
    st.flip(y);
}

/// Brings `w` to normal form. Same-sign variables go first; ties go to the
/// least variable name.
pub fn normalize(w: &QuadraticWord) -> Result<Normalization> {
    let g = &*w.graph;
    let n = g.len();
    let mut st = State {
        g,
        vars: &w.vars,
        r: free_reduce(&w.letters),
        auto: (0..n).map(|i| vec![Letter::pos(i)]).collect(),
        inv: (0..n).map(|i| vec![Letter::pos(i)]).collect(),
    };
    let mut atoms: Vec<Atom> = Vec::new();
    let mut conjugates: Vec<(Vec<Letter>, usize)> = Vec::new();
    let mut trace = vec![st.var_count(&st.r)];

    loop {
        let occ = st.occ();
        let same = st.least(occ.iter().filter(|(_, p)| st.r[p[0]].inv == st.r[p[1]].inv).map(|(&v, _)| v));
        if let Some(x) = same {
            if st.r[occ[&x][0]].inv {
                st.flip(x);
            }
            let (p, q) = (occ[&x][0], occ[&x][1]);
            let (a, b, c) = (st.r[..p].to_vec(), st.r[p + 1..q].to_vec(), st.r[q + 1..].to_vec());
            st.transvect(x, &invert(&a), &cat(&[&a, &invert(&b)]));
            let rest = cat(&[&a, &invert(&b), &c]);
            debug_assert_eq!(st.r, [&[Letter::pos(x), Letter::pos(x)][..], &rest].concat());
            st.r = rest;
            atoms.push(Atom::Square(x));
            trace.push(st.var_count(&st.r));
            continue;
        }
        if occ.is_empty() {
            break;
        }
        // Mixed variable with the fewest variables strictly between its occurrences.
        let x = occ
            .iter()
            .min_by(|(&a, pa), (&b, pb)| {
                let ka = st.var_count(&st.r[pa[0] + 1..pa[1]]);
                let kb = st.var_count(&st.r[pb[0] + 1..pb[1]]);
                ka.cmp(&kb).then_with(|| g.name(a).cmp(g.name(b)))
            })
            .map(|(&v, _)| v)
            .expect("nonempty");
        if !st.r[occ[&x][0]].inv {
            st.flip(x);
        }
        let (p, q) = (occ[&x][0], occ[&x][1]);
        let inner = st.r[p + 1..q].to_vec();
        let inner_vars: Vec<usize> = inner.iter().filter(|l| w.vars.contains(&l.gen)).map(|l| l.gen).collect();
        if inner_vars.is_empty() {
            let (a, c) = (st.r[..p].to_vec(), st.r[q + 1..].to_vec());
            st.transvect(x, &[], &invert(&c));
            let rest = cat(&[&a, &c]);
            debug_assert_eq!(st.r, [&rest[..], &[Letter::neg(x)], &inner, &[Letter::pos(x)]].concat());
            st.r = rest;
            conjugates.insert(0, (inner, x));
            trace.push(st.var_count(&st.r));
            continue;
        }
        let y = st.least(inner_vars.into_iter()).expect("nonempty");
        let k = inner.iter().position(|l| l.gen == y).expect("present");
        if inner[k].inv {
            st.flip(y);
        }
        let (b1, b2) = (inner[..k].to_vec(), inner[k + 1..].to_vec());
        st.transvect(y, &invert(&b1), &invert(&b2));
        let occ = st.occ();
        let (px, qx) = (occ[&x][0], occ[&x][1]);
        let qy = *occ[&y].iter().find(|&&i| st.r[i] == Letter::neg(y)).expect("mixed");
        debug_assert!(qx == px + 2 && st.r[px + 1] == Letter::pos(y));
        if qy > qx {
            // R = A x' y x E y' C
            let a = st.r[..px].to_vec();
            let e = st.r[qx + 1..qy].to_vec();
            let c = st.r[qy + 1..].to_vec();
            st.transvect(x, &[], &invert(&e));
            let ae = cat(&[&a, &e]);
            let qi = invert(&ae);
            st.transvect(x, &qi, &ae);
            st.transvect(y, &qi, &ae);
            st.flip(y);
            let rest = cat(&[&ae, &c]);
            let comm = [Letter::neg(x), Letter::neg(y), Letter::pos(x), Letter::pos(y)];
            debug_assert_eq!(st.r, [&comm[..], &rest].concat());
            st.r = rest;
            atoms.push(Atom::Commutator(x, y));
        } else {
            // R = A y' D x' y x C
            let a = st.r[..qy].to_vec();
            let d = st.r[qy + 1..px].to_vec();
            let c = st.r[qx + 1..].to_vec();
            st.transvect(x, &[], &d);
            let ai = invert(&a);
            st.transvect(x, &ai, &a);
            st.transvect(y, &ai, &a);
            let rest = cat(&[&a, &d, &c]);
            let comm = [Letter::neg(y), Letter::neg(x), Letter::pos(y), Letter::pos(x)];
            debug_assert_eq!(st.r, [&comm[..], &rest].concat());
            st.r = rest;
            atoms.push(Atom::Commutator(y, x));
        }
        if let [.., Atom::Square(s), Atom::Commutator(u, v)] = atoms[..] {
            absorb_commutator(&mut st, s, u, v);
            atoms.pop();
            atoms.extend([Atom::Square(u), Atom::Square(v)]);
        }
        trace.push(st.var_count(&st.r));
    }

    // Move the coefficient tail T to the right of the conjugates.
    let tail = std::mem::take(&mut st.r);
    if !tail.is_empty() {
        for &(_, y) in &conjugates {
            st.transvect(y, &[], &tail);
        }
    }
    let shape = NormalShape { atoms, conjugates, tail };
    let nf = QuadraticWord::new(w.graph.clone(), w.vars.clone(), shape.letters())?;
    let wrap = |imgs: Vec<Vec<Letter>>| -> Result<GeneratorMap> {
        let images = imgs.into_iter().map(|l| GroupWord::new(w.graph.clone(), l)).collect::<Result<Vec<_>>>()?;
        GeneratorMap::new(w.graph.clone(), w.graph.clone(), images)
    };
    let out = Normalization { nf, shape, auto: wrap(st.auto)?, inverse: wrap(st.inv)?, trace };
    debug_assert_eq!(free_reduce(&out.auto.apply_letters(&w.letters)), out.nf.letters);
    Ok(out)
}

/// Substitutes `auto` into `w` and reduces in `ℳ`.
pub fn apply(auto: &GeneratorMap, w: &QuadraticWord) -> Result<QuadraticWord> {
    if *auto.source != *w.graph {
        return Err(Error::GraphMismatch);
    }
    let img = reduce(&auto.apply(&w.as_group_word())?);
    QuadraticWord::new(auto.target.clone(), w.vars.clone(), img.letters().to_vec())
}

/// `auto(w)` equals the normal form in `ℳ`.
pub fn check_normalization(w: &QuadraticWord, n: &Normalization) -> Result<bool> {
    equal(&n.auto.apply(&w.as_group_word())?, &n.nf.as_group_word())
}

/// Random freely reduced quadratic word over `x1..x{nvars}` and coefficients
/// `a, b, c, …`, with `coeff_letters` coefficient letters and coefficient
/// edges drawn with probability `p`.
pub fn random_quadratic<R: Rng>(rng: &mut R, nvars: usize, ncoeffs: usize, coeff_letters: usize, p: f64) -> QuadraticWord {
    let vars: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
    let coeffs: Vec<String> = (0..ncoeffs).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..ncoeffs {
        for j in i + 1..ncoeffs {
            if rng.gen_bool(p) {
                edges.push((coeffs[i].clone(), coeffs[j].clone()));
            }
        }
    }
    let base = QuadraticWord::from_names(&vars, &coeffs, &edges, "").expect("distinct names");
    let coeff_letters = if ncoeffs == 0 { 0 } else { coeff_letters };
    loop {
        let mut seq = Vec::new();
        for v in 0..nvars {
            seq.push(Letter { gen: v, inv: rng.gen_bool(0.5) });
            seq.push(Letter { gen: v, inv: rng.gen_bool(0.5) });
        }
        for _ in 0..coeff_letters {
            seq.push(Letter { gen: nvars + rng.gen_range(0..ncoeffs), inv: rng.gen_bool(0.5) });
        }
        seq.shuffle(rng);
        if free_reduce(&seq) == seq {
            return QuadraticWord { letters: seq, ..base };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qw(vars: &[&str], coeffs: &[&str], w: &str) -> QuadraticWord {
        QuadraticWord::from_names(vars, coeffs, &[], w).unwrap()
    }

    #[test]
    fn commutator_is_already_normal() {
        let w = qw(&["x1", "x2"], &[], "x1' x2' x1 x2");
        let n = normalize(&w).unwrap();
        assert_eq!(n.nf.to_text(), "x1' x2' x1 x2");
        assert!(n.auto.images.iter().enumerate().all(|(i, im)| im.letters() == [Letter::pos(i)]));
    }

    #[test]
    fn same_sign_square() {
        let w = qw(&["x"], &["a", "b", "c"], "a x b x c");
        let n = normalize(&w).unwrap();
        assert_eq!(n.nf.to_text(), "x x a b' c");
        assert_eq!(n.auto.image(0).to_text(), "a' x a b'");
    }

    #[test]
    fn mixed_gives_commutator() {
        let w = qw(&["x", "y"], &["c"], "x' y x y' c");
        let n = normalize(&w).unwrap();
        assert_eq!(n.nf.to_text(), "x' y' x y c");
        assert!(n.shape.orientable());
    }

    #[test]
    fn conjugate_then_tail() {
        let w = qw(&["x"], &["a", "b"], "a x' b x");
        let n = normalize(&w).unwrap();
        assert_eq!(n.nf.to_text(), "x' b x a");
        assert!(check_normalization(&w, &n).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(QuadraticWord::from_names(&["x"], &["a"], &[], "x a").is_err());
        assert!(QuadraticWord::from_names(&["x"], &["x"], &[], "x x").is_err());
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let nv = rng.gen_range(0..=8);
            let w = random_quadratic(&mut rng, nv, 3, 5, 0.3);
            let n = normalize(&w).unwrap();
            parse_normal_shape(&n.nf).unwrap();
            assert!(check_normalization(&w, &n).unwrap(), "{}", w.to_text());
            let back = apply(&n.inverse, &apply(&n.auto, &w).unwrap()).unwrap();
            assert!(equal(&back.as_group_word(), &w.as_group_word()).unwrap());
        }
    }
}
