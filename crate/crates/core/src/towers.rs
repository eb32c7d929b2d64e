//! Graph towers: floors of fresh generators over co-irreducible subgroups,
//! the d/c edge bookkeeping, floor relations and amalgam decompositions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcgraph::{complement_connected, is_coirreducible, link, CommutationGraph, EdgeTag, VertexSet};
use crate::present::{Presentation, SymWord};
use crate::words::{alphabet, cyclic_reduce, is_irreducible, least_root, GroupWord};

/// Coefficients of a quadratic floor: `u` has `m − 2g` entries (indexed
/// `2g+1..=m`), `v` has `2g`, `w` has `m − 2g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticData {
    pub orientable: bool,
    pub genus: usize,
    pub m: usize,
    #[serde(default)]
    pub u: Vec<SymWord>,
    #[serde(default)]
    pub v: Vec<SymWord>,
    #[serde(default)]
    pub w: Vec<SymWord>,
}

impl QuadraticData {
    /// Number of squared or commutator atoms.
    pub fn atoms(&self) -> usize {
        2 * self.genus
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.atoms();
        if k > self.m {
            return Err(Error::Shape(format!("2g = {k} exceeds m = {}", self.m)));
        }
        if self.v.len() != k || self.u.len() != self.m - k || self.w.len() != self.m - k {
            return Err(Error::Shape("coefficient counts do not match g and m".into()));
        }
        Ok(())
    }

    /// `W = LHS · RHS⁻¹` in the fresh generators `x`.
    pub fn relation(&self, x: &[String]) -> SymWord {
        let k = self.atoms();
        let xs: Vec<SymWord> = x.iter().map(|n| SymWord::gen(n)).collect();
        let mut lhs: Vec<SymWord> = Vec::new();
        let mut rhs: Vec<SymWord> = Vec::new();
        for i in (0..k).step_by(2) {
            if self.orientable {
                lhs.push(SymWord::commutator(&xs[i], &xs[i + 1]));
                rhs.push(SymWord::commutator(&self.v[i], &self.v[i + 1]));
            } else {
                lhs.push(xs[i].pow(2));
                lhs.push(xs[i + 1].pow(2));
                rhs.push(self.v[i].pow(2));
                rhs.push(self.v[i + 1].pow(2));
            }
        }
        for j in 0..self.m - k {
            lhs.push(SymWord::conjugate(&self.u[j], &xs[k + j]));
            rhs.push(SymWord::conjugate(&self.u[j], &self.w[j]));
        }
        SymWord::product(&lhs).mul(&SymWord::product(&rhs).inverse())
    }

    pub fn is_rank_one_torus(&self) -> bool {
        self.orientable && self.genus == 1 && self.m == 2 && self.v.iter().all(|w| w.free_reduce().is_empty())
    }
}

/// Orientable: `2 − 2g − (m − 2g)`; non-orientable with `k = 2g` squares:
/// `2 − k − (m − k)`.
pub fn euler_characteristic(q: &QuadraticData) -> i64 {
    let m = q.m as i64;
    let k = q.atoms() as i64;
    if q.orientable {
        2 - 2 * q.genus as i64 - (m - 2 * q.genus as i64)
    } else {
        2 - k - (m - k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FloorKind {
    Basic,
    AbelianRoot { u: SymWord },
    AbelianBasic,
    Quadratic { quadratic: QuadraticData },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Floor {
    #[serde(flatten)]
    pub kind: FloorKind,
    pub fresh: Vec<String>,
    #[serde(rename = "K", default)]
    pub k: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KPerpKind {
    /// All pairs c-edged (or a single vertex).
    Abelian,
    /// Complement of the induced graph connected.
    Indecomposable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerCase {
    A1,
    A2,
    B1,
    B2,
    C,
}

impl fmt::Display for TowerCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerCase::A1 => "a1",
            TowerCase::A2 => "a2",
            TowerCase::B1 => "b1",
            TowerCase::B2 => "b2",
            TowerCase::C => "c",
        })
    }
}

/// What adding a floor computed and assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloorReport {
    pub level: usize,
    pub k_perp: Vec<String>,
    pub k_perp_kind: KPerpKind,
    /// Concrete amalgamating centraliser, when all floors below are basic.
    pub centralizer: Option<Vec<String>>,
    /// Relations not already implied by edges of the new graph.
    pub relations: Vec<SymWord>,
    /// Relations over a centraliser that is only named.
    pub symbolic: Vec<String>,
    pub assumed: Vec<String>,
    pub case: TowerCase,
    pub euler_characteristic: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct GraphTower {
    pub base: Arc<CommutationGraph>,
    pub floors: Vec<Floor>,
    /// `Γ_0, …, Γ_h`.
    pub graphs: Vec<Arc<CommutationGraph>>,
    pub reports: Vec<FloorReport>,
}

fn names(g: &CommutationGraph, s: &VertexSet) -> Vec<String> {
    let mut v = g.set_names(s);
    v.sort();
    v
}

fn parse_in(g: &Arc<CommutationGraph>, w: &SymWord) -> Result<GroupWord> {
    GroupWord::parse(g.clone(), &w.to_string())
}

/// Pairwise commutation check inside a partially commutative group.
fn is_abelian(ws: &[GroupWord]) -> bool {
    ws.iter().enumerate().all(|(i, a)| ws[i + 1..].iter().all(|b| a.concat(b).expect("same graph") == b.concat(a).expect("same graph")))
}

impl GraphTower {
    /// Height-0 tower. Every edge of the base is a d-edge.
    pub fn new(base: Arc<CommutationGraph>) -> Result<Self> {
        if base.has_c_edges() {
            return Err(Error::Invalid("base graph must have only d-edges".into()));
        }
        Ok(GraphTower { base: base.clone(), floors: Vec::new(), graphs: vec![base], reports: Vec::new() })
    }

    pub fn height(&self) -> usize {
        self.floors.len()
    }

    pub fn graph(&self, l: usize) -> Result<&Arc<CommutationGraph>> {
        self.graphs.get(l).ok_or_else(|| Error::Invalid(format!("level {l} above height {}", self.height())))
    }

    pub fn top(&self) -> &Arc<CommutationGraph> {
        self.graphs.last().expect("height-0 graph is present")
    }

    /// Floors strictly below level `l` are all basic.
    fn basic_below(&self, l: usize) -> bool {
        self.floors[..l - 1].iter().all(|f| f.kind == FloorKind::Basic)
    }

    /// All non-edge relations of the tower.
    pub fn extra_relations(&self) -> Vec<SymWord> {
        self.reports.iter().flat_map(|r| r.relations.iter().cloned()).collect()
    }

    pub fn add_floor(&self, floor: Floor) -> Result<GraphTower> {
        let level = self.height() + 1;
        let prev = self.top().clone();
        let k = prev.vertex_set(&floor.k)?;
        if !is_coirreducible(&prev, &k, Some(EdgeTag::D))? {
            return Err(Error::Precondition(format!("K = {{{}}} is not co-irreducible", floor.k.join(", "))));
        }
        let kp = link(&prev, &k, Some(EdgeTag::D))?;
        let all_c = kp.iter().all(|&a| kp.iter().all(|&b| a == b || prev.tag(a, b) == Some(EdgeTag::C)));
        let kind = if kp.len() == 1 || (kp.len() > 1 && all_c) {
            KPerpKind::Abelian
        } else if complement_connected(&prev, &kp, None) {
            KPerpKind::Indecomposable
        } else {
            return Err(Error::Precondition("K⊥ is neither c-abelian nor directly indecomposable".into()));
        };
        if floor.fresh.is_empty() {
            return Err(Error::Invalid("a floor needs fresh generators".into()));
        }
        let mut g = prev.with_vertices(&floor.fresh)?;
        let xs: Vec<usize> = floor.fresh.iter().map(|n| g.index_of(n)).collect::<Result<_>>()?;
        for &x in &xs {
            for &v in &k {
                g.add_edge(x, v, EdgeTag::D)?;
            }
        }
        let abelian = kind == KPerpKind::Abelian;
        let mut rank_one = false;
        let mut euler = None;
        let mut assumed = Vec::new();
        let concrete = self.basic_below(level);
        let c_among = match &floor.kind {
            FloorKind::Basic => abelian,
            FloorKind::AbelianRoot { .. } | FloorKind::AbelianBasic => true,
            FloorKind::Quadratic { quadratic: q } => {
                q.validate()?;
                if q.m != xs.len() {
                    return Err(Error::Shape(format!("quadratic floor has m = {} but {} fresh generators", q.m, xs.len())));
                }
                let coeffs: Vec<GroupWord> =
                    q.u.iter().chain(&q.v).chain(&q.w).map(|w| parse_in(&prev, w)).collect::<Result<_>>()?;
                if coeffs.iter().any(|w| !alphabet(w).is_subset(&kp)) {
                    return Err(Error::Precondition("coefficients must lie in K⊥".into()));
                }
                euler = Some(euler_characteristic(q));
                rank_one = q.is_rank_one_torus();
                if !rank_one {
                    let star = euler.unwrap() <= -2;
                    let punctured_torus = q.orientable && q.genus == 1 && q.m == 3;
                    let kk = q.atoms();
                    let image: Vec<GroupWord> = {
                        let mut out = Vec::new();
                        for i in (0..kk).step_by(2) {
                            let (a, b) = (&coeffs[q.u.len() + i], &coeffs[q.u.len() + i + 1]);
                            if q.orientable {
                                out.push(a.inverse().concat(&b.inverse())?.concat(a)?.concat(b)?);
                            } else {
                                out.push(a.pow(2));
                                out.push(b.pow(2));
                            }
                        }
                        for j in 0..q.m - kk {
                            let (u, w) = (&coeffs[j], &coeffs[q.u.len() + kk + j]);
                            out.push(w.inverse().concat(u)?.concat(w)?);
                        }
                        out
                    };
                    if concrete {
                        let star_ok = star || (punctured_torus && !is_abelian(&coeffs));
                        let star2_ok = q.genus + q.m >= 2 && !is_abelian(&image);
                        if !star_ok && !star2_ok {
                            return Err(Error::Precondition("quadratic floor satisfies neither ⊛ nor ⊛⊛".into()));
                        }
                    } else if !star {
                        assumed.push("⊛/⊛⊛ taken on trust: non-abelian coefficient subgroup".into());
                    }
                }
                abelian
            }
        };
        if c_among {
            for (i, &a) in xs.iter().enumerate() {
                for &b in &xs[i + 1..] {
                    g.add_edge(a, b, EdgeTag::C)?;
                }
            }
        }
        if rank_one && !c_among {
            g.add_edge(xs[0], xs[1], EdgeTag::C)?;
        }
        if abelian {
            for &x in &xs {
                for &v in &kp {
                    g.add_edge(x, v, EdgeTag::C)?;
                }
            }
        }
        g.check_ec_property()?;
        let g = Arc::new(g);

        let mut relations: Vec<SymWord> = Vec::new();
        let mut symbolic = Vec::new();
        let mut push = |r: SymWord| {
            let r = r.free_reduce();
            if !r.is_empty() && !relations.contains(&r) {
                relations.push(r);
            }
        };
        let absorbed = |c: usize, x: usize| g.commute(c, x);
        let kp_centralizer = || -> Result<VertexSet> {
            let mut c = link(&prev, &kp, None)?;
            c.extend(kp.iter().filter(|&&a| kp.iter().all(|&b| a == b || prev.commute(a, b))));
            Ok(c)
        };
        let mut centralizer = None;
        let emit_basic = |push: &mut dyn FnMut(SymWord), symbolic: &mut Vec<String>| -> Result<Option<VertexSet>> {
            if concrete {
                let c = kp_centralizer()?;
                for &cv in &c {
                    for &x in &xs {
                        if !absorbed(cv, x) {
                            push(SymWord::commutator(&SymWord::gen(prev.name(cv)), &SymWord::gen(g.name(x))));
                        }
                    }
                }
                Ok(Some(c))
            } else {
                for x in &floor.fresh {
                    symbolic.push(format!("[C_{{T^{}}}(K⊥), {x}]", level - 1));
                }
                Ok(None)
            }
        };
        let case = match &floor.kind {
            FloorKind::Basic => {
                centralizer = emit_basic(&mut push, &mut symbolic)?;
                if abelian {
                    TowerCase::A2
                } else {
                    TowerCase::A1
                }
            }
            FloorKind::AbelianBasic => {
                centralizer = emit_basic(&mut push, &mut symbolic)?;
                if abelian {
                    TowerCase::A2
                } else {
                    TowerCase::B2
                }
            }
            FloorKind::AbelianRoot { u } => {
                let uw = parse_in(&prev, u)?;
                if uw.is_trivial() {
                    return Err(Error::Precondition("u must be nontrivial".into()));
                }
                let (core, _) = cyclic_reduce(&uw);
                if core.canonical() != uw.canonical() {
                    return Err(Error::Precondition("u must be cyclically reduced".into()));
                }
                if !is_irreducible(&uw)? || least_root(&uw)?.1 != 1 {
                    return Err(Error::Precondition("u must be an irreducible root element".into()));
                }
                if !alphabet(&uw).is_subset(&kp) {
                    return Err(Error::Precondition("u must lie in K⊥".into()));
                }
                let uu = SymWord::parse(&uw.to_text());
                for x in &floor.fresh {
                    push(SymWord::commutator(&uu, &SymWord::gen(x)));
                }
                if concrete {
                    let c = link(&prev, &alphabet(&uw), None)?;
                    for &cv in &c {
                        for &x in &xs {
                            if !absorbed(cv, x) {
                                push(SymWord::commutator(&SymWord::gen(prev.name(cv)), &SymWord::gen(g.name(x))));
                            }
                        }
                    }
                    centralizer = Some(c);
                } else {
                    for x in &floor.fresh {
                        symbolic.push(format!("[C_{{T^{}}}(u), {x}]", level - 1));
                    }
                }
                TowerCase::B1
            }
            FloorKind::Quadratic { quadratic: q } => {
                centralizer = emit_basic(&mut push, &mut symbolic)?;
                if rank_one {
                    if abelian {
                        TowerCase::A2
                    } else {
                        TowerCase::B2
                    }
                } else {
                    push(q.relation(&floor.fresh));
                    assumed.push("C(K⊥) and ⟨u_{2g+1},…,u_m⟩ generate their direct product".into());
                    TowerCase::C
                }
            }
        };
        let report = FloorReport {
            level,
            k_perp: names(&prev, &kp),
            k_perp_kind: kind,
            centralizer: centralizer.map(|c| names(&prev, &c)),
            relations,
            symbolic,
            assumed,
            case,
            euler_characteristic: euler,
        };
        let mut out = self.clone();
        out.floors.push(floor);
        out.graphs.push(g);
        out.reports.push(report);
        Ok(out)
    }

    /// Amalgam decomposition of level `l` over level `l − 1`.
    pub fn presentation(&self, l: usize) -> Result<TowerPresentation> {
        if l == 0 || l > self.height() {
            return Err(Error::Invalid(format!("level {l} outside 1..={}", self.height())));
        }
        let r = &self.reports[l - 1];
        let f = &self.floors[l - 1];
        let below = format!("T^{}", l - 1);
        let xs = f.fresh.join(", ");
        let cname = |c: &Option<Vec<String>>, what: &str| match c {
            Some(v) => format!("⟨{}⟩", v.join(", ")),
            None => format!("C_{{{below}}}({what})"),
        };
        let comm = format!("⟨{xs} | [x_i,x_j]=1⟩");
        let text = match r.case {
            TowerCase::A1 => {
                let c = cname(&r.centralizer, "K⊥");
                format!("{below} *_{{{c}}} ({c} × ⟨{xs}⟩)")
            }
            TowerCase::A2 | TowerCase::B2 => {
                let c = cname(&r.centralizer, "K⊥");
                format!("{below} *_{{{c}}} ({c} × {comm})")
            }
            TowerCase::B1 => {
                let u = match &f.kind {
                    FloorKind::AbelianRoot { u } => u.to_string(),
                    _ => unreachable!("b1 is only produced by root floors"),
                };
                let c = match &r.centralizer {
                    Some(v) if v.is_empty() => format!("⟨{u}⟩"),
                    Some(v) => format!("⟨{u}⟩ × ⟨{}⟩", v.join(", ")),
                    None => format!("C_{{{below}}}({u})"),
                };
                format!("{below} *_{{{c}}} ({c} × {comm})")
            }
            TowerCase::C => {
                let q = match &f.kind {
                    FloorKind::Quadratic { quadratic } => quadratic,
                    _ => unreachable!("c is only produced by quadratic floors"),
                };
                let c = cname(&r.centralizer, "K⊥");
                let us: Vec<String> = q.u.iter().map(|u| u.to_string()).collect();
                let ugen = if us.is_empty() { String::new() } else { format!("{}, ", us.join(", ")) };
                let w = q.relation(&f.fresh);
                format!("{below} *_{{{c} × ⟨{}⟩}} (⟨{ugen}{xs} | {w}⟩ × {c})", us.join(", "))
            }
        };
        let g = &self.graphs[l];
        let mut p = Presentation::new(g.names().to_vec());
        for (a, b, _) in g.edges() {
            p.push(SymWord::commutator(&SymWord::gen(g.name(a)), &SymWord::gen(g.name(b))));
        }
        let mut notes: Vec<String> = Vec::new();
        for rep in &self.reports[..l] {
            for rel in &rep.relations {
                p.push(rel.clone());
            }
            notes.extend(rep.symbolic.iter().cloned());
            notes.extend(rep.assumed.iter().cloned());
        }
        p.notes = notes;
        Ok(TowerPresentation { level: l, case: r.case, decomposition: text, presentation: p })
    }

    /// Kills each floor's fresh generators (or sends quadratic ones to their
    /// coefficients) and checks every floor relation becomes trivial in the
    /// group of the previous graph. Returns `(checked, skipped)`.
    pub fn retraction_check(&self) -> Result<(usize, usize)> {
        let mut checked = 0;
        for (i, (f, r)) in self.floors.iter().zip(&self.reports).enumerate() {
            let prev = &self.graphs[i];
            let image = |n: &str| -> Option<SymWord> {
                let j = f.fresh.iter().position(|x| x == n)?;
                Some(match &f.kind {
                    FloorKind::Quadratic { quadratic: q } => {
                        let k = q.atoms();
                        if j < k {
                            q.v[j].clone()
                        } else {
                            q.w[j - k].clone()
                        }
                    }
                    _ => SymWord::empty(),
                })
            };
            for rel in &r.relations {
                let w = parse_in(prev, &rel.substitute(&image))?;
                if !w.is_trivial() {
                    return Err(Error::Precondition(format!("relation {rel} does not retract at level {}", i + 1)));
                }
                checked += 1;
            }
        }
        let skipped = self.reports.iter().map(|r| r.symbolic.len()).sum();
        Ok((checked, skipped))
    }

    /// Per-floor reading over a free base.
    pub fn ntq_degeneration_check(&self) -> Result<Vec<(usize, TowerCase, &'static str)>> {
        if self.base.edge_count() > 0 {
            return Err(Error::Precondition("base graph is not edgeless".into()));
        }
        Ok(self
            .reports
            .iter()
            .map(|r| {
                let what = match r.case {
                    TowerCase::A1 => "free product with a free group",
                    TowerCase::B2 => "free product with a free abelian group",
                    TowerCase::C => "amalgamated product with a surface group",
                    TowerCase::A2 | TowerCase::B1 => "extension of a centraliser",
                };
                (r.level, r.case, what)
            })
            .collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerPresentation {
    pub level: usize,
    pub case: TowerCase,
    pub decomposition: String,
    pub presentation: Presentation,
}

/// Largest clique of c-edges; c-edge classes are cliques by transitivity.
pub fn max_c_clique(g: &CommutationGraph) -> usize {
    let n = g.len();
    (0..n).map(|v| 1 + (0..n).filter(|&u| g.tag(u, v) == Some(EdgeTag::C)).count()).max().unwrap_or(0)
}

pub fn fresh_names(level: usize, m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{level}_{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Arc<CommutationGraph> {
        let d = EdgeTag::D;
        Arc::new(
            CommutationGraph::from_edges(&["a1", "a2", "b1", "b2"], &[("a1", "b1", d), ("a1", "b2", d), ("a2", "b1", d), ("a2", "b2", d)])
                .unwrap(),
        )
    }

    fn floor(kind: FloorKind, fresh: &[&str], k: &[&str]) -> Floor {
        Floor { kind, fresh: fresh.iter().map(|s| s.to_string()).collect(), k: k.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn basic_floor_over_k22() {
        let t = GraphTower::new(k22()).unwrap();
        let t = t.add_floor(floor(FloorKind::Basic, &["x1"], &["a1", "a2"])).unwrap();
        let g = t.top();
        let x = g.index_of("x1").unwrap();
        assert_eq!(g.tag(x, 0), Some(EdgeTag::D));
        assert_eq!(g.tag(x, 1), Some(EdgeTag::D));
        assert_eq!(g.tag(x, 2), None);
        assert_eq!(t.reports[0].case, TowerCase::A1);
        assert!(t.extra_relations().is_empty());
        assert!(t.presentation(1).unwrap().decomposition.starts_with("T^0 *_{⟨a1, a2⟩}"));
    }

    #[test]
    fn abelian_floor_over_z() {
        let z = Arc::new(CommutationGraph::new(&["a"]).unwrap());
        let t = GraphTower::new(z).unwrap();
        let t = t.add_floor(floor(FloorKind::AbelianBasic, &["x1", "x2"], &[])).unwrap();
        let g = t.top();
        assert_eq!(g.tag(1, 2), Some(EdgeTag::C));
        assert_eq!(g.tag(0, 1), Some(EdgeTag::C));
        assert_eq!(g.tag(0, 2), Some(EdgeTag::C));
        assert_eq!(t.reports[0].case, TowerCase::A2);
        assert_eq!(max_c_clique(g), 3);
    }

    #[test]
    fn euler_examples() {
        let q = |orientable, genus, m| QuadraticData { orientable, genus, m, u: vec![], v: vec![], w: vec![] };
        assert_eq!(euler_characteristic(&q(true, 1, 3)), -1);
        assert_eq!(euler_characteristic(&q(true, 2, 4)), -2);
        assert_eq!(euler_characteristic(&q(false, 1, 3)), -1);
    }

    #[test]
    fn rank_one_torus_floor() {
        let f = Arc::new(CommutationGraph::new(&["a", "b"]).unwrap());
        let t = GraphTower::new(f).unwrap();
        let q = QuadraticData { orientable: true, genus: 1, m: 2, u: vec![], v: vec![SymWord::empty(), SymWord::empty()], w: vec![] };
        let t = t.add_floor(floor(FloorKind::Quadratic { quadratic: q }, &["x1", "x2"], &[])).unwrap();
        assert_eq!(t.reports[0].case, TowerCase::B2);
        assert_eq!(t.top().tag(2, 3), Some(EdgeTag::C));
        let not_torus = QuadraticData {
            orientable: true,
            genus: 1,
            m: 2,
            u: vec![],
            v: vec![SymWord::parse("a"), SymWord::parse("a")],
            w: vec![],
        };
        let base = GraphTower::new(Arc::new(CommutationGraph::new(&["a", "b"]).unwrap())).unwrap();
        assert!(base.add_floor(floor(FloorKind::Quadratic { quadratic: not_torus }, &["x1", "x2"], &[])).is_err());
    }

    #[test]
    fn quadratic_floor_case_c() {
        let f = Arc::new(CommutationGraph::new(&["a", "b"]).unwrap());
        let t = GraphTower::new(f).unwrap();
        let q = QuadraticData {
            orientable: true,
            genus: 1,
            m: 3,
            u: vec![SymWord::parse("a b")],
            v: vec![SymWord::parse("a"), SymWord::parse("b")],
            w: vec![SymWord::parse("1")],
        };
        let t = t.add_floor(floor(FloorKind::Quadratic { quadratic: q }, &["x1", "x2", "x3"], &[])).unwrap();
        assert_eq!(t.reports[0].case, TowerCase::C);
        assert_eq!(t.retraction_check().unwrap().0, 1);
        let p = t.presentation(1).unwrap();
        assert!(p.decomposition.contains("| "));
        assert_eq!(t.ntq_degeneration_check().unwrap()[0].2, "amalgamated product with a surface group");
    }
}
