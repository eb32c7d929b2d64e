//! Recomputes the worked examples and small-scale tables and compares them
//! with stored values.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embed::{check_displacement, padded_embedding};
use crate::error::Result;
use crate::geq::{figure2_equation, item_name};
use crate::pcgraph::{join, width, CommutationGraph, EdgeTag};
use crate::words::{random_geodesic, GroupWord};

pub const FIGURE2_PSI: [&str; 7] = ["ν", "η", "η' ν' μ", "Δ(λ)", "Δ(λ)' μ' ν η Δ(ν)", "λ", "Δ(η)"];
pub const FIGURE2_W1: &str = "ν η Δ(ν) λ Δ(η)";
pub const FIGURE2_W2: &str = "μ Δ(λ) Δ(μ)";

#[derive(Clone, Debug, Serialize)]
pub struct Figure2Report {
    pub psi: Vec<(String, String)>,
    pub w1: String,
    pub w2: String,
    pub round_trip: bool,
    pub diffs: Vec<String>,
    pub pass: bool,
}

impl Figure2Report {
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.psi.iter().map(|(h, w)| format!("ψ({h}) = {w}")).collect();
        out.push(format!("W1 = {}", self.w1));
        out.push(format!("W2 = {}", self.w2));
        out.extend(self.diffs.iter().map(|d| format!("DIFF {d}")));
        out.push(if self.pass { "PASS".into() } else { "FAIL".into() });
        out
    }
}

pub fn figure2() -> Result<Figure2Report> {
    let eq = figure2_equation();
    let psi: Vec<(String, String)> =
        eq.base_change_psi()?.iter().enumerate().map(|(i, w)| (item_name(i + 1), w.to_string())).collect();
    let (w1, w2, _) = eq.quadratic_word()?;
    let (w1, w2) = (w1.to_string(), w2.to_string());
    let mut diffs = Vec::new();
    if psi.len() != FIGURE2_PSI.len() {
        diffs.push(format!("{} ψ values, expected {}", psi.len(), FIGURE2_PSI.len()));
    }
    for ((h, got), want) in psi.iter().zip(FIGURE2_PSI) {
        if got != want {
            diffs.push(format!("ψ({h}): got `{got}`, expected `{want}`"));
        }
    }
    for (name, got, want) in [("W1", &w1, FIGURE2_W1), ("W2", &w2, FIGURE2_W2)] {
        if got != want {
            diffs.push(format!("{name}: got `{got}`, expected `{want}`"));
        }
    }
    let round_trip = eq.check_round_trip()?;
    if !round_trip {
        diffs.push("ϱψ is not the identity".into());
    }
    let pass = diffs.is_empty();
    Ok(Figure2Report { psi, w1, w2, round_trip, diffs, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthTable {
    pub edgeless: Vec<(usize, usize)>,
    pub complete: Vec<(usize, usize)>,
    pub join_pairs: usize,
    pub join_failures: Vec<String>,
    pub pass: bool,
}

impl WidthTable {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec!["n  edgeless  complete".to_string()];
        for ((n, e), (_, c)) in self.edgeless.iter().zip(&self.complete) {
            out.push(format!("{n:<2} {e:<9} {c}"));
        }
        out.push(format!("join additivity: {} pairs, {} failures", self.join_pairs, self.join_failures.len()));
        out.extend(self.join_failures.iter().cloned());
        out.push(if self.pass { "PASS".into() } else { "FAIL".into() });
        out
    }
}

/// Every labelled graph on `1..=n_max` vertices named `{prefix}{i}`.
pub fn all_small_graphs(n_max: usize, prefix: &str) -> Vec<CommutationGraph> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = CommutationGraph::edgeless(n, prefix);
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(a, b, EdgeTag::D).expect("distinct vertices");
                }
            }
            out.push(g);
        }
    }
    out
}

pub fn width_table() -> Result<WidthTable> {
    let edgeless: Vec<(usize, usize)> =
        (1..=6).map(|n| Ok((n, width(&CommutationGraph::edgeless(n, "v"))?))).collect::<Result<_>>()?;
    let complete: Vec<(usize, usize)> =
        (1..=6).map(|n| Ok((n, width(&CommutationGraph::complete(n, "v"))?))).collect::<Result<_>>()?;
    let left = all_small_graphs(4, "u");
    let right = all_small_graphs(4, "v");
    let wl: Vec<usize> = left.iter().map(width).collect::<Result<_>>()?;
    let wr: Vec<usize> = right.iter().map(width).collect::<Result<_>>()?;
    let mut join_failures = Vec::new();
    for (a, &x) in left.iter().zip(&wl) {
        for (b, &y) in right.iter().zip(&wr) {
            let w = width(&join(a, b)?)?;
            if w != x + y {
                join_failures.push(format!("width {w} ≠ {x} + {y} for {:?} and {:?}", a.edges(), b.edges()));
            }
        }
    }
    let pass = edgeless.iter().all(|&(_, w)| w == 1) && complete.iter().all(|&(n, w)| w == n) && join_failures.is_empty();
    Ok(WidthTable { edgeless, complete, join_pairs: left.len() * right.len(), join_failures, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingBounds {
    pub seed: u64,
    pub generator_checks: usize,
    pub sandwich_checks: usize,
    pub displacement_checks: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl EmbeddingBounds {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("seed {}", self.seed),
            format!("generator image lengths: {} checked", self.generator_checks),
            format!("length sandwich: {} checked", self.sandwich_checks),
            format!("displacement: {} checked", self.displacement_checks),
        ];
        out.extend(self.failures.iter().cloned());
        out.push(if self.pass { "PASS".into() } else { "FAIL".into() });
        out
    }
}

/// Image-length window for every generator (`r, L ≤ 6`), the length
/// sandwich on `samples` random words, and the displacement inequality on
/// `instances` random generator tuples with `k ≤ 3`, `∂α ≤ 4`.
pub fn embedding_bounds(seed: u64, samples: usize, instances: usize) -> Result<EmbeddingBounds> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut generator_checks = 0;
    for r in 1..=6 {
        for l in 1..=6 {
            let m = padded_embedding(r, l, None, 0)?;
            for (i, img) in m.images.iter().enumerate() {
                let len = img.len();
                generator_checks += 1;
                if len < 2 * r + 2 * l + 3 || len > 4 * r + 2 * l + 1 {
                    failures.push(format!("r={r} L={l}: |ψ(a{})| = {len}", i + 1));
                }
            }
        }
    }
    for _ in 0..samples {
        let r = rng.gen_range(1..=4);
        let l = rng.gen_range(1..=4);
        let m = padded_embedding(r, l, None, 0)?;
        let n = rng.gen_range(1..=12);
        let v = GroupWord::new(m.source.clone(), random_geodesic(&m.source, n, &mut rng))?;
        let img = m.apply(&v)?.len();
        if img < 2 * l * n || img > (4 * r + 2 * l + 1) * n {
            failures.push(format!("r={r} L={l}: |ψ({})| = {img}", v.to_text()));
        }
    }
    for _ in 0..instances {
        let rank = rng.gen_range(1..=3);
        let f = Arc::new(CommutationGraph::edgeless(rank, "a"));
        let k = rng.gen_range(1..=3);
        let gens: Vec<GroupWord> = (0..k)
            .map(|_| {
                let n = rng.gen_range(1..=4);
                GroupWord::new(f.clone(), random_geodesic(&f, n, &mut rng))
            })
            .collect::<Result<_>>()?;
        let rep = check_displacement(&gens)?;
        if !rep.holds {
            let texts: Vec<String> = gens.iter().map(|g| g.to_text()).collect();
            failures.push(format!("displacement {} outside [{}, {}] for {:?}", rep.d_beta, rep.lower, rep.upper, texts));
        }
    }
    let pass = failures.is_empty();
    Ok(EmbeddingBounds { seed, generator_checks, sandwich_checks: samples, displacement_checks: instances, failures, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure2_passes() {
        let r = figure2().unwrap();
        assert!(r.pass, "{:?}", r.diffs);
        assert_eq!(r.lines().len(), 10);
    }

    #[test]
    fn small_graph_counts() {
        assert_eq!(all_small_graphs(4, "u").len(), 1 + 2 + 8 + 64);
    }
}
