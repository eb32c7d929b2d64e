//! Text and JSON formats for graphs, generalised equations and towers.
//!
//! Graph text:
//!
//! ```text
//! # comment
//! vertices: a b c
//! edge a b
//! edge b c c
//! ```
//!
//! The optional third field of an `edge` line is the tag (`d` by default).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geq::{Base, GeneralisedEquation, Solution};
use crate::pcgraph::{CommutationGraph, EdgeTag};
use crate::towers::{Floor, GraphTower};
use crate::words::GroupWord;

pub fn parse_graph_text(text: &str) -> Result<CommutationGraph> {
    let mut g: Option<CommutationGraph> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        if let Some(rest) = line.strip_prefix("vertices:") {
            if g.is_some() {
                return Err(err("second vertices line".into()));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            g = Some(CommutationGraph::new(&names).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["edge", u, v, rest @ ..] if rest.len() <= 1 => {
                let g = g.as_mut().ok_or_else(|| err("edge before vertices".into()))?;
                let tag = match rest.first() {
                    None | Some(&"d") => EdgeTag::D,
                    Some(&"c") => EdgeTag::C,
                    Some(t) => return Err(err(format!("unknown edge tag `{t}`"))),
                };
                let a = g.index_of(u).map_err(|e| err(e.to_string()))?;
                let b = g.index_of(v).map_err(|e| err(e.to_string()))?;
                g.add_edge(a, b, tag).map_err(|e| err(e.to_string()))?;
            }
            _ => return Err(err(format!("cannot read `{line}`"))),
        }
    }
    g.ok_or(Error::Parse { line: 0, msg: "missing vertices line".into() })
}

pub fn format_graph_text(g: &CommutationGraph) -> String {
    let mut s = format!("vertices: {}\n", g.names().join(" "));
    for (a, b, t) in g.edges() {
        match t {
            EdgeTag::D => s.push_str(&format!("edge {} {}\n", g.name(a), g.name(b))),
            EdgeTag::C => s.push_str(&format!("edge {} {} c\n", g.name(a), g.name(b))),
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    #[serde(default = "default_tag")]
    pub tag: String,
}

fn default_tag() -> String {
    "d".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &CommutationGraph) -> Self {
        GraphJson {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .into_iter()
                .map(|(a, b, t)| EdgeJson { u: g.name(a).into(), v: g.name(b).into(), tag: t.as_str().into() })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<CommutationGraph> {
        let mut g = CommutationGraph::new(&self.vertices)?;
        for e in &self.edges {
            let tag = match e.tag.as_str() {
                "d" => EdgeTag::D,
                "c" => EdgeTag::C,
                t => return Err(Error::Invalid(format!("unknown edge tag `{t}`"))),
            };
            let (a, b) = (g.index_of(&e.u)?, g.index_of(&e.v)?);
            g.add_edge(a, b, tag)?;
        }
        Ok(g)
    }
}

/// Reads either format; JSON when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> Result<CommutationGraph> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<GraphJson>(text)?.to_graph()
    } else {
        parse_graph_text(text)
    }
}

/// Generalised equation file. Tribe labels and solution words use the
/// generator names of `graph`; without a graph, an edgeless one on every
/// name mentioned is used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeqJson {
    pub rho: usize,
    #[serde(rename = "rho_A")]
    pub rho_a: usize,
    pub bases: Vec<Base>,
    #[serde(default)]
    pub constraints: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tribes: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<String>>,
}

fn token_name(t: &str) -> &str {
    t.strip_suffix('\'').unwrap_or(t)
}

impl GeqJson {
    pub fn load(&self) -> Result<(GeneralisedEquation, Option<Solution>)> {
        let mut eq = GeneralisedEquation::new(self.rho, self.rho_a, self.bases.clone(), self.constraints.iter().map(|p| (p[0], p[1])))?;
        let graph = match &self.graph {
            Some(g) => Some(Arc::new(g.to_graph()?)),
            None if self.tribes.is_empty() && self.solution.is_none() => None,
            None => {
                let mut names: BTreeSet<&str> = BTreeSet::new();
                for s in self.tribes.values().chain(self.solution.iter().flatten()) {
                    names.extend(s.split_whitespace().filter(|t| *t != "1").map(token_name));
                }
                let names: Vec<&str> = names.into_iter().collect();
                Some(Arc::new(CommutationGraph::new(&names)?))
            }
        };
        if let Some(g) = &graph {
            for (&i, s) in &self.tribes {
                let names: Vec<&str> = s.split_whitespace().collect();
                eq.tribes.insert(i, g.vertex_set(&names)?);
            }
        }
        eq.graph = graph.clone();
        let solution = match (&self.solution, &graph) {
            (Some(ws), Some(g)) => Some(ws.iter().map(|w| GroupWord::parse(g.clone(), w)).collect::<Result<Vec<_>>>()?),
            _ => None,
        };
        Ok((eq, solution))
    }

    pub fn from_equation(eq: &GeneralisedEquation, solution: Option<&[GroupWord]>) -> Self {
        let graph = eq.graph.as_ref().or_else(|| solution.and_then(|h| h.first()).map(|w| w.graph()));
        GeqJson {
            rho: eq.rho,
            rho_a: eq.rho_a,
            bases: eq.bases.clone(),
            constraints: eq.constraints.iter().map(|&(i, j)| [i, j]).collect(),
            tribes: match graph {
                Some(g) => eq.tribes.iter().map(|(&i, s)| (i, g.set_names(s).join(" "))).collect(),
                None => BTreeMap::new(),
            },
            graph: graph.map(|g| GraphJson::from_graph(g)),
            solution: solution.map(|h| h.iter().map(|w| w.to_text()).collect()),
        }
    }
}

pub fn parse_geq(text: &str) -> Result<(GeneralisedEquation, Option<Solution>)> {
    serde_json::from_str::<GeqJson>(text)?.load()
}

/// Tower file: the base graph and the floors in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerJson {
    pub base_graph: GraphJson,
    #[serde(default)]
    pub floors: Vec<Floor>,
}

impl TowerJson {
    pub fn build(&self) -> Result<GraphTower> {
        let mut t = GraphTower::new(Arc::new(self.base_graph.to_graph()?))?;
        for f in &self.floors {
            t = t.add_floor(f.clone())?;
        }
        Ok(t)
    }
}

pub fn parse_tower(text: &str) -> Result<GraphTower> {
    serde_json::from_str::<TowerJson>(text)?.build()
}
