//! Command-line front end. Text by default, JSON with `--json`.

use std::fs;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dmnf::{count_alternations, dm_normal_form};
use crate::embed::{check_displacement, doubling_embedding, GeneratorMap};
use crate::error::{Error, Result};
use crate::geq::{GeneralisedEquation, Step, TiePlacement};
use crate::io::{format_graph_text, parse_geq, parse_graph, parse_tower, GeqJson, GraphJson};
use crate::pcgraph::{deflate, double, universal_graph_with_cap, width, CommutationGraph, UNIVERSAL_CAP};
use crate::quadnf::{normalize, QuadraticWord};
use crate::repro;
use crate::towers::max_c_clique;
use crate::words::{block_decomposition, equal, is_irreducible, least_root, reduce, GroupWord};

#[derive(Parser, Debug)]
#[command(name = "pcg", about = "Partially commutative groups: graphs, words, equations, towers")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commutation graphs and their deflations
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Group elements over a commutation graph
    #[command(subcommand)]
    Word(WordCmd),
    /// Embeddings into F(b,c) and displacement bounds
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Generalised equations
    #[command(subcommand)]
    Geq(GeqCmd),
    /// Graph towers
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Quadratic words
    #[command(subcommand)]
    Quad(QuadCmd),
    /// Recompute worked examples and tables
    #[command(subcommand)]
    Repro(ReproCmd),
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Collapse vertices with equal links.
    Deflate { file: String },
    Width { file: String },
    /// Replace each deflation class by two non-adjacent copies.
    Double { file: String },
    /// Graph containing every deflated graph on at most N vertices.
    Universal {
        n: usize,
        #[arg(long, default_value_t = UNIVERSAL_CAP)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
struct WordArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    word: String,
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    Reduce(WordArgs),
    Equal {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        other: String,
    },
    Root(WordArgs),
    Blocks(WordArgs),
    Irreducible(WordArgs),
    Dmnf {
        #[command(flatten)]
        w: WordArgs,
        /// Two vertex lists, e.g. `--alternations "a b" "c"`.
        #[arg(long, num_args = 2, value_names = ["H1", "H2"])]
        alternations: Option<Vec<String>>,
    },
}

#[derive(Subcommand, Debug)]
enum EmbedCmd {
    Double {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        pad: usize,
    },
    /// One free-group word per line.
    CheckDisplacement {
        #[arg(long)]
        gens: String,
    },
}

#[derive(Args, Debug)]
struct FileArg {
    #[arg(long)]
    file: String,
}

#[derive(Subcommand, Debug)]
enum GeqCmd {
    /// Check the stored solution.
    Check(FileArg),
    /// Entire transformation; follows the stored solution when present.
    Step {
        #[arg(long)]
        file: String,
        /// `auto`, `boundary:N` or `split:N`.
        #[arg(long, default_value = "auto")]
        tie: String,
        /// Repeat until no transfer base is left.
        #[arg(long)]
        all: bool,
    },
    Psi(FileArg),
    #[command(name = "W")]
    W(FileArg),
    #[command(name = "K")]
    K(FileArg),
}

#[derive(Subcommand, Debug)]
enum TowerCmd {
    Validate(FileArg),
    Present {
        #[arg(long)]
        file: String,
        #[arg(long)]
        level: Option<usize>,
    },
    Ntq(FileArg),
}

#[derive(Subcommand, Debug)]
enum QuadCmd {
    Normalize {
        #[arg(long)]
        vars: String,
        #[arg(long, default_value = "")]
        coeffs: String,
        #[arg(long)]
        word: String,
        /// Commuting coefficient pairs, e.g. `"a b, b c"`.
        #[arg(long, default_value = "")]
        commute: String,
    },
}

#[derive(Subcommand, Debug)]
enum ReproCmd {
    Figure2,
    WidthTable,
    EmbeddingBounds {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
}

/// Text lines or a JSON value, plus whether the command succeeded.
struct Output {
    text: Vec<String>,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: Vec<String>, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<Arc<CommutationGraph>> {
    Ok(Arc::new(parse_graph(&read(path)?)?))
}

fn table(rows: &[(String, String)], arrow: &str) -> Vec<String> {
    let w = rows.iter().map(|(a, _)| a.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(a, b)| format!("{a:<w$} {arrow} {b}")).collect()
}

fn map_json(m: &GeneratorMap) -> Value {
    Value::Object(m.table().into_iter().map(|(a, b)| (a, Value::String(b))).collect())
}

fn graph_out(g: &CommutationGraph) -> Output {
    Output::new(format_graph_text(g).lines().map(String::from).collect(), json!(GraphJson::from_graph(g)))
}

fn run_graph(c: GraphCmd) -> Result<Output> {
    match c {
        GraphCmd::Deflate { file } => {
            let g = load_graph(&file)?;
            let d = deflate(&g);
            let classes: Vec<(String, String)> = d
                .classes
                .iter()
                .enumerate()
                .map(|(k, m)| (d.graph.name(k).to_string(), m.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")))
                .collect();
            let mut text = format_graph_text(&d.graph).lines().map(String::from).collect::<Vec<_>>();
            text.extend(classes.iter().map(|(k, m)| format!("class {k}: {m}")));
            let j = json!({"graph": GraphJson::from_graph(&d.graph), "classes": classes.into_iter().collect::<std::collections::BTreeMap<_, _>>()});
            Ok(Output::new(text, j))
        }
        GraphCmd::Width { file } => {
            let w = width(&*load_graph(&file)?)?;
            Ok(Output::new(vec![w.to_string()], json!({ "width": w })))
        }
        GraphCmd::Double { file } => Ok(graph_out(&double(&*load_graph(&file)?))),
        GraphCmd::Universal { n, cap } => Ok(graph_out(&universal_graph_with_cap(n, cap)?)),
    }
}

fn word_in(graph: &str, text: &str) -> Result<GroupWord> {
    GroupWord::parse(load_graph(graph)?, text)
}

fn run_word(c: WordCmd) -> Result<Output> {
    match c {
        WordCmd::Reduce(a) => {
            let w = reduce(&word_in(&a.graph, &a.word)?);
            Ok(Output::new(vec![w.to_text()], json!({"word": w.to_text(), "length": w.len()})))
        }
        WordCmd::Equal { graph, word, other } => {
            let g = load_graph(&graph)?;
            let e = equal(&GroupWord::parse(g.clone(), &word)?, &GroupWord::parse(g, &other)?)?;
            Ok(Output::new(vec![e.to_string()], json!({ "equal": e })))
        }
        WordCmd::Root(a) => {
            let (r, k) = least_root(&word_in(&a.graph, &a.word)?)?;
            Ok(Output::new(vec![format!("root {}", r.to_text()), format!("exponent {k}")], json!({"root": r.to_text(), "exponent": k})))
        }
        WordCmd::Blocks(a) => {
            let w = word_in(&a.graph, &a.word)?;
            let d = block_decomposition(&w);
            let blocks: Vec<String> = d.blocks.iter().map(|b| b.to_text()).collect();
            let parts: Vec<Vec<String>> = d.partition.iter().map(|p| w.graph().set_names(p)).collect();
            let text = blocks.iter().zip(&parts).map(|(b, p)| format!("{{{}}}: {b}", p.join(", "))).collect();
            Ok(Output::new(text, json!({"blocks": blocks, "partition": parts})))
        }
        WordCmd::Irreducible(a) => {
            let b = is_irreducible(&word_in(&a.graph, &a.word)?)?;
            Ok(Output::new(vec![b.to_string()], json!({ "irreducible": b })))
        }
        WordCmd::Dmnf { w, alternations } => {
            let word = word_in(&w.graph, &w.word)?;
            let g = word.graph().clone();
            let nf = word.with_letters(dm_normal_form(&word));
            let mut text = vec![nf.to_text()];
            let mut j = json!({"normal_form": nf.to_text()});
            if let Some(h) = alternations {
                let set = |s: &str| g.vertex_set(&s.split_whitespace().collect::<Vec<_>>());
                let k = count_alternations(&g, nf.letters(), &set(&h[0])?, &set(&h[1])?)?;
                text.push(format!("alternations {k}"));
                j["alternations"] = json!(k);
            }
            Ok(Output::new(text, j))
        }
    }
}

fn run_embed(c: EmbedCmd) -> Result<Output> {
    match c {
        EmbedCmd::Double { graph, pad } => {
            let m = doubling_embedding(&*load_graph(&graph)?, pad)?;
            let mut text: Vec<String> = format_graph_text(&m.target).lines().map(String::from).collect();
            text.extend(table(&m.table(), "↦"));
            Ok(Output::new(text, json!({"graph": GraphJson::from_graph(&m.target), "images": map_json(&m)})))
        }
        EmbedCmd::CheckDisplacement { gens } => {
            let text = read(&gens)?;
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
            let mut names: Vec<&str> = lines.iter().flat_map(|l| l.split_whitespace()).filter(|t| *t != "1").map(|t| t.trim_end_matches('\'')).collect();
            names.sort();
            names.dedup();
            let g = Arc::new(CommutationGraph::new(&names)?);
            let ws: Vec<GroupWord> = lines.iter().map(|l| GroupWord::parse(g.clone(), l)).collect::<Result<_>>()?;
            let r = check_displacement(&ws)?;
            let out = vec![
                format!("k = {}, ∂α = {}, ∂β = {}", r.k, r.d_alpha, r.d_beta),
                format!("{} ≤ {} ≤ {}: {}", r.lower, r.d_beta, r.upper, r.holds),
            ];
            Ok(Output { ok: r.holds, ..Output::new(out, json!(r)) })
        }
    }
}

fn parse_tie(s: &str) -> Result<TiePlacement> {
    let num = |t: &str| t.parse::<usize>().map_err(|_| Error::Invalid(format!("bad tie `{s}`")));
    match s.split_once(':') {
        None if s == "auto" => Ok(TiePlacement::Auto),
        Some(("boundary", n)) => Ok(TiePlacement::Boundary(num(n)?)),
        Some(("split", n)) => Ok(TiePlacement::SplitItem(num(n)?)),
        _ => Err(Error::Invalid(format!("bad tie `{s}`"))),
    }
}

fn bases_text(eq: &GeneralisedEquation) -> Vec<String> {
    let mut out = vec![format!("rho = {}, rho_A = {}", eq.rho, eq.rho_a)];
    for b in &eq.bases {
        out.push(format!("{} [{}, {}) eps {} dual {}", b.name, b.alpha, b.beta, b.eps, b.dual));
    }
    if !eq.constraints.is_empty() {
        let c: Vec<String> = eq.constraints.iter().map(|(i, j)| format!("({i},{j})")).collect();
        out.push(format!("constraints {}", c.join(" ")));
    }
    out
}

fn step_out(s: &Step) -> (Vec<String>, Value) {
    let mut text = vec![format!("carrier {}, transfer {}", s.carrier, s.transfer)];
    let rows: Vec<(String, String)> = s.item_map.iter().enumerate().map(|(i, w)| (format!("h{}", i + 1), w.to_string())).collect();
    text.extend(table(&rows, "↦"));
    text.extend(bases_text(&s.equation));
    let j = json!({
        "carrier": s.carrier,
        "transfer": s.transfer,
        "item_map": s.item_map,
        "equation": GeqJson::from_equation(&s.equation, s.solution.as_deref()),
    });
    (text, j)
}

fn run_geq(c: GeqCmd) -> Result<Output> {
    match c {
        GeqCmd::Check(f) => {
            let (eq, h) = parse_geq(&read(&f.file)?)?;
            let h = h.ok_or_else(|| Error::Invalid("file has no solution".into()))?;
            let ok = eq.check_solution(&h)?;
            Ok(Output { ok, ..Output::new(vec![ok.to_string()], json!({ "solution": ok })) })
        }
        GeqCmd::Step { file, tie, all } => {
            let (eq, h) = parse_geq(&read(&file)?)?;
            let steps = if all {
                eq.complete_entire_transformation(h.as_deref(), 1000)?
            } else {
                vec![match &h {
                    Some(h) => eq.entire_transformation_with_solution(h)?,
                    None => eq.entire_transformation(parse_tie(&tie)?)?,
                }]
            };
            let mut text = Vec::new();
            let mut js = Vec::new();
            for (i, s) in steps.iter().enumerate() {
                let (t, j) = step_out(s);
                text.push(format!("step {}", i + 1));
                text.extend(t.into_iter().map(|l| format!("  {l}")));
                js.push(j);
            }
            Ok(Output::new(text, json!({ "steps": js })))
        }
        GeqCmd::Psi(f) => {
            let (eq, _) = parse_geq(&read(&f.file)?)?;
            let psi = eq.base_change_psi()?;
            let rows: Vec<(String, String)> = psi.iter().enumerate().map(|(i, w)| (format!("ψ(h{})", i + 1), w.to_string())).collect();
            Ok(Output::new(table(&rows, "="), json!({ "psi": psi })))
        }
        GeqCmd::W(f) => {
            let (eq, _) = parse_geq(&read(&f.file)?)?;
            let (w1, w2, w) = eq.quadratic_word()?;
            let text = vec![format!("W1 = {w1}"), format!("W2 = {w2}"), format!("W = {w}")];
            Ok(Output::new(text, json!({"W1": w1, "W2": w2, "W": w})))
        }
        GeqCmd::K(f) => {
            let (eq, _) = parse_geq(&read(&f.file)?)?;
            let p = eq.presentation_k()?;
            Ok(Output::new(vec![p.to_string()], json!(p)))
        }
    }
}

fn run_tower(c: TowerCmd) -> Result<Output> {
    match c {
        TowerCmd::Validate(f) => {
            let t = parse_tower(&read(&f.file)?)?;
            let mut text = Vec::new();
            for g in &t.graphs {
                g.check_ec_property()?;
            }
            for r in &t.reports {
                text.push(format!(
                    "level {}: case {}, K⊥ = {{{}}} ({:?}), {} relations, max c-clique {}",
                    r.level,
                    r.case,
                    r.k_perp.join(", "),
                    r.k_perp_kind,
                    r.relations.len(),
                    max_c_clique(&t.graphs[r.level]),
                ));
                text.extend(r.assumed.iter().map(|a| format!("  assumed: {a}")));
            }
            let (checked, skipped) = t.retraction_check()?;
            text.push(format!("retraction: {checked} relations checked, {skipped} symbolic"));
            text.push("valid".into());
            let j = json!({"height": t.height(), "floors": t.reports, "retraction": {"checked": checked, "symbolic": skipped}});
            Ok(Output::new(text, j))
        }
        TowerCmd::Present { file, level } => {
            let t = parse_tower(&read(&file)?)?;
            let levels: Vec<usize> = match level {
                Some(l) => vec![l],
                None => (1..=t.height()).collect(),
            };
            let ps = levels.iter().map(|&l| t.presentation(l)).collect::<Result<Vec<_>>>()?;
            let mut text = Vec::new();
            for p in &ps {
                text.push(format!("T^{} [{}]: {}", p.level, p.case, p.decomposition));
                text.push(format!("  {}", p.presentation));
                text.extend(p.presentation.notes.iter().map(|n| format!("  note: {n}")));
            }
            Ok(Output::new(text, json!(ps)))
        }
        TowerCmd::Ntq(f) => {
            let t = parse_tower(&read(&f.file)?)?;
            let rows = t.ntq_degeneration_check()?;
            let text = rows.iter().map(|(l, c, what)| format!("level {l}: {c}: {what}")).collect();
            let j: Vec<Value> = rows.iter().map(|(l, c, what)| json!({"level": l, "case": c, "reading": what})).collect();
            Ok(Output::new(text, json!(j)))
        }
    }
}

fn run_quad(c: QuadCmd) -> Result<Output> {
    let QuadCmd::Normalize { vars, coeffs, word, commute } = c;
    let vars: Vec<&str> = vars.split_whitespace().collect();
    let coeffs: Vec<&str> = coeffs.split_whitespace().collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for pair in commute.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match pair.split_whitespace().collect::<Vec<_>>().as_slice() {
            [a, b] => edges.push((a, b)),
            _ => return Err(Error::Invalid(format!("bad commuting pair `{pair}`"))),
        }
    }
    let w = QuadraticWord::from_names(&vars, &coeffs, &edges, &word)?;
    let n = normalize(&w)?;
    let shape = &n.shape;
    let kind = if shape.orientable() { "orientable" } else { "non-orientable" };
    let mut text = vec![
        format!("nf = {}", n.nf.to_text()),
        format!("{kind}, genus {}, {} conjugates", shape.genus(), shape.conjugates.len()),
    ];
    text.extend(table(&n.auto.table(), "↦"));
    let j = json!({
        "nf": n.nf.to_text(),
        "orientable": shape.orientable(),
        "genus": shape.genus(),
        "auto": map_json(&n.auto),
        "inverse": map_json(&n.inverse),
    });
    Ok(Output::new(text, j))
}

fn run_repro(c: ReproCmd) -> Result<Output> {
    match c {
        ReproCmd::Figure2 => {
            let r = repro::figure2()?;
            Ok(Output { ok: r.pass, ..Output::new(r.lines(), json!(r)) })
        }
        ReproCmd::WidthTable => {
            let r = repro::width_table()?;
            Ok(Output { ok: r.pass, ..Output::new(r.lines(), json!(r)) })
        }
        ReproCmd::EmbeddingBounds { seed, samples, instances } => {
            let r = repro::embedding_bounds(seed, samples, instances)?;
            Ok(Output { ok: r.pass, ..Output::new(r.lines(), json!(r)) })
        }
    }
}

fn dispatch(c: Command) -> Result<Output> {
    match c {
        Command::Graph(c) => run_graph(c),
        Command::Word(c) => run_word(c),
        Command::Embed(c) => run_embed(c),
        Command::Geq(c) => run_geq(c),
        Command::Tower(c) => run_tower(c),
        Command::Quad(c) => run_quad(c),
        Command::Repro(c) => run_repro(c),
    }
}

/// Runs one command. Exit codes: 0 success, 1 failed check or error,
/// 2 usage error.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let json_mode = cli.json;
    match dispatch(cli.cmd) {
        Ok(o) => {
            let r = if json_mode {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("values serialize"))
            } else {
                o.text.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            if r.is_err() {
                return 1;
            }
            i32::from(!o.ok)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
