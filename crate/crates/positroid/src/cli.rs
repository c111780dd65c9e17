//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::le_diagram::LeDiagram;
use crate::quiver::{nu_family, quiver_from_morphisms, IceQuiver};
use crate::shapes::YoungDiagram;
use crate::twist::TwistTable;
use crate::verify::{all_cells, cell_id, run, Cell, Outcome, Suite, VerifyOptions};
use crate::weyl_group::{word_to_perm, Permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "positroid", version, about = "Positroid cells, quivers, twists and cluster checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CellArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// `parts/mask` (e.g. `3,3,2/10110111`), `v=..;w=..`, `v=..;lambda=..`
    #[arg(long)]
    pub cell: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every cell of Gr(k, n) with its dimension.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// JSON bundle of all data attached to a cell.
    Build {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run verification suites on one cell or on every cell.
    Verify {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, required_unless_present = "fixture")]
        n: Option<usize>,
        /// Bundle file written by `build`; compared against a fresh rebuild.
        #[arg(long, conflicts_with_all = ["k", "n"])]
        fixture: Option<String>,
        #[arg(long, default_value = "all")]
        cell: String,
        /// Suite name; repeatable. Default: every suite.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        parallel: bool,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Export the quiver of a cell as DOT or JSON.
    Export {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Twisted face minors and the inverse monomial map.
    TwistTable {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad integer `{}`", x))).collect()
}

/// Parse a cell selector into a Le-diagram of `Gr(k, n)`.
pub fn parse_cell(k: usize, n: usize, selector: &str) -> Result<LeDiagram, String> {
    let selector = selector.trim();
    if let Some((parts, mask)) = selector.split_once('/') {
        let shape = YoungDiagram::new(parse_list(parts)?).map_err(|e| e.to_string())?;
        let dots = mask
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(format!("bad mask character `{}`", c)),
            })
            .collect::<Result<Vec<bool>, String>>()?;
        return LeDiagram::from_dot_mask(k, n, shape, &dots).map_err(|e| e.to_string());
    }
    let mut v = None;
    let mut w = None;
    let mut lambda = None;
    for field in selector.split(';').filter(|f| !f.trim().is_empty()) {
        let (key, val) = field.split_once('=').ok_or_else(|| format!("expected key=value, got `{}`", field))?;
        let list = parse_list(val)?;
        match key.trim() {
            "v" => v = Some(Permutation::from_one_line(list).map_err(|e| e.to_string())?),
            "w" => w = Some(Permutation::from_one_line(list).map_err(|e| e.to_string())?),
            "lambda" => lambda = Some(YoungDiagram::new(list).map_err(|e| e.to_string())?),
            "vword" => v = Some(word_to_perm(n, &list)),
            other => return Err(format!("unknown key `{}`", other)),
        }
    }
    let v = v.unwrap_or_else(|| Permutation::identity(n));
    if v.n() != n {
        return Err(format!("v has size {}, expected {}", v.n(), n));
    }
    match (w, lambda) {
        (Some(w), None) => LeDiagram::from_pair(k, &v, &w).map_err(|e| e.to_string()),
        (None, Some(l)) => LeDiagram::from_shape_and_v(k, n, l, &v).map_err(|e| e.to_string()),
        _ => Err("give exactly one of w= or lambda=".into()),
    }
}

fn quiver_json(q: &IceQuiver) -> Value {
    let vertices: Vec<Value> =
        q.labels().iter().map(|&l| json!({"label": l, "frozen": q.is_frozen(l)})).collect();
    let arrows: Vec<Value> = q.arrows().into_iter().map(|(a, b, m)| json!([a, b, m])).collect();
    json!({"vertices": vertices, "arrows": arrows})
}

fn twist_json(table: &TwistTable) -> Value {
    let q: serde_json::Map<String, Value> =
        table.q_in_t.iter().map(|(r, m)| (r.to_string(), Value::String(m.to_string()))).collect();
    let t: serde_json::Map<String, Value> =
        table.t_in_q.iter().map(|(r, m)| (r.to_string(), Value::String(m.to_string()))).collect();
    json!({"q": q, "t_in_q": t})
}

/// The full JSON bundle of a cell.
pub fn bundle(cell: &Cell) -> Result<Value, String> {
    let le = &cell.le;
    let g = &cell.graph;
    let dots: Vec<Value> = le.dots().into_iter().map(|(r, (i, j))| json!({"r": r, "box": [i, j]})).collect();
    let faces: Vec<Value> = g
        .faces
        .values()
        .map(|f| json!({"index": f.index, "label": f.label, "boundary": f.boundary}))
        .collect();
    let neighborhoods: Vec<Value> = g
        .neighborhoods
        .values()
        .map(|nb| json!({"r": nb.r, "a": nb.a, "b": nb.b, "c": nb.c, "up": nb.up, "left": nb.left}))
        .collect();
    let strands: Vec<Value> = g.strands.iter().map(|s| json!([s.start, s.end])).collect();
    let nus = nu_family(le).map_err(|e| e.to_string())?;
    let nu: serde_json::Map<String, Value> = nus
        .iter()
        .map(|(r, d)| (r.to_string(), json!({"parts": d.parts(), "frobenius": d.frobenius().0})))
        .collect();
    let morph = quiver_from_morphisms(le, g).map_err(|e| e.to_string())?;
    Ok(json!({
        "k": le.k(),
        "n": le.n(),
        "cell": cell.id(),
        "shape": le.shape().parts(),
        "word": le.word().letters(),
        "v": le.v().one_line(),
        "w": le.w().one_line(),
        "dimension": le.j_circ().len(),
        "dots": dots,
        "graph": {"faces": faces, "neighborhoods": neighborhoods, "strands": strands, "isolated": g.isolated},
        "quiver": quiver_json(&cell.quiver),
        "morphism_quiver": quiver_json(&morph),
        "exchange_matrix": cell.quiver.exchange_matrix(),
        "exchange_rank": cell.quiver.exchange_rank(),
        "nu": nu,
        "twist": twist_json(&TwistTable::new(le, g)),
    }))
}

fn emit(out: &mut dyn Write, path: &Option<String>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn load(args: &CellArgs) -> Result<Cell, String> {
    Cell::new(parse_cell(args.k, args.n, &args.cell)?)
}

/// Parse `args` and run; returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {}", msg);
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Enumerate { k, n, format } => {
            if k == 0 || k > n {
                return Err(format!("need 1 <= k <= n, got k = {}, n = {}", k, n));
            }
            let cells = all_cells(k, n);
            match format {
                Format::Json => {
                    let list: Vec<Value> = cells
                        .iter()
                        .map(|le| json!({"cell": cell_id(le), "v": le.v().one_line(), "w": le.w().one_line(), "dimension": le.j_circ().len()}))
                        .collect();
                    emit(out, &None, &pretty(&json!({"k": k, "n": n, "count": cells.len(), "cells": list}))).map_err(io)?;
                }
                _ => {
                    let mut s = String::new();
                    for le in &cells {
                        s.push_str(&format!("{}\tdim={}\n", cell_id(le), le.j_circ().len()));
                    }
                    s.push_str(&format!("total {}\n", cells.len()));
                    emit(out, &None, &s).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Build { cell, out: path } => {
            let c = load(&cell)?;
            emit(out, &path, &pretty(&bundle(&c)?)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Export { cell, format, out: path } => {
            let c = load(&cell)?;
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&c.quiver).map_err(|e| e.to_string())?;
                    s.push('\n');
                    s
                }
                _ => c.quiver.to_dot("Q"),
            };
            emit(out, &path, &text).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::TwistTable { cell, format } => {
            let c = load(&cell)?;
            let table = TwistTable::new(&c.le, &c.graph);
            let text = match format {
                Format::Text => {
                    let mut s = String::new();
                    for (r, m) in &table.q_in_t {
                        s.push_str(&format!("q_{} = {}\n", r, m));
                    }
                    for (r, m) in &table.t_in_q {
                        s.push_str(&format!("t_{} = {}\n", r, m));
                    }
                    s
                }
                _ => pretty(&twist_json(&table)),
            };
            emit(out, &None, &text).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { k, n, fixture, cell, suite, format, parallel, depth, seed, samples } => {
            let suites: Vec<Suite> = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
            };
            if let Some(path) = fixture {
                let (le, diffs) = check_fixture(&path)?;
                let opts = VerifyOptions { depth, samples, seed };
                let outcomes = verify_cells(&[le], &suites, &opts, false)?;
                let ok = diffs.is_empty() && outcomes.iter().all(|o| o.passed);
                let text = match format {
                    Format::Json => {
                        let mut v = report_json(&suites, &outcomes);
                        v["passed"] = json!(ok);
                        v["fixture"] = json!({"path": path, "mismatches": diffs});
                        pretty(&v)
                    }
                    _ => {
                        let mut s: String =
                            diffs.iter().map(|d| format!("FAIL fixture {}: {}\n", path, d)).collect();
                        s.push_str(&report_text(&suites, &outcomes, true));
                        let status = if diffs.is_empty() { "PASS" } else { "FAIL" };
                        s.push_str(&format!("{} fixture mismatches={}\n", status, diffs.len()));
                        s
                    }
                };
                emit(out, &None, &text).map_err(io)?;
                return Ok(if ok { EXIT_OK } else { EXIT_FAIL });
            }
            let n = n.ok_or("--n is required")?;
            let single = cell != "all";
            let cells: Vec<LeDiagram> = if single {
                let k = k.ok_or("--k is required with a specific --cell")?;
                vec![parse_cell(k, n, &cell)?]
            } else {
                match k {
                    Some(k) if k == 0 || k > n => return Err(format!("need 1 <= k <= n, got k = {}", k)),
                    Some(k) => all_cells(k, n),
                    None => (1..=n).flat_map(|k| all_cells(k, n)).collect(),
                }
            };
            let opts = VerifyOptions { depth, samples, seed };
            let outcomes = verify_cells(&cells, &suites, &opts, parallel)?;
            let ok = outcomes.iter().all(|o| o.passed);
            let text = match format {
                Format::Json => pretty(&report_json(&suites, &outcomes)),
                _ => report_text(&suites, &outcomes, single),
            };
            emit(out, &None, &text).map_err(io)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Rebuild the cell named in a stored bundle and list every JSON path where they differ.
pub fn check_fixture(path: &str) -> Result<(LeDiagram, Vec<String>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
    let stored: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {}", path, e))?;
    let field = |key: &str| stored.get(key).ok_or_else(|| format!("{}: missing `{}`", path, key));
    let k = field("k")?.as_u64().ok_or("k is not an integer")? as usize;
    let n = field("n")?.as_u64().ok_or("n is not an integer")? as usize;
    let id = field("cell")?.as_str().ok_or("cell is not a string")?;
    let le = parse_cell(k, n, id)?;
    let fresh = bundle(&Cell::new(le.clone())?)?;
    let mut diffs = Vec::new();
    json_diff("$", &stored, &fresh, &mut diffs);
    Ok((le, diffs))
}

fn json_diff(at: &str, stored: &Value, fresh: &Value, diffs: &mut Vec<String>) {
    match (stored, fresh) {
        (Value::Object(a), Value::Object(b)) => {
            for key in a.keys().chain(b.keys().filter(|k| !a.contains_key(*k))) {
                let here = format!("{}.{}", at, key);
                match (a.get(key), b.get(key)) {
                    (Some(x), Some(y)) => json_diff(&here, x, y, diffs),
                    (Some(_), None) => diffs.push(format!("{} is not expected", here)),
                    _ => diffs.push(format!("{} is missing", here)),
                }
            }
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                json_diff(&format!("{}[{}]", at, i), x, y, diffs);
            }
        }
        _ if stored != fresh => diffs.push(format!("{} is {}, expected {}", at, stored, fresh)),
        _ => {}
    }
}

/// Run every suite on every cell; results are in (cell, suite) order either way.
pub fn verify_cells(
    cells: &[LeDiagram],
    suites: &[Suite],
    opts: &VerifyOptions,
    parallel: bool,
) -> Result<Vec<Outcome>, String> {
    let job = |le: &LeDiagram| -> Result<Vec<Outcome>, String> {
        let c = Cell::new(le.clone())?;
        Ok(suites.iter().map(|&s| run(s, &c, opts)).collect())
    };
    let nested: Vec<Result<Vec<Outcome>, String>> =
        if parallel { cells.par_iter().map(job).collect() } else { cells.iter().map(job).collect() };
    let mut all = Vec::new();
    for r in nested {
        all.extend(r?);
    }
    Ok(all)
}

fn report_text(suites: &[Suite], outcomes: &[Outcome], with_notes: bool) -> String {
    let mut s = String::new();
    for o in outcomes {
        for f in &o.failures {
            s.push_str(&format!("FAIL {} k={} n={} {}: {}\n", o.suite, o.k, o.n, o.cell, f));
        }
        if with_notes {
            for note in &o.notes {
                s.push_str(&format!("note {} {}: {}\n", o.suite, o.cell, note));
            }
        }
    }
    for &suite in suites {
        let mine: Vec<&Outcome> = outcomes.iter().filter(|o| o.suite == suite).collect();
        let failed = mine.iter().filter(|o| !o.passed).count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        s.push_str(&format!("{} {} cells={} failed={}\n", status, suite, mine.len(), failed));
    }
    s
}

fn report_json(suites: &[Suite], outcomes: &[Outcome]) -> Value {
    let summary: serde_json::Map<String, Value> = suites
        .iter()
        .map(|&suite| {
            let mine: Vec<&Outcome> = outcomes.iter().filter(|o| o.suite == suite).collect();
            let failed = mine.iter().filter(|o| !o.passed).count();
            (suite.name().to_string(), json!({"cells": mine.len(), "failed": failed}))
        })
        .collect();
    let details: Vec<Value> = outcomes
        .iter()
        .filter(|o| !o.passed || !o.notes.is_empty())
        .map(|o| serde_json::to_value(o).expect("outcome"))
        .collect();
    json!({"passed": outcomes.iter().all(|o| o.passed), "summary": summary, "details": details})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_forms_agree() {
        let a = parse_cell(3, 6, "vword=2,4;lambda=3,3,2").unwrap();
        let b = parse_cell(3, 6, &cell_id(&a)).unwrap();
        let c = parse_cell(3, 6, &format!("v={};w={}", join(a.v().one_line()), join(a.w().one_line()))).unwrap();
        assert_eq!(cell_id(&b), cell_id(&a));
        assert_eq!(cell_id(&c), cell_id(&a));
    }

    fn join(v: &[usize]) -> String {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run_cli(["positroid", "build", "--k", "2", "--n", "4", "--cell", "3/111"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run_cli(["positroid", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
    }
}
