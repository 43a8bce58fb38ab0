//! The `dtcayley` command line.
//!
//! Exit codes: 0 ok, 1 usage, 2 input error, 3 internal check failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::census::{run_census, write_csv, CensusConfig, Dedup};
use crate::families::{construct, voltage_family, FAMILY_NAMES};
use crate::graph::{Graph, GraphJson};
use crate::graph6::{decode, to_graph6};
use crate::symmetry::{analyze_with, automorphism_group, certificate, is_isomorphic, Permutation};
use crate::voltage::{is_n_cover, quotient_by_orbits, semiregular_cyclic_quotient};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dtcayley", version, about = "Cayley graphs over generalized quaternion groups and their distance-transitivity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named family member, e.g. `construct gp 8 3`.
    Construct {
        family: String,
        params: Vec<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Report symmetry predicates of a graph (graph6, sparse6 or JSON; `-` for stdin).
    Check {
        input: String,
        /// Also test isomorphism with this graph.
        #[arg(long)]
        iso: Option<String>,
        /// Distance for the s-distance-transitivity field.
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive Cayley census over Q_{4n}; writes CSV.
    Census {
        /// Values of n: a list (`2,3,4`), a range (`2-6`), or repeated flags.
        #[arg(long = "n", required = true, value_parser = parse_n_values)]
        n: Vec<Vec<u32>>,
        #[arg(long, default_value_t = 4)]
        min_set_size: usize,
        #[arg(long)]
        max_set_size: Option<usize>,
        #[arg(long, default_value = "none")]
        dedup: Dedup,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Also emit rows for connection sets that do not generate the group.
        #[arg(long)]
        include_disconnected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient a graph by a vertex partition or by the orbits of a semiregular automorphism.
    Quotient {
        input: String,
        /// Cells as `0 1 2;3 4 5;...`.
        #[arg(long, conflicts_with = "perm", required_unless_present = "perm")]
        cells: Option<String>,
        /// Automorphism as a space-separated image list.
        #[arg(long)]
        perm: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Derive a voltage-graph cover (x1 q | kq q d | x23 | x22) and verify it projects onto its base.
    Cover {
        family: String,
        params: Vec<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Automorphism group certificate as JSON.
    Aut {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_n_values(s: &str) -> Result<Vec<u32>, String> {
    let bad = |_| format!("invalid n value {s:?}");
    if let Some((a, b)) = s.split_once('-') {
        let (a, b): (u32, u32) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(bad)).collect()
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

fn check_failure(message: impl ToString) -> Failure {
    Failure { code: EXIT_CHECK, message: message.to_string() }
}

fn read_source(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(input).map_err(|e| input_error(format!("{input}: {e}")))
    }
}

/// Parses JSON adjacency lists or the first graph6/sparse6 line.
pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let json: GraphJson = serde_json::from_str(trimmed).map_err(|e| format!("JSON line {} column {}: {e}", e.line(), e.column()))?;
        return Graph::from_json(&json).map_err(|e| e.to_string());
    }
    let line = trimmed.lines().next().unwrap_or("");
    decode(line).map_err(|e| e.to_string())
}

fn load_graph(input: &str) -> Result<Graph, Failure> {
    let text = read_source(input)?;
    parse_graph(&text).map_err(|e| input_error(format!("{input}: {e}")))
}

fn render(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g) + "\n",
        Format::Json => serde_json::to_string(&g.to_json()).expect("serializable") + "\n",
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| input_error(format!("stdout: {e}"))),
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split_whitespace().map(|x| x.parse().map_err(|_| input_error(format!("{x:?} is not a vertex index")))).collect()
}

fn family_usage() -> String {
    FAMILY_NAMES.iter().map(|(n, p)| if p.is_empty() { n.to_string() } else { format!("{n} <{p}>") }).collect::<Vec<_>>().join(", ")
}

/// JSON report of the symmetry predicates of `g`.
pub fn check_report(g: &Graph, s: usize, other: Option<&Graph>) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(g.n()));
    m.insert("edges".into(), json!(g.edge_count()));
    m.insert("connected".into(), json!(g.is_connected()));
    m.insert("girth".into(), json!(g.girth()));
    m.insert("diameter".into(), json!(g.diameter()));
    let aut = automorphism_group(g);
    m.insert("aut_order".into(), json!(aut.order().to_string()));
    m.insert("vertex_transitive".into(), json!(aut.is_transitive()));
    if let Ok(r) = analyze_with(g, &aut) {
        let complete = g.is_complete();
        m.insert("arc_transitive".into(), json!(r.arc_transitive()));
        m.insert("two_arc_transitive".into(), json!(r.two_arc_transitive()));
        m.insert("distance_orbits".into(), json!(r.distance_orbits));
        m.insert(format!("s_distance_transitive({s})"), json!(r.s_distance_transitive(s)));
        m.insert("2dt".into(), if complete { json!("NA") } else { json!(r.s_distance_transitive(2)) });
        m.insert("2at".into(), json!(r.two_arc_transitive()));
    }
    if let Some(h) = other {
        let iso = is_isomorphic(g, h);
        m.insert("iso_to".into(), json!(iso.is_some()));
        if let Some(p) = iso {
            m.insert("isomorphism".into(), json!(p.images()));
        }
    }
    Value::Object(m)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { family, params, output } => {
            let g = construct(&family, &params).map_err(|e| input_error(format!("{e}\nfamilies: {}", family_usage())))?;
            emit(&render(&g, output.format), output.out.as_ref())
        }
        Command::Check { input, iso, s, out } => {
            let g = load_graph(&input)?;
            let other = iso.as_deref().map(load_graph).transpose()?;
            let report = check_report(&g, s, other.as_ref());
            emit(&(serde_json::to_string_pretty(&report).expect("serializable") + "\n"), out.as_ref())
        }
        Command::Census { n, min_set_size, max_set_size, dedup, workers, include_disconnected, out } => {
            let config = CensusConfig { n_values: n.concat(), min_set_size, max_set_size, dedup, workers, include_disconnected };
            let report = run_census(&config).map_err(input_error)?;
            let mut buf = Vec::new();
            write_csv(&report.rows, &mut buf).map_err(|e| input_error(format!("CSV: {e}")))?;
            emit(std::str::from_utf8(&buf).expect("CSV is UTF-8"), out.as_ref())?;
            let s = &report.summary;
            eprintln!("{}", serde_json::to_string(s).expect("serializable"));
            for r in report.rows.iter().filter(|r| r.is_unmatched() || r.is_error() || !r.chain_holds()) {
                eprintln!("RED FLAG: n = {}, S = {:?}: {}", r.n, r.set, if r.chain_holds() { &r.matched } else { "2-DT without arc-transitivity" });
            }
            if s.clean() {
                Ok(())
            } else {
                Err(check_failure(format!("{} unmatched, {} errors, {} implication failures", s.unmatched, s.errors, s.chain_violations)))
            }
        }
        Command::Quotient { input, cells, perm, output } => {
            let g = load_graph(&input)?;
            let (q, cells) = if let Some(c) = cells {
                let cells: Vec<Vec<usize>> = c.split(';').map(parse_indices).collect::<Result<_, _>>()?;
                (quotient_by_orbits(&g, &cells).map_err(input_error)?, cells)
            } else {
                let images = parse_indices(perm.as_deref().expect("clap requires cells or perm"))?;
                let p = Permutation::from_images(images).map_err(input_error)?;
                semiregular_cyclic_quotient(&g, &p).map_err(input_error)?
            };
            eprintln!("{} cells; covering projection: {}", cells.len(), is_n_cover(&g, &cells));
            emit(&render(&q, output.format), output.out.as_ref())
        }
        Command::Cover { family, params, output } => {
            let (psi, cover) = voltage_family(&family, &params).map_err(input_error)?;
            let fibers = cover.fibers();
            let covers = is_n_cover(&cover.graph, &fibers);
            let back = quotient_by_orbits(&cover.graph, &fibers).map_err(check_failure)?;
            if !covers || is_isomorphic(&back, psi.base()).is_none() {
                return Err(check_failure(format!("{family} {params:?}: derived graph does not project onto its base")));
            }
            emit(&render(&cover.graph, output.format), output.out.as_ref())
        }
        Command::Aut { input, out } => {
            let g = load_graph(&input)?;
            let cert = certificate(&g, &automorphism_group(&g));
            emit(&(serde_json::to_string_pretty(&cert).expect("serializable") + "\n"), out.as_ref())
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_value_syntax() {
        assert_eq!(parse_n_values("2-4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_n_values("2,5").unwrap(), vec![2, 5]);
        assert!(parse_n_values("4-2").is_err());
        assert!(parse_n_values("x").is_err());
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(main_with_args(["dtcayley"]), EXIT_USAGE);
        assert_eq!(main_with_args(["dtcayley", "census"]), EXIT_USAGE);
        assert_eq!(main_with_args(["dtcayley", "construct", "gp", "x"]), EXIT_USAGE);
    }

    #[test]
    fn input_errors_exit_2() {
        assert_eq!(main_with_args(["dtcayley", "construct", "gp", "6", "3"]), EXIT_INPUT);
        assert_eq!(main_with_args(["dtcayley", "check", "/nonexistent/graph.g6"]), EXIT_INPUT);
        assert_eq!(main_with_args(["dtcayley", "census", "--n", "1"]), EXIT_INPUT);
    }

    #[test]
    fn parse_formats() {
        let k4 = crate::graph::small::complete(4);
        assert_eq!(parse_graph("C~\n").unwrap(), k4);
        assert_eq!(parse_graph(":CcKI").unwrap(), k4);
        assert_eq!(parse_graph(&serde_json::to_string(&k4.to_json()).unwrap()).unwrap(), k4);
        assert!(parse_graph("C~~").unwrap_err().contains("byte 2"));
    }

    #[test]
    fn check_reports() {
        let k42 = construct("kxy", &[4, 2]).unwrap();
        let r = check_report(&k42, 2, None);
        assert_eq!((r["aut_order"].as_str(), r["2dt"].as_bool(), r["2at"].as_bool()), (Some("384"), Some(true), Some(false)));
        let gp72 = construct("gp", &[7, 2]).unwrap();
        assert_eq!(check_report(&gp72, 2, None)["arc_transitive"], json!(false));
        let c4 = construct("cycle", &[4]).unwrap();
        let r = check_report(&c4, 2, None);
        assert_eq!((r["2dt"].as_bool(), r["diameter"].as_u64()), (Some(true), Some(2)));
        assert_eq!(r["distance_orbits"], json!([1, 1, 1]));
        let x1 = construct("x1", &[3]).unwrap();
        let gp83 = construct("gp", &[8, 3]).unwrap();
        assert_eq!(check_report(&x1, 2, Some(&gp83))["iso_to"], json!(true));
    }
}
