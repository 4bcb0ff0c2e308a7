//! Command-line front-end. [`run`] takes the full argument vector and returns
//! the exit code with both output streams, so it can be tested in-process.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error or failed check.
//! Errors print `<Code>: <message>` on stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use tkr_core::catalog::{self, builtin, catalog, is_builtin, DUAL_PAIRS};
use tkr_core::duality::{check_alexander_identities, check_duality, DualPair};
use tkr_core::homology::{homology_all, HomologySummary};
use tkr_core::matroid::{check_matroid_correspondence, column_matroid};
use tkr_core::random::{seeded_complex, RandomShape};
use tkr_core::skein::{skein_evaluate, verify_skein, SkeinCase, SkeinReport};
use tkr_core::trees::{default_gamma, enumerate_csts, matrix_tree_weighted};
use tkr_core::{
    bott_direct, bott_via_tkr, format, homology, modified_tkr, tkr, CellComplex, Error, Limits, SpanningSubcomplex,
};

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "tkr", version, about = "Exact TKR, Bott and spanning-tree invariants of CW complexes")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest cell count that may be enumerated exhaustively.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Worker threads for subset enumeration.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    threads: usize,
    /// Seed for the `random` input.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// A complex (builtin name, file, or `random`) and optional rewrites, applied
/// in the order skeleton, delete, contract, collapse.
#[derive(Args, Debug)]
struct Input {
    /// Builtin name, path to a complex file, or `random`.
    complex: String,
    /// Replace the complex by its j-skeleton.
    #[arg(long, value_name = "J")]
    skeleton: Option<usize>,
    /// Delete a cell (repeatable).
    #[arg(long, value_name = "CELL")]
    delete: Vec<String>,
    /// Collapse the closure of a cell to a point.
    #[arg(long, value_name = "CELL")]
    contract: Option<String>,
    /// Collapse a cell across one of its free faces.
    #[arg(long, num_args = 2, value_names = ["CELL", "FACE"])]
    collapse: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and torsion per degree.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        reduced: bool,
    },
    /// The polynomial T^j (or its torsion-weighted variant).
    Tkr {
        #[command(flatten)]
        input: Input,
        /// Defaults to the top dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        modified: bool,
    },
    /// The Bott polynomial in L.
    Bott {
        #[command(flatten)]
        input: Input,
        /// Derive it from the top polynomial instead of summing homology.
        #[arg(long)]
        via_tkr: bool,
    },
    /// Cellular spanning trees.
    Trees {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: Option<usize>,
        /// Weight each tree by the squared torsion order.
        #[arg(long)]
        weighted: bool,
        /// List the trees.
        #[arg(long)]
        list: bool,
        /// Weighted count from a reduced Laplacian determinant.
        #[arg(long)]
        matrix_tree: bool,
    },
    /// Skein-relation evaluation of the top polynomial.
    Skein {
        #[command(flatten)]
        input: Input,
        /// Check the relation for one top cell.
        #[arg(long, value_name = "CELL")]
        verify: Option<String>,
        /// Print the rewrite tree.
        #[arg(long)]
        trace: bool,
    },
    /// Column matroid of a boundary map.
    Matroid {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        tutte: bool,
        #[arg(long)]
        bases: bool,
        /// Check the matroid against the polynomial and the trees.
        #[arg(long)]
        check: bool,
    },
    /// Duality between paired cell structures of a sphere.
    Duality {
        /// Builtin pair name or correspondence file.
        pair: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        modified: bool,
        /// Also check the Alexander identities on every spanning subcomplex.
        #[arg(long)]
        alexander: bool,
    },
    /// Builtin complexes with their f-vectors, and builtin dual pairs.
    ListBuiltins,
    /// Parse and validate a complex, printing its canonical text.
    Validate {
        #[command(flatten)]
        input: Input,
    },
}

/// A failure with a machine-readable code.
struct Failure {
    code: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<String, (String, Failure)>;

fn fail<T>(e: Error) -> std::result::Result<T, (String, Failure)> {
    Err((String::new(), e.into()))
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandResult {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandResult {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("UsageError: {text}"),
                },
            };
        }
    };
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits.cap = cap;
    }
    limits.threads = cli.threads.max(1);
    let ctx = Ctx {
        json: cli.json,
        limits,
        seed: cli.seed,
    };
    match ctx.dispatch(&cli.command) {
        Ok(stdout) => CommandResult {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err((stdout, f)) => CommandResult {
            code: 2,
            stdout,
            stderr: format!("{}: {}\n", f.code, f.message),
        },
    }
}

struct Ctx {
    json: bool,
    limits: Limits,
    seed: u64,
}

fn read(path: &Path) -> std::result::Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Builtins and `random` resolve before files; a name that is both is an error.
fn resolve(name: &str, seed: u64, base: Option<&Path>) -> std::result::Result<CellComplex, Error> {
    let path = match base {
        Some(dir) if !Path::new(name).is_absolute() => dir.join(name),
        _ => PathBuf::from(name),
    };
    let named = is_builtin(name) || name == "random";
    if named && path.is_file() {
        return Err(Error::Ambiguous(name.to_string()));
    }
    if name == "random" {
        return Ok(seeded_complex(seed, RandomShape::default()));
    }
    if is_builtin(name) {
        return builtin(name);
    }
    if path.is_file() {
        return format::parse(&read(&path)?);
    }
    Err(Error::UnknownName(name.to_string()))
}

fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn homology_text(h: &HomologySummary) -> String {
    let mut parts = Vec::new();
    match h.betti {
        0 => {}
        1 => parts.push("Z".to_string()),
        b => parts.push(format!("Z^{b}")),
    }
    parts.extend(h.torsion_factors.iter().map(|t| format!("Z/{t}")));
    let group = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
    format!("{}_{} = {group}", if h.reduced { "H~" } else { "H" }, h.degree)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn check_failed(stdout: String, what: &str) -> (String, Failure) {
    (
        stdout,
        Failure {
            code: "CheckFailed".into(),
            message: format!("{what} does not hold"),
        },
    )
}

impl Ctx {
    fn load(&self, input: &Input) -> std::result::Result<CellComplex, Error> {
        let mut k = resolve(&input.complex, self.seed, None)?;
        if let Some(j) = input.skeleton {
            k = k.skeleton(j)?;
        }
        for id in &input.delete {
            k = k.delete_cell(k.lookup(id)?)?;
        }
        if let Some(id) = &input.contract {
            k = k.contract_closure(k.lookup(id)?)?;
        }
        if let Some(pair) = &input.collapse {
            let (c, f) = (k.lookup(&pair[0])?, k.lookup(&pair[1])?);
            k = k.collapse(c, f)?;
        }
        Ok(k)
    }

    fn emit(&self, text: String, value: Value) -> String {
        if self.json {
            format!("{value}\n")
        } else {
            text
        }
    }

    fn dispatch(&self, command: &Command) -> Outcome {
        let load = |input: &Input| self.load(input).or_else(fail);
        match command {
            Command::Homology {
                input,
                degree,
                reduced,
            } => {
                let k = load(input)?;
                let groups = match degree {
                    Some(j) => vec![homology(&k, *j, *reduced).or_else(fail)?],
                    None => homology_all(&k, *reduced),
                };
                let text: String = groups.iter().map(|h| homology_text(h) + "\n").collect();
                Ok(self.emit(text, serde_json::to_value(&groups).expect("serializable")))
            }
            Command::Tkr { input, dim, modified } => {
                let k = load(input)?;
                let j = dim.unwrap_or(k.dim());
                let p = if *modified {
                    modified_tkr(&k, j, &self.limits)
                } else {
                    tkr(&k, j, &self.limits)
                }
                .or_else(fail)?;
                Ok(self.emit(format!("{p}\n"), p.to_json()))
            }
            Command::Bott { input, via_tkr } => {
                let k = load(input)?;
                let p = if *via_tkr {
                    bott_via_tkr(&k, &self.limits)
                } else {
                    bott_direct(&k, &self.limits)
                }
                .or_else(fail)?;
                Ok(self.emit(format!("{p}\n"), p.to_json()))
            }
            Command::Trees {
                input,
                dim,
                weighted,
                list,
                matrix_tree,
            } => self.trees(&load(input)?, *dim, *weighted, *list, *matrix_tree),
            Command::Skein { input, verify, trace } => {
                let k = load(input)?;
                match verify {
                    Some(id) => {
                        let cell = k.lookup(id).or_else(fail)?;
                        let r = verify_skein(&k, cell, &self.limits).or_else(fail)?;
                        self.skein_report(&k, &r)
                    }
                    None => {
                        let t = skein_evaluate(&k, &self.limits).or_else(fail)?;
                        if *trace {
                            Ok(self.emit(t.to_string(), serde_json::to_value(&t).expect("serializable")))
                        } else {
                            Ok(self.emit(format!("{}\n", t.result), t.result.to_json()))
                        }
                    }
                }
            }
            Command::Matroid {
                input,
                dim,
                tutte,
                bases,
                check,
            } => self.matroid(&load(input)?, *dim, *tutte, *bases, *check),
            Command::Duality {
                pair,
                dim,
                modified,
                alexander,
            } => self.duality(pair, *dim, *modified, *alexander),
            Command::ListBuiltins => Ok(self.list_builtins()),
            Command::Validate { input } => {
                let k = load(input)?;
                let value = json!({
                    "name": k.name(),
                    "dim": k.dim(),
                    "f_vector": k.f_vector(),
                    "valid": true,
                });
                Ok(self.emit(format::serialize(&k), value))
            }
        }
    }

    fn trees(&self, k: &CellComplex, dim: Option<usize>, weighted: bool, list: bool, matrix_tree: bool) -> Outcome {
        let j = dim.unwrap_or(k.dim());
        if matrix_tree {
            let gamma = default_gamma(k, j).or_else(fail)?;
            let mt = matrix_tree_weighted(k, j, &gamma).or_else(fail)?;
            let value = json!({
                "dim": j,
                "weighted": big(&mt.weighted),
                "determinant": big(&mt.determinant),
                "complex_torsion": big(&mt.complex_torsion),
                "gamma_torsion": big(&mt.gamma_torsion),
                "gamma": mt.gamma,
            });
            return Ok(self.emit(format!("{}\n", mt.weighted), value));
        }
        let trees = enumerate_csts(k, j, &self.limits).or_else(fail)?;
        let mut count = BigInt::from(0);
        let mut text = String::new();
        let mut items = Vec::new();
        for &cells in &trees {
            let s = SpanningSubcomplex::new(k, j, cells).or_else(fail)?;
            let w = if weighted && j >= 1 {
                let t = homology(s, j - 1, true).or_else(fail)?.torsion_order;
                &t * &t
            } else {
                BigInt::one()
            };
            count += &w;
            let ids = s.ids();
            if list {
                if weighted {
                    let _ = writeln!(text, "{{{}}} {w}", ids.join(", "));
                } else {
                    let _ = writeln!(text, "{{{}}}", ids.join(", "));
                }
            }
            items.push(json!({ "cells": ids, "weight": big(&w) }));
        }
        if !list {
            let _ = writeln!(text, "{count}");
        }
        let mut value = json!({ "dim": j, "weighted": weighted, "count": big(&count) });
        if list {
            value["trees"] = Value::Array(items);
        }
        Ok(self.emit(text, value))
    }

    fn skein_report(&self, k: &CellComplex, r: &SkeinReport) -> Outcome {
        let mut flags = Vec::new();
        if r.class.is_loop {
            flags.push("loop");
        }
        if r.class.is_bridge {
            flags.push("bridge");
        }
        if r.class.boundary_regular {
            flags.push("boundary-regular");
        }
        let free: Vec<&str> = r.class.free_faces.iter().map(|&f| k.id(f)).collect();
        let mut text = String::new();
        let _ = writeln!(text, "cell: {}", r.cell);
        let _ = writeln!(text, "class: {}", if flags.is_empty() { "none".to_string() } else { flags.join(", ") });
        let _ = writeln!(text, "free faces: {}", if free.is_empty() { "none".to_string() } else { free.join(", ") });
        let _ = writeln!(text, "case: {}", r.case);
        let _ = writeln!(text, "polynomial: {}", r.polynomial);
        let _ = writeln!(text, "deletion: {}", r.deletion);
        let _ = writeln!(text, "contraction: {}", r.contraction);
        if let Some(rhs) = &r.rhs {
            let _ = writeln!(text, "rhs: {rhs}");
        } else {
            let _ = writeln!(text, "contraction + deletion: {}", &r.contraction + &r.deletion);
        }
        if let Some(holds) = r.holds {
            let _ = writeln!(text, "holds: {holds}");
        }
        if let Some(c) = &r.collapse {
            let _ = writeln!(text, "collapse across {}: {} ({})", c.face, c.polynomial, verdict(c.holds));
        }
        let mut value = serde_json::to_value(r).expect("serializable");
        value["class"]["free_faces"] = json!(free);
        let out = self.emit(text, value);
        match (r.case, r.holds) {
            (SkeinCase::NotApplicable, _) => Err((
                out,
                Failure {
                    code: "NotApplicable".into(),
                    message: format!("no skein relation applies to `{}`", r.cell),
                },
            )),
            (_, Some(false)) => Err(check_failed(out, "the skein relation")),
            _ => Ok(out),
        }
    }

    fn matroid(&self, k: &CellComplex, dim: Option<usize>, tutte: bool, bases: bool, check: bool) -> Outcome {
        let j = dim.unwrap_or(k.dim());
        if j == 0 || j > k.dim() {
            return fail(Error::OutOfRange {
                what: "matroid dimension",
                value: j as i64,
                min: 1,
                max: k.dim() as i64,
            });
        }
        let m = column_matroid(k, j).or_else(fail)?;
        let mut text = String::new();
        let mut value = json!({ "dim": j, "elements": m.ids(), "rank": m.full_rank() });
        if !(tutte || bases || check) {
            let _ = writeln!(text, "elements: {}", m.len());
            let _ = writeln!(text, "rank: {}", m.full_rank());
        }
        if tutte {
            let t = m.tutte(&self.limits).or_else(fail)?;
            let _ = writeln!(text, "{t}");
            value["tutte"] = t.to_json();
        }
        if bases {
            let list = m.bases(&self.limits).or_else(fail)?;
            let names: Vec<Vec<String>> = list.iter().map(|&b| m.names(b)).collect();
            for b in &names {
                let _ = writeln!(text, "{{{}}}", b.join(", "));
            }
            value["bases"] = json!(names);
        }
        if check {
            let r = check_matroid_correspondence(k, j, &self.limits).or_else(fail)?;
            let _ = writeln!(text, "tutte: {}", r.tutte);
            let _ = writeln!(text, "polynomial: {}", r.tkr);
            let _ = writeln!(text, "deletion-contraction = corank-nullity: {}", verdict(r.tutte_consistent));
            let _ = writeln!(text, "polynomial = tutte(X + 1, Y + 1): {}", verdict(r.shift_matches));
            let trees = match r.bases_are_trees {
                Some(ok) => verdict(ok),
                None => "not applicable",
            };
            let _ = writeln!(text, "bases = trees: {trees}");
            let _ = writeln!(text, "activities expansion: {}", verdict(r.activities_match));
            value["check"] = serde_json::to_value(&r).expect("serializable");
            value["check"]["passed"] = json!(r.passed());
            let out = self.emit(text, value);
            return if r.passed() {
                Ok(out)
            } else {
                Err(check_failed(out, "the matroid correspondence"))
            };
        }
        Ok(self.emit(text, value))
    }

    fn duality(&self, name: &str, j: usize, modified: bool, alexander: bool) -> Outcome {
        let path = Path::new(name);
        let is_pair = DUAL_PAIRS.contains(&name);
        if is_pair && path.is_file() {
            return fail(Error::Ambiguous(name.to_string()));
        }
        let pair = if is_pair {
            DualPair::builtin(name)
        } else if path.is_file() {
            let base = path.parent().map(Path::to_path_buf);
            let seed = self.seed;
            read(path).and_then(|text| {
                DualPair::parse(&text, |n| match resolve(n, seed, None) {
                    Err(Error::UnknownName(_)) => resolve(n, seed, base.as_deref()),
                    other => other,
                })
            })
        } else {
            Err(Error::UnknownName(name.to_string()))
        }
        .or_else(fail)?;
        let r = check_duality(&pair, j, modified, &self.limits).or_else(fail)?;
        let mut text = String::new();
        let _ = writeln!(text, "primal (dim {}): {}", r.dim, r.primal);
        let _ = writeln!(text, "dual (dim {}, swapped): {}", r.dual_dim, r.dual_swapped);
        let _ = writeln!(text, "duality: {}", verdict(r.holds));
        let mut value = serde_json::to_value(&r).expect("serializable");
        let mut ok = r.holds;
        if alexander {
            let a = check_alexander_identities(&pair, j, &self.limits).or_else(fail)?;
            let _ = writeln!(
                text,
                "alexander: {} subsets, {} failures ({})",
                a.subsets,
                a.failures.len(),
                verdict(a.holds)
            );
            ok &= a.holds;
            value["alexander"] = serde_json::to_value(&a).expect("serializable");
        }
        let out = self.emit(text, value);
        if ok {
            Ok(out)
        } else {
            Err(check_failed(out, "duality"))
        }
    }

    fn list_builtins(&self) -> String {
        let mut text = String::new();
        let mut items = Vec::new();
        for e in catalog() {
            let k = builtin(e.name).expect("catalog entries build");
            let f = k.f_vector();
            let fs: Vec<String> = f.iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "{:<28} ({})  {}", e.name, fs.join(", "), e.description);
            items.push(json!({ "name": e.name, "f_vector": f, "description": e.description }));
        }
        let family = "simplex-skeleton(n,k)";
        let _ = writeln!(text, "{family:<28} {:<10} k-skeleton of the (n-1)-simplex", "");
        for p in DUAL_PAIRS {
            let header = catalog::builtin_pair_text(p).expect("shipped pair");
            let first = header.lines().next().unwrap_or_default();
            let _ = writeln!(text, "pair {p}: {}", first.trim_start_matches("dual "));
        }
        self.emit(
            text,
            json!({ "complexes": items, "families": [family], "pairs": DUAL_PAIRS }),
        )
    }
}
