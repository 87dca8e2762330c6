//! Command-line front end. `run` writes everything to the given sink so the
//! binary and the tests share one code path.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::c4::{self, build_rset, closed_form, verify_theorem};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{Metric, UnresolvedPair, Variant};
use crate::sierpinski::SierpinskiGraph;
use crate::solver::{exact_dimension, SolveOutcome, DEFAULT_BUDGET};
use crate::twins::{find_twins, TwinKind};

/// Exit status when a generator or theorem check fails.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status when the solver budget runs out.
pub const EXIT_BUDGET: i32 = 3;

const RSET_LEVEL_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build S_G^r and print a summary (or export with --format).
    Build,
    /// Exact dimensions with bases.
    Dims,
    /// Check the given vertex words against a generator variant.
    VerifyGenerator,
    /// Twin sets and twin lower bounds.
    Twins,
    /// Print R_r for S_C4^r.
    Rset,
    /// Machine-check the S_C4^r closed forms.
    Verify,
    /// CSV of sizes and dimensions of S_C4^r for r = 1..rmax.
    Table,
    /// Write the graph as DOT or adjacency text.
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Mg,
    Emg,
    Ftmg,
    Ftemg,
    All,
}

impl VariantArg {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantArg::Mg => vec![Variant::Mg],
            VariantArg::Emg => vec![Variant::Emg],
            VariantArg::Ftmg => vec![Variant::Ftmg],
            VariantArg::Ftemg => vec![Variant::Ftemg],
            VariantArg::All => Variant::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Dot,
    Adjacency,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "sierpinski",
    about = "Generalized Sierpinski graphs and their metric dimensions"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Builtin base graph: C<n>, K<n> or P<n>.
    #[arg(long, default_value = "C4")]
    pub base: String,

    /// Base graph in adjacency-list format; overrides --base.
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// Sierpinski level.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,

    #[arg(long, value_enum, default_value = "mg")]
    pub variant: VariantArg,

    /// Node budget for the exact search.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,

    #[arg(long, default_value_t = 4)]
    pub rmax: u32,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Vertex words (or indices) for verify-generator.
    pub set: Vec<String>,
}

/// Parses `C4`, `K3`, `P5` (case-insensitive).
pub fn builtin_graph(name: &str) -> Result<Graph> {
    let unknown = || {
        Error::Unsupported(format!(
            "unknown builtin graph {name:?}; use C<n>, K<n> or P<n>"
        ))
    };
    let mut chars = name.chars();
    let kind = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    match kind {
        'C' => Graph::cycle(n),
        'K' => Graph::complete(n),
        'P' => Graph::path(n),
        _ => Err(unknown()),
    }
}

fn base_graph(cfg: &RunConfig) -> Result<Graph> {
    match &cfg.file {
        Some(path) => Graph::from_adjacency_text(&std::fs::read_to_string(path)?),
        None => builtin_graph(&cfg.base),
    }
}

fn target_graph(cfg: &RunConfig) -> Result<Graph> {
    Ok(SierpinskiGraph::build(&base_graph(cfg)?, cfg.r as usize)?.into_graph())
}

/// The C4-specific commands refuse any other base instead of ignoring it.
fn require_c4(cfg: &RunConfig) -> Result<()> {
    if cfg.file.is_some() || !cfg.base.eq_ignore_ascii_case("C4") {
        return Err(Error::Unsupported(format!(
            "{:?} is only defined for the base graph C4",
            cfg.command
        )));
    }
    Ok(())
}

fn format_set(g: &Graph, set: &[usize]) -> String {
    let labels: Vec<String> = set.iter().map(|&u| g.label(u)).collect();
    format!("{{{}}}", labels.join(","))
}

fn resolve_vertex(g: &Graph, lookup: &HashMap<String, usize>, token: &str) -> Result<usize> {
    if let Some(&u) = lookup.get(token) {
        return Ok(u);
    }
    match token.parse::<usize>() {
        Ok(u) if u < g.vertex_count() => Ok(u),
        _ => Err(Error::InvalidWord {
            word: token.to_string(),
            reason: "not a vertex of the graph".into(),
        }),
    }
}

/// Runs one command, writing its output to `out` (or `--out`). Returns the
/// process exit status.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let mut buf = String::new();
    let status = match cfg.command {
        Command::Build => build(cfg, &mut buf)?,
        Command::Export => export(cfg, &mut buf)?,
        Command::Dims => dims(cfg, &mut buf)?,
        Command::VerifyGenerator => verify_generator(cfg, &mut buf)?,
        Command::Twins => twins(cfg, &mut buf)?,
        Command::Rset => rset(cfg, &mut buf)?,
        Command::Verify => verify(cfg, &mut buf)?,
        Command::Table => table(cfg, &mut buf)?,
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(buf.as_bytes())?,
    }
    Ok(status)
}

fn build(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    match cfg.format {
        Format::Dot | Format::Adjacency => export(cfg, buf),
        Format::Text | Format::Csv => {
            let g = target_graph(cfg)?;
            let row = [
                g.vertex_count().to_string(),
                g.edge_count().to_string(),
                g.is_connected().to_string(),
                g.is_bipartite().to_string(),
            ];
            if cfg.format == Format::Csv {
                writeln!(buf, "vertices,edges,connected,bipartite").unwrap();
                writeln!(buf, "{}", row.join(",")).unwrap();
            } else {
                writeln!(
                    buf,
                    "vertices={} edges={} connected={} bipartite={}",
                    row[0], row[1], row[2], row[3]
                )
                .unwrap();
            }
            Ok(0)
        }
    }
}

fn export(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    let g = target_graph(cfg)?;
    match cfg.format {
        Format::Dot => buf.push_str(&g.to_dot()),
        Format::Adjacency | Format::Text => buf.push_str(&g.to_adjacency_text()),
        Format::Csv => {
            return Err(Error::Unsupported(
                "export supports --format dot or adjacency".into(),
            ))
        }
    }
    Ok(0)
}

fn dims(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    let g = target_graph(cfg)?;
    let mut summary = Vec::new();
    let mut details = Vec::new();
    let mut status = 0;
    for v in cfg.variant.variants() {
        match exact_dimension(&g, v, cfg.budget)? {
            SolveOutcome::Solved(res) => {
                summary.push(format!("{}={}", v.dim_name(), res.value));
                details.push(match cfg.format {
                    Format::Csv => format!(
                        "{v},{},{},{},\"{}\"",
                        res.value,
                        res.bound_used,
                        res.nodes_explored,
                        format_set(&g, &res.basis)
                    ),
                    _ => format!(
                        "{v}: value={} bound={} nodes={} basis={}",
                        res.value,
                        res.bound_used,
                        res.nodes_explored,
                        format_set(&g, &res.basis)
                    ),
                });
            }
            SolveOutcome::Unknown {
                lower,
                upper,
                witness,
                nodes_explored,
                ..
            } => {
                status = EXIT_BUDGET;
                summary.push(format!("{}=unknown[{lower},{upper}]", v.dim_name()));
                details.push(match cfg.format {
                    Format::Csv => format!("{v},unknown,{lower},{nodes_explored},\"{}\"", format_set(&g, &witness)),
                    _ => format!(
                        "{v}: budget exhausted after {nodes_explored} nodes; value in [{lower}, {upper}], witness={}",
                        format_set(&g, &witness)
                    ),
                });
            }
        }
    }
    if cfg.format == Format::Csv {
        writeln!(buf, "variant,value,bound,nodes,basis").unwrap();
    } else {
        writeln!(buf, "{}", summary.join(" ")).unwrap();
    }
    for line in details {
        writeln!(buf, "{line}").unwrap();
    }
    Ok(status)
}

fn verify_generator(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    let g = target_graph(cfg)?;
    let lookup: HashMap<String, usize> = (0..g.vertex_count()).map(|u| (g.label(u), u)).collect();
    let set = cfg
        .set
        .iter()
        .map(|t| resolve_vertex(&g, &lookup, t))
        .collect::<Result<Vec<_>>>()?;
    let metric = Metric::new(&g)?;
    let mut status = 0;
    for v in cfg.variant.variants() {
        let cert = metric.check(v, &set)?;
        match cert.witness {
            None => writeln!(buf, "{v}: accepted").unwrap(),
            Some(w) => {
                status = EXIT_CHECK_FAILED;
                let pair = match w.pair {
                    UnresolvedPair::Vertices(a, b) => format!("{} {}", g.label(a), g.label(b)),
                    UnresolvedPair::Edges((a, b), (c, d)) => format!(
                        "{}-{} {}-{}",
                        g.label(a),
                        g.label(b),
                        g.label(c),
                        g.label(d)
                    ),
                };
                writeln!(
                    buf,
                    "{v}: rejected; unresolved pair {pair}; resolvers {}",
                    format_set(&g, &w.resolvers)
                )
                .unwrap();
            }
        }
    }
    Ok(status)
}

fn twins(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    let g = target_graph(cfg)?;
    let tp = find_twins(&g);
    for set in &tp.sets {
        let kind = match set.kind {
            TwinKind::Adjacent => "adjacent",
            TwinKind::NonAdjacent => "non-adjacent",
        };
        writeln!(buf, "{kind} {}", format_set(&g, &set.members)).unwrap();
    }
    if !tp.anomalies.is_empty() {
        writeln!(buf, "anomalies {}", format_set(&g, &tp.anomalies)).unwrap();
    }
    let lb = tp.lower_bounds();
    writeln!(
        buf,
        "|T|={} k={} dim>={} ftdim>={} dimE>={} ftdimE>={}",
        tp.twin_count(),
        tp.set_count(),
        lb.dim,
        lb.ftdim,
        lb.dim_e,
        lb.ftdim_e
    )
    .unwrap();
    Ok(0)
}

fn rset(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    require_c4(cfg)?;
    let r = cfg.r as usize;
    if r > RSET_LEVEL_CAP {
        return Err(Error::Unsupported(format!(
            "rset is capped at r={RSET_LEVEL_CAP}, got r={r}"
        )));
    }
    for w in build_rset(r)?.words {
        writeln!(buf, "{w}").unwrap();
    }
    Ok(0)
}

fn verify(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    require_c4(cfg)?;
    let report = verify_theorem(cfg.r as usize)?;
    writeln!(buf, "{report}").unwrap();
    Ok(if report.passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn table(cfg: &RunConfig, buf: &mut String) -> Result<i32> {
    require_c4(cfg)?;
    let rmax = cfg.rmax as usize;
    if rmax > c4::FORMULA_LEVEL_CAP {
        return Err(Error::Unsupported(format!(
            "table is capped at rmax={}, got {rmax}",
            c4::FORMULA_LEVEL_CAP
        )));
    }
    writeln!(buf, "r,vertices,edges,dim,ftdim,dimE,ftdimE").unwrap();
    for r in 1..=rmax {
        let values: Vec<u64> = if r == 1 {
            // Outside the closed-form range; solve C4 directly.
            let g = c4::c4();
            [Variant::Mg, Variant::Ftmg, Variant::Emg, Variant::Ftemg]
                .into_iter()
                .map(|v| {
                    exact_dimension(&g, v, cfg.budget)?
                        .value()
                        .map(|x| x as u64)
                        .ok_or_else(|| Error::Unsupported("budget exhausted on C4".into()))
                })
                .collect::<Result<_>>()?
        } else {
            [Variant::Mg, Variant::Ftmg, Variant::Emg, Variant::Ftemg]
                .into_iter()
                .map(|v| closed_form(v, r))
                .collect::<Result<_>>()?
        };
        writeln!(
            buf,
            "{r},{},{},{},{},{},{}",
            c4::vertex_count(r),
            c4::edge_count(r),
            values[0],
            values[1],
            values[2],
            values[3]
        )
        .unwrap();
    }
    Ok(0)
}
