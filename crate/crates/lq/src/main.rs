//! `lq`: link invariants from Gauss codes, one JSON object per run.
//!
//! Every subcommand reads link files with one Gauss code per line
//! (`#` comments and blank lines ignored) and writes a single line of
//! compact JSON to stdout. Diagnostics go to stderr. Exit codes:
//! 0 success (negative decisions are successes), 2 parse/validation
//! error, 3 cap exceeded, 4 precondition violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linkquandle::caps::Caps;
use linkquandle::coloring::{
    count_homs_bruteforce, count_homs_tc_fixedpoint, count_homs_tc_propagate, xn, FiniteQuandle,
};
use linkquandle::diagram::LinkDiagram;
use linkquandle::groups::{nilpotent3, saktra_condition, wirtinger, SaktraMode};
use linkquandle::lattice::LatticeIndex;
use linkquandle::linking::{
    articulation_points, connected_components, inseparable_sublinks, linking_graph,
    linking_matrix, LinkingGraph, LinkingMatrix,
};
use linkquandle::tcquandle::{
    canonical_form, family_from_linking, qs_isomorphic_pm, tc_isomorphic_classical,
    IsoCertificate, SubgroupFamily,
};
use linkquandle::{Error, Result};

#[derive(Parser)]
#[command(name = "lq", version, about = "Link invariants from Gauss codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a Gauss code and print its normalized form
    Parse { file: PathBuf },
    /// Linking matrix, linking graph, and its decomposition
    Linking { file: PathBuf },
    /// Subgroup family, orbit indices, and canonical form
    Tc { file: PathBuf },
    /// Decide whether two links have isomorphic tc quandles
    TcIso {
        file1: PathBuf,
        file2: PathBuf,
        /// Require symmetric matrices and per-graph-component signs
        #[arg(long)]
        classical: bool,
    },
    /// Count colorings of a link by a finite quandle
    Color {
        file: PathBuf,
        /// Target quandle: `xn:N` or `table:PATH`
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Emit a group presentation for a link
    Group {
        file: PathBuf,
        #[arg(long, value_enum)]
        quotient: Quotient,
    },
    /// Decide the per-sublink sign matching condition
    Saktra {
        file1: PathBuf,
        file2: PathBuf,
        /// Also search over component re-indexings
        #[arg(long)]
        search: bool,
    },
    /// Apply random crossing-insertion moves to a link
    Fuzz {
        file: PathBuf,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        seed: u64,
        /// Verify that the invariants survived the moves
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Propagate,
    Fixedpoint,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quotient {
    Wirtinger,
    Nilpotent3,
}

#[derive(Serialize)]
struct ParseOut {
    gauss: String,
    mu: usize,
    crossings: usize,
}

#[derive(Serialize)]
struct LinkingOut {
    matrix: LinkingMatrix,
    graph: LinkingGraph,
    connected_components: Vec<Vec<usize>>,
    articulation_points: Vec<usize>,
    inseparable_sublinks: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct TcOut {
    family: SubgroupFamily,
    rows: Vec<Vec<i64>>,
    orbit_indices: Vec<Option<String>>,
    canonical_form: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
struct TcIsoOut {
    isomorphic: bool,
    perm: Option<Vec<usize>>,
    signs: Option<Vec<i8>>,
}

#[derive(Serialize)]
struct CountsOut {
    brute: u64,
    propagate: u64,
    fixedpoint: u64,
}

#[derive(Serialize)]
struct ColorAllOut {
    k: u64,
    methods_agree: bool,
    counts: CountsOut,
}

#[derive(Serialize)]
struct ColorOut {
    k: u64,
}

#[derive(Serialize)]
struct GroupOut {
    render: String,
    gens: Vec<String>,
    relators: Vec<Vec<(usize, i64)>>,
}

#[derive(Serialize)]
struct SublinkSignOut {
    components: Vec<usize>,
    sign: i8,
}

#[derive(Serialize)]
struct SaktraOut {
    holds: bool,
    perm: Option<Vec<usize>>,
    sublinks: Option<Vec<SublinkSignOut>>,
}

#[derive(Serialize)]
struct CheckOut {
    linking_matrix: bool,
    canonical_form: bool,
    colorings: bool,
    presentation: bool,
    passed: bool,
}

#[derive(Serialize)]
struct FuzzOut {
    gauss: String,
    steps: u32,
    seed: u64,
    check: Option<CheckOut>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn read_one_link(path: &Path) -> Result<LinkDiagram> {
    let links = LinkDiagram::parse_links(&read_file(path)?)?;
    if links.len() != 1 {
        return Err(Error::Precondition(format!(
            "{} contains {} links, expected exactly 1",
            path.display(),
            links.len()
        )));
    }
    Ok(links.into_iter().next().unwrap())
}

fn parse_target(arg: &str) -> Result<FiniteQuandle> {
    if let Some(n) = arg.strip_prefix("xn:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Validation(format!("bad target size in {arg:?}")))?;
        if n < 1 {
            return Err(Error::Validation("target xn:N needs N >= 1".into()));
        }
        return Ok(xn(n));
    }
    if let Some(path) = arg.strip_prefix("table:") {
        let q = FiniteQuandle::parse_table(&read_file(Path::new(path))?)?;
        if let Err(v) = q.check_axioms() {
            return Err(Error::BadTable(v.to_string()));
        }
        return Ok(q);
    }
    Err(Error::Validation(format!(
        "target must be `xn:N` or `table:PATH`, got {arg:?}"
    )))
}

fn one_based(perm: &[usize]) -> Vec<usize> {
    perm.iter().map(|&p| p + 1).collect()
}

fn iso_out(cert: Option<IsoCertificate>) -> TcIsoOut {
    match cert {
        Some(c) => TcIsoOut {
            isomorphic: true,
            perm: Some(one_based(&c.perm)),
            signs: c.signs,
        },
        None => TcIsoOut { isomorphic: false, perm: None, signs: None },
    }
}

fn run(cli: Cli, caps: &Caps) -> Result<String> {
    let out = match cli.command {
        Command::Parse { file } => {
            let d = read_one_link(&file)?;
            to_json(&ParseOut {
                gauss: d.serialize(),
                mu: d.components().len(),
                crossings: d.crossing_count(),
            })
        }
        Command::Linking { file } => {
            let d = read_one_link(&file)?;
            let m = linking_matrix(&d);
            let graph = linking_graph(&m);
            to_json(&LinkingOut {
                connected_components: connected_components(&graph),
                articulation_points: articulation_points(&graph),
                inseparable_sublinks: inseparable_sublinks(&m, caps)?,
                matrix: m,
                graph,
            })
        }
        Command::Tc { file } => {
            let d = read_one_link(&file)?;
            let m = linking_matrix(&d);
            let (family, rows) = family_from_linking(&m);
            let orbit_indices = family
                .orbit_indexes()
                .into_iter()
                .map(|i| match i {
                    LatticeIndex::Finite(n) => Some(n.to_string()),
                    LatticeIndex::Infinite => None,
                })
                .collect();
            let canonical = match canonical_form(&m, caps) {
                Ok(c) => Some(c.rows().to_vec()),
                Err(Error::CapExceeded(_)) => None,
                Err(e) => return Err(e),
            };
            to_json(&TcOut {
                rows: rows.rows().to_vec(),
                orbit_indices,
                canonical_form: canonical,
                family,
            })
        }
        Command::TcIso { file1, file2, classical } => {
            let m1 = linking_matrix(&read_one_link(&file1)?);
            let m2 = linking_matrix(&read_one_link(&file2)?);
            let cert = if classical {
                tc_isomorphic_classical(&m1, &m2, caps)?
            } else {
                let (_, r1) = family_from_linking(&m1);
                let (_, r2) = family_from_linking(&m2);
                qs_isomorphic_pm(&r1, &r2, caps)?
            };
            to_json(&iso_out(cert))
        }
        Command::Color { file, target, method } => {
            let d = read_one_link(&file)?;
            let t = parse_target(&target)?;
            match method {
                Method::Brute => to_json(&ColorOut { k: count_homs_bruteforce(&d, &t, caps)? }),
                Method::Propagate => to_json(&ColorOut { k: count_homs_tc_propagate(&d, &t)? }),
                Method::Fixedpoint => {
                    let m = linking_matrix(&d);
                    to_json(&ColorOut { k: count_homs_tc_fixedpoint(&m, &t)? })
                }
                Method::All => {
                    let brute = count_homs_bruteforce(&d, &t, caps)?;
                    let propagate = count_homs_tc_propagate(&d, &t)?;
                    let fixedpoint = count_homs_tc_fixedpoint(&linking_matrix(&d), &t)?;
                    assert!(
                        brute == propagate && propagate == fixedpoint,
                        "internal error: counting methods disagree ({brute}, {propagate}, {fixedpoint})"
                    );
                    to_json(&ColorAllOut {
                        k: brute,
                        methods_agree: true,
                        counts: CountsOut { brute, propagate, fixedpoint },
                    })
                }
            }
        }
        Command::Group { file, quotient } => {
            let d = read_one_link(&file)?;
            let p = match quotient {
                Quotient::Wirtinger => wirtinger(&d),
                Quotient::Nilpotent3 => nilpotent3(&linking_matrix(&d)),
            };
            to_json(&GroupOut {
                render: p.render(),
                relators: p
                    .relators
                    .iter()
                    .map(|w| w.iter().map(|&(g, e)| (g + 1, e)).collect())
                    .collect(),
                gens: p.generators,
            })
        }
        Command::Saktra { file1, file2, search } => {
            let m1 = linking_matrix(&read_one_link(&file1)?);
            let m2 = linking_matrix(&read_one_link(&file2)?);
            let mode = if search { SaktraMode::Search } else { SaktraMode::Fixed };
            let out = match saktra_condition(&m1, &m2, mode, caps)? {
                Some(cert) => SaktraOut {
                    holds: true,
                    perm: cert.perm.as_deref().map(one_based),
                    sublinks: Some(
                        cert.sublinks
                            .into_iter()
                            .map(|(components, sign)| SublinkSignOut { components, sign })
                            .collect(),
                    ),
                },
                None => SaktraOut { holds: false, perm: None, sublinks: None },
            };
            to_json(&out)
        }
        Command::Fuzz { file, steps, seed, check } => {
            let d = read_one_link(&file)?;
            let mutated = d.fuzz(seed, steps as usize);
            let check_out = if check { Some(run_checks(&d, &mutated, caps)?) } else { None };
            to_json(&FuzzOut {
                gauss: mutated.serialize(),
                steps,
                seed,
                check: check_out,
            })
        }
    };
    Ok(out)
}

/// Invariance suite for `fuzz --check`: the moves must preserve the
/// linking matrix and everything derived from it.
fn run_checks(original: &LinkDiagram, mutated: &LinkDiagram, caps: &Caps) -> Result<CheckOut> {
    let m0 = linking_matrix(original);
    let m1 = linking_matrix(mutated);
    let matrix_ok = m0 == m1;
    let canonical_ok = match (canonical_form(&m0, caps), canonical_form(&m1, caps)) {
        (Ok(a), Ok(b)) => a == b,
        // Over the canonical-form cap, matrix equality already decides.
        _ => matrix_ok,
    };
    let mut colorings_ok = true;
    for n in 2..=3 {
        let t = xn(n);
        colorings_ok &=
            count_homs_tc_propagate(original, &t)? == count_homs_tc_propagate(mutated, &t)?;
    }
    let presentation_ok = nilpotent3(&m0).render() == nilpotent3(&m1).render();
    Ok(CheckOut {
        linking_matrix: matrix_ok,
        canonical_form: canonical_ok,
        colorings: colorings_ok,
        presentation: presentation_ok,
        passed: matrix_ok && canonical_ok && colorings_ok && presentation_ok,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output structs always serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::from_env();
    match run(cli, &caps) {
        Ok(json) => {
            println!("{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Syntax { .. }
                | Error::Validation(_)
                | Error::OutOfRange(_)
                | Error::BadTable(_) => 2,
                Error::CapExceeded(_) => 3,
                Error::Precondition(_)
                | Error::NotSymmetric(_)
                | Error::InfiniteOrbit { .. }
                | Error::NotTranslationCommutative => 4,
            };
            ExitCode::from(code)
        }
    }
}
