//! Command-line front door: generation, checking, extraction, and
//! verification campaigns.
//!
//! Exit codes: 0 success / claim verified, 1 claim refuted / none,
//! 2 usage or input error, 3 inconclusive (budget).

mod verify;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vmkit::blocking::{find_blocking_sequence, is_blocking_sequence, BlockingVerdict};
use vmkit::extract::{self, Extraction, ExtractionReport, Mode};
use vmkit::families::{self, FamilySpec, LadderSpec};
use vmkit::graph::Graph;
use vmkit::graph6;
use vmkit::rank;
use vmkit::search::{self, Outcome};
use vmkit::structure;
use vmkit::trace::OpTrace;

#[derive(Parser)]
#[command(name = "vmkit", version, about = "vertex-minor calculus toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    Edges,
}

#[derive(Args)]
struct OutOpt {
    /// write the primary output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a named family instance (e.g. `gen cycle 7`,
    /// `gen matchjoin complete 3 complete 3`)
    Gen {
        /// family spec tokens
        #[arg(required = true)]
        spec: Vec<String>,
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Apply a trace file to a graph and report the replay (and claim)
    Op {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[arg(long, value_name = "TRACE")]
        trace: PathBuf,
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Cut-rank ρ(X), or cross-rank ρ*(X, Y) with --against
    Cutrank {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        /// comma-separated vertex ids
        #[arg(long)]
        set: String,
        /// second set for the cross form
        #[arg(long)]
        against: Option<String>,
    },
    /// Enumerate all sets through an anchor with given size and cut-rank
    Profile {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[arg(long)]
        anchor: u32,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Primality test (exit 0 prime, 1 not prime)
    Prime {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
    },
    /// Find a split, printed as four id lists A|A0|B|B0 (exit 1 when prime)
    Split {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
    },
    /// Blocking sequences: find or check
    Block {
        #[command(subcommand)]
        sub: BlockCmd,
    },
    /// Is the target a vertex-minor of the input? Emits a witness trace
    VmCheck {
        #[arg(long, value_name = "GRAPH")]
        target: PathBuf,
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        /// random tries for graphs above the exhaustive bound
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Local equivalence of two graphs (witness word or none)
    LocallyEquivalent {
        g: PathBuf,
        h: PathBuf,
        /// orbit class budget
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Enumerate the local-complementation orbit
    Orbit {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run a constructive extractor; emits the report with the trace
    Extract {
        #[command(subcommand)]
        sub: ExtractCmd,
    },
    /// Verification campaigns over instance sets (JSON-lines report)
    Verify {
        /// bouchet | optimality | h3-census | invariants
        suite: String,
        #[arg(long, default_value = "7")]
        max_n: usize,
        #[arg(long, default_value = "42")]
        seed: u64,
        #[arg(long, default_value = "1")]
        jobs: usize,
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Subcommand)]
enum BlockCmd {
    Find {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Check {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        seq: String,
    },
}

#[derive(Subcommand)]
enum ExtractCmd {
    /// Fan F_{3n} to C_{2n+1}
    Fan {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Generalized ladder to C_{4n+3}
    Ladder {
        /// graph file (ladder structure is re-derived)
        #[arg(long, value_name = "GRAPH", conflicts_with_all = ["random", "deg3"])]
        r#in: Option<PathBuf>,
        /// generate: a,b,density,seed
        #[arg(long, value_name = "A,B,DENSITY,SEED")]
        random: Option<String>,
        /// generate the canonical degree-3 zigzag with parameter n
        #[arg(long, value_name = "N")]
        deg3: Option<usize>,
        #[arg(long, value_name = "N")]
        target_cycle: usize,
        #[arg(long)]
        best_effort: bool,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Prime graph with a long induced path to C_{4n+3}
    Path {
        #[arg(long, value_name = "GRAPH")]
        r#in: PathBuf,
        #[arg(long, value_name = "N")]
        target_cycle: usize,
        #[arg(long)]
        best_effort: bool,
        #[command(flatten)]
        out: OutOpt,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, vmkit::Error> {
    let text = fs::read_to_string(path)?;
    graph6::parse_auto(&text)
}

fn parse_ids(s: &str) -> Result<Vec<u32>, vmkit::Error> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim().parse::<u32>().map_err(|_| {
                vmkit::Error::invalid("id list", format!("bad vertex id `{t}`"))
            })
        })
        .collect()
}

fn emit(out: &OutOpt, text: &str) -> Result<(), vmkit::Error> {
    match &out.out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn format_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::G6 => graph6::to_graph6(g),
        Format::Edges => graph6::to_edge_list(g),
    }
}

fn default_budget() -> usize {
    // VMKIT_BUDGET_MS caps orbit-style searches; interpreted as a class
    // budget proportional to the time allowance
    std::env::var("VMKIT_BUDGET_MS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .map(|ms| ms.saturating_mul(100).max(1000))
        .unwrap_or(1_000_000)
}

fn report_text(r: &ExtractionReport) -> String {
    format!(
        "target: {}\nsteps: {}\nwall_ms: {}\n--- trace ---\n{}",
        r.target.to_text(),
        r.stats.steps,
        r.stats.wall_ms,
        r.trace
    )
}

fn run(cli: Cli) -> Result<ExitCode, vmkit::Error> {
    let ok = ExitCode::from(0);
    let refuted = ExitCode::from(1);
    let inconclusive = ExitCode::from(3);
    match cli.cmd {
        Cmd::Gen { spec, format, out } => {
            let spec = FamilySpec::parse(&spec.join(" "))?;
            let g = families::make(&spec)?;
            emit(&out, &format_graph(&g, format))?;
            Ok(ok)
        }
        Cmd::Op {
            r#in,
            trace,
            format,
            out,
        } => {
            let g = read_graph(&r#in)?;
            let t = OpTrace::parse(&fs::read_to_string(&trace)?)?;
            let res = t.replay(&g)?;
            let mut text = format_graph(&res.graph, format);
            text.push('\n');
            if let Some(okc) = res.claim_ok {
                text.push_str(if okc { "claim: verified\n" } else { "claim: refuted\n" });
            }
            emit(&out, &text)?;
            Ok(if res.claim_ok == Some(false) { refuted } else { ok })
        }
        Cmd::Cutrank { r#in, set, against } => {
            let g = read_graph(&r#in)?;
            let xs = parse_ids(&set)?;
            let r = match against {
                Some(ys) => rank::cross_rank(&g, &xs, &parse_ids(&ys)?)?,
                None => rank::cut_rank(&g, &xs)?,
            };
            println!("{r}");
            Ok(ok)
        }
        Cmd::Profile {
            r#in,
            anchor,
            size,
            rank: want,
        } => {
            let g = read_graph(&r#in)?;
            let profile = rank::cutrank_profile(&g, anchor, size, want)?;
            println!("{}", profile.sets.len());
            for set in &profile.sets {
                let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                println!("{}", ids.join(","));
            }
            Ok(ok)
        }
        Cmd::Prime { r#in } => {
            let g = read_graph(&r#in)?;
            if structure::is_prime(&g)? {
                println!("prime");
                Ok(ok)
            } else {
                println!("not prime");
                Ok(refuted)
            }
        }
        Cmd::Split { r#in } => {
            let g = read_graph(&r#in)?;
            match structure::find_split(&g)? {
                Some(s) => {
                    let fmt = |v: &Vec<u32>| {
                        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    };
                    println!("{}|{}|{}|{}", fmt(&s.a), fmt(&s.a0), fmt(&s.b), fmt(&s.b0));
                    Ok(ok)
                }
                None => {
                    println!("none");
                    Ok(refuted)
                }
            }
        }
        Cmd::Block { sub } => match sub {
            BlockCmd::Find { r#in, a, b } => {
                let g = read_graph(&r#in)?;
                let (a, b) = (parse_ids(&a)?, parse_ids(&b)?);
                match find_blocking_sequence(&g, &a, &b)? {
                    Some(bs) => {
                        let ids: Vec<String> = bs.seq.iter().map(|v| v.to_string()).collect();
                        println!("{} (base {})", ids.join(","), bs.base);
                        Ok(ok)
                    }
                    None => {
                        println!("none");
                        Ok(refuted)
                    }
                }
            }
            BlockCmd::Check { r#in, a, b, seq } => {
                let g = read_graph(&r#in)?;
                let verdict =
                    is_blocking_sequence(&g, &parse_ids(&a)?, &parse_ids(&b)?, &parse_ids(&seq)?)?;
                println!("{verdict:?}");
                Ok(if verdict == BlockingVerdict::Valid { ok } else { refuted })
            }
        },
        Cmd::VmCheck {
            target,
            r#in,
            budget,
            seed,
            out,
        } => {
            let h = read_graph(&target)?;
            let g = read_graph(&r#in)?;
            if g.n() <= search::VM_EXACT_LIMIT {
                match search::is_vertex_minor(&h, &g)? {
                    Some(w) => {
                        emit(&out, &w.trace.to_string())?;
                        Ok(ok)
                    }
                    None => {
                        println!("none");
                        Ok(refuted)
                    }
                }
            } else {
                let tries = budget.unwrap_or(200);
                match search::is_vertex_minor_randomized(&h, &g, tries, seed)? {
                    Outcome::Found(w) => {
                        emit(&out, &w.trace.to_string())?;
                        Ok(ok)
                    }
                    Outcome::None => {
                        println!("none");
                        Ok(refuted)
                    }
                    Outcome::Inconclusive => {
                        println!("inconclusive");
                        Ok(inconclusive)
                    }
                }
            }
        }
        Cmd::LocallyEquivalent { g, h, budget } => {
            let gg = read_graph(&g)?;
            let hh = read_graph(&h)?;
            match search::locally_equivalent(&gg, &hh, budget.unwrap_or_else(default_budget))? {
                Outcome::Found(word) => {
                    let ids: Vec<String> = word.iter().map(|v| v.to_string()).collect();
                    println!("{}", ids.join(","));
                    Ok(ok)
                }
                Outcome::None => {
                    println!("none");
                    Ok(refuted)
                }
                Outcome::Inconclusive => {
                    println!("inconclusive");
                    Ok(inconclusive)
                }
            }
        }
        Cmd::Orbit { r#in, budget } => {
            let g = read_graph(&r#in)?;
            let orbit = search::local_orbit(&g, budget.unwrap_or_else(default_budget))?;
            println!(
                "{} classes ({})",
                orbit.size,
                if orbit.complete { "complete" } else { "budget exhausted" }
            );
            Ok(if orbit.complete { ok } else { inconclusive })
        }
        Cmd::Extract { sub } => match sub {
            ExtractCmd::Fan { r#in, out } => {
                let g = read_graph(&r#in)?;
                let report = extract::fan_to_cycle(&g)?;
                emit(&out, &report_text(&report))?;
                Ok(ok)
            }
            ExtractCmd::Ladder {
                r#in,
                random,
                deg3,
                target_cycle,
                best_effort,
                out,
            } => {
                let n = cycle_param(target_cycle)?;
                let mode = if best_effort { Mode::BestEffort } else { Mode::Guarantee };
                // the canonical zigzag goes straight to the degree-3 lemma,
                // whose guarantee is 6n degree-3 vertices
                if let Some(nn) = deg3 {
                    let view = families::make_ladder(&LadderSpec::Deg3Canonical { n: nn })?;
                    return match extract::ladder_deg3_to_cycle(&view, n, mode)? {
                        Extraction::Done(report) => {
                            emit(&out, &report_text(&report))?;
                            Ok(ok)
                        }
                        Extraction::Inconclusive(why) => {
                            println!("inconclusive: {why}");
                            Ok(inconclusive)
                        }
                    };
                }
                let view = if let Some(spec) = random {
                    let parts: Vec<&str> = spec.split(',').collect();
                    if parts.len() != 4 {
                        return Err(vmkit::Error::invalid(
                            "ladder spec",
                            "--random wants a,b,density,seed",
                        ));
                    }
                    families::make_ladder(&LadderSpec::Random {
                        a: parts[0].trim().parse().map_err(bad_num)?,
                        b: parts[1].trim().parse().map_err(bad_num)?,
                        density: parts[2].trim().parse().map_err(bad_num)?,
                        seed: parts[3].trim().parse().map_err(bad_num)?,
                    })?
                } else {
                    let path = r#in.ok_or_else(|| {
                        vmkit::Error::invalid("ladder", "need --in, --random, or --deg3")
                    })?;
                    let g = read_graph(&path)?;
                    families::recognize_ladder(&g, 5_000_000).ok_or_else(|| {
                        vmkit::Error::invalid(
                            "ladder",
                            "could not derive a ladder structure from the input",
                        )
                    })?
                };
                match extract::ladder_to_cycle(&view, n, mode)? {
                    Extraction::Done(report) => {
                        emit(&out, &report_text(&report))?;
                        Ok(ok)
                    }
                    Extraction::Inconclusive(why) => {
                        println!("inconclusive: {why}");
                        Ok(inconclusive)
                    }
                }
            }
            ExtractCmd::Path {
                r#in,
                target_cycle,
                best_effort,
                out,
            } => {
                let n = cycle_param(target_cycle)?;
                let g = read_graph(&r#in)?;
                let mode = if best_effort { Mode::BestEffort } else { Mode::Guarantee };
                match extract::path_to_cycle(&g, None, n, mode)? {
                    Extraction::Done(report) => {
                        emit(&out, &report_text(&report))?;
                        Ok(ok)
                    }
                    Extraction::Inconclusive(why) => {
                        println!("inconclusive: {why}");
                        Ok(inconclusive)
                    }
                }
            }
        },
        Cmd::Verify {
            suite,
            max_n,
            seed,
            jobs,
            out,
        } => verify::run_campaign(&suite, max_n, seed, jobs.max(1), &out.out),
    }
}

fn bad_num<E: std::fmt::Display>(e: E) -> vmkit::Error {
    vmkit::Error::invalid("number", e.to_string())
}

/// Target cycle length 4n+3 must come from an admissible n.
fn cycle_param(target: usize) -> Result<usize, vmkit::Error> {
    if target < 7 || !(target - 3).is_multiple_of(4) {
        return Err(vmkit::Error::invalid(
            "target cycle",
            format!("{target} is not of the form 4n+3 with n >= 1"),
        ));
    }
    Ok((target - 3) / 4)
}
