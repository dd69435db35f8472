//! Command-line entry point: solve, modify, reopt, gadget, verify and
//! experiment over the text formats.
//!
//! Exit codes: 0 success, 1 domain error (infeasible input, violated
//! precondition, refuted claim), 2 usage error.

use crate::error::{Error, Result};
use crate::format;
use crate::harness::{certify, CertifyKind};
use crate::model::{validate, Instance, Solution};
use crate::modifications::{apply_with, make_reopt};
use crate::ratio::RatioFunction;
use crate::rational::Rational;
use crate::reductions::{
    build_gadget, chain_add_element, chain_remove_element, ChainGadget, Gadget, GadgetKind,
};
use crate::reopt::{eptas_fpt_driver, ptas_case_distinction, repair_add_element, Accuracy, DriverOutcome, ExactRoutine};
use crate::solvers::{solve, solve_exact, SolveBudget, SolveMode, SolveOutcome};
use clap::{ArgGroup, Parser, Subcommand};
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

const VERSION_LINE: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (formats: instance v1, solution v1, modification v1, graph v1, report v1)"
);

#[derive(Parser)]
#[command(name = "setcover-reopt", version = VERSION_LINE, about = "Set cover reoptimization toolkit")]
struct Cli {
    /// Reject duplicate extents instead of warning.
    #[arg(long, global = true)]
    strict: bool,
    /// Wall-clock limit in seconds for exact solves.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// Output file (default: stdout) or, for `gadget`/`experiment`, a directory.
    #[arg(short = 'o', long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly, greedily, or as a bounded decision.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "greedy", "bounded"])))]
    Solve {
        instance: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        #[arg(long, value_name = "K")]
        bounded: Option<u32>,
    },
    /// Apply a modification file to an instance.
    Modify {
        instance: PathBuf,
        modification: PathBuf,
    },
    /// Solve a reoptimization instance.
    Reopt {
        instance: PathBuf,
        solution: PathBuf,
        modification: PathBuf,
        /// One of `repair`, `ptas:<eps>`, `exact`.
        #[arg(long)]
        alg: String,
        /// Quality of the given solution.
        #[arg(long, default_value = "1")]
        rho: String,
    },
    /// Construct a gadget and emit its files into a directory.
    Gadget {
        /// One of add-set-unweighted, add-set-weighted, rm-set,
        /// rm-set-weighted, add-elem-weighted, rm-elem-weighted,
        /// chain-add-elem, chain-rm-elem.
        kind: String,
        /// Instance file (graph file for chain-rm-elem).
        input: PathBuf,
        #[arg(long, value_name = "G")]
        guess: Option<u64>,
        /// Sweep every guess in [1, |U|] (add-elem-weighted only).
        #[arg(long)]
        all_guesses: bool,
        /// Ratio function, `const:<rat>` or `logln:<rat>`.
        #[arg(long, value_name = "FN")]
        f: Option<String>,
        /// Dominating set file for chain-rm-elem (default: computed exactly).
        #[arg(long, value_name = "FILE")]
        approx: Option<PathBuf>,
    },
    /// Certify a gadget kind over seeded trials; prints a TSV report.
    Verify {
        kind: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        /// Generation scale `n,m,p` (elements, sets, density).
        #[arg(long, value_name = "N,M,P")]
        scale: Option<String>,
    },
    /// Run the full default certification suite over every gadget kind.
    Experiment {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: u32,
    },
}

pub fn run() -> std::process::ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            std::process::ExitCode::FAILURE
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    format::parse_instance(&fs::read_to_string(path)?)
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, content)?;
            Ok(())
        }
    }
}

fn time_limit(seconds: Option<f64>) -> Option<Duration> {
    seconds.map(Duration::from_secs_f64)
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { instance, exact, greedy, bounded } => {
            let inst = read_instance(&instance)?;
            warn_strict(&inst, cli.strict)?;
            let mode = if exact {
                SolveMode::Exact
            } else if greedy {
                SolveMode::Greedy
            } else {
                SolveMode::Bounded(bounded.expect("clap group"))
            };
            let budget = SolveBudget { mode, time_limit: time_limit(cli.time_limit) };
            let out = match solve(&inst, &budget)? {
                SolveOutcome::Solution(sol) => {
                    format!("{}value: {}\n", format::print_solution(&sol), sol.value())
                }
                SolveOutcome::Exceeds(k) => format!("exceeds: {k}\n"),
            };
            emit(&cli.output, &out)
        }
        Command::Modify { instance, modification } => {
            let inst = read_instance(&instance)?;
            let m = format::parse_modification(&fs::read_to_string(&modification)?)?;
            let (result, warnings) = apply_with(&inst, &m, cli.strict)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            emit(&cli.output, &format::print_instance(&result))
        }
        Command::Reopt { instance, solution, modification, alg, rho } => {
            let inst = read_instance(&instance)?;
            warn_strict(&inst, cli.strict)?;
            let names = format::parse_solution(&fs::read_to_string(&solution)?)?;
            let m = format::parse_modification(&fs::read_to_string(&modification)?)?;
            let rho: Rational = rho.parse()?;
            let r = make_reopt(inst, names, rho, m)?;
            let sol = match alg.as_str() {
                "repair" => repair_add_element(&r)?,
                "exact" => solve_exact(&r.new)?,
                other => match other.strip_prefix("ptas:") {
                    Some(eps) => {
                        let accuracy = Accuracy::new(eps.parse()?)?;
                        ptas_case_distinction(&r, &accuracy)?
                    }
                    None => {
                        return Err(Error::Precondition(format!(
                            "unknown algorithm `{other}`; use repair, ptas:<eps> or exact"
                        )))
                    }
                },
            };
            let out = format!("{}value: {}\n", format::print_solution(&sol), sol.value());
            emit(&cli.output, &out)
        }
        Command::Gadget { kind, input, guess, all_guesses, f, approx } => {
            let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("."));
            run_gadget(&kind, &input, guess, all_guesses, f.as_deref(), approx.as_deref(), &dir)
        }
        Command::Verify { kind, seed, trials, scale } => {
            let kind = CertifyKind::parse(&kind)?;
            let mut spec = kind.default_spec(seed);
            if let Some(scale) = scale {
                let (n, m, p) = parse_scale(&scale)?;
                spec.n_elements = n;
                spec.n_sets = m;
                spec.density = p;
            }
            let report = certify(kind, &spec, trials)?;
            emit(&cli.output, &report.to_tsv())?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(Error::QualityRefuted(format!("{kind}: some trials failed")))
            }
        }
        Command::Experiment { seed, trials } => {
            let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("experiment-out"));
            fs::create_dir_all(&dir)?;
            let mut all_pass = true;
            for kind in CertifyKind::all() {
                let spec = kind.default_spec(seed);
                let report = certify(kind, &spec, trials)?;
                let path = dir.join(format!("{kind}.tsv"));
                fs::write(&path, report.to_tsv())?;
                let passed = report.rows.iter().filter(|r| r.outcome == crate::harness::Outcome::Pass).count();
                println!("{kind}\t{passed}/{}\t{}", report.rows.len(), path.display());
                all_pass &= report.all_pass();
            }
            if all_pass {
                Ok(())
            } else {
                Err(Error::QualityRefuted("experiment suite has failures".into()))
            }
        }
    }
}

fn warn_strict(inst: &Instance, strict: bool) -> Result<()> {
    let report = validate(inst, strict);
    if let Some(v) = report.first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    for w in report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn parse_scale(s: &str) -> Result<(u32, u32, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || Error::Precondition(format!("bad scale `{s}`; expected n,m,p"));
    match parts.as_slice() {
        [n, m, p] => Ok((
            n.parse().map_err(|_| bad())?,
            m.parse().map_err(|_| bad())?,
            p.parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

fn write_gadget_files(dir: &Path, gadget: &Gadget) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("old.txt"), format::print_instance(&gadget.reopt.old))?;
    fs::write(dir.join("old_solution.txt"), format::print_solution(&gadget.reopt.old_solution))?;
    fs::write(dir.join("mod.txt"), format::print_modification(&gadget.reopt.modification))?;
    fs::write(dir.join("new.txt"), format::print_instance(&gadget.reopt.new))?;
    let mut meta = String::new();
    meta.push_str(&format!("kind: {}\n", gadget.kind));
    meta.push_str(&format!("relation: {}\n", gadget.claims));
    meta.push_str(&format!("rho: {}\n", gadget.reopt.rho));
    meta.push_str(&format!("quality: {:?}\n", gadget.reopt.quality));
    if let Some(g) = gadget.guess {
        meta.push_str(&format!("guess: {g}\n"));
    }
    fs::write(dir.join("metadata.txt"), meta)?;
    Ok(())
}

fn write_chain_files(dir: &Path, cg: &ChainGadget) -> Result<()> {
    fs::create_dir_all(dir)?;
    let chain = &cg.chain;
    fs::write(dir.join("old.txt"), format::print_instance(&chain.instances()[0]))?;
    if let crate::reopt::ChainStart::Optimal(sol) = chain.start() {
        fs::write(dir.join("old_solution.txt"), format::print_solution(sol))?;
    }
    fs::write(dir.join("new.txt"), format::print_instance(chain.last()))?;
    let width = chain.len().to_string().len().max(2);
    for (i, m) in chain.mods().iter().enumerate() {
        let name = format!("mod_{:0width$}.txt", i + 1);
        fs::write(dir.join(name), format::print_modification(m))?;
    }
    let mut meta = String::new();
    meta.push_str(&format!("kind: {}\n", cg.kind));
    meta.push_str(&format!("chain-length: {}\n", chain.len()));
    meta.push_str(&format!("bound-fn: {}\n", chain.bound_fn()));
    if let Some(a) = cg.approx_size {
        meta.push_str(&format!("approx-size: {a}\n"));
    }
    meta.push_str("relation: driver decides OPT(src) <= k\n");
    fs::write(dir.join("metadata.txt"), meta)?;
    Ok(())
}

fn run_gadget(
    kind: &str,
    input: &Path,
    guess: Option<u64>,
    all_guesses: bool,
    f: Option<&str>,
    approx: Option<&Path>,
    dir: &Path,
) -> Result<()> {
    let ratio = match f {
        Some(spec) => RatioFunction::parse_spec(spec)?,
        None => RatioFunction::constant(Rational::ONE)?,
    };
    match kind {
        "chain-add-elem" => {
            let src = read_instance(input)?;
            let cg = chain_add_element(&src)?;
            write_chain_files(dir, &cg)?;
            println!("chain-add-elem: chain of length {} written to {}", cg.chain.len(), dir.display());
            Ok(())
        }
        "chain-rm-elem" => {
            let graph = format::parse_graph(&fs::read_to_string(input)?)?;
            let approx_set: BTreeSet<crate::model::ElementId> = match approx {
                Some(path) => {
                    let names = format::parse_solution(&fs::read_to_string(path)?)?;
                    names
                        .iter()
                        .map(|n| crate::model::ElementId::new(n.as_str()))
                        .collect::<Result<_>>()?
                }
                None => {
                    let base = graph.cover_instance()?;
                    solve_exact(&base)?
                        .chosen()
                        .iter()
                        .map(|n| crate::model::ElementId::new(n.as_str()))
                        .collect::<Result<_>>()?
                }
            };
            let cg = chain_remove_element(&graph, &approx_set)?;
            write_chain_files(dir, &cg)?;
            println!("chain-rm-elem: chain of length {} written to {}", cg.chain.len(), dir.display());
            Ok(())
        }
        "add-elem-weighted" if all_guesses => {
            let src = read_instance(input)?;
            let n = src.num_elements() as u64;
            for g in 1..=n {
                let gadget = build_gadget(&src, &GadgetKind::AddElementWeighted, g)?;
                write_gadget_files(&dir.join(format!("guess_{g:02}")), &gadget)?;
            }
            println!("add-elem-weighted: {n} guess directories written to {}", dir.display());
            Ok(())
        }
        _ => {
            let src = read_instance(input)?;
            let gk = match kind {
                "add-set-unweighted" => GadgetKind::AddSetUnweighted,
                "add-set-weighted" => GadgetKind::AddSetWeighted,
                "rm-set" => GadgetKind::RemoveSet { weighted: false },
                "rm-set-weighted" => GadgetKind::RemoveSet { weighted: true },
                "add-elem-weighted" => GadgetKind::AddElementWeighted,
                "rm-elem-weighted" => GadgetKind::RemoveElementWeighted { f: ratio },
                other => return Err(Error::Precondition(format!("unknown gadget kind `{other}`"))),
            };
            let g = match gk {
                GadgetKind::AddElementWeighted => guess.ok_or_else(|| {
                    Error::Precondition("add-elem-weighted needs --guess <g> or --all-guesses".into())
                })?,
                _ => 1,
            };
            let gadget = build_gadget(&src, &gk, g)?;
            write_gadget_files(dir, &gadget)?;
            println!("{}: gadget written to {}", gadget.kind, dir.display());
            Ok(())
        }
    }
}

/// Drive a freshly written chain directory end to end; used by tests.
pub fn drive_chain_dir(dir: &Path, k: u32) -> Result<DriverOutcome> {
    let old = read_instance(&dir.join("old.txt"))?;
    let names = format::parse_solution(&fs::read_to_string(dir.join("old_solution.txt"))?)?;
    let start = Solution::new(&old, names)?;
    let mut instances = vec![old];
    let mut mods = Vec::new();
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("mod_") && n.ends_with(".txt"))
        })
        .collect();
    entries.sort();
    for path in entries {
        let m = format::parse_modification(&fs::read_to_string(&path)?)?;
        let next = crate::modifications::apply(instances.last().unwrap(), &m)?;
        mods.push(m);
        instances.push(next);
    }
    let chain = crate::reopt::InstanceChain::new(
        instances,
        mods,
        crate::reopt::ChainStart::Optimal(start),
        RatioFunction::affine(Rational::ONE, Rational::ONE),
        k,
    )?;
    eptas_fpt_driver(&chain, &ExactRoutine)
}
