use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wvmaps::constructions::{
    fixture, fixture_corpus, fixture_names, gamma_nonorientable_even, gamma_nonorientable_odd, gamma_orientable,
    Fixture,
};
use wvmaps::smap::{parse_smap, write_smap};
use wvmaps::verify::{analyze, run_suite, summarize, SuiteOptions};
use wvmaps::{Error, SurfaceMap};

/// Polyhedral maps on closed surfaces and non-revisiting paths.
#[derive(Parser)]
#[command(name = "wvmaps", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarise a map and decide whether it is polyhedral.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Analyse one vertex pair: connectivity, homotopy classes, rerouting
    /// and every bound that applies.
    Analyze {
        file: PathBuf,
        x: usize,
        y: usize,
        /// Also run the exhaustive path search (vertex cutoff WVMAPS_CUTOFF).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated map as .smap.
    Gen {
        #[command(subcommand)]
        what: GenKind,
    },
    /// Run the verification suite over the fixture corpus.
    Verify {
        /// `all` or a comma-separated list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Randomised rerouting trials.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Extra .smap files, added to the corpus as polyhedral fixtures.
        #[arg(long = "fixture")]
        extra: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// A counterexample map without non-revisiting paths between x and y.
    Gamma {
        #[command(flatten)]
        kind: GammaKindArg,
        /// Genus (orientable g >= 2, non-orientable >= 4).
        #[arg(short = 'g', long)]
        genus: usize,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// A named corpus map.
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GammaKindArg {
    #[arg(long)]
    orientable: bool,
    #[arg(long)]
    nonorientable: bool,
}

/// Exit status: 0 pass, 1 violation or negative verdict, 2 input error.
enum Failure {
    Verdict(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPolyhedral(_) | Error::RerouteFailed(_) | Error::NonTransitiveHomotopy(..) | Error::NoBoundingPair(_) => {
                Failure::Verdict(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<SurfaceMap, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_smap(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise")
}

fn check(file: &Path, as_json: bool) -> Result<bool, Failure> {
    let s = summarize(&load(file)?);
    if as_json {
        println!("{}", json(&s));
    } else {
        println!("V = {}, E = {}, F = {}, chi = {}, {}", s.vertices, s.edges, s.faces, s.euler_char,
            if s.orientable { "orientable" } else { "non-orientable" });
        match &s.defect {
            None => println!("polyhedral"),
            Some(d) => println!("not polyhedral: {d}"),
        }
    }
    Ok(s.polyhedral)
}

fn analyze_cmd(file: &Path, x: usize, y: usize, exhaustive: bool, as_json: bool) -> Result<bool, Failure> {
    let map = load(file)?;
    let rep = analyze(&map, x, y, exhaustive)?;
    let p = &rep.pairs[0];
    if as_json {
        println!("{}", json(&rep));
    } else {
        let m = &rep.map;
        println!("map: V = {}, E = {}, F = {}, chi = {}, polyhedral", m.vertices, m.edges, m.faces, m.euler_char);
        println!("pair ({x}, {y}): kappa = {}", p.kappa);
        if p.cofacial {
            println!("cofacial; non-revisiting paths along the shared face:");
            for path in &p.cofacial_paths {
                println!("  {path:?}");
            }
        } else {
            println!("homotopy classes: {:?}", p.class_sizes);
            for c in &p.classes {
                println!("  class of {}: {} non-revisiting after rerouting", c.size, c.wv_paths);
            }
            if let Some(mz) = &p.minimize {
                println!("rerouting: r {} -> {} in {} steps", mz.initial_r, mz.final_r, mz.steps);
            }
            match (p.wv_exists, p.wv_max_disjoint) {
                (Some(e), Some(k)) => println!("W_v-path exists: {e}; max disjoint: {k}"),
                _ if exhaustive => println!("exhaustive search skipped: above the vertex cutoff"),
                _ => {}
            }
        }
        for c in rep.map_checks.iter().chain(&p.checks) {
            println!("{c}");
        }
        for v in &p.violations {
            println!("violation: {v}");
        }
    }
    Ok(rep.passes() && p.wv_exists != Some(false))
}

fn gen(what: GenKind) -> Result<bool, Failure> {
    match what {
        GenKind::Gamma { kind, genus, out } => {
            let (map, spec) = if kind.orientable {
                gamma_orientable(genus)?
            } else if genus % 2 == 0 {
                gamma_nonorientable_even(genus)?
            } else {
                gamma_nonorientable_odd(genus)?
            };
            emit(&write_smap(&map), &out)?;
            let labels = json(&spec);
            if out.is_some() {
                println!("{labels}");
            } else {
                eprintln!("{labels}");
            }
        }
        GenKind::Fixture { name, out } => {
            let f = fixture(&name).ok_or_else(|| {
                Failure::Input(format!("unknown fixture {name}; known: {}", fixture_names().join(", ")))
            })?;
            emit(&write_smap(&f.map), &out)?;
        }
    }
    Ok(true)
}

fn verify(suite: &str, as_json: bool, jobs: Option<usize>, trials: usize, seed: u64, extra: &[PathBuf]) -> Result<bool, Failure> {
    let mut corpus = fixture_corpus();
    for p in extra {
        let name = p.file_stem().map_or("extra".into(), |s| s.to_string_lossy().into_owned());
        corpus.push(Fixture { name, map: load(p)?, expect_polyhedral: true, pair: None });
    }
    let wanted: Option<Vec<usize>> = match suite {
        "all" => None,
        s => Some(
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Failure::Input(format!("bad suite entry {t:?}"))))
                .collect::<Result<_, _>>()?,
        ),
    };
    let opts = SuiteOptions { jobs, reroute_trials: trials, seed };
    let mut rep = run_suite(&corpus, &opts, wanted.as_deref());
    rep.criteria.sort_by_key(|c| c.id);
    if as_json {
        println!("{}", json(&rep));
    } else {
        for c in &rep.criteria {
            println!("{}", c.line());
            for f in c.failures.iter().skip(1) {
                println!("    {f}");
            }
        }
    }
    Ok(rep.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, json } => check(&file, json),
        Command::Analyze { file, x, y, exhaustive, json } => analyze_cmd(&file, x, y, exhaustive, json),
        Command::Gen { what } => gen(what),
        Command::Verify { suite, json, jobs, trials, seed, extra } => verify(&suite, json, jobs, trials, seed, &extra),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verdict(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
