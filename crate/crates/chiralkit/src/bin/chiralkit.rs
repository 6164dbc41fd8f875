//! Scenario-driven batch runner and thin wrappers over the library.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! parse or resolution errors. The seed resolves as
//! `--seed` > `CHIRALKIT_SEED` > scenario file > 0.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chiralkit::aqft::{OrthCategory, Skel2Cat};
use chiralkit::rat::format_rat;
use chiralkit::sampling;
use chiralkit::scalar::Tolerance;
use chiralkit::scenario::{
    self, commutator_coefficient, load_scenario, run_scenario, ModelKind, RunOptions,
};
use chiralkit::skelcat::{build_zigzag, orthogonal2, ChiralSign, SkelObject2};

#[derive(Parser)]
#[command(
    name = "chiralkit",
    about = "exact skeletal spacetime categories and the Abelian current"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every check directive of a scenario file.
    Run {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Evaluate the orthogonality table of a scenario file.
    Orthogonality { file: PathBuf },
    /// Chirality detection for a builtin model.
    Chiralize {
        /// current | corrupted_current | trivial | pullback_plus | pullback_minus
        model: String,
        /// plus | minus
        sign: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Commutator of two named observables from a scenario file.
    Commutator {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// Build the zig-zag connecting two cylinder morphisms over named maps.
    Zigzag {
        file: PathBuf,
        h: String,
        f1: String,
        f2: String,
    },
}

fn env_seed() -> Option<u64> {
    std::env::var("CHIRALKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            file,
            seed,
            tolerance,
        } => {
            let scenario = load_scenario(&file)?;
            let options = RunOptions {
                seed: seed.or_else(env_seed),
                tolerance,
            };
            let report = run_scenario(&scenario, options)?;
            print!("{}", report.render());
            println!("{}", report.summary());
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Orthogonality { file } => {
            let scenario = load_scenario(&file)?;
            let pairs = scenario.pair_table();
            if pairs.is_empty() {
                return Err("scenario has no orthogonality pairs".into());
            }
            for [a, b] in pairs {
                let value = orthogonal2(scenario.morphism(&a)?, scenario.morphism(&b)?)?;
                println!("{value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chiralize { model, sign, seed } => {
            let kind = match model.as_str() {
                "current" => ModelKind::Current,
                "corrupted_current" => ModelKind::CorruptedCurrent,
                "trivial" => ModelKind::Trivial,
                "pullback_plus" => ModelKind::PullbackPlus,
                "pullback_minus" => ModelKind::PullbackMinus,
                other => return Err(format!("unknown model `{other}`").into()),
            };
            let sign = match sign.as_str() {
                "plus" => ChiralSign::Plus,
                "minus" => ChiralSign::Minus,
                other => return Err(format!("unknown sign `{other}`").into()),
            };
            let seed = seed.or_else(env_seed).unwrap_or(0);
            let mut witnesses =
                sampling::witnesses_for_object(sign, SkelObject2::Minkowski, 10, seed);
            witnesses.extend(sampling::witnesses_for_object(
                sign,
                SkelObject2::Cylinder,
                10,
                seed ^ 1,
            ));
            let verdict = scenario::with_skel2_model(kind, |m| {
                m.chirality(sign, &witnesses, &Tolerance::Exact)
            })?;
            println!("{verdict}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Commutator { file, left, right } => {
            let scenario = load_scenario(&file)?;
            let a = scenario.observable(&left)?;
            let b = scenario.observable(&right)?;
            if a.ambient() != b.ambient() {
                return Err("observables live on different objects".into());
            }
            let value = commutator_coefficient(a, b);
            println!("{} i", format_rat(&value));
            Ok(ExitCode::SUCCESS)
        }
        Command::Zigzag { file, h, f1, f2 } => {
            let scenario = load_scenario(&file)?;
            let zz = build_zigzag(
                &scenario.bounded_map(&h)?,
                &scenario.bounded_map(&f1)?,
                &scenario.bounded_map(&f2)?,
            )?;
            for (label, m) in [
                ("leg left   (id, k)   ", &zz.leg_left),
                ("mid left   [h, f1 k] ", &zz.mid_left),
                ("bridge     (id, k~)  ", &zz.bridge),
                ("mid right  [h, f2 k']", &zz.mid_right),
                ("leg right  (id, k')  ", &zz.leg_right),
            ] {
                println!("{label}: {}", Skel2Cat::describe(m));
            }
            let structural = zz.cells_commute_structurally()?;
            let mut rng = sampling::seeded(0);
            let sampled = zz.cells_commute_sampled(50, &mut rng);
            println!(
                "commutes: {}",
                if structural && sampled { "yes" } else { "NO" }
            );
            Ok(if structural && sampled {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
