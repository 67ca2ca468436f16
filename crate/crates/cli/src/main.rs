use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use orbitsw::io::{parse_file, parse_table_file, trace_to_dot, InvariantsBlock, Report};
use orbitsw::orbit::{fixed_point_summary, WeightedOrbitSpace};
use orbitsw::reduce::{
    fintushel_summands, reduce_with, PaoBranch, PaoPolicy, ReduceOptions, SummandTopology,
};
use orbitsw::sw::{sw_fixed_point_free, sw_vanishing, sw_vanishing_certified, symplectic_verdict};

#[derive(Parser)]
#[command(name = "orbitsw", version, about = "Circle actions on 4-manifolds from their orbit data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation file for legality.
    Validate { file: PathBuf },
    /// Print χ(X), b₁(X), b₂(X) and, given b₊, b₋(X).
    Invariants {
        file: PathBuf,
        #[arg(long = "b-plus")]
        b_plus: Option<u32>,
        #[arg(long)]
        machine: bool,
    },
    /// Reduce to an essential sphere of nonnegative square.
    Reduce {
        file: PathBuf,
        #[arg(long = "b-plus")]
        b_plus: u32,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
        /// Write the reduction as a Graphviz digraph.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Pao::Auto)]
        pao: Pao,
        /// Topology of an emitted simply connected summand, `POS:B2:SIGMA:SPIN`.
        #[arg(long, value_name = "POS:B2:SIGMA:SPIN", value_parser = parse_summand)]
        summand: Vec<(usize, SummandTopology)>,
        #[arg(long)]
        machine: bool,
    },
    /// Seiberg–Witten verdict for the 4-manifold.
    Sw {
        file: PathBuf,
        #[arg(long = "b-plus")]
        b_plus: u32,
        /// SW³ table (`coords : value` lines) for fixed-point-free actions.
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
        /// Base class ξ₀ in [pic_t] generator coordinates, comma separated.
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        xi0: Option<String>,
        /// Also report what a symplectic structure would force.
        #[arg(long)]
        symplectic: bool,
        /// Back a vanishing verdict with an explicit reduction.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        machine: bool,
    },
    /// Split a simply connected summand into CP², ĈP² and S²×S² factors.
    Classify {
        #[arg(long)]
        b2: u32,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[arg(long, action = ArgAction::Set)]
        spin: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Pao {
    Auto,
    A,
    B,
}

fn parse_summand(s: &str) -> Result<(usize, SummandTopology), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [pos, b2, sigma, spin] = parts.as_slice() else {
        return Err("expected POS:B2:SIGMA:SPIN".into());
    };
    let num = |what: &str, v: &str| format!("bad {what} `{v}`");
    Ok((
        pos.parse().map_err(|_| num("position", pos))?,
        SummandTopology {
            b2: b2.parse().map_err(|_| num("b2", b2))?,
            sigma: sigma.parse().map_err(|_| num("signature", sigma))?,
            spin: spin.parse().map_err(|_| num("spin flag", spin))?,
        },
    ))
}

fn load(path: &Path) -> Result<WeightedOrbitSpace, String> {
    parse_file(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(report: &Report, machine: bool) {
    if machine {
        print!("{}", report.render_machine());
    } else {
        print!("{}", report.render_human());
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Validate { file } => {
            let y = load(&file)?;
            let summary = fixed_point_summary(&y);
            println!(
                "{}: valid ({} isolated fixed points, {} fixed surfaces)",
                y.name,
                summary.isolated_total,
                summary.surfaces.len()
            );
        }
        Command::Invariants { file, b_plus, machine } => {
            let y = load(&file)?;
            let mut report = Report::new(&y.name);
            report.invariants = Some(InvariantsBlock::of(&y, b_plus));
            emit(&report, machine);
        }
        Command::Reduce { file, b_plus, trace, dot, pao, summand, machine } => {
            let y = load(&file)?;
            let options = ReduceOptions {
                pao: match pao {
                    Pao::Auto => PaoPolicy::ByIndex,
                    Pao::A => PaoPolicy::Always(PaoBranch::A),
                    Pao::B => PaoPolicy::Always(PaoBranch::B),
                },
                summand_topology: summand.into_iter().collect(),
            };
            let (verdict, steps) = reduce_with(&y, b_plus, &options).map_err(|e| e.to_string())?;
            if let Some(path) = dot {
                std::fs::write(&path, trace_to_dot(&steps, &y))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let mut report = Report::new(&y.name).with_reduction(&verdict, &steps);
            report.invariants = Some(InvariantsBlock::of(&y, Some(b_plus)));
            if !trace && !machine {
                report.trace.clear();
            }
            emit(&report, machine);
        }
        Command::Sw { file, b_plus, table, xi0, symplectic, certify, machine } => {
            let y = load(&file)?;
            let mut report = Report::new(&y.name);
            report.invariants = Some(InvariantsBlock::of(&y, Some(b_plus)));
            if y.has_fixed_points() {
                let verdict = if certify {
                    let (verdict, reduction) =
                        sw_vanishing_certified(&y, b_plus).map_err(|e| e.to_string())?;
                    if let Some((v, t)) = reduction {
                        report = report.with_reduction(&v, &t);
                    }
                    verdict
                } else {
                    sw_vanishing(&y, b_plus).map_err(|e| e.to_string())?
                };
                report.verdict = Some(verdict.to_string());
            } else {
                let pic_t = y
                    .pic_t
                    .as_ref()
                    .ok_or("fixed-point-free action needs a [pic_t] section")?;
                let chi = y
                    .euler_element()
                    .ok_or("fixed-point-free action needs an [euler_class] section")?
                    .map_err(|e| e.to_string())?;
                let table = table.ok_or("fixed-point-free action needs --table")?;
                let table = parse_table_file(&table, pic_t)
                    .map_err(|e| format!("{}: {e}", table.display()))?;
                let coords: Vec<BigInt> = match xi0 {
                    Some(s) => s
                        .split(',')
                        .map(|c| c.trim().parse().map_err(|_| format!("bad --xi0 coordinate `{c}`")))
                        .collect::<Result<_, _>>()?,
                    None => vec![BigInt::default(); pic_t.generators()],
                };
                let xi0 = pic_t.element(&coords).map_err(|e| format!("--xi0: {e}"))?;
                let verdict =
                    sw_fixed_point_free(&y, b_plus, &chi, &xi0, &table).map_err(|e| e.to_string())?;
                report.verdict = Some(verdict.to_string());
            }
            if symplectic {
                let c = symplectic_verdict(&y, b_plus, true).map_err(|e| e.to_string())?;
                report.notes.push(format!("if symplectic: {c}"));
            }
            emit(&report, machine);
        }
        Command::Classify { b2, sigma, spin } => {
            let summands = fintushel_summands(b2, sigma, spin).map_err(|e| e.to_string())?;
            println!("{summands}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("orbitsw: {message}");
            ExitCode::from(1)
        }
    }
}
