use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mubsdp::checks::{run_selftest, SelftestOptions};
use mubsdp::sdp::sdpa::{export_sdpa, parse_solver_output_file, render_sidecar, SolverStatus, DEFAULT_DIGITS};
use mubsdp::sdp::{
    assemble_instance, check_linear, stats, Level, LinearCertificate, Mode, Problem, Pruning, SdpError, Stats, Verdict,
};
use mubsdp::word::format_word;

const EXIT_LINEAR_INFEASIBLE: u8 = 10;
const EXIT_SOLVER_INFEASIBLE: u8 = 11;

#[derive(Parser)]
#[command(name = "mubsdp", version, about = "Moment SDPs for mutually unbiased bases")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table row: size, variables, linear constraints, block sum and max.
    Stats(RunConfig),
    /// Write the SDPA file and its sidecar.
    Generate(RunConfig),
    /// Sweep and linear check only.
    Check(RunConfig),
    /// Generate, run the external solver and report its verdict.
    Solve(RunConfig),
    /// Run the invariant suite.
    Selftest {
        /// Build the wreath set with a corrupted ν order; the Φ oracle must fail.
        #[arg(long)]
        corrupt_nu: bool,
    },
    /// Map an SDPA output file to feasible / infeasible / unknown.
    ParseSolverOutput { file: PathBuf },
}

#[derive(Args, Clone)]
struct RunConfig {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: usize,
    /// Level, integer or half-integer such as 4.5.
    #[arg(long)]
    t: Level,
    #[arg(long, default_value = "full")]
    mode: Mode,
    /// Largest degree in the ideal sweep (defaults to 2t).
    #[arg(long)]
    sweep_cap: Option<usize>,
    /// Significant digits of exported coefficients.
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    /// SDPA-compatible solver, called as `solver INPUT OUTPUT`.
    #[arg(long, env = "MUBSDP_SOLVER")]
    solver: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// classes | adjacent | none | exact. Defaults to classes for `stats` and
    /// `check`, exact for anything handed to a solver.
    #[arg(long)]
    prune: Option<Pruning>,
}

impl RunConfig {
    fn problem(&self, default: Pruning) -> Result<Problem> {
        Ok(Problem::new(self.d, self.k, self.t, self.mode)?.with_pruning(self.prune.unwrap_or(default)))
    }

    fn sweep_degree(&self) -> usize {
        self.sweep_cap.unwrap_or(self.t.twice())
    }

    fn stem(&self) -> String {
        format!("mub_d{}_k{}_t{}_{}", self.d, self.k, self.t, self.mode)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Stats(cfg) => cmd_stats(&cfg),
        Cmd::Generate(cfg) => cmd_generate(&cfg).map(|g| g.code()),
        Cmd::Check(cfg) => cmd_check(&cfg),
        Cmd::Solve(cfg) => cmd_solve(&cfg),
        Cmd::Selftest { corrupt_nu } => cmd_selftest(corrupt_nu),
        Cmd::ParseSolverOutput { file } => {
            let status = parse_solver_output_file(&file)?;
            println!("status={status}");
            Ok(solver_code(status))
        }
    }
}

fn solver_code(status: SolverStatus) -> u8 {
    if status == SolverStatus::Infeasible {
        EXIT_SOLVER_INFEASIBLE
    } else {
        0
    }
}

fn print_stats(s: &Stats, status: &str) {
    let p = &s.problem;
    println!(
        "{:>3} {:>3} {:>4} {:>10} {:>12} {:>5} {:>7} {:>6} {:>5}  status",
        "d", "k", "t", "mode", "size", "vars", "linear", "sum", "max"
    );
    println!(
        "{:>3} {:>3} {:>4} {:>10} {:>12} {:>5} {:>7} {:>6} {:>5}  {}",
        p.d, p.k, p.level, p.mode, s.size, s.n_vars, s.n_linear, s.block_sum, s.block_max, status
    );
    println!("d={}", p.d);
    println!("k={}", p.k);
    println!("t={}", p.level);
    println!("mode={}", p.mode);
    println!("pruning={}", p.pruning);
    println!("size={}", s.size);
    println!("vars={}", s.n_vars);
    println!("linear={}", s.n_linear);
    println!("blocks={}", s.n_blocks);
    println!("block_sum={}", s.block_sum);
    println!("block_max={}", s.block_max);
    println!("unpruned_sum={}", s.unpruned_sum);
    println!("unpruned_max={}", s.unpruned_max);
    println!("status={status}");
}

fn cmd_stats(cfg: &RunConfig) -> Result<u8> {
    let pr = cfg.problem(Pruning::Classes)?;
    let s = stats(&pr, cfg.sweep_degree())?;
    let (status, code) = match (&s.verdict, &cfg.solver) {
        (Verdict::LinearInfeasible(_), _) => ("infeasible(linear)".to_string(), EXIT_LINEAR_INFEASIBLE),
        (Verdict::Undetermined, None) => ("undetermined".to_string(), 0),
        (Verdict::Undetermined, Some(_)) => {
            let status = generate_and_solve(cfg)?;
            (format!("{status}(solver)"), solver_code(status))
        }
    };
    print_stats(&s, &status);
    Ok(code)
}

fn witness_text(cert: &LinearCertificate) -> String {
    let mut s = String::new();
    for (i, (row, c)) in cert.rows.iter().enumerate() {
        let _ = writeln!(
            s,
            "witness.{i}=({c}) * {:?} generator={} multiplier={} : {} = 0",
            row.family,
            format_word(&row.generator),
            format_word(&row.multiplier),
            row.form
        );
    }
    s
}

enum Generated {
    Instance { dat: PathBuf },
    LinearInfeasible,
}

impl Generated {
    fn code(&self) -> u8 {
        match self {
            Generated::Instance { .. } => 0,
            Generated::LinearInfeasible => EXIT_LINEAR_INFEASIBLE,
        }
    }
}

fn cmd_generate(cfg: &RunConfig) -> Result<Generated> {
    let pr = cfg.problem(Pruning::Exact)?;
    fs::create_dir_all(&cfg.out).with_context(|| format!("cannot create {}", cfg.out.display()))?;
    let meta = cfg.out.join(format!("{}.meta", cfg.stem()));
    match assemble_instance(&pr, cfg.sweep_degree()) {
        Ok(inst) => {
            let dat = cfg.out.join(format!("{}.dat-s", cfg.stem()));
            export_sdpa(&inst, &dat, cfg.digits)?;
            let mut side = render_sidecar(&inst);
            let _ = writeln!(side, "pruning={}", pr.pruning);
            fs::write(&meta, side)?;
            println!("dat={}", dat.display());
            println!("meta={}", meta.display());
            println!("free={}", inst.free.len());
            println!(
                "blocks={}",
                inst.block_sizes()
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            Ok(Generated::Instance { dat })
        }
        Err(SdpError::LinearInfeasible(cert)) => {
            let mut side = String::new();
            let _ = writeln!(side, "d={}\nk={}\nt={}\nmode={}", pr.d, pr.k, pr.level, pr.mode);
            let _ = writeln!(side, "size={}", pr.size());
            let _ = writeln!(side, "verdict=infeasible(linear)");
            let _ = writeln!(side, "variables={}", cert.variables.len());
            let _ = writeln!(side, "linear={}", cert.n_linear);
            side.push_str(&witness_text(&cert));
            fs::write(&meta, side)?;
            println!("meta={}", meta.display());
            println!("verdict=infeasible(linear)");
            Ok(Generated::LinearInfeasible)
        }
        Err(e) => Err(e.into()),
    }
}

fn run_solver(solver: &Path, dat: &Path) -> Result<SolverStatus> {
    let out = dat.with_extension("out");
    let status = Command::new(solver)
        .arg(dat)
        .arg(&out)
        .status()
        .with_context(|| format!("cannot run solver {}", solver.display()))?;
    if !status.success() {
        bail!("solver exited with {status}");
    }
    Ok(parse_solver_output_file(&out)?)
}

fn generate_and_solve(cfg: &RunConfig) -> Result<SolverStatus> {
    let Some(solver) = &cfg.solver else {
        bail!("no solver configured (--solver or MUBSDP_SOLVER)");
    };
    match cmd_generate(cfg)? {
        Generated::Instance { dat } => run_solver(solver, &dat),
        Generated::LinearInfeasible => Ok(SolverStatus::Infeasible),
    }
}

fn cmd_solve(cfg: &RunConfig) -> Result<u8> {
    if cfg.solver.is_none() {
        bail!("no solver configured (--solver or MUBSDP_SOLVER)");
    }
    let pr = cfg.problem(Pruning::Exact)?;
    if let (_, _, Verdict::LinearInfeasible(_)) = check_linear(&pr, cfg.sweep_degree())? {
        cmd_generate(cfg)?;
        println!("status=infeasible(linear)");
        return Ok(EXIT_LINEAR_INFEASIBLE);
    }
    let status = generate_and_solve(cfg)?;
    println!("status={status}");
    Ok(solver_code(status))
}

fn cmd_check(cfg: &RunConfig) -> Result<u8> {
    let pr = cfg.problem(Pruning::Classes)?;
    let (vars, rows, verdict) = check_linear(&pr, cfg.sweep_degree())?;
    println!("vars={}", vars.len());
    println!("linear={}", rows.len());
    for (i, w) in vars.iter().enumerate() {
        println!("var.{i}={}", format_word(w));
    }
    println!("verdict={verdict}");
    match verdict {
        Verdict::LinearInfeasible(cert) => {
            print!("{}", witness_text(&cert));
            Ok(EXIT_LINEAR_INFEASIBLE)
        }
        Verdict::Undetermined => Ok(0),
    }
}

fn cmd_selftest(corrupt_nu: bool) -> Result<u8> {
    let checks = run_selftest(SelftestOptions { corrupt_nu });
    let mut failed = 0;
    for c in &checks {
        println!("{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        if !c.passed {
            failed += 1;
        }
    }
    println!("selftest: {} passed, {failed} failed", checks.len() - failed);
    Ok(if failed == 0 { 0 } else { 1 })
}
