//! The `hsproof` command-line front end.
//!
//! Every option can also come from a flat `key=value` config file (`--config`); keys are
//! the long flag names without dashes. Flags given on the command line win.
//!
//! Exit status: 0 on normal completion, 1 when a reported comparison fails, 2 on error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::checks::{parse_group, run_check, FourierCheck};
use crate::error::{Error, Result};
use crate::games::ghz::{ghz_value_bruteforce, Repetition};
use crate::games::jgame::{j_bias_bruteforce, to_f64};
use crate::games::parity::max_eta_parity_balanced;
use crate::params::{Params, Preset};
use crate::protocol::attack::attack_plan;
use crate::protocol::experiments::{experiment_s1, experiment_s2, experiment_s3, run_experiment_e};
use crate::protocol::game_j::{run_game_j, JPlayer};
use crate::protocol::game_r::{run_game_r, GameRReport, Prover};
use crate::protocol::provers::classical_prover;
use crate::protocol::transcript::{summary_row, write_transcripts, SUMMARY_HEADER};
use crate::rng::stream;
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "hsproof", version, about = "Proof-of-quantumness protocol laboratory")]
pub struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Flat key=value file supplying defaults for any option.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for transcripts, summaries and CSV reports.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Use base-2 logarithms in the sampling bound.
    #[arg(long = "log2-mode", global = true)]
    pub log2_mode: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct ParamArgs {
    /// `asymptotic` or `desk`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Security parameter for the asymptotic preset.
    #[arg(long)]
    pub lambda: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive and validate protocol parameters.
    Params(ParamArgs),
    /// Play a game or soundness experiment and record transcripts.
    Run {
        /// J, Jseq, R, Rseq, S1, S2 or S3.
        #[arg(long)]
        game: Option<String>,
        /// honest, blind, hashed or leak.
        #[arg(long)]
        prover: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Exact game values by exhaustive search.
    Brute {
        /// ghz, ghz-seq, j, j-seq or eta-parb.
        #[arg(long)]
        target: Option<String>,
        /// Number of GHZ players.
        #[arg(long)]
        k: Option<usize>,
        /// Rounds / secret length.
        #[arg(long)]
        d: Option<usize>,
        /// For eta-parb: search all parity-balanced sets, not only time-ordered ones.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Fourier identities and uncertainty inequalities on random and structured inputs.
    Fourier {
        /// parseval, convolution, donoho or uncertainty.
        #[arg(long)]
        check: Option<String>,
        /// Group as `Z_m^n`.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Distinguishing experiments and attack-cost arithmetic.
    Attack {
        /// E, Eprime or plan.
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long)]
        prover: Option<String>,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        reps: Option<u64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// Resolved settings: command-line values over config-file values over defaults. Written
/// next to the outputs as `run.conf`, which replays the run when passed to `--config`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    file: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>> {
        let mut out = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", no + 1)))?;
            out.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(out)
    }

    fn with_file(file: BTreeMap<String, String>) -> Self {
        RunConfig { values: BTreeMap::new(), file }
    }

    fn get<T: FromStr + ToString>(&mut self, key: &str, flag: Option<T>, default: Option<T>) -> Result<Option<T>> {
        let v = match flag {
            Some(v) => Some(v),
            None => match self.file.get(key) {
                Some(s) => {
                    Some(s.parse::<T>().map_err(|_| Error::InvalidConfig(format!("bad value {s:?} for {key}")))?)
                }
                None => default,
            },
        };
        if let Some(v) = &v {
            self.values.insert(key.to_string(), v.to_string());
        }
        Ok(v)
    }

    fn require<T: FromStr + ToString>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T> {
        Ok(self.get(key, flag, Some(default))?.expect("default supplied"))
    }

    fn flag(&mut self, key: &str, flag: bool) -> Result<bool> {
        let v = flag
            || match self.file.get(key).map(String::as_str) {
                None | Some("false") | Some("0") => false,
                Some("true") | Some("1") => true,
                Some(other) => return Err(Error::InvalidConfig(format!("bad value {other:?} for {key}"))),
            };
        self.values.insert(key.to_string(), v.to_string());
        Ok(v)
    }

    pub fn to_text(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }
}

struct Ctx {
    seed: u64,
    out: PathBuf,
    log2: bool,
    cfg: RunConfig,
    text: String,
    failed: bool,
}

impl Ctx {
    fn say(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    fn compare(&mut self, label: &str, ok: bool) {
        self.say(format!("{} {label}", if ok { "PASS" } else { "FAIL" }));
        self.failed |= !ok;
    }

    fn out_file(&self, name: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out)?;
        Ok(self.out.join(name))
    }

    fn write_csv(&self, name: &str, csv: &str) -> Result<()> {
        fs::write(self.out_file(name)?, csv)?;
        Ok(())
    }
}

fn resolve_params(cfg: &mut RunConfig, a: &ParamArgs, default_d: Option<usize>) -> Result<Params> {
    let preset: Preset = cfg.require("preset", a.preset.clone(), "desk".to_string())?.parse()?;
    match preset {
        Preset::Asymptotic => {
            let lambda = cfg.require("lambda", a.lambda, 64)?;
            let p = Params::asymptotic(lambda)?;
            match cfg.get("d", a.d, None)? {
                Some(d) => p.with_d(d),
                None => Ok(p),
            }
        }
        Preset::Desk => {
            let def = Params::desk_default();
            let n = cfg.require("n", a.n, def.n)?;
            let q = cfg.require("q", a.q, def.q)?;
            let d = cfg.require("d", a.d, default_d.unwrap_or(def.d))?;
            let sigma = cfg.require("sigma", a.sigma, def.sigma)?;
            Params::desk(n, q, d, sigma)
        }
    }
}

fn verdict_table(p: &Params) -> String {
    let v = p.verdicts();
    let yn = |b: bool| if b { "ok" } else { "FAILS" };
    let mut s = String::new();
    let _ = writeln!(s, "q odd prime        {}", yn(v.q_odd_prime));
    let _ = writeln!(s, "d <= n             {}", yn(v.d_le_n));
    let _ = writeln!(s, "tau >= 1           {}", yn(v.tau_positive));
    let _ = writeln!(s, "sigma <= tau       {}", yn(v.sigma_le_tau));
    let _ = write!(s, "gadget margin      {}", yn(v.gadget_margin));
    s
}

fn cmd_params(ctx: &mut Ctx, a: &ParamArgs) -> Result<()> {
    let preset: Preset = ctx.cfg.require("preset", a.preset.clone(), "asymptotic".to_string())?.parse()?;
    let p = match preset {
        Preset::Asymptotic => Params::asymptotic(ctx.cfg.require("lambda", a.lambda, 64)?)?,
        Preset::Desk => {
            let mut args = a.clone();
            args.preset = Some("desk".into());
            resolve_params(&mut ctx.cfg, &args, None)?
        }
    };
    ctx.say(p.to_string());
    ctx.say(verdict_table(&p));
    match p.check_runnable() {
        Ok(()) => ctx.say("runnable for Game R"),
        Err(Error::ParamsInvalid(why)) => ctx.say(format!("non-runnable: {why}")),
        Err(e) => return Err(e),
    }
    let v = p.verdicts();
    ctx.write_csv(
        "params.csv",
        &format!(
            "preset,lambda,n,q,Q,m,sigma,tau,d,q_odd_prime,d_le_n,tau_positive,sigma_le_tau,gadget_margin\n{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            p.preset, p.lambda, p.n, p.q, p.big_q, p.m, p.sigma, p.tau, p.d,
            v.q_odd_prime, v.d_le_n, v.tau_positive, v.sigma_le_tau, v.gadget_margin
        ),
    )
}

fn report_game(ctx: &mut Ctx, r: &GameRReport) {
    ctx.say(format!("game {} prover {}", r.game, r.prover));
    ctx.say(format!("score  {}", r.stats));
    if let (Some(e), Some(f)) = (r.e_rate, r.f_rate) {
        ctx.say(format!("P(E) = {e:.4}  P(F) = {f:.4}"));
    }
    if let Some(c) = &r.conditional {
        ctx.say(format!("score given E and F  {c}"));
    }
    if r.game.starts_with('R') || r.game == "S1" {
        ctx.say(format!("referee inversion failures {:.4}", r.invert_fail_rate));
    }
}

fn cmd_run(
    ctx: &mut Ctx,
    game: Option<String>,
    prover: Option<String>,
    trials: Option<u64>,
    pa: &ParamArgs,
) -> Result<()> {
    let game = ctx.cfg.require("game", game, "J".to_string())?;
    let prover_name = ctx.cfg.require("prover", prover, "honest".to_string())?;
    let trials = ctx.cfg.require("trials", trials, 1000)?;
    let seed = ctx.seed;
    let report = match game.as_str() {
        "J" | "Jseq" => {
            let d = ctx.cfg.require("d", pa.d, 4)?;
            run_game_j(JPlayer::parse(&prover_name)?, d, trials, seed, game == "Jseq")?
        }
        "R" | "Rseq" => {
            let params = resolve_params(&mut ctx.cfg, pa, None)?;
            let prover = match prover_name.as_str() {
                "honest" => Prover::Honest,
                other => Prover::Classical(classical_prover(other)?),
            };
            run_game_r(&prover, &params, trials, seed, game == "Rseq")?
        }
        "S1" | "S2" | "S3" => {
            let params = resolve_params(&mut ctx.cfg, pa, None)?;
            let p = classical_prover(&prover_name)?;
            match game.as_str() {
                "S1" => experiment_s1(p, &params, trials, seed)?,
                "S2" => experiment_s2(p, &params, trials, seed)?,
                _ => experiment_s3(p, &params, trials, seed)?,
            }
        }
        other => return Err(Error::InvalidConfig(format!("unknown game {other:?}"))),
    };
    report_game(ctx, &report);

    let mut file = fs::File::create(ctx.out_file(&format!("transcript-{game}.txt"))?)?;
    write_transcripts(&mut file, &report.transcripts)?;
    let summary = ctx.out_file("summary.csv")?;
    let fresh = !summary.exists();
    let mut f = fs::OpenOptions::new().create(true).append(true).open(&summary)?;
    if fresh {
        writeln!(f, "{SUMMARY_HEADER}")?;
    }
    writeln!(f, "{}", summary_row(&game, &report.stats))?;
    if let Some(c) = &report.conditional {
        writeln!(f, "{}", summary_row(&format!("{game}|EF"), c))?;
    }
    Ok(())
}

fn frac(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn cmd_brute(
    ctx: &mut Ctx,
    target: Option<String>,
    k: Option<usize>,
    d: Option<usize>,
    unrestricted: bool,
) -> Result<()> {
    let target = ctx.cfg.require("target", target, "ghz".to_string())?;
    let unrestricted = ctx.cfg.flag("unrestricted", unrestricted)?;
    let (value, bound, bound_label): (Rational, f64, String) = match target.as_str() {
        "ghz" | "ghz-seq" => {
            let k = ctx.cfg.require("k", k, 4)?;
            let d = ctx.cfg.require("d", d, 1)?;
            let mode = match (target.as_str(), d) {
                (_, 1) => Repetition::Single,
                ("ghz", d) => Repetition::Parallel(d),
                (_, d) => Repetition::Sequential(d),
            };
            let v = ghz_value_bruteforce(k, mode)?;
            let (b, l) = if target == "ghz-seq" {
                (0.75f64.powi(d as i32), format!("(3/4)^{d}"))
            } else {
                (0.75, "3/4".to_string())
            };
            ctx.say(format!("omega^c(GHZ_{k}, {d} round(s), {target}) = {}", frac(v)));
            (v, b, l)
        }
        "j" | "j-seq" => {
            let d = ctx.cfg.require("d", d, 1)?;
            let v = j_bias_bruteforce(d, target == "j-seq")?;
            ctx.say(format!("beta^c(J{}_{d}) = {}", if target == "j-seq" { "'" } else { "" }, frac(v)));
            if target == "j-seq" {
                (v, 2.0 * 0.75f64.powf(d as f64 / 4.0), format!("2 (3/4)^({d}/4)"))
            } else {
                // omega^c(GHZ_4^d) <= omega^c(GHZ_4) = 3/4
                (v, 2.0 * 0.75f64.powf(0.25), "2 (3/4)^(1/4)".to_string())
            }
        }
        "eta-parb" => {
            let d = ctx.cfg.require("d", d, 2)?;
            let v = max_eta_parity_balanced(d, !unrestricted)?;
            let kind = if unrestricted { "parity-balanced" } else { "time-ordered parity-balanced" };
            ctx.say(format!("max eta over {kind} subsets of Z_4^{d} = {}", frac(v)));
            if unrestricted {
                if d != 1 {
                    return Err(Error::InvalidConfig("the unrestricted ceiling is checked for d = 1".into()));
                }
                (v, 0.75, "omega^c(GHZ_4) = 3/4".to_string())
            } else {
                (v, 0.75f64.powi(d as i32), format!("(3/4)^{d}"))
            }
        }
        other => return Err(Error::InvalidConfig(format!("unknown brute-force target {other:?}"))),
    };
    let ok = to_f64(value) <= bound + 1e-12;
    ctx.compare(&format!("{} <= {bound_label} = {bound:.6}", frac(value)), ok);
    ctx.write_csv(
        "brute.csv",
        &format!(
            "target,value,value_f64,bound,pass\n{target},{},{:.12},{bound:.12},{ok}\n",
            frac(value),
            to_f64(value)
        ),
    )
}

fn cmd_fourier(ctx: &mut Ctx, check: Option<String>, group: Option<String>, samples: Option<usize>) -> Result<()> {
    let check: FourierCheck = ctx.cfg.require("check", check, "uncertainty".to_string())?.parse()?;
    let (m, n) = parse_group(&ctx.cfg.require("group", group, "Z_4^3".to_string())?)?;
    let samples = ctx.cfg.require("samples", samples, 1000)?;
    let mut rng = stream(ctx.seed, &format!("fourier/{check}"), 0);
    let r = run_check(check, m, n, samples, &mut rng)?;
    ctx.say(format!("{check} on Z_{m}^{n}: {} cases, {} violations", r.cases, r.violations()));
    ctx.say(format!("worst margin {:.3e}", r.worst_margin));
    if let Some(p) = r.worst_product {
        ctx.say(format!("smallest |Supp||Supp^| nu eta / |G| = {p:.12}"));
    }
    if !r.equality_cases.is_empty() {
        ctx.say(format!("equality cases ({}):", r.equality_cases.len()));
        for c in &r.equality_cases {
            ctx.say(format!("  {c}"));
        }
    }
    ctx.compare(&format!("{check}: no violations"), r.passed());
    ctx.write_csv(
        "fourier.csv",
        &format!(
            "check,group,cases,violations,worst_margin,equality_cases\n{check},Z_{m}^{n},{},{},{:e},{}\n",
            r.cases,
            r.violations(),
            r.worst_margin,
            r.equality_cases.len()
        ),
    )
}

/// Target values for the worked example `d = 40`, `epsilon = 0.05`, `alpha = 400000`.
pub const REFERENCE_CEILING: f64 = 0.1127;
pub const REFERENCE_THRESHOLD: f64 = 0.1617;
pub const REFERENCE_SLACK: f64 = 0.01886;

fn cmd_attack(
    ctx: &mut Ctx,
    experiment: Option<String>,
    prover: Option<String>,
    alpha: Option<usize>,
    reps: Option<u64>,
    epsilon: Option<f64>,
    pa: &ParamArgs,
) -> Result<()> {
    let experiment = ctx.cfg.require("experiment", experiment, "plan".to_string())?;
    match experiment.as_str() {
        "plan" => {
            let d = ctx.cfg.require("d", pa.d, 40)?;
            let eps = ctx.cfg.require("epsilon", epsilon, 0.05)?;
            let alpha = ctx.cfg.require("alpha", alpha, 400_000)?;
            let p = attack_plan(d, eps, alpha as u64, ctx.log2);
            let logs = if p.base2 { "base-2" } else { "natural" };
            ctx.say(format!("d = {d}, epsilon = {eps}, alpha = {alpha}, {logs} logarithms"));
            ctx.say(format!("classical ceiling 2 (3/4)^(d/4) = {:.6} (< {:.4})", p.ceiling, p.ceiling_rounded));
            ctx.say(format!("sampling slack                  = {:.6}", p.slack));
            ctx.say(format!("threshold ceiling + epsilon     = {:.6}", p.threshold));
            ctx.say(format!("threshold from rounded ceiling  = {:.6}", p.threshold_from_rounded));
            ctx.say(format!("E[r | b=0] >= ceiling + {:.5}, E[r | b=1] <= ceiling + {:.5}", eps - p.slack, p.slack));
            ctx.say(format!("guaranteed gap epsilon - 2 slack = {:.6}", p.gap));
            ctx.say(format!("DecodeError work 2^(d+1) alpha (d+1) = {:.3e} bit operations", p.decode_work));
            ctx.say(format!(
                "  with zero columns stripped ({} columns, exceeded w.p. {:.4}) = {:.3e}",
                p.stripped_columns, p.weight_tail, p.decode_work_stripped
            ));
            if d == 40 && (eps - 0.05).abs() < 1e-12 && alpha == 400_000 {
                ctx.say("worked example:");
                ctx.compare(&format!("ceiling {:.6} < {REFERENCE_CEILING}", p.ceiling), p.ceiling < REFERENCE_CEILING);
                ctx.compare(
                    &format!("threshold {:.4} = {REFERENCE_THRESHOLD}", p.threshold),
                    (p.threshold - REFERENCE_THRESHOLD).abs() < 5e-5,
                );
                if p.base2 {
                    ctx.compare(
                        &format!("slack {:.5} = {REFERENCE_SLACK}", p.slack),
                        (p.slack - REFERENCE_SLACK).abs() < 5e-5,
                    );
                }
            }
            ctx.write_csv(
                "attack.csv",
                &format!(
                    "d,epsilon,alpha,base2,ceiling,slack,threshold,gap,decode_work,decode_work_stripped\n{d},{eps},{alpha},{},{:.8},{:.8},{:.8},{:.8},{:e},{:e}\n",
                    p.base2, p.ceiling, p.slack, p.threshold, p.gap, p.decode_work, p.decode_work_stripped
                ),
            )
        }
        "E" | "Eprime" => {
            let params = resolve_params(&mut ctx.cfg, pa, None)?;
            let prover = classical_prover(&ctx.cfg.require("prover", prover, "leak".to_string())?)?;
            let reps = ctx.cfg.require("reps", reps, 2000)?;
            let alpha =
                if experiment == "Eprime" { Some(ctx.cfg.require("alpha", alpha, 1usize << params.d)?) } else { None };
            let r = run_experiment_e(prover.as_ref(), &params, alpha, reps, ctx.seed)?;
            ctx.say(format!("experiment {experiment} prover {} reps {reps}", prover.name()));
            ctx.say(format!("E[r | b=0] {}  mean rho {:.4}", r.arm0, r.rho0));
            ctx.say(format!("E[r | b=1] {}  mean rho {:.4}", r.arm1, r.rho1));
            let (lo, hi) = r.ci95();
            ctx.say(format!("advantage {:.4} ± {:.4} (95% CI [{lo:.4}, {hi:.4}])", r.advantage, r.stderr));
            ctx.write_csv(
                "attack.csv",
                &format!(
                    "experiment,prover,reps,alpha,mean_r0,mean_r1,advantage,stderr,ci95_lo,ci95_hi\n{experiment},{},{reps},{},{:.6},{:.6},{:.6},{:.6},{lo:.6},{hi:.6}\n",
                    prover.name(),
                    alpha.map_or("-".to_string(), |a| a.to_string()),
                    r.arm0.mean,
                    r.arm1.mean,
                    r.advantage,
                    r.stderr
                ),
            )
        }
        other => Err(Error::InvalidConfig(format!("unknown attack experiment {other:?}"))),
    }
}

/// Runs the CLI on parsed arguments; returns the report text and the exit status.
pub fn execute(cli: Cli) -> (String, i32) {
    let mut text = String::new();
    match execute_inner(cli, &mut text) {
        Ok(failed) => (text, if failed { 1 } else { 0 }),
        Err(e) => {
            text.push_str(&format!("error: {e}\n"));
            (text, 2)
        }
    }
}

fn execute_inner(cli: Cli, text: &mut String) -> Result<bool> {
    let file = match &cli.config {
        Some(path) => RunConfig::parse_file(&fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };
    let mut cfg = RunConfig::with_file(file);
    let seed = cfg.require("seed", cli.seed, 0)?;
    let out =
        PathBuf::from(cfg.require("out", cli.out.as_ref().map(|p| p.display().to_string()), "hsproof-out".into())?);
    let workers = cfg.get("workers", cli.workers, None)?;
    let log2 = cfg.flag("log2-mode", cli.log2_mode)?;
    if let Some(w) = workers {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    let mut ctx = Ctx { seed, out, log2, cfg, text: String::new(), failed: false };
    let command = match &cli.command {
        Command::Params(_) => "params",
        Command::Run { .. } => "run",
        Command::Brute { .. } => "brute",
        Command::Fourier { .. } => "fourier",
        Command::Attack { .. } => "attack",
    };
    ctx.cfg.values.insert("command".into(), command.into());
    let result = match cli.command {
        Command::Params(a) => cmd_params(&mut ctx, &a),
        Command::Run { game, prover, trials, params } => cmd_run(&mut ctx, game, prover, trials, &params),
        Command::Brute { target, k, d, unrestricted } => cmd_brute(&mut ctx, target, k, d, unrestricted),
        Command::Fourier { check, group, samples } => cmd_fourier(&mut ctx, check, group, samples),
        Command::Attack { experiment, prover, alpha, reps, epsilon, params } => {
            cmd_attack(&mut ctx, experiment, prover, alpha, reps, epsilon, &params)
        }
    };
    text.push_str(&ctx.text);
    result?;
    let conf = ctx.out_file("run.conf")?;
    fs::write(&conf, ctx.cfg.to_text())?;
    Ok(ctx.failed)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (text, code) = execute(cli);
    if code == 2 {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    code
}

/// Reads a transcript file back and checks every stored score.
pub fn verify_transcript_file(path: &Path) -> Result<usize> {
    let records = crate::protocol::transcript::read_transcripts(std::io::BufReader::new(fs::File::open(path)?))?;
    let bad = records.iter().filter(|r| !r.is_consistent()).count();
    if bad > 0 {
        return Err(Error::Parse(format!("{bad} transcript records do not re-score")));
    }
    Ok(records.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let m = RunConfig::parse_file("# comment\nseed = 4\n\ngame=R\n").unwrap();
        assert_eq!(m.get("seed").map(String::as_str), Some("4"));
        assert_eq!(m.get("game").map(String::as_str), Some("R"));
        assert!(RunConfig::parse_file("novalue").is_err());
    }

    #[test]
    fn flags_override_file() {
        let mut cfg = RunConfig::with_file(RunConfig::parse_file("trials=5\nd=3").unwrap());
        assert_eq!(cfg.require("trials", Some(9u64), 1).unwrap(), 9);
        assert_eq!(cfg.require("d", None, 1usize).unwrap(), 3);
        assert_eq!(cfg.require("k", None, 4usize).unwrap(), 4);
        assert!(cfg.to_text().contains("trials=9\n"));
    }
}
