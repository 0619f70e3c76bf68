//! `nucalab`: property checks, duals, inverses, shadowing demos and the
//! counterexample reproduction for linear NUCA over finite fields.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use nucalab::analysis::{
    construct_inverse, cross_validated_verdict, find_left_inverse, find_right_inverse, surjectivity_verdict,
    verdict, verify_verdict, Property, SearchBounds, Status, Subject, Verdict,
};
use nucalab::repro::{self, ReproStatus};
use nucalab::shadowing::{
    delta_for, generate_pseudo_orbit, shadow_point, Dyadic, Generators, Perturbation,
};
use nucalab::{examples, read_rule_file, rule_to_json, sample, EvPerConfig, Error, RuleConfig};

use report::{rule_digest, RunReport};

const EXIT_MALFORMED: u8 = 64;
const EXIT_UNSUPPORTED: u8 = 65;
const EXIT_CONTRADICTION: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "nucalab", version, about = "Linear non-uniform cellular automata over finite fields")]
struct Cli {
    /// Seed for sampled checks and random perturbations (default: $NUCALAB_SEED or a fixed value).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Bounds {
    /// Largest window radius searched.
    #[arg(long, default_value_t = 8)]
    bound: i64,
    #[arg(long, default_value_t = 8)]
    period_bound: usize,
    #[arg(long, default_value_t = 3)]
    mem_bound: i64,
    #[arg(long, default_value_t = 4)]
    support_bound: i64,
    #[arg(long, default_value_t = 2)]
    pattern_radius: i64,
}

impl From<Bounds> for SearchBounds {
    fn from(b: Bounds) -> Self {
        SearchBounds {
            n_max: b.bound,
            period_bound: b.period_bound,
            mem_bound: b.mem_bound,
            support_bound: b.support_bound,
            pattern_radius: b.pattern_radius,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide or semi-decide one property (exit 0 Holds, 1 Fails, 2 Inconclusive).
    Check {
        rule: PathBuf,
        #[arg(long)]
        property: Property,
        #[command(flatten)]
        bounds: Bounds,
        /// Use only direct evidence, without propagating through the dual.
        #[arg(long)]
        no_cross: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the dual rule file.
    Dual {
        rule: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for left/right inverses and run the explicit construction.
    Invert {
        rule: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        json: bool,
    },
    /// Generate a pseudo-orbit and shadow it.
    Shadow {
        rule: PathBuf,
        #[arg(long, default_value = "2^-2")]
        epsilon: Dyadic,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// none, flip, random or random:SEED.
        #[arg(long, default_value = "flip")]
        perturb: String,
        /// Window parameter N of the finite-type description.
        #[arg(long, default_value_t = 3)]
        window: u32,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the counterexample's property table and the duality identities.
    ReproPaper {
        /// Replace the built-in counterexample by this rule file.
        #[arg(long)]
        rule: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        json: bool,
    },
    /// Re-verify every certificate of a JSON report.
    VerifyCert { report: PathBuf },
}

fn seed(cli: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = cli {
        return Ok(s);
    }
    match std::env::var("NUCALAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("NUCALAB_SEED={v:?} is not an integer"))),
        Err(_) => Ok(sample::DEFAULT_SEED),
    }
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Inconclusive => 2,
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::Contradiction(_) => EXIT_CONTRADICTION,
        Error::InvalidCertificate(_) => 1,
        _ => EXIT_MALFORMED,
    }
}

fn load(path: &Path) -> Result<RuleConfig, Error> {
    read_rule_file(path)
}

fn describe(v: &Verdict) -> String {
    let mut out = format!("{}: {} ({})", v.property, v.status, v.certificate.kind());
    if !v.anchors.is_empty() {
        let resolved = v.anchors.iter().filter(|a| a.resolved()).count();
        out.push_str(&format!(", {resolved}/{} anchors resolved", v.anchors.len()));
    }
    out
}

fn cmd_check(
    argv: Vec<String>,
    path: &Path,
    property: Property,
    bounds: SearchBounds,
    no_cross: bool,
    json: bool,
) -> Result<u8, Error> {
    let start = Instant::now();
    let s = load(path)?;
    let v = if s.universe().dim() != 1 {
        if property != Property::Surjective {
            return Err(Error::Unsupported(format!(
                "{property} needs d = 1; only window checks run for d = {}",
                s.universe().dim()
            )));
        }
        surjectivity_verdict(&s, &bounds)?
    } else if no_cross {
        verdict(&s, property, None, &bounds)?
    } else {
        cross_validated_verdict(&s, property, &bounds)?
    };
    let code = exit_code(v.status);
    let mut report = RunReport::new(argv, Some(&s));
    report.push(Subject::Rule, v.clone());
    report.timing_ms = start.elapsed().as_millis() as u64;
    if json {
        print!("{}", report.to_json());
    } else {
        println!("{}", describe(&v));
    }
    Ok(code)
}

fn cmd_dual(path: &Path, output: Option<&Path>) -> Result<u8, Error> {
    let s = load(path)?;
    let text = rule_to_json(&s.dual());
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_invert(argv: Vec<String>, path: &Path, bounds: SearchBounds, json: bool) -> Result<u8, Error> {
    let start = Instant::now();
    let s = load(path)?;
    let left = find_left_inverse(&s, bounds.mem_bound, bounds.support_bound)?;
    let right = find_right_inverse(&s, bounds.mem_bound, bounds.support_bound)?;
    let built = construct_inverse(&s, bounds.pattern_radius)?;
    let mut report = RunReport::new(argv, Some(&s));
    report.details = json!({
        "bounds": bounds,
        "left_inverse": left,
        "right_inverse": right,
        "constructed_inverse": built.inverse,
        "construction_diagnostics": built.diagnostics,
    });
    report.timing_ms = start.elapsed().as_millis() as u64;
    let found = [&left, &right, &built.inverse].iter().filter(|t| t.is_some()).count();
    if json {
        print!("{}", report.to_json());
    } else {
        let show = |t: &Option<RuleConfig>| match t {
            Some(t) => format!("found (digest {})", &rule_digest(t)[..12]),
            None => "absent within bounds".to_string(),
        };
        println!("left inverse: {}", show(&left));
        println!("right inverse: {}", show(&right));
        println!("constructed inverse: {}", show(&built.inverse));
    }
    Ok(if found > 0 { 0 } else { 2 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_shadow(
    argv: Vec<String>,
    path: &Path,
    epsilon: Dyadic,
    horizon: usize,
    perturb: &str,
    window: u32,
    seed: u64,
    json: bool,
) -> Result<u8, Error> {
    let start = Instant::now();
    let s = load(path)?;
    let perturbation = match perturb.parse::<Perturbation>()? {
        Perturbation::Random { seed: _ } if perturb == "random" => Perturbation::Random { seed },
        p => p,
    };
    let g = Generators::single(s.clone())?;
    let delta = delta_for(&g, epsilon, window);
    let x0 = EvPerConfig::zero(s.universe().k()).with_value(0, s.universe().basis_vector(0));
    let orbit = generate_pseudo_orbit(&g, &x0, delta, horizon, perturbation)?;
    let steps = orbit.validate(&g)?;
    let rep = shadow_point(&g, &orbit, epsilon, window)?;
    let ok = rep.success();
    let mut report = RunReport::new(argv, Some(&s));
    report.details = json!({
        "perturbation": perturbation,
        "step_errors": steps,
        "shadow": rep,
    });
    report.timing_ms = start.elapsed().as_millis() as u64;
    if json {
        print!("{}", report.to_json());
    } else {
        println!(
            "epsilon {epsilon}, n0 {}, C = 2^{}, N {window}, delta {}",
            rep.n0, rep.lipschitz_exponent, rep.delta
        );
        println!("solve window [-{r}, {r}], {} unknowns, {} equations", rep.unknowns, rep.equations, r = rep.solve_radius);
        match &rep.max_distance {
            Some(d) if ok => println!("shadowed: max distance {d} over {} points", rep.distances.len()),
            Some(d) => println!("verification failed: max distance {d}"),
            None => println!("infeasible: no configuration shadows this pseudo-orbit"),
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_repro(argv: Vec<String>, rule: Option<&Path>, bounds: SearchBounds, seed: u64, json: bool) -> Result<u8, Error> {
    let start = Instant::now();
    let s = match rule {
        Some(p) => load(p)?,
        None => examples::ex_s0(),
    };
    s.universe().require_line("the reproduction suite")?;
    let r = repro::run(&s, &bounds, seed)?;
    let mut report = RunReport::new(argv, Some(&s));
    for c in &r.claims {
        report.push(c.subject, c.verdict.clone());
    }
    let code = match r.status {
        ReproStatus::AllConfirmed => 0,
        ReproStatus::Mismatch => 1,
        ReproStatus::SomeInconclusive => 2,
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    if json {
        report.details = serde_json::to_value(&r)?;
        print!("{}", report.to_json());
    } else {
        for c in &r.claims {
            let who = match c.subject {
                Subject::Rule => "s ",
                Subject::Dual => "s*",
            };
            println!(
                "{who} {:<24} expected {:<6} got {:<12} {:?}",
                c.property.name(),
                c.expected.to_string(),
                c.verdict.status.to_string(),
                c.outcome
            );
        }
        for c in &r.checks {
            println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
        println!("{:?}", r.status);
    }
    Ok(code)
}

fn cmd_verify(path: &Path) -> Result<u8, Error> {
    let text = std::fs::read_to_string(path)?;
    let report: RunReport = serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
    if report.verdicts.is_empty() {
        println!("no certificates to verify");
        return Ok(0);
    }
    let s = report
        .rule
        .as_ref()
        .ok_or_else(|| Error::Malformed("report has verdicts but no rule".into()))?;
    if let Some(d) = &report.rule_digest {
        if *d != rule_digest(s) {
            return Err(Error::InvalidCertificate("rule digest does not match the embedded rule".into()));
        }
    }
    let dual = s.dual();
    let mut rejected = 0;
    for sv in &report.verdicts {
        let target = match sv.subject {
            Subject::Rule => s,
            Subject::Dual => &dual,
        };
        let who = match sv.subject {
            Subject::Rule => "s",
            Subject::Dual => "s*",
        };
        match verify_verdict(target, &sv.verdict) {
            Ok(()) => println!("accepted {who} {}", describe(&sv.verdict)),
            Err(e) => {
                rejected += 1;
                println!("REJECTED {who} {}: {e}", describe(&sv.verdict));
            }
        }
    }
    Ok(if rejected == 0 { 0 } else { 1 })
}

fn run(cli: Cli, argv: Vec<String>) -> Result<u8, Error> {
    let seed = seed(cli.seed)?;
    match cli.command {
        Command::Check {
            rule,
            property,
            bounds,
            no_cross,
            json,
        } => cmd_check(argv, &rule, property, bounds.into(), no_cross, json),
        Command::Dual { rule, output } => cmd_dual(&rule, output.as_deref()),
        Command::Invert { rule, bounds, json } => cmd_invert(argv, &rule, bounds.into(), json),
        Command::Shadow {
            rule,
            epsilon,
            horizon,
            perturb,
            window,
            json,
        } => cmd_shadow(argv, &rule, epsilon, horizon, &perturb, window, seed, json),
        Command::ReproPaper { rule, bounds, json } => cmd_repro(argv, rule.as_deref(), bounds.into(), seed, json),
        Command::VerifyCert { report } => cmd_verify(&report),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nucalab: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
