//! Subcommands. Each returns a [`ResultDocument`] plus an exit code:
//! 0 on success, 1 when the computation refuses or cannot decide, 2 on bad input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fwdiff_core::error::Error as CoreError;
use fwdiff_core::fwcore::{check_axioms, present_fw};
use fwdiff_core::localalg::{
    fiber_dim, regularity, Locus, PointSpec, PrimalityCertificate, PrimeSpec, RegularityOptions, Verdict,
};
use fwdiff_core::modarith::Prime;
use fwdiff_core::oracle::{cross_check, DEFAULT_MAX_SIZE};

use crate::document::{Meta, ModuleEcho, ResultDocument, RingEcho};
use crate::parse::{parse_point, parse_poly, parse_ring, RingFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fwdiff", version, about = "Frobenius–Witt differentials, fibers and regularity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Presentation of the module of the ring.
    Present(RingArgs),
    /// Fiber dimension at a point or prime.
    Fiber(LocusArgs),
    /// Regularity verdict by the rank criterion.
    Regular(RegularArgs),
    /// Brute-force construction on a finite ring, compared with the presentation.
    Oracle(OracleArgs),
    /// Randomized check of the derivation laws over Z/p^2.
    Axioms(AxiomArgs),
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring file.
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Seed echoed in the certificate.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct LocusArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Point coordinates `c1,c2,…` in the residue field of the base.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "prime", required_unless_present = "prime")]
    pub point: Option<String>,
    /// Prime generators `g1;g2;…` in the carrier ring.
    #[arg(long, allow_hyphen_values = true)]
    pub prime: Option<String>,
    /// Accept a prime locus outside the certified class.
    #[arg(long)]
    pub assume_prime: bool,
}

#[derive(Debug, Args)]
pub struct RegularArgs {
    #[command(flatten)]
    pub locus: LocusArgs,
    /// Assert flatness over Z_(p) (mixed characteristic only).
    #[arg(long)]
    pub flat: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Largest ring order the oracle enumerates.
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: u64,
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[arg(long = "p")]
    pub p: u64,
    #[arg(long)]
    pub nvars: usize,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: ResultDocument,
    pub json: bool,
    pub code: i32,
    /// Diagnostic for standard error, if any.
    pub message: Option<String>,
}

impl Outcome {
    pub fn stdout(&self) -> String {
        if self.json {
            self.document.to_json()
        } else {
            self.document.to_text()
        }
    }
}

/// Failure of a command, carrying what was computed so far.
struct Failure {
    code: i32,
    message: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::NotPrime(_)
            | CoreError::PrimeOutOfRange(_)
            | CoreError::DegreeOutOfRange(_)
            | CoreError::NotIrreducible(..)
            | CoreError::RingMismatch(_)
            | CoreError::Presentation(_)
            | CoreError::PointOffScheme(_)
            | CoreError::EmptyLocus
            | CoreError::RingAxiom(_) => EXIT_INPUT,
            CoreError::ZeroDivisor(_)
            | CoreError::PrimalityUnknown(_)
            | CoreError::FlatnessRequired
            | CoreError::Unsupported(_)
            | CoreError::TooLarge { .. }
            | CoreError::Infinite(_) => EXIT_REFUSED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn load(args: &RingArgs) -> Result<RingFile, Failure> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| input_error(format!("cannot read {}: {e}", args.input.display())))?;
    parse_ring(&text).map_err(|e| input_error(format!("{}: {e}", args.input.display())))
}

fn locus(file: &RingFile, args: &LocusArgs) -> Result<Locus, Failure> {
    let a = &file.presentation;
    if let Some(pt) = &args.point {
        let field = a.base().residue_field();
        let coords = parse_point(pt, &field).map_err(|e| input_error(format!("--point: {e}")))?;
        let x = PointSpec::new(field, coords)?;
        x.check_on(a)?;
        return Ok(Locus::Point(x));
    }
    let text = args.prime.as_deref().unwrap_or_default();
    let ring = a.carrier_ring();
    let gens = text
        .split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| parse_poly(g, &ring, a.vars()).map_err(|e| input_error(format!("--prime: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = PrimeSpec::new(gens);
    Ok(Locus::Prime(if args.assume_prime { spec.assuming_prime() } else { spec }))
}

fn locus_value(file: &RingFile, l: &Locus) -> Value {
    match l {
        Locus::Point(x) => json!({ "point": x.format() }),
        Locus::Prime(p) => {
            let a = &file.presentation;
            let gens: Vec<String> = p.generators().iter().map(|g| g.display(a.vars())).collect();
            json!({ "prime": gens, "assumed": p.is_assumed() })
        }
    }
}

fn primality_value(c: &Option<PrimalityCertificate>, names: &[String]) -> Value {
    match c {
        None => Value::Null,
        Some(PrimalityCertificate::Linear) => json!("linear"),
        Some(PrimalityCertificate::Irreducible(h)) => json!(format!("irreducible: {}", h.display(names))),
        Some(PrimalityCertificate::Asserted) => json!("asserted"),
    }
}

struct Partial {
    command: Value,
    ring: Option<RingEcho>,
    module: Option<ModuleEcho>,
    seed: u64,
    json: bool,
}

impl Partial {
    fn finish(self, result: Result<(Value, i32), Failure>) -> Outcome {
        let (result, code, message) = match result {
            Ok((v, code)) => (v, code, None),
            Err(f) => {
                let status = if f.code == EXIT_INPUT { "input-error" } else { "refused" };
                (json!({ "error": f.message, "status": status }), f.code, Some(f.message))
            }
        };
        Outcome {
            document: ResultDocument {
                command: self.command,
                ring: self.ring,
                module: self.module,
                result,
                meta: Meta::new(self.seed),
            },
            json: self.json,
            code,
            message,
        }
    }
}

fn ring_command(name: &str, args: &RingArgs, extra: Value) -> Partial {
    let mut command = json!({ "name": name, "input": args.input.display().to_string() });
    if let (Value::Object(c), Value::Object(e)) = (&mut command, extra) {
        c.extend(e);
    }
    Partial {
        command,
        ring: None,
        module: None,
        seed: args.seed,
        json: args.json,
    }
}

fn with_ring(
    mut partial: Partial,
    args: &RingArgs,
    body: impl FnOnce(&RingFile, &mut Partial) -> Result<(Value, i32), Failure>,
) -> Outcome {
    let file = match load(args) {
        Ok(f) => f,
        Err(e) => return partial.finish(Err(e)),
    };
    partial.ring = Some(RingEcho::new(&file));
    let r = body(&file, &mut partial);
    partial.finish(r)
}

fn cmd_present(args: &RingArgs) -> Outcome {
    let partial = ring_command("present", args, json!({}));
    with_ring(partial, args, |file, partial| {
        let a = &file.presentation;
        let m = present_fw(a)?;
        partial.module = Some(ModuleEcho::new(a, &m));
        let free = m.is_free();
        let fp_dim = match m.fp_dimension() {
            Ok(d) => json!(d),
            Err(CoreError::Infinite(_)) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        Ok((
            json!({
                "generators": m.ngens(),
                "relations": m.columns().len(),
                "free": free,
                "free_rank": if free { json!(m.ngens()) } else { Value::Null },
                "fp_dimension": fp_dim,
            }),
            EXIT_OK,
        ))
    })
}

fn locus_flags(args: &LocusArgs) -> Value {
    json!({
        "point": args.point,
        "prime": args.prime,
        "assume_prime": args.assume_prime,
    })
}

fn cmd_fiber(args: &LocusArgs) -> Outcome {
    let partial = ring_command("fiber", &args.ring, locus_flags(args));
    with_ring(partial, &args.ring, |file, partial| {
        let a = &file.presentation;
        let l = locus(file, args)?;
        let m = present_fw(a)?;
        partial.module = Some(ModuleEcho::new(a, &m));
        let primality = match &l {
            Locus::Prime(p) => Some(fwdiff_core::localalg::certify_prime(&p.locus_ideal(a)?, p.is_assumed())?),
            Locus::Point(_) => None,
        };
        let f = fiber_dim(a, &m, &l)?;
        Ok((
            json!({
                "locus": locus_value(file, &l),
                "fiber_dim": f.dim,
                "matrix_rank": f.rank,
                "evaluated_matrix": f.matrix,
                "primality": primality_value(&primality, a.vars()),
            }),
            EXIT_OK,
        ))
    })
}

fn cmd_regular(args: &RegularArgs) -> Outcome {
    let mut extra = locus_flags(&args.locus);
    extra["flat"] = json!(args.flat);
    let partial = ring_command("regular", &args.locus.ring, extra);
    with_ring(partial, &args.locus.ring, |file, partial| {
        let a = &file.presentation;
        let l = locus(file, &args.locus)?;
        partial.module = Some(ModuleEcho::new(a, &present_fw(a)?));
        let v = regularity(a, &l, RegularityOptions { flat: args.flat })?;
        let code = if v.verdict == Verdict::Unknown { EXIT_REFUSED } else { EXIT_OK };
        Ok((
            json!({
                "locus": locus_value(file, &l),
                "verdict": v.verdict.as_str(),
                "fiber_dim": v.fiber_dim,
                "d": v.d,
                "r": v.r,
                "d_plus_r": v.d.map(|d| d + v.r),
                "mode": v.mode.as_str(),
                "evaluated_matrix": v.fiber.matrix,
                "primality": primality_value(&v.primality, a.vars()),
                "explanation": v.explanation,
            }),
            code,
        ))
    })
}

fn cmd_oracle(args: &OracleArgs) -> Outcome {
    let partial = ring_command("oracle", &args.ring, json!({ "max_size": args.max_size }));
    with_ring(partial, &args.ring, |file, partial| {
        let a = &file.presentation;
        partial.module = Some(ModuleEcho::new(a, &present_fw(a)?));
        let c = cross_check(a, args.max_size)?;
        let code = if c.matches { EXIT_OK } else { EXIT_REFUSED };
        Ok((
            json!({
                "order": c.order,
                "brute_dim": c.brute_dim,
                "presented_dim": c.presented_dim,
                "match": c.matches,
                "residue_dim": c.module.residue_dim,
                "relation_rank": c.module.rank,
                "basis": c.module.basis,
            }),
            code,
        ))
    })
}

fn cmd_axioms(args: &AxiomArgs) -> Outcome {
    let partial = Partial {
        command: json!({ "name": "axioms", "p": args.p, "nvars": args.nvars, "trials": args.trials }),
        ring: None,
        module: None,
        seed: args.seed,
        json: args.json,
    };
    let result = (|| {
        let p = Prime::new(args.p)?;
        let r = check_axioms(p, args.nvars, args.trials, args.seed)?;
        let failures: Vec<Value> = r
            .failures
            .iter()
            .map(|f| json!({ "trial": f.trial, "law": f.law, "f": f.f, "g": f.g }))
            .collect();
        let verdict = if r.all_pass() { "pass" } else { "fail" };
        let code = if r.all_pass() { EXIT_OK } else { EXIT_REFUSED };
        Ok((
            json!({
                "passed": r.passed,
                "trials": r.trials,
                "failures": failures,
                "summary": format!("{}/{} {verdict}", r.passed, r.trials),
            }),
            code,
        ))
    })();
    partial.finish(result)
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Present(a) => cmd_present(a),
        Command::Fiber(a) => cmd_fiber(a),
        Command::Regular(a) => cmd_regular(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Axioms(a) => cmd_axioms(a),
    }
}
