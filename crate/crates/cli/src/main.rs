//! Command-line front end: parse field/sequence/function specs, run the
//! analyses, print text or JSON reports.
//!
//! Exit codes: 0 on success, 1 on a domain error (precondition or
//! structural), 2 on a syntax error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use valx_core::error::Error;
use valx_core::extension::{
    degdom, empirical_slope, image_sequence, lim_sets, prime_fiber, residue_in_kt, FitShape,
    Window,
};
use valx_core::fields::{FieldDescriptor, PrimeSpec};
use valx_core::parse::{parse_elem, parse_field, parse_ratfunc, parse_sequence};
use valx_core::report::sequence_report;
use valx_core::sequences::{classify_prefix, coarsen_sequence, equivalent, CoarsenOutcome, PMSeq};

#[derive(Parser)]
#[command(name = "valx", version, about = "Exact extensions of valuations to K(X) via pseudo-monotone sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Audit prefix length override (also via VALX_PREFIX).
    #[arg(long, global = true)]
    prefix: Option<u64>,
}

#[derive(Args, Clone)]
struct Common {
    /// Field spec: laurentQ | laurentQ:fp:<q> | laurentQ:padic:<p> |
    /// padic:<p> | composite:<p>. Defaults to laurentQ.
    #[arg(long)]
    field: Option<String>,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a sequence spec (kind, gauge cut, breadth and its ideal
    /// class) or a comma-separated list of points.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: Option<String>,
        /// Points to classify, e.g. "t^(1/2),t^(2/3),t^(3/4)".
        #[arg(long)]
        points: Option<String>,
    },
    /// Value of a rational function in the extension valuation.
    Value {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        phi: String,
        /// Also fit the values empirically on a window a:b.
        #[arg(long)]
        window: Option<String>,
    },
    /// Dominating degree of a rational function.
    Degdom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        phi: String,
    },
    /// Whether two sequences induce the same extension.
    Equiv {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        seq2: String,
    },
    /// Kind of the image of the sequence under a rational function.
    Image {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        window: Option<String>,
    },
    /// The two limit sets of the extension.
    Limsets {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
    },
    /// Residue of a member function in k(T) (stationary sequences).
    Residue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        phi: String,
    },
    /// Number of primes of the extension over a selected prime.
    Fiber {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        /// Number of trailing coordinates collapsed (0 = maximal ideal).
        #[arg(long, default_value_t = 0)]
        prime: usize,
        /// Also report the localization behavior of the sequence.
        #[arg(long, default_value_t = false)]
        coarsen: bool,
    },
    /// Full JSON report for a sequence and a batch of functions.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        phi: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.prefix {
        // Propagate to the library's construction audits.
        std::env::set_var("VALX_PREFIX", n.to_string());
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn field_of(common: &Common) -> Result<FieldDescriptor, Error> {
    match &common.field {
        Some(s) => parse_field(s),
        None => Ok(FieldDescriptor::laurent_q()),
    }
}

fn seq_of(spec: &str, common: &Common) -> Result<PMSeq, Error> {
    let default = match &common.field {
        Some(s) => Some(parse_field(s)?),
        None => None,
    };
    parse_sequence(spec, default)
}

fn window_of(spec: &Option<String>) -> Result<Window, Error> {
    match spec {
        None => Ok(Window::default_window()),
        Some(s) => {
            let parts: Vec<&str> = s.split(':').collect();
            let parse = |x: &str| {
                x.trim().parse::<u64>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad window bound '{x}'"),
                })
            };
            match parts.as_slice() {
                [a, b] => Ok(Window::new(parse(a)?, parse(b)?)),
                _ => Err(Error::Parse {
                    pos: 0,
                    msg: "window must be a:b".into(),
                }),
            }
        }
    }
}

fn emit(common: &Common, text: String, json: serde_json::Value) -> Result<(), Error> {
    match common.format.as_str() {
        "json" => println!("{json}"),
        "text" => println!("{text}"),
        other => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("unknown format '{other}'"),
            })
        }
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Classify {
            common,
            seq,
            points,
        } => {
            if let Some(spec) = seq {
                let seq = seq_of(&spec, &common)?;
                let cls = seq.breadth_ideal().classify(&seq.field().group())?;
                let text = format!(
                    "kind={} gauge_cut={} breadth={} breadth_class={} strictly_divisorial={} divisorial={}",
                    seq.kind(),
                    seq.gauge_cut(),
                    seq.breadth_ideal(),
                    cls.category,
                    cls.strictly_divisorial,
                    cls.divisorial,
                );
                let json = serde_json::json!({
                    "sequence": seq.to_string(),
                    "kind": seq.kind().to_string(),
                    "gauge_cut": { "bound": seq.gauge_cut().point.to_string(), "side": seq.gauge_cut().side.to_string() },
                    "breadth": seq.breadth_ideal().to_string(),
                    "breadth_class": cls.category.to_string(),
                    "strictly_divisorial": cls.strictly_divisorial,
                    "divisorial": cls.divisorial,
                });
                emit(&common, text, json)
            } else if let Some(pts) = points {
                let f = field_of(&common)?;
                let points = pts
                    .split(',')
                    .map(|p| parse_elem(p.trim(), &f))
                    .collect::<Result<Vec<_>, _>>()?;
                let cls = classify_prefix(&points, &f)?;
                let text = format!("kind={} order={:?}", cls.kind, cls.order);
                let json = serde_json::json!({
                    "kind": cls.kind.to_string(),
                    "order": cls.order,
                });
                emit(&common, text, json)
            } else {
                Err(Error::Parse {
                    pos: 0,
                    msg: "classify needs --seq or --points".into(),
                })
            }
        }
        Command::Value {
            common,
            seq,
            phi,
            window,
        } => {
            let seq = seq_of(&seq, &common)?;
            let f = seq.field().clone();
            let phi = parse_ratfunc(&phi, &f)?;
            let rep = sequence_report(&seq, std::slice::from_ref(&phi))?;
            let q = &rep.queries[0];
            let mut text = format!(
                "lambda={} gamma={} sign={} member_VE={} member_ME={}",
                q.lambda, q.gamma, q.sign, q.member_ve, q.member_me
            );
            let mut json = serde_json::to_value(q).expect("serializable");
            if let Some(w) = &window {
                let w = window_of(&Some(w.clone()))?;
                let fit = empirical_slope(&phi, &seq, w)?;
                let (fit_text, fit_json) = match &fit.fit {
                    FitShape::Affine { lambda, gamma } => (
                        format!(" fit_lambda={lambda} fit_gamma={gamma} certified={}", fit.certified),
                        serde_json::json!({"lambda": lambda.to_string(), "gamma": gamma.to_string(), "certified": fit.certified}),
                    ),
                    FitShape::Constant { value } => (
                        format!(" fit_constant={value} certified={}", fit.certified),
                        serde_json::json!({"constant": value.to_string(), "certified": fit.certified}),
                    ),
                };
                text.push_str(&fit_text);
                json["empirical"] = fit_json;
            }
            emit(&common, text, json)
        }
        Command::Degdom { common, seq, phi } => {
            let seq = seq_of(&seq, &common)?;
            let phi = parse_ratfunc(&phi, seq.field())?;
            let lam = degdom(&phi, &seq)?;
            emit(
                &common,
                format!("degdom={lam}"),
                serde_json::json!({ "degdom": lam }),
            )
        }
        Command::Equiv { common, seq, seq2 } => {
            let a = seq_of(&seq, &common)?;
            let b = seq_of(&seq2, &common)?;
            let eq = equivalent(&a, &b)?;
            emit(
                &common,
                format!("equivalent={} reason={}", eq.equal, eq.reason),
                serde_json::json!({ "equivalent": eq.equal, "reason": eq.reason }),
            )
        }
        Command::Image {
            common,
            seq,
            phi,
            window,
        } => {
            let seq = seq_of(&seq, &common)?;
            let phi = parse_ratfunc(&phi, seq.field())?;
            let len = window_of(&window)?.len();
            let img = image_sequence(&phi, &seq, len)?;
            let terms: Vec<String> = img.terms.iter().take(4).map(|t| t.to_string()).collect();
            emit(
                &common,
                format!(
                    "kind={} lambda={} start={} certified={} terms={}",
                    img.kind,
                    img.lambda,
                    img.start,
                    img.certified,
                    terms.join("; ")
                ),
                serde_json::json!({
                    "kind": img.kind.to_string(),
                    "lambda": img.lambda,
                    "start": img.start,
                    "certified": img.certified,
                    "terms": terms,
                }),
            )
        }
        Command::Limsets { common, seq } => {
            let seq = seq_of(&seq, &common)?;
            let r = lim_sets(&seq)?;
            let show = |s: &valx_core::extension::LimitSet| -> String {
                if s.is_empty() {
                    "empty".into()
                } else if s.is_all_of_k() {
                    "K".into()
                } else {
                    format!(
                        "{} + {}",
                        s.center.as_ref().unwrap(),
                        s.spread.as_ref().unwrap()
                    )
                }
            };
            emit(
                &common,
                format!("L1={} L2={}", show(&r.l1), show(&r.l2)),
                serde_json::json!({ "L1": show(&r.l1), "L2": show(&r.l2) }),
            )
        }
        Command::Residue { common, seq, phi } => {
            let seq = seq_of(&seq, &common)?;
            let phi = parse_ratfunc(&phi, seq.field())?;
            let r = residue_in_kt(&phi, &seq)?;
            emit(
                &common,
                r.to_string(),
                serde_json::json!({ "residue": r.to_string() }),
            )
        }
        Command::Fiber {
            common,
            seq,
            prime,
            coarsen,
        } => {
            let seq = seq_of(&seq, &common)?;
            let sel = PrimeSpec { collapse: prime };
            let r = prime_fiber(&seq, sel)?;
            let tag = r
                .tag
                .as_ref()
                .map(|t| t.to_string())
                .unwrap_or_else(|| "none".into());
            let witness = r
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_else(|| "none".into());
            let mut text = format!("primes={} tag={} witness_value={}", r.size, tag, witness);
            let mut json = serde_json::json!({
                "primes": r.size, "tag": tag, "witness_value": witness,
            });
            if coarsen {
                let out = coarsen_sequence(&seq, sel)?;
                let desc = match &out {
                    CoarsenOutcome::Remains { kind, breadth, .. } => {
                        format!("remains kind={kind} breadth={breadth}")
                    }
                    CoarsenOutcome::DefinitivelyPst { delta, breadth } => {
                        format!("definitively_pst delta={delta} breadth={breadth}")
                    }
                };
                text.push_str(&format!(" localization={desc}"));
                json["localization"] = serde_json::Value::String(desc);
            }
            emit(&common, text, json)
        }
        Command::Report { common, seq, phi } => {
            let seq = seq_of(&seq, &common)?;
            let f = seq.field().clone();
            let phis = phi
                .iter()
                .map(|p| parse_ratfunc(p, &f))
                .collect::<Result<Vec<_>, _>>()?;
            let rep = sequence_report(&seq, &phis)?;
            let json = serde_json::to_value(&rep).expect("serializable");
            let mut text = format!(
                "sequence={} kind={} gauge_cut=({}, {}) breadth={}",
                rep.sequence, rep.kind, rep.gauge_cut.bound, rep.gauge_cut.side, rep.breadth
            );
            for q in &rep.queries {
                text.push_str(&format!(
                    "\n  phi={} lambda={} gamma={} sign={} member_VE={} member_ME={}",
                    q.phi, q.lambda, q.gamma, q.sign, q.member_ve, q.member_me
                ));
            }
            emit(&common, text, json)
        }
    }
}
