use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qaffine::checks::{self, CheckReport, OmegaRelation, SampleSpec};
use qaffine::error::{Error, Result};
use qaffine::form::{gram, gram_rank_report, pair};
use qaffine::kashiwara::{alpha_bar, k_act};
use qaffine::nq::{multiply, normal_form};
use qaffine::omega::{omega_phi, omega_psi};
use qaffine::parse::{parse_element, parse_scalar, parse_word};
use qaffine::scalar::Rational;
use qaffine::series::check_identity_18;
use qaffine::suite::{run_suite, RunConfig, SuiteName, SuiteReport};
use qaffine::verma::{
    default_eval_points, lemma62_scan, psi_expansion_oracle, singular_probe, HighestWeight, VermaElement, VermaOp,
};
use qaffine::Element;

#[derive(Parser)]
#[command(name = "qaffine", version, about = "Exact computations in the negative Drinfeld subalgebra of quantum affine sl(2)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// RNG seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Maximum monomial length for sampled elements.
    #[arg(long, global = true)]
    max_len: Option<usize>,

    /// Mode window `a..b` for sampled elements.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    mode_window: Option<(i64, i64)>,

    /// Component index window `a..b` for relation checks.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    idx_window: Option<(i64, i64)>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-order an expression, or a word given as comma-separated modes.
    NormalForm {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "expr")]
        word: Option<String>,
    },
    /// Product of two elements.
    Multiply {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Apply Omega_psi(k) or Omega_phi(k).
    Omega {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Act by a word in xm(n), Wpsi(k) and gam on an element.
    Kact {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        expr: String,
    },
    /// Image of a word under the anti-automorphism.
    Alphabar {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// The bilinear form (a, b).
    Pair {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Gram matrix of the form on a truncated weight space.
    Gram {
        #[arg(long)]
        length: usize,
        #[arg(long, allow_hyphen_values = true)]
        dsum: i64,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
        /// Also report determinant and ranks at these q values (comma-separated rationals).
        #[arg(long, allow_hyphen_values = true)]
        rank: Option<Option<String>>,
    },
    /// Reduced Verma module at level zero.
    Verma {
        #[command(subcommand)]
        command: VermaCommand,
    },
    /// Run one group of relation checks.
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
    /// Run a named battery and exit 3 on any failure.
    Suite {
        #[arg(value_parser = parse_suite)]
        name: SuiteName,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Psi,
    Phi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Xplus,
    Xminus,
    A,
    Psi,
    Phi,
    #[value(name = "K")]
    K,
}

#[derive(Subcommand)]
enum VermaCommand {
    /// Apply one operator to payload * v.
    Act {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        idx: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_h: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        expr: String,
    },
    /// psi(j) through the a(k) exponential.
    Oracle {
        #[arg(long)]
        j: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_h: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        expr: String,
    },
    /// Kernel of all x+(s) on a truncated weight space.
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        lambda_h: i64,
        #[arg(long)]
        length: usize,
        #[arg(long, allow_hyphen_values = true)]
        dsum: i64,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
    },
    /// x+(s) on sum_l A_l x-(l) x-(m-l) v over a range of s.
    Lemma62 {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        l_from: i64,
        #[arg(long, allow_hyphen_values = true)]
        s_from: i64,
        #[arg(long, allow_hyphen_values = true)]
        s_to: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lambda_h: i64,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Sampled relation checks.
    Relations(RelationArgs),
    /// The exponential identity for the a(k) series.
    Identity18 {
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
}

#[derive(Args)]
struct RelationArgs {
    #[arg(long, value_enum, default_value_t = Group::Omega)]
    suite: Group,
    /// One relation of the group; all of them when omitted. `mixed-literal`
    /// (kashiwara only) runs the uncorrected mixed constant.
    #[arg(long)]
    rel: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    len_max: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Pbw,
    Omega,
    Kashiwara,
    Form,
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    if a > b {
        return Err(format!("empty window {s}"));
    }
    Ok((a, b))
}

fn parse_suite(s: &str) -> std::result::Result<SuiteName, String> {
    SuiteName::parse(s).map_err(|e| e.to_string())
}

fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| {
            let c = parse_scalar(t.trim())?;
            if c.is_zero() {
                return Ok(Rational::from_integer(0.into()));
            }
            let terms: Vec<_> = c.terms().collect();
            match terms.as_slice() {
                [(0, 0, r)] => Ok((*r).clone()),
                _ => Err(Error::domain(format!("expected a rational number, got {t:?}"))),
            }
        })
        .collect()
}

fn element_out(e: &Element) -> Value {
    json!({"element": e.to_json(), "text": e.to_string()})
}

enum Output {
    Value { json: Value, text: String },
    Suite(SuiteReport),
}

fn emit(format: Format, out: &Output) {
    match (out, format) {
        (Output::Value { json, .. }, Format::Json) => {
            let mut v = json.clone();
            v.as_object_mut().expect("object").insert("schemaVersion".into(), json!(1));
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        (Output::Value { text, .. }, Format::Text) => println!("{text}"),
        (Output::Suite(r), Format::Json) => println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("serializable")),
        (Output::Suite(r), Format::Text) => print!("{}", r.to_text()),
    }
}

fn value(json: Value, text: impl Into<String>) -> Output {
    Output::Value { json, text: text.into() }
}

fn run(cli: &Cli) -> Result<Output> {
    let mut cfg = RunConfig {
        seed: cli.seed,
        ..RunConfig::default()
    };
    if let Some(n) = cli.max_len {
        cfg.max_len = n;
    }
    if let Some(w) = cli.mode_window {
        cfg.mode_window = w;
    }
    if let Some(w) = cli.idx_window {
        cfg.idx_window = w;
    }
    let cfg = cfg.from_env()?;

    Ok(match &cli.command {
        Command::NormalForm { expr, word } => {
            let e = match (expr, word) {
                (_, Some(w)) => {
                    let modes: Vec<i64> = if w.trim().is_empty() {
                        Vec::new()
                    } else {
                        w.split(',')
                            .map(|t| t.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad mode {t:?}") }))
                            .collect::<Result<_>>()?
                    };
                    normal_form(&modes)
                }
                (Some(x), None) => parse_element(x)?,
                (None, None) => return Err(Error::domain("give an expression or --word")),
            };
            value(element_out(&e), e.to_string())
        }
        Command::Multiply { a, b } => {
            let e = multiply(&parse_element(a)?, &parse_element(b)?);
            value(element_out(&e), e.to_string())
        }
        Command::Omega { kind, k, expr } => {
            let x = parse_element(expr)?;
            let e = match kind {
                Kind::Psi => omega_psi(*k, &x),
                Kind::Phi => omega_phi(*k, &x),
            };
            value(element_out(&e), e.to_string())
        }
        Command::Kact { word, expr } => {
            let e = k_act(&parse_word(word)?, &parse_element(expr)?);
            value(element_out(&e), e.to_string())
        }
        Command::Alphabar { word } => {
            let w = alpha_bar(&parse_word(word)?);
            value(json!({"word": w.to_string()}), w.to_string())
        }
        Command::Pair { a, b } => {
            let s = pair(&parse_element(a)?, &parse_element(b)?);
            value(json!({"value": s.to_json(), "text": s.to_string()}), s.to_string())
        }
        Command::Gram { length, dsum, window, rank } => {
            let g = gram(*length, *dsum, window.0, window.1)?;
            let mut j = g.to_json();
            let mut text = g.to_text();
            if let Some(points) = rank {
                let points = match points {
                    Some(p) => parse_rationals(p)?,
                    None => default_eval_points(),
                };
                let r = gram_rank_report(&g, &points)?;
                j.as_object_mut().expect("object").insert("rank".into(), r.to_json());
                if let Some(d) = &r.symbolic_det {
                    text.push_str(&format!("det = {d}\n"));
                }
                for (p, k) in &r.ranks {
                    text.push_str(&format!("rank at q={p}: {k}\n"));
                }
            }
            value(j, text.trim_end())
        }
        Command::Verma { command } => verma(command)?,
        Command::Check { command } => match command {
            CheckCommand::Identity18 { order } => {
                let r = check_identity_18(*order)?;
                let j = json!({
                    "order": r.order,
                    "equal": r.equal,
                    "firstMismatch": r.first_mismatch,
                    "coefficients": r.exponential.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                });
                let mut text = format!("order={} equal={}\n", r.order, r.equal);
                for (i, c) in r.exponential.coeffs().iter().enumerate() {
                    text.push_str(&format!("z^-{i}: {c}\n"));
                }
                value(j, text.trim_end())
            }
            CheckCommand::Relations(args) => Output::Suite(relations(args, &cfg)?),
        },
        Command::Suite { name } => Output::Suite(run_suite(*name, &cfg)),
    })
}

fn verma(cmd: &VermaCommand) -> Result<Output> {
    Ok(match cmd {
        VermaCommand::Act { op, idx, lambda_h, expr } => {
            let v = VermaElement::new(HighestWeight::new(*lambda_h), &parse_element(expr)?);
            let op = match op {
                Op::Xplus => VermaOp::XPlus(*idx),
                Op::Xminus => VermaOp::XMinus(*idx),
                Op::A => VermaOp::A(*idx),
                Op::Psi => VermaOp::Psi(*idx),
                Op::Phi => VermaOp::Phi(*idx),
                Op::K => VermaOp::K,
            };
            let out = v.act(op)?;
            let e = out.payload();
            let mut j = element_out(e);
            j.as_object_mut().expect("object").insert("lambdaH".into(), json!(lambda_h));
            value(j, format!("({e}) v"))
        }
        VermaCommand::Oracle { j, lambda_h, expr } => {
            let e = psi_expansion_oracle(*lambda_h, *j, &parse_element(expr)?.at_gamma_one())?;
            value(element_out(&e), format!("({e}) v"))
        }
        VermaCommand::Singular { lambda_h, length, dsum, window } => {
            let r = singular_probe(*lambda_h, *length, *dsum, window.0, window.1)?;
            let text = format!(
                "kernelDim={} basis={} ranks={} symbolicRank={} stationary={} certified={}",
                r.kernel_dim,
                r.basis.len(),
                r.ranks.iter().map(|(p, k)| format!("{p}:{k}")).collect::<Vec<_>>().join(","),
                r.symbolic_rank.map_or("-".into(), |k| k.to_string()),
                r.stationary,
                r.certified.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
            );
            value(r.to_json(), text)
        }
        VermaCommand::Lemma62 { a, m, l_from, s_from, s_to, lambda_h } => {
            let coeffs = parse_rationals(a)?;
            let r = lemma62_scan(*lambda_h, &coeffs, *l_from, *m, *s_from, *s_to)?;
            let mut text = String::new();
            for row in &r.rows {
                text.push_str(&format!(
                    "s={} {} {}\n",
                    row.s,
                    if row.threshold_met { "ok" } else { "threshold not met" },
                    row.value
                ));
            }
            text.push_str(&format!(
                "weights: {}\nconstraint: {} = 0\nsIndependent={} constraintHolds={} vanishes={}",
                r.weights.iter().map(|(l, w)| format!("w({l})={w}")).collect::<Vec<_>>().join(" "),
                r.weights.iter().map(|(l, w)| format!("({w})*A({l})")).collect::<Vec<_>>().join(" + "),
                r.s_independent,
                r.constraint_holds,
                r.vanishes
            ));
            value(r.to_json(), text)
        }
    })
}

fn relations(args: &RelationArgs, cfg: &RunConfig) -> Result<SuiteReport> {
    let samples = args.samples.unwrap_or(cfg.element_samples);
    let spec = SampleSpec {
        samples,
        max_len: args.len_max.unwrap_or(cfg.max_len),
        mode_window: cfg.mode_window,
        idx_window: cfg.idx_window,
        seed: cfg.seed,
    };
    let rel = args.rel.as_deref();
    let unknown = |r: &str| Error::domain(format!("unknown relation {r:?} for this group"));
    let checks: Vec<CheckReport> = match args.suite {
        Group::Omega => match rel {
            None => {
                let mut v = vec![checks::check_vanishing(spec.max_len, spec.mode_window), checks::check_omega_grading(&spec)];
                v.extend(OmegaRelation::ALL.iter().map(|r| checks::check_omega_relation(*r, &spec)));
                v
            }
            Some("vanishing") => vec![checks::check_vanishing(spec.max_len, spec.mode_window)],
            Some("grading") => vec![checks::check_omega_grading(&spec)],
            Some(r) => vec![checks::check_omega_relation(OmegaRelation::from_name(r).ok_or_else(|| unknown(r))?, &spec)],
        },
        Group::Kashiwara => {
            let mut all = checks::check_kashiwara_relations(&spec);
            all.extend(checks::check_alpha_bar(&spec));
            all.push(checks::check_quotient(&spec));
            if rel == Some("mixed-literal") || rel == Some("mixed_literal") {
                all.push(checks::check_mixed_literal(&spec));
            }
            select(all, rel, "kashiwara.").ok_or_else(|| unknown(rel.unwrap_or("")))?
        }
        Group::Pbw => {
            let all = vec![
                checks::check_confluence(&spec),
                checks::check_idempotence(&spec),
                checks::check_associativity(&spec),
            ];
            select(all, rel, "pbw.").ok_or_else(|| unknown(rel.unwrap_or("")))?
        }
        Group::Form => {
            let mut all = checks::check_form(&spec);
            all.push(checks::check_length_one_pairing(spec.mode_window));
            all.push(checks::check_gram_probes());
            select(all, rel, "form.").ok_or_else(|| unknown(rel.unwrap_or("")))?
        }
    };
    let group = match args.suite {
        Group::Pbw => "pbw",
        Group::Omega => "omega",
        Group::Kashiwara => "kashiwara",
        Group::Form => "form",
    };
    Ok(SuiteReport {
        suite: match rel {
            Some(r) => format!("check:{group}:{r}"),
            None => format!("check:{group}"),
        },
        seed: cfg.seed,
        checks,
    })
}

fn select(all: Vec<CheckReport>, rel: Option<&str>, prefix: &str) -> Option<Vec<CheckReport>> {
    match rel {
        None => Some(all),
        Some(r) => {
            let name = format!("{prefix}{}", r.replace('-', "_"));
            let hit: Vec<_> = all.into_iter().filter(|c| c.name == name).collect();
            (!hit.is_empty()).then_some(hit)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(cli.format, &out);
            match out {
                Output::Suite(r) if !r.passed() => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
