use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logsine::bell::bell_standard;
use logsine::binomderiv::{binom_deriv, DerivSpec};
use logsine::logsine::{
    closed_form, ls_general_z, ls_quadrature, ls_value_with, Angle, IntegralForm, IntegralSpec,
    ZPoint,
};
use logsine::numerics::NumericConfig;
use logsine::verify::{self, Status};
use logsine::{Error, Generator, Rational, SymbolicValue};

mod format;

use format::{number, significant};

#[derive(Parser, Debug)]
#[command(
    name = "logsine",
    version,
    about = "Generalized log-sine integrals, exactly and numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Absolute tolerance for the numeric paths.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,
    /// Term budget for series summation.
    #[arg(long, global = true, value_name = "INT")]
    max_terms: Option<u64>,
    /// Significant digits in numeric output (1..=15).
    #[arg(long, global = true, value_name = "INT", default_value_t = 15,
          value_parser = clap::value_parser!(u8).range(1..=15))]
    digits: u8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    /// ∫₀ᶻ xⁿ logᵖ(sin x) dx
    Plain,
    /// Ls_{p+n+1}^{(n)}(z) = −∫₀ᶻ xⁿ logᵖ|2 sin(x/2)| dx
    Ls,
}

impl From<Form> for IntegralForm {
    fn from(f: Form) -> Self {
        match f {
            Form::Plain => IntegralForm::PlainLogSin,
            Form::Ls => IntegralForm::LsNormalized,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact value of ∫₀ᶻ xⁿ logᵖ(sin x) dx (or the Ls form) at z = pi/2, pi.
    ClosedForm {
        #[arg(long)]
        z: Angle,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "plain")]
        form: Form,
    },
    /// Quadrature value of the same integrals at any z.
    Numeric {
        #[arg(long)]
        z: Angle,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "plain")]
        form: Form,
    },
    /// Ls_{p+n+1}^{(n)}(theta): exact at pi and 2pi, series for n = 0, quadrature otherwise.
    Ls {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long)]
        theta: Angle,
    },
    /// d^p/dm^p binom(2m, m+k) at m = 0, optionally divided by 4^m.
    BinomDeriv {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        scaled: bool,
    },
    /// Complete Bell polynomial B_n(s_1, ..., s_n) of a comma-separated rational sequence.
    Bell {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seq: Vec<Rational>,
    },
    /// Numeric value of a basis constant: pi, log2, zeta3, zeta5, ..., zb1_3, zb1_5, ...
    Constant { name: String },
    /// Rebuild every displayed identity and check it against the numeric oracles.
    VerifyPaper {
        /// A group (sec2, sec3, sec4, lemmas, fsin, lsz) or an id prefix.
        #[arg(long)]
        filter: Option<String>,
    },
}

/// One computed quantity, printed as a text block or a JSON object.
struct Outcome {
    id: String,
    exact: Option<SymbolicValue>,
    numeric: f64,
    abs_err: Option<f64>,
    ok: bool,
    extra: Vec<(String, String)>,
}

impl Outcome {
    fn new(id: String, numeric: f64) -> Self {
        Outcome {
            id,
            exact: None,
            numeric,
            abs_err: None,
            ok: true,
            extra: Vec::new(),
        }
    }

    fn json(&self, digits: u8) -> Value {
        let mut v = json!({ "id": self.id });
        if let Some(e) = &self.exact {
            v["exact"] = json!(e.to_string());
        }
        v["numeric"] = number(self.numeric, digits);
        if let Some(e) = self.abs_err {
            v["abs_err"] = json!(e);
        }
        v["status"] = json!(if self.ok { "pass" } else { "fail" });
        v
    }

    fn text(&self, digits: u8) -> String {
        let mut out = String::new();
        if let Some(e) = &self.exact {
            out += &format!("{e}\n");
        }
        out += &format!("  = {}", significant(self.numeric, digits));
        if let Some(e) = self.abs_err {
            out += &format!("  (error {e:.1e})");
        }
        out.push('\n');
        for (k, v) in &self.extra {
            out += &format!("  {k}: {v}\n");
        }
        if !self.ok {
            out += "  tolerance not met\n";
        }
        out
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain(_) | Error::Contract(_) | Error::Parse(_) | Error::Unsupported(_)
    )
}

fn config(cli: &Cli) -> Result<NumericConfig, Error> {
    let mut cfg = NumericConfig::default();
    if let Some(t) = cli.tol {
        cfg.target_abs_tol = t;
    }
    if let Some(m) = cli.max_terms {
        cfg.max_series_terms = m;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn integral_spec(z: Angle, n: u32, p: u32, form: Form) -> Result<IntegralSpec, Error> {
    IntegralSpec::new(n, p, ZPoint::from(z), form.into())
}

fn integral_id(kind: &str, spec: &IntegralSpec) -> String {
    let f = match spec.form {
        IntegralForm::PlainLogSin => "xlogsin",
        IntegralForm::LsNormalized => "ls",
    };
    format!("{kind}.{f}(n={},p={},z={})", spec.n, spec.p, spec.z)
}

fn run(cli: &Cli, cfg: &NumericConfig) -> Result<Vec<Outcome>, Error> {
    let tol = cfg.target_abs_tol;
    let out = match &cli.command {
        Command::ClosedForm { z, n, p, form } => {
            let spec = integral_spec(*z, *n, *p, *form)?;
            let r = closed_form(&spec, cfg)?;
            let mut o = Outcome::new(integral_id("closed-form", &spec), r.numeric(cfg)?);
            o.exact = Some(r.value.clone());
            if let Some(res) = &r.residual {
                o.abs_err = Some(res.error);
                o.ok = res.error <= tol;
                o.extra.push((
                    "exact part only; numeric residual".into(),
                    significant(res.value, cli.digits),
                ));
                o.extra.push(("unresolved".into(), res.reason.clone()));
            }
            vec![o]
        }
        Command::Numeric { z, n, p, form } => {
            let spec = integral_spec(*z, *n, *p, *form)?;
            let (v, e) = spec.quadrature(cfg)?;
            let mut o = Outcome::new(integral_id("numeric", &spec), v);
            o.abs_err = Some(e);
            o.ok = e <= tol;
            vec![o]
        }
        Command::Ls { p, n, theta } => {
            let id = format!("ls(p={p},n={n},theta={theta})");
            let zp = ZPoint::from(*theta);
            let mut o = match zp {
                ZPoint::Pi | ZPoint::TwoPi => {
                    let r = ls_value_with(*p, *n, zp, cfg)?;
                    let mut o = Outcome::new(id, r.numeric(cfg)?);
                    o.exact = Some(r.value.clone());
                    if let Some(res) = &r.residual {
                        o.abs_err = Some(res.error);
                        o.extra.push((
                            "exact part only; numeric residual".into(),
                            significant(res.value, cli.digits),
                        ));
                    }
                    o
                }
                _ if *n == 0 && *p >= 1 => {
                    let r = ls_general_z(*p, *theta, cfg)?;
                    let mut o = Outcome::new(id, r.value);
                    o.abs_err = Some(r.error);
                    if let Some(b) = &r.bell_term {
                        o.extra.push(("Bell term".into(), b.to_string()));
                    }
                    o.extra
                        .push(("k-series".into(), significant(r.series, cli.digits)));
                    o
                }
                _ => {
                    let (v, e) = ls_quadrature(*p, *n, theta.radians(), cfg)?;
                    let mut o = Outcome::new(id, v);
                    o.abs_err = Some(e);
                    o
                }
            };
            o.ok = o.abs_err.is_none_or(|e| e <= tol);
            vec![o]
        }
        Command::BinomDeriv { p, k, scaled } => {
            let v = binom_deriv(DerivSpec::new(*p, *k, *scaled))?;
            let what = if *scaled {
                "binom(2m,m+k)/4^m"
            } else {
                "binom(2m,m+k)"
            };
            let mut o = Outcome::new(
                format!("binom-deriv(p={p},k={k},{what})"),
                v.eval_numeric(cfg)?,
            );
            o.exact = Some(v);
            vec![o]
        }
        Command::Bell { seq } => {
            let b = bell_standard(seq);
            let num = num_traits::ToPrimitive::to_f64(&b).unwrap_or(f64::NAN);
            let mut o = Outcome::new(format!("bell(n={})", seq.len()), num);
            o.exact = Some(SymbolicValue::from_rational(b));
            vec![o]
        }
        Command::Constant { name } => {
            let g = Generator::from_name(name)?;
            let v = SymbolicValue::generator(g).eval_numeric(cfg)?;
            vec![Outcome::new(format!("constant({name})"), v)]
        }
        Command::VerifyPaper { filter } => verify::run(filter.as_deref(), cfg)?
            .into_iter()
            .map(|r| {
                let mut o = Outcome::new(r.id, r.numeric);
                o.exact = r.exact;
                o.abs_err = r.abs_err;
                o.ok = r.status == Status::Pass;
                if let Some(q) = r.reference {
                    o.extra.push(("oracle".into(), significant(q, cli.digits)));
                }
                if let Some(n) = r.note {
                    o.extra.push(("note".into(), n));
                }
                o
            })
            .collect(),
    };
    Ok(out)
}

fn print_report(cli: &Cli, outcomes: &[Outcome]) {
    let verify = matches!(cli.command, Command::VerifyPaper { .. });
    if cli.json {
        let vals: Vec<Value> = outcomes.iter().map(|o| o.json(cli.digits)).collect();
        let v = if verify {
            Value::Array(vals)
        } else {
            vals.into_iter().next().unwrap_or(Value::Null)
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
        return;
    }
    if !verify {
        for o in outcomes {
            print!("{}", o.text(cli.digits));
        }
        return;
    }
    for o in outcomes {
        let status = if o.ok { "pass" } else { "FAIL" };
        let err = o
            .abs_err
            .map_or_else(|| "-".to_string(), |e| format!("{e:.1e}"));
        println!(
            "{status:4} {:<36} {:>24} |d| {err}",
            o.id,
            significant(o.numeric, cli.digits)
        );
        if let Some(e) = &o.exact {
            println!("     {e}");
        }
        for (k, v) in &o.extra {
            if k == "note" {
                println!("     {k}: {v}");
            }
        }
    }
    let passed = outcomes.iter().filter(|o| o.ok).count();
    println!("{passed}/{} identities passed", outcomes.len());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = config(&cli).and_then(|cfg| run(&cli, &cfg));
    match result {
        Ok(outcomes) => {
            print_report(&cli, &outcomes);
            if outcomes.iter().all(|o| o.ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
