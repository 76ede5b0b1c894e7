//! The identity matrix behind `verify-paper`: every displayed closed form
//! rebuilt by the symbolic pipeline and checked against an independent
//! numeric oracle.

use std::f64::consts::PI;
use std::fmt;

use crate::bell::{bell_nu_closed_form, bell_x, nu_sequence};
use crate::binomderiv::{
    delta_numeric, rho, rho_closed_form, shifted_binom_deriv, taylor_oracle, DerivSpec,
};
use crate::error::{Error, Result};
use crate::logsine::{
    f_exact, f_real_m, ls_general_z, ls_quadrature, ls_value_with, xlogsin_closed_form_with,
    xlogsin_quadrature, Angle, ClosedFormResult, ZPoint,
};
use crate::numerics::{richardson_derivative_step, NumericConfig};
use crate::specialfn::{harmonic, polygamma_int};
use crate::symbolic::{int, rat, Rational, SymbolicValue};

/// Group tags accepted by [`run`].
pub const GROUPS: &[&str] = &["sec2", "sec3", "sec4", "lemmas", "fsin", "lsz"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub id: String,
    pub exact: Option<SymbolicValue>,
    pub numeric: f64,
    /// The oracle value the row was compared against.
    pub reference: Option<f64>,
    pub abs_err: Option<f64>,
    pub tol: f64,
    pub status: Status,
    pub note: Option<String>,
}

impl Row {
    fn failed(id: String, err: Error) -> Self {
        Row {
            id,
            exact: None,
            numeric: f64::NAN,
            reference: None,
            abs_err: None,
            tol: 0.0,
            status: Status::Fail,
            note: Some(err.to_string()),
        }
    }

    fn numeric_check(
        id: String,
        exact: Option<SymbolicValue>,
        value: f64,
        reference: f64,
        tol: f64,
    ) -> Self {
        let err = (value - reference).abs();
        Row {
            id,
            exact,
            numeric: value,
            reference: Some(reference),
            abs_err: Some(err),
            tol,
            status: if err <= tol {
                Status::Pass
            } else {
                Status::Fail
            },
            note: None,
        }
    }
}

/// A displayed value written as `prefactor · (body)` in the text syntax.
#[derive(Debug, Clone, Copy)]
pub struct Displayed {
    pub prefactor: &'static str,
    pub body: &'static str,
}

impl Displayed {
    const fn plain(body: &'static str) -> Self {
        Displayed {
            prefactor: "1",
            body,
        }
    }

    pub fn value(&self) -> Result<SymbolicValue> {
        let pre: SymbolicValue = self.prefactor.parse()?;
        let body: SymbolicValue = self.body.parse()?;
        Ok(pre * body)
    }
}

/// Compares a computed closed form with the displayed one and with a
/// quadrature value.
pub fn closed_form_row(
    id: String,
    computed: Result<ClosedFormResult>,
    displayed: Displayed,
    quadrature: Result<(f64, f64)>,
    tol: f64,
    cfg: &NumericConfig,
) -> Row {
    let run = || -> Result<Row> {
        let r = computed?;
        let shown = displayed.value()?;
        let v = r.numeric(cfg)?;
        let (q, _) = quadrature?;
        let mut row = Row::numeric_check(id.clone(), Some(r.value.clone()), v, q, tol);
        if !r.exact {
            row.status = Status::Fail;
            row.note = Some("closed form is not exact".into());
        } else if r.value != shown {
            row.status = Status::Fail;
            let sv = shown.eval_numeric(cfg)?;
            row.note = Some(format!(
                "differs from the displayed value {shown} = {sv:.15}"
            ));
        }
        Ok(row)
    };
    run().unwrap_or_else(|e| Row::failed(id, e))
}

const SEC2_INTEGRALS: [(u32, u32, Displayed); 5] = [
    (1, 2, Displayed::plain("1/24*pi^4 + 1/2*pi^2*log2^2")),
    (
        2,
        2,
        Displayed::plain("13/360*pi^5 + pi*zeta3*log2 + 1/3*pi^3*log2^2"),
    ),
    (
        3,
        2,
        Displayed::plain("1/30*pi^6 + 3/2*pi^2*zeta3*log2 + 1/4*pi^4*log2^2"),
    ),
    (
        4,
        2,
        Displayed::plain(
            "37/1260*pi^7 + 2*pi^3*zeta3*log2 - 3*pi*zeta5*log2 + 3/2*pi*zeta3^2 + 1/5*pi^5*log2^2",
        ),
    ),
    (
        1,
        3,
        Displayed::plain("3/8*pi^2*zeta3 - 1/16*pi^4*log2 - 1/4*pi^2*log2^3"),
    ),
];

/// (p, n) of Ls_{p+n+1}^{(n)}(2π).
const SEC2_LS: [(u32, u32, Displayed); 6] = [
    (2, 1, Displayed::plain("-1/6*pi^4")),
    (3, 1, Displayed::plain("3*pi^2*zeta3")),
    (2, 2, Displayed::plain("-13/45*pi^5")),
    (2, 3, Displayed::plain("-8/15*pi^6")),
    (2, 4, Displayed::plain("-296/315*pi^7 - 48*pi*zeta3^2")),
    (2, 5, Displayed::plain("-100/63*pi^8 - 240*pi^2*zeta3^2")),
];

const SEC3_INTEGRALS: [(u32, u32, Displayed); 3] = [
    (
        1,
        2,
        Displayed {
            prefactor: "1/8",
            body: "11/360*pi^4 + pi^2*log2^2 - 7*zeta3*log2 + 4*zb1_3",
        },
    ),
    (
        2,
        2,
        Displayed {
            prefactor: "1/24*pi",
            body: "1/40*pi^4 + pi^2*log2^2 - 9*zeta3*log2 + 12*zb1_3",
        },
    ),
    (
        3,
        2,
        Displayed {
            prefactor: "1/64",
            body: "23/420*pi^6 + pi^4*log2^2 + 24*pi^2*zb1_3 - 48*zb1_5 - 24*zeta3^2 \
                   - 18*pi^2*zeta3*log2 + 93*zeta5*log2",
        },
    ),
];

/// (p, n) of Ls_{p+n+1}^{(n)}(π).
const SEC3_LS: [(u32, u32, Displayed); 4] = [
    (2, 1, Displayed::plain("-11/720*pi^4 - 2*zb1_3")),
    (2, 2, Displayed::plain("-1/120*pi^5 - 4*pi*zb1_3")),
    (
        2,
        3,
        Displayed::plain("-23/1680*pi^6 - 6*pi^2*zb1_3 + 6*zeta3^2 + 12*zb1_5"),
    ),
    (
        2,
        4,
        Displayed::plain("-1/420*pi^7 - 8*pi^3*zb1_3 + 48*pi*zb1_5"),
    ),
];

fn integral_rows(
    tag: &str,
    z: ZPoint,
    table: &[(u32, u32, Displayed)],
    tol: f64,
    cfg: &NumericConfig,
) -> Vec<Row> {
    table
        .iter()
        .map(|&(n, p, shown)| {
            let quad = z.radians().and_then(|zr| xlogsin_quadrature(n, p, zr, cfg));
            closed_form_row(
                format!("{tag}.int.x{n}.log{p}"),
                xlogsin_closed_form_with(n, p, z, cfg),
                shown,
                quad,
                tol,
                cfg,
            )
        })
        .collect()
}

fn ls_rows(
    tag: &str,
    theta: ZPoint,
    table: &[(u32, u32, Displayed)],
    tol: f64,
    cfg: &NumericConfig,
) -> Vec<Row> {
    table
        .iter()
        .map(|&(p, n, shown)| {
            let quad = theta.radians().and_then(|t| ls_quadrature(p, n, t, cfg));
            closed_form_row(
                format!("{tag}.ls.{}.{n}", p + n + 1),
                ls_value_with(p, n, theta, cfg),
                shown,
                quad,
                tol,
                cfg,
            )
        })
        .collect()
}

fn sec2(cfg: &NumericConfig) -> Vec<Row> {
    let mut rows = integral_rows("sec2", ZPoint::Pi, &SEC2_INTEGRALS, 1e-9, cfg);
    rows.extend(ls_rows("sec2", ZPoint::TwoPi, &SEC2_LS, 1e-8, cfg));
    rows
}

fn sec3(cfg: &NumericConfig) -> Vec<Row> {
    let mut rows = integral_rows("sec3", ZPoint::HalfPi, &SEC3_INTEGRALS, 1e-8, cfg);
    rows.extend(ls_rows("sec3", ZPoint::Pi, &SEC3_LS, 1e-8, cfg));
    rows
}

/// The displayed d^p/dm^p binom(2m, m+k) at m = 0 for p ≤ 4, written with
/// ξ = 2H_k − 1/k.
pub fn displayed_shifted_deriv(p: u32, k: u64) -> Result<SymbolicValue> {
    let ki = k as i64;
    let sk = if k.is_multiple_of(2) { 1 } else { -1 };
    let xi = SymbolicValue::from_rational(harmonic(k, 1) * int(2) - rat(1, ki));
    let inv2 = SymbolicValue::from_rational(rat(1, ki * ki));
    let psi11 = polygamma_int(1, 1)?.value().clone();
    Ok(match p {
        1 => SymbolicValue::from_rational(rat(-sk, ki)),
        2 => xi.scale(&rat(2 * sk, ki)),
        3 => (xi.pow(2) + inv2 + psi11.scale_int(2)).scale(&rat(-3 * sk, ki)),
        4 => {
            let psi2k = polygamma_int(2, ki)?.value().clone();
            let psi21 = polygamma_int(2, 1)?.value().clone();
            let inner = xi.pow(3)
                + (xi * (psi11.scale_int(2) + inv2)).scale_int(3)
                + psi2k.scale_int(2)
                + SymbolicValue::from_rational(rat(2, ki * ki * ki))
                - psi21.scale_int(8);
            inner.scale(&rat(4 * sk, ki))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no displayed formula for p = {p}"
            )))
        }
    })
}

fn sec4(cfg: &NumericConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for p in 1..=5u32 {
        for k in 1..=6u64 {
            let id = format!("sec4.deriv.p{p}.k{k}");
            let run = || -> Result<Row> {
                let spec = DerivSpec::new(p, k, false);
                let exact = shifted_binom_deriv(spec)?;
                let v = exact.eval_numeric(cfg)?;
                let oracle = taylor_oracle(spec, 6, cfg)?;
                let mut row = Row::numeric_check(id.clone(), Some(exact.clone()), v, oracle, 1e-8);
                if p <= 4 && exact != displayed_shifted_deriv(p, k)? {
                    row.status = Status::Fail;
                    row.note = Some("differs from the displayed formula".into());
                }
                Ok(row)
            };
            rows.push(run().unwrap_or_else(|e| Row::failed(id.clone(), e)));
        }
    }
    rows
}

fn lemmas(cfg: &NumericConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for (m0, k) in [(0.25, 0u64), (1.5, 1), (2.5, 3)] {
        for j in 1..=3 {
            let id = format!("lemmas.delta_shift.j{j}.k{k}.m{m0}");
            let run = || -> Result<Row> {
                let d = richardson_derivative_step(
                    |m| delta_numeric(j, m, k).unwrap_or(f64::NAN),
                    m0,
                    1,
                    0.05,
                    cfg,
                )?;
                let next = delta_numeric(j + 1, m0, k)?;
                Ok(Row::numeric_check(id.clone(), None, d.value, -next, 1e-6))
            };
            rows.push(run().unwrap_or_else(|e| Row::failed(id.clone(), e)));
        }
    }
    for n in 1..=6u32 {
        for k in [0.1, 0.3, 0.45] {
            let id = format!("lemmas.bell_nu.n{n}.k{k}");
            let run = || -> Result<Row> {
                let lhs = bell_x(&nu_sequence(n as usize, k)?);
                let rhs = bell_nu_closed_form(n, k)?;
                Ok(Row::numeric_check(
                    id.clone(),
                    None,
                    lhs,
                    rhs,
                    1e-6 * PI.powi(n as i32),
                ))
            };
            rows.push(run().unwrap_or_else(|e| Row::failed(id.clone(), e)));
        }
    }
    for n in 1..=6u32 {
        let id = format!("lemmas.rho.n{n}");
        let run = || -> Result<Row> {
            let r = rho(n)?;
            let c = rho_closed_form(n)?;
            let v = r.eval_numeric(cfg)?;
            let mut row =
                Row::numeric_check(id.clone(), Some(r.clone()), v, c.eval_numeric(cfg)?, 0.0);
            row.abs_err = Some(0.0);
            row.status = if r == c { Status::Pass } else { Status::Fail };
            Ok(row)
        };
        rows.push(run().unwrap_or_else(|e| Row::failed(id.clone(), e)));
    }
    rows
}

fn fsin(cfg: &NumericConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for z in [ZPoint::HalfPi, ZPoint::Pi] {
        for n in 0..=5u32 {
            for m in 0..=5u32 {
                let id = format!("fsin.{z}.n{n}.m{m}");
                let run = || -> Result<Row> {
                    let zr = z.radians()?;
                    let exact = f_exact(n, m, z)?;
                    let v = exact.eval_numeric(cfg)?;
                    let q = f_real_m(n, m as f64, zr, cfg)?;
                    let mut row = Row::numeric_check(id.clone(), Some(exact.clone()), v, q, 1e-10);
                    if m == 0 {
                        let zs = z.symbolic().expect("rational multiple of pi");
                        if exact
                            != zs
                                .pow(n + 1)
                                .scale(&Rational::new(1.into(), (n + 1).into()))
                        {
                            row.status = Status::Fail;
                            row.note = Some("m = 0 value is not z^(n+1)/(n+1)".into());
                        }
                    }
                    Ok(row)
                };
                rows.push(run().unwrap_or_else(|e| Row::failed(id.clone(), e)));
            }
        }
    }
    rows
}

fn lsz(cfg: &NumericConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for (a, b) in [(1, 2), (1, 1)] {
        for p in 1..=3u32 {
            let id = format!("lsz.p{p}.{}", Angle::RationalPi { num: a, den: b });
            let run = || -> Result<Row> {
                let z = Angle::rational_pi(a, b)?;
                let r = ls_general_z(p, z, cfg)?;
                let (q, _) = ls_quadrature(p, 0, z.radians(), cfg)?;
                Ok(Row::numeric_check(
                    id.clone(),
                    r.bell_term,
                    r.value,
                    q,
                    1e-7,
                ))
            };
            rows.push(run().unwrap_or_else(|e| Row::failed(id.clone(), e)));
        }
    }
    rows
}

fn group(tag: &str, cfg: &NumericConfig) -> Vec<Row> {
    match tag {
        "sec2" => sec2(cfg),
        "sec3" => sec3(cfg),
        "sec4" => sec4(cfg),
        "lemmas" => lemmas(cfg),
        "fsin" => fsin(cfg),
        "lsz" => lsz(cfg),
        _ => Vec::new(),
    }
}

/// Runs the groups selected by `filter` (a group tag or an id prefix; all
/// groups when `None`). Groups run on separate threads; rows come back
/// sorted by id.
pub fn run(filter: Option<&str>, cfg: &NumericConfig) -> Result<Vec<Row>> {
    cfg.validate()?;
    let tags: Vec<&str> = match filter {
        None => GROUPS.to_vec(),
        Some(f) => GROUPS
            .iter()
            .copied()
            .filter(|g| f == *g || f.starts_with(&format!("{g}.")))
            .collect(),
    };
    if tags.is_empty() {
        return Err(Error::Contract(format!(
            "unknown filter {:?}; groups are {}",
            filter.unwrap_or_default(),
            GROUPS.join(", ")
        )));
    }
    let mut rows: Vec<Row> = std::thread::scope(|s| {
        let handles: Vec<_> = tags
            .iter()
            .map(|t| s.spawn(move || group(t, cfg)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    if let Some(f) = filter {
        rows.retain(|r| r.id == f || r.id.starts_with(f));
    }
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(rows)
}
