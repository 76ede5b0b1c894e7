use num_traits::Signed;
use std::f64::consts::PI;

use logsine::bell::{
    bell_binomial_convolution, bell_nu_closed_form, bell_standard, bell_x, nu_sequence,
};
use logsine::binomderiv::{
    central_binom_deriv, rho, rho_closed_form, shifted_binom_deriv, taylor_oracle, DerivSpec,
};
use logsine::logsine::{
    f_exact, ls_general_z, ls_quadrature, ls_value, xlogsin_closed_form, xlogsin_quadrature, Angle,
    ClosedFormResult, ZPoint,
};
use logsine::numerics::{
    cot_derivative, polygamma_real, tanh_sinh_quadrature, NumericConfig, EULER_GAMMA,
};
use logsine::specialfn::{alt_euler_sum_H, euler_sum_H, harmonic, polygamma_int};
use logsine::symbolic::{int, rat};
use logsine::{Rational, SymbolicValue};

struct Report {
    criterion: u32,
    checks: usize,
    failures: Vec<String>,
}

impl Report {
    fn new(criterion: u32) -> Self {
        Report {
            criterion,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: impl AsRef<str>, ok: bool, detail: impl AsRef<str>) {
        self.checks += 1;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {tag} {}: {}",
            self.criterion,
            name.as_ref(),
            detail.as_ref()
        );
        if !ok {
            self.failures.push(name.as_ref().to_string());
        }
    }

    fn numeric(&mut self, name: impl AsRef<str>, value: f64, reference: f64, tol: f64) {
        let err = (value - reference).abs();
        self.check(
            name,
            err <= tol,
            format!("{value:.15} vs {reference:.15}, |d| = {err:.2e} (tol {tol:.0e})"),
        );
    }

    fn finish(self) {
        let tag = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {:>2} {tag}: {} of {} checks passed",
            self.criterion,
            self.checks - self.failures.len(),
            self.checks
        );
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.criterion,
            self.failures
        );
    }
}

fn cfg() -> NumericConfig {
    NumericConfig::default()
}

fn sym(s: &str) -> SymbolicValue {
    s.parse().expect("valid expression")
}

fn symbolic_and_numeric(
    rep: &mut Report,
    name: &str,
    r: logsine::Result<ClosedFormResult>,
    shown: SymbolicValue,
    quad: logsine::Result<(f64, f64)>,
    tol: f64,
) {
    let r = match r {
        Ok(r) => r,
        Err(e) => return rep.check(name, false, e.to_string()),
    };
    rep.check(
        format!("{name} symbolic"),
        r.exact && r.value == shown,
        format!("computed {}, displayed {shown}", r.value),
    );
    match (r.numeric(&cfg()), quad) {
        (Ok(v), Ok((q, _))) => rep.numeric(format!("{name} quadrature"), v, q, tol),
        (a, b) => rep.check(format!("{name} quadrature"), false, format!("{a:?} {b:?}")),
    }
}

#[test]
fn criterion_01_integrals_at_pi() {
    let mut rep = Report::new(1);
    let table = [
        (1, 2, "pi^4/24 + pi^2/2*log2^2"),
        (2, 2, "13*pi^5/360 + pi*zeta3*log2 + pi^3/3*log2^2"),
        (3, 2, "pi^6/30 + 3/2*pi^2*zeta3*log2 + pi^4/4*log2^2"),
        (
            4,
            2,
            "37*pi^7/1260 + 2*pi^3*zeta3*log2 - 3*pi*zeta5*log2 + 3/2*pi*zeta3^2 + pi^5/5*log2^2",
        ),
        (1, 3, "3/8*pi^2*zeta3 - pi^4/16*log2 - pi^2/4*log2^3"),
    ];
    for (n, p, shown) in table {
        symbolic_and_numeric(
            &mut rep,
            &format!("int_0^pi x^{n} log^{p}(sin x)"),
            xlogsin_closed_form(n, p, ZPoint::Pi),
            sym(shown),
            xlogsin_quadrature(n, p, PI, &cfg()),
            1e-9,
        );
    }
    rep.finish();
}

#[test]
fn criterion_02_ls_at_two_pi() {
    let mut rep = Report::new(2);
    let table = [
        (2, 1, "-pi^4/6"),
        (3, 1, "3*pi^2*zeta3"),
        (2, 2, "-13*pi^5/45"),
        (2, 3, "-8*pi^6/15"),
        (2, 4, "-296*pi^7/315 - 48*pi*zeta3^2"),
        (2, 5, "-100*pi^8/63 - 240*pi^2*zeta3^2"),
    ];
    for (p, n, shown) in table {
        symbolic_and_numeric(
            &mut rep,
            &format!("Ls_{}^({n})(2pi)", p + n + 1),
            ls_value(p, n, ZPoint::TwoPi),
            sym(shown),
            ls_quadrature(p, n, 2.0 * PI, &cfg()),
            1e-8,
        );
    }
    rep.finish();
}

#[test]
fn criterion_03_integrals_at_half_pi() {
    let mut rep = Report::new(3);
    let table = [
        (1, sym("1/8") * sym("11*pi^4/360 + pi^2*log2^2 - 7*zeta3*log2 + 4*zb1_3")),
        (2, sym("pi/24") * sym("pi^4/40 + pi^2*log2^2 - 9*zeta3*log2 + 12*zb1_3")),
        (
            3,
            sym("1/64")
                * sym("23*pi^6/420 + pi^4*log2^2 + 24*pi^2*zb1_3 - 48*zb1_5 - 24*zeta3^2 - 18*pi^2*zeta3*log2 + 93*zeta5*log2"),
        ),
    ];
    for (n, shown) in table {
        symbolic_and_numeric(
            &mut rep,
            &format!("int_0^(pi/2) x^{n} log^2(sin x)"),
            xlogsin_closed_form(n, 2, ZPoint::HalfPi),
            shown,
            xlogsin_quadrature(n, 2, PI / 2.0, &cfg()),
            1e-8,
        );
    }
    rep.finish();
}

#[test]
fn criterion_04_ls_at_pi() {
    let mut rep = Report::new(4);
    let table = [
        (1, "-11*pi^4/720 - 2*zb1_3"),
        (2, "-pi^5/120 - 4*pi*zb1_3"),
        (3, "-23*pi^6/1680 - 6*pi^2*zb1_3 + 6*zeta3^2 + 12*zb1_5"),
        (4, "-pi^7/420 - 8*pi^3*zb1_3 + 48*pi*zb1_5"),
    ];
    for (n, shown) in table {
        symbolic_and_numeric(
            &mut rep,
            &format!("Ls_{}^({n})(pi)", n + 3),
            ls_value(2, n, ZPoint::Pi),
            sym(shown),
            ls_quadrature(2, n, PI, &cfg()),
            1e-8,
        );
    }
    rep.finish();
}

#[test]
fn criterion_05_shifted_binomial_derivatives() {
    let mut rep = Report::new(5);
    let psi1 = sym("pi^2/6");
    let psi2_1 = sym("-2*zeta3");
    for k in 1..=6u64 {
        let ki = k as i64;
        let sk = if k % 2 == 0 { 1 } else { -1 };
        let xi = SymbolicValue::from_rational(harmonic(k, 1) * int(2) - rat(1, ki));
        let inv2 = SymbolicValue::from_rational(rat(1, ki * ki));
        // ψ''(k) = −2(ζ(3) − H_{k−1}^{(3)})
        let psi2_k = psi2_1.clone() + SymbolicValue::from_rational(harmonic(k - 1, 3) * int(2));
        let expected = [
            SymbolicValue::from_rational(rat(-sk, ki)),
            xi.scale(&rat(2 * sk, ki)),
            (xi.pow(2) + inv2.clone() + psi1.scale_int(2)).scale(&rat(-3 * sk, ki)),
            (xi.pow(3)
                + (&xi * &(psi1.scale_int(2) + inv2)).scale_int(3)
                + psi2_k.scale_int(2)
                + SymbolicValue::from_rational(rat(2, ki * ki * ki))
                - psi2_1.scale_int(8))
            .scale(&rat(4 * sk, ki)),
        ];
        for (i, e) in expected.iter().enumerate() {
            let p = i as u32 + 1;
            match shifted_binom_deriv(DerivSpec::new(p, k, false)) {
                Ok(v) => rep.check(
                    format!("d^{p}/dm^{p} binom(2m,m+{k}) symbolic"),
                    &v == e,
                    format!("{v}"),
                ),
                Err(err) => rep.check(
                    format!("d^{p}/dm^{p} binom(2m,m+{k}) symbolic"),
                    false,
                    err.to_string(),
                ),
            }
        }
    }
    for p in 1..=5u32 {
        for k in 0..=6u64 {
            for scaled in [false, true] {
                let spec = DerivSpec::new(p, k, scaled);
                let exact = if k == 0 {
                    central_binom_deriv(spec)
                } else {
                    shifted_binom_deriv(spec)
                };
                let name = format!("p={p} k={k} scaled={scaled} Taylor oracle");
                match (
                    exact.and_then(|v| v.eval_numeric(&cfg())),
                    taylor_oracle(spec, 6, &cfg()),
                ) {
                    (Ok(v), Ok(o)) => rep.numeric(name, v, o, 1e-8 * (1.0 + o.abs())),
                    (a, b) => rep.check(name, false, format!("{a:?} {b:?}")),
                }
            }
        }
    }
    rep.finish();
}

#[test]
fn criterion_06_bell_over_cot_derivatives() {
    let mut rep = Report::new(6);
    for n in 0..=6u32 {
        for k in [0.1, 0.3, 0.45] {
            let lhs = bell_x(&nu_sequence(n as usize, k).unwrap());
            let rhs = bell_nu_closed_form(n, k).unwrap();
            rep.numeric(format!("n={n} k={k}"), lhs, rhs, 1e-6 * PI.powi(n as i32));
        }
    }
    rep.finish();
}

#[test]
fn criterion_07_rho_recursion() {
    let mut rep = Report::new(7);
    for n in 1..=6u32 {
        let r = rho(n).unwrap();
        let c = rho_closed_form(n).unwrap();
        // 2ψ^{(2n−1)}(1) = 2(2n−1)! ζ(2n), with ζ(2n) from the Bernoulli numbers
        let direct = {
            let b = logsine::specialfn::bernoulli(2 * n);
            let f = |m: u32| Rational::from_integer(logsine::specialfn::factorial(m));
            let z2n = b.abs() * Rational::from_integer(num_bigint::BigInt::from(1) << (2 * n - 1))
                / f(2 * n);
            SymbolicValue::pi_pow(2 * n).scale(&(z2n * f(2 * n - 1) * int(2)))
        };
        rep.check(
            format!("rho_{n}"),
            r == c && r == direct,
            format!("{r} vs {c}"),
        );
    }
    rep.finish();
}

#[test]
fn criterion_08_sine_power_integrals() {
    let mut rep = Report::new(8);
    for z in [ZPoint::HalfPi, ZPoint::Pi] {
        let zr = z.radians().unwrap();
        for n in 0..=5u32 {
            for m in 0..=5u32 {
                let exact = f_exact(n, m, z).unwrap().eval_numeric(&cfg()).unwrap();
                let q = tanh_sinh_quadrature(
                    |x| x.powi(n as i32) * x.sin().powi(2 * m as i32),
                    0.0,
                    zr,
                    &cfg(),
                )
                .unwrap();
                rep.numeric(format!("F({n},{m},{z})"), exact, q, 1e-10);
            }
        }
        for n in 0..=8u32 {
            let v = f_exact(n, 0, z).unwrap();
            let expected = z
                .symbolic()
                .unwrap()
                .pow(n + 1)
                .scale(&rat(1, n as i64 + 1));
            rep.check(
                format!("F({n},0,{z}) = z^{}/{}", n + 1, n + 1),
                v == expected,
                v.to_string(),
            );
        }
    }
    rep.finish();
}

#[test]
fn criterion_09_ls_at_half_pi_from_series() {
    let mut rep = Report::new(9);
    let z = Angle::rational_pi(1, 2).unwrap();
    for p in 1..=3u32 {
        let r = ls_general_z(p, z, &cfg()).unwrap();
        let (q, _) = ls_quadrature(p, 0, PI / 2.0, &cfg()).unwrap();
        rep.numeric(format!("Ls_{}(pi/2)", p + 1), r.value, q, 1e-7);
    }
    rep.finish();
}

#[test]
fn criterion_10_property_suites() {
    let mut rep = Report::new(10);

    // Bell: the x-sequence recursion against the standard recursion, exactly.
    let seq: Vec<Rational> = (1..=10).map(|i| rat(3 * i - 7, i + 1)).collect();
    for n in 0..=10 {
        let a = bell_x(&seq[..n]);
        let b = bell_standard(&seq[..n]);
        rep.check(format!("Bell recursions n={n}"), a == b, a.to_string());
    }
    // B_n(a + b) = Σ C(n,i) B_{n−i}(a) B_i(b), exactly.
    for n in 0..=6usize {
        let a: Vec<Rational> = (0..n as i64).map(|i| rat(i + 1, 2)).collect();
        let b: Vec<Rational> = (0..n as i64).map(|i| rat(1 - 2 * i, 3)).collect();
        let sum: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = bell_binomial_convolution(&a, &b).unwrap();
        rep.check(
            format!("Bell convolution n={n}"),
            lhs == bell_standard(&sum),
            lhs.to_string(),
        );
    }

    // Polygamma: recurrence, reflection, and the exact values at integers.
    for order in 0..=4u32 {
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        let fact: f64 = (1..=order).map(f64::from).product();
        for x in [0.3, 1.7, 5.25] {
            let lhs = polygamma_real(order, x + 1.0).unwrap();
            let rhs = polygamma_real(order, x).unwrap() + sign * fact / x.powi(order as i32 + 1);
            rep.numeric(
                format!("psi^({order}) recurrence x={x}"),
                lhs,
                rhs,
                1e-8 * (1.0 + rhs.abs()),
            );
        }
        for x in [0.15, 0.3, 0.45] {
            let lhs =
                sign * polygamma_real(order, 1.0 - x).unwrap() - polygamma_real(order, x).unwrap();
            let rhs = cot_derivative(order, x).unwrap();
            rep.numeric(
                format!("psi^({order}) reflection x={x}"),
                lhs,
                rhs,
                1e-8 * (1.0 + rhs.abs()),
            );
        }
    }
    rep.numeric(
        "psi(1) = -gamma",
        polygamma_real(0, 1.0).unwrap(),
        -EULER_GAMMA,
        1e-8,
    );
    for order in 1..=4u32 {
        for z in 1..=4i64 {
            let exact = polygamma_int(order, z)
                .unwrap()
                .value()
                .eval_numeric(&cfg())
                .unwrap();
            rep.numeric(
                format!("psi^({order})({z}) exact"),
                exact,
                polygamma_real(order, z as f64).unwrap(),
                1e-8,
            );
        }
    }

    // Euler sums against brute-force partial sums plus an integral tail.
    const N: u64 = 200_000;
    for n in 2..=6u32 {
        let mut h = 0.0;
        let mut plain = 0.0;
        let mut alt = 0.0;
        let mut alt_prev = 0.0;
        for k in 1..=N {
            h += 1.0 / k as f64;
            let t = h / (k as f64).powi(n as i32);
            plain += t;
            alt_prev = alt;
            alt += if k % 2 == 0 { t } else { -t };
        }
        // Σ_{k>N} H_k/k^n ≈ ∫_N^∞ (log x + γ + 1/(2x))/x^n dx
        let nn = N as f64;
        let s = (n - 1) as f64;
        let tail = (nn.ln() + EULER_GAMMA) / (s * nn.powf(s))
            + 1.0 / (s * s * nn.powf(s))
            + 1.0 / (2.0 * n as f64 * nn.powf(n as f64))
            - h / (2.0 * nn.powf(n as f64));
        let exact = euler_sum_H(n).unwrap().eval_numeric(&cfg()).unwrap();
        rep.numeric(format!("sum H_k/k^{n}"), exact, plain + tail, 1e-6);
        if n % 2 == 1 {
            let exact = alt_euler_sum_H(n).unwrap().eval_numeric(&cfg()).unwrap();
            // the mean of consecutive partial sums of an alternating series
            rep.numeric(
                format!("sum (-1)^k H_k/k^{n}"),
                exact,
                0.5 * (alt + alt_prev),
                1e-6,
            );
        }
    }
    rep.finish();
}
