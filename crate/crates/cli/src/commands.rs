//! Command handlers: resolve the field/config/budget, run the library
//! call, shape the result into a renderable document.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use etaq_core::arith::{self, ArithFnK, FnValue};
use etaq_core::expansion::{
    coeff_closed_form, coeff_euler, coeff_general, coeff_special, expand_truncated,
    verify_identity, zeta_closed, zeta_partial, CoeffSource, Family, TruncationBound,
    DEFAULT_BUDGET,
};
use etaq_core::field::FieldSpec;
use etaq_core::poly::{factor, gcd, lcm, parse_poly, MonicPoly, Poly};
use etaq_core::ramanujan::{eta, eta_star, EtaMethod};
use etaq_core::selftest::{self, SelfTestLevel};
use etaq_core::{Error, Result};

use crate::output::{render, Doc, OutputFormat};
use crate::{
    ArithCmd, Cli, CoeffModeArg, Command, FamilyArg, FieldArgs, FieldCmd, LevelArg, MethodArg,
    PolyCmd, BUDGET_ENV,
};

/// Optional defaults loaded from --config; round-trips to canonical JSON.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl Config {
    fn load(path: &std::path::Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::domain(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::parse(format!("config: {e}"), 0))
    }
}

struct Ctx {
    config: Config,
    format: OutputFormat,
    budget: u64,
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Ctx> {
        let config = match &cli.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        let format = cli
            .format
            .or(config.format)
            .unwrap_or(OutputFormat::Json);
        let env_budget = match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.parse::<u64>().map_err(|_| {
                Error::domain(format!("{BUDGET_ENV} must be an integer, got '{v}'"))
            })?),
            Err(_) => None,
        };
        let budget = cli
            .budget
            .or(env_budget)
            .or(config.budget)
            .unwrap_or(DEFAULT_BUDGET);
        Ok(Ctx {
            config,
            format,
            budget,
        })
    }

    fn field(&self, args: &FieldArgs) -> Result<Arc<FieldSpec>> {
        let (p, n) = match (args.q, args.p, args.n) {
            (Some(q), _, _) => split_prime_power(q)?,
            (None, Some(p), Some(n)) => (p, n),
            (None, None, None) => match (self.config.q, self.config.p, self.config.n) {
                (Some(q), _, _) => split_prime_power(q)?,
                (_, Some(p), Some(n)) => (p, n),
                _ => {
                    return Err(Error::domain(
                        "no field given: pass --q or --p/--n (or set them in the config)",
                    ))
                }
            },
            _ => unreachable!("clap enforces p/n pairing"),
        };
        FieldSpec::new(p, n)
    }

    fn deg_bound(&self, flag: Option<u32>, default: u32) -> u32 {
        flag.or(self.config.deg_bound).unwrap_or(default)
    }
}

/// Factor q as p^n with p prime.
fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::domain(format!("--q must be at least 2, got {q}")));
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q; // q itself is prime
    }
    let mut n = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest != 1 {
        return Err(Error::domain(format!(
            "--q must be a prime power, got {q} = {p}^{n} * {rest}"
        )));
    }
    Ok((p, n))
}

fn parse_named(text: &str, field: &Arc<FieldSpec>, name: &str) -> Result<Poly> {
    parse_poly(text, field).map_err(|e| match e {
        Error::Parse { message, position } => {
            Error::parse(format!("{name} '{text}': {message}"), position)
        }
        other => other,
    })
}

fn parse_monic(text: &str, field: &Arc<FieldSpec>, name: &str) -> Result<MonicPoly> {
    let p = parse_named(text, field, name)?;
    MonicPoly::try_new(p)
        .map_err(|_| Error::domain(format!("{name} '{text}' must be monic")))
}

/// Arbitrary-precision integers as JSON numbers.
fn bigint_value(v: &BigInt) -> Value {
    serde_json::from_str(&v.to_string()).expect("integer literal is valid JSON")
}

fn fn_value(v: &FnValue) -> Value {
    match v {
        FnValue::Exact(i) => bigint_value(i),
        FnValue::Real(x) => json!(x),
    }
}

fn family_of(arg: FamilyArg) -> Family {
    match arg {
        FamilyArg::Sigma => Family::Sigma,
        FamilyArg::Tau => Family::Tau,
        FamilyArg::Beta => Family::Beta,
        FamilyArg::Phi => Family::Phi,
    }
}

fn effective_s(family: Family, s: Option<f64>) -> f64 {
    family.effective_s(s.unwrap_or(1.0))
}

pub fn dispatch(cli: Cli) -> Result<u8> {
    let ctx = Ctx::new(&cli)?;
    let (doc, code) = match &cli.command {
        Command::Field { sub } => field_cmd(&ctx, sub)?,
        Command::Poly { sub } => poly_cmd(&ctx, sub)?,
        Command::Arith { sub } => arith_cmd(&ctx, sub)?,
        Command::Eta {
            field,
            g,
            h,
            unitary,
            method,
        } => eta_cmd(&ctx, field, g, h, *unitary, *method)?,
        Command::Coeff {
            field,
            family,
            s,
            h,
            unitary,
            mode,
            deg_bound,
            prime_deg_bound,
            exp_bound,
        } => coeff_cmd(
            &ctx,
            field,
            family_of(*family),
            *s,
            h,
            *unitary,
            *mode,
            *deg_bound,
            *prime_deg_bound,
            *exp_bound,
        )?,
        Command::Expand {
            field,
            family,
            s,
            g,
            unitary,
            deg_bound,
        } => expand_cmd(&ctx, field, family_of(*family), *s, g, *unitary, *deg_bound)?,
        Command::Verify {
            field,
            identity,
            s,
            k,
            g,
            unitary,
            deg_bound,
            tol,
        } => verify_cmd(
            &ctx,
            field,
            family_of(*identity),
            *s,
            *k,
            g,
            *unitary,
            *deg_bound,
            *tol,
        )?,
        Command::Zeta {
            field,
            s,
            deg_bound,
        } => zeta_cmd(&ctx, field, *s, *deg_bound)?,
        Command::Selftest { level } => selftest_cmd(&ctx, *level)?,
    };
    print!("{}", render(&doc, ctx.format));
    Ok(code)
}

fn field_cmd(ctx: &Ctx, sub: &FieldCmd) -> Result<(Doc, u8)> {
    match sub {
        FieldCmd::Info { field } => {
            let f = ctx.field(field)?;
            let value = json!({
                "p": f.p(),
                "n": f.n(),
                "q": f.q(),
                "modulus": f.modulus_string(),
            });
            Ok((Doc::scalar(value), 0))
        }
    }
}

fn poly_cmd(ctx: &Ctx, sub: &PolyCmd) -> Result<(Doc, u8)> {
    match sub {
        PolyCmd::Factor { field, poly } => {
            let f = ctx.field(field)?;
            let p = parse_named(poly, &f, "polynomial")?;
            let fact = factor(&p)?;
            let factors: Vec<Value> = fact
                .factors()
                .iter()
                .map(|(prime, e)| json!([prime.to_string(), e]))
                .collect();
            let value = json!({
                "input": p.to_string(),
                "unit": fact.unit().to_string(),
                "factors": factors,
            });
            Ok((Doc::scalar(value), 0))
        }
        PolyCmd::Gcd { field, a, b } => {
            let f = ctx.field(field)?;
            let pa = parse_named(a, &f, "first polynomial")?;
            let pb = parse_named(b, &f, "second polynomial")?;
            let g = gcd(&pa, &pb)?;
            let value = json!({
                "a": pa.to_string(),
                "b": pb.to_string(),
                "gcd": g.to_string(),
            });
            Ok((Doc::scalar(value), 0))
        }
        PolyCmd::Divisors {
            field,
            poly,
            unitary,
        } => {
            let f = ctx.field(field)?;
            let m = parse_monic(poly, &f, "polynomial")?;
            let divisors: Vec<String> = m
                .divisors_sorted(*unitary)
                .iter()
                .map(|d| d.to_string())
                .collect();
            let value = json!({
                "input": m.to_string(),
                "unitary": unitary,
                "count": divisors.len(),
                "divisors": divisors,
            });
            Ok((Doc::scalar(value), 0))
        }
    }
}

fn arith_cmd(ctx: &Ctx, sub: &ArithCmd) -> Result<(Doc, u8)> {
    match sub {
        ArithCmd::Eval {
            field,
            function,
            s,
            g,
        } => {
            let f = ctx.field(field)?;
            let m = parse_monic(g, &f, "argument")?;
            let s_val = s.unwrap_or(1.0);
            let (value, s_used): (FnValue, Option<f64>) = match function.as_str() {
                "mobius" => (FnValue::from(arith::mobius(&m)), None),
                "liouville" => (FnValue::from(arith::liouville(&m)), None),
                "omega" => (FnValue::from(arith::counts(&m).omega as i64), None),
                "bigomega" => (FnValue::from(arith::counts(&m).big_omega as i64), None),
                "tau" => (arith::tau(&m), None),
                "sigma" => (arith::sigma_s(&m, s_val), Some(s_val)),
                "phi" => (arith::phi_s(&m, s_val), Some(s_val)),
                "psi" => (arith::psi_s(&m, s_val), Some(s_val)),
                "beta" => (arith::beta_s(&m, s_val), Some(s_val)),
                "mobius-star" => (FnValue::from(arith::mobius_star(&m)), None),
                "tau-star" => (FnValue::from(arith::unitary_basics(&m).tau_star), None),
                "sigma-star" => (FnValue::from(arith::unitary_basics(&m).sigma_star), None),
                "phi-star" => (FnValue::from(arith::unitary_basics(&m).phi_star), None),
                other => {
                    return Err(Error::domain(format!(
                        "unknown function '{other}' (see `etaq arith eval --help`)"
                    )))
                }
            };
            let mut obj = serde_json::Map::new();
            obj.insert("fn".into(), json!(function));
            obj.insert("G".into(), json!(m.to_string()));
            if let Some(s) = s_used {
                obj.insert("s".into(), json!(s));
            }
            obj.insert("value".into(), fn_value(&value));
            Ok((Doc::scalar(Value::Object(obj)), 0))
        }
    }
}

fn eta_cmd(
    ctx: &Ctx,
    field: &FieldArgs,
    g: &str,
    h: &str,
    unitary: bool,
    method: MethodArg,
) -> Result<(Doc, u8)> {
    let f = ctx.field(field)?;
    let gp = parse_named(g, &f, "G")?;
    let hm = parse_monic(h, &f, "H")?;
    let method = match method {
        MethodArg::Divisor => EtaMethod::Divisor,
        MethodArg::Character => EtaMethod::Character,
        MethodArg::Both => EtaMethod::Both,
    };
    let v = if unitary {
        eta_star(&gp, &hm, method)
    } else {
        eta(&gp, &hm, method)
    };
    let value = json!({
        "G": gp.to_string(),
        "H": hm.to_string(),
        "unitary": unitary,
        "exact": bigint_value(&v.exact),
        "approx": v.approx.map(|c| json!([c.re, c.im])),
        "agreement": v.agreement,
    });
    Ok((Doc::scalar(value), 0))
}

#[allow(clippy::too_many_arguments)]
fn coeff_cmd(
    ctx: &Ctx,
    field: &FieldArgs,
    family: Family,
    s: Option<f64>,
    hs: &[String],
    unitary: bool,
    mode: CoeffModeArg,
    deg_bound: Option<u32>,
    prime_deg_bound: u32,
    exp_bound: u32,
) -> Result<(Doc, u8)> {
    let f = ctx.field(field)?;
    let tuple: Vec<MonicPoly> = hs
        .iter()
        .map(|h| parse_monic(h, &f, "H"))
        .collect::<Result<_>>()?;
    let k = tuple.len();
    let s = effective_s(family, s);
    let q_poly = lcm(&tuple)?;
    let (mode_name, value) = match mode {
        CoeffModeArg::Closed => (
            "closed",
            coeff_closed_form(family, s, k, &q_poly, unitary)?,
        ),
        CoeffModeArg::Special => {
            let bound = TruncationBound::new(ctx.deg_bound(deg_bound, 8));
            (
                "special",
                coeff_special(&family.g_fn(s), &tuple, bound, unitary, ctx.budget)?,
            )
        }
        CoeffModeArg::General => {
            let bound = TruncationBound::new(ctx.deg_bound(deg_bound, 4));
            let composed = ArithFnK::compose_gcd(&family.g_fn(s), k);
            (
                "general",
                coeff_general(&composed, &tuple, bound, unitary, ctx.budget)?,
            )
        }
        CoeffModeArg::Euler => {
            let composed = ArithFnK::compose_gcd(&family.g_fn(s), k);
            (
                "euler",
                coeff_euler(&composed, &tuple, prime_deg_bound, exp_bound, unitary)?,
            )
        }
    };
    let value = json!({
        "family": family.name(),
        "s": s,
        "k": k,
        "H": tuple.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "Q": q_poly.to_string(),
        "unitary": unitary,
        "mode": mode_name,
        "value": value,
    });
    Ok((Doc::scalar(value), 0))
}

fn expand_cmd(
    ctx: &Ctx,
    field: &FieldArgs,
    family: Family,
    s: Option<f64>,
    gs: &[String],
    unitary: bool,
    deg_bound: Option<u32>,
) -> Result<(Doc, u8)> {
    let f = ctx.field(field)?;
    let tuple: Vec<MonicPoly> = gs
        .iter()
        .map(|g| parse_monic(g, &f, "G"))
        .collect::<Result<_>>()?;
    let s = effective_s(family, s);
    let bound = TruncationBound::new(ctx.deg_bound(deg_bound, 5));
    let source = CoeffSource::ClosedForm { family, s };
    let partials = expand_truncated(&tuple, &source, bound, unitary, ctx.budget)?;
    let rows: Vec<Vec<String>> = partials
        .iter()
        .map(|(b, v)| vec![b.to_string(), v.to_string()])
        .collect();
    let value = json!({
        "family": family.name(),
        "s": s,
        "G": tuple.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "unitary": unitary,
        "deg_bound": bound.degree,
        "partials": partials,
    });
    Ok((Doc::with_table(value, vec!["b", "partial"], rows), 0))
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    ctx: &Ctx,
    field: &FieldArgs,
    family: Family,
    s: Option<f64>,
    k: usize,
    gs: &[String],
    unitary: bool,
    deg_bound: Option<u32>,
    tol: Option<f64>,
) -> Result<(Doc, u8)> {
    let f = ctx.field(field)?;
    let tuple: Vec<MonicPoly> = gs
        .iter()
        .map(|g| parse_monic(g, &f, "G"))
        .collect::<Result<_>>()?;
    let s = effective_s(family, s);
    let bound = TruncationBound::new(ctx.deg_bound(deg_bound, 5));
    let tolerance = tol.or(ctx.config.tolerance);
    let report = verify_identity(family, s, k, &tuple, bound, unitary, tolerance, ctx.budget)?;
    let rows: Vec<Vec<String>> = report
        .partials
        .iter()
        .zip(&report.residuals)
        .map(|((b, v), r)| vec![b.to_string(), v.to_string(), r.to_string()])
        .collect();
    let code = if report.pass { 0 } else { 4 };
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok((
        Doc::with_table(value, vec!["b", "partial", "residual"], rows),
        code,
    ))
}

fn zeta_cmd(
    ctx: &Ctx,
    field: &FieldArgs,
    s: f64,
    deg_bound: Option<u32>,
) -> Result<(Doc, u8)> {
    let f = ctx.field(field)?;
    let q = f.q();
    let closed = zeta_closed(q, s)?;
    let b = ctx.deg_bound(deg_bound, 10);
    let partial = zeta_partial(q, s, b)?;
    let tail_bound = (q as f64).powf(b as f64 * (1.0 - s) + 1.0);
    let value = json!({
        "q": q,
        "s": s,
        "closed": closed,
        "deg_bound": b,
        "partial": partial,
        "difference": (closed - partial).abs(),
        "tail_bound": tail_bound,
    });
    Ok((Doc::scalar(value), 0))
}

fn selftest_cmd(ctx: &Ctx, level: LevelArg) -> Result<(Doc, u8)> {
    let _ = ctx;
    let lvl = match level {
        LevelArg::Quick => SelfTestLevel::Quick,
        LevelArg::Full => SelfTestLevel::Full,
    };
    let results = selftest::run(lvl);
    let failures: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                if r.passed { "ok" } else { "FAIL" }.to_string(),
                r.detail.clone(),
            ]
        })
        .collect();
    let value = json!({
        "level": match lvl {
            SelfTestLevel::Quick => "quick",
            SelfTestLevel::Full => "full",
        },
        "checks": results.iter().map(|r| json!({
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
        "passed": failures.is_empty(),
        "failures": failures,
    });
    let code = if failures.is_empty() { 0 } else { 4 };
    Ok((
        Doc::with_table(value, vec!["check", "status", "detail"], rows),
        code,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(split_prime_power(2).unwrap(), (2, 1));
        assert_eq!(split_prime_power(9).unwrap(), (3, 2));
        assert_eq!(split_prime_power(8).unwrap(), (2, 3));
        assert_eq!(split_prime_power(13).unwrap(), (13, 1));
        assert!(split_prime_power(6).is_err());
        assert!(split_prime_power(12).is_err());
        assert!(split_prime_power(1).is_err());
    }

    #[test]
    fn config_round_trips_to_canonical_json() {
        let text = r#"{"q": 4, "deg_bound": 6, "tolerance": 1e-6, "format": "json", "budget": 1000}"#;
        let config: Config = serde_json::from_str(text).unwrap();
        let canonical = serde_json::to_string(&config).unwrap();
        let reparsed: Config = serde_json::from_str(&canonical).unwrap();
        assert_eq!(config, reparsed);
        assert_eq!(canonical, serde_json::to_string(&reparsed).unwrap());
    }

    #[test]
    fn config_rejects_unknown_fields() {
        assert!(serde_json::from_str::<Config>(r#"{"qq": 4}"#).is_err());
    }
}
