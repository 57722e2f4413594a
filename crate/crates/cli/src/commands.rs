//! The verbs, generic over the coefficient ring.

use num_rational::BigRational;

use planetame::autmap::compose_factors;
use planetame::coeffring::{CuspidalCubic, Localized, PrimeSpec, RingError};
use planetame::gallery::{canonical_example, cuspidal_example, nagata, nagata_inverse, CanExSpec};
use planetame::tamengine::{
    decide_locally_tame, decide_tame, decide_tame_over_k, decide_tame_traced,
    inverse_decomposition, is_automorphism, minimal_overring, pull_back_map, recheck_obstruction,
    OverringError,
};
use planetame::{Decomposition, Domain, Pid, PolyMap, Ring, TameVerdict};

use crate::grammar::{parse_coeff, parse_coeff_list, parse_map, ParseError};
use crate::report::{factor_reports, obstruction_report, PrimeReport, Report};

/// Exit status of a command.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_NOT_AUTOMORPHISM: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// Syntax error in `source`.
    Parse {
        err: ParseError,
        source: String,
        what: String,
    },
    Input(String),
    Unsupported(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => EXIT_PARSE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Internal(_) => EXIT_UNKNOWN,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Input(_) => "input",
            CliError::Unsupported(_) => "unsupported",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse { err, source, what } => format!("{what}: {}", err.annotate(source)),
            CliError::Input(s) | CliError::Unsupported(s) | CliError::Internal(s) => s.clone(),
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            CliError::Parse { err, .. } => Some(err.pos),
            _ => None,
        }
    }

    pub fn parse(what: &str, source: &str) -> impl Fn(ParseError) -> CliError {
        let (what, source) = (what.to_string(), source.to_string());
        move |err| CliError::Parse {
            err,
            source: source.clone(),
            what: what.clone(),
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::UnsupportedPrime { .. } => CliError::Unsupported(e.to_string()),
            RingError::InvalidRing(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

fn ok(report: Report) -> Result<Outcome, CliError> {
    Ok(Outcome {
        report,
        exit: EXIT_OK,
    })
}

fn ring_name<R: Ring>(r: &R) -> String {
    r.descriptor().kind.to_string()
}

fn embed_map<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> PolyMap<<D::Frac as Ring>::Elem> {
    f.map_coeffs(&dom.fraction_field(), |c| dom.embed(c))
}

/// Re-parse the printed form and compare.
fn reparses<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> bool {
    parse_map(dom, &f.render(dom)).is_ok_and(|g| g == *f)
}

pub fn parse<D: Domain>(dom: &D, maps: &[PolyMap<D::Elem>]) -> Result<Outcome, CliError> {
    let mut r = Report::new("parse", ring_name(dom));
    r.maps = Some(maps.iter().map(|f| f.render(dom)).collect());
    r.check("round_trip", maps.iter().all(|f| reparses(dom, f)));
    finish(r, EXIT_OK)
}

pub fn compose<D: Domain>(dom: &D, maps: &[PolyMap<D::Elem>]) -> Result<Outcome, CliError> {
    if maps.len() < 2 {
        return Err(CliError::Input(format!(
            "compose needs at least two maps, got {}",
            maps.len()
        )));
    }
    let g = maps[1..]
        .iter()
        .fold(maps[0].clone(), |acc, m| acc.compose(dom, m));
    let mut r = Report::new("compose", ring_name(dom));
    r.map = Some(g.render(dom));
    ok(r)
}

/// Enforce that every check passed before anything is printed as a result.
fn finish(report: Report, exit: i32) -> Result<Outcome, CliError> {
    if !report.all_checks_pass() {
        let failed: Vec<&String> = report
            .checks
            .iter()
            .filter(|(_, v)| !**v)
            .map(|(k, _)| k)
            .collect();
        return Err(CliError::Internal(format!(
            "certificate re-verification failed: {}",
            failed
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(Outcome { report, exit })
}

fn verdict_exit<E, B>(v: &TameVerdict<E, B>) -> i32 {
    match v {
        TameVerdict::Tame(_) | TameVerdict::NotTame(_) => EXIT_OK,
        TameVerdict::NotAutomorphismOverK(_) => EXIT_NOT_AUTOMORPHISM,
        TameVerdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn tame_report<D: Domain>(
    dom: &D,
    command: &str,
    f: &PolyMap<D::Elem>,
    regroup: bool,
    trace: bool,
) -> Result<Outcome, CliError> {
    let run = decide_tame_traced(dom, f);
    let mut r = Report::new(command, ring_name(dom));
    r.verdict = Some(run.verdict.label().to_string());
    if trace {
        r.degrees = Some(run.degrees.iter().map(|d| [d.d1, d.d2]).collect());
    }
    match &run.verdict {
        TameVerdict::Tame(d) => {
            let d = if regroup { d.regrouped(dom) } else { d.clone() };
            r.factor_ring = Some(ring_name(dom));
            r.factors = Some(factor_reports(dom, &d));
            r.check("recompose", compose_factors(dom, &d.factors) == *f);
            r.check(
                "factors_invertible",
                d.factors.iter().all(|x| x.inverse(dom).is_ok()),
            );
        }
        TameVerdict::NotTame(o) => {
            r.obstruction = Some(obstruction_report(dom, o));
            r.check("obstruction", recheck_obstruction(dom, o, None));
        }
        TameVerdict::NotAutomorphismOverK(s) | TameVerdict::Unknown(s) => {
            r.reason = Some(s.clone())
        }
    }
    finish(r, verdict_exit(&run.verdict))
}

pub fn is_tame<D: Domain>(dom: &D, f: &PolyMap<D::Elem>, trace: bool) -> Result<Outcome, CliError> {
    tame_report(dom, "is-tame", f, false, trace)
}

pub fn decompose<D: Domain>(dom: &D, f: &PolyMap<D::Elem>, raw: bool) -> Result<Outcome, CliError> {
    tame_report(dom, "decompose", f, !raw, false)
}

pub fn parse_prime<D: Domain>(dom: &D, text: &str) -> Result<PrimeSpec<D::Elem>, CliError> {
    let gens = parse_coeff_list(dom, text).map_err(CliError::parse("prime", text))?;
    let spec = match gens.as_slice() {
        [g] if dom.is_zero(g) => PrimeSpec::Zero,
        [g] => PrimeSpec::Element(g.clone()),
        _ => PrimeSpec::Generators(gens),
    };
    dom.check_prime(&spec)?;
    Ok(spec)
}

pub fn is_locally_tame<D: Domain>(
    dom: &D,
    f: &PolyMap<D::Elem>,
    prime: &str,
) -> Result<Outcome, CliError> {
    let p = parse_prime(dom, prime)?;
    let v = decide_locally_tame(dom, f, &p)?;
    let k = dom.fraction_field();
    let mut r = Report::new("is-locally-tame", ring_name(dom));
    r.prime = Some(prime.trim().to_string());
    r.verdict = Some(v.label().to_string());
    match &v {
        TameVerdict::Tame(d) => {
            r.factor_ring = Some(ring_name(&k));
            r.factors = Some(factor_reports(&k, d));
            r.check(
                "recompose",
                compose_factors(&k, &d.factors) == embed_map(dom, f),
            );
            let local = d
                .factors
                .iter()
                .flat_map(|x| x.to_map(&k).coefficients().cloned().collect::<Vec<_>>())
                .all(|c| dom.local_contains(&c, &p).unwrap_or(false));
            r.check("local_coefficients", local);
        }
        TameVerdict::NotTame(o) => {
            r.obstruction = Some(obstruction_report(dom, o));
            r.check("obstruction", recheck_obstruction(dom, o, Some(&p)));
        }
        TameVerdict::NotAutomorphismOverK(s) | TameVerdict::Unknown(s) => {
            r.reason = Some(s.clone())
        }
    }
    finish(r, verdict_exit(&v))
}

/// The inverse over `R` when it lies there, otherwise over the fraction field.
fn render_inverse<D: Domain>(dom: &D, d: &Decomposition<<D::Frac as Ring>::Elem>) -> String {
    match pull_back_map(dom, &d.target) {
        Some(g) => g.render(dom),
        None => d.target.render(&dom.fraction_field()),
    }
}

pub fn inverse<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> Result<Outcome, CliError> {
    let k = dom.fraction_field();
    let fk = embed_map(dom, f);
    let mut r = Report::new("inverse", ring_name(dom));
    match inverse_decomposition(dom, &fk) {
        Ok(d) => {
            r.map = Some(render_inverse(dom, &d));
            r.automorphism = Some(pull_back_map(dom, &d.target).is_some());
            r.check("round_trip", d.inverts(&k, &fk));
            finish(r, EXIT_OK)
        }
        Err(s) => {
            r.automorphism_over_k = Some(false);
            r.reason = Some(s);
            Ok(Outcome {
                report: r,
                exit: EXIT_NOT_AUTOMORPHISM,
            })
        }
    }
}

pub fn is_automorphism_cmd<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> Result<Outcome, CliError> {
    let k = dom.fraction_field();
    let fk = embed_map(dom, f);
    let mut r = Report::new("is-automorphism", ring_name(dom));
    let over_k = decide_tame_over_k(dom, &fk);
    r.automorphism_over_k = Some(over_k.is_tame());
    if let TameVerdict::Unknown(s) = &over_k {
        r.reason = Some(s.clone());
        return Ok(Outcome {
            report: r,
            exit: EXIT_UNKNOWN,
        });
    }
    let aut = is_automorphism(dom, &fk);
    r.automorphism = Some(aut);
    if let Ok(d) = inverse_decomposition(dom, &fk) {
        r.inverse = Some(render_inverse(dom, &d));
        r.check("round_trip", d.inverts(&k, &fk));
        if !aut {
            r.reason = Some("the inverse has coefficients outside the ring".to_string());
        }
    } else if let TameVerdict::NotAutomorphismOverK(s) = over_k {
        r.reason = Some(s);
    }
    let exit = if aut { EXIT_OK } else { EXIT_NOT_AUTOMORPHISM };
    finish(r, exit)
}

pub fn overring<D: Pid>(dom: &D, f: &PolyMap<D::Elem>) -> Result<Outcome, CliError> {
    let k = dom.fraction_field();
    let mut r = Report::new("minimal-overring", ring_name(dom));
    r.verdict = Some(decide_tame(dom, f).label().to_string());
    let res = match minimal_overring(dom, f) {
        Ok(res) => res,
        Err(e) => {
            let exit = match e {
                OverringError::NotAutomorphism(_) => EXIT_NOT_AUTOMORPHISM,
                OverringError::Unknown(_) => EXIT_UNKNOWN,
            };
            r.reason = Some(e.to_string());
            return Ok(Outcome { report: r, exit });
        }
    };
    r.r = Some(dom.render(&res.r));
    r.primes = Some(
        res.primes
            .iter()
            .zip(&res.local_checks)
            .map(|((p, step), c)| PrimeReport {
                p: dom.render(p),
                step: *step,
                locally_not_tame: *c,
            })
            .collect(),
    );
    r.factor_ring = Some(format!("{}[1/({})]", ring_name(dom), dom.render(&res.r)));
    r.factors = Some(factor_reports(&k, &res.decomposition));
    r.check(
        "recompose",
        compose_factors(&k, &res.decomposition.factors) == embed_map(dom, f),
    );
    let tame_there = if dom.is_unit(&res.r) {
        decide_tame(dom, f).is_tame()
    } else {
        let loc = Localized::new(dom.clone(), &res.r)?;
        decide_tame(&loc, &f.map_coeffs(&loc, |c| loc.from_base(c))).is_tame()
    };
    r.check("tame_over_overring", tame_there);
    r.check("minimal", res.is_certified_minimal());
    finish(r, EXIT_OK)
}

fn gallery_report<D: Domain>(
    dom: &D,
    name: &str,
    f: &PolyMap<D::Elem>,
    finv: &PolyMap<D::Elem>,
) -> Result<Outcome, CliError> {
    let mut r = Report::new(&format!("gallery {name}"), ring_name(dom));
    r.map = Some(f.render(dom));
    r.inverse = Some(finv.render(dom));
    r.check("inverse", f.compose(dom, finv).is_identity(dom));
    r.check("round_trip", reparses(dom, f) && reparses(dom, finv));
    finish(r, EXIT_OK)
}

pub fn gallery_nagata<D: Domain>(dom: &D, z: Option<&str>) -> Result<Outcome, CliError> {
    let text = match z {
        Some(t) => t.to_string(),
        None if dom.generator_names().iter().any(|g| g == "z") => "z".to_string(),
        None => {
            return Err(CliError::Input(
                "this ring has no generator z; pass --z".to_string(),
            ))
        }
    };
    let z = parse_coeff(dom, &text).map_err(CliError::parse("--z", &text))?;
    gallery_report(dom, "nagata", &nagata(dom, &z), &nagata_inverse(dom, &z))
}

pub fn gallery_can_ex<D: Domain>(dom: &D, z: &str, w: &str, q: &str) -> Result<Outcome, CliError> {
    let zc = parse_coeff(dom, z).map_err(CliError::parse("--z", z))?;
    let wc = parse_coeff(dom, w).map_err(CliError::parse("--w", w))?;
    let qc = parse_coeff_list(dom, q).map_err(CliError::parse("--q", q))?;
    let spec = CanExSpec::new(dom, zc, wc, qc)?;
    let (f, finv) = canonical_example(dom, &spec)?;
    gallery_report(dom, "can-ex", &f, &finv)
}

pub fn gallery_cuspidal(a: &str, q: &str) -> Result<Outcome, CliError> {
    let a: BigRational = parse_rational(a)?;
    let ring = CuspidalCubic;
    let qc = parse_coeff_list(&ring, q).map_err(CliError::parse("--q", q))?;
    let (f, finv) = cuspidal_example(&a, qc)?;
    gallery_report(&ring, "cuspidal", &f, &finv)
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let q = planetame::coeffring::Rationals;
    parse_coeff(&q, s).map_err(CliError::parse("--a", s))
}
