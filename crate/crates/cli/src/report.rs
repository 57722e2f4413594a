//! What a command prints.

use std::collections::BTreeMap;

use serde::Serialize;

use planetame::autmap::Axis;
use planetame::{Decomposition, Domain, Factor, Obstruction, Ring};

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism_over_k: Option<bool>,
    /// Ring the factor coefficients live in.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<[u32; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<PrimeReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub batteries: Option<Vec<Battery>>,
    pub checks: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub kind: &'static str,
    /// `first` or `second` for elementary factors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<&'static str>,
    /// Affine: `a, b, c, d, e, f` for `(aX + bY + e, cX + dY + f)`.
    /// Elementary: the coefficients of `p`, constant term first.
    pub coefficients: Vec<String>,
    pub map: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ObstructionReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeReport {
    pub p: String,
    pub step: usize,
    /// Whether the map was confirmed not tame over the localization at `p`.
    pub locally_not_tame: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Battery {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

pub fn factor_report<R: Ring>(ring: &R, f: &Factor<R::Elem>) -> FactorReport {
    let (kind, axis, coefficients) = match f {
        Factor::Affine {
            matrix: m,
            translation: t,
        } => (
            "affine",
            None,
            [&m[0][0], &m[0][1], &m[1][0], &m[1][1], &t[0], &t[1]]
                .into_iter()
                .map(|c| ring.render(c))
                .collect(),
        ),
        Factor::Elementary { axis, p } => (
            "elementary",
            Some(match axis {
                Axis::First => "first",
                Axis::Second => "second",
            }),
            p.iter().map(|c| ring.render(c)).collect(),
        ),
    };
    FactorReport {
        kind,
        axis,
        coefficients,
        map: f.render(ring),
    }
}

pub fn factor_reports<R: Ring>(ring: &R, d: &Decomposition<R::Elem>) -> Vec<FactorReport> {
    d.factors.iter().map(|f| factor_report(ring, f)).collect()
}

pub fn obstruction_report<D: Domain>(dom: &D, o: &Obstruction<D::Elem>) -> ObstructionReport {
    let mut r = ObstructionReport {
        kind: o.kind(),
        description: o.describe(dom),
        ..ObstructionReport::default()
    };
    match o {
        Obstruction::DegreeDivisibility { d1, d2, step } => {
            r.step = Some(*step);
            r.degrees = Some([*d1, *d2]);
        }
        Obstruction::TopsNotProportional { degrees, step } => {
            r.step = Some(*step);
            r.degrees = Some([degrees.d1, degrees.d2]);
        }
        Obstruction::CoefficientNotInRing { c, step } => {
            r.step = Some(*step);
            r.c = Some(c.render(dom));
        }
        Obstruction::NonPrincipalPair {
            a,
            b,
            witness,
            step,
        } => {
            r.step = Some(*step);
            r.a = Some(a.render(dom));
            r.b = Some(b.render(dom));
            r.witness = Some(WitnessReport {
                kind: witness.kind(),
                detail: witness.to_string(),
            });
        }
        Obstruction::FinalAffineNotInvertible { det } => r.det = Some(det.render(dom)),
        Obstruction::PrincipalityUnknown { step, .. } => r.step = Some(*step),
    }
    r
}

impl Report {
    pub fn new(command: &str, ring: String) -> Self {
        Report {
            command: command.to_string(),
            ring,
            ..Report::default()
        }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|v| *v)
    }

    /// Plain-text rendering. Commands whose result is a map print it bare, so
    /// the output can be fed back in; everything else becomes a `#` comment.
    pub fn human(&self) -> String {
        let maps: Vec<&String> = self.maps.iter().flatten().chain(self.map.iter()).collect();
        let raw = !maps.is_empty() && self.verdict.is_none() && self.r.is_none();
        let mut lines: Vec<String> = Vec::new();
        let mut kv = |k: &str, v: String| {
            lines.push(if raw {
                format!("# {k}: {v}")
            } else {
                format!("{k}: {v}")
            });
        };
        kv("ring", self.ring.clone());
        if let Some(v) = &self.verdict {
            kv("verdict", v.clone());
        }
        if let Some(p) = &self.prime {
            kv("prime", p.clone());
        }
        if !raw {
            for m in &maps {
                kv("map", m.to_string());
            }
        }
        if let Some(v) = self.automorphism {
            kv("automorphism", v.to_string());
        }
        if let Some(v) = self.automorphism_over_k {
            kv("automorphism over the fraction field", v.to_string());
        }
        if let Some(v) = &self.inverse {
            kv("inverse", v.clone());
        }
        if let Some(r) = &self.r {
            kv("r", r.clone());
        }
        for p in self.primes.iter().flatten() {
            let local = match p.locally_not_tame {
                Some(true) => "not tame locally",
                Some(false) => "tame locally",
                None => "local check unavailable",
            };
            kv(
                "inverted prime",
                format!("{} (step {}, {local})", p.p, p.step),
            );
        }
        if let Some(fs) = &self.factors {
            let over = self
                .factor_ring
                .as_ref()
                .map(|r| format!(" over {r}"))
                .unwrap_or_default();
            kv("factors", format!("{}{over}, outermost first", fs.len()));
            for (i, f) in fs.iter().enumerate() {
                let axis = f.axis.map(|a| format!(", {a}")).unwrap_or_default();
                kv(
                    &format!("  {}", i + 1),
                    format!("{} [{}{axis}]", f.map, f.kind),
                );
            }
        }
        if let Some(d) = &self.degrees {
            let s: Vec<String> = d.iter().map(|[a, b]| format!("({a},{b})")).collect();
            kv("degrees", s.join(" -> "));
        }
        if let Some(o) = &self.obstruction {
            kv("obstruction", format!("{}: {}", o.kind, o.description));
        }
        if let Some(r) = &self.reason {
            kv("reason", r.clone());
        }
        if let (Some(seed), Some(count)) = (self.seed, self.count) {
            kv("seed", seed.to_string());
            kv("cases per battery", count.to_string());
        }
        for b in self.batteries.iter().flatten() {
            let status = if b.failed == 0 { "PASS" } else { "FAIL" };
            let first = b
                .first_failure
                .as_ref()
                .map(|s| format!(" (first failure: {s})"))
                .unwrap_or_default();
            kv(
                &format!("[{status}] {}", b.name),
                format!("{} passed, {} failed{first}", b.passed, b.failed),
            );
        }
        if !self.checks.is_empty() {
            let s: Vec<String> = self
                .checks
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect();
            kv("checks", s.join(", "));
        }
        let mut out = String::new();
        if raw {
            for m in &maps {
                out.push_str(m);
                out.push('\n');
            }
        }
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }
}
