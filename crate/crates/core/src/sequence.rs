//! Iterated chains `g_0, g_1 = T(g_0), g_2, ...` and their verification.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::criteria::Status;
use crate::error::{Error, Result};
use crate::field::{root_of_unity, FEl, Field};
use crate::moebius::{self, Mat2};
use crate::poly::Poly;
use crate::transforms::{TransformConfig, TransformKind, TransformSpec};

pub const DEFAULT_RABIN_DEGREE_CAP: usize = 4096;

/// Largest `deg g_m` for which the extension-field invariance check runs.
pub const EXTENSION_CHECK_DEGREE_CAP: usize = 1024;
/// Largest extension degree `k` built to host a root of unity of order `t^m`.
pub const EXTENSION_CHECK_DEGREE_LIMIT: usize = 12;
/// Orders up to which every power of `ζ` is checked, not only `ζ` itself.
pub const ALL_POWERS_LIMIT: u128 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    None,
    Fast,
    Full,
}

#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub seed: Poly,
    pub transform: TransformSpec,
    pub iterations: usize,
    pub verify: VerifyLevel,
    pub rabin_degree_cap: usize,
    pub record_timings: bool,
}

impl ChainSpec {
    pub fn new(seed: Poly, transform: TransformSpec, iterations: usize) -> ChainSpec {
        ChainSpec {
            seed,
            transform,
            iterations,
            verify: VerifyLevel::Fast,
            rabin_degree_cap: DEFAULT_RABIN_DEGREE_CAP,
            record_timings: false,
        }
    }

    pub fn verify(mut self, level: VerifyLevel) -> ChainSpec {
        self.verify = level;
        self
    }

    pub fn rabin_degree_cap(mut self, cap: usize) -> ChainSpec {
        self.rabin_degree_cap = cap;
        self
    }

    pub fn record_timings(mut self, on: bool) -> ChainSpec {
        self.record_timings = on;
        self
    }
}

/// Monic iterates `g_1..g_m` plus the raw (unnormalized) first iterate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub seed: Poly,
    pub iterates: Vec<Poly>,
    pub first_raw: Option<Poly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducibility {
    #[serde(rename = "true")]
    Yes,
    #[serde(rename = "false")]
    No,
    #[serde(rename = "skipped-cap")]
    SkippedCap,
    #[serde(rename = "unchecked")]
    Unchecked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaKind {
    /// `ζ` of prime order `ℓ | t` in the matrix field.
    PrimeOrder,
    /// `ζ` of exact order `t^m` in the smallest extension containing one.
    Primitive,
    /// Every power `ζ^j` of order properly dividing `t^m`.
    NonPrimitivePowers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceCheck {
    pub kind: ZetaKind,
    pub zeta_order: u128,
    pub field: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterateRecord {
    pub m: usize,
    pub degree: usize,
    pub expected_degree: usize,
    pub irreducible: Irreducibility,
    pub invariance_checks: Vec<InvarianceCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_reciprocal: Option<bool>,
    pub structural_identity: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl IterateRecord {
    pub fn pass(&self) -> bool {
        self.degree == self.expected_degree
            && self.irreducible != Irreducibility::No
            && self.invariance_checks.iter().all(|c| c.status != Status::Fail)
            && self.self_reciprocal != Some(false)
            && self.structural_identity != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub pass: bool,
    pub transform: TransformConfig,
    pub seed: String,
    pub iterations: usize,
    pub verify: VerifyLevel,
    pub records: Vec<IterateRecord>,
}

impl ChainReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "chain: {} over {} from {}, {} iterations, verify {}\n",
            self.transform.kind,
            self.transform.q,
            self.seed,
            self.iterations,
            serde_json::to_value(self.verify).expect("enum").as_str().expect("string"),
        );
        for r in &self.records {
            let irr = serde_json::to_value(r.irreducible).expect("enum");
            out.push_str(&format!(
                "  m={} degree={} expected={} irreducible={}",
                r.m,
                r.degree,
                r.expected_degree,
                irr.as_str().expect("string")
            ));
            let inv: Vec<String> = r
                .invariance_checks
                .iter()
                .map(|c| format!("{}:{}", c.zeta_order, status_word(c.status)))
                .collect();
            if !inv.is_empty() {
                out.push_str(&format!(" invariance=[{}]", inv.join(",")));
            }
            if let Some(s) = r.self_reciprocal {
                out.push_str(&format!(" self_reciprocal={s}"));
            }
            out.push_str(&format!(" structural={}", status_word(r.structural_identity)));
            if let Some(ms) = r.wall_time_ms {
                out.push_str(&format!(" time_ms={ms:.3}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("report: {}\n", if self.pass { "pass" } else { "FAIL" }));
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Apply the transform `iterations` times. With a verify level other than
/// `None` the chain is also verified.
pub fn iterate_chain(spec: &ChainSpec) -> Result<(Chain, ChainReport)> {
    let t = spec.transform.t();
    let mut iterates = Vec::with_capacity(spec.iterations);
    let mut first_raw = None;
    let mut times = Vec::with_capacity(spec.iterations);
    let mut current = spec.seed.clone();
    let pole_point = spec.transform.sigma().image_of_infinity();
    for m in 1..=spec.iterations {
        let start = Instant::now();
        let pole = |e: Error| match e {
            Error::PoleAtSeed if m > 1 => Error::PoleAtIterate { m: m - 1 },
            other => other,
        };
        if !moebius::nonzero_at(&current, &pole_point)? {
            return Err(pole(Error::PoleAtSeed));
        }
        let out = spec.transform.apply(&current).map_err(pole)?;
        let expected = t * current.degree().ok_or(Error::ZeroPolynomial)?;
        let got = out.monic.degree().unwrap_or(0);
        if got != expected {
            return Err(Error::DegreeDropped { m, expected, got });
        }
        times.push(start.elapsed().as_secs_f64() * 1e3);
        if m == 1 {
            first_raw = Some(out.raw);
        }
        current = out.monic;
        iterates.push(current.clone());
    }
    let chain = Chain {
        seed: spec.seed.clone(),
        iterates,
        first_raw,
    };
    let mut report = verify_chain(&chain, spec);
    if spec.record_timings {
        for (r, ms) in report.records.iter_mut().zip(times) {
            r.wall_time_ms = Some(ms + r.wall_time_ms.unwrap_or(0.0));
        }
    }
    Ok((chain, report))
}

/// Check each iterate: Rabin irreducibility up to the degree cap, root-set
/// invariance under `M_{σ,ζ}`, the structural identity
/// `P_σ(g_m) ∝ P_σ(g_0)(x^(t^m))`, and self-reciprocity for Cohen chains.
pub fn verify_chain(chain: &Chain, spec: &ChainSpec) -> ChainReport {
    let transform = &spec.transform;
    let sigma = transform.sigma();
    let t = transform.t();
    let n0 = chain.seed.degree().unwrap_or(0);
    let base_image = moebius::p_sigma(sigma, &chain.seed).ok();
    let prime_zetas: Vec<(u128, FEl)> = arith::prime_divisors(t as u128)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|l| root_of_unity(sigma.field(), l).ok().map(|z| (l, z)))
        .collect();
    let mut records = Vec::with_capacity(chain.iterates.len());
    for (i, g) in chain.iterates.iter().enumerate() {
        let m = i + 1;
        let start = Instant::now();
        let degree = g.degree().unwrap_or(0);
        let t_m = (t as u128).checked_pow(m as u32);
        let expected_degree = t_m.map_or(usize::MAX, |tm| n0.saturating_mul(tm as usize));
        let mut record = IterateRecord {
            m,
            degree,
            expected_degree,
            irreducible: Irreducibility::Unchecked,
            invariance_checks: Vec::new(),
            self_reciprocal: None,
            structural_identity: Status::Skipped,
            wall_time_ms: None,
        };
        if spec.verify != VerifyLevel::None {
            record.irreducible = if degree > spec.rabin_degree_cap {
                Irreducibility::SkippedCap
            } else if g.is_irreducible() {
                Irreducibility::Yes
            } else {
                Irreducibility::No
            };
            for (l, zeta) in &prime_zetas {
                let outcome = moebius::m_sigma_zeta(sigma, zeta).and_then(|mz| moebius::fixes_root_set(g, &mz));
                record.invariance_checks.push(InvarianceCheck {
                    kind: ZetaKind::PrimeOrder,
                    zeta_order: *l,
                    field: sigma.field().order_spec(),
                    status: outcome.as_ref().map_or(Status::Fail, |ok| status(*ok)),
                    detail: match outcome {
                        Ok(_) => format!("zeta = {zeta}"),
                        Err(e) => e.to_string(),
                    },
                });
            }
            if spec.verify == VerifyLevel::Full {
                record.invariance_checks.extend(invariance_extension_check(g, sigma, t, m));
            }
            record.structural_identity = match (&base_image, t_m) {
                (Some(base), Some(tm)) if tm <= usize::MAX as u128 => {
                    let lhs = moebius::p_sigma(sigma, g).and_then(|p| p.monic());
                    let rhs = base.substitute_power(tm as usize).and_then(|p| p.monic());
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) => status(a == b),
                        _ => Status::Fail,
                    }
                }
                _ => Status::Fail,
            };
            if transform.kind() == TransformKind::Cohen {
                record.self_reciprocal = Some(g.reciprocal().and_then(|r| r.monic()).is_ok_and(|r| &r == g));
            }
        }
        if spec.record_timings {
            record.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        records.push(record);
    }
    ChainReport {
        pass: records.iter().all(IterateRecord::pass),
        transform: transform.to_config(),
        seed: chain.seed.to_string(),
        iterations: spec.iterations,
        verify: spec.verify,
        records,
    }
}

/// Root-set invariance of `g_m` under `M_{σ,ζ}` for `ζ` of exact order
/// `t^m`, built in the smallest extension `F_{Q^k}` of the matrix field
/// with `t^m | Q^k − 1`. For `t^m` up to [`ALL_POWERS_LIMIT`] the
/// non-primitive powers of `ζ` are checked too and reported separately.
/// Work beyond the budgets is reported as skipped.
pub fn invariance_extension_check(g: &Poly, sigma: &Mat2, t: usize, m: usize) -> Vec<InvarianceCheck> {
    match extension_check(g, sigma, t, m) {
        Ok(checks) => checks,
        Err(e) => vec![InvarianceCheck {
            kind: ZetaKind::Primitive,
            zeta_order: (t as u128).checked_pow(m as u32).unwrap_or(0),
            field: String::new(),
            status: Status::Skipped,
            detail: e.to_string(),
        }],
    }
}

/// The smallest `k` with `order | Q^k − 1`, if at most `limit`.
fn embedding_degree(q: u128, order: u128, limit: usize) -> Option<usize> {
    if arith::gcd(q, order) != 1 {
        return None;
    }
    let mut acc = q % order;
    for k in 1..=limit {
        if acc == 1 % order {
            return Some(k);
        }
        acc = arith::mul_mod(acc, q, order);
    }
    None
}

fn extension_check(g: &Poly, sigma: &Mat2, t: usize, m: usize) -> Result<Vec<InvarianceCheck>> {
    let order = (t as u128)
        .checked_pow(m as u32)
        .ok_or_else(|| Error::BudgetExceeded("t^m overflows".into()))?;
    if g.degree().unwrap_or(0) > EXTENSION_CHECK_DEGREE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "degree above {EXTENSION_CHECK_DEGREE_CAP}"
        )));
    }
    let base = sigma.field();
    let k = embedding_degree(base.order(), order, EXTENSION_CHECK_DEGREE_LIMIT).ok_or_else(|| {
        Error::BudgetExceeded(format!(
            "no root of unity of order {order} within degree {EXTENSION_CHECK_DEGREE_LIMIT} over F_{}",
            base.order_spec()
        ))
    })?;
    let field: Field = if k == 1 { base.clone() } else { base.extension(k)? };
    let zeta = root_of_unity(&field, order)?;
    let lifted = g.lift(&Field::common(&field, g.field())?)?;
    let check = |z: &FEl| -> Result<bool> { moebius::fixes_root_set(&lifted, &moebius::m_sigma_zeta(sigma, z)?) };
    let primitive = check(&zeta)?;
    let mut out = vec![InvarianceCheck {
        kind: ZetaKind::Primitive,
        zeta_order: order,
        field: field.order_spec(),
        status: status(primitive),
        detail: format!("zeta = {zeta}"),
    }];
    if order <= ALL_POWERS_LIMIT && order > 1 {
        let mut failures = Vec::new();
        let mut tested = 0;
        let mut z = field.one();
        for j in 1..order {
            z = &z * &zeta;
            if arith::gcd(j, order) == 1 {
                continue;
            }
            tested += 1;
            if !check(&z)? {
                failures.push(j.to_string());
            }
        }
        out.push(InvarianceCheck {
            kind: ZetaKind::NonPrimitivePowers,
            zeta_order: order,
            field: field.order_spec(),
            status: status(failures.is_empty()),
            detail: if failures.is_empty() {
                format!("{tested} powers zeta^j with gcd(j, {order}) > 1")
            } else {
                format!("fails for j = {}", failures.join(","))
            },
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{main_theorem_check, search_seeds};
    use crate::transforms::sigma_star;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn pi(p: u64, c: &[i64]) -> Poly {
        Poly::from_ints(&fp(p), c)
    }

    #[test]
    fn cohen_chain_over_f5() {
        let spec = ChainSpec::new(pi(5, &[-2, 1]), TransformSpec::cohen(&fp(5)).unwrap(), 2);
        let (chain, report) = iterate_chain(&spec).unwrap();
        assert_eq!(chain.iterates, vec![pi(5, &[1, 1, 1]), pi(5, &[1, 2, 1, 2, 1])]);
        assert_eq!(chain.first_raw, Some(pi(5, &[1, 1, 1])));
        assert!(report.pass, "{}", report.to_text());
        assert!(report.records.iter().all(|r| r.self_reciprocal == Some(true)));
        assert!(report.records.iter().all(|r| r.invariance_checks.len() == 1));
    }

    #[test]
    fn empty_chain() {
        let spec = ChainSpec::new(pi(5, &[-2, 1]), TransformSpec::cohen(&fp(5)).unwrap(), 0);
        let (chain, report) = iterate_chain(&spec).unwrap();
        assert!(chain.iterates.is_empty() && report.records.is_empty() && report.pass);
    }

    #[test]
    fn mcnay_chain_over_f7() {
        let spec = ChainSpec::new(pi(7, &[3, 2, 1]), TransformSpec::mcnay(&fp(7).from_int(3)).unwrap(), 3)
            .verify(VerifyLevel::Full);
        let (chain, report) = iterate_chain(&spec).unwrap();
        let degrees: Vec<_> = chain.iterates.iter().map(|g| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![4, 8, 16]);
        assert!(report.pass, "{}", report.to_text());
        assert!(report.records.iter().all(|r| r.irreducible == Irreducibility::Yes));
    }

    #[test]
    fn full_verification_builds_extensions() {
        let spec = ChainSpec::new(pi(5, &[-2, 1]), TransformSpec::cohen(&fp(5)).unwrap(), 3)
            .verify(VerifyLevel::Full);
        let (_, report) = iterate_chain(&spec).unwrap();
        assert!(report.pass, "{}", report.to_text());
        let third = &report.records[2];
        let primitive = third
            .invariance_checks
            .iter()
            .find(|c| c.kind == ZetaKind::Primitive)
            .unwrap();
        // order 8 needs F_25
        assert_eq!((primitive.zeta_order, primitive.field.as_str()), (8, "5^2"));
        assert!(third.invariance_checks.iter().any(|c| c.kind == ZetaKind::NonPrimitivePowers));
    }

    #[test]
    fn extension_check_for_order_nine() {
        let f7 = fp(7);
        let sigma = Mat2::from_ints(&f7, 1, 2, 3, 1).unwrap();
        let spec = TransformSpec::general(&f7, sigma.clone(), 3).unwrap();
        let seed = crate::poly::enumerate_irreducibles(&f7, 1, usize::MAX, |g| {
            moebius::nonzero_at(g, &sigma.image_of_infinity()).unwrap()
        })
        .unwrap()
        .remove(0);
        let (chain, _) = iterate_chain(&ChainSpec::new(seed, spec, 2)).unwrap();
        let checks = invariance_extension_check(&chain.iterates[1], &sigma, 3, 2);
        assert_eq!(checks[0].field, "7^3");
        assert!(checks.iter().all(|c| c.status == Status::Pass), "{checks:?}");
    }

    #[test]
    fn degree_cap_skips_rabin() {
        let spec = ChainSpec::new(pi(5, &[-2, 1]), TransformSpec::cohen(&fp(5)).unwrap(), 3).rabin_degree_cap(4);
        let (_, report) = iterate_chain(&spec).unwrap();
        let irr: Vec<_> = report.records.iter().map(|r| r.irreducible).collect();
        assert_eq!(irr, vec![Irreducibility::Yes, Irreducibility::Yes, Irreducibility::SkippedCap]);
        assert!(report.pass);
    }

    #[test]
    fn pole_errors() {
        let cohen = TransformSpec::cohen(&fp(5)).unwrap();
        let spec = ChainSpec::new(pi(5, &[-1, 1]), cohen, 2);
        assert_eq!(iterate_chain(&spec).unwrap_err(), Error::PoleAtSeed);
    }

    #[test]
    fn sufficiency_not_necessity() {
        // x - 2 over F_7 fails the parity clause for the Cohen transform, but
        // the chain may still verify; the report never contradicts the verdict.
        let g = pi(7, &[-2, 1]);
        let sigma = sigma_star(&fp(7)).unwrap();
        assert!(!main_theorem_check(&g, &sigma, 2).unwrap().pass);
        let spec = ChainSpec::new(g, TransformSpec::cohen(&fp(7)).unwrap(), 2);
        let (_, report) = iterate_chain(&spec).unwrap();
        assert_eq!(report.records.len(), 2);
    }

    #[test]
    fn chains_from_passing_seeds_are_irreducible() {
        for (p, t) in [(5u64, 2usize), (7, 3), (13, 4), (13, 6)] {
            let field = fp(p);
            let sigma = Mat2::from_ints(&field, 2, 1, 1, 2).unwrap();
            let spec = TransformSpec::general(&field, sigma, t).unwrap();
            for n in 1..=2 {
                for (seed, _) in search_seeds(&spec, n, 3).unwrap() {
                    let (_, report) = iterate_chain(&ChainSpec::new(seed.clone(), spec.clone(), 3).rabin_degree_cap(512)).unwrap();
                    assert!(report.pass, "{seed} {}", report.to_text());
                }
            }
        }
    }

    #[test]
    fn report_json_has_spec_fields() {
        let spec = ChainSpec::new(pi(5, &[-2, 1]), TransformSpec::cohen(&fp(5)).unwrap(), 1);
        let (_, report) = iterate_chain(&spec).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let r = &v["records"][0];
        for key in ["degree", "expected_degree", "irreducible", "invariance_checks", "self_reciprocal", "structural_identity"] {
            assert!(!r[key].is_null(), "{key}");
        }
        assert_eq!(r["irreducible"], "true");
        assert!(r.get("wall_time_ms").is_none());
        let timed = iterate_chain(&spec.clone().record_timings(true)).unwrap().1;
        assert!(timed.records[0].wall_time_ms.is_some());
    }
}
