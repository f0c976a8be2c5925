//! Checkable hypotheses for the irreducibility theorems, reported as
//! [`Verdict`]s, and a search for seeds that satisfy them.
//!
//! Apart from [`menezes_criterion`], which is an equivalence, every check
//! here is a sufficient condition: a failing verdict does not mean the chain
//! breaks.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FEl, Field};
use crate::moebius::{self, Mat2, ProjPoint};
use crate::poly::{enumerate_irreducibles, Poly};
use crate::transforms::{self, FieldLevel, TransformKind, TransformSpec};

pub const THEOREM_POWER_SUBSTITUTION: &str = "power-substitution-irreducibility";
pub const THEOREM_MOEBIUS_CHAIN: &str = "moebius-power-chain";
pub const THEOREM_MOEBIUS_CHAIN_QUADRATIC: &str = "moebius-power-chain-quadratic";
pub const THEOREM_MCNAY_CHAIN: &str = "mcnay-transform-chain";
pub const THEOREM_SINGER_CHAIN: &str = "singer-transform-chain";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub theorem: String,
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verdict: {} ({})\n",
            if self.pass { "pass" } else { "fail" },
            self.theorem
        );
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("  [{status}] {}: {}\n", c.name, c.detail));
        }
        out
    }
}

struct Builder {
    theorem: &'static str,
    checks: Vec<Check>,
    required_skipped: bool,
}

impl Builder {
    fn new(theorem: &'static str) -> Self {
        Builder {
            theorem,
            checks: Vec::new(),
            required_skipped: false,
        }
    }

    fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
        ok
    }

    fn skip(&mut self, name: impl Into<String>, required: bool, detail: impl Into<String>) {
        self.required_skipped |= required;
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
        });
    }

    fn sufficient(&mut self) {
        self.record(
            "condition_kind",
            true,
            "sufficient condition: a failing verdict does not imply a reducible iterate",
        );
    }

    fn finish(self) -> Verdict {
        let pass = !self.required_skipped && self.checks.iter().all(|c| c.status != Status::Fail);
        Verdict {
            pass,
            theorem: self.theorem.to_string(),
            checks: self.checks,
        }
    }
}

fn prime_factors(t: usize) -> Vec<u128> {
    if t <= 1 {
        return Vec::new();
    }
    arith::prime_divisors(t as u128).expect("small t factors")
}

fn seed_irreducible(b: &mut Builder, g: &Poly) -> bool {
    let ok = g.is_monic() && g.is_irreducible();
    b.record(
        "seed_irreducible",
        ok,
        if ok { "monic and irreducible" } else { "seed must be monic and irreducible" },
    )
}

fn primes_divide(b: &mut Builder, name: &str, t: usize, modulus: u128, label: &str) -> bool {
    if t < 2 {
        return b.record(name, false, format!("t = {t} must be at least 2"));
    }
    let bad: Vec<String> = prime_factors(t)
        .into_iter()
        .filter(|l| !modulus.is_multiple_of(*l))
        .map(|l| l.to_string())
        .collect();
    if bad.is_empty() {
        b.record(name, true, format!("every prime factor of {t} divides {label} = {modulus}"))
    } else {
        b.record(name, false, format!("{} does not divide {label} = {modulus}", bad.join(", ")))
    }
}

fn guarantee_level(b: &mut Builder, n: usize, t: usize) -> bool {
    let full = n % 2 == 1 || (n * t).is_multiple_of(4);
    b.record(
        "guarantee_level",
        full,
        if full {
            "n odd or 4 | nt: every iterate is irreducible over F_q".to_string()
        } else {
            format!("n = {n}, t = {t}: only the conjugate-factor chain is guaranteed, over F_(q^2)")
        },
    )
}

/// `ℓ`-th power tests on `value` for every prime `ℓ | t`.
fn power_checks(b: &mut Builder, prefix: &str, value: &FEl, t: usize) {
    let group = value.field().order() - 1;
    for l in prime_factors(t) {
        let name = format!("{prefix}_not_{l}th_power");
        if !group.is_multiple_of(l) {
            b.skip(name, true, format!("{l} does not divide {group}"));
            continue;
        }
        if value.is_zero() {
            b.record(name, false, format!("{prefix} = 0"));
            continue;
        }
        let is_power = value.is_lth_power(l).expect("checked preconditions");
        b.record(
            name,
            !is_power,
            format!("{prefix} = {value} is {}an l-th power residue for l = {l}", if is_power { "" } else { "not " }),
        );
    }
}

/// Whether `f(x^t)` is irreducible, for monic irreducible `f ≠ x` of
/// degree `n` and exponent `e`: `gcd(t, (q^n − 1)/e) = 1`, every prime of
/// `t` divides `e`, and `4 | t` forces `4 | q^n − 1`.
pub fn menezes_criterion(f: &Poly, t: usize) -> Result<Verdict> {
    if t == 0 {
        return Err(Error::PreconditionViolated("t must be at least 1".into()));
    }
    if !f.is_monic() || !f.is_irreducible() || f == &Poly::x(f.field()) {
        return Err(Error::PreconditionViolated(
            "f must be monic irreducible and different from x".into(),
        ));
    }
    let n = f.degree().expect("nonzero") as u32;
    let order = arith::checked_pow(f.field().order(), n).ok_or(Error::OrderOverflow)? - 1;
    let e = f.exponent()?;
    let t128 = t as u128;
    let mut b = Builder::new(THEOREM_POWER_SUBSTITUTION);
    let cofactor = order / e;
    let g = arith::gcd(t128, cofactor);
    b.record(
        "gcd_condition",
        g == 1,
        format!("gcd(t, (q^n - 1)/e) = gcd({t}, {cofactor}) = {g}"),
    );
    let missing: Vec<String> = prime_factors(t)
        .into_iter()
        .filter(|l| e % l != 0)
        .map(|l| l.to_string())
        .collect();
    b.record(
        "primes_divide_exponent",
        missing.is_empty(),
        if missing.is_empty() {
            format!("every prime factor of {t} divides e = {e}")
        } else {
            format!("{} does not divide e = {e}", missing.join(", "))
        },
    );
    let four = !t.is_multiple_of(4) || order % 4 == 0;
    b.record(
        "four_condition",
        four,
        if !t.is_multiple_of(4) {
            "4 does not divide t".to_string()
        } else {
            format!("4 | t and q^n - 1 = {order} {} divisible by 4", if four { "is" } else { "is not" })
        },
    );
    Ok(b.finish())
}

/// [`menezes_criterion`], reporting a skipped (hence non-passing) verdict
/// when the group order cannot be factored within budget.
pub fn menezes_criterion_or_skip(f: &Poly, t: usize) -> Result<Verdict> {
    match menezes_criterion(f, t) {
        Err(Error::FactorizationBudgetExceeded(n)) => {
            let mut b = Builder::new(THEOREM_POWER_SUBSTITUTION);
            b.skip("exponent", true, format!("factorization budget exceeded for {n}"));
            Ok(b.finish())
        }
        other => other,
    }
}

/// Hypotheses of the chain theorem over `F_q`: prime factors of `t` divide
/// `q − 1`, `g(σ·∞) ≠ 0`, the parity clause for `q ≡ 3 (mod 4)` and even
/// `t`, and `η(g;σ)` not an `ℓ`-th power for each prime `ℓ | t`.
pub fn main_theorem_check(g: &Poly, sigma: &Mat2, t: usize) -> Result<Verdict> {
    if g.field() != sigma.field() {
        return Err(Error::CtxMismatch);
    }
    let field = g.field();
    let q = field.order();
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let mut b = Builder::new(THEOREM_MOEBIUS_CHAIN);
    b.sufficient();
    seed_irreducible(&mut b, g);
    primes_divide(&mut b, "t_primes_divide_q_minus_1", t, q - 1, "q - 1");
    let pole_ok = moebius::nonzero_at(g, &sigma.image_of_infinity())?;
    b.record(
        "seed_avoids_pole",
        pole_ok,
        format!("g(sigma(inf)) {} 0, sigma(inf) = {}", if pole_ok { "!=" } else { "=" }, sigma.image_of_infinity()),
    );
    if q % 4 == 3 && t.is_multiple_of(2) {
        b.record(
            "parity",
            n % 2 == 0,
            format!("q = 3 mod 4 and t even require even n; n = {n}"),
        );
    } else {
        b.record("parity", true, "not applicable");
    }
    if pole_ok {
        power_checks(&mut b, "eta", &transforms::eta(g, sigma)?, t);
    } else {
        b.skip("eta", true, "eta undefined at the pole");
    }
    Ok(b.finish())
}

fn factor_or_self(b: &mut Builder, g: &Poly, ext: &Field) -> Result<Option<Poly>> {
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if n % 2 == 1 {
        return Ok(Some(g.lift(ext)?));
    }
    match g.split_over_quadratic(ext) {
        Ok((r, _)) => Ok(Some(r)),
        Err(Error::PreconditionViolated(msg)) => {
            b.skip("conjugate_factor", true, msg);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Hypotheses of the chain theorem for `σ` over `F_{q^2}` and a seed over
/// `F_q`. `defined_over_base` declares that `R_{σ,t}` maps `F_q[x]` to
/// itself up to scalars; when not declared, descent is checked on the first
/// iterate only.
pub fn quadratic_check(g: &Poly, sigma: &Mat2, t: usize, defined_over_base: bool) -> Result<Verdict> {
    let base = g.field();
    let ext = sigma.field();
    if ext.base() != Some(base) || ext.degree() != 2 {
        return Err(Error::CtxMismatch);
    }
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let mut b = Builder::new(THEOREM_MOEBIUS_CHAIN_QUADRATIC);
    b.sufficient();
    seed_irreducible(&mut b, g);
    let q = base.order();
    primes_divide(&mut b, "t_primes_divide_q2_minus_1", t, q * q - 1, "q^2 - 1");
    let pole_ok = moebius::nonzero_at(g, &sigma.image_of_infinity())?;
    b.record(
        "seed_avoids_pole",
        pole_ok,
        format!("g(sigma(inf)) {} 0", if pole_ok { "!=" } else { "=" }),
    );
    if defined_over_base {
        b.record("defined_over_base", true, "declared for this family");
    } else if pole_ok && t >= 2 {
        let spec = TransformSpec::general(base, sigma.clone(), t)?;
        let ok = spec.apply_via_r(g).is_ok();
        b.record(
            "defined_over_base",
            ok,
            if ok {
                "first iterate descends to F_q (checked empirically)"
            } else {
                "first iterate does not descend to F_q"
            },
        );
    } else {
        b.skip("defined_over_base", true, "transform undefined for this seed");
    }
    if pole_ok {
        if let Some(r) = factor_or_self(&mut b, g, ext)? {
            let prefix = if n % 2 == 1 { "eta" } else { "eta_of_factor" };
            power_checks(&mut b, prefix, &transforms::eta(&r, sigma)?, t);
        }
    }
    guarantee_level(&mut b, n, t);
    Ok(b.finish())
}

/// The square test for the McNay transform: `g(λ)g(−λ)` (odd `n`) or
/// `r(λ)r(−λ)` for the conjugate factor `r` (even `n`) must not be a square
/// in `F_{q^2}`.
pub fn mcnay_check(g: &Poly, c: &FEl) -> Result<Verdict> {
    if g.field() != c.field() {
        return Err(Error::CtxMismatch);
    }
    let (lambda, _) = transforms::mcnay_sigma(c)?;
    let ext = lambda.field();
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let mut b = Builder::new(THEOREM_MCNAY_CHAIN);
    b.sufficient();
    seed_irreducible(&mut b, g);
    let minus = -&lambda;
    let pole_ok = moebius::nonzero_at(g, &ProjPoint::Finite(minus.clone()))?;
    b.record(
        "seed_avoids_pole",
        pole_ok,
        format!("g(-lambda) {} 0", if pole_ok { "!=" } else { "=" }),
    );
    if pole_ok {
        if let Some(r) = factor_or_self(&mut b, g, ext)? {
            let product = &r.evaluate(&lambda)? * &r.evaluate(&minus)?;
            let name = if n % 2 == 1 { "g_product_not_square" } else { "r_product_not_square" };
            let square = product.is_square()?;
            b.record(
                name,
                !square,
                format!("value {product} is {}a square in F_(q^2)", if square { "" } else { "not " }),
            );
        }
    }
    guarantee_level(&mut b, n, 2);
    Ok(b.finish())
}

/// Hypotheses for the transform built from `x^2 − x − c`: prime factors of
/// `t` divide `q^2 − 1`, and `g(−θ^q)/g(−θ)` (or the same for the conjugate
/// factor `r` when `n` is even) is not an `ℓ`-th power in `F_{q^2}`.
pub fn singer_check(g: &Poly, c: &FEl, t: usize) -> Result<Verdict> {
    if g.field() != c.field() {
        return Err(Error::CtxMismatch);
    }
    let theta = transforms::singer_theta(c)?;
    let ext = theta.field();
    let minus = -&theta;
    if !moebius::nonzero_at(g, &ProjPoint::Finite(minus.clone()))? {
        return Err(Error::PoleAtSeed);
    }
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let q = g.field().order();
    let mut b = Builder::new(THEOREM_SINGER_CHAIN);
    b.sufficient();
    seed_irreducible(&mut b, g);
    primes_divide(&mut b, "t_primes_divide_q2_minus_1", t, q * q - 1, "q^2 - 1");
    let d = moebius::pgl_order(&transforms::singer_companion(c)?)?;
    b.record(
        "companion_order",
        (q + 1).is_multiple_of(d),
        format!("D = {d} divides q + 1 = {}, so t = D is always admissible", q + 1),
    );
    if let Some(r) = factor_or_self(&mut b, g, ext)? {
        let minus_q = -&theta.frobenius()?;
        let ratio = r.evaluate(&minus_q)?.div(&r.evaluate(&minus)?)?;
        let prefix = if n % 2 == 1 { "eta" } else { "eta_of_factor" };
        power_checks(&mut b, prefix, &ratio, t);
    }
    guarantee_level(&mut b, n, t);
    Ok(b.finish())
}

/// The verdict a seed gets under a transform's theorem. `Ok(None)` when the
/// seed sits at the pole of a transform that treats that as an error.
pub fn verdict_for(spec: &TransformSpec, g: &Poly) -> Result<Option<Verdict>> {
    let v = match spec.kind() {
        TransformKind::Cohen => main_theorem_check(g, spec.sigma(), spec.t())?,
        TransformKind::Mcnay => mcnay_check(g, spec.c().expect("mcnay has c"))?,
        TransformKind::Singer => match singer_check(g, spec.c().expect("singer has c"), spec.t()) {
            Err(Error::PoleAtSeed) => return Ok(None),
            other => other?,
        },
        TransformKind::General => match spec.level() {
            FieldLevel::Base => main_theorem_check(g, spec.sigma(), spec.t())?,
            FieldLevel::Quadratic => quadratic_check(g, spec.sigma(), spec.t(), false)?,
        },
    };
    Ok(Some(v))
}

/// Monic irreducible seeds of degree `n` whose verdict passes, in canonical
/// order, at most `limit`.
pub fn search_seeds(spec: &TransformSpec, n: usize, limit: usize) -> Result<Vec<(Poly, Verdict)>> {
    let mut out = Vec::new();
    let mut failure = None;
    if limit == 0 {
        return Ok(out);
    }
    enumerate_irreducibles(spec.base(), n, limit, |g| {
        if failure.is_some() {
            return false;
        }
        match verdict_for(spec, g) {
            Ok(Some(v)) if v.pass => {
                out.push((g.clone(), v));
                true
            }
            Ok(_) => false,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::sigma_star;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn pi(p: u64, c: &[i64]) -> Poly {
        Poly::from_ints(&fp(p), c)
    }

    #[test]
    fn menezes_examples() {
        let v = menezes_criterion(&pi(3, &[1, 0, 1]), 2).unwrap();
        assert!(!v.pass);
        assert_eq!(v.failures(), vec!["gcd_condition"]);
        assert!(menezes_criterion(&pi(5, &[-2, 1]), 2).unwrap().pass);
        assert!(pi(5, &[-2, 0, 1]).is_irreducible());
        assert!(menezes_criterion(&pi(5, &[-2, 1]), 1).unwrap().pass);
        assert!(matches!(menezes_criterion(&pi(5, &[0, 1]), 2), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn menezes_matches_rabin_exhaustively() {
        for p in [2u64, 3, 5] {
            let field = fp(p);
            for n in 1..=4 {
                for f in enumerate_irreducibles(&field, n, usize::MAX, |f| f != &Poly::x(&field)).unwrap() {
                    for t in 1..=6 {
                        let v = menezes_criterion(&f, t).unwrap();
                        let oracle = f.substitute_power(t).unwrap().is_irreducible();
                        assert_eq!(v.pass, oracle, "{f} t={t}");
                    }
                }
            }
        }
    }

    /// If `f(x^t)` is irreducible and (t even ⟹ 4 | q^n − 1) then so is
    /// `f(x^(t^2))`.
    #[test]
    fn power_substitution_is_monotone() {
        for p in [3u64, 5] {
            let field = fp(p);
            for n in 1..=2 {
                for f in enumerate_irreducibles(&field, n, usize::MAX, |f| f != &Poly::x(&field)).unwrap() {
                    for t in [2usize, 3] {
                        let order = (p as usize).pow(n as u32) - 1;
                        if !f.substitute_power(t).unwrap().is_irreducible() || (t % 2 == 0 && !order.is_multiple_of(4)) {
                            continue;
                        }
                        assert!(f.substitute_power(t * t).unwrap().is_irreducible(), "{f} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn main_theorem_examples() {
        let s5 = sigma_star(&fp(5)).unwrap();
        let v = main_theorem_check(&pi(5, &[-2, 1]), &s5, 2).unwrap();
        assert!(v.pass, "{}", v.to_text());
        let s7 = sigma_star(&fp(7)).unwrap();
        let v = main_theorem_check(&pi(7, &[-2, 1]), &s7, 2).unwrap();
        assert!(!v.pass);
        assert!(v.failures().contains(&"parity"));
        let v = main_theorem_check(&pi(5, &[-2, 1]), &s5, 3).unwrap();
        assert!(v.failures().contains(&"t_primes_divide_q_minus_1"));
        let v = main_theorem_check(&pi(5, &[-1, 1]), &s5, 2).unwrap();
        assert!(v.failures().contains(&"seed_avoids_pole"));
        assert!(!v.pass);
    }

    #[test]
    fn verdict_json_schema() {
        let s5 = sigma_star(&fp(5)).unwrap();
        let v = main_theorem_check(&pi(5, &[-2, 1]), &s5, 2).unwrap();
        let value: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(value["pass"], true);
        assert_eq!(value["theorem"], THEOREM_MOEBIUS_CHAIN);
        for c in value["checks"].as_array().unwrap() {
            assert!(c["name"].is_string() && c["detail"].is_string());
            assert!(["pass", "fail", "skipped"].contains(&c["status"].as_str().unwrap()));
        }
    }

    #[test]
    fn cohen_seed_search() {
        let seeds = search_seeds(&TransformSpec::cohen(&fp(5)).unwrap(), 1, 10).unwrap();
        let polys: Vec<Poly> = seeds.into_iter().map(|(g, _)| g).collect();
        assert_eq!(polys, vec![pi(5, &[2, 1]), pi(5, &[3, 1])]);
        assert!(search_seeds(&TransformSpec::cohen(&fp(7)).unwrap(), 1, 10).unwrap().is_empty());
    }

    #[test]
    fn mcnay_examples() {
        let f7 = fp(7);
        let v = mcnay_check(&pi(7, &[3, 2, 1]), &f7.from_int(3)).unwrap();
        assert!(v.pass, "{}", v.to_text());
        let f13 = fp(13);
        let c = f13
            .elements()
            .find(|c| !c.is_square().unwrap() && !(&f13.one() - c).is_square().unwrap())
            .unwrap();
        let g = Poly::new(&f13, vec![c.clone(), f13.from_int(2), f13.one()]).unwrap();
        assert!(!mcnay_check(&g, &c).unwrap().pass);
        assert_eq!(
            mcnay_check(&pi(7, &[3, 2, 1]), &f7.from_int(2)).unwrap_err(),
            Error::NotNonSquare("2".into())
        );
        let seeds = search_seeds(&TransformSpec::mcnay(&f7.from_int(3)).unwrap(), 2, 100).unwrap();
        assert!(seeds.iter().any(|(g, _)| g == &pi(7, &[3, 2, 1])));
    }

    #[test]
    fn mcnay_odd_degree_never_passes() {
        // g(λ)g(−λ) = g(λ)·conj(g(λ)) is a norm from F_(q^2), hence in F_q,
        // and every element of F_q is a square in F_(q^2).
        for p in [3u64, 7, 11] {
            let field = fp(p);
            let c = field.elements().find(|x| !x.is_square().unwrap()).unwrap();
            for g in enumerate_irreducibles(&field, 1, usize::MAX, |_| true).unwrap() {
                assert!(!mcnay_check(&g, &c).unwrap().pass);
            }
        }
    }

    #[test]
    fn singer_examples() {
        let f5 = fp(5);
        let c = f5.from_int(3);
        let linear = enumerate_irreducibles(&f5, 1, usize::MAX, |_| true).unwrap();
        // For odd n the ratio is g(−θ)^(q−1), always a square, so only odd t can pass.
        assert!(linear.iter().all(|g| !singer_check(g, &c, 2).is_ok_and(|v| v.pass)));
        let passing: Vec<&Poly> = linear
            .iter()
            .filter(|g| singer_check(g, &c, 3).is_ok_and(|v| v.pass))
            .collect();
        assert!(!passing.is_empty());
        let v = singer_check(passing[0], &c, 7).unwrap();
        assert!(v.failures().contains(&"t_primes_divide_q2_minus_1"));
        assert!(v.check("companion_order").unwrap().detail.starts_with("D = "));
        let theta = transforms::singer_theta(&c).unwrap();
        // minimal polynomial of −θ: x^2 + x − c
        let pole = Poly::new(&f5, vec![-&c, f5.one(), f5.one()]).unwrap();
        assert!(pole.evaluate(&-&theta).unwrap().is_zero());
        assert_eq!(singer_check(&pole, &c, 2).unwrap_err(), Error::PoleAtSeed);
        assert_eq!(singer_check(&pole, &f5.one(), 2).unwrap_err(), Error::ReducibleModulus("1".into()));
    }

    #[test]
    fn companion_order_divides_q_plus_one() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let field = fp(p);
            for c in field.elements().filter(transforms::singer_modulus_irreducible) {
                let d = moebius::pgl_order(&transforms::singer_companion(&c).unwrap()).unwrap();
                assert_eq!((p as u128 + 1) % d, 0, "q={p} c={c}");
            }
        }
    }

    #[test]
    fn quadratic_check_guarantee_levels() {
        let f7 = fp(7);
        let c = f7.from_int(3);
        let (_, sigma) = transforms::mcnay_sigma(&c).unwrap();
        let v = quadratic_check(&pi(7, &[3, 2, 1]), &sigma, 2, true).unwrap();
        assert!(v.pass, "{}", v.to_text());
        let f5 = fp(5);
        let theta = transforms::singer_theta(&f5.from_int(3)).unwrap();
        let sigma = transforms::singer_sigma(&theta).unwrap();
        let g = enumerate_irreducibles(&f5, 2, usize::MAX, |g| {
            moebius::nonzero_at(g, &ProjPoint::Finite(-&theta)).unwrap()
        })
        .unwrap()
        .remove(0);
        let v = quadratic_check(&g, &sigma, 3, false).unwrap();
        assert_eq!(v.check("guarantee_level").unwrap().status, Status::Fail);
        assert_eq!(v.check("defined_over_base").unwrap().status, Status::Pass);
        let v = quadratic_check(&g, &sigma, 7, false).unwrap();
        assert!(v.failures().contains(&"t_primes_divide_q2_minus_1"));
    }
}
