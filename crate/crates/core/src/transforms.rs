//! The transform `R_{σ,t} = P_{σ^{-1}} ∘ S_t ∘ P_σ`, the obstruction
//! element `η(g;σ)`, and three classical special cases computed from their
//! closed formulas.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FEl, Field};
use crate::moebius::{self, Mat2, ProjPoint};
use crate::poly::Poly;
use crate::text;

/// Elements are searched exhaustively for `θ` in characteristic 2 up to
/// this field order.
const EVEN_ROOT_SEARCH_LIMIT: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    General,
    Cohen,
    Mcnay,
    Singer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldLevel {
    Base,
    Quadratic,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::General => "general",
            TransformKind::Cohen => "cohen",
            TransformKind::Mcnay => "mcnay",
            TransformKind::Singer => "singer",
        })
    }
}

impl fmt::Display for FieldLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldLevel::Base => "base",
            FieldLevel::Quadratic => "quadratic",
        })
    }
}

/// Exact formula output and its monic normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutput {
    pub raw: Poly,
    pub monic: Poly,
}

impl TransformOutput {
    fn from_raw(raw: Poly) -> Result<TransformOutput> {
        let monic = raw.monic()?;
        Ok(TransformOutput { raw, monic })
    }
}

/// A fully resolved transform: which family, the matrix, the power `t`, and
/// for the quadratic families the parameter `c` and the field `F_{q^2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformSpec {
    kind: TransformKind,
    base: Field,
    sigma: Mat2,
    t: usize,
    c: Option<FEl>,
}

impl TransformSpec {
    /// `R_{σ,t}` for `σ` over `base` or over the canonical `F_{q^2}` above it.
    pub fn general(base: &Field, sigma: Mat2, t: usize) -> Result<TransformSpec> {
        if t < 2 {
            return Err(Error::PreconditionViolated("t must be at least 2".into()));
        }
        let level_ok = sigma.field() == base
            || (sigma.field().base() == Some(base) && sigma.field().degree() == 2);
        if !level_ok {
            return Err(Error::CtxMismatch);
        }
        Ok(TransformSpec {
            kind: TransformKind::General,
            base: base.clone(),
            sigma,
            t,
            c: None,
        })
    }

    /// `g ↦ (2x)^n g((x + 1/x)/2)`, with `σ* = [[1, 1], [1, −1]]`, `t = 2`.
    pub fn cohen(base: &Field) -> Result<TransformSpec> {
        if !base.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(TransformSpec {
            kind: TransformKind::Cohen,
            base: base.clone(),
            sigma: sigma_star(base)?,
            t: 2,
            c: None,
        })
    }

    /// `g ↦ (2x)^n g((x^2 + c)/(2x))` for a non-square `c`, with
    /// `σ = [[λ, λ], [−1, 1]]`, `λ^2 = c`, `t = 2`.
    pub fn mcnay(c: &FEl) -> Result<TransformSpec> {
        let (_, sigma) = mcnay_sigma(c)?;
        Ok(TransformSpec {
            kind: TransformKind::Mcnay,
            base: c.field().clone(),
            sigma,
            t: 2,
            c: Some(c.clone()),
        })
    }

    /// `g ↦ h^n g(f/h)` built from a root `θ` of `x^2 − x − c`, with
    /// `σ^θ = [[θ, −θ^q], [−1, 1]]`.
    pub fn singer(c: &FEl, t: usize) -> Result<TransformSpec> {
        if t < 2 {
            return Err(Error::PreconditionViolated("t must be at least 2".into()));
        }
        let theta = singer_theta(c)?;
        Ok(TransformSpec {
            kind: TransformKind::Singer,
            base: c.field().clone(),
            sigma: singer_sigma(&theta)?,
            t,
            c: Some(c.clone()),
        })
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn sigma(&self) -> &Mat2 {
        &self.sigma
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn c(&self) -> Option<&FEl> {
        self.c.as_ref()
    }

    pub fn level(&self) -> FieldLevel {
        if self.sigma.field() == &self.base {
            FieldLevel::Base
        } else {
            FieldLevel::Quadratic
        }
    }

    /// The field `σ` lives in.
    pub fn sigma_field(&self) -> &Field {
        self.sigma.field()
    }

    /// One step of the chain over the base field, monic and raw.
    pub fn apply(&self, g: &Poly) -> Result<TransformOutput> {
        if g.field() != &self.base {
            return Err(Error::CtxMismatch);
        }
        match self.kind {
            TransformKind::Cohen => cohen_r(g),
            TransformKind::Mcnay => mcnay_t(g, self.c.as_ref().expect("mcnay has c")),
            TransformKind::Singer => singer_q(g, self.c.as_ref().expect("singer has c"), self.t),
            TransformKind::General => self.apply_via_r(g),
        }
    }

    /// `R_{σ,t}(g)` computed literally, descended to the base field when `σ`
    /// lives in `F_{q^2}`.
    pub fn apply_via_r(&self, g: &Poly) -> Result<TransformOutput> {
        let out = r_sigma_t(g, &self.sigma, self.t)?;
        if self.level() == FieldLevel::Base {
            return Ok(out);
        }
        let monic = descend(&out.monic).ok_or_else(|| {
            Error::HypothesisViolated("transform output does not descend to the base field".into())
        })?;
        Ok(TransformOutput {
            raw: out.raw,
            monic,
        })
    }

    pub fn to_config(&self) -> TransformConfig {
        TransformConfig {
            kind: self.kind,
            q: self.base.order_spec(),
            sigma: Some(text::format_matrix(&self.sigma)),
            t: Some(self.t),
            c: self.c.as_ref().map(FEl::to_string),
            field_level: Some(self.level()),
        }
    }
}

/// Serializable form of a [`TransformSpec`]: matrices and elements in their
/// text formats. Unset fields take the family defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformConfig {
    pub kind: TransformKind,
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_level: Option<FieldLevel>,
}

impl TransformConfig {
    pub fn resolve(&self) -> Result<TransformSpec> {
        let base = text::parse_field(&self.q)?;
        let parse_c = || -> Result<FEl> {
            let c = self
                .c
                .as_deref()
                .ok_or_else(|| Error::PreconditionViolated(format!("{} requires c", self.kind)))?;
            text::parse_element(&base, c)
        };
        let spec = match self.kind {
            TransformKind::Cohen => TransformSpec::cohen(&base)?,
            TransformKind::Mcnay => TransformSpec::mcnay(&parse_c()?)?,
            TransformKind::Singer => TransformSpec::singer(&parse_c()?, self.t.unwrap_or(2))?,
            TransformKind::General => {
                let sigma_field = match self.field_level.unwrap_or(FieldLevel::Base) {
                    FieldLevel::Base => base.clone(),
                    FieldLevel::Quadratic => base.extension(2)?,
                };
                let sigma = self
                    .sigma
                    .as_deref()
                    .ok_or_else(|| Error::PreconditionViolated("general requires sigma".into()))?;
                let sigma = text::parse_matrix(&sigma_field, sigma)?;
                TransformSpec::general(&base, sigma, self.t.unwrap_or(2))?
            }
        };
        let mismatch = |what: &str| Error::PreconditionViolated(format!("{} fixes {what}", self.kind));
        if self.kind != TransformKind::General {
            if let Some(s) = &self.sigma {
                if text::parse_matrix(spec.sigma_field(), s)? != spec.sigma {
                    return Err(mismatch("sigma"));
                }
            }
            if self.field_level.is_some_and(|l| l != spec.level()) {
                return Err(mismatch("the field level"));
            }
            if matches!(self.kind, TransformKind::Cohen | TransformKind::Mcnay)
                && self.t.is_some_and(|t| t != 2)
            {
                return Err(mismatch("t = 2"));
            }
        }
        Ok(spec)
    }
}

/// `[[1, 1], [1, −1]]`.
pub fn sigma_star(field: &Field) -> Result<Mat2> {
    Mat2::from_ints(field, 1, 1, 1, -1)
}

/// Of two roots, the one whose flat coordinate vector (constant first) is
/// lexicographically smaller.
fn lex_smaller(a: FEl, b: FEl) -> FEl {
    if b.raw() < a.raw() {
        b
    } else {
        a
    }
}

/// `λ` with `λ^2 = c` in `F_{q^2}` and `σ = [[λ, λ], [−1, 1]]`.
pub fn mcnay_sigma(c: &FEl) -> Result<(FEl, Mat2)> {
    let base = c.field();
    if !base.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if c.is_square()? {
        return Err(Error::NotNonSquare(c.to_string()));
    }
    let ext = base.extension(2)?;
    let root = ext.embed(c)?.sqrt()?.ok_or(Error::InternalDescentFailure)?;
    let lambda = lex_smaller(root.clone(), -&root);
    let sigma = Mat2::new(lambda.clone(), lambda.clone(), ext.from_int(-1), ext.one())?;
    Ok((lambda, sigma))
}

/// Whether `x^2 − x − c` is irreducible over the field of `c`.
pub fn singer_modulus_irreducible(c: &FEl) -> bool {
    let field = c.field();
    Poly::new(field, vec![-c, field.from_int(-1), field.one()])
        .expect("same field")
        .is_irreducible()
}

/// The root `θ ∈ F_{q^2}` of `x^2 − x − c` with the smaller coordinate vector.
pub fn singer_theta(c: &FEl) -> Result<FEl> {
    if !singer_modulus_irreducible(c) {
        return Err(Error::ReducibleModulus(c.to_string()));
    }
    let ext = c.field().extension(2)?;
    let c2 = ext.embed(c)?;
    let root = if ext.is_odd() {
        // (1 + s)/2 with s^2 = 1 + 4c
        let disc = &ext.one() + &(&ext.from_int(4) * &c2);
        let s = disc.sqrt()?.ok_or(Error::InternalDescentFailure)?;
        (&ext.one() + &s).div(&ext.from_int(2))?
    } else {
        if ext.order() > EVEN_ROOT_SEARCH_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "root search in a field of order {}",
                ext.order()
            )));
        }
        ext.elements()
            .find(|z| (&(z * z) - z) == c2)
            .ok_or(Error::InternalDescentFailure)?
    };
    let other = &ext.one() - &root;
    Ok(lex_smaller(root, other))
}

/// `σ^θ = [[θ, −θ^q], [−1, 1]]`.
pub fn singer_sigma(theta: &FEl) -> Result<Mat2> {
    let ext = theta.field();
    Mat2::new(theta.clone(), -&theta.frobenius()?, ext.from_int(-1), ext.one())
}

/// `A_c = [[0, 1], [c, 1]]`.
pub fn singer_companion(c: &FEl) -> Result<Mat2> {
    let field = c.field();
    Mat2::new(field.zero(), field.one(), c.clone(), field.one())
}

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        Err(Error::PreconditionViolated("t must be at least 2".into()))
    } else {
        Ok(())
    }
}

/// `g^{R_{σ,t}} = P_{σ^{-1}}(S_t(P_σ(g)))` with the exact inverse of `σ`.
pub fn r_sigma_t(g: &Poly, sigma: &Mat2, t: usize) -> Result<TransformOutput> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_t(t)?;
    if !moebius::nonzero_at(g, &sigma.image_of_infinity())? {
        return Err(Error::PoleAtSeed);
    }
    let stretched = moebius::p_sigma(sigma, g)?.substitute_power(t)?;
    TransformOutput::from_raw(moebius::p_sigma(&sigma.inverse(), &stretched)?)
}

/// `η(g;σ) = (σ^{-1}·∞)^n g(σ·0)/g(σ·∞)`: generically
/// `(−d/c)^n g(b/d) g(a/c)^{-1}`, with `(−d/a)^n g(b/d)` when `c = 0` and
/// `(−b/c)^n g(a/c)^{-1}` when `d = 0`. `g` is normalized to monic first.
pub fn eta(g: &Poly, sigma: &Mat2) -> Result<FEl> {
    let n = g.degree().ok_or(Error::ZeroPolynomial)? as u128;
    let g = &g.monic()?;
    let field = Field::common(g.field(), sigma.field())?;
    let s = sigma.lift(&field)?;
    let [a, b, c, d] = s.entries();
    let at = |x: &FEl| g.evaluate(x);
    let neg_ratio = |num: &FEl, den: &FEl| -> Result<FEl> { Ok((-num).div(den)?.pow(n)) };
    if c.is_zero() {
        return Ok(&neg_ratio(d, a)? * &at(&b.div(d)?)?);
    }
    let at_pole = at(&a.div(c)?)?;
    if at_pole.is_zero() {
        return Err(Error::PoleAtSeed);
    }
    if d.is_zero() {
        return neg_ratio(b, c)?.div(&at_pole);
    }
    (&neg_ratio(d, c)? * &at(&b.div(d)?)?).div(&at_pole)
}

/// `(2x)^n g((x + 1/x)/2) = Σ g_i (x^2 + 1)^i (2x)^(n−i)`.
pub fn cohen_r(g: &Poly) -> Result<TransformOutput> {
    let field = g.field();
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let num = Poly::from_ints(field, &[1, 0, 1]);
    let den = Poly::from_ints(field, &[0, 2]);
    TransformOutput::from_raw(g.homogenize(&num, &den)?)
}

/// `(2x)^n g((x^2 + c)/(2x)) = Σ g_i (x^2 + c)^i (2x)^(n−i)`, `c` a non-square.
pub fn mcnay_t(g: &Poly, c: &FEl) -> Result<TransformOutput> {
    let field = g.field();
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if c.field() != field {
        return Err(Error::CtxMismatch);
    }
    if c.is_square()? {
        return Err(Error::NotNonSquare(c.to_string()));
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let num = Poly::new(field, vec![c.clone(), field.zero(), field.one()])?;
    let den = Poly::from_ints(field, &[0, 2]);
    TransformOutput::from_raw(g.homogenize(&num, &den)?)
}

/// `f = (θ(x + θ^q)^t − θ^q(x + θ)^t)/(θ^q − θ)` and
/// `h = ((x + θ)^t − (x + θ^q)^t)/(θ^q − θ)`, both descended to `F_q`.
pub fn singer_fh(theta: &FEl, t: usize) -> Result<(Poly, Poly)> {
    check_t(t)?;
    let ext = theta.field();
    let theta_q = theta.frobenius()?;
    let scale = (&theta_q - theta).inv()?;
    let a = Poly::linear(&ext.one(), &theta_q)?.pow(t as u64);
    let b = Poly::linear(&ext.one(), theta)?.pow(t as u64);
    let f = (&a.scale(theta)? - &b.scale(&theta_q)?).scale(&scale)?;
    let h = (&b - &a).scale(&scale)?;
    let f = f.coeffs_in_base().ok_or(Error::InternalDescentFailure)?;
    let h = h.coeffs_in_base().ok_or(Error::InternalDescentFailure)?;
    Ok((f, h))
}

/// `h(x)^n g(f(x)/h(x)) = Σ g_i f^i h^(n−i)`, computed over `F_q`.
pub fn singer_q(g: &Poly, c: &FEl, t: usize) -> Result<TransformOutput> {
    if c.field() != g.field() {
        return Err(Error::CtxMismatch);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let theta = singer_theta(c)?;
    if !moebius::nonzero_at(g, &ProjPoint::Finite(-&theta))? {
        return Err(Error::PoleAtSeed);
    }
    let (f, h) = singer_fh(&theta, t)?;
    TransformOutput::from_raw(g.homogenize(&f, &h)?)
}

/// The monic polynomial over the immediate base proportional to `g`, if
/// some nonzero scalar multiple of `g` has all coefficients there. A
/// polynomial over a prime field is simply made monic.
pub fn descend(g: &Poly) -> Option<Poly> {
    let monic = g.monic().ok()?;
    if g.field().base().is_none() {
        return Some(monic);
    }
    monic.coeffs_in_base()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::sample_irreducibles;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn pi(p: u64, c: &[i64]) -> Poly {
        Poly::from_ints(&fp(p), c)
    }

    #[test]
    fn r_transform_examples() {
        let f5 = fp(5);
        let g = pi(5, &[-2, 1]);
        let out = r_sigma_t(&g, &sigma_star(&f5).unwrap(), 2).unwrap();
        assert_eq!(out.raw, pi(5, &[3, 3, 3]));
        assert_eq!(out.monic, pi(5, &[1, 1, 1]));
        let next = r_sigma_t(&out.monic, &sigma_star(&f5).unwrap(), 2).unwrap();
        assert_eq!(next.monic, pi(5, &[1, 2, 1, 2, 1]));
        let id = r_sigma_t(&g, &Mat2::identity(&f5), 3).unwrap();
        assert_eq!(id.raw, g.substitute_power(3).unwrap());
    }

    #[test]
    fn r_transform_errors() {
        let f5 = fp(5);
        let s = sigma_star(&f5).unwrap();
        assert_eq!(r_sigma_t(&pi(5, &[-1, 1]), &s, 2).unwrap_err(), Error::PoleAtSeed);
        assert_eq!(r_sigma_t(&Poly::zero(&f5), &s, 2).unwrap_err(), Error::ZeroPolynomial);
        assert!(matches!(r_sigma_t(&pi(5, &[-2, 1]), &s, 1), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn eta_examples() {
        let f5 = fp(5);
        let s = sigma_star(&f5).unwrap();
        let g = pi(5, &[-2, 1]);
        // (-d/c)^n = 1, so g(-1)/g(1) = (-3)/(-1) = 3
        assert_eq!(eta(&g, &s).unwrap(), f5.from_int(3));
        assert!(!eta(&g, &s).unwrap().is_square().unwrap());
        assert_eq!(eta(&pi(5, &[-1, 1]), &s).unwrap_err(), Error::PoleAtSeed);
        let upper = Mat2::from_ints(&f5, 2, 1, 0, 3).unwrap();
        // (-d/a)^n g(b/d) = (-3/2)^1 * (2 - 2) with b/d = 2
        assert_eq!(eta(&g, &upper).unwrap(), f5.zero());
        let lower = Mat2::from_ints(&f5, 1, 2, 1, 0).unwrap();
        // (-b/c)^n / g(a/c) = -2 / (1 - 2) = 2
        assert_eq!(eta(&g, &lower).unwrap(), f5.from_int(2));
    }

    /// `η` equals the norm of a root of `P_σ(g)`, i.e. `(−1)^n b_0/b_n`.
    #[test]
    fn eta_is_a_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [3u64, 5, 7, 13] {
            let field = fp(p);
            for n in 1..=4 {
                for g in sample_irreducibles(&field, n, 4, rng.gen(), 10_000, |_| true).unwrap() {
                    let e: Vec<FEl> = (0..4).map(|_| field.from_index(rng.gen_range(0..p as u128))).collect();
                    let Ok(s) = Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) else {
                        continue;
                    };
                    let Ok(value) = eta(&g, &s) else { continue };
                    let h = moebius::p_sigma(&s, &g).unwrap();
                    let (b0, bn) = (h.coeff(0), h.leading().unwrap());
                    let sign = if n % 2 == 0 { field.one() } else { field.from_int(-1) };
                    assert_eq!(value, &sign * &b0.div(&bn).unwrap());
                    if n > 1 {
                        let ext = Field::with_modulus(&h.monic().unwrap()).unwrap();
                        assert_eq!(ext.generator().unwrap().norm_to_base().unwrap(), value);
                    }
                }
            }
        }
    }

    #[test]
    fn cohen_examples() {
        assert_eq!(cohen_r(&pi(5, &[-2, 1])).unwrap().raw, pi(5, &[1, 1, 1]));
        assert_eq!(cohen_r(&pi(5, &[0, 1])).unwrap().raw, pi(5, &[1, 0, 1]));
        assert_eq!(cohen_r(&pi(2, &[1, 1])).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(
            cohen_r(&pi(5, &[1, 1, 1])).unwrap().monic,
            pi(5, &[1, 2, 1, 2, 1])
        );
    }

    #[test]
    fn cohen_agrees_with_r_up_to_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let odd_q: Vec<u64> = (3..100).filter(|&p| crate::arith::is_prime(p as u128)).collect();
        for _ in 0..60 {
            let p = odd_q[rng.gen_range(0..odd_q.len())];
            let field = fp(p);
            let n = rng.gen_range(1..=4);
            for g in sample_irreducibles(&field, n, 2, rng.gen(), 10_000, |g| {
                !g.evaluate(&field.one()).unwrap().is_zero()
            })
            .unwrap()
            {
                let via_r = r_sigma_t(&g, &sigma_star(&field).unwrap(), 2).unwrap();
                let direct = cohen_r(&g).unwrap();
                assert_eq!(via_r.monic, direct.monic, "{g}");
                assert_eq!(direct.raw.degree(), Some(2 * n));
            }
        }
        // the raw outputs differ by the scalar 3 on x - 2 over F_5
        let g = pi(5, &[-2, 1]);
        let via_r = r_sigma_t(&g, &sigma_star(&fp(5)).unwrap(), 2).unwrap();
        assert_eq!(via_r.raw, cohen_r(&g).unwrap().raw.scale(&fp(5).from_int(3)).unwrap());
    }

    #[test]
    fn mcnay_examples() {
        let f7 = fp(7);
        let c = f7.from_int(3);
        assert_eq!(mcnay_t(&pi(7, &[0, 1]), &c).unwrap().raw, pi(7, &[3, 0, 1]));
        let out = mcnay_t(&pi(7, &[3, 2, 1]), &c).unwrap();
        assert_eq!(out.raw, pi(7, &[2, 5, 4, 4, 1]));
        assert!(out.raw.is_irreducible());
        assert_eq!(mcnay_t(&pi(7, &[0, 1]), &f7.from_int(2)).unwrap_err(), Error::NotNonSquare("2".into()));
        let (lambda, _) = mcnay_sigma(&c).unwrap();
        assert_eq!(&lambda * &lambda, lambda.field().embed(&c).unwrap());
    }

    #[test]
    fn mcnay_agrees_with_r_over_quadratic_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [3u64, 7, 11, 13, 17, 19] {
            let field = fp(p);
            let c = field.elements().find(|x| !x.is_square().unwrap()).unwrap();
            let spec = TransformSpec::mcnay(&c).unwrap();
            let (lambda, _) = mcnay_sigma(&c).unwrap();
            for n in 1..=4 {
                for g in sample_irreducibles(&field, n, 3, rng.gen(), 10_000, |_| true).unwrap() {
                    if g.evaluate(&-&lambda).unwrap().is_zero() {
                        continue;
                    }
                    let direct = mcnay_t(&g, &c).unwrap();
                    let via_r = spec.apply_via_r(&g).unwrap();
                    assert_eq!(direct.monic, via_r.monic, "{g}");
                    // (2λ)^n scalar
                    let two_lambda = &lambda.field().from_int(2) * &lambda;
                    let scaled = via_r.raw.scale(&two_lambda.pow(n as u128)).unwrap();
                    assert_eq!(scaled, direct.raw.lift(lambda.field()).unwrap());
                }
            }
        }
    }

    #[test]
    fn singer_polynomials_descend() {
        let f5 = fp(5);
        let c = f5.from_int(3);
        let theta = singer_theta(&c).unwrap();
        let ext = theta.field();
        assert_eq!(&(&theta * &theta) - &theta, ext.embed(&c).unwrap());
        let (f, h) = singer_fh(&theta, 2).unwrap();
        assert_eq!(f, pi(5, &[2, 0, 4]));
        assert_eq!(h, pi(5, &[4, 3]));
        for t in [2usize, 3, 4, 6] {
            let (f, h) = singer_fh(&theta, t).unwrap();
            assert_eq!((f.degree(), h.degree()), (Some(t), Some(t - 1)));
        }
        assert_eq!(
            singer_theta(&f5.from_int(1)).unwrap_err(),
            Error::ReducibleModulus("1".into())
        );
    }

    #[test]
    fn singer_agrees_with_r_over_quadratic_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [3u64, 5, 7, 11, 13] {
            let field = fp(p);
            for c in field.elements().filter(singer_modulus_irreducible).take(2) {
                for t in [2usize, 3, 4] {
                    let spec = TransformSpec::singer(&c, t).unwrap();
                    for n in 1..=3 {
                        for g in sample_irreducibles(&field, n, 2, rng.gen(), 10_000, |_| true).unwrap() {
                            let Ok(direct) = singer_q(&g, &c, t) else {
                                assert_eq!(spec.apply_via_r(&g).unwrap_err(), Error::PoleAtSeed);
                                continue;
                            };
                            let via_r = spec.apply_via_r(&g).unwrap();
                            assert_eq!(direct.monic, via_r.monic, "{g} c={c} t={t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn singer_in_characteristic_two() {
        let f2 = fp(2);
        let c = f2.one();
        let theta = singer_theta(&c).unwrap();
        let (f, h) = singer_fh(&theta, 3).unwrap();
        assert_eq!((f.degree(), h.degree()), (Some(3), Some(2)));
        let g = pi(2, &[1, 1, 0, 1]);
        let spec = TransformSpec::singer(&c, 3).unwrap();
        assert_eq!(singer_q(&g, &c, 3).unwrap().monic, spec.apply_via_r(&g).unwrap().monic);
    }

    #[test]
    fn singer_identity_seed_gives_f() {
        let f5 = fp(5);
        let c = f5.from_int(3);
        let theta = singer_theta(&c).unwrap();
        let (f, _) = singer_fh(&theta, 3).unwrap();
        assert_eq!(singer_q(&pi(5, &[0, 1]), &c, 3).unwrap().raw, f);
    }

    #[test]
    fn descent_examples() {
        let f5 = fp(5);
        let f25 = f5.extension(2).unwrap();
        let y = f25.generator().unwrap();
        assert_eq!(descend(&pi(5, &[3, 3, 3])).unwrap(), pi(5, &[1, 1, 1]));
        let lifted = pi(5, &[1, 1, 1]).lift(&f25).unwrap().scale(&y).unwrap();
        assert_eq!(descend(&lifted).unwrap(), pi(5, &[1, 1, 1]));
        assert_eq!(descend(&Poly::new(&f25, vec![y, f25.one()]).unwrap()), None);
    }

    #[test]
    fn config_round_trip() {
        let f7 = fp(7);
        for spec in [
            TransformSpec::cohen(&f7).unwrap(),
            TransformSpec::mcnay(&f7.from_int(3)).unwrap(),
            TransformSpec::singer(&fp(5).from_int(3), 3).unwrap(),
            TransformSpec::general(&f7, Mat2::from_ints(&f7, 1, 2, 3, 4).unwrap(), 3).unwrap(),
        ] {
            let json = serde_json::to_string(&spec.to_config()).unwrap();
            let back: TransformConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(back.resolve().unwrap(), spec, "{json}");
        }
        let bad = TransformConfig {
            kind: TransformKind::Cohen,
            q: "7".into(),
            sigma: None,
            t: Some(3),
            c: None,
            field_level: None,
        };
        assert!(bad.resolve().is_err());
    }
}
