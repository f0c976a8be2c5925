//! 2x2 invertible matrices acting on the projective line and on polynomials.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FEl, Field};
use crate::poly::Poly;

/// `[[a, b], [c, d]]` with nonzero determinant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: FEl,
    b: FEl,
    c: FEl,
    d: FEl,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FEl),
    Infinity,
}

impl Mat2 {
    pub fn new(a: FEl, b: FEl, c: FEl, d: FEl) -> Result<Mat2> {
        let field = a.field();
        if [&b, &c, &d].iter().any(|e| e.field() != field) {
            return Err(Error::CtxMismatch);
        }
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_ints(field: &Field, a: i64, b: i64, c: i64, d: i64) -> Result<Mat2> {
        Mat2::new(
            field.from_int(a),
            field.from_int(b),
            field.from_int(c),
            field.from_int(d),
        )
    }

    pub fn identity(field: &Field) -> Mat2 {
        Mat2::from_ints(field, 1, 0, 0, 1).expect("identity is invertible")
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn entries(&self) -> [&FEl; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> FEl {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// `[[d, -b], [-c, a]]`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// The exact inverse `(1/det) adj`.
    pub fn inverse(&self) -> Mat2 {
        let s = self.det().inv().expect("nonzero determinant");
        self.adjugate().scaled(&s)
    }

    fn scaled(&self, s: &FEl) -> Mat2 {
        Mat2 {
            a: &self.a * s,
            b: &self.b * s,
            c: &self.c * s,
            d: &self.d * s,
        }
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        if self.field() != other.field() {
            return Err(Error::CtxMismatch);
        }
        Ok(Mat2 {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        })
    }

    pub fn pow(&self, mut e: u128) -> Mat2 {
        let mut acc = Mat2::identity(self.field());
        let mut base = self.clone();
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e != 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// The same matrix over a field containing this one.
    pub fn lift(&self, to: &Field) -> Result<Mat2> {
        Ok(Mat2 {
            a: to.embed(&self.a)?,
            b: to.embed(&self.b)?,
            c: to.embed(&self.c)?,
            d: to.embed(&self.d)?,
        })
    }

    /// `σ·∞`: `a/c`, or `∞` when `c = 0`.
    pub fn image_of_infinity(&self) -> ProjPoint {
        act(self, &ProjPoint::Infinity).expect("same field")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl ProjPoint {
    pub fn finite(&self) -> Option<&FEl> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `σ·α = (aα + b)/(cα + d)`, with the pole sent to `∞` and `∞` sent to `a/c`.
pub fn act(sigma: &Mat2, point: &ProjPoint) -> Result<ProjPoint> {
    match point {
        ProjPoint::Infinity => {
            if sigma.c.is_zero() {
                Ok(ProjPoint::Infinity)
            } else {
                Ok(ProjPoint::Finite(sigma.a.div(&sigma.c)?))
            }
        }
        ProjPoint::Finite(x) => {
            let s = sigma.lift(x.field())?;
            let den = &(&s.c * x) + &s.d;
            if den.is_zero() {
                return Ok(ProjPoint::Infinity);
            }
            Ok(ProjPoint::Finite((&(&s.a * x) + &s.b).div(&den)?))
        }
    }
}

/// Whether `f` is nonzero at a projective point; at `∞` every nonzero
/// polynomial counts as nonvanishing.
pub fn nonzero_at(f: &Poly, point: &ProjPoint) -> Result<bool> {
    match point {
        ProjPoint::Infinity => Ok(!f.is_zero()),
        ProjPoint::Finite(x) => {
            let target = Field::common(f.field(), x.field())?;
            Ok(!f.evaluate(&target.embed(x)?)?.is_zero())
        }
    }
}

fn common_lift(sigma: &Mat2, f: &Poly) -> Result<(Mat2, Poly)> {
    let field = Field::common(sigma.field(), f.field())?;
    Ok((sigma.lift(&field)?, f.lift(&field)?))
}

/// `P_σ(f) = (cx + d)^n f((ax + b)/(cx + d))` with `n = deg f`, over the
/// smaller field containing both `σ` and `f`.
pub fn p_sigma(sigma: &Mat2, f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (s, f) = common_lift(sigma, f)?;
    let num = Poly::linear(&s.a, &s.b)?;
    let den = Poly::linear(&s.c, &s.d)?;
    f.homogenize(&num, &den)
}

/// Checks `P_τ(P_σ(f)) = P_{στ}(f)` exactly. Requires `f(σ·∞) ≠ 0`.
pub fn compose_law_check(sigma: &Mat2, tau: &Mat2, f: &Poly) -> Result<bool> {
    if !nonzero_at(f, &sigma.image_of_infinity())? {
        return Err(Error::HypothesisViolated("f vanishes at sigma(infinity)".into()));
    }
    let lhs = p_sigma(tau, &p_sigma(sigma, f)?)?;
    let rhs = p_sigma(&sigma.mul(tau)?, f)?;
    Ok(lhs == rhs)
}

/// The invariance matrix `σ·diag(ζ, 1)·adj(σ)`
/// `= [[ζad − bc, (1 − ζ)ab], [(ζ − 1)cd, ad − ζbc]]`,
/// projectively `σ ∘ (x ↦ ζx) ∘ σ^{-1}`. When the roots of `h` are `t`-th
/// roots closed under multiplication by `ζ`, the roots of `P_{σ^{-1}}(h)`
/// are closed under this matrix.
pub fn m_sigma_zeta(sigma: &Mat2, zeta: &FEl) -> Result<Mat2> {
    if zeta.is_zero() {
        return Err(Error::ZeroZeta);
    }
    let field = Field::common(sigma.field(), zeta.field())?;
    let s = sigma.lift(&field)?;
    let z = field.embed(zeta)?;
    let one = field.one();
    let (a, b, c, d) = (&s.a, &s.b, &s.c, &s.d);
    Mat2::new(
        &(&z * &(a * d)) - &(b * c),
        &(&one - &z) * &(a * b),
        &(&z - &one) * &(c * d),
        &(a * d) - &(&z * &(b * c)),
    )
}

/// `adj(σ)·diag(ζ, 1)·σ = [[ζad − bc, (ζ − 1)bd], [(1 − ζ)ac, ad − ζbc]]`,
/// projectively `σ^{-1} ∘ (x ↦ ζx) ∘ σ`. Kept for comparison with
/// [`m_sigma_zeta`]; the two agree when `ab = −bd` and `cd = −ac`, e.g. for
/// `[[1, 1], [1, −1]]`.
pub fn m_sigma_zeta_conjugate(sigma: &Mat2, zeta: &FEl) -> Result<Mat2> {
    if zeta.is_zero() {
        return Err(Error::ZeroZeta);
    }
    let field = Field::common(sigma.field(), zeta.field())?;
    let s = sigma.lift(&field)?;
    let z = field.embed(zeta)?;
    let diag = Mat2::new(z, field.zero(), field.zero(), field.one())?;
    s.adjugate().mul(&diag)?.mul(&s)
}

/// Order of the image of `σ` in `PGL_2(F_Q)`, `Q` the matrix field's order.
///
/// Every element of `PGL_2(F_Q)` has order dividing `Q − 1`, `Q + 1` or the
/// characteristic, so the order is the least divisor `D` of one of these
/// with `σ^D` scalar.
pub fn pgl_order(sigma: &Mat2) -> Result<u128> {
    let field = sigma.field();
    let q = field.order();
    let mut best: Option<u128> = None;
    for n in [q - 1, q + 1, field.characteristic() as u128] {
        if !sigma.pow(n).is_scalar() {
            continue;
        }
        let mut e = n;
        for (prime, _) in arith::factorize(n)? {
            while e % prime == 0 && sigma.pow(e / prime).is_scalar() {
                e /= prime;
            }
        }
        best = Some(best.map_or(e, |b| b.min(e)));
    }
    best.ok_or_else(|| Error::PreconditionViolated("matrix order not found".into()))
}

/// True iff `P_M(f)` is a nonzero scalar multiple of `f` of the same degree:
/// for squarefree `f` this says the root set of `f` is closed under `M`.
pub fn fixes_root_set(f: &Poly, m: &Mat2) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, f) = common_lift(m, f)?;
    let image = p_sigma(&m, &f)?;
    Ok(image.degree() == f.degree() && image.monic()? == f.monic()?)
}
