//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored flat, constant term first, each coefficient
//! occupying `field.absolute_degree()` residues. The zero polynomial has no
//! coefficients and degree `None`.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{reduce_mod_monic, FEl, Field};

/// Budget for exhaustive enumeration: at most this many candidates `q^n`.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// Seed of the ChaCha8 stream that drives equal-degree splitting.
pub const SPLIT_RNG_SEED: u64 = 0x5EED_0FC0_FFEE;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    data: Vec<u64>,
}

// ---- lazy-reduction kernel ----------------------------------------------
//
// Prime fields and extensions directly over F_p accumulate products into
// unreduced u128 "lanes" (2k-1 per coefficient) and only reduce once per
// output coefficient. Deeper towers fall back to element-wise arithmetic.

struct Lanes<'a> {
    p: u64,
    k: usize,
    m: &'a [u64],
}

impl<'a> Lanes<'a> {
    fn for_field(field: &'a Field) -> Option<Lanes<'a>> {
        if field.is_prime_field() {
            return Some(Lanes {
                p: field.p(),
                k: 1,
                m: &[],
            });
        }
        let base = field.base()?;
        if !base.is_prime_field() {
            return None;
        }
        Some(Lanes {
            p: field.p(),
            k: field.degree(),
            m: field.modulus()?.raw(),
        })
    }

    #[inline]
    fn width(&self) -> usize {
        2 * self.k - 1
    }

    #[inline]
    fn acc(&self, lanes: &mut [u128], a: &[u64], b: &[u64]) {
        if self.k == 1 {
            lanes[0] += (a[0] * b[0]) as u128;
            return;
        }
        for (r, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (s, &y) in b.iter().enumerate() {
                lanes[r + s] += (x * y) as u128;
            }
        }
    }

    #[inline]
    fn settle(&self, lanes: &[u128], out: &mut [u64]) {
        let p = self.p as u128;
        if self.k == 1 {
            out[0] = (lanes[0] % p) as u64;
            return;
        }
        let mut tmp = [0u64; 32];
        let w = self.width();
        if w > tmp.len() {
            let mut tmp: Vec<u64> = lanes.iter().map(|l| (l % p) as u64).collect();
            reduce_mod_monic(self.p, self.k, self.m, &mut tmp);
            out.copy_from_slice(&tmp[..self.k]);
            return;
        }
        for (t, l) in tmp.iter_mut().zip(lanes) {
            *t = (l % p) as u64;
        }
        reduce_mod_monic(self.p, self.k, self.m, &mut tmp[..w]);
        out.copy_from_slice(&tmp[..self.k]);
    }

    /// Unreduced product lanes of two flat polynomials.
    fn product(&self, a: &[u64], b: &[u64]) -> Vec<u128> {
        let k = self.k;
        let w = self.width();
        let la = a.len() / k;
        let lb = b.len() / k;
        let mut acc = vec![0u128; (la + lb - 1) * w];
        if k == 1 {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (dst, &y) in acc[i..i + lb].iter_mut().zip(b) {
                    *dst += (x * y) as u128;
                }
            }
            return acc;
        }
        for i in 0..la {
            let ai = &a[i * k..(i + 1) * k];
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..lb {
                self.acc(&mut acc[(i + j) * w..(i + j + 1) * w], ai, &b[j * k..(j + 1) * k]);
            }
        }
        acc
    }

    /// Reduce product lanes modulo a monic flat modulus of degree `n`; returns
    /// the settled remainder (length `n * k`, possibly with trailing zeros).
    fn reduce(&self, mut acc: Vec<u128>, m: &[u64]) -> Vec<u64> {
        let k = self.k;
        let w = self.width();
        let n = m.len() / k - 1;
        let len = acc.len() / w;
        let mut c = vec![0u64; k];
        if k == 1 {
            let p = self.p as u128;
            for i in (n..len).rev() {
                let lead = (acc[i] % p) as u64;
                if lead == 0 {
                    continue;
                }
                let neg = self.p - lead;
                let base = i - n;
                for (dst, &mj) in acc[base..base + n].iter_mut().zip(m) {
                    *dst += (neg * mj) as u128;
                }
            }
        } else {
            for i in (n..len).rev() {
                self.settle(&acc[i * w..(i + 1) * w], &mut c);
                if c.iter().all(|&x| x == 0) {
                    continue;
                }
                for x in c.iter_mut() {
                    if *x != 0 {
                        *x = self.p - *x;
                    }
                }
                for j in 0..n {
                    let at = i - n + j;
                    self.acc(&mut acc[at * w..(at + 1) * w], &c, &m[j * k..(j + 1) * k]);
                }
            }
        }
        let keep = n.min(len);
        let mut out = vec![0u64; keep * k];
        for i in 0..keep {
            self.settle(&acc[i * w..(i + 1) * w], &mut out[i * k..(i + 1) * k]);
        }
        out
    }

    fn settle_all(&self, acc: &[u128]) -> Vec<u64> {
        let k = self.k;
        let w = self.width();
        let len = acc.len() / w;
        let mut out = vec![0u64; len * k];
        for i in 0..len {
            self.settle(&acc[i * w..(i + 1) * w], &mut out[i * k..(i + 1) * k]);
        }
        out
    }
}

/// Degree from which q-th powers modulo `f` go through [`FrobeniusMap`].
const FROBENIUS_MAP_MIN_DEGREE: usize = 8;

/// The `F_q`-linear map `h ↦ h^q` on `F_q[x]/(f)`, stored as the rows
/// `x^(iq) mod f`.
struct FrobeniusMap {
    field: Field,
    rows: Vec<Poly>,
}

impl FrobeniusMap {
    fn new(f: &Poly) -> Result<FrobeniusMap> {
        let n = f.degree().ok_or(Error::ZeroPolynomial)?;
        let xq = Poly::x(&f.field).powmod(f.field.order(), f)?;
        let mut rows = Vec::with_capacity(n);
        rows.push(Poly::one(&f.field).rem(f)?);
        for i in 1..n {
            let next = rows[i - 1].mulmod(&xq, f)?;
            rows.push(next);
        }
        Ok(FrobeniusMap {
            field: f.field.clone(),
            rows,
        })
    }

    fn apply(&self, h: &Poly) -> Poly {
        let k = self.field.dim();
        let n = self.rows.len();
        if let Some(lanes) = Lanes::for_field(&self.field) {
            let w = lanes.width();
            let mut acc = vec![0u128; n * w];
            for (hi, row) in h.data.chunks(k).zip(&self.rows) {
                if Field::raw_is_zero(hi) {
                    continue;
                }
                for (j, rj) in row.data.chunks(k).enumerate() {
                    lanes.acc(&mut acc[j * w..(j + 1) * w], hi, rj);
                }
            }
            return Poly::from_raw(&self.field, lanes.settle_all(&acc));
        }
        let mut out = vec![0u64; n * k];
        let mut prod = vec![0u64; k];
        for (hi, row) in h.data.chunks(k).zip(&self.rows) {
            if Field::raw_is_zero(hi) {
                continue;
            }
            for (j, rj) in row.data.chunks(k).enumerate() {
                self.field.mul_raw(hi, rj, &mut prod);
                self.field.add_assign_raw(&mut out[j * k..(j + 1) * k], &prod);
            }
        }
        Poly::from_raw(&self.field, out)
    }
}

fn trim(data: &mut Vec<u64>, dim: usize) {
    while data.len() >= dim && data[data.len() - dim..].iter().all(|&x| x == 0) {
        data.truncate(data.len() - dim);
    }
}

impl Poly {
    pub(crate) fn from_raw(field: &Field, mut data: Vec<u64>) -> Poly {
        debug_assert_eq!(data.len() % field.dim(), 0);
        trim(&mut data, field.dim());
        Poly {
            field: field.clone(),
            data,
        }
    }

    /// Build from coefficients, constant term first; trailing zeros are stripped.
    pub fn new(field: &Field, coeffs: Vec<FEl>) -> Result<Poly> {
        let mut data = Vec::with_capacity(coeffs.len() * field.dim());
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::CtxMismatch);
            }
            data.extend_from_slice(c.raw());
        }
        Ok(Poly::from_raw(field, data))
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        let data = coeffs
            .iter()
            .flat_map(|&c| field.from_int(c).raw().to_vec())
            .collect();
        Poly::from_raw(field, data)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::from_raw(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(&field.one())
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(&field.one(), 1)
    }

    pub fn constant(c: &FEl) -> Poly {
        Poly::from_raw(c.field(), c.raw().to_vec())
    }

    pub fn monomial(c: &FEl, deg: usize) -> Poly {
        let dim = c.field().dim();
        let mut data = vec![0; deg * dim];
        data.extend_from_slice(c.raw());
        Poly::from_raw(c.field(), data)
    }

    /// `a x + b`.
    pub fn linear(a: &FEl, b: &FEl) -> Result<Poly> {
        Poly::new(a.field(), vec![b.clone(), a.clone()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.data
    }

    fn len(&self) -> usize {
        self.data.len() / self.field.dim()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    fn coeff_raw(&self, i: usize) -> &[u64] {
        let d = self.field.dim();
        &self.data[i * d..(i + 1) * d]
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FEl {
        if i < self.len() {
            self.field.wrap(self.coeff_raw(i).to_vec())
        } else {
            self.field.zero()
        }
    }

    pub fn coeffs(&self) -> Vec<FEl> {
        (0..self.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> Option<FEl> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    /// Coefficients embedded into a field containing this one.
    pub fn lift(&self, to: &Field) -> Result<Poly> {
        if *to == self.field {
            return Ok(self.clone());
        }
        let mut data = Vec::with_capacity(self.len() * to.dim());
        for i in 0..self.len() {
            data.extend(to.embed_raw(&self.field, self.coeff_raw(i))?);
        }
        Ok(Poly::from_raw(to, data))
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (long, short) = if self.data.len() >= other.data.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut data = long.data.clone();
        self.field.add_assign_raw(&mut data[..short.data.len()], &short.data);
        Ok(Poly::from_raw(&self.field, data))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut data = self.data.clone();
        self.field.neg_assign_raw(&mut data);
        Poly::from_raw(&self.field, data)
    }

    pub fn scale(&self, c: &FEl) -> Result<Poly> {
        if c.field() != &self.field {
            return Err(Error::CtxMismatch);
        }
        let d = self.field.dim();
        let mut data = vec![0u64; self.data.len()];
        for (src, dst) in self.data.chunks(d).zip(data.chunks_mut(d)) {
            self.field.mul_raw(src, c.raw(), dst);
        }
        Ok(Poly::from_raw(&self.field, data))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        if let Some(lanes) = Lanes::for_field(&self.field) {
            let acc = lanes.product(&self.data, &other.data);
            return Ok(Poly::from_raw(&self.field, lanes.settle_all(&acc)));
        }
        let f = &self.field;
        let d = f.dim();
        let (la, lb) = (self.len(), other.len());
        let mut data = vec![0u64; (la + lb - 1) * d];
        let mut tmp = vec![0u64; d];
        for i in 0..la {
            let ai = self.coeff_raw(i);
            if Field::raw_is_zero(ai) {
                continue;
            }
            for j in 0..lb {
                f.mul_raw(ai, other.coeff_raw(j), &mut tmp);
                f.add_assign_raw(&mut data[(i + j) * d..(i + j + 1) * d], &tmp);
            }
        }
        Ok(Poly::from_raw(f, data))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e != 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e != 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let n = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let d = f.dim();
        if self.len() <= n {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv_raw(divisor.coeff_raw(n))?;
        let mut rem = self.data.clone();
        let qlen = self.len() - n;
        let mut quot = vec![0u64; qlen * d];
        let mut c = vec![0u64; d];
        let mut tmp = vec![0u64; d];
        for i in (n..self.len()).rev() {
            f.mul_raw(&rem[i * d..(i + 1) * d], &lead_inv, &mut c);
            if Field::raw_is_zero(&c) {
                continue;
            }
            quot[(i - n) * d..(i - n + 1) * d].copy_from_slice(&c);
            for j in 0..=n {
                f.mul_raw(&c, divisor.coeff_raw(j), &mut tmp);
                let at = i - n + j;
                f.sub_assign_raw(&mut rem[at * d..(at + 1) * d], &tmp);
            }
        }
        rem.truncate(n * d);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let d = f.dim();
        let mut data = vec![0u64; self.data.len().saturating_sub(d)];
        for i in 1..self.len() {
            let c = f.mul_vec(self.coeff_raw(i), f.from_int((i as u64 % f.p()) as i64).raw());
            data[(i - 1) * d..i * d].copy_from_slice(&c);
        }
        Poly::from_raw(f, data)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        self.scale(&lead.inv()?)
    }

    /// `x^n f(1/x)` with `n = deg f`: the coefficient reversal, trailing zeros
    /// stripped (the degree drops when `f(0) = 0`).
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.field.dim();
        let data = self.data.chunks(d).rev().flatten().copied().collect();
        Ok(Poly::from_raw(&self.field, data))
    }

    /// `f(x^t)`.
    pub fn substitute_power(&self, t: usize) -> Result<Poly> {
        if t == 0 {
            return Err(Error::PreconditionViolated("power must be at least 1".into()));
        }
        let d = self.field.dim();
        let Some(deg) = self.degree() else {
            return Ok(self.clone());
        };
        let mut data = vec![0u64; (deg * t + 1) * d];
        for i in 0..=deg {
            data[i * t * d..(i * t + 1) * d].copy_from_slice(self.coeff_raw(i));
        }
        Ok(Poly::from_raw(&self.field, data))
    }

    /// Horner evaluation at a point of this field or of any field above it.
    pub fn evaluate(&self, at: &FEl) -> Result<FEl> {
        let target = at.field();
        if !target.contains(&self.field) {
            return Err(Error::CtxMismatch);
        }
        let mut acc = target.zero().raw().to_vec();
        for i in (0..self.len()).rev() {
            let mut next = target.mul_vec(&acc, at.raw());
            target.add_assign_raw(&mut next, &target.embed_raw(&self.field, self.coeff_raw(i))?);
            acc = next;
        }
        Ok(target.wrap(acc))
    }

    /// `sum_i g_i num^i den^(n-i)` with `n = deg g`: the homogenized
    /// substitution `den^n g(num/den)`.
    pub fn homogenize(&self, num: &Poly, den: &Poly) -> Result<Poly> {
        self.check_field(num)?;
        self.check_field(den)?;
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut acc = Poly::constant(&self.coeff(n));
        let mut den_pow = Poly::one(&self.field);
        for i in (0..n).rev() {
            den_pow = &den_pow * den;
            acc = &(&acc * num) + &den_pow.scale(&self.coeff(i))?;
        }
        Ok(acc)
    }

    /// Coefficient-wise Frobenius of the immediate base (`c -> c^q`).
    pub fn conjugate(&self) -> Result<Poly> {
        let coeffs = self
            .coeffs()
            .iter()
            .map(FEl::frobenius)
            .collect::<Result<Vec<_>>>()?;
        Poly::new(&self.field, coeffs)
    }

    /// The same polynomial over the immediate base, if every coefficient is
    /// Frobenius-fixed.
    pub fn coeffs_in_base(&self) -> Option<Poly> {
        let base = self.field.base()?;
        let coeffs = self
            .coeffs()
            .iter()
            .map(FEl::in_subfield)
            .collect::<Option<Vec<_>>>()?;
        Poly::new(base, coeffs).ok()
    }

    /// Canonical order: by degree, then coefficients from the top down, each
    /// compared by canonical index. For monic polynomials of equal degree this
    /// is the lexicographic order on `(c_{n-1}, ..., c_0)`.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            (0..self.len())
                .rev()
                .map(|i| self.coeff(i).index().cmp(&other.coeff(i).index()))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    // ---- modular arithmetic ---------------------------------------------

    /// `(a * b) mod m` for a monic modulus `m`.
    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        self.check_field(m)?;
        if !m.is_monic() {
            return Err(Error::PreconditionViolated("modulus must be monic".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        if let Some(lanes) = Lanes::for_field(&self.field) {
            let acc = lanes.product(&self.data, &other.data);
            return Ok(Poly::from_raw(&self.field, lanes.reduce(acc, &m.data)));
        }
        (self * other).rem(m)
    }

    /// `base^e mod m` for a monic modulus.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            e >>= 1;
            if e != 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// `x^(q^k) mod f` by `k` successive exponentiations by `q`.
    pub fn frobenius_powmod(&self, k: usize) -> Result<Poly> {
        let f = self;
        match f.degree() {
            None | Some(0) => {
                return Err(Error::PreconditionViolated(
                    "modulus must have degree at least 1".into(),
                ))
            }
            _ if !f.is_monic() => {
                return Err(Error::PreconditionViolated("modulus must be monic".into()))
            }
            _ => {}
        }
        let mut h = Poly::x(&f.field).rem(f)?;
        if k == 0 {
            return Ok(h);
        }
        if f.degree() >= Some(FROBENIUS_MAP_MIN_DEGREE) {
            let map = FrobeniusMap::new(f)?;
            for _ in 0..k {
                h = map.apply(&h);
            }
            return Ok(h);
        }
        for _ in 0..k {
            h = h.powmod(f.field.order(), f)?;
        }
        Ok(h)
    }

    /// Rabin's test, applied to the monic normalization.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic().expect("nonzero");
        let q = f.field.order();
        let x = Poly::x(&f.field);
        let primes = arith::prime_divisors(n as u128).expect("degree is small");
        let checkpoints: Vec<usize> = primes.iter().map(|&l| n / l as usize).collect();
        let map = (n >= FROBENIUS_MAP_MIN_DEGREE).then(|| FrobeniusMap::new(&f).expect("monic modulus"));
        let mut h = x.clone();
        let mut powers = Vec::new();
        for i in 1..=n {
            h = match &map {
                Some(map) => map.apply(&h),
                None => h.powmod(q, &f).expect("monic modulus"),
            };
            if checkpoints.contains(&i) {
                powers.push(h.clone());
            }
        }
        if h != x {
            return false;
        }
        powers.iter().all(|hp| {
            let g = (hp - &x).gcd(&f).expect("same field");
            g.degree() == Some(0)
        })
    }

    /// Multiplicative order of `x` modulo this monic irreducible polynomial.
    pub fn exponent(&self) -> Result<u128> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::PreconditionViolated("constant polynomial".into()));
        }
        if self.coeff(0).is_zero() {
            return Err(Error::PreconditionViolated(
                "polynomial must not be divisible by x".into(),
            ));
        }
        if !self.is_irreducible() {
            return Err(Error::PreconditionViolated("polynomial must be irreducible".into()));
        }
        let f = self.monic()?;
        let group = arith::checked_pow(f.field.order(), n as u32)
            .filter(|g| *g < 1u128 << 127)
            .ok_or(Error::OrderOverflow)?
            - 1;
        let x = Poly::x(&f.field);
        let mut e = group;
        for (prime, _) in arith::factorize(group)? {
            while e % prime == 0 && x.powmod(e / prime, &f)?.degree() == Some(0)
                && x.powmod(e / prime, &f)?.coeff(0).is_one()
            {
                e /= prime;
            }
        }
        Ok(e)
    }

    /// Split a monic irreducible `g` of even degree over `F_q` (q odd) into
    /// its two conjugate irreducible factors over `F_{q^2}`: `(r, s)` with
    /// `g = r s`, `s` the coefficient-wise conjugate of `r`, and `r` the
    /// canonically smaller factor.
    pub fn split_over_quadratic(&self, ext: &Field) -> Result<(Poly, Poly)> {
        if !self.field.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if ext.base() != Some(&self.field) || ext.degree() != 2 {
            return Err(Error::CtxMismatch);
        }
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 || n % 2 == 1 {
            return Err(Error::PreconditionViolated(format!(
                "degree {n} is not a positive even number"
            )));
        }
        if !self.is_irreducible() {
            return Err(Error::PreconditionViolated("polynomial is reducible".into()));
        }
        let g = self.monic()?.lift(ext)?;
        let half = n / 2;
        let q2 = ext.order();
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_RNG_SEED);
        let one = Poly::one(ext);
        let factor = loop {
            let coeffs: Vec<FEl> = (0..n).map(|_| ext.from_index(rng.gen_range(0..q2))).collect();
            let a = Poly::new(ext, coeffs)?;
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            // a^((Q^half - 1)/2) = (a^(1 + Q + ... + Q^(half-1)))^((Q-1)/2)
            let mut conj = a.rem(&g)?;
            let mut prod = conj.clone();
            for _ in 1..half {
                conj = conj.powmod(q2, &g)?;
                prod = prod.mulmod(&conj, &g)?;
            }
            let b = prod.powmod((q2 - 1) / 2, &g)?;
            let h = (&b - &one).gcd(&g)?;
            if h.degree() == Some(half) {
                break h;
            }
        };
        let (other, rem) = g.divrem(&factor)?;
        debug_assert!(rem.is_zero());
        let (r, s) = if factor.cmp_canonical(&other) == Ordering::Greater {
            (other, factor)
        } else {
            (factor, other)
        };
        if s != r.conjugate()? || &r * &s != g {
            return Err(Error::InternalDescentFailure);
        }
        Ok((r, s))
    }
}

/// Monic irreducible polynomials of degree `n` satisfying `keep`, in
/// canonical order, at most `limit` of them. Exhaustive; refuses when
/// `q^n` exceeds [`ENUMERATION_BUDGET`].
pub fn enumerate_irreducibles(
    field: &Field,
    n: usize,
    limit: usize,
    mut keep: impl FnMut(&Poly) -> bool,
) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::PreconditionViolated("degree must be at least 1".into()));
    }
    let q = field.order();
    let total = arith::checked_pow(q, n as u32)
        .filter(|t| *t <= ENUMERATION_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("{q}^{n} candidates")))?;
    let mut out = Vec::new();
    for index in 0..total {
        if out.len() >= limit {
            break;
        }
        let f = monic_from_index(field, n, index);
        if f.is_irreducible() && keep(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Reproducible pseudorandom sample of distinct monic irreducibles of
/// degree `n`, drawn from a ChaCha8 stream seeded with `rng_seed`. Gives up
/// after `max_draws` candidates.
pub fn sample_irreducibles(
    field: &Field,
    n: usize,
    count: usize,
    rng_seed: u64,
    max_draws: usize,
    mut keep: impl FnMut(&Poly) -> bool,
) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::PreconditionViolated("degree must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let q = field.order();
    let mut out: Vec<Poly> = Vec::new();
    for _ in 0..max_draws {
        if out.len() >= count {
            break;
        }
        let mut coeffs: Vec<FEl> = (0..n).map(|_| field.from_index(rng.gen_range(0..q))).collect();
        coeffs.push(field.one());
        let f = Poly::new(field, coeffs)?;
        if !out.contains(&f) && f.is_irreducible() && keep(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// The monic degree-`n` polynomial whose lower coefficients are the base-`q`
/// digits of `index`, `c_0` least significant.
pub fn monic_from_index(field: &Field, n: usize, index: u128) -> Poly {
    let q = field.order();
    let mut rest = index;
    let mut coeffs = Vec::with_capacity(n + 1);
    for _ in 0..n {
        coeffs.push(field.from_index(rest % q));
        rest /= q;
    }
    coeffs.push(field.one());
    Poly::new(field, coeffs).expect("same field")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.field.order_spec())?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &Poly) -> Poly {
                Poly::$method(self, rhs).expect("field mismatch")
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);
