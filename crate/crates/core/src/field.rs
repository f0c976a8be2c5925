//! Prime fields, extension towers, and exact element arithmetic.
//!
//! Every element is stored as a flat vector of residues modulo the
//! characteristic `p`. For an extension `F_q[y]/(m(y))` of degree `k` the
//! vector is split into `k` consecutive chunks, chunk `i` holding the
//! coordinate of `y^i` in the base field's own flat layout. Reading the flat
//! vector as a little-endian base-`p` number gives the element's canonical
//! enumeration index.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest admissible characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// A finite field: either `F_p` or an extension of another [`Field`].
///
/// Cheap to clone; all clones share the same immutable context.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    p: u64,
    order: u128,
    dim: usize,
    canonical: bool,
    kind: Kind,
}

enum Kind {
    Prime,
    Extension { base: Field, modulus: Poly, k: usize },
}

impl Field {
    /// `F_p` for a prime `2 <= p < 2^31`.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..MAX_CHARACTERISTIC).contains(&p) {
            return Err(Error::OutOfRange(format!(
                "characteristic {p} must lie in [2, 2^31)"
            )));
        }
        if !arith::is_prime(p as u128) {
            return Err(Error::NotPrime(p as u128));
        }
        Ok(Field(Arc::new(FieldInner {
            p,
            order: p as u128,
            dim: 1,
            canonical: true,
            kind: Kind::Prime,
        })))
    }

    /// Degree-`k` extension whose modulus is the smallest monic irreducible
    /// polynomial of degree `k`, ordering candidates by the coefficient tuple
    /// `(c_{k-1}, ..., c_0)` with each coefficient compared by its canonical
    /// index.
    pub fn extension(&self, k: usize) -> Result<Field> {
        if k < 2 {
            return Err(Error::OutOfRange(format!(
                "extension degree {k} must be at least 2"
            )));
        }
        let order = self.extension_order(k)?;
        let q = self.order();
        let mut index: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut rest = index;
            for _ in 0..k {
                coeffs.push(self.from_index(rest % q));
                rest /= q;
            }
            coeffs.push(self.one());
            let candidate = Poly::new(self, coeffs)?;
            if candidate.is_irreducible() {
                return Ok(self.build_extension(candidate, k, order, true));
            }
            index += 1;
        }
    }

    /// Extension `F_q[y]/(modulus)` for a caller-chosen monic irreducible
    /// modulus. Such fields have no text order-spec.
    pub fn with_modulus(modulus: &Poly) -> Result<Field> {
        let base = modulus.field().clone();
        let k = modulus
            .degree()
            .ok_or(Error::ZeroPolynomial)?;
        if k < 2 {
            return Err(Error::OutOfRange(format!(
                "extension degree {k} must be at least 2"
            )));
        }
        if !modulus.is_monic() {
            return Err(Error::PreconditionViolated("modulus must be monic".into()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::PreconditionViolated(
                "modulus must be irreducible".into(),
            ));
        }
        let order = base.extension_order(k)?;
        Ok(base.build_extension(modulus.clone(), k, order, false))
    }

    fn extension_order(&self, k: usize) -> Result<u128> {
        let order = arith::checked_pow(self.order(), k as u32).ok_or(Error::OrderOverflow)?;
        if order >= 1u128 << 127 {
            return Err(Error::OrderOverflow);
        }
        Ok(order)
    }

    fn build_extension(&self, modulus: Poly, k: usize, order: u128, canonical: bool) -> Field {
        Field(Arc::new(FieldInner {
            p: self.0.p,
            order,
            dim: self.0.dim * k,
            canonical: canonical && self.0.canonical,
            kind: Kind::Extension {
                base: self.clone(),
                modulus,
                k,
            },
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            Kind::Prime => 1,
            Kind::Extension { k, .. } => *k,
        }
    }

    /// Degree over the prime field; the length of the flat representation.
    pub fn absolute_degree(&self) -> usize {
        self.0.dim
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.kind, Kind::Prime)
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            Kind::Prime => None,
            Kind::Extension { base, .. } => Some(base),
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match &self.0.kind {
            Kind::Prime => None,
            Kind::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// Whether the field was produced by the deterministic constructors only,
    /// so that its order-spec determines it.
    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    /// Order-spec text: `"p"`, `"p^k"`, `"p^k^j"` for towers.
    pub fn order_spec(&self) -> String {
        match &self.0.kind {
            Kind::Prime => self.0.p.to_string(),
            Kind::Extension { base, k, .. } => format!("{}^{}", base.order_spec(), k),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    /// True when `sub` is this field or one of the fields below it in the tower.
    pub fn contains(&self, sub: &Field) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == sub {
                return true;
            }
            cur = f.base();
        }
        false
    }

    /// The smaller-in-tower of two fields, or the larger one that contains
    /// the other.
    pub fn common(a: &Field, b: &Field) -> Result<Field> {
        if a.contains(b) {
            Ok(a.clone())
        } else if b.contains(a) {
            Ok(b.clone())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn zero(&self) -> FEl {
        FEl {
            field: self.clone(),
            v: vec![0; self.0.dim],
        }
    }

    pub fn one(&self) -> FEl {
        let mut e = self.zero();
        e.v[0] = 1;
        e
    }

    pub fn from_int(&self, n: i64) -> FEl {
        let mut e = self.zero();
        e.v[0] = n.rem_euclid(self.0.p as i64) as u64;
        e
    }

    /// Element with the given canonical enumeration index (taken modulo the order).
    pub fn from_index(&self, index: u128) -> FEl {
        let mut e = self.zero();
        let p = self.0.p as u128;
        let mut rest = index % self.0.order;
        for slot in e.v.iter_mut() {
            *slot = (rest % p) as u64;
            rest /= p;
        }
        e
    }

    /// Element from its coordinates over the immediate base.
    pub fn from_coords(&self, coords: &[FEl]) -> Result<FEl> {
        let base = self
            .base()
            .ok_or_else(|| Error::PreconditionViolated("prime fields have no coordinates".into()))?;
        if coords.len() != self.degree() {
            return Err(Error::OutOfRange(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        let mut v = Vec::with_capacity(self.0.dim);
        for c in coords {
            if c.field != *base {
                return Err(Error::CtxMismatch);
            }
            v.extend_from_slice(&c.v);
        }
        Ok(FEl {
            field: self.clone(),
            v,
        })
    }

    /// The adjoined root `y` of an extension's modulus.
    pub fn generator(&self) -> Option<FEl> {
        let base = self.base()?;
        let mut e = self.zero();
        e.v[base.0.dim] = 1;
        Some(e)
    }

    /// Lift an element of a subfield of this tower into this field.
    pub fn embed(&self, el: &FEl) -> Result<FEl> {
        Ok(FEl {
            field: self.clone(),
            v: self.embed_raw(&el.field, &el.v)?,
        })
    }

    pub(crate) fn embed_raw(&self, from: &Field, v: &[u64]) -> Result<Vec<u64>> {
        if self == from {
            return Ok(v.to_vec());
        }
        let base = self.base().ok_or(Error::CtxMismatch)?;
        let mut lifted = base.embed_raw(from, v)?;
        lifted.resize(self.0.dim, 0);
        Ok(lifted)
    }

    /// All elements in canonical enumeration order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FEl> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i))
    }

    // ---- raw slice arithmetic -------------------------------------------

    pub(crate) fn dim(&self) -> usize {
        self.0.dim
    }

    pub(crate) fn p(&self) -> u64 {
        self.0.p
    }

    pub(crate) fn raw_is_zero(v: &[u64]) -> bool {
        v.iter().all(|&x| x == 0)
    }

    pub(crate) fn add_assign_raw(&self, acc: &mut [u64], b: &[u64]) {
        let p = self.0.p;
        for (x, &y) in acc.iter_mut().zip(b) {
            let s = *x + y;
            *x = if s >= p { s - p } else { s };
        }
    }

    pub(crate) fn sub_assign_raw(&self, acc: &mut [u64], b: &[u64]) {
        let p = self.0.p;
        for (x, &y) in acc.iter_mut().zip(b) {
            *x = if *x >= y { *x - y } else { *x + p - y };
        }
    }

    pub(crate) fn neg_assign_raw(&self, acc: &mut [u64]) {
        let p = self.0.p;
        for x in acc.iter_mut() {
            if *x != 0 {
                *x = p - *x;
            }
        }
    }

    /// `out = a * b`; `out` must not alias the inputs.
    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let p = self.0.p;
        match &self.0.kind {
            Kind::Prime => out[0] = a[0] * b[0] % p,
            Kind::Extension { base, modulus, k } if base.is_prime_field() => {
                simple_ext_mul(p, *k, modulus.raw(), a, b, out)
            }
            Kind::Extension { base, modulus, k } => {
                let bd = base.0.dim;
                let k = *k;
                let mut prod = vec![0u64; (2 * k - 1) * bd];
                let mut tmp = vec![0u64; bd];
                for i in 0..k {
                    let ai = &a[i * bd..(i + 1) * bd];
                    if Field::raw_is_zero(ai) {
                        continue;
                    }
                    for j in 0..k {
                        base.mul_raw(ai, &b[j * bd..(j + 1) * bd], &mut tmp);
                        base.add_assign_raw(&mut prod[(i + j) * bd..(i + j + 1) * bd], &tmp);
                    }
                }
                let m = modulus.raw();
                for i in (k..2 * k - 1).rev() {
                    let lead = prod[i * bd..(i + 1) * bd].to_vec();
                    if Field::raw_is_zero(&lead) {
                        continue;
                    }
                    for j in 0..k {
                        base.mul_raw(&lead, &m[j * bd..(j + 1) * bd], &mut tmp);
                        let at = i - k + j;
                        base.sub_assign_raw(&mut prod[at * bd..(at + 1) * bd], &tmp);
                    }
                }
                out.copy_from_slice(&prod[..k * bd]);
            }
        }
    }

    pub(crate) fn mul_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.0.dim];
        self.mul_raw(a, b, &mut out);
        out
    }

    pub(crate) fn pow_raw(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.one().v;
        let mut base = a.to_vec();
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul_vec(&acc, &base);
            }
            e >>= 1;
            if e != 0 {
                base = self.mul_vec(&base, &base);
            }
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: &[u64]) -> Result<Vec<u64>> {
        if Field::raw_is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match self.0.kind {
            Kind::Prime => vec![inv_mod_u64(a[0], self.0.p)],
            Kind::Extension { .. } => self.pow_raw(a, self.0.order - 2),
        })
    }

    pub(crate) fn wrap(&self, v: Vec<u64>) -> FEl {
        debug_assert_eq!(v.len(), self.0.dim);
        FEl {
            field: self.clone(),
            v,
        }
    }

    fn frobenius_order(&self) -> Result<u128> {
        self.base()
            .map(|b| b.order())
            .ok_or_else(|| Error::PreconditionViolated("prime field has no proper subfield".into()))
    }
}

/// Product in `F_p[y]/(m)` with unreduced `u128` lanes.
fn simple_ext_mul(p: u64, k: usize, m: &[u64], a: &[u64], b: &[u64], out: &mut [u64]) {
    let mut lanes = [0u128; 64];
    let mut red = [0u64; 64];
    if 2 * k - 1 > lanes.len() {
        let mut lanes = vec![0u128; 2 * k - 1];
        let mut red = vec![0u64; 2 * k - 1];
        simple_ext_mul_into(p, k, m, a, b, &mut lanes, &mut red);
        out.copy_from_slice(&red[..k]);
        return;
    }
    simple_ext_mul_into(p, k, m, a, b, &mut lanes[..2 * k - 1], &mut red[..2 * k - 1]);
    out.copy_from_slice(&red[..k]);
}

fn simple_ext_mul_into(
    p: u64,
    k: usize,
    m: &[u64],
    a: &[u64],
    b: &[u64],
    lanes: &mut [u128],
    red: &mut [u64],
) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            lanes[i + j] += (x * y) as u128;
        }
    }
    for (r, l) in red.iter_mut().zip(lanes.iter()) {
        *r = (*l % p as u128) as u64;
    }
    reduce_mod_monic(p, k, m, red);
}

/// Reduce `r` (length up to `2k-1`) modulo the monic degree-`k` polynomial `m`
/// over `F_p`, in place; the result occupies `r[..k]`.
pub(crate) fn reduce_mod_monic(p: u64, k: usize, m: &[u64], r: &mut [u64]) {
    for i in (k..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let neg = p - c;
        for (slot, &mj) in r[i - k..i].iter_mut().zip(m) {
            *slot = (*slot + neg * mj) % p;
        }
        r[i] = 0;
    }
}

pub(crate) fn inv_mod_u64(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.p != other.0.p || self.0.dim != other.0.dim {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Prime, Kind::Prime) => true,
            (
                Kind::Extension {
                    base: b1,
                    modulus: m1,
                    ..
                },
                Kind::Extension {
                    base: b2,
                    modulus: m2,
                    ..
                },
            ) => b1 == b2 && m1.raw() == m2.raw(),
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.dim.hash(state);
        if let Kind::Extension { modulus, .. } = &self.0.kind {
            modulus.raw().hash(state);
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Prime => write!(f, "F_{}", self.0.p),
            Kind::Extension { base, modulus, .. } => {
                write!(f, "{:?}[y]/({})", base, modulus)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.order_spec())
    }
}

/// An element of a specific [`Field`], stored in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FEl {
    field: Field,
    v: Vec<u64>,
}

impl FEl {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        Field::raw_is_zero(&self.v)
    }

    pub fn is_one(&self) -> bool {
        self.v[0] == 1 && Field::raw_is_zero(&self.v[1..])
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn value(&self) -> Option<u64> {
        self.field.is_prime_field().then(|| self.v[0])
    }

    /// Coordinates over the immediate base, constant term first.
    pub fn coords(&self) -> Vec<FEl> {
        match self.field.base() {
            None => vec![self.clone()],
            Some(base) => self
                .v
                .chunks(base.dim())
                .map(|c| base.wrap(c.to_vec()))
                .collect(),
        }
    }

    /// Canonical enumeration index: the flat residues read little-endian in base `p`.
    pub fn index(&self) -> u128 {
        let p = self.field.p() as u128;
        self.v.iter().rev().fold(0u128, |acc, &x| acc * p + x as u128)
    }

    fn same_field(&self, other: &FEl) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn add(&self, other: &FEl) -> Result<FEl> {
        self.same_field(other)?;
        let mut v = self.v.clone();
        self.field.add_assign_raw(&mut v, &other.v);
        Ok(self.field.wrap(v))
    }

    pub fn sub(&self, other: &FEl) -> Result<FEl> {
        self.same_field(other)?;
        let mut v = self.v.clone();
        self.field.sub_assign_raw(&mut v, &other.v);
        Ok(self.field.wrap(v))
    }

    pub fn mul(&self, other: &FEl) -> Result<FEl> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.mul_vec(&self.v, &other.v)))
    }

    pub fn div(&self, other: &FEl) -> Result<FEl> {
        self.mul(&other.inv()?)
    }

    pub fn neg(&self) -> FEl {
        let mut v = self.v.clone();
        self.field.neg_assign_raw(&mut v);
        self.field.wrap(v)
    }

    pub fn inv(&self) -> Result<FEl> {
        Ok(self.field.wrap(self.field.inv_raw(&self.v)?))
    }

    /// `self^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, e: u128) -> FEl {
        self.field.wrap(self.field.pow_raw(&self.v, e))
    }

    /// Image under the Frobenius of the immediate base, `u^q`.
    pub fn frobenius(&self) -> Result<FEl> {
        Ok(self.pow(self.field.frobenius_order()?))
    }

    /// Whether `u` is an `ell`-th power, for prime `ell` dividing `q - 1`.
    pub fn is_lth_power(&self, ell: u128) -> Result<bool> {
        if !arith::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let group = self.field.order() - 1;
        if !group.is_multiple_of(ell) {
            return Err(Error::LNotDividingGroupOrder {
                ell,
                group_order: group,
            });
        }
        Ok(self.pow(group / ell).is_one())
    }

    /// Square test valid in any field of odd characteristic; zero counts as a square.
    pub fn is_square(&self) -> Result<bool> {
        if !self.field.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if self.is_zero() {
            return Ok(true);
        }
        self.is_lth_power(2)
    }

    /// A square root, if one exists (odd characteristic, Tonelli-Shanks).
    pub fn sqrt(&self) -> Result<Option<FEl>> {
        if !self.is_square()? {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let field = &self.field;
        let group = field.order() - 1;
        let s = group.trailing_zeros();
        let odd = group >> s;
        let non_residue = (2..field.order())
            .map(|i| field.from_index(i))
            .find(|z| !z.is_square().unwrap_or(true))
            .expect("odd-order fields contain non-squares");
        let mut c = non_residue.pow(odd);
        let mut x = self.pow(odd.div_ceil(2));
        let mut t = self.pow(odd);
        let mut m = s;
        while !t.is_one() {
            let mut i = 0;
            let mut probe = t.clone();
            while !probe.is_one() {
                probe = &probe * &probe;
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = &b * &b;
            }
            x = &x * &b;
            c = &b * &b;
            t = &t * &c;
            m = i;
        }
        Ok(Some(x))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let group = self.field.order() - 1;
        let mut e = group;
        for (prime, _) in arith::factorize(group)? {
            while e.is_multiple_of(prime) && self.pow(e / prime).is_one() {
                e /= prime;
            }
        }
        Ok(e)
    }

    /// Norm down to the immediate base: the product of all conjugates
    /// `u^(q^i)`, returned as a base-field element.
    pub fn norm_to_base(&self) -> Result<FEl> {
        let base = self.field.base().ok_or(Error::CtxMismatch)?;
        let q = base.order();
        let mut conj = self.clone();
        let mut acc = self.clone();
        for _ in 1..self.field.degree() {
            conj = conj.pow(q);
            acc = &acc * &conj;
        }
        let bd = base.dim();
        if !Field::raw_is_zero(&acc.v[bd..]) {
            return Err(Error::InternalDescentFailure);
        }
        Ok(base.wrap(acc.v[..bd].to_vec()))
    }

    /// The element as a member of the immediate base, if it is Frobenius-fixed.
    pub fn in_subfield(&self) -> Option<FEl> {
        let base = self.field.base()?;
        if self.frobenius().ok()? != *self {
            return None;
        }
        let bd = base.dim();
        debug_assert!(Field::raw_is_zero(&self.v[bd..]));
        Some(base.wrap(self.v[..bd].to_vec()))
    }

    /// Descend through the tower to `target`, if the element lies there.
    pub fn descend_to(&self, target: &Field) -> Option<FEl> {
        let mut cur = self.clone();
        while cur.field != *target {
            cur = cur.in_subfield()?;
        }
        Some(cur)
    }
}

/// An element of exact multiplicative order `r`, found by scanning
/// candidates `u` in canonical order and taking the first `u^((q-1)/r)`
/// whose order is exactly `r`.
pub fn root_of_unity(field: &Field, r: u128) -> Result<FEl> {
    let group = field.order() - 1;
    if r == 0 || !group.is_multiple_of(r) {
        return Err(Error::NoSuchRoot(r));
    }
    let primes = arith::prime_divisors(r)?;
    let cofactor = group / r;
    for index in 1..field.order() {
        let z = field.from_index(index).pow(cofactor);
        if primes.iter().all(|&s| !z.pow(r / s).is_one()) {
            return Ok(z);
        }
    }
    Err(Error::NoSuchRoot(r))
}

impl fmt::Display for FEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.base() {
            None => write!(f, "{}", self.v[0]),
            Some(_) => {
                f.write_str("[")?;
                for (i, c) in self.coords().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for FEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&FEl> for &FEl {
            type Output = FEl;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FEl) -> FEl {
                FEl::$method(self, rhs).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &FEl {
    type Output = FEl;
    fn neg(self) -> FEl {
        FEl::neg(self)
    }
}
