//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)−1}` modulo the
//! cyclotomic polynomial `Φ_N`, with reduced big-rational coordinates. That
//! representation is canonical, so equality is a coefficient comparison.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced fraction with an arbitrary-precision numerator and a positive
/// denominator. Zero is canonically `0/1`.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("incompatible fields: Q(zeta_{0}) and Q(zeta_{1})")]
    ContextMismatch(usize, usize),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(usize),
    #[error("cyclotomic literal parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The field `Q(ζ_N)` together with the reduction data used by every
/// element living in it.
#[derive(Debug)]
pub struct FieldContext {
    order: usize,
    phi: Vec<BigInt>,
    /// `ζ^k` for `0 <= k < N`, already reduced.
    powers: Vec<Vec<Rational>>,
    /// `x^{d+m}` mod `Φ_N` for `0 <= m < d - 1`, where `d = φ(N)`.
    high: Vec<Vec<Rational>>,
}

impl FieldContext {
    /// Builds `Q(ζ_N)`. Panics when `n == 0`.
    pub fn new(n: usize) -> Arc<Self> {
        assert!(n >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;

        // x^d ≡ -(φ_0 + φ_1 x + … + φ_{d-1} x^{d-1})
        let mut top: Vec<Rational> = phi[..degree]
            .iter()
            .map(|c| Rational::from_integer(-c.clone()))
            .collect();
        let mut high = Vec::with_capacity(degree.saturating_sub(1));
        for _ in 0..degree.saturating_sub(1) {
            high.push(top.clone());
            top = times_x(&top, &phi);
        }

        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..n {
            powers.push(cur.clone());
            cur = times_x(&cur, &phi);
        }
        Arc::new(FieldContext {
            order: n,
            phi,
            powers,
            high,
        })
    }

    /// `N`, the order of the distinguished root of unity.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Φ_N`, constant term first.
    pub fn phi_poly(&self) -> &[BigInt] {
        &self.phi
    }

    fn reduce_product(&self, prod: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        let mut out: Vec<Rational> = prod[..d.min(prod.len())].to_vec();
        out.resize(d, Rational::zero());
        for (m, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.high[m - d]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for FieldContext {}

/// Multiplies a reduced vector by `x` and reduces mod `phi`.
fn times_x(v: &[Rational], phi: &[BigInt]) -> Vec<Rational> {
    let d = v.len();
    let carry = v[d - 1].clone();
    let mut out = Vec::with_capacity(d);
    out.push(Rational::zero());
    out.extend_from_slice(&v[..d - 1]);
    if !carry.is_zero() {
        for (o, p) in out.iter_mut().zip(phi) {
            *o -= &carry * Rational::from_integer(p.clone());
        }
    }
    out
}

fn poly_cache() -> &'static Mutex<HashMap<usize, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n` as integer coefficients (constant term first), computed by exact
/// division of `x^n − 1` by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = divrem_monic(&num, &cyclotomic_polynomial(d));
        debug_assert!(r.iter().all(Zero::is_zero));
        num = q;
    }
    poly_cache().lock().unwrap().insert(n, num.clone());
    num
}

/// Division by a monic integer polynomial; returns (quotient, remainder).
pub fn divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    if num.len() <= dd {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
        quot[k] = c;
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        CycloNum {
            ctx: ctx.clone(),
            coeffs: vec![Rational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: Rational) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(ctx: &Arc<FieldContext>, n: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(ctx: &Arc<FieldContext>, num: i64, den: i64) -> Self {
        Self::from_rational(ctx, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds an element from power-basis coordinates. Panics if the length
    /// is not `φ(N)`.
    pub fn from_coeffs(ctx: &Arc<FieldContext>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len(),
            ctx.degree(),
            "coefficient count must be phi(N)"
        );
        CycloNum {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// `ζ^k`, with `k` reduced mod `N` (negative exponents allowed).
    pub fn root_of_unity(ctx: &Arc<FieldContext>, k: i64) -> Self {
        let n = ctx.order() as i64;
        let idx = k.rem_euclid(n) as usize;
        CycloNum {
            ctx: ctx.clone(),
            coeffs: ctx.powers[idx].clone(),
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.order == other.ctx.order {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch(self.ctx.order, other.ctx.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNum {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloNum {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let d = self.ctx.degree();
        if d == 1 {
            return Ok(CycloNum {
                ctx: self.ctx.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.ctx.reduce_product(prod),
        })
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, q: &Rational) -> Self {
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative polynomial and `Φ_N` over `Q`.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero(self.ctx.order));
        }
        let phi: Vec<Rational> = self
            .ctx
            .phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![Rational::zero()];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant because Φ_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        // deg s0 < deg Φ_N
        let mut v: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        v.resize(self.ctx.degree(), Rational::zero());
        Ok(CycloNum {
            ctx: self.ctx.clone(),
            coeffs: v,
        })
    }

    /// Field automorphism `ζ ↦ ζ^{N−1}`: complex conjugation under every
    /// embedding.
    pub fn conjugate(&self) -> Self {
        let n = self.ctx.order;
        let mut acc = vec![Rational::zero(); self.ctx.degree()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.ctx.powers[(n - k % n) % n];
            for (a, b) in acc.iter_mut().zip(p) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: acc,
        }
    }

    /// Parses the canonical literal syntax (`1/3 - 1/6*z`, `z^2`, `0`).
    pub fn parse(ctx: &Arc<FieldContext>, s: &str) -> Result<Self, FieldError> {
        LiteralParser::new(ctx, s).parse()
    }

    /// True if the canonical text form is a single term, which lets element
    /// printing avoid parentheses.
    pub(crate) fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// Sign of the single nonzero coordinate, when monomial.
    pub(crate) fn leading_negative(&self) -> bool {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order.hash(state);
        self.coeffs.hash(state);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                self.$checked(rhs).expect("incompatible fields")
            }
        }
        impl $trait for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$checked(&rhs).expect("incompatible fields")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

fn write_rational_abs(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    let q = q.abs();
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            write_rational_abs(f, c)?;
            match k {
                0 => {}
                1 => f.write_str("*z")?,
                _ => write!(f, "*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[N={}]({})", self.ctx.order, self)
    }
}

struct LiteralParser<'a> {
    ctx: &'a Arc<FieldContext>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> LiteralParser<'a> {
    fn new(ctx: &'a Arc<FieldContext>, s: &'a str) -> Self {
        LiteralParser {
            ctx,
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FieldError> {
        Err(FieldError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn parse(mut self) -> Result<CycloNum, FieldError> {
        let mut acc = CycloNum::zero(self.ctx);
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty literal");
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                Some(b'+') if !first => self.pos += 1,
                None => break,
                _ if !first => return self.err("expected '+' or '-'"),
                _ => {}
            }
            self.skip_ws();
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloNum, FieldError> {
        let coeff = if matches!(self.peek(), Some(b'0'..=b'9')) {
            let num = self.integer()?;
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.integer()?;
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            let q = Rational::new(num, den);
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some(b'z') {
                    return self.err("expected 'z' after '*'");
                }
            } else {
                return Ok(CycloNum::from_rational(self.ctx, q));
            }
            q
        } else if self.peek() == Some(b'z') {
            Rational::one()
        } else {
            return self.err("expected a rational or 'z'");
        };
        // at 'z'
        self.pos += 1;
        let mut exp = BigInt::one();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.integer()?;
        }
        let n = BigInt::from(self.ctx.order());
        let k: i64 = (exp % n).try_into().unwrap();
        Ok(CycloNum::root_of_unity(self.ctx, k).scale(&coeff))
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        v.push(Rational::zero());
    }
    v
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let dd = den.len() - 1;
    let mut rem = trim(num.to_vec());
    if rem.len() <= dd {
        return (vec![Rational::zero()], rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
        quot[k] = c;
    }
    rem.truncate(dd.max(1));
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}
