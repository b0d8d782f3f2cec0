//! Exact arithmetic in the cyclotomic field Q(zeta_n) together with the
//! q-combinatorics built on top of it (q-numbers, q-factorials, Gaussian
//! binomials and the order function `char_order`).
//!
//! Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
//! Q[z]/(Phi_n(z)) as integer numerators over a single positive common
//! denominator. Every constructor and every operation returns a reduced value,
//! so structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field Q(zeta_n) with its defining polynomial and reduction tables.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u32,
    phi: usize,
    /// Low coefficients of the monic polynomial Phi_n (degree `phi`).
    poly: Vec<BigInt>,
    /// `powers[j]` is z^j reduced modulo Phi_n, for 0 <= j < max(n, 2 phi).
    powers: Vec<Vec<BigInt>>,
    /// Residues k mod n with gcd(k, n) = 1; sigma_k : z -> z^k are the embeddings' Galois group.
    units: Vec<u32>,
}

fn poly_divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // Both monic integer polynomials, little-endian coefficients.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();

impl CyclotomicField {
    /// Returns the shared field instance for conductor `n`.
    pub fn get(n: u32) -> Result<Arc<CyclotomicField>> {
        if n == 0 || n > 4096 {
            return Err(Error::InvalidConductor(n));
        }
        let registry = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = registry.lock().expect("field registry poisoned");
        if let Some(f) = guard.get(&n) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::build(n));
        guard.insert(n, f.clone());
        Ok(f)
    }

    fn build(n: u32) -> Self {
        let full = cyclotomic_polynomial(n);
        let phi = full.len() - 1;
        let poly: Vec<BigInt> = full[..phi].to_vec();
        let count = (n as usize).max(2 * phi);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by z
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..phi {
                    cur[i] -= &top * &poly[i];
                }
            }
        }
        let units = (1..=n).filter(|k| k.gcd(&n) == 1).map(|k| k % n).collect();
        CyclotomicField { n, phi, poly, powers, units }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Degree phi(n) of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of Phi_n, little-endian, including the leading 1.
    pub fn defining_polynomial(&self) -> Vec<BigInt> {
        let mut p = self.poly.clone();
        p.push(BigInt::one());
        p
    }

    /// Order of the group of roots of unity contained in the field.
    pub fn roots_of_unity_order(&self) -> u64 {
        let n = self.n as u64;
        if n.is_multiple_of(2) {
            n
        } else {
            2 * n
        }
    }
}

/// An exact element of Q(zeta_n).
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycScalar {
    fn from_parts(field: Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.phi);
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= g;
        }
        CycScalar { field, num, den }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CycScalar { field: field.clone(), num: vec![BigInt::zero(); field.phi], den: BigInt::one() }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Self {
        let mut num = vec![BigInt::zero(); field.phi];
        num[0] = BigInt::from(v);
        CycScalar { field: field.clone(), num, den: BigInt::one() }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, v: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.phi];
        num[0] = v.numer().clone();
        Self::from_parts(field.clone(), num, v.denom().clone())
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.n as i64;
        let e = k.rem_euclid(n) as usize;
        CycScalar { field: field.clone(), num: field.powers[e].clone(), den: BigInt::one() }
    }

    /// Builds an element from power-basis coordinates (length phi(n)).
    pub fn from_coords(field: &Arc<CyclotomicField>, coords: &[BigRational]) -> Result<Self> {
        if coords.len() != field.phi {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                field.phi,
                coords.len()
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(field.clone(), num, den))
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational number if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.field.n == other.field.n,
            "{}",
            Error::ConductorMismatch(self.field.n, other.field.n)
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.field.n != other.field.n {
            return Err(Error::ConductorMismatch(self.field.n, other.field.n));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field.n != other.field.n {
            return Err(Error::ConductorMismatch(self.field.n, other.field.n));
        }
        Ok(self * other)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let phi = self.field.phi;
        // rational fast paths
        if self.num[1..].iter().all(Zero::is_zero) {
            return other.scale_int(&self.num[0], &self.den);
        }
        if other.num[1..].iter().all(Zero::is_zero) {
            return self.scale_int(&other.num[0], &other.den);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for j in (phi..prod.len()).rev() {
            let c = std::mem::take(&mut prod[j]);
            if c.is_zero() {
                continue;
            }
            for k in 0..phi {
                let p = &self.field.poly[k];
                if !p.is_zero() {
                    prod[j - phi + k] -= &c * p;
                }
            }
        }
        prod.truncate(phi);
        Self::from_parts(self.field.clone(), prod, &self.den * &other.den)
    }

    fn scale_int(&self, num: &BigInt, den: &BigInt) -> Self {
        let v = self.num.iter().map(|c| c * num).collect();
        Self::from_parts(self.field.clone(), v, &self.den * den)
    }

    /// Image under the field automorphism z -> z^k (gcd(k, n) = 1).
    pub fn conjugate(&self, k: u32) -> Self {
        let n = self.field.n as usize;
        let phi = self.field.phi;
        let mut out = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i * k as usize) % n;
            for (o, p) in out.iter_mut().zip(&self.field.powers[e]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Self::from_parts(self.field.clone(), out, self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, &r.recip()));
        }
        // a^{-1} = (prod_{k != 1} sigma_k(a)) / N(a)
        let mut others = Self::one(&self.field);
        for &k in &self.field.units {
            if k != 1 {
                others = &others * &self.conjugate(k);
            }
        }
        let norm = (self * &others)
            .as_rational()
            .ok_or_else(|| Error::Consistency("field norm is not rational".into()))?;
        Ok(others.scale_int(norm.denom(), norm.numer()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same(other);
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(self.pow_u(e as u64))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative order if the element is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let big_n = self.field.roots_of_unity_order();
        if !self.pow_u(big_n).is_one() {
            return None;
        }
        (1..=big_n).filter(|d| big_n.is_multiple_of(*d)).find(|&d| self.pow_u(d).is_one())
    }

    /// Complex values of all embeddings z -> exp(2 pi i k / n), k a unit mod n.
    pub fn embeddings(&self) -> Vec<(f64, f64)> {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.field
            .units
            .iter()
            .map(|&k| {
                let mut re = 0.0;
                let mut im = 0.0;
                for (i, c) in self.num.iter().enumerate() {
                    let c = c.to_f64().unwrap_or(0.0) / den;
                    let ang = 2.0 * std::f64::consts::PI * (k as f64) * (i as f64) / n;
                    re += c * ang.cos();
                    im += c * ang.sin();
                }
                (re, im)
            })
            .collect()
    }

    fn bit_size(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).max().unwrap_or(0) + self.den.bits()
    }

    /// Parses a scalar literal: a rational expression in `z` (= zeta_n) built
    /// from integers, `+`, `-`, `*`, `/`, `^` (integer exponent) and parentheses.
    pub fn parse(field: &Arc<CyclotomicField>, text: &str) -> Result<Self> {
        let mut p = LiteralParser { field, chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' in {text:?}", p.chars[p.pos])));
        }
        Ok(v)
    }

    /// Power-basis coordinates rendered as "p/q" strings.
    pub fn to_json_coords(&self) -> Vec<String> {
        self.num
            .iter()
            .map(|c| {
                let r = BigRational::new(c.clone(), self.den.clone());
                format!("{}/{}", r.numer(), r.denom())
            })
            .collect()
    }

    pub fn from_json_coords(field: &Arc<CyclotomicField>, coords: &[String]) -> Result<Self> {
        let parsed = coords
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(field, &parsed)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(p, q))
}

struct LiteralParser<'a> {
    field: &'a Arc<CyclotomicField>,
    chars: Vec<char>,
    pos: usize,
}

impl LiteralParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CycScalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycScalar> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CycScalar> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycScalar> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = e.to_i64().ok_or_else(|| Error::Parse("exponent too large".into()))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("bad integer {s}")))
    }

    fn atom(&mut self) -> Result<CycScalar> {
        match self.peek() {
            Some('z') => {
                self.pos += 1;
                Ok(CycScalar::zeta_pow(self.field, 1))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let mut num = vec![BigInt::zero(); self.field.phi];
                num[0] = v;
                Ok(CycScalar::from_parts(self.field.clone(), num, BigInt::one()))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
            None => Err(Error::Parse("unexpected end of literal".into())),
        }
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}](n={})", self, self.field.n)
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, other: &CycScalar) -> CycScalar {
        self.check_same(other);
        if self.den == other.den {
            let v = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return CycScalar::from_parts(self.field.clone(), v, self.den.clone());
        }
        let v = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        CycScalar::from_parts(self.field.clone(), v, &self.den * &other.den)
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, other: &CycScalar) -> CycScalar {
        self + &(-other)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, other: &CycScalar) -> CycScalar {
        self.mul_impl(other)
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, other: CycScalar) -> CycScalar {
        &self + &other
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, other: CycScalar) -> CycScalar {
        &self - &other
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, other: CycScalar) -> CycScalar {
        &self * &other
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, other: &CycScalar) {
        *self = &*self + other;
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, other: &CycScalar) {
        *self = &*self - other;
    }
}

/// (m)_x = 1 + x + ... + x^(m-1).
pub fn q_number(m: u64, x: &CycScalar) -> CycScalar {
    let mut acc = CycScalar::zero(x.field());
    let mut p = CycScalar::one(x.field());
    for _ in 0..m {
        acc += &p;
        p = &p * x;
    }
    acc
}

/// (m)_x! = (1)_x (2)_x ... (m)_x.
pub fn q_factorial(m: u64, x: &CycScalar) -> CycScalar {
    let mut acc = CycScalar::one(x.field());
    let mut qn = CycScalar::zero(x.field());
    let mut p = CycScalar::one(x.field());
    for _ in 0..m {
        qn += &p;
        p = &p * x;
        acc = &acc * &qn;
    }
    acc
}

/// Gaussian binomial by the Pascal recursion
/// C(m, k) = C(m-1, k) + x^(m-k) C(m-1, k-1); never divides.
pub fn q_binomial(m: u64, k: u64, x: &CycScalar) -> Result<CycScalar> {
    if k > m {
        return Err(Error::OutOfRange(format!("k = {k} > m = {m}")));
    }
    let f = x.field();
    let mut powers = vec![CycScalar::one(f)];
    for i in 1..=m as usize {
        powers.push(&powers[i - 1] * x);
    }
    let mut row = vec![CycScalar::one(f)];
    for r in 1..=m as usize {
        let mut next = vec![CycScalar::one(f); r + 1];
        for j in 1..r {
            next[j] = &row[j] + &(&powers[r - j] * &row[j - 1]);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// The smallest r >= 2 with (r)_x! = 0, or 0 if there is none.
pub fn char_order(x: &CycScalar) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::Invalid("char_order of 0".into()));
    }
    // Any root of unity of Q(zeta_n) has order dividing `limit`.
    let limit = x.field().roots_of_unity_order();
    let mut qn = &CycScalar::one(x.field()) + x; // (2)_x
    let mut p = x * x;
    for r in 2..=limit {
        if qn.is_zero() {
            return Ok(r);
        }
        qn += &p;
        p = &p * x;
    }
    Ok(0)
}

/// Finds t with base^t = value. For a root of unity the least t >= 0 is
/// returned; otherwise the exponent is unique when it exists.
pub fn discrete_log(value: &CycScalar, base: &CycScalar) -> Result<Option<i64>> {
    if base.is_zero() {
        return Err(Error::Invalid("discrete_log with zero base".into()));
    }
    if value.is_zero() {
        return Ok(None);
    }
    if let Some(ord) = base.multiplicative_order() {
        let mut p = CycScalar::one(base.field());
        for t in 0..ord {
            if &p == value {
                return Ok(Some(t as i64));
            }
            p = &p * base;
        }
        return Ok(None);
    }
    let eb = base.embeddings();
    let ev = value.embeddings();
    for ((br, bi), (vr, vi)) in eb.iter().zip(&ev) {
        let lb = (br * br + bi * bi).sqrt().ln();
        if lb.abs() > 1e-7 {
            let lv = (vr * vr + vi * vi).sqrt().ln();
            let t0 = (lv / lb).round() as i64;
            for t in [t0, t0 - 1, t0 + 1] {
                if &base.pow(t)? == value {
                    return Ok(Some(t));
                }
            }
            return Ok(None);
        }
    }
    // All archimedean absolute values are 1 but the base is not a root of
    // unity, so some prime valuation of the base is nonzero; the exponent is
    // bounded by the size of the value's coordinates.
    let bound = 64 + 4 * (value.bit_size() + base.bit_size()) as i64;
    let inv = base.inv()?;
    let mut up = CycScalar::one(base.field());
    let mut down = CycScalar::one(base.field());
    for t in 0..=bound {
        if &up == value {
            return Ok(Some(t));
        }
        if &down == value {
            return Ok(Some(-t));
        }
        up = &up * base;
        down = &down * &inv;
    }
    Ok(None)
}
