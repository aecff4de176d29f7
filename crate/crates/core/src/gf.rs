//! Arithmetic in `F_q`, `q = p^e`.
//!
//! Elements are stored as dense integer codes: the code `sum a_i p^i` stands
//! for the polynomial `sum a_i x^i` in `F_p[x] / (modulus)`. For prime fields
//! the code is simply the residue.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order the integer-code representation is meant for.
pub const MAX_ORDER: u32 = 1 << 16;

/// An element of `F_q`, identified by its integer code in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Built-in moduli for the small extension fields, constant term first.
fn default_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, e) {
        (2, 2) => &[1, 1, 1],          // x^2 + x + 1
        (2, 3) => &[1, 1, 0, 1],       // x^3 + x + 1
        (3, 2) => &[1, 0, 1],          // x^2 + 1
        (2, 4) => &[1, 1, 0, 0, 1],    // x^4 + x + 1
        (5, 2) => &[2, 0, 1],          // x^2 + 2
        (3, 3) => &[1, 2, 0, 1],       // x^3 + 2x + 1
        (2, 5) => &[1, 0, 1, 0, 0, 1], // x^5 + x^2 + 1
        _ => return None,
    };
    Some(m.to_vec())
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// A validated finite field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// `e + 1` coefficients, constant term first. Empty for prime fields.
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Builds `F_{p^e}`. For `e > 1` the modulus defaults to a built-in one
    /// when `q` is one of 4, 8, 9, 16, 25, 27, 32.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Field(format!("{p}^{e} is too large")))?;
        if e == 1 {
            return Ok(FieldSpec { p, e, q, modulus: Vec::new() });
        }
        let modulus = match modulus {
            Some(m) => m.to_vec(),
            None => default_modulus(p, e).ok_or_else(|| {
                Error::Field(format!("no built-in modulus for q = {q}; supply one"))
            })?,
        };
        if modulus.len() != e as usize + 1 {
            return Err(Error::Field(format!(
                "modulus must have {} coefficients, got {}",
                e + 1,
                modulus.len()
            )));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::Field(format!("modulus coefficient {c} not in [0, {p})")));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::Field("modulus must be monic".into()));
        }
        if !poly_irreducible(&modulus, p) {
            return Err(Error::Field(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(FieldSpec { p, e, q, modulus })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_q` from its order, using the built-in modulus for extensions.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        Self::new(p, e, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::Field(format!("element code {code} not in [0, {})", self.q)))
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// Base-`p` digits of the code, lowest degree first; always `e` long.
    pub fn decode(&self, a: FieldElement) -> Vec<u32> {
        let mut c = a.0;
        (0..self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn encode(&self, digits: &[u32]) -> FieldElement {
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.e == 1 {
            return FieldElement((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let x = self.decode(a);
        let y = self.decode(b);
        let mut prod = vec![0u32; 2 * self.e as usize - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        self.encode(&rem)
    }

    /// Multiplicative inverse; `a = 0` is a division by zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.e == 1 {
            return Ok(FieldElement(pow_mod(a.0, self.p - 2, self.p)));
        }
        // Extended Euclid in F_p[x]: track s with s * a = r (mod modulus).
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = trim(self.decode(a));
        let mut s0: Vec<u32> = vec![];
        let mut s1: Vec<u32> = vec![1];
        while !(r1.len() == 1 && r1[0] != 0) {
            let (quot, rem) = poly_divmod(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return Err(Error::Field("modulus is not irreducible".into()));
            }
        }
        let c = pow_mod(r1[0], p - 2, p);
        let inv: Vec<u32> = s1.iter().map(|&x| x * c % p).collect();
        let inv = poly_rem(&inv, &self.modulus, p);
        Ok(self.encode(&inv))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Nonzero elements, used to scale a vector onto every point of its line.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.q)
        } else {
            write!(f, "F_{} (modulus {:?})", self.q, self.modulus)
        }
    }
}

fn pow_mod(b: u32, mut exp: u32, m: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut base = (b % m) as u64;
    let m64 = m as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m64;
        }
        base = base * base % m64;
        exp >>= 1;
    }
    acc as u32
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero (trimmed, last coefficient nonzero).
fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = pow_mod(*b.last().unwrap(), p - 2, p);
    let mut quot = vec![0u32; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * lead_inv % p;
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - c * bi % p) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    poly_divmod(a, m, p).1
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn poly_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        // monic polynomials of degree d: p^d choices of the lower coefficients
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = idx;
            for _ in 0..d {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if poly_divmod(m, &f, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}
