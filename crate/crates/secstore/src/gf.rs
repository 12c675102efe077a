//! Exact arithmetic in prime fields GF(q).
//!
//! Fields carry a deterministically chosen primitive element (the smallest
//! one) together with precomputed exp/log tables, so that Vandermonde and
//! cyclic constructions are reproducible byte for byte.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported modulus; keeps the exp/log tables small.
pub const MAX_MODULUS: u64 = 1 << 16;

#[derive(Debug)]
struct Tables {
    /// exp[i] = alpha^i for i in [0, q-1).
    exp: Vec<u64>,
    /// log[x] = i with alpha^i = x, for x in [1, q); log[0] is unused.
    log: Vec<u64>,
}

/// A prime field GF(q) with a fixed primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    q: u64,
    alpha: u64,
    tables: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

impl Field {
    /// Constructs GF(q) with the smallest primitive element of q.
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        if q < 2 || !is_prime(q) {
            return Err(Error::NonPrimeModulus(q));
        }
        let alpha = smallest_primitive_root(q);
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u64; q as usize];
        let mut x = 1u64;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = x * alpha % q;
        }
        Ok(Field {
            q,
            alpha,
            tables: Arc::new(Tables { exp, log }),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// The smallest primitive element of GF(q).
    pub fn primitive_element(&self) -> FieldElement {
        self.element(self.alpha)
    }

    /// Wraps an integer as a field element, reducing mod q.
    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            q: self.q,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// alpha^i, with the exponent taken mod q-1.
    pub fn exp(&self, i: u64) -> FieldElement {
        if self.q == 2 {
            return self.one();
        }
        self.element(self.tables.exp[(i % (self.q - 1)) as usize])
    }

    /// Discrete log base alpha of a nonzero element.
    pub fn log(&self, x: FieldElement) -> Result<u64> {
        if x.value == 0 {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(self.tables.log[x.value as usize])
    }

    /// alpha^e for a signed exponent (negative exponents wrap mod q-1).
    pub fn exp_signed(&self, e: i64) -> FieldElement {
        let m = (self.q - 1) as i64;
        self.exp(e.rem_euclid(m) as u64)
    }

    /// All q elements, ascending.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|v| self.element(v))
    }

    // Raw helpers used by the matrix kernels; values must already be reduced.
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q { s - self.q } else { s }
    }

    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.q - b }
    }

    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(pow_mod(a, self.q - 2, self.q))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// An element of a prime field, tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    q: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn require_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        Ok(())
    }

    pub fn try_add(self, rhs: FieldElement) -> Result<FieldElement> {
        self.require_same_field(&rhs)?;
        Ok(FieldElement {
            value: (self.value + rhs.value) % self.q,
            q: self.q,
        })
    }

    pub fn try_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        self.require_same_field(&rhs)?;
        Ok(FieldElement {
            value: (self.value + self.q - rhs.value) % self.q,
            q: self.q,
        })
    }

    pub fn try_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        self.require_same_field(&rhs)?;
        Ok(FieldElement {
            value: self.value * rhs.value % self.q,
            q: self.q,
        })
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(FieldElement {
            value: pow_mod(self.value, self.q - 2, self.q),
            q: self.q,
        })
    }

    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement {
            value: pow_mod(self.value, e, self.q),
            q: self.q,
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: (self.q - self.value) % self.q,
            q: self.q,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// Ascending search for the smallest generator of GF(q)*.
fn smallest_primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = prime_factors(q - 1);
    'outer: for g in 2..q {
        for &p in &factors {
            if pow_mod(g, (q - 1) / p, q) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime field has a primitive root")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
