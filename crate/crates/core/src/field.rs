//! Small finite fields: prime fields GF(p) with p <= 251 and binary
//! extensions GF(2^e) with e <= 8.
//!
//! Elements are stored as `u8` canonical representatives. For GF(2^e) the
//! representative is the coefficient vector in the polynomial basis
//! (bit i = coefficient of x^i), so addition is XOR.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element: canonical representative in `0..q`.
pub type Elem = u8;

/// Default irreducible polynomials over GF(2), indexed by degree.
/// Bit i is the coefficient of x^i.
const DEFAULT_POLYS: [u16; 9] = [0, 0b10, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x83, 0x11d];

/// Description of a field: characteristic, extension degree and (for e > 1)
/// the defining polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Defining polynomial over GF(2) for e > 1, zero for prime fields.
    pub poly: u16,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, poly: 0 }
    }

    /// GF(2^e) with the built-in irreducible polynomial of degree e.
    pub fn binary(e: u32) -> Self {
        if e <= 1 {
            return FieldSpec::prime(2);
        }
        let poly = DEFAULT_POLYS.get(e as usize).copied().unwrap_or(0);
        FieldSpec { p: 2, e, poly }
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

fn is_prime(n: u32) -> bool {
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

fn poly_degree(a: u32) -> i32 {
    31 - a.leading_zeros() as i32
}

fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Exhaustive trial division by every polynomial of degree 1..=deg/2.
fn gf2_poly_irreducible(poly: u32) -> bool {
    let deg = poly_degree(poly);
    if deg < 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        for f in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_mod(poly, f) == 0 {
                return false;
            }
        }
    }
    true
}

struct Tables {
    spec: FieldSpec,
    q: usize,
    /// Full multiplication table, `mul[a * q + b]`.
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    /// Square roots; only filled in characteristic 2.
    sqrt: Vec<Elem>,
}

/// Arithmetic for a [`FieldSpec`]. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.t.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.t.spec == other.t.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        if !is_prime(spec.p) || spec.p > 251 {
            return Err(Error::InvalidField(format!(
                "characteristic {} not a prime <= 251",
                spec.p
            )));
        }
        if spec.e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if spec.e > 1 {
            if spec.p != 2 || spec.e > 8 {
                return Err(Error::InvalidField(format!(
                    "extensions only supported for p = 2, e <= 8 (got {spec})"
                )));
            }
            if poly_degree(spec.poly as u32) != spec.e as i32 {
                return Err(Error::InvalidField(format!(
                    "polynomial {:#x} has wrong degree",
                    spec.poly
                )));
            }
            if !gf2_poly_irreducible(spec.poly as u32) {
                return Err(Error::InvalidField(format!(
                    "polynomial {:#x} is reducible",
                    spec.poly
                )));
            }
        }
        let q = spec.order() as usize;
        let mut mul = vec![0u8; q * q];
        if spec.e == 1 {
            for a in 0..q {
                for b in 0..q {
                    mul[a * q + b] = ((a * b) % q) as u8;
                }
            }
        } else {
            // Log/antilog tables over a primitive element found by search.
            let poly = spec.poly as u32;
            let raw_mul = |a: u32, b: u32| -> u32 {
                let mut acc = 0u32;
                for i in 0..spec.e {
                    if (b >> i) & 1 == 1 {
                        acc ^= a << i;
                    }
                }
                poly_mod(acc, poly)
            };
            let order = q - 1;
            let generator = (2..q as u32)
                .find(|&g| {
                    let mut x = 1u32;
                    for k in 1..=order {
                        x = raw_mul(x, g);
                        if x == 1 {
                            return k == order;
                        }
                    }
                    false
                })
                .unwrap_or(1);
            let mut exp = vec![0u32; 2 * order];
            let mut log = vec![0usize; q];
            let mut x = 1u32;
            for (k, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                if k < order {
                    log[x as usize] = k;
                }
                x = raw_mul(x, generator);
            }
            for a in 1..q {
                for b in 1..q {
                    mul[a * q + b] = exp[log[a] + log[b]] as u8;
                }
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("field has inverses") as u8;
        }
        let mut sqrt = vec![0u8; q];
        if spec.p == 2 {
            for a in 0..q {
                let sq = mul[a * q + a];
                sqrt[sq as usize] = a as u8;
            }
        }
        Ok(Field {
            t: Arc::new(Tables {
                spec,
                q,
                mul,
                inv,
                sqrt,
            }),
        })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn binary(e: u32) -> Result<Self> {
        Field::new(FieldSpec::binary(e))
    }

    pub fn spec(&self) -> FieldSpec {
        self.t.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.t.spec.p
    }

    pub fn order(&self) -> usize {
        self.t.q
    }

    pub fn is_binary(&self) -> bool {
        self.t.spec.p == 2
    }

    /// True for GF(2) itself, where matrices are bit-packed.
    pub fn is_gf2(&self) -> bool {
        self.t.spec.p == 2 && self.t.spec.e == 1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.t.spec.p == 2 {
            a ^ b
        } else {
            let s = a as u32 + b as u32;
            let p = self.t.spec.p;
            (if s >= p { s - p } else { s }) as u8
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.t.spec.p == 2 || a == 0 {
            a
        } else {
            (self.t.spec.p - a as u32) as u8
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul[a as usize * self.t.q + b as usize]
    }

    /// Row of the multiplication table for a fixed left factor.
    #[inline]
    pub fn mul_row(&self, a: Elem) -> &[Elem] {
        let q = self.t.q;
        &self.t.mul[a as usize * q..(a as usize + 1) * q]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.t.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square root in characteristic 2, where squaring is a bijection.
    pub fn sqrt(&self, a: Elem) -> Result<Elem> {
        if self.t.spec.p != 2 {
            return Err(Error::Unsupported(
                "square roots are only provided in characteristic 2".into(),
            ));
        }
        Ok(self.t.sqrt[a as usize])
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.t.spec.p as i64) as u8
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.t.q as u32) as u8
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.t.q).map(|a| a as u8)
    }
}
