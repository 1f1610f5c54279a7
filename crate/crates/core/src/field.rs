//! Small Galois fields GF(p^k) with p^k ≤ 256, stored as full lookup tables.
//!
//! An element is identified by the integer whose base-p digits are its
//! polynomial coefficients (constant term first), so `FieldElement(p)` is `x`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits `q` as `p^k`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p). Coefficients constant-first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    (0..p.pow(degree)).map(move |mut n| {
        let mut c = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            c.push(n % p);
            n /= p;
        }
        c.push(1);
        c
    })
}

/// True when the monic polynomial `m` has no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|f| poly_rem(m, &f, p).iter().any(|&c| c % p != 0)))
}

impl GaloisField {
    /// GF(p^k) with the default modulus: x³+x+1 for GF(8), x³+2x+1 for GF(27),
    /// x²+1 for GF(9), otherwise the lexicographically first irreducible monic.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = match (p, k) {
            (_, 1) => vec![0, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (3, 3) => vec![1, 2, 0, 1],
            (3, 2) => vec![1, 0, 1],
            _ => monic_polys(p, k)
                .find(|m| is_irreducible(m, p))
                .ok_or(Error::UnsupportedField(p.pow(k)))?,
        };
        Self::with_modulus(p, &modulus)
    }

    /// GF(p^k) where `modulus` is monic of degree k, constant term first.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::InvalidRecipe(
                "modulus must be monic of degree ≥ 1".into(),
            ));
        }
        let k = modulus.len() as u32 - 1;
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= 256)
            .ok_or(Error::UnsupportedField(u32::MAX))?;
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        let digits = |mut n: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = n % p;
                    n /= p;
                    d
                })
                .collect()
        };
        let value = |c: &[u32]| -> u16 { c.iter().rev().fold(0, |acc, &d| acc * p + d % p) as u16 };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = value(&sum);
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                mul[a as usize * qs + b as usize] = value(&poly_rem(&prod, modulus, p));
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs)
                        .find(|&b| mul[a * qs + b] == 1)
                        .expect("field has inverses") as u16
                }
            })
            .collect();
        Ok(GaloisField {
            p,
            k,
            modulus: modulus.to_vec(),
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.neg.len()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size() as u16).map(FieldElement)
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut n = a.0 as u32;
        (0..self.k)
            .map(|_| {
                let d = n % self.p;
                n /= self.p;
                d
            })
            .collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.size() + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.size() + b.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a.0 != 0).then(|| FieldElement(self.inv[a.0 as usize]))
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<usize> {
        if a.0 == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != self.one() {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// The smallest-indexed generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .find(|&a| self.multiplicative_order(a) == Some(self.size() - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}
