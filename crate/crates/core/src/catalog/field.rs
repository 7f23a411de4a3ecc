//! Small finite fields `F_q`, `q = p^e`, as polynomial quotients by a fixed
//! bundled irreducible. The element with coefficient vector `(c_0, …, c_{e-1})`
//! has index `Σ c_i p^i`, so `0` and `1` are indices 0 and 1.

use crate::error::{Error, Result};
use crate::group::factorize;

/// Monic irreducibles, constant term first.
fn modulus(p: u32, e: u32) -> Option<&'static [u32]> {
    Some(match (p, e) {
        (_, 1) => &[0, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],    // x^3 + x + 1
        (2, 4) => &[1, 1, 0, 0, 1], // x^4 + x + 1
        (3, 2) => &[2, 2, 1],       // x^2 - x - 1
        (3, 3) => &[1, 2, 0, 1],    // x^3 + 2x + 1
        (5, 2) => &[2, 1, 1],       // x^2 + x + 2
        (7, 2) => &[1, 0, 1],       // x^2 + 1
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<FiniteField> {
        let (p, e) = match factorize(q as u64).as_slice() {
            [(p, e)] => (*p, *e),
            _ => return Err(Error::Unsupported(format!("{q} is not a prime power"))),
        };
        let m = modulus(p, e).ok_or_else(|| Error::Unsupported(format!("no bundled irreducible for F_{q}")))?;
        let digits = |x: usize| -> Vec<u32> {
            let mut x = x;
            (0..e)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        };
        let index = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum) as u32;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (k, &mk) in m.iter().enumerate() {
                        let idx = deg - e as usize + k;
                        prod[idx] = (prod[idx] + p * p - (c * mk) % p) % p;
                    }
                }
                mul[a * q + b] = index(&prod[..e as usize]) as u32;
            }
        }
        let field = FiniteField { p, degree: e, q, add, mul };
        for a in 1..q {
            if !(1..q).any(|b| field.mul(a as u32, b as u32) == 1) {
                return Err(Error::InvariantViolation(format!("bundled modulus for F_{q} is reducible")));
            }
        }
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// `a^(p^k)`, the k-th power of the Frobenius.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        let mut x = a;
        for _ in 0..k {
            let y = x;
            for _ in 1..self.p {
                x = self.mul(x, y);
            }
        }
        x
    }
}
