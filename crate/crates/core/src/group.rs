//! Finite groups given by an explicit multiplication table.
//!
//! Elements are the indices `0..order`, with `0` the identity. The table is
//! validated once at construction; afterwards a [`Group`] is immutable and is
//! normally shared through an [`Arc`].

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Index of an element inside its group.
pub type Elem = u32;

/// Groups up to this order have associativity checked on every triple.
pub const FULL_ASSOCIATIVITY_MAX: usize = 512;
/// Number of seeded random triples checked above [`FULL_ASSOCIATIVITY_MAX`].
pub const SAMPLED_TRIPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_f00d;

#[derive(Clone)]
pub struct Group {
    name: String,
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elem_orders: Vec<u32>,
}

impl Group {
    /// Builds a group from `f(a, b) = a·b` on `0..order`, validating every law.
    pub fn from_fn(name: impl Into<String>, order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable { law: "nonempty", detail: "order 0".into() });
        }
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = f(a, b);
                if c >= order {
                    return Err(Error::InvalidTable {
                        law: "closure",
                        detail: format!("{a}*{b} = {c} is out of range"),
                    });
                }
                mul.push(c as Elem);
            }
        }
        Group::from_flat(name, order, mul)
    }

    /// Builds a group from table rows (`rows[a][b] = a·b`).
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Group> {
        let order = rows.len();
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable {
                    law: "square",
                    detail: format!("row {a} has {} entries, expected {order}", row.len()),
                });
            }
        }
        Group::from_fn(name, order, |a, b| rows[a][b])
    }

    fn from_flat(name: impl Into<String>, order: usize, mul: Vec<Elem>) -> Result<Group> {
        let n = order;
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(Error::InvalidTable {
                    law: "identity",
                    detail: format!("0 is not a two-sided identity for element {x}"),
                });
            }
        }
        // Latin square rows and columns.
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = mul[a * n + b] as usize;
                if seen[c] == a {
                    return Err(Error::InvalidTable {
                        law: "latin square",
                        detail: format!("row {a} repeats entry {c}"),
                    });
                }
                seen[c] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let c = mul[a * n + b] as usize;
                if seen[c] == b {
                    return Err(Error::InvalidTable {
                        law: "latin square",
                        detail: format!("column {b} repeats entry {c}"),
                    });
                }
                seen[c] = b;
            }
        }
        let mut inv = vec![0 as Elem; n];
        for a in 0..n {
            let b = (0..n).find(|&b| mul[a * n + b] == 0).expect("latin row contains 0");
            if mul[b * n + a] != 0 {
                return Err(Error::InvalidTable {
                    law: "inverse",
                    detail: format!("right inverse of {a} is not a left inverse"),
                });
            }
            inv[a] = b as Elem;
        }
        let m = |a: usize, b: usize| mul[a * n + b] as usize;
        if n <= FULL_ASSOCIATIVITY_MAX {
            for a in 0..n {
                for b in 0..n {
                    let ab = m(a, b);
                    for c in 0..n {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(Error::InvalidTable {
                                law: "associativity",
                                detail: format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                            });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::InvalidTable {
                        law: "associativity",
                        detail: format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                    });
                }
            }
        }
        let mut elem_orders = vec![0u32; n];
        for x in 0..n {
            let mut k = 1u32;
            let mut y = x;
            while y != 0 {
                y = m(y, x);
                k += 1;
            }
            elem_orders[x] = k;
        }
        Ok(Group { name: name.into(), order: n, mul, inv, elem_orders })
    }

    pub fn into_arc(self) -> Arc<Group> {
        Arc::new(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.elem_order(a) as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> u32 {
        self.elem_orders[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Table rows, as stored in group files.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.mul[a * self.order..(a + 1) * self.order].iter().map(|&c| c as usize).collect())
            .collect()
    }

    /// Whether the two groups have identical multiplication tables.
    pub fn same_table(&self, other: &Group) -> bool {
        self.mul == other.mul
    }

    pub fn renamed(&self, name: impl Into<String>) -> Group {
        Group {
            name: name.into(),
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            elem_orders: self.elem_orders.clone(),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d as u32, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u32, 1));
    }
    out
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && factorize(p as u64) == vec![(p, 1)]
}

pub(crate) fn ensure_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `Some(p)` if `n = p^k` with `k ≥ 1`.
pub fn prime_of_power(n: usize) -> Option<u32> {
    match factorize(n as u64).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Whether `n` is a power of `p` (including `p^0 = 1`).
pub fn is_power_of(n: u64, p: u32) -> bool {
    let mut n = n;
    while n % p as u64 == 0 {
        n /= p as u64;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u32) -> u64 {
    let mut part = 1;
    while n % p as u64 == 0 {
        n /= p as u64;
        part *= p as u64;
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Group {
        Group::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn cyclic_orders() {
        let g = cyclic(6);
        assert_eq!(g.elem_order(0), 1);
        assert_eq!(g.elem_order(1), 6);
        assert_eq!(g.elem_order(2), 3);
        assert_eq!(g.elem_order(3), 2);
        assert_eq!(g.inv(1), 5);
        assert_eq!(g.pow(1, 4), 4);
    }

    #[test]
    fn rejects_non_latin() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        let err = Group::from_rows("bad", &rows).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { law: "latin square", .. }));
    }

    #[test]
    fn rejects_non_associative() {
        // A Latin square with identity 0 that is not associative (a loop of order 5).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = Group::from_rows("loop", &rows).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { law: "associativity", .. }), "{err}");
    }

    #[test]
    fn rejects_bad_identity() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        let err = Group::from_rows("swap", &rows).unwrap_err();
        assert!(matches!(err, Error::InvalidTable { law: "identity", .. }));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(576), vec![(2, 6), (3, 2)]);
        assert_eq!(prime_of_power(81), Some(3));
        assert_eq!(prime_of_power(12), None);
        assert_eq!(prime_of_power(1), None);
        assert!(is_power_of(1, 5));
        assert_eq!(p_part(144, 2), 16);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
