//! Finite abelian groups given as direct products of cyclic groups.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z_{o_1} x .. x Z_{o_r}`, stored with every order at least 2 and sorted.
/// The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianSpec {
    orders: Vec<u64>,
}

/// Invariant factors `d_1 | d_2 | .. | d_n` with `d_1 > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFactors(pub Vec<u128>);

impl InvariantFactors {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u128] {
        &self.0
    }
}

impl AbelianSpec {
    /// Drops orders equal to 1; rejects 0.
    pub fn new(orders: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut out = Vec::new();
        for o in orders {
            match o {
                0 => return Err(Error::invalid("cyclic order must be positive")),
                1 => {}
                _ => out.push(o),
            }
        }
        out.sort_unstable();
        Ok(AbelianSpec { orders: out })
    }

    pub fn trivial() -> Self {
        AbelianSpec { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// `|G|`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.orders
            .iter()
            .try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }

    /// Primes dividing `|G|`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        primary_decomposition(self).into_keys().collect()
    }
}

impl TryFrom<Vec<u64>> for AbelianSpec {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        AbelianSpec::new(orders)
    }
}

impl From<AbelianSpec> for Vec<u64> {
    fn from(spec: AbelianSpec) -> Self {
        spec.orders
    }
}

impl FromStr for AbelianSpec {
    type Err = Error;

    /// Comma-separated orders, e.g. `2,4,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(AbelianSpec::trivial());
        }
        let mut orders = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let t = part.trim();
            let value = t.parse::<u64>().map_err(|e| Error::Parse {
                position: offset,
                message: format!("bad order '{t}': {e}"),
            })?;
            if value > i64::MAX as u64 {
                return Err(Error::Parse {
                    position: offset,
                    message: format!("order {value} exceeds 2^63 - 1"),
                });
            }
            orders.push(value);
            offset += part.len() + 1;
        }
        AbelianSpec::new(orders)
    }
}

impl fmt::Display for AbelianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|o| o.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// For each prime, the ascending list of nontrivial prime-power parts.
pub fn primary_decomposition(spec: &AbelianSpec) -> BTreeMap<u64, Vec<u64>> {
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in &spec.orders {
        for (p, e) in factorize(o) {
            out.entry(p).or_default().push(p.pow(e));
        }
    }
    for parts in out.values_mut() {
        parts.sort_unstable();
    }
    out
}

/// Canonical invariant factors: the `j`-th largest factor is the product over
/// primes of the `j`-th largest prime-power part.
pub fn invariant_factors(spec: &AbelianSpec) -> InvariantFactors {
    let primary = primary_decomposition(spec);
    let n = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut d = vec![1u128; n];
    for parts in primary.values() {
        // Pad on the left with 1s so the largest parts line up with d_n.
        let pad = n - parts.len();
        for (i, &q) in parts.iter().enumerate() {
            d[pad + i] = d[pad + i]
                .checked_mul(q as u128)
                .expect("invariant factor overflows u128");
        }
    }
    InvariantFactors(d)
}

/// `n(G)`, the number of invariant factors.
pub fn n_of(spec: &AbelianSpec) -> usize {
    primary_decomposition(spec)
        .values()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// `N(G)`, the sum over primes of the number of invariant factors of `G_p`.
pub fn capital_n(spec: &AbelianSpec) -> usize {
    primary_decomposition(spec).values().map(Vec::len).sum()
}

/// Product of the maximal `p`-power divisors of `m` over `p` in `primes`.
pub fn pi_part(m: u64, primes: &[u64]) -> u64 {
    factorize(m)
        .into_iter()
        .filter(|(p, _)| primes.contains(p))
        .map(|(p, e)| p.pow(e))
        .product()
}
