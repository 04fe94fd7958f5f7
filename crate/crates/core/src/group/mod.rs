//! Finite groups given by Cayley tables, together with subgroups,
//! quotients and the series built from them.

mod build;
mod perm;
mod quotient;
mod series;
mod subgroup;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use num_integer::Integer;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use build::{build_group, build_group_with_cap, direct_product, DirectProduct};
pub use perm::Permutation;
pub use quotient::QuotientGroup;
pub use series::{
    abelian_invariants, lower_central_series, power_series_subgroup, structural_report, LowerCentralSeries,
    StructureReport,
};
pub use subgroup::Subgroup;

pub type GroupRef = Arc<FiniteGroup>;

/// A finite group stored as its multiplication table.
///
/// Element `0` is the identity. Indices follow breadth-first insertion order
/// from the generator list, so the table (and its hash) is reproducible.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    name: String,
    hash: String,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major table. Checks the identity and inverse
    /// laws and the Latin-square property; associativity is left to
    /// [`FiniteGroup::verify_associativity`].
    pub fn from_table(
        order: usize,
        table: Vec<u32>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::InvalidTable(format!("element 0 is not an identity for {i}")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = table[a * order + b] as usize;
                if seen[c] {
                    return Err(Error::InvalidTable(format!("row {a} repeats an entry")));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        for a in 0..order {
            if table[inv[a] as usize * order + a] != 0 {
                return Err(Error::InvalidTable(format!("left and right inverse of {a} differ")));
            }
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidTable("label count does not match order".into()));
            }
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(Error::InvalidTable("generator out of range".into()));
        }

        let mut hasher = Sha256::new();
        hasher.update((order as u64).to_le_bytes());
        for &x in &table {
            hasher.update(x.to_le_bytes());
        }
        let hash = hex::encode(hasher.finalize());

        let mut group = FiniteGroup {
            order,
            table,
            inv,
            orders: Vec::new(),
            generators,
            labels,
            name: name.into(),
            hash,
        };
        group.orders = (0..order).map(|g| group.compute_order(g)).collect();
        Ok(group)
    }

    /// Breadth-first closure of `generators` under right multiplication.
    /// Returns the group and the concrete elements in index order.
    pub fn from_closure<E, M, L>(
        identity: E,
        generators: &[E],
        mul: M,
        label: L,
        name: impl Into<String>,
        cap: usize,
    ) -> Result<(Self, Vec<E>)>
    where
        E: Clone + Eq + Hash,
        M: Fn(&E, &E) -> E,
        L: Fn(&E) -> String,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<E, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&mul(a, b)] as u32;
            }
        }
        let mut gens: Vec<usize> = generators.iter().map(|g| index[g]).filter(|&g| g != 0).collect();
        gens.dedup();
        let labels = elements.iter().map(label).collect();
        let group = FiniteGroup::from_table(n, table, gens, Some(labels), name)?;
        Ok((group, elements))
    }

    fn compute_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let n = self.orders[g] as i64;
        let e = e.rem_euclid(n);
        let mut r = 0;
        let mut base = g;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// `x⁻¹ g x`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Hex SHA-256 of the Cayley table bytes.
    pub fn canonical_hash(&self) -> &str {
        &self.hash
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Resolves an element reference: a decimal index, or a label such as a
    /// permutation in cycle notation (`(1 2 3)`, `(1,2)(3,4)`).
    pub fn find_element(&self, reference: &str) -> Result<usize> {
        let r = reference.trim();
        if let Ok(i) = r.parse::<usize>() {
            return if i < self.order {
                Ok(i)
            } else {
                Err(Error::UnknownElement(r.to_string()))
            };
        }
        let canonical = Permutation::parse_cycles(r)
            .map(|p| p.to_string())
            .unwrap_or_else(|_| r.to_string());
        self.labels
            .as_ref()
            .and_then(|l| l.iter().position(|s| *s == canonical || s == r))
            .ok_or_else(|| Error::UnknownElement(r.to_string()))
    }

    /// Exhaustive associativity check, O(n³).
    pub fn verify_associativity(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn is_p_group(&self) -> Option<u64> {
        let primes = prime_factors(self.order as u64);
        match primes.as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}
