use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::scalar::RingScalar;

/// A finitely supported map from group elements to coefficients.
/// Zero coefficients are never stored.
#[derive(Clone)]
pub struct GroupRingElement<T> {
    group: GroupRef,
    coeffs: BTreeMap<usize, T>,
}

impl<T: RingScalar> PartialEq for GroupRingElement<T> {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl<T: RingScalar + fmt::Display> fmt::Debug for GroupRingElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: RingScalar + fmt::Display> fmt::Display for GroupRingElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (g, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", c, self.group.label(*g))?;
        }
        Ok(())
    }
}

pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || a.canonical_hash() == b.canonical_hash()
}

impl<T: RingScalar> GroupRingElement<T> {
    pub fn zero(group: &GroupRef) -> Self {
        GroupRingElement { group: group.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(group: &GroupRef) -> Self {
        Self::basis(group, 0)
    }

    /// The group element `g` viewed in the ring.
    pub fn basis(group: &GroupRef, g: usize) -> Self {
        Self::from_terms(group, [(g, T::one())])
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (usize, T)>>(group: &GroupRef, terms: I) -> Self {
        let mut coeffs: BTreeMap<usize, T> = BTreeMap::new();
        for (g, c) in terms {
            assert!(g < group.order(), "element index {g} out of range");
            let slot = coeffs.entry(g).or_insert_with(T::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        GroupRingElement { group: group.clone(), coeffs }
    }

    pub fn from_dense(group: &GroupRef, dense: Vec<T>) -> Self {
        assert_eq!(dense.len(), group.order());
        Self::from_terms(group, dense.into_iter().enumerate())
    }

    /// `g − 1`.
    pub fn g_minus_one(group: &GroupRef, g: usize) -> Self {
        Self::from_terms(group, [(g, T::one()), (0, -T::one())])
    }

    /// `ĝ = 1 + g + … + g^{n−1}` with `n` the order of `g`.
    pub fn hat(group: &GroupRef, g: usize) -> Self {
        let n = group.element_order(g);
        Self::from_terms(group, (0..n).map(|i| (group.pow(g, i as i64), T::one())))
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn coeff(&self, g: usize) -> T {
        self.coeffs.get(&g).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// `Some(g)` when the element is `±g` for a single group element.
    pub fn as_trivial_unit(&self) -> Option<(usize, bool)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&g, c) = self.coeffs.iter().next().unwrap();
        if c.is_one() {
            Some((g, true))
        } else if (-c.clone()).is_one() {
            Some((g, false))
        } else {
            None
        }
    }

    pub fn to_dense(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.group.order()];
        for (&g, c) in &self.coeffs {
            v[g] = c.clone();
        }
        v
    }

    /// Sum of coefficients; a ring homomorphism to the scalars.
    pub fn augmentation(&self) -> T {
        self.coeffs.values().fold(T::zero(), |a, c| a + c.clone())
    }

    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let mut out = vec![T::zero(); self.group.order()];
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                let c = self.group.mul(a, b);
                out[c] = out[c].clone() + x.clone() * y.clone();
            }
        }
        Ok(Self::from_dense(&self.group, out))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let terms = self.coeffs.iter().chain(other.coeffs.iter()).map(|(&g, c)| (g, c.clone()));
        Ok(Self::from_terms(&self.group, terms))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_terms(&self.group, self.coeffs.iter().map(|(&g, c)| (g, c.clone() * s.clone())))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(&self.group);
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

    /// Image under a group homomorphism given as an index map into `target`.
    pub fn map_group(&self, target: &GroupRef, map: &[usize]) -> Self {
        Self::from_terms(target, self.coeffs.iter().map(|(&g, c)| (map[g], c.clone())))
    }

    pub fn map_coeffs<U: RingScalar>(&self, f: impl Fn(&T) -> U) -> GroupRingElement<U> {
        GroupRingElement::from_terms(&self.group, self.coeffs.iter().map(|(&g, c)| (g, f(c))))
    }
}

impl<T: RingScalar> Add for &GroupRingElement<T> {
    type Output = GroupRingElement<T>;
    fn add(self, rhs: Self) -> GroupRingElement<T> {
        self.try_add(rhs).expect("group mismatch")
    }
}

impl<T: RingScalar> Sub for &GroupRingElement<T> {
    type Output = GroupRingElement<T>;
    fn sub(self, rhs: Self) -> GroupRingElement<T> {
        self.try_add(&-rhs).expect("group mismatch")
    }
}

impl<T: RingScalar> Neg for &GroupRingElement<T> {
    type Output = GroupRingElement<T>;
    fn neg(self) -> GroupRingElement<T> {
        self.scale(&-T::one())
    }
}

impl<T: RingScalar> Mul for &GroupRingElement<T> {
    type Output = GroupRingElement<T>;
    fn mul(self, rhs: Self) -> GroupRingElement<T> {
        self.ring_mul(rhs).expect("group mismatch")
    }
}

/// `{"group": <hash>, "coeffs": {"<index>": "<decimal>"}}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementJson {
    pub group: String,
    pub coeffs: BTreeMap<String, String>,
}

impl<T: RingScalar + fmt::Display> GroupRingElement<T> {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            group: self.group.canonical_hash().to_string(),
            coeffs: self.coeffs.iter().map(|(g, c)| (g.to_string(), c.to_string())).collect(),
        }
    }
}

impl<T: RingScalar + FromStr> GroupRingElement<T> {
    pub fn from_json(group: &GroupRef, json: &ElementJson) -> Result<Self> {
        if json.group != group.canonical_hash() {
            return Err(Error::GroupMismatch);
        }
        let mut terms = Vec::with_capacity(json.coeffs.len());
        for (k, v) in &json.coeffs {
            let g: usize = k.parse().map_err(|_| Error::UnknownElement(k.clone()))?;
            if g >= group.order() {
                return Err(Error::UnknownElement(k.clone()));
            }
            let c = v
                .parse::<T>()
                .map_err(|_| Error::Precondition(format!("bad coefficient `{v}`")))?;
            terms.push((g, c));
        }
        Ok(Self::from_terms(group, terms))
    }
}
