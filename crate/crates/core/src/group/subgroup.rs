use std::fmt;

use super::GroupRef;
use crate::error::{Error, Result};

/// A subgroup stored as its sorted element set.
#[derive(Clone)]
pub struct Subgroup {
    group: GroupRef,
    elements: Vec<usize>,
    member: Vec<bool>,
    is_normal: bool,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("group", &self.group.name())
            .field("elements", &self.elements)
            .field("is_normal", &self.is_normal)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.canonical_hash() == other.group.canonical_hash() && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_members(group: &GroupRef, member: Vec<bool>) -> Self {
        let elements: Vec<usize> = (0..member.len()).filter(|&i| member[i]).collect();
        let mut s = Subgroup { group: group.clone(), elements, member, is_normal: false };
        s.is_normal = s.check_normal();
        s
    }

    pub fn whole(group: &GroupRef) -> Self {
        Subgroup::from_members(group, vec![true; group.order()])
    }

    pub fn trivial(group: &GroupRef) -> Self {
        let mut member = vec![false; group.order()];
        member[0] = true;
        Subgroup::from_members(group, member)
    }

    /// The subgroup generated by `gens`.
    pub fn generated<I: IntoIterator<Item = usize>>(group: &GroupRef, gens: I) -> Self {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut member = vec![false; group.order()];
        member[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in &gens {
                let y = group.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        Subgroup::from_members(group, member)
    }

    /// Wraps an element set after checking that it is a subgroup.
    pub fn from_elements<I: IntoIterator<Item = usize>>(group: &GroupRef, elements: I) -> Result<Self> {
        let mut member = vec![false; group.order()];
        for e in elements {
            if e >= group.order() {
                return Err(Error::UnknownElement(e.to_string()));
            }
            member[e] = true;
        }
        let s = Subgroup::from_members(group, member);
        if !s.is_closed() {
            return Err(Error::Precondition("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure<I: IntoIterator<Item = usize>>(group: &GroupRef, set: I) -> Self {
        let set: Vec<usize> = set.into_iter().collect();
        let mut conjugates = vec![false; group.order()];
        for &s in &set {
            for x in group.elements() {
                conjugates[group.conj(s, x)] = true;
            }
        }
        Subgroup::generated(group, (0..group.order()).filter(|&i| conjugates[i]))
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Closed under products and inverses, and contains the identity.
    pub fn is_closed(&self) -> bool {
        self.contains(0)
            && self.elements.iter().all(|&a| {
                self.contains(self.group.inv(a))
                    && self.elements.iter().all(|&b| self.contains(self.group.mul(a, b)))
            })
    }

    fn check_normal(&self) -> bool {
        self.elements
            .iter()
            .all(|&h| self.group.elements().all(|x| self.contains(self.group.conj(h, x))))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let member = (0..self.group.order()).map(|g| self.contains(g) && other.contains(g)).collect();
        Subgroup::from_members(&self.group, member)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        Subgroup::generated(&self.group, self.elements.iter().chain(other.elements.iter()).copied())
    }

    /// `[self, other]`, the subgroup generated by all `[a, b]`.
    pub fn commutator_with(&self, other: &Subgroup) -> Subgroup {
        let g = &self.group;
        let mut gens = vec![false; g.order()];
        for &a in &self.elements {
            for &b in &other.elements {
                gens[g.commutator(a, b)] = true;
            }
        }
        Subgroup::normal_closure(g, (0..g.order()).filter(|&i| gens[i]))
    }

    /// Subgroup generated by all `n`-th powers.
    pub fn power_subgroup(group: &GroupRef, n: u64) -> Subgroup {
        let gens: Vec<usize> = group.elements().map(|g| group.pow(g, (n % group.element_order(g) as u64) as i64)).collect();
        Subgroup::generated(group, gens)
    }

    pub fn center(group: &GroupRef) -> Subgroup {
        let member = group
            .elements()
            .map(|z| group.elements().all(|x| group.mul(z, x) == group.mul(x, z)))
            .collect();
        Subgroup::from_members(group, member)
    }

    /// `{x : x⁻¹ H x = H}`.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.group;
        let member = g
            .elements()
            .map(|x| self.elements.iter().all(|&h| self.contains(g.conj(h, x))))
            .collect();
        Subgroup::from_members(g, member)
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|&g| self.group.label(g)).collect()
    }
}
