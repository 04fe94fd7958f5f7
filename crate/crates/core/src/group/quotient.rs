use std::sync::Arc;

use super::{FiniteGroup, GroupRef, Subgroup};
use crate::error::{Error, Result};

/// `G/N` with the projection map.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub parent: GroupRef,
    pub kernel: Subgroup,
    pub quotient: GroupRef,
    /// Image of each parent element.
    pub projection: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(kernel: &Subgroup) -> Result<Self> {
        if !kernel.is_normal() {
            return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
        }
        let parent = kernel.group().clone();
        let n = parent.order();
        // cosets in order of their least element; identity coset first
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in parent.elements() {
            if projection[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &k in kernel.elements() {
                projection[parent.mul(g, k)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = projection[parent.mul(a, b)] as u32;
            }
        }
        let gens: Vec<usize> = parent
            .generators()
            .iter()
            .map(|&g| projection[g])
            .filter(|&c| c != 0)
            .collect();
        let labels = reps.iter().map(|&r| format!("{}N", parent.label(r))).collect();
        let name = format!("{}/N{}", parent.name(), kernel.order());
        let quotient = Arc::new(FiniteGroup::from_table(m, table, gens, Some(labels), name)?);
        Ok(QuotientGroup { parent, kernel: kernel.clone(), quotient, projection })
    }

    /// Projection is a homomorphism onto the quotient with the stated kernel.
    pub fn verify(&self) -> bool {
        let p = &self.parent;
        let hom = p.elements().all(|a| {
            p.elements().all(|b| self.projection[p.mul(a, b)] == self.quotient.mul(self.projection[a], self.projection[b]))
        });
        let mut hit = vec![false; self.quotient.order()];
        for &c in &self.projection {
            hit[c] = true;
        }
        let kernel_ok = p.elements().all(|g| (self.projection[g] == 0) == self.kernel.contains(g));
        hom && kernel_ok && hit.into_iter().all(|h| h)
    }
}
