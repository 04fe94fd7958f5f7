use std::sync::Arc;

use super::perm::Permutation;
use super::{FiniteGroup, GroupRef};
use crate::cli::dsl::GroupSpec;
use crate::error::{Error, Result};

/// Builds a group from a DSL spec under the default order cap (512).
pub fn build_group(spec: &GroupSpec) -> Result<GroupRef> {
    build_group_with_cap(spec, crate::Limits::default().max_order)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<GroupRef> {
    if let Some(n) = spec.nominal_order() {
        if n > cap as u64 {
            return Err(Error::GroupTooLarge { cap });
        }
    }
    build(spec, cap).map(Arc::new)
}

fn build(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let name = spec.to_string();
    match *spec {
        GroupSpec::Cyclic(n) => {
            let gens: Vec<u64> = if n > 1 { vec![1] } else { vec![] };
            let label = |a: &u64| match a {
                0 => "1".to_string(),
                1 => "a".to_string(),
                k => format!("a^{k}"),
            };
            Ok(FiniteGroup::from_closure(0u64, &gens, |a, b| (a + b) % n, label, name, cap)?.0)
        }
        GroupSpec::ElemAb { p, k } => {
            let k = k as usize;
            let gens: Vec<Vec<u64>> = (0..k)
                .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
                .collect();
            let mul = |a: &Vec<u64>, b: &Vec<u64>| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
            let label = |a: &Vec<u64>| {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            };
            Ok(FiniteGroup::from_closure(vec![0; k], &gens, mul, label, name, cap)?.0)
        }
        GroupSpec::Dihedral(n) => {
            // (i, f) is r^i s^f; s r = r^-1 s
            let mul = |a: &(u64, u8), b: &(u64, u8)| {
                let rot = if a.1 == 0 { (a.0 + b.0) % n } else { (a.0 + n - b.0) % n };
                (rot, a.1 ^ b.1)
            };
            let label = |a: &(u64, u8)| match *a {
                (0, 0) => "1".to_string(),
                (i, 0) => format!("r^{i}"),
                (0, _) => "s".to_string(),
                (i, _) => format!("r^{i}s"),
            };
            let gens = [(1 % n, 0u8), (0, 1)];
            Ok(FiniteGroup::from_closure((0, 0), &gens, mul, label, name, cap)?.0)
        }
        GroupSpec::Quaternion(n) => {
            // a^i x^j with |a| = n/2, x² = a^(n/4), x⁻¹ a x = a⁻¹
            let m = n / 2;
            let mul = |a: &(u64, u8), b: &(u64, u8)| {
                let mut rot = if a.1 == 0 { (a.0 + b.0) % m } else { (a.0 + m - b.0) % m };
                if a.1 == 1 && b.1 == 1 {
                    rot = (rot + m / 2) % m;
                }
                (rot, a.1 ^ b.1)
            };
            let label = |a: &(u64, u8)| match *a {
                (0, 0) => "1".to_string(),
                (i, 0) => format!("a^{i}"),
                (0, _) => "x".to_string(),
                (i, _) => format!("a^{i}x"),
            };
            Ok(FiniteGroup::from_closure((0, 0), &[(1, 0), (0, 1)], mul, label, name, cap)?.0)
        }
        GroupSpec::Sym(n) => {
            let n = n as usize;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Permutation::from_cycles(n, &[vec![1, 2]])?);
            }
            if n >= 3 {
                gens.push(Permutation::from_cycles(n, &[(1..=n).collect()])?);
            }
            perm_group(n, gens, name, cap)
        }
        GroupSpec::Alt(n) => {
            let n = n as usize;
            let gens = (3..=n)
                .map(|i| Permutation::from_cycles(n, &[vec![1, 2, i]]))
                .collect::<Result<Vec<_>>>()?;
            perm_group(n, gens, name, cap)
        }
        GroupSpec::Perm(ref generators) => {
            let degree = generators.iter().flatten().flatten().copied().max().unwrap_or(1);
            let mut gens = Vec::new();
            for g in generators {
                let mut p = Permutation::identity(degree);
                for c in g {
                    p = p.compose(&Permutation::from_cycles(degree, std::slice::from_ref(c))?);
                }
                gens.push(p);
            }
            perm_group(degree, gens, name, cap)
        }
        GroupSpec::Product(ref a, ref b) => {
            let a = build(a, cap)?;
            let b = build(b, cap)?;
            Ok(direct_product_inner(&a, &b, cap, name)?.0)
        }
    }
}

fn perm_group(degree: usize, gens: Vec<Permutation>, name: String, cap: usize) -> Result<FiniteGroup> {
    let id = Permutation::identity(degree);
    Ok(FiniteGroup::from_closure(id, &gens, |a, b| a.compose(b), |p| p.to_string(), name, cap)?.0)
}

/// `A × B` with its coordinate maps.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: GroupRef,
    pub left: GroupRef,
    pub right: GroupRef,
    /// `coords[i] = (a, b)` for element `i` of the product.
    pub coords: Vec<(usize, usize)>,
    /// Embedding of `A` as `a ↦ (a, 1)`.
    pub left_embed: Vec<usize>,
    /// Embedding of `B` as `b ↦ (1, b)`.
    pub right_embed: Vec<usize>,
}

pub fn direct_product(a: &GroupRef, b: &GroupRef, cap: usize) -> Result<DirectProduct> {
    let name = format!("product({}, {})", a.name(), b.name());
    let (group, coords) = direct_product_inner(a, b, cap, name)?;
    let index = |x: (usize, usize)| coords.iter().position(|&c| c == x).unwrap();
    let left_embed = a.elements().map(|x| index((x, 0))).collect();
    let right_embed = b.elements().map(|y| index((0, y))).collect();
    Ok(DirectProduct {
        group: Arc::new(group),
        left: a.clone(),
        right: b.clone(),
        coords,
        left_embed,
        right_embed,
    })
}

fn direct_product_inner(
    a: &FiniteGroup,
    b: &FiniteGroup,
    cap: usize,
    name: String,
) -> Result<(FiniteGroup, Vec<(usize, usize)>)> {
    if a.order().saturating_mul(b.order()) > cap {
        return Err(Error::GroupTooLarge { cap });
    }
    let mut gens: Vec<(usize, usize)> = a.generators().iter().map(|&g| (g, 0)).collect();
    gens.extend(b.generators().iter().map(|&h| (0, h)));
    let mul = |x: &(usize, usize), y: &(usize, usize)| (a.mul(x.0, y.0), b.mul(x.1, y.1));
    let label = |x: &(usize, usize)| format!("({}, {})", a.label(x.0), b.label(x.1));
    let (g, coords) = FiniteGroup::from_closure((0, 0), &gens, mul, label, name, cap)?;
    if g.order() != a.order() * b.order() {
        return Err(Error::InvalidTable("factor generators do not generate the product".into()));
    }
    Ok((g, coords))
}
