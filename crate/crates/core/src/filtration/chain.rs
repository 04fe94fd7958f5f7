use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::zring::{hnf, smith_invariants};
use crate::{Int, Lattice, Limits, ZElement};

/// `Δ¹ ⊇ Δ² ⊇ … ⊇ Δᴺ` as canonical lattices in ℤ^|G|.
#[derive(Debug, Clone)]
pub struct DeltaChain {
    group: GroupRef,
    lattices: Vec<Lattice>,
    quotient_invariants: Vec<Vec<Int>>,
    stabilized_at: Option<usize>,
}

/// Where an element sits in the Δ-adic filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaDepth {
    /// In `Δⁿ` but not in `Δⁿ⁺¹` (`n = 0`: augmentation nonzero).
    Exact { n: usize },
    /// In `Δ^{n*}` for a stabilized chain, hence in `Δ^ω`.
    Omega { stabilized_at: usize },
    /// In every computed power of an unstabilized chain.
    AtLeast { depth: usize },
}

impl DeltaDepth {
    /// Lower bound on the depth.
    pub fn at_least(&self, n: usize) -> bool {
        match *self {
            DeltaDepth::Exact { n: m } => m >= n,
            DeltaDepth::Omega { .. } => true,
            DeltaDepth::AtLeast { depth } => depth >= n,
        }
    }
}

/// `Δ(G)`, spanned by `g − 1` for `g ≠ 1`.
pub fn augmentation_ideal(group: &GroupRef) -> Lattice {
    let n = group.order();
    hnf(
        n,
        (1..n).map(|g| {
            let mut v = vec![Int::from(0); n];
            v[0] = Int::from(-1);
            v[g] = Int::from(1);
            v
        }),
    )
}

/// `Δ · L`, generated by `(g − 1)·b` over `g ≠ 1` and the basis of `L`.
pub fn next_power(group: &GroupRef, lattice: &Lattice) -> Lattice {
    let n = group.order();
    let rows = (1..n).flat_map(|g| {
        lattice.basis().iter().map(move |b| {
            let mut v: Vec<Int> = b.iter().map(|x| -x).collect();
            for (j, x) in b.iter().enumerate() {
                let k = group.mul(g, j);
                v[k] += x;
            }
            v
        })
    });
    hnf(n, rows)
}

pub fn delta_chain(group: &GroupRef, depth: usize) -> Result<DeltaChain> {
    DeltaChain::build(group, depth, &Limits::default())
}

impl DeltaChain {
    pub fn build(group: &GroupRef, depth: usize, limits: &Limits) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Precondition("depth must be at least 1".into()));
        }
        if depth > limits.max_depth {
            return Err(Error::DepthTooLarge { requested: depth, cap: limits.max_depth });
        }
        let mut lattices = vec![augmentation_ideal(group)];
        let mut stabilized_at = None;
        while lattices.len() < depth {
            let last = lattices.last().unwrap();
            if stabilized_at.is_some() {
                lattices.push(last.clone());
                continue;
            }
            let next = next_power(group, last);
            if next == *last {
                stabilized_at = Some(lattices.len());
            }
            lattices.push(next);
        }
        let quotient_invariants = lattices
            .windows(2)
            .map(|w| smith_invariants(&w[1], &w[0]))
            .collect::<Result<Vec<_>>>()?;
        Ok(DeltaChain { group: group.clone(), lattices, quotient_invariants, stabilized_at })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn depth(&self) -> usize {
        self.lattices.len()
    }

    /// `Δⁿ` for `1 ≤ n ≤ depth`.
    pub fn lattice(&self, n: usize) -> &Lattice {
        assert!(n >= 1 && n <= self.depth(), "Δ^{n} outside the computed range");
        &self.lattices[n - 1]
    }

    pub fn lattices(&self) -> &[Lattice] {
        &self.lattices
    }

    /// Invariant factors of `Δⁿ/Δⁿ⁺¹` for `1 ≤ n < depth`.
    pub fn quotient_invariants(&self, n: usize) -> &[Int] {
        &self.quotient_invariants[n - 1]
    }

    /// `n*` with `Δ^{n*} = Δ^{n*+1}`, when detected.
    pub fn stabilized_at(&self) -> Option<usize> {
        self.stabilized_at
    }

    /// Whether `x ∈ Δⁿ`; `Δ⁰` is the whole ring.
    pub fn contains(&self, n: usize, x: &ZElement) -> bool {
        n == 0 || self.lattice(n).contains(&x.to_dense())
    }

    /// Recomputes two further powers from `Δ^{n*}` and checks they agree.
    pub fn recheck_stabilization(&self) -> Option<bool> {
        let n = self.stabilized_at?;
        let base = self.lattice(n);
        let a = next_power(&self.group, base);
        let b = next_power(&self.group, &a);
        Some(a == *base && b == *base)
    }

    pub fn report(&self) -> ChainReport {
        ChainReport {
            group: self.group.name().to_string(),
            hash: self.group.canonical_hash().to_string(),
            depth: self.depth(),
            stabilized_at: self.stabilized_at,
            levels: self
                .lattices
                .iter()
                .enumerate()
                .map(|(i, l)| LevelReport {
                    n: i + 1,
                    rank: l.rank(),
                    quotient_invariants: self
                        .quotient_invariants
                        .get(i)
                        .map(|q| q.iter().map(|x| x.to_string()).collect()),
                })
                .collect(),
        }
    }
}

pub fn delta_depth(x: &ZElement, chain: &DeltaChain) -> DeltaDepth {
    let v = x.to_dense();
    if !chain.lattice(1).contains(&v) {
        return DeltaDepth::Exact { n: 0 };
    }
    let mut n = 1;
    while n < chain.depth() && chain.lattice(n + 1).contains(&v) {
        n += 1;
        if chain.stabilized_at == Some(n) {
            break;
        }
    }
    match chain.stabilized_at {
        Some(s) if n >= s => DeltaDepth::Omega { stabilized_at: s },
        _ if n == chain.depth() => DeltaDepth::AtLeast { depth: n },
        _ => DeltaDepth::Exact { n },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub group: String,
    pub hash: String,
    pub depth: usize,
    pub stabilized_at: Option<usize>,
    pub levels: Vec<LevelReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub n: usize,
    pub rank: usize,
    /// Invariant factors of `Δⁿ/Δⁿ⁺¹` as decimal strings.
    pub quotient_invariants: Option<Vec<String>>,
}
