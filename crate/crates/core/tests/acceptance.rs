//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use augring::cli::catalog::catalog_specs;
use augring::cli::dsl::GroupSpec;
use augring::filtration::{
    delta_chain, dimension_subgroup, rational_delta_powers, rational_dimension_subgroup, unit_order_mod_delta,
};
use augring::group::{build_group, direct_product, lower_central_series, GroupRef, Subgroup};
use augring::theorems::{
    classify_terminating, cyclic_rank, kp_residue, lemma42_witness, nontrivial_units, rank_gap_table,
};
use augring::units::{bicyclic_nilpotent, bicyclic_unit, nilpotent_based_unit, torsion_probe, TorsionProbe};
use augring::zring::{hnf, IntegerLattice};
use augring::{Int, Limits, ZElement};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn catalog(max: u64) -> Vec<(GroupSpec, GroupRef)> {
    catalog_specs(max).into_iter().map(|s| {
        let g = build_group(&s).unwrap();
        (s, g)
    }).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn c1_rank_formulas() -> Outcome {
    let primes: Vec<u64> = (2..=23).filter(|&n| is_prime(n)).collect();
    let mut pairs = 0;
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let rp = if p == 2 { 0 } else { (p - 3) / 2 };
            let rq = (q - 3) / 2;
            let rpq = if p == 2 { q - 3 } else { (p * q - 7) / 2 };
            let (a, b, c) = (cyclic_rank(p).rho as u64, cyclic_rank(q).rho as u64, cyclic_rank(p * q).rho as u64);
            ensure!((a, b, c) == (rp, rq, rpq), "({p},{q}): computed {:?}, closed forms {:?}", (a, b, c), (rp, rq, rpq));
            let gap = rank_gap_table(p, q).map_err(|e| e.to_string())?;
            ensure!(gap.holds == ((p, q) != (2, 3)), "({p},{q}): strict gap = {}", gap.holds);
            ensure!(gap.holds == (c > a + b), "({p},{q}): verdict disagrees with ranks");
            pairs += 1;
        }
    }
    Ok(format!("{pairs} prime pairs, gap fails only at (2,3)"))
}

fn c2_dimension_identities() -> Outcome {
    let groups = catalog(32);
    for (spec, g) in &groups {
        let chain = delta_chain(g, 3).map_err(|e| e.to_string())?;
        let lcs = lower_central_series(g);
        for n in 1..=3 {
            let d = dimension_subgroup(&chain, n).map_err(|e| e.to_string())?;
            // membership recomputed element by element against the lattice
            for x in g.elements() {
                let inside = chain.lattice(n).contains(&ZElement::g_minus_one(g, x).to_dense());
                ensure!(inside == lcs.term(n).contains(x), "{spec}: D_{n} ≠ γ_{n} at {}", g.label(x));
            }
            ensure!(d == *lcs.term(n), "{spec}: D_{n} ≠ γ_{n}");
        }
    }
    Ok(format!("{} catalog groups of order ≤ 32", groups.len()))
}

/// Independent label read off the group expression: exponent if abelian.
fn ast_abelian_exponent(spec: &GroupSpec) -> Option<u64> {
    fn lcm(a: u64, b: u64) -> u64 {
        a / num_integer::gcd(a, b) * b
    }
    match spec {
        GroupSpec::Cyclic(n) => Some(*n),
        GroupSpec::ElemAb { p, k } => Some(if *k == 0 { 1 } else { *p }),
        GroupSpec::Product(a, b) => Some(lcm(ast_abelian_exponent(a)?, ast_abelian_exponent(b)?)),
        _ => None,
    }
}

fn ast_is_elementary_2(spec: &GroupSpec) -> bool {
    matches!(ast_abelian_exponent(spec), Some(1 | 2))
}

fn ast_is_k8_times_e(spec: &GroupSpec) -> bool {
    let k8 = |s: &GroupSpec| *s == GroupSpec::Quaternion(8);
    match spec {
        s if k8(s) => true,
        GroupSpec::Product(a, b) => (k8(a) && ast_is_elementary_2(b)) || (k8(b) && ast_is_elementary_2(a)),
        _ => false,
    }
}

fn c3_terminating() -> Outcome {
    for s in [GroupSpec::Quaternion(8), GroupSpec::product(GroupSpec::Quaternion(8), GroupSpec::Cyclic(2))] {
        let g = build_group(&s).unwrap();
        let chain = delta_chain(&g, 3).map_err(|e| e.to_string())?;
        ensure!(dimension_subgroup(&chain, 3).unwrap().is_trivial(), "{s}: D₃ ≠ 1");
        ensure!(!dimension_subgroup(&chain, 2).unwrap().is_trivial(), "{s}: D₂ = 1");
    }
    let groups = catalog(32);
    let limits = Limits::default();
    let mut positives = 0;
    for (spec, g) in &groups {
        let expected = ast_abelian_exponent(spec).is_some_and(|e| 4 % e == 0 || 6 % e == 0) || ast_is_k8_times_e(spec);
        let v = classify_terminating(g, &limits).map_err(|e| e.to_string())?;
        ensure!(v.holds == expected, "{spec}: classified {} expected {expected}", v.holds);
        ensure!(!v.failed(), "{spec}: evidence check failed");
        positives += expected as usize;
    }
    Ok(format!("D₃ = 1 for K₈, K₈×C₂; {positives}/{} catalog groups terminate", groups.len()))
}

fn deep_in_delta(chain: &augring::DeltaChain, x: &ZElement, upto: usize) -> Result<(), String> {
    for n in 1..=upto {
        ensure!(chain.lattice(n).contains(&x.to_dense()), "not in Δ^{n}");
    }
    Ok(())
}

fn c4_depth_tests() -> Outcome {
    let a4 = build_group(&GroupSpec::Alt(4)).unwrap();
    let chain = delta_chain(&a4, 10).map_err(|e| e.to_string())?;
    let g = a4.find_element("(1 2 3)").unwrap();
    let h = a4.find_element("(1 2)(3 4)").unwrap();
    let u = bicyclic_unit(&chain, g, h);
    ensure!(!u.trivial && u.verify(), "A₄ bicyclic unit is trivial or not a unit");
    deep_in_delta(&chain, &(&u.element - &ZElement::one(&a4)), 10).map_err(|e| format!("A₄ bicyclic: {e}"))?;

    let s3 = build_group(&GroupSpec::Sym(3)).unwrap();
    let c5 = build_group(&GroupSpec::Cyclic(5)).unwrap();
    let alpha = bicyclic_nilpotent(&delta_chain(&s3, 1).unwrap(), s3.find_element("(1 2)").unwrap(), s3.find_element("(1 3)").unwrap());
    ensure!(!alpha.is_zero() && (&alpha * &alpha).is_zero(), "α is not a nonzero square-zero element");
    let p = direct_product(&s3, &c5, 512).map_err(|e| e.to_string())?;
    let chain = delta_chain(&p.group, 10).map_err(|e| e.to_string())?;
    let v = nilpotent_based_unit(&alpha, 1, &p, &chain).map_err(|e| e.to_string())?;
    ensure!(!v.trivial && v.verify(), "S₃×C₅ unit is trivial or not a unit");
    deep_in_delta(&chain, &(&v.element - &ZElement::one(&p.group)), 10).map_err(|e| format!("S₃×C₅: {e}"))?;
    Ok("A₄ bicyclic and S₃×C₅ nilpotent-based units lie in Δ¹..Δ¹⁰".into())
}

fn c5_bicyclic_invariants() -> Outcome {
    let groups = catalog(16);
    let mut pairs = 0;
    for (spec, grp) in &groups {
        let chain = delta_chain(grp, 2).map_err(|e| e.to_string())?;
        let one = ZElement::one(grp);
        for g in grp.elements() {
            let normalizer = Subgroup::generated(grp, [g]).normalizer();
            for h in grp.elements() {
                let u = bicyclic_unit(&chain, g, h);
                ensure!(chain.lattice(2).contains(&(&u.element - &one).to_dense()), "{spec}: u_({g},{h}) − 1 ∉ Δ²");
                ensure!(u.trivial == normalizer.contains(h), "{spec}: triviality flag wrong at ({g},{h})");
                ensure!((&u.element * &u.inverse).is_one() && (&u.inverse * &u.element).is_one(), "{spec}: inverse fails at ({g},{h})");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over {} groups, 0 failures", groups.len()))
}

fn c6_rational_collapse() -> Outcome {
    let groups = catalog(32);
    for (spec, g) in &groups {
        let powers = rational_delta_powers(g, 5);
        ensure!(powers[1].dim() == powers[0].dim(), "{spec}: dim Δ_ℚ² ≠ dim Δ_ℚ");
        for n in 1..=5 {
            ensure!(rational_dimension_subgroup(g, n).unwrap().is_whole(), "{spec}: D_{{{n},ℚ}} ≠ G");
        }
    }
    Ok(format!("{} catalog groups, n ≤ 5", groups.len()))
}

fn c7_discrimination() -> Outcome {
    let s3 = build_group(&GroupSpec::Sym(3)).unwrap();
    let a3 = Subgroup::generated(&s3, [s3.find_element("(1 2 3)").unwrap()]);
    ensure!(kp_residue(&s3, 2) == a3, "K₂ residue of S₃ is not A₃");
    ensure!(kp_residue(&s3, 3).is_whole(), "K₃ residue of S₃ is not S₃");
    let chain = delta_chain(&s3, 10).map_err(|e| e.to_string())?;
    let (g1, g) = (s3.find_element("(1 2 3)").unwrap(), s3.find_element("(1 2)").unwrap());
    let v = lemma42_witness(&chain, g1, g).map_err(|e| e.to_string())?;
    ensure!(v.holds, "witness verdict does not hold");
    let c = s3.commutator(g1, g);
    deep_in_delta(&chain, &ZElement::g_minus_one(&s3, c), 10)?;
    Ok(format!("[(1 2 3),(1 2)] = {} ∈ D₁₀(S₃)", s3.label(c)))
}

/// Column-by-column Euclidean HNF, written independently of the library.
fn oracle_hnf(dim: usize, mut rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let mut r = 0;
    for col in 0..dim {
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.swap(r, i);
                    if rows[r][col].is_negative() {
                        rows[r].iter_mut().for_each(|x| *x = -x.clone());
                    }
                    for k in 0..r {
                        let q = num_integer::Integer::div_floor(&rows[k][col], &rows[r][col]);
                        let pivot = rows[r].clone();
                        rows[k].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &q * y);
                    }
                    r += 1;
                }
                break;
            }
            let m = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pivot = rows[m].clone();
            for &i in &nz {
                if i != m {
                    let q = &rows[i][col] / &pivot[col];
                    rows[i].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &q * y);
                }
            }
        }
    }
    rows.truncate(r);
    rows
}

fn ring_product(g: &GroupRef, x: &[Int], y: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); g.order()];
    for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[g.mul(a, b)] += xa * yb;
        }
    }
    out
}

fn products(g: &GroupRef, a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    a.iter().flat_map(|x| b.iter().map(move |y| ring_product(g, x, y))).collect()
}

fn c8_kernel_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let rows: Vec<Vec<Int>> =
            (0..8).map(|_| (0..8).map(|_| Int::from(rng.gen_range(-1_000_000i64..=1_000_000))).collect()).collect();
        let base: IntegerLattice<Int> = hnf(8, rows.clone());
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut rng);
        ensure!(hnf(8, shuffled) == base, "trial {trial}: HNF depends on row order");
        ensure!(base.basis() == oracle_hnf(8, rows.clone()).as_slice(), "trial {trial}: HNF differs from oracle");
        let coeffs: Vec<Int> = (0..8).map(|_| Int::from(rng.gen_range(-50i64..=50))).collect();
        let x: Vec<Int> = (0..8).map(|j| rows.iter().zip(&coeffs).map(|(r, c)| &r[j] * c).sum()).collect();
        let cert = base.membership(&x).ok_or(format!("trial {trial}: lattice vector rejected"))?;
        ensure!(base.combine(&cert) == x, "trial {trial}: certificate does not reproduce the vector");
    }

    let groups: Vec<_> = catalog(24).into_iter().filter(|(_, g)| g.order() > 1).collect();
    for (spec, g) in &groups {
        let chain = delta_chain(g, 4).map_err(|e| e.to_string())?;
        let d1: Vec<Vec<Int>> = (1..g.order()).map(|x| ZElement::g_minus_one(g, x).to_dense()).collect();
        let d1 = oracle_hnf(g.order(), d1);
        let d2 = oracle_hnf(g.order(), products(g, &d1, &d1));
        let d3 = oracle_hnf(g.order(), products(g, &d1, &d2));
        let d4 = oracle_hnf(g.order(), products(g, &d2, &d2));
        for (n, oracle) in [(1, &d1), (2, &d2), (3, &d3), (4, &d4)] {
            ensure!(chain.lattice(n).basis() == oracle.as_slice(), "{spec}: Δ^{n} differs from the product oracle");
        }
    }

    let mut rechecked = Vec::new();
    let mut extra = catalog(24);
    extra.push((GroupSpec::Alt(5), build_group(&GroupSpec::Alt(5)).unwrap()));
    for (spec, g) in &extra {
        let chain = delta_chain(g, if g.order() > 24 { 3 } else { 6 }).map_err(|e| e.to_string())?;
        if chain.stabilized_at().is_some() {
            ensure!(chain.recheck_stabilization() == Some(true), "{spec}: stabilization recheck failed");
            rechecked.push(spec.to_string());
        }
    }
    let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
    let chain = delta_chain(&c6, 12).unwrap();
    ensure!(chain.stabilized_at().is_none(), "C₆ reported a stabilized chain");
    ensure!((1..12).all(|n| chain.quotient_invariants(n) == [Int::from(6)]), "C₆ quotients are not all ℤ/6");
    Ok(format!(
        "1000 HNF trials; product oracle on {} groups; stabilization rechecked on {}",
        groups.len(),
        rechecked.join(", ")
    ))
}

fn c9_lemma21_probe() -> Outcome {
    let groups = catalog(16);
    let mut count = 0;
    for (spec, g) in &groups {
        let chain = delta_chain(g, 4).map_err(|e| e.to_string())?;
        let one = ZElement::one(g);
        for u in nontrivial_units(&chain) {
            ensure!(torsion_probe(&u, 100) == TorsionProbe::NoTorsion { bound: 100 }, "{spec}: torsion found");
            for n in 1..=4 {
                let m = unit_order_mod_delta(&u.element, &chain, n).map_err(|e| e.to_string())?;
                let lat = chain.lattice(n);
                let power_in = |k: u64| lat.contains(&(&u.element.pow(k) - &one).to_dense());
                ensure!(power_in(m), "{spec}: u^{m} − 1 ∉ Δ^{n}");
                ensure!((1..m).filter(|d| m % d == 0).all(|d| !power_in(d)), "{spec}: order {m} mod Δ^{n} not minimal");
            }
            count += 1;
        }
    }
    Ok(format!("{count} nontrivial units over {} groups", groups.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("rank formulas and rank gap", c1_rank_formulas),
        ("D₁ = G, D₂ = γ₂, D₃ = γ₃", c2_dimension_identities),
        ("terminating classification and D₃ evidence", c3_terminating),
        ("coprime bicyclic and nilpotent-based units in Δ¹⁰", c4_depth_tests),
        ("bicyclic unit invariants", c5_bicyclic_invariants),
        ("rational collapse", c6_rational_collapse),
        ("K_p residues and commutator witness", c7_discrimination),
        ("lattice kernel properties", c8_kernel_properties),
        ("torsion probe vs finite order mod Δⁿ", c9_lemma21_probe),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
