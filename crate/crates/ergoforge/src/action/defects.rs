use num::{Signed, Zero};

use super::{ExtensionTriple, FiniteAction};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::perm::Perm;
use crate::rational::{one, Q};

fn check_cap(bits: usize, cap: usize) -> Result<()> {
    if bits > cap || bits >= 63 {
        return Err(Error::CapExceeded { size: format!("2^{bits}"), cap: cap as u64 });
    }
    Ok(())
}

fn perm_mask(p: &Perm, mask: u64) -> u64 {
    let mut out = 0u64;
    for i in 0..p.len() {
        if mask >> i & 1 == 1 {
            out |= 1 << p.apply(i);
        }
    }
    out
}

/// `min_x max(|μ(x) - 1/n|, max_{i<j<n} μ(γ^i x ∩ γ^j x))` over all subsets `x`.
///
/// `cap` bounds the number of points (the search visits `2^|X|` subsets).
pub fn freeness_defect(a: &FiniteAction, g: &Element, n: usize, cap: usize) -> Result<Q> {
    if n == 0 {
        return Err(Error::Mismatch("order bound must be positive".into()));
    }
    check_cap(a.len(), cap)?;
    let target = Q::new(1.into(), (n as i64).into());
    let mut powers = vec![Perm::identity(a.len())];
    let pg = a.perm_of(g);
    for i in 1..n {
        powers.push(pg.compose(&powers[i - 1]));
    }
    let mut best: Option<Q> = None;
    for mask in 0..(1u64 << a.len()) {
        let mut v = (a.space.measure_mask(mask) - &target).abs();
        if best.as_ref().is_some_and(|b| &v >= b) {
            continue;
        }
        let imgs: Vec<u64> = powers.iter().map(|p| perm_mask(p, mask)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let m = a.space.measure_mask(imgs[i] & imgs[j]);
                if m > v {
                    v = m;
                }
            }
        }
        if best.as_ref().is_none_or(|b| &v < b) {
            best = Some(v);
        }
    }
    Ok(best.unwrap())
}

/// `max_{i,j,γ∈F} |μ(γA_i ∩ A_j) - ν(γB_i ∩ B_j)|`.
pub fn weak_containment_defect(
    a: &FiniteAction,
    b: &FiniteAction,
    sets_a: &[Vec<bool>],
    f: &[Element],
    sets_b: &[Vec<bool>],
) -> Result<Q> {
    if sets_a.len() != sets_b.len() {
        return Err(Error::Mismatch("set families of different sizes".into()));
    }
    if sets_a.iter().any(|s| s.len() != a.len()) || sets_b.iter().any(|s| s.len() != b.len()) {
        return Err(Error::Mismatch("set does not match its space".into()));
    }
    let mut best = Q::zero();
    for g in f {
        let pa = a.perm_of(g);
        let pb = b.perm_of(g);
        let ga: Vec<Vec<bool>> = sets_a.iter().map(|s| pa.image_set(s)).collect();
        let gb: Vec<Vec<bool>> = sets_b.iter().map(|s| pb.image_set(s)).collect();
        for i in 0..sets_a.len() {
            for j in 0..sets_a.len() {
                let ma = a.space.measure(&and(&ga[i], &sets_a[j]));
                let mb = b.space.measure(&and(&gb[i], &sets_b[j]));
                let d = (ma - mb).abs();
                if d > best {
                    best = d;
                }
            }
        }
    }
    Ok(best)
}

fn and(x: &[bool], y: &[bool]) -> Vec<bool> {
    x.iter().zip(y).map(|(a, b)| *a && *b).collect()
}

fn xor(x: &[bool], y: &[bool]) -> Vec<bool> {
    x.iter().zip(y).map(|(a, b)| a != b).collect()
}

/// Best tuple `B_1..B_n` found by [`weak_containment_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentSearch {
    pub defect: Q,
    pub witness: Vec<Vec<bool>>,
}

/// Minimizes [`weak_containment_defect`] over all tuples of subsets of `Y`; the first
/// minimizer in lexicographic order of subset bitmasks is reported.
pub fn weak_containment_search(
    a: &FiniteAction,
    b: &FiniteAction,
    sets_a: &[Vec<bool>],
    f: &[Element],
    cap: usize,
) -> Result<ContainmentSearch> {
    let n = sets_a.len();
    check_cap(b.len() * n, cap)?;
    let ny = b.len();
    let total = 1u64 << (ny * n);
    let to_sets = |code: u64| -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..ny).map(|y| code >> (i * ny + y) & 1 == 1).collect()).collect()
    };
    let mut best: Option<ContainmentSearch> = None;
    for code in 0..total {
        let sets = to_sets(code);
        let d = weak_containment_defect(a, b, sets_a, f, &sets)?;
        if best.as_ref().is_none_or(|bst| d < bst.defect) {
            let done = d.is_zero();
            best = Some(ContainmentSearch { defect: d, witness: sets });
            if done {
                break;
            }
        }
    }
    Ok(best.unwrap_or(ContainmentSearch { defect: Q::zero(), witness: vec![] }))
}

/// `max( max_A ν(φ^{-1}A △ ψ^{-1}A), max_{B,γ} ν(γ^b B △ γ^c B) )`.
pub fn extension_neighborhood_defect(
    e1: &ExtensionTriple,
    e2: &ExtensionTriple,
    sets_x: &[Vec<bool>],
    sets_y: &[Vec<bool>],
    f: &[Element],
) -> Result<Q> {
    if e1.target != e2.target {
        return Err(Error::Mismatch("extensions over different targets".into()));
    }
    if e1.source.space != e2.source.space {
        return Err(Error::Mismatch("extensions on different source spaces".into()));
    }
    let nu = &e1.source.space;
    let mut best = Q::zero();
    for s in sets_x {
        let d = nu.measure(&xor(&e1.pullback(s), &e2.pullback(s)));
        best = best.max(d);
    }
    for g in f {
        let p1 = e1.source.perm_of(g);
        let p2 = e2.source.perm_of(g);
        for s in sets_y {
            let d = nu.measure(&xor(&p1.image_set(s), &p2.image_set(s)));
            best = best.max(d);
        }
    }
    debug_assert!(best <= one());
    Ok(best)
}
