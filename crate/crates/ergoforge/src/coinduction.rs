//! Coinduction of a subgroup extension to the whole group at finite index, with exact
//! disintegration over a factor map.

use std::collections::BTreeMap;

use num::Zero;

use crate::action::{ExtensionTriple, FiniteAction, FiniteProbSpace};
use crate::error::{Error, Result};
use crate::group::{coset_cocycle, Element, GroupContext, QuotientData, SubgroupAction};
use crate::perm::Perm;
use crate::rational::Q;

/// Conditional measures `ν_x` of `ν` over the fibers of `φ: Y → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disintegration {
    pub map: Vec<usize>,
    /// `fibers[x]` lists `(y, ν_x(y))` for the positive-mass points of `φ^{-1}(x)`.
    pub fibers: Vec<Vec<(usize, Q)>>,
}

impl Disintegration {
    pub fn get(&self, x: usize, y: usize) -> Q {
        self.fibers[x].iter().find(|(v, _)| *v == y).map_or_else(Q::zero, |(_, w)| w.clone())
    }
}

/// `ν_x(y) = ν(y) / μ(φ(y))`.
pub fn disintegrate_weights(nu: &[Q], mu: &[Q], map: &[usize]) -> Result<Disintegration> {
    if map.len() != nu.len() || map.iter().any(|&x| x >= mu.len()) {
        return Err(Error::Mismatch("factor map has the wrong shape".into()));
    }
    let mut fibers = vec![Vec::new(); mu.len()];
    for (y, (&x, w)) in map.iter().zip(nu).enumerate() {
        if w.is_zero() {
            continue;
        }
        if mu[x].is_zero() {
            return Err(Error::InvalidMeasure(format!("point {x} has mass 0 but its fiber does not")));
        }
        fibers[x].push((y, w / &mu[x]));
    }
    for (x, f) in fibers.iter().enumerate() {
        let total: Q = f.iter().map(|(_, w)| w).sum();
        if !mu[x].is_zero() && total != Q::from_integer(1.into()) {
            return Err(Error::InvalidMeasure(format!("fiber over {x} carries the wrong mass")));
        }
    }
    Ok(Disintegration { map: map.to_vec(), fibers })
}

pub fn disintegrate(e: &ExtensionTriple) -> Result<Disintegration> {
    disintegrate_weights(e.source.weights(), e.target.weights(), &e.map)
}

/// The coinduced extension `Ȳ = Y^{Γ/Λ} → X`, restricted to the atoms of positive mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinduction {
    /// Tuples `ȳ` in transversal order, sorted lexicographically.
    pub points: Vec<Vec<usize>>,
    /// `φ∘π: Ȳ → X` as a Γ-extension.
    pub extension: ExtensionTriple,
    /// `π(ȳ) = ȳ(Λ)`.
    pub projection: Vec<usize>,
}

impl Coinduction {
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(t)).ok()
    }
}

/// `(γ·ȳ)(i) = ρ(γ^{-1}, i)^{-1} · ȳ(j)` where `γ^{-1} r_i ∈ r_j Λ`.
pub fn coinduced_map(
    ctx: &GroupContext,
    q: &QuotientData,
    b: &SubgroupAction,
    g: &Element,
    t: &[usize],
) -> Result<Vec<usize>> {
    let gi = ctx.inverse(g);
    (0..q.index())
        .map(|i| {
            let j = q.coset_of(ctx, &ctx.multiply(&gi, &q.transversal[i]))?;
            let rho = coset_cocycle(ctx, q, &gi, i)?;
            Ok(b.perm(&ctx.inverse(&rho))?.apply(t[j]))
        })
        .collect()
}

/// `ν̄(ȳ) = Σ_x μ(x) ∏_i ν_{r_i^{-1}·x}(ȳ(i))`.
pub fn coinduced_mass(ctx: &GroupContext, q: &QuotientData, a: &FiniteAction, d: &Disintegration, t: &[usize]) -> Q {
    let mut total = Q::zero();
    for x in 0..a.len() {
        let mut p = a.weight(x).clone();
        for (i, &y) in t.iter().enumerate() {
            if p.is_zero() {
                break;
            }
            p *= d.get(a.act(&ctx.inverse(&q.transversal[i]), x), y);
        }
        total += p;
    }
    total
}

/// Coinduces the Λ-extension `φ: (Y, ν, b) → (X, μ, a|Λ)` to a Γ-extension.
///
/// `nu` are the weights of `Y`. Equivariance of `φ` is checked on every cocycle value
/// the construction uses.
pub fn coinduce(
    ctx: &GroupContext,
    q: &QuotientData,
    b: &SubgroupAction,
    nu: &FiniteProbSpace,
    a: &FiniteAction,
    phi: &[usize],
) -> Result<Coinduction> {
    if a.ctx != *ctx {
        return Err(Error::Mismatch("base action of a different group".into()));
    }
    if b.len() != nu.len() {
        return Err(Error::Mismatch("subgroup action and measure have different sizes".into()));
    }
    let d = disintegrate_weights(&nu.weights, a.weights(), phi)?;
    let mut push = vec![Q::zero(); a.len()];
    for (y, &x) in phi.iter().enumerate() {
        push[x] += &nu.weights[y];
    }
    if push != a.space.weights {
        return Err(Error::InvalidMeasure("factor map does not push ν to μ".into()));
    }
    let n = q.index();
    for s in ctx.symmetric_generators() {
        for i in 0..n {
            let rho = coset_cocycle(ctx, q, &s, i)?;
            let (pb, pa) = (b.perm(&rho)?, a.perm_of(&rho));
            if (0..nu.len()).any(|y| !nu.weights[y].is_zero() && phi[pb.apply(y)] != pa.apply(phi[y])) {
                return Err(Error::InvalidAction(format!("factor map is not equivariant for {}", ctx.format(&rho))));
            }
        }
    }
    // enumerate Y^n lexicographically, keeping positive mass
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut t = vec![0usize; n];
    'outer: loop {
        let m = coinduced_mass(ctx, q, a, &d, &t);
        if !m.is_zero() {
            points.push(t.clone());
            weights.push(m);
        }
        for i in (0..n).rev() {
            t[i] += 1;
            if t[i] < nu.len() {
                continue 'outer;
            }
            t[i] = 0;
        }
        break;
    }
    let index: BTreeMap<&Vec<usize>, usize> = points.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let gens = (0..ctx.rank())
        .map(|i| {
            let s = ctx.generator(i);
            let img = points
                .iter()
                .map(|p| {
                    let moved = coinduced_map(ctx, q, b, &s, p)?;
                    index.get(&moved).copied().ok_or_else(|| Error::InvalidMeasure("the support of ν̄ is not invariant".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Perm::from_images(img).ok_or_else(|| Error::InvalidAction("coinduced generator is not a permutation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let source = FiniteAction::new(ctx.clone(), FiniteProbSpace::new(weights)?, gens)?;
    let projection: Vec<usize> = points.iter().map(|p| p[0]).collect();
    let map = projection.iter().map(|&y| phi[y]).collect();
    let extension = ExtensionTriple::new(source, a.clone(), map)?;
    Ok(Coinduction { points, extension, projection })
}

/// `π(λ·ȳ) = λ·π(ȳ)` for each listed `λ ∈ Λ`, over every atom.
pub fn projection_equivariant(c: &Coinduction, b: &SubgroupAction, lambdas: &[Element]) -> Result<bool> {
    for l in lambdas {
        let pb = b.perm(l)?;
        let src = &c.extension.source;
        if (0..src.len()).any(|k| c.projection[src.act(l, k)] != pb.apply(c.projection[k])) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `π_*ν̄` as weights on `Y`.
pub fn projection_pushforward(c: &Coinduction, y_len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); y_len];
    for (k, &y) in c.projection.iter().enumerate() {
        out[y] += c.extension.source.weight(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::FiniteGroupTable;
    use crate::group::Membership;
    use crate::rational::q;

    #[test]
    fn fibers_by_ratio() {
        let d = disintegrate_weights(&vec![q(1, 4); 4], &vec![q(1, 2); 2], &[0, 0, 1, 1]).unwrap();
        assert_eq!(d.fibers[0], vec![(0, q(1, 2)), (1, q(1, 2))]);
        let d = disintegrate_weights(&[q(1, 3), q(2, 3)], &[q(1, 1)], &[0, 0]).unwrap();
        assert_eq!(d.get(0, 1), q(2, 3));
    }

    #[test]
    fn whole_group_is_identity() {
        let z = GroupContext::free_abelian(1);
        let y = FiniteAction::new(z.clone(), FiniteProbSpace::new(vec![q(1, 4), q(1, 4), q(1, 2)]).unwrap(), vec![Perm(vec![1, 0, 2])]).unwrap();
        let x = FiniteAction::trivial(z.clone(), FiniteProbSpace::uniform(1));
        let c = coinduce(&z, &QuotientData::whole(&z), &SubgroupAction::Restricted(y.clone()), &y.space, &x, &[0, 0, 0]).unwrap();
        assert_eq!(c.extension.source, y);
        assert_eq!(c.projection, vec![0, 1, 2]);
    }

    #[test]
    fn integers_over_even() {
        let z = GroupContext::free_abelian(1);
        let m = Membership::Hom { target: FiniteGroupTable::cyclic(2), images: vec![1], subgroup: vec![0] };
        let qd = QuotientData::new(&z, m, vec![z.identity(), z.generator(0)]).unwrap();
        let x = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])]).unwrap();
        let nu = FiniteProbSpace::new(vec![q(1, 6), q(1, 3), q(1, 4), q(1, 4)]).unwrap();
        let two = z.power(0, 2);
        let b = SubgroupAction::generated(&z, &[two.clone()], &[Perm(vec![0, 1, 3, 2])], 4).unwrap();
        let c = coinduce(&z, &qd, &b, &nu, &x, &[0, 0, 1, 1]).unwrap();
        assert_eq!(projection_pushforward(&c, 4), nu.weights);
        assert!(projection_equivariant(&c, &b, &[two, z.power(0, -2)]).unwrap());
    }
}
