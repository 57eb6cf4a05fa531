//! Cochains into finite groups, the cocycle defect, coboundaries and free extensions.

mod correspondence;
mod density;
mod skew;

pub use correspondence::{coboundary_operator, cochain_correspondence, correspondence_inverse, TwoCochain, WindowCochain};
pub use density::{agreement_mass, coboundary_density_search, DensitySearch};
pub use skew::{coboundary_isomorphism, skew_from_generators, skew_product, FiberMode, SkewProduct};

use std::collections::{BTreeMap, HashMap};

use num::Zero;

use crate::action::FiniteAction;
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::group::{Element, GroupContext, Window};
use crate::rational::{pow2_inv, Q};
use crate::rng::seeded;

/// `σ: S × X → K` on an explicit finite support `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub support: Vec<Element>,
    pub group: FiniteGroupTable,
    /// `values[i][x] = σ(support[i], x)`.
    pub values: Vec<Vec<usize>>,
    index: HashMap<Element, usize>,
}

impl Cochain {
    pub fn new(support: Vec<Element>, group: FiniteGroupTable, values: Vec<Vec<usize>>, points: usize) -> Result<Self> {
        if support.len() != values.len() {
            return Err(Error::Mismatch("one value row per support element".into()));
        }
        if values.iter().any(|row| row.len() != points || row.iter().any(|&k| k >= group.order())) {
            return Err(Error::Mismatch("cochain row is not a map X → K".into()));
        }
        let mut index = HashMap::new();
        for (i, g) in support.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::Mismatch(format!("support element {g} listed twice")));
            }
        }
        Ok(Cochain { support, group, values, index })
    }

    /// `σ ≡ k` on `support`.
    pub fn constant(support: Vec<Element>, group: FiniteGroupTable, k: usize, points: usize) -> Result<Self> {
        let values = vec![vec![k; points]; support.len()];
        Cochain::new(support, group, values, points)
    }

    pub fn points(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn position(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn get(&self, g: &Element, x: usize) -> Option<usize> {
        self.position(g).map(|i| self.values[i][x])
    }

    pub fn value(&self, g: &Element, x: usize) -> Result<usize> {
        self.get(g, x).ok_or_else(|| Error::WindowEscape(format!("{g} is outside the cochain support")))
    }

    /// The values on the generators, as needed by [`extend_free_cochain`].
    pub fn generator_values(&self, ctx: &GroupContext) -> Result<Vec<Vec<usize>>> {
        (0..ctx.rank())
            .map(|i| {
                let s = ctx.generator(i);
                self.position(&s)
                    .map(|p| self.values[p].clone())
                    .ok_or_else(|| Error::WindowEscape(format!("generator {} missing from support", ctx.names[i])))
            })
            .collect()
    }
}

/// The level-set form `B(γ, k) = {x : σ(γ, x) = k}`, which may be an arbitrary tuple
/// of sets rather than a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCochain {
    pub support: Vec<Element>,
    pub group: FiniteGroupTable,
    /// `sets[i][k][x]` iff `x ∈ B(support[i], k)`.
    pub sets: Vec<Vec<Vec<bool>>>,
}

impl SetCochain {
    pub fn from_cochain(c: &Cochain) -> Self {
        let k = c.group.order();
        let sets = c
            .values
            .iter()
            .map(|row| (0..k).map(|h| row.iter().map(|&v| v == h).collect()).collect())
            .collect();
        SetCochain { support: c.support.clone(), group: c.group.clone(), sets }
    }
}

/// Weights `2^{-e(γ)}` for the partition term and `2^{-f(γ, δ, k)}` for the cocycle
/// term, indexed by support positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectWeights {
    pub partition: Vec<Q>,
    pub identity: BTreeMap<(usize, usize, usize), Q>,
}

impl DefectWeights {
    /// Enumerates the support in order and the triples `(γ, δ, k)` with `γδ` in the
    /// support in lexicographic order, giving the `n`-th item weight `2^{-(n+1)}`.
    pub fn canonical(ctx: &GroupContext, c: &Cochain) -> Self {
        let triples = supported_triples(ctx, c);
        Self::from_ranks(c.support.len(), &triples, &(0..c.support.len()).collect::<Vec<_>>(), &(0..triples.len()).collect::<Vec<_>>())
    }

    /// Same triples, with the enumerations replaced by seeded random bijections.
    pub fn shuffled(ctx: &GroupContext, c: &Cochain, seed: u64) -> Self {
        use rand::seq::SliceRandom;
        let triples = supported_triples(ctx, c);
        let mut rng = seeded(seed);
        let mut e: Vec<usize> = (0..c.support.len()).collect();
        e.shuffle(&mut rng);
        let mut f: Vec<usize> = (0..triples.len()).collect();
        f.shuffle(&mut rng);
        Self::from_ranks(c.support.len(), &triples, &e, &f)
    }

    /// Weights restricted to the listed pairs `(γ, δ)`; every product `γδ` must lie in
    /// the support.
    pub fn for_pairs(ctx: &GroupContext, c: &Cochain, pairs: &[(Element, Element)]) -> Result<Self> {
        let mut triples = Vec::new();
        for (g, d) in pairs {
            let (Some(i), Some(j)) = (c.position(g), c.position(d)) else {
                return Err(Error::WindowEscape("pair outside the support".into()));
            };
            if c.position(&ctx.multiply(g, d)).is_none() {
                return Err(Error::SupportNotProductClosed(format!("{} · {}", ctx.format(g), ctx.format(d))));
            }
            for k in 0..c.group.order() {
                triples.push((i, j, k));
            }
        }
        let n = triples.len();
        Ok(Self::from_ranks(c.support.len(), &triples, &(0..c.support.len()).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>()))
    }

    fn from_ranks(n: usize, triples: &[(usize, usize, usize)], e: &[usize], f: &[usize]) -> Self {
        let partition = (0..n).map(|i| pow2_inv(e[i] as u32 + 1)).collect();
        let identity = triples.iter().zip(f).map(|(t, &r)| (*t, pow2_inv(r as u32 + 1))).collect();
        DefectWeights { partition, identity }
    }
}

fn supported_triples(ctx: &GroupContext, c: &Cochain) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, g) in c.support.iter().enumerate() {
        for (j, d) in c.support.iter().enumerate() {
            if c.position(&ctx.multiply(g, d)).is_some() {
                for k in 0..c.group.order() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// The two terms of the defect and their maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleDefect {
    pub partition_term: Q,
    pub identity_term: Q,
    pub value: Q,
}

/// Defect of a function-valued cochain; see [`cocycle_defect_sets`].
pub fn cocycle_defect(a: &FiniteAction, c: &Cochain, w: &DefectWeights) -> Result<CocycleDefect> {
    if c.points() != a.len() && !c.support.is_empty() {
        return Err(Error::Mismatch("cochain and action have different point counts".into()));
    }
    cocycle_defect_sets(a, &SetCochain::from_cochain(c), w)
}

/// `max(Φ₁, Φ₂)` truncated to the support.
///
/// `Φ₁ = Σ_γ 2^{-e(γ)} d((B(γ,k))_k, Part_K)`, with `d` the sum over `k` of symmetric
/// difference masses, minimized pointwise; it vanishes for level sets of a function.
/// `Φ₂ = Σ 2^{-f(γ,δ,k)} μ([∪_h δ^{-1}B(γ,h) ∩ B(δ,h^{-1}k)] △ B(γδ,k))`.
pub fn cocycle_defect_sets(a: &FiniteAction, b: &SetCochain, w: &DefectWeights) -> Result<CocycleDefect> {
    let ctx = &a.ctx;
    let kk = b.group.order();
    let n = a.len();
    if w.partition.len() != b.support.len() {
        return Err(Error::Mismatch("weights were built for a different support".into()));
    }
    let pos: HashMap<&Element, usize> = b.support.iter().enumerate().map(|(i, g)| (g, i)).collect();

    let mut phi1 = Q::zero();
    for (i, wt) in w.partition.iter().enumerate() {
        let mut d = Q::zero();
        for x in 0..n {
            let m = (0..kk).filter(|&k| b.sets[i][k][x]).count();
            let cost = if m == 0 { 1 } else { m - 1 };
            if cost > 0 {
                d += a.weight(x) * Q::from_integer((cost as i64).into());
            }
        }
        phi1 += wt * d;
    }

    let mut phi2 = Q::zero();
    let mut perms: HashMap<usize, Vec<usize>> = HashMap::new();
    for (&(i, j, k), wt) in &w.identity {
        let gd = ctx.multiply(&b.support[i], &b.support[j]);
        let Some(&l) = pos.get(&gd) else {
            return Err(Error::SupportNotProductClosed(format!(
                "{} · {}",
                ctx.format(&b.support[i]),
                ctx.format(&b.support[j])
            )));
        };
        let pd = perms.entry(j).or_insert_with(|| a.perm_of(&b.support[j]).0);
        let mut d = Q::zero();
        for x in 0..n {
            let lhs = (0..kk).any(|h| b.sets[i][h][pd[x]] && b.sets[j][b.group.op(b.group.inverse(h), k)][x]);
            if lhs != b.sets[l][k][x] {
                d += a.weight(x);
            }
        }
        phi2 += wt * d;
    }
    let value = phi1.clone().max(phi2.clone());
    Ok(CocycleDefect { partition_term: phi1, identity_term: phi2, value })
}

/// `σ(γ, x) = f(γx) f(x)^{-1}` on `support`.
pub fn coboundary_from(a: &FiniteAction, group: &FiniteGroupTable, f: &[usize], support: &[Element]) -> Result<Cochain> {
    if f.len() != a.len() || f.iter().any(|&k| k >= group.order()) {
        return Err(Error::Mismatch("transfer function is not a map X → K".into()));
    }
    let values = support
        .iter()
        .map(|g| (0..a.len()).map(|x| group.op(f[a.act(g, x)], group.inverse(f[x]))).collect())
        .collect();
    Cochain::new(support.to_vec(), group.clone(), values, a.len())
}

/// `σ'(γ, x) = s(γx)^{-1} σ(γ, x) s(x)`.
pub fn cohomologous(a: &FiniteAction, c: &Cochain, s: &[usize]) -> Result<Cochain> {
    let k = &c.group;
    if s.len() != a.len() {
        return Err(Error::Mismatch("transfer function has the wrong length".into()));
    }
    let values = c
        .support
        .iter()
        .zip(&c.values)
        .map(|(g, row)| (0..a.len()).map(|x| k.op(k.op(k.inverse(s[a.act(g, x)]), row[x]), s[x])).collect())
        .collect();
    Cochain::new(c.support.clone(), k.clone(), values, a.len())
}

/// Evaluates `σ(g, x)` from generator values by the cocycle identity along the
/// normal-form word of `g`, with `σ(s^{-1}, x) = σ(s, s^{-1}x)^{-1}`.
pub fn eval_from_generators(a: &FiniteAction, group: &FiniteGroupTable, gen_values: &[Vec<usize>], g: &Element, x: usize) -> usize {
    let ctx = &a.ctx;
    let mut acc = group.identity;
    let mut y = x;
    for &(i, e) in ctx.syllables(g).iter().rev() {
        let s = ctx.generator(i);
        let si = ctx.inverse(&s);
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                acc = group.op(gen_values[i][y], acc);
                y = a.act(&s, y);
            } else {
                y = a.act(&si, y);
                acc = group.op(group.inverse(gen_values[i][y]), acc);
            }
        }
    }
    acc
}

/// The unique cocycle of a free-group action with the given generator values,
/// tabulated on `window`.
pub fn extend_free_cochain(a: &FiniteAction, group: &FiniteGroupTable, gen_values: &[Vec<usize>], window: &Window) -> Result<Cochain> {
    if !a.ctx.is_free() {
        return Err(Error::NotFree("cocycle extension needs a free group".into()));
    }
    if gen_values.len() != a.ctx.rank() || gen_values.iter().any(|r| r.len() != a.len() || r.iter().any(|&k| k >= group.order())) {
        return Err(Error::Mismatch("generator assignment is not a family of maps X → K".into()));
    }
    let values = window
        .elements()
        .iter()
        .map(|g| (0..a.len()).map(|x| eval_from_generators(a, group, gen_values, g, x)).collect())
        .collect();
    Cochain::new(window.elements().to_vec(), group.clone(), values, a.len())
}

/// Whether the generator values define a cocycle: the induced skew product must satisfy
/// the relations of the group.
pub fn generators_define_cocycle(a: &FiniteAction, group: &FiniteGroupTable, gen_values: &[Vec<usize>]) -> bool {
    let n = a.len();
    let kk = group.order();
    let gens = (0..a.ctx.rank())
        .map(|i| {
            crate::perm::Perm(
                (0..n * kk).map(|p| a.gens[i].apply(p / kk) * kk + group.op(gen_values[i][p / kk], p % kk)).collect(),
            )
        })
        .collect();
    let space = crate::action::FiniteProbSpace::uniform(n * kk);
    // weights do not matter for the relation check
    FiniteAction::new(a.ctx.clone(), space, gens).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::FiniteProbSpace;
    use crate::group::cayley_ball;
    use crate::perm::Perm;

    fn swap2() -> FiniteAction {
        FiniteAction::new(GroupContext::free(1), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])]).unwrap()
    }

    #[test]
    fn coboundary_swap_z2() {
        let a = swap2();
        let z2 = FiniteGroupTable::cyclic(2);
        let c = coboundary_from(&a, &z2, &[0, 1], &[a.ctx.generator(0)]).unwrap();
        assert_eq!(c.values[0], vec![1, 1]);
    }

    #[test]
    fn constant_cochain_detected() {
        let a = swap2();
        let z3 = FiniteGroupTable::cyclic(3);
        let ball = cayley_ball(&a.ctx, &a.ctx.symmetric_generators(), 2);
        let c = Cochain::constant(ball.elements().to_vec(), z3.clone(), 1, 2).unwrap();
        let w = DefectWeights::canonical(&a.ctx, &c);
        assert!(cocycle_defect(&a, &c, &w).unwrap().value > Q::zero());
        let id = Cochain::constant(ball.elements().to_vec(), z3, 0, 2).unwrap();
        assert!(cocycle_defect(&a, &id, &w).unwrap().value.is_zero());
    }

    #[test]
    fn extension_two_steps() {
        let a = swap2();
        let z3 = FiniteGroupTable::cyclic(3);
        let f = vec![vec![1, 2]];
        let ball = cayley_ball(&a.ctx, &a.ctx.symmetric_generators(), 2);
        let c = extend_free_cochain(&a, &z3, &f, &ball).unwrap();
        let two = a.ctx.power(0, 2);
        let inv = a.ctx.power(0, -1);
        for x in 0..2 {
            assert_eq!(c.get(&two, x).unwrap(), z3.op(f[0][a.act(&a.ctx.generator(0), x)], f[0][x]));
            assert_eq!(c.get(&inv, x).unwrap(), z3.inverse(f[0][a.act(&inv, x)]));
        }
        let w = DefectWeights::canonical(&a.ctx, &c);
        assert!(cocycle_defect(&a, &c, &w).unwrap().value.is_zero());
    }

    #[test]
    fn extension_needs_free_group() {
        let a = FiniteAction::trivial(GroupContext::free_abelian(1), FiniteProbSpace::uniform(1));
        let ball = cayley_ball(&a.ctx, &a.ctx.symmetric_generators(), 1);
        assert!(matches!(
            extend_free_cochain(&a, &FiniteGroupTable::cyclic(2), &[vec![0]], &ball),
            Err(Error::NotFree(_))
        ));
    }

    #[test]
    fn non_partition_sets_count() {
        let a = swap2();
        let z2 = FiniteGroupTable::cyclic(2);
        let sup = vec![a.ctx.identity()];
        let c = Cochain::constant(sup.clone(), z2.clone(), 0, 2).unwrap();
        let mut b = SetCochain::from_cochain(&c);
        b.sets[0][1][0] = true; // point 0 now in two level sets
        let w = DefectWeights::canonical(&a.ctx, &c);
        assert!(cocycle_defect_sets(&a, &b, &w).unwrap().partition_term > Q::zero());
    }

    #[test]
    fn pairs_must_be_closed() {
        let a = swap2();
        let ball = cayley_ball(&a.ctx, &a.ctx.symmetric_generators(), 1);
        let c = Cochain::constant(ball.elements().to_vec(), FiniteGroupTable::cyclic(2), 0, 2).unwrap();
        let g = a.ctx.generator(0);
        assert!(matches!(
            DefectWeights::for_pairs(&a.ctx, &c, &[(g.clone(), g)]),
            Err(Error::SupportNotProductClosed(_))
        ));
    }
}
