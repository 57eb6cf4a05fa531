use std::collections::HashMap;

use super::{Element, GroupContext};
use crate::action::{FiniteAction, FiniteProbSpace};
use crate::error::{Error, Result};
use crate::finite_group::FiniteGroupTable;
use crate::perm::Perm;

/// How membership in a finite-index subgroup `Λ` is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `Λ = Γ`.
    Whole,
    /// An explicit element list (finite groups).
    Elements(Vec<Element>),
    /// `Λ = h^{-1}(H)` for a homomorphism `h` into a finite table, given by the images of
    /// the generators, and a subgroup `H` of the table.
    Hom { target: FiniteGroupTable, images: Vec<usize>, subgroup: Vec<usize> },
}

/// A finite-index subgroup with a transversal `r`, where `r[0] = e` represents `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub membership: Membership,
    pub transversal: Vec<Element>,
}

impl QuotientData {
    /// Verifies the transversal: `r[0] = e`, one representative per coset, and the set
    /// of cosets closed under the generators (so the index is exactly its length).
    pub fn new(ctx: &GroupContext, membership: Membership, transversal: Vec<Element>) -> Result<Self> {
        match &membership {
            Membership::Whole => {}
            Membership::Elements(els) => {
                if !els.contains(&ctx.identity()) {
                    return Err(Error::InconsistentQuotient("subgroup misses the identity".into()));
                }
                for g in els {
                    for h in els {
                        if !els.contains(&ctx.multiply(g, &ctx.inverse(h))) {
                            return Err(Error::InconsistentQuotient("element list is not a subgroup".into()));
                        }
                    }
                }
            }
            Membership::Hom { target, images, subgroup } => {
                ctx.check_hom(target, images)?;
                if !subgroup.contains(&target.identity)
                    || subgroup.iter().any(|&g| g >= target.order())
                    || subgroup.iter().any(|&g| subgroup.iter().any(|&h| !subgroup.contains(&target.op(g, target.inverse(h)))))
                {
                    return Err(Error::InconsistentQuotient("target subset is not a subgroup".into()));
                }
            }
        }
        let q = QuotientData { membership, transversal };
        if q.transversal.first() != Some(&ctx.identity()) {
            return Err(Error::InconsistentQuotient("the first representative must be the identity".into()));
        }
        for r in &q.transversal {
            ctx.validate(r)?;
        }
        for i in 0..q.index() {
            for j in i + 1..q.index() {
                if q.contains(ctx, &ctx.left_div(&q.transversal[i], &q.transversal[j])) {
                    return Err(Error::InconsistentQuotient(format!("representatives {i} and {j} share a coset")));
                }
            }
        }
        for i in 0..q.index() {
            for s in ctx.symmetric_generators() {
                q.coset_of(ctx, &ctx.multiply(&s, &q.transversal[i]))?;
            }
        }
        Ok(q)
    }

    /// `Λ = Γ` with the trivial transversal.
    pub fn whole(ctx: &GroupContext) -> Self {
        QuotientData { membership: Membership::Whole, transversal: vec![ctx.identity()] }
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn contains(&self, ctx: &GroupContext, g: &Element) -> bool {
        match &self.membership {
            Membership::Whole => true,
            Membership::Elements(els) => els.contains(g),
            Membership::Hom { target, images, subgroup } => subgroup.contains(&ctx.eval_hom(g, target, images)),
        }
    }

    /// The index `i` with `g ∈ r[i]Λ`.
    pub fn coset_of(&self, ctx: &GroupContext, g: &Element) -> Result<usize> {
        self.transversal
            .iter()
            .position(|r| self.contains(ctx, &ctx.left_div(r, g)))
            .ok_or_else(|| Error::InconsistentQuotient(format!("{} lies in no listed coset", ctx.format(g))))
    }
}

/// Left translation on the cosets, with uniform weights.
pub fn finite_quotient_action(ctx: &GroupContext, q: &QuotientData) -> Result<FiniteAction> {
    let n = q.index();
    let gens = (0..ctx.rank())
        .map(|i| {
            let s = ctx.generator(i);
            let img = (0..n).map(|c| q.coset_of(ctx, &ctx.multiply(&s, &q.transversal[c]))).collect::<Result<Vec<_>>>()?;
            Perm::from_images(img).ok_or_else(|| Error::InconsistentQuotient("generator does not permute the cosets".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteAction::new(ctx.clone(), FiniteProbSpace::uniform(n), gens)
}

/// `ρ(γ, aΛ) = r(γaΛ)^{-1} γ r(aΛ)`, checked to lie in `Λ`.
pub fn coset_cocycle(ctx: &GroupContext, q: &QuotientData, g: &Element, coset: usize) -> Result<Element> {
    let r = q
        .transversal
        .get(coset)
        .ok_or_else(|| Error::InconsistentQuotient(format!("no coset {coset}")))?;
    let gr = ctx.multiply(g, r);
    let c = q.coset_of(ctx, &gr)?;
    let rho = ctx.left_div(&q.transversal[c], &gr);
    if !q.contains(ctx, &rho) {
        return Err(Error::InconsistentQuotient("cocycle value outside the subgroup".into()));
    }
    Ok(rho)
}

/// An action of a subgroup `Λ` on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupAction {
    /// The restriction of an action of the whole group.
    Restricted(FiniteAction),
    /// Permutations for chosen elements of `Λ`, closed up to products of a bounded
    /// number of them; `table` holds every evaluated element.
    Generated { points: usize, table: HashMap<Element, Perm> },
}

impl SubgroupAction {
    /// Closes `gens ↦ perms` under products of at most `radius` factors (or until no
    /// new element appears), rejecting assignments that give two permutations to one
    /// element.
    pub fn generated(ctx: &GroupContext, gens: &[Element], perms: &[Perm], radius: usize) -> Result<Self> {
        if gens.len() != perms.len() {
            return Err(Error::Mismatch("one permutation per subgroup generator".into()));
        }
        let points = perms.first().map_or(0, Perm::len);
        let mut steps: Vec<(Element, Perm)> = Vec::new();
        for (g, p) in gens.iter().zip(perms) {
            if p.len() != points || Perm::from_images(p.0.clone()).is_none() {
                return Err(Error::InvalidAction("subgroup generator image is not a permutation".into()));
            }
            steps.push((g.clone(), p.clone()));
            steps.push((ctx.inverse(g), p.inverse()));
        }
        let mut table = HashMap::from([(ctx.identity(), Perm::identity(points))]);
        let mut frontier = vec![ctx.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                let pg = table[g].clone();
                for (s, ps) in &steps {
                    let h = ctx.multiply(g, s);
                    let ph = pg.compose(ps);
                    match table.get(&h) {
                        Some(old) if *old != ph => {
                            return Err(Error::InvalidAction(format!("subgroup action is ill-defined at {}", ctx.format(&h))))
                        }
                        Some(_) => {}
                        None => {
                            table.insert(h.clone(), ph);
                            next.push(h);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(SubgroupAction::Generated { points, table })
    }

    pub fn len(&self) -> usize {
        match self {
            SubgroupAction::Restricted(a) => a.len(),
            SubgroupAction::Generated { points, .. } => *points,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn perm(&self, g: &Element) -> Result<Perm> {
        match self {
            SubgroupAction::Restricted(a) => Ok(a.perm_of(g)),
            SubgroupAction::Generated { table, .. } => {
                table.get(g).cloned().ok_or_else(|| Error::WindowEscape(format!("subgroup element {g} beyond the evaluated radius")))
            }
        }
    }
}
