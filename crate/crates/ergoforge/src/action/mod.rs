//! Finite probability spaces, actions by permutations, labelings and window measures.

mod defects;
mod entropy;
mod joining;
mod window_measure;

pub use defects::{
    extension_neighborhood_defect, freeness_defect, weak_containment_defect, weak_containment_search,
    ContainmentSearch,
};
pub use entropy::{entropy, entropy_of_weights, join_labelings, relative_entropy};
pub use joining::{relative_independent_joining, Joining};
pub use window_measure::{pushforward_distribution, Config, WindowMeasure};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{Element, GroupContext, GroupKind};
use crate::perm::Perm;
use crate::rational::{one, Q};

/// Point weights of a finite probability space; points are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteProbSpace {
    pub weights: Vec<Q>,
}

impl FiniteProbSpace {
    pub fn new(weights: Vec<Q>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidMeasure("negative weight".into()));
        }
        let total: Q = weights.iter().sum();
        if total != one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        Ok(FiniteProbSpace { weights })
    }

    pub fn uniform(n: usize) -> Self {
        FiniteProbSpace { weights: vec![Q::new(1.into(), (n as i64).into()); n] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Mass of a subset given as a membership vector.
    pub fn measure(&self, set: &[bool]) -> Q {
        self.weights.iter().zip(set).filter(|(_, &b)| b).map(|(w, _)| w).sum()
    }

    /// Mass of the subset encoded by the low bits of `mask`.
    pub fn measure_mask(&self, mask: u64) -> Q {
        let mut s = Q::zero();
        for (i, w) in self.weights.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += w;
            }
        }
        s
    }
}

/// A measure-preserving action of a finitely generated group by permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    pub ctx: GroupContext,
    pub space: FiniteProbSpace,
    /// `gens[i][x]` is `s_i · x`.
    pub gens: Vec<Perm>,
    inv: Vec<Perm>,
}

impl FiniteAction {
    /// Validates weight preservation and the relations of the group.
    pub fn new(ctx: GroupContext, space: FiniteProbSpace, gens: Vec<Perm>) -> Result<Self> {
        if gens.len() != ctx.rank() {
            return Err(Error::InvalidAction(format!("{} permutations for {} generators", gens.len(), ctx.rank())));
        }
        let n = space.len();
        for (i, p) in gens.iter().enumerate() {
            if p.len() != n || Perm::from_images(p.0.clone()).is_none() {
                return Err(Error::InvalidAction(format!("generator {i} is not a permutation of {n} points")));
            }
            if (0..n).any(|x| space.weights[p.apply(x)] != space.weights[x]) {
                return Err(Error::InvalidAction(format!("generator {i} does not preserve the weights")));
            }
        }
        let inv = gens.iter().map(Perm::inverse).collect();
        let act = FiniteAction { ctx, space, gens, inv };
        act.check_relations()?;
        Ok(act)
    }

    fn check_relations(&self) -> Result<()> {
        match &self.ctx.kind {
            GroupKind::Free { .. } => Ok(()),
            GroupKind::FreeAbelian { .. } => {
                for (i, p) in self.gens.iter().enumerate() {
                    for q in &self.gens[i + 1..] {
                        if p.compose(q) != q.compose(p) {
                            return Err(Error::InvalidAction("generators of an abelian group do not commute".into()));
                        }
                    }
                }
                Ok(())
            }
            GroupKind::Finite { table, gens } => {
                let perms: Vec<Perm> =
                    (0..table.order()).map(|g| self.perm_of(&Element(vec![g as i64]))).collect();
                if !perms[table.identity].is_identity() {
                    return Err(Error::InvalidAction("identity acts nontrivially".into()));
                }
                for g in 0..table.order() {
                    for (i, &s) in gens.iter().enumerate() {
                        if perms[table.op(s, g)] != self.gens[i].compose(&perms[g]) {
                            return Err(Error::InvalidAction("a group relation fails on the space".into()));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// The action in which every generator fixes every point.
    pub fn trivial(ctx: GroupContext, space: FiniteProbSpace) -> Self {
        let n = space.len();
        let gens = vec![Perm::identity(n); ctx.rank()];
        FiniteAction::new(ctx, space, gens).expect("trivial action")
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn weights(&self) -> &[Q] {
        &self.space.weights
    }

    pub fn weight(&self, x: usize) -> &Q {
        &self.space.weights[x]
    }

    /// `g · x`.
    pub fn act(&self, g: &Element, x: usize) -> usize {
        let mut y = x;
        for &(i, e) in self.ctx.syllables(g).iter().rev() {
            let p = if e >= 0 { &self.gens[i] } else { &self.inv[i] };
            for _ in 0..e.unsigned_abs() {
                y = p.apply(y);
            }
        }
        y
    }

    pub fn perm_of(&self, g: &Element) -> Perm {
        Perm((0..self.len()).map(|x| self.act(g, x)).collect())
    }

    /// `g · A` for a subset `A`.
    pub fn image(&self, g: &Element, set: &[bool]) -> Vec<bool> {
        self.perm_of(g).image_set(set)
    }

    /// `g^{-1} A = {x : g x ∈ A}`.
    pub fn preimage(&self, g: &Element, set: &[bool]) -> Vec<bool> {
        (0..self.len()).map(|x| set[self.act(g, x)]).collect()
    }
}

/// A map from points to `0..arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub values: Vec<usize>,
    pub arity: usize,
}

impl Labeling {
    pub fn new(values: Vec<usize>, arity: usize) -> Result<Self> {
        if arity == 0 || values.iter().any(|&v| v >= arity) {
            return Err(Error::Mismatch(format!("labeling value outside 0..{arity}")));
        }
        Ok(Labeling { values, arity })
    }

    pub fn constant(n: usize, arity: usize) -> Self {
        Labeling { values: vec![0; n], arity }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn class(&self, j: usize) -> Vec<bool> {
        self.values.iter().map(|&v| v == j).collect()
    }
}

/// A factor map `φ: Y → X` from `source` (on Y) to `target` (on X).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionTriple {
    pub source: FiniteAction,
    pub target: FiniteAction,
    pub map: Vec<usize>,
}

impl ExtensionTriple {
    /// Checks exact pushforward of the measure and equivariance on every generator.
    pub fn new(source: FiniteAction, target: FiniteAction, map: Vec<usize>) -> Result<Self> {
        if source.ctx != target.ctx {
            return Err(Error::Mismatch("actions of different groups".into()));
        }
        if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
            return Err(Error::Mismatch("factor map has the wrong shape".into()));
        }
        let mut push = vec![Q::zero(); target.len()];
        for (y, &x) in map.iter().enumerate() {
            push[x] += source.weight(y);
        }
        if push != target.space.weights {
            return Err(Error::InvalidMeasure("factor map does not push the measure forward exactly".into()));
        }
        for (i, (pb, pa)) in source.gens.iter().zip(&target.gens).enumerate() {
            if (0..source.len()).any(|y| map[pb.apply(y)] != pa.apply(map[y])) {
                return Err(Error::InvalidAction(format!("factor map is not equivariant for generator {i}")));
            }
        }
        Ok(ExtensionTriple { source, target, map })
    }

    pub fn identity(a: FiniteAction) -> Self {
        let map = (0..a.len()).collect();
        ExtensionTriple { source: a.clone(), target: a, map }
    }

    /// `φ^{-1}(A)`.
    pub fn pullback(&self, set: &[bool]) -> Vec<bool> {
        self.map.iter().map(|&x| set[x]).collect()
    }

    pub fn pull_labeling(&self, beta: &Labeling) -> Labeling {
        Labeling { values: self.map.iter().map(|&x| beta.values[x]).collect(), arity: beta.arity }
    }
}
