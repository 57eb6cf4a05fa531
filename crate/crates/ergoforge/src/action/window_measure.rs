use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::{FiniteAction, Labeling};
use crate::error::{Error, Result};
use crate::group::{GroupContext, Window};
use crate::rational::{one, Q};

/// A configuration in `p^W`: digit `i` is the value at the `i`-th window element.
pub type Config = Vec<u8>;

/// An exact probability measure on `p^W`, stored sparsely (zero atoms are dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMeasure {
    pub window: Window,
    pub alphabet: usize,
    atoms: BTreeMap<Config, Q>,
}

impl WindowMeasure {
    pub fn new(window: Window, alphabet: usize, atoms: BTreeMap<Config, Q>) -> Result<Self> {
        if alphabet == 0 || alphabet > 256 {
            return Err(Error::InvalidMeasure("alphabet must lie in 1..=256".into()));
        }
        let mut total = Q::zero();
        for (z, w) in &atoms {
            if z.len() != window.len() {
                return Err(Error::InvalidMeasure(format!("configuration of length {} on a window of {}", z.len(), window.len())));
            }
            if z.iter().any(|&d| d as usize >= alphabet) {
                return Err(Error::InvalidMeasure("digit outside the alphabet".into()));
            }
            if w.is_negative() {
                return Err(Error::InvalidMeasure("negative weight".into()));
            }
            total += w;
        }
        if total != one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        let atoms = atoms.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Ok(WindowMeasure { window, alphabet, atoms })
    }

    /// Builds from a list of atoms, adding repeated configurations.
    pub fn from_pairs(window: Window, alphabet: usize, pairs: impl IntoIterator<Item = (Config, Q)>) -> Result<Self> {
        let mut atoms = BTreeMap::new();
        for (z, w) in pairs {
            *atoms.entry(z).or_insert_with(Q::zero) += w;
        }
        Self::new(window, alphabet, atoms)
    }

    pub fn point_mass(window: Window, alphabet: usize, z: Config) -> Result<Self> {
        Self::new(window, alphabet, BTreeMap::from([(z, one())]))
    }

    pub fn atoms(&self) -> &BTreeMap<Config, Q> {
        &self.atoms
    }

    pub fn mass(&self, z: &[u8]) -> Q {
        self.atoms.get(z).cloned().unwrap_or_else(Q::zero)
    }

    /// `κ(L_z)`: total mass of configurations lexicographically at most `z`.
    pub fn cumulative(&self, z: &[u8]) -> Q {
        self.atoms.range(..=z.to_vec()).map(|(_, w)| w).sum()
    }

    /// Marginal on the listed positions, in that order.
    pub fn marginal_positions(&self, pos: &[usize]) -> BTreeMap<Config, Q> {
        let mut out: BTreeMap<Config, Q> = BTreeMap::new();
        for (z, w) in &self.atoms {
            let key: Config = pos.iter().map(|&i| z[i]).collect();
            *out.entry(key).or_insert_with(Q::zero) += w;
        }
        out
    }

    /// Marginal on a sub-window (enumerated as `sub` is).
    pub fn marginal(&self, sub: &Window) -> Result<WindowMeasure> {
        let pos = self.positions_of(sub)?;
        WindowMeasure::new(sub.clone(), self.alphabet, self.marginal_positions(&pos))
    }

    pub fn positions_of(&self, sub: &Window) -> Result<Vec<usize>> {
        sub.elements()
            .iter()
            .map(|g| self.window.position(g).ok_or_else(|| Error::WindowEscape(format!("{g} is not in the window"))))
            .collect()
    }

    /// The same configurations read on another window of the same size; this is how a
    /// shift `γ^s` acts when `window` is `γ·W` with the inherited enumeration.
    pub fn relabel(&self, window: Window) -> Result<WindowMeasure> {
        if window.len() != self.window.len() {
            return Err(Error::Mismatch("relabel to a window of different size".into()));
        }
        Ok(WindowMeasure { window, alphabet: self.alphabet, atoms: self.atoms.clone() })
    }

    /// `γ^s_* κ`: the shift carries the measure on `p^W` to `p^{γW}`.
    pub fn shift(&self, ctx: &GroupContext, g: &crate::group::Element) -> WindowMeasure {
        WindowMeasure { window: self.window.translate(ctx, g), alphabet: self.alphabet, atoms: self.atoms.clone() }
    }

    /// Re-enumerates onto `target`, which must hold the same elements.
    pub fn reorder_to(&self, target: &Window) -> Result<WindowMeasure> {
        if target.len() != self.window.len() {
            return Err(Error::Mismatch("reorder onto a different element set".into()));
        }
        self.marginal(target)
    }

    /// Total variation distance to a measure on the same window.
    pub fn tv_distance(&self, other: &WindowMeasure) -> Result<Q> {
        if self.window != other.window {
            return Err(Error::Mismatch("different windows".into()));
        }
        let mut s = Q::zero();
        for (z, w) in &self.atoms {
            s += (w - other.mass(z)).abs();
        }
        for (z, w) in &other.atoms {
            if !self.atoms.contains_key(z) {
                s += w;
            }
        }
        Ok(s / Q::from_integer(2.into()))
    }
}

/// Distribution of `x ↦ α_F(x)`, where `α_F(x)(f) = α(f^{-1}·x)`.
pub fn pushforward_distribution(a: &FiniteAction, alpha: &Labeling, f: &Window) -> Result<WindowMeasure> {
    if alpha.len() != a.len() {
        return Err(Error::Mismatch("labeling and action have different point counts".into()));
    }
    let invs: Vec<_> = f.elements().iter().map(|g| a.perm_of(&a.ctx.inverse(g))).collect();
    let pairs = (0..a.len()).map(|x| {
        let z: Config = invs.iter().map(|p| alpha.values[p.apply(x)] as u8).collect();
        (z, a.weight(x).clone())
    });
    WindowMeasure::from_pairs(f.clone(), alpha.arity, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::FiniteProbSpace;
    use crate::perm::Perm;
    use crate::rational::q;

    #[test]
    fn swap_two_points() {
        let z = GroupContext::free_abelian(1);
        let a = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])]).unwrap();
        let alpha = Labeling::new(vec![0, 1], 2).unwrap();
        let f = Window::new(vec![z.identity(), z.generator(0)]).unwrap();
        let m = pushforward_distribution(&a, &alpha, &f).unwrap();
        assert_eq!(m.mass(&[0, 1]), q(1, 2));
        assert_eq!(m.mass(&[1, 0]), q(1, 2));
        assert_eq!(m.atoms().len(), 2);
    }

    #[test]
    fn constant_labeling_is_point_mass() {
        let z = GroupContext::free(2);
        let a = FiniteAction::trivial(z.clone(), FiniteProbSpace::uniform(3));
        let f = crate::group::cayley_ball(&z, &z.symmetric_generators(), 1);
        let m = pushforward_distribution(&a, &Labeling::constant(3, 2), &f).unwrap();
        assert_eq!(m.mass(&[0; 5]), one());
    }

    #[test]
    fn cumulative_is_lexicographic() {
        let w = Window::new(vec![GroupContext::free(1).identity()]).unwrap();
        let m = WindowMeasure::from_pairs(w, 2, [(vec![0], q(1, 4)), (vec![1], q(3, 4))]).unwrap();
        assert_eq!(m.cumulative(&[0]), q(1, 4));
        assert_eq!(m.cumulative(&[1]), one());
    }
}
