use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use super::{forest_measure, rerandomize, WindowMeasureFamily};
use crate::action::{Config, WindowMeasure};
use crate::error::{Error, Result};
use crate::group::{Element, GroupContext, Window};
use crate::rational::Q;
use crate::tree::{components, DirectedForest};

/// A probability measure on `q^{W_q} × p^{W_p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMeasure {
    pub label_window: Window,
    pub labels: usize,
    pub config_window: Window,
    pub alphabet: usize,
    atoms: BTreeMap<(Config, Config), Q>,
}

impl PairMeasure {
    pub fn new(
        label_window: Window,
        labels: usize,
        config_window: Window,
        alphabet: usize,
        atoms: BTreeMap<(Config, Config), Q>,
    ) -> Result<Self> {
        let atoms: BTreeMap<_, _> = atoms.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let mut total = Q::zero();
        for ((y, z), w) in &atoms {
            if w.is_negative() {
                return Err(Error::InvalidMeasure("negative mass".into()));
            }
            if y.len() != label_window.len() || z.len() != config_window.len() {
                return Err(Error::InvalidMeasure("configuration length does not match its window".into()));
            }
            if y.iter().any(|&d| d as usize >= labels) || z.iter().any(|&d| d as usize >= alphabet) {
                return Err(Error::InvalidMeasure("digit outside the alphabet".into()));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("total mass {total} is not 1")));
        }
        Ok(PairMeasure { label_window, labels, config_window, alphabet, atoms })
    }

    /// `Σ_y ν(y) δ_y × λ_y`.
    pub fn from_conditionals(nu: &WindowMeasure, cond: &BTreeMap<Config, WindowMeasure>) -> Result<Self> {
        let first = cond.values().next().ok_or_else(|| Error::InvalidMeasure("no conditionals".into()))?;
        let mut atoms = BTreeMap::new();
        for (y, w) in nu.atoms() {
            let c = cond.get(y).ok_or_else(|| Error::InvalidMeasure(format!("no conditional at {y:?}")))?;
            for (z, v) in c.atoms() {
                atoms.insert((y.clone(), z.clone()), w * v);
            }
        }
        Self::new(nu.window.clone(), nu.alphabet, first.window.clone(), first.alphabet, atoms)
    }

    pub fn product(nu: &WindowMeasure, rho: &WindowMeasure) -> Result<Self> {
        let cond = nu.atoms().keys().map(|y| (y.clone(), rho.clone())).collect();
        Self::from_conditionals(nu, &cond)
    }

    pub fn atoms(&self) -> &BTreeMap<(Config, Config), Q> {
        &self.atoms
    }

    /// The `q^{W_q}` marginal `ν`.
    pub fn label_marginal(&self) -> WindowMeasure {
        let pairs = self.atoms.iter().map(|((y, _), w)| (y.clone(), w.clone()));
        WindowMeasure::from_pairs(self.label_window.clone(), self.labels, pairs).expect("marginal of a probability")
    }

    /// Exact conditionals `λ_y` over the positive-mass labels.
    pub fn disintegrate(&self) -> BTreeMap<Config, WindowMeasure> {
        let nu = self.label_marginal();
        let mut out: BTreeMap<Config, BTreeMap<Config, Q>> = BTreeMap::new();
        for ((y, z), w) in &self.atoms {
            out.entry(y.clone()).or_default().insert(z.clone(), w / nu.mass(y));
        }
        out.into_iter()
            .map(|(y, m)| (y, WindowMeasure::new(self.config_window.clone(), self.alphabet, m).expect("conditional")))
            .collect()
    }
}

/// A kernel `κ: q^U → Prob(p^W)` given by an explicit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub input_window: Window,
    pub labels: usize,
    pub output_window: Window,
    pub alphabet: usize,
    pub table: BTreeMap<Config, WindowMeasure>,
}

impl Kernel {
    pub fn new(
        input_window: Window,
        labels: usize,
        output_window: Window,
        alphabet: usize,
        table: BTreeMap<Config, WindowMeasure>,
    ) -> Result<Self> {
        for (y, m) in &table {
            if y.len() != input_window.len() || y.iter().any(|&d| d as usize >= labels) {
                return Err(Error::InvalidMeasure(format!("kernel input {y:?} does not fit its window")));
            }
            if m.window != output_window || m.alphabet != alphabet {
                return Err(Error::Mismatch("kernel output on the wrong window".into()));
            }
        }
        Ok(Kernel { input_window, labels, output_window, alphabet, table })
    }

    /// The kernel `y ↦ λ_y` of a pair measure whose label window is `input`.
    pub fn from_disintegration(lambda: &PairMeasure) -> Self {
        Kernel {
            input_window: lambda.label_window.clone(),
            labels: lambda.labels,
            output_window: lambda.config_window.clone(),
            alphabet: lambda.alphabet,
            table: lambda.disintegrate(),
        }
    }

    pub fn eval(&self, y: &[u8]) -> Result<&WindowMeasure> {
        self.table.get(y).ok_or_else(|| Error::WindowEscape(format!("kernel undefined on {y:?}")))
    }

    /// `κ((γ^{-1})^s·y)`: reads `y` on `γU` inside the label window `W_q`.
    pub fn eval_shifted(&self, ctx: &GroupContext, y_window: &Window, y: &[u8], g: &Element) -> Result<&WindowMeasure> {
        let read = self
            .input_window
            .elements()
            .iter()
            .map(|u| {
                let gu = ctx.multiply(g, u);
                y_window
                    .position(&gu)
                    .map(|i| y[i])
                    .ok_or_else(|| Error::WindowEscape(format!("{} is outside the label window", ctx.format(&gu))))
            })
            .collect::<Result<Config>>()?;
        self.eval(&read)
    }
}

fn check_forests(mu_f: &[(DirectedForest, Q)]) -> Result<()> {
    let total: Q = mu_f.iter().map(|(_, w)| w).sum();
    if mu_f.iter().any(|(_, w)| w.is_negative()) || !total.is_one() {
        return Err(Error::InvalidMeasure("forest weights are not a probability".into()));
    }
    Ok(())
}

/// `ζ = Σ_F μ(F) Σ_y ν(y) δ_y × φ(λ_y, E_F)`, with forests on the configuration window.
pub fn zeta_construct(lambda: &PairMeasure, mu_f: &[(DirectedForest, Q)]) -> Result<PairMeasure> {
    check_forests(mu_f)?;
    let nu = lambda.label_marginal();
    let cond = lambda.disintegrate();
    let mut atoms: BTreeMap<(Config, Config), Q> = BTreeMap::new();
    for (f, wf) in mu_f {
        if f.vertices.len() != lambda.config_window.len() {
            return Err(Error::Mismatch("forest vertices differ from the configuration window".into()));
        }
        let e = components(f);
        for (y, c) in &cond {
            for (z, w) in rerandomize(c, &e)?.atoms() {
                *atoms.entry((y.clone(), z.clone())).or_insert_with(Q::zero) += wf * nu.mass(y) * w;
            }
        }
    }
    PairMeasure::new(lambda.label_window.clone(), lambda.labels, lambda.config_window.clone(), lambda.alphabet, atoms)
}

/// The family `ω_y(γ) = κ((γ^{-1})^s·y)` over the listed points.
pub fn kernel_family(ctx: &GroupContext, kappa: &Kernel, y_window: &Window, y: &[u8], points: &[Element]) -> Result<WindowMeasureFamily> {
    let members = points
        .iter()
        .map(|g| Ok((g.clone(), kappa.eval_shifted(ctx, y_window, y, g)?.atoms().clone())))
        .collect::<Result<Vec<_>>>()?;
    WindowMeasureFamily::new(ctx, kappa.output_window.clone(), kappa.alphabet, members)
}

/// `ξ(ν′) = Σ_F μ(F) Σ_y ν′(y) δ_y × θ(ω_y, F)`; forests live on a common vertex
/// window inside the kernel's output window.
pub fn xi_construct(ctx: &GroupContext, kappa: &Kernel, nu: &WindowMeasure, mu_f: &[(DirectedForest, Q)]) -> Result<PairMeasure> {
    check_forests(mu_f)?;
    if nu.alphabet != kappa.labels {
        return Err(Error::Mismatch("label alphabet differs from the kernel's".into()));
    }
    let vertices = mu_f.first().map(|(f, _)| f.vertices.clone()).ok_or_else(|| Error::InvalidMeasure("no forests".into()))?;
    let mut atoms: BTreeMap<(Config, Config), Q> = BTreeMap::new();
    for (f, wf) in mu_f {
        if f.vertices != vertices {
            return Err(Error::Mismatch("forests on different vertex windows".into()));
        }
        for (y, wy) in nu.atoms() {
            let om = kernel_family(ctx, kappa, &nu.window, y, vertices.elements())?;
            for (z, w) in forest_measure(ctx, &om, f)?.atoms() {
                *atoms.entry((y.clone(), z.clone())).or_insert_with(Q::zero) += wf * wy * w;
            }
        }
    }
    PairMeasure::new(nu.window.clone(), nu.alphabet, vertices, kappa.alphabet, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cayley_ball;
    use crate::rational::{one, q};

    fn setup() -> (GroupContext, Window, DirectedForest) {
        let z = GroupContext::free_abelian(1);
        let w = cayley_ball(&z, &z.symmetric_generators(), 1);
        let e = z.identity();
        let t = DirectedForest::new(w.clone(), vec![(w.get(1).clone(), e.clone()), (w.get(2).clone(), e)]).unwrap();
        (z, w, t)
    }

    #[test]
    fn zeta_spanning_tree_is_identity() {
        let (_, w, t) = setup();
        let lam = PairMeasure::new(
            w.clone(),
            2,
            w.clone(),
            2,
            BTreeMap::from([
                ((vec![0, 0, 0], vec![0, 1, 0]), q(1, 2)),
                ((vec![0, 0, 0], vec![1, 1, 0]), q(1, 4)),
                ((vec![1, 0, 1], vec![0, 0, 1]), q(1, 4)),
            ]),
        )
        .unwrap();
        assert_eq!(zeta_construct(&lam, &[(t, one())]).unwrap(), lam);
    }

    #[test]
    fn xi_constant_labels_reproduce_lambda() {
        let (z, w, t) = setup();
        let u = Window::new(vec![z.identity()]).unwrap();
        let l0 = WindowMeasure::from_pairs(w.clone(), 2, [(vec![0, 1, 1], q(1, 3)), (vec![1, 0, 0], q(2, 3))]).unwrap();
        let l1 = WindowMeasure::point_mass(w.clone(), 2, vec![1, 1, 0]).unwrap();
        let kappa = Kernel::new(u, 2, w.clone(), 2, BTreeMap::from([(vec![0], l0.clone()), (vec![1], l1.clone())])).unwrap();
        let big = cayley_ball(&z, &z.symmetric_generators(), 2);
        let nu = WindowMeasure::from_pairs(big.clone(), 2, [(vec![0; 5], q(1, 4)), (vec![1; 5], q(3, 4))]).unwrap();
        let xi = xi_construct(&z, &kappa, &nu, &[(t, one())]).unwrap();
        assert_eq!(xi.label_marginal(), nu);
        let cond = BTreeMap::from([(vec![0; 5], l0), (vec![1; 5], l1)]);
        assert_eq!(xi, PairMeasure::from_conditionals(&nu, &cond).unwrap());
    }
}
