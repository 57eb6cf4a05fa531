//! Monotone couplings on configuration windows, map–measure pairs, class-wise
//! re-randomization, forest transports and the mixtures built from them.
//!
//! Maps between configuration spaces are carried as joint distributions (couplings)
//! whose first marginal is the source measure. A deterministic map is the special case
//! where every source atom has a single image.

mod constructions;
mod family;

pub use constructions::{kernel_family, xi_construct, zeta_construct, Kernel, PairMeasure};
pub use family::{
    edge_transport, edge_transport_reverse, forest_measure, forest_measure_rooted, path_transport, WindowMeasureFamily,
};

use std::collections::BTreeMap;

use num::Zero;

use crate::action::{Config, WindowMeasure};
use crate::error::{Error, Result};
use crate::group::{Element, GroupContext, Window};
use crate::rational::Q;
use crate::tree::ComponentRelation;

/// A source measure together with a (possibly randomized) map, as the joint law of
/// `(z, h(z))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapMeasurePair {
    pub source: WindowMeasure,
    pub target_window: Window,
    pub joint: BTreeMap<(Config, Config), Q>,
}

impl MapMeasurePair {
    /// Checks that the first marginal is exactly `source`.
    pub fn new(source: WindowMeasure, target_window: Window, joint: BTreeMap<(Config, Config), Q>) -> Result<Self> {
        let joint: BTreeMap<_, _> = joint.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let mut first: BTreeMap<Config, Q> = BTreeMap::new();
        for ((z0, z1), w) in &joint {
            if z1.len() != target_window.len() || z1.iter().any(|&d| d as usize >= source.alphabet) {
                return Err(Error::InvalidMeasure("target configuration does not fit the target window".into()));
            }
            *first.entry(z0.clone()).or_insert_with(Q::zero) += w;
        }
        if &first != source.atoms() {
            return Err(Error::InvalidMeasure("first marginal of the joint is not the source".into()));
        }
        Ok(MapMeasurePair { source, target_window, joint })
    }

    /// `(ω, h)` for a deterministic configuration map.
    pub fn from_map(source: WindowMeasure, target_window: Window, h: impl Fn(&Config) -> Config) -> Result<Self> {
        let mut joint = BTreeMap::new();
        for (z, w) in source.atoms() {
            joint.insert((z.clone(), h(z)), w.clone());
        }
        Self::new(source, target_window, joint)
    }

    pub fn identity(source: WindowMeasure) -> Self {
        let w = source.window.clone();
        Self::from_map(source, w, Config::clone).expect("identity pair")
    }

    /// The shift `γ^s: p^W → p^{γW}`, which keeps configurations positionally.
    pub fn shift(ctx: &GroupContext, source: WindowMeasure, g: &Element) -> Self {
        let w = source.window.translate(ctx, g);
        Self::from_map(source, w, Config::clone).expect("shift pair")
    }

    /// `h_* ω`.
    pub fn target(&self) -> WindowMeasure {
        let pairs = self.joint.iter().map(|((_, z1), w)| (z1.clone(), w.clone()));
        WindowMeasure::from_pairs(self.target_window.clone(), self.source.alphabet, pairs).expect("marginal of a probability")
    }

    /// The map, when every source atom has exactly one image.
    pub fn as_map(&self) -> Option<BTreeMap<Config, Config>> {
        let mut m = BTreeMap::new();
        for (z0, z1) in self.joint.keys() {
            if m.insert(z0.clone(), z1.clone()).is_some() {
                return None;
            }
        }
        Some(m)
    }

    /// Whether the pair is the identity on a full-measure set.
    pub fn is_identity_ae(&self) -> bool {
        self.target_window == self.source.window && self.joint.keys().all(|(a, b)| a == b)
    }
}

/// The comonotone coupling of `κ0` (source) and `κ1` (target): cumulative masses are
/// matched along the lexicographic order of configurations.
pub fn monotone_coupling(kappa1: &WindowMeasure, kappa0: &WindowMeasure) -> Result<MapMeasurePair> {
    if kappa1.window != kappa0.window || kappa1.alphabet != kappa0.alphabet {
        return Err(Error::Mismatch("monotone coupling needs a common window and alphabet".into()));
    }
    let mut joint = BTreeMap::new();
    let mut src = kappa0.atoms().iter();
    let mut tgt = kappa1.atoms().iter();
    let mut a = src.next().map(|(z, w)| (z.clone(), w.clone()));
    let mut b = tgt.next().map(|(z, w)| (z.clone(), w.clone()));
    while let (Some((za, wa)), Some((zb, wb))) = (a.as_mut(), b.as_mut()) {
        let m = if *wa < *wb { wa.clone() } else { wb.clone() };
        joint.insert((za.clone(), zb.clone()), m.clone());
        *wa -= &m;
        *wb -= &m;
        if wa.is_zero() {
            a = src.next().map(|(z, w)| (z.clone(), w.clone()));
        }
        if wb.is_zero() {
            b = tgt.next().map(|(z, w)| (z.clone(), w.clone()));
        }
    }
    MapMeasurePair::new(kappa0.clone(), kappa1.window.clone(), joint)
}

/// The literal map `z ↦ min{z' : κ1(L_{z'}) ≥ κ0(L_z)}` on the support of `κ0`.
pub fn quantile_map(kappa1: &WindowMeasure, kappa0: &WindowMeasure) -> BTreeMap<Config, Config> {
    let mut out = BTreeMap::new();
    for z in kappa0.atoms().keys() {
        let level = kappa0.cumulative(z);
        let img = kappa1.atoms().keys().find(|z1| kappa1.cumulative(z1) >= level).expect("cumulative reaches 1");
        out.insert(z.clone(), img.clone());
    }
    out
}

/// `(h1, ω1)·(h0, ω0)`: defined when `ω1 = (h0)_* ω0`; randomized maps compose as
/// Markov kernels.
pub fn compose_pairs(p1: &MapMeasurePair, p0: &MapMeasurePair) -> Result<MapMeasurePair> {
    if p0.target() != p1.source {
        return Err(Error::NotComposable("the outer source is not the pushforward of the inner pair".into()));
    }
    let mut by_mid: BTreeMap<&Config, Vec<(&Config, &Q)>> = BTreeMap::new();
    for ((z1, z2), w) in &p1.joint {
        by_mid.entry(z1).or_default().push((z2, w));
    }
    let mut joint: BTreeMap<(Config, Config), Q> = BTreeMap::new();
    for ((z0, z1), w) in &p0.joint {
        let mid = p1.source.mass(z1);
        for (z2, w2) in &by_mid[z1] {
            *joint.entry((z0.clone(), (*z2).clone())).or_insert_with(Q::zero) += w * *w2 / &mid;
        }
    }
    MapMeasurePair::new(p0.source.clone(), p1.target_window.clone(), joint)
}

/// `φ(ω, E)`: the independent product of the marginals of `ω` on the classes of `E`.
pub fn rerandomize(omega: &WindowMeasure, e: &ComponentRelation) -> Result<WindowMeasure> {
    if !e.covers(&omega.window) {
        return Err(Error::Mismatch("the relation does not partition the window".into()));
    }
    let n = omega.window.len();
    let mut acc: BTreeMap<Config, Q> = BTreeMap::from([(vec![0u8; n], Q::from_integer(1.into()))]);
    for class in &e.classes {
        let pos: Vec<usize> = class.iter().map(|g| omega.window.position(g).unwrap()).collect();
        let marg = omega.marginal_positions(&pos);
        let mut next = BTreeMap::new();
        for (z, w) in &acc {
            for (m, v) in &marg {
                let mut z2 = z.clone();
                for (&p, &d) in pos.iter().zip(m) {
                    z2[p] = d;
                }
                next.insert(z2, w * v);
            }
        }
        acc = next;
    }
    WindowMeasure::new(omega.window.clone(), omega.alphabet, acc)
}
