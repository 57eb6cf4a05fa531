use std::collections::{BTreeMap, VecDeque};

use num::Zero;

use super::{compose_pairs, monotone_coupling, MapMeasurePair};
use crate::action::{Config, WindowMeasure};
use crate::error::{Error, Result};
use crate::group::{Element, GroupContext, Window};
use crate::rational::{one, Q};
use crate::tree::{components, DirectedForest};

/// A family `γ ↦ ω(γ)` where `ω(γ)` lives on `γ^{-1}W` for a base window `W`, with the
/// enumeration inherited positionally from `W`.
///
/// With this convention every shift `(δ^{-1}γ)^s` from `γ^{-1}W` to `δ^{-1}W` leaves
/// configurations unchanged, and the family is shift-coherent exactly when all members
/// carry the same atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMeasureFamily {
    pub base: Window,
    pub alphabet: usize,
    pub members: BTreeMap<Element, WindowMeasure>,
}

impl WindowMeasureFamily {
    /// Members given as atom maps on the positions of `base`.
    pub fn new(
        ctx: &GroupContext,
        base: Window,
        alphabet: usize,
        members: impl IntoIterator<Item = (Element, BTreeMap<Config, Q>)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (g, atoms) in members {
            let w = base.translate(ctx, &ctx.inverse(&g));
            out.insert(g, WindowMeasure::new(w, alphabet, atoms)?);
        }
        Ok(WindowMeasureFamily { base, alphabet, members: out })
    }

    /// `ω(γ) = (γ^{-1})^s_* κ` for a measure `κ` on the base window.
    pub fn coherent(ctx: &GroupContext, kappa: &WindowMeasure, points: &[Element]) -> Self {
        let members = points.iter().map(|g| (g.clone(), kappa.shift(ctx, &ctx.inverse(g)))).collect();
        WindowMeasureFamily { base: kappa.window.clone(), alphabet: kappa.alphabet, members }
    }

    pub fn get(&self, g: &Element) -> Result<&WindowMeasure> {
        self.members.get(g).ok_or_else(|| Error::WindowEscape(format!("family has no member at {g}")))
    }

    /// `γ^s_* ω(γ) = ω(e)` for every member.
    pub fn is_shift_coherent(&self) -> bool {
        let mut it = self.members.values();
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m.atoms() == first.atoms()),
        }
    }

    /// `(β^s·ω)(α) = ω(β^{-1}α)`.
    pub fn shift(&self, ctx: &GroupContext, b: &Element) -> Self {
        let members = self.members.iter().map(|(g, m)| (ctx.multiply(b, g), m.clone())).collect();
        WindowMeasureFamily { base: self.base.translate(ctx, b), alphabet: self.alphabet, members }
    }
}

/// `g_{δ,γ} = ψ(ω(δ), (δ^{-1}γ)^s_* ω(γ)) ∘ (δ^{-1}γ)^s`, a pair with source `ω(γ)`
/// and pushforward `ω(δ)`.
pub fn edge_transport(ctx: &GroupContext, om: &WindowMeasureFamily, d: &Element, g: &Element) -> Result<MapMeasurePair> {
    let wg = om.get(g)?;
    let wd = om.get(d)?;
    let shift = MapMeasurePair::shift(ctx, wg.clone(), &ctx.left_div(d, g));
    let moved = shift.target();
    if moved.window != wd.window {
        return Err(Error::Mismatch("members do not sit on shifted copies of one window".into()));
    }
    compose_pairs(&monotone_coupling(wd, &moved)?, &shift)
}

/// `ḡ_{δ,γ} = (δ^{-1}γ)^s ∘ ψ((γ^{-1}δ)^s_* ω(δ), ω(γ))`.
pub fn edge_transport_reverse(
    ctx: &GroupContext,
    om: &WindowMeasureFamily,
    d: &Element,
    g: &Element,
) -> Result<MapMeasurePair> {
    let wg = om.get(g)?;
    let wd = om.get(d)?;
    let back = wd.shift(ctx, &ctx.left_div(g, d));
    if back.window != wg.window {
        return Err(Error::Mismatch("members do not sit on shifted copies of one window".into()));
    }
    let psi = monotone_coupling(&back, wg)?;
    compose_pairs(&MapMeasurePair::shift(ctx, back, &ctx.left_div(d, g)), &psi)
}

fn step(ctx: &GroupContext, om: &WindowMeasureFamily, f: &DirectedForest, to: &Element, from: &Element) -> Result<MapMeasurePair> {
    if f.has_edge(to, from) {
        edge_transport(ctx, om, to, from)
    } else if f.has_edge(from, to) {
        edge_transport_reverse(ctx, om, to, from)
    } else {
        Err(Error::InvalidForest("transport step along a non-edge".into()))
    }
}

/// `σ_F^ω(δ, γ)`: edge transports composed along the forest path from `γ` to `δ`.
pub fn path_transport(
    ctx: &GroupContext,
    om: &WindowMeasureFamily,
    f: &DirectedForest,
    d: &Element,
    g: &Element,
) -> Result<MapMeasurePair> {
    let path = f
        .path(g, d)
        .ok_or_else(|| Error::WindowEscape(format!("{} and {} are not connected", ctx.format(g), ctx.format(d))))?;
    let mut acc = MapMeasurePair::identity(om.get(g)?.clone());
    for w in path.windows(2) {
        acc = compose_pairs(&step(ctx, om, f, &w[1], &w[0])?, &acc)?;
    }
    Ok(acc)
}

/// `θ(ω, F)` with the first vertex of each component as root.
pub fn forest_measure(ctx: &GroupContext, om: &WindowMeasureFamily, f: &DirectedForest) -> Result<WindowMeasure> {
    forest_measure_rooted(ctx, om, f, &BTreeMap::new())
}

/// `θ(ω, F) = f_* ∏_C (∏_{δ∈C} σ_F^ω(δ, γ_C))_* ω(γ_C)` with `f(z)(γ) = z(γ)(e)`, on
/// `p^V` for the forest's vertex window `V`.
///
/// Within a component, the transports out of the root are realized jointly as the
/// Markov chain along the tree: each vertex is drawn from its parent through the edge
/// transport. `roots` overrides the root of the component containing each listed vertex.
pub fn forest_measure_rooted(
    ctx: &GroupContext,
    om: &WindowMeasureFamily,
    f: &DirectedForest,
    roots: &BTreeMap<usize, Element>,
) -> Result<WindowMeasure> {
    let v = &f.vertices;
    let e = components(f);
    // flattening reads z(γ)(e), the digit at γ's position in the base window
    let flat_pos: Vec<usize> = v
        .elements()
        .iter()
        .map(|g| om.base.position(g).ok_or_else(|| Error::WindowEscape(format!("{} is outside the base window", ctx.format(g)))))
        .collect::<Result<_>>()?;
    let mut acc: BTreeMap<Config, Q> = BTreeMap::from([(vec![0u8; v.len()], one())]);
    for (ci, class) in e.classes.iter().enumerate() {
        let root = roots.get(&ci).cloned().unwrap_or_else(|| class[0].clone());
        if !class.contains(&root) {
            return Err(Error::Mismatch("chosen root lies outside its component".into()));
        }
        let comp = component_law(ctx, om, f, &root, class.len())?;
        let mut next = BTreeMap::new();
        for (z, w) in &acc {
            for ((order, states), pw) in &comp {
                let mut z2 = z.clone();
                for (g, s) in order.iter().zip(states) {
                    let i = v.position(g).unwrap();
                    z2[i] = s[flat_pos[i]];
                }
                *next.entry(z2).or_insert_with(Q::zero) += w * pw;
            }
        }
        acc = next;
    }
    WindowMeasure::new(v.clone(), om.alphabet, acc)
}

type ComponentLaw = BTreeMap<(Vec<Element>, Vec<Config>), Q>;

/// Joint law of the full configurations over one component, drawn from the root.
fn component_law(ctx: &GroupContext, om: &WindowMeasureFamily, f: &DirectedForest, root: &Element, size: usize) -> Result<ComponentLaw> {
    // breadth-first tree order with parents
    let mut order = vec![root.clone()];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = order[i].clone();
        for nb in f.vertices.elements() {
            if (f.has_edge(nb, &cur) || f.has_edge(&cur, nb)) && !order.contains(nb) {
                order.push(nb.clone());
                parent.push(i);
                queue.push_back(order.len() - 1);
            }
        }
    }
    debug_assert_eq!(order.len(), size);
    let mut states: BTreeMap<Vec<Config>, Q> =
        om.get(root)?.atoms().iter().map(|(z, w)| (vec![z.clone()], w.clone())).collect();
    for i in 1..order.len() {
        let p = parent[i];
        let t = step(ctx, om, f, &order[i], &order[p])?;
        let mut kernel: BTreeMap<&Config, Vec<(&Config, Q)>> = BTreeMap::new();
        for ((z0, z1), w) in &t.joint {
            kernel.entry(z0).or_default().push((z1, w / t.source.mass(z0)));
        }
        let mut next = BTreeMap::new();
        for (st, w) in &states {
            for (z1, kw) in &kernel[&st[p]] {
                let mut s2 = st.clone();
                s2.push((*z1).clone());
                *next.entry(s2).or_insert_with(Q::zero) += w * kw;
            }
        }
        states = next;
    }
    Ok(states.into_iter().map(|(s, w)| ((order.clone(), s), w)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::rerandomize;
    use crate::group::cayley_ball;
    use crate::rational::q;

    fn z_setup() -> (GroupContext, Window) {
        let z = GroupContext::free_abelian(1);
        let w = cayley_ball(&z, &z.symmetric_generators(), 1);
        (z, w)
    }

    #[test]
    fn coherent_family_transport_is_shift() {
        let (z, w) = z_setup();
        let kappa = WindowMeasure::from_pairs(w.clone(), 2, [(vec![0, 1, 1], q(1, 3)), (vec![1, 0, 0], q(2, 3))]).unwrap();
        let om = WindowMeasureFamily::coherent(&z, &kappa, w.elements());
        assert!(om.is_shift_coherent());
        let (d, g) = (w.get(1).clone(), w.get(2).clone());
        let t = edge_transport(&z, &om, &d, &g).unwrap();
        let s = MapMeasurePair::shift(&z, om.get(&g).unwrap().clone(), &z.left_div(&d, &g));
        assert_eq!(t, s);
        assert_eq!(edge_transport_reverse(&z, &om, &d, &g).unwrap(), s);
        assert!(edge_transport(&z, &om, &g, &g).unwrap().is_identity_ae());
    }

    #[test]
    fn spanning_tree_coherent_gives_base() {
        let (z, w) = z_setup();
        let kappa = WindowMeasure::from_pairs(w.clone(), 2, [(vec![0, 1, 1], q(1, 3)), (vec![1, 0, 0], q(2, 3))]).unwrap();
        let om = WindowMeasureFamily::coherent(&z, &kappa, w.elements());
        let e = z.identity();
        let t = DirectedForest::new(w.clone(), vec![(w.get(1).clone(), e.clone()), (w.get(2).clone(), e)]).unwrap();
        assert_eq!(forest_measure(&z, &om, &t).unwrap(), kappa);
        let empty = DirectedForest::empty(w.clone());
        let r = rerandomize(&kappa, &components(&empty)).unwrap();
        assert_eq!(forest_measure(&z, &om, &empty).unwrap(), r);
    }
}
