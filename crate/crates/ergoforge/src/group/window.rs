use std::collections::HashMap;

use super::{Element, GroupContext};
use crate::error::{Error, Result};

/// An ordered finite list of distinct group elements. Equality compares the
/// enumeration only.
#[derive(Clone, Debug)]
pub struct Window {
    elems: Vec<Element>,
    index: HashMap<Element, usize>,
    /// Radius when built as a Cayley ball.
    pub ball_radius: Option<usize>,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Window {}

impl Window {
    pub fn new(elems: Vec<Element>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, g) in elems.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::Mismatch(format!("duplicate window element {g}")));
            }
        }
        Ok(Window { elems, index, ball_radius: None })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elems[i]
    }

    /// `γ·W`, keeping the enumeration order positionally.
    pub fn translate(&self, ctx: &GroupContext, g: &Element) -> Window {
        let elems = self.elems.iter().map(|w| ctx.multiply(g, w)).collect();
        Window::new(elems).expect("translation is injective")
    }

    pub fn is_inverse_closed(&self, ctx: &GroupContext) -> bool {
        self.elems.iter().all(|g| self.contains(&ctx.inverse(g)))
    }
}

/// The ball of radius `r` for the generating set `gens`: identity first, then each
/// sphere in discovery order (right multiplication by `gens` in the given order).
pub fn cayley_ball(ctx: &GroupContext, gens: &[Element], r: usize) -> Window {
    let mut gs: Vec<Element> = Vec::new();
    for g in gens {
        if !ctx.is_identity(g) && !gs.contains(g) {
            gs.push(g.clone());
        }
    }
    let mut elems = vec![ctx.identity()];
    let mut seen: HashMap<Element, usize> = HashMap::from([(ctx.identity(), 0)]);
    let mut frontier = 0..1;
    for _ in 0..r {
        let start = elems.len();
        for i in frontier.clone() {
            for s in &gs {
                let h = ctx.multiply(&elems[i], s);
                if !seen.contains_key(&h) {
                    seen.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
        }
        frontier = start..elems.len();
        if frontier.is_empty() {
            break;
        }
    }
    Window { elems, index: seen, ball_radius: Some(r) }
}
