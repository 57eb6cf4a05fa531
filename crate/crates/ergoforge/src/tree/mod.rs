//! Directed forests on windows, their component relations, and retractions onto cocycles.

mod retract;

pub use retract::{lifted_retraction, retract, retract_all, retract_with, walk_product, TreeField};

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::group::{Element, GroupContext, Window};

/// An acyclic, antisymmetric, loop-free edge set on a vertex window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedForest {
    pub vertices: Window,
    /// Directed edges `(v, u)`.
    pub edges: Vec<(Element, Element)>,
    adj: Vec<Vec<usize>>,
    directed: HashSet<(usize, usize)>,
}

impl DirectedForest {
    pub fn new(vertices: Window, edges: Vec<(Element, Element)>) -> Result<Self> {
        let n = vertices.len();
        let mut uf = UnionFind::<usize>::new(n);
        let mut adj = vec![Vec::new(); n];
        let mut directed = HashSet::new();
        for (v, u) in &edges {
            let (Some(i), Some(j)) = (vertices.position(v), vertices.position(u)) else {
                return Err(Error::InvalidForest(format!("edge ({v}, {u}) leaves the vertex window")));
            };
            if i == j {
                return Err(Error::InvalidForest(format!("self-loop at {v}")));
            }
            if directed.contains(&(j, i)) {
                return Err(Error::InvalidForest(format!("edge ({v}, {u}) appears in both directions")));
            }
            if !uf.union(i, j) {
                return Err(Error::InvalidForest(format!("edge ({v}, {u}) closes a cycle")));
            }
            directed.insert((i, j));
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(DirectedForest { vertices, edges, adj, directed })
    }

    pub fn empty(vertices: Window) -> Self {
        DirectedForest::new(vertices, vec![]).expect("no edges")
    }

    pub fn has_edge(&self, v: &Element, u: &Element) -> bool {
        match (self.vertices.position(v), self.vertices.position(u)) {
            (Some(i), Some(j)) => self.directed.contains(&(i, j)),
            _ => false,
        }
    }

    /// `γ^d·F = {(γv, γu)}` on `γV`.
    pub fn translate(&self, ctx: &GroupContext, g: &Element) -> DirectedForest {
        let edges = self.edges.iter().map(|(v, u)| (ctx.multiply(g, v), ctx.multiply(g, u))).collect();
        DirectedForest::new(self.vertices.translate(ctx, g), edges).expect("translation preserves forests")
    }

    /// Vertex path from `from` to `to`, found breadth-first with neighbors in window
    /// order; `None` if they lie in different components.
    pub fn path(&self, from: &Element, to: &Element) -> Option<Vec<Element>> {
        let s = self.vertices.position(from)?;
        let t = self.vertices.position(to)?;
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            if i == t {
                break;
            }
            for &j in &self.adj[i] {
                if prev[j] == usize::MAX {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        if prev[t] == usize::MAX {
            return None;
        }
        let mut out = vec![t];
        let mut cur = t;
        while cur != s {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        Some(out.into_iter().map(|i| self.vertices.get(i).clone()).collect())
    }

    /// Whether the forest is a single tree spanning its vertices.
    pub fn is_spanning_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len()
    }
}

/// A partition of a vertex window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRelation {
    /// Classes ordered by their first vertex; members in window order.
    pub classes: Vec<Vec<Element>>,
    class_of: HashMap<Element, usize>,
}

impl ComponentRelation {
    pub fn from_classes(classes: Vec<Vec<Element>>) -> Result<Self> {
        let mut class_of = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Mismatch("empty class".into()));
            }
            for g in c {
                if class_of.insert(g.clone(), i).is_some() {
                    return Err(Error::Mismatch(format!("{g} in two classes")));
                }
            }
        }
        Ok(ComponentRelation { classes, class_of })
    }

    /// The relation with a single class.
    pub fn single(w: &Window) -> Self {
        Self::from_classes(vec![w.elements().to_vec()]).expect("one class")
    }

    pub fn singletons(w: &Window) -> Self {
        Self::from_classes(w.elements().iter().map(|g| vec![g.clone()]).collect()).expect("singletons")
    }

    pub fn class_of(&self, g: &Element) -> Option<usize> {
        self.class_of.get(g).copied()
    }

    pub fn same_class(&self, g: &Element, h: &Element) -> bool {
        matches!((self.class_of(g), self.class_of(h)), (Some(a), Some(b)) if a == b)
    }

    /// `γ·E`: translate every class.
    pub fn translate(&self, ctx: &GroupContext, g: &Element) -> ComponentRelation {
        let classes = self.classes.iter().map(|c| c.iter().map(|h| ctx.multiply(g, h)).collect()).collect();
        Self::from_classes(classes).expect("translation is injective")
    }

    /// Whether this partitions exactly the elements of `w`.
    pub fn covers(&self, w: &Window) -> bool {
        self.class_of.len() == w.len() && w.elements().iter().all(|g| self.class_of.contains_key(g))
    }
}

/// Connected components of `F ∪ F̄`.
pub fn components(f: &DirectedForest) -> ComponentRelation {
    let n = f.vertices.len();
    let mut uf = UnionFind::<usize>::new(n);
    for (v, u) in &f.edges {
        uf.union(f.vertices.position(v).unwrap(), f.vertices.position(u).unwrap());
    }
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<Element>> = Vec::new();
    for i in 0..n {
        let r = uf.find(i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(f.vertices.get(i).clone());
    }
    ComponentRelation::from_classes(classes).expect("components partition")
}
