//! Seeded random instances for the integration suites.

use std::collections::BTreeMap;

use ergoforge::action::{FiniteAction, FiniteProbSpace, WindowMeasure};
use ergoforge::group::{GroupContext, Window};
use ergoforge::perm::Perm;
use ergoforge::rational::{q, Q};
use ergoforge::rng::{seeded, Rng};
use ergoforge::tree::DirectedForest;
use rand::seq::SliceRandom;
use rand::Rng as _;

pub fn rng(seed: u64) -> Rng {
    seeded(seed)
}

/// Positive integer weights normalized to a probability vector.
pub fn weights(r: &mut Rng, n: usize) -> Vec<Q> {
    let raw: Vec<i64> = (0..n).map(|_| r.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.iter().map(|&w| q(w, total)).collect()
}

pub fn perm(r: &mut Rng, n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(r);
    Perm(v)
}

fn orbit_ids(gens: &[Perm], n: usize) -> Vec<usize> {
    let mut id: Vec<usize> = (0..n).collect();
    fn find(id: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while id[x] != x {
            id[x] = id[id[x]];
            x = id[x];
        }
        x
    }
    for p in gens {
        for x in 0..n {
            let (a, b) = (find(&mut id, x), find(&mut id, p.apply(x)));
            id[a] = b;
        }
    }
    (0..n).map(|x| find(&mut id, x)).collect()
}

/// Random permutations with random weights constant on orbits. For a free abelian
/// context only rank 1 is supported.
pub fn action(r: &mut Rng, ctx: &GroupContext, n: usize) -> FiniteAction {
    let gens: Vec<Perm> = (0..ctx.rank()).map(|_| perm(r, n)).collect();
    let ids = orbit_ids(&gens, n);
    let mut orbit_w: BTreeMap<usize, i64> = BTreeMap::new();
    for &i in &ids {
        orbit_w.entry(i).or_insert_with(|| r.gen_range(1..=5));
    }
    let total: i64 = ids.iter().map(|i| orbit_w[i]).sum();
    let ws = ids.iter().map(|i| q(orbit_w[i], total)).collect();
    FiniteAction::new(ctx.clone(), FiniteProbSpace::new(ws).unwrap(), gens).unwrap()
}

pub fn config(r: &mut Rng, len: usize, alphabet: usize) -> Vec<u8> {
    (0..len).map(|_| r.gen_range(0..alphabet) as u8).collect()
}

/// A measure with at most `max_atoms` atoms.
pub fn measure(r: &mut Rng, w: &Window, alphabet: usize, max_atoms: usize) -> WindowMeasure {
    let k = r.gen_range(1..=max_atoms);
    let ws = weights(r, k);
    let mut atoms: BTreeMap<Vec<u8>, Q> = BTreeMap::new();
    for wt in ws {
        *atoms.entry(config(r, w.len(), alphabet)).or_insert_with(|| q(0, 1)) += wt;
    }
    WindowMeasure::new(w.clone(), alphabet, atoms).unwrap()
}

/// Each vertex after the first (in shuffled order) joins a random earlier vertex with
/// probability `p`, in a random direction.
pub fn forest(r: &mut Rng, v: &Window, p: f64) -> DirectedForest {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.shuffle(r);
    let mut edges = Vec::new();
    for i in 1..order.len() {
        if r.gen_bool(p) {
            let j = order[r.gen_range(0..i)];
            let (x, y) = (v.get(order[i]).clone(), v.get(j).clone());
            edges.push(if r.gen_bool(0.5) { (x, y) } else { (y, x) });
        }
    }
    DirectedForest::new(v.clone(), edges).unwrap()
}
