mod common;

use common::gen;
use ergoforge::cocycle::WindowCochain;
use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{cayley_ball, Element, GroupContext, Window};
use ergoforge::rng::Rng;
use ergoforge::tree::{components, lifted_retraction, retract, retract_all, walk_product, DirectedForest, TreeField};
use ergoforge::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng as _;

fn ball(ctx: &GroupContext, r: usize) -> Window {
    cayley_ball(ctx, &ctx.symmetric_generators(), r)
}

/// Random values on every pair `(u^{-1}w, αu)` for `α` in `shifts` and `u, w` in `v`.
fn random_cochain(r: &mut Rng, ctx: &GroupContext, k: &FiniteGroupTable, v: &Window, shifts: &[Element]) -> WindowCochain {
    let mut c = WindowCochain::new(k.clone());
    for al in shifts {
        for u in v.elements() {
            for w in v.elements() {
                c.insert(ctx.left_div(u, w), ctx.multiply(al, u), r.gen_range(0..k.order()));
            }
        }
    }
    c
}

#[test]
fn two_disjoint_edges_make_two_classes() {
    let f2 = GroupContext::free(2);
    let (e, a, b) = (f2.identity(), f2.generator(0), f2.generator(1));
    let ab = f2.multiply(&a, &b);
    let w = Window::new(vec![e.clone(), a.clone(), b.clone(), ab.clone()]).unwrap();
    let t = DirectedForest::new(w, vec![(a.clone(), e.clone()), (ab.clone(), b.clone())]).unwrap();
    let rel = components(&t);
    assert_eq!(rel.classes.len(), 2);
    assert!(rel.same_class(&a, &e) && rel.same_class(&ab, &b));
    assert!(!rel.same_class(&e, &b));
    assert!(!t.is_spanning_tree());
}

#[test]
fn forest_rejects_cycles_and_loops() {
    let f2 = GroupContext::free(2);
    let (e, a, b) = (f2.identity(), f2.generator(0), f2.generator(1));
    let w = Window::new(vec![e.clone(), a.clone(), b.clone()]).unwrap();
    let cyc = vec![(a.clone(), e.clone()), (b.clone(), a.clone()), (e.clone(), b.clone())];
    assert!(matches!(DirectedForest::new(w.clone(), cyc), Err(Error::InvalidForest(_))));
    assert!(matches!(DirectedForest::new(w.clone(), vec![(a.clone(), a.clone())]), Err(Error::InvalidForest(_))));
    assert!(matches!(DirectedForest::new(w, vec![(a.clone(), e.clone()), (e, a)]), Err(Error::InvalidForest(_))));
}

#[test]
fn reversed_edge_contributes_inverse() {
    // e ← a is stored as (e, a): stepping e → a uses c(a^{-1})(a)^{-1}
    let f2 = GroupContext::free(2);
    let s3 = FiniteGroupTable::symmetric(3);
    let (e, a, b) = (f2.identity(), f2.generator(0), f2.generator(1));
    let ab = f2.multiply(&a, &b);
    let w = Window::new(vec![e.clone(), a.clone(), ab.clone()]).unwrap();
    let t = DirectedForest::new(w, vec![(e.clone(), a.clone()), (ab.clone(), a.clone())]).unwrap();
    let mut c = WindowCochain::new(s3.clone());
    let ai = f2.inverse(&a);
    c.insert(ai.clone(), a.clone(), 3);
    c.insert(b.clone(), a.clone(), 4);
    let r = retract(&f2, &t, &c, &[(ab.clone(), e.clone())]).unwrap();
    assert_eq!(r.get(&ab, &e), Some(s3.op(4, s3.inverse(3))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn walks_reduce_to_the_tree_path(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f2 = GroupContext::free(2);
        let v = ball(&f2, 2);
        let t = gen::forest(&mut r, &v, 0.7);
        let k = FiniteGroupTable::symmetric(3);
        let c = random_cochain(&mut r, &f2, &k, &v, &[f2.identity()]);
        let start = v.get(r.gen_range(0..v.len())).clone();
        let mut walk = vec![start.clone()];
        for _ in 0..r.gen_range(0..12) {
            let cur = walk.last().unwrap().clone();
            let nbrs: Vec<&Element> = t
                .edges
                .iter()
                .filter_map(|(x, y)| if *x == cur { Some(y) } else if *y == cur { Some(x) } else { None })
                .collect();
            match nbrs.choose(&mut r) {
                Some(n) => walk.push((*n).clone()),
                None => break,
            }
        }
        let end = walk.last().unwrap();
        let path = t.path(&start, end).unwrap();
        prop_assert_eq!(walk_product(&f2, &t, &c, &walk).unwrap(), walk_product(&f2, &t, &c, &path).unwrap());
        let beta = f2.left_div(&start, end);
        let rv = retract(&f2, &t, &c, &[(beta.clone(), start.clone())]).unwrap();
        prop_assert_eq!(rv.get(&beta, &start).unwrap(), walk_product(&f2, &t, &c, &walk).unwrap());
    }

    #[test]
    fn retraction_output_is_a_window_cocycle(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f2 = GroupContext::free(2);
        let v = ball(&f2, 2);
        let t = gen::forest(&mut r, &v, 0.7);
        let k = FiniteGroupTable::symmetric(3);
        let c = random_cochain(&mut r, &f2, &k, &v, &[f2.identity()]);
        let out = retract_all(&f2, &t, &c).unwrap();
        // c(β1β2)(α) = c(β2)(αβ1) · c(β1)(α) for α, αβ1, αβ1β2 in one component
        for class in &components(&t).classes {
            for al in class {
                for m in class {
                    for w in class {
                        let b1 = f2.left_div(al, m);
                        let b2 = f2.left_div(m, w);
                        let lhs = out.get(&f2.multiply(&b1, &b2), al).unwrap();
                        let rhs = k.op(out.get(&b2, m).unwrap(), out.get(&b1, al).unwrap());
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn retraction_reads_only_edge_labels(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f2 = GroupContext::free(2);
        let v = ball(&f2, 1);
        let t = gen::forest(&mut r, &v, 0.8);
        let k = FiniteGroupTable::cyclic(5);
        let c = random_cochain(&mut r, &f2, &k, &v, &[f2.identity()]);
        let labels: Vec<(Element, Element)> = t.edges.iter().map(|(x, y)| (f2.left_div(y, x), y.clone())).collect();
        let mut c2 = c.clone();
        for (key, val) in c2.values.iter_mut() {
            if !labels.contains(key) {
                *val = (*val + 1) % 5;
            }
        }
        prop_assert_eq!(retract_all(&f2, &t, &c).unwrap(), retract_all(&f2, &t, &c2).unwrap());
    }

    #[test]
    fn lifted_retraction_is_jointly_equivariant(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f2 = GroupContext::free(2);
        let v = ball(&f2, 1);
        let points: Vec<Element> = ball(&f2, 1).elements().to_vec();
        let y = TreeField { trees: points.iter().map(|p| (p.clone(), gen::forest(&mut r, &v, 1.0))).collect() };
        let k = FiniteGroupTable::symmetric(3);
        let c = random_cochain(&mut r, &f2, &k, &v, &points);
        let pairs: Vec<(Element, Element)> =
            points.iter().flat_map(|a| v.elements().iter().map(move |b| (b.clone(), a.clone()))).collect();
        let g = points[r.gen_range(0..points.len())].clone();
        let moved: Vec<(Element, Element)> = pairs.iter().map(|(b, a)| (b.clone(), f2.multiply(&g, a))).collect();
        let lhs = lifted_retraction(&f2, &y.shift(&f2, &g), &c.translate(&f2, &g), &moved).unwrap();
        let rhs = lifted_retraction(&f2, &y, &c, &pairs).unwrap().translate(&f2, &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_lift_recovers_the_retraction(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f2 = GroupContext::free(2);
        let v = ball(&f2, 2);
        let t = gen::forest(&mut r, &v, 1.0);
        let k = FiniteGroupTable::symmetric(3);
        let c = random_cochain(&mut r, &f2, &k, &v, &[f2.identity()]);
        let points = ball(&f2, 1).elements().to_vec();
        let y = TreeField::constant_lift(&f2, &t, &points);
        let pairs: Vec<(Element, Element)> = points
            .iter()
            .flat_map(|a| v.elements().iter().map(move |w| (a.clone(), w.clone())))
            .map(|(a, w)| (f2.left_div(&a, &w), a))
            .collect();
        prop_assert_eq!(lifted_retraction(&f2, &y, &c, &pairs).unwrap(), retract(&f2, &t, &c, &pairs).unwrap());
    }
}
