//! Monotone couplings, class-wise re-randomization and forest transports of a family
//! of window measures on Z.

use ergoforge::action::WindowMeasure;
use ergoforge::coupling::{forest_measure, monotone_coupling, rerandomize, WindowMeasureFamily};
use ergoforge::group::{cayley_ball, GroupContext};
use ergoforge::rational::{fmt_q, q};
use ergoforge::tree::{components, DirectedForest};

fn show(label: &str, m: &WindowMeasure) {
    println!("{label}:");
    for (z, w) in m.atoms() {
        println!("  {z:?}  {}", fmt_q(w));
    }
}

fn main() -> ergoforge::Result<()> {
    let z = GroupContext::free_abelian(1);
    let w = cayley_ball(&z, &z.symmetric_generators(), 1);
    let k0 = WindowMeasure::from_pairs(w.clone(), 2, [(vec![0, 0, 1], q(1, 2)), (vec![1, 1, 0], q(1, 2))])?;
    let k1 = WindowMeasure::from_pairs(w.clone(), 2, [(vec![0, 1, 1], q(1, 4)), (vec![1, 0, 0], q(3, 4))])?;
    let c = monotone_coupling(&k1, &k0)?;
    println!("monotone coupling:");
    for ((a, b), m) in &c.joint {
        println!("  {a:?} -> {b:?}  {}", fmt_q(m));
    }

    let e = z.identity();
    let edge = DirectedForest::new(w.clone(), vec![(w.get(1).clone(), e)])?;
    show("re-randomized across the edge classes", &rerandomize(&k0, &components(&edge))?);

    // a family that is not shift-coherent: members alternate between k0 and k1
    let members = w.elements().iter().enumerate().map(|(i, g)| {
        let m = if i % 2 == 0 { &k0 } else { &k1 };
        (g.clone(), m.atoms().clone())
    });
    let om = WindowMeasureFamily::new(&z, w.clone(), 2, members)?;
    println!("shift-coherent: {}", om.is_shift_coherent());
    let tree = DirectedForest::new(w.clone(), vec![(w.get(1).clone(), w.get(0).clone()), (w.get(0).clone(), w.get(2).clone())])?;
    show("forest measure along the path -1 <- 0 -> 1", &forest_measure(&z, &om, &tree)?);
    Ok(())
}
