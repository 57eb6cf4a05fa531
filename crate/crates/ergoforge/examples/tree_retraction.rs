//! Retracting an arbitrary window cochain onto a cocycle along a spanning tree.

use ergoforge::cocycle::WindowCochain;
use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{cayley_ball, GroupContext};
use ergoforge::rng::seeded;
use ergoforge::tree::{components, retract_all, DirectedForest};
use rand::Rng;

fn main() -> ergoforge::Result<()> {
    let f2 = GroupContext::free(2);
    let v = cayley_ball(&f2, &f2.symmetric_generators(), 1);
    let e = f2.identity();
    let star: Vec<_> = v.elements()[1..].iter().map(|g| (g.clone(), e.clone())).collect();
    let t = DirectedForest::new(v.clone(), star)?;
    println!("star on {} vertices, {} component(s)", v.len(), components(&t).classes.len());

    let s3 = FiniteGroupTable::symmetric(3);
    let mut rng = seeded(7);
    let mut c = WindowCochain::new(s3.clone());
    for u in v.elements() {
        for w in v.elements() {
            c.insert(f2.left_div(u, w), u.clone(), rng.gen_range(0..6));
        }
    }
    let r = retract_all(&f2, &t, &c)?;
    let kept = t.edges.iter().filter(|(x, y)| r.get(&f2.left_div(y, x), y) == c.get(&f2.left_div(y, x), y)).count();
    let changed = r.values.iter().filter(|(k, v)| c.values.get(*k) != Some(*v)).count();
    println!("edge labels kept: {kept} of {}; values changed elsewhere: {changed} of {}", t.edges.len(), r.values.len());
    let again = retract_all(&f2, &t, &r)?;
    println!("retracting twice changes nothing: {}", again == r);
    for g in &v.elements()[1..3] {
        println!("  r(c)({})(e) = {}", f2.format(g), r.get(g, &e).unwrap());
    }
    Ok(())
}
