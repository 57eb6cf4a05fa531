//! Coinducing an extension of the even integers up to Z.

use ergoforge::action::{FiniteAction, FiniteProbSpace};
use ergoforge::coinduction::{coinduce, disintegrate_weights, projection_equivariant, projection_pushforward};
use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{GroupContext, Membership, QuotientData, SubgroupAction};
use ergoforge::perm::Perm;
use ergoforge::rational::fmt_q;

fn main() -> ergoforge::Result<()> {
    let z = GroupContext::free_abelian(1);
    let x = FiniteAction::new(z.clone(), FiniteProbSpace::uniform(2), vec![Perm(vec![1, 0])])?;
    // Y = X × 2 over 2Z; a² fixes X and flips the fiber over point 1 only
    let a2 = z.power(0, 2);
    let b = SubgroupAction::generated(&z, &[a2.clone()], &[Perm(vec![0, 1, 3, 2])], 8)?;
    let nu = FiniteProbSpace::uniform(4);
    let phi = [0, 0, 1, 1];
    let d = disintegrate_weights(&nu.weights, x.weights(), &phi)?;
    println!("fibers: {:?}", d.fibers.iter().map(|f| f.iter().map(|(y, w)| format!("{y}:{}", fmt_q(w))).collect::<Vec<_>>()).collect::<Vec<_>>());

    let m = Membership::Hom { target: FiniteGroupTable::cyclic(2), images: vec![1], subgroup: vec![0] };
    let q = QuotientData::new(&z, m, vec![z.identity(), z.generator(0)])?;
    let c = coinduce(&z, &q, &b, &nu, &x, &phi)?;
    println!("coinduced space has {} atoms", c.points.len());
    for (i, t) in c.points.iter().enumerate() {
        println!("  {t:?}  mass {}  over {}", fmt_q(c.extension.source.weight(i)), c.extension.map[i]);
    }
    println!("a acts as {:?}", c.extension.source.gens[0].0);
    println!("projection equivariant: {}", projection_equivariant(&c, &b, &[a2])?);
    println!("projection pushes forward to nu: {}", projection_pushforward(&c, 4) == nu.weights);
    Ok(())
}
