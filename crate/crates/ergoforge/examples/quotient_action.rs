//! Balls in free and free abelian groups, and the action of F2 on the cosets of a
//! finite-index subgroup.

use ergoforge::finite_group::FiniteGroupTable;
use ergoforge::group::{cayley_ball, coset_cocycle, finite_quotient_action, GroupContext, Membership, QuotientData};

fn main() -> ergoforge::Result<()> {
    let f2 = GroupContext::free(2);
    for r in 0..=3 {
        let b = cayley_ball(&f2, &f2.symmetric_generators(), r);
        println!("F2 ball of radius {r}: {} elements", b.len());
    }
    let z2 = GroupContext::free_abelian(2);
    println!("Z^2 ball of radius 2: {} elements", cayley_ball(&z2, &z2.symmetric_generators(), 2).len());

    // kernel of F2 → Z/3 sending a ↦ 1, b ↦ 2
    let m = Membership::Hom { target: FiniteGroupTable::cyclic(3), images: vec![1, 2], subgroup: vec![0] };
    let a = f2.generator(0);
    let q = QuotientData::new(&f2, m, vec![f2.identity(), a.clone(), f2.power(0, 2)])?;
    let act = finite_quotient_action(&f2, &q)?;
    for (i, p) in act.gens.iter().enumerate() {
        println!("generator {} permutes cosets as {:?}", f2.names[i], p.0);
    }
    let g = f2.parse_word("b a b")?;
    for i in 0..q.index() {
        println!("cocycle of {} at coset {i}: {}", f2.format(&g), f2.format(&coset_cocycle(&f2, &q, &g, i)?));
    }
    Ok(())
}
