//! Corestriction commutes with base change: for K = Q(√2) and L = Q(√3),
//! cor_{K/Q}(A) ⊗ L maps isomorphically onto cor_{KL/L}(A ⊗ KL).

use quatsplit::algebra::Algebra;
use quatsplit::corestriction::base_change_embedding_check;
use quatsplit::cyclic::CyclicExtension;
use quatsplit::quaternion::QuaternionAlgebra;
use quatsplit::{Elem, Error};

fn main() -> quatsplit::Result<()> {
    let c = CyclicExtension::quadratic(2)?;
    let t = c.tower();
    let sqrt3 = [Elem::int(-3), Elem::zero(), Elem::one()];
    for (name, a) in [
        ("M2(K)", Algebra::matrix_units_2(t)),
        (
            "(−1, √2)",
            Algebra::quaternion(&QuaternionAlgebra::standard(t, Elem::int(-1), t.gen(1))?),
        ),
    ] {
        let rep = base_change_embedding_check(&a, &c, &sqrt3)?;
        println!(
            "{name}: rank {} of {}, multiplicative {}, unital {}",
            rep.rank, rep.dim, rep.multiplicative, rep.unital
        );
    }
    // L = Q(√8) = K is rejected.
    let same = [Elem::int(-8), Elem::zero(), Elem::one()];
    match base_change_embedding_check(&Algebra::matrix_units_2(t), &c, &same) {
        Err(Error::NotDisjoint(why)) => println!("L = Q(√8) rejected: {why}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
