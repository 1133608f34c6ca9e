//! Corestrictions along Q(√2)/Q and the cyclic cubic field: dimensions,
//! the central simple check, and an explicit idempotent for M₂(K).

use quatsplit::algebra::Algebra;
use quatsplit::corestriction::{
    central_simple_check, corestriction, is_proper_idempotent, split_idempotent_witness,
};
use quatsplit::cyclic::CyclicExtension;
use quatsplit::quaternion::QuaternionAlgebra;
use quatsplit::Elem;

fn main() -> quatsplit::Result<()> {
    for c in [CyclicExtension::quadratic(2)?, CyclicExtension::cyclic_cubic()?] {
        let t = c.tower().clone();
        println!(
            "K = Q[x]/({:?}), [K:Q] = {}",
            t.level(1)
                .minpoly
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>(),
            c.order()
        );

        let m2 = Algebra::matrix_units_2(&t);
        let (cor, e) = split_idempotent_witness(&m2, &c)?;
        let csa = central_simple_check(&cor.algebra)?;
        println!(
            "  cor M2(K): dim {}, center dim {}, trace form rank {}",
            cor.dim(),
            csa.center_dim,
            csa.trace_form_rank
        );
        println!(
            "  E11 ⊗ ... ⊗ E11 is a proper idempotent: {}",
            is_proper_idempotent(&cor.algebra, &e)
        );

        let q = QuaternionAlgebra::standard(&t, Elem::int(-1), -&t.gen(1))?;
        let cor = corestriction(&Algebra::quaternion(&q), &c)?;
        let csa = central_simple_check(&cor.algebra)?;
        println!(
            "  cor (−1, −θ): dim {}, central simple: {}",
            cor.dim(),
            csa.is_central_simple()
        );
    }
    Ok(())
}
