//! From a zero of the 2-fold Pfister form ⟨1, α, β, αβ⟩ to a zero of the
//! ternary form ⟨1, α, β⟩.

use quatsplit::quaternion::{pfister_descend, QuaternionAlgebra};
use quatsplit::{Elem, Tower};

fn main() -> quatsplit::Result<()> {
    let t = Tower::rationals();
    // The norm form of (2, 7) is ⟨1, −2, −7, 14⟩.
    let q = QuaternionAlgebra::standard(&t, Elem::int(2), Elem::int(7))?;
    let pi = q.norm_form();
    let w = [Elem::int(3), Elem::int(1), Elem::int(1), Elem::zero()];
    println!("π(w) = {}", pi.evaluate(&t, &w));
    let [x, y, z] = pfister_descend(&t, &pi, &w)?;
    let value = &(&t.square(&x) + &t.mul(&pi.alpha, &t.square(&y))) + &t.mul(&pi.beta, &t.square(&z));
    println!("(x, y, z) = ({x}, {y}, {z}), ⟨1, α, β⟩ value {value}");

    // An anisotropic vector is rejected.
    let w = [Elem::one(), Elem::one(), Elem::zero(), Elem::one()];
    println!("non-zero vector: {:?}", pfister_descend(&t, &pi, &w).err());
    Ok(())
}
