//! Exact arithmetic in towers of number fields, square roots, and dynamic
//! evaluation over an input that turns out not to be a field.

use quatsplit::dynamic;
use quatsplit::sqrt::{sqrt_or_nonsquare, SqrtResult};
use quatsplit::{Elem, Tower};

fn main() -> quatsplit::Result<()> {
    // Q(√2)(√(1 + √2)).
    let t = Tower::from_int_minpolys(&[&[-2, 0, 1]])?;
    let t = t.adjoin_sqrt("b", &(&Elem::one() + &t.gen(1)))?;
    let b = t.gen(2);
    let x = &(&b + &t.gen(1)) + &Elem::frac(1, 2);
    let y = t.inv(&x)?;
    println!("x = {x}\n1/x = {y}\nx * (1/x) = {}", t.mul(&x, &y));

    // (1 + √2)² = 3 + 2√2 is a square; 3 is not.
    for c in [&Elem::int(3) + &t.mul(&Elem::int(2), &t.gen(1)), Elem::int(3)] {
        match sqrt_or_nonsquare(&t, &c)? {
            SqrtResult::Sqrt(s) => println!("sqrt({c}) = {s}"),
            SqrtResult::NonSquare => println!("{c} is not a square"),
        }
    }

    // Q[θ]/(θ² − 4) is not a field; inverting θ − 2 exposes the factor and
    // the computation restarts over the refined tower, where θ − 2 may
    // have become zero.
    let bad = Tower::from_int_minpolys(&[&[-4, 0, 1]])?;
    let (inv, s) = dynamic::run(&bad, |s| {
        let x = &s.lift(&bad.gen(1)) - &Elem::int(2);
        if x.is_zero() {
            return Ok(None);
        }
        s.tower().inv(&x).map(Some)
    })?;
    println!(
        "refined tower height {}, θ maps to {}, 1/(θ − 2) = {inv:?}",
        s.tower().height(),
        s.lift(&bad.gen(1))
    );
    Ok(())
}
