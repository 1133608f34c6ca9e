//! Split quaternion algebras over fields of degree 3 and 7 by towers of
//! square roots over the rationals, and check the certificates.

use quatsplit::quaternion::QuaternionAlgebra;
use quatsplit::split::{split_over_2ext, KChain};
use quatsplit::verify::verify_json;
use quatsplit::{random, Elem, Tower};

fn main() -> quatsplit::Result<()> {
    // α = 2cos(2π/7): α³ + α² − 2α − 1 = 0.
    let cubic = Tower::from_int_minpolys(&[&[-1, -2, 1, 1]])?;
    let a = cubic.gen(1);
    let q = QuaternionAlgebra::standard(&cubic, Elem::int(-1), a.clone())?;
    let cert = split_over_2ext(&q, &KChain::default())?;
    println!("(−1, α) over the cyclic cubic field");
    println!("  [F':Q] = {} <= {}", cert.degree_over_f, cert.claimed_bound);
    println!(
        "  witness in 1, I, J, IJ: {:?}",
        cert.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    println!("  certificate passes: {}", verify_json(&cert.to_json())?.passed);

    // Degree 7 takes the route through ⟨1, α, g(α)⟩.
    let septic = Tower::from_int_minpolys(&[&[-1, -1, 0, 0, 0, 0, 0, 1]])?;
    let mut rng = random::rng(2024);
    for _ in 0..3 {
        let q = random::quaternion(&mut rng, &septic, 3);
        let (u, v) = q.standard_uv();
        let cert = split_over_2ext(&q, &KChain::default())?;
        let ok = verify_json(&cert.to_json())?.passed;
        println!(
            "({u}, {v}) over Q[x]/(x^7 - x - 1): degree {} <= {}, verified {ok}",
            cert.degree_over_f, cert.claimed_bound
        );
    }
    Ok(())
}
