//! A common zero of three quadratic forms in seven variables over the
//! rationals, found over a tower of at most three square roots.

use quatsplit::isotropy::isotropy_2ext;
use quatsplit::quadform::{QFSystem, QuadraticForm};
use quatsplit::verify::verify_json;
use quatsplit::{Elem, Tower};

fn diag(v: &[i64]) -> QuadraticForm {
    QuadraticForm::diagonal(&v.iter().map(|&x| Elem::int(x)).collect::<Vec<_>>()).unwrap()
}

fn main() -> quatsplit::Result<()> {
    let system = QFSystem::new(vec![
        diag(&[1, 1, 1, 1, 1, 1, 1]),
        diag(&[1, -2, 3, -4, 5, -6, 7]),
        diag(&[2, 0, -1, 0, 3, 0, -5]),
    ])?;
    let cert = isotropy_2ext(&Tower::rationals(), &system)?;
    let t = &cert.tower;
    println!("adjoined levels:");
    for (k, level) in t.levels().iter().enumerate() {
        let m = &level.minpoly;
        println!(
            "  {} : {}^2 + ({})*{} + ({})",
            level.label, level.label, m[1], level.label, m[0]
        );
        assert_eq!(m.len(), 3, "level {} is quadratic", k + 1);
    }
    println!("witness:");
    for x in &cert.witness {
        println!("  {x}");
    }
    println!(
        "form values: {:?}",
        cert.system
            .evaluate(t, &cert.witness)?
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
    );
    println!("degree {} <= bound {}", cert.actual_degree, cert.claimed_bound);
    let report = verify_json(&cert.to_json())?;
    println!("independent check: {} ({})", report.passed, report.detail);
    Ok(())
}
