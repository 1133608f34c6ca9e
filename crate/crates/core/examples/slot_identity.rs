//! ⟨1, X, g(X)⟩ for quadratic g has a zero with polynomial entries over a
//! fixed tower, so one extension works for every value of X.

use quatsplit::poly;
use quatsplit::slot::quadratic_slot_split;
use quatsplit::{Elem, Tower};

fn show(p: &[Elem]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})X^{i}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> quatsplit::Result<()> {
    for g in [vec![3], vec![2, 5], vec![1, 0, 1], vec![-3, 1, 2]] {
        let g: Vec<Elem> = g.into_iter().map(Elem::int).collect();
        let s = quadratic_slot_split(&Tower::rationals(), &g)?;
        let w = &s.witness;
        println!("g = {}: degree {}", show(&g), s.degree());
        println!("  x = {}\n  y = {}\n  z = {}", show(&w.x), show(&w.y), show(&w.z));
        println!("  x^2 + X y^2 + g z^2 = {}", show(&w.residual(&s.tower, &g)));
        let at = Elem::frac(7, 3);
        let [x, y, z] = w.evaluate(&s.tower, &at);
        let gv = poly::eval(&s.tower, &g, &at);
        let t = &s.tower;
        let val = &(&t.square(&x) + &t.mul(&at, &t.square(&y))) + &t.mul(&gv, &t.square(&z));
        println!("  at X = 7/3 the form value is {val}");
    }
    Ok(())
}
