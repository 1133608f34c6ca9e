//! Quaternion algebras over Q: local symbols, the split/division decision,
//! and explicit zeros of the norm form for split algebras.

use quatsplit::hilbert::{hilbert_symbol_q, local_symbol, norm_zero_search, relevant_places, Place};
use quatsplit::rational::{q, squarefree_class};

fn main() {
    for (u, v) in [(-1, -1), (2, 7), (2, 5), (-2, -5), (3, -7), (6, 10)] {
        let (u, v) = (q(u), q(v));
        let (a, b) = (squarefree_class(&u), squarefree_class(&v));
        let symbols: Vec<String> = relevant_places(&u, &v)
            .iter()
            .map(|p| {
                let name = match p {
                    Place::Infinite => "inf".to_string(),
                    Place::Prime(p) => p.to_string(),
                };
                format!("{name}:{}", local_symbol(&a, &b, p))
            })
            .collect();
        let kind = hilbert_symbol_q(&u, &v);
        print!("({u}, {v}) {kind:?}  [{}]", symbols.join(" "));
        if let Some([x, y, z, _]) = norm_zero_search(&u, &v) {
            print!("  {x}^2 - ({u})({y})^2 - ({v})({z})^2 = 0");
        }
        println!();
    }
}
