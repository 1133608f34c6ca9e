//! Seeded generators for test inputs and batch runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quadform::{QFSystem, QuadraticForm};
use crate::quaternion::QuaternionAlgebra;
use crate::tower::{Elem, Tower};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric integer Gram matrix with entries in `[−bound, bound]`.
pub fn int_form(rng: &mut Rng64, dim: usize, bound: i64) -> QuadraticForm {
    let mut g = vec![vec![Elem::zero(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let x = Elem::int(rng.gen_range(-bound..=bound));
            g[i][j] = x.clone();
            g[j][i] = x;
        }
    }
    QuadraticForm::new(g).expect("symmetric by construction")
}

/// `r` random rational forms in `r(r+1)/2 + 1` variables.
pub fn int_system(rng: &mut Rng64, r: usize, bound: i64) -> QFSystem {
    let dim = crate::isotropy::required_dim(r);
    QFSystem::new((0..r).map(|_| int_form(rng, dim, bound)).collect()).expect("same dimension")
}

/// Element of level `k` with integer coefficients in `[−bound, bound]` on
/// every monomial of the tower up to `k`.
pub fn int_elem(rng: &mut Rng64, t: &Tower, k: usize, bound: i64) -> Elem {
    if k == 0 {
        return Elem::int(rng.gen_range(-bound..=bound));
    }
    let coeffs = (0..t.degree_of(k))
        .map(|_| int_elem(rng, t, k - 1, bound))
        .collect();
    Elem::from_coeffs(k, coeffs)
}

pub fn nonzero_elem(rng: &mut Rng64, t: &Tower, k: usize, bound: i64) -> Elem {
    loop {
        let x = int_elem(rng, t, k, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn nonzero_int(rng: &mut Rng64, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

/// `(u, v)` over the top level of `t`.
pub fn quaternion(rng: &mut Rng64, t: &Tower, bound: i64) -> QuaternionAlgebra {
    let h = t.height();
    let u = nonzero_elem(rng, t, h, bound);
    let v = nonzero_elem(rng, t, h, bound);
    QuaternionAlgebra::standard(t, u, v).expect("nonzero entries")
}

/// Polynomial of degree exactly `deg` with integer coefficients.
pub fn int_poly(rng: &mut Rng64, deg: usize, bound: i64) -> Vec<Elem> {
    let mut p: Vec<Elem> = (0..deg)
        .map(|_| Elem::int(rng.gen_range(-bound..=bound)))
        .collect();
    p.push(Elem::int(nonzero_int(rng, bound)));
    p
}
