//! Quaternion algebras over the rationals: Hilbert symbols and small zeros
//! of the norm form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{int_sqrt, squarefree_class, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Division,
}

/// A place of the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Infinite,
    Prime(BigInt),
}

/// `(u, v)_p ∈ {1, −1}` for nonzero integers.
pub fn local_symbol(u: &BigInt, v: &BigInt, place: &Place) -> i32 {
    match place {
        Place::Infinite => {
            if u.is_negative() && v.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let (a, ua) = split_power(u, p);
            let (b, ub) = split_power(v, p);
            if *p == BigInt::from(2) {
                let eps = |x: &BigInt| mod_small(&((x - 1) / 2), 2);
                let omega = |x: &BigInt| mod_small(&((x * x - 1) / 8), 2);
                let e = eps(&ua) * eps(&ub) + a * omega(&ub) + b * omega(&ua);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let eps_p = mod_small(&((p - 1) / 2), 2);
                let mut s = if (a * b * eps_p) % 2 == 0 { 1 } else { -1 };
                if b % 2 == 1 {
                    s *= legendre(&ua, p);
                }
                if a % 2 == 1 {
                    s *= legendre(&ub, p);
                }
                s
            }
        }
    }
}

fn mod_small(x: &BigInt, m: i64) -> i64 {
    x.mod_floor(&BigInt::from(m)).to_i64().unwrap()
}

/// `x = p^e · rest` with `p ∤ rest`.
fn split_power(x: &BigInt, p: &BigInt) -> (i64, BigInt) {
    let mut e = 0;
    let mut r = x.clone();
    while (&r % p).is_zero() {
        r /= p;
        e += 1;
    }
    (e, r)
}

fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1) / 2;
    let r = a.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            out.push(p.clone());
            while (&m % &p).is_zero() {
                m /= &p;
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// Places at which `(u, v)` can ramify: infinity, 2, and the odd primes
/// dividing the square-free representatives.
pub fn relevant_places(u: &Q, v: &Q) -> Vec<Place> {
    let (a, b) = (squarefree_class(u), squarefree_class(v));
    let mut primes = prime_factors(&(&a * &b));
    if !primes.contains(&BigInt::from(2)) {
        primes.push(BigInt::from(2));
    }
    primes.sort();
    std::iter::once(Place::Infinite)
        .chain(primes.into_iter().map(Place::Prime))
        .collect()
}

/// Is the quaternion algebra `(u, v)` over the rationals split?
///
/// Checks every local symbol; the product formula is asserted as a
/// consistency check on the local computations.
pub fn hilbert_symbol_q(u: &Q, v: &Q) -> Splitting {
    assert!(!u.is_zero() && !v.is_zero(), "Hilbert symbol of zero");
    let (a, b) = (squarefree_class(u), squarefree_class(v));
    let symbols: Vec<i32> = relevant_places(u, v)
        .iter()
        .map(|p| local_symbol(&a, &b, p))
        .collect();
    assert_eq!(
        symbols.iter().product::<i32>(),
        1,
        "product formula violated for ({u}, {v})"
    );
    if symbols.iter().all(|&s| s == 1) {
        Splitting::Split
    } else {
        Splitting::Division
    }
}

/// A rational zero `(x, y, z, 0)` of `⟨1, −u, −v, uv⟩`, if one exists.
///
/// Reduces to `X² = aY² + bZ²` for the square-free classes `a`, `b`, and
/// searches `|Y| ≤ √|b|`, `|Z| ≤ √|a|`, which by Holzer's bound contains a
/// solution whenever the conic has a rational point.
pub fn norm_zero_search(u: &Q, v: &Q) -> Option<[Q; 4]> {
    let (a, b) = (squarefree_class(u), squarefree_class(v));
    // u = a·s², v = b·t².
    let s = crate::rational::rational_sqrt(&(u / Q::from_integer(a.clone())))?;
    let t = crate::rational::rational_sqrt(&(v / Q::from_integer(b.clone())))?;
    let ymax = b.abs().sqrt();
    let zmax = a.abs().sqrt();
    let mut y = BigInt::zero();
    while y <= ymax {
        let mut z = BigInt::zero();
        while z <= zmax {
            if !(y.is_zero() && z.is_zero()) {
                let rhs = &a * &y * &y + &b * &z * &z;
                if let Some(x) = int_sqrt(&rhs) {
                    let q = |n: &BigInt| Q::from_integer(n.clone());
                    return Some([q(&x), q(&y) / &s, q(&z) / &t, Q::zero()]);
                }
            }
            z += 1;
        }
        y += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn classic_symbols() {
        assert_eq!(hilbert_symbol_q(&q(-1), &q(-1)), Splitting::Division);
        assert_eq!(hilbert_symbol_q(&q(1), &q(-7)), Splitting::Split);
        assert_eq!(hilbert_symbol_q(&q(2), &q(7)), Splitting::Split);
        assert_eq!(hilbert_symbol_q(&q(-1), &q(3)), Splitting::Division);
        assert_eq!(hilbert_symbol_q(&q(-1), &q(5)), Splitting::Split);
        assert_eq!(hilbert_symbol_q(&q(2), &q(5)), Splitting::Division);
        assert_eq!(
            hilbert_symbol_q(&qf(3, 4), &qf(-7, 9)),
            hilbert_symbol_q(&q(3), &q(-7))
        );
    }

    #[test]
    fn search_agrees_with_symbol() {
        for u in -12i64..=12 {
            for v in -12i64..=12 {
                if u == 0 || v == 0 {
                    continue;
                }
                let (u, v) = (q(u), q(v));
                let found = norm_zero_search(&u, &v);
                assert_eq!(
                    found.is_some(),
                    hilbert_symbol_q(&u, &v) == Splitting::Split,
                    "({u},{v})"
                );
                if let Some([x, y, z, _]) = found {
                    assert!((&x * &x - &u * &y * &y - &v * &z * &z).is_zero());
                }
            }
        }
    }

    #[test]
    fn two_seven_solution() {
        let [x, y, z, _] = norm_zero_search(&q(2), &q(7)).unwrap();
        assert_eq!(&x * &x, q(2) * &y * &y + q(7) * &z * &z);
    }
}
