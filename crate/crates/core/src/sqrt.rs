//! Square roots in tower fields.
//!
//! Three tiers, chosen by the shape of the level being tested:
//! 1. rationals: integer square test on numerator and denominator;
//! 2. quadratic levels `K₀(√d)`: the complete denesting recursion;
//! 3. other levels: modular square root, Hensel lifting and rational
//!    reconstruction (see [`crate::modular`]), which can only err towards
//!    `NonSquare`.

use crate::error::{Error, ReducibilityWitness, Result};
use crate::modular;
use crate::rational::{qf, rational_sqrt};
use crate::tower::{Elem, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtResult {
    Sqrt(Elem),
    NonSquare,
}

impl SqrtResult {
    pub fn sqrt(self) -> Option<Elem> {
        match self {
            SqrtResult::Sqrt(s) => Some(s),
            SqrtResult::NonSquare => None,
        }
    }
}

/// Is `c` a square in the top level of `t`? `c` must be nonzero.
///
/// Towers of at least two quadratic levels are first screened modulo
/// primes, which settles most non-squares without the denesting recursion
/// and its coefficient growth.
pub fn sqrt_or_nonsquare(t: &Tower, c: &Elem) -> Result<SqrtResult> {
    let k = t.height();
    if k >= 2
        && !c.is_zero()
        && (1..=k).all(|j| t.degree_of(j) == 2)
        && modular::residue_proves_nonsquare(t, c, k)
    {
        return Ok(SqrtResult::NonSquare);
    }
    sqrt_in(t, c, k)
}

/// Is `c` a square in level `k` of `t`?
pub fn sqrt_in(t: &Tower, c: &Elem, k: usize) -> Result<SqrtResult> {
    if c.is_zero() {
        return Err(Error::SqrtOfZero);
    }
    if c.level() > k {
        return Err(Error::LevelOutOfRange {
            found: c.level(),
            height: k,
        });
    }
    if k == 0 {
        let x = c.as_rational().unwrap();
        return Ok(match rational_sqrt(x) {
            Some(s) => SqrtResult::Sqrt(Elem::Rat(s)),
            None => SqrtResult::NonSquare,
        });
    }
    let level = t.level(k);
    let d = level.degree();
    if d == 2 {
        return denest(t, c, k);
    }
    if c.level() < k && d % 2 == 1 {
        // An odd-degree extension cannot contain a new square root.
        return sqrt_in(t, c, k - 1);
    }
    modular::sqrt_general(t, c, k)
}

/// Quadratic level `θ² + pθ + q0 = 0`. With `δ = 2θ + p` and `δ² = D = p² − 4q0`,
/// `c = a + bδ` is a square iff `a² − b²D = s²` in the level below and one of
/// `(a ± s)/2` is a square there (for `b = 0`: `a` or `a/D` is a square).
fn denest(t: &Tower, c: &Elem, k: usize) -> Result<SqrtResult> {
    let m = &t.level(k).minpoly;
    let (p, q0) = (&m[1], &m[0]);
    let disc = &t.square(p) - &t.mul(&Elem::int(4), q0);
    let half = Elem::Rat(qf(1, 2));
    // δ = 2θ + p; θ = (δ − p)/2.
    let delta = &t.mul(&Elem::int(2), &t.gen(k)) + p;
    let a0 = c.coeff(k, 0);
    let a1 = c.coeff(k, 1);
    let a = &a0 - &t.mul(&t.mul(&a1, p), &half);
    let b = t.mul(&a1, &half);
    if b.is_zero() {
        if let SqrtResult::Sqrt(s) = sqrt_in(t, &a, k - 1)? {
            return Ok(SqrtResult::Sqrt(s));
        }
        let ratio = t.div(&a, &disc)?;
        if let SqrtResult::Sqrt(s) = sqrt_in(t, &ratio, k - 1)? {
            return Ok(SqrtResult::Sqrt(t.mul(&s, &delta)));
        }
        return Ok(SqrtResult::NonSquare);
    }
    let n = &t.square(&a) - &t.mul(&t.square(&b), &disc);
    if n.is_zero() {
        // a² = b²D makes D a square below, so the minimal polynomial splits
        // with root θ₀ = (r − p)/2 where r = a/b.
        let r = t.div(&a, &b)?;
        let constant = t.mul(&(p - &r), &half);
        return Err(Error::Reducible(ReducibilityWitness {
            level: k,
            factor: vec![constant, Elem::one()],
        }));
    }
    let SqrtResult::Sqrt(s) = sqrt_in(t, &n, k - 1)? else {
        return Ok(SqrtResult::NonSquare);
    };
    for sign in [1i64, -1] {
        let x2 = t.mul(&(&a + &t.mul(&Elem::int(sign), &s)), &half);
        if x2.is_zero() {
            continue;
        }
        if let SqrtResult::Sqrt(x) = sqrt_in(t, &x2, k - 1)? {
            let y = t.div(&b, &t.mul(&Elem::int(2), &x))?;
            return Ok(SqrtResult::Sqrt(&x + &t.mul(&y, &delta)));
        }
    }
    Ok(SqrtResult::NonSquare)
}
