//! Isotropy of `⟨1, X, g(X)⟩` for `deg g ≤ 2`, uniformly in `X`.
//!
//! Over `F' = F(√−a, √c, √(b − 2√c))` the identity
//! `−a(X² + bX + c) = (√−a)²((X + √c)² + (b − 2√c)X)` gives a zero
//! `(x(X), y(X), z)` of `x² + X·y² + g(X)·z²` that is polynomial in `X`, so
//! substituting any `α` yields a zero of `⟨1, α, g(α)⟩`. Lower degrees need
//! fewer roots. Roots that already exist are not adjoined.

use crate::dynamic::{self, Session};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::tower::{Elem, Tower};

/// A zero of `x² + X·y² + g(X)·z²` with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotWitness {
    pub x: Poly,
    pub y: Poly,
    pub z: Poly,
}

impl SlotWitness {
    /// `x² + X·y² + g·z²`, which is the zero polynomial for a valid witness.
    pub fn residual(&self, t: &Tower, g: &[Elem]) -> Poly {
        let xx = poly::mul(t, &self.x, &self.x);
        let xyy = poly::mul(t, &[Elem::zero(), Elem::one()], &poly::mul(t, &self.y, &self.y));
        let gzz = poly::mul(t, g, &poly::mul(t, &self.z, &self.z));
        poly::add(&poly::add(&xx, &xyy), &gzz)
    }

    pub fn evaluate(&self, t: &Tower, alpha: &Elem) -> [Elem; 3] {
        [
            poly::eval(t, &self.x, alpha),
            poly::eval(t, &self.y, alpha),
            poly::eval(t, &self.z, alpha),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct SlotSplit {
    pub tower: Tower,
    pub base_levels: usize,
    pub witness: SlotWitness,
}

impl SlotSplit {
    pub fn degree(&self) -> usize {
        self.tower.degree_between(self.base_levels, self.tower.height())
    }
}

/// Build the extension and witness for `g` with coefficients in `t`
/// (lowest degree first, degree at most 2, not the zero polynomial).
pub fn quadratic_slot_split(t: &Tower, g: &[Elem]) -> Result<SlotSplit> {
    let (witness, s) = dynamic::run(t, |s| {
        let g: Vec<Elem> = g.iter().map(|c| s.lift(c)).collect();
        slot_witness(s, &g)
    })?;
    let g: Vec<Elem> = g.iter().map(|c| s.lift(c)).collect();
    debug_assert!(witness.residual(s.tower(), &g).is_empty());
    Ok(SlotSplit {
        tower: s.tower().clone(),
        base_levels: s.base_height(),
        witness,
    })
}

pub(crate) fn slot_witness(s: &mut Session, g: &[Elem]) -> Result<SlotWitness> {
    let c = |x: Elem| vec![x];
    match poly::degree(g) {
        None => Err(Error::SlotVanishes),
        Some(0) => {
            let t0 = s.sqrt(&-&g[0])?;
            Ok(SlotWitness {
                x: c(t0),
                y: vec![],
                z: c(Elem::one()),
            })
        }
        Some(1) => {
            let t = s.tower().clone();
            let a = g[1].clone();
            let b = t.div(&g[0], &a)?;
            let ra = s.sqrt(&-&a)?;
            let rb = s.sqrt(&b)?;
            let t = s.tower().clone();
            Ok(SlotWitness {
                x: trimmed(vec![t.mul(&ra, &rb)]),
                y: c(ra),
                z: c(Elem::one()),
            })
        }
        Some(2) => {
            let t = s.tower().clone();
            let a = g[2].clone();
            let inv = t.inv(&a)?;
            let b = t.mul(&g[1], &inv);
            let cc = t.mul(&g[0], &inv);
            let ra = s.sqrt(&-&a)?;
            let rc = s.sqrt(&cc)?;
            let t = s.tower().clone();
            let inner = &b - &t.mul(&Elem::int(2), &rc);
            let rbc = s.sqrt(&inner)?;
            let t = s.tower().clone();
            Ok(SlotWitness {
                x: trimmed(vec![t.mul(&ra, &rc), ra.clone()]),
                y: trimmed(vec![t.mul(&ra, &rbc)]),
                z: c(Elem::one()),
            })
        }
        Some(d) => Err(Error::Precondition(format!(
            "g has degree {d}, at most 2 allowed"
        ))),
    }
}

fn trimmed(mut p: Poly) -> Poly {
    poly::trim(&mut p);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| Elem::int(x)).collect()
    }

    #[test]
    fn constant_slot() {
        let s = quadratic_slot_split(&Tower::rationals(), &ints(&[1])).unwrap();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.tower.square(&s.witness.x[0]), Elem::int(-1));
        assert_eq!(s.witness.z, ints(&[1]));
    }

    #[test]
    fn linear_slot() {
        let g = ints(&[0, 1]);
        let s = quadratic_slot_split(&Tower::rationals(), &g).unwrap();
        assert_eq!(s.degree(), 2);
        assert!(s.witness.x.is_empty());
        assert_eq!(s.tower.square(&s.witness.y[0]), Elem::int(-1));
        assert!(s.witness.residual(&s.tower, &g).is_empty());
    }

    #[test]
    fn quadratic_slot() {
        let g = ints(&[1, 0, 1]);
        let s = quadratic_slot_split(&Tower::rationals(), &g).unwrap();
        assert_eq!(s.degree(), 4);
        assert!(s.witness.residual(&s.tower, &g).is_empty());
        // x = i(X + 1), y = i·√−2.
        let i = &s.witness.x[1];
        assert_eq!(s.tower.square(i), Elem::int(-1));
        assert_eq!(s.witness.x[0], *i);
        assert_eq!(s.tower.square(&s.witness.y[0]), Elem::int(2));
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            quadratic_slot_split(&Tower::rationals(), &ints(&[0, 0])),
            Err(Error::SlotVanishes)
        ));
    }
}
