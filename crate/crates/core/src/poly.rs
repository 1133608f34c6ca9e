//! Dense univariate polynomials over a tower level, lowest degree first.
//!
//! Polynomials are plain `Vec<Elem>` slices; the zero polynomial is empty
//! after trimming. Coefficient arithmetic goes through the owning [`Tower`].

use crate::error::Result;
use crate::tower::{Elem, Tower};

pub type Poly = Vec<Elem>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(Elem::is_zero) {
        p.pop();
    }
}

pub fn is_zero(p: &[Elem]) -> bool {
    p.iter().all(Elem::is_zero)
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[Elem]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Elem], b: &[Elem]) -> Poly {
    let zero = Elem::zero();
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[Elem], b: &[Elem]) -> Poly {
    let zero = Elem::zero();
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub fn scale(t: &Tower, p: &[Elem], s: &Elem) -> Poly {
    let mut out: Poly = p.iter().map(|c| t.mul(c, s)).collect();
    trim(&mut out);
    out
}

pub fn mul(t: &Tower, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &t.mul(x, y);
            }
        }
    }
    trim(&mut out);
    out
}

/// Remainder modulo a monic polynomial, in place.
pub fn rem_monic(t: &Tower, p: &mut Poly, m: &[Elem]) {
    let d = m.len() - 1;
    while p.len() > d {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = p.len() - d;
        for (i, mi) in m[..d].iter().enumerate() {
            if !mi.is_zero() {
                p[shift + i] = &p[shift + i] - &t.mul(&top, mi);
            }
        }
    }
    trim(p);
}

pub fn divrem(t: &Tower, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly)> {
    let db = degree(b).ok_or(crate::error::Error::ZeroInverse)?;
    let lc_inv = t.inv(&b[db])?;
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let mut quot = vec![Elem::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = t.mul(&r[r.len() - 1], &lc_inv);
        for (i, bi) in b[..=db].iter().enumerate() {
            if !bi.is_zero() {
                r[k + i] = &r[k + i] - &t.mul(&c, bi);
            }
        }
        quot[k] = c;
        // The leading term cancels exactly.
        r.pop();
        trim(&mut r);
    }
    trim(&mut quot);
    Ok((quot, r))
}

pub fn monic(t: &Tower, p: &[Elem]) -> Result<Poly> {
    let mut p = p.to_vec();
    trim(&mut p);
    match p.last() {
        None => Ok(p),
        Some(lc) if lc.is_one() => Ok(p),
        Some(lc) => {
            let inv = t.inv(lc)?;
            Ok(scale(t, &p, &inv))
        }
    }
}

/// Extended Euclid: returns monic `g = gcd(a, b)` and `s, u` with `s·a + u·b = g`.
pub fn ext_gcd(t: &Tower, a: &[Elem], b: &[Elem]) -> Result<(Poly, Poly, Poly)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Elem::one()], Vec::new());
    let (mut u0, mut u1) = (Vec::new(), vec![Elem::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(t, &r0, &r1)?;
        let s2 = sub(&s0, &mul(t, &q, &s1));
        let u2 = sub(&u0, &mul(t, &q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    let Some(lc) = r0.last().cloned() else {
        return Ok((r0, s0, u0));
    };
    let inv = t.inv(&lc)?;
    Ok((scale(t, &r0, &inv), scale(t, &s0, &inv), scale(t, &u0, &inv)))
}

pub fn derivative(p: &[Elem]) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale_q(&crate::rational::q(i as i64)))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(t: &Tower, p: &[Elem], x: &Elem) -> Elem {
    p.iter().rev().fold(Elem::zero(), |acc, c| &t.mul(&acc, x) + c)
}
