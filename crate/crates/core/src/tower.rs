//! Towers of field extensions of the rationals.
//!
//! A [`Tower`] is a chain `Q = L_0 ⊂ L_1 ⊂ … ⊂ L_h`, where `L_k` is
//! `L_{k-1}[X]/(m_k)` for a monic `m_k` of degree at least two. Elements are
//! stored in a canonical nested form: an [`Elem`] lives at the lowest level
//! it needs, so equality is structural and embedding into a higher level is
//! free. Irreducibility of the `m_k` is never checked eagerly; inversion
//! reports a [`ReducibilityWitness`] when a level turns out not to be a field.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, ReducibilityWitness, Result};
use crate::poly;
use crate::rational::Q;

/// An element of some level of a tower.
///
/// `Alg { level, coeffs }` is `Σ coeffs[i]·θ_level^i` with every coefficient
/// strictly below `level`, at least two coefficients, and a nonzero last one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(Q),
    Alg { level: usize, coeffs: Vec<Elem> },
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Rat(Q::zero())
    }

    pub fn one() -> Self {
        Elem::Rat(Q::one())
    }

    pub fn int(n: i64) -> Self {
        Elem::Rat(crate::rational::q(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Elem::Rat(crate::rational::qf(n, d))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Rat(x) if x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Rat(x) if x.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Elem::Rat(x) => Some(x),
            Elem::Alg { .. } => None,
        }
    }

    /// Lowest level containing this element (0 for rationals).
    pub fn level(&self) -> usize {
        match self {
            Elem::Rat(_) => 0,
            Elem::Alg { level, .. } => *level,
        }
    }

    /// Canonicalizing constructor from a coefficient list at `level`.
    pub fn from_coeffs(level: usize, mut coeffs: Vec<Elem>) -> Elem {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Elem::zero(),
            1 => coeffs.pop().unwrap(),
            _ => {
                debug_assert!(level > 0);
                Elem::Alg { level, coeffs }
            }
        }
    }

    /// Coefficient of `θ_level^i`, viewing `self` as an element of `level`.
    pub fn coeff(&self, level: usize, i: usize) -> Elem {
        match self {
            Elem::Alg { level: l, coeffs } if *l == level => {
                coeffs.get(i).cloned().unwrap_or_else(Elem::zero)
            }
            _ if i == 0 => self.clone(),
            _ => Elem::zero(),
        }
    }

    /// Dense coefficient vector of length `degree` with respect to `level`.
    pub fn coeffs_at(&self, level: usize, degree: usize) -> Vec<Elem> {
        (0..degree).map(|i| self.coeff(level, i)).collect()
    }

    pub fn scale_q(&self, s: &Q) -> Elem {
        if s.is_zero() {
            return Elem::zero();
        }
        match self {
            Elem::Rat(x) => Elem::Rat(x * s),
            Elem::Alg { level, coeffs } => Elem::Alg {
                level: *level,
                coeffs: coeffs.iter().map(|c| c.scale_q(s)).collect(),
            },
        }
    }

    /// Relabel levels `>= from` to `level + by`.
    pub fn shift_levels(&self, from: usize, by: usize) -> Elem {
        match self {
            Elem::Rat(_) => self.clone(),
            Elem::Alg { level, coeffs } => Elem::Alg {
                level: if *level >= from { level + by } else { *level },
                coeffs: coeffs.iter().map(|c| c.shift_levels(from, by)).collect(),
            },
        }
    }

    /// Visit every rational leaf.
    pub fn for_each_rational<'a>(&'a self, f: &mut impl FnMut(&'a Q)) {
        match self {
            Elem::Rat(x) => f(x),
            Elem::Alg { coeffs, .. } => coeffs.iter().for_each(|c| c.for_each_rational(f)),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(x) => write!(f, "{x}"),
            Elem::Alg { level, coeffs } => {
                write!(f, "(")?;
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match (i, c.is_one()) {
                        (0, _) => write!(f, "{c}")?,
                        (1, true) => write!(f, "t{level}")?,
                        (1, false) => write!(f, "{c}*t{level}")?,
                        (_, true) => write!(f, "t{level}^{i}")?,
                        (_, false) => write!(f, "{c}*t{level}^{i}")?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => {
                let (la, lb) = (self.level(), rhs.level());
                if la == lb {
                    let (Elem::Alg { coeffs: a, .. }, Elem::Alg { coeffs: b, .. }) = (self, rhs) else {
                        unreachable!()
                    };
                    let n = a.len().max(b.len());
                    let zero = Elem::zero();
                    let coeffs = (0..n)
                        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
                        .collect();
                    Elem::from_coeffs(la, coeffs)
                } else {
                    let (hi, lo) = if la > lb { (self, rhs) } else { (rhs, self) };
                    let Elem::Alg { level, coeffs } = hi else {
                        unreachable!()
                    };
                    let mut coeffs = coeffs.clone();
                    coeffs[0] = &coeffs[0] + lo;
                    Elem::Alg {
                        level: *level,
                        coeffs,
                    }
                }
            }
        }
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Alg { level, coeffs } => Elem::Alg {
                level: *level,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self + &(-rhs)
    }
}

impl From<Q> for Elem {
    fn from(x: Q) -> Self {
        Elem::Rat(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelKind {
    /// Root of an arbitrary monic polynomial.
    BaseRoot,
    /// Square root: minimal polynomial `X² − c`.
    QuadraticSqrt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub label: String,
    /// Monic, lowest degree first, coefficients from the level below.
    pub minpoly: Vec<Elem>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn kind(&self) -> LevelKind {
        if self.degree() == 2 && self.minpoly[1].is_zero() {
            LevelKind::QuadraticSqrt
        } else {
            LevelKind::BaseRoot
        }
    }

    /// `c` for a level `X² − c`.
    pub fn radicand(&self) -> Option<Elem> {
        (self.kind() == LevelKind::QuadraticSqrt).then(|| -&self.minpoly[0])
    }
}

/// An immutable chain of extensions over the rationals. Cloning is cheap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tower {
    levels: Arc<Vec<Level>>,
}

impl Tower {
    /// The rationals.
    pub fn rationals() -> Self {
        Tower::default()
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Level `k >= 1`.
    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    pub fn degree_of(&self, k: usize) -> usize {
        self.level(k).degree()
    }

    pub fn absolute_degree(&self) -> usize {
        self.degree_between(0, self.height())
    }

    /// `[L_hi : L_lo]`.
    pub fn degree_between(&self, lo: usize, hi: usize) -> usize {
        (lo + 1..=hi).map(|k| self.degree_of(k)).product()
    }

    /// The generator `θ_k` of level `k`.
    pub fn gen(&self, k: usize) -> Elem {
        assert!(k >= 1 && k <= self.height(), "no level {k}");
        let d = self.degree_of(k);
        if d == 1 {
            return -&self.level(k).minpoly[0];
        }
        Elem::Alg {
            level: k,
            coeffs: vec![Elem::zero(), Elem::one()],
        }
    }

    pub fn truncate(&self, height: usize) -> Tower {
        Tower {
            levels: Arc::new(self.levels[..height].to_vec()),
        }
    }

    /// Adjoin a root of `minpoly` (monic, degree ≥ 2, coefficients at the top).
    pub fn extend(&self, label: impl Into<String>, minpoly: Vec<Elem>) -> Result<Tower> {
        if minpoly.len() < 3 {
            return Err(Error::InvalidMinpoly("degree must be at least 2".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::InvalidMinpoly("polynomial is not monic".into()));
        }
        for c in &minpoly {
            self.check(c)?;
        }
        let mut levels = (*self.levels).clone();
        levels.push(Level {
            label: label.into(),
            minpoly,
        });
        Ok(Tower {
            levels: Arc::new(levels),
        })
    }

    /// Like [`Tower::extend`], additionally enforcing the requested kind.
    pub fn extend_kind(
        &self,
        label: impl Into<String>,
        minpoly: Vec<Elem>,
        kind: LevelKind,
    ) -> Result<Tower> {
        let t = self.extend(label, minpoly)?;
        if kind == LevelKind::QuadraticSqrt && t.level(t.height()).kind() != kind {
            return Err(Error::InvalidMinpoly("expected the shape X^2 - c".into()));
        }
        Ok(t)
    }

    /// Adjoin `√c` as a new level `X² − c`.
    pub fn adjoin_sqrt(&self, label: impl Into<String>, c: &Elem) -> Result<Tower> {
        if c.is_zero() {
            return Err(Error::SqrtOfZero);
        }
        self.extend(label, vec![-c, Elem::zero(), Elem::one()])
    }

    /// Build a tower from rational-coefficient levels, e.g. `[[-2, 0, 1]]` for `Q(√2)`.
    pub fn from_int_minpolys(polys: &[&[i64]]) -> Result<Tower> {
        let mut t = Tower::rationals();
        for (i, p) in polys.iter().enumerate() {
            t = t.extend(format!("t{}", i + 1), p.iter().map(|&c| Elem::int(c)).collect())?;
        }
        Ok(t)
    }

    /// Check that `x` is a well-formed element of this tower.
    pub fn check(&self, x: &Elem) -> Result<()> {
        match x {
            Elem::Rat(_) => Ok(()),
            Elem::Alg { level, coeffs } => {
                if *level > self.height() || *level == 0 {
                    return Err(Error::LevelOutOfRange {
                        found: *level,
                        height: self.height(),
                    });
                }
                let d = self.degree_of(*level);
                if coeffs.len() < 2 || coeffs.len() > d || coeffs.last().unwrap().is_zero() {
                    return Err(Error::Parse(format!("non-canonical element at level {level}")));
                }
                for c in coeffs {
                    if c.level() >= *level {
                        return Err(Error::Parse("coefficient level too high".into()));
                    }
                    self.check(c)?;
                }
                Ok(())
            }
        }
    }

    /// Embed `x` into level `target`; the canonical form makes this the identity.
    pub fn embed(&self, x: &Elem, target: usize) -> Result<Elem> {
        if target > self.height() || x.level() > target {
            return Err(Error::LevelOutOfRange {
                found: x.level().max(target),
                height: self.height(),
            });
        }
        Ok(x.clone())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a + b
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a - b
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Rat(x), _) => b.scale_q(x),
            (_, Elem::Rat(y)) => a.scale_q(y),
            (
                Elem::Alg {
                    level: la,
                    coeffs: ca,
                },
                Elem::Alg {
                    level: lb,
                    coeffs: cb,
                },
            ) => {
                if la > lb {
                    self.scale(*la, ca, b)
                } else if lb > la {
                    self.scale(*lb, cb, a)
                } else {
                    self.mul_same(*la, ca, cb)
                }
            }
        }
    }

    fn scale(&self, level: usize, coeffs: &[Elem], s: &Elem) -> Elem {
        let coeffs = coeffs.iter().map(|c| self.mul(c, s)).collect();
        Elem::from_coeffs(level, coeffs)
    }

    fn mul_same(&self, level: usize, a: &[Elem], b: &[Elem]) -> Elem {
        let lv = self.level(level);
        if let (Some(c), 2, 2) = (lv.radicand(), a.len(), b.len()) {
            // Karatsuba on (a0 + a1 t)(b0 + b1 t) with t² = c.
            let m0 = self.mul(&a[0], &b[0]);
            let m1 = self.mul(&a[1], &b[1]);
            let m2 = self.mul(&(&a[0] + &a[1]), &(&b[0] + &b[1]));
            let c0 = &m0 + &self.mul(&m1, &c);
            let c1 = &(&m2 - &m0) - &m1;
            return Elem::from_coeffs(level, vec![c0, c1]);
        }
        let mut prod = poly::mul(self, a, b);
        self.reduce_poly(level, &mut prod);
        Elem::from_coeffs(level, prod)
    }

    /// Reduce a dense polynomial in `θ_level` modulo the level's minimal polynomial.
    pub(crate) fn reduce_poly(&self, level: usize, p: &mut Vec<Elem>) {
        let m = &self.level(level).minpoly;
        let d = m.len() - 1;
        while p.len() > d {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            for (i, mi) in m[..d].iter().enumerate() {
                if !mi.is_zero() {
                    p[shift + i] = &p[shift + i] - &self.mul(&top, mi);
                }
            }
        }
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elem, mut n: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = Elem::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; fails with a witness if a level is not a field.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Rat(x) => {
                if x.is_zero() {
                    Err(Error::ZeroInverse)
                } else {
                    Ok(Elem::Rat(x.recip()))
                }
            }
            Elem::Alg { level, coeffs } => {
                let lv = self.level(*level);
                if let Some(c) = lv.radicand() {
                    let (a0, a1) = (&coeffs[0], &coeffs[1]);
                    let norm = &self.square(a0) - &self.mul(&self.square(a1), &c);
                    return match self.inv(&norm) {
                        Ok(ni) => Ok(Elem::from_coeffs(
                            *level,
                            vec![self.mul(a0, &ni), -&self.mul(a1, &ni)],
                        )),
                        Err(Error::ZeroInverse) => {
                            let root = self.div(a0, a1)?;
                            Err(Error::Reducible(ReducibilityWitness {
                                level: *level,
                                factor: vec![root, Elem::one()],
                            }))
                        }
                        Err(e) => Err(e),
                    };
                }
                let (g, s, _) = poly::ext_gcd(self, coeffs, &lv.minpoly)?;
                if g.len() > 1 {
                    return Err(Error::Reducible(ReducibilityWitness {
                        level: *level,
                        factor: g,
                    }));
                }
                // g is the monic constant 1.
                Ok(Elem::from_coeffs(*level, s))
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Is the level's minimal polynomial separable (coprime to its derivative)?
    /// Errors propagate if a lower level is not a field.
    pub fn level_is_separable(&self, k: usize) -> Result<bool> {
        let m = &self.level(k).minpoly;
        let dm = poly::derivative(m);
        let (g, _, _) = poly::ext_gcd(self, &dm, m)?;
        Ok(g.len() == 1)
    }

    /// Insert `extra` levels (defined over `self.levels[..at]` and each other)
    /// directly above level `at`, relabelling the levels that were above it.
    pub fn insert_levels(&self, at: usize, extra: &[Level]) -> Tower {
        let by = extra.len();
        let mut levels: Vec<Level> = self.levels[..at].to_vec();
        levels.extend(extra.iter().cloned());
        for lv in &self.levels[at..] {
            levels.push(Level {
                label: lv.label.clone(),
                minpoly: lv.minpoly.iter().map(|c| c.shift_levels(at + 1, by)).collect(),
            });
        }
        Tower {
            levels: Arc::new(levels),
        }
    }

    /// Replace the reducible level named by `w` with a proper factor of its
    /// minimal polynomial (the one of lower degree). A linear factor removes
    /// the level entirely.
    pub fn refine(&self, w: &ReducibilityWitness) -> Result<Refinement> {
        let k = w.level;
        let m = &self.level(k).minpoly;
        let (cof, rem) = poly::divrem(self, m, &w.factor)?;
        if !poly::is_zero(&rem) || w.factor.len() < 2 || w.factor.len() >= m.len() {
            return Err(Error::InvalidMinpoly(
                "witness factor does not divide properly".into(),
            ));
        }
        let cof = poly::monic(self, &cof)?;
        let factor = if cof.len() < w.factor.len() {
            cof
        } else {
            w.factor.clone()
        };
        let mut r = Refinement {
            level: k,
            factor: factor.clone(),
            tower: self.truncate(k - 1),
        };
        if factor.len() > 2 {
            r.tower = r.tower.extend(format!("{}'", self.level(k).label), factor)?;
        }
        for j in k + 1..=self.height() {
            let lv = self.level(j);
            let mp = lv.minpoly.iter().map(|c| r.apply(c)).collect::<Vec<_>>();
            r.tower = r.tower.extend(lv.label.clone(), mp)?;
        }
        Ok(r)
    }
}

/// The result of [`Tower::refine`]: the refined tower and the element map.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub level: usize,
    pub factor: Vec<Elem>,
    pub tower: Tower,
}

impl Refinement {
    fn collapsed(&self) -> bool {
        self.factor.len() == 2
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        match x {
            Elem::Rat(_) => x.clone(),
            Elem::Alg { level, .. } if *level < self.level => x.clone(),
            Elem::Alg { level, coeffs } if *level == self.level => {
                if self.collapsed() {
                    let root = -&self.factor[0];
                    poly::eval(&self.tower, coeffs, &root)
                } else {
                    let mut p = coeffs.clone();
                    poly::rem_monic(&self.tower, &mut p, &self.factor);
                    Elem::from_coeffs(*level, p)
                }
            }
            Elem::Alg { level, coeffs } => {
                let new_level = if self.collapsed() { level - 1 } else { *level };
                Elem::from_coeffs(new_level, coeffs.iter().map(|c| self.apply(c)).collect())
            }
        }
    }
}
