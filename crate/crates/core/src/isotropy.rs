//! Common zeros of `r` quadratic forms in at least `r(r+1)/2 + 1` variables
//! over a tower of at most `r` square-root adjunctions.
//!
//! Fix `v` with some `φ_i(v) ≠ 0` and mix the system so that only `φ_r` is
//! nonzero at `v`. The other forms then vanish on `v` and are orthogonal to
//! it on `W = ⋂ v^⊥`, so a common zero `w` of their restriction to a
//! complement `V'` of `v` in `W` (found recursively) makes them vanish on the
//! whole plane `⟨v, w⟩`. On that plane `φ_r(xv + w) = a x² + 2βx + c`, whose
//! root needs at most one more square root.

use serde_json::{json, Value};

use crate::dynamic::{self, Session};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quadform::{mix_forms, orthogonal_intersection, QFSystem, QuadraticForm};
use crate::serial;
use crate::tower::{Elem, Tower};

/// Smallest dimension for which `r` forms always have a common zero over
/// some extension of degree at most `2^r`.
pub fn required_dim(r: usize) -> usize {
    r * (r + 1) / 2 + 1
}

#[derive(Clone, Debug)]
pub struct IsotropyCertificate {
    /// The input field followed by the adjoined square-root levels.
    pub tower: Tower,
    /// Number of levels belonging to the input field.
    pub base_levels: usize,
    /// The system, expressed in `tower`.
    pub system: QFSystem,
    pub witness: Vec<Elem>,
    pub claimed_bound: u64,
    pub actual_degree: u64,
}

impl IsotropyCertificate {
    pub fn to_json(&self) -> Value {
        let t = &self.tower;
        let h = t.height();
        let forms: Vec<Value> = self
            .system
            .forms()
            .iter()
            .map(|f| serial::matrix_to_json(t, f.gram(), h))
            .collect();
        json!({
            "tower": serial::tower_to_json(t),
            "base_levels": self.base_levels,
            "forms": forms,
            "witness": serial::vec_to_json(t, &self.witness, h),
            "claimed_bound": self.claimed_bound,
            "actual_degree": self.actual_degree,
        })
    }
}

/// Parse a system `{"field": tower?, "forms": [gram, ...]}`; a missing field
/// means the rationals.
pub fn system_from_json(v: &Value) -> Result<(Tower, QFSystem)> {
    let t = match v.get("field") {
        Some(f) => serial::tower_from_json(f)?,
        None => Tower::rationals(),
    };
    let forms = serial::get(v, "forms")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"forms\" must be a list".into()))?
        .iter()
        .map(|g| QuadraticForm::new(serial::matrix_from_json(&t, g)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((t, QFSystem::new(forms)?))
}

pub fn system_to_json(t: &Tower, sys: &QFSystem) -> Value {
    let h = t.height();
    let forms: Vec<Value> = sys
        .forms()
        .iter()
        .map(|f| serial::matrix_to_json(t, f.gram(), h))
        .collect();
    json!({"field": serial::tower_to_json(t), "forms": forms})
}

/// Build a tower over `t` on which `system` has a nontrivial common zero.
pub fn isotropy_2ext(t: &Tower, system: &QFSystem) -> Result<IsotropyCertificate> {
    let r = system.len();
    let needed = required_dim(r);
    if system.dim() < needed {
        return Err(Error::DimensionTooSmall {
            forms: r,
            dim: system.dim(),
            needed,
        });
    }
    if r >= 64 {
        return Err(Error::Precondition("at most 63 forms are supported".into()));
    }
    let (witness, s) = dynamic::run(t, |s| {
        let lifted = system.map_entries(|x| s.lift(x));
        isotropic_vector(s, &lifted)
    })?;
    let system = system.map_entries(|x| s.lift(x));
    let tower = s.tower().clone();
    let actual_degree = tower.degree_between(s.base_height(), tower.height()) as u64;
    Ok(IsotropyCertificate {
        tower,
        base_levels: s.base_height(),
        system,
        witness,
        claimed_bound: 1u64 << r,
        actual_degree,
    })
}

/// A nonzero common zero of `system`, adjoining square roots to the session
/// tower as needed. The system's dimension must be at least
/// [`required_dim`] of its length.
pub(crate) fn isotropic_vector(s: &mut Session, system: &QFSystem) -> Result<Vec<Elem>> {
    let w = solve(s, system.forms(), system.dim())?;
    debug_assert!(system
        .evaluate(s.tower(), &w)
        .is_ok_and(|vals| vals.iter().all(Elem::is_zero)));
    Ok(w)
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    (0..n)
        .map(|j| if i == j { Elem::one() } else { Elem::zero() })
        .collect()
}

/// First standard vector `e_i`, then first `e_i + e_j`, at which some form is
/// nonzero. `None` when every Gram matrix is zero.
fn choose_vector(forms: &[QuadraticForm], n: usize) -> Option<Vec<Elem>> {
    if let Some(i) = (0..n).find(|&i| forms.iter().any(|f| !f.entry(i, i).is_zero())) {
        return Some(unit(n, i));
    }
    // With a zero diagonal, φ(e_i + e_j) = 2·g_ij.
    for i in 0..n {
        for j in i + 1..n {
            if forms.iter().any(|f| !f.entry(i, j).is_zero()) {
                let mut v = unit(n, i);
                v[j] = Elem::one();
                return Some(v);
            }
        }
    }
    None
}

fn solve(s: &mut Session, forms: &[QuadraticForm], n: usize) -> Result<Vec<Elem>> {
    if forms.is_empty() {
        return Ok(unit(n, 0));
    }
    let Some(v) = choose_vector(forms, n) else {
        return Ok(unit(n, 0));
    };
    let t = s.tower().clone();
    let r = forms.len();
    let mixed = mix_forms(&t, &QFSystem::new(forms.to_vec())?, &v)?;
    let (_, complement) = orthogonal_intersection(&t, &mixed, &v)?;
    if complement.is_empty() {
        return Err(Error::DimensionTooSmall {
            forms: r,
            dim: n,
            needed: required_dim(r),
        });
    }
    let restricted = mixed.forms()[..r - 1]
        .iter()
        .map(|f| f.restrict(&t, &complement))
        .collect::<Result<Vec<_>>>()?;
    let w_coords = solve(s, &restricted, complement.len())?;
    let t = s.tower().clone();
    let w = linalg::combine(&t, &w_coords, &complement);
    let last = &mixed.forms()[r - 1];
    let a = last.evaluate(&t, &v)?;
    let beta = last.half_polar(&t, &v, &w)?;
    let c = last.evaluate(&t, &w)?;
    // a x² + 2βx + c = 0 has roots (−β ± √(β² − ac)) / a.
    let quarter_disc = &t.square(&beta) - &t.mul(&a, &c);
    let root = s.sqrt(&quarter_disc)?;
    let t = s.tower().clone();
    let x = t.div(&(&root - &beta), &a)?;
    Ok(v.iter().zip(&w).map(|(vi, wi)| &t.mul(&x, vi) + wi).collect())
}
