//! Splitting a quaternion algebra over `K` by a 2-extension of `F ⊆ K`.
//!
//! With `r = [K:F]`, the norm form `N_Q` has a nontrivial zero over `KF'`
//! for a tower `F'/F` of at most `r` square-root levels (for `r ≤ 8`).
//!
//! * `r ≤ 6`: the coordinates of `N_Q` in an F-basis of `K` are `r` forms in
//!   `4r > r(r+1)/2` variables over `F`; a common zero over `F'` is a zero of
//!   `N_Q` over `KF'`.
//! * `r ∈ {7, 8}`: write `N_Q = ⟨1, α⟩ ⊥ φ'` and complete `1, α, α²` to an
//!   F-basis. A common zero `v` of the last `r − 3` coordinate forms of `φ'`
//!   (in `2r` variables) gives `φ'(v) = g(α)` with `deg g ≤ 2`, and the
//!   slot construction splits `⟨1, α, g(α)⟩`.
//!
//! When `K` has a declared chain `F ⊆ K₀ ⊆ K` with `K₀/F` a 2-extension, the
//! construction runs over `K₀` instead of `F`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::dynamic::{self, Session};
use crate::error::{Error, Result};
use crate::isotropy::isotropic_vector;
use crate::linalg;
use crate::quadform::{lift_transferred, transfer_system, LinearFunctionalBasis, QuadraticForm};
use crate::quaternion::QuaternionAlgebra;
use crate::serial;
use crate::slot::slot_witness;
use crate::tower::{Elem, Tower};

pub const MAX_DEGREE: usize = 8;

/// Where `F` and the declared 2-part `K₀` sit inside the tower of `K`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KChain {
    /// `F` is level `base_levels` of the tower of `K`.
    pub base_levels: usize,
    /// Number of quadratic levels above `F` forming `K₀`, when declared.
    pub two_part_levels: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SplitCertificate {
    /// `K`'s tower followed by the levels of `F'`.
    pub tower: Tower,
    pub quaternion: QuaternionAlgebra,
    pub chain: KChain,
    /// Height of `K` inside `tower`.
    pub field_levels: usize,
    /// Coordinates in the basis `1, I, J, IJ` of the standard presentation.
    pub witness: [Elem; 4],
    pub degree_over_f: u64,
    pub claimed_bound: u64,
}

impl SplitCertificate {
    pub fn to_json(&self) -> Value {
        let t = &self.tower;
        let h = t.height();
        json!({
            "tower": serial::tower_to_json(t),
            "quaternion": self.quaternion.presentation_json(t, h),
            "base_levels": self.chain.base_levels,
            "two_part_levels": self.chain.two_part_levels.unwrap_or(0),
            "field_levels": self.field_levels,
            "witness": serial::vec_to_json(t, &self.witness, h),
            "claimed_bound": self.claimed_bound,
            "degree_over_F": self.degree_over_f,
        })
    }
}

/// Parse split input: a quaternion JSON plus optional `base_levels` and
/// `two_part_levels`.
pub fn split_input_from_json(v: &Value) -> Result<(QuaternionAlgebra, KChain)> {
    let q = QuaternionAlgebra::from_json(v)?;
    let base_levels = match v.get("base_levels") {
        Some(_) => serial::get_usize(v, "base_levels")?,
        None => 0,
    };
    let two_part_levels = match v.get("two_part_levels") {
        Some(_) => Some(serial::get_usize(v, "two_part_levels")?),
        None => None,
    };
    Ok((
        q,
        KChain {
            base_levels,
            two_part_levels,
        },
    ))
}

pub fn split_over_2ext(q: &QuaternionAlgebra, chain: &KChain) -> Result<SplitCertificate> {
    let kt = q.field().clone();
    let k = kt.height();
    let b = chain.base_levels;
    if b > k {
        return Err(Error::LevelOutOfRange { found: b, height: k });
    }
    let n = kt.degree_between(b, k);
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let top_of_two_part = match chain.two_part_levels {
        Some(m) => {
            if b + m > k {
                return Err(Error::LevelOutOfRange {
                    found: b + m,
                    height: k,
                });
            }
            if let Some(j) = (b + 1..=b + m).find(|&j| kt.degree_of(j) != 2) {
                return Err(Error::Precondition(format!(
                    "declared 2-part level {j} is not quadratic"
                )));
            }
            b + m
        }
        None if n.is_multiple_of(2) => return Err(Error::Missing2PartDeclaration(n)),
        None => b,
    };
    let (u, v) = q.standard_uv();
    let base = kt.truncate(top_of_two_part);
    let r = kt.degree_between(top_of_two_part, k);
    let plan = Plan {
        kt: &kt,
        lo: top_of_two_part,
        u: &u,
        v: &v,
    };
    let (found, s) = dynamic::run(&base, |s| {
        if s.base_height() != top_of_two_part || s.tower().levels() != base.levels() {
            return Err(Error::Precondition("the input tower is not a field".into()));
        }
        if r <= 6 {
            plan.transfer_branch(s)
        } else {
            plan.functional_branch(s)
        }
    })?;
    // Stack K's levels between F (or K₀) and the new levels.
    let lo = top_of_two_part;
    let shift = k - lo;
    let comp = s.tower().insert_levels(lo, &kt.levels()[lo..k]);
    let up = |x: &Elem| x.shift_levels(lo + 1, shift);
    let witness = match found {
        Found::Transferred { basis, x } => {
            let x: Vec<Elem> = x.iter().map(up).collect();
            let q = lift_transferred(&comp, &basis, &x);
            [q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone()]
        }
        Found::Direct { root } => [up(&root), Elem::one(), Elem::zero(), Elem::zero()],
        Found::Slot { basis, v: vv, slot } => {
            let vv: Vec<Elem> = vv.iter().map(up).collect();
            let big_v = lift_transferred(&comp, &basis, &vv);
            match slot {
                None => [Elem::zero(), Elem::zero(), big_v[0].clone(), big_v[1].clone()],
                Some(w) => {
                    let shifted = crate::slot::SlotWitness {
                        x: w.x.iter().map(up).collect(),
                        y: w.y.iter().map(up).collect(),
                        z: w.z.iter().map(up).collect(),
                    };
                    let [x, y, z] = shifted.evaluate(&comp, &-&u);
                    [x, y, comp.mul(&z, &big_v[0]), comp.mul(&z, &big_v[1])]
                }
            }
        }
    };
    let norm = q.norm_form().evaluate(&comp, &witness);
    if !norm.is_zero() || witness.iter().all(Elem::is_zero) {
        return Err(Error::Precondition(
            "constructed witness failed its own check".into(),
        ));
    }
    let degree_over_f = (kt.degree_between(b, lo) * comp.degree_between(k, comp.height())) as u64;
    Ok(SplitCertificate {
        quaternion: q.over(&comp),
        tower: comp,
        chain: *chain,
        field_levels: k,
        witness,
        degree_over_f,
        claimed_bound: 1u64 << n,
    })
}

enum Found {
    /// Coordinates over `F'` of a zero of the transferred norm form.
    Transferred {
        basis: LinearFunctionalBasis,
        x: Vec<Elem>,
    },
    /// `α = −u` lies in `F`; `root² = −α`.
    Direct { root: Elem },
    /// Zero `v` of the high coordinates of `φ'`, plus the slot witness
    /// (absent when `φ'(v) = 0`).
    Slot {
        basis: LinearFunctionalBasis,
        v: Vec<Elem>,
        slot: Option<crate::slot::SlotWitness>,
    },
}

struct Plan<'a> {
    kt: &'a Tower,
    lo: usize,
    u: &'a Elem,
    v: &'a Elem,
}

impl Plan<'_> {
    fn k(&self) -> usize {
        self.kt.height()
    }

    fn transfer_branch(&self, s: &mut Session) -> Result<Found> {
        let kt = self.kt;
        let basis = LinearFunctionalBasis::monomial(kt, self.lo, self.k())?;
        let uv = kt.mul(self.u, self.v);
        let norm = QuadraticForm::diagonal(&[Elem::one(), -self.u, -self.v, uv])?;
        let all: BTreeSet<usize> = (0..basis.len()).collect();
        let system = transfer_system(kt, &norm, &basis, &all)?;
        let x = isotropic_vector(s, &system)?;
        Ok(Found::Transferred { basis, x })
    }

    fn functional_branch(&self, s: &mut Session) -> Result<Found> {
        let kt = self.kt;
        let (lo, k) = (self.lo, self.k());
        let alpha = -self.u;
        let alpha2 = kt.square(&alpha);
        let coords = |x: &Elem| linalg::coords_over(kt, x, lo, k);
        let first = vec![coords(&Elem::one()), coords(&alpha), coords(&alpha2)];
        let rank = linalg::rank(kt, &first)?;
        if rank < 3 {
            if alpha.level() > lo {
                return Err(Error::Precondition(
                    "alpha generates a quadratic subextension; declare it as part of K0".into(),
                ));
            }
            let root = s.sqrt(&-&alpha)?;
            return Ok(Found::Direct { root });
        }
        let r = kt.degree_between(lo, k);
        let powers: Vec<Elem> = (0..r).map(|i| kt.pow(&alpha, i as u64)).collect();
        let power_coords: Vec<Vec<Elem>> = powers.iter().map(coords).collect();
        let basis_elems = if linalg::rank(kt, &power_coords)? == r {
            powers
        } else {
            let monomials = linalg::monomial_basis(kt, lo, k);
            let extra = linalg::extend_basis(kt, &first, &monomials.iter().map(coords).collect::<Vec<_>>())?;
            let mut b = vec![Elem::one(), alpha.clone(), alpha2];
            b.extend(extra.iter().map(|c| linalg::from_coords(kt, c, lo, k)));
            b
        };
        let basis = LinearFunctionalBasis::new(kt, basis_elems, lo, k)?;
        let phi = QuadraticForm::diagonal(&[-self.v, kt.mul(self.u, self.v)])?;
        let high: BTreeSet<usize> = (3..r).collect();
        let low: BTreeSet<usize> = (0..3).collect();
        let system = transfer_system(kt, &phi, &basis, &high)?;
        let low_forms = transfer_system(kt, &phi, &basis, &low)?;
        let v = isotropic_vector(s, &system)?;
        let t = s.tower().clone();
        let g = low_forms.evaluate(&t, &v)?;
        let slot = if g.iter().all(Elem::is_zero) {
            None
        } else {
            Some(slot_witness(s, &g)?)
        };
        Ok(Found::Slot { basis, v, slot })
    }
}
