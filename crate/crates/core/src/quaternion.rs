//! Quaternion algebras, their norm forms, and 2-fold Pfister forms.
//!
//! `(u, v)` has basis `1, I, J, IJ` with `I² = u`, `J² = v`, `IJ = −JI`.
//! `[a, b)` has basis `1, i, j, ij` with `i² − i = a`, `j² = b`,
//! `ji = (1 − i)j`; putting `I = 2i − 1` gives `(1 + 4a, b)`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quadform::QuadraticForm;
use crate::serial;
use crate::tower::{Elem, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Bracket { a: Elem, b: Elem },
    Standard { u: Elem, v: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    field: Tower,
    presentation: Presentation,
}

impl QuaternionAlgebra {
    pub fn standard(field: &Tower, u: Elem, v: Elem) -> Result<Self> {
        QuaternionAlgebra::new(field, Presentation::Standard { u, v })
    }

    pub fn bracket(field: &Tower, a: Elem, b: Elem) -> Result<Self> {
        QuaternionAlgebra::new(field, Presentation::Bracket { a, b })
    }

    pub fn new(field: &Tower, presentation: Presentation) -> Result<Self> {
        let (x, y) = match &presentation {
            Presentation::Bracket { a, b } => (a, b),
            Presentation::Standard { u, v } => (u, v),
        };
        field.check(x)?;
        field.check(y)?;
        match &presentation {
            Presentation::Bracket { a, b } => {
                if (&Elem::one() + &field.mul(&Elem::int(4), a)).is_zero() {
                    return Err(Error::InvalidQuaternion("[a, b) needs 1 + 4a != 0".into()));
                }
                if b.is_zero() {
                    return Err(Error::InvalidQuaternion("[a, b) needs b != 0".into()));
                }
            }
            Presentation::Standard { u, v } => {
                if u.is_zero() || v.is_zero() {
                    return Err(Error::InvalidQuaternion("(u, v) needs u, v != 0".into()));
                }
            }
        }
        Ok(QuaternionAlgebra {
            field: field.clone(),
            presentation,
        })
    }

    pub fn field(&self) -> &Tower {
        &self.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// `(u, v)` of the standard presentation.
    pub fn standard_uv(&self) -> (Elem, Elem) {
        match &self.presentation {
            Presentation::Standard { u, v } => (u.clone(), v.clone()),
            Presentation::Bracket { a, b } => (&Elem::one() + &self.field.mul(&Elem::int(4), a), b.clone()),
        }
    }

    /// The reduced norm `⟨1, −u, −v, uv⟩` in the basis `1, I, J, IJ`.
    pub fn norm_form(&self) -> PfisterForm2 {
        let (u, v) = self.standard_uv();
        PfisterForm2 {
            alpha: -&u,
            beta: -&v,
        }
    }

    /// The same algebra over a larger tower that contains `field` as its
    /// bottom levels.
    pub fn over(&self, t: &Tower) -> QuaternionAlgebra {
        QuaternionAlgebra {
            field: t.clone(),
            presentation: self.presentation.clone(),
        }
    }

    /// Presentation fields only, elements written at `level` of `t`.
    pub fn presentation_json(&self, t: &Tower, level: usize) -> Value {
        let e = |x: &Elem| serial::elem_to_json(t, x, level);
        match &self.presentation {
            Presentation::Standard { u, v } => json!({"presentation": "standard", "u": e(u), "v": e(v)}),
            Presentation::Bracket { a, b } => json!({"presentation": "bracket", "a": e(a), "b": e(b)}),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.presentation_json(&self.field, self.field.height());
        v["field"] = serial::tower_to_json(&self.field);
        v
    }

    /// Parse presentation fields against `t`.
    pub fn presentation_from_json(t: &Tower, v: &Value) -> Result<Self> {
        let kind = serial::get(v, "presentation")?.as_str().unwrap_or_default();
        let e = |k: &str| serial::elem_from_json(t, serial::get(v, k)?);
        let p = match kind {
            "standard" => Presentation::Standard {
                u: e("u")?,
                v: e("v")?,
            },
            "bracket" => Presentation::Bracket {
                a: e("a")?,
                b: e("b")?,
            },
            other => return Err(Error::Parse(format!("unknown presentation {other:?}"))),
        };
        QuaternionAlgebra::new(t, p)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let t = match v.get("field") {
            Some(f) => serial::tower_from_json(f)?,
            None => Tower::rationals(),
        };
        QuaternionAlgebra::presentation_from_json(&t, v)
    }
}

/// The form `⟨1, α, β, αβ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterForm2 {
    pub alpha: Elem,
    pub beta: Elem,
}

impl PfisterForm2 {
    pub fn entries(&self, t: &Tower) -> [Elem; 4] {
        [
            Elem::one(),
            self.alpha.clone(),
            self.beta.clone(),
            t.mul(&self.alpha, &self.beta),
        ]
    }

    pub fn form(&self, t: &Tower) -> QuadraticForm {
        QuadraticForm::diagonal(&self.entries(t)).expect("four entries")
    }

    pub fn evaluate(&self, t: &Tower, w: &[Elem]) -> Elem {
        self.entries(t)
            .iter()
            .zip(w)
            .fold(Elem::zero(), |acc, (a, x)| &acc + &t.mul(a, &t.square(x)))
    }
}

/// From an isotropic vector of `⟨1, α, β, αβ⟩`, an isotropic vector of the
/// subform `⟨1, α, β⟩`.
///
/// With `w = (x, y, z, w₄)` and `D = z² + αw₄²`, multiplicativity of the
/// norm form `⟨1, α⟩` gives `(u, v, 1)` for `u + v·√−α = (x + y√−α)/(z − w₄√−α)`.
pub fn pfister_descend(t: &Tower, pi: &PfisterForm2, w: &[Elem]) -> Result<[Elem; 3]> {
    if w.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: w.len(),
        });
    }
    if w.iter().all(Elem::is_zero) {
        return Err(Error::ZeroVector);
    }
    if !pi.evaluate(t, w).is_zero() {
        return Err(Error::NotIsotropic);
    }
    let (x, y, z, w4) = (&w[0], &w[1], &w[2], &w[3]);
    let alpha = &pi.alpha;
    let d = &t.square(z) + &t.mul(alpha, &t.square(w4));
    if !d.is_zero() {
        let u = t.div(&(&t.mul(x, z) + &t.mul(alpha, &t.mul(y, w4))), &d)?;
        let v = t.div(&(&t.mul(y, z) - &t.mul(x, w4)), &d)?;
        return Ok([u, v, Elem::one()]);
    }
    if !z.is_zero() || !w4.is_zero() {
        return Ok([z.clone(), w4.clone(), Elem::zero()]);
    }
    Ok([x.clone(), y.clone(), Elem::zero()])
}
