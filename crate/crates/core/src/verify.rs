//! Independent checking of certificates.
//!
//! Everything here works from the serialized certificate and the arithmetic
//! kernel alone: forms are evaluated by direct expansion, degrees are
//! recomputed from the tower, and no construction code is involved.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::serial;
use crate::tower::{Elem, Tower};

/// Outcome of a check; `detail` names the first failing condition, or
/// summarizes the certificate when it passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub passed: bool,
    pub detail: String,
}

impl Report {
    fn pass(detail: String) -> Report {
        Report { passed: true, detail }
    }

    fn fail(detail: String) -> Report {
        Report {
            passed: false,
            detail,
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Ok(Report::fail(format!($($msg)*)));
        }
    };
}

/// Verify either kind of certificate, telling them apart by the presence of
/// a `"quaternion"` field.
pub fn verify_json(cert: &Value) -> Result<Report> {
    if cert.get("quaternion").is_some() {
        verify_split_json(cert)
    } else {
        verify_isotropy_json(cert, None)
    }
}

/// Levels `lo+1..=hi` must each be a separable quadratic extension.
fn quadratic_levels(t: &Tower, lo: usize, hi: usize) -> Option<String> {
    for j in lo + 1..=hi {
        let m = &t.level(j).minpoly;
        if m.len() != 3 {
            return Some(format!("level {j} has degree {}, expected 2", m.len() - 1));
        }
        let disc = &t.square(&m[1]) - &t.mul(&Elem::int(4), &m[0]);
        if disc.is_zero() {
            return Some(format!("level {j} is inseparable (zero discriminant)"));
        }
    }
    None
}

/// Display form of an element, shortened for messages.
fn short(x: &Elem) -> String {
    let s = x.to_string();
    match s.char_indices().nth(60) {
        Some((i, _)) => format!("{}...", &s[..i]),
        None => s,
    }
}

fn pow2(e: usize) -> Option<u64> {
    (e < 64).then(|| 1u64 << e)
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    serial::get(v, key)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a non-negative integer")))
}

/// `Σ_jk g_jk w_j w_k`.
fn eval_gram(t: &Tower, g: &[Vec<Elem>], w: &[Elem]) -> Elem {
    let mut acc = Elem::zero();
    for (j, row) in g.iter().enumerate() {
        if w[j].is_zero() {
            continue;
        }
        for (k, x) in row.iter().enumerate() {
            if !x.is_zero() && !w[k].is_zero() {
                acc = &acc + &t.mul(x, &t.mul(&w[j], &w[k]));
            }
        }
    }
    acc
}

/// Check an isotropy certificate; when `expected` Gram matrices are given
/// (written in the certificate's tower) the certificate's forms must match.
pub fn verify_isotropy_json(cert: &Value, expected: Option<&[Vec<Vec<Elem>>]>) -> Result<Report> {
    let t = serial::tower_from_json(serial::get(cert, "tower")?)?;
    let h = t.height();
    let base = serial::get_usize(cert, "base_levels")?;
    ensure!(base <= h, "base_levels {base} exceeds tower height {h}");
    if let Some(msg) = quadratic_levels(&t, base, h) {
        return Ok(Report::fail(msg));
    }
    let forms = serial::get(cert, "forms")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"forms\" must be a list".into()))?
        .iter()
        .map(|g| serial::matrix_from_json(&t, g))
        .collect::<Result<Vec<_>>>()?;
    let witness = serial::vec_from_json(&t, serial::get(cert, "witness")?)?;
    let claimed = get_u64(cert, "claimed_bound")?;
    let stated = get_u64(cert, "actual_degree")?;
    let r = forms.len();
    ensure!(r >= 1, "certificate has no forms");
    let n = witness.len();
    for (i, g) in forms.iter().enumerate() {
        ensure!(
            g.len() == n && g.iter().all(|row| row.len() == n),
            "form {i} is not a {n}x{n} matrix"
        );
        for a in 0..n {
            for b in 0..a {
                ensure!(g[a][b] == g[b][a], "form {i} is not symmetric at ({a},{b})");
            }
        }
    }
    if let Some(exp) = expected {
        ensure!(
            exp == forms.as_slice(),
            "certificate forms differ from the given system"
        );
    }
    ensure!(witness.iter().any(|x| !x.is_zero()), "witness is the zero vector");
    for (i, g) in forms.iter().enumerate() {
        let val = eval_gram(&t, g, &witness);
        ensure!(
            val.is_zero(),
            "form {i} evaluates to {} at the witness, not 0",
            short(&val)
        );
    }
    let actual = t.degree_between(base, h) as u64;
    ensure!(
        actual == stated,
        "stated actual_degree {stated} but the tower has degree {actual}"
    );
    let bound = pow2(r).unwrap_or(u64::MAX);
    ensure!(claimed <= bound, "claimed_bound {claimed} exceeds 2^{r}");
    ensure!(
        actual <= claimed,
        "degree {actual} exceeds claimed_bound {claimed}"
    );
    Ok(Report::pass(format!(
        "{r} forms vanish at the witness; degree {actual} <= {claimed}"
    )))
}

pub fn verify_split_json(cert: &Value) -> Result<Report> {
    let t = serial::tower_from_json(serial::get(cert, "tower")?)?;
    let h = t.height();
    let b = serial::get_usize(cert, "base_levels")?;
    let m = serial::get_usize(cert, "two_part_levels")?;
    let k = serial::get_usize(cert, "field_levels")?;
    ensure!(
        b + m <= k && k <= h,
        "inconsistent levels: base {b}, 2-part {m}, field {k}, height {h}"
    );
    if let Some(msg) = quadratic_levels(&t, b, b + m) {
        return Ok(Report::fail(msg));
    }
    if let Some(msg) = quadratic_levels(&t, k, h) {
        return Ok(Report::fail(msg));
    }
    let q = serial::get(cert, "quaternion")?;
    let kind = serial::get(q, "presentation")?.as_str().unwrap_or_default();
    let e = |key: &str| serial::elem_from_json(&t, serial::get(q, key)?);
    let (u, v) = match kind {
        "standard" => (e("u")?, e("v")?),
        "bracket" => {
            let (a, bb) = (e("a")?, e("b")?);
            (&Elem::one() + &t.mul(&Elem::int(4), &a), bb)
        }
        other => return Err(Error::Parse(format!("unknown presentation {other:?}"))),
    };
    ensure!(
        u.level() <= k && v.level() <= k,
        "quaternion is not defined over the field K"
    );
    ensure!(!u.is_zero() && !v.is_zero(), "degenerate quaternion presentation");
    let w = serial::vec_from_json(&t, serial::get(cert, "witness")?)?;
    ensure!(w.len() == 4, "witness has {} entries, expected 4", w.len());
    ensure!(w.iter().any(|x| !x.is_zero()), "witness is the zero vector");
    let sq = |x: &Elem| t.square(x);
    let norm = &(&(&sq(&w[0]) - &t.mul(&u, &sq(&w[1]))) - &t.mul(&v, &sq(&w[2])))
        + &t.mul(&t.mul(&u, &v), &sq(&w[3]));
    ensure!(
        norm.is_zero(),
        "reduced norm at the witness is {}, not 0",
        short(&norm)
    );
    let kf = t.degree_between(b, k);
    let degree = (t.degree_between(b, b + m) * t.degree_between(k, h)) as u64;
    let stated = get_u64(cert, "degree_over_F")?;
    let claimed = get_u64(cert, "claimed_bound")?;
    ensure!(
        degree == stated,
        "stated degree_over_F {stated} but the tower gives {degree}"
    );
    let bound = pow2(kf).unwrap_or(u64::MAX);
    ensure!(
        claimed <= bound,
        "claimed_bound {claimed} exceeds 2^[K:F] = 2^{kf}"
    );
    ensure!(
        degree <= claimed,
        "degree {degree} exceeds claimed_bound {claimed}"
    );
    Ok(Report::pass(format!(
        "reduced norm vanishes; [F':F] = {degree} <= {claimed} with [K:F] = {kf}"
    )))
}
