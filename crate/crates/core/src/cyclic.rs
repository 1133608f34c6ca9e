//! Cyclic extensions `K/F` with a chosen generator `σ` of the Galois group.
//!
//! `K` is level `k` of a tower and `F` is level `k − 1`. `σ` is stored as
//! its matrix on the power basis `1, θ, …, θ^{r−1}` of `K/F`: column `j`
//! holds the coordinates of `σ(θ^j)`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::serial;
use crate::tower::{Elem, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicExtension {
    tower: Tower,
    level: usize,
    sigma: Matrix,
    /// `σ(θ)^j` for `j < r`.
    image_powers: Vec<Elem>,
}

impl CyclicExtension {
    /// Validate `sigma` as the matrix of an automorphism of exact order
    /// `[K:F]` fixing `F`.
    pub fn new(tower: &Tower, level: usize, sigma: Matrix) -> Result<Self> {
        let r = check_level(tower, level)?;
        if sigma.len() != r || sigma.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidCyclic(format!("sigma must be a {r}x{r} matrix")));
        }
        for row in &sigma {
            for x in row {
                tower.check(x)?;
                if x.level() >= level {
                    return Err(Error::InvalidCyclic("sigma entries must lie in F".into()));
                }
            }
        }
        let col = |j: usize| -> Vec<Elem> { sigma.iter().map(|row| row[j].clone()).collect() };
        let image = if r > 1 {
            linalg::from_coords(tower, &col(1), level - 1, level)
        } else {
            tower.gen(level)
        };
        let c = CyclicExtension::from_image(tower, level, &image)?;
        for j in 0..r {
            if col(j) != c.sigma.iter().map(|row| row[j].clone()).collect::<Vec<_>>() {
                return Err(Error::InvalidCyclic(format!(
                    "column {j} is not the image of theta^{j}"
                )));
            }
        }
        Ok(c)
    }

    /// The automorphism with `σ(θ) = image`.
    pub fn from_image(tower: &Tower, level: usize, image: &Elem) -> Result<Self> {
        let r = check_level(tower, level)?;
        tower.check(image)?;
        if image.level() > level {
            return Err(Error::InvalidCyclic("image of theta must lie in K".into()));
        }
        let m = &tower.level(level).minpoly;
        let mut acc = Elem::zero();
        for c in m.iter().rev() {
            acc = &tower.mul(&acc, image) + c;
        }
        if !acc.is_zero() {
            return Err(Error::InvalidCyclic(
                "image of theta is not a root of its minimal polynomial".into(),
            ));
        }
        let mut image_powers = vec![Elem::one()];
        for j in 1..r {
            image_powers.push(tower.mul(&image_powers[j - 1], image));
        }
        let cols: Vec<Vec<Elem>> = image_powers
            .iter()
            .map(|p| linalg::coords_over(tower, p, level - 1, level))
            .collect();
        let sigma = linalg::transpose(&cols);
        let c = CyclicExtension {
            tower: tower.clone(),
            level,
            sigma,
            image_powers,
        };
        // Exact order r: σ^j(θ) ≠ θ for 0 < j < r and σ^r(θ) = θ.
        let theta = tower.gen(level);
        let mut x = theta.clone();
        for j in 1..=r {
            x = c.apply(&x);
            if (x == theta) != (j == r) {
                return Err(Error::InvalidCyclic(format!(
                    "sigma does not have order {r} (sigma^{j} fixes theta: {})",
                    x == theta
                )));
            }
        }
        Ok(c)
    }

    /// `Q(√d)` with `σ(√d) = −√d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        let t = Tower::from_int_minpolys(&[&[-d, 0, 1]])?;
        CyclicExtension::from_image(&t, 1, &-&t.gen(1))
    }

    /// `Q(α)` with `α³ + α² − 2α − 1 = 0` (the real subfield of the 7th
    /// cyclotomic field, `α = 2cos(2π/7)`), and `σ(α) = α² − 2`.
    pub fn cyclic_cubic() -> Result<Self> {
        let t = Tower::from_int_minpolys(&[&[-1, -2, 1, 1]])?;
        let a = t.gen(1);
        CyclicExtension::from_image(&t, 1, &(&t.square(&a) - &Elem::int(2)))
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Tower level of `K`.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn order(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    /// `σ(x)` for `x ∈ K`.
    pub fn apply(&self, x: &Elem) -> Elem {
        assert!(x.level() <= self.level, "element lies above K");
        if x.level() < self.level {
            return x.clone();
        }
        let r = self.order();
        let mut acc = Elem::zero();
        for (c, p) in x.coeffs_at(self.level, r).iter().zip(&self.image_powers) {
            if !c.is_zero() {
                acc = &acc + &self.tower.mul(c, p);
            }
        }
        acc
    }

    /// `σ^j(x)`; negative `j` is taken modulo the order.
    pub fn apply_pow(&self, x: &Elem, j: i64) -> Elem {
        let r = self.order() as i64;
        let mut y = x.clone();
        for _ in 0..j.rem_euclid(r) {
            y = self.apply(&y);
        }
        y
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": serial::tower_to_json(&self.tower),
            "level": self.level,
            "sigma": serial::matrix_to_json(&self.tower, &self.sigma, self.level - 1),
        })
    }

    /// Either a full description or `{"preset": name}` with a name accepted
    /// by [`CyclicExtension::preset`].
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(p) = v.get("preset") {
            let name = p
                .as_str()
                .ok_or_else(|| Error::Parse("\"preset\" must be a string".into()))?;
            return CyclicExtension::preset(name);
        }
        let t = serial::tower_from_json(serial::get(v, "field")?)?;
        let level = serial::get_usize(v, "level")?;
        let sigma = serial::matrix_from_json(&t, serial::get(v, "sigma")?)?;
        CyclicExtension::new(&t, level, sigma)
    }

    /// `"sqrt<d>"` for `Q(√d)` (e.g. `sqrt2`, `sqrt-1`) or `"cubic7"`.
    pub fn preset(name: &str) -> Result<Self> {
        if name == "cubic7" {
            return CyclicExtension::cyclic_cubic();
        }
        if let Some(d) = name.strip_prefix("sqrt").and_then(|d| d.parse::<i64>().ok()) {
            return CyclicExtension::quadratic(d);
        }
        Err(Error::Parse(format!("unknown cyclic extension preset {name:?}")))
    }
}

fn check_level(tower: &Tower, level: usize) -> Result<usize> {
    if level == 0 || level > tower.height() {
        return Err(Error::LevelOutOfRange {
            found: level,
            height: tower.height(),
        });
    }
    Ok(tower.degree_of(level))
}
