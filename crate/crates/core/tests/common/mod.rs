//! Oracles shared by the integration tests. Nothing here calls into the
//! library's arithmetic: towers are embedded into the complex numbers by
//! numerically chosen roots, or evaluated exactly from their JSON form by
//! the small polynomial code in [`exact`].
#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::ToPrimitive;
use quatsplit::{Elem, Tower, Q};

/// Relative tolerance for numeric zero tests.
pub const REL_TOL: f64 = 1e-6;

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Roots of `Σ c_i X^i` (leading coefficient last) by Aberth iteration.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// A complex embedding of a tower: one chosen root per level.
pub struct Embedding {
    tower: Tower,
    roots: Vec<Complex64>,
}

impl Embedding {
    /// Uses the first root found at every level; any root of an irreducible
    /// minimal polynomial gives an embedding.
    pub fn new(tower: &Tower) -> Embedding {
        Embedding::with_choice(tower, |_| 0)
    }

    pub fn with_choice(tower: &Tower, choose: impl Fn(usize) -> usize) -> Embedding {
        let mut e = Embedding {
            tower: tower.truncate(0),
            roots: Vec::new(),
        };
        for k in 1..=tower.height() {
            e.tower = tower.truncate(k);
            let m: Vec<Complex64> = tower.level(k).minpoly.iter().map(|c| e.eval(c)).collect();
            let roots = poly_roots(&m);
            e.roots.push(roots[choose(k) % roots.len()]);
        }
        e
    }

    pub fn root(&self, k: usize) -> Complex64 {
        self.roots[k - 1]
    }

    pub fn eval(&self, x: &Elem) -> Complex64 {
        let k = x.level();
        if k == 0 {
            return Complex64::new(q_to_f64(x.as_rational().unwrap()), 0.0);
        }
        let theta = self.roots[k - 1];
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (0..self.tower.degree_of(k)).rev() {
            acc = acc * theta + self.eval(&x.coeff(k, i));
        }
        acc
    }

    /// Like [`Embedding::eval`] but also returns the sum of absolute values
    /// of the terms, as a scale for relative comparisons.
    pub fn eval_scaled(&self, x: &Elem) -> (Complex64, f64) {
        let k = x.level();
        if k == 0 {
            let v = q_to_f64(x.as_rational().unwrap());
            return (Complex64::new(v, 0.0), v.abs());
        }
        let theta = self.roots[k - 1];
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for i in 0..self.tower.degree_of(k) {
            let (v, s) = self.eval_scaled(&x.coeff(k, i));
            let p = theta.powu(i as u32);
            acc += v * p;
            scale += s * p.norm();
        }
        (acc, scale)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numeric {
    Zero,
    NonZero,
    /// Overflow or non-finite intermediate values.
    Inconclusive,
}

/// Decide whether `value` is zero relative to `scale`.
pub fn classify(value: Complex64, scale: f64) -> Numeric {
    if !value.re.is_finite() || !value.im.is_finite() || !scale.is_finite() {
        return Numeric::Inconclusive;
    }
    if value.norm() <= REL_TOL * scale.max(1e-300) || value.norm() == 0.0 {
        Numeric::Zero
    } else {
        Numeric::NonZero
    }
}

/// `xᵀ G x` for a rational Gram matrix at a vector of embedded tower
/// elements, classified against the sum of absolute term values.
pub fn form_at(gram: &[Vec<Q>], x: &[Complex64]) -> Numeric {
    let mut v = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let term = x[i] * x[j] * q_to_f64(g);
            v += term;
            scale += term.norm();
        }
    }
    classify(v, scale)
}

pub fn elem_is_zero(e: &Embedding, x: &Elem) -> Numeric {
    let (v, s) = e.eval_scaled(x);
    classify(v, s)
}

/// Rational Gram matrices from integer rows.
pub fn gram_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect()
}

/// The rational Gram matrix of a form whose entries are rational.
pub fn rational_gram(gram: &[Vec<Elem>]) -> Vec<Vec<Q>> {
    gram.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.as_rational().expect("rational entry").clone())
                .collect()
        })
        .collect()
}

/// Exact arithmetic straight from certificate JSON, independent of the
/// library's tower code: an element of level `k` is a list of `d_k`
/// elements of level `k − 1`, rationals are strings.
pub mod exact {
    use num_traits::Zero;
    use quatsplit::Q;
    use serde_json::Value;

    #[derive(Clone, Debug, PartialEq)]
    pub enum Nested {
        Leaf(Q),
        Node(Vec<Nested>),
    }

    pub fn parse(v: &Value) -> Nested {
        match v {
            Value::String(s) => Nested::Leaf(s.parse::<Q>().expect("rational")),
            Value::Array(xs) => Nested::Node(xs.iter().map(parse).collect()),
            other => panic!("unexpected element {other}"),
        }
    }

    pub struct ExactTower {
        /// Monic minimal polynomials, lowest degree first; level `k` has
        /// coefficients of level `k − 1`.
        minpolys: Vec<Vec<Nested>>,
    }

    impl ExactTower {
        pub fn from_json(v: &Value) -> ExactTower {
            let minpolys = v
                .as_array()
                .expect("tower")
                .iter()
                .map(|lv| lv["minpoly"].as_array().unwrap().iter().map(parse).collect())
                .collect();
            ExactTower { minpolys }
        }

        pub fn height(&self) -> usize {
            self.minpolys.len()
        }

        fn degree(&self, k: usize) -> usize {
            self.minpolys[k - 1].len() - 1
        }

        pub fn zero(&self, k: usize) -> Nested {
            if k == 0 {
                Nested::Leaf(Q::zero())
            } else {
                Nested::Node(vec![self.zero(k - 1); self.degree(k)])
            }
        }

        pub fn is_zero(&self, x: &Nested) -> bool {
            match x {
                Nested::Leaf(q) => q.is_zero(),
                Nested::Node(xs) => xs.iter().all(|c| self.is_zero(c)),
            }
        }

        pub fn add(&self, a: &Nested, b: &Nested) -> Nested {
            match (a, b) {
                (Nested::Leaf(x), Nested::Leaf(y)) => Nested::Leaf(x + y),
                (Nested::Node(xs), Nested::Node(ys)) => {
                    Nested::Node(xs.iter().zip(ys).map(|(x, y)| self.add(x, y)).collect())
                }
                _ => panic!("level mismatch"),
            }
        }

        fn neg(&self, a: &Nested) -> Nested {
            match a {
                Nested::Leaf(x) => Nested::Leaf(-x),
                Nested::Node(xs) => Nested::Node(xs.iter().map(|x| self.neg(x)).collect()),
            }
        }

        /// Product at level `k`: schoolbook, then reduction by the monic
        /// minimal polynomial from the top degree down.
        pub fn mul(&self, a: &Nested, b: &Nested, k: usize) -> Nested {
            match (a, b) {
                (Nested::Leaf(x), Nested::Leaf(y)) => Nested::Leaf(x * y),
                (Nested::Node(xs), Nested::Node(ys)) => {
                    let d = self.degree(k);
                    let mut prod = vec![self.zero(k - 1); 2 * d - 1];
                    for (i, x) in xs.iter().enumerate() {
                        for (j, y) in ys.iter().enumerate() {
                            prod[i + j] = self.add(&prod[i + j], &self.mul(x, y, k - 1));
                        }
                    }
                    let m = &self.minpolys[k - 1];
                    for top in (d..prod.len()).rev() {
                        let c = prod[top].clone();
                        for j in 0..d {
                            let t = self.mul(&c, &m[j], k - 1);
                            prod[top - d + j] = self.add(&prod[top - d + j], &self.neg(&t));
                        }
                    }
                    prod.truncate(d);
                    Nested::Node(prod)
                }
                _ => panic!("level mismatch"),
            }
        }

        /// `xᵀ G x` at the top level.
        pub fn form(&self, gram: &[Vec<Nested>], x: &[Nested]) -> Nested {
            let h = self.height();
            let mut acc = self.zero(h);
            for (i, row) in gram.iter().enumerate() {
                for (j, g) in row.iter().enumerate() {
                    let t = self.mul(&self.mul(g, &x[i], h), &x[j], h);
                    acc = self.add(&acc, &t);
                }
            }
            acc
        }
    }

    pub fn matrix(v: &Value) -> Vec<Vec<Nested>> {
        v.as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(parse).collect())
            .collect()
    }

    pub fn vector(v: &Value) -> Vec<Nested> {
        v.as_array().unwrap().iter().map(parse).collect()
    }
}
