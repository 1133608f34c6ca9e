//! Finite-dimensional algebras given by structure constants.
//!
//! `e_i·e_j = Σ_k c_ijk e_k`, stored sparsely as one list of `(k, c_ijk)`
//! per pair `(i, j)`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quaternion::{Presentation, QuaternionAlgebra};
use crate::serial;
use crate::tower::{Elem, Tower};

pub type SparseVec = Vec<(usize, Elem)>;

/// Sum sparse terms, dropping zeros; output sorted by index.
pub fn accumulate(t: &Tower, terms: impl IntoIterator<Item = (usize, Elem)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let e = acc.entry(k).or_insert_with(Elem::zero);
        *e = t.add(e, &c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn to_dense(v: &SparseVec, dim: usize) -> Vec<Elem> {
    let mut out = vec![Elem::zero(); dim];
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

pub fn to_sparse(v: &[Elem]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Tower,
    dim: usize,
    table: Vec<SparseVec>,
    unit: Vec<Elem>,
}

impl Algebra {
    /// `table[i·dim + j]` holds the product `e_i·e_j`.
    pub fn new(field: &Tower, dim: usize, table: Vec<SparseVec>, unit: Vec<Elem>) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: table.len(),
            });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: unit.len(),
            });
        }
        let mut clean = Vec::with_capacity(table.len());
        for entry in table {
            if let Some((k, _)) = entry.iter().find(|(k, _)| *k >= dim) {
                return Err(Error::Parse(format!("basis index {k} out of range")));
            }
            for (_, c) in &entry {
                field.check(c)?;
            }
            clean.push(accumulate(field, entry));
        }
        Ok(Algebra {
            field: field.clone(),
            dim,
            table: clean,
            unit,
        })
    }

    pub fn from_dense(field: &Tower, constants: &[Vec<Vec<Elem>>], unit: Vec<Elem>) -> Result<Self> {
        let dim = constants.len();
        let mut table = Vec::with_capacity(dim * dim);
        for row in constants {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                table.push(to_sparse(v));
            }
        }
        Algebra::new(field, dim, table, unit)
    }

    pub fn field(&self) -> &Tower {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn dense_constants(&self) -> Vec<Vec<Vec<Elem>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| to_dense(self.product(i, j), self.dim))
                    .collect()
            })
            .collect()
    }

    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let t = &self.field;
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = t.mul(a, b);
                for (k, c) in self.product(*i, *j) {
                    terms.push((*k, t.mul(&ab, c)));
                }
            }
        }
        accumulate(t, terms)
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        to_dense(&self.mul_sparse(&to_sparse(x), &to_sparse(y)), self.dim)
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` for every basis triple.
    pub fn is_associative(&self) -> bool {
        let basis = |i: usize| vec![(i, Elem::one())];
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let ij = self.product(i, j);
                (0..self.dim).all(|k| {
                    let left = self.mul_sparse(ij, &basis(k));
                    let right = self.mul_sparse(&basis(i), self.product(j, k));
                    left == right
                })
            })
        })
    }

    /// The stored unit is a two-sided identity.
    pub fn unit_is_identity(&self) -> bool {
        let u = to_sparse(&self.unit);
        (0..self.dim).all(|i| {
            let e = vec![(i, Elem::one())];
            self.mul_sparse(&u, &e) == e && self.mul_sparse(&e, &u) == e
        })
    }

    /// Apply `f` to every structure constant (same basis and unit).
    pub fn map_constants(&self, field: &Tower, f: impl Fn(&Elem) -> Elem) -> Algebra {
        let table = self
            .table
            .iter()
            .map(|v| accumulate(field, v.iter().map(|(k, c)| (*k, f(c)))))
            .collect();
        Algebra {
            field: field.clone(),
            dim: self.dim,
            table,
            unit: self.unit.iter().map(&f).collect(),
        }
    }

    /// `2×2` matrices in the basis `E11, E12, E21, E22`.
    pub fn matrix_units_2(field: &Tower) -> Algebra {
        let idx = |a: usize, b: usize| 2 * a + b;
        let mut table = vec![Vec::new(); 16];
        for a in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    table[idx(a, b) * 4 + idx(b, d)] = vec![(idx(a, d), Elem::one())];
                }
            }
        }
        let unit = vec![Elem::one(), Elem::zero(), Elem::zero(), Elem::one()];
        Algebra::new(field, 4, table, unit).expect("valid matrix units")
    }

    /// Is this exactly the table of [`Algebra::matrix_units_2`]?
    pub fn is_matrix_units_2(&self) -> bool {
        let m = Algebra::matrix_units_2(&self.field);
        self.dim == 4 && self.table == m.table && self.unit == m.unit
    }

    /// A quaternion algebra in the basis of its presentation: `1, I, J, IJ`
    /// for `(u, v)` and `1, i, j, ij` for `[a, b)`.
    pub fn quaternion(q: &QuaternionAlgebra) -> Algebra {
        let t = q.field();
        let one = Elem::one();
        let m = |x: &Elem, y: &Elem| t.mul(x, y);
        let table: Vec<SparseVec> = match q.presentation() {
            Presentation::Standard { u, v } => {
                let uv = m(u, v);
                vec![
                    vec![(0, one.clone())],
                    vec![(1, one.clone())],
                    vec![(2, one.clone())],
                    vec![(3, one.clone())],
                    vec![(1, one.clone())],
                    vec![(0, u.clone())],
                    vec![(3, one.clone())],
                    vec![(2, u.clone())],
                    vec![(2, one.clone())],
                    vec![(3, -&one)],
                    vec![(0, v.clone())],
                    vec![(1, -v)],
                    vec![(3, one.clone())],
                    vec![(2, -u)],
                    vec![(1, v.clone())],
                    vec![(0, -&uv)],
                ]
            }
            Presentation::Bracket { a, b } => {
                let ab = m(a, b);
                vec![
                    vec![(0, one.clone())],
                    vec![(1, one.clone())],
                    vec![(2, one.clone())],
                    vec![(3, one.clone())],
                    vec![(1, one.clone())],
                    vec![(0, a.clone()), (1, one.clone())],
                    vec![(3, one.clone())],
                    vec![(2, a.clone()), (3, one.clone())],
                    vec![(2, one.clone())],
                    vec![(2, one.clone()), (3, -&one)],
                    vec![(0, b.clone())],
                    vec![(0, b.clone()), (1, -b)],
                    vec![(3, one.clone())],
                    vec![(2, -a)],
                    vec![(1, b.clone())],
                    vec![(0, -&ab)],
                ]
            }
        };
        let unit = vec![one, Elem::zero(), Elem::zero(), Elem::zero()];
        Algebra::new(t, 4, table, unit).expect("valid quaternion table")
    }

    /// Kronecker product `self ⊗ other` over the same field; basis index
    /// `i + dim(self)·j` for `e_i ⊗ f_j`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        let (n, m) = (self.dim, other.dim);
        if n * m > crate::corestriction::MAX_DIM {
            return Err(Error::TooLarge(n * m));
        }
        let t = &self.field;
        let mut table = Vec::with_capacity(n * m * n * m);
        for p in 0..n * m {
            for q in 0..n * m {
                let (i1, j1) = (p % n, p / n);
                let (i2, j2) = (q % n, q / n);
                let mut terms = Vec::new();
                for (k, a) in self.product(i1, i2) {
                    for (l, b) in other.product(j1, j2) {
                        terms.push((k + n * l, t.mul(a, b)));
                    }
                }
                table.push(accumulate(t, terms));
            }
        }
        let mut unit = vec![Elem::zero(); n * m];
        for (i, a) in self.unit.iter().enumerate() {
            for (j, b) in other.unit.iter().enumerate() {
                unit[i + n * j] = t.mul(a, b);
            }
        }
        Algebra::new(t, n * m, table, unit)
    }

    pub fn to_json(&self) -> Value {
        let t = &self.field;
        let h = t.height();
        let constants: Vec<Value> = self
            .dense_constants()
            .iter()
            .map(|m| serial::matrix_to_json(t, m, h))
            .collect();
        json!({
            "dim": self.dim,
            "constants": constants,
            "unit": serial::vec_to_json(t, &self.unit, h),
            "field": serial::tower_to_json(t),
        })
    }

    pub fn from_json(v: &Value) -> Result<Algebra> {
        let t = match v.get("field") {
            Some(f) => serial::tower_from_json(f)?,
            None => Tower::rationals(),
        };
        let dim = serial::get_usize(v, "dim")?;
        if dim > crate::corestriction::MAX_DIM {
            return Err(Error::TooLarge(dim));
        }
        let constants = serial::get(v, "constants")?
            .as_array()
            .ok_or_else(|| Error::Parse("\"constants\" must be a list".into()))?
            .iter()
            .map(|m| serial::matrix_from_json(&t, m))
            .collect::<Result<Vec<_>>>()?;
        if constants.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: constants.len(),
            });
        }
        let unit = serial::vec_from_json(&t, serial::get(v, "unit")?)?;
        Algebra::from_dense(&t, &constants, unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units() {
        let m = Algebra::matrix_units_2(&Tower::rationals());
        assert!(m.is_associative());
        assert!(m.unit_is_identity());
        assert!(m.is_matrix_units_2());
    }

    #[test]
    fn quaternion_tables_are_associative() {
        let t = Tower::from_int_minpolys(&[&[-2, 0, 1]]).unwrap();
        let std = QuaternionAlgebra::standard(&t, Elem::int(-1), t.gen(1)).unwrap();
        let a = Algebra::quaternion(&std);
        assert!(a.is_associative() && a.unit_is_identity());
        let br = QuaternionAlgebra::bracket(&t, Elem::frac(1, 3), &t.gen(1) + &Elem::one()).unwrap();
        let a = Algebra::quaternion(&br);
        assert!(a.is_associative() && a.unit_is_identity());
        // i² − i = a and ji = (1 − i)j.
        let i = vec![Elem::zero(), Elem::one(), Elem::zero(), Elem::zero()];
        let j = vec![Elem::zero(), Elem::zero(), Elem::one(), Elem::zero()];
        let ii = a.mul(&i, &i);
        assert_eq!(ii[0], Elem::frac(1, 3));
        assert_eq!(ii[1], Elem::one());
        let one_minus_i = vec![Elem::one(), Elem::int(-1), Elem::zero(), Elem::zero()];
        assert_eq!(a.mul(&j, &i), a.mul(&one_minus_i, &j));
    }

    #[test]
    fn tensor_products() {
        let q = Tower::rationals();
        let m = Algebra::matrix_units_2(&q);
        let m4 = m.tensor(&m).unwrap();
        assert_eq!(m4.dim(), 16);
        assert!(m4.is_associative());
        assert!(m4.unit_is_identity());
    }

    #[test]
    fn json_round_trip() {
        let t = Tower::from_int_minpolys(&[&[-2, 0, 1]]).unwrap();
        let a = Algebra::quaternion(&QuaternionAlgebra::standard(&t, Elem::int(-1), t.gen(1)).unwrap());
        let j = a.to_json();
        assert_eq!(Algebra::from_json(&j).unwrap(), a);
    }
}
