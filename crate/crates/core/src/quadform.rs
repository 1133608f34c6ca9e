//! Quadratic forms over tower fields, given by symmetric Gram matrices.
//!
//! In characteristic 0 a form is `φ(x) = xᵀ·G·x`, and its polar bilinear
//! form is `b(x, y) = φ(x+y) − φ(x) − φ(y) = 2·xᵀ·G·y`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::tower::{Elem, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Matrix,
}

impl QuadraticForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Precondition("a form needs dimension at least 1".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Precondition("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { gram })
    }

    /// The diagonal form `⟨a₁, …, a_n⟩`.
    pub fn diagonal(entries: &[Elem]) -> Result<Self> {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { Elem::zero() })
                    .collect()
            })
            .collect();
        QuadraticForm::new(gram)
    }

    pub fn from_int_gram(rows: &[&[i64]]) -> Result<Self> {
        QuadraticForm::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Elem::int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.gram[i][j]
    }

    /// `xᵀ·G·y`, half the polar form.
    pub fn half_polar(&self, t: &Tower, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(linalg::dot(t, x, &linalg::mat_vec(t, &self.gram, y)))
    }

    pub fn evaluate(&self, t: &Tower, x: &[Elem]) -> Result<Elem> {
        self.half_polar(t, x, x)
    }

    fn check_dim(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// The form pulled back along the columns `basis`: Gram `Bᵀ·G·B`.
    pub fn restrict(&self, t: &Tower, basis: &[Vec<Elem>]) -> Result<QuadraticForm> {
        let gb: Vec<Vec<Elem>> = basis.iter().map(|b| linalg::mat_vec(t, &self.gram, b)).collect();
        let m = basis.len();
        let mut gram = vec![vec![Elem::zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let x = linalg::dot(t, &basis[i], &gb[j]);
                gram[j][i] = x.clone();
                gram[i][j] = x;
            }
        }
        QuadraticForm::new(gram)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, t: &Tower, a: &Elem, other: &QuadraticForm, b: &Elem) -> QuadraticForm {
        let gram = self
            .gram
            .iter()
            .zip(&other.gram)
            .map(|(r, s)| {
                r.iter()
                    .zip(s)
                    .map(|(x, y)| &t.mul(a, x) + &t.mul(b, y))
                    .collect()
            })
            .collect();
        QuadraticForm { gram }
    }

    pub fn map_entries(&self, f: impl Fn(&Elem) -> Elem) -> QuadraticForm {
        QuadraticForm {
            gram: self.gram.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFSystem {
    forms: Vec<QuadraticForm>,
}

impl QFSystem {
    pub fn new(forms: Vec<QuadraticForm>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Precondition("a system needs at least one form".into()));
        };
        let n = first.dim();
        if let Some(f) = forms.iter().find(|f| f.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.dim(),
            });
        }
        Ok(QFSystem { forms })
    }

    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.forms[0].dim()
    }

    pub fn evaluate(&self, t: &Tower, x: &[Elem]) -> Result<Vec<Elem>> {
        self.forms.iter().map(|f| f.evaluate(t, x)).collect()
    }

    pub fn map_entries(&self, f: impl Fn(&Elem) -> Elem) -> QFSystem {
        QFSystem {
            forms: self.forms.iter().map(|q| q.map_entries(&f)).collect(),
        }
    }
}

/// Diagonalization by symmetric Gaussian elimination.
///
/// Returns `(diag, basis)` with `basis` a list of columns `b_j` such that
/// `b_iᵀ·G·b_j` is `diag[i]` on the diagonal and 0 elsewhere.
pub fn diagonalize(t: &Tower, form: &QuadraticForm) -> Result<(Vec<Elem>, Matrix)> {
    let n = form.dim();
    let mut g = form.gram.clone();
    let mut basis: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Elem::one() } else { Elem::zero() })
                .collect()
        })
        .collect();
    for i in 0..n {
        if g[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !g[j][j].is_zero()) {
                swap_sym(&mut g, &mut basis, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !g[i][j].is_zero()) {
                // φ(b_i + b_j) = 2·g_ij when both diagonal entries vanish.
                add_sym(t, &mut g, &mut basis, i, j, &Elem::one());
            } else {
                continue;
            }
        }
        let inv = t.inv(&g[i][i])?;
        for j in i + 1..n {
            if !g[i][j].is_zero() {
                let f = -&t.mul(&g[i][j], &inv);
                add_sym(t, &mut g, &mut basis, j, i, &f);
            }
        }
    }
    Ok(((0..n).map(|i| g[i][i].clone()).collect(), basis))
}

fn swap_sym(g: &mut Matrix, basis: &mut Matrix, i: usize, j: usize) {
    g.swap(i, j);
    for row in g.iter_mut() {
        row.swap(i, j);
    }
    basis.swap(i, j);
}

/// `b_dst ← b_dst + f·b_src`, applied to the Gram matrix by congruence.
fn add_sym(t: &Tower, g: &mut Matrix, basis: &mut Matrix, dst: usize, src: usize, f: &Elem) {
    let n = g.len();
    for k in 0..n {
        let x = &g[k][dst] + &t.mul(f, &g[k][src]);
        g[k][dst] = x;
    }
    for k in 0..n {
        let x = &g[dst][k] + &t.mul(f, &g[src][k]);
        g[dst][k] = x;
    }
    let src_vec = basis[src].clone();
    for (x, y) in basis[dst].iter_mut().zip(&src_vec) {
        *x = &*x + &t.mul(f, y);
    }
}

/// Reorder so that the last form is nonzero at `v`, then replace every other
/// `φ_i` by `a_r·φ_i − a_i·φ_r` where `a_i = φ_i(v)`. The mixed system has
/// the same common zeros as the original over every extension.
pub fn mix_forms(t: &Tower, system: &QFSystem, v: &[Elem]) -> Result<QFSystem> {
    let values = system.evaluate(t, v)?;
    let Some(last) = values.iter().rposition(|a| !a.is_zero()) else {
        return Err(Error::AllVanish);
    };
    let r = system.len();
    let mut forms = system.forms.clone();
    let mut values = values;
    forms.swap(last, r - 1);
    values.swap(last, r - 1);
    let (phi_r, a_r) = (forms[r - 1].clone(), values[r - 1].clone());
    for i in 0..r - 1 {
        if !values[i].is_zero() {
            forms[i] = forms[i].combine(t, &a_r, &phi_r, &-&values[i]);
        }
    }
    QFSystem::new(forms)
}

/// For a mixed system (every form but the last vanishes at `v`), the space
/// `W = {x : b_i(x, v) = 0 for i < r}` and a complement of `v` inside it.
pub fn orthogonal_intersection(t: &Tower, system: &QFSystem, v: &[Elem]) -> Result<(Matrix, Matrix)> {
    let n = system.dim();
    let r = system.len();
    let rows: Matrix = system.forms[..r - 1]
        .iter()
        .map(|f| linalg::mat_vec(t, &f.gram, v))
        .collect();
    let w = if rows.is_empty() {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Elem::one() } else { Elem::zero() })
                    .collect()
            })
            .collect()
    } else {
        linalg::nullspace(t, &rows, n)?
    };
    let complement = linalg::extend_basis(t, &[v.to_vec()], &w)?;
    Ok((w, complement))
}

/// An F-basis `(α_0, …, α_{r−1})` of a level `K = L_hi` over `F = L_lo`
/// together with its dual coordinate maps `s_i`.
#[derive(Clone, Debug)]
pub struct LinearFunctionalBasis {
    pub lo: usize,
    pub hi: usize,
    pub basis: Vec<Elem>,
    /// Rows map monomial coordinates over `F` to coordinates in `basis`.
    to_basis: Matrix,
}

impl LinearFunctionalBasis {
    pub fn new(t: &Tower, basis: Vec<Elem>, lo: usize, hi: usize) -> Result<Self> {
        let n = t.degree_between(lo, hi);
        if basis.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis.len(),
            });
        }
        let cols: Matrix = basis.iter().map(|a| linalg::coords_over(t, a, lo, hi)).collect();
        let to_basis = linalg::inverse(t, &linalg::transpose(&cols))?;
        Ok(LinearFunctionalBasis {
            lo,
            hi,
            basis,
            to_basis,
        })
    }

    /// The monomial basis of `hi` over `lo`.
    pub fn monomial(t: &Tower, lo: usize, hi: usize) -> Result<Self> {
        LinearFunctionalBasis::new(t, linalg::monomial_basis(t, lo, hi), lo, hi)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `(s_0(x), …, s_{r−1}(x))`.
    pub fn coordinates(&self, t: &Tower, x: &Elem) -> Vec<Elem> {
        linalg::mat_vec(t, &self.to_basis, &linalg::coords_over(t, x, self.lo, self.hi))
    }
}

/// Transfer `φ` over `K` to forms `s_i∘φ` over `F` for the selected `i`.
///
/// Variable `l·r + i` of the output is the coefficient of `α_i` in the
/// `l`-th coordinate, so `x ∈ F^{nr}` corresponds to the vector with entries
/// `Σ_i x_{l·r+i}·α_i` in `K^n`.
pub fn transfer_system(
    t: &Tower,
    form: &QuadraticForm,
    basis: &LinearFunctionalBasis,
    indices: &BTreeSet<usize>,
) -> Result<QFSystem> {
    let n = form.dim();
    let r = basis.len();
    if let Some(&bad) = indices.iter().find(|&&i| i >= r) {
        return Err(Error::Precondition(format!(
            "functional index {bad} out of range"
        )));
    }
    let products: Vec<Vec<Elem>> = (0..r)
        .map(|i| (0..r).map(|j| t.mul(&basis.basis[i], &basis.basis[j])).collect())
        .collect();
    let mut grams: Vec<Matrix> = vec![vec![vec![Elem::zero(); n * r]; n * r]; indices.len()];
    for l in 0..n {
        for m in l..n {
            let g = form.entry(l, m);
            if g.is_zero() {
                continue;
            }
            for i in 0..r {
                for j in 0..r {
                    let coords = basis.coordinates(t, &t.mul(g, &products[i][j]));
                    for (slot, &k) in indices.iter().enumerate() {
                        grams[slot][l * r + i][m * r + j] = coords[k].clone();
                        grams[slot][m * r + j][l * r + i] = coords[k].clone();
                    }
                }
            }
        }
    }
    QFSystem::new(
        grams
            .into_iter()
            .map(QuadraticForm::new)
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Lift `x ∈ F^{nr}` from [`transfer_system`] coordinates to `K^n`.
pub fn lift_transferred(t: &Tower, basis: &LinearFunctionalBasis, x: &[Elem]) -> Vec<Elem> {
    x.chunks(basis.len())
        .map(|chunk| linalg::dot(t, chunk, &basis.basis))
        .collect()
}
