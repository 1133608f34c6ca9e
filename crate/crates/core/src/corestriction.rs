//! Corestriction of an algebra along a cyclic extension `K/F`.
//!
//! For `A` over `K` and `G = ⟨σ⟩` of order `r`, the tensor power
//! `A ⊗ σA ⊗ … ⊗ σ^{r−1}A` over `K` carries a semilinear `G`-action that
//! permutes the legs cyclically; its fixed points form an `F`-algebra of
//! dimension `(dim_K A)^r`, the corestriction.
//!
//! Basis index `I = Σ_l i_l·n^l` stands for `e_{i_0} ⊗ … ⊗ e_{i_{r−1}}`.
//! The leg `σ^l A` has the same basis as `A` and structure constants
//! `σ^{−l}(c_ijk)`. The generator acts by `T(λ·e_I) = σ(λ)·e_{sI}` where
//! `(sI)_l = i_{l+1}`; this is multiplicative for the conjugated constants
//! and generates the same group as the leg rotation in the other direction.

use serde_json::{json, Value};

use crate::algebra::{accumulate, to_dense, to_sparse, Algebra, SparseVec};
use crate::cyclic::CyclicExtension;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::serial;
use crate::sqrt::{self, SqrtResult};
use crate::tower::{Elem, Tower};

/// Largest algebra dimension we are prepared to build.
pub const MAX_DIM: usize = 4096;

/// Largest tensor power whose full multiplication table is materialized.
pub const MAX_TABLE_DIM: usize = 256;

pub const ASSOCIATIVITY_CHECK_DIM: usize = 64;

fn check_field(a: &Algebra, c: &CyclicExtension) -> Result<()> {
    if a.field() != c.tower() || c.level() != c.tower().height() {
        return Err(Error::Precondition(
            "the algebra must be defined over the top field K of the cyclic extension".into(),
        ));
    }
    Ok(())
}

/// `σ^j A`: the same basis with structure constants `σ^{−j}(c_ijk)`.
pub fn conjugate_algebra(a: &Algebra, c: &CyclicExtension, j: i64) -> Result<Algebra> {
    check_field(a, c)?;
    Ok(a.map_constants(a.field(), |x| c.apply_pow(x, -j)))
}

/// `A ⊗_K σA ⊗_K … ⊗_K σ^{r−1}A`, multiplied leg by leg on demand.
#[derive(Clone, Debug)]
pub struct TensorPower {
    field: Tower,
    legs: Vec<Algebra>,
    base_dim: usize,
    dim: usize,
}

pub fn tensor_power_over_k(a: &Algebra, c: &CyclicExtension) -> Result<TensorPower> {
    check_field(a, c)?;
    let r = c.order();
    let n = a.dim();
    let dim = (0..r).try_fold(1usize, |acc, _| acc.checked_mul(n).filter(|d| *d <= MAX_DIM));
    let dim = dim.ok_or(Error::TooLarge(n.saturating_pow(r as u32)))?;
    let legs = (0..r)
        .map(|l| conjugate_algebra(a, c, l as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(TensorPower {
        field: a.field().clone(),
        legs,
        base_dim: n,
        dim,
    })
}

impl TensorPower {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Tower {
        &self.field
    }

    pub fn legs(&self) -> &[Algebra] {
        &self.legs
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = Vec::with_capacity(self.legs.len());
        for _ in 0..self.legs.len() {
            d.push(idx % self.base_dim);
            idx /= self.base_dim;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.base_dim + d)
    }

    /// `(sI)_l = i_{l+1}`.
    pub fn shift(&self, idx: usize) -> usize {
        let mut d = self.digits(idx);
        d.rotate_left(1);
        self.index(&d)
    }

    /// `e_I · e_J`.
    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        let t = &self.field;
        let (di, dj) = (self.digits(i), self.digits(j));
        let mut acc: Vec<(usize, Elem)> = vec![(0, Elem::one())];
        let mut place = 1;
        for (l, leg) in self.legs.iter().enumerate() {
            let p = leg.product(di[l], dj[l]);
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for (k, a) in &acc {
                for (m, b) in p {
                    next.push((k + place * m, t.mul(a, b)));
                }
            }
            acc = next;
            place *= self.base_dim;
        }
        accumulate(t, acc)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let t = &self.field;
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = t.mul(a, b);
                for (k, c) in self.product(*i, *j) {
                    terms.push((k, t.mul(&ab, &c)));
                }
            }
        }
        accumulate(t, terms)
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn unit(&self) -> SparseVec {
        let t = &self.field;
        let mut acc: Vec<(usize, Elem)> = vec![(0, Elem::one())];
        let mut place = 1;
        for leg in &self.legs {
            let u = to_sparse(leg.unit());
            acc = acc
                .iter()
                .flat_map(|(k, a)| u.iter().map(move |(m, b)| (k + place * m, t.mul(a, b))))
                .collect();
            place *= self.base_dim;
        }
        accumulate(t, acc)
    }

    /// The full structure-constant table, for small powers only.
    pub fn to_algebra(&self) -> Result<Algebra> {
        if self.dim > MAX_TABLE_DIM {
            return Err(Error::TooLarge(self.dim));
        }
        let table = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.product(i, j))
            .collect();
        Algebra::new(&self.field, self.dim, table, to_dense(&self.unit(), self.dim))
    }
}

/// `T(Σ x_I e_I) = Σ σ(x_I) e_{sI}`.
pub fn g_action(tp: &TensorPower, c: &CyclicExtension, x: &SparseVec) -> SparseVec {
    accumulate(tp.field(), x.iter().map(|(i, a)| (tp.shift(*i), c.apply(a))))
}

/// An orbit `I_0, sI_0, …` of the leg rotation.
#[derive(Clone, Debug)]
struct Orbit {
    members: Vec<usize>,
    /// `F`-basis of the fixed field of `σ^len`.
    field_basis: Vec<Elem>,
    /// Coordinates of `field_basis` over `F`, as columns.
    field_matrix: Matrix,
    /// Position of this orbit's first vector in the fixed basis.
    offset: usize,
}

/// The corestriction with its embedding into the tensor power.
#[derive(Clone, Debug)]
pub struct CorResult {
    /// The tower truncated to `F`.
    pub field: Tower,
    /// Structure constants over `F` in the basis `fixed_basis`.
    pub algebra: Algebra,
    /// `F`-basis of the fixed points, as vectors in the tensor power.
    pub fixed_basis: Vec<SparseVec>,
    pub tensor: TensorPower,
    cyclic: CyclicExtension,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
}

/// Solve `T(x) = x` over `F`, one rotation orbit at a time: along an orbit
/// of length `ℓ` the coefficients are `σ^m(x_{I_0})` with `x_{I_0}` fixed by
/// `σ^ℓ`, so each orbit contributes `[K^{σ^ℓ} : F] = ℓ` dimensions.
pub fn fixed_subalgebra(tp: &TensorPower, c: &CyclicExtension) -> Result<CorResult> {
    let t = tp.field();
    let k = c.level();
    let r = c.order();
    let mut field_bases: Vec<Option<(Vec<Elem>, Matrix)>> = vec![None; r + 1];
    let mut orbits = Vec::new();
    let mut orbit_of = vec![usize::MAX; tp.dim()];
    let mut fixed_basis = Vec::with_capacity(tp.dim());
    for start in 0..tp.dim() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        let mut i = tp.shift(start);
        while i != start {
            members.push(i);
            i = tp.shift(i);
        }
        let len = members.len();
        if field_bases[len].is_none() {
            field_bases[len] = Some(fixed_field_basis(c, len)?);
        }
        let (basis, matrix) = field_bases[len].clone().unwrap();
        let id = orbits.len();
        for &m in &members {
            orbit_of[m] = id;
        }
        let offset = fixed_basis.len();
        for beta in &basis {
            let mut v = Vec::with_capacity(len);
            let mut x = beta.clone();
            for &m in &members {
                v.push((m, x.clone()));
                x = c.apply(&x);
            }
            debug_assert_eq!(&x, beta);
            fixed_basis.push(accumulate(t, v));
        }
        orbits.push(Orbit {
            members,
            field_basis: basis,
            field_matrix: matrix,
            offset,
        });
    }
    let field = t.truncate(k - 1);
    let mut cor = CorResult {
        field: field.clone(),
        algebra: Algebra::matrix_units_2(&field),
        fixed_basis,
        tensor: tp.clone(),
        cyclic: c.clone(),
        orbits,
        orbit_of,
    };
    let n = cor.fixed_basis.len();
    let mut table = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let z = tp.mul(&cor.fixed_basis[p], &cor.fixed_basis[q]);
            table.push(to_sparse(&cor.coordinates(&z)?));
        }
    }
    let unit = cor.coordinates(&tp.unit())?;
    cor.algebra = Algebra::new(&field, n, table, unit)?;
    Ok(cor)
}

/// `F`-basis of `{x ∈ K : σ^len(x) = x}` with its coordinate matrix.
fn fixed_field_basis(c: &CyclicExtension, len: usize) -> Result<(Vec<Elem>, Matrix)> {
    let t = c.tower();
    let k = c.level();
    let r = c.order();
    let basis: Vec<Elem> = if len == r {
        linalg::monomial_basis(t, k - 1, k)
    } else {
        // Nullspace of σ^len − 1 on the power basis.
        let images: Vec<Vec<Elem>> = linalg::monomial_basis(t, k - 1, k)
            .iter()
            .map(|x| {
                let y = &c.apply_pow(x, len as i64) - x;
                linalg::coords_over(t, &y, k - 1, k)
            })
            .collect();
        let m = linalg::transpose(&images);
        linalg::nullspace(t, &m, r)?
            .iter()
            .map(|v| linalg::from_coords(t, v, k - 1, k))
            .collect()
    };
    let cols: Vec<Vec<Elem>> = basis
        .iter()
        .map(|b| linalg::coords_over(t, b, k - 1, k))
        .collect();
    Ok((basis, linalg::transpose(&cols)))
}

impl CorResult {
    pub fn dim(&self) -> usize {
        self.fixed_basis.len()
    }

    pub fn cyclic(&self) -> &CyclicExtension {
        &self.cyclic
    }

    /// `F`-coordinates of a `T`-fixed vector of the tensor power; a vector
    /// that is not fixed is a precondition error.
    pub fn coordinates(&self, x: &SparseVec) -> Result<Vec<Elem>> {
        let t = self.tensor.field();
        let k = self.cyclic.level();
        let dense = to_dense(x, self.tensor.dim());
        let mut out = vec![Elem::zero(); self.dim()];
        let not_fixed = || Error::Precondition("vector is not fixed by the Galois action".into());
        for orbit in &self.orbits {
            let lead = &dense[orbit.members[0]];
            let mut y = lead.clone();
            for &m in &orbit.members[1..] {
                y = self.cyclic.apply(&y);
                if dense[m] != y {
                    return Err(not_fixed());
                }
            }
            if lead.is_zero() {
                continue;
            }
            let rhs = linalg::coords_over(t, lead, k - 1, k);
            let sol = linalg::solve(t, &orbit.field_matrix, &rhs)?.ok_or_else(not_fixed)?;
            debug_assert_eq!(sol.len(), orbit.field_basis.len());
            for (q, s) in sol.into_iter().enumerate() {
                out[orbit.offset + q] = s;
            }
        }
        Ok(out)
    }

    /// `Σ y_p b_p` in the tensor power.
    pub fn embed(&self, y: &[Elem]) -> SparseVec {
        let t = self.tensor.field();
        accumulate(
            t,
            y.iter()
                .zip(&self.fixed_basis)
                .flat_map(|(c, b)| b.iter().map(move |(i, x)| (*i, t.mul(c, x)))),
        )
    }

    /// Length of the rotation orbit containing a tensor basis index.
    pub fn orbit_len(&self, idx: usize) -> usize {
        self.orbits[self.orbit_of[idx]].members.len()
    }

    /// The algebra JSON of [`Algebra::to_json`] plus `fixed_basis`: for each
    /// basis vector, its nonzero `[tensor index, coefficient]` pairs written
    /// in `tensor_field`.
    pub fn to_json(&self) -> Value {
        let t = self.tensor.field();
        let h = t.height();
        let basis: Vec<Value> = self
            .fixed_basis
            .iter()
            .map(|v| {
                Value::Array(
                    v.iter()
                        .map(|(i, x)| json!([i, serial::elem_to_json(t, x, h)]))
                        .collect(),
                )
            })
            .collect();
        let mut v = self.algebra.to_json();
        v["fixed_basis"] = Value::Array(basis);
        v["tensor_field"] = serial::tower_to_json(t);
        v["tensor_dim"] = json!(self.tensor.dim());
        v
    }

    /// Rank over `K` of the fixed basis inside the tensor power; descent
    /// says it spans, so this equals the tensor dimension.
    pub fn spanning_rank(&self) -> Result<usize> {
        let n = self.tensor.dim();
        let rows: Matrix = self.fixed_basis.iter().map(|b| to_dense(b, n)).collect();
        linalg::rank(self.tensor.field(), &rows)
    }
}

/// `cor_{K/F}(A)`.
pub fn corestriction(a: &Algebra, c: &CyclicExtension) -> Result<CorResult> {
    let tp = tensor_power_over_k(a, c)?;
    fixed_subalgebra(&tp, c)
}

/// Echelon rows kept fully reduced, so a new row is reduced in one pass.
struct Echelon<'a> {
    t: &'a Tower,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon<'_> {
    fn push(&mut self, mut row: Vec<Elem>) -> Result<()> {
        let t = self.t;
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &t.mul(&f, y);
                    }
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(());
        };
        let inv = t.inv(&row[p])?;
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = t.mul(x, &inv);
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x = &*x - &t.mul(&f, y);
                    }
                }
            }
        }
        self.rows.push((p, row));
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsaReport {
    pub center_dim: usize,
    pub trace_form_rank: usize,
    pub dim: usize,
    /// Checked on all basis triples up to [`ASSOCIATIVITY_CHECK_DIM`].
    pub associative: Option<bool>,
}

impl CsaReport {
    pub fn is_central_simple(&self) -> bool {
        self.associative != Some(false) && self.center_dim == 1 && self.trace_form_rank == self.dim
    }
}

/// Center of dimension one and a nondegenerate trace form `tr(L_{xy})`.
/// In characteristic zero the second condition means semisimple, and a
/// semisimple algebra whose center is the ground field is central simple.
pub fn central_simple_check(a: &Algebra) -> Result<CsaReport> {
    let t = a.field();
    let n = a.dim();
    let associative = (n <= ASSOCIATIVITY_CHECK_DIM).then(|| a.is_associative());
    // x central iff Σ_p x_p (e_p e_i − e_i e_p) = 0 for every i. The unit is
    // always central, so elimination can stop once the rank reaches n − 1.
    let mut ech = Echelon { t, rows: Vec::new() };
    'outer: for i in 0..n {
        let mut rows = vec![vec![Elem::zero(); n]; n];
        for p in 0..n {
            for (k, c) in a.product(p, i) {
                rows[*k][p] = &rows[*k][p] + c;
            }
            for (k, c) in a.product(i, p) {
                rows[*k][p] = &rows[*k][p] - c;
            }
        }
        for row in rows {
            if row.iter().any(|x| !x.is_zero()) {
                ech.push(row)?;
                if ech.rows.len() + 1 >= n {
                    break 'outer;
                }
            }
        }
    }
    let center_dim = n - ech.rows.len();
    // tr(L_{e_k}) = Σ_m c_km^m, and tr(L_{e_p e_q}) = Σ_k c_pq^k tr(L_{e_k}).
    let traces: Vec<Elem> = (0..n)
        .map(|k| {
            (0..n).fold(Elem::zero(), |acc, m| {
                match a.product(k, m).iter().find(|(j, _)| *j == m) {
                    Some((_, c)) => &acc + c,
                    None => acc,
                }
            })
        })
        .collect();
    let gram: Matrix = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    a.product(p, q)
                        .iter()
                        .fold(Elem::zero(), |acc, (k, c)| &acc + &t.mul(c, &traces[*k]))
                })
                .collect()
        })
        .collect();
    let trace_form_rank = linalg::rank(t, &gram)?;
    Ok(CsaReport {
        center_dim,
        trace_form_rank,
        dim: n,
        associative,
    })
}

/// `e² = e`, `e ≠ 0` and `e ≠ 1`.
pub fn is_proper_idempotent(a: &Algebra, e: &[Elem]) -> bool {
    e.iter().any(|x| !x.is_zero()) && e != a.unit() && a.mul(e, e) == e
}

/// For `A = M₂(K)` in matrix units: the corestriction together with the
/// coordinates of `E11 ⊗ … ⊗ E11`, a proper idempotent of it.
pub fn split_idempotent_witness(a: &Algebra, c: &CyclicExtension) -> Result<(CorResult, Vec<Elem>)> {
    if !a.is_matrix_units_2() {
        return Err(Error::NotMatrixUnits);
    }
    let cor = corestriction(a, c)?;
    let e = cor.coordinates(&vec![(0, Elem::one())])?;
    Ok((cor, e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeReport {
    /// `dim_F cor_{K/F}(A)`, which equals `dim_L cor_{KL/L}(A_{KL})`.
    pub dim: usize,
    /// Rank over `L` of the map on bases.
    pub rank: usize,
    pub multiplicative: bool,
    pub unital: bool,
}

impl BaseChangeReport {
    pub fn passed(&self) -> bool {
        self.rank == self.dim && self.multiplicative && self.unital
    }
}

/// `cor_{K/F}(A) ⊗_F L → cor_{KL/L}(A_{KL})`, induced by `K ⊂ KL`, is an
/// `L`-algebra isomorphism. Here `F = Q`, `K` is generated by one root over
/// `Q`, and `L = Q[y]/(l_minpoly)` must be linearly disjoint from `K`.
pub fn base_change_embedding_check(
    a: &Algebra,
    c: &CyclicExtension,
    l_minpoly: &[Elem],
) -> Result<BaseChangeReport> {
    check_field(a, c)?;
    if c.level() != 1 {
        return Err(Error::Precondition("K must be a simple extension of Q".into()));
    }
    if l_minpoly.iter().any(|x| x.as_rational().is_none()) {
        return Err(Error::Precondition(
            "L must be given by a rational polynomial".into(),
        ));
    }
    let lt = Tower::rationals().extend("l", l_minpoly.to_vec())?;
    let k_min = c.tower().level(1).minpoly.clone();
    let (r, s) = (c.order(), lt.degree_of(1));
    if num_integer::gcd(r, s) != 1 {
        if r != 2 {
            return Err(Error::Precondition(format!(
                "cannot decide disjointness for [K:Q] = {r}, [L:Q] = {s}"
            )));
        }
        let disc = &lt.square(&k_min[1]) - &lt.mul(&Elem::int(4), &k_min[0]);
        if let SqrtResult::Sqrt(_) = sqrt::sqrt_or_nonsquare(&lt, &disc)? {
            return Err(Error::NotDisjoint(format!(
                "K is generated by the square root of {disc}, which lies in L"
            )));
        }
    }
    let klt = lt.extend(c.tower().level(1).label.clone(), k_min)?;
    let lift = |x: &Elem| x.shift_levels(1, 1);
    let image = lift(&c.apply(&c.tower().gen(1)));
    let c2 = CyclicExtension::from_image(&klt, 2, &image)?;
    let a2 = a.map_constants(&klt, lift);
    let cor1 = corestriction(a, c)?;
    let cor2 = corestriction(&a2, &c2)?;
    let n = cor1.dim();
    let rows: Matrix = cor1
        .fixed_basis
        .iter()
        .map(|b| {
            let v: SparseVec = b.iter().map(|(i, x)| (*i, lift(x))).collect();
            cor2.coordinates(&v)
        })
        .collect::<Result<_>>()?;
    let rank = linalg::rank(&klt, &rows)?;
    let alg2 = &cor2.algebra;
    let mut multiplicative = true;
    'outer: for p in 0..n {
        for q in 0..n {
            let lhs = alg2.mul(&rows[p], &rows[q]);
            let mut rhs = vec![Elem::zero(); n];
            for (k, coef) in cor1.algebra.product(p, q) {
                for (x, y) in rhs.iter_mut().zip(&rows[*k]) {
                    *x = &*x + &klt.mul(coef, y);
                }
            }
            if lhs != rhs {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let unit_image = linalg::combine(&klt, cor1.algebra.unit(), &rows);
    let unital = unit_image == alg2.unit();
    Ok(BaseChangeReport {
        dim: n,
        rank,
        multiplicative,
        unital,
    })
}
