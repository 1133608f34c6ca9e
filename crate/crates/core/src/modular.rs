//! Square roots at general tower levels by reduction modulo an inert prime.
//!
//! For a prime `p` at which every level stays irreducible, the tower reduces
//! to a finite field `F_Q`. A root found there by Tonelli–Shanks is lifted
//! p-adically with Newton's iteration and each rational leaf is recovered by
//! rational reconstruction. Only exactly verified roots are returned. A
//! non-residue modulo an inert prime proves `NonSquare`; running out of
//! primes or precision returns `NonSquare` without proof.
//!
//! [`residue_proves_nonsquare`] is a separate screen for towers of quadratic
//! levels, using maps into prime fields rather than an inert prime.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::rational::Q;
use crate::sqrt::SqrtResult;
use crate::tower::{Elem, Tower};

const FIRST_PRIME: u64 = 10_007;
const PRIMES_TRIED: usize = 60;
const RECONSTRUCTION_FAILURES: usize = 3;
const MAX_MODULUS_BITS: u64 = 4096;

type Flat = Vec<BigInt>;

/// Levels `1..=k` of a tower as dense flattened rational data.
struct Shape {
    degs: Vec<usize>,
    /// `sizes[j]` is the dimension of level `j` over the rationals.
    sizes: Vec<usize>,
    /// Non-leading minimal polynomial coefficients, flattened one level down.
    minpolys: Vec<Vec<Vec<Q>>>,
}

impl Shape {
    fn new(t: &Tower, k: usize) -> Shape {
        let degs: Vec<usize> = (1..=k).map(|j| t.degree_of(j)).collect();
        let mut sizes = vec![1];
        for d in &degs {
            sizes.push(sizes.last().unwrap() * d);
        }
        let mut shape = Shape {
            degs,
            sizes,
            minpolys: Vec::new(),
        };
        shape.minpolys = (1..=k)
            .map(|j| {
                let m = &t.level(j).minpoly;
                m[..m.len() - 1].iter().map(|c| shape.flatten(c, j - 1)).collect()
            })
            .collect();
        shape
    }

    fn flatten(&self, e: &Elem, level: usize) -> Vec<Q> {
        if level == 0 {
            return vec![e.as_rational().expect("element above flattening level").clone()];
        }
        let mut out = Vec::with_capacity(self.sizes[level]);
        for i in 0..self.degs[level - 1] {
            out.extend(self.flatten(&e.coeff(level, i), level - 1));
        }
        out
    }

    fn unflatten(&self, v: &[Q], level: usize) -> Elem {
        if level == 0 {
            return Elem::Rat(v[0].clone());
        }
        let s = self.sizes[level - 1];
        let coeffs = v.chunks(s).map(|c| self.unflatten(c, level - 1)).collect();
        Elem::from_coeffs(level, coeffs)
    }

    fn denominators_coprime(&self, p: &BigInt, c: &[Q]) -> bool {
        let ok = |x: &Q| !(x.denom() % p).is_zero();
        c.iter().all(ok) && self.minpolys.iter().flatten().flatten().all(ok)
    }
}

/// The tower reduced modulo `m`.
struct Ring<'a> {
    shape: &'a Shape,
    m: BigInt,
    minpolys: Vec<Vec<Flat>>,
}

impl<'a> Ring<'a> {
    fn new(shape: &'a Shape, m: BigInt) -> Ring<'a> {
        let mut r = Ring {
            shape,
            m,
            minpolys: Vec::new(),
        };
        r.minpolys = shape
            .minpolys
            .iter()
            .map(|mp| mp.iter().map(|c| r.reduce(c)).collect())
            .collect();
        r
    }

    fn reduce(&self, v: &[Q]) -> Flat {
        v.iter()
            .map(|x| {
                let inv = x.denom().modinv(&self.m).expect("denominator not invertible");
                (x.numer() * inv).mod_floor(&self.m)
            })
            .collect()
    }

    fn size(&self, j: usize) -> usize {
        self.shape.sizes[j]
    }

    fn one(&self, j: usize) -> Flat {
        let mut v = vec![BigInt::zero(); self.size(j)];
        v[0] = BigInt::one();
        v
    }

    fn gen(&self, j: usize) -> Flat {
        let s = self.size(j - 1);
        let mut v = vec![BigInt::zero(); self.size(j)];
        if self.shape.degs[j - 1] > 1 {
            v[s] = BigInt::one();
        }
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Flat {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.m)).collect()
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Flat {
        a.iter().zip(b).map(|(x, y)| (x - y).mod_floor(&self.m)).collect()
    }

    fn mul(&self, j: usize, a: &[BigInt], b: &[BigInt]) -> Flat {
        if j == 0 {
            return vec![(&a[0] * &b[0]).mod_floor(&self.m)];
        }
        let d = self.shape.degs[j - 1];
        let s = self.size(j - 1);
        let mut prod: Vec<Flat> = vec![vec![BigInt::zero(); s]; 2 * d - 1];
        for (i, ai) in a.chunks(s).enumerate() {
            if is_zero(ai) {
                continue;
            }
            for (l, bl) in b.chunks(s).enumerate() {
                if !is_zero(bl) {
                    let p = self.mul(j - 1, ai, bl);
                    prod[i + l] = self.add(&prod[i + l], &p);
                }
            }
        }
        for top in (d..2 * d - 1).rev() {
            let t = std::mem::take(&mut prod[top]);
            if is_zero(&t) {
                continue;
            }
            for (i, mi) in self.minpolys[j - 1].iter().enumerate() {
                if !is_zero(mi) {
                    let p = self.mul(j - 1, &t, mi);
                    prod[top - d + i] = self.sub(&prod[top - d + i], &p);
                }
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    fn pow(&self, j: usize, a: &[BigInt], e: &BigUint) -> Flat {
        let mut acc = self.one(j);
        for i in (0..e.bits()).rev() {
            acc = self.mul(j, &acc, &acc);
            if e.bit(i) {
                acc = self.mul(j, &acc, a);
            }
        }
        acc
    }

    /// Order of the multiplicative group of level `j`, assuming it is a field.
    fn unit_count(&self, j: usize) -> BigUint {
        self.m.magnitude().pow(self.size(j) as u32) - 1u32
    }

    fn inv(&self, j: usize, a: &[BigInt]) -> Flat {
        self.pow(j, a, &(self.unit_count(j) - 1u32))
    }

    /// Is the minimal polynomial of level `j` irreducible over level `j − 1`
    /// (itself known to be a field)? Rabin's test with `q = |level j−1|`.
    fn level_irreducible(&self, j: usize) -> bool {
        let d = self.shape.degs[j - 1];
        if d == 1 {
            return true;
        }
        let q = self.unit_count(j - 1) + 1u32;
        let x = self.gen(j);
        let mut frob = vec![x.clone()];
        for _ in 0..d {
            let next = self.pow(j, frob.last().unwrap(), &q);
            frob.push(next);
        }
        if frob[d] != x {
            return false;
        }
        let s = self.size(j - 1);
        let mut monic: Vec<Flat> = self.minpolys[j - 1].clone();
        monic.push(self.one(j - 1));
        prime_divisors(d).into_iter().all(|l| {
            let h = self.sub(&frob[d / l], &x);
            let h: Vec<Flat> = h.chunks(s).map(<[BigInt]>::to_vec).collect();
            self.poly_gcd_degree(j - 1, monic.clone(), h) == Some(0)
        })
    }

    /// Degree of `gcd(f, g)` for polynomials over the field at level `j`.
    fn poly_gcd_degree(&self, j: usize, mut f: Vec<Flat>, mut g: Vec<Flat>) -> Option<usize> {
        trim(&mut f);
        trim(&mut g);
        while !g.is_empty() {
            let lead_inv = self.inv(j, g.last().unwrap());
            while f.len() >= g.len() {
                let c = self.mul(j, f.last().unwrap(), &lead_inv);
                let shift = f.len() - g.len();
                for (i, gi) in g.iter().enumerate() {
                    let p = self.mul(j, &c, gi);
                    f[shift + i] = self.sub(&f[shift + i], &p);
                }
                trim(&mut f);
            }
            std::mem::swap(&mut f, &mut g);
        }
        f.len().checked_sub(1)
    }
}

fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn trim(p: &mut Vec<Flat>) {
    while p.last().is_some_and(|c| is_zero(c)) {
        p.pop();
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `n/d ≡ a (mod m)` with `|n|, d ≤ √(m/2)`, if such a fraction exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

const FILTER_FIRST_PRIME: u64 = 1_000_000_007;
const FILTER_CANDIDATES: usize = 400;
const FILTER_EMBEDDINGS: usize = 24;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Square root modulo an odd prime of a nonzero quadratic residue.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).unwrap();
    let (mut m, mut c, mut t, mut r) = (
        s,
        pow_mod(z, q, p),
        pow_mod(a, q, p),
        pow_mod(a, q.div_ceil(2), p),
    );
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Image of `x` under the map sending level `j` to `roots[j − 1]`, or `None`
/// when a denominator vanishes modulo `p`.
fn eval_mod(x: &Elem, roots: &[u64], p: u64) -> Option<u64> {
    match x {
        Elem::Rat(q) => {
            let pb = BigInt::from(p);
            let d = u64::try_from(q.denom().mod_floor(&pb)).unwrap();
            if d == 0 {
                return None;
            }
            let n = u64::try_from(q.numer().mod_floor(&pb)).unwrap();
            Some(mul_mod(n, pow_mod(d, p - 2, p), p))
        }
        Elem::Alg { level, coeffs } => {
            let r = roots[*level - 1];
            let mut acc = 0;
            for c in coeffs.iter().rev() {
                acc = (mul_mod(acc, r, p) + eval_mod(c, roots, p)?) % p;
            }
            Some(acc)
        }
    }
}

/// Try to prove that `c` is not a square in level `k`, all of whose levels
/// are quadratic, by mapping the tower into prime fields: each level is sent
/// to a root of its reduced minimal polynomial when one exists in `F_p`.
/// Squares map to squares, so a non-residue image is a proof. `false` means
/// only that no proof was found.
pub fn residue_proves_nonsquare(t: &Tower, c: &Elem, k: usize) -> bool {
    debug_assert!((1..=k).all(|j| t.degree_of(j) == 2));
    let mut p = FILTER_FIRST_PRIME;
    let mut embeddings = 0;
    for _ in 0..FILTER_CANDIDATES {
        p += 2;
        while !is_prime(p) {
            p += 2;
        }
        let mut roots = Vec::with_capacity(k);
        let ok = (1..=k).all(|j| {
            let m = &t.level(j).minpoly;
            let (Some(q0), Some(p1)) = (eval_mod(&m[0], &roots, p), eval_mod(&m[1], &roots, p)) else {
                return false;
            };
            let disc = (mul_mod(p1, p1, p) + p - mul_mod(4, q0, p)) % p;
            if disc == 0 || pow_mod(disc, (p - 1) / 2, p) != 1 {
                return false;
            }
            let s = sqrt_mod(disc, p);
            roots.push(mul_mod((s + p - p1) % p, p.div_ceil(2), p));
            true
        });
        if !ok {
            continue;
        }
        match eval_mod(c, &roots, p) {
            Some(0) | None => continue,
            Some(x) if pow_mod(x, (p - 1) / 2, p) == p - 1 => return true,
            Some(_) => {}
        }
        embeddings += 1;
        if embeddings >= FILTER_EMBEDDINGS {
            break;
        }
    }
    false
}

enum Attempt {
    Unsuitable,
    NonResidue,
    NoReconstruction,
    Root(Elem),
}

/// Square root of `c` in level `k` of `t` (tier 3 of the square test).
pub fn sqrt_general(t: &Tower, c: &Elem, k: usize) -> Result<SqrtResult> {
    let shape = Shape::new(t, k);
    let cf = shape.flatten(c, k);
    let mut failures = 0;
    let mut p = FIRST_PRIME;
    let mut tried = 0;
    while tried < PRIMES_TRIED && failures < RECONSTRUCTION_FAILURES {
        while !is_prime(p) {
            p += 1;
        }
        tried += 1;
        match attempt(t, &shape, &cf, c, k, BigInt::from(p)) {
            Attempt::Unsuitable => {}
            Attempt::NonResidue => return Ok(SqrtResult::NonSquare),
            Attempt::NoReconstruction => failures += 1,
            Attempt::Root(s) => return Ok(SqrtResult::Sqrt(s)),
        }
        p += 1;
    }
    Ok(SqrtResult::NonSquare)
}

fn attempt(t: &Tower, shape: &Shape, cf: &[Q], c: &Elem, k: usize, p: BigInt) -> Attempt {
    if !shape.denominators_coprime(&p, cf) {
        return Attempt::Unsuitable;
    }
    let ring = Ring::new(shape, p.clone());
    if !(1..=k).all(|j| ring.level_irreducible(j)) {
        return Attempt::Unsuitable;
    }
    let cm = ring.reduce(cf);
    if is_zero(&cm) {
        return Attempt::Unsuitable;
    }
    let Some(s0) = tonelli_shanks(&ring, k, &cm) else {
        return Attempt::NonResidue;
    };
    let two = {
        let mut v = ring.one(k);
        v[0] = BigInt::from(2);
        v
    };
    let mut inv = ring.inv(k, &ring.mul(k, &two, &s0));
    let mut s = s0;
    let mut modulus = p;
    while modulus.bits() <= MAX_MODULUS_BITS {
        modulus = &modulus * &modulus;
        let ring = Ring::new(shape, modulus.clone());
        let cm = ring.reduce(cf);
        let err = ring.sub(&ring.mul(k, &s, &s), &cm);
        s = ring.sub(&s, &ring.mul(k, &err, &inv));
        let two_s_inv = ring.mul(k, &ring.mul(k, &two, &s), &inv);
        inv = ring.mul(k, &inv, &ring.sub(&two, &two_s_inv));
        let leaves: Option<Vec<Q>> = s.iter().map(|x| rational_reconstruct(x, &modulus)).collect();
        if let Some(leaves) = leaves {
            let cand = shape.unflatten(&leaves, k);
            if t.square(&cand) == *c {
                return Attempt::Root(cand);
            }
        }
    }
    Attempt::NoReconstruction
}

/// A square root in the finite field at level `k`, or `None` for a non-residue.
fn tonelli_shanks(ring: &Ring, k: usize, c: &[BigInt]) -> Option<Flat> {
    let qm1 = ring.unit_count(k);
    let half = &qm1 >> 1u32;
    let one = ring.one(k);
    if ring.pow(k, c, &half) != one {
        return None;
    }
    let mut e = 0u64;
    let mut odd = qm1.clone();
    while !odd.bit(0) {
        odd >>= 1u32;
        e += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let z = loop {
        let m = ring.m.magnitude().clone();
        let cand: Flat = (0..ring.size(k))
            .map(|_| BigInt::from(rng.gen_range(0u64..u64::MAX)) % BigInt::from(m.clone()))
            .collect();
        if !is_zero(&cand) && ring.pow(k, &cand, &half) != one {
            break cand;
        }
    };
    let mut order = e;
    let mut cc = ring.pow(k, &z, &odd);
    let mut tt = ring.pow(k, c, &odd);
    let mut r = ring.pow(k, c, &((&odd + 1u32) >> 1u32));
    while tt != one {
        let mut i = 0;
        let mut probe = tt.clone();
        while probe != one {
            probe = ring.mul(k, &probe, &probe);
            i += 1;
        }
        let mut b = cc.clone();
        for _ in 0..order - i - 1 {
            b = ring.mul(k, &b, &b);
        }
        order = i;
        cc = ring.mul(k, &b, &b);
        tt = ring.mul(k, &tt, &cc);
        r = ring.mul(k, &r, &b);
    }
    Some(r)
}
