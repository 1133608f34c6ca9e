use proptest::prelude::*;
use quatsplit::algebra::{Algebra, SparseVec};
use quatsplit::corestriction::{
    base_change_embedding_check, central_simple_check, conjugate_algebra, corestriction, g_action,
    is_proper_idempotent, split_idempotent_witness, tensor_power_over_k,
};
use quatsplit::cyclic::CyclicExtension;
use quatsplit::quaternion::QuaternionAlgebra;
use quatsplit::random::{int_elem, rng};
use quatsplit::{Elem, Error};

fn quat(c: &CyclicExtension, u: Elem, v: Elem) -> Algebra {
    Algebra::quaternion(&QuaternionAlgebra::standard(c.tower(), u, v).unwrap())
}

fn random_vec(c: &CyclicExtension, dim: usize, seed: u64) -> SparseVec {
    let mut g = rng(seed);
    let t = c.tower();
    (0..dim)
        .map(|i| (i, int_elem(&mut g, t, c.level(), 3)))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

#[test]
fn rotation_has_order_r() {
    let c = CyclicExtension::cyclic_cubic().unwrap();
    let a = quat(&c, Elem::int(-1), c.tower().gen(1));
    let tp = tensor_power_over_k(&a, &c).unwrap();
    assert_eq!(tp.dim(), 64);
    for seed in 0..50 {
        let x = random_vec(&c, tp.dim(), seed);
        let mut y = x.clone();
        for _ in 0..3 {
            y = g_action(&tp, &c, &y);
        }
        assert_eq!(y, x);
    }
}

#[test]
fn rotation_is_a_ring_map() {
    let c = CyclicExtension::quadratic(2).unwrap();
    let a = quat(&c, -&c.tower().gen(1), Elem::int(-1));
    let tp = tensor_power_over_k(&a, &c).unwrap();
    for seed in 0..20 {
        let x = random_vec(&c, tp.dim(), seed);
        let y = random_vec(&c, tp.dim(), seed + 1000);
        let lhs = g_action(&tp, &c, &tp.mul(&x, &y));
        let rhs = tp.mul(&g_action(&tp, &c, &x), &g_action(&tp, &c, &y));
        assert_eq!(lhs, rhs);
    }
    // Pure tensors of rational vectors swap legs.
    let ef = tp.index(&[1, 2]);
    let fe = tp.index(&[2, 1]);
    assert_eq!(
        g_action(&tp, &c, &vec![(ef, Elem::one())]),
        vec![(fe, Elem::one())]
    );
}

#[test]
fn conjugates_stay_associative() {
    let c = CyclicExtension::cyclic_cubic().unwrap();
    let a = quat(&c, c.tower().gen(1), Elem::int(3));
    for j in 0..=3 {
        let conj = conjugate_algebra(&a, &c, j).unwrap();
        assert!(conj.is_associative());
        assert_eq!(conj == a, j % 3 == 0);
    }
}

#[test]
fn dimensions_and_csa() {
    let cases: Vec<(CyclicExtension, Algebra, usize)> = {
        let s2 = CyclicExtension::quadratic(2).unwrap();
        let i = CyclicExtension::quadratic(-1).unwrap();
        let cu = CyclicExtension::cyclic_cubic().unwrap();
        vec![
            (s2.clone(), Algebra::matrix_units_2(s2.tower()), 16),
            (s2.clone(), quat(&s2, Elem::int(-1), Elem::int(-1)), 16),
            (i.clone(), quat(&i, Elem::int(3), Elem::int(5)), 16),
            (cu.clone(), quat(&cu, Elem::int(-1), cu.tower().gen(1)), 64),
        ]
    };
    for (c, a, dim) in cases {
        let cor = corestriction(&a, &c).unwrap();
        assert_eq!(cor.dim(), dim);
        assert_eq!(cor.spanning_rank().unwrap(), cor.tensor.dim());
        // Structure constants live in F = Q.
        for i in 0..dim {
            for j in 0..dim {
                assert!(cor.algebra.product(i, j).iter().all(|(_, x)| x.level() == 0));
            }
        }
        let rep = central_simple_check(&cor.algebra).unwrap();
        assert!(rep.is_central_simple(), "{rep:?}");
        assert_eq!(rep.associative, Some(true));
    }
}

#[test]
fn fixed_basis_products_match_constants() {
    let c = CyclicExtension::quadratic(-1).unwrap();
    let a = quat(&c, Elem::int(2), Elem::int(5));
    let cor = corestriction(&a, &c).unwrap();
    for i in 0..cor.dim() {
        for j in 0..cor.dim() {
            let direct = cor.tensor.mul(&cor.fixed_basis[i], &cor.fixed_basis[j]);
            let dense: Vec<Elem> = {
                let mut v = vec![Elem::zero(); cor.dim()];
                for (k, x) in cor.algebra.product(i, j) {
                    v[*k] = x.clone();
                }
                v
            };
            assert_eq!(direct, cor.embed(&dense));
            assert_eq!(g_action(&cor.tensor, cor.cyclic(), &direct), direct);
        }
    }
}

#[test]
fn matrix_idempotents() {
    for c in [
        CyclicExtension::quadratic(2).unwrap(),
        CyclicExtension::quadratic(-1).unwrap(),
        CyclicExtension::cyclic_cubic().unwrap(),
    ] {
        let a = Algebra::matrix_units_2(c.tower());
        let (cor, e) = split_idempotent_witness(&a, &c).unwrap();
        assert!(is_proper_idempotent(&cor.algebra, &e));
        assert!(cor.algebra.mul(&e, &e) == e);
    }
    let c = CyclicExtension::quadratic(2).unwrap();
    let q = quat(&c, Elem::int(-1), Elem::int(-1));
    assert!(matches!(
        split_idempotent_witness(&q, &c),
        Err(Error::NotMatrixUnits)
    ));
}

#[test]
fn dimension_is_multiplicative_under_tensor() {
    let c = CyclicExtension::quadratic(2).unwrap();
    let a = Algebra::matrix_units_2(c.tower());
    let b = quat(&c, Elem::int(-1), c.tower().gen(1));
    let ab = a.tensor(&b).unwrap();
    let d_ab = corestriction(&ab, &c).unwrap().dim();
    let d_a = corestriction(&a, &c).unwrap().dim();
    let d_b = corestriction(&b, &c).unwrap().dim();
    assert_eq!(d_ab, d_a * d_b);
}

#[test]
fn base_change() {
    let c = CyclicExtension::quadratic(2).unwrap();
    let a = quat(&c, Elem::int(-1), c.tower().gen(1));
    let l3 = [Elem::int(-3), Elem::zero(), Elem::one()];
    let rep = base_change_embedding_check(&a, &c, &l3).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.rank, 16);
    // L = K and L = Q(√8) = K are not disjoint from K.
    for d in [2, 8] {
        let l = [Elem::int(-d), Elem::zero(), Elem::one()];
        assert!(matches!(
            base_change_embedding_check(&a, &c, &l),
            Err(Error::NotDisjoint(_))
        ));
    }
    // Degree-one levels are not towers; L = Q is rejected as input.
    assert!(base_change_embedding_check(&a, &c, &[Elem::zero(), Elem::one()]).is_err());
}

#[test]
fn sigma_validation() {
    let c = CyclicExtension::cyclic_cubic().unwrap();
    let mut j = c.to_json();
    assert_eq!(CyclicExtension::from_json(&j).unwrap(), c);
    j["sigma"][0][1] = serde_json::json!("5");
    let err = CyclicExtension::from_json(&j).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_quaternions_over_sqrt_d(d in prop::sample::select(vec![2i64, 3, 5, -1, -3]), seed in any::<u64>()) {
        let c = CyclicExtension::quadratic(d).unwrap();
        let qa = quatsplit::random::quaternion(&mut rng(seed), c.tower(), 4);
        let a = Algebra::quaternion(&qa);
        let cor = corestriction(&a, &c).unwrap();
        prop_assert_eq!(cor.dim(), 16);
        prop_assert!(cor.algebra.is_associative());
        prop_assert!(central_simple_check(&cor.algebra).unwrap().is_central_simple());
        let x = random_vec(&c, 16, seed);
        // Fixed points of the rotation are exactly the image of the embedding.
        let fixed: SparseVec = {
            let y = g_action(&cor.tensor, &c, &x);
            quatsplit::algebra::accumulate(c.tower(), x.iter().cloned().chain(y))
        };
        let coords = cor.coordinates(&fixed).unwrap();
        prop_assert_eq!(cor.embed(&coords), fixed);
    }
}
