mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadlin_core::curvetorsion::{act, class_add, excess_identity, section_count_identity, torsion_classes, TorsionClass};
use quadlin_core::delpezzo::{lines16, pic_action, wd5, PicClass};
use quadlin_core::exactmath::{smith_normal_form, BinaryForm};
use quadlin_core::linalg::eigenspaces_finite_order;
use quadlin_core::report::{parse_job, parse_verdict, run_report, Status};
use quadlin_core::{emit, CycNum, Format, IntMatrix, Permutation, Rational};

use common::{column, form, int_matrix, monomial_spectrum, random_monomial, random_unimodular};

const ORDERS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn cyc() -> impl Strategy<Value = CycNum> {
    (0..ORDERS.len()).prop_flat_map(|i| {
        let n = ORDERS[i];
        let phi = quadlin_core::exactmath::phi(n);
        proptest::collection::vec((-6i64..=6, 1i64..=4), phi)
            .prop_map(move |cs| CycNum::from_coeffs(n, cs.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect()).unwrap())
    })
}

fn zero() -> CycNum {
    CycNum::from_int(0)
}

fn one() -> CycNum {
    CycNum::from_int(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero(), a.clone());
        prop_assert_eq!(&a * &one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism(a in cyc(), b in cyc(), k in 1u32..4) {
        let m = quadlin_core::exactmath::lcm(a.order(), b.order()) * k;
        let (ea, eb) = (a.embed(m).unwrap(), b.embed(m).unwrap());
        prop_assert_eq!((&a + &b).embed(m).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).embed(m).unwrap(), &ea * &eb);
        let (x, y) = (ea.to_complex(1), a.to_complex(1));
        prop_assert!((x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9);
    }
}

fn lin(a: i64, b: i64) -> BinaryForm {
    BinaryForm::linear(CycNum::from_int(a), CycNum::from_int(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// The oracle is proportionality of the linear factors.
    #[test]
    fn discriminant_detects_repeated_roots(factors in proptest::collection::vec((-3i64..=3, -3i64..=3), 2..6)) {
        let factors: Vec<(i64, i64)> = factors.into_iter().filter(|&(a, b)| (a, b) != (0, 0)).collect();
        prop_assume!(factors.len() >= 2);
        let f = factors.iter().fold(BinaryForm::new(vec![one()]), |acc, &(a, b)| acc.mul(&lin(a, b)));
        let repeated = factors
            .iter()
            .enumerate()
            .any(|(i, p)| factors[..i].iter().any(|q| p.0 * q.1 == p.1 * q.0));
        prop_assert_eq!(f.discriminant().is_zero(), repeated);
        let g = f.derivative_t1().gcd(&f.derivative_t2());
        prop_assert_eq!(g.degree() > 0, repeated);
    }
}

#[test]
fn eigenspaces_of_conjugated_monomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let (mono, perm, exps, n) = random_monomial(&mut rng);
        let dim = mono.rows();
        let p = random_unimodular(&mut rng, dim);
        let m = p.mul(&mono).mul(&p.inverse().unwrap());
        let spaces = eigenspaces_finite_order(&m).unwrap();
        let mut found = BTreeMap::new();
        for e in &spaces {
            for v in e.space.basis_vectors() {
                let lv: Vec<CycNum> = v.iter().map(|x| x * &e.value).collect();
                assert_eq!(m.apply(&v).unwrap(), lv);
            }
            let t = Rational::new(BigInt::from(e.exponent), BigInt::from(e.root_order));
            *found.entry(t).or_insert(0) += e.space.dim();
        }
        assert_eq!(found, monomial_spectrum(&perm, &exps, n));
    }
}

#[test]
fn smith_form_re_multiplies() {
    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    for _ in 0..200 {
        let a = int_matrix(&mut rng);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0] >= BigInt::zero());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        // u is unimodular: its rows generate Z^r
        let su = smith_normal_form(&s.u);
        assert!(su.invariant_factors().iter().all(|d| d.is_one()));
    }
}

#[test]
fn weyl_group_preserves_the_form() {
    let k = PicClass::canonical().basis_coords();
    assert_eq!(k, [-3, 1, 1, 1, 1, 1]);
    assert_eq!(wd5().len(), 1920);
    let basis: Vec<[i64; 6]> = (0..6).map(|i| std::array::from_fn(|j| (i == j) as i64)).collect();
    for s in wd5() {
        let a = pic_action(s).unwrap();
        let images: Vec<[i64; 6]> = (0..6).map(|j| column(&a, j)).collect();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(form(&images[i], &images[j]), form(&basis[i], &basis[j]));
            }
        }
        let ak = a.apply(&k);
        assert!(ak.iter().zip(&k).all(|(x, y)| *x == BigInt::from(*y)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pic_action_is_a_homomorphism(i in 0usize..1920, j in 0usize..1920) {
        let (a, b) = (wd5()[i], wd5()[j]);
        prop_assert_eq!(pic_action(&a.compose(&b)).unwrap(), pic_action(&a).unwrap().mul(&pic_action(&b).unwrap()));
    }
}

#[test]
fn intersection_follows_hamming_distance() {
    let lines = lines16();
    assert_eq!(lines.len(), 16);
    for (l, w) in lines {
        assert_eq!(w.minus_count() % 2, 1);
        for (m, v) in lines {
            let c = l.basis_coords();
            let d = m.basis_coords();
            assert_eq!(2 * form(&c, &d), w.hamming(v) as i64 - 2);
        }
    }
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn class(g: usize) -> impl Strategy<Value = TorsionClass> {
    let n = 2 * g + 2;
    proptest::collection::btree_set(1..=n, 0..=n)
        .prop_map(move |s| TorsionClass::new(g, &s.into_iter().collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn relabelling_is_a_group_action((p, q, c) in (1usize..=4).prop_flat_map(|g| (perm(2 * g + 2), perm(2 * g + 2), class(g)))) {
        prop_assert_eq!(act(&p.compose(&q), &c).unwrap(), act(&p, &act(&q, &c).unwrap()).unwrap());
        prop_assert_eq!(act(&p, &c).unwrap().parity(), c.parity());
        prop_assert_eq!(act(&Permutation::identity(p.len()), &c).unwrap(), c);
    }

    #[test]
    fn relabelling_respects_addition((p, a, b) in (1usize..=4).prop_flat_map(|g| (perm(2 * g + 2), class(g), class(g)))) {
        let lhs = act(&p, &class_add(&a, &b).unwrap()).unwrap();
        let rhs = class_add(&act(&p, &a).unwrap(), &act(&p, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn class_group_axioms() {
    for g in 1..=3 {
        let all: Vec<TorsionClass> = [0, 1].iter().flat_map(|&p| torsion_classes(g, p).unwrap()).collect();
        assert_eq!(all.len(), 1 << (2 * g + 1));
        let even = torsion_classes(g, 0).unwrap();
        assert_eq!(even.len(), 1 << (2 * g));
        let e = TorsionClass::identity(g);
        for a in &all {
            assert_eq!(class_add(a, &e).unwrap(), *a);
            assert!(class_add(a, a).unwrap().is_identity());
            for b in &all {
                let ab = class_add(a, b).unwrap();
                assert_eq!(ab, class_add(b, a).unwrap());
                assert_eq!(ab.parity(), (a.parity() + b.parity()) % 2);
                for c in &all {
                    assert_eq!(class_add(&ab, c).unwrap(), class_add(a, &class_add(b, c).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn counting_identities_hold() {
    for g in 1..=6 {
        let s = section_count_identity(g).unwrap();
        assert!(s.holds);
        assert_eq!(s.lhs, BigInt::from(4).pow(g as u32));
    }
    for g in 2..=6 {
        let e = excess_identity(g).unwrap();
        assert!(e.series_matches && e.bilinear_matches);
    }
}

fn sign_matrix(signs: &[i8]) -> String {
    let rows: Vec<String> = (0..6)
        .map(|i| {
            let r: Vec<String> = (0..6).map(|j| if i == j { signs[i].to_string() } else { "0".into() }).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    format!("{{\"entries\":[{}]}}", rows.join(","))
}

fn signs() -> impl Strategy<Value = Vec<i8>> {
    proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 6).prop_filter("not scalar", |s| s.iter().any(|&x| x != s[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// For sign-change groups the oracle is the span of the generators over F_2.
    #[test]
    fn verdicts_for_sign_groups(gens in proptest::collection::vec(signs(), 1..=2)) {
        let list: Vec<String> = gens
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{{\"label\":\"s{i}\",\"matrix\":{}}}", sign_matrix(s)))
            .collect();
        let text = format!(
            "{{\"pencil\":{{\"g\":2,\"diag1\":[1,1,1,1,1,1],\"diag2\":[0,1,2,3,4,5]}},\"generators\":[{}]}}",
            list.join(",")
        );
        let job = parse_job(&text).unwrap();
        let v = run_report(&job).unwrap();
        prop_assert_eq!(&run_report(&job).unwrap(), &v);
        let json = emit(&v, Format::Json);
        prop_assert_eq!(parse_verdict(&json).unwrap(), v.clone());

        let mask = |s: &Vec<i8>| s.iter().enumerate().fold(0u8, |m, (i, &x)| m | (((x < 0) as u8) << i));
        let mut span = vec![0u8];
        for s in &gens {
            let m = mask(s);
            let more: Vec<u8> = span.iter().map(|x| x ^ m).collect();
            span.extend(more);
        }
        let translation = span.iter().any(|m| matches!(m.count_ones(), 2 | 4));
        prop_assert_eq!(v.status == Status::Obstructed, translation);
    }
}
