//! Property tests: ring axioms, format round-trips, the Leibniz rule, the
//! matrix-unit structure constants, and the weight/raising identities for
//! lowering words on highest-vector seeds.

use num_bigint::BigInt;
use proptest::prelude::*;

use ternary_core::action::{
    apply_combination, apply_generator, apply_word, commutator_action, commutator_in_basis,
    is_highest_vector, order_of, weight_of, Generator, Order,
};
use ternary_core::linalg::{rref, solve, RationalMatrix, SolveStatus};
use ternary_core::parse::{parse_latex, parse_polynomial, polynomial_from_json};
use ternary_core::render::{render_json, render_latex, render_text};
use ternary_core::rep::falling_factorial;
use ternary_core::ring::{Monomial, Polynomial, Rational, RingConfig, VariableId};
use ternary_core::roberts::{hessian_covariant, lead_coefficient};

fn ring3() -> RingConfig {
    RingConfig::new(3).unwrap()
}

fn arb_variable() -> impl Strategy<Value = VariableId> {
    prop_oneof![
        (0u32..=3)
            .prop_flat_map(|i| (Just(i), 0u32..=(3 - i)))
            .prop_map(|(i, j)| VariableId::a(i, j)),
        (1u8..=3).prop_map(VariableId::x),
        (1u8..=3).prop_map(VariableId::u),
    ]
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((arb_variable(), 1u64..=3), 0..=3).prop_map(Monomial::from_exponents)
}

fn arb_coeff() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_monomial(), arb_coeff()), 0..=4).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    })
}

fn arb_generator() -> impl Strategy<Value = Generator> {
    (0..9usize).prop_map(|i| Generator::ALL[i])
}

fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |vals| {
            let rows: Vec<Vec<Rational>> = vals
                .chunks(c)
                .map(|row| {
                    row.iter()
                        .map(|&v| Rational::from(BigInt::from(v)))
                        .collect()
                })
                .collect();
            RationalMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(
        p in arb_poly(), q in arb_poly(), r in arb_poly()
    ) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn subtraction_cancels(p in arb_poly()) {
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn text_render_parses_back(p in arb_poly()) {
        let text = render_text(&p);
        prop_assert_eq!(parse_polynomial(&text, &ring3()).unwrap(), p);
    }

    #[test]
    fn latex_render_parses_back(p in arb_poly()) {
        let latex = render_latex(&p);
        prop_assert_eq!(parse_latex(&latex, &ring3()).unwrap(), p);
    }

    #[test]
    fn json_render_parses_back(p in arb_poly()) {
        let json = render_json(&p);
        prop_assert_eq!(polynomial_from_json(&json, &ring3()).unwrap(), p);
    }

    #[test]
    fn xu_decomposition_reassembles(p in arb_poly()) {
        let mut rebuilt = Polynomial::zero();
        for (xu, coeff) in p.xu_decomposition() {
            rebuilt = &rebuilt + &coeff.mul(&Polynomial::term(xu, Rational::new(
                BigInt::from(1), BigInt::from(1),
            )));
        }
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn generators_are_linear(g in arb_generator(), p in arb_poly(), q in arb_poly()) {
        let r = ring3();
        let lhs = apply_generator(g, &(&p + &q), &r);
        let rhs = &apply_generator(g, &p, &r) + &apply_generator(g, &q, &r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_satisfy_leibniz(g in arb_generator(), p in arb_poly(), q in arb_poly()) {
        let r = ring3();
        let lhs = apply_generator(g, &(&p * &q), &r);
        let rhs = &(&apply_generator(g, &p, &r) * &q) + &(&p * &apply_generator(g, &q, &r));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutators_realize_the_structure_constants(
        a in arb_generator(), b in arb_generator(), p in arb_poly()
    ) {
        let r = ring3();
        let direct = commutator_action(a, b, &p, &r);
        let expected = apply_combination(&commutator_in_basis(a, b), &p, &r);
        prop_assert_eq!(direct, expected);
    }

    #[test]
    fn isobaric_weights_add_under_multiplication(
        m1 in arb_monomial(), m2 in arb_monomial(), c1 in arb_coeff(), c2 in arb_coeff()
    ) {
        let r = ring3();
        let p = Polynomial::term(m1, c1);
        let q = Polynomial::term(m2, c2);
        if p.is_zero() || q.is_zero() {
            return Ok(());
        }
        let pw = weight_of(&p, &r).unwrap();
        let qw = weight_of(&q, &r).unwrap();
        prop_assert_eq!(weight_of(&(&p * &q), &r).unwrap(), pw.add(&qw));
    }

    #[test]
    fn rref_is_idempotent(m in arb_matrix()) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, twice.rank);
        prop_assert_eq!(once.pivot_columns, twice.pivot_columns);
    }

    #[test]
    fn solve_classification_is_consistent(m in arb_matrix(), seed in prop::collection::vec(-6i64..=6, 1..=5)) {
        let b: Vec<Rational> = (0..m.rows())
            .map(|i| Rational::from(BigInt::from(*seed.get(i).unwrap_or(&0))))
            .collect();
        let report = solve(&m, &b).unwrap();
        match report.status {
            SolveStatus::Unique => {
                // Internal re-verification already ran; double-check here.
                let x = report.solution.unwrap();
                for r in 0..m.rows() {
                    let mut acc = Rational::from(BigInt::from(0));
                    for (c, v) in m.row_sparse(r) {
                        acc += v * &x[c];
                    }
                    prop_assert_eq!(acc, b[r].clone());
                }
                prop_assert_eq!(report.rank, m.cols());
            }
            SolveStatus::Underdetermined | SolveStatus::Inconsistent => {
                prop_assert!(report.solution.is_none());
                prop_assert!(report.rank < m.cols() || report.status == SolveStatus::Inconsistent);
            }
        }
    }
}

fn seed_polynomials() -> Vec<(Polynomial, RingConfig)> {
    let cubic = ring3();
    let seed = parse_polynomial("a[0,0]*a[2,0]-a[1,0]^2", &cubic).unwrap();
    let a00 = parse_polynomial("a[0,0]", &cubic).unwrap();
    vec![(a00, cubic), (seed, cubic)]
}

#[test]
fn weight_identities_for_lowering_words() {
    // E1(Dh1^a Dh2^b Dh3^c (s)) = (w1 - 2a + b - c) · Dh1^a Dh2^b Dh3^c (s)
    // E2(Dh1^a Dh2^b Dh3^c (s)) = (w2 + a - 2b - c) · Dh1^a Dh2^b Dh3^c (s)
    // The E2 coefficient carries -c.
    for (seed, r) in seed_polynomials() {
        let w = weight_of(&seed, &r).unwrap();
        for a in 0..=4u32 {
            for b in 0..=(4 - a) {
                for c in 0..=(4 - a - b) {
                    let word = [
                        (Generator::Dh1, a),
                        (Generator::Dh2, b),
                        (Generator::Dh3, c),
                    ];
                    let img = apply_word(&word, &seed, &r);
                    let (a64, b64, c64) = (i64::from(a), i64::from(b), i64::from(c));
                    let l1 = w.l1 - 2 * a64 + b64 - c64;
                    let l2 = w.l2 + a64 - 2 * b64 - c64;
                    let e1 = apply_generator(Generator::E1, &img, &r);
                    let e2 = apply_generator(Generator::E2, &img, &r);
                    assert_eq!(e1, img.scale(&Rational::from(BigInt::from(l1))));
                    assert_eq!(e2, img.scale(&Rational::from(BigInt::from(l2))));
                }
            }
        }
    }
}

#[test]
fn raising_identities_for_lowering_words() {
    // For a highest-vector seed s of weight (w1, w2):
    // D1(Dh1^a Dh2^b Dh3^c (s)) = a (w1 + b - c - a + 1) Dh1^(a-1) Dh2^b Dh3^c (s)
    //                             - c Dh1^a Dh2^(b+1) Dh3^(c-1) (s)
    // D2(Dh1^a Dh2^b Dh3^c (s)) = b (w2 - b + 1) Dh1^a Dh2^(b-1) Dh3^c (s)
    //                             + c Dh1^(a+1) Dh2^b Dh3^(c-1) (s)
    // In the D2 coefficient the -c shift from passing E2 through Dh3^c is
    // cancelled by [Dh2, Dh1] = Dh3 commutator terms, so w2 enters unshifted
    // (unlike w1 in the D1 line, where the shifted weight of Dh2^b Dh3^c (s)
    // appears).
    let word = |a: u32, b: u32, c: u32, s: &Polynomial, r: &RingConfig| {
        apply_word(
            &[
                (Generator::Dh1, a),
                (Generator::Dh2, b),
                (Generator::Dh3, c),
            ],
            s,
            r,
        )
    };
    for (seed, r) in seed_polynomials() {
        assert!(is_highest_vector(&seed, &r));
        let w = weight_of(&seed, &r).unwrap();
        for a in 0..=4u32 {
            for b in 0..=(4 - a) {
                for c in 0..=(4 - a - b) {
                    let img = word(a, b, c, &seed, &r);
                    let (a64, b64, c64) = (i64::from(a), i64::from(b), i64::from(c));

                    let d1 = apply_generator(Generator::D1, &img, &r);
                    let mut expected1 = Polynomial::zero();
                    if a > 0 {
                        let coef = a64 * (w.l1 + b64 - c64 - a64 + 1);
                        expected1 = &expected1
                            + &word(a - 1, b, c, &seed, &r)
                                .scale(&Rational::from(BigInt::from(coef)));
                    }
                    if c > 0 {
                        expected1 = &expected1
                            - &word(a, b + 1, c - 1, &seed, &r)
                                .scale(&Rational::from(BigInt::from(c64)));
                    }
                    assert_eq!(d1, expected1, "D1 at ({a}, {b}, {c})");

                    let d2 = apply_generator(Generator::D2, &img, &r);
                    let mut expected2 = Polynomial::zero();
                    if b > 0 {
                        let coef = b64 * (w.l2 - b64 + 1);
                        expected2 = &expected2
                            + &word(a, b - 1, c, &seed, &r)
                                .scale(&Rational::from(BigInt::from(coef)));
                    }
                    if c > 0 {
                        expected2 = &expected2
                            + &word(a + 1, b, c - 1, &seed, &r)
                                .scale(&Rational::from(BigInt::from(c64)));
                    }
                    assert_eq!(d2, expected2, "D2 at ({a}, {b}, {c})");
                }
            }
        }
    }
}

#[test]
fn order_equals_weight_on_highest_vectors() {
    let mut cases: Vec<(Polynomial, RingConfig)> = Vec::new();
    for n in 1..=3u32 {
        let r = RingConfig::new(n).unwrap();
        cases.push((parse_polynomial("a[0,0]", &r).unwrap(), r));
    }
    for n in 2..=3u32 {
        let r = RingConfig::new(n).unwrap();
        cases.push((parse_polynomial("a[0,0]*a[2,0]-a[1,0]^2", &r).unwrap(), r));
    }
    let cubic = ring3();
    cases.push((
        lead_coefficient(&hessian_covariant(&cubic).unwrap(), &cubic).unwrap(),
        cubic,
    ));
    for (seed, r) in cases {
        assert!(is_highest_vector(&seed, &r));
        let w = weight_of(&seed, &r).unwrap();
        let o = order_of(&seed, &r).unwrap();
        assert_eq!(
            o,
            Order {
                o1: w.l1 as u64,
                o2: w.l2 as u64
            },
            "order/weight mismatch for weight {w}"
        );
    }
}

#[test]
fn falling_factorial_matches_reconstruction_divisors() {
    // [d, i+j-1]! = d(d-1)...(d-(i+j)+1) with i+j factors.
    assert_eq!(falling_factorial(2, 2), BigInt::from(2));
    for d in 0..=6i64 {
        assert_eq!(falling_factorial(d, 0), BigInt::from(1));
        for t in 1..=4u32 {
            let expected: i64 = (0..i64::from(t)).map(|k| d - k).product();
            assert_eq!(falling_factorial(d, t), BigInt::from(expected));
        }
    }
}
