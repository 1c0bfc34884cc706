mod common;

use std::collections::BTreeMap;

use common::{unfold, NaiveStar};
use entropoid::powindex::{
    b_max, catalan, counted_op_count, enumerate_shapes, equivalence_classes, narayana, narayana_row, op_count,
    pow_oracle, random_index, representative, representatives, ShapeTree,
};
use entropoid::{pow_fast, Entropoid128, Entropoid64, Error, PowerIndex, PrimeModulus};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn e7() -> Entropoid64 {
    Entropoid64::from_u64(7, 6, 3, 3, 4).unwrap()
}

fn e49223() -> Entropoid64 {
    Entropoid64::from_u64(49223, 33170, 13052, 12476, 19648).unwrap()
}

fn idx(base: u32, a: u64, pattern: &[u32]) -> PowerIndex {
    PowerIndex::new(base, &BigUint::from(a), pattern.to_vec()).unwrap()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn catalan_and_narayana_values() {
    let cat: Vec<u64> = (0..10).map(|n| catalan(n).try_into().unwrap()).collect();
    assert_eq!(cat, [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]);
    assert_eq!(narayana_row(5), [1u32, 10, 20, 10, 1].map(BigUint::from));
    for n in 1..=10 {
        assert_eq!(narayana(n, 1), big(1));
        assert_eq!(narayana(n, n), big(1));
        let row: BigUint = narayana_row(n).into_iter().sum();
        assert_eq!(row, catalan(n));
    }
    assert_eq!(narayana(0, 0), big(1));
    assert_eq!(narayana(3, 0), big(0));
    for a in 1..=9 {
        assert_eq!(BigUint::from(enumerate_shapes(a).len()), catalan(a as u64 - 1));
    }
}

#[test]
fn b_max_values() {
    assert_eq!(b_max(&big(7)), 6);
    // C_5 = 42 <= 100 < C_6 = 132
    assert_eq!(b_max(&big(11)), 7);
    let mut prev = 0;
    for p in [5u64, 7, 11, 13, 23, 47, 1019, 49223, 1 << 31] {
        let b = b_max(&big(p));
        let order = big((p - 1) * (p - 1));
        assert!(catalan(b - 1) > order && catalan(b - 2) <= order);
        assert!(b >= prev);
        prev = b;
    }
}

#[test]
fn representatives_of_example_elements() {
    let e = e7();
    let x = e.elem(0, 2);
    assert_eq!(representatives(&e, &x, 2).unwrap(), vec![e.star(&x, &x)]);
    let r4: std::collections::BTreeSet<_> = representatives(&e, &x, 4).unwrap().iter().map(|v| e.pair_u64(v)).collect();
    assert_eq!(r4, [(3, 2), (2, 4), (4, 3)].into());
    let y = e.elem(0, 3);
    let r4: std::collections::BTreeSet<_> = representatives(&e, &y, 4).unwrap().iter().map(|v| e.pair_u64(v)).collect();
    assert_eq!(r4, [(3, 3), (0, 6)].into());
}

#[test]
fn recurrence_matches_direct_representatives_and_oracle_shapes() {
    let e = e49223();
    let naive = NaiveStar::new(49223, 33170, 13052, 12476, 19648);
    let x = e.elem(21287, 34883);
    for a in 2..=12u32 {
        let reps = representatives(&e, &x, a).unwrap();
        assert_eq!(reps.len(), a as usize - 1);
        for (j, r) in reps.iter().enumerate() {
            assert_eq!(*r, representative(&e, &x, a, j as u32).unwrap());
            let shape = common::rep_shape(a as usize, j);
            assert_eq!(shape.leaves(), a as usize);
            assert_eq!(e.pair_u64(r), naive.eval(&shape, (21287, 34883)));
        }
    }
}

#[test]
fn appendix_b_base_3_values() {
    let e = e49223();
    let g = e.elem(21287, 34883);
    let cases: [(u64, &[u32], (u64, u64)); 4] = [
        (3, &[0, 0], (22143, 3374)),
        (3, &[0, 1], (9735, 2125)),
        (9, &[0, 0, 0], (12320, 26593)),
        (9, &[0, 1, 0], (28416, 42082)),
    ];
    for (a, pat, want) in cases {
        assert_eq!(e.pair_u64(&pow_fast(&e, &g, &idx(3, a, pat))), want, "{a} {pat:?}");
    }
}

#[test]
fn unit_is_fixed_by_every_power() {
    let e = e7();
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    for _ in 0..500 {
        let base = rng.random_range(2..9);
        let i = random_index(base, &big(1 << 30), &mut rng).unwrap();
        assert_eq!(pow_fast(&e, e.one_star(), &i), *e.one_star());
    }
}

#[test]
fn oracle_agreement_for_small_exponents() {
    let e = e49223();
    let naive = NaiveStar::new(49223, 33170, 13052, 12476, 19648);
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    for base in [2u32, 3, 4] {
        for a in 1..=12u64 {
            for _ in 0..200 {
                let x = e.random_element(&mut rng);
                let n = entropoid::powindex::digit_len(&big(a), base);
                let pat = entropoid::powindex::random_pattern(base, n, &mut rng);
                let i = idx(base, a, &pat);
                let tree = unfold(&i);
                assert_eq!(tree.leaves() as u64, a);
                let fast = pow_fast(&e, &x, &i);
                assert_eq!(fast, pow_oracle(&e, &x, &tree));
                assert_eq!(e.pair_u64(&fast), naive.eval(&tree, e.pair_u64(&x)));
                assert_eq!(counted_op_count(&i), op_count(&i));
                // rungs are shared subtrees, so the tree is never smaller than the work
                assert!(op_count(&i) <= tree.internal_nodes() as u64);
            }
        }
    }
}

#[test]
fn op_count_examples() {
    assert_eq!(op_count(&PowerIndex::binary(1).unwrap()), 0);
    let five = idx(2, 5, &[0, 0, 0]);
    assert_eq!(five.digits(), &[1, 0, 1]);
    assert_eq!(op_count(&five), 3);
    assert_eq!(counted_op_count(&five), 3);
}

#[test]
fn primary_left_to_right_shape_is_iterated_right_multiplication() {
    let e = e7();
    let x = e.elem(0, 2);
    let mut acc = x;
    for a in 2..12 {
        acc = e.star(&acc, &x);
        assert_eq!(pow_oracle(&e, &x, &ShapeTree::left_comb(a)), acc);
    }
    assert_eq!(pow_oracle(&e, &x, &ShapeTree::right_comb(3)), e.star(&x, &e.star(&x, &x)));
}

#[test]
fn four_factor_shapes_split_one_three_one() {
    let e = e7();
    let g = e.elem(0, 2);
    let mut counts: BTreeMap<_, u32> = BTreeMap::new();
    for t in enumerate_shapes(4) {
        *counts.entry(pow_oracle(&e, &g, &t)).or_default() += 1;
    }
    let mut sizes: Vec<u32> = counts.into_values().collect();
    sizes.sort();
    assert_eq!(sizes, [1, 1, 3]);
}

#[test]
fn equivalence_classes_follow_narayana_rows() {
    let e = e7();
    let g = e.elem(0, 2);
    // beyond a = 7 the 36-element span forces distinct classes to collide
    for a in 2..=7u32 {
        let c = equivalence_classes(&e, &g, a).unwrap();
        let mut sizes = c.sizes();
        sizes.sort();
        let mut want: Vec<u64> = narayana_row(a as u64 - 1).into_iter().map(|v| v.try_into().unwrap()).collect();
        want.sort();
        assert_eq!(sizes, want, "a = {a}");
        let reps = representatives(&e, &g, a).unwrap();
        for (j, class) in c.classes.iter().enumerate() {
            assert_eq!(class.representative, Some(j));
            assert_eq!(class.value, reps[j]);
            let members = class.members.as_ref().unwrap();
            assert_eq!(members.len() as u64, class.size);
            assert!(members.iter().all(|t| pow_oracle(&e, &g, t) == class.value));
        }
    }
    let c = equivalence_classes(&e, &g, 14).unwrap();
    assert_eq!(c.total(), 742900);
    assert!(c.classes[0].members.is_none());
    assert!(matches!(equivalence_classes(&e, &g, 15), Err(Error::TooLarge(_))));
}

#[test]
fn narayana_classes_for_generic_elements_at_128_bits() {
    let m = PrimeModulus::safe(common::safe_prime(128)).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let e = Entropoid128::random(m, &mut rng).unwrap();
    let g = e.random_unit(&mut rng);
    for a in 2..=12u32 {
        let mut sizes = equivalence_classes(&e, &g, a).unwrap().sizes();
        sizes.sort();
        let mut want: Vec<u64> = narayana_row(a as u64 - 1).into_iter().map(|v| v.try_into().unwrap()).collect();
        want.sort();
        assert_eq!(sizes, want);
    }
}

#[test]
fn index_validation_and_text_form() {
    assert!(PowerIndex::new(3, &big(0), vec![0]).is_err());
    assert!(PowerIndex::new(1, &big(5), vec![0]).is_err());
    assert!(PowerIndex::new(3, &big(5), vec![0]).is_err());
    assert!(PowerIndex::new(3, &big(5), vec![0, 2]).is_err());
    assert!(PowerIndex::from_digits(3, vec![1, 0], vec![0, 0]).is_err());
    let i = idx(3, 5, &[1, 0]);
    assert_eq!(i.digits(), &[2, 1]);
    assert_eq!(i.to_string(), "b:3;a:5;p:1,0");
    assert_eq!("b:3;a:5;p:1,0".parse::<PowerIndex>().unwrap(), i);
    assert_eq!(" b:257 ; a:258 ; p:255,3 ".parse::<PowerIndex>().unwrap().digits(), &[1, 1]);
    for bad in ["b:3;a:5", "b:3;a:x;p:0,0", "b:3;a:5;p:0;q:1", "nonsense"] {
        assert!(bad.parse::<PowerIndex>().is_err(), "{bad}");
    }
}

#[test]
fn random_index_properties() {
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    for _ in 0..10_000 {
        let base = rng.random_range(2..20);
        let i = random_index(base, &big(1_000_000), &mut rng).unwrap();
        assert!(i.pattern().iter().all(|&d| d <= base - 2));
        assert!(i.digits().iter().all(|&d| d < base));
        let a = i.a();
        assert!(a >= big(1) && a < big(1_000_000));
        if base == 2 {
            assert!(i.pattern().iter().all(|&d| d == 0));
        }
    }
    let a = random_index(5, &big(1 << 40), &mut ChaCha20Rng::seed_from_u64(9)).unwrap();
    let b = random_index(5, &big(1 << 40), &mut ChaCha20Rng::seed_from_u64(9)).unwrap();
    assert_eq!(a, b);
}

fn e128() -> (Entropoid128, ChaCha20Rng) {
    let m = PrimeModulus::safe(common::safe_prime(128)).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    (Entropoid128::random(m, &mut rng).unwrap(), rng)
}

#[test]
fn palintropy_with_mixed_bases() {
    let (e, mut rng) = e128();
    let bound = e.p().clone();
    for _ in 0..1000 {
        let b1 = [2u32, 3, 5, 7][rng.random_range(0..4)];
        let b2 = [2u32, 3, 5, 7][rng.random_range(0..4)];
        let x = e.random_unit(&mut rng);
        let ia = random_index(b1, &bound, &mut rng).unwrap();
        let ib = random_index(b2, &bound, &mut rng).unwrap();
        let ab = pow_fast(&e, &pow_fast(&e, &x, &ia), &ib);
        let ba = pow_fast(&e, &pow_fast(&e, &x, &ib), &ia);
        assert_eq!(ab, ba);
    }
}

#[test]
fn powers_distribute_over_products() {
    let (e, mut rng) = e128();
    let bound = e.p().clone();
    for _ in 0..1000 {
        let base = rng.random_range(2..9);
        let i = random_index(base, &bound, &mut rng).unwrap();
        let x = e.random_element(&mut rng);
        let y = e.random_element(&mut rng);
        assert_eq!(pow_fast(&e, &e.star(&x, &y), &i), e.star(&pow_fast(&e, &x, &i), &pow_fast(&e, &y, &i)));
    }
}

#[test]
fn composed_exponent_has_product_integer_part() {
    // Composing (a) then (b) lands on a bracketing of a*b copies of g.
    // In E_49 with a generator, the value set of all a*b-fold products is
    // exactly the set reached by composition.
    let e = e7();
    let g = e.elem(0, 2);
    for (a, b) in [(2u64, 3u64), (3, 3), (2, 5), (4, 3)] {
        let ab = (a * b) as u32;
        let classes = equivalence_classes(&e, &g, ab).unwrap();
        for base_a in [2u32, 3] {
            for base_b in [2u32, 3] {
                for pa in 0..(base_a - 1) {
                    for pb in 0..(base_b - 1) {
                        let na = entropoid::powindex::digit_len(&big(a), base_a);
                        let nb = entropoid::powindex::digit_len(&big(b), base_b);
                        let ia = idx(base_a, a, &vec![pa; na]);
                        let ib = idx(base_b, b, &vec![pb; nb]);
                        let v = pow_fast(&e, &pow_fast(&e, &g, &ia), &ib);
                        assert!(classes.classes.iter().any(|c| c.value == v));
                        let tree = common::compose(&unfold(&ib), &unfold(&ia));
                        assert_eq!(tree.leaves() as u64, a * b);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ladder_equals_oracle(a in 1u64..200, base in 2u32..6, seed in any::<u64>()) {
        let e = e49223();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let n = entropoid::powindex::digit_len(&big(a), base);
        let pat = entropoid::powindex::random_pattern(base, n, &mut rng);
        let i = idx(base, a, &pat);
        let x = e.random_element(&mut rng);
        prop_assert_eq!(pow_fast(&e, &x, &i), pow_oracle(&e, &x, &unfold(&i)));
        prop_assert_eq!(counted_op_count(&i), op_count(&i));
    }

    #[test]
    fn text_form_roundtrips(a in 1u64..u64::MAX, base in 2u32..300, seed in any::<u64>()) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let n = entropoid::powindex::digit_len(&big(a), base);
        let i = idx(base, a, &entropoid::powindex::random_pattern(base, n, &mut rng));
        prop_assert_eq!(i.to_string().parse::<PowerIndex>().unwrap(), i);
    }
}
