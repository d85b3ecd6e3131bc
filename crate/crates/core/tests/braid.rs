#![allow(clippy::needless_range_loop)]

use billiard_knots::braid::{
    closure_components, pad, quasitoric, toric, BraidError, BraidWord, Letter, QuasitoricSpec, Sign,
};
use proptest::prelude::*;

use Sign::{Neg, Pos};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn toric_examples() {
    assert_eq!(toric(2, 3).unwrap().to_string(), "s1 s1 s1");
    assert_eq!(toric(3, 2).unwrap().to_string(), "s1 s2 s1 s2");
    assert_eq!(toric(3, 10).unwrap().len(), 20);
    assert!(toric(1, 3).is_err());
    assert!(toric(3, 0).is_err());
}

#[test]
fn quasitoric_examples() {
    let spec = QuasitoricSpec::new(2, 5, vec![Pos, Pos, Pos, Pos, Neg]).unwrap();
    assert_eq!(quasitoric(&spec).unwrap().to_string(), "s1 s1 s1 s1 s1^-1");
    let plus = QuasitoricSpec::toric(4, 7).unwrap();
    assert_eq!(quasitoric(&plus).unwrap(), toric(4, 7).unwrap());
    assert!(matches!(
        QuasitoricSpec::new(2, 5, vec![Pos; 4]),
        Err(BraidError::LengthMismatch { expected: 5, got: 4, .. })
    ));
}

#[test]
fn component_examples() {
    assert_eq!(closure_components(&toric(2, 3).unwrap()), 1);
    assert_eq!(closure_components(&BraidWord::new(3, vec![]).unwrap()), 3);
    assert_eq!(closure_components(&toric(2, 4).unwrap()), 2);
}

#[test]
fn pad_examples() {
    let trefoil = QuasitoricSpec::toric(2, 3).unwrap();
    let padded = pad(&trefoil, 5).unwrap();
    assert_eq!(padded.n, 5);
    assert_eq!(padded.signs, vec![Pos, Pos, Pos, Pos, Neg]);
    let w = quasitoric(&padded).unwrap();
    assert_eq!(w.exponent_sum(), 3);
    assert_eq!(closure_components(&w), 1);

    let seven = pad(&trefoil, 7).unwrap();
    assert_eq!(seven.n, 7);
    assert_eq!(quasitoric(&seven).unwrap().exponent_sum(), 3);

    assert_eq!(pad(&padded, 5).unwrap(), padded);
    let good = QuasitoricSpec::toric(3, 7).unwrap();
    assert_eq!(pad(&good, 5).unwrap(), good);
    assert_eq!(pad(&QuasitoricSpec::toric(3, 4).unwrap(), 7), Err(BraidError::Uncertified { p: 3 }));
}

#[test]
fn pad_two_component_link() {
    let hopf_like = QuasitoricSpec::toric(2, 4).unwrap();
    let padded = pad(&hopf_like, 0).unwrap();
    assert_eq!(padded.n, 6);
    assert_eq!(padded.components(), 2);
    let w = quasitoric(&padded).unwrap();
    assert_eq!(closure_components(&w), 2);
    assert_eq!(w.exponent_sum(), 4);
}

fn arb_spec() -> impl Strategy<Value = QuasitoricSpec> {
    (2usize..6, 1usize..12).prop_flat_map(|(p, n)| {
        proptest::collection::vec(prop_oneof![Just(Pos), Just(Neg)], n * (p - 1))
            .prop_map(move |signs| QuasitoricSpec::new(p, n, signs).unwrap())
    })
}

proptest! {
    #[test]
    fn toric_permutation_is_a_cycle_power(p in 2usize..9, n in 1usize..30) {
        let w = toric(p, n).unwrap();
        prop_assert_eq!(w.len(), n * (p - 1));
        let perm = w.permutation();
        for s in 0..p {
            prop_assert_eq!(perm[s], (s + p * n - n) % p);
        }
        prop_assert_eq!(closure_components(&w), gcd(p, n));
    }

    #[test]
    fn signs_do_not_change_components(spec in arb_spec()) {
        let w = quasitoric(&spec).unwrap();
        prop_assert_eq!(closure_components(&w), spec.components());
        let text = w.to_string();
        prop_assert_eq!(BraidWord::parse(&text, Some(spec.p)).unwrap(), w);
    }

    #[test]
    fn two_strand_padding_preserves_closure(n in 1usize..15, bits in proptest::collection::vec(any::<bool>(), 15), n_min in 0usize..25) {
        let signs = bits[..n].iter().map(|&b| if b { Pos } else { Neg }).collect();
        let spec = QuasitoricSpec::new(2, n, signs).unwrap();
        let out = pad(&spec, n_min).unwrap();
        prop_assert!(out.n >= n_min && out.is_admissible());
        prop_assert_eq!(&out.signs[..n], &spec.signs[..]);
        let (a, b) = (quasitoric(&spec).unwrap(), quasitoric(&out).unwrap());
        prop_assert_eq!(a.exponent_sum(), b.exponent_sum());
        prop_assert_eq!(closure_components(&a), closure_components(&b));
    }

    #[test]
    fn concatenation_adds_periods(a in arb_spec(), extra in 1usize..5) {
        let b = QuasitoricSpec::toric(a.p, extra).unwrap();
        let c = a.concat(&b).unwrap();
        prop_assert_eq!(c.n, a.n + extra);
        let mut letters: Vec<Letter> = quasitoric(&a).unwrap().letters;
        letters.extend(quasitoric(&b).unwrap().letters);
        prop_assert_eq!(quasitoric(&c).unwrap().letters, letters);
    }
}
