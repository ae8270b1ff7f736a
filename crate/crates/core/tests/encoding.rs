use frt_lab::encoding::{code_len, code_leq, encode, window_lemma_check, CodeVector};
use frt_lab::universe::random_below_tower;
use frt_lab::{Error, Ordinal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn v(xs: &[u64]) -> CodeVector {
    CodeVector::from(xs.to_vec())
}

proptest! {
    #[test]
    fn length_law(seed in any::<u64>(), d in 1usize..=4, l in 0u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alphas: Vec<Ordinal> = (0..d).map(|_| random_below_tower(&mut rng, d, l, 3, 3)).collect();
        let code = encode(l, d, &alphas).unwrap();
        prop_assert_eq!(code.len(), 2 * d + l as usize - 1);
        prop_assert_eq!(code.len(), code_len(l, d));
        prop_assert_eq!(encode(l, d, &alphas).unwrap(), code);
    }
}

#[test]
fn encode_examples() {
    assert_eq!(encode(2, 1, &[o("w^2*2+1")]).unwrap(), v(&[2, 0, 1]));
    let a = o("w^2+w*3");
    assert_eq!(encode(0, 2, &[a.clone(), a]).unwrap(), v(&[0, 0, 0]));
    assert_eq!(
        encode(0, 2, &[o("w^2*3+w"), o("w^2*3")]).unwrap(),
        v(&[2, 1, 1])
    );
}

#[test]
fn encode_errors() {
    assert!(matches!(encode(0, 1, &[o("w")]), Err(Error::Domain(_))));
    assert!(matches!(
        encode(1, 2, &[o("w^(w^2)"), o("1")]),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        encode(1, 2, &[o("1")]),
        Err(Error::Arity {
            expected: 2,
            got: 1
        })
    ));
}

#[test]
fn code_leq_examples() {
    assert!(code_leq(&v(&[2, 1, 1]), &v(&[2, 1, 1])).unwrap());
    assert!(!code_leq(&v(&[1, 5, 0]), &v(&[2, 0, 0])).unwrap());
    assert!(code_leq(&v(&[0, 0, 0]), &v(&[4, 0, 9])).unwrap());
    assert!(code_leq(&v(&[0, 0]), &v(&[0, 0, 0])).is_err());
}

#[test]
fn window_examples() {
    let a = o("w^w+3");
    assert!(window_lemma_check(1, 2, &[a.clone(), a.clone(), a]).unwrap());
    let desc = [o("w^(w+1)"), o("w^w*2"), o("w^3")];
    assert!(window_lemma_check(1, 2, &desc).unwrap());
    let first = encode(1, 2, &desc[..2]).unwrap();
    let second = encode(1, 2, &desc[1..]).unwrap();
    assert!(!code_leq(&first, &second).unwrap());
    assert!(window_lemma_check(1, 2, &[o("1"), o("w^w"), o("0")]).unwrap());
}
