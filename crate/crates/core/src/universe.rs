//! Generators for small ordinal universes, exhaustive and random.

use rand::Rng;

use crate::ordinal::Ordinal;

/// Every ordinal whose exponents form a strictly decreasing selection of at
/// most `max_terms` members of `exponents`, with coefficients in
/// `1..=max_coef`. Sorted ascending.
pub fn exhaustive(exponents: &[Ordinal], max_coef: u64, max_terms: usize) -> Vec<Ordinal> {
    let mut exps = exponents.to_vec();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.dedup();
    let mut out = Vec::new();
    let mut terms = Vec::new();
    collect(&exps, max_coef, max_terms, &mut terms, &mut out);
    out.sort_unstable();
    out
}

fn collect(
    exps: &[Ordinal],
    max_coef: u64,
    room: usize,
    terms: &mut Vec<(Ordinal, u64)>,
    out: &mut Vec<Ordinal>,
) {
    out.push(Ordinal::from_terms(terms.iter().cloned()).expect("descending by construction"));
    if room == 0 {
        return;
    }
    for (i, e) in exps.iter().enumerate() {
        for c in 1..=max_coef {
            terms.push((e.clone(), c));
            collect(&exps[i + 1..], max_coef, room - 1, terms, out);
            terms.pop();
        }
    }
}

/// All ordinals below `ω^k` with coefficients at most `max_coef`.
pub fn below_omega_power(k: u64, max_coef: u64) -> Vec<Ordinal> {
    let exps: Vec<Ordinal> = (0..k).map(Ordinal::nat).collect();
    exhaustive(&exps, max_coef, k as usize)
}

/// Ordinals below `ω_d(l+1)` with coefficients at most `max_coef` and at
/// most `max_terms` terms at every level. Level 0 is `{0, …, l}`.
pub fn below_tower(d: usize, l: u64, max_coef: u64, max_terms: usize) -> Vec<Ordinal> {
    if d == 0 {
        return (0..=l).map(Ordinal::nat).collect();
    }
    let exps = below_tower(d - 1, l, max_coef, max_terms);
    exhaustive(&exps, max_coef, max_terms)
}

/// A random ordinal below `ω_d(l+1)`.
pub fn random_below_tower<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    l: u64,
    max_coef: u64,
    max_terms: usize,
) -> Ordinal {
    if d == 0 {
        return Ordinal::nat(rng.gen_range(0..=l));
    }
    let count = rng.gen_range(0..=max_terms);
    let mut exps: Vec<Ordinal> = (0..count)
        .map(|_| random_below_tower(rng, d - 1, l, max_coef, max_terms))
        .collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.dedup();
    Ordinal::from_terms(exps.into_iter().map(|e| (e, rng.gen_range(1..=max_coef))))
        .expect("descending by construction")
}

/// A random nonzero ordinal below `ω_d(l+1)`.
///
/// # Panics
///
/// When `d = l = 0`, since 0 is the only ordinal below 1.
pub fn random_nonzero<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    l: u64,
    max_coef: u64,
    max_terms: usize,
) -> Ordinal {
    assert!(d > 0 || l > 0, "no nonzero ordinal below 1");
    loop {
        let a = random_below_tower(rng, d, l, max_coef, max_terms);
        if !a.is_zero() {
            return a;
        }
    }
}

/// `count` distinct random ordinals below `ω_d(l+1)`, in strictly
/// descending order. Returns fewer when the universe is too small.
pub fn random_descending<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    d: usize,
    l: u64,
    max_coef: u64,
    max_terms: usize,
) -> Vec<Ordinal> {
    let mut out: Vec<Ordinal> = Vec::with_capacity(count);
    for _ in 0..count * 20 {
        if out.len() == count {
            break;
        }
        let a = random_below_tower(rng, d, l, max_coef, max_terms);
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::ordinal::omega_tower;

    #[test]
    fn sizes() {
        assert_eq!(below_omega_power(3, 3).len(), 64);
        assert_eq!(below_omega_power(2, 2).len(), 9);
        assert_eq!(below_tower(1, 1, 2, 2).len(), 9);
        // 9 exponents, up to 2 terms: 1 + 9*2 + 36*4.
        assert_eq!(below_tower(2, 1, 2, 2).len(), 163);
        let u = below_tower(2, 1, 2, 3);
        assert!(u.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn random_stays_below_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 0..4 {
            for l in 0..3 {
                let bound = omega_tower(d, l + 1).unwrap();
                for _ in 0..50 {
                    assert!(random_below_tower(&mut rng, d, l, 3, 3) < bound);
                }
            }
        }
        let desc = random_descending(&mut rng, 10, 2, 1, 2, 3);
        assert_eq!(desc.len(), 10);
        assert!(desc.windows(2).all(|w| w[0] > w[1]));
    }
}
