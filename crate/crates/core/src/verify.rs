//! Property suites over exhaustive and random ordinal universes.
//!
//! Each suite runs a list of named checks and counts violations. Random
//! cases draw from a ChaCha stream seeded per case, and the seed of every
//! reported failure is echoed so the case can be replayed. Checks marked
//! exploratory probe statements beyond the proven range; their violations
//! are reported but not counted.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjacent::{ar_search, derive_bound_fn, lower_bound_coloring, ordinal_coloring};
use crate::encoding::{code_len, code_leq, encode, window_lemma_check, CodeVector};
use crate::error::{Error, Result};
use crate::evalfn::EvalFn;
use crate::fundamental::{
    descending_seq, find_alpha_large_with_budget, fund_step, is_alpha_large, FiniteSet,
};
use crate::ordinal::{comparison_data, max_data, ComparisonData, Ordinal};
use crate::parse::parse_ordinal;
use crate::ramsey::{
    build_compactness_tree, check_ks_instance, counterexample_size_fn, find_good_set, frt_holds_at,
    min_frt_witness, KsGoal, SearchConfig, SearchVerdict, SizeFunction, StrictSize, SubsetColoring,
};
use crate::subsets::LexSubsets;
use crate::universe::{
    below_omega_power, below_tower, random_below_tower, random_descending, random_nonzero,
};

const MAX_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    OrdinalOrder,
    ComparisonLemma,
    EncodingLemmas,
    Largeness,
    FrtConsistency,
    ArTransfer,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::OrdinalOrder,
        Suite::ComparisonLemma,
        Suite::EncodingLemmas,
        Suite::Largeness,
        Suite::FrtConsistency,
        Suite::ArTransfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OrdinalOrder => "ordinal-order",
            Suite::ComparisonLemma => "comparison-lemma",
            Suite::EncodingLemmas => "encoding-lemmas",
            Suite::Largeness => "largeness",
            Suite::FrtConsistency => "frt-consistency",
            Suite::ArTransfer => "ar-transfer",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }
}

/// Universe size profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Tiny,
    Small,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Tiny => "tiny",
            Profile::Small => "small",
        }
    }

    fn pick<T>(self, tiny: T, small: T) -> T {
        match self {
            Profile::Tiny => tiny,
            Profile::Small => small,
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tiny" => Ok(Profile::Tiny),
            "small" => Ok(Profile::Small),
            _ => Err(Error::Invalid(format!("unknown universe '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub skipped: u64,
    pub exploratory: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub case: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub universe: String,
    pub seed: u64,
    pub cases: u64,
    /// Violations of non-exploratory checks. Must be 0.
    pub violations: u64,
    pub checks: Vec<CheckReport>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    violations: u64,
    skipped: u64,
    failures: Vec<(u64, String)>,
}

impl Tally {
    fn pass(&mut self) {
        self.cases += 1;
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn expect(&mut self, case: u64, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push((case, detail()));
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.violations += other.violations;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|f| f.0);
        self.failures.truncate(MAX_FAILURES);
        self
    }
}

/// Runs `body(i, tally)` for `i in 0..n` on the rayon pool.
fn sweep<F>(n: u64, body: F) -> Tally
where
    F: Fn(u64, &mut Tally) + Sync,
{
    (0..n)
        .into_par_iter()
        .fold(Tally::default, |mut t, i| {
            body(i, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

struct Runner {
    suite: Suite,
    profile: Profile,
    seed: u64,
    checks: Vec<CheckReport>,
    failures: Vec<Failure>,
}

impl Runner {
    fn record(&mut self, name: &str, tally: Tally, exploratory: bool, seeded: Option<u64>) {
        let salt = self.checks.len() as u64;
        self.checks.push(CheckReport {
            name: name.to_string(),
            cases: tally.cases,
            violations: tally.violations,
            skipped: tally.skipped,
            exploratory,
        });
        for (case, detail) in tally.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(Failure {
                    check: name.to_string(),
                    case,
                    seed: seeded.map(|base| case_seed(base, salt, case)),
                    detail,
                });
            }
        }
    }

    fn check(&mut self, name: &str, tally: Tally) {
        self.record(name, tally, false, None);
    }

    fn explore(&mut self, name: &str, tally: Tally) {
        self.record(name, tally, true, None);
    }

    /// Salt for the next check; random checks seed their cases with it.
    fn salt(&self) -> u64 {
        self.checks.len() as u64
    }

    fn random_check(&mut self, name: &str, tally: Tally) {
        let seed = self.seed;
        self.record(name, tally, false, Some(seed));
    }

    fn finish(self) -> SuiteReport {
        let counted = self.checks.iter().filter(|c| !c.exploratory);
        SuiteReport {
            suite: self.suite.name().to_string(),
            universe: self.profile.name().to_string(),
            seed: self.seed,
            cases: self.checks.iter().map(|c| c.cases).sum(),
            violations: counted.map(|c| c.violations).sum(),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

/// Seed of random case `case` in the check with index `salt`.
pub fn case_seed(base: u64, salt: u64, case: u64) -> u64 {
    base ^ (salt << 48) ^ case
}

fn case_rng(base: u64, salt: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(case_seed(base, salt, case))
}

pub fn run_suite(suite: Suite, profile: Profile, seed: u64) -> Result<SuiteReport> {
    let mut r = Runner {
        suite,
        profile,
        seed,
        checks: Vec::new(),
        failures: Vec::new(),
    };
    match suite {
        Suite::OrdinalOrder => ordinal_order(&mut r),
        Suite::ComparisonLemma => comparison_lemma(&mut r),
        Suite::EncodingLemmas => encoding_lemmas(&mut r),
        Suite::Largeness => largeness(&mut r),
        Suite::FrtConsistency => frt_consistency(&mut r)?,
        Suite::ArTransfer => ar_transfer(&mut r)?,
    }
    Ok(r.finish())
}

fn ordinal_order(r: &mut Runner) {
    let k = r.profile.pick(2, 3);
    let u = below_omega_power(k, 3);
    let n = u.len() as u64;

    r.check(
        "trichotomy",
        sweep(n * n, |i, t| {
            let (a, b) = (&u[(i / n) as usize], &u[(i % n) as usize]);
            let ab = a.cmp(b);
            t.expect(
                i,
                ab == b.cmp(a).reverse() && (ab == Ordering::Equal) == (a == b),
                || format!("{a} vs {b}"),
            );
        }),
    );

    r.check(
        "transitivity",
        sweep(n, |i, t| {
            let a = &u[i as usize];
            for (j, b) in u.iter().enumerate() {
                for (l, c) in u.iter().enumerate() {
                    if a <= b && b <= c {
                        t.expect((i * n + j as u64) * n + l as u64, a <= c, || {
                            format!("{a} <= {b} <= {c}")
                        });
                    }
                }
            }
        }),
    );

    // The universe is listed by coefficient vectors in lexicographic order.
    let key = |a: &Ordinal| -> Vec<u64> {
        (0..k)
            .rev()
            .map(|e| a.coefficient_of(&Ordinal::nat(e)))
            .collect()
    };
    r.check(
        "coefficient-order",
        sweep(n * n, |i, t| {
            let (a, b) = (&u[(i / n) as usize], &u[(i % n) as usize]);
            t.expect(i, a.cmp(b) == key(a).cmp(&key(b)), || format!("{a} vs {b}"));
        }),
    );

    let salt = r.salt();
    let base = r.seed;
    let trips = r.profile.pick(1_000, 10_000);
    r.random_check(
        "round-trip",
        sweep(trips, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let d = rng.gen_range(0..=4);
            let l = rng.gen_range(0..=3);
            let a = random_below_tower(&mut rng, d, l, 5, 3);
            let text = a.to_string();
            t.expect(i, parse_ordinal(&text).as_ref() == Ok(&a), || text.clone());
        }),
    );
}

fn comparison_lemma(r: &mut Runner) {
    let mut universes = vec![below_omega_power(r.profile.pick(2, 3), 3)];
    if r.profile == Profile::Small {
        universes.push(below_tower(2, 1, 2, 2));
    }
    let mut tallies = [
        Tally::default(),
        Tally::default(),
        Tally::default(),
        Tally::default(),
    ];
    let mut offset = 0u64;
    for u in &universes {
        let n = u.len();
        let nn = n as u64;
        let data: Vec<Vec<ComparisonData>> = u
            .par_iter()
            .map(|a| u.iter().map(|b| comparison_data(a, b)).collect())
            .collect();
        let maxes: Vec<_> = u.iter().map(max_data).collect();

        let t = sweep(nn * nn, |i, t| {
            let (x, y) = ((i / nn) as usize, (i % nn) as usize);
            if u[x] > u[y] {
                let cd = &data[x][y];
                t.expect(offset + i, cd.cp <= maxes[x].mp, || {
                    format!("CP({}, {}) = {} > MP", u[x], u[y], cd.cp)
                });
            }
        });
        tallies[0] = std::mem::take(&mut tallies[0]).merge(t);

        let t = sweep(nn * nn, |i, t| {
            let (x, y) = ((i / nn) as usize, (i % nn) as usize);
            if u[x] > u[y] {
                let cd = &data[x][y];
                t.expect(offset + i, cd.cc <= maxes[x].mc, || {
                    format!("CC({}, {}) = {} > MC", u[x], u[y], cd.cc)
                });
            }
        });
        tallies[1] = std::mem::take(&mut tallies[1]).merge(t);

        let t = sweep(nn, |i, t| {
            let a = &u[i as usize];
            let m = max_data(a);
            for term in a.terms() {
                let e = max_data(term.exponent());
                t.expect(offset + i, e.mp <= m.mp && e.mc <= m.mc, || {
                    format!("exponent {} of {a}", term.exponent())
                });
            }
        });
        tallies[2] = std::mem::take(&mut tallies[2]).merge(t);

        let t = sweep(nn, |i, t| {
            let x = i as usize;
            for y in 0..n {
                let ab = &data[x][y];
                for z in 0..n {
                    let bc = &data[y][z];
                    if ab.cp <= bc.cp && ab.ce <= bc.ce && ab.cc <= bc.cc {
                        t.expect(
                            offset + (i * nn + y as u64) * nn + z as u64,
                            u[x] <= u[y],
                            || format!("({}, {}, {})", u[x], u[y], u[z]),
                        );
                    }
                }
            }
        });
        tallies[3] = std::mem::take(&mut tallies[3]).merge(t);
        offset += nn * nn * nn;
    }
    let [i1, i2, i3, i4] = tallies;
    r.check("cp-bounded-by-mp", i1);
    r.check("cc-bounded-by-mc", i2);
    r.check("exponent-max-data", i3);
    r.check("comparison-implies-order", i4);

    // Items 1 and 2 without the a > b restriction.
    let u = &universes[0];
    let nn = u.len() as u64;
    r.explore(
        "cp-bounded-by-mp-unrestricted",
        sweep(nn * nn, |i, t| {
            let (a, b) = (&u[(i / nn) as usize], &u[(i % nn) as usize]);
            t.expect(i, comparison_data(a, b).cp <= max_data(a).mp, || {
                format!("CP({a}, {b})")
            });
        }),
    );
}

fn show(xs: &[Ordinal]) -> String {
    let parts: Vec<String> = xs.iter().map(Ordinal::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn bound_of(a: &Ordinal) -> u64 {
    let m = max_data(a);
    m.mc.max(m.mp as u64)
}

fn encoding_lemmas(r: &mut Runner) {
    let base = r.seed;
    let randoms = r.profile.pick(1_000u64, 10_000);

    let salt = r.salt();
    r.random_check(
        "length-law",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let d = rng.gen_range(1..=4);
            let l = rng.gen_range(0..=3);
            let alphas: Vec<Ordinal> = (0..d)
                .map(|_| random_below_tower(&mut rng, d, l, 3, 3))
                .collect();
            let len = encode(l, d, &alphas).map(|c| c.len());
            t.expect(i, len == Ok(code_len(l, d)), || {
                format!("d={d} l={l}: {len:?}")
            });
        }),
    );

    // d = 1, l = 2: single ordinals below ω^3.
    let u1 = below_omega_power(3, 2);
    let codes1: Vec<CodeVector> = u1
        .iter()
        .map(|a| encode(2, 1, std::slice::from_ref(a)).unwrap())
        .collect();
    let n1 = u1.len() as u64;
    let mut window = sweep(n1 * n1, |i, t| {
        let (x, y) = ((i / n1) as usize, (i % n1) as usize);
        if u1[x] > u1[y] {
            t.expect(i, !code_leq(&codes1[x], &codes1[y]).unwrap(), || {
                format!("({}, {})", u1[x], u1[y])
            });
        }
    });
    let mut bound = sweep(n1, |i, t| {
        let a = &u1[i as usize];
        t.expect(i, codes1[i as usize].max_entry() <= bound_of(a), || {
            a.to_string()
        });
    });

    // d = 2, l = 1: pairs below ω_2(2) = ω^(ω^2).
    let u2 = below_tower(2, 1, 2, r.profile.pick(2, 3));
    let n2 = u2.len();
    let nn = n2 as u64;
    // pair_codes[x][y] for x > y (ascending universe).
    let pair_codes: Vec<Vec<CodeVector>> = (0..n2)
        .into_par_iter()
        .map(|x| {
            (0..x)
                .map(|y| encode(1, 2, &[u2[x].clone(), u2[y].clone()]).unwrap())
                .collect()
        })
        .collect();
    let offset = n1 * n1;
    window = window.merge(sweep(nn, |i, t| {
        let y = i as usize;
        for x in y + 1..n2 {
            let first = &pair_codes[x][y];
            for z in 0..y {
                t.expect(
                    offset + (x as u64 * nn + i) * nn + z as u64,
                    !code_leq(first, &pair_codes[y][z]).unwrap(),
                    || format!("({}, {}, {})", u2[x], u2[y], u2[z]),
                );
            }
        }
    }));
    bound = bound.merge(sweep(nn, |i, t| {
        let x = i as usize;
        let b = bound_of(&u2[x]);
        for y in 0..x {
            t.expect(
                n1 + i * nn + y as u64,
                pair_codes[x][y].max_entry() <= b,
                || format!("({}, {})", u2[x], u2[y]),
            );
        }
    }));
    r.check("window-lemma-exhaustive", window);
    r.check("window-bound-exhaustive", bound);

    let salt = r.salt();
    r.random_check(
        "window-lemma-random",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            let tuple = random_descending(&mut rng, d + 1, d, l, 3, 3);
            if tuple.len() < d + 1 {
                return t.skip();
            }
            let ok = window_lemma_check(l, d, &tuple).unwrap();
            let strict = !code_leq(
                &encode(l, d, &tuple[..d]).unwrap(),
                &encode(l, d, &tuple[1..]).unwrap(),
            )
            .unwrap();
            t.expect(i, ok && strict, || format!("d={d} l={l} {}", show(&tuple)));
        }),
    );

    let salt = r.salt();
    r.random_check(
        "window-bound-random",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            let tuple = random_descending(&mut rng, d, d, l, 3, 3);
            if tuple.len() < d {
                return t.skip();
            }
            let code = encode(l, d, &tuple).unwrap();
            t.expect(i, code.max_entry() <= bound_of(&tuple[0]), || {
                format!("d={d} l={l} {} -> {code:?}", show(&tuple))
            });
        }),
    );

    let salt = r.salt();
    r.explore(
        "window-lemma-unrestricted",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            let tuple: Vec<Ordinal> = (0..=d)
                .map(|_| random_below_tower(&mut rng, d, l, 2, 2))
                .collect();
            t.expect(i, window_lemma_check(l, d, &tuple).unwrap(), || {
                format!("d={d} l={l} {}", show(&tuple))
            });
        }),
    );

    let salt = r.salt();
    r.explore(
        "window-bound-unrestricted",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            let tuple: Vec<Ordinal> = (0..d)
                .map(|_| random_below_tower(&mut rng, d, l, 2, 2))
                .collect();
            let code = encode(l, d, &tuple).unwrap();
            t.expect(i, code.max_entry() <= bound_of(&tuple[0]), || {
                format!("d={d} l={l} {}", show(&tuple))
            });
        }),
    );
}

fn random_eval_fn(rng: &mut ChaCha8Rng) -> EvalFn {
    match rng.gen_range(0..3) {
        0 => EvalFn::identity(),
        1 => EvalFn::shift(rng.gen_range(1..=3)),
        _ => EvalFn::Affine {
            mul: 2,
            add: rng.gen_range(0..=2),
        },
    }
}

fn largeness(r: &mut Runner) {
    let base = r.seed;
    let randoms = r.profile.pick(1_000u64, 10_000);

    let salt = r.salt();
    r.random_check(
        "fund-step-descends",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            let a = random_nonzero(&mut rng, d, l, 3, 3);
            let n = rng.gen_range(0..=20);
            let b = fund_step(&a, n).unwrap();
            t.expect(i, b < a, || format!("{a}[{n}] = {b}"));
        }),
    );

    let salt = r.salt();
    r.random_check(
        "limit-index-monotone",
        sweep(randoms / 10, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            let a = random_nonzero(&mut rng, d, l, 3, 3);
            if !a.is_limit() {
                return t.skip();
            }
            let steps: Vec<Ordinal> = (0..=20).map(|n| fund_step(&a, n).unwrap()).collect();
            t.expect(i, steps.windows(2).all(|w| w[0] <= w[1]), || a.to_string());
        }),
    );

    let salt = r.salt();
    r.random_check(
        "find-replays",
        sweep(randoms / 10, |i, t| {
            let mut rng = case_rng(base, salt, i);
            // Below ω^ω; larger ordinals blow the budget almost always.
            let (d, l) = if rng.gen_bool(0.5) { (1, 1) } else { (2, 0) };
            let a = random_below_tower(&mut rng, d, l, 3, 2);
            let f = random_eval_fn(&mut rng);
            let start = rng.gen_range(0..=3);
            match find_alpha_large_with_budget(&a, &f, start, 20_000) {
                Ok(set) => {
                    let mut shorter = set.as_slice().to_vec();
                    shorter.pop();
                    let minimal =
                        set.is_empty() || !is_alpha_large(&a, &FiniteSet::new(shorter).unwrap());
                    t.expect(i, is_alpha_large(&a, &set) && minimal, || {
                        format!("{a} with {f} from {start}")
                    });
                }
                Err(Error::BudgetExceeded { .. }) => t.skip(),
                Err(e) => t.expect(i, false, || format!("{a}: {e}")),
            }
        }),
    );

    let bits = r.profile.pick(6u32, 7);
    let alphas = below_omega_power(r.profile.pick(2, 3), 2);
    r.check(
        "superset-closure",
        sweep(alphas.len() as u64, |i, t| {
            let a = &alphas[i as usize];
            let set_of = |mask: u32| {
                FiniteSet::new((0..bits as u64).filter(|x| mask >> x & 1 == 1).collect()).unwrap()
            };
            let large: Vec<bool> = (0..1u32 << bits)
                .map(|m| is_alpha_large(a, &set_of(m)))
                .collect();
            for small in 0..1u32 << bits {
                if !large[small as usize] {
                    continue;
                }
                let free = !small & ((1 << bits) - 1);
                let mut extra = free;
                loop {
                    let big = small | extra;
                    t.expect((i << 32) | u64::from(big), large[big as usize], || {
                        format!("{a}: {} large, {} not", set_of(small), set_of(big))
                    });
                    if extra == 0 {
                        break;
                    }
                    extra = (extra - 1) & free;
                }
            }
        }),
    );

    let mut fixed = Tally::default();
    let o = |s: &str| parse_ordinal(s).unwrap();
    fixed.expect(
        0,
        is_alpha_large(&o("w"), &FiniteSet::new(vec![1, 2]).unwrap()),
        || "{1,2} is w-large".into(),
    );
    let found = find_alpha_large_with_budget(&o("w*2"), &EvalFn::shift(1), 0, 1_000);
    fixed.expect(1, found == FiniteSet::new((1..=6).collect()), || {
        format!("w*2 with x+1: {found:?}")
    });
    r.check("fixed-examples", fixed);
}

fn verify_bad(v: &SearchVerdict, f: &SizeFunction, t: &mut Tally, case: u64) {
    if let SearchVerdict::BadColoring { witness } = v {
        let found = find_good_set(witness, &StrictSize(f));
        t.expect(case, matches!(found, Ok(None)), || {
            format!("{f}: witness has good set {found:?}")
        });
    }
}

fn frt_consistency(r: &mut Runner) -> Result<()> {
    let seq = SearchConfig::sequential();
    let par = SearchConfig::default();
    let r_top = r.profile.pick(6u64, 8);
    let families: Vec<(SizeFunction, usize, u32, u64)> = vec![
        (SizeFunction::Cf(1), 1, 2, 0),
        (SizeFunction::Cf(2), 1, 3, 0),
        (SizeFunction::Cf(2), 2, 2, 0),
        (SizeFunction::Ui(2), 1, 2, 1),
        (SizeFunction::Ph(EvalFn::identity()), 1, 2, 3),
        (SizeFunction::Md(EvalFn::shift(1)), 1, 2, 1),
        (SizeFunction::Cf(3), 3, 2, 0),
    ];

    let mut mono = Tally::default();
    let mut bad = Tally::default();
    let mut agree = Tally::default();
    let mut minimal = Tally::default();
    for (fi, (f, d, k, a)) in families.iter().enumerate() {
        // Bad 3-subset colorings on 8+ points are hard to find.
        let r_top = if *d == 3 { r_top.min(6) } else { r_top };
        let verdicts: Vec<SearchVerdict> = (*a..=a + r_top)
            .map(|rr| frt_holds_at(f, *d, *k, *a, rr, &par))
            .collect::<Result<_>>()?;
        let case = fi as u64 * 100;
        for (j, v) in verdicts.iter().enumerate() {
            verify_bad(v, f, &mut bad, case + j as u64);
            let s = frt_holds_at(f, *d, *k, *a, a + j as u64, &seq)?;
            agree.expect(case + j as u64, &s == v, || {
                format!("{f} d={d} k={k} R={}", a + j as u64)
            });
        }
        let first_good = verdicts.iter().position(|v| *v == SearchVerdict::AllGood);
        if let Some(p) = first_good {
            mono.expect(
                case,
                verdicts[p..].iter().all(|v| *v == SearchVerdict::AllGood),
                || format!("{f} d={d} k={k}: not monotone in R"),
            );
        }
        let w = min_frt_witness(f, *d, *k, *a, a + r_top, &par)?;
        minimal.expect(case, w == first_good.map(|p| a + p as u64), || {
            format!("{f}: min witness {w:?}")
        });
    }
    r.check("monotone-in-r", mono);
    r.check("bad-colorings-reverify", bad);
    r.check("parallel-agrees", agree);
    r.check("min-witness-consistent", minimal);

    let mut anti = Tally::default();
    for m in 0..3u64 {
        for d in 1..=2 {
            for rr in 0..=r_top.min(6) {
                let lo = frt_holds_at(&SizeFunction::Cf(m), d, 2, 0, rr, &par)?;
                let hi = frt_holds_at(&SizeFunction::Cf(m + 1), d, 2, 0, rr, &par)?;
                if hi == SearchVerdict::AllGood {
                    anti.expect(
                        m * 100 + d as u64 * 10 + rr,
                        lo == SearchVerdict::AllGood,
                        || format!("cf:{m} fails where cf:{} holds, d={d} R={rr}", m + 1),
                    );
                }
            }
        }
    }
    r.check("antitone-in-f", anti);

    let mut duality = Tally::default();
    for (fi, (f, d, k)) in [
        (SizeFunction::Cf(1), 1usize, 2u32),
        (SizeFunction::Cf(2), 2, 2),
        (SizeFunction::Cf(2), 1, 3),
    ]
    .iter()
    .enumerate()
    {
        let tree = build_compactness_tree(f, *d, *k, r.profile.pick(5, 6), par.budget)?;
        for level in &tree.levels {
            let v = frt_holds_at(f, *d, *k, 0, level.r, &par)?;
            duality.expect(
                fi as u64 * 100 + level.r,
                level.nodes.is_empty() == (v == SearchVerdict::AllGood),
                || format!("{f} d={d} k={k} R={}: {} nodes", level.r, level.nodes.len()),
            );
            if level.r > 0 {
                let parents = &tree.levels[level.r as usize - 1];
                for (i, &p) in level.parents.iter().enumerate() {
                    let child = tree.node(level.r, i);
                    let restricted = child.restrict_to_prefix(level.r as usize);
                    duality.expect(
                        fi as u64 * 100 + level.r,
                        restricted.colors() == parents.nodes[p].as_slice(),
                        || format!("{f} R={}: node {i} restricts wrongly", level.r),
                    );
                }
            }
        }
    }
    r.check("tree-duality", duality);

    let salt = r.salt();
    let base = r.seed;
    let trials = r.profile.pick(20u64, 100);
    r.random_check(
        "counterexample-size-fn",
        sweep(trials, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let d = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            let a = rng.gen_range(0..=3);
            let n = rng.gen_range(1..=7);
            let c = SubsetColoring::from_fn(d, k, (a..a + n).collect(), |_| rng.gen_range(0..k))
                .unwrap();
            let f = counterexample_size_fn(&c).unwrap();
            let found = find_good_set(&c, &StrictSize(&f));
            t.expect(i, matches!(found, Ok(None)), || format!("{c:?}: {found:?}"));
        }),
    );

    let mut ks = Tally::default();
    for mask in 1u32..1 << 6 {
        let set = FiniteSet::new((1..=6).filter(|x| mask >> (x - 1) & 1 == 1).collect()).unwrap();
        for d in 1..=2 {
            let v = check_ks_instance(&set, d, 2, &par)?;
            if let SearchVerdict::BadColoring { witness } = &v {
                let found = find_good_set(witness, &KsGoal);
                ks.expect(
                    u64::from(mask) * 10 + d as u64,
                    matches!(found, Ok(None)),
                    || format!("{set}: {found:?}"),
                );
            } else {
                ks.pass();
            }
        }
    }
    r.check("ks-witnesses-reverify", ks);
    Ok(())
}

fn ar_transfer(r: &mut Runner) -> Result<()> {
    let base = r.seed;
    let randoms = r.profile.pick(1_000u64, 10_000);

    let salt = r.salt();
    r.random_check(
        "wo-transfer",
        sweep(randoms, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=2), rng.gen_range(0..=1));
            let len = rng.gen_range(d + 1..=12);
            let seq: Vec<Ordinal> = (0..len)
                .map(|_| random_below_tower(&mut rng, d, l, 3, 3))
                .collect();
            let c = ordinal_coloring(l, d, &seq).unwrap();
            match ar_search(&c) {
                Some(xs) => {
                    let sound = c
                        .value(&xs[..d])
                        .unwrap()
                        .iter()
                        .zip(c.value(&xs[1..]).unwrap())
                        .all(|(a, b)| a <= b);
                    let (x1, x2) = (xs[0] as usize, xs[1] as usize);
                    t.expect(i, sound && seq[x1] <= seq[x2], || {
                        format!("d={d} l={l} {} at {xs:?}", show(&seq))
                    });
                }
                None => {
                    // Independent re-check: no window pair increases anywhere.
                    let none = LexSubsets::new(len, d + 1).all(|xs| {
                        let xs: Vec<u64> = xs.into_iter().map(|x| x as u64).collect();
                        !c.value(&xs[..d])
                            .unwrap()
                            .iter()
                            .zip(c.value(&xs[1..]).unwrap())
                            .all(|(a, b)| a <= b)
                    });
                    t.expect(i, none, || format!("missed witness in {}", show(&seq)));
                }
            }
        }),
    );

    let salt = r.salt();
    let descents = r.profile.pick(100u64, 1_000);
    r.random_check(
        "no-witness-on-descent",
        sweep(descents, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=2), rng.gen_range(0..=1));
            let seq = if rng.gen_bool(0.5) {
                let start = random_nonzero(&mut rng, d, l, 5, 3);
                descending_seq(&start, 30, &random_eval_fn(&mut rng)).unwrap()
            } else {
                random_descending(&mut rng, 30, d, l, 3, 3)
            };
            if seq.len() <= d {
                return t.skip();
            }
            let c = ordinal_coloring(l, d, &seq).unwrap();
            t.expect(i, ar_search(&c).is_none(), || {
                format!("d={d} l={l} {}", show(&seq))
            });
        }),
    );

    let salt = r.salt();
    let lbs = r.profile.pick(100u64, 500);
    r.random_check(
        "lower-bound-coloring",
        sweep(lbs, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=2), rng.gen_range(0..=1));
            let descending = rng.gen_bool(0.5);
            let seq = if descending {
                random_descending(&mut rng, 9, d, l, 3, 2)
            } else {
                (0..9)
                    .map(|_| random_below_tower(&mut rng, d, l, 3, 2))
                    .collect()
            };
            if seq.len() < d + 2 {
                return t.skip();
            }
            let rr = seq.len() as u64 - 1;
            let c = lower_bound_coloring(l, d, &seq, rr).unwrap();
            let codes: Vec<CodeVector> = LexSubsets::new(seq.len(), d)
                .map(|s| {
                    encode(l, d, &s.iter().map(|&x| seq[x].clone()).collect::<Vec<_>>()).unwrap()
                })
                .collect();
            let code_of = |w: &[u64]| {
                let idx: Vec<usize> = w.iter().map(|&x| x as usize).collect();
                &codes[crate::subsets::SubsetIndex::new(seq.len(), d).rank(&idx)]
            };
            for mask in 0u32..1 << seq.len() {
                let h: Vec<u64> = (0..seq.len() as u64)
                    .filter(|x| mask >> x & 1 == 1)
                    .collect();
                if h.len() < d + 1 {
                    continue;
                }
                let hs = FiniteSet::new(h.clone()).unwrap();
                if !crate::ramsey::is_homogeneous(&c, &hs).unwrap() {
                    continue;
                }
                let color = c.color(&h[..d + 1]).unwrap();
                let case = (i << 32) | u64::from(mask);
                if color == 0 {
                    t.expect(case, seq[h[0] as usize] <= seq[h[1] as usize], || {
                        format!("{} on {hs}", show(&seq))
                    });
                } else {
                    let coord = color as usize - 1;
                    let chain: Vec<u64> =
                        h.windows(d).map(|w| code_of(w).entries()[coord]).collect();
                    let strict = chain.windows(2).all(|p| p[0] > p[1]);
                    t.expect(case, strict && chain.len() >= h.len() - d, || {
                        format!("{} on {hs}: {chain:?}", show(&seq))
                    });
                }
            }
        }),
    );

    let salt = r.salt();
    r.random_check(
        "bound-fn",
        sweep(lbs, |i, t| {
            let mut rng = case_rng(base, salt, i);
            let (d, l) = (rng.gen_range(1..=2), rng.gen_range(0..=1));
            let seq = random_descending(&mut rng, 10, d, l, 3, 3);
            if seq.is_empty() {
                return t.skip();
            }
            let c = ordinal_coloring(l, d, &seq).unwrap();
            let values: Vec<u64> = (0..seq.len() as u64)
                .map(|x| derive_bound_fn(&c, x).unwrap())
                .collect();
            let mut cap = 0;
            let mut ok = values.windows(2).all(|w| w[0] <= w[1]);
            for (x, v) in values.iter().enumerate() {
                cap = cap.max(bound_of(&seq[x]));
                ok &= *v <= cap;
            }
            t.expect(i, ok, || format!("{}: {values:?}", show(&seq)));
        }),
    );
    Ok(())
}
