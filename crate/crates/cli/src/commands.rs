use std::cmp::Ordering;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::json;

use frt_lab::adjacent::{
    ar_search, derive_bound_fn, lower_bound_coloring, ordinal_coloring, saph_search,
    AdjacentColoring,
};
use frt_lab::encoding::encode;
use frt_lab::fundamental::{
    descending_seq, find_alpha_large_with_budget, fund_step, is_alpha_large, largeness_fold,
    DEFAULT_LARGENESS_BUDGET,
};
use frt_lab::ordinal::{comparison_data, max_data};
use frt_lab::parse::parse_ordinal;
use frt_lab::ramsey::{
    build_compactness_tree, check_ks_instance, counterexample_size_fn, find_good_set, frt_holds_at,
    min_frt_witness, Goal, KsGoal, SearchConfig, SearchVerdict, SizeFunction, StrictSize,
    SubsetColoring, DEFAULT_SEARCH_BUDGET,
};
use frt_lab::verify::{run_suite, Profile, Suite};
use frt_lab::{EvalFn, FiniteSet, Ordinal};

use crate::args::{ArCmd, Cli, Command, Common, FrtCmd, LargeCmd, OrdCmd, Shape};
use crate::outcome::{Outcome, Status};

type Run = Result<Outcome, Outcome>;

pub fn run(cli: &Cli) -> Outcome {
    dispatch(cli).unwrap_or_else(|e| e)
}

fn dispatch(cli: &Cli) -> Run {
    let common = &cli.common;
    match &cli.command {
        Command::Ord(cmd) => ord(cmd),
        Command::Fs { alpha, n } => {
            let a = ordinal(alpha)?;
            Ok(Outcome::ok(json!({"result": fund_step(&a, *n)?})))
        }
        Command::Large(cmd) => large(cmd, common),
        Command::Desc { alpha, length, f } => {
            let seq = descending_seq(&ordinal(alpha)?, *length, &EvalFn::parse(f)?)?;
            Ok(Outcome::ok(json!({ "seq": seq })))
        }
        Command::Encode {
            l,
            d,
            ordinals: ords,
        } => {
            let code = encode(*l, *d, &ordinals(ords)?)?;
            Ok(Outcome::ok(json!(code)))
        }
        Command::Frt(cmd) => frt(cmd, common),
        Command::Ar(cmd) => ar(cmd, common),
        Command::Verify { suite, universe } => {
            let report = run_suite(
                suite.parse::<Suite>()?,
                universe.parse::<Profile>()?,
                common.seed,
            )?;
            let mut table = String::new();
            for c in &report.checks {
                let mark = if c.exploratory { " (exploratory)" } else { "" };
                let _ = writeln!(
                    table,
                    "{:<32} {:>10} cases {:>6} violations {:>6} skipped{mark}",
                    c.name, c.cases, c.violations, c.skipped
                );
            }
            let mut out = Outcome::ok(json!(report)).table(table);
            if report.violations > 0 {
                out.exit = Some(1);
            }
            Ok(out)
        }
    }
}

fn ordinal(text: &str) -> Result<Ordinal, Outcome> {
    Ok(parse_ordinal(text)?)
}

fn ordinals(texts: &[String]) -> Result<Vec<Ordinal>, Outcome> {
    texts.iter().map(|t| ordinal(t)).collect()
}

fn parse_set(text: &str) -> Result<FiniteSet, Outcome> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let elements = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Outcome::input_error(format!("bad set element '{s}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteSet::new(elements)?)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn search_config(common: &Common) -> SearchConfig {
    SearchConfig {
        budget: common.budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        ..SearchConfig::default()
    }
}

fn ord(cmd: &OrdCmd) -> Run {
    Ok(Outcome::ok(match cmd {
        OrdCmd::Cmp { a, b } => {
            let order = match ordinal(a)?.cmp(&ordinal(b)?) {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            json!({ "order": order })
        }
        OrdCmd::Mp { a } => {
            let m = max_data(&ordinal(a)?);
            json!({"MP": m.mp, "MC": m.mc})
        }
        OrdCmd::Cp { a, b } => {
            let c = comparison_data(&ordinal(a)?, &ordinal(b)?);
            json!({"CP": c.cp, "CC": c.cc, "CE": c.ce})
        }
        OrdCmd::Fmt { a } => {
            let a = ordinal(a)?;
            json!({"ordinal": a, "height": a.height()})
        }
    }))
}

fn large(cmd: &LargeCmd, common: &Common) -> Run {
    match cmd {
        LargeCmd::Check { alpha, set } => {
            let (a, set) = (ordinal(alpha)?, parse_set(set)?);
            Ok(Outcome::ok(json!({
                "large": is_alpha_large(&a, &set),
                "residue": largeness_fold(&a, &set),
            })))
        }
        LargeCmd::Find { alpha, f, start } => {
            let a = ordinal(alpha)?;
            let budget = common.budget.unwrap_or(DEFAULT_LARGENESS_BUDGET);
            let set = find_alpha_large_with_budget(&a, &EvalFn::parse(f)?, *start, budget)?;
            assert!(is_alpha_large(&a, &set), "found set does not replay");
            Ok(Outcome::ok(json!({ "set": set })))
        }
    }
}

fn size_fn(shape: &Shape) -> Result<SizeFunction, Outcome> {
    Ok(SizeFunction::parse(&shape.size_fn)?)
}

/// Re-checks a bad coloring with the exhaustive scanner when it is small enough.
fn revalidate(verdict: &SearchVerdict, goal: &dyn Goal) {
    if let SearchVerdict::BadColoring { witness } = verdict {
        if witness.points().len() <= 20 {
            let found = find_good_set(witness, goal).expect("witness is well formed");
            assert!(
                found.is_none(),
                "bad-coloring witness has a good set {found:?}"
            );
        }
    }
}

fn verdict_outcome(verdict: SearchVerdict) -> Outcome {
    let status = match verdict {
        SearchVerdict::NotFound { .. } => Status::BudgetExceeded,
        _ => Status::Ok,
    };
    Outcome::with(status, json!(verdict))
}

fn frt(cmd: &FrtCmd, common: &Common) -> Run {
    let cfg = search_config(common);
    match cmd {
        FrtCmd::Holds { shape, a, r } => {
            let f = size_fn(shape)?;
            let v = frt_holds_at(&f, shape.d, shape.k, *a, *r, &cfg)?;
            revalidate(&v, &StrictSize(&f));
            Ok(verdict_outcome(v))
        }
        FrtCmd::MinR { shape, a, rmax } => {
            let f = size_fn(shape)?;
            let r = min_frt_witness(&f, shape.d, shape.k, *a, *rmax, &cfg)?;
            let status = if r.is_some() {
                Status::Ok
            } else {
                Status::NoWitness
            };
            Ok(Outcome::with(status, json!({ "R": r })))
        }
        FrtCmd::Tree { shape, rmax } => {
            let f = size_fn(shape)?;
            let tree = build_compactness_tree(&f, shape.d, shape.k, *rmax, cfg.budget)?;
            for level in tree.levels.iter().skip(1) {
                for (i, &p) in level.parents.iter().enumerate() {
                    let child = tree.node(level.r, i).restrict_to_prefix(level.r as usize);
                    assert_eq!(
                        child.colors(),
                        tree.levels[level.r as usize - 1].nodes[p].as_slice()
                    );
                }
            }
            let counts = tree.counts();
            let first_empty = counts.iter().position(|&c| c == 0);
            let mut table = format!("{:>4} {:>10}\n", "R", "bad");
            for level in &tree.levels {
                let _ = writeln!(table, "{:>4} {:>10}", level.r, level.nodes.len());
            }
            Ok(Outcome::ok(json!({
                "levels": tree.summary(),
                "first_empty": first_empty,
            }))
            .table(table))
        }
        FrtCmd::CounterexampleF { coloring } => {
            let c: SubsetColoring = read_json(coloring)?;
            let f = counterexample_size_fn(&c)?;
            let found = find_good_set(&c, &StrictSize(&f))?;
            assert!(
                found.is_none(),
                "constructed size function is satisfied by {found:?}"
            );
            let SizeFunction::Table(table) = f else {
                unreachable!("counterexample functions are tables")
            };
            Ok(Outcome::ok(json!(table)))
        }
        FrtCmd::Ks { set, d, c } => {
            let set = parse_set(set)?;
            let v = check_ks_instance(&set, *d, *c, &cfg)?;
            revalidate(&v, &KsGoal);
            Ok(verdict_outcome(v))
        }
    }
}

fn ar(cmd: &ArCmd, common: &Common) -> Run {
    match cmd {
        ArCmd::Search { coloring } => {
            let c: AdjacentColoring = read_json(coloring)?;
            let witness = ar_search(&c);
            if let Some(xs) = &witness {
                let (u, v) = (c.value(&xs[..c.d()])?, c.value(&xs[1..])?);
                assert!(
                    u.iter().zip(v).all(|(a, b)| a <= b),
                    "witness does not increase"
                );
            }
            let status = if witness.is_some() {
                Status::Ok
            } else {
                Status::NoWitness
            };
            Ok(Outcome::with(status, json!({ "witness": witness })))
        }
        ArCmd::FromOrdinals {
            l,
            d,
            ordinals: ords,
        } => Ok(Outcome::ok(json!(ordinal_coloring(
            *l,
            *d,
            &ordinals(ords)?
        )?))),
        ArCmd::LowerBound {
            l,
            d,
            r,
            ordinals: ords,
        } => Ok(Outcome::ok(json!(lower_bound_coloring(
            *l,
            *d,
            &ordinals(ords)?,
            *r
        )?))),
        ArCmd::Saph {
            d,
            c,
            k,
            m,
            f,
            rmax,
        } => {
            let r = saph_search(
                *d,
                *c,
                *k,
                *m,
                &EvalFn::parse(f)?,
                *rmax,
                &search_config(common),
            )?;
            let status = if r.is_some() {
                Status::Ok
            } else {
                Status::NoWitness
            };
            Ok(Outcome::with(status, json!({ "R": r })))
        }
        ArCmd::BoundFn { coloring, x } => {
            let c: AdjacentColoring = read_json(coloring)?;
            Ok(Outcome::ok(json!({ "value": derive_bound_fn(&c, *x)? })))
        }
    }
}
