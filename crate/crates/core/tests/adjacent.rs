use frt_lab::adjacent::{
    ar_search, derive_bound_fn, lower_bound_coloring, ordinal_coloring, saph_search,
    AdjacentColoring,
};
use frt_lab::fundamental::descending_seq;
use frt_lab::ordinal::max_data;
use frt_lab::ramsey::{min_frt_witness, SearchConfig, SizeFunction};
use frt_lab::{EvalFn, Ordinal};

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

#[test]
fn search_examples() {
    let constant = AdjacentColoring::from_fn(3, 2, 6, |_| vec![1, 1]).unwrap();
    assert_eq!(ar_search(&constant), Some(vec![0, 1, 2, 3]));
    let dip = AdjacentColoring::from_fn(1, 1, 6, |x| vec![5u64.saturating_sub(x[0])]).unwrap();
    assert_eq!(ar_search(&dip), Some(vec![5, 6]));
    let down = AdjacentColoring::from_fn(1, 1, 6, |x| vec![10 - x[0]]).unwrap();
    assert_eq!(ar_search(&down), None);
}

#[test]
fn descending_sequences_have_no_witness() {
    for (start, l) in [("w^(w*2+1)*2+w^w", 1), ("w^(w+1)*3", 1), ("w^5*2+w^3", 0)] {
        let seq = descending_seq(&o(start), 30, &EvalFn::constant(1)).unwrap();
        assert!(seq.len() > 3, "{start}");
        let c = ordinal_coloring(l, 2, &seq).unwrap();
        assert_eq!(c.r(), 3 + l as usize);
        assert_eq!(ar_search(&c), None, "{start}");
    }
    let constant = vec![o("w^w+1"); 5];
    assert_eq!(
        ar_search(&ordinal_coloring(1, 2, &constant).unwrap()),
        Some(vec![0, 1, 2])
    );
}

#[test]
fn lower_bound_examples() {
    let flat = lower_bound_coloring(1, 2, &vec![o("w*3"); 6], 5).unwrap();
    assert!(flat.colors().iter().all(|&c| c == 0));
    let c = lower_bound_coloring(0, 1, &[o("3"), o("2"), o("1")], 2).unwrap();
    assert_eq!(c.colors(), [1, 1, 1]);
    assert_eq!(c.k(), 3);
}

#[test]
fn bound_fn_tracks_the_running_maximum() {
    let seq = descending_seq(&o("w^(w+1)*2"), 12, &EvalFn::shift(2)).unwrap();
    let c = ordinal_coloring(1, 2, &seq).unwrap();
    let mut cap = 0;
    let mut last = 0;
    for x in 0..seq.len() as u64 {
        let m = max_data(&seq[x as usize]);
        cap = cap.max(m.mc.max(m.mp as u64));
        let f = derive_bound_fn(&c, x).unwrap();
        assert!(f >= last && f <= cap, "x={x}: {f} (cap {cap})");
        last = f;
    }
}

#[test]
fn saph_examples() {
    let cfg = SearchConfig::default();
    assert_eq!(
        saph_search(1, 1, 1, 2, &EvalFn::identity(), 20, &cfg).unwrap(),
        Some(5)
    );
    assert_eq!(
        saph_search(1, 0, 1, 0, &EvalFn::constant(1), 5, &cfg).unwrap(),
        Some(0)
    );
    assert!(saph_search(1, 1, 0, 2, &EvalFn::identity(), 20, &cfg).is_err());
}

#[test]
fn saph_with_first_anchor_is_paris_harrington() {
    let cfg = SearchConfig::default();
    for (d, c, m, f) in [
        (1, 1, 2, EvalFn::identity()),
        (1, 1, 3, EvalFn::identity()),
        (1, 2, 1, EvalFn::shift(1)),
        (2, 1, 2, EvalFn::identity()),
    ] {
        let saph = saph_search(d, c, 1, m, &f, 12, &cfg).unwrap();
        let ph = min_frt_witness(&SizeFunction::Ph(f.clone()), d, c + 1, m, 12, &cfg).unwrap();
        assert_eq!(saph, ph, "d={d} c={c} m={m} f={f}");
    }
}
