use std::collections::HashSet;

use cubeword::billiard::{self, Direction, StartPoint};
use cubeword::directional::{self, SClass};
use cubeword::exactnum::FieldNumber;
use cubeword::words::{self, FactorIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> FieldNumber {
    s.parse().unwrap()
}

fn sample_words() -> Vec<Vec<u8>> {
    ["0", "2-phi", "sqrt2-1", "3/11", "phi-1"]
        .iter()
        .map(|s| {
            let m = directional::representative(&f(s)).unwrap();
            directional::trace_codes(&m, 20_000).unwrap()
        })
        .collect()
}

#[test]
fn counts_agree_with_naive_sets() {
    for w in sample_words() {
        let prefix = &w[..10_000];
        let idx = FactorIndex::new(prefix).unwrap();
        for n in 1..=8 {
            let naive: HashSet<&[u8]> = prefix.windows(n).collect();
            assert_eq!(idx.count(n), naive.len() as u64, "n = {n}");
        }
    }
}

#[test]
fn growth_bounds() {
    for w in sample_words() {
        let p = words::complexity(&w, 60).unwrap();
        assert!(p.p(1) <= 3);
        for n in 1..60 {
            assert!(p.p(n + 1) <= 3 * p.p(n));
            assert!(p.p(n + 1) >= p.p(n));
        }
    }
}

#[test]
fn bispecial_identity_on_traced_words() {
    for w in sample_words() {
        let p = words::complexity(&w, 50).unwrap();
        for n in 0..=48 {
            if let Ok(outcome) = words::cassaigne_check(&p, n) {
                assert!(outcome.is_ok(), "n = {n}: {outcome:?}");
            }
        }
    }
}

#[test]
fn no_aa_or_cc() {
    for w in sample_words() {
        let idx = FactorIndex::new(&w).unwrap();
        assert!(!idx.contains(&[0, 0]));
        assert!(!idx.contains(&[2, 2]));
    }
}

#[test]
fn equal_circles_give_equal_languages() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let schedule = directional::sample_schedule(40, 9);
    for s in schedule.iter().take(20) {
        let reps: Vec<StartPoint> = directional::representatives(s).take(12).collect();
        let a = &reps[0];
        let b = &reps[rng.gen_range(1..reps.len())];
        let wa = directional::trace_codes(a, 60_000).unwrap();
        let wb = directional::trace_codes(b, 60_000).unwrap();
        let (same, upto) = directional::same_language(&wa, &wb, 60).unwrap();
        assert!(same, "s = {s}: {a} vs {b} up to {upto}");
        assert!(upto >= 10, "s = {s}: only certified up to {upto}");
    }
}

#[test]
fn census_laws_for_golden_circles() {
    let samples = [f("0"), f("2-phi"), f("2*phi-3"), f("sqrt2-1"), f("1/3*sqrt2+1/5")];
    let census = directional::census(&samples, 60, 30_000);
    assert!(census.skipped.is_empty());
    let law = |c: SClass| census.classes[&c].law.unwrap();
    let zero = law(SClass::Zero);
    assert_eq!((zero.slope, zero.intercept, zero.from), (2, 3, 2));
    let golden = law(SClass::TwoMinusPhi);
    assert_eq!((golden.slope, golden.intercept, golden.from), (2, 8, 8));
    assert_eq!(census.classes[&SClass::Zero].k, 3);
    assert_eq!(census.classes[&SClass::TwoMinusPhi].k, 5);
    let generic = &census.classes[&SClass::Generic];
    assert_eq!(generic.k, 6);
    assert!(generic.laws_agree);
    for c in census.classes.values() {
        assert_eq!(c.same_s_agree, Some(true), "{:?}", c.class);
    }
}

#[test]
fn union_is_monotone_and_bounded() {
    let samples = directional::sample_schedule(60, 3);
    let tables = directional::union_checkpoints(&samples, 24, 20_000, &[10, 30]);
    for pair in tables.windows(2) {
        for n in 0..=24 {
            assert!(pair[1].p(n) >= pair[0].p(n));
        }
    }
    let last = tables.last().unwrap();
    assert_eq!(last.p(1), 3);
    assert_eq!(last.p(2), 7);
    for n in 2..=24 {
        assert!(last.p(n) <= 2 * (n * n) as u64, "n = {n}");
    }
    for n in 8..=24 {
        assert!(last.p(n) as i64 >= 2 * n as i64 + 8, "n = {n}");
    }
    // order of samples does not matter
    let mut rev = samples.clone();
    rev.reverse();
    assert_eq!(directional::union_complexity(&rev, 24, 20_000).p(24), last.p(24));
}

#[test]
fn union_tracks_class_laws() {
    let samples = directional::sample_schedule(30, 4);
    let census = directional::census(&samples, 30, 20_000);
    for n in 10..=30 {
        let best = census
            .classes
            .values()
            .filter_map(|c| c.law)
            .map(|l| l.eval(n))
            .max()
            .unwrap();
        assert!(census.union_p[n] as i64 >= best, "n = {n}");
    }
    assert!(billiard::validate(
        &directional::representative(&f("0")).unwrap(),
        &Direction::theta0(),
        1
    )
    .is_ok());
}

#[test]
fn right_special_factors_on_the_golden_circle() {
    let m = directional::representative(&f("2-phi")).unwrap();
    let w = directional::trace_codes(&m, 40_000).unwrap();
    let idx = FactorIndex::new(&w).unwrap();
    let as_text = |n: usize| -> Vec<String> {
        idx.right_special(n)
            .iter()
            .map(|v| v.iter().map(|&c| (b'a' + c) as char).collect())
            .collect()
    };
    assert_eq!(as_text(1), ["a", "b", "c"]);
    assert_eq!(as_text(2), ["ab", "ba", "bc"]);
    assert_eq!(as_text(3), ["abc", "bab", "cab"]);
}
