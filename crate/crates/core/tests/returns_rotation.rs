use std::collections::BTreeSet;

use cubeword::billiard::{self, word_to_string, BilliardError, Direction, Letter, StartPoint};
use cubeword::directional;
use cubeword::exactnum::FieldNumber;
use cubeword::returns::{self, circle_partition, CellLabel, ReturnsError};
use cubeword::rotation::{self, ConnectionMode};
use cubeword::words;
use cubeword::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> FieldNumber {
    s.parse().unwrap()
}

fn random_valid_starts(count: usize, seed: u64) -> Vec<StartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir = Direction::theta0();
    let mut out = Vec::new();
    while out.len() < count {
        let y = FieldNumber::from_ratio(rng.gen_range(1..4096), 4096);
        let z = match rng.gen_range(0..3) {
            0 => FieldNumber::from_ratio(rng.gen_range(1..4095), 4095),
            1 => &FieldNumber::from_ratio(rng.gen_range(1..100), 61) * &FieldNumber::phi(),
            _ => &FieldNumber::from_ratio(rng.gen_range(1..100), 67) * &FieldNumber::phi_sqrt2(),
        }
        .reduce_mod1();
        if z.is_zero() {
            continue;
        }
        let m = StartPoint::on_face_x(y, z).unwrap();
        if billiard::validate(&m, &dir, 1).is_ok() {
            out.push(m);
        }
    }
    out
}

#[test]
fn partition_names_the_first_return_word() {
    let dir = Direction::theta0();
    let mut boundary = 0;
    for m in random_valid_starts(1000, 1) {
        let observed = returns::observed_first_return(&m, &dir).unwrap();
        match returns::cell_of(m.y(), m.z()) {
            Ok(cell) => assert_eq!(cell.phi_image(), &observed[..], "{m}"),
            Err(ReturnsError::OnBoundary(_)) => boundary += 1,
            Err(e) => panic!("{m}: {e}"),
        }
    }
    assert!(boundary < 10);
}

#[test]
fn translated_predictions_match_returns() {
    let dir = Direction::theta0();
    let half = Rational::new(1.into(), 2.into());
    for m in random_valid_starts(100, 2) {
        let w = billiard::trace_letters(&m, &dir, 2100).unwrap();
        let rw = returns::return_words(&w, Letter::A).unwrap();
        for (k, obs) in rw.words.iter().enumerate().take(501) {
            let p = returns::kth_return_prediction(&m, k as u64, &half).unwrap();
            assert_eq!(&p.word, obs, "{m}, k = {k}");
        }
    }
}

#[test]
fn reconstruction_matches_trace_on_all_circle_types() {
    let dir = Direction::theta0();
    let mut starts = vec![
        StartPoint::on_face_x(f("1/4"), (&f("sqrt2-1") - &f("1/4")).reduce_mod1()).unwrap(),
        StartPoint::on_face_x(f("1/5"), f("9/5-phi")).unwrap(),
    ];
    for s in ["0", "2*phi-3", "phi-1", "4-2*phi", "3/7", "1/3*sqrt2"] {
        starts.extend(directional::representatives(&f(s)).take(2));
    }
    let mut ks = BTreeSet::new();
    for m in &starts {
        ks.insert(circle_partition(&(m.y() + m.z())).k);
        let t = billiard::trace_letters(m, &dir, 10_000).unwrap();
        assert_eq!(returns::reconstruct(m, 10_000).unwrap(), t, "{m}");
    }
    assert_eq!(ks, BTreeSet::from([3, 5, 6]));
}

#[test]
fn edge_starts_are_rejected_by_both_pipelines() {
    let m = StartPoint::on_face_x(f("0"), f("2-phi")).unwrap();
    assert!(matches!(
        returns::reconstruct(&m, 10),
        Err(ReturnsError::Billiard(BilliardError::DegenerateStart { .. }))
    ));
    assert!(billiard::trace(&m, &Direction::theta0(), 10).is_err());
}

#[test]
fn return_words_lie_in_the_image_of_phi() {
    let dir = Direction::theta0();
    let image: BTreeSet<String> = CellLabel::ALL.iter().map(|l| word_to_string(l.phi_image())).collect();
    for m in random_valid_starts(20, 3) {
        let w = billiard::trace_letters(&m, &dir, 20_000).unwrap();
        let found: BTreeSet<String> = returns::return_words(&w, Letter::A)
            .unwrap()
            .words
            .iter()
            .map(|v| word_to_string(v))
            .collect();
        assert!(found.is_subset(&image), "{m}: {found:?}");
        if circle_partition(&(m.y() + m.z())).k == 3 {
            assert_eq!(found, ["abb", "abc", "acb"].map(String::from).into());
        }
    }
    for m in directional::representatives(&f("0")).take(3) {
        let w = billiard::trace_letters(&m, &dir, 20_000).unwrap();
        let found: BTreeSet<String> = returns::return_words(&w, Letter::A)
            .unwrap()
            .words
            .iter()
            .map(|v| word_to_string(v))
            .collect();
        assert_eq!(found, ["abb", "abc", "acb"].map(String::from).into());
    }
}

#[test]
fn mean_return_length_is_three() {
    let dir = Direction::theta0();
    for m in random_valid_starts(5, 4) {
        let w = billiard::trace_letters(&m, &dir, 100_000).unwrap();
        let rw = returns::return_words(&w, Letter::A).unwrap();
        let total: usize = rw.words.iter().map(Vec::len).sum();
        let mean = total as f64 / rw.words.len() as f64;
        assert!((mean - 3.0).abs() < 1e-3, "{m}: {mean}");
    }
}

#[test]
fn coded_frequencies_approach_arc_lengths() {
    let alpha = f("2*phi-3");
    for (s, y0) in [("0", "1/2"), ("2-phi", "1/5"), ("sqrt2-1", "1/4"), ("2/9", "1/3")] {
        let part = circle_partition(&f(s));
        let rc = rotation::code_orbit(&f(y0), &part, &alpha, 100_000).unwrap();
        for label in CellLabel::ALL {
            let expected: f64 = part
                .arcs
                .iter()
                .filter(|a| a.label == label)
                .map(|a| a.length().to_f64())
                .sum();
            let observed = rc.word.iter().filter(|&&l| l == label).count() as f64 / 1e5;
            assert!((observed - expected).abs() < 1e-2, "s = {s}, {label}: {observed} vs {expected}");
        }
    }
}

#[test]
fn saddle_connections_are_symmetric_and_verified() {
    let alpha = f("2*phi-3");
    let mut points: Vec<FieldNumber> = Vec::new();
    for s in ["0", "2-phi", "sqrt2-1", "1/3"] {
        points.extend(circle_partition(&f(s)).cuts());
    }
    for a in &points {
        for b in &points {
            let ab = rotation::saddle_connection(a, b, &alpha, ConnectionMode::Exact).unwrap();
            let ba = rotation::saddle_connection(b, a, &alpha, ConnectionMode::Exact).unwrap();
            assert_eq!(ab.map(|n| -n), ba);
            let bounded = rotation::saddle_connection(a, b, &alpha, ConnectionMode::Bounded(50)).unwrap();
            assert_eq!(ab.filter(|n| n.abs() <= 50), bounded, "{a} vs {b}");
            if let Some(n) = ab {
                assert!((&(a - b) - &(&alpha * &FieldNumber::from_integer(n))).is_integer());
            }
        }
    }
    let cuts = circle_partition(&f("sqrt2-1")).interior_cuts();
    let mut classes = 0;
    for (i, a) in cuts.iter().enumerate() {
        if cuts[..i]
            .iter()
            .all(|b| rotation::saddle_connection(a, b, &alpha, ConnectionMode::Exact).unwrap().is_none())
        {
            classes += 1;
        }
    }
    assert_eq!(classes, 4);
}

#[test]
fn recoding_preserves_first_differences() {
    for (s, y0) in [("0", "1/2"), ("2-phi", "1/5"), ("sqrt2-1", "1/4")] {
        let rc = rotation::circle_coding(&f(s), &f(y0), 60).unwrap();
        let (pv, lv) = rotation::coding_complexity(&rc, 60).unwrap();
        let letters = returns::apply_phi(&rc.word);
        let pw = words::complexity(&billiard::word_codes(&letters), 60).unwrap();
        pw.require_stable().unwrap();
        let lw = pw.affine_law().unwrap();
        let threshold = lv.from.max(lw.from);
        for n in threshold..60 {
            assert_eq!(pv.s[n], pw.s[n], "s = {s}, n = {n}");
        }
    }
}

#[test]
fn general_rational_directions_use_traced_partition() {
    let r = Rational::new(1.into(), 3.into());
    let cells = returns::discover_return_cells(&r, 12).unwrap();
    let total: usize = cells.iter().map(|c| c.1).sum();
    assert!(total > 100);
    let m = StartPoint::on_face_x(f("2/9"), f("phi-1")).unwrap();
    let dir = Direction::family(&r).unwrap();
    let w = billiard::trace_letters(&m, &dir, 3000).unwrap();
    let rw = returns::return_words(&w, Letter::A).unwrap();
    for (k, obs) in rw.words.iter().enumerate().take(100) {
        assert_eq!(&returns::kth_return_prediction(&m, k as u64, &r).unwrap().word, obs);
    }
}

fn rotation_law(s: &str, y0: &str) -> (i64, i64, usize, u64) {
    let rc = rotation::circle_coding(&f(s), &f(y0), 100).unwrap();
    let (profile, law) = rotation::coding_complexity(&rc, 100).unwrap();
    (law.slope, law.intercept, law.from, profile.p(1))
}

#[test]
fn rotation_law_on_the_three_interval_circle() {
    let (slope, intercept, from, _) = rotation_law("0", "1/2");
    assert_eq!((slope, intercept), (2, 1));
    assert_eq!(from, 0);
}

#[test]
fn rotation_law_on_the_golden_five_interval_circle() {
    let (slope, intercept, from, p1) = rotation_law("2-phi", "1/5");
    assert_eq!(p1, 4);
    assert_eq!((slope, intercept), (2, 5), "measured {slope}n+{intercept} from n = {from}");
    assert!(from <= 2);
}

#[test]
fn rotation_law_on_the_quartic_circle() {
    let (slope, intercept, from, _) = rotation_law("sqrt2-1", "1/4");
    assert_eq!((slope, intercept), (4, 2));
    assert!(from <= 2);
}
