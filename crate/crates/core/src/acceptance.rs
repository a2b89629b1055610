//! Reproduction checks with fixed inputs, tolerances and time budgets.
//!
//! Each check returns a [`CriterionReport`]; a check passes when every assertion
//! holds and it finishes within its budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::billiard::{self, delete_letter, word_to_string, Direction, Letter, StartPoint};
use crate::directional::{self, union_checkpoints, SClass};
use crate::exactnum::{FieldNumber, Rational};
use crate::returns::{self, circle_partition, CellLabel};
use crate::rotation;
use crate::words::{self, ComplexityProfile, FactorIndex, Sturmian};

pub const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<34} {}  ({} ms / {} ms)  {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "s = 0 word complexity", 10),
    (2, "s = 2-phi word complexity", 10),
    (3, "quartic word complexity", 30),
    (4, "reconstruction equals trace", 60),
    (5, "return partition oracle sweep", 60),
    (6, "circle sections", 5),
    (7, "rank predicts coding slope", 30),
    (8, "bispecial identity", 60),
    (9, "projection and frequency", 30),
    (10, "directional union trend", 600),
];

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !($cond) {
            return Err(format!($($fmt)*));
        }
    };
}

fn f(s: &str) -> FieldNumber {
    s.parse().expect("literal")
}

pub fn run(id: u8) -> Option<CriterionReport> {
    let &(id, name, budget) = CRITERIA.iter().find(|c| c.0 == id)?;
    let t0 = Instant::now();
    let outcome = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => criterion_10(),
    };
    let elapsed = t0.elapsed();
    let budget = Duration::from_secs(budget);
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if elapsed > budget {
        passed = false;
        detail.push_str("; over time budget");
    }
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: budget.as_millis(),
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

/// Face start on the circle through `s`: the given point when it is a valid
/// start, else the first valid representative of its circle.
pub fn start_on_circle(y: &str, z: &str) -> (StartPoint, bool) {
    let (y, z) = (f(y), f(z));
    if let Ok(m) = StartPoint::on_face_x(y.clone(), z.clone()) {
        if billiard::validate(&m, &Direction::theta0(), 1).is_ok() {
            return (m, true);
        }
    }
    let s = (&y + &z).reduce_mod1();
    (directional::representative(&s).expect("circle has valid points"), false)
}

fn traced_profile(m: &StartPoint, len: usize, n_max: usize) -> Result<(Vec<u8>, ComplexityProfile), String> {
    let w = directional::trace_codes(m, len).map_err(|e| e.to_string())?;
    let p = words::complexity(&w, n_max).map_err(|e| e.to_string())?;
    p.require_stable().map_err(|e| e.to_string())?;
    Ok((w, p))
}

fn return_word_set(w: &[u8]) -> Result<BTreeSet<String>, String> {
    let letters: Vec<Letter> = w.iter().map(|&c| Letter::ALL[c as usize]).collect();
    let r = returns::return_words(&letters, Letter::A).map_err(|e| e.to_string())?;
    Ok(r.words.iter().map(|v| word_to_string(v)).collect())
}

fn codes(s: &str) -> Vec<u8> {
    billiard::word_codes(&billiard::parse_word(s).expect("literal word"))
}

fn criterion_1() -> Check {
    let (m, _) = start_on_circle("1/2", "1/2");
    let (w, p) = traced_profile(&m, 100_000, 100)?;
    ensure!(p.p(1) == 3, "p(1) = {}", p.p(1));
    for n in 2..=100 {
        ensure!(p.p(n) == 2 * n as u64 + 3, "p({n}) = {}, expected {}", p.p(n), 2 * n + 3);
    }
    let set = return_word_set(&w)?;
    let want: BTreeSet<String> = ["acb", "abc", "abb"].map(String::from).into();
    ensure!(set == want, "return words {:?}", set);
    Ok("p(n) = 2n+3 for 2..=100, return words {abb, abc, acb}".into())
}

fn criterion_2() -> Check {
    let (m, given) = start_on_circle("0", "2-phi");
    let (w, p) = traced_profile(&m, 100_000, 100)?;
    let head: Vec<u64> = (1..=7).map(|n| p.p(n)).collect();
    ensure!(head == [3, 6, 9, 12, 15, 18, 21], "p(1..7) = {head:?}");
    for n in 8..=100 {
        ensure!(p.p(n) == 2 * n as u64 + 8, "p({n}) = {}, expected {}", p.p(n), 2 * n + 8);
    }
    let idx = FactorIndex::new(&w).map_err(|e| e.to_string())?;
    ensure!(idx.right_special(1) == vec![vec![0], vec![1], vec![2]], "right special length 1: {:?}", idx.right_special(1));
    for v in ["abcabacbabc", "cbabcab", "acbabcabcbab"] {
        let c = codes(v);
        ensure!(idx.contains(&c), "{v} does not occur");
        ensure!(idx.right_extensions(&c).len() >= 2, "{v} is not right special");
    }
    let start = if given { String::new() } else { format!(" (edge start replaced by {})", m) };
    Ok(format!("p(1..7) = 3..21, p(n) = 2n+8 for 8..=100{start}"))
}

fn criterion_3() -> Check {
    let (m, _) = start_on_circle("1/4", "sqrt2-1-1/4");
    let (_, p) = traced_profile(&m, 100_000, 100)?;
    let law = p.affine_law().ok_or("no law")?;
    let rc = rotation::circle_coding(&f("sqrt2-1"), m.y(), 100).map_err(|e| e.to_string())?;
    let (_, rot) = rotation::coding_complexity(&rc, 100).map_err(|e| e.to_string())?;
    let rot_ok = (rot.slope, rot.intercept) == (4, 2) && rot.from <= 2;
    let word_ok = (law.slope, law.intercept) == (4, -1) && law.from <= 10;
    let detail = format!("word law {law}, expected 4n-1 (n0<=10); rotation law {rot}, expected 4n+2 (n>=2)");
    if word_ok && rot_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Valid face starts covering the circles with 3, 5 and 6 arcs.
pub fn theorem_starts(count_per_class: usize) -> Vec<StartPoint> {
    let mut out = Vec::new();
    out.extend(directional::representatives(&FieldNumber::zero()).take(count_per_class));
    let specials: Vec<FieldNumber> = SClass::SPECIAL[1..].iter().filter_map(|c| c.value()).collect();
    for i in 0..count_per_class {
        let s = &specials[i % specials.len()];
        out.extend(directional::representatives(s).nth(i / specials.len()));
    }
    let generic = directional::sample_schedule(5 + count_per_class, SEED);
    for s in &generic[5..] {
        out.extend(directional::representative(s).ok());
    }
    out
}

fn criterion_4() -> Check {
    let starts = theorem_starts(10);
    ensure!(starts.len() == 30, "only {} starts", starts.len());
    let mut ks = BTreeSet::new();
    for m in &starts {
        let s = (m.y() + m.z()).reduce_mod1();
        ks.insert(circle_partition(&s).k);
        let t = billiard::trace_letters(m, &Direction::theta0(), 10_000).map_err(|e| e.to_string())?;
        let r = returns::reconstruct(m, 10_000).map_err(|e| format!("{m}: {e}"))?;
        ensure!(t == r, "reconstruction differs from trace at {m}");
    }
    ensure!(ks == BTreeSet::from([3, 5, 6]), "k values {ks:?}");
    Ok("30 starts, k in {3, 5, 6}, 10^4 letters each".into())
}

/// Pseudo-random valid face starts: rational points and points with golden
/// or quartic second coordinate.
pub fn random_face_starts(count: usize, seed: u64) -> Vec<StartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir = Direction::theta0();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let y = FieldNumber::from_ratio(rng.gen_range(1..1000), 1000);
        let z = match out.len() % 3 {
            0 => FieldNumber::from_ratio(rng.gen_range(1..997), 997),
            1 => &FieldNumber::from_ratio(rng.gen_range(-50..50), 37) * &FieldNumber::phi(),
            _ => &FieldNumber::from_ratio(rng.gen_range(-50..50), 41) * &FieldNumber::sqrt2(),
        }
        .reduce_mod1();
        let Ok(m) = StartPoint::on_face_x(y, z) else { continue };
        if m.z().is_zero() || billiard::validate(&m, &dir, 1).is_err() {
            continue;
        }
        if returns::cell_of(m.y(), m.z()).is_err() {
            continue;
        }
        out.push(m);
    }
    out
}

fn criterion_5() -> Check {
    let dir = Direction::theta0();
    let half = Rational::new(1.into(), 2.into());
    let starts = random_face_starts(1000, SEED);
    for m in &starts {
        let cell = returns::cell_of(m.y(), m.z()).map_err(|e| e.to_string())?;
        let obs = returns::observed_first_return(m, &dir).map_err(|e| e.to_string())?;
        ensure!(cell.phi_image() == obs, "{m}: cell {cell} but observed {}", word_to_string(&obs));
    }
    let mut checked = 0;
    for m in starts.iter().take(100) {
        let w = billiard::trace_letters(m, &dir, 2200).map_err(|e| e.to_string())?;
        let rw = returns::return_words(&w, Letter::A).map_err(|e| e.to_string())?;
        ensure!(rw.words.len() > 500, "only {} return words", rw.words.len());
        for (k, obs) in rw.words.iter().enumerate().take(501) {
            let p = returns::kth_return_prediction(m, k as u64, &half).map_err(|e| format!("{m}, k = {k}: {e}"))?;
            ensure!(&p.word == obs, "{m}, k = {k}: predicted {}", word_to_string(&p.word));
            checked += 1;
        }
    }
    Ok(format!("1000 cells, {checked} translated predictions, no mismatch"))
}

fn criterion_6() -> Check {
    let ks: Vec<usize> = ["0", "2*phi-3", "phi-1", "2-phi", "4-2*phi", "sqrt2-1"]
        .iter()
        .map(|s| circle_partition(&f(s)).k)
        .collect();
    ensure!(ks == [3, 5, 5, 5, 5, 6], "k = {ks:?}");
    let c = circle_partition(&f("2-phi"));
    let cuts = c.interior_cuts();
    ensure!(
        cuts == ["5-3*phi", "2-phi", "phi-1", "4-2*phi"].map(f),
        "cuts {:?}",
        cuts.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    use CellLabel::*;
    ensure!(c.labels() == [A2, A7, A1, A2, A3], "labels {:?}", c.labels());
    Ok("k = 3,5,5,5,5,6; s = 2-phi cuts and labels exact".into())
}

fn criterion_7() -> Check {
    let alpha = f("2*phi-3");
    let mut out = Vec::new();
    for (s, y0) in [("0", "1/2"), ("2-phi", "1/5"), ("sqrt2-1", "1/4")] {
        let s = f(s);
        let rc = rotation::circle_coding(&s, &f(y0), 100).map_err(|e| e.to_string())?;
        let (_, law) = rotation::coding_complexity(&rc, 100).map_err(|e| e.to_string())?;
        let predicted = rotation::rank_prediction(&rc.partition, &alpha);
        ensure!(law.slope == predicted as i64, "s = {s}: slope {} vs rank {predicted}", law.slope);
        out.push(format!("{}", law.slope));
    }
    ensure!(out == ["2", "2", "4"], "slopes {out:?}");
    Ok("slopes (2, 2, 4) equal the ranks".into())
}

fn criterion_8() -> Check {
    let starts = [
        start_on_circle("1/2", "1/2").0,
        start_on_circle("0", "2-phi").0,
        start_on_circle("1/4", "sqrt2-1-1/4").0,
    ];
    let mut checked = 0;
    for m in &starts {
        let (_, p) = traced_profile(m, 100_000, 52)?;
        for n in 0..=50 {
            match words::cassaigne_check(&p, n).map_err(|e| e.to_string())? {
                words::CassaigneOutcome::Ok { .. } => checked += 1,
                other => return Err(format!("{m}, n = {n}: {other:?}")),
            }
        }
    }
    Ok(format!("{checked} lengths checked on 3 words"))
}

fn criterion_9() -> Check {
    let starts = [
        start_on_circle("1/2", "1/2").0,
        start_on_circle("0", "2-phi").0,
        start_on_circle("1/4", "sqrt2-1-1/4").0,
        start_on_circle("1/3", "1/7").0,
    ];
    let dir = Direction::theta0();
    let mut worst: f64 = 0.0;
    for m in &starts {
        let w = billiard::trace_letters(m, &dir, 100_000).map_err(|e| e.to_string())?;
        let proj = billiard::word_codes(&delete_letter(&w, Letter::A));
        let proj: Vec<u8> = proj.iter().map(|c| c - 1).collect();
        let st = words::is_sturmian(&proj, 50).map_err(|e| e.to_string())?;
        ensure!(st == Sturmian::Yes, "{m}: projection not Sturmian: {st:?}");
        let na = w.iter().filter(|&&l| l == Letter::A).count();
        let freq = na as f64 / w.len() as f64;
        worst = worst.max((freq - 1.0 / 3.0).abs());
        ensure!((freq - 1.0 / 3.0).abs() <= 1e-3, "{m}: freq(a) = {freq}");
        let idx = FactorIndex::new(&billiard::word_codes(&w)).map_err(|e| e.to_string())?;
        ensure!(!idx.contains(&[0, 0]) && !idx.contains(&[2, 2]), "{m}: aa or cc occurs");
    }
    Ok(format!("4 traces, max |freq(a) - 1/3| = {worst:.2e}"))
}

fn criterion_10() -> Check {
    let samples = directional::sample_schedule(800, SEED);
    let tables = union_checkpoints(&samples, 40, 100_000, &[100, 200, 400]);
    for pair in tables.windows(2) {
        for n in 0..=40 {
            ensure!(pair[1].p(n) >= pair[0].p(n), "p({n}) decreased when adding samples");
        }
    }
    let t400 = &tables[2];
    let t800 = &tables[3];
    ensure!(t400.samples_used == 400 && t800.samples_used == 800, "skipped samples: {:?}", t800.skipped);
    ensure!(t400.p(1) == 3 && t400.p(2) == 7, "p(1), p(2) = {}, {}", t400.p(1), t400.p(2));
    let (r4, r8) = (t400.rows[40].ratio, t800.rows[40].ratio);
    ensure!((0.75..=1.0).contains(&r4), "p(40)/1600 = {r4} at 400 samples");
    ensure!(
        r8 > r4,
        "p(40) = {} at 400 and {} at 800 samples: ratio {r4:.4} did not increase when doubling",
        t400.p(40),
        t800.p(40)
    );
    Ok(format!(
        "p(40) = {} -> {}, ratio {r4:.4} -> {r8:.4} (target {:.4})",
        t400.p(40),
        t800.p(40),
        t800.target_ratio
    ))
}
