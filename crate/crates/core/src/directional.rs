//! Languages of many trajectories in the direction `(1/2, 1/φ, 1/φ²)`, grouped by
//! the circle invariant `s = y + z mod 1`, and their union.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::billiard::{self, BilliardError, Direction, Letter, StartPoint};
use crate::exactnum::FieldNumber;
use crate::returns::circle_partition;
use crate::words::{self, AffineLaw, FactorIndex, WordsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirectionalError {
    #[error("no valid start found on the circle s = {0}")]
    NoRepresentative(FieldNumber),
    #[error(transparent)]
    Billiard(#[from] BilliardError),
    #[error(transparent)]
    Words(#[from] WordsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SClass {
    Zero,
    TwoPhiMinus3,
    PhiMinus1,
    TwoMinusPhi,
    FourMinus2Phi,
    Generic,
}

impl SClass {
    pub const SPECIAL: [SClass; 5] = [
        SClass::Zero,
        SClass::TwoPhiMinus3,
        SClass::PhiMinus1,
        SClass::TwoMinusPhi,
        SClass::FourMinus2Phi,
    ];

    /// The value of `s` for the special classes.
    pub fn value(self) -> Option<FieldNumber> {
        Some(match self {
            SClass::Zero => FieldNumber::zero(),
            SClass::TwoPhiMinus3 => FieldNumber::golden(-3, 2),
            SClass::PhiMinus1 => FieldNumber::golden(-1, 1),
            SClass::TwoMinusPhi => FieldNumber::golden(2, -1),
            SClass::FourMinus2Phi => FieldNumber::golden(4, -2),
            SClass::Generic => return None,
        })
    }

    pub fn classify(s: &FieldNumber) -> SClass {
        let s = s.reduce_mod1();
        SClass::SPECIAL
            .into_iter()
            .find(|c| c.value().as_ref() == Some(&s))
            .unwrap_or(SClass::Generic)
    }

    pub fn name(self) -> &'static str {
        match self {
            SClass::Zero => "0",
            SClass::TwoPhiMinus3 => "2*phi-3",
            SClass::PhiMinus1 => "phi-1",
            SClass::TwoMinusPhi => "2-phi",
            SClass::FourMinus2Phi => "4-2*phi",
            SClass::Generic => "generic",
        }
    }
}

/// Stratified samples of `s`: the five special values, then blocks of one
/// rational (denominator ≤ 64) followed by three quartic points. A longer
/// schedule with the same seed extends a shorter one.
pub fn sample_schedule(count: usize, seed: u64) -> Vec<FieldNumber> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<FieldNumber> = SClass::SPECIAL
        .iter()
        .filter_map(|c| c.value())
        .take(count)
        .collect();
    let mut block = 0usize;
    while out.len() < count {
        let s = if block.is_multiple_of(4) {
            let q = rng.gen_range(2..=64i64);
            FieldNumber::from_ratio(rng.gen_range(1..q), q)
        } else {
            let mut c = || FieldNumber::from_ratio(rng.gen_range(-64..=64), rng.gen_range(1..=64));
            let (c0, c1, c3) = (c(), c(), c());
            let c2 = loop {
                let v = c();
                if !v.is_zero() {
                    break v;
                }
            };
            (&(&c0 + &(&c1 * &FieldNumber::phi())) + &(&(&c2 * &FieldNumber::sqrt2()) + &(&c3 * &FieldNumber::phi_sqrt2())))
                .reduce_mod1()
        };
        block += 1;
        out.push(s);
    }
    out
}

fn candidate_ys() -> impl Iterator<Item = FieldNumber> {
    (2..=40i64).flat_map(|q| (1..q).map(move |p| (p, q)))
        .filter(|&(p, q)| num_integer::gcd(p, q) == 1)
        .map(|(p, q)| FieldNumber::from_ratio(p, q))
}

/// Valid starts `(0, y, s − y mod 1)` on the circle through `s`, for rational `y`.
pub fn representatives(s: &FieldNumber) -> impl Iterator<Item = StartPoint> + '_ {
    let dir = Direction::theta0();
    candidate_ys().filter_map(move |y| {
        let z = (s - &y).reduce_mod1();
        if z.is_zero() {
            return None;
        }
        let m = StartPoint::on_face_x(y, z).ok()?;
        billiard::validate(&m, &dir, 1).ok()?;
        Some(m)
    })
}

pub fn representative(s: &FieldNumber) -> Result<StartPoint, DirectionalError> {
    representatives(s)
        .next()
        .ok_or_else(|| DirectionalError::NoRepresentative(s.clone()))
}

fn letters_to_codes(w: &[Letter]) -> Vec<u8> {
    billiard::word_codes(w)
}

/// Traced prefix of a start in the direction `θ₀`, as letter codes.
pub fn trace_codes(m: &StartPoint, prefix: usize) -> Result<Vec<u8>, DirectionalError> {
    Ok(letters_to_codes(&billiard::trace_letters(m, &Direction::theta0(), prefix)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub s: String,
    pub class: SClass,
    pub y: String,
    pub z: String,
    pub law: Option<AffineLaw>,
    pub stable_up_to: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub class: SClass,
    pub s_values: Vec<String>,
    pub law: Option<AffineLaw>,
    /// Every sample in the class produced the same law.
    pub laws_agree: bool,
    pub k: usize,
    /// A second start on the same circle produced the same factors.
    pub same_s_agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectionalCensus {
    pub classes: BTreeMap<SClass, ClassSummary>,
    pub samples: Vec<SampleReport>,
    pub skipped: Vec<(String, String)>,
    /// `p(n)` of the union of the sampled languages.
    pub union_p: Vec<u64>,
    pub n_max: usize,
    pub prefix: usize,
}

/// Largest `n` such that every length `≤ n` is certified.
fn stable_up_to(profile: &words::ComplexityProfile) -> usize {
    profile
        .first_unstable()
        .map_or(profile.n_max(), |n| n.saturating_sub(1))
}

/// Compares the factor sets of two traced words at every length certified in both.
pub fn same_language(a: &[u8], b: &[u8], n_max: usize) -> Result<(bool, usize), DirectionalError> {
    let (pa, pb) = (words::complexity(a, n_max)?, words::complexity(b, n_max)?);
    let upto = stable_up_to(&pa).min(stable_up_to(&pb));
    let fa = FactorIndex::new(a)?.factors_up_to(upto);
    let fb = FactorIndex::new(b)?.factors_up_to(upto);
    Ok((fa == fb, upto))
}

/// Checks two different starts on the circle through `s`.
pub fn same_s_check(s: &FieldNumber, n_max: usize, prefix: usize) -> Result<Option<(bool, usize)>, DirectionalError> {
    let mut reps = representatives(s);
    let (Some(m1), Some(m2)) = (reps.next(), reps.next()) else {
        return Ok(None);
    };
    let a = trace_codes(&m1, prefix)?;
    let b = trace_codes(&m2, prefix)?;
    same_language(&a, &b, n_max).map(Some)
}

struct Sampled {
    report: SampleReport,
    factors: Vec<Vec<Vec<u8>>>,
}

fn sample(s: &FieldNumber, n_max: usize, prefix: usize) -> Result<Sampled, DirectionalError> {
    let m = representative(s)?;
    let w = trace_codes(&m, prefix)?;
    if w.len() < 2 * (n_max + 2) {
        return Err(WordsError::TooShort { len: w.len(), n_max }.into());
    }
    let full = FactorIndex::new(&w)?;
    let profile = words::profile_from(&full, &FactorIndex::new(&w[..w.len() / 2])?, n_max);
    let factors = full.factors_up_to(n_max);
    Ok(Sampled {
        report: SampleReport {
            s: s.to_string(),
            class: SClass::classify(s),
            y: m.y().to_string(),
            z: m.z().to_string(),
            law: profile.require_stable().ok().and_then(|_| profile.affine_law()),
            stable_up_to: stable_up_to(&profile),
        },
        factors,
    })
}

/// Order-independent union of factor sets, one set per length.
#[derive(Debug, Clone)]
pub struct UnionAccumulator {
    sets: Vec<HashSet<Vec<u8>>>,
    samples: usize,
}

impl UnionAccumulator {
    pub fn new(n_max: usize) -> Self {
        UnionAccumulator {
            sets: vec![HashSet::new(); n_max + 1],
            samples: 0,
        }
    }

    pub fn add(&mut self, factors: Vec<Vec<Vec<u8>>>) {
        for (set, fs) in self.sets.iter_mut().zip(factors) {
            set.extend(fs);
        }
        self.samples += 1;
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn table(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.len() as u64).collect()
    }
}

/// `(4 + φ)/6`.
pub fn quadratic_constant() -> FieldNumber {
    (&FieldNumber::from_integer(4) + &FieldNumber::phi())
        .checked_div(&FieldNumber::from_integer(6))
        .expect("6 ≠ 0")
}

#[derive(Debug, Clone, Serialize)]
pub struct UnionRow {
    pub n: usize,
    pub p: u64,
    /// `p(n)/n²`.
    pub ratio: f64,
    /// `(p(n+1) − p(n))/n`.
    pub s_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnionComplexity {
    pub rows: Vec<UnionRow>,
    pub samples_used: usize,
    pub skipped: Vec<(String, String)>,
    pub target_ratio: f64,
    pub target_s_ratio: f64,
}

impl UnionComplexity {
    pub fn p(&self, n: usize) -> u64 {
        self.rows[n].p
    }

    pub fn from_table(p: &[u64], samples_used: usize, skipped: Vec<(String, String)>) -> Self {
        let c = quadratic_constant().to_f64();
        let rows = (0..p.len())
            .map(|n| UnionRow {
                n,
                p: p[n],
                ratio: if n == 0 { f64::NAN } else { p[n] as f64 / (n * n) as f64 },
                s_ratio: (n > 0 && n + 1 < p.len()).then(|| (p[n + 1] as f64 - p[n] as f64) / n as f64),
            })
            .collect();
        UnionComplexity {
            rows,
            samples_used,
            skipped,
            target_ratio: c,
            target_s_ratio: 2.0 * c,
        }
    }
}

fn run_samples(samples: &[FieldNumber], n_max: usize, prefix: usize) -> Vec<Result<Sampled, DirectionalError>> {
    samples.par_iter().map(|s| sample(s, n_max, prefix)).collect()
}

/// Union of the sampled languages; the table is taken after each checkpoint
/// number of samples (in schedule order), and after the last sample.
pub fn union_checkpoints(
    samples: &[FieldNumber],
    n_max: usize,
    prefix: usize,
    checkpoints: &[usize],
) -> Vec<UnionComplexity> {
    let mut acc = UnionAccumulator::new(n_max);
    let mut skipped = Vec::new();
    let mut out = Vec::new();
    let mut bounds: Vec<usize> = checkpoints.iter().copied().filter(|&c| c < samples.len()).collect();
    bounds.push(samples.len());
    let mut done = 0;
    for b in bounds {
        for (s, r) in samples[done..b].iter().zip(run_samples(&samples[done..b], n_max, prefix)) {
            match r {
                Ok(x) => acc.add(x.factors),
                Err(e) => skipped.push((s.to_string(), e.to_string())),
            }
        }
        done = b;
        out.push(UnionComplexity::from_table(&acc.table(), acc.samples(), skipped.clone()));
    }
    out
}

/// Lower bounds for the directional complexity from the union of sampled languages.
pub fn union_complexity(samples: &[FieldNumber], n_max: usize, prefix: usize) -> UnionComplexity {
    union_checkpoints(samples, n_max, prefix, &[])
        .pop()
        .expect("at least one table")
}

/// Per-class affine laws, the same-circle language check, and the union table.
pub fn census(samples: &[FieldNumber], n_max: usize, prefix: usize) -> DirectionalCensus {
    let mut acc = UnionAccumulator::new(n_max);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (s, r) in samples.iter().zip(run_samples(samples, n_max, prefix)) {
        match r {
            Ok(x) => {
                acc.add(x.factors);
                reports.push(x.report);
            }
            Err(e) => skipped.push((s.to_string(), e.to_string())),
        }
    }
    let mut classes: BTreeMap<SClass, ClassSummary> = BTreeMap::new();
    for (s, rep) in samples.iter().zip(&reports) {
        let entry = classes.entry(rep.class).or_insert_with(|| ClassSummary {
            class: rep.class,
            s_values: Vec::new(),
            law: rep.law,
            laws_agree: true,
            k: circle_partition(s).k,
            same_s_agree: None,
        });
        entry.s_values.push(rep.s.clone());
        entry.laws_agree &= entry.law == rep.law;
    }
    let firsts: Vec<(SClass, FieldNumber)> = classes
        .values()
        .map(|c| (c.class, c.s_values[0].parse().expect("own output")))
        .collect();
    let checks: Vec<(SClass, Option<bool>)> = firsts
        .par_iter()
        .map(|(c, s)| (*c, same_s_check(s, n_max, prefix).ok().flatten().map(|r| r.0)))
        .collect();
    for (c, ok) in checks {
        classes.get_mut(&c).expect("class present").same_s_agree = ok;
    }
    DirectionalCensus {
        classes,
        samples: reports,
        skipped,
        union_p: acc.table(),
        n_max,
        prefix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn f(s: &str) -> FieldNumber {
        s.parse().unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(SClass::classify(&f("0")), SClass::Zero);
        assert_eq!(SClass::classify(&f("phi")), SClass::PhiMinus1);
        assert_eq!(SClass::classify(&f("sqrt2-1")), SClass::Generic);
    }

    #[test]
    fn schedule_is_stratified_and_extensible() {
        let a = sample_schedule(40, 7);
        let b = sample_schedule(80, 7);
        assert_eq!(a[..], b[..40]);
        assert_eq!(a[..5].iter().map(SClass::classify).collect::<Vec<_>>(), SClass::SPECIAL);
        assert!(a[5].is_rational());
        assert!(a[6..9].iter().all(|s| !s.is_rational() && !s.coeff(2).is_zero()));
    }

    #[test]
    fn representatives_avoid_edges() {
        // y = 1/2 on s = 0 hits z = 1/2; the first candidates are valid
        let m = representative(&f("2-phi")).unwrap();
        assert_eq!((m.y() + m.z()).reduce_mod1(), f("2-phi"));
        assert!(representatives(&f("0")).take(3).count() == 3);
    }

    #[test]
    fn small_union() {
        let samples = sample_schedule(12, 1);
        let u = union_complexity(&samples, 6, 3000);
        assert_eq!(u.p(1), 3);
        assert_eq!(u.p(2), 7);
        assert!(u.skipped.is_empty());
    }
}
