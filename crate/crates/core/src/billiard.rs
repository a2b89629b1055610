//! Unfolded billiard trajectories in the unit cube and their three-letter codings.
//!
//! The half-line `m + t·θ`, `t ≥ 0`, is followed through the cell complex of Z³.
//! Each crossing of a plane `X = n` (resp. `Y = n`, `Z = n`) emits `a`
//! (resp. `b`, `c`). Crossing times along one axis form an arithmetic
//! progression, so the word is the exact three-way merge of three progressions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exactnum::{consts, Enclosure, FieldNumber, Rational};
use crate::linalg::{self, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn axis(self) -> usize {
        self as usize
    }

    pub fn from_axis(axis: usize) -> Letter {
        Letter::ALL[axis]
    }

    pub fn as_char(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

/// Parses a word over `{a, b, c}`; `None` on any other character.
pub fn parse_word(s: &str) -> Option<Vec<Letter>> {
    s.chars().map(Letter::from_char).collect()
}

pub fn word_codes(w: &[Letter]) -> Vec<u8> {
    w.iter().map(|l| l.code()).collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BilliardError {
    #[error("direction components must be strictly positive")]
    NonPositiveDirection,
    #[error("start coordinate {axis} = {value} lies outside [0, 1]")]
    OutOfCube { axis: usize, value: FieldNumber },
    #[error("degenerate start: coordinates {axes:?} are integral")]
    DegenerateStart { axes: Vec<usize> },
    #[error("edge hit at t = {time}: axes {axes:?} integral simultaneously (crossing #{crossing})")]
    EdgeHit {
        time: FieldNumber,
        axes: (usize, usize),
        crossing: u64,
    },
    #[error("horizon must be at least 1")]
    EmptyHorizon,
}

impl BilliardError {
    /// Short machine-readable reason.
    pub fn code(&self) -> &'static str {
        match self {
            BilliardError::NonPositiveDirection => "non_positive_direction",
            BilliardError::OutOfCube { .. } => "out_of_cube",
            BilliardError::DegenerateStart { .. } => "degenerate_start",
            BilliardError::EdgeHit { .. } => "edge_hit",
            BilliardError::EmptyHorizon => "empty_horizon",
        }
    }
}

/// Velocity `(θ₁, θ₂, θ₃)` with strictly positive components.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    theta: [FieldNumber; 3],
    inv: [FieldNumber; 3],
}

impl Direction {
    pub fn new(theta: [FieldNumber; 3]) -> Result<Self, BilliardError> {
        if theta.iter().any(|t| t.sign() <= 0) {
            return Err(BilliardError::NonPositiveDirection);
        }
        let inv = theta.each_ref().map(|t| t.inverse().expect("positive"));
        Ok(Direction { theta, inv })
    }

    /// `(r, 1/φ, 1/φ²)` for a positive rational `r`.
    pub fn family(r: &Rational) -> Result<Self, BilliardError> {
        Self::new([
            FieldNumber::from_rational(r.clone()),
            consts::inv_phi(),
            consts::inv_phi_sq(),
        ])
    }

    /// The direction `(1/2, 1/φ, 1/φ²)`.
    pub fn theta0() -> Self {
        Self::family(&Rational::new(1.into(), 2.into())).expect("positive")
    }

    pub fn components(&self) -> &[FieldNumber; 3] {
        &self.theta
    }

    pub fn component(&self, axis: usize) -> &FieldNumber {
        &self.theta[axis]
    }

    pub fn inverse_component(&self, axis: usize) -> &FieldNumber {
        &self.inv[axis]
    }
}

/// A point of the closed unit cube.
#[derive(Debug, Clone, PartialEq)]
pub struct StartPoint {
    coords: [FieldNumber; 3],
}

impl StartPoint {
    pub fn new(x: FieldNumber, y: FieldNumber, z: FieldNumber) -> Result<Self, BilliardError> {
        let coords = [x, y, z];
        for (axis, v) in coords.iter().enumerate() {
            if v.sign() < 0 || (v - &FieldNumber::one()).sign() > 0 {
                return Err(BilliardError::OutOfCube {
                    axis,
                    value: v.clone(),
                });
            }
        }
        Ok(StartPoint { coords })
    }

    /// The point `(0, y, z)` of the face `X = 0`.
    pub fn on_face_x(y: FieldNumber, z: FieldNumber) -> Result<Self, BilliardError> {
        Self::new(FieldNumber::zero(), y, z)
    }

    pub fn coords(&self) -> &[FieldNumber; 3] {
        &self.coords
    }

    pub fn x(&self) -> &FieldNumber {
        &self.coords[0]
    }

    pub fn y(&self) -> &FieldNumber {
        &self.coords[1]
    }

    pub fn z(&self) -> &FieldNumber {
        &self.coords[2]
    }

    /// Axes along which the start point has an integral coordinate.
    pub fn integral_axes(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.coords[i].is_integer()).collect()
    }
}

impl fmt::Display for StartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

fn ceil(x: &FieldNumber) -> BigInt {
    -(-x).floor()
}

/// Number of crossings of the planes normal to `axis` at times `0 ≤ t' < t`.
fn crossings_before(start: &StartPoint, dir: &Direction, axis: usize, t: &FieldNumber) -> BigInt {
    let x = &start.coords[axis];
    let reach = x + &(t * dir.component(axis));
    ceil(&reach) - ceil(x)
}

/// Checks that the start point and the first `horizon` crossings avoid the
/// edges of the cell complex (points with two or more integral coordinates).
pub fn validate(start: &StartPoint, dir: &Direction, horizon: u64) -> Result<(), BilliardError> {
    if horizon == 0 {
        return Err(BilliardError::EmptyHorizon);
    }
    let axes = start.integral_axes();
    if axes.len() >= 2 {
        return Err(BilliardError::DegenerateStart { axes });
    }
    let mut needs_scan = false;
    let mut earliest: Option<(FieldNumber, (usize, usize))> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        // (n_i − x_i)/θ_i = (n_j − x_j)/θ_j  ⇔  n_i/θ_i − n_j/θ_j = x_i/θ_i − x_j/θ_j
        let inv_i = dir.inverse_component(i);
        let inv_j = dir.inverse_component(j);
        let xi = &start.coords[i];
        let xj = &start.coords[j];
        let rhs = &(xi * inv_i) - &(xj * inv_j);
        match linalg::solve(&[inv_i.clone(), -inv_j], &rhs) {
            Solution::Inconsistent => {}
            Solution::Underdetermined => needs_scan = true,
            Solution::Unique(n) => {
                if n.iter().all(|v| v.is_integer()) {
                    let ni = FieldNumber::from_rational(n[0].clone());
                    let t = &(&ni - xi) * inv_i;
                    if t.sign() > 0 && earliest.as_ref().is_none_or(|(e, _)| t < *e) {
                        earliest = Some((t, (i, j)));
                    }
                }
            }
        }
    }
    if let Some((t, axes)) = earliest {
        let before: BigInt = (0..3).map(|a| crossings_before(start, dir, a, &t)).sum();
        if before < BigInt::from(horizon) {
            return Err(BilliardError::EdgeHit {
                time: t,
                axes,
                crossing: before.to_u64().unwrap_or(u64::MAX) + 1,
            });
        }
    }
    if needs_scan {
        // rationally dependent pair of components: ties are found by the merge
        for c in Crossings::new(start, dir).take(horizon as usize) {
            c?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Progression {
    first: FieldNumber,
    step: FieldNumber,
    first_enc: Option<Enclosure>,
    step_enc: Option<Enclosure>,
    next: i64,
}

impl Progression {
    fn time(&self, k: i64) -> FieldNumber {
        &self.first + &(&self.step * &FieldNumber::from_integer(k))
    }

    fn enclosure(&self, k: i64) -> Option<Enclosure> {
        self.first_enc?.checked_add(self.step_enc?.checked_mul_int(k)?)
    }
}

/// One crossing event: the letter and its index along that axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub letter: Letter,
    pub index: i64,
}

/// Lazy, exactly ordered stream of plane crossings along `m + t·θ`.
#[derive(Debug, Clone)]
pub struct Crossings {
    axes: [Progression; 3],
    emitted: u64,
    failed: bool,
}

impl Crossings {
    /// Crossings at `t ≥ 0`; a start on a plane contributes its `t = 0` crossing.
    pub fn new(start: &StartPoint, dir: &Direction) -> Self {
        Self::build(start, dir, false)
    }

    /// Crossings at `t > 0` only.
    pub fn strictly_after_start(start: &StartPoint, dir: &Direction) -> Self {
        Self::build(start, dir, true)
    }

    fn build(start: &StartPoint, dir: &Direction, strict: bool) -> Self {
        let axes = std::array::from_fn(|a| {
            let x = &start.coords[a];
            let n0 = if strict { x.floor() + 1 } else { ceil(x) };
            let step = dir.inverse_component(a).clone();
            let first = &(&FieldNumber::from_big_integer(n0) - x) * &step;
            Progression {
                first_enc: first.enclosure(),
                step_enc: step.enclosure(),
                first,
                step,
                next: 0,
            }
        });
        Crossings {
            axes,
            emitted: 0,
            failed: false,
        }
    }

    /// Exact time of a previously emitted crossing.
    pub fn time(&self, c: &Crossing) -> FieldNumber {
        self.axes[c.letter.axis()].time(c.index)
    }

    fn compare(&self, i: usize, j: usize) -> Ordering {
        let (pi, pj) = (&self.axes[i], &self.axes[j]);
        if let (Some(ei), Some(ej)) = (pi.enclosure(pi.next), pj.enclosure(pj.next)) {
            if let Some(o) = ei.compare(ej) {
                return o;
            }
        }
        pi.time(pi.next).cmp_exact(&pj.time(pj.next))
    }
}

impl Iterator for Crossings {
    type Item = Result<Crossing, BilliardError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let mut best = 0;
        let mut tie = None;
        for i in 1..3 {
            match self.compare(i, best) {
                Ordering::Less => {
                    best = i;
                    tie = None;
                }
                Ordering::Equal => tie = Some(i),
                Ordering::Greater => {}
            }
        }
        if let Some(other) = tie {
            self.failed = true;
            let p = &self.axes[best];
            return Some(Err(BilliardError::EdgeHit {
                time: p.time(p.next),
                axes: (best.min(other), best.max(other)),
                crossing: self.emitted + 1,
            }));
        }
        let index = self.axes[best].next;
        self.axes[best].next += 1;
        self.emitted += 1;
        Some(Ok(Crossing {
            letter: Letter::from_axis(best),
            index,
        }))
    }
}

/// A finite billiard word with the times of its crossings.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardWord {
    pub letters: Vec<Letter>,
    pub crossing_times: Vec<FieldNumber>,
    pub start: StartPoint,
    pub direction: Direction,
}

impl BilliardWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_string(&self) -> String {
        word_to_string(&self.letters)
    }
}

/// The first `n_letters` letters of the coding, with crossing times.
pub fn trace(start: &StartPoint, dir: &Direction, n_letters: usize) -> Result<BilliardWord, BilliardError> {
    validate(start, dir, n_letters.max(1) as u64)?;
    let mut it = Crossings::new(start, dir);
    let mut letters = Vec::with_capacity(n_letters);
    let mut crossing_times = Vec::with_capacity(n_letters);
    for _ in 0..n_letters {
        let c = it.next().expect("infinite stream")?;
        crossing_times.push(it.time(&c));
        letters.push(c.letter);
    }
    Ok(BilliardWord {
        letters,
        crossing_times,
        start: start.clone(),
        direction: dir.clone(),
    })
}

/// Letters only; avoids materialising crossing times for long words.
pub fn trace_letters(start: &StartPoint, dir: &Direction, n_letters: usize) -> Result<Vec<Letter>, BilliardError> {
    validate(start, dir, n_letters.max(1) as u64)?;
    Crossings::new(start, dir)
        .take(n_letters)
        .map(|c| c.map(|c| c.letter))
        .collect()
}

/// First crossing strictly after `t = 0`: its letter, time, and position.
///
/// Defined even for degenerate starts such as a cube corner, as long as that
/// first crossing itself is unambiguous.
pub fn first_crossing_after_start(
    start: &StartPoint,
    dir: &Direction,
) -> Result<(Letter, FieldNumber, [FieldNumber; 3]), BilliardError> {
    let mut it = Crossings::strictly_after_start(start, dir);
    let c = it.next().expect("infinite stream")?;
    let t = it.time(&c);
    let pos = std::array::from_fn(|a| &start.coords[a] + &(&t * dir.component(a)));
    Ok((c.letter, t, pos))
}

/// Erases every occurrence of `x`.
pub fn delete_letter(w: &[Letter], x: Letter) -> Vec<Letter> {
    w.iter().copied().filter(|&l| l != x).collect()
}

/// Empirical letter frequencies (count / length); empty map for the empty word.
pub fn letter_frequencies(w: &[Letter]) -> BTreeMap<Letter, Rational> {
    let mut counts: BTreeMap<Letter, u64> = BTreeMap::new();
    for &l in w {
        *counts.entry(l).or_default() += 1;
    }
    let len = BigInt::from(w.len());
    counts
        .into_iter()
        .map(|(l, c)| (l, Rational::new(BigInt::from(c), len.clone())))
        .collect()
}

/// Limiting frequency `θ_i / (θ₁ + θ₂ + θ₃)` of the letter for `axis`.
pub fn expected_frequency(dir: &Direction, letter: Letter) -> FieldNumber {
    let total = dir
        .components()
        .iter()
        .fold(FieldNumber::zero(), |acc, t| &acc + t);
    dir.component(letter.axis())
        .checked_div(&total)
        .expect("positive total")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FieldNumber {
        s.parse().unwrap()
    }

    fn face(y: &str, z: &str) -> StartPoint {
        StartPoint::on_face_x(f(y), f(z)).unwrap()
    }

    #[test]
    fn theta0_word_from_center_of_face() {
        let w = trace(&face("1/2", "1/2"), &Direction::theta0(), 12).unwrap();
        assert_eq!(w.as_string(), "abcabcabbacb");
        assert_eq!(w.crossing_times[0], FieldNumber::zero());
        assert_eq!(w.crossing_times[1], f("1/2*phi"));
        assert_eq!(w.crossing_times[3], f("2"));
    }

    #[test]
    fn degenerate_starts_rejected() {
        let dir = Direction::theta0();
        let corner = StartPoint::new(f("0"), f("0"), f("0")).unwrap();
        assert!(matches!(validate(&corner, &dir, 10), Err(BilliardError::DegenerateStart { .. })));
        let edge = face("1", "1/2");
        assert!(matches!(validate(&edge, &dir, 10), Err(BilliardError::DegenerateStart { .. })));
        assert!(matches!(validate(&face("1/2", "1/2"), &dir, 10_000), Ok(())));
    }

    #[test]
    fn edge_hit_is_detected_exactly() {
        // On the red line: the half-line meets the edge Y = Z = 1 at t = φ·(1 − y).
        let dir = Direction::theta0();
        let y = f("1/2");
        let z = &(&f("phi-1") * &y) + &f("2-phi");
        let m = StartPoint::on_face_x(y, z).unwrap();
        match validate(&m, &dir, 100) {
            Err(BilliardError::EdgeHit { time, axes, crossing }) => {
                assert_eq!(time, f("1/2*phi"));
                assert_eq!(axes, (1, 2));
                assert_eq!(crossing, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        // The merge reports the same tie.
        let mut it = Crossings::new(&m, &dir);
        assert!(it.next().unwrap().is_ok());
        assert!(matches!(it.next().unwrap(), Err(BilliardError::EdgeHit { .. })));
        // A horizon of one crossing does not reach the hit.
        assert!(validate(&m, &dir, 1).is_ok());
    }

    #[test]
    fn first_crossing_from_origin() {
        let origin = StartPoint::new(f("0"), f("0"), f("0")).unwrap();
        let (letter, t, pos) = first_crossing_after_start(&origin, &Direction::theta0()).unwrap();
        assert_eq!(letter, Letter::B);
        assert_eq!(t, f("phi"));
        assert_eq!(pos, [f("1/2*phi"), f("1"), f("phi-1")]);
    }

    #[test]
    fn deletion_and_frequencies() {
        let w = parse_word("abcabcabb").unwrap();
        assert_eq!(word_to_string(&delete_letter(&w, Letter::A)), "bcbcbb");
        assert_eq!(word_to_string(&delete_letter(&parse_word("ab").unwrap(), Letter::B)), "a");
        let freq = letter_frequencies(&parse_word("abab").unwrap());
        assert_eq!(freq[&Letter::A], Rational::new(1.into(), 2.into()));
        assert!(!freq.contains_key(&Letter::C));
    }

    #[test]
    fn expected_frequencies_theta0() {
        let dir = Direction::theta0();
        assert_eq!(expected_frequency(&dir, Letter::A), f("1/3"));
        assert_eq!(expected_frequency(&dir, Letter::B), f("2/3*phi-2/3"));
        // 2/(3φ²) = 2(2 − φ)/3
        assert_eq!(expected_frequency(&dir, Letter::C), f("4/3-2/3*phi"));
    }

    #[test]
    fn dependent_components_fall_back_to_scan() {
        // θ = (1, 1, φ): X and Y crossings coincide at t = 1/2 from (1/2, 1/2, 1/3).
        let dir = Direction::new([f("1"), f("1"), f("phi")]).unwrap();
        let m = StartPoint::new(f("1/2"), f("1/2"), f("1/3")).unwrap();
        assert!(matches!(validate(&m, &dir, 50), Err(BilliardError::EdgeHit { .. })));
        let ok = StartPoint::new(f("1/3"), f("1/2"), f("1/3")).unwrap();
        // X times 2/3 + k, Y times 1/2 + k: never equal.
        assert!(validate(&ok, &dir, 200).is_ok());
    }

    #[test]
    fn out_of_cube_rejected() {
        assert!(matches!(
            StartPoint::new(f("0"), f("3/2"), f("1/2")),
            Err(BilliardError::OutOfCube { axis: 1, .. })
        ));
    }
}
