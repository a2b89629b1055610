//! Return words of `a`, the seven-cell partition of the face `X = 0`, and the
//! circle sections of that partition along the flow direction `(1, −1)`.
//!
//! For the direction `(1/2, 1/φ, 1/φ²)` a trajectory leaving the face at `(y, z)`
//! meets the next plane `X = n` after time 2, and the letters in between depend
//! only on which side of four curves `(y, z)` lies:
//!
//! * horizontal `z = 2φ − 3` (a `c` occurs before time 2 iff above),
//! * vertical `y = 4 − 2φ` (two `b`s iff right of it),
//! * red `z = (φ − 1)y + 2 − φ`, projection of the edge `Y = Z = 1`,
//! * blue `z = (φ − 1)y + 3 − 2φ` for `y ≥ 4 − 2φ`, projection of `Y = 2, Z = 1`.

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::billiard::{self, BilliardError, Crossings, Direction, Letter, StartPoint};
use crate::exactnum::{consts, FieldNumber, Rational};
use crate::rotation::{self, RotationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum CellLabel {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
}

impl CellLabel {
    pub const ALL: [CellLabel; 7] = [
        CellLabel::A1,
        CellLabel::A2,
        CellLabel::A3,
        CellLabel::A4,
        CellLabel::A5,
        CellLabel::A6,
        CellLabel::A7,
    ];

    /// The return word Φ(label).
    pub fn phi_image(self) -> &'static [Letter] {
        use Letter::{A, B, C};
        match self {
            CellLabel::A1 => &[A, C, B],
            CellLabel::A2 => &[A, B, C],
            CellLabel::A3 => &[A, B, C, B],
            CellLabel::A4 => &[A, B, B],
            CellLabel::A5 => &[A, B, B, C],
            CellLabel::A6 => &[A, C, B, B],
            CellLabel::A7 => &[A, B],
        }
    }

    pub fn from_return_word(w: &[Letter]) -> Option<CellLabel> {
        CellLabel::ALL.into_iter().find(|l| l.phi_image() == w)
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(c: u8) -> Option<CellLabel> {
        CellLabel::ALL.get(c as usize).copied()
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.index())
    }
}

/// Applies Φ letter by letter.
pub fn apply_phi(labels: &[CellLabel]) -> Vec<Letter> {
    labels.iter().flat_map(|l| l.phi_image().iter().copied()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Curve {
    Horizontal,
    Vertical,
    Red,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReturnsError {
    #[error("point lies on the {0:?} boundary curve")]
    OnBoundary(Curve),
    #[error("point ({y}, {z}) is not in the open unit square")]
    OutsideFace { y: FieldNumber, z: FieldNumber },
    #[error("start point is not on the face X = 0")]
    NotOnFace,
    #[error("only {found} occurrence(s) of the letter; at least two are needed")]
    InsufficientOccurrences { found: usize },
    #[error(transparent)]
    Billiard(#[from] BilliardError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

/// The partition of the face `X = 0` by first return word of `a`.
#[derive(Debug, Clone)]
pub struct FacePartition {
    pub horizontal: FieldNumber,
    pub vertical: FieldNumber,
    pub slope: FieldNumber,
    pub red_intercept: FieldNumber,
    pub blue_intercept: FieldNumber,
}

impl Default for FacePartition {
    fn default() -> Self {
        Self::theta0()
    }
}

impl FacePartition {
    pub fn theta0() -> Self {
        FacePartition {
            horizontal: FieldNumber::golden(-3, 2),
            vertical: FieldNumber::golden(4, -2),
            slope: consts::inv_phi(),
            red_intercept: FieldNumber::golden(2, -1),
            blue_intercept: FieldNumber::golden(3, -2),
        }
    }

    fn red_at(&self, y: &FieldNumber) -> FieldNumber {
        &(&self.slope * y) + &self.red_intercept
    }

    fn blue_at(&self, y: &FieldNumber) -> FieldNumber {
        &(&self.slope * y) + &self.blue_intercept
    }

    /// The cell containing `(y, z)`; points on a boundary curve are rejected.
    pub fn cell_of(&self, y: &FieldNumber, z: &FieldNumber) -> Result<CellLabel, ReturnsError> {
        let one = FieldNumber::one();
        if y.sign() <= 0 || z.sign() <= 0 || (y - &one).sign() >= 0 || (z - &one).sign() >= 0 {
            return Err(ReturnsError::OutsideFace {
                y: y.clone(),
                z: z.clone(),
            });
        }
        let side = |v: FieldNumber, curve: Curve| match v.sign() {
            0 => Err(ReturnsError::OnBoundary(curve)),
            s => Ok(s > 0),
        };
        let above_red = side(z - &self.red_at(y), Curve::Red)?;
        let right = side(y - &self.vertical, Curve::Vertical)?;
        if above_red {
            return Ok(if right { CellLabel::A6 } else { CellLabel::A1 });
        }
        let above_h = side(z - &self.horizontal, Curve::Horizontal)?;
        Ok(match (right, above_h) {
            (false, true) => CellLabel::A2,
            (false, false) => CellLabel::A7,
            (true, false) => CellLabel::A4,
            (true, true) => {
                if side(z - &self.blue_at(y), Curve::Blue)? {
                    CellLabel::A3
                } else {
                    CellLabel::A5
                }
            }
        })
    }
}

/// Cell of `(y, z)` in the partition for `(1/2, 1/φ, 1/φ²)`.
pub fn cell_of(y: &FieldNumber, z: &FieldNumber) -> Result<CellLabel, ReturnsError> {
    FacePartition::theta0().cell_of(y, z)
}

/// A word cut at the occurrences of one letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnWords {
    /// Letters before the first occurrence.
    pub leading: Vec<Letter>,
    /// Complete return words, in order.
    pub words: Vec<Vec<Letter>>,
    /// From the last occurrence to the end of the word.
    pub trailing: Vec<Letter>,
}

pub fn return_words(w: &[Letter], letter: Letter) -> Result<ReturnWords, ReturnsError> {
    let positions: Vec<usize> = w
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == letter)
        .map(|(i, _)| i)
        .collect();
    if positions.len() < 2 {
        return Err(ReturnsError::InsufficientOccurrences {
            found: positions.len(),
        });
    }
    let words = positions
        .windows(2)
        .map(|p| w[p[0]..p[1]].to_vec())
        .collect();
    let last = *positions.last().expect("nonempty");
    Ok(ReturnWords {
        leading: w[..positions[0]].to_vec(),
        words,
        trailing: w[last..].to_vec(),
    })
}

/// The first return word of `a` observed by tracing from a face point.
pub fn observed_first_return(m: &StartPoint, dir: &Direction) -> Result<Vec<Letter>, ReturnsError> {
    if !m.x().is_zero() {
        return Err(ReturnsError::NotOnFace);
    }
    billiard::validate(m, dir, 1)?;
    let mut out = Vec::new();
    for c in Crossings::new(m, dir) {
        let c = c?;
        if c.letter == Letter::A && !out.is_empty() {
            return Ok(out);
        }
        out.push(c.letter);
    }
    unreachable!("crossing stream is infinite")
}

/// Predicted `(k+1)`-th return word of the trajectory from `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    /// Translated face point.
    pub y: FieldNumber,
    pub z: FieldNumber,
    /// Cell in the hard-coded partition (only for r = 1/2).
    pub cell: Option<CellLabel>,
    pub word: Vec<Letter>,
}

/// Face point reached after `k` returns: `(y + k·θ₂/r, z + k·θ₃/r) mod 1`.
pub fn translated_point(m: &StartPoint, k: u64, r: &Rational) -> (FieldNumber, FieldNumber) {
    let dir = Direction::family(r).expect("positive r");
    let period = FieldNumber::from_rational(r.recip());
    let kk = FieldNumber::from_integer(k as i64);
    let dy = &(&kk * &period) * dir.component(1);
    let dz = &(&kk * &period) * dir.component(2);
    ((m.y() + &dy).reduce_mod1(), (m.z() + &dz).reduce_mod1())
}

/// Predicts the `(k+1)`-th return word without tracing the first `k` of them.
///
/// For `r = 1/2` the prediction is the cell of the translated point. Other
/// rationals have no hard-coded partition; the prediction then traces a single
/// return word from the translated point.
pub fn kth_return_prediction(m: &StartPoint, k: u64, r: &Rational) -> Result<Prediction, ReturnsError> {
    if !m.x().is_zero() {
        return Err(ReturnsError::NotOnFace);
    }
    let (y, z) = translated_point(m, k, r);
    if *r == Rational::new(1.into(), 2.into()) {
        let cell = cell_of(&y, &z)?;
        return Ok(Prediction {
            word: cell.phi_image().to_vec(),
            y,
            z,
            cell: Some(cell),
        });
    }
    let start = StartPoint::on_face_x(y.clone(), z.clone())?;
    let word = observed_first_return(&start, &Direction::family(r)?)?;
    Ok(Prediction {
        y,
        z,
        cell: None,
        word,
    })
}

/// Distinct first return words over a `grid × grid` sample of the face, with
/// the number of grid points producing each. Points whose trajectories are
/// invalid are skipped.
pub fn discover_return_cells(r: &Rational, grid: u32) -> Result<Vec<(Vec<Letter>, usize)>, ReturnsError> {
    let dir = Direction::family(r)?;
    let mut found: std::collections::BTreeMap<Vec<Letter>, usize> = Default::default();
    let den = 2 * grid as i64;
    for i in 0..grid as i64 {
        for j in 0..grid as i64 {
            let y = FieldNumber::from_ratio(2 * i + 1, den);
            let z = FieldNumber::from_ratio(2 * j + 1, den);
            let m = StartPoint::on_face_x(y, z)?;
            if let Ok(w) = observed_first_return(&m, &dir) {
                *found.entry(w).or_default() += 1;
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// One labelled interval of the circle, as a sub-interval of `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub start: FieldNumber,
    pub end: FieldNumber,
    pub label: CellLabel,
}

impl Arc {
    pub fn length(&self) -> FieldNumber {
        &self.end - &self.start
    }
}

/// Section of the face partition by the closed circle `y + z ≡ s (mod 1)`,
/// parametrised by the `y` coordinate.
#[derive(Debug, Clone)]
pub struct CirclePartition {
    pub s: FieldNumber,
    /// Maximal labelled intervals of `[0, 1)` in increasing order.
    pub arcs: Vec<Arc>,
    /// Every point where the circle meets a boundary curve or an edge of the
    /// square; orbits must avoid them.
    pub singular: Vec<FieldNumber>,
    /// Number of labelled arcs on the circle (first and last interval merge when
    /// they carry the same label).
    pub k: usize,
}

impl CirclePartition {
    /// Interval endpoints strictly inside `(0, 1)`.
    pub fn interior_cuts(&self) -> Vec<FieldNumber> {
        self.arcs.iter().skip(1).map(|a| a.start.clone()).collect()
    }

    /// Every point of the circle where the label changes, including 0 when the
    /// labels on both sides of it differ.
    pub fn cuts(&self) -> Vec<FieldNumber> {
        let mut out = Vec::new();
        if self.arcs.first().map(|a| a.label) != self.arcs.last().map(|a| a.label) {
            out.push(FieldNumber::zero());
        }
        out.extend(self.interior_cuts());
        out
    }

    pub fn labels(&self) -> Vec<CellLabel> {
        self.arcs.iter().map(|a| a.label).collect()
    }

    pub fn z_of(&self, y: &FieldNumber) -> FieldNumber {
        (&self.s - y).reduce_mod1()
    }

    /// Label of the arc containing `y`, or `None` when `y` is singular.
    pub fn locate(&self, y: &FieldNumber) -> Option<CellLabel> {
        if self.singular.iter().any(|c| c == y) {
            return None;
        }
        let y = y.reduce_mod1();
        self.arcs
            .iter()
            .find(|a| a.end > y)
            .map(|a| a.label)
    }
}

/// Computes the section of the face partition by the circle through `s`.
pub fn circle_partition(s: &FieldNumber) -> CirclePartition {
    let part = FacePartition::theta0();
    let s = s.reduce_mod1();
    let one = FieldNumber::one();
    let phi = FieldNumber::phi();
    let mut points = vec![FieldNumber::zero()];
    if !s.is_zero() {
        points.push(s.clone());
    }
    let inside = |y: &FieldNumber, lo: &FieldNumber, hi: &FieldNumber| y > lo && y < hi;
    // branch e = 0: y ∈ (0, s), z = s − y ; branch e = 1: y ∈ (s, 1), z = s + 1 − y
    for e in [0i64, 1] {
        let (lo, hi) = if e == 0 {
            (FieldNumber::zero(), s.clone())
        } else {
            (s.clone(), one.clone())
        };
        let shifted = &s + &FieldNumber::from_integer(e);
        let mut cands = vec![
            &shifted - &part.horizontal,
            part.vertical.clone(),
            // s + e − y = (φ − 1)y + c  ⇔  y = (s + e − c)/φ
            (&shifted - &part.red_intercept).checked_div(&phi).expect("φ ≠ 0"),
        ];
        let blue = (&shifted - &part.blue_intercept).checked_div(&phi).expect("φ ≠ 0");
        if blue >= part.vertical {
            cands.push(blue);
        }
        points.extend(cands.into_iter().filter(|y| inside(y, &lo, &hi)));
    }
    points.sort();
    let before = points.len();
    points.dedup();
    if points.len() < before {
        log::debug!("circle s = {s}: {} coincident cut(s) dropped", before - points.len());
    }

    let two = FieldNumber::from_integer(2);
    let mut arcs: Vec<Arc> = Vec::new();
    for (i, start) in points.iter().enumerate() {
        let end = points.get(i + 1).cloned().unwrap_or_else(|| one.clone());
        let mid = (start + &end).checked_div(&two).expect("2 ≠ 0");
        let z = (&s - &mid).reduce_mod1();
        let label = part
            .cell_of(&mid, &z)
            .expect("open arcs avoid the boundary curves");
        match arcs.last_mut() {
            Some(prev) if prev.label == label => prev.end = end,
            _ => arcs.push(Arc {
                start: start.clone(),
                end,
                label,
            }),
        }
    }
    let changes = (0..arcs.len())
        .filter(|&i| arcs[i].label != arcs[(i + 1) % arcs.len()].label)
        .count();
    CirclePartition {
        s,
        k: changes.max(1),
        arcs,
        singular: points,
    }
}

/// Angle of the induced circle translation, `θ₂/r mod 1`; `2φ − 3` for r = 1/2.
pub fn rotation_angle(r: &Rational) -> FieldNumber {
    let dir = Direction::family(r).expect("positive r");
    (dir.component(1) * &FieldNumber::from_rational(r.recip())).reduce_mod1()
}

/// Rebuilds the billiard word from `m = (0, y, z)` as Φ of the coded orbit of `y`
/// under `y ↦ y + 2/φ mod 1`.
pub fn reconstruct(m: &StartPoint, n_letters: usize) -> Result<Vec<Letter>, ReturnsError> {
    if !m.x().is_zero() {
        return Err(ReturnsError::NotOnFace);
    }
    let axes = m.integral_axes();
    if axes.len() >= 2 {
        return Err(BilliardError::DegenerateStart { axes }.into());
    }
    let s = (m.y() + m.z()).reduce_mod1();
    let part = circle_partition(&s);
    let alpha = rotation_angle(&Rational::new(One::one(), 2.into()));
    let n_returns = n_letters / 2 + 1;
    let coding = rotation::code_orbit(m.y(), &part, &alpha, n_returns)?;
    let mut w = apply_phi(&coding.word);
    w.truncate(n_letters);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::{parse_word, trace_letters};

    fn f(s: &str) -> FieldNumber {
        s.parse().unwrap()
    }

    #[test]
    fn phi_table() {
        let words: Vec<String> = CellLabel::ALL
            .iter()
            .map(|l| billiard::word_to_string(l.phi_image()))
            .collect();
        assert_eq!(words, ["acb", "abc", "abcb", "abb", "abbc", "acbb", "ab"]);
    }

    #[test]
    fn cell_examples() {
        assert_eq!(cell_of(&f("1/2"), &f("1/2")).unwrap(), CellLabel::A2);
        assert_eq!(cell_of(&f("9/10"), &f("1/10")).unwrap(), CellLabel::A4);
        assert_eq!(
            cell_of(&f("4-2*phi"), &f("1/2")),
            Err(ReturnsError::OnBoundary(Curve::Vertical))
        );
        assert!(matches!(cell_of(&f("0"), &f("1/2")), Err(ReturnsError::OutsideFace { .. })));
    }

    #[test]
    fn cell_matches_first_return_at_cell_centres() {
        let dir = Direction::theta0();
        // one interior sample per cell
        let samples = [
            ("1/4", "3/4", CellLabel::A1),
            ("1/2", "3/8", CellLabel::A2),
            ("7/8", "1/2", CellLabel::A3),
            ("7/8", "1/8", CellLabel::A4),
            ("37/40", "3/10", CellLabel::A5),
            ("4/5", "24/25", CellLabel::A6),
            ("1/2", "1/8", CellLabel::A7),
        ];
        for (y, z, label) in samples {
            let m = StartPoint::on_face_x(f(y), f(z)).unwrap();
            assert_eq!(cell_of(m.y(), m.z()).unwrap(), label, "({y},{z})");
            let w = observed_first_return(&m, &dir).unwrap();
            assert_eq!(w, label.phi_image(), "({y},{z})");
        }
    }

    #[test]
    fn boundary_curves_are_projections_of_edges() {
        // A face point reaching the edge {Y = b, Z = c} at time t ∈ (0, 2) starts at
        // (b − t/φ, c − t/φ²); these land on the red and blue lines.
        let part = FacePartition::theta0();
        let dir = Direction::theta0();
        for t in ["1/3", "1/2", "1", "3/2", "phi-1"] {
            let t = f(t);
            let y = &f("1") - &(&t * dir.component(1));
            let z = &f("1") - &(&t * dir.component(2));
            assert_eq!(z, part.red_at(&y));
            let y2 = &f("2") - &(&t * dir.component(1));
            if (&y2 - &f("1")).sign() < 0 {
                assert_eq!(z, part.blue_at(&y2));
            }
        }
        // the edges {X = 2, Z = 1} and {X = 2, Y = 2} give the straight lines
        assert_eq!(&f("1") - &(&f("2") * dir.component(2)), part.horizontal);
        assert_eq!(&f("2") - &(&f("2") * dir.component(1)), part.vertical);
    }

    #[test]
    fn return_word_extraction() {
        let w = parse_word("babcabbacb").unwrap();
        let r = return_words(&w, Letter::A).unwrap();
        assert_eq!(r.leading, parse_word("b").unwrap());
        assert_eq!(r.words, vec![parse_word("abc").unwrap(), parse_word("abb").unwrap()]);
        assert_eq!(r.trailing, parse_word("acb").unwrap());
        assert_eq!(
            return_words(&parse_word("ab").unwrap(), Letter::A),
            Err(ReturnsError::InsufficientOccurrences { found: 1 })
        );
    }

    #[test]
    fn circle_s_zero() {
        let c = circle_partition(&f("0"));
        assert_eq!(c.k, 3);
        assert_eq!(c.interior_cuts(), vec![f("2-phi"), f("4-2*phi")]);
        assert_eq!(c.labels(), vec![CellLabel::A1, CellLabel::A2, CellLabel::A4]);
    }

    #[test]
    fn circle_s_two_minus_phi() {
        let c = circle_partition(&f("2-phi"));
        assert_eq!(c.k, 5);
        assert_eq!(
            c.interior_cuts(),
            vec![f("5-3*phi"), f("2-phi"), f("phi-1"), f("4-2*phi")]
        );
        use CellLabel::*;
        assert_eq!(c.labels(), vec![A2, A7, A1, A2, A3]);
    }

    #[test]
    fn circle_census_of_special_values() {
        for (s, k) in [
            ("0", 3),
            ("2*phi-3", 5),
            ("phi-1", 5),
            ("2-phi", 5),
            ("4-2*phi", 5),
            ("sqrt2-1", 6),
            ("1/3", 6),
        ] {
            assert_eq!(circle_partition(&f(s)).k, k, "s = {s}");
        }
    }

    #[test]
    fn arcs_tile_the_circle() {
        for s in ["0", "sqrt2-1", "1/7", "2-phi", "9/10"] {
            let c = circle_partition(&f(s));
            let total = c.arcs.iter().fold(FieldNumber::zero(), |acc, a| &acc + &a.length());
            assert_eq!(total, FieldNumber::one());
            assert!(c.arcs.iter().all(|a| a.length().sign() > 0));
        }
    }

    #[test]
    fn lemma_translation_examples() {
        let m = StartPoint::on_face_x(f("1/2"), f("1/2")).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(kth_return_prediction(&m, 0, &half).unwrap().cell, Some(CellLabel::A2));
        let p = kth_return_prediction(&m, 2, &half).unwrap();
        assert_eq!(p.cell, Some(CellLabel::A4));
        assert_eq!(p.y, f("4*phi-11/2"));
        assert_eq!(rotation_angle(&half), f("2*phi-3"));
    }

    #[test]
    fn reconstruct_matches_trace_short() {
        let m = StartPoint::on_face_x(f("1/2"), f("1/2")).unwrap();
        let w = reconstruct(&m, 12).unwrap();
        assert_eq!(billiard::word_to_string(&w), "abcabcabbacb");
        let t = trace_letters(&m, &Direction::theta0(), 400).unwrap();
        assert_eq!(reconstruct(&m, 400).unwrap(), t);
    }

    #[test]
    fn other_rationals_use_traced_returns() {
        let r = Rational::new(1.into(), 3.into());
        let m = StartPoint::on_face_x(f("1/5"), f("2/7")).unwrap();
        let dir = Direction::family(&r).unwrap();
        let w = trace_letters(&m, &dir, 400).unwrap();
        let rw = return_words(&w, Letter::A).unwrap();
        for (k, obs) in rw.words.iter().enumerate().take(40) {
            let p = kth_return_prediction(&m, k as u64, &r).unwrap();
            assert_eq!(&p.word, obs, "k = {k}");
        }
        let cells = discover_return_cells(&r, 6).unwrap();
        assert!(cells.len() >= 2);
    }
}
