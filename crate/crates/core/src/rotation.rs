//! The circle translation `y ↦ y + α mod 1` and its coding by a [`CirclePartition`].

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{Enclosure, FieldNumber, Rational};
use crate::linalg;
use crate::returns::{CellLabel, CirclePartition};
use crate::words::{self, AffineLaw, ComplexityProfile, WordsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RotationError {
    #[error("orbit point {step} lies on a cut point")]
    HitsCut { step: usize },
    #[error("rotation angle {0} is rational")]
    Degenerate(FieldNumber),
    #[error("connection index does not fit in 64 bits")]
    Overflow,
    #[error("coded word carries no affine law")]
    NoAffineLaw,
    #[error(transparent)]
    Words(#[from] WordsError),
}

#[derive(Debug, Clone)]
pub struct RotationCoding {
    pub alpha: FieldNumber,
    pub partition: CirclePartition,
    pub start: FieldNumber,
    pub word: Vec<CellLabel>,
}

impl RotationCoding {
    pub fn codes(&self) -> Vec<u8> {
        self.word.iter().map(|l| l.code()).collect()
    }
}

struct ArcBounds {
    start: Enclosure,
    end: Enclosure,
    label: CellLabel,
}

/// Codes `n` points of the orbit of `y0`.
///
/// Each orbit point is first located with fixed-point enclosures; only points
/// too close to a cut are settled by exact arithmetic.
pub fn code_orbit(
    y0: &FieldNumber,
    part: &CirclePartition,
    alpha: &FieldNumber,
    n: usize,
) -> Result<RotationCoding, RotationError> {
    let cuts = part.cuts();
    let y0 = y0.reduce_mod1();
    let alpha = alpha.reduce_mod1();
    let bounds: Option<Vec<ArcBounds>> = part
        .arcs
        .iter()
        .map(|a| {
            Some(ArcBounds {
                start: a.start.enclosure()?,
                end: a.end.enclosure()?,
                label: a.label,
            })
        })
        .collect();
    let fast = bounds.zip(y0.enclosure()).zip(alpha.enclosure());

    let exact_label = |k: usize| -> Result<CellLabel, RotationError> {
        let y = (&y0 + &(&alpha * &FieldNumber::from_integer(k as i64))).reduce_mod1();
        if cuts.contains(&y) {
            return Err(RotationError::HitsCut { step: k });
        }
        Ok(part
            .arcs
            .iter()
            .find(|a| a.end > y)
            .expect("arcs cover [0, 1)")
            .label)
    };

    let mut word = Vec::with_capacity(n);
    for k in 0..n {
        let certified = fast.as_ref().and_then(|((arcs, ey), ea)| {
            let e = ey.checked_add(ea.checked_mul_int(k as i64)?)?;
            let fl = e.floor()?;
            let e = e.checked_sub(Enclosure::exact_integer(fl)?)?;
            arcs.iter()
                .find(|b| e.lo > b.start.hi && e.hi < b.end.lo)
                .map(|b| b.label)
        });
        word.push(match certified {
            Some(l) => l,
            None => exact_label(k)?,
        });
    }
    Ok(RotationCoding {
        alpha,
        partition: part.clone(),
        start: y0,
        word,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionMode {
    Exact,
    /// Search `|n| ≤ bound` by substitution.
    Bounded(u64),
}

/// Decides whether `ai − aj ∈ Zα + Z`, returning the `n` with `ai − aj − nα ∈ Z`.
pub fn saddle_connection(
    ai: &FieldNumber,
    aj: &FieldNumber,
    alpha: &FieldNumber,
    mode: ConnectionMode,
) -> Result<Option<i64>, RotationError> {
    let d = ai - aj;
    if alpha.is_rational() {
        return Err(RotationError::Degenerate(alpha.clone()));
    }
    match mode {
        ConnectionMode::Bounded(b) => {
            let b = b as i64;
            Ok((-b..=b).find(|&n| (&d - &(alpha * &FieldNumber::from_integer(n))).is_integer()))
        }
        ConnectionMode::Exact => {
            let dc = d.coefficients();
            let ac = alpha.coefficients();
            let pivot = (1..4).find(|&i| !ac[i].is_zero()).expect("irrational α");
            let n: Rational = &dc[pivot] / &ac[pivot];
            if (1..4).any(|i| dc[i] != &n * &ac[i]) || !n.is_integer() {
                return Ok(None);
            }
            let rest = &dc[0] - &n * &ac[0];
            if !rest.is_integer() {
                return Ok(None);
            }
            let n: BigInt = n.to_integer();
            n.to_i64().map(Some).ok_or(RotationError::Overflow)
        }
    }
}

/// Rank over Z of the subgroup of R generated by `generators` and 1.
pub fn zmodule_rank(generators: &[FieldNumber]) -> usize {
    let mut rows: Vec<Vec<Rational>> = generators.iter().map(linalg::coordinates).collect();
    rows.push(linalg::coordinates(&FieldNumber::one()));
    linalg::rank(rows)
}

/// Slope predicted from the angle and the label-changing cuts of the partition.
pub fn rank_prediction(part: &CirclePartition, alpha: &FieldNumber) -> usize {
    let mut gens = vec![alpha.clone()];
    gens.extend(part.cuts());
    zmodule_rank(&gens)
}

/// Number of classes of label-changing cuts under `c ~ c′ ⇔ c − c′ ∈ Zα + Z`.
pub fn connection_classes(part: &CirclePartition, alpha: &FieldNumber) -> Result<usize, RotationError> {
    let cuts = part.cuts();
    let mut class: Vec<usize> = (0..cuts.len()).collect();
    for i in 0..cuts.len() {
        for j in 0..i {
            if class[j] == j
                && saddle_connection(&cuts[i], &cuts[j], alpha, ConnectionMode::Exact)?.is_some()
            {
                class[i] = j;
                break;
            }
        }
    }
    Ok(class.iter().enumerate().filter(|(i, c)| i == *c).count())
}

/// Complexity profile of a coded orbit and its fitted affine law.
pub fn coding_complexity(
    rc: &RotationCoding,
    n_max: usize,
) -> Result<(ComplexityProfile, AffineLaw), RotationError> {
    let profile = words::complexity(&rc.codes(), n_max)?;
    profile.require_stable()?;
    let law = profile.affine_law().ok_or(RotationError::NoAffineLaw)?;
    Ok((profile, law))
}

/// Codes enough of the orbit of `y0` on the circle through `s` for a certified
/// profile up to `n_max`, with the angle `2φ − 3`.
pub fn circle_coding(
    s: &FieldNumber,
    y0: &FieldNumber,
    n_max: usize,
) -> Result<RotationCoding, RotationError> {
    let part = crate::returns::circle_partition(s);
    let alpha = FieldNumber::golden(-3, 2);
    code_orbit(y0, &part, &alpha, words::certified_prefix_len(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::returns::circle_partition;
    use CellLabel::*;

    fn f(s: &str) -> FieldNumber {
        s.parse().unwrap()
    }

    #[test]
    fn first_letters_s_zero() {
        let part = circle_partition(&f("0"));
        let rc = code_orbit(&f("1/2"), &part, &f("2*phi-3"), 4).unwrap();
        assert_eq!(rc.word, vec![A2, A2, A4, A1]);
    }

    #[test]
    fn start_on_cut() {
        let part = circle_partition(&f("0"));
        assert_eq!(
            code_orbit(&f("2-phi"), &part, &f("2*phi-3"), 3).unwrap_err(),
            RotationError::HitsCut { step: 0 }
        );
        // (5 − 3φ) + (2φ − 3) = 2 − φ
        let err = code_orbit(&f("5-3*phi"), &part, &f("2*phi-3"), 3).unwrap_err();
        assert_eq!(err, RotationError::HitsCut { step: 1 });
    }

    #[test]
    fn connections() {
        let a = f("2*phi-3");
        assert_eq!(
            saddle_connection(&f("2-phi"), &f("4-2*phi"), &a, ConnectionMode::Exact).unwrap(),
            None
        );
        assert_eq!(
            saddle_connection(&f("sqrt2"), &f("sqrt2"), &a, ConnectionMode::Exact).unwrap(),
            Some(0)
        );
        assert_eq!(
            saddle_connection(&f("0"), &f("4-2*phi"), &a, ConnectionMode::Exact).unwrap(),
            Some(1)
        );
        assert!(matches!(
            saddle_connection(&f("0"), &f("1/2"), &f("1/3"), ConnectionMode::Exact),
            Err(RotationError::Degenerate(_))
        ));
    }

    #[test]
    fn ranks() {
        assert_eq!(zmodule_rank(&[f("2*phi-3"), f("2-phi"), f("4-2*phi")]), 2);
        assert_eq!(zmodule_rank(&[f("1/2"), f("1/3")]), 1);
        let a = f("2*phi-3");
        assert_eq!(rank_prediction(&circle_partition(&f("sqrt2-1")), &a), 4);
        assert_eq!(rank_prediction(&circle_partition(&f("2-phi")), &a), 2);
    }

    #[test]
    fn classes() {
        let a = f("2*phi-3");
        assert_eq!(connection_classes(&circle_partition(&f("0")), &a).unwrap(), 2);
        assert_eq!(connection_classes(&circle_partition(&f("sqrt2-1")), &a).unwrap(), 4);
    }

    #[test]
    fn fallback_agrees_with_exact() {
        let part = circle_partition(&f("sqrt2-1"));
        let a = f("2*phi-3");
        let y0 = f("1/4");
        let rc = code_orbit(&y0, &part, &a, 300).unwrap();
        for (k, l) in rc.word.iter().enumerate() {
            let y = (&y0 + &(&a * &FieldNumber::from_integer(k as i64))).reduce_mod1();
            assert_eq!(part.locate(&y), Some(*l));
        }
    }

    #[test]
    fn s_zero_law() {
        let rc = circle_coding(&f("0"), &f("1/2"), 30).unwrap();
        let (_, law) = coding_complexity(&rc, 30).unwrap();
        assert_eq!((law.slope, law.intercept, law.from), (2, 1, 0));
    }
}
