use cubeword::acceptance;
use cubeword::billiard::{self, BilliardError, Direction, Letter, StartPoint};
use cubeword::directional::{self, DirectionalError};
use cubeword::exactnum::NumError;
use cubeword::returns::{self, ReturnsError};
use cubeword::rotation::{self, RotationError};
use cubeword::words::{self, CassaigneOutcome, WordsError};
use cubeword::{FieldNumber, Rational};

use crate::report::{field, Cell, Report, Table};
use crate::{Cli, Command, Failure};

fn invalid(reason: &str, message: impl ToString) -> Failure {
    Failure::Invalid {
        reason: reason.to_string(),
        message: message.to_string(),
    }
}

impl From<NumError> for Failure {
    fn from(e: NumError) -> Self {
        invalid("parse", e)
    }
}

impl From<BilliardError> for Failure {
    fn from(e: BilliardError) -> Self {
        invalid(e.code(), e)
    }
}

impl From<WordsError> for Failure {
    fn from(e: WordsError) -> Self {
        let reason = match e {
            WordsError::Unstable { .. } => "unstable",
            WordsError::TooShort { .. } => "too_short",
            WordsError::BadSymbol(_) => "bad_symbol",
            WordsError::OutOfRange { .. } => "out_of_range",
        };
        invalid(reason, e)
    }
}

impl From<RotationError> for Failure {
    fn from(e: RotationError) -> Self {
        match e {
            RotationError::Words(w) => w.into(),
            RotationError::HitsCut { .. } => invalid("hits_cut", e),
            RotationError::Degenerate(_) => invalid("rational_angle", e),
            _ => invalid("rotation", e),
        }
    }
}

impl From<ReturnsError> for Failure {
    fn from(e: ReturnsError) -> Self {
        match e {
            ReturnsError::Billiard(b) => b.into(),
            ReturnsError::Rotation(r) => r.into(),
            ReturnsError::OnBoundary(_) => invalid("on_boundary", e),
            ReturnsError::OutsideFace { .. } => invalid("outside_face", e),
            ReturnsError::NotOnFace => invalid("not_on_face", e),
            ReturnsError::InsufficientOccurrences { .. } => invalid("insufficient_occurrences", e),
        }
    }
}

impl From<DirectionalError> for Failure {
    fn from(e: DirectionalError) -> Self {
        match e {
            DirectionalError::Billiard(b) => b.into(),
            DirectionalError::Words(w) => w.into(),
            DirectionalError::NoRepresentative(_) => invalid("no_valid_start", e),
        }
    }
}

fn parse_number(s: &str) -> Result<FieldNumber, Failure> {
    Ok(s.parse::<FieldNumber>()?)
}

pub fn parse_point(s: &str) -> Result<StartPoint, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(invalid("parse", format!("expected three comma-separated coordinates, got {s:?}")));
    }
    let c: Vec<FieldNumber> = parts.iter().map(|p| parse_number(p)).collect::<Result<_, _>>()?;
    let [x, y, z]: [FieldNumber; 3] = c.try_into().expect("three parts");
    Ok(StartPoint::new(x, y, z)?)
}

pub fn parse_r(s: &str) -> Result<Rational, Failure> {
    let r = parse_number(s)?
        .to_rational()
        .ok_or_else(|| invalid("parse", format!("r = {s} is not rational")))?;
    if r <= Rational::from_integer(0.into()) {
        return Err(invalid("non_positive_direction", format!("r = {s}")));
    }
    Ok(r)
}

fn usize_of(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Trace { m, r, letters } => trace(m, r, usize_of(*letters)),
        Command::Complexity { m, r, n_max, prefix } => {
            complexity(m, r, usize_of(*n_max), prefix.map(usize_of))
        }
        Command::Returns { m, r, k } => return_table(m, r, usize_of(*k)),
        Command::Rotation { s, y0, n_max, letters } => {
            rotation_report(s, y0.as_deref(), usize_of(*n_max), usize_of(*letters))
        }
        Command::Directional { samples, n_max, prefix } => {
            directional_report(usize_of(*samples), usize_of(*n_max), usize_of(*prefix), cli.seed)
        }
        Command::Verify { suite } => verify(suite),
    }
}

fn trace(m: &str, r: &str, letters: usize) -> Result<Report, Failure> {
    let m = parse_point(m)?;
    let dir = Direction::family(&parse_r(r)?)?;
    let w = billiard::trace(&m, &dir, letters)?;
    let mut t = Table::new("crossings", &["i", "letter", "time", "time_decimal"]);
    for (i, (l, time)) in w.letters.iter().zip(&w.crossing_times).enumerate() {
        let [exact, dec] = field(time);
        t.push(vec![i.into(), l.as_char().to_string().into(), exact, dec]);
    }
    let mut rep = Report::default();
    rep.table(t);
    rep.fact("start", m.to_string());
    rep.fact("word", w.as_string());
    Ok(rep)
}

fn complexity(m: &str, r: &str, n_max: usize, prefix: Option<usize>) -> Result<Report, Failure> {
    let m = parse_point(m)?;
    let dir = Direction::family(&parse_r(r)?)?;
    let len = prefix.unwrap_or(2 * words::certified_prefix_len(n_max));
    let w = billiard::word_codes(&billiard::trace_letters(&m, &dir, len)?);
    let profile = words::complexity(&w, n_max)?;
    let mut t = Table::new("complexity", &["n", "p", "s", "stable"]);
    for n in 0..=n_max {
        let s = profile.s.get(n).map_or(Cell::Empty, |v| Cell::Int(*v));
        t.push(vec![n.into(), profile.p(n).into(), s, profile.stable[n].into()]);
    }
    let mut c = Table::new("cassaigne", &["n", "second_difference", "bispecial_sum", "ok"]);
    for n in 0..n_max.saturating_sub(1) {
        let Ok(outcome) = words::cassaigne_check(&profile, n) else { continue };
        let (d, sum) = match &outcome {
            CassaigneOutcome::Ok { second_difference } => (*second_difference, *second_difference),
            CassaigneOutcome::Mismatch {
                second_difference,
                bispecial_sum,
                ..
            } => (*second_difference, *bispecial_sum),
        };
        c.push(vec![n.into(), d.into(), sum.into(), outcome.is_ok().into()]);
    }
    let mut rep = Report::default();
    rep.table(t);
    rep.table(c);
    rep.fact("start", m.to_string());
    rep.fact("letters", len);
    match profile.affine_law() {
        Some(law) if profile.first_unstable().is_none() => rep.fact("law", law.to_string()),
        _ => rep.fact("law", Cell::Empty),
    }
    Ok(rep)
}

fn return_table(m: &str, r: &str, k: usize) -> Result<Report, Failure> {
    let m = parse_point(m)?;
    let r = parse_r(r)?;
    let dir = Direction::family(&r)?;
    let mut len = 4 * (k + 2);
    let rw = loop {
        let w = billiard::trace_letters(&m, &dir, len)?;
        match returns::return_words(&w, Letter::A) {
            Ok(rw) if rw.words.len() >= k => break rw,
            _ if len > 1 << 26 => return Err(invalid("insufficient_occurrences", "too few returns of a")),
            _ => len *= 2,
        }
    };
    let mut t = Table::new("returns", &["k", "observed", "predicted", "match"]);
    let mut mismatches = 0usize;
    for (i, obs) in rw.words.iter().take(k).enumerate() {
        let predicted = match returns::kth_return_prediction(&m, i as u64, &r) {
            Ok(p) => billiard::word_to_string(&p.word),
            Err(ReturnsError::OnBoundary(curve)) => format!("boundary:{curve:?}").to_lowercase(),
            Err(e) => return Err(e.into()),
        };
        let observed = billiard::word_to_string(obs);
        let ok = observed == predicted;
        mismatches += usize::from(!ok);
        t.push(vec![i.into(), observed.into(), predicted.into(), ok.into()]);
    }
    let mut rep = Report::default();
    rep.table(t);
    rep.fact("start", m.to_string());
    rep.fact("mismatches", mismatches);
    Ok(rep)
}

fn rotation_report(s: &str, y0: Option<&str>, n_max: usize, letters: usize) -> Result<Report, Failure> {
    let s = parse_number(s)?.reduce_mod1();
    let y0 = match y0 {
        Some(y) => parse_number(y)?,
        None => directional::representative(&s)?.y().clone(),
    };
    let part = returns::circle_partition(&s);
    let alpha = returns::rotation_angle(&Rational::new(1.into(), 2.into()));
    let needed = letters.max(words::certified_prefix_len(n_max));
    let rc = rotation::code_orbit(&y0, &part, &alpha, needed)?;
    let (profile, law) = rotation::coding_complexity(&rc, n_max)?;

    let mut arcs = Table::new("arcs", &["start", "start_decimal", "end", "end_decimal", "label"]);
    for a in &part.arcs {
        let [s0, s1] = field(&a.start);
        let [e0, e1] = field(&a.end);
        arcs.push(vec![s0, s1, e0, e1, a.label.to_string().into()]);
    }
    let mut p = Table::new("complexity", &["n", "p", "s", "stable"]);
    for n in 0..=n_max {
        let sv = profile.s.get(n).map_or(Cell::Empty, |v| Cell::Int(*v));
        p.push(vec![n.into(), profile.p(n).into(), sv, profile.stable[n].into()]);
    }
    let orbit: Vec<String> = rc.word.iter().take(letters).map(|l| l.to_string()).collect();
    let mut rep = Report::default();
    rep.table(arcs);
    rep.table(p);
    rep.fact("s", s.to_string());
    rep.fact("y0", y0.to_string());
    rep.fact("alpha", alpha.to_string());
    rep.fact("k", part.k);
    rep.fact("orbit", orbit.join(" "));
    rep.fact("rank_prediction", rotation::rank_prediction(&part, &alpha));
    rep.fact("connection_classes", rotation::connection_classes(&part, &alpha)?);
    rep.fact("measured_law", law.to_string());
    rep.fact("measured_slope", law.slope);
    Ok(rep)
}

fn directional_report(samples: usize, n_max: usize, prefix: usize, seed: u64) -> Result<Report, Failure> {
    let schedule = directional::sample_schedule(samples, seed);
    let census = directional::census(&schedule, n_max, prefix);
    let union = directional::UnionComplexity::from_table(&census.union_p, census.samples.len(), census.skipped.clone());
    let mut classes = Table::new(
        "classes",
        &["class", "k", "law", "samples", "laws_agree", "same_s_agree"],
    );
    for c in census.classes.values() {
        classes.push(vec![
            c.class.name().into(),
            c.k.into(),
            c.law.map_or(Cell::Empty, |l| l.to_string().into()),
            c.s_values.len().into(),
            c.laws_agree.into(),
            c.same_s_agree.map_or(Cell::Empty, Cell::Bool),
        ]);
    }
    let mut table = Table::new("union", &["n", "p", "ratio", "s_ratio"]);
    for row in union.rows.iter().skip(1) {
        table.push(vec![
            row.n.into(),
            row.p.into(),
            Cell::Float(row.ratio, 6),
            row.s_ratio.map_or(Cell::Empty, |v| Cell::Float(v, 6)),
        ]);
    }
    let mut skipped = Table::new("skipped", &["s", "reason"]);
    for (s, why) in &census.skipped {
        skipped.push(vec![s.clone().into(), why.clone().into()]);
    }
    let mut rep = Report::default();
    rep.table(classes);
    rep.table(table);
    rep.table(skipped);
    rep.fact("samples", census.samples.len());
    rep.fact("prefix", prefix);
    rep.fact("seed", seed.to_string());
    rep.fact("target_ratio", Cell::Float(union.target_ratio, 6));
    rep.fact("target_s_ratio", Cell::Float(union.target_s_ratio, 6));
    Ok(rep)
}

fn verify(suite: &str) -> Result<Report, Failure> {
    let ids: Vec<u8> = if suite == "all" {
        acceptance::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        suite
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|id| acceptance::CRITERIA.iter().any(|c| c.0 == *id))
                    .ok_or_else(|| invalid("parse", format!("unknown criterion {p:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut t = Table::new("criteria", &["criterion", "name", "status", "elapsed_ms", "budget_ms", "detail"]);
    let mut failed = 0usize;
    for id in ids {
        let r = acceptance::run(id).expect("known id");
        eprintln!("{}", r.line());
        failed += usize::from(!r.passed);
        t.push(vec![
            Cell::Int(r.id.into()),
            r.name.into(),
            if r.passed { "PASS" } else { "FAIL" }.into(),
            Cell::Int(r.elapsed_ms as i64),
            Cell::Int(r.budget_ms as i64),
            r.detail.into(),
        ]);
    }
    let mut rep = Report::default();
    rep.table(t);
    rep.fact("failed", failed);
    if failed > 0 {
        Err(Failure::Acceptance(rep))
    } else {
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parsing() {
        let m = parse_point("0, 1/2, 1/2").unwrap();
        assert_eq!(m.y().to_string(), "1/2");
        assert!(matches!(parse_point("0,1/2"), Err(Failure::Invalid { .. })));
        assert!(matches!(
            parse_point("0,0,2-phi").and_then(|m| Ok(billiard::validate(&m, &Direction::theta0(), 1)?)),
            Err(Failure::Invalid { reason, .. }) if reason == "degenerate_start"
        ));
        assert!(matches!(parse_r("-1"), Err(Failure::Invalid { .. })));
        assert!(matches!(parse_r("phi"), Err(Failure::Invalid { .. })));
    }
}
