//! Factor complexity, special factors and Cassaigne's second-difference identity.
//!
//! Words are slices of small symbol codes (`0..ALPHABET_MAX`). The factor index
//! is a pair of suffix automata, one on the word and one on its reversal: right
//! extensions are read from outgoing transitions of the forward automaton, left
//! extensions from the reversed one.

use std::collections::HashSet;

use thiserror::Error;

pub const ALPHABET_MAX: usize = 8;
const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("p({n}) changed when the prefix was doubled: {short} -> {long}")]
    Unstable { n: usize, short: u64, long: u64 },
    #[error("word of length {len} is too short for lengths up to {n_max}")]
    TooShort { len: usize, n_max: usize },
    #[error("symbol {0} outside the supported alphabet")]
    BadSymbol(u8),
    #[error("length {n} is outside the analysed range 0..={max}")]
    OutOfRange { n: usize, max: usize },
}

#[derive(Debug, Clone)]
struct State {
    len: u32,
    link: u32,
    first_end: u32,
    next: [u32; ALPHABET_MAX],
}

/// Suffix automaton of a word over at most [`ALPHABET_MAX`] symbols.
#[derive(Debug, Clone)]
struct SuffixAutomaton {
    states: Vec<State>,
}

impl SuffixAutomaton {
    fn build(word: &[u8]) -> Self {
        let mut states = Vec::with_capacity(2 * word.len() + 1);
        states.push(State {
            len: 0,
            link: NONE,
            first_end: 0,
            next: [NONE; ALPHABET_MAX],
        });
        let mut last = 0u32;
        for (pos, &c) in word.iter().enumerate() {
            let c = c as usize;
            let cur = states.len() as u32;
            states.push(State {
                len: states[last as usize].len + 1,
                link: 0,
                first_end: pos as u32,
                next: [NONE; ALPHABET_MAX],
            });
            let mut p = last;
            while p != NONE && states[p as usize].next[c] == NONE {
                states[p as usize].next[c] = cur;
                p = states[p as usize].link;
            }
            if p != NONE {
                let q = states[p as usize].next[c];
                if states[p as usize].len + 1 == states[q as usize].len {
                    states[cur as usize].link = q;
                } else {
                    let clone = states.len() as u32;
                    let mut st = states[q as usize].clone();
                    st.len = states[p as usize].len + 1;
                    states.push(st);
                    while p != NONE && states[p as usize].next[c] == q {
                        states[p as usize].next[c] = clone;
                        p = states[p as usize].link;
                    }
                    states[q as usize].link = clone;
                    states[cur as usize].link = clone;
                }
            }
            last = cur;
        }
        SuffixAutomaton { states }
    }

    fn walk(&self, v: &[u8]) -> Option<u32> {
        let mut s = 0u32;
        for &c in v {
            s = self.states[s as usize].next[c as usize];
            if s == NONE {
                return None;
            }
        }
        Some(s)
    }

    fn out_degree(&self, s: u32) -> usize {
        self.states[s as usize].next.iter().filter(|&&t| t != NONE).count()
    }

    fn out_letters(&self, s: u32) -> impl Iterator<Item = u8> + '_ {
        self.states[s as usize]
            .next
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != NONE)
            .map(|(c, _)| c as u8)
    }

    /// Length range `(lo, hi]` of the factors represented by a state.
    fn range(&self, s: usize) -> (usize, usize) {
        let st = &self.states[s];
        let lo = if st.link == NONE { 0 } else { self.states[st.link as usize].len as usize };
        (lo, st.len as usize)
    }
}

/// Index of the distinct factors of one finite word.
#[derive(Debug, Clone)]
pub struct FactorIndex {
    word: Vec<u8>,
    rev: Vec<u8>,
    forward: SuffixAutomaton,
    backward: SuffixAutomaton,
}

impl FactorIndex {
    pub fn new(word: &[u8]) -> Result<Self, WordsError> {
        if let Some(&bad) = word.iter().find(|&&c| c as usize >= ALPHABET_MAX) {
            return Err(WordsError::BadSymbol(bad));
        }
        let rev: Vec<u8> = word.iter().rev().copied().collect();
        Ok(FactorIndex {
            forward: SuffixAutomaton::build(word),
            backward: SuffixAutomaton::build(&rev),
            word: word.to_vec(),
            rev,
        })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `p(n)` for `n = 0..=n_max`.
    pub fn counts(&self, n_max: usize) -> Vec<u64> {
        let mut diff = vec![0i64; n_max + 2];
        for s in 1..self.forward.states.len() {
            let (lo, hi) = self.forward.range(s);
            if lo < n_max {
                diff[lo + 1] += 1;
                diff[hi.min(n_max) + 1] -= 1;
            }
        }
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(1);
        let mut acc = 0i64;
        for d in diff.iter().take(n_max + 1).skip(1) {
            acc += d;
            out.push(acc as u64);
        }
        out
    }

    pub fn count(&self, n: usize) -> u64 {
        self.counts(n)[n]
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.forward.walk(v).is_some()
    }

    /// All distinct factors of lengths `1..=n_max`, grouped by length.
    pub fn factors_up_to(&self, n_max: usize) -> Vec<Vec<Vec<u8>>> {
        let mut out = vec![Vec::new(); n_max + 1];
        out[0].push(Vec::new());
        for s in 1..self.forward.states.len() {
            let (lo, hi) = self.forward.range(s);
            let end = self.forward.states[s].first_end as usize;
            for n in (lo + 1)..=hi.min(n_max) {
                out[n].push(self.word[end + 1 - n..=end].to_vec());
            }
        }
        for v in out.iter_mut() {
            v.sort();
        }
        out
    }

    pub fn factors(&self, n: usize) -> Vec<Vec<u8>> {
        self.factors_up_to(n).swap_remove(n)
    }

    /// Letters `b` with `v·b` a factor.
    pub fn right_extensions(&self, v: &[u8]) -> Vec<u8> {
        match self.forward.walk(v) {
            Some(s) => self.forward.out_letters(s).collect(),
            None => Vec::new(),
        }
    }

    /// Letters `a` with `a·v` a factor.
    pub fn left_extensions(&self, v: &[u8]) -> Vec<u8> {
        let r: Vec<u8> = v.iter().rev().copied().collect();
        match self.backward.walk(&r) {
            Some(s) => self.backward.out_letters(s).collect(),
            None => Vec::new(),
        }
    }

    /// `(m_l, m_r, m_b)` for a factor `v`.
    pub fn multiplicities(&self, v: &[u8]) -> (usize, usize, usize) {
        let left = self.left_extensions(v);
        let m_r = self.forward.walk(v).map_or(0, |s| self.forward.out_degree(s));
        let mut av = Vec::with_capacity(v.len() + 1);
        let mut m_b = 0;
        for &a in &left {
            av.clear();
            av.push(a);
            av.extend_from_slice(v);
            m_b += self.forward.walk(&av).map_or(0, |s| self.forward.out_degree(s));
        }
        (left.len(), m_r, m_b)
    }

    fn special_from(aut: &SuffixAutomaton, text: &[u8], n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for s in 0..aut.states.len() {
            let (lo, hi) = aut.range(s);
            let in_range = if s == 0 { n == 0 } else { lo < n && n <= hi };
            if in_range && aut.out_degree(s as u32) >= 2 {
                let end = aut.states[s].first_end as usize;
                out.push(if n == 0 { Vec::new() } else { text[end + 1 - n..=end].to_vec() });
            }
        }
        out
    }

    pub fn right_special(&self, n: usize) -> Vec<Vec<u8>> {
        let mut v = Self::special_from(&self.forward, &self.word, n);
        v.sort();
        v
    }

    pub fn left_special(&self, n: usize) -> Vec<Vec<u8>> {
        let mut v: Vec<Vec<u8>> = Self::special_from(&self.backward, &self.rev, n)
            .into_iter()
            .map(|mut f| {
                f.reverse();
                f
            })
            .collect();
        v.sort();
        v
    }
}

/// A bispecial factor with its extension multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Bispecial {
    pub factor: Vec<u8>,
    pub m_l: usize,
    pub m_r: usize,
    pub m_b: usize,
    /// `m_b − m_r − m_l + 1`
    pub index: i64,
}

/// Special factors of one length.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SpecialFactors {
    pub n: usize,
    pub left_special: Vec<Vec<u8>>,
    pub right_special: Vec<Vec<u8>>,
    pub bispecial: Vec<Bispecial>,
}

impl SpecialFactors {
    pub fn bilateral_sum(&self) -> i64 {
        self.bispecial.iter().map(|b| b.index).sum()
    }
}

pub fn special_factors_of(index: &FactorIndex, n: usize) -> SpecialFactors {
    let left_special = index.left_special(n);
    let right_special = index.right_special(n);
    let left: HashSet<&Vec<u8>> = left_special.iter().collect();
    let bispecial = right_special
        .iter()
        .filter(|v| left.contains(v))
        .map(|v| {
            let (m_l, m_r, m_b) = index.multiplicities(v);
            Bispecial {
                factor: v.clone(),
                m_l,
                m_r,
                m_b,
                index: m_b as i64 - m_r as i64 - m_l as i64 + 1,
            }
        })
        .collect();
    SpecialFactors {
        n,
        left_special,
        right_special,
        bispecial,
    }
}

/// Factor counts of a word, certified against a half-length prefix.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ComplexityProfile {
    /// `p[n]` for `n = 0..=n_max` (with `p[0] = 1`).
    pub p: Vec<u64>,
    /// `s[n] = p[n+1] − p[n]` for `n = 0..n_max`.
    pub s: Vec<i64>,
    /// `stable[n]`: the count on the half-length prefix agrees.
    pub stable: Vec<bool>,
    /// Special factors for `n = 0..=n_max − 2`.
    pub census: Vec<SpecialFactors>,
    pub word_len: usize,
}

impl ComplexityProfile {
    pub fn n_max(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, n: usize) -> u64 {
        self.p[n]
    }

    /// Smallest length whose count is not certified, if any.
    pub fn first_unstable(&self) -> Option<usize> {
        self.stable.iter().position(|&s| !s)
    }

    pub fn require_stable(&self) -> Result<(), WordsError> {
        match self.first_unstable() {
            None => Ok(()),
            Some(n) => Err(WordsError::Unstable {
                n,
                short: 0,
                long: self.p[n],
            }),
        }
    }

    /// Fit of the tail of `p` by an affine law, see [`AffineLaw`].
    pub fn affine_law(&self) -> Option<AffineLaw> {
        AffineLaw::fit(&self.p)
    }
}

/// `p(n) = slope·n + intercept` for every analysed `n ≥ from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct AffineLaw {
    pub slope: i64,
    pub intercept: i64,
    pub from: usize,
}

impl AffineLaw {
    /// Fits the law through the last two values and extends it backwards as far as
    /// it keeps holding. `p[0]` counts the empty word.
    pub fn fit(p: &[u64]) -> Option<AffineLaw> {
        let n = p.len().checked_sub(1)?;
        if n < 2 {
            return None;
        }
        let slope = p[n] as i64 - p[n - 1] as i64;
        let intercept = p[n] as i64 - slope * n as i64;
        let holds = |k: usize| p[k] as i64 == slope * k as i64 + intercept;
        let mut from = n;
        while from > 0 && holds(from - 1) {
            from -= 1;
        }
        Some(AffineLaw {
            slope,
            intercept,
            from,
        })
    }

    pub fn eval(&self, n: usize) -> i64 {
        self.slope * n as i64 + self.intercept
    }
}

impl std::fmt::Display for AffineLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.intercept < 0 { '-' } else { '+' };
        write!(
            f,
            "{}n{}{} (n>={})",
            self.slope,
            sign,
            self.intercept.abs(),
            self.from
        )
    }
}

/// Prefix length used on each side of the doubling certificate.
pub fn certified_prefix_len(n_max: usize) -> usize {
    (200 * n_max).max(10_000)
}

/// Complexity profile of `w` for lengths up to `n_max`.
///
/// Counts are computed on `w` and on its first half; a length is marked stable
/// when both agree. Special factors are measured in the whole word.
pub fn complexity(w: &[u8], n_max: usize) -> Result<ComplexityProfile, WordsError> {
    if w.len() < 2 * (n_max + 2) {
        return Err(WordsError::TooShort { len: w.len(), n_max });
    }
    let full = FactorIndex::new(w)?;
    let half = FactorIndex::new(&w[..w.len() / 2])?;
    Ok(profile_from(&full, &half, n_max))
}

pub fn profile_from(full: &FactorIndex, half: &FactorIndex, n_max: usize) -> ComplexityProfile {
    let p = full.counts(n_max);
    let p_half = half.counts(n_max);
    let stable = p.iter().zip(&p_half).map(|(a, b)| a == b).collect();
    let s = p.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let census = (0..=n_max.saturating_sub(2))
        .map(|n| special_factors_of(full, n))
        .collect();
    ComplexityProfile {
        p,
        s,
        stable,
        census,
        word_len: full.len(),
    }
}

/// Special factors of length `n`, requiring certified counts at `n` and `n + 2`.
pub fn special_factors(profile: &ComplexityProfile, n: usize) -> Result<&SpecialFactors, WordsError> {
    let census = profile.census.get(n).ok_or(WordsError::OutOfRange {
        n,
        max: profile.census.len().saturating_sub(1),
    })?;
    for k in [n, n + 1, n + 2] {
        if !profile.stable[k] {
            return Err(WordsError::Unstable {
                n: k,
                short: 0,
                long: profile.p[k],
            });
        }
    }
    Ok(census)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CassaigneOutcome {
    Ok { second_difference: i64 },
    Mismatch {
        second_difference: i64,
        bispecial_sum: i64,
        bispecial: Vec<Bispecial>,
    },
}

impl CassaigneOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, CassaigneOutcome::Ok { .. })
    }
}

/// Checks `s(n+1) − s(n) = Σ_{v bispecial, |v| = n} i(v)` at one length.
pub fn cassaigne_check(profile: &ComplexityProfile, n: usize) -> Result<CassaigneOutcome, WordsError> {
    let census = special_factors(profile, n)?;
    let second_difference = profile.s[n + 1] - profile.s[n];
    let sum = census.bilateral_sum();
    Ok(if sum == second_difference {
        CassaigneOutcome::Ok { second_difference }
    } else {
        CassaigneOutcome::Mismatch {
            second_difference,
            bispecial_sum: sum,
            bispecial: census.bispecial.clone(),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sturmian {
    Yes,
    No { witness: usize, p: u64 },
}

/// Whether the certified counts satisfy `p(n) = n + 1` for `1 ≤ n ≤ n_max`.
pub fn is_sturmian(w: &[u8], n_max: usize) -> Result<Sturmian, WordsError> {
    let profile = complexity(w, n_max)?;
    for n in 1..=n_max {
        if !profile.stable[n] {
            return Err(WordsError::Unstable {
                n,
                short: 0,
                long: profile.p[n],
            });
        }
        if profile.p[n] != n as u64 + 1 {
            return Ok(Sturmian::No {
                witness: n,
                p: profile.p[n],
            });
        }
    }
    Ok(Sturmian::Yes)
}

/// Fibonacci word over `{0, 1}`: the fixed point of `0 → 01, 1 → 0`.
pub fn fibonacci_word(len: usize) -> Vec<u8> {
    let mut w = vec![0u8];
    while w.len() < len {
        w = w
            .iter()
            .flat_map(|&c| if c == 0 { vec![0, 1] } else { vec![0] })
            .collect();
    }
    w.truncate(len);
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_counts(w: &[u8], n_max: usize) -> Vec<u64> {
        (0..=n_max)
            .map(|n| {
                if n == 0 {
                    return 1;
                }
                w.windows(n).collect::<HashSet<_>>().len() as u64
            })
            .collect()
    }

    #[test]
    fn fibonacci_is_sturmian() {
        let w = fibonacci_word(20_000);
        let p = complexity(&w, 30).unwrap();
        assert_eq!(p.p[4], 5);
        for n in 1..=30 {
            assert_eq!(p.p[n], n as u64 + 1);
            assert_eq!(p.census[n.min(28)].right_special.len(), 1);
        }
        for n in 0..=28 {
            let c = cassaigne_check(&p, n).unwrap();
            assert_eq!(c, CassaigneOutcome::Ok { second_difference: 0 });
            assert!(p.census[n].bispecial.iter().all(|b| b.index == 0));
        }
        assert_eq!(is_sturmian(&w, 30).unwrap(), Sturmian::Yes);
    }

    #[test]
    fn periodic_words() {
        let w: Vec<u8> = (0..3000).map(|i| 1 + (i % 2) as u8).collect();
        assert_eq!(is_sturmian(&w, 10).unwrap(), Sturmian::No { witness: 2, p: 2 });
        let abc: Vec<u8> = (0..3000).map(|i| (i % 3) as u8).collect();
        let p = complexity(&abc, 40).unwrap();
        for n in 3..=38 {
            assert_eq!(p.s[n], 0);
            assert!(cassaigne_check(&p, n).unwrap().is_ok());
        }
    }

    #[test]
    fn counts_match_naive_oracle() {
        let mut x = 12345u64;
        let w: Vec<u8> = (0..3000)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((x >> 33) % 3) as u8
            })
            .collect();
        let idx = FactorIndex::new(&w).unwrap();
        assert_eq!(idx.counts(12), naive_counts(&w, 12));
        let fs = idx.factors_up_to(5);
        for n in 1..=5 {
            let naive: HashSet<&[u8]> = w.windows(n).collect();
            assert_eq!(fs[n].len(), naive.len());
            assert!(fs[n].iter().all(|f| naive.contains(f.as_slice())));
        }
    }

    #[test]
    fn extensions_and_specials() {
        // "abcab" as codes
        let w = [0u8, 1, 2, 0, 1, 1];
        let idx = FactorIndex::new(&w).unwrap();
        assert_eq!(idx.right_extensions(&[0, 1]), vec![1, 2]);
        assert_eq!(idx.left_extensions(&[1]), vec![0, 1]);
        assert_eq!(idx.right_special(2), vec![vec![0, 1]]);
        assert_eq!(idx.left_special(1), vec![vec![1]]);
        assert_eq!(idx.right_special(0), vec![Vec::<u8>::new()]);
        assert_eq!(idx.multiplicities(&[1]), (2, 2, 2));
    }

    #[test]
    fn unstable_prefix_is_reported() {
        let mut w = vec![0u8; 100];
        w.extend(std::iter::repeat_n(1u8, 100));
        let p = complexity(&w, 5).unwrap();
        assert!(p.require_stable().is_err());
        assert!(matches!(is_sturmian(&w, 5), Err(WordsError::Unstable { .. })));
        assert!(matches!(complexity(&w[..5], 5), Err(WordsError::TooShort { .. })));
    }

    #[test]
    fn affine_fit() {
        let p = [1u64, 3, 7, 9, 11, 13, 15];
        let law = AffineLaw::fit(&p).unwrap();
        assert_eq!((law.slope, law.intercept, law.from), (2, 3, 2));
        let q = [1u64, 3, 5, 7, 9];
        assert_eq!(AffineLaw::fit(&q).unwrap().from, 0);
        assert_eq!(law.to_string(), "2n+3 (n>=2)");
    }
}
