//! One-line permutations of `[n]` and their structural predicates.
//!
//! Positions and values are 1-based everywhere in the public API.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::caps::{CapExceeded, Caps, StreamKind};

/// Errors from constructing or parsing a [`Permutation`].
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("value {value} at position {position} is outside 1..={n}")]
    OutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },
    #[error("value {value} repeated at position {position}")]
    Repeated { position: usize, value: usize },
    #[error("cannot parse {token:?} at entry {entry}: expected a positive integer")]
    BadToken { entry: usize, token: String },
    #[error(
        "compact digit form only covers n <= 9 (got {len} digits); use comma-separated values"
    )]
    CompactTooLong { len: usize },
}

/// Which up/down pattern a word follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alternation {
    /// `a1 > a2 < a3 > a4 < ...`
    Alternating,
    /// `a1 < a2 > a3 < a4 > ...`
    ReverseAlternating,
}

impl Alternation {
    /// Whether the step from position `i` to `i + 1` (1-based) must descend.
    #[inline]
    pub fn descends_at(self, i: usize) -> bool {
        let odd = i % 2 == 1;
        match self {
            Alternation::Alternating => odd,
            Alternation::ReverseAlternating => !odd,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Alternation::Alternating => Alternation::ReverseAlternating,
            Alternation::ReverseAlternating => Alternation::Alternating,
        }
    }
}

impl fmt::Display for Alternation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alternation::Alternating => "alternating",
            Alternation::ReverseAlternating => "reverse-alternating",
        })
    }
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking that it is a
    /// rearrangement of `1..=n`.
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (idx, &value) in word.iter().enumerate() {
            let position = idx + 1;
            if value == 0 || value > n {
                return Err(PermError::OutOfRange { position, value, n });
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(PermError::Repeated { position, value });
            }
        }
        Ok(Permutation { word })
    }

    /// Caller guarantees `word` is a permutation of `1..=len`.
    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// `p(i)` for `1 <= i <= n`.
    ///
    /// Panics when `i` is out of range.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn is_alternating(&self) -> bool {
        alternation_violation(&self.word, Alternation::Alternating).is_none()
    }

    pub fn is_reverse_alternating(&self) -> bool {
        alternation_violation(&self.word, Alternation::ReverseAlternating).is_none()
    }

    pub fn follows(&self, pattern: Alternation) -> bool {
        alternation_violation(&self.word, pattern).is_none()
    }

    /// Positions `i` with `p(i) = i`, ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        positions(&self.word, |i, v| v == i)
    }

    pub fn fixed_point_count(&self) -> usize {
        fixed_point_count(&self.word)
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_point_count() == 0
    }

    /// Positions `i` with `p(i) >= i`, ascending.
    pub fn weak_excedance_positions(&self) -> Vec<usize> {
        positions(&self.word, |i, v| v >= i)
    }

    /// Positions `i` with `p(i) < i`, ascending.
    pub fn non_excedance_positions(&self) -> Vec<usize> {
        positions(&self.word, |i, v| v < i)
    }

    /// Maps each value `v` to `n + 1 - v`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// `rho . p . rho` with `rho(j) = n + 1 - j`.
    ///
    /// For odd `n` this swaps alternating and reverse-alternating words and
    /// carries fixed points to fixed points.
    pub fn reversal_conjugate(&self) -> Self {
        let n = self.len();
        Permutation {
            word: self.word.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }
}

/// First position `i` (1-based) whose comparison with `i + 1` breaks
/// `pattern`, if any.
pub fn alternation_violation(word: &[usize], pattern: Alternation) -> Option<usize> {
    word.windows(2).enumerate().find_map(|(idx, pair)| {
        let ok = if pattern.descends_at(idx + 1) {
            pair[0] > pair[1]
        } else {
            pair[0] < pair[1]
        };
        (!ok).then_some(idx + 1)
    })
}

#[inline]
pub(crate) fn fixed_point_count(word: &[usize]) -> usize {
    word.iter()
        .enumerate()
        .filter(|&(idx, &v)| v == idx + 1)
        .count()
}

fn positions(word: &[usize], keep: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    word.iter()
        .enumerate()
        .filter(|&(idx, &v)| keep(idx + 1, v))
        .map(|(idx, _)| idx + 1)
        .collect()
}

/// Compact digits when `n <= 9`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
        } else {
            for (idx, v) in self.word.iter().enumerate() {
                if idx > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Accepts `52318674` (at most nine digits) or `5,2,3,1,8,6,7,4`.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let word = if s.is_empty() {
            Vec::new()
        } else if s.contains(',') {
            s.split(',')
                .enumerate()
                .map(|(idx, token)| {
                    let token = token.trim();
                    token.parse::<usize>().map_err(|_| PermError::BadToken {
                        entry: idx + 1,
                        token: token.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            let len = s.chars().count();
            if len > 9 {
                return Err(PermError::CompactTooLong { len });
            }
            s.chars()
                .enumerate()
                .map(|(idx, ch)| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::BadToken {
                            entry: idx + 1,
                            token: ch.to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Permutation::new(word)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    All,
    NoFixedPoints,
    Pattern(Alternation),
}

impl Rule {
    /// May `value` go at 1-based `position` right after `prev`?
    #[inline]
    fn admits(self, position: usize, value: usize, prev: Option<usize>) -> bool {
        match self {
            Rule::All => true,
            Rule::NoFixedPoints => value != position,
            Rule::Pattern(pattern) => match prev {
                None => true,
                Some(prev) if pattern.descends_at(position - 1) => prev > value,
                Some(prev) => prev < value,
            },
        }
    }
}

/// Lexicographic backtracking stream over a class of permutations of `[n]`.
///
/// The stream is restartable (clone it before consuming) and can be split
/// into disjoint partitions by fixing the first letter with
/// [`PermutationStream::with_first`].
#[derive(Clone, Debug)]
pub struct PermutationStream {
    n: usize,
    rule: Rule,
    first: Option<usize>,
    word: Vec<usize>,
    // next candidate value to try at each depth
    cursor: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl PermutationStream {
    fn new(n: usize, rule: Rule) -> Self {
        PermutationStream {
            n,
            rule,
            first: None,
            word: Vec::with_capacity(n),
            cursor: Vec::with_capacity(n),
            used: vec![false; n + 2],
            started: false,
            done: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Restricts the stream to words starting with `first`. Partitioning
    /// on `first = 1..=n` covers the whole stream exactly once.
    pub fn with_first(mut self, first: usize) -> Self {
        assert!(!self.started, "with_first must be applied before iteration");
        self.first = Some(first);
        if first == 0 || first > self.n {
            self.done = true;
        }
        self
    }

    /// Advances without allocating; the returned slice is valid until the
    /// next call.
    pub fn next_word(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
                return Some(&self.word);
            }
            self.cursor.push(self.first.unwrap_or(1));
        } else {
            // resume from the last complete word
            match self.word.pop() {
                Some(v) => self.used[v] = false,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
        loop {
            let depth = self.cursor.len() - 1;
            let position = depth + 1;
            let upper = match (depth, self.first) {
                (0, Some(first)) => first,
                _ => self.n,
            };
            let prev = self.word.last().copied();
            let mut candidate = self.cursor[depth];
            while candidate <= upper
                && (self.used[candidate] || !self.rule.admits(position, candidate, prev))
            {
                candidate += 1;
            }
            if candidate > upper {
                self.cursor.pop();
                match self.word.pop() {
                    Some(v) => self.used[v] = false,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
                continue;
            }
            self.cursor[depth] = candidate + 1;
            self.used[candidate] = true;
            self.word.push(candidate);
            if self.word.len() == self.n {
                return Some(&self.word);
            }
            self.cursor.push(1);
        }
    }
}

impl Iterator for PermutationStream {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.next_word()
            .map(|w| Permutation::from_word_unchecked(w.to_vec()))
    }
}

impl std::iter::FusedIterator for PermutationStream {}

impl Caps {
    /// All `n!` permutations of `[n]`, lexicographic.
    pub fn permutations(&self, n: usize) -> Result<PermutationStream, CapExceeded> {
        self.check(StreamKind::Permutations, n)?;
        Ok(PermutationStream::new(n, Rule::All))
    }

    /// Derangements of `[n]`, lexicographic, pruning `p(i) = i` at each
    /// placement.
    pub fn derangements(&self, n: usize) -> Result<PermutationStream, CapExceeded> {
        self.check(StreamKind::Derangements, n)?;
        Ok(PermutationStream::new(n, Rule::NoFixedPoints))
    }

    /// Words of `[n]` following `pattern`, lexicographic, pruning on the
    /// up/down constraint at each placement.
    pub fn alternating(
        &self,
        n: usize,
        pattern: Alternation,
    ) -> Result<PermutationStream, CapExceeded> {
        self.check(StreamKind::Alternating, n)?;
        Ok(PermutationStream::new(n, Rule::Pattern(pattern)))
    }
}

/// [`Caps::permutations`] with default caps.
pub fn enumerate_permutations(n: usize) -> Result<PermutationStream, CapExceeded> {
    Caps::default().permutations(n)
}

/// [`Caps::derangements`] with default caps.
pub fn enumerate_derangements(n: usize) -> Result<PermutationStream, CapExceeded> {
    Caps::default().derangements(n)
}

/// [`Caps::alternating`] with default caps.
pub fn enumerate_alternating(
    n: usize,
    pattern: Alternation,
) -> Result<PermutationStream, CapExceeded> {
    Caps::default().alternating(n, pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn alternation_examples() {
        assert!(p("52318674").is_alternating());
        assert!(!p("12").is_alternating());
        assert!(p("21").is_alternating());
        assert!(p("4231").is_alternating());
        assert!(!p("21").is_reverse_alternating());
        assert!(p("12").is_reverse_alternating());
        assert!(p("1324").is_reverse_alternating());
        assert!(!p("52318674").is_reverse_alternating());
        for short in [Permutation::identity(0), Permutation::identity(1)] {
            assert!(short.is_alternating() && short.is_reverse_alternating());
        }
        assert_eq!(
            alternation_violation(&[1, 2, 3, 4, 5], Alternation::Alternating),
            Some(1)
        );
        assert_eq!(
            alternation_violation(&[2, 1, 3, 4], Alternation::Alternating),
            Some(3)
        );
    }

    #[test]
    fn fixed_points_and_excedances() {
        assert_eq!(p("52318674").fixed_points(), vec![2, 3, 6, 7]);
        assert_eq!(p("4231").fixed_points(), vec![2, 3]);
        assert_eq!(Permutation::identity(5).fixed_points(), vec![1, 2, 3, 4, 5]);
        assert!(p("3142").is_derangement());
        assert!(p("21").is_derangement());
        assert!(!p("1").is_derangement());
        assert!(Permutation::identity(0).is_derangement());
        assert_eq!(p("74836215").weak_excedance_positions(), vec![1, 2, 3, 5]);
        assert_eq!(p("74836215").non_excedance_positions(), vec![4, 6, 7, 8]);
        assert_eq!(p("21").weak_excedance_positions(), vec![1]);
    }

    #[test]
    fn reversal_conjugation() {
        assert_eq!(p("21").reversal_conjugate(), p("21"));
        assert_eq!(p("213").reversal_conjugate(), p("132"));
        assert!(p("213").is_alternating());
        assert!(p("132").is_reverse_alternating());
    }

    #[test]
    fn text_form() {
        assert_eq!(p("5,2,3,1,8,6,7,4"), p("52318674"));
        assert_eq!(p("52318674").to_string(), "52318674");
        let ten = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(ten.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(ten.to_string().parse::<Permutation>().unwrap(), ten);
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::identity(0));
        assert_eq!(
            "1234567891".parse::<Permutation>(),
            Err(PermError::CompactTooLong { len: 10 })
        );
        assert_eq!(
            "1,x".parse::<Permutation>(),
            Err(PermError::BadToken {
                entry: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            "122".parse::<Permutation>(),
            Err(PermError::Repeated {
                position: 3,
                value: 2
            })
        );
        assert!(matches!(
            "13".parse::<Permutation>(),
            Err(PermError::OutOfRange { position: 2, .. })
        ));
    }

    #[test]
    fn stream_examples() {
        let all: Vec<_> = enumerate_permutations(0).unwrap().collect();
        assert_eq!(all, vec![Permutation::identity(0)]);
        let s3: Vec<String> = enumerate_permutations(3)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(enumerate_permutations(4).unwrap().count(), 24);

        let d2: Vec<_> = enumerate_derangements(2).unwrap().collect();
        assert_eq!(d2, vec![p("21")]);
        let d3: Vec<_> = enumerate_derangements(3).unwrap().collect();
        assert_eq!(d3, vec![p("231"), p("312")]);
        assert_eq!(enumerate_derangements(4).unwrap().count(), 9);
        assert_eq!(enumerate_derangements(1).unwrap().count(), 0);
        assert_eq!(enumerate_derangements(0).unwrap().count(), 1);

        assert_eq!(
            enumerate_alternating(4, Alternation::Alternating)
                .unwrap()
                .count(),
            5
        );
        assert_eq!(
            enumerate_alternating(4, Alternation::ReverseAlternating)
                .unwrap()
                .count(),
            5
        );
        assert_eq!(
            enumerate_alternating(1, Alternation::Alternating)
                .unwrap()
                .count(),
            1
        );
    }

    #[test]
    fn caps_are_enforced() {
        assert!(enumerate_permutations(13).is_err());
        assert!(enumerate_derangements(13).is_err());
        assert!(enumerate_alternating(15, Alternation::Alternating).is_err());
        assert!(enumerate_alternating(14, Alternation::Alternating).is_ok());
        let tight = Caps {
            permutations: 3,
            ..Caps::default()
        };
        assert_eq!(
            tight.permutations(4).unwrap_err(),
            CapExceeded {
                kind: StreamKind::Permutations,
                n: 4,
                cap: 3
            }
        );
    }

    #[test]
    fn prefix_partitions_cover_stream() {
        for n in 0..=7 {
            let whole: Vec<_> = enumerate_alternating(n, Alternation::ReverseAlternating)
                .unwrap()
                .collect();
            let parts: Vec<_> = (1..=n)
                .flat_map(|first| {
                    enumerate_alternating(n, Alternation::ReverseAlternating)
                        .unwrap()
                        .with_first(first)
                })
                .collect();
            if n == 0 {
                assert!(parts.is_empty());
            } else {
                assert_eq!(whole, parts);
            }
        }
        assert_eq!(enumerate_permutations(5).unwrap().with_first(6).count(), 0);
    }

    // Properties checked exhaustively rather than sampled: the ranges are
    // small enough to cover every permutation.
    #[test]
    fn complement_swaps_patterns() {
        for n in 0..=8 {
            for perm in enumerate_permutations(n).unwrap() {
                assert_eq!(
                    perm.is_alternating(),
                    perm.complement().is_reverse_alternating(),
                    "{perm}"
                );
            }
        }
    }

    #[test]
    fn odd_conjugation_swaps_patterns_and_keeps_fixed_points() {
        for n in (1..=9).step_by(2) {
            for perm in enumerate_permutations(n).unwrap() {
                let conj = perm.reversal_conjugate();
                assert_eq!(perm.is_alternating(), conj.is_reverse_alternating());
                assert_eq!(perm.fixed_point_count(), conj.fixed_point_count());
            }
        }
    }

    #[test]
    fn alternating_stream_is_filtered_full_stream() {
        for n in 0..=8 {
            for pattern in [Alternation::Alternating, Alternation::ReverseAlternating] {
                let filtered: Vec<_> = enumerate_permutations(n)
                    .unwrap()
                    .filter(|p| p.follows(pattern))
                    .collect();
                let direct: Vec<_> = enumerate_alternating(n, pattern).unwrap().collect();
                assert_eq!(filtered, direct, "n = {n}, {pattern}");
            }
        }
    }

    #[test]
    fn excedances_partition_positions() {
        for n in 0..=8 {
            for perm in enumerate_permutations(n).unwrap() {
                let weak = perm.weak_excedance_positions();
                let non = perm.non_excedance_positions();
                assert_eq!(weak.len() + non.len(), n);
            }
        }
    }

    #[test]
    fn alternating_fixed_points_never_cluster() {
        for n in 0..=10 {
            for perm in enumerate_alternating(n, Alternation::Alternating).unwrap() {
                let fixed = perm.fixed_points();
                for pair in fixed.windows(2) {
                    if pair[1] == pair[0] + 1 {
                        assert_eq!(pair[0] % 2, 0, "{perm}");
                    }
                }
                for triple in fixed.windows(3) {
                    assert!(triple[2] != triple[0] + 2, "{perm}");
                }
            }
        }
    }

    fn arb_permutation() -> impl Strategy<Value = Permutation> {
        (0usize..=20)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|w| Permutation::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn text_roundtrip(perm in arb_permutation()) {
            let text = perm.to_string();
            prop_assert_eq!(text.contains(','), perm.len() > 9);
            prop_assert_eq!(text.parse::<Permutation>().unwrap(), perm);
        }

        #[test]
        fn conjugation_is_an_involution(perm in arb_permutation()) {
            prop_assert_eq!(perm.reversal_conjugate().reversal_conjugate(), perm);
        }
    }
}
