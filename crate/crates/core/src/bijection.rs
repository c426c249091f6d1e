//! The bijection between alternating permutations of `[2m]` with `m` fixed
//! points and derangements of `[m]`, plus the reductions that carry the odd
//! and reverse-alternating maximal classes onto it.
//!
//! Pair the positions into blocks `{2j-1, 2j}`. A maximal alternating word
//! fixes exactly one point of every block; the moved points permute among
//! themselves, and reading that permutation block by block gives the
//! derangement.

use thiserror::Error;

use crate::perm::{alternation_violation, Alternation, Permutation};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("expected even length, got n = {n}")]
    OddLength { n: usize },
    #[error("expected odd length, got n = {n}")]
    EvenLength { n: usize },
    #[error("not {pattern}: comparison between positions {position} and {} fails", .position + 1)]
    NotAlternating {
        pattern: Alternation,
        position: usize,
    },
    #[error("expected {expected} fixed points, found {found}")]
    FixedPointCount { expected: usize, found: usize },
    #[error("block {block} = {{{}, {}}} has no fixed point", 2 * .block - 1, 2 * .block)]
    BlockWithoutFixedPoint { block: usize },
    #[error("not a derangement: position {position} is fixed")]
    NotDerangement { position: usize },
    #[error("position {position} must be fixed, but maps to {value}")]
    BoundaryNotFixed { position: usize, value: usize },
    #[error("{pattern} words of length {n} have no reduction to a derangement")]
    NoMaximalClass { pattern: Alternation, n: usize },
}

fn require_pattern(p: &Permutation, pattern: Alternation) -> Result<(), BijectionError> {
    match alternation_violation(p.word(), pattern) {
        Some(position) => Err(BijectionError::NotAlternating { pattern, position }),
        None => Ok(()),
    }
}

fn require_fixed_points(p: &Permutation, expected: usize) -> Result<(), BijectionError> {
    let found = p.fixed_point_count();
    if found == expected {
        Ok(())
    } else {
        Err(BijectionError::FixedPointCount { expected, found })
    }
}

/// Checks membership in the class `A_m`: even length `2m`, alternating,
/// exactly `m` fixed points. Returns `m`.
fn require_maximal_even(p: &Permutation) -> Result<usize, BijectionError> {
    let n = p.len();
    if n % 2 == 1 {
        return Err(BijectionError::OddLength { n });
    }
    require_pattern(p, Alternation::Alternating)?;
    require_fixed_points(p, n / 2)?;
    Ok(n / 2)
}

/// Ψ computed block by block: `p(b_j) = b_{σ(j)}` where `b_j` is the moved
/// point of block `j`.
pub fn psi_blockwise(p: &Permutation) -> Result<Permutation, BijectionError> {
    let m = require_maximal_even(p)?;
    let mut moved = Vec::with_capacity(m);
    for block in 1..=m {
        let (lo, hi) = (2 * block - 1, 2 * block);
        let b = match (p.at(lo) == lo, p.at(hi) == hi) {
            (true, false) => hi,
            (false, true) => lo,
            // both fixed is ruled out by the descent inside the block
            _ => return Err(BijectionError::BlockWithoutFixedPoint { block }),
        };
        moved.push(b);
    }
    // moved point b lives in block ceil(b / 2)
    let sigma = moved.iter().map(|&b| p.at(b).div_ceil(2)).collect();
    Ok(Permutation::from_word_unchecked(sigma))
}

/// Ψ as a word operation: drop the fixed letters, then halve every
/// remaining letter rounding up.
pub fn psi_delete_halve(p: &Permutation) -> Result<Permutation, BijectionError> {
    require_maximal_even(p)?;
    let sigma = p
        .word()
        .iter()
        .enumerate()
        .filter(|&(idx, &v)| v != idx + 1)
        .map(|(_, &v)| v.div_ceil(2))
        .collect();
    Ok(Permutation::from_word_unchecked(sigma))
}

/// The moved point `b_j` of block `j` forced by a derangement: the lower
/// position when `σ(j) > j`, the upper one when `σ(j) < j`.
#[inline]
fn moved_point(sigma: &Permutation, block: usize) -> usize {
    if sigma.at(block) > block {
        2 * block - 1
    } else {
        2 * block
    }
}

/// Rebuilds the unique maximal alternating word of `[2m]` mapping to the
/// derangement `sigma` of `[m]`.
pub fn psi_inverse(sigma: &Permutation) -> Result<Permutation, BijectionError> {
    if let Some(&position) = sigma.fixed_points().first() {
        return Err(BijectionError::NotDerangement { position });
    }
    let m = sigma.len();
    let mut word = vec![0; 2 * m];
    for block in 1..=m {
        let b = moved_point(sigma, block);
        let a = if b == 2 * block { b - 1 } else { b + 1 };
        word[a - 1] = a;
        word[b - 1] = moved_point(sigma, sigma.at(block));
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// Reverse-alternating words of `[2m]` with `m + 1` fixed points fix both
/// ends; stripping them (and shifting values down) lands in `A_{m-1}`.
pub fn reduce_reverse_alternating_even(p: &Permutation) -> Result<Permutation, BijectionError> {
    let n = p.len();
    if n % 2 == 1 {
        return Err(BijectionError::OddLength { n });
    }
    if n == 0 {
        return Err(BijectionError::NoMaximalClass {
            pattern: Alternation::ReverseAlternating,
            n,
        });
    }
    require_pattern(p, Alternation::ReverseAlternating)?;
    require_fixed_points(p, n / 2 + 1)?;
    for position in [1, n] {
        if p.at(position) != position {
            return Err(BijectionError::BoundaryNotFixed {
                position,
                value: p.at(position),
            });
        }
    }
    let inner = p.word()[1..n - 1].iter().map(|&v| v - 1).collect();
    Ok(Permutation::from_word_unchecked(inner))
}

/// Alternating words of `[2m-1]` with `m` fixed points fix the last
/// position; dropping it lands in `A_{m-1}`.
pub fn reduce_alternating_odd(p: &Permutation) -> Result<Permutation, BijectionError> {
    let n = p.len();
    if n % 2 == 0 {
        return Err(BijectionError::EvenLength { n });
    }
    require_pattern(p, Alternation::Alternating)?;
    require_fixed_points(p, n.div_ceil(2))?;
    if p.at(n) != n {
        return Err(BijectionError::BoundaryNotFixed {
            position: n,
            value: p.at(n),
        });
    }
    Ok(Permutation::from_word_unchecked(p.word()[..n - 1].to_vec()))
}

/// Sends a maximal-fixed-point member of either pattern class to its
/// derangement, dispatching on pattern and parity of `n`.
pub fn to_derangement(
    p: &Permutation,
    pattern: Alternation,
) -> Result<Permutation, BijectionError> {
    let even = p.len() % 2 == 0;
    match (pattern, even) {
        (Alternation::Alternating, true) => psi_blockwise(p),
        (Alternation::Alternating, false) => psi_blockwise(&reduce_alternating_odd(p)?),
        (Alternation::ReverseAlternating, true) => {
            psi_blockwise(&reduce_reverse_alternating_even(p)?)
        }
        (Alternation::ReverseAlternating, false) => {
            require_pattern(p, pattern)?;
            to_derangement(&p.reversal_conjugate(), Alternation::Alternating)
        }
    }
}

/// Inverse of [`to_derangement`] for words of length `n`: re-inserts the
/// fixed points the reductions strip.
pub(crate) fn from_derangement(
    sigma: &Permutation,
    pattern: Alternation,
    n: usize,
) -> Result<Permutation, BijectionError> {
    let core = psi_inverse(sigma)?;
    let even = n % 2 == 0;
    Ok(match (pattern, even) {
        (Alternation::Alternating, true) => core,
        (Alternation::Alternating, false) => {
            let mut word = core.into_word();
            word.push(word.len() + 1);
            Permutation::from_word_unchecked(word)
        }
        (Alternation::ReverseAlternating, true) => {
            let inner = core.into_word();
            let last = inner.len() + 2;
            let word = std::iter::once(1)
                .chain(inner.into_iter().map(|v| v + 1))
                .chain(std::iter::once(last))
                .collect();
            Permutation::from_word_unchecked(word)
        }
        (Alternation::ReverseAlternating, false) => {
            from_derangement(sigma, Alternation::Alternating, n)?.reversal_conjugate()
        }
    })
}

/// Size of the derangement a maximal word of length `n` reduces to.
pub fn target_size(pattern: Alternation, n: usize) -> Option<usize> {
    match (pattern, n % 2 == 0) {
        (Alternation::Alternating, _) => Some(n / 2),
        (Alternation::ReverseAlternating, true) if n >= 2 => Some(n / 2 - 1),
        (Alternation::ReverseAlternating, true) => None,
        (Alternation::ReverseAlternating, false) => Some((n - 1) / 2),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::perm::{enumerate_alternating, enumerate_derangements};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn maximal_even(m: usize) -> Vec<Permutation> {
        enumerate_alternating(2 * m, Alternation::Alternating)
            .unwrap()
            .filter(|p| p.fixed_point_count() == m)
            .collect()
    }

    #[test]
    fn worked_example() {
        let pi = p("52318674");
        assert_eq!(psi_blockwise(&pi).unwrap(), p("3142"));
        assert_eq!(psi_delete_halve(&pi).unwrap(), p("3142"));
        assert_eq!(psi_inverse(&p("3142")).unwrap(), pi);
        assert_eq!(
            to_derangement(&pi, Alternation::Alternating).unwrap(),
            p("3142")
        );
    }

    #[test]
    fn small_cases() {
        let empty = Permutation::identity(0);
        assert_eq!(psi_blockwise(&empty).unwrap(), empty);
        assert_eq!(psi_delete_halve(&empty).unwrap(), empty);
        assert_eq!(psi_inverse(&empty).unwrap(), empty);
        assert_eq!(psi_blockwise(&p("4231")).unwrap(), p("21"));
        assert_eq!(psi_delete_halve(&p("4231")).unwrap(), p("21"));
        assert_eq!(psi_inverse(&p("21")).unwrap(), p("4231"));
        assert_eq!(
            to_derangement(&p("4231"), Alternation::Alternating).unwrap(),
            p("21")
        );
        assert_eq!(
            to_derangement(&p("12"), Alternation::ReverseAlternating).unwrap(),
            empty
        );
    }

    #[test]
    fn diagnostics() {
        assert_eq!(
            psi_blockwise(&p("213")),
            Err(BijectionError::OddLength { n: 3 })
        );
        assert_eq!(
            psi_blockwise(&p("1234")),
            Err(BijectionError::NotAlternating {
                pattern: Alternation::Alternating,
                position: 1
            })
        );
        assert_eq!(
            psi_delete_halve(&p("2143")),
            Err(BijectionError::FixedPointCount {
                expected: 2,
                found: 0
            })
        );
        assert_eq!(
            psi_inverse(&p("2134")),
            Err(BijectionError::NotDerangement { position: 3 })
        );
        assert_eq!(
            reduce_reverse_alternating_even(&p("1324")),
            Err(BijectionError::FixedPointCount {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            reduce_alternating_odd(&p("213")),
            Err(BijectionError::FixedPointCount {
                expected: 2,
                found: 1
            })
        );
        let err = to_derangement(&p("12345"), Alternation::Alternating).unwrap_err();
        assert_eq!(
            err,
            BijectionError::NotAlternating {
                pattern: Alternation::Alternating,
                position: 1
            }
        );
        assert!(err.to_string().contains("positions 1 and 2"));
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_reverse_alternating_even(&p("12")).unwrap(), p(""));

        let rev6: Vec<_> = enumerate_alternating(6, Alternation::ReverseAlternating)
            .unwrap()
            .filter(|p| p.fixed_point_count() == 4)
            .collect();
        assert_eq!(rev6, vec![p("153426")]);
        assert_eq!(
            reduce_reverse_alternating_even(&rev6[0]).unwrap(),
            p("4231")
        );

        let alt3 = enumerate_alternating(3, Alternation::Alternating)
            .unwrap()
            .filter(|p| p.fixed_point_count() == 2)
            .count();
        assert_eq!(alt3, 0);

        let alt5: Vec<_> = enumerate_alternating(5, Alternation::Alternating)
            .unwrap()
            .filter(|p| p.fixed_point_count() == 3)
            .collect();
        assert_eq!(alt5, vec![p("42315")]);
        assert_eq!(reduce_alternating_odd(&alt5[0]).unwrap(), p("4231"));
    }

    #[test]
    fn formulations_agree_and_roundtrip() {
        for m in 0..=6 {
            let class = maximal_even(m);
            let mut image = BTreeSet::new();
            for pi in &class {
                let sigma = psi_blockwise(pi).unwrap();
                assert_eq!(psi_delete_halve(pi).unwrap(), sigma, "{pi}");
                assert!(sigma.is_derangement());
                assert_eq!(&psi_inverse(&sigma).unwrap(), pi);
                image.insert(sigma);
            }
            assert_eq!(image.len(), class.len());
            let derangements: BTreeSet<_> = enumerate_derangements(m).unwrap().collect();
            assert_eq!(image, derangements, "m = {m}");
            for sigma in &derangements {
                assert_eq!(&psi_blockwise(&psi_inverse(sigma).unwrap()).unwrap(), sigma);
            }
        }
    }

    #[test]
    fn inverse_lands_in_class() {
        for m in 0..=6 {
            for sigma in enumerate_derangements(m).unwrap() {
                let pi = psi_inverse(&sigma).unwrap();
                assert!(pi.is_alternating(), "{sigma} -> {pi}");
                assert_eq!(pi.fixed_point_count(), m);
            }
        }
    }

    #[test]
    fn block_orientation_is_forced() {
        for m in 1..=6 {
            for pi in maximal_even(m) {
                let sigma = psi_blockwise(&pi).unwrap();
                for j in 1..=m {
                    let (lo, hi) = (2 * j - 1, 2 * j);
                    if sigma.at(j) > j {
                        assert!(pi.at(lo) != lo && pi.at(hi) == hi);
                    } else {
                        assert!(pi.at(lo) == lo && pi.at(hi) != hi);
                    }
                }
            }
        }
    }

    #[test]
    fn dispatcher_is_bijective_per_class() {
        for pattern in [Alternation::Alternating, Alternation::ReverseAlternating] {
            for n in 0..=10 {
                let Some(target) = target_size(pattern, n) else {
                    continue;
                };
                let mut image = BTreeSet::new();
                let mut size = 0;
                for pi in enumerate_alternating(n, pattern).unwrap() {
                    if let Ok(sigma) = to_derangement(&pi, pattern) {
                        assert_eq!(sigma.len(), target);
                        assert_eq!(from_derangement(&sigma, pattern, n).unwrap(), pi);
                        image.insert(sigma);
                        size += 1;
                    }
                }
                assert_eq!(image.len(), size, "{pattern} n = {n}");
                let all: BTreeSet<_> = enumerate_derangements(target).unwrap().collect();
                assert_eq!(image, all, "{pattern} n = {n}");
            }
        }
    }
}
