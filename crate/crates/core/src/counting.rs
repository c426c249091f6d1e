//! Counting derangements, alternating permutations, and alternating
//! permutations by number of fixed points.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::caps::{CapExceeded, Caps};
use crate::perm::{fixed_point_count, Alternation};

/// Largest `n` whose counts are guaranteed to fit in `u64`.
pub const MAX_COUNT_N: usize = 20;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("n = {n} exceeds {MAX_COUNT_N}; counts could overflow 64 bits")]
    Overflow { n: usize },
    #[error("maximum fixed points of {pattern} words is only defined for n >= {min}, got {n}")]
    OutOfRange {
        pattern: Alternation,
        n: usize,
        min: usize,
    },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// `D_n` from `D_n = (n - 1)(D_{n-1} + D_{n-2})`, `D_0 = 1`, `D_1 = 0`.
pub fn derangement_count(n: usize) -> Result<u64, CountError> {
    if n > MAX_COUNT_N {
        return Err(CountError::Overflow { n });
    }
    let (mut prev, mut cur) = (1u64, 0u64);
    if n == 0 {
        return Ok(prev);
    }
    for k in 2..=n as u64 {
        (prev, cur) = (cur, (k - 1) * (prev + cur));
    }
    Ok(cur)
}

/// The Euler zigzag number `E_n`, the number of alternating permutations of
/// `[n]`, from the Seidel boustrophedon triangle.
pub fn alternating_count(n: usize) -> Result<u64, CountError> {
    if n > MAX_COUNT_N {
        return Err(CountError::Overflow { n });
    }
    // row k of the triangle, read in its direction of construction; the
    // last entry of row k is E_k
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(0);
        for &v in row.iter().rev() {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    Ok(*row.last().unwrap())
}

/// `ceil(n/2)` for alternating words (`n >= 4`), `ceil((n+1)/2)` for reverse
/// alternating ones (`n >= 5`).
pub fn max_fixed_points(n: usize, pattern: Alternation) -> Result<usize, CountError> {
    let min = match pattern {
        Alternation::Alternating => 4,
        Alternation::ReverseAlternating => 5,
    };
    if n < min {
        return Err(CountError::OutOfRange { pattern, n, min });
    }
    Ok(match pattern {
        Alternation::Alternating => n.div_ceil(2),
        Alternation::ReverseAlternating => (n + 1).div_ceil(2),
    })
}

/// Alternating and reverse-alternating permutations of `[n]` bucketed by
/// number of fixed points, with `D_n` alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountsTable {
    pub n: usize,
    /// `d[k]` alternating words with `k` fixed points, `k = 0..=n`.
    pub d: Vec<u64>,
    /// Same for reverse-alternating words.
    pub d_star: Vec<u64>,
    pub derangements: u64,
}

impl CountsTable {
    pub fn alternating_total(&self) -> u64 {
        self.d.iter().sum()
    }

    pub fn reverse_total(&self) -> u64 {
        self.d_star.iter().sum()
    }

    /// Largest `k` with a nonzero bucket.
    pub fn max_nonzero(&self, pattern: Alternation) -> Option<usize> {
        let buckets = match pattern {
            Alternation::Alternating => &self.d,
            Alternation::ReverseAlternating => &self.d_star,
        };
        buckets.iter().rposition(|&c| c != 0)
    }

    /// One `n k d d_star` line per `k`.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for k in 0..=self.n {
            out.push_str(&format!(
                "{} {} {} {}\n",
                self.n, k, self.d[k], self.d_star[k]
            ));
        }
        out
    }
}

/// Aligned plain-text table.
impl fmt::Display for CountsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .d
            .iter()
            .chain(&self.d_star)
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1)
            .max(6);
        writeln!(f, "n = {}   D_n = {}", self.n, self.derangements)?;
        writeln!(f, "{:>3}  {:>width$}  {:>width$}", "k", "d_k", "d*_k")?;
        for k in 0..=self.n {
            writeln!(
                f,
                "{k:>3}  {:>width$}  {:>width$}",
                self.d[k], self.d_star[k]
            )?;
        }
        writeln!(
            f,
            "sum  {:>width$}  {:>width$}",
            self.alternating_total(),
            self.reverse_total()
        )
    }
}

fn buckets(caps: &Caps, n: usize, pattern: Alternation) -> Result<Vec<u64>, CountError> {
    let stream = caps.alternating(n, pattern)?;
    let tally = |mut stream: crate::perm::PermutationStream| {
        let mut counts = vec![0u64; n + 1];
        while let Some(word) = stream.next_word() {
            counts[fixed_point_count(word)] += 1;
        }
        counts
    };
    if n == 0 {
        return Ok(tally(stream));
    }
    // partitions by first letter are disjoint; summing is order-independent
    let partials: Vec<Vec<u64>> = (1..=n)
        .into_par_iter()
        .map(|first| tally(stream.clone().with_first(first)))
        .collect();
    let mut counts = vec![0u64; n + 1];
    for partial in partials {
        for (total, c) in counts.iter_mut().zip(partial) {
            *total += c;
        }
    }
    Ok(counts)
}

impl Caps {
    pub fn counts_table(&self, n: usize) -> Result<CountsTable, CountError> {
        Ok(CountsTable {
            n,
            d: buckets(self, n, Alternation::Alternating)?,
            d_star: buckets(self, n, Alternation::ReverseAlternating)?,
            derangements: derangement_count(n)?,
        })
    }
}

/// [`Caps::counts_table`] with default caps.
pub fn counts_table(n: usize) -> Result<CountsTable, CountError> {
    Caps::default().counts_table(n)
}
