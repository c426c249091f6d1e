//! Exhaustive checks of every identity, roundtrip, and structural lemma over
//! small ranges, collected into a [`VerificationReport`].
//!
//! Checks run one after another in a fixed order; the heavy ones fan out over
//! rayon internally. A failing check carries the first counterexample in
//! enumeration order, written in the permutation or tableau text form (the
//! latter escaped onto one line, see [`PermutationTableau::to_escaped`]).

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bijection::{
    from_derangement, psi_blockwise, psi_delete_halve, psi_inverse, target_size, to_derangement,
};
use crate::caps::Caps;
use crate::counting::{
    alternating_count, derangement_count, max_fixed_points, CountError, CountsTable,
};
use crate::perm::{Alternation, Permutation};
use crate::tableau::{fillings, shapes, PermutationTableau};

// Exhaustive bounds for the checks that walk all of S_n or all tableaux of a
// semiperimeter; larger requested ranges are clamped to these.
const FULL_PERM_MAX: usize = 8;
const CONJUGATION_MAX: usize = 9;
const LEMMA_MAX: usize = 10;
const COUNTING_BRUTE_MAX: usize = 8;
const EULER_MAX: usize = 10;
const DISPATCH_MAX: usize = 10;
const PHI_MAX: usize = 7;
const THETA_MAX: usize = 6;
const AT_MAX: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// e.g. `n=4..12`
    pub range: String,
    pub status: Status,
    pub witness: Option<String>,
    /// Summary on success, reason on failure.
    pub note: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One `CHECK <name> <range> <PASS|FAIL> [witness]` line per check.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("CHECK {} {} {}", c.name, c.range, c.status));
            if let Some(w) = &c.witness {
                out.push(' ');
                out.push_str(w);
            }
            out.push('\n');
        }
        out
    }

    /// Elapsed time per check, one line each.
    pub fn timings(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<32} {:>10.3} ms\n",
                c.name,
                c.elapsed.as_secs_f64() * 1e3
            ));
        }
        out
    }
}

/// Human-readable report. Leaves out timings so that output is reproducible.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name_width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let range_width = self.checks.iter().map(|c| c.range.len()).max().unwrap_or(0);
        for c in &self.checks {
            write!(
                f,
                "{}  {:<name_width$}  {:<range_width$}  {}",
                c.status, c.name, c.range, c.note
            )?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        writeln!(
            f,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
    }
}

struct Failure {
    witness: Option<String>,
    reason: String,
}

impl Failure {
    fn new(reason: impl Into<String>) -> Self {
        Failure {
            witness: None,
            reason: reason.into(),
        }
    }

    fn at(witness: impl fmt::Display, reason: impl Into<String>) -> Self {
        Failure {
            witness: Some(witness.to_string()),
            reason: reason.into(),
        }
    }

    fn at_tableau(t: &PermutationTableau, reason: impl Into<String>) -> Self {
        Failure {
            witness: Some(t.to_escaped()),
            reason: reason.into(),
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::new(err.to_string())
    }
}

type CheckResult = Result<String, Failure>;

/// Tableaux paired with their images.
type Decoded = Vec<(PermutationTableau, Permutation)>;

#[derive(Default)]
struct Runner {
    report: VerificationReport,
}

impl Runner {
    /// Runs `body` over `lo..=hi` unless the range is empty.
    fn check(
        &mut self,
        name: &'static str,
        var: &str,
        lo: usize,
        hi: usize,
        body: impl FnOnce(std::ops::RangeInclusive<usize>) -> CheckResult,
    ) {
        if lo > hi {
            return;
        }
        let start = Instant::now();
        let result = body(lo..=hi);
        let elapsed = start.elapsed();
        let (status, witness, note) = match result {
            Ok(note) => (Status::Pass, None, note),
            Err(f) => (Status::Fail, f.witness, f.reason),
        };
        self.report.checks.push(CheckOutcome {
            name,
            range: format!("{var}={lo}..{hi}"),
            status,
            witness,
            note,
            elapsed,
        });
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn ensure(cond: bool, failure: impl FnOnce() -> Failure) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(failure())
    }
}

/// Maximal alternating words of `[2m]`: `m` fixed points.
fn maximal_even(caps: &Caps, m: usize) -> Result<Vec<Permutation>, Failure> {
    Ok(caps
        .alternating(2 * m, Alternation::Alternating)?
        .filter(|p| p.fixed_point_count() == m)
        .collect())
}

impl Caps {
    /// Structural facts about single permutations: complement and reversal
    /// symmetries, the alternating stream, excedance bookkeeping, and the
    /// no-three-consecutive-fixed-points lemma.
    pub fn verify_permutations(&self, n_max: usize) -> VerificationReport {
        let mut run = Runner::default();
        let patterns = [Alternation::Alternating, Alternation::ReverseAlternating];

        run.check(
            "complement-symmetry",
            "n",
            0,
            n_max.min(FULL_PERM_MAX),
            |range| {
                let mut seen = 0;
                for n in range {
                    for p in self.permutations(n)? {
                        ensure(
                            p.is_alternating() == p.complement().is_reverse_alternating(),
                            || Failure::at(&p, "complement does not swap the two patterns"),
                        )?;
                        seen += 1;
                    }
                }
                Ok(format!("{seen} permutations"))
            },
        );

        run.check(
            "odd-reversal-conjugation",
            "n",
            1,
            n_max.min(CONJUGATION_MAX),
            |range| {
                let mut seen = 0;
                for n in range.filter(|n| n % 2 == 1) {
                    for p in self.permutations(n)? {
                        let c = p.reversal_conjugate();
                        ensure(p.is_alternating() == c.is_reverse_alternating(), || {
                            Failure::at(&p, "conjugation does not swap the patterns")
                        })?;
                        ensure(p.fixed_point_count() == c.fixed_point_count(), || {
                            Failure::at(&p, "conjugation changes the number of fixed points")
                        })?;
                        ensure(c.reversal_conjugate() == p, || {
                            Failure::at(&p, "conjugation is not an involution")
                        })?;
                        seen += 1;
                    }
                }
                Ok(format!("{seen} permutations of odd length"))
            },
        );

        run.check(
            "alternating-stream",
            "n",
            0,
            n_max.min(FULL_PERM_MAX),
            |range| {
                for n in range {
                    for pattern in patterns {
                        let filtered = self.permutations(n)?.filter(|p| p.follows(pattern));
                        let mut direct = self.alternating(n, pattern)?;
                        for expected in filtered {
                            match direct.next() {
                                Some(got) if got == expected => {}
                                _ => {
                                    return Err(Failure::at(
                                        &expected,
                                        format!("{pattern} stream skips or reorders this word"),
                                    ))
                                }
                            }
                        }
                        if let Some(extra) = direct.next() {
                            return Err(Failure::at(
                                extra,
                                format!("{pattern} stream yields extra word"),
                            ));
                        }
                    }
                }
                Ok("backtracking equals filtered full enumeration".into())
            },
        );

        run.check(
            "derangement-stream",
            "n",
            0,
            n_max.min(FULL_PERM_MAX),
            |range| {
                for n in range {
                    let filtered: Vec<_> = self
                        .permutations(n)?
                        .filter(|p| p.is_derangement())
                        .collect();
                    let direct: Vec<_> = self.derangements(n)?.collect();
                    if filtered != direct {
                        let witness = filtered
                            .iter()
                            .zip(&direct)
                            .find(|(a, b)| a != b)
                            .map(|(a, _)| a.clone())
                            .or_else(|| filtered.get(direct.len()).cloned())
                            .or_else(|| direct.get(filtered.len()).cloned());
                        return Err(Failure {
                            witness: witness.map(|w| w.to_string()),
                            reason: format!("derangement stream differs at n = {n}"),
                        });
                    }
                }
                Ok("backtracking equals filtered full enumeration".into())
            },
        );

        run.check(
            "excedance-partition",
            "n",
            0,
            n_max.min(FULL_PERM_MAX),
            |range| {
                for n in range {
                    for p in self.permutations(n)? {
                        let weak = p.weak_excedance_positions();
                        let non = p.non_excedance_positions();
                        ensure(weak.len() + non.len() == n, || {
                            Failure::at(&p, "excedance classes do not cover all positions")
                        })?;
                    }
                }
                Ok("weak excedances and non-excedances partition positions".into())
            },
        );

        run.check(
            "consecutive-fixed-points",
            "n",
            0,
            n_max.min(LEMMA_MAX),
            |range| {
                let mut seen = 0u64;
                for n in range {
                    for p in self.alternating(n, Alternation::Alternating)? {
                        consecutive_fixed_points(&p)?;
                        seen += 1;
                    }
                }
                Ok(format!("{seen} alternating permutations"))
            },
        );

        run.report
    }

    /// Cross-checks of the counting recurrences against enumeration.
    pub fn verify_counting(&self, n_max: usize) -> VerificationReport {
        let mut run = Runner::default();

        run.check(
            "derangement-recurrence",
            "n",
            0,
            n_max.min(COUNTING_BRUTE_MAX),
            |range| {
                let mut last = 0;
                for n in range {
                    let recurrence = derangement_count(n)?;
                    let brute = self.permutations(n)?.filter(|p| p.is_derangement()).count() as u64;
                    let stream = self.derangements(n)?.count() as u64;
                    ensure(recurrence == brute && brute == stream, || {
                        Failure::new(format!(
                        "n = {n}: recurrence {recurrence}, brute force {brute}, stream {stream}"
                    ))
                    })?;
                    last = recurrence;
                }
                Ok(format!("last value {last}"))
            },
        );

        run.check("euler-numbers", "n", 0, n_max.min(EULER_MAX), |range| {
            let mut last = 0;
            for n in range {
                let euler = alternating_count(n)?;
                let table = self.counts_table(n)?;
                let (alt, rev) = (table.alternating_total(), table.reverse_total());
                let stream = self.alternating(n, Alternation::Alternating)?.count() as u64;
                ensure(euler == alt && euler == rev && euler == stream, || {
                    Failure::new(format!(
                        "n = {n}: Euler {euler}, row sums {alt}/{rev}, stream {stream}"
                    ))
                })?;
                last = euler;
            }
            Ok(format!("last value {last}"))
        });

        run.check(
            "odd-length-symmetry",
            "n",
            1,
            n_max.min(CONJUGATION_MAX),
            |range| {
                for n in range.filter(|n| n % 2 == 1) {
                    let table = self.counts_table(n)?;
                    if let Some(k) = (0..=n).find(|&k| table.d[k] != table.d_star[k]) {
                        return Err(Failure::new(format!(
                            "n = {n}, k = {k}: d = {}, d* = {}",
                            table.d[k], table.d_star[k]
                        )));
                    }
                }
                Ok("d_k(n) = d*_k(n) for every k".into())
            },
        );

        run.report
    }

    /// Both equidistribution identities and the maximum-fixed-point formulas,
    /// for `n >= 4` (alternating) and `n >= 5` (reverse alternating).
    pub fn verify_conjecture(&self, n_max: usize) -> VerificationReport {
        let mut run = Runner::default();
        // one pass per n, built by whichever check asks first
        let tables: Vec<OnceCell<Result<CountsTable, CountError>>> =
            (0..=n_max).map(|_| OnceCell::new()).collect();
        let table = |n: usize| {
            tables[n]
                .get_or_init(|| self.counts_table(n))
                .clone()
                .map_err(Failure::from)
        };

        run.check("max-fixed-alternating", "n", 4, n_max, |range| {
            for n in range {
                let formula = max_fixed_points(n, Alternation::Alternating)?;
                let observed = table(n)?.max_nonzero(Alternation::Alternating);
                ensure(observed == Some(formula), || {
                    Failure::new(format!("n = {n}: formula {formula}, observed {observed:?}"))
                })?;
            }
            Ok("max k with d_k(n) > 0 is ceil(n/2)".into())
        });

        run.check("max-fixed-reverse", "n", 5, n_max, |range| {
            for n in range {
                let formula = max_fixed_points(n, Alternation::ReverseAlternating)?;
                let observed = table(n)?.max_nonzero(Alternation::ReverseAlternating);
                ensure(observed == Some(formula), || {
                    Failure::new(format!("n = {n}: formula {formula}, observed {observed:?}"))
                })?;
            }
            Ok("max k with d*_k(n) > 0 is ceil((n+1)/2)".into())
        });

        run.check("equidistribution-alternating", "n", 4, n_max, |range| {
            let mut values = Vec::new();
            for n in range {
                let got = table(n)?.d[n.div_ceil(2)];
                let want = derangement_count(n / 2)?;
                ensure(got == want, || {
                    Failure::new(format!("n = {n}: d = {got}, D = {want}"))
                })?;
                values.push(got.to_string());
            }
            Ok(format!("d_max(n) = {}", values.join(",")))
        });

        run.check("equidistribution-reverse", "n", 5, n_max, |range| {
            let mut values = Vec::new();
            for n in range {
                let got = table(n)?.d_star[(n + 1).div_ceil(2)];
                let want = derangement_count((n - 1) / 2)?;
                ensure(got == want, || {
                    Failure::new(format!("n = {n}: d* = {got}, D = {want}"))
                })?;
                values.push(got.to_string());
            }
            Ok(format!("d*_max(n) = {}", values.join(",")))
        });

        // d*_{m+1}(2m) = d_{m-1}(2m-2) and d_m(2m-1) = d*_m(2m-1) = d_{m-1}(2m-2)
        run.check("reduction-counts", "n", 4, n_max, |range| {
            for n in range {
                let t = table(n)?;
                let m = n.div_ceil(2);
                let reduced = table(2 * m - 2)?.d[m - 1];
                let (lhs, what) = if n % 2 == 0 {
                    (t.d_star[m + 1], "d*_{m+1}(2m)")
                } else {
                    ensure(t.d[m] == t.d_star[m], || {
                        Failure::new(format!("n = {n}: d_m = {}, d*_m = {}", t.d[m], t.d_star[m]))
                    })?;
                    (t.d[m], "d_m(2m-1)")
                };
                ensure(lhs == reduced, || {
                    Failure::new(format!(
                        "n = {n}: {what} = {lhs}, d_(m-1)(2m-2) = {reduced}"
                    ))
                })?;
            }
            Ok("odd and reverse cases reduce to d_(m-1)(2m-2)".into())
        });

        run.report
    }

    /// Both formulations of the permutation-level bijection, its inverse, and
    /// the reductions for the remaining maximal classes.
    pub fn verify_bijections(&self, m_max: usize) -> VerificationReport {
        let mut run = Runner::default();
        let classes: Vec<Result<Vec<Permutation>, String>> = (0..=m_max)
            .map(|m| maximal_even(self, m).map_err(|f| f.reason))
            .collect();
        let class = |m: usize| classes[m].clone().map_err(Failure::new);

        run.check("psi-agreement", "m", 0, m_max, |range| {
            for m in range {
                for p in class(m)? {
                    let a = psi_blockwise(&p);
                    let b = psi_delete_halve(&p);
                    ensure(a.is_ok() && a == b, || {
                        Failure::at(&p, format!("blockwise {a:?} vs delete-halve {b:?}"))
                    })?;
                }
            }
            Ok("blockwise and delete-and-halve agree".into())
        });

        run.check("psi-roundtrip", "m", 0, m_max, |range| {
            for m in range {
                for p in class(m)? {
                    let sigma = psi_blockwise(&p).map_err(|e| Failure::at(&p, e.to_string()))?;
                    ensure(sigma.is_derangement() && sigma.len() == m, || {
                        Failure::at(&p, format!("image {sigma} is not a derangement of [{m}]"))
                    })?;
                    let back = psi_inverse(&sigma).map_err(|e| Failure::at(&p, e.to_string()))?;
                    ensure(back == p, || {
                        Failure::at(&p, format!("inverse gives {back}"))
                    })?;
                }
            }
            Ok("inverse after psi is the identity".into())
        });

        run.check("psi-inverse-roundtrip", "m", 0, m_max, |range| {
            for m in range {
                for sigma in self.derangements(m)? {
                    let p = psi_inverse(&sigma).map_err(|e| Failure::at(&sigma, e.to_string()))?;
                    ensure(p.is_alternating() && p.fixed_point_count() == m, || {
                        Failure::at(&sigma, format!("inverse {p} is not maximal alternating"))
                    })?;
                    let again =
                        psi_blockwise(&p).map_err(|e| Failure::at(&sigma, e.to_string()))?;
                    ensure(again == sigma, || {
                        Failure::at(&sigma, format!("psi gives {again}"))
                    })?;
                }
            }
            Ok("psi after inverse is the identity".into())
        });

        run.check("psi-counting", "m", 0, m_max, |range| {
            let mut last = String::new();
            for m in range {
                let members = class(m)?;
                let image: BTreeSet<_> = members
                    .iter()
                    .filter_map(|p| psi_blockwise(p).ok())
                    .collect();
                let d = derangement_count(m)?;
                let stream = self.derangements(m)?.count() as u64;
                ensure(
                    image.len() == members.len() && members.len() as u64 == d && d == stream,
                    || {
                        Failure::new(format!(
                            "m = {m}: class {}, image {}, D_m {d}, derangements {stream}",
                            members.len(),
                            image.len()
                        ))
                    },
                )?;
                last = format!("|A_{m}| = D_{m} = {d}");
            }
            Ok(last)
        });

        run.check("psi-block-orientation", "m", 0, m_max, |range| {
            for m in range {
                for p in class(m)? {
                    let sigma = psi_blockwise(&p).map_err(|e| Failure::at(&p, e.to_string()))?;
                    for j in 1..=m {
                        let (lo, hi) = (2 * j - 1, 2 * j);
                        let moved_low = p.at(lo) != lo && p.at(hi) == hi;
                        ensure(moved_low == (sigma.at(j) > j), || {
                            Failure::at(
                                &p,
                                format!("block {j} orientation disagrees with sigma({j})"),
                            )
                        })?;
                    }
                }
            }
            Ok("sigma(j) > j exactly when 2j-1 is the moved point".into())
        });

        let n_hi = (2 * m_max).min(DISPATCH_MAX);
        run.check("maximal-classes-bijective", "n", 0, n_hi, |range| {
            for n in range {
                for pattern in [Alternation::Alternating, Alternation::ReverseAlternating] {
                    let Some(target) = target_size(pattern, n) else {
                        continue;
                    };
                    let fixed = match (pattern, n % 2 == 0) {
                        (Alternation::ReverseAlternating, true) => n / 2 + 1,
                        _ => n.div_ceil(2),
                    };
                    let mut image = BTreeSet::new();
                    let mut members = 0;
                    for p in self
                        .alternating(n, pattern)?
                        .filter(|p| p.fixed_point_count() == fixed)
                    {
                        let sigma = to_derangement(&p, pattern)
                            .map_err(|e| Failure::at(&p, format!("{pattern}: {e}")))?;
                        let back = from_derangement(&sigma, pattern, n)
                            .map_err(|e| Failure::at(&p, e.to_string()))?;
                        ensure(back == p, || Failure::at(&p, format!("lift gives {back}")))?;
                        image.insert(sigma);
                        members += 1;
                    }
                    let d = derangement_count(target)?;
                    ensure(image.len() == members && members as u64 == d, || {
                        Failure::new(format!(
                            "{pattern} n = {n}: {members} members, {} images, D = {d}",
                            image.len()
                        ))
                    })?;
                }
            }
            Ok("all four maximal classes biject onto derangements".into())
        });

        run.report
    }

    /// The tableau decoding map and the row deletion/insertion maps.
    ///
    /// Decoding is checked for semiperimeter up to `min(n_max, 7)`, insertion
    /// of empty rows over `DT(n)` for `n <= min(n_max, 6)`, and the converse
    /// direction over `AT_n(2n)` for `n <= min(n_max, 5)`.
    pub fn verify_tableaux(&self, n_max: usize) -> VerificationReport {
        let mut run = Runner::default();
        let phi_hi = n_max.min(PHI_MAX);
        let theta_hi = n_max.min(THETA_MAX);
        let at_hi = n_max.min(AT_MAX);

        let cap_failure = (0..=phi_hi.max(theta_hi).max(2 * at_hi))
            .find_map(|n| self.tableaux(n).err())
            .map(|e| e.to_string());
        let universe = |n: usize| -> Result<Decoded, Failure> {
            if let Some(reason) = &cap_failure {
                return Err(Failure::new(reason.clone()));
            }
            Ok(decoded_tableaux(n))
        };

        run.check("tableau-count", "n", 0, phi_hi, |range| {
            let mut last = 0;
            for n in range {
                let count = universe(n)?.len() as u64;
                ensure(count == factorial(n), || {
                    Failure::new(format!(
                        "semiperimeter {n}: {count} tableaux, expected {}",
                        factorial(n)
                    ))
                })?;
                last = count;
            }
            Ok(format!("last count {last}"))
        });

        run.check("phi-bijective", "n", 0, phi_hi, |range| {
            let mut last = 0;
            for n in range {
                let decoded = universe(n)?;
                let mut seen = BTreeSet::new();
                for (t, p) in &decoded {
                    ensure(p.len() == n, || {
                        Failure::at_tableau(t, "image has wrong length")
                    })?;
                    ensure(seen.insert(p.clone()), || {
                        Failure::at_tableau(t, format!("image {p} already produced"))
                    })?;
                }
                ensure(seen.len() as u64 == factorial(n), || {
                    Failure::new(format!("semiperimeter {n}: {} images", seen.len()))
                })?;
                last = seen.len();
            }
            Ok(format!("{last} distinct images at the top size"))
        });

        run.check("excedance-lemma", "n", 0, phi_hi, |range| {
            for n in range {
                for (t, p) in universe(n)? {
                    let labels = t.shape().border_labels();
                    ensure(
                        p.weak_excedance_positions() == labels.vertical_labels(),
                        || {
                            Failure::at_tableau(
                                &t,
                                format!("weak excedances of {p} differ from row labels"),
                            )
                        },
                    )?;
                    let empty: Vec<_> = t
                        .empty_rows()
                        .into_iter()
                        .map(|r| labels.row_label(r))
                        .collect();
                    ensure(p.fixed_points() == empty, || {
                        Failure::at_tableau(
                            &t,
                            format!("fixed points of {p} differ from empty-row labels"),
                        )
                    })?;
                }
            }
            Ok("row labels are weak excedances; empty rows are fixed points".into())
        });

        let dt = |n: usize| -> Result<Vec<PermutationTableau>, Failure> {
            Ok(universe(n)?
                .into_iter()
                .filter(|(_, p)| p.is_derangement())
                .map(|(t, _)| t)
                .collect())
        };

        run.check("derangement-tableaux", "n", 0, theta_hi, |range| {
            for n in range {
                for (t, p) in universe(n)? {
                    ensure(p.is_derangement() == t.empty_rows().is_empty(), || {
                        Failure::at_tableau(
                            &t,
                            format!("image {p}: derangement iff no empty row fails"),
                        )
                    })?;
                }
                let count = dt(n)?.len() as u64;
                let d = derangement_count(n)?;
                ensure(count == d, || {
                    Failure::new(format!("|DT({n})| = {count}, D = {d}"))
                })?;
            }
            Ok("DT(n) is exactly the tableaux with no empty row".into())
        });

        run.check("theta-valid", "n", 0, theta_hi, |range| {
            for n in range {
                for t in dt(n)? {
                    let lifted = t
                        .theta()
                        .map_err(|e| Failure::at_tableau(&t, e.to_string()))?;
                    ensure(lifted.validate().is_ok(), || {
                        Failure::at_tableau(&t, "inserted rows break the tableau rules")
                    })?;
                    ensure(lifted.semiperimeter() == 2 * n, || {
                        Failure::at_tableau(&t, format!("semiperimeter {}", lifted.semiperimeter()))
                    })?;
                }
            }
            Ok("valid, semiperimeter doubles".into())
        });

        run.check("theta-alternating", "n", 0, theta_hi, |range| {
            for n in range {
                for t in dt(n)? {
                    let p = t
                        .theta()
                        .and_then(|l| l.phi())
                        .map_err(|e| Failure::at_tableau(&t, e.to_string()))?;
                    ensure(p.is_alternating() && p.fixed_point_count() == n, || {
                        Failure::at_tableau(&t, format!("image {p} is not maximal alternating"))
                    })?;
                }
            }
            Ok("images are alternating with n fixed points".into())
        });

        run.check("theta-then-delete", "n", 0, theta_hi, |range| {
            for n in range {
                for t in dt(n)? {
                    let back = t
                        .theta()
                        .and_then(|l| l.psi_tab())
                        .map_err(|e| Failure::at_tableau(&t, e.to_string()))?;
                    ensure(back == t, || {
                        Failure::at_tableau(&t, "deleting empty rows does not undo insertion")
                    })?;
                }
            }
            Ok("deletion undoes insertion".into())
        });

        let at_sets: Vec<OnceCell<Result<Decoded, String>>> =
            (0..=at_hi).map(|_| OnceCell::new()).collect();
        let at = |n: usize| {
            at_sets[n]
                .get_or_init(|| {
                    match &cap_failure {
                        Some(reason) => Err(reason.clone()),
                        // empty rows are the fixed points, so count them before decoding
                        None => Ok(decoded_tableaux_where(
                            2 * n,
                            |t| t.empty_rows().len() == n,
                            |p| p.is_alternating(),
                        )),
                    }
                })
                .clone()
                .map_err(Failure::new)
        };

        run.check("alternating-tableaux-count", "n", 0, at_hi, |range| {
            let mut last = String::new();
            for n in range {
                let count = at(n)?.len() as u64;
                let d = derangement_count(n)?;
                ensure(count == d, || {
                    Failure::new(format!("|AT_{n}(2{n})| = {count}, D = {d}"))
                })?;
                last = format!("|AT_{n}({})| = {count}", 2 * n);
            }
            Ok(last)
        });

        run.check("delete-then-theta", "n", 0, at_hi, |range| {
            for n in range {
                for (t, _) in at(n)? {
                    let back = t
                        .psi_tab()
                        .and_then(|d| d.theta())
                        .map_err(|e| Failure::at_tableau(&t, e.to_string()))?;
                    ensure(back == t, || {
                        Failure::at_tableau(&t, "insertion does not undo deletion")
                    })?;
                }
            }
            Ok("insertion undoes deletion".into())
        });

        run.check("commuting-square", "n", 0, at_hi, |range| {
            for n in range {
                for (t, p) in at(n)? {
                    let via_tableau = t
                        .psi_tab()
                        .and_then(|d| d.phi())
                        .map_err(|e| Failure::at_tableau(&t, e.to_string()))?;
                    let via_word =
                        psi_blockwise(&p).map_err(|e| Failure::at_tableau(&t, e.to_string()))?;
                    ensure(via_tableau == via_word, || {
                        Failure::at_tableau(
                            &t,
                            format!("tableau route {via_tableau}, word route {via_word}"),
                        )
                    })?;
                }
            }
            Ok("row deletion matches psi on words".into())
        });

        run.check("first-row-nonempty", "n", 1, at_hi, |range| {
            for n in range {
                for (t, _) in at(n)? {
                    ensure(t.empty_rows().first() != Some(&1), || {
                        Failure::at_tableau(&t, "first row is empty")
                    })?;
                }
            }
            Ok("no member starts with an empty row".into())
        });

        run.check("no-three-equal-empty-rows", "n", 0, at_hi, |range| {
            for n in range {
                for (t, _) in at(n)? {
                    let parts = t.shape().parts();
                    let empty: BTreeSet<_> = t.empty_rows().into_iter().collect();
                    let bad = (1..parts.len().saturating_sub(1)).find(|&r| {
                        (r..r + 3).all(|x| empty.contains(&x))
                            && parts[r - 1] == parts[r]
                            && parts[r] == parts[r + 1]
                    });
                    ensure(bad.is_none(), || {
                        Failure::at_tableau(
                            &t,
                            format!("rows {0}..{0}+2 are empty with equal length", bad.unwrap()),
                        )
                    })?;
                }
            }
            Ok("no three consecutive equal-length empty rows".into())
        });

        run.check("empty-run-staircase", "n", 0, at_hi, |range| {
            for n in range {
                for (t, _) in at(n)? {
                    if let Some(row) = staircase_violation(&t) {
                        return Err(Failure::at_tableau(
                            &t,
                            format!("empty rows below a dotted row repeat a length at row {row}"),
                        ));
                    }
                }
            }
            Ok("each run of empty rows is strictly decreasing after its first pair".into())
        });

        run.check(
            "consecutive-fixed-points-tableaux",
            "n",
            0,
            at_hi,
            |range| {
                for n in range {
                    for (t, p) in at(n)? {
                        consecutive_fixed_points(&p)
                            .map_err(|f| Failure::at_tableau(&t, f.reason))?;
                    }
                }
                Ok("images never have three consecutive fixed points".into())
            },
        );

        run.report
    }

    /// Every report, in a fixed order: permutations, counting, conjecture,
    /// bijections (`m <= min(n_max / 2, 6)`), tableaux.
    pub fn verify_all(&self, n_max: usize) -> VerificationReport {
        let mut report = self.verify_permutations(n_max);
        report.extend(self.verify_counting(n_max));
        report.extend(self.verify_conjecture(n_max));
        report.extend(self.verify_bijections((n_max / 2).min(6)));
        report.extend(self.verify_tableaux(n_max));
        report
    }
}

/// All tableaux of semiperimeter `n` with their images, in stream order.
fn decoded_tableaux(n: usize) -> Decoded {
    decoded_tableaux_where(n, |_| true, |_| true)
}

/// The tableaux of semiperimeter `n` passing `pre` whose image satisfies
/// `keep`.
fn decoded_tableaux_where(
    n: usize,
    pre: impl Fn(&PermutationTableau) -> bool + Sync,
    keep: impl Fn(&Permutation) -> bool + Sync,
) -> Decoded {
    shapes(n)
        .par_iter()
        .flat_map_iter(|shape| {
            fillings(shape).into_iter().filter(&pre).filter_map(|t| {
                let p = t.phi_unchecked();
                keep(&p).then_some((t, p))
            })
        })
        .collect()
}

/// Within a maximal run of consecutive empty rows, lengths must strictly
/// decrease except between the first two rows of the run.
fn staircase_violation(t: &PermutationTableau) -> Option<usize> {
    let parts = t.shape().parts();
    let empty: BTreeSet<_> = t.empty_rows().into_iter().collect();
    let mut run_start = None;
    for r in 1..=parts.len() {
        if !empty.contains(&r) {
            run_start = None;
            continue;
        }
        let start = *run_start.get_or_insert(r);
        if r >= start + 2 && parts[r - 1] == parts[r - 2] {
            return Some(r);
        }
    }
    None
}

fn consecutive_fixed_points(p: &Permutation) -> Result<(), Failure> {
    let fixed = p.fixed_points();
    for pair in fixed.windows(2) {
        if pair[1] == pair[0] + 1 && pair[0] % 2 == 1 {
            return Err(Failure::at(
                p,
                format!(
                    "fixed points {} and {} start at an odd position",
                    pair[0], pair[1]
                ),
            ));
        }
    }
    for triple in fixed.windows(3) {
        if triple[2] == triple[0] + 2 {
            return Err(Failure::at(
                p,
                format!("three consecutive fixed points from {}", triple[0]),
            ));
        }
    }
    Ok(())
}

/// [`Caps::verify_conjecture`] with default caps.
pub fn verify_conjecture(n_max: usize) -> VerificationReport {
    Caps::default().verify_conjecture(n_max)
}

/// [`Caps::verify_bijections`] with default caps.
pub fn verify_bijections(m_max: usize) -> VerificationReport {
    Caps::default().verify_bijections(m_max)
}

/// [`Caps::verify_tableaux`] with default caps.
pub fn verify_tableaux(n_max: usize) -> VerificationReport {
    Caps::default().verify_tableaux(n_max)
}
