//! Exhaustive enumeration of primitive periodic orbits up to a length bound,
//! and the counting queries over the resulting records.
//!
//! One record per necklace (cyclic class of a primitive word). A record with
//! even period carries the geodesic pair `{gamma, gamma-bar}`; an odd-period
//! record is a single inert geodesic. Counting queries expand records into
//! geodesics or individual quadratic irrationals at query time.

use crate::error::{Error, Result};
use crate::orbit;
use crate::word::{Parity, PeriodicWord};
use num_bigint::BigInt;
use rayon::prelude::*;

/// One enumerated primitive orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRecord {
    /// Primitive word in cyclic-canonical form.
    pub canonical_word: PeriodicWord,
    /// Trace of the B-product of the minimal even expansion.
    pub trace: BigInt,
    /// Geodesic length `2 acosh(trace/2)`, natural-log units.
    pub length: f64,
    /// Signed alternating sum of the canonical word (B-product convention);
    /// zero for odd parity.
    pub alt: i64,
    pub parity: Parity,
    pub inert: bool,
    pub reciprocal: bool,
}

impl GeodesicRecord {
    pub fn from_word(word: &PeriodicWord) -> Result<GeodesicRecord> {
        if !word.is_canonical_primitive() {
            return Err(Error::NotPrimitive(format!("{word} (not canonical)")));
        }
        let trace = crate::sl2::even_expansion_matrix(word).trace();
        let length = orbit::length_from_trace(&trace);
        let alt = word.alt_sum()?;
        let parity = word.parity();
        let sym = crate::sl2::classify_symmetry(word)?;
        Ok(GeodesicRecord {
            canonical_word: word.clone(),
            trace,
            length,
            alt,
            parity,
            inert: sym.inert,
            reciprocal: sym.reciprocal,
        })
    }

    /// 1 for an inert orbit (a single geodesic), 2 otherwise (the pair).
    pub fn geodesic_multiplicity(&self) -> u64 {
        if self.inert {
            1
        } else {
            2
        }
    }

    /// Number of quadratic irrationals in the T-orbit.
    pub fn orbit_size(&self) -> u64 {
        self.canonical_word.len() as u64
    }
}

/// Enumeration settings. The cap guards against runaway builds: the record
/// count grows like `e^T / T`.
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub t_max: f64,
    pub record_cap: f64,
    pub force: bool,
    pub jobs: Option<usize>,
}

impl EnumerationConfig {
    pub fn new(t_max: f64) -> Self {
        EnumerationConfig {
            t_max,
            record_cap: 4.0e6,
            force: false,
            jobs: None,
        }
    }
}

fn trace_bound(t_max: f64) -> f64 {
    2.0 * (t_max / 2.0).cosh()
}

/// Emits the record for `word` when its even-expansion trace passes the
/// bound; the caller guarantees canonical primitive input.
fn emit(word: &[u64], m: &[u128; 4], k_even: u128, records: &mut Vec<(u128, GeodesicRecord)>) {
    let tr = m[0] + m[3];
    let odd = word.len() % 2 == 1;
    let tr_even = if odd { tr * tr + 2 } else { tr };
    if tr_even > k_even {
        return;
    }
    let pw = PeriodicWord::new(word.to_vec()).expect("DFS words are valid");
    let reciprocal = pw == pw.reversed().canonical();
    let alt = if odd {
        0
    } else {
        pw.alt_sum().expect("canonical words are primitive")
    };
    let trace = BigInt::from(tr_even);
    let length = orbit::length_from_trace(&trace);
    records.push((
        tr_even,
        GeodesicRecord {
            canonical_word: pw,
            trace,
            length,
            alt,
            parity: if odd { Parity::Odd } else { Parity::Even },
            inert: odd,
            reciprocal,
        },
    ));
}

/// DFS over words with all digits >= the first digit, pruned by the monotone
/// trace bound; canonicality is checked at emission.
fn dfs(
    word: &mut Vec<u64>,
    m: [u128; 4],
    k_visit: u128,
    k_even: u128,
    records: &mut Vec<(u128, GeodesicRecord)>,
) {
    if is_canonical_primitive_slice(word) {
        emit(word, &m, k_even, records);
    }
    let lo = word[0];
    // child trace = m12 + m21 + a * m22 <= k_visit
    let base = m[1] + m[2];
    if base > k_visit {
        return;
    }
    let hi = (k_visit - base) / m[3];
    let mut a = lo;
    while a <= hi {
        let child = [m[1], m[0] + a * m[1], m[3], m[2] + a * m[3]];
        word.push(a);
        dfs(word, child, k_visit, k_even, records);
        word.pop();
        a += 1;
    }
}

fn is_canonical_primitive_slice(w: &[u64]) -> bool {
    let n = w.len();
    'outer: for k in 1..n {
        for j in 0..n {
            let a = w[(k + j) % n];
            let b = w[j];
            if a > b {
                continue 'outer;
            }
            if a < b {
                return false;
            }
        }
        return false;
    }
    true
}

fn run_enumeration(k_visit: u128, k_even: u128, jobs: Option<usize>) -> Vec<GeodesicRecord> {
    let roots: Vec<u64> = (1..=k_visit.min(u64::MAX as u128) as u64).collect();
    let work = |a: &u64| -> Vec<(u128, GeodesicRecord)> {
        let a = *a;
        if (a as u128) > k_visit {
            return Vec::new();
        }
        let mut out = Vec::new();
        let m = [0u128, 1, 1, a as u128]; // B_a
        let mut word = vec![a];
        dfs(&mut word, m, k_visit, k_even, &mut out);
        out
    };
    let mut tagged: Vec<(u128, GeodesicRecord)> = match jobs {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool");
            pool.install(|| roots.par_iter().map(work).reduce(Vec::new, |mut a, b| {
                a.extend(b);
                a
            }))
        }
        _ => roots.iter().flat_map(|a| work(a)).collect(),
    };
    tagged.sort_by(|x, y| {
        x.0.cmp(&y.0)
            .then_with(|| x.1.canonical_word.cmp(&y.1.canonical_word))
    });
    tagged.into_iter().map(|(_, r)| r).collect()
}

/// Every primitive necklace with geodesic length at most `t_max`, sorted by
/// `(trace, word)` which equals the `(length, word)` order.
pub fn enumerate_orbits(config: &EnumerationConfig) -> Result<Vec<GeodesicRecord>> {
    let t = config.t_max;
    if !(t >= 1.0) {
        return Err(Error::Domain {
            value: t,
            domain: "[1, inf)",
        });
    }
    let estimate = t.exp() / t;
    if estimate > config.record_cap && !config.force {
        return Err(Error::ResourceGuard {
            estimate,
            cap: config.record_cap,
        });
    }
    let k = trace_bound(t);
    let k_even = k.floor() as u128;
    Ok(run_enumeration(k_even, k_even, config.jobs))
}

/// Odd-period (inert) orbits only. These live at the `e^{T/2}` scale, so far
/// larger `t_max` is feasible than for the full census.
pub fn enumerate_inert_orbits(t_max: f64) -> Result<Vec<GeodesicRecord>> {
    if !(t_max >= 1.0) {
        return Err(Error::Domain {
            value: t_max,
            domain: "[1, inf)",
        });
    }
    let k = trace_bound(t_max);
    let k_even = k.floor() as u128;
    // odd emission needs tr^2 + 2 <= k_even
    let k_visit = ((k - 2.0).max(0.0)).sqrt().floor() as u128;
    let records = run_enumeration(k_visit, k_even, None);
    Ok(records.into_iter().filter(|r| r.inert).collect())
}

/// All digit words (every composition, not deduplicated) with digit sum at
/// most `s`. Exhaustive-verification universe for small digit sums.
pub fn words_with_digit_sum_up_to(s: u64) -> Vec<PeriodicWord> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(prefix: &mut Vec<u64>, remaining: u64, out: &mut Vec<PeriodicWord>) {
        for a in 1..=remaining {
            prefix.push(a);
            out.push(PeriodicWord::new(prefix.clone()).expect("valid word"));
            rec(prefix, remaining - a, out);
            prefix.pop();
        }
    }
    rec(&mut prefix, s, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

/// What a counting query counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    /// Primitive geodesics (records weighted by multiplicity).
    Geodesics,
    /// Individual quadratic irrationals (orbit points).
    Points,
}

/// Linking-number filter on geodesics or points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    All,
    /// Exact linking number / alternating sum `n`.
    Lk(i64),
    /// `|lk| = n`, i.e. the symmetrized class `n` union `-n`.
    LkAbs(i64),
    Inert,
    OddPeriod,
}

/// A complete census up to `t_max`.
#[derive(Debug, Clone)]
pub struct Census {
    pub t_max: f64,
    pub records: Vec<GeodesicRecord>,
}

impl Census {
    pub fn build(config: &EnumerationConfig) -> Result<Census> {
        Ok(Census {
            t_max: config.t_max,
            records: enumerate_orbits(config)?,
        })
    }

    fn check_complete(&self, t: f64) -> Result<()> {
        if t > self.t_max {
            return Err(Error::CensusIncomplete {
                requested: t,
                available: self.t_max,
            });
        }
        Ok(())
    }

    fn record_count(rec: &GeodesicRecord, kind: CountKind, filter: Filter) -> u64 {
        let half_orbit = rec.orbit_size() / 2;
        match kind {
            CountKind::Geodesics => match filter {
                Filter::All => rec.geodesic_multiplicity(),
                Filter::Lk(n) => {
                    if rec.inert {
                        u64::from(n == 0)
                    } else {
                        u64::from(rec.alt == n) + u64::from(-rec.alt == n)
                    }
                }
                Filter::LkAbs(n) => {
                    if rec.inert {
                        u64::from(n == 0)
                    } else {
                        2 * u64::from(rec.alt.abs() == n.abs())
                    }
                }
                Filter::Inert | Filter::OddPeriod => u64::from(rec.inert),
            },
            CountKind::Points => match filter {
                Filter::All => rec.orbit_size(),
                Filter::Lk(n) => {
                    if rec.inert {
                        rec.orbit_size() * u64::from(n == 0)
                    } else {
                        half_orbit * u64::from(rec.alt == n)
                            + half_orbit * u64::from(-rec.alt == n)
                    }
                }
                Filter::LkAbs(n) => {
                    if rec.inert {
                        rec.orbit_size() * u64::from(n == 0)
                    } else {
                        rec.orbit_size() * u64::from(rec.alt.abs() == n.abs())
                    }
                }
                Filter::Inert | Filter::OddPeriod => rec.orbit_size() * u64::from(rec.inert),
            },
        }
    }

    pub fn count(&self, kind: CountKind, filter: Filter, t: f64) -> Result<u64> {
        self.check_complete(t)?;
        Ok(self
            .records
            .iter()
            .take_while(|r| r.length <= t)
            .map(|r| Self::record_count(r, kind, filter))
            .sum())
    }

    fn matching_records(&self, filter: Filter, t: f64) -> impl Iterator<Item = &GeodesicRecord> {
        self.records
            .iter()
            .take_while(move |r| r.length <= t)
            .filter(move |r| Self::record_count(r, CountKind::Points, filter) > 0)
    }

    /// Orbit-point values of every point in the selected sets, suitable for
    /// empirical-distribution diagnostics.
    pub fn points_sample(&self, filter: Filter, t: f64) -> Result<Vec<f64>> {
        self.check_complete(t)?;
        let mut out = Vec::new();
        for rec in self.matching_records(filter, t) {
            let points = orbit::orbit_points(&rec.canonical_word)?;
            for (j, p) in points.iter().enumerate() {
                let alt_here = if j % 2 == 0 { rec.alt } else { -rec.alt };
                let include = match filter {
                    Filter::All | Filter::LkAbs(_) | Filter::Inert | Filter::OddPeriod => true,
                    Filter::Lk(n) => rec.inert || alt_here == n,
                };
                if include {
                    out.push(p.to_f64());
                }
            }
        }
        Ok(out)
    }

    /// Natural-extension pairs `(x, -1/conj(x))` of the selected points.
    pub fn pairs_sample(&self, filter: Filter, t: f64) -> Result<Vec<(f64, f64)>> {
        self.check_complete(t)?;
        let mut out = Vec::new();
        for rec in self.matching_records(filter, t) {
            let points = orbit::orbit_points(&rec.canonical_word)?;
            for p in &points {
                out.push((p.to_f64(), p.neg_recip_conjugate().to_f64()));
            }
        }
        Ok(out)
    }

    /// `(sum of length over points, number of points)` for `ell <= t`.
    pub fn length_point_totals(&self, t: f64) -> Result<(f64, u64)> {
        self.check_complete(t)?;
        let mut total = 0.0;
        let mut count = 0u64;
        for rec in self.records.iter().take_while(|r| r.length <= t) {
            total += rec.length * rec.orbit_size() as f64;
            count += rec.orbit_size();
        }
        Ok((total, count))
    }
}
