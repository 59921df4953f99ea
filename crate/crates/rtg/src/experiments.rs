//! Reproducible experiments over the enumeration and recognition
//! kernels: Monte Carlo non-goodness estimates against the closed-form
//! ceiling, exact palette-stratification fractions, the zero-one-law
//! fractions, and extension-image counts.
//!
//! Exact mode enumerates and deduplicates graphs; Monte Carlo mode
//! samples *sequences* uniformly (the two distributions differ — reports
//! label their mode). Everything is deterministic given the seed.

#![allow(clippy::needless_range_loop)]

use crate::report::RationalJson;
use crate::stats::clopper_pearson;
use crate::{Result, RtgError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtg_core::goodness::{delta, is_ell_good_seq};
use rtg_core::recognition::{canonical_form, enumerate_graph_codes, sequence_count};
use rtg_core::{ColorSet, ColorSymbol, Graph, Meter, RainbowSequence};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::time::Instant;

/// One experiment request, as read from the JSON config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub experiment: String,
    pub k: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A config file is a list of specs, possibly wrapped or singular.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ConfigFile {
    List(Vec<ExperimentSpec>),
    Wrapped { experiments: Vec<ExperimentSpec> },
    Single(ExperimentSpec),
}

impl ConfigFile {
    pub fn into_specs(self) -> Vec<ExperimentSpec> {
        match self {
            ConfigFile::List(v) => v,
            ConfigFile::Wrapped { experiments } => experiments,
            ConfigFile::Single(s) => vec![s],
        }
    }
}

/// One named quantity inside a report. Exact fractions keep the raw
/// `count`/`population` pair (unreduced) so denominators always equal
/// the population size.
#[derive(Debug, Clone, Serialize)]
pub struct Metric {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub population: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
}

impl Metric {
    fn fraction(name: &str, count: u64, population: u64) -> Metric {
        let decimal = if population == 0 {
            "0".to_string()
        } else {
            rtg_core::decimal_approx(&BigRational::new(
                BigInt::from(count),
                BigInt::from(population),
            ))
        };
        Metric {
            name: name.to_string(),
            count: Some(count),
            population: Some(population),
            value: Some(RationalJson {
                num: count.to_string(),
                den: population.to_string(),
                decimal,
            }),
            estimate: None,
            ci_low: None,
            ci_high: None,
        }
    }

    fn exact(name: &str, value: &BigRational) -> Metric {
        Metric {
            name: name.to_string(),
            count: None,
            population: None,
            value: Some(value.into()),
            estimate: None,
            ci_low: None,
            ci_high: None,
        }
    }

    fn count_only(name: &str, count: u64) -> Metric {
        Metric {
            name: name.to_string(),
            count: Some(count),
            population: None,
            value: None,
            estimate: None,
            ci_low: None,
            ci_high: None,
        }
    }

    fn mc(name: &str, count: u64, trials: u64, ci: (f64, f64)) -> Metric {
        Metric {
            name: name.to_string(),
            count: Some(count),
            population: Some(trials),
            value: None,
            estimate: Some(count as f64 / trials as f64),
            ci_low: Some(ci.0),
            ci_high: Some(ci.1),
        }
    }
}

/// Result of one experiment. Wall time is kept for display only and
/// never serialized, so identical configurations produce identical
/// bytes.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub k: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub mode: String,
    pub metrics: Vec<Metric>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip)]
    pub wall_ms: f64,
}

impl ExperimentReport {
    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }
}

/// A uniform draw from the `(k * 2^k)^n` sequences, deterministic per
/// seed.
pub fn sample_sequence(k: u32, n: usize, seed: u64) -> Result<RainbowSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_sequence(k, n, &mut rng)
}

fn draw_sequence(k: u32, n: usize, rng: &mut ChaCha8Rng) -> Result<RainbowSequence> {
    if k == 0 && n > 0 {
        return Err(rtg_core::Error::EmptyPalette.into());
    }
    let entries = (0..n)
        .map(|_| {
            let color = rng.random_range(0..k);
            let mask = if k >= 64 { rng.random::<u64>() } else { rng.random_range(0..1u64 << k) };
            ColorSymbol::new(color, ColorSet(mask))
        })
        .collect();
    Ok(RainbowSequence::new(k, entries)?)
}

/// Monte Carlo estimate of the probability that a uniform sequence is
/// not `ell`-good, with an exact 95% binomial interval and the
/// closed-form ceiling for comparison.
pub fn estimate_nongood_fraction(
    k: u32,
    n: usize,
    ell: usize,
    trials: u64,
    seed: u64,
    meter: &mut Meter,
) -> Result<ExperimentReport> {
    if k < 1 || ell < 1 || trials < 1 {
        return Err(RtgError::InvalidParams("need k >= 1, ell >= 1, trials >= 1".into()));
    }
    let start = Instant::now();
    meter.charge_sequences(trials)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut non_good = 0u64;
    for _ in 0..trials {
        let seq = draw_sequence(k, n, &mut rng)?;
        if !is_ell_good_seq(&seq, ell) {
            non_good += 1;
        }
    }
    let ci = clopper_pearson(non_good, trials, 0.95);
    let ceiling = delta(k, n, ell);
    Ok(ExperimentReport {
        experiment: "nongood-fraction".into(),
        k,
        n,
        ell: Some(ell),
        trials: Some(trials),
        seed: Some(seed),
        mode: "monte-carlo".into(),
        metrics: vec![
            Metric::mc("non_good_fraction", non_good, trials, ci),
            Metric::exact("delta_ceiling", &ceiling),
        ],
        flags: Vec::new(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn graph_degrees_sorted(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

/// Exact fraction of graphs over `[k]` isomorphic to some graph over
/// `[k-1]`, by canonical-form sets (with a degree-multiset prefilter;
/// isomorphic graphs share degree multisets, so the filter is lossless).
pub fn exact_class_fractions(k: u32, n: usize, meter: &mut Meter) -> Result<ExperimentReport> {
    if k < 1 {
        return Err(RtgError::InvalidParams("need k >= 1".into()));
    }
    if n > 16 {
        return Err(RtgError::InvalidParams("exact mode supports n <= 16".into()));
    }
    let start = Instant::now();
    let big = enumerate_graph_codes(k, n, meter)?;
    let population = big.len() as u64;
    let count = if k == 1 {
        // the empty palette generates nothing on a nonempty vertex set
        u64::from(n == 0)
    } else {
        let small = enumerate_graph_codes(k - 1, n, meter)?;
        let mut canon_set: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut degree_set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &code in &small {
            let g = Graph::from_upper_code(n, code);
            degree_set.insert(graph_degrees_sorted(&g));
            canon_set.insert(canonical_form(&g, meter)?);
        }
        let mut count = 0u64;
        for &code in &big {
            let g = Graph::from_upper_code(n, code);
            if !degree_set.contains(&graph_degrees_sorted(&g)) {
                continue;
            }
            if canon_set.contains(&canonical_form(&g, meter)?) {
                count += 1;
            }
        }
        count
    };
    Ok(ExperimentReport {
        experiment: "class-fractions".into(),
        k,
        n,
        ell: None,
        trials: None,
        seed: None,
        mode: "exact".into(),
        metrics: vec![Metric::fraction("iso_to_smaller_palette", count, population)],
        flags: Vec::new(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Exact fractions of graphs over `[k]` with an isolated vertex and with
/// a dominating vertex, plus the guaranteed lower bound
/// `1 / (k! * (k*2^k)^(k+2^k))` both fractions must respect.
pub fn zero_one_fractions(k: u32, n: usize, meter: &mut Meter) -> Result<ExperimentReport> {
    if k < 1 {
        return Err(RtgError::InvalidParams("need k >= 1".into()));
    }
    if n > 16 {
        return Err(RtgError::InvalidParams("exact mode supports n <= 16".into()));
    }
    let start = Instant::now();
    let codes = enumerate_graph_codes(k, n, meter)?;
    let population = codes.len() as u64;
    let mut isolated = 0u64;
    let mut dominating = 0u64;
    let mut both = 0u64;
    for &code in &codes {
        let g = Graph::from_upper_code(n, code);
        let has_isolated = (0..n).any(|v| g.is_isolated(v));
        let has_dominating = n > 0 && (0..n).any(|v| g.is_dominating(v));
        isolated += u64::from(has_isolated);
        dominating += u64::from(has_dominating);
        both += u64::from(has_isolated && has_dominating);
    }
    let symbols = BigInt::from(k) << k;
    let mut factorial = BigInt::one();
    for i in 2..=k {
        factorial *= BigInt::from(i);
    }
    let lower_bound =
        BigRational::new(BigInt::one(), factorial * symbols.pow(k + (1u32 << k)));
    Ok(ExperimentReport {
        experiment: "zero-one".into(),
        k,
        n,
        ell: None,
        trials: None,
        seed: None,
        mode: "exact".into(),
        metrics: vec![
            Metric::fraction("isolated_vertex", isolated, population),
            Metric::fraction("dominating_vertex", dominating, population),
            Metric::fraction("both", both, population),
            Metric::exact("guaranteed_lower_bound", &lower_bound),
        ],
        flags: Vec::new(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Fixes a prefix realizing every color and a suffix realizing every
/// color set, then counts the distinct graphs over all `(k * 2^k)^(n -
/// k - 2^k)` middle extensions and compares against the closed-form
/// value `(k * 2^k)^(n-k-2^k) / k!`. A mismatch is flagged, not fatal.
pub fn extension_image_count(k: u32, n: usize, meter: &mut Meter) -> Result<ExperimentReport> {
    if !(1..=4).contains(&k) {
        return Err(RtgError::InvalidParams("extension counts support 1 <= k <= 4".into()));
    }
    let fixed = k as usize + (1usize << k);
    if n < fixed {
        return Err(RtgError::InvalidParams(format!("need n >= k + 2^k = {fixed}")));
    }
    if n > 16 {
        return Err(RtgError::InvalidParams("exact mode supports n <= 16".into()));
    }
    let start = Instant::now();
    let middle = n - fixed;
    let symbols = ColorSymbol::count(k).expect("small palette") as u64;
    let total = (symbols as u128)
        .checked_pow(middle as u32)
        .ok_or_else(|| RtgError::InvalidParams("extension space overflows".into()))?;
    let charge = u64::try_from(total)
        .map_err(|_| rtg_core::Error::BudgetExceeded(rtg_core::budget::Resource::Sequences))?;
    meter.charge_sequences(charge)?;

    // prefix: one vertex per color, empty sets; suffix: color 0 with
    // every subset in mask order
    let mut colors = vec![0u32; n];
    let mut sets = vec![0u64; n];
    for (i, color) in (0..k).enumerate() {
        colors[i] = color;
    }
    for (offset, mask) in (0..1u64 << k).enumerate() {
        sets[n - (1 << k) + offset] = mask;
    }
    let mut digits = vec![0u64; middle];
    let mut images: BTreeSet<u128> = BTreeSet::new();
    loop {
        for (pos, &d) in digits.iter().enumerate() {
            let s = ColorSymbol::from_index(k, d as u128);
            colors[k as usize + pos] = s.color;
            sets[k as usize + pos] = s.set.0;
        }
        let mut code = 0u128;
        let mut bit = 0u32;
        for j in 1..n {
            for i in 0..j {
                code |= u128::from(sets[j] >> colors[i] & 1) << bit;
                bit += 1;
            }
        }
        images.insert(code);
        let mut pos = middle;
        let done = loop {
            if pos == 0 {
                break true;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < symbols {
                break false;
            }
            digits[pos] = 0;
        };
        if done {
            break;
        }
    }
    let count = images.len() as u64;
    let mut factorial = BigInt::one();
    for i in 2..=k {
        factorial *= BigInt::from(i);
    }
    let formula =
        BigRational::new(BigInt::from(symbols).pow(middle as u32), factorial);
    let matches = BigRational::from_integer(BigInt::from(count)) == formula;
    Ok(ExperimentReport {
        experiment: "extension-image".into(),
        k,
        n,
        ell: None,
        trials: None,
        seed: None,
        mode: "exact".into(),
        metrics: vec![
            Metric::count_only("image_size", count),
            Metric::exact("formula_value", &formula),
            Metric::count_only("extensions", charge),
        ],
        flags: if matches { Vec::new() } else { vec!["formula-mismatch".into()] },
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs every experiment in the config, in order. Deterministic given
/// the seeds; unknown names fail fast.
pub fn run_report(specs: &[ExperimentSpec], meter: &mut Meter) -> Result<Vec<ExperimentReport>> {
    let mut reports = Vec::with_capacity(specs.len());
    for spec in specs {
        let report = match spec.experiment.as_str() {
            "nongood-fraction" => {
                let ell = spec
                    .ell
                    .ok_or_else(|| RtgError::InvalidParams("nongood-fraction needs ell".into()))?;
                estimate_nongood_fraction(
                    spec.k,
                    spec.n,
                    ell,
                    spec.trials.unwrap_or(10_000),
                    spec.seed.unwrap_or(0),
                    meter,
                )?
            }
            "class-fractions" => exact_class_fractions(spec.k, spec.n, meter)?,
            "zero-one" => zero_one_fractions(spec.k, spec.n, meter)?,
            "extension-image" => extension_image_count(spec.k, spec.n, meter)?,
            other => return Err(RtgError::UnknownExperiment(other.to_string())),
        };
        reports.push(report);
    }
    Ok(reports)
}

/// CSV rendering: one row per metric, constant column set.
pub fn reports_to_csv(reports: &[ExperimentReport]) -> String {
    let mut out = String::from(
        "experiment,k,n,ell,trials,seed,mode,metric,count,population,num,den,decimal,estimate,ci_low,ci_high,flags\n",
    );
    for r in reports {
        for m in &r.metrics {
            let opt = |v: &Option<u64>| v.map_or(String::new(), |x| x.to_string());
            let optu = |v: &Option<usize>| v.map_or(String::new(), |x| x.to_string());
            let optf = |v: &Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
            let (num, den, dec) = m
                .value
                .as_ref()
                .map_or((String::new(), String::new(), String::new()), |v| {
                    (v.num.clone(), v.den.clone(), v.decimal.clone())
                });
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.experiment,
                r.k,
                r.n,
                optu(&r.ell),
                opt(&r.trials),
                opt(&r.seed),
                r.mode,
                m.name,
                opt(&m.count),
                opt(&m.population),
                num,
                den,
                dec,
                optf(&m.estimate),
                optf(&m.ci_low),
                optf(&m.ci_high),
                r.flags.join(";"),
            ));
        }
    }
    out
}

/// Total sequence space size, exposed for parameter validation in the
/// CLI.
pub fn space_size(k: u32, n: usize) -> Option<u128> {
    sequence_count(k, n)
}
