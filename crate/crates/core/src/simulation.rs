//! Monte-Carlo campaigns: draw infection patterns, encode, decode, tally.
//!
//! Trial `i` of a campaign draws its pattern from an RNG seeded with a hash
//! of `(master seed, i)`, and trials are processed in fixed-size chunks that
//! are merged in order. The trial log and the statistics are therefore the
//! same for any worker count.

use std::fmt;
use std::io::{self, Write};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boolsemi::BoolVec;
use crate::error::{Error, Result};
use crate::residuation::TestingScheme;
use crate::with_pool;

/// Trials per work item.
const CHUNK: usize = 1024;

pub const CSV_HEADER: &str = "trial,weight_true,weight_decoded,exact,false_positives";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PatternKind {
    /// Uniform over all supports of exactly this size.
    FixedWeight(usize),
    /// Each sample positive independently with this probability.
    Bernoulli(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternModel {
    pub kind: PatternKind,
    pub seed: u64,
}

impl PatternModel {
    pub fn fixed_weight(w: usize, seed: u64) -> Self {
        PatternModel {
            kind: PatternKind::FixedWeight(w),
            seed,
        }
    }

    pub fn bernoulli(p: f64, seed: u64) -> Self {
        PatternModel {
            kind: PatternKind::Bernoulli(p),
            seed,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self.kind {
            PatternKind::FixedWeight(w) if w > n => Err(Error::InvalidParameter(format!(
                "fixed weight {w} exceeds n={n}"
            ))),
            PatternKind::Bernoulli(p) if !(0.0..=1.0).contains(&p) => Err(
                Error::InvalidParameter(format!("prevalence {p} outside [0, 1]")),
            ),
            _ => Ok(()),
        }
    }
}

/// Draws one pattern of length `n`; deterministic in `model.seed`.
pub fn sample_pattern(model: &PatternModel, n: usize) -> Result<BoolVec> {
    model.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    Ok(draw(&mut rng, model.kind, n))
}

fn draw(rng: &mut ChaCha8Rng, kind: PatternKind, n: usize) -> BoolVec {
    match kind {
        PatternKind::FixedWeight(w) => {
            BoolVec::from_support(n, rand::seq::index::sample(rng, n, w))
        }
        PatternKind::Bernoulli(p) => {
            let bits: Vec<bool> = (0..n).map(|_| rng.random_bool(p)).collect();
            BoolVec::from_bools(&bits)
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for trial `i` of a campaign with master seed `master`.
pub fn trial_seed(master: u64, i: u64) -> u64 {
    splitmix64(master ^ splitmix64(i))
}

/// One encode/decode round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub x: BoolVec,
    pub y: BoolVec,
    pub x_hat: BoolVec,
    pub exact: bool,
    /// Samples declared positive that are not in `x`.
    pub false_positives: usize,
}

impl TrialRecord {
    /// The decoder guarantee `x ≤ x_hat`.
    pub fn no_false_negatives(&self) -> bool {
        self.x.leq_unchecked(&self.x_hat)
    }
}

pub fn run_trial(scheme: &TestingScheme, x: &BoolVec) -> Result<TrialRecord> {
    let y = scheme.encode(x)?;
    let x_hat = scheme.decode_unchecked(&y);
    let mut extra = x.negated();
    extra.and_assign(&x_hat);
    Ok(TrialRecord {
        exact: x_hat == *x,
        false_positives: extra.weight(),
        x: x.clone(),
        y,
        x_hat,
    })
}

/// Aggregate counts; merging is associative and commutative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CampaignStats {
    pub trials: u64,
    pub exact: u64,
    pub false_positives: u64,
    /// Trials where `x ≰ x_hat`; zero for a correct decoder.
    pub false_negative_trials: u64,
    pub n: usize,
    pub k: usize,
}

impl CampaignStats {
    fn record(&mut self, t: &TrialRecord) {
        self.trials += 1;
        self.exact += t.exact as u64;
        self.false_positives += t.false_positives as u64;
        self.false_negative_trials += !t.no_false_negatives() as u64;
    }

    fn merge(&mut self, other: &CampaignStats) {
        self.trials += other.trials;
        self.exact += other.exact;
        self.false_positives += other.false_positives;
        self.false_negative_trials += other.false_negative_trials;
    }

    /// Recomputes statistics from a complete trial log.
    pub fn from_log(log: &[TrialRecord], n: usize, k: usize) -> Self {
        let mut s = CampaignStats {
            n,
            k,
            ..Default::default()
        };
        log.iter().for_each(|t| s.record(t));
        s
    }

    pub fn exact_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.exact as f64 / self.trials as f64
        }
    }

    pub fn mean_false_positives(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.false_positives as f64 / self.trials as f64
        }
    }

    /// k / n.
    pub fn tests_per_sample(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

impl fmt::Display for CampaignStats {
    /// `key value` lines, one per statistic.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials {}", self.trials)?;
        writeln!(f, "exact {}", self.exact)?;
        writeln!(f, "exact_rate {}", self.exact_rate())?;
        writeln!(f, "false_positives {}", self.false_positives)?;
        writeln!(f, "mean_false_positives {}", self.mean_false_positives())?;
        writeln!(f, "false_negative_trials {}", self.false_negative_trials)?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "tests_per_sample {}", self.tests_per_sample())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignOptions {
    /// 1 runs serially, 0 uses one worker per core.
    pub workers: usize,
    /// Keep at most this many trial records (the first ones); `None` keeps all.
    pub log_limit: Option<usize>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            workers: 1,
            log_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Campaign {
    pub stats: CampaignStats,
    /// Records of trials `0..log.len()`.
    pub log: Vec<TrialRecord>,
}

/// Runs `trials` independent trials; `model.seed` is the master seed.
pub fn run_campaign(
    scheme: &TestingScheme,
    model: &PatternModel,
    trials: usize,
    options: CampaignOptions,
) -> Result<Campaign> {
    if trials == 0 {
        return Err(Error::InvalidParameter("a campaign needs at least one trial".into()));
    }
    model.validate(scheme.n())?;
    let keep = options.log_limit.unwrap_or(trials);

    let chunk = |c: usize| {
        let mut stats = CampaignStats::default();
        let mut log = Vec::new();
        for i in c * CHUNK..trials.min((c + 1) * CHUNK) {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(model.seed, i as u64));
            let x = draw(&mut rng, model.kind, scheme.n());
            let rec = run_trial(scheme, &x).expect("pattern length matches scheme");
            stats.record(&rec);
            if i < keep {
                log.push(rec);
            }
        }
        (stats, log)
    };
    let chunks = trials.div_ceil(CHUNK);
    let parts: Vec<(CampaignStats, Vec<TrialRecord>)> = if options.workers == 1 {
        (0..chunks).map(chunk).collect()
    } else {
        with_pool(options.workers, || (0..chunks).into_par_iter().map(chunk).collect())
    };

    let mut stats = CampaignStats {
        n: scheme.n(),
        k: scheme.k(),
        ..Default::default()
    };
    let mut log = Vec::with_capacity(keep.min(trials));
    for (s, l) in parts {
        stats.merge(&s);
        log.extend(l);
    }
    Ok(Campaign { stats, log })
}

/// Writes the trial log as CSV with header [`CSV_HEADER`].
pub fn write_campaign_csv<W: Write>(mut out: W, log: &[TrialRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for (i, t) in log.iter().enumerate() {
        writeln!(
            out,
            "{i},{},{},{},{}",
            t.x.weight(),
            t.x_hat.weight(),
            t.exact,
            t.false_positives
        )?;
    }
    Ok(())
}

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvRow {
    pub trial: usize,
    pub weight_true: usize,
    pub weight_decoded: usize,
    pub exact: bool,
    pub false_positives: usize,
}

pub fn read_campaign_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(Error::format(1, format!("expected header {CSV_HEADER:?}"))),
    }
    lines
        .map(|(i, line)| {
            let bad = |m: &str| Error::format(i + 1, m.to_string());
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad integer"));
            Ok(CsvRow {
                trial: num(f[0])?,
                weight_true: num(f[1])?,
                weight_decoded: num(f[2])?,
                exact: f[3].parse().map_err(|_| bad("bad boolean"))?,
                false_positives: num(f[4])?,
            })
        })
        .collect()
}
