//! Exact evaluation of the degree theorems over a corpus of small groups.

mod checks;
mod report;

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

pub use checks::{check_theorem, GroupContext, Instance, Outcome};
pub use report::{CheckRecord, ReportConfig, Summary, VerificationReport};

use crate::coset::DEFAULT_MAX_COSETS;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_SUBGROUP_BOUND};
use crate::spec::GroupSpec;
use crate::tensor::TensorSquare;

/// Default largest group order in the corpus.
pub const DEFAULT_MAX_ORDER: usize = 16;

/// Specs of the builtin corpus, in corpus order.
const BUILTIN_SPECS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C2xC2", "C2xC4",
    "C2xC2xC2", "C3xC3", "D8", "D10", "D12", "D14", "D16", "Q8", "Q16", "S3", "A4", "S4",
];

/// Every statement the harness knows how to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Thm1_1,
    Thm1_2,
    Thm1_3,
    Lem2_1,
    Thm2_2,
    Thm2_3,
    Thm2_5,
    Thm2_6,
    Lem2_7,
    Thm2_8,
    ThreeCases,
    Quotient,
    SanityErl,
    SanityLescot,
    Ex3_1,
    Ex3_2,
    Ex3_3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::Thm1_1,
        TheoremId::Thm1_2,
        TheoremId::Thm1_3,
        TheoremId::Lem2_1,
        TheoremId::Thm2_2,
        TheoremId::Thm2_3,
        TheoremId::Thm2_5,
        TheoremId::Thm2_6,
        TheoremId::Lem2_7,
        TheoremId::Thm2_8,
        TheoremId::ThreeCases,
        TheoremId::Quotient,
        TheoremId::SanityErl,
        TheoremId::SanityLescot,
        TheoremId::Ex3_1,
        TheoremId::Ex3_2,
        TheoremId::Ex3_3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm1_1 => "thm-1.1",
            TheoremId::Thm1_2 => "thm-1.2",
            TheoremId::Thm1_3 => "thm-1.3",
            TheoremId::Lem2_1 => "lem-2.1",
            TheoremId::Thm2_2 => "thm-2.2",
            TheoremId::Thm2_3 => "thm-2.3",
            TheoremId::Thm2_5 => "thm-2.5",
            TheoremId::Thm2_6 => "thm-2.6",
            TheoremId::Lem2_7 => "lem-2.7",
            TheoremId::Thm2_8 => "thm-2.8",
            TheoremId::ThreeCases => "thm-3cases",
            TheoremId::Quotient => "thm-quot",
            TheoremId::SanityErl => "sanity-erl",
            TheoremId::SanityLescot => "sanity-lescot",
            TheoremId::Ex3_1 => "ex-3.1",
            TheoremId::Ex3_2 => "ex-3.2",
            TheoremId::Ex3_3 => "ex-3.3",
        }
    }

    /// Parses `all` or a comma-separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremId>> {
        if s.trim() == "all" {
            return Ok(TheoremId::ALL.to_vec());
        }
        let mut ids = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<TheoremId>>>()?;
        ids.sort();
        ids.dedup();
        Ok(ids)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem id {s:?}")))
    }
}

/// Suite configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_cosets: usize,
    pub max_order: usize,
    pub n_range: RangeInclusive<usize>,
    pub subgroup_bound: usize,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_cosets: DEFAULT_MAX_COSETS,
            max_order: DEFAULT_MAX_ORDER,
            n_range: 1..=4,
            subgroup_bound: DEFAULT_SUBGROUP_BOUND,
            jobs: 1,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.max_cosets == 0 || self.max_order == 0 || self.subgroup_bound == 0 || self.jobs == 0
        {
            return Err(Error::InvalidArgument(
                "configuration bounds must be positive".into(),
            ));
        }
        if *self.n_range.start() == 0 || self.n_range.is_empty() {
            return Err(Error::InvalidArgument(
                "n range must be a nonempty range of positive integers".into(),
            ));
        }
        Ok(())
    }
}

/// One corpus group with its tensor square, or the reason it could not be
/// built within the limits.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub tensor: std::result::Result<Arc<TensorSquare>, String>,
}

impl CorpusEntry {
    pub fn new(spec: GroupSpec, max_order: usize, cache: &TensorCache) -> Result<Self> {
        let group = spec.build(max_order)?;
        let tensor = match cache.get(&group) {
            Ok(t) => Ok(t),
            Err(Error::Limit(msg)) => Err(msg),
            Err(e) => return Err(e),
        };
        Ok(CorpusEntry {
            spec,
            group,
            tensor,
        })
    }
}

type Slot = Arc<OnceLock<Result<Arc<TensorSquare>>>>;

/// Tensor squares shared across workers, keyed by multiplication table.
/// Each square is computed once; concurrent requests for the same table
/// wait for the first.
#[derive(Debug)]
pub struct TensorCache {
    max_cosets: usize,
    slots: Mutex<HashMap<Vec<usize>, Slot>>,
}

impl TensorCache {
    pub fn new(max_cosets: usize) -> Self {
        TensorCache {
            max_cosets,
            slots: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, g: &FiniteGroup) -> Result<Arc<TensorSquare>> {
        let slot = {
            let mut slots = self.slots.lock().expect("tensor cache poisoned");
            slots.entry(g.table().to_vec()).or_default().clone()
        };
        slot.get_or_init(|| TensorSquare::compute(g, self.max_cosets).map(Arc::new))
            .clone()
    }
}

/// The builtin corpus restricted to orders `≤ max_order`, with tensor
/// squares computed under `config.max_cosets`.
pub fn builtin_corpus(
    max_order: usize,
    config: &Config,
    cache: &TensorCache,
) -> Result<Vec<CorpusEntry>> {
    let specs = builtin_specs(max_order)?;
    build_corpus(specs, max_order, config, cache)
}

/// Builtin specs with order `≤ max_order`.
pub fn builtin_specs(max_order: usize) -> Result<Vec<GroupSpec>> {
    if max_order == 0 {
        return Err(Error::InvalidArgument("max order must be positive".into()));
    }
    let mut out = Vec::new();
    for s in BUILTIN_SPECS {
        let spec = GroupSpec::parse(s)?;
        if spec.order()? <= max_order {
            out.push(spec);
        }
    }
    Ok(out)
}

/// Parses a corpus file: one spec per line, `#` starts a comment.
pub fn parse_corpus_file(text: &str) -> Result<Vec<GroupSpec>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| {
                GroupSpec::parse(line)
                    .map_err(|e| Error::InvalidSpec(format!("line {}: {e}", i + 1)))
            })
        })
        .collect()
}

pub fn build_corpus(
    specs: Vec<GroupSpec>,
    max_order: usize,
    config: &Config,
    cache: &TensorCache,
) -> Result<Vec<CorpusEntry>> {
    with_pool(config.jobs, || {
        specs
            .into_par_iter()
            .map(|s| CorpusEntry::new(s, max_order, cache))
            .collect::<Result<Vec<_>>>()
    })?
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Evaluates every requested statement on every applicable instance of
/// every corpus entry. Entries are processed concurrently; the report is
/// sorted so its content does not depend on scheduling.
pub fn run_suite(
    corpus: &[CorpusEntry],
    theorems: &[TheoremId],
    config: &Config,
    cache: &TensorCache,
) -> Result<VerificationReport> {
    config.validate()?;
    let per_entry: Vec<Result<Vec<CheckRecord>>> = with_pool(config.jobs, || {
        corpus
            .par_iter()
            .map(|entry| checks::evaluate_entry(entry, theorems, config, cache))
            .collect()
    })?;
    let mut records = Vec::new();
    for r in per_entry {
        records.extend(r?);
    }
    let report_config = ReportConfig {
        max_order: config.max_order,
        max_cosets: config.max_cosets,
        n_range: format!("{}..{}", config.n_range.start(), config.n_range.end()),
        theorems: theorems.iter().map(|t| t.to_string()).collect(),
        corpus: corpus.iter().map(|e| e.spec.render()).collect(),
    };
    Ok(VerificationReport::new(report_config, records))
}
