//! Batch scan over pairwise coprime triples with an append-only JSONL results file.
//!
//! Workers compute one record per triple; a single appender thread owns the file. Records
//! already present for the same `mu_cap` are reused, after re-checking any claimed pair.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wpp_mori::orthpair::{check_pair, mds_test, MdsVerdict, OrthogonalPair, PairSignature};
use wpp_mori::weights::coprime_triples;
use wpp_mori::{Ring, SparsePoly, WeightTriple};

pub const ENGINE: &str = concat!("wpp-mori ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    MoriDream,
    Inconclusive,
}

/// One line of the results file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<PairSignature>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<String>,
    pub mu_cap: u32,
    pub wall_ms: u64,
    pub engine: String,
}

impl ScanRecord {
    pub fn compute(w: &WeightTriple, mu_cap: u32) -> Self {
        let start = Instant::now();
        let verdict = mds_test(w, mu_cap);
        let wall_ms = start.elapsed().as_millis() as u64;
        let [a, b, c] = w.as_array();
        let (verdict, signature, f1, f2) = match &verdict {
            MdsVerdict::MoriDream(p) => (
                Verdict::MoriDream,
                Some(p.signature()),
                Some(p.f1.to_string()),
                Some(p.f2.to_string()),
            ),
            MdsVerdict::Inconclusive { .. } => (Verdict::Inconclusive, None, None, None),
        };
        ScanRecord {
            a,
            b,
            c,
            verdict,
            signature,
            f1,
            f2,
            mu_cap,
            wall_ms,
            engine: ENGINE.to_string(),
        }
    }

    pub fn triple(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// Rebuilds the pair of a `MoriDream` record.
    pub fn pair(&self) -> Result<Option<OrthogonalPair>> {
        if self.verdict == Verdict::Inconclusive {
            return Ok(None);
        }
        let (Some(sig), Some(f1), Some(f2)) = (&self.signature, &self.f1, &self.f2) else {
            bail!("MoriDream record for {:?} lacks its pair", self.triple());
        };
        let r = Ring::xyz();
        Ok(Some(OrthogonalPair {
            f1: SparsePoly::parse(&r, f1)?,
            d1: sig.d1,
            mu1: sig.mu1,
            f2: SparsePoly::parse(&r, f2)?,
            d2: sig.d2,
            mu2: sig.mu2,
        }))
    }

    /// Re-checks degrees, multiplicities, orthogonality and non-divisibility of the pair.
    pub fn validate(&self) -> Result<()> {
        let w = WeightTriple::new(self.a, self.b, self.c)?;
        if let Some(p) = self.pair()? {
            if let Err(msg) = check_pair(&w, &p) {
                bail!("record for {:?}: {msg}", self.triple());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub a_min: u64,
    pub c_max: u64,
    pub mu_cap: u32,
    pub workers: usize,
    pub out: PathBuf,
}

impl ScanConfig {
    pub fn triples(&self) -> Vec<WeightTriple> {
        coprime_triples(self.a_min, self.c_max)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    /// One record per triple of the scanned range.
    pub records: BTreeMap<[u64; 3], ScanRecord>,
    pub computed: usize,
    pub reused: usize,
    /// Existing records that failed to load or re-verify and were recomputed.
    pub rejected: usize,
}

impl ScanOutcome {
    pub fn inconclusive(&self) -> Vec<[u64; 3]> {
        self.records
            .values()
            .filter(|r| r.verdict == Verdict::Inconclusive)
            .map(ScanRecord::triple)
            .collect()
    }

    /// Run-independent summary: no timings and no resume statistics.
    pub fn summary(&self, cfg: &ScanConfig) -> String {
        let inc = self.inconclusive();
        let mut s = format!(
            "scan a_min={} c_max={} mu_cap={}\ntriples: {}\nmori dream: {}\ninconclusive: {}\n",
            cfg.a_min,
            cfg.c_max,
            cfg.mu_cap,
            self.records.len(),
            self.records.len() - inc.len(),
            inc.len()
        );
        for [a, b, c] in inc {
            s += &format!("{a} {b} {c}\n");
        }
        s
    }

    pub fn summary_json(&self, cfg: &ScanConfig) -> serde_json::Value {
        let inc = self.inconclusive();
        serde_json::json!({
            "a_min": cfg.a_min,
            "c_max": cfg.c_max,
            "mu_cap": cfg.mu_cap,
            "triples": self.records.len(),
            "mori_dream": self.records.len() - inc.len(),
            "inconclusive": inc,
        })
    }
}

/// Reads a results file. Unparsable lines (e.g. a line cut short by an interrupted run)
/// are counted and skipped. Later records for the same triple and cap win.
pub fn load_records(path: &Path) -> Result<(Vec<ScanRecord>, usize)> {
    if !path.exists() {
        return Ok((Vec::new(), 0));
    }
    let file = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut records = Vec::new();
    let mut bad = 0;
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<ScanRecord>(&line) {
            Ok(r) => records.push(r),
            Err(_) => bad += 1,
        }
    }
    Ok((records, bad))
}

pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutcome> {
    if cfg.c_max < 3 {
        bail!(wpp_mori::Error::InvalidInput(format!("c_max = {} must be at least 3", cfg.c_max)));
    }
    if let Some(dir) = cfg.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let (existing, mut rejected) = load_records(&cfg.out)?;
    let mut known: BTreeMap<[u64; 3], ScanRecord> = BTreeMap::new();
    for r in existing.into_iter().filter(|r| r.mu_cap == cfg.mu_cap) {
        known.insert(r.triple(), r);
    }

    let mut outcome = ScanOutcome::default();
    let mut todo = Vec::new();
    for w in cfg.triples() {
        match known.remove(&w.as_array()) {
            Some(r) if r.validate().is_ok() => {
                outcome.records.insert(w.as_array(), r);
                outcome.reused += 1;
            }
            Some(_) => {
                rejected += 1;
                todo.push(w);
            }
            None => todo.push(w),
        }
    }
    outcome.rejected = rejected;
    if todo.is_empty() {
        return Ok(outcome);
    }

    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&cfg.out)
        .with_context(|| format!("cannot write {}", cfg.out.display()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()?;
    let (tx, rx) = crossbeam_channel::bounded::<ScanRecord>(4 * cfg.workers.max(1));
    let appender = std::thread::spawn(move || -> Result<Vec<ScanRecord>> {
        let mut done = Vec::new();
        for r in rx {
            writeln!(file, "{}", serde_json::to_string(&r)?)?;
            file.flush()?;
            done.push(r);
        }
        Ok(done)
    });
    pool.install(|| {
        todo.par_iter().for_each_with(tx, |tx, w| {
            // A closed channel means the appender failed; its error is reported below.
            let _ = tx.send(ScanRecord::compute(w, cfg.mu_cap));
        })
    });
    let done = appender
        .join()
        .map_err(|_| anyhow::anyhow!("results appender panicked"))?
        .with_context(|| format!("cannot write {}", cfg.out.display()))?;
    outcome.computed = done.len();
    for r in done {
        outcome.records.insert(r.triple(), r);
    }
    Ok(outcome)
}

/// Results directory: `$WPP_MORI_CACHE`, else `.wpp-mori` in the working directory.
pub fn default_results_path() -> PathBuf {
    let dir = std::env::var_os("WPP_MORI_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".wpp-mori"));
    dir.join("scan.jsonl")
}
