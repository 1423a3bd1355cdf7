//! Seeded trial runners and the CSV report format.
//!
//! Trial `i` of a run with seed `s` uses the seed `s ^ i` and nothing else,
//! so trials can run in any order and still produce identical rows.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::attack::{distinguish, elapsed_ms, hermitian_full_attack};
use crate::code::{random_full_rank, LinearCode};
use crate::crypto::{encrypt, keygen, pair_count, KeygenOptions, MessageDecoder, PublicKey};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::grs::GrsSpec;
use crate::hermitian::HermitianSpec;
use crate::rng::{random_vector, rng_from_seed, trial_seed};
use crate::sidelnikov::grs_full_attack;
use crate::spec::CodeSpec;
use crate::subfield::subfield_resistance;

pub const CSV_HEADER: [&str; 9] =
    ["seed", "family", "q0_or_n", "m_or_k", "l", "stage_reached", "success", "sq_dim", "elapsed_ms"];

/// One CSV line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub seed: u64,
    pub family: String,
    pub q0_or_n: i64,
    pub m_or_k: i64,
    pub l: usize,
    pub stage_reached: String,
    pub success: u8,
    pub sq_dim: usize,
    #[serde(serialize_with = "fixed_ms")]
    pub elapsed_ms: f64,
}

fn fixed_ms<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.3}", v))
}

impl ReportRow {
    pub fn succeeded(&self) -> bool {
        self.success == 1
    }
}

/// Writes rows with a header; `timing = false` zeroes `elapsed_ms` so the
/// output depends only on seeds and parameters.
pub fn write_csv<W: Write>(rows: &[ReportRow], out: W, timing: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        if timing {
            w.serialize(row)?;
        } else {
            w.serialize(ReportRow { elapsed_ms: 0.0, ..row.clone() })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[ReportRow], timing: bool) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf, timing)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub successes: usize,
}

impl Summary {
    pub fn of(rows: &[ReportRow]) -> Self {
        Summary { trials: rows.len(), successes: rows.iter().filter(|r| r.succeeded()).count() }
    }

    pub fn frequency(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

/// A batch of independent seeded trials.
pub trait Experiment: Sync {
    fn trials(&self) -> usize;
    fn run_trial(&self, index: usize) -> ReportRow;
}

/// Runs every trial in index order.
pub fn run_sequential(exp: &dyn Experiment) -> Vec<ReportRow> {
    (0..exp.trials()).map(|i| exp.run_trial(i)).collect()
}

fn row(seed: u64, family: &str, params: (i64, i64), l: usize) -> ReportRow {
    ReportRow {
        seed,
        family: family.to_string(),
        q0_or_n: params.0,
        m_or_k: params.1,
        l,
        stage_reached: String::new(),
        success: 0,
        sq_dim: 0,
        elapsed_ms: 0.0,
    }
}

fn finish(mut r: ReportRow, stage: &str, success: bool, start: Instant) -> ReportRow {
    r.stage_reached = stage.to_string();
    r.success = success as u8;
    r.elapsed_ms = elapsed_ms(start);
    r
}

/// Thresholds relevant to the square of an `l`-dimensional subcode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    /// `C(l+1, 2)`.
    pub pairs: usize,
    /// `2k + 1 − g`.
    pub conjecture: i64,
    /// `2k − 1 + g`.
    pub attack: i64,
    /// `dim C(2E)`.
    pub double_dim: usize,
}

/// Frequency of `C^(2) = C(2E)` for random `l`-dimensional subcodes.
pub struct Conjecture1 {
    pub spec: CodeSpec,
    pub enclosing: LinearCode,
    pub double: LinearCode,
    pub l: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Conjecture1 {
    pub fn new(spec: CodeSpec, l: usize, trials: usize, seed: u64) -> Result<Self> {
        let enclosing = spec.code();
        if l == 0 || l > enclosing.dim() {
            return Err(Error::param(format!("l = {} outside 1..={}", l, enclosing.dim())));
        }
        let double = spec.double_code();
        Ok(Conjecture1 { spec, enclosing, double, l, trials, seed })
    }

    pub fn thresholds(&self) -> Thresholds {
        let k = self.enclosing.dim() as i64;
        let g = self.spec.genus() as i64;
        Thresholds {
            pairs: pair_count(self.l),
            conjecture: 2 * k + 1 - g,
            attack: 2 * k - 1 + g,
            double_dim: self.double.dim(),
        }
    }
}

impl Experiment for Conjecture1 {
    fn trials(&self) -> usize {
        self.trials
    }

    fn run_trial(&self, i: usize) -> ReportRow {
        let start = Instant::now();
        let seed = trial_seed(self.seed, i as u64);
        let mut r = row(seed, &self.spec.family().to_string(), self.spec.report_params(), self.l);
        let sub = self.enclosing.random_subcode(self.l, seed).expect("l checked at construction");
        let square = sub.square();
        r.sq_dim = square.dim();
        let ok = square == self.double;
        finish(r, if ok { "square-equals-double" } else { "square-deficient" }, ok, start)
    }
}

/// What a distinguisher trial samples.
#[derive(Clone, Debug)]
pub enum DistinguisherSource {
    /// Uniformly random `[n, l]` codes.
    Random { field: Arc<Field>, n: usize },
    /// Random `l`-dimensional subcodes of a structured code.
    Subcode { spec: CodeSpec, enclosing: LinearCode, double_dim: usize },
}

/// Success means the observed square dimension is the one predicted for the
/// source: `min(n, C(l+1,2))` for random codes, `dim C(2E)` for subcodes.
pub struct Distinguisher {
    pub source: DistinguisherSource,
    pub l: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Distinguisher {
    pub fn random(field: &Arc<Field>, n: usize, l: usize, trials: usize, seed: u64) -> Result<Self> {
        if l == 0 || l > n {
            return Err(Error::param(format!("l = {} outside 1..={}", l, n)));
        }
        Ok(Distinguisher { source: DistinguisherSource::Random { field: field.clone(), n }, l, trials, seed })
    }

    pub fn subcode(spec: CodeSpec, l: usize, trials: usize, seed: u64) -> Result<Self> {
        let enclosing = spec.code();
        if l == 0 || l > enclosing.dim() {
            return Err(Error::param(format!("l = {} outside 1..={}", l, enclosing.dim())));
        }
        let double_dim = spec.double_code().dim();
        Ok(Distinguisher { source: DistinguisherSource::Subcode { spec, enclosing, double_dim }, l, trials, seed })
    }

    pub fn expected_sq_dim(&self) -> usize {
        match &self.source {
            DistinguisherSource::Random { n, .. } => (*n).min(pair_count(self.l)),
            DistinguisherSource::Subcode { double_dim, .. } => *double_dim,
        }
    }
}

impl Experiment for Distinguisher {
    fn trials(&self) -> usize {
        self.trials
    }

    fn run_trial(&self, i: usize) -> ReportRow {
        let start = Instant::now();
        let seed = trial_seed(self.seed, i as u64);
        let (mut r, code) = match &self.source {
            DistinguisherSource::Random { field, n } => {
                let g = random_full_rank(field, self.l, *n, seed).expect("l ≤ n checked");
                (row(seed, "random", (*n as i64, self.l as i64), self.l), LinearCode::span_of(&g))
            }
            DistinguisherSource::Subcode { spec, enclosing, .. } => (
                row(seed, &spec.family().to_string(), spec.report_params(), self.l),
                enclosing.random_subcode(self.l, seed).expect("l checked"),
            ),
        };
        let report = distinguish(&code);
        r.sq_dim = report.sq_dim;
        let ok = report.sq_dim == self.expected_sq_dim();
        finish(r, &report.verdict.to_string(), ok, start)
    }
}

/// Random `[n, l]` codes should be their own 2-closure.
pub struct RandomControl {
    pub field: Arc<Field>,
    pub n: usize,
    pub l: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Experiment for RandomControl {
    fn trials(&self) -> usize {
        self.trials
    }

    fn run_trial(&self, i: usize) -> ReportRow {
        let start = Instant::now();
        let seed = trial_seed(self.seed, i as u64);
        let mut r = row(seed, "random", (self.n as i64, self.l as i64), self.l);
        let c = match random_full_rank(&self.field, self.l, self.n, seed) {
            Ok(g) => LinearCode::span_of(&g),
            Err(_) => return finish(r, "invalid-parameters", false, start),
        };
        let out = crate::attack::attack_recover_code(&c);
        r.sq_dim = out.square_dim;
        let (stage, ok) = if out.degenerate {
            ("closure-degenerate", false)
        } else if out.code == c {
            ("closure-identity", true)
        } else {
            ("closure-grew", false)
        };
        finish(r, stage, ok, start)
    }
}

/// Subfield subcodes of random GRS codes, attacked after extension of scalars.
pub struct SubfieldExperiment {
    pub field: Arc<Field>,
    pub n: usize,
    pub k: usize,
    pub subfield_order: u32,
    pub trials: usize,
    pub seed: u64,
}

impl Experiment for SubfieldExperiment {
    fn trials(&self) -> usize {
        self.trials
    }

    fn run_trial(&self, i: usize) -> ReportRow {
        let start = Instant::now();
        let seed = trial_seed(self.seed, i as u64);
        let mut r = row(seed, "grs", (self.n as i64, self.k as i64), 0);
        let report = GrsSpec::random(&self.field, self.n, self.k, seed)
            .and_then(|s| subfield_resistance(&s.code(), self.subfield_order));
        let report = match report {
            Ok(rep) => rep,
            Err(_) => return finish(r, "invalid-parameters", false, start),
        };
        r.l = report.subcode_dim;
        r.sq_dim = report.square_dim;
        let stage = if report.trivial {
            "trivial-instance"
        } else if report.degenerate {
            "closure-degenerate"
        } else if report.proper_subcode {
            "closure-proper-subcode"
        } else if report.resistant {
            "closure-differs"
        } else {
            "closure-recovered"
        };
        finish(r, stage, report.resistant && !report.trivial, start)
    }
}

/// Encrypts `count` fresh random messages and checks the attacker's decoder.
pub fn check_decoder(pk: &PublicKey, decoder: &MessageDecoder, count: usize, seed: u64) -> bool {
    let f = pk.field();
    (0..count).all(|j| {
        let mut rng = rng_from_seed(trial_seed(seed, (j as u64 + 1) << 32));
        let msg: Vec<Elem> = random_vector(f, pk.dim(), &mut rng);
        let ct = match encrypt(pk, &msg, rng.gen()) {
            Ok(ct) => ct,
            Err(_) => return false,
        };
        decoder.decrypt(&ct).map(|m| m == msg).unwrap_or(false)
    })
}

/// Full key-recovery trials against Hermitian subcode keys.
pub struct HermitianAttackExperiment {
    pub spec: HermitianSpec,
    pub l: usize,
    pub t: Option<usize>,
    pub ciphertexts: usize,
    pub shortening_trials: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Experiment for HermitianAttackExperiment {
    fn trials(&self) -> usize {
        self.trials
    }

    fn run_trial(&self, i: usize) -> ReportRow {
        let start = Instant::now();
        let seed = trial_seed(self.seed, i as u64);
        let spec: CodeSpec = self.spec.clone().into();
        let mut r = row(seed, "hermitian", spec.report_params(), self.l);
        let kp = match keygen(&spec, self.l, seed, KeygenOptions { t: self.t, permute: false }) {
            Ok(kp) => kp,
            Err(_) => return finish(r, "keygen", false, start),
        };
        let attack = match hermitian_full_attack(&kp.public, &self.spec, self.shortening_trials, seed) {
            Ok(a) => a,
            Err(e) => {
                r.sq_dim = kp.public.code().square().dim();
                return finish(r, failure_stage(&e), false, start);
            }
        };
        r.sq_dim = attack.square_dim;
        let ok = check_decoder(&kp.public, &attack.decoder, self.ciphertexts, seed);
        finish(r, if ok { "decrypted" } else { "decode" }, ok, start)
    }
}

/// Full key-recovery trials against GRS subcode keys; each trial draws a
/// fresh GRS code.
pub struct GrsAttackExperiment {
    pub field: Arc<Field>,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub t: Option<usize>,
    pub ciphertexts: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Experiment for GrsAttackExperiment {
    fn trials(&self) -> usize {
        self.trials
    }

    fn run_trial(&self, i: usize) -> ReportRow {
        let start = Instant::now();
        let seed = trial_seed(self.seed, i as u64);
        let mut r = row(seed, "grs", (self.n as i64, self.k as i64), self.l);
        let kp = GrsSpec::random(&self.field, self.n, self.k, seed)
            .and_then(|s| keygen(&s.into(), self.l, seed, KeygenOptions { t: self.t, permute: false }));
        let kp = match kp {
            Ok(kp) => kp,
            Err(_) => return finish(r, "keygen", false, start),
        };
        let attack = match grs_full_attack(&kp.public) {
            Ok(a) => a,
            Err(e) => {
                r.sq_dim = kp.public.code().square().dim();
                return finish(r, failure_stage(&e), false, start);
            }
        };
        r.sq_dim = attack.square_dim;
        let ok = check_decoder(&kp.public, &attack.decoder, self.ciphertexts, seed);
        finish(r, if ok { "decrypted" } else { "decode" }, ok, start)
    }
}

fn failure_stage(e: &Error) -> &'static str {
    match e {
        Error::Attack { stage, .. } => stage,
        _ => "error",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statement {
    /// `C(mP∞)^(2) = C(2mP∞)`.
    SquareLaw,
    /// `closure₂(C(mP∞)) = C(mP∞)`.
    ClosureIdentity,
}

impl std::fmt::Display for Statement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Statement::SquareLaw => "square-law",
            Statement::ClosureIdentity => "closure-identity",
        })
    }
}

/// One instance of a theorem-level equality on a Hermitian code.
#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub q0: u32,
    pub m: i64,
    pub statement: Statement,
    pub computed: LinearCode,
    pub expected: LinearCode,
}

impl TheoremCase {
    pub fn passed(&self) -> bool {
        self.computed == self.expected
    }
}

/// Every `m ≥ 2g+1` with `2m ≤ n+2g−2` (square law) and, where
/// `2m ≤ n−2`, the closure identity.
pub fn theorem_cases(q0: u32) -> Result<Vec<TheoremCase>> {
    let base = HermitianSpec::new(q0, 0)?;
    let n = base.len() as i64;
    let g = base.genus() as i64;
    let mut cases = Vec::new();
    let mut m = 2 * g + 1;
    while 2 * m <= n + 2 * g - 2 {
        let spec = base.with_degree(m);
        let code = spec.code();
        cases.push(TheoremCase {
            q0,
            m,
            statement: Statement::SquareLaw,
            computed: code.square(),
            expected: spec.with_degree(2 * m).code(),
        });
        if 2 * m <= n - 2 {
            cases.push(TheoremCase {
                q0,
                m,
                statement: Statement::ClosureIdentity,
                computed: code.closure(2)?,
                expected: code,
            });
        }
        m += 1;
    }
    Ok(cases)
}
