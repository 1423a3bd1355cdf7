use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use schurcodes::attack::shortening_size;
use schurcodes::crypto::{self, KeygenOptions};
use schurcodes::experiment::{
    check_decoder, theorem_cases, write_csv, Conjecture1, Distinguisher, Experiment, GrsAttackExperiment,
    HermitianAttackExperiment, RandomControl, ReportRow, SubfieldExperiment, Summary,
};
use schurcodes::io;
use schurcodes::rng::{random_vector, rng_from_seed, trial_seed};
use schurcodes::{
    attack_recover_code, grs_full_attack, hermitian_full_attack, CodeSpec, Error, Field, GrsSpec, HermitianCurve,
    HermitianSpec, LinearCode, Matrix,
};

use crate::{
    AttackArgs, AttackMode, DecryptArgs, EncryptArgs, ExperimentArgs, ExperimentKind, FamilyArg, FamilyArgs,
    KeygenArgs, ReproduceArgs, RunArgs, SourceArg, VerifyArgs,
};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn in_file(path: &Path) -> impl Fn(Error) -> anyhow::Error + '_ {
    move |e| anyhow!("{}: {}", path.display(), e)
}

impl FamilyArgs {
    fn spec(&self, seed: u64) -> Result<CodeSpec> {
        let need = |v: Option<i64>, name: &str| v.ok_or_else(|| anyhow!("--{} is required for this family", name));
        match self.family {
            None => bail!("--family is required"),
            Some(FamilyArg::Hermitian) => {
                let q0 = need(self.q0.map(i64::from), "q0")? as u32;
                Ok(HermitianSpec::new(q0, need(self.m, "m")?)?.into())
            }
            Some(FamilyArg::Grs) => {
                let f = Field::of_order(need(self.q.map(i64::from), "q")? as u32)?;
                let n = need(self.n.map(|x| x as i64), "n")? as usize;
                let k = need(self.k.map(|x| x as i64), "k")? as usize;
                Ok(GrsSpec::random(&f, n, k, seed)?.into())
            }
        }
    }
}

pub fn keygen(a: KeygenArgs) -> Result<ExitCode> {
    if a.family.family.is_none() {
        bail!("--family is required");
    }
    let spec = a.family.spec(a.seed)?;
    let kp = crypto::keygen(&spec, a.l, a.seed, KeygenOptions { t: a.t, permute: a.permute })?;
    write(&a.pk, &io::write_public_key(&kp.public))?;
    write(&a.sk, &io::write_secret_key(&kp.secret))?;
    println!("n={} l={} t={}", kp.public.len(), kp.public.dim(), kp.public.t());
    if kp.resistant_by_square_constraint {
        println!("note: C(l+1,2) < dim C(2E); the closure attack is not expected to apply");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn encrypt(a: EncryptArgs) -> Result<ExitCode> {
    let pk = io::parse_public_key(&read(&a.pk)?).map_err(in_file(&a.pk))?;
    let msg = match &a.msg {
        Some(p) => io::parse_message(pk.field(), &read(p)?).map_err(in_file(p))?,
        None => random_vector(pk.field(), pk.dim(), &mut rng_from_seed(trial_seed(a.seed, 1))),
    };
    if msg.len() != pk.dim() {
        bail!("message has {} symbols, the public key encodes {}", msg.len(), pk.dim());
    }
    let ct = crypto::encrypt(&pk, &msg, a.seed)?;
    write(&a.out, &io::write_ciphertext(&ct))?;
    if let Some(p) = &a.msg_out {
        write(p, &io::write_message(&msg))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn decrypt(a: DecryptArgs) -> Result<ExitCode> {
    let sk = io::parse_secret_key(&read(&a.sk)?).map_err(in_file(&a.sk))?;
    let ct = io::parse_ciphertext(&read(&a.ct)?).map_err(in_file(&a.ct))?;
    if ct.field() != sk.spec().field() {
        bail!("ciphertext field does not match the secret key");
    }
    let msg = match crypto::decrypt(&sk, &ct) {
        Ok(m) => m,
        Err(Error::Decode(msg)) => bail!("decode failure: {}", msg),
        Err(e) => bail!("decode failure: {}", e),
    };
    let text = io::write_message(&msg);
    match &a.out {
        Some(p) => write(p, &text)?,
        None => print!("{}", text),
    }
    Ok(ExitCode::SUCCESS)
}

fn blank_row(seed: u64, family: &str, params: (i64, i64), l: usize) -> ReportRow {
    ReportRow {
        seed,
        family: family.into(),
        q0_or_n: params.0,
        m_or_k: params.1,
        l,
        stage_reached: String::new(),
        success: 0,
        sq_dim: 0,
        elapsed_ms: 0.0,
    }
}

fn isqrt(q: u32) -> Option<u32> {
    let r = (q as f64).sqrt().round() as u32;
    (r * r == q).then_some(r)
}

pub fn attack(a: AttackArgs) -> Result<ExitCode> {
    let pk = io::parse_public_key(&read(&a.pk)?).map_err(in_file(&a.pk))?;
    let c_pub = pk.code();
    let (n, l) = (pk.len(), pk.dim());
    let start = Instant::now();
    let (mut row, recovered) = match a.mode {
        AttackMode::Closure => {
            let mut row = blank_row(a.seed, "closure", (n as i64, l as i64), l);
            let out = attack_recover_code(&c_pub);
            row.sq_dim = out.square_dim;
            let (stage, ok) = if out.degenerate {
                ("closure-degenerate", false)
            } else if out.code == c_pub {
                ("closure-identity", false)
            } else {
                ("closure-grew", true)
            };
            row.stage_reached = stage.into();
            row.success = ok as u8;
            (row, Some(out.code))
        }
        AttackMode::Grs => match grs_full_attack(&pk) {
            Ok(att) => {
                let spec = &att.recovered.spec;
                let mut row = blank_row(a.seed, "grs", (n as i64, spec.dim() as i64), l);
                row.sq_dim = att.square_dim;
                let ok = check_decoder(&pk, &att.decoder, a.ciphertexts, a.seed);
                row.stage_reached = if a.ciphertexts == 0 { "recovered" } else if ok { "decrypted" } else { "decode" }.into();
                row.success = ok as u8;
                (row, Some(spec.code()))
            }
            Err(e) => (failed_row(a.seed, "grs", (n as i64, 0), l, &c_pub, &e), None),
        },
        AttackMode::Hermitian => {
            let m = a.m.ok_or_else(|| anyhow!("--m is required in hermitian mode"))?;
            let q0 = isqrt(pk.field().order()).ok_or_else(|| anyhow!("field order is not a square"))?;
            let curve = HermitianCurve::over(pk.field(), q0)?;
            let oracle = HermitianSpec::on_curve(&curve, m);
            match hermitian_full_attack(&pk, &oracle, a.shortening_trials, a.seed) {
                Ok(att) => {
                    let mut row = blank_row(a.seed, "hermitian", (q0 as i64, m), l);
                    row.sq_dim = att.square_dim;
                    let ok = check_decoder(&pk, &att.decoder, a.ciphertexts, a.seed);
                    row.stage_reached =
                        if a.ciphertexts == 0 { "recovered" } else if ok { "decrypted" } else { "decode" }.into();
                    row.success = ok as u8;
                    if att.shortening_size > 0 {
                        eprintln!("shortening size {}", att.shortening_size);
                    }
                    (row, Some(att.recovered))
                }
                Err(e) => {
                    if shortening_size(m, n) > 0 && a.shortening_trials == 0 {
                        eprintln!("note: deg E > (n-2)/2; consider --shortening-trials");
                    }
                    (failed_row(a.seed, "hermitian", (q0 as i64, m), l, &c_pub, &e), None)
                }
            }
        }
    };
    row.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if let (Some(path), Some(code)) = (&a.out, &recovered) {
        write(path, &io::write_code(code))?;
    }
    emit(&[row.clone()], a.report.as_deref(), !a.no_timing)?;
    if a.strict && !row.succeeded() {
        eprintln!("attack failed at stage {}", row.stage_reached);
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn failed_row(seed: u64, family: &str, params: (i64, i64), l: usize, c_pub: &LinearCode, e: &Error) -> ReportRow {
    let mut row = blank_row(seed, family, params, l);
    row.sq_dim = c_pub.square().dim();
    row.stage_reached = match e {
        Error::Attack { stage, .. } => stage.to_string(),
        _ => "error".into(),
    };
    eprintln!("{}", e);
    row
}

fn emit(rows: &[ReportRow], path: Option<&Path>, timing: bool) -> Result<()> {
    match path {
        Some(p) => {
            let f = fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            write_csv(rows, f, timing)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(rows, &mut lock, timing)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn run_trials(exp: &dyn Experiment, jobs: usize) -> Result<Vec<ReportRow>> {
    if jobs <= 1 {
        return Ok((0..exp.trials()).map(|i| exp.run_trial(i)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    // collect on an indexed parallel iterator keeps trial order
    Ok(pool.install(|| (0..exp.trials()).into_par_iter().map(|i| exp.run_trial(i)).collect()))
}

fn run_and_emit(exp: &dyn Experiment, run: &RunArgs) -> Result<Vec<ReportRow>> {
    if run.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let rows = run_trials(exp, run.jobs)?;
    emit(&rows, run.out.as_deref(), !run.no_timing)?;
    let s = Summary::of(&rows);
    eprintln!("trials={} successes={} frequency={:.3}", s.trials, s.successes, s.frequency());
    Ok(rows)
}

pub fn experiment(a: ExperimentArgs) -> Result<ExitCode> {
    match a.kind {
        ExperimentKind::Conjecture1 { family, l, run } => {
            let exp = Conjecture1::new(family.spec(run.seed)?, l, run.trials, run.seed)?;
            let t = exp.thresholds();
            eprintln!(
                "k={} g={} C(l+1,2)={} 2k+1-g={} 2k-1+g={} dim C(2E)={}",
                exp.enclosing.dim(),
                exp.spec.genus(),
                t.pairs,
                t.conjecture,
                t.attack,
                t.double_dim
            );
            run_and_emit(&exp, &run)?;
        }
        ExperimentKind::Subfield { q, n, k, subfield, run } => {
            let exp = SubfieldExperiment {
                field: Field::of_order(q)?,
                n,
                k,
                subfield_order: subfield,
                trials: run.trials,
                seed: run.seed,
            };
            run_and_emit(&exp, &run)?;
        }
        ExperimentKind::Distinguisher { source, family, l, run } => {
            let exp = match source {
                SourceArg::Random => {
                    let q = family.q.ok_or_else(|| anyhow!("--q is required for random codes"))?;
                    let n = family.n.ok_or_else(|| anyhow!("--n is required for random codes"))?;
                    Distinguisher::random(&Field::of_order(q)?, n, l, run.trials, run.seed)?
                }
                SourceArg::Subcode => Distinguisher::subcode(family.spec(run.seed)?, l, run.trials, run.seed)?,
            };
            eprintln!("expected sq_dim={}", exp.expected_sq_dim());
            run_and_emit(&exp, &run)?;
        }
        ExperimentKind::RandomControl { q, n, l, run } => {
            let exp = RandomControl { field: Field::of_order(q)?, n, l, trials: run.trials, seed: run.seed };
            run_and_emit(&exp, &run)?;
        }
        ExperimentKind::Attack { family, l, t, ciphertexts, shortening_trials, run } => match family.family {
            Some(FamilyArg::Hermitian) => {
                let CodeSpec::Hermitian(spec) = family.spec(run.seed)? else { unreachable!() };
                let exp = HermitianAttackExperiment {
                    spec,
                    l,
                    t,
                    ciphertexts,
                    shortening_trials,
                    trials: run.trials,
                    seed: run.seed,
                };
                run_and_emit(&exp, &run)?;
            }
            Some(FamilyArg::Grs) => {
                let q = family.q.ok_or_else(|| anyhow!("--q is required"))?;
                let (n, k) = family.n.zip(family.k).ok_or_else(|| anyhow!("--n and --k are required"))?;
                let exp = GrsAttackExperiment {
                    field: Field::of_order(q)?,
                    n,
                    k,
                    l,
                    t,
                    ciphertexts,
                    trials: run.trials,
                    seed: run.seed,
                };
                run_and_emit(&exp, &run)?;
            }
            None => bail!("--family is required"),
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn corrupt(code: &LinearCode) -> LinearCode {
    let g = code.generator();
    let f = code.field();
    let mut rows = g.to_rows();
    let last = code.len() - 1;
    rows[0][last] = f.add(rows[0][last], 1);
    LinearCode::span_of(&Matrix::from_rows(f, code.len(), &rows).expect("same shape"))
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let mut q0s = vec![2, 3];
    if a.slow {
        q0s.push(4);
    }
    let (mut total, mut failed) = (0, 0);
    for q0 in q0s {
        let mut cases = theorem_cases(q0)?;
        if a.mutate {
            if let Some(c) = cases.first_mut() {
                c.computed = corrupt(&c.computed);
            }
        }
        for c in &cases {
            let pass = c.passed();
            total += 1;
            failed += (!pass) as usize;
            println!("{} {} q0={} m={}", if pass { "PASS" } else { "FAIL" }, c.statement, c.q0, c.m);
        }
    }
    println!("{} cases, {} failed", total, failed);
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

pub fn reproduce(a: ReproduceArgs) -> Result<ExitCode> {
    let (q0, m) = match a.row {
        7 => (7, 170),
        9 if a.force => (9, 243),
        9 => bail!("the q = 9^2 row has inconsistent parameters; pass --force to run it anyway"),
        other => bail!("no table row for q0 = {}", other),
    };
    let spec = HermitianSpec::new(q0, m)?;
    let code_spec: CodeSpec = spec.clone().into();
    let t = crypto::designed_capacity(&code_spec)?;
    eprintln!(
        "q={} n={} g={} deg E={} dim C(E)={} dim C(E)^perp={} t={} l={}",
        q0 * q0,
        spec.len(),
        spec.genus(),
        m,
        spec.expected_dim().unwrap_or(0),
        spec.len() - spec.expected_dim().unwrap_or(0),
        t,
        a.l
    );
    let exp = HermitianAttackExperiment {
        spec,
        l: a.l,
        t: None,
        ciphertexts: a.ciphertexts,
        shortening_trials: 8,
        trials: a.run.trials,
        seed: a.run.seed,
    };
    let rows = run_and_emit(&exp, &a.run)?;
    let mean = rows.iter().map(|r| r.elapsed_ms).sum::<f64>() / rows.len() as f64;
    eprintln!("mean time per trial {:.1} ms", mean);
    Ok(ExitCode::SUCCESS)
}
