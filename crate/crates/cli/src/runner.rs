//! Engine dispatch and the bounded-worker fan-out used by range commands.

use cycloprime::baselines::{miller_rabin, OracleConfig};
use cycloprime::engine::baseline_correction_check;
use cycloprime::{
    run_auto, run_general, run_recurrence_p3, run_recurrence_p5, Error, Outcome, Result,
    TestParams, Verdict,
};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Auto,
    General,
    Recurrence,
}

/// Run one target under the selected path. `Recurrence` is only available
/// for p in {3, 5}.
pub fn run_engine(params: &TestParams, mode: RunMode) -> Result<Verdict> {
    match mode {
        RunMode::Auto => run_auto(params),
        RunMode::General => run_general(params),
        RunMode::Recurrence => match params.p {
            3 => run_recurrence_p3(params),
            5 => run_recurrence_p5(params),
            p => Err(Error::UnsupportedP(p)),
        },
    }
}

/// Apply `f` to every item with at most `workers` threads, preserving the
/// input order in the output.
pub fn bounded_map<T, F>(items: &[u32], workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    let slots: Vec<Mutex<Option<T>>> = items.iter().map(|_| Mutex::new(None)).collect();
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let out = f(items[i]);
                *slots[i].lock().expect("result slot poisoned") = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot poisoned").expect("worker filled every slot"))
        .collect()
}

/// Run a whole n-range; results come back in n order.
pub fn search(
    p: u32,
    n_min: u32,
    n_max: u32,
    mode: RunMode,
    workers: usize,
) -> Result<Vec<(TestParams, Verdict)>> {
    let ns: Vec<u32> = (n_min..=n_max).collect();
    bounded_map(&ns, workers, |n| {
        let params = TestParams::new(p, n)?;
        let verdict = run_engine(&params, mode)?;
        Ok((params, verdict))
    })
    .into_iter()
    .collect()
}

/// One verification row: the engine against the oracle, plus the
/// recurrence-vs-general cross-check where both paths exist.
#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub n: u32,
    pub engine: Outcome,
    pub oracle_probably_prime: bool,
    pub modes_agree: Option<bool>,
    pub elapsed_s: f64,
}

impl VerifyRow {
    pub fn agrees(&self) -> bool {
        let verdict_matches = match self.engine {
            Outcome::Prime => self.oracle_probably_prime,
            Outcome::Composite => !self.oracle_probably_prime,
            Outcome::Inapplicable => false,
        };
        verdict_matches && self.modes_agree != Some(false)
    }
}

pub fn verify(
    p: u32,
    n_min: u32,
    n_max: u32,
    workers: usize,
    oracle_seed: Option<u64>,
) -> Result<Vec<VerifyRow>> {
    let cfg = OracleConfig {
        seed: oracle_seed.unwrap_or_else(|| OracleConfig::default().seed),
        ..OracleConfig::default()
    };
    let ns: Vec<u32> = (n_min..=n_max).collect();
    bounded_map(&ns, workers, |n| -> Result<VerifyRow> {
        let params = TestParams::new(p, n)?;
        let start = std::time::Instant::now();
        let engine = run_auto(&params)?;
        let modes_agree = if params.p == 3 || params.p == 5 {
            let general = run_general(&params)?;
            Some(baseline_correction_check(&params, &general, &engine, false)?)
        } else {
            None
        };
        let oracle_probably_prime = miller_rabin(&params.m, &cfg);
        Ok(VerifyRow {
            n,
            engine: engine.outcome,
            oracle_probably_prime,
            modes_agree,
            elapsed_s: start.elapsed().as_secs_f64(),
        })
    })
    .into_iter()
    .collect()
}
