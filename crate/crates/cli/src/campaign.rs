//! Seeded Monte Carlo campaign runner: derived per-trial seeds, aggregated
//! result rows, and the analytic detection curve.

use anyhow::{bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qia_core::attacks::{
    fraudulent_attack_detection, fraudulent_attack_mc, impersonation_analytic_rate,
    impersonation_attack, FakeStateParams,
};
use qia_core::noise::{noise_sweep, NoiseKind};
use qia_core::protocol::{run_protocol, Adversary, Hop, ProtocolConfig};

/// What a campaign executes per repetition.
#[derive(Debug, Clone, PartialEq)]
pub enum CampaignKind {
    /// One honest noiseless protocol run; observed = both authenticated.
    ProtocolHonest { n: usize },
    /// One run against an impersonating prover; observed = rejected.
    ProtocolImpersonation { n: usize },
    /// One run against interception on a hop; observed = decoy-rejected.
    ProtocolIntercept { n: usize, hop: Hop },
    /// A full impersonation attack batch; observed = detection rate.
    AttackImpersonation { n: u32, trials: u64 },
    /// A sampled fraudulent-attack batch; observed = detection rate.
    AttackFraud {
        params: FakeStateParams,
        trials: u64,
    },
    /// Deterministic noise sweep; one row per grid angle.
    NoiseSweep { kind: NoiseKind, steps: usize },
    /// Deterministic swap-table verification; one row per key pair.
    Table,
}

/// A campaign: kind, repetition count, base seed, and an optional path the
/// aggregated rows are written to.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSpec {
    pub kind: CampaignKind,
    pub repetitions: u64,
    pub seed: u64,
    pub output_path: Option<std::path::PathBuf>,
}

/// One aggregated output row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub campaign: &'static str,
    pub repetition: u64,
    pub params: String,
    pub observed: f64,
    pub analytic: f64,
    pub gap: f64,
    pub trials: u64,
}

impl ResultRow {
    fn new(
        campaign: &'static str,
        repetition: u64,
        params: String,
        observed: f64,
        analytic: f64,
        trials: u64,
    ) -> Self {
        ResultRow {
            campaign,
            repetition,
            params,
            observed,
            analytic,
            gap: (observed - analytic).abs(),
            trials,
        }
    }

    pub const CSV_HEADER: &'static str =
        "campaign,repetition,params,observed,analytic,abs_gap,trials";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.campaign,
            self.repetition,
            self.params,
            self.observed,
            self.analytic,
            self.gap,
            self.trials
        )
    }
}

/// Splittable per-trial seed: a splitmix64 step over a golden-ratio offset
/// stream, so trial streams are independent of execution order.
pub fn derive_trial_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs a campaign. Stochastic kinds execute `repetitions` units with
/// derived per-trial seeds; deterministic kinds emit their full row set
/// once. Given the same spec the rows are identical.
pub fn monte_carlo(spec: &CampaignSpec) -> Result<Vec<ResultRow>> {
    if spec.repetitions == 0 {
        bail!("campaign needs at least one repetition");
    }
    let mut rows = Vec::new();
    match &spec.kind {
        CampaignKind::ProtocolHonest { n } => {
            for rep in 0..spec.repetitions {
                let config = ProtocolConfig::new(*n, derive_trial_seed(spec.seed, rep));
                let t = run_protocol(&config)?;
                rows.push(ResultRow::new(
                    "protocol-honest",
                    rep,
                    format!("n={n}"),
                    f64::from(u8::from(t.both_authenticated())),
                    1.0,
                    1,
                ));
            }
        }
        CampaignKind::ProtocolImpersonation { n } => {
            for rep in 0..spec.repetitions {
                let mut config = ProtocolConfig::new(*n, derive_trial_seed(spec.seed, rep));
                config.adversary = Adversary::Impersonation;
                let t = run_protocol(&config)?;
                rows.push(ResultRow::new(
                    "protocol-impersonation",
                    rep,
                    format!("n={n}"),
                    f64::from(u8::from(!t.both_authenticated())),
                    impersonation_analytic_rate(*n as u32),
                    1,
                ));
            }
        }
        CampaignKind::ProtocolIntercept { n, hop } => {
            for rep in 0..spec.repetitions {
                let mut config = ProtocolConfig::new(*n, derive_trial_seed(spec.seed, rep));
                config.adversary = Adversary::InterceptResend { hop: *hop };
                let t = run_protocol(&config)?;
                rows.push(ResultRow::new(
                    "protocol-intercept",
                    rep,
                    format!("n={n};hop={hop}"),
                    f64::from(u8::from(t.decoy_rejected())),
                    1.0 - 0.75f64.powi(*n as i32),
                    1,
                ));
            }
        }
        CampaignKind::AttackImpersonation { n, trials } => {
            for rep in 0..spec.repetitions {
                let mut rng = ChaCha12Rng::seed_from_u64(derive_trial_seed(spec.seed, rep));
                let report = impersonation_attack(*n, *trials, &mut rng)?;
                rows.push(ResultRow::new(
                    "attack-impersonation",
                    rep,
                    format!("n={n}"),
                    report.detection_rate,
                    report.analytic_rate,
                    report.trials,
                ));
            }
        }
        CampaignKind::AttackFraud { params, trials } => {
            for rep in 0..spec.repetitions {
                let mut rng = ChaCha12Rng::seed_from_u64(derive_trial_seed(spec.seed, rep));
                let report = fraudulent_attack_mc(params, *trials, &mut rng)?;
                let (_, p_d) = fraudulent_attack_detection(params)?;
                rows.push(ResultRow::new(
                    "attack-fraud",
                    rep,
                    format!("{params}"),
                    report.detection_rate,
                    p_d,
                    report.trials,
                ));
            }
        }
        CampaignKind::NoiseSweep { kind, steps } => {
            for (i, row) in noise_sweep(*kind, *steps)?.into_iter().enumerate() {
                rows.push(ResultRow::new(
                    "noise-sweep",
                    i as u64,
                    format!("mode={kind};angle_deg={}", row.angle_deg),
                    row.simulated,
                    row.analytic,
                    1,
                ));
            }
        }
        CampaignKind::Table => {
            use qia_core::bellmap::{predicted_xor_correlation, TwoBitKey};
            for key_m in TwoBitKey::ALL {
                for key_m1 in TwoBitKey::ALL {
                    let ok = predicted_xor_correlation(key_m, key_m1);
                    rows.push(ResultRow::new(
                        "table-xor",
                        (key_m.index() * 4 + key_m1.index()) as u64,
                        format!("key_m={key_m};key_m1={key_m1}"),
                        f64::from(u8::from(ok)),
                        1.0,
                        1,
                    ));
                }
            }
        }
    }
    Ok(rows)
}

/// Runs a campaign and, when the spec carries an output path, writes the
/// rows there as CSV.
pub fn run_campaign(spec: &CampaignSpec) -> Result<Vec<ResultRow>> {
    let rows = monte_carlo(spec)?;
    if let Some(path) = &spec.output_path {
        crate::output::write_text(path, &crate::output::result_rows_csv(&rows))?;
    }
    Ok(rows)
}

/// Analytic detection-probability curve `1 - (1/4)^n` for `n = 1..=n_max`.
pub fn detection_curve(n_max: u32) -> Vec<(u32, f64)> {
    (1..=n_max)
        .map(|n| (n, impersonation_analytic_rate(n)))
        .collect()
}
