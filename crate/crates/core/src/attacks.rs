//! Adversary simulators and analytic cross-checks: impersonation without the
//! pre-shared key, intercept-resend information gain (Holevo), and the
//! CNOT-based fraudulent attack with fake qubits.

use num_complex::Complex64;
use rand::Rng;

use crate::bellmap::{key_to_bell, key_to_pauli, keyed_composite, xor, TwoBitKey};
use crate::density::{holevo, DensityMatrix};
use crate::error::{Error, Result};
use crate::state::{BellLabel, PureState, TOL};

/// Aggregated Monte Carlo outcome of an attack campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub attack_kind: String,
    pub trials: u64,
    pub detections: u64,
    pub detection_rate: f64,
    pub analytic_rate: f64,
    pub abs_gap: f64,
}

impl AttackReport {
    pub fn new(kind: &str, trials: u64, detections: u64, analytic_rate: f64) -> Self {
        let detection_rate = detections as f64 / trials as f64;
        AttackReport {
            attack_kind: kind.to_string(),
            trials,
            detections,
            detection_rate,
            analytic_rate,
            abs_gap: (detection_rate - analytic_rate).abs(),
        }
    }

    /// Three-sigma binomial bound around the analytic rate.
    pub fn three_sigma(&self) -> f64 {
        three_sigma_bound(self.analytic_rate, self.trials)
    }

    pub fn within_three_sigma(&self) -> bool {
        self.abs_gap <= self.three_sigma()
    }
}

/// `3 sqrt(p (1-p) / n)`, the comparison bound used by every `--check` mode.
pub fn three_sigma_bound(p: f64, trials: u64) -> f64 {
    3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// The four reference key pairs whose keyed composites make up the
/// equal-weight channel mixture seen by an intercepting eavesdropper.
pub const REFERENCE_KEY_PAIRS: [(u8, u8, u8, u8); 4] =
    [(1, 1, 0, 0), (0, 0, 0, 1), (0, 1, 1, 0), (1, 0, 1, 1)];

fn reference_composites() -> [PureState; 4] {
    REFERENCE_KEY_PAIRS
        .map(|(a, b, c, d)| keyed_composite(TwoBitKey::from_bits(a, b), TwoBitKey::from_bits(c, d)))
}

/// Detection probability of an all-rounds impersonation: `1 - (1/4)^n`.
pub fn impersonation_analytic_rate(n: u32) -> f64 {
    1.0 - 0.25f64.powi(n as i32)
}

/// Round composite when the verifier-side keys are genuine but the
/// prover-side preparation and Pauli come from guessed keys.
fn attack_round_composite(
    true_m: TwoBitKey,
    true_m1: TwoBitKey,
    guess_m: TwoBitKey,
    guess_m1: TwoBitKey,
) -> PureState {
    let eve = PureState::prepare_bell(key_to_bell(guess_m1), 1, 2).expect("distinct labels");
    let bob =
        PureState::prepare_bell(key_to_bell(xor(true_m, true_m1)), 3, 4).expect("distinct labels");
    let state = eve.tensor(&bob).expect("disjoint labels");
    state
        .apply_1q(1, &key_to_pauli(guess_m).matrix())
        .and_then(|s| s.apply_1q(3, &key_to_pauli(true_m).matrix()))
        .expect("fixed register")
}

/// Probability that a single attacked round violates the XOR identity, from
/// the exact outcome distribution. For this protocol it is always 0 or 1:
/// a guess either lands in the equivalence class of the true pair or every
/// measurement branch mismatches.
pub fn impersonation_round_mismatch_probability(
    true_m: TwoBitKey,
    true_m1: TwoBitKey,
    guess_m: TwoBitKey,
    guess_m1: TwoBitKey,
) -> f64 {
    let state = attack_round_composite(true_m, true_m1, guess_m, guess_m1);
    let probs = state
        .bell_pair_joint_distribution((1, 4), (2, 3))
        .expect("round register");
    let mut mismatch = 0.0;
    for b14 in BellLabel::ALL {
        for b23 in BellLabel::ALL {
            if xor(
                crate::bellmap::bell_to_key(b14),
                crate::bellmap::bell_to_key(b23),
            ) != true_m
            {
                mismatch += probs[b14.index()][b23.index()];
            }
        }
    }
    mismatch
}

/// Monte Carlo impersonation campaign. Per trial Eve runs the whole protocol
/// in the prover's place with a uniformly guessed key sequence; a trial
/// counts as detected when any round's records violate the XOR identity.
pub fn impersonation_attack<R: Rng>(n: u32, trials: u64, rng: &mut R) -> Result<AttackReport> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidArgument(
            "impersonation needs n >= 1 and trials >= 1".into(),
        ));
    }
    let mut detections = 0u64;
    for _ in 0..trials {
        let true_keys: Vec<TwoBitKey> = (0..=n)
            .map(|_| TwoBitKey::from_index(rng.gen_range(0..4)))
            .collect();
        let eve_keys: Vec<TwoBitKey> = (0..=n)
            .map(|_| TwoBitKey::from_index(rng.gen_range(0..4)))
            .collect();
        let mut detected = false;
        for m in 0..n as usize {
            let state = attack_round_composite(
                true_keys[m],
                true_keys[m + 1],
                eve_keys[m],
                eve_keys[m + 1],
            );
            let (b14, _, rest) = state.measure_bell_pair(1, 4, rng)?;
            let (b23, _, _) = rest.measure_bell_pair(2, 3, rng)?;
            let r14 = crate::bellmap::bell_to_key(b14);
            let r23 = crate::bellmap::bell_to_key(b23);
            if xor(r14, r23) != true_keys[m] {
                detected = true;
                break;
            }
        }
        if detected {
            detections += 1;
        }
    }
    Ok(AttackReport::new(
        "impersonation",
        trials,
        detections,
        impersonation_analytic_rate(n),
    ))
}

/// Holevo quantity of the equal-weight mixture of the four reference
/// composites, reduced to the transmitted particles {2, 4}, together with
/// the reduced state itself.
pub fn intercept_resend_holevo() -> (f64, DensityMatrix) {
    let reduced: Vec<(f64, DensityMatrix)> = reference_composites()
        .iter()
        .map(|s| {
            (
                0.25,
                DensityMatrix::from_pure(s)
                    .partial_trace(&[2, 4])
                    .expect("particles 2 and 4 exist"),
            )
        })
        .collect();
    let chi = holevo(&reduced).expect("valid equal-weight ensemble");
    let rho24 = DensityMatrix::mixture(&reduced).expect("valid equal-weight ensemble");
    (chi, rho24)
}

/// Same construction with arbitrary priors over the four composites.
pub fn holevo_unequal_priors(priors: &[f64; 4]) -> Result<f64> {
    let reduced: Vec<(f64, DensityMatrix)> = reference_composites()
        .iter()
        .zip(priors)
        .map(|(s, p)| Ok((*p, DensityMatrix::from_pure(s).partial_trace(&[2, 4])?)))
        .collect::<Result<_>>()?;
    holevo(&reduced)
}

/// Eve's fake-state configuration: either two independent single qubits
/// `(a|0>+b|1>) (x) (c|0>+d|1>)` or a joint two-qubit state with amplitudes
/// `a|00>+b|01>+c|10>+d|11>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FakeStateParams {
    SingleQubit {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    },
    Entangled {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    },
}

impl FakeStateParams {
    pub fn single_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        FakeStateParams::SingleQubit {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
            d: Complex64::new(d, 0.0),
        }
    }

    pub fn entangled_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        FakeStateParams::Entangled {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
            d: Complex64::new(d, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FakeStateParams::SingleQubit { a, b, c, d } => {
                if (a.norm_sqr() + b.norm_sqr() - 1.0).abs() > TOL
                    || (c.norm_sqr() + d.norm_sqr() - 1.0).abs() > TOL
                {
                    return Err(Error::BadFakeState);
                }
            }
            FakeStateParams::Entangled { a, b, c, d } => {
                let n = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
                if (n - 1.0).abs() > TOL {
                    return Err(Error::BadFakeState);
                }
            }
        }
        Ok(())
    }

    /// The fake pair on labels (5, 6).
    pub fn fake_pair_state(&self) -> Result<PureState> {
        self.validate()?;
        match *self {
            FakeStateParams::SingleQubit { a, b, c, d } => {
                let q5 = PureState::single_qubit(5, a, b)?;
                let q6 = PureState::single_qubit(6, c, d)?;
                q5.tensor(&q6)
            }
            FakeStateParams::Entangled { a, b, c, d } => {
                PureState::new(vec![5, 6], vec![a, b, c, d])
            }
        }
    }

    /// Closed-form non-detection probability for this configuration.
    pub fn closed_form_p_nd(&self) -> f64 {
        match self {
            FakeStateParams::SingleQubit { a, b, c, d } => {
                0.5 * ((a * c).norm_sqr() + (b * d).norm_sqr())
            }
            FakeStateParams::Entangled { a, d, .. } => 0.5 * (a.norm_sqr() + d.norm_sqr()),
        }
    }
}

impl std::fmt::Display for FakeStateParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FakeStateParams::SingleQubit { a, b, c, d } => write!(
                f,
                "single(a={:.6}, b={:.6}, c={:.6}, d={:.6})",
                a.re, b.re, c.re, d.re
            ),
            FakeStateParams::Entangled { a, b, c, d } => write!(
                f,
                "entangled(a={:.6}, b={:.6}, c={:.6}, d={:.6})",
                a.re, b.re, c.re, d.re
            ),
        }
    }
}

/// Outcome pairs `(Bell on (1,6), Bell on (5,3))` that look like an honest
/// round for the fixed attack keys, so Eve goes unnoticed there.
pub const UNDETECTABLE_OUTCOMES: [(BellLabel, BellLabel); 4] = [
    (BellLabel::PsiPlus, BellLabel::PhiMinus),
    (BellLabel::PsiMinus, BellLabel::PhiPlus),
    (BellLabel::PhiPlus, BellLabel::PsiMinus),
    (BellLabel::PhiMinus, BellLabel::PsiPlus),
];

/// Full six-qubit state of the fraudulent attack at the fixed key pair
/// (11, 00): honest pairs on (1,2),(3,4), fake qubits 5,6 entangled in via
/// CNOTs from the transmitted particles, then the authentication phase
/// flips on 1 and 3.
pub fn fraud_final_state(params: &FakeStateParams) -> Result<PureState> {
    fraud_final_state_for_keys(
        params,
        TwoBitKey::from_bits(1, 1),
        TwoBitKey::from_bits(0, 0),
    )
}

/// The same attack circuit at an arbitrary round key pair.
pub fn fraud_final_state_for_keys(
    params: &FakeStateParams,
    key_m: TwoBitKey,
    key_m1: TwoBitKey,
) -> Result<PureState> {
    let honest = PureState::prepare_bell(key_to_bell(key_m1), 1, 2)?.tensor(
        &PureState::prepare_bell(key_to_bell(xor(key_m, key_m1)), 3, 4)?,
    )?;
    let full = honest.tensor(&params.fake_pair_state()?)?;
    let entangled = full.apply_cnot(2, 5)?.apply_cnot(4, 6)?;
    let p = key_to_pauli(key_m).matrix();
    entangled.apply_1q(1, &p)?.apply_1q(3, &p)
}

/// Joint Bell-outcome distribution over Alice's pair (1,6) and Bob's pair
/// (5,3), with Eve's retained particles (2,4) traced out.
pub fn fraud_outcome_distribution(params: &FakeStateParams) -> Result<[[f64; 4]; 4]> {
    fraud_final_state(params)?.bell_pair_joint_distribution((1, 6), (5, 3))
}

/// Simulated `(p_nd, p_d)`: the probability mass on the four undetectable
/// outcome pairs and its complement.
pub fn fraudulent_attack_detection(params: &FakeStateParams) -> Result<(f64, f64)> {
    let joint = fraud_outcome_distribution(params)?;
    let p_nd: f64 = UNDETECTABLE_OUTCOMES
        .iter()
        .map(|(a, b)| joint[a.index()][b.index()])
        .sum();
    Ok((p_nd, 1.0 - p_nd))
}

/// Extension check: the attack evaluated at an arbitrary key pair, where an
/// outcome goes unnoticed when its records XOR back to the m-th key.
pub fn fraudulent_attack_detection_for_keys(
    params: &FakeStateParams,
    key_m: TwoBitKey,
    key_m1: TwoBitKey,
) -> Result<(f64, f64)> {
    let state = fraud_final_state_for_keys(params, key_m, key_m1)?;
    let joint = state.bell_pair_joint_distribution((1, 6), (5, 3))?;
    let mut p_nd = 0.0;
    for b16 in BellLabel::ALL {
        for b53 in BellLabel::ALL {
            let r = xor(
                crate::bellmap::bell_to_key(b16),
                crate::bellmap::bell_to_key(b53),
            );
            if r == key_m {
                p_nd += joint[b16.index()][b53.index()];
            }
        }
    }
    Ok((p_nd, 1.0 - p_nd))
}

/// Bell outcomes of the three measured pairs (1,6), (5,3), (2,4).
pub type OutcomeTriple = (BellLabel, BellLabel, BellLabel);

/// Exact joint distribution including Eve's own pair (2,4), used to check
/// the structure of the post-measurement composite.
pub fn fraud_joint_with_eve(params: &FakeStateParams) -> Result<Vec<(OutcomeTriple, f64)>> {
    let state = fraud_final_state(params)?;
    let mut rows = Vec::new();
    let p16 = state.bell_pair_probabilities(1, 6)?;
    for b16 in BellLabel::ALL {
        if p16[b16.index()] <= TOL {
            continue;
        }
        let (p_a, rest_a) = state.project_bell_pair(1, 6, b16)?;
        let p53 = rest_a.bell_pair_probabilities(5, 3)?;
        for b53 in BellLabel::ALL {
            if p53[b53.index()] <= TOL {
                continue;
            }
            let (p_b, rest_b) = rest_a.project_bell_pair(5, 3, b53)?;
            let p24 = rest_b.bell_pair_probabilities(2, 4)?;
            for b24 in BellLabel::ALL {
                let p = p_a * p_b * p24[b24.index()];
                if p > TOL {
                    rows.push(((b16, b53, b24), p));
                }
            }
        }
    }
    Ok(rows)
}

/// Samples the attacked round `trials` times and counts detections, for
/// cross-checking the exact probabilities.
pub fn fraudulent_attack_mc<R: Rng>(
    params: &FakeStateParams,
    trials: u64,
    rng: &mut R,
) -> Result<AttackReport> {
    let state = fraud_final_state(params)?;
    let (_, p_d) = fraudulent_attack_detection(params)?;
    let mut detections = 0u64;
    for _ in 0..trials {
        let (b16, _, rest) = state.measure_bell_pair(1, 6, rng)?;
        let (b53, _, _) = rest.measure_bell_pair(5, 3, rng)?;
        if !UNDETECTABLE_OUTCOMES.contains(&(b16, b53)) {
            detections += 1;
        }
    }
    Ok(AttackReport::new("fraud", trials, detections, p_d))
}

/// Which fake-state family to search over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FakeMode {
    SingleQubit,
    Entangled,
}

impl std::fmt::Display for FakeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FakeMode::SingleQubit => "single",
            FakeMode::Entangled => "entangled",
        })
    }
}

/// Grid search for the fake state minimizing the simulated detection
/// probability. Real nonnegative amplitudes only: the detection probability
/// depends on magnitudes, so phases cannot lower the minimum.
pub fn fraudulent_attack_minimize(
    mode: FakeMode,
    resolution: usize,
) -> Result<(FakeStateParams, f64)> {
    if resolution < 8 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be at least 8, got {resolution}"
        )));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    let grid = |i: usize| half_pi * i as f64 / (resolution - 1) as f64;
    let mut best: Option<(FakeStateParams, f64)> = None;
    let mut consider = |params: FakeStateParams| -> Result<()> {
        let (_, p_d) = fraudulent_attack_detection(&params)?;
        if best.as_ref().is_none_or(|(_, b)| p_d < *b) {
            best = Some((params, p_d));
        }
        Ok(())
    };
    match mode {
        FakeMode::SingleQubit => {
            for i in 0..resolution {
                let (sa, ca) = grid(i).sin_cos();
                for j in 0..resolution {
                    let (sb, cb) = grid(j).sin_cos();
                    consider(FakeStateParams::single_real(ca, sa, cb, sb))?;
                }
            }
        }
        FakeMode::Entangled => {
            // Hyperspherical parameterization of the nonnegative unit 3-sphere.
            for i in 0..resolution {
                let (s1, c1) = grid(i).sin_cos();
                for j in 0..resolution {
                    let (s2, c2) = grid(j).sin_cos();
                    for k in 0..resolution {
                        let (s3, c3) = grid(k).sin_cos();
                        consider(FakeStateParams::entangled_real(
                            c1,
                            s1 * c2,
                            s1 * s2 * c3,
                            s1 * s2 * s3,
                        ))?;
                    }
                }
            }
        }
    }
    Ok(best.expect("grid is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn impersonation_analytic_values() {
        assert!((impersonation_analytic_rate(1) - 0.75).abs() < TOL);
        assert!((impersonation_analytic_rate(6) - 0.999755859375).abs() < TOL);
    }

    #[test]
    fn per_round_guess_enumeration() {
        // For any true key pair, exactly 4 of Eve's 16 guesses reproduce the
        // XOR identity; every other guess mismatches in every branch. The
        // mean mismatch over uniform guessing is therefore 3/4.
        for tm in TwoBitKey::ALL {
            for tm1 in TwoBitKey::ALL {
                let mut zero_count = 0;
                let mut total = 0.0;
                for gm in TwoBitKey::ALL {
                    for gm1 in TwoBitKey::ALL {
                        let p = impersonation_round_mismatch_probability(tm, tm1, gm, gm1);
                        assert!(
                            p.abs() < TOL || (p - 1.0).abs() < TOL,
                            "mismatch probability {p} is not 0/1"
                        );
                        if p.abs() < TOL {
                            zero_count += 1;
                        }
                        total += p;
                    }
                }
                assert_eq!(zero_count, 4);
                assert!((total / 16.0 - 0.75).abs() < TOL);
            }
        }
    }

    #[test]
    fn impersonation_monte_carlo_matches_analytic() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let report = impersonation_attack(1, 20_000, &mut rng).unwrap();
        assert!(report.within_three_sigma(), "gap {}", report.abs_gap);
        assert!(report.detections <= report.trials);
    }

    #[test]
    fn impersonation_rejects_degenerate_arguments() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert!(impersonation_attack(0, 10, &mut rng).is_err());
        assert!(impersonation_attack(2, 0, &mut rng).is_err());
    }

    #[test]
    fn intercept_resend_gives_no_information() {
        let (chi, rho24) = intercept_resend_holevo();
        assert!(chi.abs() < TOL);
        let mixed = DensityMatrix::maximally_mixed(vec![2, 4]).unwrap();
        assert!(rho24.approx_eq(&mixed, TOL));
        assert!((rho24.von_neumann_entropy() - 2.0).abs() < TOL);
    }

    #[test]
    fn each_reference_composite_reduces_to_maximally_mixed() {
        let mixed = DensityMatrix::maximally_mixed(vec![2, 4]).unwrap();
        for state in reference_composites() {
            let reduced = DensityMatrix::from_pure(&state)
                .partial_trace(&[2, 4])
                .unwrap();
            assert!(reduced.approx_eq(&mixed, TOL));
        }
    }

    #[test]
    fn fraud_detection_is_key_pair_independent() {
        // The fixed-key analysis extends to all 16 key pairs: the
        // undetectable mass follows the same closed form everywhere.
        let params = FakeStateParams::single_real(0.8, 0.6, 0.28, 0.96);
        let expected = params.closed_form_p_nd();
        for key_m in TwoBitKey::ALL {
            for key_m1 in TwoBitKey::ALL {
                let (p_nd, p_d) =
                    fraudulent_attack_detection_for_keys(&params, key_m, key_m1).unwrap();
                assert!(
                    (p_nd - expected).abs() < TOL,
                    "keys ({key_m},{key_m1}): p_nd {p_nd} vs {expected}"
                );
                assert!((p_nd + p_d - 1.0).abs() < TOL);
            }
        }
        // And the fixed-key entry agrees with the general path.
        let (fixed, _) = fraudulent_attack_detection(&params).unwrap();
        assert!((fixed - expected).abs() < TOL);
    }

    #[test]
    fn unequal_priors_still_give_zero() {
        assert!(holevo_unequal_priors(&[0.25; 4]).unwrap().abs() < TOL);
        // Every reduced component is maximally mixed, so even a point prior
        // yields chi = 0.
        assert!(holevo_unequal_priors(&[1.0, 0.0, 0.0, 0.0]).unwrap().abs() < TOL);
        let chi = holevo_unequal_priors(&[0.7, 0.1, 0.1, 0.1]).unwrap();
        assert!(chi >= -TOL);
        assert!(holevo_unequal_priors(&[0.5, 0.5, 0.5, 0.5]).is_err());
    }

    #[test]
    fn fraud_symmetric_single_qubit_detection() {
        let params = FakeStateParams::single_real(SQRT_HALF, SQRT_HALF, SQRT_HALF, SQRT_HALF);
        let (p_nd, p_d) = fraudulent_attack_detection(&params).unwrap();
        assert!((p_nd - 0.25).abs() < TOL);
        assert!((p_d - 0.75).abs() < TOL);
    }

    #[test]
    fn fraud_bell_fake_state_detection() {
        let params = FakeStateParams::entangled_real(SQRT_HALF, 0.0, 0.0, SQRT_HALF);
        let (p_nd, p_d) = fraudulent_attack_detection(&params).unwrap();
        assert!((p_nd - 0.5).abs() < TOL);
        assert!((p_d - 0.5).abs() < TOL);
    }

    #[test]
    fn fraud_zero_one_fake_states() {
        // a=1,b=0,c=1,d=0: closed form (|ac|^2+|bd|^2)/2 = 1/2.
        let params = FakeStateParams::single_real(1.0, 0.0, 1.0, 0.0);
        let (p_nd, p_d) = fraudulent_attack_detection(&params).unwrap();
        assert!((p_nd - 0.5).abs() < TOL);
        assert!((p_d - 0.5).abs() < TOL);
    }

    #[test]
    fn fraud_rejects_unnormalized_params() {
        let params = FakeStateParams::single_real(1.0, 1.0, 1.0, 0.0);
        assert_eq!(
            fraudulent_attack_detection(&params).unwrap_err(),
            Error::BadFakeState
        );
        let params = FakeStateParams::entangled_real(1.0, 1.0, 0.0, 0.0);
        assert_eq!(params.validate().unwrap_err(), Error::BadFakeState);
    }

    #[test]
    fn fraud_monte_carlo_matches_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let params = FakeStateParams::single_real(SQRT_HALF, SQRT_HALF, SQRT_HALF, SQRT_HALF);
        let report = fraudulent_attack_mc(&params, 20_000, &mut rng).unwrap();
        assert!(report.within_three_sigma(), "gap {}", report.abs_gap);
    }

    #[test]
    fn minimize_rejects_coarse_grids() {
        assert!(fraudulent_attack_minimize(FakeMode::SingleQubit, 7).is_err());
    }
}
