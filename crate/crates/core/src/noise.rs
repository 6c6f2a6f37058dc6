//! Collective dephasing and rotation channels on the transmitted particles,
//! their closed-form error probabilities, and sweep generation.
//!
//! Both channels apply the same single-qubit unitary to every qubit that is
//! in transit during a time window. Error probability here always means the
//! outcome mass violating the XOR verification identity of a round.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::bellmap::{bell_to_key, keyed_composite, xor, TwoBitKey};
use crate::error::{Error, Result};
use crate::state::{BellLabel, PureState};

/// Channel configuration: which collective unitary acts on transmitted
/// qubits, with its angle in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseParams {
    None,
    /// `|0> -> |0>`, `|1> -> e^{i phi}|1>` on every transmitted qubit.
    Dephasing {
        phi: f64,
    },
    /// Real rotation by `theta` on every transmitted qubit.
    Rotation {
        theta: f64,
    },
}

impl NoiseParams {
    /// The single-qubit unitary applied per transmitted qubit, if any.
    pub fn unitary(&self) -> Option<[[Complex64; 2]; 2]> {
        let z = Complex64::new(0.0, 0.0);
        match *self {
            NoiseParams::None => None,
            NoiseParams::Dephasing { phi } => Some([
                [Complex64::new(1.0, 0.0), z],
                [z, Complex64::new(phi.cos(), phi.sin())],
            ]),
            NoiseParams::Rotation { theta } => {
                let (s, c) = theta.sin_cos();
                Some([
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ])
            }
        }
    }
}

impl std::fmt::Display for NoiseParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoiseParams::None => write!(f, "none"),
            NoiseParams::Dephasing { phi } => write!(f, "dephasing(phi={:.6}rad)", phi),
            NoiseParams::Rotation { theta } => write!(f, "rotation(theta={:.6}rad)", theta),
        }
    }
}

/// Applies the channel unitary to each listed qubit of the state.
pub fn apply_collective_noise(
    state: &PureState,
    qubits: &[usize],
    params: NoiseParams,
) -> Result<PureState> {
    let Some(u) = params.unitary() else {
        // Still validate the labels so a bad call fails identically in the
        // noiseless configuration.
        for q in qubits {
            if !state.labels().contains(q) {
                return Err(Error::UnknownLabel(*q));
            }
        }
        return Ok(state.clone());
    };
    let mut out = state.clone();
    for &q in qubits {
        out = out.apply_1q(q, &u)?;
    }
    Ok(out)
}

/// Closed-form round error probability under collective dephasing:
/// `(1 - cos 2phi) / 4 = sin^2(phi) / 2`, maximal (1/2) at 90 degrees.
pub fn dephasing_error_probability(phi: f64) -> f64 {
    (1.0 - (2.0 * phi).cos()) / 4.0
}

/// Closed-form round error probability under collective rotation:
/// `2 sin^2(theta) cos^2(theta)`, maximal (1/2) at 45 degrees.
pub fn rotation_error_probability(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    2.0 * s * s * c * c
}

/// Joint Bell-outcome distribution on pairs (1,4),(2,3) of a keyed round
/// composite after the channel acts on the transmitted particles 2 and 4.
/// Noise is applied after the authentication Paulis (the two commute; a
/// before-Paulis variant exists for sensitivity checks).
pub fn noisy_outcome_distribution(
    key_m: TwoBitKey,
    key_m1: TwoBitKey,
    params: NoiseParams,
) -> BTreeMap<(BellLabel, BellLabel), f64> {
    distribution_of(&{
        let composite = keyed_composite(key_m, key_m1);
        apply_collective_noise(&composite, &[2, 4], params)
            .expect("labels 2 and 4 exist in the round register")
    })
}

/// Same channel, applied to the pre-Pauli product state instead. Exposed so
/// the equivalence of the two orders is checkable rather than assumed.
pub fn noisy_outcome_distribution_noise_first(
    key_m: TwoBitKey,
    key_m1: TwoBitKey,
    params: NoiseParams,
) -> BTreeMap<(BellLabel, BellLabel), f64> {
    use crate::bellmap::{key_to_bell, key_to_pauli};
    let alice = PureState::prepare_bell(key_to_bell(key_m1), 1, 2).expect("distinct labels");
    let bob =
        PureState::prepare_bell(key_to_bell(xor(key_m, key_m1)), 3, 4).expect("distinct labels");
    let product = alice.tensor(&bob).expect("disjoint labels");
    let noisy = apply_collective_noise(&product, &[2, 4], params).expect("labels exist");
    let m = key_to_pauli(key_m).matrix();
    let finished = noisy
        .apply_1q(1, &m)
        .and_then(|s| s.apply_1q(3, &m))
        .expect("fixed register");
    distribution_of(&finished)
}

fn distribution_of(state: &PureState) -> BTreeMap<(BellLabel, BellLabel), f64> {
    let probs = state
        .bell_pair_joint_distribution((1, 4), (2, 3))
        .expect("round register has pairs (1,4),(2,3)");
    let mut map = BTreeMap::new();
    for a in BellLabel::ALL {
        for b in BellLabel::ALL {
            map.insert((a, b), probs[a.index()][b.index()]);
        }
    }
    map
}

/// Total outcome mass violating the XOR identity for the m-th key.
pub fn error_mass(distribution: &BTreeMap<(BellLabel, BellLabel), f64>, key_m: TwoBitKey) -> f64 {
    distribution
        .iter()
        .filter(|((b14, b23), _)| xor(bell_to_key(*b14), bell_to_key(*b23)) != key_m)
        .map(|(_, p)| p)
        .sum()
}

/// Which sweep / closed form to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    Dephasing,
    Rotation,
}

impl NoiseKind {
    pub fn params(self, angle: f64) -> NoiseParams {
        match self {
            NoiseKind::Dephasing => NoiseParams::Dephasing { phi: angle },
            NoiseKind::Rotation => NoiseParams::Rotation { theta: angle },
        }
    }

    pub fn analytic(self, angle: f64) -> f64 {
        match self {
            NoiseKind::Dephasing => dephasing_error_probability(angle),
            NoiseKind::Rotation => rotation_error_probability(angle),
        }
    }

    /// Angle domain of the sweep, in degrees.
    pub fn sweep_range_deg(self) -> (f64, f64) {
        match self {
            NoiseKind::Dephasing => (0.0, 180.0),
            NoiseKind::Rotation => (0.0, 90.0),
        }
    }
}

impl std::fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NoiseKind::Dephasing => "dephasing",
            NoiseKind::Rotation => "rotation",
        })
    }
}

/// Solves `analytic(angle) = p_limit` for the two angles bracketing the
/// unsafe region; the channel is considered safe outside `(low, high)`.
/// Angles are radians; `p_limit` must lie strictly inside `(0, 1/2)`.
pub fn tolerable_region(kind: NoiseKind, p_limit: f64) -> Result<(f64, f64)> {
    if !(p_limit > 0.0 && p_limit < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "tolerable error limit must be in (0, 0.5), got {p_limit}"
        )));
    }
    match kind {
        NoiseKind::Dephasing => {
            // sin^2(phi)/2 = p  =>  phi = asin(sqrt(2p)), mirrored about 90 deg.
            let low = (2.0 * p_limit).sqrt().asin();
            Ok((low, std::f64::consts::PI - low))
        }
        NoiseKind::Rotation => {
            // 2 sin^2 cos^2 = sin^2(2 theta)/2 = p, mirrored about 45 deg.
            let low = 0.5 * (2.0 * p_limit).sqrt().asin();
            Ok((low, std::f64::consts::FRAC_PI_2 - low))
        }
    }
}

/// One sweep row: angle in degrees, the closed form, and the simulated error
/// mass of the reference keyed round (keys 11, 00) under the channel.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub angle_deg: f64,
    pub analytic: f64,
    pub simulated: f64,
}

/// Evaluates the channel across its angle domain on an inclusive grid of
/// `steps` points.
pub fn noise_sweep(kind: NoiseKind, steps: usize) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 steps, got {steps}"
        )));
    }
    let (lo, hi) = kind.sweep_range_deg();
    let key_m = TwoBitKey::from_bits(1, 1);
    let key_m1 = TwoBitKey::from_bits(0, 0);
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let angle_deg = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        let angle = angle_deg.to_radians();
        let dist = noisy_outcome_distribution(key_m, key_m1, kind.params(angle));
        rows.push(SweepRow {
            angle_deg,
            analytic: kind.analytic(angle),
            simulated: error_mass(&dist, key_m),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::TOL;

    #[test]
    fn zero_angle_channels_are_identity() {
        let s = PureState::prepare_bell(BellLabel::PhiPlus, 1, 2).unwrap();
        let dp = apply_collective_noise(&s, &[2], NoiseParams::Dephasing { phi: 0.0 }).unwrap();
        assert!(dp.approx_eq_up_to_phase(&s, TOL));
        let rot = apply_collective_noise(&s, &[2], NoiseParams::Rotation { theta: 0.0 }).unwrap();
        assert!(rot.approx_eq_up_to_phase(&s, TOL));
        assert_eq!(
            apply_collective_noise(&s, &[9], NoiseParams::None).unwrap_err(),
            Error::UnknownLabel(9)
        );
    }

    #[test]
    fn dephasing_phases_the_one_state() {
        let phi = 0.7;
        let one = PureState::basis_state(vec![1], &[1]).unwrap();
        let noisy = apply_collective_noise(&one, &[1], NoiseParams::Dephasing { phi }).unwrap();
        let expected = Complex64::new(phi.cos(), phi.sin());
        assert!((noisy.amplitude(&[1]).unwrap() - expected).norm() < TOL);
    }

    #[test]
    fn quarter_rotation_flips_zero() {
        let zero = PureState::basis_state(vec![1], &[0]).unwrap();
        let noisy = apply_collective_noise(
            &zero,
            &[1],
            NoiseParams::Rotation {
                theta: std::f64::consts::FRAC_PI_2,
            },
        )
        .unwrap();
        let one = PureState::basis_state(vec![1], &[1]).unwrap();
        assert!(noisy.approx_eq_up_to_phase(&one, TOL));
    }

    #[test]
    fn dephasing_closed_form_extrema() {
        assert!((dephasing_error_probability(90f64.to_radians()) - 0.5).abs() < TOL);
        assert!(dephasing_error_probability(0.0).abs() < TOL);
        assert!(dephasing_error_probability(180f64.to_radians()).abs() < TOL);
        // sin^2(45 deg)/2 = 1/4
        assert!((dephasing_error_probability(45f64.to_radians()) - 0.25).abs() < TOL);
    }

    #[test]
    fn rotation_closed_form_extrema() {
        assert!((rotation_error_probability(45f64.to_radians()) - 0.5).abs() < TOL);
        assert!(rotation_error_probability(0.0).abs() < TOL);
        assert!(rotation_error_probability(90f64.to_radians()).abs() < TOL);
        // 2 * (1/4) * (3/4) = 3/8
        assert!((rotation_error_probability(30f64.to_radians()) - 0.375).abs() < TOL);
    }

    #[test]
    fn noiseless_distribution_is_uniform_over_correct_outcomes() {
        for key_m in TwoBitKey::ALL {
            for key_m1 in TwoBitKey::ALL {
                let dist = noisy_outcome_distribution(key_m, key_m1, NoiseParams::None);
                let mut correct = 0;
                for ((b14, b23), p) in &dist {
                    if xor(bell_to_key(*b14), bell_to_key(*b23)) == key_m {
                        if *p > TOL {
                            assert!((p - 0.25).abs() < TOL);
                            correct += 1;
                        }
                    } else {
                        assert!(*p < TOL);
                    }
                }
                assert_eq!(correct, 4);
            }
        }
    }

    #[test]
    fn dephasing_error_outcomes_for_reference_keys() {
        let key_m = TwoBitKey::from_bits(1, 1);
        let key_m1 = TwoBitKey::from_bits(0, 0);
        let dist = noisy_outcome_distribution(key_m, key_m1, NoiseParams::Dephasing { phi: 0.9 });
        let error_support: Vec<_> = dist
            .iter()
            .filter(|((b14, b23), p)| {
                **p > TOL && xor(bell_to_key(*b14), bell_to_key(*b23)) != key_m
            })
            .map(|(k, _)| *k)
            .collect();
        assert_eq!(
            error_support,
            vec![
                (BellLabel::PhiPlus, BellLabel::PsiPlus),
                (BellLabel::PhiMinus, BellLabel::PsiMinus),
            ]
        );
    }

    #[test]
    fn rotation_no_error_outcomes_for_identity_pauli_keys() {
        let key_m = TwoBitKey::from_bits(0, 0);
        let key_m1 = TwoBitKey::from_bits(0, 1);
        let dist = noisy_outcome_distribution(key_m, key_m1, NoiseParams::Rotation { theta: 0.4 });
        let good: Vec<_> = dist
            .iter()
            .filter(|((b14, b23), p)| {
                **p > TOL && xor(bell_to_key(*b14), bell_to_key(*b23)) == key_m
            })
            .map(|(k, _)| *k)
            .collect();
        assert_eq!(
            good,
            vec![
                (BellLabel::PhiPlus, BellLabel::PhiPlus),
                (BellLabel::PhiMinus, BellLabel::PhiMinus),
                (BellLabel::PsiPlus, BellLabel::PsiPlus),
                (BellLabel::PsiMinus, BellLabel::PsiMinus),
            ]
        );
    }

    #[test]
    fn tolerable_region_inversions() {
        let (lo, hi) = tolerable_region(NoiseKind::Dephasing, 0.25).unwrap();
        assert!((lo.to_degrees() - 45.0).abs() < 1e-9);
        assert!((hi.to_degrees() - 135.0).abs() < 1e-9);

        let (lo, hi) = tolerable_region(NoiseKind::Rotation, 0.375).unwrap();
        assert!((lo.to_degrees() - 30.0).abs() < 1e-9);
        assert!((hi.to_degrees() - 60.0).abs() < 1e-9);

        // Near the maximum the rotation interval collapses toward 45 deg.
        let (lo, hi) = tolerable_region(NoiseKind::Rotation, 0.5 - 1e-9).unwrap();
        assert!((lo.to_degrees() - 45.0).abs() < 0.01);
        assert!((hi.to_degrees() - 45.0).abs() < 0.01);

        assert!(tolerable_region(NoiseKind::Dephasing, 0.0).is_err());
        assert!(tolerable_region(NoiseKind::Dephasing, 0.5).is_err());
    }

    #[test]
    fn sweep_endpoints_and_extrema() {
        let sweep = noise_sweep(NoiseKind::Dephasing, 19).unwrap();
        assert_eq!(sweep.len(), 19);
        assert!(sweep.first().unwrap().simulated.abs() < TOL);
        assert!(sweep.last().unwrap().simulated.abs() < TOL);
        let max = sweep.iter().map(|r| r.simulated).fold(0.0f64, f64::max);
        assert!((max - 0.5).abs() < TOL);

        let sweep = noise_sweep(NoiseKind::Rotation, 19).unwrap();
        assert!(sweep.first().unwrap().simulated.abs() < TOL);
        assert!(sweep.last().unwrap().simulated.abs() < TOL);

        assert!(noise_sweep(NoiseKind::Rotation, 1).is_err());
    }

    #[test]
    fn pauli_order_does_not_matter() {
        // Channel on particles 2,4 commutes with the authentication Paulis
        // on 1,3; the optional noise-first path must agree exactly.
        let params = NoiseParams::Rotation { theta: 0.33 };
        for key_m in TwoBitKey::ALL {
            for key_m1 in TwoBitKey::ALL {
                let after = noisy_outcome_distribution(key_m, key_m1, params);
                let before = noisy_outcome_distribution_noise_first(key_m, key_m1, params);
                for (k, p) in &after {
                    assert!((p - before[k]).abs() < TOL);
                }
            }
        }
    }
}
