//! Decoy qubits: random eavesdropping probes interleaved into a transmitted
//! sequence, verified by the receiver in the announced bases.

use rand::Rng;

use crate::error::{Error, Result};
use crate::state::{MeasBasis, PureState};

/// A single decoy: its preparation basis, the prepared bit, and the slot it
/// occupies in the augmented sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecoyQubit {
    pub basis: MeasBasis,
    pub bit: u8,
    pub position: usize,
}

/// Interleaving plan of a hop: which slots of the augmented sequence carry
/// decoys; all other slots carry payload in their original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoyLayout {
    pub total_len: usize,
    /// Sorted slot indices occupied by decoys.
    pub decoy_slots: Vec<usize>,
}

impl DecoyLayout {
    pub fn payload_slots(&self) -> Vec<usize> {
        (0..self.total_len)
            .filter(|s| !self.decoy_slots.contains(s))
            .collect()
    }
}

/// Standard interleaving: as many decoys as payload qubits, at uniformly
/// random slots of the doubled sequence, each prepared uniformly from
/// `{|0>, |1>, |+>, |->}`.
pub fn insert_decoys<R: Rng>(
    payload_len: usize,
    rng: &mut R,
) -> Result<(DecoyLayout, Vec<DecoyQubit>)> {
    insert_decoys_with_count(payload_len, payload_len, rng)
}

/// Interleaving with an explicit decoy count; zero decoys degenerates to the
/// bare payload (useful for unit tests).
pub fn insert_decoys_with_count<R: Rng>(
    payload_len: usize,
    decoy_count: usize,
    rng: &mut R,
) -> Result<(DecoyLayout, Vec<DecoyQubit>)> {
    if payload_len == 0 {
        return Err(Error::InvalidArgument(
            "payload must contain at least one qubit".into(),
        ));
    }
    let total_len = payload_len + decoy_count;
    let mut slots: Vec<usize> = rand::seq::index::sample(rng, total_len, decoy_count).into_vec();
    slots.sort_unstable();
    let decoys = slots
        .iter()
        .map(|&position| {
            let (basis, bit) = match rng.gen_range(0..4u8) {
                0 => (MeasBasis::Z, 0),
                1 => (MeasBasis::Z, 1),
                2 => (MeasBasis::X, 0),
                _ => (MeasBasis::X, 1),
            };
            DecoyQubit {
                basis,
                bit,
                position,
            }
        })
        .collect();
    Ok((
        DecoyLayout {
            total_len,
            decoy_slots: slots,
        },
        decoys,
    ))
}

/// The prepared single-qubit state of a decoy, on the given register label.
pub fn decoy_state(decoy: &DecoyQubit, label: usize) -> PureState {
    use num_complex::Complex64;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let (a0, a1) = match (decoy.basis, decoy.bit) {
        (MeasBasis::Z, 0) => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        (MeasBasis::Z, _) => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        (MeasBasis::X, 0) => (s, s),
        (MeasBasis::X, _) => (s, -s),
    };
    PureState::single_qubit(label, a0, a1).expect("decoy amplitudes are normalized")
}

/// Counts mismatches between the receiver's basis measurements and the
/// announced preparations. The caller aborts the hop when the count exceeds
/// its error threshold.
pub fn verify_decoys(measured: &[(MeasBasis, u8)], expected: &[DecoyQubit]) -> Result<usize> {
    if measured.len() != expected.len() {
        return Err(Error::LengthMismatch {
            left: measured.len(),
            right: expected.len(),
        });
    }
    Ok(measured
        .iter()
        .zip(expected)
        .filter(|((basis, bit), decoy)| *basis != decoy.basis || *bit != decoy.bit)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn standard_layout_doubles_the_sequence() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let (layout, decoys) = insert_decoys(4, &mut rng).unwrap();
        assert_eq!(layout.total_len, 8);
        assert_eq!(decoys.len(), 4);
        assert_eq!(layout.payload_slots().len(), 4);
        for d in &decoys {
            assert!(d.position < 8);
        }
    }

    #[test]
    fn zero_decoys_degenerates_to_payload() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let (layout, decoys) = insert_decoys_with_count(4, 0, &mut rng).unwrap();
        assert_eq!(layout.total_len, 4);
        assert!(decoys.is_empty());
        assert_eq!(layout.payload_slots(), vec![0, 1, 2, 3]);
        assert!(insert_decoys(0, &mut rng).is_err());
    }

    #[test]
    fn decoy_positions_are_uniform_over_seeds() {
        // Chi-square test of slot occupancy over 1000 seeds. Sampling 4 of 8
        // slots without replacement needs the finite-population correction
        // (K-1)/(K-k) before comparison with the chi-square quantile.
        let seeds = 1000usize;
        let mut counts = [0usize; 8];
        for seed in 0..seeds {
            let mut rng = ChaCha12Rng::seed_from_u64(seed as u64);
            let (layout, _) = insert_decoys(4, &mut rng).unwrap();
            for s in layout.decoy_slots {
                counts[s] += 1;
            }
        }
        let expected = seeds as f64 * 4.0 / 8.0;
        let raw: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        let corrected = raw * 7.0 / 4.0;
        // 0.999 quantile of chi-square with 7 degrees of freedom.
        assert!(corrected < 24.322, "chi-square statistic {corrected}");
    }

    #[test]
    fn decoy_states_match_their_descriptions() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for basis in [MeasBasis::Z, MeasBasis::X] {
            for bit in 0..2u8 {
                let d = DecoyQubit {
                    basis,
                    bit,
                    position: 0,
                };
                let state = decoy_state(&d, 0);
                // Measuring in the preparation basis always returns the bit.
                for _ in 0..8 {
                    let (b, _) = state.measure_in_basis(0, basis, &mut rng).unwrap();
                    assert_eq!(b, bit);
                }
            }
        }
    }

    #[test]
    fn verify_counts_mismatches() {
        let expected = vec![
            DecoyQubit {
                basis: MeasBasis::Z,
                bit: 0,
                position: 0,
            },
            DecoyQubit {
                basis: MeasBasis::X,
                bit: 1,
                position: 2,
            },
        ];
        assert_eq!(
            verify_decoys(&[(MeasBasis::Z, 0), (MeasBasis::X, 1)], &expected).unwrap(),
            0
        );
        assert_eq!(
            verify_decoys(&[(MeasBasis::Z, 1), (MeasBasis::X, 0)], &expected).unwrap(),
            2
        );
        assert!(verify_decoys(&[(MeasBasis::Z, 0)], &expected).is_err());
    }

    #[test]
    fn intercept_resend_disturbs_a_quarter_of_decoys() {
        // A random-basis measure-and-resend on each decoy flips the verified
        // bit with probability 1/4; Monte Carlo against the closed form.
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let trials = 40_000usize;
        let mut errors = 0usize;
        for _ in 0..trials {
            let (_, decoys) = insert_decoys(1, &mut rng).unwrap();
            let d = decoys[0];
            let state = decoy_state(&d, 0);
            let eve_basis = if rng.gen_bool(0.5) {
                MeasBasis::Z
            } else {
                MeasBasis::X
            };
            let (_, resent) = state.measure_in_basis(0, eve_basis, &mut rng).unwrap();
            let (bit, _) = resent.measure_in_basis(0, d.basis, &mut rng).unwrap();
            if bit != d.bit {
                errors += 1;
            }
        }
        let rate = errors as f64 / trials as f64;
        let bound = crate::attacks::three_sigma_bound(0.25, trials as u64);
        assert!((rate - 0.25).abs() <= bound, "rate {rate}");
    }
}
