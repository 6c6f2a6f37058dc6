//! Symbolic layer tying two-bit keys to Bell states and Pauli operations,
//! plus the entanglement-swapping lookup table.
//!
//! The swap table is generated numerically from the state-vector engine; the
//! hand-computed expansions in the integration tests act as fixtures against
//! it, not as the source of truth.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{BellCoefficients, BellLabel, PauliLabel, PureState, TOL};

/// One element of the pre-shared key sequence; a pair of bits `(b1, b2)`
/// ordered `00 < 01 < 10 < 11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBitKey(u8);

impl TwoBitKey {
    pub const ALL: [TwoBitKey; 4] = [TwoBitKey(0), TwoBitKey(1), TwoBitKey(2), TwoBitKey(3)];

    pub fn from_bits(b1: u8, b2: u8) -> Self {
        TwoBitKey(((b1 & 1) << 1) | (b2 & 1))
    }

    pub fn from_index(i: usize) -> Self {
        TwoBitKey((i & 0b11) as u8)
    }

    pub fn bits(self) -> (u8, u8) {
        ((self.0 >> 1) & 1, self.0 & 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::BitXor for TwoBitKey {
    type Output = TwoBitKey;

    /// Bitwise exclusive-or of the two key bits.
    fn bitxor(self, rhs: TwoBitKey) -> TwoBitKey {
        TwoBitKey(self.0 ^ rhs.0)
    }
}

impl std::fmt::Display for TwoBitKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (b1, b2) = self.bits();
        write!(f, "{b1}{b2}")
    }
}

impl std::str::FromStr for TwoBitKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        if bytes.len() != 2 || !bytes.iter().all(|b| *b == b'0' || *b == b'1') {
            return Err(Error::InvalidArgument(format!(
                "key must be two bits like 01, got {s:?}"
            )));
        }
        Ok(TwoBitKey::from_bits(bytes[0] - b'0', bytes[1] - b'0'))
    }
}

/// Key-to-Bell-state assignment used when preparing pairs.
pub fn key_to_bell(k: TwoBitKey) -> BellLabel {
    match k.index() {
        0 => BellLabel::PhiPlus,
        1 => BellLabel::PhiMinus,
        2 => BellLabel::PsiPlus,
        _ => BellLabel::PsiMinus,
    }
}

/// Inverse of [`key_to_bell`]; converts a Bell outcome back to classical bits.
pub fn bell_to_key(b: BellLabel) -> TwoBitKey {
    match b {
        BellLabel::PhiPlus => TwoBitKey(0),
        BellLabel::PhiMinus => TwoBitKey(1),
        BellLabel::PsiPlus => TwoBitKey(2),
        BellLabel::PsiMinus => TwoBitKey(3),
    }
}

/// Key-to-Pauli assignment used for the authentication operation.
pub fn key_to_pauli(k: TwoBitKey) -> PauliLabel {
    match k.index() {
        0 => PauliLabel::Identity,
        1 => PauliLabel::X,
        2 => PauliLabel::IY,
        _ => PauliLabel::Z,
    }
}

/// Bitwise XOR; kept as a named operation to mirror the protocol text.
pub fn xor(a: TwoBitKey, b: TwoBitKey) -> TwoBitKey {
    a ^ b
}

/// One term of a swap expansion: Bell labels of pairs (1,4) and (2,3) with
/// the complex coefficient.
pub type SwapTerm = (BellLabel, BellLabel, Complex64);

/// Double-Bell expansions of all 16 products `|b12> (x) |b34>`, derived from
/// the engine rather than hand-coded.
#[derive(Debug, Clone)]
pub struct SwapTable {
    entries: [[Vec<SwapTerm>; 4]; 4],
}

impl SwapTable {
    /// Expands every Bell-pair product on particles (1,2),(3,4) in the
    /// double-Bell basis of pairs (1,4),(2,3).
    pub fn build() -> Self {
        let mut entries: [[Vec<SwapTerm>; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Vec::new()));
        for b12 in BellLabel::ALL {
            for b34 in BellLabel::ALL {
                let coeffs = composite_coefficients(b12, b34, None)
                    .expect("fixed 4-qubit construction cannot fail");
                entries[b12.index()][b34.index()] = coeffs.support();
            }
        }
        SwapTable { entries }
    }

    pub fn entry(&self, b12: BellLabel, b34: BellLabel) -> &[SwapTerm] {
        &self.entries[b12.index()][b34.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (BellLabel, BellLabel, &[SwapTerm])> + '_ {
        BellLabel::ALL.iter().flat_map(move |&a| {
            BellLabel::ALL
                .iter()
                .map(move |&b| (a, b, self.entry(a, b)))
        })
    }

    /// Checks the structural invariants: four terms per entry, all of
    /// magnitude 1/2, with distinct labels on each pair across the terms.
    pub fn validate(&self) -> Result<()> {
        for (a, b, terms) in self.iter() {
            if terms.len() != 4 {
                return Err(Error::InvalidArgument(format!(
                    "entry ({a}, {b}) has {} terms",
                    terms.len()
                )));
            }
            let mut weight = 0.0;
            for (i, (l14, l23, c)) in terms.iter().enumerate() {
                if (c.norm() - 0.5).abs() > TOL {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({a}, {b}) term {l14},{l23} has |coeff| {}",
                        c.norm()
                    )));
                }
                weight += c.norm_sqr();
                for (o14, o23, _) in &terms[..i] {
                    if o14 == l14 || o23 == l23 {
                        return Err(Error::InvalidArgument(format!(
                            "entry ({a}, {b}) repeats a pair label"
                        )));
                    }
                }
            }
            if (weight - 1.0).abs() > TOL {
                return Err(Error::InvalidArgument(format!(
                    "entry ({a}, {b}) has total weight {weight}"
                )));
            }
        }
        Ok(())
    }
}

/// Double-Bell coefficients of `|b12>|b34>`, optionally after applying the
/// same Pauli operation to qubits 1 and 3.
pub fn composite_coefficients(
    b12: BellLabel,
    b34: BellLabel,
    pauli: Option<PauliLabel>,
) -> Result<BellCoefficients> {
    let mut state =
        PureState::prepare_bell(b12, 1, 2)?.tensor(&PureState::prepare_bell(b34, 3, 4)?)?;
    if let Some(p) = pauli {
        let m = p.matrix();
        state = state.apply_1q(1, &m)?.apply_1q(3, &m)?;
    }
    state.bell_coefficients((1, 4), (2, 3))
}

/// The fully keyed composite for round keys `(key_m, key_m1)`: pair (1,2)
/// prepared from `key_m1`, pair (3,4) from `key_m XOR key_m1`, then the
/// `key_m` Pauli on qubits 1 and 3.
pub fn keyed_composite(key_m: TwoBitKey, key_m1: TwoBitKey) -> PureState {
    let alice = PureState::prepare_bell(key_to_bell(key_m1), 1, 2).expect("distinct labels");
    let bob =
        PureState::prepare_bell(key_to_bell(xor(key_m, key_m1)), 3, 4).expect("distinct labels");
    let m = key_to_pauli(key_m).matrix();
    alice
        .tensor(&bob)
        .and_then(|s| s.apply_1q(1, &m))
        .and_then(|s| s.apply_1q(3, &m))
        .expect("fixed 4-qubit construction cannot fail")
}

/// True when every nonzero term of the keyed composite satisfies the
/// verification identity `bits(b14) XOR bits(b23) = key_m`. This is the
/// correctness core of the protocol: both measurement records always XOR
/// back to the m-th key.
pub fn predicted_xor_correlation(key_m: TwoBitKey, key_m1: TwoBitKey) -> bool {
    let coeffs = keyed_composite(key_m, key_m1)
        .bell_coefficients((1, 4), (2, 3))
        .expect("keyed composite is a 4-qubit register");
    coeffs
        .support()
        .iter()
        .all(|(b14, b23, _)| xor(bell_to_key(*b14), bell_to_key(*b23)) == key_m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_bell_assignments() {
        assert_eq!(key_to_bell(TwoBitKey::from_bits(0, 0)), BellLabel::PhiPlus);
        assert_eq!(key_to_bell(TwoBitKey::from_bits(1, 1)), BellLabel::PsiMinus);
        assert_eq!(bell_to_key(BellLabel::PhiMinus), TwoBitKey::from_bits(0, 1));
        assert_eq!(bell_to_key(BellLabel::PsiPlus), TwoBitKey::from_bits(1, 0));
        for k in TwoBitKey::ALL {
            assert_eq!(bell_to_key(key_to_bell(k)), k);
        }
        for b in BellLabel::ALL {
            assert_eq!(key_to_bell(bell_to_key(b)), b);
        }
    }

    #[test]
    fn key_pauli_assignments() {
        assert_eq!(
            key_to_pauli(TwoBitKey::from_bits(0, 0)),
            PauliLabel::Identity
        );
        assert_eq!(key_to_pauli(TwoBitKey::from_bits(0, 1)), PauliLabel::X);
        assert_eq!(key_to_pauli(TwoBitKey::from_bits(1, 0)), PauliLabel::IY);
        assert_eq!(key_to_pauli(TwoBitKey::from_bits(1, 1)), PauliLabel::Z);
    }

    #[test]
    fn xor_matches_worked_cases() {
        let k = |b1, b2| TwoBitKey::from_bits(b1, b2);
        assert_eq!(xor(k(0, 0), k(1, 1)), k(1, 1));
        assert_eq!(xor(k(0, 1), k(1, 0)), k(1, 1));
        for key in TwoBitKey::ALL {
            assert_eq!(xor(key, key), k(0, 0));
        }
    }

    #[test]
    fn key_ordering_and_display() {
        let sorted: Vec<String> = TwoBitKey::ALL.iter().map(|k| k.to_string()).collect();
        assert_eq!(sorted, ["00", "01", "10", "11"]);
        assert!(TwoBitKey::from_bits(0, 1) < TwoBitKey::from_bits(1, 0));
        assert_eq!(
            "10".parse::<TwoBitKey>().unwrap(),
            TwoBitKey::from_bits(1, 0)
        );
        assert!("2".parse::<TwoBitKey>().is_err());
    }

    #[test]
    fn swap_table_is_structurally_sound() {
        let table = SwapTable::build();
        table.validate().unwrap();
    }

    #[test]
    fn swap_entry_for_the_worked_product() {
        let table = SwapTable::build();
        let entry = table.entry(BellLabel::PhiPlus, BellLabel::PsiMinus);
        let term = entry
            .iter()
            .find(|(b14, b23, _)| *b14 == BellLabel::PsiMinus && *b23 == BellLabel::PhiPlus)
            .expect("term present");
        assert!((term.2 - Complex64::new(0.5, 0.0)).norm() < TOL);
    }

    #[test]
    fn swap_entry_for_double_phi_minus() {
        let table = SwapTable::build();
        let entry = table.entry(BellLabel::PhiMinus, BellLabel::PhiMinus);
        let term = entry
            .iter()
            .find(|(b14, b23, _)| *b14 == BellLabel::PsiMinus && *b23 == BellLabel::PsiMinus)
            .expect("term present");
        assert!((term.2 - Complex64::new(-0.5, 0.0)).norm() < TOL);
    }

    #[test]
    fn swap_marginals_are_uniform() {
        let table = SwapTable::build();
        for (_, _, terms) in table.iter() {
            for (_, _, c) in terms {
                assert!((c.norm_sqr() - 0.25).abs() < TOL);
            }
        }
    }

    #[test]
    fn xor_correlation_holds_for_all_key_pairs() {
        for key_m in TwoBitKey::ALL {
            for key_m1 in TwoBitKey::ALL {
                assert!(
                    predicted_xor_correlation(key_m, key_m1),
                    "failed for ({key_m}, {key_m1})"
                );
            }
        }
    }
}
