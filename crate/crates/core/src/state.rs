//! Exact state-vector engine for small labeled registers (up to ~6 qubits).
//!
//! A register is an ordered list of distinct integer qubit labels plus a
//! complex amplitude vector of length `2^q`. Basis strings are read with the
//! **leftmost label as the most significant bit**; every sign convention in
//! the crate (Bell expansions, swap tables, noise expansions) depends on this
//! ordering, so it is fixed here and never changes.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Absolute tolerance for algebraic identities at this register size.
pub const TOL: f64 = 1e-10;

/// Probability below which a measurement branch is treated as empty.
const BRANCH_EPS: f64 = 1e-14;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The four Bell states, in the fixed reporting order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    pub fn index(self) -> usize {
        match self {
            BellLabel::PhiPlus => 0,
            BellLabel::PhiMinus => 1,
            BellLabel::PsiPlus => 2,
            BellLabel::PsiMinus => 3,
        }
    }

    /// Amplitudes over the two-qubit basis (00, 01, 10, 11), first qubit of
    /// the pair as the most significant bit.
    pub fn amplitudes(self) -> [Complex64; 4] {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            BellLabel::PhiPlus => [s, z, z, s],
            BellLabel::PhiMinus => [s, z, z, -s],
            BellLabel::PsiPlus => [z, s, s, z],
            BellLabel::PsiMinus => [z, s, -s, z],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "phi+",
            BellLabel::PhiMinus => "phi-",
            BellLabel::PsiPlus => "psi+",
            BellLabel::PsiMinus => "psi-",
        }
    }
}

impl std::fmt::Display for BellLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The gate alphabet used for authentication: identity, bit flip, the real
/// matrix `|0><1| - |1><0|` (written `iY` since it equals i times Pauli Y),
/// and phase flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLabel {
    Identity,
    X,
    IY,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [
        PauliLabel::Identity,
        PauliLabel::X,
        PauliLabel::IY,
        PauliLabel::Z,
    ];

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            PauliLabel::Identity => [[o, z], [z, o]],
            PauliLabel::X => [[z, o], [o, z]],
            PauliLabel::IY => [[z, o], [-o, z]],
            PauliLabel::Z => [[o, z], [z, -o]],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PauliLabel::Identity => "I",
            PauliLabel::X => "X",
            PauliLabel::IY => "iY",
            PauliLabel::Z => "Z",
        }
    }
}

impl std::fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Single-qubit measurement basis (computational or diagonal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasBasis {
    Z,
    X,
}

impl std::fmt::Display for MeasBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MeasBasis::Z => "Z",
            MeasBasis::X => "X",
        })
    }
}

const HADAMARD: [[Complex64; 2]; 2] = [
    [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    ],
    [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
    ],
];

/// A normalized pure state over an ordered register of labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    labels: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from labels and amplitudes, validating the register
    /// invariants (distinct labels, `2^q` amplitudes, unit norm).
    pub fn new(labels: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        if amps.len() != 1 << labels.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << labels.len(),
                got: amps.len(),
            });
        }
        let state = PureState { labels, amps };
        let n = state.norm_sqr();
        if (n - 1.0).abs() > TOL {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(state)
    }

    fn new_unchecked(labels: Vec<usize>, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << labels.len());
        PureState { labels, amps }
    }

    /// Computational basis state `|bits>` over the given labels.
    pub fn basis_state(labels: Vec<usize>, bits: &[u8]) -> Result<Self> {
        if bits.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: bits.len(),
            });
        }
        let mut idx = 0usize;
        for &b in bits {
            idx = (idx << 1) | usize::from(b & 1);
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << labels.len()];
        amps[idx] = Complex64::new(1.0, 0.0);
        PureState::new(labels, amps)
    }

    /// One-qubit state `a0|0> + a1|1>` on a single label.
    pub fn single_qubit(label: usize, a0: Complex64, a1: Complex64) -> Result<Self> {
        PureState::new(vec![label], vec![a0, a1])
    }

    /// The Bell state `label` on the pair `(q1, q2)`, q1 most significant.
    pub fn prepare_bell(label: BellLabel, q1: usize, q2: usize) -> Result<Self> {
        if q1 == q2 {
            return Err(Error::DuplicateLabel(q1));
        }
        PureState::new(vec![q1, q2], label.amplitudes().to_vec())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude of the basis string given as bits in label order.
    pub fn amplitude(&self, bits: &[u8]) -> Result<Complex64> {
        if bits.len() != self.labels.len() {
            return Err(Error::LengthMismatch {
                left: self.labels.len(),
                right: bits.len(),
            });
        }
        let mut idx = 0usize;
        for &b in bits {
            idx = (idx << 1) | usize::from(b & 1);
        }
        Ok(self.amps[idx])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn position(&self, q: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == q)
            .ok_or(Error::UnknownLabel(q))
    }

    /// Bit of index `i` belonging to the label at register position `pos`.
    #[inline]
    fn bit(&self, i: usize, pos: usize) -> usize {
        (i >> (self.labels.len() - 1 - pos)) & 1
    }

    /// Tensor product; `self`'s labels come first in the combined register.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        if self.labels.iter().any(|l| other.labels.contains(l)) {
            return Err(Error::OverlappingLabels);
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let shift = other.labels.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << labels.len()];
        for (ia, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (ib, &b) in other.amps.iter().enumerate() {
                amps[(ia << shift) | ib] = a * b;
            }
        }
        Ok(PureState::new_unchecked(labels, amps))
    }

    /// Applies a single-qubit unitary to qubit `q`. The matrix is rejected if
    /// it is not unitary within `TOL`.
    pub fn apply_1q(&self, q: usize, u: &[[Complex64; 2]; 2]) -> Result<PureState> {
        if !is_unitary_2x2(u) {
            return Err(Error::NonUnitary);
        }
        let pos = self.position(q)?;
        let mask = 1usize << (self.labels.len() - 1 - pos);
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let a0 = self.amps[i];
                let a1 = self.amps[j];
                amps[i] = u[0][0] * a0 + u[0][1] * a1;
                amps[j] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        Ok(PureState::new_unchecked(self.labels.clone(), amps))
    }

    /// CNOT with the given control and target labels.
    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<PureState> {
        if control == target {
            return Err(Error::DuplicateLabel(control));
        }
        let cpos = self.position(control)?;
        let tpos = self.position(target)?;
        let cmask = 1usize << (self.labels.len() - 1 - cpos);
        let tmask = 1usize << (self.labels.len() - 1 - tpos);
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                amps.swap(i, i | tmask);
            }
        }
        Ok(PureState::new_unchecked(self.labels.clone(), amps))
    }

    /// Unnormalized residual vectors over the rest of the register after
    /// projecting the pair `(q1, q2)` onto each Bell state.
    fn bell_residuals(&self, q1: usize, q2: usize) -> Result<([Vec<Complex64>; 4], Vec<usize>)> {
        if q1 == q2 {
            return Err(Error::DuplicateLabel(q1));
        }
        let p1 = self.position(q1)?;
        let p2 = self.position(q2)?;
        let q = self.labels.len();
        let rest: Vec<usize> = self
            .labels
            .iter()
            .copied()
            .filter(|&l| l != q1 && l != q2)
            .collect();
        let rest_dim = 1usize << rest.len();
        let bells: [[Complex64; 4]; 4] = [
            BellLabel::PhiPlus.amplitudes(),
            BellLabel::PhiMinus.amplitudes(),
            BellLabel::PsiPlus.amplitudes(),
            BellLabel::PsiMinus.amplitudes(),
        ];
        let mut residuals = [
            vec![Complex64::new(0.0, 0.0); rest_dim],
            vec![Complex64::new(0.0, 0.0); rest_dim],
            vec![Complex64::new(0.0, 0.0); rest_dim],
            vec![Complex64::new(0.0, 0.0); rest_dim],
        ];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let x1 = self.bit(i, p1);
            let x2 = self.bit(i, p2);
            let mut r = 0usize;
            for pos in 0..q {
                if pos != p1 && pos != p2 {
                    r = (r << 1) | self.bit(i, pos);
                }
            }
            let pair = (x1 << 1) | x2;
            for k in 0..4 {
                let w = bells[k][pair];
                if w != Complex64::new(0.0, 0.0) {
                    residuals[k][r] += w.conj() * a;
                }
            }
        }
        Ok((residuals, rest))
    }

    /// Born probabilities of the four Bell outcomes on the pair `(q1, q2)`.
    pub fn bell_pair_probabilities(&self, q1: usize, q2: usize) -> Result<[f64; 4]> {
        let (residuals, _) = self.bell_residuals(q1, q2)?;
        let mut probs = [0.0f64; 4];
        for k in 0..4 {
            probs[k] = residuals[k].iter().map(|a| a.norm_sqr()).sum();
        }
        Ok(probs)
    }

    /// Deterministic projection of the pair `(q1, q2)` onto one Bell outcome.
    /// The measured qubits leave the register. Requesting an outcome of
    /// (numerically) zero probability is an error.
    pub fn project_bell_pair(
        &self,
        q1: usize,
        q2: usize,
        label: BellLabel,
    ) -> Result<(f64, PureState)> {
        let (residuals, rest) = self.bell_residuals(q1, q2)?;
        let k = label.index();
        let prob: f64 = residuals[k].iter().map(|a| a.norm_sqr()).sum();
        if prob <= BRANCH_EPS {
            return Err(Error::ZeroNormProjection);
        }
        let scale = Complex64::new(1.0 / prob.sqrt(), 0.0);
        let amps = residuals[k].iter().map(|a| a * scale).collect();
        Ok((prob, PureState::new_unchecked(rest, amps)))
    }

    /// Samples a Bell measurement of the pair `(q1, q2)` with Born
    /// probabilities. Returns the outcome label, its probability, and the
    /// post-measurement state with the measured qubits removed.
    pub fn measure_bell_pair<R: Rng>(
        &self,
        q1: usize,
        q2: usize,
        rng: &mut R,
    ) -> Result<(BellLabel, f64, PureState)> {
        let (residuals, rest) = self.bell_residuals(q1, q2)?;
        let mut probs = [0.0f64; 4];
        for k in 0..4 {
            probs[k] = residuals[k].iter().map(|a| a.norm_sqr()).sum();
        }
        let k = sample_index(&probs, rng)?;
        let prob = probs[k];
        let scale = Complex64::new(1.0 / prob.sqrt(), 0.0);
        let amps = residuals[k].iter().map(|a| a * scale).collect();
        Ok((
            BellLabel::ALL[k],
            prob,
            PureState::new_unchecked(rest, amps),
        ))
    }

    /// Expansion of a 4-qubit register in the double Bell basis of the two
    /// given pairs, which must partition the register.
    pub fn bell_coefficients(
        &self,
        pair_a: (usize, usize),
        pair_b: (usize, usize),
    ) -> Result<BellCoefficients> {
        if self.labels.len() != 4 {
            return Err(Error::WrongRegisterSize {
                expected: 4,
                got: self.labels.len(),
            });
        }
        let set = [pair_a.0, pair_a.1, pair_b.0, pair_b.1];
        for (i, l) in set.iter().enumerate() {
            if set[..i].contains(l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        for l in &set {
            self.position(*l)?;
        }
        let (_, table) = self.double_bell_residuals(pair_a, pair_b)?;
        let mut coeffs = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (a, row) in coeffs.iter_mut().enumerate() {
            for (b, c) in row.iter_mut().enumerate() {
                *c = table[a][b][0];
            }
        }
        Ok(BellCoefficients { coeffs })
    }

    /// Joint Born distribution of Bell outcomes on two disjoint pairs, with
    /// any remaining qubits summed over. Entry `[a][b]` is the probability of
    /// outcome `(BellLabel::ALL[a], BellLabel::ALL[b])`.
    pub fn bell_pair_joint_distribution(
        &self,
        pair_a: (usize, usize),
        pair_b: (usize, usize),
    ) -> Result<[[f64; 4]; 4]> {
        let (_, table) = self.double_bell_residuals(pair_a, pair_b)?;
        let mut probs = [[0.0f64; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                probs[a][b] = table[a][b].iter().map(|c| c.norm_sqr()).sum();
            }
        }
        Ok(probs)
    }

    /// Residual amplitudes over the rest of the register for each pair of
    /// Bell outcomes on `pair_a` and `pair_b`.
    #[allow(clippy::type_complexity)]
    fn double_bell_residuals(
        &self,
        pair_a: (usize, usize),
        pair_b: (usize, usize),
    ) -> Result<(Vec<usize>, [[Vec<Complex64>; 4]; 4])> {
        let pa = (self.position(pair_a.0)?, self.position(pair_a.1)?);
        let pb = (self.position(pair_b.0)?, self.position(pair_b.1)?);
        let used = [pa.0, pa.1, pb.0, pb.1];
        for (i, p) in used.iter().enumerate() {
            if used[..i].contains(p) {
                return Err(Error::DuplicateLabel(self.labels[*p]));
            }
        }
        let q = self.labels.len();
        let rest: Vec<usize> = (0..q)
            .filter(|p| !used.contains(p))
            .map(|p| self.labels[p])
            .collect();
        let rest_dim = 1usize << rest.len();
        let bells: [[Complex64; 4]; 4] = [
            BellLabel::PhiPlus.amplitudes(),
            BellLabel::PhiMinus.amplitudes(),
            BellLabel::PsiPlus.amplitudes(),
            BellLabel::PsiMinus.amplitudes(),
        ];
        let mut table: [[Vec<Complex64>; 4]; 4] = std::array::from_fn(|_| {
            std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); rest_dim])
        });
        for (i, &amp) in self.amps.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let xa = (self.bit(i, pa.0) << 1) | self.bit(i, pa.1);
            let xb = (self.bit(i, pb.0) << 1) | self.bit(i, pb.1);
            let mut r = 0usize;
            for pos in 0..q {
                if !used.contains(&pos) {
                    r = (r << 1) | self.bit(i, pos);
                }
            }
            for a in 0..4 {
                let wa = bells[a][xa];
                if wa == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for b in 0..4 {
                    let wb = bells[b][xb];
                    if wb != Complex64::new(0.0, 0.0) {
                        table[a][b][r] += (wa * wb).conj() * amp;
                    }
                }
            }
        }
        Ok((rest, table))
    }

    /// Measures qubit `q` in the given basis. The qubit collapses but stays
    /// in the register, so the particle can be forwarded afterwards (decoy
    /// checks and intercept-resend both need this).
    pub fn measure_in_basis<R: Rng>(
        &self,
        q: usize,
        basis: MeasBasis,
        rng: &mut R,
    ) -> Result<(u8, PureState)> {
        match basis {
            MeasBasis::Z => self.measure_z(q, rng),
            MeasBasis::X => {
                let rotated = self.apply_1q(q, &HADAMARD)?;
                let (bit, collapsed) = rotated.measure_z(q, rng)?;
                Ok((bit, collapsed.apply_1q(q, &HADAMARD)?))
            }
        }
    }

    fn measure_z<R: Rng>(&self, q: usize, rng: &mut R) -> Result<(u8, PureState)> {
        let pos = self.position(q)?;
        let mask = 1usize << (self.labels.len() - 1 - pos);
        let p1: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        let outcome = usize::from(sample_index(&[1.0 - p1, p1], rng)? == 1);
        let keep = if outcome == 1 { mask } else { 0 };
        let prob = if outcome == 1 { p1 } else { 1.0 - p1 };
        let scale = Complex64::new(1.0 / prob.sqrt(), 0.0);
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i & mask == keep {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((
            outcome as u8,
            PureState::new_unchecked(self.labels.clone(), amps),
        ))
    }

    /// True when `other` equals `self` up to a global phase: the best-fit
    /// phase is computed from the overlap and the maximum amplitude deviation
    /// compared against `tol`.
    pub fn approx_eq_up_to_phase(&self, other: &PureState, tol: f64) -> bool {
        if self.labels != other.labels {
            return false;
        }
        let overlap: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        if overlap.norm() < tol {
            return false;
        }
        let phase = overlap / overlap.norm();
        self.amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (phase * a - b).norm() <= tol)
    }
}

/// Double-Bell expansion coefficients of a 4-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct BellCoefficients {
    coeffs: [[Complex64; 4]; 4],
}

impl BellCoefficients {
    pub fn get(&self, a: BellLabel, b: BellLabel) -> Complex64 {
        self.coeffs[a.index()][b.index()]
    }

    /// Iterates over all 16 `(first-pair label, second-pair label, coefficient)`
    /// entries in the fixed label order.
    pub fn iter(&self) -> impl Iterator<Item = (BellLabel, BellLabel, Complex64)> + '_ {
        BellLabel::ALL.iter().flat_map(move |&a| {
            BellLabel::ALL
                .iter()
                .map(move |&b| (a, b, self.coeffs[a.index()][b.index()]))
        })
    }

    /// Entries with `|coeff|` above the engine tolerance.
    pub fn support(&self) -> Vec<(BellLabel, BellLabel, Complex64)> {
        self.iter().filter(|(_, _, c)| c.norm() > TOL).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.iter().map(|(_, _, c)| c.norm_sqr()).sum()
    }
}

fn is_unitary_2x2(u: &[[Complex64; 2]; 2]) -> bool {
    // U^dagger U == I entrywise within TOL.
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let s: Complex64 = u.iter().map(|row| row[i].conj() * row[j]).sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((s - Complex64::new(expect, 0.0)).norm());
        }
    }
    dev <= TOL
}

/// Samples an index from an unnormalized probability slice, skipping
/// numerically empty branches.
fn sample_index<R: Rng>(probs: &[f64], rng: &mut R) -> Result<usize> {
    let total: f64 = probs.iter().sum();
    if total <= BRANCH_EPS {
        return Err(Error::ZeroNormProjection);
    }
    let u: f64 = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (k, &p) in probs.iter().enumerate() {
        if p <= BRANCH_EPS {
            continue;
        }
        acc += p;
        last = Some(k);
        if u < acc {
            return Ok(k);
        }
    }
    // Float round-off can leave u just above the accumulated total.
    last.ok_or(Error::ZeroNormProjection)
}
