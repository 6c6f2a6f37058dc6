//! The three-party authentication run: Bell-pair preparation from the
//! pre-shared keys, decoy-protected transmissions through the untrusted
//! intermediary, the keyed Pauli operations, Bell measurements, and the
//! split disclosure that lets both parties verify each other simultaneously.

mod decoy;
mod permutation;
mod transcript;

pub use decoy::{
    decoy_state, insert_decoys, insert_decoys_with_count, verify_decoys, DecoyLayout, DecoyQubit,
};
pub use permutation::Permutation;
pub use transcript::{
    DecoyReport, Hop, Party, ProtocolEvent, RejectReason, RoundRecord, Transcript, Verdict,
};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::bellmap::{bell_to_key, key_to_bell, key_to_pauli, xor, TwoBitKey};
use crate::error::{Error, Result};
use crate::noise::NoiseParams;
use crate::state::{MeasBasis, PureState};

/// The pre-shared authentication key sequence; `rounds() + 1` two-bit keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeySequence {
    keys: Vec<TwoBitKey>,
}

impl KeySequence {
    pub fn new(keys: Vec<TwoBitKey>) -> Result<Self> {
        if keys.len() < 2 {
            return Err(Error::KeySequenceTooShort(keys.len()));
        }
        Ok(KeySequence { keys })
    }

    /// Uniformly random sequence supporting `rounds` rounds.
    pub fn random<R: Rng>(rounds: usize, rng: &mut R) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::KeySequenceTooShort(1));
        }
        Ok(KeySequence {
            keys: (0..=rounds)
                .map(|_| TwoBitKey::from_index(rng.gen_range(0..4)))
                .collect(),
        })
    }

    pub fn rounds(&self) -> usize {
        self.keys.len() - 1
    }

    /// 1-based key accessor, `m` in `1..=rounds()+1`.
    pub fn key(&self, m: usize) -> TwoBitKey {
        self.keys[m - 1]
    }

    pub fn keys(&self) -> &[TwoBitKey] {
        &self.keys
    }
}

impl std::fmt::Display for KeySequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.keys.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl std::str::FromStr for KeySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let keys = s
            .split(',')
            .map(|part| part.trim().parse::<TwoBitKey>())
            .collect::<Result<Vec<_>>>()?;
        KeySequence::new(keys)
    }
}

/// Adversary hook applied during the quantum transmissions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adversary {
    None,
    /// Eve runs the prover side with a uniformly guessed key sequence.
    Impersonation,
    /// Eve measures every qubit transiting the hop in a random Z/X basis and
    /// resends the collapsed qubit.
    InterceptResend {
        hop: Hop,
    },
}

impl std::fmt::Display for Adversary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Adversary::None => write!(f, "none"),
            Adversary::Impersonation => write!(f, "impersonation"),
            Adversary::InterceptResend { hop } => write!(f, "intercept-resend:{hop}"),
        }
    }
}

/// Configuration of one protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    /// Number of authenticated rounds (the key sequence has `n + 1` keys).
    pub n: usize,
    /// Maximum tolerated decoy mismatches per hop before aborting.
    pub decoy_error_threshold: usize,
    pub seed: u64,
    pub adversary: Adversary,
    pub noise: NoiseParams,
    /// Fixed keys; drawn from the seed when absent.
    pub keys: Option<KeySequence>,
}

impl ProtocolConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        ProtocolConfig {
            n,
            decoy_error_threshold: 0,
            seed,
            adversary: Adversary::None,
            noise: NoiseParams::None,
            keys: None,
        }
    }

    /// Parses the plain-text `key=value` form (one pair per line, `#`
    /// comments allowed).
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut n = None;
        let mut config = ProtocolConfig::new(0, 0);
        let mut noise_kind = "none".to_string();
        let mut angle_deg = 0.0f64;
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("expected key=value, got {line:?}"))
            })?;
            let value = value.trim();
            match key.trim() {
                "n" => n = Some(parse_num(value, "n")?),
                "decoy_error_threshold" => {
                    config.decoy_error_threshold = parse_num(value, "decoy_error_threshold")?
                }
                "seed" => {
                    config.seed = value
                        .parse::<u64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad seed {value:?}")))?
                }
                "adversary" => config.adversary = parse_adversary(value)?,
                "noise" => noise_kind = value.to_string(),
                "angle_deg" => {
                    angle_deg = value
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad angle_deg {value:?}")))?
                }
                "keys" => config.keys = Some(value.parse()?),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown config key {other:?}"
                    )))
                }
            }
        }
        config.noise = match noise_kind.as_str() {
            "none" => NoiseParams::None,
            "dephasing" => NoiseParams::Dephasing {
                phi: angle_deg.to_radians(),
            },
            "rotation" => NoiseParams::Rotation {
                theta: angle_deg.to_radians(),
            },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown noise kind {other:?}"
                )))
            }
        };
        config.n = n.ok_or_else(|| Error::InvalidArgument("config is missing n".into()))?;
        Ok(config)
    }

    /// Canonical `key=value` rendering; `from_kv_str` round-trips it.
    pub fn to_kv_string(&self) -> String {
        let mut out = format!(
            "n={}\nseed={}\ndecoy_error_threshold={}\nadversary={}\n",
            self.n, self.seed, self.decoy_error_threshold, self.adversary
        );
        match self.noise {
            NoiseParams::None => out.push_str("noise=none\n"),
            NoiseParams::Dephasing { phi } => out.push_str(&format!(
                "noise=dephasing\nangle_deg={}\n",
                phi.to_degrees()
            )),
            NoiseParams::Rotation { theta } => out.push_str(&format!(
                "noise=rotation\nangle_deg={}\n",
                theta.to_degrees()
            )),
        }
        if let Some(keys) = &self.keys {
            out.push_str(&format!("keys={keys}\n"));
        }
        out
    }
}

fn parse_num(value: &str, name: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::InvalidArgument(format!("bad {name} {value:?}")))
}

fn parse_adversary(value: &str) -> Result<Adversary> {
    match value {
        "none" => Ok(Adversary::None),
        "impersonation" => Ok(Adversary::Impersonation),
        other => {
            if let Some(hop) = other.strip_prefix("intercept-resend:") {
                Ok(Adversary::InterceptResend { hop: hop.parse()? })
            } else {
                Err(Error::InvalidArgument(format!(
                    "unknown adversary {other:?}"
                )))
            }
        }
    }
}

/// Step-1 preparation of round `m` (1-based): the prover's pair on (1,2)
/// from the (m+1)-th key and the verifier's pair on (3,4) from the XOR of
/// the m-th and (m+1)-th keys.
pub fn prepare_round(keys: &KeySequence, m: usize) -> Result<(PureState, PureState)> {
    if m == 0 || m > keys.rounds() {
        return Err(Error::RoundOutOfRange {
            index: m,
            rounds: keys.rounds(),
        });
    }
    let alice = PureState::prepare_bell(key_to_bell(keys.key(m + 1)), 1, 2)?;
    let bob = PureState::prepare_bell(key_to_bell(xor(keys.key(m), keys.key(m + 1))), 3, 4)?;
    Ok((alice, bob))
}

/// Step-5 authentication operation: the Pauli selected by the m-th key on
/// qubits 1 and 3 of the round register.
pub fn apply_auth_paulis(round_state: &PureState, key_m: TwoBitKey) -> Result<PureState> {
    let m = key_to_pauli(key_m).matrix();
    round_state.apply_1q(1, &m)?.apply_1q(3, &m)
}

/// Step-5 measurements: Bell outcomes of pairs (1,4) and (2,3) as two-bit
/// records.
pub fn measure_round<R: Rng>(state: &PureState, rng: &mut R) -> Result<(TwoBitKey, TwoBitKey)> {
    let (b14, _, rest) = state.measure_bell_pair(1, 4, rng)?;
    let (b23, _, _) = rest.measure_bell_pair(2, 3, rng)?;
    Ok((bell_to_key(b14), bell_to_key(b23)))
}

/// Step-3 reordering of the transmitted sequence (bookkeeping on round
/// indices or particle references).
pub fn charlie_permute<T>(seq: Vec<T>, pi: &Permutation) -> Result<Vec<T>> {
    pi.apply(seq)
}

/// Result of the step-6/7 disclosure: each party's verdict, the XOR
/// sequences they computed, and the per-round bookkeeping for the
/// transcript.
#[derive(Debug, Clone, PartialEq)]
pub struct DisclosureOutcome {
    pub alice_verdict: Verdict,
    pub bob_verdict: Verdict,
    /// Rounds verified by Alice: `(m, r14 XOR r23)`.
    pub r_a: Vec<(usize, TwoBitKey)>,
    /// Rounds verified by Bob: `(m, r23 XOR r14)`.
    pub r_b: Vec<(usize, TwoBitKey)>,
    pub alice_disclosed: Vec<(usize, TwoBitKey)>,
    pub bob_disclosed: Vec<(usize, TwoBitKey)>,
    /// Per-round `(disclosed_by, verified_by, matched)` in round order.
    pub round_flags: Vec<(Party, Party, bool)>,
}

/// Step 6 and 7. Alice discloses a uniformly random half (rounded down) of
/// her record positions; Bob discloses the complement of his. Each party
/// XORs the other's announcement with its own record and compares against
/// the pre-shared key; every round is verified by exactly one party.
pub fn disclose_and_verify<R: Rng>(
    r14: &[TwoBitKey],
    r23: &[TwoBitKey],
    keys: &KeySequence,
    rng: &mut R,
) -> Result<DisclosureOutcome> {
    if r14.len() != r23.len() {
        return Err(Error::LengthMismatch {
            left: r14.len(),
            right: r23.len(),
        });
    }
    if r14.len() != keys.rounds() {
        return Err(Error::LengthMismatch {
            left: r14.len(),
            right: keys.rounds(),
        });
    }
    let n = r14.len();
    let mut alice_set: Vec<usize> = rand::seq::index::sample(rng, n, n / 2).into_vec();
    alice_set.sort_unstable();

    let mut outcome = DisclosureOutcome {
        alice_verdict: Verdict::Authenticated,
        bob_verdict: Verdict::Authenticated,
        r_a: Vec::new(),
        r_b: Vec::new(),
        alice_disclosed: Vec::new(),
        bob_disclosed: Vec::new(),
        round_flags: Vec::with_capacity(n),
    };
    for idx in 0..n {
        let m = idx + 1;
        let value = xor(r14[idx], r23[idx]);
        let matched = value == keys.key(m);
        if alice_set.binary_search(&idx).is_ok() {
            // Alice announced r14[m]; Bob verifies.
            outcome.alice_disclosed.push((m, r14[idx]));
            outcome.r_b.push((m, value));
            if !matched {
                outcome.bob_verdict = Verdict::Rejected(RejectReason::KeyMismatch);
            }
            outcome
                .round_flags
                .push((Party::Alice, Party::Bob, matched));
        } else {
            // Bob announced r23[m]; Alice verifies.
            outcome.bob_disclosed.push((m, r23[idx]));
            outcome.r_a.push((m, value));
            if !matched {
                outcome.alice_verdict = Verdict::Rejected(RejectReason::KeyMismatch);
            }
            outcome
                .round_flags
                .push((Party::Bob, Party::Alice, matched));
        }
    }
    Ok(outcome)
}

/// Per-hop channel effects in transit order: collective noise first, then
/// any intercept-resend measurement at the eavesdropping point.
struct Channel<'a> {
    noise: NoiseParams,
    intercepted: bool,
    rng: &'a mut ChaCha12Rng,
}

impl Channel<'_> {
    fn transmit(&mut self, state: PureState, qubit: usize) -> Result<PureState> {
        let mut state = crate::noise::apply_collective_noise(&state, &[qubit], self.noise)?;
        if self.intercepted {
            let basis = if self.rng.gen_bool(0.5) {
                MeasBasis::Z
            } else {
                MeasBasis::X
            };
            let (_, collapsed) = state.measure_in_basis(qubit, basis, self.rng)?;
            state = collapsed;
        }
        Ok(state)
    }
}

/// Sends one augmented sequence (payload plus fresh decoys) across a hop,
/// applies the channel hooks in slot order, and runs the receiver's decoy
/// verification.
#[allow(clippy::too_many_arguments)]
fn transmit_hop(
    hop: Hop,
    qubit: usize,
    config: &ProtocolConfig,
    rounds: &mut [PureState],
    rng: &mut ChaCha12Rng,
    events: &mut Vec<ProtocolEvent>,
    decoy_reports: &mut Vec<DecoyReport>,
) -> Result<()> {
    let n = rounds.len();
    let (layout, decoys) = insert_decoys(n, rng)?;
    let mut channel = Channel {
        noise: match hop {
            // The collective unitary hits the transmitted particles once;
            // the intermediary's forwarding hop is modeled clean.
            Hop::CharlieBob => NoiseParams::None,
            _ => config.noise,
        },
        intercepted: config.adversary == (Adversary::InterceptResend { hop }),
        rng,
    };
    let mut decoy_states: Vec<PureState> = decoys.iter().map(|d| decoy_state(d, 0)).collect();
    let payload_slots = layout.payload_slots();
    let mut payload_rank = 0usize;
    let mut decoy_rank = 0usize;
    for slot in 0..layout.total_len {
        if payload_slots.get(payload_rank) == Some(&slot) {
            let state = rounds[payload_rank].clone();
            rounds[payload_rank] = channel.transmit(state, qubit)?;
            payload_rank += 1;
        } else {
            let state = decoy_states[decoy_rank].clone();
            decoy_states[decoy_rank] = channel.transmit(state, 0)?;
            decoy_rank += 1;
        }
    }
    // Receiver measures each decoy in the announced basis.
    let measured: Vec<(MeasBasis, u8)> = decoys
        .iter()
        .zip(&decoy_states)
        .map(|(d, s)| {
            let (bit, _) = s.measure_in_basis(0, d.basis, channel.rng)?;
            Ok((d.basis, bit))
        })
        .collect::<Result<_>>()?;
    let errors = verify_decoys(&measured, &decoys)?;
    events.push(ProtocolEvent::HopTransmitted(hop));
    events.push(ProtocolEvent::DecoysChecked { hop, errors });
    decoy_reports.push(DecoyReport {
        hop,
        decoys: decoys.len(),
        errors,
        passed: errors <= config.decoy_error_threshold,
    });
    Ok(())
}

/// Executes a full run and returns its transcript. Identical configurations
/// (including the seed) produce identical transcripts.
pub fn run_protocol(config: &ProtocolConfig) -> Result<Transcript> {
    if config.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if let Adversary::InterceptResend {
        hop: Hop::CharlieBob,
    } = config.adversary
    {
        return Err(Error::InvalidArgument(
            "intercept-resend acts on the alice-charlie or bob-alice hop".into(),
        ));
    }
    let n = config.n;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let keys = match &config.keys {
        Some(k) => {
            if k.rounds() != n {
                return Err(Error::LengthMismatch {
                    left: k.rounds(),
                    right: n,
                });
            }
            k.clone()
        }
        None => KeySequence::random(n, &mut rng)?,
    };
    let eve_keys = match config.adversary {
        Adversary::Impersonation => Some(KeySequence::random(n, &mut rng)?),
        _ => None,
    };
    let prover_keys = eve_keys.as_ref().unwrap_or(&keys);

    let mut events = Vec::new();
    let mut decoy_reports = Vec::new();

    // Step 1: Bell pair sequences; each round is an independent register.
    let mut rounds: Vec<PureState> = Vec::with_capacity(n);
    let mut prepared = Vec::with_capacity(n);
    for m in 1..=n {
        let alice_label = key_to_bell(prover_keys.key(m + 1));
        let bob_label = key_to_bell(xor(keys.key(m), keys.key(m + 1)));
        prepared.push((alice_label, bob_label));
        let alice = PureState::prepare_bell(alice_label, 1, 2)?;
        let bob = PureState::prepare_bell(bob_label, 3, 4)?;
        rounds.push(alice.tensor(&bob)?);
    }
    events.push(ProtocolEvent::PairsPrepared);

    // Step 2: both transmissions, with the channel hooks of this run.
    // Particle-2 sequence to Charlie; particle-4 sequence to Alice.
    transmit_hop(
        Hop::AliceCharlie,
        2,
        config,
        &mut rounds,
        &mut rng,
        &mut events,
        &mut decoy_reports,
    )?;
    transmit_hop(
        Hop::BobAlice,
        4,
        config,
        &mut rounds,
        &mut rng,
        &mut events,
        &mut decoy_reports,
    )?;

    let abort = |hop: Hop, mut events: Vec<ProtocolEvent>, decoy_reports: Vec<DecoyReport>| {
        events.push(ProtocolEvent::Aborted { hop });
        let verdict = Verdict::Rejected(RejectReason::DecoyError { hop });
        Transcript {
            n,
            seed: config.seed,
            rounds: Vec::new(),
            decoy_reports,
            permutation: Vec::new(),
            alice_disclosed: Vec::new(),
            bob_disclosed: Vec::new(),
            alice_verdict: verdict,
            bob_verdict: verdict,
            events,
        }
    };

    // Step 3: Charlie's decoy check gates the run, then the secret
    // reordering of the particle-2 sequence and a fresh decoy layer.
    if !decoy_reports[0].passed {
        return Ok(abort(Hop::AliceCharlie, events, decoy_reports));
    }
    let pi = Permutation::random(n, &mut rng);
    let sequence_order: Vec<usize> = charlie_permute((0..n).collect(), &pi)?;
    transmit_hop(
        Hop::CharlieBob,
        2,
        config,
        &mut rounds,
        &mut rng,
        &mut events,
        &mut decoy_reports,
    )?;

    // Step 4: the receiving-side decoy checks.
    if !decoy_reports[1].passed {
        return Ok(abort(Hop::BobAlice, events, decoy_reports));
    }
    if !decoy_reports[2].passed {
        return Ok(abort(Hop::CharlieBob, events, decoy_reports));
    }

    // Step 5: keyed Paulis on qubits 1 and 3, then the permutation reveal,
    // then the Bell measurements. The reveal must stay strictly after the
    // Pauli completions.
    for (idx, round) in rounds.iter_mut().enumerate() {
        let m = idx + 1;
        let state = round.apply_1q(1, &key_to_pauli(prover_keys.key(m)).matrix())?;
        *round = state.apply_1q(3, &key_to_pauli(keys.key(m)).matrix())?;
    }
    events.push(ProtocolEvent::PauliCompleted(Party::Alice));
    events.push(ProtocolEvent::PauliCompleted(Party::Bob));
    events.push(ProtocolEvent::PermutationAnnounced);
    let restored = pi.inverse().apply(sequence_order.clone())?;
    debug_assert!(restored.iter().copied().eq(0..n));
    events.push(ProtocolEvent::SequenceRestored);

    let mut r14 = Vec::with_capacity(n);
    let mut r23 = Vec::with_capacity(n);
    for round in &rounds {
        let (a, b) = measure_round(round, &mut rng)?;
        r14.push(a);
        r23.push(b);
    }
    events.push(ProtocolEvent::BellMeasurementsDone(Party::Alice));
    events.push(ProtocolEvent::BellMeasurementsDone(Party::Bob));

    // Steps 6 and 7: split disclosure and simultaneous verification. The
    // verdicts are computed from the actual records, so an impersonated
    // prover side is still judged against the genuine keys.
    let disclosure = disclose_and_verify(&r14, &r23, &keys, &mut rng)?;
    events.push(ProtocolEvent::Disclosed(Party::Alice));
    events.push(ProtocolEvent::Disclosed(Party::Bob));
    events.push(ProtocolEvent::VerdictReached(Party::Alice));
    events.push(ProtocolEvent::VerdictReached(Party::Bob));

    let rounds_records = (0..n)
        .map(|idx| {
            let m = idx + 1;
            let (disclosed_by, verified_by, matched) = disclosure.round_flags[idx];
            RoundRecord {
                m,
                alice_prepared: prepared[idx].0,
                bob_prepared: prepared[idx].1,
                alice_pauli: key_to_pauli(prover_keys.key(m)),
                bob_pauli: key_to_pauli(keys.key(m)),
                r14: r14[idx],
                r23: r23[idx],
                disclosed_by,
                verified_by,
                matched,
            }
        })
        .collect();

    Ok(Transcript {
        n,
        seed: config.seed,
        rounds: rounds_records,
        decoy_reports,
        permutation: pi.mapping().to_vec(),
        alice_disclosed: disclosure.alice_disclosed,
        bob_disclosed: disclosure.bob_disclosed,
        alice_verdict: disclosure.alice_verdict,
        bob_verdict: disclosure.bob_verdict,
        events,
    })
}
