//! Full record of one protocol execution: per-round records, decoy reports,
//! announcement ordering, and both parties' verdicts.

use crate::bellmap::TwoBitKey;
use crate::state::{BellLabel, PauliLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        })
    }
}

/// The three quantum transmissions of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hop {
    AliceCharlie,
    CharlieBob,
    BobAlice,
}

impl std::fmt::Display for Hop {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Hop::AliceCharlie => "alice-charlie",
            Hop::CharlieBob => "charlie-bob",
            Hop::BobAlice => "bob-alice",
        })
    }
}

impl std::str::FromStr for Hop {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alice-charlie" => Ok(Hop::AliceCharlie),
            "charlie-bob" => Ok(Hop::CharlieBob),
            "bob-alice" => Ok(Hop::BobAlice),
            other => Err(crate::error::Error::InvalidArgument(format!(
                "unknown hop {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// A hop's decoy mismatches exceeded the tolerated threshold.
    DecoyError { hop: Hop },
    /// A verified round's XOR did not reproduce the pre-shared key.
    KeyMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Authenticated,
    Rejected(RejectReason),
}

impl Verdict {
    pub fn is_authenticated(&self) -> bool {
        matches!(self, Verdict::Authenticated)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Authenticated => write!(f, "authenticated"),
            Verdict::Rejected(RejectReason::DecoyError { hop }) => {
                write!(f, "rejected(decoy:{hop})")
            }
            Verdict::Rejected(RejectReason::KeyMismatch) => write!(f, "rejected(key-mismatch)"),
        }
    }
}

/// Decoy verification outcome of one hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecoyReport {
    pub hop: Hop,
    pub decoys: usize,
    pub errors: usize,
    pub passed: bool,
}

/// Everything recorded about one authenticated round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundRecord {
    /// 1-based round index.
    pub m: usize,
    pub alice_prepared: BellLabel,
    pub bob_prepared: BellLabel,
    /// Pauli actually applied on qubit 1 (differs from `bob_pauli` only when
    /// an impersonator stands in for the prover).
    pub alice_pauli: PauliLabel,
    pub bob_pauli: PauliLabel,
    pub r14: TwoBitKey,
    pub r23: TwoBitKey,
    pub disclosed_by: Party,
    pub verified_by: Party,
    pub matched: bool,
}

/// Time-ordered log of the announcements and checkpoints of a run. The
/// permutation reveal must come strictly after both Pauli completions; the
/// ordering here is the protocol's security argument, so tests assert it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolEvent {
    PairsPrepared,
    HopTransmitted(Hop),
    DecoysChecked { hop: Hop, errors: usize },
    Aborted { hop: Hop },
    PauliCompleted(Party),
    PermutationAnnounced,
    SequenceRestored,
    BellMeasurementsDone(Party),
    Disclosed(Party),
    VerdictReached(Party),
}

/// Complete record of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub n: usize,
    pub seed: u64,
    pub rounds: Vec<RoundRecord>,
    pub decoy_reports: Vec<DecoyReport>,
    /// The announced mapping (position i of the transmitted sequence moved
    /// to `permutation[i]`), empty if the run aborted before the reveal.
    pub permutation: Vec<usize>,
    pub alice_disclosed: Vec<(usize, TwoBitKey)>,
    pub bob_disclosed: Vec<(usize, TwoBitKey)>,
    pub alice_verdict: Verdict,
    pub bob_verdict: Verdict,
    pub events: Vec<ProtocolEvent>,
}

impl Transcript {
    pub fn both_authenticated(&self) -> bool {
        self.alice_verdict.is_authenticated() && self.bob_verdict.is_authenticated()
    }

    /// True when the run aborted on a decoy threshold violation.
    pub fn decoy_rejected(&self) -> bool {
        matches!(
            self.alice_verdict,
            Verdict::Rejected(RejectReason::DecoyError { .. })
        )
    }

    pub fn total_decoy_errors(&self) -> usize {
        self.decoy_reports.iter().map(|r| r.errors).sum()
    }

    /// Delimited export, one row per measured round.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("m,alice_bell,bob_bell,pauli,r14,r23,disclosed_by,verified_by,match\n");
        for r in &self.rounds {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.m,
                r.alice_prepared,
                r.bob_prepared,
                r.bob_pauli,
                r.r14,
                r.r23,
                r.disclosed_by,
                r.verified_by,
                r.matched
            ));
        }
        out
    }

    /// Multi-line human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("rounds: {}\n", self.n));
        for report in &self.decoy_reports {
            out.push_str(&format!(
                "decoys[{}]: {} checked, {} errors, {}\n",
                report.hop,
                report.decoys,
                report.errors,
                if report.passed { "pass" } else { "FAIL" }
            ));
        }
        for r in &self.rounds {
            out.push_str(&format!(
                "round {}: alice |{}> bob |{}> pauli {} -> r14={} r23={} xor={} verified_by={} {}\n",
                r.m,
                r.alice_prepared,
                r.bob_prepared,
                r.bob_pauli,
                r.r14,
                r.r23,
                r.r14 ^ r.r23,
                r.verified_by,
                if r.matched { "ok" } else { "MISMATCH" }
            ));
        }
        out.push_str(&format!(
            "verdicts: alice={} bob={}\n",
            self.alice_verdict, self.bob_verdict
        ));
        out
    }
}
