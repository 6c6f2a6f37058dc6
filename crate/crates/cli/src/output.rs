//! Text and file rendering: the swap table, the XOR-correlation check, the
//! worked example walkthrough, and comma-delimited data files.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};

use qia_core::attacks::AttackReport;
use qia_core::bellmap::{
    bell_to_key, composite_coefficients, key_to_bell, key_to_pauli, xor, SwapTable, TwoBitKey,
};
use qia_core::noise::SweepRow;
use qia_core::state::BellLabel;

use crate::campaign::ResultRow;

/// The 16-entry swap table as text, one product per line.
pub fn render_swap_table(table: &SwapTable) -> String {
    let mut out =
        String::from("entanglement swap table: |b>12 (x) |b>34 expanded on pairs (1,4),(2,3)\n");
    for (b12, b34, terms) in table.iter() {
        let _ = write!(out, "|{b12}>12 (x) |{b34}>34 =");
        for (l14, l23, c) in terms {
            let _ = write!(out, "  {:+.2} |{l14}>14|{l23}>23", c.re);
        }
        out.push('\n');
    }
    out
}

/// The 64-row verification-identity check: every key pair, every outcome
/// branch, the XOR value, and whether it reproduces the m-th key.
pub fn render_xor_check() -> String {
    let mut out = String::from("xor correlation check: bits(b14) xor bits(b23) must equal key_m\n");
    let mut failures = 0;
    for key_m in TwoBitKey::ALL {
        for key_m1 in TwoBitKey::ALL {
            let coeffs = composite_coefficients(
                key_to_bell(key_m1),
                key_to_bell(xor(key_m, key_m1)),
                Some(key_to_pauli(key_m)),
            )
            .expect("fixed 4-qubit construction");
            for (b14, b23, _) in coeffs.support() {
                let value = xor(bell_to_key(b14), bell_to_key(b23));
                let ok = value == key_m;
                if !ok {
                    failures += 1;
                }
                let _ = writeln!(
                    out,
                    "key_m={key_m} key_m+1={key_m1}  |{b14}>14 (x) |{b23}>23  {} ^ {} = {value}  {}",
                    bell_to_key(b14),
                    bell_to_key(b23),
                    if ok { "ok" } else { "MISMATCH" }
                );
            }
        }
    }
    let _ = writeln!(out, "{} cases, {failures} mismatches", 64);
    out
}

/// Walkthrough of the two-key worked example (keys 11 and 00).
pub fn render_demo() -> String {
    let key_m = TwoBitKey::from_bits(1, 1);
    let key_m1 = TwoBitKey::from_bits(0, 0);
    let alice = key_to_bell(key_m1);
    let bob = key_to_bell(xor(key_m, key_m1));
    let mut out = String::new();
    let _ = writeln!(out, "pre-shared keys: m-th = {key_m}, (m+1)-th = {key_m1}");
    let _ = writeln!(
        out,
        "alice prepares |{alice}> on (1,2); bob prepares |{bob}> on (3,4)"
    );
    let _ = writeln!(
        out,
        "both apply the {} operation to qubits 1 and 3",
        key_to_pauli(key_m)
    );
    let _ = writeln!(
        out,
        "possible measurement outcomes, each with probability 1/4:"
    );
    let coeffs = composite_coefficients(alice, bob, Some(key_to_pauli(key_m)))
        .expect("fixed 4-qubit construction");
    let mut rows: Vec<(BellLabel, BellLabel)> = coeffs
        .support()
        .iter()
        .map(|(b14, b23, _)| (*b14, *b23))
        .collect();
    rows.sort_by_key(|(b14, _)| std::cmp::Reverse(bell_to_key(*b14)));
    for (b14, b23) in rows {
        let _ = writeln!(
            out,
            "  |{b14}>14 (x) |{b23}>23   {} ^ {} = {}",
            bell_to_key(b14),
            bell_to_key(b23),
            xor(bell_to_key(b14), bell_to_key(b23))
        );
    }
    let _ = writeln!(
        out,
        "every branch reproduces the m-th key {key_m}, so disclosure of either\n\
         record lets the other party verify it"
    );
    out
}

pub fn render_attack_report(report: &AttackReport) -> String {
    format!(
        "attack={} trials={} detections={} rate={:.6} analytic={:.6} gap={:.2e} (3-sigma bound {:.2e})\n",
        report.attack_kind,
        report.trials,
        report.detections,
        report.detection_rate,
        report.analytic_rate,
        report.abs_gap,
        report.three_sigma()
    )
}

pub fn attack_report_csv(report: &AttackReport) -> String {
    format!(
        "attack,trials,detections,detection_rate,analytic_rate,abs_gap\n{},{},{},{},{},{}\n",
        report.attack_kind,
        report.trials,
        report.detections,
        report.detection_rate,
        report.analytic_rate,
        report.abs_gap
    )
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("angle_degrees,analytic,simulated\n");
    for row in rows {
        let _ = writeln!(out, "{},{},{}", row.angle_deg, row.analytic, row.simulated);
    }
    out
}

pub fn curve_csv(rows: &[(u32, f64)]) -> String {
    let mut out = String::from("n,p_detect\n");
    for (n, p) in rows {
        let _ = writeln!(out, "{n},{p}");
    }
    out
}

pub fn result_rows_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(ResultRow::CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}
