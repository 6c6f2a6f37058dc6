//! Development aid: prints the derived double-Bell expansions and the
//! fraudulent-attack joint distribution so fixture values can be inspected.

use qia_core::attacks::{fraud_joint_with_eve, FakeStateParams};
use qia_core::bellmap::{composite_coefficients, key_to_bell, key_to_pauli, xor, TwoBitKey};
use qia_core::state::{BellLabel, PauliLabel, PureState};

fn main() {
    let pairs = [
        (1u8, 1u8, 0u8, 0u8),
        (0, 0, 0, 1),
        (0, 1, 1, 0),
        (1, 0, 1, 1),
    ];
    for (a, b, c, d) in pairs {
        let key_m = TwoBitKey::from_bits(a, b);
        let key_m1 = TwoBitKey::from_bits(c, d);
        let b12 = key_to_bell(key_m1);
        let b34 = key_to_bell(xor(key_m, key_m1));
        let pauli = key_to_pauli(key_m);
        let coeffs = composite_coefficients(b12, b34, Some(pauli)).unwrap();
        println!("keys ({key_m},{key_m1}): {pauli} x {pauli} on |{b12}>12 |{b34}>34 :");
        for (l14, l23, c) in coeffs.support() {
            println!("   {:+.4}{:+.4}i |{}>14 |{}>23", c.re, c.im, l14, l23);
        }
    }

    println!("\nno-pauli product phi+ x psi-:");
    let coeffs = composite_coefficients(BellLabel::PhiPlus, BellLabel::PsiMinus, None).unwrap();
    for (l14, l23, c) in coeffs.support() {
        println!("   {:+.4}{:+.4}i |{}>14 |{}>23", c.re, c.im, l14, l23);
    }

    let s = std::f64::consts::FRAC_1_SQRT_2;
    println!("\nfraud joint (a=b=c=d=1/sqrt2), order (16),(53),(24):");
    let params = FakeStateParams::single_real(s, s, s, s);
    for ((b16, b53, b24), p) in fraud_joint_with_eve(&params).unwrap() {
        println!(
            "   |{b16}>|{b53}>|{b24}> p={p:.6}  (1/32={:.6})",
            1.0 / 32.0
        );
    }

    println!("\nfraud joint distinct amps a=0.8 b=0.6 c=0.28 d=0.96:");
    let params = FakeStateParams::single_real(0.8, 0.6, 0.28, 0.96);
    let mut rows = fraud_joint_with_eve(&params).unwrap();
    rows.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap());
    for ((b16, b53, b24), p) in rows {
        println!("   |{b16}>|{b53}>|{b24}> p={p:.6}");
    }
    println!(
        "groups: ac^2/8={:.6} ad^2/8={:.6} bc^2/8={:.6} bd^2/8={:.6}",
        (0.8f64 * 0.28).powi(2) / 8.0,
        (0.8f64 * 0.96).powi(2) / 8.0,
        (0.6f64 * 0.28).powi(2) / 8.0,
        (0.6f64 * 0.96).powi(2) / 8.0
    );

    println!("\nCNOT-entangled 16-term computational expansion (a=.8 b=.6 c=.28 d=.96):");
    let honest = PureState::prepare_bell(BellLabel::PhiPlus, 1, 2)
        .unwrap()
        .tensor(&PureState::prepare_bell(BellLabel::PsiMinus, 3, 4).unwrap())
        .unwrap();
    let full = honest.tensor(&params.fake_pair_state().unwrap()).unwrap();
    let state = full.apply_cnot(2, 5).unwrap().apply_cnot(4, 6).unwrap();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm() > 1e-12 {
            println!("   |{:06b}> {:+.6}", i, amp.re);
        }
    }

    // After the phase flips on 1 and 3 as well.
    let z = PauliLabel::Z.matrix();
    let flipped = state.apply_1q(1, &z).unwrap().apply_1q(3, &z).unwrap();
    println!("\nsame with the phase flips applied:");
    for (i, amp) in flipped.amplitudes().iter().enumerate() {
        if amp.norm() > 1e-12 {
            println!("   |{:06b}> {:+.6}", i, amp.re);
        }
    }
}
