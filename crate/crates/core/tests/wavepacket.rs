use std::f64::consts::PI;

use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wpscatter::circuit::{apply_circuit, cnot_depth, project_ancilla, Circuit, Gate, StateVector};
use wpscatter::model::{jw_creation, DenseOperator, Pauli};
use wpscatter::wavepacket::*;

fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// Dense unitary of a circuit, column by column.
fn unitary(c: &Circuit<f64>) -> DenseOperator<f64> {
    let n = c.width();
    let mut op = DenseOperator::zeros(n).unwrap();
    let mut cols = Vec::new();
    for k in 0..1usize << n {
        let s = StateVector::basis(n, k).unwrap();
        cols.push(apply_circuit(s, c).unwrap());
    }
    let m = nalgebra::DMatrix::from_fn(1 << n, 1 << n, |r, k| cols[k].amplitudes()[r]);
    op = DenseOperator::from_matrix(m).unwrap_or(op);
    op
}

fn total_z(n: usize) -> DenseOperator<f64> {
    let mut acc = DenseOperator::zeros(n).unwrap();
    for q in 0..n {
        acc = &acc + &DenseOperator::pauli_string(n, &[(q, Pauli::Z)]).unwrap();
    }
    acc
}

#[test]
fn gaussian_symmetric_window() {
    let spec = WavePacketSpec::<f64>::new(4.0, 0.0, 1.5, (1, 7)).unwrap();
    let (a, _) = gaussian_coefficients(&spec).unwrap();
    for d in 1..=3 {
        assert!((a[3 - d] - a[3 + d]).abs() < 1e-15);
    }
}

#[test]
fn gaussian_peak_is_one_before_normalization() {
    let spec = WavePacketSpec::new(3.0, 0.0, 1.5, (1, 8)).unwrap();
    let (a, _) = gaussian_coefficients(&spec).unwrap();
    let raw: Vec<f64> = (1..=8).map(|j| (-((j as f64 - 3.0).powi(2)) / 2.25).exp()).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!((a[2] * norm - 1.0).abs() < 1e-14);
}

#[test]
fn phase_at_site_two() {
    let spec = WavePacketSpec::new(3.0, 7.0 * PI / 16.0, 1.5, (1, 8)).unwrap();
    let (_, beta) = gaussian_coefficients(&spec).unwrap();
    assert!((beta[1] - 7.0 * PI / 8.0).abs() < 1e-15);
}

#[test]
fn equal_superposition_single_angle() {
    let a = [0.5f64.sqrt(), 0.5f64.sqrt()];
    let th = givens_angles(&a).unwrap();
    assert_eq!(th.len(), 1);
    // independent 2x2 rotation: R(-θ) e_1 = (cos θ, -sin θ)
    assert!((th[0].cos() - a[0]).abs() < 1e-15);
    assert!((-th[0].sin() - a[1]).abs() < 1e-15);
}

#[test]
fn eight_site_gaussian_reconstructs() {
    let spec = WavePacketSpec::new(3.0, 0.0, 1.5, (1, 8)).unwrap();
    let sched = GivensSchedule::from_spec(&spec).unwrap();
    assert_eq!(sched.angles.len(), 7);
    assert!(sched.reconstruction_error() < 1e-10);
}

proptest! {
    #[test]
    fn reconstruction_property(v in prop::collection::vec(-1.0f64..1.0, 2..=16)) {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let a: Vec<f64> = v.iter().map(|x| x / norm).collect();
        let back = reconstruct_amplitudes(&givens_angles(&a).unwrap());
        for (x, y) in back.iter().zip(&a) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn v_beta_zero_is_identity_and_matches_exponential() {
    let c = build_v_beta(&[0.0f64; 3], (1, 3)).unwrap();
    let u = unitary(&c);
    assert!(u.max_abs_diff(&DenseOperator::identity(3).unwrap()) < 1e-15);

    let beta = [0.3, -1.2, 2.5];
    let u = unitary(&build_v_beta(&beta, (1, 3)).unwrap());
    // exp(-(i/2) Σ β_j σz_j) is diagonal
    let want = nalgebra::DMatrix::from_fn(8, 8, |r, k| {
        if r != k {
            return c64(0.0, 0.0);
        }
        let phase: f64 = (0..3)
            .map(|q| if (r >> q) & 1 == 0 { beta[q] } else { -beta[q] })
            .sum();
        c64((-phase / 2.0).cos(), (-phase / 2.0).sin())
    });
    assert!(u.max_abs_diff(&DenseOperator::from_matrix(want).unwrap()) < 1e-14);
}

#[test]
fn v_beta_pi_is_phase_flip() {
    let u = unitary(&build_v_beta(&[PI], (1, 1)).unwrap());
    // RZ(π) = -i Z
    assert!((u.get(0, 0) - c64(0.0, -1.0)).norm() < 1e-15);
    assert!((u.get(1, 1) - c64(0.0, 1.0)).norm() < 1e-15);
}

#[test]
fn v_theta_identity_and_number_conservation() {
    let u = unitary(&build_v_theta(&[0.0f64; 3], (1, 4)).unwrap());
    assert!(u.max_abs_diff(&DenseOperator::identity(4).unwrap()) < 1e-15);

    for len in 2..=6usize {
        let theta: Vec<f64> = (0..len - 1).map(|i| 0.37 * (i as f64 + 1.0)).collect();
        let u = unitary(&build_v_theta(&theta, (1, len)).unwrap());
        assert!(u.commutator(&total_z(len)).max_abs() < 1e-12);
        let b = unitary(&build_v_beta(&theta, (1, len - 1)).unwrap());
        assert!(b.commutator(&total_z(len - 1)).max_abs() < 1e-12);
    }
    let err = build_v_theta(&[0.1f64; 2], (1, 4)).unwrap_err();
    assert!(err.to_string().contains("length mismatch"));
}

#[test]
fn v_theta_four_site_depth() {
    let c = build_v_theta(&[0.1f64, 0.2, 0.3], (1, 4)).unwrap();
    assert_eq!(cnot_depth(&c), 6);
}

fn lobe_run(psi: &StateVector<f64>) -> wpscatter::Result<(StateVector<f64>, f64)> {
    // target 0, control 1, ancilla 2
    let mut c = Circuit::new(3);
    c.push(Gate::x(1)).unwrap();
    c.append(&build_lobe_sigma_minus(0, 1, 2).unwrap()).unwrap();
    let s = apply_circuit(psi.with_extra_qubits(2).unwrap(), &c).unwrap();
    let r = project_ancilla(&s, 2, 0)?;
    Ok((r.state.restrict_low(1, 1e-12).unwrap(), r.probability))
}

#[test]
fn lobe_pure_branches() {
    let (s, p) = lobe_run(&StateVector::zero(1).unwrap()).unwrap();
    assert!((p - 1.0).abs() < 1e-14);
    assert!((s.amplitudes()[1].norm() - 1.0).abs() < 1e-14);
    assert!(lobe_run(&StateVector::basis(1, 1).unwrap()).is_err());
}

#[test]
fn lobe_partial_success() {
    let psi = StateVector::from_amplitudes(vec![c64(0.6, 0.0), c64(0.8, 0.0)]).unwrap();
    let (s, p) = lobe_run(&psi).unwrap();
    assert!((p - 0.36).abs() < 1e-14);
    assert!((s.amplitudes()[1].norm() - 1.0).abs() < 1e-14);
}

#[test]
fn lobe_matches_sigma_minus_on_random_registers() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sm = DenseOperator::<f64>::sigma_minus(3, 0).unwrap();
    for _ in 0..200 {
        let psi = StateVector::<f64>::random(3, &mut rng).unwrap();
        let direct = sm.apply_raw(&psi).unwrap();
        let weight: f64 = direct.iter().map(|v| v.norm_sqr()).sum();
        let want = StateVector::from_amplitudes(direct).unwrap();

        let mut c = Circuit::new(5);
        c.push(Gate::x(3)).unwrap();
        c.append(&build_lobe_sigma_minus(0, 3, 4).unwrap()).unwrap();
        let s = apply_circuit(psi.with_extra_qubits(2).unwrap(), &c).unwrap();
        let r = project_ancilla(&s, 4, 0).unwrap();
        let got = r.state.restrict_low(3, 1e-12).unwrap();
        assert!((r.probability - weight).abs() < 1e-12);
        assert!((got.fidelity(&want) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn single_packet_depth_formula() {
    for n in [4usize, 6, 8, 10] {
        let spec = WavePacketSpec::left_half(n, 2.0, 0.4, 1.5).unwrap();
        let c = build_packet_circuit(&[spec], PrepVariant::TruncatedUnitary, n).unwrap();
        assert_eq!(cnot_depth(&c), 4 * (n / 2 - 1) + 6, "N = {n}");
    }
}

#[test]
fn single_packet_amplitudes_on_trivial_vacuum() {
    let n = 8;
    let spec = WavePacketSpec::left_half(n, 2.0, 7.0 * PI / 16.0, 1.5).unwrap();
    let vac = StateVector::<f64>::zero(n).unwrap();
    let prep = prepare_scattering_state(&vac, &[spec], PrepVariant::TruncatedUnitary, n).unwrap();
    let (a, beta) = gaussian_coefficients(&spec).unwrap();
    // independent construction from dense JW creation operators
    let mut want = vec![c64(0.0, 0.0); 1 << n];
    for (i, j) in spec.sites().enumerate() {
        let cd = jw_creation::<f64>(j, n).unwrap();
        let col = cd.apply_raw(&vac).unwrap();
        for (w, v) in want.iter_mut().zip(col) {
            *w += v * c64(beta[i].cos(), -beta[i].sin()) * a[i];
        }
    }
    let want = StateVector::from_amplitudes(want).unwrap();
    assert!(prep.state.fidelity(&want) > 1.0 - 1e-9);
    assert!((prep.success_probability - 1.0).abs() < 1e-12);
}

fn colliding_pair(n: usize) -> [WavePacketSpec<f64>; 2] {
    let k = 7.0 * PI / 16.0;
    [
        WavePacketSpec::left_half(n, 3.0, k, 1.5).unwrap(),
        WavePacketSpec::right_half(n, n as f64 - 2.0, -k, 1.5).unwrap(),
    ]
}

#[test]
fn two_packet_circuit_matches_truncated_oracle() {
    let n = 8;
    let vac = StateVector::<f64>::zero(n).unwrap();
    let specs = colliding_pair(n);
    let circ = prepare_scattering_state(&vac, &specs, PrepVariant::TruncatedUnitary, n).unwrap();
    let oracle = prepare_scattering_state(&vac, &specs, PrepVariant::TruncatedOracle, n).unwrap();
    assert!(circ.state.fidelity(&oracle.state) > 1.0 - 1e-9);
}

#[test]
fn packet_exchange_is_a_sign() {
    let n = 8;
    let vac = StateVector::<f64>::zero(n).unwrap();
    let [a, b] = colliding_pair(n);
    for variant in [PrepVariant::TruncatedOracle, PrepVariant::ExactOracle] {
        let ab = apply_packet_oracle(&apply_packet_oracle(&vac, &b, variant, n).unwrap(), &a, variant, n).unwrap();
        let ba = apply_packet_oracle(&apply_packet_oracle(&vac, &a, variant, n).unwrap(), &b, variant, n).unwrap();
        let ov = ab.inner(&ba);
        assert!((ov.norm() - 1.0).abs() < 1e-12);
        if variant == PrepVariant::TruncatedOracle {
            // disjoint windows anticommute exactly
            assert!((ov + c64(1.0, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn oracle_matches_dense_jw_sum() {
    let n = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let psi = StateVector::<f64>::random(n, &mut rng).unwrap();
    let spec = WavePacketSpec::<f64>::new(2.5, 0.9, 1.2, (2, 5)).unwrap();
    let (a, beta) = gaussian_coefficients(&spec).unwrap();
    let mut op = DenseOperator::zeros(n).unwrap();
    for (i, j) in spec.sites().enumerate() {
        let coef = c64(beta[i].cos(), -beta[i].sin()) * a[i];
        op = &op + &jw_creation::<f64>(j, n).unwrap().scale(coef);
    }
    let want = StateVector::from_amplitudes(op.apply_raw(&psi).unwrap()).unwrap();
    let got = apply_packet_oracle(&psi, &spec, PrepVariant::TruncatedOracle, n).unwrap();
    assert!((got.inner(&want) - c64(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn truncation_loss_on_sixteen_sites() {
    let n = 16;
    let vac = StateVector::<f64>::zero(n).unwrap();
    let k = 7.0 * PI / 16.0;
    let specs = [
        WavePacketSpec::left_half(n, 3.0, k, 1.5).unwrap(),
        WavePacketSpec::right_half(n, 11.0, -k, 1.5).unwrap(),
    ];
    let exact = prepare_scattering_state(&vac, &specs, PrepVariant::ExactOracle, n).unwrap();
    let trunc = prepare_scattering_state(&vac, &specs, PrepVariant::TruncatedOracle, n).unwrap();
    let loss = 1.0 - exact.state.fidelity(&trunc.state);
    println!("exact vs truncated infidelity at N=16: {loss:.3e}");
    assert!((0.0..0.1).contains(&loss));
}
