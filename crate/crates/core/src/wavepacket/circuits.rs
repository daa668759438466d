use super::oracle::PrepVariant;
use super::spec::{GivensSchedule, WavePacketSpec};
use crate::circuit::{Circuit, Gate, QubitRole};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `Π_j RZ(β_j)` on the window qubits, i.e. `exp(-(i/2) Σ_j β_j σz_j)`.
///
/// Applied to a packet state this removes the relative phases `e^{-iβ_j}`.
/// The returned circuit spans system qubits `0..hi`.
pub fn build_v_beta<T: Real>(beta: &[T], window: (usize, usize)) -> Result<Circuit<T>> {
    let (lo, hi) = check_window(window)?;
    let len = hi + 1 - lo;
    if beta.len() != len {
        return Err(Error::LengthMismatch {
            what: "phases",
            expected: len,
            found: beta.len(),
        });
    }
    let mut c = Circuit::new(hi);
    c.extend(beta.iter().enumerate().map(|(i, &b)| Gate::rz(lo - 1 + i, b)))?;
    Ok(c)
}

/// Givens blocks on the window's neighbour pairs, last pair first.
///
/// The circuit rotates the packet amplitudes onto the window's first site;
/// its inverse (first pair first, negated angles) builds the packet from that
/// site. `theta[i]` acts on window pair `(i, i + 1)`.
pub fn build_v_theta<T: Real>(theta: &[T], window: (usize, usize)) -> Result<Circuit<T>> {
    let (lo, hi) = check_window(window)?;
    let len = hi + 1 - lo;
    if theta.len() + 1 != len {
        return Err(Error::LengthMismatch {
            what: "givens angles",
            expected: len - 1,
            found: theta.len(),
        });
    }
    let mut c = Circuit::new(hi);
    for (i, &t) in theta.iter().enumerate().rev() {
        let p = lo - 1 + i;
        c.push(Gate::givens(p, p + 1, t)?)?;
    }
    Ok(c)
}

/// Block-encoded `σ⁻` on `target`.
///
/// Expects `control` in `|1>` and `ancilla` in `|0>`. A Toffoli copies an
/// occupied target into the ancilla, then X flips the target; projecting the
/// ancilla onto `|0>` leaves `σ⁻ ψ` normalized, with success probability
/// `‖σ⁻ ψ‖²`.
pub fn build_lobe_sigma_minus<T: Real>(target: usize, control: usize, ancilla: usize) -> Result<Circuit<T>> {
    let width = target.max(control).max(ancilla) + 1;
    let mut c = Circuit::new(width);
    c.push(Gate::toffoli(control, target, ancilla)?)?;
    c.push(Gate::x(target))?;
    Ok(c)
}

/// Register layout for `n_packets` packets: system qubits `0..n_sites`, then
/// a `(control, ancilla)` pair per packet.
pub fn packet_register(n_sites: usize, n_packets: usize) -> Vec<QubitRole> {
    let mut roles = vec![QubitRole::System; n_sites];
    for _ in 0..n_packets {
        roles.push(QubitRole::Control);
        roles.push(QubitRole::Ancilla);
    }
    roles
}

/// Truncated-unitary preparation circuit for one or two packets.
///
/// Each packet contributes `B T · LOBE · T⁻¹ B⁻¹` (in time order
/// `B, T, LOBE, T⁻¹, B⁻¹`), where `B` and `T` are [`build_v_beta`] and
/// [`build_v_theta`] and the LOBE block sits on the window's first site,
/// preceded by Z gates on every system site left of the window. Controls
/// are flipped to `|1>` at the start. Ancillas must be post-selected on `|0>`.
pub fn build_packet_circuit<T: Real>(
    specs: &[WavePacketSpec<T>],
    variant: PrepVariant,
    n_sites: usize,
) -> Result<Circuit<T>> {
    if variant != PrepVariant::TruncatedUnitary {
        return Err(Error::VariantMismatch("circuit construction"));
    }
    check_packets(specs, n_sites)?;
    let mut c = Circuit::with_roles(packet_register(n_sites, specs.len()))?;
    for p in 0..specs.len() {
        c.push(Gate::x(n_sites + 2 * p))?;
    }
    for (p, spec) in specs.iter().enumerate() {
        let sched = GivensSchedule::from_spec(spec)?;
        let lo = spec.window.0;
        let v_beta = build_v_beta(&sched.phases, spec.window)?;
        let v_theta = build_v_theta(&sched.angles, spec.window)?;
        for q in 0..lo - 1 {
            c.push(Gate::z(q))?;
        }
        c.append(&v_beta)?;
        c.append(&v_theta)?;
        c.append(&build_lobe_sigma_minus(lo - 1, n_sites + 2 * p, n_sites + 2 * p + 1)?)?;
        c.append(&v_theta.inverse())?;
        c.append(&v_beta.inverse())?;
    }
    Ok(c)
}

pub(crate) fn check_packets<T: Real>(specs: &[WavePacketSpec<T>], n_sites: usize) -> Result<()> {
    if specs.is_empty() || specs.len() > 2 {
        return Err(Error::invalid(
            "packets",
            format!("expected one or two packets, got {}", specs.len()),
        ));
    }
    for s in specs {
        s.validate(n_sites)?;
    }
    if let [a, b] = specs {
        if a.window.0 <= b.window.1 && b.window.0 <= a.window.1 {
            return Err(Error::OverlappingWindows {
                first: a.window,
                second: b.window,
            });
        }
    }
    Ok(())
}

fn check_window(window: (usize, usize)) -> Result<(usize, usize)> {
    let (lo, hi) = window;
    if lo == 0 || hi < lo {
        return Err(Error::invalid("window", format!("[{lo}, {hi}] is not a non-empty 1-based range")));
    }
    Ok(window)
}
