//! OpenQASM 3 export and a minimal reader for the exported subset.

use std::fmt::Write;

use super::decompose::decompose_circuit;
use super::gate::{Gate, GateKind};
use super::ir::Circuit;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QasmOptions {
    /// Emit Toffolis as their six-CNOT expansion instead of `ccx`.
    pub expand_toffoli: bool,
}

/// Exports `circuit` as OpenQASM 3 over `{rz, rx, h, x, cx, ccx}`.
pub fn export_qasm<T: Real>(circuit: &Circuit<T>) -> Result<String> {
    export_qasm_with(circuit, QasmOptions::default())
}

pub fn export_qasm_with<T: Real>(circuit: &Circuit<T>, options: QasmOptions) -> Result<String> {
    let flat = decompose_circuit(circuit, options.expand_toffoli);
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    writeln!(out, "qubit[{}] q;", circuit.width()).unwrap();
    for g in flat.gates() {
        let qs: Vec<String> = g.qubits().iter().map(|q| format!("q[{q}]")).collect();
        let qs = qs.join(", ");
        match g.kind() {
            GateKind::Rx | GateKind::Rz => writeln!(out, "{}({}) {};", g.kind().name(), g.angle(), qs),
            GateKind::H | GateKind::X | GateKind::Cnot | GateKind::Toffoli => {
                writeln!(out, "{} {};", g.kind().name(), qs)
            }
            other => return Err(Error::Unexportable(other.name())),
        }
        .unwrap();
    }
    Ok(out)
}

/// Reads the OpenQASM subset produced by [`export_qasm`] (one register,
/// gates `rx rz ry h x z cx ccx`).
pub fn parse_qasm<T: Real>(text: &str) -> Result<Circuit<T>> {
    let mut circuit: Option<Circuit<T>> = None;
    let mut register = String::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |message: String| Error::QasmParse {
            line: line_no,
            message,
        };
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| err("missing `;`".into()))?
            .trim();
        if stmt.starts_with("OPENQASM") || stmt.starts_with("include") {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qubit") {
            let rest = rest.trim();
            let (size, name) = rest
                .strip_prefix('[')
                .and_then(|r| r.split_once(']'))
                .ok_or_else(|| err(format!("bad register declaration `{stmt}`")))?;
            let width: usize = size
                .trim()
                .parse()
                .map_err(|_| err(format!("bad register size `{size}`")))?;
            if circuit.is_some() {
                return Err(err("only one qubit register is supported".into()));
            }
            register = name.trim().to_string();
            circuit = Some(Circuit::new(width));
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| err("gate before register declaration".into()))?;

        let ws = stmt.find(char::is_whitespace).unwrap_or(stmt.len());
        let split = match stmt.find('(') {
            Some(open) if open < ws => stmt[open..]
                .find(')')
                .map(|close| open + close + 1)
                .ok_or_else(|| err("unclosed `(`".into()))?,
            _ => ws,
        };
        let (head, args) = (&stmt[..split], stmt[split..].trim());
        let (name, angle) = match head.split_once('(') {
            Some((n, a)) => {
                let a = a.strip_suffix(')').ok_or_else(|| err("unclosed `(`".into()))?;
                (n.trim(), Some(parse_angle::<T>(a).ok_or_else(|| err(format!("bad angle `{a}`")))?))
            }
            None => (head.trim(), None),
        };
        let mut qubits = Vec::new();
        for operand in args.split(',') {
            let operand = operand.trim();
            let idx = operand
                .strip_prefix(register.as_str())
                .and_then(|r| r.strip_prefix('['))
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.trim().parse::<usize>().ok())
                .ok_or_else(|| err(format!("bad operand `{operand}`")))?;
            qubits.push(idx);
        }
        let kind = match name {
            "rx" => GateKind::Rx,
            "ry" => GateKind::Ry,
            "rz" => GateKind::Rz,
            "h" => GateKind::H,
            "x" => GateKind::X,
            "z" => GateKind::Z,
            "cx" | "CX" | "cnot" => GateKind::Cnot,
            "ccx" => GateKind::Toffoli,
            other => return Err(err(format!("unsupported gate `{other}`"))),
        };
        if kind.is_parametric() != angle.is_some() {
            return Err(err(format!("`{name}` angle arity")));
        }
        let gate = Gate::new(kind, qubits, angle.unwrap_or_else(T::zero))
            .map_err(|e| err(e.to_string()))?;
        c.push(gate).map_err(|e| err(e.to_string()))?;
    }
    circuit.ok_or(Error::QasmParse {
        line: 0,
        message: "no qubit register declared".into(),
    })
}

/// Parses a numeric literal or a multiple/fraction of `pi` such as `-7*pi/16`.
pub fn parse_angle<T: Real>(s: &str) -> Option<T> {
    let s = s.trim().replace(' ', "");
    if let Ok(v) = s.parse::<f64>() {
        return Some(T::lit(v));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().ok()?),
        None => (s.clone(), 1.0),
    };
    let (sign, body) = match num.strip_prefix('-') {
        Some(b) => (-1.0, b.to_string()),
        None => (1.0, num),
    };
    let factor = if body == "pi" || body == "π" {
        1.0
    } else {
        let coeff = body.strip_suffix("*pi").or_else(|| body.strip_suffix("*π"))?;
        coeff.parse::<f64>().ok()?
    };
    Some(T::lit(sign * factor * std::f64::consts::PI / den))
}
