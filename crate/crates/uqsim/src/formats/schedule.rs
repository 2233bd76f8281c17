use std::fmt::Write;

use uqsim_core::compiler::{CostReport, GateId, Instruction, PulseSchedule, RawGate, ZzTerm};
use uqsim_core::pauli::{LocalLayer, SingleQubitUnitary};
use uqsim_core::C64;

use super::{header, integer, lines, number, Token};
use crate::error::ParseError;

pub const SCHEDULE_FORMAT: &str = "uqsim-schedule-1";

const COST_KEYS: [&str; 7] = ["time_cost", "n", "l", "step_t", "chi", "epsilon", "t_prime"];

/// Writes
///
/// ```text
/// format uqsim-schedule-1
/// qubits 2
/// cost time_cost=1.0 n=1 l=100 step_t=0.01 chi=100.0 epsilon=0.01 t_prime=1.0
/// local hom <u00.re u00.im u01.re u01.im u10.re u10.im u11.re u11.im>
/// local inhom <8 numbers> | <8 numbers>
/// gate zz 0.01 0-1:1.0 parasitic 0-2:0.001
/// ```
pub fn write_schedule(s: &PulseSchedule) -> String {
    let mut out = format!("format {SCHEDULE_FORMAT}\nqubits {}\n", s.n_qubits);
    if let Some(c) = &s.cost {
        let _ = writeln!(
            out,
            "cost time_cost={:?} n={} l={} step_t={:?} chi={:?} epsilon={:?} t_prime={:?}",
            c.time_cost, c.n, c.l, c.step_t, c.chi, c.epsilon, c.t_prime
        );
    }
    for inst in &s.instructions {
        match inst {
            Instruction::Local(LocalLayer::Homogeneous(u)) => {
                let _ = writeln!(out, "local hom {}", unitary_text(u));
            }
            Instruction::Local(LocalLayer::Inhomogeneous(us)) => {
                let parts: Vec<String> = us.iter().map(unitary_text).collect();
                let _ = writeln!(out, "local inhom {}", parts.join(" | "));
            }
            Instruction::Gate(g) => {
                let _ = write!(out, "gate {} {:?}", g.id, g.theta);
                for t in &g.terms {
                    let _ = write!(out, " {}", term_text(t));
                }
                if !g.parasitic.is_empty() {
                    out.push_str(" parasitic");
                    for t in &g.parasitic {
                        let _ = write!(out, " {}", term_text(t));
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Structured form of the same schedule, for `--format json`.
pub fn schedule_json(s: &PulseSchedule) -> serde_json::Value {
    use serde_json::json;
    let unitary = |u: &SingleQubitUnitary| -> Vec<f64> {
        let e = u.entries();
        [e[0][0], e[0][1], e[1][0], e[1][1]].iter().flat_map(|c| [c.re, c.im]).collect()
    };
    let terms = |ts: &[ZzTerm]| -> Vec<serde_json::Value> { ts.iter().map(|t| json!([t.a, t.b, t.weight])).collect() };
    let instructions: Vec<serde_json::Value> = s
        .instructions
        .iter()
        .map(|inst| match inst {
            Instruction::Local(LocalLayer::Homogeneous(u)) => json!({"local": "hom", "unitary": unitary(u)}),
            Instruction::Local(LocalLayer::Inhomogeneous(us)) => {
                json!({"local": "inhom", "unitaries": us.iter().map(unitary).collect::<Vec<_>>()})
            }
            Instruction::Gate(g) => json!({
                "gate": g.id.to_string(),
                "theta": g.theta,
                "terms": terms(&g.terms),
                "parasitic": terms(&g.parasitic),
            }),
        })
        .collect();
    let cost = s.cost.map(|c| {
        json!({"time_cost": c.time_cost, "n": c.n, "l": c.l, "step_t": c.step_t, "chi": c.chi, "epsilon": c.epsilon, "t_prime": c.t_prime})
    });
    json!({"format": SCHEDULE_FORMAT, "qubits": s.n_qubits, "cost": cost, "instructions": instructions})
}

fn unitary_text(u: &SingleQubitUnitary) -> String {
    let e = u.entries();
    let v = [e[0][0], e[0][1], e[1][0], e[1][1]];
    v.iter().map(|c| format!("{:?} {:?}", c.re, c.im)).collect::<Vec<_>>().join(" ")
}

fn term_text(t: &ZzTerm) -> String {
    format!("{}-{}:{:?}", t.a, t.b, t.weight)
}

pub fn parse_schedule(text: &str) -> Result<PulseSchedule, ParseError> {
    let mut it = lines(text);
    let (line, fmt) = header(it.next(), "format", 0)?;
    if fmt.text != SCHEDULE_FORMAT {
        return Err(ParseError::new(line, fmt.column, format!("unsupported format `{}`", fmt.text)));
    }
    let (line, q) = header(it.next(), "qubits", line)?;
    let n = integer(line, &q)?;
    let mut s = PulseSchedule::new(n);
    for (line, toks) in it {
        match toks[0].text {
            "cost" if s.cost.is_none() && s.instructions.is_empty() => s.cost = Some(parse_cost_line(line, &toks[1..])?),
            "local" => s.instructions.push(Instruction::Local(parse_local(line, &toks, n)?)),
            "gate" => s.instructions.push(Instruction::Gate(parse_gate(line, &toks, n)?)),
            other => return Err(ParseError::new(line, toks[0].column, format!("unexpected `{other}`"))),
        }
    }
    Ok(s)
}

fn parse_cost_line(line: usize, toks: &[Token<'_>]) -> Result<CostReport, ParseError> {
    let mut vals = [0.0; 7];
    let mut ints = [0usize; 2];
    if toks.len() != COST_KEYS.len() {
        let col = toks.first().map_or(1, |t| t.column);
        return Err(ParseError::new(line, col, "cost needs time_cost, n, l, step_t, chi, epsilon and t_prime"));
    }
    for (tok, key) in toks.iter().zip(COST_KEYS) {
        let Some(value) = tok.text.strip_prefix(key).and_then(|r| r.strip_prefix('=')) else {
            return Err(ParseError::new(line, tok.column, format!("expected `{key}=<value>`")));
        };
        let v = Token { text: value, column: tok.column + key.len() + 1 };
        match key {
            "n" => ints[0] = integer(line, &v)?,
            "l" => ints[1] = integer(line, &v)?,
            _ => vals[COST_KEYS.iter().position(|k| *k == key).unwrap()] = number(line, &v)?,
        }
    }
    Ok(CostReport {
        time_cost: vals[0],
        n: ints[0],
        l: ints[1],
        step_t: vals[3],
        chi: vals[4],
        epsilon: vals[5],
        t_prime: vals[6],
    })
}

fn parse_unitary(line: usize, toks: &[Token<'_>]) -> Result<SingleQubitUnitary, ParseError> {
    if toks.len() != 8 {
        let col = toks.first().map_or(1, |t| t.column);
        return Err(ParseError::new(line, col, format!("a unitary needs 8 numbers, found {}", toks.len())));
    }
    let mut v = [0.0; 8];
    for (slot, t) in v.iter_mut().zip(toks) {
        *slot = number(line, t)?;
    }
    let c = |i: usize| C64::new(v[2 * i], v[2 * i + 1]);
    SingleQubitUnitary::new([[c(0), c(1)], [c(2), c(3)]]).map_err(|e| ParseError::new(line, toks[0].column, e.to_string()))
}

fn parse_local(line: usize, toks: &[Token<'_>], n: usize) -> Result<LocalLayer, ParseError> {
    let kind = toks.get(1).ok_or_else(|| ParseError::new(line, toks[0].column, "expected `hom` or `inhom`"))?;
    match kind.text {
        "hom" => Ok(LocalLayer::Homogeneous(parse_unitary(line, &toks[2..])?)),
        "inhom" => {
            let us = toks[2..]
                .split(|t| t.text == "|")
                .map(|chunk| parse_unitary(line, chunk))
                .collect::<Result<Vec<_>, _>>()?;
            if us.len() != n {
                return Err(ParseError::new(line, kind.column, format!("{} unitaries for {n} qubits", us.len())));
            }
            Ok(LocalLayer::Inhomogeneous(us))
        }
        other => Err(ParseError::new(line, kind.column, format!("expected `hom` or `inhom`, found `{other}`"))),
    }
}

fn parse_term(line: usize, tok: &Token<'_>, n: usize) -> Result<ZzTerm, ParseError> {
    let bad = || ParseError::new(line, tok.column, format!("expected `<a>-<b>:<weight>`, found `{}`", tok.text));
    let (pair, w) = tok.text.split_once(':').ok_or_else(bad)?;
    let (a, b) = pair.split_once('-').ok_or_else(bad)?;
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    let w = number(line, &Token { text: w, column: tok.column + pair.len() + 1 })?;
    if a >= n || b >= n || a == b {
        return Err(ParseError::new(line, tok.column, format!("invalid pair ({a},{b}) for {n} qubits")));
    }
    Ok(ZzTerm { a, b, weight: w })
}

fn parse_gate(line: usize, toks: &[Token<'_>], n: usize) -> Result<RawGate, ParseError> {
    if toks.len() < 3 {
        return Err(ParseError::new(line, toks[0].column, "expected `gate <id> <theta> <terms>`"));
    }
    let id = GateId::parse(toks[1].text).ok_or_else(|| ParseError::new(line, toks[1].column, format!("unknown gate id `{}`", toks[1].text)))?;
    let theta = number(line, &toks[2])?;
    let mut gate = RawGate::new(id, theta, Vec::new());
    let mut parasitic = false;
    for t in &toks[3..] {
        if t.text == "parasitic" && !parasitic {
            parasitic = true;
            continue;
        }
        let term = parse_term(line, t, n)?;
        if parasitic {
            gate.parasitic.push(term);
        } else {
            gate.terms.push(term);
        }
    }
    Ok(gate)
}
