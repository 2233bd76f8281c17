use std::fmt::Write;

use uqsim_core::pauli::{Hamiltonian, Pauli, PauliString};

use super::{integer, lines, number, Token};
use crate::error::ParseError;

/// One `coefficient LABEL` term; label character `i` acts on qubit `i`.
fn parse_term(line: usize, coeff: &Token<'_>, label: &Token<'_>) -> Result<PauliString, ParseError> {
    let c = number(line, coeff)?;
    let mut ops = Vec::with_capacity(label.text.len());
    for (i, ch) in label.text.chars().enumerate() {
        let p = Pauli::from_char(ch)
            .ok_or_else(|| ParseError::new(line, label.column + i, format!("`{ch}` is not one of I, X, Y, Z")))?;
        ops.push(p);
    }
    let label_str: String = ops.iter().map(|p| p.as_char()).collect();
    PauliString::from_label(&label_str, c).map_err(|e| ParseError::new(line, label.column, e.to_string()))
}

/// Reads
///
/// ```text
/// qubits 3
/// 0.5 XXI
/// -1 IZZ
/// ```
///
/// The `qubits` line is optional when at least one term is present.
pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, ParseError> {
    let mut n: Option<(usize, usize)> = None;
    let mut terms = Vec::new();
    let mut last = 0;
    for (line, toks) in lines(text) {
        last = line;
        if toks[0].text == "qubits" {
            if toks.len() != 2 {
                return Err(ParseError::new(line, toks[0].column, "expected `qubits <count>`"));
            }
            if n.is_some() || !terms.is_empty() {
                return Err(ParseError::new(line, toks[0].column, "`qubits` must come first and only once"));
            }
            n = Some((integer(line, &toks[1])?, line));
            continue;
        }
        if toks.len() != 2 {
            let col = toks.get(2).map_or(toks[0].column, |t| t.column);
            return Err(ParseError::new(line, col, "expected `<coefficient> <label>`"));
        }
        let term = parse_term(line, &toks[0], &toks[1])?;
        let expected = n.map(|(q, _)| q).or_else(|| terms.first().map(|t: &PauliString| t.n_qubits()));
        if let Some(q) = expected {
            if term.n_qubits() != q {
                return Err(ParseError::new(line, toks[1].column, format!("label has {} sites, expected {q}", term.n_qubits())));
            }
        }
        terms.push(term);
    }
    let Some(q) = n.map(|(q, _)| q).or_else(|| terms.first().map(|t| t.n_qubits())) else {
        return Err(ParseError::new(text.lines().count() + 1, 1, "empty Hamiltonian needs a `qubits` line"));
    };
    Hamiltonian::from_terms(q, terms).map_err(|e| ParseError::new(last.max(1), 1, e.to_string()))
}

pub fn write_hamiltonian(h: &Hamiltonian) -> String {
    let mut s = format!("qubits {}\n", h.n_qubits());
    for t in h.terms() {
        let _ = writeln!(s, "{:?} {}", t.coeff(), t.label());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let h = Hamiltonian::from_labels(&[(0.1, "XXI"), (-1.0 / 3.0, "IZY"), (1e-13, "ZII")]).unwrap();
        assert_eq!(parse_hamiltonian(&write_hamiltonian(&h)).unwrap(), h);
        let empty = Hamiltonian::zero(4);
        assert_eq!(parse_hamiltonian(&write_hamiltonian(&empty)).unwrap(), empty);
    }

    #[test]
    fn diagnostics_point_at_the_problem() {
        let e = parse_hamiltonian("qubits 2\n1.0 XQ\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        let e = parse_hamiltonian("1.0 XX\n  2.0 XXX\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse_hamiltonian("abc ZZ").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_hamiltonian("# nothing\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
