use std::fmt::Write;

use uqsim_core::sim::StateVector;
use uqsim_core::C64;

use super::{header, integer, lines, number};
use crate::error::ParseError;

pub const STATE_FORMAT: &str = "uqsim-state-1";

/// Header lines, then one `index re im` line per amplitude.
pub fn write_state(s: &StateVector) -> String {
    let mut out = format!("format {STATE_FORMAT}\nqubits {}\n", s.n_qubits());
    for (i, a) in s.amplitudes().iter().enumerate() {
        let _ = writeln!(out, "{i} {:?} {:?}", a.re, a.im);
    }
    out
}

pub fn parse_state(text: &str) -> Result<StateVector, ParseError> {
    let mut it = lines(text);
    let (line, fmt) = header(it.next(), "format", 0)?;
    if fmt.text != STATE_FORMAT {
        return Err(ParseError::new(line, fmt.column, format!("unsupported format `{}`", fmt.text)));
    }
    let (mut last, q) = header(it.next(), "qubits", line)?;
    let n = integer(last, &q)?;
    if n > 30 {
        return Err(ParseError::new(last, q.column, "too many qubits"));
    }
    let mut amps = Vec::with_capacity(1 << n);
    for (line, toks) in it {
        last = line;
        if toks.len() != 3 {
            return Err(ParseError::new(line, toks[0].column, "expected `<index> <re> <im>`"));
        }
        if integer(line, &toks[0])? != amps.len() {
            return Err(ParseError::new(line, toks[0].column, format!("expected index {}", amps.len())));
        }
        amps.push(C64::new(number(line, &toks[1])?, number(line, &toks[2])?));
    }
    if amps.len() != 1 << n {
        return Err(ParseError::new(last + 1, 1, format!("{} amplitudes for {n} qubits", amps.len())));
    }
    StateVector::from_amplitudes(n, amps).map_err(|e| ParseError::new(last, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let s = StateVector::normalized(2, vec![C64::new(0.1, 0.2), C64::new(-0.3, 0.0), C64::new(0.0, 1.0 / 3.0), C64::new(0.7, -0.01)]).unwrap();
        assert_eq!(parse_state(&write_state(&s)).unwrap(), s);
        assert!(parse_state("format uqsim-state-1\nqubits 1\n0 1 0\n").is_err());
    }
}
