use std::fmt::Write;

use uqsim_core::compiler::CostReport;

use super::{integer, lines, number};
use crate::error::ParseError;

/// One `key = value` line per field.
pub fn write_cost(c: &CostReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "time_cost = {:?}", c.time_cost);
    let _ = writeln!(s, "n = {}", c.n);
    let _ = writeln!(s, "l = {}", c.l);
    let _ = writeln!(s, "step_t = {:?}", c.step_t);
    let _ = writeln!(s, "chi = {:?}", c.chi);
    let _ = writeln!(s, "epsilon = {:?}", c.epsilon);
    let _ = writeln!(s, "t_prime = {:?}", c.t_prime);
    s
}

pub fn parse_cost(text: &str) -> Result<CostReport, ParseError> {
    let mut c = CostReport { time_cost: 0.0, n: 0, l: 0, step_t: 0.0, chi: 0.0, epsilon: 0.0, t_prime: 0.0 };
    let mut seen = [false; 7];
    let mut last = 0;
    for (line, toks) in lines(text) {
        last = line;
        if toks.len() != 3 || toks[1].text != "=" {
            return Err(ParseError::new(line, toks[0].column, "expected `<key> = <value>`"));
        }
        let (key, v) = (toks[0].text, &toks[2]);
        let slot = match key {
            "time_cost" => {
                c.time_cost = number(line, v)?;
                0
            }
            "n" => {
                c.n = integer(line, v)?;
                1
            }
            "l" => {
                c.l = integer(line, v)?;
                2
            }
            "step_t" => {
                c.step_t = number(line, v)?;
                3
            }
            "chi" => {
                c.chi = number(line, v)?;
                4
            }
            "epsilon" => {
                c.epsilon = number(line, v)?;
                5
            }
            "t_prime" => {
                c.t_prime = number(line, v)?;
                6
            }
            other => return Err(ParseError::new(line, toks[0].column, format!("unknown key `{other}`"))),
        };
        seen[slot] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        let key = ["time_cost", "n", "l", "step_t", "chi", "epsilon", "t_prime"][i];
        return Err(ParseError::new(last + 1, 1, format!("missing `{key}`")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = CostReport::new(3.0 / 7.0, 3, 2.5, 0.01).unwrap();
        assert_eq!(parse_cost(&write_cost(&c)).unwrap(), c);
        assert!(parse_cost("n = 1\n").is_err());
    }
}
