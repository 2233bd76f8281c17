use alloc::vec::Vec;

use super::LatticeModel;
use crate::compiler::Axis;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    Rectangular,
    Triangular,
    Hexagonal,
}

/// Neighbour pairs of `pattern` embedded in a rectangular lattice.
///
/// Triangular adds the `(r, c)-(r+1, c+1)` diagonal family; hexagonal keeps
/// all row bonds and the column bonds with `r + c` even (brick wall).
pub fn geometry_remap(pattern: Pattern, base: &LatticeModel) -> Result<Vec<(usize, usize)>> {
    if base.dims() != 2 {
        return Err(Error::NotTwoDimensional);
    }
    let pairs = |axis| -> Vec<(usize, usize)> { base.translation_class(1, axis).iter().map(|t| (t.a, t.b)).collect() };
    let cols = base.cols();
    let mut out = pairs(Axis::Row);
    match pattern {
        Pattern::Rectangular => out.extend(pairs(Axis::Column)),
        Pattern::Triangular => {
            out.extend(pairs(Axis::Column));
            out.extend(pairs(Axis::Diagonal));
        }
        Pattern::Hexagonal => out.extend(pairs(Axis::Column).into_iter().filter(|&(a, b)| {
            // Upper endpoint of a vertical bond (wrapped bonds keep the lower row).
            let top = if b - a == cols { a } else { b };
            (top / cols + top % cols).is_multiple_of(2)
        })),
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardware::Boundary;

    /// Unit-distance pairs of the triangular embedding `e1 = (1, 0)`, `e2 = (-1/2, sqrt 3 / 2)`.
    fn triangular_oracle(rows: usize, cols: usize) -> Vec<(usize, usize)> {
        let h = 3f64.sqrt() / 2.0;
        let pos = |s: usize| {
            let (r, c) = ((s / cols) as f64, (s % cols) as f64);
            (c - 0.5 * r, h * r)
        };
        let mut out = Vec::new();
        for a in 0..rows * cols {
            for b in a + 1..rows * cols {
                let (p, q) = (pos(a), pos(b));
                let d = ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
                if (d - 1.0).abs() < 1e-9 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn triangular_matches_embedding() {
        for (r, c, rect, diag) in [(2, 2, 4, 1), (3, 3, 12, 4), (4, 5, 31, 12)] {
            let base = LatticeModel::grid(r, c, Boundary::Open, &[1]).unwrap();
            let got = geometry_remap(Pattern::Triangular, &base).unwrap();
            assert_eq!(got, triangular_oracle(r, c));
            assert_eq!(geometry_remap(Pattern::Rectangular, &base).unwrap().len(), rect);
            assert_eq!(got.len(), rect + diag);
        }
    }

    #[test]
    fn triangular_interior_degree_six() {
        let base = LatticeModel::grid(5, 5, Boundary::Open, &[1]).unwrap();
        let pairs = geometry_remap(Pattern::Triangular, &base).unwrap();
        let degree = |s: usize| pairs.iter().filter(|&&(a, b)| a == s || b == s).count();
        for r in 1..4 {
            for c in 1..4 {
                assert_eq!(degree(base.site(r, c)), 6);
            }
        }
    }

    #[test]
    fn hexagonal_interior_degree_three() {
        let base = LatticeModel::grid(6, 6, Boundary::Open, &[1]).unwrap();
        let pairs = geometry_remap(Pattern::Hexagonal, &base).unwrap();
        let degree = |s: usize| pairs.iter().filter(|&&(a, b)| a == s || b == s).count();
        for r in 1..5 {
            for c in 1..5 {
                assert_eq!(degree(base.site(r, c)), 3);
            }
        }
    }

    #[test]
    fn chain_is_rejected() {
        let base = LatticeModel::chain(4, Boundary::Open, &[1]).unwrap();
        assert_eq!(geometry_remap(Pattern::Triangular, &base), Err(Error::NotTwoDimensional));
    }
}
