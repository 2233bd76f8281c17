//! Small dense linear algebra written independently of the library, used
//! as a reference for the simulator and compiler.

#![allow(dead_code)]

use uqsim_core::compiler::PulseSchedule;
use uqsim_core::pauli::{Hamiltonian, Pauli};
use uqsim_core::sim::{run_schedule, StateVector};
use uqsim_core::C64;

pub type Matrix = Vec<Vec<C64>>;

pub fn zeros(d: usize) -> Matrix {
    vec![vec![C64::new(0.0, 0.0); d]; d]
}

pub fn identity(d: usize) -> Matrix {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut c = zeros(d);
    for i in 0..d {
        for k in 0..d {
            let aik = a[i][k];
            if aik == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn add(a: &Matrix, b: &Matrix, s: C64) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + s * y).collect()).collect()
}

pub fn scale(a: &Matrix, s: C64) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn adjoint(a: &Matrix) -> Matrix {
    let d = a.len();
    let mut c = zeros(d);
    for i in 0..d {
        for j in 0..d {
            c[j][i] = a[i][j].conj();
        }
    }
    c
}

/// Pauli string on basis states, qubit `q` being bit `q` of the index.
pub fn pauli_matrix(ops: &[Pauli]) -> Matrix {
    let d = 1usize << ops.len();
    let mut m = zeros(d);
    for s in 0..d {
        let mut out = s;
        let mut phase = C64::new(1.0, 0.0);
        for (q, p) in ops.iter().enumerate() {
            let bit = (s >> q) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => out ^= 1 << q,
                Pauli::Y => {
                    out ^= 1 << q;
                    phase *= if bit == 0 { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) };
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        m[out][s] += phase;
    }
    m
}

pub fn hamiltonian_matrix(h: &Hamiltonian) -> Matrix {
    let mut m = zeros(1 << h.n_qubits());
    for t in h.terms() {
        m = add(&m, &pauli_matrix(t.ops()), C64::new(t.coeff(), 0.0));
    }
    m
}

fn norm1(a: &Matrix) -> f64 {
    (0..a.len()).map(|j| a.iter().map(|r| r[j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `exp(a)` by scaling and squaring of a Taylor series.
pub fn expm(a: &Matrix) -> Matrix {
    let n1 = norm1(a);
    let s = if n1 > 0.5 { (n1 / 0.5).log2().ceil() as i32 } else { 0 };
    let b = scale(a, C64::new(0.5f64.powi(s), 0.0));
    let d = a.len();
    let mut sum = identity(d);
    let mut term = identity(d);
    for k in 1..=24 {
        term = scale(&mul(&term, &b), C64::new(1.0 / k as f64, 0.0));
        sum = add(&sum, &term, C64::new(1.0, 0.0));
    }
    for _ in 0..s {
        sum = mul(&sum, &sum);
    }
    sum
}

/// `exp(-i h t)`.
pub fn evolution(h: &Hamiltonian, t: f64) -> Matrix {
    expm(&scale(&hamiltonian_matrix(h), C64::new(0.0, -t)))
}

/// Largest singular value by power iteration on `a^† a`.
pub fn spectral_norm(a: &Matrix) -> f64 {
    let d = a.len();
    let g = mul(&adjoint(a), a);
    let mut v: Vec<C64> = (0..d).map(|i| C64::new(1.0 + 0.37 * i as f64, 0.11 * (i % 5) as f64)).collect();
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let w: Vec<C64> = g.iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        let n = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return 0.0;
        }
        let next = n;
        v = w.into_iter().map(|x| x / n).collect();
        if (next - lambda).abs() <= 1e-14 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

pub fn distance(a: &Matrix, b: &Matrix) -> f64 {
    spectral_norm(&add(a, b, C64::new(-1.0, 0.0)))
}

/// Columns are the simulator's output on each basis state.
pub fn schedule_unitary(schedule: &PulseSchedule) -> Matrix {
    let n = schedule.n_qubits;
    let d = 1 << n;
    let mut m = zeros(d);
    for s in 0..d {
        let mut psi = StateVector::basis(n, s).unwrap();
        run_schedule(&mut psi, schedule, None).unwrap();
        for (i, a) in psi.amplitudes().iter().enumerate() {
            m[i][s] = *a;
        }
    }
    m
}

/// Eigenvalues and eigenvectors (columns) of a real symmetric matrix by
/// cyclic Jacobi rotations.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Weight of `psi` in the lowest eigenspace of a real Hamiltonian.
pub fn ground_weight(h: &Hamiltonian, psi: &[C64], tol: f64) -> f64 {
    let m = hamiltonian_matrix(h);
    let real: Vec<Vec<f64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.im.abs() < 1e-14, "Hamiltonian is not real");
                    x.re
                })
                .collect()
        })
        .collect();
    let (values, vectors) = jacobi_eigen(real);
    let e0 = values.iter().copied().fold(f64::INFINITY, f64::min);
    let d = values.len();
    let mut w = 0.0;
    for (k, &e) in values.iter().enumerate() {
        if e - e0 <= tol {
            let overlap: C64 = (0..d).map(|i| psi[i] * vectors[i][k]).sum();
            w += overlap.norm_sqr();
        }
    }
    w
}

/// SplitMix64 for reproducible test inputs.
pub struct Rng(pub u64);

impl Rng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
