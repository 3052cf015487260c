//! Test-only reference implementations. Nothing here calls the operator
//! kernels under test: matrices are built entry by entry from their
//! definitions and applied with a full matrix–vector product.
#![allow(dead_code)]

use num_complex::Complex64;
use qreflect::{grover_iteration, BasisIndex, OracleSpec, QuantumState};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn idx(value: u64, width: usize) -> BasisIndex {
    BasisIndex::new(value, width).unwrap()
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| c(if i == j { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = vec![vec![c(0.0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            for j in 0..dim {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn apply(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `H^{⊗n}` as an explicit Kronecker power.
pub fn hadamard_power(n: usize) -> Matrix {
    let h = 1.0 / 2f64.sqrt();
    let h1 = vec![vec![c(h), c(h)], vec![c(h), c(-h)]];
    (1..n).fold(h1.clone(), |acc, _| kron(&acc, &h1))
}

/// `1 − 2 Σ_{f(x)=1} |x⟩⟨x|`, from classical evaluations of `f`.
pub fn dense_phase_oracle(oracle: &OracleSpec) -> Matrix {
    let n = oracle.n();
    let mut m = identity(1 << n);
    for x in 0..1u64 << n {
        if oracle.evaluate(idx(x, n)).unwrap() {
            m[x as usize][x as usize] = c(-1.0);
        }
    }
    m
}

/// Permutation matrix of `|x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩`, ancilla least significant.
pub fn dense_xor_oracle(oracle: &OracleSpec) -> Matrix {
    let n = oracle.n();
    let dim = 1usize << (n + 1);
    let mut m = vec![vec![c(0.0); dim]; dim];
    for x in 0..1u64 << n {
        let f = oracle.evaluate(idx(x, n)).unwrap() as usize;
        for y in 0..2usize {
            let from = ((x as usize) << 1) | y;
            let to = ((x as usize) << 1) | (y ^ f);
            m[to][from] = c(1.0);
        }
    }
    m
}

/// `2|s⟩⟨s| − 1` with `|s⟩ = H^{⊗n}|0⟩`.
pub fn dense_diffusion(n: usize) -> Matrix {
    let dim = 1usize << n;
    let hn = hadamard_power(n);
    let s: Vec<Complex64> = (0..dim).map(|i| hn[i][0]).collect();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| s[i] * s[j].conj() * 2.0 - if i == j { c(1.0) } else { c(0.0) })
                .collect()
        })
        .collect()
}

pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn random_state(n: usize, rng: &mut StdRng) -> QuantumState {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    QuantumState::normalized(amps).unwrap()
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `s_0 ..= s_max` by repeated plain Grover iterations.
pub fn grover_states(oracle: &OracleSpec, max: usize) -> Vec<QuantumState> {
    let mut states = vec![QuantumState::prepare_uniform(oracle.n()).unwrap()];
    for _ in 0..max {
        let next = grover_iteration(oracle, states.last().unwrap()).unwrap();
        states.push(next);
    }
    states
}

/// Difference of two angles folded into `[−π, π]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let d = (a - b).rem_euclid(two_pi);
    if d > std::f64::consts::PI {
        d - two_pi
    } else {
        d
    }
}
