//! Dense complex state vectors over `2^n` computational basis strings.
//!
//! Amplitudes are indexed by the integer value of the basis string with the
//! first character of the string as the most significant bit, so the string
//! `x1 x2 ... xn` lives at index `x1 * 2^(n-1) + ... + xn`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register width accepted anywhere in the crate (16M amplitudes).
pub const MAX_QUBITS: usize = 24;

/// Accepted deviation of `‖ψ‖` from 1 when a state is built from raw amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-10;

pub(crate) fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidWidth { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// A concrete `n`-bit string, stored as its integer value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    value: u64,
    width: usize,
}

impl BasisIndex {
    pub fn new(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > 63 {
            return Err(Error::InvalidWidth { n: width, max: 63 });
        }
        if value >> width != 0 {
            return Err(Error::IndexOutOfRange { value, width });
        }
        Ok(Self { value, width })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Bit `position` of the string, counting from 1 at the most significant end.
    pub fn bit(&self, position: usize) -> bool {
        debug_assert!(position >= 1 && position <= self.width);
        (self.value >> (self.width - position)) & 1 == 1
    }

    pub fn to_bit_string(&self) -> String {
        format!("{:0width$b}", self.value, width = self.width)
    }

    pub fn from_bit_string(bits: &str) -> Result<Self> {
        if bits.is_empty() || bits.len() > 63 {
            return Err(Error::InvalidArgument(format!(
                "bit string of length {} is not a valid basis index",
                bits.len()
            )));
        }
        let mut value = 0u64;
        for c in bits.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "unexpected character {other:?} in bit string"
                        )))
                    }
                };
        }
        Self::new(value, bits.len())
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩", self.to_bit_string())
    }
}

/// Normalized amplitude vector of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// `H|0…0⟩`: every amplitude equals `1/√(2^n)`.
    pub fn prepare_uniform(n: usize) -> Result<Self> {
        check_width(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            n,
            amplitudes: vec![amp; dim],
        })
    }

    /// Computational basis state `|x⟩`.
    pub fn basis(index: BasisIndex) -> Result<Self> {
        check_width(index.width())?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << index.width()];
        amplitudes[index.value() as usize] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n: index.width(),
            amplitudes,
        })
    }

    /// Wraps raw amplitudes, which must already have unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = width_of_len(amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, amplitudes })
    }

    /// Rescales raw amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = width_of_len(amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: BasisIndex) -> Result<Complex64> {
        self.check_index(index)?;
        Ok(self.amplitudes[index.value() as usize])
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// Largest `|Im a_x|` over all amplitudes.
    pub fn max_imag(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn check_same_width(&self, other: &QuantumState) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, index: BasisIndex) -> Result<()> {
        if index.width() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: index.width(),
            });
        }
        Ok(())
    }

    /// `self ⊗ other`, with `other` occupying the least significant bits.
    pub fn tensor(&self, other: &QuantumState) -> Result<QuantumState> {
        let n = self.n + other.n;
        check_width(n)?;
        let mut amplitudes = Vec::with_capacity(1usize << n);
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Ok(QuantumState { n, amplitudes })
    }
}

fn width_of_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::BadLength { len });
    }
    let n = len.trailing_zeros() as usize;
    check_width(n).map_err(|_| Error::BadLength { len })?;
    Ok(n)
}

fn l2_norm(amplitudes: &[Complex64]) -> f64 {
    compensated_sum(amplitudes.iter().map(|a| a.norm_sqr())).sqrt()
}

/// Neumaier-compensated sum. Plain left-to-right summation over 2^n terms
/// loses about `2^n · ε`, which reflection chains then amplify.
pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

pub(crate) fn compensated_complex_sum(
    values: impl Iterator<Item = Complex64> + Clone,
) -> Complex64 {
    Complex64::new(
        compensated_sum(values.clone().map(|z| z.re)),
        compensated_sum(values.map(|z| z.im)),
    )
}

/// `⟨a|b⟩ = Σ conj(a_i) b_i`.
pub fn inner_product(a: &QuantumState, b: &QuantumState) -> Result<Complex64> {
    a.check_same_width(b)?;
    Ok(compensated_complex_sum(
        a.amplitudes
            .iter()
            .zip(&b.amplitudes)
            .map(|(x, y)| x.conj() * y),
    ))
}

/// `‖a − b‖₂`, sensitive to global phase.
pub fn state_distance(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    a.check_same_width(b)?;
    Ok(compensated_sum(
        a.amplitudes
            .iter()
            .zip(&b.amplitudes)
            .map(|(x, y)| (x - y).norm_sqr()),
    )
    .sqrt())
}
