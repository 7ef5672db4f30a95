//! Deterministic seeded generation of states, points and local operations.
//!
//! The generator is SplitMix64: state advances by 0x9E3779B97F4A7C15 and the
//! output is mixed with two xor-shift-multiply rounds (0xBF58476D1CE4E5B9,
//! 0x94D049BB133111EB). The recurrence is fixed so that seeded checks
//! reproduce bit-exactly across implementations.

use crate::linalg::Matrix;
use crate::scalar::{rational, GaussianRational, Rational};
use crate::tensor::{LocalOperation, PartyVectorTuple, Tensor, TensorFormat};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in [-bound, bound].
    pub fn int_in(&mut self, bound: i64) -> i64 {
        debug_assert!(bound >= 1);
        let span = (2 * bound + 1) as u64;
        (self.next_u64() % span) as i64 - bound
    }

    /// Nonzero rational p/q with |p| <= bound, 1 <= q <= 4.
    pub fn nonzero_rational(&mut self, bound: i64) -> Rational {
        loop {
            let p = self.int_in(bound);
            if p != 0 {
                let q = 1 + (self.next_u64() % 4) as i64;
                return rational(p, q);
            }
        }
    }

    pub fn gaussian_int(&mut self, bound: i64) -> GaussianRational {
        let re = self.int_in(bound);
        let im = self.int_in(bound);
        GaussianRational::from_parts(re, 1, im, 1)
    }
}

/// Random tensor with Gaussian-integer entries in [-bound, bound]; resamples
/// until at least one entry is nonzero.
pub fn random_tensor(format: &TensorFormat, rng: &mut SplitMix64, bound: i64) -> Tensor {
    loop {
        let entries: Vec<GaussianRational> = (0..format.total_size())
            .map(|_| rng.gaussian_int(bound))
            .collect();
        if entries.iter().any(|e| !e.is_zero()) {
            return Tensor::new(format.clone(), entries).expect("entry count matches");
        }
    }
}

/// Same as `random_tensor` with a fresh generator; the CLI `random` command.
pub fn random_state(format: &TensorFormat, seed: u64, bound: i64) -> Tensor {
    let mut rng = SplitMix64::new(seed);
    random_tensor(format, &mut rng, bound)
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut SplitMix64, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gaussian_int(bound));
        }
    }
    m
}

/// Resamples until the determinant is nonzero.
pub fn random_invertible_matrix(n: usize, rng: &mut SplitMix64, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(n, n, rng, bound);
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

pub fn random_invertible_op(
    format: &TensorFormat,
    rng: &mut SplitMix64,
    bound: i64,
) -> LocalOperation {
    LocalOperation::new(
        format
            .dims()
            .iter()
            .map(|&d| random_invertible_matrix(d, rng, bound))
            .collect(),
    )
    .expect("square factors")
}

/// Every factor is a nonzero rank-1 matrix u v^T, so the operation is
/// noninvertible on every party with dimension >= 2.
pub fn random_rank_one_op(
    format: &TensorFormat,
    rng: &mut SplitMix64,
    bound: i64,
) -> LocalOperation {
    let factor = |d: usize, rng: &mut SplitMix64| loop {
        let u: Vec<i64> = (0..d).map(|_| rng.int_in(bound)).collect();
        let v: Vec<i64> = (0..d).map(|_| rng.int_in(bound)).collect();
        if u.iter().all(|&x| x == 0) || v.iter().all(|&x| x == 0) {
            continue;
        }
        let mut m = Matrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                m.set(r, c, GaussianRational::from_int(u[r] * v[c]));
            }
        }
        return m;
    };
    LocalOperation::new(
        format
            .dims()
            .iter()
            .map(|&d| factor(d, rng))
            .collect(),
    )
    .expect("square factors")
}

/// A noninvertible operation: one randomly chosen party gets a rank-deficient
/// factor, the rest stay invertible.
pub fn random_noninvertible_op(
    format: &TensorFormat,
    rng: &mut SplitMix64,
    bound: i64,
) -> LocalOperation {
    let n = format.n_parties();
    let victim = (rng.next_u64() as usize) % n;
    let matrices = format
        .dims()
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            if j == victim {
                // rank d-1 projector-like factor
                loop {
                    let m = random_matrix(d, d, rng, bound);
                    let mut deficient = m.clone();
                    for c in 0..d {
                        deficient.set(d - 1, c, GaussianRational::zero());
                    }
                    if deficient.rank() == d - 1 {
                        return deficient;
                    }
                }
            } else {
                random_invertible_matrix(d, rng, bound)
            }
        })
        .collect();
    LocalOperation::new(matrices).expect("square factors")
}

pub fn random_point(format: &TensorFormat, rng: &mut SplitMix64, bound: i64) -> PartyVectorTuple {
    PartyVectorTuple::new(
        format
            .dims()
            .iter()
            .map(|&d| (0..d).map(|_| rng.gaussian_int(bound)).collect())
            .collect(),
    )
}
