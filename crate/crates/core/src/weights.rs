//! Integral weights of the root system `A_n`.
//!
//! Weights are stored by their coefficients at the fundamental weights
//! (ω-coordinates). The ε-coordinates of a weight are the coordinates in the
//! permutation module `Z^{n+1}`, normalised to the unique representative whose
//! entries sum to zero. Vector positions are 0-based throughout: ε-position `k`
//! is the conventional `ε_{k+1}`.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank. Right sets are stored as `u32` bitmasks over the
/// `n + 1` generators.
pub const MAX_RANK: usize = 31;

/// Rank `n` of `A_n` together with the dilation parameter `p` of `W_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankConfig {
    n: usize,
    p: u32,
}

impl RankConfig {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::InvalidRank { n, max: MAX_RANK });
        }
        let h = n as u32 + 1;
        if p < h {
            return Err(Error::PBelowCoxeterNumber { p, h });
        }
        Ok(Self { n, p })
    }

    /// `p` defaults to the Coxeter number `h = n + 1`.
    pub fn with_coxeter_p(n: usize) -> Result<Self> {
        Self::new(n, n as u32 + 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coxeter number.
    pub fn h(&self) -> u32 {
        self.n as u32 + 1
    }

    /// Dimension of the ambient ε-space.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn is_coxeter_p(&self) -> bool {
        self.p == self.h()
    }
}

/// The positive root `ε_i − ε_j` with 0-based positions `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "positive root needs i < j");
        Self { i, j }
    }

    /// The simple root `α_k = ε_k − ε_{k+1}` for `1 <= k <= n`.
    pub fn simple(k: usize) -> Self {
        assert!(k >= 1, "simple roots are numbered from 1");
        Self::new(k - 1, k)
    }

    /// The highest root `α_0 = ε_1 − ε_{n+1}`.
    pub fn highest(n: usize) -> Self {
        Self::new(0, n)
    }

    pub fn is_simple(&self) -> bool {
        self.j == self.i + 1
    }

    /// Height of the root, i.e. the number of simple roots it is a sum of.
    pub fn height(&self) -> usize {
        self.j - self.i
    }

    /// The root as an integer ε-vector of length `n + 1`.
    pub fn epsilon(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n + 1];
        v[self.i] = 1;
        v[self.j] = -1;
        v
    }
}

/// All `n(n+1)/2` positive roots of `A_n`, ordered lexicographically by `(i, j)`.
pub fn positive_roots(n: usize) -> Vec<Root> {
    (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Root::new(i, j)))
        .collect()
}

/// Half the sum of the positive roots, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoVector {
    entries: Vec<Rational64>,
}

impl RhoVector {
    pub fn new(n: usize) -> Self {
        let entries = (0..=n)
            .map(|k| Rational64::new(n as i64 - 2 * k as i64, 2))
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[Rational64] {
        &self.entries
    }

    /// `2ρ`, which is always integral.
    pub fn doubled(&self) -> Vec<i64> {
        self.entries.iter().map(|e| (e * 2).to_integer()).collect()
    }
}

/// An integral weight of `A_n` in ω-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    omega: Vec<i64>,
}

impl Weight {
    pub fn from_omega(omega: Vec<i64>) -> Self {
        assert!(!omega.is_empty(), "weights of A_0 are not supported");
        Self { omega }
    }

    pub fn from_epsilon(eps: &[i64]) -> Result<Self> {
        if eps.len() < 2 {
            return Err(Error::WrongLength {
                expected: 2,
                actual: eps.len(),
            });
        }
        omega_from_epsilon(eps.len() - 1, eps).map(Self::from_omega)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_omega(vec![0; n])
    }

    /// `(c, c, ..., c)` in ω-coordinates, i.e. `c·ρ`.
    pub fn rho_multiple(n: usize, c: i64) -> Self {
        Self::from_omega(vec![c; n])
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[i64] {
        &self.omega
    }

    /// Sum-zero integer ε-representative. Fails outside the root lattice.
    pub fn epsilon(&self) -> Result<Vec<i64>> {
        epsilon_from_omega(&self.omega)
    }

    /// Sum-zero ε-representative with rational entries; defined for every weight.
    pub fn epsilon_rational(&self) -> Vec<Rational64> {
        let n = self.rank();
        let (top, total) = sum_zero_top(&self.omega);
        let first = Rational64::new(top, 1) + Rational64::new(-total, n as i64 + 1);
        let mut out = Vec::with_capacity(n + 1);
        let mut cur = first;
        out.push(cur);
        for &w in &self.omega {
            cur -= Rational64::from_integer(w);
            out.push(cur);
        }
        out
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight::from_omega(
            self.omega
                .iter()
                .zip(&other.omega)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight::from_omega(
            self.omega
                .iter()
                .zip(&other.omega)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Subtract the positive root `r`.
    pub fn minus_root(&self, r: Root) -> Weight {
        let n = self.rank();
        let mut omega = self.omega.clone();
        // ε_i − ε_j has ω-coordinates −1 at i−1, +1 at i, +1 at j−1, −1 at j,
        // dropping positions outside 0..n.
        let mut bump = |pos: isize, d: i64| {
            if pos >= 0 && (pos as usize) < n {
                omega[pos as usize] += d;
            }
        };
        bump(r.i as isize - 1, 1);
        bump(r.i as isize, -1);
        bump(r.j as isize - 1, -1);
        bump(r.j as isize, 1);
        Weight::from_omega(omega)
    }

    pub fn pairing(&self, r: Root) -> Rational64 {
        pairing(&self.epsilon_rational(), r)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vector(&self.omega))
    }
}

// First entry and entry sum of the representative with last entry 0, where
// e_k = Σ_{i >= k} ω_i.
fn sum_zero_top(omega: &[i64]) -> (i64, i64) {
    let top: i64 = omega.iter().sum();
    let total: i64 = omega
        .iter()
        .enumerate()
        .map(|(i, w)| (i as i64 + 1) * w)
        .sum();
    (top, total)
}

/// Successive differences of an ε-vector. Constant shifts are quotiented out.
pub fn omega_from_epsilon(n: usize, eps: &[i64]) -> Result<Vec<i64>> {
    if eps.len() != n + 1 {
        return Err(Error::WrongLength {
            expected: n + 1,
            actual: eps.len(),
        });
    }
    Ok(eps.windows(2).map(|w| w[0] - w[1]).collect())
}

/// The unique sum-zero integer vector with the given successive differences.
pub fn epsilon_from_omega(omega: &[i64]) -> Result<Vec<i64>> {
    let n = omega.len();
    let (top, total) = sum_zero_top(omega);
    let dim = n as i64 + 1;
    if total.rem_euclid(dim) != 0 {
        return Err(Error::NotInRootLattice(omega.to_vec()));
    }
    let mut cur = top - total / dim;
    let mut out = Vec::with_capacity(n + 1);
    out.push(cur);
    for &w in omega {
        cur -= w;
        out.push(cur);
    }
    Ok(out)
}

/// `(v, α^∨)` for a root of `A_n`; coroots and roots coincide here.
pub fn pairing(v: &[Rational64], r: Root) -> Rational64 {
    v[r.i] - v[r.j]
}

/// `(v, ρ^∨)`: the sum of the simple-root coefficients of a root-lattice weight.
pub fn height(v: &Weight) -> Result<i64> {
    let eps = v.epsilon()?;
    let rho = RhoVector::new(v.rank());
    let h: Rational64 = eps
        .iter()
        .zip(rho.entries())
        .map(|(&e, r)| r * e)
        .sum();
    Ok(h.to_integer())
}

pub fn is_dominant(v: &Weight) -> bool {
    v.omega.iter().all(|&c| c >= 0)
}

/// `0 <= ω_i <= p − 1` for every `i`.
pub fn is_restricted(v: &Weight, p: u32) -> bool {
    v.omega.iter().all(|&c| c >= 0 && c < p as i64)
}

/// `(a, b, c)`, matching the table style.
pub fn format_vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Inverse of [`format_vector`]; tolerant of whitespace.
pub fn parse_vector(s: &str) -> Option<Vec<i64>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}
