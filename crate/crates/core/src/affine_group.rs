//! The affine Weyl group `W_p` of type `Ã_n`.
//!
//! An element is a pair `(σ, τ)` of a permutation of the `n + 1` ε-positions and
//! a root-lattice translation. It acts on ρ-shifted points `y = λ + ρ` by
//! `y ↦ σ(y) + p·τ`, where `σ(y)_{σ(j)} = y_j`. Generators `s_1..s_n` are the
//! adjacent transpositions; `s_0` is the reflection in `(y, α_0) = −p`, i.e.
//! `(transposition(1, n+1), −α_0)`. Lengths and descents are measured relative
//! to the alcove containing the base point `−ρ`, the ρ-shift of `−2ρ`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{is_dominant, positive_roots, RankConfig, RhoVector, Weight};

/// An element of `W_p` (the group itself does not depend on `p`; its action does).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct AffineElement {
    /// `sigma[j] = σ(j)`, 0-based.
    sigma: Vec<u8>,
    tau: Vec<i32>,
}

/// Wire form: `{"sigma": [..], "tau": [..]}` with σ written 1-based.
#[derive(Serialize, Deserialize)]
struct ElementRepr {
    sigma: Vec<u32>,
    tau: Vec<i64>,
}

impl From<AffineElement> for ElementRepr {
    fn from(e: AffineElement) -> Self {
        ElementRepr {
            sigma: e.sigma.iter().map(|&s| s as u32 + 1).collect(),
            tau: e.tau.iter().map(|&t| t as i64).collect(),
        }
    }
}

impl TryFrom<ElementRepr> for AffineElement {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self> {
        let sigma = r
            .sigma
            .iter()
            .map(|&s| {
                s.checked_sub(1)
                    .and_then(|s| u8::try_from(s).ok())
                    .ok_or_else(|| Error::CorruptCache(format!("bad permutation entry {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let tau = r
            .tau
            .iter()
            .map(|&t| {
                i32::try_from(t)
                    .map_err(|_| Error::CorruptCache(format!("translation entry {t} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        AffineElement::from_parts(sigma, tau)
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineElement {{ sigma: {:?}, tau: {:?} }}", self.sigma, self.tau)
    }
}

impl AffineElement {
    pub fn identity(n: usize) -> Self {
        Self {
            sigma: (0..=n as u8).collect(),
            tau: vec![0; n + 1],
        }
    }

    /// The generator `s_i`, `0 <= i <= n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::InvalidGenerator { index: i, n });
        }
        let mut e = Self::identity(n);
        e.mul_generator_right(i);
        Ok(e)
    }

    /// Builds an element from a 0-based permutation and a sum-zero translation.
    pub fn from_parts(sigma: Vec<u8>, tau: Vec<i32>) -> Result<Self> {
        if sigma.len() != tau.len() {
            return Err(Error::WrongLength {
                expected: sigma.len(),
                actual: tau.len(),
            });
        }
        if sigma.len() < 2 {
            return Err(Error::InvalidRank { n: 0, max: crate::weights::MAX_RANK });
        }
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            let s = s as usize;
            if s >= seen.len() || seen[s] {
                return Err(Error::CorruptCache(format!("{sigma:?} is not a permutation")));
            }
            seen[s] = true;
        }
        if tau.iter().map(|&t| t as i64).sum::<i64>() != 0 {
            return Err(Error::CorruptCache(format!("translation {tau:?} does not sum to zero")));
        }
        Ok(Self { sigma, tau })
    }

    /// Product `s_{w[0]} s_{w[1]} ⋯` of generators.
    pub fn from_word(n: usize, word: &[u8]) -> Result<Self> {
        let mut e = Self::identity(n);
        for &g in word {
            if g as usize > n {
                return Err(Error::InvalidGenerator { index: g as usize, n });
            }
            e.mul_generator_right(g as usize);
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.sigma.len() - 1
    }

    pub fn sigma(&self) -> &[u8] {
        &self.sigma
    }

    pub fn tau(&self) -> &[i32] {
        &self.tau
    }

    pub fn is_identity(&self) -> bool {
        self.tau.iter().all(|&t| t == 0) && self.sigma.iter().enumerate().all(|(j, &s)| s as usize == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineElement) -> Result<AffineElement> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        let sigma = other.sigma.iter().map(|&j| self.sigma[j as usize]).collect();
        let mut tau = self.tau.clone();
        for (&sj, &t) in self.sigma.iter().zip(&other.tau) {
            tau[sj as usize] += t;
        }
        Ok(AffineElement { sigma, tau })
    }

    pub fn inverse(&self) -> AffineElement {
        let dim = self.sigma.len();
        let mut sigma = vec![0u8; dim];
        for (j, &s) in self.sigma.iter().enumerate() {
            sigma[s as usize] = j as u8;
        }
        let tau = (0..dim).map(|j| -self.tau[self.sigma[j] as usize]).collect();
        AffineElement { sigma, tau }
    }

    /// `self ← self · s_i`.
    pub fn mul_generator_right(&mut self, i: usize) {
        let n = self.rank();
        debug_assert!(i <= n);
        if i == 0 {
            let (a, b) = (self.sigma[0] as usize, self.sigma[n] as usize);
            self.tau[a] -= 1;
            self.tau[b] += 1;
            self.sigma.swap(0, n);
        } else {
            self.sigma.swap(i - 1, i);
        }
    }

    /// `self ← s_i · self`.
    pub fn mul_generator_left(&mut self, i: usize) {
        let n = self.rank();
        debug_assert!(i <= n);
        let (a, b) = if i == 0 { (0, n) } else { (i - 1, i) };
        for s in self.sigma.iter_mut() {
            if *s as usize == a {
                *s = b as u8;
            } else if *s as usize == b {
                *s = a as u8;
            }
        }
        self.tau.swap(a, b);
        if i == 0 {
            self.tau[0] -= 1;
            self.tau[n] += 1;
        }
    }

    /// Affine action `y ↦ σ(y) + p·τ` on ρ-shifted coordinates.
    pub fn apply(&self, y: &[Rational64], p: u32) -> Vec<Rational64> {
        let mut out = vec![Rational64::from_integer(0); y.len()];
        for (j, &s) in self.sigma.iter().enumerate() {
            out[s as usize] = y[j];
        }
        for (o, &t) in out.iter_mut().zip(&self.tau) {
            *o += Rational64::from_integer(p as i64 * t as i64);
        }
        out
    }
}

/// A word in the generators `s_0..s_n`, written as `s0s3s1s2` (`1` when empty).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// LaTeX form, `s_{0}s_{3}` (or `1`).
    pub fn to_latex(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|g| format!("s_{{{g}}}")).collect()
    }

    /// Bare subscripts, `0312`, comma-separated once any index exceeds 9.
    pub fn to_compact(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        if self.0.iter().all(|&g| g < 10) {
            self.0.iter().map(|g| g.to_string()).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
            parts.join(",")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &g in &self.0 {
            if g < 10 {
                write!(f, "s{g}")?;
            } else {
                write!(f, "s{{{g}}}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `s0s3s1s2`, `s_{0}s_{3}`, `s{10}` and `1` (or the empty string).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::default());
        }
        let bad = || Error::ParseWord(s.to_string());
        let bytes = t.as_bytes();
        let mut pos = 0;
        let mut out = Vec::new();
        while pos < bytes.len() {
            if bytes[pos] != b's' {
                return Err(bad());
            }
            pos += 1;
            if pos < bytes.len() && bytes[pos] == b'_' {
                pos += 1;
            }
            let braced = pos < bytes.len() && bytes[pos] == b'{';
            if braced {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(bad());
            }
            let g: u8 = t[start..pos].parse().map_err(|_| bad())?;
            if braced {
                if pos >= bytes.len() || bytes[pos] != b'}' {
                    return Err(bad());
                }
                pos += 1;
            }
            out.push(g);
        }
        Ok(Word(out))
    }
}

/// A subset of the generator indices `{0, 1, ..., n}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RightSet(u32);

impl RightSet {
    pub fn empty() -> Self {
        RightSet(0)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = RightSet(0);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(&self, other: &RightSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn smallest(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl fmt::Display for RightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for RightSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.indices())
    }
}

impl<'de> Deserialize<'de> for RightSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= 32) {
            return Err(serde::de::Error::custom(format!("generator index {bad} out of range")));
        }
        Ok(RightSet::from_indices(v))
    }
}

/// `W_p` for a fixed rank and `p`: everything that depends on the action.
#[derive(Debug, Clone)]
pub struct AffineWeylGroup {
    cfg: RankConfig,
    rho: RhoVector,
}

impl AffineWeylGroup {
    pub fn new(cfg: RankConfig) -> Self {
        Self {
            cfg,
            rho: RhoVector::new(cfg.n()),
        }
    }

    pub fn config(&self) -> RankConfig {
        self.cfg
    }

    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    pub fn p(&self) -> u32 {
        self.cfg.p()
    }

    pub fn rho(&self) -> &RhoVector {
        &self.rho
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement::identity(self.n())
    }

    pub fn generator(&self, i: usize) -> Result<AffineElement> {
        AffineElement::generator(self.n(), i)
    }

    pub fn generators(&self) -> Vec<AffineElement> {
        (0..=self.n())
            .map(|i| AffineElement::generator(self.n(), i).expect("index in range"))
            .collect()
    }

    pub fn from_word(&self, word: &[u8]) -> Result<AffineElement> {
        AffineElement::from_word(self.n(), word)
    }

    fn check_rank(&self, w: &AffineElement) {
        assert_eq!(w.rank(), self.n(), "element rank does not match the group");
    }

    /// Image of the base point `−ρ`, shifted by `n/2` so that it is integral:
    /// `z_{σ(j)} = j + p·τ_{σ(j)}`.
    pub fn base_image(&self, w: &AffineElement) -> Vec<i64> {
        self.check_rank(w);
        let p = self.p() as i64;
        let mut z = vec![0i64; w.sigma.len()];
        for (j, &s) in w.sigma.iter().enumerate() {
            let s = s as usize;
            z[s] = j as i64 + p * w.tau[s] as i64;
        }
        z
    }

    /// Coxeter length, counted as the number of reflecting hyperplanes
    /// separating the base alcove from its image:
    /// `Σ_{α>0} |⌊(w(−ρ), α^∨)/p⌋ + 1|`.
    pub fn length(&self, w: &AffineElement) -> u32 {
        let z = self.base_image(w);
        length_from_base_image(&z, self.p() as i64)
    }

    /// `ℓ(w s_i) < ℓ(w)`, decided by which side of the wall `w(H_i)` the base
    /// point lies on.
    pub fn is_right_descent(&self, w: &AffineElement, i: usize) -> bool {
        let n = w.rank();
        let p = self.p() as i64;
        let (a, b) = if i == 0 {
            (w.sigma[0] as usize, w.sigma[n] as usize)
        } else {
            (w.sigma[i - 1] as usize, w.sigma[i] as usize)
        };
        let g = (a as i64 - b as i64) - p * (w.tau[a] as i64 - w.tau[b] as i64);
        if i == 0 {
            g + p < 0
        } else {
            g > 0
        }
    }

    pub fn right_set(&self, w: &AffineElement) -> RightSet {
        self.check_rank(w);
        RightSet::from_indices((0..=self.n()).filter(|&i| self.is_right_descent(w, i)))
    }

    /// Right descent set computed from the length function alone.
    pub fn right_set_by_length(&self, w: &AffineElement) -> RightSet {
        let l = self.length(w);
        RightSet::from_indices((0..=self.n()).filter(|&i| {
            let mut ws = w.clone();
            ws.mul_generator_right(i);
            self.length(&ws) < l
        }))
    }

    /// `ℓ(s_i w) < ℓ(w)`: the wall `H_i` of the base alcove separates it from `w`'s alcove.
    pub fn left_descends(&self, w: &AffineElement, i: usize) -> bool {
        let z = self.base_image(w);
        let n = self.n();
        if i == 0 {
            z[0] - z[n] + (self.p() as i64) < 0
        } else {
            z[i - 1] > z[i]
        }
    }

    /// Membership in `W^+`: maximal length in the coset `W_f w`.
    pub fn is_in_wplus(&self, w: &AffineElement) -> bool {
        self.base_image(w).windows(2).all(|p| p[0] > p[1])
    }

    /// `w·λ = w(λ + ρ) − ρ`.
    pub fn dot_action(&self, w: &AffineElement, lam: &Weight) -> Result<Weight> {
        self.check_rank(w);
        if lam.rank() != self.n() {
            return Err(Error::RankMismatch(lam.rank(), self.n()));
        }
        let y: Vec<Rational64> = lam
            .epsilon_rational()
            .iter()
            .zip(self.rho.entries())
            .map(|(e, r)| e + r)
            .collect();
        let image = w.apply(&y, self.p());
        let omega = image
            .iter()
            .zip(self.rho.entries())
            .map(|(v, r)| v - r)
            .collect::<Vec<_>>()
            .windows(2)
            .map(|d| {
                let c = d[0] - d[1];
                assert!(c.is_integer(), "dot action left the weight lattice");
                c.to_integer()
            })
            .collect();
        Ok(Weight::from_omega(omega))
    }

    /// `w·(−2ρ)`.
    pub fn weight_from_element(&self, w: &AffineElement) -> Weight {
        let eps = self.weight_epsilon(w);
        Weight::from_epsilon(&eps).expect("length n + 1")
    }

    /// Sum-zero ε-vector of `w·(−2ρ)`.
    pub fn weight_epsilon(&self, w: &AffineElement) -> Vec<i64> {
        let n = self.n() as i64;
        self.base_image(w)
            .iter()
            .enumerate()
            .map(|(k, z)| z - n + k as i64)
            .collect()
    }

    /// The unique `w` with `w·(−2ρ) = μ`.
    pub fn element_from_weight(&self, mu: &Weight) -> Result<AffineElement> {
        let not_in_orbit = |reason: &str| Error::OrbitMembership {
            omega: mu.omega().to_vec(),
            reason: reason.to_string(),
        };
        if mu.rank() != self.n() {
            return Err(Error::RankMismatch(mu.rank(), self.n()));
        }
        let eps = mu.epsilon().map_err(|_| not_in_orbit("not in the root lattice"))?;
        let n = self.n() as i64;
        let p = self.p() as i64;
        let dim = self.cfg.dim();
        let mut sigma = vec![u8::MAX; dim];
        let mut tau = vec![0i32; dim];
        for (k, &e) in eps.iter().enumerate() {
            let z = e + n - k as i64;
            let j = z.rem_euclid(p);
            if j > n {
                return Err(not_in_orbit("residue outside the base alcove vertices"));
            }
            let j = j as usize;
            if sigma[j] != u8::MAX {
                return Err(not_in_orbit("repeated residue (singular weight)"));
            }
            sigma[j] = k as u8;
            tau[k] = i32::try_from((z - j as i64) / p).map_err(|_| not_in_orbit("translation overflow"))?;
        }
        let w = AffineElement::from_parts(sigma, tau).map_err(|e| not_in_orbit(&e.to_string()))?;
        if self.weight_from_element(&w) != *mu {
            return Err(not_in_orbit("round trip failed"));
        }
        Ok(w)
    }

    /// `w_0`: `σ(j) = n − j`, no translation.
    pub fn longest_finite_element(&self) -> AffineElement {
        let n = self.n();
        AffineElement {
            sigma: (0..=n).rev().map(|j| j as u8).collect(),
            tau: vec![0; n + 1],
        }
    }

    /// Canonical reduced word: repeatedly strip the smallest right descent,
    /// then reverse.
    pub fn reduced_word(&self, w: &AffineElement) -> Word {
        self.check_rank(w);
        let mut cur = w.clone();
        let mut letters = Vec::new();
        while let Some(i) = (0..=self.n()).find(|&i| self.is_right_descent(&cur, i)) {
            cur.mul_generator_right(i);
            letters.push(i as u8);
        }
        debug_assert!(cur.is_identity());
        letters.reverse();
        Word(letters)
    }

    /// `w = w_0 · y` with lengths adding; returns `(w_0, y)`.
    pub fn coset_factorize(&self, w: &AffineElement) -> Result<(AffineElement, AffineElement)> {
        if !self.is_in_wplus(w) {
            return Err(Error::NotInWplus(format!("{w:?}")));
        }
        let w0 = self.longest_finite_element();
        let y = w0.compose(w)?;
        if self.length(w) != self.length(&w0) + self.length(&y) {
            return Err(Error::NotInWplus(format!("{w:?}: lengths do not add")));
        }
        Ok((w0, y))
    }

    /// `2(ρ, ρ^∨)`, the length of the maximal element.
    pub fn two_rho_rho(&self) -> u32 {
        let s: Rational64 = self.rho.entries().iter().map(|r| r * r).sum();
        (s * 2).to_integer() as u32
    }

    /// The element with `w·(−2ρ) = (p − 2)ρ`; only defined for `p = h`.
    pub fn find_wmax(&self) -> Result<AffineElement> {
        if !self.cfg.is_coxeter_p() {
            return Err(Error::UnsupportedP {
                p: self.p(),
                h: self.cfg.h(),
            });
        }
        let target = Weight::rho_multiple(self.n(), self.p() as i64 - 2);
        let w = self.element_from_weight(&target)?;
        assert_eq!(self.length(&w), self.two_rho_rho(), "maximal element has the wrong length");
        Ok(w)
    }

    /// `(λ + ρ, α^∨)` for every positive root, on `λ = w·(−2ρ)`.
    pub fn shifted_pairings(&self, w: &AffineElement) -> Vec<i64> {
        let z = self.base_image(w);
        positive_roots(self.n()).iter().map(|r| z[r.i] - z[r.j]).collect()
    }

    /// `w·(−2ρ)` is dominant.
    pub fn has_dominant_weight(&self, w: &AffineElement) -> bool {
        is_dominant(&self.weight_from_element(w))
    }
}

/// Length from the (integral, shifted) image of the base point.
pub fn length_from_base_image(z: &[i64], p: i64) -> u32 {
    let mut total = 0u32;
    for a in 0..z.len() {
        for b in a + 1..z.len() {
            let d = z[a] - z[b];
            debug_assert!(d.rem_euclid(p) != 0, "image of the base point is not regular");
            total += (d.div_euclid(p) + 1).unsigned_abs() as u32;
        }
    }
    total
}
