//! Bruhat order on `W_p` and the order ideal of `W^+` below a fixed element.
//!
//! Comparison uses the lifting property: if `s` is a right descent of `w`, then
//! `v ≤ w` iff `vs ≤ ws` (when `s` is also a right descent of `v`) or
//! `v ≤ ws` (when it is not). Always choosing the smallest right descent of
//! `w` makes the chain `w = w⁰ ▷ w¹ ▷ ⋯ ▷ e` a function of `w` alone, so a memo
//! keyed by `(v, depth)` is valid for every query against the same `w`.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::affine_group::{AffineElement, AffineWeylGroup, RightSet, Word};
use crate::error::{Error, Result};
use crate::weights::{is_dominant, positive_roots, Weight};

/// Default bound on `ℓ(w)` for [`subword_oracle`].
pub const DEFAULT_ORACLE_BOUND: u32 = 10;

/// The deterministic descent chain of a fixed element.
#[derive(Debug, Clone)]
pub struct DescentChain {
    /// `elements[k]` is `w^k`; the last entry is the identity.
    elements: Vec<AffineElement>,
    /// `generators[k]` is the smallest right descent of `w^k`.
    generators: Vec<u8>,
}

impl DescentChain {
    pub fn new(group: &AffineWeylGroup, w: &AffineElement) -> Self {
        let word = group.reduced_word(w);
        let mut elements = Vec::with_capacity(word.len() + 1);
        let mut generators = Vec::with_capacity(word.len());
        let mut cur = w.clone();
        for &g in word.letters().iter().rev() {
            elements.push(cur.clone());
            generators.push(g);
            cur.mul_generator_right(g as usize);
        }
        elements.push(cur);
        Self {
            elements,
            generators,
        }
    }

    /// `ℓ(w)`.
    pub fn length(&self) -> u32 {
        self.generators.len() as u32
    }

    pub fn top(&self) -> &AffineElement {
        &self.elements[0]
    }

    pub fn element(&self, depth: usize) -> &AffineElement {
        &self.elements[depth]
    }

    pub fn generator(&self, depth: usize) -> u8 {
        self.generators[depth]
    }
}

/// Memoised comparisons `v ≤ w` against one fixed right argument `w`.
#[derive(Debug, Clone)]
pub struct BruhatCache {
    chain: DescentChain,
    memo: HashMap<(AffineElement, u32), bool>,
    memoize: bool,
}

impl BruhatCache {
    pub fn new(group: &AffineWeylGroup, w: &AffineElement) -> Self {
        Self {
            chain: DescentChain::new(group, w),
            memo: HashMap::new(),
            memoize: true,
        }
    }

    /// Keeps only the descent chain. Each query is a single walk of at most
    /// `ℓ(w)` steps, which at these sizes is cheaper than hashing the states.
    pub fn chain_only(group: &AffineWeylGroup, w: &AffineElement) -> Self {
        Self {
            memoize: false,
            ..Self::new(group, w)
        }
    }

    pub fn is_memoizing(&self) -> bool {
        self.memoize
    }

    pub fn right_argument(&self) -> &AffineElement {
        self.chain.top()
    }

    pub fn chain(&self) -> &DescentChain {
        &self.chain
    }

    /// Number of memoised `(v, depth)` states.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `v ≤ w` for the cached `w`.
    pub fn leq(&mut self, group: &AffineWeylGroup, v: &AffineElement) -> bool {
        self.leq_with_length(group, v, group.length(v))
    }

    /// As [`BruhatCache::leq`] when `ℓ(v)` is already known.
    pub fn leq_with_length(&mut self, group: &AffineWeylGroup, v: &AffineElement, length: u32) -> bool {
        let top = self.chain.length();
        if length > top {
            return false;
        }
        let mut cur = v.clone();
        let mut len = length;
        let mut visited: Vec<(AffineElement, u32)> = Vec::new();
        let mut depth = 0u32;
        let result = loop {
            let remaining = top - depth;
            if len > remaining {
                break false;
            }
            if len == remaining {
                break cur == *self.chain.element(depth as usize);
            }
            if self.memoize {
                let key = (cur.clone(), depth);
                if let Some(&hit) = self.memo.get(&key) {
                    break hit;
                }
                visited.push(key);
            }
            let s = self.chain.generator(depth as usize) as usize;
            if group.is_right_descent(&cur, s) {
                cur.mul_generator_right(s);
                len -= 1;
            }
            depth += 1;
        };
        for key in visited {
            self.memo.insert(key, result);
        }
        result
    }
}

/// Bruhat comparison through a cache. A cache built for a different right
/// argument is rebuilt for `w` first, keeping its memo mode.
pub fn bruhat_leq(group: &AffineWeylGroup, v: &AffineElement, w: &AffineElement, cache: &mut BruhatCache) -> bool {
    if cache.right_argument() != w {
        *cache = BruhatCache {
            memoize: cache.memoize,
            ..BruhatCache::new(group, w)
        };
    }
    cache.leq(group, v)
}

/// The lifting recursion with no memo, choosing descents of `w` on the fly.
pub fn bruhat_leq_uncached(group: &AffineWeylGroup, v: &AffineElement, w: &AffineElement) -> bool {
    assert_eq!(v.rank(), w.rank(), "rank mismatch");
    let mut v = v.clone();
    let mut w = w.clone();
    let mut lv = group.length(&v);
    let mut lw = group.length(&w);
    loop {
        if lv > lw {
            return false;
        }
        if lv == lw {
            return v == w;
        }
        let s = group
            .right_set(&w)
            .smallest()
            .expect("w is not the identity since lv < lw");
        if group.is_right_descent(&v, s) {
            v.mul_generator_right(s);
            lv -= 1;
        }
        w.mul_generator_right(s);
        lw -= 1;
    }
}

/// Subword property: `v ≤ w` iff some subword of a reduced word of `w`
/// multiplies to `v`. Exponential in `ℓ(w)`.
pub fn subword_oracle(group: &AffineWeylGroup, v: &AffineElement, w: &AffineElement, bound: u32) -> Result<bool> {
    Ok(subword_products(group, w, bound)?.contains(v))
}

/// Every product of a subword of the canonical reduced word of `w`.
pub fn subword_products(group: &AffineWeylGroup, w: &AffineElement, bound: u32) -> Result<HashSet<AffineElement>> {
    let word = group.reduced_word(w);
    if word.len() as u32 > bound {
        return Err(Error::OracleBoundExceeded {
            length: word.len() as u32,
            bound,
        });
    }
    Ok(lower_interval(group, w))
}

/// The full lower interval `[e, w]` in `W_p`, via `[e, w] = [e, ws] ∪ [e, ws]·s`
/// for a right descent `s`.
pub fn lower_interval(group: &AffineWeylGroup, w: &AffineElement) -> HashSet<AffineElement> {
    let word = group.reduced_word(w);
    let mut interval = HashSet::new();
    interval.insert(group.identity());
    for &g in word.letters() {
        let shifted: Vec<AffineElement> = interval
            .iter()
            .map(|u| {
                let mut u = u.clone();
                u.mul_generator_right(g as usize);
                u
            })
            .collect();
        interval.extend(shifted);
    }
    interval
}

/// The element of maximal length in the coset `W_f·x`.
///
/// `W_f` acts on the left by permuting the base-point image, and `W^+` is
/// exactly where that image is strictly decreasing, so sorting finds it.
pub fn max_coset_representative(group: &AffineWeylGroup, x: &AffineElement) -> AffineElement {
    let mut z = group.base_image(x);
    z.sort_unstable_by(|a, b| b.cmp(a));
    element_from_base_image(group, &z)
}

fn element_from_base_image(group: &AffineWeylGroup, z: &[i64]) -> AffineElement {
    let p = group.p() as i64;
    let mut sigma = vec![0u8; z.len()];
    let mut tau = vec![0i32; z.len()];
    for (k, &zk) in z.iter().enumerate() {
        let j = zk.rem_euclid(p);
        sigma[j as usize] = k as u8;
        tau[k] = ((zk - j) / p) as i32;
    }
    AffineElement::from_parts(sigma, tau).expect("base image of a group element")
}

/// `{v ∈ W^+ : v ≤ w}` for `w ∈ W^+`, computed without any Bruhat comparison.
///
/// Along a reduced word `w = s_1⋯s_m`, `[e, x s] = [e, x] ∪ [e, x]·s`, and
/// projecting each interval to maximal coset representatives gives
/// `P(x s) = P(x) ∪ {max(W_f·m s) : m ∈ P(x)}` with `P(e) = {w_0}`. For
/// `w ∈ W^+` the projection of `[e, w]` is exactly the ideal.
pub fn wplus_ideal_by_projection(group: &AffineWeylGroup, w: &AffineElement) -> Result<HashSet<AffineElement>> {
    if !group.is_in_wplus(w) {
        return Err(Error::NotInWplus(format!("{w:?}")));
    }
    let word = group.reduced_word(w);
    let mut ideal = HashSet::new();
    ideal.insert(group.longest_finite_element());
    for &g in word.letters() {
        let step: Vec<AffineElement> = ideal
            .iter()
            .map(|m| {
                let mut ms = m.clone();
                ms.mul_generator_right(g as usize);
                max_coset_representative(group, &ms)
            })
            .collect();
        ideal.extend(step);
    }
    Ok(ideal)
}

/// `λ − μ` is a nonnegative integer combination of simple roots.
pub fn root_order_leq(mu: &Weight, lambda: &Weight) -> bool {
    let diff = lambda.sub(mu);
    match diff.epsilon() {
        Ok(eps) => {
            let mut partial = 0;
            eps.iter().all(|e| {
                partial += e;
                partial >= 0
            })
        }
        Err(_) => false,
    }
}

/// Every dominant weight `μ ≤ λ` in root order, for dominant `λ`, sorted.
///
/// Walks down from `λ` by positive roots, staying dominant; covering
/// relations among dominant weights are differences of positive roots, so no
/// dominant weight below `λ` is missed.
pub fn dominant_weights_below(lambda: &Weight) -> Vec<Weight> {
    assert!(is_dominant(lambda), "start weight must be dominant");
    let roots = positive_roots(lambda.rank());
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(mu) = queue.pop_front() {
        for &r in &roots {
            let next = mu.minus_root(r);
            if is_dominant(&next) && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

/// One element of the ideal with the data every table row needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealMember {
    pub element: AffineElement,
    pub weight: Weight,
    pub epsilon: Vec<i64>,
    pub length: u32,
    /// Canonical reduced word of `y` in `w = w_0·y`.
    pub y_word: Word,
    pub right_set: RightSet,
}

impl IdealMember {
    pub fn new(group: &AffineWeylGroup, element: AffineElement) -> Result<Self> {
        let (_, y) = group.coset_factorize(&element)?;
        Ok(Self {
            weight: group.weight_from_element(&element),
            epsilon: group.weight_epsilon(&element),
            length: group.length(&element),
            y_word: group.reduced_word(&y),
            right_set: group.right_set(&element),
            element,
        })
    }
}

/// `{v ∈ W^+ : v ≤ root}` in canonical order: length descending, then `y`-word
/// ascending.
#[derive(Debug, Clone)]
pub struct IdealEnumeration {
    root: AffineElement,
    members: Vec<IdealMember>,
}

impl IdealEnumeration {
    /// Assembles an enumeration from already-filtered members, restoring canonical order.
    pub fn from_elements(group: &AffineWeylGroup, root: AffineElement, elements: Vec<AffineElement>) -> Result<Self> {
        let mut members = elements
            .into_iter()
            .map(|e| IdealMember::new(group, e))
            .collect::<Result<Vec<_>>>()?;
        sort_canonical(&mut members);
        Ok(Self { root, members })
    }

    pub fn root(&self) -> &AffineElement {
        &self.root
    }

    pub fn members(&self) -> &[IdealMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &AffineElement> {
        self.members.iter().map(|m| &m.element)
    }

    pub fn position(&self, w: &AffineElement) -> Option<usize> {
        self.members.iter().position(|m| m.element == *w)
    }
}

fn sort_canonical(members: &mut [IdealMember]) {
    members.sort_by(|a, b| b.length.cmp(&a.length).then_with(|| a.y_word.cmp(&b.y_word)));
}

/// Every element of length at most `max`, paired with its length, by
/// breadth-first search in the Cayley graph.
pub fn cayley_ball(group: &AffineWeylGroup, max: u32) -> Vec<(AffineElement, u32)> {
    let mut seen = HashSet::new();
    let mut out = vec![(group.identity(), 0)];
    seen.insert(group.identity());
    let mut frontier = vec![group.identity()];
    for k in 1..=max {
        let mut next = Vec::new();
        for u in &frontier {
            for i in 0..=group.n() {
                let mut v = u.clone();
                v.mul_generator_right(i);
                if seen.insert(v.clone()) {
                    next.push(v.clone());
                    out.push((v, k));
                }
            }
        }
        frontier = next;
    }
    out
}

/// `{v ∈ W^+ : v ≤ wmax}`.
///
/// Candidates are the dominant weights below `wmax·(−2ρ)` in root order that
/// lie in the orbit; each is then tested exactly with the lifting recursion.
/// Runs on the current rayon pool.
pub fn enumerate_wplus_ideal(group: &AffineWeylGroup, wmax: &AffineElement) -> Result<IdealEnumeration> {
    if !group.is_in_wplus(wmax) {
        return Err(Error::NotInWplus(format!("{wmax:?}")));
    }
    let top = group.weight_from_element(wmax);
    let candidates: Vec<AffineElement> = dominant_weights_below(&top)
        .iter()
        // singular weights are skipped; their subtrees were already walked
        .filter_map(|mu| group.element_from_weight(mu).ok())
        .collect();
    let chain = BruhatCache::chain_only(group, wmax);
    let keep: Vec<bool> = candidates
        .par_iter()
        .map_init(|| chain.clone(), |cache, v| cache.leq(group, v))
        .collect();
    let elements = candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect();
    IdealEnumeration::from_elements(group, wmax.clone(), elements)
}
