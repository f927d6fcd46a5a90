//! The mod-2 Steenrod algebra in the basis of words `Sq^{i_1} ... Sq^{i_k}`.
//!
//! Words compose right to left: `Sq^{i_1}` is applied last. Reduction to the
//! admissible basis rewrites the leftmost inadmissible adjacent pair with the
//! Adem relation
//!
//! ```text
//! Sq^a Sq^b = sum_{c=0}^{a/2} C(b - 1 - c, a - 2c) Sq^{a+b-c} Sq^c      (a < 2b)
//! ```
//!
//! and memoizes every reduced word in a process-wide table.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use crate::error::ParseError;
use crate::gf2::binom_mod2;

/// A composable word in the squares. The empty word is the identity; no
/// letter is zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SqWord(Vec<u32>);

impl SqWord {
    pub fn identity() -> Self {
        SqWord(Vec::new())
    }

    /// Builds a word, dropping `Sq^0` letters.
    pub fn new(indices: impl IntoIterator<Item = u32>) -> Self {
        SqWord(indices.into_iter().filter(|&i| i != 0).collect())
    }

    pub fn single(i: u32) -> Self {
        Self::new([i])
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn excess(&self) -> i64 {
        excess(self)
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self)
    }

    /// Composition `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &SqWord) -> SqWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SqWord(v)
    }
}

pub fn is_admissible(w: &SqWord) -> bool {
    w.0.windows(2).all(|p| p[0] >= 2 * p[1])
}

/// `i_1 - (i_2 + ... + i_k)`, and 0 for the identity.
pub fn excess(w: &SqWord) -> i64 {
    match w.0.split_first() {
        None => 0,
        Some((&first, rest)) => first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
    }
}

impl fmt::Display for SqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "Sq^{i}")?;
        }
        Ok(())
    }
}

impl FromStr for SqWord {
    type Err = ParseError;

    /// Whitespace-separated `Sq^i` tokens in printed (left to right) order.
    /// `Sq^0` is accepted and dropped; a lone `1` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for (pos, token) in tokens(s) {
            if token == "1" {
                continue;
            }
            let digits = token
                .strip_prefix("Sq^")
                .ok_or_else(|| ParseError::new(pos, format!("expected `Sq^<n>`, found {token:?}")))?;
            let i: u32 = digits
                .parse()
                .map_err(|_| ParseError::new(pos + 3, format!("invalid exponent {digits:?}")))?;
            letters.push(i);
        }
        Ok(SqWord::new(letters))
    }
}

/// Whitespace-separated tokens with their byte offsets.
pub(crate) fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
}

/// A sum of words with mod-2 coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SteenrodElement(BTreeSet<SqWord>);

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: SqWord) -> Self {
        let mut e = Self::zero();
        e.toggle(w);
        e
    }

    pub fn from_words(words: impl IntoIterator<Item = SqWord>) -> Self {
        let mut e = Self::zero();
        for w in words {
            e.toggle(w);
        }
        e
    }

    /// Adds a single word mod 2.
    pub fn toggle(&mut self, w: SqWord) {
        if !self.0.remove(&w) {
            self.0.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &SteenrodElement) {
        for w in &other.0 {
            self.toggle(w.clone());
        }
    }

    pub fn words(&self) -> impl Iterator<Item = &SqWord> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product by concatenation, not reduced.
    pub fn compose(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.compose(b));
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.0.iter().all(is_admissible)
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, w) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// The Adem expansion of an inadmissible pair `Sq^a Sq^b`, `0 < a < 2b`.
pub fn adem_pair(a: u32, b: u32) -> SteenrodElement {
    debug_assert!(a > 0 && b > 0 && a < 2 * b);
    let mut out = SteenrodElement::zero();
    for c in 0..=a / 2 {
        if binom_mod2(b as i64 - 1 - c as i64, (a - 2 * c) as i64) {
            out.toggle(SqWord::new([a + b - c, c]));
        }
    }
    out
}

type WordCache = RwLock<HashMap<SqWord, SteenrodElement>>;

fn word_cache() -> &'static WordCache {
    static CACHE: OnceLock<WordCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn leftmost_inadmissible(w: &[u32]) -> Option<usize> {
    w.windows(2).position(|p| p[0] < 2 * p[1])
}

fn rightmost_inadmissible(w: &[u32]) -> Option<usize> {
    w.windows(2).rposition(|p| p[0] < 2 * p[1])
}

fn splice(w: &[u32], at: usize, pair: &SqWord) -> SqWord {
    let mut v = Vec::with_capacity(w.len());
    v.extend_from_slice(&w[..at]);
    v.extend_from_slice(pair.indices());
    v.extend_from_slice(&w[at + 2..]);
    SqWord(v)
}

/// The admissible expansion of a single word.
pub fn reduce_word(w: &SqWord) -> SteenrodElement {
    let Some(at) = leftmost_inadmissible(&w.0) else {
        return SteenrodElement::from_word(w.clone());
    };
    if let Some(hit) = word_cache().read().unwrap().get(w) {
        return hit.clone();
    }
    let mut out = SteenrodElement::zero();
    for pair in adem_pair(w.0[at], w.0[at + 1]).words() {
        out.add_assign(&reduce_word(&splice(&w.0, at, pair)));
    }
    word_cache().write().unwrap().insert(w.clone(), out.clone());
    out
}

/// Rewrites an element into the admissible basis.
pub fn adem_reduce(e: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for w in e.words() {
        out.add_assign(&reduce_word(w));
    }
    out
}

/// Which inadmissible pair to rewrite first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// Unmemoized reduction under an explicit rewrite order. The normal form does
/// not depend on the order; this exists to check that.
pub fn adem_reduce_with(e: &SteenrodElement, order: RewriteOrder) -> SteenrodElement {
    fn go(w: &SqWord, order: RewriteOrder, out: &mut SteenrodElement) {
        let at = match order {
            RewriteOrder::Leftmost => leftmost_inadmissible(&w.0),
            RewriteOrder::Rightmost => rightmost_inadmissible(&w.0),
        };
        match at {
            None => out.toggle(w.clone()),
            Some(at) => {
                for pair in adem_pair(w.0[at], w.0[at + 1]).words() {
                    go(&splice(&w.0, at, pair), order, out);
                }
            }
        }
    }
    let mut out = SteenrodElement::zero();
    for w in e.words() {
        go(w, order, &mut out);
    }
    out
}

/// All admissible words of degree `degree` whose first letter is at most `cap`.
fn admissible_words(degree: u32, cap: u32) -> Vec<Vec<u32>> {
    if degree == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=degree.min(cap) {
        for rest in admissible_words(degree - first, first / 2) {
            let mut w = Vec::with_capacity(rest.len() + 1);
            w.push(first);
            w.extend(rest);
            out.push(w);
        }
    }
    out
}

/// Admissible words of `total_degree` with excess `<= excess_max`, or
/// `< excess_max` when `strict`. Sorted.
pub fn admissible_basis(total_degree: u32, excess_max: i64, strict: bool) -> Vec<SqWord> {
    let mut out: Vec<SqWord> = admissible_words(total_degree, total_degree)
        .into_iter()
        .map(SqWord)
        .filter(|w| {
            let e = excess(w);
            if strict {
                e < excess_max
            } else {
                e <= excess_max
            }
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> SqWord {
        s.parse().unwrap()
    }

    fn el(s: &str) -> SteenrodElement {
        SteenrodElement::from_word(w(s))
    }

    #[test]
    fn admissibility_and_excess() {
        assert!(SqWord::identity().is_admissible());
        assert!(SqWord::new([3, 1]).is_admissible());
        assert!(!SqWord::new([1, 2]).is_admissible());
        assert_eq!(SqWord::new([3, 1]).excess(), 2);
        assert_eq!(SqWord::new([2, 1]).excess(), 1);
        assert_eq!(SqWord::identity().excess(), 0);
    }

    #[test]
    fn adem_examples() {
        assert!(adem_reduce(&el("Sq^1 Sq^1")).is_zero());
        assert_eq!(adem_reduce(&el("Sq^1 Sq^2")), el("Sq^3"));
        assert_eq!(adem_reduce(&el("Sq^2 Sq^2")), el("Sq^3 Sq^1"));
        // Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1
        assert_eq!(
            adem_reduce(&el("Sq^2 Sq^3")),
            SteenrodElement::from_words([w("Sq^5"), w("Sq^4 Sq^1")])
        );
        // Sq^3 Sq^2 = 0
        assert!(adem_reduce(&el("Sq^3 Sq^2")).is_zero());
    }

    /// Brute force: all compositions of `n`, filtered.
    fn compositions(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    fn brute_basis(n: u32, bound: i64, strict: bool) -> Vec<SqWord> {
        let mut v: Vec<SqWord> = compositions(n)
            .into_iter()
            .map(SqWord)
            .filter(|w| w.is_admissible() && if strict { w.excess() < bound } else { w.excess() <= bound })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn admissible_basis_examples() {
        assert_eq!(admissible_basis(0, 5, false), vec![SqWord::identity()]);
        assert_eq!(admissible_basis(3, 1, false), vec![SqWord::new([2, 1])]);
        assert_eq!(admissible_basis(7, 4, true), brute_basis(7, 4, true));
        assert_eq!(
            admissible_basis(7, 4, true),
            vec![SqWord::new([4, 2, 1]), SqWord::new([5, 2])]
        );
    }

    #[test]
    fn admissible_basis_matches_brute_force() {
        for n in 0..=16 {
            for bound in 0..=n as i64 + 1 {
                for strict in [false, true] {
                    assert_eq!(admissible_basis(n, bound, strict), brute_basis(n, bound, strict));
                }
            }
        }
    }

    #[test]
    fn word_syntax() {
        assert_eq!(w("Sq^4 Sq^2 Sq^1").indices(), &[4, 2, 1]);
        assert_eq!(w("Sq^0"), SqWord::identity());
        assert_eq!(w("  Sq^2\tSq^0 Sq^1 ").indices(), &[2, 1]);
        assert_eq!(SqWord::new([4, 2, 1]).to_string(), "Sq^4 Sq^2 Sq^1");
        let err = "Sq^2 Xq^1".parse::<SqWord>().unwrap_err();
        assert_eq!(err.position, 5);
        let err = "Sq^2 Sq^x".parse::<SqWord>().unwrap_err();
        assert_eq!(err.position, 8);
    }

    fn word_strategy(max_degree: u32) -> impl Strategy<Value = SqWord> {
        prop::collection::vec(1u32..8, 0..4).prop_filter_map("degree bound", move |v| {
            let wd = SqWord::new(v);
            (wd.degree() <= max_degree).then_some(wd)
        })
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_degree_preserving(wd in word_strategy(20)) {
            let once = adem_reduce(&SteenrodElement::from_word(wd.clone()));
            prop_assert!(once.is_admissible());
            prop_assert!(once.words().all(|x| x.degree() == wd.degree()));
            prop_assert_eq!(adem_reduce(&once), once);
        }

        #[test]
        fn reduction_is_confluent(u in word_strategy(10), v in word_strategy(10)) {
            let product = SteenrodElement::from_word(u.compose(&v));
            let left = adem_reduce_with(&product, RewriteOrder::Leftmost);
            let right = adem_reduce_with(&product, RewriteOrder::Rightmost);
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(&adem_reduce(&product), &left);
            // reducing the factors first gives the same normal form
            let staged = adem_reduce(
                &adem_reduce(&SteenrodElement::from_word(u)).compose(&adem_reduce(&SteenrodElement::from_word(v))),
            );
            prop_assert_eq!(staged, left);
        }
    }
}
