//! The symmetric algebra `S = F2[w_1, w_2, ...]` with its Steenrod action.
//!
//! Squares act on generators by the Wu formula
//!
//! ```text
//! Sq^j w_m = sum_{l=0}^{j} C(m - j + l - 1, l) w_{j-l} w_{m+l}      (w_0 = 1)
//! ```
//!
//! and on products by the Cartan formula. Everything is truncated at a global
//! [`DegreeBound`]: an operation whose output would lie above the bound fails
//! with [`AlgebraError::DegreeOverflow`] instead of silently returning zero.
//!
//! # Monomial order
//!
//! A monomial `... w_{n_2} w_{n_1}` (indices nondecreasing towards `n_1`) is
//! compared with another by reading the index sequences from the largest
//! position down: the first differing index decides, smaller being lower,
//! and a proper prefix is lower than its extensions. So `w_1 w_4 < w_5` and
//! `w_1 w_2^2 < w_2 w_3`. The leading monomial of a polynomial is its minimum.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use crate::error::{AlgebraError, ParseError, Result};
use crate::gf2::{binom_mod2, BitVector};
use crate::steenrod::{SqWord, SteenrodElement};

/// A product of Stiefel–Whitney classes; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WMonomial(Vec<u32>);

impl WMonomial {
    pub fn one() -> Self {
        WMonomial(Vec::new())
    }

    /// Builds a monomial from indices in any order; `w_0 = 1` factors vanish.
    pub fn new(indices: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = indices.into_iter().filter(|&i| i != 0).collect();
        v.sort_unstable();
        WMonomial(v)
    }

    pub fn var(m: u32) -> Self {
        Self::new([m])
    }

    /// Nondecreasing indices.
    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factor_count(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn mul(&self, other: &WMonomial) -> WMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        WMonomial(out)
    }

    pub fn square(&self) -> WMonomial {
        WMonomial(self.0.iter().flat_map(|&i| [i, i]).collect())
    }

    /// The square root, when every index occurs an even number of times.
    pub fn sqrt(&self) -> Option<WMonomial> {
        if self.0.len() % 2 == 1 || self.0.chunks(2).any(|c| c[0] != c[1]) {
            return None;
        }
        Some(WMonomial(self.0.iter().step_by(2).copied().collect()))
    }

    /// `(index, exponent)` pairs in increasing index order.
    pub fn powers(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &i in &self.0 {
            match out.last_mut() {
                Some((last, e)) if *last == i => *e += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

impl Ord for WMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for WMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (i, e)) in self.powers().into_iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "w{i}")?;
            } else {
                write!(f, "w{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of `S`: a finite set of monomials (coefficients are mod 2).
/// Iteration follows the monomial order, lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymPolynomial(BTreeSet<WMonomial>);

impl SymPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(WMonomial::one())
    }

    pub fn var(m: u32) -> Self {
        Self::from_monomial(WMonomial::var(m))
    }

    pub fn from_monomial(m: WMonomial) -> Self {
        let mut p = Self::zero();
        p.toggle(m);
        p
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = WMonomial>) -> Self {
        let mut p = Self::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    /// Convenience constructor from index lists, e.g. `&[&[5], &[1, 4]]`.
    pub fn from_index_lists(lists: &[&[u32]]) -> Self {
        Self::from_monomials(lists.iter().map(|l| WMonomial::new(l.iter().copied())))
    }

    pub fn toggle(&mut self, m: WMonomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &SymPolynomial) {
        for m in &other.0 {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &SymPolynomial) -> SymPolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Product without degree check.
    pub fn mul(&self, other: &SymPolynomial) -> SymPolynomial {
        let mut out = SymPolynomial::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &WMonomial) -> SymPolynomial {
        SymPolynomial(self.0.iter().map(|a| a.mul(m)).collect())
    }

    /// Squaring is additive mod 2.
    pub fn square(&self) -> SymPolynomial {
        SymPolynomial(self.0.iter().map(WMonomial::square).collect())
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

    pub fn contains(&self, m: &WMonomial) -> bool {
        self.0.contains(m)
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &WMonomial> {
        self.0.iter()
    }

    /// The common degree of all monomials, `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.0.iter().map(WMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Indices `m` such that the single class `w_m` occurs, i.e. the image in
    /// the indecomposable quotient `QS`.
    pub fn indecomposable_part(&self) -> Vec<u32> {
        self.0
            .iter()
            .filter(|m| m.factor_count() == 1)
            .map(|m| m.0[0])
            .collect()
    }
}

impl fmt::Display for SymPolynomial {
    /// Terms in decreasing monomial order, e.g. `w5 + w1*w4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, m) in self.0.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn parse_number(s: &str, pos: usize, what: &str) -> std::result::Result<u32, ParseError> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        let offset = s.len() - s.trim_start().len();
        return Err(ParseError::new(pos + offset, format!("expected {what}, found {t:?}")));
    }
    t.parse()
        .map_err(|_| ParseError::new(pos, format!("{what} out of range")))
}

fn parse_monomial(s: &str, pos: usize) -> std::result::Result<WMonomial, ParseError> {
    if s.trim() == "1" {
        return Ok(WMonomial::one());
    }
    let mut indices = Vec::new();
    let mut offset = 0;
    for factor in s.split('*') {
        let lead = factor.len() - factor.trim_start().len();
        let at = pos + offset + lead;
        let body = factor.trim();
        let rest = body
            .strip_prefix('w')
            .ok_or_else(|| ParseError::new(at, format!("expected a factor `w<n>`, found {body:?}")))?;
        let (index, exp) = match rest.split_once('^') {
            Some((i, e)) => (
                parse_number(i, at + 1, "an index")?,
                parse_number(e, at + 2 + i.len(), "an exponent")?,
            ),
            None => (parse_number(rest, at + 1, "an index")?, 1),
        };
        if index == 0 {
            return Err(ParseError::new(at + 1, "index 0 is not a generator (w0 = 1)"));
        }
        indices.extend(std::iter::repeat(index).take(exp as usize));
        offset += factor.len() + 1;
    }
    Ok(WMonomial::new(indices))
}

impl FromStr for WMonomial {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_monomial(s, 0)
    }
}

impl FromStr for SymPolynomial {
    type Err = ParseError;

    /// `"w5 + w1*w4"`, `"w1*w2^2"`, `"1"` or `"0"`. Repeated terms cancel.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(SymPolynomial::zero());
        }
        let mut p = SymPolynomial::zero();
        let mut offset = 0;
        for term in s.split('+') {
            p.toggle(parse_monomial(term, offset)?);
            offset += term.len() + 1;
        }
        Ok(p)
    }
}

/// Global truncation degree: claims are made only in degrees `<= D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeBound(u32);

impl DegreeBound {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(AlgebraError::InvalidArgument(
                "degree bound must be positive".to_string(),
            ));
        }
        Ok(DegreeBound(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn check(self, degree: u32) -> Result<()> {
        if degree > self.0 {
            Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `Sq^j w_m` by the Wu formula. Zero when `j > m`.
pub fn wu_sq(j: u32, m: u32) -> SymPolynomial {
    let mut out = SymPolynomial::zero();
    if j > m {
        return out;
    }
    for l in 0..=j {
        if binom_mod2(m as i64 - j as i64 + l as i64 - 1, l as i64) {
            out.toggle(WMonomial::new([j - l, m + l]));
        }
    }
    out
}

/// The induced action on `QS`: `Sq^j w_m = C(m-1, j) w_{m+j}`.
pub fn q_action(j: u32, m: u32) -> (bool, u32) {
    (binom_mod2(m as i64 - 1, j as i64), m + j)
}

/// The lowest monomial of a nonzero polynomial.
pub fn leading_monomial(p: &SymPolynomial) -> Result<WMonomial> {
    p.0.first().cloned().ok_or(AlgebraError::ZeroPolynomial)
}

/// The polynomial algebra with its Steenrod action, truncated at a bound.
///
/// Holds a memo table for `Sq^j` on monomials that may be shared between
/// threads.
#[derive(Debug)]
pub struct SymAlgebra {
    bound: DegreeBound,
    memo: RwLock<HashMap<(u32, WMonomial), SymPolynomial>>,
}

impl SymAlgebra {
    pub fn new(bound: DegreeBound) -> Self {
        SymAlgebra {
            bound,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_bound(d: u32) -> Result<Self> {
        Ok(Self::new(DegreeBound::new(d)?))
    }

    pub fn bound(&self) -> DegreeBound {
        self.bound
    }

    pub fn check_degree(&self, degree: u32) -> Result<()> {
        self.bound.check(degree)
    }

    /// Product with the degree check.
    pub fn mul(&self, p: &SymPolynomial, q: &SymPolynomial) -> Result<SymPolynomial> {
        if let (Some(a), Some(b)) = (p.monomials().next(), q.monomials().next()) {
            self.check_degree(a.degree() + b.degree())?;
        }
        Ok(p.mul(q))
    }

    pub fn sq_monomial(&self, j: u32, m: &WMonomial) -> Result<SymPolynomial> {
        let deg = m.degree();
        if j == 0 {
            return Ok(SymPolynomial::from_monomial(m.clone()));
        }
        if j > deg {
            return Ok(SymPolynomial::zero());
        }
        self.check_degree(deg + j)?;
        if j == deg {
            return Ok(SymPolynomial::from_monomial(m.square()));
        }
        if m.factor_count() == 1 {
            return Ok(wu_sq(j, m.0[0]));
        }
        let key = (j, m.clone());
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let out = if let Some(root) = m.sqrt() {
            // Sq^{2k}(x^2) = (Sq^k x)^2 and odd squares vanish
            if j % 2 == 1 {
                SymPolynomial::zero()
            } else {
                self.sq_monomial(j / 2, &root)?.square()
            }
        } else {
            let first = m.0[0];
            let rest = WMonomial(m.0[1..].to_vec());
            let mut acc = SymPolynomial::zero();
            for t in 0..=j.min(first) {
                let head = wu_sq(t, first);
                if head.is_zero() {
                    continue;
                }
                let tail = self.sq_monomial(j - t, &rest)?;
                acc.add_assign(&head.mul(&tail));
            }
            acc
        };
        self.memo.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `Sq^j p`, expanded by the Cartan formula.
    pub fn sq(&self, j: u32, p: &SymPolynomial) -> Result<SymPolynomial> {
        let mut out = SymPolynomial::zero();
        for m in p.monomials() {
            out.add_assign(&self.sq_monomial(j, m)?);
        }
        Ok(out)
    }

    /// Applies a word letter by letter, rightmost letter first.
    pub fn sq_word(&self, w: &SqWord, p: &SymPolynomial) -> Result<SymPolynomial> {
        let mut cur = p.clone();
        for &i in w.indices().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.sq(i, &cur)?;
        }
        Ok(cur)
    }

    pub fn sq_element(&self, e: &SteenrodElement, p: &SymPolynomial) -> Result<SymPolynomial> {
        let mut out = SymPolynomial::zero();
        for w in e.words() {
            out.add_assign(&self.sq_word(w, p)?);
        }
        Ok(out)
    }

    /// Evaluates `(Sq^{2^{n_s}} + w_{2^{n_s}}) ... (Sq^{2^{n_2}} + w_{2^{n_2}}) w_{2^{n_1}}`
    /// for `m = 2^{n_1} + ... + 2^{n_s}`, `n_1 > ... > n_s`. Equals `w_m`.
    pub fn t_expr(&self, m: u32) -> Result<SymPolynomial> {
        if m == 0 {
            return Err(AlgebraError::InvalidArgument("t_m needs m >= 1".to_string()));
        }
        self.check_degree(m)?;
        let mut bits = (0..32).rev().filter(|&e| m >> e & 1 == 1);
        let top = bits.next().expect("m is positive");
        let mut x = SymPolynomial::var(1 << top);
        for e in bits {
            let two_power = 1u32 << e;
            let mut next = self.sq(two_power, &x)?;
            next.add_assign(&x.mul_monomial(&WMonomial::var(two_power)));
            x = next;
        }
        Ok(x)
    }

    /// The four groups of terms of `θ(k, i)` evaluated in `S`.
    pub fn theta_parts(&self, k: u32, i: u32) -> Result<ThetaParts> {
        if k < 2 || i + 2 > k {
            return Err(AlgebraError::InvalidArgument(format!(
                "theta({k},{i}) needs k >= 2 and i <= k - 2"
            )));
        }
        let half = 1u32 << (k - 1);
        let step = 1u32 << i;
        self.check_degree(2 * half + step)?;
        let top = self.sq(step, &SymPolynomial::var(2 * half))?;
        let iterated = self.sq(half, &self.sq(step, &SymPolynomial::var(half))?)?;
        let cartan = self.sq(
            half,
            &SymPolynomial::from_monomial(WMonomial::new([half, step])),
        )?;
        let products = (0..=(1u32 << (k - i - 1)) - 2)
            .map(|l| (half - step * l, half + step + step * l))
            .collect();
        Ok(ThetaParts {
            k,
            i,
            top,
            iterated,
            cartan,
            products,
        })
    }

    /// `θ(k, i)`; identically zero in `S`.
    pub fn theta(&self, k: u32, i: u32) -> Result<SymPolynomial> {
        Ok(self.theta_parts(k, i)?.total())
    }

    /// `Sq^{2^{j-1}} w_{r 2^j} + w_{2^{j-1}} w_{r 2^j} + w_{2^{j-1} + r 2^j}`; zero in `S`.
    pub fn premagic_residual(&self, j: u32, r: u32) -> Result<SymPolynomial> {
        if j == 0 || r == 0 {
            return Err(AlgebraError::InvalidArgument(
                "premagic residual needs j, r >= 1".to_string(),
            ));
        }
        let low = 1u32 << (j - 1);
        let high = r << j;
        self.check_degree(low + high)?;
        let mut out = self.sq(low, &SymPolynomial::var(high))?;
        out.toggle(WMonomial::new([low, high]));
        out.toggle(WMonomial::var(low + high));
        Ok(out)
    }
}

/// The terms of `θ(k, i)` grouped as they appear in the relation:
/// `Sq^{2^i} w_{2^k}`, `Sq^{2^{k-1}} Sq^{2^i} w_{2^{k-1}}`,
/// `Sq^{2^{k-1}}(w_{2^{k-1}} w_{2^i})`, and the products
/// `w_{2^{k-1} - 2^i l} w_{2^{k-1} + 2^i + 2^i l}` for `0 <= l <= 2^{k-i-1} - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaParts {
    pub k: u32,
    pub i: u32,
    pub top: SymPolynomial,
    pub iterated: SymPolynomial,
    pub cartan: SymPolynomial,
    pub products: Vec<(u32, u32)>,
}

impl ThetaParts {
    pub fn total(&self) -> SymPolynomial {
        self.select(true, true, |_| true)
    }

    /// Sum of the chosen parts. `keep` decides which generator indices may
    /// appear as explicit factors (the `w_{2^i}` inside the Cartan term and the
    /// two classes of each product).
    pub fn select(&self, top: bool, cartan: bool, keep: impl Fn(u32) -> bool) -> SymPolynomial {
        let mut out = self.iterated.clone();
        if top {
            out.add_assign(&self.top);
        }
        if cartan && keep(1 << self.i) && keep(1 << (self.k - 1)) {
            out.add_assign(&self.cartan);
        }
        for &(a, b) in &self.products {
            if keep(a) && keep(b) {
                out.toggle(WMonomial::new([a, b]));
            }
        }
        out
    }
}

/// The monomials of one degree, in decreasing order, with an index map.
/// Column `c` of a coordinate vector refers to `monomials()[c]`.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    degree: u32,
    monomials: Vec<WMonomial>,
    index: HashMap<WMonomial, usize>,
}

fn partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<WMonomial>) {
    if n == 0 {
        out.push(WMonomial::new(prefix.iter().copied()));
        return;
    }
    for part in (1..=n.min(max_part)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

impl MonomialBasis {
    pub fn new(degree: u32) -> Self {
        let mut monomials = Vec::new();
        partitions(degree, degree, &mut Vec::new(), &mut monomials);
        monomials.sort_unstable_by(|a, b| b.cmp(a));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[WMonomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &WMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn to_vector(&self, p: &SymPolynomial) -> Result<BitVector> {
        let mut v = BitVector::zeros(self.len());
        for m in p.monomials() {
            let idx = self.index_of(m).ok_or_else(|| {
                AlgebraError::InvalidArgument(format!(
                    "monomial {m} does not have degree {}",
                    self.degree
                ))
            })?;
            v.flip(idx);
        }
        Ok(v)
    }

    pub fn to_polynomial(&self, v: &BitVector) -> SymPolynomial {
        SymPolynomial::from_monomials(v.ones().map(|i| self.monomials[i].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> SymPolynomial {
        s.parse().unwrap()
    }

    fn alg(d: u32) -> SymAlgebra {
        SymAlgebra::with_bound(d).unwrap()
    }

    /// The degree-five element from the Wu-formula prototype computation.
    const SQ2SQ1W2: &str = "w5 + w1*w4 + w2*w3 + w1*w2^2 + w1^2*w3 + w1^3*w2";

    #[test]
    fn wu_examples() {
        assert_eq!(wu_sq(1, 4), p("w5 + w1*w4"));
        assert_eq!(wu_sq(0, 7), p("w7"));
        assert_eq!(wu_sq(2, 2), p("w2^2"));
        assert_eq!(wu_sq(1, 2), p("w3 + w1*w2"));
        assert!(wu_sq(3, 2).is_zero());
    }

    #[test]
    fn cartan_examples() {
        let a = alg(24);
        assert_eq!(a.sq(2, &p("w1*w2")).unwrap(), p("w1*w2^2 + w1^2*w3 + w1^3*w2"));
        assert_eq!(a.sq(0, &p("w1*w2 + w4")).unwrap(), p("w1*w2 + w4"));
        let once = a.sq(1, &p("w2")).unwrap();
        assert_eq!(a.sq(2, &once).unwrap(), p(SQ2SQ1W2));
    }

    #[test]
    fn word_action_examples() {
        let a = alg(24);
        let w2 = p("w2");
        assert_eq!(a.sq_word(&SqWord::identity(), &w2).unwrap(), w2);
        assert_eq!(a.sq_word(&SqWord::new([2, 1]), &w2).unwrap(), p(SQ2SQ1W2));
        let raw = a.sq_word(&SqWord::new([1, 2]), &w2).unwrap();
        let reduced = crate::steenrod::adem_reduce(&SteenrodElement::from_word(SqWord::new([1, 2])));
        assert_eq!(raw, a.sq_element(&reduced, &w2).unwrap());
        assert_eq!(raw, a.sq(3, &w2).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let a = alg(6);
        assert_eq!(
            a.sq(3, &p("w4")),
            Err(AlgebraError::DegreeOverflow { degree: 7, bound: 6 })
        );
        // unstability gives an exact zero even above the bound
        assert_eq!(a.sq(5, &p("w4")), Ok(SymPolynomial::zero()));
        assert!(a.mul(&p("w4"), &p("w3")).is_err());
        assert!(DegreeBound::new(0).is_err());
    }

    #[test]
    fn t_expr_examples() {
        let a = alg(24);
        assert_eq!(a.t_expr(8).unwrap(), p("w8"));
        assert_eq!(a.t_expr(3).unwrap(), p("w3"));
        assert_eq!(a.t_expr(5).unwrap(), p("w5"));
        for m in 1..=24 {
            assert_eq!(a.t_expr(m).unwrap(), SymPolynomial::var(m), "t_{m}");
        }
    }

    #[test]
    fn theta_examples() {
        let a = alg(24);
        assert!(a.theta(2, 0).unwrap().is_zero());
        assert!(a.theta(3, 0).unwrap().is_zero());
        assert!(a.theta(3, 1).unwrap().is_zero());
        let parts = a.theta_parts(2, 0).unwrap();
        assert_eq!(parts.top, p("w5 + w1*w4"));
        assert_eq!(parts.iterated, p(SQ2SQ1W2));
        assert_eq!(parts.products, vec![(2, 3)]);
        assert!(a.theta(1, 0).is_err());
        assert!(a.theta(3, 2).is_err());
        assert!(alg(8).theta(3, 1).is_err());
    }

    #[test]
    fn theta_term_hand_check() {
        // Sq^4 w_5: every coefficient C(l, l) is 1
        let a = alg(24);
        let direct = wu_sq(4, 5);
        let expected = SymPolynomial::from_monomials(
            (0..=4u32)
                .filter(|&l| binom_mod2(5 - 4 + l as i64 - 1, l as i64))
                .map(|l| WMonomial::new([4 - l, 5 + l])),
        );
        assert_eq!(direct, expected);
        assert_eq!(a.sq(4, &p("w5")).unwrap(), p("w9 + w1*w8 + w2*w7 + w3*w6 + w4*w5"));
    }

    #[test]
    fn premagic_examples() {
        let a = alg(24);
        assert!(a.premagic_residual(1, 1).unwrap().is_zero());
        assert!(a.premagic_residual(1, 2).unwrap().is_zero());
        assert!(a.premagic_residual(2, 1).unwrap().is_zero());
        assert!(a.premagic_residual(0, 1).is_err());
    }

    #[test]
    fn leading_monomial_examples() {
        assert_eq!(leading_monomial(&p("w5")).unwrap(), WMonomial::var(5));
        assert_eq!(leading_monomial(&p("w5 + w1*w4")).unwrap(), "w1*w4".parse().unwrap());
        assert_eq!(
            leading_monomial(&p("w2*w3 + w1*w2^2")).unwrap(),
            "w1*w2^2".parse().unwrap()
        );
        assert_eq!(leading_monomial(&SymPolynomial::zero()), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn q_action_examples() {
        assert_eq!(q_action(1, 4), (true, 5));
        for m in 1..=40u32 {
            for j in 1..m {
                if (m + j).is_power_of_two() {
                    assert_eq!(q_action(j, m), (false, m + j));
                }
                if m.is_power_of_two() {
                    assert_eq!(q_action(j, m), (true, m + j));
                }
            }
        }
    }

    #[test]
    fn qs_indecomposables_are_two_powers() {
        // w_m is hit from below in QS iff m is not a two-power
        for m in 2..=64u32 {
            let hit = (1..m).any(|source| q_action(m - source, source).0 && m - source <= source);
            assert_eq!(hit, !m.is_power_of_two(), "m = {m}");
        }
    }

    #[test]
    fn text_syntax() {
        assert_eq!(p("w5 + w1*w4").to_string(), "w5 + w1*w4");
        assert_eq!(p("w2^2*w1").to_string(), "w1*w2^2");
        assert_eq!(p("w1 + w1").to_string(), "0");
        assert_eq!(p("0"), SymPolynomial::zero());
        assert_eq!(p("1"), SymPolynomial::one());
        assert_eq!(p(" w3 +w1 * w2 ").to_string(), "w3 + w1*w2");
        let err = "w1 + x2".parse::<SymPolynomial>().unwrap_err();
        assert_eq!(err.position, 5);
        let err = "w1*w0".parse::<SymPolynomial>().unwrap_err();
        assert_eq!(err.position, 4);
        assert!("w1^".parse::<SymPolynomial>().is_err());
    }

    #[test]
    fn monomial_basis_counts_partitions() {
        let counts: Vec<usize> = (0..=12).map(|d| MonomialBasis::new(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let b = MonomialBasis::new(5);
        assert_eq!(b.monomials()[0], WMonomial::var(5));
        let v = b.to_vector(&p(SQ2SQ1W2)).unwrap();
        assert_eq!(b.to_polynomial(&v), p(SQ2SQ1W2));
        assert!(b.to_vector(&p("w4")).is_err());
    }

    #[test]
    fn unstability_on_generators() {
        let a = alg(24);
        for m in 1..=24u32 {
            for j in 0..=m.min(24 - m) {
                let out = a.sq_word(&SqWord::single(j), &SymPolynomial::var(m)).unwrap();
                if j == m {
                    assert_eq!(out, SymPolynomial::var(m).square());
                }
            }
            assert!(a.sq(m + 1, &SymPolynomial::var(m)).unwrap().is_zero());
        }
    }

    #[test]
    fn adem_compatibility_on_two_letter_words() {
        let a = alg(20);
        for m in 1..=20u32 {
            for x in 1..=20 - m {
                for y in 1..=20 - m - x {
                    let word = SqWord::new([x, y]);
                    let raw = a.sq_word(&word, &SymPolynomial::var(m)).unwrap();
                    let reduced = crate::steenrod::reduce_word(&word);
                    assert_eq!(raw, a.sq_element(&reduced, &SymPolynomial::var(m)).unwrap());
                }
            }
        }
    }

    fn monomial_strategy(max_degree: u32) -> impl Strategy<Value = WMonomial> {
        prop::collection::vec(1u32..7, 0..5).prop_filter_map("degree", move |v| {
            let m = WMonomial::new(v);
            (m.degree() <= max_degree).then_some(m)
        })
    }

    fn homogeneous_strategy(degree: u32) -> impl Strategy<Value = SymPolynomial> {
        let basis = MonomialBasis::new(degree);
        let n = basis.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            basis.to_polynomial(&BitVector::from_bools(&bits))
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(ms in prop::collection::vec(monomial_strategy(12), 0..6)) {
            let poly = SymPolynomial::from_monomials(ms);
            let text = poly.to_string();
            prop_assert_eq!(text.parse::<SymPolynomial>().unwrap(), poly);
        }

        #[test]
        fn cartan_bilinearity(
            (pp, qq, j) in (1u32..=6, 1u32..=6).prop_flat_map(|(dp, dq)| {
                (homogeneous_strategy(dp), homogeneous_strategy(dq), 0u32..=12)
            }),
        ) {
            let a = alg(24);
            let lhs = a.sq(j, &pp.mul(&qq)).unwrap();
            let mut rhs = SymPolynomial::zero();
            for t in 0..=j {
                rhs.add_assign(&a.sq(t, &pp).unwrap().mul(&a.sq(j - t, &qq).unwrap()));
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn order_is_total_and_lexicographic_from_the_top(x in monomial_strategy(15), y in monomial_strategy(15)) {
            let mut xr: Vec<u32> = x.indices().to_vec();
            let mut yr: Vec<u32> = y.indices().to_vec();
            xr.reverse();
            yr.reverse();
            prop_assert_eq!(x.cmp(&y), xr.cmp(&yr));
        }
    }
}
