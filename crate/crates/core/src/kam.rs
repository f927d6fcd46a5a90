//! Kudo–Araki–May operations `D_j`, realized through the conversion
//! `D_j x = Sq^{l-j} x` on a class `x` of degree `l`.
//!
//! A word `D_{j_1} ... D_{j_s}` is applied rightmost letter first, and each
//! letter takes degree `d` to `2d - j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, ParseError, Result};
use crate::steenrod::tokens;
use crate::symalg::{SymAlgebra, SymPolynomial, WMonomial};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DWord(Vec<u32>);

impl DWord {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        DWord(entries.into_iter().collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Nondecreasing with every entry below `m`: the words indexing the
    /// basis `D_J t_m` of the free unstable module on a class of degree `m`.
    pub fn is_basis_word_for(&self, m: u32) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1]) && self.0.last().map_or(true, |&top| top < m)
    }
}

impl fmt::Display for DWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let letters: Vec<String> = self.0.iter().map(|j| format!("D_{j}")).collect();
        f.write_str(&letters.join(" "))
    }
}

impl FromStr for DWord {
    type Err = ParseError;

    /// Whitespace-separated `D_j` tokens, e.g. `"D_1 D_1"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for (pos, token) in tokens(s) {
            if token == "1" {
                continue;
            }
            let digits = token
                .strip_prefix("D_")
                .ok_or_else(|| ParseError::new(pos, format!("expected `D_<n>`, found {token:?}")))?;
            entries.push(
                digits
                    .parse()
                    .map_err(|_| ParseError::new(pos + 2, format!("invalid index {digits:?}")))?,
            );
        }
        Ok(DWord(entries))
    }
}

/// Formal degree of `D_J x` for `x` of degree `l`: fold `d -> 2d - j` from
/// the right. Negative only for words that annihilate every class.
pub fn d_word_degree(word: &DWord, l: u32) -> i64 {
    word.0
        .iter()
        .rev()
        .fold(l as i64, |d, &j| 2 * d - j as i64)
}

fn homogeneous_degree(x: &SymPolynomial) -> Result<Option<u32>> {
    if x.is_zero() {
        return Ok(None);
    }
    x.degree().map(Some).ok_or(AlgebraError::Inhomogeneous)
}

/// `D_j x = Sq^{l-j} x`, zero for `j > l`.
pub fn d_apply(alg: &SymAlgebra, j: u32, x: &SymPolynomial) -> Result<SymPolynomial> {
    match homogeneous_degree(x)? {
        None => Ok(SymPolynomial::zero()),
        Some(l) if j > l => Ok(SymPolynomial::zero()),
        Some(l) => alg.sq(l - j, x),
    }
}

pub fn d_word_apply(alg: &SymAlgebra, word: &DWord, x: &SymPolynomial) -> Result<SymPolynomial> {
    homogeneous_degree(x)?;
    let mut cur = x.clone();
    for &j in word.0.iter().rev() {
        if cur.is_zero() {
            break;
        }
        cur = d_apply(alg, j, &cur)?;
    }
    Ok(cur)
}

/// `D_i(xy) + sum_t D_t(x) D_{i-t}(y)`; zero by the Cartan formula in K.
pub fn k_cartan_residual(
    alg: &SymAlgebra,
    i: u32,
    x: &SymPolynomial,
    y: &SymPolynomial,
) -> Result<SymPolynomial> {
    homogeneous_degree(x)?;
    homogeneous_degree(y)?;
    let mut out = d_apply(alg, i, &alg.mul(x, y)?)?;
    for t in 0..=i {
        let dx = d_apply(alg, t, x)?;
        let dy = d_apply(alg, i - t, y)?;
        out.add_assign(&alg.mul(&dx, &dy)?);
    }
    Ok(out)
}

/// The claimed leading monomial
/// `w_{m-j_s}^{2^{s-1}} w_{m-j_{s-1}}^{2^{s-2}} ... w_{m-j_1} w_m` of `D_J w_m`.
pub fn leading_term_expected(word: &DWord, m: u32) -> Result<WMonomial> {
    if m == 0 || !word.is_basis_word_for(m) {
        return Err(AlgebraError::InvalidArgument(format!(
            "{word} is not a nondecreasing word with entries below {m}"
        )));
    }
    let mut indices = vec![m];
    for (t, &j) in word.0.iter().enumerate() {
        indices.extend(std::iter::repeat(m - j).take(1 << t));
    }
    Ok(WMonomial::new(indices))
}

/// All basis words for a class of degree `m` whose image has degree `<= bound`.
pub fn basis_words(m: u32, bound: u32) -> Vec<DWord> {
    fn extend(degree: u32, cap: u32, bound: u32, right: &mut Vec<u32>, out: &mut Vec<DWord>) {
        for j in 0..=cap {
            let next = 2 * degree - j;
            if next > bound {
                continue;
            }
            right.push(j);
            out.push(DWord(right.iter().rev().copied().collect()));
            extend(next, j, bound, right, out);
            right.pop();
        }
    }
    let mut out = vec![DWord::default()];
    if m >= 1 && m <= bound {
        extend(m, m - 1, bound, &mut Vec::new(), &mut out);
    } else if m > bound {
        out.clear();
    }
    out.sort();
    out
}

/// Checks `D_l x = x`, `D_j x = 0` for `j > l` and `D_0 x = x^2` on one class.
/// Returns the names of the violated axioms.
pub fn k_axiom_violations(alg: &SymAlgebra, x: &SymPolynomial) -> Result<Vec<&'static str>> {
    let Some(l) = homogeneous_degree(x)? else {
        return Ok(Vec::new());
    };
    let mut bad = Vec::new();
    if d_apply(alg, l, x)? != *x {
        bad.push("D_l x = x");
    }
    if !d_apply(alg, l + 1, x)?.is_zero() || !d_apply(alg, 2 * l + 1, x)?.is_zero() {
        bad.push("D_j x = 0 for j > l");
    }
    if 2 * l <= alg.bound().get() && d_apply(alg, 0, x)? != x.square() {
        bad.push("D_0 x = x^2");
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::SqWord;
    use crate::symalg::{leading_monomial, MonomialBasis};

    fn p(s: &str) -> SymPolynomial {
        s.parse().unwrap()
    }

    fn alg() -> SymAlgebra {
        SymAlgebra::with_bound(24).unwrap()
    }

    #[test]
    fn d_apply_examples() {
        let a = alg();
        let x = p("w1*w3 + w4");
        assert_eq!(d_apply(&a, 4, &x).unwrap(), x);
        assert_eq!(d_apply(&a, 0, &x).unwrap(), x.square());
        assert_eq!(d_apply(&a, 1, &p("w2")).unwrap(), p("w3 + w1*w2"));
        assert!(d_apply(&a, 5, &x).unwrap().is_zero());
        assert_eq!(d_apply(&a, 1, &p("w1 + w2")), Err(AlgebraError::Inhomogeneous));
    }

    #[test]
    fn word_application() {
        let a = alg();
        let w2 = p("w2");
        assert_eq!(d_word_apply(&a, &DWord::default(), &w2).unwrap(), w2);
        assert_eq!(
            d_word_apply(&a, &"D_1 D_1".parse().unwrap(), &w2).unwrap(),
            a.sq_word(&SqWord::new([2, 1]), &w2).unwrap()
        );
        assert_eq!(
            d_word_apply(&a, &DWord::new([1]), &p("w4")).unwrap(),
            a.sq(3, &p("w4")).unwrap()
        );
    }

    #[test]
    fn degree_fold() {
        assert_eq!(d_word_degree(&DWord::default(), 7), 7);
        assert_eq!(d_word_degree(&DWord::new([1, 1]), 2), 5);
        assert_eq!(d_word_degree(&DWord::new([2]), 4), 6);
        // rightmost first: 3 -> 3 -> 5
        assert_eq!(d_word_degree(&DWord::new([1, 3]), 3), 5);
    }

    #[test]
    fn cartan_examples() {
        let a = alg();
        let (w1, w2) = (p("w1"), p("w2"));
        let xy = w1.mul(&w2);
        assert!(k_cartan_residual(&a, 0, &w1, &w2).unwrap().is_zero());
        assert_eq!(d_apply(&a, 0, &xy).unwrap(), xy.square());
        assert!(k_cartan_residual(&a, 1, &w1, &w2).unwrap().is_zero());
        assert!(k_cartan_residual(&a, 2, &w2, &w2).unwrap().is_zero());
    }

    #[test]
    fn leading_term_examples() {
        assert_eq!(leading_term_expected(&DWord::default(), 4).unwrap(), WMonomial::var(4));
        assert_eq!(leading_term_expected(&DWord::new([1]), 4).unwrap(), "w3*w4".parse().unwrap());
        assert_eq!(
            leading_term_expected(&DWord::new([1, 1]), 2).unwrap(),
            "w1^3*w2".parse().unwrap()
        );
        assert!(leading_term_expected(&DWord::new([2, 1]), 4).is_err());
        assert!(leading_term_expected(&DWord::new([4]), 4).is_err());
    }

    #[test]
    fn leading_term_small_cases() {
        let a = alg();
        for m in 1..=12 {
            for word in basis_words(m, 16) {
                let image = d_word_apply(&a, &word, &SymPolynomial::var(m)).unwrap();
                let expected = leading_term_expected(&word, m).unwrap();
                assert_eq!(leading_monomial(&image).unwrap(), expected, "{word} w{m}");
            }
        }
    }

    #[test]
    fn basis_words_count_matches_admissible_basis() {
        // both index a basis of the free unstable module on a class of degree m
        for m in 1..=10u32 {
            let words = basis_words(m, 24);
            for d in m..=24 {
                let by_d = words.iter().filter(|w| d_word_degree(w, m) == d as i64).count();
                let admissible = crate::steenrod::admissible_basis(d - m, m as i64, false).len();
                assert_eq!(by_d, admissible, "m = {m}, d = {d}");
            }
        }
    }

    #[test]
    fn axioms_on_monomials() {
        let a = alg();
        for d in 1..=12 {
            for m in MonomialBasis::new(d).monomials() {
                let x = SymPolynomial::from_monomial(m.clone());
                assert!(k_axiom_violations(&a, &x).unwrap().is_empty(), "{m}");
            }
        }
    }

    #[test]
    fn word_syntax() {
        let w: DWord = "D_1 D_0 D_3".parse().unwrap();
        assert_eq!(w.entries(), &[1, 0, 3]);
        assert_eq!(w.to_string(), "D_1 D_0 D_3");
        assert_eq!("D_1 Sq^2".parse::<DWord>().unwrap_err().position, 4);
    }
}
