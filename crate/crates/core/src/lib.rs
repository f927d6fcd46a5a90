//! Exact computations with the mod-2 Steenrod algebra acting on the
//! polynomial algebra `S = F2[w_1, w_2, ...]` of Stiefel-Whitney classes.
//!
//! Everything is truncated at a degree bound and computed with exact F2
//! linear algebra. The [`suites`] module packages the checks into named
//! reports.

pub mod error;
pub mod gf2;
pub mod kam;
pub mod projective;
pub mod quotients;
pub mod report;
pub mod series;
pub mod steenrod;
pub mod suites;
pub mod symalg;
pub mod unstable;

pub use error::{AlgebraError, ParseError, Result};
pub use gf2::{alpha, binom_mod2, gap_decompose, nu, BitMatrix, BitVector, EchelonBasis, GapDecomposition, GradedSubspace};
pub use kam::DWord;
pub use projective::YElement;
pub use quotients::{AIdeal, QuotientAlgebra};
pub use report::{Check, DimRow, QuotientReport, Status, SuiteReport};
pub use series::{compare_series, HilbertSeries, SeriesComparison};
pub use steenrod::{adem_reduce, SqWord, SteenrodElement};
pub use suites::Suite;
pub use symalg::{DegreeBound, SymAlgebra, SymPolynomial, WMonomial};
pub use unstable::{FreeGen, FreeModElement, FreeModule};

use std::str::FromStr;

/// An operation word in either notation, as accepted by [`evaluate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperationWord {
    Sq(SqWord),
    D(DWord),
}

impl FromStr for OperationWord {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        if s.trim_start().starts_with("D_") {
            s.parse().map(OperationWord::D)
        } else {
            s.parse().map(OperationWord::Sq)
        }
    }
}

/// Evaluates `"<word> | <polynomial>"`, e.g. `"Sq^2 Sq^1 | w2"` or
/// `"D_1 D_1 | w2"`, in `S` truncated at `bound`.
pub fn evaluate(expr: &str, bound: u32) -> Result<SymPolynomial> {
    let bar = expr
        .find('|')
        .ok_or_else(|| ParseError::new(expr.len(), "expected `<word> | <polynomial>`"))?;
    let (word_text, poly_text) = (&expr[..bar], &expr[bar + 1..]);
    let shift = |e: ParseError, by: usize| ParseError::new(e.position + by, e.message);
    let word: OperationWord = word_text.parse()?;
    let poly: SymPolynomial = poly_text.parse().map_err(|e| shift(e, bar + 1))?;
    let alg = SymAlgebra::with_bound(bound)?;
    match word {
        OperationWord::Sq(w) => alg.sq_word(&w, &poly),
        OperationWord::D(w) => kam::d_word_apply(&alg, &w, &poly),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate("Sq^1 | w4", 24).unwrap().to_string(), "w5 + w1*w4");
        assert_eq!(evaluate("Sq^0 | w3", 24).unwrap().to_string(), "w3");
        assert_eq!(evaluate("D_1 D_1 | w2", 24).unwrap(), evaluate("Sq^2 Sq^1 | w2", 24).unwrap());
        assert_eq!(evaluate("1 | w1 + w2", 24).unwrap().to_string(), "w2 + w1");
    }

    #[test]
    fn evaluate_errors_carry_positions() {
        match evaluate("Sq^1 | w4 + x", 24) {
            Err(AlgebraError::Parse(e)) => assert_eq!(e.position, 12),
            other => panic!("{other:?}"),
        }
        assert!(matches!(evaluate("Sq^1 w4", 24), Err(AlgebraError::Parse(_))));
        assert!(matches!(evaluate("Sq^30 | w4", 24), Ok(p) if p.is_zero()));
        assert!(matches!(
            evaluate("Sq^4 | w4", 6),
            Err(AlgebraError::DegreeOverflow { degree: 8, bound: 6 })
        ));
    }
}
