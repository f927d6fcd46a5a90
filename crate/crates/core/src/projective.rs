//! `H*(RP^inf) = F2[y]` with `Sq^j y^l = C(l, j) y^{l+j}`, its filtration by
//! the alpha number of the degree, and its minimal presentation as an
//! unstable module.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::gf2::{alpha, binom_mod2};
use crate::kam::d_word_degree;
use crate::series::{compare_series, HilbertSeries};
use crate::symalg::q_action;
use crate::unstable::{m_basis_words, m_module_dims, FreeGen, FreeModElement, FreeModule, ModuleQuotient};

/// A sum of powers of `y`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct YElement(BTreeSet<u32>);

impl YElement {
    pub fn zero() -> Self {
        YElement::default()
    }

    pub fn power(l: u32) -> Self {
        YElement(BTreeSet::from([l]))
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn toggle(&mut self, l: u32) {
        if !self.0.remove(&l) {
            self.0.insert(l);
        }
    }

    pub fn add_assign(&mut self, other: &YElement) {
        for &l in &other.0 {
            self.toggle(l);
        }
    }

    pub fn sq(&self, j: u32) -> YElement {
        let mut out = YElement::zero();
        for &l in &self.0 {
            out.add_assign(&sq_on_y(j, l));
        }
        out
    }

    /// Applies `Sq^{i_1} ... Sq^{i_k}`, rightmost first.
    pub fn sq_word(&self, word: &[u32]) -> YElement {
        word.iter().rev().fold(self.clone(), |acc, &j| acc.sq(j))
    }
}

impl fmt::Display for YElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.0.iter().rev().map(|l| format!("y^{l}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

pub fn sq_on_y(j: u32, l: u32) -> YElement {
    if binom_mod2(l as i64, j as i64) {
        YElement::power(l + j)
    } else {
        YElement::zero()
    }
}

/// The indicator of degrees with alpha number `p`.
pub fn filtration_dims(p: u32, bound: u32) -> HilbertSeries {
    HilbertSeries::indicator(bound, |d| d > 0 && alpha(d as u64) == p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredQuotientReport {
    pub p: u32,
    pub dims_witness: Option<u32>,
    /// `(i, target exponent, alpha)` for each relation `Sq^{2^i}` in bound.
    pub relations: Vec<(u32, u32, u32)>,
    /// Basis words of `M(p,1)` whose image `D_I y^{2^p - 1}` is zero or off
    /// filtration `p`.
    pub bad_words: Vec<String>,
}

impl FilteredQuotientReport {
    pub fn passed(&self) -> bool {
        self.dims_witness.is_none()
            && self.bad_words.is_empty()
            && self.relations.iter().all(|&(_, _, a)| a < self.p)
    }
}

/// Compares `M(p,1)` with the `p`-th filtration quotient of `F2[y]` under
/// `x -> y^{2^p - 1}`.
pub fn filtered_quotient_iso_check(p: u32, bound: u32) -> Result<FilteredQuotientReport> {
    let dims = m_module_dims(p, bound)?;
    let dims_witness = compare_series(&dims, &filtration_dims(p, bound)).witness_degree();
    let m = (1u32 << p) - 1;
    let relations = (0..p.saturating_sub(1))
        .filter(|&i| m + (1 << i) <= bound)
        .map(|i| {
            let image = sq_on_y(1 << i, m);
            // a zero image sits in every filtration
            let a = image.exponents().map(|l| alpha(l as u64)).max().unwrap_or(0);
            (i, m + (1 << i), a)
        })
        .collect();
    let mut bad_words = Vec::new();
    for word in m_basis_words(p, bound) {
        let mut image = YElement::power(m);
        for &j in word.entries().iter().rev() {
            let l = image.exponents().next().unwrap_or(0);
            image = if j <= l { image.sq(l - j) } else { YElement::zero() };
        }
        let degree = d_word_degree(&word, m) as u32;
        if image != YElement::power(degree) || alpha(degree as u64) != p {
            bad_words.push(word.to_string());
        }
    }
    Ok(FilteredQuotientReport {
        p,
        dims_witness,
        relations,
        bad_words,
    })
}

/// The relation `Sq^{2^i} s_k + Sq^{2^{k-1}} Sq^{2^i} s_{k-1}` of the
/// presentation, where `s_k` has degree `2^k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RpRelation {
    pub k: u32,
    pub i: u32,
}

impl RpRelation {
    pub fn degree(&self) -> u32 {
        (1 << self.k) - 1 + (1 << self.i)
    }
}

/// Relations with `2 <= k`, `i <= k - 2` and degree `<= bound`.
pub fn rp_relations(bound: u32) -> Vec<RpRelation> {
    let mut out = Vec::new();
    for k in 2..u32::BITS {
        if (1u64 << k) > bound as u64 + 1 {
            break;
        }
        for i in 0..=k - 2 {
            let r = RpRelation { k, i };
            if r.degree() <= bound {
                out.push(r);
            }
        }
    }
    out
}

fn rp_module(bound: u32) -> FreeModule {
    let gens = (1..u32::BITS)
        .map(|k| (k, (1u64 << k) - 1))
        .take_while(|&(_, d)| d <= bound as u64)
        .map(|(k, d)| FreeGen::new(format!("s{k}"), d as u32))
        .collect();
    FreeModule::new(gens, bound)
}

fn relation_element(module: &FreeModule, r: RpRelation) -> Result<FreeModElement> {
    // generator index k - 1 has degree 2^k - 1
    let step = 1u32 << r.i;
    let mut out = module.sq(step, &module.generator(r.k as usize - 1))?;
    let lower = module.sq(step, &module.generator(r.k as usize - 2))?;
    out.add_assign(&module.sq(1 << (r.k - 1), &lower)?);
    Ok(out)
}

fn rp_quotient(bound: u32, skip: Option<RpRelation>) -> Result<ModuleQuotient> {
    let module = rp_module(bound);
    let rels = rp_relations(bound)
        .into_iter()
        .filter(|&r| Some(r) != skip)
        .map(|r| relation_element(&module, r))
        .collect::<Result<Vec<_>>>()?;
    ModuleQuotient::new(module, &rels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationRow {
    pub k: u32,
    pub i: u32,
    pub holds_in_y: bool,
    /// First degree where the quotient grows once this relation is dropped.
    pub witness_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RpPresentationReport {
    pub bound: u32,
    pub dims: HilbertSeries,
    pub rank_one_failure: Option<u32>,
    /// First degree where no module basis element maps to `y^d`.
    pub onto_failure: Option<u32>,
    pub relations: Vec<RelationRow>,
}

impl RpPresentationReport {
    pub fn passed(&self) -> bool {
        self.rank_one_failure.is_none()
            && self.onto_failure.is_none()
            && self.relations.iter().all(|r| r.holds_in_y && r.witness_degree.is_some())
    }
}

/// Verifies that `F2[y]` in positive degrees is presented by the generators
/// `s_k -> y^{2^k - 1}` and the relations [`rp_relations`], and that no
/// relation can be dropped.
pub fn rp_presentation_verify(bound: u32) -> Result<RpPresentationReport> {
    let quotient = rp_quotient(bound, None)?;
    let dims = quotient.dims();
    let expected = HilbertSeries::indicator(bound, |d| d > 0);
    let rank_one_failure = compare_series(&dims, &expected).witness_degree();

    let module = &quotient.module;
    let onto_failure = (1..=bound).find(|&d| {
        !module.basis(d).iter().any(|t| {
            let s = module.gens()[t.gen].degree;
            YElement::power(s).sq_word(t.word.indices()) == YElement::power(d)
        })
    });

    let mut relations = Vec::new();
    for r in rp_relations(bound) {
        let step = 1u32 << r.i;
        let lhs = sq_on_y(step, (1 << r.k) - 1);
        let rhs = sq_on_y(step, (1 << (r.k - 1)) - 1).sq(1 << (r.k - 1));
        let dropped = rp_quotient(bound, Some(r))?.dims();
        relations.push(RelationRow {
            k: r.k,
            i: r.i,
            holds_in_y: lhs == rhs,
            witness_degree: (0..=bound).find(|&d| dropped.get(d) > dims.get(d)),
        });
    }
    Ok(RpPresentationReport {
        bound,
        dims,
        rank_one_failure,
        onto_failure,
        relations,
    })
}

/// `(j, m)` pairs with `m + j <= bound` where the action of `Sq^j` on `w_m`
/// in the indecomposables differs from its action on `y^{m-1}` shifted by one.
pub fn suspension_link_failures(bound: u32) -> Vec<(u32, u32)> {
    let mut bad = Vec::new();
    for m in 1..=bound {
        for j in 0..=bound - m {
            let (hit, target) = q_action(j, m);
            let y = sq_on_y(j, m - 1);
            let agrees = if hit {
                y == YElement::power(target - 1)
            } else {
                y.is_zero()
            };
            if !agrees {
                bad.push((j, m));
            }
        }
    }
    bad
}
