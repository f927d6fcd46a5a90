//! Free unstable modules, their maps into `S`, submodule saturation, and the
//! cyclic quotients `M(p,1)` and `M(n,0)`.
//!
//! `F(m)` has basis `Sq^I x_m` with `I` admissible of excess `<= m`. The span
//! of admissible words of larger excess is a left ideal of `A`, so the action
//! is: Adem-reduce `Sq^j Sq^I`, then drop the words of excess `> m`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::gf2::{alpha, gap_decompose, BitVector, EchelonBasis, GradedSubspace};
use crate::kam::{d_word_degree, d_word_apply, DWord};
use crate::report::{DimRow, DimTable};
use crate::series::HilbertSeries;
use crate::steenrod::{admissible_basis, reduce_word, SqWord};
use crate::symalg::{MonomialBasis, SymAlgebra, SymPolynomial};

/// A module generator. Degree 0 is allowed and gives `F(0) = F2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeGen {
    pub label: String,
    pub degree: u32,
}

impl FreeGen {
    pub fn new(label: impl Into<String>, degree: u32) -> Self {
        FreeGen {
            label: label.into(),
            degree,
        }
    }
}

/// `Sq^I` applied to generator number `gen`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub gen: usize,
    pub word: SqWord,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeModElement(BTreeSet<Term>);

impl FreeModElement {
    pub fn zero() -> Self {
        FreeModElement::default()
    }

    pub fn from_term(t: Term) -> Self {
        FreeModElement(BTreeSet::from([t]))
    }

    pub fn toggle(&mut self, t: Term) {
        if !self.0.remove(&t) {
            self.0.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &FreeModElement) {
        for t in &other.0 {
            self.toggle(t.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
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
}

struct Layer {
    basis: Vec<Term>,
    index: HashMap<Term, usize>,
}

/// The direct sum of free unstable modules on the given generators, truncated
/// at a degree bound.
pub struct FreeModule {
    gens: Vec<FreeGen>,
    layers: Vec<Layer>,
}

impl fmt::Debug for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeModule")
            .field("gens", &self.gens)
            .field("dims", &self.dims().dims())
            .finish()
    }
}

impl FreeModule {
    pub fn new(gens: Vec<FreeGen>, bound: u32) -> Self {
        let layers = (0..=bound)
            .map(|d| {
                let mut basis = Vec::new();
                for (g, gen) in gens.iter().enumerate().filter(|(_, g)| g.degree <= d) {
                    for word in admissible_basis(d - gen.degree, gen.degree as i64, false) {
                        basis.push(Term { gen: g, word });
                    }
                }
                let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
                Layer { basis, index }
            })
            .collect();
        FreeModule { gens, layers }
    }

    /// `F(m)` on one generator `x_m`.
    pub fn cyclic(m: u32, bound: u32) -> Self {
        FreeModule::new(vec![FreeGen::new(format!("x{m}"), m)], bound)
    }

    pub fn gens(&self) -> &[FreeGen] {
        &self.gens
    }

    pub fn bound(&self) -> u32 {
        self.layers.len() as u32 - 1
    }

    pub fn basis(&self, degree: u32) -> &[Term] {
        &self.layers[degree as usize].basis
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.layers[degree as usize].basis.len()
    }

    pub fn dims(&self) -> HilbertSeries {
        HilbertSeries::new(self.layers.iter().map(|l| l.basis.len() as u64).collect())
    }

    pub fn generator(&self, g: usize) -> FreeModElement {
        FreeModElement::from_term(Term {
            gen: g,
            word: SqWord::identity(),
        })
    }

    pub fn term_degree(&self, t: &Term) -> u32 {
        self.gens[t.gen].degree + t.word.degree()
    }

    /// The common degree of the terms, `None` for zero.
    pub fn degree_of(&self, e: &FreeModElement) -> Result<Option<u32>> {
        let mut degrees = e.terms().map(|t| self.term_degree(t));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(AlgebraError::Inhomogeneous)
        }
    }

    fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.bound() {
            return Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.bound(),
            });
        }
        Ok(())
    }

    pub fn sq(&self, j: u32, e: &FreeModElement) -> Result<FreeModElement> {
        if j == 0 {
            return Ok(e.clone());
        }
        let mut out = FreeModElement::zero();
        for t in e.terms() {
            let d = self.term_degree(t);
            if j > d {
                continue;
            }
            self.check_degree(d + j)?;
            let m = self.gens[t.gen].degree as i64;
            let raw = SqWord::new(std::iter::once(j).chain(t.word.indices().iter().copied()));
            for w in reduce_word(&raw).words().filter(|w| w.excess() <= m) {
                out.toggle(Term {
                    gen: t.gen,
                    word: w.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Applies a word, rightmost letter first.
    pub fn sq_word(&self, w: &SqWord, e: &FreeModElement) -> Result<FreeModElement> {
        let mut cur = e.clone();
        for &j in w.indices().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.sq(j, &cur)?;
        }
        Ok(cur)
    }

    /// `D_j x = Sq^{l-j} x` on a homogeneous element of degree `l`.
    pub fn d_apply(&self, j: u32, e: &FreeModElement) -> Result<FreeModElement> {
        match self.degree_of(e)? {
            Some(l) if j <= l => self.sq(l - j, e),
            _ => Ok(FreeModElement::zero()),
        }
    }

    pub fn d_word_apply(&self, word: &DWord, e: &FreeModElement) -> Result<FreeModElement> {
        let mut cur = e.clone();
        for &j in word.entries().iter().rev() {
            cur = self.d_apply(j, &cur)?;
        }
        Ok(cur)
    }

    pub fn to_vector(&self, degree: u32, e: &FreeModElement) -> Result<BitVector> {
        self.check_degree(degree)?;
        let layer = &self.layers[degree as usize];
        let mut v = BitVector::zeros(layer.basis.len());
        for t in e.terms() {
            let i = *layer.index.get(t).ok_or_else(|| {
                AlgebraError::InvalidArgument(format!(
                    "{} is not a basis term of degree {degree}",
                    self.format_term(t)
                ))
            })?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn from_vector(&self, degree: u32, v: &BitVector) -> FreeModElement {
        let basis = &self.layers[degree as usize].basis;
        FreeModElement(v.ones().map(|i| basis[i].clone()).collect())
    }

    /// The image in `S` under `x_m -> w_m` for every generator.
    pub fn map_to_s(&self, alg: &SymAlgebra, e: &FreeModElement) -> Result<SymPolynomial> {
        let mut out = SymPolynomial::zero();
        for t in e.terms() {
            let w = match self.gens[t.gen].degree {
                0 => SymPolynomial::one(),
                m => SymPolynomial::var(m),
            };
            out.add_assign(&alg.sq_word(&t.word, &w)?);
        }
        Ok(out)
    }

    pub fn format_term(&self, t: &Term) -> String {
        let label = &self.gens[t.gen].label;
        if t.word.is_empty() {
            label.clone()
        } else {
            format!("{} {label}", t.word)
        }
    }

    pub fn format(&self, e: &FreeModElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = e.terms().map(|t| self.format_term(t)).collect();
        terms.join(" + ")
    }
}

/// The basis `{Sq^I x_m}` of `F(m)` in degree `d`.
pub fn free_basis(m: u32, d: u32) -> Vec<FreeModElement> {
    if d < m {
        return Vec::new();
    }
    admissible_basis(d - m, m as i64, false)
        .into_iter()
        .map(|word| FreeModElement::from_term(Term { gen: 0, word }))
        .collect()
}

/// Image of an element of `F(m)` under `x_m -> w_m`.
pub fn map_to_s(alg: &SymAlgebra, m: u32, e: &FreeModElement) -> Result<SymPolynomial> {
    let mut out = SymPolynomial::zero();
    for t in e.terms() {
        out.add_assign(&alg.sq_word(&t.word, &SymPolynomial::var(m))?);
    }
    Ok(out)
}

/// The smallest subspace containing `relations` and closed under every
/// `Sq^j`, built one degree at a time: layer `d` is spanned by the relations
/// of degree `d` and `Sq^j` of a basis of layer `d - j`.
pub fn saturate_submodule(module: &FreeModule, relations: &[FreeModElement]) -> Result<GradedSubspace> {
    let bound = module.bound();
    let mut sub = GradedSubspace::zero((0..=bound).map(|d| module.dim(d)));
    let mut by_degree: HashMap<u32, Vec<&FreeModElement>> = HashMap::new();
    for r in relations {
        if let Some(d) = module.degree_of(r)? {
            module.check_degree(d)?;
            by_degree.entry(d).or_default().push(r);
        }
    }
    for d in 0..=bound {
        let mut layer = EchelonBasis::new(module.dim(d));
        for r in by_degree.get(&d).into_iter().flatten() {
            layer.insert(module.to_vector(d, r)?);
        }
        for j in 1..=d {
            if layer.is_full() {
                break;
            }
            for row in sub.layer(d - j).rows() {
                let image = module.sq(j, &module.from_vector(d - j, row))?;
                layer.insert(module.to_vector(d, &image)?);
            }
        }
        *sub.layer_mut(d) = layer;
    }
    Ok(sub)
}

/// A free module modulo a saturated submodule.
#[derive(Debug)]
pub struct ModuleQuotient {
    pub module: FreeModule,
    pub relations: GradedSubspace,
}

impl ModuleQuotient {
    pub fn new(module: FreeModule, relations: &[FreeModElement]) -> Result<Self> {
        let relations = saturate_submodule(&module, relations)?;
        Ok(ModuleQuotient { module, relations })
    }

    pub fn dims(&self) -> HilbertSeries {
        HilbertSeries::new(
            (0..=self.module.bound())
                .map(|d| (self.module.dim(d) - self.relations.rank(d)) as u64)
                .collect(),
        )
    }

    /// Whether a homogeneous element vanishes in the quotient.
    pub fn is_zero(&self, e: &FreeModElement) -> Result<bool> {
        match self.module.degree_of(e)? {
            None => Ok(true),
            Some(d) => Ok(self.relations.contains(d, &self.module.to_vector(d, e)?)),
        }
    }
}

/// `Sq^{2^i} x` for `i <= top`, skipping those above the bound.
fn two_power_relations(module: &FreeModule, gen: usize, top: Option<u32>) -> Vec<FreeModElement> {
    let Some(top) = top else {
        return Vec::new();
    };
    let x = module.generator(gen);
    (0..=top)
        .filter_map(|i| module.sq(1 << i, &x).ok())
        .filter(|r| !r.is_zero())
        .collect()
}

fn check_bound(degree: u64, bound: u32) -> Result<()> {
    if degree > bound as u64 {
        return Err(AlgebraError::DegreeOverflow {
            degree: degree.min(u32::MAX as u64) as u32,
            bound,
        });
    }
    Ok(())
}

/// `M(p,1) = F(2^p - 1) / A{Sq^{2^i} x : i <= p - 2}`.
pub fn m_module(p: u32, bound: u32) -> Result<ModuleQuotient> {
    m_module_without(p, bound, None)
}

/// `M(p,1)` with relation `Sq^{2^skip}` left out.
pub fn m_module_without(p: u32, bound: u32, skip: Option<u32>) -> Result<ModuleQuotient> {
    check_bound((1u64 << p) - 1, bound)?;
    let module = FreeModule::cyclic((1 << p) - 1, bound);
    let mut rels = Vec::new();
    if p >= 2 {
        let x = module.generator(0);
        for i in (0..=p - 2).filter(|&i| Some(i) != skip) {
            let degree = (1u32 << p) - 1 + (1 << i);
            if degree <= bound {
                rels.push(module.sq(1 << i, &x)?);
            }
        }
    }
    ModuleQuotient::new(module, &rels)
}

pub fn m_module_dims(p: u32, bound: u32) -> Result<HilbertSeries> {
    Ok(m_module(p, bound)?.dims())
}

/// `M(n,0) = F(2^n) / A{Sq^{2^i} x : i <= n - 2}`.
pub fn m0_module(n: u32, bound: u32) -> Result<ModuleQuotient> {
    check_bound(1u64 << n, bound)?;
    let module = FreeModule::cyclic(1 << n, bound);
    let rels = two_power_relations(&module, 0, n.checked_sub(2));
    ModuleQuotient::new(module, &rels)
}

pub fn m0_module_dims(n: u32, bound: u32) -> Result<HilbertSeries> {
    Ok(m0_module(n, bound)?.dims())
}

/// Per-degree rank of the joint map `F(m_1) + ... + F(m_k) -> S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub degree: u32,
    pub count: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub gens: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<u32>,
    pub rows: Vec<RankRow>,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.rank == r.count)
    }

    pub fn first_failure(&self) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.rank != r.count)
    }
}

/// Checks that `x_m -> w_m` embeds the sum of the `F(m)` into `S` in every
/// degree up to the algebra's bound.
pub fn verify_injectivity(alg: &SymAlgebra, gens: &[u32]) -> Result<InjectivityReport> {
    verify_injectivity_truncated(alg, gens, None)
}

/// As [`verify_injectivity`], but with images taken modulo `(w_m : m > q)`,
/// the kernel of `S -> H*BO(q)`.
pub fn verify_injectivity_truncated(
    alg: &SymAlgebra,
    gens: &[u32],
    truncate: Option<u32>,
) -> Result<InjectivityReport> {
    let bound = alg.bound().get();
    let mut rows = Vec::new();
    for d in 1..=bound {
        let basis = MonomialBasis::new(d);
        let mut span = EchelonBasis::new(basis.len());
        let mut count = 0;
        for &m in gens.iter().filter(|&&m| m >= 1 && m <= d) {
            for word in admissible_basis(d - m, m as i64, false) {
                count += 1;
                let mut image = alg.sq_word(&word, &SymPolynomial::var(m))?;
                if let Some(q) = truncate {
                    image = SymPolynomial::from_monomials(
                        image
                            .monomials()
                            .filter(|mono| mono.max_index().map_or(true, |top| top <= q))
                            .cloned(),
                    );
                }
                span.insert(basis.to_vector(&image)?);
            }
        }
        rows.push(RankRow {
            degree: d,
            count,
            rank: span.rank(),
        });
    }
    Ok(InjectivityReport {
        gens: gens.to_vec(),
        truncated_at: truncate,
        rows,
    })
}

/// The basis words for `M(p,1)`: nondecreasing, entries `2^k - 1` with `k < p`,
/// image degree `<= bound`.
pub fn m_basis_words(p: u32, bound: u32) -> Vec<DWord> {
    fn extend(degree: u32, cap: usize, entries: &[u32], bound: u32, right: &mut Vec<u32>, out: &mut Vec<DWord>) {
        for (k, &j) in entries.iter().enumerate().take(cap + 1) {
            let next = 2 * degree - j;
            if next > bound {
                continue;
            }
            right.push(j);
            out.push(DWord::new(right.iter().rev().copied()));
            extend(next, k, entries, bound, right, out);
            right.pop();
        }
    }
    let m = (1u32 << p) - 1;
    if p == 0 || m > bound {
        return Vec::new();
    }
    let entries: Vec<u32> = (0..p).map(|k| (1 << k) - 1).collect();
    let mut out = vec![DWord::default()];
    extend(m, entries.len() - 1, &entries, bound, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisWordRow {
    pub word: String,
    pub degree: u32,
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MBasisReport {
    pub p: u32,
    pub application_order: &'static str,
    pub words: Vec<BasisWordRow>,
    /// Degrees `<= bound` with `alpha = p` that no word reaches, and degrees
    /// reached twice or off the alpha set.
    pub missing_degrees: Vec<u32>,
    pub unexpected_degrees: Vec<u32>,
}

impl MBasisReport {
    pub fn passed(&self) -> bool {
        self.words.iter().all(|w| w.nonzero)
            && self.missing_degrees.is_empty()
            && self.unexpected_degrees.is_empty()
    }
}

/// Applies each basis word to the generator of `M(p,1)` and checks the image
/// survives in the quotient, with one word per degree of alpha number `p`.
pub fn m_basis_check(p: u32, bound: u32) -> Result<MBasisReport> {
    if p == 0 {
        return Err(AlgebraError::InvalidArgument("p must be positive".to_string()));
    }
    let quotient = m_module(p, bound)?;
    let x = quotient.module.generator(0);
    let mut words = Vec::new();
    let mut seen = BTreeSet::new();
    let mut unexpected = Vec::new();
    for word in m_basis_words(p, bound) {
        let degree = d_word_degree(&word, (1 << p) - 1) as u32;
        let image = quotient.module.d_word_apply(&word, &x)?;
        let nonzero = !quotient.is_zero(&image)?;
        if !seen.insert(degree) || alpha(degree as u64) != p {
            unexpected.push(degree);
        }
        words.push(BasisWordRow {
            word: word.to_string(),
            degree,
            nonzero,
        });
    }
    let missing = (1..=bound)
        .filter(|&d| alpha(d as u64) == p && !seen.contains(&d))
        .collect();
    Ok(MBasisReport {
        p,
        application_order: "rightmost letter first",
        words,
        missing_degrees: missing,
        unexpected_degrees: unexpected,
    })
}

/// The label `(p, I)` of the basis element of `QS` in degree `m`: the class
/// `D_I t_{2^p}` with `I = (2^{a_1}, ..., 2^{a_s})` read off the gap
/// decomposition of `m`.
pub fn qg_basis_for_degree(m: u32) -> Result<(u32, DWord)> {
    let g = gap_decompose(m as u64)?;
    let word = DWord::new(g.exponents().into_iter().map(|a| 1u32 << a));
    Ok((g.p(), word))
}

/// All labels `(p, I)`: `I` nondecreasing with entries `2^a`, `a < p`, and
/// `deg D_I t_{2^p} <= bound`.
pub fn qg_labels(bound: u32) -> Vec<(u32, DWord)> {
    let mut out = Vec::new();
    for p in 0..u32::BITS {
        if 1u64 << p > bound as u64 {
            break;
        }
        for word in crate::kam::basis_words(1 << p, bound) {
            if word.entries().iter().all(|j| j.is_power_of_two()) {
                out.push((p, word));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub bound: u32,
    pub labels: usize,
    /// Degrees whose label has the wrong degree or is not a basis label.
    pub bad_degrees: Vec<u32>,
    /// Labels not hit by any degree.
    pub unhit_labels: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.bad_degrees.is_empty() && self.unhit_labels.is_empty()
    }
}

pub fn qg_degree_bijection(bound: u32) -> Result<BijectionReport> {
    let labels: BTreeSet<(u32, DWord)> = qg_labels(bound).into_iter().collect();
    let mut hit = BTreeSet::new();
    let mut bad = Vec::new();
    for m in 1..=bound {
        let (p, word) = qg_basis_for_degree(m)?;
        let ok = d_word_degree(&word, 1 << p) == m as i64 && labels.contains(&(p, word.clone()));
        if !ok || !hit.insert((p, word)) {
            bad.push(m);
        }
    }
    let unhit = labels
        .difference(&hit)
        .map(|(p, w)| format!("({p}; {w})"))
        .collect();
    Ok(BijectionReport {
        bound,
        labels: labels.len(),
        bad_degrees: bad,
        unhit_labels: unhit,
    })
}

/// `sum_p dim (Sigma M(p,1))_d` against `1` in each positive degree, from the
/// engine-computed quotients.
pub fn filtration_sum_table(bound: u32) -> Result<DimTable> {
    let mut total = HilbertSeries::zeros(bound);
    for p in 0..u32::BITS {
        if (1u64 << p) > bound as u64 {
            break;
        }
        total = total.sum(&m_module_dims(p, bound)?.shift(1));
    }
    Ok(DimTable(
        (1..=bound)
            .map(|d| DimRow::new(d, 1, total.get(d)))
            .collect(),
    ))
}

/// One dropped relation and the first degree where the quotient grows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundancyRow {
    pub p: u32,
    pub dropped_i: u32,
    pub witness_degree: Option<u32>,
}

/// For each `p` and each relation `Sq^{2^i} x`, `i <= p - 2`, in bound:
/// whether dropping it enlarges `M(p,1)`.
pub fn m_minimality(bound: u32) -> Result<Vec<RedundancyRow>> {
    let mut rows = Vec::new();
    for p in 2..u32::BITS {
        if (1u64 << p) > bound as u64 + 1 {
            break;
        }
        let full = m_module_dims(p, bound)?;
        for i in 0..=p - 2 {
            if (1u32 << p) - 1 + (1 << i) > bound {
                continue;
            }
            let dropped = m_module_without(p, bound, Some(i))?.dims();
            let witness = (0..=bound).find(|&d| dropped.get(d) > full.get(d));
            rows.push(RedundancyRow {
                p,
                dropped_i: i,
                witness_degree: witness,
            });
        }
    }
    Ok(rows)
}

/// Degrees `m <= bound` where the indecomposable part of `D_I w_{2^p}` is not
/// exactly `w_m`, for the label `(p, I)` of `m`.
pub fn qg_image_failures(alg: &SymAlgebra) -> Result<Vec<u32>> {
    let mut bad = Vec::new();
    for m in 1..=alg.bound().get() {
        let (p, word) = qg_basis_for_degree(m)?;
        let image = d_word_apply(alg, &word, &SymPolynomial::var(1 << p))?;
        if image.indecomposable_part() != vec![m] {
            bad.push(m);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::SqWord;

    fn term(word: &[u32]) -> FreeModElement {
        FreeModElement::from_term(Term {
            gen: 0,
            word: SqWord::new(word.iter().copied()),
        })
    }

    #[test]
    fn free_basis_examples() {
        for d in 0..=40u32 {
            let expected = usize::from(d.is_power_of_two());
            assert_eq!(free_basis(1, d).len(), expected, "F(1) in degree {d}");
        }
        assert_eq!(free_basis(4, 4), vec![term(&[])]);
        assert_eq!(free_basis(2, 5), vec![term(&[2, 1])]);
        assert!(free_basis(3, 2).is_empty());
    }

    #[test]
    fn free_module_action() {
        let f = FreeModule::cyclic(2, 16);
        let x = f.generator(0);
        assert_eq!(f.sq(2, &x).unwrap(), term(&[2]));
        assert!(f.sq(3, &x).unwrap().is_zero());
        // Sq^1 Sq^2 = Sq^3 has excess 3 > 2
        assert_eq!(f.sq_word(&SqWord::new([1, 2]), &x).unwrap(), FreeModElement::zero());
        assert_eq!(f.sq_word(&SqWord::new([2, 1]), &x).unwrap(), term(&[2, 1]));
        assert!(f.sq(16, &f.sq(2, &x).unwrap()).unwrap().is_zero());
        let small = FreeModule::cyclic(2, 6);
        assert!(matches!(
            small.sq(4, &small.sq(2, &x).unwrap()),
            Err(AlgebraError::DegreeOverflow { degree: 8, bound: 6 })
        ));
        // top square is squaring: Sq^l on degree l lands in degree 2l
        let y = term(&[2, 1]);
        assert_eq!(f.sq(5, &y).unwrap(), term(&[5, 2, 1]));
    }

    #[test]
    fn dims_match_admissible_counts() {
        for m in 1..=6 {
            let f = FreeModule::cyclic(m, 20);
            for d in 0..=20 {
                let expected = if d < m { 0 } else { admissible_basis(d - m, m as i64, false).len() };
                assert_eq!(f.dim(d), expected);
            }
        }
    }

    #[test]
    fn map_to_s_examples() {
        let alg = SymAlgebra::with_bound(12).unwrap();
        assert_eq!(map_to_s(&alg, 4, &term(&[])).unwrap(), SymPolynomial::var(4));
        assert_eq!(
            map_to_s(&alg, 4, &term(&[1])).unwrap(),
            "w5 + w1*w4".parse().unwrap()
        );
        assert_eq!(
            map_to_s(&alg, 2, &term(&[2, 1])).unwrap(),
            "w5 + w1*w4 + w2*w3 + w1*w2^2 + w1^2*w3 + w1^3*w2".parse().unwrap()
        );
    }

    #[test]
    fn module_action_is_compatible_with_the_map_to_s() {
        let alg = SymAlgebra::with_bound(18).unwrap();
        for m in 1..=5 {
            let f = FreeModule::cyclic(m, 18);
            for d in m..=12 {
                for t in f.basis(d) {
                    let e = FreeModElement::from_term(t.clone());
                    for j in 1..=(18 - d) {
                        let lhs = f.map_to_s(&alg, &f.sq(j, &e).unwrap()).unwrap();
                        let rhs = alg.sq(j, &f.map_to_s(&alg, &e).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "Sq^{j} {}", f.format(&e));
                    }
                }
            }
        }
    }

    #[test]
    fn injectivity_small() {
        let alg = SymAlgebra::with_bound(5).unwrap();
        let report = verify_injectivity(&alg, &[4]).unwrap();
        assert_eq!(report.rows[4], RankRow { degree: 5, count: 1, rank: 1 });
        let report = verify_injectivity(&alg, &[1, 2, 4]).unwrap();
        assert_eq!(report.rows[4], RankRow { degree: 5, count: 2, rank: 2 });
        let all: Vec<u32> = (1..=5).collect();
        assert!(verify_injectivity(&alg, &all).unwrap().passed());
    }

    #[test]
    fn injectivity_through_twelve() {
        let alg = SymAlgebra::with_bound(12).unwrap();
        let all: Vec<u32> = (1..=12).collect();
        let report = verify_injectivity(&alg, &all).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        // not onto: w1*w2 and w1^3 span only one dimension of the image in degree 3
        assert_eq!(report.rows[2], RankRow { degree: 3, count: 2, rank: 2 });
    }

    #[test]
    fn saturation_basics() {
        let f = FreeModule::cyclic(3, 16);
        let zero = saturate_submodule(&f, &[]).unwrap();
        assert!(zero.ranks().iter().all(|&r| r == 0));
        let rel = f.sq(1, &f.generator(0)).unwrap();
        let sub = saturate_submodule(&f, std::slice::from_ref(&rel)).unwrap();
        assert_eq!(sub.rank(4), 1);
        let rows: Vec<FreeModElement> = (0..=16)
            .flat_map(|d| sub.layer(d).rows().iter().map(move |r| (d, r.clone())))
            .map(|(d, r)| f.from_vector(d, &r))
            .collect();
        assert!(saturate_submodule(&f, &rows).unwrap().same_span(&sub));
        for d in 0..=16 {
            assert_eq!(sub.rank(d), f.dim(d) - usize::from(alpha(d as u64) == 2));
        }
    }

    #[test]
    fn m_module_dims_are_alpha_indicators() {
        for p in 0..=4 {
            let dims = m_module_dims(p, 24).unwrap();
            assert_eq!(dims, HilbertSeries::indicator(24, |d| alpha(d as u64) == p), "p = {p}");
        }
    }

    #[test]
    fn m_basis_words_examples() {
        let words = m_basis_words(2, 12);
        let degrees: Vec<i64> = words.iter().map(|w| d_word_degree(w, 3)).collect();
        assert!(words.contains(&DWord::new([1])));
        assert!(words.contains(&DWord::new([0, 1])));
        assert!(!words.contains(&DWord::new([1, 0])));
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(
            m_basis_words(1, 8),
            vec![DWord::default(), DWord::new([0]), DWord::new([0, 0]), DWord::new([0, 0, 0])]
        );
    }

    #[test]
    fn m_basis_check_passes() {
        for p in 1..=4 {
            let report = m_basis_check(p, 24).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn qg_examples() {
        assert_eq!(qg_basis_for_degree(5).unwrap(), (1, DWord::new([1, 1])));
        assert_eq!(qg_basis_for_degree(6).unwrap(), (2, DWord::new([2])));
        assert_eq!(qg_basis_for_degree(8).unwrap(), (3, DWord::default()));
        assert_eq!(qg_basis_for_degree(1).unwrap(), (0, DWord::default()));
        assert!(qg_degree_bijection(24).unwrap().passed());
    }

    #[test]
    fn filtration_sum_is_one() {
        assert!(filtration_sum_table(24).unwrap().passed());
    }

    #[test]
    fn relations_are_nonredundant() {
        let rows = m_minimality(24).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.witness_degree.is_some()), "{rows:?}");
    }

    #[test]
    fn qg_images_have_the_right_indecomposable() {
        let alg = SymAlgebra::with_bound(20).unwrap();
        assert_eq!(qg_image_failures(&alg).unwrap(), Vec::<u32>::new());
    }

    #[test]
    fn m0_examples() {
        assert_eq!(m0_module_dims(1, 16).unwrap(), FreeModule::cyclic(2, 16).dims());
        let dims = m0_module_dims(2, 20).unwrap();
        assert_eq!(dims.get(4), 1);
        assert_eq!(dims.get(5), 0);
        assert!(dims.get(6) >= 1);
    }
}
