//! Quotients of `S` by ideals closed under the Steenrod action: the images
//! `B*(n)` of `S` in the connected covers of `BO`, the finite Grassmannian
//! limits `H*BO(q)`, and the Dickson quotients `J_n`.

mod gl;
mod ideal;

use std::sync::Arc;

use serde::Serialize;

pub use gl::{dickson_series, generated_group, gl_generators, gl_invariant_dims, GlMatrix};
pub use ideal::{AIdeal, ClosureCertificate, MonomialSpace};

use crate::error::{AlgebraError, Result};
use crate::gf2::{alpha, EchelonBasis};
use crate::report::{QuotientCheck, QuotientReport};
use crate::series::{compare_series, HilbertSeries, SeriesComparison};
use crate::steenrod::admissible_basis;
use crate::symalg::{SymAlgebra, SymPolynomial, WMonomial};
use crate::unstable::m0_module_dims;

/// `S / I` for an ideal `I`, with coset representatives.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pub name: String,
    pub ideal: AIdeal,
}

impl QuotientAlgebra {
    pub fn new(name: impl Into<String>, ideal: AIdeal) -> Self {
        QuotientAlgebra {
            name: name.into(),
            ideal,
        }
    }

    pub fn bound(&self) -> u32 {
        self.ideal.bound()
    }

    pub fn dims(&self) -> HilbertSeries {
        let space = self.ideal.space();
        HilbertSeries::new(
            (0..=self.bound())
                .map(|d| (space.basis(d).len() - self.ideal.rank(d)) as u64)
                .collect(),
        )
    }

    /// Monomials not occurring as the largest term of an ideal element; they
    /// form a basis of the quotient in that degree.
    pub fn representatives(&self, degree: u32) -> Vec<WMonomial> {
        let basis = self.ideal.space().basis(degree);
        self.ideal
            .graded()
            .layer(degree)
            .free_columns()
            .into_iter()
            .map(|c| basis.monomials()[c].clone())
            .collect()
    }

    /// Whether `p` is zero in the quotient.
    pub fn is_zero(&self, p: &SymPolynomial) -> Result<bool> {
        self.ideal.contains(p)
    }
}

fn shared_space(alg: &SymAlgebra) -> Arc<MonomialSpace> {
    Arc::new(MonomialSpace::new(alg.bound().get()))
}

fn two_power_classes(filter: impl Fn(u32) -> bool, bound: u32) -> Vec<SymPolynomial> {
    (0..u32::BITS)
        .map(|k| 1u64 << k)
        .take_while(|&m| m <= bound as u64)
        .map(|m| m as u32)
        .filter(|&m| filter(m.trailing_zeros()))
        .map(SymPolynomial::var)
        .collect()
}

/// `S` modulo the ideal generated under `A` by `w_{2^k}`, `k < n`.
pub fn bstar(alg: &SymAlgebra, n: u32) -> Result<QuotientAlgebra> {
    bstar_in(alg, shared_space(alg), n)
}

fn bstar_in(alg: &SymAlgebra, space: Arc<MonomialSpace>, n: u32) -> Result<QuotientAlgebra> {
    let bound = alg.bound().get();
    if (1u64 << n) > bound as u64 {
        return Err(AlgebraError::DegreeOverflow {
            degree: (1u64 << n).min(u32::MAX as u64) as u32,
            bound,
        });
    }
    let gens = two_power_classes(|k| k < n, bound);
    Ok(QuotientAlgebra::new(
        format!("B*({n})"),
        AIdeal::saturate(alg, space, &gens)?,
    ))
}

/// Degrees `m <= bound` with `alpha(m - 1) >= n`: the polynomial generators
/// of `B*(n)`.
pub fn bstar_generator_degrees(n: u32, bound: u32) -> Vec<u32> {
    (1..=bound).filter(|&m| alpha(m as u64 - 1) >= n).collect()
}

/// Degrees at which `B*(n)` fails to be `(2^n - 1)`-connected.
fn connectivity_failure(dims: &HilbertSeries, n: u32) -> Option<u32> {
    (1..(1u32 << n).min(dims.bound() + 1)).find(|&d| dims.get(d) != 0)
}

fn witness(cmp: SeriesComparison) -> Option<u32> {
    cmp.witness_degree()
}

/// Checks the connectivity and generator series of `B*(n)` together with the
/// relations holding in it.
pub fn bstar_report(alg: &SymAlgebra, n: u32) -> Result<QuotientReport> {
    let q = bstar(alg, n)?;
    let bound = q.bound();
    let dims = q.dims();
    let mut checks = Vec::new();
    let conn = connectivity_failure(&dims, n);
    checks.push(QuotientCheck::new("connectivity", conn.is_none(), conn));
    let series = compare_series(
        &dims,
        &HilbertSeries::polynomial(&bstar_generator_degrees(n, bound), bound),
    );
    checks.push(QuotientCheck::new(
        "generator series (series-level verification)",
        series.is_equal(),
        witness(series),
    ));
    checks.extend(bstar_relations_check(alg, &q, n)?);
    Ok(QuotientReport {
        quotient: q.name.clone(),
        degree_bound: bound,
        dims: dims.dims().to_vec(),
        checks,
    })
}

/// `Sq^{2^i} w_{2^n} = 0` for `i <= n - 2`, and `θ(k, i)` with every factor
/// `w_m`, `0 < m < 2^n`, deleted is zero for `k >= n + 1`, in `B*(n)`.
pub fn bstar_relations_check(alg: &SymAlgebra, q: &QuotientAlgebra, n: u32) -> Result<Vec<QuotientCheck>> {
    let bound = q.bound();
    let mut checks = Vec::new();
    let top = 1u32 << n;
    for i in (0..n.saturating_sub(1)).filter(|&i| top + (1 << i) <= bound) {
        let rel = alg.sq(1 << i, &SymPolynomial::var(top))?;
        let ok = q.is_zero(&rel)?;
        checks.push(QuotientCheck::new(
            format!("Sq^{} w{top} = 0", 1u32 << i),
            ok,
            (!ok).then_some(top + (1 << i)),
        ));
    }
    for k in n + 1.. {
        if (1u64 << k) + 1 > bound as u64 {
            break;
        }
        for i in 0..=k - 2 {
            let degree = (1u32 << k) + (1 << i);
            if degree > bound {
                break;
            }
            let truncated = alg.theta_parts(k, i)?.select(true, true, |m| m >= top);
            let ok = q.is_zero(&truncated)?;
            checks.push(QuotientCheck::new(
                format!("truncated theta({k},{i}) = 0"),
                ok,
                (!ok).then_some(degree),
            ));
        }
    }
    Ok(checks)
}

/// `S / (w_m : m > q)`, built from the monomial description of the ideal.
pub fn bo_finite(alg: &SymAlgebra, q: u32) -> Result<QuotientAlgebra> {
    let bound = alg.bound().get();
    if q == 0 || q > bound {
        return Err(AlgebraError::InvalidArgument(format!(
            "q must lie in 1..={bound}, got {q}"
        )));
    }
    let gens = ((q + 1)..=bound).map(SymPolynomial::var).collect();
    let ideal = AIdeal::monomial_span(shared_space(alg), gens, |m| {
        m.max_index().is_some_and(|top| top > q)
    });
    Ok(QuotientAlgebra::new(format!("H*BO({q})"), ideal))
}

/// Partition counts, the `A`-closure certificate, and agreement of the
/// monomial description with the ordinary and `A`-saturated ideals on the
/// same generators.
pub fn bo_finite_report(alg: &SymAlgebra, q: u32) -> Result<QuotientReport> {
    let quotient = bo_finite(alg, q)?;
    let bound = quotient.bound();
    let dims = quotient.dims();
    let parts: Vec<u32> = (1..=q).collect();
    let series = compare_series(&dims, &HilbertSeries::polynomial(&parts, bound));
    let cert = quotient.ideal.closure_certificate(alg)?;
    let space = quotient.ideal.space().clone();
    let plain = AIdeal::algebra_ideal(space.clone(), quotient.ideal.gens())?;
    let saturated = AIdeal::saturate(alg, space, quotient.ideal.gens())?;
    let first_diff = |other: &AIdeal| {
        quotient
            .ideal
            .graded()
            .first_degree_not_containing(other.graded())
            .or_else(|| other.graded().first_degree_not_containing(quotient.ideal.graded()))
    };
    let plain_diff = first_diff(&plain);
    let sat_diff = first_diff(&saturated);
    Ok(QuotientReport {
        quotient: quotient.name.clone(),
        degree_bound: bound,
        dims: dims.dims().to_vec(),
        checks: vec![
            QuotientCheck::new("partitions into parts <= q", series.is_equal(), witness(series)),
            QuotientCheck::new(
                "ideal closed under Sq",
                cert.passed(),
                cert.sq_failure.or(cert.mul_failure).map(|(d, _)| d),
            ),
            QuotientCheck::new("equals the ideal (w_m : m > q)", plain_diff.is_none(), plain_diff),
            QuotientCheck::new("equals its A-saturation", sat_diff.is_none(), sat_diff),
        ],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndecomposableRow {
    pub n: u32,
    pub i: u32,
    pub target: u32,
    pub indecomposable_part: Vec<u32>,
    pub filtration: u32,
}

impl IndecomposableRow {
    pub fn passed(&self) -> bool {
        self.indecomposable_part == vec![self.target] && self.filtration == self.i + 1
    }
}

/// For `i < n`: the indecomposable part of `Sq^{2^n} Sq^{2^i} w_{2^n}` is
/// `w_{2^{n+1} + 2^i}`, whose index `m` has `alpha(m - 1) = i + 1`.
pub fn finitebo_indecomposable_check(alg: &SymAlgebra, n: u32) -> Result<Vec<IndecomposableRow>> {
    if n == 0 {
        return Err(AlgebraError::InvalidArgument("n must be positive".to_string()));
    }
    let top = 1u32 << n;
    let mut rows = Vec::new();
    for i in 0..n {
        let target = 2 * top + (1 << i);
        alg.check_degree(target)?;
        let image = alg.sq(top, &alg.sq(1 << i, &SymPolynomial::var(top))?)?;
        rows.push(IndecomposableRow {
            n,
            i,
            target,
            indecomposable_part: image.indecomposable_part(),
            filtration: alpha(target as u64 - 1),
        });
    }
    Ok(rows)
}

/// `S` modulo the ideal generated under `A` by `w_{2^k}`, `k != n`.
pub fn dickson_quotient(alg: &SymAlgebra, n: u32) -> Result<QuotientAlgebra> {
    dickson_in(alg, shared_space(alg), n)
}

fn dickson_in(alg: &SymAlgebra, space: Arc<MonomialSpace>, n: u32) -> Result<QuotientAlgebra> {
    let bound = alg.bound().get();
    if n == 0 || (1u64 << (n + 1)) > bound as u64 {
        return Err(AlgebraError::InvalidArgument(format!(
            "dickson quotient needs n >= 1 and 2^(n+1) <= {bound}"
        )));
    }
    let gens = two_power_classes(|k| k != n, bound);
    Ok(QuotientAlgebra::new(
        format!("J_{n}"),
        AIdeal::saturate(alg, space, &gens)?,
    ))
}

/// `Sq^{2^n} Sq^{2^{n-1}} w_{2^n} + w_{2^n} Sq^{2^{n-1}} w_{2^n}`.
pub fn dickson_relation_residual(alg: &SymAlgebra, n: u32) -> Result<SymPolynomial> {
    let x = SymPolynomial::var(1 << n);
    let half = alg.sq(1 << (n - 1), &x)?;
    let mut out = alg.sq(1 << n, &half)?;
    out.add_assign(&alg.mul(&x, &half)?);
    Ok(out)
}

/// Ranks of the image of `F(2^n) -> S -> J_n`, `x -> w_{2^n}`.
pub fn m0_image_dims(alg: &SymAlgebra, q: &QuotientAlgebra, n: u32) -> Result<HilbertSeries> {
    let m = 1u32 << n;
    let space = q.ideal.space();
    let mut dims = Vec::new();
    for d in 0..=q.bound() {
        if d < m {
            dims.push(0);
            continue;
        }
        let basis = space.basis(d);
        let ideal_layer = q.ideal.graded().layer(d);
        let mut image = EchelonBasis::new(basis.len());
        for row in ideal_layer.rows() {
            image.insert(row.clone());
        }
        for word in admissible_basis(d - m, m as i64, false) {
            let poly = alg.sq_word(&word, &SymPolynomial::var(m))?;
            image.insert(basis.to_vector(&poly)?);
        }
        dims.push((image.rank() - ideal_layer.rank()) as u64);
    }
    Ok(HilbertSeries::new(dims))
}

/// Dimension count against the invariant-theory oracle, the relation
/// memberships, the pushout identity and the embedding of `M(n,0)`.
pub fn dickson_report(alg: &SymAlgebra, n: u32) -> Result<QuotientReport> {
    let space = shared_space(alg);
    let q = dickson_in(alg, space.clone(), n)?;
    let bound = q.bound();
    let dims = q.dims();
    let mut checks = Vec::new();

    let oracle = compare_series(&dims, &gl_invariant_dims(n as usize + 1, bound)?);
    checks.push(QuotientCheck::new(
        format!("dims = GL_{}(F2) invariants", n + 1),
        oracle.is_equal(),
        witness(oracle),
    ));
    let dickson = compare_series(&dims, &dickson_series(n + 1, bound));
    checks.push(QuotientCheck::new(
        "dims = Dickson generator series",
        dickson.is_equal(),
        witness(dickson),
    ));

    let residual_degree = (1u32 << (n + 1)) + (1 << (n - 1));
    if residual_degree <= bound {
        let ok = q.is_zero(&dickson_relation_residual(alg, n)?)?;
        checks.push(QuotientCheck::new(
            "Dickson relation residual in ideal",
            ok,
            (!ok).then_some(residual_degree),
        ));
    }
    for i in 0..n.saturating_sub(1) {
        let degree = (1u32 << n) + (1 << i);
        let ok = q.is_zero(&alg.sq(1 << i, &SymPolynomial::var(1 << n))?)?;
        checks.push(QuotientCheck::new(
            format!("Sq^{} w{} in ideal", 1u32 << i, 1u32 << n),
            ok,
            (!ok).then_some(degree),
        ));
    }

    let mut pushout_gens = two_power_classes(|k| k < n, bound);
    pushout_gens.extend(((1u32 << (n + 1))..=bound).map(SymPolynomial::var));
    let pushout = AIdeal::saturate(alg, space, &pushout_gens)?;
    let diff = q
        .ideal
        .graded()
        .first_degree_not_containing(pushout.graded())
        .or_else(|| pushout.graded().first_degree_not_containing(q.ideal.graded()));
    checks.push(QuotientCheck::new("pushout ideal identity", diff.is_none(), diff));

    let m0 = compare_series(&m0_image_dims(alg, &q, n)?, &m0_module_dims(n, bound)?);
    checks.push(QuotientCheck::new("M(n,0) embeds", m0.is_equal(), witness(m0)));

    let cert = q.ideal.closure_certificate(alg)?;
    checks.push(QuotientCheck::new(
        "ideal closure certificate",
        cert.passed(),
        cert.sq_failure.or(cert.mul_failure).map(|(d, _)| d),
    ));

    Ok(QuotientReport {
        quotient: q.name.clone(),
        degree_bound: bound,
        dims: dims.dims().to_vec(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SymPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn bstar_small_cases() {
        let alg = SymAlgebra::with_bound(14).unwrap();
        let partitions: Vec<u32> = (1..=14).collect();
        assert_eq!(bstar(&alg, 0).unwrap().dims(), HilbertSeries::polynomial(&partitions, 14));
        let bso: Vec<u32> = (2..=14).collect();
        assert_eq!(bstar(&alg, 1).unwrap().dims(), HilbertSeries::polynomial(&bso, 14));
        assert_eq!(bstar_generator_degrees(2, 10), vec![4, 6, 7, 8, 10]);
        let q = bstar(&alg, 2).unwrap();
        // w5 = Sq^1 w4 + w1 w4 vanishes in B*(2)
        assert!(q.is_zero(&p("w5")).unwrap());
        assert!(!q.is_zero(&p("w4")).unwrap());
    }

    #[test]
    fn bstar_reports_pass() {
        let alg = SymAlgebra::with_bound(18).unwrap();
        for n in 1..=3 {
            let report = bstar_report(&alg, n).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn bo_finite_examples() {
        let alg = SymAlgebra::with_bound(12).unwrap();
        assert_eq!(bo_finite(&alg, 1).unwrap().dims(), HilbertSeries::new(vec![1; 13]));
        let two = bo_finite(&alg, 2).unwrap().dims();
        assert!((0..=12).all(|d| two.get(d) == (d / 2 + 1) as u64));
        let three = bo_finite(&alg, 3).unwrap();
        assert!(three.is_zero(&p("w4")).unwrap());
        let sq1w3 = alg.sq(1, &p("w3")).unwrap();
        assert_eq!(sq1w3, p("w1*w3"));
        assert!(!three.is_zero(&sq1w3).unwrap());
        assert_eq!(three.representatives(4).len(), 4);
        for q in [1, 2, 3, 7] {
            assert!(bo_finite_report(&alg, q).unwrap().passed());
        }
    }

    #[test]
    fn indecomposable_examples() {
        let alg = SymAlgebra::with_bound(12).unwrap();
        let rows = finitebo_indecomposable_check(&alg, 1).unwrap();
        assert_eq!(rows[0].target, 5);
        assert_eq!(rows[0].filtration, 1);
        assert!(rows[0].passed());
        let rows = finitebo_indecomposable_check(&alg, 2).unwrap();
        assert_eq!((rows[0].target, rows[1].target), (9, 10));
        assert!(rows.iter().all(IndecomposableRow::passed));
    }

    #[test]
    fn dickson_n1() {
        let alg = SymAlgebra::with_bound(12).unwrap();
        let residual = dickson_relation_residual(&alg, 1).unwrap();
        assert_eq!(residual, p("w5 + w1*w4 + w1^2*w3 + w1^3*w2"));
        let q = dickson_quotient(&alg, 1).unwrap();
        assert_eq!(&q.dims().dims()[..10], &[1, 0, 1, 1, 1, 1, 2, 1, 2, 2]);
        assert!(dickson_report(&alg, 1).unwrap().passed());
    }

    #[test]
    fn dickson_n2() {
        let alg = SymAlgebra::with_bound(16).unwrap();
        let report = dickson_report(&alg, 2).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(&report.dims[..8], &[1, 0, 0, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn representatives_are_not_leading_terms() {
        let alg = SymAlgebra::with_bound(10).unwrap();
        let q = bstar(&alg, 1).unwrap();
        // B*(1) = F2[w2, w3, ...]: representatives avoid w1
        for d in 0..=10 {
            for m in q.representatives(d) {
                assert!(!m.indices().contains(&1), "{m}");
            }
        }
    }
}
