//! Ideals of `S` closed under the Steenrod action, stored degreewise in
//! monomial coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::gf2::{BitVector, EchelonBasis, GradedSubspace};
use crate::series::HilbertSeries;
use crate::symalg::{MonomialBasis, SymAlgebra, SymPolynomial, WMonomial};

/// Monomial bases of `S` in degrees `0..=bound`, with the index maps for
/// multiplication by each `w_k`.
#[derive(Debug)]
pub struct MonomialSpace {
    bases: Vec<MonomialBasis>,
    /// `mul[d][k - 1][i]`: index in degree `d` of `w_k` times monomial `i` of degree `d - k`.
    mul: Vec<Vec<Vec<usize>>>,
}

impl MonomialSpace {
    pub fn new(bound: u32) -> Self {
        let bases: Vec<MonomialBasis> = (0..=bound).map(MonomialBasis::new).collect();
        let mul = (0..=bound as usize)
            .map(|d| {
                (1..=d)
                    .map(|k| {
                        bases[d - k]
                            .monomials()
                            .iter()
                            .map(|m| {
                                bases[d]
                                    .index_of(&m.mul(&WMonomial::var(k as u32)))
                                    .expect("degrees add")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MonomialSpace { bases, mul }
    }

    pub fn bound(&self) -> u32 {
        self.bases.len() as u32 - 1
    }

    pub fn basis(&self, degree: u32) -> &MonomialBasis {
        &self.bases[degree as usize]
    }

    pub fn dims(&self) -> HilbertSeries {
        HilbertSeries::new(self.bases.iter().map(|b| b.len() as u64).collect())
    }

    /// `w_k v` for `v` in degree `d - k`.
    pub fn mul_var(&self, d: u32, k: u32, v: &BitVector) -> BitVector {
        let map = &self.mul[d as usize][k as usize - 1];
        let mut out = BitVector::zeros(self.bases[d as usize].len());
        for i in v.ones() {
            out.flip(map[i]);
        }
        out
    }

    fn zero_subspace(&self) -> GradedSubspace {
        GradedSubspace::zero(self.bases.iter().map(MonomialBasis::len))
    }
}

/// A graded subspace of `S` claimed to be an ideal, possibly `A`-closed.
#[derive(Debug, Clone)]
pub struct AIdeal {
    gens: Vec<SymPolynomial>,
    space: Arc<MonomialSpace>,
    graded: GradedSubspace,
}

/// The first place where a closure property fails, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClosureCertificate {
    /// `(degree, j)` with `Sq^j` of layer `degree - j` not in layer `degree`.
    pub sq_failure: Option<(u32, u32)>,
    /// `(degree, k)` with `w_k` times layer `degree - k` not in layer `degree`.
    pub mul_failure: Option<(u32, u32)>,
}

impl ClosureCertificate {
    pub fn passed(&self) -> bool {
        self.sq_failure.is_none() && self.mul_failure.is_none()
    }
}

fn generators_by_degree(gens: &[SymPolynomial], bound: u32) -> Result<HashMap<u32, Vec<&SymPolynomial>>> {
    let mut out: HashMap<u32, Vec<&SymPolynomial>> = HashMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let d = g.degree().ok_or(AlgebraError::Inhomogeneous)?;
        if d > bound {
            return Err(AlgebraError::DegreeOverflow { degree: d, bound });
        }
        out.entry(d).or_default().push(g);
    }
    Ok(out)
}

impl AIdeal {
    /// The ordinary ideal generated by `gens`, with no Steenrod closure.
    pub fn algebra_ideal(space: Arc<MonomialSpace>, gens: &[SymPolynomial]) -> Result<Self> {
        let by_degree = generators_by_degree(gens, space.bound())?;
        let mut seeds = space.zero_subspace();
        for (d, polys) in &by_degree {
            for g in polys {
                seeds.layer_mut(*d).insert(space.basis(*d).to_vector(g)?);
            }
        }
        Ok(Self::multiplicative_closure(space, gens.to_vec(), &seeds))
    }

    /// The ideal closed under the Steenrod action generated by `gens`.
    ///
    /// The `A`-submodule spanned by the generators is saturated first. The
    /// ideal it generates is then `A`-closed by the Cartan formula.
    pub fn saturate(alg: &SymAlgebra, space: Arc<MonomialSpace>, gens: &[SymPolynomial]) -> Result<Self> {
        let bound = space.bound();
        if bound > alg.bound().get() {
            return Err(AlgebraError::DegreeOverflow {
                degree: bound,
                bound: alg.bound().get(),
            });
        }
        let by_degree = generators_by_degree(gens, bound)?;
        let mut span = space.zero_subspace();
        for d in 0..=bound {
            let basis = space.basis(d);
            let mut layer = EchelonBasis::new(basis.len());
            for g in by_degree.get(&d).into_iter().flatten() {
                layer.insert(basis.to_vector(g)?);
            }
            for j in 1..=d {
                for row in span.layer(d - j).rows() {
                    let image = alg.sq(j, &space.basis(d - j).to_polynomial(row))?;
                    layer.insert(basis.to_vector(&image)?);
                }
            }
            *span.layer_mut(d) = layer;
        }
        Ok(Self::multiplicative_closure(space, gens.to_vec(), &span))
    }

    /// The subspace spanned by monomials satisfying `pred`.
    pub fn monomial_span(
        space: Arc<MonomialSpace>,
        gens: Vec<SymPolynomial>,
        pred: impl Fn(&WMonomial) -> bool,
    ) -> Self {
        let mut graded = space.zero_subspace();
        for d in 0..=space.bound() {
            let basis = space.basis(d);
            for (i, m) in basis.monomials().iter().enumerate() {
                if pred(m) {
                    graded.layer_mut(d).insert(BitVector::unit(basis.len(), i));
                }
            }
        }
        AIdeal { gens, space, graded }
    }

    fn multiplicative_closure(space: Arc<MonomialSpace>, gens: Vec<SymPolynomial>, seeds: &GradedSubspace) -> Self {
        let mut graded = space.zero_subspace();
        for d in 0..=space.bound() {
            let mut layer = seeds.layer(d).clone();
            for k in 1..=d {
                if layer.is_full() {
                    break;
                }
                for row in graded.layer(d - k).rows() {
                    layer.insert(space.mul_var(d, k, row));
                }
            }
            *graded.layer_mut(d) = layer.reduced();
        }
        AIdeal { gens, space, graded }
    }

    pub fn gens(&self) -> &[SymPolynomial] {
        &self.gens
    }

    pub fn space(&self) -> &Arc<MonomialSpace> {
        &self.space
    }

    pub fn graded(&self) -> &GradedSubspace {
        &self.graded
    }

    pub fn bound(&self) -> u32 {
        self.space.bound()
    }

    pub fn rank(&self, degree: u32) -> usize {
        self.graded.rank(degree)
    }

    /// Whether a polynomial lies in the ideal, degree by degree.
    pub fn contains(&self, p: &SymPolynomial) -> Result<bool> {
        let mut parts: HashMap<u32, SymPolynomial> = HashMap::new();
        for m in p.monomials() {
            parts
                .entry(m.degree())
                .or_insert_with(SymPolynomial::zero)
                .toggle(m.clone());
        }
        for (d, part) in parts {
            if d > self.bound() {
                return Err(AlgebraError::DegreeOverflow {
                    degree: d,
                    bound: self.bound(),
                });
            }
            if !self.graded.contains(d, &self.space.basis(d).to_vector(&part)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same span, equal in every degree.
    pub fn same_span(&self, other: &AIdeal) -> bool {
        self.graded.same_span(&other.graded)
    }

    /// Re-checks closure under every `w_k` and every `Sq^j` on the stored
    /// layers. The layers are fully reduced, so each row has at most
    /// `1 + dim` of the quotient nonzero entries.
    pub fn closure_certificate(&self, alg: &SymAlgebra) -> Result<ClosureCertificate> {
        let mut cert = ClosureCertificate::default();
        let bound = self.bound();
        let mut images: HashMap<(u32, u32, usize), BitVector> = HashMap::new();
        'degrees: for d in 1..=bound {
            let target = self.graded.layer(d);
            for k in 1..=d {
                let ok = self
                    .graded
                    .layer(d - k)
                    .rows()
                    .iter()
                    .all(|row| target.contains(&self.space.mul_var(d, k, row)));
                if !ok {
                    cert.mul_failure = Some((d, k));
                    break 'degrees;
                }
            }
        }
        'sq: for d in 1..=bound {
            let target = self.graded.layer(d);
            let basis = self.space.basis(d);
            for j in 1..=d {
                let source = self.space.basis(d - j);
                for row in self.graded.layer(d - j).rows() {
                    let mut image = BitVector::zeros(basis.len());
                    for i in row.ones() {
                        let v = match images.get(&(d - j, j, i)) {
                            Some(v) => v,
                            None => {
                                let poly = alg.sq_monomial(j, &source.monomials()[i])?;
                                images
                                    .entry((d - j, j, i))
                                    .or_insert(basis.to_vector(&poly)?)
                            }
                        };
                        image ^= v;
                    }
                    if !target.contains(&image) {
                        cert.sq_failure = Some((d, j));
                        break 'sq;
                    }
                }
            }
        }
        Ok(cert)
    }
}
