//! Invariants of `GL_n(F2)` acting on `F2[x_1, ..., x_n]` by linear
//! substitution, computed degree by degree as the common fixed space of a
//! generating set.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{AlgebraError, Result};
use crate::gf2::{BitVector, EchelonBasis};
use crate::series::HilbertSeries;

/// An `n x n` matrix over F2; row `i` holds the image of `x_i` as a bit mask
/// over the variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlMatrix {
    n: usize,
    rows: [u8; 8],
}

impl GlMatrix {
    pub fn from_rows(rows: &[u8]) -> Self {
        assert!(rows.len() <= 8, "at most 8 variables");
        let mut r = [0; 8];
        r[..rows.len()].copy_from_slice(rows);
        GlMatrix { n: rows.len(), rows: r }
    }

    pub fn identity(n: usize) -> Self {
        GlMatrix::from_rows(&(0..n).map(|i| 1u8 << i).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows[..self.n]
    }

    /// The substitution `x_i -> self(x_i)` followed by `other`.
    pub fn then(&self, other: &GlMatrix) -> GlMatrix {
        let rows: Vec<u8> = self
            .rows()
            .iter()
            .map(|&mask| {
                (0..self.n)
                    .filter(|&j| mask >> j & 1 == 1)
                    .fold(0, |acc, j| acc ^ other.rows[j])
            })
            .collect();
        GlMatrix::from_rows(&rows)
    }
}

/// A transposition, the cyclic permutation, and the transvection
/// `x_1 -> x_1 + x_2`. Together they generate `GL_n(F2)`.
pub fn gl_generators(n: usize) -> Vec<GlMatrix> {
    if n < 2 {
        return Vec::new();
    }
    let id = GlMatrix::identity(n);
    let mut swap = id.rows().to_vec();
    swap.swap(0, 1);
    let cycle: Vec<u8> = (0..n).map(|i| 1 << ((i + 1) % n)).collect();
    let mut transvection = id.rows().to_vec();
    transvection[0] |= 1 << 1;
    vec![
        GlMatrix::from_rows(&swap),
        GlMatrix::from_rows(&cycle),
        GlMatrix::from_rows(&transvection),
    ]
}

/// The group generated by `gens`, by breadth-first closure.
pub fn generated_group(n: usize, gens: &[GlMatrix]) -> BTreeSet<GlMatrix> {
    let mut seen = BTreeSet::from([GlMatrix::identity(n)]);
    let mut frontier = vec![GlMatrix::identity(n)];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let next = g.then(h);
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen
}

type Exponents = Vec<u32>;
type Poly = HashSet<Exponents>;

fn monomials(n: usize, degree: u32) -> Vec<Exponents> {
    fn go(n: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == n {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            go(n, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, degree, &mut Vec::new(), &mut out);
    } else if degree == 0 {
        out.push(Vec::new());
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for x in a {
        for y in b {
            let z: Exponents = x.iter().zip(y).map(|(p, q)| p + q).collect();
            if !out.remove(&z) {
                out.insert(z);
            }
        }
    }
    out
}

/// `(sum of x_j over mask)^e`, using `L^{2^b} = sum x_j^{2^b}` over F2.
fn linear_power(n: usize, mask: u8, e: u32) -> Poly {
    let mut out: Poly = HashSet::from([vec![0; n]]);
    for b in (0..32).filter(|b| e >> b & 1 == 1) {
        let frob: Poly = (0..n)
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1 << b;
                v
            })
            .collect();
        out = poly_mul(&out, &frob);
    }
    out
}

fn substitute(g: &GlMatrix, mono: &[u32]) -> Poly {
    let n = mono.len();
    mono.iter()
        .enumerate()
        .fold(HashSet::from([vec![0; n]]), |acc, (i, &e)| {
            poly_mul(&acc, &linear_power(n, g.rows[i], e))
        })
}

/// Dimension of the invariants in each degree `0..=bound`: the kernel of the
/// stacked maps `g - 1` over the generators.
pub fn gl_invariant_dims(vars: usize, bound: u32) -> Result<HilbertSeries> {
    if vars == 0 || vars > 8 {
        return Err(AlgebraError::InvalidArgument(format!(
            "vars must be in 1..=8, got {vars}"
        )));
    }
    let gens = gl_generators(vars);
    let mut dims = Vec::with_capacity(bound as usize + 1);
    for d in 0..=bound {
        let basis = monomials(vars, d);
        let index: HashMap<&Exponents, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let mut image = EchelonBasis::new(n * gens.len());
        for mono in &basis {
            let mut row = BitVector::zeros(n * gens.len());
            for (t, g) in gens.iter().enumerate() {
                let col = |m: &Exponents| t * n + index[m];
                for m in substitute(g, mono) {
                    row.flip(col(&m));
                }
                row.flip(col(mono));
            }
            image.insert(row);
        }
        dims.push((n - image.rank()) as u64);
    }
    Ok(HilbertSeries::new(dims))
}

/// Series of the polynomial algebra on the Dickson invariants of rank `vars`,
/// generated in degrees `2^vars - 2^i`, `0 <= i < vars`.
pub fn dickson_series(vars: u32, bound: u32) -> HilbertSeries {
    let degrees: Vec<u32> = (0..vars).map(|i| (1 << vars) - (1 << i)).collect();
    HilbertSeries::polynomial(&degrees, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_generate() {
        assert_eq!(generated_group(2, &gl_generators(2)).len(), 6);
        assert_eq!(generated_group(3, &gl_generators(3)).len(), 168);
        assert_eq!(generated_group(4, &gl_generators(4)).len(), 20160);
    }

    #[test]
    fn frobenius_expansion() {
        // (x + y)^3 = x^3 + x^2 y + x y^2 + y^3
        let p = linear_power(2, 0b11, 3);
        let expected: Poly = [vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]].into_iter().collect();
        assert_eq!(p, expected);
        assert_eq!(linear_power(2, 0b11, 2).len(), 2);
    }

    #[test]
    fn invariant_series() {
        assert_eq!(gl_invariant_dims(1, 6).unwrap(), HilbertSeries::new(vec![1; 7]));
        assert_eq!(
            gl_invariant_dims(2, 9).unwrap().dims(),
            &[1, 0, 1, 1, 1, 1, 2, 1, 2, 2]
        );
        assert_eq!(gl_invariant_dims(3, 7).unwrap().dims(), &[1, 0, 0, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn invariants_match_the_dickson_degrees() {
        for vars in 1..=3 {
            assert_eq!(gl_invariant_dims(vars, 24).unwrap(), dickson_series(vars as u32, 24));
        }
    }
}
