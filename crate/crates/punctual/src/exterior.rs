//! Multivectors in `∧^k Q^n` and the decomposability machinery built on them.
//!
//! A term basis element is a sorted `k`-subset of coordinate indices, stored
//! as a `u64` bit mask (so `n <= 64`, far above desk scale). The canonical
//! enumeration of `k`-masks is by increasing integer value; [`masks`] produces
//! it and [`MultiVector::to_dense`] flattens against it, which is what ties
//! this module to the subspace machinery of [`crate::linalg`].

use crate::linalg::Subspace;
use crate::rat::Rat;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// All `k`-subsets of `{0..n}` as bit masks, in increasing mask order.
pub fn masks(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64, "ambient dimension above 64 is out of desk scale");
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    if k == n {
        out.push(limit);
        return out;
    }
    // Gosper's hack walks masks of fixed popcount in increasing order.
    let mut m: u64 = (1 << k) - 1;
    while m <= limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = match m.checked_add(c) {
            Some(r) if r <= limit => r,
            _ => break,
        };
        m = r | (((m ^ r) >> 2) / c);
    }
    out
}

pub fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of merging two disjoint sorted index sets `a` then `b` into one
/// sorted set: parity of the number of transpositions needed.
fn merge_sign(a: u64, b: u64) -> i32 {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        inversions += (a >> (i + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiVector {
    n: usize,
    k: usize,
    terms: BTreeMap<u64, Rat>,
}

impl MultiVector {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!(n <= 64 && k <= n, "degree must lie in 0..=n, n <= 64");
        MultiVector { n, k, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        let mut v = MultiVector::zero(n, 0);
        v.add_term(0, c);
        v
    }

    /// Degree-1 multivector from a coordinate vector.
    pub fn from_vector(coords: &[Rat]) -> Self {
        let mut v = MultiVector::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            v.add_term(1 << i, c.clone());
        }
        v
    }

    /// Basis blade `e_{i1} ∧ ... ∧ e_{ik}` for strictly increasing indices.
    pub fn blade(n: usize, indices: &[usize]) -> Self {
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must strictly increase");
        let mut mask = 0u64;
        for &i in indices {
            assert!(i < n);
            mask |= 1 << i;
        }
        let mut v = MultiVector::zero(n, indices.len());
        v.add_term(mask, Rat::one());
        v
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u64) -> Rat {
        self.terms.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, mask: u64, c: Rat) {
        debug_assert_eq!(mask.count_ones() as usize, self.k);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiVector::zero(self.n, self.k);
        }
        let terms = self.terms.iter().map(|(&m, x)| (m, x * c)).collect();
        MultiVector { n: self.n, k: self.k, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.k), (other.n, other.k), "degree or ambient differs");
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Wedge product. Degree overflow past the ambient dimension is an error
    /// rather than a silent zero.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.n, other.n, "ambient dimensions differ");
        let k = self.k + other.k;
        if k > self.n {
            return Err(Error::DegreeOverflow { requested: k, ambient: self.n });
        }
        let mut out = MultiVector::zero(self.n, k);
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let mut c = ca * cb;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(ma | mb, c);
            }
        }
        Ok(out)
    }

    /// Interior product against a covector (coordinates in the dual basis).
    pub fn contract(&self, covector: &[Rat]) -> Result<Self> {
        assert_eq!(covector.len(), self.n, "covector length differs from ambient");
        if self.k == 0 {
            return Err(Error::ContractScalar);
        }
        let mut out = MultiVector::zero(self.n, self.k - 1);
        for (&m, c) in &self.terms {
            let mut rest = m;
            let mut position = 0u32;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let phi = &covector[i];
                if !phi.is_zero() {
                    let mut term = phi * c;
                    if position % 2 == 1 {
                        term = -term;
                    }
                    out.add_term(m & !(1 << i), term);
                }
                position += 1;
            }
        }
        Ok(out)
    }

    /// `{v in Q^n : v ∧ ω = 0}`. Its dimension is at most `deg ω`, with
    /// equality exactly for decomposable `ω`.
    pub fn kernel_of_wedge(&self) -> Subspace {
        use crate::linalg::Matrix;
        if self.k == self.n {
            // wedging lands in the zero space, so every vector is killed
            return Subspace::full(self.n);
        }
        let row_masks = masks(self.n, self.k + 1);
        let index: HashMap<u64, usize> =
            row_masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut mat = Matrix::zeros(row_masks.len(), self.n);
        for j in 0..self.n {
            let bit = 1u64 << j;
            for (&m, c) in &self.terms {
                if m & bit != 0 {
                    continue;
                }
                let sign = merge_sign(bit, m);
                let row = index[&(m | bit)];
                mat[(row, j)] = if sign < 0 { -c.clone() } else { c.clone() };
            }
        }
        mat.kernel()
    }

    /// Whether `ω` is a wedge of `deg ω` vectors. Panics on zero input.
    pub fn is_decomposable(&self) -> bool {
        assert!(!self.is_zero(), "decomposability of zero is undefined");
        self.kernel_of_wedge().dim() == self.k
    }

    /// Smallest subspace `W` with `ω ∈ ∧^k W`: the span of all contractions
    /// of `ω` down to degree 1.
    pub fn support(&self) -> Subspace {
        if self.k == 0 {
            return Subspace::zero(self.n);
        }
        let mut rows: HashMap<u64, Vec<Rat>> = HashMap::new();
        for (&m, c) in &self.terms {
            let mut rest = m;
            let mut position = 0u32;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let sub = m & !(1 << i);
                let row = rows.entry(sub).or_insert_with(|| vec![Rat::zero(); self.n]);
                row[i] = if position % 2 == 1 { -c.clone() } else { c.clone() };
                position += 1;
            }
        }
        Subspace::span(self.n, rows.into_values().collect())
    }

    /// Rank of a 2-vector: the largest `2m` with `ω^∧m != 0`. Zero input has
    /// rank 0.
    pub fn two_vector_rank(&self) -> Result<usize> {
        if self.k != 2 {
            return Err(Error::Degenerate(format!(
                "two_vector_rank needs degree 2, got {}",
                self.k
            )));
        }
        if self.is_zero() {
            return Ok(0);
        }
        let mut power = self.clone();
        let mut m = 1usize;
        while 2 * (m + 1) <= self.n {
            let next = power.wedge(self)?;
            if next.is_zero() {
                break;
            }
            power = next;
            m += 1;
        }
        Ok(2 * m)
    }

    /// Divide by a nonzero decomposable factor whose span annihilates `ω`
    /// under wedge. The quotient is supported on the coordinate complement of
    /// the factor's pivot columns, making the result canonical.
    pub fn divide_by_decomposable(&self, factor: &Self) -> Result<Self> {
        assert_eq!(self.n, factor.n, "ambient dimensions differ");
        if factor.is_zero() {
            return Err(Error::ZeroInput("division by the zero multivector".into()));
        }
        if !factor.is_decomposable() {
            return Err(Error::Degenerate("divisor is not decomposable".into()));
        }
        if factor.k > self.k {
            return Err(Error::DivisibilityFails("divisor degree exceeds dividend degree".into()));
        }
        let span = factor.kernel_of_wedge();
        // span(factor) ⊆ ker(· ∧ ω) is exactly divisibility
        for r in span.basis().rows_iter() {
            let prod = MultiVector::from_vector(r).wedge(self)?;
            if !prod.is_zero() {
                return Err(Error::DivisibilityFails(
                    "a spanning vector of the divisor does not annihilate the dividend".into(),
                ));
            }
        }
        // contract by the dual covectors of the echelon basis; these are the
        // pivot coordinate functionals because pivot columns are cleared
        let mut eta = self.clone();
        for &p in span.pivots() {
            let mut cov = vec![Rat::zero(); self.n];
            cov[p] = Rat::one();
            eta = eta.contract(&cov)?;
        }
        // wedge of the echelon rows is proportional to the factor
        let mut row_wedge = MultiVector::scalar(self.n, Rat::one());
        for r in span.basis().rows_iter() {
            row_wedge = row_wedge.wedge(&MultiVector::from_vector(r))?;
        }
        let (&m0, c0) = factor.terms.iter().next().expect("factor is nonzero");
        let t = row_wedge.coeff(m0) / c0;
        let quotient = eta.scale(&t);
        debug_assert_eq!(factor.wedge(&quotient)?, *self);
        Ok(quotient)
    }

    /// Dense coordinates against the canonical mask enumeration.
    pub fn to_dense(&self) -> Vec<Rat> {
        let ms = masks(self.n, self.k);
        ms.iter().map(|m| self.coeff(*m)).collect()
    }

    pub fn from_dense(n: usize, k: usize, coords: &[Rat]) -> Self {
        let ms = masks(n, k);
        assert_eq!(coords.len(), ms.len(), "coordinate length differs from binomial(n, k)");
        let mut v = MultiVector::zero(n, k);
        for (m, c) in ms.into_iter().zip(coords) {
            v.add_term(m, c.clone());
        }
        v
    }

    /// Scale-canonical form: divide by the leading (smallest-mask) nonzero
    /// coefficient. For comparing projective classes.
    pub fn projective_normal_form(&self) -> Option<Self> {
        let (_, c) = self.terms.iter().next()?;
        let inv = Rat::one() / c.clone();
        Some(self.scale(&inv))
    }
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (deg {} in Q^{})", self.k, self.n);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, c)| {
                let idx: Vec<String> = mask_indices(m).iter().map(|i| format!("e{i}")).collect();
                if idx.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}·{}", idx.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Orbit of a `k`-vector under the general linear group, as far as the secant
/// geometry cares: a Grassmannian point, a point of the tangent/secant locus
/// with a rank-4 quadratic residue, or anything bigger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    /// Decomposable; payload is the support dimension (equals the degree).
    OnGrassmannian(usize),
    /// `κ ∧ τ` with `κ` decomposable of degree `k - 2` and `τ` of 2-vector
    /// rank 4; payload is the support dimension (equals `k + 2`).
    Sigma2Theta2(usize),
    /// Everything else; payload is the support dimension.
    HigherRank(usize),
}

/// Classify a nonzero `k`-vector. Panics on zero input.
pub fn classify_orbit(omega: &MultiVector) -> Result<OrbitClass> {
    assert!(!omega.is_zero(), "cannot classify the zero multivector");
    let k = omega.degree();
    let kernel = omega.kernel_of_wedge();
    let support_dim = omega.support().dim();
    if kernel.dim() == k {
        return Ok(OrbitClass::OnGrassmannian(support_dim));
    }
    if k >= 2 && kernel.dim() == k - 2 {
        let mut factor = MultiVector::scalar(omega.ambient(), Rat::one());
        for r in kernel.basis().rows_iter() {
            factor = factor.wedge(&MultiVector::from_vector(r))?;
        }
        let residue = omega.divide_by_decomposable(&factor)?;
        if residue.two_vector_rank()? == 4 {
            return Ok(OrbitClass::Sigma2Theta2(support_dim));
        }
    }
    Ok(OrbitClass::HigherRank(support_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn e(n: usize, idx: &[usize]) -> MultiVector {
        MultiVector::blade(n, idx)
    }

    #[test]
    fn mask_enumeration_is_increasing_and_complete() {
        let ms = masks(4, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ms[0], 0b0011);
        assert_eq!(ms[5], 0b1100);
        assert_eq!(masks(64, 1).len(), 64);
    }

    #[test]
    fn wedge_anticommutes_on_vectors() {
        let a = e(4, &[0]);
        let b = e(4, &[1]);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, e(4, &[0, 1]));
        assert_eq!(ba, ab.scale(&-rat(1)));
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn wedge_degree_overflow_is_an_error() {
        let top = e(2, &[0, 1]);
        let err = top.wedge(&e(2, &[0])).unwrap_err();
        assert_eq!(err, Error::DegreeOverflow { requested: 3, ambient: 2 });
    }

    #[test]
    fn contraction_picks_off_factors() {
        let w = e(3, &[0, 1]);
        let mut cov = vec![rat(0); 3];
        cov[0] = rat(1);
        assert_eq!(w.contract(&cov).unwrap(), e(3, &[1]));
        cov[0] = rat(0);
        cov[1] = rat(1);
        assert_eq!(w.contract(&cov).unwrap(), e(3, &[0]).scale(&-rat(1)));
        let scalar = MultiVector::scalar(3, rat(5));
        assert_eq!(scalar.contract(&cov).unwrap_err(), Error::ContractScalar);
    }

    #[test]
    fn kernel_of_wedge_detects_decomposability() {
        let dec = e(4, &[0, 1]);
        assert_eq!(dec.kernel_of_wedge().dim(), 2);
        assert!(dec.is_decomposable());

        let sum = e(4, &[0, 1]).add(&e(4, &[2, 3]));
        assert_eq!(sum.kernel_of_wedge().dim(), 0);
        assert!(!sum.is_decomposable());

        // e0∧e1 + e0∧e2 = e0∧(e1+e2) is decomposable in disguise
        let disguised = e(4, &[0, 1]).add(&e(4, &[0, 2]));
        assert!(disguised.is_decomposable());
    }

    #[test]
    fn support_of_rank_four_two_vector() {
        let sum = e(5, &[0, 1]).add(&e(5, &[2, 3]));
        let s = sum.support();
        assert_eq!(s.dim(), 4);
        for i in 0..4 {
            assert!(s.contains_vector(&crate::linalg::unit_vector(5, i)));
        }
    }

    #[test]
    fn two_vector_ranks() {
        let n = 6;
        let r2 = e(n, &[0, 1]);
        let r4 = e(n, &[0, 1]).add(&e(n, &[2, 3]));
        let r6 = r4.add(&e(n, &[4, 5]));
        assert_eq!(r2.two_vector_rank().unwrap(), 2);
        assert_eq!(r4.two_vector_rank().unwrap(), 4);
        assert_eq!(r6.two_vector_rank().unwrap(), 6);
        assert_eq!(MultiVector::zero(n, 2).two_vector_rank().unwrap(), 0);
        assert!(e(n, &[0, 1, 2]).two_vector_rank().is_err());
    }

    #[test]
    fn divide_by_decomposable_round_trips() {
        let n = 5;
        let omega = e(n, &[0, 1, 2]);
        let q = omega.divide_by_decomposable(&e(n, &[0, 1])).unwrap();
        assert_eq!(q, e(n, &[2]));

        let skew = e(n, &[0, 1]).add(&e(n, &[0, 2]));
        let q2 = skew.divide_by_decomposable(&e(n, &[0])).unwrap();
        assert_eq!(q2, e(n, &[1]).add(&e(n, &[2])));

        let err = e(n, &[0, 1]).divide_by_decomposable(&e(n, &[2])).unwrap_err();
        assert!(matches!(err, Error::DivisibilityFails(_)));
    }

    #[test]
    fn divide_respects_scaling() {
        let n = 4;
        let omega = e(n, &[0, 1, 2]).scale(&rat(6));
        let factor = e(n, &[0, 1]).scale(&rat(2));
        let q = omega.divide_by_decomposable(&factor).unwrap();
        assert_eq!(q, e(n, &[2]).scale(&rat(3)));
        assert_eq!(factor.wedge(&q).unwrap(), omega);
    }

    #[test]
    fn orbit_classification() {
        let n = 6;
        assert_eq!(
            classify_orbit(&e(n, &[0, 1, 2])).unwrap(),
            OrbitClass::OnGrassmannian(3)
        );
        let sigma = e(n, &[0])
            .wedge(&e(n, &[1, 2]).add(&e(n, &[3, 4])))
            .unwrap();
        assert_eq!(classify_orbit(&sigma).unwrap(), OrbitClass::Sigma2Theta2(5));
        let big = e(n, &[0, 1, 2]).add(&e(n, &[3, 4, 5]));
        assert_eq!(classify_orbit(&big).unwrap(), OrbitClass::HigherRank(6));
        // degree 2 with rank 4 is the simplest tangent-locus class
        let r4 = e(n, &[0, 1]).add(&e(n, &[2, 3]));
        assert_eq!(classify_orbit(&r4).unwrap(), OrbitClass::Sigma2Theta2(4));
        let r6 = r4.add(&e(n, &[4, 5]));
        assert_eq!(classify_orbit(&r6).unwrap(), OrbitClass::HigherRank(6));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_vector(n: usize) -> impl Strategy<Value = MultiVector> {
            proptest::collection::vec(-4i64..=4, n)
                .prop_map(|xs| {
                    let coords: Vec<Rat> = xs.into_iter().map(rat).collect();
                    MultiVector::from_vector(&coords)
                })
        }

        proptest! {
            #[test]
            fn wedge_of_vectors_is_decomposable(
                a in arb_vector(5), b in arb_vector(5), c in arb_vector(5)
            ) {
                let w = a.wedge(&b).and_then(|ab| ab.wedge(&c)).unwrap();
                if !w.is_zero() {
                    prop_assert!(w.is_decomposable());
                    prop_assert_eq!(w.support().dim(), 3);
                }
            }

            #[test]
            fn wedge_is_associative_and_graded_commutative(
                a in arb_vector(5), b in arb_vector(5), c in arb_vector(5)
            ) {
                let ab = a.wedge(&b).unwrap();
                let bc = b.wedge(&c).unwrap();
                prop_assert_eq!(ab.wedge(&c).unwrap(), a.wedge(&bc).unwrap());
                // vectors anticommute; a 2-vector commutes with a vector
                prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&-rat(1)));
                prop_assert_eq!(ab.wedge(&c).unwrap(), c.wedge(&ab).unwrap());
            }

            #[test]
            fn contraction_satisfies_leibniz(
                a in arb_vector(5), b in arb_vector(5),
                phi in proptest::collection::vec(-4i64..=4, 5)
            ) {
                let cov: Vec<Rat> = phi.into_iter().map(rat).collect();
                let ab = a.wedge(&b).unwrap();
                let lhs = ab.contract(&cov).unwrap();
                // ι(a∧b) = ι(a)·b − a·ι(b) for vectors a, b
                let ia = a.contract(&cov).unwrap().coeff(0);
                let ib = b.contract(&cov).unwrap().coeff(0);
                let rhs = b.scale(&ia).sub(&a.scale(&ib));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn kernel_dimension_never_exceeds_degree(
                a in arb_vector(6), b in arb_vector(6), c in arb_vector(6), d in arb_vector(6)
            ) {
                let w = a.wedge(&b).unwrap().add(&c.wedge(&d).unwrap());
                if !w.is_zero() {
                    let k = w.kernel_of_wedge();
                    prop_assert!(k.dim() <= 2 || (k.dim() == 2) == w.is_decomposable());
                    prop_assert!(k.dim() <= w.degree());
                }
            }
        }
    }
}
