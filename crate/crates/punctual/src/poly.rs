//! Polynomial utilities: sparse polynomials in up to three variables for
//! sections and jets, dense univariate polynomials for gcd and root work,
//! Lagrange interpolation, and Sylvester resultants via interpolation.
//!
//! Root finding over the rationals is complete for degrees up to two (via
//! the discriminant) and bounded-height search above that; [`RootSearch`]
//! says explicitly whether the residual factor was resolved.

use crate::linalg::Matrix;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Exp = [u32; 3];

/// Sparse polynomial in at most three variables over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exp, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn var(i: usize) -> Self {
        assert!(i < 3);
        let mut e = [0u32; 3];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn monomial(exp: Exp, c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exp) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exp: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Poly::constant(Rat::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, at: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &at[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute each variable by a polynomial (full composition).
    pub fn subst(&self, reps: &[Poly; 3]) -> Self {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for i in 0..3 {
                if e[i] > 0 {
                    term = term.mul(&reps[i].pow(e[i]));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < 3);
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            out.add_term(e2, c * Rat::from_integer(BigInt::from(e[i])));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Drop every term of total degree strictly above `n`.
    pub fn truncate_above(&self, n: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[0] + e[1] + e[2] <= n)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Coefficients of powers of variable `i`, each a polynomial in the
    /// remaining variables. Index = power.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let d = match self.degree_in(i) {
            Some(d) => d as usize,
            None => return vec![],
        };
        let mut out = vec![Poly::zero(); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let p = e2[i] as usize;
            e2[i] = 0;
            out[p].add_term(e2, c.clone());
        }
        out
    }

    /// Read off a univariate polynomial when only variable `i` occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![];
        for (e, c) in &self.terms {
            for (j, &ej) in e.iter().enumerate() {
                if j != i && ej > 0 {
                    return None;
                }
            }
            let p = e[i] as usize;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, Rat::zero());
            }
            coeffs[p] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("{c}");
                for i in 0..3 {
                    match e[i] {
                        0 => {}
                        1 => s.push_str(&format!("*{}", names[i])),
                        k => s.push_str(&format!("*{}^{}", names[i], k)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Monomial exponents of total degree exactly `degree` in the first `nvars`
/// variables, lexicographically descending in the earlier variables. For two
/// variables this is x^a, x^(a-1)y, …, y^a.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Exp> {
    assert!((1..=3).contains(&nvars));
    let mut out = Vec::new();
    match nvars {
        1 => out.push([degree, 0, 0]),
        2 => {
            for i in (0..=degree).rev() {
                out.push([i, degree - i, 0]);
            }
        }
        _ => {
            for i in (0..=degree).rev() {
                for j in (0..=degree - i).rev() {
                    out.push([i, j, degree - i - j]);
                }
            }
        }
    }
    out
}

/// Monomial exponents of total degree at most `max_degree` in the first
/// `nvars` variables, ordered by (total degree, then lex ascending). This is
/// the coordinate order of jet spaces.
pub fn local_monomials(nvars: usize, max_degree: u32) -> Vec<Exp> {
    assert!((1..=2).contains(&nvars));
    let mut out = Vec::new();
    for d in 0..=max_degree {
        if nvars == 1 {
            out.push([d, 0, 0]);
        } else {
            for i in 0..=d {
                out.push([d - i, i, 0]);
            }
        }
    }
    out
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`, trailing zeros
/// trimmed, empty vector = zero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let delta = &q * c;
                rem[idx] -= delta;
            }
            quot[i - dd] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&(Rat::one() / l.clone())),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Primitive integer coefficient vector (denominators cleared, content
    /// stripped, leading coefficient positive). Zero gives an empty vector.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = num_integer::gcd(content, v.clone());
        }
        if ints.last().map_or(false, |l| l.is_negative()) {
            content = -content;
        }
        for v in &mut ints {
            *v /= &content;
        }
        ints
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.divrem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Largest squarefree divisor: `f / gcd(f, f')`.
pub fn squarefree_part(f: &UniPoly) -> UniPoly {
    if f.degree().unwrap_or(0) == 0 {
        return f.monic();
    }
    let g = uni_gcd(f, &f.derivative());
    let (q, r) = f.divrem(&g);
    debug_assert!(r.is_zero());
    q.monic()
}

/// Interpolating polynomial through distinct sample points.
pub fn lagrange_interpolate(points: &[(Rat, Rat)]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_coeffs(vec![-xj.clone(), Rat::one()]));
            denom *= xi - xj;
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}

fn bigint_is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Outcome of rational root extraction. `complete` is true only when the
/// residual factor provably has no rational roots (constant, or quadratic
/// with non-square discriminant); otherwise roots of height beyond the
/// search bound may remain in `residual`.
#[derive(Debug, Clone)]
pub struct RootSearch {
    pub roots: Vec<(Rat, usize)>,
    pub residual: UniPoly,
    pub complete: bool,
}

impl RootSearch {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Default numerator/denominator bound for root searches on desk-scale data.
pub const DEFAULT_ROOT_HEIGHT: i64 = 64;

fn divide_out_root(f: &UniPoly, root: &Rat) -> (UniPoly, usize) {
    let mut f = f.clone();
    let lin = UniPoly::from_coeffs(vec![-root.clone(), Rat::one()]);
    let mut mult = 0usize;
    loop {
        let (q, r) = f.divrem(&lin);
        if !r.is_zero() {
            break;
        }
        f = q;
        mult += 1;
    }
    (f, mult)
}

/// All rational roots of height (max of |numerator|, denominator of the
/// reduced fraction) up to `height`, with multiplicities; degree ≤ 2 factors
/// are resolved exactly regardless of height.
pub fn rational_roots(f: &UniPoly, height: i64) -> RootSearch {
    assert!(!f.is_zero(), "root search on the zero polynomial");
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let mut rem = f.monic();
    let push = |roots: &mut Vec<(Rat, usize)>, r: Rat, m: usize| {
        if m > 0 {
            roots.push((r, m));
        }
    };

    // x = 0 first
    let zero_mult = rem.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        rem = UniPoly::from_coeffs(rem.coeffs[zero_mult..].to_vec());
        push(&mut roots, Rat::zero(), zero_mult);
    }

    // bounded-height scan, complete for the small roots our inputs produce
    if rem.coeffs.len() > 3 {
        'outer: for q in 1..=height {
            for p in -height..=height {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                // test f(p/q)·q^deg = 0 as one integer
                let bp = BigInt::from(p);
                let bq = BigInt::from(q);
                let ints = rem.primitive_integer_coeffs();
                let d = ints.len() - 1;
                let mut qpow = vec![BigInt::one()];
                for _ in 0..d {
                    let last = qpow.last().unwrap() * &bq;
                    qpow.push(last);
                }
                let mut acc = BigInt::zero();
                for (i, c) in ints.iter().enumerate() {
                    let mut t = c.clone();
                    for _ in 0..i {
                        t *= &bp;
                    }
                    t *= &qpow[d - i];
                    acc += t;
                }
                if acc.is_zero() {
                    let root = Rat::new(bp, bq);
                    let (next, m) = divide_out_root(&rem, &root);
                    rem = next;
                    push(&mut roots, root, m);
                    if rem.degree().unwrap_or(0) <= 2 {
                        break 'outer;
                    }
                }
            }
            if rem.degree().unwrap_or(0) <= 2 {
                break;
            }
        }
    }

    // degrees one and two close exactly
    loop {
        match rem.degree() {
            Some(1) => {
                let root = -rem.coeff(0) / rem.coeff(1);
                let (next, m) = divide_out_root(&rem, &root);
                rem = next;
                push(&mut roots, root, m);
            }
            Some(2) => {
                let ints = rem.primitive_integer_coeffs();
                let (a, b, c) = (ints[2].clone(), ints[1].clone(), ints[0].clone());
                let disc = &b * &b - BigInt::from(4) * &a * &c;
                match bigint_is_square(&disc) {
                    Some(s) => {
                        let two_a = BigInt::from(2) * &a;
                        for num in [-&b + &s, -&b - &s] {
                            let root = Rat::new(num, two_a.clone());
                            let (next, m) = divide_out_root(&rem, &root);
                            rem = next;
                            push(&mut roots, root, m);
                        }
                    }
                    None => break,
                }
            }
            _ => break,
        }
    }

    let complete = match rem.degree() {
        None | Some(0) => true,
        Some(2) => {
            let ints = rem.primitive_integer_coeffs();
            let disc = &ints[1] * &ints[1] - BigInt::from(4) * &ints[2] * &ints[0];
            bigint_is_square(&disc).is_none()
        }
        _ => false,
    };
    RootSearch { roots, residual: rem, complete }
}

/// Gcd of binary forms of common degree `a`, each given by its
/// dehomogenization `f(t) = F(t, 1)`. Returns the monic t-part together
/// with the multiplicity of the second homogeneous variable (the place at
/// infinity), so the gcd has degree `deg(t-part) + infinity_mult`.
pub fn binary_forms_gcd(fs: &[UniPoly], a: usize) -> (UniPoly, usize) {
    assert!(!fs.is_empty());
    let mut g = UniPoly::zero();
    let mut inf_mult = usize::MAX;
    for f in fs {
        if f.is_zero() {
            continue;
        }
        let d = f.degree().unwrap();
        assert!(d <= a, "dehomogenized degree exceeds the form degree");
        g = uni_gcd(&g, f);
        inf_mult = inf_mult.min(a - d);
    }
    (g, if inf_mult == usize::MAX { 0 } else { inf_mult })
}

/// Sylvester resultant of two bivariate polynomials (variables 0 and 1),
/// eliminating `elim`; the result is univariate in the other variable.
/// Computed by evaluation at enough sample values and interpolation, with
/// the matrix size fixed by the generic degrees so specialization is sound.
pub fn resultant_bivariate(f: &Poly, g: &Poly, elim: usize) -> UniPoly {
    assert!(elim < 2, "resultant eliminates variable 0 or 1");
    let keep = 1 - elim;
    assert!(
        f.degree_in(2).unwrap_or(0) == 0 && g.degree_in(2).unwrap_or(0) == 0,
        "resultant inputs must live in variables 0 and 1"
    );
    let fc = f.coefficients_in(elim);
    let gc = g.coefficients_in(elim);
    let m = fc.len().saturating_sub(1);
    let n = gc.len().saturating_sub(1);
    if m == 0 && n == 0 {
        // no elimination variable at all; resultant degenerates to 1
        return UniPoly::constant(Rat::one());
    }
    if m == 0 {
        // Res(c, g) = c^(deg g)
        let c = fc[0].to_univariate(keep).expect("coefficient is univariate");
        let mut out = UniPoly::constant(Rat::one());
        for _ in 0..n {
            out = out.mul(&c);
        }
        return out;
    }
    if n == 0 {
        let c = gc[0].to_univariate(keep).expect("coefficient is univariate");
        let mut out = UniPoly::constant(Rat::one());
        for _ in 0..m {
            out = out.mul(&c);
        }
        return out;
    }
    let deg_bound = m * g.degree_in(keep).unwrap_or(0) as usize
        + n * f.degree_in(keep).unwrap_or(0) as usize;
    let mut samples = Vec::with_capacity(deg_bound + 1);
    for s in 0..=deg_bound as i64 {
        let x = Rat::from_integer(BigInt::from(s));
        let at = |p: &Poly| -> Rat {
            let mut point = [Rat::zero(), Rat::zero(), Rat::zero()];
            point[keep] = x.clone();
            p.eval(&point)
        };
        let frow: Vec<Rat> = fc.iter().map(&at).collect();
        let grow: Vec<Rat> = gc.iter().map(&at).collect();
        let size = m + n;
        let mut syl = Matrix::zeros(size, size);
        for r in 0..n {
            for (j, c) in frow.iter().enumerate() {
                syl[(r, r + m - j)] = c.clone();
            }
        }
        for r in 0..m {
            for (j, c) in grow.iter().enumerate() {
                syl[(n + r, r + n - j)] = c.clone();
            }
        }
        samples.push((x, syl.det()));
    }
    lagrange_interpolate(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn poly_arithmetic_and_substitution() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let f = x.mul(&x).add(&y.scale(&rat(3)));
        assert_eq!(f.eval(&[rat(2), rat(5), rat(0)]), rat(19));
        // shift x -> x + 1
        let shifted = f.subst(&[x.add(&Poly::constant(rat(1))), y.clone(), Poly::var(2)]);
        assert_eq!(shifted.eval(&[rat(1), rat(5), rat(0)]), rat(19));
        assert_eq!(f.derivative(0), x.scale(&rat(2)));
        assert_eq!(f.truncate_above(1), y.scale(&rat(3)));
    }

    #[test]
    fn monomial_bases_have_expected_sizes_and_order() {
        let p1 = monomial_basis(2, 3);
        assert_eq!(p1, vec![[3, 0, 0], [2, 1, 0], [1, 2, 0], [0, 3, 0]]);
        let p2 = monomial_basis(3, 2);
        assert_eq!(p2.len(), 6);
        assert_eq!(p2[0], [2, 0, 0]);
        assert_eq!(p2[5], [0, 0, 2]);
        let jets = local_monomials(2, 2);
        assert_eq!(
            jets,
            vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [2, 0, 0], [1, 1, 0], [0, 2, 0]]
        );
    }

    #[test]
    fn unipoly_division_and_gcd() {
        let f = up(&[-1, 0, 1]); // t^2 - 1
        let g = up(&[1, 1]); // t + 1
        let (q, r) = f.divrem(&g);
        assert_eq!(q, up(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(uni_gcd(&f, &g), g.monic());
        let h = up(&[2, 0, 2]); // 2t^2 + 2, coprime to f
        assert_eq!(uni_gcd(&f, &h).degree(), Some(0));
        // squarefree part of (t-1)^2 (t+2)
        let ff = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[2, 1]));
        assert_eq!(squarefree_part(&ff), up(&[-1, 1]).mul(&up(&[2, 1])).monic());
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let f = up(&[2, -3, 0, 1]);
        let pts: Vec<(Rat, Rat)> =
            (0..4).map(|i| (rat(i), f.eval(&rat(i)))).collect();
        assert_eq!(lagrange_interpolate(&pts), f);
    }

    #[test]
    fn root_extraction_small_heights() {
        // (t - 2)(t + 1/3)(t^2 + 1)
        let f = up(&[-2, 1]).mul(&UniPoly::from_coeffs(vec![ratio(1, 3), rat(1)])).mul(&up(&[1, 0, 1]));
        let rs = rational_roots(&f, DEFAULT_ROOT_HEIGHT);
        assert!(rs.complete);
        let mut roots: Vec<Rat> = rs.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![ratio(-1, 3), rat(2)]);
        assert_eq!(rs.residual, up(&[1, 0, 1]));

        // double root with multiplicity
        let g = up(&[1, 1]).mul(&up(&[1, 1])).mul(&up(&[0, 1]));
        let rs2 = rational_roots(&g, DEFAULT_ROOT_HEIGHT);
        assert!(rs2.complete);
        assert_eq!(rs2.total_multiplicity(), 3);
        assert!(rs2.roots.contains(&(rat(-1), 2)));

        // quadratic beyond any scan height still resolves
        let far = up(&[-10201, 0, 1]); // (t-101)(t+101)
        let rs3 = rational_roots(&far, 4);
        assert!(rs3.complete);
        assert_eq!(rs3.roots.len(), 2);
    }

    #[test]
    fn binary_form_gcd_tracks_infinity() {
        // forms of degree 3: t(t-1) (so one factor of y) and t(t-1)(t-2)
        let f = up(&[0, -1, 1]);
        let g = up(&[0, 2, -3, 1]);
        let (t_part, inf) = binary_forms_gcd(&[f, g], 3);
        assert_eq!(t_part, up(&[0, -1, 1]).monic());
        assert_eq!(inf, 0);

        // both divisible by y: degrees below the form degree
        let (t2, inf2) = binary_forms_gcd(&[up(&[0, 1]), up(&[0, 0, 1])], 3);
        assert_eq!(t2, up(&[0, 1]));
        assert_eq!(inf2, 1);
    }

    #[test]
    fn resultants_find_common_roots() {
        // f = x^2 + y^2 - 5, g = x - y - 1: common zeros (2,1), (-1,-2)
        let x = Poly::var(0);
        let y = Poly::var(1);
        let f = x.mul(&x).add(&y.mul(&y)).sub(&Poly::constant(rat(5)));
        let g = x.sub(&y).sub(&Poly::constant(rat(1)));
        let res = resultant_bivariate(&f, &g, 0); // eliminate x, poly in y
        let rs = rational_roots(&res, DEFAULT_ROOT_HEIGHT);
        let mut roots: Vec<Rat> = rs.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![rat(-2), rat(1)]);

        // degenerate: eliminate a variable absent from one input
        let h = y.sub(&Poly::constant(rat(3)));
        let res2 = resultant_bivariate(&f, &h, 1);
        // Res_y(f, y-3) = f(x, 3) = x^2 + 4
        assert_eq!(res2, up(&[4, 0, 1]));
    }
}
