//! Zero-dimensional subschemes of P¹ and P² at rational points, stored as
//! ideals in truncated jet spaces, plus the section spaces H⁰(O(a) ⊗ I_Z)
//! cut out by their vanishing conditions.
//!
//! A [`LocalIdeal`] keeps a subspace of the jet space J^N = O_p / m^(N+1)
//! together with the guarantee m^(N+1) ⊆ I. Under that guarantee the jet
//! image determines the ideal exactly, the order can be raised losslessly
//! (lift the basis, append all higher monomials), and sums, intersections
//! and squares of ideals are computed without leaving jet coordinates.

use crate::linalg::{Matrix, Subspace};
use crate::poly::{local_monomials, monomial_basis, Exp, Poly};
use crate::rat::{parse_rat, rat, Rat};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variety {
    P1,
    P2,
}

impl Variety {
    /// Number of homogeneous coordinates.
    pub fn nvars(&self) -> usize {
        match self {
            Variety::P1 => 2,
            Variety::P2 => 3,
        }
    }

    /// Dimension of an affine chart.
    pub fn local_dim(&self) -> usize {
        match self {
            Variety::P1 => 1,
            Variety::P2 => 2,
        }
    }

    pub fn h0(&self, degree: u32) -> usize {
        match self {
            Variety::P1 => degree as usize + 1,
            Variety::P2 => ((degree + 1) * (degree + 2) / 2) as usize,
        }
    }

    pub fn jet_dim(&self, order: u32) -> usize {
        local_monomials(self.local_dim(), order).len()
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::P1 => write!(f, "p1"),
            Variety::P2 => write!(f, "p2"),
        }
    }
}

/// A complete linear series O(a) with its monomial coordinate order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSeries {
    variety: Variety,
    degree: u32,
    basis: Vec<Exp>,
}

impl LinearSeries {
    pub fn new(variety: Variety, degree: u32) -> Self {
        assert!(degree >= 1, "the series needs positive degree");
        LinearSeries { variety, degree, basis: monomial_basis(variety.nvars(), degree) }
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn h0(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exp] {
        &self.basis
    }

    pub fn section_from_dense(&self, coords: &[Rat]) -> Poly {
        assert_eq!(coords.len(), self.h0(), "coordinate length differs from h0");
        let mut p = Poly::zero();
        for (e, c) in self.basis.iter().zip(coords) {
            p = p.add(&Poly::monomial(*e, c.clone()));
        }
        p
    }

    pub fn section_to_dense(&self, p: &Poly) -> Option<Vec<Rat>> {
        let mut coords = vec![Rat::zero(); self.h0()];
        for (e, c) in p.terms() {
            let pos = self.basis.iter().position(|b| b == e)?;
            coords[pos] = c.clone();
        }
        Some(coords)
    }

    /// Row of evaluations of the basis monomials at a point; the evaluation
    /// functional in dual coordinates (defined up to the chart scaling).
    pub fn eval_functional(&self, p: &Point) -> Vec<Rat> {
        assert_eq!(p.variety(), self.variety);
        let at = p.eval_slots();
        self.basis
            .iter()
            .map(|e| Poly::monomial(*e, Rat::one()).eval(&at))
            .collect()
    }
}

/// A rational point in canonical form: every coordinate divided by the one
/// of largest absolute value (smallest index on ties), so that coordinate is
/// 1 and serves as the affine chart.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    variety: Variety,
    coords: Vec<Rat>,
    chart: usize,
}

impl Point {
    pub fn new(variety: Variety, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != variety.nvars() {
            return Err(Error::InvalidScheme(format!(
                "a point of {variety} needs {} homogeneous coordinates",
                variety.nvars()
            )));
        }
        let mut chart = None;
        for (i, c) in coords.iter().enumerate() {
            let better = match chart {
                None => !c.is_zero(),
                Some(j) => c.abs() > coords[j as usize].abs(),
            };
            if better {
                chart = Some(i);
            }
        }
        let chart =
            chart.ok_or_else(|| Error::InvalidScheme("all point coordinates vanish".into()))?;
        let inv = Rat::one() / coords[chart].clone();
        let coords = coords.iter().map(|c| c * &inv).collect();
        Ok(Point { variety, coords, chart })
    }

    /// Affine point `(t)` read as `[t : 1]`.
    pub fn p1_affine(t: Rat) -> Self {
        Point::new(Variety::P1, vec![t, Rat::one()]).expect("second coordinate is one")
    }

    /// Affine point `(u, v)` read as `[u : v : 1]`.
    pub fn p2_affine(u: Rat, v: Rat) -> Self {
        Point::new(Variety::P2, vec![u, v, Rat::one()]).expect("third coordinate is one")
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    /// Indices of the homogeneous coordinates serving as local coordinates,
    /// in increasing order.
    pub fn local_axes(&self) -> Vec<usize> {
        (0..self.variety.nvars()).filter(|&i| i != self.chart).collect()
    }

    fn eval_slots(&self) -> [Rat; 3] {
        let mut at = [Rat::zero(), Rat::zero(), Rat::zero()];
        for (i, c) in self.coords.iter().enumerate() {
            at[i] = c.clone();
        }
        at
    }

    /// Substitutions sending a section to its local expansion: the chart
    /// variable becomes 1, the others become their value plus a local
    /// variable (slots 0, 1 in increasing axis order).
    pub fn local_substitution(&self) -> [Poly; 3] {
        let mut reps =
            [Poly::constant(Rat::zero()), Poly::constant(Rat::zero()), Poly::constant(Rat::zero())];
        let mut slot = 0usize;
        for i in 0..self.variety.nvars() {
            if i == self.chart {
                reps[i] = Poly::constant(Rat::one());
            } else {
                reps[i] = Poly::var(slot).add(&Poly::constant(self.coords[i].clone()));
                slot += 1;
            }
        }
        reps
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Jet of a local polynomial: coordinates against `local_monomials` up to
/// the order. Fails when the polynomial uses variable slots beyond the
/// chart dimension.
pub fn jet_of_local_poly(variety: Variety, g: &Poly, order: u32) -> Result<Vec<Rat>> {
    let ld = variety.local_dim();
    for (e, _) in g.terms() {
        if (ld..3).any(|i| e[i] > 0) {
            return Err(Error::Parse(format!(
                "local polynomial on {variety} may use only {} variable(s)",
                ld
            )));
        }
    }
    let mons = local_monomials(ld, order);
    Ok(mons.iter().map(|e| g.coeff(e)).collect())
}

pub fn local_poly_from_jet(variety: Variety, coords: &[Rat], order: u32) -> Poly {
    let mons = local_monomials(variety.local_dim(), order);
    assert_eq!(coords.len(), mons.len(), "jet length differs from the jet dimension");
    let mut p = Poly::zero();
    for (e, c) in mons.iter().zip(coords) {
        p = p.add(&Poly::monomial(*e, c.clone()));
    }
    p
}

/// Matrix of the jet map H⁰(O(a)) → J^order at `p`: column j is the jet of
/// the j-th basis monomial.
pub fn jet_matrix(series: &LinearSeries, p: &Point, order: u32) -> Matrix {
    let v = series.variety();
    let reps = p.local_substitution();
    let rows = v.jet_dim(order);
    let mut m = Matrix::zeros(rows, series.h0());
    for (j, e) in series.basis().iter().enumerate() {
        let local = Poly::monomial(*e, Rat::one()).subst(&reps).truncate_above(order);
        let jet = jet_of_local_poly(v, &local, order).expect("substitution stays in local vars");
        for (i, c) in jet.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    m
}

/// An m-primary ideal at a rational point, as a subspace of the jet space
/// J^order, with m^(order+1) ⊆ I so the truncation is faithful.
#[derive(Debug, Clone)]
pub struct LocalIdeal {
    center: Point,
    order: u32,
    space: Subspace,
}

/// Cap on the stabilization search in `from_local_generators`; ideals of
/// colength beyond this are outside desk scale.
const MAX_IDEAL_ORDER: u32 = 48;

impl LocalIdeal {
    /// The maximal ideal: colength 1.
    pub fn maximal(center: Point) -> Self {
        let v = center.variety();
        let order = 1;
        let mons = local_monomials(v.local_dim(), order);
        let dim = mons.len();
        let rows = (1..dim).map(|i| crate::linalg::unit_vector(dim, i)).collect();
        LocalIdeal { center, order, space: Subspace::span(dim, rows) }
    }

    /// Ideal generated by local polynomials, optionally together with a
    /// power m^k. The jet order is raised until the colength stabilizes,
    /// which certifies that the ideal is m-primary and the truncation exact;
    /// non-zero-dimensional input is rejected.
    pub fn from_local_generators(
        center: Point,
        gens: &[Poly],
        extra_power: Option<u32>,
    ) -> Result<Self> {
        let v = center.variety();
        for g in gens {
            if !g.eval(&[Rat::zero(), Rat::zero(), Rat::zero()]).is_zero() {
                return Err(Error::InvalidScheme(
                    "a generator has a nonzero constant term, so the ideal is the unit ideal"
                        .into(),
                ));
            }
        }
        if gens.is_empty() && extra_power.is_none() {
            return Err(Error::InvalidScheme("no generators and no power of m".into()));
        }
        if extra_power == Some(0) {
            return Err(Error::InvalidScheme("m^0 is the unit ideal".into()));
        }
        let start = gens
            .iter()
            .filter_map(|g| g.total_degree())
            .chain(extra_power.map(|k| k.saturating_sub(1)))
            .max()
            .unwrap_or(1)
            .max(1);
        let mut order = start;
        let mut prev = LocalIdeal::generated_at_order(v, &center, gens, extra_power, order);
        loop {
            let next = LocalIdeal::generated_at_order(v, &center, gens, extra_power, order + 1);
            if prev.colength() == next.colength() {
                return Ok(prev);
            }
            order += 1;
            prev = next;
            if order > MAX_IDEAL_ORDER {
                return Err(Error::InvalidScheme(format!(
                    "ideal colength does not stabilize below order {MAX_IDEAL_ORDER}; \
                     the generators do not cut out a zero-dimensional scheme"
                )));
            }
        }
    }

    fn generated_at_order(
        v: Variety,
        center: &Point,
        gens: &[Poly],
        extra_power: Option<u32>,
        order: u32,
    ) -> LocalIdeal {
        let mons = local_monomials(v.local_dim(), order);
        let dim = mons.len();
        let mut rows = Vec::new();
        for g in gens {
            for e in &mons {
                let prod = g.mul(&Poly::monomial(*e, Rat::one())).truncate_above(order);
                if !prod.is_zero() {
                    rows.push(
                        jet_of_local_poly(v, &prod, order).expect("generators are local polys"),
                    );
                }
            }
        }
        if let Some(k) = extra_power {
            for (i, e) in mons.iter().enumerate() {
                if e[0] + e[1] >= k {
                    rows.push(crate::linalg::unit_vector(dim, i));
                }
            }
        }
        LocalIdeal { center: center.clone(), order, space: Subspace::span(dim, rows) }
    }

    /// Curvilinear component of the given length: the m-th order
    /// neighborhood of the point along a smooth germ with the prescribed
    /// tangent. On P² the germ is the line in direction `(du, dv)`; P¹ has
    /// no direction to choose.
    pub fn curvilinear(center: Point, direction: &[Rat], length: u32) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidScheme("a component needs positive length".into()));
        }
        let v = center.variety();
        match v {
            Variety::P1 => LocalIdeal::from_local_generators(center, &[], Some(length)),
            Variety::P2 => {
                if direction.len() != 2 || direction.iter().all(|c| c.is_zero()) {
                    return Err(Error::InvalidScheme(
                        "a curvilinear component on p2 needs a nonzero tangent direction".into(),
                    ));
                }
                // the linear form vanishing on the direction
                let ell = Poly::var(0)
                    .scale(&direction[1])
                    .sub(&Poly::var(1).scale(&direction[0]));
                LocalIdeal::from_local_generators(center, &[ell], Some(length))
            }
        }
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn variety(&self) -> Variety {
        self.center.variety()
    }

    pub fn colength(&self) -> usize {
        self.variety().jet_dim(self.order) - self.space.dim()
    }

    /// Lossless order raise: lift the basis and append every monomial of
    /// higher degree (they all lie in the ideal because m^(order+1) does).
    pub fn at_order(&self, order: u32) -> LocalIdeal {
        if order <= self.order {
            return self.clone();
        }
        let v = self.variety();
        let dim = v.jet_dim(order);
        let old_dim = v.jet_dim(self.order);
        let mut rows = Vec::new();
        for r in self.space.basis().rows_iter() {
            let mut row = vec![Rat::zero(); dim];
            row[..old_dim].clone_from_slice(r);
            rows.push(row);
        }
        for i in old_dim..dim {
            rows.push(crate::linalg::unit_vector(dim, i));
        }
        LocalIdeal { center: self.center.clone(), order, space: Subspace::span(dim, rows) }
    }

    fn harmonize(&self, other: &LocalIdeal) -> (LocalIdeal, LocalIdeal) {
        let order = self.order.max(other.order);
        (self.at_order(order), other.at_order(order))
    }

    pub fn sum(&self, other: &LocalIdeal) -> LocalIdeal {
        assert_eq!(self.center, other.center, "ideal sum needs a common center");
        let (a, b) = self.harmonize(other);
        LocalIdeal { center: a.center.clone(), order: a.order, space: a.space.sum(&b.space) }
    }

    pub fn intersect(&self, other: &LocalIdeal) -> LocalIdeal {
        assert_eq!(self.center, other.center, "ideal intersection needs a common center");
        let (a, b) = self.harmonize(other);
        LocalIdeal { center: a.center.clone(), order: a.order, space: a.space.intersect(&b.space) }
    }

    /// The product ideal I·I at order 2·order+1, where the span of pairwise
    /// basis products is exactly the image of I².
    pub fn square(&self) -> LocalIdeal {
        let v = self.variety();
        let order = 2 * self.order + 1;
        let lifted = self.at_order(order);
        let basis: Vec<Poly> = lifted
            .space
            .basis()
            .rows_iter()
            .map(|r| local_poly_from_jet(v, r, order))
            .collect();
        let dim = v.jet_dim(order);
        let mut rows = Vec::new();
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i..] {
                let prod = f.mul(g).truncate_above(order);
                if !prod.is_zero() {
                    rows.push(jet_of_local_poly(v, &prod, order).expect("products stay local"));
                }
            }
        }
        LocalIdeal { center: self.center.clone(), order, space: Subspace::span(dim, rows) }
    }

    /// Containment of ideals (so the reverse containment of subschemes).
    pub fn contains_ideal(&self, other: &LocalIdeal) -> bool {
        assert_eq!(self.center, other.center);
        let (a, b) = self.harmonize(other);
        a.space.contains(&b.space)
    }

    /// Linear parts of ideal elements: the image of I in m/m², a subspace
    /// of the cotangent coordinates.
    pub fn degree_one_part(&self) -> Subspace {
        let ld = self.variety().local_dim();
        let rows: Vec<Vec<Rat>> = self
            .space
            .basis()
            .rows_iter()
            .map(|r| r[1..=ld].to_vec())
            .collect();
        Subspace::span(ld, rows)
    }

    /// Check closure under multiplication by each local coordinate; a
    /// malformed subspace fails this.
    pub fn validate(&self) -> Result<()> {
        let v = self.variety();
        for r in self.space.basis().rows_iter() {
            let p = local_poly_from_jet(v, r, self.order);
            for slot in 0..v.local_dim() {
                let shifted = p.mul(&Poly::var(slot)).truncate_above(self.order);
                let jet = jet_of_local_poly(v, &shifted, self.order)?;
                if !self.space.contains_vector(&jet) {
                    return Err(Error::InvalidScheme(format!(
                        "subspace at {} is not closed under multiplication by local variables",
                        self.center
                    )));
                }
            }
        }
        // the faithfulness guarantee: every monomial of top jet degree lies
        // in the subspace exactly when m^(order+1) ⊆ I held at construction
        Ok(())
    }
}

impl PartialEq for LocalIdeal {
    fn eq(&self, other: &Self) -> bool {
        if self.center != other.center {
            return false;
        }
        let (a, b) = self.harmonize(other);
        a.space == b.space
    }
}

impl Eq for LocalIdeal {}

/// A zero-dimensional subscheme: local ideals at pairwise distinct centers,
/// kept sorted by center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroScheme {
    variety: Variety,
    components: Vec<LocalIdeal>,
}

impl ZeroScheme {
    pub fn empty(variety: Variety) -> Self {
        ZeroScheme { variety, components: vec![] }
    }

    pub fn from_components(variety: Variety, mut components: Vec<LocalIdeal>) -> Result<Self> {
        for c in &components {
            if c.variety() != variety {
                return Err(Error::InvalidScheme("component on the wrong variety".into()));
            }
        }
        components.sort_by(|a, b| a.center.cmp(&b.center));
        if components.windows(2).any(|w| w[0].center == w[1].center) {
            return Err(Error::InvalidScheme("components share a center".into()));
        }
        Ok(ZeroScheme { variety, components })
    }

    pub fn reduced(variety: Variety, points: &[Point]) -> Result<Self> {
        let comps = points.iter().map(|p| LocalIdeal::maximal(p.clone())).collect();
        ZeroScheme::from_components(variety, comps).map_err(|_| {
            Error::InvalidScheme("reduced scheme needs pairwise distinct points".into())
        })
    }

    pub fn curvilinear(center: Point, direction: &[Rat], length: u32) -> Result<Self> {
        let v = center.variety();
        let comp = LocalIdeal::curvilinear(center, direction, length)?;
        ZeroScheme::from_components(v, vec![comp])
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn components(&self) -> &[LocalIdeal] {
        &self.components
    }

    pub fn support(&self) -> Vec<&Point> {
        self.components.iter().map(|c| c.center()).collect()
    }

    pub fn component_at(&self, p: &Point) -> Option<&LocalIdeal> {
        self.components.iter().find(|c| c.center() == p)
    }

    pub fn colength(&self) -> usize {
        self.components.iter().map(|c| c.colength()).sum()
    }

    /// Ideal sum I_Z + I_W: supported on the common centers only (at an
    /// absent center one ideal is the unit ideal).
    pub fn sum(&self, other: &ZeroScheme) -> ZeroScheme {
        assert_eq!(self.variety, other.variety, "schemes live on different varieties");
        let mut components = Vec::new();
        for c in &self.components {
            if let Some(d) = other.component_at(c.center()) {
                components.push(c.sum(d));
            }
        }
        ZeroScheme { variety: self.variety, components }
    }

    /// Ideal intersection I_Z ∩ I_W: the scheme-theoretic union.
    pub fn intersect(&self, other: &ZeroScheme) -> ZeroScheme {
        assert_eq!(self.variety, other.variety, "schemes live on different varieties");
        let mut components: Vec<LocalIdeal> = Vec::new();
        for c in &self.components {
            match other.component_at(c.center()) {
                Some(d) => components.push(c.intersect(d)),
                None => components.push(c.clone()),
            }
        }
        for d in &other.components {
            if self.component_at(d.center()).is_none() {
                components.push(d.clone());
            }
        }
        ZeroScheme::from_components(self.variety, components)
            .expect("centers are distinct by construction")
    }

    pub fn square(&self) -> ZeroScheme {
        ZeroScheme {
            variety: self.variety,
            components: self.components.iter().map(|c| c.square()).collect(),
        }
    }

    /// Scheme containment: self ⊆ other as subschemes, i.e. I_other ⊆ I_self
    /// at every center of self.
    pub fn is_subscheme_of(&self, other: &ZeroScheme) -> bool {
        self.components.iter().all(|c| match other.component_at(c.center()) {
            Some(d) => c.contains_ideal(d),
            None => false,
        })
    }
}

/// H⁰(O(a) ⊗ I_Z): sections whose jet at every center lies in the local
/// ideal subspace.
pub fn section_space(series: &LinearSeries, scheme: &ZeroScheme) -> Subspace {
    assert_eq!(series.variety(), scheme.variety(), "series and scheme varieties differ");
    let h0 = series.h0();
    let mut condition_blocks: Vec<Matrix> = Vec::new();
    for comp in scheme.components() {
        let jets = jet_matrix(series, comp.center(), comp.order());
        let ann = comp.space().annihilator();
        if ann.dim() == 0 {
            continue;
        }
        condition_blocks.push(ann.basis().mul(&jets));
    }
    if condition_blocks.is_empty() {
        return Subspace::full(h0);
    }
    let mut stacked = condition_blocks.remove(0);
    for b in condition_blocks {
        stacked = stacked.vcat(&b);
    }
    stacked.kernel()
}

/// Whether the series separates this length-(d+1) scheme: the vanishing
/// conditions are independent exactly when the section space has
/// codimension d+1.
pub fn very_ample_check(series: &LinearSeries, d: usize, scheme: &ZeroScheme) -> Result<bool> {
    if scheme.colength() != d + 1 {
        return Err(Error::InvalidScheme(format!(
            "expected a scheme of length {}, got {}",
            d + 1,
            scheme.colength()
        )));
    }
    Ok(section_space(series, scheme).codim() == d + 1)
}

// ---------------------------------------------------------------------------
// Text format
//
// series line:     p1 O(3)          or   p2 O(5)
// component line:  point = (1, 2)
//                  point = (1, 2); ideal = (y - x^2, x^3) + m^4
//                  point = (1, 0)        on p1: two entries are projective
//
// A point tuple with local_dim entries is affine (last homogeneous
// coordinate 1); with local_dim + 1 entries it is projective. Ideal
// generators are polynomials in the local variables x (and y on p2); the
// optional `+ m^k` appends that power of the maximal ideal. A component
// line without an ideal clause is a reduced point.
// ---------------------------------------------------------------------------

pub fn parse_series(line: &str) -> Result<LinearSeries> {
    let s = line.trim();
    let (vtok, rest) = s
        .split_once(char::is_whitespace)
        .ok_or_else(|| Error::Parse(format!("expected `<variety> O(<degree>)`, got `{s}`")))?;
    let variety = match vtok.to_ascii_lowercase().as_str() {
        "p1" => Variety::P1,
        "p2" => Variety::P2,
        other => return Err(Error::Parse(format!("unknown variety `{other}`"))),
    };
    let rest = rest.trim();
    let inner = rest
        .strip_prefix("O(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `O(<degree>)`, got `{rest}`")))?;
    let degree: u32 = inner
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad degree `{inner}`")))?;
    if degree == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    Ok(LinearSeries::new(variety, degree))
}

pub fn parse_point(variety: Variety, tuple: &str) -> Result<Point> {
    let inner = tuple
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a parenthesized tuple, got `{tuple}`")))?;
    let entries: Vec<Rat> = inner
        .split(',')
        .map(|e| parse_rat(e.trim()))
        .collect::<Result<_>>()?;
    let ld = variety.local_dim();
    if entries.len() == ld {
        let mut coords = entries;
        coords.push(Rat::one());
        Point::new(variety, coords)
    } else if entries.len() == ld + 1 {
        Point::new(variety, entries)
    } else {
        Err(Error::Parse(format!(
            "a point on {variety} takes {ld} affine or {} projective entries",
            ld + 1
        )))
    }
}

/// Parse a polynomial in the local variables x, y with rational
/// coefficients, e.g. `y - x^2`, `3/2*x*y`, `x^3`.
pub fn parse_local_poly(variety: Variety, s: &str) -> Result<Poly> {
    let mut chars = s.chars().peekable();
    let mut poly = Poly::zero();
    let bad = |what: &str| Error::Parse(format!("bad polynomial `{s}`: {what}"));
    loop {
        while chars.peek().map_or(false, |c| c.is_whitespace()) {
            chars.next();
        }
        if chars.peek().is_none() {
            break;
        }
        let mut sign = Rat::one();
        while let Some(&c) = chars.peek() {
            match c {
                '+' => {
                    chars.next();
                }
                '-' => {
                    sign = -sign;
                    chars.next();
                }
                c if c.is_whitespace() => {
                    chars.next();
                }
                _ => break,
            }
        }
        if chars.peek().is_none() {
            return Err(bad("trailing sign"));
        }
        let mut coeff = sign;
        let mut exps = [0u32; 3];
        let mut saw_factor = false;
        loop {
            match chars.peek() {
                Some(&c) if c.is_ascii_digit() => {
                    let mut num = String::new();
                    while chars.peek().map_or(false, |c| c.is_ascii_digit()) {
                        num.push(chars.next().unwrap());
                    }
                    if chars.peek() == Some(&'/') {
                        chars.next();
                        num.push('/');
                        while chars.peek().map_or(false, |c| c.is_ascii_digit()) {
                            num.push(chars.next().unwrap());
                        }
                    }
                    coeff *= parse_rat(&num)?;
                    saw_factor = true;
                }
                Some(&('x' | 'y')) => {
                    let var = chars.next().unwrap();
                    let slot = if var == 'x' { 0 } else { 1 };
                    if slot >= variety.local_dim() {
                        return Err(bad("variable y is not available on p1"));
                    }
                    let mut e = 1u32;
                    if chars.peek() == Some(&'^') {
                        chars.next();
                        let mut num = String::new();
                        while chars.peek().map_or(false, |c| c.is_ascii_digit()) {
                            num.push(chars.next().unwrap());
                        }
                        e = num.parse().map_err(|_| bad("bad exponent"))?;
                    }
                    exps[slot] += e;
                    saw_factor = true;
                }
                Some(&'*') | Some(&' ') | Some(&'\t') => {
                    chars.next();
                }
                Some(&('+' | '-')) | None => break,
                Some(&c) => return Err(bad(&format!("unexpected character `{c}`"))),
            }
        }
        if !saw_factor {
            return Err(bad("empty term"));
        }
        poly = poly.add(&Poly::monomial(exps, coeff));
    }
    if poly.is_zero() && s.trim() != "0" {
        // an explicitly zero polynomial is almost certainly a typo
        return Err(bad("polynomial is zero"));
    }
    Ok(poly)
}

/// Parse one component line of the scheme text format.
pub fn parse_component(variety: Variety, line: &str) -> Result<LocalIdeal> {
    let mut point: Option<Point> = None;
    let mut gens: Vec<Poly> = Vec::new();
    let mut power: Option<u32> = None;
    let mut saw_ideal = false;
    for clause in line.split(';') {
        let clause = clause.trim();
        if clause.is_empty() {
            continue;
        }
        let (key, value) = clause
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `key = value`, got `{clause}`")))?;
        match key.trim() {
            "point" => point = Some(parse_point(variety, value.trim())?),
            "ideal" => {
                saw_ideal = true;
                let v = value.trim();
                let (gen_part, m_part) = match v.rsplit_once('+') {
                    Some((g, m)) if m.trim_start().starts_with('m') => (g.trim(), Some(m.trim())),
                    _ => (v, None),
                };
                let inner = gen_part
                    .strip_prefix('(')
                    .and_then(|r| r.trim_end().strip_suffix(')'))
                    .ok_or_else(|| {
                        Error::Parse(format!("expected parenthesized generators in `{v}`"))
                    })?;
                for g in inner.split(',') {
                    let g = g.trim();
                    if !g.is_empty() {
                        gens.push(parse_local_poly(variety, g)?);
                    }
                }
                if let Some(m) = m_part {
                    let k = m
                        .strip_prefix("m^")
                        .and_then(|k| k.trim().parse::<u32>().ok())
                        .ok_or_else(|| Error::Parse(format!("expected `m^<k>`, got `{m}`")))?;
                    power = Some(k);
                }
            }
            other => return Err(Error::Parse(format!("unknown clause `{other}`"))),
        }
    }
    let point = point.ok_or_else(|| Error::Parse("component line without a point".into()))?;
    if !saw_ideal {
        return Ok(LocalIdeal::maximal(point));
    }
    LocalIdeal::from_local_generators(point, &gens, power)
}

/// Parse a whole scheme: one component per non-empty line, `#` comments.
pub fn parse_scheme(variety: Variety, text: &str) -> Result<ZeroScheme> {
    let mut comps = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        comps.push(parse_component(variety, line)?);
    }
    ZeroScheme::from_components(variety, comps)
}

// ---------------------------------------------------------------------------
// Randomized scheme generation for campaigns and property tests
// ---------------------------------------------------------------------------

pub fn random_point(variety: Variety, rng: &mut impl Rng, bound: i64) -> Point {
    match variety {
        Variety::P1 => Point::p1_affine(rat(rng.gen_range(-bound..=bound))),
        Variety::P2 => Point::p2_affine(
            rat(rng.gen_range(-bound..=bound)),
            rat(rng.gen_range(-bound..=bound)),
        ),
    }
}

pub fn random_distinct_points(
    variety: Variety,
    n: usize,
    rng: &mut impl Rng,
    bound: i64,
) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        let p = random_point(variety, rng, bound);
        if !pts.contains(&p) {
            pts.push(p);
        }
        attempts += 1;
        assert!(
            attempts < 200 * n + 200,
            "coordinate bound {bound} too small for {n} distinct points"
        );
    }
    pts
}

fn random_component(center: Point, length: u32, rng: &mut impl Rng) -> LocalIdeal {
    let v = center.variety();
    if length == 1 {
        return LocalIdeal::maximal(center);
    }
    match v {
        Variety::P1 => LocalIdeal::curvilinear(center, &[rat(1)], length).unwrap(),
        Variety::P2 => {
            let dir = loop {
                let d = [rat(rng.gen_range(-2..=2)), rat(rng.gen_range(-2..=2))];
                if !d.iter().all(|c| c.is_zero()) {
                    break d;
                }
            };
            // half of the fat components get a curved germ instead of a line
            if rng.gen_bool(0.5) {
                let ell = Poly::var(0).scale(&dir[1]).sub(&Poly::var(1).scale(&dir[0]));
                let perp = Poly::var(0).scale(&dir[0]).add(&Poly::var(1).scale(&dir[1]));
                let curved = ell.sub(&perp.mul(&perp).scale(&rat(rng.gen_range(1..=2))));
                LocalIdeal::from_local_generators(center, &[curved], Some(length)).unwrap()
            } else {
                LocalIdeal::curvilinear(center, &dir, length).unwrap()
            }
        }
    }
}

/// A random scheme of the given length: a mix of reduced points and
/// curvilinear components at distinct centers with small integer data.
pub fn random_scheme(
    variety: Variety,
    length: usize,
    rng: &mut impl Rng,
    bound: i64,
) -> ZeroScheme {
    let mut parts: Vec<u32> = Vec::new();
    let mut remaining = length as u32;
    while remaining > 0 {
        let max_part = remaining.min(3);
        let part = match max_part {
            1 => 1,
            _ => {
                let roll: f64 = rng.gen();
                if roll < 0.6 {
                    1
                } else if roll < 0.9 || max_part == 2 {
                    2
                } else {
                    3
                }
            }
        };
        parts.push(part);
        remaining -= part;
    }
    let centers = random_distinct_points(variety, parts.len(), rng, bound);
    let comps = centers
        .into_iter()
        .zip(parts)
        .map(|(c, len)| random_component(c, len, rng))
        .collect();
    ZeroScheme::from_components(variety, comps).expect("centers are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn pt1(t: i64) -> Point {
        Point::p1_affine(rat(t))
    }

    fn pt2(u: i64, v: i64) -> Point {
        Point::p2_affine(rat(u), rat(v))
    }

    #[test]
    fn point_canonical_form_and_chart() {
        let p = Point::new(Variety::P1, vec![rat(4), rat(2)]).unwrap();
        assert_eq!(p.chart(), 0);
        assert_eq!(p.coords(), &[rat(1), ratio(1, 2)]);
        // ties pick the smallest index
        let q = Point::new(Variety::P2, vec![rat(-3), rat(3), rat(1)]).unwrap();
        assert_eq!(q.chart(), 0);
        assert_eq!(q.coords(), &[rat(1), rat(-1), ratio(-1, 3)]);
        assert!(Point::new(Variety::P1, vec![rat(0), rat(0)]).is_err());
        // scaling invariance
        let a = Point::new(Variety::P2, vec![rat(2), rat(4), rat(6)]).unwrap();
        let b = Point::new(Variety::P2, vec![rat(1), rat(2), rat(3)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reduced_schemes_and_duplicates() {
        let z = ZeroScheme::reduced(
            Variety::P1,
            &[Point::new(Variety::P1, vec![rat(1), rat(0)]).unwrap(), pt1(0)],
        )
        .unwrap();
        assert_eq!(z.colength(), 2);
        let single = ZeroScheme::reduced(Variety::P2, &[pt2(1, 2)]).unwrap();
        assert_eq!(single.colength(), 1);
        assert!(ZeroScheme::reduced(Variety::P1, &[pt1(3), pt1(3)]).is_err());
    }

    #[test]
    fn curvilinear_lengths_and_m_power_containment() {
        let m1 = ZeroScheme::curvilinear(pt2(0, 0), &[rat(1), rat(0)], 1).unwrap();
        assert_eq!(m1.colength(), 1);
        let m2 = ZeroScheme::curvilinear(pt2(0, 0), &[rat(0), rat(1)], 2).unwrap();
        assert_eq!(m2.colength(), 2);
        let m3 = ZeroScheme::curvilinear(pt2(0, 0), &[rat(1), rat(1)], 3).unwrap();
        assert_eq!(m3.colength(), 3);
        // the cube of the maximal ideal sits inside the length-3 ideal
        let comp = &m3.components()[0];
        let cube = LocalIdeal::from_local_generators(pt2(0, 0), &[], Some(3)).unwrap();
        assert!(comp.contains_ideal(&cube));
        assert!(LocalIdeal::curvilinear(pt2(0, 0), &[rat(0), rat(0)], 2).is_err());
    }

    #[test]
    fn non_zero_dimensional_generators_are_rejected() {
        // (y) alone cuts out a curve through the origin
        let err = LocalIdeal::from_local_generators(pt2(0, 0), &[Poly::var(1)], None);
        assert!(matches!(err, Err(Error::InvalidScheme(_))));
        // (x^5) on p1 is fine: colength 5
        let i = LocalIdeal::from_local_generators(pt1(0), &[Poly::var(0).pow(5)], None).unwrap();
        assert_eq!(i.colength(), 5);
        i.validate().unwrap();
    }

    #[test]
    fn ideal_sum_and_intersection_at_a_shared_center() {
        // (y) + m^3 and (x) + m^3 at the origin of the z-chart
        let iy =
            LocalIdeal::from_local_generators(pt2(0, 0), &[Poly::var(1)], Some(3)).unwrap();
        let ix =
            LocalIdeal::from_local_generators(pt2(0, 0), &[Poly::var(0)], Some(3)).unwrap();
        assert_eq!(iy.colength(), 3);
        assert_eq!(ix.colength(), 3);
        let zy = ZeroScheme::from_components(Variety::P2, vec![iy]).unwrap();
        let zx = ZeroScheme::from_components(Variety::P2, vec![ix]).unwrap();
        let s = zy.sum(&zx);
        assert_eq!(s.colength(), 1);
        let i = zy.intersect(&zx);
        assert_eq!(i.colength(), 5);
        // colength(sum) + colength(intersection) = colength sum of the parts
        assert_eq!(s.colength() + i.colength(), zy.colength() + zx.colength());
        // idempotence
        assert_eq!(zy.sum(&zy), zy);
        assert_eq!(zy.intersect(&zy), zy);
    }

    #[test]
    fn disjoint_schemes_sum_to_empty_and_union_under_intersection() {
        let a = ZeroScheme::reduced(Variety::P1, &[pt1(0)]).unwrap();
        let b = ZeroScheme::reduced(Variety::P1, &[pt1(1)]).unwrap();
        assert_eq!(a.sum(&b).colength(), 0);
        assert_eq!(a.intersect(&b).colength(), 2);
    }

    #[test]
    fn ideal_squares() {
        // reduced point: m² has colength 1 + dim X
        let p1_sq = ZeroScheme::reduced(Variety::P1, &[pt1(2)]).unwrap().square();
        assert_eq!(p1_sq.colength(), 2);
        let p2_sq = ZeroScheme::reduced(Variety::P2, &[pt2(1, 1)]).unwrap().square();
        assert_eq!(p2_sq.colength(), 3);
        // (t²)² = (t⁴)
        let curv = ZeroScheme::curvilinear(pt1(0), &[rat(1)], 2).unwrap();
        assert_eq!(curv.square().colength(), 4);
        // ((y) + m³)²: the quotient has monomial basis 1; x, y; x², xy;
        // x³, x²y; x⁴; x⁵ giving colength 9
        let iy =
            LocalIdeal::from_local_generators(pt2(0, 0), &[Poly::var(1)], Some(3)).unwrap();
        assert_eq!(iy.square().colength(), 9);
        iy.square().validate().unwrap();
    }

    #[test]
    fn section_spaces_match_hand_counts() {
        // P¹, O(3), two coordinate points: x²y and xy² survive
        let l3 = LinearSeries::new(Variety::P1, 3);
        let z = ZeroScheme::reduced(
            Variety::P1,
            &[Point::new(Variety::P1, vec![rat(1), rat(0)]).unwrap(),
              Point::new(Variety::P1, vec![rat(0), rat(1)]).unwrap()],
        )
        .unwrap();
        let s = section_space(&l3, &z);
        assert_eq!(s.dim(), 2);
        // basis order x³, x²y, xy², y³: sections with zero outer coefficients
        assert!(s.contains_vector(&[rat(0), rat(1), rat(0), rat(0)]));
        assert!(s.contains_vector(&[rat(0), rat(0), rat(1), rat(0)]));

        // double point at [1:0]: f and f' vanish there
        let dbl = ZeroScheme::curvilinear(
            Point::new(Variety::P1, vec![rat(1), rat(0)]).unwrap(),
            &[rat(1)],
            2,
        )
        .unwrap();
        let s2 = section_space(&l3, &dbl);
        assert_eq!(s2.dim(), 2);
        assert!(s2.contains_vector(&[rat(0), rat(0), rat(1), rat(0)]));
        assert!(s2.contains_vector(&[rat(0), rat(0), rat(0), rat(1)]));

        // P², O(2), curvilinear length 2 at [1:0:0] along y kills x², xy
        let l2 = LinearSeries::new(Variety::P2, 2);
        let c = ZeroScheme::curvilinear(
            Point::new(Variety::P2, vec![rat(1), rat(0), rat(0)]).unwrap(),
            &[rat(1), rat(0)],
            2,
        )
        .unwrap();
        let s3 = section_space(&l2, &c);
        assert_eq!(s3.dim(), 4);
        // basis: x², xy, xz, y², yz, z²  (degree-lex)
        for idx in [2usize, 3, 4, 5] {
            assert!(s3.contains_vector(&crate::linalg::unit_vector(6, idx)));
        }
    }

    #[test]
    fn very_ampleness_thresholds() {
        let mut rng = crate::harness::seeded_rng(7, 0);
        let z4 = random_scheme(Variety::P1, 4, &mut rng, 9);
        assert!(very_ample_check(&LinearSeries::new(Variety::P1, 3), 3, &z4).unwrap());
        assert!(!very_ample_check(&LinearSeries::new(Variety::P1, 2), 3, &z4).unwrap());
        let z5 = random_scheme(Variety::P2, 5, &mut rng, 9);
        assert!(very_ample_check(&LinearSeries::new(Variety::P2, 4), 4, &z5).unwrap());
        let wrong = very_ample_check(&LinearSeries::new(Variety::P1, 3), 2, &z4);
        assert!(matches!(wrong, Err(Error::InvalidScheme(_))));
    }

    #[test]
    fn subscheme_containment() {
        let big = ZeroScheme::curvilinear(pt1(0), &[rat(1)], 3).unwrap();
        let small = ZeroScheme::curvilinear(pt1(0), &[rat(1)], 2).unwrap();
        assert!(small.is_subscheme_of(&big));
        assert!(!big.is_subscheme_of(&small));
        let other = ZeroScheme::reduced(Variety::P1, &[pt1(1)]).unwrap();
        assert!(!other.is_subscheme_of(&big));
        let union = big.intersect(&other);
        assert!(big.is_subscheme_of(&union));
        assert!(other.is_subscheme_of(&union));
    }

    #[test]
    fn parser_round_trips() {
        let l = parse_series(" p2  O(5) ").unwrap();
        assert_eq!((l.variety(), l.degree()), (Variety::P2, 5));
        assert!(parse_series("p3 O(2)").is_err());
        assert!(parse_series("p1 O(0)").is_err());

        let z = parse_scheme(
            Variety::P2,
            "# a fat point and a reduced one\n\
             point = (0, 0); ideal = (y - x^2) + m^3\n\
             point = (1, 2)\n",
        )
        .unwrap();
        assert_eq!(z.colength(), 4);
        let expect = LocalIdeal::from_local_generators(
            pt2(0, 0),
            &[Poly::var(1).sub(&Poly::var(0).pow(2))],
            Some(3),
        )
        .unwrap();
        assert_eq!(z.component_at(&pt2(0, 0)), Some(&expect));

        // projective tuple on p1
        let zp = parse_scheme(Variety::P1, "point = (1, 0)").unwrap();
        assert_eq!(zp.support()[0], &Point::new(Variety::P1, vec![rat(1), rat(0)]).unwrap());

        // fractions and explicit powers
        let zf = parse_scheme(Variety::P1, "point = (1/2); ideal = (x^2)").unwrap();
        assert_eq!(zf.colength(), 2);

        assert!(parse_scheme(Variety::P1, "point = (0); ideal = (y) + m^2").is_err());
        assert!(parse_scheme(Variety::P1, "point = ").is_err());
        assert!(parse_scheme(Variety::P2, "point = (0,0); ideal = (x + ) + m^2").is_err());
    }

    #[test]
    fn random_schemes_have_requested_length_and_valid_ideals() {
        let mut rng = crate::harness::seeded_rng(11, 3);
        for len in 1..=5 {
            for v in [Variety::P1, Variety::P2] {
                let z = random_scheme(v, len, &mut rng, 10);
                assert_eq!(z.colength(), len);
                for c in z.components() {
                    c.validate().unwrap();
                }
            }
        }
    }
}
