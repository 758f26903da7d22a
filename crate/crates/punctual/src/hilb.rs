//! The Hilbert scheme of d points through its Grassmannian model.
//!
//! A length-d subscheme Z of X with h0(L) = n imposes, when L separates
//! enough jets, exactly d conditions on sections. The section space
//! H0(L tensor I_Z) then has codimension d, its annihilator is the d-plane
//! spanned by evaluation functionals on Z, and the Pluecker coordinate of
//! that plane embeds the Hilbert scheme into P(Wedge^d H0(L)^dual). On top
//! of the embedding this module builds the line geometry the paper-style
//! questions need: distances between Hilbert points, pencils tracing lines
//! inside the image, tangent vectors as module homs with their lifts to
//! Grassmannian tangents, membership tests for decomposable vectors, and
//! decomposition searches with identifiability certificates for 2-vectors.
//!
//! Everything is exact. Searches that depend on locating rational roots
//! report honestly when the bounded search cannot certify completeness
//! instead of returning silently partial answers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::exterior::MultiVector;
use crate::grassmann::{wedge_direction, GrTangentVector, GrassmannPoint};
use crate::linalg::{unit_vector, Matrix, Subspace};
use crate::poly::{
    binary_forms_gcd, local_monomials, rational_roots, resultant_bivariate, uni_gcd, Poly,
    UniPoly, DEFAULT_ROOT_HEIGHT,
};
use crate::rat::{rat, Rat};
use crate::schemes0d::{
    jet_matrix, jet_of_local_poly, local_poly_from_jet, section_space, LinearSeries, LocalIdeal,
    Point, Variety, ZeroScheme,
};
use crate::{Error, Result};

/// Cap on the number of decomposition witnesses collected per query. Some
/// points lie on infinitely many secant lines (a one-parameter family), so
/// enumeration has to stop somewhere; two witnesses already settle
/// identifiability and the cap leaves room to exhibit several more.
pub const WITNESS_CAP: usize = 8;

/// Does the series separate all length-k subschemes, i.e. is O(a) k-very
/// ample? On P1 and P2 the classical criterion is a >= k.
pub fn is_k_very_ample(series: &LinearSeries, k: usize) -> bool {
    series.degree() as usize >= k
}

// ---------------------------------------------------------------------------
// Divisors on P1.
//
// Length-d subschemes of P1 are effective degree-d divisors. We keep them
// as multisets of places: rational points (finite or at infinity) and, when
// a defining binary form has an irreducible quadratic factor, a conjugate
// pair kept unsplit as the quadratic itself.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// The point [t : 1].
    Finite(Rat),
    /// The point [1 : 0].
    Infinity,
    /// A conjugate pair of points cut out by a monic irreducible quadratic
    /// in the affine coordinate, kept without extending the field.
    Conjugate(UniPoly),
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(_) | Place::Infinity => 1,
            Place::Conjugate(_) => 2,
        }
    }

    fn sort_key(&self) -> (u8, String) {
        match self {
            Place::Infinity => (0, String::new()),
            Place::Finite(t) => (1, format!("{t}")),
            Place::Conjugate(q) => (2, format!("{q:?}")),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(t) => write!(f, "[{t}:1]"),
            Place::Infinity => write!(f, "[1:0]"),
            Place::Conjugate(q) => write!(f, "pair({q:?})"),
        }
    }
}

/// An effective divisor on P1: places with positive multiplicities, kept in
/// a canonical order so equal divisors compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    places: Vec<(Place, usize)>,
}

impl Divisor {
    pub fn new(places: Vec<(Place, usize)>) -> Self {
        let mut merged: Vec<(Place, usize)> = Vec::new();
        for (p, m) in places {
            if m == 0 {
                continue;
            }
            if let Some(slot) = merged.iter_mut().find(|(q, _)| *q == p) {
                slot.1 += m;
            } else {
                merged.push((p, m));
            }
        }
        merged.sort_by_key(|(p, _)| p.sort_key());
        Divisor { places: merged }
    }

    pub fn places(&self) -> &[(Place, usize)] {
        &self.places
    }

    pub fn degree(&self) -> usize {
        self.places.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn has_conjugate_part(&self) -> bool {
        self.places.iter().any(|(p, _)| matches!(p, Place::Conjugate(_)))
    }

    /// Factor a binary form given by its dehomogenization f(t) = F(t, 1)
    /// and the multiplicity of [1:0]. Fails when the rational-root search
    /// leaves a residual that is not a single irreducible quadratic, since
    /// the remaining places then live in an extension we do not construct.
    pub fn from_binary_form(f: &UniPoly, inf_mult: usize) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput("zero binary form".into()));
        }
        let mut places: Vec<(Place, usize)> = Vec::new();
        if inf_mult > 0 {
            places.push((Place::Infinity, inf_mult));
        }
        let search = rational_roots(f, DEFAULT_ROOT_HEIGHT);
        for (root, mult) in &search.roots {
            places.push((Place::Finite(root.clone()), *mult));
        }
        match search.residual.degree() {
            None | Some(0) => {}
            Some(2) if search.complete => {
                places.push((Place::Conjugate(search.residual.monic()), 1));
            }
            _ => {
                return Err(Error::NonRationalSupport(
                    "the form has irrational factors beyond a single quadratic".into(),
                ))
            }
        }
        Ok(Divisor::new(places))
    }

    /// The defining binary form, as (dehomogenized part, multiplicity of
    /// infinity).
    pub fn binary_form(&self) -> (UniPoly, usize) {
        let mut f = UniPoly::constant(Rat::one());
        let mut inf = 0usize;
        for (p, m) in &self.places {
            match p {
                Place::Infinity => inf += m,
                Place::Finite(t) => {
                    let lin = UniPoly::from_coeffs(vec![-t.clone(), Rat::one()]);
                    for _ in 0..*m {
                        f = f.mul(&lin);
                    }
                }
                Place::Conjugate(q) => {
                    for _ in 0..*m {
                        f = f.mul(q);
                    }
                }
            }
        }
        (f, inf)
    }

    /// The divisor as a subscheme of P1. Conjugate pairs have no rational
    /// scheme structure in our model and are rejected.
    pub fn to_scheme(&self) -> Result<ZeroScheme> {
        let mut components = Vec::new();
        for (p, m) in &self.places {
            let center = match p {
                Place::Finite(t) => Point::p1_affine(t.clone()),
                Place::Infinity => Point::new(Variety::P1, vec![Rat::one(), Rat::zero()])?,
                Place::Conjugate(_) => {
                    return Err(Error::NonRationalSupport(
                        "a conjugate pair has no rational subscheme structure".into(),
                    ))
                }
            };
            components.push(LocalIdeal::curvilinear(center, &[Rat::one()], *m as u32)?);
        }
        ZeroScheme::from_components(Variety::P1, components)
    }

    /// All effective sub-divisors of the given degree.
    pub fn subdivisors(&self, degree: usize) -> Vec<Divisor> {
        let mut out = Vec::new();
        let mut current: Vec<(Place, usize)> = Vec::new();
        walk_subdivisors(&self.places, 0, degree, &mut current, &mut out);
        out.sort_by_key(|d| format!("{d}"));
        out.dedup();
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.places.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.places.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{m}*{p}")?;
            }
        }
        Ok(())
    }
}

fn walk_subdivisors(
    places: &[(Place, usize)],
    idx: usize,
    remaining: usize,
    current: &mut Vec<(Place, usize)>,
    out: &mut Vec<Divisor>,
) {
    if remaining == 0 {
        out.push(Divisor::new(current.clone()));
        return;
    }
    if idx >= places.len() {
        return;
    }
    let (place, avail) = &places[idx];
    let step = place.degree();
    let max_take = (*avail).min(remaining / step);
    for take in (0..=max_take).rev() {
        if take > 0 {
            current.push((place.clone(), take));
        }
        walk_subdivisors(places, idx + 1, remaining - take * step, current, out);
        if take > 0 {
            current.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// Points of the Hilbert scheme inside the Grassmannian.

/// What a Hilbert point represents: an honest subscheme with rational
/// support, or a conjugate pair of points on P1 held as its divisor.
#[derive(Clone, Debug, PartialEq)]
pub enum SchemeRep {
    Rational(ZeroScheme),
    ConjugatePair(Divisor),
}

impl SchemeRep {
    pub fn describe(&self) -> String {
        match self {
            SchemeRep::Rational(z) => {
                let parts: Vec<String> = z
                    .components()
                    .iter()
                    .map(|c| {
                        if c.colength() == 1 {
                            format!("{}", c.center())
                        } else {
                            format!("len {} at {}", c.colength(), c.center())
                        }
                    })
                    .collect();
                parts.join(" + ")
            }
            SchemeRep::ConjugatePair(d) => format!("{d}"),
        }
    }
}

/// A point of the Hilbert scheme of d points: the section space
/// H0(L tensor I_Z) of codimension d, its annihilator (the span of
/// evaluation functionals on Z), and the Pluecker coordinate of the
/// annihilator.
#[derive(Clone, Debug)]
pub struct HilbPoint {
    rep: SchemeRep,
    sections: Subspace,
    dual: Subspace,
    plucker_dual: MultiVector,
}

impl HilbPoint {
    pub fn rep(&self) -> &SchemeRep {
        &self.rep
    }

    /// The subscheme, when it has one (conjugate pairs do not).
    pub fn scheme(&self) -> Option<&ZeroScheme> {
        match &self.rep {
            SchemeRep::Rational(z) => Some(z),
            SchemeRep::ConjugatePair(_) => None,
        }
    }

    pub fn sections(&self) -> &Subspace {
        &self.sections
    }

    /// The annihilator of the section space inside the dense coordinates.
    pub fn dual(&self) -> &Subspace {
        &self.dual
    }

    /// Pluecker coordinate of `dual()`, a decomposable d-vector.
    pub fn plucker_dual(&self) -> &MultiVector {
        &self.plucker_dual
    }

    pub fn length(&self) -> usize {
        self.dual.dim()
    }

    fn from_sections(rep: SchemeRep, h0: usize, sections: Subspace) -> Self {
        let dual = sections.annihilator();
        debug_assert_eq!(dual.ambient(), h0);
        let plucker_dual = GrassmannPoint::new(dual.clone()).plucker();
        HilbPoint { rep, sections, dual, plucker_dual }
    }
}

/// Embed a length-d subscheme via its section space. Requires the series
/// to be d-very ample; without that the section space can fail to have
/// codimension d and the image would miss the intended Grassmannian.
pub fn embed(series: &LinearSeries, z: &ZeroScheme) -> Result<HilbPoint> {
    assert_eq!(z.variety(), series.variety(), "scheme and series on different varieties");
    let d = z.colength();
    if d == 0 {
        return Err(Error::ZeroInput("empty scheme".into()));
    }
    if !is_k_very_ample(series, d) {
        return Err(Error::NotVeryAmple {
            needed: d,
            detail: format!(
                "O({}) does not separate length-{} subschemes: h0 = {}",
                series.degree(),
                d,
                series.h0()
            ),
        });
    }
    let sections = section_space(series, z);
    if sections.codim() != d {
        return Err(Error::NotVeryAmple {
            needed: d,
            detail: format!(
                "sections through the scheme have codimension {} instead of {}",
                sections.codim(),
                d
            ),
        });
    }
    Ok(HilbPoint::from_sections(SchemeRep::Rational(z.clone()), series.h0(), sections))
}

/// Embed a divisor on P1, which may carry a conjugate-pair place. For
/// rational divisors this agrees with `embed` of the associated scheme.
pub fn embed_divisor(series: &LinearSeries, div: &Divisor) -> Result<HilbPoint> {
    assert_eq!(series.variety(), Variety::P1, "divisors live on P1");
    let d = div.degree();
    if d == 0 {
        return Err(Error::ZeroInput("empty divisor".into()));
    }
    if !is_k_very_ample(series, d) {
        return Err(Error::NotVeryAmple {
            needed: d,
            detail: format!(
                "O({}) does not separate length-{} subschemes: h0 = {}",
                series.degree(),
                d,
                series.h0()
            ),
        });
    }
    if !div.has_conjugate_part() {
        return embed(series, &div.to_scheme()?);
    }
    // sections vanishing on the divisor: (binary form of div) * H0(a - d)
    let a = series.degree() as usize;
    let (f, inf) = div.binary_form();
    let h0 = series.h0();
    let mut rows = Vec::new();
    for j in 0..=(a - d) {
        // multiply by x^j y^(a-d-j); in the affine coordinate this is
        // f * t^j, and the basis slot of x^k y^(a-k) is a - k
        let mut dense = vec![Rat::zero(); h0];
        for (i, c) in f.coeffs().iter().enumerate() {
            let k = i + j;
            debug_assert!(k + inf <= a);
            dense[a - k] = c.clone();
        }
        rows.push(dense);
    }
    let sections = Subspace::span(h0, rows);
    if sections.codim() != d {
        return Err(Error::NotVeryAmple {
            needed: d,
            detail: format!(
                "sections through the divisor have codimension {} instead of {}",
                sections.codim(),
                d
            ),
        });
    }
    Ok(HilbPoint::from_sections(SchemeRep::ConjugatePair(div.clone()), h0, sections))
}

/// Dehomogenize a dense section on P1 to the affine chart t = x/y. Dense
/// coordinates are lex-descending (x^a, x^(a-1) y, ..., y^a), so slot i
/// carries t^(a-i).
fn p1_affine_poly(dense: &[Rat]) -> UniPoly {
    let a = dense.len() - 1;
    let mut coeffs = vec![Rat::zero(); a + 1];
    for (i, c) in dense.iter().enumerate() {
        coeffs[a - i] = c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

/// Evaluation functional of a degree-1 place as a dense covector.
fn p1_place_eval(series: &LinearSeries, place: &Place) -> Vec<Rat> {
    match place {
        Place::Finite(t) => series.eval_functional(&Point::p1_affine(t.clone())),
        Place::Infinity => {
            let p = Point::new(Variety::P1, vec![Rat::one(), Rat::zero()]).expect("valid point");
            series.eval_functional(&p)
        }
        Place::Conjugate(_) => unreachable!("conjugate places have no rational evaluation"),
    }
}

// ---------------------------------------------------------------------------
// Distance and lines between Hilbert points.

/// Hamming-style distance between two length-d points: d minus the length
/// of the largest common subscheme, computed as codim of the intersection
/// of section spaces minus d.
pub fn hamming_distance_hilb(p: &HilbPoint, q: &HilbPoint) -> usize {
    assert_eq!(p.length(), q.length(), "points of different Hilbert schemes");
    let meet = p.sections().intersect(q.sections());
    meet.codim() - p.length()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineVerdict {
    Contained,
    NotContained,
}

/// Outcome of testing whether the line through two Hilbert points stays
/// inside the Hilbert scheme image.
#[derive(Clone, Debug)]
pub struct LineTest {
    pub verdict: LineVerdict,
    pub distance: usize,
    /// Hypotheses the test could not verify; the verdict is still computed.
    pub warnings: Vec<String>,
}

/// Decide containment of the line through two distinct Hilbert points. The
/// criterion: distance one, with the schemes agreeing at every center
/// except a single shared one. On P1 no line through two distinct points
/// stays in the image, so the verdict there is always NotContained.
pub fn hilb_line_test(series: &LinearSeries, z1: &ZeroScheme, z2: &ZeroScheme) -> Result<LineTest> {
    let d = z1.colength();
    if z2.colength() != d {
        return Err(Error::InvalidScheme("schemes of different lengths".into()));
    }
    let p = embed(series, z1)?;
    let q = embed(series, z2)?;
    if p.sections() == q.sections() {
        return Err(Error::Degenerate("the two schemes coincide".into()));
    }
    let mut warnings = Vec::new();
    if !is_k_very_ample(series, d + 1) {
        warnings.push(format!(
            "the containment criterion assumes O({}) separates length-{} subschemes, \
             which is not verified",
            series.degree(),
            d + 1
        ));
    }
    let distance = hamming_distance_hilb(&p, &q);
    if series.variety() == Variety::P1 || distance != 1 {
        return Ok(LineTest { verdict: LineVerdict::NotContained, distance, warnings });
    }
    let diff = differing_centers(z1, z2);
    let verdict = if diff.len() == 1 { LineVerdict::Contained } else { LineVerdict::NotContained };
    Ok(LineTest { verdict, distance, warnings })
}

/// Centers at which the two schemes have different local ideals, including
/// centers present on only one side.
fn differing_centers(z1: &ZeroScheme, z2: &ZeroScheme) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for c in z1.components() {
        match z2.component_at(c.center()) {
            Some(other) if other == c => {}
            _ => {
                out.insert(c.center().clone());
            }
        }
    }
    for c in z2.components() {
        if z1.component_at(c.center()).is_none() {
            out.insert(c.center().clone());
        }
    }
    out
}

/// A pencil of subschemes tracing out a line inside the Hilbert scheme.
/// All members share the components away from one center; at that center
/// the ideal is spanned by a fixed codimension-one intersection together
/// with a moving element lambda1 f1 + lambda2 f2.
#[derive(Clone, Debug)]
pub struct LinePencil {
    variety: Variety,
    common: Vec<LocalIdeal>,
    center: Point,
    meet: LocalIdeal,
    f1: Vec<Rat>,
    f2: Vec<Rat>,
}

impl LinePencil {
    /// The member at [lambda1 : lambda2].
    pub fn member(&self, lambda1: &Rat, lambda2: &Rat) -> Result<ZeroScheme> {
        if lambda1.is_zero() && lambda2.is_zero() {
            return Err(Error::ZeroInput("[0 : 0] is not a parameter value".into()));
        }
        let order = self.meet.order();
        let dim = self.meet.space().ambient();
        let mut moving = vec![Rat::zero(); dim];
        for i in 0..dim {
            moving[i] = lambda1 * &self.f1[i] + lambda2 * &self.f2[i];
        }
        let mut rows: Vec<Vec<Rat>> =
            self.meet.space().basis().rows_iter().map(<[Rat]>::to_vec).collect();
        rows.push(moving);
        let span = Subspace::span(dim, rows);
        let gens: Vec<Poly> = span
            .basis()
            .rows_iter()
            .map(|r| local_poly_from_jet(self.variety, r, order))
            .collect();
        let ideal = LocalIdeal::from_local_generators(self.center.clone(), &gens, Some(order + 1))?;
        if ideal.colength() != self.meet.colength() - 1 {
            return Err(Error::Degenerate("the member degenerates at this parameter".into()));
        }
        let mut comps = self.common.clone();
        comps.push(ideal);
        ZeroScheme::from_components(self.variety, comps)
    }
}

/// Parametrize the line through two Hilbert points as a pencil, checking
/// containment first. The member at [1:0] is z1, at [0:1] is z2.
pub fn line_pencil(series: &LinearSeries, z1: &ZeroScheme, z2: &ZeroScheme) -> Result<LinePencil> {
    let test = hilb_line_test(series, z1, z2)?;
    if test.verdict != LineVerdict::Contained {
        return Err(Error::NotALine(
            "the line through the two schemes leaves the Hilbert image".into(),
        ));
    }
    let diff = differing_centers(z1, z2);
    let center = diff.iter().next().expect("contained verdict implies one center").clone();
    let i1 = z1.component_at(&center).expect("shared center");
    let i2 = z2.component_at(&center).expect("shared center");
    let meet = i1.intersect(i2);
    let order = meet.order();
    let i1h = i1.at_order(order);
    let i2h = i2.at_order(order);
    let pick = |ideal: &LocalIdeal| -> Vec<Rat> {
        for row in ideal.space().basis().rows_iter() {
            if !meet.space().contains_vector(row) {
                return row.to_vec();
            }
        }
        unreachable!("each ideal strictly contains the intersection");
    };
    let f1 = pick(&i1h);
    let f2 = pick(&i2h);
    let common: Vec<LocalIdeal> =
        z1.components().iter().filter(|c| *c.center() != center).cloned().collect();
    Ok(LinePencil { variety: series.variety(), common, center, meet, f1, f2 })
}

// ---------------------------------------------------------------------------
// Tangent vectors to the Hilbert scheme.
//
// The tangent space at [Z] is Hom_O(I_Z/I_Z^2, O_Z), computed component by
// component in truncated local rings. A tangent vector stores, for each
// component, the matrix of a module hom from the ideal to O/I.

/// Per-component working data: the local ideal and its square, both held at
/// the order of the square so the quotients are faithful.
#[derive(Clone, Debug)]
struct TangentFrame {
    order: u32,
    ideal: LocalIdeal,
    square: LocalIdeal,
    /// Jet slots spanning O/I, the complement of the ideal subspace.
    quot_coords: Vec<usize>,
}

impl TangentFrame {
    fn new(comp: &LocalIdeal) -> Self {
        let square = comp.square();
        let order = square.order();
        let ideal = comp.at_order(order);
        let quot_coords = ideal.space().complement_coords();
        TangentFrame { order, ideal, square, quot_coords }
    }

    /// dim O/I at the working order; equals the colength because the order
    /// is past stabilization.
    fn ring_dim(&self) -> usize {
        self.quot_coords.len()
    }

    /// Coordinates of a jet-space vector in O/I.
    fn ring_coords(&self, v: &[Rat]) -> Vec<Rat> {
        let red = self.ideal.space().reduce_vector(v);
        self.quot_coords.iter().map(|&c| red[c].clone()).collect()
    }

    /// Matrix of multiplication by a local coordinate on O/I.
    fn mult_matrix(&self, var: usize) -> Matrix {
        let variety = self.ideal.variety();
        let card = self.ring_dim();
        let mut m = Matrix::zeros(card, card);
        let monomials = local_monomials(variety.local_dim(), self.order);
        for (j, &slot) in self.quot_coords.iter().enumerate() {
            let mut exp = monomials[slot];
            exp[var] += 1;
            let prod = if exp.iter().sum::<u32>() > self.order {
                // the product lands in m^(order+1), which lies in the ideal
                vec![Rat::zero(); self.ideal.space().ambient()]
            } else {
                let p = Poly::monomial(exp, Rat::one());
                jet_of_local_poly(variety, &p, self.order).expect("monomials are local")
            };
            let coords = self.ring_coords(&prod);
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }
}

/// A tangent vector to the Hilbert scheme at a rational point [Z]: an
/// O-linear map I_Z/I_Z^2 -> O_Z stored per component, together with its
/// kernel ideal J (an ideal between I^2 and I of colength d + rank).
#[derive(Clone, Debug)]
pub struct HilbTangent {
    base: ZeroScheme,
    frames: Vec<TangentFrame>,
    /// Per component: ring_dim x (ideal basis count), column j the image
    /// of the j-th ideal basis element in O/I coordinates.
    images: Vec<Matrix>,
    rank: usize,
    kernel: ZeroScheme,
}

impl HilbTangent {
    pub fn base(&self) -> &ZeroScheme {
        &self.base
    }

    /// Rank of the hom as a linear map on the total ideal.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The subscheme cut out by the kernel ideal J; length d + rank.
    pub fn kernel_scheme(&self) -> &ZeroScheme {
        &self.kernel
    }

    /// Value of the hom on an element of the ideal at one component, given
    /// as a jet vector, expressed in O/I coordinates.
    pub fn hom(&self, comp: usize, ideal_elt_jet: &[Rat]) -> Vec<Rat> {
        let frame = &self.frames[comp];
        debug_assert!(frame.ideal.space().contains_vector(ideal_elt_jet));
        let coords = frame
            .ideal
            .space()
            .basis()
            .transpose()
            .solve(ideal_elt_jet)
            .expect("element lies in the ideal");
        self.images[comp].mul_vec(&coords)
    }

    /// Verify O-linearity: t(x f) = x t(f) in O/I for every local
    /// coordinate x and ideal basis element f.
    pub fn olinearity_ok(&self) -> bool {
        for (ci, frame) in self.frames.iter().enumerate() {
            let variety = frame.ideal.variety();
            let img = &self.images[ci];
            for var in 0..variety.local_dim() {
                let mult = frame.mult_matrix(var);
                for (j, f_row) in frame.ideal.space().basis().rows_iter().enumerate() {
                    let f_poly = local_poly_from_jet(variety, f_row, frame.order);
                    let xf = Poly::var(var).mul(&f_poly).truncate_above(frame.order);
                    let xf_jet =
                        jet_of_local_poly(variety, &xf, frame.order).expect("product is local");
                    if !frame.ideal.space().contains_vector(&xf_jet) {
                        return false;
                    }
                    let lhs = self.hom(ci, &xf_jet);
                    let t_f: Vec<Rat> = (0..img.row_count()).map(|i| img[(i, j)].clone()).collect();
                    let rhs = mult.mul_vec(&t_f);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Linear conditions cutting out the O-linear homs among all linear maps
/// from the ideal basis to O/I on one component. Unknowns are the entries
/// of the image matrix, flattened row-major.
fn olinearity_constraints(frame: &TangentFrame) -> Matrix {
    let variety = frame.ideal.variety();
    let card = frame.ring_dim();
    let basis_count = frame.ideal.space().dim();
    let n_unknowns = card * basis_count;
    let et = frame.ideal.space().basis().transpose();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // vanishing on I^2
    for g in frame.square.space().basis().rows_iter() {
        debug_assert!(frame.ideal.space().contains_vector(g));
        let coords = et.solve(g).expect("the square lies in the ideal");
        for i in 0..card {
            let mut row = vec![Rat::zero(); n_unknowns];
            for (j, c) in coords.iter().enumerate() {
                row[i * basis_count + j] = c.clone();
            }
            rows.push(row);
        }
    }
    // module linearity against multiplication by each coordinate
    for var in 0..variety.local_dim() {
        let mult = frame.mult_matrix(var);
        for (j, f_row) in frame.ideal.space().basis().rows_iter().enumerate() {
            let f_poly = local_poly_from_jet(variety, f_row, frame.order);
            let xf = Poly::var(var).mul(&f_poly).truncate_above(frame.order);
            let xf_jet = jet_of_local_poly(variety, &xf, frame.order).expect("product is local");
            let coords = et.solve(&xf_jet).expect("the ideal is closed under multiplication");
            // sum_k coords[k] T[i][k] - sum_l mult[i][l] T[l][j] = 0
            for i in 0..card {
                let mut row = vec![Rat::zero(); n_unknowns];
                for (k, c) in coords.iter().enumerate() {
                    row[i * basis_count + k] += c.clone();
                }
                for l in 0..card {
                    row[l * basis_count + j] -= mult[(i, l)].clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        Matrix::zeros(0, n_unknowns)
    } else {
        Matrix::from_rows(rows)
    }
}

/// Basis of the tangent space Hom(I_Z/I_Z^2, O_Z) at [Z].
pub fn tangent_space(z: &ZeroScheme) -> Result<Vec<HilbTangent>> {
    let frames: Vec<TangentFrame> = z.components().iter().map(TangentFrame::new).collect();
    let mut out = Vec::new();
    for (ci, frame) in frames.iter().enumerate() {
        let card = frame.ring_dim();
        let basis_count = frame.ideal.space().dim();
        let sols = olinearity_constraints(frame).kernel();
        for s in sols.basis().rows_iter() {
            let mut m = Matrix::zeros(card, basis_count);
            for i in 0..card {
                for j in 0..basis_count {
                    m[(i, j)] = s[i * basis_count + j].clone();
                }
            }
            if m.is_zero() {
                continue;
            }
            let images: Vec<Matrix> = frames
                .iter()
                .enumerate()
                .map(|(cj, f)| {
                    if cj == ci {
                        m.clone()
                    } else {
                        Matrix::zeros(f.ring_dim(), f.ideal.space().dim())
                    }
                })
                .collect();
            out.push(assemble_from_parts(z, &frames, images)?);
        }
    }
    Ok(out)
}

/// Linear combination of tangent vectors at the same base.
pub fn tangent_combination(basis: &[HilbTangent], coeffs: &[Rat]) -> Result<HilbTangent> {
    if basis.is_empty() || coeffs.iter().all(Rat::is_zero) {
        return Err(Error::ZeroInput("all combination coefficients vanish".into()));
    }
    assert_eq!(basis.len(), coeffs.len(), "one coefficient per basis vector");
    let z = basis[0].base.clone();
    let frames = basis[0].frames.clone();
    let mut images: Vec<Matrix> = frames
        .iter()
        .map(|f| Matrix::zeros(f.ring_dim(), f.ideal.space().dim()))
        .collect();
    for (t, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        assert!(t.base == z, "tangent vectors at different base points");
        for (ci, img) in t.images.iter().enumerate() {
            for i in 0..img.row_count() {
                for j in 0..img.col_count() {
                    let add = c * &img[(i, j)];
                    images[ci][(i, j)] += add;
                }
            }
        }
    }
    assemble_from_parts(&z, &frames, images)
}

/// The ideal of elements the hom kills, together with I^2.
fn kernel_ideal_of(frame: &TangentFrame, img: &Matrix) -> Result<LocalIdeal> {
    let variety = frame.ideal.variety();
    let basis = frame.ideal.space().basis();
    let mut gens: Vec<Poly> = Vec::new();
    for c in img.kernel().basis().rows_iter() {
        let mut jet = vec![Rat::zero(); frame.ideal.space().ambient()];
        for (j, coef) in c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (slot, val) in basis.row(j).iter().enumerate() {
                jet[slot] += coef * val;
            }
        }
        gens.push(local_poly_from_jet(variety, &jet, frame.order));
    }
    for g in frame.square.space().basis().rows_iter() {
        gens.push(local_poly_from_jet(variety, g, frame.order));
    }
    // the ideal contains I^2 and hence m^(order+1), so truncation is exact
    LocalIdeal::from_local_generators(frame.ideal.center().clone(), &gens, Some(frame.order + 1))
}

/// Build a tangent vector from image matrices, deriving the rank and the
/// kernel scheme.
fn assemble_from_parts(
    z: &ZeroScheme,
    frames: &[TangentFrame],
    images: Vec<Matrix>,
) -> Result<HilbTangent> {
    let mut rank = 0usize;
    let mut kernel_comps = Vec::new();
    for (frame, img) in frames.iter().zip(&images) {
        rank += img.rank();
        kernel_comps.push(kernel_ideal_of(frame, img)?);
    }
    if rank == 0 {
        return Err(Error::ZeroInput("the zero hom is not a tangent direction".into()));
    }
    let kernel = ZeroScheme::from_components(z.variety(), kernel_comps)?;
    debug_assert_eq!(kernel.colength(), z.colength() + rank, "kernel colength is d + rank");
    Ok(HilbTangent { base: z.clone(), frames: frames.to_vec(), images, rank, kernel })
}

/// The tangent vector whose kernel is a prescribed ideal J with
/// I^2 inside J inside I. Components where J equals I get the zero hom.
pub fn tangent_with_kernel(z: &ZeroScheme, j: &ZeroScheme) -> Result<HilbTangent> {
    let frames: Vec<TangentFrame> = z.components().iter().map(TangentFrame::new).collect();
    let mut images = Vec::new();
    for frame in &frames {
        let card = frame.ring_dim();
        let basis_count = frame.ideal.space().dim();
        let j_comp = j
            .component_at(frame.ideal.center())
            .ok_or_else(|| Error::InvalidScheme("kernel scheme misses a center of the base".into()))?;
        let j_at = j_comp.at_order(frame.order);
        if !frame.ideal.space().contains(j_at.space()) {
            return Err(Error::InvalidScheme("kernel ideal is not inside the base ideal".into()));
        }
        if !j_at.space().contains(frame.square.space()) {
            return Err(Error::InvalidScheme("kernel ideal does not contain the square".into()));
        }
        // homs vanishing on J, among the O-linear ones
        let constraints = olinearity_constraints(frame);
        let et = frame.ideal.space().basis().transpose();
        let mut rows: Vec<Vec<Rat>> = constraints.rows_iter().map(<[Rat]>::to_vec).collect();
        let n_unknowns = card * basis_count;
        for g in j_at.space().basis().rows_iter() {
            let coords = et.solve(g).expect("kernel ideal inside the base ideal");
            for i in 0..card {
                let mut row = vec![Rat::zero(); n_unknowns];
                for (k, c) in coords.iter().enumerate() {
                    row[i * basis_count + k] = c.clone();
                }
                rows.push(row);
            }
        }
        let sols = Matrix::from_rows(rows).kernel();
        // candidates: each basis solution, their sum, and the zero hom (the
        // right choice when J = I at this center); keep the first whose
        // kernel reproduces J exactly
        let mut candidates: Vec<Matrix> = Vec::new();
        let mut sum = Matrix::zeros(card, basis_count);
        for s in sols.basis().rows_iter() {
            let mut m = Matrix::zeros(card, basis_count);
            for i in 0..card {
                for jj in 0..basis_count {
                    m[(i, jj)] = s[i * basis_count + jj].clone();
                    sum[(i, jj)] += &m[(i, jj)];
                }
            }
            candidates.push(m);
        }
        if candidates.len() > 1 {
            candidates.push(sum);
        }
        candidates.push(Matrix::zeros(card, basis_count));
        let mut chosen = None;
        for m in candidates {
            let built = kernel_ideal_of(frame, &m)?;
            if &built == j_comp {
                chosen = Some(m);
                break;
            }
        }
        let Some(m) = chosen else {
            return Err(Error::InvalidScheme("no tangent vector has the prescribed kernel".into()));
        };
        images.push(m);
    }
    assemble_from_parts(z, &frames, images)
}

// ---------------------------------------------------------------------------
// Lifting Hilbert tangents to the Grassmannian.

/// Evaluation of the series into the direct sum of component rings O/I:
/// rows indexed by the H0 basis, columns by the concatenated ring
/// coordinates.
fn evaluation_matrix(series: &LinearSeries, frames: &[TangentFrame]) -> Matrix {
    let h0 = series.h0();
    let total: usize = frames.iter().map(TangentFrame::ring_dim).sum();
    let mut m = Matrix::zeros(h0, total);
    let mut col0 = 0usize;
    for frame in frames {
        // transposed so row i is the jet of the i-th section
        let jm = jet_matrix(series, frame.ideal.center(), frame.order).transpose();
        for i in 0..h0 {
            let coords = frame.ring_coords(jm.row(i));
            for (k, c) in coords.into_iter().enumerate() {
                m[(i, col0 + k)] = c;
            }
        }
        col0 += frame.ring_dim();
    }
    m
}

/// The composite map W = H0(I_Z) -> I_Z/I_Z^2 -> O_Z induced by a tangent
/// vector: one row per basis vector of W, columns the concatenated ring
/// coordinates.
pub fn induced_map(series: &LinearSeries, t: &HilbTangent) -> Matrix {
    let w = section_space(series, t.base());
    let total: usize = t.frames.iter().map(TangentFrame::ring_dim).sum();
    let mut rows = Vec::new();
    for s in w.basis().rows_iter() {
        let mut row = vec![Rat::zero(); total];
        let mut col0 = 0usize;
        for (ci, frame) in t.frames.iter().enumerate() {
            let jm = jet_matrix(series, frame.ideal.center(), frame.order).transpose();
            let mut jet = vec![Rat::zero(); jm.col_count()];
            for (i, c) in s.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, v) in jm.row(i).iter().enumerate() {
                    jet[k] += c * v;
                }
            }
            debug_assert!(
                frame.ideal.space().contains_vector(&jet),
                "sections of I_Z restrict into the ideal"
            );
            let vals = t.hom(ci, &jet);
            for (k, v) in vals.into_iter().enumerate() {
                row[col0 + k] = v;
            }
            col0 += frame.ring_dim();
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// The induced map re-expressed as a Grassmannian tangent datum at the
/// section-space point: for each basis section a representative in H0 of
/// its O_Z value.
fn composite_to_dual_rows(series: &LinearSeries, t: &HilbTangent) -> (GrassmannPoint, Matrix) {
    let w = section_space(series, t.base());
    let base = GrassmannPoint::new(w.clone());
    let induced = induced_map(series, t);
    let evt = evaluation_matrix(series, &t.frames).transpose();
    let h0 = series.h0();
    let k = w.dim();
    let mut images = Matrix::zeros(k, h0);
    for (r, vals) in induced.rows_iter().enumerate() {
        let g = evt.solve(vals).expect("evaluation onto O_Z values is surjective");
        for (c, val) in g.into_iter().enumerate() {
            images[(r, c)] = val;
        }
    }
    (base, images)
}

/// Lift a Hilbert tangent at [Z] to a tangent of the Grassmannian at the
/// section-space point. The lift keeps the rank when the series separates
/// enough jets; a rank drop is reported as a very-ampleness failure.
pub fn tangent_lift(series: &LinearSeries, t: &HilbTangent) -> Result<GrTangentVector> {
    let (base, images) = composite_to_dual_rows(series, t);
    let lifted = GrTangentVector::new(base, &images)?;
    if lifted.rank() != t.rank() {
        return Err(Error::NotVeryAmple {
            needed: t.base().colength() + t.rank() - 1,
            detail: format!(
                "tangent of rank {} lifted to rank {}; the series does not separate enough jets",
                t.rank(),
                lifted.rank()
            ),
        });
    }
    Ok(lifted)
}

/// Pluecker direction of the lifted tangent at a Hilbert point, on the
/// dual (annihilator) side. Well defined up to adding multiples of the
/// base Pluecker vector, which the line span absorbs.
fn lift_direction(series: &LinearSeries, at: &HilbPoint, t: &HilbTangent) -> Vec<Rat> {
    let (gr_base, images) = composite_to_dual_rows(series, t);
    let w = gr_base.subspace();
    let dual = at.dual().clone();
    let k = dual.dim();
    let n = dual.ambient();
    // a functional phi on H0 vanishing on W deforms to phi - eps psi with
    // psi agreeing with phi of the hom images on W
    let mut dir = Matrix::zeros(k, n);
    let wb = w.basis();
    for (i, phi) in dual.basis().rows_iter().enumerate() {
        let mut vals = vec![Rat::zero(); wb.row_count()];
        for (r, img_row) in images.rows_iter().enumerate() {
            let mut acc = Rat::zero();
            for (c, x) in img_row.iter().enumerate() {
                if !x.is_zero() {
                    acc += &phi[c] * x;
                }
            }
            vals[r] = acc;
        }
        let ext = functional_through_basis(wb, &vals, n);
        for (c, v) in ext.into_iter().enumerate() {
            dir[(i, c)] = -v;
        }
    }
    wedge_direction(&GrassmannPoint::new(dual), &dir).to_dense()
}

/// The line in Pluecker space traced by a lifted tangent: the span of the
/// base Pluecker vector and the derivative direction.
pub fn lifted_line(series: &LinearSeries, t: &HilbTangent) -> Result<Subspace> {
    let base_pt = embed(series, t.base())?;
    let dir = lift_direction(series, &base_pt, t);
    let pl = base_pt.plucker_dual().to_dense();
    let amb = pl.len();
    let line = Subspace::span(amb, vec![pl, dir]);
    if line.dim() != 2 {
        return Err(Error::Degenerate(
            "the lift direction is proportional to the base Pluecker vector".into(),
        ));
    }
    Ok(line)
}

/// A functional on the ambient space agreeing with prescribed values on the
/// rows of an echelonized basis and vanishing on the non-pivot unit
/// directions.
fn functional_through_basis(basis: &Matrix, vals: &[Rat], ambient: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); ambient];
    for (r, row) in basis.rows_iter().enumerate() {
        let lead = (0..ambient).find(|&c| !row[c].is_zero()).expect("nonzero basis row");
        // in reduced echelon form other rows vanish at this pivot, so the
        // pivot coordinate alone realizes the prescribed value
        out[lead] = vals[r].clone();
    }
    out
}

// ---------------------------------------------------------------------------
// Compatibilities between a tangent and its lift.

/// Diagnostics relating a tangent t at Z, its kernel ideal J, and the
/// associated section spaces.
#[derive(Clone, Debug)]
pub struct DaggerReport {
    /// The values t attains on sections of I_Z exhaust the image of t on
    /// the whole ideal, so the section-level preimage of im(t) determines
    /// the same subspace as the sheaf-level one.
    pub preimage_matches: bool,
    /// ker of the induced map equals the sections through the kernel
    /// scheme, with codimension d + rank.
    pub kernel_matches: bool,
    /// The kernel scheme is supported exactly on supp(Z).
    pub support_matches: bool,
}

impl DaggerReport {
    pub fn all_hold(&self) -> bool {
        self.preimage_matches && self.kernel_matches && self.support_matches
    }
}

/// Check the three compatibilities for a tangent vector.
pub fn dagger_check(series: &LinearSeries, t: &HilbTangent) -> Result<DaggerReport> {
    let w = section_space(series, t.base());
    let induced = induced_map(series, t);
    let ker_space = combine_rows(&w, induced.transpose().kernel());
    let j_space = section_space(series, t.kernel_scheme());
    let kernel_matches =
        ker_space == j_space && ker_space.codim() == t.base().colength() + t.rank();
    let supp_z: BTreeSet<&Point> = t.base().support().into_iter().collect();
    let supp_j: BTreeSet<&Point> = t.kernel_scheme().support().into_iter().collect();
    let support_matches = supp_z == supp_j;
    let full_image = tangent_image_space(t);
    let section_image = Subspace::span(
        induced.col_count(),
        induced.rows_iter().map(<[Rat]>::to_vec).collect(),
    );
    let preimage_matches = full_image == section_image;
    Ok(DaggerReport { preimage_matches, kernel_matches, support_matches })
}

/// Combinations of the rows of a subspace basis prescribed by coefficient
/// vectors, returned as a subspace of the same ambient.
fn combine_rows(space: &Subspace, coeffs: Subspace) -> Subspace {
    let mut rows = Vec::new();
    for c in coeffs.basis().rows_iter() {
        let mut v = vec![Rat::zero(); space.ambient()];
        for (j, coef) in c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (slot, x) in space.basis().row(j).iter().enumerate() {
                v[slot] += coef * x;
            }
        }
        rows.push(v);
    }
    Subspace::span(space.ambient(), rows)
}

/// Image of the hom on the whole ideal, inside the concatenated ring
/// coordinates.
fn tangent_image_space(t: &HilbTangent) -> Subspace {
    let total: usize = t.frames.iter().map(TangentFrame::ring_dim).sum();
    let mut rows = Vec::new();
    let mut col0 = 0usize;
    for (frame, img) in t.frames.iter().zip(&t.images) {
        for j in 0..img.col_count() {
            let mut row = vec![Rat::zero(); total];
            for i in 0..img.row_count() {
                row[col0 + i] = img[(i, j)].clone();
            }
            rows.push(row);
        }
        col0 += frame.ring_dim();
    }
    Subspace::span(total, rows)
}

// ---------------------------------------------------------------------------
// Lines in Pluecker space: intersections.

#[derive(Clone, Debug)]
pub enum LineMeet {
    Empty,
    Point(MultiVector),
    Equal,
}

/// Intersect two lines given as 2-dimensional subspaces of the Pluecker
/// space of Gr(k, n). The degree data reconstructs the meeting point as a
/// multivector.
pub fn line_intersection(n: usize, k: usize, l1: &Subspace, l2: &Subspace) -> Result<LineMeet> {
    if l1.dim() != 2 || l2.dim() != 2 {
        return Err(Error::NotALine(
            "lines must be 2-dimensional subspaces of the Pluecker space".into(),
        ));
    }
    let amb = binomial(n, k);
    assert_eq!(l1.ambient(), amb, "line lives in the wrong Pluecker space");
    assert_eq!(l2.ambient(), amb, "line lives in the wrong Pluecker space");
    let meet = l1.intersect(l2);
    match meet.dim() {
        0 => Ok(LineMeet::Empty),
        1 => Ok(LineMeet::Point(MultiVector::from_dense(n, k, meet.basis().row(0)))),
        _ => Ok(LineMeet::Equal),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

// ---------------------------------------------------------------------------
// Membership: is a decomposable d-vector the image of a subscheme?

#[derive(Clone, Debug)]
pub enum Membership {
    Yes(ZeroScheme),
    No { reason: String },
}

/// Decide whether a d-vector is the Pluecker coordinate of a Hilbert
/// point. The d-plane spanned by omega corresponds to the codimension-d
/// section space W; omega is on the Hilbert scheme iff some length-d
/// subscheme of the base locus of W has section space exactly W.
pub fn membership_in_hilb(series: &LinearSeries, omega: &MultiVector) -> Result<Membership> {
    assert_eq!(omega.ambient(), series.h0(), "multivector ambient differs from h0");
    if omega.is_zero() {
        return Err(Error::ZeroInput("zero multivector".into()));
    }
    let d = omega.degree();
    if d == 2 {
        match omega.two_vector_rank()? {
            2 => {}
            r => {
                return Ok(Membership::No {
                    reason: format!("a 2-vector of rank {r} is not decomposable"),
                })
            }
        }
    } else if !omega.is_decomposable() {
        return Ok(Membership::No { reason: "not decomposable".into() });
    }
    if !is_k_very_ample(series, d) {
        return Ok(Membership::No {
            reason: format!("O({}) does not separate length-{} subschemes", series.degree(), d),
        });
    }
    let u = omega.kernel_of_wedge();
    debug_assert_eq!(u.dim(), d);
    let w = u.annihilator();
    match series.variety() {
        Variety::P1 => p1_membership(series, &w, d),
        Variety::P2 => p2_membership(series, &w, d),
    }
}

/// P1: the base locus of W is the common divisor of its basis forms, and
/// membership holds iff that divisor has degree d and cuts out W.
fn p1_membership(series: &LinearSeries, w: &Subspace, d: usize) -> Result<Membership> {
    let a = series.degree() as usize;
    let forms: Vec<UniPoly> = w.basis().rows_iter().map(|r| p1_affine_poly(r)).collect();
    let (g, inf) = binary_forms_gcd(&forms, a);
    let base = Divisor::from_binary_form(&g, inf)?;
    if base.degree() < d {
        return Ok(Membership::No {
            reason: format!(
                "base locus of the section space has degree {} instead of {}",
                base.degree(),
                d
            ),
        });
    }
    let candidate = embed_divisor(series, &base)?;
    if candidate.sections() != w {
        return Ok(Membership::No {
            reason: "the base divisor does not cut out the section space".into(),
        });
    }
    match base.to_scheme() {
        Ok(z) => Ok(Membership::Yes(z)),
        // the point exists over an extension field only
        Err(e) => Err(e),
    }
}

/// P2: reconstruct the subscheme from the rational base points of W by
/// resultant elimination. An irrational base locus is reported, not
/// approximated.
fn p2_membership(series: &LinearSeries, w: &Subspace, d: usize) -> Result<Membership> {
    let Some(z) = p2_scheme_from_sections(series, w, d)? else {
        return Ok(Membership::No {
            reason: "no length-d subscheme of the base locus cuts out the section space".into(),
        });
    };
    let candidate = embed(series, &z)?;
    if candidate.sections() == w {
        Ok(Membership::Yes(z))
    } else {
        Ok(Membership::No {
            reason: "the base scheme does not cut out the section space".into(),
        })
    }
}

/// The length-d subscheme with section space W, when one exists: rational
/// support via elimination, then local ideals read off the exact local
/// expansions of the sections.
fn p2_scheme_from_sections(
    series: &LinearSeries,
    w: &Subspace,
    d: usize,
) -> Result<Option<ZeroScheme>> {
    let points = p2_base_points(series, w)?;
    if points.is_empty() {
        return Ok(None);
    }
    let mut comps = Vec::new();
    for p in &points {
        let gens: Vec<Poly> = w
            .basis()
            .rows_iter()
            .map(|s| series.section_from_dense(s).subst(&p.local_substitution()))
            .collect();
        if gens.iter().any(|g| !g.eval(&[Rat::zero(), Rat::zero(), Rat::zero()]).is_zero()) {
            continue;
        }
        // local expansions are exact polynomials, so no truncation guard
        let ideal = LocalIdeal::from_local_generators(p.clone(), &gens, None)?;
        comps.push(ideal);
    }
    if comps.is_empty() {
        return Ok(None);
    }
    let full = ZeroScheme::from_components(Variety::P2, comps)?;
    if full.colength() == d {
        Ok(Some(full))
    } else {
        Ok(None)
    }
}

/// Rational common zeros of a space of plane curves, by pairwise resultants
/// in the three standard charts. An incomplete root search surfaces as
/// `NonRationalSupport` only when it could hide a zero.
fn p2_base_points(series: &LinearSeries, w: &Subspace) -> Result<Vec<Point>> {
    let curves: Vec<Poly> = w.basis().rows_iter().map(|s| series.section_from_dense(s)).collect();
    if curves.is_empty() {
        return Ok(Vec::new());
    }
    let mut found: BTreeSet<Point> = BTreeSet::new();
    let mut incomplete = false;
    for chart in 0..3usize {
        let vars: Vec<usize> = (0..3).filter(|&v| v != chart).collect();
        let affine: Vec<Poly> = curves.iter().map(|f| chart_affine(f, chart)).collect();
        let mut elim: Vec<UniPoly> = Vec::new();
        for g in &affine[1..] {
            let r = resultant_bivariate(&affine[0], g, 1);
            if !r.is_zero() {
                elim.push(r);
            }
        }
        if elim.is_empty() {
            // all resultants vanish identically: the curves share a
            // component through this chart, so no isolated zeros here
            continue;
        }
        let mut acc = elim[0].clone();
        for e in &elim[1..] {
            acc = uni_gcd(&acc, e);
        }
        if acc.degree().is_none() {
            continue;
        }
        let search = rational_roots(&acc, DEFAULT_ROOT_HEIGHT);
        if !search.complete || search.residual.degree().map_or(false, |dg| dg > 0) {
            incomplete = true;
        }
        for (x0, _) in &search.roots {
            let mut candidates_y: Vec<Rat> = Vec::new();
            let mut constrained = false;
            for f in &affine {
                let sub = substitute_coordinate(f, 0, x0);
                let uy = sub.to_univariate(1).expect("one variable remains");
                if uy.is_zero() {
                    continue;
                }
                let ys = rational_roots(&uy, DEFAULT_ROOT_HEIGHT);
                if !ys.complete || ys.residual.degree().map_or(false, |dg| dg > 0) {
                    incomplete = true;
                }
                let roots: Vec<Rat> = ys.roots.iter().map(|(r, _)| r.clone()).collect();
                if constrained {
                    candidates_y.retain(|c| roots.contains(c));
                } else {
                    candidates_y = roots;
                    constrained = true;
                }
            }
            if !constrained {
                // every curve vanishes on this whole fiber; no isolated
                // zeros to report on it
                continue;
            }
            for y0 in candidates_y {
                let mut proj = vec![Rat::zero(); 3];
                proj[chart] = Rat::one();
                proj[vars[0]] = x0.clone();
                proj[vars[1]] = y0;
                let p = Point::new(Variety::P2, proj).expect("chart coordinate is nonzero");
                let coords: [Rat; 3] =
                    [p.coords()[0].clone(), p.coords()[1].clone(), p.coords()[2].clone()];
                if curves.iter().all(|f| f.eval(&coords).is_zero()) {
                    found.insert(p);
                }
            }
        }
    }
    if found.is_empty() && incomplete {
        return Err(Error::NonRationalSupport(
            "elimination left unresolved irrational root candidates".into(),
        ));
    }
    Ok(found.into_iter().collect())
}

/// Set projective coordinate `chart` to 1 and relabel the two remaining
/// coordinates, in increasing order, as variables 0 and 1.
fn chart_affine(f: &Poly, chart: usize) -> Poly {
    let mut reps: Vec<Poly> = vec![Poly::zero(); 3];
    reps[chart] = Poly::constant(Rat::one());
    let others: Vec<usize> = (0..3).filter(|&v| v != chart).collect();
    reps[others[0]] = Poly::var(0);
    reps[others[1]] = Poly::var(1);
    let reps: [Poly; 3] = [reps[0].clone(), reps[1].clone(), reps[2].clone()];
    f.subst(&reps)
}

/// Substitute a constant for one variable.
fn substitute_coordinate(f: &Poly, var: usize, value: &Rat) -> Poly {
    let mut reps: Vec<Poly> = (0..3).map(Poly::var).collect();
    reps[var] = Poly::constant(value.clone());
    let reps: [Poly; 3] = [reps[0].clone(), reps[1].clone(), reps[2].clone()];
    f.subst(&reps)
}

// ---------------------------------------------------------------------------
// Decompositions of 2-vectors: secant and tangent witnesses.

/// One way of writing a 2-vector as a point on a line meeting the Hilbert
/// scheme image: a secant line through two distinct points or a tangent
/// line at one point.
#[derive(Clone, Debug)]
pub enum WitnessKind {
    Secant { z1: HilbPoint, z2: HilbPoint },
    Tangent { z: HilbPoint, tangent: HilbTangent },
}

#[derive(Clone, Debug)]
pub struct DecompositionWitness {
    pub kind: WitnessKind,
    /// The line as a 2-dimensional subspace of the dense Pluecker space.
    pub line: Subspace,
}

impl DecompositionWitness {
    pub fn describe(&self) -> String {
        match &self.kind {
            WitnessKind::Secant { z1, z2 } => {
                format!("secant through {{{}}} and {{{}}}", z1.rep().describe(), z2.rep().describe())
            }
            WitnessKind::Tangent { z, .. } => format!("tangent at {{{}}}", z.rep().describe()),
        }
    }
}

/// Order the pair canonically so a witness found twice deduplicates.
fn secant_witness(a: HilbPoint, b: HilbPoint, line: Subspace) -> DecompositionWitness {
    let (z1, z2) = if a.rep().describe() <= b.rep().describe() { (a, b) } else { (b, a) };
    DecompositionWitness { kind: WitnessKind::Secant { z1, z2 }, line }
}

/// Result of a decomposition search for a 2-vector.
#[derive(Clone, Debug)]
pub struct Decompositions {
    /// Set when the vector is itself a Hilbert point; no line witnesses are
    /// reported in that case.
    pub on_variety: Option<ZeroScheme>,
    pub witnesses: Vec<DecompositionWitness>,
    /// False when a bounded root search may have missed witnesses.
    pub complete: bool,
}

/// All ways (up to `WITNESS_CAP`) of exhibiting a 2-vector as a point on a
/// secant or tangent line of the Hilbert scheme of 2 points. Supported
/// ranks of the input: 2 (delegates to membership) and 4.
pub fn secant_decompositions(series: &LinearSeries, omega: &MultiVector) -> Result<Decompositions> {
    if omega.degree() != 2 {
        return Err(Error::Config("the decomposition search handles 2-vectors only".into()));
    }
    assert_eq!(omega.ambient(), series.h0(), "multivector ambient differs from h0");
    if omega.is_zero() {
        return Err(Error::ZeroInput("zero multivector".into()));
    }
    match omega.two_vector_rank()? {
        2 => match membership_in_hilb(series, omega)? {
            Membership::Yes(z) => {
                Ok(Decompositions { on_variety: Some(z), witnesses: Vec::new(), complete: true })
            }
            Membership::No { .. } => decomposable_off_variety(series, omega),
        },
        4 => rank_four_decompositions(series, omega),
        r => Err(Error::RankOutOfScope(r)),
    }
}

/// A rank-2 vector off the Hilbert image spans a 2-plane U; any line
/// through [U] meeting the image twice shares a base place with U, so the
/// search runs over degree-1 base places of ann(U) and solves for partner
/// points.
fn decomposable_off_variety(series: &LinearSeries, omega: &MultiVector) -> Result<Decompositions> {
    match series.variety() {
        Variety::P1 => decomposable_p1_witnesses(series, omega),
        Variety::P2 => Err(Error::NonEnumerableBase(
            "secant lines through a decomposable point off the P2 image form a family the \
             rational search does not enumerate"
                .into(),
        )),
    }
}

/// Partner-point search on P1. Three collinear points of Gr(2, n) have
/// pairwise intersections equal to one common 1-dimensional center, so a
/// line through [U] meeting the image at divisors h1 and h2 forces a
/// degree-1 place p common to h1, h2 whose evaluation spans the centers.
/// That place is a base point of ann(U); partners are found by exact
/// elimination and every candidate pair is verified by the span test.
fn decomposable_p1_witnesses(series: &LinearSeries, omega: &MultiVector) -> Result<Decompositions> {
    let a = series.degree() as usize;
    let mut witnesses: Vec<DecompositionWitness> = Vec::new();
    let mut incomplete = false;
    if a < 3 {
        // with h0 <= 3 membership has already classified every 2-vector,
        // so an off-image vector admits no secant pencil here
        return Ok(Decompositions { on_variety: None, witnesses, complete: true });
    }
    let u = omega.kernel_of_wedge();
    debug_assert_eq!(u.dim(), 2);
    let w = u.annihilator();
    let forms: Vec<UniPoly> = w.basis().rows_iter().map(|r| p1_affine_poly(r)).collect();
    let (g0, inf) = binary_forms_gcd(&forms, a);
    let base = Divisor::from_binary_form(&g0, inf)?;
    let dense = omega.to_dense();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (place, _) in base.places() {
        if place.degree() != 1 {
            continue;
        }
        if witnesses.len() >= WITNESS_CAP {
            break;
        }
        shared_place_witnesses(series, &dense, &u, place, &mut witnesses, &mut seen, &mut incomplete)?;
    }
    if witnesses.is_empty() && incomplete {
        return Err(Error::NonRationalSupport(
            "the partner search hit irrational candidates and found no rational witness".into(),
        ));
    }
    witnesses.sort_by_key(|w| w.describe());
    Ok(Decompositions { on_variety: None, witnesses, complete: !incomplete })
}

/// Second point of a candidate divisor through the shared place p.
enum Partner {
    Double,
    AtInfinity,
    Finite(Rat),
}

fn partner_divisor(p: &Place, partner: &Partner) -> Divisor {
    match partner {
        Partner::Double => Divisor::new(vec![(p.clone(), 2)]),
        Partner::AtInfinity => Divisor::new(vec![(p.clone(), 1), (Place::Infinity, 1)]),
        Partner::Finite(s) => Divisor::new(vec![(p.clone(), 1), (Place::Finite(s.clone()), 1)]),
    }
}

fn shared_place_witnesses(
    series: &LinearSeries,
    omega_dense: &[Rat],
    u: &Subspace,
    p: &Place,
    witnesses: &mut Vec<DecompositionWitness>,
    seen: &mut BTreeSet<String>,
    incomplete: &mut bool,
) -> Result<()> {
    let n = series.h0();
    let a = series.degree() as usize;
    let amb = omega_dense.len();
    let ev_p = p1_place_eval(series, p);
    debug_assert!(u.contains_vector(&ev_p), "base place evaluation lies in the span plane");
    // a vector spanning U together with ev_p
    let u0 = u.basis().row(0).to_vec();
    let u1 = u.basis().row(1).to_vec();
    let g = if Subspace::span(n, vec![ev_p.clone(), u0.clone()]).dim() == 2 { u0 } else { u1 };
    let mut seeds: Vec<Partner> = vec![Partner::Double];
    if !matches!(p, Place::Infinity) {
        seeds.push(Partner::AtInfinity);
    }
    for v in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5] {
        seeds.push(Partner::Finite(rat(v)));
    }
    for (num, den) in [(1i64, 2i64), (-1, 2), (3, 2), (-3, 2), (1, 3), (-1, 3)] {
        seeds.push(Partner::Finite(crate::rat::ratio(num, den)));
    }
    seeds.retain(|s| match (s, p) {
        (Partner::Finite(v), Place::Finite(t)) => v != t,
        _ => true,
    });
    let try_pair = |h1: &Divisor,
                    h2: &Divisor,
                    witnesses: &mut Vec<DecompositionWitness>,
                    seen: &mut BTreeSet<String>|
     -> Result<()> {
        if h1 == h2 {
            return Ok(());
        }
        let hp1 = embed_divisor(series, h1)?;
        let hp2 = embed_divisor(series, h2)?;
        let line =
            Subspace::span(amb, vec![hp1.plucker_dual().to_dense(), hp2.plucker_dual().to_dense()]);
        if line.dim() != 2 || !line.contains_vector(omega_dense) {
            return Ok(());
        }
        let witness = secant_witness(hp1, hp2, line);
        if seen.insert(witness.describe()) {
            witnesses.push(witness);
        }
        Ok(())
    };
    for seed in &seeds {
        if witnesses.len() >= WITNESS_CAP {
            break;
        }
        let h1 = partner_divisor(p, seed);
        let h1_pt = embed_divisor(series, &h1)?;
        let t_space = h1_pt.dual();
        let g_bar = t_space.reduce_vector(&g);
        if g_bar.iter().all(Rat::is_zero) {
            // omega is proportional to this divisor's Pluecker image
            continue;
        }
        // partners at the distinguished places first
        if !matches!(seed, Partner::Double) {
            try_pair(&h1, &partner_divisor(p, &Partner::Double), witnesses, seen)?;
        }
        if !matches!(p, Place::Infinity) && !matches!(seed, Partner::AtInfinity) {
            try_pair(&h1, &partner_divisor(p, &Partner::AtInfinity), witnesses, seen)?;
        }
        // finite partners: on a common line the plane of the partner meets
        // the plane of h1 in <ev_p>, forcing g mod U_h1 to be proportional
        // to the partner evaluation mod U_h1; a polynomial condition in the
        // partner coordinate, solved through 2x2 minors and their gcd
        let cols: Vec<Vec<Rat>> =
            (0..n).map(|k| t_space.reduce_vector(&unit_vector(n, k))).collect();
        let polys: Vec<UniPoly> = (0..n)
            .map(|i| {
                let mut coeffs = vec![Rat::zero(); a + 1];
                for (k, col) in cols.iter().enumerate() {
                    coeffs[a - k] = col[i].clone();
                }
                UniPoly::from_coeffs(coeffs)
            })
            .collect();
        let j0 = (0..n).find(|&i| !g_bar[i].is_zero()).expect("g_bar is nonzero");
        let mut acc: Option<UniPoly> = None;
        for i in 0..n {
            if i == j0 {
                continue;
            }
            let minor = polys[i].scale(&g_bar[j0]).sub(&polys[j0].scale(&g_bar[i]));
            if minor.is_zero() {
                continue;
            }
            acc = Some(match acc {
                None => minor,
                Some(prev) => uni_gcd(&prev, &minor),
            });
        }
        let Some(system) = acc else { continue };
        if system.degree().is_none() {
            continue;
        }
        let roots = rational_roots(&system, DEFAULT_ROOT_HEIGHT);
        if !roots.complete || roots.residual.degree().map_or(false, |dg| dg > 0) {
            *incomplete = true;
        }
        for (root, _) in &roots.roots {
            if witnesses.len() >= WITNESS_CAP {
                break;
            }
            if let Place::Finite(t) = p {
                if t == root {
                    continue;
                }
            }
            if let Partner::Finite(s) = seed {
                if s == root {
                    continue;
                }
            }
            try_pair(&h1, &partner_divisor(p, &Partner::Finite(root.clone())), witnesses, seen)?;
        }
    }
    Ok(())
}

/// Full search for rank-4 2-vectors: secant lines through pairs of
/// length-2 subschemes of the base locus, and tangent lines at them.
fn rank_four_decompositions(series: &LinearSeries, omega: &MultiVector) -> Result<Decompositions> {
    // both planes of a witnessing pair lie inside the 4-space spanned by
    // omega, so every witness subscheme sits in the base locus of the
    // codimension-4 system annihilating that span
    let support = omega.support();
    debug_assert_eq!(support.dim(), 4);
    let system = support.annihilator();
    if system.dim() == 0 {
        // h0 = 4: the span is the whole section space and every length-2
        // subscheme is a candidate, so there is nothing to enumerate
        return Err(Error::NonEnumerableBase(
            "the 2-vector spans the whole section space; the candidate set is the full Hilbert square"
                .into(),
        ));
    }
    let candidates = length_two_candidates(series, &system)?;
    let dense = omega.to_dense();
    let amb = dense.len();
    let mut witnesses = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            if witnesses.len() >= WITNESS_CAP {
                break;
            }
            let line = Subspace::span(
                amb,
                vec![
                    candidates[i].plucker_dual().to_dense(),
                    candidates[j].plucker_dual().to_dense(),
                ],
            );
            if line.dim() == 2 && line.contains_vector(&dense) {
                let witness = secant_witness(candidates[i].clone(), candidates[j].clone(), line);
                if seen.insert(witness.describe()) {
                    witnesses.push(witness);
                }
            }
        }
    }
    for cand in &candidates {
        if witnesses.len() >= WITNESS_CAP {
            break;
        }
        if let Some(witness) = tangent_witness_at(series, cand, &dense, amb)? {
            if seen.insert(witness.describe()) {
                witnesses.push(witness);
            }
        }
    }
    witnesses.sort_by_key(|w| w.describe());
    Ok(Decompositions { on_variety: None, witnesses, complete: true })
}

/// Length-2 subschemes of the base locus of a system of sections.
fn length_two_candidates(series: &LinearSeries, system: &Subspace) -> Result<Vec<HilbPoint>> {
    match series.variety() {
        Variety::P1 => {
            let a = series.degree() as usize;
            let forms: Vec<UniPoly> =
                system.basis().rows_iter().map(|r| p1_affine_poly(r)).collect();
            let (g, inf) = binary_forms_gcd(&forms, a);
            let base = Divisor::from_binary_form(&g, inf)?;
            let mut out = Vec::new();
            for sub in base.subdivisors(2) {
                out.push(embed_divisor(series, &sub)?);
            }
            Ok(out)
        }
        Variety::P2 => {
            let points = p2_base_points(series, system)?;
            if points.is_empty() {
                return Err(Error::NonEnumerableBase(
                    "the system has no rational base points to enumerate".into(),
                ));
            }
            let mut out = Vec::new();
            for i in 0..points.len() {
                for j in (i + 1)..points.len() {
                    let z =
                        ZeroScheme::reduced(Variety::P2, &[points[i].clone(), points[j].clone()])?;
                    out.push(embed(series, &z)?);
                }
            }
            // doubled points: the tangent direction must be annihilated by
            // the linear parts of the local system
            for p in &points {
                let gens: Vec<Poly> = system
                    .basis()
                    .rows_iter()
                    .map(|s| series.section_from_dense(s).subst(&p.local_substitution()))
                    .collect();
                if gens.iter().any(|g| !g.eval(&[Rat::zero(), Rat::zero(), Rat::zero()]).is_zero())
                {
                    continue;
                }
                let ideal = LocalIdeal::from_local_generators(p.clone(), &gens, None)?;
                let lin = ideal.degree_one_part();
                match lin.dim() {
                    1 => {
                        // every local element then has linear part along the
                        // gradient, so the doubled point in the orthogonal
                        // direction automatically sits in the base locus
                        let grad = lin.basis().row(0);
                        let dir = [-grad[1].clone(), grad[0].clone()];
                        let z = ZeroScheme::curvilinear(p.clone(), &dir, 2)?;
                        debug_assert!(z.components()[0].contains_ideal(&ideal));
                        out.push(embed(series, &z)?);
                    }
                    0 => {
                        // the whole first-order neighborhood is free, so
                        // infinitely many doubled points qualify
                        return Err(Error::NonEnumerableBase(
                            "a base point carries a full first-order neighborhood of doubled \
                             points"
                                .into(),
                        ));
                    }
                    _ => {}
                }
            }
            Ok(out)
        }
    }
}

/// Tangent-line witness at a candidate Hilbert point, when one exists: a
/// tangent vector t at Z with omega on the line spanned by the Pluecker
/// image and the lift direction. The direction map is linear in t, so a
/// single solve settles existence.
fn tangent_witness_at(
    series: &LinearSeries,
    cand: &HilbPoint,
    omega_dense: &[Rat],
    amb: usize,
) -> Result<Option<DecompositionWitness>> {
    let Some(z) = cand.scheme() else {
        // tangents at conjugate-pair points are outside the rational model
        return Ok(None);
    };
    let pl = cand.plucker_dual().to_dense();
    let line = Subspace::span(amb, vec![pl.clone(), omega_dense.to_vec()]);
    if line.dim() != 2 {
        return Ok(None);
    }
    let basis = tangent_space(z)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let dirs: Vec<Vec<Rat>> =
        basis.iter().map(|t| lift_direction(series, cand, t)).collect();
    // solve omega = alpha * pl + sum_i c_i dir_i
    let mut cols = vec![pl.clone()];
    cols.extend(dirs);
    let m = Matrix::from_rows(cols).transpose();
    let Some(sol) = m.solve(omega_dense) else {
        return Ok(None);
    };
    let coeffs: Vec<Rat> = sol[1..].to_vec();
    if coeffs.iter().all(Rat::is_zero) {
        return Ok(None);
    }
    let t = tangent_combination(&basis, &coeffs)?;
    let dir = lift_direction(series, cand, &t);
    let wline = Subspace::span(amb, vec![pl, dir]);
    if wline.dim() != 2 || !wline.contains_vector(omega_dense) {
        return Ok(None);
    }
    Ok(Some(DecompositionWitness {
        kind: WitnessKind::Tangent { z: cand.clone(), tangent: t },
        line: wline,
    }))
}

// ---------------------------------------------------------------------------
// Identifiability.

#[derive(Clone, Debug)]
pub enum Certificate {
    /// The point is on the Hilbert scheme image itself.
    OnVariety(ZeroScheme),
    /// Exactly one decomposition line, found by a complete search.
    Identifiable(DecompositionWitness),
    /// At least two distinct decomposition lines.
    NonIdentifiable(Vec<DecompositionWitness>),
    /// A complete search found no witness line at all.
    NoDecompositionFound,
}

/// Classify a 2-vector by its decomposition witnesses.
pub fn identifiability_certificate(
    series: &LinearSeries,
    omega: &MultiVector,
) -> Result<Certificate> {
    let dec = secant_decompositions(series, omega)?;
    if let Some(z) = dec.on_variety {
        return Ok(Certificate::OnVariety(z));
    }
    match dec.witnesses.len() {
        0 => {
            if dec.complete {
                Ok(Certificate::NoDecompositionFound)
            } else {
                Err(Error::NonRationalSupport(
                    "an incomplete witness search found nothing rational".into(),
                ))
            }
        }
        1 if dec.complete => {
            Ok(Certificate::Identifiable(dec.witnesses.into_iter().next().unwrap()))
        }
        _ => Ok(Certificate::NonIdentifiable(dec.witnesses)),
    }
}

// ---------------------------------------------------------------------------
// Fiber rank of the line-collapsing resolution.

/// Rank contributed by evaluation at x against the restriction of degree-r
/// forms on the Pluecker space to a witness line. The value is the rank of
/// the combined matrix minus the rank of the restriction alone, plus one:
/// for x on the line the evaluation is itself a restriction value, so the
/// result is 1 exactly when the fiber over x is a single reduced point.
pub fn fiber_rank(
    series: &LinearSeries,
    x: &MultiVector,
    witness: &DecompositionWitness,
    r: usize,
) -> Result<usize> {
    if r == 0 {
        return Err(Error::Config("the fiber computation needs r >= 1".into()));
    }
    let n = binomial(series.h0(), 2);
    assert_eq!(witness.line.ambient(), n, "witness line in the wrong Pluecker space");
    let dense = x.to_dense();
    assert_eq!(dense.len(), n, "point in the wrong Pluecker space");
    if !witness.line.contains_vector(&dense) {
        return Err(Error::Degenerate("the point is not on the witness line".into()));
    }
    let v1 = witness.line.basis().row(0).to_vec();
    let v2 = witness.line.basis().row(1).to_vec();
    let monomials = degree_monomials(n, r);
    let mut rows = Vec::with_capacity(monomials.len());
    for mono in &monomials {
        let mut row = Vec::with_capacity(r + 2);
        row.push(eval_monomial(mono, &dense));
        row.extend(restrict_monomial(mono, &v1, &v2, r));
        rows.push(row);
    }
    let m = Matrix::from_rows(rows);
    let full_rank = m.rank();
    let mut restr = Matrix::zeros(m.row_count(), r + 1);
    for i in 0..m.row_count() {
        for j in 0..(r + 1) {
            restr[(i, j)] = m[(i, j + 1)].clone();
        }
    }
    Ok(full_rank - restr.rank() + 1)
}

/// Kernel dimension of the restriction of degree-r forms on the Pluecker
/// space to a line. Exposed to cross-check the fiber computation against
/// the symmetric-power decomposition of that kernel.
pub fn line_restriction_kernel_dim(line: &Subspace, r: usize) -> usize {
    let v1 = line.basis().row(0).to_vec();
    let v2 = line.basis().row(1).to_vec();
    let monomials = degree_monomials(line.ambient(), r);
    let rows: Vec<Vec<Rat>> =
        monomials.iter().map(|mono| restrict_monomial(mono, &v1, &v2, r)).collect();
    let m = Matrix::from_rows(rows);
    monomials.len() - m.rank()
}

/// Exponent vectors of all degree-r monomials in n variables.
fn degree_monomials(n: usize, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill_monomials(n, r, 0, &mut current, &mut out);
    out
}

fn fill_monomials(
    n: usize,
    left: usize,
    idx: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if idx == n - 1 {
        current[idx] = left as u32;
        out.push(current.clone());
        current[idx] = 0;
        return;
    }
    for take in (0..=left).rev() {
        current[idx] = take as u32;
        fill_monomials(n, left - take, idx + 1, current, out);
    }
    current[idx] = 0;
}

fn eval_monomial(mono: &[u32], x: &[Rat]) -> Rat {
    let mut acc = Rat::one();
    for (e, v) in mono.iter().zip(x) {
        for _ in 0..*e {
            acc *= v;
        }
    }
    acc
}

/// Coefficients of the binary form obtained by substituting
/// coordinate_i = s v1[i] + t v2[i] into a monomial of total degree r,
/// listed as s^r, s^(r-1) t, ..., t^r.
fn restrict_monomial(mono: &[u32], v1: &[Rat], v2: &[Rat], r: usize) -> Vec<Rat> {
    let mut acc = vec![Rat::zero(); r + 1];
    acc[0] = Rat::one();
    let mut deg = 0usize;
    for (i, e) in mono.iter().enumerate() {
        for _ in 0..*e {
            let mut next = vec![Rat::zero(); r + 1];
            for (k, c) in acc.iter().enumerate().take(deg + 1) {
                if c.is_zero() {
                    continue;
                }
                if !v1[i].is_zero() {
                    next[k] += c * &v1[i];
                }
                if !v2[i].is_zero() {
                    next[k + 1] += c * &v2[i];
                }
            }
            acc = next;
            deg += 1;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// The differential of the span-collapsing map.

#[derive(Clone, Debug)]
pub enum CollapseDifferential {
    /// The induced map on sections vanishes: the deformation does not move
    /// the span of the scheme.
    Zero,
    /// Nonzero, with a length d+1 witness W between Z and its square whose
    /// sections contain the kernel of the induced map.
    Nonzero { witness: ZeroScheme },
}

/// Decide whether the map H0(I_Z) -> O_Z induced by a tangent vector
/// vanishes. When it does not, produce a length-(d+1) subscheme W with
/// I_Z^2 inside I_W inside I_Z and I_J inside I_W, whose sections have
/// codimension d+1 and contain the kernel of the induced map.
pub fn collapse_differential(
    series: &LinearSeries,
    t: &HilbTangent,
) -> Result<CollapseDifferential> {
    let induced = induced_map(series, t);
    if induced.is_zero() {
        return Ok(CollapseDifferential::Zero);
    }
    let d = t.base().colength();
    let w_z = section_space(series, t.base());
    let ker_space = combine_rows(&w_z, induced.transpose().kernel());
    for (ci, frame) in t.frames.iter().enumerate() {
        for psi in hyperplane_functionals(frame.ring_dim(), &t.images[ci]) {
            // enlarge I at this component by the condition psi(t(f)) = 0
            let img = &t.images[ci];
            let mut vals = Vec::with_capacity(img.col_count());
            for j in 0..img.col_count() {
                let mut v = Rat::zero();
                for i in 0..img.row_count() {
                    v += &img[(i, j)] * &psi[i];
                }
                vals.push(v);
            }
            let restricted = Matrix::from_rows(vec![vals]);
            let enlarged = match kernel_ideal_of_condition(frame, &restricted) {
                Ok(ideal) => ideal,
                Err(_) => continue,
            };
            if enlarged.colength() != frame.ideal.colength() + 1 {
                continue;
            }
            let mut comps: Vec<LocalIdeal> = t
                .base()
                .components()
                .iter()
                .filter(|c| c.center() != frame.ideal.center())
                .cloned()
                .collect();
            comps.push(enlarged);
            let w = ZeroScheme::from_components(t.base().variety(), comps)?;
            if w.colength() != d + 1 {
                continue;
            }
            let w_space = section_space(series, &w);
            if w_space.codim() == d + 1 && w_space.contains(&ker_space) {
                return Ok(CollapseDifferential::Nonzero { witness: w });
            }
        }
    }
    Err(Error::SearchBudget(
        "no hyperplane of the tangent image produced a valid witness scheme".into(),
    ))
}

/// Like `kernel_ideal_of`, but for an arbitrary single linear condition on
/// the ideal coefficients.
fn kernel_ideal_of_condition(frame: &TangentFrame, condition: &Matrix) -> Result<LocalIdeal> {
    let variety = frame.ideal.variety();
    let basis = frame.ideal.space().basis();
    let mut gens: Vec<Poly> = Vec::new();
    for c in condition.kernel().basis().rows_iter() {
        let mut jet = vec![Rat::zero(); frame.ideal.space().ambient()];
        for (j, coef) in c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (slot, val) in basis.row(j).iter().enumerate() {
                jet[slot] += coef * val;
            }
        }
        gens.push(local_poly_from_jet(variety, &jet, frame.order));
    }
    for g in frame.square.space().basis().rows_iter() {
        gens.push(local_poly_from_jet(variety, g, frame.order));
    }
    LocalIdeal::from_local_generators(frame.ideal.center().clone(), &gens, Some(frame.order + 1))
}

/// Candidate functionals on O/I for cutting the witness hyperplane: small
/// integer patterns that do not annihilate the tangent image.
fn hyperplane_functionals(card: usize, img: &Matrix) -> Vec<Vec<Rat>> {
    let mut im_rows = Vec::new();
    for j in 0..img.col_count() {
        let col: Vec<Rat> = (0..img.row_count()).map(|i| img[(i, j)].clone()).collect();
        if !col.iter().all(Rat::is_zero) {
            im_rows.push(col);
        }
    }
    let im = Subspace::span(card, im_rows);
    if im.dim() == 0 {
        return Vec::new();
    }
    combo_patterns(card, 2)
        .into_iter()
        .filter(|psi| {
            im.basis()
                .rows_iter()
                .any(|v| v.iter().zip(psi).map(|(a, b)| a * b).sum::<Rat>() != Rat::zero())
        })
        .collect()
}

/// Sparse coefficient patterns with small entries: unit vectors, then
/// signed pairs. Enough to find a hyperplane transverse to a line in the
/// small ambient dimensions that occur here.
fn combo_patterns(dim: usize, scale: i64) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for i in 0..dim {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        out.push(v);
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            for lam in [1i64, -1] {
                for s in 1..=scale {
                    let mut v = vec![Rat::zero(); dim];
                    v[i] = Rat::one();
                    v[j] = rat(lam * s);
                    out.push(v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes0d::{random_distinct_points, random_scheme};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p1_series(a: u32) -> LinearSeries {
        LinearSeries::new(Variety::P1, a)
    }

    fn p2_series(a: u32) -> LinearSeries {
        LinearSeries::new(Variety::P2, a)
    }

    fn p1_reduced(ts: &[i64]) -> ZeroScheme {
        let pts: Vec<Point> = ts.iter().map(|&t| Point::p1_affine(rat(t))).collect();
        ZeroScheme::reduced(Variety::P1, &pts).unwrap()
    }

    fn p1_infinity() -> Point {
        Point::new(Variety::P1, vec![rat(1), rat(0)]).unwrap()
    }

    fn pl_pair(series: &LinearSeries, t1: i64, t2: i64) -> Vec<Rat> {
        let z = p1_reduced(&[t1, t2]);
        embed(series, &z).unwrap().plucker_dual().to_dense()
    }

    #[test]
    fn very_ampleness_threshold() {
        assert!(is_k_very_ample(&p1_series(2), 2));
        assert!(!is_k_very_ample(&p1_series(1), 2));
        assert!(is_k_very_ample(&p2_series(4), 4));
        assert!(!is_k_very_ample(&p2_series(2), 3));
    }

    #[test]
    fn embed_two_coordinate_points_on_conic() {
        let series = p1_series(2);
        let z =
            ZeroScheme::reduced(Variety::P1, &[Point::p1_affine(rat(0)), p1_infinity()]).unwrap();
        let hp = embed(&series, &z).unwrap();
        // sections vanishing at both coordinate points reduce to the middle
        // monomial xy, whose annihilator is spanned by e0 and e2
        let expected = MultiVector::blade(3, &[0, 2]);
        assert_eq!(
            hp.plucker_dual().projective_normal_form(),
            expected.projective_normal_form()
        );
    }

    #[test]
    fn embed_rejects_series_that_cannot_separate() {
        let series = p1_series(1);
        let z = p1_reduced(&[0, 1]);
        match embed(&series, &z) {
            Err(Error::NotVeryAmple { needed, .. }) => assert_eq!(needed, 2),
            other => panic!("expected a very-ampleness failure, got {other:?}"),
        }
    }

    #[test]
    fn embedding_separates_random_schemes() {
        let series = p1_series(2);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut schemes = Vec::new();
        let mut images = Vec::new();
        while schemes.len() < 50 {
            let z = random_scheme(Variety::P1, 2, &mut rng, 30);
            if schemes.contains(&z) {
                continue;
            }
            images.push(embed(&series, &z).unwrap().sections().clone());
            schemes.push(z);
        }
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                assert_ne!(images[i], images[j], "schemes {i} and {j} collide");
            }
        }
    }

    #[test]
    fn distance_counts_shared_length() {
        let series = p1_series(3);
        let a = embed(&series, &p1_reduced(&[0, 1])).unwrap();
        let b = embed(&series, &p1_reduced(&[0, 2])).unwrap();
        let c = embed(&series, &p1_reduced(&[2, 3])).unwrap();
        assert_eq!(hamming_distance_hilb(&a, &a), 0);
        assert_eq!(hamming_distance_hilb(&a, &b), 1);
        assert_eq!(hamming_distance_hilb(&a, &c), 2);
        let meet = a.sections().intersect(b.sections());
        assert_eq!(meet.codim() - 2, 1);
    }

    #[test]
    fn p1_lines_never_contained() {
        let series = p1_series(3);
        let t = hilb_line_test(&series, &p1_reduced(&[0, 1]), &p1_reduced(&[0, 2])).unwrap();
        assert_eq!(t.verdict, LineVerdict::NotContained);
        assert_eq!(t.distance, 1);
        let dbl =
            ZeroScheme::curvilinear(Point::p1_affine(rat(0)), &[rat(1)], 2).unwrap();
        let t2 = hilb_line_test(&series, &dbl, &p1_reduced(&[0, 1])).unwrap();
        assert_eq!(t2.verdict, LineVerdict::NotContained);
    }

    #[test]
    fn p2_line_test_discriminates() {
        let series = p2_series(3);
        let p = Point::p2_affine(rat(0), rat(0));
        let z_a =
            ZeroScheme::reduced(Variety::P2, &[p.clone(), Point::p2_affine(rat(1), rat(0))])
                .unwrap();
        let z_b =
            ZeroScheme::reduced(Variety::P2, &[p.clone(), Point::p2_affine(rat(0), rat(1))])
                .unwrap();
        let t = hilb_line_test(&series, &z_a, &z_b).unwrap();
        assert_eq!(t.verdict, LineVerdict::NotContained);
        assert_eq!(t.distance, 1);
        let du = ZeroScheme::curvilinear(p.clone(), &[rat(1), rat(0)], 2).unwrap();
        let dv = ZeroScheme::curvilinear(p.clone(), &[rat(0), rat(1)], 2).unwrap();
        let t2 = hilb_line_test(&series, &du, &dv).unwrap();
        assert_eq!(t2.verdict, LineVerdict::Contained);
        assert!(t2.warnings.is_empty());
    }

    #[test]
    fn line_test_warns_when_hypothesis_unverified() {
        // O(2) separates length-2 but not length-3 subschemes, so the
        // containment criterion runs outside its safe range
        let series = p2_series(2);
        let p = Point::p2_affine(rat(0), rat(0));
        let du = ZeroScheme::curvilinear(p.clone(), &[rat(1), rat(0)], 2).unwrap();
        let dv = ZeroScheme::curvilinear(p.clone(), &[rat(0), rat(1)], 2).unwrap();
        let t = hilb_line_test(&series, &du, &dv).unwrap();
        assert_eq!(t.verdict, LineVerdict::Contained);
        assert!(!t.warnings.is_empty());
    }

    #[test]
    fn pencil_members_trace_the_line() {
        let series = p2_series(3);
        let p = Point::p2_affine(rat(0), rat(0));
        let z1 = ZeroScheme::curvilinear(p.clone(), &[rat(1), rat(0)], 2).unwrap();
        let z2 = ZeroScheme::curvilinear(p.clone(), &[rat(0), rat(1)], 2).unwrap();
        let pencil = line_pencil(&series, &z1, &z2).unwrap();
        assert_eq!(pencil.member(&rat(1), &rat(0)).unwrap(), z1);
        assert_eq!(pencil.member(&rat(0), &rat(1)).unwrap(), z2);
        let lambdas = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)];
        let members: Vec<ZeroScheme> = lambdas
            .iter()
            .map(|&(l1, l2)| pencil.member(&rat(l1), &rat(l2)).unwrap())
            .collect();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                assert_ne!(members[i], members[j]);
            }
        }
        let hp1 = embed(&series, &z1).unwrap();
        let hp2 = embed(&series, &z2).unwrap();
        let amb = hp1.plucker_dual().to_dense().len();
        let line = Subspace::span(
            amb,
            vec![hp1.plucker_dual().to_dense(), hp2.plucker_dual().to_dense()],
        );
        assert_eq!(line.dim(), 2);
        for m in &members {
            let hp = embed(&series, m).unwrap();
            assert!(line.contains_vector(&hp.plucker_dual().to_dense()));
        }
    }

    #[test]
    fn pencil_requires_containment() {
        let series = p1_series(3);
        match line_pencil(&series, &p1_reduced(&[0, 1]), &p1_reduced(&[0, 2])) {
            Err(Error::NotALine(_)) => {}
            other => panic!("expected NotALine, got {other:?}"),
        }
    }

    #[test]
    fn tangent_dimensions_match_smoothness() {
        let z_p2 = ZeroScheme::reduced(
            Variety::P2,
            &[Point::p2_affine(rat(0), rat(0)), Point::p2_affine(rat(1), rat(2))],
        )
        .unwrap();
        assert_eq!(tangent_space(&z_p2).unwrap().len(), 4);
        assert_eq!(tangent_space(&p1_reduced(&[0, 1])).unwrap().len(), 2);
        let z_curv =
            ZeroScheme::curvilinear(Point::p2_affine(rat(0), rat(0)), &[rat(1), rat(0)], 2)
                .unwrap();
        assert_eq!(tangent_space(&z_curv).unwrap().len(), 4);
    }

    #[test]
    fn tangent_vectors_are_olinear_with_correct_kernel() {
        let z = ZeroScheme::curvilinear(Point::p2_affine(rat(0), rat(0)), &[rat(1), rat(0)], 2)
            .unwrap();
        for t in tangent_space(&z).unwrap() {
            assert!(t.olinearity_ok());
            assert!(t.rank() >= 1);
            assert_eq!(t.kernel_scheme().colength(), z.colength() + t.rank());
        }
    }

    #[test]
    fn tangent_combination_rejects_zero() {
        let basis = tangent_space(&p1_reduced(&[0, 1])).unwrap();
        let zeros = vec![Rat::zero(); basis.len()];
        match tangent_combination(&basis, &zeros) {
            Err(Error::ZeroInput(_)) => {}
            other => panic!("expected ZeroInput, got {other:?}"),
        }
    }

    #[test]
    fn tangent_lift_preserves_rank_one() {
        let series = p1_series(3);
        let basis = tangent_space(&p1_reduced(&[0, 1])).unwrap();
        assert_eq!(basis[0].rank(), 1);
        assert_eq!(tangent_lift(&series, &basis[0]).unwrap().rank(), 1);
    }

    #[test]
    fn tangent_lift_preserves_rank_two() {
        let series = p1_series(4);
        let basis = tangent_space(&p1_reduced(&[0, 1])).unwrap();
        let t = tangent_combination(&basis, &[rat(1), rat(1)]).unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(tangent_lift(&series, &t).unwrap().rank(), 2);
    }

    fn find_rank_two(basis: &[HilbTangent]) -> Option<HilbTangent> {
        for t in basis {
            if t.rank() == 2 {
                return Some(t.clone());
            }
        }
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let mut coeffs = vec![Rat::zero(); basis.len()];
                coeffs[i] = rat(1);
                coeffs[j] = rat(1);
                let t = tangent_combination(basis, &coeffs).unwrap();
                if t.rank() == 2 {
                    return Some(t);
                }
            }
        }
        None
    }

    #[test]
    fn tangent_lift_reports_rank_drop() {
        // O(2) is 2- but not 3-very ample on P1, so a rank-2 tangent at a
        // doubled point cannot lift faithfully
        let series = p1_series(2);
        let z = ZeroScheme::curvilinear(Point::p1_affine(rat(0)), &[rat(1)], 2).unwrap();
        let basis = tangent_space(&z).unwrap();
        let t = find_rank_two(&basis).expect("a doubled point has a rank-2 tangent");
        match tangent_lift(&series, &t) {
            Err(Error::NotVeryAmple { .. }) => {}
            other => panic!("expected a rank-drop report, got {other:?}"),
        }
    }

    #[test]
    fn daggers_hold_for_rank_one_on_p1() {
        let series = p1_series(3);
        for t in tangent_space(&p1_reduced(&[0, 1])).unwrap() {
            assert_eq!(t.rank(), 1);
            let report = dagger_check(&series, &t).unwrap();
            assert!(report.all_hold(), "{report:?}");
        }
    }

    #[test]
    fn daggers_hold_for_rank_two_at_curvilinear() {
        let series = p2_series(4);
        let z = ZeroScheme::curvilinear(Point::p2_affine(rat(0), rat(0)), &[rat(1), rat(0)], 2)
            .unwrap();
        let basis = tangent_space(&z).unwrap();
        let t = find_rank_two(&basis).expect("a rank-2 tangent exists at a curvilinear point");
        let report = dagger_check(&series, &t).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn line_intersection_cases() {
        let e12 = MultiVector::blade(6, &[0, 1]).to_dense();
        let e34 = MultiVector::blade(6, &[2, 3]).to_dense();
        let e56 = MultiVector::blade(6, &[4, 5]).to_dense();
        let e13 = MultiVector::blade(6, &[0, 2]).to_dense();
        let e45 = MultiVector::blade(6, &[3, 4]).to_dense();
        let amb = binomial(6, 2);
        let l1 = Subspace::span(amb, vec![e12.clone(), e34.clone()]);
        let l2 = Subspace::span(amb, vec![e12.clone(), e56.clone()]);
        match line_intersection(6, 2, &l1, &l2).unwrap() {
            LineMeet::Point(v) => {
                assert_eq!(
                    v.projective_normal_form(),
                    MultiVector::blade(6, &[0, 1]).projective_normal_form()
                );
            }
            other => panic!("expected a point, got {other:?}"),
        }
        let l3 = Subspace::span(amb, vec![e13, e45]);
        assert!(matches!(line_intersection(6, 2, &l1, &l3).unwrap(), LineMeet::Empty));
        assert!(matches!(line_intersection(6, 2, &l1, &l1.clone()).unwrap(), LineMeet::Equal));
        let l4 = Subspace::span(amb, vec![e12, e34, e56]);
        assert!(matches!(line_intersection(6, 2, &l4, &l1), Err(Error::NotALine(_))));
    }

    #[test]
    fn membership_round_trip_p1() {
        let series = p1_series(4);
        // a mixed divisor: one finite point, infinity, and a doubled point
        let div = Divisor::new(vec![
            (Place::Finite(rat(0)), 1),
            (Place::Infinity, 1),
            (Place::Finite(rat(1)), 2),
        ]);
        let hp = embed_divisor(&series, &div).unwrap();
        match membership_in_hilb(&series, hp.plucker_dual()).unwrap() {
            Membership::Yes(z) => assert_eq!(z, div.to_scheme().unwrap()),
            Membership::No { reason } => panic!("round trip failed: {reason}"),
        }
    }

    #[test]
    fn membership_round_trip_p2_reduced() {
        let series = p2_series(2);
        let z = ZeroScheme::reduced(
            Variety::P2,
            &[Point::p2_affine(rat(0), rat(0)), Point::p2_affine(rat(1), rat(1))],
        )
        .unwrap();
        let hp = embed(&series, &z).unwrap();
        match membership_in_hilb(&series, hp.plucker_dual()).unwrap() {
            Membership::Yes(back) => assert_eq!(back, z),
            Membership::No { reason } => panic!("round trip failed: {reason}"),
        }
    }

    #[test]
    fn membership_round_trip_p2_curvilinear() {
        let series = p2_series(3);
        let dbl = ZeroScheme::curvilinear(Point::p2_affine(rat(0), rat(0)), &[rat(1), rat(1)], 2)
            .unwrap();
        let mut comps: Vec<LocalIdeal> = dbl.components().to_vec();
        comps.push(LocalIdeal::maximal(Point::p2_affine(rat(2), rat(0))));
        let z = ZeroScheme::from_components(Variety::P2, comps).unwrap();
        let hp = embed(&series, &z).unwrap();
        match membership_in_hilb(&series, hp.plucker_dual()).unwrap() {
            Membership::Yes(back) => assert_eq!(back, z),
            Membership::No { reason } => panic!("round trip failed: {reason}"),
        }
    }

    #[test]
    fn membership_rejects_non_decomposable() {
        let series = p1_series(3);
        let omega = MultiVector::blade(4, &[0, 1]).add(&MultiVector::blade(4, &[2, 3]));
        match membership_in_hilb(&series, &omega).unwrap() {
            Membership::No { .. } => {}
            Membership::Yes(_) => panic!("a rank-4 vector was accepted"),
        }
    }

    #[test]
    fn membership_reports_conjugate_support() {
        let series = p1_series(3);
        let div = Divisor::new(vec![(
            Place::Conjugate(UniPoly::from_coeffs(vec![rat(1), rat(0), rat(1)])),
            1,
        )]);
        let hp = embed_divisor(&series, &div).unwrap();
        match membership_in_hilb(&series, hp.plucker_dual()) {
            Err(Error::NonRationalSupport(_)) => {}
            other => panic!("expected NonRationalSupport, got {other:?}"),
        }
    }

    /// The five evaluation vectors at t = 0..4 under O(3) satisfy one
    /// linear relation; wedging the visible combination of the first two
    /// with the last gives a decomposable 2-vector off the Hilbert image.
    fn five_point_omega(series: &LinearSeries) -> MultiVector {
        let vs: Vec<Vec<Rat>> =
            (0..5).map(|t| series.eval_functional(&Point::p1_affine(rat(t)))).collect();
        let mut f = vec![Rat::zero(); 4];
        for i in 0..4 {
            f[i] = &vs[0][i] - &rat(4) * &vs[1][i];
        }
        MultiVector::from_vector(&f).wedge(&MultiVector::from_vector(&vs[4])).unwrap()
    }

    #[test]
    fn off_variety_decomposable_point_rejected() {
        let series = p1_series(3);
        let omega = five_point_omega(&series);
        assert_eq!(omega.two_vector_rank().unwrap(), 2);
        match membership_in_hilb(&series, &omega).unwrap() {
            Membership::No { .. } => {}
            Membership::Yes(_) => panic!("an off-image point was accepted"),
        }
    }

    #[test]
    fn five_point_relation_yields_two_secant_witnesses() {
        let series = p1_series(3);
        let omega = five_point_omega(&series);
        let dec = secant_decompositions(&series, &omega).unwrap();
        assert!(dec.on_variety.is_none());
        assert!(dec.witnesses.len() >= 2, "found {} witnesses", dec.witnesses.len());
        // the relation v0 - 4 v1 = -6 v2 + 4 v3 - v4 puts omega on the
        // secant lines through the pairs {0,4},{1,4} and {2,4},{3,4}
        let amb = binomial(4, 2);
        let l_a = Subspace::span(amb, vec![pl_pair(&series, 0, 4), pl_pair(&series, 1, 4)]);
        let l_b = Subspace::span(amb, vec![pl_pair(&series, 2, 4), pl_pair(&series, 3, 4)]);
        let lines: Vec<&Subspace> = dec.witnesses.iter().map(|w| &w.line).collect();
        assert!(lines.iter().any(|l| **l == l_a), "missing the first expected line");
        assert!(lines.iter().any(|l| **l == l_b), "missing the second expected line");
        match identifiability_certificate(&series, &omega).unwrap() {
            Certificate::NonIdentifiable(ws) => assert!(ws.len() >= 2),
            other => panic!("expected NonIdentifiable, got {other:?}"),
        }
    }

    #[test]
    fn rank_four_generic_sum_is_identifiable() {
        let series = p1_series(4);
        let z1 = p1_reduced(&[0, 1]);
        let z2 = p1_reduced(&[2, 3]);
        let hp1 = embed(&series, &z1).unwrap();
        let hp2 = embed(&series, &z2).unwrap();
        let omega = hp1.plucker_dual().add(hp2.plucker_dual());
        assert_eq!(omega.two_vector_rank().unwrap(), 4);
        let dec = secant_decompositions(&series, &omega).unwrap();
        assert!(dec.complete);
        assert_eq!(
            dec.witnesses.len(),
            1,
            "witnesses: {:?}",
            dec.witnesses.iter().map(|w| w.describe()).collect::<Vec<_>>()
        );
        match &dec.witnesses[0].kind {
            WitnessKind::Secant { z1: a, z2: b } => {
                let mut got = vec![a.rep().describe(), b.rep().describe()];
                got.sort();
                let mut want = vec![
                    SchemeRep::Rational(z1.clone()).describe(),
                    SchemeRep::Rational(z2.clone()).describe(),
                ];
                want.sort();
                assert_eq!(got, want);
            }
            other => panic!("expected a secant witness, got {other:?}"),
        }
        match identifiability_certificate(&series, &omega).unwrap() {
            Certificate::Identifiable(_) => {}
            other => panic!("expected Identifiable, got {other:?}"),
        }
    }

    #[test]
    fn on_variety_certificate() {
        let series = p1_series(3);
        let z = p1_reduced(&[0, 1]);
        let hp = embed(&series, &z).unwrap();
        match identifiability_certificate(&series, hp.plucker_dual()).unwrap() {
            Certificate::OnVariety(back) => assert_eq!(back, z),
            other => panic!("expected OnVariety, got {other:?}"),
        }
    }

    #[test]
    fn rank_six_is_out_of_scope() {
        let series = p2_series(2);
        let omega = MultiVector::blade(6, &[0, 1])
            .add(&MultiVector::blade(6, &[2, 3]))
            .add(&MultiVector::blade(6, &[4, 5]));
        match secant_decompositions(&series, &omega) {
            Err(Error::RankOutOfScope(6)) => {}
            other => panic!("expected RankOutOfScope(6), got {other:?}"),
        }
    }

    #[test]
    fn decomposition_search_rejects_higher_degree() {
        let series = p2_series(2);
        let omega = MultiVector::blade(6, &[0, 1, 2]);
        match secant_decompositions(&series, &omega) {
            Err(Error::Config(_)) => {}
            other => panic!("expected a degree rejection, got {other:?}"),
        }
    }

    #[test]
    fn fiber_rank_is_one_on_unique_secant() {
        let series = p1_series(4);
        let hp1 = embed(&series, &p1_reduced(&[0, 1])).unwrap();
        let hp2 = embed(&series, &p1_reduced(&[2, 3])).unwrap();
        let omega = hp1.plucker_dual().add(hp2.plucker_dual());
        let dec = secant_decompositions(&series, &omega).unwrap();
        let w = &dec.witnesses[0];
        for r in 1..=3 {
            assert_eq!(fiber_rank(&series, &omega, w, r).unwrap(), 1, "rank at r = {r}");
        }
        let off = embed(&series, &p1_reduced(&[0, 2])).unwrap();
        match fiber_rank(&series, off.plucker_dual(), w, 1) {
            Err(Error::Degenerate(_)) => {}
            other => panic!("expected Degenerate for a point off the line, got {other:?}"),
        }
    }

    #[test]
    fn line_restriction_kernel_has_predicted_dimension() {
        // the kernel of restricting degree-r forms to a line decomposes by
        // symmetric powers of the degree-1 kernel, fixing its dimension
        let series = p1_series(4);
        let hp1 = embed(&series, &p1_reduced(&[0, 1])).unwrap();
        let hp2 = embed(&series, &p1_reduced(&[2, 3])).unwrap();
        let omega = hp1.plucker_dual().add(hp2.plucker_dual());
        let dec = secant_decompositions(&series, &omega).unwrap();
        let line = &dec.witnesses[0].line;
        let n = binomial(5, 2);
        assert_eq!(n, 10);
        for r in 1..=3usize {
            let total = binomial(n + r - 1, r);
            let expected: usize = (1..=r).map(|p| binomial(n - 3 + p, p) * (r - p + 1)).sum();
            assert_eq!(total - (r + 1), expected, "count identity at r = {r}");
            assert_eq!(line_restriction_kernel_dim(line, r), expected, "kernel at r = {r}");
        }
    }

    #[test]
    fn collapse_vanishes_for_aligned_extension() {
        // five collinear points: every quartic through them contains the
        // line, so the tangent extending one point along that same line
        // kills the induced map on sections
        let series = p2_series(4);
        let pts: Vec<Point> = (0..5).map(|t| Point::p2_affine(rat(0), rat(t))).collect();
        let z = ZeroScheme::reduced(Variety::P2, &pts).unwrap();
        let mut comps: Vec<LocalIdeal> =
            z.components().iter().filter(|c| *c.center() != pts[0]).cloned().collect();
        comps.push(LocalIdeal::curvilinear(pts[0].clone(), &[rat(0), rat(1)], 2).unwrap());
        let w = ZeroScheme::from_components(Variety::P2, comps).unwrap();
        let t = tangent_with_kernel(&z, &w).unwrap();
        assert_eq!(t.rank(), 1);
        match collapse_differential(&series, &t).unwrap() {
            CollapseDifferential::Zero => {}
            CollapseDifferential::Nonzero { .. } => panic!("the differential should vanish"),
        }
    }

    #[test]
    fn collapse_nonzero_produces_checked_witness() {
        let series = p2_series(2);
        let z = ZeroScheme::reduced(
            Variety::P2,
            &[Point::p2_affine(rat(0), rat(0)), Point::p2_affine(rat(1), rat(0))],
        )
        .unwrap();
        let basis = tangent_space(&z).unwrap();
        let t = &basis[0];
        assert_eq!(t.rank(), 1);
        match collapse_differential(&series, t).unwrap() {
            CollapseDifferential::Nonzero { witness } => {
                assert_eq!(witness.colength(), z.colength() + 1);
                assert!(z.is_subscheme_of(&witness));
                assert!(witness.is_subscheme_of(&z.square()));
                assert!(witness.is_subscheme_of(t.kernel_scheme()));
                assert_eq!(section_space(&series, &witness).codim(), z.colength() + 1);
            }
            CollapseDifferential::Zero => panic!("a generic tangent has nonzero differential"),
        }
    }

    #[test]
    fn random_secant_points_admit_secant_witness() {
        let series = p1_series(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let pts = random_distinct_points(Variety::P1, 4, &mut rng, 12);
            let z1 = ZeroScheme::reduced(Variety::P1, &pts[0..2]).unwrap();
            let z2 = ZeroScheme::reduced(Variety::P1, &pts[2..4]).unwrap();
            let hp1 = embed(&series, &z1).unwrap();
            let hp2 = embed(&series, &z2).unwrap();
            let omega = hp1.plucker_dual().add(hp2.plucker_dual());
            if omega.two_vector_rank().unwrap() != 4 {
                continue;
            }
            let dec = secant_decompositions(&series, &omega).unwrap();
            assert!(!dec.witnesses.is_empty(), "no witness for a random secant point");
        }
    }
}
