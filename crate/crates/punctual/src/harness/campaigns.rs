//! Seeded randomized campaigns over the intersection and identifiability
//! statements. Each campaign draws many independent trial configurations,
//! engineered so the claims are exercised non-vacuously: line pairs that
//! provably share a Hilbert point, pairs expected to be disjoint, and
//! random secant points built from known chords.
//!
//! Trial `index` derives its generator from `seeded_rng(seed, index)`, so
//! a campaign is reproducible from the seed alone and its report does not
//! depend on the worker count. Trials run in fixed-size chunks; once a
//! chunk contains a counterexample no further chunks are scheduled and the
//! lowest-index counterexample is reported with replay data.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::hilb::{
    embed, fiber_rank, identifiability_certificate, line_intersection, lifted_line,
    membership_in_hilb, tangent_combination, tangent_space, Certificate, HilbPoint, LineMeet,
    Membership,
};
use crate::linalg::Subspace;
use crate::rat::{rat, Rat};
use crate::schemes0d::{
    random_distinct_points, random_scheme, LinearSeries, Point, Variety, ZeroScheme,
};
use crate::{Error, Result};

use super::input::{replay_text, scheme_detail, scheme_text};
use super::report::{mv_str, Report, Witness};
use super::scenarios::{five_point_instance, replay_for_meeting_point};
use super::seeded_rng;

/// Trials scheduled per chunk. Chunks are the halting granularity: a
/// counterexample stops scheduling after its own chunk completes.
const CHUNK: u64 = 32;

/// Redraws allowed when a trial needs a configuration in general position.
const REDRAWS: usize = 20;

/// Largest monomial count for which the fiber computation is attempted.
const FIBER_MONOMIAL_GUARD: u128 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CampaignKind {
    /// id "prop39": meets of two chord lines stay on the Hilbert square
    SecantPairs,
    /// id "prop310": meets of a chord and a tangent line stay on it
    SecantTangentPairs,
    /// id "prop311": meets of two tangent lines stay on it
    TangentPairs,
    /// id "thm31": random secant points have exactly one decomposition
    UniqueDecomposition,
    /// id "thm44": the line collapse has single reduced-point fibers
    FiberRank,
}

impl CampaignKind {
    pub fn all() -> [CampaignKind; 5] {
        [
            CampaignKind::SecantPairs,
            CampaignKind::SecantTangentPairs,
            CampaignKind::TangentPairs,
            CampaignKind::UniqueDecomposition,
            CampaignKind::FiberRank,
        ]
    }

    /// The command-line token for this campaign.
    pub fn id(self) -> &'static str {
        match self {
            CampaignKind::SecantPairs => "prop39",
            CampaignKind::SecantTangentPairs => "prop310",
            CampaignKind::TangentPairs => "prop311",
            CampaignKind::UniqueDecomposition => "thm31",
            CampaignKind::FiberRank => "thm44",
        }
    }

    pub fn from_id(s: &str) -> Option<CampaignKind> {
        CampaignKind::all().into_iter().find(|k| k.id() == s.trim().to_lowercase())
    }

    fn claim(self) -> &'static str {
        match self {
            CampaignKind::SecantPairs => {
                "two chord lines of the Hilbert square never meet outside it"
            }
            CampaignKind::SecantTangentPairs => {
                "a chord and a tangent line never meet outside the Hilbert square"
            }
            CampaignKind::TangentPairs => {
                "two tangent lines never meet outside the Hilbert square"
            }
            CampaignKind::UniqueDecomposition => {
                "a random point on a chord lies on no other chord or tangent line"
            }
            CampaignKind::FiberRank => {
                "over an identifiable point the collapsed fiber is a single reduced point"
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub variety: Variety,
    pub degree: u32,
    /// Length of the subschemes; only 2 is supported.
    pub d: usize,
    pub trials: u64,
    pub seed: u64,
    /// Coordinate height for random points.
    pub bound: i64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

impl CampaignConfig {
    pub fn new(variety: Variety, degree: u32, seed: u64) -> CampaignConfig {
        CampaignConfig { variety, degree, d: 2, trials: 200, seed, bound: 20, workers: 0 }
    }

    fn validate(&self, kind: CampaignKind) -> Result<()> {
        if self.d != 2 {
            return Err(Error::Config(format!(
                "campaigns cover length-2 subschemes only, not length {}",
                self.d
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("at least one trial is needed".into()));
        }
        if self.bound < 2 {
            return Err(Error::Config("the coordinate bound must be at least 2".into()));
        }
        if self.degree < 2 {
            return Err(Error::Config(format!(
                "degree {} does not embed length-2 subschemes",
                self.degree
            )));
        }
        let needs_decompositions =
            matches!(kind, CampaignKind::UniqueDecomposition | CampaignKind::FiberRank);
        if needs_decompositions && self.degree < 3 {
            return Err(Error::Config(
                "the decomposition search needs degree at least 3".into(),
            ));
        }
        Ok(())
    }
}

enum TrialOutcome {
    Pass,
    Skip(String),
    Counterexample(Box<Witness>),
}

fn counterexample(label: &str, detail: Vec<String>, replay: String) -> TrialOutcome {
    TrialOutcome::Counterexample(Box::new(Witness {
        label: label.to_string(),
        detail,
        replay: Some(replay),
    }))
}

/// The line through two embedded schemes, or None when their Pluecker
/// vectors are proportional.
fn chord_line(h1: &HilbPoint, h2: &HilbPoint) -> Option<Subspace> {
    let a = h1.plucker_dual().to_dense();
    let b = h2.plucker_dual().to_dense();
    let n = a.len();
    let l = Subspace::span(n, vec![a, b]);
    (l.dim() == 2).then_some(l)
}

/// Two lines through the same Hilbert point must meet exactly there. Any
/// other meeting behaviour is a counterexample for the campaign.
fn check_vertex_meet(
    series: &LinearSeries,
    l1: &Subspace,
    l2: &Subspace,
    vertex: &HilbPoint,
    vertex_scheme: &ZeroScheme,
    context: &str,
    replay: String,
) -> Result<TrialOutcome> {
    let w = match line_intersection(series.h0(), 2, l1, l2)? {
        LineMeet::Equal => {
            return Ok(TrialOutcome::Skip(format!("{context}: the two lines coincide")))
        }
        LineMeet::Empty => {
            return Ok(counterexample(
                context,
                vec!["lines sharing a point reported as disjoint".into()],
                replay,
            ))
        }
        LineMeet::Point(w) => w,
    };
    let dense = w.to_dense();
    let expected = vertex.plucker_dual().to_dense();
    let at_vertex = Subspace::span(dense.len(), vec![dense, expected]).dim() == 1;
    if !at_vertex {
        return Ok(counterexample(
            context,
            vec!["the meeting point is not the shared Hilbert point".into(), mv_str(&w)],
            replay,
        ));
    }
    match membership_in_hilb(series, &w) {
        Ok(Membership::Yes(z)) if z == *vertex_scheme => Ok(TrialOutcome::Pass),
        Ok(Membership::Yes(z)) => Ok(counterexample(
            context,
            vec!["the meeting point carries the wrong subscheme".into(), scheme_text(&z)],
            replay,
        )),
        Ok(Membership::No { reason }) => Ok(counterexample(
            context,
            vec![format!("the meeting point left the Hilbert square: {reason}"), mv_str(&w)],
            replay,
        )),
        Err(Error::NonRationalSupport(m)) => Ok(TrialOutcome::Skip(format!("{context}: {m}"))),
        Err(e) => Err(e),
    }
}

/// Two lines with no engineered common point: they may be disjoint, and if
/// they do meet the meeting point must still lie on the Hilbert square.
fn check_free_meet(
    series: &LinearSeries,
    l1: &Subspace,
    l2: &Subspace,
    context: &str,
    replay: String,
) -> Result<TrialOutcome> {
    let w = match line_intersection(series.h0(), 2, l1, l2)? {
        LineMeet::Empty => return Ok(TrialOutcome::Pass),
        LineMeet::Equal => {
            return Ok(TrialOutcome::Skip(format!("{context}: the two lines coincide")))
        }
        LineMeet::Point(w) => w,
    };
    match membership_in_hilb(series, &w) {
        Ok(Membership::Yes(_)) => Ok(TrialOutcome::Pass),
        Ok(Membership::No { reason }) => Ok(counterexample(
            context,
            vec![format!("the lines meet outside the Hilbert square: {reason}"), mv_str(&w)],
            replay,
        )),
        Err(Error::NonRationalSupport(m)) => Ok(TrialOutcome::Skip(format!("{context}: {m}"))),
        Err(e) => Err(e),
    }
}

/// A random line tangent to the Hilbert square at [z], or None when the
/// drawn directions keep degenerating.
fn random_tangent_line(
    series: &LinearSeries,
    z: &ZeroScheme,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Subspace>> {
    let basis = tangent_space(z)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for _ in 0..REDRAWS {
        let coeffs: Vec<Rat> = (0..basis.len()).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let t = tangent_combination(&basis, &coeffs)?;
        match lifted_line(series, &t) {
            Ok(l) => return Ok(Some(l)),
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Two random length-2 schemes with disjoint support and independent
/// Pluecker vectors, so their chord is a genuine secant line.
fn draw_disjoint_pair(
    series: &LinearSeries,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<Option<(ZeroScheme, HilbPoint, ZeroScheme, HilbPoint)>> {
    let v = series.variety();
    for _ in 0..REDRAWS {
        let z1 = random_scheme(v, 2, rng, bound);
        let z2 = random_scheme(v, 2, rng, bound);
        let s1: Vec<&Point> = z1.support();
        if s1.iter().any(|p| z2.support().contains(p)) {
            continue;
        }
        let h1 = embed(series, &z1)?;
        let h2 = embed(series, &z2)?;
        if chord_line(&h1, &h2).is_none() {
            continue;
        }
        return Ok(Some((z1, h1, z2, h2)));
    }
    Ok(None)
}

/// Chord pairs. Phase one builds three reduced pair schemes out of three
/// distinct points; the three chords connecting them pairwise meet at the
/// shared Hilbert points. Phase two repeats with a possibly non-reduced
/// shared scheme, and phase three checks an unconstrained pair.
fn secant_pairs_trial(
    series: &LinearSeries,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<TrialOutcome> {
    let v = series.variety();
    let pts = random_distinct_points(v, 3, rng, bound);
    let mut schemes = Vec::new();
    let mut hilbs = Vec::new();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let z = ZeroScheme::reduced(v, &[pts[i].clone(), pts[j].clone()])?;
        let h = embed(series, &z)?;
        schemes.push(z);
        hilbs.push(h);
    }
    let n = hilbs[0].plucker_dual().to_dense().len();
    let pl = |i: usize| hilbs[i].plucker_dual().to_dense();
    if Subspace::span(n, vec![pl(0), pl(1), pl(2)]).dim() < 3 {
        return Ok(TrialOutcome::Skip("the three pair schemes are projectively dependent".into()));
    }
    let edges = [
        Subspace::span(n, vec![pl(0), pl(1)]),
        Subspace::span(n, vec![pl(0), pl(2)]),
        Subspace::span(n, vec![pl(1), pl(2)]),
    ];
    let replay = replay_text(
        series,
        &[
            (Rat::one(), &schemes[0]),
            (Rat::one(), &schemes[1]),
            (Rat::one(), &schemes[2]),
        ],
    );
    for (i, j, shared) in [(0usize, 1usize, 0usize), (0, 2, 1), (1, 2, 2)] {
        let out = check_vertex_meet(
            series,
            &edges[i],
            &edges[j],
            &hilbs[shared],
            &schemes[shared],
            "chords between pair schemes of three points",
            replay.clone(),
        )?;
        if !matches!(out, TrialOutcome::Pass) {
            return Ok(out);
        }
    }

    // two chords from one shared scheme, this time allowing non-reduced
    // draws at the shared end
    let zv = random_scheme(v, 2, rng, bound);
    let za = random_scheme(v, 2, rng, bound);
    let zb = random_scheme(v, 2, rng, bound);
    let hv = embed(series, &zv)?;
    let ha = embed(series, &za)?;
    let hb = embed(series, &zb)?;
    let span3 = Subspace::span(
        n,
        vec![
            hv.plucker_dual().to_dense(),
            ha.plucker_dual().to_dense(),
            hb.plucker_dual().to_dense(),
        ],
    );
    if span3.dim() == 3 {
        let l1 = chord_line(&hv, &ha).expect("independent by the span check");
        let l2 = chord_line(&hv, &hb).expect("independent by the span check");
        let replay = replay_text(
            series,
            &[(Rat::one(), &zv), (Rat::one(), &za), (Rat::one(), &zb)],
        );
        let out = check_vertex_meet(
            series,
            &l1,
            &l2,
            &hv,
            &zv,
            "two chords out of one shared scheme",
            replay,
        )?;
        if !matches!(out, TrialOutcome::Pass) {
            return Ok(out);
        }
    }

    // unconstrained pair of chords
    let z1 = random_scheme(v, 2, rng, bound);
    let z2 = random_scheme(v, 2, rng, bound);
    let z3 = random_scheme(v, 2, rng, bound);
    let z4 = random_scheme(v, 2, rng, bound);
    let h1 = embed(series, &z1)?;
    let h2 = embed(series, &z2)?;
    let h3 = embed(series, &z3)?;
    let h4 = embed(series, &z4)?;
    let (Some(l1), Some(l2)) = (chord_line(&h1, &h2), chord_line(&h3, &h4)) else {
        return Ok(TrialOutcome::Skip("a free chord draw collapsed to a point".into()));
    };
    let replay = replay_text(
        series,
        &[
            (Rat::one(), &z1),
            (Rat::one(), &z2),
            (Rat::one(), &z3),
            (Rat::one(), &z4),
        ],
    );
    check_free_meet(series, &l1, &l2, "chords of two unrelated pairs", replay)
}

/// A tangent line and a chord, first forced through the same Hilbert
/// point, then unconstrained.
fn secant_tangent_trial(
    series: &LinearSeries,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<TrialOutcome> {
    let v = series.variety();
    let z = random_scheme(v, 2, rng, bound);
    let hz = embed(series, &z)?;
    let Some(lt) = random_tangent_line(series, &z, rng)? else {
        return Ok(TrialOutcome::Skip("no usable tangent direction".into()));
    };

    let za = random_scheme(v, 2, rng, bound);
    let ha = embed(series, &za)?;
    let Some(lsec) = chord_line(&hz, &ha) else {
        return Ok(TrialOutcome::Skip("the chord companion coincides with the base".into()));
    };
    if lt.sum(&lsec).dim() == 2 {
        return Ok(TrialOutcome::Skip("the chord realizes the tangent line".into()));
    }
    let replay = replay_text(series, &[(Rat::one(), &z), (Rat::one(), &za)]);
    let out = check_vertex_meet(
        series,
        &lt,
        &lsec,
        &hz,
        &z,
        "a tangent line and a chord at the same Hilbert point",
        replay,
    )?;
    if !matches!(out, TrialOutcome::Pass) {
        return Ok(out);
    }

    let z1 = random_scheme(v, 2, rng, bound);
    let z2 = random_scheme(v, 2, rng, bound);
    let h1 = embed(series, &z1)?;
    let h2 = embed(series, &z2)?;
    let Some(lfar) = chord_line(&h1, &h2) else {
        return Ok(TrialOutcome::Skip("a free chord draw collapsed to a point".into()));
    };
    let replay =
        replay_text(series, &[(Rat::one(), &z), (Rat::one(), &z1), (Rat::one(), &z2)]);
    check_free_meet(series, &lt, &lfar, "a tangent line and an unrelated chord", replay)
}

/// Two tangent lines, first at the same scheme, then at two independent
/// schemes.
fn tangent_pairs_trial(
    series: &LinearSeries,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<TrialOutcome> {
    let v = series.variety();
    let z = random_scheme(v, 2, rng, bound);
    let hz = embed(series, &z)?;
    let Some(l1) = random_tangent_line(series, &z, rng)? else {
        return Ok(TrialOutcome::Skip("no usable tangent direction".into()));
    };
    let Some(l2) = random_tangent_line(series, &z, rng)? else {
        return Ok(TrialOutcome::Skip("no second tangent direction".into()));
    };
    let replay = replay_text(series, &[(Rat::one(), &z)]);
    if l1.sum(&l2).dim() > 2 {
        let out = check_vertex_meet(
            series,
            &l1,
            &l2,
            &hz,
            &z,
            "two tangent lines at the same Hilbert point",
            replay,
        )?;
        if !matches!(out, TrialOutcome::Pass) {
            return Ok(out);
        }
    }

    let zb = random_scheme(v, 2, rng, bound);
    let Some(lb) = random_tangent_line(series, &zb, rng)? else {
        return Ok(TrialOutcome::Skip("no tangent direction at the second scheme".into()));
    };
    let replay = replay_text(series, &[(Rat::one(), &z), (Rat::one(), &zb)]);
    check_free_meet(series, &l1, &lb, "tangent lines at two independent schemes", replay)
}

/// A random point on the chord of a disjoint pair must decompose through
/// exactly that chord.
fn unique_decomposition_trial(
    series: &LinearSeries,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<TrialOutcome> {
    let Some((z1, h1, z2, h2)) = draw_disjoint_pair(series, rng, bound)? else {
        return Ok(TrialOutcome::Skip("no disjoint pair within the redraw budget".into()));
    };
    let c = rat(rng.gen_range(1..=5));
    let omega = h1.plucker_dual().add(&h2.plucker_dual().scale(&c));
    if omega.two_vector_rank()? != 4 {
        return Ok(TrialOutcome::Skip("the sampled chord point degenerates to rank 2".into()));
    }
    let replay = replay_text(series, &[(Rat::one(), &z1), (c.clone(), &z2)]);
    match identifiability_certificate(series, &omega) {
        Ok(Certificate::Identifiable(w)) => {
            let through_both = w.line.contains_vector(&h1.plucker_dual().to_dense())
                && w.line.contains_vector(&h2.plucker_dual().to_dense());
            if through_both {
                Ok(TrialOutcome::Pass)
            } else {
                Ok(counterexample(
                    "identifiable, but through an unexpected line",
                    vec![w.describe()],
                    replay,
                ))
            }
        }
        Ok(Certificate::NonIdentifiable(ws)) => {
            let mut detail = vec![format!("{} distinct decomposition lines", ws.len())];
            detail.extend(ws.iter().map(|w| w.describe()));
            Ok(counterexample("a random chord point is non-identifiable", detail, replay))
        }
        Ok(Certificate::NoDecompositionFound) => Ok(counterexample(
            "the complete search missed the constructed chord",
            Vec::new(),
            replay,
        )),
        Ok(Certificate::OnVariety(z)) => Ok(counterexample(
            "a rank-4 point classified as lying on the Hilbert square",
            scheme_detail(&z),
            replay,
        )),
        Err(Error::NonRationalSupport(m)) | Err(Error::NonEnumerableBase(m)) => {
            Ok(TrialOutcome::Skip(m))
        }
        Err(e) => Err(e),
    }
}

/// Fixed first trial of the unique-decomposition campaign on the cubic
/// line. Five collinear evaluation vectors are dependent, so the chords
/// through the pairs {0,4},{1,4} and {2,4},{3,4} share a point carrying
/// two distinct decompositions. The campaign must fail on it, which is
/// exactly what shows the degree-4 hypothesis cannot be dropped.
fn five_point_probe() -> Result<TrialOutcome> {
    let inst = five_point_instance()?;
    let w = &inst.meeting_point;
    let dense = w.to_dense();
    for l in &inst.lines {
        if !l.contains_vector(&dense) {
            return Err(Error::Degenerate("the probe point left its chord lines".into()));
        }
    }
    let replay = replay_for_meeting_point(&inst)?;
    match identifiability_certificate(&inst.series, w)? {
        Certificate::NonIdentifiable(ws) => {
            let mut detail = vec![
                "meeting point of the chords through {0,4},{1,4} and {2,4},{3,4}".to_string(),
                format!("{} distinct decomposition lines", ws.len()),
            ];
            detail.extend(ws.iter().map(|x| x.describe()));
            Ok(counterexample(
                "five collinear points force a non-identifiable chord point",
                detail,
                replay,
            ))
        }
        Certificate::Identifiable(w) => Ok(counterexample(
            "the probe point looked identifiable, missing its second line",
            vec![w.describe()],
            replay,
        )),
        Certificate::OnVariety(z) => Ok(counterexample(
            "the probe point classified as a Hilbert point",
            scheme_detail(&z),
            replay,
        )),
        Certificate::NoDecompositionFound => Ok(counterexample(
            "the probe point got no decomposition at all",
            Vec::new(),
            replay,
        )),
    }
}

/// Count of degree-r monomials on an n-dimensional Pluecker space.
fn monomials_of_degree(n: usize, r: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= (n + i) as u128;
        den *= (i + 1) as u128;
    }
    num / den
}

/// An identifiable chord point must have fiber rank 1 for every listed
/// form degree.
fn fiber_trial(
    series: &LinearSeries,
    rng: &mut ChaCha8Rng,
    bound: i64,
    degrees: &[usize],
) -> Result<TrialOutcome> {
    let Some((z1, h1, z2, h2)) = draw_disjoint_pair(series, rng, bound)? else {
        return Ok(TrialOutcome::Skip("no disjoint pair within the redraw budget".into()));
    };
    let c = rat(rng.gen_range(1..=5));
    let omega = h1.plucker_dual().add(&h2.plucker_dual().scale(&c));
    if omega.two_vector_rank()? != 4 {
        return Ok(TrialOutcome::Skip("the sampled chord point degenerates to rank 2".into()));
    }
    let replay = replay_text(series, &[(Rat::one(), &z1), (c.clone(), &z2)]);
    let witness = match identifiability_certificate(series, &omega) {
        Ok(Certificate::Identifiable(w)) => w,
        Ok(other) => {
            let what = match other {
                Certificate::NonIdentifiable(_) => "a sampled chord point is non-identifiable",
                Certificate::OnVariety(_) => "a rank-4 point classified as a Hilbert point",
                _ => "the search missed the constructed chord",
            };
            return Ok(counterexample(what, Vec::new(), replay));
        }
        Err(Error::NonRationalSupport(m)) | Err(Error::NonEnumerableBase(m)) => {
            return Ok(TrialOutcome::Skip(m))
        }
        Err(e) => return Err(e),
    };
    for &r in degrees {
        match fiber_rank(series, &omega, &witness, r)? {
            1 => {}
            k => {
                return Ok(counterexample(
                    &format!("fiber rank {k} instead of 1 for forms of degree {r}"),
                    vec![witness.describe()],
                    replay,
                ))
            }
        }
    }
    Ok(TrialOutcome::Pass)
}

/// Run trials in order, in chunks, stopping after the first chunk that
/// contains a counterexample. The outcome list is index-ordered and
/// identical for every worker count.
fn run_trials<F>(workers: usize, trials: u64, trial: F) -> Result<Vec<(u64, TrialOutcome)>>
where
    F: Fn(u64) -> Result<TrialOutcome> + Sync,
{
    let work = || -> Result<Vec<(u64, TrialOutcome)>> {
        let mut out = Vec::new();
        let mut start = 0u64;
        while start < trials {
            let end = (start + CHUNK).min(trials);
            let batch: Vec<(u64, Result<TrialOutcome>)> =
                (start..end).into_par_iter().map(|i| (i, trial(i))).collect();
            let mut halt = false;
            for (i, res) in batch {
                let o = res?;
                if matches!(o, TrialOutcome::Counterexample(_)) {
                    halt = true;
                }
                out.push((i, o));
            }
            if halt {
                break;
            }
            start = end;
        }
        Ok(out)
    };
    if workers == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
        pool.install(work)
    }
}

pub fn run_campaign(kind: CampaignKind, cfg: &CampaignConfig) -> Result<Report> {
    cfg.validate(kind)?;
    let t0 = Instant::now();
    let mut r = Report::new(format!("campaign {}", kind.id()), cfg.seed);
    r.set("kind", kind.id());
    r.set("claim", kind.claim());
    r.set("variety", match cfg.variety {
        Variety::P1 => "p1",
        Variety::P2 => "p2",
    });
    r.set("degree", cfg.degree.to_string());
    r.set("subscheme length", cfg.d.to_string());
    r.set("trials", cfg.trials.to_string());
    r.set("coordinate bound", cfg.bound.to_string());
    if matches!(kind, CampaignKind::UniqueDecomposition | CampaignKind::FiberRank) {
        r.set(
            "hypothesis",
            if cfg.degree >= 4 {
                "degree at least 4, the uniqueness hypothesis holds"
            } else {
                "degree below 4, outside the uniqueness hypothesis, failures expected"
            },
        );
    }

    let probe = kind == CampaignKind::UniqueDecomposition
        && cfg.variety == Variety::P1
        && cfg.degree == 3;
    if probe {
        r.set("probe", "trial 0 is the fixed five-collinear-point configuration");
    }

    let series = LinearSeries::new(cfg.variety, cfg.degree);
    let mut fiber_degrees: Vec<usize> = Vec::new();
    if kind == CampaignKind::FiberRank {
        let n = series.h0() * (series.h0() - 1) / 2;
        let mut refused = Vec::new();
        for deg in 1..=3usize {
            if monomials_of_degree(n, deg) <= FIBER_MONOMIAL_GUARD {
                fiber_degrees.push(deg);
            } else {
                refused.push(deg);
            }
        }
        if fiber_degrees.is_empty() {
            return Err(Error::ResourceGuard(format!(
                "all fiber form degrees exceed {FIBER_MONOMIAL_GUARD} monomials on a {n}-dimensional Pluecker space"
            )));
        }
        let list =
            fiber_degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
        r.set("fiber form degrees", list);
        for deg in refused {
            r.skip(format!(
                "fiber forms of degree {deg}: {} monomials exceed the desk-scale guard",
                monomials_of_degree(n, deg)
            ));
        }
    }

    let run_one = |index: u64| -> Result<TrialOutcome> {
        if probe && index == 0 {
            return five_point_probe();
        }
        let mut rng = seeded_rng(cfg.seed, index);
        match kind {
            CampaignKind::SecantPairs => secant_pairs_trial(&series, &mut rng, cfg.bound),
            CampaignKind::SecantTangentPairs => {
                secant_tangent_trial(&series, &mut rng, cfg.bound)
            }
            CampaignKind::TangentPairs => tangent_pairs_trial(&series, &mut rng, cfg.bound),
            CampaignKind::UniqueDecomposition => {
                unique_decomposition_trial(&series, &mut rng, cfg.bound)
            }
            CampaignKind::FiberRank => fiber_trial(&series, &mut rng, cfg.bound, &fiber_degrees),
        }
    };

    let outcomes = run_trials(cfg.workers, cfg.trials, run_one)?;
    let completed = outcomes.len() as u64;
    let mut passes = 0u64;
    let mut skips = 0u64;
    let mut first_cx: Option<(u64, Witness)> = None;
    for (i, o) in outcomes {
        match o {
            TrialOutcome::Pass => passes += 1,
            TrialOutcome::Skip(m) => {
                skips += 1;
                r.skip(format!("trial {i}: {m}"));
            }
            TrialOutcome::Counterexample(w) => {
                if first_cx.is_none() {
                    first_cx = Some((i, *w));
                }
            }
        }
    }
    r.note(format!("trials completed: {completed} of {}", cfg.trials));
    r.note(format!("passes: {passes}, skips: {skips} of {completed} completed"));
    match first_cx {
        None => {
            r.check("no counterexample across the completed trials", true);
        }
        Some((i, mut w)) => {
            r.check("no counterexample across the completed trials", false);
            r.note(format!("counterexample at trial {i}; later chunks not scheduled"));
            w.label = format!("trial {i}: {}", w.label);
            r.push_witness(w);
        }
    }
    r.elapsed = t0.elapsed();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(variety: Variety, degree: u32, trials: u64, seed: u64) -> CampaignConfig {
        CampaignConfig { variety, degree, d: 2, trials, seed, bound: 6, workers: 0 }
    }

    #[test]
    fn ids_round_trip() {
        for k in CampaignKind::all() {
            assert_eq!(CampaignKind::from_id(k.id()), Some(k));
        }
        assert!(CampaignKind::from_id("nope").is_none());
    }

    #[test]
    fn chord_pair_campaign_passes_on_the_quartic_line() {
        let r = run_campaign(CampaignKind::SecantPairs, &cfg(Variety::P1, 4, 4, 11)).unwrap();
        assert!(r.is_pass(), "{}", r.render());
    }

    #[test]
    fn tangent_campaigns_pass_small_runs() {
        let r =
            run_campaign(CampaignKind::SecantTangentPairs, &cfg(Variety::P1, 4, 3, 5)).unwrap();
        assert!(r.is_pass(), "{}", r.render());
        let r = run_campaign(CampaignKind::TangentPairs, &cfg(Variety::P1, 4, 3, 5)).unwrap();
        assert!(r.is_pass(), "{}", r.render());
    }

    #[test]
    fn unique_decomposition_campaign_passes_on_the_quartic_line() {
        let r =
            run_campaign(CampaignKind::UniqueDecomposition, &cfg(Variety::P1, 4, 4, 7)).unwrap();
        assert!(r.is_pass(), "{}", r.render());
    }

    #[test]
    fn cubic_line_probe_fails_with_a_replayable_witness() {
        let r =
            run_campaign(CampaignKind::UniqueDecomposition, &cfg(Variety::P1, 3, 1, 0)).unwrap();
        assert!(!r.is_pass());
        assert_eq!(r.witnesses.len(), 1);
        assert!(r.witnesses[0].replay.is_some());
    }

    #[test]
    fn fiber_campaign_passes_on_the_quartic_line() {
        let r = run_campaign(CampaignKind::FiberRank, &cfg(Variety::P1, 4, 2, 3)).unwrap();
        assert!(r.is_pass(), "{}", r.render());
    }

    #[test]
    fn reports_are_reproducible_and_worker_independent() {
        let mut c = cfg(Variety::P1, 4, 6, 21);
        let r1 = run_campaign(CampaignKind::SecantPairs, &c).unwrap();
        let r2 = run_campaign(CampaignKind::SecantPairs, &c).unwrap();
        assert_eq!(r1.to_json(), r2.to_json());
        c.workers = 2;
        let r3 = run_campaign(CampaignKind::SecantPairs, &c).unwrap();
        assert_eq!(r1.to_json(), r3.to_json());
    }

    #[test]
    fn config_validation_rejects_bad_setups() {
        let mut c = cfg(Variety::P1, 4, 0, 1);
        assert!(run_campaign(CampaignKind::SecantPairs, &c).is_err());
        c.trials = 1;
        c.d = 3;
        assert!(run_campaign(CampaignKind::SecantPairs, &c).is_err());
        c.d = 2;
        c.degree = 2;
        assert!(run_campaign(CampaignKind::UniqueDecomposition, &c).is_err());
    }
}
