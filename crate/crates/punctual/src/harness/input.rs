//! Input files for the `classify`, `decompose` and `distance` commands,
//! and the inverse serializers used to emit machine-replayable witnesses.
//!
//! A file is the scheme component grammar plus two framing directives:
//!
//! ```text
//! # comment
//! series = p1 O(4)
//! scheme                 # starts a block, weight 1
//! point = (0)
//! point = (2); ideal = (x) + m^1
//! scheme = -3/2          # second block with an explicit weight
//! point = (5)
//! point = (7)
//! ```
//!
//! Each block describes one subscheme; the commands combine the embedded
//! Pluecker vectors with the block weights.

use num_traits::{One, Zero};

use crate::hilb::{embed, HilbPoint};
use crate::rat::Rat;
use crate::schemes0d::{
    local_poly_from_jet, parse_component, parse_series, LinearSeries, LocalIdeal, Point, Variety,
    ZeroScheme,
};
use crate::{Error, Result};

use super::report::rat_str;

pub struct InputFile {
    pub series: LinearSeries,
    pub blocks: Vec<(Rat, ZeroScheme)>,
}

impl InputFile {
    pub fn parse(text: &str) -> Result<InputFile> {
        let mut series: Option<LinearSeries> = None;
        let mut blocks: Vec<(Rat, Vec<LocalIdeal>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("series") {
                let rest = rest.trim();
                let value = rest
                    .strip_prefix('=')
                    .ok_or_else(|| at("expected `series = <variety> O(<degree>)`".into()))?;
                if series.is_some() {
                    return Err(at("duplicate series directive".into()));
                }
                series = Some(parse_series(value.trim())?);
                continue;
            }
            if line == "scheme" || line.starts_with("scheme ") || line.starts_with("scheme=") {
                let weight = match line.strip_prefix("scheme").unwrap().trim() {
                    "" => Rat::one(),
                    rest => {
                        let v = rest
                            .strip_prefix('=')
                            .ok_or_else(|| at("expected `scheme` or `scheme = <weight>`".into()))?
                            .trim();
                        v.parse::<Rat>().map_err(|_| at(format!("bad weight `{v}`")))?
                    }
                };
                if weight.is_zero() {
                    return Err(at("a scheme weight must be nonzero".into()));
                }
                blocks.push((weight, Vec::new()));
                continue;
            }
            let variety = series
                .as_ref()
                .map(LinearSeries::variety)
                .ok_or_else(|| at("the series directive must come first".into()))?;
            let comp = parse_component(variety, line)?;
            match blocks.last_mut() {
                Some((_, comps)) => comps.push(comp),
                None => return Err(at("component before the first `scheme` directive".into())),
            }
        }
        let series = series.ok_or_else(|| Error::Parse("missing series directive".into()))?;
        if blocks.is_empty() {
            return Err(Error::Parse("no scheme blocks".into()));
        }
        let variety = series.variety();
        let mut out = Vec::with_capacity(blocks.len());
        for (weight, comps) in blocks {
            if comps.is_empty() {
                return Err(Error::Parse("a scheme block has no components".into()));
            }
            out.push((weight, ZeroScheme::from_components(variety, comps)?));
        }
        Ok(InputFile { series, blocks: out })
    }

    /// Embed every block; all blocks must have a common length so the
    /// Pluecker vectors live in one wedge power.
    pub fn embed_blocks(&self) -> Result<Vec<(Rat, HilbPoint)>> {
        let d = self.blocks[0].1.colength();
        let mut out = Vec::with_capacity(self.blocks.len());
        for (w, z) in &self.blocks {
            if z.colength() != d {
                return Err(Error::Config(format!(
                    "mixed scheme lengths {d} and {} cannot be combined",
                    z.colength()
                )));
            }
            out.push((w.clone(), embed(&self.series, z)?));
        }
        Ok(out)
    }
}

pub fn series_text(series: &LinearSeries) -> String {
    let v = match series.variety() {
        Variety::P1 => "p1",
        Variety::P2 => "p2",
    };
    format!("{v} O({})", series.degree())
}

fn point_tuple(p: &Point) -> String {
    let coords = p.coords();
    let last = coords.len() - 1;
    if coords[last].is_zero() {
        // no affine representative in the standard chart; fall back to the
        // projective tuple, which the parser also accepts
        let body: Vec<String> = coords.iter().map(rat_str).collect();
        format!("({})", body.join(", "))
    } else {
        let body: Vec<String> =
            coords[..last].iter().map(|c| rat_str(&(c / &coords[last]))).collect();
        format!("({})", body.join(", "))
    }
}

fn poly_text(p: &crate::poly::Poly) -> String {
    let mut pieces: Vec<String> = Vec::new();
    for (exp, c) in p.terms() {
        let mut vars = String::new();
        for (slot, name) in ["x", "y"].iter().enumerate() {
            match exp[slot] {
                0 => {}
                1 => {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(name);
                }
                e => {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(&format!("{name}^{e}"));
                }
            }
        }
        let piece = if vars.is_empty() {
            rat_str(c)
        } else if *c == Rat::one() {
            vars
        } else if *c == -Rat::one() {
            format!("-{vars}")
        } else {
            format!("{}*{vars}", rat_str(c))
        };
        pieces.push(piece);
    }
    if pieces.is_empty() { "0".into() } else { pieces.join(" + ") }
}

/// One grammar line per component. Non-reduced components are emitted as
/// the basis polynomials of their truncated ideal plus the maximal-ideal
/// power that makes the truncation lossless.
pub fn component_text(c: &LocalIdeal) -> String {
    let tuple = point_tuple(c.center());
    if c.colength() == 1 {
        return format!("point = {tuple}");
    }
    let gens: Vec<String> = c
        .space()
        .basis()
        .rows_iter()
        .map(|row| poly_text(&local_poly_from_jet(c.variety(), row, c.order())))
        .collect();
    // any ideal of colength k contains m^k, so adding it back changes
    // nothing and pins the truncation order for the parser
    format!("point = {tuple}; ideal = ({}) + m^{}", gens.join(", "), c.colength())
}

pub fn scheme_text(z: &ZeroScheme) -> String {
    let mut out = String::new();
    for c in z.components() {
        out.push_str(&component_text(c));
        out.push('\n');
    }
    out
}

/// The same serialization split per component, for witness detail lists.
pub fn scheme_detail(z: &ZeroScheme) -> Vec<String> {
    z.components().iter().map(component_text).collect()
}

/// A complete input file reproducing a weighted combination of schemes.
pub fn replay_text(series: &LinearSeries, parts: &[(Rat, &ZeroScheme)]) -> String {
    let mut out = format!("series = {}\n", series_text(series));
    for (w, z) in parts {
        if *w == Rat::one() {
            out.push_str("scheme\n");
        } else {
            out.push_str(&format!("scheme = {}\n", rat_str(w)));
        }
        out.push_str(&scheme_text(z));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use crate::schemes0d::random_scheme;
    use rand::SeedableRng;

    #[test]
    fn parses_a_two_block_file() {
        let text = "\
# two disjoint pairs
series = p1 O(4)
scheme
point = (0)
point = (2); ideal = (x) + m^1
scheme = -3/2
point = (5)
point = (7)
";
        let f = InputFile::parse(text).unwrap();
        assert_eq!(f.series.degree(), 4);
        assert_eq!(f.blocks.len(), 2);
        assert_eq!(f.blocks[0].0, rat(1));
        assert_eq!(f.blocks[0].1.colength(), 2);
        assert_eq!(f.blocks[1].0, ratio(-3, 2));
        let pts = f.embed_blocks().unwrap();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(InputFile::parse("scheme\npoint = (0)").is_err());
        assert!(InputFile::parse("series = p1 O(3)\npoint = (0)").is_err());
        assert!(InputFile::parse("series = p1 O(3)\nscheme = 0\npoint = (0)").is_err());
        assert!(InputFile::parse("series = p1 O(3)\nscheme\n").is_err());
    }

    #[test]
    fn random_schemes_round_trip_through_the_grammar() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for variety in [Variety::P1, Variety::P2] {
            for _ in 0..12 {
                let z = random_scheme(variety, 3, &mut rng, 9);
                let text = scheme_text(&z);
                let back = crate::schemes0d::parse_scheme(variety, &text).unwrap();
                assert_eq!(back, z, "grammar round trip failed:\n{text}");
            }
        }
    }

    #[test]
    fn replay_files_parse_back() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let series = LinearSeries::new(Variety::P2, 4);
        let z1 = random_scheme(Variety::P2, 2, &mut rng, 9);
        let z2 = random_scheme(Variety::P2, 2, &mut rng, 9);
        let text = replay_text(&series, &[(rat(1), &z1), (ratio(2, 3), &z2)]);
        let f = InputFile::parse(&text).unwrap();
        assert_eq!(f.blocks[0].1, z1);
        assert_eq!(f.blocks[1].1, z2);
        assert_eq!(f.blocks[1].0, ratio(2, 3));
    }
}
