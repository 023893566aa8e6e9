//! Text formats: Lie algebra files, extension files and series literals.
//!
//! Algebra and extension files are JSON documents:
//!
//! ```text
//! { "name": "heisenberg", "dim": 3, "basis": ["e1", "e2", "e3"],
//!   "brackets": [ { "i": "e1", "j": "e2", "terms": [ { "k": "e3", "coeff": "1" } ] } ] }
//! ```
//!
//! Only pairs with `i` before `j` in the basis may be listed; omitted pairs
//! bracket to zero. An extension file wraps an algebra under `"algebra"` and
//! adds `"ideal"` (list of coordinate vectors) and an optional `"section"`
//! (list of the images `s(b_1), s(b_2), ...` as `C`-vectors).
//!
//! Series literals list `(degree, [(exponents, [coefficients])])` entries,
//! e.g. `[(0, [((0,0), [1])]), (1, [((1,0), [-1/2])])]`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::Error;
use crate::extensions::{default_section, make_extension, Extension, Section};
use crate::linalg::Vector;
use crate::poly::{FormalSeries, HomogeneousMap, MultiIndex};
use crate::rational::{format_rational, parse_rational, Rational};

/// A rational written as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalText(pub Rational);

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(RationalText)
            .map_err(de::Error::custom)
    }
}

impl Serialize for RationalText {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub k: String,
    pub coeff: RationalText,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: String,
    pub j: String,
    pub terms: Vec<TermEntry>,
}

/// Raw contents of an algebra file, before label resolution.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub algebra: AlgebraFile,
    pub ideal: Vec<Vec<RationalText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<Vec<RationalText>>>,
}

/// Problems reading a file: malformed text, or content that cannot be resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError(e.to_string())
    }
}

fn to_vector(xs: &[RationalText]) -> Vector {
    Vector(xs.iter().map(|r| r.0.clone()).collect())
}

impl AlgebraFile {
    pub fn parse(text: &str) -> std::result::Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolves labels into a structure table without checking the Lie identities.
    pub fn to_unchecked(&self) -> std::result::Result<LieAlgebra, InputError> {
        if self.basis.len() != self.dim {
            return Err(InputError(format!(
                "dim is {} but basis lists {} labels",
                self.dim,
                self.basis.len()
            )));
        }
        let idx = |l: &str| {
            self.basis
                .iter()
                .position(|b| b == l)
                .ok_or_else(|| InputError(format!("unknown basis label {l:?}")))
        };
        let n = self.dim;
        let mut table = vec![vec![Vector::zeros(n); n]; n];
        let mut seen = std::collections::HashSet::new();
        for entry in &self.brackets {
            let (i, j) = (idx(&entry.i)?, idx(&entry.j)?);
            if i >= j {
                return Err(InputError(format!(
                    "bracket [{}, {}] must list the earlier basis label first",
                    entry.i, entry.j
                )));
            }
            if !seen.insert((i, j)) {
                return Err(InputError(format!(
                    "bracket [{}, {}] listed twice",
                    entry.i, entry.j
                )));
            }
            let mut v = Vector::zeros(n);
            for t in &entry.terms {
                let k = idx(&t.k)?;
                v[k] += &t.coeff.0;
            }
            table[j][i] = -&v;
            table[i][j] = v;
        }
        LieAlgebra::from_table_unchecked(self.name.clone(), self.basis.clone(), table)
            .map_err(|e| InputError(e.to_string()))
    }

    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let mut brackets = Vec::new();
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let v = alg.structure(i, j);
                if v.is_zero() {
                    continue;
                }
                let terms = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| TermEntry {
                        k: alg.labels()[k].clone(),
                        coeff: RationalText(c.clone()),
                    })
                    .collect();
                brackets.push(BracketEntry {
                    i: alg.labels()[i].clone(),
                    j: alg.labels()[j].clone(),
                    terms,
                });
            }
        }
        AlgebraFile {
            name: alg.name().to_string(),
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            brackets,
        }
    }
}

/// Why a file could not be turned into a validated object.
#[derive(Debug)]
pub enum LoadError {
    /// Malformed or unresolvable input.
    Input(InputError),
    /// Well-formed input describing an invalid object.
    Invalid(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Input(e) => write!(f, "{e}"),
            LoadError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<InputError> for LoadError {
    fn from(e: InputError) -> Self {
        LoadError::Input(e)
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Invalid(e)
    }
}

/// Parses and validates an algebra file.
pub fn load_algebra(text: &str) -> std::result::Result<LieAlgebra, LoadError> {
    let alg = AlgebraFile::parse(text)?.to_unchecked()?;
    let report = alg.check();
    if !report.is_valid() {
        return Err(LoadError::Invalid(Error::InvalidAlgebra(
            report.describe(&alg).join("; "),
        )));
    }
    Ok(alg)
}

/// Parses an extension file; returns the extension and its section
/// (the file's, or the coordinate section when absent).
pub fn load_extension(text: &str) -> std::result::Result<(Extension, Section), LoadError> {
    let file: ExtensionFile = serde_json::from_str(text).map_err(InputError::from)?;
    let c = load_algebra(&serde_json::to_string(&file.algebra).map_err(InputError::from)?)?;
    let ideal: Vec<Vector> = file.ideal.iter().map(|v| to_vector(v)).collect();
    let ext = make_extension(&c, &ideal)?;
    let section = match &file.section {
        None => default_section(&ext),
        Some(images) => {
            let images: Vec<Vector> = images.iter().map(|v| to_vector(v)).collect();
            Section::from_images(&ext, &images)?
        }
    };
    Ok((ext, section))
}

/// `"c1,c2,..."` with rationals `"p/q"`.
pub fn parse_element(text: &str, dim: usize) -> std::result::Result<Vector, InputError> {
    let t = text.trim();
    let coords: Vec<Rational> = if t.is_empty() {
        Vec::new()
    } else {
        t.split(',')
            .map(|s| parse_rational(s).map_err(|e| InputError(format!("element {text:?}: {e}"))))
            .collect::<std::result::Result<_, _>>()?
    };
    if coords.len() != dim {
        return Err(InputError(format!(
            "element {text:?} has {} coordinates, expected {dim}",
            coords.len()
        )));
    }
    Ok(Vector(coords))
}

/// Renders every certified degree, empty ones included, so that the literal
/// carries its own validity.
pub fn format_series(s: &FormalSeries) -> String {
    let entries: Vec<String> = s
        .components()
        .iter()
        .map(|c| {
            let terms: Vec<String> = c
                .terms()
                .map(|(alpha, v)| {
                    let exps: Vec<String> = alpha.exponents().iter().map(u32::to_string).collect();
                    let coeffs: Vec<String> = v.iter().map(format_rational).collect();
                    format!("(({}), [{}])", exps.join(","), coeffs.join(", "))
                })
                .collect();
            format!("({}, [{}])", c.degree(), terms.join(", "))
        })
        .collect();
    format!("[{}]", entries.join(", "))
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn err(&self, msg: &str) -> InputError {
        InputError(format!("series literal: {msg} at offset {}", self.pos))
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), InputError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_digit() || c == '-' || c == '+' || c == '/' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> std::result::Result<usize, InputError> {
        let t = self.token();
        t.parse()
            .map_err(|_| self.err(&format!("expected a natural number, found {t:?}")))
    }

    fn rational(&mut self) -> std::result::Result<Rational, InputError> {
        let t = self.token();
        parse_rational(t).map_err(|e| self.err(&e.to_string()))
    }

    /// `[item, item, ...]` or `(item, ...)`
    fn list<T>(
        &mut self,
        open: char,
        close: char,
        mut item: impl FnMut(&mut Self) -> std::result::Result<T, InputError>,
    ) -> std::result::Result<Vec<T>, InputError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// Parses a series literal on a `src_dim`-space valued in a `tgt_dim`-space.
///
/// Degrees not listed are zero; the result is certified through
/// `valid_through`, and listing a higher degree is an error.
pub fn parse_series(
    text: &str,
    src_dim: usize,
    tgt_dim: usize,
    valid_through: usize,
) -> std::result::Result<FormalSeries, InputError> {
    let mut lx = Lexer { src: text, pos: 0 };
    let entries = lx.list('[', ']', |lx| {
        lx.expect('(')?;
        let degree = lx.number()?;
        lx.expect(',')?;
        let terms = lx.list('[', ']', |lx| {
            lx.expect('(')?;
            let exps = lx.list('(', ')', |lx| lx.number())?;
            lx.expect(',')?;
            let coeffs = lx.list('[', ']', |lx| lx.rational())?;
            lx.expect(')')?;
            Ok((exps, coeffs))
        })?;
        lx.expect(')')?;
        Ok((degree, terms))
    })?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    let mut components: Vec<HomogeneousMap> = (0..=valid_through)
        .map(|m| HomogeneousMap::zero(src_dim, tgt_dim, m))
        .collect();
    for (degree, terms) in entries {
        if degree > valid_through {
            return Err(InputError(format!(
                "series literal lists degree {degree} beyond the certified order {valid_through}"
            )));
        }
        let terms = terms
            .into_iter()
            .map(|(exps, coeffs)| {
                (
                    MultiIndex::new(exps.into_iter().map(|e| e as u32).collect()),
                    Vector(coeffs),
                )
            })
            .collect::<Vec<_>>();
        let f = HomogeneousMap::from_terms(src_dim, tgt_dim, degree, terms)
            .map_err(|e| InputError(format!("series literal, degree {degree}: {e}")))?;
        components[degree] = components[degree]
            .add(&f)
            .map_err(|e| InputError(e.to_string()))?;
    }
    FormalSeries::new(src_dim, tgt_dim, components).map_err(|e| InputError(e.to_string()))
}

/// One monomial term of a structured series: exponents and target coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub monomial: Vec<u32>,
    pub coeffs: Vec<RationalText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub degree: usize,
    pub terms: Vec<TermRecord>,
}

/// A truncated series as structured data; every certified degree is listed.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesRecord {
    pub valid_through: isize,
    pub components: Vec<ComponentRecord>,
}

impl SeriesRecord {
    pub fn from_series(s: &FormalSeries) -> Self {
        SeriesRecord {
            valid_through: s.valid_through(),
            components: s
                .components()
                .iter()
                .map(|c| ComponentRecord {
                    degree: c.degree(),
                    terms: c
                        .terms()
                        .map(|(alpha, v)| TermRecord {
                            monomial: alpha.exponents().to_vec(),
                            coeffs: v.iter().cloned().map(RationalText).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_series(
        &self,
        src_dim: usize,
        tgt_dim: usize,
    ) -> std::result::Result<FormalSeries, InputError> {
        let expected = (self.valid_through + 1).max(0) as usize;
        if self.components.len() != expected {
            return Err(InputError(format!(
                "series certified through {} must list {expected} components, found {}",
                self.valid_through,
                self.components.len()
            )));
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if c.degree != m {
                    return Err(InputError(format!(
                        "component {m} is labelled degree {}",
                        c.degree
                    )));
                }
                HomogeneousMap::from_terms(
                    src_dim,
                    tgt_dim,
                    m,
                    c.terms
                        .iter()
                        .map(|t| (MultiIndex::new(t.monomial.clone()), to_vector(&t.coeffs))),
                )
                .map_err(|e| InputError(format!("degree {m}: {e}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FormalSeries::new(src_dim, tgt_dim, components).map_err(|e| InputError(e.to_string()))
    }
}

/// Rationals of a vector as `"p/q"` strings.
pub fn vector_record(v: &Vector) -> Vec<RationalText> {
    v.iter().cloned().map(RationalText).collect()
}

/// Bundled example files, by file name.
pub mod fixtures {
    pub const ABELIAN2: &str = include_str!("../fixtures/abelian2.alg");
    pub const HEISENBERG: &str = include_str!("../fixtures/heisenberg.alg");
    pub const SL2: &str = include_str!("../fixtures/sl2.alg");
    pub const SOLVABLE2: &str = include_str!("../fixtures/solvable2.alg");
    pub const HEISENBERG_CENTER: &str = include_str!("../fixtures/heisenberg-center.ext");
    pub const AFFINE_LINE: &str = include_str!("../fixtures/affine-line.ext");

    pub const ALGEBRAS: [(&str, &str); 4] = [
        ("abelian2.alg", ABELIAN2),
        ("heisenberg.alg", HEISENBERG),
        ("sl2.alg", SL2),
        ("solvable2.alg", SOLVABLE2),
    ];

    pub const EXTENSIONS: [(&str, &str); 2] = [
        ("heisenberg-center.ext", HEISENBERG_CENTER),
        ("affine-line.ext", AFFINE_LINE),
    ];
}
