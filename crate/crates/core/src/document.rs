//! The TOML input format.
//!
//! A document has up to seven sections, each a list of named records:
//! `matrices`, `surfaces`, `curves`, `open_books`, `stein_problems`,
//! `hf_modules` and a single `facts` table. Records refer to each other by
//! name. [`parse_input`] checks syntax, rejects unknown keys and resolves every
//! reference; [`InputDocument::resolve`] turns the records into the library types.
//!
//! ```toml
//! [[surfaces]]
//! name = "torus"
//! feet = ["a", "b", "a", "b"]        # counterclockwise around the disk
//! bands = [{ label = "a", twists = -1 }, { label = "b", twists = -1 }]
//! crossings = [{ bands = ["a", "b"], count = 1 }]
//!
//! [[curves]]
//! name = "K"
//! surface = "torus"
//! word = ["+a", "+b"]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hfbook::{self, ContactClassSet, FormalHFModule, Slot};
use crate::ribbon::{BandCrossing, CurveClass, OpenBook, Pass, RibbonError, RibbonSurface, SurfaceData, Twist};
use crate::seifert::{self, SeifertError};
use crate::sgengine::{FactError, FactKind, LegendrianDesc, SGFact, SGFactBase};
use crate::stein::{SteinError, SteinProblem, TwoHandleCurve};
use crate::zlinalg::IntMatrix;
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{section}[{record}].{field}: undefined {kind} `{target}`")]
    Dangling { section: &'static str, record: String, field: &'static str, kind: &'static str, target: String },
    #[error("{section}: name `{name}` is defined twice")]
    Duplicate { section: &'static str, name: String },
    #[error("{section}[{record}]: invariant `{invariant}` violated: {message}")]
    Invariant { section: &'static str, record: String, invariant: &'static str, message: String },
}

pub type Result<T> = std::result::Result<T, DocError>;

fn is_zero(v: &i64) -> bool {
    *v == 0
}

fn is_true(v: &bool) -> bool {
    *v
}

fn yes() -> bool {
    true
}

fn is_plus(s: &Sign) -> bool {
    *s == Sign::Plus
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub surfaces: Vec<SurfaceRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<CurveRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub open_books: Vec<OpenBookRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stein_problems: Vec<SteinRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hf_modules: Vec<HfRecord>,
    #[serde(default, skip_serializing_if = "FactsRecord::is_empty")]
    pub facts: FactsRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub name: String,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceRecord {
    pub name: String,
    pub bands: Vec<BandRecord>,
    /// Band labels, counterclockwise around the disk; each label twice.
    pub feet: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub crossings: Vec<CrossingRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandRecord {
    pub label: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub twists: i64,
    /// Signed self-crossings of the band's core in the diagram.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub writhe: i64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub orientation_preserving: bool,
}

impl BandRecord {
    pub fn new(label: impl Into<String>, twists: i64) -> Self {
        BandRecord { label: label.into(), twists, writhe: 0, orientation_preserving: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingRecord {
    pub bands: [String; 2],
    /// Signed crossing count of the two band cores.
    pub count: i64,
}

/// A curve on a surface, by traversal word (`["+a", "-b"]`), by coefficients, or both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    pub name: String,
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenBookRecord {
    pub name: String,
    pub page: String,
    /// Dehn twists in the order they are composed.
    #[serde(default)]
    pub monodromy: Vec<TwistRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistRecord {
    pub curve: String,
    #[serde(default, skip_serializing_if = "is_plus")]
    pub sign: Sign,
}

/// Either explicit 1-handles and 2-handle curves, or `open_book` plus `surgery`
/// (a curve on its page), from which the handle data is read off.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteinRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_book: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub one_handles: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<SteinCurveRecord>,
    /// Name of the curve whose rotation number is wanted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteinCurveRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traversal: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<i64>,
    #[serde(default, skip_serializing_if = "is_plus")]
    pub sign: Sign,
}

/// An HF module given by `surgery = n` (the tabulated surgery family) or by explicit slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HfRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slots: Option<Vec<Slot>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<ContactClassSet>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactsRecord {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub knots: Vec<KnotRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub statements: Vec<StatementRecord>,
}

impl FactsRecord {
    pub fn is_empty(&self) -> bool {
        self.knots.is_empty() && self.statements.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    pub topo: String,
    pub tb: i64,
    pub rot: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StatementRecord {
    /// `genus` directly, or `surface` + `curve`: the knot is that curve's
    /// Legendrian realization, and the page genus is computed.
    PageWitness {
        knot: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        genus: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        surface: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        curve: Option<String>,
        /// A Stein problem whose distinguished curve is this knot; its rotation number must match.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        stein_problem: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    PositiveTb {
        knot: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    SurgeryBound {
        knot: String,
        genus: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    NonplanarSurgery {
        candidates: Vec<String>,
        hf_module: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    StabilizationOf {
        child: String,
        parent: String,
        sign: Sign,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    OrientationMirror {
        a: String,
        b: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    ClassificationAxiom {
        topo: String,
        tb: i64,
        rot: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedCurve {
    pub name: String,
    pub surface: String,
    pub class: CurveClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedOpenBook {
    pub name: String,
    pub page: String,
    pub book: OpenBook,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedHf {
    pub name: String,
    pub module: FormalHFModule,
    pub classes: Option<ContactClassSet>,
}

/// Library objects built from a document, in document order.
#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub matrices: Vec<(String, IntMatrix)>,
    pub surfaces: Vec<(String, RibbonSurface)>,
    pub curves: Vec<ResolvedCurve>,
    pub open_books: Vec<ResolvedOpenBook>,
    pub stein_problems: Vec<(String, SteinProblem)>,
    pub hf_modules: Vec<ResolvedHf>,
    pub facts: Option<SGFactBase>,
}

impl Resolved {
    pub fn surface(&self, name: &str) -> Option<&RibbonSurface> {
        self.surfaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn curve(&self, name: &str) -> Option<&ResolvedCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn open_book(&self, name: &str) -> Option<&ResolvedOpenBook> {
        self.open_books.iter().find(|b| b.name == name)
    }

    pub fn stein_problem(&self, name: &str) -> Option<&SteinProblem> {
        self.stein_problems.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn hf_module(&self, name: &str) -> Option<&ResolvedHf> {
        self.hf_modules.iter().find(|m| m.name == name)
    }
}

/// Parses and resolves; returns the document only if every reference and invariant checks out.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let doc: InputDocument = toml::from_str(text).map_err(|e| DocError::Syntax(e.to_string()))?;
    doc.resolve()?;
    Ok(doc)
}

pub fn read_input(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_input(&text)
}

pub fn serialize(doc: &InputDocument) -> String {
    toml::to_string(doc).expect("documents contain only TOML-representable values")
}

fn check_unique<'a>(section: &'static str, names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(DocError::Duplicate { section, name: n.to_string() });
        }
    }
    Ok(())
}

/// Splits `"+X2"`, `"-a"` or `"a"` into sign and label.
pub fn parse_signed_label(entry: &str) -> (Sign, &str) {
    let entry = entry.trim();
    if let Some(rest) = entry.strip_prefix('+') {
        (Sign::Plus, rest.trim())
    } else if let Some(rest) = entry.strip_prefix('-').or_else(|| entry.strip_prefix('−')) {
        (Sign::Minus, rest.trim())
    } else {
        (Sign::Plus, entry)
    }
}

pub fn format_word(labels: &[String], word: &[Pass]) -> Vec<String> {
    word.iter().map(|p| format!("{}{}", p.sign.symbol(), labels[p.band])).collect()
}

fn ribbon_invariant(e: &RibbonError) -> &'static str {
    match e {
        RibbonError::FeetCount { .. } => "two-feet-per-band",
        RibbonError::UnknownBand(..) => "feet-reference-bands",
        RibbonError::NonOrientable(_) => "orientable-page",
        RibbonError::Length { .. } => "length",
        RibbonError::CrossingParity { .. } => "crossing-parity",
        RibbonError::DuplicateCrossing(..) => "unique-crossing-pair",
        RibbonError::TraversalMismatch { .. } => "word-matches-class",
        RibbonError::InvalidArc { .. } => "arc-in-page",
        RibbonError::Linalg(_) => "integer-arithmetic",
    }
}

fn stein_invariant(e: &SteinError) -> &'static str {
    match e {
        SteinError::Length { .. } => "traversal-length",
        SteinError::DistinguishedOutOfRange { .. } => "distinguished-curve",
        SteinError::NegativeTwist(_) => "positive-monodromy",
        SteinError::ExplicitInputRequired(_) => "base-rotation-known",
        SteinError::TraversalMismatch { .. } => "word-matches-traversal",
        SteinError::AmbiguousTurn { .. } => "decidable-turning",
        SteinError::UnknownHandle { .. } => "word-references-handles",
        SteinError::NoAdmissibleKernel { .. } => "admissible-kernel",
        SteinError::NotPlanar(_) => "planar-page",
        SteinError::Ribbon(r) => ribbon_invariant(r),
        SteinError::Linalg(_) => "integer-arithmetic",
    }
}

fn fact_invariant(e: &FactError) -> &'static str {
    match e {
        FactError::DuplicateKnot(_) => "unique-knot-name",
        FactError::UnknownKnot(_) => "knot-exists",
        FactError::NotOnTrefoilMountain { .. } => "trefoil-classification",
        FactError::TbNotPositive(_) => "positive-tb",
        FactError::BadStabilization { .. } => "stabilization-invariants",
        FactError::BadMirror { .. } => "mirror-invariants",
        FactError::NoObstruction { .. } => "planarity-obstruction",
        FactError::NoCandidates => "nonempty-candidates",
    }
}

fn invariant(section: &'static str, record: &str, invariant: &'static str, message: impl ToString) -> DocError {
    DocError::Invariant { section, record: record.to_string(), invariant, message: message.to_string() }
}

fn parse_word(
    section: &'static str,
    record: &str,
    labels: &[String],
    word: &[String],
) -> Result<Vec<Pass>> {
    word.iter()
        .map(|entry| {
            let (sign, label) = parse_signed_label(entry);
            labels.iter().position(|l| l == label).map(|band| Pass::new(band, sign)).ok_or_else(|| {
                DocError::Dangling { section, record: record.to_string(), field: "word", kind: "band", target: label.into() }
            })
        })
        .collect()
}

impl InputDocument {
    pub fn is_empty(&self) -> bool {
        *self == InputDocument::default()
    }

    pub fn resolve(&self) -> Result<Resolved> {
        check_unique("matrices", self.matrices.iter().map(|r| r.name.as_str()))?;
        check_unique("surfaces", self.surfaces.iter().map(|r| r.name.as_str()))?;
        check_unique("curves", self.curves.iter().map(|r| r.name.as_str()))?;
        check_unique("open_books", self.open_books.iter().map(|r| r.name.as_str()))?;
        check_unique("stein_problems", self.stein_problems.iter().map(|r| r.name.as_str()))?;
        check_unique("hf_modules", self.hf_modules.iter().map(|r| r.name.as_str()))?;

        let mut out = Resolved::default();
        for m in &self.matrices {
            out.matrices.push((m.name.clone(), resolve_matrix(m)?));
        }
        for s in &self.surfaces {
            out.surfaces.push((s.name.clone(), resolve_surface(s)?));
        }
        for c in &self.curves {
            let surface = out.surface(&c.surface).ok_or_else(|| DocError::Dangling {
                section: "curves",
                record: c.name.clone(),
                field: "surface",
                kind: "surface",
                target: c.surface.clone(),
            })?;
            let class = resolve_curve(c, surface)?;
            out.curves.push(ResolvedCurve { name: c.name.clone(), surface: c.surface.clone(), class });
        }
        for b in &self.open_books {
            let book = resolve_open_book(b, &out)?;
            out.open_books.push(ResolvedOpenBook { name: b.name.clone(), page: b.page.clone(), book });
        }
        for p in &self.stein_problems {
            let problem = resolve_stein(p, &out)?;
            out.stein_problems.push((p.name.clone(), problem));
        }
        for h in &self.hf_modules {
            out.hf_modules.push(resolve_hf(h)?);
        }
        if !self.facts.is_empty() {
            out.facts = Some(resolve_facts(&self.facts, &out)?);
        }
        Ok(out)
    }
}

fn resolve_matrix(m: &MatrixRecord) -> Result<IntMatrix> {
    let cols = m.rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, &m.rows).map_err(|e| invariant("matrices", &m.name, "rectangular", e))
}

fn resolve_surface(s: &SurfaceRecord) -> Result<RibbonSurface> {
    let labels: Vec<String> = s.bands.iter().map(|b| b.label.clone()).collect();
    check_unique("surfaces.bands", labels.iter().map(String::as_str))?;
    let index = |field: &'static str, label: &str| {
        labels.iter().position(|l| l == label).ok_or_else(|| DocError::Dangling {
            section: "surfaces",
            record: s.name.clone(),
            field,
            kind: "band",
            target: label.to_string(),
        })
    };
    let feet = s.feet.iter().map(|l| index("feet", l)).collect::<Result<Vec<_>>>()?;
    let mut crossings = Vec::new();
    for c in &s.crossings {
        let (a, b) = (index("crossings", &c.bands[0])?, index("crossings", &c.bands[1])?);
        crossings.push(BandCrossing { a, b, count: c.count });
    }
    for (i, b) in s.bands.iter().enumerate() {
        if b.writhe != 0 {
            crossings.push(BandCrossing { a: i, b: i, count: b.writhe });
        }
    }
    let data = SurfaceData {
        labels: labels.clone(),
        feet,
        twists: s.bands.iter().map(|b| b.twists).collect(),
        crossings,
        orientation_preserving: s.bands.iter().map(|b| b.orientation_preserving).collect(),
    };
    RibbonSurface::build(data).map_err(|e| invariant("surfaces", &s.name, ribbon_invariant(&e), e))
}

fn resolve_curve(c: &CurveRecord, surface: &RibbonSurface) -> Result<CurveClass> {
    let n = surface.band_count();
    let class = match (&c.word, &c.coefficients) {
        (None, None) => {
            return Err(invariant("curves", &c.name, "word-or-coefficients", "give `word`, `coefficients` or both"))
        }
        (Some(w), coefficients) => {
            let word = parse_word("curves", &c.name, surface.labels(), w)?;
            let class = CurveClass::from_traversal(n, word);
            if let Some(coefficients) = coefficients {
                if *coefficients != class.coefficients {
                    return Err(invariant(
                        "curves",
                        &c.name,
                        "word-matches-class",
                        format!("word abelianizes to {:?}, coefficients say {:?}", class.coefficients, coefficients),
                    ));
                }
            }
            class
        }
        (None, Some(coefficients)) => CurveClass::new(coefficients.clone()),
    };
    surface.check_curve(&class).map_err(|e| invariant("curves", &c.name, ribbon_invariant(&e), e))?;
    Ok(class)
}

fn curve_on<'a>(
    out: &'a Resolved,
    section: &'static str,
    record: &str,
    field: &'static str,
    curve: &str,
    surface: &str,
) -> Result<&'a ResolvedCurve> {
    let c = out.curve(curve).ok_or_else(|| DocError::Dangling {
        section,
        record: record.to_string(),
        field,
        kind: "curve",
        target: curve.to_string(),
    })?;
    if c.surface != surface {
        return Err(invariant(
            section,
            record,
            "curve-on-page",
            format!("curve `{curve}` lives on `{}`, not on `{surface}`", c.surface),
        ));
    }
    Ok(c)
}

fn resolve_open_book(b: &OpenBookRecord, out: &Resolved) -> Result<OpenBook> {
    let page = out.surface(&b.page).ok_or_else(|| DocError::Dangling {
        section: "open_books",
        record: b.name.clone(),
        field: "page",
        kind: "surface",
        target: b.page.clone(),
    })?;
    let mut monodromy = Vec::new();
    for t in &b.monodromy {
        let c = curve_on(out, "open_books", &b.name, "monodromy", &t.curve, &b.page)?;
        monodromy.push(Twist { curve: c.class.clone(), sign: t.sign });
    }
    OpenBook::new(page.clone(), monodromy).map_err(|e| invariant("open_books", &b.name, ribbon_invariant(&e), e))
}

fn resolve_stein(p: &SteinRecord, out: &Resolved) -> Result<SteinProblem> {
    let fail = |e: SteinError| invariant("stein_problems", &p.name, stein_invariant(&e), e);
    if let Some(book_name) = &p.open_book {
        if !p.one_handles.is_empty() || !p.curves.is_empty() {
            return Err(invariant(
                "stein_problems",
                &p.name,
                "one-form",
                "give either `open_book` + `surgery` or explicit `one_handles` + `curves`",
            ));
        }
        let book = out.open_book(book_name).ok_or_else(|| DocError::Dangling {
            section: "stein_problems",
            record: p.name.clone(),
            field: "open_book",
            kind: "open book",
            target: book_name.clone(),
        })?;
        let Some(surgery) = &p.surgery else {
            return Err(invariant("stein_problems", &p.name, "surgery-curve", "`open_book` needs a `surgery` curve"));
        };
        let k = curve_on(out, "stein_problems", &p.name, "surgery", surgery, &book.page)?;
        return SteinProblem::from_open_book(&book.book, &k.class, &k.name).map_err(fail);
    }
    if p.surgery.is_some() {
        return Err(invariant("stein_problems", &p.name, "one-form", "`surgery` is only used together with `open_book`"));
    }
    let handles = p.one_handles.len();
    let mut curves = Vec::new();
    for c in &p.curves {
        let mut curve = match (&c.word, &c.traversal) {
            (Some(w), _) => {
                let word = parse_word("stein_problems", &p.name, &p.one_handles, w)?;
                let mut curve = TwoHandleCurve::from_word(&c.name, handles, word);
                if let Some(t) = &c.traversal {
                    curve.traversal = t.clone();
                }
                curve
            }
            (None, Some(t)) => TwoHandleCurve::new(&c.name, t.clone()),
            (None, None) => {
                return Err(invariant(
                    "stein_problems",
                    &p.name,
                    "word-or-traversal",
                    format!("curve `{}` needs a `word` or a `traversal`", c.name),
                ))
            }
        };
        curve.rotation = c.rotation;
        curve.sign = c.sign;
        curves.push(curve);
    }
    let distinguished = match &p.distinguished {
        Some(name) => p.curves.iter().position(|c| &c.name == name).ok_or_else(|| DocError::Dangling {
            section: "stein_problems",
            record: p.name.clone(),
            field: "distinguished",
            kind: "curve",
            target: name.clone(),
        })?,
        None => p.curves.len().saturating_sub(1),
    };
    SteinProblem::new(p.one_handles.clone(), curves, distinguished).map_err(fail)
}

fn resolve_hf(h: &HfRecord) -> Result<ResolvedHf> {
    let fail = |e: hfbook::HfError| invariant("hf_modules", &h.name, "hf-module", e);
    let module = match (h.surgery, &h.slots) {
        (Some(n), None) => hfbook::hf_plus_surgery(n).map_err(fail)?,
        (None, Some(slots)) => FormalHFModule::new(slots.clone()).map_err(fail)?,
        _ => return Err(invariant("hf_modules", &h.name, "one-form", "give exactly one of `surgery` and `slots`")),
    };
    Ok(ResolvedHf { name: h.name.clone(), module, classes: h.classes })
}

fn resolve_facts(f: &FactsRecord, out: &Resolved) -> Result<SGFactBase> {
    let mut base = SGFactBase::new();
    for k in &f.knots {
        let desc = LegendrianDesc { topo: k.topo.clone(), tb: k.tb, rot: k.rot, tags: k.tags.clone() };
        base.add_knot(&k.name, desc).map_err(|e| invariant("facts.knots", &k.name, fact_invariant(&e), e))?;
    }
    for (i, s) in f.statements.iter().enumerate() {
        let record = format!("#{i}");
        let knot = |field: &'static str, name: &str| {
            base.knot(name).ok_or_else(|| DocError::Dangling {
                section: "facts.statements",
                record: record.clone(),
                field,
                kind: "knot",
                target: name.to_string(),
            })
        };
        let (kind, note) = match s {
            StatementRecord::PageWitness { knot: k, genus, surface, curve, stein_problem, note } => {
                let id = knot("knot", k)?;
                if let Some(p) = stein_problem {
                    witness_rotation(out, &record, p, base.desc(id).expect("resolved id").rot)?;
                }
                let genus = match (surface, curve) {
                    (Some(surface), Some(curve)) => {
                        witness_genus(out, &record, surface, curve, base.desc(id).expect("resolved id").tb, *genus)?
                    }
                    (None, None) => genus.ok_or_else(|| {
                        invariant("facts.statements", &record, "witness-genus", "give `genus` or `surface` + `curve`")
                    })?,
                    _ => {
                        return Err(invariant(
                            "facts.statements",
                            &record,
                            "witness-genus",
                            "`surface` and `curve` go together",
                        ))
                    }
                };
                (FactKind::PageWitness { knot: id, genus }, note)
            }
            StatementRecord::PositiveTb { knot: k, note } => (FactKind::PositiveTb { knot: knot("knot", k)? }, note),
            StatementRecord::SurgeryBound { knot: k, genus, note } => {
                (FactKind::SurgeryBound { knot: knot("knot", k)?, genus: *genus }, note)
            }
            StatementRecord::NonplanarSurgery { candidates, hf_module, note } => {
                let ids = candidates.iter().map(|c| knot("candidates", c)).collect::<Result<Vec<_>>>()?;
                let hf = out.hf_module(hf_module).ok_or_else(|| DocError::Dangling {
                    section: "facts.statements",
                    record: record.clone(),
                    field: "hf_module",
                    kind: "hf module",
                    target: hf_module.clone(),
                })?;
                let classes = hf.classes.ok_or_else(|| {
                    invariant("facts.statements", &record, "contact-classes", format!("hf module `{hf_module}` has no `classes`"))
                })?;
                let evidence = hfbook::planarity_obstruction(&classes, &hf.module)
                    .map_err(|e| invariant("facts.statements", &record, "contact-classes", e))?;
                (FactKind::NonplanarSurgery { candidates: ids, evidence }, note)
            }
            StatementRecord::StabilizationOf { child, parent, sign, note } => (
                FactKind::StabilizationOf { child: knot("child", child)?, parent: knot("parent", parent)?, sign: *sign },
                note,
            ),
            StatementRecord::OrientationMirror { a, b, note } => {
                (FactKind::OrientationMirror { a: knot("a", a)?, b: knot("b", b)? }, note)
            }
            StatementRecord::ClassificationAxiom { topo, tb, rot, note } => {
                (FactKind::ClassificationAxiom { topo: topo.clone(), tb: *tb, rot: *rot }, note)
            }
        };
        let fact = SGFact { kind, note: note.clone() };
        base.add_fact(fact).map_err(|e| invariant("facts.statements", &record, fact_invariant(&e), e))?;
    }
    Ok(base)
}

/// Genus of the page carrying `curve`, after checking the curve realizes a knot with `tb`.
fn witness_genus(
    out: &Resolved,
    record: &str,
    surface: &str,
    curve: &str,
    tb: i64,
    stated: Option<u32>,
) -> Result<u32> {
    let section = "facts.statements";
    let page = out.surface(surface).ok_or_else(|| DocError::Dangling {
        section,
        record: record.to_string(),
        field: "surface",
        kind: "surface",
        target: surface.to_string(),
    })?;
    let c = curve_on(out, section, record, "curve", curve, surface)?;
    let computed = seifert::thurston_bennequin(page, &c.class).map_err(|e| {
        let name = match &e {
            SeifertError::NotRealizable => "nonseparating-curve",
            _ => "witness-tb",
        };
        invariant(section, record, name, e)
    })?;
    if computed != tb {
        return Err(invariant(
            section,
            record,
            "witness-tb",
            format!("curve `{curve}` has tb {computed} on `{surface}`, but the knot has tb {tb}"),
        ));
    }
    let genus = page.genus() as u32;
    if let Some(g) = stated {
        if g != genus {
            return Err(invariant(section, record, "witness-genus", format!("stated genus {g}, page genus {genus}")));
        }
    }
    Ok(genus)
}

fn witness_rotation(out: &Resolved, record: &str, problem: &str, rot: i64) -> Result<()> {
    let section = "facts.statements";
    let p = out.stein_problem(problem).ok_or_else(|| DocError::Dangling {
        section,
        record: record.to_string(),
        field: "stein_problem",
        kind: "stein problem",
        target: problem.to_string(),
    })?;
    let outcome = p.rotation_number().map_err(|e| invariant(section, record, stein_invariant(&e), e))?;
    match outcome.determined() {
        Some(r) if r.rot == rot => Ok(()),
        Some(r) => Err(invariant(
            section,
            record,
            "witness-rot",
            format!("stein problem `{problem}` gives rot {}, but the knot has rot {rot}", r.rot),
        )),
        None => Err(invariant(section, record, "witness-rot", format!("stein problem `{problem}`: {outcome}"))),
    }
}
