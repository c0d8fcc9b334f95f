//! The bundled fixture documents and the builders that generate them.
//!
//! Each fixture exists twice: as a builder function here and as a TOML file
//! under `fixtures/`, embedded into the binary. A test keeps the two identical,
//! so the files stay hand-readable while the builders stay the source of truth.

use crate::document::{
    parse_input, BandRecord, CrossingRecord, CurveRecord, DocError, FactsRecord, HfRecord, InputDocument,
    KnotRecord, OpenBookRecord, StatementRecord, SteinCurveRecord, SteinRecord, SurfaceRecord, TwistRecord,
};
use crate::hfbook::{trefoil_rotation_list, ContactClassSet};
use crate::Sign;

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        /// `(name, contents)` of every bundled fixture file.
        pub const BUNDLED: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name, ".toml")))),*
        ];
    };
}

bundle!(
    "torus_page_k1",
    "torus_page_k2",
    "torus_page_k3",
    "twist_page_m1",
    "twist_page_m2",
    "twist_page_m3",
    "twist_page_m4",
    "twist_page_m5",
    "hf_trefoil_n7",
    "hf_trefoil_n8",
    "hf_trefoil_n9",
    "hf_trefoil_n10",
    "hf_trefoil_n11",
    "hf_trefoil_n12",
    "torus_facts",
    "twist_facts",
    "trefoil_facts",
);

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a bundled fixture.
pub fn load(name: &str) -> Result<InputDocument, DocError> {
    let text = source(name).ok_or_else(|| DocError::Io {
        path: format!("<bundled>/{name}"),
        message: "no such bundled fixture".into(),
    })?;
    parse_input(text)
}

/// The builder behind a bundled fixture name.
pub fn build(name: &str) -> Option<InputDocument> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<i64>().ok());
    if let Some(k) = num("torus_page_k") {
        return Some(torus_page(k));
    }
    if let Some(m) = num("twist_page_m") {
        return Some(twist_page(m as usize));
    }
    if let Some(n) = num("hf_trefoil_n") {
        return Some(hf_trefoil(n));
    }
    match name {
        "torus_facts" => Some(torus_facts()),
        "twist_facts" => Some(twist_facts()),
        "trefoil_facts" => Some(trefoil_facts()),
        _ => None,
    }
}

pub fn torus_surface_name(k: i64) -> String {
    format!("torus_k{k}")
}

pub fn torus_curve_name(k: i64) -> String {
    format!("torus_knot_k{k}")
}

pub fn twist_surface_name(m: usize) -> String {
    format!("planar_m{m}")
}

pub fn twist_curve_name(m: usize) -> String {
    format!("twist_knot_m{m}")
}

pub fn twist_problem_name(m: usize) -> String {
    format!("twist_m{m}")
}

pub fn hf_module_name(n: i64) -> String {
    format!("trefoil_surgery_n{n}")
}

/// Punctured torus with the knot `a + b` on it.
///
/// Two interleaved bands, each with a left-handed twist; their cores cross
/// `2k + 1` times, which makes the curve through both bands a `T(2, 2k+1)`.
pub fn torus_page(k: i64) -> InputDocument {
    InputDocument {
        surfaces: vec![SurfaceRecord {
            name: torus_surface_name(k),
            bands: vec![BandRecord::new("a", -1), BandRecord::new("b", -1)],
            feet: ["a", "b", "a", "b"].map(String::from).to_vec(),
            crossings: vec![CrossingRecord { bands: ["a".into(), "b".into()], count: 2 * k + 1 }],
        }],
        curves: vec![CurveRecord {
            name: torus_curve_name(k),
            surface: torus_surface_name(k),
            word: Some(vec!["+a".into(), "+b".into()]),
            coefficients: None,
        }],
        ..Default::default()
    }
}

fn handle(i: usize) -> String {
    format!("X{i}")
}

/// Words of the monodromy curves `γ₁ = X₂`, `γ₂ = X₁ − X₂`, `γᵢ = X_{i−1} − Xᵢ`.
pub fn twist_gamma_words(m: usize) -> Vec<Vec<String>> {
    (1..=m + 2)
        .map(|i| match i {
            1 => vec![format!("+{}", handle(2))],
            _ => vec![format!("+{}", handle(i - 1)), format!("-{}", handle(i))],
        })
        .collect()
}

/// Planar page with `m + 2` bands in a row, the twist knot `K = −X₂` on it,
/// the open book `(page, t_{γ₁} ⋯ t_{γ_{m+2}})` and the Stein problem for
/// Legendrian surgery on `K`.
pub fn twist_page(m: usize) -> InputDocument {
    let n = m + 2;
    let labels: Vec<String> = (1..=n).map(handle).collect();
    let surface = twist_surface_name(m);
    let gamma_curve = |i: usize| format!("gamma{i}_m{m}");
    let words = twist_gamma_words(m);
    let mut curves: Vec<CurveRecord> = words
        .iter()
        .enumerate()
        .map(|(i, w)| CurveRecord {
            name: gamma_curve(i + 1),
            surface: surface.clone(),
            word: Some(w.clone()),
            coefficients: None,
        })
        .collect();
    curves.push(CurveRecord {
        name: twist_curve_name(m),
        surface: surface.clone(),
        word: Some(vec![format!("-{}", handle(2))]),
        coefficients: None,
    });
    let mut stein_curves: Vec<SteinCurveRecord> = words
        .iter()
        .enumerate()
        .map(|(i, w)| SteinCurveRecord {
            name: format!("gamma{}", i + 1),
            word: Some(w.clone()),
            traversal: None,
            rotation: None,
            sign: Sign::Plus,
        })
        .collect();
    stein_curves.push(SteinCurveRecord {
        name: "K".into(),
        word: Some(vec![format!("-{}", handle(2))]),
        traversal: None,
        rotation: None,
        sign: Sign::Plus,
    });
    InputDocument {
        surfaces: vec![SurfaceRecord {
            name: surface.clone(),
            bands: labels.iter().map(|l| BandRecord::new(l.as_str(), -1)).collect(),
            feet: labels.iter().flat_map(|l| [l.clone(), l.clone()]).collect(),
            crossings: Vec::new(),
        }],
        curves,
        open_books: vec![OpenBookRecord {
            name: format!("planar_m{m}_book"),
            page: surface,
            monodromy: (1..=n).map(|i| TwistRecord { curve: gamma_curve(i), sign: Sign::Plus }).collect(),
        }],
        stein_problems: vec![SteinRecord {
            name: twist_problem_name(m),
            open_book: None,
            surgery: None,
            one_handles: labels,
            curves: stein_curves,
            distinguished: Some("K".into()),
        }],
        ..Default::default()
    }
}

/// `HF⁺` of the `n + 1` surgery with the `n + 2` contact classes from the
/// Legendrian trefoils with `tb = −n`.
pub fn hf_trefoil(n: i64) -> InputDocument {
    InputDocument {
        hf_modules: vec![HfRecord {
            name: hf_module_name(n),
            surgery: Some(n),
            slots: None,
            classes: Some(ContactClassSet::new(n as u64 + 2)),
        }],
        ..Default::default()
    }
}

/// Name of `S₊^{plus} S₋^{minus}(base)`.
pub fn stabilized_name(base: &str, plus: u32, minus: u32) -> String {
    if plus == 0 && minus == 0 {
        return base.to_string();
    }
    let mut s = String::new();
    if plus > 0 {
        s.push_str(&format!("S+^{plus}"));
    }
    if minus > 0 {
        s.push_str(&format!("S-^{minus}"));
    }
    format!("{s}({base})")
}

fn knot(name: &str, topo: &str, tb: i64, rot: i64, tags: &[&str]) -> KnotRecord {
    KnotRecord {
        name: name.into(),
        topo: topo.into(),
        tb,
        rot,
        tags: tags.iter().map(|t| t.to_string()).collect(),
    }
}

/// Knots `S₊^a S₋^b(base)` for all `(a, b)` accepted by `keep`, with the
/// stabilization edges between them. `base` itself must already be present.
fn stabilization_grid(
    facts: &mut FactsRecord,
    base: &str,
    topo: &str,
    tb: i64,
    rot: i64,
    max: u32,
    keep: impl Fn(u32, u32) -> bool,
) {
    for total in 1..=2 * max {
        for a in 0..=total.min(max) {
            let b = total - a;
            if b > max || !keep(a, b) {
                continue;
            }
            let name = stabilized_name(base, a, b);
            facts.knots.push(knot(&name, topo, tb - (a + b) as i64, rot + a as i64 - b as i64, &[]));
            if a > 0 && keep(a - 1, b) {
                facts.statements.push(StatementRecord::StabilizationOf {
                    child: name.clone(),
                    parent: stabilized_name(base, a - 1, b),
                    sign: Sign::Plus,
                    note: None,
                });
            }
            if b > 0 && keep(a, b - 1) {
                facts.statements.push(StatementRecord::StabilizationOf {
                    child: name.clone(),
                    parent: stabilized_name(base, a, b - 1),
                    sign: Sign::Minus,
                    note: None,
                });
            }
        }
    }
}

pub fn torus_topo(k: i64) -> String {
    format!("T(2,{})", 2 * k + 1)
}

pub fn torus_max_name(k: i64) -> String {
    format!("T_m(2,{})", 2 * k + 1)
}

/// Maximal-tb torus knots `T(2, 2k+1)`, `k = 1, 2, 3`, on the punctured torus,
/// plus their stabilizations that still have positive tb.
pub fn torus_facts() -> InputDocument {
    let mut doc = InputDocument::default();
    for k in 1..=3 {
        let fig = torus_page(k);
        doc.surfaces.extend(fig.surfaces);
        doc.curves.extend(fig.curves);
        let (topo, name) = (torus_topo(k), torus_max_name(k));
        let tb = 2 * k - 1;
        let facts = &mut doc.facts;
        facts.knots.push(knot(&name, &topo, tb, 0, &["max-tb representative"]));
        facts.statements.push(StatementRecord::PageWitness {
            knot: name.clone(),
            genus: None,
            surface: Some(torus_surface_name(k)),
            curve: Some(torus_curve_name(k)),
            stein_problem: None,
            note: Some("knot is the curve a+b on the punctured torus".into()),
        });
        let positive = (tb - 1) as u32;
        stabilization_grid(facts, &name, &topo, tb, 0, positive, |a, b| a + b <= positive);
        for a in 0..=positive {
            for b in 0..=positive - a {
                facts.statements.push(StatementRecord::PositiveTb { knot: stabilized_name(&name, a, b), note: None });
            }
        }
    }
    doc
}

pub fn twist_topo(m: usize) -> String {
    format!("K(-{})", 2 * m)
}

/// Number of Legendrian representatives of `K_{−2m}` with `tb = 1`, `rot = 0`.
pub fn twist_max_count(m: usize) -> usize {
    (m * m).div_ceil(2)
}

pub fn twist_rep_name(m: usize, j: usize) -> String {
    format!("{}/L{j}", twist_topo(m))
}

pub fn twist_witness_name(m: usize) -> String {
    format!("{}/K", twist_topo(m))
}

/// Stabilizations `S₊^{n₁}S₋^{n₂}` shipped for each twist-knot representative: `0 ≤ n₁, n₂ ≤ 3`.
pub const TWIST_GRID: u32 = 3;

/// Twist knots `K_{−2m}`, `m = 1 … 5`: every `tb = 1` representative with its
/// stabilizations, and the planar-page witness for the unique `(−1, 0)` representative.
pub fn twist_facts() -> InputDocument {
    let mut doc = InputDocument::default();
    for m in 1..=5 {
        let fig = twist_page(m);
        doc.surfaces.extend(fig.surfaces);
        doc.curves.extend(fig.curves);
        doc.open_books.extend(fig.open_books);
        doc.stein_problems.extend(fig.stein_problems);
        let topo = twist_topo(m);
        let facts = &mut doc.facts;
        for j in 1..=twist_max_count(m) {
            let name = twist_rep_name(m, j);
            facts.knots.push(knot(&name, &topo, 1, 0, &["tb 1 representative"]));
            stabilization_grid(facts, &name, &topo, 1, 0, TWIST_GRID, |_, _| true);
        }
        let witness = twist_witness_name(m);
        facts.knots.push(knot(&witness, &topo, -1, 0, &["planar page curve"]));
        facts.statements.push(StatementRecord::PageWitness {
            knot: witness,
            genus: None,
            surface: Some(twist_surface_name(m)),
            curve: Some(twist_curve_name(m)),
            stein_problem: Some(twist_problem_name(m)),
            note: Some("knot is -X2 on the planar page".into()),
        });
        facts.statements.push(StatementRecord::ClassificationAxiom {
            topo,
            tb: -1,
            rot: 0,
            note: Some("unique representative with tb -1 and rot 0".into()),
        });
    }
    doc
}

pub const TREFOIL: &str = "T(2,3)";
pub const TREFOIL_MAX: &str = "L";
/// Depth of the shipped trefoil mountain: down to `tb = −TREFOIL_DEPTH`.
pub const TREFOIL_DEPTH: i64 = 7;

/// The Legendrian right-handed trefoils down to `tb = −7`, with the genus-1
/// and genus-0 page witnesses, the non-planarity of surgery on the `tb = −7`
/// row, and the orientation pairing of `S₊ⁿ(L)` with `S₋ⁿ(L)`.
pub fn trefoil_facts() -> InputDocument {
    let mut doc = InputDocument::default();
    for part in [torus_page(1), twist_page(1), hf_trefoil(TREFOIL_DEPTH)] {
        doc.surfaces.extend(part.surfaces);
        doc.curves.extend(part.curves);
        doc.open_books.extend(part.open_books);
        doc.stein_problems.extend(part.stein_problems);
        doc.hf_modules.extend(part.hf_modules);
    }
    let depth = (TREFOIL_DEPTH + 1) as u32;
    let facts = &mut doc.facts;
    facts.knots.push(knot(TREFOIL_MAX, TREFOIL, 1, 0, &["max-tb representative"]));
    stabilization_grid(facts, TREFOIL_MAX, TREFOIL, 1, 0, depth, |a, b| a + b <= depth);

    let witness = "T(2,3)/K";
    facts.knots.push(knot(witness, TREFOIL, -1, 0, &["planar page curve"]));
    facts.statements.push(StatementRecord::PageWitness {
        knot: TREFOIL_MAX.into(),
        genus: None,
        surface: Some(torus_surface_name(1)),
        curve: Some(torus_curve_name(1)),
        stein_problem: None,
        note: Some("knot is the curve a+b on the punctured torus".into()),
    });
    facts.statements.push(StatementRecord::PageWitness {
        knot: witness.into(),
        genus: None,
        surface: Some(twist_surface_name(1)),
        curve: Some(twist_curve_name(1)),
        stein_problem: Some(twist_problem_name(1)),
        note: Some("the twist knot K(-2) is the right-handed trefoil".into()),
    });

    for t in 0..=depth as i64 {
        let tb = 1 - t;
        let rots: Vec<i64> = if tb == 1 { vec![0] } else { trefoil_rotation_list((-tb) as u64) };
        for rot in rots {
            facts.statements.push(StatementRecord::ClassificationAxiom {
                topo: TREFOIL.into(),
                tb,
                rot,
                note: Some("Legendrian right-handed trefoils are determined by tb and rot".into()),
            });
        }
    }

    let candidates: Vec<String> = (0..=depth).map(|a| stabilized_name(TREFOIL_MAX, a, depth - a)).collect();
    facts.statements.push(StatementRecord::NonplanarSurgery {
        candidates,
        hf_module: hf_module_name(TREFOIL_DEPTH),
        note: Some("Legendrian surgery on one of the tb = -7 trefoils has no planar open book".into()),
    });
    for n in 1..=depth {
        facts.statements.push(StatementRecord::OrientationMirror {
            a: stabilized_name(TREFOIL_MAX, n, 0),
            b: stabilized_name(TREFOIL_MAX, 0, n),
            note: Some("same knot with reversed orientation".into()),
        });
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::serialize;

    #[test]
    fn names_round_trip_through_builders() {
        for name in names() {
            assert!(build(name).is_some(), "{name}");
        }
        assert!(build("fig9").is_none());
    }

    #[test]
    fn stabilized_names() {
        assert_eq!(stabilized_name("L", 0, 0), "L");
        assert_eq!(stabilized_name("L", 2, 0), "S+^2(L)");
        assert_eq!(stabilized_name("L", 1, 3), "S+^1S-^3(L)");
    }

    #[test]
    fn representative_counts() {
        assert_eq!((1..=5).map(twist_max_count).collect::<Vec<_>>(), vec![1, 2, 5, 8, 13]);
    }

    #[test]
    fn builders_resolve() {
        for name in names() {
            let doc = build(name).unwrap();
            parse_input(&serialize(&doc)).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
