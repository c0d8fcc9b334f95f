//! Commands run against a parsed document, each producing a human table and a JSON value.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::document::{format_word, DocError, InputDocument, Resolved};
use crate::hfbook::{hf_hat, hf_red_rank, planarity_obstruction};
use crate::seifert::{seifert_matrix, thurston_bennequin};
use crate::sgengine::{derive_bounds, SGInterval};
use crate::stein::{RotationOutcome, SteinProblem};
use crate::verify;
use crate::zlinalg::{kernel_basis, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Tb,
    Rot,
    Snf,
    Hf,
    SgBounds,
    VerifyPaper,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Tb, Command::Rot, Command::Snf, Command::Hf, Command::SgBounds, Command::VerifyPaper];

    pub fn name(self) -> &'static str {
        match self {
            Command::Tb => "tb",
            Command::Rot => "rot",
            Command::Snf => "snf",
            Command::Hf => "hf",
            Command::SgBounds => "sg-bounds",
            Command::VerifyPaper => "verify-paper",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, CommandError> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| CommandError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("unknown command `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Parse(#[from] DocError),
    #[error("{command}: `{record}`: {message}")]
    Compute { command: Command, record: String, message: String },
}

impl CommandError {
    /// 2 for input problems, 1 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Unknown(_) | CommandError::Parse(_) => 2,
            CommandError::Compute { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Command,
    pub human: String,
    pub machine: Value,
    /// False when the command ran but something it checks did not hold.
    pub success: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

pub fn run_command(command: Command, doc: &InputDocument) -> Result<Report, CommandError> {
    if command == Command::VerifyPaper {
        return Ok(verify_paper());
    }
    let resolved = doc.resolve()?;
    let fail = |record: &str, message: String| CommandError::Compute { command, record: record.to_string(), message };
    let (human, machine) = match command {
        Command::Tb => tb(&resolved, fail)?,
        Command::Rot => rot(&resolved, fail)?,
        Command::Snf => snf(&resolved, fail)?,
        Command::Hf => hf(&resolved, fail)?,
        Command::SgBounds => sg_bounds(&resolved, fail)?,
        Command::VerifyPaper => unreachable!(),
    };
    Ok(Report { command, human, machine, success: true })
}

/// Left-aligned plain-text table.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn vec_str(v: &[i64]) -> String {
    format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
}

type Output = (String, Value);

fn tb(r: &Resolved, fail: impl Fn(&str, String) -> CommandError) -> Result<Output, CommandError> {
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for c in &r.curves {
        let surface = r.surface(&c.surface).expect("resolved curve has a surface");
        let tb = thurston_bennequin(surface, &c.class).map_err(|e| fail(&c.name, e.to_string()))?;
        let word = c.class.traversal.as_ref().map(|w| format_word(surface.labels(), w).join(" "));
        rows.push(vec![
            c.name.clone(),
            c.surface.clone(),
            surface.genus().to_string(),
            word.clone().unwrap_or_else(|| vec_str(&c.class.coefficients)),
            tb.to_string(),
        ]);
        items.push(json!({
            "curve": c.name,
            "surface": c.surface,
            "genus": surface.genus(),
            "boundary_components": surface.boundary_components(),
            "class": c.class.coefficients,
            "word": word,
            "tb": tb,
        }));
    }
    Ok((table(&["curve", "surface", "genus", "class", "tb"], &rows), json!({ "curves": items })))
}

fn chain(problem: &SteinProblem, coefficients: &[i64]) -> String {
    let mut out = String::new();
    for (c, curve) in coefficients.iter().zip(problem.curves()) {
        if *c == 0 {
            continue;
        }
        let term = format!("S_{}", curve.name);
        let mag = if c.abs() == 1 { term } else { format!("{}·{term}", c.abs()) };
        match (out.is_empty(), *c > 0) {
            (true, true) => out.push_str(&mag),
            (true, false) => out.push_str(&format!("-{mag}")),
            (false, true) => out.push_str(&format!(" + {mag}")),
            (false, false) => out.push_str(&format!(" - {mag}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn rot(r: &Resolved, fail: impl Fn(&str, String) -> CommandError) -> Result<Output, CommandError> {
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for (name, p) in &r.stein_problems {
        let outcome = p.rotation_number().map_err(|e| fail(name, e.to_string()))?;
        let k = &p.curves()[p.distinguished()].name;
        match &outcome {
            RotationOutcome::Determined(d) => {
                rows.push(vec![name.clone(), k.clone(), d.rot.to_string(), chain(p, &d.h), vec_str(&d.c1)]);
                items.push(json!({
                    "problem": name, "curve": k, "determined": true,
                    "rot": d.rot, "h": d.h, "h_chain": chain(p, &d.h), "c1": d.c1,
                }));
            }
            RotationOutcome::Ambiguous(a) => {
                rows.push(vec![name.clone(), k.clone(), "ambiguous".into(), format!("kernel rank {}", a.kernel_basis.len()), vec_str(&a.c1)]);
                items.push(json!({
                    "problem": name, "curve": k, "determined": false,
                    "kernel_basis": a.kernel_basis, "pairings": a.pairings, "c1": a.c1,
                }));
            }
        }
    }
    Ok((table(&["problem", "curve", "rot", "h", "c1"], &rows), json!({ "problems": items })))
}

fn smith_item(label: &str, m: &IntMatrix) -> Result<(Vec<String>, Value), String> {
    let s = m.smith().map_err(|e| e.to_string())?;
    let kernel = kernel_basis(m).map_err(|e| e.to_string())?;
    let diag = s.diagonal();
    let row = vec![
        label.to_string(),
        format!("{}x{}", m.rows(), m.cols()),
        vec_str(&diag),
        s.rank().to_string(),
        kernel.iter().map(|v| vec_str(v)).collect::<Vec<_>>().join(" "),
    ];
    let value = json!({
        "matrix": label,
        "rows": m.to_rows(),
        "diagonal": diag,
        "invariant_factors": s.invariant_factors(),
        "rank": s.rank(),
        "u": s.u.to_rows(),
        "v": s.v.to_rows(),
        "kernel_basis": kernel,
    });
    Ok((row, value))
}

fn snf(r: &Resolved, fail: impl Fn(&str, String) -> CommandError) -> Result<Output, CommandError> {
    let mut targets: Vec<(String, IntMatrix)> = r.matrices.clone();
    for (name, s) in &r.surfaces {
        targets.push((format!("{name}.seifert"), seifert_matrix(s).v));
    }
    for (name, p) in &r.stein_problems {
        targets.push((format!("{name}.d2"), p.boundary_matrix()));
    }
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for (label, m) in &targets {
        let (row, value) = smith_item(label, m).map_err(|e| fail(label, e))?;
        rows.push(row);
        items.push(value);
    }
    Ok((table(&["matrix", "size", "diagonal", "rank", "kernel basis"], &rows), json!({ "matrices": items })))
}

fn hf(r: &Resolved, fail: impl Fn(&str, String) -> CommandError) -> Result<Output, CommandError> {
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for h in &r.hf_modules {
        let hat = hf_hat(&h.module);
        let red = hf_red_rank(&h.module);
        let obstruction = match &h.classes {
            Some(c) => Some(planarity_obstruction(c, &h.module).map_err(|e| fail(&h.name, e.to_string()))?),
            None => None,
        };
        let hat_str = if hat.len() > 6 {
            format!("{} … {} ({} slots)", vec_str(&hat[..3].iter().map(|&x| x as i64).collect::<Vec<_>>()), hat[hat.len() - 1], hat.len())
        } else {
            vec_str(&hat.iter().map(|&x| x as i64).collect::<Vec<_>>())
        };
        rows.push(vec![
            h.name.clone(),
            hat_str,
            red.to_string(),
            h.classes.map_or("-".into(), |c| c.count.to_string()),
            obstruction.map_or("-".into(), |o| o.excess.to_string()),
            obstruction.map_or("-".into(), |o| if o.obstructs_planarity() { "yes".into() } else { "no".into() }),
        ]);
        items.push(json!({
            "module": h.name,
            "spinc_count": h.module.spinc_count(),
            "hf_hat": hat,
            "hf_red_rank": red,
            "classes": h.classes.map(|c| c.count),
            "excess": obstruction.map(|o| o.excess),
            "obstructs_planarity": obstruction.map(|o| o.obstructs_planarity()),
        }));
    }
    Ok((
        table(&["module", "HF-hat ranks", "HF_red", "classes", "excess", "non-planar"], &rows),
        json!({ "modules": items }),
    ))
}

fn interval_json(iv: &SGInterval) -> Value {
    json!({ "lo": iv.lo, "hi": iv.hi })
}

fn sg_bounds(r: &Resolved, fail: impl Fn(&str, String) -> CommandError) -> Result<Output, CommandError> {
    let Some(base) = &r.facts else {
        return Ok(("no facts in document\n".into(), json!({ "knots": [], "steps": [] })));
    };
    let d = derive_bounds(base).map_err(|e| fail(&e.knot, e.to_string()))?;
    let mut rows = Vec::new();
    let mut knots = Vec::new();
    let mut traces = String::new();
    for (id, name, desc) in base.knots() {
        let iv = d.interval(id);
        rows.push(vec![name.to_string(), desc.topo.clone(), desc.tb.to_string(), desc.rot.to_string(), iv.to_string()]);
        knots.push(json!({
            "knot": name, "topo": desc.topo, "tb": desc.tb, "rot": desc.rot,
            "interval": interval_json(iv), "support": d.support(id),
        }));
        if iv.is_exact() {
            traces.push_str(&format!("\n{name}: sg = {}\n", iv.lo));
            traces.push_str(&d.render_trace(base, id));
        }
    }
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|s| {
            json!({
                "knot": base.name(s.knot), "bound": s.bound, "rule": s.rule.code(),
                "fact": s.fact.0, "premises": s.premises,
            })
        })
        .collect();
    let mut human = table(&["knot", "topo", "tb", "rot", "sg"], &rows);
    if !traces.is_empty() {
        human.push_str("\nderivations of exact values:\n");
        human.push_str(&traces);
    }
    Ok((human, json!({ "knots": knots, "steps": steps })))
}

fn verify_paper() -> Report {
    let results = verify::run_all();
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|c| vec![c.id.to_string(), if c.passed { "PASS" } else { "FAIL" }.into(), c.title.into(), c.detail.clone()])
        .collect();
    let success = results.iter().all(|c| c.passed);
    let mut human = table(&["#", "result", "criterion", "detail"], &rows);
    human.push_str(if success { "\nall criteria pass\n" } else { "\nsome criteria FAILED\n" });
    let machine = json!({
        "criteria": results.iter().map(|c| json!({
            "id": c.id, "title": c.title, "passed": c.passed, "detail": c.detail,
        })).collect::<Vec<_>>(),
        "passed": success,
    });
    Report { command: Command::VerifyPaper, human, machine, success }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_input;

    #[test]
    fn command_names() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert_eq!("bogus".parse::<Command>().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn table_layout() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }

    #[test]
    fn snf_on_matrix_record() {
        let doc = parse_input("[[matrices]]\nname = \"m\"\nrows = [[2, 4], [6, 8]]\n").unwrap();
        let r = run_command(Command::Snf, &doc).unwrap();
        assert_eq!(r.machine["matrices"][0]["diagonal"], json!([2, 4]));
    }

    #[test]
    fn empty_document_gives_empty_reports() {
        for c in [Command::Tb, Command::Rot, Command::Snf, Command::Hf, Command::SgBounds] {
            assert!(run_command(c, &InputDocument::default()).unwrap().success);
        }
    }

    #[test]
    fn separating_curve_is_a_compute_error() {
        let text = "[[surfaces]]\nname = \"s\"\nfeet = [\"a\", \"a\"]\nbands = [{ label = \"a\" }]\n\
                    [[curves]]\nname = \"z\"\nsurface = \"s\"\ncoefficients = [0]\n";
        let doc = parse_input(text).unwrap();
        assert_eq!(run_command(Command::Tb, &doc).unwrap_err().exit_code(), 1);
    }
}
