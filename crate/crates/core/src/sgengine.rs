//! Support-genus intervals for Legendrian knots, derived by forward chaining.
//!
//! A [`SGFactBase`] holds Legendrian knot descriptors and facts about them.
//! [`derive_bounds`] runs the rules below to a fixed point and returns, per knot,
//! an interval `lo ≤ sg ≤ hi` together with the steps that produced it.
//!
//! | rule | fact                   | conclusion                                           |
//! |------|------------------------|------------------------------------------------------|
//! | R1   | page witness, genus g  | `hi ≤ g`                                             |
//! | R2   | `child = S±(parent)`   | `hi(child) ≤ hi(parent)`, `lo(parent) ≥ lo(child)`   |
//! | R3   | `tb > 0`               | `lo ≥ 1`                                             |
//! | R4   | surgery bound g        | `lo ≥ g`                                             |
//! | R5   | non-planar surgery     | `lo ≥ 1` for the candidates not already pinned to 0, |
//! |      |                        | once those all lie in one equivalence class          |
//! | R6   | orientation mirror     | both knots share their interval                      |
//! | R7   | classification axiom   | knots with the stated invariants share their interval|
//!
//! Every rule is monotone (more facts or tighter bounds never loosen a
//! conclusion), so the fixed point does not depend on the order facts are
//! listed in. A derivation reaching `lo > hi` is reported, never clamped.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hfbook::{trefoil_rotation_list, NonPlanarity};
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KnotId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegendrianDesc {
    pub topo: String,
    pub tb: i64,
    pub rot: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl LegendrianDesc {
    pub fn new(topo: impl Into<String>, tb: i64, rot: i64) -> Self {
        LegendrianDesc { topo: topo.into(), tb, rot, tags: Vec::new() }
    }

    pub fn tagged(mut self, tag: impl Into<String>) -> Self {
        self.tags.push(tag.into());
        self
    }

    /// Either stabilization lowers tb by one; `S₊` adds one to rot and `S₋` subtracts one.
    pub fn stabilized(&self, sign: Sign) -> LegendrianDesc {
        LegendrianDesc { topo: self.topo.clone(), tb: self.tb - 1, rot: self.rot + sign.value(), tags: Vec::new() }
    }

    pub fn same_invariants(&self, other: &LegendrianDesc) -> bool {
        self.topo == other.topo && self.tb == other.tb && self.rot == other.rot
    }
}

impl fmt::Display for LegendrianDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (tb {}, rot {})", self.topo, self.tb, self.rot)
    }
}

/// `S₊^{plus} S₋^{minus}` applied to `desc`.
pub fn stabilize_desc(desc: &LegendrianDesc, plus: u32, minus: u32) -> LegendrianDesc {
    let mut d = desc.clone();
    for _ in 0..plus {
        d = d.stabilized(Sign::Plus);
    }
    for _ in 0..minus {
        d = d.stabilized(Sign::Minus);
    }
    d.tags = desc.tags.clone();
    d
}

/// Names under which the right-handed trefoil is recognised.
pub const RIGHT_TREFOIL: &[&str] = &["T(2,3)", "K(-2)"];

pub fn is_right_trefoil(topo: &str) -> bool {
    RIGHT_TREFOIL.contains(&topo)
}

/// Whether `(tb, rot)` is realized by a Legendrian right-handed trefoil:
/// `tb = 1, rot = 0`, or `tb = −n` with `rot ∈ {2i − n − 3 : 1 ≤ i ≤ n + 2}` for `n ≥ 0`.
pub fn trefoil_mountain_check(tb: i64, rot: i64) -> bool {
    match tb {
        1 => rot == 0,
        t if t > 1 => false,
        t => trefoil_rotation_list((-t) as u64).contains(&rot),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactKind {
    PageWitness { knot: KnotId, genus: u32 },
    PositiveTb { knot: KnotId },
    SurgeryBound { knot: KnotId, genus: u32 },
    /// At least one candidate has positive support genus.
    NonplanarSurgery { candidates: Vec<KnotId>, evidence: NonPlanarity },
    StabilizationOf { child: KnotId, parent: KnotId, sign: Sign },
    OrientationMirror { a: KnotId, b: KnotId },
    /// At most one Legendrian representative has these invariants.
    ClassificationAxiom { topo: String, tb: i64, rot: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SGFact {
    pub kind: FactKind,
    pub note: Option<String>,
}

impl SGFact {
    pub fn new(kind: FactKind) -> Self {
        SGFact { kind, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactError {
    #[error("knot name `{0}` is used twice")]
    DuplicateKnot(String),
    #[error("unknown knot id {0}")]
    UnknownKnot(usize),
    #[error("`{name}`: {desc} is not a Legendrian right-handed trefoil")]
    NotOnTrefoilMountain { name: String, desc: LegendrianDesc },
    #[error("positive-tb fact on `{0}`, whose tb is not positive")]
    TbNotPositive(String),
    #[error("`{child}` is declared S{sign}(`{parent}`), but its invariants are {got}, expected {expected}")]
    BadStabilization { child: String, parent: String, sign: Sign, got: LegendrianDesc, expected: LegendrianDesc },
    #[error("`{a}` and `{b}` are declared orientation mirrors but {a_desc} vs {b_desc} are not related by rot ↦ −rot")]
    BadMirror { a: String, b: String, a_desc: LegendrianDesc, b_desc: LegendrianDesc },
    #[error("non-planar surgery fact without a planarity obstruction (excess {excess}, HF_red rank {red})")]
    NoObstruction { excess: u64, red: u64 },
    #[error("non-planar surgery fact with no candidates")]
    NoCandidates,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SGFactBase {
    names: Vec<String>,
    descs: Vec<LegendrianDesc>,
    by_name: BTreeMap<String, KnotId>,
    facts: Vec<SGFact>,
}

impl SGFactBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a knot. Right-handed trefoils are checked against the classification.
    pub fn add_knot(&mut self, name: impl Into<String>, desc: LegendrianDesc) -> Result<KnotId, FactError> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(FactError::DuplicateKnot(name));
        }
        if is_right_trefoil(&desc.topo) && !trefoil_mountain_check(desc.tb, desc.rot) {
            return Err(FactError::NotOnTrefoilMountain { name, desc });
        }
        let id = KnotId(self.names.len());
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        self.descs.push(desc);
        Ok(id)
    }

    /// Adds `S±(parent)` under `name` together with its stabilization-of fact.
    pub fn add_stabilization(
        &mut self,
        name: impl Into<String>,
        parent: KnotId,
        sign: Sign,
    ) -> Result<KnotId, FactError> {
        let desc = self.desc(parent)?.stabilized(sign);
        let child = self.add_knot(name, desc)?;
        self.add_fact(SGFact::new(FactKind::StabilizationOf { child, parent, sign }))?;
        Ok(child)
    }

    pub fn add_fact(&mut self, fact: SGFact) -> Result<FactId, FactError> {
        self.validate(&fact.kind)?;
        self.facts.push(fact);
        Ok(FactId(self.facts.len() - 1))
    }

    fn validate(&self, kind: &FactKind) -> Result<(), FactError> {
        match kind {
            FactKind::PageWitness { knot, .. } | FactKind::SurgeryBound { knot, .. } => {
                self.desc(*knot)?;
            }
            FactKind::PositiveTb { knot } => {
                if self.desc(*knot)?.tb <= 0 {
                    return Err(FactError::TbNotPositive(self.name(*knot).to_string()));
                }
            }
            FactKind::NonplanarSurgery { candidates, evidence } => {
                if candidates.is_empty() {
                    return Err(FactError::NoCandidates);
                }
                for &c in candidates {
                    self.desc(c)?;
                }
                if !evidence.obstructs_planarity() {
                    return Err(FactError::NoObstruction { excess: evidence.excess, red: evidence.hf_red_rank });
                }
            }
            FactKind::StabilizationOf { child, parent, sign } => {
                // tb drops by one along every edge, so consistent edges cannot form a cycle
                let expected = self.desc(*parent)?.stabilized(*sign);
                let got = self.desc(*child)?;
                if !got.same_invariants(&expected) {
                    return Err(FactError::BadStabilization {
                        child: self.name(*child).to_string(),
                        parent: self.name(*parent).to_string(),
                        sign: *sign,
                        got: got.clone(),
                        expected,
                    });
                }
            }
            FactKind::OrientationMirror { a, b } => {
                let (da, db) = (self.desc(*a)?, self.desc(*b)?);
                if da.topo != db.topo || da.tb != db.tb || da.rot != -db.rot {
                    return Err(FactError::BadMirror {
                        a: self.name(*a).to_string(),
                        b: self.name(*b).to_string(),
                        a_desc: da.clone(),
                        b_desc: db.clone(),
                    });
                }
            }
            FactKind::ClassificationAxiom { .. } => {}
        }
        Ok(())
    }

    pub fn knot(&self, name: &str) -> Option<KnotId> {
        self.by_name.get(name).copied()
    }

    pub fn desc(&self, id: KnotId) -> Result<&LegendrianDesc, FactError> {
        self.descs.get(id.0).ok_or(FactError::UnknownKnot(id.0))
    }

    pub fn name(&self, id: KnotId) -> &str {
        &self.names[id.0]
    }

    pub fn knot_count(&self) -> usize {
        self.names.len()
    }

    pub fn knots(&self) -> impl Iterator<Item = (KnotId, &str, &LegendrianDesc)> {
        self.names.iter().zip(&self.descs).enumerate().map(|(i, (n, d))| (KnotId(i), n.as_str(), d))
    }

    pub fn facts(&self) -> &[SGFact] {
        &self.facts
    }

    /// Same knots, facts reordered by `order` (a permutation of fact indices).
    pub fn with_fact_order(&self, order: &[usize]) -> SGFactBase {
        let mut out = self.clone();
        out.facts = order.iter().map(|&i| self.facts[i].clone()).collect();
        out
    }

    /// Same knots, only the facts whose indices are listed.
    pub fn with_facts(&self, keep: &[usize]) -> SGFactBase {
        self.with_fact_order(keep)
    }

    /// Knots sharing an interval through R6 / R7, as a class representative per knot.
    fn equivalence_classes(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.knot_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for f in &self.facts {
            match &f.kind {
                FactKind::OrientationMirror { a, b } => union(&mut parent, a.0, b.0),
                FactKind::ClassificationAxiom { .. } => {
                    let members = self.classified_members(&f.kind);
                    for w in members.windows(2) {
                        union(&mut parent, w[0].0, w[1].0);
                    }
                }
                _ => {}
            }
        }
        (0..self.knot_count()).map(|x| find(&mut parent, x)).collect()
    }

    fn classified_members(&self, kind: &FactKind) -> Vec<KnotId> {
        let FactKind::ClassificationAxiom { topo, tb, rot } = kind else {
            return Vec::new();
        };
        self.knots()
            .filter(|(_, _, d)| &d.topo == topo && d.tb == *tb && d.rot == *rot)
            .map(|(id, _, _)| id)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1PageWitness,
    R2Stabilization,
    R3PositiveTb,
    R4SurgeryBound,
    R5NonplanarSurgery,
    R6OrientationMirror,
    R7Classification,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::R1PageWitness => "R1",
            Rule::R2Stabilization => "R2",
            Rule::R3PositiveTb => "R3",
            Rule::R4SurgeryBound => "R4",
            Rule::R5NonplanarSurgery => "R5",
            Rule::R6OrientationMirror => "R6",
            Rule::R7Classification => "R7",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Rule::R1PageWitness => "a supporting open book with the knot on a genus-g page bounds sg above by g",
            Rule::R2Stabilization => "stabilization does not increase support genus",
            Rule::R3PositiveTb => "positive tb in a fillable structure forces positive support genus",
            Rule::R4SurgeryBound => "sg of a knot bounds sg of the surgered contact manifold",
            Rule::R5NonplanarSurgery => "a surgery with no planar open book forces positive support genus",
            Rule::R6OrientationMirror => "knots differing only in orientation share support genus",
            Rule::R7Classification => "Legendrian isotopic knots share support genus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "side", content = "value", rename_all = "lowercase")]
pub enum Bound {
    Lower(u32),
    Upper(u32),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Lower(v) => write!(f, "sg ≥ {v}"),
            Bound::Upper(v) => write!(f, "sg ≤ {v}"),
        }
    }
}

/// One rule application. `premises` index earlier steps whose bounds it used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub knot: KnotId,
    pub bound: Bound,
    pub rule: Rule,
    pub fact: FactId,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SGInterval {
    pub lo: u32,
    /// `None` is unbounded.
    pub hi: Option<u32>,
    /// Indices into [`Derivation::steps`] of the steps that tightened this interval.
    pub trace: Vec<usize>,
}

impl SGInterval {
    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn bounds(&self) -> (u32, Option<u32>) {
        (self.lo, self.hi)
    }
}

impl fmt::Display for SGInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{}, {}]", self.lo, h),
            None => write!(f, "[{}, ∞)", self.lo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inconsistent facts for `{knot}`: derived {lower} and {upper} (facts #{} and #{})", lower_fact.0, upper_fact.0)]
pub struct Inconsistency {
    pub knot: String,
    pub lower: Bound,
    pub upper: Bound,
    pub lower_fact: FactId,
    pub upper_fact: FactId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub intervals: Vec<SGInterval>,
    pub steps: Vec<Step>,
}

/// Working state: current bounds plus the step that last set each.
#[derive(Debug, Clone)]
struct State {
    lo: Vec<u32>,
    hi: Vec<Option<u32>>,
    lo_step: Vec<Option<usize>>,
    hi_step: Vec<Option<usize>>,
}

impl State {
    fn new(n: usize) -> Self {
        State { lo: vec![0; n], hi: vec![None; n], lo_step: vec![None; n], hi_step: vec![None; n] }
    }

    fn tightens(&self, knot: KnotId, bound: Bound) -> bool {
        match bound {
            Bound::Lower(v) => v > self.lo[knot.0],
            Bound::Upper(v) => self.hi[knot.0].is_none_or(|h| v < h),
        }
    }

    fn apply(&mut self, knot: KnotId, bound: Bound, step: usize) {
        match bound {
            Bound::Lower(v) => {
                self.lo[knot.0] = v;
                self.lo_step[knot.0] = Some(step);
            }
            Bound::Upper(v) => {
                self.hi[knot.0] = Some(v);
                self.hi_step[knot.0] = Some(step);
            }
        }
    }

    fn lower_premise(&self, k: KnotId) -> Vec<usize> {
        self.lo_step[k.0].into_iter().collect()
    }

    fn upper_premise(&self, k: KnotId) -> Vec<usize> {
        self.hi_step[k.0].into_iter().collect()
    }
}

/// Conclusions a single fact licenses in the current state, with their premises.
fn conclusions(
    base: &SGFactBase,
    classes: &[usize],
    kind: &FactKind,
    st: &State,
) -> Vec<(KnotId, Bound, Rule, Vec<usize>)> {
    let mut out = Vec::new();
    let share = |out: &mut Vec<_>, from: KnotId, to: KnotId, rule: Rule| {
        if st.lo[from.0] > 0 {
            out.push((to, Bound::Lower(st.lo[from.0]), rule, st.lower_premise(from)));
        }
        if let Some(h) = st.hi[from.0] {
            out.push((to, Bound::Upper(h), rule, st.upper_premise(from)));
        }
    };
    match kind {
        FactKind::PageWitness { knot, genus } => out.push((*knot, Bound::Upper(*genus), Rule::R1PageWitness, vec![])),
        FactKind::PositiveTb { knot } => out.push((*knot, Bound::Lower(1), Rule::R3PositiveTb, vec![])),
        FactKind::SurgeryBound { knot, genus } => {
            out.push((*knot, Bound::Lower(*genus), Rule::R4SurgeryBound, vec![]))
        }
        FactKind::StabilizationOf { child, parent, .. } => {
            if let Some(h) = st.hi[parent.0] {
                out.push((*child, Bound::Upper(h), Rule::R2Stabilization, st.upper_premise(*parent)));
            }
            if st.lo[child.0] > 0 {
                out.push((*parent, Bound::Lower(st.lo[child.0]), Rule::R2Stabilization, st.lower_premise(*child)));
            }
        }
        FactKind::OrientationMirror { a, b } => {
            share(&mut out, *a, *b, Rule::R6OrientationMirror);
            share(&mut out, *b, *a, Rule::R6OrientationMirror);
        }
        FactKind::ClassificationAxiom { .. } => {
            let members = base.classified_members(kind);
            for &from in &members {
                for &to in &members {
                    if from != to {
                        share(&mut out, from, to, Rule::R7Classification);
                    }
                }
            }
        }
        FactKind::NonplanarSurgery { candidates, .. } => {
            let (dead, live): (Vec<KnotId>, Vec<KnotId>) =
                candidates.iter().partition(|c| st.hi[c.0] == Some(0));
            let premises: Vec<usize> = dead.iter().flat_map(|&d| st.upper_premise(d)).collect();
            let single_class = live.windows(2).all(|w| classes[w[0].0] == classes[w[1].0]);
            if live.is_empty() {
                // every candidate is already planar: conclude anyway so the clash is reported
                for &c in candidates {
                    out.push((c, Bound::Lower(1), Rule::R5NonplanarSurgery, premises.clone()));
                }
            } else if single_class {
                for &c in &live {
                    out.push((c, Bound::Lower(1), Rule::R5NonplanarSurgery, premises.clone()));
                }
            }
        }
    }
    out
}

/// Runs R1–R7 to a fixed point.
pub fn derive_bounds(base: &SGFactBase) -> Result<Derivation, Inconsistency> {
    let classes = base.equivalence_classes();
    let mut st = State::new(base.knot_count());
    let mut steps: Vec<Step> = Vec::new();
    loop {
        let mut changed = false;
        for (fi, fact) in base.facts.iter().enumerate() {
            for (knot, bound, rule, premises) in conclusions(base, &classes, &fact.kind, &st) {
                if !st.tightens(knot, bound) {
                    continue;
                }
                steps.push(Step { knot, bound, rule, fact: FactId(fi), premises });
                st.apply(knot, bound, steps.len() - 1);
                changed = true;
                if let (lo, Some(hi)) = (st.lo[knot.0], st.hi[knot.0]) {
                    if lo > hi {
                        let lo_step = &steps[st.lo_step[knot.0].unwrap()];
                        let hi_step = &steps[st.hi_step[knot.0].unwrap()];
                        return Err(Inconsistency {
                            knot: base.name(knot).to_string(),
                            lower: lo_step.bound,
                            upper: hi_step.bound,
                            lower_fact: lo_step.fact,
                            upper_fact: hi_step.fact,
                        });
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut intervals: Vec<SGInterval> = (0..base.knot_count())
        .map(|k| SGInterval { lo: st.lo[k], hi: st.hi[k], trace: Vec::new() })
        .collect();
    for (i, s) in steps.iter().enumerate() {
        intervals[s.knot.0].trace.push(i);
    }
    Ok(Derivation { intervals, steps })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step} is not licensed by fact #{fact} in the replayed state")]
pub struct ReplayError {
    pub step: usize,
    pub fact: usize,
}

/// Re-applies exactly the recorded steps, checking each against its cited fact,
/// and returns the resulting `(lo, hi)` per knot.
pub fn replay(base: &SGFactBase, steps: &[Step]) -> Result<Vec<(u32, Option<u32>)>, ReplayError> {
    let classes = base.equivalence_classes();
    let mut st = State::new(base.knot_count());
    for (i, s) in steps.iter().enumerate() {
        let err = ReplayError { step: i, fact: s.fact.0 };
        let fact = base.facts.get(s.fact.0).ok_or(err.clone())?;
        let licensed = conclusions(base, &classes, &fact.kind, &st)
            .into_iter()
            .any(|(k, b, r, _)| k == s.knot && b == s.bound && r == s.rule);
        if !licensed || !st.tightens(s.knot, s.bound) {
            return Err(err);
        }
        st.apply(s.knot, s.bound, i);
    }
    Ok(st.lo.into_iter().zip(st.hi).collect())
}

impl Derivation {
    pub fn interval(&self, knot: KnotId) -> &SGInterval {
        &self.intervals[knot.0]
    }

    /// All steps the final interval of `knot` depends on, in derivation order.
    pub fn support(&self, knot: KnotId) -> Vec<usize> {
        let iv = self.interval(knot);
        let mut needed = vec![false; self.steps.len()];
        let mut stack: Vec<usize> = iv.trace.iter().rev().take(2).copied().collect();
        // only the steps that set the final lo / hi matter
        stack.retain(|&i| {
            let s = &self.steps[i];
            match s.bound {
                Bound::Lower(v) => v == iv.lo,
                Bound::Upper(v) => Some(v) == iv.hi,
            }
        });
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            stack.extend(self.steps[i].premises.iter().copied());
        }
        (0..self.steps.len()).filter(|&i| needed[i]).collect()
    }

    /// Human-readable proof of the interval of `knot`.
    pub fn render_trace(&self, base: &SGFactBase, knot: KnotId) -> String {
        let mut out = String::new();
        let support = self.support(knot);
        for (n, &i) in support.iter().enumerate() {
            let s = &self.steps[i];
            let fact = &base.facts[s.fact.0];
            let note = fact.note.as_deref().map(|n| format!(" [{n}]")).unwrap_or_default();
            out.push_str(&format!(
                "  {:>3}. {}: {}  by {} via fact #{} ({}){}\n",
                n + 1,
                base.name(s.knot),
                s.bound,
                s.rule.code(),
                s.fact.0,
                describe_fact(base, &fact.kind),
                note
            ));
        }
        out
    }
}

pub fn describe_fact(base: &SGFactBase, kind: &FactKind) -> String {
    let n = |k: &KnotId| base.name(*k).to_string();
    match kind {
        FactKind::PageWitness { knot, genus } => format!("page-witness: `{}` on a genus-{genus} page", n(knot)),
        FactKind::PositiveTb { knot } => format!("positive-tb: `{}`", n(knot)),
        FactKind::SurgeryBound { knot, genus } => format!("surgery-bound: `{}` surgers to sg ≥ {genus}", n(knot)),
        FactKind::NonplanarSurgery { candidates, evidence } => format!(
            "nonplanar-surgery: one of {} candidates (excess {}, HF_red rank {})",
            candidates.len(),
            evidence.excess,
            evidence.hf_red_rank
        ),
        FactKind::StabilizationOf { child, parent, sign } => {
            format!("stabilization-of: `{}` = S{sign}(`{}`)", n(child), n(parent))
        }
        FactKind::OrientationMirror { a, b } => format!("orientation-mirror: `{}` ~ `{}`", n(a), n(b)),
        FactKind::ClassificationAxiom { topo, tb, rot } => {
            format!("classification-axiom: unique {topo} with tb {tb}, rot {rot}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil(tb: i64, rot: i64) -> LegendrianDesc {
        LegendrianDesc::new("T(2,3)", tb, rot)
    }

    #[test]
    fn stabilization_arithmetic() {
        let l = trefoil(1, 0);
        let s = l.stabilized(Sign::Plus);
        assert_eq!((s.tb, s.rot), (0, 1));
        let s = stabilize_desc(&l, 3, 2);
        assert_eq!((s.tb, s.rot), (1 - 3 - 2, 3 - 2));
    }

    #[test]
    fn extremes_of_rotation_list_are_pure_stabilizations() {
        for n in 1..12u32 {
            let list = trefoil_rotation_list(n as u64);
            let up = stabilize_desc(&trefoil(1, 0), n + 1, 0);
            let down = stabilize_desc(&trefoil(1, 0), 0, n + 1);
            assert_eq!(up.tb, -(n as i64));
            assert_eq!(*list.last().unwrap(), up.rot);
            assert_eq!(*list.first().unwrap(), down.rot);
        }
    }

    #[test]
    fn mountain_check() {
        assert!(trefoil_mountain_check(1, 0));
        assert!(!trefoil_mountain_check(1, 2));
        assert!(trefoil_mountain_check(-2, -1));
        assert!(!trefoil_mountain_check(-2, 0));
        assert!(!trefoil_mountain_check(2, 0));
        assert!(trefoil_mountain_check(0, 1));
        assert!(trefoil_mountain_check(0, -1));
        assert!(!trefoil_mountain_check(0, 0));
    }

    #[test]
    fn off_mountain_trefoil_rejected() {
        let mut b = SGFactBase::new();
        assert!(matches!(b.add_knot("x", trefoil(2, 0)), Err(FactError::NotOnTrefoilMountain { .. })));
    }

    #[test]
    fn witness_and_positive_tb_pin_the_genus() {
        let mut b = SGFactBase::new();
        let l = b.add_knot("L", trefoil(1, 0)).unwrap();
        b.add_fact(SGFact::new(FactKind::PageWitness { knot: l, genus: 1 })).unwrap();
        b.add_fact(SGFact::new(FactKind::PositiveTb { knot: l })).unwrap();
        let d = derive_bounds(&b).unwrap();
        assert_eq!(d.interval(l).bounds(), (1, Some(1)));
        assert_eq!(d.interval(l).trace.len(), 2);
    }

    #[test]
    fn upper_bounds_flow_down_lower_bounds_flow_up() {
        let mut b = SGFactBase::new();
        let l = b.add_knot("L", trefoil(1, 0)).unwrap();
        let s = b.add_stabilization("S+L", l, Sign::Plus).unwrap();
        let ss = b.add_stabilization("S+S+L", s, Sign::Plus).unwrap();
        b.add_fact(SGFact::new(FactKind::PageWitness { knot: l, genus: 2 })).unwrap();
        b.add_fact(SGFact::new(FactKind::SurgeryBound { knot: ss, genus: 1 })).unwrap();
        let d = derive_bounds(&b).unwrap();
        for k in [l, s, ss] {
            assert_eq!(d.interval(k).bounds(), (1, Some(2)));
        }
    }

    #[test]
    fn contradictions_are_reported() {
        let mut b = SGFactBase::new();
        let l = b.add_knot("L", trefoil(1, 0)).unwrap();
        b.add_fact(SGFact::new(FactKind::PageWitness { knot: l, genus: 0 })).unwrap();
        b.add_fact(SGFact::new(FactKind::PositiveTb { knot: l })).unwrap();
        let e = derive_bounds(&b).unwrap_err();
        assert_eq!(e.knot, "L");
        assert_eq!((e.lower_fact, e.upper_fact), (FactId(1), FactId(0)));
    }

    #[test]
    fn invalid_facts_rejected() {
        let mut b = SGFactBase::new();
        let l = b.add_knot("L", trefoil(-1, 0)).unwrap();
        let m = b.add_knot("M", trefoil(-2, -1)).unwrap();
        let p = b.add_knot("P", trefoil(-2, 1)).unwrap();
        assert!(matches!(b.add_fact(SGFact::new(FactKind::PositiveTb { knot: l })), Err(FactError::TbNotPositive(_))));
        assert!(b
            .add_fact(SGFact::new(FactKind::StabilizationOf { child: m, parent: l, sign: Sign::Plus }))
            .is_err());
        b.add_fact(SGFact::new(FactKind::StabilizationOf { child: m, parent: l, sign: Sign::Minus })).unwrap();
        b.add_fact(SGFact::new(FactKind::OrientationMirror { a: m, b: p })).unwrap();
        assert!(b.add_fact(SGFact::new(FactKind::OrientationMirror { a: m, b: l })).is_err());
        let evidence = NonPlanarity { excess: 0, hf_red_rank: 1 };
        assert!(matches!(
            b.add_fact(SGFact::new(FactKind::NonplanarSurgery { candidates: vec![m], evidence })),
            Err(FactError::NoObstruction { .. })
        ));
    }

    #[test]
    fn nonplanar_disjunction_resolves_through_mirror_class() {
        let mut b = SGFactBase::new();
        let mid = b.add_knot("mid", trefoil(-1, 0)).unwrap();
        let lo = b.add_knot("left", trefoil(-1, -2)).unwrap();
        let hi = b.add_knot("right", trefoil(-1, 2)).unwrap();
        let evidence = NonPlanarity { excess: 1, hf_red_rank: 1 };
        b.add_fact(SGFact::new(FactKind::NonplanarSurgery { candidates: vec![lo, mid, hi], evidence })).unwrap();
        // without more information nothing follows
        let d = derive_bounds(&b).unwrap();
        assert_eq!(d.interval(lo).lo, 0);

        b.add_fact(SGFact::new(FactKind::PageWitness { knot: mid, genus: 0 })).unwrap();
        let d = derive_bounds(&b).unwrap();
        assert_eq!(d.interval(lo).lo, 0, "two live candidates in different classes");

        b.add_fact(SGFact::new(FactKind::OrientationMirror { a: lo, b: hi })).unwrap();
        let d = derive_bounds(&b).unwrap();
        assert_eq!(d.interval(lo).lo, 1);
        assert_eq!(d.interval(hi).lo, 1);
        let replayed = replay(&b, &d.steps).unwrap();
        assert_eq!(replayed[lo.0], (1, None));
    }

    #[test]
    fn classification_identifies_knots() {
        let mut b = SGFactBase::new();
        let a = b.add_knot("a", LegendrianDesc::new("K(-4)", -1, 0)).unwrap();
        let c = b.add_knot("c", LegendrianDesc::new("K(-4)", -1, 0)).unwrap();
        b.add_fact(SGFact::new(FactKind::PageWitness { knot: a, genus: 0 })).unwrap();
        assert_eq!(derive_bounds(&b).unwrap().interval(c).hi, None);
        b.add_fact(SGFact::new(FactKind::ClassificationAxiom { topo: "K(-4)".into(), tb: -1, rot: 0 })).unwrap();
        let d = derive_bounds(&b).unwrap();
        assert_eq!(d.interval(c).bounds(), (0, Some(0)));
        assert_eq!(d.steps.last().unwrap().rule, Rule::R7Classification);
    }

    #[test]
    fn replay_rejects_forged_steps() {
        let mut b = SGFactBase::new();
        let l = b.add_knot("L", trefoil(1, 0)).unwrap();
        b.add_fact(SGFact::new(FactKind::PageWitness { knot: l, genus: 1 })).unwrap();
        let forged = Step { knot: l, bound: Bound::Upper(0), rule: Rule::R1PageWitness, fact: FactId(0), premises: vec![] };
        assert_eq!(replay(&b, &[forged]), Err(ReplayError { step: 0, fact: 0 }));
    }
}
