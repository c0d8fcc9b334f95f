//! Rotation numbers of page curves via a Stein 2-handlebody.
//!
//! Start from `♮ᵖ(S¹×D³)` (1-handles `X₁ … X_p`, one per band of a planar page)
//! and attach a Weinstein 2-handle along every positive monodromy curve and
//! along the surgery knot `K`. In the cellular chain complex the cores `S_c` of
//! the 2-handles have boundary `d₂(S_c) = Σ traversal(c)ⱼ·Xⱼ`, and `c₁` of the
//! Stein structure is dual to `Σ r(c)·C_c` where `r(c)` is the rotation number of
//! `c` in the identity-monodromy open book on `#ᵖ(S¹×S²)`. If `h ∈ ker d₂` has
//! coefficient `+1` on `S_K`, then `rot(K) = ⟨c₁, h⟩ = Σ h_c·r(c)`.

use std::fmt;

use thiserror::Error;

use crate::ribbon::{CurveClass, OpenBook, Pass, RibbonError};
use crate::zlinalg::{kernel_basis, IntMatrix, LinalgError};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinError {
    #[error("curve `{curve}` has a traversal vector of length {got}, expected {expected} one-handles")]
    Length { curve: String, got: usize, expected: usize },
    #[error("distinguished curve index {index} out of range for {count} curves")]
    DistinguishedOutOfRange { index: usize, count: usize },
    #[error("curve `{0}` carries a left-handed twist; the Stein construction needs positive monodromy")]
    NegativeTwist(String),
    #[error("curve `{0}` has neither an explicit base rotation nor a traversal word; a homology class alone does not determine it")]
    ExplicitInputRequired(String),
    #[error("curve `{curve}`: word {word:?} does not abelianize to its traversal vector {vector:?}")]
    TraversalMismatch { curve: String, word: Vec<i64>, vector: Vec<i64> },
    #[error("traversal word turns back through one-handle {handle} with no room to decide the turning direction")]
    AmbiguousTurn { handle: usize },
    #[error("traversal word references one-handle {handle}, but only {count} exist")]
    UnknownHandle { handle: usize, count: usize },
    #[error(
        "no kernel vector of d2 has coefficient ±1 on the distinguished curve \
         (kernel rank {rank}, distinguished coefficients {coefficients:?})"
    )]
    NoAdmissibleKernel { rank: usize, coefficients: Vec<i64> },
    #[error("page has genus {0}; the handle-diagram construction needs a planar page")]
    NotPlanar(usize),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, SteinError>;

/// A 2-handle attaching curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoHandleCurve {
    pub name: String,
    /// Signed number of runs over each 1-handle.
    pub traversal: Vec<i64>,
    /// The order in which the curve runs over the 1-handles, when known.
    pub word: Option<Vec<Pass>>,
    /// Explicit base rotation; overrides any value computed from `word`.
    pub rotation: Option<i64>,
    pub sign: Sign,
}

impl TwoHandleCurve {
    pub fn new(name: impl Into<String>, traversal: Vec<i64>) -> Self {
        TwoHandleCurve { name: name.into(), traversal, word: None, rotation: None, sign: Sign::Plus }
    }

    pub fn from_word(name: impl Into<String>, handles: usize, word: Vec<Pass>) -> Self {
        let mut traversal = vec![0; handles];
        for p in &word {
            if p.band < handles {
                traversal[p.band] += p.sign.value();
            }
        }
        TwoHandleCurve { word: Some(word), ..Self::new(name, traversal) }
    }

    pub fn with_rotation(mut self, r: i64) -> Self {
        self.rotation = Some(r);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinProblem {
    one_handles: Vec<String>,
    curves: Vec<TwoHandleCurve>,
    distinguished: usize,
}

impl SteinProblem {
    pub fn new(one_handles: Vec<String>, curves: Vec<TwoHandleCurve>, distinguished: usize) -> Result<Self> {
        let p = one_handles.len();
        if distinguished >= curves.len() {
            return Err(SteinError::DistinguishedOutOfRange { index: distinguished, count: curves.len() });
        }
        for c in &curves {
            if c.traversal.len() != p {
                return Err(SteinError::Length { curve: c.name.clone(), got: c.traversal.len(), expected: p });
            }
            if c.sign != Sign::Plus {
                return Err(SteinError::NegativeTwist(c.name.clone()));
            }
            if let Some(word) = &c.word {
                let mut ab = vec![0; p];
                for pass in word {
                    if pass.band >= p {
                        return Err(SteinError::UnknownHandle { handle: pass.band, count: p });
                    }
                    ab[pass.band] += pass.sign.value();
                }
                if ab != c.traversal {
                    return Err(SteinError::TraversalMismatch {
                        curve: c.name.clone(),
                        word: ab,
                        vector: c.traversal.clone(),
                    });
                }
            }
        }
        Ok(SteinProblem { one_handles, curves, distinguished })
    }

    /// Handles are the bands of the (planar) page; curves are the monodromy
    /// twist curves in order, followed by the surgery curve `K`, which is distinguished.
    pub fn from_open_book(book: &OpenBook, surgery: &CurveClass, surgery_name: &str) -> Result<Self> {
        let page = book.page();
        if !page.is_planar() {
            return Err(SteinError::NotPlanar(page.genus()));
        }
        page.check_curve(surgery)?;
        let mut curves = Vec::new();
        for (i, t) in book.monodromy().iter().enumerate() {
            let name = format!("gamma{}", i + 1);
            if t.sign != Sign::Plus {
                return Err(SteinError::NegativeTwist(name));
            }
            curves.push(TwoHandleCurve {
                name,
                traversal: t.curve.coefficients.clone(),
                word: t.curve.traversal.clone(),
                rotation: None,
                sign: Sign::Plus,
            });
        }
        curves.push(TwoHandleCurve {
            name: surgery_name.to_string(),
            traversal: surgery.coefficients.clone(),
            word: surgery.traversal.clone(),
            rotation: None,
            sign: Sign::Plus,
        });
        let k = curves.len() - 1;
        Self::new(page.labels().to_vec(), curves, k)
    }

    pub fn one_handles(&self) -> &[String] {
        &self.one_handles
    }

    pub fn curves(&self) -> &[TwoHandleCurve] {
        &self.curves
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    /// `d₂`: one row per 1-handle, one column per 2-handle.
    pub fn boundary_matrix(&self) -> IntMatrix {
        let cols: Vec<&[i64]> = self.curves.iter().map(|c| c.traversal.as_slice()).collect();
        IntMatrix::from_columns(self.one_handles.len(), &cols).expect("lengths validated at construction")
    }

    /// Base rotation numbers, i.e. `c₁` in the cocore basis, with the default convention.
    pub fn c1_cochain(&self) -> Result<Vec<i64>> {
        self.c1_cochain_with(&HandleWinding)
    }

    pub fn c1_cochain_with(&self, convention: &dyn RotationConvention) -> Result<Vec<i64>> {
        self.curves
            .iter()
            .map(|c| match (c.rotation, &c.word) {
                (Some(r), _) => Ok(r),
                (None, Some(word)) => convention.base_rotation(word),
                (None, None) => Err(SteinError::ExplicitInputRequired(c.name.clone())),
            })
            .collect()
    }

    pub fn rotation_number(&self) -> Result<RotationOutcome> {
        self.rotation_number_with(&HandleWinding)
    }

    pub fn rotation_number_with(&self, convention: &dyn RotationConvention) -> Result<RotationOutcome> {
        let c1 = self.c1_cochain_with(convention)?;
        let basis = kernel_basis(&self.boundary_matrix())?;
        let k = self.distinguished;
        let coefficients: Vec<i64> = basis.iter().map(|v| v[k]).collect();
        let obstruction = || SteinError::NoAdmissibleKernel { rank: basis.len(), coefficients: coefficients.clone() };
        let pair = |h: &[i64]| -> Result<i64> {
            h.iter().zip(&c1).try_fold(0i64, |acc, (&a, &b)| {
                a.checked_mul(b)
                    .and_then(|x| x.checked_add(acc))
                    .ok_or(SteinError::Linalg(LinalgError::Overflow("Chern pairing")))
            })
        };

        match basis.len() {
            0 => Err(obstruction()),
            1 => {
                let mut h = basis[0].clone();
                match h[k] {
                    1 => {}
                    -1 => h.iter_mut().for_each(|x| *x = -*x),
                    _ => return Err(obstruction()),
                }
                let rot = pair(&h)?;
                Ok(RotationOutcome::Determined(RotationResult { rot, h, c1 }))
            }
            _ => {
                if coefficients.iter().fold(0, |g, &c| crate::zlinalg::gcd(g, c)) != 1 {
                    return Err(obstruction());
                }
                let pairings = basis.iter().map(|v| pair(v)).collect::<Result<Vec<_>>>()?;
                Ok(RotationOutcome::Ambiguous(AmbiguousRotation { kernel_basis: basis, pairings, c1 }))
            }
        }
    }
}

/// `rot = ⟨c₁, h⟩` with `d₂·h = 0` and `h = +1` on the surgery curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationResult {
    pub rot: i64,
    pub h: Vec<i64>,
    pub c1: Vec<i64>,
}

/// Kernel of rank > 1: the pairing may depend on the choice of `h`, so every
/// Hermite-reduced basis vector is reported with its pairing instead of choosing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguousRotation {
    pub kernel_basis: Vec<Vec<i64>>,
    pub pairings: Vec<i64>,
    pub c1: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RotationOutcome {
    Determined(RotationResult),
    Ambiguous(AmbiguousRotation),
}

impl RotationOutcome {
    pub fn determined(&self) -> Option<&RotationResult> {
        match self {
            RotationOutcome::Determined(r) => Some(r),
            RotationOutcome::Ambiguous(_) => None,
        }
    }
}

impl fmt::Display for RotationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationOutcome::Determined(r) => write!(f, "rot = {} (h = {:?}, c1 = {:?})", r.rot, r.h, r.c1),
            RotationOutcome::Ambiguous(a) => write!(
                f,
                "ambiguous: kernel rank {}, basis {:?}, pairings {:?}",
                a.kernel_basis.len(),
                a.kernel_basis,
                a.pairings
            ),
        }
    }
}

/// Rule for the rotation number of a curve in the identity-monodromy open book
/// on `#ᵖ(S¹×S²)`, from the order in which it runs over the 1-handles.
pub trait RotationConvention {
    fn name(&self) -> &'static str;
    fn base_rotation(&self, word: &[Pass]) -> Result<i64>;
}

/// Tangent winding number in the planar handle diagram.
///
/// The 1-handles sit left to right in index order, each drawn as an upper and a
/// lower horizontal segment that are identified. A `+` pass enters the upper
/// segment heading up and re-emerges from the lower one heading up; a `−` pass
/// is the reverse. Between consecutive passes the curve turns by
///
/// ```text
/// (+ at i) → (− at j):  −½ turn if j > i,  +½ turn if j < i
/// (− at i) → (+ at j):  +½ turn if j > i,  −½ turn if j < i
/// same sign:            no net turning
/// ```
///
/// and the rotation number is the total turning. This gives `0` for a single
/// pass and `−1` for `+Xᵢ −Xⱼ` with `i < j`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HandleWinding;

impl RotationConvention for HandleWinding {
    fn name(&self) -> &'static str {
        "handle-winding"
    }

    fn base_rotation(&self, word: &[Pass]) -> Result<i64> {
        if word.is_empty() {
            return Err(SteinError::ExplicitInputRequired("<empty traversal word>".into()));
        }
        let mut half_turns = 0i64;
        for (i, from) in word.iter().enumerate() {
            let to = word[(i + 1) % word.len()];
            if from.sign == to.sign {
                continue;
            }
            if from.band == to.band {
                return Err(SteinError::AmbiguousTurn { handle: from.band });
            }
            let rightward = to.band > from.band;
            half_turns += match (from.sign, rightward) {
                (Sign::Plus, true) | (Sign::Minus, false) => -1,
                (Sign::Plus, false) | (Sign::Minus, true) => 1,
            };
        }
        debug_assert!(half_turns % 2 == 0);
        Ok(half_turns / 2)
    }
}

/// Base rotation of a curve from its traversal word under `convention`.
pub fn base_rotation_planar(word: Option<&[Pass]>, convention: &dyn RotationConvention) -> Result<i64> {
    match word {
        Some(w) => convention.base_rotation(w),
        None => Err(SteinError::ExplicitInputRequired("<no traversal word>".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pass(band: usize, s: i64) -> Pass {
        Pass::new(band, Sign::from_value(s).unwrap())
    }

    #[test]
    fn single_pass_has_no_rotation() {
        assert_eq!(HandleWinding.base_rotation(&[pass(1, 1)]).unwrap(), 0);
        assert_eq!(HandleWinding.base_rotation(&[pass(1, -1)]).unwrap(), 0);
    }

    #[test]
    fn up_left_down_right_is_minus_one() {
        assert_eq!(HandleWinding.base_rotation(&[pass(0, 1), pass(1, -1)]).unwrap(), -1);
        assert_eq!(HandleWinding.base_rotation(&[pass(1, -1), pass(0, 1)]).unwrap(), -1);
        // reversed orientation
        assert_eq!(HandleWinding.base_rotation(&[pass(1, 1), pass(0, -1)]).unwrap(), 1);
    }

    #[test]
    fn same_direction_passes_do_not_turn() {
        assert_eq!(HandleWinding.base_rotation(&[pass(0, 1), pass(2, 1)]).unwrap(), 0);
    }

    #[test]
    fn missing_word_needs_explicit_input() {
        assert!(matches!(
            base_rotation_planar(None, &HandleWinding),
            Err(SteinError::ExplicitInputRequired(_))
        ));
        assert!(matches!(
            HandleWinding.base_rotation(&[pass(0, 1), pass(0, -1)]),
            Err(SteinError::AmbiguousTurn { handle: 0 })
        ));
    }

    #[test]
    fn synthetic_two_curve_problem() {
        // kernel of [1, -1] is spanned by (1, 1); ⟨c1, h⟩ = -1·1 + 0·1
        let p = SteinProblem::new(
            vec!["X1".into()],
            vec![
                TwoHandleCurve::new("A", vec![1]).with_rotation(-1),
                TwoHandleCurve::new("K", vec![-1]).with_rotation(0),
            ],
            1,
        )
        .unwrap();
        let r = p.rotation_number().unwrap();
        let r = r.determined().unwrap();
        assert_eq!(r.h, vec![1, 1]);
        assert_eq!(r.rot, -1);
    }

    #[test]
    fn empty_curve_list_gives_empty_boundary() {
        let err = SteinProblem::new(vec!["X1".into()], vec![], 0).unwrap_err();
        assert!(matches!(err, SteinError::DistinguishedOutOfRange { .. }));
        let p = SteinProblem::new(vec!["X1".into(), "X2".into()], vec![TwoHandleCurve::new("K", vec![0, 0])], 0)
            .unwrap();
        assert!(p.boundary_matrix().is_zero());
        assert_eq!((p.boundary_matrix().rows(), p.boundary_matrix().cols()), (2, 1));
    }

    #[test]
    fn left_handed_twists_rejected() {
        let mut c = TwoHandleCurve::new("g", vec![1]);
        c.sign = Sign::Minus;
        assert_eq!(
            SteinProblem::new(vec!["X1".into()], vec![c], 0).unwrap_err(),
            SteinError::NegativeTwist("g".into())
        );
    }

    #[test]
    fn injective_boundary_is_an_obstruction() {
        let p = SteinProblem::new(vec!["X1".into()], vec![TwoHandleCurve::new("K", vec![2]).with_rotation(0)], 0)
            .unwrap();
        assert_eq!(
            p.rotation_number().unwrap_err(),
            SteinError::NoAdmissibleKernel { rank: 0, coefficients: vec![] }
        );
    }

    #[test]
    fn non_unit_coefficient_is_an_obstruction() {
        // kernel of [2, 1] is (1, -2): coefficient -2 on the distinguished A
        let p = SteinProblem::new(
            vec!["X1".into()],
            vec![TwoHandleCurve::new("K", vec![2]).with_rotation(1), TwoHandleCurve::new("A", vec![1]).with_rotation(0)],
            1,
        )
        .unwrap();
        assert!(matches!(p.rotation_number(), Err(SteinError::NoAdmissibleKernel { rank: 1, .. })));
    }

    #[test]
    fn larger_kernel_is_flagged_ambiguous() {
        let p = SteinProblem::new(
            vec!["X1".into()],
            vec![
                TwoHandleCurve::new("A", vec![1]).with_rotation(1),
                TwoHandleCurve::new("B", vec![1]).with_rotation(0),
                TwoHandleCurve::new("K", vec![-1]).with_rotation(0),
            ],
            2,
        )
        .unwrap();
        match p.rotation_number().unwrap() {
            RotationOutcome::Ambiguous(a) => {
                assert_eq!(a.kernel_basis.len(), 2);
                assert_eq!(a.pairings.len(), 2);
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn explicit_rotation_wins_over_word() {
        let c = TwoHandleCurve::from_word("g", 2, vec![pass(0, 1), pass(1, -1)]).with_rotation(5);
        let p = SteinProblem::new(vec!["X1".into(), "X2".into()], vec![c], 0).unwrap();
        assert_eq!(p.c1_cochain().unwrap(), vec![5]);
    }
}
