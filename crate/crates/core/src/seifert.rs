//! Seifert pairing of a ribbon page and the page-framing self-linking number.
//!
//! `V[i][j] = lk(aᵢ, aⱼ⁺)` with `aⱼ⁺` pushed off along the positive normal of the
//! page. Assembled from the embedding data of [`RibbonSurface`]:
//!
//! ```text
//! V[i][i] = twists(i) + writhe(i)
//! V[i][j] = (crossings(i, j) + ⟨aᵢ, aⱼ⟩) / 2      i ≠ j
//! ```
//!
//! The crossing parity enforced by the ribbon module makes the off-diagonal
//! entries integral, and `V − Vᵀ = J` (the intersection form) holds exactly.
//!
//! For a curve `K` lying on a page of an open book supporting the contact
//! structure, the contact framing equals the page framing, so `Kᵀ·V·K` is the
//! Thurston–Bennequin invariant of its Legendrian realization.

use thiserror::Error;

use crate::ribbon::{CurveClass, RibbonError, RibbonSurface};
use crate::zlinalg::{IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("curve is null-homologous on the page and has no Legendrian realization there")]
    NotRealizable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub v: IntMatrix,
}

impl SeifertMatrix {
    /// `V − Vᵀ`; equals the intersection form of the page.
    pub fn antisymmetrization(&self) -> IntMatrix {
        self.v.sub(&self.v.transpose()).expect("square matrix")
    }

    pub fn self_linking(&self, k: &[i64]) -> Result<i64, LinalgError> {
        self.v.quadratic_form(k)
    }
}

pub fn seifert_matrix(surface: &RibbonSurface) -> SeifertMatrix {
    let n = surface.band_count();
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        v[(i, i)] = surface.twists()[i] + surface.crossing(i, i);
        for j in 0..n {
            if i != j {
                let sum = surface.crossing(i, j) + surface.pairing(i, j);
                debug_assert!(sum % 2 == 0, "parity is checked when the surface is built");
                v[(i, j)] = sum / 2;
            }
        }
    }
    SeifertMatrix { v }
}

/// `Kᵀ·V·K`: linking number of `K` with its push-off along the page.
pub fn page_framing_self_linking(surface: &RibbonSurface, k: &CurveClass) -> Result<i64, SeifertError> {
    surface.check_curve(k)?;
    Ok(seifert_matrix(surface).self_linking(&k.coefficients)?)
}

/// Thurston–Bennequin invariant of the Legendrian realization of `K`.
///
/// Same number as [`page_framing_self_linking`], but refuses null-homologous curves,
/// which cannot be Legendrian realized on the page.
pub fn thurston_bennequin(surface: &RibbonSurface, k: &CurveClass) -> Result<i64, SeifertError> {
    if !surface.is_nonseparating(k)? {
        return Err(SeifertError::NotRealizable);
    }
    page_framing_self_linking(surface, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::SurfaceData;

    #[test]
    fn disk_gives_empty_matrix() {
        let v = seifert_matrix(&RibbonSurface::disk()).v;
        assert_eq!((v.rows(), v.cols()), (0, 0));
    }

    #[test]
    fn annulus_framing_is_twist_count() {
        for t in [-3, 0, 2] {
            let a = RibbonSurface::build(SurfaceData::new(1, vec![0, 0]).with_twists(vec![t])).unwrap();
            assert_eq!(seifert_matrix(&a).v.to_rows(), vec![vec![t]]);
        }
    }

    #[test]
    fn self_writhe_adds_to_diagonal() {
        let a = RibbonSurface::build(
            SurfaceData::new(1, vec![0, 0]).with_twists(vec![-2]).with_crossing(0, 0, 5),
        )
        .unwrap();
        assert_eq!(seifert_matrix(&a).v.to_rows(), vec![vec![3]]);
    }

    #[test]
    fn hopf_plumbing_is_the_trefoil_form() {
        let t = RibbonSurface::build(
            SurfaceData::new(2, vec![0, 1, 0, 1]).with_twists(vec![-1, -1]).with_crossing(0, 1, 1),
        )
        .unwrap();
        let s = seifert_matrix(&t);
        assert_eq!(s.v.to_rows(), vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(s.antisymmetrization(), t.intersection_form());
    }

    #[test]
    fn zero_class_has_zero_framing_but_no_tb() {
        let a = RibbonSurface::build(SurfaceData::new(1, vec![0, 0]).with_twists(vec![4])).unwrap();
        assert_eq!(page_framing_self_linking(&a, &CurveClass::zero(1)).unwrap(), 0);
        assert_eq!(thurston_bennequin(&a, &CurveClass::zero(1)), Err(SeifertError::NotRealizable));
    }
}
