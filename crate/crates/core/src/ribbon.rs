//! Open-book pages as ribbon surfaces: a disk with `n` orientable bands attached.
//!
//! # Conventions
//!
//! The feet of the bands are listed counterclockwise around the disk boundary,
//! starting from a fixed basepoint. Band `i` contributes the class `aᵢ`: its core,
//! leaving the disk through the first of its two feet and coming back through
//! the second, closed up by a chord in the disk. With feet positions
//! `p₁ < p₂` for band `i` and `q₁ < q₂` for band `j`,
//!
//! ```text
//! ⟨aᵢ, aⱼ⟩ = +1  if p₁ < q₁ < p₂ < q₂
//! ⟨aᵢ, aⱼ⟩ = −1  if q₁ < p₁ < q₂ < p₂
//! ⟨aᵢ, aⱼ⟩ =  0  otherwise
//! ```
//!
//! Planar embedding data (full twists, signed crossings between band cores)
//! is carried alongside for the Seifert pairing in [`crate::seifert`]. Two bands
//! whose feet interleave must cross an odd number of times in the projection,
//! non-interleaved bands an even number of times; [`RibbonSurface::build`]
//! rejects data violating this.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::zlinalg::{IntMatrix, LinalgError};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("band {band} has {count} feet in the feet order, expected 2")]
    FeetCount { band: usize, count: usize },
    #[error("feet order mentions band {0}, but only {1} bands exist")]
    UnknownBand(usize, usize),
    #[error("band {0} is attached orientation-reversingly; only orientable pages are supported")]
    NonOrientable(usize),
    #[error("{what}: got {got} entries, expected {expected}")]
    Length { what: &'static str, got: usize, expected: usize },
    #[error(
        "bands {a} and {b} cross {count} times but their feet {interleave}; \
         the crossing count must be {parity}"
    )]
    CrossingParity { a: usize, b: usize, count: i64, interleave: &'static str, parity: &'static str },
    #[error("crossing data for band pair ({0}, {1}) given twice")]
    DuplicateCrossing(usize, usize),
    #[error("traversal word abelianizes to {got:?}, but the curve's coefficients are {expected:?}")]
    TraversalMismatch { got: Vec<i64>, expected: Vec<i64> },
    #[error("invalid stabilization arc: feet positions ({first}, {second}) on a page with {feet} feet")]
    InvalidArc { first: usize, second: usize, feet: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, RibbonError>;

/// One pass of a curve over a band (or a 1-handle), in the direction given by the sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub band: usize,
    pub sign: Sign,
}

impl Pass {
    pub fn new(band: usize, sign: Sign) -> Self {
        Pass { band, sign }
    }
}

/// Signed crossing count between the cores of two bands in the planar projection.
/// A pair `(i, i)` records the writhe of band `i`'s core with itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCrossing {
    pub a: usize,
    pub b: usize,
    pub count: i64,
}

/// Raw embedding data for a page, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub labels: Vec<String>,
    /// Band index at each foot position, counterclockwise.
    pub feet: Vec<usize>,
    /// Full twists per band.
    pub twists: Vec<i64>,
    pub crossings: Vec<BandCrossing>,
    pub orientation_preserving: Vec<bool>,
}

impl SurfaceData {
    /// Untwisted, uncrossed, orientable bands labelled `X1, X2, …`.
    pub fn new(n: usize, feet: Vec<usize>) -> Self {
        SurfaceData {
            labels: (1..=n).map(|i| format!("X{i}")).collect(),
            feet,
            twists: vec![0; n],
            crossings: Vec::new(),
            orientation_preserving: vec![true; n],
        }
    }

    pub fn with_twists(mut self, twists: Vec<i64>) -> Self {
        self.twists = twists;
        self
    }

    pub fn with_crossing(mut self, a: usize, b: usize, count: i64) -> Self {
        self.crossings.push(BandCrossing { a, b, count });
        self
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.labels = labels.into_iter().map(Into::into).collect();
        self
    }
}

/// A validated page. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonSurface {
    labels: Vec<String>,
    feet: Vec<usize>,
    twists: Vec<i64>,
    /// Keyed by `(min, max)` band index.
    crossings: BTreeMap<(usize, usize), i64>,
    /// `(first, second)` foot position per band.
    foot_positions: Vec<(usize, usize)>,
    boundary_components: usize,
}

impl RibbonSurface {
    pub fn disk() -> Self {
        Self::build(SurfaceData::new(0, Vec::new())).expect("the disk is well formed")
    }

    pub fn build(data: SurfaceData) -> Result<Self> {
        let n = data.twists.len();
        let check_len = |what, got: usize| {
            if got == n {
                Ok(())
            } else {
                Err(RibbonError::Length { what, got, expected: n })
            }
        };
        check_len("band labels", data.labels.len())?;
        check_len("orientation flags", data.orientation_preserving.len())?;
        if data.feet.len() != 2 * n {
            return Err(RibbonError::Length { what: "feet order", got: data.feet.len(), expected: 2 * n });
        }
        if let Some(i) = data.orientation_preserving.iter().position(|&o| !o) {
            return Err(RibbonError::NonOrientable(i));
        }

        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (pos, &band) in data.feet.iter().enumerate() {
            if band >= n {
                return Err(RibbonError::UnknownBand(band, n));
            }
            seen[band].push(pos);
        }
        let mut foot_positions = Vec::with_capacity(n);
        for (band, pos) in seen.iter().enumerate() {
            if pos.len() != 2 {
                return Err(RibbonError::FeetCount { band, count: pos.len() });
            }
            foot_positions.push((pos[0], pos[1]));
        }

        let mut crossings = BTreeMap::new();
        for c in &data.crossings {
            for band in [c.a, c.b] {
                if band >= n {
                    return Err(RibbonError::UnknownBand(band, n));
                }
            }
            let key = (c.a.min(c.b), c.a.max(c.b));
            if crossings.insert(key, c.count).is_some() {
                return Err(RibbonError::DuplicateCrossing(key.0, key.1));
            }
        }

        let mut surface = RibbonSurface {
            labels: data.labels,
            feet: data.feet,
            twists: data.twists,
            crossings,
            foot_positions,
            boundary_components: 0,
        };
        for a in 0..n {
            for b in a + 1..n {
                let count = surface.crossing(a, b);
                let interleaved = surface.pairing(a, b) != 0;
                if interleaved != (count.rem_euclid(2) == 1) {
                    return Err(RibbonError::CrossingParity {
                        a,
                        b,
                        count,
                        interleave: if interleaved { "interleave" } else { "do not interleave" },
                        parity: if interleaved { "odd" } else { "even" },
                    });
                }
            }
        }
        surface.boundary_components = surface.count_boundary();
        Ok(surface)
    }

    /// Number of boundary circles: cycles of `p ↦ partner(p) + 1` on foot positions.
    fn count_boundary(&self) -> usize {
        let len = self.feet.len();
        if len == 0 {
            return 1;
        }
        let partner = |p: usize| {
            let (a, b) = self.foot_positions[self.feet[p]];
            if a == p {
                b
            } else {
                a
            }
        };
        let mut visited = vec![false; len];
        let mut cycles = 0;
        for start in 0..len {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !visited[p] {
                visited[p] = true;
                p = (partner(p) + 1) % len;
            }
        }
        cycles
    }

    pub fn band_count(&self) -> usize {
        self.twists.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn band_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn feet(&self) -> &[usize] {
        &self.feet
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn foot_positions(&self, band: usize) -> (usize, usize) {
        self.foot_positions[band]
    }

    /// Signed crossing count between bands `a` and `b` (self-writhe when `a == b`).
    pub fn crossing(&self, a: usize, b: usize) -> i64 {
        self.crossings.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    pub fn crossings(&self) -> impl Iterator<Item = BandCrossing> + '_ {
        self.crossings.iter().map(|(&(a, b), &count)| BandCrossing { a, b, count })
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.band_count() as i64
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary_components
    }

    pub fn genus(&self) -> usize {
        // 2g = 2 - χ - b = 1 + n - b
        let twice = 1 + self.band_count() - self.boundary_components;
        debug_assert!(twice % 2 == 0);
        twice / 2
    }

    pub fn is_planar(&self) -> bool {
        self.genus() == 0
    }

    /// `⟨aᵢ, aⱼ⟩` under the module's feet-order convention.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        let (p1, p2) = self.foot_positions[i];
        let (q1, q2) = self.foot_positions[j];
        if p1 < q1 && q1 < p2 && p2 < q2 {
            1
        } else if q1 < p1 && p1 < q2 && q2 < p2 {
            -1
        } else {
            0
        }
    }

    /// The algebraic intersection form on `H₁` in the band basis.
    pub fn intersection_form(&self) -> IntMatrix {
        let n = self.band_count();
        let mut j = IntMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                j[(a, b)] = self.pairing(a, b);
            }
        }
        j
    }

    /// `⟨x, y⟩` for classes given in the band basis.
    pub fn intersection(&self, x: &CurveClass, y: &CurveClass) -> Result<i64> {
        self.check_curve(x)?;
        self.check_curve(y)?;
        Ok(self.intersection_form().bilinear_form(&x.coefficients, &y.coefficients)?)
    }

    /// Checks that a curve belongs on this page: right length, consistent traversal.
    pub fn check_curve(&self, curve: &CurveClass) -> Result<()> {
        let n = self.band_count();
        if curve.coefficients.len() != n {
            return Err(RibbonError::Length {
                what: "curve coefficients",
                got: curve.coefficients.len(),
                expected: n,
            });
        }
        if let Some(word) = &curve.traversal {
            if let Some(p) = word.iter().find(|p| p.band >= n) {
                return Err(RibbonError::UnknownBand(p.band, n));
            }
            let ab = abelianize(word, n);
            if ab != curve.coefficients {
                return Err(RibbonError::TraversalMismatch { got: ab, expected: curve.coefficients.clone() });
            }
        }
        Ok(())
    }

    /// Matrix of the Dehn twist along `gamma` on `H₁`: `x ↦ x + sign·⟨x, γ⟩·γ`.
    pub fn dehn_twist_action(&self, gamma: &CurveClass, sign: Sign) -> Result<IntMatrix> {
        self.check_curve(gamma)?;
        let n = self.band_count();
        let g = &gamma.coefficients;
        let jg = self.intersection_form().mul_vec(g)?;
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for k in 0..n {
                let t = g[i]
                    .checked_mul(jg[k])
                    .and_then(|t| t.checked_mul(sign.value()))
                    .and_then(|t| t.checked_add(m[(i, k)]))
                    .ok_or(LinalgError::Overflow("Dehn twist action"))?;
                m[(i, k)] = t;
            }
        }
        Ok(m)
    }

    /// True iff the class is nonzero; this is the gate for Legendrian realization on the page.
    pub fn is_nonseparating(&self, curve: &CurveClass) -> Result<bool> {
        self.check_curve(curve)?;
        Ok(curve.coefficients.iter().any(|&c| c != 0))
    }

    pub fn to_data(&self) -> SurfaceData {
        SurfaceData {
            labels: self.labels.clone(),
            feet: self.feet.clone(),
            twists: self.twists.clone(),
            crossings: self.crossings().collect(),
            orientation_preserving: vec![true; self.band_count()],
        }
    }
}

impl fmt::Display for RibbonSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let feet: Vec<&str> = self.feet.iter().map(|&b| self.labels[b].as_str()).collect();
        write!(
            f,
            "ribbon surface: {} bands, feet [{}], genus {}, {} boundary component(s)",
            self.band_count(),
            feet.join(" "),
            self.genus(),
            self.boundary_components
        )
    }
}

fn abelianize(word: &[Pass], n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    for p in word {
        v[p.band] += p.sign.value();
    }
    v
}

/// A homology class on a page, optionally with a traversal word realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub coefficients: Vec<i64>,
    pub traversal: Option<Vec<Pass>>,
}

impl CurveClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        CurveClass { coefficients, traversal: None }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// The core `aᵢ` of band `i` on a page with `n` bands.
    pub fn band_core(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        CurveClass { coefficients: c, traversal: Some(vec![Pass::new(i, Sign::Plus)]) }
    }

    /// Builds the class from a traversal word, keeping the word.
    pub fn from_traversal(n: usize, word: Vec<Pass>) -> Self {
        let coefficients = abelianize(&word, n);
        CurveClass { coefficients, traversal: Some(word) }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    /// The class with one more band, coefficient 0 on it.
    pub fn extended(&self) -> Self {
        let mut c = self.clone();
        c.coefficients.push(0);
        c
    }

    pub fn reversed(&self) -> Self {
        CurveClass {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            traversal: self
                .traversal
                .as_ref()
                .map(|w| w.iter().rev().map(|p| Pass::new(p.band, -p.sign)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    pub curve: CurveClass,
    pub sign: Sign,
}

/// Where the feet of a stabilizing band go: final positions in the new feet order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcSpec {
    pub first: usize,
    pub second: usize,
}

impl ArcSpec {
    pub fn new(first: usize, second: usize) -> Self {
        ArcSpec { first, second }
    }
}

/// A page together with a monodromy word of Dehn twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBook {
    page: RibbonSurface,
    monodromy: Vec<Twist>,
}

impl OpenBook {
    pub fn new(page: RibbonSurface, monodromy: Vec<Twist>) -> Result<Self> {
        for t in &monodromy {
            page.check_curve(&t.curve)?;
        }
        Ok(OpenBook { page, monodromy })
    }

    /// The trivial open book of `S³`: disk page, identity monodromy.
    pub fn disk() -> Self {
        OpenBook { page: RibbonSurface::disk(), monodromy: Vec::new() }
    }

    pub fn page(&self) -> &RibbonSurface {
        &self.page
    }

    pub fn monodromy(&self) -> &[Twist] {
        &self.monodromy
    }

    pub fn is_positive(&self) -> bool {
        self.monodromy.iter().all(|t| t.sign == Sign::Plus)
    }

    /// Action of the monodromy word on `H₁`, as the product `M₁·M₂·…·M_k`.
    pub fn monodromy_action(&self) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.page.band_count());
        for t in &self.monodromy {
            acc = acc.mul(&self.page.dehn_twist_action(&t.curve, t.sign)?)?;
        }
        Ok(acc)
    }

    /// Positive stabilization: attach a new band (one left-handed full twist in the
    /// page framing, i.e. a positive Hopf band) with feet at `arc`, and append a
    /// right-handed twist along its core.
    ///
    /// The new band crosses every band whose feet it interleaves exactly once,
    /// positively, and nothing else. Existing classes embed with coefficient 0.
    pub fn stabilize(&self, arc: ArcSpec) -> Result<OpenBook> {
        let old = &self.page;
        let n = old.band_count();
        let len = 2 * n + 2;
        if !(arc.first < arc.second && arc.second < len) {
            return Err(RibbonError::InvalidArc { first: arc.first, second: arc.second, feet: 2 * n });
        }
        let mut old_feet = old.feet.iter().copied();
        let feet: Vec<usize> = (0..len)
            .map(|p| if p == arc.first || p == arc.second { n } else { old_feet.next().unwrap() })
            .collect();

        let mut labels = old.labels.clone();
        let mut fresh = n + 1;
        while labels.iter().any(|l| *l == format!("X{fresh}")) {
            fresh += 1;
        }
        labels.push(format!("X{fresh}"));
        let mut twists = old.twists.clone();
        twists.push(-1);
        let mut crossings: Vec<BandCrossing> = old.crossings().collect();

        let positions = |band: usize| {
            let mut it = feet.iter().enumerate().filter(|&(_, &b)| b == band).map(|(p, _)| p);
            (it.next().unwrap(), it.next().unwrap())
        };
        for b in 0..n {
            let (q1, q2) = positions(b);
            let inside = |q: usize| arc.first < q && q < arc.second;
            if inside(q1) != inside(q2) {
                crossings.push(BandCrossing { a: b, b: n, count: 1 });
            }
        }

        let page = RibbonSurface::build(SurfaceData {
            labels,
            feet,
            twists,
            crossings,
            orientation_preserving: vec![true; n + 1],
        })?;
        let mut monodromy: Vec<Twist> = self
            .monodromy
            .iter()
            .map(|t| Twist { curve: t.curve.extended(), sign: t.sign })
            .collect();
        monodromy.push(Twist { curve: CurveClass::band_core(n + 1, n), sign: Sign::Plus });
        Ok(OpenBook { page, monodromy })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> RibbonSurface {
        RibbonSurface::build(SurfaceData::new(2, vec![0, 1, 0, 1]).with_crossing(0, 1, 1)).unwrap()
    }

    #[test]
    fn disk_and_annulus() {
        let d = RibbonSurface::disk();
        assert_eq!((d.euler_characteristic(), d.boundary_components(), d.genus()), (1, 1, 0));
        let a = RibbonSurface::build(SurfaceData::new(1, vec![0, 0])).unwrap();
        assert_eq!((a.euler_characteristic(), a.boundary_components(), a.genus()), (0, 2, 0));
        assert!(a.intersection_form().is_zero());
    }

    #[test]
    fn punctured_torus_form() {
        let t = torus();
        assert_eq!((t.genus(), t.boundary_components()), (1, 1));
        assert_eq!(t.pairing(0, 1), 1);
        assert_eq!(t.pairing(1, 0), -1);
    }

    #[test]
    fn pair_of_pants() {
        let p = RibbonSurface::build(SurfaceData::new(2, vec![0, 0, 1, 1])).unwrap();
        assert_eq!((p.genus(), p.boundary_components()), (0, 3));
    }

    #[test]
    fn malformed_feet_rejected() {
        let e = RibbonSurface::build(SurfaceData::new(2, vec![0, 0, 0, 1])).unwrap_err();
        assert_eq!(e, RibbonError::FeetCount { band: 0, count: 3 });
        let e = RibbonSurface::build(SurfaceData::new(1, vec![0, 3])).unwrap_err();
        assert_eq!(e, RibbonError::UnknownBand(3, 1));
    }

    #[test]
    fn non_orientable_rejected() {
        let mut data = SurfaceData::new(1, vec![0, 0]);
        data.orientation_preserving[0] = false;
        assert_eq!(RibbonSurface::build(data).unwrap_err(), RibbonError::NonOrientable(0));
    }

    #[test]
    fn crossing_parity_enforced() {
        let e = RibbonSurface::build(SurfaceData::new(2, vec![0, 1, 0, 1])).unwrap_err();
        assert!(matches!(e, RibbonError::CrossingParity { count: 0, .. }));
        let e = RibbonSurface::build(SurfaceData::new(2, vec![0, 0, 1, 1]).with_crossing(1, 0, 3));
        assert!(matches!(e, Err(RibbonError::CrossingParity { count: 3, .. })));
    }

    #[test]
    fn twist_along_a_sends_b_to_b_minus_a() {
        let t = torus();
        let m = t.dehn_twist_action(&CurveClass::band_core(2, 0), Sign::Plus).unwrap();
        assert_eq!(m.mul_vec(&[0, 1]).unwrap(), vec![-1, 1]);
        assert_eq!(m.mul_vec(&[1, 0]).unwrap(), vec![1, 0]);
    }

    #[test]
    fn zero_twist_is_identity() {
        let t = torus();
        assert_eq!(t.dehn_twist_action(&CurveClass::zero(2), Sign::Minus).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn traversal_must_match_coefficients() {
        let t = torus();
        let bad = CurveClass { coefficients: vec![1, 0], traversal: Some(vec![Pass::new(1, Sign::Plus)]) };
        assert!(matches!(t.check_curve(&bad), Err(RibbonError::TraversalMismatch { .. })));
        let good = CurveClass::from_traversal(2, vec![Pass::new(0, Sign::Plus), Pass::new(1, Sign::Minus)]);
        assert_eq!(good.coefficients, vec![1, -1]);
        t.check_curve(&good).unwrap();
    }

    #[test]
    fn stabilizing_the_disk() {
        let ob = OpenBook::disk().stabilize(ArcSpec::new(0, 1)).unwrap();
        let page = ob.page();
        assert_eq!((page.band_count(), page.boundary_components(), page.genus()), (1, 2, 0));
        assert_eq!(ob.monodromy().len(), 1);
        assert_eq!(ob.monodromy()[0].sign, Sign::Plus);

        let ob2 = ob.stabilize(ArcSpec::new(1, 3)).unwrap();
        let page = ob2.page();
        assert_eq!(page.feet(), &[0, 1, 0, 1]);
        assert_eq!((page.genus(), page.boundary_components()), (1, 1));
        assert_eq!(page.crossing(0, 1), 1);
        assert_eq!(ob2.monodromy()[0].curve.coefficients, vec![1, 0]);
        assert!(ob2.is_positive());
    }

    #[test]
    fn invalid_arc() {
        let e = OpenBook::disk().stabilize(ArcSpec::new(1, 1)).unwrap_err();
        assert!(matches!(e, RibbonError::InvalidArc { .. }));
        assert!(OpenBook::disk().stabilize(ArcSpec::new(0, 2)).is_err());
    }

    #[test]
    fn nonseparating_gate() {
        let t = torus();
        assert!(!t.is_nonseparating(&CurveClass::zero(2)).unwrap());
        assert!(t.is_nonseparating(&CurveClass::new(vec![1, 1])).unwrap());
    }
}
