//! Thurston–Bennequin invariants of (2, 2k+1) torus knots sitting on a genus-one page.
//!
//! Run with `cargo run --example torus_knot_tb`.

use sgkit::fixtures;
use sgkit::seifert::{seifert_matrix, thurston_bennequin};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=3 {
        let resolved = fixtures::torus_page(k).resolve()?;
        let surface = resolved.surface(&fixtures::torus_surface_name(k)).expect("bundled surface");
        let curve = resolved.curve(&fixtures::torus_curve_name(k)).expect("bundled curve");
        let v = seifert_matrix(surface);
        assert_eq!(v.antisymmetrization(), surface.intersection_form());
        let tb = thurston_bennequin(surface, &curve.class)?;
        println!(
            "k = {k}: genus {} page, Seifert matrix {:?}, K = {:?}, tb = {tb} (max tb of T(2,{}) is {})",
            surface.genus(),
            v.v.to_rows(),
            curve.class.coefficients,
            2 * k + 1,
            2 * k - 1
        );
    }
    Ok(())
}
