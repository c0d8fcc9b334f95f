//! Ribbon surfaces: genus, the intersection form, Dehn twists and stabilization.
//!
//! Run with `cargo run --example ribbon_surfaces`.

use sgkit::ribbon::{ArcSpec, CurveClass, OpenBook, RibbonSurface, SurfaceData, Twist};
use sgkit::Sign;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two bands with interleaved feet: a punctured torus
    let torus = RibbonSurface::build(
        SurfaceData::new(2, vec![0, 1, 0, 1]).with_twists(vec![-1, -1]).with_crossing(0, 1, 1).with_labels(["a", "b"]),
    )?;
    println!(
        "punctured torus: {} bands, {} boundary component(s), genus {}",
        torus.band_count(),
        torus.boundary_components(),
        torus.genus()
    );
    println!("intersection form J = {:?}", torus.intersection_form().to_rows());

    // nested feet instead: a pair of pants, which is planar
    let pants = RibbonSurface::build(SurfaceData::new(2, vec![0, 0, 1, 1]))?;
    println!("pants: genus {}, planar {}", pants.genus(), pants.is_planar());

    let a = CurveClass::band_core(2, 0);
    let b = CurveClass::band_core(2, 1);
    println!("⟨a, b⟩ = {}", torus.intersection(&a, &b)?);
    let ta = torus.dehn_twist_action(&a, Sign::Plus)?;
    println!("T_a on H_1 = {:?}, T_a(b) = {:?}", ta.to_rows(), ta.mul_vec(&b.coefficients)?);

    // positive stabilization of the open book (torus, T_a T_b)
    let book = OpenBook::new(
        torus,
        vec![Twist { curve: a, sign: Sign::Plus }, Twist { curve: b, sign: Sign::Plus }],
    )?;
    let stab = book.stabilize(ArcSpec::new(0, 2))?;
    println!(
        "stabilized page: {} bands, genus {}, {} boundary components, {} twists, positive {}",
        stab.page().band_count(),
        stab.page().genus(),
        stab.page().boundary_components(),
        stab.monodromy().len(),
        stab.is_positive()
    );
    println!("monodromy action {:?}", stab.monodromy_action()?.to_rows());
    Ok(())
}
