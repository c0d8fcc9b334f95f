//! Rotation numbers from a Stein handlebody: twist knots on a planar page.
//!
//! Run with `cargo run --example twist_knot_rotation`.

use sgkit::fixtures;
use sgkit::stein::RotationOutcome;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in 1..=4 {
        let resolved = fixtures::twist_page(m).resolve()?;
        let problem = resolved.stein_problem(&fixtures::twist_problem_name(m)).expect("bundled problem");
        let names: Vec<&str> = problem.curves().iter().map(|c| c.name.as_str()).collect();
        println!("m = {m}: 2-handles {names:?}, distinguished {}", names[problem.distinguished()]);
        println!("  ∂₂ = {:?}", problem.boundary_matrix().to_rows());
        match problem.rotation_number()? {
            RotationOutcome::Determined(r) => println!("  h = {:?}, c1 = {:?}, rot = {}", r.h, r.c1, r.rot),
            RotationOutcome::Ambiguous(a) => println!("  ambiguous: kernel {:?}, pairings {:?}", a.kernel_basis, a.pairings),
        }
    }
    Ok(())
}
