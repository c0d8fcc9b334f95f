//! Counting contact classes against the towers of HF⁺ of surgery on the trefoil.
//!
//! Run with `cargo run --example hf_pigeonhole`.

use sgkit::hfbook::{hf_hat, hf_plus_surgery, hf_red_rank, planarity_obstruction, trefoil_rotation_list, ContactClassSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [7, 8, 9, 12] {
        let module = hf_plus_surgery(n)?;
        // Legendrian right-handed trefoils with tb = −n, one contact class per rotation number
        let rotations = trefoil_rotation_list(n as u64);
        let classes = ContactClassSet::new(rotations.len() as u64);
        let verdict = planarity_obstruction(&classes, &module)?;
        println!(
            "n = {n}: {} spin^c structures, {} towers, HF_red rank {}, HF^ ranks {:?}",
            module.spinc_count(),
            module.tower_count(),
            hf_red_rank(&module),
            hf_hat(&module)
        );
        println!(
            "  rotations {rotations:?}: {} classes, excess {}, some surgery is non-planar: {}",
            classes.count,
            verdict.excess,
            verdict.obstructs_planarity()
        );
    }
    Ok(())
}
