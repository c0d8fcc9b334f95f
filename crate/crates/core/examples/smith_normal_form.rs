//! Smith normal form, kernels and integer solving over ℤ.
//!
//! Run with `cargo run --example smith_normal_form`.

use sgkit::zlinalg::{kernel_basis, smith_normal_form, solve_integer};
use sgkit::IntMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntMatrix::from_rows(3, &[[2, 4, 4], [-6, 6, 12], [10, -4, -16]])?;
    let s = smith_normal_form(&a)?;
    println!("A = {:?}", a.to_rows());
    println!("invariant factors: {:?}", s.invariant_factors());
    println!("rank {}", s.rank());

    // U·A·V = D with U and V unimodular
    let uav = s.u.mul(&a)?.mul(&s.v)?;
    assert_eq!(uav, s.d);
    println!("det U = {}, det V = {}", s.u.determinant()?, s.v.determinant()?);

    // a 2-handle boundary map: one relation kills the handle sum
    let d2 = IntMatrix::from_columns(2, &[[1, -1], [0, 0], [-1, 1]])?;
    println!("kernel of {:?}: {:?}", d2.to_rows(), kernel_basis(&d2)?);

    let b = a.mul_vec(&[1, 2, -1])?;
    println!("solve A·x = {b:?}: {:?}", solve_integer(&a, &b)?);
    println!("solve A·x = [1, 0, 0]: {:?}", solve_integer(&a, &[1, 0, 0])?);
    Ok(())
}
