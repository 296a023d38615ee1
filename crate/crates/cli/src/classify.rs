//! One-shot classification report for a user-supplied 8x8 density matrix.

use std::path::Path;

use anyhow::Result;
use trispin::{
    coords_of, is_biseparable_lobe, is_separable_invariant, witness_minimize, ClassLabel,
    DensityMatrix, Lobe,
};

use crate::matrix_io;

/// Prints the report and returns the process exit code: 0 for not detected,
/// 2 when genuine tripartite entanglement is certified.
pub fn classify_file(path: &Path) -> Result<i32> {
    let matrix = matrix_io::read_matrix(path)?;
    let rho = DensityMatrix::new(matrix)?;
    let coords = coords_of(&rho)?;
    let cls = witness_minimize(&rho)?;

    println!("invariant coordinates r_k = tr(rho R_k):");
    println!("  r_plus  = {:+.12}", coords.r_plus);
    println!("  r_zero  = {:+.12}", coords.r_zero);
    println!("  r_one   = {:+.12}", coords.r_one);
    println!("  r_two   = {:+.12}", coords.r_two);
    println!("  r_three = {:+.12}", coords.r_three);
    println!("membership of the twirled state:");
    println!("  separable: {}", yes_no(is_separable_invariant(&coords)));
    for (lobe, name) in [(Lobe::One, "1|23"), (Lobe::Two, "2|13"), (Lobe::Three, "3|12")] {
        println!(
            "  biseparable lobe {} ({}): {}",
            lobe.index(),
            name,
            yes_no(is_biseparable_lobe(&coords, lobe))
        );
    }
    println!(
        "witness minimum: {:+.12} at r0 = {:.9}, orientation {}",
        cls.witness_value,
        cls.witness_argmin.r0_param(),
        cls.witness_argmin.orientation()
    );
    let verdict = match cls.label {
        ClassLabel::GenuineTripartite => "genuine tripartite entanglement detected",
        ClassLabel::Separable => "not detected; twirled state is separable",
        ClassLabel::BiseparableLobe(lobe) => match lobe {
            Lobe::One => "not detected; twirled state is biseparable (lobe 1, 1|23)",
            Lobe::Two => "not detected; twirled state is biseparable (lobe 2, 2|13)",
            Lobe::Three => "not detected; twirled state is biseparable (lobe 3, 3|12)",
        },
        ClassLabel::IndeterminateHull => {
            "not detected; twirled state outside all lobes (may lie in their convex hull)"
        }
    };
    println!("label: {verdict}");
    Ok(if cls.is_genuinely_entangled() { 2 } else { 0 })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
