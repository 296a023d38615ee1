//! Horizontal cut of the invariant cone at fixed r_0: classifies every
//! (r_1, r_2) grid point and emits a CSV for external plotting.

use std::io::Write;

use anyhow::{bail, Result};
use trispin::{
    is_biseparable_lobe, is_separable_invariant, witness_minimize_coords, InvariantCoords, Lobe,
    DETECTION_THRESHOLD,
};

pub const MAX_RESOLUTION: usize = 2048;

/// Cell labels, in classification precedence order.
pub fn cell_label(r0: f64, r1: f64, r2: f64) -> &'static str {
    if r1 * r1 + r2 * r2 > r0 * r0 {
        return "outside-cone";
    }
    let coords = InvariantCoords::new(1.0 - r0, r0, r1, r2, 0.0)
        .expect("points inside the disc are physical");
    if is_separable_invariant(&coords) {
        return "separable";
    }
    for lobe in Lobe::ALL {
        if is_biseparable_lobe(&coords, lobe) {
            return match lobe {
                Lobe::One => "lobe-1",
                Lobe::Two => "lobe-2",
                Lobe::Three => "lobe-3",
            };
        }
    }
    if witness_minimize_coords(&coords).0 < DETECTION_THRESHOLD {
        "witness-negative"
    } else {
        "indeterminate"
    }
}

/// Writes `resolution x resolution` rows `r1,r2,label` covering the bounding
/// square [-r0, r0]^2.
pub fn run_slice(r0: f64, resolution: usize, out: &mut impl Write) -> Result<()> {
    if !(r0 > 0.0 && r0 < 1.0) {
        bail!("r0 = {r0} outside the open interval (0, 1)");
    }
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        bail!("resolution {resolution} outside 2..={MAX_RESOLUTION}");
    }
    writeln!(out, "r1,r2,label")?;
    let coord = |i: usize| -r0 + 2.0 * r0 * i as f64 / (resolution - 1) as f64;
    for j in 0..resolution {
        let r2 = coord(j);
        for i in 0..resolution {
            let r1 = coord(i);
            writeln!(out, "{r1},{r2},{}", cell_label(r0, r1, r2))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_slice_has_no_detections_and_separable_cells_sit_in_lobes() {
        // Below r_0 = 2/3 biseparable states fill the cone; nothing may be
        // flagged witness-negative.
        let r0 = 0.5;
        let res = 41;
        let coord = |i: usize| -r0 + 2.0 * r0 * i as f64 / (res - 1) as f64;
        for j in 0..res {
            for i in 0..res {
                let label = cell_label(r0, coord(i), coord(j));
                assert_ne!(label, "witness-negative", "at ({}, {})", coord(i), coord(j));
                if label == "separable" {
                    let coords =
                        InvariantCoords::new(1.0 - r0, r0, coord(i), coord(j), 0.0).unwrap();
                    assert!(Lobe::ALL.iter().any(|&l| is_biseparable_lobe(&coords, l)));
                }
            }
        }
    }

    #[test]
    fn high_slice_detects_near_the_gap_rims() {
        // At r_0 = 0.9 the rim regions between the lobes (angles 0, +-120)
        // are genuinely tripartite entangled.
        assert_eq!(cell_label(0.9, 0.88, 0.0), "witness-negative");
        let (c, s) = (
            f64::cos(2.0 * std::f64::consts::PI / 3.0),
            f64::sin(2.0 * std::f64::consts::PI / 3.0),
        );
        assert_eq!(cell_label(0.9, 0.88 * c, 0.88 * s), "witness-negative");
        assert_eq!(cell_label(0.9, 0.88 * c, -0.88 * s), "witness-negative");
        // Lobe directions remain biseparable all the way out.
        assert_eq!(cell_label(0.9, -0.89, 0.0), "lobe-1");
        assert_eq!(cell_label(0.9, 1.0, 0.5), "outside-cone");
    }

    #[test]
    fn slice_emits_full_grid() {
        let mut buf = Vec::new();
        run_slice(0.8, 16, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 16 * 16);
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 3));
    }

    #[test]
    fn slice_validates_inputs() {
        let mut sink = Vec::new();
        assert!(run_slice(0.0, 16, &mut sink).is_err());
        assert!(run_slice(1.0, 16, &mut sink).is_err());
        assert!(run_slice(0.5, 4096, &mut sink).is_err());
    }
}
