//! Plain-text 8x8 complex matrix format: eight non-empty rows of eight
//! comma-separated entries "a+bi" (also "a", "bi", "a-bi"). Blank lines and
//! lines starting with '#' are skipped.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use trispin::DenseOperator;

pub fn parse_matrix(text: &str) -> Result<DenseOperator> {
    let rows: Vec<&str> =
        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    if rows.len() != 8 {
        bail!("expected 8 matrix rows, found {}", rows.len());
    }
    let mut m = DenseOperator::zeros(8, 8);
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').map(str::trim).collect();
        if cells.len() != 8 {
            bail!("row {} has {} entries, expected 8", i + 1, cells.len());
        }
        for (j, cell) in cells.iter().enumerate() {
            let z: Complex64 = cell.parse().with_context(|| {
                format!("bad complex entry '{cell}' at row {}, column {}", i + 1, j + 1)
            })?;
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

pub fn read_matrix(path: &std::path::Path) -> Result<DenseOperator> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read matrix file {}", path.display()))?;
    parse_matrix(&text)
}

/// Writes a matrix in the same format (round-trip check).
#[cfg(test)]
pub fn format_matrix(m: &DenseOperator) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{}", m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_forms() {
        let mut rows = vec!["0.125,0,0,0,0,0,0,0".to_string(); 8];
        rows[1] = "0,0.125,0,0,0,0,0,0".into();
        rows[2] = "# comment".into();
        rows.insert(0, String::new());
        let text = rows.join("\n");
        // comment + blank removed leaves only 7 data rows
        assert!(parse_matrix(&text).is_err());

        let diag = (0..8)
            .map(|i| {
                (0..8).map(|j| if i == j { "0.125+0i" } else { "0" }).collect::<Vec<_>>().join(", ")
            })
            .collect::<Vec<_>>()
            .join("\n");
        let m = parse_matrix(&diag).unwrap();
        assert!((m[(3, 3)].re - 0.125).abs() < 1e-15);
        assert_eq!(m[(0, 1)], Complex64::from(0.0));
    }

    #[test]
    fn complex_entries_round_trip() {
        let mut m = DenseOperator::zeros(8, 8);
        for i in 0..8 {
            m[(i, i)] = Complex64::new(0.125, 0.0);
        }
        m[(0, 7)] = Complex64::new(0.01, -0.02);
        m[(7, 0)] = Complex64::new(0.01, 0.02);
        let text = format_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_malformed_entries() {
        let bad = ["1,0,0,0,0,0,0,banana"; 8].join("\n");
        assert!(parse_matrix(&bad).is_err());
    }
}
