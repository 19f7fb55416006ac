use std::path::Path;

use super::CliError;

/// Header plus rows of reals, each row as long as the header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// 17 significant digits: round-trips every finite double.
fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Header row then one row per sample, in the order given.
pub fn write_csv(table: &Table, path: &Path) -> Result<(), CliError> {
    let io =
        |e: &dyn std::fmt::Display| CliError::Io { op: "write_csv", path: path.to_path_buf(), message: e.to_string() };
    let mut w = csv::Writer::from_path(path).map_err(|e| io(&e))?;
    w.write_record(&table.header).map_err(|e| io(&e))?;
    for row in &table.rows {
        debug_assert_eq!(row.len(), table.header.len());
        w.write_record(row.iter().map(|&v| format_value(v))).map_err(|e| io(&e))?;
    }
    w.flush().map_err(|e| io(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_rows_roundtrip_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let values = [0.1, 1.0 / 3.0, -2.5e-300, f64::MAX, 6.02214076e23, -0.0];
        let table = Table {
            header: vec!["t".into(), "a".into(), "b".into()],
            rows: vec![values[..3].to_vec(), values[3..].to_vec()],
        };
        write_csv(&table, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);

        let mut r = csv::Reader::from_path(&path).unwrap();
        assert_eq!(r.headers().unwrap().len(), 3);
        let back: Vec<f64> = r
            .records()
            .flat_map(|rec| rec.unwrap().iter().map(|s| s.parse::<f64>().unwrap()).collect::<Vec<_>>())
            .collect();
        for (a, b) in values.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let e = write_csv(&Table::default(), &dir.path().join("missing/t.csv")).unwrap_err();
        assert_eq!(e.exit_code(), 4);
        assert!(e.to_string().starts_with("write_csv:"));
    }
}
