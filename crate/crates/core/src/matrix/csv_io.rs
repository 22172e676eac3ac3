//! Comma-separated matrix files: one row per line, no header, `#` comments.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{DemandMatrix, SquareMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reads a nonnegative square matrix. The diagonal may be nonzero.
pub fn read_csv_matrix<T: Scalar>(reader: impl Read) -> Result<SquareMatrix<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut lines: Vec<u64> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            column: 0,
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let mut row = Vec::with_capacity(record.len());
        for (col, field) in record.iter().enumerate() {
            let v: T = field.parse().map_err(|_| Error::Parse {
                line,
                column: col + 1,
                message: format!("non-numeric entry {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line,
                    column: col + 1,
                    message: format!("non-numeric entry {field:?}"),
                });
            }
            if v < T::zero() {
                return Err(Error::Parse {
                    line,
                    column: col + 1,
                    message: format!("negative entry {field}"),
                });
            }
            row.push(v);
        }
        rows.push(row);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: "empty matrix".into(),
        });
    }
    let n = rows.len();
    for (row, &line) in rows.iter().zip(&lines) {
        if row.len() != n {
            return Err(Error::Parse {
                line,
                column: row.len(),
                message: format!("non-square: {n} rows but this row has {} entries", row.len()),
            });
        }
    }
    SquareMatrix::from_rows(rows)
}

/// Reads a demand matrix; a nonzero diagonal entry is a parse error.
pub fn read_csv<T: Scalar>(reader: impl Read) -> Result<DemandMatrix<T>> {
    let m = read_csv_matrix::<T>(reader)?;
    for i in 0..m.n() {
        if m.get(i, i) != T::zero() {
            return Err(Error::Parse {
                line: i as u64 + 1,
                column: i + 1,
                message: format!("diagonal entry {} is nonzero (self-demand)", m.get(i, i)),
            });
        }
    }
    DemandMatrix::new(m)
}

pub fn load_csv_matrix<T: Scalar>(path: impl AsRef<Path>) -> Result<SquareMatrix<T>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv_matrix(file)
}

pub fn load_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<DemandMatrix<T>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file)
}

/// Writes every entry with 17 significant digits so `f64` values round-trip.
pub fn write_csv<T: Scalar>(m: &SquareMatrix<T>, mut w: impl Write) -> std::io::Result<()> {
    for row in m.rows().take(m.n()) {
        let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn save_csv<T: Scalar>(m: &SquareMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    write_csv(m, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_whitespace() {
        let text = "# demand in bits/s\n0, 1.5\n# another\n2 ,0\n";
        let m: DemandMatrix<f64> = read_csv(text.as_bytes()).unwrap();
        assert_eq!(m.to_rows(), vec![vec![0.0, 1.5], vec![2.0, 0.0]]);
    }

    #[test]
    fn non_square_grid() {
        let text = "0,1,2,3\n1,0,2,3\n1,2,0,3\n";
        let err = read_csv::<f64>(text.as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, message, .. } => {
                assert!(message.contains("non-square"), "{message}");
                assert_eq!(line, 1);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn negative_entry_location() {
        let text = "0,1\n-1.0,0\n";
        match read_csv::<f64>(text.as_bytes()).unwrap_err() {
            Error::Parse { line, column, message } => {
                assert!(message.contains("negative"));
                assert_eq!((line, column), (2, 1));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn non_numeric_entry() {
        let text = "0,x\n1,0\n";
        match read_csv::<f64>(text.as_bytes()).unwrap_err() {
            Error::Parse { column, message, .. } => {
                assert!(message.contains("non-numeric"));
                assert_eq!(column, 2);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn diagonal_rejected_for_demand_but_not_for_matrix() {
        let text = "0.5,1.5\n1.5,0.5\n";
        assert!(read_csv::<f64>(text.as_bytes()).is_err());
        let m: SquareMatrix<f64> = read_csv_matrix(text.as_bytes()).unwrap();
        assert_eq!(m.get(1, 1), 0.5);
    }

    #[test]
    fn empty_input() {
        assert!(read_csv::<f64>("# nothing\n".as_bytes()).is_err());
    }
}
