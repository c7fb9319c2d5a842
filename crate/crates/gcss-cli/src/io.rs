//! Matrix file loading and writing.
//!
//! Two input formats: plain CSV (one matrix row per line, comma-separated
//! decimal reals) and MatrixMarket (`array` and `coordinate` forms of real
//! general matrices; coordinate files are densified on load). Output is
//! CSV with 17 significant digits, which round-trips `f64` exactly.

use crate::error::CliError;
use gcss::DenseMatrix;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    Csv,
    MatrixMarket,
}

impl SourceFormat {
    pub fn name(self) -> &'static str {
        match self {
            SourceFormat::Csv => "csv",
            SourceFormat::MatrixMarket => "matrix-market",
        }
    }

    /// `.mtx` / `.mm` mean MatrixMarket, everything else CSV.
    pub fn detect(path: &Path) -> SourceFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") || ext.eq_ignore_ascii_case("mm") => {
                SourceFormat::MatrixMarket
            }
            _ => SourceFormat::Csv,
        }
    }
}

impl std::str::FromStr for SourceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(SourceFormat::Csv),
            "matrix-market" | "mtx" => Ok(SourceFormat::MatrixMarket),
            other => Err(format!(
                "unknown format '{other}' (expected csv or matrix-market)"
            )),
        }
    }
}

pub fn load_matrix(
    path: &Path,
    format: SourceFormat,
    skip_header: bool,
) -> Result<DenseMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    match format {
        SourceFormat::Csv => parse_csv(path, &text, skip_header),
        SourceFormat::MatrixMarket => parse_matrix_market(path, &text),
    }
}

fn data_error(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Data {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

fn parse_csv(path: &Path, text: &str, skip_header: bool) -> Result<DenseMatrix, CliError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut skipped_header = !skip_header;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !skipped_header {
            skipped_header = true;
            continue;
        }
        let mut row = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            let value: f64 = token.parse().map_err(|_| {
                data_error(path, line_no, format!("non-numeric token '{token}'"))
            })?;
            if !value.is_finite() {
                return Err(data_error(
                    path,
                    line_no,
                    format!("non-finite value '{token}'"),
                ));
            }
            row.push(value);
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(data_error(
                    path,
                    line_no,
                    format!("ragged row: {} entries, expected {w}", row.len()),
                ));
            }
        } else {
            width = Some(row.len());
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(data_error(path, 1, "no data rows"));
    }
    DenseMatrix::from_rows(&rows).map_err(|e| data_error(path, 1, e.to_string()))
}

fn parse_matrix_market(path: &Path, text: &str) -> Result<DenseMatrix, CliError> {
    let mut lines = text.lines().enumerate();

    let (_, banner) = lines
        .next()
        .ok_or_else(|| data_error(path, 1, "empty file"))?;
    let banner_fields: Vec<String> = banner.split_whitespace().map(str::to_lowercase).collect();
    if banner_fields.len() < 5
        || banner_fields[0] != "%%matrixmarket"
        || banner_fields[1] != "matrix"
    {
        return Err(data_error(
            path,
            1,
            "expected '%%MatrixMarket matrix <format> <field> <symmetry>' banner",
        ));
    }
    let coordinate = match banner_fields[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(data_error(path, 1, format!("unsupported format '{other}'"))),
    };
    match banner_fields[3].as_str() {
        "real" | "double" | "integer" => {}
        other => {
            return Err(data_error(
                path,
                1,
                format!("unsupported field type '{other}' (only real matrices are supported)"),
            ));
        }
    }
    if banner_fields[4] != "general" {
        return Err(data_error(
            path,
            1,
            format!(
                "unsupported symmetry '{}' (only general matrices are supported)",
                banner_fields[4]
            ),
        ));
    }

    // Size line: first non-comment, non-blank line after the banner.
    let mut size_line = None;
    for (idx, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        size_line = Some((idx + 1, line));
        break;
    }
    let (size_no, size_text) =
        size_line.ok_or_else(|| data_error(path, 1, "missing size line"))?;
    let dims: Vec<usize> = size_text
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| data_error(path, size_no, format!("bad size token '{t}'")))
        })
        .collect::<Result<_, _>>()?;

    let parse_value = |line_no: usize, token: &str| -> Result<f64, CliError> {
        let value: f64 = token
            .parse()
            .map_err(|_| data_error(path, line_no, format!("non-numeric token '{token}'")))?;
        if !value.is_finite() {
            return Err(data_error(
                path,
                line_no,
                format!("non-finite value '{token}'"),
            ));
        }
        Ok(value)
    };

    if coordinate {
        let [rows, cols, nnz] = dims[..] else {
            return Err(data_error(path, size_no, "expected 'rows cols nnz'"));
        };
        if rows == 0 || cols == 0 {
            return Err(data_error(path, size_no, "matrix dimensions must be positive"));
        }
        let mut matrix = DenseMatrix::zeros(rows, cols);
        let mut seen = 0usize;
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [i, j, v] = fields[..] else {
                return Err(data_error(path, line_no, "expected 'row col value'"));
            };
            let i: usize = i
                .parse()
                .map_err(|_| data_error(path, line_no, format!("bad row index '{i}'")))?;
            let j: usize = j
                .parse()
                .map_err(|_| data_error(path, line_no, format!("bad column index '{j}'")))?;
            if i == 0 || i > rows || j == 0 || j > cols {
                return Err(data_error(
                    path,
                    line_no,
                    format!("entry ({i}, {j}) outside {rows}x{cols} (indices are 1-based)"),
                ));
            }
            let value = parse_value(line_no, v)?;
            // Duplicate entries are accumulated, the usual assembly rule.
            matrix.set(i - 1, j - 1, matrix.get(i - 1, j - 1) + value);
            seen += 1;
        }
        if seen != nnz {
            return Err(data_error(
                path,
                size_no,
                format!("header promises {nnz} entries, file has {seen}"),
            ));
        }
        Ok(matrix)
    } else {
        let [rows, cols] = dims[..] else {
            return Err(data_error(path, size_no, "expected 'rows cols'"));
        };
        if rows == 0 || cols == 0 {
            return Err(data_error(path, size_no, "matrix dimensions must be positive"));
        }
        // Array form lists entries in column-major order.
        let mut values = Vec::with_capacity(rows * cols);
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            for token in line.split_whitespace() {
                values.push(parse_value(line_no, token)?);
            }
        }
        if values.len() != rows * cols {
            return Err(data_error(
                path,
                size_no,
                format!(
                    "array body has {} values, expected {rows}x{cols} = {}",
                    values.len(),
                    rows * cols
                ),
            ));
        }
        DenseMatrix::from_col_major(rows, cols, values)
            .map_err(|e| data_error(path, size_no, e.to_string()))
    }
}

/// Serialize with 17 significant digits so every `f64` survives the round
/// trip bit-for-bit.
pub fn format_entry(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn write_matrix_csv(path: &Path, matrix: &DenseMatrix) -> Result<(), CliError> {
    let mut out = String::new();
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format_entry(matrix.get(i, j)));
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn temp_file(name: &str, contents: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!("gcss-io-{}-{name}", std::process::id()));
        fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn csv_basic() {
        let path = temp_file("basic.csv", "1,0,1\n0,1,1\n");
        let m = load_matrix(&path, SourceFormat::Csv, false).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.get(0, 2), 1.0);
        assert_eq!(m.get(1, 0), 0.0);
    }

    #[test]
    fn csv_header_and_errors() {
        let path = temp_file("hdr.csv", "a,b\n1,2\n3,4\n");
        let m = load_matrix(&path, SourceFormat::Csv, true).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(matches!(
            load_matrix(&path, SourceFormat::Csv, false),
            Err(CliError::Data { line: 1, .. })
        ));

        let ragged = temp_file("ragged.csv", "1,2\n3\n");
        assert!(matches!(
            load_matrix(&ragged, SourceFormat::Csv, false),
            Err(CliError::Data { line: 2, .. })
        ));

        let nan = temp_file("nan.csv", "1,NaN\n");
        assert!(matches!(
            load_matrix(&nan, SourceFormat::Csv, false),
            Err(CliError::Data { line: 1, .. })
        ));
    }

    #[test]
    fn matrix_market_array_is_column_major() {
        let path = temp_file(
            "eye.mtx",
            "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n",
        );
        let m = load_matrix(&path, SourceFormat::MatrixMarket, false).unwrap();
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(1, 0), 0.0);
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(m.get(1, 1), 1.0);
    }

    #[test]
    fn matrix_market_coordinate_with_explicit_zero() {
        let path = temp_file(
            "coo.mtx",
            "%%MatrixMarket matrix coordinate real general\n% comment\n2 3 3\n1 1 4.5\n2 2 0\n1 3 -1\n",
        );
        let m = load_matrix(&path, SourceFormat::MatrixMarket, false).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.get(0, 0), 4.5);
        assert_eq!(m.get(1, 1), 0.0);
        assert_eq!(m.get(0, 2), -1.0);
        assert_eq!(m.get(1, 0), 0.0);
    }

    #[test]
    fn matrix_market_rejects_unsupported() {
        let complex = temp_file(
            "cplx.mtx",
            "%%MatrixMarket matrix array complex general\n1 1\n1 0\n",
        );
        assert!(matches!(
            load_matrix(&complex, SourceFormat::MatrixMarket, false),
            Err(CliError::Data { line: 1, .. })
        ));
        let pattern = temp_file(
            "pat.mtx",
            "%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n",
        );
        assert!(load_matrix(&pattern, SourceFormat::MatrixMarket, false).is_err());
        let symmetric = temp_file(
            "sym.mtx",
            "%%MatrixMarket matrix array real symmetric\n1 1\n1\n",
        );
        assert!(load_matrix(&symmetric, SourceFormat::MatrixMarket, false).is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut rng = gcss::rng::SplitMix64::new(17);
        let m = DenseMatrix::from_fn(4, 3, |_, _| rng.next_in(-10.0, 10.0));
        let path = std::env::temp_dir().join(format!("gcss-io-rt-{}.csv", std::process::id()));
        write_matrix_csv(&path, &m).unwrap();
        let back = load_matrix(&path, SourceFormat::Csv, false).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn detection_by_extension() {
        assert_eq!(
            SourceFormat::detect(Path::new("x.mtx")),
            SourceFormat::MatrixMarket
        );
        assert_eq!(
            SourceFormat::detect(Path::new("x.MM")),
            SourceFormat::MatrixMarket
        );
        assert_eq!(SourceFormat::detect(Path::new("x.csv")), SourceFormat::Csv);
        assert_eq!(SourceFormat::detect(Path::new("x.dat")), SourceFormat::Csv);
    }
}
