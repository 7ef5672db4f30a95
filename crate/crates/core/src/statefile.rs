//! Text formats for states, local operations and evaluation points.
//!
//! State files are sparse, exact and line-based:
//!
//! ```text
//! # optional comments
//! format: 2 2 2
//! 0 0 0 : 1
//! 1 1 1 : -1/2+2/3i
//! ```
//!
//! Omitted entries are zero; parse(serialize(A)) = A exactly. Operation
//! files hold one `party <j>` header (1-based) per party followed by the
//! d_j x d_j matrix rows; point files hold one line of d_j scalars per
//! party in order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{parse_scalar, GaussianRational};
use crate::tensor::{LocalOperation, PartyVectorTuple, Tensor, TensorFormat};

fn fail(line: usize, msg: impl Into<String>) -> Error {
    Error::FileParse {
        line,
        msg: msg.into(),
    }
}

/// Logical lines with 1-based numbers; comments and blanks dropped,
/// CR stripped so CRLF input parses.
fn logical_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_format_line(no: usize, line: &str) -> Result<TensorFormat> {
    let Some(rest) = line.strip_prefix("format:") else {
        return Err(fail(
            no,
            format!("expected `format: d1 d2 ...`, got {line:?}"),
        ));
    };
    let dims = rest
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| fail(no, format!("bad dimension {tok:?}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    TensorFormat::new(dims).map_err(|e| fail(no, e.to_string()))
}

/// Parses a state file into a tensor.
pub fn parse_state(text: &str) -> Result<Tensor> {
    let mut lines = logical_lines(text);
    let Some((no, first)) = lines.next() else {
        return Err(fail(1, "empty state file"));
    };
    let format = parse_format_line(no, first)?;
    let n = format.n_parties();
    let mut tensor = Tensor::zeros(format.clone());
    let mut seen = vec![false; format.total_size()];
    for (no, line) in lines {
        let Some((lhs, rhs)) = line.split_once(':') else {
            return Err(fail(no, format!("expected `i1 .. in : scalar`, got {line:?}")));
        };
        let idx = lhs
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| fail(no, format!("bad index {tok:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if idx.len() != n {
            return Err(fail(
                no,
                format!("expected {n} indices, got {}", idx.len()),
            ));
        }
        for (j, (&i, &d)) in idx.iter().zip(format.dims()).enumerate() {
            if i >= d {
                return Err(fail(
                    no,
                    format!("index {i} out of range for party {} (dim {d})", j + 1),
                ));
            }
        }
        let off = format.offset_of(&idx);
        if seen[off] {
            return Err(fail(no, format!("duplicate entry for index {lhs:?}")));
        }
        seen[off] = true;
        let value = parse_scalar(rhs.trim()).map_err(|e| fail(no, e.to_string()))?;
        tensor.set(&idx, value);
    }
    Ok(tensor)
}

/// Sparse exact text form; inverse of `parse_state`.
pub fn serialize_state(a: &Tensor) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "format: {}",
        a.format()
            .dims()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )
    .expect("write to string");
    for idx in a.format().indices() {
        let v = a.get(&idx);
        if v.is_zero() {
            continue;
        }
        writeln!(
            out,
            "{} : {v}",
            idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        )
        .expect("write to string");
    }
    out
}

/// Parses an operation file for the given format: one `party <j>` block per
/// party (1-based, each exactly once, any order) followed by d_j matrix rows.
pub fn parse_operation(text: &str, format: &TensorFormat) -> Result<LocalOperation> {
    let n = format.n_parties();
    let mut matrices: Vec<Option<Matrix>> = vec![None; n];
    let mut lines = logical_lines(text).peekable();
    while let Some((no, line)) = lines.next() {
        let Some(rest) = line.strip_prefix("party") else {
            return Err(fail(no, format!("expected `party <j>` header, got {line:?}")));
        };
        let j: usize = rest
            .trim()
            .parse()
            .map_err(|_| fail(no, format!("bad party number {:?}", rest.trim())))?;
        if j < 1 || j > n {
            return Err(fail(no, format!("party {j} out of range 1..={n}")));
        }
        if matrices[j - 1].is_some() {
            return Err(fail(no, format!("duplicate block for party {j}")));
        }
        let d = format.dims()[j - 1];
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let Some((no, line)) = lines.next() else {
                return Err(fail(no, format!("missing matrix rows for party {j}")));
            };
            let row = line
                .split_whitespace()
                .map(|tok| parse_scalar(tok).map_err(|e| fail(no, e.to_string())))
                .collect::<Result<Vec<GaussianRational>>>()?;
            if row.len() != d {
                return Err(fail(
                    no,
                    format!("expected {d} entries in a party-{j} row, got {}", row.len()),
                ));
            }
            rows.push(row);
        }
        matrices[j - 1] = Some(Matrix::from_rows(rows));
    }
    let mats = matrices
        .into_iter()
        .enumerate()
        .map(|(j, m)| m.ok_or_else(|| fail(0, format!("missing block for party {}", j + 1))))
        .collect::<Result<Vec<Matrix>>>()?;
    LocalOperation::new(mats)
}

/// Serializes an operation in the `parse_operation` grammar.
pub fn serialize_operation(op: &LocalOperation) -> String {
    let mut out = String::new();
    for (j, m) in op.matrices().iter().enumerate() {
        writeln!(out, "party {}", j + 1).expect("write to string");
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(" ")).expect("write to string");
        }
    }
    out
}

/// Parses a point file: one line of d_j scalars per party, in party order.
pub fn parse_point(text: &str, format: &TensorFormat) -> Result<PartyVectorTuple> {
    let mut vectors = Vec::with_capacity(format.n_parties());
    let mut lines = logical_lines(text);
    for (j, &d) in format.dims().iter().enumerate() {
        let Some((no, line)) = lines.next() else {
            return Err(fail(0, format!("missing vector line for party {}", j + 1)));
        };
        let v = line
            .split_whitespace()
            .map(|tok| parse_scalar(tok).map_err(|e| fail(no, e.to_string())))
            .collect::<Result<Vec<GaussianRational>>>()?;
        if v.len() != d {
            return Err(fail(
                no,
                format!("expected {d} entries for party {}, got {}", j + 1, v.len()),
            ));
        }
        vectors.push(v);
    }
    if let Some((no, line)) = lines.next() {
        return Err(fail(no, format!("unexpected trailing line {line:?}")));
    }
    Ok(PartyVectorTuple::new(vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_state, random_tensor, SplitMix64};

    #[test]
    fn parse_ghz() {
        let text = "format: 2 2 2\n0 0 0 : 1\n1 1 1 : 1\n";
        assert_eq!(parse_state(text).unwrap(), Tensor::ghz3());
    }

    #[test]
    fn parse_with_comments_and_crlf() {
        let text = "# a state\r\nformat: 3 2 2\r\n0 0 0 : 1\r\n1 0 1 : 1\r\n2 1 1 : 1\r\n";
        let t = parse_state(text).unwrap();
        assert_eq!(t.format().dims(), &[3, 2, 2]);
        assert_eq!(*t.get(&[2, 1, 1]), GaussianRational::one());
    }

    #[test]
    fn parse_complex_entry() {
        let text = "format: 2 2\n0 0 : 1/2-1/3i\n";
        let t = parse_state(text).unwrap();
        assert_eq!(*t.get(&[0, 0]), GaussianRational::from_parts(1, 2, -1, 3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let dup = "format: 2 2\n0 0 : 1\n0 0 : 2\n";
        match parse_state(dup) {
            Err(Error::FileParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected duplicate error, got {other:?}"),
        }
        let out_of_range = "format: 2 2\n0 5 : 1\n";
        assert!(matches!(
            parse_state(out_of_range),
            Err(Error::FileParse { line: 2, .. })
        ));
        let missing_format = "0 0 : 1\n";
        assert!(parse_state(missing_format).is_err());
        let wrong_arity = "format: 2 2\n0 0 0 : 1\n";
        assert!(parse_state(wrong_arity).is_err());
        let unknown_key = "format: 2 2\nweight: 3\n";
        assert!(parse_state(unknown_key).is_err());
        let bad_scalar = "format: 2 2\n0 0 : 2i\n";
        assert!(parse_state(bad_scalar).is_err());
    }

    #[test]
    fn round_trip_random_states() {
        let mut rng = SplitMix64::new(70);
        for dims in [vec![2, 2], vec![2, 2, 2], vec![3, 2, 2], vec![2, 2, 2, 2]] {
            let f = TensorFormat::new(dims).unwrap();
            for _ in 0..10 {
                let a = random_tensor(&f, &mut rng, 5);
                assert_eq!(parse_state(&serialize_state(&a)).unwrap(), a);
            }
        }
        let a = random_state(&TensorFormat::new(vec![2, 2, 2]).unwrap(), 3, 3);
        assert_eq!(parse_state(&serialize_state(&a)).unwrap(), a);
    }

    #[test]
    fn operation_round_trip() {
        let f = TensorFormat::new(vec![3, 2, 2]).unwrap();
        let text = "party 1\n1 0 0\n0 1 0\n0 0 1\nparty 2\n0 1\n1 0\nparty 3\n1 1\n0 1\n";
        let op = parse_operation(text, &f).unwrap();
        assert_eq!(parse_operation(&serialize_operation(&op), &f).unwrap().matrices(), op.matrices());
        assert!(op.is_invertible());
    }

    #[test]
    fn operation_errors() {
        let f = TensorFormat::new(vec![2, 2]).unwrap();
        assert!(parse_operation("party 1\n1 0\n0 1\n", &f).is_err()); // party 2 missing
        assert!(parse_operation("party 3\n1 0\n0 1\n", &f).is_err());
        assert!(parse_operation(
            "party 1\n1 0\n0 1\nparty 1\n1 0\n0 1\nparty 2\n1 0\n0 1\n",
            &f
        )
        .is_err());
        assert!(parse_operation("party 1\n1 0 0\n0 1 0\nparty 2\n1 0\n0 1\n", &f).is_err());
    }

    #[test]
    fn point_parsing() {
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        let x = parse_point("0 1\n0 1\n0 1\n", &f).unwrap();
        assert_eq!(
            x,
            PartyVectorTuple::from_ints(&[&[0, 1], &[0, 1], &[0, 1]])
        );
        assert!(parse_point("0 1\n0 1\n", &f).is_err());
        assert!(parse_point("0 1\n0 1\n0 1\n1 0\n", &f).is_err());
        assert!(parse_point("0 1 2\n0 1\n0 1\n", &f).is_err());
    }
}
