use num_bigint::BigInt;

use super::{IntMatrix, MatrixError};

impl IntMatrix {
    /// Parses `2,0,0;0,2,0;0,0,3` (rows by `;`, entries by `,`, whitespace
    /// ignored) or a JSON array of integer arrays.
    pub fn parse(text: &str) -> Result<IntMatrix, MatrixError> {
        if text.trim_start().starts_with('[') {
            return parse_json(text);
        }
        let rows = parse_rows(text, ';', ',')?;
        IntMatrix::from_rows(&rows)
    }
}

/// Parses a list of integer vectors: `1,0|0,1` with `|` between vectors.
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<BigInt>>, MatrixError> {
    parse_rows(text, '|', ',')
}

/// Parses a single comma-separated integer vector.
pub fn parse_vector(text: &str) -> Result<Vec<BigInt>, MatrixError> {
    let mut rows = parse_rows(text, '\u{0}', ',')?;
    Ok(rows.remove(0))
}

fn parse_rows(text: &str, row_sep: char, col_sep: char) -> Result<Vec<Vec<BigInt>>, MatrixError> {
    let mut rows = vec![Vec::new()];
    let mut token = String::new();
    let mut token_start = 0;

    let flush = |token: &mut String, start: usize, row: &mut Vec<BigInt>| {
        if token.is_empty() {
            return Err(MatrixError::Parse {
                position: start,
                message: "expected an integer".into(),
            });
        }
        let v = token.parse::<BigInt>().map_err(|_| MatrixError::Parse {
            position: start,
            message: format!("invalid integer '{token}'"),
        })?;
        row.push(v);
        token.clear();
        Ok(())
    };

    for (pos, ch) in text.char_indices() {
        if ch.is_whitespace() {
            continue;
        }
        if ch == col_sep || ch == row_sep {
            flush(&mut token, token_start, rows.last_mut().unwrap())?;
            if ch == row_sep {
                rows.push(Vec::new());
            }
            token_start = pos + 1;
            continue;
        }
        if !(ch.is_ascii_digit() || ch == '-' || ch == '+') {
            return Err(MatrixError::Parse {
                position: pos,
                message: format!("unexpected character '{ch}'"),
            });
        }
        if token.is_empty() {
            token_start = pos;
        }
        token.push(ch);
    }
    flush(&mut token, token_start, rows.last_mut().unwrap())?;
    Ok(rows)
}

fn parse_json(text: &str) -> Result<IntMatrix, MatrixError> {
    let rows: Vec<Vec<serde_json::Number>> =
        serde_json::from_str(text).map_err(|e| MatrixError::Parse {
            position: offset_of(text, e.line(), e.column()),
            message: e.to_string(),
        })?;
    let rows = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    x.to_string().parse::<BigInt>().map_err(|_| MatrixError::Parse {
                        position: 0,
                        message: format!("'{x}' is not an integer"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(MatrixError::Parse {
            position: 0,
            message: "empty matrix".into(),
        });
    }
    IntMatrix::from_rows(&rows)
}

fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.lines().take(line.saturating_sub(1)).map(|l| l.len() + 1).sum();
    before + column.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::big_vec;

    #[test]
    fn text_format() {
        let m = IntMatrix::parse(" 2, 0,0 ;0,2,0;\n0,0,3").unwrap();
        assert_eq!(m, IntMatrix::diag(&[2, 2, 3]));
        let m = IntMatrix::parse("-1,+2;3,-4").unwrap();
        assert_eq!(m.to_i64_rows().unwrap(), vec![vec![-1, 2], vec![3, -4]]);
    }

    #[test]
    fn json_format() {
        let m = IntMatrix::parse("[[2,0],[0,6]]").unwrap();
        assert_eq!(m, IntMatrix::diag(&[2, 6]));
        assert!(IntMatrix::parse("[[1.5]]").is_err());
    }

    #[test]
    fn errors_carry_position() {
        assert_eq!(
            IntMatrix::parse("1,2;3,x"),
            Err(MatrixError::Parse {
                position: 6,
                message: "unexpected character 'x'".into()
            })
        );
        assert!(matches!(
            IntMatrix::parse("1,,2"),
            Err(MatrixError::Parse { position: 2, .. })
        ));
        assert!(matches!(
            IntMatrix::parse("1,2;3"),
            Err(MatrixError::ShapeMismatch(_))
        ));
        assert!(matches!(IntMatrix::parse(""), Err(MatrixError::Parse { .. })));
    }

    #[test]
    fn vectors() {
        assert_eq!(
            parse_vectors("1,0 | 0,1").unwrap(),
            vec![big_vec(&[1, 0]), big_vec(&[0, 1])]
        );
        assert_eq!(parse_vector("3,-1,7").unwrap(), big_vec(&[3, -1, 7]));
    }
}
