//! Line-oriented JSON set files: a header `{"ambient_dim": N}` followed by one
//! JSON array of constraints per piece.

use serde::Deserialize;
use semiconvex::{CellSet, LinConstraint, PieceList};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    ambient_dim: usize,
}

fn json_error(line: usize, e: serde_json::Error) -> ParseError {
    ParseError { line, column: e.column().max(1), message: e.to_string() }
}

pub fn parse(text: &str) -> Result<PieceList, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (hline, htext) = lines
        .next()
        .ok_or(ParseError { line: 1, column: 1, message: "missing header".into() })?;
    let header: Header = serde_json::from_str(htext).map_err(|e| json_error(hline, e))?;
    let dim = header.ambient_dim;
    if dim == 0 {
        return Err(ParseError { line: hline, column: 1, message: "ambient_dim must be positive".into() });
    }
    let mut pieces = Vec::new();
    for (line, text) in lines {
        let piece: Vec<LinConstraint> = serde_json::from_str(text).map_err(|e| json_error(line, e))?;
        if let Some(c) = piece.iter().find(|c| c.coeffs.len() != dim) {
            return Err(ParseError {
                line,
                column: 1,
                message: format!("constraint has {} coefficients, ambient_dim is {dim}", c.coeffs.len()),
            });
        }
        pieces.push(piece);
    }
    Ok(PieceList::new(dim, pieces))
}

/// A closed set as its hull, otherwise its included cells, one piece per line.
pub fn write(s: &CellSet) -> String {
    let mut out = format!("{{\"ambient_dim\":{}}}\n", s.dim());
    let pieces = if s.is_empty() {
        vec![]
    } else if s.is_closed() {
        vec![s.top().constraint_list()]
    } else {
        s.to_pieces().pieces
    };
    for piece in pieces {
        out.push_str(&serde_json::to_string(&piece).expect("constraints serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "{\"ambient_dim\":1}\n[{\"coeffs\":[\"-1\"],\"rel\":\"<=\",\"rhs\":\"0\"},{\"coeffs\":[\"1\"],\"rel\":\"<\",\"rhs\":\"1\"}]\n";
        let p = parse(text).unwrap();
        let s = CellSet::canonicalize(&p).unwrap();
        let again = CellSet::canonicalize(&parse(&write(&s)).unwrap()).unwrap();
        assert!(s.set_equal(&again).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("{\"ambient_dim\":1}\n\n[{\"coeffs\":[\"0.5\"],\"rel\":\"<=\",\"rhs\":\"0\"}]").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 1);
        let e = parse("{\"ambient_dim\":2}\n[{\"coeffs\":[\"1\"],\"rel\":\"<=\",\"rhs\":\"0\"}]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        assert!(parse("").is_err());
        assert!(parse("{\"dim\":2}").is_err());
        assert!(parse("{\"ambient_dim\":1}\n[{\"coeffs\":[\"1\"],\"rel\":\">\",\"rhs\":\"0\"}]").is_err());
    }

    #[test]
    fn header_only_is_empty() {
        let p = parse("{\"ambient_dim\":3}\n").unwrap();
        assert!(CellSet::canonicalize(&p).unwrap().is_empty());
    }
}
