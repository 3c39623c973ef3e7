//! Type strings: `A n`, `B n`, `D n`, `E6`, `F4`, `G2`, `H3`, `H4`, `I2(m)`,
//! `U n`, or an explicit matrix such as `[[1,3],[3,1]]` or `1 3; 3 1`
//! (`inf`, `∞` or `0` denote an infinite order).

use super::{CoxeterError, CoxeterMatrix, Family, INFINITE};

pub(crate) struct ParsedType {
    pub name: String,
    pub matrix: CoxeterMatrix,
    pub family: Family,
}

fn chain(rank: usize, labels: &[(usize, usize, u32)]) -> CoxeterMatrix {
    let mut m = vec![vec![2u32; rank]; rank];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, o) in labels {
        m[i][j] = o;
        m[j][i] = o;
    }
    CoxeterMatrix::new(m).expect("built-in diagram is well formed")
}

fn linear(rank: usize) -> Vec<(usize, usize, u32)> {
    (1..rank).map(|i| (i - 1, i, 3)).collect()
}

fn parse_rank(rest: &str, what: &str) -> Result<usize, CoxeterError> {
    rest.trim()
        .parse::<usize>()
        .map_err(|_| CoxeterError::BadType(format!("{what}: expected a rank, got {rest:?}")))
}

pub(crate) fn parse_type(spec: &str) -> Result<ParsedType, CoxeterError> {
    let s = spec.trim();
    if s.is_empty() {
        return Err(CoxeterError::BadType("empty type string".into()));
    }
    if s.starts_with('[') || s.starts_with(|c: char| c.is_ascii_digit()) {
        return parse_matrix(s);
    }
    let upper = s.to_ascii_uppercase();
    let (head, rest) = upper.split_at(1);
    let name: String = upper.chars().filter(|c| !c.is_whitespace()).collect();
    let finite = |matrix| Ok(ParsedType { name: name.clone(), matrix, family: Family::Finite });
    match head {
        "A" => {
            let n = parse_rank(rest, "A")?;
            if n == 0 {
                return Err(CoxeterError::BadType("A0 has no generators".into()));
            }
            finite(chain(n, &linear(n)))
        }
        "B" | "C" => {
            let n = parse_rank(rest, "B")?;
            if n < 2 {
                return Err(CoxeterError::BadType("B n requires n >= 2".into()));
            }
            let mut l = linear(n);
            l[n - 2].2 = 4;
            finite(chain(n, &l))
        }
        "D" => {
            let n = parse_rank(rest, "D")?;
            if n < 4 {
                return Err(CoxeterError::BadType("D n requires n >= 4".into()));
            }
            // Bourbaki labelling: s1 - ... - s(n-2), with s(n-1) and s(n) attached to s(n-2).
            let mut l: Vec<_> = (1..n - 1).map(|i| (i - 1, i, 3)).collect();
            l.push((n - 3, n - 1, 3));
            finite(chain(n, &l))
        }
        "E" => {
            let n = parse_rank(rest, "E")?;
            if n != 6 {
                return Err(CoxeterError::BadType(format!("E{n} is not supported (only E6)")));
            }
            // s1 - s3 - s4 - s5 - s6 with s2 attached to s4.
            finite(chain(6, &[(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (1, 3, 3)]))
        }
        "F" => {
            if parse_rank(rest, "F")? != 4 {
                return Err(CoxeterError::BadType("only F4 exists".into()));
            }
            finite(chain(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]))
        }
        "G" => {
            if parse_rank(rest, "G")? != 2 {
                return Err(CoxeterError::BadType("only G2 exists".into()));
            }
            finite(chain(2, &[(0, 1, 6)]))
        }
        "H" => match parse_rank(rest, "H")? {
            3 => finite(chain(3, &[(0, 1, 5), (1, 2, 3)])),
            4 => finite(chain(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)])),
            n => Err(CoxeterError::BadType(format!("H{n} is not a finite type"))),
        },
        "I" => {
            let inner = rest
                .trim()
                .strip_prefix('2')
                .and_then(|r| r.trim().strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| CoxeterError::BadType(format!("expected I2(m), got {s:?}")))?;
            let m: u32 = inner
                .trim()
                .parse()
                .map_err(|_| CoxeterError::BadType(format!("bad dihedral order in {s:?}")))?;
            if m < 2 {
                return Err(CoxeterError::BadType("I2(m) requires m >= 2".into()));
            }
            finite(chain(2, &[(0, 1, m)]))
        }
        "U" => {
            let n = parse_rank(rest, "U")?;
            if n == 0 {
                return Err(CoxeterError::BadType("U0 has no generators".into()));
            }
            let mut m = vec![vec![INFINITE; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            Ok(ParsedType {
                name,
                matrix: CoxeterMatrix::new(m)?,
                family: Family::Universal,
            })
        }
        _ => Err(CoxeterError::BadType(format!("unknown type {s:?}"))),
    }
}

fn parse_entry(tok: &str) -> Result<u32, CoxeterError> {
    let t = tok.trim().trim_matches('"');
    match t {
        "inf" | "INF" | "Inf" | "∞" | "0" | "-1" => Ok(INFINITE),
        _ => t
            .parse::<u32>()
            .map_err(|_| CoxeterError::BadMatrix(format!("bad entry {tok:?}"))),
    }
}

fn parse_matrix(s: &str) -> Result<ParsedType, CoxeterError> {
    let rows: Vec<Vec<u32>> = if s.starts_with('[') {
        let value: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| CoxeterError::BadMatrix(format!("invalid JSON matrix: {e}")))?;
        let rows = value
            .as_array()
            .ok_or_else(|| CoxeterError::BadMatrix("matrix must be an array of rows".into()))?;
        rows.iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| CoxeterError::BadMatrix("row must be an array".into()))?
                    .iter()
                    .map(|e| match e {
                        serde_json::Value::Number(n) => parse_entry(&n.to_string()),
                        serde_json::Value::String(t) => parse_entry(t),
                        serde_json::Value::Null => Ok(INFINITE),
                        _ => Err(CoxeterError::BadMatrix(format!("bad entry {e}"))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else {
        s.split(';')
            .filter(|r| !r.trim().is_empty())
            .map(|r| r.split([',', ' ']).filter(|t| !t.trim().is_empty()).map(parse_entry).collect())
            .collect::<Result<_, _>>()?
    };
    let matrix = CoxeterMatrix::new(rows)?;
    let rank = matrix.rank();
    let universal = rank >= 2
        && (0..rank).all(|i| (0..rank).all(|j| i == j || matrix.get(i, j) == INFINITE));
    Ok(ParsedType {
        name: format!("matrix{:?}", matrix.rows_display()),
        family: if universal { Family::Universal } else { Family::Finite },
        matrix,
    })
}
