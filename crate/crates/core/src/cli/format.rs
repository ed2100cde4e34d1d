//! Plain-text instance files.
//!
//! Graphs: a header line `n m`, then `m` lines `a b w` with 0-indexed
//! nodes. Knapsacks: a header line `n capacity`, then `n` lines
//! `weight utility`. Fields are whitespace separated; blank lines are
//! ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::problems::{Edge, Graph, Item, KnapsackInstance, ProblemError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Record<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
}

fn records(text: &str) -> impl Iterator<Item = Record<'_>> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let mut tokens = Vec::new();
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(j, c)) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                end = j + c.len_utf8();
                chars.next();
            }
            tokens.push(Token {
                text: &line[start..end],
                column: line[..start].chars().count() + 1,
            });
        }
        (!tokens.is_empty()).then_some(Record { line: i + 1, tokens })
    })
}

impl Record<'_> {
    fn fields<const N: usize>(&self, what: &str) -> Result<[&Token<'_>; N], FormatError> {
        if self.tokens.len() != N {
            let column = match self.tokens.get(N) {
                Some(extra) => extra.column,
                None => self.tokens.last().map_or(1, |t| t.column + t.text.chars().count()),
            };
            return Err(FormatError::Parse {
                line: self.line,
                column,
                message: format!("expected {N} fields ({what}), found {}", self.tokens.len()),
            });
        }
        Ok(std::array::from_fn(|i| &self.tokens[i]))
    }

    fn number<T: FromStr>(&self, token: &Token<'_>) -> Result<T, FormatError> {
        token.text.parse().map_err(|_| FormatError::Parse {
            line: self.line,
            column: token.column,
            message: format!("'{}' is not a non-negative integer", token.text),
        })
    }
}

/// Both header numbers and the numbered body rows.
type Body<T> = (u64, u64, Vec<(usize, T)>);

/// Header `[first, second]` plus the body rows; `rows_in` picks how many
/// body lines the header announces.
fn read_body<'a, T>(
    text: &'a str,
    header_what: &str,
    body_what: &str,
    rows_in: impl Fn(u64, u64) -> u64,
    mut row: impl FnMut(&Record<'a>) -> Result<T, FormatError>,
) -> Result<Body<T>, FormatError> {
    let mut recs = records(text);
    let header = recs.next().ok_or(FormatError::Parse {
        line: 1,
        column: 1,
        message: format!("missing header ({header_what})"),
    })?;
    let [first, second] = header.fields::<2>(header_what)?;
    let first: u64 = header.number(first)?;
    let second: u64 = header.number(second)?;
    let count = rows_in(first, second);
    let mut rows = Vec::with_capacity(count.min(1 << 20) as usize);
    let mut last_line = header.line;
    for rec in recs.by_ref() {
        if rows.len() as u64 == count {
            return Err(FormatError::Parse {
                line: rec.line,
                column: rec.tokens[0].column,
                message: format!("unexpected data after {count} {body_what} lines"),
            });
        }
        last_line = rec.line;
        rows.push((rec.line, row(&rec)?));
    }
    if (rows.len() as u64) < count {
        return Err(FormatError::Parse {
            line: last_line + 1,
            column: 1,
            message: format!("expected {count} {body_what} lines, found {}", rows.len()),
        });
    }
    Ok((first, second, rows))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let (n, _, rows) = read_body(text, "node count, edge count", "edge", |_, m| m, |rec| {
        let [a, b, w] = rec.fields::<3>("a b w")?;
        Ok(Edge::new(rec.number(a)?, rec.number(b)?, rec.number(w)?))
    })?;
    let n = usize::try_from(n).map_err(|_| FormatError::Validation {
        line: 1,
        message: format!("node count {n} is too large"),
    })?;
    let lines: Vec<usize> = rows.iter().map(|(line, _)| *line).collect();
    let edges = rows.into_iter().map(|(_, e)| e).collect();
    Graph::new(n, edges).map_err(|err| {
        let (edge, message) = match err {
            ProblemError::SelfLoop { edge, node } => (edge, format!("self-loop on node {node}")),
            ProblemError::NodeOutOfRange { edge, node, n } => {
                (edge, format!("node {node} out of range for {n} nodes"))
            }
            other => unreachable!("graph construction cannot fail with {other}"),
        };
        FormatError::Validation {
            line: lines[edge],
            message,
        }
    })
}

pub fn parse_knapsack(text: &str) -> Result<KnapsackInstance, FormatError> {
    let (_, capacity, rows) = read_body(text, "item count, capacity", "item", |n, _| n, |rec| {
        let [w, u] = rec.fields::<2>("weight utility")?;
        Ok(Item {
            weight: rec.number(w)?,
            utility: rec.number(u)?,
        })
    })?;
    Ok(KnapsackInstance::new(
        capacity,
        rows.into_iter().map(|(_, item)| item).collect(),
    ))
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.node_count(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.a, e.b, e.w).expect("writing to a String");
    }
    out
}

pub fn render_knapsack(k: &KnapsackInstance) -> String {
    let mut out = format!("{} {}\n", k.items.len(), k.capacity);
    for item in &k.items {
        writeln!(out, "{} {}", item.weight, item.utility).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_file() {
        let g = parse_graph("3 3\n0 1 1\n1 2 1\n0 2 3\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges()[2], Edge::new(0, 2, 3));
    }

    #[test]
    fn single_node_no_edges() {
        let g = parse_graph("1 0\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn self_loop_is_a_validation_error() {
        assert_eq!(
            parse_graph("2 1\n0 0 5\n"),
            Err(FormatError::Validation {
                line: 2,
                message: "self-loop on node 0".into()
            })
        );
        assert!(matches!(
            parse_graph("2 1\n0 2 5\n"),
            Err(FormatError::Validation { line: 2, .. })
        ));
    }

    #[test]
    fn malformed_lines_carry_positions() {
        assert_eq!(
            parse_graph("3 1\n0 x 1\n"),
            Err(FormatError::Parse {
                line: 2,
                column: 3,
                message: "'x' is not a non-negative integer".into()
            })
        );
        assert!(matches!(
            parse_graph("3 2\n0 1 1\n"),
            Err(FormatError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 1 1\n1 2 1\n"),
            Err(FormatError::Parse { line: 3, column: 1, .. })
        ));
        assert!(matches!(parse_graph(""), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_graph("2 1\n0 1 -4\n"),
            Err(FormatError::Parse { line: 2, column: 5, .. })
        ));
    }

    #[test]
    fn knapsack_files() {
        let k = parse_knapsack("3 5\n2 3\n3 4\n4 5\n").unwrap();
        assert_eq!(k.capacity, 5);
        assert_eq!(k.items[1], Item { weight: 3, utility: 4 });
        let empty = parse_knapsack("0 10\n").unwrap();
        assert!(empty.items.is_empty());
        assert_eq!(empty.capacity, 10);
        assert_eq!(
            parse_knapsack("1 5\n2\n"),
            Err(FormatError::Parse {
                line: 2,
                column: 2,
                message: "expected 2 fields (weight utility), found 1".into()
            })
        );
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 1..n, 0u64..1000), 0..20).prop_map(move |raw| {
                let edges = raw
                    .into_iter()
                    .map(|(a, off, w)| Edge::new(a, (a + off) % n, w))
                    .collect();
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
        }

        #[test]
        fn knapsack_round_trip(cap in 0u64..500, raw in proptest::collection::vec((0u64..100, 0u64..100), 0..15)) {
            let k = KnapsackInstance::new(cap, raw.into_iter().map(|(weight, utility)| Item { weight, utility }).collect());
            prop_assert_eq!(parse_knapsack(&render_knapsack(&k)).unwrap(), k);
        }
    }
}
