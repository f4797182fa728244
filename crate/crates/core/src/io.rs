//! Plain-text instance formats. Vertex ids in files are 1-based.
//!
//! Tree: first line `n`, then `n - 1` lines `u v weight`.
//! Matrix cost: `n` lines of `n` numbers. Coordinates: `n` lines of `D`
//! numbers each. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cost::CostOracle;
use crate::error::ParseError;
use crate::tree::Tree;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((k + 1, line.split_whitespace().collect()))
        }
    })
}

fn number<T: FromStr>(token: &str, line: usize, what: &str) -> Result<T, ParseError> {
    token.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("invalid {what} `{token}`"),
    })
}

pub fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    let mut lines = data_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| ParseError::Truncated("missing vertex count".into()))?;
    if header.len() != 1 {
        return Err(ParseError::Syntax {
            line,
            message: "expected a single vertex count".into(),
        });
    }
    let n: usize = number(header[0], line, "vertex count")?;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (line, tokens) in lines {
        if tokens.len() != 3 {
            return Err(ParseError::Syntax {
                line,
                message: format!("expected `u v weight`, found {} fields", tokens.len()),
            });
        }
        let u: usize = number(tokens[0], line, "vertex id")?;
        let v: usize = number(tokens[1], line, "vertex id")?;
        let w: f64 = number(tokens[2], line, "weight")?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(crate::error::TreeError::VertexOutOfRange { vertex: x, n }.into());
            }
        }
        edges.push((u - 1, v - 1, w));
    }
    if edges.len() + 1 < n {
        return Err(ParseError::Truncated(format!(
            "expected {} edges, found {}",
            n - 1,
            edges.len()
        )));
    }
    Ok(Tree::new(n, &edges)?)
}

fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    data_lines(text)
        .map(|(line, tokens)| {
            tokens
                .iter()
                .map(|t| number(t, line, "number"))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<CostOracle, ParseError> {
    let rows = parse_rows(text)?;
    let n = rows.len();
    if let Some(k) = rows.iter().position(|r| r.len() != n) {
        return Err(ParseError::Syntax {
            line: k + 1,
            message: format!("matrix row {} has {} entries, expected {n}", k + 1, rows[k].len()),
        });
    }
    Ok(CostOracle::matrix(n, rows.concat())?)
}

pub fn parse_coords(text: &str) -> Result<CostOracle, ParseError> {
    let rows = parse_rows(text)?;
    let dim = rows.first().map_or(0, Vec::len);
    if dim == 0 {
        return Err(ParseError::Truncated("no coordinates".into()));
    }
    if let Some(k) = rows.iter().position(|r| r.len() != dim) {
        return Err(ParseError::Syntax {
            line: k + 1,
            message: format!("point {} has {} coordinates, expected {dim}", k + 1, rows[k].len()),
        });
    }
    Ok(CostOracle::euclidean(dim, rows.concat())?)
}

pub fn write_tree(tree: &Tree) -> String {
    let mut out = format!("{}\n", tree.vertex_count());
    for &(u, v, w) in tree.edges() {
        let _ = writeln!(out, "{} {} {}", u + 1, v + 1, w);
    }
    out
}

pub fn write_matrix(n: usize, cost: impl Fn(usize, usize) -> f64) -> String {
    let mut out = String::new();
    for u in 0..n {
        let row: Vec<String> = (0..n)
            .map(|v| if u == v { "0".to_string() } else { cost(u, v).to_string() })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_coords(points: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for p in points {
        let row: Vec<String> = p.iter().map(f64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Where a cost comes from, as given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum CostSpec {
    Matrix(PathBuf),
    Coords(PathBuf),
    Const(f64),
    TreeDist,
}

impl CostSpec {
    /// Parses `matrix FILE`, `coords FILE`, `const K` or `treedist`.
    pub fn parse<S: AsRef<str>>(words: &[S]) -> Result<Self, ParseError> {
        let words: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
        let bad = || ParseError::CostSpec(words.join(" "));
        match words.as_slice() {
            ["matrix", file] => Ok(CostSpec::Matrix(file.into())),
            ["coords", file] => Ok(CostSpec::Coords(file.into())),
            ["const", k] => k.parse().map(CostSpec::Const).map_err(|_| bad()),
            ["treedist"] => Ok(CostSpec::TreeDist),
            _ => Err(bad()),
        }
    }

    /// Builds the oracle, reading files through `read`.
    pub fn load(
        &self,
        tree: &Tree,
        read: impl Fn(&std::path::Path) -> std::io::Result<String>,
    ) -> Result<CostOracle, LoadError> {
        let io = |p: &PathBuf| {
            read(p).map_err(|e| LoadError::Io {
                path: p.clone(),
                message: e.to_string(),
            })
        };
        let oracle = match self {
            CostSpec::Matrix(p) => parse_matrix(&io(p)?)?,
            CostSpec::Coords(p) => parse_coords(&io(p)?)?,
            CostSpec::Const(k) => CostOracle::constant(*k).map_err(ParseError::from)?,
            CostSpec::TreeDist => CostOracle::tree_distance(tree),
        };
        oracle.check_covers(tree).map_err(ParseError::from)?;
        Ok(oracle)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::TreeError;

    #[test]
    fn tree_round_trip() {
        let text = "# P3\n3\n1 2 1.5\n\n2 3 4\n";
        let t = parse_tree(text).unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_weight(1, 2), Some(4.0));
        assert_eq!(write_tree(&t), "3\n1 2 1.5\n2 3 4\n");
        assert_eq!(parse_tree(&write_tree(&t)).unwrap().edges(), t.edges());
    }

    #[test]
    fn tree_errors() {
        assert!(matches!(parse_tree(""), Err(ParseError::Truncated(_))));
        assert!(matches!(parse_tree("3\n1 2 1\n"), Err(ParseError::Truncated(_))));
        assert!(matches!(
            parse_tree("2\n1 x 1\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_tree("2\n1 3 1\n"),
            Err(ParseError::Tree(TreeError::VertexOutOfRange { vertex: 3, n: 2 }))
        ));
        assert!(matches!(parse_tree("2\n1 2 0\n"), Err(ParseError::Tree(_))));
        assert!(matches!(parse_tree("2\n1 2 1\n1 2 1\n"), Err(ParseError::Tree(_))));
    }

    #[test]
    fn costs() {
        let m = parse_matrix("0 2 3\n2 0 4\n3 4 9\n").unwrap();
        assert_eq!(m.cost(0, 2), 3.0);
        assert!(parse_matrix("0 1\n2 0\n").is_err());
        assert!(parse_matrix("0 1\n1\n").is_err());
        let c = parse_coords("0 0\n3 4\n").unwrap();
        assert_eq!(c.cost(0, 1), 5.0);
        assert!(parse_coords("0 0\n3\n").is_err());
        assert_eq!(
            parse_matrix(&write_matrix(3, |u, v| (u + v) as f64)).unwrap().cost(1, 2),
            3.0
        );
    }

    #[test]
    fn cost_specs() {
        assert_eq!(CostSpec::parse(&["const", "2.5"]).unwrap(), CostSpec::Const(2.5));
        assert_eq!(CostSpec::parse(&["treedist"]).unwrap(), CostSpec::TreeDist);
        assert_eq!(
            CostSpec::parse(&["matrix", "m.txt"]).unwrap(),
            CostSpec::Matrix("m.txt".into())
        );
        assert!(CostSpec::parse(&["const"]).is_err());
        assert!(CostSpec::parse(&["const", "abc"]).is_err());
        assert!(CostSpec::parse(&["euclid", "f"]).is_err());

        let t = Tree::path(&[1.0, 1.0]).unwrap();
        let spec = CostSpec::Matrix("m".into());
        let oracle = spec.load(&t, |_| Ok("0 1 1\n1 0 1\n1 1 0\n".into())).unwrap();
        assert_eq!(oracle.cost(0, 2), 1.0);
        assert!(spec.load(&t, |_| Ok("0 1\n1 0\n".into())).is_err());
        assert!(matches!(
            spec.load(&t, |_| Err(std::io::Error::other("gone"))),
            Err(LoadError::Io { .. })
        ));
        assert!(CostSpec::Const(-1.0).load(&t, |_| unreachable!()).is_err());
    }
}
