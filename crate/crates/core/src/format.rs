//! Point-set text format.
//!
//! ```text
//! # optional comments
//! d n
//! x_11 x_12 ... x_1d
//! ...
//! ```
//!
//! Coordinates are integers or `p/q` rationals. Everything after `#` on a
//! line is ignored. Output is ASCII and newline-terminated.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::point::{Point, PointSet};
use crate::scalar;

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing `d n` header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_usize = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line: hline,
            message: format!("expected a non-negative integer, found `{s}`"),
        })
    };
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: "header must be `d n`".into(),
        });
    }
    let dim = parse_usize(fields[0])?;
    let n = parse_usize(fields[1])?;
    if dim == 0 {
        return Err(Error::Parse {
            line: hline,
            message: "dimension must be positive".into(),
        });
    }

    let mut points = Vec::with_capacity(n);
    for (line, body) in lines {
        if points.len() == n {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {n} points"),
            });
        }
        let coords = body
            .split_whitespace()
            .map(|tok| {
                scalar::parse(tok).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("invalid rational `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(Error::Parse {
                line,
                message: format!("expected {dim} coordinates, found {}", coords.len()),
            });
        }
        points.push(Point::new(coords));
    }
    if points.len() != n {
        return Err(Error::Parse {
            line: 0,
            message: format!("declared {n} points, found {}", points.len()),
        });
    }
    PointSet::new(dim, points)
}

pub fn write_point_set(set: &PointSet) -> String {
    let mut out = format!("{} {}\n", set.dim(), set.len());
    for p in set.points() {
        let line: Vec<String> = p.coords().iter().map(scalar::format).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_point_set_file(path: &Path) -> Result<PointSet> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    parse_point_set(&text)
}

pub fn write_point_set_file(path: &Path, set: &PointSet) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(write_point_set(set).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn parses_comments_and_rationals() {
        let text = "# square\n2 4 # header\n1 0\n-1 0\n0 3/2\n0 -3/2\n";
        let s = parse_point_set(text).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.len(), 4);
        assert_eq!(s.point(2).coords()[1], ratio(3, 2));
        assert!(s.is_cs());
    }

    #[test]
    fn writes_canonical_form() {
        let s = parse_point_set("2 2\n2/4 -1\n-1/2 1\n").unwrap();
        assert_eq!(write_point_set(&s), "2 2\n1/2 -1\n-1/2 1\n");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "2\n1 0\n",
            "2 2\n1 0\n",
            "2 1\n1 0 0\n",
            "2 1\n1 x\n",
            "2 1\n1 1/0\n",
            "2 1\n1 0\n2 0\n",
            "0 0\n",
        ] {
            assert!(parse_point_set(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn duplicate_points_are_errors() {
        assert!(matches!(
            parse_point_set("1 2\n1\n2/2\n"),
            Err(Error::DuplicatePoint { .. })
        ));
    }
}
