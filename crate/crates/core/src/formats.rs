//! Text formats for relations, topologies, function pairs, biorders,
//! scales, and label subsets. Blank lines and `#` comment lines are
//! ignored everywhere; parse errors carry the offending line number.

use num::{BigRational, One};

use crate::biorders::{BiorderPair, FiniteBiorder};
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, is_dyadic, parse_ratio};
use crate::relations::FiniteRelation;
use crate::repcore::FunctionPair;
use crate::scales::DyadicScale;
use crate::topology::FiniteTopology;

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some((i + 1, t))
            }
        })
        .collect()
}

fn take<'a>(lines: &[(usize, &'a str)], pos: &mut usize, what: &str) -> Result<(usize, &'a str)> {
    let item = lines
        .get(*pos)
        .copied()
        .ok_or_else(|| Error::parse(lines.last().map_or(0, |l| l.0), format!("missing {what}")))?;
    *pos += 1;
    Ok(item)
}

fn expect_end(lines: &[(usize, &str)], pos: usize) -> Result<()> {
    if let Some(&(line, _)) = lines.get(pos) {
        return Err(Error::parse(line, "unexpected trailing content"));
    }
    Ok(())
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize> {
    let n: usize = s
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{s}`")))?;
    if n == 0 {
        return Err(Error::parse(line, format!("{what} must be positive")));
    }
    Ok(n)
}

fn parse_bitstring(line: usize, s: &str, width: usize) -> Result<u64> {
    if s.len() != width {
        return Err(Error::parse(
            line,
            format!("expected {width} characters of 0/1, found `{s}`"),
        ));
    }
    let mut mask = 0u64;
    for (j, c) in s.chars().enumerate() {
        match c {
            '1' => mask |= 1 << j,
            '0' => {}
            other => {
                return Err(Error::parse(
                    line,
                    format!("invalid incidence character `{other}`"),
                ))
            }
        }
    }
    Ok(mask)
}

/// `n`, a label line, then `n` incidence rows of `n` characters.
pub fn parse_relation(text: &str) -> Result<FiniteRelation> {
    let lines = content_lines(text);
    let mut pos = 0;
    let (ln, count) = take(&lines, &mut pos, "element count")?;
    let n = parse_count(ln, count, "element count")?;
    let (ln, label_line) = take(&lines, &mut pos, "label line")?;
    let labels: Vec<String> = label_line.split_whitespace().map(String::from).collect();
    if labels.len() != n {
        return Err(Error::parse(
            ln,
            format!("expected {n} labels, found {}", labels.len()),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, row) = take(&lines, &mut pos, "incidence row")?;
        rows.push(parse_bitstring(ln, row, n)?);
    }
    expect_end(&lines, pos)?;
    FiniteRelation::new(labels, rows)
}

pub fn write_relation(r: &FiniteRelation) -> String {
    let mut out = format!("{}\n{}\n", r.n(), r.labels().join(" "));
    for row in r.to_bitstring_rows() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// `n`, a label line, then one open set per line as a membership bitstring.
/// The whole family is validated against the topology axioms.
pub fn parse_topology(text: &str) -> Result<FiniteTopology> {
    let lines = content_lines(text);
    let mut pos = 0;
    let (ln, count) = take(&lines, &mut pos, "point count")?;
    let n = parse_count(ln, count, "point count")?;
    let (ln, label_line) = take(&lines, &mut pos, "label line")?;
    let points: Vec<String> = label_line.split_whitespace().map(String::from).collect();
    if points.len() != n {
        return Err(Error::parse(
            ln,
            format!("expected {n} labels, found {}", points.len()),
        ));
    }
    let mut opens = Vec::new();
    while pos < lines.len() {
        let (ln, row) = take(&lines, &mut pos, "open set")?;
        opens.push(parse_bitstring(ln, row, n)?);
    }
    FiniteTopology::new(points, opens)
}

pub fn write_topology(t: &FiniteTopology) -> String {
    let mut out = format!("{}\n{}\n", t.n(), t.points().join(" "));
    for open in t.to_bitstring_opens() {
        out.push_str(&open);
        out.push('\n');
    }
    out
}

/// One line per element: `label p/q p/q` (the `u` value, then the `v` value).
pub fn parse_function_pair(text: &str) -> Result<FunctionPair> {
    let lines = content_lines(text);
    if lines.is_empty() {
        return Err(Error::parse(0, "missing value rows"));
    }
    let mut labels = Vec::new();
    let mut u = Vec::new();
    let mut v = Vec::new();
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(ln, "expected `label p/q p/q`"));
        }
        let parse = |s: &str| {
            parse_ratio(s).ok_or_else(|| Error::parse(ln, format!("invalid rational `{s}`")))
        };
        labels.push(fields[0].to_string());
        u.push(parse(fields[1])?);
        v.push(parse(fields[2])?);
    }
    {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
    }
    FunctionPair::new(labels, u, v)
}

pub fn write_function_pair(p: &FunctionPair) -> String {
    let mut out = String::new();
    for (i, label) in p.labels().iter().enumerate() {
        out.push_str(&format!(
            "{label} {} {}\n",
            format_ratio(&p.u()[i]),
            format_ratio(&p.v()[i])
        ));
    }
    out
}

/// `m n`, the row labels, the column labels, then `m` strict rows.
pub fn parse_biorder(text: &str) -> Result<FiniteBiorder> {
    let lines = content_lines(text);
    let mut pos = 0;
    let (ln, header) = take(&lines, &mut pos, "size header")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(ln, "expected `m n`"));
    }
    let m = parse_count(ln, fields[0], "row count")?;
    let n = parse_count(ln, fields[1], "column count")?;
    let (ln, a_line) = take(&lines, &mut pos, "row labels")?;
    let a_labels: Vec<String> = a_line.split_whitespace().map(String::from).collect();
    if a_labels.len() != m {
        return Err(Error::parse(
            ln,
            format!("expected {m} row labels, found {}", a_labels.len()),
        ));
    }
    let (ln, x_line) = take(&lines, &mut pos, "column labels")?;
    let x_labels: Vec<String> = x_line.split_whitespace().map(String::from).collect();
    if x_labels.len() != n {
        return Err(Error::parse(
            ln,
            format!("expected {n} column labels, found {}", x_labels.len()),
        ));
    }
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, row) = take(&lines, &mut pos, "strict row")?;
        rows.push(parse_bitstring(ln, row, n)?);
    }
    expect_end(&lines, pos)?;
    FiniteBiorder::new(a_labels, x_labels, rows)
}

pub fn write_biorder(b: &FiniteBiorder) -> String {
    let mut out = format!(
        "{} {}\n{}\n{}\n",
        b.m(),
        b.n(),
        b.a_labels().join(" "),
        b.x_labels().join(" ")
    );
    for row in b.to_bitstring_rows() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Two lines per element list: row values then column values, as
/// `label p/q` pairs. Used to carry biorder representations.
pub fn write_biorder_pair(p: &BiorderPair) -> String {
    let mut out = String::new();
    for (label, val) in p.a_labels().iter().zip(p.v()) {
        out.push_str(&format!("v {label} {}\n", format_ratio(val)));
    }
    for (label, val) in p.x_labels().iter().zip(p.u()) {
        out.push_str(&format!("u {label} {}\n", format_ratio(val)));
    }
    out
}

/// `k`, then `k` lines `p/q <membership bitstring>` with strictly ascending
/// dyadic grid values; the last line must be `1/1` with full membership.
pub fn parse_scale(text: &str) -> Result<DyadicScale> {
    let lines = content_lines(text);
    let mut pos = 0;
    let (ln, count) = take(&lines, &mut pos, "grid size")?;
    let k = parse_count(ln, count, "grid size")?;
    let mut grid: Vec<BigRational> = Vec::with_capacity(k);
    let mut sets = Vec::with_capacity(k);
    let mut width = None;
    for idx in 0..k {
        let (ln, line) = take(&lines, &mut pos, "scale row")?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(ln, "expected `p/q <membership bitstring>`"));
        }
        let r = parse_ratio(fields[0])
            .ok_or_else(|| Error::parse(ln, format!("invalid rational `{}`", fields[0])))?;
        if !is_dyadic(&r) {
            return Err(Error::parse(
                ln,
                format!("grid value {} is not dyadic", format_ratio(&r)),
            ));
        }
        if let Some(prev) = grid.last() {
            if prev >= &r {
                return Err(Error::parse(ln, "grid values must be strictly ascending"));
            }
        }
        let w = *width.get_or_insert(fields[1].len());
        let mask = parse_bitstring(ln, fields[1], w)?;
        if idx == k - 1 {
            if !r.is_one() {
                return Err(Error::parse(ln, "last grid value must be 1/1"));
            }
            if mask != crate::bits::full_mask(w) {
                return Err(Error::parse(ln, "membership at 1/1 must be all ones"));
            }
        }
        grid.push(r);
        sets.push(mask);
    }
    expect_end(&lines, pos)?;
    let width = width.expect("at least one row");
    DyadicScale::new(grid, sets, width)
}

pub fn write_scale(sc: &DyadicScale) -> String {
    let mut out = format!("{}\n", sc.grid().len());
    for (r, &s) in sc.grid().iter().zip(sc.sets()) {
        out.push_str(&format!(
            "{} {}\n",
            format_ratio(r),
            crate::bits::bitstring(s, sc.num_points())
        ));
    }
    out
}

/// Whitespace-separated labels, across any number of lines.
pub fn parse_subset(text: &str) -> Result<Vec<String>> {
    Ok(content_lines(text)
        .iter()
        .flat_map(|(_, l)| l.split_whitespace())
        .map(String::from)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singleton_relation_file() {
        let r = parse_relation("1\na\n1").unwrap();
        assert_eq!(r.n(), 1);
        assert!(r.related(0, 0));
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let r = parse_relation("# a chain\n\n3\na b c\n111\n# middle\n011\n001\n").unwrap();
        assert!(r.check_axioms().total_preorder);
    }

    #[test]
    fn interval_order_file_round_trip() {
        let text = "3\nx y z\n111\n111\n011\n";
        let r = parse_relation(text).unwrap();
        assert!(r.check_axioms().interval_order);
        assert_eq!(write_relation(&r), text);
    }

    #[test]
    fn relation_parse_errors_carry_lines() {
        assert!(matches!(
            parse_relation("2\na b\n11"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_relation("2\na b\n11\n1x"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_relation("2\na b\n11\n11\n11"),
            Err(Error::Parse { line: 5, .. })
        ));
    }

    #[test]
    fn topology_missing_full_set_is_rejected() {
        let err = parse_topology("2\na b\n00\n01").unwrap_err();
        assert!(matches!(err, Error::InvalidTopology(m) if m.contains("missing X")));
    }

    #[test]
    fn function_pair_round_trip() {
        let text = "a 0/1 1/2\nb -1/3 2/1\n";
        let p = parse_function_pair(text).unwrap();
        assert_eq!(write_function_pair(&p), text);
        assert!(matches!(
            parse_function_pair("a 1 2"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn biorder_round_trip() {
        let text = "2 3\na b\nx y z\n110\n010\n";
        let b = parse_biorder(text).unwrap();
        assert_eq!(write_biorder(&b), text);
    }

    #[test]
    fn scale_format_constraints() {
        let ok = "2\n1/2 10\n1/1 11\n";
        let sc = parse_scale(ok).unwrap();
        assert_eq!(write_scale(&sc), ok);
        // Last row must be 1/1 with all ones.
        assert!(parse_scale("2\n1/2 10\n3/4 11\n").is_err());
        assert!(parse_scale("2\n1/2 10\n1/1 10\n").is_err());
        // Ascending and dyadic grid values.
        assert!(parse_scale("2\n3/4 10\n1/2 11\n").is_err());
        assert!(parse_scale("2\n1/3 10\n1/1 11\n").is_err());
    }

    #[test]
    fn subsets_parse() {
        assert_eq!(
            parse_subset("a b\n# skip\nc\n").unwrap(),
            vec!["a".to_string(), "b".to_string(), "c".to_string()]
        );
    }

    proptest! {
        #[test]
        fn relation_text_round_trip(n in 1usize..6, bits in proptest::collection::vec(any::<u64>(), 1..6)) {
            let n = n.min(bits.len());
            let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let rows: Vec<u64> = bits[..n].to_vec();
            let r = FiniteRelation::new(labels, rows).unwrap();
            let round = parse_relation(&write_relation(&r)).unwrap();
            prop_assert_eq!(round, r);
        }
    }
}
