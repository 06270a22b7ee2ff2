//! File formats shared between the library and the command line tool.
//!
//! Four formats: JSON Cayley tables (`{"order", "table", "magma"?}`,
//! 1-based entries), pattern text (blocks separated by `|`, entries by
//! spaces), block-descriptor text (rows of comma-separated `C(..)`/`R(..)`
//! tokens, written the way the block's first row reads), and complex
//! matrices as CSV of real/imaginary pairs or the JSON equivalent.
//! Every writer's output is accepted by the matching reader; readers fail
//! only with [`Error::Malformed`].

use crate::algebra::{magma_report, FiniteGroup, Magma};
use crate::error::{Error, Result};
use crate::loops::LoopTable;
use crate::pattern::InversePattern;
use crate::spectral::{CharacterRow, CharacterTable, ClassInfo};
use crate::table::{BlockDescriptor, BlockTable};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

type C64 = Complex<f64>;

fn malformed<E: std::fmt::Display>(e: E) -> Error {
    Error::Malformed(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    magma: bool,
}

/// Renders a Cayley table; set `magma` when the table is not a group so
/// that [`read_table_json`] will accept it back.
pub fn write_table_json(m: &Magma, magma: bool) -> String {
    let n = m.order();
    let table = (1..=n)
        .map(|a| (1..=n).map(|b| m.op(a, b)).collect())
        .collect();
    let file = TableFile {
        order: n,
        table,
        magma,
    };
    let mut out = serde_json::to_string_pretty(&file).expect("table serialization");
    out.push('\n');
    out
}

/// Loads a Cayley table, returning the magma flag alongside it.  Tables
/// without the flag must be groups.
pub fn read_table_json(text: &str) -> Result<(Magma, bool)> {
    let file: TableFile = serde_json::from_str(text).map_err(malformed)?;
    if file.table.len() != file.order {
        return Err(Error::Malformed(format!(
            "order field says {} but the table has {} rows",
            file.order,
            file.table.len()
        )));
    }
    let m = Magma::from_rows(&file.table).map_err(malformed)?;
    if !file.magma && !magma_report(&m).is_group() {
        return Err(Error::Malformed(
            "the table is not a group; set \"magma\": true to load it anyway".into(),
        ));
    }
    Ok((m, file.magma))
}

/// Loads a Cayley table that must be a group.
pub fn read_group_json(text: &str) -> Result<FiniteGroup> {
    let (m, _) = read_table_json(text)?;
    FiniteGroup::from_magma(m).map_err(malformed)
}

/// Loads a Cayley table as a loop, running the loop checks.
pub fn read_loop_json(text: &str) -> Result<LoopTable> {
    let (m, _) = read_table_json(text)?;
    LoopTable::from_magma(m).map_err(malformed)
}

/// Renders an inverse pattern as space-separated blocks joined by `|`.
pub fn write_pattern_text(p: &InversePattern) -> String {
    let mut out = p
        .images()
        .chunks(p.m)
        .map(|block| {
            block
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ");
    out.push('\n');
    out
}

/// Parses the pattern text format, validating the involution.
pub fn read_pattern_text(text: &str) -> Result<InversePattern> {
    let blocks: Vec<Vec<usize>> = text
        .trim()
        .split('|')
        .map(|block| {
            block
                .split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(malformed))
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = blocks.first().map_or(0, Vec::len);
    if m == 0 || blocks.iter().any(|b| b.len() != m) {
        return Err(Error::Malformed(
            "pattern blocks must be nonempty and of equal length".into(),
        ));
    }
    InversePattern::new(m, blocks.concat()).map_err(malformed)
}

fn block_token(b: &BlockDescriptor) -> String {
    let first_row = |b: &BlockDescriptor| {
        (1..=b.size())
            .map(|j| b.entry(1, j).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match b {
        BlockDescriptor::Circulant { .. } => format!("C({})", first_row(b)),
        BlockDescriptor::ReversedCirculant { .. } => format!("R({})", first_row(b)),
        BlockDescriptor::Explicit { rows } => {
            let body = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; ");
            format!("E({body})")
        }
    }
}

/// Renders a block table as one line per block row, tokens comma-separated.
/// Element labels are not part of this format.
pub fn write_block_table_text(bt: &BlockTable) -> String {
    let mut out = String::new();
    for i in 1..=bt.k {
        let row: Vec<String> = (1..=bt.k).map(|j| block_token(bt.block(i, j))).collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

/// Splits a line into tokens at commas that sit outside parentheses.
fn split_tokens(line: &str) -> Vec<&str> {
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in line.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                tokens.push(line[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    tokens.push(line[start..].trim());
    tokens
}

fn parse_block_token(token: &str) -> Result<BlockDescriptor> {
    let bad = || Error::Malformed(format!("unreadable block token `{token}`"));
    let inner = token
        .strip_suffix(')')
        .and_then(|t| t.get(2..))
        .ok_or_else(bad)?;
    let numbers = |s: &str| -> Result<Vec<usize>> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    match token.chars().next() {
        Some('C') if token.as_bytes().get(1) == Some(&b'(') => Ok(BlockDescriptor::Circulant {
            symbols: numbers(inner)?,
        }),
        Some('R') if token.as_bytes().get(1) == Some(&b'(') => {
            let mut symbols = numbers(inner)?;
            symbols.reverse();
            Ok(BlockDescriptor::ReversedCirculant { symbols })
        }
        Some('E') if token.as_bytes().get(1) == Some(&b'(') => {
            let rows: Vec<Vec<usize>> = inner
                .split(';')
                .map(|r| {
                    r.split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|_| bad()))
                        .collect()
                })
                .collect::<Result<_>>()?;
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return Err(bad());
            }
            Ok(BlockDescriptor::Explicit { rows })
        }
        _ => Err(bad()),
    }
}

/// Parses the block-descriptor text format.  Positions are labeled 1..n
/// since the format carries no label information.
pub fn read_block_table_text(text: &str) -> Result<BlockTable> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let k = lines.len();
    let mut blocks = Vec::with_capacity(k * k);
    for line in &lines {
        let tokens = split_tokens(line);
        if tokens.len() != k {
            return Err(Error::Malformed(format!(
                "expected {k} blocks per row to match {k} rows, found {}",
                tokens.len()
            )));
        }
        for token in tokens {
            blocks.push(parse_block_token(token)?);
        }
    }
    let m = blocks.first().map_or(0, BlockDescriptor::size);
    if m == 0 {
        return Err(Error::Malformed("empty block table".into()));
    }
    BlockTable::new(m, k, (1..=m * k).collect(), blocks).map_err(malformed)
}

#[derive(Serialize, Deserialize)]
struct BlockTableFile {
    m: usize,
    k: usize,
    labels: Vec<usize>,
    blocks: Vec<BlockDescriptor>,
}

/// Renders a block table with full label information.
pub fn write_block_table_json(bt: &BlockTable) -> String {
    let file = BlockTableFile {
        m: bt.m,
        k: bt.k,
        labels: bt.labels.clone(),
        blocks: bt.blocks().to_vec(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("block table serialization");
    out.push('\n');
    out
}

pub fn read_block_table_json(text: &str) -> Result<BlockTable> {
    let file: BlockTableFile = serde_json::from_str(text).map_err(malformed)?;
    BlockTable::new(file.m, file.k, file.labels, file.blocks).map_err(malformed)
}

/// Renders a complex matrix as CSV with alternating real/imaginary columns.
pub fn write_matrix_csv(mat: &[Vec<C64>]) -> String {
    let mut out = String::new();
    for row in mat {
        let cells: Vec<String> = row.iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn read_matrix_csv(text: &str) -> Result<Vec<Vec<C64>>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let cells: Vec<f64> = line
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(malformed))
                .collect::<Result<_>>()?;
            if cells.is_empty() || !cells.len().is_multiple_of(2) {
                return Err(Error::Malformed(
                    "CSV rows must hold real/imaginary pairs".into(),
                ));
            }
            Ok(cells.chunks(2).map(|p| C64::new(p[0], p[1])).collect())
        })
        .collect()
}

/// JSON matrix: rows of `[re, im]` pairs.
pub fn write_matrix_json(mat: &[Vec<C64>]) -> String {
    let rows: Vec<Vec<(f64, f64)>> = mat
        .iter()
        .map(|row| row.iter().map(|z| (z.re, z.im)).collect())
        .collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("matrix serialization");
    out.push('\n');
    out
}

pub fn read_matrix_json(text: &str) -> Result<Vec<Vec<C64>>> {
    let rows: Vec<Vec<(f64, f64)>> = serde_json::from_str(text).map_err(malformed)?;
    Ok(rows
        .into_iter()
        .map(|row| row.into_iter().map(|(re, im)| C64::new(re, im)).collect())
        .collect())
}

#[derive(Serialize, Deserialize)]
struct CharacterTableFile {
    classes: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    rows: Vec<Vec<(f64, f64)>>,
}

pub fn write_character_table_json(t: &CharacterTable<f64>) -> String {
    let file = CharacterTableFile {
        classes: t.classes.iter().map(|c| c.members.clone()).collect(),
        degrees: t.rows.iter().map(|r| r.degree).collect(),
        rows: t
            .rows
            .iter()
            .map(|r| r.values.iter().map(|z| (z.re, z.im)).collect())
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("character table serialization");
    out.push('\n');
    out
}

pub fn read_character_table_json(text: &str) -> Result<CharacterTable<f64>> {
    let file: CharacterTableFile = serde_json::from_str(text).map_err(malformed)?;
    if file.degrees.len() != file.rows.len() {
        return Err(Error::Malformed(
            "degrees and rows must have the same length".into(),
        ));
    }
    let classes: Vec<ClassInfo> = file
        .classes
        .iter()
        .map(|members| {
            members
                .first()
                .map(|&rep| ClassInfo {
                    representative: rep,
                    size: members.len(),
                    members: members.clone(),
                })
                .ok_or_else(|| Error::Malformed("empty conjugacy class".into()))
        })
        .collect::<Result<_>>()?;
    let n: usize = classes.iter().map(|c| c.size).sum();
    let rows = file
        .degrees
        .into_iter()
        .zip(file.rows)
        .map(|(degree, pairs)| {
            if pairs.len() != classes.len() {
                return Err(Error::Malformed(
                    "row length must match the number of classes".into(),
                ));
            }
            let values: Vec<C64> = pairs.into_iter().map(|(re, im)| C64::new(re, im)).collect();
            let norm = values
                .iter()
                .zip(&classes)
                .map(|(z, c)| c.size as f64 * z.norm_sqr())
                .sum::<f64>()
                / n as f64;
            Ok(CharacterRow {
                degree,
                values,
                norm,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CharacterTable { classes, rows })
}

/// One complex value for the aligned text table: exact-looking integers stay
/// integers, everything else keeps four decimals.
fn format_value(z: C64) -> String {
    let tol = 1e-9;
    let part = |x: f64| {
        if (x - x.round()).abs() < tol {
            format!("{}", x.round() as i64)
        } else {
            format!("{x:.4}")
        }
    };
    if z.im.abs() < tol {
        part(z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", part(z.re), part(z.im))
    } else {
        format!("{}-{}i", part(z.re), part(-z.im))
    }
}

/// Renders a character table as aligned text: class representatives and
/// sizes on top, one line per row with its degree in front.
pub fn write_character_table_text(t: &CharacterTable<f64>) -> String {
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut head = vec!["class".to_string()];
    head.extend(t.classes.iter().map(|c| c.representative.to_string()));
    grid.push(head);
    let mut sizes = vec!["size".to_string()];
    sizes.extend(t.classes.iter().map(|c| c.size.to_string()));
    grid.push(sizes);
    for row in &t.rows {
        let mut line = vec![row.degree.to_string()];
        line.extend(row.values.iter().map(|&z| format_value(z)));
        grid.push(line);
    }
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (idx, row) in grid.iter().enumerate() {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(&" ".repeat(widths[c] - cell.len()));
            line.push_str(cell);
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if idx == 1 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (cols - 1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue::{cyclic, symmetric3};
    use crate::loops::smallest_counterexample_loop;
    use crate::spectral::characters;
    use crate::table::{build_ward_table, make_ordering};

    #[test]
    fn table_json_round_trip_and_rejections() {
        let g = symmetric3();
        let text = write_table_json(g.magma(), false);
        let (back, flag) = read_table_json(&text).unwrap();
        assert!(!flag);
        assert_eq!(&back, g.magma());
        assert!(read_group_json(&text).is_ok());

        let l = smallest_counterexample_loop();
        let loop_text = write_table_json(l.magma(), true);
        let reloaded = read_loop_json(&loop_text).unwrap();
        assert_eq!(reloaded.magma(), l.magma());
        // Without the flag a non-group is rejected.
        let unflagged = loop_text.replace("\"magma\": true", "\"magma\": false");
        assert!(matches!(
            read_table_json(&unflagged),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            read_table_json("{\"order\": 2}"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            read_table_json("{\"order\": 3, \"table\": [[1,2],[2,1]]}"),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn pattern_text_round_trip() {
        let parsed = read_pattern_text("1 3 2 | 7 8 9 | 4 5 6").unwrap();
        assert_eq!(parsed.m, 3);
        assert_eq!(parsed.images(), &[1, 3, 2, 7, 8, 9, 4, 5, 6]);
        let text = write_pattern_text(&parsed);
        assert_eq!(text, "1 3 2 | 7 8 9 | 4 5 6\n");
        assert_eq!(read_pattern_text(&text).unwrap(), parsed);

        assert!(matches!(
            read_pattern_text("1 2 | 3"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            read_pattern_text("2 3 1"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(read_pattern_text(""), Err(Error::Malformed(_))));
    }

    #[test]
    fn block_text_round_trip() {
        let g = symmetric3();
        let ord = make_ordering(&g, &g.subgroup_generated(2), None).unwrap();
        let bt = build_ward_table(&g, &ord);
        let text = write_block_table_text(&bt);
        assert_eq!(text, "C(1,3,2), C(4,5,6)\nC(4,6,5), C(1,2,3)\n");
        let back = read_block_table_text(&text).unwrap();
        assert_eq!(write_block_table_text(&back), text);
        assert_eq!(back.blocks(), bt.blocks());

        let with_explicit = "C(1,2), E(3 4; 4 3)\nR(3,4), C(1,2)\n";
        let parsed = read_block_table_text(with_explicit).unwrap();
        assert_eq!(write_block_table_text(&parsed), with_explicit);
        assert!(parsed.block(2, 1).is_reversed());
        assert_eq!(parsed.block(2, 1).entry(1, 1), 3);

        assert!(read_block_table_text("C(1,2), C(3,4)\n").is_err());
        assert!(read_block_table_text("Q(1,2), C(1,2)\nC(1,2), C(1,2)\n").is_err());
    }

    #[test]
    fn block_json_round_trip() {
        let g = symmetric3();
        let ord = make_ordering(&g, &g.subgroup_generated(2), None).unwrap();
        let bt = build_ward_table(&g, &ord);
        let text = write_block_table_json(&bt);
        assert!(text.contains("\"kind\": \"circulant\""));
        let back = read_block_table_json(&text).unwrap();
        assert_eq!(back, bt);
    }

    #[test]
    fn matrix_formats_round_trip() {
        let mat = vec![
            vec![C64::new(1.0 / 3.0, -2.0), C64::new(0.0, 2f64.sqrt())],
            vec![C64::new(-0.25, 1e-17), C64::new(7.0, 0.125)],
        ];
        let csv = write_matrix_csv(&mat);
        assert_eq!(read_matrix_csv(&csv).unwrap(), mat);
        let json = write_matrix_json(&mat);
        assert_eq!(read_matrix_json(&json).unwrap(), mat);
        assert!(read_matrix_csv("1.0,2.0,3.0\n").is_err());
        assert!(read_matrix_csv("nope\n").is_err());
    }

    #[test]
    fn character_table_formats() {
        let g = symmetric3();
        let ord = make_ordering(&g, &g.subgroup_generated(2), None).unwrap();
        let table = characters::<f64>(&g, &ord);
        let json = write_character_table_json(&table);
        let back = read_character_table_json(&json).unwrap();
        assert_eq!(back.classes, table.classes);
        assert_eq!(back.rows.len(), table.rows.len());
        for (a, b) in back.rows.iter().zip(&table.rows) {
            assert_eq!(a.degree, b.degree);
            assert!((a.norm - b.norm).abs() < 1e-12);
            assert!(a
                .values
                .iter()
                .zip(&b.values)
                .all(|(x, y)| (x - y).norm() < 1e-12));
        }
        let text = write_character_table_text(&table);
        let expected = "\
class  1   2   4
 size  1   2   3
----------------
    1  1   1   1
    1  1   1  -1
    2  2  -1   0
";
        assert_eq!(text, expected);

        let c3 = cyclic(3);
        let ord3 = make_ordering(&c3, &c3.subgroup_generated(2), None).unwrap();
        let rendered = write_character_table_text(&characters::<f64>(&c3, &ord3));
        assert!(rendered.contains("-0.5000+0.8660i"));
    }
}
