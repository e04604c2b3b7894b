//! Text renderings of a window of a permutation matrix.

use std::fmt::Write;
use std::ops::Range;

use crate::perm::BandedPermutation;

pub const DIAGONAL: char = '×';
pub const ONE: char = '●';
pub const ZERO: char = '·';

/// Rows `rows`, columns widened by the bandwidth on both sides. The zeroth
/// diagonal is drawn as `×`, other ones as `●`, zeros as `·`.
pub fn ascii(p: &BandedPermutation, rows: Range<i64>) -> String {
    let w = p.bandwidth();
    let cols = rows.start - w..rows.end + w;
    let label_width = [rows.start, rows.end - 1]
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    writeln!(
        out,
        "rows {}..{}  cols {}..{}",
        rows.start, rows.end, cols.start, cols.end
    )
    .unwrap();
    for i in rows {
        let target = p.apply(i);
        let cells: Vec<String> = cols
            .clone()
            .map(|j| {
                let c = if i == j {
                    DIAGONAL
                } else if target == j {
                    ONE
                } else {
                    ZERO
                };
                c.to_string()
            })
            .collect();
        writeln!(out, "{i:>label_width$} | {}", cells.join(" ")).unwrap();
    }
    out
}

/// Bipartite arrow graph `i -> π(i)` in DOT, row nodes on one rank and
/// column nodes on the other.
pub fn dot(p: &BandedPermutation, rows: Range<i64>) -> String {
    let node = |prefix: &str, v: i64| {
        if v < 0 {
            format!("{prefix}_m{}", -v)
        } else {
            format!("{prefix}_{v}")
        }
    };
    let targets: Vec<(i64, i64)> = rows.clone().map(|i| (i, p.apply(i))).collect();
    let col_lo = targets.iter().map(|t| t.1).min().unwrap_or(rows.start);
    let col_hi = targets.iter().map(|t| t.1 + 1).max().unwrap_or(rows.end);

    let mut out = String::new();
    out.push_str("digraph permutation {\n  rankdir=TB;\n  node [shape=circle];\n");
    out.push_str("  { rank=same;");
    for i in rows.clone() {
        write!(out, " {} [label=\"{i}\"];", node("i", i)).unwrap();
    }
    out.push_str(" }\n  { rank=same;");
    for j in col_lo..col_hi {
        write!(out, " {} [label=\"{j}\"];", node("j", j)).unwrap();
    }
    out.push_str(" }\n");
    for (i, j) in targets {
        writeln!(out, "  {} -> {};", node("i", i), node("j", j)).unwrap();
    }
    out.push_str("}\n");
    out
}
