//! Text and JSON interchange formats.
//!
//! Cayley files: `#` starts a comment, blank lines are ignored, the first
//! line is the order `n`, followed by `n` rows of `n` indices, then the
//! optional lines `identity: k` and `J: j0 .. j(n-1)`.
//!
//! Action files: first line `|S| |R|`, then `|S|` rows of `|R|` indices;
//! row `s`, column `r` holds the action's value at `(s, r)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constructions::matched::ActionPair;
use crate::inverse::right_inverse_permutation;
use crate::perm::Permutation;
use crate::quasigroup::{CayleyTable, LatinViolation, Loop};
use crate::{Error, Result};

/// A parsed Cayley file: a Latin table with optional identity and `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyFile {
    pub table: CayleyTable,
    pub identity: Option<usize>,
    pub j: Option<Permutation>,
}

impl CayleyFile {
    /// The loop with the declared (or detected) identity and the declared
    /// `J`, defaulting to `x ↦ x\δ`.
    pub fn into_loop(self) -> Result<(Loop, Permutation)> {
        let l = match self.identity {
            Some(d) => Loop::with_identity(self.table, d)?,
            None => Loop::new(self.table)?,
        };
        let j = match self.j {
            Some(j) => j,
            None => right_inverse_permutation(&l),
        };
        Ok((l, j))
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Content lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_indices(line_no: usize, s: &str, bound: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|tok| {
            let v: usize = tok.parse().map_err(|_| parse_err(line_no, format!("{tok:?} is not an index")))?;
            if v >= bound {
                return Err(parse_err(line_no, format!("index {v} out of range [0,{bound})")));
            }
            Ok(v)
        })
        .collect()
}

fn latin_witness(t: &CayleyTable, v: LatinViolation) -> Error {
    let n = t.order();
    match v {
        LatinViolation::Row { row, value } => {
            let cols: Vec<usize> = (0..n).filter(|&c| t.mul(row, c) == value).collect();
            Error::NotLatin(format!("row {row} repeats {value} at columns {cols:?}"))
        }
        LatinViolation::Column { column, value } => {
            let rows: Vec<usize> = (0..n).filter(|&r| t.mul(r, column) == value).collect();
            Error::NotLatin(format!("column {column} repeats {value} at rows {rows:?}"))
        }
    }
}

pub fn parse_cayley(text: &str) -> Result<CayleyFile> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| parse_err(1, "empty file: expected the order n"))?;
    let n: usize = first.parse().map_err(|_| parse_err(first_no, format!("expected the order n, found {first:?}")))?;
    if n == 0 {
        return Err(parse_err(first_no, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = first_no;
    for r in 0..n {
        let (no, line) = lines.next().ok_or_else(|| parse_err(last + 1, format!("expected row {r} of {n}")))?;
        let row = parse_indices(no, line, n)?;
        if row.len() != n {
            return Err(parse_err(no, format!("row {r} has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
        last = no;
    }
    let table = CayleyTable::from_rows(&rows)?;
    if let Some(v) = table.latin_violation() {
        return Err(latin_witness(&table, v));
    }
    let (mut identity, mut j) = (None, None);
    for (no, line) in lines {
        let (key, value) = line.split_once(':').ok_or_else(|| parse_err(no, format!("unexpected line {line:?}")))?;
        match key.trim() {
            "identity" if identity.is_none() => {
                let d = parse_indices(no, value, n)?;
                if d.len() != 1 {
                    return Err(parse_err(no, "identity takes one index"));
                }
                identity = Some(d[0]);
            }
            "J" if j.is_none() => {
                let image = parse_indices(no, value, n)?;
                if image.len() != n {
                    return Err(parse_err(no, format!("J needs {n} entries, found {}", image.len())));
                }
                j = Some(Permutation::new(image).map_err(|e| parse_err(no, e.to_string()))?);
            }
            "identity" | "J" => return Err(parse_err(no, format!("duplicate {:?} line", key.trim()))),
            other => return Err(parse_err(no, format!("unknown key {other:?}"))),
        }
    }
    Ok(CayleyFile { table, identity, j })
}

pub fn emit_cayley(table: &CayleyTable, identity: Option<usize>, j: Option<&Permutation>) -> String {
    let mut out = format!("{}\n", table.order());
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(d) = identity {
        let _ = writeln!(out, "identity: {d}");
    }
    if let Some(j) = j {
        let cells: Vec<String> = j.image().iter().map(usize::to_string).collect();
        let _ = writeln!(out, "J: {}", cells.join(" "));
    }
    out
}

pub fn emit_loop(l: &Loop, j: &Permutation) -> String {
    emit_cayley(l.table(), Some(l.identity()), Some(j))
}

/// Returns `(|S|, |R|, values)` with values indexed `s * |R| + r`.
pub fn parse_action_table(text: &str) -> Result<(usize, usize, Vec<usize>)> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or_else(|| parse_err(1, "empty file: expected \"|S| |R|\""))?;
    let dims: Vec<usize> = first
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(no, format!("{t:?} is not a size"))))
        .collect::<Result<_>>()?;
    let [ns, nr] = dims[..] else {
        return Err(parse_err(no, "expected two sizes \"|S| |R|\""));
    };
    let mut values = Vec::with_capacity(ns * nr);
    let mut last = no;
    for s in 0..ns {
        let (no, line) = lines.next().ok_or_else(|| parse_err(last + 1, format!("expected row {s} of {ns}")))?;
        let row = parse_indices(no, line, usize::MAX)?;
        if row.len() != nr {
            return Err(parse_err(no, format!("row {s} has {} entries, expected {nr}", row.len())));
        }
        values.extend(row);
        last = no;
    }
    if let Some((no, line)) = lines.next() {
        return Err(parse_err(no, format!("trailing content {line:?}")));
    }
    Ok((ns, nr, values))
}

pub fn emit_action_table(ns: usize, nr: usize, values: &[usize]) -> String {
    let mut out = format!("{ns} {nr}\n");
    for row in values.chunks(nr.max(1)).take(ns) {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Reads φ and ψ from two action files and checks them against the factors.
pub fn parse_action_pair(phi_text: &str, psi_text: &str, r_order: usize, s_order: usize) -> Result<ActionPair> {
    let (ns, nr, phi) = parse_action_table(phi_text)?;
    let (ns2, nr2, psi) = parse_action_table(psi_text)?;
    if (ns, nr) != (s_order, r_order) || (ns2, nr2) != (s_order, r_order) {
        return Err(Error::SizeMismatch(format!(
            "action tables must be {s_order}×{r_order} (|S|×|R|), found {ns}×{nr} and {ns2}×{nr2}"
        )));
    }
    ActionPair::new(r_order, s_order, phi, psi)
}

/// A loop with its `J` as plain JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopSpec {
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    pub j: Vec<usize>,
}

impl LoopSpec {
    pub fn new(l: &Loop, j: &Permutation) -> Self {
        LoopSpec { order: l.order(), identity: l.identity(), table: l.table().rows(), j: j.image().to_vec() }
    }

    pub fn to_loop(&self) -> Result<(Loop, Permutation)> {
        let t = CayleyTable::from_rows(&self.table)?;
        if t.order() != self.order {
            return Err(Error::SizeMismatch(format!("declared order {} but table has {}", self.order, t.order())));
        }
        let l = Loop::with_identity(t, self.identity)?;
        let j = Permutation::new(self.j.clone())?;
        if j.len() != self.order {
            return Err(Error::SizeMismatch("J does not act on the loop".into()));
        }
        Ok((l, j))
    }
}

/// A matched-pair bundle: factors, actions, `m`, and optionally the product
/// and its identification with `R ⋈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub m: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    pub r: LoopSpec,
    pub s: LoopSpec,
    pub actions: ActionPair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<LoopSpec>,
    /// `θ[r * |S| + s]` is the product index of `(r, s)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
}

pub const MANIFEST_KIND: &str = "matched-pair";

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(text)?;
        if m.kind != MANIFEST_KIND {
            return Err(Error::MalformedTable(format!("unsupported manifest kind {:?}", m.kind)));
        }
        if m.actions.r_order != m.r.order || m.actions.s_order != m.s.order {
            return Err(Error::SizeMismatch("actions do not match the factors".into()));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric3};

    #[test]
    fn parses_z3_with_identity() {
        let f = parse_cayley("3\n0 1 2\n1 2 0\n2 0 1\nidentity: 0").unwrap();
        assert_eq!(f.identity, Some(0));
        let (l, j) = f.into_loop().unwrap();
        assert_eq!(l.table(), cyclic(3).table());
        assert_eq!(j.image(), &[0, 2, 1]);
    }

    #[test]
    fn comments_blank_lines_and_j() {
        let text = "# Z2\n\n2 # order\n0 1\n1 0\nJ: 0 1 # trivial\n";
        let f = parse_cayley(text).unwrap();
        assert_eq!(f.j.unwrap().image(), &[0, 1]);
    }

    #[test]
    fn duplicate_in_row_names_the_row() {
        let err = parse_cayley("3\n0 1 2\n1 1 0\n2 0 1\n").unwrap_err();
        let Error::NotLatin(msg) = err else { panic!("{err}") };
        assert!(msg.contains("row 1 repeats 1 at columns [0, 1]"), "{msg}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("x\n", 1),
            ("2\n0 1\n1 5\n", 3),
            ("2\n0 1\n", 3),
            ("2\n0 1\n1 0\nfoo: 1\n", 4),
            ("# c\n2\n0 1\n1 0\nJ: 0\n", 5),
            ("2\n0 1 1\n1 0\n", 2),
        ];
        for (text, line) in cases {
            match parse_cayley(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn emit_parse_round_trip() {
        let l = symmetric3();
        let j = right_inverse_permutation(&l);
        let text = emit_loop(&l, &j);
        let back = parse_cayley(&text).unwrap();
        assert_eq!(emit_cayley(&back.table, back.identity, back.j.as_ref()), text);
    }

    #[test]
    fn action_tables() {
        let text = "2 3\n0 1 2\n0 2 1\n";
        let (ns, nr, v) = parse_action_table(text).unwrap();
        assert_eq!((ns, nr), (2, 3));
        assert_eq!(emit_action_table(ns, nr, &v), text);
        let psi = "2 3\n0 0 0\n1 1 1\n";
        let a = parse_action_pair(text, psi, 3, 2).unwrap();
        assert_eq!(a.phi(1, 1), 2);
        assert!(parse_action_pair(text, psi, 2, 3).is_err());
    }
}
