//! Text formats. Indices in files are 1-based.
//!
//! Matrix (`.zfm`):
//! ```text
//! field gf2            | field gfp <p>
//! <n_rows> <n_cols>
//! <i> <j> <value>      one triplet per line
//! ```
//! Vector: one value per line. Zero forcing set: one vertex index per line.
//! Board: `rows cols`, then `rows` lines of `cols` characters from `{0,1}`.
//!
//! Core cache:
//! ```text
//! zfcore 1
//! field <spec>
//! n <order of A>
//! k <order of B>
//! terminals <t_1> ... <t_k>
//! zfs <z_1> ... <z_k>
//! <k lines of k values, row-major>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored everywhere except
//! inside board bodies.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::grid::{BoardState, GridSpec};
use crate::la::{DenseMatrix, SparseMatrix, Vector};
use crate::solver::CoreMatrix;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// A whitespace-separated token with its 1-based line and column.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, self.column, message)
    }

    fn number<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text.parse().map_err(|_| self.err(format!("expected {what}, found `{}`", self.text)))
    }

    fn index(&self, bound: usize) -> Result<usize> {
        let i: usize = self.number("an index")?;
        if i == 0 || i > bound {
            return Err(self.err(format!("index {i} outside 1..={bound}")));
        }
        Ok(i - 1)
    }

    fn residue(&self, spec: FieldSpec) -> Result<u32> {
        let v: u32 = self.number("a field value")?;
        if v >= spec.modulus() {
            return Err(self.err(format!("{v} is not a canonical residue modulo {}", spec.modulus())));
        }
        Ok(v)
    }
}

/// Non-comment lines, each split into tokens.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token { text: &line[s..pos], line: idx + 1, column: s + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        Some((idx + 1, tokens))
    })
}

fn expect_arity(line: usize, tokens: &[Token<'_>], n: usize, what: &str) -> Result<()> {
    if tokens.len() != n {
        let column = tokens.get(n).map_or(1, |t| t.column);
        return Err(parse_err(line, column, format!("expected {what}")));
    }
    Ok(())
}

fn parse_field(line: usize, tokens: &[Token<'_>]) -> Result<FieldSpec> {
    match tokens {
        [kw, name] if kw.text == "field" && name.text == "gf2" => Ok(FieldSpec::GF2),
        [kw, name, p] if kw.text == "field" && name.text == "gfp" => {
            let p: u32 = p.number("a prime modulus")?;
            FieldSpec::prime(p).map_err(|e| tokens[2].err(e.to_string()))
        }
        _ => Err(parse_err(line, tokens.first().map_or(1, |t| t.column), "expected `field gf2` or `field gfp <p>`")),
    }
}

pub fn parse_matrix(text: &str) -> Result<SparseMatrix> {
    let mut lines = content_lines(text);
    let (line, tokens) = lines.next().ok_or_else(|| parse_err(1, 1, "missing field header"))?;
    let spec = parse_field(line, &tokens)?;
    let (line, tokens) = lines.next().ok_or_else(|| parse_err(line + 1, 1, "missing dimensions"))?;
    expect_arity(line, &tokens, 2, "`<n_rows> <n_cols>`")?;
    let n_rows: usize = tokens[0].number("a row count")?;
    let n_cols: usize = tokens[1].number("a column count")?;
    if n_rows == 0 || n_cols == 0 {
        return Err(tokens[0].err("dimensions must be positive"));
    }

    let mut seen = std::collections::HashMap::new();
    let mut triplets = Vec::new();
    for (line, tokens) in lines {
        expect_arity(line, &tokens, 3, "`<i> <j> <value>`")?;
        let i = tokens[0].index(n_rows)?;
        let j = tokens[1].index(n_cols)?;
        let v = tokens[2].residue(spec)?;
        if let Some(first) = seen.insert((i, j), line) {
            return Err(tokens[0].err(format!("duplicate entry ({}, {}), first given on line {first}", i + 1, j + 1)));
        }
        triplets.push((i, j, v));
    }
    SparseMatrix::from_triplets(spec, n_rows, n_cols, triplets)
}

pub fn write_matrix(a: &SparseMatrix) -> String {
    let mut out = format!("field {}\n{} {}\n", a.spec(), a.n_rows(), a.n_cols());
    for (i, j, v) in a.triplets() {
        let _ = writeln!(out, "{} {} {v}", i + 1, j + 1);
    }
    out
}

pub fn parse_vector(text: &str, spec: FieldSpec) -> Result<Vector> {
    let mut entries = Vec::new();
    for (line, tokens) in content_lines(text) {
        expect_arity(line, &tokens, 1, "one value per line")?;
        entries.push(tokens[0].residue(spec)?);
    }
    Vector::new(spec, entries)
}

pub fn write_vector(v: &Vector) -> String {
    v.entries().iter().fold(String::new(), |mut out, x| {
        let _ = writeln!(out, "{x}");
        out
    })
}

/// Zero forcing set as 0-based indices, in file order. `n` bounds the
/// indices.
pub fn parse_zfs(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut seen = vec![false; n];
    for (line, tokens) in content_lines(text) {
        expect_arity(line, &tokens, 1, "one index per line")?;
        let v = tokens[0].index(n)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(tokens[0].err(format!("vertex {} listed twice", v + 1)));
        }
        out.push(v);
    }
    Ok(out)
}

pub fn write_zfs(z: &[usize]) -> String {
    z.iter().fold(String::new(), |mut out, v| {
        let _ = writeln!(out, "{}", v + 1);
        out
    })
}

pub fn parse_board(text: &str) -> Result<BoardState> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, 1, "missing `rows cols` header"))?;
    let (_, tokens) = content_lines(header).next().ok_or_else(|| parse_err(idx + 1, 1, "missing header"))?;
    expect_arity(idx + 1, &tokens, 2, "`rows cols`")?;
    let rows: usize = tokens[0].number("a row count")?;
    let cols: usize = tokens[1].number("a column count")?;
    let grid = GridSpec::new(rows, cols).map_err(|e| parse_err(idx + 1, 1, e.to_string()))?;

    let mut cells = Vec::with_capacity(grid.cells());
    for r in 0..rows {
        let (idx, line) =
            lines.next().ok_or_else(|| parse_err(idx + 2 + r, 1, format!("expected {rows} board rows")))?;
        let line = line.trim_end();
        if line.chars().count() != cols {
            return Err(parse_err(idx + 1, 1, format!("expected {cols} cells, found {}", line.chars().count())));
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => cells.push(0),
                '1' => cells.push(1),
                _ => return Err(parse_err(idx + 1, c + 1, format!("expected 0 or 1, found `{ch}`"))),
            }
        }
    }
    if let Some((idx, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_err(idx + 1, 1, format!("unexpected trailing content `{}`", extra.trim())));
    }
    BoardState::new(grid, Vector::new(FieldSpec::GF2, cells)?)
}

pub fn write_board(b: &BoardState) -> String {
    let g = b.grid();
    let mut out = format!("{} {}\n", g.rows(), g.cols());
    for row in b.to_rows() {
        out.extend(row.iter().map(|&v| if v == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// A core matrix read back from a cache file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedCore {
    /// Order of the original matrix `A`.
    pub n: usize,
    pub core: CoreMatrix,
}

pub fn write_core(core: &CoreMatrix, n: usize) -> String {
    let b = core.matrix();
    let labels = |xs: &[usize]| xs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!(
        "zfcore 1\nfield {}\nn {n}\nk {}\nterminals {}\nzfs {}\n",
        b.spec(),
        core.k(),
        labels(core.terminals()),
        labels(core.zfs())
    );
    for i in 0..b.rows() {
        let row: Vec<String> = b.row(i).iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn keyed<'t, 'a>(entry: &'t (usize, Vec<Token<'a>>), key: &str, arity: usize) -> Result<&'t [Token<'a>]> {
    let (line, tokens) = entry;
    if tokens.first().map(|t| t.text) != Some(key) {
        return Err(parse_err(*line, 1, format!("expected `{key}`")));
    }
    expect_arity(*line, &tokens[1..], arity, &format!("`{key}` followed by {arity} value(s)"))?;
    Ok(&tokens[1..])
}

pub fn parse_core(text: &str) -> Result<CachedCore> {
    let lines: Vec<(usize, Vec<Token<'_>>)> = content_lines(text).collect();
    let mut cursor = lines.iter();
    let last_line = text.lines().count();
    let mut next = |what: &str| {
        cursor.next().ok_or_else(|| parse_err(last_line + 1, 1, format!("unexpected end of file, expected {what}")))
    };
    let (line, tokens) = next("`zfcore 1`")?;
    if tokens.len() != 2 || tokens[0].text != "zfcore" || tokens[1].text != "1" {
        return Err(parse_err(*line, 1, "expected `zfcore 1`"));
    }
    let (line, tokens) = next("field header")?;
    let spec = parse_field(*line, tokens)?;
    let n: usize = keyed(next("`n`")?, "n", 1)?[0].number("an order")?;
    let k: usize = keyed(next("`k`")?, "k", 1)?[0].number("an order")?;
    let terminals =
        keyed(next("`terminals`")?, "terminals", k)?.iter().map(|t| t.index(n)).collect::<Result<Vec<_>>>()?;
    let zfs = keyed(next("`zfs`")?, "zfs", k)?.iter().map(|t| t.index(n)).collect::<Result<Vec<_>>>()?;

    let mut b = DenseMatrix::zeros(spec, k, k);
    for i in 0..k {
        let (line, t) = next("core matrix row")?;
        expect_arity(*line, t, k, "k values")?;
        for (j, tok) in t.iter().enumerate() {
            b.set(i, j, tok.residue(spec)?)?;
        }
    }
    if let Ok((line, _)) = next("") {
        return Err(parse_err(*line, 1, "unexpected trailing content"));
    }
    Ok(CachedCore { n, core: CoreMatrix::new(b, terminals, zfs)? })
}
