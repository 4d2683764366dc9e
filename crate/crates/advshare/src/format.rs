//! Plain-text formats for matrices, code triples and classical schemes.
//!
//! Matrices are a header `q <q> rows <r> cols <c>` followed by `r` rows of
//! integers; symplectic rows may separate the halves with `|`. A triple file
//! is `params q n k s` followed by blocks `C_S`, `C_R`, `C_MAX` and an
//! optional `advance i j ..` line (1-based). A classical file is
//! `classical q n` followed by blocks `C_1` and `C_2`. `#` starts a comment.

use std::fmt::Write as _;

use advshare_core::classical::ClassicalScheme;
use advshare_core::field::{Field, Fq};
use advshare_core::symplectic::validate_triple;
use advshare_core::{CodeTriple, Layout, MatrixFq, ShareSet, Subspace};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Core(#[from] advshare_core::Error),
}

impl FormatError {
    pub fn name(&self) -> &'static str {
        match self {
            FormatError::Parse { .. } => "ParseError",
            FormatError::Core(e) => e.name(),
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Parse { line, msg: msg.into() })
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let r = self.items.get(self.pos).copied();
        self.pos += 1;
        r
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |x| x.0)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let end = self.last_line();
        self.next().map_or_else(|| err(end, format!("expected {what}, found end of input")), Ok)
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| FormatError::Parse { line, msg: format!("bad {what} `{tok}`") })
}

/// Header line `keyword a b ..` with exactly `count` integers.
fn header(lines: &mut Lines, keyword: &str, count: usize) -> Result<(usize, Vec<usize>)> {
    let (ln, l) = lines.expect(keyword)?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.first() != Some(&keyword) || toks.len() != count + 1 {
        return err(ln, format!("expected `{keyword}` with {count} integers, found `{l}`"));
    }
    let vals = toks[1..].iter().map(|t| parse_usize(ln, t, keyword)).collect::<Result<_>>()?;
    Ok((ln, vals))
}

fn parse_matrix_block(lines: &mut Lines, field: &Field, layout: Layout) -> Result<MatrixFq> {
    let (ln, l) = lines.expect("matrix header")?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "q" || toks[2] != "rows" || toks[4] != "cols" {
        return err(ln, format!("expected `q <q> rows <r> cols <c>`, found `{l}`"));
    }
    let q = parse_usize(ln, toks[1], "q")?;
    if q != field.order() as usize {
        return err(ln, format!("matrix over GF({q}) in a GF({}) file", field.order()));
    }
    let rows = parse_usize(ln, toks[3], "row count")?;
    let cols = parse_usize(ln, toks[5], "column count")?;
    let mut m = MatrixFq::empty(cols);
    for _ in 0..rows {
        let (ln, l) = lines.expect("matrix row")?;
        let row = parse_row(ln, l, field, cols, layout)?;
        m.push_row(&row)?;
    }
    Ok(m)
}

fn parse_row(ln: usize, l: &str, field: &Field, cols: usize, layout: Layout) -> Result<Vec<Fq>> {
    let bar: Vec<usize> = l.split_whitespace().enumerate().filter(|(_, t)| *t == "|").map(|(i, _)| i).collect();
    let toks: Vec<&str> = l.split_whitespace().filter(|t| *t != "|").collect();
    if toks.len() != cols {
        return err(ln, format!("expected {cols} entries, found {}", toks.len()));
    }
    match (layout, bar.as_slice()) {
        (_, []) => {}
        (Layout::Symplectic, [i]) if *i == cols / 2 => {}
        _ => return err(ln, "misplaced `|`"),
    }
    toks.iter()
        .map(|t| {
            let v: u32 = t.parse().map_err(|_| FormatError::Parse { line: ln, msg: format!("bad entry `{t}`") })?;
            field
                .element(v)
                .map_err(|_| FormatError::Parse { line: ln, msg: format!("element {v} outside GF({})", field.order()) })
        })
        .collect()
}

pub fn parse_matrix(text: &str, layout: Layout) -> Result<(Field, MatrixFq)> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.peek().map_or_else(|| err(0, "empty input"), Ok)?;
    let q = l
        .split_whitespace()
        .nth(1)
        .map(|t| parse_usize(ln, t, "q"))
        .transpose()?
        .ok_or(FormatError::Parse { line: ln, msg: "missing q".into() })?;
    let field = Field::with_order(q as u32)?;
    let m = parse_matrix_block(&mut lines, &field, layout)?;
    trailing(&lines)?;
    Ok((field, m))
}

fn trailing(lines: &Lines) -> Result<()> {
    match lines.peek() {
        Some((ln, l)) => err(ln, format!("unexpected `{l}`")),
        None => Ok(()),
    }
}

fn label(lines: &mut Lines, name: &str) -> Result<()> {
    let (ln, l) = lines.expect(name)?;
    if l != name {
        return err(ln, format!("expected `{name}`, found `{l}`"));
    }
    Ok(())
}

fn subspace_block(lines: &mut Lines, field: &Field, name: &str, layout: Layout, cols: usize) -> Result<Subspace> {
    label(lines, name)?;
    let at = lines.peek().map_or(0, |x| x.0);
    let m = parse_matrix_block(lines, field, layout)?;
    if m.cols() != cols {
        return err(at, format!("{name} has {} columns, expected {cols}", m.cols()));
    }
    Ok(Subspace::span(field, layout, &m))
}

/// A triple file together with its optional advance set.
#[derive(Clone, Debug)]
pub struct TripleFile {
    pub triple: CodeTriple,
    pub advance: Option<ShareSet>,
}

pub fn parse_triple(text: &str) -> Result<TripleFile> {
    let mut lines = Lines::new(text);
    let (ln, p) = header(&mut lines, "params", 4)?;
    let (q, n, k, s) = (p[0], p[1], p[2], p[3]);
    if n == 0 || n > 64 {
        return err(ln, format!("n = {n} outside 1..=64"));
    }
    let field = Field::with_order(q as u32)?;
    let c_s = subspace_block(&mut lines, &field, "C_S", Layout::Symplectic, 2 * n)?;
    let c_r = subspace_block(&mut lines, &field, "C_R", Layout::Symplectic, 2 * n)?;
    let c_max = subspace_block(&mut lines, &field, "C_MAX", Layout::Symplectic, 2 * n)?;
    let advance = match lines.peek() {
        Some((ln, l)) if l.starts_with("advance") => {
            lines.next();
            let idx =
                l.split_whitespace().skip(1).map(|t| parse_usize(ln, t, "share index")).collect::<Result<Vec<_>>>()?;
            if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > n) {
                return err(ln, format!("share index {bad} outside 1..={n}"));
            }
            Some(ShareSet::from_one_based(&idx))
        }
        _ => None,
    };
    trailing(&lines)?;
    let triple = validate_triple(&field, c_s, c_r, c_max, n, k, s)?;
    Ok(TripleFile { triple, advance })
}

fn write_block(out: &mut String, name: &str, field: &Field, m: &MatrixFq, layout: Layout) {
    let _ = writeln!(out, "{name}");
    let _ = writeln!(out, "q {} rows {} cols {}", field.order(), m.rows(), m.cols());
    for row in m.iter_rows() {
        let half = row.len() / 2;
        let mut parts: Vec<String> = Vec::new();
        for (i, x) in row.iter().enumerate() {
            if layout == Layout::Symplectic && i == half {
                parts.push("|".into());
            }
            parts.push(x.0.to_string());
        }
        let _ = writeln!(out, "{}", parts.join(" "));
    }
}

pub fn write_matrix(field: &Field, m: &MatrixFq, layout: Layout) -> String {
    let mut out = String::new();
    write_block(&mut out, "", field, m, layout);
    out.trim_start().to_string()
}

pub fn write_triple(t: &CodeTriple, advance: Option<ShareSet>) -> String {
    let mut out = format!("params {} {} {} {}\n", t.field.order(), t.n, t.k, t.s);
    for (name, c) in [("C_S", &t.c_s), ("C_R", &t.c_r), ("C_MAX", &t.c_max)] {
        write_block(&mut out, name, &t.field, c.basis(), Layout::Symplectic);
    }
    if let Some(b) = advance {
        let idx: Vec<String> = b.one_based().iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "advance {}", idx.join(" "));
    }
    out
}

pub fn parse_classical(text: &str) -> Result<ClassicalScheme> {
    let mut lines = Lines::new(text);
    let (ln, p) = header(&mut lines, "classical", 2)?;
    let (q, n) = (p[0], p[1]);
    if n == 0 || n > 64 {
        return err(ln, format!("n = {n} outside 1..=64"));
    }
    let field = Field::with_order(q as u32)?;
    let c1 = subspace_block(&mut lines, &field, "C_1", Layout::Plain, n)?;
    let c2 = subspace_block(&mut lines, &field, "C_2", Layout::Plain, n)?;
    trailing(&lines)?;
    Ok(ClassicalScheme::new(&field, c1, c2)?)
}

pub fn write_classical(s: &ClassicalScheme) -> String {
    let mut out = format!("classical {} {}\n", s.field.order(), s.n());
    write_block(&mut out, "C_1", &s.field, s.c1.basis(), Layout::Plain);
    write_block(&mut out, "C_2", &s.field, s.c2.basis(), Layout::Plain);
    out
}
