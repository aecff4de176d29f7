//! Code and isomorphism files.
//!
//! ```text
//! # comment
//! q 4 poly 1 1 1
//! n 4
//! k 2
//! 1 0 1 0
//! 0 1 0 1
//! ```
//!
//! Headers `q`, `n` and `k` come first, in any order, each exactly once.
//! `poly c0 c1 ... ce` gives a monic irreducible modulus, lowest coefficient
//! first, and is only allowed for extension fields. Then `k` rows of `n`
//! element codes follow. `#` starts a comment anywhere on a line. An
//! isomorphism file is two code blocks separated by a line holding `---`.

use std::fmt::Write as _;

use thiserror::Error;

use pairweight::gf::prime_power;
use pairweight::{FieldSpec, FqMatrix, IsoPair, LinearCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Code { line: usize, source: pairweight::Error },
    #[error("{0}")]
    Io(String),
}

fn syntax(line: usize, message: impl Into<String>) -> InputError {
    InputError::Syntax { line, message: message.into() }
}

struct Header {
    q: Option<(u32, usize)>,
    poly: Option<Vec<u32>>,
    n: Option<(usize, usize)>,
    k: Option<(usize, usize)>,
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, InputError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing value for {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("{what}: expected a non-negative integer, got `{tok}`")))
}

pub fn parse_code_file(text: &str) -> Result<LinearCode, InputError> {
    parse_block(text.lines().enumerate().map(|(i, l)| (i + 1, l)), text.lines().count().max(1))
}

/// Parses numbered lines; `last` is reported when rows are missing.
fn parse_block<'a>(lines: impl Iterator<Item = (usize, &'a str)>, last: usize) -> Result<LinearCode, InputError> {
    let mut h = Header { q: None, poly: None, n: None, k: None };
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut first_row_line = None;
    let mut last_line = last;
    for (ln, raw) in lines {
        last_line = ln;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().expect("non-empty");
        match head {
            "q" | "n" | "k" if !rows.is_empty() => {
                return Err(syntax(ln, format!("header `{head}` after matrix rows")));
            }
            "q" => {
                if h.q.is_some() {
                    return Err(syntax(ln, "duplicate `q` header"));
                }
                let q: u32 = number(ln, toks.next(), "q")?;
                match toks.next() {
                    None => {}
                    Some("poly") => {
                        let coeffs = toks.map(|t| number(ln, Some(t), "poly coefficient")).collect::<Result<Vec<u32>, _>>()?;
                        if coeffs.is_empty() {
                            return Err(syntax(ln, "`poly` needs coefficients"));
                        }
                        h.poly = Some(coeffs);
                    }
                    Some(t) => return Err(syntax(ln, format!("unexpected `{t}` after q"))),
                }
                h.q = Some((q, ln));
            }
            "n" | "k" => {
                let v: usize = number(ln, toks.next(), head)?;
                if let Some(t) = toks.next() {
                    return Err(syntax(ln, format!("unexpected `{t}` after {head}")));
                }
                let slot = if head == "n" { &mut h.n } else { &mut h.k };
                if slot.is_some() {
                    return Err(syntax(ln, format!("duplicate `{head}` header")));
                }
                *slot = Some((v, ln));
            }
            _ => {
                let (Some((q, _)), Some((n, _)), Some((k, _))) = (h.q, h.n, h.k) else {
                    return Err(syntax(ln, "matrix row before the q, n and k headers"));
                };
                if rows.len() == k {
                    return Err(syntax(ln, format!("more than k = {k} rows")));
                }
                let row = content
                    .split_whitespace()
                    .map(|t| {
                        let v: i64 = t.parse().map_err(|_| syntax(ln, format!("expected an integer, got `{t}`")))?;
                        if v < 0 || v >= q as i64 {
                            return Err(syntax(ln, format!("entry {v} not in [0, {q})")));
                        }
                        Ok(v as u32)
                    })
                    .collect::<Result<Vec<u32>, _>>()?;
                if row.len() != n {
                    return Err(syntax(ln, format!("row has {} entries, expected n = {n}", row.len())));
                }
                first_row_line.get_or_insert(ln);
                rows.push(row);
            }
        }
    }

    let (q, q_line) = h.q.ok_or_else(|| syntax(last_line, "missing `q` header"))?;
    let (n, n_line) = h.n.ok_or_else(|| syntax(last_line, "missing `n` header"))?;
    let (k, k_line) = h.k.ok_or_else(|| syntax(last_line, "missing `k` header"))?;
    let (p, e) = prime_power(q).ok_or_else(|| syntax(q_line, format!("{q} is not a prime power")))?;
    if e == 1 && h.poly.is_some() {
        return Err(syntax(q_line, "`poly` is only allowed for extension fields"));
    }
    let spec = FieldSpec::new(p, e, h.poly.as_deref()).map_err(|source| InputError::Code { line: q_line, source })?;
    if n < 2 {
        return Err(syntax(n_line, format!("n = {n}, need n >= 2")));
    }
    if k == 0 || k > n {
        return Err(syntax(k_line, format!("k = {k}, need 1 <= k <= n")));
    }
    if rows.len() < k {
        return Err(syntax(last_line, format!("expected {k} rows, found {}", rows.len())));
    }
    let codes: Vec<u32> = rows.concat();
    let line = first_row_line.expect("k >= 1 rows");
    let g = FqMatrix::from_codes(&spec, k, n, &codes).map_err(|source| InputError::Code { line, source })?;
    LinearCode::new(spec, g).map_err(|source| InputError::Code { line, source })
}

pub fn parse_iso_file(text: &str) -> Result<IsoPair, InputError> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let seps: Vec<usize> = lines.iter().filter(|(_, l)| l.trim() == "---").map(|(n, _)| *n).collect();
    let sep = match seps.as_slice() {
        [s] => *s,
        [] => return Err(syntax(lines.len().max(1), "missing `---` separator")),
        [_, s, ..] => return Err(syntax(*s, "more than one `---` separator")),
    };
    let source = parse_block(lines[..sep - 1].iter().copied(), sep)?;
    let target = parse_block(lines[sep..].iter().copied(), lines.len())?;
    IsoPair::new(source, target).map_err(|source| InputError::Code { line: sep, source })
}

/// Renders a code in the file format, with optional leading comment lines.
pub fn render_code_file(code: &LinearCode, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let spec = code.spec();
    if spec.e() > 1 {
        let poly: Vec<String> = spec.modulus().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "q {} poly {}", spec.q(), poly.join(" "));
    } else {
        let _ = writeln!(out, "q {}", spec.q());
    }
    let _ = writeln!(out, "n {}\nk {}", code.n(), code.k());
    for i in 0..code.k() {
        let row: Vec<String> = code.row(i).0.iter().map(|x| x.0.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
