//! Line-based text formats for matroids and grid instances.
//!
//! Matroid documents:
//!
//! ```text
//! MATROID v1
//! NAME M(K4)
//! GROUND 6
//! LABELS 12 13 14 23 24 34        # optional, one token per element
//! TYPE GRAPHIC
//! VERTICES 4
//! EDGE 0 1
//! ...
//! ```
//!
//! `TYPE LINEAR` is followed by `DIM d` and `d` lines `ROW <m rationals>`
//! (rows of the matrix, one column per element; rationals are `a` or
//! `a/b`). `TYPE BASES` is followed by `RANK r` and `BASIS <r indices>`
//! lines.
//!
//! Grid-instance documents:
//!
//! ```text
//! GRIDINSTANCE v1
//! MATROID k4.matroid              # path relative to this file, or INLINE
//! ROWS 3
//! COLS 2
//! INDEPENDENCE REQUIRED
//! ROW 0: 0 5
//! ROW 1: 1 4
//! ROW 2: 2 3
//! ```
//!
//! `MATROID INLINE` embeds a matroid document on the following lines,
//! terminated by a line `END`.
//!
//! `#` starts a comment and tokens are whitespace separated. Serialisation
//! is canonical: sorted sets, single spaces, LF line endings.

use std::fmt::Write as _;
use std::str::FromStr;

use basisgrid_core::grid::{GridInstance, IndependenceMode};
use basisgrid_core::matroid::{BasesRep, GraphicRep, LinearRep, MatroidOracle, Representation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: basisgrid_core::Error,
    },
    #[error("cannot load matroid `{path}`: {message}")]
    Resolve { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, first_line: usize) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(move |(i, l)| (i + first_line, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines { inner: it.peekable() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.inner.next().ok_or_else(|| ParseError::Eof(format!("expected {what}")))
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner.peek().and_then(|(_, l)| l.split_whitespace().next())
    }

    /// Next line, which must start with `keyword`; returns the remaining tokens.
    fn expect(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let (n, line) = self.next(keyword)?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some(k) if k == keyword => Ok((n, toks.collect())),
            Some(k) => Err(syntax(n, format!("expected `{keyword}`, found `{k}`"))),
            None => Err(syntax(n, format!("expected `{keyword}`"))),
        }
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("`{tok}` is not a nonnegative integer")));
    }
    tok.parse().map_err(|_| syntax(line, format!("`{tok}` is too large")))
}

fn single<'a>(line: usize, keyword: &str, toks: &[&'a str]) -> Result<&'a str, ParseError> {
    match toks {
        [t] => Ok(t),
        _ => Err(syntax(line, format!("`{keyword}` takes exactly one value"))),
    }
}

/// Parses `a` or `a/b` with decimal integers, `b > 0`.
pub fn parse_rational(tok: &str) -> Result<BigRational, String> {
    let is_int = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (tok, None),
    };
    if !is_int(num, true) {
        return Err(format!("malformed rational `{tok}`"));
    }
    let numer = BigInt::from_str(num).map_err(|e| format!("malformed rational `{tok}`: {e}"))?;
    let denom = match den {
        None => BigInt::from(1),
        Some(b) if is_int(b, false) => BigInt::from_str(b).map_err(|e| format!("malformed rational `{tok}`: {e}"))?,
        Some(_) => return Err(format!("malformed rational `{tok}`")),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{tok}`"));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_matroid_lines(lines: &mut Lines<'_>, inline: bool) -> Result<MatroidOracle, ParseError> {
    let (n, toks) = lines.expect("MATROID")?;
    if toks != ["v1"] {
        return Err(syntax(n, "expected `MATROID v1`"));
    }
    let mut name = String::new();
    if lines.peek_keyword() == Some("NAME") {
        let (_, line) = lines.next("NAME")?;
        name = line["NAME".len()..].trim().to_string();
    }
    let (n, toks) = lines.expect("GROUND")?;
    let ground = parse_usize(n, single(n, "GROUND", &toks)?)?;
    let mut labels = None;
    if lines.peek_keyword() == Some("LABELS") {
        let (n, toks) = lines.expect("LABELS")?;
        if toks.len() != ground {
            return Err(syntax(n, format!("{} labels for {ground} elements", toks.len())));
        }
        labels = Some(toks.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }
    let (type_line, toks) = lines.expect("TYPE")?;
    let rep = match single(type_line, "TYPE", &toks)? {
        "LINEAR" => {
            let (n, toks) = lines.expect("DIM")?;
            let dim = parse_usize(n, single(n, "DIM", &toks)?)?;
            if dim == 0 {
                return Err(syntax(n, "DIM must be positive"));
            }
            let mut columns = vec![Vec::with_capacity(dim); ground];
            for _ in 0..dim {
                let (n, toks) = lines.expect("ROW")?;
                if toks.len() != ground {
                    return Err(syntax(n, format!("ROW has {} entries, expected {ground}", toks.len())));
                }
                for (col, tok) in columns.iter_mut().zip(&toks) {
                    col.push(parse_rational(tok).map_err(|m| syntax(n, m))?);
                }
            }
            let rep = LinearRep::new(dim, columns).map_err(|source| ParseError::Invalid { line: n, source })?;
            Representation::Linear(rep)
        }
        "GRAPHIC" => {
            let (n, toks) = lines.expect("VERTICES")?;
            let vertices = parse_usize(n, single(n, "VERTICES", &toks)?)?;
            if vertices == 0 {
                return Err(syntax(n, "VERTICES must be positive"));
            }
            let mut edges = Vec::with_capacity(ground);
            for _ in 0..ground {
                let (n, toks) = lines.expect("EDGE")?;
                let [u, w] = toks[..] else {
                    return Err(syntax(n, "EDGE takes two vertices"));
                };
                let (u, w) = (parse_usize(n, u)?, parse_usize(n, w)?);
                if u >= vertices || w >= vertices {
                    return Err(syntax(n, format!("vertex out of range 0..{vertices}")));
                }
                edges.push((u, w));
            }
            Representation::Graphic(GraphicRep::new(vertices, edges).expect("vertices checked"))
        }
        "BASES" => {
            let (n, toks) = lines.expect("RANK")?;
            let rank = parse_usize(n, single(n, "RANK", &toks)?)?;
            let mut family: Vec<Vec<usize>> = Vec::new();
            let mut seen = std::collections::BTreeMap::new();
            while lines.peek_keyword() == Some("BASIS") {
                let (n, toks) = lines.expect("BASIS")?;
                let mut b = toks.iter().map(|t| parse_usize(n, t)).collect::<Result<Vec<_>, _>>()?;
                if b.len() != rank {
                    return Err(syntax(n, format!("basis has {} elements, rank is {rank}", b.len())));
                }
                if let Some(&e) = b.iter().find(|&&e| e >= ground) {
                    return Err(syntax(n, format!("element {e} out of range 0..{ground}")));
                }
                b.sort_unstable();
                if b.windows(2).any(|w| w[0] == w[1]) {
                    return Err(syntax(n, "basis repeats an element"));
                }
                if let Some(first) = seen.insert(b.clone(), n) {
                    return Err(syntax(n, format!("duplicate basis (first given on line {first})")));
                }
                family.push(b);
            }
            if family.is_empty() {
                return Err(syntax(n, "BASES matroid needs at least one BASIS line"));
            }
            let rep = BasesRep::new(rank, ground, family).map_err(|source| ParseError::Invalid { line: n, source })?;
            Representation::Bases(rep)
        }
        other => return Err(syntax(type_line, format!("unknown matroid type `{other}`"))),
    };
    let mut oracle =
        MatroidOracle::new(ground, rep).map_err(|source| ParseError::Invalid { line: type_line, source })?;
    oracle = oracle.with_name(name);
    if let Some(l) = labels {
        oracle = oracle.with_labels(l).map_err(|source| ParseError::Invalid { line: type_line, source })?;
    }
    if inline {
        let (n, toks) = lines.expect("END")?;
        if !toks.is_empty() {
            return Err(syntax(n, "`END` takes no arguments"));
        }
    } else if let Some((n, l)) = lines.inner.next() {
        return Err(syntax(n, format!("unexpected trailing line `{l}`")));
    }
    Ok(oracle)
}

pub fn parse_matroid(text: &str) -> Result<MatroidOracle, ParseError> {
    parse_matroid_lines(&mut Lines::new(text, 1), false)
}

pub fn serialize_matroid(m: &MatroidOracle) -> String {
    let mut out = String::from("MATROID v1\n");
    if !m.name().is_empty() {
        writeln!(out, "NAME {}", m.name()).unwrap();
    }
    writeln!(out, "GROUND {}", m.size()).unwrap();
    if let Some(labels) = m.ground().labels() {
        // Labels that would not survive tokenisation are dropped.
        if labels.iter().all(|l| !l.is_empty() && !l.contains(char::is_whitespace) && !l.contains('#')) {
            writeln!(out, "LABELS {}", labels.join(" ")).unwrap();
        }
    }
    match m.representation() {
        Representation::Linear(l) => {
            writeln!(out, "TYPE LINEAR\nDIM {}", l.dim()).unwrap();
            for r in 0..l.dim() {
                let row: Vec<String> = l.columns().iter().map(|c| c[r].to_string()).collect();
                if row.is_empty() {
                    out.push_str("ROW\n");
                } else {
                    writeln!(out, "ROW {}", row.join(" ")).unwrap();
                }
            }
        }
        Representation::Graphic(g) => {
            writeln!(out, "TYPE GRAPHIC\nVERTICES {}", g.vertices()).unwrap();
            for &(u, w) in g.edges() {
                writeln!(out, "EDGE {u} {w}").unwrap();
            }
        }
        Representation::Bases(b) => {
            writeln!(out, "TYPE BASES\nRANK {}", b.rank()).unwrap();
            for basis in b.bases() {
                out.push_str("BASIS");
                for e in basis {
                    write!(out, " {e}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Parses a grid instance; `resolve` loads the matroid named on the
/// `MATROID` line unless it is `INLINE`.
pub fn parse_grid_instance<F>(text: &str, mut resolve: F) -> Result<GridInstance, ParseError>
where
    F: FnMut(&str) -> Result<MatroidOracle, ParseError>,
{
    let mut lines = Lines::new(text, 1);
    let (n, toks) = lines.expect("GRIDINSTANCE")?;
    if toks != ["v1"] {
        return Err(syntax(n, "expected `GRIDINSTANCE v1`"));
    }
    let (n, toks) = lines.expect("MATROID")?;
    let target = single(n, "MATROID", &toks)?;
    let matroid = if target == "INLINE" { parse_matroid_lines(&mut lines, true)? } else { resolve(target)? };
    let (n, toks) = lines.expect("ROWS")?;
    let rows = parse_usize(n, single(n, "ROWS", &toks)?)?;
    let (cols_line, toks) = lines.expect("COLS")?;
    let cols = parse_usize(cols_line, single(cols_line, "COLS", &toks)?)?;
    if rows == 0 || cols == 0 {
        return Err(syntax(cols_line, "ROWS and COLS must be positive"));
    }
    if matroid.size() != rows * cols {
        return Err(syntax(
            cols_line,
            format!("matroid has {} elements but ROWS x COLS = {}", matroid.size(), rows * cols),
        ));
    }
    let (n, toks) = lines.expect("INDEPENDENCE")?;
    let mode = match single(n, "INDEPENDENCE", &toks)? {
        "REQUIRED" => IndependenceMode::Required,
        "NOT_REQUIRED" => IndependenceMode::NotRequired,
        other => return Err(syntax(n, format!("unknown independence mode `{other}`"))),
    };
    let mut sets = Vec::with_capacity(rows);
    for i in 0..rows {
        let (n, line) = lines.next("ROW")?;
        let rest = line
            .strip_prefix("ROW")
            .ok_or_else(|| syntax(n, "expected `ROW <i>: ...`"))?;
        let (idx, elems) = rest.split_once(':').ok_or_else(|| syntax(n, "expected `:` after the row index"))?;
        if parse_usize(n, idx.trim())? != i {
            return Err(syntax(n, format!("expected row {i}")));
        }
        let set = elems
            .split_whitespace()
            .map(|t| parse_usize(n, t))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&e) = set.iter().find(|&&e| e >= matroid.size()) {
            return Err(syntax(n, format!("element {e} out of range 0..{}", matroid.size())));
        }
        let mut sorted = set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(syntax(n, "row repeats an element"));
        }
        sets.push(set);
    }
    if let Some((n, l)) = lines.inner.next() {
        return Err(syntax(n, format!("unexpected trailing line `{l}`")));
    }
    GridInstance::new(Arc::new(matroid), rows, cols, sets, mode)
        .map_err(|source| ParseError::Invalid { line: cols_line, source })
}

/// Serialises with the matroid embedded (`MATROID INLINE`), or referencing
/// `matroid_path` when given.
pub fn serialize_grid_instance(inst: &GridInstance, matroid_path: Option<&str>) -> String {
    let mut out = String::from("GRIDINSTANCE v1\n");
    match matroid_path {
        Some(p) => writeln!(out, "MATROID {p}").unwrap(),
        None => {
            out.push_str("MATROID INLINE\n");
            out.push_str(&serialize_matroid(inst.matroid()));
            out.push_str("END\n");
        }
    }
    writeln!(out, "ROWS {}\nCOLS {}", inst.rows(), inst.cols()).unwrap();
    let mode = match inst.mode() {
        IndependenceMode::Required => "REQUIRED",
        IndependenceMode::NotRequired => "NOT_REQUIRED",
    };
    writeln!(out, "INDEPENDENCE {mode}").unwrap();
    for (i, set) in inst.row_sets().iter().enumerate() {
        write!(out, "ROW {i}:").unwrap();
        for e in set {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a grid instance that must not reference external files.
pub fn parse_inline_grid_instance(text: &str) -> Result<GridInstance, ParseError> {
    parse_grid_instance(text, |path| {
        Err(ParseError::Resolve { path: path.into(), message: "no base directory for relative paths".into() })
    })
}
