//! Text formats for matrices, witnesses, factor specs and invariant reports.
//!
//! Matrix:
//! ```text
//! field GF 5
//! 2 2
//! 0 1
//! 3 4
//! ```
//! A witness is a sequence of matrices, each preceded by
//! `factor <index> role=<role> nullity=<n> scalar=<c>` with 1-based indices.
//! Blank lines are ignored everywhere.

use std::fmt::Write as _;

use quadfact_core::{
    Error as CoreError, FactorSpec, FieldDescriptor, FieldScalar, InvariantReport, Matrix, Role,
    Witness, WitnessFactor,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error("{0}")]
    Spec(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with their 1-based line numbers.
struct Cursor<'a> {
    lines: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Cursor { lines: it.peekable() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.lines.next().ok_or_else(|| ParseError::Eof(format!("expected {what}")))
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        self.lines.peek().copied()
    }
}

/// `Q`, `GF <p>` or `GF<p>`.
pub fn parse_field(text: &str) -> Result<FieldDescriptor, String> {
    let t = text.trim();
    if t == "Q" {
        return Ok(FieldDescriptor::rationals());
    }
    let rest = t
        .strip_prefix("GF")
        .ok_or_else(|| format!("unknown field '{t}', expected Q or GF <p>"))?
        .trim();
    let p: u64 = rest
        .parse()
        .map_err(|_| format!("bad field modulus '{rest}'"))?;
    FieldDescriptor::prime(p).map_err(|e| e.to_string())
}

fn read_matrix(cur: &mut Cursor<'_>) -> Result<Matrix, ParseError> {
    let (ln, header) = cur.next("field line")?;
    let field_text = header
        .strip_prefix("field")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| syntax(ln, "expected 'field Q' or 'field GF <p>'"))?;
    let field = parse_field(field_text).map_err(|m| syntax(ln, m))?;

    let (ln, dims) = cur.next("dimension line")?;
    let parts: Vec<&str> = dims.split_whitespace().collect();
    let [r, c] = parts[..] else {
        return Err(syntax(ln, "expected '<rows> <cols>'"));
    };
    let rows: usize = r.parse().map_err(|_| syntax(ln, format!("bad row count '{r}'")))?;
    let cols: usize = c.parse().map_err(|_| syntax(ln, format!("bad column count '{c}'")))?;

    let mut m = Matrix::zeros(field, rows, cols);
    // rows of a zero-column matrix are blank and therefore not written
    let row_lines = if cols == 0 { 0 } else { rows };
    for i in 0..row_lines {
        let (ln, row) = cur.next(&format!("row {} of {rows}", i + 1))?;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(syntax(ln, format!("expected {cols} entries, found {}", tokens.len())));
        }
        for (j, tok) in tokens.iter().enumerate() {
            let x = field
                .parse_scalar(tok)
                .map_err(|e| syntax(ln, format!("entry {}: {e}", j + 1)))?;
            m.set(i, j, x);
        }
    }
    Ok(m)
}

fn expect_end(cur: &mut Cursor<'_>) -> Result<(), ParseError> {
    match cur.peek() {
        Some((ln, _)) => Err(syntax(ln, "unexpected trailing content")),
        None => Ok(()),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut cur = Cursor::new(text);
    let m = read_matrix(&mut cur)?;
    expect_end(&mut cur)?;
    Ok(m)
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}", m.field());
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        if m.cols() == 0 {
            break;
        }
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn parse_witness(text: &str) -> Result<Witness, ParseError> {
    let mut cur = Cursor::new(text);
    let mut factors = Vec::new();
    while let Some((ln, header)) = cur.peek() {
        cur.next("factor header")?;
        let mut words = header.split_whitespace();
        if words.next() != Some("factor") {
            return Err(syntax(ln, "expected 'factor <index> role=... nullity=... scalar=...'"));
        }
        let index = words.next().unwrap_or("");
        if index.parse::<usize>().ok() != Some(factors.len() + 1) {
            return Err(syntax(ln, format!("expected factor index {}", factors.len() + 1)));
        }
        let (mut role, mut nullity, mut scalar) = (None, None, None);
        for w in words {
            let (key, value) = w
                .split_once('=')
                .ok_or_else(|| syntax(ln, format!("expected key=value, found '{w}'")))?;
            let seen = match key {
                "role" => role
                    .replace(Role::parse(value).ok_or_else(|| syntax(ln, format!("unknown role '{value}'")))?)
                    .is_some(),
                "nullity" => nullity
                    .replace(value.parse::<usize>().map_err(|_| syntax(ln, format!("bad nullity '{value}'")))?)
                    .is_some(),
                "scalar" => scalar.replace(value).is_some(),
                _ => return Err(syntax(ln, format!("unknown key '{key}'"))),
            };
            if seen {
                return Err(syntax(ln, format!("duplicate key '{key}'")));
            }
        }
        let role = role.ok_or_else(|| syntax(ln, "missing role="))?;
        let nullity = nullity.ok_or_else(|| syntax(ln, "missing nullity="))?;
        let scalar = scalar.ok_or_else(|| syntax(ln, "missing scalar="))?;
        let matrix = read_matrix(&mut cur)?;
        let scalar = matrix
            .field()
            .parse_scalar(scalar)
            .map_err(|e| syntax(ln, format!("scalar: {e}")))?;
        factors.push(WitnessFactor {
            matrix,
            role,
            declared_nullity: nullity,
            scalar,
        });
    }
    Ok(Witness { factors })
}

pub fn write_witness(w: &Witness) -> String {
    let mut s = String::new();
    for (i, f) in w.factors.iter().enumerate() {
        let _ = writeln!(
            s,
            "factor {} role={} nullity={} scalar={}",
            i + 1,
            f.role,
            f.declared_nullity,
            f.scalar
        );
        s.push_str(&write_matrix(&f.matrix));
    }
    s
}

fn parse_list<T>(
    key: &str,
    value: &str,
    item: impl Fn(&str) -> Result<T, String>,
) -> Result<Vec<T>, ParseError> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|v| item(v).map_err(|m| ParseError::Spec(format!("{key}: {m}"))))
        .collect()
}

/// `idem=<n1,...> scalars=<c1,...> sqz=<m1[,m2]>`, any subset, separated
/// by whitespace.
pub fn parse_spec(text: &str, field: FieldDescriptor) -> Result<FactorSpec, ParseError> {
    let (mut idem, mut scalars, mut sqz) = (None, None, None);
    for token in text.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| ParseError::Spec(format!("expected key=value, found '{token}'")))?;
        let count = |v: &str| v.parse::<usize>().map_err(|_| format!("bad count '{v}'"));
        let seen = match key {
            "idem" => idem.replace(parse_list(key, value, count)?).is_some(),
            "sqz" => sqz.replace(parse_list(key, value, count)?).is_some(),
            "scalars" => scalars
                .replace(parse_list(key, value, |v| {
                    field.parse_scalar(v).map_err(|e| e.to_string())
                })?)
                .is_some(),
            _ => return Err(ParseError::Spec(format!("unknown spec key '{key}'"))),
        };
        if seen {
            return Err(ParseError::Spec(format!("duplicate spec key '{key}'")));
        }
    }
    Ok(FactorSpec::new(
        field,
        idem.unwrap_or_default(),
        scalars,
        sqz.unwrap_or_default(),
    )?)
}

pub fn write_spec(spec: &FactorSpec) -> String {
    let join = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut parts = Vec::new();
    if spec.k() > 0 {
        parts.push(format!("idem={}", join(spec.idem_nullities())));
    }
    if !spec.all_scalars_one() {
        let cs: Vec<String> = spec.scalars().iter().map(FieldScalar::to_string).collect();
        parts.push(format!("scalars={}", cs.join(",")));
    }
    if spec.l() > 0 {
        parts.push(format!("sqz={}", join(spec.sqz_nullities())));
    }
    if parts.is_empty() {
        // the empty product
        parts.push("idem=".to_string());
    }
    parts.join(" ")
}

/// Output renderer selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Human,
    Keyvalue,
}

/// Stable keys of the invariant report, in output order.
pub fn report_fields(r: &InvariantReport) -> [(&'static str, &'static str, usize); 6] {
    [
        ("n", "order n", r.n),
        ("rank", "rank r(G)", r.rank),
        ("nullity", "nullity n(G)", r.nullity),
        ("n0", "n0(G)", r.n0),
        ("dim_RcapN", "dim(R(G) cap N(G))", r.dim_cap),
        ("dim_RplusN", "dim(R(G) + N(G))", r.dim_sum),
    ]
}

pub fn render_report(r: &InvariantReport, format: OutputFormat) -> String {
    let fields = report_fields(r);
    let mut s = String::new();
    match format {
        OutputFormat::Keyvalue => {
            for (key, _, v) in fields {
                let _ = writeln!(s, "{key}={v}");
            }
        }
        OutputFormat::Human => {
            let width = fields.iter().map(|f| f.1.len()).max().unwrap_or(0);
            for (_, label, v) in fields {
                let _ = writeln!(s, "{label:<width$}  {v}");
            }
        }
    }
    s
}
