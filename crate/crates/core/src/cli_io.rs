//! Text formats and the batch command-line front end.
//!
//! H- and V-files follow the common polyhedral text layout:
//!
//! ```text
//! * optional comment lines
//! H-representation
//! begin
//! 3 3 rational
//! 0 1 0
//! 0 0 1
//! -1 1 1
//! end
//! ```
//!
//! An H row `b c_1 ... c_n` stands for `b + c^t x >= 0`, i.e. `-c^t x <= b`.
//! A V row `1 x_1 ... x_n` is a vertex and `0 x_1 ... x_n` a ray. A V-file
//! with no rows is the empty set; one with rays but no vertex has the origin
//! as its polytope part.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::conversion::{compose, decompose, h_equal, minkowski_h_to_v, weyl_v_to_h};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Matrix, Rational, Vector};
use crate::farkas::{self, FarkasOutcome};
use crate::fourier_motzkin::{self, ExtremumStatus, Sense};
use crate::geometry::{h_contains, vpoly_contains, HPolyhedron, HalfSpace, VPolyhedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    HRep,
    VRep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    H(HPolyhedron),
    V(VPolyhedron),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    /// Leading `*` lines, verbatim.
    pub comments: Vec<String>,
    pub payload: Payload,
}

impl Document {
    pub fn h(p: HPolyhedron) -> Self {
        Document {
            comments: Vec::new(),
            payload: Payload::H(p),
        }
    }

    pub fn v(v: VPolyhedron) -> Self {
        Document {
            comments: Vec::new(),
            payload: Payload::V(v),
        }
    }

    pub fn kind(&self) -> DocumentKind {
        match self.payload {
            Payload::H(_) => DocumentKind::HRep,
            Payload::V(_) => DocumentKind::VRep,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.payload {
            Payload::H(p) => p.dim(),
            Payload::V(v) => v.dim(),
        }
    }

    /// The payload as constraints; generator documents are composed.
    pub fn to_h(&self) -> HPolyhedron {
        match &self.payload {
            Payload::H(p) => p.clone(),
            Payload::V(v) => compose(v),
        }
    }
}

/// Parses an exact rational literal: `p` or `p/q`.
pub fn parse_rational(token: &str) -> Option<std::result::Result<Rational, &'static str>> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Some(Err("zero denominator"));
    }
    Some(Ok(Rational::new(num, den)))
}

fn rational_at(token: &str, line: usize) -> Result<Rational> {
    match parse_rational(token) {
        Some(Ok(r)) => Ok(r),
        Some(Err(msg)) => Err(Error::parse(line, format!("{msg} in `{token}`"))),
        None => Err(Error::parse(
            line,
            format!("`{token}` is not a rational number"),
        )),
    }
}

fn row_at(tokens: &[&str], line: usize) -> Result<Vec<Rational>> {
    tokens.iter().map(|t| rational_at(t, line)).collect()
}

/// Numbered lines, skipping blanks.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse(text: &str) -> Result<Document> {
    let eof = text.lines().count().max(1);
    let mut lines = content_lines(text).peekable();
    let mut comments = Vec::new();
    let kind = loop {
        let Some((no, line)) = lines.next() else {
            return Err(Error::parse(
                eof,
                "missing `H-representation` or `V-representation`",
            ));
        };
        if line.starts_with('*') {
            comments.push(line.to_string());
            continue;
        }
        break match line {
            "H-representation" => DocumentKind::HRep,
            "V-representation" => DocumentKind::VRep,
            other => {
                return Err(Error::parse(
                    no,
                    format!("expected a representation header, found `{other}`"),
                ))
            }
        };
    };

    loop {
        let Some((no, line)) = lines.next() else {
            return Err(Error::parse(eof, "missing `begin`"));
        };
        let keyword = line.split_whitespace().next().unwrap_or("");
        match keyword {
            "begin" => break,
            _ if line.starts_with('*') => continue,
            "strict" | "strict_inequality" => {
                return Err(Error::parse(
                    no,
                    "strict inequalities are not accepted in input",
                ))
            }
            other => {
                return Err(Error::parse(
                    no,
                    format!("unexpected `{other}` before `begin`"),
                ))
            }
        }
    }

    let (size_no, size_line) = lines
        .next()
        .ok_or_else(|| Error::parse(eof, "missing size line after `begin`"))?;
    let size: Vec<&str> = size_line.split_whitespace().collect();
    if size.len() != 3 {
        return Err(Error::parse(
            size_no,
            "size line must read `rows columns rational`",
        ));
    }
    let rows: usize = size[0]
        .parse()
        .map_err(|_| Error::parse(size_no, format!("bad row count `{}`", size[0])))?;
    let width: usize = size[1]
        .parse()
        .map_err(|_| Error::parse(size_no, format!("bad column count `{}`", size[1])))?;
    match size[2] {
        "rational" | "integer" => {}
        "real" => return Err(Error::parse(size_no, "number type `real` is not supported")),
        other => {
            return Err(Error::parse(
                size_no,
                format!("unknown number type `{other}`"),
            ))
        }
    }
    if width == 0 {
        return Err(Error::parse(size_no, "column count must be at least 1"));
    }
    let dim = width - 1;

    let mut data: Vec<(usize, Vec<Rational>)> = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(eof, format!("expected {rows} rows")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens == ["end"] {
            return Err(Error::parse(
                no,
                format!("expected {rows} rows, found {}", data.len()),
            ));
        }
        if tokens.len() != width {
            return Err(Error::parse(
                no,
                format!("row has {} entries, expected {width}", tokens.len()),
            ));
        }
        data.push((no, row_at(&tokens, no)?));
    }

    match lines.next() {
        Some((_, "end")) => {}
        Some((no, other)) => {
            return Err(Error::parse(no, format!("expected `end`, found `{other}`")))
        }
        None => return Err(Error::parse(eof, "missing `end`")),
    }
    if let Some((no, other)) = lines.find(|(_, l)| !l.starts_with('*')) {
        return Err(Error::parse(
            no,
            format!("unexpected `{other}` after `end`"),
        ));
    }

    let payload = match kind {
        DocumentKind::HRep => {
            let rows = data
                .into_iter()
                .map(|(_, row)| {
                    let normal: Vector = row[1..].iter().map(|c| -c).collect();
                    HalfSpace::le(normal, row[0].clone())
                })
                .collect();
            Payload::H(HPolyhedron::from_rows(dim, rows)?)
        }
        DocumentKind::VRep => {
            if data.is_empty() {
                Payload::V(VPolyhedron::empty(dim))
            } else {
                let mut vertices = Vec::new();
                let mut rays = Vec::new();
                for (no, row) in data {
                    let point: Vector = row[1..].iter().cloned().collect();
                    let flag = &row[0];
                    if flag.is_zero() {
                        rays.push(point);
                    } else if *flag == Rational::from_integer(1.into()) {
                        vertices.push(point);
                    } else {
                        return Err(Error::parse(
                            no,
                            "generator flag must be 0 (ray) or 1 (vertex)",
                        ));
                    }
                }
                Payload::V(VPolyhedron::from_generators(dim, vertices, rays)?)
            }
        }
    };
    Ok(Document { comments, payload })
}

fn push_row<'a>(out: &mut String, entries: impl IntoIterator<Item = &'a Rational>) {
    let mut first = true;
    for e in entries {
        if !first {
            out.push(' ');
        }
        out.push_str(&format_rational(e));
        first = false;
    }
    out.push('\n');
}

/// Canonical text for a document: reduced rationals, single spaces, stored
/// row order, trailing newline. An empty vertex list is written as the origin.
pub fn emit(doc: &Document) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        out.push_str(c);
        out.push('\n');
    }
    let dim = doc.ambient_dim();
    match &doc.payload {
        Payload::H(p) => {
            out.push_str("H-representation\nbegin\n");
            out.push_str(&format!("{} {} rational\n", p.num_rows(), dim + 1));
            for row in p.rows() {
                let negated: Vec<Rational> = row.normal.iter().map(|a| -a).collect();
                push_row(&mut out, std::iter::once(&row.offset).chain(negated.iter()));
            }
        }
        Payload::V(v) => {
            out.push_str("V-representation\nbegin\n");
            if v.is_empty() {
                out.push_str(&format!("0 {} rational\n", dim + 1));
            } else {
                let vertices = v.polytope().effective_vertices();
                let rays = v.cone().rays();
                out.push_str(&format!(
                    "{} {} rational\n",
                    vertices.len() + rays.len(),
                    dim + 1
                ));
                let one = Rational::from_integer(1.into());
                let zero = Rational::zero();
                for q in &vertices {
                    push_row(&mut out, std::iter::once(&one).chain(q.iter()));
                }
                for r in rays {
                    push_row(&mut out, std::iter::once(&zero).chain(r.iter()));
                }
            }
        }
    }
    out.push_str("end\n");
    out
}

/// Matrix file: comment lines `*`, then `rows cols`, then the rows.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let eof = text.lines().count().max(1);
    let mut lines = content_lines(text).filter(|(_, l)| !l.starts_with('*'));
    let (no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(eof, "missing `rows cols` line"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(no, "header must be `rows cols`"))?;
    let [rows, cols] = dims[..] else {
        return Err(Error::parse(no, "header must be `rows cols`"));
    };
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(eof, format!("expected {rows} matrix rows")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(Error::parse(
                no,
                format!("row has {} entries, expected {cols}", tokens.len()),
            ));
        }
        data.extend(row_at(&tokens, no)?);
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, "trailing content after matrix rows"));
    }
    Matrix::new(rows, cols, data)
}

/// Vector file: comment lines `*`, then the dimension, then the entries.
pub fn parse_vector(text: &str) -> Result<Vector> {
    let eof = text.lines().count().max(1);
    let mut tokens = content_lines(text)
        .filter(|(_, l)| !l.starts_with('*'))
        .flat_map(|(no, l)| l.split_whitespace().map(move |t| (no, t)));
    let (no, first) = tokens
        .next()
        .ok_or_else(|| Error::parse(eof, "missing dimension"))?;
    let dim: usize = first
        .parse()
        .map_err(|_| Error::parse(no, format!("bad dimension `{first}`")))?;
    let entries: Vec<Rational> = tokens
        .map(|(no, t)| rational_at(t, no))
        .collect::<Result<_>>()?;
    if entries.len() != dim {
        return Err(Error::parse(
            no,
            format!("expected {dim} entries, found {}", entries.len()),
        ));
    }
    Ok(Vector::new(entries))
}

/// Parses a whitespace-separated list of rationals given on the command line.
pub fn parse_inline_vector(text: &str) -> Result<Vector> {
    text.split_whitespace()
        .map(|t| match parse_rational(t) {
            Some(Ok(r)) => Ok(r),
            _ => Err(Error::Usage(format!(
                "`{t}` is not a valid rational in `{text}`"
            ))),
        })
        .collect::<Result<Vec<_>>>()
        .map(Vector::new)
}

fn format_vector(v: &Vector) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Parser)]
#[command(
    name = "polyfm",
    about = "Exact polyhedral computations on H- and V-files"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SenseArg {
    Max,
    Min,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Project an H-file onto its last `--keep` coordinates.
    Project {
        file: PathBuf,
        #[arg(long)]
        keep: usize,
    },
    /// Decide emptiness of an H-file; exit 1 when empty.
    Feasible { file: PathBuf },
    /// Maximize or minimize a linear objective over an H-file.
    Extremum {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        objective: String,
        #[arg(long, value_enum)]
        sense: SenseArg,
    },
    /// Farkas alternative for a matrix file W and a vector file b.
    Farkas { matrix: PathBuf, rhs: PathBuf },
    /// Convert a cone between H-form (`A x <= 0`) and V-form (rays).
    Convert { file: PathBuf },
    /// Write an H-file as polytope vertices plus cone rays.
    Decompose { file: PathBuf },
    /// Write a V-file as an H-file.
    Compose { file: PathBuf },
    /// Membership of a point; exit 1 when outside.
    Contains {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Set equality of two H- or V-files; exit 1 when different.
    Equal { left: PathBuf, right: PathBuf },
}

/// Result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_document(path: &Path) -> Result<Document> {
    parse(&read(path)?)
}

fn read_h(path: &Path) -> Result<HPolyhedron> {
    match read_document(path)?.payload {
        Payload::H(p) => Ok(p),
        Payload::V(_) => Err(Error::Usage(format!(
            "{}: expected an H-representation",
            path.display()
        ))),
    }
}

/// Text output plus whether a predicate came out negative.
struct Answer {
    text: String,
    negative: bool,
}

impl Answer {
    fn positive(text: String) -> Self {
        Answer {
            text,
            negative: false,
        }
    }

    fn predicate(holds: bool) -> Self {
        Answer {
            text: format!("{holds}\n"),
            negative: !holds,
        }
    }
}

fn execute(command: &Command) -> Result<Answer> {
    match command {
        Command::Project { file, keep } => {
            let p = read_h(file)?;
            let (q, _) = fourier_motzkin::project(&p, *keep)?;
            Ok(Answer::positive(emit(&Document::h(q))))
        }
        Command::Feasible { file } => {
            let p = read_h(file)?;
            Ok(match fourier_motzkin::witness(&p) {
                Some(x) => Answer::positive(format!("FEASIBLE\nwitness {}\n", format_vector(&x))),
                None => Answer {
                    text: "INFEASIBLE\n".to_string(),
                    negative: true,
                },
            })
        }
        Command::Extremum {
            file,
            objective,
            sense,
        } => {
            let p = read_h(file)?;
            let c = parse_inline_vector(objective)?;
            let sense = match sense {
                SenseArg::Max => Sense::Max,
                SenseArg::Min => Sense::Min,
            };
            let r = fourier_motzkin::extremum(&p, &c, sense)?;
            let text = match r.status {
                ExtremumStatus::Infeasible => "INFEASIBLE\n".to_string(),
                ExtremumStatus::Unbounded => "UNBOUNDED\n".to_string(),
                ExtremumStatus::Finite => format!(
                    "FINITE\nvalue {}\nwitness {}\n",
                    format_rational(r.value.as_ref().expect("finite result has a value")),
                    format_vector(r.witness.as_ref().expect("finite result has a witness"))
                ),
            };
            Ok(Answer::positive(text))
        }
        Command::Farkas { matrix, rhs } => {
            let w = parse_matrix(&read(matrix)?)?;
            let b = parse_vector(&read(rhs)?)?;
            let text = match farkas::decide(&w, &b)? {
                FarkasOutcome::Solution(y) => format!("SOLUTION\ny {}\n", format_vector(&y)),
                FarkasOutcome::Separator(v) => format!("SEPARATOR\nv {}\n", format_vector(&v)),
            };
            Ok(Answer::positive(text))
        }
        Command::Convert { file } => {
            let doc = read_document(file)?;
            let out = match &doc.payload {
                Payload::H(p) => {
                    let rays = minkowski_h_to_v(p)?;
                    Document::v(VPolyhedron::from_generators(
                        p.dim(),
                        vec![],
                        rays.rays().to_vec(),
                    )?)
                }
                Payload::V(v) => {
                    if v.is_empty() || v.polytope().vertices().iter().any(|q| !q.is_zero()) {
                        return Err(Error::Usage(format!(
                            "{}: convert expects a cone (only the origin as vertex)",
                            file.display()
                        )));
                    }
                    Document::h(weyl_v_to_h(v.cone()))
                }
            };
            Ok(Answer::positive(emit(&out)))
        }
        Command::Decompose { file } => {
            let p = read_h(file)?;
            Ok(Answer::positive(emit(&Document::v(decompose(&p)?))))
        }
        Command::Compose { file } => match read_document(file)?.payload {
            Payload::V(v) => Ok(Answer::positive(emit(&Document::h(compose(&v))))),
            Payload::H(_) => Err(Error::Usage(format!(
                "{}: expected a V-representation",
                file.display()
            ))),
        },
        Command::Contains { file, point } => {
            let x = parse_inline_vector(point)?;
            let inside = match read_document(file)?.payload {
                Payload::H(p) => h_contains(&p, &x)?,
                Payload::V(v) => vpoly_contains(&v, &x)?,
            };
            Ok(Answer::predicate(inside))
        }
        Command::Equal { left, right } => {
            let l = read_document(left)?.to_h();
            let r = read_document(right)?.to_h();
            Ok(Answer::predicate(h_equal(&l, &r)?))
        }
    }
}

/// Runs the CLI on `args` (including the program name).
///
/// Exit status 0 on success, 1 when a predicate is negative, 2 on usage,
/// parse, or I/O errors.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if status == 0 {
                Invocation {
                    status,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Invocation {
                    status,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let answer = match execute(&cli.command) {
        Ok(answer) => answer,
        Err(e) => {
            return Invocation {
                status: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let status = if answer.negative { 1 } else { 0 };
    match &cli.out {
        Some(path) => match fs::write(path, &answer.text) {
            Ok(()) => Invocation {
                status,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(source) => Invocation {
                status: 2,
                stdout: String::new(),
                stderr: format!(
                    "error: {}\n",
                    Error::Io {
                        path: path.clone(),
                        source
                    }
                ),
            },
        },
        None => Invocation {
            status,
            stdout: answer.text,
            stderr: String::new(),
        },
    }
}
