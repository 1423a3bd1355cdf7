//! Plain-text formats for fields, matrices, codes, keys and ciphertexts.
//!
//! Every parse error carries the 1-based line number it refers to. Blank
//! lines are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::code::LinearCode;
use crate::crypto::{Ciphertext, PublicKey, SecretKey};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::grs::GrsSpec;
use crate::hermitian::{HermitianCurve, HermitianSpec};
use crate::matrix::Matrix;
use crate::spec::CodeSpec;

pub const PUBLIC_KEY_HEADER: &str = "MCSUB-PUB v1";
pub const SECRET_KEY_HEADER: &str = "MCSUB-SEC v1";

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0, last: 0 }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.lines.get(self.pos) {
            Some(&(n, l)) => {
                self.pos += 1;
                self.last = n;
                Ok((n, l))
            }
            None => Err(self.err(self.last + 1, format!("unexpected end of input, expected {}", what))),
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|&(_, l)| l)
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(&(n, _)) => Err(self.err(n, "trailing content")),
            None => Ok(()),
        }
    }

    fn numbers<T: std::str::FromStr>(&mut self, what: &str, count: Option<usize>) -> Result<(usize, Vec<T>)> {
        let (n, line) = self.next(what)?;
        let vals = parse_numbers(n, line, what)?;
        if let Some(c) = count {
            if vals.len() != c {
                return Err(self.err(n, format!("{}: expected {} values, got {}", what, c, vals.len())));
            }
        }
        Ok((n, vals))
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next(key)?;
        let rest = line
            .strip_prefix(key)
            .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
            .ok_or_else(|| self.err(n, format!("expected `{}`", key)))?;
        Ok((n, rest.trim()))
    }

    fn field(&mut self) -> Result<Arc<Field>> {
        let (n, line) = self.next("field line")?;
        parse_field_line(line).map_err(|e| match e {
            Error::Parse { msg, .. } => self.err(n, msg),
            other => self.err(n, other.to_string()),
        })
    }

    fn row(&mut self, field: &Field, len: usize, what: &str) -> Result<Vec<Elem>> {
        let (n, vals) = self.numbers::<u32>(what, Some(len))?;
        vals.into_iter()
            .map(|v| field.check(v).map_err(|e| self.err(n, e.to_string())))
            .collect()
    }

    fn rows(&mut self, field: &Arc<Field>, rows: usize, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            data.extend(self.row(field, cols, "matrix row")?);
        }
        Matrix::from_vec(field, rows, cols, data)
    }

    fn matrix(&mut self, field: &Arc<Field>) -> Result<Matrix> {
        let (_, dims) = self.numbers::<usize>("matrix header `rows cols`", Some(2))?;
        self.rows(field, dims[0], dims[1])
    }
}

fn parse_numbers<T: std::str::FromStr>(line_no: usize, line: &str, what: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("{}: `{}` is not a valid number", what, tok),
            })
        })
        .collect()
}

/// Parses `GF <p> <m> <c0> ... <cm>`.
pub fn parse_field_line(line: &str) -> Result<Arc<Field>> {
    let rest = line
        .trim()
        .strip_prefix("GF")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::Parse { line: 1, msg: "expected `GF <p> <m> <c0> ... <cm>`".into() })?;
    let nums: Vec<u32> = parse_numbers(1, rest, "field line")?;
    if nums.len() < 3 {
        return Err(Error::Parse { line: 1, msg: "field line needs p, m and the modulus".into() });
    }
    Field::with_modulus(nums[0], nums[1], nums[2..].to_vec())
}

pub fn field_line(field: &Field) -> String {
    field.to_string()
}

fn push_row(out: &mut String, row: &[Elem]) {
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{}", x).unwrap();
    }
    out.push('\n');
}

fn push_rows(out: &mut String, m: &Matrix) {
    for row in m.row_iter() {
        push_row(out, row);
    }
}

fn push_matrix(out: &mut String, m: &Matrix) {
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    push_rows(out, m);
}

/// Matrix body only: `rows cols` header and rows.
pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    push_matrix(&mut out, m);
    out
}

pub fn parse_matrix(field: &Arc<Field>, text: &str) -> Result<Matrix> {
    let mut lines = Lines::new(text);
    let m = lines.matrix(field)?;
    lines.finish()?;
    Ok(m)
}

/// Field line plus matrix.
pub fn write_field_matrix(m: &Matrix) -> String {
    let mut out = field_line(m.field());
    out.push('\n');
    push_matrix(&mut out, m);
    out
}

pub fn parse_field_matrix(text: &str) -> Result<Matrix> {
    let mut lines = Lines::new(text);
    let f = lines.field()?;
    let m = lines.matrix(&f)?;
    lines.finish()?;
    Ok(m)
}

pub fn write_code(c: &LinearCode) -> String {
    let mut out = field_line(c.field());
    out.push('\n');
    writeln!(out, "CODE {} {}", c.len(), c.dim()).unwrap();
    push_rows(&mut out, c.generator());
    out
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = Lines::new(text);
    let f = lines.field()?;
    let (n, rest) = lines.keyword("CODE")?;
    let dims: Vec<usize> = parse_numbers(n, rest, "CODE header")?;
    if dims.len() != 2 {
        return Err(Error::Parse { line: n, msg: "expected `CODE <n> <k>`".into() });
    }
    let g = lines.rows(&f, dims[1], dims[0])?;
    lines.finish()?;
    let code = LinearCode::span_of(&g);
    if code.dim() != dims[1] {
        return Err(Error::Parse { line: n, msg: format!("generator rows have rank {} < {}", code.dim(), dims[1]) });
    }
    Ok(code)
}

pub fn write_public_key(pk: &PublicKey) -> String {
    let mut out = format!("{}\n{}\n", PUBLIC_KEY_HEADER, field_line(pk.field()));
    writeln!(out, "{} {} {}", pk.len(), pk.dim(), pk.t()).unwrap();
    push_matrix(&mut out, pk.generator());
    out
}

fn header(lines: &mut Lines<'_>, expected: &str) -> Result<()> {
    let (n, line) = lines.next(expected)?;
    if line != expected {
        return Err(Error::Parse { line: n, msg: format!("expected header `{}`", expected) });
    }
    Ok(())
}

pub fn parse_public_key(text: &str) -> Result<PublicKey> {
    let mut lines = Lines::new(text);
    header(&mut lines, PUBLIC_KEY_HEADER)?;
    let f = lines.field()?;
    let (n_line, nlt) = lines.numbers::<usize>("`<n> <l> <t>`", Some(3))?;
    let g = lines.matrix(&f)?;
    lines.finish()?;
    if g.rows() != nlt[1] || g.cols() != nlt[0] {
        return Err(Error::Parse {
            line: n_line,
            msg: format!("matrix is {}x{}, header says {}x{}", g.rows(), g.cols(), nlt[1], nlt[0]),
        });
    }
    PublicKey::new(g, nlt[2]).map_err(|e| Error::Parse { line: n_line, msg: e.to_string() })
}

pub fn write_secret_key(sk: &SecretKey) -> String {
    let spec = sk.spec();
    let mut out = format!("{}\n{}\n", SECRET_KEY_HEADER, field_line(spec.field()));
    match spec {
        CodeSpec::Grs(s) => {
            writeln!(out, "FAMILY grs\n{} {}", s.len(), s.dim()).unwrap();
            push_row(&mut out, s.points());
            push_row(&mut out, s.multipliers());
        }
        CodeSpec::Hermitian(s) => {
            writeln!(out, "FAMILY hermitian\n{} {}", s.q0(), s.degree()).unwrap();
        }
    }
    writeln!(out, "T {}", sk.t()).unwrap();
    push_matrix(&mut out, sk.selection());
    if let Some(p) = sk.permutation() {
        out.push_str("PERM");
        for x in p {
            write!(out, " {}", x).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "SEED {}", sk.seed()).unwrap();
    out
}

pub fn parse_secret_key(text: &str) -> Result<SecretKey> {
    let mut lines = Lines::new(text);
    header(&mut lines, SECRET_KEY_HEADER)?;
    let f = lines.field()?;
    let (fam_line, family) = lines.keyword("FAMILY")?;
    let spec: CodeSpec = match family {
        "grs" => {
            let (n_line, nk) = lines.numbers::<usize>("`<n> <k>`", Some(2))?;
            let a = lines.row(&f, nk[0], "evaluation points")?;
            let b = lines.row(&f, nk[0], "column multipliers")?;
            GrsSpec::new(&f, a, b, nk[1])
                .map_err(|e| Error::Parse { line: n_line, msg: e.to_string() })?
                .into()
        }
        "hermitian" => {
            let (n_line, qm) = lines.numbers::<i64>("`<q0> <m>`", Some(2))?;
            if qm[0] < 2 || qm[0] > u16::MAX as i64 {
                return Err(Error::Parse { line: n_line, msg: format!("invalid q0 {}", qm[0]) });
            }
            let curve = HermitianCurve::over(&f, qm[0] as u32)
                .map_err(|e| Error::Parse { line: n_line, msg: e.to_string() })?;
            HermitianSpec::on_curve(&curve, qm[1]).into()
        }
        other => {
            return Err(Error::Parse { line: fam_line, msg: format!("unknown family `{}`", other) });
        }
    };
    let (t_line, t) = lines.keyword("T")?;
    let t: usize = t.parse().map_err(|_| Error::Parse { line: t_line, msg: format!("`{}` is not a valid t", t) })?;
    let (s_line, _) = lines.lines.get(lines.pos).copied().unwrap_or((lines.last + 1, ""));
    let s = lines.matrix(&f)?;
    let permutation = match lines.peek() {
        Some(l) if l.starts_with("PERM") => {
            let (n, rest) = lines.keyword("PERM")?;
            Some(parse_numbers::<usize>(n, rest, "permutation")?)
        }
        _ => None,
    };
    let (seed_line, seed) = lines.keyword("SEED")?;
    let seed: u64 =
        seed.parse().map_err(|_| Error::Parse { line: seed_line, msg: format!("`{}` is not a valid seed", seed) })?;
    lines.finish()?;
    SecretKey::new(spec, s, seed, t, permutation).map_err(|e| Error::Parse { line: s_line, msg: e.to_string() })
}

pub fn write_ciphertext(ct: &Ciphertext) -> String {
    let mut out = field_line(ct.field());
    out.push('\n');
    push_row(&mut out, ct.word());
    out
}

pub fn parse_ciphertext(text: &str) -> Result<Ciphertext> {
    let mut lines = Lines::new(text);
    let f = lines.field()?;
    let (n, line) = lines.next("ciphertext row")?;
    let vals: Vec<u32> = parse_numbers(n, line, "ciphertext row")?;
    lines.finish()?;
    let word = vals
        .into_iter()
        .map(|v| f.check(v))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Parse { line: n, msg: e.to_string() })?;
    Ciphertext::new(&f, word)
}

/// A message is a single row of element indices.
pub fn write_message(msg: &[Elem]) -> String {
    let mut out = String::new();
    push_row(&mut out, msg);
    out
}

pub fn parse_message(field: &Field, text: &str) -> Result<Vec<Elem>> {
    let mut lines = Lines::new(text);
    let (n, line) = lines.next("message row")?;
    let vals: Vec<u32> = parse_numbers(n, line, "message row")?;
    lines.finish()?;
    vals.into_iter()
        .map(|v| field.check(v).map_err(|e| Error::Parse { line: n, msg: e.to_string() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::{encrypt, keygen, KeygenOptions};

    #[test]
    fn field_line_roundtrip() {
        for q in [2, 7, 16, 49, 81] {
            let f = Field::of_order(q).unwrap();
            assert_eq!(*parse_field_line(&field_line(&f)).unwrap(), *f);
        }
        assert_eq!(field_line(&Field::of_order(49).unwrap()), "GF 7 2 1 0 1");
    }

    #[test]
    fn keys_roundtrip() {
        let spec: CodeSpec = HermitianSpec::new(2, 3).unwrap().into();
        let kp = keygen(&spec, 2, 7, KeygenOptions { permute: true, ..Default::default() }).unwrap();
        let text = write_secret_key(&kp.secret);
        assert_eq!(parse_secret_key(&text).unwrap(), kp.secret);
        let text = write_public_key(&kp.public);
        assert_eq!(write_public_key(&parse_public_key(&text).unwrap()), text);

        let f = Field::prime(61).unwrap();
        let spec: CodeSpec = GrsSpec::random(&f, 60, 20, 1).unwrap().into();
        let kp = keygen(&spec, 10, 1, KeygenOptions::default()).unwrap();
        assert_eq!(parse_secret_key(&write_secret_key(&kp.secret)).unwrap(), kp.secret);
        let ct = encrypt(&kp.public, &[1; 10], 3).unwrap();
        assert_eq!(parse_ciphertext(&write_ciphertext(&ct)).unwrap(), ct);
    }

    #[test]
    fn errors_name_the_line() {
        let text = "MCSUB-PUB v1\nGF 5 1 0 1\n3 1 1\n1 3\n1 2 9\n";
        match parse_public_key(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{:?}", other),
        }
        match parse_code("GF 5 1 0 1\nCODX 3 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{:?}", other),
        }
        match parse_ciphertext("GF 4 2 1 1 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{:?}", other),
        }
    }
}
