//! Plain-text formats for matrices, bases, SIS instances and solutions.
//!
//! Matrix: a `rows cols` line followed by row-major whitespace-separated
//! entries, integers or `p/q` rationals. Instance: a `n m Q beta` line, then
//! the matrix. Solution: one line of integers. `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use sisz_core::sis::{Provenance, SisInstance};
use sisz_core::{Error, IntegerMatrix, LatticeBasis, RationalMatrix, Result};

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
}

fn parse_tok<T: FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    t.parse().map_err(|_| Error::Parse(format!("invalid {what}: {t:?}")))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational {tok:?}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

/// `p/q` with `q > 0` in lowest terms, always with the slash.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn header<'a>(it: &mut impl Iterator<Item = &'a str>) -> Result<(usize, usize)> {
    Ok((parse_tok(it.next(), "row count")?, parse_tok(it.next(), "column count")?))
}

fn trailing<'a>(mut it: impl Iterator<Item = &'a str>) -> Result<()> {
    match it.next() {
        Some(t) => Err(Error::Parse(format!("unexpected trailing token {t:?}"))),
        None => Ok(()),
    }
}

fn read_integer_matrix<'a>(it: &mut impl Iterator<Item = &'a str>) -> Result<IntegerMatrix> {
    let (r, c) = header(it)?;
    let mut data = Vec::with_capacity(r * c);
    for k in 0..r * c {
        data.push(parse_tok::<BigInt>(it.next(), &format!("entry {k}"))?);
    }
    IntegerMatrix::new(r, c, data)
}

pub fn parse_matrix(text: &str) -> Result<IntegerMatrix> {
    let mut it = tokens(text);
    let m = read_integer_matrix(&mut it)?;
    trailing(it)?;
    Ok(m)
}

pub fn parse_rational_matrix(text: &str) -> Result<RationalMatrix> {
    let mut it = tokens(text);
    let (r, c) = header(&mut it)?;
    let mut data = Vec::with_capacity(r * c);
    for k in 0..r * c {
        let t = it.next().ok_or_else(|| Error::Parse(format!("missing entry {k}")))?;
        data.push(parse_rational(t)?);
    }
    trailing(it)?;
    RationalMatrix::new(r, c, data)
}

pub fn write_matrix(m: &IntegerMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn write_rational_matrix(m: &RationalMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// A square basis (columns are basis vectors). `entry_bound` defaults to the
/// largest absolute entry.
pub fn parse_basis(text: &str, entry_bound: Option<u64>) -> Result<LatticeBasis> {
    let m = parse_matrix(text)?;
    match entry_bound {
        Some(b) => LatticeBasis::with_entry_bound(m, BigInt::from(b)),
        None => LatticeBasis::new(m),
    }
}

pub fn write_basis(b: &LatticeBasis) -> String {
    write_matrix(b.matrix())
}

pub fn parse_instance(text: &str) -> Result<SisInstance> {
    let mut it = tokens(text);
    let n: usize = parse_tok(it.next(), "n")?;
    let m: usize = parse_tok(it.next(), "m")?;
    let q: u64 = parse_tok(it.next(), "Q")?;
    let beta: u64 = parse_tok(it.next(), "beta")?;
    let a = read_integer_matrix(&mut it)?;
    trailing(it)?;
    if (a.rows(), a.cols()) != (n, m) {
        return Err(Error::Parse(format!(
            "header says {n}x{m} but matrix is {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    SisInstance::new(a, q, beta, Provenance::RandomUniform)
}

pub fn write_instance(inst: &SisInstance) -> String {
    format!(
        "{} {} {} {}\n{}",
        inst.n(),
        inst.m(),
        inst.q(),
        inst.beta(),
        write_matrix(inst.matrix())
    )
}

pub fn write_solution(z: &[i64]) -> String {
    let parts: Vec<String> = z.iter().map(ToString::to_string).collect();
    format!("{}\n", parts.join(" "))
}

pub fn parse_solution(text: &str) -> Result<Vec<i64>> {
    tokens(text)
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("invalid integer {t:?}"))))
        .collect()
}

/// Integer entries as `i64` for compact JSON, or `None` if any overflows.
pub fn small_ints(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}
