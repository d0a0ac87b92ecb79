//! Text formats: polynomials, Leavitt expressions and presentation files.
//!
//! Expressions are sums of terms; a term is an optional rational
//! coefficient followed by factors `xN`, `xN*` or `1`, juxtaposed with or
//! without spaces: `x0 x1 - 1/2 x1x0`, `x0* x1 + 1/2 x1* x0`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, SUPPORTED_PRIMES};
use crate::fpmod::FpModule;
use crate::freealg::{Arity, FreeElement, GradedFreeModule, Monomial, NcPoly, Word};
use crate::leavitt::LeavittElement;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Factor {
    letter: u8,
    starred: bool,
}

#[derive(Clone, Debug)]
struct Term {
    negative: bool,
    coefficient: Option<(String, usize)>,
    factors: Vec<(Factor, usize)>,
}

/// Splits an expression into signed terms; `column0` is the column of the first byte.
fn terms(text: &str, d: Arity, line: usize, column0: usize) -> Result<Vec<Term>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let col = |p: usize| column0 + p;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(line, col(pos), "empty expression"));
    }
    let mut first = true;
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(line, col(pos), "expected '+' or '-'"));
        }
        first = false;
        let mut coefficient = None;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let save = pos;
            let mut p = pos;
            while p < bytes.len() && bytes[p] == b' ' {
                p += 1;
            }
            if p < bytes.len() && bytes[p] == b'/' {
                p += 1;
                while p < bytes.len() && bytes[p] == b' ' {
                    p += 1;
                }
                let den = p;
                while p < bytes.len() && bytes[p].is_ascii_digit() {
                    p += 1;
                }
                if den == p {
                    return Err(err(line, col(den), "expected a denominator"));
                }
                pos = p;
            } else {
                pos = save;
            }
            coefficient = Some((text[start..pos].replace(' ', ""), col(start)));
        }
        let mut factors = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] == b'+' || bytes[pos] == b'-' {
                break;
            }
            let start = pos;
            match bytes[pos] {
                b'x' => {
                    pos += 1;
                    let digits = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if digits == pos {
                        return Err(err(line, col(digits), "expected a letter index after 'x'"));
                    }
                    let index: usize =
                        text[digits..pos].parse().map_err(|_| err(line, col(digits), "letter index too large"))?;
                    if index >= d.get() {
                        return Err(err(line, col(start), format!("letter x{index} out of range for d = {}", d.get())));
                    }
                    let starred = pos < bytes.len() && bytes[pos] == b'*';
                    if starred {
                        pos += 1;
                    }
                    factors.push((Factor { letter: index as u8, starred }, col(start)));
                }
                b'1' if coefficient.is_some() || !factors.is_empty() => {
                    // a literal 1 after other factors is the identity
                    pos += 1;
                }
                c if c.is_ascii_digit() => {
                    return Err(err(line, col(pos), "coefficient must come first in a term"));
                }
                c => return Err(err(line, col(pos), format!("unexpected character {:?}", c as char))),
            }
        }
        if coefficient.is_none() && factors.is_empty() {
            return Err(err(line, col(pos), "expected a term"));
        }
        out.push(Term { negative, coefficient, factors });
    }
    Ok(out)
}

fn coefficient<F: Field>(t: &Term, line: usize) -> Result<F> {
    let c = match &t.coefficient {
        Some((text, column)) => F::parse_ratio(text)
            .ok_or_else(|| err(line, *column, format!("{text} is not a scalar of {}", F::spec())))?,
        None => F::one(),
    };
    Ok(if t.negative { -c } else { c })
}

/// Parses a polynomial located at `(line, column)` of a larger input.
pub fn parse_poly_at<F: Field>(text: &str, d: Arity, line: usize, column: usize) -> Result<NcPoly<F>> {
    let mut p = NcPoly::zero();
    for t in terms(text, d, line, column)? {
        if let Some((_, c)) = t.factors.iter().find(|(f, _)| f.starred) {
            return Err(err(line, *c, "starred letters are not allowed in a polynomial"));
        }
        let w = Word::new(t.factors.iter().map(|(f, _)| f.letter).collect());
        p.add_term(w, coefficient(&t, line)?);
    }
    Ok(p)
}

pub fn parse_poly<F: Field>(text: &str, d: Arity) -> Result<NcPoly<F>> {
    parse_poly_at(text, d, 1, 1)
}

/// Parses and evaluates a Leavitt expression.
pub fn parse_leavitt<F: Field>(text: &str, d: Arity) -> Result<LeavittElement<F>> {
    let mut acc = LeavittElement::zero(d);
    for t in terms(text, d, 1, 1)? {
        let mut prod = LeavittElement::monomial(d, crate::leavitt::LeavittMonomial::one(), coefficient(&t, 1)?);
        for (f, _) in &t.factors {
            let g =
                if f.starred { LeavittElement::star_letter(d, f.letter) } else { LeavittElement::letter(d, f.letter) };
            prod = prod.mul(&g);
        }
        acc = acc.add(&prod);
    }
    Ok(acc)
}

/// `QQ`, `GF(p)` or `GF:p`.
pub fn parse_field_spec(text: &str) -> Option<FieldSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("QQ") || t.eq_ignore_ascii_case("Q") {
        return Some(FieldSpec::Rationals);
    }
    let inner = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')).or_else(|| t.strip_prefix("GF:"))?;
    let p: u64 = inner.trim().parse().ok()?;
    SUPPORTED_PRIMES.contains(&p).then_some(FieldSpec::Prime(p))
}

/// One relation row as it appeared in the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRow {
    pub line: usize,
    /// `(column, text)` per entry.
    pub entries: Vec<(usize, String)>,
}

/// A presentation file before its polynomials are read over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub d: Arity,
    pub name: Option<String>,
    pub gens: Vec<i64>,
    pub rows: Vec<RawRow>,
}

/// A presentation read over a concrete field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation<F: Field> {
    #[serde(skip)]
    pub field: FieldSpec,
    #[serde(skip)]
    pub d: Arity,
    pub name: Option<String>,
    pub gens: Vec<i64>,
    #[serde(skip)]
    pub rels: Vec<Vec<NcPoly<F>>>,
}

/// Splits `[a, b, c]` at top-level commas, reporting the column of each item.
fn bracket_list(text: &str, line: usize, column0: usize) -> Result<Vec<(usize, String)>> {
    let t = text.trim_end();
    let lead = text.len() - text.trim_start().len();
    let t = t.trim_start();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, column0 + lead, "expected a bracketed list"))?;
    let base = column0 + lead + 1;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = 0;
    for (k, ch) in inner.char_indices().chain(std::iter::once((inner.len(), ','))) {
        if ch == ',' {
            let item = &inner[start..k];
            let ws = item.len() - item.trim_start().len();
            if item.trim().is_empty() {
                return Err(err(line, base + start, "empty list entry"));
            }
            out.push((base + start + ws, item.trim().to_string()));
            start = k + 1;
        }
    }
    Ok(out)
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut d = None;
        let mut name = None;
        let mut gens = None;
        let mut rows = Vec::new();
        let mut in_rels = false;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let indent = body.len() - body.trim_start().len();
            let trimmed = body.trim();
            if in_rels && trimmed.starts_with('[') {
                rows.push(RawRow { line, entries: bracket_list(body, line, 1)? });
                continue;
            }
            let (key, value) = trimmed.split_once(':').ok_or_else(|| err(line, indent + 1, "expected 'key: value'"))?;
            let vcol = indent + key.len() + 2 + (value.len() - value.trim_start().len());
            let value = value.trim();
            in_rels = false;
            match key.trim() {
                "field" => {
                    field = Some(
                        parse_field_spec(value).ok_or_else(|| err(line, vcol, format!("unknown field {value:?}")))?,
                    );
                }
                "d" => {
                    let n: usize = value.parse().map_err(|_| err(line, vcol, format!("bad arity {value:?}")))?;
                    d = Some(Arity::new(n).map_err(|e| err(line, vcol, e.to_string()))?);
                }
                "name" => name = Some(value.to_string()),
                "gens" => {
                    let items = bracket_list(value, line, vcol)?;
                    let mut shifts = Vec::with_capacity(items.len());
                    for (c, item) in items {
                        shifts.push(item.parse::<i64>().map_err(|_| err(line, c, format!("bad shift {item:?}")))?);
                    }
                    gens = Some(shifts);
                }
                "rels" => {
                    in_rels = true;
                    if !value.is_empty() {
                        return Err(err(line, vcol, "relation rows go on the following lines"));
                    }
                }
                other => return Err(err(line, indent + 1, format!("unknown key {other:?}"))),
            }
        }
        let last = text.lines().count().max(1);
        let d = d.ok_or_else(|| err(last, 1, "missing 'd:'"))?;
        let gens = gens.ok_or_else(|| err(last, 1, "missing 'gens:'"))?;
        for r in &rows {
            if r.entries.len() != gens.len() {
                return Err(err(
                    r.line,
                    1,
                    format!("relation has {} entries but there are {} generators", r.entries.len(), gens.len()),
                ));
            }
        }
        Ok(PresentationFile { field: field.unwrap_or(FieldSpec::Rationals), d, name, gens, rows })
    }

    /// Reads the polynomials and checks each row for homogeneity.
    pub fn typed<F: Field>(&self) -> Result<Presentation<F>> {
        let mut rels = Vec::with_capacity(self.rows.len());
        for (n, row) in self.rows.iter().enumerate() {
            let mut polys = Vec::with_capacity(row.entries.len());
            let mut degree: Option<i64> = None;
            for ((column, textual), &shift) in row.entries.iter().zip(&self.gens) {
                let p: NcPoly<F> = parse_poly_at(textual, self.d, row.line, *column)?;
                if p.is_zero() {
                    polys.push(p);
                    continue;
                }
                let e = p.homogeneous_degree().ok_or_else(|| {
                    err(
                        row.line,
                        *column,
                        format!("relation {} is not homogeneous: entry {textual:?} mixes degrees", n + 1),
                    )
                })?;
                match degree {
                    None => degree = Some(e + shift),
                    Some(g) if g != e + shift => {
                        return Err(err(
                            row.line,
                            *column,
                            format!(
                                "relation {} is not homogeneous: entry {textual:?} has degree {} against {g}",
                                n + 1,
                                e + shift
                            ),
                        ))
                    }
                    Some(_) => {}
                }
                polys.push(p);
            }
            rels.push(polys);
        }
        Ok(Presentation { field: self.field, d: self.d, name: self.name.clone(), gens: self.gens.clone(), rels })
    }
}

impl<F: Field> Presentation<F> {
    pub fn parse(text: &str) -> Result<Self> {
        PresentationFile::parse(text)?.typed()
    }

    pub fn generators(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.d, self.gens.clone())
    }

    pub fn relation_rows(&self) -> Vec<FreeElement<F>> {
        self.rels
            .iter()
            .map(|row| {
                let mut e = FreeElement::zero();
                for (c, p) in row.iter().enumerate() {
                    for (w, x) in p.terms() {
                        e.add_term(Monomial::new(c, w.clone()), x.clone());
                    }
                }
                e
            })
            .collect()
    }

    pub fn module(&self) -> Result<FpModule<F>> {
        FpModule::from_relations(self.generators(), self.relation_rows())
    }

    pub fn from_module(name: Option<String>, m: &FpModule<F>) -> Self {
        let gens = m.generators().shifts().to_vec();
        let rels = m.relations().iter().map(|r| r.coordinates(gens.len())).collect();
        Presentation { field: F::spec(), d: m.arity(), name, gens, rels }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl<F: Field> fmt::Display for Presentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field: {}", self.field)?;
        writeln!(f, "d: {}", self.d.get())?;
        if let Some(n) = &self.name {
            writeln!(f, "name: {n}")?;
        }
        writeln!(f, "gens: [{}]", join(&self.gens))?;
        writeln!(f, "rels:")?;
        for row in &self.rels {
            writeln!(f, "  [{}]", join(row))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::leavitt::LeavittElement;

    fn d2() -> Arity {
        Arity::new(2).unwrap()
    }

    #[test]
    fn polynomials() {
        let p: NcPoly<Rational> = parse_poly("x0 x1 - 1/2 x1x0 + 3", d2()).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coefficient(&Word::new(vec![1, 0])), Rational::new(-1, 2));
        assert_eq!(p.coefficient(&Word::empty()), Rational::from_i64(3));
        assert_eq!(p.to_string(), "3 + x0 x1 - 1/2 x1 x0");
        assert_eq!(parse_poly::<Rational>(&p.to_string(), d2()).unwrap(), p);
        assert_eq!(parse_poly::<Rational>("1", d2()).unwrap(), NcPoly::one());
        assert!(parse_poly::<Rational>("0", d2()).unwrap().is_zero());
        assert_eq!(parse_poly::<Rational>("2 x0 1", d2()).unwrap(), NcPoly::letter(0).scale(&Rational::from_i64(2)));
    }

    #[test]
    fn polynomial_errors() {
        let e = parse_poly::<Rational>("x0 + x2", d2()).unwrap_err();
        assert_eq!(e, Error::Parse { line: 1, column: 6, message: "letter x2 out of range for d = 2".into() });
        assert!(matches!(parse_poly::<Rational>("x0*", d2()), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_poly::<Rational>("x0 x", d2()), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_poly::<Fp<3>>("1/3 x0", d2()), Err(Error::Parse { .. })));
    }

    #[test]
    fn leavitt_expressions() {
        let d = d2();
        assert_eq!(parse_leavitt::<Rational>("x0 x0*", d).unwrap(), LeavittElement::one(d));
        assert!(parse_leavitt::<Rational>("x0 x1*", d).unwrap().is_zero());
        let e = parse_leavitt::<Rational>("x0* x1 + 1/2 x1* x0", d).unwrap();
        assert_eq!(e.to_string(), "x0* x1 + 1/2 x1* x0");
        assert_eq!(parse_leavitt::<Rational>(&e.to_string(), d).unwrap(), e);
        assert_eq!(parse_leavitt::<Rational>("x0* x0 + x1* x1", d).unwrap(), LeavittElement::one(d));
    }

    const R_MOD_X0: &str = "# the quotient R/R x0\nfield: QQ\nd: 2\nname: R/Rx0\ngens: [0]\nrels:\n  [x0]\n";

    #[test]
    fn presentation_files() {
        let p = Presentation::<Rational>::parse(R_MOD_X0).unwrap();
        assert_eq!(p.gens, vec![0]);
        assert_eq!(p.module().unwrap().hilbert(4), 8);
        let printed = p.to_string();
        assert_eq!(Presentation::<Rational>::parse(&printed).unwrap(), p);
        let q =
            PresentationFile::parse("field: GF(7)\nd: 3\ngens: [0, 1]\nrels:\n  [x0 x1, -x2]\n  [0, x0]\n").unwrap();
        assert_eq!(q.field, FieldSpec::Prime(7));
        let m = q.typed::<Fp<7>>().unwrap().module().unwrap();
        assert_eq!(m.relations().len(), 2);
    }

    #[test]
    fn presentation_errors() {
        let e = PresentationFile::parse("d: 2\ngens: [0, 1]\nrels:\n  [x0, x1]\n")
            .unwrap()
            .typed::<Rational>()
            .unwrap_err();
        match e {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (4, 8));
                assert!(message.contains("relation 1 is not homogeneous"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let e = PresentationFile::parse("d: 2\ngens: [0]\nrels:\n  [x0 + x0 x1]\n")
            .unwrap()
            .typed::<Rational>()
            .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, column: 4, .. }));
        assert!(matches!(PresentationFile::parse("d: 0\ngens: []\n"), Err(Error::Parse { line: 1, column: 4, .. })));
        assert!(matches!(
            PresentationFile::parse("d: 2\ngens: [0]\nrels:\n  [x0, x1]\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(PresentationFile::parse("d: 2\nfoo: 1\n"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(
            PresentationFile::parse("field: GF(4)\nd: 2\ngens: [0]\n"),
            Err(Error::Parse { line: 1, column: 8, .. })
        ));
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("QQ"), Some(FieldSpec::Rationals));
        assert_eq!(parse_field_spec("GF:5"), Some(FieldSpec::Prime(5)));
        assert_eq!(parse_field_spec("GF(5)"), Some(FieldSpec::Prime(5)));
        assert_eq!(parse_field_spec("GF:4"), None);
    }
}
