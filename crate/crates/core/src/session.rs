//! Session files: one ring, named objects, and command lines.
//!
//! ```text
//! ring QQ[x,y,z,w]
//! ideal I = xy, xz, y*w^2+z*y^2
//! matrix phi : 1,0 <- 2,2,2,2,2 = [x, y, z, 0, 0; 0, 0, y^2, x*y, x^2]
//! module F = coker phi
//! module C = quotient I
//! module P = fixture F5.O_C0p_in
//! module T = twist F -1
//! module X = tensor F C
//! module S = free 0,1
//! point p = [0:0:0:1]
//! cmd hilb C
//! ```
//!
//! Twists after `:` are generator degrees (target `<-` source); without them the
//! target is placed in degree 0 and source degrees are inferred. `#` starts a comment.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Location, Result};
use crate::field::Field;
use crate::fixtures::{load_fixture, point_module, Fixture, Object};
use crate::matrix::GradedMatrix;
use crate::module::Presentation;
use crate::ops::tensor;
use crate::parse::parse_homogeneous_at;
use crate::poly::{Poly, Ring};

#[derive(Clone, Debug)]
pub struct Command {
    pub loc: Location,
    pub args: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Session<K> {
    pub ring: Ring,
    pub field_tag: Option<String>,
    pub objects: BTreeMap<String, Object<K>>,
    /// definition order of modules
    pub module_order: Vec<String>,
    pub commands: Vec<Command>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { loc: Location { line, col }, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '.' || ch == '+')
}

/// Splits `text` on `sep` at bracket depth zero, returning pieces with their column offsets.
fn split_top(text: &str, sep: char, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((base + start, &text[start..i]));
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push((base + start, &text[start..]));
    out
}

fn trim_col(col: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (col + lead, s.trim())
}

fn parse_ints(line: usize, col: usize, s: &str) -> Result<Vec<i32>> {
    split_top(s, ',', col)
        .into_iter()
        .map(|(c, t)| {
            let (c, t) = trim_col(c, t);
            t.parse::<i32>().map_err(|_| perr(line, c, format!("expected an integer, found '{t}'")))
        })
        .collect()
}

impl<K: Field> Session<K> {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ring: Option<Ring> = None;
        let mut s = Session {
            ring: Ring::p3(),
            field_tag: None,
            objects: BTreeMap::new(),
            module_order: Vec::new(),
            commands: Vec::new(),
        };
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let (col, body) = trim_col(1, body);
            let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest_col = col + kw.len() + (rest.len() - rest.trim_start().len()) + usize::from(!rest.is_empty());
            let rest = rest.trim();
            match kw {
                "ring" => {
                    if ring.is_some() {
                        return Err(perr(line, col, "only one ring per session"));
                    }
                    let (tag, vars) = match rest.find('[') {
                        Some(i) => {
                            if !rest.ends_with(']') {
                                return Err(perr(line, rest_col + rest.len(), "expected ']'"));
                            }
                            (Some(rest[..i].trim().to_string()), &rest[i + 1..rest.len() - 1])
                        }
                        None => (None, rest),
                    };
                    let names: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
                    if names.is_empty() || names.iter().any(|n| n.is_empty() || !n.chars().all(|c| c.is_ascii_alphabetic())) {
                        return Err(perr(line, rest_col, "expected variable names like x,y,z,w"));
                    }
                    if names.len() > crate::mon::MAXV {
                        return Err(perr(line, rest_col, format!("at most {} variables", crate::mon::MAXV)));
                    }
                    let r = Ring::new(&names);
                    s.ring = r.clone();
                    s.field_tag = tag.filter(|t| !t.is_empty());
                    ring = Some(r);
                }
                "cmd" => {
                    let args: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if args.is_empty() {
                        return Err(perr(line, rest_col, "empty command"));
                    }
                    s.commands.push(Command { loc: Location { line, col }, args });
                }
                "ideal" | "matrix" | "module" | "point" => {
                    if ring.is_none() {
                        return Err(perr(line, col, "the ring must be declared first"));
                    }
                    s.parse_definition(kw, line, rest_col, rest)?;
                }
                _ => return Err(perr(line, col, format!("unknown keyword '{kw}'"))),
            }
        }
        if ring.is_none() {
            return Err(perr(1, 1, "missing ring declaration"));
        }
        Ok(s)
    }

    fn parse_definition(&mut self, kw: &str, line: usize, col: usize, rest: &str) -> Result<()> {
        let Some(eq) = rest.find('=') else {
            return Err(perr(line, col + rest.len(), "expected '='"));
        };
        let head = &rest[..eq];
        let rhs_col = col + eq + 1;
        let (rhs_col, rhs) = trim_col(rhs_col, &rest[eq + 1..]);
        let (name, twists) = match head.split_once(':') {
            Some((n, t)) => (n.trim(), Some((col + head.find(':').unwrap() + 1, t))),
            None => (head.trim(), None),
        };
        if !is_ident(name) || name.contains('.') {
            return Err(perr(line, col, format!("invalid name '{name}'")));
        }
        if self.objects.contains_key(name) {
            return Err(perr(line, col, format!("'{name}' is already defined")));
        }
        let obj = match kw {
            "ideal" => Object::Ideal(self.parse_poly_list(line, rhs_col, rhs)?),
            "point" => Object::Point(self.parse_point(line, rhs_col, rhs)?),
            "matrix" => Object::Matrix(self.parse_matrix(line, rhs_col, rhs, twists)?),
            _ => Object::Module(self.parse_module(line, rhs_col, rhs)?),
        };
        if matches!(obj, Object::Module(_)) {
            self.module_order.push(name.to_string());
        }
        self.objects.insert(name.to_string(), obj);
        Ok(())
    }

    fn parse_poly_list(&self, line: usize, col: usize, s: &str) -> Result<Vec<Poly<K>>> {
        if s.is_empty() {
            return Ok(vec![]);
        }
        split_top(s, ',', col)
            .into_iter()
            .map(|(c, t)| {
                let (c, t) = trim_col(c, t);
                parse_homogeneous_at(t, &self.ring, line, c)
            })
            .collect()
    }

    fn parse_point(&self, line: usize, col: usize, s: &str) -> Result<Vec<i64>> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| perr(line, col, "expected [a:b:...]"))?;
        let coords: Vec<i64> = split_top(inner, ':', col + 1)
            .into_iter()
            .map(|(c, t)| {
                let (c, t) = trim_col(c, t);
                t.parse::<i64>().map_err(|_| perr(line, c, format!("expected an integer coordinate, found '{t}'")))
            })
            .collect::<Result<_>>()?;
        if coords.len() != self.ring.nvars() {
            return Err(perr(line, col, format!("point needs {} coordinates", self.ring.nvars())));
        }
        if coords.iter().all(|&c| c == 0) {
            return Err(perr(line, col, "the zero vector is not a point"));
        }
        Ok(coords)
    }

    fn parse_matrix(
        &self,
        line: usize,
        col: usize,
        s: &str,
        twists: Option<(usize, &str)>,
    ) -> Result<GradedMatrix<K>> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| perr(line, col, "expected a bracketed matrix [a, b; c, d]"))?;
        let mut rows: Vec<Vec<Poly<K>>> = Vec::new();
        if !inner.trim().is_empty() {
            for (rc, r) in split_top(inner, ';', col + 1) {
                let mut row = Vec::new();
                for (c, t) in split_top(r, ',', rc) {
                    let (c, t) = trim_col(c, t);
                    if t.is_empty() {
                        return Err(perr(line, c, "empty matrix entry"));
                    }
                    row.push(parse_homogeneous_at(t, &self.ring, line, c)?);
                }
                rows.push(row);
            }
        }
        if let Some(w) = rows.iter().position(|r| r.len() != rows[0].len()) {
            return Err(perr(line, col, format!("row {} has a different length", w + 1)));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        let m = match twists {
            Some((tc, t)) => {
                let (tgt, src) = t
                    .split_once("<-")
                    .ok_or_else(|| perr(line, tc, "expected 'target twists <- source twists'"))?;
                let target = if tgt.trim().is_empty() { vec![] } else { parse_ints(line, tc, tgt)? };
                let src_col = tc + tgt.len() + 2;
                let source = if src.trim().is_empty() { vec![] } else { parse_ints(line, src_col, src)? };
                if !rows.is_empty() && (target.len() != rows.len() || source.len() != ncols) {
                    return Err(perr(line, tc, "twist counts do not match the matrix shape"));
                }
                let rows = if rows.is_empty() { vec![vec![]; target.len()] } else { rows };
                let m = GradedMatrix::from_rows(target, source, rows);
                m.check_degrees().map_err(|e| perr(line, col, e.to_string()))?;
                m
            }
            None => {
                if rows.is_empty() {
                    GradedMatrix::zero(vec![], vec![])
                } else {
                    GradedMatrix::from_rows_infer(vec![0; rows.len()], rows).map_err(|e| perr(line, col, e.to_string()))?
                }
            }
        };
        Ok(m)
    }

    fn parse_module(&self, line: usize, col: usize, s: &str) -> Result<Presentation<K>> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let arg_col = |k: usize| -> usize {
            let mut c = col;
            let mut rest = s;
            for _ in 0..k {
                let w = rest.split_whitespace().next().unwrap_or("");
                let start = rest.find(w).unwrap_or(0);
                c += start + w.len();
                rest = &rest[start + w.len()..];
            }
            c + (rest.len() - rest.trim_start().len())
        };
        let need = |n: usize| -> Result<()> {
            if words.len() != n + 1 {
                return Err(perr(line, col, format!("'{}' takes {n} argument(s)", words.first().unwrap_or(&""))));
            }
            Ok(())
        };
        match words.first().copied() {
            Some("coker") => {
                need(1)?;
                match self.objects.get(words[1]) {
                    Some(Object::Matrix(m)) => Presentation::new(self.ring.clone(), m.clone()).map_err(|e| perr(line, arg_col(1), e.to_string())),
                    _ => Err(perr(line, arg_col(1), format!("unknown matrix '{}'", words[1]))),
                }
            }
            Some("quotient") => {
                need(1)?;
                match self.objects.get(words[1]) {
                    Some(Object::Ideal(i)) => Presentation::quotient(self.ring.clone(), i).map_err(|e| perr(line, arg_col(1), e.to_string())),
                    _ => Err(perr(line, arg_col(1), format!("unknown ideal '{}'", words[1]))),
                }
            }
            Some("free") => {
                need(1)?;
                Ok(Presentation::free(self.ring.clone(), parse_ints(line, arg_col(1), words[1])?))
            }
            Some("fixture") => {
                need(1)?;
                let m: Presentation<K> = fixture_module(words[1]).map_err(|e| perr(line, arg_col(1), e.to_string()))?;
                if m.ring != self.ring {
                    return Err(perr(line, arg_col(1), "fixture lives on a different ring"));
                }
                Ok(m)
            }
            Some("twist") => {
                need(2)?;
                let m = self.module_named(line, arg_col(1), words[1])?;
                let k: i32 = words[2].parse().map_err(|_| perr(line, arg_col(2), "expected an integer twist"))?;
                Ok(m.twist(k))
            }
            Some("tensor") => {
                need(2)?;
                let a = self.module_named(line, arg_col(1), words[1])?;
                let b = self.module_named(line, arg_col(2), words[2])?;
                tensor(&a, &b).map_err(|e| perr(line, col, e.to_string()))
            }
            Some("pointsheaf") => {
                need(1)?;
                match self.objects.get(words[1]) {
                    Some(Object::Point(p)) => point_module(&self.ring, p),
                    _ => Err(perr(line, arg_col(1), format!("unknown point '{}'", words[1]))),
                }
            }
            Some(other) => Err(perr(line, col, format!("unknown module constructor '{other}'"))),
            None => Err(perr(line, col, "missing module expression")),
        }
    }

    fn module_named(&self, line: usize, col: usize, name: &str) -> Result<Presentation<K>> {
        match self.objects.get(name) {
            Some(Object::Module(m)) => Ok(m.clone()),
            _ => Err(perr(line, col, format!("unknown module '{name}'"))),
        }
    }

    pub fn last_module(&self) -> Option<&str> {
        self.module_order.last().map(String::as_str)
    }
}

fn fixture_module<K: Field>(reference: &str) -> Result<Presentation<K>> {
    let (fx, key) = reference.split_once('.').map_or((reference, None), |(a, b)| (a, Some(b)));
    let f: Fixture<K> = load_fixture(fx)?;
    match key {
        None => Ok(f.main_module().clone()),
        Some(k) => match f.objects.get(k) {
            Some(Object::Module(m)) => Ok(m.clone()),
            Some(Object::Point(p)) => point_module(&f.ring, p),
            _ => Err(Error::Unknown(reference.to_string())),
        },
    }
}

/// Resolves object references against an optional session, then the fixture catalog.
///
/// A reference is `name`, `Fixture`, `Fixture.key`, optionally followed by a twist `(k)`.
/// Points resolve to their skyscraper modules.
pub struct Env<K> {
    pub session: Option<Session<K>>,
    fixtures: RefCell<HashMap<String, Fixture<K>>>,
}

impl<K: Field> Env<K> {
    pub fn new(session: Option<Session<K>>) -> Self {
        Env { session, fixtures: RefCell::new(HashMap::new()) }
    }

    pub fn fixture(&self, name: &str) -> Result<Fixture<K>> {
        if let Some(f) = self.fixtures.borrow().get(name) {
            return Ok(f.clone());
        }
        let f: Fixture<K> = load_fixture(name)?;
        self.fixtures.borrow_mut().insert(name.to_string(), f.clone());
        Ok(f)
    }

    fn object(&self, name: &str) -> Result<(Ring, Object<K>)> {
        if let Some(s) = &self.session {
            if let Some(o) = s.objects.get(name) {
                return Ok((s.ring.clone(), o.clone()));
            }
        }
        let (fx, key) = name.split_once('.').map_or((name, None), |(a, b)| (a, Some(b)));
        let f = self.fixture(fx)?;
        let key = key.unwrap_or(&f.main).to_string();
        let o = f.objects.get(&key).cloned().ok_or_else(|| Error::Unknown(name.to_string()))?;
        Ok((f.ring.clone(), o))
    }

    /// Module reference with optional twist suffix, e.g. `F4`, `F5.O_Lm1`, `G(1)`.
    pub fn module(&self, reference: &str) -> Result<Presentation<K>> {
        let reference = reference.trim();
        let (base, twist) = match reference.strip_suffix(')').and_then(|r| r.rsplit_once('(')) {
            Some((b, t)) => {
                let k: i32 = t.trim().parse().map_err(|_| Error::Invalid(format!("bad twist in '{reference}'")))?;
                (b, k)
            }
            None => (reference, 0),
        };
        let (ring, o) = self.object(base)?;
        let m = match o {
            Object::Module(m) => m,
            Object::Point(p) => point_module(&ring, &p)?,
            Object::Ideal(i) => Presentation::quotient(ring, &i)?,
            Object::Matrix(m) => Presentation::new(ring, m)?,
        };
        Ok(if twist == 0 { m } else { m.twist(twist) })
    }

    pub fn matrix(&self, reference: &str) -> Result<GradedMatrix<K>> {
        match self.object(reference)?.1 {
            Object::Matrix(m) => Ok(m),
            _ => Err(Error::Invalid(format!("'{reference}' is not a matrix"))),
        }
    }

    pub fn ideal(&self, reference: &str) -> Result<(Ring, Vec<Poly<K>>)> {
        match self.object(reference)? {
            (r, Object::Ideal(i)) => Ok((r, i)),
            _ => Err(Error::Invalid(format!("'{reference}' is not an ideal"))),
        }
    }

    /// The module named by `reference`, or the session's last module.
    pub fn module_or_last(&self, reference: Option<&str>) -> Result<Presentation<K>> {
        match reference {
            Some(r) => self.module(r),
            None => {
                let s = self.session.as_ref().ok_or_else(|| Error::Invalid("no module given".into()))?;
                let last = s.last_module().ok_or_else(|| Error::Invalid("the session defines no module".into()))?;
                self.module(last)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::hilbert::hilbert_polynomial;

    #[test]
    fn parses_objects() {
        let text = "ring QQ[x,y,z,w]\n\
                    ideal I = xy, xz, y*w^2 + z*y^2  # line and cubic\n\
                    module C = quotient I\n\
                    matrix phi : 1,0 <- 2,2,2,2,2 = [x, y, z, 0, 0; 0, 0, y^2, x*y, x^2]\n\
                    module F = coker phi\n\
                    matrix e = []\n\
                    point p = [0:0:0:1]\n\
                    cmd hilb C\n";
        let s: Session<Q> = Session::parse(text).unwrap();
        assert_eq!(s.last_module(), Some("F"));
        assert_eq!(s.commands.len(), 1);
        let env = Env::new(Some(s));
        assert_eq!(hilbert_polynomial(&env.module("C").unwrap()).to_string(), "4*m");
        assert_eq!(hilbert_polynomial(&env.module("F").unwrap()).to_string(), "4*m+1");
        assert_eq!(env.matrix("e").unwrap().ncols(), 0);
        assert_eq!(env.module("p").unwrap().gens(), &[0]);
    }

    #[test]
    fn reports_locations() {
        let err = Session::<Q>::parse("ring x,y,z,w\nideal I = x + y^2").unwrap_err();
        match err {
            Error::Parse { loc, .. } => assert_eq!((loc.line, loc.col), (2, 11)),
            e => panic!("{e}"),
        }
        let err = Session::<Q>::parse("ring x,y,z,w\nmodule F = coker nope").unwrap_err();
        match err {
            Error::Parse { loc, .. } => assert_eq!((loc.line, loc.col), (2, 18)),
            e => panic!("{e}"),
        }
        assert!(Session::<Q>::parse("ideal I = x").is_err());
    }

    #[test]
    fn fixture_references() {
        let env: Env<Q> = Env::new(None);
        assert_eq!(env.module("F4").unwrap().gens(), &[1, 0]);
        assert_eq!(env.module("F5.O_Lm1").unwrap().gens(), &[1]);
        assert_eq!(env.module("F4(1)").unwrap().gens(), &[0, -1]);
        assert!(env.module("F9").is_err());
    }
}
