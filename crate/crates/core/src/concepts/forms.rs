//! Canonical string forms for classes, concepts, and points.
//!
//! Concepts: `[lo,hi]`, `{j}`, `{1,4}`, `{a,b}`, `c("12")`, `prod(...)`,
//! `union(...)`, `empty`. Words whose symbols are all single digits render
//! as a quoted digit string; otherwise as a bracketed list, `c([1,13])`.
//! Classes: `singletons(m)`, `intervals(u)`, `finsets(u)`, `prefix(u,len)`,
//! `pairleft`, `pairright(u)`, `pair(u)`, `prod(...)`, `union(...)`.

use std::fmt;

use super::{ClassId, ConceptDesc, Point, Word};
use crate::error::{Error, Result};

pub(crate) fn write_word(f: &mut dyn fmt::Write, w: &Word) -> fmt::Result {
    if w.symbols().iter().all(|s| *s < 10) {
        f.write_char('"')?;
        for s in w.symbols() {
            write!(f, "{s}")?;
        }
        f.write_char('"')
    } else {
        f.write_char('[')?;
        write_list(f, w.symbols(), |f, s| write!(f, "{s}"))?;
        f.write_char(']')
    }
}

fn write_list<T>(
    f: &mut dyn fmt::Write,
    items: &[T],
    mut each: impl FnMut(&mut dyn fmt::Write, &T) -> fmt::Result,
) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        each(f, item)?;
    }
    Ok(())
}

pub(crate) fn write_point(f: &mut dyn fmt::Write, p: &Point) -> fmt::Result {
    match p {
        Point::Int(v) => write!(f, "{v}"),
        Point::Sym(c) => write!(f, "{c}"),
        Point::Pair(w, v) => {
            f.write_char('(')?;
            write_word(f, w)?;
            write!(f, ",{v})")
        }
        Point::Tagged(i, inner) => {
            write!(f, "{i}:")?;
            write_point(f, inner)
        }
        Point::Vector(coords) => {
            f.write_char('(')?;
            write_list(f, coords, write_point)?;
            f.write_char(')')
        }
    }
}

pub(crate) fn write_concept(f: &mut dyn fmt::Write, c: &ConceptDesc) -> fmt::Result {
    match c {
        ConceptDesc::Empty => f.write_str("empty"),
        ConceptDesc::Interval { lo, hi } => write!(f, "[{lo},{hi}]"),
        ConceptDesc::Singleton(j) => write!(f, "{{{j}}}"),
        ConceptDesc::FiniteSet(s) => {
            f.write_char('{')?;
            let items: Vec<&Point> = s.iter().collect();
            write_list(f, &items, |f, p| write_point(f, p))?;
            f.write_char('}')
        }
        ConceptDesc::Prefix(w) => {
            f.write_str("c(")?;
            write_word(f, w)?;
            f.write_char(')')
        }
        ConceptDesc::Product(parts) | ConceptDesc::Union(parts) => {
            f.write_str(if matches!(c, ConceptDesc::Product(_)) { "prod(" } else { "union(" })?;
            write_list(f, parts, write_concept)?;
            f.write_char(')')
        }
    }
}

pub(crate) fn write_class(f: &mut dyn fmt::Write, c: &ClassId) -> fmt::Result {
    match c {
        ClassId::Singletons { m } => write!(f, "singletons({m})"),
        ClassId::Intervals { u } => write!(f, "intervals({u})"),
        ClassId::FiniteSets { u } => write!(f, "finsets({u})"),
        ClassId::Prefix { u, max_len } => write!(f, "prefix({u},{max_len})"),
        ClassId::PairLeft => f.write_str("pairleft"),
        ClassId::PairRight { u } => write!(f, "pairright({u})"),
        ClassId::Product(parts) | ClassId::Union(parts) => {
            f.write_str(if matches!(c, ClassId::Product(_)) { "prod(" } else { "union(" })?;
            write_list(f, parts, write_class)?;
            f.write_char(')')
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let len = self
            .rest()
            .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
            .unwrap_or(self.rest().len());
        let id = self.rest()[..len].to_string();
        self.pos += len;
        id
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-'));
        let len = rest[sign..]
            .find(|ch: char| !ch.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if len == 0 {
            return Err(self.err("expected an integer"));
        }
        let v = rest[..sign + len]
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.pos += sign + len;
        Ok(v)
    }

    fn uint(&mut self) -> Result<u32> {
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.err("expected a non-negative integer"))
    }

    fn args<T>(&mut self, mut each: impl FnMut(&mut Self, usize) -> Result<T>) -> Result<Vec<T>> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(each(self, out.len())?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn finish<T>(&mut self, v: T) -> Result<T> {
        if self.peek().is_some() {
            Err(self.err("trailing input"))
        } else {
            Ok(v)
        }
    }

    fn word(&mut self) -> Result<Word> {
        match self.peek() {
            Some('"') => {
                self.pos += 1;
                let end = self
                    .rest()
                    .find('"')
                    .ok_or_else(|| self.err("unterminated word"))?;
                let body = &self.rest()[..end];
                let symbols = if body == "λ" {
                    Vec::new()
                } else {
                    body.chars()
                        .map(|ch| ch.to_digit(10).ok_or_else(|| self.err("non-digit in word")))
                        .collect::<Result<Vec<_>>>()?
                };
                self.pos += end + 1;
                Ok(Word(symbols))
            }
            Some('[') => {
                self.pos += 1;
                let mut symbols = Vec::new();
                if !self.eat(']') {
                    loop {
                        symbols.push(self.uint()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(Word(symbols))
            }
            Some('λ') => {
                self.pos += 'λ'.len_utf8();
                Ok(Word::empty())
            }
            _ => Err(self.err("expected a word")),
        }
    }

    fn class(&mut self) -> Result<ClassId> {
        let name = self.ident();
        let one = |c: &mut Self| -> Result<u32> {
            let v = c.args(|c, _| c.uint())?;
            match v.as_slice() {
                [x] => Ok(*x),
                _ => Err(c.err("expected one argument")),
            }
        };
        Ok(match name.as_str() {
            "singletons" => ClassId::Singletons { m: one(self)? },
            "intervals" => ClassId::Intervals { u: one(self)? },
            "finsets" => ClassId::FiniteSets { u: one(self)? },
            "pairright" => ClassId::PairRight { u: one(self)? },
            "pair" => ClassId::pair_demo(one(self)?),
            "pairleft" => ClassId::PairLeft,
            "prefix" => {
                let v = self.args(|c, _| c.uint())?;
                match v.as_slice() {
                    [u, len] => ClassId::Prefix { u: *u, max_len: *len as usize },
                    _ => return Err(self.err("prefix expects (u,max_len)")),
                }
            }
            "prod" => ClassId::Product(self.args(|c, _| c.class())?),
            "union" => ClassId::Union(self.args(|c, _| c.class())?),
            "" => return Err(self.err("expected a class name")),
            other => return Err(Error::Parse(format!("unknown class {other:?}"))),
        })
    }

    fn concept(&mut self, class: &ClassId) -> Result<ConceptDesc> {
        if self.eat('∅') {
            return Ok(ConceptDesc::Empty);
        }
        match (class, self.peek()) {
            (_, Some(ch)) if ch.is_ascii_alphabetic() => {
                let save = self.pos;
                let name = self.ident();
                match (name.as_str(), class) {
                    ("empty", _) => Ok(ConceptDesc::Empty),
                    ("c", ClassId::Prefix { .. }) => {
                        self.expect('(')?;
                        let w = self.word()?;
                        self.expect(')')?;
                        Ok(ConceptDesc::Prefix(w))
                    }
                    ("prod", ClassId::Product(parts)) | ("union", ClassId::Union(parts)) => {
                        let is_prod = name == "prod";
                        let concepts = self.args(|c, i| {
                            let cl = parts.get(i).ok_or_else(|| c.err("too many components"))?;
                            c.concept(cl)
                        })?;
                        if concepts.len() != parts.len() {
                            return Err(self.err("wrong number of components"));
                        }
                        Ok(if is_prod {
                            ConceptDesc::Product(concepts)
                        } else {
                            ConceptDesc::Union(concepts)
                        })
                    }
                    _ => {
                        self.pos = save;
                        Err(self.err(&format!("unexpected {name:?} for class {class}")))
                    }
                }
            }
            (ClassId::Intervals { .. } | ClassId::PairRight { .. }, Some('[')) => {
                self.pos += 1;
                let lo = self.int()?;
                self.expect(',')?;
                let hi = self.int()?;
                self.expect(']')?;
                Ok(ConceptDesc::interval(lo, hi))
            }
            (ClassId::Singletons { .. }, Some('{')) => {
                self.pos += 1;
                let j = self.uint()?;
                self.expect('}')?;
                Ok(ConceptDesc::Singleton(j))
            }
            (ClassId::FiniteSets { .. } | ClassId::PairLeft, Some('{')) => {
                self.pos += 1;
                let mut pts = Vec::new();
                if !self.eat('}') {
                    loop {
                        pts.push(match self.peek() {
                            Some(ch) if ch.is_ascii_alphabetic() => {
                                let id = self.ident();
                                let mut chars = id.chars();
                                match (chars.next(), chars.next()) {
                                    (Some(c), None) => Point::Sym(c),
                                    _ => return Err(self.err("expected a one-letter atom")),
                                }
                            }
                            _ => Point::Int(self.int()?),
                        });
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(ConceptDesc::set(pts))
            }
            _ => Err(self.err(&format!("cannot parse a concept of {class}"))),
        }
    }
}

pub fn parse_class(src: &str) -> Result<ClassId> {
    let mut c = Cursor::new(src);
    let class = c.class()?;
    c.finish(class)
}

/// Parses the canonical form of a concept of `class` and checks membership.
pub fn parse_concept(class: &ClassId, src: &str) -> Result<ConceptDesc> {
    let mut c = Cursor::new(src);
    let concept = c.concept(class)?;
    let concept = c.finish(concept)?;
    class.check_concept(&concept)?;
    Ok(concept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_forms() {
        assert_eq!(ConceptDesc::interval(2, 5).to_string(), "[2,5]");
        assert_eq!(ConceptDesc::Singleton(3).to_string(), "{3}");
        assert_eq!(ConceptDesc::prefix(&[1, 2]).to_string(), "c(\"12\")");
        assert_eq!(ConceptDesc::prefix(&[]).to_string(), "c(\"\")");
        assert_eq!(ConceptDesc::prefix(&[1, 13]).to_string(), "c([1,13])");
        assert_eq!(
            ConceptDesc::Product(vec![ConceptDesc::interval(3, 5), ConceptDesc::interval(2, 8)])
                .to_string(),
            "prod([3,5],[2,8])"
        );
        assert_eq!(ConceptDesc::set([ClassId::a(), ClassId::b()]).to_string(), "{a,b}");
        assert_eq!(Point::pair(&[1, 2], 5).to_string(), "(\"12\",5)");
        assert_eq!(Point::tagged(1, Point::Int(4)).to_string(), "1:4");
    }

    #[test]
    fn parses_classes() {
        let c = parse_class("prod(intervals(16), intervals(16))").unwrap();
        assert_eq!(c, ClassId::power(ClassId::Intervals { u: 16 }, 2));
        assert_eq!(parse_class("pair(8)").unwrap(), ClassId::pair_demo(8));
        let u = parse_class("union(pairleft,prefix(4,3))").unwrap();
        assert_eq!(u.to_string(), "union(pairleft,prefix(4,3))");
        assert!(parse_class("intervals(16").is_err());
        assert!(parse_class("blobs(3)").is_err());
    }

    #[test]
    fn parses_concepts() {
        let ints = ClassId::Intervals { u: 16 };
        let prod = ClassId::power(ints.clone(), 2);
        assert_eq!(
            parse_concept(&prod, "prod([3,5],[2,8])").unwrap(),
            ConceptDesc::Product(vec![ConceptDesc::interval(3, 5), ConceptDesc::interval(2, 8)])
        );
        assert!(parse_concept(&ints, "[3,20]").is_err());
        let prefix = ClassId::Prefix { u: 16, max_len: 4 };
        assert_eq!(parse_concept(&prefix, "c(\"12\")").unwrap(), ConceptDesc::prefix(&[1, 2]));
        assert_eq!(parse_concept(&prefix, "c([1,13])").unwrap(), ConceptDesc::prefix(&[1, 13]));
        assert_eq!(parse_concept(&prefix, "c(λ)").unwrap(), ConceptDesc::prefix(&[]));
        let left = ClassId::PairLeft;
        assert_eq!(parse_concept(&left, "{a}").unwrap(), ConceptDesc::set([ClassId::a()]));
        let sets = ClassId::FiniteSets { u: 4 };
        assert_eq!(parse_concept(&sets, "{}").unwrap(), ConceptDesc::set([]));
        assert_eq!(parse_concept(&sets, "empty").unwrap(), ConceptDesc::Empty);
        assert!(parse_concept(&ints, "empty").is_err());
        let union = ClassId::Union(vec![left, ClassId::Intervals { u: 10 }]);
        assert_eq!(parse_concept(&union, "union({a},[2,5])").unwrap().to_string(), "union({a},[2,5])");
    }

    #[test]
    fn round_trips_enumerated_concepts() {
        for class in [
            ClassId::Product(vec![ClassId::Singletons { m: 2 }, ClassId::PairRight { u: 2 }]),
            ClassId::Union(vec![ClassId::FiniteSets { u: 2 }, ClassId::PairLeft]),
            ClassId::Prefix { u: 12, max_len: 2 },
        ] {
            for c in class.concepts().unwrap() {
                assert_eq!(parse_concept(&class, &c.to_string()).unwrap(), c);
            }
        }
    }
}
