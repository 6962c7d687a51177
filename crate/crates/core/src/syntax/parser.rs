use crate::error::{Error, Result};

use super::lexer::{tokenize, Tok, Token};

/// A label word as written: generator names with integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordExpr(pub Vec<(String, i64)>);

/// A color as written (a name or a possibly negative integer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorExpr(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeExpr {
    Leaf,
    Node(ColorExpr, Box<TreeExpr>, Box<TreeExpr>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BrickExpr(pub Vec<(ColorExpr, String)>);

/// Entries `color: pre(period)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointExpr(pub Vec<(ColorExpr, String, String)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementExpr {
    Id,
    Iota(WordExpr),
    Iota1(ColorExpr, WordExpr),
    Defer(BrickExpr, WordExpr),
    Quad { minus: TreeExpr, perm: Vec<usize>, labels: Vec<WordExpr>, plus: TreeExpr },
    Product(Box<ElementExpr>, Box<ElementExpr>),
    Power(Box<ElementExpr>, i64),
    Commutator(Box<ElementExpr>, Box<ElementExpr>),
    /// `conj(a, b) = b a b⁻¹`.
    Conj(Box<ElementExpr>, Box<ElementExpr>),
}

pub(super) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(super) fn new(text: &str) -> Result<Self> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T> {
        let t = &self.tokens[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.is_punct(c) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{c}`")])
        }
    }

    pub(super) fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = self.is_punct('-');
        if negative {
            self.bump();
        }
        match self.peek().clone() {
            Tok::Digits(d) => {
                self.bump();
                let v: i64 = d.parse().map_err(|_| Error::Invalid(format!("integer `{d}` out of range")))?;
                Ok(if negative { -v } else { v })
            }
            _ => self.error(&["integer"]),
        }
    }

    pub(super) fn expression(&mut self) -> Result<ElementExpr> {
        let mut left = self.factor()?;
        while self.is_punct('*') {
            self.bump();
            let right = self.factor()?;
            left = ElementExpr::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<ElementExpr> {
        let base = self.base()?;
        if self.is_punct('^') {
            self.bump();
            let n = self.signed_int()?;
            return Ok(ElementExpr::Power(Box::new(base), n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ElementExpr> {
        const EXPECTED: &[&str] = &["`id`", "`iota`", "`iota1`", "`defer`", "`quad`", "`conj`", "`[`", "`(`"];
        match self.peek().clone() {
            Tok::Punct('[') => {
                self.bump();
                let a = self.expression()?;
                self.expect_punct(',')?;
                let b = self.expression()?;
                self.expect_punct(']')?;
                Ok(ElementExpr::Commutator(Box::new(a), Box::new(b)))
            }
            Tok::Punct('(') => {
                self.bump();
                let e = self.expression()?;
                self.expect_punct(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "id" => {
                    self.bump();
                    Ok(ElementExpr::Id)
                }
                "iota" | "iota1" | "defer" | "quad" | "conj" => {
                    self.bump();
                    self.expect_punct('(')?;
                    let e = self.call(&name)?;
                    self.expect_punct(')')?;
                    Ok(e)
                }
                _ => self.error(EXPECTED),
            },
            _ => self.error(EXPECTED),
        }
    }

    fn call(&mut self, name: &str) -> Result<ElementExpr> {
        Ok(match name {
            "iota" => ElementExpr::Iota(self.word()?),
            "iota1" => {
                let c = self.color()?;
                self.expect_punct(',')?;
                ElementExpr::Iota1(c, self.word()?)
            }
            "defer" => {
                let b = self.brick()?;
                self.expect_punct(',')?;
                ElementExpr::Defer(b, self.word()?)
            }
            "quad" => {
                let minus = self.tree()?;
                self.expect_punct(',')?;
                let perm = self.perm()?;
                self.expect_punct(',')?;
                let labels = self.word_list()?;
                self.expect_punct(',')?;
                let plus = self.tree()?;
                ElementExpr::Quad { minus, perm, labels, plus }
            }
            "conj" => {
                let a = self.expression()?;
                self.expect_punct(',')?;
                let b = self.expression()?;
                ElementExpr::Conj(Box::new(a), Box::new(b))
            }
            _ => unreachable!("call names are checked by the caller"),
        })
    }

    pub(super) fn color(&mut self) -> Result<ColorExpr> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Digits(s) => {
                self.bump();
                Ok(ColorExpr(s))
            }
            Tok::Punct('-') => {
                if let Tok::Digits(d) = self.peek_at(1).clone() {
                    self.bump();
                    self.bump();
                    Ok(ColorExpr(format!("-{d}")))
                } else {
                    self.bump();
                    self.error(&["digits"])
                }
            }
            _ => self.error(&["color"]),
        }
    }

    pub(super) fn word(&mut self) -> Result<WordExpr> {
        let mut letters = Vec::new();
        let mut any = false;
        loop {
            match self.peek().clone() {
                Tok::Ident(name) => {
                    self.bump();
                    let e = if self.is_punct('^') {
                        self.bump();
                        self.signed_int()?
                    } else {
                        1
                    };
                    letters.push((name, e));
                    any = true;
                }
                Tok::Digits(d) if d == "1" => {
                    self.bump();
                    any = true;
                }
                _ if any => return Ok(WordExpr(letters)),
                _ => return self.error(&["generator name", "`1`"]),
            }
        }
    }

    fn word_list(&mut self) -> Result<Vec<WordExpr>> {
        self.expect_punct('[')?;
        let mut out = vec![self.word()?];
        while self.is_punct(',') {
            self.bump();
            out.push(self.word()?);
        }
        self.expect_punct(']')?;
        Ok(out)
    }

    pub(super) fn perm(&mut self) -> Result<Vec<usize>> {
        self.expect_punct('[')?;
        let mut out = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Digits(d) => {
                    self.bump();
                    out.push(d.parse().map_err(|_| Error::Invalid(format!("index `{d}` out of range")))?);
                }
                _ => return self.error(&["integer"]),
            }
            if self.is_punct(',') {
                self.bump();
            } else {
                break;
            }
        }
        self.expect_punct(']')?;
        Ok(out)
    }

    pub(super) fn tree(&mut self) -> Result<TreeExpr> {
        if self.is_punct('.') {
            self.bump();
            return Ok(TreeExpr::Leaf);
        }
        if !self.is_punct('(') {
            return self.error(&["`.`", "`(`"]);
        }
        self.bump();
        let c = self.color()?;
        let a = self.tree()?;
        let b = self.tree()?;
        self.expect_punct(')')?;
        Ok(TreeExpr::Node(c, Box::new(a), Box::new(b)))
    }

    fn bits(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Digits(d) if d.chars().all(|c| c == '0' || c == '1') => {
                self.bump();
                Ok(d)
            }
            _ => self.error(&["bit string"]),
        }
    }

    pub(super) fn brick(&mut self) -> Result<BrickExpr> {
        self.expect_punct('{')?;
        let mut out = Vec::new();
        if !self.is_punct('}') {
            loop {
                let c = self.color()?;
                self.expect_punct(':')?;
                out.push((c, self.bits()?));
                if self.is_punct(',') {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct('}')?;
        Ok(BrickExpr(out))
    }

    pub(super) fn point(&mut self) -> Result<PointExpr> {
        self.expect_punct('{')?;
        let mut out = Vec::new();
        if !self.is_punct('}') {
            loop {
                let c = self.color()?;
                self.expect_punct(':')?;
                let pre = if self.is_punct('(') { String::new() } else { self.bits()? };
                self.expect_punct('(')?;
                let period = self.bits()?;
                self.expect_punct(')')?;
                out.push((c, pre, period));
                if self.is_punct(',') {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct('}')?;
        Ok(PointExpr(out))
    }

    /// `({color: int, ...}, word)`.
    pub(super) fn wreath(&mut self) -> Result<(Vec<(ColorExpr, i64)>, WordExpr)> {
        self.expect_punct('(')?;
        self.expect_punct('{')?;
        let mut entries = Vec::new();
        if !self.is_punct('}') {
            loop {
                let c = self.color()?;
                self.expect_punct(':')?;
                entries.push((c, self.signed_int()?));
                if self.is_punct(',') {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct('}')?;
        self.expect_punct(',')?;
        let w = self.word()?;
        self.expect_punct(')')?;
        Ok((entries, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ElementExpr> {
        let mut p = Parser::new(text)?;
        let e = p.expression()?;
        p.finish()?;
        Ok(e)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("id").unwrap(), ElementExpr::Id);
        let e = parse("[ iota(s), defer({a:0}, t) ]").unwrap();
        assert_eq!(
            e,
            ElementExpr::Commutator(
                Box::new(ElementExpr::Iota(WordExpr(vec![("s".into(), 1)]))),
                Box::new(ElementExpr::Defer(
                    BrickExpr(vec![(ColorExpr("a".into()), "0".into())]),
                    WordExpr(vec![("t".into(), 1)])
                )),
            )
        );
        let e = parse("quad((r . .), [2,1], [1, g], (r . .)) ^ -1").unwrap();
        let ElementExpr::Power(inner, -1) = e else { panic!("expected a power") };
        assert!(matches!(*inner, ElementExpr::Quad { ref perm, .. } if perm == &vec![2, 1]));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("id * iota(a)^2 * id").unwrap();
        let ElementExpr::Product(left, right) = e else { panic!() };
        assert_eq!(*right, ElementExpr::Id);
        let ElementExpr::Product(_, mid) = *left else { panic!() };
        assert!(matches!(*mid, ElementExpr::Power(_, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("id *\n  foo") {
            Err(Error::Syntax { line, column, expected, .. }) => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains(&"`iota`".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("iota(s) iota(s)").is_err());
        assert!(parse("quad(., [1], [1])").is_err());
    }

    #[test]
    fn words_with_exponents() {
        let mut p = Parser::new("a b^-1 c^2 1").unwrap();
        let w = p.word().unwrap();
        assert_eq!(w.0, vec![("a".into(), 1), ("b".into(), -1), ("c".into(), 2)]);
    }

    #[test]
    fn points_with_empty_preperiod() {
        let mut p = Parser::new("{s: (01), 3: 1(0)}").unwrap();
        let pt = p.point().unwrap();
        assert_eq!(pt.0[0], (ColorExpr("s".into()), String::new(), "01".into()));
        assert_eq!(pt.0[1].1, "1");
    }
}
