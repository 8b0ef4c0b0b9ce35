//! Concrete syntax for lambda and CL terms.
//!
//! ```text
//! term  ::= ('\' | 'λ') ident+ '.' term | atom+ [abstraction]
//! atom  ::= ident | combinator | '(' term ')'
//! ```
//!
//! Application is left-associative and binds tighter than abstraction.
//! Identifiers start with a lowercase letter; `S K I B C S' B' C' B*` are
//! the only uppercase tokens.

use std::fmt;

use thiserror::Error;

use crate::term::{is_var_name, ClTerm, Combinator, LambdaTerm, Var};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected one of: {}", .expected.join(", "))]
    Unexpected {
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unknown constant `{0}` (combinators are S K I B C S' B' C' B*)")]
    UnknownConstant(String),
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("CL terms contain no λ")]
    AbstractionInCl,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    LParen,
    RParen,
    Ident(String),
    Comb(Combinator),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lambda => "`\\`".to_string(),
            Tok::Dot => "`.`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Ident(s) => format!("variable `{s}`"),
            Tok::Comb(c) => format!("combinator `{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let err = |kind| ParseError {
            line: start_line,
            column: start_col,
            kind,
        };
        let push = |out: &mut Vec<Spanned>, tok| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            })
        };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let single = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            push(&mut out, tok);
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            if c.is_ascii_lowercase() {
                debug_assert!(is_var_name(&word));
                push(&mut out, Tok::Ident(word));
                continue;
            }
            if let Some(&d) = chars.peek() {
                if d == '\'' || d == '*' {
                    word.push(d);
                    chars.next();
                    column += 1;
                }
            }
            match Combinator::from_symbol(&word) {
                Some(comb) => push(&mut out, Tok::Comb(comb)),
                None => return Err(err(ParseErrorKind::UnknownConstant(word))),
            }
            continue;
        }
        return Err(err(ParseErrorKind::BadChar(c)));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    allow_abstraction: bool,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::Unexpected {
                found: t.tok.describe(),
                expected,
            },
        }
    }

    fn expected_atom(&self) -> Vec<&'static str> {
        if self.allow_abstraction {
            vec!["variable", "combinator", "`(`", "`\\`"]
        } else {
            vec!["variable", "combinator", "`(`"]
        }
    }

    fn term(&mut self) -> Result<LambdaTerm, ParseError> {
        if self.peek().tok == Tok::Lambda {
            return self.abstraction();
        }
        let mut acc = match self.atom()? {
            Some(t) => t,
            None => return Err(self.unexpected(self.expected_atom())),
        };
        loop {
            if self.peek().tok == Tok::Lambda {
                let body = self.abstraction()?;
                return Ok(LambdaTerm::app(acc, body));
            }
            match self.atom()? {
                Some(arg) => acc = LambdaTerm::app(acc, arg),
                None => return Ok(acc),
            }
        }
    }

    fn abstraction(&mut self) -> Result<LambdaTerm, ParseError> {
        let (line, column) = {
            let lambda = self.bump();
            (lambda.line, lambda.column)
        };
        if !self.allow_abstraction {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::AbstractionInCl,
            });
        }
        let mut binders = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::Ident(name) => {
                    binders.push(Var::new(name));
                    self.bump();
                }
                Tok::Dot if !binders.is_empty() => {
                    self.bump();
                    break;
                }
                _ if binders.is_empty() => return Err(self.unexpected(vec!["variable"])),
                _ => return Err(self.unexpected(vec!["variable", "`.`"])),
            }
        }
        let body = self.term()?;
        Ok(LambdaTerm::abs_many(binders, body))
    }

    fn atom(&mut self) -> Result<Option<LambdaTerm>, ParseError> {
        let t = match &self.peek().tok {
            Tok::Ident(name) => LambdaTerm::Var(Var::new(name)),
            Tok::Comb(c) => LambdaTerm::Prim(*c),
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                if self.peek().tok != Tok::RParen {
                    let mut expected = self.expected_atom();
                    expected.push("`)`");
                    return Err(self.unexpected(expected));
                }
                self.bump();
                return Ok(Some(inner));
            }
            _ => return Ok(None),
        };
        self.bump();
        Ok(Some(t))
    }

    fn finish(&mut self, t: LambdaTerm) -> Result<LambdaTerm, ParseError> {
        if self.peek().tok != Tok::Eof {
            let mut expected = self.expected_atom();
            expected.push("end of input");
            return Err(self.unexpected(expected));
        }
        Ok(t)
    }
}

fn parse_with(src: &str, allow_abstraction: bool) -> Result<LambdaTerm, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        allow_abstraction,
    };
    let t = p.term()?;
    p.finish(t)
}

pub fn parse_lambda(src: &str) -> Result<LambdaTerm, ParseError> {
    parse_with(src, true)
}

pub fn parse_cl(src: &str) -> Result<ClTerm, ParseError> {
    let t = parse_with(src, false)?;
    Ok(t.to_cl().expect("abstractions rejected by the parser"))
}

/// Lines of a corpus file holding terms: blank lines and lines starting
/// with `#` are skipped. Returns `(line number, text)` pairs.
pub fn corpus_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_corpus<T>(
    text: &str,
    parse: impl Fn(&str) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    corpus_lines(text)
        .map(|(line, src)| {
            parse(src).map_err(|e| ParseError {
                line: line + e.line - 1,
                ..e
            })
        })
        .collect()
}

/// One lambda term per line.
pub fn parse_lambda_corpus(text: &str) -> Result<Vec<LambdaTerm>, ParseError> {
    parse_corpus(text, parse_lambda)
}

/// One CL term per line.
pub fn parse_cl_corpus(text: &str) -> Result<Vec<ClTerm>, ParseError> {
    parse_corpus(text, parse_cl)
}

pub fn print_lambda(t: &LambdaTerm) -> String {
    t.to_string()
}

pub fn print_cl(t: &ClTerm) -> String {
    t.to_string()
}

fn write_cl(t: &ClTerm, f: &mut fmt::Formatter<'_>, as_arg: bool) -> fmt::Result {
    match t {
        ClTerm::Var(v) => write!(f, "{v}"),
        ClTerm::Prim(c) => write!(f, "{c}"),
        ClTerm::App(fun, arg) => {
            if as_arg {
                f.write_str("(")?;
            }
            write_cl(fun, f, false)?;
            f.write_str(" ")?;
            write_cl(arg, f, true)?;
            if as_arg {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for ClTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cl(self, f, false)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Top,
    Fun,
    Arg,
}

fn write_lambda(t: &LambdaTerm, f: &mut fmt::Formatter<'_>, slot: Slot) -> fmt::Result {
    match t {
        LambdaTerm::Var(v) => write!(f, "{v}"),
        LambdaTerm::Prim(c) => write!(f, "{c}"),
        LambdaTerm::App(fun, arg) => {
            let paren = slot == Slot::Arg;
            if paren {
                f.write_str("(")?;
            }
            write_lambda(fun, f, Slot::Fun)?;
            f.write_str(" ")?;
            write_lambda(arg, f, Slot::Arg)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        LambdaTerm::Abs(..) => {
            let paren = slot != Slot::Top;
            if paren {
                f.write_str("(")?;
            }
            f.write_str("\\")?;
            let mut body = t;
            let mut first = true;
            while let LambdaTerm::Abs(b, inner) = body {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{b}")?;
                first = false;
                body = inner;
            }
            f.write_str(". ")?;
            write_lambda(body, f, Slot::Top)?;
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lambda(self, f, Slot::Top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Combinator::*;

    fn v(n: &str) -> LambdaTerm {
        LambdaTerm::var(n)
    }
    fn app(a: LambdaTerm, b: LambdaTerm) -> LambdaTerm {
        LambdaTerm::app(a, b)
    }
    fn p(c: Combinator) -> LambdaTerm {
        LambdaTerm::Prim(c)
    }

    #[test]
    fn parses_lambda_examples() {
        let t = parse_lambda(r"\y. (\z. x) y y").unwrap();
        let expected = LambdaTerm::abs(
            Var::new("y"),
            app(app(LambdaTerm::abs(Var::new("z"), v("x")), v("y")), v("y")),
        );
        assert_eq!(t, expected);

        let t = parse_lambda("K S x (K S x)").unwrap();
        let ksx = app(app(p(K), p(S)), v("x"));
        assert_eq!(t, app(ksx.clone(), ksx));

        assert_eq!(parse_lambda("x").unwrap(), v("x"));
    }

    #[test]
    fn unicode_lambda_and_multi_binders() {
        assert_eq!(
            parse_lambda("λx y. x").unwrap(),
            parse_lambda(r"\x. \y. x").unwrap()
        );
    }

    #[test]
    fn trailing_abstraction_argument() {
        let t = parse_lambda(r"f \x. x y").unwrap();
        assert_eq!(
            t,
            app(v("f"), LambdaTerm::abs(Var::new("x"), app(v("x"), v("y"))))
        );
    }

    #[test]
    fn parses_cl_examples() {
        let t = parse_cl("S (K x) I").unwrap();
        assert_eq!(
            t,
            ClTerm::app(
                ClTerm::app(
                    ClTerm::Prim(S),
                    ClTerm::app(ClTerm::Prim(K), ClTerm::var("x"))
                ),
                ClTerm::Prim(I)
            )
        );
        let t = parse_cl("S' (C' C) (C B) I").unwrap();
        let (head, args) = t.spine();
        assert_eq!(*head, ClTerm::Prim(SPrime));
        assert_eq!(args.len(), 3);
        assert_eq!(*args[0], ClTerm::prim_app(CPrime, [ClTerm::Prim(C)]));
        assert_eq!(*args[1], ClTerm::prim_app(C, [ClTerm::Prim(B)]));
        assert_eq!(*args[2], ClTerm::Prim(I));
        assert_eq!(
            parse_cl("B* x").unwrap(),
            ClTerm::prim_app(BStar, [ClTerm::var("x")])
        );
    }

    #[test]
    fn cl_rejects_abstraction() {
        let err = parse_cl(r"\x. x").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::AbstractionInCl);
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn rejects_unknown_uppercase() {
        let err = parse_lambda("S X").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownConstant("X".into()));
        assert_eq!(err.column, 3);
        assert!(parse_lambda("SK").is_err());
        assert!(parse_lambda("x'").is_err());
    }

    #[test]
    fn error_positions_and_expectations() {
        let err = parse_lambda("(x y").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        match err.kind {
            ParseErrorKind::Unexpected { expected, .. } => assert!(expected.contains(&"`)`")),
            other => panic!("{other:?}"),
        }
        let err = parse_lambda("x\n  )").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(parse_lambda(r"\. x").is_err());
        assert!(parse_lambda("").is_err());
    }

    #[test]
    fn prints_minimal_parentheses() {
        assert_eq!(print_cl(&parse_cl("S (K x) I").unwrap()), "S (K x) I");
        assert_eq!(
            print_cl(&parse_cl("((K S) x) ((K S) x)").unwrap()),
            "K S x (K S x)"
        );
        assert_eq!(
            print_lambda(&LambdaTerm::abs(Var::new("x"), v("x"))),
            r"\x. x"
        );
        assert_eq!(
            print_lambda(&parse_lambda(r"\y. (\z. x) y y").unwrap()),
            r"\y. (\z. x) y y"
        );
        assert_eq!(
            print_lambda(&parse_lambda(r"f (\x. x) y").unwrap()),
            r"f (\x. x) y"
        );
        assert_eq!(
            print_lambda(&parse_lambda(r"\x y z. y (x z) x").unwrap()),
            r"\x y z. y (x z) x"
        );
    }

    #[test]
    fn corpus_skips_comments() {
        let text = "# header\n\nx y\n  # indented comment\n\\x. x\n";
        let terms = parse_lambda_corpus(text).unwrap();
        assert_eq!(terms.len(), 2);
        let err = parse_lambda_corpus("x\n# c\n(y").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(parse_cl_corpus("S K\n\\x. x").is_err());
    }
}
