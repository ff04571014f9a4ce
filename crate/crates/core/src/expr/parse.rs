//! Text syntax: `t ::= x | <k> t | t \/ t | t /\ t | bot | top | mu x . t`.
//!
//! `<k>` binds tightest, then `/\`, then `\/` (both left associative); the
//! body of `mu` extends as far to the right as possible. The Unicode forms
//! `⟨k⟩ ∨ ∧ ⊥ ⊤ μ` are accepted as well.

use crate::error::{Error, Result};
use crate::priority::Priority;
use crate::var::Var;

use super::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Lt,
    Gt,
    Or,
    And,
    LParen,
    RParen,
    Dot,
    Bot,
    Top,
    Mu,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            chars: src.char_indices().peekable(),
            src,
        };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next_tok()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn err(&self, msg: impl Into<String>, at: usize) -> Error {
        let (line, col) = line_col(self.src, at);
        Error::syntax(msg, line, col)
    }

    fn next_tok(&mut self) -> Result<(Tok, usize)> {
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_whitespace() {
                self.chars.next();
            } else {
                break;
            }
        }
        let Some((at, c)) = self.chars.next() else {
            return Ok((Tok::End, self.src.len()));
        };
        let tok = match c {
            '<' | '⟨' => Tok::Lt,
            '>' | '⟩' => Tok::Gt,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            '∨' => Tok::Or,
            '∧' => Tok::And,
            '⊥' => Tok::Bot,
            '⊤' => Tok::Top,
            'μ' => Tok::Mu,
            '\\' => match self.chars.next() {
                Some((_, '/')) => Tok::Or,
                _ => return Err(self.err("expected `\\/`", at)),
            },
            '/' => match self.chars.next() {
                Some((_, '\\')) => Tok::And,
                _ => return Err(self.err("expected `/\\`", at)),
            },
            c if c.is_ascii_digit() => {
                let mut s = String::from(c);
                while let Some(&(_, d)) = self.chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                Tok::Num(s.parse().map_err(|_| self.err("priority out of range", at))?)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::from(c);
                while let Some(&(_, d)) = self.chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        s.push(d);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                match s.as_str() {
                    "mu" => Tok::Mu,
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Ident(s),
                }
            }
            other => return Err(self.err(format!("unexpected character {other:?}"), at)),
        };
        Ok((tok, at))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = line_col(self.src, self.toks[self.pos].1);
        Error::syntax(msg, line, col)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}, found {:?}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.meet()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Expr::join(acc, self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Expr::meet(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Lt => {
                self.bump();
                let k = match self.bump() {
                    Tok::Num(k) => k,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("expected a priority"));
                    }
                };
                self.expect(Tok::Gt, "`>`")?;
                Ok(Expr::Pri(Priority(k), Box::new(self.unary()?)))
            }
            Tok::Mu => {
                self.bump();
                let x = match self.peek().clone() {
                    Tok::Ident(x) => {
                        self.bump();
                        x
                    }
                    _ => return Err(self.err("expected a variable after `mu`")),
                };
                self.expect(Tok::Dot, "`.`")?;
                Ok(Expr::Mu(Var::new(x), Box::new(self.expr()?)))
            }
            Tok::Ident(x) => {
                self.bump();
                Ok(Expr::Var(Var::new(x)))
            }
            Tok::Bot => {
                self.bump();
                Ok(Expr::Bot)
            }
            Tok::Top => {
                self.bump();
                Ok(Expr::Top)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            other => Err(self.err(format!("unexpected {other:?}"))),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, pos: 0, src: text };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(format!("trailing input {:?}", p.peek())));
    }
    Ok(e)
}

/// ASCII rendering with the fewest parentheses that reparse to the same tree.
pub fn print_expr(t: &Expr) -> String {
    let mut out = String::new();
    write(t, 0, true, &mut out);
    out
}

// prec: 0 anywhere, 1 join operand, 2 meet operand, 3 under a prefix.
fn write(t: &Expr, prec: u8, rightmost: bool, out: &mut String) {
    let (own, needs) = match t {
        Expr::Join(..) => (1, prec > 1),
        Expr::Meet(..) => (2, prec > 2),
        Expr::Mu(..) => (0, !rightmost),
        _ => (4, false),
    };
    let _ = own;
    if needs {
        out.push('(');
        write(t, 0, true, out);
        out.push(')');
        return;
    }
    match t {
        Expr::Var(x) => out.push_str(x.as_str()),
        Expr::Bot => out.push_str("bot"),
        Expr::Top => out.push_str("top"),
        Expr::Pri(k, c) => {
            out.push('<');
            out.push_str(&k.to_string());
            out.push_str("> ");
            write(c, 3, rightmost, out);
        }
        Expr::Join(a, b) => {
            write(a, 1, false, out);
            out.push_str(" \\/ ");
            write(b, 2, rightmost, out);
        }
        Expr::Meet(a, b) => {
            write(a, 2, false, out);
            out.push_str(" /\\ ");
            write(b, 3, rightmost, out);
        }
        Expr::Mu(x, body) => {
            out.push_str("mu ");
            out.push_str(x.as_str());
            out.push_str(" . ");
            write(body, 0, true, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_pattern_parses() {
        let t = parse_expr("mu y . x0 \\/ (x1 /\\ <2> y)").unwrap();
        let want = Expr::mu(
            "y",
            Expr::join(Expr::var("x0"), Expr::meet(Expr::var("x1"), Expr::pri(2, Expr::var("y")))),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn prefix_binds_tightest() {
        assert_eq!(parse_expr("<0> x").unwrap(), Expr::pri(0, Expr::var("x")));
        assert_eq!(
            parse_expr("<1> x /\\ y").unwrap(),
            Expr::meet(Expr::pri(1, Expr::var("x")), Expr::var("y"))
        );
        assert_eq!(
            parse_expr("a \\/ b /\\ c").unwrap(),
            Expr::join(Expr::var("a"), Expr::meet(Expr::var("b"), Expr::var("c")))
        );
    }

    #[test]
    fn unicode_forms() {
        assert_eq!(
            parse_expr("μy.⟨3⟩(y ∧ ⊤) ∨ ⊥").unwrap(),
            parse_expr("mu y . <3> (y /\\ top) \\/ bot").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("x \\/\n  (y /\\ ").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 9)),
            other => panic!("{other}"),
        }
        assert!(parse_expr("<x> y").is_err());
        assert!(parse_expr("x y").is_err());
        assert!(parse_expr("mu . x").is_err());
    }

    #[test]
    fn printing_keeps_structure() {
        for s in [
            "a \\/ (b \\/ c)",
            "(a \\/ b) /\\ c",
            "<2> (a /\\ b)",
            "(mu y . y) \\/ x",
            "x \\/ mu y . <1> y /\\ x",
            "<3> mu z . z",
            "a /\\ (b /\\ c)",
        ] {
            let t = parse_expr(s).unwrap();
            assert_eq!(print_expr(&t), s);
            assert_eq!(parse_expr(&print_expr(&t)).unwrap(), t);
        }
    }
}
