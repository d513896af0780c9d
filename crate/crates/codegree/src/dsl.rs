//! Construction DSL: a small text format describing the group families,
//! with a hand-rolled tokenizer/parser that reports line/column positions.
//!
//! Grammar (LL(1), whitespace-insensitive, `#` starts a comment to
//! end-of-line):
//!
//! ```text
//! spec   := elemab(p, n) | cyclic(n) | dirprod(spec, spec)
//!         | sdp(q, dim, [matrix, ...], complement = "name")
//!         | sl2(f) | frobsinger(pk, q, t) | named("tag", param, ...)
//! matrix := [row, ...];  row := [num, ...]
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    ElemAb { p: u64, n: u32 },
    Cyclic { n: u64 },
    DirProd(Box<GroupSpec>, Box<GroupSpec>),
    SdpMatrix { q: u64, dim: usize, matrices: Vec<Vec<Vec<u64>>>, complement: String },
    Sl2 { f: u32 },
    FrobSinger { pk: u64, q: u64, copies: u32 },
    Named { tag: String, params: Vec<u64> },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::ElemAb { p, n } => write!(f, "elemab({},{})", p, n),
            GroupSpec::Cyclic { n } => write!(f, "cyclic({})", n),
            GroupSpec::DirProd(a, b) => write!(f, "dirprod({},{})", a, b),
            GroupSpec::SdpMatrix { q, dim, matrices, complement } => {
                write!(f, "sdp({},{},[", q, dim)?;
                for (i, m) in matrices.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for (j, row) in m.iter().enumerate() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "[")?;
                        for (k, v) in row.iter().enumerate() {
                            if k > 0 {
                                write!(f, ",")?;
                            }
                            write!(f, "{}", v)?;
                        }
                        write!(f, "]")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "],complement=\"{}\")", complement)
            }
            GroupSpec::Sl2 { f: fp } => write!(f, "sl2({})", fp),
            GroupSpec::FrobSinger { pk, q, copies } => {
                write!(f, "frobsinger({},{},{})", pk, q, copies)
            }
            GroupSpec::Named { tag, params } => {
                write!(f, "named(\"{}\"", tag)?;
                for p in params {
                    write!(f, ",{}", p)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(u64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{}'", s),
            Tok::Number(n) => write!(f, "number {}", n),
            Tok::Str(s) => write!(f, "string \"{}\"", s),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Equals => write!(f, "'='"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                        line: &mut usize,
                        col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        match c {
            '#' => {
                while let Some(&d) = chars.peek() {
                    bump(&mut chars, &mut line, &mut col);
                    if d == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars, &mut line, &mut col);
            }
            '(' | ')' | '[' | ']' | ',' | '=' => {
                bump(&mut chars, &mut line, &mut col);
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    _ => Tok::Equals,
                };
                toks.push((t, tl, tc));
            }
            '"' => {
                bump(&mut chars, &mut line, &mut col);
                let mut s = String::new();
                loop {
                    match chars.peek() {
                        Some('"') => {
                            bump(&mut chars, &mut line, &mut col);
                            break;
                        }
                        Some(_) => s.push(bump(&mut chars, &mut line, &mut col)),
                        None => {
                            return Err(Error::Parse {
                                line: tl,
                                col: tc,
                                msg: "unterminated string literal".into(),
                            })
                        }
                    }
                }
                toks.push((Tok::Str(s), tl, tc));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                let n: u64 = s.parse().map_err(|_| Error::Parse {
                    line: tl,
                    col: tc,
                    msg: format!("number '{}' out of range", s),
                })?;
                toks.push((Tok::Number(n), tl, tc));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), tl, tc));
            }
            other => {
                return Err(Error::Parse {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character '{}'", other),
                })
            }
        }
    }
    Ok(Lexer { toks, pos: 0, end: (line, col) })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|&(_, l, c)| (l, c)).unwrap_or(self.end)
    }

    fn next(&mut self, expected: &str) -> Result<Tok> {
        let (l, c) = self.here();
        match self.toks.get(self.pos) {
            Some((t, _, _)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(Error::Parse {
                line: l,
                col: c,
                msg: format!("unexpected end of input, expected {}", expected),
            }),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (l, c) = self.here();
        let got = self.next(&want.to_string())?;
        if got == want {
            Ok(())
        } else {
            Err(Error::Parse { line: l, col: c, msg: format!("expected {}, got {}", want, got) })
        }
    }

    fn number(&mut self) -> Result<u64> {
        let (l, c) = self.here();
        match self.next("a number")? {
            Tok::Number(n) => Ok(n),
            got => {
                Err(Error::Parse { line: l, col: c, msg: format!("expected a number, got {}", got) })
            }
        }
    }

    fn string(&mut self) -> Result<String> {
        let (l, c) = self.here();
        match self.next("a string")? {
            Tok::Str(s) => Ok(s),
            got => {
                Err(Error::Parse { line: l, col: c, msg: format!("expected a string, got {}", got) })
            }
        }
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut lx = lex(text)?;
    let spec = parse_node(&mut lx)?;
    if let Some(t) = lx.peek() {
        let (l, c) = lx.here();
        return Err(Error::Parse {
            line: l,
            col: c,
            msg: format!("trailing input after spec: {}", t),
        });
    }
    Ok(spec)
}

fn parse_node(lx: &mut Lexer) -> Result<GroupSpec> {
    let (l, c) = lx.here();
    let head = match lx.next("a spec keyword")? {
        Tok::Ident(s) => s,
        got => {
            return Err(Error::Parse {
                line: l,
                col: c,
                msg: format!(
                    "expected one of elemab/cyclic/dirprod/sdp/sl2/frobsinger/named, got {}",
                    got
                ),
            })
        }
    };
    lx.expect(Tok::LParen)?;
    let spec = match head.as_str() {
        "elemab" => {
            let p = lx.number()?;
            lx.expect(Tok::Comma)?;
            let n = lx.number()?;
            if !crate::fq::is_prime(p) {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: format!("elemab base {} is not prime", p),
                });
            }
            if n == 0 || n > u64::from(u32::MAX) {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: "elemab rank must be a positive integer".into(),
                });
            }
            GroupSpec::ElemAb { p, n: n as u32 }
        }
        "cyclic" => {
            let n = lx.number()?;
            if n == 0 {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: "cyclic order must be positive".into(),
                });
            }
            GroupSpec::Cyclic { n }
        }
        "dirprod" => {
            let a = parse_node(lx)?;
            lx.expect(Tok::Comma)?;
            let b = parse_node(lx)?;
            GroupSpec::DirProd(Box::new(a), Box::new(b))
        }
        "sdp" => {
            let q = lx.number()?;
            lx.expect(Tok::Comma)?;
            let dim = lx.number()? as usize;
            lx.expect(Tok::Comma)?;
            let matrices = parse_matrix_list(lx, dim)?;
            lx.expect(Tok::Comma)?;
            let (kl, kc) = lx.here();
            match lx.next("'complement'")? {
                Tok::Ident(k) if k == "complement" => {}
                got => {
                    return Err(Error::Parse {
                        line: kl,
                        col: kc,
                        msg: format!("expected 'complement', got {}", got),
                    })
                }
            }
            lx.expect(Tok::Equals)?;
            let complement = lx.string()?;
            if !crate::fq::is_prime(q) {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: format!("sdp field size {} is not prime", q),
                });
            }
            if dim == 0 || matrices.is_empty() {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: "sdp needs a positive dimension and at least one matrix".into(),
                });
            }
            GroupSpec::SdpMatrix { q, dim, matrices, complement }
        }
        "sl2" => {
            let f = lx.number()?;
            GroupSpec::Sl2 { f: f as u32 }
        }
        "frobsinger" => {
            let pk = lx.number()?;
            lx.expect(Tok::Comma)?;
            let q = lx.number()?;
            lx.expect(Tok::Comma)?;
            let copies = lx.number()?;
            if copies == 0 {
                return Err(Error::Parse {
                    line: l,
                    col: c,
                    msg: "frobsinger copy count must be positive".into(),
                });
            }
            GroupSpec::FrobSinger { pk, q, copies: copies as u32 }
        }
        "named" => {
            let tag = lx.string()?;
            let mut params = Vec::new();
            while lx.peek() == Some(&Tok::Comma) {
                lx.expect(Tok::Comma)?;
                params.push(lx.number()?);
            }
            GroupSpec::Named { tag, params }
        }
        other => {
            return Err(Error::Parse {
                line: l,
                col: c,
                msg: format!(
                    "unknown spec keyword '{}' (expected elemab/cyclic/dirprod/sdp/sl2/frobsinger/named)",
                    other
                ),
            })
        }
    };
    lx.expect(Tok::RParen)?;
    Ok(spec)
}

fn parse_matrix_list(lx: &mut Lexer, dim: usize) -> Result<Vec<Vec<Vec<u64>>>> {
    lx.expect(Tok::LBracket)?;
    let mut out = Vec::new();
    loop {
        out.push(parse_matrix(lx, dim)?);
        match lx.peek() {
            Some(Tok::Comma) => lx.expect(Tok::Comma)?,
            _ => break,
        }
    }
    lx.expect(Tok::RBracket)?;
    Ok(out)
}

fn parse_matrix(lx: &mut Lexer, dim: usize) -> Result<Vec<Vec<u64>>> {
    let (l, c) = lx.here();
    lx.expect(Tok::LBracket)?;
    let mut rows = Vec::new();
    loop {
        rows.push(parse_row(lx)?);
        match lx.peek() {
            Some(Tok::Comma) => lx.expect(Tok::Comma)?,
            _ => break,
        }
    }
    lx.expect(Tok::RBracket)?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Parse {
            line: l,
            col: c,
            msg: format!("matrix must be {0}x{0}", dim),
        });
    }
    Ok(rows)
}

fn parse_row(lx: &mut Lexer) -> Result<Vec<u64>> {
    lx.expect(Tok::LBracket)?;
    let mut row = Vec::new();
    loop {
        row.push(lx.number()?);
        match lx.peek() {
            Some(Tok::Comma) => lx.expect(Tok::Comma)?,
            _ => break,
        }
    }
    lx.expect(Tok::RBracket)?;
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_leaves() {
        assert_eq!(parse_spec("elemab(3,2)").unwrap(), GroupSpec::ElemAb { p: 3, n: 2 });
        assert_eq!(parse_spec("cyclic(9)").unwrap(), GroupSpec::Cyclic { n: 9 });
        assert_eq!(parse_spec("sl2(3)").unwrap(), GroupSpec::Sl2 { f: 3 });
        assert_eq!(
            parse_spec("frobsinger(4, 3, 1)").unwrap(),
            GroupSpec::FrobSinger { pk: 4, q: 3, copies: 1 }
        );
    }

    #[test]
    fn parses_nested_dirprod() {
        let s = parse_spec("dirprod(elemab(2,1), elemab(3,1))").unwrap();
        assert_eq!(
            s,
            GroupSpec::DirProd(
                Box::new(GroupSpec::ElemAb { p: 2, n: 1 }),
                Box::new(GroupSpec::ElemAb { p: 3, n: 1 })
            )
        );
    }

    #[test]
    fn parses_sdp_with_matrices() {
        let s =
            parse_spec("sdp(3, 2, [[[0,2],[1,0]], [[1,0],[0,2]]], complement=\"D8\")").unwrap();
        match s {
            GroupSpec::SdpMatrix { q, dim, matrices, complement } => {
                assert_eq!((q, dim), (3, 2));
                assert_eq!(matrices.len(), 2);
                assert_eq!(matrices[0], vec![vec![0, 2], vec![1, 0]]);
                assert_eq!(complement, "D8");
            }
            other => panic!("wrong node: {:?}", other),
        }
    }

    #[test]
    fn parses_named_with_params() {
        let s = parse_spec("named(\"TwoStepFrobenius\", 3, 7, 2, 1)").unwrap();
        assert_eq!(
            s,
            GroupSpec::Named { tag: "TwoStepFrobenius".into(), params: vec![3, 7, 2, 1] }
        );
        let s = parse_spec("named(\"SL2of3\")").unwrap();
        assert_eq!(s, GroupSpec::Named { tag: "SL2of3".into(), params: vec![] });
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let s = parse_spec("  dirprod( # inner comment\n  cyclic(2), cyclic(3))  ").unwrap();
        assert_eq!(
            s,
            GroupSpec::DirProd(
                Box::new(GroupSpec::Cyclic { n: 2 }),
                Box::new(GroupSpec::Cyclic { n: 3 })
            )
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_spec("dirprod(cyclic(2)\n  cyclic(3))") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!(line, 2);
                assert!(col >= 1);
                assert!(msg.contains("expected ','"), "msg: {}", msg);
            }
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_spec("elemab(4,1)").is_err()); // 4 not prime
        assert!(parse_spec("mystery(1)").is_err());
        assert!(parse_spec("cyclic(3) cyclic(2)").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let texts = [
            "elemab(3,2)",
            "cyclic(12)",
            "dirprod(elemab(2,1),dirprod(cyclic(5),sl2(2)))",
            "sdp(3,2,[[[0,2],[1,0]],[[1,0],[0,2]]],complement=\"D8\")",
            "frobsinger(4,3,1)",
            "named(\"Q8onCq2\",5)",
            "named(\"ESminus32onC3p4\")",
        ];
        for t in texts {
            let ast = parse_spec(t).unwrap();
            let printed = ast.to_string();
            assert_eq!(parse_spec(&printed).unwrap(), ast, "round trip of {}", t);
        }
    }
}
