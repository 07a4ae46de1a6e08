use std::fmt;

use num_bigint::BigUint;

use super::{DslError, ErrorKind};

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigUint),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Caret,
    Star,
    Plus,
    Minus,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Int(n) => write!(f, "`{n}`"),
            Token::Str(s) => write!(f, "{s:?}"),
            Token::LBrace => f.write_str("`{`"),
            Token::RBrace => f.write_str("`}`"),
            Token::LBracket => f.write_str("`[`"),
            Token::RBracket => f.write_str("`]`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Semi => f.write_str("`;`"),
            Token::Colon => f.write_str("`:`"),
            Token::Comma => f.write_str("`,`"),
            Token::Caret => f.write_str("`^`"),
            Token::Star => f.write_str("`*`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

/// Splits source text into tokens. `#` and `//` start line comments; `⊕`
/// lexes as `+`.
pub fn tokenize(src: &str) -> Result<Vec<(Token, Pos)>, DslError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let advance = |c: char, line: &mut usize, column: &mut usize| {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut column);
            continue;
        }
        if c == '#' || (c == '/' && src_peek2(&chars) == Some('/')) {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(c, &mut line, &mut column);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    advance(c, &mut line, &mut column);
                } else {
                    break;
                }
            }
            out.push((Token::Ident(s), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    advance(c, &mut line, &mut column);
                } else {
                    break;
                }
            }
            let n = s.parse().expect("digits parse");
            out.push((Token::Int(n), pos));
            continue;
        }
        if c == '"' {
            chars.next();
            advance(c, &mut line, &mut column);
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => {
                        advance('"', &mut line, &mut column);
                        break;
                    }
                    Some('\\') => {
                        advance('\\', &mut line, &mut column);
                        match chars.next() {
                            Some(e @ ('"' | '\\')) => {
                                advance(e, &mut line, &mut column);
                                s.push(e);
                            }
                            Some('n') => {
                                advance('n', &mut line, &mut column);
                                s.push('\n');
                            }
                            other => {
                                return Err(DslError::new(
                                    ErrorKind::Lexical,
                                    Pos { line, column },
                                    format!("bad escape {:?} in string", other.map(String::from).unwrap_or_default()),
                                ))
                            }
                        }
                    }
                    Some(c) => {
                        advance(c, &mut line, &mut column);
                        s.push(c);
                    }
                    None => return Err(DslError::new(ErrorKind::Lexical, pos, "unterminated string")),
                }
            }
            out.push((Token::Str(s), pos));
            continue;
        }
        let tok = match c {
            '{' => Token::LBrace,
            '}' => Token::RBrace,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            '(' => Token::LParen,
            ')' => Token::RParen,
            ';' => Token::Semi,
            ':' => Token::Colon,
            ',' => Token::Comma,
            '^' => Token::Caret,
            '*' | '·' => Token::Star,
            '+' | '⊕' => Token::Plus,
            '-' | '−' => Token::Minus,
            other => {
                return Err(DslError::new(ErrorKind::Lexical, pos, format!("unexpected character {other:?}")))
            }
        };
        chars.next();
        advance(c, &mut line, &mut column);
        out.push((tok, pos));
    }
    out.push((Token::Eof, Pos { line, column }));
    Ok(out)
}

fn src_peek2(chars: &std::iter::Peekable<std::str::Chars<'_>>) -> Option<char> {
    let mut it = chars.clone();
    it.next();
    it.next()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = tokenize("ring G { gen y3:3; }\n# note\nrel 2*y3^2 ⊕").unwrap();
        assert_eq!(toks[0], (Token::Ident("ring".into()), Pos { line: 1, column: 1 }));
        assert_eq!(toks[4].0, Token::Ident("y3".into()));
        let rel = toks.iter().find(|(t, _)| *t == Token::Ident("rel".into())).unwrap();
        assert_eq!(rel.1, Pos { line: 3, column: 1 });
        assert_eq!(toks[toks.len() - 2].0, Token::Plus);
    }

    #[test]
    fn lexical_errors() {
        let err = tokenize("ring $").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Lexical);
        assert_eq!(err.pos, Pos { line: 1, column: 6 });
        assert!(tokenize("\"open").is_err());
    }
}
