use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Eq,
    Pipe,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Pipe => "`|`".into(),
        }
    }

    /// Tokens after which a line break does not end the statement.
    fn continues(&self) -> bool {
        matches!(
            self,
            Tok::Plus | Tok::Minus | Tok::Star | Tok::Slash | Tok::Caret | Tok::Comma | Tok::Colon | Tok::Eq
        )
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Line breaks inside brackets or after a binary operator are dropped.
pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out: Vec<Token> = Vec::new();
    let mut depth = 0i32;
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let tok = match c {
            '\n' => {
                let keep = depth == 0
                    && out.last().map(|t| !t.tok.continues() && t.tok != Tok::Newline).unwrap_or(false);
                i += 1;
                line += 1;
                col = 1;
                if keep {
                    out.push(Token { tok: Tok::Newline, line: l0, col: c0 });
                }
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_digit() || c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let word = |ch: char| if c.is_ascii_digit() { ch.is_ascii_digit() } else { ch.is_ascii_alphanumeric() || ch == '_' };
                while i < chars.len() && word(chars[i]) {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = if c.is_ascii_digit() { Tok::Int(s.parse().unwrap()) } else { Tok::Ident(s) };
                out.push(Token { tok, line: l0, col: c0 });
                continue;
            }
            c if c.is_ascii_whitespace() => None,
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => {
                depth += 1;
                Some(Tok::LParen)
            }
            ')' => {
                depth -= 1;
                Some(Tok::RParen)
            }
            '[' => {
                depth += 1;
                Some(Tok::LBracket)
            }
            ']' => {
                depth -= 1;
                Some(Tok::RBracket)
            }
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '=' => Some(Tok::Eq),
            '|' => Some(Tok::Pipe),
            c if !c.is_ascii() => {
                return Err(ParseError::new(line, col, format!("non-ASCII character `{c}` (use `^` for powers)")));
            }
            c => return Err(ParseError::new(line, col, format!("unexpected character `{c}`"))),
        };
        if let Some(tok) = tok {
            out.push(Token { tok, line: l0, col: c0 });
        }
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
