use thiserror::Error;

use super::{BinOp, Coord, Expr, Func};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("{line}:{column}: unexpected character {found:?}")]
    Lexical { line: usize, column: usize, found: char },
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, column: usize, name: String },
    #[error("{line}:{column}: coordinate `{name}` out of range for complex dimension {n}")]
    CoordinateOutOfRange {
        line: usize,
        column: usize,
        name: String,
        n: usize,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            ParseError::Lexical { line, column, .. }
            | ParseError::Syntax { line, column, .. }
            | ParseError::UnknownIdentifier { line, column, .. }
            | ParseError::CoordinateOutOfRange { line, column, .. } => (line, column),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            tokens.push(Token {
                tok,
                line: start_line,
                column: start_col,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            let mut is_int = true;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                if chars[i] == '.' {
                    is_int = false;
                }
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    is_int = false;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            let tok = if is_int {
                text.parse::<i64>().map(Tok::Int).ok()
            } else {
                text.parse::<f64>().map(Tok::Num).ok()
            };
            let tok = tok.ok_or_else(|| ParseError::Syntax {
                line: start_line,
                column: start_col,
                message: format!("malformed number `{text}`"),
            })?;
            tokens.push(Token {
                tok,
                line: start_line,
                column: start_col,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            tokens.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        return Err(ParseError::Lexical {
            line,
            column,
            found: c,
        });
    }
    tokens.push(Token { tok: Tok::End, line, column });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, expected: &str) -> ParseError {
        ParseError::Syntax {
            line: token.line,
            column: token.column,
            message: format!("expected {expected}, found {}", token.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(self.error_at(&t, expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.next();
            let exp = self.exponent()?;
            base = Expr::Pow(Box::new(base), exp);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i32, ParseError> {
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match t.tok {
            Tok::Int(v) => {
                let v = if negative { -v } else { v };
                i32::try_from(v).map_err(|_| ParseError::Syntax {
                    line: t.line,
                    column: t.column,
                    message: format!("exponent {v} out of range"),
                })
            }
            _ => Err(self.error_at(&t, "an integer exponent")),
        }
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        if self.peek().tok == Tok::LParen {
            self.next();
            let v = self.signed_int()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(v)
        } else {
            self.signed_int()
        }
    }

    fn coordinate(&self, name: &str, token: &Token) -> Result<Option<Expr>, ParseError> {
        let (head, digits) = name.split_at(1);
        if !(head == "x" || head == "y") || digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(None);
        }
        let k: usize = digits.parse().unwrap_or(0);
        if k == 0 || k > self.n {
            return Err(ParseError::CoordinateOutOfRange {
                line: token.line,
                column: token.column,
                name: name.to_string(),
                n: self.n,
            });
        }
        Ok(Some(Expr::Coord(if head == "x" { Coord::X(k) } else { Coord::Y(k) })))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(v) => Ok(Expr::Num(*v)),
            Tok::Int(v) => Ok(Expr::Num(*v as f64)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let name = name.clone();
                if let Some(c) = self.coordinate(&name, &t)? {
                    return Ok(c);
                }
                match name.as_str() {
                    "rsq" => Ok(Expr::rsq(self.n)),
                    "absq" => {
                        self.expect(Tok::LParen, "`(` after absq")?;
                        let idx = self.next();
                        let k = match idx.tok {
                            Tok::Int(k) if k >= 1 && (k as usize) <= self.n => k as usize,
                            Tok::Int(k) => {
                                return Err(ParseError::CoordinateOutOfRange {
                                    line: idx.line,
                                    column: idx.column,
                                    name: format!("absq({k})"),
                                    n: self.n,
                                })
                            }
                            _ => return Err(self.error_at(&idx, "a coordinate index")),
                        };
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::absq(k))
                    }
                    "log" | "exp" | "sqrt" => {
                        let func = match name.as_str() {
                            "log" => Func::Log,
                            "exp" => Func::Exp,
                            _ => Func::Sqrt,
                        };
                        self.expect(Tok::LParen, &format!("`(` after {name}"))?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                    _ => Err(ParseError::UnknownIdentifier {
                        line: t.line,
                        column: t.column,
                        name,
                    }),
                }
            }
            _ => Err(self.error_at(&t, "an expression")),
        }
    }
}

/// Parse a potential for complex dimension `n`.
pub fn parse(source: &str, n: usize) -> Result<Expr, ParseError> {
    let tokens = lex(source)?;
    let mut parser = Parser { tokens, pos: 0, n };
    let e = parser.expr()?;
    let t = parser.next();
    if t.tok != Tok::End {
        return Err(parser.error_at(&t, "an operator or end of input"));
    }
    Ok(e)
}
