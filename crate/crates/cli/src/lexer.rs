use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Int(n) => format!("`{n}`"),
            Token::Str(s) => format!("\"{s}\""),
            Token::Sym(c) => format!("`{c}`"),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct Lexer<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    col: usize,
}

pub const SYMBOLS: &str = "[],=()+-*/^";

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src, offset: 0, line: 1, col: 1 }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek_char().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    /// Next token and where it starts. Unknown characters come back as `Sym`.
    pub fn next_token(&mut self) -> (Token, Pos) {
        self.skip_ws();
        let pos = self.pos();
        let Some(c) = self.peek_char() else { return (Token::Eof, pos) };
        if c.is_ascii_alphabetic() || c == '_' {
            let start = self.offset;
            while self.peek_char().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                self.bump();
            }
            return (Token::Ident(self.src[start..self.offset].to_string()), pos);
        }
        if c.is_ascii_digit() {
            let start = self.offset;
            while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
            let n: BigInt = self.src[start..self.offset].parse().expect("digits");
            return (Token::Int(n), pos);
        }
        if c == '"' {
            self.bump();
            let start = self.offset;
            while self.peek_char().is_some_and(|c| c != '"' && c != '\n') {
                self.bump();
            }
            if self.peek_char() != Some('"') {
                // unterminated: report the opening quote
                return (Token::Sym('"'), pos);
            }
            let s = self.src[start..self.offset].to_string();
            self.bump();
            return (Token::Str(s), pos);
        }
        self.bump();
        (Token::Sym(c), pos)
    }

    /// A bare word: everything up to the next whitespace.
    pub fn raw_word(&mut self) -> (String, Pos) {
        self.skip_ws();
        let pos = self.pos();
        let start = self.offset;
        while self.peek_char().is_some_and(|c| !c.is_whitespace()) {
            self.bump();
        }
        (self.src[start..self.offset].to_string(), pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let mut lx = Lexer::new("ring Q[x]\n  x^2 - 3/4");
        let toks: Vec<(Token, Pos)> = std::iter::from_fn(|| {
            let t = lx.next_token();
            (t.0 != Token::Eof).then_some(t)
        })
        .collect();
        assert_eq!(toks[0], (Token::Ident("ring".into()), Pos { line: 1, col: 1 }));
        assert_eq!(toks[2], (Token::Sym('['), Pos { line: 1, col: 7 }));
        assert_eq!(toks[5], (Token::Ident("x".into()), Pos { line: 2, col: 3 }));
        assert_eq!(toks.last().unwrap().0, Token::Int(4.into()));
    }
}
