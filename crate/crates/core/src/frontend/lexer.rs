use std::fmt;

use super::error::{FrontendError, LexError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Fn,
    While,
    If,
    Else,
    Return,
    Break,
    Continue,
    True,
    False,
    And,
    Or,
    Not,
}

impl Keyword {
    fn from_word(word: &str) -> Option<Keyword> {
        Some(match word {
            "fn" => Keyword::Fn,
            "while" => Keyword::While,
            "if" => Keyword::If,
            "else" => Keyword::Else,
            "return" => Keyword::Return,
            "break" => Keyword::Break,
            "continue" => Keyword::Continue,
            "true" => Keyword::True,
            "false" => Keyword::False,
            "and" => Keyword::And,
            "or" => Keyword::Or,
            "not" => Keyword::Not,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Punct {
    Amp,
    Assign,
    PlusAssign,
    MinusAssign,
    StarAssign,
    SlashAssign,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Semi,
}

impl Punct {
    pub fn as_str(self) -> &'static str {
        match self {
            Punct::Amp => "&",
            Punct::Assign => "=",
            Punct::PlusAssign => "+=",
            Punct::MinusAssign => "-=",
            Punct::StarAssign => "*=",
            Punct::SlashAssign => "/=",
            Punct::EqEq => "==",
            Punct::NotEq => "!=",
            Punct::Lt => "<",
            Punct::Le => "<=",
            Punct::Gt => ">",
            Punct::Ge => ">=",
            Punct::Plus => "+",
            Punct::Minus => "-",
            Punct::Star => "*",
            Punct::Slash => "/",
            Punct::LParen => "(",
            Punct::RParen => ")",
            Punct::LBracket => "[",
            Punct::RBracket => "]",
            Punct::LBrace => "{",
            Punct::RBrace => "}",
            Punct::Comma => ",",
            Punct::Dot => ".",
            Punct::Colon => ":",
            Punct::Semi => ";",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    Int,
    Float,
    /// The lexeme keeps the quotes and escapes exactly as written.
    Str,
    Keyword(Keyword),
    Punct(Punct),
    /// Statements end at a newline (or `;`).
    Newline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
    /// Byte offset of the lexeme in the source.
    pub offset: usize,
}

impl Token {
    pub fn is_punct(&self, p: Punct) -> bool {
        self.kind == TokenKind::Punct(p)
    }

    pub fn is_keyword(&self, k: Keyword) -> bool {
        self.kind == TokenKind::Keyword(k)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Newline => f.write_str("newline"),
            _ => write!(f, "`{}`", self.lexeme),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_second(&self) -> Option<char> {
        let mut chars = self.src[self.pos..].chars();
        chars.next();
        chars.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn eat_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
    }

    fn error(&self, line: u32, column: u32, message: impl Into<String>) -> FrontendError {
        FrontendError::Lex(LexError { line, column, message: message.into() })
    }

    fn number(&mut self) -> Result<TokenKind, FrontendError> {
        self.eat_while(|c| c.is_ascii_digit());
        let mut kind = TokenKind::Int;
        if self.peek() == Some('.') && self.peek_second().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            self.eat_while(|c| c.is_ascii_digit());
            kind = TokenKind::Float;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let (line, column) = (self.line, self.column);
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error(line, column, "malformed exponent in number literal"));
            }
            self.eat_while(|c| c.is_ascii_digit());
            kind = TokenKind::Float;
        }
        Ok(kind)
    }

    fn string(&mut self, line: u32, column: u32) -> Result<(), FrontendError> {
        self.bump();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(self.error(line, column, "unterminated string literal")),
                Some('"') => return Ok(()),
                Some('\\') => {
                    let (l, c) = (self.line, self.column);
                    match self.bump() {
                        Some('n' | 't' | '"' | '\\') => {}
                        None => return Err(self.error(line, column, "unterminated string literal")),
                        Some(other) => {
                            return Err(self.error(l, c, format!("unknown escape `\\{other}`")))
                        }
                    }
                }
                Some(_) => {}
            }
        }
    }

    fn punct(&mut self, c: char) -> Option<Punct> {
        let next = self.peek_second();
        let (p, two) = match (c, next) {
            ('+', Some('=')) => (Punct::PlusAssign, true),
            ('-', Some('=')) => (Punct::MinusAssign, true),
            ('*', Some('=')) => (Punct::StarAssign, true),
            ('/', Some('=')) => (Punct::SlashAssign, true),
            ('=', Some('=')) => (Punct::EqEq, true),
            ('!', Some('=')) => (Punct::NotEq, true),
            ('<', Some('=')) => (Punct::Le, true),
            ('>', Some('=')) => (Punct::Ge, true),
            ('&', _) => (Punct::Amp, false),
            ('=', _) => (Punct::Assign, false),
            ('<', _) => (Punct::Lt, false),
            ('>', _) => (Punct::Gt, false),
            ('+', _) => (Punct::Plus, false),
            ('-', _) => (Punct::Minus, false),
            ('*', _) => (Punct::Star, false),
            ('/', _) => (Punct::Slash, false),
            ('(', _) => (Punct::LParen, false),
            (')', _) => (Punct::RParen, false),
            ('[', _) => (Punct::LBracket, false),
            (']', _) => (Punct::RBracket, false),
            ('{', _) => (Punct::LBrace, false),
            ('}', _) => (Punct::RBrace, false),
            (',', _) => (Punct::Comma, false),
            ('.', _) => (Punct::Dot, false),
            (':', _) => (Punct::Colon, false),
            (';', _) => (Punct::Semi, false),
            _ => return None,
        };
        self.bump();
        if two {
            self.bump();
        }
        Some(p)
    }
}

/// Splits source text into tokens. `#` starts a comment running to the end
/// of the line; comments and non-newline whitespace produce no tokens.
pub fn tokenize(source: &str) -> Result<Vec<Token>, FrontendError> {
    let mut lx = Lexer { src: source, pos: 0, line: 1, column: 1 };
    let mut tokens = Vec::new();
    while let Some(c) = lx.peek() {
        let (start, line, column) = (lx.pos, lx.line, lx.column);
        let kind = match c {
            '\n' => {
                lx.bump();
                TokenKind::Newline
            }
            c if c.is_whitespace() => {
                lx.bump();
                continue;
            }
            '#' => {
                lx.eat_while(|c| c != '\n');
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                lx.eat_while(|c| c.is_ascii_alphanumeric() || c == '_');
                match Keyword::from_word(&source[start..lx.pos]) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Ident,
                }
            }
            c if c.is_ascii_digit() => lx.number()?,
            '"' => {
                lx.string(line, column)?;
                TokenKind::Str
            }
            c => match lx.punct(c) {
                Some(p) => TokenKind::Punct(p),
                None => return Err(lx.error(line, column, format!("unexpected character `{c}`"))),
            },
        };
        tokens.push(Token { kind, lexeme: source[start..lx.pos].to_string(), line, column, offset: start });
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src).unwrap().into_iter().map(|t| (t.kind, t.lexeme)).collect()
    }

    #[test]
    fn compound_assignment() {
        assert_eq!(
            kinds("r *= x"),
            vec![
                (TokenKind::Ident, "r".into()),
                (TokenKind::Punct(Punct::StarAssign), "*=".into()),
                (TokenKind::Ident, "x".into()),
            ]
        );
    }

    #[test]
    fn empty_source() {
        assert!(tokenize("").unwrap().is_empty());
    }

    #[test]
    fn swap_argument() {
        let toks = kinds("append(&xs, x)");
        let lexemes: Vec<_> = toks.iter().map(|(_, l)| l.as_str()).collect();
        assert_eq!(lexemes, ["append", "(", "&", "xs", ",", "x", ")"]);
        assert_eq!(toks[2].0, TokenKind::Punct(Punct::Amp));
    }

    #[test]
    fn comments_and_positions() {
        let toks = tokenize("a = 1 # now a = 1\n  b").unwrap();
        assert_eq!(toks.len(), 5);
        assert_eq!(toks[3].kind, TokenKind::Newline);
        assert_eq!((toks[4].line, toks[4].column), (2, 3));
    }

    #[test]
    fn numbers() {
        assert_eq!(kinds("1.5")[0].0, TokenKind::Float);
        assert_eq!(kinds("2e10")[0].0, TokenKind::Float);
        assert_eq!(kinds("42")[0].0, TokenKind::Int);
        // `1.` followed by a name is an integer then a dot.
        assert_eq!(kinds("1.x").len(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        match tokenize("x = 1\ny = $") {
            Err(FrontendError::Lex(e)) => assert_eq!((e.line, e.column), (2, 5)),
            other => panic!("{other:?}"),
        }
        match tokenize("s = \"abc") {
            Err(FrontendError::Lex(e)) => {
                assert_eq!((e.line, e.column), (1, 5));
                assert!(e.message.contains("unterminated"));
            }
            other => panic!("{other:?}"),
        }
    }
}
