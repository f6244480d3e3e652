//! Tokenizer. Newlines are statement terminators, not whitespace, so
//! they come through as tokens; everything else is free-form.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// A word: letters, digits, underscores. `ident_like` marks words
    /// that start with a letter and can therefore name a variable.
    Word { text: String, ident_like: bool },
    Kw(Kw),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Plus,
    Backslash,
    Amp,
    Star,
    Eq,
    /// Statement terminator: newline or `;`.
    Term,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kw {
    Solve,
    In,
    Anti,
    Assoc,
    LocalAssoc,
    Group,
    Af,
}

impl Kw {
    pub(crate) fn as_str(self) -> &'static str {
        match self {
            Kw::Solve => "solve",
            Kw::In => "in",
            Kw::Anti => "anti",
            Kw::Assoc => "assoc",
            Kw::LocalAssoc => "localassoc",
            Kw::Group => "group",
            Kw::Af => "af",
        }
    }

    fn from_word(word: &str) -> Option<Kw> {
        Some(match word {
            "solve" => Kw::Solve,
            "in" => Kw::In,
            "anti" => Kw::Anti,
            "assoc" => Kw::Assoc,
            "localassoc" => Kw::LocalAssoc,
            "group" => Kw::Group,
            "af" => Kw::Af,
            _ => return None,
        })
    }
}

impl Tok {
    /// Short description for diagnostics.
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Word { text, .. } => format!("`{text}`"),
            Tok::Kw(kw) => format!("keyword `{}`", kw.as_str()),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Term => "end of statement".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn lex(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = source.chars().peekable();

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_column) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };

        let tok = match c {
            '\n' | ';' => {
                bump(&mut chars);
                Some(Tok::Term)
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                None
            }
            '#' => {
                // Comment runs to end of line; the newline itself still
                // terminates the statement.
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                None
            }
            '{' => {
                bump(&mut chars);
                Some(Tok::LBrace)
            }
            '}' => {
                bump(&mut chars);
                Some(Tok::RBrace)
            }
            '(' => {
                bump(&mut chars);
                Some(Tok::LParen)
            }
            ')' => {
                bump(&mut chars);
                Some(Tok::RParen)
            }
            ',' => {
                bump(&mut chars);
                Some(Tok::Comma)
            }
            '+' | '∪' => {
                bump(&mut chars);
                Some(Tok::Plus)
            }
            '\\' => {
                bump(&mut chars);
                Some(Tok::Backslash)
            }
            '&' => {
                bump(&mut chars);
                Some(Tok::Amp)
            }
            '*' => {
                bump(&mut chars);
                Some(Tok::Star)
            }
            '=' => {
                bump(&mut chars);
                Some(Tok::Eq)
            }
            c if c.is_alphanumeric() => {
                let ident_like = c.is_alphabetic();
                let mut text = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_alphanumeric() || c == '_')
                {
                    text.push(bump(&mut chars));
                }
                Some(match Kw::from_word(&text) {
                    Some(kw) => Tok::Kw(kw),
                    None => Tok::Word { text, ident_like },
                })
            }
            other => {
                return Err(ParseError {
                    line: tok_line,
                    column: tok_column,
                    message: format!("unexpected character {other:?}"),
                    expected: Vec::new(),
                });
            }
        };
        if let Some(tok) = tok {
            tokens.push(Token {
                tok,
                line: tok_line,
                column: tok_column,
            });
        }
    }
    Ok(tokens)
}
