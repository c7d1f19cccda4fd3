use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(u64),
    /// Upper-case operator keyword: X WX F G Y WY U R S T.
    Keyword(&'static str),
    Bang,
    Amp,
    Pipe,
    Arrow,
    Lt,
    Gt,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semi,
    Plus,
    Star,
    Question,
    Comma,
    LBrace,
    RBrace,
    At,
    Dot,
    ColonDash,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Number(n) => format!("'{n}'"),
            Tok::Keyword(k) => format!("'{k}'"),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Lt => "'<'".into(),
            Tok::Gt => "'>'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Semi => "';'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::Question => "'?'".into(),
            Tok::Comma => "','".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::At => "'@'".into(),
            Tok::Dot => "'.'".into(),
            Tok::ColonDash => "':-'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const KEYWORDS: [&str; 10] = ["X", "WX", "F", "G", "Y", "WY", "U", "R", "S", "T"];

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let push = |out: &mut Vec<Token>, tok: Tok| {
            out.push(Token {
                tok,
                line: start_line,
                column: start_col,
            })
        };

        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                column += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            column += i - start;
            if c.is_ascii_lowercase() {
                push(&mut out, Tok::Ident(word));
            } else if let Some(k) = KEYWORDS.iter().find(|k| **k == word) {
                push(&mut out, Tok::Keyword(k));
            } else {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    "operator or lower-case identifier",
                    format!("'{word}'"),
                ));
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            let n = digits.parse::<u64>().map_err(|_| {
                ParseError::new(start_line, start_col, "number within range", digits.clone())
            })?;
            push(&mut out, Tok::Number(n));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match (c, next) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            (':', Some('-')) => (Tok::ColonDash, 2),
            ('!', _) => (Tok::Bang, 1),
            ('&', _) => (Tok::Amp, 1),
            ('|', _) => (Tok::Pipe, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (';', _) => (Tok::Semi, 1),
            ('+', _) => (Tok::Plus, 1),
            ('*', _) => (Tok::Star, 1),
            ('?', _) => (Tok::Question, 1),
            (',', _) => (Tok::Comma, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('@', _) => (Tok::At, 1),
            ('.', _) => (Tok::Dot, 1),
            _ => return Err(ParseError::new(line, column, "token", format!("'{c}'"))),
        };
        push(&mut out, tok);
        i += width;
        column += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("a % note\n  ->X[1,inf)").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Keyword("X"),
                Tok::LBracket,
                Tok::Number(1),
                Tok::Comma,
                Tok::Ident("inf".into()),
                Tok::RParen,
                Tok::Eof
            ]
        );
        assert_eq!((toks[1].line, toks[1].column), (2, 3));
        assert_eq!((toks[8].line, toks[8].column), (2, 13));
    }

    #[test]
    fn unknown_character() {
        let err = tokenize("a # b").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        let err = tokenize("Foo").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }
}
