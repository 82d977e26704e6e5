//! Surface syntax for twist words and the plain-text file formats.
//!
//! Word grammar:
//!   expr  := term+
//!   term  := atom ["'"] ["^" integer]
//!   atom  := "t" digit | "@" name | "(" expr ")" | digit-run
//! "'" is inverse, "^" is a (possibly negative) power, whitespace separates
//! terms. A bare digit run is the usual compact shorthand: "43211234"
//! means t4 t3 t2 t1 t1 t2 t3 t4. "@name" resolves through the curve
//! library (or script abbreviations) to a twist word.

use crate::curves::{CurveClass, CurveDef, CurveError, CurveLibrary};
use crate::factorization::Move;
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("digit '{0}' outside 1..5")]
    BadDigit(char),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token: {0}")]
    UnexpectedToken(String),
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ParseError>,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn at_line(line: usize, e: ParseError) -> ParseError {
    ParseError::AtLine { line, source: Box::new(e) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Gen(u8),
    Name(String),
    Digits(String),
    LParen,
    RParen,
    Prime,
    Caret,
    Minus,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            't' => {
                chars.next();
                match chars.next() {
                    Some(d @ '1'..='5') => tokens.push(Token::Gen(d as u8 - b'0')),
                    Some(d) => return Err(ParseError::BadDigit(d)),
                    None => return Err(ParseError::UnexpectedEnd),
                }
            }
            '@' => {
                chars.next();
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(ParseError::UnexpectedChar('@'));
                }
                tokens.push(Token::Name(name));
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Digits(digits));
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            '\'' => {
                chars.next();
                tokens.push(Token::Prime);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            other => return Err(ParseError::UnexpectedChar(other)),
        }
    }
    Ok(tokens)
}

pub type NameResolver<'a> = &'a dyn Fn(&str) -> Option<Word>;

/// Resolver over a curve library alone.
pub fn library_resolver(lib: &CurveLibrary) -> impl Fn(&str) -> Option<Word> + '_ {
    |name: &str| lib.twist_word(name).ok().cloned()
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    resolve: NameResolver<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_expr(&mut self) -> Result<Word, ParseError> {
        let mut out = Word::identity(Alphabet::Twist);
        while let Some(tok) = self.peek() {
            if *tok == Token::RParen {
                break;
            }
            let term = self.parse_term()?;
            out = out.concat(&term).expect("twist alphabet");
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<Word, ParseError> {
        let mut word = match self.next().ok_or(ParseError::UnexpectedEnd)? {
            Token::Gen(i) => Word::generator(Alphabet::Twist, i).expect("index checked by lexer"),
            Token::Name(name) => {
                (self.resolve)(&name).ok_or(ParseError::UnknownName(name))?
            }
            Token::Digits(digits) => {
                let mut letters = Vec::new();
                for c in digits.chars() {
                    if !('1'..='5').contains(&c) {
                        return Err(ParseError::BadDigit(c));
                    }
                    letters.push(Letter::new(c as u8 - b'0'));
                }
                Word::reduce(Alphabet::Twist, letters).expect("digits checked")
            }
            Token::LParen => {
                let inner = self.parse_expr()?;
                match self.next() {
                    Some(Token::RParen) => inner,
                    Some(t) => return Err(ParseError::UnexpectedToken(format!("{t:?}"))),
                    None => return Err(ParseError::UnexpectedEnd),
                }
            }
            t => return Err(ParseError::UnexpectedToken(format!("{t:?}"))),
        };
        if self.peek() == Some(&Token::Prime) {
            self.next();
            word = word.invert();
        }
        if self.peek() == Some(&Token::Caret) {
            self.next();
            let negative = if self.peek() == Some(&Token::Minus) {
                self.next();
                true
            } else {
                false
            };
            let n: i32 = match self.next() {
                Some(Token::Digits(d)) => d
                    .parse()
                    .map_err(|_| ParseError::UnexpectedToken(d))?,
                Some(t) => return Err(ParseError::UnexpectedToken(format!("{t:?}"))),
                None => return Err(ParseError::UnexpectedEnd),
            };
            word = word.pow(if negative { -n } else { n });
        }
        Ok(word)
    }
}

/// Parses a word expression over the twist alphabet.
pub fn parse_word(input: &str, resolve: NameResolver<'_>) -> Result<Word, ParseError> {
    let mut parser = Parser { tokens: lex(input)?, pos: 0, resolve };
    let word = parser.parse_expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError::UnexpectedToken(format!("{:?}", parser.peek().unwrap())));
    }
    Ok(word)
}

/// Canonical printing; parse(print(w)) == w.
pub fn print_word(w: &Word) -> String {
    if w.is_empty() {
        return match w.alphabet() {
            Alphabet::Twist => "()".to_string(),
            Alphabet::Puncture => "1".to_string(),
        };
    }
    let prefix = w.alphabet().prefix();
    w.letters()
        .iter()
        .map(|l| {
            if l.inverse {
                format!("{prefix}{}'", l.index)
            } else {
                format!("{prefix}{}", l.index)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// A factorization file lists one twist expression per line. When a line is
/// a single "@name" the name is kept for reporting.
pub fn parse_factorization_file(
    text: &str,
    resolve: NameResolver<'_>,
) -> Result<Vec<(Option<String>, Word)>, ParseError> {
    let mut entries = Vec::new();
    for (lineno, line) in content_lines(text) {
        let word = parse_word(line, resolve).map_err(|e| at_line(lineno, e))?;
        let name = line
            .strip_prefix('@')
            .filter(|rest| rest.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
            .map(str::to_string);
        entries.push((name, word));
    }
    Ok(entries)
}

/// Certificate files list one move per line:
///   hurwitzL 3 | hurwitzR 1 | shift 2 | conj <word-expr>
pub fn parse_certificate_file(
    text: &str,
    resolve: NameResolver<'_>,
) -> Result<Vec<Move>, ParseError> {
    let mut moves = Vec::new();
    for (lineno, line) in content_lines(text) {
        let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let mv = match kind {
            "hurwitzL" | "hurwitzR" | "shift" => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| at_line(lineno, ParseError::MalformedLine(line.to_string())))?;
                match kind {
                    "hurwitzL" => Move::HurwitzLeft(n),
                    "hurwitzR" => Move::HurwitzRight(n),
                    _ => Move::CyclicShift(n),
                }
            }
            "conj" => {
                let w = parse_word(rest, resolve).map_err(|e| at_line(lineno, e))?;
                Move::GlobalConjugate(w)
            }
            _ => return Err(at_line(lineno, ParseError::MalformedLine(line.to_string()))),
        };
        moves.push(mv);
    }
    Ok(moves)
}

pub fn print_move(mv: &Move) -> String {
    match mv {
        Move::HurwitzLeft(i) => format!("hurwitzL {i}"),
        Move::HurwitzRight(i) => format!("hurwitzR {i}"),
        Move::CyclicShift(k) => format!("shift {k}"),
        Move::GlobalConjugate(w) => format!("conj {}", print_word(w)),
    }
}

/// Curve catalog lines extend a library:
///   name = chain <expr> <class>
///   name = image <expr> of <base> <class>
///   name = alias <base>
pub fn apply_catalog(text: &str, lib: &mut CurveLibrary) -> Result<(), ParseError> {
    for (lineno, line) in content_lines(text) {
        apply_catalog_line(line, lib).map_err(|e| at_line(lineno, e))?;
    }
    Ok(())
}

pub fn apply_catalog_line(line: &str, lib: &mut CurveLibrary) -> Result<(), ParseError> {
    let malformed = || ParseError::MalformedLine(line.to_string());
    let (name, def_text) = line.split_once('=').ok_or_else(malformed)?;
    let name = name.trim();
    let def_text = def_text.trim();
    if let Some(base) = def_text.strip_prefix("alias ") {
        let base = base.trim();
        let class = lib
            .lookup(base)
            .ok_or_else(|| CurveError::UnknownCurve(base.to_string()))?
            .class;
        let def = CurveDef::Image {
            conjugator: Word::identity(Alphabet::Twist),
            base: base.to_string(),
        };
        lib.add(name, def, class)?;
        return Ok(());
    }
    let (body, class_word) = def_text.rsplit_once(char::is_whitespace).ok_or_else(malformed)?;
    let class = match class_word {
        "separating" => CurveClass::Separating,
        "nonseparating" => CurveClass::Nonseparating,
        _ => return Err(malformed()),
    };
    let body = body.trim();
    let resolve = library_resolver(lib);
    if let Some(expr) = body.strip_prefix("chain ") {
        let word = parse_word(expr, &resolve)?;
        drop(resolve);
        lib.add(name, CurveDef::ChainBoundary(word), class)?;
    } else if let Some(rest) = body.strip_prefix("image ") {
        let (conj_expr, base) = rest.rsplit_once(" of ").ok_or_else(malformed)?;
        let conjugator = parse_word(conj_expr.trim(), &resolve)?;
        drop(resolve);
        let base = base.trim().to_string();
        lib.add(name, CurveDef::Image { conjugator, base }, class)?;
    } else {
        return Err(malformed());
    }
    Ok(())
}
