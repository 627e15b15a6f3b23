//! The Gauss code grammar.
//!
//! ```text
//! code   := kind ":" body
//! kind   := "knot" | "long" | "flatlong" | "link"
//! body   := tokens | tokens "/" tokens      ("/" only for link)
//! token  := ("O" | "U") id sign             e.g.  O3+  U12-
//! ```
//!
//! Tokens are whitespace separated; the `/` component separator stands alone.
//! Each chord id (a decimal >= 1) appears exactly twice, once as `O` and once
//! as `U`, with the same sign on both tokens. Serialization is canonical:
//! chords are renumbered in order of first occurrence and circular diagrams
//! are rotated to the lexicographically smallest token sequence, so equal
//! diagrams print identically.

use super::*;

/// Lexical and grammatical errors in a Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("missing ':' after the diagram kind")]
    MissingColon,
    #[error("unknown diagram kind {0:?}")]
    BadKind(String),
    #[error("malformed token {0:?} (expected e.g. O3+ or U12-)")]
    BadToken(String),
    #[error("bad chord id in token {0:?} (ids are decimals >= 1)")]
    BadChordId(String),
    #[error("chord {0} appears with two different signs")]
    SignMismatch(ChordId),
    #[error("'/' separator is only allowed in link codes")]
    UnexpectedSeparator,
    #[error("link codes need exactly one '/' separator")]
    MissingSeparator,
    #[error("expected a {expected:?} code but found {found:?}")]
    WrongKind { expected: Kind, found: Kind },
}

/// Any way a Gauss code can fail to denote a diagram.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] InvalidDiagram),
}

fn parse_token(tok: &str) -> Result<(Endpoint, Sign), ParseError> {
    let bad = || ParseError::BadToken(tok.to_string());
    let mut chars = tok.chars();
    let role = match chars.next().ok_or_else(bad)? {
        'O' => Role::Tail,
        'U' => Role::Head,
        _ => return Err(bad()),
    };
    let rest: &str = &tok[1..];
    let sign = match rest.chars().last().ok_or_else(bad)? {
        '+' => Sign::Plus,
        '-' => Sign::Minus,
        _ => return Err(bad()),
    };
    let digits = &rest[..rest.len() - 1];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::BadChordId(tok.to_string()));
    }
    let id: u32 = digits
        .parse()
        .map_err(|_| ParseError::BadChordId(tok.to_string()))?;
    if id == 0 {
        return Err(ParseError::BadChordId(tok.to_string()));
    }
    Ok((
        Endpoint {
            chord: ChordId(id),
            role,
        },
        sign,
    ))
}

fn parse_tokens(
    tokens: &[&str],
    signs: &mut BTreeMap<ChordId, Sign>,
) -> Result<Vec<Endpoint>, ParseError> {
    let mut endpoints = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let (endpoint, sign) = parse_token(tok)?;
        match signs.get(&endpoint.chord) {
            Some(s) if *s != sign => return Err(ParseError::SignMismatch(endpoint.chord)),
            _ => {
                signs.insert(endpoint.chord, sign);
            }
        }
        endpoints.push(endpoint);
    }
    Ok(endpoints)
}

fn token_string(tokens: &[(u32, Role, Sign)]) -> String {
    tokens
        .iter()
        .map(|(id, role, sign)| {
            let r = match role {
                Role::Tail => 'O',
                Role::Head => 'U',
            };
            let s = match sign {
                Sign::Plus => '+',
                Sign::Minus => '-',
            };
            format!("{r}{id}{s}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl Diagram {
    /// Parses a Gauss code into the diagram kind it names.
    pub fn parse(code: &str) -> Result<Diagram, CodeError> {
        let (kind, body) = code.split_once(':').ok_or(ParseError::MissingColon)?;
        let kind = match kind.trim() {
            "knot" => Kind::Knot,
            "long" => Kind::Long,
            "flatlong" => Kind::FlatLong,
            "link" => Kind::Link,
            other => return Err(ParseError::BadKind(other.to_string()).into()),
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let separators = tokens.iter().filter(|t| **t == "/").count();
        if kind != Kind::Link && separators > 0 {
            return Err(ParseError::UnexpectedSeparator.into());
        }
        if kind == Kind::Link && separators != 1 {
            return Err(ParseError::MissingSeparator.into());
        }
        let mut signs = BTreeMap::new();
        match kind {
            Kind::Knot => {
                let endpoints = parse_tokens(&tokens, &mut signs)?;
                Ok(Diagram::Knot(KnotDiagram::new(endpoints, signs)?))
            }
            Kind::Long => {
                let endpoints = parse_tokens(&tokens, &mut signs)?;
                Ok(Diagram::Long(LongDiagram::new(endpoints, signs)?))
            }
            Kind::FlatLong => {
                let endpoints = parse_tokens(&tokens, &mut signs)?;
                Ok(Diagram::Flat(LongDiagram::new(endpoints, signs)?.forget()))
            }
            Kind::Link => {
                let split = tokens.iter().position(|t| *t == "/").unwrap();
                let first = parse_tokens(&tokens[..split], &mut signs)?;
                let second = parse_tokens(&tokens[split + 1..], &mut signs)?;
                Ok(Diagram::Link(LinkDiagram::new([first, second], signs)?))
            }
        }
    }

    /// Canonical Gauss code; `parse(serialize(d))` always gives `d` back.
    pub fn serialize(&self) -> String {
        match self {
            Diagram::Knot(d) => d.serialize(),
            Diagram::Long(d) => d.serialize(),
            Diagram::Flat(d) => d.serialize(),
            Diagram::Link(d) => d.serialize(),
        }
    }

    pub fn as_knot(&self) -> Option<&KnotDiagram> {
        match self {
            Diagram::Knot(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_long(&self) -> Option<&LongDiagram> {
        match self {
            Diagram::Long(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_flat(&self) -> Option<&FlatDiagram> {
        match self {
            Diagram::Flat(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_link(&self) -> Option<&LinkDiagram> {
        match self {
            Diagram::Link(d) => Some(d),
            _ => None,
        }
    }
}

fn expect_kind(code: &str, expected: Kind) -> Result<Diagram, CodeError> {
    let d = Diagram::parse(code)?;
    if d.kind() != expected {
        return Err(ParseError::WrongKind {
            expected,
            found: d.kind(),
        }
        .into());
    }
    Ok(d)
}

impl KnotDiagram {
    pub fn parse(code: &str) -> Result<Self, CodeError> {
        expect_kind(code, Kind::Knot).map(|d| match d {
            Diagram::Knot(k) => k,
            _ => unreachable!(),
        })
    }

    pub fn serialize(&self) -> String {
        format!("knot:{}", prefixed(&token_string(&self.canonical_key())))
    }
}

impl LongDiagram {
    pub fn parse(code: &str) -> Result<Self, CodeError> {
        expect_kind(code, Kind::Long).map(|d| match d {
            Diagram::Long(k) => k,
            _ => unreachable!(),
        })
    }

    pub fn serialize(&self) -> String {
        format!("long:{}", prefixed(&token_string(&self.canonical_key())))
    }
}

impl FlatDiagram {
    pub fn parse(code: &str) -> Result<Self, CodeError> {
        expect_kind(code, Kind::FlatLong).map(|d| match d {
            Diagram::Flat(k) => k,
            _ => unreachable!(),
        })
    }

    pub fn serialize(&self) -> String {
        format!(
            "flatlong:{}",
            prefixed(&token_string(&self.canonical_key()))
        )
    }
}

impl LinkDiagram {
    pub fn parse(code: &str) -> Result<Self, CodeError> {
        expect_kind(code, Kind::Link).map(|d| match d {
            Diagram::Link(k) => k,
            _ => unreachable!(),
        })
    }

    pub fn serialize(&self) -> String {
        let (a, b) = self.canonical_key();
        let mut body = String::new();
        if !a.is_empty() {
            body.push(' ');
            body.push_str(&token_string(&a));
        }
        body.push_str(" /");
        if !b.is_empty() {
            body.push(' ');
            body.push_str(&token_string(&b));
        }
        format!("link:{body}")
    }
}

fn prefixed(body: &str) -> String {
    if body.is_empty() {
        String::new()
    } else {
        format!(" {body}")
    }
}
