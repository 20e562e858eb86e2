//! Parsing of command-line inputs: fractions and continued fractions.

use num_bigint::BigInt;
use snakejones::{Error, EvenCF, PositiveCF, Rat};

use crate::CliError;

/// Which kind of continued fraction an ambiguous entry list denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hint {
    Even,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Fraction(Rat),
    Positive(PositiveCF),
    Even(EvenCF),
}

impl Input {
    pub fn value(&self) -> Rat {
        match self {
            Input::Fraction(r) => r.clone(),
            Input::Positive(cf) => cf.value(),
            Input::Even(cf) => cf.value(),
        }
    }
}

fn parse_error(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Core(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

/// Parses `p/q`, `[c1,c2,...]` or `c1,c2,...`.
///
/// Entry lists with a negative entry are even continued fractions; lists of
/// positive entries are positive continued fractions unless `hint` says
/// otherwise. A bare integer is a fraction unless a hint is given.
pub fn parse_input(s: &str, hint: Option<Hint>) -> Result<Input, CliError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(parse_error(0, "empty input"));
    }
    let offset = s.len() - s.trim_start().len();
    let bracketed = trimmed.starts_with('[');
    if trimmed.contains('/') || (!bracketed && !trimmed.contains(',') && hint.is_none()) {
        return trimmed.parse::<Rat>().map(Input::Fraction).map_err(|e| match e {
            Error::Parse { pos, msg } => parse_error(pos + offset, msg),
            other => CliError::Core(other),
        });
    }
    let (body, body_start) = if bracketed {
        if !trimmed.ends_with(']') {
            return Err(parse_error(offset + trimmed.len(), "expected ']'"));
        }
        (&trimmed[1..trimmed.len() - 1], offset + 1)
    } else {
        (trimmed, offset)
    };
    let mut entries = Vec::new();
    let mut at = body_start;
    for piece in body.split(',') {
        let token = piece.trim();
        // an empty entry is reported where it starts
        let lead = if token.is_empty() { 0 } else { piece.len() - piece.trim_start().len() };
        let entry: BigInt = token
            .parse()
            .map_err(|_| parse_error(at + lead, format!("expected an integer, found {token:?}")))?;
        entries.push(entry);
        at += piece.len() + 1;
    }
    let negative = entries.iter().any(|e| e.sign() == num_bigint::Sign::Minus);
    match hint {
        Some(Hint::Positive) => Ok(Input::Positive(PositiveCF::new(entries)?)),
        Some(Hint::Even) => Ok(Input::Even(EvenCF::new(entries)?)),
        None if negative => Ok(Input::Even(EvenCF::new(entries)?)),
        None => Ok(Input::Positive(PositiveCF::new(entries)?)),
    }
}
