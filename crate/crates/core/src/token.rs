//! Canonical text tokens for structure elements.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {kind} token {text:?}: {reason}")]
pub struct TokenError {
    pub kind: &'static str,
    pub text: String,
    pub reason: String,
}

impl TokenError {
    pub fn new(kind: &'static str, text: &str, reason: impl Into<String>) -> Self {
        TokenError {
            kind,
            text: text.to_string(),
            reason: reason.into(),
        }
    }
}

/// An element with a canonical, bit-stable text form.
///
/// `from_token(x.token())` must return a value equal to `x`, and equal
/// values must produce identical tokens.
pub trait Token: Sized {
    fn token(&self) -> String;
    fn from_token(text: &str) -> Result<Self, TokenError>;
}

impl Token for BigUint {
    fn token(&self) -> String {
        self.to_str_radix(10)
    }

    fn from_token(text: &str) -> Result<Self, TokenError> {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(TokenError::new("vertex", text, "expected decimal digits"));
        }
        if text.len() > 1 && text.starts_with('0') {
            return Err(TokenError::new("vertex", text, "leading zero"));
        }
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| TokenError::new("vertex", text, "not a natural number"))
    }
}

macro_rules! int_token {
    ($($t:ty),*) => {$(
        impl Token for $t {
            fn token(&self) -> String {
                self.to_string()
            }

            fn from_token(text: &str) -> Result<Self, TokenError> {
                text.parse()
                    .map_err(|e: std::num::ParseIntError| TokenError::new(stringify!($t), text, e.to_string()))
            }
        }
    )*};
}

int_token!(u8, u16, u32, u64, usize, i32, i64);

impl Token for char {
    fn token(&self) -> String {
        self.to_string()
    }

    fn from_token(text: &str) -> Result<Self, TokenError> {
        let mut chars = text.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(TokenError::new("char", text, "expected one character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_tokens_are_decimal() {
        let v = BigUint::from(17u32);
        assert_eq!(v.token(), "17");
        assert_eq!(BigUint::from_token("17").unwrap(), v);
        assert!(BigUint::from_token("017").is_err());
        assert!(BigUint::from_token("-1").is_err());
        assert!(BigUint::from_token("").is_err());
    }
}
