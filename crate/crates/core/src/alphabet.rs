use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Index of a symbol inside its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u16);

impl Sym {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, nonempty, ordered set of symbol tokens.
///
/// Cloning is cheap; the token list is shared.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    /// Tokens must be nonempty, unique, free of whitespace, and not `.`
    /// (reserved for holes in the pattern text format).
    pub fn new<I, S>(tokens: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".to_string()));
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("alphabet is too large".to_string()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if !valid_token(s) {
                return Err(Error::InvalidAlphabet(alloc::format!("bad token {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(alloc::format!("duplicate token {s:?}")));
            }
        }
        Ok(Alphabet { symbols: symbols.into() })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.symbols[s.index()]
    }

    pub fn lookup(&self, token: &str) -> Option<Sym> {
        self.symbols.iter().position(|t| t == token).map(|i| Sym(i as u16))
    }

    pub fn iter(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.symbols.len()).map(|i| Sym(i as u16))
    }

    pub fn tokens(&self) -> &[String] {
        &self.symbols
    }

    /// Same tokens, possibly in another order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|t| other.lookup(t).is_some())
    }

    /// Maps every symbol of `self` to the symbol with the same token in `other`.
    pub fn translation_to(&self, other: &Alphabet) -> Option<Vec<Sym>> {
        self.symbols.iter().map(|t| other.lookup(t)).collect()
    }

    pub(crate) fn ptr_eq(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.symbols, &other.symbols)
    }
}

pub(crate) fn valid_token(s: &str) -> bool {
    !s.is_empty() && s != "." && !s.chars().any(char::is_whitespace)
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl core::hash::Hash for Alphabet {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.symbols.hash(state)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_duplicate_and_reserved() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["0", "0"]).is_err());
        assert!(Alphabet::new(["."]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
        assert!(Alphabet::new([""]).is_err());
    }

    #[test]
    fn lookup_and_translation() {
        let a = Alphabet::new(["0", "1", "#"]).unwrap();
        let b = Alphabet::new(["#", "0", "1"]).unwrap();
        assert_eq!(a.lookup("#"), Some(Sym(2)));
        assert!(a.same_set(&b));
        assert_ne!(a, b);
        assert_eq!(a.translation_to(&b).unwrap(), [Sym(1), Sym(2), Sym(0)]);
    }
}
