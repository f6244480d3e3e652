//! Atoms: polarized element symbols.
//!
//! An atom is a base symbol together with a polarity. The plain atom `x`
//! and its antielement `x*` annihilate each other when sets fuse, and
//! flipping polarity twice gets back to the original atom. Base symbols
//! are word-shaped (an alphanumeric first character, then alphanumerics
//! or underscores), so every atom prints and re-parses unambiguously in
//! the expression language.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Orientation of an atom: `x` is plain, `x*` is its antielement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Plain,
    Anti,
}

impl Polarity {
    /// The opposite orientation.
    pub fn flipped(self) -> Polarity {
        match self {
            Polarity::Plain => Polarity::Anti,
            Polarity::Anti => Polarity::Plain,
        }
    }
}

/// Rejected atom symbol, kept verbatim for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid atom symbol {symbol:?}: {reason}")]
pub struct InvalidSymbol {
    pub symbol: String,
    pub reason: &'static str,
}

/// A polarized symbol. Ordering is by base symbol with plain before
/// anti, which is also the display order inside set literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    base: String,
    polarity: Polarity,
}

impl Atom {
    /// Builds an atom, validating the base symbol.
    pub fn new(base: impl Into<String>, polarity: Polarity) -> Result<Atom, InvalidSymbol> {
        let base = base.into();
        check_symbol(&base)?;
        Ok(Atom { base, polarity })
    }

    /// A plain atom `x`.
    pub fn plain(base: impl Into<String>) -> Result<Atom, InvalidSymbol> {
        Atom::new(base, Polarity::Plain)
    }

    /// An anti atom `x*`.
    pub fn anti(base: impl Into<String>) -> Result<Atom, InvalidSymbol> {
        Atom::new(base, Polarity::Anti)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn is_anti(&self) -> bool {
        self.polarity == Polarity::Anti
    }

    /// The annihilation partner: same base, opposite polarity.
    pub fn antielement(&self) -> Atom {
        Atom {
            base: self.base.clone(),
            polarity: self.polarity.flipped(),
        }
    }
}

/// Base symbols must be non-empty words. The leading character may not
/// be an underscore, so a symbol never reads as punctuation, and `*` is
/// excluded because it spells the anti marker.
fn check_symbol(symbol: &str) -> Result<(), InvalidSymbol> {
    let reject = |reason| {
        Err(InvalidSymbol {
            symbol: symbol.to_owned(),
            reason,
        })
    };
    let mut chars = symbol.chars();
    let Some(first) = chars.next() else {
        return reject("symbol is empty");
    };
    if symbol.contains('*') {
        return reject("symbol contains '*'");
    }
    if !first.is_alphanumeric() {
        return reject("symbol must start with a letter or digit");
    }
    if !chars.all(|c| c.is_alphanumeric() || c == '_') {
        return reject("symbol contains a character that is not a letter, digit, or '_'");
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Plain => write!(f, "{}", self.base),
            Polarity::Anti => write!(f, "{}*", self.base),
        }
    }
}

impl FromStr for Atom {
    type Err = InvalidSymbol;

    /// Parses `x` or `x*`, whitespace-trimmed.
    fn from_str(s: &str) -> Result<Atom, InvalidSymbol> {
        let s = s.trim();
        match s.strip_suffix('*') {
            Some(base) => Atom::anti(base),
            None => Atom::plain(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_symbols() {
        assert!(Atom::plain("x").is_ok());
        assert!(Atom::plain("1").is_ok());
        assert!(Atom::plain("x_1").is_ok());
        assert!(Atom::plain("α").is_ok());

        let empty = Atom::plain("").unwrap_err();
        assert_eq!(empty.symbol, "");
        let star = Atom::plain("a*b").unwrap_err();
        assert_eq!(star.symbol, "a*b");
        assert!(star.to_string().contains("a*b"), "error names the symbol");
        assert!(Atom::plain("_x").is_err());
        assert!(Atom::plain("a b").is_err());
    }

    #[test]
    fn antielement_is_involutive() {
        let a = Atom::plain("a").unwrap();
        assert_eq!(a.antielement().antielement(), a);
        assert_eq!(a.antielement().polarity(), Polarity::Anti);
    }

    #[test]
    fn ordering_puts_plain_before_anti() {
        let plain = Atom::plain("a").unwrap();
        let anti = Atom::anti("a").unwrap();
        let later = Atom::plain("b").unwrap();
        assert!(plain < anti);
        assert!(anti < later);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for text in ["a", "a*", "α*", "x_1", "10"] {
            let atom: Atom = text.parse().unwrap();
            assert_eq!(atom.to_string(), text);
        }
        assert!("".parse::<Atom>().is_err());
        assert!("**".parse::<Atom>().is_err());
    }
}
