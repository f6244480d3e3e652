//! σ-sets: canonical finite sets of atoms.
//!
//! A σ-set never holds a base symbol with both polarities; `{x, x*}`
//! collapses to `{}` the moment it is built. Every operation assumes and
//! preserves that canonical form, so structural equality is semantic
//! equality and no separate normalization pass exists anywhere.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::atom::{Atom, InvalidSymbol, Polarity};

/// A canonical finite set of atoms.
///
/// Atoms iterate and print sorted by base symbol, plain before anti.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SigmaSet {
    atoms: BTreeSet<Atom>,
}

impl SigmaSet {
    /// The empty σ-set, the fusion identity.
    pub fn empty() -> SigmaSet {
        SigmaSet::default()
    }

    /// Builds a σ-set from raw atoms: duplicates collapse, then every
    /// base present with both polarities annihilates to nothing.
    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> SigmaSet {
        let atoms: BTreeSet<Atom> = atoms.into_iter().collect();
        let annihilated: Vec<Atom> = atoms
            .iter()
            .filter(|a| a.is_anti() && atoms.contains(&a.antielement()))
            .cloned()
            .collect();
        let mut atoms = atoms;
        for anti in annihilated {
            atoms.remove(&anti.antielement());
            atoms.remove(&anti);
        }
        SigmaSet { atoms }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    /// The polarity under which `base` appears, if it appears at all.
    /// Canonical form guarantees at most one.
    pub fn polarity_of(&self, base: &str) -> Option<Polarity> {
        self.atoms
            .iter()
            .find(|a| a.base() == base)
            .map(Atom::polarity)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }

    /// Base symbols occurring in the set, in sorted order.
    pub fn bases(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(Atom::base)
    }

    /// `X ∩̂ Y`: the atoms of `self` whose antielement lies in `other`,
    /// i.e. exactly the part of `self` that fusion with `other` removes.
    pub fn hat_intersect(&self, other: &SigmaSet) -> SigmaSet {
        SigmaSet {
            atoms: self
                .atoms
                .iter()
                .filter(|a| other.contains(&a.antielement()))
                .cloned()
                .collect(),
        }
    }

    /// `X ⊛ Y`: `self` with its annihilated part removed.
    pub fn star_diff(&self, other: &SigmaSet) -> SigmaSet {
        SigmaSet {
            atoms: self
                .atoms
                .iter()
                .filter(|a| !other.contains(&a.antielement()))
                .cloned()
                .collect(),
        }
    }

    /// Annihilating fusion: the two star-differences, unioned. An atom
    /// that meets its antielement on the other side vanishes from both;
    /// everything else survives. Commutative, with `{}` as identity,
    /// idempotent, and `fuse(x, antiset(x)) = {}`. Not associative.
    pub fn fuse(&self, other: &SigmaSet) -> SigmaSet {
        let mut atoms = self.star_diff(other).atoms;
        atoms.extend(other.star_diff(self).atoms);
        let fused = SigmaSet { atoms };
        debug_assert!(
            fused.is_canonical(),
            "fusion produced an annihilating pair in {fused}"
        );
        fused
    }

    /// Pointwise polarity flip. Involutive.
    pub fn antiset(&self) -> SigmaSet {
        SigmaSet {
            atoms: self.atoms.iter().map(Atom::antielement).collect(),
        }
    }

    fn is_canonical(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| !self.atoms.contains(&a.antielement()))
    }
}

/// True when no atom of any member meets its antielement in any member,
/// the member itself included. Fusion restricted to such a family never
/// annihilates anything, which is what makes it associative there.
pub fn is_antielement_free_family(family: &[SigmaSet]) -> bool {
    family
        .iter()
        .all(|x| family.iter().all(|y| x.hat_intersect(y).is_empty()))
}

impl FromIterator<Atom> for SigmaSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> SigmaSet {
        SigmaSet::from_atoms(iter)
    }
}

impl fmt::Display for SigmaSet {
    /// Canonical text form: `{}` when empty, otherwise `{a, b*, c}` in
    /// atom order. This is the literal syntax of the expression
    /// language, so every rendering re-parses to the same set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{atom}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SigmaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rejected σ-set literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSetError {
    #[error("expected a set literal like `{{a, b*}}`, `{{}}`, or `0`, got {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Symbol(#[from] InvalidSymbol),
}

impl FromStr for SigmaSet {
    type Err = ParseSetError;

    /// Parses the literal syntax: `{a, b*}`, `{}`, or `0`.
    fn from_str(s: &str) -> Result<SigmaSet, ParseSetError> {
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(SigmaSet::empty());
        }
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| ParseSetError::Malformed(s.to_owned()))?;
        if inner.trim().is_empty() {
            return Ok(SigmaSet::empty());
        }
        let atoms = inner
            .split(',')
            .map(str::parse::<Atom>)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SigmaSet::from_atoms(atoms))
    }
}
