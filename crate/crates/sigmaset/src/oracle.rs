//! Exhaustive enumeration and an independent fusion reference.
//!
//! Everything here exists to check the rest of the crate from a second
//! angle: `Universe` enumeration powers brute-force searches at desk
//! scale, and `reference_fuse` recomputes fusion by multiset
//! cancellation instead of star-differences. The two fusion routes must
//! stay structurally separate; their agreement is load-bearing evidence.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::atom::{Atom, InvalidSymbol, Polarity};
use crate::set::SigmaSet;

/// Universe that cannot be enumerated or built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error(
        "universe of {0} base symbols exceeds the enumeration limit of {}",
        Universe::MAX_BASES
    )]
    TooLarge(usize),
    #[error(transparent)]
    Symbol(#[from] InvalidSymbol),
}

/// A finite pool of base symbols, sorted and deduplicated.
///
/// Every canonical σ-set over the pool assigns each base one of three
/// states (absent, plain, anti), so a universe of `n` bases spans
/// exactly `3^n` σ-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    bases: Vec<String>,
}

impl Universe {
    /// Enumeration cap. `3^16` is the largest search worth running
    /// exhaustively; anything bigger must be reported as infeasible
    /// rather than ground through.
    pub const MAX_BASES: usize = 16;

    /// Builds a universe from base symbols, validating each one.
    pub fn new(
        bases: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Universe, UniverseError> {
        let mut bases: Vec<String> = bases.into_iter().map(Into::into).collect();
        bases.sort();
        bases.dedup();
        for base in &bases {
            Atom::plain(base.clone())?;
        }
        if bases.len() > Universe::MAX_BASES {
            return Err(UniverseError::TooLarge(bases.len()));
        }
        Ok(Universe { bases })
    }

    /// The universe spanned by the bases of the given sets.
    pub fn from_sets<'a>(
        sets: impl IntoIterator<Item = &'a SigmaSet>,
    ) -> Result<Universe, UniverseError> {
        Universe::new(sets.into_iter().flat_map(SigmaSet::bases))
    }

    pub fn bases(&self) -> &[String] {
        &self.bases
    }

    pub fn base_count(&self) -> usize {
        self.bases.len()
    }

    /// `3^n` for `n` bases.
    pub fn sigma_set_count(&self) -> u64 {
        3u64.pow(self.bases.len() as u32)
    }
}

/// All canonical σ-sets over `universe`, in a fixed order: the empty set
/// first, then counting base-3 with the states absent, plain, anti as
/// digits (first base least significant).
pub fn enumerate_sigma_sets(universe: &Universe) -> impl Iterator<Item = SigmaSet> + '_ {
    (0..universe.sigma_set_count()).map(move |index| {
        let mut rest = index;
        let mut atoms = Vec::new();
        for base in &universe.bases {
            let state = rest % 3;
            rest /= 3;
            let polarity = match state {
                0 => continue,
                1 => Polarity::Plain,
                _ => Polarity::Anti,
            };
            atoms.push(Atom::new(base.clone(), polarity).expect("universe bases are validated"));
        }
        SigmaSet::from_atoms(atoms)
    })
}

/// Fusion recomputed by a deliberately different route: take the
/// multiset union of both sides, cancel equal-base opposite-polarity
/// pairs, and collapse what survives into a set. Exists purely as a
/// cross-check for [`SigmaSet::fuse`]; do not fold the two together.
pub fn reference_fuse(x: &SigmaSet, y: &SigmaSet) -> SigmaSet {
    let mut counts: BTreeMap<&str, (u32, u32)> = BTreeMap::new();
    for atom in x.iter().chain(y.iter()) {
        let entry = counts.entry(atom.base()).or_default();
        match atom.polarity() {
            Polarity::Plain => entry.0 += 1,
            Polarity::Anti => entry.1 += 1,
        }
    }
    let mut atoms = Vec::new();
    for (base, (plain, anti)) in counts {
        let cancelled = plain.min(anti);
        let (plain, anti) = (plain - cancelled, anti - cancelled);
        debug_assert!(
            plain == 0 || anti == 0,
            "cancellation left both polarities of {base}"
        );
        if plain > 0 {
            atoms.push(Atom::plain(base).expect("atom bases are already validated"));
        }
        if anti > 0 {
            atoms.push(Atom::anti(base).expect("atom bases are already validated"));
        }
    }
    SigmaSet::from_atoms(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> SigmaSet {
        text.parse().unwrap()
    }

    #[test]
    fn universe_validates_and_dedupes() {
        let u = Universe::new(["b", "a", "b"]).unwrap();
        assert_eq!(u.bases(), ["a".to_string(), "b".to_string()]);
        assert_eq!(u.sigma_set_count(), 9);
        assert!(matches!(
            Universe::new(["a*"]),
            Err(UniverseError::Symbol(_))
        ));
        let too_many: Vec<String> = (0..17).map(|i| format!("b{i}")).collect();
        assert!(matches!(
            Universe::new(too_many),
            Err(UniverseError::TooLarge(17))
        ));
    }

    #[test]
    fn enumeration_is_exhaustive_and_ordered() {
        let empty = Universe::new(Vec::<String>::new()).unwrap();
        assert_eq!(
            enumerate_sigma_sets(&empty).collect::<Vec<_>>(),
            vec![SigmaSet::empty()]
        );

        let one = Universe::new(["1"]).unwrap();
        assert_eq!(
            enumerate_sigma_sets(&one).collect::<Vec<_>>(),
            vec![set("{}"), set("{1}"), set("{1*}")]
        );

        let two = Universe::new(["1", "2"]).unwrap();
        let all: Vec<SigmaSet> = enumerate_sigma_sets(&two).collect();
        assert_eq!(all.len(), 9);
        assert!(all.contains(&set("{1, 2*}")));
        let distinct: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 9, "no duplicates");
    }

    #[test]
    fn universe_from_sets_collects_bases() {
        let u = Universe::from_sets([&set("{1, 2*}"), &set("{2, 3}")]).unwrap();
        assert_eq!(u.bases(), ["1", "2", "3"]);
    }

    #[test]
    fn reference_fuse_matches_worked_cases() {
        assert_eq!(reference_fuse(&set("{1, 2*}"), &set("{2, 3}")), set("{1, 3}"));
        assert_eq!(reference_fuse(&set("{1, 2}"), &set("{1*, 2*}")), set("{}"));
        assert_eq!(reference_fuse(&set("{1, 2}"), &set("{}")), set("{1, 2}"));
        assert_eq!(reference_fuse(&set("{1}"), &set("{1}")), set("{1}"));
    }
}
