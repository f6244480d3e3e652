//! Fusion chains and associativity analysis.
//!
//! Fusion is commutative but not associative: an atom may annihilate
//! early against one neighbour or survive long enough to meet another.
//! A [`FusionChain`] fixes the left-to-right evaluation order. For an
//! ordered triple, [`eval_chain`] computes a residue that is empty
//! exactly when the two bracketings agree, and [`triad_system`] extends
//! that residue to the three cyclic rotations, which settles all six
//! orderings of the triple at once.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::set::SigmaSet;

/// A fusion chain: terms combined strictly left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionChain {
    terms: Vec<SigmaSet>,
}

/// A chain with no terms has no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a fusion chain needs at least one term")]
pub struct EmptyChain;

impl FusionChain {
    pub fn new(terms: impl IntoIterator<Item = SigmaSet>) -> Result<FusionChain, EmptyChain> {
        let terms: Vec<SigmaSet> = terms.into_iter().collect();
        if terms.is_empty() {
            return Err(EmptyChain);
        }
        Ok(FusionChain { terms })
    }

    pub fn terms(&self) -> &[SigmaSet] {
        &self.terms
    }

    /// The left fold of the terms under fusion. No associativity promise
    /// is attached: regrouping a chain can change this value.
    pub fn value(&self) -> SigmaSet {
        let mut terms = self.terms.iter();
        let first = terms.next().expect("chains are non-empty").clone();
        terms.fold(first, |acc, term| acc.fuse(term))
    }

    /// Termwise antiset, same order.
    pub fn antiset(&self) -> FusionChain {
        FusionChain {
            terms: self.terms.iter().map(SigmaSet::antiset).collect(),
        }
    }

    /// The same terms in reverse order.
    pub fn reversed(&self) -> FusionChain {
        FusionChain {
            terms: self.terms.iter().rev().cloned().collect(),
        }
    }
}

/// The associativity residue of the ordered triple `(a, b, c)`: the
/// left fold of `a, b, c` fused with the left fold of `c*, b*, a*`.
/// Empty exactly when `(a + b) + c` equals `a + (b + c)`.
pub fn eval_chain(a: &SigmaSet, b: &SigmaSet, c: &SigmaSet) -> SigmaSet {
    let forward = a.fuse(b).fuse(c);
    let reversed_anti = c.antiset().fuse(&b.antiset()).fuse(&a.antiset());
    forward.fuse(&reversed_anti)
}

/// Whether the ordered triple fuses associatively, decided by the
/// residue being empty. Debug builds additionally compare the two
/// bracketings directly and insist the criteria agree.
pub fn is_assoc_order(a: &SigmaSet, b: &SigmaSet, c: &SigmaSet) -> bool {
    let residue_empty = eval_chain(a, b, c).is_empty();
    debug_assert_eq!(
        residue_empty,
        a.fuse(b).fuse(c) == a.fuse(&b.fuse(c)),
        "residue criterion and direct bracketing disagree on {a}, {b}, {c}"
    );
    residue_empty
}

/// The six orderings of a triple `(x, y, z)`. Witness searches scan the
/// variants in declaration order, so the nearest rearrangement (the
/// single swap `YXZ`) is reported before the rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriadOrder {
    Xyz,
    Yxz,
    Zxy,
    Xzy,
    Yzx,
    Zyx,
}

impl TriadOrder {
    pub const ALL: [TriadOrder; 6] = [
        TriadOrder::Xyz,
        TriadOrder::Yxz,
        TriadOrder::Zxy,
        TriadOrder::Xzy,
        TriadOrder::Yzx,
        TriadOrder::Zyx,
    ];

    /// The triple rearranged into this ordering.
    pub fn arrange<'a>(
        &self,
        x: &'a SigmaSet,
        y: &'a SigmaSet,
        z: &'a SigmaSet,
    ) -> (&'a SigmaSet, &'a SigmaSet, &'a SigmaSet) {
        match self {
            TriadOrder::Xyz => (x, y, z),
            TriadOrder::Yxz => (y, x, z),
            TriadOrder::Zxy => (z, x, y),
            TriadOrder::Xzy => (x, z, y),
            TriadOrder::Yzx => (y, z, x),
            TriadOrder::Zyx => (z, y, x),
        }
    }
}

impl fmt::Display for TriadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TriadOrder::Xyz => "XYZ",
            TriadOrder::Yxz => "YXZ",
            TriadOrder::Zxy => "ZXY",
            TriadOrder::Xzy => "XZY",
            TriadOrder::Yzx => "YZX",
            TriadOrder::Zyx => "ZYX",
        };
        f.write_str(name)
    }
}

/// Local-associativity evidence for the triple `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriadReport {
    /// Residue of the ordering starting at `x`: `eval_chain(x, y, z)`.
    pub e_x: SigmaSet,
    /// Residue of the cyclic rotation starting at `y`.
    pub e_y: SigmaSet,
    /// Residue of the cyclic rotation starting at `z`.
    pub e_z: SigmaSet,
    /// True exactly when all three residues are empty.
    pub locally_associative: bool,
    /// Direct two-bracketing verdict for each of the six orderings.
    pub per_order_verdicts: BTreeMap<TriadOrder, bool>,
}

impl TriadReport {
    /// The first ordering whose bracketings disagree, scanning
    /// [`TriadOrder::ALL`].
    pub fn first_failing_order(&self) -> Option<TriadOrder> {
        TriadOrder::ALL
            .into_iter()
            .find(|order| !self.per_order_verdicts[order])
    }
}

/// Computes the three cyclic residues of `(x, y, z)` plus a direct
/// verdict for each of the six orderings. The triple is locally
/// associative exactly when all three residues are empty; debug builds
/// assert that this agrees with the six direct verdicts.
pub fn triad_system(x: &SigmaSet, y: &SigmaSet, z: &SigmaSet) -> TriadReport {
    let e_x = eval_chain(x, y, z);
    let e_y = eval_chain(y, z, x);
    let e_z = eval_chain(z, x, y);
    let locally_associative = e_x.is_empty() && e_y.is_empty() && e_z.is_empty();
    let per_order_verdicts: BTreeMap<TriadOrder, bool> = TriadOrder::ALL
        .into_iter()
        .map(|order| {
            let (a, b, c) = order.arrange(x, y, z);
            (order, a.fuse(b).fuse(c) == a.fuse(&b.fuse(c)))
        })
        .collect();
    debug_assert_eq!(
        locally_associative,
        per_order_verdicts.values().all(|ok| *ok),
        "cyclic residues and per-order verdicts disagree on {x}, {y}, {z}"
    );
    TriadReport {
        e_x,
        e_y,
        e_z,
        locally_associative,
        per_order_verdicts,
    }
}

/// Whether every ordering and bracketing of the triple agrees on its
/// fusion value.
pub fn is_locally_associative(x: &SigmaSet, y: &SigmaSet, z: &SigmaSet) -> bool {
    triad_system(x, y, z).locally_associative
}
