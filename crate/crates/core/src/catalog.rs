//! Built-in fronts with recorded invariants.

use std::fmt;

use crate::front::{classical_invariants, word, FrontDiagram};
use crate::rulings::count_rulings;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Quoted in the literature.
    Literature,
    /// Computed here and cross-checked independently.
    Derived,
    /// Immediate from the word.
    Trivial,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub tb: i64,
    pub rot: i64,
    pub rulings: u128,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub word: &'static str,
    pub expected: Option<Expected>,
    pub source_note: &'static str,
}

impl CatalogEntry {
    pub fn diagram(&self) -> FrontDiagram {
        FrontDiagram::positive(word(self.word)).expect("catalog words are valid")
    }
}

const fn exp(tb: i64, rot: i64, rulings: u128, provenance: Provenance) -> Option<Expected> {
    Some(Expected { tb, rot, rulings, provenance })
}

/// Front of m(9_46) on which the budget-0 filling search takes two pinches.
pub const M946_WORD: &str = "L1 L3 L5 X4 X2 X3 X3 X4 X2 X3 X3 X2 X4 R3 X2 X1 X1 X2 R3 R1";
/// Six-strand plat front of m(9_46).
pub const M946_PLAT_WORD: &str = "L1 L3 L5 X2 X4 X3 X3 X2 X4 X3 X3 X2 X4 R1 R1 R1";
/// Front whose one-pinch filling needs one budgeted rewrite.
pub const STANDIN_WORD: &str = "L1 L3 L5 X4 X2 X3 X3 X2 X4 L3 X4 X5 X4 R3 X4 X2 R3 X2 X1 R2 R1";

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "unknot",
        word: "L1 R1",
        expected: exp(-1, 0, 1, Provenance::Literature),
        source_note: "standard two-cusp eye",
    },
    CatalogEntry {
        name: "unknot_stab_pos",
        word: "L1 L1 R2 R1",
        expected: exp(-2, 1, 0, Provenance::Literature),
        source_note: "unknot with one zigzag raising rot",
    },
    CatalogEntry {
        name: "unknot_stab_neg",
        word: "L1 L2 R1 R1",
        expected: exp(-2, -1, 0, Provenance::Literature),
        source_note: "unknot with one zigzag lowering rot",
    },
    CatalogEntry {
        name: "trefoil",
        word: "L1 L3 X2 X2 X2 R1 R1",
        expected: exp(1, 0, 3, Provenance::Literature),
        source_note: "max-tb right-handed trefoil, standard atlas front",
    },
    CatalogEntry {
        name: "trefoil_stab_pos",
        word: "L1 L1 R2 L3 X2 X2 X2 R1 R1",
        expected: exp(0, 1, 0, Provenance::Derived),
        source_note: "trefoil with one zigzag raising rot",
    },
    CatalogEntry {
        name: "trefoil_stab_neg",
        word: "L1 L2 R1 L3 X2 X2 X2 R1 R1",
        expected: exp(0, -1, 0, Provenance::Derived),
        source_note: "trefoil with one zigzag lowering rot",
    },
    CatalogEntry {
        name: "m9_46",
        word: M946_WORD,
        expected: exp(-1, 0, 2, Provenance::Literature),
        source_note: "max-tb m(9_46), isotopic to m9_46_plat (shuffle seed 1358, 8 steps); \
                      budget-0 search pinches twice",
    },
    CatalogEntry {
        name: "m9_46_plat",
        word: M946_PLAT_WORD,
        expected: exp(-1, 0, 2, Provenance::Derived),
        source_note: "max-tb m(9_46) as a 6-strand plat, identified by its Jones polynomial; \
                      admits a one-pinch disk",
    },
    CatalogEntry {
        name: "standin",
        word: STANDIN_WORD,
        expected: exp(-1, 0, 2, Provenance::Derived),
        source_note: "diagram-dependence example; a front of m(9_46), not a new knot \
                      (shuffle seed 79, 20 steps from m9_46_plat): \
                      one pinch fails at budget 0 and succeeds after one budgeted rewrite",
    },
    CatalogEntry {
        name: "unlink2",
        word: "L1 R1 L1 R1",
        expected: exp(-2, 0, 1, Provenance::Trivial),
        source_note: "two standard eyes side by side",
    },
    CatalogEntry {
        name: "unlink3",
        word: "L1 L3 R3 R1 L1 R1",
        expected: exp(-3, 0, 1, Provenance::Trivial),
        source_note: "stacked pair beside a third eye",
    },
    CatalogEntry {
        name: "hopf",
        word: "L1 L3 X2 X2 R1 R1",
        expected: None,
        source_note: "two eyes whose inner strands cross twice; no recorded values",
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestLine {
    pub name: &'static str,
    pub ok: bool,
    pub found: (i64, i64, u128),
    pub expected: Option<Expected>,
}

impl fmt::Display for SelftestLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tb, rot, r) = self.found;
        let status = match (self.expected, self.ok) {
            (None, _) => "skip",
            (Some(_), true) => "ok",
            (Some(_), false) => "FAIL",
        };
        write!(f, "{status} {} tb={tb} rot={rot} rulings={r}", self.name)?;
        if let (Some(e), false) = (self.expected, self.ok) {
            write!(f, " expected tb={} rot={} rulings={}", e.tb, e.rot, e.rulings)?;
        }
        Ok(())
    }
}

/// Recomputes every entry with recorded values.
pub fn selftest() -> Vec<SelftestLine> {
    ENTRIES
        .iter()
        .map(|e| {
            let d = e.diagram();
            let inv = classical_invariants(&d);
            let found = (inv.tb, inv.rot, count_rulings(&d));
            let ok = e.expected.is_none_or(|x| (x.tb, x.rot, x.rulings) == found);
            SelftestLine { name: e.name, ok, found, expected: e.expected }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satellites::stabilize;

    #[test]
    fn selftest_passes() {
        for line in selftest() {
            assert!(line.ok, "{line}");
        }
    }

    #[test]
    fn stabilized_entries_match_zigzags() {
        for (base, pos, neg) in [("unknot", "unknot_stab_pos", "unknot_stab_neg"), ("trefoil", "trefoil_stab_pos", "trefoil_stab_neg")] {
            let d = lookup(base).unwrap().diagram();
            assert_eq!(stabilize(&d, 1).unwrap(), lookup(pos).unwrap().diagram());
            assert_eq!(stabilize(&d, -1).unwrap(), lookup(neg).unwrap().diagram());
        }
    }

    #[test]
    fn m9_46_variants_are_shuffles_of_the_plat() {
        use crate::isotopy::random_shuffle;
        let plat = lookup("m9_46_plat").unwrap().diagram();
        assert_eq!(random_shuffle(&plat, 8, 1358), lookup("m9_46").unwrap().diagram());
        assert_eq!(random_shuffle(&plat, 20, 79), lookup("standin").unwrap().diagram());
    }

    #[test]
    fn names_unique() {
        let mut names: Vec<_> = entries().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), entries().len());
    }
}
