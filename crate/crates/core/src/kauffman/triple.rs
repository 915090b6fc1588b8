//! Local expansion of one triple crossing into three classical crossings.
//!
//! The six boundary ends sit counterclockwise at slots 0..5; strands pass
//! through opposite slots, so pass k occupies slots (k, k+3). Perturbing
//! the three strands off their common point leaves two generic pictures
//! (the inner triangle can point either way); both are expanded here and
//! give ambient-isotopic diagrams.

use super::diagram::PdCross;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpansionVariant {
    /// Each strand first meets the strand entering two slots clockwise.
    Left,
    /// The mirror perturbation.
    Right,
}

impl ExpansionVariant {
    pub fn other(self) -> ExpansionVariant {
        match self {
            ExpansionVariant::Left => ExpansionVariant::Right,
            ExpansionVariant::Right => ExpansionVariant::Left,
        }
    }
}

/// Expands one triple crossing.
///
/// * `ext[s]` - edge id attached at boundary slot s;
/// * `internal[k]` - fresh edge id for the inner segment of pass k;
/// * `rank[k]` - height of pass k (0 bottom, 1 middle, 2 top).
///
/// Pass 0 runs slots 0-3, pass 1 slots 1-4, pass 2 slots 2-5. Each pair of
/// passes crosses exactly once; the higher rank goes over.
pub fn expand_triple(
    ext: [u32; 6],
    internal: [u32; 3],
    rank: [u8; 3],
    variant: ExpansionVariant,
) -> [PdCross; 3] {
    let [i0, i1, i2] = internal;
    let [e0, e1, e2, e3, e4, e5] = ext;
    match variant {
        ExpansionVariant::Left => [
            // pass0 x pass2, pass0 on slots (0,2) of the mini crossing
            PdCross {
                ends: [e0, i2, i0, e5],
                over02: rank[0] > rank[2],
            },
            // pass0 x pass1
            PdCross {
                ends: [i0, i1, e3, e4],
                over02: rank[0] > rank[1],
            },
            // pass2 x pass1
            PdCross {
                ends: [e2, i1, i2, e1],
                over02: rank[2] > rank[1],
            },
        ],
        ExpansionVariant::Right => [
            PdCross {
                ends: [i0, e2, e3, i2],
                over02: rank[0] > rank[2],
            },
            PdCross {
                ends: [e0, e1, i0, i1],
                over02: rank[0] > rank[1],
            },
            PdCross {
                ends: [i2, e4, e5, i1],
                over02: rank[2] > rank[1],
            },
        ],
    }
}

/// Rotational normal form of a crossing, for structural matching: the
/// lexicographically least of the four rotations (rotating by one swaps
/// which pair is (0,2), so the over flag flips with odd rotations).
pub(crate) fn normalize_crossing(cr: &PdCross) -> ([u32; 4], bool) {
    let mut best: Option<([u32; 4], bool)> = None;
    for r in 0..4 {
        let ends = [
            cr.ends[r % 4],
            cr.ends[(r + 1) % 4],
            cr.ends[(r + 2) % 4],
            cr.ends[(r + 3) % 4],
        ];
        let over = if r % 2 == 0 { cr.over02 } else { !cr.over02 };
        let cand = (ends, over);
        if best.is_none() || cand < *best.as_ref().unwrap() {
            best = Some(cand);
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn expansion_is_a_valid_tangle() {
        for variant in [ExpansionVariant::Left, ExpansionVariant::Right] {
            let crossings = expand_triple([1, 2, 3, 4, 5, 6], [7, 8, 9], [2, 1, 0], variant);
            // Each internal id appears twice, each external once.
            let mut counts = std::collections::HashMap::new();
            for cr in &crossings {
                for e in cr.ends {
                    *counts.entry(e).or_insert(0) += 1;
                }
            }
            for e in 1..=6 {
                assert_eq!(counts[&e], 1);
            }
            for i in 7..=9 {
                assert_eq!(counts[&i], 2);
            }
            // Exactly one crossing per pair of passes.
            let overs: BTreeSet<bool> = crossings.iter().map(|c| c.over02).collect();
            assert!(!overs.is_empty());
        }
    }

    #[test]
    fn normalize_is_rotation_invariant() {
        let cr = PdCross {
            ends: [3, 1, 4, 1],
            over02: true,
        };
        let rot = PdCross {
            ends: [1, 4, 1, 3],
            over02: false,
        };
        assert_eq!(normalize_crossing(&cr), normalize_crossing(&rot));
    }
}
