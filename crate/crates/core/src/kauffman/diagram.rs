//! Decorated classical diagrams: PD codes with over/under crossing data,
//! strand walks, crossing signs, and canonical keys for memoization and
//! mirror-aware matching.

use super::KauffmanError;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// One classical crossing: edge ids counterclockwise; strands pass through
/// opposite slots (0,2) and (1,3); `over02` marks which pass is on top.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PdCross {
    pub ends: [u32; 4],
    pub over02: bool,
}

/// A classical link diagram with over/under decoration, plus any number of
/// crossing-free circles split from the rest.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DecoratedPd {
    pub crossings: Vec<PdCross>,
    pub free_circles: usize,
}

/// Reference orientation data from a deterministic strand walk.
pub struct WalkData {
    /// Strand components as edge-id cycles (free circles not included).
    pub components: Vec<Vec<u32>>,
    /// Per crossing: which slots are incoming under the walk orientation.
    pub incoming: Vec<[bool; 4]>,
    /// Per crossing: +1/-1 crossing sign under the walk orientation.
    pub signs: Vec<i8>,
    /// Per crossing: component index of pass (0,2) and of pass (1,3).
    pub pass_component: Vec<[usize; 2]>,
}

impl WalkData {
    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Sum of signs of self-crossings (both passes on one component);
    /// independent of component orientations.
    pub fn self_writhe(&self) -> i64 {
        self.signs
            .iter()
            .zip(&self.pass_component)
            .filter(|(_, pc)| pc[0] == pc[1])
            .map(|(&s, _)| s as i64)
            .sum()
    }

    /// Signed counts of crossings between distinct components, keyed by
    /// (smaller, larger) component index, under the walk orientation.
    pub fn linking(&self) -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for (&s, pc) in self.signs.iter().zip(&self.pass_component) {
            if pc[0] != pc[1] {
                let key = (pc[0].min(pc[1]), pc[0].max(pc[1]));
                *out.entry(key).or_insert(0) += s as i64;
            }
        }
        out
    }

    /// Writhes over all component-orientation classes (global reversal
    /// fixed by the first component).
    pub fn writhe_variants(&self) -> Vec<i64> {
        let m = self.components.len();
        let selfw = self.self_writhe();
        if m <= 1 {
            return vec![self.writhe()];
        }
        let linking = self.linking();
        let mut out = Vec::new();
        for mask in 0..(1u32 << (m - 1)) {
            let sign = |i: usize| -> i64 {
                if i == 0 || mask & (1 << (i - 1)) == 0 {
                    1
                } else {
                    -1
                }
            };
            let mut w = selfw;
            for (&(i, j), &l) in &linking {
                w += sign(i) * sign(j) * l;
            }
            out.push(w);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl DecoratedPd {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn occurrences(&self) -> BTreeMap<u32, Vec<(u32, u32)>> {
        let mut occs: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (c, cr) in self.crossings.iter().enumerate() {
            for (s, &e) in cr.ends.iter().enumerate() {
                occs.entry(e).or_default().push((c as u32, s as u32));
            }
        }
        occs
    }

    pub fn validate(&self) -> Result<(), KauffmanError> {
        if self.crossings.is_empty() && self.free_circles == 0 {
            return Err(KauffmanError::Malformed("empty diagram".into()));
        }
        for (e, occ) in self.occurrences() {
            if occ.len() != 2 {
                return Err(KauffmanError::Malformed(format!(
                    "edge {e} occurs {} times",
                    occ.len()
                )));
            }
        }
        Ok(())
    }

    /// Deterministic strand walk assigning a reference orientation:
    /// components start at their smallest edge id, directed from its first
    /// occurrence in code order.
    pub fn walk(&self) -> WalkData {
        let occs = self.occurrences();
        let nc = self.crossings.len();
        let mut incoming = vec![[false; 4]; nc];
        let mut pass_component = vec![[usize::MAX; 2]; nc];
        let mut component_of: BTreeMap<u32, usize> = BTreeMap::new();
        let mut components = Vec::new();
        for (&start, occ) in &occs {
            if component_of.contains_key(&start) {
                continue;
            }
            let comp_id = components.len();
            let mut cycle = Vec::new();
            let mut edge = start;
            let mut head = occ[1]; // directed start -> its second occurrence
            loop {
                component_of.insert(edge, comp_id);
                cycle.push(edge);
                let (c, s) = head;
                incoming[c as usize][s as usize] = true;
                pass_component[c as usize][(s % 2) as usize] = comp_id;
                let exit = ((s + 2) % 4, c);
                let next_edge = self.crossings[c as usize].ends[exit.0 as usize];
                let nocc = &occs[&next_edge];
                let here = (exit.1, exit.0);
                let next_head = if nocc[0] == here { nocc[1] } else { nocc[0] };
                if next_edge == start && next_head == occ[1] {
                    break;
                }
                edge = next_edge;
                head = next_head;
            }
            components.push(cycle);
        }
        let signs = (0..nc)
            .map(|c| crossing_sign(&self.crossings[c], &incoming[c]))
            .collect();
        WalkData {
            components,
            incoming,
            signs,
            pass_component,
        }
    }

    /// Total circles: strand components plus split circles.
    pub fn circle_count(&self) -> usize {
        if self.crossings.is_empty() {
            self.free_circles
        } else {
            self.walk().components.len() + self.free_circles
        }
    }

    /// Canonical encoding preserving orientation and decoration; equal keys
    /// iff the decorated diagrams are isomorphic as labeled maps.
    pub fn canonical_key(&self) -> Vec<u32> {
        self.canonical_key_variant(false, false)
    }

    /// Minimal key over sphere reflection and height reversal; two
    /// diagrams share it iff they agree up to mirror image.
    pub fn mirror_class_key(&self) -> Vec<u32> {
        let mut best = self.canonical_key_variant(false, false);
        for (mirrored, flipped) in [(false, true), (true, false), (true, true)] {
            let k = self.canonical_key_variant(mirrored, flipped);
            if k < best {
                best = k;
            }
        }
        best
    }

    fn canonical_key_variant(&self, mirrored: bool, height_flipped: bool) -> Vec<u32> {
        let n = self.crossings.len() * 4;
        if n == 0 {
            return vec![u32::MAX, self.free_circles as u32];
        }
        let mut partner = vec![u32::MAX; n];
        {
            let mut first_slot: HashMap<u32, u32> = HashMap::new();
            for d in 0..n as u32 {
                let e = self.crossings[(d / 4) as usize].ends[(d % 4) as usize];
                if let Some(&other) = first_slot.get(&e) {
                    partner[d as usize] = other;
                    partner[other as usize] = d;
                } else {
                    first_slot.insert(e, d);
                }
            }
        }
        let step = |d: u32| -> u32 {
            let (c, s) = (d / 4, d % 4);
            if mirrored {
                c * 4 + (s + 3) % 4
            } else {
                c * 4 + (s + 1) % 4
            }
        };
        let over_bit = |d: u32| -> u32 {
            let (c, s) = (d / 4, d % 4);
            let on_over = (s % 2 == 0) == self.crossings[c as usize].over02;
            (on_over ^ height_flipped) as u32
        };
        let mut best: Option<Vec<u32>> = None;
        for root in 0..n as u32 {
            let mut label = vec![u32::MAX; n];
            let mut order = Vec::with_capacity(n);
            label[root as usize] = 0;
            order.push(root);
            let mut out = Vec::with_capacity(3 * n + 1);
            let mut i = 0;
            let mut worse = false;
            let mut better = false;
            while i < order.len() {
                let d = order[i];
                for (k, img) in [step(d), partner[d as usize]].into_iter().enumerate() {
                    let l = if label[img as usize] == u32::MAX {
                        let l = order.len() as u32;
                        label[img as usize] = l;
                        order.push(img);
                        l
                    } else {
                        label[img as usize]
                    };
                    let val = if k == 0 { l } else { l * 2 + over_bit(d) };
                    if !better {
                        if let Some(b) = &best {
                            let pos = out.len();
                            if val > b[pos] {
                                worse = true;
                                break;
                            }
                            if val < b[pos] {
                                better = true;
                            }
                        }
                    }
                    out.push(val);
                }
                if worse {
                    break;
                }
                i += 1;
            }
            if worse {
                continue;
            }
            out.push(self.free_circles as u32);
            match &best {
                Some(b) if out >= *b => {}
                _ => best = Some(out),
            }
        }
        best.unwrap()
    }

    /// Renames edge ids to 1..2n in first-appearance order.
    pub fn compact_labels(&self) -> DecoratedPd {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let mut next = 1u32;
        let crossings = self
            .crossings
            .iter()
            .map(|cr| PdCross {
                ends: cr.ends.map(|e| {
                    *map.entry(e).or_insert_with(|| {
                        let l = next;
                        next += 1;
                        l
                    })
                }),
                over02: cr.over02,
            })
            .collect();
        DecoratedPd {
            crossings,
            free_circles: self.free_circles,
        }
    }

    /// Parses `PD[X[a,b,c,d],...]` where each 4-tuple is counterclockwise
    /// with the incoming under-strand end first (the standard convention),
    /// optionally with explicit sign suffixes `X+`/`X-`. When labels run
    /// consecutively along every component the suffix is validated against
    /// the derived sign.
    pub fn parse(text: &str) -> Result<DecoratedPd, KauffmanError> {
        let t = text.trim();
        let inner = t
            .strip_prefix("PD[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| KauffmanError::Malformed("expected PD[...]".into()))?;
        let mut crossings = Vec::new();
        let mut declared_signs = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            rest = rest
                .strip_prefix('X')
                .ok_or_else(|| KauffmanError::Malformed("expected X".into()))?
                .trim_start();
            let sign = if let Some(r) = rest.strip_prefix('+') {
                rest = r;
                Some(1i8)
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                Some(-1i8)
            } else {
                None
            };
            declared_signs.push(sign);
            let close = rest
                .find(']')
                .ok_or_else(|| KauffmanError::Malformed("unclosed X[".into()))?;
            let body = rest[..close]
                .trim_start()
                .strip_prefix('[')
                .ok_or_else(|| KauffmanError::Malformed("expected [".into()))?;
            let nums: Vec<u32> = body
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|e| KauffmanError::Malformed(format!("bad integer: {e}")))?;
            if nums.len() != 4 {
                return Err(KauffmanError::Malformed(format!(
                    "crossing has {} ends",
                    nums.len()
                )));
            }
            crossings.push(PdCross {
                ends: [nums[0], nums[1], nums[2], nums[3]],
                over02: false, // under strand occupies (0,2) in standard codes
            });
            rest = rest[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        let pd = DecoratedPd {
            crossings,
            free_circles: 0,
        };
        pd.validate()?;
        // Check declared signs when derivable from label monotonicity.
        if declared_signs.iter().any(|s| s.is_some()) {
            if let Some(walk) = pd.monotone_walk() {
                for (c, declared) in declared_signs.iter().enumerate() {
                    if let Some(s) = declared {
                        if walk.signs[c] != *s {
                            return Err(KauffmanError::Malformed(format!(
                                "crossing {c} declared sign {s} but labels give {}",
                                walk.signs[c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(pd)
    }

    /// Walk reoriented so edge labels increase along every component, when
    /// the labeling permits it (as in standard published codes).
    fn monotone_walk(&self) -> Option<WalkData> {
        let w = self.walk();
        let mut flip_component = vec![false; w.components.len()];
        for (comp_id, cycle) in w.components.iter().enumerate() {
            if cycle.len() < 2 {
                continue;
            }
            let min = *cycle.iter().min().unwrap();
            let pos = cycle.iter().position(|&e| e == min).unwrap();
            let succ = cycle[(pos + 1) % cycle.len()];
            let pred = cycle[(pos + cycle.len() - 1) % cycle.len()];
            if succ == min + 1 {
                continue;
            }
            if pred != min + 1 {
                return None;
            }
            flip_component[comp_id] = true;
        }
        let mut incoming = w.incoming.clone();
        for (c, pc) in w.pass_component.iter().enumerate() {
            for pass in 0..2 {
                if flip_component[pc[pass]] {
                    incoming[c][pass] = !incoming[c][pass];
                    incoming[c][pass + 2] = !incoming[c][pass + 2];
                }
            }
        }
        let signs = (0..self.crossings.len())
            .map(|c| crossing_sign(&self.crossings[c], &incoming[c]))
            .collect();
        Some(WalkData {
            components: w.components,
            incoming,
            signs,
            pass_component: w.pass_component,
        })
    }

    /// Serializes with tuples rotated so the incoming under end is first
    /// and explicit sign suffixes.
    pub fn serialize(&self) -> String {
        let walk = self.walk();
        let mut s = String::from("PD[");
        for (c, cr) in self.crossings.iter().enumerate() {
            if c > 0 {
                s.push(',');
            }
            let under_first = if !cr.over02 {
                if walk.incoming[c][0] {
                    0
                } else {
                    2
                }
            } else if walk.incoming[c][1] {
                1
            } else {
                3
            };
            s.push('X');
            s.push(if walk.signs[c] > 0 { '+' } else { '-' });
            s.push('[');
            for k in 0..4 {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&cr.ends[(under_first + k) % 4].to_string());
            }
            s.push(']');
        }
        s.push(']');
        if self.free_circles > 0 {
            s.push_str(&format!(" circles[{}]", self.free_circles));
        }
        s
    }
}

impl fmt::Display for DecoratedPd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Crossing sign under the given incoming-slot pattern: positive when the
/// over direction is the counterclockwise quarter-turn of the under
/// direction.
pub(crate) fn crossing_sign(cr: &PdCross, incoming: &[bool; 4]) -> i8 {
    let (under_even, over_even) = if cr.over02 { (false, true) } else { (true, false) };
    let pick = |even: bool| -> usize {
        if even {
            if incoming[0] {
                0
            } else {
                2
            }
        } else if incoming[1] {
            1
        } else {
            3
        }
    };
    let su = pick(under_even);
    let so = pick(over_even);
    if (su + 1) % 4 == so {
        1
    } else {
        -1
    }
}

/// Union-find over edge ids used when crossings are removed and their
/// strand ends spliced together; splicing the two ends of one edge class
/// closes a circle.
pub(crate) struct Splicer {
    parent: HashMap<u32, u32>,
    pub circles: usize,
}

impl Splicer {
    pub fn new() -> Self {
        Splicer {
            parent: HashMap::new(),
            circles: 0,
        }
    }

    pub fn find(&mut self, e: u32) -> u32 {
        let p = *self.parent.get(&e).unwrap_or(&e);
        if p == e {
            return e;
        }
        let root = self.find(p);
        self.parent.insert(e, root);
        root
    }

    pub fn splice(&mut self, e: u32, f: u32) {
        let (re, rf) = (self.find(e), self.find(f));
        if re == rf {
            self.circles += 1;
        } else {
            self.parent.insert(re, rf);
        }
    }
}

/// Removes the listed crossings, splicing the given pairs of edge ids.
pub(crate) fn remove_crossings(
    pd: &DecoratedPd,
    remove: &[usize],
    splices: &[(u32, u32)],
) -> DecoratedPd {
    let mut splicer = Splicer::new();
    for &(e, f) in splices {
        splicer.splice(e, f);
    }
    let crossings: Vec<PdCross> = pd
        .crossings
        .iter()
        .enumerate()
        .filter(|(i, _)| !remove.contains(i))
        .map(|(_, cr)| PdCross {
            ends: cr.ends.map(|e| splicer.find(e)),
            over02: cr.over02,
        })
        .collect();
    DecoratedPd {
        crossings,
        free_circles: pd.free_circles + splicer.circles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Standard trefoil code.
    fn trefoil() -> DecoratedPd {
        DecoratedPd::parse("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap()
    }

    #[test]
    fn parse_and_walk_trefoil() {
        let t = trefoil();
        let w = t.walk();
        assert_eq!(w.components.len(), 1);
        assert_eq!(w.signs.iter().map(|&s| s as i64).sum::<i64>().abs(), 3);
        assert_eq!(t.circle_count(), 1);
    }

    #[test]
    fn hopf_walk() {
        let h = DecoratedPd::parse("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap();
        let w = h.walk();
        assert_eq!(w.components.len(), 2);
        assert_eq!(w.self_writhe(), 0);
        assert_eq!(w.writhe_variants().len(), 2); // +-2 by reversal
    }

    #[test]
    fn canonical_key_invariant_under_relabeling() {
        let t = trefoil();
        // Shift all edge labels.
        let shifted = DecoratedPd {
            crossings: t
                .crossings
                .iter()
                .map(|c| PdCross {
                    ends: c.ends.map(|e| e + 10),
                    over02: c.over02,
                })
                .collect(),
            free_circles: 0,
        };
        assert_eq!(t.canonical_key(), shifted.canonical_key());
    }

    #[test]
    fn mirror_class_key_identifies_mirror() {
        let t = trefoil();
        let mirrored = DecoratedPd {
            crossings: t
                .crossings
                .iter()
                .map(|c| PdCross {
                    ends: c.ends,
                    over02: !c.over02,
                })
                .collect(),
            free_circles: 0,
        };
        assert_ne!(t.canonical_key(), mirrored.canonical_key());
        assert_eq!(t.mirror_class_key(), mirrored.mirror_class_key());
    }

    #[test]
    fn splice_closes_circles() {
        // Smooth the only crossing of a one-crossing unknot diagram.
        let d = DecoratedPd {
            crossings: vec![PdCross {
                ends: [1, 1, 2, 2],
                over02: false,
            }],
            free_circles: 0,
        };
        let smoothed = remove_crossings(&d, &[0], &[(1, 1), (2, 2)]);
        assert_eq!(smoothed.crossings.len(), 0);
        assert_eq!(smoothed.free_circles, 2);
        let other = remove_crossings(&d, &[0], &[(1, 2), (1, 2)]);
        assert_eq!(other.free_circles, 1);
    }

    #[test]
    fn serialize_roundtrip() {
        let t = trefoil();
        let text = t.serialize();
        let back = DecoratedPd::parse(&text).unwrap();
        assert_eq!(back.canonical_key(), t.canonical_key());
    }
}
