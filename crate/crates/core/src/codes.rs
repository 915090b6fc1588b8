//! PD and sPD codes: the textual interchange format for 4-valent shadows
//! and 6-valent triple-crossing projections.
//!
//! A crossing record lists the edge labels met in counterclockwise rotation
//! order around the crossing. Strands pass through opposite positions
//! (slot i pairs with slot i + k at a 2k-valent crossing). At triple
//! crossings the three strands can always be oriented so that the six
//! edge ends alternate in-out around the crossing; `renumber` fixes that
//! natural orientation and relabels edges 1..3n, increasing along each
//! strand.

use crate::maps::{CombMap, MapError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {index} has {found} edges, expected {expected}")]
    Arity {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("edge label {label} occurs {count} times, expected exactly 2")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("edge labels must be positive")]
    NonPositiveLabel,
    #[error("code is empty")]
    Empty,
    #[error("code does not describe a spherical projection: {0}")]
    Map(#[from] MapError),
    #[error("no consistent natural orientation exists")]
    Unorientable,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CrossingName {
    #[serde(rename = "eX")]
    EX,
    #[serde(rename = "eY")]
    EY,
}

impl fmt::Display for CrossingName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingName::EX => write!(f, "eX"),
            CrossingName::EY => write!(f, "eY"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SpdCrossing {
    pub name: CrossingName,
    pub edges: [u32; 6],
}

/// Six-valent planar diagram code: one record per triple crossing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SPdCode {
    pub crossings: Vec<SpdCrossing>,
}

/// Classical planar diagram code: one 4-tuple per double crossing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PdCode {
    pub crossings: Vec<[u32; 4]>,
}

/// Partition of the edge labels into closed strands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrandDecomposition {
    /// One cyclic edge-label sequence per link component.
    pub components: Vec<Vec<u32>>,
}

impl StrandDecomposition {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), CodeError> {
        self.skip_ws();
        if self.text.get(self.pos) == Some(&ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CodeError::Syntax {
                pos: self.pos,
                msg: format!("expected '{}'", ch as char),
            })
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<(), CodeError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            Err(CodeError::Syntax {
                pos: self.pos,
                msg: format!("expected '{word}'"),
            })
        }
    }

    fn try_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32, CodeError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(CodeError::Syntax {
                pos: start,
                msg: "expected a positive integer".into(),
            });
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        let v: u32 = s.parse().map_err(|_| CodeError::Syntax {
            pos: start,
            msg: "integer out of range".into(),
        })?;
        if v == 0 {
            return Err(CodeError::NonPositiveLabel);
        }
        Ok(v)
    }

    fn number_list(&mut self) -> Result<Vec<u32>, CodeError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        loop {
            out.push(self.number()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                }
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    return Err(CodeError::Syntax {
                        pos: self.pos,
                        msg: "expected ',' or ']'".into(),
                    })
                }
            }
        }
        Ok(out)
    }

    fn end(&mut self) -> Result<(), CodeError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(CodeError::Syntax {
                pos: self.pos,
                msg: "trailing input".into(),
            })
        }
    }
}

fn check_multiplicities(labels: impl Iterator<Item = u32>) -> Result<(), CodeError> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    for (label, count) in counts {
        if count != 2 {
            return Err(CodeError::LabelMultiplicity { label, count });
        }
    }
    Ok(())
}

impl SPdCode {
    /// Parses `sPD[eX[i1,...,i6],...]`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<SPdCode, CodeError> {
        let mut sc = Scanner::new(text);
        sc.expect_word("sPD")?;
        sc.expect(b'[')?;
        let mut crossings = Vec::new();
        loop {
            let name = if sc.try_word("eX") {
                CrossingName::EX
            } else if sc.try_word("eY") {
                CrossingName::EY
            } else {
                return Err(CodeError::Syntax {
                    pos: sc.pos,
                    msg: "expected 'eX' or 'eY'".into(),
                });
            };
            let list = sc.number_list()?;
            if list.len() != 6 {
                return Err(CodeError::Arity {
                    index: crossings.len(),
                    found: list.len(),
                    expected: 6,
                });
            }
            let mut edges = [0u32; 6];
            edges.copy_from_slice(&list);
            crossings.push(SpdCrossing { name, edges });
            match sc.peek() {
                Some(b',') => {
                    sc.pos += 1;
                }
                Some(b']') => {
                    sc.pos += 1;
                    break;
                }
                _ => {
                    return Err(CodeError::Syntax {
                        pos: sc.pos,
                        msg: "expected ',' or ']'".into(),
                    })
                }
            }
        }
        sc.end()?;
        let code = SPdCode { crossings };
        code.validate()?;
        Ok(code)
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        if self.crossings.is_empty() {
            return Err(CodeError::Empty);
        }
        check_multiplicities(self.crossings.iter().flat_map(|c| c.edges.iter().copied()))
    }

    pub fn serialize(&self) -> String {
        let mut s = String::from("sPD[");
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&c.name.to_string());
            s.push('[');
            for (j, e) in c.edges.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&e.to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn tuples(&self) -> Vec<Vec<u32>> {
        self.crossings.iter().map(|c| c.edges.to_vec()).collect()
    }

    pub fn to_map(&self) -> Result<CombMap, CodeError> {
        let map = map_from_tuples(&self.tuples())?;
        map.require_spherical()?;
        Ok(map)
    }

    pub fn components(&self) -> Result<StrandDecomposition, CodeError> {
        self.validate()?;
        Ok(strand_components(&self.tuples()))
    }

    /// Relabels edges 1..3n, increasing along each strand under the natural
    /// orientation; see module docs for the start conventions.
    pub fn renumber(&self) -> Result<SPdCode, CodeError> {
        self.validate()?;
        let tuples = self.tuples();
        let relabel = renumber_map(&tuples)?;
        let crossings = self
            .crossings
            .iter()
            .map(|c| SpdCrossing {
                name: c.name,
                edges: c.edges.map(|e| relabel[&e]),
            })
            .collect();
        Ok(SPdCode { crossings })
    }
}

impl PdCode {
    /// Parses `PD[X[i1,i2,i3,i4],...]`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<PdCode, CodeError> {
        let mut sc = Scanner::new(text);
        sc.expect_word("PD")?;
        sc.expect(b'[')?;
        let mut crossings = Vec::new();
        loop {
            sc.expect_word("X")?;
            let list = sc.number_list()?;
            if list.len() != 4 {
                return Err(CodeError::Arity {
                    index: crossings.len(),
                    found: list.len(),
                    expected: 4,
                });
            }
            let mut edges = [0u32; 4];
            edges.copy_from_slice(&list);
            crossings.push(edges);
            match sc.peek() {
                Some(b',') => {
                    sc.pos += 1;
                }
                Some(b']') => {
                    sc.pos += 1;
                    break;
                }
                _ => {
                    return Err(CodeError::Syntax {
                        pos: sc.pos,
                        msg: "expected ',' or ']'".into(),
                    })
                }
            }
        }
        sc.end()?;
        let code = PdCode { crossings };
        code.validate()?;
        Ok(code)
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        if self.crossings.is_empty() {
            return Err(CodeError::Empty);
        }
        check_multiplicities(self.crossings.iter().flat_map(|c| c.iter().copied()))
    }

    pub fn serialize(&self) -> String {
        let mut s = String::from("PD[");
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('X');
            s.push('[');
            for (j, e) in c.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&e.to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn tuples(&self) -> Vec<Vec<u32>> {
        self.crossings.iter().map(|c| c.to_vec()).collect()
    }

    pub fn to_map(&self) -> Result<CombMap, CodeError> {
        let map = map_from_tuples(&self.tuples())?;
        map.require_spherical()?;
        Ok(map)
    }

    pub fn components(&self) -> Result<StrandDecomposition, CodeError> {
        self.validate()?;
        Ok(strand_components(&self.tuples()))
    }
}

impl fmt::Display for SPdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

// ---------------------------------------------------------------------------
// Shared tuple machinery

/// Occurrence of an edge label: (crossing index, slot index).
pub type Occ = (u32, u32);

pub(crate) fn occurrences(tuples: &[Vec<u32>]) -> BTreeMap<u32, Vec<Occ>> {
    let mut occs: BTreeMap<u32, Vec<Occ>> = BTreeMap::new();
    for (c, t) in tuples.iter().enumerate() {
        for (s, &e) in t.iter().enumerate() {
            occs.entry(e).or_default().push((c as u32, s as u32));
        }
    }
    occs
}

/// Builds the combinatorial map of a code; dart id = crossing * degree + slot.
pub(crate) fn map_from_tuples(tuples: &[Vec<u32>]) -> Result<CombMap, CodeError> {
    if tuples.is_empty() {
        return Err(CodeError::Empty);
    }
    check_multiplicities(tuples.iter().flat_map(|t| t.iter().copied()))?;
    let mut dart_ids: Vec<Vec<u32>> = Vec::new();
    let mut base = 0u32;
    for t in tuples {
        dart_ids.push((base..base + t.len() as u32).collect());
        base += t.len() as u32;
    }
    let occs = occurrences(tuples);
    let mut partner = vec![u32::MAX; base as usize];
    for occ in occs.values() {
        let a = dart_ids[occ[0].0 as usize][occ[0].1 as usize];
        let b = dart_ids[occ[1].0 as usize][occ[1].1 as usize];
        partner[a as usize] = b;
        partner[b as usize] = a;
    }
    Ok(CombMap::from_rotations(&dart_ids, partner)?)
}

/// Undirected strand decomposition via opposite-position pairing.
pub(crate) fn strand_components(tuples: &[Vec<u32>]) -> StrandDecomposition {
    let occs = occurrences(tuples);
    let mut visited: BTreeMap<u32, bool> = occs.keys().map(|&k| (k, false)).collect();
    let mut components = Vec::new();
    for (&start, _) in occs.iter() {
        if visited[&start] {
            continue;
        }
        // Walk the strand: from the head occurrence of the current directed
        // edge, leave at the opposite slot; the edge found there is next.
        let mut cycle = Vec::new();
        let mut edge = start;
        let mut head: Occ = occs[&start][0];
        loop {
            visited.insert(edge, true);
            cycle.push(edge);
            let (c, s) = head;
            let deg = tuples[c as usize].len() as u32;
            let exit = (c, (s + deg / 2) % deg);
            let next_edge = tuples[exit.0 as usize][exit.1 as usize];
            // The next head is the occurrence of next_edge that is not the
            // exit slot itself.
            let occ = &occs[&next_edge];
            let next_head = if occ[0] == exit { occ[1] } else { occ[0] };
            if next_edge == start && next_head == occs[&start][0] {
                break;
            }
            edge = next_edge;
            head = next_head;
        }
        components.push(cycle);
    }
    StrandDecomposition { components }
}

/// Natural orientation of a 6-valent code: for each crossing a parity bit
/// telling which slots are incoming, plus a direction for every edge.
pub(crate) struct Orientation {
    /// ins_at_even[c]: slots 0,2,4 are incoming at crossing c.
    pub ins_at_even: Vec<bool>,
    /// For each edge label, (tail occurrence, head occurrence).
    pub directions: BTreeMap<u32, (Occ, Occ)>,
}

impl Orientation {
    pub fn is_incoming(&self, c: u32, s: u32) -> bool {
        (s % 2 == 0) == self.ins_at_even[c as usize]
    }
}

/// Solves the in-out alternation constraints. Each edge must be incoming at
/// exactly one of its two occurrences, which is an XOR system over the
/// per-crossing parity bits; spherical 6-valent projections always admit a
/// solution, and exactly two (global reversal) when connected.
pub(crate) fn natural_orientation(
    tuples: &[Vec<u32>],
    flip: bool,
) -> Result<Orientation, CodeError> {
    let occs = occurrences(tuples);
    let n = tuples.len();
    let mut bit: Vec<Option<bool>> = vec![None; n];
    // Adjacency with parity: crossing c1 ~ c2 with required xor value.
    let mut adj: Vec<Vec<(u32, bool)>> = vec![Vec::new(); n];
    for occ in occs.values() {
        let (c1, s1) = occ[0];
        let (c2, s2) = occ[1];
        // bit[c1] ^ bit[c2] == !(parity(s1) ^ parity(s2))
        let want = !((s1 % 2 == 1) ^ (s2 % 2 == 1));
        if c1 == c2 {
            if want {
                return Err(CodeError::Unorientable);
            }
            continue;
        }
        adj[c1 as usize].push((c2, want));
        adj[c2 as usize].push((c1, want));
    }
    for seed in 0..n {
        if bit[seed].is_some() {
            continue;
        }
        bit[seed] = Some(flip);
        let mut stack = vec![seed as u32];
        while let Some(c) = stack.pop() {
            let b = bit[c as usize].unwrap();
            for &(d, want) in &adj[c as usize] {
                let expect = b ^ want;
                match bit[d as usize] {
                    None => {
                        bit[d as usize] = Some(expect);
                        stack.push(d);
                    }
                    Some(x) if x != expect => return Err(CodeError::Unorientable),
                    _ => {}
                }
            }
        }
    }
    let ins_at_even: Vec<bool> = bit.iter().map(|b| !b.unwrap()).collect();
    let o = Orientation {
        ins_at_even,
        directions: BTreeMap::new(),
    };
    let mut directions = BTreeMap::new();
    for (&e, occ) in &occs {
        let (a, b) = (occ[0], occ[1]);
        let a_in = o.is_incoming(a.0, a.1);
        let b_in = o.is_incoming(b.0, b.1);
        if a_in == b_in {
            return Err(CodeError::Unorientable);
        }
        let (tail, head) = if a_in { (b, a) } else { (a, b) };
        directions.insert(e, (tail, head));
    }
    Ok(Orientation {
        ins_at_even: o.ins_at_even,
        directions,
    })
}

/// Successor of a directed edge along its strand.
fn strand_successor(tuples: &[Vec<u32>], o: &Orientation, edge: u32) -> u32 {
    let (_, head) = o.directions[&edge];
    let (c, s) = head;
    let deg = tuples[c as usize].len() as u32;
    tuples[c as usize][((s + deg / 2) % deg) as usize]
}

fn strand_predecessor(tuples: &[Vec<u32>], o: &Orientation, edge: u32) -> u32 {
    let (tail, _) = o.directions[&edge];
    let (c, s) = tail;
    let deg = tuples[c as usize].len() as u32;
    tuples[c as usize][((s + deg / 2) % deg) as usize]
}

/// Relabeling map old label -> new label (1..3n), per the renumber
/// conventions.
pub(crate) fn renumber_map(tuples: &[Vec<u32>]) -> Result<BTreeMap<u32, u32>, CodeError> {
    let base = natural_orientation(tuples, false)?;
    // Decide the global reversal: scan components by smallest original
    // label; the first whose successor and predecessor differ decides
    // (successor must be the smaller of the two).
    let comps = strand_components(tuples);
    let mut comps: Vec<Vec<u32>> = comps.components;
    for c in comps.iter_mut() {
        let min_pos = c
            .iter()
            .enumerate()
            .min_by_key(|(_, &e)| e)
            .map(|(i, _)| i)
            .unwrap();
        c.rotate_left(min_pos);
    }
    comps.sort_by_key(|c| c[0]);
    let mut flip = false;
    for comp in &comps {
        let lead = comp[0];
        let succ = strand_successor(tuples, &base, lead);
        let pred = strand_predecessor(tuples, &base, lead);
        if succ != pred {
            flip = pred < succ;
            break;
        }
    }
    let o = if flip {
        natural_orientation(tuples, true)?
    } else {
        base
    };
    let mut relabel = BTreeMap::new();
    let mut next_label = 1u32;
    for comp in &comps {
        let start = comp[0];
        let mut e = start;
        loop {
            relabel.insert(e, next_label);
            next_label += 1;
            e = strand_successor(tuples, &o, e);
            if e == start {
                break;
            }
        }
    }
    Ok(relabel)
}

/// Worked-example fixtures shared across the test suites.
#[cfg(test)]
pub(crate) mod fixtures {
    pub(crate) const TREFOIL_SPD: &str = "sPD[eY[4,2,5,5,1,6],eY[3,1,2,4,6,3]]";
    pub(crate) const HOPF_SPD: &str = "sPD[eX[1,1,3,2,2,3]]";
    pub(crate) const FIG17_PD: &str = "PD[X[1,4,2,5],X[3,8,4,9],X[12,6,13,5],X[13,16,14,1],\
         X[9,14,10,15],X[15,10,16,11],X[6,12,7,11],X[7,2,8,3]]";
    pub(crate) const FIG17_SPD: &str =
        "sPD[eX[1,4,2,12,6,13],eX[4,9,3,3,7,2],eX[15,10,16,6,12,7],eX[1,13,16,10,15,9]]";
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn parse_trefoil_spd() {
        let code = SPdCode::parse(TREFOIL_SPD).unwrap();
        assert_eq!(code.crossing_count(), 2);
        assert!(code.crossings.iter().all(|c| c.name == CrossingName::EY));
        assert_eq!(code.serialize(), TREFOIL_SPD);
    }

    #[test]
    fn parse_ignores_whitespace() {
        let spaced = "sPD[eY[4, 2, 5, 5, 1, 6], eY[3, 1, 2, 4, 6, 3]]";
        let code = SPdCode::parse(spaced).unwrap();
        assert_eq!(code.serialize(), TREFOIL_SPD);
    }

    #[test]
    fn parse_hopf_single_crossing() {
        let code = SPdCode::parse(HOPF_SPD).unwrap();
        assert_eq!(code.crossing_count(), 1);
        assert_eq!(code.crossings[0].name, CrossingName::EX);
    }

    #[test]
    fn multiplicity_violation_rejected() {
        let err = SPdCode::parse("sPD[eX[1,2,3,4,5,5]]").unwrap_err();
        assert!(matches!(err, CodeError::LabelMultiplicity { .. }));
    }

    #[test]
    fn pd_parse_and_roundtrip() {
        let code = PdCode::parse(FIG17_PD).unwrap();
        assert_eq!(code.crossing_count(), 8);
        let labels: std::collections::BTreeSet<u32> =
            code.crossings.iter().flatten().copied().collect();
        assert_eq!(labels, (1..=16).collect());
        let compact = code.serialize();
        assert_eq!(PdCode::parse(&compact).unwrap(), code);
    }

    #[test]
    fn pd_curl_on_loop_parses_but_is_not_spherical() {
        let code = PdCode::parse("PD[X[1,2,1,2]]").unwrap();
        assert_eq!(code.crossing_count(), 1);
        assert!(code.to_map().is_err());
    }

    #[test]
    fn pd_arity_error() {
        let err = PdCode::parse("PD[X[1,2,3]]").unwrap_err();
        assert!(matches!(
            err,
            CodeError::Arity {
                found: 3,
                expected: 4,
                ..
            }
        ));
    }

    #[test]
    fn component_counts() {
        let tref = SPdCode::parse(TREFOIL_SPD).unwrap();
        assert_eq!(tref.components().unwrap().component_count(), 1);
        let hopf = SPdCode::parse(HOPF_SPD).unwrap();
        assert_eq!(hopf.components().unwrap().component_count(), 2);
        let fig17 = SPdCode::parse(FIG17_SPD).unwrap();
        assert_eq!(fig17.components().unwrap().component_count(), 3);
        // Table 5 row 8^4_1: four components.
        let l841 = SPdCode::parse(
            "sPD[eY[8,1,9,9,2,10],eY[3,2,4,4,1,5],eY[5,12,6,6,11,3],eY[10,11,7,7,12,8]]",
        )
        .unwrap();
        assert_eq!(l841.components().unwrap().component_count(), 4);
    }

    #[test]
    fn renumber_idempotent_on_published_codes() {
        for text in [
            TREFOIL_SPD,
            HOPF_SPD,
            "sPD[eX[5,2,4,6,1,5],eY[3,1,2,4,6,3]]", // 4_1 row
        ] {
            let code = SPdCode::parse(text).unwrap();
            let renumbered = code.renumber().unwrap();
            assert_eq!(renumbered, code, "expected {text} to renumber to itself");
        }
    }

    #[test]
    fn renumber_normalizes_sparse_labels() {
        let fig17 = SPdCode::parse(FIG17_SPD).unwrap();
        let ren = fig17.renumber().unwrap();
        let labels: std::collections::BTreeSet<u32> = ren
            .crossings
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        assert_eq!(labels, (1..=12).collect());
        assert_eq!(ren.renumber().unwrap(), ren);
        // Relabeling preserves the underlying map.
        let m1 = fig17.to_map().unwrap();
        let m2 = ren.to_map().unwrap();
        assert!(m1.isomorphism(&m2, false).is_some());
        // And the strand partition shape.
        let c1 = fig17.components().unwrap();
        let c2 = ren.components().unwrap();
        let mut s1: Vec<usize> = c1.components.iter().map(|c| c.len()).collect();
        let mut s2: Vec<usize> = c2.components.iter().map(|c| c.len()).collect();
        s1.sort_unstable();
        s2.sort_unstable();
        assert_eq!(s1, s2);
    }

    #[test]
    fn hopf_map_counts() {
        let hopf = SPdCode::parse(HOPF_SPD).unwrap();
        let m = hopf.to_map().unwrap();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.face_count(), 4);
    }

    #[test]
    fn empty_code_rejected() {
        assert!(SPdCode::parse("sPD[]").is_err());
        assert!(PdCode::parse("PD[]").is_err());
    }

    #[test]
    fn json_form_roundtrip() {
        let code = SPdCode::parse(TREFOIL_SPD).unwrap();
        let json = serde_json::to_string(&code).unwrap();
        assert!(json.contains("\"name\":\"eY\""));
        let back: SPdCode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, code);
    }
}
