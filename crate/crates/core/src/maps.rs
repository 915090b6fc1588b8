//! Spherical combinatorial maps.
//!
//! A map is stored as two permutations of its darts (edge ends): `next`
//! rotates one step counterclockwise around the dart's vertex, `partner`
//! swaps the two ends of an edge. Faces are the orbits of
//! `d -> next[partner[d]]`; a connected map is spherical exactly when
//! `V - E + F = 2`.
//!
//! Darts double as the "edge side" labels of the classical permutation-pair
//! presentation: `sigma_tau` derives the face permutation sigma and vertex
//! permutation tau with `sigma * tau` an involution, and isotopy testing is
//! simultaneous conjugacy of the pair.

use crate::perm::Perm;
use thiserror::Error;

pub type Dart = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("map has no darts")]
    Empty,
    #[error("dart permutations are inconsistent: {0}")]
    Inconsistent(&'static str),
    #[error("map is not connected")]
    Disconnected,
    #[error("map is not spherical (V - E + F = {chi}, expected 2)")]
    NotSpherical { chi: i64 },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CombMap {
    next: Vec<Dart>,
    partner: Vec<Dart>,
}

/// Canonical encoding of a map; equal forms iff isomorphic maps
/// (up to mirror when requested).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    pub bytes: Vec<u32>,
    /// True when the mirrored orientation produced the minimal encoding.
    pub mirror_flag: bool,
}

impl CombMap {
    pub fn new(next: Vec<Dart>, partner: Vec<Dart>) -> Result<Self, MapError> {
        if next.is_empty() {
            return Err(MapError::Empty);
        }
        if next.len() != partner.len() || next.len() % 2 != 0 {
            return Err(MapError::Inconsistent("dart count"));
        }
        let n = next.len() as u32;
        let mut seen = vec![false; n as usize];
        for &d in &next {
            if d >= n || seen[d as usize] {
                return Err(MapError::Inconsistent("next is not a permutation"));
            }
            seen[d as usize] = true;
        }
        for (d, &p) in partner.iter().enumerate() {
            if p >= n || p == d as u32 || partner[p as usize] != d as u32 {
                return Err(MapError::Inconsistent(
                    "partner is not a fixed-point-free involution",
                ));
            }
        }
        Ok(CombMap { next, partner })
    }

    /// Builds from per-vertex counterclockwise rotations of globally
    /// numbered darts, plus the edge involution.
    pub fn from_rotations(rotations: &[Vec<Dart>], partner: Vec<Dart>) -> Result<Self, MapError> {
        let n: usize = rotations.iter().map(|r| r.len()).sum();
        let mut next = vec![u32::MAX; n];
        for rot in rotations {
            for (i, &d) in rot.iter().enumerate() {
                if d as usize >= n || next[d as usize] != u32::MAX {
                    return Err(MapError::Inconsistent("rotation darts"));
                }
                next[d as usize] = rot[(i + 1) % rot.len()];
            }
        }
        CombMap::new(next, partner)
    }

    pub fn dart_count(&self) -> usize {
        self.next.len()
    }

    pub fn edge_count(&self) -> usize {
        self.next.len() / 2
    }

    pub fn next(&self, d: Dart) -> Dart {
        self.next[d as usize]
    }

    pub fn partner(&self, d: Dart) -> Dart {
        self.partner[d as usize]
    }

    fn prev_table(&self) -> Vec<Dart> {
        let mut prev = vec![0; self.next.len()];
        for (d, &n) in self.next.iter().enumerate() {
            prev[n as usize] = d as u32;
        }
        prev
    }

    /// Face successor: cross the edge, then turn one step around the far
    /// vertex. Orbits are the faces.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.next[self.partner[d as usize] as usize]
    }

    fn orbits(&self, step: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for s in 0..self.dart_count() as u32 {
            if seen[s as usize] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s as usize] = true;
            let mut d = step(s);
            while d != s {
                seen[d as usize] = true;
                orbit.push(d);
                d = step(d);
            }
            out.push(orbit);
        }
        out
    }

    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.next(d))
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.face_next(d))
    }

    /// Face degrees: a k-gon face meets k edge sides, one per orbit step.
    pub fn face_degrees(&self) -> Vec<usize> {
        self.faces().iter().map(|f| f.len()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = stack.pop() {
            for img in [self.next(d), self.partner(d)] {
                if !seen[img as usize] {
                    seen[img as usize] = true;
                    reached += 1;
                    stack.push(img);
                }
            }
        }
        reached == n
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Connected and genus zero.
    pub fn is_spherical(&self) -> bool {
        self.is_connected() && self.euler_characteristic() == 2
    }

    pub fn require_spherical(&self) -> Result<(), MapError> {
        if !self.is_connected() {
            return Err(MapError::Disconnected);
        }
        let chi = self.euler_characteristic();
        if chi != 2 {
            return Err(MapError::NotSpherical { chi });
        }
        Ok(())
    }

    /// Reverses every vertex rotation.
    pub fn mirror(&self) -> CombMap {
        CombMap {
            next: self.prev_table(),
            partner: self.partner.clone(),
        }
    }

    /// Swaps faces and vertices; `dual(dual(m)) == m` exactly.
    pub fn dual(&self) -> CombMap {
        let next = (0..self.dart_count() as u32)
            .map(|d| self.face_next(d))
            .collect();
        CombMap {
            next,
            partner: self.partner.clone(),
        }
    }

    pub fn relabel(&self, s: &Perm) -> CombMap {
        assert_eq!(s.len(), self.dart_count());
        let n = self.dart_count();
        let mut next = vec![0u32; n];
        let mut partner = vec![0u32; n];
        for d in 0..n as u32 {
            next[s.apply(d) as usize] = s.apply(self.next(d));
            partner[s.apply(d) as usize] = s.apply(self.partner(d));
        }
        CombMap { next, partner }
    }

    /// Encodes the map relabeled by breadth-first discovery from `root`,
    /// walking `next` (or its inverse when `mirrored`) and `partner`.
    /// Returns None as soon as the encoding is lexicographically worse
    /// than `best`.
    fn encode_from(
        &self,
        root: Dart,
        prev: &[Dart],
        mirrored: bool,
        best: Option<&[u32]>,
    ) -> Option<Vec<u32>> {
        let n = self.dart_count();
        let mut label = vec![u32::MAX; n];
        let mut order: Vec<Dart> = Vec::with_capacity(n);
        let mut out: Vec<u32> = Vec::with_capacity(2 * n);
        label[root as usize] = 0;
        order.push(root);
        // While `comparing`, out.len() tracks the prefix matched against
        // `best`; once strictly smaller, comparison is off for good.
        let mut comparing = best.is_some();
        let mut i = 0usize;
        while i < order.len() {
            let d = order[i];
            let step = if mirrored {
                prev[d as usize]
            } else {
                self.next[d as usize]
            };
            for img in [step, self.partner[d as usize]] {
                let l = if label[img as usize] == u32::MAX {
                    let l = order.len() as u32;
                    label[img as usize] = l;
                    order.push(img);
                    l
                } else {
                    label[img as usize]
                };
                if comparing {
                    let b = best.unwrap()[out.len()];
                    if l > b {
                        return None;
                    }
                    if l < b {
                        comparing = false;
                    }
                }
                out.push(l);
            }
            i += 1;
        }
        if order.len() != n {
            // Disconnected; callers require connected maps.
            return None;
        }
        Some(out)
    }

    /// Minimal encoding over all starting darts and, optionally, both
    /// orientations.
    pub fn canonical_form(&self, allow_mirror: bool) -> CanonicalForm {
        let prev = self.prev_table();
        let mut best: Option<Vec<u32>> = None;
        let mut mirror_flag = false;
        for mirrored in [false, true] {
            if mirrored && !allow_mirror {
                break;
            }
            for root in 0..self.dart_count() as u32 {
                if let Some(code) = self.encode_from(root, &prev, mirrored, best.as_deref()) {
                    let better = match &best {
                        None => true,
                        Some(b) => code.as_slice() < b.as_slice(),
                    };
                    if better {
                        best = Some(code);
                        mirror_flag = mirrored;
                    }
                }
            }
        }
        CanonicalForm {
            bytes: best.expect("connected map has an encoding"),
            mirror_flag,
        }
    }

    /// Canonical key including orientation class (mirror-aware).
    pub fn canonical_key(&self, allow_mirror: bool) -> Vec<u32> {
        self.canonical_form(allow_mirror).bytes
    }

    /// Searches for a relabeling `s` with `s . next1 . s^-1 = next2` and
    /// `s . partner1 . s^-1 = partner2` by anchoring dart 0 of `self` to
    /// every dart of `other` and propagating. Independent of
    /// `canonical_form`. Returns the witness together with a flag telling
    /// whether `other` had to be mirrored.
    pub fn isomorphism(&self, other: &CombMap, allow_mirror: bool) -> Option<(Perm, bool)> {
        if self.dart_count() != other.dart_count() {
            return None;
        }
        for mirrored in [false, true] {
            if mirrored && !allow_mirror {
                break;
            }
            let target = if mirrored {
                other.mirror()
            } else {
                other.clone()
            };
            for anchor in 0..other.dart_count() as u32 {
                if let Some(s) = self.try_match(&target, anchor) {
                    return Some((s, mirrored));
                }
            }
        }
        None
    }

    fn try_match(&self, other: &CombMap, anchor: Dart) -> Option<Perm> {
        let n = self.dart_count();
        let mut image = vec![u32::MAX; n];
        let mut hit = vec![false; n];
        image[0] = anchor;
        hit[anchor as usize] = true;
        let mut stack = vec![0u32];
        while let Some(d) = stack.pop() {
            let id = image[d as usize];
            for (src, dst) in [
                (self.next(d), other.next(id)),
                (self.partner(d), other.partner(id)),
            ] {
                if image[src as usize] == u32::MAX {
                    if hit[dst as usize] {
                        return None;
                    }
                    image[src as usize] = dst;
                    hit[dst as usize] = true;
                    stack.push(src);
                } else if image[src as usize] != dst {
                    return None;
                }
            }
        }
        if image.iter().any(|&i| i == u32::MAX) {
            return None; // disconnected; should not happen for valid inputs
        }
        Some(Perm::from_images(image))
    }

    /// The classical presentation: face permutation sigma and vertex
    /// permutation tau on the darts (edge sides), with `sigma * tau`
    /// the edge-side involution (order two).
    pub fn sigma_tau(&self) -> (Perm, Perm) {
        let n = self.dart_count();
        let sigma = Perm::from_images((0..n as u32).map(|d| self.face_next(d)).collect());
        // tau = sigma^-1 * partner, so that sigma * tau = partner.
        let partner = Perm::from_images(self.partner.clone());
        let tau = sigma.inverse().compose(&partner);
        (sigma, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Figure-eight curve: one 4-valent vertex, two loops attached at
    /// adjacent rotation slots.
    pub(crate) fn figure_eight() -> CombMap {
        CombMap::from_rotations(&[vec![0, 1, 2, 3]], vec![1, 0, 3, 2]).unwrap()
    }

    /// A plain circle, modeled as one 2-valent vertex on a loop.
    fn circle() -> CombMap {
        CombMap::from_rotations(&[vec![0, 1]], vec![1, 0]).unwrap()
    }

    #[test]
    fn figure_eight_is_spherical() {
        let m = figure_eight();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.face_count(), 3);
        assert!(m.is_spherical());
    }

    #[test]
    fn crossed_loops_are_toroidal() {
        let m = CombMap::from_rotations(&[vec![0, 1, 2, 3]], vec![2, 3, 0, 1]).unwrap();
        assert!(m.is_connected());
        assert_eq!(m.euler_characteristic(), 0);
        assert!(!m.is_spherical());
    }

    #[test]
    fn circle_has_two_faces() {
        let m = circle();
        assert_eq!(m.face_count(), 2);
        assert!(m.is_spherical());
    }

    #[test]
    fn mirror_involution_and_dual_involution() {
        let m = figure_eight();
        assert_eq!(m.mirror().mirror(), m);
        assert_eq!(m.dual().dual(), m);
        assert!(m.dual().is_spherical());
    }

    #[test]
    fn canonical_form_invariant_under_relabeling() {
        let m = figure_eight();
        let s = Perm::from_images(vec![2, 0, 3, 1]);
        let r = m.relabel(&s);
        assert_eq!(m.canonical_key(true), r.canonical_key(true));
        assert_eq!(m.canonical_key(false), r.canonical_key(false));
    }

    #[test]
    fn isomorphism_witness_verifies() {
        let m = figure_eight();
        let s = Perm::from_images(vec![3, 2, 0, 1]);
        let r = m.relabel(&s);
        let (w, mirrored) = m.isomorphism(&r, false).expect("isomorphic");
        assert!(!mirrored);
        // w . next_m . w^-1 = next_r
        for d in 0..m.dart_count() as u32 {
            assert_eq!(w.apply(m.next(d)), r.next(w.apply(d)));
            assert_eq!(w.apply(m.partner(d)), r.partner(w.apply(d)));
        }
    }

    #[test]
    fn sigma_tau_relations() {
        for m in [figure_eight(), circle()] {
            let (sigma, tau) = m.sigma_tau();
            let st = sigma.compose(&tau);
            assert!(st.is_involution());
            assert_eq!(tau.cycle_count(), m.vertex_count());
            assert_eq!(sigma.cycle_count(), m.face_count());
        }
    }

    #[test]
    fn empty_map_rejected() {
        assert_eq!(CombMap::new(vec![], vec![]), Err(MapError::Empty));
    }
}
