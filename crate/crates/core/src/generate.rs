//! Catalog generation: 4-valent shadows, edge-contraction to 6-valent
//! triple-crossing projections, and the reductions up to isotopy, mirror
//! image and loop moves.
//!
//! Shadows are found inside the universe of all connected 4-valent
//! spherical maps, grown one crossing at a time: every such map with c+1
//! crossings arises from one with c crossings by either crossing two edge
//! sides that share a face or self-crossing a single edge (a parity
//! argument on the stub components of a smoothed vertex shows some
//! smoothing of any map stays connected). Children enumerate every
//! rotation placement of the new vertex and keep the spherical ones, so
//! no map is missed; canonical forms prune duplicates levelwise.

use crate::codes::{occurrences, CodeError, CrossingName, PdCode, SPdCode, SpdCrossing};
use crate::maps::{CombMap, Dart, MapError};
use crate::par;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("resource limit exceeded at {stage}: more than {limit} maps")]
    ResourceLimit { stage: &'static str, limit: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("catalog io: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog parse: {0}")]
    CatalogParse(String),
}

#[derive(Clone, Copy, Debug)]
pub struct GenOptions {
    /// Hard cap on the number of distinct maps kept at any universe level.
    pub max_level_maps: usize,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_level_maps: 50_000_000,
        }
    }
}

// ---------------------------------------------------------------------------
// Universe of connected 4-valent spherical maps

/// The single 1-crossing map class (the figure-eight curve).
fn base_level() -> Vec<CombMap> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for partner in [vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]] {
        if let Ok(m) = CombMap::from_rotations(&[vec![0, 1, 2, 3]], partner) {
            if m.is_spherical() && seen.insert(m.canonical_key(true)) {
                out.push(m);
            }
        }
    }
    out
}

const NEW_ROTATIONS: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [0, 1, 3, 2],
    [0, 2, 1, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [0, 3, 2, 1],
];

/// All spherical maps obtained from `m` by inserting one extra crossing.
fn children_of(m: &CombMap) -> Vec<CombMap> {
    let d = m.dart_count() as u32;
    let base_next: Vec<Dart> = (0..d).map(|x| m.next(x)).collect();
    let base_partner: Vec<Dart> = (0..d).map(|x| m.partner(x)).collect();
    let mut out = Vec::new();
    let mut push_candidates = |partner: Vec<Dart>| {
        for rot in NEW_ROTATIONS {
            let mut next = base_next.clone();
            next.extend([0, 0, 0, 0]);
            let cycle: Vec<Dart> = rot.iter().map(|&i| d + i as u32).collect();
            for i in 0..4 {
                next[cycle[i] as usize] = cycle[(i + 1) % 4];
            }
            if let Ok(child) = CombMap::new(next, partner.clone()) {
                if child.is_spherical() {
                    out.push(child);
                }
            }
        }
    };

    // Cross two sides of distinct edges sharing a face.
    let faces = m.faces();
    for face in &faces {
        for i in 0..face.len() {
            for j in i + 1..face.len() {
                let (p, q) = (face[i], face[j]);
                if q == m.partner(p) {
                    continue; // same edge: covered by the self-crossing below
                }
                let (pp, qq) = (m.partner(p), m.partner(q));
                let mut partner = base_partner.clone();
                partner.extend([0, 0, 0, 0]);
                // Subdivide both edges through the new vertex.
                partner[p as usize] = d;
                partner[d as usize] = p;
                partner[pp as usize] = d + 2;
                partner[(d + 2) as usize] = pp;
                partner[q as usize] = d + 1;
                partner[(d + 1) as usize] = q;
                partner[qq as usize] = d + 3;
                partner[(d + 3) as usize] = qq;
                push_candidates(partner);
            }
        }
    }

    // Self-cross an edge: subdivide it twice, the middle becomes a loop.
    for p in 0..d {
        let pp = m.partner(p);
        if p > pp {
            continue;
        }
        let mut partner = base_partner.clone();
        partner.extend([0, 0, 0, 0]);
        partner[p as usize] = d;
        partner[d as usize] = p;
        partner[pp as usize] = d + 1;
        partner[(d + 1) as usize] = pp;
        partner[(d + 2) as usize] = d + 3;
        partner[(d + 3) as usize] = d + 2;
        push_candidates(partner);
    }

    out
}

/// Grows one universe level, keeping only children that pass `keep`,
/// deduplicated by mirror-aware canonical form and sorted for determinism.
fn expand_level(
    parents: &[CombMap],
    keep: &(dyn Fn(&CombMap) -> bool + Sync),
    limit: usize,
    stage: &'static str,
) -> Result<Vec<CombMap>, GenError> {
    let mut seen: HashMap<Vec<u32>, CombMap> = HashMap::new();
    for chunk in parents.chunks(512) {
        let batch: Vec<(Vec<u32>, CombMap)> = par::flat_map_vec(chunk, |m| {
            children_of(m)
                .into_iter()
                .filter(|c| keep(c))
                .map(|c| (c.canonical_key(true), c))
                .collect()
        });
        for (key, map) in batch {
            seen.entry(key).or_insert(map);
            if seen.len() > limit {
                return Err(GenError::ResourceLimit { stage, limit });
            }
        }
    }
    let mut items: Vec<(Vec<u32>, CombMap)> = seen.into_iter().collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(items.into_iter().map(|(_, m)| m).collect())
}

// ---------------------------------------------------------------------------
// Shadow filters

fn vertex_of_table(m: &CombMap) -> (Vec<u32>, usize) {
    let mut vertex_of = vec![u32::MAX; m.dart_count()];
    let vertices = m.vertices();
    for (v, orbit) in vertices.iter().enumerate() {
        for &d in orbit {
            vertex_of[d as usize] = v as u32;
        }
    }
    (vertex_of, vertices.len())
}

fn has_loop_edge(m: &CombMap) -> bool {
    let (vertex_of, _) = vertex_of_table(m);
    (0..m.dart_count() as u32)
        .any(|d| vertex_of[d as usize] == vertex_of[m.partner(d) as usize])
}

fn has_monogon(m: &CombMap) -> bool {
    m.face_degrees().iter().any(|&d| d == 1)
}

/// Underlying multigraph edges as (vertex, vertex, smaller dart id).
fn multigraph_edges(m: &CombMap) -> (usize, Vec<(u32, u32, Dart)>) {
    let (vertex_of, nv) = vertex_of_table(m);
    let mut edges = Vec::with_capacity(m.edge_count());
    for d in 0..m.dart_count() as u32 {
        let p = m.partner(d);
        if d < p {
            edges.push((vertex_of[d as usize], vertex_of[p as usize], d));
        }
    }
    (nv, edges)
}

/// A connected shadow is composite exactly when removing some pair of
/// distinct edges disconnects the underlying multigraph; every vertex is
/// a crossing, so both sides of such a cut carry crossings.
fn is_prime_map(m: &CombMap) -> bool {
    let (nv, edges) = multigraph_edges(m);
    if nv == 1 {
        return true;
    }
    // For each removed edge, any bridge in the remainder completes a 2-cut.
    (0..edges.len()).all(|skip| !has_bridge_without(nv, &edges, skip))
}

fn has_bridge_without(nv: usize, edges: &[(u32, u32, Dart)], skip: usize) -> bool {
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nv]; // (other, edge idx)
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        if i == skip || u == v {
            continue;
        }
        adj[u as usize].push((v, i as u32));
        adj[v as usize].push((u, i as u32));
    }
    let mut disc = vec![u32::MAX; nv];
    let mut low = vec![u32::MAX; nv];
    let mut timer = 0u32;
    for root in 0..nv as u32 {
        if disc[root as usize] != u32::MAX {
            continue;
        }
        let mut stack: Vec<(u32, u32, usize)> = Vec::new(); // (node, via edge, cursor)
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        stack.push((root, u32::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (u, via, cursor) = (frame.0, frame.1, frame.2);
            if cursor < adj[u as usize].len() {
                frame.2 += 1;
                let (v, eidx) = adj[u as usize][cursor];
                if eidx == via {
                    continue;
                }
                if disc[v as usize] == u32::MAX {
                    disc[v as usize] = timer;
                    low[v as usize] = timer;
                    timer += 1;
                    stack.push((v, eidx, 0));
                } else {
                    low[u as usize] = low[u as usize].min(disc[v as usize]);
                }
            } else {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let p = parent.0;
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                    if low[u as usize] > disc[p as usize] {
                        return true; // the edge into u is a bridge
                    }
                }
            }
        }
    }
    false
}

fn is_shadow(m: &CombMap) -> bool {
    !has_loop_edge(m) && !has_monogon(m) && is_prime_map(m)
}

// ---------------------------------------------------------------------------
// Codes from maps

/// Labels the edges of a 4-valent map along its strands and emits the PD
/// code: one counterclockwise 4-tuple per crossing, crossings ordered by
/// smallest incident label, tuples rotated to start at it.
pub fn shadow_to_pd(m: &CombMap) -> PdCode {
    let tuples = tuples_from_map(m);
    PdCode {
        crossings: tuples
            .into_iter()
            .map(|t| {
                let mut arr = [0u32; 4];
                arr.copy_from_slice(&t);
                arr
            })
            .collect(),
    }
}

/// Same labeling scheme for a 6-valent projection; records carry the
/// default name (projection level has no strand labels yet).
pub fn spd_from_map(m: &CombMap) -> SPdCode {
    let tuples = tuples_from_map(m);
    SPdCode {
        crossings: tuples
            .into_iter()
            .map(|t| {
                let mut edges = [0u32; 6];
                edges.copy_from_slice(&t);
                SpdCrossing {
                    name: CrossingName::EX,
                    edges,
                }
            })
            .collect(),
    }
}

fn tuples_from_map(m: &CombMap) -> Vec<Vec<u32>> {
    let vertices = m.vertices();
    let deg = vertices[0].len();
    debug_assert!(vertices.iter().all(|v| v.len() == deg));
    let half = deg / 2;

    let step = |d: Dart| {
        // Continue straight through the far crossing.
        let mut a = m.partner(d);
        for _ in 0..half {
            a = m.next(a);
        }
        a
    };
    let mut edge_label = vec![0u32; m.dart_count()];
    let mut next_label = 1u32;
    let mut visited = vec![false; m.dart_count()];
    for start in 0..m.dart_count() as u32 {
        if visited[start as usize] {
            continue;
        }
        let mut d = start;
        loop {
            visited[d as usize] = true;
            visited[m.partner(d) as usize] = true;
            edge_label[d as usize] = next_label;
            edge_label[m.partner(d) as usize] = next_label;
            next_label += 1;
            d = step(d);
            if d == start {
                break;
            }
        }
    }

    let mut tuples: Vec<Vec<u32>> = vertices
        .iter()
        .map(|orbit| orbit.iter().map(|&d| edge_label[d as usize]).collect())
        .collect();
    for t in tuples.iter_mut() {
        let min_pos = t
            .iter()
            .enumerate()
            .min_by_key(|&(_, &l)| l)
            .map(|(i, _)| i)
            .unwrap();
        t.rotate_left(min_pos);
    }
    tuples.sort_by_key(|t| t[0]);
    tuples
}

// ---------------------------------------------------------------------------
// Matchings and contraction

/// All sets of n pairwise vertex-disjoint non-loop edges of a 2n-crossing
/// shadow (necessarily perfect matchings), as sorted edge-label sets.
pub fn contraction_candidates(pd: &PdCode) -> Vec<Vec<u32>> {
    let tuples = pd.tuples();
    let occs = occurrences(&tuples);
    let nv = tuples.len();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new(); // (crossing, crossing, label)
    for (&label, occ) in &occs {
        let (c1, c2) = (occ[0].0, occ[1].0);
        if c1 != c2 {
            edges.push((c1, c2, label));
        }
    }
    fn rec(
        edges: &[(u32, u32, u32)],
        covered: &mut [bool],
        chosen: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let Some(first) = covered.iter().position(|&c| !c) else {
            let mut m = chosen.clone();
            m.sort_unstable();
            out.push(m);
            return;
        };
        for &(u, v, label) in edges {
            let (u, v) = (u as usize, v as usize);
            if u != first && v != first {
                continue;
            }
            let other = if u == first { v } else { u };
            if covered[other] {
                continue;
            }
            covered[first] = true;
            covered[other] = true;
            chosen.push(label);
            rec(edges, covered, chosen, out);
            chosen.pop();
            covered[first] = false;
            covered[other] = false;
        }
    }
    let mut out = Vec::new();
    let mut covered = vec![false; nv];
    let mut chosen = Vec::new();
    rec(&edges, &mut covered, &mut chosen, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Contracts each matching edge, merging its two 4-valent endpoints into
/// one 6-valent crossing: drop the contracted label and splice the two
/// rotation tuples at the removed positions. Original labels are kept;
/// output crossings are ordered by contracted edge label.
pub fn contract(pd: &PdCode, matching: &[u32]) -> Result<SPdCode, GenError> {
    let tuples = pd.tuples();
    let occs = occurrences(&tuples);
    let mut used_crossings = vec![false; tuples.len()];
    let mut sorted: Vec<u32> = matching.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != matching.len() {
        return Err(GenError::InvalidMatching("repeated edge".into()));
    }
    let mut crossings = Vec::new();
    for &label in &sorted {
        let occ = occs
            .get(&label)
            .ok_or_else(|| GenError::InvalidMatching(format!("unknown edge {label}")))?;
        let ((c1, s1), (c2, s2)) = (occ[0], occ[1]);
        if c1 == c2 {
            return Err(GenError::InvalidMatching(format!("edge {label} is a loop")));
        }
        for c in [c1, c2] {
            if used_crossings[c as usize] {
                return Err(GenError::InvalidMatching(format!(
                    "edges share crossing {c}"
                )));
            }
            used_crossings[c as usize] = true;
        }
        // The earlier crossing in code order contributes its ends first.
        let ((cu, su), (cw, sw)) = if c1 < c2 {
            ((c1, s1), (c2, s2))
        } else {
            ((c2, s2), (c1, s1))
        };
        let mut edges = [0u32; 6];
        for i in 0..3 {
            edges[i] = tuples[cu as usize][((su as usize) + 1 + i) % 4];
            edges[3 + i] = tuples[cw as usize][((sw as usize) + 1 + i) % 4];
        }
        crossings.push(SpdCrossing {
            name: CrossingName::EX,
            edges,
        });
    }
    if used_crossings.iter().any(|&u| !u) {
        return Err(GenError::InvalidMatching(
            "matching does not cover every crossing".into(),
        ));
    }
    Ok(SPdCode { crossings })
}

// ---------------------------------------------------------------------------
// Loop moves on projections

/// Loop edges per crossing (edges with both ends at that crossing).
pub fn loops_per_crossing(code: &SPdCode) -> Vec<usize> {
    code.crossings
        .iter()
        .map(|c| {
            let mut n = 0;
            for i in 0..6 {
                for j in i + 1..6 {
                    if c.edges[i] == c.edges[j] {
                        n += 1;
                    }
                }
            }
            n
        })
        .collect()
}

/// Sites where a loop occupies two cyclically adjacent slots:
/// (crossing index, slot of the first loop end).
pub fn kink_loop_sites(code: &SPdCode) -> Vec<(usize, usize)> {
    let mut sites = Vec::new();
    for (ci, c) in code.crossings.iter().enumerate() {
        for s in 0..6 {
            if c.edges[s] == c.edges[(s + 1) % 6] {
                sites.push((ci, s));
            }
        }
    }
    sites
}

/// Slides the single loop at the given kink site to the opposite side of
/// its triple crossing, keeping the four remaining ends in cyclic order.
pub fn apply_m2_projection(code: &SPdCode, site: (usize, usize)) -> Result<SPdCode, GenError> {
    let (ci, s) = site;
    let c = code
        .crossings
        .get(ci)
        .ok_or_else(|| GenError::InvalidMatching(format!("no crossing {ci}")))?;
    if c.edges[s % 6] != c.edges[(s + 1) % 6] {
        return Err(GenError::InvalidMatching(format!(
            "no kink loop at crossing {ci} slot {s}"
        )));
    }
    let l = c.edges[s % 6];
    let rest: Vec<u32> = (2..6).map(|k| c.edges[(s + k) % 6]).collect();
    let edges = [rest[0], rest[1], l, l, rest[2], rest[3]];
    let mut out = code.clone();
    out.crossings[ci] = SpdCrossing { name: c.name, edges };
    Ok(out)
}

// ---------------------------------------------------------------------------
// Pipeline

pub(crate) fn canonical_key_of_code(code: &SPdCode) -> Vec<u32> {
    code.to_map()
        .expect("generated projections are spherical")
        .canonical_key(true)
}

/// Caching driver for the generation pipeline.
pub struct Pipeline {
    pub options: GenOptions,
    universe: Vec<Option<Arc<Vec<CombMap>>>>,
    shadows: BTreeMap<u32, Arc<Vec<PdCode>>>,
    ta: BTreeMap<u32, Arc<Vec<SPdCode>>>,
    tb: BTreeMap<u32, Arc<Vec<SPdCode>>>,
    th: BTreeMap<u32, Arc<Vec<SPdCode>>>,
    th0: BTreeMap<u32, Arc<Vec<SPdCode>>>,
    gr: BTreeMap<u32, Arc<Vec<(String, CombMap)>>>,
}

impl Pipeline {
    pub fn new(options: GenOptions) -> Self {
        Pipeline {
            options,
            universe: Vec::new(),
            shadows: BTreeMap::new(),
            ta: BTreeMap::new(),
            tb: BTreeMap::new(),
            th: BTreeMap::new(),
            th0: BTreeMap::new(),
            gr: BTreeMap::new(),
        }
    }

    /// All connected 4-valent spherical maps with exactly `c` crossings,
    /// up to isomorphism and mirror.
    pub fn universe_level(&mut self, c: usize) -> Result<Arc<Vec<CombMap>>, GenError> {
        assert!(c >= 1);
        if self.universe.len() < c {
            self.universe.resize(c, None);
        }
        if let Some(level) = &self.universe[c - 1] {
            return Ok(level.clone());
        }
        let level = if c == 1 {
            base_level()
        } else {
            let parents = self.universe_level(c - 1)?;
            expand_level(&parents, &|_| true, self.options.max_level_maps, "universe")?
        };
        let arc = Arc::new(level);
        self.universe[c - 1] = Some(arc.clone());
        Ok(arc)
    }

    /// Prime, reduced, connected shadows with `c` crossings, up to
    /// isomorphism and mirror. The target level is streamed so only
    /// shadows are retained in memory.
    pub fn shadows(&mut self, c: u32) -> Result<Arc<Vec<PdCode>>, GenError> {
        if let Some(s) = self.shadows.get(&c) {
            return Ok(s.clone());
        }
        let maps: Vec<CombMap> = if c == 1 {
            base_level().into_iter().filter(is_shadow).collect()
        } else {
            let parents = self.universe_level(c as usize - 1)?;
            expand_level(
                &parents,
                &is_shadow,
                self.options.max_level_maps,
                "shadows",
            )?
        };
        let codes: Vec<PdCode> = maps.iter().map(shadow_to_pd).collect();
        let arc = Arc::new(codes);
        self.shadows.insert(c, arc.clone());
        Ok(arc)
    }

    /// All contraction results over shadows with 2n crossings and their
    /// perfect matchings (a list, not deduplicated), renumbered. n = 1 is
    /// enumerated directly from 1-vertex 6-valent maps.
    pub fn ta(&mut self, n: u32) -> Result<Arc<Vec<SPdCode>>, GenError> {
        if let Some(t) = self.ta.get(&n) {
            return Ok(t.clone());
        }
        let items: Vec<SPdCode> = if n == 1 {
            one_crossing_projections()
        } else {
            let shadows = self.shadows(2 * n)?;
            let per_shadow: Vec<Vec<SPdCode>> = par::map_vec(&shadows, |pd| {
                contraction_candidates(pd)
                    .into_iter()
                    .map(|m| {
                        contract(pd, &m)
                            .expect("candidate matchings are valid")
                            .renumber()
                            .expect("contracted projections renumber")
                    })
                    .collect()
            });
            per_shadow.into_iter().flatten().collect()
        };
        let arc = Arc::new(items);
        self.ta.insert(n, arc.clone());
        Ok(arc)
    }

    /// Ta deduplicated by mirror-aware canonical form.
    pub fn tb(&mut self, n: u32) -> Result<Arc<Vec<SPdCode>>, GenError> {
        if let Some(t) = self.tb.get(&n) {
            return Ok(t.clone());
        }
        let ta = self.ta(n)?;
        let keys: Vec<Vec<u32>> = par::map_vec(&ta, canonical_key_of_code);
        let mut seen: HashMap<Vec<u32>, SPdCode> = HashMap::new();
        for (key, code) in keys.into_iter().zip(ta.iter()) {
            seen.entry(key).or_insert_with(|| code.clone());
        }
        let mut items: Vec<(Vec<u32>, SPdCode)> = seen.into_iter().collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let arc = Arc::new(items.into_iter().map(|(_, c)| c).collect::<Vec<_>>());
        self.tb.insert(n, arc.clone());
        Ok(arc)
    }

    /// Projections of minimal diagrams up to the loop moves: discard
    /// anything with two or more loops at a crossing (reducible or
    /// composite), then take one representative per orbit of the loop
    /// slide. For n = 1 the multi-loop filter does not apply.
    pub fn th(&mut self, n: u32) -> Result<Arc<Vec<SPdCode>>, GenError> {
        if let Some(t) = self.th.get(&n) {
            return Ok(t.clone());
        }
        let tb = self.tb(n)?;
        let survivors: Vec<SPdCode> = tb
            .iter()
            .filter(|c| n == 1 || loops_per_crossing(c).iter().all(|&l| l <= 1))
            .cloned()
            .collect();
        let mut assigned: HashSet<Vec<u32>> = HashSet::new();
        let mut paired: Vec<(Vec<u32>, SPdCode)> = Vec::new();
        for code in &survivors {
            let key = canonical_key_of_code(code);
            if assigned.contains(&key) {
                continue;
            }
            // BFS over the orbit of the loop slide.
            let mut min_key = key.clone();
            let mut queue = vec![code.clone()];
            assigned.insert(key);
            while let Some(current) = queue.pop() {
                for site in kink_loop_sites(&current) {
                    let moved = apply_m2_projection(&current, site)?;
                    let mkey = canonical_key_of_code(&moved);
                    if assigned.insert(mkey.clone()) {
                        if mkey < min_key {
                            min_key = mkey.clone();
                        }
                        queue.push(moved);
                    }
                }
            }
            paired.push((min_key, code.clone()));
        }
        paired.sort_by(|a, b| a.0.cmp(&b.0));
        let arc = Arc::new(paired.into_iter().map(|(_, c)| c).collect::<Vec<_>>());
        self.th.insert(n, arc.clone());
        Ok(arc)
    }

    /// Loop-free subset of Th (fixed points of the loop slide).
    pub fn th0(&mut self, n: u32) -> Result<Arc<Vec<SPdCode>>, GenError> {
        if let Some(t) = self.th0.get(&n) {
            return Ok(t.clone());
        }
        let th = self.th(n)?;
        let arc = Arc::new(
            th.iter()
                .filter(|c| loops_per_crossing(c).iter().all(|&l| l == 0))
                .cloned()
                .collect::<Vec<_>>(),
        );
        self.th0.insert(n, arc.clone());
        Ok(arc)
    }

    /// Spherical graphs with `f` faces, every face a quadrangle or a
    /// hexagon: duals of the loop-stripped Th projections, kept when
    /// simple with minimum degree two. Labeled `g^{q,h}_i`.
    pub fn gr(&mut self, f: u32) -> Result<Arc<Vec<(String, CombMap)>>, GenError> {
        if let Some(g) = self.gr.get(&f) {
            return Ok(g.clone());
        }
        let th = self.th(f)?;
        let mut seen: HashMap<Vec<u32>, CombMap> = HashMap::new();
        for code in th.iter() {
            let map = code.to_map()?;
            let Some(stripped) = strip_loop_edges(&map) else {
                continue;
            };
            let dual = stripped.dual();
            if !dual.is_spherical() || !is_simple(&dual) {
                continue;
            }
            if vertex_degrees(&dual).iter().any(|&d| d < 2) {
                continue;
            }
            debug_assert!(dual.face_degrees().iter().all(|&d| d == 4 || d == 6));
            let key = dual.canonical_key(true);
            seen.entry(key).or_insert(dual);
        }
        let mut graphs: Vec<(Vec<u32>, CombMap)> = seen.into_iter().collect();
        graphs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut counter: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut items = Vec::new();
        for (_, g) in graphs {
            let faces = g.face_degrees();
            let q = faces.iter().filter(|&&d| d == 4).count();
            let h = faces.iter().filter(|&&d| d == 6).count();
            let idx = counter.entry((q, h)).or_insert(0);
            *idx += 1;
            items.push((format!("g^{{{q},{h}}}_{idx}"), g));
        }
        let arc = Arc::new(items);
        self.gr.insert(f, arc.clone());
        Ok(arc)
    }
}

/// 1-vertex 6-valent spherical maps as renumbered sPD codes.
fn one_crossing_projections() -> Vec<SPdCode> {
    let mut seen = HashSet::new();
    let mut keyed: Vec<(Vec<u32>, SPdCode)> = Vec::new();
    for p in all_pairings(&(0..6).collect::<Vec<u32>>()) {
        let mut partner = vec![0u32; 6];
        for &(a, b) in &p {
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        let Ok(m) = CombMap::from_rotations(&[vec![0, 1, 2, 3, 4, 5]], partner) else {
            continue;
        };
        if !m.is_spherical() {
            continue;
        }
        let key = m.canonical_key(true);
        if seen.insert(key.clone()) {
            keyed.push((key, spd_from_map(&m).renumber().expect("renumberable")));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, c)| c).collect()
}

fn all_pairings(items: &[u32]) -> Vec<Vec<(u32, u32)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let mate = items[i];
        let rest: Vec<u32> = items[1..].iter().copied().filter(|&x| x != mate).collect();
        for mut sub in all_pairings(&rest) {
            sub.insert(0, (first, mate));
            out.push(sub);
        }
    }
    out
}

/// Removes loop edges (both ends at one vertex); None if nothing remains.
pub fn strip_loop_edges(m: &CombMap) -> Option<CombMap> {
    let (vertex_of, _) = vertex_of_table(m);
    let keep: Vec<bool> = (0..m.dart_count() as u32)
        .map(|d| vertex_of[d as usize] != vertex_of[m.partner(d) as usize])
        .collect();
    if keep.iter().all(|&k| !k) {
        return None;
    }
    let mut new_id = vec![u32::MAX; m.dart_count()];
    let mut count = 0u32;
    for d in 0..m.dart_count() {
        if keep[d] {
            new_id[d] = count;
            count += 1;
        }
    }
    let mut next = vec![u32::MAX; count as usize];
    let mut partner = vec![u32::MAX; count as usize];
    for d in 0..m.dart_count() as u32 {
        if !keep[d as usize] {
            continue;
        }
        let mut nxt = m.next(d);
        while !keep[nxt as usize] {
            nxt = m.next(nxt);
        }
        next[new_id[d as usize] as usize] = new_id[nxt as usize];
        partner[new_id[d as usize] as usize] = new_id[m.partner(d) as usize];
    }
    CombMap::new(next, partner).ok()
}

fn vertex_degrees(m: &CombMap) -> Vec<usize> {
    m.vertices().iter().map(|v| v.len()).collect()
}

/// No loops and no parallel edges in the underlying multigraph.
fn is_simple(m: &CombMap) -> bool {
    let (_, edges) = multigraph_edges(m);
    let mut seen = HashSet::new();
    for (u, v, _) in edges {
        if u == v {
            return false;
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Catalogs on disk

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogKind {
    Shadows,
    Ta,
    Tb,
    Th,
    Th0,
    Gr,
    Td,
}

impl CatalogKind {
    pub fn parse(s: &str) -> Option<CatalogKind> {
        match s {
            "shadows" => Some(CatalogKind::Shadows),
            "ta" => Some(CatalogKind::Ta),
            "tb" => Some(CatalogKind::Tb),
            "th" => Some(CatalogKind::Th),
            "th0" => Some(CatalogKind::Th0),
            "gr" => Some(CatalogKind::Gr),
            "td" => Some(CatalogKind::Td),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogKind::Shadows => "shadows",
            CatalogKind::Ta => "ta",
            CatalogKind::Tb => "tb",
            CatalogKind::Th => "th",
            CatalogKind::Th0 => "th0",
            CatalogKind::Gr => "gr",
            CatalogKind::Td => "td",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogHeader {
    pub kind: CatalogKind,
    pub n: u32,
    pub count: usize,
    pub generator_version: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub header: CatalogHeader,
    pub items: Vec<CatalogRecord>,
}

impl Catalog {
    pub fn new(kind: CatalogKind, n: u32, items: Vec<CatalogRecord>, elapsed_ms: u128) -> Catalog {
        Catalog {
            header: CatalogHeader {
                kind,
                n,
                count: items.len(),
                generator_version: crate::GENERATOR_VERSION.to_string(),
                elapsed_ms,
            },
            items,
        }
    }

    pub fn file_name(kind: CatalogKind, n: u32) -> String {
        format!("catalog_{}_{}.jsonl", kind.as_str(), n)
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = serde_json::to_string(&self.header).unwrap();
        s.push('\n');
        for item in &self.items {
            s.push_str(&serde_json::to_string(item).unwrap());
            s.push('\n');
        }
        s
    }

    pub fn from_jsonl(text: &str) -> Result<Catalog, GenError> {
        let mut lines = text.lines();
        let header: CatalogHeader = serde_json::from_str(
            lines
                .next()
                .ok_or_else(|| GenError::CatalogParse("empty catalog".into()))?,
        )
        .map_err(|e| GenError::CatalogParse(e.to_string()))?;
        let mut items = Vec::with_capacity(header.count);
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            items.push(
                serde_json::from_str(line).map_err(|e| GenError::CatalogParse(e.to_string()))?,
            );
        }
        if items.len() != header.count {
            return Err(GenError::CatalogParse(format!(
                "header count {} != {} records",
                header.count,
                items.len()
            )));
        }
        Ok(Catalog { header, items })
    }
}

/// Serializes a map as per-vertex rotations of edge labels, for Gr items.
pub fn rotation_code(m: &CombMap) -> String {
    let tuples = tuples_from_map(m);
    let mut s = String::from("MAP[");
    for (i, t) in tuples.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push('[');
        for (j, e) in t.iter().enumerate() {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_level_is_figure_eight_only() {
        let level = base_level();
        assert_eq!(level.len(), 1);
        assert_eq!(level[0].vertex_count(), 1);
    }

    #[test]
    fn universe_matches_direct_enumeration_small() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        for c in 1..=3usize {
            let darts: Vec<u32> = (0..4 * c as u32).collect();
            let rotations: Vec<Vec<u32>> = (0..c)
                .map(|v| (4 * v as u32..4 * v as u32 + 4).collect())
                .collect();
            let mut seen = HashSet::new();
            for pairing in all_pairings(&darts) {
                let mut partner = vec![0u32; 4 * c];
                for &(a, b) in &pairing {
                    partner[a as usize] = b;
                    partner[b as usize] = a;
                }
                let Ok(m) = CombMap::from_rotations(&rotations, partner) else {
                    continue;
                };
                if m.is_spherical() {
                    seen.insert(m.canonical_key(true));
                }
            }
            let level = pipeline.universe_level(c).unwrap();
            assert_eq!(level.len(), seen.len(), "universe mismatch at c={c}");
        }
    }

    #[test]
    fn shadow_counts_match_published_table() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        assert_eq!(pipeline.shadows(4).unwrap().len(), 2);
        assert_eq!(pipeline.shadows(6).unwrap().len(), 9);
    }

    #[test]
    fn fig17_contraction_reproduces_printed_code() {
        let pd = PdCode::parse(crate::codes::fixtures::FIG17_PD).unwrap();
        let spd = contract(&pd, &[5, 8, 11, 14]).unwrap();
        assert_eq!(spd.serialize(), crate::codes::fixtures::FIG17_SPD);
        let candidates = contraction_candidates(&pd);
        assert!(candidates.contains(&vec![5, 8, 11, 14]));
    }

    #[test]
    fn contraction_euler_bookkeeping() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        let shadows = pipeline.shadows(4).unwrap();
        for pd in shadows.iter() {
            let before = pd.to_map().unwrap();
            for matching in contraction_candidates(pd) {
                let spd = contract(pd, &matching).unwrap();
                let after = spd.to_map().unwrap();
                let k = matching.len();
                assert_eq!(after.vertex_count(), before.vertex_count() - k);
                assert_eq!(after.edge_count(), before.edge_count() - k);
                assert_eq!(after.face_count(), before.face_count());
            }
        }
    }

    #[test]
    fn candidates_agree_with_subset_filter_small() {
        fn subsets(labels: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..labels.len() {
                cur.push(labels[i]);
                subsets(labels, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut pipeline = Pipeline::new(GenOptions::default());
        for c in [4u32, 6] {
            for pd in pipeline.shadows(c).unwrap().iter() {
                let tuples = pd.tuples();
                let occs = occurrences(&tuples);
                let labels: Vec<u32> = occs.keys().copied().collect();
                let n = c as usize / 2;
                let mut all = Vec::new();
                let mut cur = Vec::new();
                subsets(&labels, n, 0, &mut cur, &mut all);
                let mut expected: Vec<Vec<u32>> = Vec::new();
                for set in all {
                    let mut touched = HashSet::new();
                    let mut ok = true;
                    for &l in &set {
                        let occ = &occs[&l];
                        if occ[0].0 == occ[1].0
                            || !touched.insert(occ[0].0)
                            || !touched.insert(occ[1].0)
                        {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        expected.push(set);
                    }
                }
                expected.sort();
                assert_eq!(contraction_candidates(pd), expected);
            }
        }
    }

    #[test]
    fn ta_tb_counts_n2() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        assert_eq!(pipeline.ta(2).unwrap().len(), 14);
        assert_eq!(pipeline.tb(2).unwrap().len(), 4);
    }

    #[test]
    fn th_counts_n2() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        assert_eq!(pipeline.th(2).unwrap().len(), 3);
        assert_eq!(pipeline.th0(2).unwrap().len(), 1);
        assert_eq!(pipeline.gr(2).unwrap().len(), 2);
    }

    #[test]
    fn m2_is_an_involution_on_maps() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        let th = pipeline.th(2).unwrap();
        for code in th.iter() {
            for site in kink_loop_sites(code) {
                let once = apply_m2_projection(code, site).unwrap();
                let back_ok = kink_loop_sites(&once).iter().any(|&s| {
                    let twice = apply_m2_projection(&once, s).unwrap();
                    canonical_key_of_code(&twice) == canonical_key_of_code(code)
                });
                assert!(back_ok);
            }
        }
    }

    #[test]
    fn tb_partitions_ta() {
        let mut pipeline = Pipeline::new(GenOptions::default());
        let ta = pipeline.ta(2).unwrap();
        let tb = pipeline.tb(2).unwrap();
        let tb_keys: HashSet<Vec<u32>> = tb.iter().map(canonical_key_of_code).collect();
        let mut class_sizes: HashMap<Vec<u32>, usize> = HashMap::new();
        for code in ta.iter() {
            *class_sizes.entry(canonical_key_of_code(code)).or_default() += 1;
        }
        assert_eq!(class_sizes.keys().cloned().collect::<HashSet<_>>(), tb_keys);
        assert_eq!(class_sizes.values().sum::<usize>(), ta.len());
    }

    #[test]
    fn catalog_jsonl_roundtrip() {
        let items = vec![
            CatalogRecord {
                code: "sPD[eX[1,1,3,2,2,3]]".into(),
                label: None,
            },
            CatalogRecord {
                code: "MAP[[1,2],[2,1]]".into(),
                label: Some("g^{2,0}_1".into()),
            },
        ];
        let cat = Catalog::new(CatalogKind::Th, 1, items, 12);
        let text = cat.to_jsonl();
        let back = Catalog::from_jsonl(&text).unwrap();
        assert_eq!(back.header.count, 2);
        assert_eq!(back.items[1].label.as_deref(), Some("g^{2,0}_1"));
    }
}
