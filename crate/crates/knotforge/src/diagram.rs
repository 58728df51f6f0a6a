//! Oriented link diagrams in planar-diagram (PD) encoding.
//!
//! A crossing is a tuple `(a,b,c,d)` of edge ids listed counterclockwise
//! starting from the incoming under-strand edge; the under-strand runs
//! `a -> c`. The crossing sign is `+1` when the over-strand passes
//! left-to-right across the oriented under-strand (equivalently, the
//! incoming over-edge sits in slot 3), `-1` when it enters in slot 1.
//!
//! Edge ids are normalized to `1..=2c` on construction by walking each
//! component; diagrams are immutable values and every editing operation
//! returns a fresh, re-validated diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which validation or parsing rule failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// An edge id occurs more than twice.
    DuplicateEdge,
    /// An edge id occurs exactly once.
    DanglingEdge,
    /// The code admits no planar realization (or no consistent orientation).
    NonRealizable,
    /// A crossing or arc index out of range.
    BadIndex,
    /// Malformed input text or JSON.
    SyntaxError,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{kind:?}: {detail}")]
pub struct DiagramError {
    pub kind: ErrorKind,
    pub detail: String,
}

impl DiagramError {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        DiagramError { kind, detail: detail.into() }
    }
    pub fn syntax(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::SyntaxError, detail)
    }
    pub fn bad_index(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::BadIndex, detail)
    }
}

/// One crossing: edge ids counterclockwise from the incoming under-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing(pub [u32; 4]);

impl Crossing {
    pub fn edge(&self, slot: usize) -> u32 {
        self.0[slot & 3]
    }
}

/// A directed edge-end: `slot` of `crossing`, pointing away from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

/// An oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// total component count, including crossing-free round circles
    n_components: usize,
    /// edge id (1-based) -> component index
    component_of_edge: Vec<usize>,
    /// crossing ids flagged as trivializer candidates
    marks: BTreeSet<usize>,
    /// derived: +1 / -1 per crossing
    signs: Vec<i8>,
}

impl Diagram {
    /// Build and validate a diagram from raw crossing tuples plus the number
    /// of additional crossing-free components. Edge ids may be arbitrary
    /// positive integers; they are renormalized to `1..=2c`.
    pub fn from_crossings(tuples: Vec<[u32; 4]>, free_loops: usize) -> Result<Diagram, DiagramError> {
        Self::from_crossings_marked(tuples, free_loops, BTreeSet::new())
    }

    pub fn from_crossings_marked(
        tuples: Vec<[u32; 4]>,
        free_loops: usize,
        marks: BTreeSet<usize>,
    ) -> Result<Diagram, DiagramError> {
        let c = tuples.len();
        if let Some(&m) = marks.iter().next_back() {
            if m >= c.max(1) && !(c == 0 && marks.is_empty()) {
                return Err(DiagramError::bad_index(format!(
                    "mark {} out of range for {} crossings",
                    m, c
                )));
            }
        }
        if c == 0 {
            if free_loops == 0 {
                return Err(DiagramError::syntax(
                    "empty diagram needs an explicit component count",
                ));
            }
            return Ok(Diagram {
                crossings: Vec::new(),
                n_components: free_loops,
                component_of_edge: Vec::new(),
                marks,
                signs: Vec::new(),
            });
        }

        // Edge occurrence map.
        let mut occ: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for (ci, t) in tuples.iter().enumerate() {
            for (slot, &e) in t.iter().enumerate() {
                if e == 0 {
                    return Err(DiagramError::syntax("edge ids must be positive"));
                }
                occ.entry(e).or_default().push(Dart { crossing: ci, slot });
            }
        }
        for (&e, ds) in &occ {
            match ds.len() {
                1 => {
                    return Err(DiagramError::new(
                        ErrorKind::DanglingEdge,
                        format!("edge {} occurs once", e),
                    ))
                }
                2 => {}
                n => {
                    return Err(DiagramError::new(
                        ErrorKind::DuplicateEdge,
                        format!("edge {} occurs {} times", e, n),
                    ))
                }
            }
        }
        // An edge directed into (or out of) two crossings at once cannot be
        // oriented consistently.
        for (&e, ds) in &occ {
            let slots = (ds[0].slot, ds[1].slot);
            if slots == (0, 0) || slots == (2, 2) {
                return Err(DiagramError::new(
                    ErrorKind::NonRealizable,
                    format!("edge {} has inconsistent strand orientation", e),
                ));
            }
        }

        // Trace components. Passages: entering a crossing at slot 0 exits at
        // slot 2 (under); entering at slot 1 exits at slot 3 and vice versa
        // (over). Each crossing is passed exactly twice: once under, once
        // over. The over passage direction fixes the sign.
        let other = |d: Dart, e: u32| -> Dart {
            let ds = &occ[&e];
            if ds[0] == d {
                ds[1]
            } else {
                ds[0]
            }
        };
        let mut edge_component: BTreeMap<u32, usize> = BTreeMap::new();
        // over_in_slot[ci] = 1 or 3 once the over passage is traced
        let mut over_in_slot: Vec<Option<usize>> = vec![None; c];
        let mut under_seen: Vec<bool> = vec![false; c];
        let mut component_walks: Vec<Vec<u32>> = Vec::new();

        // Deterministic starts, direction-forced first: an edge incident to
        // an under passage (slot 0 or 2) has a known direction; start each
        // component at the smallest such edge. Components made of over
        // passages only are direction-free, so orient them by entering the
        // smallest edge at its first-listed occurrence.
        let all_edges: Vec<u32> = occ.keys().copied().collect();
        loop {
            let mut start: Option<(u32, Dart)> = None;
            for &e in &all_edges {
                if edge_component.contains_key(&e) {
                    continue;
                }
                let ds = &occ[&e];
                if ds[0].slot == 0 {
                    start = Some((e, ds[0]));
                    break;
                }
                if ds[1].slot == 0 {
                    start = Some((e, ds[1]));
                    break;
                }
                if ds[0].slot == 2 {
                    start = Some((e, ds[1]));
                    break;
                }
                if ds[1].slot == 2 {
                    start = Some((e, ds[0]));
                    break;
                }
            }
            if start.is_none() {
                start = all_edges
                    .iter()
                    .find(|e| !edge_component.contains_key(e))
                    .map(|&e| (e, occ[&e][0]));
            }
            let Some((start_edge, entry)) = start else {
                break;
            };
            let comp_idx = component_walks.len();
            let mut walk: Vec<u32> = Vec::new();
            let mut cur_edge = start_edge;
            let mut cur_entry = entry;
            loop {
                if let Some(&c0) = edge_component.get(&cur_edge) {
                    // closed the loop
                    debug_assert_eq!(c0, comp_idx);
                    break;
                }
                edge_component.insert(cur_edge, comp_idx);
                walk.push(cur_edge);
                let ci = cur_entry.crossing;
                let exit_slot = match cur_entry.slot {
                    0 => {
                        if under_seen[ci] {
                            return Err(DiagramError::new(
                                ErrorKind::NonRealizable,
                                format!("crossing {} traversed under twice", ci),
                            ));
                        }
                        under_seen[ci] = true;
                        2
                    }
                    2 => {
                        return Err(DiagramError::new(
                            ErrorKind::NonRealizable,
                            format!("edge {} enters crossing {} against orientation", cur_edge, ci),
                        ))
                    }
                    s => {
                        // over passage
                        match over_in_slot[ci] {
                            None => over_in_slot[ci] = Some(s),
                            Some(prev) if prev == s => {
                                return Err(DiagramError::new(
                                    ErrorKind::NonRealizable,
                                    format!("crossing {} traversed over twice", ci),
                                ))
                            }
                            Some(_) => {
                                return Err(DiagramError::new(
                                    ErrorKind::NonRealizable,
                                    format!("crossing {} over strand direction conflict", ci),
                                ))
                            }
                        }
                        s ^ 2 // 1 <-> 3
                    }
                };
                let next_edge = tuples[ci][exit_slot];
                let exit_dart = Dart { crossing: ci, slot: exit_slot };
                cur_entry = other(exit_dart, next_edge);
                cur_edge = next_edge;
            }
            component_walks.push(walk);
        }
        // Every crossing must have been passed once under and once over.
        for ci in 0..c {
            if !under_seen[ci] || over_in_slot[ci].is_none() {
                return Err(DiagramError::new(
                    ErrorKind::NonRealizable,
                    format!("crossing {} not traversed consistently", ci),
                ));
            }
        }

        // Normalize edge ids to 1..=2c. When the ids already form exactly
        // that range they are kept untouched, so edits that only rearrange
        // tuples (crossing changes, mirrors) are label-stable; otherwise
        // edges are renumbered sequentially along each traced component.
        let already_normal = occ.len() == 2 * c && *occ.keys().next_back().unwrap() == 2 * c as u32;
        let mut component_of_edge: Vec<usize> = vec![0; 2 * c];
        let crossings: Vec<Crossing> = if already_normal {
            for (&e, &comp) in &edge_component {
                component_of_edge[(e - 1) as usize] = comp;
            }
            tuples.iter().map(|t| Crossing(*t)).collect()
        } else {
            let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
            let mut next_id: u32 = 1;
            for (comp_idx, walk) in component_walks.iter().enumerate() {
                for &e in walk {
                    rename.insert(e, next_id);
                    component_of_edge[(next_id - 1) as usize] = comp_idx;
                    next_id += 1;
                }
            }
            debug_assert_eq!(next_id as usize, 2 * c + 1);
            tuples
                .iter()
                .map(|t| Crossing([rename[&t[0]], rename[&t[1]], rename[&t[2]], rename[&t[3]]]))
                .collect()
        };
        let signs: Vec<i8> = over_in_slot
            .iter()
            .map(|s| if s.unwrap() == 3 { 1 } else { -1 })
            .collect();

        let d = Diagram {
            crossings,
            n_components: component_walks.len() + free_loops,
            component_of_edge,
            marks,
            signs,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Rotation-system planarity: every connected piece of the 4-valent
    /// graph must satisfy V - E + F = 2 for the faces traced from the
    /// counterclockwise edge order.
    fn check_planar(&self) -> Result<(), DiagramError> {
        let c = self.crossings.len();
        if c == 0 {
            return Ok(());
        }
        // connected pieces over crossings
        let mut piece = vec![usize::MAX; c];
        let mut n_pieces = 0;
        for start in 0..c {
            if piece[start] != usize::MAX {
                continue;
            }
            let id = n_pieces;
            n_pieces += 1;
            let mut stack = vec![start];
            piece[start] = id;
            while let Some(x) = stack.pop() {
                for slot in 0..4 {
                    let d = Dart { crossing: x, slot };
                    let o = self.theta(d);
                    if piece[o.crossing] == usize::MAX {
                        piece[o.crossing] = id;
                        stack.push(o.crossing);
                    }
                }
            }
        }
        let faces = self.faces();
        let mut f_per_piece = vec![0usize; n_pieces];
        for face in &faces {
            f_per_piece[piece[face[0].crossing]] += 1;
        }
        let mut v_per_piece = vec![0usize; n_pieces];
        for x in 0..c {
            v_per_piece[piece[x]] += 1;
        }
        for p in 0..n_pieces {
            let v = v_per_piece[p] as i64;
            let e = 2 * v; // 4-valent
            let f = f_per_piece[p] as i64;
            if v - e + f != 2 {
                return Err(DiagramError::new(
                    ErrorKind::NonRealizable,
                    format!("no planar embedding (piece {}: V={} F={})", p, v, f),
                ));
            }
        }
        Ok(())
    }

    /// The other end of the edge leaving `d`.
    pub fn theta(&self, d: Dart) -> Dart {
        let e = self.crossings[d.crossing].edge(d.slot);
        for (ci, t) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                if t.0[slot] == e && !(ci == d.crossing && slot == d.slot) {
                    return Dart { crossing: ci, slot };
                }
            }
        }
        // double occurrence at the same (crossing, slot) is impossible after
        // validation; an edge with both ends at one crossing hits the branch
        // above with a different slot
        unreachable!("validated diagram: every edge has two ends");
    }

    /// All faces of the underlying 4-valent map, each a cyclic dart list.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let c = self.crossings.len();
        let mut seen = vec![[false; 4]; c];
        let mut faces = Vec::new();
        for ci in 0..c {
            for slot in 0..4 {
                if seen[ci][slot] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = Dart { crossing: ci, slot };
                loop {
                    if seen[d.crossing][d.slot] {
                        break;
                    }
                    seen[d.crossing][d.slot] = true;
                    face.push(d);
                    let o = self.theta(d);
                    d = Dart { crossing: o.crossing, slot: (o.slot + 1) & 3 };
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_edges(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    /// Components that carry no crossings (split round circles).
    pub fn n_free_loops(&self) -> usize {
        let traced = self
            .component_of_edge
            .iter()
            .copied()
            .max()
            .map(|m| m + 1)
            .unwrap_or(0);
        self.n_components - traced
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn marks(&self) -> &BTreeSet<usize> {
        &self.marks
    }

    pub fn with_marks(&self, marks: BTreeSet<usize>) -> Result<Diagram, DiagramError> {
        if let Some(&m) = marks.iter().next_back() {
            if m >= self.crossings.len() {
                return Err(DiagramError::bad_index(format!("mark {} out of range", m)));
            }
        }
        let mut d = self.clone();
        d.marks = marks;
        Ok(d)
    }

    pub fn component_of_edge(&self, edge: u32) -> usize {
        self.component_of_edge[(edge - 1) as usize]
    }

    /// Is this a 1-component diagram (a knot)?
    pub fn is_knot(&self) -> bool {
        self.n_components == 1
    }

    /// True when the over strand at crossing `i` enters at slot 3 (sign +1).
    pub fn over_in_slot(&self, i: usize) -> usize {
        if self.signs[i] > 0 {
            3
        } else {
            1
        }
    }

    /// Incoming and outgoing over edges at crossing `i`.
    pub fn over_edges(&self, i: usize) -> (u32, u32) {
        let t = &self.crossings[i];
        if self.signs[i] > 0 {
            (t.0[3], t.0[1])
        } else {
            (t.0[1], t.0[3])
        }
    }

    /// Swap over/under at crossing `i`. The new incoming under-edge is the
    /// old incoming over-edge, so the tuple is rotated to start there and
    /// the sign flips. Marks and components are unchanged.
    pub fn change_crossing(&self, i: usize) -> Result<Diagram, DiagramError> {
        if i >= self.crossings.len() {
            return Err(DiagramError::bad_index(format!(
                "crossing {} out of range for {} crossings",
                i,
                self.crossings.len()
            )));
        }
        let mut tuples: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.0).collect();
        let t = tuples[i];
        let r = if self.signs[i] > 0 { 3 } else { 1 };
        tuples[i] = [t[r], t[(r + 1) & 3], t[(r + 2) & 3], t[(r + 3) & 3]];
        Self::from_crossings_marked(tuples, self.n_free_loops(), self.marks.clone())
    }

    /// Change every crossing (the mirror image).
    pub fn mirror(&self) -> Diagram {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(c, &s)| {
                let t = c.0;
                let r = if s > 0 { 3 } else { 1 };
                [t[r], t[(r + 1) & 3], t[(r + 2) & 3], t[(r + 3) & 3]]
            })
            .collect();
        Self::from_crossings_marked(tuples, self.n_free_loops(), self.marks.clone())
            .expect("mirror of a valid diagram is valid")
    }

    /// Change all crossings in `subset` at once.
    pub fn change_crossings(&self, subset: &BTreeSet<usize>) -> Result<Diagram, DiagramError> {
        let mut tuples: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.0).collect();
        for &i in subset {
            if i >= tuples.len() {
                return Err(DiagramError::bad_index(format!("crossing {} out of range", i)));
            }
            let t = tuples[i];
            let r = if self.signs[i] > 0 { 3 } else { 1 };
            tuples[i] = [t[r], t[(r + 1) & 3], t[(r + 2) & 3], t[(r + 3) & 3]];
        }
        Self::from_crossings_marked(tuples, self.n_free_loops(), self.marks.clone())
    }

    /// A labeling-independent key: minimal BFS signature over all start
    /// crossings (per connected piece), plus the free-loop count. Used for
    /// visited-set dedup and deterministic tie-breaks.
    pub fn canonical_key(&self) -> Vec<u32> {
        let c = self.crossings.len();
        if c == 0 {
            return vec![u32::MAX, self.n_components as u32];
        }
        // connected pieces
        let mut piece = vec![usize::MAX; c];
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        for start in 0..c {
            if piece[start] != usize::MAX {
                continue;
            }
            let id = pieces.len();
            let mut members = vec![start];
            piece[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for slot in 0..4 {
                    let o = self.theta(Dart { crossing: x, slot });
                    if piece[o.crossing] == usize::MAX {
                        piece[o.crossing] = id;
                        members.push(o.crossing);
                        stack.push(o.crossing);
                    }
                }
            }
            pieces.push(members);
        }
        let mut piece_keys: Vec<Vec<u32>> = pieces
            .iter()
            .map(|members| {
                let mut best: Option<Vec<u32>> = None;
                for &start in members {
                    let sig = self.bfs_signature(start);
                    if best.as_ref().map(|b| sig < *b).unwrap_or(true) {
                        best = Some(sig);
                    }
                }
                best.unwrap()
            })
            .collect();
        piece_keys.sort();
        let mut out = Vec::new();
        for k in piece_keys {
            out.extend(k);
            out.push(u32::MAX); // piece separator
        }
        out.push(self.n_free_loops() as u32);
        out
    }

    fn bfs_signature(&self, start: usize) -> Vec<u32> {
        let c = self.crossings.len();
        let mut order = vec![u32::MAX; c];
        let mut queue = std::collections::VecDeque::new();
        order[start] = 0;
        let mut next = 1u32;
        queue.push_back(start);
        let mut sig = Vec::with_capacity(5 * c);
        while let Some(x) = queue.pop_front() {
            sig.push(if self.signs[x] > 0 { 1 } else { 0 });
            for slot in 0..4 {
                let o = self.theta(Dart { crossing: x, slot });
                if order[o.crossing] == u32::MAX {
                    order[o.crossing] = next;
                    next += 1;
                    queue.push_back(o.crossing);
                }
                sig.push(order[o.crossing] * 4 + o.slot as u32);
            }
        }
        sig
    }

    // ---------- text formats ----------

    /// Parse whitespace-separated `X(a,b,c,d)` entries. The component hint
    /// gives the total component count and is required for 0-crossing
    /// diagrams (PD text itself cannot express a crossing-free circle).
    pub fn parse_pd(text: &str, n_components_hint: Option<usize>) -> Result<Diagram, DiagramError> {
        let mut tuples = Vec::new();
        for tok in text.split_whitespace() {
            let inner = tok
                .strip_prefix("X(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| DiagramError::syntax(format!("bad PD entry {:?}", tok)))?;
            let mut ids = [0u32; 4];
            let mut parts = inner.split(',');
            for slot in &mut ids {
                let p = parts
                    .next()
                    .ok_or_else(|| DiagramError::syntax(format!("bad PD entry {:?}", tok)))?;
                *slot = p
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| DiagramError::syntax(format!("bad edge id {:?}", p)))?;
                if *slot == 0 {
                    return Err(DiagramError::syntax("edge ids start at 1"));
                }
            }
            if parts.next().is_some() {
                return Err(DiagramError::syntax(format!("bad PD entry {:?}", tok)));
            }
            tuples.push(ids);
        }
        if tuples.is_empty() {
            let n = n_components_hint.ok_or_else(|| {
                DiagramError::syntax("0-crossing PD needs a component count hint")
            })?;
            return Self::from_crossings(Vec::new(), n);
        }
        let d = Self::from_crossings(tuples, 0)?;
        match n_components_hint {
            None => Ok(d),
            Some(n) => {
                let traced = d.n_components;
                if n < traced {
                    return Err(DiagramError::syntax(format!(
                        "component hint {} below traced count {}",
                        n, traced
                    )));
                }
                let tuples: Vec<[u32; 4]> = d.crossings.iter().map(|c| c.0).collect();
                Self::from_crossings_marked(tuples, n - traced, d.marks)
            }
        }
    }

    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c.0[0], c.0[1], c.0[2], c.0[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Walk each component and list its passages in order as
    /// `(crossing, is_over)`; the walk starts at the component's smallest
    /// edge id.
    pub fn component_passages(&self) -> Vec<Vec<(usize, bool)>> {
        let c = self.crossings.len();
        let mut by_edge: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for (ci, t) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                by_edge.entry(t.0[slot]).or_default().push(Dart { crossing: ci, slot });
            }
        }
        let mut visited_edges: BTreeSet<u32> = BTreeSet::new();
        let mut out = Vec::new();
        for start in 1..=(2 * c as u32) {
            if visited_edges.contains(&start) {
                continue;
            }
            let mut passages = Vec::new();
            let mut cur = start;
            loop {
                visited_edges.insert(cur);
                // entry dart: occurrence that is not an exit (slot 2 or over-out)
                let ds = &by_edge[&cur];
                let entry = *ds
                    .iter()
                    .find(|d| {
                        d.slot == 0 || d.slot == self.over_in_slot(d.crossing)
                    })
                    .expect("every edge enters somewhere");
                let ci = entry.crossing;
                let (is_over, exit_slot) = if entry.slot == 0 {
                    (false, 2)
                } else {
                    (true, entry.slot ^ 2)
                };
                passages.push((ci, is_over));
                let next = self.crossings[ci].edge(exit_slot);
                if next == start {
                    break;
                }
                cur = next;
            }
            out.push(passages);
        }
        out
    }

    /// Signed Gauss code, one line per component, tokens `O<k><sign>` /
    /// `U<k><sign>`. Crossing labels are numbered by first appearance.
    /// Crossing-free components serialize to an empty line.
    pub fn to_gauss_string(&self) -> String {
        let comps = self.component_passages();
        let mut label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut lines = Vec::new();
        for passages in &comps {
            // rotate so the line starts at an over passage when there is one
            let offset = passages.iter().position(|&(_, over)| over).unwrap_or(0);
            let mut toks = Vec::with_capacity(passages.len());
            for k in 0..passages.len() {
                let (ci, over) = passages[(offset + k) % passages.len()];
                let next = label.len() + 1;
                let l = *label.entry(ci).or_insert(next);
                let sgn = if self.signs[ci] > 0 { '+' } else { '-' };
                toks.push(format!("{}{}{}", if over { 'O' } else { 'U' }, l, sgn));
            }
            lines.push(toks.join(" "));
        }
        for _ in 0..self.n_free_loops() {
            lines.push(String::new());
        }
        lines.join("\n")
    }

    /// Parse a signed Gauss code (one component per line). Realizability is
    /// checked eagerly: codes whose rotation system is not planar are
    /// rejected with `NonRealizable`.
    pub fn parse_gauss(text: &str) -> Result<Diagram, DiagramError> {
        if text.trim().is_empty() {
            return Err(DiagramError::syntax("empty Gauss code"));
        }
        struct Passage {
            label: String,
            over: bool,
            sign: i8,
        }
        let mut comps: Vec<Vec<Passage>> = Vec::new();
        let mut free_loops = 0usize;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                free_loops += 1;
                continue;
            }
            let mut passages = Vec::new();
            for tok in line.split_whitespace() {
                let mut chars = tok.chars();
                let ou = chars.next().ok_or_else(|| DiagramError::syntax("empty token"))?;
                let over = match ou {
                    'O' | 'o' => true,
                    'U' | 'u' => false,
                    _ => return Err(DiagramError::syntax(format!("bad token {:?}", tok))),
                };
                let body: String = chars.collect();
                let (label, sign) = if let Some(l) = body.strip_suffix('+') {
                    (l.to_string(), 1i8)
                } else if let Some(l) = body.strip_suffix('-') {
                    (l.to_string(), -1i8)
                } else {
                    return Err(DiagramError::syntax(format!("token {:?} missing sign", tok)));
                };
                if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric()) {
                    return Err(DiagramError::syntax(format!("bad crossing label {:?}", tok)));
                }
                passages.push(Passage { label, over, sign });
            }
            comps.push(passages);
        }
        // assign edges: edge k runs from passage k to passage k+1 (cyclic)
        let mut next_edge = 1u32;
        // crossing label -> (over: Option<(in_edge, out_edge)>, under: ..., sign)
        struct Site {
            over: Option<(u32, u32)>,
            under: Option<(u32, u32)>,
            sign: i8,
        }
        let mut sites: BTreeMap<String, Site> = BTreeMap::new();
        for passages in &comps {
            let n = passages.len();
            let base = next_edge;
            next_edge += n as u32;
            for (k, p) in passages.iter().enumerate() {
                let e_in = base + k as u32;
                let e_out = base + ((k + 1) % n) as u32;
                let site = sites.entry(p.label.clone()).or_insert(Site {
                    over: None,
                    under: None,
                    sign: p.sign,
                });
                if site.sign != p.sign {
                    return Err(DiagramError::syntax(format!(
                        "crossing {} has conflicting signs",
                        p.label
                    )));
                }
                let slot = if p.over { &mut site.over } else { &mut site.under };
                if slot.is_some() {
                    return Err(DiagramError::syntax(format!(
                        "crossing {} passed {} twice",
                        p.label,
                        if p.over { "over" } else { "under" }
                    )));
                }
                *slot = Some((e_in, e_out));
            }
        }
        let mut tuples = Vec::with_capacity(sites.len());
        for (label, site) in &sites {
            let (o_in, o_out) = site.over.ok_or_else(|| {
                DiagramError::syntax(format!("crossing {} has no over passage", label))
            })?;
            let (u_in, u_out) = site.under.ok_or_else(|| {
                DiagramError::syntax(format!("crossing {} has no under passage", label))
            })?;
            // sign +1: over enters in slot 3; sign -1: slot 1
            let t = if site.sign > 0 {
                [u_in, o_out, u_out, o_in]
            } else {
                [u_in, o_in, u_out, o_out]
            };
            tuples.push(t);
        }
        if tuples.is_empty() && free_loops == 0 {
            return Err(DiagramError::syntax("empty Gauss code"));
        }
        Self::from_crossings(tuples, free_loops)
    }

    // ---------- JSON ----------

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "crossings": self.crossings.iter().map(|c| c.0).collect::<Vec<_>>(),
            "components": self.n_components,
            "marks": self.marks.iter().copied().collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Diagram, DiagramError> {
        let obj = v
            .as_object()
            .ok_or_else(|| DiagramError::syntax("diagram: expected object"))?;
        let crossings = obj
            .get("crossings")
            .and_then(|c| c.as_array())
            .ok_or_else(|| DiagramError::syntax("diagram: missing crossings"))?;
        let mut tuples = Vec::with_capacity(crossings.len());
        for c in crossings {
            let arr = c
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| DiagramError::syntax("diagram: crossing must be [a,b,c,d]"))?;
            let mut t = [0u32; 4];
            for (i, x) in arr.iter().enumerate() {
                t[i] = x
                    .as_u64()
                    .and_then(|v| u32::try_from(v).ok())
                    .filter(|&v| v > 0)
                    .ok_or_else(|| DiagramError::syntax("diagram: bad edge id"))?;
            }
            tuples.push(t);
        }
        let components = obj
            .get("components")
            .and_then(|c| c.as_u64())
            .ok_or_else(|| DiagramError::syntax("diagram: missing components"))? as usize;
        let marks: BTreeSet<usize> = match obj.get("marks") {
            None => BTreeSet::new(),
            Some(m) => m
                .as_array()
                .ok_or_else(|| DiagramError::syntax("diagram: marks must be a list"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|v| v as usize)
                        .ok_or_else(|| DiagramError::syntax("diagram: bad mark"))
                })
                .collect::<Result<_, _>>()?,
        };
        if tuples.is_empty() {
            if components == 0 {
                return Err(DiagramError::syntax("diagram: components must be positive"));
            }
            return Self::from_crossings_marked(Vec::new(), components, marks);
        }
        let probe = Self::from_crossings(tuples.clone(), 0)?;
        let traced = probe.n_components;
        if components < traced {
            return Err(DiagramError::syntax(format!(
                "diagram: component count {} below traced {}",
                components, traced
            )));
        }
        Self::from_crossings_marked(tuples, components - traced, marks)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            write!(f, "(0 crossings, {} components)", self.n_components)
        } else {
            write!(f, "{}", self.to_pd_string())?;
            if self.n_free_loops() > 0 {
                write!(f, " (+{} free loops)", self.n_free_loops())?;
            }
            if !self.marks.is_empty() {
                write!(f, " marks={:?}", self.marks.iter().collect::<Vec<_>>())?;
            }
            Ok(())
        }
    }
}

/// Standard small fixtures used across the test suites and the CLI selftest.
pub mod fixtures {
    use super::Diagram;

    /// Left-handed trefoil, writhe -3.
    pub fn trefoil() -> Diagram {
        Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", None).unwrap()
    }

    /// Figure-eight knot, standard 4-crossing diagram.
    pub fn figure_eight() -> Diagram {
        Diagram::parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)", None).unwrap()
    }

    /// Positive single kink.
    pub fn kink() -> Diagram {
        Diagram::parse_pd("X(1,1,2,2)", None).unwrap()
    }

    /// Hopf link (2 crossings).
    pub fn hopf() -> Diagram {
        Diagram::parse_pd("X(4,1,3,2) X(2,3,1,4)", None).unwrap()
    }

    /// 0-crossing unknot.
    pub fn unknot() -> Diagram {
        Diagram::parse_pd("", Some(1)).unwrap()
    }

    /// 0-crossing unlink with n components.
    pub fn unlink(n: usize) -> Diagram {
        Diagram::parse_pd("", Some(n)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn trefoil_parses_and_normalizes() {
        let d = trefoil();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.writhe(), -3);
        // edge ids already sequential along the knot, so serialization is
        // the identity on this input
        assert_eq!(d.to_pd_string(), "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    }

    #[test]
    fn empty_pd_needs_hint() {
        assert!(Diagram::parse_pd("", None).is_err());
        let u = Diagram::parse_pd("", Some(1)).unwrap();
        assert_eq!(u.n_crossings(), 0);
        assert_eq!(u.n_components(), 1);
    }

    #[test]
    fn kink_is_positive() {
        let d = kink();
        assert_eq!(d.n_crossings(), 1);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.writhe(), 1);
    }

    #[test]
    fn edge_multiplicity_errors() {
        let e = Diagram::parse_pd("X(1,2,3,4)", None).unwrap_err();
        assert_eq!(e.kind, ErrorKind::DanglingEdge);
        let e = Diagram::parse_pd("X(1,1,1,2) X(2,3,3,1)", None).unwrap_err();
        assert_eq!(e.kind, ErrorKind::DuplicateEdge);
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(
            Diagram::parse_pd("X(1,4,2)", None).unwrap_err().kind,
            ErrorKind::SyntaxError
        );
        assert_eq!(
            Diagram::parse_pd("Y(1,4,2,5)", None).unwrap_err().kind,
            ErrorKind::SyntaxError
        );
    }

    #[test]
    fn change_crossing_is_involution() {
        let d = trefoil();
        for i in 0..3 {
            let once = d.change_crossing(i).unwrap();
            assert_eq!(once.sign(i), -d.sign(i));
            let twice = once.change_crossing(i).unwrap();
            assert_eq!(twice, d);
        }
    }

    #[test]
    fn change_crossing_bad_index() {
        let e = trefoil().change_crossing(7).unwrap_err();
        assert_eq!(e.kind, ErrorKind::BadIndex);
    }

    #[test]
    fn mirror_negates_all_signs() {
        let d = trefoil();
        let m = d.mirror();
        for i in 0..3 {
            assert_eq!(m.sign(i), -d.sign(i));
        }
        assert_eq!(m.writhe(), 3);
        assert_eq!(m.mirror(), d);
        assert_eq!(unknot().mirror(), unknot());
    }

    #[test]
    fn hopf_has_two_components() {
        let d = hopf();
        assert_eq!(d.n_components(), 2);
        assert_eq!(d.writhe().abs(), 2);
    }

    #[test]
    fn pd_roundtrip() {
        for d in [trefoil(), figure_eight(), kink(), hopf()] {
            let again = Diagram::parse_pd(&d.to_pd_string(), None).unwrap();
            assert_eq!(again, d);
        }
    }

    #[test]
    fn json_roundtrip_with_marks() {
        let d = trefoil().with_marks([0usize, 2].into_iter().collect()).unwrap();
        let v = d.to_json();
        assert_eq!(Diagram::from_json(&v).unwrap(), d);
        assert_eq!(
            serde_json::to_string(&unknot().to_json()).unwrap(),
            r#"{"crossings":[],"components":1,"marks":[]}"#
        );
    }

    #[test]
    fn gauss_trefoil_roundtrip() {
        let d = Diagram::parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.writhe(), 3); // all-positive code is the right-handed trefoil
        let text = d.to_gauss_string();
        let again = Diagram::parse_gauss(&text).unwrap();
        assert_eq!(again.canonical_key(), d.canonical_key());
    }

    #[test]
    fn gauss_kink() {
        let d = Diagram::parse_gauss("O1+ U1+").unwrap();
        assert_eq!(d.n_crossings(), 1);
        assert_eq!(d.to_gauss_string(), "O1+ U1+");
    }

    #[test]
    fn gauss_nonrealizable() {
        // interleaved double-over code with matching signs has genus 1
        let e = Diagram::parse_gauss("O1+ O2+ U1+ U2+").unwrap_err();
        assert_eq!(e.kind, ErrorKind::NonRealizable);
    }

    #[test]
    fn gauss_sign_conflict() {
        let e = Diagram::parse_gauss("O1+ U2+ O2- U1+").unwrap_err();
        assert_eq!(e.kind, ErrorKind::SyntaxError);
    }

    #[test]
    fn canonical_key_invariant_under_relabeling() {
        let d1 = trefoil();
        // same knot, crossings listed in a different order with different ids
        let d2 = Diagram::parse_pd("X(5,2,6,3) X(1,4,2,5) X(3,6,4,1)", None).unwrap();
        assert_eq!(d1.canonical_key(), d2.canonical_key());
        assert_ne!(d1.canonical_key(), figure_eight().canonical_key());
    }

    #[test]
    fn faces_of_kink() {
        let d = kink();
        let mut sizes: Vec<usize> = d.faces().iter().map(|f| f.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn marks_survive_crossing_change() {
        let d = trefoil().with_marks([1usize].into_iter().collect()).unwrap();
        let c = d.change_crossing(0).unwrap();
        assert_eq!(c.marks(), d.marks());
        assert_eq!(c.n_components(), 1);
    }
}
