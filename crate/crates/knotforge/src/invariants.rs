//! Exact polynomial invariants and genus bounds.
//!
//! The Kauffman bracket is the work-horse: `<d> = sum over smoothings of
//! A^(s+ - s-) * delta^(loops - 1)` with `delta = -A^2 - A^-2`. Small
//! diagrams are summed by direct enumeration; larger ones are contracted
//! crossing-by-crossing with partial states memoized per frontier matching,
//! which keeps the cost exponential only in the diagram's cut width instead
//! of its crossing count.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::Diagram;
use crate::poly::{LaurentPoly, Var};

/// Crossing-count ceiling for bracket/Jones state sums.
pub const DEFAULT_BRACKET_CAP: usize = 24;
/// Crossing-count ceiling for the Alexander determinant.
pub const DEFAULT_ALEXANDER_CAP: usize = 40;
/// Above this size the bracket switches from direct enumeration to
/// frontier contraction.
const NAIVE_BRACKET_LIMIT: usize = 16;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {n} crossings, above the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invariant needs a knot diagram, got {components} components")]
    MultiComponent { components: usize },
    #[error("internal arithmetic failure: {0}")]
    Internal(String),
}

/// Two-sided genus estimate for a knot diagram: `lower` from the Alexander
/// span, `upper` from Seifert's algorithm on this diagram. The true genus
/// lies in `[lower, upper]` whenever the inputs are sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusBracket {
    pub lower: usize,
    pub upper: usize,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = x;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// Number of cycles after the orientation-respecting smoothing of every
/// crossing (plus crossing-free components).
pub fn seifert_circles(d: &Diagram) -> usize {
    let n_edges = d.n_edges();
    if n_edges == 0 {
        return d.n_components();
    }
    let mut uf = UnionFind::new(n_edges);
    let mut merges = 0;
    for (i, c) in d.crossings().iter().enumerate() {
        let (over_in, over_out) = d.over_edges(i);
        // incoming under joins outgoing over; incoming over joins outgoing under
        if uf.union(c.0[0] - 1, over_out - 1) {
            merges += 1;
        }
        if uf.union(over_in - 1, c.0[2] - 1) {
            merges += 1;
        }
    }
    (n_edges - merges) + d.n_free_loops()
}

fn delta() -> LaurentPoly {
    // -A^2 - A^-2, doubled exponents +-4
    LaurentPoly::from_int_powers(Var::A, &[(2, -1), (-2, -1)])
}

/// Kauffman bracket, normalized so the 1-component 0-crossing unknot maps
/// to 1. Errors with `CapExceeded` above `cap`.
pub fn kauffman_bracket(d: &Diagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let n = d.n_crossings();
    if n > cap {
        return Err(InvariantError::CapExceeded { n, cap });
    }
    let raw = if n <= NAIVE_BRACKET_LIMIT {
        bracket_enumerate(d)
    } else {
        bracket_contract(d)
    };
    Ok(raw)
}

/// Direct 2^c enumeration. Loop counting is a union-find over edge ids with
/// the two smoothing joins per crossing.
fn bracket_enumerate(d: &Diagram) -> LaurentPoly {
    let c = d.n_crossings();
    let n_edges = d.n_edges();
    let free = d.n_free_loops() as i64;
    if c == 0 {
        let loops = d.n_components() as i64;
        return delta().pow((loops - 1) as u32);
    }
    let mut acc = LaurentPoly::zero(Var::A);
    for state in 0u64..(1u64 << c) {
        let mut uf = UnionFind::new(n_edges);
        let mut merges = 0i64;
        let mut exp = 0i64;
        for (i, cr) in d.crossings().iter().enumerate() {
            let a_smoothing = (state >> i) & 1 == 0;
            let (p, q) = if a_smoothing {
                exp += 1;
                ((cr.0[0], cr.0[1]), (cr.0[2], cr.0[3]))
            } else {
                exp -= 1;
                ((cr.0[0], cr.0[3]), (cr.0[1], cr.0[2]))
            };
            if uf.union(p.0 - 1, p.1 - 1) {
                merges += 1;
            }
            if uf.union(q.0 - 1, q.1 - 1) {
                merges += 1;
            }
        }
        let loops = (n_edges as i64 - merges) + free;
        let mut term = delta().pow((loops - 1) as u32);
        term.mul_monomial(2 * exp, &BigInt::one());
        acc = acc.add(&term);
    }
    acc
}

/// Frontier state: open edges paired by the paths of the partially
/// contracted diagram. Key is the sorted pair list.
type Matching = Vec<(u32, u32)>;

/// Contraction order: repeatedly take the crossing with the most edge ends
/// already on the frontier (ties by index). Keeps the frontier narrow on
/// the corridor-shaped diagrams the generator emits.
fn contraction_order(d: &Diagram) -> Vec<usize> {
    let c = d.n_crossings();
    let mut seen_edge = vec![false; d.n_edges()];
    let mut done = vec![false; c];
    let mut order = Vec::with_capacity(c);
    for _ in 0..c {
        let mut best: Option<(i32, usize)> = None;
        for i in 0..c {
            if done[i] {
                continue;
            }
            let t = d.crossings()[i];
            let mut score = 0;
            for s in 0..4 {
                if seen_edge[(t.0[s] - 1) as usize] {
                    score += 1;
                }
            }
            // prefer closing edges; among fresh starts prefer low index
            match best {
                None => best = Some((score, i)),
                Some((bs, bi)) => {
                    if score > bs || (score == bs && i < bi) {
                        best = Some((score, i));
                    }
                }
            }
        }
        let (_, i) = best.unwrap();
        done[i] = true;
        order.push(i);
        for s in 0..4 {
            seen_edge[(d.crossings()[i].0[s] - 1) as usize] = true;
        }
    }
    order
}

fn bracket_contract(d: &Diagram) -> LaurentPoly {
    let order = contraction_order(d);
    let free = d.n_free_loops() as i64;
    // occurrence count per edge among processed crossings
    let mut seen_count = vec![0u8; d.n_edges()];
    let mut states: HashMap<Matching, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one(Var::A));
    let dlt = delta();

    for &ci in &order {
        let t = d.crossings()[ci];
        // occurrences of each slot edge within this crossing
        let mut local_count: HashMap<u32, u8> = HashMap::new();
        for s in 0..4 {
            *local_count.entry(t.0[s]).or_insert(0) += 1;
        }
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::new();
        for (matching, poly) in &states {
            let pair_of: HashMap<u32, u32> = matching
                .iter()
                .flat_map(|&(a, b)| [(a, b), (b, a)])
                .collect();
            for a_smoothing in [true, false] {
                let arcs: [(usize, usize); 2] = if a_smoothing {
                    [(0, 1), (2, 3)]
                } else {
                    [(0, 3), (1, 2)]
                };
                // Nodes: 0..4 = slots of this crossing, then open edges.
                // Connections: smoothing arcs between slots; each slot edge
                // links its slot either to its twin slot (edge internal to
                // this crossing), to the frontier path (open edge), or to a
                // fresh open end.
                let mut nodes: Vec<(u32, bool)> = Vec::new(); // (edge, stays_open)
                let mut uf = UnionFind::new(12);
                let mut node_of_edge: HashMap<u32, u32> = HashMap::new();
                let mut idx = 4u32;
                let mut loops = 0i64;
                for (p, q) in arcs {
                    uf.union(p as u32, q as u32);
                }
                for s in 0..4 {
                    let e = t.0[s];
                    if local_count[&e] == 2 {
                        // both ends at this crossing: the twin slot carries
                        // the same edge; union once via the lower slot
                        let twin = (0..4).find(|&s2| s2 != s && t.0[s2] == e).unwrap();
                        if s < twin {
                            uf.union(s as u32, twin as u32);
                        }
                        continue;
                    }
                    let node = *node_of_edge.entry(e).or_insert_with(|| {
                        let n = idx;
                        idx += 1;
                        let open_before = seen_count[(e - 1) as usize] == 1;
                        nodes.push((e, !open_before));
                        n
                    });
                    uf.union(s as u32, node);
                }
                // frontier paths between old open edges
                let mut extra: Vec<(u32, u32)> = Vec::new();
                for &(e, _fresh) in &nodes {
                    if seen_count[(e - 1) as usize] == 1 {
                        if let Some(&f) = pair_of.get(&e) {
                            if let Some(&nf) = node_of_edge.get(&f) {
                                extra.push((node_of_edge[&e], nf));
                            }
                        }
                    }
                }
                for (a, b) in extra {
                    uf.union(a, b);
                }
                // Count closed loops: a component is closed when it has no
                // end that stays open and no frontier exit.
                // Ends that remain open after this step:
                //   - fresh edges of this crossing (stays_open = true)
                //   - old open edges whose partner is NOT incident here
                //     (their path now runs through this crossing's arcs to
                //     some other end)
                let mut open_ends: Vec<(u32, u32)> = Vec::new(); // (root, edge)
                for &(e, fresh) in &nodes {
                    let node = node_of_edge[&e];
                    if fresh {
                        open_ends.push((uf.find(node), e));
                    } else {
                        // old open edge: its free end was AT this crossing,
                        // now consumed; its partner keeps a free end only if
                        // the partner is not incident here
                        let f = pair_of[&e];
                        if node_of_edge.contains_key(&f) {
                            // both ends of the path arrived here; nothing stays
                        } else {
                            open_ends.push((uf.find(node), f));
                        }
                    }
                }
                // matching pairs not touching this crossing survive as-is
                let mut new_pairs: Vec<(u32, u32)> = matching
                    .iter()
                    .filter(|&&(a, b)| {
                        !node_of_edge.contains_key(&a) && !node_of_edge.contains_key(&b)
                    })
                    .copied()
                    .collect();
                // group surviving ends by component root
                let mut by_root: HashMap<u32, Vec<u32>> = HashMap::new();
                for (root, e) in &open_ends {
                    by_root.entry(*root).or_default().push(*e);
                }
                let mut closed_roots: Vec<u32> = Vec::new();
                for s in 0..4u32 {
                    let r = uf.find(s);
                    if !by_root.contains_key(&r) && !closed_roots.contains(&r) {
                        closed_roots.push(r);
                    }
                }
                loops += closed_roots.len() as i64;
                for (_root, ends) in by_root {
                    match ends.len() {
                        2 => {
                            let (a, b) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
                            new_pairs.push((a, b));
                        }
                        n => unreachable!(
                            "component with {} open ends; contraction invariant broken",
                            n
                        ),
                    }
                }
                new_pairs.sort_unstable();
                let mut term = poly.clone();
                term.mul_monomial(if a_smoothing { 2 } else { -2 }, &BigInt::one());
                for _ in 0..loops {
                    term = term.mul(&dlt);
                }
                match next.get_mut(&new_pairs) {
                    Some(p) => *p = p.add(&term),
                    None => {
                        next.insert(new_pairs, term);
                    }
                }
            }
        }
        for s in 0..4 {
            let e = (t.0[s] - 1) as usize;
            if seen_count[e] < 2 {
                seen_count[e] += 1;
            }
        }
        states = next;
    }
    debug_assert!(states.len() == 1);
    let total = states
        .remove(&Vec::new())
        .unwrap_or_else(|| LaurentPoly::zero(Var::A));
    // every closed loop contributed delta; normalize to delta^(loops-1),
    // and add the crossing-free circles
    let mut result = total;
    for _ in 0..free {
        result = result.mul(&dlt);
    }
    result
        .div_exact(&dlt)
        .expect("bracket state sum is divisible by delta once")
}

/// Jones polynomial in `q` (`q = t^(1/2)`): `(-A^3)^(-w) * <d>` with
/// `q = A^(-2)`. The unknot maps to 1.
pub fn jones(d: &Diagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let bracket = kauffman_bracket(d, cap)?;
    let w = d.writhe();
    // (-A^3)^(-w) = (-1)^w * A^(-3w)
    let mut v = bracket;
    let sign = if w.rem_euclid(2) == 1 { BigInt::from(-1) } else { BigInt::one() };
    v.mul_monomial(-6 * w, &sign);
    Ok(v.bracket_to_q())
}

/// Arc labels for the Wirtinger presentation: each edge is assigned the
/// over-arc it belongs to; arcs break exactly at under-passages.
fn wirtinger_arcs(d: &Diagram) -> (Vec<usize>, usize) {
    let n_edges = d.n_edges();
    let mut uf = UnionFind::new(n_edges);
    for (i, _) in d.crossings().iter().enumerate() {
        let (over_in, over_out) = d.over_edges(i);
        uf.union(over_in - 1, over_out - 1);
    }
    let mut label: HashMap<u32, usize> = HashMap::new();
    let mut arc_of_edge = vec![0usize; n_edges];
    for e in 0..n_edges as u32 {
        let root = uf.find(e);
        let next = label.len();
        let l = *label.entry(root).or_insert(next);
        arc_of_edge[e as usize] = l;
    }
    (arc_of_edge, label.len())
}

fn bareiss_det_poly(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly, InvariantError> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one(Var::T));
    }
    let mut denom = LaurentPoly::one(Var::T);
    let mut sign_flips = 0usize;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign_flips += 1;
                }
                None => return Ok(LaurentPoly::zero(Var::T)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&denom).ok_or_else(|| {
                    InvariantError::Internal("Bareiss division failed".into())
                })?;
            }
            m[i][k] = LaurentPoly::zero(Var::T);
        }
        denom = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign_flips % 2 == 1 {
        det = det.neg();
    }
    Ok(det)
}

fn bareiss_det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut denom = BigInt::one();
    let mut sign = 1i8;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &denom;
            }
            m[i][k] = BigInt::zero();
        }
        denom = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Fox-derivative rows of the Wirtinger presentation, abelianized.
/// Positive crossing `out = over * in * over^-1`:
///   d/d(in) = t, d/d(out) = -1, d/d(over) = 1 - t.
/// Negative crossing `out = over^-1 * in * over`:
///   d/d(in) = t^-1, d/d(out) = -1, d/d(over) = 1 - t^-1.
fn alexander_matrix(d: &Diagram) -> (Vec<Vec<LaurentPoly>>, usize) {
    let (arc_of_edge, n_arcs) = wirtinger_arcs(d);
    let arc = |e: u32| arc_of_edge[(e - 1) as usize];
    let c = d.n_crossings();
    let mut rows = vec![vec![LaurentPoly::zero(Var::T); n_arcs]; c];
    for (i, cr) in d.crossings().iter().enumerate() {
        let a_in = arc(cr.0[0]);
        let a_out = arc(cr.0[2]);
        let (over_in, _) = d.over_edges(i);
        let a_over = arc(over_in);
        let (c_in, c_over) = if d.sign(i) > 0 {
            (
                LaurentPoly::from_int_powers(Var::T, &[(1, 1)]),
                LaurentPoly::from_int_powers(Var::T, &[(0, 1), (1, -1)]),
            )
        } else {
            (
                LaurentPoly::from_int_powers(Var::T, &[(-1, 1)]),
                LaurentPoly::from_int_powers(Var::T, &[(0, 1), (-1, -1)]),
            )
        };
        rows[i][a_in] = rows[i][a_in].add(&c_in);
        rows[i][a_out] = rows[i][a_out].add(&LaurentPoly::from_int_powers(Var::T, &[(0, -1)]));
        rows[i][a_over] = rows[i][a_over].add(&c_over);
    }
    (rows, n_arcs)
}

/// Alexander polynomial of a knot, normalized so that `D(t) = D(t^-1)`
/// and `D(1) = 1`.
pub fn alexander(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    if d.n_components() != 1 {
        return Err(InvariantError::MultiComponent { components: d.n_components() });
    }
    let c = d.n_crossings();
    if c == 0 {
        return Ok(LaurentPoly::one(Var::T));
    }
    let (rows, n_arcs) = alexander_matrix(d);
    debug_assert_eq!(n_arcs, c);
    // delete the last row and last column
    let minor: Vec<Vec<LaurentPoly>> = rows[..c - 1]
        .iter()
        .map(|r| r[..n_arcs - 1].to_vec())
        .collect();
    let det = bareiss_det_poly(minor)?;
    normalize_alexander(det)
}

fn normalize_alexander(det: LaurentPoly) -> Result<LaurentPoly, InvariantError> {
    if det.is_zero() {
        return Err(InvariantError::Internal(
            "Alexander determinant vanished on a knot diagram".into(),
        ));
    }
    let lo = det.min_doubled_exp().unwrap();
    let hi = det.max_doubled_exp().unwrap();
    let mut p = det;
    p.mul_monomial(-(lo + hi) / 2, &BigInt::one());
    if (lo + hi) % 2 != 0 {
        return Err(InvariantError::Internal(
            "Alexander span is not symmetrizable".into(),
        ));
    }
    let at_one = p.eval_int(1).map_err(|e| InvariantError::Internal(e.to_string()))?;
    if at_one == BigInt::from(-1) {
        p = p.neg();
    } else if !at_one.is_one() {
        return Err(InvariantError::Internal(format!(
            "Alexander value at 1 is {}, expected a unit",
            at_one
        )));
    }
    if p != p.invert_var() {
        return Err(InvariantError::Internal(
            "Alexander normalization is not palindromic".into(),
        ));
    }
    Ok(p)
}

/// Knot determinant `|D(-1)|`, computed directly from the Wirtinger matrix
/// evaluated at `t = -1` (scales far beyond the full polynomial).
pub fn determinant(d: &Diagram) -> Result<BigInt, InvariantError> {
    if d.n_components() != 1 {
        return Err(InvariantError::MultiComponent { components: d.n_components() });
    }
    let c = d.n_crossings();
    if c == 0 {
        return Ok(BigInt::one());
    }
    let (rows, n_arcs) = alexander_matrix(d);
    let minor: Vec<Vec<BigInt>> = rows[..c - 1]
        .iter()
        .map(|r| {
            r[..n_arcs - 1]
                .iter()
                .map(|p| p.eval_int(-1).expect("integer powers"))
                .collect()
        })
        .collect();
    Ok(bareiss_det_int(minor).abs())
}

/// Genus estimate: `upper = (c - s + 1)/2` from Seifert's algorithm on the
/// given diagram, `lower = span(D)/2` from the Alexander polynomial. For
/// diagrams above `alex_cap` crossings the lower bound falls back to 0
/// (still sound, just loose).
pub fn genus_bracket(d: &Diagram, alex_cap: usize) -> Result<GenusBracket, InvariantError> {
    if d.n_components() != 1 {
        return Err(InvariantError::MultiComponent { components: d.n_components() });
    }
    let c = d.n_crossings() as i64;
    let s = seifert_circles(d) as i64;
    let upper_i = (c - s + 1).max(0);
    debug_assert!(upper_i % 2 == 0, "knot diagram Seifert parity");
    let upper = (upper_i / 2) as usize;
    let lower = if d.n_crossings() <= alex_cap {
        let delta = alexander(d)?;
        (delta.doubled_span() / 4) as usize
    } else {
        0
    };
    if lower > upper {
        return Err(InvariantError::Internal(format!(
            "genus bounds crossed: lower {} > upper {}",
            lower, upper
        )));
    }
    Ok(GenusBracket { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    fn q(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_powers(Var::Q, terms)
    }
    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_powers(Var::T, terms)
    }
    fn a(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_powers(Var::A, terms)
    }

    #[test]
    fn bracket_trivial_cases() {
        assert!(kauffman_bracket(&unknot(), 24).unwrap().is_one());
        assert_eq!(kauffman_bracket(&unlink(2), 24).unwrap(), a(&[(2, -1), (-2, -1)]));
        assert_eq!(kauffman_bracket(&kink(), 24).unwrap(), a(&[(3, -1)]));
    }

    #[test]
    fn bracket_cap() {
        let e = kauffman_bracket(&trefoil(), 2).unwrap_err();
        assert!(matches!(e, InvariantError::CapExceeded { n: 3, cap: 2 }));
    }

    #[test]
    fn jones_trivial_cases() {
        assert!(jones(&unknot(), 24).unwrap().is_one());
        assert!(jones(&kink(), 24).unwrap().is_one());
        assert_eq!(jones(&unlink(2), 24).unwrap(), q(&[(1, -1), (-1, -1)]));
    }

    #[test]
    fn jones_left_trefoil() {
        // V(left trefoil) = -t^-4 + t^-3 + t^-1, i.e. -q^-8 + q^-6 + q^-2
        let v = jones(&trefoil(), 24).unwrap();
        assert_eq!(v, q(&[(-8, -1), (-6, 1), (-2, 1)]));
        // mirror gives V(q^-1)
        let vm = jones(&trefoil().mirror(), 24).unwrap();
        assert_eq!(vm, v.invert_var());
    }

    #[test]
    fn jones_figure_eight_amphichiral() {
        let v = jones(&figure_eight(), 24).unwrap();
        assert_eq!(v, q(&[(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)]));
        assert_eq!(v, v.invert_var());
    }

    #[test]
    fn contraction_matches_enumeration() {
        // force both code paths over the corpus by calling the internals
        for d in [trefoil(), figure_eight(), hopf(), kink()] {
            assert_eq!(bracket_enumerate(&d), bracket_contract(&d));
        }
    }

    #[test]
    fn alexander_values() {
        assert!(alexander(&unknot()).unwrap().is_one());
        assert_eq!(alexander(&trefoil()).unwrap(), t(&[(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(
            alexander(&figure_eight()).unwrap(),
            t(&[(1, -1), (0, 3), (-1, -1)])
        );
        // kinks do not change the Alexander polynomial
        assert!(alexander(&kink()).unwrap().is_one());
    }

    #[test]
    fn alexander_rejects_links() {
        assert!(matches!(
            alexander(&hopf()).unwrap_err(),
            InvariantError::MultiComponent { components: 2 }
        ));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&unknot()).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&trefoil()).unwrap(), BigInt::from(3));
        assert_eq!(determinant(&figure_eight()).unwrap(), BigInt::from(5));
    }

    #[test]
    fn seifert_circle_counts() {
        assert_eq!(seifert_circles(&unknot()), 1);
        assert_eq!(seifert_circles(&trefoil()), 2);
        assert_eq!(seifert_circles(&figure_eight()), 3);
    }

    #[test]
    fn genus_brackets() {
        assert_eq!(genus_bracket(&unknot(), 40).unwrap(), GenusBracket { lower: 0, upper: 0 });
        assert_eq!(genus_bracket(&trefoil(), 40).unwrap(), GenusBracket { lower: 1, upper: 1 });
        assert_eq!(
            genus_bracket(&figure_eight(), 40).unwrap(),
            GenusBracket { lower: 1, upper: 1 }
        );
    }
}
