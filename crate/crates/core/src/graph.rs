//! Digraph and multi-digraph structures together with the structural
//! predicates used throughout: strong connectivity, sink/source-sets,
//! simple sink/source-sets, and isolated cycles.
//!
//! Vertices are `0..n` internally; the text format is 1-based.

use crate::error::{Error, Result};

/// Largest `n` for which exhaustive subset enumeration is permitted.
pub const MAX_SUBSET_N: usize = 24;

/// A simple digraph: no loops, no repeated arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// A multi-digraph: loops and repeated arcs allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// In-degree and out-degree sequences with equal sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequencePair {
    pub in_degrees: Vec<usize>,
    pub out_degrees: Vec<usize>,
}

impl DegreeSequencePair {
    pub fn new(in_degrees: Vec<usize>, out_degrees: Vec<usize>) -> Result<Self> {
        let in_sum: usize = in_degrees.iter().sum();
        let out_sum: usize = out_degrees.iter().sum();
        if in_sum != out_sum {
            return Err(Error::DegreeSumMismatch { in_sum, out_sum });
        }
        Ok(Self {
            in_degrees,
            out_degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.in_degrees.len()
    }

    /// Arc count m = sum of either degree sequence.
    pub fn m(&self) -> usize {
        self.in_degrees.iter().sum()
    }
}

impl Digraph {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &arcs {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "arc ({i},{j}) out of range for n = {n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
        }
        arcs.sort_unstable();
        if arcs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate arc".into()));
        }
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// The digraph with every arc reversed.
    pub fn reversed(&self) -> Digraph {
        let arcs = self.arcs.iter().map(|&(i, j)| (j, i)).collect();
        Digraph::new(self.n, arcs).expect("reversal preserves validity")
    }

    pub fn degrees(&self) -> DegreeSequencePair {
        degrees_of(self.n, &self.arcs)
    }

    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.arcs {
            adj[i].push(j);
        }
        adj
    }

    /// Parse the text format: first line `n m`, then `m` lines `i j` (1-based).
    pub fn from_text(text: &str) -> Result<Self> {
        let (n, arcs) = parse_arc_list(text)?;
        Digraph::new(n, arcs)
    }

    pub fn to_text(&self) -> String {
        format_arc_list(self.n, &self.arcs)
    }
}

impl MultiDigraph {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &arcs {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "arc ({i},{j}) out of range for n = {n}"
                )));
            }
        }
        arcs.sort_unstable();
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// True iff the multi-digraph has no loops and no repeated arcs.
    pub fn is_simple(&self) -> bool {
        self.arcs.iter().all(|&(i, j)| i != j)
            && self.arcs.windows(2).all(|w| w[0] != w[1])
    }

    /// Reinterpret as a simple digraph; fails on loops or repeats.
    pub fn to_simple(&self) -> Result<Digraph> {
        Digraph::new(self.n, self.arcs.clone())
    }

    pub fn degrees(&self) -> DegreeSequencePair {
        degrees_of(self.n, &self.arcs)
    }

    pub fn reversed(&self) -> MultiDigraph {
        let arcs = self.arcs.iter().map(|&(i, j)| (j, i)).collect();
        MultiDigraph::new(self.n, arcs).expect("reversal preserves validity")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (n, arcs) = parse_arc_list(text)?;
        MultiDigraph::new(n, arcs)
    }

    pub fn to_text(&self) -> String {
        format_arc_list(self.n, &self.arcs)
    }
}

fn degrees_of(n: usize, arcs: &[(usize, usize)]) -> DegreeSequencePair {
    let mut ind = vec![0usize; n];
    let mut outd = vec![0usize; n];
    for &(i, j) in arcs {
        outd[i] += 1;
        ind[j] += 1;
    }
    DegreeSequencePair {
        in_degrees: ind,
        out_degrees: outd,
    }
}

fn parse_arc_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad header, expected `n m`".into()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad header, expected `n m`".into()))?;
    let mut arcs = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let i: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad arc line `{line}`")))?;
        let j: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad arc line `{line}`")))?;
        if i == 0 || j == 0 {
            return Err(Error::Parse("vertices are 1-based".into()));
        }
        arcs.push((i - 1, j - 1));
    }
    if arcs.len() != m {
        return Err(Error::Parse(format!(
            "header promised {m} arcs, found {}",
            arcs.len()
        )));
    }
    Ok((n, arcs))
}

fn format_arc_list(n: usize, arcs: &[(usize, usize)]) -> String {
    let mut s = format!("{} {}\n", n, arcs.len());
    for &(i, j) in arcs {
        s.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    s
}

/// Strong connectivity via Kosaraju's two-pass search (iterative).
///
/// Equivalent to: no proper sink-set and no proper source-set; the
/// equivalence is exercised by tests against [`find_sink_sets`].
pub fn is_strongly_connected(g: &Digraph) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    let mut radj = vec![Vec::new(); n];
    for &(i, j) in g.arcs() {
        adj[i].push(j);
        radj[j].push(i);
    }
    reachable_count(&adj, 0) == n && reachable_count(&radj, 0) == n
}

fn reachable_count(adj: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count
}

/// All sink-sets of `g` as bitmasks, by exhaustive subset enumeration.
///
/// A sink-set S has no arc from S to its complement. The empty set is
/// never reported; the full vertex set is skipped when `proper_only`.
pub fn find_sink_sets(g: &Digraph, proper_only: bool) -> Result<Vec<u32>> {
    let n = g.n();
    if n > MAX_SUBSET_N {
        return Err(Error::SizeGuard {
            op: "find_sink_sets",
            n,
            limit: MAX_SUBSET_N,
        });
    }
    let out_masks = out_neighbor_masks(n, g.arcs());
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut sets = Vec::new();
    for mask in 1..=full {
        if proper_only && mask == full {
            continue;
        }
        if is_sink_mask(mask, &out_masks) {
            sets.push(mask);
        }
    }
    Ok(sets)
}

/// Dual of [`find_sink_sets`]: no arc from the complement into S.
pub fn find_source_sets(g: &Digraph, proper_only: bool) -> Result<Vec<u32>> {
    find_sink_sets(&g.reversed(), proper_only)
}

fn out_neighbor_masks(n: usize, arcs: &[(usize, usize)]) -> Vec<u32> {
    let mut masks = vec![0u32; n];
    for &(i, j) in arcs {
        if i != j {
            masks[i] |= 1 << j;
        }
    }
    masks
}

fn is_sink_mask(mask: u32, out_masks: &[u32]) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if out_masks[v] & !mask != 0 {
            return false;
        }
    }
    true
}

/// Vertices of a bitmask, ascending.
pub fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// All minimal simple sink-sets, in linear time.
///
/// A minimal simple sink-set is a single cycle all of whose vertices have
/// total out-degree exactly 1 in the graph. For multi-digraphs a loop is a
/// cycle of length 1; in simple digraphs cycles have length >= 2.
pub fn find_simple_sink_sets(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    functional_cycles(n, arcs, false)
}

/// Dual of [`find_simple_sink_sets`] with in-degrees and reversed arcs.
pub fn find_simple_source_sets(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    functional_cycles(n, arcs, true)
}

/// Cycles of the functional sub-digraph spanned by vertices of
/// out-degree exactly 1 (in-degree when `reversed`).
fn functional_cycles(n: usize, arcs: &[(usize, usize)], reversed: bool) -> Vec<Vec<usize>> {
    let mut deg = vec![0usize; n];
    let mut succ = vec![usize::MAX; n];
    for &(i, j) in arcs {
        let (tail, head) = if reversed { (j, i) } else { (i, j) };
        deg[tail] += 1;
        succ[tail] = head;
    }
    let candidate: Vec<bool> = deg.iter().map(|&d| d == 1).collect();
    // 0 unvisited, 1 on current walk, 2 done
    let mut color = vec![0u8; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if !candidate[start] || color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        while v != usize::MAX && candidate[v] && color[v] == 0 {
            color[v] = 1;
            path.push(v);
            v = succ[v];
        }
        if v != usize::MAX && candidate[v] && color[v] == 1 {
            let pos = path.iter().position(|&u| u == v).unwrap();
            let mut cycle = path[pos..].to_vec();
            cycle.sort_unstable();
            cycles.push(cycle);
        }
        for &u in &path {
            color[u] = 2;
        }
    }
    cycles
}

impl Digraph {
    pub fn simple_sink_sets(&self) -> Vec<Vec<usize>> {
        find_simple_sink_sets(self.n, &self.arcs)
    }

    pub fn simple_source_sets(&self) -> Vec<Vec<usize>> {
        find_simple_source_sets(self.n, &self.arcs)
    }

    pub fn has_simple_sink_or_source_set(&self) -> bool {
        has_simple_sink_or_source_set(self.n, &self.arcs)
    }
}

impl MultiDigraph {
    pub fn simple_sink_sets(&self) -> Vec<Vec<usize>> {
        find_simple_sink_sets(self.n, &self.arcs)
    }

    pub fn simple_source_sets(&self) -> Vec<Vec<usize>> {
        find_simple_source_sets(self.n, &self.arcs)
    }

    pub fn has_simple_sink_or_source_set(&self) -> bool {
        has_simple_sink_or_source_set(self.n, &self.arcs)
    }
}

pub fn has_simple_sink_or_source_set(n: usize, arcs: &[(usize, usize)]) -> bool {
    !find_simple_sink_sets(n, arcs).is_empty() || !find_simple_source_sets(n, arcs).is_empty()
}

/// True iff some vertex subset induces a directed cycle with no arcs in
/// either direction between it and the rest of the graph.
///
/// Every vertex of an isolated cycle has in-degree 1 and out-degree 1 in
/// the whole graph, so it suffices to walk the functional sub-digraph of
/// such vertices.
pub fn has_isolated_cycle(g: &Digraph) -> bool {
    let n = g.n();
    let degs = g.degrees();
    let mut succ = vec![usize::MAX; n];
    for &(i, j) in g.arcs() {
        succ[i] = j;
    }
    let candidate: Vec<bool> = (0..n)
        .map(|v| degs.in_degrees[v] == 1 && degs.out_degrees[v] == 1)
        .collect();
    let mut color = vec![0u8; n];
    for start in 0..n {
        if !candidate[start] || color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        while v != usize::MAX && candidate[v] && color[v] == 0 {
            color[v] = 1;
            path.push(v);
            v = succ[v];
        }
        if v != usize::MAX && candidate[v] && color[v] == 1 {
            return true;
        }
        for &u in &path {
            color[u] = 2;
        }
    }
    false
}

/// Conventions for the complex-sink-set event of [`check_event_a`].
#[derive(Debug, Clone, Copy)]
pub struct EventAConfig {
    /// Admit the full vertex set as a (non-proper) sink-set.
    pub include_full_set: bool,
    /// Require strictly fewer than m/2 induced arcs instead of at most m/2.
    pub strict_half: bool,
}

impl Default for EventAConfig {
    fn default() -> Self {
        Self {
            include_full_set: false,
            strict_half: false,
        }
    }
}

/// The event: `g` has a complex sink-set inducing at most m/2 arcs, and
/// `g` has no simple sink-set. Complex means not simple, i.e. some
/// induced out-degree differs from 1.
pub fn check_event_a(g: &Digraph, cfg: EventAConfig) -> Result<bool> {
    let n = g.n();
    if n > MAX_SUBSET_N {
        return Err(Error::SizeGuard {
            op: "check_event_a",
            n,
            limit: MAX_SUBSET_N,
        });
    }
    let m = g.m();
    let sink_sets = find_sink_sets(g, !cfg.include_full_set)?;
    let mut has_complex_small = false;
    let mut has_simple = false;
    for &mask in &sink_sets {
        let mut induced = 0usize;
        let mut outdeg = [0usize; 32];
        for &(i, j) in g.arcs() {
            if mask & (1 << i) != 0 && mask & (1 << j) != 0 {
                induced += 1;
                outdeg[i] += 1;
            }
        }
        let simple = mask_vertices(mask).iter().all(|&v| outdeg[v] == 1);
        if simple {
            has_simple = true;
        } else {
            let small = if cfg.strict_half {
                2 * induced < m
            } else {
                2 * induced <= m
            };
            if small {
                has_complex_small = true;
            }
        }
    }
    Ok(has_complex_small && !has_simple)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.to_vec()).unwrap()
    }

    #[test]
    fn three_cycle_is_strongly_connected() {
        assert!(is_strongly_connected(&g(3, &[(0, 1), (1, 2), (2, 0)])));
    }

    #[test]
    fn path_is_not_strongly_connected() {
        assert!(!is_strongly_connected(&g(3, &[(0, 1), (1, 2)])));
    }

    #[test]
    fn three_cycle_has_no_proper_sink_sets() {
        let c3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(find_sink_sets(&c3, true).unwrap().is_empty());
        assert!(find_source_sets(&c3, true).unwrap().is_empty());
    }

    #[test]
    fn single_arc_sink_set() {
        let h = g(2, &[(0, 1)]);
        let sinks = find_sink_sets(&h, true).unwrap();
        assert!(sinks.contains(&0b10));
        assert!(!sinks.contains(&0b01));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Digraph::new(2, vec![(0, 0)]).is_err());
        assert!(Digraph::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(MultiDigraph::new(2, vec![(0, 0), (0, 1)]).is_ok());
    }

    #[test]
    fn cycle_with_incoming_arc_is_simple_sink_set() {
        // arcs {1->2,2->3,3->1,4->1} in 1-based terms
        let h = g(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]);
        let sinks = h.simple_sink_sets();
        assert_eq!(sinks, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn lone_cycle_is_both_simple_sink_and_source() {
        let c3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(c3.simple_sink_sets(), vec![vec![0, 1, 2]]);
        assert_eq!(c3.simple_source_sets(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn loop_is_a_simple_sink_set_in_multigraph() {
        let mg = MultiDigraph::new(2, vec![(0, 0), (1, 0)]).unwrap();
        assert_eq!(mg.simple_sink_sets(), vec![vec![0]]);
    }

    #[test]
    fn two_disjoint_two_cycles_have_isolated_cycle() {
        let h = g(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert!(has_isolated_cycle(&h));
    }

    #[test]
    fn dense_triangle_variant_has_no_isolated_cycle() {
        // in-degrees (1,1,2), out-degrees (2,1,1): arcs 1->2,1->3,2->3,3->1
        let h = g(3, &[(0, 1), (0, 2), (1, 2), (2, 0)]);
        assert!(!has_isolated_cycle(&h));
    }

    #[test]
    fn event_a_false_on_strongly_connected_and_plain_cycle() {
        let cfg = EventAConfig::default();
        let c3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(!check_event_a(&c3, cfg).unwrap());
        let h = g(3, &[(0, 1), (0, 2), (1, 2), (2, 0)]);
        assert!(is_strongly_connected(&h));
        assert!(!check_event_a(&h, cfg).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let h = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = h.to_text();
        assert_eq!(Digraph::from_text(&t).unwrap(), h);
        let mg = MultiDigraph::new(2, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(MultiDigraph::from_text(&mg.to_text()).unwrap(), mg);
    }

    #[test]
    fn subset_ops_refuse_large_n() {
        let h = Digraph::new(30, vec![(0, 1)]).unwrap();
        assert!(find_sink_sets(&h, true).is_err());
    }
}
