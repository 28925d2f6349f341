//! Graphs, canonical orientations, and the exact algorithms membership
//! predicates depend on: directed cycles, components, girth, bridges,
//! max flow, shortest distance, potentials, edge connectivity, strong
//! connectivity, small-pattern containment, and brute-force subgraph
//! optimizers.
//!
//! All weights are nonnegative integers, so every comparison is exact.

use std::collections::VecDeque;
use thiserror::Error;

use crate::boolcube::GroundSet;

/// Largest pattern (in vertices) accepted by the containment search.
pub const PATTERN_VERTEX_LIMIT: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0},{0}) not allowed")]
    LoopEdge(usize),
    #[error("parallel edge ({0},{1})")]
    ParallelEdge(usize, usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pattern has {0} vertices, limit is {limit}", limit = PATTERN_VERTEX_LIMIT)]
    PatternTooLarge(usize),
    #[error("enumeration over {m} edges exceeds the cap of {limit}")]
    CapExceeded { m: usize, limit: usize },
    #[error("weight array has length {got}, expected {expected}")]
    WeightLengthMismatch { got: usize, expected: usize },
}

/// A simple undirected graph with a fixed edge order. The stored direction
/// of each edge is the canonical orientation that orientation words are
/// interpreted against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            for &w in [u, v].iter() {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            let norm = |(a, b): (usize, usize)| if a < b { (a, b) } else { (b, a) };
            if edges[..i].iter().any(|&e| norm(e) == norm((u, v))) {
                return Err(GraphError::ParallelEdge(u, v));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Graph {
            n,
            edges: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn full_mask(&self) -> SubgraphMask {
        SubgraphMask(mask_of_len(self.m()))
    }

    /// Ground set with one coordinate per edge, labeled `u-v`.
    pub fn ground_set(&self) -> GroundSet {
        GroundSet::with_limit(
            self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect(),
            crate::boolcube::HARD_COORD_LIMIT,
        )
        .expect("simple graph edges have distinct labels")
    }

    /// Unit weights for every edge.
    pub fn unit_weights(&self) -> Vec<u64> {
        vec![1; self.m()]
    }
}

fn mask_of_len(m: usize) -> u32 {
    if m == 0 {
        0
    } else {
        (1u32 << m) - 1
    }
}

/// An orientation word relative to the canonical orientation: bit `e` = 0
/// keeps edge `e` in its stored direction, 1 reverses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Orientation(pub u32);

impl Orientation {
    pub fn canonical() -> Self {
        Orientation(0)
    }

    #[inline]
    pub fn reverses(&self, e: usize) -> bool {
        self.0 >> e & 1 != 0
    }
}

/// An edge-subset word selecting a spanning subgraph (all `n` vertices kept).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubgraphMask(pub u32);

impl SubgraphMask {
    #[inline]
    pub fn keeps(&self, e: usize) -> bool {
        self.0 >> e & 1 != 0
    }

    pub fn edge_count(&self) -> u32 {
        self.0.count_ones()
    }
}

/// A directed view: the selected edges of a graph with directions applied.
/// Each arc remembers the originating edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize, usize)>, // (from, to, edge id)
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(u, v) in &arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
        }
        Ok(Digraph {
            n,
            arcs: arcs
                .into_iter()
                .enumerate()
                .map(|(i, (u, v))| (u, v, i))
                .collect(),
        })
    }

    /// Directed triangle 0→1→2→0.
    pub fn directed_triangle() -> Self {
        Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// The undirected graph beneath the arcs (antiparallel pairs merge).
    pub fn underlying(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v, _) in &self.arcs {
            let e = if u < v { (u, v) } else { (v, u) };
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
        Graph::new(self.n, edges).expect("underlying edges are simple")
    }

    fn out_adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, _) in &self.arcs {
            adj[u].push(v);
        }
        adj
    }
}

/// The directed view of a masked subgraph under an orientation.
pub fn digraph_of(g: &Graph, o: Orientation, mask: SubgraphMask) -> Digraph {
    let arcs = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| mask.keeps(*e))
        .map(|(e, &(u, v))| if o.reverses(e) { (v, u, e) } else { (u, v, e) })
        .collect();
    Digraph { n: g.n, arcs }
}

/// DFS three-color cycle detection.
pub fn has_directed_cycle(dg: &Digraph) -> bool {
    let adj = dg.out_adj();
    // 0 = unseen, 1 = on stack, 2 = done
    let mut color = vec![0u8; dg.n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..dg.n {
        if color[start] != 0 {
            continue;
        }
        color[start] = 1;
        stack.push((start, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Reachable set from `s` in a digraph.
pub fn reachable_from(dg: &Digraph, s: usize) -> Vec<bool> {
    let adj = dg.out_adj();
    let mut seen = vec![false; dg.n];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Connectivity statistics of a masked subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub components: usize,
    /// Smallest cycle length; `None` for a forest.
    pub girth: Option<usize>,
    pub bridges: SubgraphMask,
}

pub fn graph_stats(g: &Graph, mask: SubgraphMask) -> GraphStats {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if mask.keeps(e) {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }

    // components
    let mut comp = vec![usize::MAX; g.n];
    let mut components = 0;
    for start in 0..g.n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = components;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = components;
                    stack.push(w);
                }
            }
        }
        components += 1;
    }

    // girth by BFS from every vertex
    let mut girth: Option<usize> = None;
    for start in 0..g.n {
        let mut dist = vec![usize::MAX; g.n];
        let mut via_edge = vec![usize::MAX; g.n];
        let mut queue = VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if e == via_edge[v] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    via_edge[w] = e;
                    queue.push_back(w);
                } else {
                    let cycle = dist[v] + dist[w] + 1;
                    girth = Some(girth.map_or(cycle, |c| c.min(cycle)));
                }
            }
        }
    }

    // bridges by iterative lowlink
    let mut bridges = 0u32;
    let mut disc = vec![usize::MAX; g.n];
    let mut low = vec![usize::MAX; g.n];
    let mut timer = 0;
    for start in 0..g.n {
        if disc[start] != usize::MAX {
            continue;
        }
        // (vertex, incoming edge, adjacency cursor)
        let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        while let Some(&mut (v, pe, ref mut cursor)) = stack.last_mut() {
            if *cursor < adj[v].len() {
                let (w, e) = adj[v][*cursor];
                *cursor += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridges |= 1 << pe;
                    }
                }
            }
        }
    }

    GraphStats {
        components,
        girth,
        bridges: SubgraphMask(bridges),
    }
}

/// Whether directed arcs follow an orientation or each edge may be used in
/// both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeMode {
    Directed(Orientation),
    Undirected,
}

struct FlowNet {
    first: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            first: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, u: usize, v: usize, c: u64, back: u64) {
        self.first[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.first[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(back);
    }

    /// Dinic.
    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.first.len();
        let mut flow = 0u64;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &a in &self.first[v] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && level[w] == usize::MAX {
                        level[w] = level[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if level[t] == usize::MAX {
                return flow;
            }
            let mut cursor = vec![0usize; n];
            loop {
                let pushed = self.push(s, t, u64::MAX, &level, &mut cursor);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn push(&mut self, v: usize, t: usize, limit: u64, level: &[usize], cursor: &mut [usize]) -> u64 {
        if v == t {
            return limit;
        }
        while cursor[v] < self.first[v].len() {
            let a = self.first[v][cursor[v]];
            let w = self.to[a];
            if self.cap[a] > 0 && level[w] == level[v] + 1 {
                let pushed = self.push(w, t, limit.min(self.cap[a]), level, cursor);
                if pushed > 0 {
                    self.cap[a] -= pushed;
                    self.cap[a ^ 1] += pushed;
                    return pushed;
                }
            }
            cursor[v] += 1;
        }
        0
    }
}

/// Exact integral max flow from `s` to `t` on the masked subgraph. In
/// undirected mode each edge carries its full capacity in both directions.
pub fn max_flow(
    g: &Graph,
    mask: SubgraphMask,
    mode: EdgeMode,
    caps: &[u64],
    s: usize,
    t: usize,
) -> Result<u64, GraphError> {
    check_weights(g, caps)?;
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    let mut net = FlowNet::new(g.n);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !mask.keeps(e) {
            continue;
        }
        match mode {
            EdgeMode::Directed(o) => {
                let (a, b) = if o.reverses(e) { (v, u) } else { (u, v) };
                net.add(a, b, caps[e], 0);
            }
            EdgeMode::Undirected => net.add(u, v, caps[e], caps[e]),
        }
    }
    Ok(net.max_flow(s, t))
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), GraphError> {
    if v >= g.n {
        Err(GraphError::VertexOutOfRange { vertex: v, n: g.n })
    } else {
        Ok(())
    }
}

fn check_weights(g: &Graph, w: &[u64]) -> Result<(), GraphError> {
    if w.len() != g.m() {
        Err(GraphError::WeightLengthMismatch {
            got: w.len(),
            expected: g.m(),
        })
    } else {
        Ok(())
    }
}

/// Exact shortest-path length from `s` to `t` on the masked subgraph;
/// `None` when unreachable. Lengths are nonnegative integers (Dijkstra).
pub fn shortest_dist(
    g: &Graph,
    mask: SubgraphMask,
    mode: EdgeMode,
    lens: &[u64],
    s: usize,
    t: usize,
) -> Result<Option<u64>, GraphError> {
    check_weights(g, lens)?;
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); g.n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !mask.keeps(e) {
            continue;
        }
        match mode {
            EdgeMode::Directed(o) => {
                let (a, b) = if o.reverses(e) { (v, u) } else { (u, v) };
                adj[a].push((b, lens[e]));
            }
            EdgeMode::Undirected => {
                adj[u].push((v, lens[e]));
                adj[v].push((u, lens[e]));
            }
        }
    }
    let mut dist: Vec<Option<u64>> = vec![None; g.n];
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(std::cmp::Reverse((0u64, s)));
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        if dist[v].is_some() {
            continue;
        }
        dist[v] = Some(d);
        for &(w, len) in &adj[v] {
            if dist[w].is_none() {
                heap.push(std::cmp::Reverse((d + len, w)));
            }
        }
    }
    Ok(dist[t])
}

/// Maximum of `π(t) − π(s)` over feasible potentials (`π(v) − π(u) ≤ w(u,v)`
/// for every arc). Equals the shortest-path distance when `t` is reachable
/// and is unbounded (`None`) otherwise.
pub fn max_potential_difference(
    g: &Graph,
    mask: SubgraphMask,
    o: Orientation,
    lens: &[u64],
    s: usize,
    t: usize,
) -> Result<Option<u64>, GraphError> {
    shortest_dist(g, mask, EdgeMode::Directed(o), lens, s, t)
}

/// `k` edge-disjoint directed paths between every ordered vertex pair.
/// Single-vertex digraphs are k-strong for every `k`.
pub fn is_k_strong(dg: &Digraph, k: usize) -> bool {
    if dg.n <= 1 || k == 0 {
        return true;
    }
    for u in 0..dg.n {
        for v in 0..dg.n {
            if u == v {
                continue;
            }
            let mut net = FlowNet::new(dg.n);
            for &(a, b, _) in &dg.arcs {
                net.add(a, b, 1, 0);
            }
            if net.max_flow(u, v) < k as u64 {
                return false;
            }
        }
    }
    true
}

/// The masked subgraph stays connected after removing any `k-1` edges.
pub fn is_k_edge_connected(g: &Graph, mask: SubgraphMask, k: usize) -> bool {
    if g.n <= 1 || k == 0 {
        return true;
    }
    let unit = g.unit_weights();
    for v in 1..g.n {
        let f = max_flow(g, mask, EdgeMode::Undirected, &unit, 0, v)
            .expect("unit weights always valid");
        if f < k as u64 {
            return false;
        }
    }
    true
}

/// Injective embedding of every pattern arc into an arc of `dg`
/// (copies need not be induced).
pub fn contains_copy(dg: &Digraph, pattern: &Digraph) -> Result<bool, GraphError> {
    if pattern.n > PATTERN_VERTEX_LIMIT {
        return Err(GraphError::PatternTooLarge(pattern.n));
    }
    let mut adj = vec![vec![false; dg.n]; dg.n];
    for &(u, v, _) in &dg.arcs {
        adj[u][v] = true;
    }
    let p_arcs: Vec<(usize, usize)> = pattern.arcs.iter().map(|&(u, v, _)| (u, v)).collect();
    Ok(embed(&adj, dg.n, pattern.n, &p_arcs))
}

/// Undirected analog: embeds a pattern graph into the masked subgraph.
pub fn contains_copy_undirected(
    g: &Graph,
    mask: SubgraphMask,
    pattern: &Graph,
) -> Result<bool, GraphError> {
    if pattern.n > PATTERN_VERTEX_LIMIT {
        return Err(GraphError::PatternTooLarge(pattern.n));
    }
    let mut adj = vec![vec![false; g.n]; g.n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if mask.keeps(e) {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    // undirected edges need both (u,v) arcs... one suffices since adj is symmetric
    let p_arcs: Vec<(usize, usize)> = pattern.edges().to_vec();
    Ok(embed(&adj, g.n, pattern.n, &p_arcs))
}

fn embed(adj: &[Vec<bool>], n: usize, pn: usize, p_arcs: &[(usize, usize)]) -> bool {
    if pn > n {
        return false;
    }
    let mut map = vec![usize::MAX; pn];
    let mut used = vec![false; n];
    fn go(
        adj: &[Vec<bool>],
        p_arcs: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        if next == map.len() {
            return true;
        }
        for cand in 0..used.len() {
            if used[cand] {
                continue;
            }
            map[next] = cand;
            // check only arcs whose endpoints are both mapped already
            let ok = p_arcs
                .iter()
                .filter(|&&(a, b)| a <= next && b <= next)
                .all(|&(a, b)| adj[map[a]][map[b]]);
            if ok {
                used[cand] = true;
                if go(adj, p_arcs, map, used, next + 1) {
                    return true;
                }
                used[cand] = false;
            }
        }
        map[next] = usize::MAX;
        false
    }
    go(adj, p_arcs, &mut map, &mut used, 0)
}

/// Exhaustive subgraph optimizers over all `2^m` edge masks.
#[derive(Debug, Clone)]
pub enum SubgraphObjective<'a> {
    /// Fewest edges of a spanning subgraph that is k-edge-connected.
    MinEdgesKConnected(usize),
    /// Fewest edges admitting an undirected s-t flow of at least `w`.
    MinEdgesFlow {
        caps: &'a [u64],
        s: usize,
        t: usize,
        w: u64,
    },
    /// Fewest edges with undirected s-t distance at most `d`.
    MinEdgesDistance {
        lens: &'a [u64],
        s: usize,
        t: usize,
        d: u64,
    },
    /// Fewest edges placing all terminals in one component.
    MinEdgesConnecting { terminals: &'a [usize] },
    /// Most edges of a subgraph containing no copy of the pattern.
    MaxEdgesFreeOf { pattern: &'a Graph },
}

/// Exact optimum by scanning all masks; `None` when no mask is feasible.
pub fn optimize_subgraph(
    g: &Graph,
    objective: &SubgraphObjective,
    cap: usize,
) -> Result<Option<u64>, GraphError> {
    if g.m() > cap {
        return Err(GraphError::CapExceeded { m: g.m(), limit: cap });
    }
    let mut best: Option<u64> = None;
    let maximize = matches!(objective, SubgraphObjective::MaxEdgesFreeOf { .. });
    for bits in 0..=g.full_mask().0 {
        let mask = SubgraphMask(bits);
        let feasible = match *objective {
            SubgraphObjective::MinEdgesKConnected(k) => is_k_edge_connected(g, mask, k),
            SubgraphObjective::MinEdgesFlow { caps, s, t, w } => {
                max_flow(g, mask, EdgeMode::Undirected, caps, s, t)? >= w
            }
            SubgraphObjective::MinEdgesDistance { lens, s, t, d } => {
                shortest_dist(g, mask, EdgeMode::Undirected, lens, s, t)?
                    .is_some_and(|x| x <= d)
            }
            SubgraphObjective::MinEdgesConnecting { terminals } => {
                connects_all(g, mask, terminals)
            }
            SubgraphObjective::MaxEdgesFreeOf { pattern } => {
                !contains_copy_undirected(g, mask, pattern)?
            }
        };
        if feasible {
            let count = mask.edge_count() as u64;
            best = Some(match best {
                None => count,
                Some(b) if maximize => b.max(count),
                Some(b) => b.min(count),
            });
        }
        if bits == u32::MAX {
            break;
        }
    }
    Ok(best)
}

/// All terminals in one component of the masked subgraph.
pub fn connects_all(g: &Graph, mask: SubgraphMask, terminals: &[usize]) -> bool {
    let Some(&first) = terminals.first() else {
        return true;
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if mask.keeps(e) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; g.n];
    let mut stack = vec![first];
    seen[first] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    terminals.iter().all(|&t| seen[t])
}
