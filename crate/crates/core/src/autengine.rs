//! Column automorphisms of a binary matrix.
//!
//! The matrix becomes a bipartite graph with one vertex per distinct row and
//! one per column. Automorphisms are found by individualization and
//! refinement: equitable partition refinement, a first path to a discrete
//! partition, and for every level a search for automorphisms mapping the first
//! path's vertex to each other vertex of the target cell, pruned by the orbits
//! of the automorphisms already found.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::gf2::{BitMatrix, BitVector};
use crate::perm::{PermGroup, Permutation, UnionFind};

/// Limits on the search; exceeding either marks the result incomplete.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 50_000_000, time_limit: None }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self { max_nodes: u64::MAX, time_limit: None }
    }

    pub fn with_time_limit(limit: Duration) -> Self {
        Self { time_limit: Some(limit), ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct AutomorphismResult {
    /// Non-trivial generators on the columns, in discovery order.
    pub generators: Vec<Permutation>,
    pub group: PermGroup,
    /// False when the budget ran out before the search finished.
    pub complete: bool,
    pub nodes: u64,
}

struct Graph {
    rows: usize,
    adj: Vec<Vec<usize>>,
    row_bits: Vec<BitVector>,
    row_keys: Vec<(u32, usize)>,
}

impl Graph {
    fn vertices(&self) -> usize {
        self.adj.len()
    }
}

/// Removes duplicate rows, folding multiplicity into the row color.
fn build_graph(m: &BitMatrix, colors: &[u32]) -> Graph {
    assert_eq!(m.num_rows(), colors.len(), "one color per row");
    let mut distinct: BTreeMap<(u32, BitVector), usize> = BTreeMap::new();
    let mut order: Vec<(u32, BitVector)> = Vec::new();
    for (row, &c) in m.rows().iter().zip(colors) {
        let key = (c, row.clone());
        match distinct.get_mut(&key) {
            Some(count) => *count += 1,
            None => {
                distinct.insert(key.clone(), 1);
                order.push(key);
            }
        }
    }
    let rows = order.len();
    let cols = m.num_cols();
    let mut adj = vec![Vec::new(); rows + cols];
    let mut row_bits = Vec::with_capacity(rows);
    let mut row_keys = Vec::with_capacity(rows);
    for (r, key) in order.iter().enumerate() {
        for c in key.1.ones_iter() {
            adj[r].push(rows + c);
            adj[rows + c].push(r);
        }
        row_bits.push(key.1.clone());
        row_keys.push((key.0, distinct[key]));
    }
    Graph { rows, adj, row_bits, row_keys }
}

#[derive(Clone)]
struct Partition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    /// Start position of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// Cell length, indexed by start position.
    len_at: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn from_cells(nv: usize, cells: &[Vec<usize>]) -> Self {
        let mut p = Partition {
            elems: Vec::with_capacity(nv),
            pos: vec![0; nv],
            cell_of: vec![0; nv],
            len_at: vec![0; nv],
            cells: 0,
        };
        for cell in cells.iter().filter(|c| !c.is_empty()) {
            let start = p.elems.len();
            for &v in cell {
                p.pos[v] = p.elems.len();
                p.cell_of[v] = start;
                p.elems.push(v);
            }
            p.len_at[start] = cell.len();
            p.cells += 1;
        }
        p
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    fn cell(&self, start: usize) -> &[usize] {
        &self.elems[start..start + self.len_at[start]]
    }

    /// Smallest non-singleton cell, lowest position on ties.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.elems.len() {
            let l = self.len_at[s];
            if l > 1 && best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, s));
            }
            s += l;
        }
        best.map(|(_, s)| s)
    }

    fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v];
        let len = self.len_at[start];
        debug_assert!(len > 1);
        let p = self.pos[v];
        let u = self.elems[start];
        self.elems.swap(start, p);
        self.pos[u] = p;
        self.pos[v] = start;
        self.len_at[start] = 1;
        self.len_at[start + 1] = len - 1;
        for &w in &self.elems[start + 1..start + len] {
            self.cell_of[w] = start + 1;
        }
        self.cells += 1;
        start
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2))
        .wrapping_mul(0xff51_afd7_ed55_8ccd)
}

struct Refiner {
    counts: Vec<usize>,
    in_queue: Vec<bool>,
}

impl Refiner {
    fn new(nv: usize) -> Self {
        Self { counts: vec![0; nv], in_queue: vec![false; nv] }
    }

    /// Refines to the coarsest equitable partition finer than `p`, starting from the
    /// given splitter cells. Returns a hash of the refinement trace.
    fn refine(&mut self, g: &Graph, p: &mut Partition, initial: &[usize], mut trace: u64) -> u64 {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in initial {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut touched_vertices: Vec<usize> = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.in_queue[w] = false;
            if p.is_discrete() {
                continue;
            }
            touched_vertices.clear();
            let wlen = p.len_at[w];
            for i in w..w + wlen {
                let v = p.elems[i];
                for &u in &g.adj[v] {
                    if self.counts[u] == 0 {
                        touched_vertices.push(u);
                    }
                    self.counts[u] += 1;
                }
            }
            let mut touched_cells: Vec<usize> = touched_vertices.iter().map(|&u| p.cell_of[u]).collect();
            touched_cells.sort_unstable();
            touched_cells.dedup();
            for &x in &touched_cells {
                let xlen = p.len_at[x];
                if xlen == 1 {
                    continue;
                }
                let first = self.counts[p.elems[x]];
                if p.elems[x..x + xlen].iter().all(|&v| self.counts[v] == first) {
                    continue;
                }
                let counts = &self.counts;
                p.elems[x..x + xlen].sort_by_key(|&v| (counts[v], v));
                // Fragments in increasing count order.
                let mut starts = vec![x];
                for i in x + 1..x + xlen {
                    if counts[p.elems[i]] != counts[p.elems[i - 1]] {
                        starts.push(i);
                    }
                }
                let end = x + xlen;
                trace = mix(trace, (w as u64) << 32 | x as u64);
                let mut largest = (0usize, x);
                for (fi, &s) in starts.iter().enumerate() {
                    let e = starts.get(fi + 1).copied().unwrap_or(end);
                    p.len_at[s] = e - s;
                    for i in s..e {
                        let v = p.elems[i];
                        p.pos[v] = i;
                        p.cell_of[v] = s;
                    }
                    trace = mix(trace, (counts[p.elems[s]] as u64) << 32 | (e - s) as u64);
                    if e - s > largest.0 {
                        largest = (e - s, s);
                    }
                }
                p.cells += starts.len() - 1;
                let x_queued = self.in_queue[x];
                for &s in &starts {
                    if (x_queued || s != largest.1) && !self.in_queue[s] {
                        self.in_queue[s] = true;
                        queue.push_back(s);
                    }
                }
            }
            for &u in &touched_vertices {
                self.counts[u] = 0;
            }
        }
        for &s in &queue {
            self.in_queue[s] = false;
        }
        mix(trace, p.cells as u64)
    }
}

struct Search<'a> {
    g: &'a Graph,
    refiner: Refiner,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    exhausted: bool,
    /// Trace after reaching each depth on the first path.
    first_traces: Vec<u64>,
    first_leaf: Vec<usize>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = true;
        }
        if let Some(limit) = self.budget.time_limit {
            if self.started.elapsed() >= limit {
                self.exhausted = true;
            }
        }
        !self.exhausted
    }

    fn child(&mut self, p: &Partition, v: usize, depth: usize) -> (Partition, u64) {
        let mut q = p.clone();
        let s = q.individualize(v);
        let t = self.refiner.refine(self.g, &mut q, &[s], mix(depth as u64, s as u64));
        (q, t)
    }

    fn leaf_map(&self, leaf: &Partition) -> Vec<usize> {
        let mut gamma = vec![0; leaf.elems.len()];
        for (i, &a) in self.first_leaf.iter().enumerate() {
            gamma[a] = leaf.elems[i];
        }
        gamma
    }

    fn is_automorphism(&self, gamma: &[usize]) -> bool {
        let g = self.g;
        let col_images: Vec<usize> = (g.rows..g.vertices()).map(|c| gamma[c] - g.rows).collect();
        if col_images.iter().any(|&c| c >= g.vertices() - g.rows) {
            return false;
        }
        (0..g.rows).all(|r| {
            let image = gamma[r];
            image < g.rows
                && g.row_keys[r] == g.row_keys[image]
                && g.row_bits[r].permuted(&col_images) == g.row_bits[image]
        })
    }

    /// Depth-first search below `p` (at `depth`) for a leaf equivalent to the first leaf.
    fn find_equivalent(&mut self, p: &Partition, trace: u64, depth: usize) -> Option<Vec<usize>> {
        if !self.tick() {
            return None;
        }
        if self.first_traces.get(depth) != Some(&trace) {
            return None;
        }
        if p.is_discrete() {
            if depth + 1 != self.first_traces.len() {
                return None;
            }
            let gamma = self.leaf_map(p);
            return self.is_automorphism(&gamma).then_some(gamma);
        }
        let target = p.target_cell()?;
        let mut cell: Vec<usize> = p.cell(target).to_vec();
        cell.sort_unstable();
        for v in cell {
            let (q, t) = self.child(p, v, depth);
            if let Some(gamma) = self.find_equivalent(&q, t, depth + 1) {
                return Some(gamma);
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

/// Column permutations of `m` that map its rows onto rows of the same color.
pub fn matrix_automorphisms(m: &BitMatrix, row_colors: &[u32], budget: SearchBudget) -> AutomorphismResult {
    let cols = m.num_cols();
    let g = build_graph(m, row_colors);
    let nv = g.vertices();

    // Initial partition: row classes by key, then all columns.
    let mut by_key: BTreeMap<(u32, usize), Vec<usize>> = BTreeMap::new();
    for (r, key) in g.row_keys.iter().enumerate() {
        by_key.entry(*key).or_default().push(r);
    }
    let mut cells: Vec<Vec<usize>> = by_key.into_values().collect();
    cells.push((g.rows..nv).collect());
    let mut root = Partition::from_cells(nv, &cells);

    let mut search = Search {
        g: &g,
        refiner: Refiner::new(nv),
        nodes: 0,
        budget,
        started: Instant::now(),
        exhausted: false,
        first_traces: Vec::new(),
        first_leaf: Vec::new(),
    };
    let starts: Vec<usize> = {
        let mut v = Vec::new();
        let mut s = 0;
        while s < nv {
            v.push(s);
            s += root.len_at[s];
        }
        v
    };
    let root_trace = search.refiner.refine(&g, &mut root, &starts, 0x5eed);

    // First path: always individualize the smallest vertex of the target cell.
    let mut path: Vec<(Partition, Vec<usize>, usize)> = Vec::new();
    search.first_traces.push(root_trace);
    let mut node = root;
    while let Some(target) = node.target_cell() {
        let mut cell = node.cell(target).to_vec();
        cell.sort_unstable();
        let v = cell[0];
        let (child, t) = search.child(&node, v, path.len());
        search.first_traces.push(t);
        path.push((node, cell, v));
        node = child;
        search.nodes += 1;
    }
    search.first_leaf = node.elems.clone();

    let mut generators_full: Vec<Vec<usize>> = Vec::new();
    let mut orbits = UnionFind::new(nv);
    'levels: for level in (0..path.len()).rev() {
        let (p, cell, v) = &path[level];
        let mut failed: Vec<usize> = Vec::new();
        for &w in cell {
            if w == *v || orbits.find(w) == orbits.find(*v) {
                continue;
            }
            if failed.iter().any(|&f| orbits.find(f) == orbits.find(w)) {
                continue;
            }
            let (q, t) = search.child(p, w, level);
            match search.find_equivalent(&q, t, level + 1) {
                Some(gamma) => {
                    for (i, &j) in gamma.iter().enumerate() {
                        orbits.union(i, j);
                    }
                    generators_full.push(gamma);
                }
                None => failed.push(w),
            }
            if search.exhausted {
                break 'levels;
            }
        }
    }

    let generators: Vec<Permutation> = generators_full
        .iter()
        .map(|gamma| {
            let images = (g.rows..nv).map(|c| gamma[c] - g.rows).collect();
            Permutation::from_images(images).expect("automorphism restricts to columns")
        })
        .filter(|p| !p.is_identity())
        .collect();
    let group = PermGroup::new(cols, generators.clone()).expect("degree matches");
    AutomorphismResult { generators, group, complete: !search.exhausted, nodes: search.nodes }
}

/// Direct check that permuting the columns of `m` by `p` maps the multiset of
/// colored rows onto itself.
pub fn is_matrix_automorphism(m: &BitMatrix, row_colors: &[u32], p: &Permutation) -> bool {
    if p.degree() != m.num_cols() {
        return false;
    }
    let mut counts: HashMap<(u32, &BitVector), i64> = HashMap::new();
    for (row, &c) in m.rows().iter().zip(row_colors) {
        *counts.entry((c, row)).or_default() += 1;
    }
    let images: Vec<(u32, BitVector)> =
        m.rows().iter().zip(row_colors).map(|(r, &c)| (c, r.permuted(p.images()))).collect();
    for (c, r) in &images {
        match counts.get_mut(&(*c, r)) {
            Some(k) => *k -= 1,
            None => return false,
        }
    }
    counts.values().all(|&k| k == 0)
}
