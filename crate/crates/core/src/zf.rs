//! Zero forcing: the color-change rule on the off-diagonal nonzero pattern of
//! a square matrix.
//!
//! Starting from a blue set `S`, a blue vertex with exactly one non-blue
//! out-neighbor forces that neighbor blue. The forcing order used throughout
//! is chronological: at every step the smallest forceable vertex is forced,
//! and when several blue vertices could force it, the smallest one becomes
//! its parent. All indices are 0-based.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::la::SparseMatrix;

/// Directed graph with an edge `u -> v` for every off-diagonal nonzero `A[u][v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl PatternGraph {
    pub fn from_matrix(a: &SparseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
        }
        let edges = a.triplets().filter(|&(i, j, _)| i != j).map(|(i, j, _)| (i, j));
        Self::from_edges(a.n_rows(), edges)
    }

    /// Builds a graph from directed edges; self-loops are rejected and
    /// repeated edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, bound: n });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {}", u + 1)));
            }
            out[u].push(v);
            inc[v].push(u);
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { out, inc })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Sorted out-neighbors of `u`.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.inc[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }
}

/// Result of running the forcing rule to a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    colored: Vec<bool>,
    /// `(parent, child)` pairs in chronological order.
    forces: Vec<(usize, usize)>,
}

impl Closure {
    pub fn is_colored(&self, v: usize) -> bool {
        self.colored[v]
    }

    pub fn colored_count(&self) -> usize {
        self.colored.iter().filter(|&&c| c).count()
    }

    /// Colored vertices, ascending.
    pub fn colored(&self) -> Vec<usize> {
        (0..self.colored.len()).filter(|&v| self.colored[v]).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.colored.iter().all(|&c| c)
    }

    pub fn forces(&self) -> &[(usize, usize)] {
        &self.forces
    }
}

/// Incremental chronological forcing.
struct Propagator<'g> {
    g: &'g PatternGraph,
    blue: Vec<bool>,
    /// Non-blue out-neighbors per vertex.
    white_out: Vec<usize>,
    /// Forceable `(child, parent)` pairs, smallest first.
    queue: BinaryHeap<Reverse<(usize, usize)>>,
    forces: Vec<(usize, usize)>,
}

impl<'g> Propagator<'g> {
    fn new(g: &'g PatternGraph) -> Self {
        Self {
            g,
            blue: vec![false; g.n()],
            white_out: (0..g.n()).map(|u| g.out[u].len()).collect(),
            queue: BinaryHeap::new(),
            forces: Vec::new(),
        }
    }

    fn enqueue(&mut self, parent: usize) {
        let child =
            self.g.out[parent].iter().copied().find(|&v| !self.blue[v]).expect("vertex with one non-blue out-neighbor");
        self.queue.push(Reverse((child, parent)));
    }

    fn color(&mut self, u: usize) {
        if self.blue[u] {
            return;
        }
        self.blue[u] = true;
        for &w in &self.g.inc[u] {
            self.white_out[w] -= 1;
            if self.blue[w] && self.white_out[w] == 1 {
                self.enqueue(w);
            }
        }
        if self.white_out[u] == 1 {
            self.enqueue(u);
        }
    }

    fn run(&mut self) {
        while let Some(Reverse((child, parent))) = self.queue.pop() {
            if self.blue[child] {
                continue;
            }
            self.forces.push((parent, child));
            self.color(child);
        }
    }

    fn into_closure(self) -> Closure {
        Closure { colored: self.blue, forces: self.forces }
    }
}

fn check_set(g: &PatternGraph, set: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return Err(Error::IndexOutOfRange { index: v, bound: g.n() });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!("vertex {} listed twice", v + 1)));
        }
    }
    Ok(())
}

/// Runs the chronological forcing rule from the blue set `start`.
pub fn closure(g: &PatternGraph, start: &[usize]) -> Result<Closure> {
    check_set(g, start)?;
    let mut prop = Propagator::new(g);
    for &v in start {
        prop.color(v);
    }
    prop.run();
    Ok(prop.into_closure())
}

pub fn is_zfs(g: &PatternGraph, z: &[usize]) -> Result<bool> {
    Ok(closure(g, z)?.is_complete())
}

/// Chronological forcing certificate for a zero forcing set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingPlan {
    zfs: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    terminals: Vec<usize>,
    chains: Vec<Vec<usize>>,
}

impl ForcingPlan {
    /// Vertex count.
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// `|Z|`.
    pub fn k(&self) -> usize {
        self.zfs.len()
    }

    /// The zero forcing set, in input order.
    pub fn zfs(&self) -> &[usize] {
        &self.zfs
    }

    /// Vertices outside `Z` in the order they are forced.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Forcing parent of `u`; `None` for members of `Z`.
    pub fn parent(&self, u: usize) -> Option<usize> {
        self.parent[u]
    }

    /// Vertices without a forcing child, ascending.
    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    /// One forcing chain per member of `Z` (same order), each starting at
    /// that member and ending at a terminal.
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }
}

/// Builds the chronological forcing plan, failing if `z` is not a zero
/// forcing set.
pub fn forcing_plan(g: &PatternGraph, z: &[usize]) -> Result<ForcingPlan> {
    let cl = closure(g, z)?;
    if !cl.is_complete() {
        return Err(Error::NotZeroForcingSet { colored: cl.colored_count(), total: g.n() });
    }
    let n = g.n();
    let mut parent = vec![None; n];
    let mut child = vec![None; n];
    let mut order = Vec::with_capacity(cl.forces.len());
    for &(p, c) in &cl.forces {
        parent[c] = Some(p);
        child[p] = Some(c);
        order.push(c);
    }
    let terminals = (0..n).filter(|&v| child[v].is_none()).collect();
    let chains = z
        .iter()
        .map(|&head| {
            let mut chain = vec![head];
            let mut cur = head;
            while let Some(next) = child[cur] {
                chain.push(next);
                cur = next;
            }
            chain
        })
        .collect();
    Ok(ForcingPlan { zfs: z.to_vec(), order, parent, terminals, chains })
}

/// Work budget (closure runs times edges) for the pruning pass.
const PRUNE_BUDGET: usize = 50_000_000;

/// Heuristic zero forcing set: repeatedly colors the smallest uncolored
/// vertex and propagates, then drops members that turn out redundant.
/// No minimality guarantee.
pub fn greedy_find_zfs(g: &PatternGraph) -> Vec<usize> {
    let mut prop = Propagator::new(g);
    let mut z = Vec::new();
    let mut next = 0;
    while next < g.n() {
        if prop.blue[next] {
            next += 1;
            continue;
        }
        z.push(next);
        prop.color(next);
        prop.run();
    }

    if z.len().saturating_mul(g.edge_count() + g.n()) <= PRUNE_BUDGET {
        let mut i = z.len();
        while i > 0 {
            i -= 1;
            let mut candidate = z.clone();
            candidate.remove(i);
            if is_zfs(g, &candidate).unwrap_or(false) {
                z = candidate;
            }
        }
    }
    z
}

/// Random square matrix together with a zero forcing set of size `k`.
///
/// The vertices are split into `k` random node-disjoint chains whose heads
/// form `Z`; extra edges are then proposed independently with probability
/// `density` and kept only if `Z` still forces the whole graph. Off-diagonal
/// values are random nonzero residues, diagonal values random (possibly 0).
pub fn random_instance(
    n: usize,
    k: usize,
    density: f64,
    spec: FieldSpec,
    seed: u64,
) -> Result<(SparseMatrix, Vec<usize>)> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);

    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();

    let mut edges = BTreeSet::new();
    let mut z = Vec::with_capacity(k);
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(n)) {
        let chain = &perm[start..end];
        z.push(chain[0]);
        for w in chain.windows(2) {
            edges.insert((w[0], w[1]));
        }
        start = end;
    }

    if density > 0.0 {
        for u in 0..n {
            for v in 0..n {
                if u == v || edges.contains(&(u, v)) || !rng.random_bool(density) {
                    continue;
                }
                edges.insert((u, v));
                let g = PatternGraph::from_edges(n, edges.iter().copied())?;
                if !is_zfs(&g, &z)? {
                    edges.remove(&(u, v));
                }
            }
        }
    }

    let p = spec.modulus();
    let mut triplets: Vec<(usize, usize, u32)> =
        edges.into_iter().map(|(u, v)| (u, v, rng.random_range(1..p))).collect();
    triplets.extend((0..n).map(|v| (v, v, rng.random_range(0..p))));
    let a = SparseMatrix::from_triplets(spec, n, n, triplets)?;
    Ok((a, z))
}
