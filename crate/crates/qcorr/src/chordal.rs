//! Pattern graphs, chordality recognition, clique extraction, and psd
//! completion of partial symmetric matrices with chordal pattern.
//!
//! A partial matrix stores a unit diagonal plus one value per pattern edge.
//! When the pattern is chordal and every maximal-clique block is psd, the
//! missing entries can be filled one at a time: each fill maximizes the
//! determinant of the smallest submatrix that contains it and is otherwise
//! specified, which amounts to the zero-partial-correlation choice
//! `x = b_i^T D^+ b_j` over the separator block `D`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::numkernel::SymMatrix;

/// Clique enumeration cap; every instance of interest has 6 vertices.
pub const MAX_CLIQUE_DIM: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum ChordalError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("graph on {0} vertices exceeds the clique-enumeration cap of {MAX_CLIQUE_DIM}")]
    DimensionTooLarge(usize),
    #[error("pattern is not chordal (chordless cycle {0:?})")]
    NotChordal(Vec<usize>),
    #[error("partial matrix has a clique block that is not psd")]
    NotPartialPsd,
    #[error("entry ({0},{1}) does not lie on the pattern")]
    EntryOffPattern(usize, usize),
}

/// Simple undirected graph with canonically sorted edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Outcome of chordality recognition: a perfect elimination ordering, or a
/// witness chordless cycle of length at least 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal { elimination: Vec<usize> },
    NonChordal { cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "graph needs at least one vertex");
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ChordalError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete bipartite graph: parts {0..a} and {a..a+b}.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v).unwrap();
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), ChordalError> {
        if u == v {
            return Err(ChordalError::SelfLoop(u));
        }
        if u >= self.n {
            return Err(ChordalError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(ChordalError::VertexOutOfRange(v, self.n));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Sorted edge list; the canonical coordinate order for edge vectors.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Lexicographic BFS visit order, starting from vertex 0; ties broken
    /// by smallest vertex id so the order is deterministic.
    pub fn lex_bfs(&self) -> Vec<usize> {
        let n = self.n;
        let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for step in 0..n {
            let u = (0..n)
                .filter(|&v| !visited[v])
                .max_by(|&a, &b| labels[a].cmp(&labels[b]).then(b.cmp(&a)))
                .expect("unvisited vertex exists");
            visited[u] = true;
            order.push(u);
            for w in self.neighbors(u) {
                if !visited[w] {
                    labels[w].push(n - step); // decreasing tags keep labels lexicographic
                }
            }
        }
        order
    }

    /// Chordality test: lex-BFS produces a candidate perfect elimination
    /// ordering, which is then verified; on failure a chordless cycle is
    /// extracted as a witness.
    pub fn is_chordal(&self) -> Chordality {
        let visit = self.lex_bfs();
        let elimination: Vec<usize> = visit.into_iter().rev().collect();
        let mut pos = vec![0usize; self.n];
        for (i, &v) in elimination.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &v) in elimination.iter().enumerate() {
            let later: Vec<usize> = self
                .neighbors(v)
                .into_iter()
                .filter(|&w| pos[w] > i)
                .collect();
            if later.len() < 2 {
                continue;
            }
            let u = *later.iter().min_by_key(|&&w| pos[w]).unwrap();
            for &w in &later {
                if w != u && !self.has_edge(u, w) {
                    let cycle = self
                        .chordless_cycle_through(v, u, w)
                        .expect("failed verification implies a chordless cycle");
                    return Chordality::NonChordal { cycle };
                }
            }
        }
        Chordality::Chordal { elimination }
    }

    /// Shortest path from `u` to `w` avoiding all neighbors of `v` except
    /// `u`, `w`; closing it through `v` yields a chordless cycle.
    fn chordless_cycle_through(&self, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
        let nv: BTreeSet<usize> = self.neighbors(v).into_iter().collect();
        let blocked: Vec<bool> = (0..self.n)
            .map(|x| x == v || (nv.contains(&x) && x != u && x != w))
            .collect();
        let mut prev = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(u);
        let mut seen = vec![false; self.n];
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == w {
                let mut path = vec![w];
                let mut cur = w;
                while cur != u {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.push(v);
                path.reverse(); // v, u, ..., w
                return Some(path);
            }
            for y in self.neighbors(x) {
                if !seen[y] && !blocked[y] {
                    seen[y] = true;
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// All inclusion-maximal cliques, each sorted, the list sorted
    /// lexicographically. Chordal graphs go through the elimination
    /// ordering; everything else through Bron-Kerbosch (capped size).
    pub fn maximal_cliques(&self) -> Result<Vec<Vec<usize>>, ChordalError> {
        if self.n > MAX_CLIQUE_DIM {
            return Err(ChordalError::DimensionTooLarge(self.n));
        }
        let mut cliques: Vec<BTreeSet<usize>> = match self.is_chordal() {
            Chordality::Chordal { elimination } => {
                let mut pos = vec![0usize; self.n];
                for (i, &v) in elimination.iter().enumerate() {
                    pos[v] = i;
                }
                elimination
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let mut c: BTreeSet<usize> = self
                            .neighbors(v)
                            .into_iter()
                            .filter(|&w| pos[w] > i)
                            .collect();
                        c.insert(v);
                        c
                    })
                    .collect()
            }
            Chordality::NonChordal { .. } => {
                let mut out = Vec::new();
                let mut r = BTreeSet::new();
                let p: BTreeSet<usize> = (0..self.n).collect();
                let x = BTreeSet::new();
                self.bron_kerbosch(&mut r, p, x, &mut out);
                out
            }
        };
        // drop non-maximal candidates
        cliques.sort_by(|a, b| b.len().cmp(&a.len()));
        let mut maximal: Vec<BTreeSet<usize>> = Vec::new();
        for c in cliques {
            if !maximal.iter().any(|m| c.is_subset(m)) {
                maximal.push(c);
            }
        }
        let mut out: Vec<Vec<usize>> = maximal
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        out.sort();
        Ok(out)
    }

    fn bron_kerbosch(
        &self,
        r: &mut BTreeSet<usize>,
        p: BTreeSet<usize>,
        x: BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| self.neighbors(u).iter().filter(|w| p.contains(w)).count())
            .unwrap();
        let pivot_nbrs: BTreeSet<usize> = self.neighbors(pivot).into_iter().collect();
        let candidates: Vec<usize> = p.difference(&pivot_nbrs).copied().collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let nv: BTreeSet<usize> = self.neighbors(v).into_iter().collect();
            r.insert(v);
            self.bron_kerbosch(
                r,
                p.intersection(&nv).copied().collect(),
                x.intersection(&nv).copied().collect(),
                out,
            );
            r.remove(&v);
            p.remove(&v);
            x.insert(v);
        }
    }
}

/// Partial symmetric matrix: unit diagonal, one specified value per
/// pattern edge, everything else unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSymMatrix {
    dim: usize,
    pattern: Graph,
    values: BTreeMap<(usize, usize), f64>,
}

impl PartialSymMatrix {
    /// Builds from off-diagonal entries; the pattern is the set of listed
    /// pairs. Duplicate pairs are not rejected, the last value wins.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, f64)]) -> Result<Self, ChordalError> {
        let mut pattern = Graph::new(dim);
        let mut values = BTreeMap::new();
        for &(i, j, v) in entries {
            pattern.add_edge(i, j)?;
            values.insert((i.min(j), i.max(j)), v);
        }
        Ok(PartialSymMatrix {
            dim,
            pattern,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.values.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Specified value at (i,j): 1 on the diagonal, `None` off-pattern.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if i == j {
            return Some(1.0);
        }
        self.values.get(&(i.min(j), i.max(j))).copied()
    }

    fn clique_block(&self, clique: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(clique.len(), |a, b| {
            self.get(clique[a], clique[b])
                .expect("clique entries are specified by construction")
        })
    }

    /// True iff every maximal-clique block of the pattern is psd within
    /// `tol`. This is the partial-psd test; for a single-edge pattern it
    /// reduces to the box constraint |value| <= 1.
    pub fn is_partial_psd(&self, tol: f64) -> Result<bool, ChordalError> {
        for clique in self.pattern.maximal_cliques()? {
            if !self.clique_block(&clique).is_psd(tol) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Psd completion for chordal patterns. Specified entries are copied
    /// bit-exactly; each missing entry is filled with the
    /// determinant-maximizing value of its enclosing minimal completable
    /// submatrix, walking vertices in reverse elimination order.
    pub fn chordal_complete(&self, tol: f64) -> Result<SymMatrix, ChordalError> {
        let elimination = match self.pattern.is_chordal() {
            Chordality::Chordal { elimination } => elimination,
            Chordality::NonChordal { cycle } => return Err(ChordalError::NotChordal(cycle)),
        };
        if !self.is_partial_psd(tol)? {
            return Err(ChordalError::NotPartialPsd);
        }
        let n = self.dim;
        let mut pos = vec![0usize; n];
        for (i, &v) in elimination.iter().enumerate() {
            pos[v] = i;
        }
        let mut w = vec![vec![f64::NAN; n]; n];
        for i in 0..n {
            w[i][i] = 1.0;
        }
        for (i, j, v) in self.entries() {
            w[i][j] = v;
            w[j][i] = v;
        }
        // Vertices later in the elimination order form an already-completed
        // trailing block; filling row v against that block only needs the
        // separator C = later neighbors of v, which is a clique.
        for i in (0..n.saturating_sub(1)).rev() {
            let v = elimination[i];
            let sep: Vec<usize> = self
                .pattern
                .neighbors(v)
                .into_iter()
                .filter(|&u| pos[u] > i)
                .collect();
            let solver = SeparatorSolver::new(&w, &sep);
            for &u in elimination[i + 1..].iter() {
                if w[v][u].is_nan() {
                    let fill = solver.conditional_fill(&w, v, u);
                    w[v][u] = fill;
                    w[u][v] = fill;
                }
            }
        }
        Ok(SymMatrix::from_fn(n, |i, j| w[i][j]))
    }
}

/// Pseudo-inverse of a separator block, kept factored so several fills
/// against the same separator reuse one eigendecomposition.
struct SeparatorSolver {
    sep: Vec<usize>,
    inv_eigs: Vec<f64>,
    vecs: Vec<Vec<f64>>,
}

impl SeparatorSolver {
    fn new(w: &[Vec<f64>], sep: &[usize]) -> Self {
        let block = SymMatrix::from_fn(sep.len(), |a, b| w[sep[a]][sep[b]]);
        let (eigs, vecs) = if sep.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            block.eigen()
        };
        let cutoff = eigs.iter().fold(1.0_f64, |m, e| m.max(e.abs())) * 1e-12;
        let inv_eigs = eigs
            .iter()
            .map(|&e| if e > cutoff { 1.0 / e } else { 0.0 })
            .collect();
        SeparatorSolver {
            sep: sep.to_vec(),
            inv_eigs,
            vecs,
        }
    }

    /// b_v^T D^+ b_u over the separator: the determinant-maximizing fill.
    fn conditional_fill(&self, w: &[Vec<f64>], v: usize, u: usize) -> f64 {
        let k = self.sep.len();
        let mut fill = 0.0;
        for e in 0..k {
            let mut pv = 0.0;
            let mut pu = 0.0;
            for (a, &s) in self.sep.iter().enumerate() {
                pv += self.vecs[e][a] * w[v][s];
                pu += self.vecs[e][a] * w[u][s];
            }
            fill += self.inv_eigs[e] * pv * pu;
        }
        fill
    }
}

/// The 6-vertex split pattern: a clique on {0,1,2}, an independent set
/// {3,4,5}, and all nine cross edges.
pub fn split_pattern() -> Graph {
    let mut g = Graph::new(6);
    for i in 0..3 {
        for j in i + 1..3 {
            g.add_edge(i, j).unwrap();
        }
        for j in 3..6 {
            g.add_edge(i, j).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn triangle_is_chordal() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(g.is_chordal().is_chordal());
    }

    #[test]
    fn k33_is_not_chordal_with_witness() {
        let g = Graph::complete_bipartite(3, 3);
        match g.is_chordal() {
            Chordality::NonChordal { cycle } => {
                assert_eq!(cycle.len(), 4);
                for k in 0..cycle.len() {
                    assert!(g.has_edge(cycle[k], cycle[(k + 1) % cycle.len()]));
                }
                // chordless: non-consecutive pairs are non-adjacent
                assert!(!g.has_edge(cycle[0], cycle[2]));
                assert!(!g.has_edge(cycle[1], cycle[3]));
            }
            Chordality::Chordal { .. } => panic!("K33 must not be chordal"),
        }
    }

    #[test]
    fn square_is_not_chordal() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!g.is_chordal().is_chordal());
    }

    #[test]
    fn split_pattern_is_chordal_with_clique_tail() {
        let g = split_pattern();
        match g.is_chordal() {
            Chordality::Chordal { elimination } => {
                // the clique {0,1,2} is eliminated last
                let tail: BTreeSet<usize> = elimination[3..].iter().copied().collect();
                assert_eq!(tail, BTreeSet::from([0, 1, 2]));
            }
            Chordality::NonChordal { cycle } => panic!("split pattern chordal, got {cycle:?}"),
        }
    }

    #[test]
    fn split_pattern_cliques() {
        let g = split_pattern();
        let cliques = g.maximal_cliques().unwrap();
        assert_eq!(
            cliques,
            vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 2, 5]]
        );
    }

    #[test]
    fn small_clique_lists() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.maximal_cliques().unwrap(), vec![vec![0, 1, 2]]);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.maximal_cliques().unwrap(), vec![vec![0, 1], vec![1, 2]]);
        // non-chordal route: 4-cycle has its four edges as maximal cliques
        let square = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            square.maximal_cliques().unwrap(),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
    }

    #[test]
    fn partial_psd_single_edge_is_box() {
        for (value, expect) in [(0.5, true), (1.0, true), (-1.0, true), (1.1, false)] {
            let p = PartialSymMatrix::from_entries(2, &[(0, 1, value)]).unwrap();
            assert_eq!(p.is_partial_psd(1e-9).unwrap(), expect, "value {value}");
        }
    }

    #[test]
    fn partial_psd_split_pattern_cases() {
        // all specified entries 1: rank-one blocks
        let mut entries: Vec<(usize, usize, f64)> = vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)];
        for i in 0..3 {
            for j in 3..6 {
                entries.push((i, j, 1.0));
            }
        }
        let p = PartialSymMatrix::from_entries(6, &entries).unwrap();
        assert!(p.is_partial_psd(1e-9).unwrap());

        // alpha = 1, beta = 1, gamma = -1 breaks the {0,1,2} clique block
        let mut entries: Vec<(usize, usize, f64)> = vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, -1.0)];
        for i in 0..3 {
            for j in 3..6 {
                entries.push((i, j, 0.0));
            }
        }
        let p = PartialSymMatrix::from_entries(6, &entries).unwrap();
        assert!(!p.is_partial_psd(1e-9).unwrap());
    }

    #[test]
    fn completion_forced_fill() {
        let p = PartialSymMatrix::from_entries(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let m = p.chordal_complete(1e-9).unwrap();
        assert!((m.get(0, 2) - 1.0).abs() < 1e-12);
        let p = PartialSymMatrix::from_entries(3, &[(0, 1, 0.0), (1, 2, 0.0)]).unwrap();
        let m = p.chordal_complete(1e-9).unwrap();
        assert!(m.get(0, 2).abs() < 1e-12);
    }

    #[test]
    fn completion_rejects_non_chordal() {
        let square =
            PartialSymMatrix::from_entries(4, &[(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5), (0, 3, 0.5)])
                .unwrap();
        assert!(matches!(
            square.chordal_complete(1e-9),
            Err(ChordalError::NotChordal(_))
        ));
    }

    #[test]
    fn completion_rejects_non_psd() {
        let p = PartialSymMatrix::from_entries(2, &[(0, 1, 1.5)]).unwrap();
        assert_eq!(p.chordal_complete(1e-9), Err(ChordalError::NotPartialPsd));
    }

    fn random_chordal_pattern(rng: &mut StdRng, n: usize) -> Graph {
        // grow backwards: each vertex attaches to a clique of the suffix
        // graph, so 0..n is a perfect elimination ordering by construction
        let mut g = Graph::new(n);
        for v in (0..n.saturating_sub(1)).rev() {
            let mut candidates: Vec<usize> = (v + 1..n).collect();
            for i in (1..candidates.len()).rev() {
                let j = rng.gen_range(0..=i);
                candidates.swap(i, j);
            }
            let mut clique: Vec<usize> = Vec::new();
            for u in candidates {
                let compatible = clique.iter().all(|&w| g.has_edge(u, w));
                if compatible && (clique.is_empty() || rng.gen_bool(0.6)) {
                    clique.push(u);
                }
            }
            for &u in &clique {
                g.add_edge(v, u).unwrap();
            }
        }
        g
    }

    fn random_unit_vectors(rng: &mut StdRng, n: usize, d: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| loop {
                let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-3 {
                    return v.into_iter().map(|x| x / norm).collect();
                }
            })
            .collect()
    }

    #[test]
    fn completion_random_chordal_instances() {
        let mut rng = StdRng::seed_from_u64(21);
        for trial in 0..200 {
            let n = 3 + trial % 5; // up to 7 vertices
            let g = random_chordal_pattern(&mut rng, n);
            assert!(g.is_chordal().is_chordal());
            let d = 1 + trial % n;
            let vecs = random_unit_vectors(&mut rng, n, d);
            let entries: Vec<(usize, usize, f64)> = g
                .edge_list()
                .into_iter()
                .map(|(i, j)| {
                    let dot = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                    (i, j, dot)
                })
                .collect();
            let p = PartialSymMatrix::from_entries(n, &entries).unwrap();
            assert!(p.is_partial_psd(1e-9).unwrap());
            let m = p.chordal_complete(1e-9).unwrap();
            for (i, j, v) in p.entries() {
                assert_eq!(m.get(i, j), v, "specified entry ({i},{j}) must be exact");
            }
            assert!(
                m.is_psd(1e-9),
                "completion not psd: lambda_min = {}",
                m.min_eigenvalue()
            );
        }
    }

    #[test]
    fn monotone_partial_psd_under_feasible_fill() {
        // completing one missing entry of a partial-psd matrix so that the
        // result stays partial psd never breaks a previously-psd clique
        let mut rng = StdRng::seed_from_u64(22);
        let mut checked = 0;
        for trial in 0..300 {
            let n = 4 + trial % 3;
            let g = random_chordal_pattern(&mut rng, n);
            let missing: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !g.has_edge(i, j))
                .collect();
            if missing.is_empty() {
                continue;
            }
            let d = 1 + trial % n;
            let vecs = random_unit_vectors(&mut rng, n, d);
            let entries: Vec<(usize, usize, f64)> = g
                .edge_list()
                .into_iter()
                .map(|(i, j)| {
                    let dot = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                    (i, j, dot)
                })
                .collect();
            let p = PartialSymMatrix::from_entries(n, &entries).unwrap();
            assert!(p.is_partial_psd(1e-9).unwrap());
            let (i, j) = missing[rng.gen_range(0..missing.len())];
            // the true Gram value keeps everything partial psd
            let fill: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
            let mut extended = entries.clone();
            extended.push((i, j, fill));
            let q = PartialSymMatrix::from_entries(n, &extended).unwrap();
            assert!(q.is_partial_psd(1e-9).unwrap());
            checked += 1;
        }
        assert!(checked > 100);
    }

    #[test]
    fn lemma_style_completion_reproduces_specified_entries() {
        // a feasible split-pattern instance built from six unit vectors
        let mut rng = StdRng::seed_from_u64(23);
        let vecs = random_unit_vectors(&mut rng, 6, 6);
        let g = split_pattern();
        let entries: Vec<(usize, usize, f64)> = g
            .edge_list()
            .into_iter()
            .map(|(i, j)| {
                let dot = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                (i, j, dot)
            })
            .collect();
        let p = PartialSymMatrix::from_entries(6, &entries).unwrap();
        let m = p.chordal_complete(1e-9).unwrap();
        assert!(m.is_psd(1e-9));
        for (i, j, v) in p.entries() {
            assert_eq!(m.get(i, j), v);
        }
        let w = m.cholesky_gram_vectors(1e-9).unwrap();
        for (i, j, v) in p.entries() {
            let dot: f64 = w[i].iter().zip(&w[j]).map(|(a, b)| a * b).sum();
            assert!((dot - v).abs() < 1e-9);
        }
    }
}
