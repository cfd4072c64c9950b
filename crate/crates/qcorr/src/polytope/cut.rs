//! Cut polytope vertices and the cycle-inequality metric polytope.

use num_traits::One;

use crate::chordal::Graph;
use crate::fme::{rat_int, Rat};

use super::{HPolytope, PolytopeError, VPolytope, MAX_CUT_EDGES, MAX_METRIC_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutVariant {
    /// Coordinates are cut indicators in {0, 1}.
    ZeroOne,
    /// Coordinates are 1 - 2 * indicator, in {-1, +1}.
    PlusMinusOne,
}

#[derive(Debug, Clone)]
pub struct CutSpec {
    pub graph: Graph,
    pub variant: CutVariant,
}

/// One coordinate per edge in canonical (sorted) edge order; cuts are
/// enumerated over vertex subsets avoiding vertex 0, which picks one
/// representative per complementary pair.
pub fn cut_polytope_vertices(spec: &CutSpec) -> Result<VPolytope, PolytopeError> {
    let edges = spec.graph.edge_list();
    if edges.len() > MAX_CUT_EDGES {
        return Err(PolytopeError::TooLarge(format!(
            "{} edges exceed the cut enumeration cap of {MAX_CUT_EDGES}",
            edges.len()
        )));
    }
    let n = spec.graph.vertex_count();
    let mut vertices = Vec::with_capacity(1 << (n - 1));
    for subset in 0u32..(1 << (n - 1)) {
        let in_cut = |v: usize| v != 0 && (subset >> (v - 1)) & 1 == 1;
        let point: Vec<Rat> = edges
            .iter()
            .map(|&(u, v)| {
                let crossed = in_cut(u) != in_cut(v);
                match spec.variant {
                    CutVariant::ZeroOne => rat_int(crossed as i64),
                    CutVariant::PlusMinusOne => rat_int(1 - 2 * (crossed as i64)),
                }
            })
            .collect();
        vertices.push(point);
    }
    Ok(VPolytope::new(edges.len(), vertices))
}

/// H-representation from cycle inequalities `x(F) - x(C \ F) <= |F| - 1`
/// over every chordless cycle C and odd F, plus the box bounds.
///
/// Restricting to chordless cycles drops only redundant rows: the cycle
/// inequality of a chorded cycle is implied by those of its two halves,
/// so an all-cycles variant would describe the same set.
pub fn metric_polytope_h(graph: &Graph) -> Result<HPolytope, PolytopeError> {
    if graph.vertex_count() > MAX_METRIC_VERTICES {
        return Err(PolytopeError::TooLarge(format!(
            "{} vertices exceed the metric enumeration cap of {MAX_METRIC_VERTICES}",
            graph.vertex_count()
        )));
    }
    let edges = graph.edge_list();
    let edge_index = |u: usize, v: usize| -> usize {
        let key = (u.min(v), u.max(v));
        edges.binary_search(&key).expect("cycle edge is a graph edge")
    };
    let dim = edges.len();
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for e in 0..dim {
        let mut lo = vec![rat_int(0); dim];
        lo[e] = rat_int(-1);
        ineqs.push((lo, rat_int(0)));
        let mut hi = vec![rat_int(0); dim];
        hi[e] = Rat::one();
        ineqs.push((hi, rat_int(1)));
    }
    for cycle in chordless_cycles(graph) {
        let cycle_edges: Vec<usize> = (0..cycle.len())
            .map(|i| edge_index(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect();
        let l = cycle_edges.len();
        for mask in 0u32..(1 << l) {
            let f_size = mask.count_ones() as usize;
            if f_size % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![rat_int(0); dim];
            for (i, &e) in cycle_edges.iter().enumerate() {
                coeffs[e] = if (mask >> i) & 1 == 1 {
                    Rat::one()
                } else {
                    rat_int(-1)
                };
            }
            ineqs.push((coeffs, rat_int(f_size as i64 - 1)));
        }
    }
    Ok(HPolytope::new(dim, ineqs))
}

/// Every chordless cycle (length >= 3), each listed once: rooted at its
/// smallest vertex, second vertex smaller than the closing vertex.
pub fn chordless_cycles(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let mut cycles = Vec::new();
    let mut path = Vec::new();
    for root in 0..n {
        for second in graph.neighbors(root) {
            if second < root {
                continue;
            }
            path.clear();
            path.push(root);
            path.push(second);
            extend_chordless(graph, &mut path, &mut cycles);
        }
    }
    cycles.sort();
    cycles.dedup();
    cycles
}

fn extend_chordless(graph: &Graph, path: &mut Vec<usize>, cycles: &mut Vec<Vec<usize>>) {
    let root = path[0];
    let last = *path.last().unwrap();
    for next in graph.neighbors(last) {
        if next <= root || path.contains(&next) {
            continue;
        }
        // interior vertices must stay non-adjacent to keep the path induced
        let interior = &path[1..path.len() - 1];
        if interior.iter().any(|&p| graph.has_edge(p, next)) {
            continue;
        }
        if graph.has_edge(next, root) {
            if path.len() >= 2 && path[1] < next {
                let mut cycle = path.clone();
                cycle.push(next);
                cycles.push(cycle);
            }
            // a longer cycle through `next` would have the chord to the root
            continue;
        }
        path.push(next);
        extend_chordless(graph, path, cycles);
        path.pop();
    }
}
