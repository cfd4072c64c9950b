//! Exact-rational polytope representations and conversions.
//!
//! H-form holds facet inequalities `a . x <= b` (plus affine-hull equations
//! when the polytope is lower-dimensional); V-form holds the vertex list.
//! Both directions of conversion run through one double-description cone
//! engine: vertices are the extreme rays of the homogenization, facets the
//! extreme rays of the polar-side cone.

mod cut;
mod dd;

pub use cut::{cut_polytope_vertices, metric_polytope_h, CutSpec, CutVariant};
pub use dd::cone_generators;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fme::{simplex_min, LinSystem, LpOutcome, Rat};

/// Enumeration caps: cut vertices double per edge endpoint, chordless-cycle
/// listing grows fast with the vertex count.
pub const MAX_CUT_EDGES: usize = 20;
pub const MAX_METRIC_VERTICES: usize = 10;

#[derive(Debug, Error, PartialEq)]
pub enum PolytopeError {
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Facet representation: inequalities `a . x <= b`, optional affine-hull
/// equations `a . x = b` flagged separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub ineqs: Vec<(Vec<Rat>, Rat)>,
    pub equations: Vec<(Vec<Rat>, Rat)>,
}

/// Vertex representation, canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
}

/// Either representation, for operations that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum Polytope {
    H(HPolytope),
    V(VPolytope),
}

/// Scales a row to integer entries with gcd one, preserving direction.
fn canonical_row(coeffs: &mut Vec<Rat>, rhs: &mut Rat) {
    let mut denom_lcm = rhs.denom().clone();
    for c in coeffs.iter() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let scale = Rat::new(denom_lcm, 1.into());
    let mut numer_gcd = (rhs.clone() * &scale).numer().clone();
    for c in coeffs.iter() {
        numer_gcd = numer_gcd.gcd((c * &scale).numer());
    }
    if numer_gcd.is_zero() {
        return;
    }
    let factor = scale / Rat::new(numer_gcd, 1.into());
    for c in coeffs.iter_mut() {
        *c *= &factor;
    }
    *rhs *= &factor;
}

impl HPolytope {
    pub fn new(dim: usize, ineqs: Vec<(Vec<Rat>, Rat)>) -> Self {
        HPolytope {
            dim,
            ineqs,
            equations: Vec::new(),
        }
        .canonical()
    }

    /// Canonical form: scaled rows, trivial inequalities dropped, sorted,
    /// duplicates removed. Equations additionally get a sign convention
    /// (first nonzero coefficient positive).
    pub fn canonical(mut self) -> Self {
        let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (mut coeffs, mut rhs) in self.ineqs {
            assert_eq!(coeffs.len(), self.dim);
            if coeffs.iter().all(Zero::is_zero) {
                if rhs.is_negative() {
                    // 0 <= negative: encode emptiness with a contradictory pair
                    let mut e1 = vec![Rat::zero(); self.dim];
                    e1[0] = Rat::one();
                    ineqs.push((e1.clone(), Rat::zero()));
                    ineqs.push((e1.into_iter().map(|x| -x).collect(), -Rat::one()));
                }
                continue;
            }
            canonical_row(&mut coeffs, &mut rhs);
            ineqs.push((coeffs, rhs));
        }
        ineqs.sort();
        ineqs.dedup();
        self.ineqs = ineqs;
        let mut eqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (mut coeffs, mut rhs) in self.equations {
            if coeffs.iter().all(Zero::is_zero) {
                continue;
            }
            canonical_row(&mut coeffs, &mut rhs);
            if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    for c in coeffs.iter_mut() {
                        *c = -c.clone();
                    }
                    rhs = -rhs;
                }
            }
            eqs.push((coeffs, rhs));
        }
        eqs.sort();
        eqs.dedup();
        self.equations = eqs;
        self
    }

    /// Reads a linear system as a polytope over its variable order; the
    /// coordinates are the pi-unit values of the variables.
    pub fn from_linsystem(system: &LinSystem) -> Self {
        let dim = system.vars.len();
        let ineqs = system
            .ineqs
            .iter()
            .map(|q| {
                let coeffs: Vec<Rat> = system.vars.iter().map(|v| q.coeff(v)).collect();
                (coeffs, q.rhs.clone())
            })
            .collect();
        HPolytope::new(dim, ineqs)
    }

    pub fn satisfied_at(&self, point: &[Rat]) -> bool {
        self.ineqs.iter().all(|(a, b)| {
            a.iter().zip(point).map(|(x, y)| x * y).sum::<Rat>() <= *b
        }) && self.equations.iter().all(|(a, b)| {
            a.iter().zip(point).map(|(x, y)| x * y).sum::<Rat>() == *b
        })
    }
}

impl VPolytope {
    pub fn new(dim: usize, vertices: Vec<Vec<Rat>>) -> Self {
        let mut vertices = vertices;
        for v in &vertices {
            assert_eq!(v.len(), dim);
        }
        vertices.sort();
        vertices.dedup();
        VPolytope { dim, vertices }
    }
}

/// Exact vertex enumeration by double description on the homogenization.
pub fn h_to_v(p: &HPolytope) -> Result<VPolytope, PolytopeError> {
    let p = p.clone().canonical();
    let d = p.dim;
    let mut halfspaces: Vec<Vec<Rat>> = Vec::new();
    // t >= 0 first, then equations (two sides), then the sorted inequalities
    let mut t_row = vec![Rat::zero(); d + 1];
    t_row[d] = Rat::one();
    halfspaces.push(t_row);
    for (a, b) in &p.equations {
        let mut row: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
        row.push(b.clone());
        halfspaces.push(row.clone());
        halfspaces.push(row.into_iter().map(|x| -x).collect());
    }
    for (a, b) in &p.ineqs {
        let mut row: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
        row.push(b.clone());
        halfspaces.push(row);
    }
    let cone = cone_generators(d + 1, &halfspaces);
    let mut vertices = Vec::new();
    let mut recession = false;
    for ray in &cone.rays {
        let t = &ray[d];
        if t.is_zero() {
            recession = true;
        } else {
            debug_assert!(t.is_positive());
            vertices.push(ray[..d].iter().map(|x| x / t).collect::<Vec<Rat>>());
        }
    }
    if vertices.is_empty() {
        return Err(PolytopeError::Empty);
    }
    if recession || !cone.lineality.is_empty() {
        return Err(PolytopeError::Unbounded);
    }
    Ok(VPolytope::new(d, vertices))
}

/// Exact facet enumeration of the convex hull. If the hull is not
/// full-dimensional the facets are given within the hull and the hull
/// equations are reported separately.
pub fn v_to_h(p: &VPolytope) -> Result<HPolytope, PolytopeError> {
    if p.vertices.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let d = p.dim;
    // polar-side cone over (a, b): v . a + b >= 0 for every vertex v
    let halfspaces: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| {
            let mut row = v.clone();
            row.push(Rat::one());
            row
        })
        .collect();
    let cone = cone_generators(d + 1, &halfspaces);
    let mut ineqs = Vec::new();
    let mut trivial_rays = 0usize;
    for (ray, tight) in cone.rays.iter().zip(&cone.ray_tight) {
        if tight.iter().all(|&w| w == 0) {
            // the far inequality 0 . x <= 1; never a facet
            trivial_rays += 1;
            continue;
        }
        let coeffs: Vec<Rat> = ray[..d].iter().map(|x| -x.clone()).collect();
        ineqs.push((coeffs, ray[d].clone()));
    }
    debug_assert!(trivial_rays <= 1);
    let equations = cone
        .lineality
        .iter()
        .map(|l| (l[..d].to_vec(), -l[d].clone()))
        .collect();
    let mut h = HPolytope {
        dim: d,
        ineqs,
        equations,
    };
    h.equations = reduce_equations(d, std::mem::take(&mut h.equations));
    Ok(h.canonical())
}

/// Gaussian reduction of equation rows to a canonical echelon basis.
fn reduce_equations(dim: usize, eqs: Vec<(Vec<Rat>, Rat)>) -> Vec<(Vec<Rat>, Rat)> {
    let mut rows: Vec<Vec<Rat>> = eqs
        .into_iter()
        .map(|(mut a, b)| {
            a.push(b);
            a
        })
        .collect();
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for col in 0..dim {
        let pivot = rows.iter().position(|r| !r[col].is_zero());
        let Some(pi) = pivot else { continue };
        let mut prow = rows.remove(pi);
        let lead = prow[col].clone();
        for x in prow.iter_mut() {
            *x /= &lead;
        }
        for r in rows.iter_mut() {
            if !r[col].is_zero() {
                let c = r[col].clone();
                for (x, y) in r.iter_mut().zip(&prow) {
                    *x -= &c * y;
                }
            }
        }
        for r in out.iter_mut() {
            if !r[col].is_zero() {
                let c = r[col].clone();
                for (x, y) in r.iter_mut().zip(&prow) {
                    *x -= &c * y;
                }
            }
        }
        out.push(prow);
    }
    out.into_iter()
        .map(|mut r| {
            let b = r.pop().unwrap();
            (r, b)
        })
        .collect()
}

/// Canonical vertex list of either representation. V-form inputs get
/// non-extreme points pruned by an exact LP so redundant listings compare
/// equal to their hulls.
pub fn canonical_vertices(p: &Polytope) -> Result<VPolytope, PolytopeError> {
    match p {
        Polytope::H(h) => h_to_v(h),
        Polytope::V(v) => {
            if v.vertices.is_empty() {
                return Err(PolytopeError::Empty);
            }
            let keep: Vec<Vec<Rat>> = v
                .vertices
                .iter()
                .enumerate()
                .filter(|(i, point)| !in_hull_of_others(v, *i, point))
                .map(|(_, point)| point.clone())
                .collect();
            Ok(VPolytope::new(v.dim, keep))
        }
    }
}

/// LP test: is vertex `i` a convex combination of the others?
fn in_hull_of_others(v: &VPolytope, i: usize, point: &[Rat]) -> bool {
    let others: Vec<&Vec<Rat>> = v
        .vertices
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| p)
        .collect();
    if others.is_empty() {
        return false;
    }
    let d = v.dim;
    // rows: d coordinate matches plus the convexity row
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        a.push(others.iter().map(|p| p[coord].clone()).collect());
    }
    a.push(vec![Rat::one(); others.len()]);
    let mut b: Vec<Rat> = point.to_vec();
    b.push(Rat::one());
    let cost = vec![Rat::zero(); others.len()];
    matches!(simplex_min(&a, &b, &cost), LpOutcome::Optimal { .. })
}

/// Exact equality of solution sets via canonical vertex comparison.
pub fn polytopes_equal(p1: &Polytope, p2: &Polytope) -> Result<bool, PolytopeError> {
    let dim1 = match p1 {
        Polytope::H(h) => h.dim,
        Polytope::V(v) => v.dim,
    };
    let dim2 = match p2 {
        Polytope::H(h) => h.dim,
        Polytope::V(v) => v.dim,
    };
    if dim1 != dim2 {
        return Err(PolytopeError::DimensionMismatch(dim1, dim2));
    }
    Ok(canonical_vertices(p1)? == canonical_vertices(p2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fme::{rat, rat_int};

    fn r(n: i64) -> Rat {
        rat_int(n)
    }

    pub(crate) fn unit_square() -> HPolytope {
        HPolytope::new(
            2,
            vec![
                (vec![r(-1), r(0)], r(0)),
                (vec![r(1), r(0)], r(1)),
                (vec![r(0), r(-1)], r(0)),
                (vec![r(0), r(1)], r(1)),
            ],
        )
    }

    #[test]
    fn square_has_four_vertices() {
        let v = h_to_v(&unit_square()).unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert_eq!(
            v.vertices,
            vec![
                vec![r(0), r(0)],
                vec![r(0), r(1)],
                vec![r(1), r(0)],
                vec![r(1), r(1)],
            ]
        );
    }

    #[test]
    fn simplex_has_three_vertices() {
        let h = HPolytope::new(
            2,
            vec![
                (vec![r(-1), r(0)], r(0)),
                (vec![r(0), r(-1)], r(0)),
                (vec![r(1), r(1)], r(1)),
            ],
        );
        let v = h_to_v(&h).unwrap();
        assert_eq!(v.vertices.len(), 3);
    }

    #[test]
    fn unbounded_and_empty_are_detected() {
        let strip = HPolytope::new(2, vec![(vec![r(1), r(0)], r(1)), (vec![r(-1), r(0)], r(0))]);
        assert_eq!(h_to_v(&strip), Err(PolytopeError::Unbounded));
        let empty = HPolytope::new(
            1,
            vec![(vec![r(1)], r(0)), (vec![r(-1)], r(-1))],
        );
        assert_eq!(h_to_v(&empty), Err(PolytopeError::Empty));
    }

    #[test]
    fn square_corners_give_four_facets() {
        let v = VPolytope::new(
            2,
            vec![
                vec![r(0), r(0)],
                vec![r(0), r(1)],
                vec![r(1), r(0)],
                vec![r(1), r(1)],
            ],
        );
        let h = v_to_h(&v).unwrap();
        assert_eq!(h.ineqs.len(), 4);
        assert!(h.equations.is_empty());
        assert_eq!(h, unit_square());
    }

    #[test]
    fn single_vertex_gives_equations_only() {
        let v = VPolytope::new(3, vec![vec![r(1), r(2), r(3)]]);
        let h = v_to_h(&v).unwrap();
        assert!(h.ineqs.is_empty());
        assert_eq!(h.equations.len(), 3);
        assert!(h.satisfied_at(&[r(1), r(2), r(3)]));
        assert!(!h.satisfied_at(&[r(1), r(2), r(4)]));
    }

    #[test]
    fn segment_gets_hull_equation() {
        let v = VPolytope::new(2, vec![vec![r(0), r(0)], vec![r(1), r(0)]]);
        let h = v_to_h(&v).unwrap();
        assert_eq!(h.equations, vec![(vec![r(0), r(1)], r(0))]);
        assert_eq!(h.ineqs.len(), 2);
    }

    #[test]
    fn equality_ignores_redundant_inequalities() {
        let mut redundant = unit_square();
        redundant.ineqs.push((vec![r(1), r(1)], r(5)));
        let redundant = redundant.canonical();
        assert!(polytopes_equal(
            &Polytope::H(unit_square()),
            &Polytope::H(redundant)
        )
        .unwrap());
        let simplex = HPolytope::new(
            2,
            vec![
                (vec![r(-1), r(0)], r(0)),
                (vec![r(0), r(-1)], r(0)),
                (vec![r(1), r(1)], r(1)),
            ],
        );
        assert!(!polytopes_equal(&Polytope::H(unit_square()), &Polytope::H(simplex)).unwrap());
    }

    #[test]
    fn redundant_vertex_listings_compare_equal() {
        let square_plus_center = VPolytope::new(
            2,
            vec![
                vec![r(0), r(0)],
                vec![r(0), r(1)],
                vec![r(1), r(0)],
                vec![r(1), r(1)],
                vec![rat(1, 2), rat(1, 2)],
            ],
        );
        assert!(polytopes_equal(
            &Polytope::V(square_plus_center),
            &Polytope::H(unit_square())
        )
        .unwrap());
    }

    #[test]
    fn roundtrip_preserves_solution_set() {
        let h = HPolytope::new(
            3,
            vec![
                (vec![r(-1), r(0), r(0)], r(0)),
                (vec![r(0), r(-1), r(0)], r(0)),
                (vec![r(0), r(0), r(-1)], r(0)),
                (vec![r(1), r(1), r(1)], r(2)),
                (vec![r(1), r(0), r(0)], r(1)),
            ],
        );
        let v = h_to_v(&h).unwrap();
        let h2 = v_to_h(&v).unwrap();
        let v2 = h_to_v(&h2).unwrap();
        assert_eq!(v, v2);
    }
}
