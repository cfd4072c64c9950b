//! Exact double-description over the rationals.
//!
//! Computes generators (extreme rays plus a lineality basis) of the cone
//! `{ z : f . z >= 0 for every halfspace f }` by incremental insertion.
//! While the lineality space still meets a new hyperplane, the cut is
//! absorbed by converting one line into a ray; afterwards the classical
//! positive/negative ray pairing with the combinatorial adjacency test
//! takes over. Tight sets of newborn rays are recomputed exactly, so
//! accidental incidences cannot corrupt adjacency decisions.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::fme::Rat;

#[derive(Debug, Clone)]
pub struct DdCone {
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
    /// Tight constraint indices per ray, aligned with `rays`.
    pub ray_tight: Vec<Vec<u64>>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales to integer entries with gcd one; the direction is preserved.
fn normalize_scale(v: &mut [Rat]) {
    let mut denom_lcm = num_bigint::BigInt::one();
    for x in v.iter() {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let scale = Rat::new(denom_lcm, 1.into());
    let mut numer_gcd = num_bigint::BigInt::zero();
    for x in v.iter() {
        numer_gcd = numer_gcd.gcd((x * &scale).numer());
    }
    if numer_gcd.is_zero() {
        return;
    }
    let factor = scale / Rat::new(numer_gcd, 1.into());
    for x in v.iter_mut() {
        *x *= &factor;
    }
}

/// Lines are sign-free: first nonzero entry made positive.
fn normalize_line(v: &mut [Rat]) {
    normalize_scale(v);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

struct BitSet;

impl BitSet {
    fn new(words: usize) -> Vec<u64> {
        vec![0u64; words]
    }

    fn set(bits: &mut [u64], i: usize) {
        bits[i / 64] |= 1 << (i % 64);
    }

    fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x & y).collect()
    }

    fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
        sub.iter().zip(sup).all(|(s, t)| s & !t == 0)
    }
}

struct Ray {
    v: Vec<Rat>,
    tight: Vec<u64>,
}

/// Generators of the intersection cone. Insertion follows the order of
/// `halfspaces`, which therefore fixes the output ray order before the
/// final canonical sort done by the callers.
pub fn cone_generators(dim: usize, halfspaces: &[Vec<Rat>]) -> DdCone {
    let m = halfspaces.len();
    let words = m.div_ceil(64);
    let mut lines: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, f) in halfspaces.iter().enumerate() {
        debug_assert_eq!(f.len(), dim);
        let cut_line = lines.iter().position(|l| !dot(l, f).is_zero());
        if let Some(i0) = cut_line {
            // absorb: every other generator is shifted into the hyperplane,
            // the cut line itself becomes a ray on the positive side
            let mut l0 = lines.remove(i0);
            if dot(&l0, f).is_negative() {
                for x in l0.iter_mut() {
                    *x = -x.clone();
                }
            }
            let s0 = dot(&l0, f);
            for l in lines.iter_mut() {
                let s = dot(l, f);
                if !s.is_zero() {
                    let c = s / &s0;
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x -= &c * y;
                    }
                    normalize_line(l);
                }
            }
            for r in rays.iter_mut() {
                let s = dot(&r.v, f);
                if !s.is_zero() {
                    let c = s / &s0;
                    for (x, y) in r.v.iter_mut().zip(&l0) {
                        *x -= &c * y;
                    }
                    normalize_scale(&mut r.v);
                }
                BitSet::set(&mut r.tight, k);
            }
            let mut tight = BitSet::new(words);
            for i in 0..k {
                BitSet::set(&mut tight, i);
            }
            normalize_scale(&mut l0);
            rays.push(Ray { v: l0, tight });
            continue;
        }

        // the hyperplane contains the lineality space: classic ray split
        let signs: Vec<Rat> = rays.iter().map(|r| dot(&r.v, f)).collect();
        let negative: Vec<usize> = (0..rays.len())
            .filter(|&i| signs[i].is_negative())
            .collect();
        if negative.is_empty() {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    BitSet::set(&mut r.tight, k);
                }
            }
            continue;
        }
        let positive: Vec<usize> = (0..rays.len())
            .filter(|&i| signs[i].is_positive())
            .collect();
        let mut newborn: Vec<Ray> = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = BitSet::and(&rays[p].tight, &rays[n].tight);
                let adjacent = !rays.iter().enumerate().any(|(w, rw)| {
                    w != p && w != n && BitSet::is_subset(&common, &rw.tight)
                });
                if !adjacent {
                    continue;
                }
                // s_p * n - s_n * p lands exactly on the hyperplane
                let v: Vec<Rat> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(nv, pv)| &signs[p] * nv - &signs[n] * pv)
                    .collect();
                let mut v = v;
                normalize_scale(&mut v);
                // exact tight set over everything inserted so far
                let mut tight = BitSet::new(words);
                for (i, g) in halfspaces.iter().take(k + 1).enumerate() {
                    if dot(&v, g).is_zero() {
                        BitSet::set(&mut tight, i);
                    }
                }
                newborn.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if signs[i].is_negative() {
                continue;
            }
            let mut r = r;
            if signs[i].is_zero() {
                BitSet::set(&mut r.tight, k);
            }
            kept.push(r);
        }
        kept.extend(newborn);
        rays = kept;
    }

    DdCone {
        ray_tight: rays.iter().map(|r| r.tight.clone()).collect(),
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality: lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fme::rat_int;

    fn r(n: i64) -> Rat {
        rat_int(n)
    }

    #[test]
    fn quadrant_cone() {
        // {x >= 0, y >= 0}: rays e1, e2, no lineality
        let cone = cone_generators(2, &[vec![r(1), r(0)], vec![r(0), r(1)]]);
        assert!(cone.lineality.is_empty());
        let mut rays = cone.rays;
        rays.sort();
        assert_eq!(rays, vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
    }

    #[test]
    fn halfspace_keeps_lineality() {
        // {x >= 0} in 3d: one ray, two lines
        let cone = cone_generators(3, &[vec![r(1), r(0), r(0)]]);
        assert_eq!(cone.rays.len(), 1);
        assert_eq!(cone.lineality.len(), 2);
        assert_eq!(cone.rays[0], vec![r(1), r(0), r(0)]);
    }

    #[test]
    fn opposite_halfspaces_leave_a_plane() {
        let cone = cone_generators(
            3,
            &[vec![r(1), r(0), r(0)], vec![r(-1), r(0), r(0)]],
        );
        assert!(cone.rays.is_empty());
        assert_eq!(cone.lineality.len(), 2);
    }

    #[test]
    fn square_homogenization() {
        // 0 <= x <= 1, 0 <= y <= 1 homogenized: rays are the 4 corners at t=1
        let hs = vec![
            vec![r(0), r(0), r(1)],  // t >= 0
            vec![r(1), r(0), r(0)],  // x >= 0
            vec![r(-1), r(0), r(1)], // x <= t
            vec![r(0), r(1), r(0)],  // y >= 0
            vec![r(0), r(-1), r(1)], // y <= t
        ];
        let cone = cone_generators(3, &hs);
        assert!(cone.lineality.is_empty());
        let mut rays = cone.rays;
        rays.sort();
        assert_eq!(
            rays,
            vec![
                vec![r(0), r(0), r(1)],
                vec![r(0), r(1), r(1)],
                vec![r(1), r(0), r(1)],
                vec![r(1), r(1), r(1)],
            ]
        );
    }

    #[test]
    fn infeasible_intersection_has_no_generators() {
        // x >= t, x <= 0, t >= 1*t ... simplest: x >= t, -x >= 0, t >= 0
        let hs = vec![
            vec![r(0), r(1)],  // t >= 0
            vec![r(1), r(-1)], // x >= t
            vec![r(-1), r(0)], // x <= 0
        ];
        let cone = cone_generators(2, &hs);
        assert!(cone.lineality.is_empty());
        // only the ray (x, t) = (-1, 0) direction survives: no t > 0 ray
        assert!(cone.rays.iter().all(|ray| ray[1].is_zero()));
    }
}
