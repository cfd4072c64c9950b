//! Existence search for quantum points saturating an inequality family.
//!
//! Points are parametrized by six unit vectors in R^6, so every iterate is
//! a quantum correlation by construction. A shrinking-radius random hill
//! climb drives the smallest |residual| over the family's instances to
//! zero; the family residuals are piecewise smooth in the vectors, which
//! this kind of direct search handles at the accuracy needed here.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    to_angles, tlm_residual, triple_term, AngleMatrix, Correlation, Family, TRIPLE_ROWS,
};

#[derive(Debug, Clone)]
pub struct SaturatedPoint {
    pub correlation: Correlation,
    /// Instance indices of the best residual, per the family's convention.
    pub indices: Vec<usize>,
    pub residual: f64,
}

fn correlation_of(vectors: &[Vec<f64>]) -> Correlation {
    let c: Vec<Vec<f64>> = (0..3)
        .map(|x| {
            (0..3)
                .map(|y| {
                    let dot: f64 = vectors[x]
                        .iter()
                        .zip(&vectors[3 + y])
                        .map(|(a, b)| a * b)
                        .sum();
                    dot.clamp(-1.0, 1.0)
                })
                .collect()
        })
        .collect();
    Correlation::new(c).expect("unit vectors stay in the box")
}

/// Smallest |residual| over the family's instances, with its indices.
fn best_instance(family: Family, angles: &AngleMatrix) -> (f64, Vec<usize>) {
    let mut best = (f64::INFINITY, Vec::new());
    let mut consider = |value: f64, indices: Vec<usize>| {
        if value.abs() < best.0 {
            best = (value.abs(), indices);
        }
    };
    match family {
        Family::Box => {
            for x in 0..3 {
                for y in 0..3 {
                    let a = angles.radians(x, y);
                    consider(a.min(PI - a), vec![x, y]);
                }
            }
        }
        Family::Tlm => {
            for x in 0..3 {
                for xp in x + 1..3 {
                    for y in 0..3 {
                        for yp in 0..3 {
                            if y == yp {
                                continue;
                            }
                            consider(tlm_residual(angles, x, xp, y, yp), vec![x, xp, y, yp]);
                        }
                    }
                }
            }
        }
        _ => {
            let kinds = family.triple_kinds().expect("triple family");
            for y in 0..3 {
                for yp in 0..3 {
                    for yb in 0..3 {
                        if y == yp && yp == yb {
                            continue;
                        }
                        let total: f64 = (0..3)
                            .map(|k| triple_term(angles, kinds[k], TRIPLE_ROWS[k], [y, yp, yb][k]))
                            .sum();
                        consider(2.0 * PI - total, vec![y, yp, yb]);
                    }
                }
            }
        }
    }
    best
}

fn objective(family: Family, vectors: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let corr = correlation_of(vectors);
    best_instance(family, &to_angles(&corr))
}

/// Searches for a quantum point with |residual| <= `target` in some
/// instance of the family, restarting from fresh samples until the budget
/// runs out. Deterministic for a fixed seed.
pub fn saturate_family(
    family: Family,
    seed: u64,
    max_restarts: usize,
    target: f64,
) -> Option<SaturatedPoint> {
    for restart in 0..max_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64));
        let mut vectors: Vec<Vec<f64>> = (0..6)
            .map(|_| random_unit(&mut rng, 6))
            .collect();
        let (mut best, _) = objective(family, &vectors);
        let mut radius = 0.5;
        let mut stall = 0;
        while radius > 1e-11 && best > target * 0.5 {
            let idx = rng.gen_range(0..6);
            let mut cand = vectors.clone();
            for x in cand[idx].iter_mut() {
                *x += radius * (rng.gen_range(-1.0..1.0f64));
            }
            let norm: f64 = cand[idx].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-9 {
                continue;
            }
            for x in cand[idx].iter_mut() {
                *x /= norm;
            }
            let (value, _) = objective(family, &cand);
            if value < best {
                best = value;
                vectors = cand;
                stall = 0;
            } else {
                stall += 1;
                if stall >= 40 {
                    radius *= 0.6;
                    stall = 0;
                }
            }
        }
        if best <= target {
            let corr = correlation_of(&vectors);
            let (residual_abs, indices) = best_instance(family, &to_angles(&corr));
            debug_assert!(residual_abs <= target);
            return Some(SaturatedPoint {
                correlation: corr,
                indices,
                residual: residual_abs,
            });
        }
    }
    None
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_family_saturates_quickly() {
        let found = saturate_family(Family::Box, 400, 8, 1e-6).expect("box saturation");
        assert!(found.residual <= 1e-6);
    }

    #[test]
    fn tlm_family_saturates() {
        let found = saturate_family(Family::Tlm, 401, 8, 1e-6).expect("tlm saturation");
        assert!(found.residual <= 1e-6);
    }
}
