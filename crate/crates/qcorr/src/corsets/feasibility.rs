//! Cor(3,3) membership as concave maximization.
//!
//! Feasibility of a 3x3 correlation reduces to finding (alpha, beta,
//! gamma) in the cube making the three 4x4 blocks
//! `[[1,a,b,c1y],[a,1,g,c2y],[b,g,1,c3y],[c1y,c2y,c3y,1]]` psd at once.
//! The margin `f = min_y lambda_min(X_y)` is concave (the blocks are
//! affine in the parameters), so a coarse grid seed, projected
//! supergradient ascent with adaptive steps, and an ellipsoid polish
//! certify the maximum to well below the membership tolerance. On
//! success the split pattern is completed to a full 6x6 Gram matrix and
//! factored into six unit vectors.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chordal::PartialSymMatrix;
use crate::numkernel::SymMatrix;

use super::{Correlation, CorsetsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Member,
    Boundary,
    Nonmember,
}

/// Completion witness: the adjoined parameters, the achieved margin, the
/// completed Gram matrix, and unit vectors reproducing the correlators.
#[derive(Debug, Clone)]
pub struct Cor33Witness {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub margin: f64,
    pub gram: SymMatrix,
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct Cor33Outcome {
    pub status: FeasibilityStatus,
    pub margin: f64,
    pub witness: Option<Cor33Witness>,
}

fn block(corr: &Correlation, y: usize, p: [f64; 3]) -> SymMatrix {
    let mut x = SymMatrix::identity(4);
    x.set(0, 1, p[0]);
    x.set(0, 2, p[1]);
    x.set(1, 2, p[2]);
    for row in 0..3 {
        x.set(row, 3, corr.get(row, y));
    }
    x
}

/// `f(p) = min_y lambda_min(X_y(p))`.
fn margin_at(corr: &Correlation, p: [f64; 3]) -> f64 {
    (0..3)
        .map(|y| block(corr, y, p).min_eigenvalue())
        .fold(f64::INFINITY, f64::min)
}

/// Supergradient of the margin from the eigenvector of the active block:
/// entries of the outer product at the (alpha, beta, gamma) positions.
fn supergradient(corr: &Correlation, p: [f64; 3]) -> [f64; 3] {
    let mut worst = f64::INFINITY;
    let mut grad = [0.0; 3];
    for y in 0..3 {
        let (eigs, vecs) = block(corr, y, p).eigen();
        if eigs[0] < worst {
            worst = eigs[0];
            let v = &vecs[0];
            grad = [2.0 * v[0] * v[1], 2.0 * v[0] * v[2], 2.0 * v[1] * v[2]];
        }
    }
    grad
}

fn clamp_cube(p: [f64; 3]) -> [f64; 3] {
    [
        p[0].clamp(-1.0, 1.0),
        p[1].clamp(-1.0, 1.0),
        p[2].clamp(-1.0, 1.0),
    ]
}

/// Projected supergradient ascent with adaptive step halving.
fn ascend(corr: &Correlation, start: [f64; 3]) -> ([f64; 3], f64) {
    let mut p = clamp_cube(start);
    let mut f = margin_at(corr, p);
    let mut step = 0.25;
    while step > 1e-10 {
        let g = supergradient(corr, p);
        let norm = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        if norm < 1e-15 {
            break;
        }
        let cand = clamp_cube([
            p[0] + step * g[0] / norm,
            p[1] + step * g[1] / norm,
            p[2] + step * g[2] / norm,
        ]);
        let fc = margin_at(corr, cand);
        if fc > f {
            p = cand;
            f = fc;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    (p, f)
}

/// Ellipsoid refinement over the cube; closes the gap the ascent leaves at
/// nonsmooth ridges. Deterministic.
fn ellipsoid_polish(corr: &Correlation, mut best: ([f64; 3], f64)) -> ([f64; 3], f64) {
    let mut center = [0.0f64; 3];
    // sphere of radius sqrt(3) covers the cube
    let mut shape = [[3.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]];
    for _ in 0..500 {
        let mut cut = [0.0f64; 3];
        let mut outside = false;
        for i in 0..3 {
            if center[i] > 1.0 {
                cut[i] = -1.0;
                outside = true;
                break;
            }
            if center[i] < -1.0 {
                cut[i] = 1.0;
                outside = true;
                break;
            }
        }
        if !outside {
            let f = margin_at(corr, center);
            if f > best.1 {
                best = (center, f);
            }
            cut = supergradient(corr, center);
        }
        // keep the halfspace cut . (x - center) >= 0
        let gs = [
            shape[0][0] * cut[0] + shape[0][1] * cut[1] + shape[0][2] * cut[2],
            shape[1][0] * cut[0] + shape[1][1] * cut[1] + shape[1][2] * cut[2],
            shape[2][0] * cut[0] + shape[2][1] * cut[1] + shape[2][2] * cut[2],
        ];
        let denom_sq = cut[0] * gs[0] + cut[1] * gs[1] + cut[2] * gs[2];
        if denom_sq <= 1e-30 {
            break;
        }
        let denom = denom_sq.sqrt();
        for i in 0..3 {
            center[i] += gs[i] / (4.0 * denom);
        }
        for i in 0..3 {
            for j in 0..3 {
                shape[i][j] = 9.0 / 8.0 * (shape[i][j] - gs[i] * gs[j] / (2.0 * denom_sq));
            }
        }
    }
    best
}

/// Maximizes the margin over the cube from a 21^3 grid seed, the supplied
/// extra starts, ten deterministic pseudo-random restarts, and an
/// ellipsoid polish. Returns the best point and value.
pub fn maximize_margin(corr: &Correlation, extra_starts: &[[f64; 3]]) -> ([f64; 3], f64) {
    let mut seed = ([0.0f64; 3], f64::NEG_INFINITY);
    for i in 0..21 {
        for j in 0..21 {
            for k in 0..21 {
                let p = [
                    -1.0 + 0.1 * i as f64,
                    -1.0 + 0.1 * j as f64,
                    -1.0 + 0.1 * k as f64,
                ];
                let f = margin_at(corr, p);
                if f > seed.1 {
                    seed = (p, f);
                }
            }
        }
    }
    let mut starts: Vec<[f64; 3]> = vec![seed.0];
    starts.extend_from_slice(extra_starts);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_7267_696e);
    for _ in 0..10 {
        starts.push([
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]);
    }
    let mut best = seed;
    for s in starts {
        let (p, f) = ascend(corr, s);
        if f > best.1 {
            best = (p, f);
        }
    }
    ellipsoid_polish(corr, best)
}

/// Membership of a 3x3 correlation, with witness extraction on success.
///
/// Status is `Member` when the maximized margin clears `tol`, `Boundary`
/// within the `tol` band around zero, `Nonmember` below `-tol`. Member and
/// boundary outcomes carry a witness; its Gram matrix agrees with the
/// correlators bit-exactly and its vectors reproduce them within 1e-9 for
/// margins at machine scale.
pub fn cor33_feasibility(corr: &Correlation, tol: f64) -> Result<Cor33Outcome, CorsetsError> {
    if corr.n() != 3 || corr.m() != 3 {
        return Err(CorsetsError::WrongScenario(corr.n(), corr.m()));
    }
    let (p, margin) = maximize_margin(corr, &[]);
    let status = if margin > tol {
        FeasibilityStatus::Member
    } else if margin >= -tol {
        FeasibilityStatus::Boundary
    } else {
        FeasibilityStatus::Nonmember
    };
    if status == FeasibilityStatus::Nonmember {
        return Ok(Cor33Outcome {
            status,
            margin,
            witness: None,
        });
    }
    let mut entries: Vec<(usize, usize, f64)> = vec![
        (0, 1, p[0]),
        (0, 2, p[1]),
        (1, 2, p[2]),
    ];
    for x in 0..3 {
        for y in 0..3 {
            entries.push((x, 3 + y, corr.get(x, y)));
        }
    }
    let partial = PartialSymMatrix::from_entries(6, &entries)?;
    let gram = partial.chordal_complete(tol + 1e-12)?;
    let vectors = gram.cholesky_gram_vectors(tol + 1e-9)?;
    Ok(Cor33Outcome {
        status,
        margin,
        witness: Some(Cor33Witness {
            alpha: p[0],
            beta: p[1],
            gamma: p[2],
            margin,
            gram,
            vectors,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corsets::sample_quantum;

    #[test]
    fn all_ones_is_on_the_boundary_with_unit_witness() {
        let c = Correlation::new(vec![vec![1.0; 3]; 3]).unwrap();
        let out = cor33_feasibility(&c, 1e-7).unwrap();
        assert_ne!(out.status, FeasibilityStatus::Nonmember);
        assert!(out.margin.abs() < 1e-9, "margin {}", out.margin);
        let w = out.witness.expect("witness on membership");
        assert!((w.alpha - 1.0).abs() < 1e-6);
        assert!((w.beta - 1.0).abs() < 1e-6);
        assert!((w.gamma - 1.0).abs() < 1e-6);
    }

    #[test]
    fn identity_is_member_with_orthonormal_witness() {
        let c = Correlation::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let out = cor33_feasibility(&c, 1e-7).unwrap();
        assert_ne!(out.status, FeasibilityStatus::Nonmember);
        assert!(out.margin.abs() < 1e-7, "margin {}", out.margin);
        let w = out.witness.unwrap();
        assert!(w.alpha.abs() < 1e-4 && w.beta.abs() < 1e-4 && w.gamma.abs() < 1e-4);
    }

    #[test]
    fn embedded_pr_box_is_nonmember() {
        let c = Correlation::new(vec![
            vec![1.0, 1.0, 0.0],
            vec![1.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let out = cor33_feasibility(&c, 1e-7).unwrap();
        assert_eq!(out.status, FeasibilityStatus::Nonmember);
        assert!(out.witness.is_none());
        assert!(out.margin < -0.05, "margin {}", out.margin);
    }

    #[test]
    fn sampled_points_are_members_with_valid_witnesses() {
        for seed in 0..20 {
            let c = sample_quantum(3, 3, 6, seed);
            let out = cor33_feasibility(&c, 1e-7).unwrap();
            assert_ne!(
                out.status,
                FeasibilityStatus::Nonmember,
                "seed {seed} margin {}",
                out.margin
            );
            let w = out.witness.unwrap();
            // gram holds the correlators bit-exactly
            for x in 0..3 {
                for y in 0..3 {
                    assert_eq!(w.gram.get(x, 3 + y), c.get(x, y));
                }
            }
            // vectors reproduce them within 1e-9
            for x in 0..3 {
                for y in 0..3 {
                    let dot: f64 = w.vectors[x]
                        .iter()
                        .zip(&w.vectors[3 + y])
                        .map(|(a, b)| a * b)
                        .sum();
                    assert!((dot - c.get(x, y)).abs() < 1e-9, "seed {seed} ({x},{y})");
                }
            }
            // and the witness parameters satisfy the defining inequalities
            let rs = crate::corsets::lemma1_residuals(
                &c,
                w.alpha,
                w.beta,
                w.gamma,
                crate::corsets::Lemma1Form::Polynomial,
            )
            .unwrap();
            assert!(rs.iter().all(|r| r.value >= -1e-9));
        }
    }

    #[test]
    fn restart_stability() {
        let c = sample_quantum(3, 3, 6, 7);
        let (_, reference) = maximize_margin(&c, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let start = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let (_, f) = maximize_margin(&c, &[start]);
            assert!((f - reference).abs() < 1e-7, "{f} vs {reference}");
        }
    }
}
