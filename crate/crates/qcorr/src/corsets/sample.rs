//! Quantum correlation sampling from random unit vectors.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Correlation;

/// Standard normal by the Marsaglia polar method; only sqrt/ln of uniform
/// deviates, driven by a counter-based stream cipher for seed stability.
struct Normals {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl Normals {
    fn new(seed: u64) -> Self {
        Normals {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn next(&mut self) -> f64 {
        use rand::Rng;
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u: f64 = self.rng.gen_range(-1.0..1.0);
            let v: f64 = self.rng.gen_range(-1.0..1.0);
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * factor);
                return u * factor;
            }
        }
    }

    fn unit_vector(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.next()).collect();
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }
}

/// Draws n + m independent uniform unit vectors in R^dim and returns the
/// inner-product table c_xy = <u_x, v_y>; quantum by construction, and
/// identical for identical seeds.
pub fn sample_quantum(n: usize, m: usize, dim: usize, seed: u64) -> Correlation {
    assert!(dim >= 1, "ambient dimension must be at least 1");
    let mut normals = Normals::new(seed);
    let alice: Vec<Vec<f64>> = (0..n).map(|_| normals.unit_vector(dim)).collect();
    let bob: Vec<Vec<f64>> = (0..m).map(|_| normals.unit_vector(dim)).collect();
    let c: Vec<Vec<f64>> = alice
        .iter()
        .map(|u| {
            bob.iter()
                .map(|v| {
                    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
                    dot.clamp(-1.0, 1.0)
                })
                .collect()
        })
        .collect();
    Correlation::new(c).expect("unit-vector inner products lie in the box")
}
