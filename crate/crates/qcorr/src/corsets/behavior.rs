//! Full behaviors and their correlator projection.

use std::collections::BTreeMap;

use super::{Correlation, CorsetsError};

/// Conditional probabilities p(a,b|x,y) for dichotomic outcomes. Settings
/// are 1-based here, matching the wire format; missing entries count as
/// zero probability.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorTable {
    n: usize,
    m: usize,
    p: BTreeMap<(i8, i8, usize, usize), f64>,
}

/// Marginal and joint correlators of a behavior.
#[derive(Debug, Clone, PartialEq)]
pub struct FullCorrelator {
    pub c_a: Vec<f64>,
    pub c_b: Vec<f64>,
    pub joint: Correlation,
}

impl BehaviorTable {
    pub fn new(
        n: usize,
        m: usize,
        p: BTreeMap<(i8, i8, usize, usize), f64>,
    ) -> Result<Self, CorsetsError> {
        assert!(n >= 1 && m >= 1);
        for (&(a, b, x, y), &value) in &p {
            let outcomes_ok = (a == 1 || a == -1) && (b == 1 || b == -1);
            let settings_ok = (1..=n).contains(&x) && (1..=m).contains(&y);
            if !outcomes_ok || !settings_ok || !(-1e-15..=1.0 + 1e-12).contains(&value) {
                return Err(CorsetsError::InvalidProbability { a, b, x, y, value });
            }
        }
        Ok(BehaviorTable { n, m, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn prob(&self, a: i8, b: i8, x: usize, y: usize) -> f64 {
        self.p.get(&(a, b, x, y)).copied().unwrap_or(0.0)
    }

    /// The uniform behavior p = 1/4 everywhere.
    pub fn uniform(n: usize, m: usize) -> Self {
        let mut p = BTreeMap::new();
        for x in 1..=n {
            for y in 1..=m {
                for a in [-1i8, 1] {
                    for b in [-1i8, 1] {
                        p.insert((a, b, x, y), 0.25);
                    }
                }
            }
        }
        BehaviorTable { n, m, p }
    }
}

/// Projects a behavior onto correlators after validating normalization
/// (fixed 1e-12) and no-signalling (caller tolerance, worst deviation
/// reported). Marginals are averaged over the far party's settings.
pub fn correlators_from_behavior(
    behavior: &BehaviorTable,
    tol: f64,
) -> Result<FullCorrelator, CorsetsError> {
    let (n, m) = (behavior.n, behavior.m);
    for x in 1..=n {
        for y in 1..=m {
            let sum: f64 = [(-1i8, -1i8), (-1, 1), (1, -1), (1, 1)]
                .iter()
                .map(|&(a, b)| behavior.prob(a, b, x, y))
                .sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(CorsetsError::NotNormalized { x, y, sum });
            }
        }
    }
    // marginal of Alice's outcome a at setting x, as seen from column y
    let p_a = |a: i8, x: usize, y: usize| -> f64 {
        behavior.prob(a, -1, x, y) + behavior.prob(a, 1, x, y)
    };
    let p_b = |b: i8, x: usize, y: usize| -> f64 {
        behavior.prob(-1, b, x, y) + behavior.prob(1, b, x, y)
    };
    for a in [-1i8, 1] {
        for x in 1..=n {
            for y1 in 1..=m {
                for y2 in y1 + 1..=m {
                    let deviation = (p_a(a, x, y1) - p_a(a, x, y2)).abs();
                    if deviation > tol {
                        return Err(CorsetsError::SignallingDetected {
                            party: 'A',
                            outcome: a,
                            setting: x,
                            other_a: y1,
                            other_b: y2,
                            deviation,
                        });
                    }
                }
            }
        }
    }
    for b in [-1i8, 1] {
        for y in 1..=m {
            for x1 in 1..=n {
                for x2 in x1 + 1..=n {
                    let deviation = (p_b(b, x1, y) - p_b(b, x2, y)).abs();
                    if deviation > tol {
                        return Err(CorsetsError::SignallingDetected {
                            party: 'B',
                            outcome: b,
                            setting: y,
                            other_a: x1,
                            other_b: x2,
                            deviation,
                        });
                    }
                }
            }
        }
    }
    let c_a: Vec<f64> = (1..=n)
        .map(|x| {
            let avg: f64 = (1..=m).map(|y| p_a(1, x, y) - p_a(-1, x, y)).sum();
            avg / m as f64
        })
        .collect();
    let c_b: Vec<f64> = (1..=m)
        .map(|y| {
            let avg: f64 = (1..=n).map(|x| p_b(1, x, y) - p_b(-1, x, y)).sum();
            avg / n as f64
        })
        .collect();
    let joint: Vec<Vec<f64>> = (1..=n)
        .map(|x| {
            (1..=m)
                .map(|y| {
                    [(-1i8, -1i8, 1.0), (-1, 1, -1.0), (1, -1, -1.0), (1, 1, 1.0)]
                        .iter()
                        .map(|&(a, b, sign)| sign * behavior.prob(a, b, x, y))
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(FullCorrelator {
        c_a,
        c_b,
        joint: Correlation::new(joint)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_behavior_has_zero_correlators() {
        let fc = correlators_from_behavior(&BehaviorTable::uniform(2, 3), 1e-9).unwrap();
        assert!(fc.c_a.iter().all(|v| v.abs() < 1e-15));
        assert!(fc.c_b.iter().all(|v| v.abs() < 1e-15));
        for x in 0..2 {
            for y in 0..3 {
                assert!(fc.joint.get(x, y).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn perfectly_correlated_behavior() {
        let mut p = BTreeMap::new();
        for x in 1..=2 {
            for y in 1..=2 {
                p.insert((1i8, 1i8, x, y), 0.5);
                p.insert((-1i8, -1i8, x, y), 0.5);
            }
        }
        let bt = BehaviorTable::new(2, 2, p).unwrap();
        let fc = correlators_from_behavior(&bt, 1e-9).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert!((fc.joint.get(x, y) - 1.0).abs() < 1e-15);
            }
        }
        assert!(fc.c_a.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn signalling_is_detected() {
        // Alice's marginal at x=1 depends on Bob's setting: 0.5 vs 0.6
        let mut p = BTreeMap::new();
        for (y, pa) in [(1usize, 0.5f64), (2, 0.6)] {
            p.insert((1i8, 1i8, 1usize, y), pa / 2.0);
            p.insert((1i8, -1i8, 1usize, y), pa / 2.0);
            p.insert((-1i8, 1i8, 1usize, y), (1.0 - pa) / 2.0);
            p.insert((-1i8, -1i8, 1usize, y), (1.0 - pa) / 2.0);
        }
        let bt = BehaviorTable::new(1, 2, p).unwrap();
        match correlators_from_behavior(&bt, 1e-9) {
            Err(CorsetsError::SignallingDetected {
                party, deviation, ..
            }) => {
                assert_eq!(party, 'A');
                assert!((deviation - 0.1).abs() < 1e-12);
            }
            other => panic!("expected signalling, got {other:?}"),
        }
    }

    #[test]
    fn unnormalized_is_rejected() {
        let mut p = BTreeMap::new();
        p.insert((1i8, 1i8, 1usize, 1usize), 0.7);
        let bt = BehaviorTable::new(1, 1, p).unwrap();
        assert!(matches!(
            correlators_from_behavior(&bt, 1e-9),
            Err(CorsetsError::NotNormalized { .. })
        ));
    }

    #[test]
    fn bad_probability_is_rejected() {
        let mut p = BTreeMap::new();
        p.insert((1i8, 1i8, 1usize, 1usize), 1.4);
        assert!(matches!(
            BehaviorTable::new(1, 1, p),
            Err(CorsetsError::InvalidProbability { .. })
        ));
        let mut p = BTreeMap::new();
        p.insert((2i8, 1i8, 1usize, 1usize), 0.5);
        assert!(matches!(
            BehaviorTable::new(1, 1, p),
            Err(CorsetsError::InvalidProbability { .. })
        ));
    }
}
