//! Residuals of the two equivalent Cor(3,3) feasibility systems for a
//! candidate triple (alpha, beta, gamma).
//!
//! Polynomial form: per column y, the determinant of the Schur block
//! `A - B_y B_y^T` and its three 2x2 principal minors, all nonnegative
//! exactly when the block is psd. Angle form: the linear triangle
//! inequalities in pairwise angles plus, per column, the nonlinear residual
//! that re-expresses the same determinant in angle variables.

use std::f64::consts::PI;

use super::{to_angles, Correlation, CorsetsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Form {
    Polynomial,
    Angle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedResidual {
    pub name: String,
    pub value: f64,
}

fn check_unit_interval(name: &str, v: f64) -> Result<(), CorsetsError> {
    if v.abs() > 1.0 + 1e-12 || !v.is_finite() {
        // the row/col slot of the offending parameter is not meaningful
        return Err(CorsetsError::OutOfRange(0, 0, v));
    }
    let _ = name;
    Ok(())
}

/// `det [[1,a,b],[a,1,g],[b,g,1]] - ...` expanded: the quartic polynomial
/// whose sign decides psd-ness of the y-th Schur block.
fn det_residual(c1: f64, c2: f64, c3: f64, a: f64, b: f64, g: f64) -> f64 {
    1.0 - (c1 * c1 + c2 * c2 + c3 * c3) - a * a - b * b - g * g
        + 2.0 * c1 * c2 * a
        + 2.0 * c1 * c3 * b
        + 2.0 * c2 * c3 * g
        + 2.0 * a * b * g
        + c3 * c3 * a * a
        + c2 * c2 * b * b
        + c1 * c1 * g * g
        - 2.0 * c2 * c3 * a * b
        - 2.0 * c1 * c3 * a * g
        - 2.0 * c1 * c2 * b * g
}

/// 2x2 principal minor `1 - u^2 - v^2 - w^2 + 2 u v w` pattern.
fn minor_residual(u: f64, v: f64, w: f64) -> f64 {
    1.0 - u * u - v * v - w * w + 2.0 * u * v * w
}

/// Triangle residuals for three angles: all four are nonnegative exactly
/// when the corresponding unit-diagonal 3x3 cosine matrix is psd.
fn triangle_residuals(out: &mut Vec<NamedResidual>, label: &str, t1: f64, t2: f64, t3: f64) {
    out.push(NamedResidual {
        name: format!("{label}: t1 <= t2 + t3"),
        value: t2 + t3 - t1,
    });
    out.push(NamedResidual {
        name: format!("{label}: t2 <= t1 + t3"),
        value: t1 + t3 - t2,
    });
    out.push(NamedResidual {
        name: format!("{label}: t3 <= t1 + t2"),
        value: t1 + t2 - t3,
    });
    out.push(NamedResidual {
        name: format!("{label}: t1 + t2 + t3 <= 2pi"),
        value: 2.0 * PI - t1 - t2 - t3,
    });
}

/// Residual vector of the chosen form; every entry nonnegative (within the
/// caller's slack) certifies the defining inequalities at (alpha, beta,
/// gamma). The two forms have matching sign patterns on their determinant
/// entries under the arccos map.
pub fn lemma1_residuals(
    corr: &Correlation,
    alpha: f64,
    beta: f64,
    gamma: f64,
    form: Lemma1Form,
) -> Result<Vec<NamedResidual>, CorsetsError> {
    if corr.n() != 3 || corr.m() != 3 {
        return Err(CorsetsError::WrongScenario(corr.n(), corr.m()));
    }
    check_unit_interval("alpha", alpha)?;
    check_unit_interval("beta", beta)?;
    check_unit_interval("gamma", gamma)?;
    let mut out = Vec::new();
    match form {
        Lemma1Form::Polynomial => {
            for y in 0..3 {
                let (c1, c2, c3) = (corr.get(0, y), corr.get(1, y), corr.get(2, y));
                out.push(NamedResidual {
                    name: format!("y={}: det", y + 1),
                    value: det_residual(c1, c2, c3, alpha, beta, gamma),
                });
                out.push(NamedResidual {
                    name: format!("y={}: minor(2,3)", y + 1),
                    value: minor_residual(c2, c3, gamma),
                });
                out.push(NamedResidual {
                    name: format!("y={}: minor(1,3)", y + 1),
                    value: minor_residual(c1, c3, beta),
                });
                out.push(NamedResidual {
                    name: format!("y={}: minor(1,2)", y + 1),
                    value: minor_residual(c1, c2, alpha),
                });
            }
        }
        Lemma1Form::Angle => {
            let angles = to_angles(corr);
            let (ha, hb, hg) = (alpha.acos(), beta.acos(), gamma.acos());
            triangle_residuals(&mut out, "greek", ha, hb, hg);
            for y in 0..3 {
                let (a1, a2, a3) = (
                    angles.radians(0, y),
                    angles.radians(1, y),
                    angles.radians(2, y),
                );
                triangle_residuals(&mut out, &format!("alpha,y={}", y + 1), ha, a1, a2);
                triangle_residuals(&mut out, &format!("beta,y={}", y + 1), hb, a1, a3);
                triangle_residuals(&mut out, &format!("gamma,y={}", y + 1), hg, a2, a3);
            }
            for y in 0..3 {
                let (a1, a2, a3) = (
                    angles.radians(0, y),
                    angles.radians(1, y),
                    angles.radians(2, y),
                );
                let (s1, s2, s3) = (a1.sin(), a2.sin(), a3.sin());
                let ka = ha.cos() - a1.cos() * a2.cos();
                let kb = hb.cos() - a1.cos() * a3.cos();
                let kg = hg.cos() - a2.cos() * a3.cos();
                let value = (s1 * s2 * s3).powi(2)
                    - (s3 * ka).powi(2)
                    - (s2 * kb).powi(2)
                    - (s1 * kg).powi(2)
                    + 2.0 * ka * kb * kg;
                out.push(NamedResidual {
                    name: format!("y={}: angle det", y + 1),
                    value,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::SymMatrix;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn schur_block(corr: &Correlation, y: usize, a: f64, b: f64, g: f64) -> SymMatrix {
        let mut x = SymMatrix::identity(3);
        x.set(0, 1, a);
        x.set(0, 2, b);
        x.set(1, 2, g);
        let bv = [corr.get(0, y), corr.get(1, y), corr.get(2, y)];
        SymMatrix::from_fn(3, |i, j| x.get(i, j) - bv[i] * bv[j])
    }

    #[test]
    fn all_ones_residuals_vanish() {
        let c = Correlation::new(vec![vec![1.0; 3]; 3]).unwrap();
        let rs = lemma1_residuals(&c, 1.0, 1.0, 1.0, Lemma1Form::Polynomial).unwrap();
        for r in rs {
            assert!(r.value.abs() < 1e-12, "{}: {}", r.name, r.value);
        }
    }

    #[test]
    fn identity_residuals_nonnegative_first_zero() {
        let c = Correlation::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let rs = lemma1_residuals(&c, 0.0, 0.0, 0.0, Lemma1Form::Polynomial).unwrap();
        assert!(rs.iter().all(|r| r.value >= -1e-15));
        assert_eq!(rs[0].name, "y=1: det");
        assert!(rs[0].value.abs() < 1e-15);
    }

    #[test]
    fn polynomial_det_matches_schur_determinant() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..200 {
            let c = Correlation::new(vec![
                (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            ])
            .unwrap();
            let (a, b, g) = (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let rs = lemma1_residuals(&c, a, b, g, Lemma1Form::Polynomial).unwrap();
            for y in 0..3 {
                let det = schur_block(&c, y, a, b, g).det();
                let claimed = rs[4 * y].value;
                assert!(
                    (det - claimed).abs() < 1e-10,
                    "y={y}: det {det} vs residual {claimed}"
                );
            }
        }
    }

    #[test]
    fn form_consistency_on_determinant_signs() {
        // polynomial det residual and angle det residual agree in sign away
        // from the zero band
        let mut rng = StdRng::seed_from_u64(42);
        let mut compared = 0;
        for _ in 0..300 {
            let c = Correlation::new(vec![
                (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            ])
            .unwrap();
            let (a, b, g) = (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let poly = lemma1_residuals(&c, a, b, g, Lemma1Form::Polynomial).unwrap();
            let angle = lemma1_residuals(&c, a, b, g, Lemma1Form::Angle).unwrap();
            for y in 0..3 {
                let p = poly[4 * y].value;
                let q = angle
                    .iter()
                    .find(|r| r.name == format!("y={}: angle det", y + 1))
                    .unwrap()
                    .value;
                if p.abs() < 1e-9 || q.abs() < 1e-9 {
                    continue;
                }
                assert_eq!(p > 0.0, q > 0.0, "sign mismatch at y={y}: {p} vs {q}");
                compared += 1;
            }
        }
        assert!(compared > 400);
    }

    #[test]
    fn angle_dets_equal_polynomial_dets() {
        // the angle-form determinant is the same quantity, re-expressed
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..100 {
            let c = Correlation::new(vec![
                (0..3).map(|_| rng.gen_range(-0.99..0.99)).collect(),
                (0..3).map(|_| rng.gen_range(-0.99..0.99)).collect(),
                (0..3).map(|_| rng.gen_range(-0.99..0.99)).collect(),
            ])
            .unwrap();
            let (a, b, g) = (
                rng.gen_range(-0.99..0.99),
                rng.gen_range(-0.99..0.99),
                rng.gen_range(-0.99..0.99),
            );
            let poly = lemma1_residuals(&c, a, b, g, Lemma1Form::Polynomial).unwrap();
            let angle = lemma1_residuals(&c, a, b, g, Lemma1Form::Angle).unwrap();
            for y in 0..3 {
                let p = poly[4 * y].value;
                let q = angle
                    .iter()
                    .find(|r| r.name == format!("y={}: angle det", y + 1))
                    .unwrap()
                    .value;
                assert!((p - q).abs() < 1e-9, "y={y}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        let c = Correlation::new(vec![vec![0.0; 3]; 3]).unwrap();
        assert!(matches!(
            lemma1_residuals(&c, 1.5, 0.0, 0.0, Lemma1Form::Polynomial),
            Err(CorsetsError::OutOfRange(..))
        ));
    }
}
