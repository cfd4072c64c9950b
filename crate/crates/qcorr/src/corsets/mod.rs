//! Quantum correlation sets: behavior ingestion, pairwise-angle
//! coordinates, the inequality evaluators, exact Cor(2,m) membership,
//! Cor(3,3) feasibility with certified witnesses, and quantum sampling.
//!
//! Index convention: settings are 0-based in code (`x in 0..n`,
//! `y in 0..m`); reports and variable names add one.

mod behavior;
mod feasibility;
mod lemma1;
mod sample;
mod saturate;

pub use behavior::{correlators_from_behavior, BehaviorTable, FullCorrelator};
pub use feasibility::{cor33_feasibility, maximize_margin, Cor33Outcome, Cor33Witness, FeasibilityStatus};
pub use lemma1::{lemma1_residuals, Lemma1Form, NamedResidual};
pub use sample::sample_quantum;
pub use saturate::{saturate_family, SaturatedPoint};

use std::f64::consts::PI;

use thiserror::Error;

use crate::fme::{rat, Rat};

#[derive(Debug, Error, PartialEq)]
pub enum CorsetsError {
    #[error("correlator entry ({0},{1}) = {2} lies outside [-1, 1]")]
    OutOfRange(usize, usize, f64),
    #[error("matrix must be {0}x{1} for this operation")]
    WrongScenario(usize, usize),
    #[error("behavior table is not normalized at settings ({x},{y}): sum {sum}")]
    NotNormalized { x: usize, y: usize, sum: f64 },
    #[error("probability p({a},{b}|{x},{y}) = {value} is not in [0, 1]")]
    InvalidProbability {
        a: i8,
        b: i8,
        x: usize,
        y: usize,
        value: f64,
    },
    #[error(
        "signalling detected: party {party} marginal p({outcome}|{setting}) shifts by {deviation} \
         between opposite settings {other_a} and {other_b}"
    )]
    SignallingDetected {
        party: char,
        outcome: i8,
        setting: usize,
        other_a: usize,
        other_b: usize,
        deviation: f64,
    },
    #[error("{0}")]
    Matrix(#[from] crate::numkernel::MatrixError),
    #[error("{0}")]
    Chordal(#[from] crate::chordal::ChordalError),
}

/// Joint correlators only: an n x m matrix with entries in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    n: usize,
    m: usize,
    c: Vec<Vec<f64>>,
}

impl Correlation {
    /// Validates and stores; entries are allowed to overshoot the box by
    /// at most 1e-12 and are clamped back onto it.
    pub fn new(c: Vec<Vec<f64>>) -> Result<Self, CorsetsError> {
        let n = c.len();
        assert!(n >= 1, "correlation needs at least one row");
        let m = c[0].len();
        assert!(m >= 1 && c.iter().all(|row| row.len() == m), "ragged matrix");
        let mut c = c;
        for (x, row) in c.iter_mut().enumerate() {
            for (y, v) in row.iter_mut().enumerate() {
                if v.abs() > 1.0 + 1e-12 || !v.is_finite() {
                    return Err(CorsetsError::OutOfRange(x, y, *v));
                }
                *v = v.clamp(-1.0, 1.0);
            }
        }
        Ok(Correlation { n, m, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.c[x][y]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.c
    }
}

/// Pairwise angles arccos(c) in [0, pi]; when every entry is a recognized
/// exact value the whole matrix also carries a pi-unit rational form.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleMatrix {
    n: usize,
    m: usize,
    radians: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<Rat>>>,
}

/// Exact pi-unit angle of a correlator, when it is one of the closed-form
/// values that appear throughout: 0, +-1/2, +-1/sqrt2, +-sqrt3/2, +-1.
fn exact_angle(c: f64) -> Option<Rat> {
    const TOL: f64 = 1e-12;
    let table: [(f64, (i64, i64)); 9] = [
        (1.0, (0, 1)),
        (3f64.sqrt() / 2.0, (1, 6)),
        (std::f64::consts::FRAC_1_SQRT_2, (1, 4)),
        (0.5, (1, 3)),
        (0.0, (1, 2)),
        (-0.5, (2, 3)),
        (-std::f64::consts::FRAC_1_SQRT_2, (3, 4)),
        (-(3f64.sqrt()) / 2.0, (5, 6)),
        (-1.0, (1, 1)),
    ];
    table
        .iter()
        .find(|(v, _)| (c - v).abs() <= TOL)
        .map(|(_, (num, den))| rat(*num, *den))
}

impl AngleMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn radians(&self, x: usize, y: usize) -> f64 {
        self.radians[x][y]
    }

    pub fn exact(&self) -> Option<&Vec<Vec<Rat>>> {
        self.exact.as_ref()
    }

    /// Builds directly from pi-unit rationals in [0, 1].
    pub fn from_pi_units(units: Vec<Vec<Rat>>) -> Self {
        use num_traits::ToPrimitive;
        let n = units.len();
        let m = units[0].len();
        let radians = units
            .iter()
            .map(|row| {
                row.iter()
                    .map(|u| u.to_f64().expect("pi-unit fits in f64") * PI)
                    .collect()
            })
            .collect();
        AngleMatrix {
            n,
            m,
            radians,
            exact: Some(units),
        }
    }
}

/// Componentwise arccos into [0, pi].
pub fn to_angles(corr: &Correlation) -> AngleMatrix {
    let radians: Vec<Vec<f64>> = corr
        .c
        .iter()
        .map(|row| row.iter().map(|&v| v.acos()).collect())
        .collect();
    let exact: Option<Vec<Vec<Rat>>> = corr
        .c
        .iter()
        .map(|row| row.iter().map(|&v| exact_angle(v)).collect::<Option<Vec<_>>>())
        .collect();
    AngleMatrix {
        n: corr.n,
        m: corr.m,
        radians,
        exact,
    }
}

/// Componentwise cosine; the inverse of [`to_angles`] up to roundoff.
pub fn from_angles(angles: &AngleMatrix) -> Correlation {
    let c: Vec<Vec<f64>> = angles
        .radians
        .iter()
        .map(|row| row.iter().map(|&a| a.cos()).collect())
        .collect();
    Correlation::new(c).expect("cosines lie in the box")
}

/// TLM residual `pi - |c_xy - c_x'y| - |c_xy' + c_x'y' - pi|`; nonnegative
/// exactly when the inequality holds.
pub fn tlm_residual(angles: &AngleMatrix, x: usize, xp: usize, y: usize, yp: usize) -> f64 {
    let a = angles.radians[x][y] - angles.radians[xp][y];
    let b = angles.radians[x][yp] + angles.radians[xp][yp] - PI;
    PI - a.abs() - b.abs()
}

/// Exact TLM residual in pi-units, available when the matrix has an exact
/// form: `1 - |t_xy - t_x'y| - |t_xy' + t_x'y' - 1|`.
pub fn tlm_residual_exact(
    angles: &AngleMatrix,
    x: usize,
    xp: usize,
    y: usize,
    yp: usize,
) -> Option<Rat> {
    use num_traits::{One, Signed};
    let t = angles.exact.as_ref()?;
    let diff = (t[x][y].clone() - &t[xp][y]).abs();
    let sum = (t[x][yp].clone() + &t[xp][yp] - Rat::one()).abs();
    Some(Rat::one() - diff - sum)
}

/// The arcsin inequality residual for a 2x2 correlation, minimized over
/// the four placements of the negated term (the set is symmetric under
/// relabeling, so the binding arrangement is the meaningful one). Each
/// placement bounds the magnitude of its signed sum: the outcome-flip
/// symmetry of the correlation set makes the two sides interchangeable,
/// and keeping both is what matches the TLM system exactly.
pub fn arcsin_residual(corr: &Correlation) -> Result<f64, CorsetsError> {
    if corr.n != 2 || corr.m != 2 {
        return Err(CorsetsError::WrongScenario(corr.n, corr.m));
    }
    let asin: Vec<Vec<f64>> = corr
        .c
        .iter()
        .map(|row| row.iter().map(|&v| v.asin()).collect())
        .collect();
    let total: f64 = asin.iter().flatten().sum();
    let mut best = f64::INFINITY;
    for x in 0..2 {
        for y in 0..2 {
            // sum of the other three minus the distinguished one
            let value = total - 2.0 * asin[x][y];
            best = best.min(PI - value.abs());
        }
    }
    Ok(best)
}

/// Families of the Cor(3,3) necessary conditions. The triple families name
/// the shape of their three terms: `Diff` is `|c_ry - c_r'y|`, `Sum` is
/// `|c_ry + c_r'y - pi|`, taken over the row pairs (1,2), (2,3), (1,3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Box,
    Tlm,
    DiffDiffDiff,
    DiffSumSum,
    SumDiffSum,
    SumSumDiff,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Box,
        Family::Tlm,
        Family::DiffDiffDiff,
        Family::DiffSumSum,
        Family::SumDiffSum,
        Family::SumSumDiff,
    ];

    pub(crate) fn triple_kinds(self) -> Option<[TermKind; 3]> {
        match self {
            Family::DiffDiffDiff => Some([TermKind::Diff, TermKind::Diff, TermKind::Diff]),
            Family::DiffSumSum => Some([TermKind::Diff, TermKind::Sum, TermKind::Sum]),
            Family::SumDiffSum => Some([TermKind::Sum, TermKind::Diff, TermKind::Sum]),
            Family::SumSumDiff => Some([TermKind::Sum, TermKind::Sum, TermKind::Diff]),
            _ => None,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Box => "box",
            Family::Tlm => "tlm",
            Family::DiffDiffDiff => "diff,diff,diff",
            Family::DiffSumSum => "diff,sum,sum",
            Family::SumDiffSum => "sum,diff,sum",
            Family::SumSumDiff => "sum,sum,diff",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TermKind {
    Diff,
    Sum,
}

pub(crate) fn triple_term(angles: &AngleMatrix, kind: TermKind, rows: (usize, usize), col: usize) -> f64 {
    let a = angles.radians[rows.0][col];
    let b = angles.radians[rows.1][col];
    match kind {
        TermKind::Diff => (a - b).abs(),
        TermKind::Sum => (a + b - PI).abs(),
    }
}

pub(crate) const TRIPLE_ROWS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// One evaluated inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyResidual {
    pub family: Family,
    /// Box: [x, y]; TLM: [x, x', y, y']; triples: [y, y', ybar]. 0-based.
    pub indices: Vec<usize>,
    pub residual: f64,
}

/// Evaluates every instance of the five inequality families on a 3x3
/// angle matrix: boxes, TLM for distinct rows and columns, and the four
/// triple families over all column choices except y = y' = ybar.
pub fn lemma3_check(angles: &AngleMatrix) -> Result<Vec<FamilyResidual>, CorsetsError> {
    if angles.n != 3 || angles.m != 3 {
        return Err(CorsetsError::WrongScenario(angles.n, angles.m));
    }
    let mut out = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            let a = angles.radians[x][y];
            out.push(FamilyResidual {
                family: Family::Box,
                indices: vec![x, y],
                residual: a.min(PI - a),
            });
        }
    }
    for x in 0..3 {
        for xp in x + 1..3 {
            for y in 0..3 {
                for yp in 0..3 {
                    if y == yp {
                        continue;
                    }
                    out.push(FamilyResidual {
                        family: Family::Tlm,
                        indices: vec![x, xp, y, yp],
                        residual: tlm_residual(angles, x, xp, y, yp),
                    });
                }
            }
        }
    }
    for family in [
        Family::DiffDiffDiff,
        Family::DiffSumSum,
        Family::SumDiffSum,
        Family::SumSumDiff,
    ] {
        let kinds = family.triple_kinds().unwrap();
        for y in 0..3 {
            for yp in 0..3 {
                for yb in 0..3 {
                    if y == yp && yp == yb {
                        continue;
                    }
                    let total: f64 = (0..3)
                        .map(|k| triple_term(angles, kinds[k], TRIPLE_ROWS[k], [y, yp, yb][k]))
                        .sum();
                    out.push(FamilyResidual {
                        family,
                        indices: vec![y, yp, yb],
                        residual: 2.0 * PI - total,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// One evaluated Cor(2,m) inequality with a printable label.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicCheck {
    pub label: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cor2mReport {
    pub member: bool,
    pub violated: Vec<CyclicCheck>,
    pub saturated: Vec<CyclicCheck>,
}

/// Exact membership test for two settings against m: box inequalities plus
/// the eight cyclic inequalities `0 <= sum with one negated term <= 2 pi`
/// per setting pair, within a fixed 1e-9 slack.
pub fn cor2m_member(corr: &Correlation) -> Result<Cor2mReport, CorsetsError> {
    const TOL: f64 = 1e-9;
    if corr.n != 2 {
        return Err(CorsetsError::WrongScenario(corr.n, corr.m));
    }
    let angles = to_angles(corr);
    let mut violated = Vec::new();
    let mut saturated = Vec::new();
    let mut push = |label: String, residual: f64| {
        if residual < -TOL {
            violated.push(CyclicCheck { label, residual });
        } else if residual <= TOL {
            saturated.push(CyclicCheck { label, residual });
        }
    };
    for x in 0..2 {
        for y in 0..corr.m {
            let a = angles.radians[x][y];
            push(format!("box c{}{}", x + 1, y + 1), a.min(PI - a));
        }
    }
    for i in 0..corr.m {
        for j in i + 1..corr.m {
            let cells = [(0, i), (0, j), (1, i), (1, j)];
            for negated in 0..4 {
                let mut sum = 0.0;
                for (k, &(x, y)) in cells.iter().enumerate() {
                    let a = angles.radians[x][y];
                    sum += if k == negated { -a } else { a };
                }
                let (nx, ny) = cells[negated];
                let label = format!(
                    "cyclic (i={}, j={}) negated c{}{}",
                    i + 1,
                    j + 1,
                    nx + 1,
                    ny + 1
                );
                push(format!("{label}, lower"), sum);
                push(format!("{label}, upper"), 2.0 * PI - sum);
            }
        }
    }
    Ok(Cor2mReport {
        member: violated.is_empty(),
        violated,
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fme::rat;

    pub(crate) fn tsirelson22() -> Correlation {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Correlation::new(vec![vec![s, s], vec![s, -s]]).unwrap()
    }

    pub(crate) fn pr22() -> Correlation {
        Correlation::new(vec![vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap()
    }

    #[test]
    fn angle_roundtrip_known_values() {
        let c = Correlation::new(vec![vec![0.0, 1.0], vec![-1.0, -std::f64::consts::FRAC_1_SQRT_2]])
            .unwrap();
        let a = to_angles(&c);
        assert!((a.radians(0, 0) - PI / 2.0).abs() < 1e-15);
        assert!(a.radians(0, 1).abs() < 1e-15);
        assert!((a.radians(1, 0) - PI).abs() < 1e-15);
        assert!((a.radians(1, 1) - 3.0 * PI / 4.0).abs() < 1e-15);
        let exact = a.exact().expect("all entries are table values");
        assert_eq!(exact[0][0], rat(1, 2));
        assert_eq!(exact[1][1], rat(3, 4));
        let back = from_angles(&a);
        for x in 0..2 {
            for y in 0..2 {
                assert!((back.get(x, y) - c.get(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn angle_roundtrip_random() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let c = Correlation::new(vec![vec![rng.gen_range(-1.0..1.0)]]).unwrap();
            let back = from_angles(&to_angles(&c));
            assert!((back.get(0, 0) - c.get(0, 0)).abs() < 1e-12);
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(matches!(
            Correlation::new(vec![vec![1.5]]),
            Err(CorsetsError::OutOfRange(0, 0, _))
        ));
    }

    #[test]
    fn tlm_residual_tsirelson_saturates() {
        let a = to_angles(&tsirelson22());
        // x=0, x'=1, y=1, y'=0 in 0-based indices
        let r = tlm_residual(&a, 0, 1, 1, 0);
        assert!(r.abs() < 1e-12, "residual {r}");
        let exact = tlm_residual_exact(&a, 0, 1, 1, 0).unwrap();
        assert_eq!(exact, rat(0, 1));
    }

    #[test]
    fn tlm_residual_pr_violates_by_pi() {
        let a = to_angles(&pr22());
        let r = tlm_residual(&a, 0, 1, 1, 0);
        assert!((r + PI).abs() < 1e-12, "residual {r}");
        let exact = tlm_residual_exact(&a, 0, 1, 1, 0).unwrap();
        assert_eq!(exact, rat(-1, 1));
    }

    #[test]
    fn tlm_residual_neutral_point() {
        let c = Correlation::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let a = to_angles(&c);
        let r = tlm_residual(&a, 0, 1, 1, 0);
        assert!((r - PI).abs() < 1e-12);
    }

    #[test]
    fn arcsin_residual_known_points() {
        assert!(arcsin_residual(&tsirelson22()).unwrap().abs() < 1e-9);
        assert!((arcsin_residual(&pr22()).unwrap() + PI).abs() < 1e-12);
        let zero = Correlation::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!((arcsin_residual(&zero).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn lemma3_all_ones_saturates_mixed_families() {
        let c = Correlation::new(vec![vec![1.0; 3]; 3]).unwrap();
        let residuals = lemma3_check(&to_angles(&c)).unwrap();
        assert!(residuals.iter().all(|r| r.residual >= -1e-12));
        let dss_zero = residuals
            .iter()
            .any(|r| r.family == Family::DiffSumSum && r.residual.abs() < 1e-12);
        assert!(dss_zero, "diff,sum,sum must saturate at the all-ones point");
    }

    #[test]
    fn lemma3_neutral_point_is_interior() {
        let c = Correlation::new(vec![vec![0.0; 3]; 3]).unwrap();
        let residuals = lemma3_check(&to_angles(&c)).unwrap();
        assert!(residuals.iter().all(|r| r.residual > 0.1));
    }

    #[test]
    fn lemma3_embedded_pr_violates_tlm() {
        let c = Correlation::new(vec![
            vec![1.0, 1.0, 0.0],
            vec![1.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let residuals = lemma3_check(&to_angles(&c)).unwrap();
        let worst = residuals
            .iter()
            .filter(|r| r.family == Family::Tlm)
            .map(|r| r.residual)
            .fold(f64::INFINITY, f64::min);
        assert!((worst + PI).abs() < 1e-12, "worst TLM residual {worst}");
    }

    #[test]
    fn cor2m_tsirelson_is_member_with_saturation() {
        let report = cor2m_member(&tsirelson22()).unwrap();
        assert!(report.member);
        assert!(!report.saturated.is_empty());
    }

    #[test]
    fn cor2m_pr_is_rejected() {
        let report = cor2m_member(&pr22()).unwrap();
        assert!(!report.member);
        assert_eq!(report.violated.len(), 1);
        assert!((report.violated[0].residual + PI).abs() < 1e-12);
    }

    #[test]
    fn cor2m_all_ones_is_member() {
        let c = Correlation::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(cor2m_member(&c).unwrap().member);
    }

    #[test]
    fn cor2m_wide_scenario() {
        let c = Correlation::new(vec![vec![0.2, -0.3, 0.5, 0.0], vec![0.1, 0.9, -0.2, 0.4]])
            .unwrap();
        assert!(cor2m_member(&c).unwrap().member);
    }
}
