//! Construction of the named inequality systems in pi-units.
//!
//! Variable naming: `c{x}{y}` is the pairwise angle of settings (x, y)
//! divided by pi, and `alpha`, `beta`, `gamma` are the adjoined angles of
//! the Alice-side block. All systems are canonicalized on construction, so
//! duplicate expansions collapse and the inequality order is reproducible.

use num_traits::One;

use super::linsys::{expand_system, AbsIneq, LinExpr, LinIneq, LinSystem};
use super::{rat_int, FmeError, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemName {
    /// 12-variable system: triangle bounds tying alpha/beta/gamma to each
    /// column of angles, plus the box bounds. The starting point of the
    /// elimination pipeline.
    Cor33Angles,
    /// 9-variable system produced by eliminating alpha, beta, gamma: the
    /// TLM family over all index choices plus the four triple families.
    Lemma2,
    /// 9-variable system of TLM inequalities alone, all index choices.
    TlmFull,
    /// Box plus cyclic inequalities for two settings against m settings.
    Cor2m(usize),
}

impl std::str::FromStr for SystemName {
    type Err = FmeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cor33_angles" => Ok(SystemName::Cor33Angles),
            "lemma2" => Ok(SystemName::Lemma2),
            "tlm_full" => Ok(SystemName::TlmFull),
            other => {
                if let Some(m) = other
                    .strip_prefix("cor2m(")
                    .and_then(|rest| rest.strip_suffix(')'))
                {
                    if let Ok(m) = m.parse::<usize>() {
                        if m >= 1 {
                            return Ok(SystemName::Cor2m(m));
                        }
                    }
                }
                Err(FmeError::UnknownName(other.to_string()))
            }
        }
    }
}

pub fn angle_var(x: usize, y: usize) -> String {
    format!("c{x}{y}")
}

fn var(name: &str) -> LinExpr {
    LinExpr::var(name)
}

/// The four inequalities stating that three angles in [0, pi] are the
/// pairwise angles of three unit vectors: each at most the sum of the
/// others, and the total at most 2 pi.
fn triangle(a: &str, b: &str, c: &str) -> Vec<LinIneq> {
    let (a, b, c) = (var(a), var(b), var(c));
    let mut out = Vec::with_capacity(4);
    out.push(lin(a.clone().sub(&b).sub(&c), 0)); // a <= b + c
    out.push(lin(b.clone().sub(&a).sub(&c), 0));
    out.push(lin(c.clone().sub(&a).sub(&b), 0));
    out.push(lin(a.add(&b).add(&c), 2)); // a + b + c <= 2 pi
    out
}

fn lin(expr: LinExpr, rhs_units: i64) -> LinIneq {
    LinIneq::new(expr.coeffs, rat_int(rhs_units) - expr.constant)
}

fn box_bounds(names: &[String]) -> Vec<LinIneq> {
    let mut out = Vec::new();
    for n in names {
        out.push(lin(var(n), 1)); // v <= pi
        out.push(lin(var(n).neg(), 0)); // v >= 0
    }
    out
}

/// `|c_xy - c_x'y| + |c_xy' + c_x'y' - pi| <= pi`.
fn tlm_abs(x: usize, xp: usize, y: usize, yp: usize) -> AbsIneq {
    let diff = var(&angle_var(x, y)).sub(&var(&angle_var(xp, y)));
    let sum = var(&angle_var(x, yp))
        .add(&var(&angle_var(xp, yp)))
        .sub(&LinExpr::pi(Rat::one()));
    AbsIneq::new(LinExpr::default(), vec![diff, sum], rat_int(1))
}

/// One of the triple families: each term is either the difference of two
/// row entries in a column or their sum shifted by pi.
fn triple_abs(kinds: [TermKind; 3], cols: [usize; 3]) -> AbsIneq {
    let rows = [(1, 2), (2, 3), (1, 3)];
    let terms: Vec<LinExpr> = rows
        .iter()
        .zip(kinds.iter())
        .zip(cols.iter())
        .map(|(((r1, r2), kind), &col)| {
            let a = var(&angle_var(*r1, col));
            let b = var(&angle_var(*r2, col));
            match kind {
                TermKind::Diff => a.sub(&b),
                TermKind::Sum => a.add(&b).sub(&LinExpr::pi(Rat::one())),
            }
        })
        .collect();
    AbsIneq::new(LinExpr::default(), terms, rat_int(2))
}

#[derive(Debug, Clone, Copy)]
enum TermKind {
    Diff,
    Sum,
}

const TRIPLE_FAMILIES: [[TermKind; 3]; 4] = [
    [TermKind::Diff, TermKind::Diff, TermKind::Diff],
    [TermKind::Diff, TermKind::Sum, TermKind::Sum],
    [TermKind::Sum, TermKind::Diff, TermKind::Sum],
    [TermKind::Sum, TermKind::Sum, TermKind::Diff],
];

fn cor33_vars() -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for x in 1..=3 {
        for y in 1..=3 {
            vars.push(angle_var(x, y));
        }
    }
    vars
}

pub fn build_named_system(name: SystemName) -> LinSystem {
    match name {
        SystemName::Cor33Angles => {
            let mut vars = cor33_vars();
            vars.extend(["alpha".to_string(), "beta".to_string(), "gamma".to_string()]);
            let mut ineqs = box_bounds(&vars);
            ineqs.extend(triangle("alpha", "beta", "gamma"));
            for y in 1..=3 {
                ineqs.extend(triangle("alpha", &angle_var(1, y), &angle_var(2, y)));
                ineqs.extend(triangle("beta", &angle_var(1, y), &angle_var(3, y)));
                ineqs.extend(triangle("gamma", &angle_var(2, y), &angle_var(3, y)));
            }
            LinSystem::new(vars, ineqs)
        }
        SystemName::Lemma2 => {
            let mut abs = tlm_all();
            for kinds in TRIPLE_FAMILIES {
                for y in 1..=3 {
                    for yp in 1..=3 {
                        for yb in 1..=3 {
                            abs.push(triple_abs(kinds, [y, yp, yb]));
                        }
                    }
                }
            }
            expand_system(cor33_vars(), &abs, Vec::new())
        }
        SystemName::TlmFull => expand_system(cor33_vars(), &tlm_all(), Vec::new()),
        SystemName::Cor2m(m) => {
            let mut vars: Vec<String> = Vec::new();
            for x in 1..=2 {
                for y in 1..=m {
                    vars.push(angle_var(x, y));
                }
            }
            let mut ineqs = box_bounds(&vars);
            for i in 1..=m {
                for j in i + 1..=m {
                    // all four placements of the negated term, both sides
                    let cells = [(1, i), (1, j), (2, i), (2, j)];
                    for negated in 0..4 {
                        let mut expr = LinExpr::default();
                        for (k, &(x, y)) in cells.iter().enumerate() {
                            let v = var(&angle_var(x, y));
                            expr = if k == negated { expr.sub(&v) } else { expr.add(&v) };
                        }
                        ineqs.push(lin(expr.clone(), 2)); // sum <= 2 pi
                        ineqs.push(lin(expr.neg(), 0)); // sum >= 0
                    }
                }
            }
            LinSystem::new(vars, ineqs)
        }
    }
}

fn tlm_all() -> Vec<AbsIneq> {
    let mut abs = Vec::new();
    for x in 1..=3 {
        for xp in 1..=3 {
            for y in 1..=3 {
                for yp in 1..=3 {
                    abs.push(tlm_abs(x, xp, y, yp));
                }
            }
        }
    }
    abs
}
