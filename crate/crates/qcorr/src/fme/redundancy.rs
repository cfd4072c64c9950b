//! LP-backed implication, feasibility, and redundancy removal.
//!
//! `max { q.lhs : A x <= b }` is decided through its dual
//! `min { b.y : A^T y = q.coeffs, y >= 0 }`, which keeps the equality side
//! of the simplex at one row per variable — a dozen rows here — no matter
//! how many inequalities the system carries.

use num_traits::Zero;

use super::simplex::{simplex_min, LpOutcome};
use super::{FmeError, LinIneq, LinSystem, Rat};

/// Optimal value of `max q.lhs` over the system, via the dual.
fn maximize(system: &LinSystem, q: &LinIneq) -> Result<Rat, FmeError> {
    for v in q.coeffs.keys() {
        if !system.has_var(v) {
            return Err(FmeError::VariableNotFound(v.clone()));
        }
    }
    let n = system.vars.len();
    let m = system.ineqs.len();
    // rows: one per variable; columns: one per inequality
    let mut a = vec![vec![Rat::zero(); m]; n];
    for (j, ineq) in system.ineqs.iter().enumerate() {
        for (i, v) in system.vars.iter().enumerate() {
            let c = ineq.coeff(v);
            if !c.is_zero() {
                a[i][j] = c;
            }
        }
    }
    let rhs: Vec<Rat> = system.vars.iter().map(|v| q.coeff(v)).collect();
    let cost: Vec<Rat> = system.ineqs.iter().map(|i| i.rhs.clone()).collect();
    match simplex_min(&a, &rhs, &cost) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(FmeError::Unbounded),
        LpOutcome::Unbounded => Err(FmeError::Infeasible),
    }
}

/// Exact feasibility of `A x <= b` with free variables (Farkas test).
pub fn is_feasible(system: &LinSystem) -> bool {
    let n = system.vars.len();
    let m = system.ineqs.len();
    let mut a = vec![vec![Rat::zero(); m]; n];
    for (j, ineq) in system.ineqs.iter().enumerate() {
        for (i, v) in system.vars.iter().enumerate() {
            let c = ineq.coeff(v);
            if !c.is_zero() {
                a[i][j] = c;
            }
        }
    }
    let rhs = vec![Rat::zero(); n];
    let cost: Vec<Rat> = system.ineqs.iter().map(|i| i.rhs.clone()).collect();
    match simplex_min(&a, &rhs, &cost) {
        LpOutcome::Optimal { value, .. } => !value.is_negative(),
        LpOutcome::Unbounded => false,
        LpOutcome::Infeasible => unreachable!("y = 0 is always feasible"),
    }
}

use num_traits::Signed;

/// True iff every point of the (feasible) system satisfies `q`.
pub fn implies(system: &LinSystem, q: &LinIneq) -> Result<bool, FmeError> {
    if !is_feasible(system) {
        return Err(FmeError::Infeasible);
    }
    let q = q.clone().canonical();
    if q.is_trivially_true() {
        return Ok(true);
    }
    if q.is_trivially_false() {
        return Ok(false);
    }
    Ok(maximize(system, &q)? <= q.rhs)
}

/// Minimal subsystem with the identical solution set: inequalities are
/// scanned in canonical order and dropped when the others already imply
/// them. Each drop preserves the solution set, so the survivors form an
/// irredundant equivalent system.
pub fn remove_redundant(system: &LinSystem) -> Result<LinSystem, FmeError> {
    if !is_feasible(system) {
        return Err(FmeError::Infeasible);
    }
    let mut kept: Vec<LinIneq> = system.ineqs.clone();
    let mut i = 0;
    while i < kept.len() {
        let candidate = kept[i].clone();
        let others = LinSystem {
            vars: system.vars.clone(),
            ineqs: kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect(),
        };
        let redundant = match maximize(&others, &candidate) {
            Ok(value) => value <= candidate.rhs,
            Err(FmeError::Unbounded) => false,
            Err(e) => return Err(e),
        };
        if redundant {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(LinSystem {
        vars: system.vars.clone(),
        ineqs: kept,
    })
}

/// Equivalence of solution sets by exact implication in both directions.
pub fn mutually_implies(s1: &LinSystem, s2: &LinSystem) -> Result<bool, FmeError> {
    for q in &s2.ineqs {
        if !implies(s1, q)? {
            return Ok(false);
        }
    }
    for q in &s1.ineqs {
        if !implies(s2, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}
