//! Fourier-Motzkin projection and witness lifting.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{FmeError, LinIneq, LinSystem, Rat};

/// Projects the solution set onto the remaining variables: every lower
/// bound on `var` is paired with every upper bound, inequalities free of
/// `var` pass through, exact duplicates are dropped.
pub fn fm_eliminate(system: &LinSystem, var: &str) -> Result<LinSystem, FmeError> {
    if !system.has_var(var) {
        return Err(FmeError::VariableNotFound(var.to_string()));
    }
    let mut lowers: Vec<&LinIneq> = Vec::new(); // negative coefficient on var
    let mut uppers: Vec<&LinIneq> = Vec::new(); // positive coefficient on var
    let mut rest: Vec<LinIneq> = Vec::new();
    for q in &system.ineqs {
        let c = q.coeff(var);
        if c.is_zero() {
            rest.push(q.clone());
        } else if c.is_positive() {
            uppers.push(q);
        } else {
            lowers.push(q);
        }
    }
    for lo in &lowers {
        let cl = lo.coeff(var); // < 0
        for up in &uppers {
            let cu = up.coeff(var); // > 0
            // cu * lo + (-cl) * up cancels var
            let mut coeffs: BTreeMap<String, Rat> = BTreeMap::new();
            for (v, a) in &lo.coeffs {
                coeffs.insert(v.clone(), a * &cu);
            }
            for (v, a) in &up.coeffs {
                let entry = coeffs.entry(v.clone()).or_insert_with(Rat::zero);
                *entry += a * (-cl.clone());
            }
            coeffs.remove(var); // cancels exactly; drop the zero
            debug_assert!({
                let residue = lo.coeff(var) * &cu + up.coeff(var) * (-cl.clone());
                residue.is_zero()
            });
            let rhs = &lo.rhs * &cu + &up.rhs * (-cl.clone());
            rest.push(LinIneq::new(coeffs, rhs));
        }
    }
    let vars = system
        .vars
        .iter()
        .filter(|v| v.as_str() != var)
        .cloned()
        .collect();
    Ok(LinSystem::new(vars, rest))
}

/// Eliminates several variables in order, optionally applying a cleanup
/// pass (typically redundancy removal) between steps to cap growth.
pub fn eliminate_in_order(
    system: &LinSystem,
    vars: &[&str],
    mut between: impl FnMut(LinSystem) -> Result<LinSystem, FmeError>,
) -> Result<LinSystem, FmeError> {
    let mut cur = system.clone();
    for v in vars {
        cur = fm_eliminate(&cur, v)?;
        cur = between(cur)?;
    }
    Ok(cur)
}

/// Bounds on `var` implied by `system` at a partial assignment of all the
/// other variables; `None` means unbounded on that side.
fn variable_interval(
    system: &LinSystem,
    var: &str,
    point: &BTreeMap<String, Rat>,
) -> (Option<Rat>, Option<Rat>) {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for q in &system.ineqs {
        let c = q.coeff(var);
        if c.is_zero() {
            continue;
        }
        let mut others = Rat::zero();
        for (v, a) in &q.coeffs {
            if v != var {
                others += a * point.get(v).cloned().unwrap_or_else(Rat::zero);
            }
        }
        let bound = (q.rhs.clone() - others) / &c;
        if c.is_positive() {
            hi = Some(match hi {
                None => bound,
                Some(h) => h.min(bound),
            });
        } else {
            lo = Some(match lo {
                None => bound,
                Some(l) => l.max(bound),
            });
        }
    }
    (lo, hi)
}

/// Back-substitutes the eliminated variables in reverse elimination order,
/// choosing the midpoint of each feasible interval. The input point must
/// satisfy the fully eliminated system; an empty interval then signals an
/// elimination bug and surfaces as an error.
pub fn lift_witness(
    system: &LinSystem,
    eliminated: &[&str],
    point: &BTreeMap<String, Rat>,
) -> Result<BTreeMap<String, Rat>, FmeError> {
    // rebuild the chain of intermediate systems
    let mut chain: Vec<LinSystem> = vec![system.clone()];
    for v in eliminated {
        let next = fm_eliminate(chain.last().unwrap(), v)?;
        chain.push(next);
    }
    let mut assignment = point.clone();
    for (i, v) in eliminated.iter().enumerate().rev() {
        let sys_before = &chain[i];
        let (lo, hi) = variable_interval(sys_before, v, &assignment);
        let value = match (lo, hi) {
            (Some(l), Some(h)) => {
                if l > h {
                    return Err(FmeError::EmptyInterval(v.to_string(), l, h));
                }
                (l + h) / super::rat_int(2)
            }
            (Some(l), None) => l + super::rat_int(1),
            (None, Some(h)) => h - super::rat_int(1),
            (None, None) => Rat::zero(),
        };
        assignment.insert(v.to_string(), value);
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fme::{rat, rat_int};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ineq(pairs: &[(&str, i64)], rhs: Rat) -> LinIneq {
        let coeffs = pairs
            .iter()
            .map(|(v, n)| (v.to_string(), rat_int(*n)))
            .collect();
        LinIneq::new(coeffs, rhs)
    }

    #[test]
    fn eliminate_simple_chain() {
        // {x <= y, y <= 1} eliminate y -> {x <= 1}
        let sys = LinSystem::new(
            vec!["x".into(), "y".into()],
            vec![
                ineq(&[("x", 1), ("y", -1)], rat_int(0)),
                ineq(&[("y", 1)], rat_int(1)),
            ],
        );
        let projected = fm_eliminate(&sys, "y").unwrap();
        assert_eq!(projected.vars, vec!["x".to_string()]);
        assert_eq!(projected.ineqs, vec![ineq(&[("x", 1)], rat_int(1))]);
    }

    #[test]
    fn eliminate_missing_variable_errors() {
        let sys = LinSystem::new(vec!["x".into()], vec![ineq(&[("x", 1)], rat_int(1))]);
        assert_eq!(
            fm_eliminate(&sys, "z"),
            Err(FmeError::VariableNotFound("z".into()))
        );
    }

    #[test]
    fn triangle_bound_elimination() {
        // |b - g| <= a and a <= 1 - |b + g - 1|   (pi-units), eliminate a:
        // the survivors are exactly |b - g| <= 1 - |b + g - 1| expanded.
        let sys = LinSystem::new(
            vec!["a".into(), "b".into(), "g".into()],
            vec![
                ineq(&[("b", 1), ("g", -1), ("a", -1)], rat_int(0)),
                ineq(&[("b", -1), ("g", 1), ("a", -1)], rat_int(0)),
                ineq(&[("a", 1), ("b", 1), ("g", 1)], rat_int(2)),
                ineq(&[("a", 1), ("b", -1), ("g", -1)], rat_int(0)),
            ],
        );
        let projected = fm_eliminate(&sys, "a").unwrap();
        let expect = LinSystem::new(
            vec!["b".into(), "g".into()],
            vec![
                ineq(&[("b", 2)], rat_int(2)),
                ineq(&[("g", 2)], rat_int(2)),
                ineq(&[("b", -2)], rat_int(0)),
                ineq(&[("g", -2)], rat_int(0)),
            ],
        );
        assert_eq!(projected, expect);
    }

    #[test]
    fn lift_midpoint_examples() {
        // {x <= y <= 1}, x = 0 -> y = 1/2
        let sys = LinSystem::new(
            vec!["x".into(), "y".into()],
            vec![
                ineq(&[("x", 1), ("y", -1)], rat_int(0)),
                ineq(&[("y", 1)], rat_int(1)),
            ],
        );
        let mut point = BTreeMap::new();
        point.insert("x".to_string(), rat_int(0));
        let lifted = lift_witness(&sys, &["y"], &point).unwrap();
        assert_eq!(lifted["y"], rat(1, 2));
        assert!(sys.satisfied_at(&lifted));
    }

    fn random_system(rng: &mut StdRng) -> LinSystem {
        let n_vars = rng.gen_range(2..=5);
        let vars: Vec<String> = (0..n_vars).map(|i| format!("v{i}")).collect();
        let n_ineqs = rng.gen_range(3..=12);
        let mut ineqs = Vec::new();
        for _ in 0..n_ineqs {
            let mut coeffs = BTreeMap::new();
            for v in &vars {
                if rng.gen_bool(0.7) {
                    let num = rng.gen_range(-3i64..=3);
                    let den = rng.gen_range(1i64..=3);
                    coeffs.insert(v.clone(), rat(num, den));
                }
            }
            let rhs = rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3));
            ineqs.push(LinIneq::new(coeffs, rhs));
        }
        LinSystem::new(vars, ineqs)
    }

    #[test]
    fn projection_soundness_and_completeness_random() {
        let mut rng = StdRng::seed_from_u64(31);
        let mut lifted_ok = 0;
        let mut rejected_ok = 0;
        for _ in 0..200 {
            let sys = random_system(&mut rng);
            let var = sys.vars[rng.gen_range(0..sys.vars.len())].clone();
            let projected = fm_eliminate(&sys, &var).unwrap();
            // random rational point over the remaining variables
            let mut point = BTreeMap::new();
            for v in &projected.vars {
                point.insert(
                    v.clone(),
                    rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=4)),
                );
            }
            if projected.satisfied_at(&point) {
                // lifting must succeed and satisfy the original exactly
                let lifted = lift_witness(&sys, &[&var], &point).unwrap();
                assert!(sys.satisfied_at(&lifted));
                lifted_ok += 1;
            } else {
                // no assignment of var can fix the point
                let (lo, hi) = variable_interval(&sys, &var, &point);
                let fixable = match (lo, hi) {
                    (Some(l), Some(h)) => l <= h,
                    _ => true,
                } && {
                    // the rest alone must already fail if interval is nonempty
                    sys.ineqs
                        .iter()
                        .filter(|q| q.coeff(&var).is_zero())
                        .all(|q| q.satisfied_at(&point))
                };
                assert!(!fixable, "projection rejected a liftable point");
                rejected_ok += 1;
            }
        }
        assert!(lifted_ok > 20, "lifted {lifted_ok}");
        assert!(rejected_ok > 20, "rejected {rejected_ok}");
    }
}
