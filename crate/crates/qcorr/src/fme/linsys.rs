//! Inequalities, systems, and the absolute-value expansion used by the
//! named-system builders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// A single inequality `sum coeffs * v <= rhs` (rhs in pi-units).
///
/// Canonical form: no zero coefficients, all coefficients and the rhs
/// integer with overall gcd one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinIneq {
    pub coeffs: BTreeMap<String, Rat>,
    pub rhs: Rat,
}

impl LinIneq {
    pub fn new(coeffs: BTreeMap<String, Rat>, rhs: Rat) -> Self {
        LinIneq { coeffs, rhs }.canonical()
    }

    /// Scales to integer coefficients with gcd one and drops zeros. A
    /// constraint with no variables canonicalizes its rhs to 0 or +-1
    /// (only the sign matters for `0 <= rhs`).
    pub fn canonical(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        if self.coeffs.is_empty() {
            self.rhs = if self.rhs.is_negative() {
                -Rat::one()
            } else if self.rhs.is_zero() {
                Rat::zero()
            } else {
                Rat::one()
            };
            return self;
        }
        let mut denom_lcm = self.rhs.denom().clone();
        for c in self.coeffs.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let scale = Rat::new(denom_lcm, 1.into());
        let mut numer_gcd = (self.rhs.clone() * &scale).numer().clone();
        for c in self.coeffs.values() {
            numer_gcd = numer_gcd.gcd((c.clone() * &scale).numer());
        }
        if numer_gcd.is_zero() {
            numer_gcd = One::one();
        }
        let factor = scale / Rat::new(numer_gcd, 1.into());
        for c in self.coeffs.values_mut() {
            *c *= &factor;
        }
        self.rhs *= &factor;
        self
    }

    /// True when the inequality constrains nothing (`0 <= rhs` with
    /// nonnegative rhs).
    pub fn is_trivially_true(&self) -> bool {
        self.coeffs.is_empty() && !self.rhs.is_negative()
    }

    /// True when the inequality is unsatisfiable on its own.
    pub fn is_trivially_false(&self) -> bool {
        self.coeffs.is_empty() && self.rhs.is_negative()
    }

    pub fn coeff(&self, var: &str) -> Rat {
        self.coeffs.get(var).cloned().unwrap_or_else(Rat::zero)
    }

    /// Left-hand side evaluated at a point (pi-unit coordinates).
    pub fn lhs_at(&self, point: &BTreeMap<String, Rat>) -> Rat {
        self.coeffs
            .iter()
            .map(|(v, c)| c * point.get(v).cloned().unwrap_or_else(Rat::zero))
            .sum()
    }

    pub fn satisfied_at(&self, point: &BTreeMap<String, Rat>) -> bool {
        self.lhs_at(point) <= self.rhs
    }
}

impl fmt::Display for LinIneq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 <= {}", self.rhs);
        }
        let mut first = true;
        for (v, c) in &self.coeffs {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{a} {v}")?;
            }
        }
        write!(f, " <= {} pi", self.rhs)
    }
}

/// An ordered collection of inequalities over a declared variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSystem {
    pub vars: Vec<String>,
    pub ineqs: Vec<LinIneq>,
}

impl LinSystem {
    pub fn new(vars: Vec<String>, ineqs: Vec<LinIneq>) -> Self {
        let sys = LinSystem { vars, ineqs };
        sys.validate();
        sys.canonical()
    }

    fn validate(&self) {
        let declared: BTreeSet<&String> = self.vars.iter().collect();
        for ineq in &self.ineqs {
            for v in ineq.coeffs.keys() {
                assert!(declared.contains(v), "coefficient on undeclared variable {v}");
            }
        }
    }

    /// Canonicalizes every inequality, drops trivially-true ones and exact
    /// duplicates, and sorts. Idempotent.
    pub fn canonical(mut self) -> Self {
        let set: BTreeSet<LinIneq> = self
            .ineqs
            .into_iter()
            .map(LinIneq::canonical)
            .filter(|q| !q.is_trivially_true())
            .collect();
        self.ineqs = set.into_iter().collect();
        self
    }

    pub fn len(&self) -> usize {
        self.ineqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ineqs.is_empty()
    }

    pub fn has_var(&self, var: &str) -> bool {
        self.vars.iter().any(|v| v == var)
    }

    pub fn satisfied_at(&self, point: &BTreeMap<String, Rat>) -> bool {
        self.ineqs.iter().all(|q| q.satisfied_at(point))
    }

    /// Violated inequalities at a point, for reporting.
    pub fn violations_at(&self, point: &BTreeMap<String, Rat>) -> Vec<&LinIneq> {
        self.ineqs
            .iter()
            .filter(|q| !q.satisfied_at(point))
            .collect()
    }
}

impl fmt::Display for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.vars.join(", "))?;
        for q in &self.ineqs {
            writeln!(f, "  {q}")?;
        }
        Ok(())
    }
}

/// Affine expression with the constant measured in pi-units.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub coeffs: BTreeMap<String, Rat>,
    pub constant: Rat,
}

impl LinExpr {
    pub fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), Rat::one());
        LinExpr {
            coeffs,
            constant: Rat::zero(),
        }
    }

    /// Constant `units * pi`.
    pub fn pi(units: Rat) -> Self {
        LinExpr {
            coeffs: BTreeMap::new(),
            constant: units,
        }
    }

    pub fn add(mut self, other: &LinExpr) -> Self {
        for (v, c) in &other.coeffs {
            let entry = self.coeffs.entry(v.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        self.constant += &other.constant;
        self
    }

    pub fn sub(self, other: &LinExpr) -> Self {
        self.add(&other.clone().neg())
    }

    pub fn neg(mut self) -> Self {
        for c in self.coeffs.values_mut() {
            *c = -c.clone();
        }
        self.constant = -self.constant;
        self
    }
}

/// `plain + sum_i |abs_terms_i| <= rhs * pi`, expanded into plain
/// inequalities by enumerating the 2^k sign patterns.
#[derive(Debug, Clone)]
pub struct AbsIneq {
    pub plain: LinExpr,
    pub abs_terms: Vec<LinExpr>,
    pub rhs: Rat,
}

impl AbsIneq {
    pub fn new(plain: LinExpr, abs_terms: Vec<LinExpr>, rhs: Rat) -> Self {
        AbsIneq {
            plain,
            abs_terms,
            rhs,
        }
    }

    pub fn expand(&self) -> Vec<LinIneq> {
        let k = self.abs_terms.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let mut expr = self.plain.clone();
            for (i, term) in self.abs_terms.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    expr = expr.add(term);
                } else {
                    expr = expr.sub(term);
                }
            }
            // coeffs * v <= (rhs - constant) * pi
            out.push(LinIneq::new(expr.coeffs, self.rhs.clone() - expr.constant));
        }
        out
    }
}

/// Expands a batch of absolute-value inequalities into a canonical system.
pub fn expand_system(vars: Vec<String>, abs_ineqs: &[AbsIneq], plain: Vec<LinIneq>) -> LinSystem {
    let mut ineqs = plain;
    for a in abs_ineqs {
        ineqs.extend(a.expand());
    }
    LinSystem::new(vars, ineqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fme::{rat, rat_int};

    fn ineq(pairs: &[(&str, (i64, i64))], rhs: (i64, i64)) -> LinIneq {
        let coeffs = pairs
            .iter()
            .map(|(v, (n, d))| (v.to_string(), rat(*n, *d)))
            .collect();
        LinIneq::new(coeffs, rat(rhs.0, rhs.1))
    }

    #[test]
    fn canonical_scales_to_integer_gcd_one() {
        let q = ineq(&[("x", (1, 2)), ("y", (-1, 3))], (1, 6));
        assert_eq!(q.coeff("x"), rat_int(3));
        assert_eq!(q.coeff("y"), rat_int(-2));
        assert_eq!(q.rhs, rat_int(1));
    }

    #[test]
    fn canonical_is_idempotent() {
        let q = ineq(&[("x", (4, 6)), ("y", (-8, 10))], (2, 15));
        assert_eq!(q.clone().canonical(), q);
        let sys = LinSystem::new(
            vec!["x".into(), "y".into()],
            vec![q.clone(), q.clone(), ineq(&[], (1, 1))],
        );
        assert_eq!(sys.clone().canonical(), sys);
        assert_eq!(sys.len(), 1);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let q = ineq(&[("x", (0, 1)), ("y", (1, 1))], (1, 1));
        assert!(!q.coeffs.contains_key("x"));
    }

    #[test]
    fn abs_expansion_counts() {
        let one_abs = AbsIneq::new(LinExpr::default(), vec![LinExpr::var("x")], rat_int(1));
        assert_eq!(one_abs.expand().len(), 2);
        let two_abs = AbsIneq::new(
            LinExpr::default(),
            vec![LinExpr::var("x"), LinExpr::var("y")],
            rat_int(1),
        );
        assert_eq!(two_abs.expand().len(), 4);
        let three_abs = AbsIneq::new(
            LinExpr::default(),
            vec![LinExpr::var("x"), LinExpr::var("y"), LinExpr::var("z")],
            rat_int(2),
        );
        assert_eq!(three_abs.expand().len(), 8);
    }

    #[test]
    fn abs_expansion_moves_constants_to_rhs() {
        // |x + y - 1| <= 1  expands to  x + y <= 2  and  -x - y <= 0
        let a = AbsIneq::new(
            LinExpr::default(),
            vec![LinExpr::var("x").add(&LinExpr::var("y")).sub(&LinExpr::pi(rat_int(1)))],
            rat_int(1),
        );
        let qs = a.expand();
        let sys = LinSystem::new(vec!["x".into(), "y".into()], qs);
        assert_eq!(sys.len(), 2);
        let texts: Vec<String> = sys.ineqs.iter().map(|q| q.to_string()).collect();
        assert!(texts.iter().any(|t| t == "x + y <= 2 pi"), "{texts:?}");
        assert!(texts.iter().any(|t| t == "-x - y <= 0 pi"), "{texts:?}");
    }
}
