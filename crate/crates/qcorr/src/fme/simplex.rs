//! Exact rational simplex in standard form with Bland's rule.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` with dense rational data. The
//! systems handled here are short and wide (a dozen equality rows, up to a
//! thousand columns), so the basis inverse is recomputed by Gaussian
//! elimination each pivot; Bland's entering/leaving rule guarantees
//! termination.

use num_traits::{One, Signed, Zero};

use super::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Minimizes `c.x` subject to `a x = b`, `x >= 0`.
///
/// Two-phase: artificial variables first, then the caller objective.
/// Redundant equality rows are detected in phase one and dropped.
pub fn simplex_min(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);
    if m == 0 {
        // only the sign of c matters: x = 0 unless some cost is negative
        if c.iter().any(|cj| cj.is_negative()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal {
            value: Rat::zero(),
            solution: vec![Rat::zero(); n],
        };
    }

    // flip rows so the right-hand side is nonnegative
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        if b[i].is_negative() {
            rows.push(a[i].iter().map(|x| -x.clone()).collect());
            rhs.push(-b[i].clone());
        } else {
            rows.push(a[i].clone());
            rhs.push(b[i].clone());
        }
    }

    // phase one: [A | I], minimize the artificial sum
    let mut tab = Tableau {
        rows,
        rhs,
        n_struct: n,
        basis: (0..m).map(|i| n + i).collect(),
    };
    let mut cost1 = vec![Rat::zero(); n + m];
    for cj in cost1.iter_mut().skip(n) {
        *cj = Rat::one();
    }
    let phase1 = tab.optimize(&cost1, n + m);
    match phase1 {
        RunResult::Optimal { value } => {
            if value.is_positive() {
                return LpOutcome::Infeasible;
            }
        }
        RunResult::Unbounded => unreachable!("phase-one objective is bounded below by zero"),
    }
    tab.drop_artificials();

    // phase two over structural columns only
    let cost2: Vec<Rat> = c.to_vec();
    match tab.optimize(&cost2, n) {
        RunResult::Optimal { value } => LpOutcome::Optimal {
            value,
            solution: tab.solution(),
        },
        RunResult::Unbounded => LpOutcome::Unbounded,
    }
}

enum RunResult {
    Optimal { value: Rat },
    Unbounded,
}

struct Tableau {
    /// Equality rows over structural columns (artificials are implicit).
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    n_struct: usize,
    /// Column index basic in each row; >= n_struct means artificial.
    basis: Vec<usize>,
}

impl Tableau {
    fn column(&self, j: usize, row_count: usize) -> Vec<Rat> {
        if j < self.n_struct {
            (0..row_count).map(|i| self.rows[i][j].clone()).collect()
        } else {
            (0..row_count)
                .map(|i| {
                    if j - self.n_struct == i {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        }
    }

    /// One simplex run with Bland's rule. `col_limit` bounds which columns
    /// may enter (structural only in phase two).
    fn optimize(&mut self, cost: &[Rat], col_limit: usize) -> RunResult {
        let m = self.rows.len();
        loop {
            let binv = invert(&self.basis_matrix());
            let xb: Vec<Rat> = mat_vec(&binv, &self.rhs);
            // y = c_B B^-1
            let cb: Vec<Rat> = self.basis.iter().map(|&j| cost[j].clone()).collect();
            let y: Vec<Rat> = (0..m)
                .map(|k| (0..m).map(|i| &cb[i] * &binv[i][k]).sum())
                .collect();
            // Bland: smallest-index column with negative reduced cost
            let mut entering = None;
            for j in 0..col_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let col = self.column(j, m);
                let ya: Rat = (0..m).map(|i| &y[i] * &col[i]).sum();
                if cost[j].clone() - ya < Rat::zero() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(e) = entering else {
                let value: Rat = (0..m).map(|i| &cb[i] * &xb[i]).sum();
                return RunResult::Optimal { value };
            };
            let d = mat_vec(&binv, &self.column(e, m));
            // ratio test; ties resolved toward the smallest basis index
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..m {
                if d[i].is_positive() {
                    let ratio = &xb[i] / &d[i];
                    match &leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]) {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((li, _)) = leave else {
                return RunResult::Unbounded;
            };
            self.basis[li] = e;
        }
    }

    fn basis_matrix(&self) -> Vec<Vec<Rat>> {
        let m = self.rows.len();
        let cols: Vec<Vec<Rat>> = self.basis.iter().map(|&j| self.column(j, m)).collect();
        (0..m)
            .map(|i| (0..m).map(|k| cols[k][i].clone()).collect())
            .collect()
    }

    /// After phase one at objective zero: pivot remaining artificials out;
    /// rows whose artificial cannot leave are redundant and get dropped.
    fn drop_artificials(&mut self) {
        let m = self.rows.len();
        let mut drop_rows: Vec<usize> = Vec::new();
        for i in 0..m {
            if self.basis[i] < self.n_struct {
                continue;
            }
            // inverse is refreshed per replacement pivot
            let binv = invert(&self.basis_matrix());
            let mut replaced = false;
            for j in 0..self.n_struct {
                if self.basis.contains(&j) {
                    continue;
                }
                let col = self.column(j, m);
                let dij: Rat = (0..m).map(|k| &binv[i][k] * &col[k]).sum();
                if !dij.is_zero() {
                    self.basis[i] = j;
                    replaced = true;
                    break;
                }
            }
            if !replaced {
                drop_rows.push(i);
            }
        }
        for &i in drop_rows.iter().rev() {
            self.rows.remove(i);
            self.rhs.remove(i);
            self.basis.remove(i);
        }
    }

    fn solution(&self) -> Vec<Rat> {
        let binv = invert(&self.basis_matrix());
        let xb = mat_vec(&binv, &self.rhs);
        let mut x = vec![Rat::zero(); self.n_struct];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n_struct {
                x[j] = xb[i].clone();
            }
        }
        x
    }
}

fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Dense rational inverse by Gauss-Jordan with partial (first nonzero)
/// pivoting. Panics on a singular basis, which would be a pivoting bug.
fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("basis matrix is singular");
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &factor;
                a[r][j] -= t;
                let t = &inv[col][j] * &factor;
                inv[r][j] -= t;
            }
        }
    }
    inv
}
