//! Exact phase-1 simplex for feasibility of `{a·u = b} ∪ {a·u ≥ b}`, `u ∈ Qᵈ`
//! free.
//!
//! Dense tableau over rationals with Bland's smallest-index rule for both the
//! entering and the leaving variable, so degenerate instances cannot cycle.
//! A returned witness has already been checked by substitution.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const PIVOT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn holds(&self, u: &[Scalar]) -> bool {
        let lhs: Scalar = self.coeffs.iter().zip(u).map(|(a, x)| a * x).sum();
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LpProblem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Scalar>),
    Infeasible,
}

impl LpOutcome {
    pub fn witness(&self) -> Option<&[Scalar]> {
        match self {
            LpOutcome::Feasible(u) => Some(u),
            LpOutcome::Infeasible => None,
        }
    }
}

impl LpProblem {
    pub fn new(dim: usize) -> Self {
        LpProblem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn equal(&mut self, coeffs: Vec<Scalar>, rhs: Scalar) -> &mut Self {
        self.push(coeffs, Relation::Eq, rhs)
    }

    pub fn at_least(&mut self, coeffs: Vec<Scalar>, rhs: Scalar) -> &mut Self {
        self.push(coeffs, Relation::Ge, rhs)
    }

    fn push(&mut self, coeffs: Vec<Scalar>, relation: Relation, rhs: Scalar) -> &mut Self {
        assert_eq!(coeffs.len(), self.dim, "constraint row has wrong dimension");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn is_satisfied_by(&self, u: &[Scalar]) -> bool {
        u.len() == self.dim && self.constraints.iter().all(|c| c.holds(u))
    }
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    /// Reduced costs of the phase-1 objective; last entry is minus its value.
    cost: Vec<Scalar>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Scalar::from_integer(1.into()) / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Scalar>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }
}

pub fn lp_feasible(prob: &LpProblem) -> Result<LpOutcome> {
    let d = prob.dim;
    let m = prob.constraints.len();
    if m == 0 {
        return Ok(LpOutcome::Feasible(vec![Scalar::zero(); d]));
    }
    let n_slack = prob.constraints.iter().filter(|c| c.relation == Relation::Ge).count();
    // columns: u⁺ (d), u⁻ (d), slacks, artificials
    let slack0 = 2 * d;
    let art0 = slack0 + n_slack;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut needs_art = Vec::new();
    let mut slack_idx = slack0;
    for (i, con) in prob.constraints.iter().enumerate() {
        let mut row = vec![Scalar::zero(); art0];
        let flip = con.rhs.is_negative() || (con.relation == Relation::Ge && con.rhs.is_zero());
        let sign = |v: &Scalar| if flip { -v.clone() } else { v.clone() };
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = sign(a);
            row[d + j] = -sign(a);
        }
        let rhs = sign(&con.rhs);
        let mut basic = None;
        if con.relation == Relation::Ge {
            // a·u - s = b; flipped: -a·u + s = -b
            row[slack_idx] = if flip {
                Scalar::from_integer(1.into())
            } else {
                Scalar::from_integer((-1).into())
            };
            if flip {
                basic = Some(slack_idx);
            }
            slack_idx += 1;
        }
        if basic.is_none() {
            needs_art.push(i);
        }
        rows.push((row, rhs));
        basis.push(basic);
    }
    let n_art = needs_art.len();
    let ncols = art0 + n_art;
    let mut table: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut basis_final = Vec::with_capacity(m);
    let mut art = art0;
    for (i, ((mut row, rhs), basic)) in rows.into_iter().zip(basis).enumerate() {
        row.resize(ncols, Scalar::zero());
        let b = match basic {
            Some(b) => b,
            None => {
                debug_assert!(needs_art.contains(&i));
                row[art] = Scalar::from_integer(1.into());
                art += 1;
                art - 1
            }
        };
        row.push(rhs);
        table.push(row);
        basis_final.push(b);
    }
    let mut cost = vec![Scalar::zero(); ncols + 1];
    for (row, &b) in table.iter().zip(&basis_final) {
        if b >= art0 {
            for (j, v) in row.iter().enumerate() {
                if j < art0 || j == ncols {
                    cost[j] -= v;
                }
            }
        }
    }

    let mut t = Tableau {
        rows: table,
        cost,
        basis: basis_final,
        ncols,
    };
    let mut pivots = 0;
    while let Some(enter) = (0..ncols).find(|&j| t.cost[j].is_negative()) {
        let mut leave: Option<(usize, Scalar)> = None;
        for (i, row) in t.rows.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[ncols] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && t.basis[i] < t.basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase-1 objective is bounded below by zero
        let (r, _) = leave.ok_or_else(|| Error::InvariantBreach("unbounded phase-1 objective".into()))?;
        t.pivot(r, enter);
        pivots += 1;
        if pivots > PIVOT_LIMIT {
            return Err(Error::InvariantBreach(format!(
                "simplex exceeded {PIVOT_LIMIT} pivots ({m} constraints, {d} variables)"
            )));
        }
    }
    if !t.cost[ncols].is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    let mut values = vec![Scalar::zero(); ncols];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        values[b] = row[ncols].clone();
    }
    let u: Vec<Scalar> = (0..d).map(|j| &values[j] - &values[d + j]).collect();
    if !prob.is_satisfied_by(&u) {
        return Err(Error::InvariantBreach("simplex witness failed substitution".into()));
    }
    Ok(LpOutcome::Feasible(u))
}
