//! Small dense two-phase simplex over exact rationals.
//!
//! Variables are nonnegative. Pivoting follows Bland's rule, so the method
//! terminates on degenerate problems; sizes here are tens of rows.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Equal,
    GreaterEq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<BigRational>,
        value: BigRational,
    },
    Infeasible,
    Unbounded,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<BigRational>) -> Self {
        LinearProgram {
            num_vars: objective.len(),
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    num_vars: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let num_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Equal)
            .count();
        // After flipping rows to a nonnegative rhs, every row that is not a
        // `<=` row needs an artificial.
        let normalized: Vec<(Vec<BigRational>, Relation, BigRational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::LessEq => Relation::GreaterEq,
                        Relation::GreaterEq => Relation::LessEq,
                        Relation::Equal => Relation::Equal,
                    };
                    (
                        c.coeffs.iter().map(|a| -a).collect(),
                        flipped,
                        -c.rhs.clone(),
                    )
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let num_artificial = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::LessEq)
            .count();
        let first_artificial = lp.num_vars + num_slack;
        let width = first_artificial + num_artificial;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (lp.num_vars, first_artificial);
        for (coeffs, relation, rhs) in normalized {
            let mut row = vec![BigRational::zero(); width + 1];
            row[..lp.num_vars].clone_from_slice(&coeffs);
            row[width] = rhs;
            match relation {
                Relation::LessEq => {
                    row[slack] = BigRational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::GreaterEq => {
                    row[slack] = -BigRational::one();
                    slack += 1;
                    row[art] = BigRational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Equal => {
                    row[art] = BigRational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            num_vars: lp.num_vars,
            first_artificial,
            width,
        }
    }

    fn run(mut self, objective: &[BigRational]) -> LpOutcome {
        if self.first_artificial < self.width {
            // Phase 1: maximize -(sum of artificials).
            let mut cost = vec![BigRational::zero(); self.width];
            for c in &mut cost[self.first_artificial..] {
                *c = -BigRational::one();
            }
            let allowed = self.width;
            match self.optimize(&cost, allowed) {
                Some(value) if value.is_zero() => {}
                Some(_) => return LpOutcome::Infeasible,
                None => unreachable!("phase 1 is bounded"),
            }
            self.evict_artificials();
        }
        let mut cost = vec![BigRational::zero(); self.width];
        cost[..self.num_vars].clone_from_slice(objective);
        match self.optimize(&cost, self.first_artificial) {
            None => LpOutcome::Unbounded,
            Some(value) => {
                let mut point = vec![BigRational::zero(); self.num_vars];
                for (r, &b) in self.basis.iter().enumerate() {
                    if b < self.num_vars {
                        point[b] = self.rows[r][self.width].clone();
                    }
                }
                LpOutcome::Optimal { point, value }
            }
        }
    }

    /// Runs the simplex with entering columns restricted to `0..allowed`.
    /// Returns the optimum, or `None` when unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> Option<BigRational> {
        loop {
            // Reduced costs d_j = c_j - c_B . column_j; positive means improving.
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        d -= &cost[b] * &self.rows[r][j];
                    }
                }
                d.is_positive()
            });
            let Some(col) = entering else {
                let mut value = BigRational::zero();
                for (r, &b) in self.basis.iter().enumerate() {
                    value += &cost[b] * &self.rows[r][self.width];
                }
                return Some(value);
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let (row, _) = leave?;
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// After a successful phase 1, pivot zero-level artificials out of the
    /// basis; rows where that is impossible are redundant and dropped.
    fn evict_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => {
                        self.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }
}
