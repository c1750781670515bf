//! Dense two-phase simplex over exact rationals with Bland's rule.

use num::{BigRational, One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// `maximize` (or minimize) `objective · x` subject to the constraints and
/// `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
    pub maximize: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        x: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let mut rc = cost[j].clone();
        for (i, row) in self.rows.iter().enumerate() {
            if !row[j].is_zero() {
                rc -= &cost[self.basis[i]] * &row[j];
            }
        }
        rc
    }

    /// Maximizes `cost · x` over the columns in `allowed`. Returns false when
    /// unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            // Bland: smallest improving column, then smallest basic index
            let entering = (0..self.width).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &leave {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.constraints.len();

    // normalize to nonnegative right-hand sides
    let mut rows: Vec<(Vec<BigRational>, Relation, BigRational)> = lp
        .constraints
        .iter()
        .map(|c| {
            assert_eq!(c.coeffs.len(), n, "constraint width");
            if c.rhs.is_negative() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.coeffs.iter().map(|x| -x).collect(), flipped, -&c.rhs)
            } else {
                (c.coeffs.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    // columns: originals, one slack/surplus per inequality, one artificial
    // per >= or = row
    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let width = n + slack_count + art_count;
    let mut table = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        width,
    };
    let mut next_slack = n;
    let mut next_art = n + slack_count;
    for (coeffs, rel, rhs) in rows.drain(..) {
        let mut row = vec![BigRational::zero(); width + 1];
        row[..n].clone_from_slice(&coeffs);
        row[width] = rhs;
        match rel {
            Relation::Le => {
                row[next_slack] = BigRational::one();
                table.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -BigRational::one();
                next_slack += 1;
                row[next_art] = BigRational::one();
                table.basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = BigRational::one();
                table.basis.push(next_art);
                next_art += 1;
            }
        }
        table.rows.push(row);
    }
    let is_art = |j: usize| j >= n + slack_count;

    if art_count > 0 {
        let phase1: Vec<BigRational> = (0..width)
            .map(|j| {
                if is_art(j) {
                    -BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let all = vec![true; width];
        table.optimize(&phase1, &all);
        let infeasibility: BigRational = (0..m)
            .filter(|&i| is_art(table.basis[i]))
            .map(|i| table.rhs(i).clone())
            .sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < table.rows.len() {
            if is_art(table.basis[i]) {
                match (0..width).find(|&j| !is_art(j) && !table.rows[i][j].is_zero()) {
                    Some(c) => table.pivot(i, c),
                    None => {
                        table.rows.remove(i);
                        table.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let sign = if lp.maximize {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if j < n {
                &lp.objective[j] * &sign
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    if !table.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in table.basis.iter().enumerate() {
        if b < n {
            x[b] = table.rhs(i).clone();
        }
    }
    let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { value, x }
}
