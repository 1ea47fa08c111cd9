//! Exact Fourier-Motzkin elimination over rationals.
//!
//! Rows read `coeffs . x + constant (= | >=) 0`.

use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub relation: Relation,
}

impl Row {
    fn value(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum::<Rational>() + &self.constant
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trivially_holds(&self) -> bool {
        match self.relation {
            Relation::Eq => self.constant.is_zero(),
            Relation::Ge => !self.constant.is_negative(),
        }
    }

    /// `self + k * other`.
    fn add_scaled(&self, k: &Rational, other: &Row) -> Row {
        Row {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + k * b).collect(),
            constant: &self.constant + k * &other.constant,
            relation: self.relation,
        }
    }

    fn scaled(&self, k: &Rational) -> Row {
        Row {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            constant: &self.constant * k,
            relation: self.relation,
        }
    }

    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalized(self) -> Row {
        match self.coeffs.iter().find(|a| !a.is_zero()) {
            Some(a) => {
                let k = a.abs().recip();
                self.scaled(&k)
            }
            None => self,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    vars: usize,
    rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, constant: Rational) {
        self.push(coeffs, constant, Relation::Eq);
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, constant: Rational) {
        self.push(coeffs, constant, Relation::Ge);
    }

    fn push(&mut self, coeffs: Vec<Rational>, constant: Rational, relation: Relation) {
        assert_eq!(coeffs.len(), self.vars, "row width");
        self.rows.push(Row { coeffs, constant, relation });
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| {
            let v = r.value(x);
            match r.relation {
                Relation::Eq => v.is_zero(),
                Relation::Ge => !v.is_negative(),
            }
        })
    }

    /// Projects out `order` (equalities first by substitution, then the
    /// remaining variables in the given order). `None` when infeasible.
    pub fn eliminate(&self, order: &[usize]) -> Option<Projection> {
        let mut rows: Vec<Row> = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            if row.is_trivial() {
                if !row.trivially_holds() {
                    return None;
                }
            } else {
                rows.push(row.clone());
            }
        }
        let mut steps = Vec::new();
        let mut pending: Vec<usize> = order.to_vec();

        while let Some((ri, var)) = rows.iter().enumerate().find_map(|(i, r)| {
            (r.relation == Relation::Eq).then(|| pending.iter().find(|&&v| !r.coeffs[v].is_zero()).map(|&v| (i, v))).flatten()
        }) {
            let pivot = rows.swap_remove(ri);
            let mut next = Vec::with_capacity(rows.len());
            for row in rows {
                let row = if row.coeffs[var].is_zero() {
                    row
                } else {
                    let k = -(&row.coeffs[var] / &pivot.coeffs[var]);
                    let mut r = row.add_scaled(&k, &pivot);
                    r.coeffs[var] = Rational::zero();
                    r
                };
                if row.is_trivial() {
                    if !row.trivially_holds() {
                        return None;
                    }
                } else {
                    next.push(row);
                }
            }
            rows = next;
            pending.retain(|&v| v != var);
            steps.push(Step::Substituted { var, row: pivot });
        }

        for var in pending {
            let (touching, mut rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| !r.coeffs[var].is_zero());
            let (lower, upper): (Vec<&Row>, Vec<&Row>) = touching.iter().partition(|r| r.coeffs[var].is_positive());
            let mut tightest: HashMap<Vec<Rational>, Rational> = HashMap::new();
            let mut equalities: Vec<Row> = Vec::new();
            let mut keep = |row: Row| match row.relation {
                Relation::Ge => {
                    let slot = tightest.entry(row.coeffs).or_insert_with(|| row.constant.clone());
                    if row.constant < *slot {
                        *slot = row.constant;
                    }
                }
                Relation::Eq => {
                    if !equalities.contains(&row) {
                        equalities.push(row);
                    }
                }
            };
            for row in rest.drain(..) {
                keep(row.normalized());
            }
            for p in &lower {
                for n in &upper {
                    let k = &p.coeffs[var] / -&n.coeffs[var];
                    let mut r = p.add_scaled(&k, n);
                    r.coeffs[var] = Rational::zero();
                    if r.is_trivial() {
                        if !r.trivially_holds() {
                            return None;
                        }
                        continue;
                    }
                    keep(r.normalized());
                }
            }
            rows = equalities;
            let mut ge: Vec<Row> =
                tightest.into_iter().map(|(coeffs, constant)| Row { coeffs, constant, relation: Relation::Ge }).collect();
            ge.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
            rows.extend(ge);
            steps.push(Step::Bounded { var, rows: touching });
        }
        Some(Projection { steps, rest: rows })
    }
}

#[derive(Debug, Clone)]
enum Step {
    Substituted { var: usize, row: Row },
    Bounded { var: usize, rows: Vec<Row> },
}

/// Result of eliminating some variables from a feasible-so-far system.
#[derive(Debug, Clone)]
pub struct Projection {
    steps: Vec<Step>,
    rest: Vec<Row>,
}

impl Projection {
    /// Rows over the variables that were not eliminated.
    pub fn rows(&self) -> &[Row] {
        &self.rest
    }

    /// Feasible range `[lo, hi]` of `var` when every surviving row involves
    /// only `var`; `None` if empty. A missing bound is unbounded.
    pub fn interval(&self, var: usize) -> Option<(Option<Rational>, Option<Rational>)> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for row in &self.rest {
            assert!(
                row.coeffs.iter().enumerate().all(|(i, a)| i == var || a.is_zero()),
                "surviving row involves another variable"
            );
            let a = &row.coeffs[var];
            let bound = -&row.constant / a;
            let (raise_lo, lower_hi) = match row.relation {
                Relation::Eq => (true, true),
                Relation::Ge => (a.is_positive(), a.is_negative()),
            };
            if raise_lo && lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound.clone());
            }
            if lower_hi && hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        match (&lo, &hi) {
            (Some(l), Some(h)) if l > h => None,
            _ => Some((lo, hi)),
        }
    }

    /// Fills the eliminated variables given values for the others, taking
    /// each variable's lower bound when it has one.
    pub fn complete(&self, x: &mut [Option<Rational>]) {
        for step in self.steps.iter().rev() {
            match step {
                Step::Substituted { var, row } => {
                    let a = &row.coeffs[*var];
                    let rest: Rational = row
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|(i, c)| i != var && !c.is_zero())
                        .map(|(i, c)| c * x[i].as_ref().expect("unassigned variable"))
                        .sum::<Rational>()
                        + &row.constant;
                    x[*var] = Some(-rest / a);
                }
                Step::Bounded { var, rows } => {
                    let mut lo: Option<Rational> = None;
                    let mut hi: Option<Rational> = None;
                    for row in rows {
                        let a = &row.coeffs[*var];
                        let rest: Rational = row
                            .coeffs
                            .iter()
                            .enumerate()
                            .filter(|(i, c)| i != var && !c.is_zero())
                            .map(|(i, c)| c * x[i].as_ref().expect("unassigned variable"))
                            .sum::<Rational>()
                            + &row.constant;
                        let bound = -rest / a;
                        if a.is_positive() {
                            if lo.as_ref().is_none_or(|l| bound > *l) {
                                lo = Some(bound);
                            }
                        } else if hi.as_ref().is_none_or(|h| bound < *h) {
                            hi = Some(bound);
                        }
                    }
                    x[*var] = Some(lo.or(hi).unwrap_or_else(Rational::zero));
                }
            }
        }
    }
}
