//! Feasibility of small integer programs with finite variable bounds.
//!
//! The solver is a depth-first branch and bound. Every node tightens variable
//! intervals by propagating each linear constraint to a fixpoint. When
//! [`IlpConfig::lp_bounding`] is set, the LP relaxation of the node is solved
//! as well: an infeasible relaxation prunes the node, and the first
//! fractional variable of its solution is the branching variable, upper branch
//! first. Fractional nodes also try two rounding dives before branching.
//! Without a relaxation, variables are fixed in index order and values are
//! tried from low to high.
//!
//! A [`CutSeparator`] supplies constraints lazily. It is consulted for
//! integral candidates that satisfy everything known so far and, in LP mode,
//! for fractional relaxation optima; violated cuts join a global pool and the
//! node is searched again.

use std::fmt;

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{Error, Result};

/// Least violation for a fractional cut to be kept.
const CUT_EPS: f64 = 1e-6;

/// Largest absolute variable bound or coefficient accepted.
pub const VALUE_LIMIT: i64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// `Σ coeff · x_var  relation  rhs`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearConstraint {
    /// Merges repeated variables and drops zero coefficients.
    pub fn new(
        terms: impl IntoIterator<Item = (usize, i64)>,
        relation: Relation,
        rhs: i64,
    ) -> Self {
        let mut terms: Vec<(usize, i64)> = terms.into_iter().collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for (v, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|t| t.1 != 0);
        LinearConstraint {
            terms: merged,
            relation,
            rhs,
        }
    }

    pub fn dense(coeffs: &[i64], relation: Relation, rhs: i64) -> Self {
        Self::new(coeffs.iter().copied().enumerate(), relation, rhs)
    }

    pub fn activity(&self, x: &[i64]) -> i128 {
        self.terms
            .iter()
            .map(|&(v, c)| c as i128 * x[v] as i128)
            .sum()
    }

    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        let a = self.activity(x);
        let b = self.rhs as i128;
        match self.relation {
            Relation::Le => a <= b,
            Relation::Eq => a == b,
            Relation::Ge => a >= b,
        }
    }

    /// How far the real point `x` is from satisfying the constraint; zero or
    /// negative when it does.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let a: f64 = self.terms.iter().map(|&(v, c)| c as f64 * x[v]).sum();
        let b = self.rhs as f64;
        match self.relation {
            Relation::Le => a - b,
            Relation::Eq => (a - b).abs(),
            Relation::Ge => b - a,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpInstance {
    lower: Vec<i64>,
    upper: Vec<i64>,
    constraints: Vec<LinearConstraint>,
    names: Vec<String>,
}

impl IlpInstance {
    /// Creates an instance with variables `x_0 .. x_{p-1}` bounded by
    /// `lower[i] ≤ x_i ≤ upper[i]`.
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::arg("bound vectors differ in length"));
        }
        if let Some(i) =
            (0..lower.len()).find(|&i| lower[i].abs() > VALUE_LIMIT || upper[i].abs() > VALUE_LIMIT)
        {
            return Err(Error::arg(format!(
                "variable {i} is unbounded (|bound| > 2^40)"
            )));
        }
        let names = (0..lower.len()).map(|i| format!("x{i}")).collect();
        Ok(IlpInstance {
            lower,
            upper,
            constraints: Vec::new(),
            names,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.lower.len() {
            return Err(Error::arg("one name per variable is required"));
        }
        self.names = names;
        Ok(self)
    }

    pub fn add_constraint(&mut self, c: LinearConstraint) -> Result<()> {
        if let Some(&(v, _)) = c.terms.iter().find(|t| t.0 >= self.lower.len()) {
            return Err(Error::arg(format!("constraint uses unknown variable {v}")));
        }
        if c.rhs.abs() > VALUE_LIMIT || c.terms.iter().any(|t| t.1.abs() > VALUE_LIMIT) {
            return Err(Error::arg("constraint coefficient exceeds 2^40"));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn var_count(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Bounds and static constraints hold at `x`.
    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        x.len() == self.var_count()
            && x.iter()
                .enumerate()
                .all(|(i, &v)| self.lower[i] <= v && v <= self.upper[i])
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }
}

/// Plain-text listing in an LP-like syntax.
impl fmt::Display for IlpInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subject To")?;
        for (k, c) in self.constraints.iter().enumerate() {
            write!(f, " c{k}:")?;
            if c.terms.is_empty() {
                write!(f, " 0")?;
            }
            for (j, &(v, a)) in c.terms.iter().enumerate() {
                let sign = match (a < 0, j > 0) {
                    (true, _) => " -",
                    (false, true) => " +",
                    (false, false) => "",
                };
                let mag = a.abs();
                if mag == 1 {
                    write!(f, "{sign} {}", self.names[v])?;
                } else {
                    write!(f, "{sign} {mag} {}", self.names[v])?;
                }
            }
            writeln!(f, " {} {}", c.relation, c.rhs)?;
        }
        writeln!(f, "Bounds")?;
        for (i, name) in self.names.iter().enumerate() {
            writeln!(f, " {} <= {name} <= {}", self.lower[i], self.upper[i])?;
        }
        writeln!(f, "General")?;
        writeln!(f, " {}", self.names.join(" "))?;
        write!(f, "End")
    }
}

/// Source of lazily generated constraints.
pub trait CutSeparator {
    /// Constraints violated by the integral candidate `x`; empty if `x` is
    /// acceptable.
    fn separate(&mut self, x: &[i64]) -> Vec<LinearConstraint>;

    /// Constraints violated by a fractional LP optimum. Optional; only cuts
    /// that every integral solution satisfies may be returned.
    fn separate_fractional(&mut self, _x: &[f64]) -> Vec<LinearConstraint> {
        Vec::new()
    }
}

impl<F: FnMut(&[i64]) -> Vec<LinearConstraint>> CutSeparator for F {
    fn separate(&mut self, x: &[i64]) -> Vec<LinearConstraint> {
        self(x)
    }
}

pub struct NoCuts;

impl CutSeparator for NoCuts {
    fn separate(&mut self, _: &[i64]) -> Vec<LinearConstraint> {
        Vec::new()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IlpConfig {
    /// Search nodes allowed before giving up with [`Error::Budget`].
    pub node_budget: u64,
    /// Prune and branch with the LP relaxation.
    pub lp_bounding: bool,
}

impl Default for IlpConfig {
    fn default() -> Self {
        IlpConfig {
            node_budget: 1_000_000,
            lp_bounding: true,
        }
    }
}

pub type Assignment = Vec<i64>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub lp_solves: u64,
    pub cuts: usize,
}

pub fn feasible(inst: &IlpInstance, cfg: &IlpConfig) -> Result<Option<Assignment>> {
    feasible_with_cuts(inst, &mut NoCuts, cfg)
}

pub fn feasible_with_cuts(
    inst: &IlpInstance,
    separator: &mut dyn CutSeparator,
    cfg: &IlpConfig,
) -> Result<Option<Assignment>> {
    Ok(solve(inst, separator, cfg)?.0)
}

/// Like [`feasible_with_cuts`], also returning search statistics and the cut
/// pool in the order cuts were added.
pub fn solve(
    inst: &IlpInstance,
    separator: &mut dyn CutSeparator,
    cfg: &IlpConfig,
) -> Result<(Option<Assignment>, SolveStats, Vec<LinearConstraint>)> {
    log::debug!("ilp instance:\n{inst}");
    let mut search = Search {
        inst,
        pool: Vec::new(),
        stats: SolveStats::default(),
    };
    let mut stack = vec![(inst.lower.clone(), inst.upper.clone())];
    while let Some((mut lo, mut hi)) = stack.pop() {
        search.stats.nodes += 1;
        if search.stats.nodes > cfg.node_budget {
            return Err(Error::Budget(cfg.node_budget));
        }
        if !search.propagate(&mut lo, &mut hi) {
            continue;
        }
        let candidate = if cfg.lp_bounding && !lo.is_empty() {
            match search.relaxation(&lo, &hi) {
                Relaxed::Infeasible => continue,
                Relaxed::Integral(x) => Some(x),
                Relaxed::Fractional(v, value, values) => {
                    let cuts: Vec<LinearConstraint> = separator
                        .separate_fractional(&values)
                        .into_iter()
                        .filter(|c| c.violation(&values) > CUT_EPS)
                        .collect();
                    if !cuts.is_empty() {
                        search.stats.cuts += cuts.len();
                        search.pool.extend(cuts);
                        stack.push((lo, hi));
                        continue;
                    }
                    let mut found = search
                        .support_dive(&lo, &hi, &values)
                        .filter(|x| separator.separate(x).iter().all(|c| c.is_satisfied(x)));
                    if found.is_none() && search.stats.nodes.is_power_of_two() {
                        found = search.dive(separator, &lo, &hi);
                    }
                    if let Some(x) = found {
                        log::debug!("ilp feasible by diving after {:?}", search.stats);
                        return Ok((Some(x), search.stats, search.pool));
                    }
                    let split = value.floor() as i64;
                    let mut up_lo = lo.clone();
                    up_lo[v] = split + 1;
                    let up_hi = hi.clone();
                    hi[v] = split;
                    stack.push((lo, hi));
                    stack.push((up_lo, up_hi));
                    continue;
                }
                Relaxed::Unknown => None,
            }
        } else {
            None
        };
        let candidate = match candidate {
            Some(x) if search.is_feasible(&x) => x,
            _ => match (0..lo.len()).find(|&v| lo[v] < hi[v]) {
                Some(v) => {
                    let mut rest_lo = lo.clone();
                    rest_lo[v] += 1;
                    stack.push((rest_lo, hi.clone()));
                    hi[v] = lo[v];
                    stack.push((lo, hi));
                    continue;
                }
                None if search.is_feasible(&lo) => lo.clone(),
                None => continue,
            },
        };
        let cuts: Vec<LinearConstraint> = separator
            .separate(&candidate)
            .into_iter()
            .filter(|c| !c.is_satisfied(&candidate))
            .collect();
        if cuts.is_empty() {
            log::debug!("ilp feasible after {:?}", search.stats);
            return Ok((Some(candidate), search.stats, search.pool));
        }
        search.stats.cuts += cuts.len();
        search.pool.extend(cuts);
        stack.push((lo, hi));
    }
    log::debug!("ilp infeasible after {:?}", search.stats);
    Ok((None, search.stats, search.pool))
}

/// Minimum of `Σ objective_i x_i` over the LP relaxation of the static
/// constraints; `None` if the relaxation is infeasible or the LP solver fails.
pub fn relaxation_minimum(inst: &IlpInstance, objective: &[i64]) -> Result<Option<f64>> {
    if objective.len() != inst.var_count() {
        return Err(Error::arg("objective length differs from variable count"));
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = (0..inst.var_count())
        .map(|v| {
            lp.add_var(
                objective[v] as f64,
                (inst.lower[v] as f64, inst.upper[v] as f64),
            )
        })
        .collect();
    for c in &inst.constraints {
        add_lp_row(&mut lp, &vars, c);
    }
    Ok(match lp.solve() {
        Ok(outcome) => outcome.solution().map(|s| s.objective()),
        Err(_) => None,
    })
}

fn add_lp_row(lp: &mut Problem, vars: &[microlp::Variable], c: &LinearConstraint) {
    if c.terms.is_empty() {
        return;
    }
    let terms: Vec<_> = c.terms.iter().map(|&(v, a)| (vars[v], a as f64)).collect();
    let op = match c.relation {
        Relation::Le => ComparisonOp::Le,
        Relation::Eq => ComparisonOp::Eq,
        Relation::Ge => ComparisonOp::Ge,
    };
    lp.add_constraint(terms.as_slice(), op, c.rhs as f64);
}

enum Relaxed {
    Infeasible,
    Integral(Assignment),
    /// First fractional variable, its value, and the whole LP point.
    Fractional(usize, f64, Vec<f64>),
    Unknown,
}

struct Search<'a> {
    inst: &'a IlpInstance,
    pool: Vec<LinearConstraint>,
    stats: SolveStats,
}

impl Search<'_> {
    fn all_constraints(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.inst.constraints.iter().chain(self.pool.iter())
    }

    fn is_feasible(&self, x: &[i64]) -> bool {
        self.inst.is_satisfied(x) && self.pool.iter().all(|c| c.is_satisfied(x))
    }

    /// Interval propagation; false when some interval becomes empty.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        const ROUNDS: usize = 32;
        if (0..lo.len()).any(|v| lo[v] > hi[v]) {
            return false;
        }
        for _ in 0..ROUNDS {
            let mut changed = false;
            for c in self.all_constraints() {
                let (mut min_act, mut max_act) = (0i128, 0i128);
                for &(v, a) in &c.terms {
                    let (l, h) = (a as i128 * lo[v] as i128, a as i128 * hi[v] as i128);
                    min_act += l.min(h);
                    max_act += l.max(h);
                }
                let b = c.rhs as i128;
                let upper_side = matches!(c.relation, Relation::Le | Relation::Eq);
                let lower_side = matches!(c.relation, Relation::Ge | Relation::Eq);
                if (upper_side && min_act > b) || (lower_side && max_act < b) {
                    return false;
                }
                for &(v, a) in &c.terms {
                    let a128 = a as i128;
                    let (l, h) = (a128 * lo[v] as i128, a128 * hi[v] as i128);
                    let (own_min, own_max) = (l.min(h), l.max(h));
                    if upper_side {
                        // a x_v <= b - (min_act - own_min)
                        let slack = b - (min_act - own_min);
                        if a > 0 {
                            let bound = div_floor(slack, a128);
                            if bound < hi[v] as i128 {
                                hi[v] = bound.max(lo[v] as i128 - 1) as i64;
                                changed = true;
                            }
                        } else {
                            let bound = div_ceil(slack, a128);
                            if bound > lo[v] as i128 {
                                lo[v] = bound.min(hi[v] as i128 + 1) as i64;
                                changed = true;
                            }
                        }
                    }
                    if lower_side {
                        // a x_v >= b - (max_act - own_max)
                        let need = b - (max_act - own_max);
                        if a > 0 {
                            let bound = div_ceil(need, a128);
                            if bound > lo[v] as i128 {
                                lo[v] = bound.min(hi[v] as i128 + 1) as i64;
                                changed = true;
                            }
                        } else {
                            let bound = div_floor(need, a128);
                            if bound < hi[v] as i128 {
                                hi[v] = bound.max(lo[v] as i128 - 1) as i64;
                                changed = true;
                            }
                        }
                    }
                    if lo[v] > hi[v] {
                        return false;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        true
    }

    /// Fractional diving: repeatedly tighten the least fractional variable
    /// toward its nearest integer and re-solve, separating cuts on the way.
    /// Cuts found here are valid everywhere and stay in the pool.
    fn dive(
        &mut self,
        separator: &mut dyn CutSeparator,
        lo: &[i64],
        hi: &[i64],
    ) -> Option<Assignment> {
        let (mut lo, mut hi) = (lo.to_vec(), hi.to_vec());
        for _ in 0..2 * lo.len() + 16 {
            if !self.propagate(&mut lo, &mut hi) {
                return None;
            }
            match self.relaxation(&lo, &hi) {
                Relaxed::Infeasible | Relaxed::Unknown => return None,
                Relaxed::Integral(x) => {
                    if !self.is_feasible(&x) {
                        return None;
                    }
                    let cuts: Vec<LinearConstraint> = separator
                        .separate(&x)
                        .into_iter()
                        .filter(|c| !c.is_satisfied(&x))
                        .collect();
                    if cuts.is_empty() {
                        return Some(x);
                    }
                    self.stats.cuts += cuts.len();
                    self.pool.extend(cuts);
                }
                Relaxed::Fractional(_, _, values) => {
                    let cuts: Vec<LinearConstraint> = separator
                        .separate_fractional(&values)
                        .into_iter()
                        .filter(|c| c.violation(&values) > CUT_EPS)
                        .collect();
                    if !cuts.is_empty() {
                        self.stats.cuts += cuts.len();
                        self.pool.extend(cuts);
                        continue;
                    }
                    let frac = |v: usize| values[v] - values[v].floor();
                    let v = (0..values.len())
                        .filter(|&v| lo[v] < hi[v] && frac(v) > CUT_EPS && frac(v) < 1.0 - CUT_EPS)
                        .min_by(|&a, &b| {
                            let d = |v: usize| frac(v).min(1.0 - frac(v));
                            d(a).total_cmp(&d(b))
                        })?;
                    if frac(v) >= 0.5 {
                        lo[v] = values[v].ceil() as i64;
                    } else {
                        hi[v] = values[v].floor() as i64;
                    }
                }
            }
        }
        None
    }

    /// Rounding heuristic for non-negative variables: keep positive LP
    /// values at least one, zero the others, and re-solve.
    fn support_dive(&mut self, lo: &[i64], hi: &[i64], values: &[f64]) -> Option<Assignment> {
        let (mut lo, mut hi) = (lo.to_vec(), hi.to_vec());
        for v in 0..lo.len() {
            if lo[v] < 0 {
                continue;
            }
            if values[v] > CUT_EPS {
                lo[v] = lo[v].max(1).min(hi[v]);
            } else {
                hi[v] = lo[v];
            }
        }
        if !self.propagate(&mut lo, &mut hi) {
            return None;
        }
        match self.relaxation(&lo, &hi) {
            Relaxed::Integral(x) if self.is_feasible(&x) => Some(x),
            _ => None,
        }
    }

    /// Solves the relaxation maximizing the sum of the variables. Any
    /// objective is sound for feasibility; this one lands flow-type instances
    /// on saturated vertices, whose supports rarely violate cuts.
    fn relaxation(&mut self, lo: &[i64], hi: &[i64]) -> Relaxed {
        const EPS: f64 = 1e-6;
        self.stats.lp_solves += 1;
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let vars: Vec<_> = (0..lo.len())
            .map(|v| lp.add_var(1.0, (lo[v] as f64, hi[v] as f64)))
            .collect();
        for c in self.all_constraints() {
            add_lp_row(&mut lp, &vars, c);
        }
        let sol = match lp.solve() {
            Ok(outcome) => match outcome.into_solution() {
                Ok(sol) => sol,
                Err(_) => return Relaxed::Unknown,
            },
            Err(microlp::Error::Infeasible) => return Relaxed::Infeasible,
            Err(e) => {
                log::debug!("lp relaxation failed: {e:?}");
                return Relaxed::Unknown;
            }
        };
        let values: Vec<f64> = vars.iter().map(|&v| sol.var_value_raw(v)).collect();
        match (0..values.len()).find(|&v| (values[v] - values[v].round()).abs() > EPS) {
            Some(v)
                if lo[v] < hi[v]
                    && values[v].floor() >= lo[v] as f64
                    && values[v].floor() < hi[v] as f64 =>
            {
                Relaxed::Fractional(v, values[v], values.clone())
            }
            Some(_) => Relaxed::Unknown,
            None => Relaxed::Integral(
                values
                    .iter()
                    .enumerate()
                    .map(|(v, x)| (x.round() as i64).clamp(lo[v], hi[v]))
                    .collect(),
            ),
        }
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn grid_feasible(inst: &IlpInstance) -> bool {
        let p = inst.var_count();
        let mut x = inst.lower().to_vec();
        loop {
            if inst.is_satisfied(&x) {
                return true;
            }
            let mut i = 0;
            while i < p && x[i] == inst.upper()[i] {
                x[i] = inst.lower()[i];
                i += 1;
            }
            if i == p {
                return false;
            }
            x[i] += 1;
        }
    }

    #[test]
    fn division_rounding() {
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_floor(7, -2), -4);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_floor(6, 3), 2);
    }

    #[test]
    fn contradictory_bounds() {
        let mut inst = IlpInstance::new(vec![0], vec![5]).unwrap();
        inst.add_constraint(LinearConstraint::dense(&[1], Relation::Ge, 3))
            .unwrap();
        inst.add_constraint(LinearConstraint::dense(&[1], Relation::Le, 2))
            .unwrap();
        for lp in [false, true] {
            let cfg = IlpConfig {
                lp_bounding: lp,
                ..Default::default()
            };
            assert_eq!(feasible(&inst, &cfg).unwrap(), None);
        }
    }

    #[test]
    fn equality_pair() {
        let mut inst = IlpInstance::new(vec![1, 0], vec![2, 2]).unwrap();
        inst.add_constraint(LinearConstraint::dense(&[1, -1], Relation::Eq, 0))
            .unwrap();
        for lp in [false, true] {
            let cfg = IlpConfig {
                lp_bounding: lp,
                ..Default::default()
            };
            let x = feasible(&inst, &cfg).unwrap().unwrap();
            assert!(inst.is_satisfied(&x));
        }
        let cfg = IlpConfig {
            lp_bounding: false,
            ..Default::default()
        };
        assert_eq!(feasible(&inst, &cfg).unwrap(), Some(vec![1, 1]));
    }

    #[test]
    fn unbounded_is_an_argument_error() {
        assert!(IlpInstance::new(vec![0], vec![i64::MAX]).is_err());
        let mut inst = IlpInstance::new(vec![0], vec![1]).unwrap();
        assert!(inst
            .add_constraint(LinearConstraint::dense(&[1, 1], Relation::Le, 1))
            .is_err());
    }

    #[test]
    fn lazy_cuts_reach_fixpoint() {
        // x + y <= 1 is only revealed lazily; x, y in [0, 3].
        let inst = IlpInstance::new(vec![0, 0], vec![3, 3]).unwrap();
        let mut calls = 0;
        let mut sep = |x: &[i64]| {
            calls += 1;
            let c = LinearConstraint::dense(&[1, 1], Relation::Le, 1);
            if c.is_satisfied(x) {
                vec![]
            } else {
                vec![c]
            }
        };
        let (x, stats, pool) = solve(&inst, &mut sep, &IlpConfig::default()).unwrap();
        let x = x.unwrap();
        assert!(x[0] + x[1] <= 1);
        assert_eq!(pool.len(), 1);
        assert_eq!(stats.cuts, 1);
        assert!(calls >= 2);
    }

    #[test]
    fn node_budget() {
        // 2x = 2y + 1 has no integer solution; propagation alone cannot see it.
        let mut inst = IlpInstance::new(vec![0, 0], vec![1000, 1000]).unwrap();
        inst.add_constraint(LinearConstraint::dense(&[2, -2], Relation::Eq, 1))
            .unwrap();
        let cfg = IlpConfig {
            node_budget: 50,
            lp_bounding: false,
        };
        assert!(matches!(feasible(&inst, &cfg), Err(Error::Budget(50))));
    }

    #[test]
    fn display_listing() {
        let mut inst = IlpInstance::new(vec![0, 0], vec![2, 3]).unwrap();
        inst.add_constraint(LinearConstraint::dense(&[1, -2], Relation::Le, 1))
            .unwrap();
        let text = inst.to_string();
        assert!(text.contains("c0: x0 - 2 x1 <= 1"), "{text}");
        assert!(text.contains("0 <= x1 <= 3"));
    }

    #[test]
    fn agrees_with_grid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let p = rng.gen_range(1..=4);
            let lower: Vec<i64> = (0..p).map(|_| rng.gen_range(0..=2)).collect();
            let upper: Vec<i64> = lower.iter().map(|&l| l + rng.gen_range(0..=3)).collect();
            let mut inst = IlpInstance::new(lower, upper).unwrap();
            for _ in 0..rng.gen_range(0..=6) {
                let coeffs: Vec<i64> = (0..p).map(|_| rng.gen_range(-3..=3)).collect();
                let rel = [Relation::Le, Relation::Eq, Relation::Ge][rng.gen_range(0..3)];
                inst.add_constraint(LinearConstraint::dense(&coeffs, rel, rng.gen_range(-4..=8)))
                    .unwrap();
            }
            let want = grid_feasible(&inst);
            for lp in [false, true] {
                let cfg = IlpConfig {
                    lp_bounding: lp,
                    ..Default::default()
                };
                let got = feasible(&inst, &cfg).unwrap();
                assert_eq!(got.is_some(), want, "{inst}");
                if let Some(x) = got {
                    assert!(inst.is_satisfied(&x));
                }
            }
        }
    }
}
