//! Projected subgradient method with diminishing step sizes, best-iterate
//! tracking, bounded-memory convergence history, and a convergence-bound
//! certificate.

use thiserror::Error;

use crate::convex_set::DEFAULT_TOL;
use crate::problem::{subgradient_norm_bound, Configuration, ProblemError, ProblemInstance, SetRole};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("infeasible starting configuration: {source}")]
    InfeasibleStart { source: ProblemError },
    #[error("objective or subgradient became non-finite at iteration {iteration}")]
    NumericFailure { iteration: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("convergence bound needs a diminishing step schedule")]
    NotDiminishing,
    #[error("convergence bound needs bounded sets, but {role} set {index} is unbounded")]
    UnboundedSet { role: SetRole, index: usize },
}

/// Step-size schedule, indexed from `t = 1`.
///
/// `InverseT` and `InverseTScaled` are diminishing (their sums diverge while
/// their squared sums converge); `Constant` is provided for experiments and
/// is not convergent in general.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepSchedule {
    /// `alpha_t = 1 / t`.
    InverseT,
    /// `alpha_t = c / t`.
    InverseTScaled { scale: f64 },
    /// `alpha_t = a` for every `t`.
    Constant { alpha: f64 },
}

impl StepSchedule {
    pub fn inverse_t_scaled(scale: f64) -> Result<Self, SolverError> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "step scale must be positive and finite, got {scale}"
            )));
        }
        Ok(StepSchedule::InverseTScaled { scale })
    }

    pub fn constant(alpha: f64) -> Result<Self, SolverError> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "constant step must be positive and finite, got {alpha}"
            )));
        }
        Ok(StepSchedule::Constant { alpha })
    }

    /// Step size at iteration `t >= 1`.
    pub fn alpha(&self, t: usize) -> f64 {
        debug_assert!(t >= 1);
        match self {
            StepSchedule::InverseT => 1.0 / t as f64,
            StepSchedule::InverseTScaled { scale } => scale / t as f64,
            StepSchedule::Constant { alpha } => *alpha,
        }
    }

    pub fn is_diminishing(&self) -> bool {
        !matches!(self, StepSchedule::Constant { .. })
    }
}

/// Stop when the objective change drops below `epsilon`, or at `max_iters`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StoppingRule {
    pub epsilon: f64,
    pub max_iters: usize,
}

impl StoppingRule {
    pub fn new(epsilon: f64, max_iters: usize) -> Result<Self, SolverError> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(SolverError::InvalidParameter(format!(
                "epsilon must be nonnegative and finite, got {epsilon}"
            )));
        }
        if max_iters == 0 {
            return Err(SolverError::InvalidParameter("max_iters must be at least 1".into()));
        }
        Ok(Self { epsilon, max_iters })
    }
}

impl Default for StoppingRule {
    fn default() -> Self {
        Self { epsilon: 1e-15, max_iters: 1_000_000 }
    }
}

/// Which iterations get a history row. Iteration 1 and the final iteration
/// are always recorded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HistoryPolicy {
    /// Every iteration up to 100, then multiples of a tenth of the current
    /// decade (110, 120, ..., 1000, 1100, ...). Keeps memory logarithmic in
    /// the iteration count while hitting the usual checkpoints 1, 10, 100,
    /// 500, 1e3, 1e4, 5e4, 1e5, ...
    LogThinned,
    /// Every `n`-th iteration.
    EveryN(usize),
}

impl HistoryPolicy {
    fn records(&self, t: usize) -> bool {
        match self {
            HistoryPolicy::LogThinned => {
                if t <= 100 {
                    return true;
                }
                let mut decade = 1usize;
                while decade <= t / 10 {
                    decade *= 10;
                }
                t % (decade / 10) == 0
            }
            HistoryPolicy::EveryN(n) => t == 1 || (*n > 0 && t % n == 0),
        }
    }
}

impl Default for HistoryPolicy {
    fn default() -> Self {
        HistoryPolicy::LogThinned
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistoryEntry {
    pub iteration: usize,
    pub objective: f64,
    /// `| F^(t) - F^(t-1) |`.
    pub delta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Tolerance,
    MaxIters,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub schedule: StepSchedule,
    pub stop: StoppingRule,
    pub history: HistoryPolicy,
    /// Accept a starting configuration outside the feasible product set.
    /// The first update projects blockwise, so iterates from `t = 1` onward
    /// are always feasible; an infeasible start is excluded from best-iterate
    /// tracking. Off by default: infeasible starts are a precondition error.
    pub allow_infeasible_start: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            schedule: StepSchedule::InverseT,
            stop: StoppingRule::default(),
            history: HistoryPolicy::default(),
            allow_infeasible_start: false,
        }
    }
}

/// Outcome of a solver run.
#[derive(Clone, Debug)]
pub struct SolverRun {
    /// The last iterate.
    pub final_config: Configuration,
    /// The feasible iterate with the lowest objective seen.
    pub best: Configuration,
    pub best_value: f64,
    /// Number of update steps performed.
    pub iterations: usize,
    pub history: Vec<HistoryEntry>,
    pub stop_reason: StopReason,
    /// Whether the starting configuration violated feasibility at `1e-9`.
    pub infeasible_start: bool,
}

/// Run the projected subgradient iteration
/// `Z_{t+1} = proj_A(Z_t - alpha_t g_t)` from `z0` until the objective change
/// drops below the stopping tolerance or the iteration cap is reached.
pub fn solve(
    inst: &ProblemInstance,
    z0: &Configuration,
    opts: &SolveOptions,
) -> Result<SolverRun, SolverError> {
    inst.check_shape(z0)?;
    let infeasible_start = match inst.check_feasible(z0, DEFAULT_TOL) {
        Ok(()) => false,
        Err(source) => {
            if !opts.allow_infeasible_start {
                return Err(SolverError::InfeasibleStart { source });
            }
            true
        }
    };

    let mut current = z0.clone();
    let mut f_prev = inst.objective(&current)?;
    if !f_prev.is_finite() {
        return Err(SolverError::NumericFailure { iteration: 0 });
    }
    let (mut best, mut best_value) = if infeasible_start {
        (None, f64::INFINITY)
    } else {
        (Some(current.clone()), f_prev)
    };

    let mut history: Vec<HistoryEntry> = Vec::new();
    let mut iterations = 0;
    let mut stop_reason = StopReason::MaxIters;

    for t in 1..=opts.stop.max_iters {
        iterations = t;
        current = update(inst, &current, opts.schedule.alpha(t), t)?;
        let f = inst.objective(&current)?;
        if !f.is_finite() {
            return Err(SolverError::NumericFailure { iteration: t });
        }
        if f < best_value {
            best_value = f;
            best = Some(current.clone());
        }
        let delta = (f - f_prev).abs();
        if opts.history.records(t) {
            history.push(HistoryEntry { iteration: t, objective: f, delta });
        }
        if delta < opts.stop.epsilon {
            stop_reason = StopReason::Tolerance;
            if history.last().map_or(true, |e| e.iteration != t) {
                history.push(HistoryEntry { iteration: t, objective: f, delta });
            }
            break;
        }
        f_prev = f;
    }

    if let Some(last) = history.last() {
        if last.iteration != iterations {
            let f = inst.objective(&current)?;
            history.push(HistoryEntry { iteration: iterations, objective: f, delta: (f - f_prev).abs() });
        }
    }

    let best = best.expect("max_iters >= 1 guarantees at least one feasible iterate");
    Ok(SolverRun {
        final_config: current,
        best,
        best_value,
        iterations,
        history,
        stop_reason,
        infeasible_start,
    })
}

/// One projected subgradient update with step size `alpha >= 0`. A zero step
/// reduces to the blockwise projection of `z`.
pub fn step(
    inst: &ProblemInstance,
    z: &Configuration,
    alpha: f64,
) -> Result<Configuration, SolverError> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(SolverError::InvalidParameter(format!(
            "step size must be nonnegative and finite, got {alpha}"
        )));
    }
    update(inst, z, alpha, 0)
}

fn update(
    inst: &ProblemInstance,
    z: &Configuration,
    alpha: f64,
    iteration: usize,
) -> Result<Configuration, SolverError> {
    let g = inst.subgradient(z)?;
    if !g.is_finite() {
        return Err(SolverError::NumericFailure { iteration });
    }
    let xs = z.xs().iter().zip(g.gxs()).map(|(p, gp)| p.add_scaled(gp, -alpha)).collect();
    let ys = z.ys().iter().zip(g.gys()).map(|(p, gp)| p.add_scaled(gp, -alpha)).collect();
    Ok(inst.project_blockwise(&Configuration::new(xs, ys))?)
}

/// A convergence-bound certificate for a finished budgeted run.
#[derive(Clone, Copy, Debug)]
pub struct ConvergenceCertificate {
    /// The a-priori bound `(R^2 + G^2 * sum alpha_t^2) / (2 * sum alpha_t)`
    /// on the best-iterate gap after `N` steps, with `R^2` the summed squared
    /// set diameters and `G` the uniform subgradient norm bound.
    pub bound: f64,
    /// `F_best^(N) - reference_value` realized by the actual run.
    pub realized_gap: f64,
    pub iterations: usize,
}

impl ConvergenceCertificate {
    pub fn holds(&self) -> bool {
        self.realized_gap <= self.bound
    }
}

/// Run `n` iterations from `z0` and compare the realized best-iterate gap
/// against the a-priori bound. `reference_value` is the known optimal value
/// of the instance. Requires a diminishing schedule and bounded sets.
pub fn certify_convergence_bound(
    inst: &ProblemInstance,
    z0: &Configuration,
    reference_value: f64,
    schedule: StepSchedule,
    n: usize,
) -> Result<ConvergenceCertificate, SolverError> {
    if !schedule.is_diminishing() {
        return Err(SolverError::NotDiminishing);
    }
    if n == 0 {
        return Err(SolverError::InvalidParameter("iteration budget must be at least 1".into()));
    }
    let mut radius_sq = 0.0;
    for (role, sets) in [(SetRole::Feasible, inst.feasible()), (SetRole::Target, inst.targets())] {
        for (index, set) in sets.iter().enumerate() {
            let d = set.diameter().ok_or(SolverError::UnboundedSet { role, index })?;
            radius_sq += d * d;
        }
    }
    let g = subgradient_norm_bound(inst.k(), inst.m());
    let mut sum_alpha = 0.0;
    let mut sum_alpha_sq = 0.0;
    for t in 1..=n {
        let a = schedule.alpha(t);
        sum_alpha += a;
        sum_alpha_sq += a * a;
    }
    let bound = (radius_sq + g * g * sum_alpha_sq) / (2.0 * sum_alpha);

    let opts = SolveOptions {
        schedule,
        stop: StoppingRule::new(0.0, n)?,
        history: HistoryPolicy::EveryN(n),
        allow_infeasible_start: false,
    };
    let run = solve(inst, z0, &opts)?;
    Ok(ConvergenceCertificate {
        bound,
        realized_gap: run.best_value - reference_value,
        iterations: run.iterations,
    })
}
