use serde::{Deserialize, Serialize};

use super::messages::{alpha_phase, decision_metrics, preferred_servers, rho_phase, MessageState};
use crate::assignment::Assignment;
use crate::delay::{objective_value, DelayTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub max_iterations: usize,
    /// Stop once the largest absolute message change drops below this.
    pub tolerance: f64,
    /// `new = damping * old + (1 - damping) * computed`. Zero disables damping.
    pub damping: f64,
    /// Compute the RSU columns of each alpha phase on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 15,
            tolerance: 1e-9,
            damping: 0.0,
            parallel: false,
        }
    }
}

impl SolverConfig {
    pub fn from_scenario(config: &ScenarioConfig) -> Self {
        Self {
            max_iterations: config.max_iterations,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::config("solver.max_iterations", "must be at least 1"));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::config("solver.tolerance", "must be >= 0"));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::config("solver.damping", "must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// Per-iteration record of a solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    /// Objective of the (repaired) assignment extracted after each iteration.
    pub objective: Vec<f64>,
    pub max_delta: Vec<f64>,
    /// Elementary operations spent in each iteration's alpha phase.
    pub work: Vec<u64>,
    pub converged: bool,
    pub iterations: usize,
    /// Vehicles moved by the final capacity repair.
    pub repairs: usize,
}

impl ConvergenceTrace {
    /// `iteration,objective,max_delta` rows, iterations counted from 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,objective,max_delta\n");
        for (t, (obj, d)) in self.objective.iter().zip(&self.max_delta).enumerate() {
            out.push_str(&format!("{},{obj},{d}\n", t + 1));
        }
        out
    }
}

fn damp<T: Scalar>(old: &[T], new: &mut [T], damping: T) {
    if damping > T::zero() {
        let keep = T::one() - damping;
        for (n, &o) in new.iter_mut().zip(old) {
            *n = damping * o + keep * *n;
        }
    }
}

fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs())
        .fold(T::zero(), T::max)
}

/// One synchronous iteration: all rho from alpha, then all alpha from the new rho.
///
/// Returns the largest absolute change over both matrices and the work spent.
pub fn step<T: Scalar>(
    table: &DelayTable<T>,
    state: &mut MessageState<T>,
    config: &SolverConfig,
) -> (T, u64) {
    let s = state.num_servers();
    let damping = T::lit(config.damping);
    let mut rho = rho_phase(&state.alpha, s);
    damp(&state.rho, &mut rho, damping);
    let (mut alpha, work) = alpha_phase(table, &rho, config.parallel);
    damp(&state.alpha, &mut alpha, damping);
    let delta = max_abs_diff(&alpha, &state.alpha).max(max_abs_diff(&rho, &state.rho));
    state.alpha = alpha;
    state.rho = rho;
    state.iteration += 1;
    (delta, work)
}

/// Reads the assignment off the messages and repairs any admission overflow.
pub fn extract<T: Scalar>(
    table: &DelayTable<T>,
    state: &MessageState<T>,
) -> (Assignment<T>, usize) {
    let metrics = decision_metrics(state);
    let choice = preferred_servers(&metrics);
    let mut asg = Assignment::from_choices(choice, table.num_servers());
    asg.metrics = asg
        .choice
        .iter()
        .enumerate()
        .map(|(i, &a)| metrics[i][a])
        .collect();
    repair_capacity(table, asg, &metrics)
}

/// Runs the message-passing solver from `rho = 0`.
pub fn run<T: Scalar>(
    table: &DelayTable<T>,
    config: &SolverConfig,
) -> Result<(Assignment<T>, ConvergenceTrace)> {
    run_from(table, config, MessageState::initial(table)).map(|(asg, trace, _)| (asg, trace))
}

/// Runs the solver from an explicit starting state and also returns the final messages.
pub fn run_from<T: Scalar>(
    table: &DelayTable<T>,
    config: &SolverConfig,
    mut state: MessageState<T>,
) -> Result<(Assignment<T>, ConvergenceTrace, MessageState<T>)> {
    config.validate()?;
    if state.num_vehicles() != table.num_vehicles() || state.num_servers() != table.num_servers() {
        return Err(Error::config(
            "messages",
            "state shape does not match the delay table",
        ));
    }
    let tol = T::lit(config.tolerance);
    let mut trace = ConvergenceTrace {
        objective: Vec::with_capacity(config.max_iterations),
        max_delta: Vec::with_capacity(config.max_iterations),
        work: Vec::with_capacity(config.max_iterations),
        converged: false,
        iterations: 0,
        repairs: 0,
    };
    let mut last = None;
    for _ in 0..config.max_iterations {
        let (delta, work) = step(table, &mut state, config);
        let (asg, repairs) = extract(table, &state);
        trace.objective.push(objective_value(table, &asg)?.as_f64());
        trace.max_delta.push(delta.as_f64());
        trace.work.push(work);
        trace.iterations += 1;
        last = Some((asg, repairs));
        if delta < tol {
            trace.converged = true;
            break;
        }
    }
    let (asg, repairs) = last.expect("at least one iteration");
    trace.repairs = repairs;
    Ok((asg, trace, state))
}

/// Moves vehicles off RSUs loaded beyond their admission limit.
///
/// While an RSU is over its limit, the vehicle there with the largest metric
/// (lowest index on ties) moves to the server with the smallest `scores[i][b]`
/// among those with room; local execution always has room. Returns the
/// repaired assignment and the number of moves.
pub fn repair_capacity<T: Scalar>(
    table: &DelayTable<T>,
    mut assignment: Assignment<T>,
    scores: &[Vec<T>],
) -> (Assignment<T>, usize) {
    let mut moves = 0;
    for a in 1..table.num_servers() {
        while assignment.counts[a] > table.capacity(a) {
            let mut victim: Option<(usize, T)> = None;
            for (i, (&c, &m)) in assignment
                .choice
                .iter()
                .zip(&assignment.metrics)
                .enumerate()
            {
                if c == a && victim.is_none_or(|(_, best)| m > best) {
                    victim = Some((i, m));
                }
            }
            let (i, _) = victim.expect("overloaded server has members");
            let target = (0..table.num_servers())
                .filter(|&b| b != a && (b == 0 || assignment.counts[b] < table.capacity(b)))
                .fold(None::<(usize, T)>, |best, b| match best {
                    Some((_, s)) if !(scores[i][b] < s) => best,
                    _ => Some((b, scores[i][b])),
                })
                .map(|(b, _)| b)
                .unwrap_or(0);
            assignment.reassign(i, target);
            assignment.metrics[i] = scores[i][target];
            moves += 1;
        }
    }
    (assignment, moves)
}
