//! Message state and the per-edge update rules of the min-sum solver.
//!
//! Messages are scalar cost differences `mu(x=1) - mu(x=0)` on the edge
//! between association variable `x_ia` and its two factors. The vehicle-side
//! variable-to-factor messages equal the factor-to-variable messages from the
//! other side, so only `alpha` (RSU factor to variable) and `rho` (variable to
//! RSU factor) are stored.

use rayon::prelude::*;

use crate::delay::DelayTable;
use crate::error::{Error, Result};
use crate::scalar::{argmin, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct MessageState<T> {
    num_vehicles: usize,
    num_servers: usize,
    /// Row-major `V x (A+1)`.
    pub alpha: Vec<T>,
    pub rho: Vec<T>,
    pub iteration: usize,
}

impl<T: Scalar> MessageState<T> {
    /// All-zero messages.
    pub fn zeros(num_vehicles: usize, num_servers: usize) -> Self {
        Self {
            num_vehicles,
            num_servers,
            alpha: vec![T::zero(); num_vehicles * num_servers],
            rho: vec![T::zero(); num_vehicles * num_servers],
            iteration: 0,
        }
    }

    /// Builds a state from explicit row-major matrices.
    pub fn from_matrices(num_servers: usize, alpha: Vec<T>, rho: Vec<T>) -> Result<Self> {
        if num_servers < 2 || alpha.len() != rho.len() || !alpha.len().is_multiple_of(num_servers) {
            return Err(Error::config(
                "messages",
                "alpha and rho must both be V x S with S >= 2",
            ));
        }
        Ok(Self {
            num_vehicles: alpha.len() / num_servers,
            num_servers,
            alpha,
            rho,
            iteration: 0,
        })
    }

    /// Starting point of a run: `rho = 0` and `alpha` computed from it.
    pub fn initial(table: &DelayTable<T>) -> Self {
        let mut state = Self::zeros(table.num_vehicles(), table.num_servers());
        state.alpha = alpha_phase(table, &state.rho, false).0;
        state
    }

    pub fn num_vehicles(&self) -> usize {
        self.num_vehicles
    }

    pub fn num_servers(&self) -> usize {
        self.num_servers
    }

    #[inline]
    pub fn alpha(&self, i: usize, a: usize) -> T {
        self.alpha[i * self.num_servers + a]
    }

    #[inline]
    pub fn rho(&self, i: usize, a: usize) -> T {
        self.rho[i * self.num_servers + a]
    }

    pub fn alpha_row(&self, i: usize) -> &[T] {
        &self.alpha[i * self.num_servers..(i + 1) * self.num_servers]
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.iter().chain(&self.rho).all(|v| v.is_finite())
    }
}

/// Vehicle-side update: `rho_ia = -min_{j != a} alpha_ij`.
pub fn update_rho<T: Scalar>(state: &MessageState<T>, i: usize, a: usize) -> T {
    let row = state.alpha_row(i);
    let best = row
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != a)
        .map(|(_, &v)| v)
        .fold(T::infinity(), T::min);
    -best
}

/// Computes every `rho` from `alpha` at once (min and second-min per row).
pub fn rho_phase<T: Scalar>(alpha: &[T], num_servers: usize) -> Vec<T> {
    let mut rho = vec![T::zero(); alpha.len()];
    for (row, out) in alpha
        .chunks_exact(num_servers)
        .zip(rho.chunks_exact_mut(num_servers))
    {
        let mut first = (usize::MAX, T::infinity());
        let mut second = T::infinity();
        for (j, &v) in row.iter().enumerate() {
            if v < first.1 {
                second = first.1;
                first = (j, v);
            } else if v < second {
                second = v;
            }
        }
        for (a, slot) in out.iter_mut().enumerate() {
            *slot = -if a == first.0 { second } else { first.1 };
        }
    }
    rho
}

/// RSU-side cost estimate for vehicle `i` at RSU `a`, with `b = 1` if `i` joins.
///
/// Minimum over loads `n` of `b * T_ia(n)` plus the `n - b` cheapest values of
/// `T_ja(n) + rho_ja` among the other vehicles. Loads needing more vehicles
/// than exist are skipped; `+inf` if none remain.
pub fn compute_psi<T: Scalar>(
    table: &DelayTable<T>,
    state: &MessageState<T>,
    i: usize,
    a: usize,
    joins: bool,
) -> Result<T> {
    if a == 0 {
        return Err(Error::Domain(
            "local execution has no RSU cost function".into(),
        ));
    }
    if a >= table.num_servers() || i >= table.num_vehicles() {
        return Err(Error::Index(format!("pair ({i}, {a}) outside the table")));
    }
    let b = usize::from(joins);
    let others = table.num_vehicles() - 1;
    let mut best = T::infinity();
    let mut vals = Vec::with_capacity(others);
    for n in 1..=table.capacity(a) {
        let need = n - b;
        if need > others {
            continue;
        }
        vals.clear();
        vals.extend(
            (0..table.num_vehicles())
                .filter(|&j| j != i)
                .map(|j| table.clamped(j, a, n) + state.rho(j, a)),
        );
        vals.sort_by(|x, y| x.partial_cmp(y).expect("finite messages"));
        let mut cost: T = vals[..need].iter().copied().sum();
        if joins {
            cost = cost + table.clamped(i, a, n);
        }
        best = best.min(cost);
    }
    Ok(best)
}

/// RSU-to-vehicle update: `alpha_ia = psi_ia(1) - min(0, psi_ia(0))`.
///
/// The local column carries the vehicle's clamped local delay.
pub fn update_alpha<T: Scalar>(
    table: &DelayTable<T>,
    state: &MessageState<T>,
    i: usize,
    a: usize,
) -> Result<T> {
    if a == 0 {
        return Ok(table.clamped(i, 0, 1));
    }
    let joined = compute_psi(table, state, i, a, true)?;
    let stayed = compute_psi(table, state, i, a, false)?;
    Ok(joined - stayed.min(T::zero()))
}

/// All alpha messages of RSU `a` in one pass: one sort per candidate load.
///
/// Returns the column and the number of elementary operations spent
/// (comparisons in the sorts plus linear passes).
pub(crate) fn alpha_column<T: Scalar>(table: &DelayTable<T>, rho: &[T], a: usize) -> (Vec<T>, u64) {
    let v = table.num_vehicles();
    let s = table.num_servers();
    let mut joined = vec![T::infinity(); v];
    let mut stayed = vec![T::infinity(); v];
    let mut vals = vec![T::zero(); v];
    let mut order: Vec<usize> = (0..v).collect();
    let mut pos = vec![0usize; v];
    let mut prefix = vec![T::zero(); v + 1];
    let mut ops = 0u64;

    for n in 1..=table.capacity(a) {
        for (j, val) in vals.iter_mut().enumerate() {
            *val = table.clamped(j, a, n) + rho[j * s + a];
        }
        order.iter_mut().enumerate().for_each(|(k, o)| *o = k);
        let mut comparisons = 0u64;
        order.sort_by(|&x, &y| {
            comparisons += 1;
            vals[x]
                .partial_cmp(&vals[y])
                .expect("finite messages")
                .then(x.cmp(&y))
        });
        for (rank, &j) in order.iter().enumerate() {
            pos[j] = rank;
            prefix[rank + 1] = prefix[rank] + vals[j];
        }
        // Sum of the m smallest values among vehicles other than i.
        let excluding = |i: usize, m: usize| -> T {
            if pos[i] < m {
                prefix[m + 1] - vals[i]
            } else {
                prefix[m]
            }
        };
        for i in 0..v {
            if n - 1 < v {
                let c = table.clamped(i, a, n) + excluding(i, n - 1);
                joined[i] = joined[i].min(c);
            }
            if n < v {
                stayed[i] = stayed[i].min(excluding(i, n));
            }
        }
        ops += comparisons + 3 * v as u64;
    }
    let column = joined
        .into_iter()
        .zip(stayed)
        .map(|(j, s)| j - s.min(T::zero()))
        .collect();
    (column, ops)
}

/// Recomputes every alpha message from `rho`.
pub(crate) fn alpha_phase<T: Scalar>(
    table: &DelayTable<T>,
    rho: &[T],
    parallel: bool,
) -> (Vec<T>, u64) {
    let v = table.num_vehicles();
    let s = table.num_servers();
    let columns: Vec<(Vec<T>, u64)> = if parallel {
        (1..s)
            .into_par_iter()
            .map(|a| alpha_column(table, rho, a))
            .collect()
    } else {
        (1..s).map(|a| alpha_column(table, rho, a)).collect()
    };
    let mut alpha = vec![T::zero(); v * s];
    for i in 0..v {
        alpha[i * s] = table.clamped(i, 0, 1);
    }
    let mut ops = 0;
    for (idx, (col, col_ops)) in columns.into_iter().enumerate() {
        let a = idx + 1;
        for (i, val) in col.into_iter().enumerate() {
            alpha[i * s + a] = val;
        }
        ops += col_ops;
    }
    (alpha, ops)
}

/// Decision metrics `p_ia = alpha_ia + rho_ia`, row-major like the state.
pub fn decision_metrics<T: Scalar>(state: &MessageState<T>) -> Vec<Vec<T>> {
    state
        .alpha
        .chunks_exact(state.num_servers)
        .zip(state.rho.chunks_exact(state.num_servers))
        .map(|(a, r)| a.iter().zip(r).map(|(&x, &y)| x + y).collect())
        .collect()
}

/// Each vehicle's preferred server: argmin of its metric row, lowest index on ties.
pub fn preferred_servers<T: Scalar>(metrics: &[Vec<T>]) -> Vec<usize> {
    metrics
        .iter()
        .map(|row| argmin(row).expect("at least two servers"))
        .collect()
}
