use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::delay::DelayTable;
use crate::scalar::Scalar;

/// Sorted realized clamped delays paired with empirical cumulative fractions `k/V`.
pub fn delay_cdf<T: Scalar>(table: &DelayTable<T>, assignment: &Assignment<T>) -> Vec<(f64, f64)> {
    let mut d: Vec<f64> = table
        .realized_clamped(assignment)
        .into_iter()
        .map(Scalar::as_f64)
        .collect();
    d.sort_by(f64::total_cmp);
    let v = d.len() as f64;
    d.into_iter()
        .enumerate()
        .map(|(k, x)| (x, (k + 1) as f64 / v))
        .collect()
}

/// Fraction of RSUs holding more tasks than CPUs.
pub fn overload_ratio<T: Scalar>(table: &DelayTable<T>, assignment: &Assignment<T>) -> f64 {
    let a = table.num_rsus();
    if a == 0 {
        return 0.0;
    }
    let over = (1..=a)
        .filter(|&s| assignment.counts[s] > table.cpus(s))
        .count();
    over as f64 / a as f64
}

/// Fraction of vehicles whose raw delay exceeds their deadline.
pub fn outage_probability<T: Scalar>(table: &DelayTable<T>, assignment: &Assignment<T>) -> f64 {
    let v = table.num_vehicles();
    if v == 0 {
        return 0.0;
    }
    let late = table
        .realized_raw(assignment)
        .iter()
        .enumerate()
        .filter(|&(i, &r)| r > table.deadline(i))
        .count();
    late as f64 / v as f64
}

/// Mean clamped delay if every vehicle computed locally.
pub fn mean_local_delay<T: Scalar>(table: &DelayTable<T>) -> f64 {
    let v = table.num_vehicles();
    (0..v).map(|i| table.clamped(i, 0, 1).as_f64()).sum::<f64>() / v.max(1) as f64
}

/// RSU counts by load: light `n < k`, moderate `k <= n <= 1.5k`, busy `n > 1.5k`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadClasses {
    pub light: usize,
    pub moderate: usize,
    pub busy: usize,
}

pub fn load_classes<T: Scalar>(table: &DelayTable<T>, assignment: &Assignment<T>) -> LoadClasses {
    let mut out = LoadClasses::default();
    for a in 1..table.num_servers() {
        let (n, k) = (assignment.counts[a], table.cpus(a));
        if n < k {
            out.light += 1;
        } else if 2 * n <= 3 * k {
            out.moderate += 1;
        } else {
            out.busy += 1;
        }
    }
    out
}
