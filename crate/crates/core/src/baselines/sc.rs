use crate::assignment::Assignment;
use crate::delay::DelayTable;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scenario::ScenarioInstance;

/// Proximity clustering: each vehicle claims its nearest RSU (lower index on
/// ties) and each RSU admits only its `min(k_a, N_a)` nearest claimants. The
/// rest run locally.
pub fn solve_sc<T: Scalar>(
    instance: &ScenarioInstance,
    table: &DelayTable<T>,
) -> Result<Assignment<T>> {
    if instance.num_vehicles() != table.num_vehicles() || instance.num_rsus() != table.num_rsus() {
        return Err(Error::Size(format!(
            "instance is {}x{} but the delay table is {}x{}",
            instance.num_vehicles(),
            instance.num_rsus(),
            table.num_vehicles(),
            table.num_rsus()
        )));
    }
    let mut claimants: Vec<Vec<(f64, usize)>> = vec![Vec::new(); instance.num_rsus()];
    for i in 0..instance.num_vehicles() {
        let mut nearest = (f64::INFINITY, 0);
        for r in 0..instance.num_rsus() {
            let d = instance.distance(i, r);
            if d < nearest.0 {
                nearest = (d, r);
            }
        }
        claimants[nearest.1].push((nearest.0, i));
    }
    let mut choice = vec![0; instance.num_vehicles()];
    for (r, list) in claimants.iter_mut().enumerate() {
        list.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        let limit = table.cpus(r + 1).min(table.capacity(r + 1));
        for &(_, i) in list.iter().take(limit) {
            choice[i] = r + 1;
        }
    }
    Ok(Assignment::with_delays(choice, table))
}
