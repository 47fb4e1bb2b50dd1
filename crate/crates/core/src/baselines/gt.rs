use crate::assignment::Assignment;
use crate::delay::DelayTable;
use crate::scalar::Scalar;

/// Output of best-response dynamics.
#[derive(Debug, Clone)]
pub struct GtOutcome<T> {
    pub assignment: Assignment<T>,
    pub rounds: usize,
    /// True when the final round moved nobody.
    pub equilibrium: bool,
}

/// Cheapest server for vehicle `i` given everyone else's choices, or `None`
/// when staying put is already at least as good. Only servers with room are
/// considered.
fn best_response<T: Scalar>(table: &DelayTable<T>, asg: &Assignment<T>, i: usize) -> Option<usize> {
    let cur = asg.choice[i];
    let mut best = (cur, table.clamped(i, cur, asg.counts[cur]));
    for b in 0..table.num_servers() {
        if b == cur {
            continue;
        }
        let n = asg.counts[b] + 1;
        if b != 0 && n > table.capacity(b) {
            continue;
        }
        let cost = table.clamped(i, b, n);
        if cost < best.1 {
            best = (b, cost);
        }
    }
    (best.0 != cur).then_some(best.0)
}

/// Round-robin best-response dynamics starting from all-local.
pub fn solve_gt<T: Scalar>(table: &DelayTable<T>, max_rounds: usize) -> GtOutcome<T> {
    let mut asg = Assignment::from_choices(vec![0; table.num_vehicles()], table.num_servers());
    let mut rounds = 0;
    let mut equilibrium = false;
    while rounds < max_rounds {
        rounds += 1;
        let mut moved = false;
        for i in 0..table.num_vehicles() {
            if let Some(b) = best_response(table, &asg, i) {
                asg.reassign(i, b);
                moved = true;
            }
        }
        if !moved {
            equilibrium = true;
            break;
        }
    }
    asg.metrics = table.realized_clamped(&asg);
    GtOutcome {
        assignment: asg,
        rounds,
        equilibrium,
    }
}

/// True when no vehicle can lower its own clamped delay by a unilateral,
/// capacity-respecting move.
pub fn is_nash<T: Scalar>(table: &DelayTable<T>, asg: &Assignment<T>) -> bool {
    (0..table.num_vehicles()).all(|i| best_response(table, asg, i).is_none())
}
