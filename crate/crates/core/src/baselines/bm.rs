use crate::assignment::Assignment;
use crate::delay::DelayTable;
use crate::mp::repair_capacity;
use crate::scalar::{argmin, Scalar};

/// Greedy minimum-delay association at unit load, then overflow rebalancing.
///
/// Every vehicle first takes the server with the smallest `T_ia(1)` (local
/// included). Where an RSU exceeds its limit, the vehicles with the largest
/// delay there move to their next-best server with room, local as fallback.
/// Returns the assignment and the number of reassignments.
pub fn solve_bm<T: Scalar>(table: &DelayTable<T>) -> (Assignment<T>, usize) {
    let scores: Vec<Vec<T>> = (0..table.num_vehicles())
        .map(|i| {
            (0..table.num_servers())
                .map(|a| table.clamped(i, a, 1))
                .collect()
        })
        .collect();
    let choice: Vec<usize> = scores.iter().map(|row| argmin(row).unwrap_or(0)).collect();
    let mut asg = Assignment::from_choices(choice, table.num_servers());
    asg.metrics = asg
        .choice
        .iter()
        .enumerate()
        .map(|(i, &a)| scores[i][a])
        .collect();
    let (mut asg, moves) = repair_capacity(table, asg, &scores);
    asg.metrics = table.realized_clamped(&asg);
    (asg, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delay::ServerSpec;

    fn table(capacity: [usize; 2]) -> DelayTable<f64> {
        // Vehicle delays at n=1: RSU 1 best for all, RSU 2 second, local worst.
        DelayTable::from_components(
            vec![5.0; 3],
            vec![1.0, 1.1, 1.2],
            vec![
                ServerSpec {
                    cpus: 4,
                    capacity: capacity[0],
                },
                ServerSpec {
                    cpus: 4,
                    capacity: capacity[1],
                },
            ],
            &[vec![0.1, 0.3], vec![0.2, 0.3], vec![0.3, 0.4]],
            &[vec![0.0, 0.0], vec![0.0, 0.0], vec![0.0, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn no_overflow_is_plain_greedy() {
        let (asg, moves) = solve_bm(&table([3, 3]));
        assert_eq!(asg.choice, vec![1, 1, 1]);
        assert_eq!(moves, 0);
    }

    #[test]
    fn one_over_limit_moves_once() {
        let (asg, moves) = solve_bm(&table([2, 3]));
        // Vehicle 2 has the largest delay on RSU 1.
        assert_eq!(asg.choice, vec![1, 1, 2]);
        assert_eq!(moves, 1);
    }

    #[test]
    fn full_rsus_leave_the_rest_local() {
        let (asg, moves) = solve_bm(&table([1, 1]));
        assert_eq!(asg.choice, vec![1, 0, 2]);
        assert_eq!(moves, 2);
        assert!(asg.is_feasible(&table([1, 1])));
    }
}
