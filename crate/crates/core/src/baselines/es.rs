use crate::assignment::Assignment;
use crate::delay::DelayTable;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exhaustive search over every capacity-respecting assignment.
///
/// Choice vectors are visited in lexicographic order and only strict
/// improvements replace the incumbent, so ties resolve to the
/// lexicographically smallest optimum. Fails with a size error when
/// `(A+1)^V` exceeds `size_cap`.
pub fn solve_es<T: Scalar>(table: &DelayTable<T>, size_cap: u64) -> Result<Assignment<T>> {
    let v = table.num_vehicles();
    let s = table.num_servers();
    let space = (s as u64).checked_pow(v as u32);
    match space {
        Some(n) if n <= size_cap => {}
        _ => {
            return Err(Error::Size(format!(
                "exhaustive search over {s}^{v} assignments exceeds the cap of {size_cap}"
            )))
        }
    }

    let mut choice = vec![0usize; v];
    let mut counts = vec![0usize; s];
    counts[0] = v;
    let mut best: Option<(T, Vec<usize>)> = None;
    loop {
        let feasible = (1..s).all(|a| counts[a] <= table.capacity(a));
        if feasible {
            let cost: T = choice
                .iter()
                .enumerate()
                .map(|(i, &a)| table.clamped(i, a, counts[a]))
                .sum();
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, choice.clone()));
            }
        }
        // Odometer increment, last vehicle fastest.
        let mut pos = v;
        loop {
            if pos == 0 {
                let (_, choice) = best.expect("all-local assignment is always feasible");
                return Ok(Assignment::with_delays(choice, table));
            }
            pos -= 1;
            counts[choice[pos]] -= 1;
            if choice[pos] + 1 < s {
                choice[pos] += 1;
                counts[choice[pos]] += 1;
                break;
            }
            choice[pos] = 0;
            counts[0] += 1;
        }
    }
}
