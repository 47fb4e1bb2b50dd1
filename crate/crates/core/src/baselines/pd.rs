use super::BaselineConfig;
use crate::assignment::Assignment;
use crate::delay::DelayTable;
use crate::mp::repair_capacity;
use crate::scalar::{argmin, Scalar};

#[derive(Debug, Clone)]
pub struct PdOutcome<T> {
    pub assignment: Assignment<T>,
    /// Final per-RSU prices, `prices[a-1]` for RSU `a`.
    pub prices: Vec<f64>,
    /// Time-averaged fractional association, row-major `V x (A+1)`.
    pub weights: Vec<f64>,
    /// `sum_a max(0, n_a - k_a)` of the rounded solution before repair.
    pub over_assignment: usize,
    pub repairs: usize,
}

/// Relaxed primal-dual heuristic with per-RSU congestion prices.
///
/// Each iteration every vehicle puts its whole weight on the server
/// minimizing `T_ia(1) + lambda_a`; each price then takes a projected
/// subgradient step on `(sum_i x_ia - k_a) / k_a`, scaled by the mean local
/// delay so the step is in seconds. The running average of the primal
/// iterates is rounded per vehicle to its heaviest server and repaired.
pub fn solve_pd<T: Scalar>(table: &DelayTable<T>, config: &BaselineConfig) -> PdOutcome<T> {
    let v = table.num_vehicles();
    let s = table.num_servers();
    let base: Vec<Vec<f64>> = (0..v)
        .map(|i| (0..s).map(|a| table.clamped(i, a, 1).as_f64()).collect())
        .collect();
    let scale = base.iter().map(|row| row[0]).sum::<f64>() / v.max(1) as f64;
    let step = config.pd_step_size * scale;

    let mut prices = vec![0.0; s - 1];
    let mut weights = vec![0.0; v * s];
    let mut load = vec![0usize; s];
    let mut priced = vec![0.0; s];
    for t in 0..config.pd_max_iterations {
        load.iter_mut().for_each(|n| *n = 0);
        for (i, row) in base.iter().enumerate() {
            priced[0] = row[0];
            for a in 1..s {
                priced[a] = row[a] + prices[a - 1];
            }
            let pick = argmin(&priced).unwrap_or(0);
            load[pick] += 1;
            // Incremental mean of the one-hot iterates.
            let w = &mut weights[i * s..(i + 1) * s];
            let eta = 1.0 / (t + 1) as f64;
            for (a, x) in w.iter_mut().enumerate() {
                let hit = if a == pick { 1.0 } else { 0.0 };
                *x += eta * (hit - *x);
            }
        }
        for a in 1..s {
            let k = table.cpus(a) as f64;
            prices[a - 1] = (prices[a - 1] + step * (load[a] as f64 - k) / k).max(0.0);
        }
    }

    let choice: Vec<usize> = (0..v)
        .map(|i| {
            let w = &weights[i * s..(i + 1) * s];
            let mut best = 0;
            for a in 1..s {
                if w[a] > w[best] {
                    best = a;
                }
            }
            best
        })
        .collect();
    let mut asg = Assignment::from_choices(choice, s);
    let over_assignment = (1..s)
        .map(|a| asg.counts[a].saturating_sub(table.cpus(a)))
        .sum();
    let scores: Vec<Vec<T>> = (0..v)
        .map(|i| {
            (0..s)
                .map(|a| T::lit(base[i][a] + if a == 0 { 0.0 } else { prices[a - 1] }))
                .collect()
        })
        .collect();
    asg.metrics = asg
        .choice
        .iter()
        .enumerate()
        .map(|(i, &a)| scores[i][a])
        .collect();
    let (mut asg, repairs) = repair_capacity(table, asg, &scores);
    asg.metrics = table.realized_clamped(&asg);
    PdOutcome {
        assignment: asg,
        prices,
        weights,
        over_assignment,
        repairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::solve_es;
    use crate::delay::ServerSpec;

    #[test]
    fn single_vehicle_matches_es() {
        for local in [0.1, 0.5] {
            let t = DelayTable::from_components(
                vec![1.0],
                vec![local],
                vec![
                    ServerSpec {
                        cpus: 1,
                        capacity: 1,
                    },
                    ServerSpec {
                        cpus: 1,
                        capacity: 1,
                    },
                ],
                &[vec![0.3, 0.2]],
                &[vec![0.0, 0.0]],
            )
            .unwrap();
            let pd = solve_pd(&t, &BaselineConfig::default());
            assert_eq!(pd.assignment.choice, solve_es(&t, 10).unwrap().choice);
        }
    }

    #[test]
    fn symmetric_rsus_share_the_load() {
        let v = 8;
        let t = DelayTable::from_components(
            vec![5.0; v],
            vec![1.0; v],
            vec![
                ServerSpec {
                    cpus: 2,
                    capacity: 8
                };
                2
            ],
            &vec![vec![0.2, 0.2]; v],
            &vec![vec![0.0, 0.0]; v],
        )
        .unwrap();
        let pd = solve_pd(
            &t,
            &BaselineConfig {
                pd_max_iterations: 400,
                ..Default::default()
            },
        );
        let col = |a: usize| (0..v).map(|i| pd.weights[i * 3 + a]).sum::<f64>();
        assert!(
            (col(1) - col(2)).abs() < 0.1 * v as f64,
            "{} vs {}",
            col(1),
            col(2)
        );
        assert!((pd.prices[0] - pd.prices[1]).abs() < 0.2);
    }

    #[test]
    fn over_assignment_counts_beyond_cpus() {
        // Everything prefers RSU 1 with one CPU; prices only start moving after round one.
        let v = 4;
        let t = DelayTable::from_components(
            vec![5.0; v],
            vec![2.0; v],
            vec![ServerSpec {
                cpus: 1,
                capacity: 4,
            }],
            &vec![vec![0.1]; v],
            &vec![vec![0.0]; v],
        )
        .unwrap();
        let pd = solve_pd(
            &t,
            &BaselineConfig {
                pd_max_iterations: 1,
                ..Default::default()
            },
        );
        assert_eq!(pd.assignment.choice, vec![1; 4]);
        assert_eq!(pd.over_assignment, 3);
        assert!(pd.assignment.is_feasible(&t));
    }
}
