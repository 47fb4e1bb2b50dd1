use serde::{Deserialize, Serialize};

use crate::delay::DelayTable;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One server choice per vehicle (`0` = local) plus the derived per-server loads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment<T> {
    pub choice: Vec<usize>,
    /// `counts[a]` vehicles chose server `a`; `counts[0]` counts local executions.
    pub counts: Vec<usize>,
    /// Per-vehicle decision value at the chosen server. Solvers without a
    /// natural metric store the vehicle's clamped delay.
    pub metrics: Vec<T>,
}

impl<T: Scalar> Assignment<T> {
    /// Builds an assignment with zeroed metrics. Panics if a choice is `>= num_servers`.
    pub fn from_choices(choice: Vec<usize>, num_servers: usize) -> Self {
        let counts = count_loads(&choice, num_servers);
        let metrics = vec![T::zero(); choice.len()];
        Self {
            choice,
            counts,
            metrics,
        }
    }

    /// Builds an assignment and records each vehicle's realized clamped delay as its metric.
    pub fn with_delays(choice: Vec<usize>, table: &DelayTable<T>) -> Self {
        let mut asg = Self::from_choices(choice, table.num_servers());
        asg.metrics = table.realized_clamped(&asg);
        asg
    }

    pub fn num_vehicles(&self) -> usize {
        self.choice.len()
    }

    /// Moves vehicle `i` to server `to`, keeping counts consistent.
    pub fn reassign(&mut self, i: usize, to: usize) {
        let from = self.choice[i];
        self.counts[from] -= 1;
        self.counts[to] += 1;
        self.choice[i] = to;
    }

    /// Checks the single-choice and admission-limit constraints against `table`.
    pub fn check_feasible(&self, table: &DelayTable<T>) -> Result<()> {
        if self.choice.len() != table.num_vehicles() {
            return Err(Error::Infeasible(format!(
                "{} choices for {} vehicles",
                self.choice.len(),
                table.num_vehicles()
            )));
        }
        if let Some(i) = self.choice.iter().position(|&a| a >= table.num_servers()) {
            return Err(Error::Infeasible(format!(
                "vehicle {i} chose server {} of {}",
                self.choice[i],
                table.num_servers()
            )));
        }
        if self.counts != count_loads(&self.choice, table.num_servers()) {
            return Err(Error::Infeasible(
                "per-server counts disagree with choices".into(),
            ));
        }
        let violated: Vec<String> = (1..table.num_servers())
            .filter(|&a| self.counts[a] > table.capacity(a))
            .map(|a| format!("server {a}: {} > {}", self.counts[a], table.capacity(a)))
            .collect();
        if !violated.is_empty() {
            return Err(Error::Infeasible(format!(
                "admission limit exceeded ({})",
                violated.join(", ")
            )));
        }
        Ok(())
    }

    pub fn is_feasible(&self, table: &DelayTable<T>) -> bool {
        self.check_feasible(table).is_ok()
    }

    /// `vehicle,server,p_value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vehicle,server,p_value\n");
        for (i, (a, p)) in self.choice.iter().zip(&self.metrics).enumerate() {
            out.push_str(&format!("{i},{a},{p}\n"));
        }
        out
    }
}

pub fn count_loads(choice: &[usize], num_servers: usize) -> Vec<usize> {
    let mut counts = vec![0; num_servers];
    for &a in choice {
        counts[a] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delay::ServerSpec;

    fn table() -> DelayTable<f64> {
        DelayTable::from_components(
            vec![1.0; 3],
            vec![0.5; 3],
            vec![
                ServerSpec {
                    cpus: 1,
                    capacity: 1,
                },
                ServerSpec {
                    cpus: 2,
                    capacity: 3,
                },
            ],
            &vec![vec![0.1, 0.2]; 3],
            &vec![vec![0.05, 0.05]; 3],
        )
        .unwrap()
    }

    #[test]
    fn counts_follow_choices() {
        let mut asg = Assignment::<f64>::from_choices(vec![0, 2, 2], 3);
        assert_eq!(asg.counts, vec![1, 0, 2]);
        asg.reassign(1, 1);
        assert_eq!(asg.counts, vec![1, 1, 1]);
        assert!(asg.is_feasible(&table()));
    }

    #[test]
    fn capacity_violation_is_listed() {
        let asg = Assignment::<f64>::from_choices(vec![1, 1, 2], 3);
        let err = asg.check_feasible(&table()).unwrap_err().to_string();
        assert!(err.contains("server 1: 2 > 1"), "{err}");
    }

    #[test]
    fn out_of_range_choice_is_infeasible() {
        let asg = Assignment::<f64> {
            choice: vec![0, 0, 3],
            counts: vec![2, 0, 0, 1],
            metrics: vec![0.0; 3],
        };
        assert!(!asg.is_feasible(&table()));
    }

    #[test]
    fn csv_rows() {
        let asg = Assignment::with_delays(vec![0, 1, 2], &table());
        let csv = asg.to_csv();
        assert_eq!(csv.lines().nth(1).unwrap(), "0,0,0.5");
        assert_eq!(csv.lines().count(), 4);
    }
}
