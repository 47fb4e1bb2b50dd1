//! Delay model: local execution, queue-aware multi-CPU execution, uplink
//! transmission, and the clamped per-(vehicle, server, load) delay table the
//! solvers consume.
//!
//! Server index `0` is local execution on the vehicle; servers `1..=A` are RSUs.

use std::fmt::Write as _;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scenario::{GainModel, ScenarioInstance};

/// Largest task count the permutation oracle accepts (8! = 40320 orderings).
pub const ORACLE_MAX_TASKS: usize = 8;

/// `C / f`: time to run `workload_cycles` on a core at `freq_hz`.
pub fn local_delay<T: Scalar>(workload_cycles: T, freq_hz: T) -> Result<T> {
    if !(freq_hz > T::zero()) {
        return Err(Error::Domain(format!(
            "frequency must be > 0, got {freq_hz}"
        )));
    }
    if workload_cycles < T::zero() {
        return Err(Error::Domain(format!(
            "workload must be >= 0, got {workload_cycles}"
        )));
    }
    Ok(workload_cycles / freq_hz)
}

/// Expected execution-time inflation when `n` simultaneous tasks share `k`
/// round-robin CPUs: `(1 - k/(2n) * floor(n/k)) * (1 + floor(n/k))`.
///
/// Exactly `1` whenever `n <= k`.
pub fn queue_multiplier<T: Scalar>(n: usize, k: usize) -> Result<T> {
    if n == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "queue multiplier needs n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let q = n / k;
    let one = T::one();
    let ratio = T::from_count(k) / (T::lit(2.0) * T::from_count(n));
    Ok((one - ratio * T::from_count(q)) * (one + T::from_count(q)))
}

/// Round-robin split of `n` tasks over `k` CPUs. The first `n mod k` CPUs get
/// one extra task.
pub fn cpu_task_split(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::Domain("cpu count must be >= 1".into()));
    }
    let base = n / k;
    let extra = n - k * base;
    Ok((0..k)
        .map(|c| if c < extra { base + 1 } else { base })
        .collect())
}

/// Expected total (waiting + execution) delay summed over all tasks, averaged
/// over every arrival ordering of `task_times` on `k` round-robin CPUs.
///
/// Brute force over all `n!` permutations; used to validate the closed-form
/// multiplier and nowhere on the solver path.
pub fn expected_delay_oracle<T: Scalar>(task_times: &[T], k: usize) -> Result<T> {
    let n = task_times.len();
    if k == 0 {
        return Err(Error::Domain("cpu count must be >= 1".into()));
    }
    if n == 0 {
        return Err(Error::Domain("need at least one task".into()));
    }
    if n > ORACLE_MAX_TASKS {
        return Err(Error::Size(format!(
            "permutation oracle is capped at {ORACLE_MAX_TASKS} tasks, got {n}"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let mut total = T::zero();
    let mut count = 0usize;
    let mut cpu_clock = vec![T::zero(); k];

    let mut visit = |order: &[usize]| {
        cpu_clock.iter_mut().for_each(|c| *c = T::zero());
        let mut sum = T::zero();
        for (slot, &task) in order.iter().enumerate() {
            let cpu = slot % k;
            // Completion time = wait for the CPU's earlier tasks + own run.
            cpu_clock[cpu] = cpu_clock[cpu] + task_times[task];
            sum = sum + cpu_clock[cpu];
        }
        total = total + sum;
        count += 1;
    };

    // Heap's algorithm, iterative form.
    visit(&order);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            visit(&order);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total / T::from_count(count))
}

/// Shannon rate `B * log2(1 + p * g / noise)` for an SNR built from power gain `g`.
pub fn uplink_rate<T: Scalar>(
    tx_power_w: T,
    power_gain: T,
    noise_w: T,
    bandwidth_hz: T,
) -> Result<T> {
    for (name, v) in [
        ("tx_power_w", tx_power_w),
        ("power_gain", power_gain),
        ("noise_w", noise_w),
        ("bandwidth_hz", bandwidth_hz),
    ] {
        if !(v > T::zero()) {
            return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
        }
    }
    let snr = tx_power_w * power_gain / noise_w;
    Ok(bandwidth_hz * snr.ln_1p() / T::lit(std::f64::consts::LN_2))
}

/// `L / r`.
pub fn comm_delay<T: Scalar>(data_bits: T, rate_bps: T) -> Result<T> {
    if !(rate_bps > T::zero()) {
        return Err(Error::Domain(format!("rate must be > 0, got {rate_bps}")));
    }
    Ok(data_bits / rate_bps)
}

fn effective_gain(instance: &ScenarioInstance, i: usize, rsu: usize) -> f64 {
    let g = instance.channel_power_gain[i][rsu];
    match instance.radio.gain_model {
        GainModel::Power => g,
        GainModel::Squared => g * g,
    }
}

/// Uplink delay of vehicle `i` towards RSU server `a >= 1`.
fn instance_comm_delay(instance: &ScenarioInstance, i: usize, a: usize) -> Result<f64> {
    let radio = &instance.radio;
    let rate = uplink_rate(
        radio.tx_power_w,
        effective_gain(instance, i, a - 1),
        radio.noise_w,
        radio.bandwidth_hz,
    )?;
    comm_delay(instance.vehicles[i].data_bits, rate)
}

/// Unclamped delay of vehicle `i` on server `a` when `n` tasks share it.
///
/// For `a == 0` the load is ignored. For an RSU, `n` must lie in `1..=N_a`.
pub fn total_delay(instance: &ScenarioInstance, i: usize, a: usize, n: usize) -> Result<f64> {
    let v = instance
        .vehicles
        .get(i)
        .ok_or_else(|| Error::Index(format!("vehicle {i} of {}", instance.num_vehicles())))?;
    if a == 0 {
        return local_delay(v.workload_cycles, v.freq_hz);
    }
    let rsu = instance
        .rsus
        .get(a - 1)
        .ok_or_else(|| Error::Index(format!("server {a} of {}", instance.num_rsus())))?;
    if n == 0 || n > rsu.capacity {
        return Err(Error::Index(format!(
            "load {n} outside 1..={} for server {a}",
            rsu.capacity
        )));
    }
    let exec = v.workload_cycles / rsu.freq_hz;
    Ok(queue_multiplier::<f64>(n, rsu.cpu_count)? * exec + instance_comm_delay(instance, i, a)?)
}

/// CPU count and admission limit of one RSU server.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServerSpec {
    pub cpus: usize,
    pub capacity: usize,
}

/// Precomputed delays for every (vehicle, server, load) triple.
///
/// Clamped values `min(T, t_max_i)` drive the optimizers; raw values are kept
/// for outage accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayTable<T> {
    deadlines: Vec<T>,
    local_raw: Vec<T>,
    local_clamped: Vec<T>,
    servers: Vec<ServerSpec>,
    // Per RSU (index a-1): row-major V x N_a, entry [i * N_a + n - 1].
    raw: Vec<Vec<T>>,
    clamped: Vec<Vec<T>>,
}

impl<T: Scalar> DelayTable<T> {
    /// Builds a table from an arbitrary raw delay function `raw(i, a, n)` with
    /// `a >= 1`. Mostly useful for hand-constructed instances.
    pub fn from_raw(
        deadlines: Vec<T>,
        local_raw: Vec<T>,
        servers: Vec<ServerSpec>,
        mut raw: impl FnMut(usize, usize, usize) -> T,
    ) -> Result<Self> {
        let v = deadlines.len();
        if local_raw.len() != v {
            return Err(Error::config(
                "local_raw",
                "length must equal the vehicle count",
            ));
        }
        if v == 0 {
            return Err(Error::config("deadlines", "need at least one vehicle"));
        }
        if let Some(pos) = deadlines.iter().position(|d| !(*d > T::zero())) {
            return Err(Error::config(format!("deadlines[{pos}]"), "must be > 0"));
        }
        if let Some(pos) = servers.iter().position(|s| s.cpus == 0 || s.capacity == 0) {
            return Err(Error::config(
                format!("servers[{pos}]"),
                "cpus and capacity must be >= 1",
            ));
        }
        let local_clamped = local_raw
            .iter()
            .zip(&deadlines)
            .map(|(&t, &d)| t.min(d))
            .collect();
        let mut raw_tab = Vec::with_capacity(servers.len());
        let mut clamped_tab = Vec::with_capacity(servers.len());
        for (s, spec) in servers.iter().enumerate() {
            let a = s + 1;
            let cap = spec.capacity;
            let mut r = Vec::with_capacity(v * cap);
            let mut c = Vec::with_capacity(v * cap);
            for (i, &deadline) in deadlines.iter().enumerate() {
                for n in 1..=cap {
                    let t = raw(i, a, n);
                    if t.is_nan() || t < T::zero() {
                        return Err(Error::Domain(format!(
                            "delay for vehicle {i}, server {a}, load {n} is {t}"
                        )));
                    }
                    r.push(t);
                    c.push(t.min(deadline));
                }
            }
            raw_tab.push(r);
            clamped_tab.push(c);
        }
        Ok(Self {
            deadlines,
            local_raw,
            local_clamped,
            servers,
            raw: raw_tab,
            clamped: clamped_tab,
        })
    }

    /// Builds a table from execution times `C_i / f_a` and uplink delays, both
    /// `V x A`, inflating execution by the queue multiplier.
    pub fn from_components(
        deadlines: Vec<T>,
        local_raw: Vec<T>,
        servers: Vec<ServerSpec>,
        exec: &[Vec<T>],
        comm: &[Vec<T>],
    ) -> Result<Self> {
        let v = deadlines.len();
        let a_count = servers.len();
        let shape_ok = |m: &[Vec<T>]| m.len() == v && m.iter().all(|row| row.len() == a_count);
        if !shape_ok(exec) || !shape_ok(comm) {
            return Err(Error::config("components", "exec and comm must be V x A"));
        }
        let multipliers: Vec<Vec<T>> = servers
            .iter()
            .map(|s| {
                (1..=s.capacity)
                    .map(|n| queue_multiplier(n, s.cpus))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Self::from_raw(deadlines, local_raw, servers, |i, a, n| {
            multipliers[a - 1][n - 1] * exec[i][a - 1] + comm[i][a - 1]
        })
    }

    pub fn num_vehicles(&self) -> usize {
        self.deadlines.len()
    }

    pub fn num_rsus(&self) -> usize {
        self.servers.len()
    }

    /// RSUs plus the local option.
    pub fn num_servers(&self) -> usize {
        self.servers.len() + 1
    }

    /// Admission limit of RSU server `a >= 1`.
    pub fn capacity(&self, a: usize) -> usize {
        self.servers[a - 1].capacity
    }

    pub fn cpus(&self, a: usize) -> usize {
        self.servers[a - 1].cpus
    }

    pub fn servers(&self) -> &[ServerSpec] {
        &self.servers
    }

    pub fn deadline(&self, i: usize) -> T {
        self.deadlines[i]
    }

    /// Clamped delay of vehicle `i` on server `a` at load `n`. `n` is ignored for `a == 0`.
    #[inline]
    pub fn clamped(&self, i: usize, a: usize, n: usize) -> T {
        if a == 0 {
            self.local_clamped[i]
        } else {
            let cap = self.servers[a - 1].capacity;
            debug_assert!(n >= 1 && n <= cap);
            self.clamped[a - 1][i * cap + n - 1]
        }
    }

    #[inline]
    pub fn raw(&self, i: usize, a: usize, n: usize) -> T {
        if a == 0 {
            self.local_raw[i]
        } else {
            let cap = self.servers[a - 1].capacity;
            debug_assert!(n >= 1 && n <= cap);
            self.raw[a - 1][i * cap + n - 1]
        }
    }

    /// Checked variant of [`DelayTable::clamped`].
    pub fn get(&self, i: usize, a: usize, n: usize) -> Result<T> {
        if i >= self.num_vehicles() {
            return Err(Error::Index(format!(
                "vehicle {i} of {}",
                self.num_vehicles()
            )));
        }
        if a > self.num_rsus() {
            return Err(Error::Index(format!(
                "server {a} of {}",
                self.num_servers()
            )));
        }
        if a != 0 && (n == 0 || n > self.capacity(a)) {
            return Err(Error::Index(format!(
                "load {n} outside 1..={} for server {a}",
                self.capacity(a)
            )));
        }
        Ok(self.clamped(i, a, n))
    }

    /// Clamped delays every vehicle experiences under `assignment`.
    pub fn realized_clamped(&self, assignment: &Assignment<T>) -> Vec<T> {
        assignment
            .choice
            .iter()
            .enumerate()
            .map(|(i, &a)| self.clamped(i, a, assignment.counts[a]))
            .collect()
    }

    pub fn realized_raw(&self, assignment: &Assignment<T>) -> Vec<T> {
        assignment
            .choice
            .iter()
            .enumerate()
            .map(|(i, &a)| self.raw(i, a, assignment.counts[a]))
            .collect()
    }

    /// `vehicle,server,n,clamped_s,raw_s` rows. Local rows carry `n = 0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vehicle,server,n,clamped_s,raw_s\n");
        for i in 0..self.num_vehicles() {
            let _ = writeln!(
                out,
                "{i},0,0,{},{}",
                self.local_clamped[i], self.local_raw[i]
            );
            for a in 1..self.num_servers() {
                for n in 1..=self.capacity(a) {
                    let _ = writeln!(
                        out,
                        "{i},{a},{n},{},{}",
                        self.clamped(i, a, n),
                        self.raw(i, a, n)
                    );
                }
            }
        }
        out
    }
}

/// Precomputes the clamped delay table of `instance` in scalar type `T`.
pub fn build_delay_table<T: Scalar>(instance: &ScenarioInstance) -> Result<DelayTable<T>> {
    instance.validate()?;
    let v = instance.num_vehicles();
    let deadlines = instance
        .vehicles
        .iter()
        .map(|v| T::lit(v.deadline_s))
        .collect();
    let local_raw = instance
        .vehicles
        .iter()
        .map(|v| local_delay(v.workload_cycles, v.freq_hz).map(T::lit))
        .collect::<Result<Vec<T>>>()?;
    let servers = instance
        .rsus
        .iter()
        .map(|r| ServerSpec {
            cpus: r.cpu_count,
            capacity: r.capacity,
        })
        .collect();
    let mut exec = Vec::with_capacity(v);
    let mut comm = Vec::with_capacity(v);
    for (i, veh) in instance.vehicles.iter().enumerate() {
        exec.push(
            instance
                .rsus
                .iter()
                .map(|r| T::lit(veh.workload_cycles / r.freq_hz))
                .collect(),
        );
        comm.push(
            (1..=instance.num_rsus())
                .map(|a| instance_comm_delay(instance, i, a).map(T::lit))
                .collect::<Result<Vec<T>>>()?,
        );
    }
    DelayTable::from_components(deadlines, local_raw, servers, &exec, &comm)
}

/// Sum of clamped delays under a feasible assignment.
pub fn objective_value<T: Scalar>(table: &DelayTable<T>, assignment: &Assignment<T>) -> Result<T> {
    assignment.check_feasible(table)?;
    Ok(table.realized_clamped(assignment).into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_scenario, ScenarioConfig};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn local_delay_examples() {
        assert!(close(local_delay(1.2e9, 2.0e9).unwrap(), 0.6));
        assert_eq!(local_delay(0.0, 2.0e9).unwrap(), 0.0);
        assert!(close(local_delay(1.2e9, 3.0e9).unwrap(), 0.4));
        assert!(matches!(local_delay(1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(local_delay(1.0, -2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(queue_multiplier::<f64>(3, 4).unwrap(), 1.0);
        assert!(close(queue_multiplier(3, 2).unwrap(), 4.0 / 3.0));
        assert!(close(queue_multiplier(8, 2).unwrap(), 2.5));
        assert!(close(queue_multiplier(2, 1).unwrap(), 1.5));
        assert!(matches!(
            queue_multiplier::<f64>(0, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            queue_multiplier::<f64>(2, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn multiplier_matches_split_formula() {
        // Independent route: sum_c n_c (n_c + 1) / (2 n) over the round-robin split.
        for k in 1..=6 {
            for n in 1..=24 {
                let split = cpu_task_split(n, k).unwrap();
                let direct: f64 =
                    split.iter().map(|&c| (c * (c + 1)) as f64).sum::<f64>() / (2.0 * n as f64);
                assert!(
                    close(queue_multiplier(n, k).unwrap(), direct),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(cpu_task_split(5, 2).unwrap(), vec![3, 2]);
        assert_eq!(cpu_task_split(4, 4).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(cpu_task_split(7, 3).unwrap(), vec![3, 2, 2]);
        assert_eq!(cpu_task_split(0, 3).unwrap(), vec![0, 0, 0]);
        assert!(cpu_task_split(3, 0).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert!(close(expected_delay_oracle(&[0.2], 1).unwrap(), 0.2));
        assert!(close(
            expected_delay_oracle(&[0.2, 0.2, 0.2], 2).unwrap(),
            0.8
        ));
        assert!(close(0.8, 4.0 / 3.0 * 0.6));
        // Two unequal tasks on one CPU: orders (a,b) and (b,a) give a+(a+b) and b+(b+a).
        assert!(close(expected_delay_oracle(&[0.1, 0.3], 1).unwrap(), 0.6));
        assert!(matches!(
            expected_delay_oracle(&[0.1; 9], 2),
            Err(Error::Size(_))
        ));
        assert!(expected_delay_oracle::<f64>(&[], 2).is_err());
        assert!(expected_delay_oracle(&[0.1], 0).is_err());
    }

    #[test]
    fn rate_examples() {
        assert!(close(uplink_rate(1.0, 1.0, 1.0, 2.0e6).unwrap(), 2.0e6));
        assert!(close(
            uplink_rate(3.0, 1.0, 1.0, 2.0e6).unwrap() / 2.0e6,
            2.0
        ));
        assert!((uplink_rate(15.0f64, 1.0, 1.0, 2.0e6).unwrap() - 8.0e6).abs() < 1e-6);
        assert!(uplink_rate(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(uplink_rate(1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn comm_examples() {
        assert!(close(comm_delay(1.0e6, 2.0e6).unwrap(), 0.5));
        assert_eq!(comm_delay(0.0, 2.0e6).unwrap(), 0.0);
        assert!(close(comm_delay(1.0e6, 1.0e7).unwrap(), 0.1));
        assert!(matches!(comm_delay(1.0, 0.0), Err(Error::Domain(_))));
    }

    /// V=2, A=1, one CPU, capacity 2, local 0.6 s, exec 0.2 s, uplink 0.1 s.
    pub(crate) fn two_vehicle_table(capacity: usize) -> DelayTable<f64> {
        DelayTable::from_components(
            vec![10.0, 10.0],
            vec![0.6, 0.6],
            vec![ServerSpec { cpus: 1, capacity }],
            &[vec![0.2], vec![0.2]],
            &[vec![0.1], vec![0.1]],
        )
        .unwrap()
    }

    #[test]
    fn objective_examples() {
        let table = two_vehicle_table(2);
        let both = Assignment::from_choices(vec![1, 1], 2);
        assert!(close(objective_value(&table, &both).unwrap(), 0.8));
        let one = Assignment::from_choices(vec![1, 0], 2);
        assert!(close(objective_value(&table, &one).unwrap(), 0.9));
        let none = Assignment::from_choices(vec![0, 0], 2);
        assert!(close(objective_value(&table, &none).unwrap(), 1.2));

        let tight = two_vehicle_table(1);
        assert!(matches!(
            objective_value(&tight, &both),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn total_delay_branches() {
        let cfg = ScenarioConfig {
            num_vehicles: 5,
            ..Default::default()
        };
        let inst = generate_scenario(&cfg).unwrap();
        let v = &inst.vehicles[2];
        let loc = local_delay(v.workload_cycles, v.freq_hz).unwrap();
        assert_eq!(total_delay(&inst, 2, 0, 1).unwrap(), loc);
        assert_eq!(total_delay(&inst, 2, 0, 17).unwrap(), loc);

        let k = inst.rsus[0].cpu_count;
        let exec = v.workload_cycles / inst.rsus[0].freq_hz;
        let t1 = total_delay(&inst, 2, 1, 1).unwrap();
        let tk = total_delay(&inst, 2, 1, k).unwrap();
        assert_eq!(t1, tk);
        let comm = t1 - exec;
        assert!(comm > 0.0);
        assert!(matches!(total_delay(&inst, 2, 1, 0), Err(Error::Index(_))));
        assert!(matches!(total_delay(&inst, 2, 1, 21), Err(Error::Index(_))));
        assert!(matches!(total_delay(&inst, 2, 8, 1), Err(Error::Index(_))));
    }

    #[test]
    fn total_delay_hand_example() {
        // C = 1.2 G, f_a = 6 GHz, one CPU, two tasks, uplink 0.1 s -> 1.5 * 0.2 + 0.1.
        let table: DelayTable<f64> = DelayTable::from_components(
            vec![10.0],
            vec![1.0],
            vec![ServerSpec {
                cpus: 1,
                capacity: 2,
            }],
            &[vec![1.2e9 / 6.0e9]],
            &[vec![0.1]],
        )
        .unwrap();
        assert!(close(table.clamped(0, 1, 2), 0.4));
    }

    #[test]
    fn table_clamps_and_is_monotone() {
        let cfg = ScenarioConfig {
            num_vehicles: 40,
            seed: 3,
            ..Default::default()
        };
        let inst = generate_scenario(&cfg).unwrap();
        let table: DelayTable<f64> = build_delay_table(&inst).unwrap();
        let mut clamped_any = false;
        for i in 0..table.num_vehicles() {
            assert!(table.clamped(i, 0, 1) <= 0.6);
            for a in 1..table.num_servers() {
                for n in 1..=table.capacity(a) {
                    let c = table.clamped(i, a, n);
                    let r = table.raw(i, a, n);
                    assert!(c > 0.0 && c <= 0.6);
                    assert_eq!(c, r.min(0.6));
                    clamped_any |= r > 0.6;
                    assert_eq!(r, total_delay(&inst, i, a, n).unwrap());
                    if n > 1 {
                        assert!(c >= table.clamped(i, a, n - 1));
                    }
                    if n <= table.cpus(a) {
                        assert_eq!(r, table.raw(i, a, 1));
                    }
                }
            }
        }
        assert!(clamped_any);
    }

    #[test]
    fn csv_export_has_one_row_per_entry() {
        let table = two_vehicle_table(2);
        let csv = table.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "vehicle,server,n,clamped_s,raw_s");
        assert_eq!(lines.len(), 1 + 2 * (1 + 2));
        assert_eq!(lines[1], "0,0,0,0.6,0.6");
    }

    #[test]
    fn checked_get_rejects_bad_indices() {
        let table = two_vehicle_table(2);
        assert!(matches!(table.get(2, 0, 1), Err(Error::Index(_))));
        assert!(matches!(table.get(0, 2, 1), Err(Error::Index(_))));
        assert!(matches!(table.get(0, 1, 3), Err(Error::Index(_))));
        assert_eq!(table.get(0, 0, 99).unwrap(), 0.6);
    }
}
