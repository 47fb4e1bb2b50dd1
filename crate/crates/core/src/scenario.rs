//! Seeded road-segment scenarios: RSU placement, vehicle drops, channel gains
//! and task workloads for one scheduling frame.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light used by the free-space path-loss model (m/s).
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Inclusive integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountRange {
    pub min: usize,
    pub max: usize,
}

/// Closed real interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealRange {
    pub min: f64,
    pub max: f64,
}

impl CountRange {
    pub fn new(min: usize, max: usize) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, v: usize) -> bool {
        (self.min..=self.max).contains(&v)
    }
}

impl RealRange {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }

    fn sample(&self, rng: &mut impl Rng) -> f64 {
        if self.min == self.max {
            self.min
        } else {
            rng.random_range(self.min..=self.max)
        }
    }
}

/// How the stored per-link gain enters the SNR term of the uplink rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GainModel {
    /// The stored value is a power gain and multiplies the transmit power directly.
    #[default]
    Power,
    /// The stored value is squared before entering the SNR term.
    Squared,
}

/// Parameters of one family of scenarios. Defaults reproduce the reference
/// deployment: a 1 km six-lane road with seven RSUs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub num_rsus: usize,
    pub num_vehicles: usize,
    pub cpus_per_rsu: CountRange,
    pub rsu_freq_hz: RealRange,
    pub vehicle_freq_hz: RealRange,
    pub data_bits: f64,
    pub workload_cycles_mean: f64,
    pub workload_jitter_frac: f64,
    pub t_max_s: f64,
    /// Per-RSU admission limit. Overridden by `floor(system_bandwidth_hz / bandwidth_hz)`
    /// when a system bandwidth is given.
    pub capacity: usize,
    pub system_bandwidth_hz: Option<f64>,
    pub tx_power_w: f64,
    pub bandwidth_hz: f64,
    pub noise_w: f64,
    pub coverage_m: f64,
    pub carrier_hz: f64,
    pub antenna_gain: f64,
    pub pathloss_exp: f64,
    pub gain_model: GainModel,
    pub road_length_m: f64,
    pub lanes: usize,
    pub lane_width_m: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            num_rsus: 7,
            num_vehicles: 100,
            cpus_per_rsu: CountRange::new(4, 8),
            rsu_freq_hz: RealRange::new(4.0e9, 8.0e9),
            vehicle_freq_hz: RealRange::new(2.0e9, 3.0e9),
            data_bits: 1.0e6,
            workload_cycles_mean: 1.2e9,
            workload_jitter_frac: 0.3,
            t_max_s: 0.6,
            capacity: 20,
            system_bandwidth_hz: None,
            tx_power_w: 0.1,
            bandwidth_hz: 2.0e6,
            noise_w: 0.2e-12,
            coverage_m: 300.0,
            carrier_hz: 915.0e6,
            antenna_gain: 4.11,
            pathloss_exp: 2.8,
            gain_model: GainModel::Power,
            road_length_m: 1000.0,
            lanes: 6,
            lane_width_m: 3.5,
            max_iterations: 15,
            seed: 0,
        }
    }
}

fn positive(field: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::config(
            field,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

fn positive_range(field: &str, range: &RealRange) -> Result<()> {
    positive(field, range.min)?;
    positive(field, range.max)?;
    if range.min > range.max {
        return Err(Error::config(
            field,
            format!("empty range [{}, {}]", range.min, range.max),
        ));
    }
    Ok(())
}

fn at_least_one(field: &str, value: usize) -> Result<()> {
    if value >= 1 {
        Ok(())
    } else {
        Err(Error::config(field, "must be at least 1"))
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        at_least_one("num_rsus", self.num_rsus)?;
        at_least_one("num_vehicles", self.num_vehicles)?;
        at_least_one("cpus_per_rsu.min", self.cpus_per_rsu.min)?;
        if self.cpus_per_rsu.min > self.cpus_per_rsu.max {
            return Err(Error::config(
                "cpus_per_rsu",
                format!(
                    "empty range [{}, {}]",
                    self.cpus_per_rsu.min, self.cpus_per_rsu.max
                ),
            ));
        }
        positive_range("rsu_freq_hz", &self.rsu_freq_hz)?;
        positive_range("vehicle_freq_hz", &self.vehicle_freq_hz)?;
        positive("data_bits", self.data_bits)?;
        positive("workload_cycles_mean", self.workload_cycles_mean)?;
        if !(0.0..1.0).contains(&self.workload_jitter_frac) {
            return Err(Error::config(
                "workload_jitter_frac",
                format!("must lie in [0, 1), got {}", self.workload_jitter_frac),
            ));
        }
        // An infinite deadline is allowed: it disables clamping.
        if !(self.t_max_s > 0.0) {
            return Err(Error::config("t_max_s", "must be > 0"));
        }
        at_least_one("capacity", self.capacity)?;
        positive("tx_power_w", self.tx_power_w)?;
        positive("bandwidth_hz", self.bandwidth_hz)?;
        if let Some(b) = self.system_bandwidth_hz {
            positive("system_bandwidth_hz", b)?;
            if b < self.bandwidth_hz {
                return Err(Error::config(
                    "system_bandwidth_hz",
                    "admits no vehicle: smaller than the per-vehicle bandwidth",
                ));
            }
        }
        positive("noise_w", self.noise_w)?;
        positive("coverage_m", self.coverage_m)?;
        positive("carrier_hz", self.carrier_hz)?;
        positive("antenna_gain", self.antenna_gain)?;
        positive("pathloss_exp", self.pathloss_exp)?;
        positive("road_length_m", self.road_length_m)?;
        at_least_one("lanes", self.lanes)?;
        positive("lane_width_m", self.lane_width_m)?;
        at_least_one("max_iterations", self.max_iterations)?;
        Ok(())
    }

    /// Admission limit per RSU after applying the bandwidth rule.
    pub fn effective_capacity(&self) -> usize {
        match self.system_bandwidth_hz {
            Some(b) => (b / self.bandwidth_hz).floor() as usize,
            None => self.capacity,
        }
    }

    pub fn road_width_m(&self) -> f64 {
        self.lanes as f64 * self.lane_width_m
    }
}

/// Free-space mean path gain `A_d * (c / (4 pi f_carr d))^d_e`.
pub fn mean_path_gain(distance_m: f64, config: &ScenarioConfig) -> Result<f64> {
    if !(distance_m > 0.0) || !distance_m.is_finite() {
        return Err(Error::Domain(format!(
            "path gain needs a positive distance, got {distance_m}"
        )));
    }
    let ratio = SPEED_OF_LIGHT / (4.0 * std::f64::consts::PI * config.carrier_hz * distance_m);
    Ok(config.antenna_gain * ratio.powf(config.pathloss_exp))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rsu {
    pub position: [f64; 2],
    pub cpu_count: usize,
    pub freq_hz: f64,
    pub capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vehicle {
    pub position: [f64; 2],
    pub freq_hz: f64,
    pub workload_cycles: f64,
    pub data_bits: f64,
    pub deadline_s: f64,
}

/// Radio parameters needed to turn gains into rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    pub tx_power_w: f64,
    pub bandwidth_hz: f64,
    pub noise_w: f64,
    pub gain_model: GainModel,
}

/// Frozen snapshot of one scheduling frame. Immutable once generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioInstance {
    pub rsus: Vec<Rsu>,
    pub vehicles: Vec<Vehicle>,
    /// Row-major `V x A` channel power gains after fading.
    pub channel_power_gain: Vec<Vec<f64>>,
    pub radio: RadioParams,
    pub seed: u64,
}

impl ScenarioInstance {
    pub fn num_vehicles(&self) -> usize {
        self.vehicles.len()
    }

    pub fn num_rsus(&self) -> usize {
        self.rsus.len()
    }

    /// Euclidean distance between vehicle `i` and RSU `a` (0-based RSU index).
    pub fn distance(&self, i: usize, a: usize) -> f64 {
        let v = self.vehicles[i].position;
        let r = self.rsus[a].position;
        ((v[0] - r[0]).powi(2) + (v[1] - r[1]).powi(2)).sqrt()
    }

    /// Checks the structural invariants of a (possibly deserialized) instance.
    pub fn validate(&self) -> Result<()> {
        if self.rsus.is_empty() || self.vehicles.is_empty() {
            return Err(Error::config(
                "instance",
                "needs at least one RSU and one vehicle",
            ));
        }
        if self.channel_power_gain.len() != self.vehicles.len()
            || self
                .channel_power_gain
                .iter()
                .any(|row| row.len() != self.rsus.len())
        {
            return Err(Error::config("channel_power_gain", "shape must be V x A"));
        }
        for (i, row) in self.channel_power_gain.iter().enumerate() {
            for (a, &g) in row.iter().enumerate() {
                if !(g.is_finite() && g > 0.0) {
                    return Err(Error::config(
                        "channel_power_gain",
                        format!("entry ({i}, {a}) must be finite and > 0, got {g}"),
                    ));
                }
            }
        }
        for (a, rsu) in self.rsus.iter().enumerate() {
            if rsu.cpu_count == 0 || rsu.capacity == 0 || !(rsu.freq_hz > 0.0) {
                return Err(Error::config(
                    format!("rsus[{a}]"),
                    "cpu_count, capacity and freq_hz must be positive",
                ));
            }
        }
        for (i, v) in self.vehicles.iter().enumerate() {
            if !(v.freq_hz > 0.0)
                || v.workload_cycles < 0.0
                || v.data_bits < 0.0
                || !(v.deadline_s > 0.0)
            {
                return Err(Error::config(
                    format!("vehicles[{i}]"),
                    "freq_hz and deadline_s must be positive, workload and data non-negative",
                ));
            }
        }
        positive("radio.tx_power_w", self.radio.tx_power_w)?;
        positive("radio.bandwidth_hz", self.radio.bandwidth_hz)?;
        positive("radio.noise_w", self.radio.noise_w)?;
        Ok(())
    }
}

// Sub-stream tags. Each entity draws from its own ChaCha stream so that
// changing the vehicle count leaves RSU draws untouched and vice versa.
const STREAM_RSU: u64 = 1 << 56;
const STREAM_VEHICLE: u64 = 2 << 56;
const STREAM_FADING: u64 = 3 << 56;

fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Deterministically generates the instance for `config.seed`.
pub fn generate_scenario(config: &ScenarioConfig) -> Result<ScenarioInstance> {
    config.validate()?;
    let seed = config.seed;
    let num_rsus = config.num_rsus;
    let capacity = config.effective_capacity();
    let road_width = config.road_width_m();
    let spacing = config.road_length_m / (num_rsus as f64 + 1.0);

    let rsus: Vec<Rsu> = (0..num_rsus)
        .map(|a| {
            let mut rng = substream(seed, STREAM_RSU | a as u64);
            // Even-indexed RSUs sit on the near edge, odd ones across the road.
            let y = if a % 2 == 0 { 0.0 } else { road_width };
            let cpu_count = rng.random_range(config.cpus_per_rsu.min..=config.cpus_per_rsu.max);
            let freq_hz = config.rsu_freq_hz.sample(&mut rng);
            Rsu {
                position: [spacing * (a as f64 + 1.0), y],
                cpu_count,
                freq_hz,
                capacity,
            }
        })
        .collect();

    let vehicles: Vec<Vehicle> = (0..config.num_vehicles)
        .map(|i| {
            let mut rng = substream(seed, STREAM_VEHICLE | i as u64);
            let x = rng.random_range(0.0..=config.road_length_m);
            let lane = rng.random_range(0..config.lanes);
            let y = (lane as f64 + 0.5) * config.lane_width_m;
            let freq_hz = config.vehicle_freq_hz.sample(&mut rng);
            let jitter = if config.workload_jitter_frac > 0.0 {
                rng.random_range(-config.workload_jitter_frac..=config.workload_jitter_frac)
            } else {
                0.0
            };
            Vehicle {
                position: [x, y],
                freq_hz,
                workload_cycles: config.workload_cycles_mean * (1.0 + jitter),
                data_bits: config.data_bits,
                deadline_s: config.t_max_s,
            }
        })
        .collect();

    let mut channel_power_gain = Vec::with_capacity(vehicles.len());
    for (i, v) in vehicles.iter().enumerate() {
        let mut row = Vec::with_capacity(rsus.len());
        for (a, r) in rsus.iter().enumerate() {
            let d = ((v.position[0] - r.position[0]).powi(2)
                + (v.position[1] - r.position[1]).powi(2))
            .sqrt();
            let mean = mean_path_gain(d, config)?;
            let mut rng = substream(seed, STREAM_FADING | ((i as u64) << 24) | a as u64);
            let fading: f64 = rng.sample(Exp1);
            // Exp(1) can return exactly zero in principle; keep gains strictly positive.
            row.push(mean * fading.max(f64::MIN_POSITIVE));
        }
        channel_power_gain.push(row);
    }

    Ok(ScenarioInstance {
        rsus,
        vehicles,
        channel_power_gain,
        radio: RadioParams {
            tx_power_w: config.tx_power_w,
            bandwidth_hz: config.bandwidth_hz,
            noise_w: config.noise_w,
            gain_model: config.gain_model,
        },
        seed,
    })
}
