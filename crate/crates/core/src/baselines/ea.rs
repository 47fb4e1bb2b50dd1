use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BaselineConfig;
use crate::assignment::{count_loads, Assignment};
use crate::delay::DelayTable;
use crate::scalar::Scalar;

struct Individual<T> {
    genes: Vec<usize>,
    fitness: T,
}

/// Moves the members with the largest full-queue delay off every overloaded RSU to local.
fn repair<T: Scalar>(table: &DelayTable<T>, genes: &mut [usize]) {
    let mut counts = count_loads(genes, table.num_servers());
    for a in 1..table.num_servers() {
        let cap = table.capacity(a);
        if counts[a] <= cap {
            continue;
        }
        let mut members: Vec<usize> = (0..genes.len()).filter(|&i| genes[i] == a).collect();
        members.sort_by(|&x, &y| {
            table
                .clamped(y, a, cap)
                .partial_cmp(&table.clamped(x, a, cap))
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(x.cmp(&y))
        });
        for &i in members.iter().take(counts[a] - cap) {
            genes[i] = 0;
        }
        counts[0] += counts[a] - cap;
        counts[a] = cap;
    }
}

fn fitness<T: Scalar>(table: &DelayTable<T>, genes: &[usize]) -> T {
    let counts = count_loads(genes, table.num_servers());
    genes
        .iter()
        .enumerate()
        .map(|(i, &a)| table.clamped(i, a, counts[a]))
        .sum()
}

fn individual<T: Scalar>(table: &DelayTable<T>, mut genes: Vec<usize>) -> Individual<T> {
    repair(table, &mut genes);
    let fitness = fitness(table, &genes);
    Individual { genes, fitness }
}

fn tournament<'a, T: Scalar>(pop: &'a [Individual<T>], rng: &mut impl Rng) -> &'a Individual<T> {
    let x = &pop[rng.random_range(0..pop.len())];
    let y = &pop[rng.random_range(0..pop.len())];
    if y.fitness < x.fitness {
        y
    } else {
        x
    }
}

fn best_index<T: Scalar>(pop: &[Individual<T>]) -> usize {
    let mut best = 0;
    for (k, ind) in pop.iter().enumerate() {
        if ind.fitness < pop[best].fitness {
            best = k;
        }
    }
    best
}

/// Seeded genetic search over choice vectors with single-individual elitism.
pub fn solve_ea<T: Scalar>(
    table: &DelayTable<T>,
    config: &BaselineConfig,
    seed: u64,
) -> Assignment<T> {
    let v = table.num_vehicles();
    let s = table.num_servers();
    let p_mut = config.mutation_prob(v);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pop: Vec<Individual<T>> = (0..config.ea_population.max(1))
        .map(|_| individual(table, (0..v).map(|_| rng.random_range(0..s)).collect()))
        .collect();

    for _ in 0..config.ea_generations {
        let elite = best_index(&pop);
        let mut next = Vec::with_capacity(pop.len());
        next.push(Individual {
            genes: pop[elite].genes.clone(),
            fitness: pop[elite].fitness,
        });
        while next.len() < pop.len() {
            let x = tournament(&pop, &mut rng);
            let y = tournament(&pop, &mut rng);
            let genes = (0..v)
                .map(|g| {
                    let gene = if rng.random_bool(0.5) {
                        x.genes[g]
                    } else {
                        y.genes[g]
                    };
                    if rng.random_bool(p_mut) {
                        rng.random_range(0..s)
                    } else {
                        gene
                    }
                })
                .collect();
            next.push(individual(table, genes));
        }
        pop = next;
    }

    let best = best_index(&pop);
    Assignment::with_delays(pop.swap_remove(best).genes, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::solve_es;
    use crate::delay::{build_delay_table, objective_value};
    use crate::scenario::{generate_scenario, ScenarioConfig};

    fn table(v: usize, seed: u64) -> DelayTable<f64> {
        let cfg = ScenarioConfig {
            num_vehicles: v,
            num_rsus: 2,
            capacity: 2,
            seed,
            ..Default::default()
        };
        build_delay_table(&generate_scenario(&cfg).unwrap()).unwrap()
    }

    #[test]
    fn never_beats_exhaustive_search() {
        for seed in 0..5 {
            let t = table(6, seed);
            let ea = solve_ea(&t, &BaselineConfig::default(), seed);
            let es = solve_es(&t, 1_000_000).unwrap();
            let (e, o) = (
                objective_value(&t, &ea).unwrap(),
                objective_value(&t, &es).unwrap(),
            );
            assert!(e >= o - 1e-12, "{e} < {o}");
        }
    }

    #[test]
    fn zero_generations_returns_best_initial() {
        let t = table(10, 3);
        let cfg = BaselineConfig {
            ea_generations: 0,
            ea_population: 7,
            ..Default::default()
        };
        let got = solve_ea(&t, &cfg, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let best = (0..7)
            .map(|_| individual(&t, (0..10).map(|_| rng.random_range(0..3)).collect()))
            .fold(None::<Individual<f64>>, |b, ind| match b {
                Some(b) if b.fitness <= ind.fitness => Some(b),
                _ => Some(ind),
            })
            .unwrap();
        assert_eq!(got.choice, best.genes);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let t = table(20, 4);
        let cfg = BaselineConfig {
            ea_generations: 30,
            ..Default::default()
        };
        assert_eq!(solve_ea(&t, &cfg, 9), solve_ea(&t, &cfg, 9));
    }

    #[test]
    fn repair_moves_slowest_to_local() {
        let t = table(6, 5);
        let mut genes = vec![1; 6];
        repair(&t, &mut genes);
        assert_eq!(genes.iter().filter(|&&a| a == 1).count(), 2);
        let kept: Vec<usize> = (0..6).filter(|&i| genes[i] == 1).collect();
        let dropped: Vec<usize> = (0..6).filter(|&i| genes[i] == 0).collect();
        for &k in &kept {
            for &d in &dropped {
                assert!(t.clamped(k, 1, 2) <= t.clamped(d, 1, 2));
            }
        }
    }
}
