#pragma once

// Genetic search for a test vector whose fault trajectories do not meet.
//
// Chromosomes hold log10 frequencies. Each generation is a fitness-
// proportional (roulette wheel) mix of selected copies and one-point
// crossover children, followed by per-individual uniform mutation. The run
// stops after a fixed number of generations; the best vector ever seen is
// tracked outside the population.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftdiag/faultlib.hpp"
#include "ftdiag/rng.hpp"
#include "ftdiag/trajectory.hpp"

namespace ftdiag {

struct GaConfig {
    std::size_t population_size = 128;
    std::size_t generations = 15;
    double reproduction_rate = 0.5;
    double mutation_rate = 0.4;
    std::size_t n_frequencies = 2;
    double f_min = 0.01;
    double f_max = 100.0;
    std::uint64_t seed = 1;
    // Fitness evaluation threads; 0 = hardware concurrency. Never changes results.
    std::size_t workers = 1;
};

void validate(const GaConfig& config);

struct Chromosome {
    std::vector<double> genes;  // log10(frequency)

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

[[nodiscard]] TestVector decode(const Chromosome& chromosome);
[[nodiscard]] Chromosome encode(const TestVector& tv);

struct FitnessOptions {
    double tol = 1e-6;         // segment contact distance, dB
    double origin_tol = 1e-6;  // golden-point exclusion radius, dB
};

struct FitnessResult {
    double fitness = 0.0;
    std::size_t intersections = 0;
    bool failed = false;  // simulation error; fitness forced to 0
};

/// 1 / (I + 1).
[[nodiscard]] constexpr double fitness_from_intersections(std::size_t intersections) noexcept {
    return 1.0 / (static_cast<double>(intersections) + 1.0);
}

/// Builds trajectories at `tv` and scores them. Simulation errors yield
/// fitness 0 with `failed` set instead of propagating.
[[nodiscard]] FitnessResult evaluate_fitness(const FaultSimulator& simulator, const TestVector& tv,
                                             const FitnessOptions& options = {});
[[nodiscard]] double fitness(const TestVector& tv, const Circuit& circuit,
                             const FaultConfig& config, double tol,
                             FrequencyUnit unit = FrequencyUnit::RadPerSec);

/// Index i with probability fitnesses[i] / sum; uniform when every fitness
/// is zero. Throws ValidationError for empty input or negative entries.
[[nodiscard]] std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng);

/// Next population: round(reproduction_rate * size) roulette-selected copies,
/// then one-point crossover children of roulette-selected parents, then
/// one-gene uniform mutation per individual with probability mutation_rate.
[[nodiscard]] std::vector<Chromosome> step_generation(std::span<const Chromosome> population,
                                                      std::span<const double> fitnesses,
                                                      const GaConfig& config, Rng& rng);

struct GenerationRecord {
    std::size_t generation = 0;
    std::size_t population_size = 0;
    double best_fitness = 0.0;  // within this generation
    double mean_fitness = 0.0;
    Chromosome best;
    double best_so_far_fitness = 0.0;
    Chromosome best_so_far;
    std::size_t failures = 0;

    friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct GaLog {
    // generations + 1 records: the initial population, then one per step.
    std::vector<GenerationRecord> records;

    friend bool operator==(const GaLog&, const GaLog&) = default;
};

struct GaResult {
    TestVector best;
    FitnessResult best_fitness;
    GaLog log;
};

[[nodiscard]] GaResult run_ga(const FaultSimulator& simulator, const GaConfig& config,
                              const FitnessOptions& options = {});
[[nodiscard]] GaResult run_ga(const Circuit& circuit, const FaultConfig& fault_config,
                              const GaConfig& config, const FitnessOptions& options = {},
                              FrequencyUnit unit = FrequencyUnit::RadPerSec);

/// `generation,best_fitness,mean_fitness,best_f1,...,best_fn` using the
/// best-so-far vector of each generation.
[[nodiscard]] std::string ga_log_to_csv(const GaLog& log);

}  // namespace ftdiag
