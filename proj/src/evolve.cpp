#include "ftdiag/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ftdiag/error.hpp"
#include "ftdiag/format.hpp"
#include "ftdiag/parallel.hpp"

namespace ftdiag {

void validate(const GaConfig& config) {
    if (config.population_size < 2) {
        throw ValidationError("population_size: must be >= 2");
    }
    if (!(config.reproduction_rate >= 0.0 && config.reproduction_rate <= 1.0)) {
        throw ValidationError("reproduction_rate: must lie in [0, 1]");
    }
    if (!(config.mutation_rate >= 0.0 && config.mutation_rate <= 1.0)) {
        throw ValidationError("mutation_rate: must lie in [0, 1]");
    }
    if (config.n_frequencies < 1) {
        throw ValidationError("n_frequencies: must be >= 1");
    }
    if (!(config.f_min > 0.0) || !std::isfinite(config.f_max) || !(config.f_min < config.f_max)) {
        throw ValidationError("f_min/f_max: need 0 < f_min < f_max");
    }
}

TestVector decode(const Chromosome& chromosome) {
    TestVector tv;
    tv.frequencies.reserve(chromosome.genes.size());
    for (const double g : chromosome.genes) {
        tv.frequencies.push_back(std::pow(10.0, g));
    }
    return tv;
}

Chromosome encode(const TestVector& tv) {
    Chromosome c;
    c.genes.reserve(tv.size());
    for (const double f : tv.frequencies) {
        c.genes.push_back(std::log10(f));
    }
    return c;
}

FitnessResult evaluate_fitness(const FaultSimulator& simulator, const TestVector& tv,
                               const FitnessOptions& options) {
    try {
        const auto trajectories = build_trajectories(simulator, tv);
        const auto report = count_intersections(trajectories, options.tol, options.origin_tol);
        return FitnessResult{fitness_from_intersections(report.count), report.count, false};
    } catch (const Error&) {
        return FitnessResult{0.0, 0, true};
    }
}

double fitness(const TestVector& tv, const Circuit& circuit, const FaultConfig& config,
               double tol, FrequencyUnit unit) {
    const FaultSimulator simulator(circuit, config, unit);
    return evaluate_fitness(simulator, tv, FitnessOptions{tol, tol}).fitness;
}

std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng) {
    if (fitnesses.empty()) {
        throw ValidationError("roulette_select: empty population");
    }
    double total = 0.0;
    for (const double f : fitnesses) {
        if (!(f >= 0.0) || !std::isfinite(f)) {
            throw ValidationError("roulette_select: fitness must be finite and >= 0");
        }
        total += f;
    }
    if (total == 0.0) {
        return rng.index(fitnesses.size());
    }
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        if (fitnesses[i] > 0.0) {
            cumulative += fitnesses[i];
            last_positive = i;
            if (target < cumulative) {
                return i;
            }
        }
    }
    // rounding left target at the very top of the wheel
    return last_positive;
}

std::vector<Chromosome> step_generation(std::span<const Chromosome> population,
                                        std::span<const double> fitnesses, const GaConfig& config,
                                        Rng& rng) {
    if (population.size() != config.population_size || fitnesses.size() != population.size()) {
        throw ValidationError("step_generation: population size does not match config");
    }
    const double lo = std::log10(config.f_min);
    const double hi = std::log10(config.f_max);
    const std::size_t size = population.size();
    const auto copies = std::min(
        size, static_cast<std::size_t>(std::lround(config.reproduction_rate * static_cast<double>(size))));

    std::vector<Chromosome> next;
    next.reserve(size);
    for (std::size_t i = 0; i < copies; ++i) {
        next.push_back(population[roulette_select(fitnesses, rng)]);
    }
    while (next.size() < size) {
        const Chromosome& a = population[roulette_select(fitnesses, rng)];
        const Chromosome& b = population[roulette_select(fitnesses, rng)];
        const std::size_t n = a.genes.size();
        // cut in [1, n-1]: child takes genes [0, cut) from a, the rest from b
        const std::size_t cut = n > 1 ? 1 + rng.index(n - 1) : n;
        Chromosome child;
        child.genes.reserve(n);
        child.genes.insert(child.genes.end(), a.genes.begin(), a.genes.begin() + cut);
        child.genes.insert(child.genes.end(), b.genes.begin() + cut, b.genes.end());
        next.push_back(std::move(child));
    }
    for (auto& c : next) {
        if (rng.bernoulli(config.mutation_rate)) {
            c.genes[rng.index(c.genes.size())] = rng.uniform(lo, hi);
        }
        for (auto& g : c.genes) {
            g = std::clamp(g, lo, hi);
        }
    }
    return next;
}

GaResult run_ga(const FaultSimulator& simulator, const GaConfig& config,
                const FitnessOptions& options) {
    validate(config);
    const double lo = std::log10(config.f_min);
    const double hi = std::log10(config.f_max);
    const Rng root(config.seed);

    std::vector<Chromosome> population(config.population_size);
    {
        Rng init = root.split(0);
        for (auto& c : population) {
            c.genes.resize(config.n_frequencies);
            for (auto& g : c.genes) {
                g = init.uniform(lo, hi);
            }
        }
    }

    GaResult result;
    result.best_fitness.fitness = -1.0;
    Chromosome best_so_far;
    std::vector<FitnessResult> scores(config.population_size);
    std::vector<double> fitnesses(config.population_size);

    for (std::size_t gen = 0;; ++gen) {
        parallel_for(population.size(), config.workers, [&](std::size_t i) {
            scores[i] = evaluate_fitness(simulator, decode(population[i]), options);
        });

        GenerationRecord rec;
        rec.generation = gen;
        rec.population_size = population.size();
        std::size_t best = 0;
        double sum = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            fitnesses[i] = scores[i].fitness;
            sum += fitnesses[i];
            rec.failures += scores[i].failed ? 1 : 0;
            if (fitnesses[i] > fitnesses[best]) {
                best = i;
            }
        }
        rec.best_fitness = fitnesses[best];
        rec.mean_fitness = sum / static_cast<double>(scores.size());
        rec.best = population[best];
        if (scores[best].fitness > result.best_fitness.fitness) {
            result.best_fitness = scores[best];
            best_so_far = population[best];
        }
        rec.best_so_far_fitness = result.best_fitness.fitness;
        rec.best_so_far = best_so_far;
        result.log.records.push_back(std::move(rec));

        if (gen == config.generations) {
            break;
        }
        Rng stream = root.split(gen + 1);
        population = step_generation(population, fitnesses, config, stream);
    }
    result.best = decode(best_so_far);
    return result;
}

GaResult run_ga(const Circuit& circuit, const FaultConfig& fault_config, const GaConfig& config,
                const FitnessOptions& options, FrequencyUnit unit) {
    const FaultSimulator simulator(circuit, fault_config, unit);
    return run_ga(simulator, config, options);
}

std::string ga_log_to_csv(const GaLog& log) {
    const std::size_t n =
        log.records.empty() ? 0 : log.records.front().best_so_far.genes.size();
    std::string out = "generation,best_fitness,mean_fitness";
    for (std::size_t k = 1; k <= n; ++k) {
        out += ",best_f" + std::to_string(k);
    }
    out += '\n';
    for (const auto& rec : log.records) {
        out += std::to_string(rec.generation) + ',' + format_g17(rec.best_so_far_fitness) + ',' +
               format_g17(rec.mean_fitness);
        for (const double f : decode(rec.best_so_far).frequencies) {
            out += ',';
            out += format_g17(f);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ftdiag
