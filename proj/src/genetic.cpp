#include "instaudit/genetic.hpp"

#include <algorithm>
#include <map>

#include "instaudit/metrics.hpp"
#include "instaudit/mlp.hpp"
#include "instaudit/parallel.hpp"
#include "instaudit/preprocess.hpp"
#include "instaudit/rng.hpp"

#include <json.hpp>

namespace instaudit {

CostTable automated_feature_costs() {
    // media, follower, following, highlight reel, external url, tag number,
    // avg hashtag, has-0-media, LCR, FFR
    return CostTable{{2, 4, 4, 2, 2, 3, 2, 1, 2, 4}};
}

namespace {

FeatureMask random_mask(std::size_t d, Rng& rng) {
    FeatureMask mask;
    mask.bits.resize(d);
    do {
        for (auto& b : mask.bits) b = rng.next_bool() ? 1 : 0;
    } while (!mask.any());
    return mask;
}

std::uint64_t mask_seed(const GaConfig& config, const FeatureMask& mask) {
    std::uint64_t h = derive_seed(config.seed, seed_tag::ga);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.bits[i]) h = derive_seed(h, i + 1);
    return h;
}

} // namespace

FitnessEvaluator mlp_f2_evaluator() {
    return [](const FeatureMatrix& reduced, std::uint64_t seed) {
        SplitSpec split_spec;
        split_spec.train_fraction = 0.7;
        split_spec.seed = seed;
        const auto split = train_test_split(reduced, split_spec);

        MlpConfig cfg;
        cfg.seed = seed;
        const MlpModel model = fit_mlp_adam(split.train, cfg);

        const auto proba = mlp_proba(model, split.test);
        std::vector<int> preds(proba.size());
        for (std::size_t r = 0; r < proba.size(); ++r) preds[r] = proba[r][1] > proba[r][0];
        return 100.0 * metrics(confusion(split.test.labels, preds)).f2;
    };
}

std::vector<FeatureMask> init_population(std::size_t feature_count, const GaConfig& config) {
    if (feature_count < 1) throw DomainError("need at least one feature");
    if (config.population_size < 3) throw DomainError("population_size must be >= 3");
    Rng rng(derive_seed(config.seed, seed_tag::ga));
    std::vector<FeatureMask> population;
    population.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i)
        population.push_back(random_mask(feature_count, rng));
    return population;
}

int total_cost(const FeatureMask& mask, const CostTable& costs) {
    if (mask.size() != costs.costs.size()) throw DomainError("mask/cost length mismatch");
    int total = 0;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.bits[i]) total += costs.costs[i];
    return total;
}

double fitness(const FeatureMask& mask, const FeatureMatrix& matrix, const CostTable& costs,
               const GaConfig& config, const FitnessEvaluator& evaluator) {
    if (!mask.any()) return kZeroMaskFitness;
    const double score = evaluator(reduce(matrix, mask), mask_seed(config, mask));
    return score - config.cost_weight * static_cast<double>(total_cost(mask, costs));
}

namespace {

// Tournament entrants are drawn without replacement, so a tournament of the
// full population size always crowns the global best.
std::size_t tournament_pick(const std::vector<double>& fitnesses, const GaConfig& config,
                            Rng& rng) {
    const std::size_t n = fitnesses.size();
    const std::size_t entrants = std::min(config.tournament_size, n);
    thread_local std::vector<std::size_t> pool;
    pool.resize(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::size_t best = n;
    for (std::size_t t = 0; t < entrants; ++t) {
        const std::size_t pick = t + rng.next_below(n - t);
        std::swap(pool[t], pool[pick]);
        if (best == n || fitnesses[pool[t]] > fitnesses[best]) best = pool[t];
    }
    return best;
}

std::vector<FeatureMask> crossover_children(const std::vector<FeatureMask>& population,
                                            const std::vector<double>& fitnesses,
                                            const GaConfig& config, Rng& rng,
                                            std::size_t n_children) {
    std::vector<FeatureMask> children;
    children.reserve(n_children);
    for (std::size_t c = 0; c < n_children; ++c) {
        const FeatureMask& p1 = population[tournament_pick(fitnesses, config, rng)];
        const FeatureMask& p2 = population[tournament_pick(fitnesses, config, rng)];
        FeatureMask child;
        child.bits.resize(p1.size());
        for (std::size_t i = 0; i < child.size(); ++i)
            child.bits[i] = rng.next_bool() ? p1.bits[i] : p2.bits[i];
        children.push_back(std::move(child));
    }
    return children;
}

FeatureMask mutate_with(const FeatureMask& mask, double rate, Rng& rng) {
    FeatureMask out = mask;
    if (rng.next_double() < rate && !mask.bits.empty()) {
        const std::size_t i = rng.next_below(mask.bits.size());
        out.bits[i] ^= 1;
    }
    return out;
}

} // namespace

std::vector<FeatureMask> tournament_crossover(const std::vector<FeatureMask>& population,
                                              const std::vector<double>& fitnesses,
                                              const GaConfig& config, std::uint64_t seed) {
    if (population.size() != fitnesses.size())
        throw DomainError("population/fitness length mismatch");
    Rng rng(seed);
    return crossover_children(population, fitnesses, config, rng,
                              config.population_size - 2);
}

FeatureMask mutate(const FeatureMask& mask, double rate, std::uint64_t seed) {
    Rng rng(seed);
    return mutate_with(mask, rate, rng);
}

GaResult evolve(const FeatureMatrix& matrix, const CostTable& costs, const GaConfig& config,
                const FitnessEvaluator& evaluator) {
    if (matrix.cols() != costs.costs.size()) throw DomainError("matrix/cost length mismatch");
    if (config.population_size < 3) throw DomainError("population_size must be >= 3");
    if (config.mutation_rate < 0.0 || config.mutation_rate > 1.0)
        throw DomainError("mutation_rate must be in [0,1]");

    Rng rng(derive_seed(config.seed, seed_tag::ga) ^ 0x6a09e667f3bcc908ull);
    std::vector<FeatureMask> population = init_population(matrix.cols(), config);

    // Evaluations are pure per (mask, run seed), so scores are memoized.
    std::map<std::vector<std::uint8_t>, double> cache;
    auto evaluate_population = [&](const std::vector<FeatureMask>& pop) {
        std::vector<double> fits(pop.size());
        std::vector<std::size_t> missing;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            auto it = cache.find(pop[i].bits);
            if (it != cache.end())
                fits[i] = it->second;
            else
                missing.push_back(i);
        }
        // Deduplicate uncached masks, then score them (possibly in parallel;
        // results are keyed by index so the outcome is order-independent).
        std::vector<std::size_t> unique_rows;
        for (std::size_t i : missing) {
            bool seen = false;
            for (std::size_t u : unique_rows)
                if (pop[u].bits == pop[i].bits) {
                    seen = true;
                    break;
                }
            if (!seen) unique_rows.push_back(i);
        }
        std::vector<double> fresh(unique_rows.size());
        parallel_for_index(unique_rows.size(), [&](std::size_t u) {
            fresh[u] = fitness(pop[unique_rows[u]], matrix, costs, config, evaluator);
        });
        for (std::size_t u = 0; u < unique_rows.size(); ++u)
            cache[pop[unique_rows[u]].bits] = fresh[u];
        for (std::size_t i : missing) fits[i] = cache[pop[i].bits];
        return fits;
    };

    GaResult result;
    const std::size_t rounds = std::max<std::size_t>(config.generations, 1);
    for (std::size_t gen = 0; gen < rounds; ++gen) {
        const auto fits = evaluate_population(population);
        std::size_t best = 0;
        for (std::size_t i = 1; i < fits.size(); ++i)
            if (fits[i] > fits[best]) best = i;
        result.trace.best_fitness.push_back(fits[best]);
        result.trace.best_mask.push_back(population[best]);

        if (gen + 1 == rounds) break;

        // Next generation: elite, one fresh random individual, crossover fill.
        std::vector<FeatureMask> next;
        next.reserve(config.population_size);
        next.push_back(population[best]);
        next.push_back(random_mask(matrix.cols(), rng));
        auto children =
            crossover_children(population, fits, config, rng, config.population_size - 2);
        for (auto& c : children) next.push_back(std::move(c));

        // One non-elite individual may mutate; the elite stays intact so the
        // best fitness cannot regress.
        const std::size_t victim = 1 + rng.next_below(config.population_size - 1);
        next[victim] = mutate_with(next[victim], config.mutation_rate, rng);

        population = std::move(next);
    }

    result.best = result.trace.best_mask.back();
    return result;
}

FeatureMatrix reduce(const FeatureMatrix& matrix, const FeatureMask& mask) {
    if (mask.size() != matrix.cols()) throw DomainError("mask/matrix length mismatch");
    if (!mask.any()) throw DomainError("all-zero mask selects nothing");
    FeatureMatrix out;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        if (!mask.bits[j]) continue;
        out.column_names.push_back(matrix.column_names[j]);
        out.column_kinds.push_back(matrix.column_kinds[j]);
    }
    out.labels = matrix.labels;
    out.values.reserve(matrix.rows() * out.column_names.size());
    for (std::size_t r = 0; r < matrix.rows(); ++r)
        for (std::size_t j = 0; j < matrix.cols(); ++j)
            if (mask.bits[j]) out.values.push_back(matrix.at(r, j));
    return out;
}

std::string trace_to_json(const GaTrace& trace) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t g = 0; g < trace.best_fitness.size(); ++g) {
        nlohmann::ordered_json entry;
        entry["generation"] = g;
        entry["best_fitness"] = trace.best_fitness[g];
        std::vector<int> bits(trace.best_mask[g].bits.begin(), trace.best_mask[g].bits.end());
        entry["best_mask"] = bits;
        arr.push_back(std::move(entry));
    }
    return arr.dump(2);
}

} // namespace instaudit
