#ifndef TVWS_DETECTION_CONFIG_HPP
#define TVWS_DETECTION_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tvws/errors.hpp"

namespace tvws {

/// How a Stackelberg game is searched: both players evolve against the
/// simultaneous payoff, or only the leader evolves and the follower always
/// best-responds.
enum class StackelbergMode { Simultaneous, BilevelFollowerBR };

[[nodiscard]] inline auto to_string(StackelbergMode mode) -> std::string_view
{
    return mode == StackelbergMode::Simultaneous ? "simultaneous" : "bilevel";
}

[[nodiscard]] inline auto parse_stackelberg_mode(std::string_view text) -> StackelbergMode
{
    if (text == "simultaneous") { return StackelbergMode::Simultaneous; }
    if (text == "bilevel") { return StackelbergMode::BilevelFollowerBR; }
    throw InvalidInput("unknown stackelberg mode '" + std::string(text) + "' (expected simultaneous or bilevel)");
}

struct DetectionConfig {
    std::size_t population_size { 100 };
    std::size_t max_generations { 100 };
    /// Consecutive generations of small centroid movement that count as converged.
    std::size_t convergence_window { 5 };
    /// Centroid movement threshold, strategy-space units.
    double convergence_tol { 1e-3 };
    /// Stop as soon as the convergence window is satisfied.
    bool stop_on_convergence { true };
    double crossover_rate { 0.9 };
    /// Per-coordinate mutation probability; unset means 1 / dimensions.
    std::optional<double> mutation_rate { };
    double crossover_distribution_index { 15.0 };
    double mutation_distribution_index { 20.0 };
    std::uint64_t seed { 1 };
    StackelbergMode stackelberg_mode { StackelbergMode::BilevelFollowerBR };

    auto validate() const -> void
    {
        if (population_size < 4 || population_size % 2 != 0) { throw InvalidInput("population size must be even and >= 4"); }
        if (max_generations < 1) { throw InvalidInput("max generations must be >= 1"); }
        if (convergence_window < 1) { throw InvalidInput("convergence window must be >= 1"); }
        if (!(convergence_tol >= 0.0)) { throw InvalidInput("convergence tolerance must be >= 0"); }
        auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
        if (!rate_ok(crossover_rate)) { throw InvalidInput("crossover rate must lie in [0, 1]"); }
        if (mutation_rate && !rate_ok(*mutation_rate)) { throw InvalidInput("mutation rate must lie in [0, 1]"); }
        if (!(crossover_distribution_index >= 0.0) || !(mutation_distribution_index >= 0.0)) {
            throw InvalidInput("distribution indices must be >= 0");
        }
    }

    [[nodiscard]] auto effective_mutation_rate(std::size_t dimensions) const -> double
    {
        return mutation_rate.value_or(1.0 / static_cast<double>(dimensions == 0 ? 1 : dimensions));
    }
};

} // namespace tvws

#endif
