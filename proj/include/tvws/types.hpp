#ifndef TVWS_TYPES_HPP
#define TVWS_TYPES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tvws {

/// Fixed-length vector of reals tagged by meaning, so a strategy profile
/// cannot be passed where a payoff vector is expected.
template <typename Tag>
class RealVector {
public:
    using value_type = double;

    RealVector() = default;
    explicit RealVector(std::size_t n, double fill = 0.0) : values_(n, fill) { }
    explicit RealVector(std::vector<double> values) : values_(std::move(values)) { }
    RealVector(std::initializer_list<double> values) : values_(values) { }

    [[nodiscard]] auto size() const noexcept -> std::size_t { return values_.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return values_.empty(); }

    [[nodiscard]] auto operator[](std::size_t i) const -> double { return values_[i]; }
    [[nodiscard]] auto operator[](std::size_t i) -> double& { return values_[i]; }

    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }
    [[nodiscard]] auto begin() noexcept { return values_.begin(); }
    [[nodiscard]] auto end() noexcept { return values_.end(); }

    [[nodiscard]] auto values() const noexcept -> std::vector<double> const& { return values_; }
    [[nodiscard]] auto span() const noexcept -> std::span<double const> { return values_; }

    friend auto operator==(RealVector const&, RealVector const&) -> bool = default;

private:
    std::vector<double> values_;
};

struct StrategyTag { };
struct PayoffTag { };

/// One point in joint strategy space: channels per radio (Cournot,
/// Stackelberg) or target non-interfered-symbol price (Bertrand).
using StrategyProfile = RealVector<StrategyTag>;

/// Payoff per player, goodput minus access cost.
using PayoffVector = RealVector<PayoffTag>;

/// Closed interval of admissible strategy values for one player.
struct Interval {
    double lo { 0.0 };
    double hi { 0.0 };

    [[nodiscard]] auto contains(double v) const noexcept -> bool { return lo <= v && v <= hi; }
    [[nodiscard]] auto clamp(double v) const noexcept -> double { return v < lo ? lo : (v > hi ? hi : v); }
    [[nodiscard]] auto width() const noexcept -> double { return hi - lo; }

    friend auto operator==(Interval const&, Interval const&) -> bool = default;
};

} // namespace tvws

#endif
