#ifndef TVWS_ERRORS_HPP
#define TVWS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "tvws/types.hpp"

namespace tvws {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The closed form has no interior solution (W < K). `boundary()` holds the
/// corner profile that the market degenerates to.
class NoInteriorEquilibrium : public Error {
public:
    NoInteriorEquilibrium(std::string const& what, StrategyProfile boundary)
        : Error(what), boundary_(std::move(boundary)) { }

    [[nodiscard]] auto boundary() const noexcept -> StrategyProfile const& { return boundary_; }

private:
    StrategyProfile boundary_;
};

class DegenerateMarket : public Error {
public:
    using Error::Error;
};

/// A payoff evaluated to NaN or infinity. Carries the offending profile.
class NumericFailure : public Error {
public:
    NumericFailure(std::string const& what, StrategyProfile profile)
        : Error(what), profile_(std::move(profile)) { }

    [[nodiscard]] auto profile() const noexcept -> StrategyProfile const& { return profile_; }

private:
    StrategyProfile profile_;
};

class ResourceLimit : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tvws

#endif
