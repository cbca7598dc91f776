#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geoscatter/types.hpp"

namespace geoscatter {

// Argument outside the domain of a special function or geometric evaluator.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class OverflowError : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

/*!
 * Adaptive quadrature did not reach its tolerance within the subdivision
 * budget. The best estimate and its error bound are retained.
 */
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(std::string const& what, Complex estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound)
    {
    }

    Complex estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    Complex estimate_;
    double error_bound_;
};

// Interaction matrix singular to working precision: bound state or resonance.
class ResonanceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class SingularRenormalizationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidConfigurationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Scenario file problems; carries every violation found, not just the first.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems))
    {
    }

    std::vector<std::string> const& problems() const noexcept { return problems_; }

  private:
    static std::string join(std::vector<std::string> const& items)
    {
        std::string out;
        for (auto const& item : items) {
            if (!out.empty())
                out += "; ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace geoscatter
