#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fatune {

enum class ProblemId { Sphere, Rosenbrock, Ackley, Trid, Spring, Truss };

/// Penalty coefficient for Pi(x) = f(x) + lambda * sum_j max(0, g_j(x)).
struct PenaltyConfig {
    double lambda = 1000.0;

    void validate() const;
    bool operator==(const PenaltyConfig&) const = default;
};

struct ProblemOptions {
    // Use the spring constraint g4 = (x1 + x2)/1.5 <= 0 exactly as printed
    // in the source literature instead of (x1 + x2)/1.5 - 1 <= 0. The literal
    // form is infeasible for every in-bounds point.
    bool strict_spring = false;
};

/// A benchmark minimization problem with box bounds and inequality
/// constraints g_j(x) <= 0. Immutable after construction.
class Problem {
public:
    ProblemId id() const noexcept { return id_; }
    const std::string& name() const noexcept { return name_; }
    /// Canonical label "f1".."f6".
    std::string_view label() const noexcept;
    std::size_t dimension() const noexcept { return dimension_; }
    std::span<const double> lower_bounds() const noexcept { return lower_; }
    std::span<const double> upper_bounds() const noexcept { return upper_; }
    std::size_t constraint_count() const noexcept;
    bool strict_spring() const noexcept { return options_.strict_spring; }

    const std::optional<double>& known_best_value() const noexcept { return best_value_; }
    const std::optional<std::vector<double>>& known_best_point() const noexcept { return best_point_; }

    /// Stable identifier used for seed derivation and report keys, e.g. "sphere:10".
    std::string tag() const;

    // Unchecked kernels; x.size() must equal dimension().
    double objective_unchecked(std::span<const double> x) const noexcept;
    void constraints_unchecked(std::span<const double> x, std::span<double> out) const noexcept;
    double penalized_unchecked(std::span<const double> x, const PenaltyConfig& penalty) const noexcept;

private:
    friend Problem make_problem(std::string_view, std::optional<std::size_t>, ProblemOptions);

    ProblemId id_ = ProblemId::Sphere;
    std::string name_;
    std::size_t dimension_ = 0;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::optional<double> best_value_;
    std::optional<std::vector<double>> best_point_;
    ProblemOptions options_;
};

/// Names accepted by make_problem, in canonical f1..f6 order.
std::span<const std::string_view> problem_names() noexcept;

/// Default dimension used when none is given: 10 for sphere, rosenbrock and
/// ackley, 4 for trid, fixed for spring (3) and truss (2).
std::size_t default_dimension(std::string_view name);

/// Throws UnknownProblem for an unknown name and InvalidArgument when a
/// dimension is passed for spring/truss or is out of range.
Problem make_problem(std::string_view name, std::optional<std::size_t> dimension = std::nullopt,
                     ProblemOptions options = {});

/// Raw objective. Throws ShapeError when x has the wrong length.
double evaluate_objective(const Problem& problem, std::span<const double> x);

/// g_j(x) for every constraint; non-finite values are reported as +inf.
std::vector<double> evaluate_constraints(const Problem& problem, std::span<const double> x);

/// f(x) + lambda * sum max(0, g_j(x)); +inf if anything is non-finite.
double penalized_objective(const Problem& problem, std::span<const double> x, const PenaltyConfig& penalty);

struct TridOptimum {
    double value = 0.0;
    std::vector<double> point;
};

/// Closed-form Trid minimum: value -D(D+4)(D-1)/6 at x_i = i(D+1-i).
TridOptimum trid_optimum(std::size_t dimension);

} // namespace fatune
