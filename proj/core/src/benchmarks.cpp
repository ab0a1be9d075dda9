#include "fatune/benchmarks.hpp"

#include "fatune/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fatune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::string_view, 6> kNames{"sphere", "rosenbrock", "ackley", "trid", "spring", "truss"};

// Three-bar truss: stress limit and load.
constexpr double kTrussSigma = 2000.0;
constexpr double kTrussLoad = 2000.0;

double finite_or_inf(double v) noexcept { return std::isfinite(v) ? v : kInf; }

double sphere(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double rosenbrock(std::span<const double> x) noexcept {
    double s = (1.0 - x[0]) * (1.0 - x[0]);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double t = x[i + 1] - x[i] * x[i];
        s += 100.0 * t * t;
    }
    return s;
}

double ackley(std::span<const double> x) noexcept {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double trid(std::span<const double> x) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += (x[i] - 1.0) * (x[i] - 1.0);
        if (i > 0) s -= x[i] * x[i - 1];
    }
    return s;
}

double spring(std::span<const double> x) noexcept { return (2.0 + x[2]) * x[0] * x[0] * x[1]; }

double truss(std::span<const double> x) noexcept {
    return 100.0 * (2.0 * std::numbers::sqrt2 * x[0] + x[1]);
}

void spring_constraints(std::span<const double> x, std::span<double> g, bool strict) noexcept {
    const double x1 = x[0], x2 = x[1], x3 = x[2];
    const double x1_2 = x1 * x1;
    const double x1_3 = x1_2 * x1;
    const double x1_4 = x1_2 * x1_2;
    g[0] = 1.0 - (x2 * x2 * x2 * x3) / (71785.0 * x1_4);
    g[1] = (4.0 * x2 * x2 - x1 * x2) / (12566.0 * (x2 * x1_3 - x1_4)) + 1.0 / (5108.0 * x1_2) - 1.0;
    g[2] = 1.0 - (140.45 * x1) / (x2 * x2 * x3);
    g[3] = strict ? (x1 + x2) / 1.5 : (x1 + x2) / 1.5 - 1.0;
}

void truss_constraints(std::span<const double> x, std::span<double> g) noexcept {
    const double x1 = x[0], x2 = x[1];
    const double denom = std::numbers::sqrt2 * x1 * x1 + 2.0 * x1 * x2;
    g[0] = (std::numbers::sqrt2 * x1 + x2) * kTrussLoad / denom - kTrussSigma;
    g[1] = x2 * kTrussLoad / denom - kTrussSigma;
    g[2] = kTrussLoad / (x1 + std::numbers::sqrt2 * x2) - kTrussSigma;
}

ProblemId id_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<ProblemId>(i);
    }
    throw UnknownProblem("unknown problem '" + std::string(name) +
                         "' (expected sphere, rosenbrock, ackley, trid, spring or truss)");
}

void require_length(const Problem& p, std::span<const double> x) {
    if (x.size() != p.dimension()) {
        throw ShapeError(p.name() + ": expected a vector of length " + std::to_string(p.dimension()) + ", got " +
                         std::to_string(x.size()));
    }
}

} // namespace

void PenaltyConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("penalty lambda must be a positive finite number");
    }
}

std::string_view Problem::label() const noexcept {
    static constexpr std::array<std::string_view, 6> labels{"f1", "f2", "f3", "f4", "f5", "f6"};
    return labels[static_cast<std::size_t>(id_)];
}

std::size_t Problem::constraint_count() const noexcept {
    switch (id_) {
    case ProblemId::Spring: return 4;
    case ProblemId::Truss: return 3;
    default: return 0;
    }
}

std::string Problem::tag() const { return name_ + ":" + std::to_string(dimension_); }

double Problem::objective_unchecked(std::span<const double> x) const noexcept {
    double v = 0.0;
    switch (id_) {
    case ProblemId::Sphere: v = sphere(x); break;
    case ProblemId::Rosenbrock: v = rosenbrock(x); break;
    case ProblemId::Ackley: v = ackley(x); break;
    case ProblemId::Trid: v = trid(x); break;
    case ProblemId::Spring: v = spring(x); break;
    case ProblemId::Truss: v = truss(x); break;
    }
    return finite_or_inf(v);
}

void Problem::constraints_unchecked(std::span<const double> x, std::span<double> out) const noexcept {
    switch (id_) {
    case ProblemId::Spring: spring_constraints(x, out, options_.strict_spring); break;
    case ProblemId::Truss: truss_constraints(x, out); break;
    default: return;
    }
    for (double& g : out) g = finite_or_inf(g);
}

double Problem::penalized_unchecked(std::span<const double> x, const PenaltyConfig& penalty) const noexcept {
    const double f = objective_unchecked(x);
    const std::size_t k = constraint_count();
    if (k == 0) return f;
    std::array<double, 4> g{};
    constraints_unchecked(x, std::span<double>(g.data(), k));
    double violation = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        violation += std::max(0.0, g[j]);
    }
    return finite_or_inf(f + penalty.lambda * violation);
}

std::span<const std::string_view> problem_names() noexcept { return kNames; }

std::size_t default_dimension(std::string_view name) {
    switch (id_from_name(name)) {
    case ProblemId::Trid: return 4;
    case ProblemId::Spring: return 3;
    case ProblemId::Truss: return 2;
    default: return 10;
    }
}

Problem make_problem(std::string_view name, std::optional<std::size_t> dimension, ProblemOptions options) {
    Problem p;
    p.id_ = id_from_name(name);
    p.name_ = std::string(name);
    p.options_ = options;

    const bool fixed = p.id_ == ProblemId::Spring || p.id_ == ProblemId::Truss;
    if (fixed && dimension) {
        throw InvalidArgument(p.name_ + " has a fixed dimension; no dimension may be given");
    }
    const std::size_t d = dimension.value_or(default_dimension(name));
    if (d == 0) {
        throw InvalidArgument(p.name_ + ": dimension must be positive");
    }
    if (p.id_ == ProblemId::Trid && d < 2) {
        throw InvalidArgument("trid: dimension must be at least 2");
    }
    p.dimension_ = d;

    auto box = [&](double lo, double hi) {
        p.lower_.assign(d, lo);
        p.upper_.assign(d, hi);
    };
    switch (p.id_) {
    case ProblemId::Sphere:
        box(-10.0, 10.0);
        p.best_value_ = 0.0;
        p.best_point_ = std::vector<double>(d, 0.0);
        break;
    case ProblemId::Rosenbrock:
        box(-30.0, 30.0);
        p.best_value_ = 0.0;
        p.best_point_ = std::vector<double>(d, 1.0);
        break;
    case ProblemId::Ackley:
        box(-32.768, 32.768);
        p.best_value_ = 0.0;
        p.best_point_ = std::vector<double>(d, 0.0);
        break;
    case ProblemId::Trid: {
        const double r = static_cast<double>(d * d);
        box(-r, r);
        auto opt = trid_optimum(d);
        p.best_value_ = opt.value;
        p.best_point_ = std::move(opt.point);
        break;
    }
    case ProblemId::Spring:
        p.lower_ = {0.05, 0.25, 2.0};
        p.upper_ = {2.0, 1.3, 15.0};
        // best known literature solution
        p.best_value_ = 0.012665;
        p.best_point_ = std::vector<double>{0.051690, 0.356750, 11.287126};
        break;
    case ProblemId::Truss:
        p.lower_ = {0.001, 0.001};
        p.upper_ = {1.0, 1.0};
        p.best_value_ = 263.8958;
        p.best_point_ = std::vector<double>{0.78853, 0.40866};
        break;
    }
    return p;
}

double evaluate_objective(const Problem& problem, std::span<const double> x) {
    require_length(problem, x);
    return problem.objective_unchecked(x);
}

std::vector<double> evaluate_constraints(const Problem& problem, std::span<const double> x) {
    require_length(problem, x);
    std::vector<double> g(problem.constraint_count());
    problem.constraints_unchecked(x, g);
    return g;
}

double penalized_objective(const Problem& problem, std::span<const double> x, const PenaltyConfig& penalty) {
    require_length(problem, x);
    penalty.validate();
    return problem.penalized_unchecked(x, penalty);
}

TridOptimum trid_optimum(std::size_t dimension) {
    if (dimension < 2) {
        throw InvalidArgument("trid_optimum: dimension must be at least 2");
    }
    const double d = static_cast<double>(dimension);
    TridOptimum opt;
    opt.value = -d * (d + 4.0) * (d - 1.0) / 6.0;
    opt.point.resize(dimension);
    for (std::size_t i = 1; i <= dimension; ++i) {
        opt.point[i - 1] = static_cast<double>(i * (dimension + 1 - i));
    }
    return opt;
}

} // namespace fatune
