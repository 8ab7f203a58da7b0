#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "nfold/lattice.hpp"

namespace nfold {

/// c * y
struct LinearTerm {
  Integer coefficient;
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

/// weight * |y|^exponent, weight >= 0, exponent >= 1.
struct AbsPowerTerm {
  Integer weight;
  unsigned exponent = 1;
  friend bool operator==(const AbsPowerTerm&, const AbsPowerTerm&) = default;
};

/// Convex piecewise-linear function. slopes[0] applies left of breakpoints[0],
/// slopes[k] between breakpoints[k-1] and breakpoints[k], and slopes.back()
/// right of the last breakpoint.
struct PiecewiseLinearTerm {
  Integer value_at_zero;
  std::vector<Integer> breakpoints;
  std::vector<Integer> slopes;
  friend bool operator==(const PiecewiseLinearTerm&, const PiecewiseLinearTerm&) = default;
};

/// Univariate convex function known only through point probes. The solver
/// uses probes solely to compare objective values along a direction.
class UnivariateOracle {
 public:
  virtual ~UnivariateOracle() = default;
  virtual Integer probe(const Integer& y) const = 0;
};

struct OracleTerm {
  std::shared_ptr<const UnivariateOracle> handle;
  friend bool operator==(const OracleTerm& a, const OracleTerm& b) { return a.handle == b.handle; }
};

using TermKind = std::variant<LinearTerm, AbsPowerTerm, PiecewiseLinearTerm, OracleTerm>;

/// Univariate convex term z -> kind(direction * z + offset), direction = ±1.
/// The affine argument lets encoders reflect a term without changing its kind.
struct Term {
  TermKind kind = LinearTerm{};
  int direction = 1;
  Integer offset;

  static Term zero() { return Term{}; }
  static Term linear(Integer coefficient);
  static Term abs_power(Integer weight, unsigned exponent);
  static Term piecewise_linear(Integer value_at_zero, std::vector<Integer> breakpoints, std::vector<Integer> slopes);
  static Term oracle(std::shared_ptr<const UnivariateOracle> handle);
  /// dist(z, [lower, upper]) with missing bounds meaning infinity.
  static Term distance_to_interval(const std::optional<Integer>& lower, const std::optional<Integer>& upper);

  /// The term z -> this(direction * z + offset).
  Term compose(int direction, const Integer& offset) const;

  bool is_oracle() const noexcept { return std::holds_alternative<OracleTerm>(kind); }
  /// Throws std::invalid_argument when the term is not convex or malformed.
  void validate() const;
  /// Exact value. Throws OracleEvaluationError for oracle terms.
  Integer operator()(const Integer& z) const;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Limit of f(z + 1) - f(z) as z moves to infinity in one direction.
struct AsymptoticSlope {
  bool infinite = false;  // +infinity
  Integer value;
};

/// f(x) = sum_i f_i(x_i) with univariate convex f_i.
class SeparableConvexObjective {
 public:
  SeparableConvexObjective() = default;
  /// Validates every term.
  explicit SeparableConvexObjective(std::vector<Term> terms);
  static SeparableConvexObjective zero(std::size_t dimension);
  static SeparableConvexObjective linear(const IntVector& costs);

  std::size_t dimension() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& term(std::size_t i) const { return terms_[i]; }
  bool has_oracle() const noexcept { return has_oracle_; }

  /// Exact f(x). Throws OracleEvaluationError if any term is an oracle and
  /// DimensionError on a size mismatch.
  Integer evaluate(const IntVector& x) const;

  /// f(x + step * g) - f(x), summed over the support of g. Oracle terms are
  /// probed.
  Integer change(const IntVector& x, const IntVector& g, const Integer& step) const;

  /// Limit of f(x + (a+1) g) - f(x + a g) as a -> +infinity, or nullopt when
  /// an oracle term on the support of g makes it unknown.
  std::optional<AsymptoticSlope> asymptotic_slope(const IntVector& g) const;

  /// Concatenation (this terms, then other terms).
  SeparableConvexObjective append(const SeparableConvexObjective& other) const;

  friend bool operator==(const SeparableConvexObjective& a, const SeparableConvexObjective& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<Term> terms_;
  bool has_oracle_ = false;
};

}  // namespace nfold
