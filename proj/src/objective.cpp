#include "nfold/objective.hpp"

#include <stdexcept>

#include "nfold/errors.hpp"

namespace nfold {

namespace {

// Integral of the slope function from breakpoints[0] to y, or slopes[0] * y
// when there are no breakpoints.
Integer piecewise_antiderivative(const PiecewiseLinearTerm& p, const Integer& y) {
  if (p.breakpoints.empty()) return p.slopes[0] * y;
  const auto& bp = p.breakpoints;
  if (y <= bp[0]) return p.slopes[0] * (y - bp[0]);
  Integer out;
  for (std::size_t k = 0; k < bp.size(); ++k) {
    const bool last = k + 1 == bp.size();
    const Integer& right = (last || y < bp[k + 1]) ? y : bp[k + 1];
    out += p.slopes[k + 1] * (right - bp[k]);
    if (last || y <= bp[k + 1]) break;
  }
  return out;
}

Integer kind_value(const TermKind& kind, const Integer& y) {
  return std::visit(
      [&](const auto& k) -> Integer {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LinearTerm>) {
          return k.coefficient * y;
        } else if constexpr (std::is_same_v<K, AbsPowerTerm>) {
          if (k.weight.is_zero()) return Integer{};
          return k.weight * y.abs().pow(k.exponent);
        } else if constexpr (std::is_same_v<K, PiecewiseLinearTerm>) {
          return k.value_at_zero + piecewise_antiderivative(k, y) - piecewise_antiderivative(k, Integer{});
        } else {
          return k.handle->probe(y);
        }
      },
      kind);
}

Integer term_probe(const Term& t, const Integer& z) {
  Integer y = t.direction > 0 ? z : -z;
  y += t.offset;
  return kind_value(t.kind, y);
}

// Slope of the term at +infinity (sign = 1) or -infinity (sign = -1) of its
// own argument, measured per unit step in that direction.
std::optional<AsymptoticSlope> kind_slope(const TermKind& kind, int sign) {
  return std::visit(
      [&](const auto& k) -> std::optional<AsymptoticSlope> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LinearTerm>) {
          return AsymptoticSlope{false, sign > 0 ? k.coefficient : -k.coefficient};
        } else if constexpr (std::is_same_v<K, AbsPowerTerm>) {
          if (k.weight.is_zero()) return AsymptoticSlope{};
          if (k.exponent == 1) return AsymptoticSlope{false, k.weight};
          return AsymptoticSlope{true, {}};
        } else if constexpr (std::is_same_v<K, PiecewiseLinearTerm>) {
          return AsymptoticSlope{false, sign > 0 ? k.slopes.back() : -k.slopes.front()};
        } else {
          return std::nullopt;
        }
      },
      kind);
}

}  // namespace

Term Term::linear(Integer coefficient) { return Term{LinearTerm{std::move(coefficient)}, 1, {}}; }

Term Term::abs_power(Integer weight, unsigned exponent) {
  Term t{AbsPowerTerm{std::move(weight), exponent}, 1, {}};
  t.validate();
  return t;
}

Term Term::piecewise_linear(Integer value_at_zero, std::vector<Integer> breakpoints, std::vector<Integer> slopes) {
  Term t{PiecewiseLinearTerm{std::move(value_at_zero), std::move(breakpoints), std::move(slopes)}, 1, {}};
  t.validate();
  return t;
}

Term Term::oracle(std::shared_ptr<const UnivariateOracle> handle) {
  Term t{OracleTerm{std::move(handle)}, 1, {}};
  t.validate();
  return t;
}

Term Term::distance_to_interval(const std::optional<Integer>& lower, const std::optional<Integer>& upper) {
  if (lower && upper && *lower > *upper) throw std::invalid_argument("distance_to_interval: empty interval");
  if (lower && upper) {
    if (*lower == *upper) return piecewise_linear((-*lower).abs(), {*lower}, {-1, 1});
    Integer at_zero = lower->sign() > 0 ? *lower : (upper->sign() < 0 ? -*upper : Integer{});
    return piecewise_linear(std::move(at_zero), {*lower, *upper}, {-1, 0, 1});
  }
  if (lower) return piecewise_linear(lower->sign() > 0 ? *lower : Integer{}, {*lower}, {-1, 0});
  if (upper) return piecewise_linear(upper->sign() < 0 ? -*upper : Integer{}, {*upper}, {0, 1});
  return zero();
}

Term Term::compose(int dir, const Integer& off) const {
  if (dir != 1 && dir != -1) throw std::invalid_argument("Term::compose: direction must be +1 or -1");
  Term out = *this;
  out.direction = direction * dir;
  out.offset = (direction > 0 ? off : -off) + offset;
  return out;
}

void Term::validate() const {
  if (direction != 1 && direction != -1) throw std::invalid_argument("term direction must be +1 or -1");
  if (const auto* p = std::get_if<AbsPowerTerm>(&kind)) {
    if (p->weight.sign() < 0) throw std::invalid_argument("abs_power weight must be nonnegative");
    if (p->exponent < 1) throw std::invalid_argument("abs_power exponent must be at least 1");
  } else if (const auto* p = std::get_if<PiecewiseLinearTerm>(&kind)) {
    if (p->slopes.size() != p->breakpoints.size() + 1) {
      throw std::invalid_argument("piecewise_linear needs one more slope than breakpoints");
    }
    for (std::size_t k = 1; k < p->breakpoints.size(); ++k) {
      if (!(p->breakpoints[k - 1] < p->breakpoints[k])) {
        throw std::invalid_argument("piecewise_linear breakpoints must be strictly increasing");
      }
    }
    for (std::size_t k = 1; k < p->slopes.size(); ++k) {
      if (p->slopes[k] < p->slopes[k - 1]) throw std::invalid_argument("piecewise_linear slopes must be nondecreasing");
    }
  } else if (const auto* p = std::get_if<OracleTerm>(&kind)) {
    if (!p->handle) throw std::invalid_argument("oracle term without a handle");
  }
}

Integer Term::operator()(const Integer& z) const {
  if (is_oracle()) throw OracleEvaluationError("oracle terms can only be compared, not evaluated");
  return term_probe(*this, z);
}

SeparableConvexObjective::SeparableConvexObjective(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    t.validate();
    if (t.is_oracle()) has_oracle_ = true;
  }
}

SeparableConvexObjective SeparableConvexObjective::zero(std::size_t dimension) {
  return SeparableConvexObjective(std::vector<Term>(dimension));
}

SeparableConvexObjective SeparableConvexObjective::linear(const IntVector& costs) {
  std::vector<Term> terms;
  terms.reserve(costs.size());
  for (const auto& c : costs) terms.push_back(Term::linear(c));
  return SeparableConvexObjective(std::move(terms));
}

Integer SeparableConvexObjective::evaluate(const IntVector& x) const {
  if (x.size() != terms_.size()) throw DimensionError("objective dimension does not match point");
  if (has_oracle_) throw OracleEvaluationError("objective with oracle terms cannot be evaluated");
  Integer out;
  for (std::size_t i = 0; i < x.size(); ++i) out += term_probe(terms_[i], x[i]);
  return out;
}

Integer SeparableConvexObjective::change(const IntVector& x, const IntVector& g, const Integer& step) const {
  if (x.size() != terms_.size() || g.size() != terms_.size()) {
    throw DimensionError("objective dimension does not match point");
  }
  Integer out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (g[i].is_zero()) continue;
    if (const auto* lin = std::get_if<LinearTerm>(&terms_[i].kind)) {
      Integer d = lin->coefficient * g[i] * step;
      if (terms_[i].direction < 0) d = -d;
      out += d;
      continue;
    }
    out += term_probe(terms_[i], x[i] + g[i] * step);
    out -= term_probe(terms_[i], x[i]);
  }
  return out;
}

std::optional<AsymptoticSlope> SeparableConvexObjective::asymptotic_slope(const IntVector& g) const {
  if (g.size() != terms_.size()) throw DimensionError("objective dimension does not match direction");
  AsymptoticSlope total;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero()) continue;
    const int sign = g[i].sign() * terms_[i].direction;
    auto s = kind_slope(terms_[i].kind, sign);
    if (!s) return std::nullopt;
    if (s->infinite) {
      total.infinite = true;
      continue;
    }
    total.value += s->value * g[i].abs();
  }
  return total;
}

SeparableConvexObjective SeparableConvexObjective::append(const SeparableConvexObjective& other) const {
  std::vector<Term> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return SeparableConvexObjective(std::move(terms));
}

}  // namespace nfold
