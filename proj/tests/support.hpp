#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "diffgeo/diffgeo.hpp"

namespace diffgeo::test {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform point in the middle 90% of an interval.
inline double interior(std::mt19937_64& rng, const Interval& d) {
  const double pad = 0.05 * d.width();
  return uniform(rng, d.lo + pad, d.hi - pad);
}

inline std::vector<Param2> random_points(const ParametricSurface& s, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Param2> out;
  for (int i = 0; i < n; ++i) out.push_back({interior(rng, s.domain().u), interior(rng, s.domain().v)});
  return out;
}

/// Random expression trees over the given variables.
class TreeGenerator {
 public:
  struct Options {
    int max_depth = 4;
    bool any_numbers = true;  // arbitrary doubles instead of short decimals
  };

  TreeGenerator(std::uint64_t seed, std::vector<std::string> variables, Options options)
      : rng_(seed), vars_(std::move(variables)), opt_(options) {}

  Expr next() { return node(opt_.max_depth); }

 private:
  Expr leaf() {
    const int pick = std::uniform_int_distribution<int>(0, 5)(rng_);
    if (pick <= 2) return Expr::variable(vars_[std::uniform_int_distribution<std::size_t>(0, vars_.size() - 1)(rng_)]);
    if (pick == 3) return Expr::constant("pi");
    if (opt_.any_numbers) return Expr::number(std::ldexp(uniform(rng_, 0.5, 1.0), std::uniform_int_distribution<int>(-8, 8)(rng_)));
    return Expr::number(std::round(uniform(rng_, 0.1, 3.0) * 100) / 100);
  }

  Expr node(int depth) {
    if (depth == 0 || std::uniform_int_distribution<int>(0, 3)(rng_) == 0) return leaf();
    const int pick = std::uniform_int_distribution<int>(0, 9)(rng_);
    if (pick == 0) return Expr::negate(node(depth - 1));
    if (pick <= 3) {
      static constexpr Elementary fs[] = {Elementary::Sin,  Elementary::Cos,  Elementary::Exp,  Elementary::Atan,
                                          Elementary::Tanh, Elementary::Sinh, Elementary::Cosh, Elementary::Log,
                                          Elementary::Sqrt, Elementary::Tan,  Elementary::Asin, Elementary::Acos};
      return Expr::call(fs[std::uniform_int_distribution<int>(0, 11)(rng_)], node(depth - 1));
    }
    if (pick == 4) {
      // Powers keep a constant exponent so the tree stays smooth almost everywhere.
      const double p = std::uniform_int_distribution<int>(-2, 4)(rng_) + (opt_.any_numbers ? 0.5 : 0.0);
      const Expr e = p < 0 ? Expr::negate(Expr::number(-p)) : Expr::number(p);
      return Expr::binary('^', node(depth - 1), e);
    }
    static constexpr char ops[] = {'+', '-', '*', '/', '*'};
    return Expr::binary(ops[pick - 5], node(depth - 1), node(depth - 1));
  }

  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
  Options opt_;
};

/// Five-point central difference of f at x.
template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double relative_error(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

inline double max_abs(const Vec3& v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); }

}  // namespace diffgeo::test
