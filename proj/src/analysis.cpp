#include "sdpcolor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sdpcolor/rng.hpp"

namespace sdpcolor {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < std::numbers::pi / 2))
    throw std::domain_error("beta must lie in (0, pi/2)");
}

template <typename F>
double integrate(F f, double upper) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 20, 1e-13, &error);
  return value;
}

// exp(-c^2 / (2 sin^2 t)), zero at t = 0 for c > 0.
double wedge_kernel(double c, double t) {
  const double s = std::sin(t);
  if (s == 0.0) return c == 0.0 ? 1.0 : 0.0;
  return std::exp(-c * c / (2.0 * s * s));
}

}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

WedgeSpec WedgeSpec::from_alpha(double alpha, double c) {
  if (!(alpha > 2.0)) throw std::domain_error("wedge angle needs alpha > 2");
  return {0.5 * std::acos(1.0 / (alpha - 1.0)), c};
}

double WedgeSpec::alpha() const {
  const double cos2 = std::cos(2.0 * beta);
  return cos2 <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 + 1.0 / cos2;
}

double wedge_probability_exact(const WedgeSpec& w) {
  require_beta(w.beta);
  if (w.c < 0) throw std::domain_error("threshold must be nonnegative");
  const double c = w.c;
  return integrate([c](double t) { return wedge_kernel(c, t); }, w.beta) / std::numbers::pi;
}

double wedge_q_integral(const WedgeSpec& w) {
  require_beta(w.beta);
  const double c = w.c;
  auto f = [c](double t) {
    const double s = std::sin(t);
    const double tn = std::tan(t);
    return wedge_kernel(c, t) * (2.0 * s * s + tn * tn);
  };
  return integrate(f, w.beta) / std::numbers::pi;
}

MonteCarloEstimate wedge_probability_mc(const WedgeSpec& w, std::uint64_t samples,
                                        std::uint64_t seed) {
  require_beta(w.beta);
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  const double sb = std::sin(w.beta);
  const double cb = std::cos(w.beta);
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double x = rng.normal();
    const double y = rng.normal();
    const double along = sb * x;
    const double across = cb * y;
    // v1 . r = along + across, v2 . r = along - across.
    if (along + across >= w.c && along - across >= w.c) ++hits;
  }
  MonteCarloEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

double BoundSet::best_upper() const {
  double best = upper_single;
  if (claim_applies) best = std::min(best, upper_claim);
  if (general_applies) best = std::min(best, upper_general);
  return best;
}

double pair_upper_bound(double c, double alpha) {
  if (!(alpha > 2.0)) return kNaN;
  const double t = normal_tail(std::sqrt((alpha - 1.0) / (alpha - 2.0)) * c);
  return t * t;
}

BoundSet wedge_bounds(const WedgeSpec& w, double alpha) {
  require_beta(w.beta);
  const double s = std::sin(w.beta);
  const double tn = std::tan(w.beta);
  const double c2 = w.c * w.c;
  BoundSet out;
  out.A = 2.0 * s * s + tn * tn;
  out.B = s * s * s / (std::numbers::pi * std::cos(w.beta));
  out.lower = out.B / (c2 + out.A) * std::exp(-c2 / (2.0 * s * s));
  const double claim = normal_tail(std::numbers::sqrt2 * w.c);
  out.upper_claim = claim * claim;
  // Tolerance on the angle so pi/6 and pi/4 passed as doubles qualify.
  constexpr double slack = 1e-12;
  if (w.beta > std::numbers::pi / 4 + slack) {
    // Positively correlated pair: no product bound.
    out.upper_general = kNaN;
    out.upper_general_floor = kNaN;
  } else {
    out.upper_general =
        std::isinf(alpha) ? std::pow(normal_tail(w.c), 2) : pair_upper_bound(w.c, alpha);
    out.upper_general_floor = std::isinf(alpha) ? kNaN : pair_upper_bound(w.c, std::floor(alpha));
  }
  out.upper_single = normal_tail(w.c);
  out.claim_applies = w.beta <= std::numbers::pi / 6 + slack;
  out.general_applies = w.beta <= std::numbers::pi / 4 + slack && !std::isnan(out.upper_general);
  return out;
}

BoundSet wedge_bounds(const WedgeSpec& w) { return wedge_bounds(w, w.alpha()); }

double expected_rounding_size(double n, double d_avg, double alpha, double c) {
  return n * (normal_tail(c) - 0.5 * d_avg * pair_upper_bound(c, alpha));
}

std::vector<SweepRow> bound_sweep(const std::vector<double>& betas, const std::vector<double>& cs,
                                  std::uint64_t mc_samples, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  const Rng root(seed);
  std::uint64_t cell = 0;
  for (double beta : betas)
    for (double c : cs) {
      const WedgeSpec w{beta, c};
      const BoundSet b = wedge_bounds(w);
      SweepRow row{beta, c, wedge_probability_exact(w), kNaN, kNaN, b.lower,
                   b.claim_applies ? b.upper_claim : kNaN, b.upper_general};
      if (mc_samples > 0) {
        const auto mc = wedge_probability_mc(w, mc_samples, root.split(cell).seed());
        row.mc = mc.estimate;
        row.se = mc.std_error;
      }
      ++cell;
      rows.push_back(row);
    }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto old_precision = out.precision(17);
  out << "# schema: 1\n";
  out << "beta,c,exact,mc,se,lower,upper_claim,upper_general\n";
  auto cell = [&](double v) {
    if (std::isnan(v))
      out << "nan";
    else
      out << v;
  };
  for (const auto& r : rows) {
    for (double v : {r.beta, r.c, r.exact, r.mc, r.se, r.lower, r.upper_claim}) {
      cell(v);
      out << ',';
    }
    cell(r.upper_general);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace sdpcolor
