#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sdpcolor {

/// Standard normal density.
double normal_pdf(double x);

/// Upper tail N(x) = P[Z >= x] for a standard normal Z.
double normal_tail(double x);

/// Two unit vectors with v1 . v2 = -cos(2 beta) and a common threshold c.
struct WedgeSpec {
  double beta = 0.0;  // in (0, pi/2)
  double c = 0.0;     // >= 0

  /// beta with cos(2 beta) = 1/(alpha - 1), i.e. the tight angle of a vector alpha-coloring.
  static WedgeSpec from_alpha(double alpha, double c);
  /// The coloring parameter whose edge bound equals -cos(2 beta); +inf at pi/4.
  double alpha() const;
};

/// P[v1 . r >= c and v2 . r >= c] = (1/pi) int_0^beta exp(-c^2 / (2 sin^2 t)) dt,
/// by adaptive Gauss-Kronrod quadrature (absolute error <= 1e-10).
double wedge_probability_exact(const WedgeSpec& w);

/// (1/pi) int_0^beta exp(-c^2 / (2 sin^2 t)) (2 sin^2 t + tan^2 t) dt by quadrature.
double wedge_q_integral(const WedgeSpec& w);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Samples a planar standard normal r and counts hits with
/// v1 = (sin b, cos b), v2 = (sin b, -cos b).
MonteCarloEstimate wedge_probability_mc(const WedgeSpec& w, std::uint64_t samples,
                                        std::uint64_t seed);

struct BoundSet {
  double A = 0.0;      // 2 sin^2 b + tan^2 b
  double B = 0.0;      // sin^3 b / (pi cos b)
  double lower = 0.0;  // B / (c^2 + A) * exp(-c^2 / (2 sin^2 b))
  /// N(sqrt(2) c)^2, valid for beta <= pi/6.
  double upper_claim = 0.0;
  /// N(sqrt((alpha-1)/(alpha-2)) c)^2 at the given alpha, valid for beta <= pi/4
  /// (NaN beyond that).
  double upper_general = 0.0;
  /// Same with floor(alpha) in place of alpha. Not a valid bound in general;
  /// reported for comparison only (NaN when floor(alpha) <= 2).
  double upper_general_floor = 0.0;
  /// N(c): a single half-plane contains the wedge, valid for every beta.
  double upper_single = 0.0;
  bool claim_applies = false;
  bool general_applies = false;

  /// Smallest upper bound that is valid at this beta.
  double best_upper() const;
};

/// Throws std::domain_error for beta outside (0, pi/2); alpha must exceed 2
/// for the general bound (otherwise it is reported as NaN).
BoundSet wedge_bounds(const WedgeSpec& w, double alpha);
/// Uses the alpha implied by beta.
BoundSet wedge_bounds(const WedgeSpec& w);

/// Upper bound on the pair probability used by the expected-size estimate.
double pair_upper_bound(double c, double alpha);

/// n (N(c) - (D/2) N(sqrt((alpha-1)/(alpha-2)) c)^2).
double expected_rounding_size(double n, double d_avg, double alpha, double c);

struct SweepRow {
  double beta = 0.0;
  double c = 0.0;
  double exact = 0.0;
  double mc = 0.0;
  double se = 0.0;
  double lower = 0.0;
  double upper_claim = 0.0;
  double upper_general = 0.0;
};

/// Grid sweep; mc_samples = 0 skips the Monte Carlo columns (written as NaN).
std::vector<SweepRow> bound_sweep(const std::vector<double>& betas, const std::vector<double>& cs,
                                  std::uint64_t mc_samples, std::uint64_t seed);

/// CSV with a "# schema: 1" first line and a header row.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace sdpcolor
