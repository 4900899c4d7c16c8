#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sdpcolor/analysis.hpp"
#include "sdpcolor/rounding.hpp"

using namespace sdpcolor;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("normal tail") {
  CHECK(normal_tail(0.0) == 0.5);
  // 30-digit references.
  CHECK(normal_tail(1.0) == doctest::Approx(0.158655253931457051).epsilon(1e-14));
  CHECK(normal_tail(2.0) == doctest::Approx(0.0227501319481792072).epsilon(1e-14));
  CHECK(normal_tail(3.5) == doctest::Approx(0.000232629079035525036).epsilon(1e-13));
  CHECK(normal_tail(-1.0) == doctest::Approx(1.0 - 0.158655253931457051).epsilon(1e-15));

  const double phi2 = normal_pdf(2.0);
  CHECK((0.5 - 0.125) * phi2 <= normal_tail(2.0));
  CHECK(normal_tail(2.0) <= phi2 / 2);
  CHECK((0.5 - 0.125) * phi2 == doctest::Approx(0.020246).epsilon(1e-4));
  CHECK(phi2 / 2 == doctest::Approx(0.026995).epsilon(1e-4));
}

TEST_CASE("wedge from alpha") {
  CHECK(WedgeSpec::from_alpha(3, 0).beta == doctest::Approx(pi / 6));
  CHECK(WedgeSpec{pi / 6, 0}.alpha() == doctest::Approx(3.0));
  CHECK(WedgeSpec::from_alpha(5, 0).alpha() == doctest::Approx(5.0));
  CHECK_THROWS(WedgeSpec::from_alpha(2, 1));
}

TEST_CASE("exact wedge probability") {
  CHECK(wedge_probability_exact({pi / 2 - 1e-15, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wedge_probability_exact({pi / 4, 0.0}) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(wedge_probability_exact({pi / 6, 0.0}) == doctest::Approx(1.0 / 6).epsilon(1e-12));
  // 30-digit quadrature references.
  struct Ref {
    double beta, c, p;
  };
  for (const Ref r : {Ref{pi / 6, 1.5, 0.000172304610034313026}, Ref{pi / 6, 1.0, 0.00378230207285426388},
                      Ref{pi / 12, 0.5, 0.00215780243904824132}, Ref{pi / 4, 2.0, 0.000517568503659564250},
                      Ref{pi / 3, 3.0, 0.0000818896618321921122}}) {
    CAPTURE(r.beta);
    CAPTURE(r.c);
    CHECK(std::abs(wedge_probability_exact({r.beta, r.c}) - r.p) <= 1e-10);
  }
  // Orthogonal vectors give independent events.
  CHECK(wedge_probability_exact({pi / 4, 1.3}) ==
        doctest::Approx(std::pow(normal_tail(1.3), 2)).epsilon(1e-10));
  CHECK_THROWS(wedge_probability_exact({0.0, 1.0}));
  CHECK_THROWS(wedge_probability_exact({pi / 2, 1.0}));
}

TEST_CASE("monte carlo wedge") {
  const auto far = wedge_probability_mc({pi / 6, 10.0}, 100000, 1);
  CHECK(far.estimate == 0.0);
  const auto origin = wedge_probability_mc({pi / 6, 0.0}, 200000, 2);
  CHECK(std::abs(origin.estimate - 1.0 / 6) <= 4 * origin.std_error);
  const auto one = wedge_probability_mc({pi / 6, 1.0}, 1000000, 3);
  CHECK(std::abs(one.estimate - wedge_probability_exact({pi / 6, 1.0})) <= 4 * one.std_error);
  CHECK(wedge_probability_mc({pi / 6, 1.0}, 1000, 9).estimate ==
        wedge_probability_mc({pi / 6, 1.0}, 1000, 9).estimate);
}

TEST_CASE("bound constants") {
  const auto b = wedge_bounds({pi / 6, 1.5}, 3.0);
  CHECK(b.A == doctest::Approx(5.0 / 6));
  CHECK(b.B == doctest::Approx(1.0 / (4 * std::sqrt(3.0) * pi)));
  const double p = wedge_probability_exact({pi / 6, 1.5});
  CHECK(b.lower <= p);
  CHECK(p <= b.upper_claim);
  CHECK(b.upper_general == doctest::Approx(b.upper_claim));
  CHECK(b.lower == doctest::Approx(b.B / (2.25 + b.A) * std::exp(-4.5)));
  CHECK_THROWS(wedge_bounds({pi / 2, 1.0}, 3.0));
  CHECK(std::isnan(wedge_bounds({pi / 3, 1.0}).upper_general));
}

TEST_CASE("sandwich on grid") {
  for (double beta : {pi / 12, pi / 6, pi / 4, pi / 3}) {
    for (int i = 0; i <= 12; ++i) {
      const double c = 0.25 * i;
      CAPTURE(beta);
      CAPTURE(c);
      const WedgeSpec w{beta, c};
      const auto b = wedge_bounds(w);
      const double p = wedge_probability_exact(w);
      CHECK(b.lower <= p + 1e-10);
      CHECK(p <= b.best_upper() + 1e-10);
      if (b.general_applies) CHECK(p <= b.upper_general + 1e-10);
      if (b.claim_applies) CHECK(p <= b.upper_claim + 1e-10);
    }
  }
}

TEST_CASE("lower bound is tight up to a constant") {
  const auto at = [](double c) {
    const WedgeSpec w{pi / 6, c};
    return wedge_probability_exact(w) / wedge_bounds(w).lower;
  };
  const double a = wedge_bounds({pi / 6, 1.0}).A;
  for (double c = 1.0; c <= 3.0; c += 0.125) {
    CAPTURE(c);
    const double ratio = at(c);
    CHECK(ratio >= 1.0 - 1e-9);
    // The identity also gives P <= B e^{...} / c^2.
    CHECK(ratio <= 1.0 + a / (c * c) + 1e-9);
  }
  CHECK(at(3.0) < at(1.0));
}

TEST_CASE("integration by parts identity") {
  for (double beta : {pi / 12, pi / 6, pi / 4, pi / 3})
    for (double c : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      CAPTURE(beta);
      CAPTURE(c);
      const WedgeSpec w{beta, c};
      const auto b = wedge_bounds(w);
      const double s = std::sin(beta);
      const double closed = b.B * std::exp(-c * c / (2 * s * s)) - c * c * wedge_probability_exact(w);
      CHECK(std::abs(wedge_q_integral(w) - closed) <= 1e-8);
    }
}

TEST_CASE("general bound variants") {
  // alpha = 3.5 lies strictly between integers; the floor variant differs.
  const auto w = WedgeSpec::from_alpha(3.5, 1.2);
  const auto b = wedge_bounds(w, 3.5);
  CHECK(b.upper_general > b.upper_general_floor);
  CHECK(wedge_probability_exact(w) <= b.upper_general);
  CHECK(std::isnan(wedge_bounds(WedgeSpec::from_alpha(2.5, 1.0), 2.5).upper_general_floor));
}

TEST_CASE("expected rounding size") {
  const double e6 = std::exp(6.0);
  const double c = kms_threshold(3, e6);
  CHECK(expected_rounding_size(1000, e6, 3, c) > 0);
  CHECK(normal_tail(c) / std::pow(normal_tail(std::sqrt(2.0) * c), 2) > e6);
  for (double l = 3.0; l <= 10.0; l += 0.25) {
    CAPTURE(l);
    CHECK(expected_rounding_size(1000, std::exp(l), 3, kms_threshold(3, std::exp(l))) > 0);
  }
  CHECK(expected_rounding_size(1000, 0, 3, 1.0) == doctest::Approx(1000 * normal_tail(1.0)));
  const double big = expected_rounding_size(1000, 20, 3, 9.0);
  CHECK(big > 0);
  CHECK(big < 1e-15);
}

TEST_CASE("sweep csv") {
  const auto rows = bound_sweep({pi / 6}, {0.5, 1.0}, 0, 1);
  REQUIRE(rows.size() == 2);
  CHECK(std::isnan(rows[0].mc));
  std::ostringstream os;
  write_sweep_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.rfind("# schema: 1\nbeta,c,exact,mc,se,lower,upper_claim,upper_general\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
