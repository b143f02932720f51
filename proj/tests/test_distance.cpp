#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "cpmec/cpm.hpp"
#include "cpmec/distance.hpp"
#include "oracles.hpp"

using namespace cpmec;

namespace {

CpmScheme scheme_of(PulseKind kind, int m, double h, int n, double bt = 0.3) {
  CpmScheme s;
  s.m_ary = m;
  s.mod_index = h;
  s.pulse_len = n;
  s.pulse.kind = kind;
  s.pulse.bt_product = bt;
  return s;
}

// Distance of one difference sequence by adaptive quadrature, built directly
// on the phase pulse; independent of the library's fixed-panel rule.
double distance_oracle(const CpmScheme& s, const std::vector<int>& deltas,
                       int horizon) {
  const double two_pi_h = 2.0 * std::numbers::pi * s.mod_index;
  const auto dphi = [&](double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      acc += deltas[i] *
             phase_pulse_value(s, t - static_cast<double>(i) * s.symbol_period);
    }
    return two_pi_h * acc;
  };
  // Integrate interval by interval so the adaptive rule never straddles the
  // kinks at symbol boundaries.
  double total = 0.0;
  for (int k = 0; k < horizon; ++k) {
    total += oracles::integrate(
        [&](double t) { return 1.0 - std::cos(dphi(t)); },
        k * s.symbol_period, (k + 1) * s.symbol_period, 1e-13);
  }
  return s.bits_per_symbol() / s.symbol_period * total;
}

}  // namespace

TEST_CASE("pairwise distance matches the quadrature oracle") {
  struct Case {
    CpmScheme s;
    std::vector<int> deltas;
  };
  const std::vector<Case> cases{
      {scheme_of(PulseKind::Rec, 2, 0.75, 3), {2, -2}},
      {scheme_of(PulseKind::Rc, 4, 0.75, 3), {2, -4, 2, 0, -2}},
      {scheme_of(PulseKind::Gmsk, 4, 0.75, 3), {-6, 4, 2}},
      {scheme_of(PulseKind::Rc, 16, 0.75, 3), {8, -8}},
      {scheme_of(PulseKind::Rec, 2, 0.5, 1), {2, 2}},
  };
  for (const auto& c : cases) {
    const int horizon = static_cast<int>(c.deltas.size()) + c.s.pulse_len + 2;
    const double got = phase_difference_integral(c.s, c.deltas, horizon);
    const double want = distance_oracle(c.s, c.deltas, horizon);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("pairwise distance rejects malformed difference sequences") {
  const CpmScheme s = scheme_of(PulseKind::Rec, 2, 0.75, 3);
  CHECK_THROWS_AS(phase_difference_integral(s, {}, 8), std::invalid_argument);
  CHECK_THROWS_AS(phase_difference_integral(s, {1}, 8), std::invalid_argument);
  CHECK_THROWS_AS(phase_difference_integral(s, {0, 2}, 8), std::invalid_argument);
  CHECK_THROWS_AS(phase_difference_integral(s, {4}, 8), std::invalid_argument);
  CHECK_THROWS_AS(phase_difference_integral(s, {2, -2}, 1), std::invalid_argument);
}

TEST_CASE("minimum shift keying lands on the analytic distance") {
  const DistanceResult r = dmin_search(scheme_of(PulseKind::Rec, 2, 0.5, 1), 12);
  CHECK(r.dmin_sq == doctest::Approx(2.0).epsilon(1e-6));
  // Two distinct events ([2,-2] and [2,2]) tie, each with its negated twin.
  CHECK(r.kmin == 4);
  CHECK(r.achieving_sequences.size() == 4);
  for (const auto& seq : r.achieving_sequences) {
    const int horizon = static_cast<int>(seq.size()) + 3;
    CHECK(phase_difference_integral(scheme_of(PulseKind::Rec, 2, 0.5, 1), seq,
                                    horizon) ==
          doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("full-response binary distances follow the closed form") {
  // A [2,-2] event over a flat one-interval pulse gives
  // d^2 = 2 * (1 - sin(2*pi*h) / (2*pi*h)).
  const double pi = std::numbers::pi;
  for (double h : {0.25, 0.5, 0.75}) {
    const double expected = 2.0 * (1.0 - std::sin(2.0 * pi * h) / (2.0 * pi * h));
    const DistanceResult r = dmin_search(scheme_of(PulseKind::Rec, 2, h, 1), 10);
    CHECK_MESSAGE(r.dmin_sq == doctest::Approx(expected).epsilon(1e-6),
                  "h = ", h);
  }
}

TEST_CASE("binary three-interval rectangular distances have closed forms") {
  const double pi = std::numbers::pi;

  SUBCASE("h = 1/2: the [2,-2] merge wins") {
    // Ramp to pi/3 over one interval, hold for two, ramp back down:
    // d^2 = 3 - 3*sqrt(3)/pi.
    const DistanceResult r = dmin_search(scheme_of(PulseKind::Rec, 2, 0.5, 3), 12);
    CHECK(r.dmin_sq == doctest::Approx(3.0 - 3.0 * std::sqrt(3.0) / pi).epsilon(1e-6));
    CHECK(r.kmin == 2);
    REQUIRE_FALSE(r.achieving_sequences.empty());
    CHECK(r.achieving_sequences.front() == std::vector<int>{2, -2});
  }

  SUBCASE("h = 3/4: a sustained coincidence undercuts every merge") {
    // The cheapest merge, [2,-2], costs 4 - 4/pi. But [2,2,-2] parks the
    // phase difference at exactly 2*pi after three intervals, and repeating
    // [0,2,-2] holds it there forever: the signals coincide from then on
    // while the data streams keep differing. Transient cost: 3 - 2/pi.
    const CpmScheme s = scheme_of(PulseKind::Rec, 2, 0.75, 3);
    const double expected = 3.0 - 2.0 / pi;
    const DistanceResult r = dmin_search(s, 12);
    CHECK(r.dmin_sq == doctest::Approx(expected).epsilon(1e-6));
    CHECK(r.dmin_sq < 4.0 - 4.0 / pi);
    CHECK(r.kmin == 2);
    REQUIRE_FALSE(r.achieving_sequences.empty());
    CHECK(r.achieving_sequences.front() == std::vector<int>{2, 2, -2, 0});

    // The transient alone accounts for the whole value...
    CHECK(phase_difference_integral(s, {2, 2, -2}, 3) ==
          doctest::Approx(expected).epsilon(1e-6));
    // ...and extending along the sustaining cycle adds nothing, no matter
    // how far out the horizon runs.
    CHECK(phase_difference_integral(s, {2, 2, -2, 0}, 4) ==
          doctest::Approx(expected).epsilon(1e-6));
    CHECK(phase_difference_integral(s, {2, 2, -2, 0, 2, -2, 0, 2, -2, 0}, 10) ==
          doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("rectangular weak events halve the quaternary distance") {
  // At h = 3/4 the difference stream [2,-4,2,...] drives the phase difference
  // to zero inside two intervals and can hold it there forever, so the
  // minimum comes from the short triangle, not from any saturated merge.
  const double raw = 2.0 * (1.0 - 2.0 / std::numbers::pi);
  for (int m : {4, 8, 16}) {
    const CpmScheme s = scheme_of(PulseKind::Rec, m, 0.75, 3);
    const DistanceResult r = dmin_search(s, default_search_depth(m));
    CHECK_MESSAGE(r.dmin_sq ==
                      doctest::Approx(s.bits_per_symbol() * raw).epsilon(1e-6),
                  "m_ary = ", m);
    REQUIRE_FALSE(r.achieving_sequences.empty());
    CHECK(r.achieving_sequences.front() == std::vector<int>{2, -4, 2});
  }
}

TEST_CASE("partial-response search values are frozen") {
  struct Row {
    PulseKind pulse;
    int m;
    double dmin_sq;
  };
  const std::vector<Row> rows{
      {PulseKind::Rc, 2, 2.991830},   {PulseKind::Rc, 4, 5.363154},
      {PulseKind::Rc, 8, 6.218435},   {PulseKind::Rc, 16, 8.291247},
      {PulseKind::Gmsk, 2, 2.931074}, {PulseKind::Gmsk, 4, 4.753311},
      {PulseKind::Gmsk, 8, 6.040853}, {PulseKind::Gmsk, 16, 8.054471},
  };
  for (const auto& row : rows) {
    const CpmScheme s = scheme_of(row.pulse, row.m, 0.75, 3);
    const DistanceResult r = dmin_search(s, default_search_depth(row.m));
    CHECK_MESSAGE(r.dmin_sq == doctest::Approx(row.dmin_sq).epsilon(1e-5),
                  pulse_name(row.pulse), row.m);
    CHECK_MESSAGE(r.kmin == 2, pulse_name(row.pulse), row.m);
  }
}

TEST_CASE("achieving sequences come in negated pairs at the minimum") {
  const CpmScheme s = scheme_of(PulseKind::Rc, 4, 0.75, 3);
  const DistanceResult r = dmin_search(s, 12);
  CHECK(r.kmin == static_cast<int>(r.achieving_sequences.size()));
  REQUIRE(r.achieving_sequences.size() % 2 == 0);
  for (std::size_t i = 0; i < r.achieving_sequences.size(); i += 2) {
    const auto& a = r.achieving_sequences[i];
    const auto& b = r.achieving_sequences[i + 1];
    REQUIRE(a.size() == b.size());
    CHECK(a.front() > 0);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == -b[j]);
  }
}

TEST_CASE("search is deterministic across runs") {
  const CpmScheme s = scheme_of(PulseKind::Gmsk, 4, 0.75, 3);
  const DistanceResult a = dmin_search(s, 12);
  const DistanceResult b = dmin_search(s, 12);
  CHECK(a.dmin_sq == b.dmin_sq);
  CHECK(a.kmin == b.kmin);
  CHECK(a.achieving_sequences == b.achieving_sequences);
}

TEST_CASE("search rejects depths too short to span the pulse") {
  CHECK_THROWS_AS(dmin_search(scheme_of(PulseKind::Rec, 2, 0.75, 3), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(dmin_search(scheme_of(PulseKind::Rec, 2, 0.75, 3), 3),
                  std::invalid_argument);
}

TEST_CASE("irrational modulation index still closes on zero-sum events") {
  // h = 1/sqrt(2): only difference streams with zero total can merge, caught
  // by the modular tolerance fallback.
  const CpmScheme s = scheme_of(PulseKind::Rec, 2, std::numbers::sqrt2 / 2.0, 1);
  const DistanceResult r = dmin_search(s, 8);
  const double h = std::numbers::sqrt2 / 2.0;
  const double expected =
      2.0 * (1.0 - std::sin(2.0 * std::numbers::pi * h) /
                       (2.0 * std::numbers::pi * h));
  CHECK(r.dmin_sq == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("reference distance table is complete and guarded") {
  CHECK(dmin_sq_reference(PulseKind::Rec, 2) == doctest::Approx(2.31648));
  CHECK(dmin_sq_reference(PulseKind::Rec, 4) == doctest::Approx(1.41550));
  CHECK(dmin_sq_reference(PulseKind::Rec, 8) == doctest::Approx(2.12325));
  CHECK(dmin_sq_reference(PulseKind::Rec, 16) == doctest::Approx(2.831));
  CHECK(dmin_sq_reference(PulseKind::Rc, 2) == doctest::Approx(2.96059));
  CHECK(dmin_sq_reference(PulseKind::Rc, 4) == doctest::Approx(5.30037));
  CHECK(dmin_sq_reference(PulseKind::Rc, 8) == doctest::Approx(6.12447));
  CHECK(dmin_sq_reference(PulseKind::Rc, 16) == doctest::Approx(8.16596));
  CHECK(dmin_sq_reference(PulseKind::Gmsk, 2) == doctest::Approx(2.89955));
  CHECK(dmin_sq_reference(PulseKind::Gmsk, 4) == doctest::Approx(4.69275));
  CHECK(dmin_sq_reference(PulseKind::Gmsk, 8) == doctest::Approx(5.95011));
  CHECK(dmin_sq_reference(PulseKind::Gmsk, 16) == doctest::Approx(7.93348));
  CHECK_THROWS_AS(dmin_sq_reference(PulseKind::Rec, 32), std::out_of_range);
  CHECK_THROWS_AS(dmin_sq_reference(PulseKind::Rc, 3), std::out_of_range);
}

TEST_CASE("default search depth narrows as the alphabet grows") {
  CHECK(default_search_depth(2) == 12);
  CHECK(default_search_depth(4) == 12);
  CHECK(default_search_depth(8) == 8);
  CHECK(default_search_depth(16) == 6);
}
