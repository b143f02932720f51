#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cpmec/scenario.hpp"
#include "oracles.hpp"

using namespace cpmec;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "cpmec_test_config_" + std::to_string(counter++) + ".cfg";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("defaults survive a serialize/parse round trip") {
  const Scenario base = make_scenario({});
  const std::string text = serialize_scenario(base);
  const TempFile file(text);
  const Scenario reloaded = load_scenario(file.path, {});
  CHECK(serialize_scenario(reloaded) == text);
  CHECK_FALSE(base.schemes_overridden);
}

TEST_CASE("defaults describe the smart-meter study point") {
  const Scenario sc = make_scenario({});
  CHECK(forward_packet(sc).total_bits() == 296);
  CHECK(feedback_packet(sc).total_bits() == 56);
  CHECK(sc.symbol_rate_sps == 20e3);
  CHECK(sc.gamma_db == 8.0);
  CHECK(sc.distance_m == 10.0);
  CHECK(sc.mod_index == 0.75);
  CHECK(sc.pulse_len == 3);
  CHECK(sc.gmsk_bt == 0.3);
  REQUIRE(sc.schemes.size() == 5);
  CHECK(format_scheme_list(sc.schemes) == "rec16,rc16,gmsk16,oqpsk,qam16");
}

TEST_CASE("overrides win over file values") {
  const TempFile file("gamma_db = 12\ndistance_m = 25\n");
  const Scenario sc = load_scenario(file.path, {"distance_m=50"});
  CHECK(sc.gamma_db == 12.0);
  CHECK(sc.distance_m == 50.0);
}

TEST_CASE("config files allow comments and blank lines") {
  const TempFile file(
      "# smart meter uplink\n"
      "\n"
      "gamma_db = 10   # operating point\n"
      "  seed=42\n");
  const Scenario sc = load_scenario(file.path, {});
  CHECK(sc.gamma_db == 10.0);
  CHECK(sc.seed == 42u);
}

TEST_CASE("config errors name the file line and key") {
  const TempFile bad_key("bogus_key = 1\n");
  try {
    load_scenario(bad_key.path, {});
    FAIL("expected rejection of unknown key");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find(bad_key.path + ":1") != std::string::npos);
    CHECK(what.find("bogus_key") != std::string::npos);
  }

  const TempFile bad_value("\ngamma_db = ten\n");
  try {
    load_scenario(bad_value.path, {});
    FAIL("expected rejection of non-numeric value");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find(":2") != std::string::npos);
    CHECK(what.find("gamma_db") != std::string::npos);
  }

  const TempFile no_equals("gamma_db\n");
  CHECK_THROWS_AS(load_scenario(no_equals.path, {}), ConfigError);
  CHECK_THROWS_AS(load_scenario("does_not_exist.cfg", {}), ConfigError);
  CHECK_THROWS_AS(make_scenario({"gamma_db"}), ConfigError);
  CHECK_THROWS_AS(make_scenario({"= 3"}), ConfigError);
}

TEST_CASE("scheme lists parse labels and kmin suffixes") {
  const auto schemes = parse_scheme_list("rec2, lrc16:kmin=2 ,oqpsk,qam16,gmsk4");
  REQUIRE(schemes.size() == 5);
  CHECK(schemes[0].family == ModFamily::Cpm);
  CHECK(schemes[0].pulse == PulseKind::Rec);
  CHECK(schemes[0].order == 2);
  CHECK_FALSE(schemes[0].kmin.has_value());
  CHECK(schemes[1].pulse == PulseKind::Rc);
  CHECK(schemes[1].order == 16);
  CHECK(schemes[1].kmin == 2);
  CHECK(schemes[1].label() == "rc16:kmin=2");
  CHECK(schemes[2].family == ModFamily::Oqpsk);
  CHECK(schemes[3].family == ModFamily::Qam16);
  CHECK(schemes[4].pulse == PulseKind::Gmsk);

  CHECK_THROWS_AS(parse_scheme_list(""), ConfigError);
  CHECK_THROWS_AS(parse_scheme_list("rec"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_list("foo16"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_list("rec16:kmin=0"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_list("rec16:depth=3"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_list("oqpsk:kmin=2"), ConfigError);
}

TEST_CASE("scenario validation names the offending key") {
  auto check_rejects = [](const std::string& pair, const char* key) {
    try {
      make_scenario({pair});
      FAIL("expected rejection of ", pair);
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(key) != std::string::npos,
                    e.what());
    }
  };
  check_rejects("eta_cpm=0", "eta_cpm");
  check_rejects("eta_linear=1.2", "eta_linear");
  check_rejects("pulse_len=0", "pulse_len");
  check_rejects("path_loss_exponent=1.0", "path_loss_exponent");
  check_rejects("dmin_source=guess", "dmin_source");
  check_rejects("schemes=rec32", "schemes");
  check_rejects("trials=0", "trials");
  check_rejects("gamma_step_db=0", "gamma_step_db");
  check_rejects("samples_per_symbol=1", "samples_per_symbol");
  check_rejects("search_depth_m16=2", "search_depth");
  check_rejects("payload_bytes=-1", "payload_bytes");
}

TEST_CASE("link budget converts decibel fields to linear factors") {
  const Scenario sc = make_scenario({});
  const LinkBudget link = link_budget(sc);
  CHECK(link.a0 == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(link.alpha == 3.5);
  CHECK(link.n0_w_per_hz == doctest::Approx(3.98107e-21).epsilon(1e-5));
  CHECK(link.bandwidth_hz == 20e3);
  CHECK(link.noise_figure == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(link.link_margin == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("radio profile picks the amplifier chain per family") {
  const Scenario sc = make_scenario({});
  const auto schemes = parse_scheme_list("rec16,oqpsk,qam16");

  const RadioProfile cpm = radio_profile(sc, schemes[0]);
  CHECK(cpm.p_t0_w == doctest::Approx(15.9e-3));
  CHECK(cpm.p_r0_w == doctest::Approx(58.2e-3));
  CHECK(cpm.eta == 0.7);
  CHECK(cpm.xi == doctest::Approx(1.0));

  const RadioProfile oqpsk = radio_profile(sc, schemes[1]);
  CHECK(oqpsk.eta == 0.35);
  CHECK(oqpsk.xi == doctest::Approx(oracles::db_to_linear(3.5)).epsilon(1e-12));

  const RadioProfile qam = radio_profile(sc, schemes[2]);
  CHECK(qam.eta == 0.35);
  CHECK(qam.xi == doctest::Approx(oracles::db_to_linear(6.7)).epsilon(1e-12));
}

TEST_CASE("cpm scheme materializes with the scenario waveform family") {
  const Scenario sc = make_scenario({});
  const auto schemes = parse_scheme_list("gmsk8,oqpsk");
  const CpmScheme cpm = cpm_scheme(sc, schemes[0]);
  CHECK(cpm.m_ary == 8);
  CHECK(cpm.mod_index == 0.75);
  CHECK(cpm.pulse_len == 3);
  CHECK(cpm.pulse.kind == PulseKind::Gmsk);
  CHECK(cpm.pulse.bt_product == 0.3);
  CHECK(cpm.symbol_period == doctest::Approx(5e-5).epsilon(1e-15));
  CHECK_THROWS_AS(cpm_scheme(sc, schemes[1]), ConfigError);
}

TEST_CASE("error model resolves distances from the reference table") {
  const Scenario sc = make_scenario({});
  const auto schemes = parse_scheme_list("rec16,rc4,oqpsk,qam16,rec16:kmin=3");

  const SchemeErrorModel rec16 = error_model(sc, schemes[0]);
  CHECK(rec16.family == ModFamily::Cpm);
  CHECK(rec16.dmin_sq == doctest::Approx(2.831));
  CHECK(rec16.kmin == 1);
  CHECK(rec16.bits_per_symbol == 4);

  CHECK(error_model(sc, schemes[1]).dmin_sq == doctest::Approx(5.30037));
  CHECK(error_model(sc, schemes[2]).family == ModFamily::Oqpsk);
  CHECK(error_model(sc, schemes[3]).family == ModFamily::Qam16);
  CHECK(error_model(sc, schemes[4]).kmin == 3);

  const Scenario louder = make_scenario({"cpm_kmin=2"});
  CHECK(error_model(louder, schemes[0]).kmin == 2);
}

TEST_CASE("error model refuses the table outside its parameter cell") {
  const Scenario shifted = make_scenario({"mod_index=0.5"});
  const auto schemes = parse_scheme_list("rec2");
  CHECK_THROWS_AS(error_model(shifted, schemes[0]), ConfigError);

  const Scenario wide = make_scenario({"gmsk_bt=0.25"});
  CHECK_THROWS_AS(error_model(wide, parse_scheme_list("gmsk16")[0]), ConfigError);
  // Non-GMSK pulses do not depend on the time-bandwidth product.
  CHECK(error_model(wide, schemes[0]).dmin_sq == doctest::Approx(2.31648));
}

TEST_CASE("searched distances replace the table on request") {
  const Scenario sc = make_scenario({"dmin_source=search", "mod_index=0.5",
                                     "pulse_len=1", "schemes=rec2"});
  const SchemeErrorModel model = error_model(sc, sc.schemes[0]);
  CHECK(model.dmin_sq == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("sweep grids include both endpoints") {
  const Scenario sc = make_scenario({});
  const auto gamma = gamma_grid(sc);
  REQUIRE(gamma.size() == 51);
  CHECK(gamma.front() == 0.0);
  CHECK(gamma.back() == doctest::Approx(25.0).epsilon(1e-12));

  const auto distance = distance_grid(sc);
  REQUIRE(distance.size() == 100);
  CHECK(distance.front() == 1.0);
  CHECK(distance.back() == doctest::Approx(100.0).epsilon(1e-12));

  const auto coarse = gamma_grid(make_scenario({"gamma_min_db=5",
                                                "gamma_max_db=5"}));
  REQUIRE(coarse.size() == 1);
  CHECK(coarse.front() == 5.0);
}
