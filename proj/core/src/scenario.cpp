#include "cpmec/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "cpmec/units.hpp"

namespace cpmec {
namespace {

using field_ref = std::variant<double Scenario::*, int Scenario::*,
                               long long Scenario::*,
                               unsigned long long Scenario::*,
                               std::string Scenario::*>;

struct field_entry {
  const char* key;
  field_ref ref;
};

// Every configurable key except the scheme list, in serialization order.
const field_entry k_fields[] = {
    {"pilot_bytes", &Scenario::pilot_bytes},
    {"header_bytes", &Scenario::header_bytes},
    {"payload_bytes", &Scenario::payload_bytes},
    {"feedback_pilot_bytes", &Scenario::feedback_pilot_bytes},
    {"feedback_header_bytes", &Scenario::feedback_header_bytes},
    {"feedback_payload_bytes", &Scenario::feedback_payload_bytes},
    {"symbol_rate_sps", &Scenario::symbol_rate_sps},
    {"bandwidth_hz", &Scenario::bandwidth_hz},
    {"noise_psd_dbm_per_hz", &Scenario::noise_psd_dbm_per_hz},
    {"noise_figure_db", &Scenario::noise_figure_db},
    {"antenna_gain_db", &Scenario::antenna_gain_db},
    {"link_margin_db", &Scenario::link_margin_db},
    {"path_loss_exponent", &Scenario::path_loss_exponent},
    {"p_t0_mw", &Scenario::p_t0_mw},
    {"p_r0_mw", &Scenario::p_r0_mw},
    {"startup_energy_j", &Scenario::startup_energy_j},
    {"eta_cpm", &Scenario::eta_cpm},
    {"eta_linear", &Scenario::eta_linear},
    {"papr_cpm_db", &Scenario::papr_cpm_db},
    {"papr_oqpsk_db", &Scenario::papr_oqpsk_db},
    {"papr_qam16_db", &Scenario::papr_qam16_db},
    {"mod_index", &Scenario::mod_index},
    {"pulse_len", &Scenario::pulse_len},
    {"gmsk_bt", &Scenario::gmsk_bt},
    {"cpm_kmin", &Scenario::cpm_kmin},
    {"samples_per_symbol", &Scenario::samples_per_symbol},
    {"gamma_db", &Scenario::gamma_db},
    {"distance_m", &Scenario::distance_m},
    {"gamma_min_db", &Scenario::gamma_min_db},
    {"gamma_max_db", &Scenario::gamma_max_db},
    {"gamma_step_db", &Scenario::gamma_step_db},
    {"distance_min_m", &Scenario::distance_min_m},
    {"distance_max_m", &Scenario::distance_max_m},
    {"distance_step_m", &Scenario::distance_step_m},
    {"dmin_source", &Scenario::dmin_source},
    {"search_depth_m2", &Scenario::search_depth_m2},
    {"search_depth_m4", &Scenario::search_depth_m4},
    {"search_depth_m8", &Scenario::search_depth_m8},
    {"search_depth_m16", &Scenario::search_depth_m16},
    {"search_margin", &Scenario::search_margin},
    {"optimizer_tol_db", &Scenario::optimizer_tol_db},
    {"trials", &Scenario::trials},
    {"seed", &Scenario::seed},
    {"max_rounds", &Scenario::max_rounds},
};

std::string trim(const std::string& text) {
  std::size_t lo = 0, hi = text.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
  return text.substr(lo, hi - lo);
}

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw ConfigError(where.empty() ? message : where + ": " + message);
}

void assign_field(Scenario& sc, const field_entry& entry, const std::string& value,
                  const std::string& where) {
  const std::string text = trim(value);
  if (text.empty()) fail(where, std::string(entry.key) + ": empty value");
  const char* begin = text.c_str();
  char* end = nullptr;
  std::visit(
      [&](auto member) {
        using member_t = std::remove_reference_t<decltype(sc.*member)>;
        if constexpr (std::is_same_v<member_t, std::string>) {
          sc.*member = text;
        } else if constexpr (std::is_same_v<member_t, double>) {
          const double v = std::strtod(begin, &end);
          if (end != begin + text.size()) {
            fail(where, std::string(entry.key) + ": cannot parse '" + text + "' as a number");
          }
          sc.*member = v;
        } else if constexpr (std::is_same_v<member_t, unsigned long long>) {
          const unsigned long long v = std::strtoull(begin, &end, 10);
          if (end != begin + text.size()) {
            fail(where, std::string(entry.key) + ": cannot parse '" + text + "' as an unsigned integer");
          }
          sc.*member = v;
        } else {
          const long long v = std::strtoll(begin, &end, 10);
          if (end != begin + text.size()) {
            fail(where, std::string(entry.key) + ": cannot parse '" + text + "' as an integer");
          }
          sc.*member = static_cast<member_t>(v);
        }
      },
      entry.ref);
}

void apply_pair(Scenario& sc, const std::string& key, const std::string& value,
                const std::string& where) {
  if (key == "schemes") {
    try {
      sc.schemes = parse_scheme_list(value);
    } catch (const ConfigError& e) {
      fail(where, e.what());
    }
    sc.schemes_overridden = true;
    return;
  }
  for (const auto& entry : k_fields) {
    if (key == entry.key) {
      assign_field(sc, entry, value, where);
      return;
    }
  }
  fail(where, "unknown key '" + key + "'");
}

void apply_line(Scenario& sc, const std::string& raw, const std::string& where) {
  std::string line = raw;
  if (const auto hash = line.find('#'); hash != std::string::npos) {
    line.resize(hash);
  }
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) fail(where, "expected key=value, got '" + line + "'");
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) fail(where, "empty key");
  apply_pair(sc, key, value, where);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check(bool ok, const char* key, const char* requirement) {
  if (!ok) throw ConfigError(std::string(key) + ": " + requirement);
}

std::vector<double> make_grid(double lo, double hi, double step) {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

}  // namespace

Scenario::Scenario() { schemes = parse_scheme_list("rec16,rc16,gmsk16,oqpsk,qam16"); }

std::string SchemeSpec::label() const {
  switch (family) {
    case ModFamily::Oqpsk: return "oqpsk";
    case ModFamily::Qam16: return "qam16";
    case ModFamily::Cpm: break;
  }
  std::string name = std::string(pulse_name(pulse)) + std::to_string(order);
  if (kmin) name += ":kmin=" + std::to_string(*kmin);
  return name;
}

std::vector<SchemeSpec> parse_scheme_list(const std::string& text) {
  std::vector<SchemeSpec> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    SchemeSpec spec;
    std::string head = token;
    if (const auto colon = token.find(':'); colon != std::string::npos) {
      head = trim(token.substr(0, colon));
      const std::string opt = trim(token.substr(colon + 1));
      if (opt.rfind("kmin=", 0) != 0) {
        throw ConfigError("schemes: unknown option '" + opt + "' in '" + token + "'");
      }
      char* end = nullptr;
      const long v = std::strtol(opt.c_str() + 5, &end, 10);
      if (*end != '\0' || v < 1) {
        throw ConfigError("schemes: bad kmin in '" + token + "'");
      }
      spec.kmin = static_cast<int>(v);
    }
    if (head == "oqpsk") {
      spec.family = ModFamily::Oqpsk;
      if (spec.kmin) throw ConfigError("schemes: kmin applies to CPM entries only");
    } else if (head == "qam16") {
      spec.family = ModFamily::Qam16;
      if (spec.kmin) throw ConfigError("schemes: kmin applies to CPM entries only");
    } else {
      const auto split = head.find_first_of("0123456789");
      if (split == std::string::npos) {
        throw ConfigError("schemes: missing order in '" + token + "'");
      }
      const auto kind = pulse_from_name(head.substr(0, split));
      if (!kind) throw ConfigError("schemes: unknown scheme '" + token + "'");
      spec.family = ModFamily::Cpm;
      spec.pulse = *kind;
      char* end = nullptr;
      const long order = std::strtol(head.c_str() + split, &end, 10);
      if (*end != '\0') throw ConfigError("schemes: bad order in '" + token + "'");
      spec.order = static_cast<int>(order);
    }
    out.push_back(spec);
  }
  if (out.empty()) throw ConfigError("schemes: empty list");
  return out;
}

std::string format_scheme_list(const std::vector<SchemeSpec>& schemes) {
  std::string out;
  for (const auto& s : schemes) {
    if (!out.empty()) out += ",";
    out += s.label();
  }
  return out;
}

Scenario make_scenario(const std::vector<std::string>& overrides) {
  return load_scenario("", overrides);
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  Scenario sc;
  if (!path.empty()) {
    std::ifstream file(path);
    if (!file) throw ConfigError("config file '" + path + "' cannot be opened");
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
      ++line_no;
      apply_line(sc, line, path + ":" + std::to_string(line_no));
    }
  }
  for (const auto& pair : overrides) {
    apply_line(sc, pair, "override");
  }
  validate(sc);
  return sc;
}

std::string serialize_scenario(const Scenario& sc) {
  std::string out;
  for (const auto& entry : k_fields) {
    out += entry.key;
    out += " = ";
    std::visit(
        [&](auto member) {
          using member_t = std::remove_cvref_t<decltype(sc.*member)>;
          if constexpr (std::is_same_v<member_t, std::string>) {
            out += sc.*member;
          } else if constexpr (std::is_same_v<member_t, double>) {
            out += format_double(sc.*member);
          } else {
            out += std::to_string(sc.*member);
          }
        },
        entry.ref);
    out += "\n";
  }
  out += "schemes = " + format_scheme_list(sc.schemes) + "\n";
  return out;
}

void validate(const Scenario& sc) {
  check(sc.pilot_bytes >= 0, "pilot_bytes", "must be >= 0");
  check(sc.header_bytes >= 0, "header_bytes", "must be >= 0");
  check(sc.payload_bytes >= 0, "payload_bytes", "must be >= 0");
  check(sc.pilot_bytes + sc.header_bytes + sc.payload_bytes > 0, "payload_bytes",
        "forward packet must be nonempty");
  check(sc.feedback_pilot_bytes >= 0, "feedback_pilot_bytes", "must be >= 0");
  check(sc.feedback_header_bytes >= 0, "feedback_header_bytes", "must be >= 0");
  check(sc.feedback_payload_bytes >= 0, "feedback_payload_bytes", "must be >= 0");
  check(sc.symbol_rate_sps > 0, "symbol_rate_sps", "must be > 0");
  check(sc.bandwidth_hz > 0, "bandwidth_hz", "must be > 0");
  check(sc.path_loss_exponent >= 2, "path_loss_exponent", "must be >= 2");
  check(sc.p_t0_mw >= 0, "p_t0_mw", "must be >= 0");
  check(sc.p_r0_mw >= 0, "p_r0_mw", "must be >= 0");
  check(sc.startup_energy_j >= 0, "startup_energy_j", "must be >= 0");
  check(sc.eta_cpm > 0 && sc.eta_cpm <= 1, "eta_cpm", "must be in (0, 1]");
  check(sc.eta_linear > 0 && sc.eta_linear <= 1, "eta_linear", "must be in (0, 1]");
  check(sc.papr_cpm_db >= 0, "papr_cpm_db", "must be >= 0 dB");
  check(sc.papr_oqpsk_db >= 0, "papr_oqpsk_db", "must be >= 0 dB");
  check(sc.papr_qam16_db >= 0, "papr_qam16_db", "must be >= 0 dB");
  check(sc.mod_index > 0, "mod_index", "must be > 0");
  check(sc.pulse_len >= 1, "pulse_len", "must be >= 1");
  check(sc.gmsk_bt > 0, "gmsk_bt", "must be > 0");
  check(sc.cpm_kmin >= 1, "cpm_kmin", "must be >= 1");
  check(sc.samples_per_symbol >= 2, "samples_per_symbol", "must be >= 2");
  check(sc.distance_m > 0, "distance_m", "must be > 0");
  check(sc.gamma_step_db > 0, "gamma_step_db", "must be > 0");
  check(sc.gamma_max_db >= sc.gamma_min_db, "gamma_max_db", "must be >= gamma_min_db");
  check(sc.distance_min_m > 0, "distance_min_m", "must be > 0");
  check(sc.distance_step_m > 0, "distance_step_m", "must be > 0");
  check(sc.distance_max_m >= sc.distance_min_m, "distance_max_m",
        "must be >= distance_min_m");
  check(sc.dmin_source == "table" || sc.dmin_source == "search", "dmin_source",
        "must be 'table' or 'search'");
  check(sc.search_margin >= 0, "search_margin", "must be >= 0");
  check(sc.optimizer_tol_db > 0, "optimizer_tol_db", "must be > 0");
  check(sc.trials >= 1, "trials", "must be >= 1");
  check(sc.max_rounds >= 1, "max_rounds", "must be >= 1");
  check(!sc.schemes.empty(), "schemes", "must be nonempty");
  for (const auto& scheme : sc.schemes) {
    if (scheme.family != ModFamily::Cpm) continue;
    check(scheme.order == 2 || scheme.order == 4 || scheme.order == 8 ||
              scheme.order == 16,
          "schemes", "CPM order must be one of {2, 4, 8, 16}");
    for (int depth : {sc.search_depth_m2, sc.search_depth_m4, sc.search_depth_m8,
                      sc.search_depth_m16}) {
      check(depth >= sc.pulse_len + 1, "search_depth", "must be >= pulse_len + 1");
    }
  }
}

PacketSpec forward_packet(const Scenario& sc) {
  return PacketSpec{sc.pilot_bytes, sc.header_bytes, sc.payload_bytes};
}

PacketSpec feedback_packet(const Scenario& sc) {
  return PacketSpec{sc.feedback_pilot_bytes, sc.feedback_header_bytes,
                    sc.feedback_payload_bytes};
}

LinkBudget link_budget(const Scenario& sc) {
  LinkBudget link;
  link.a0 = db_to_linear(sc.antenna_gain_db);
  link.alpha = sc.path_loss_exponent;
  link.n0_w_per_hz = dbm_to_watts(sc.noise_psd_dbm_per_hz);
  link.bandwidth_hz = sc.bandwidth_hz;
  link.noise_figure = db_to_linear(sc.noise_figure_db);
  link.link_margin = db_to_linear(sc.link_margin_db);
  return link;
}

RadioProfile radio_profile(const Scenario& sc, const SchemeSpec& scheme) {
  RadioProfile profile;
  profile.p_t0_w = sc.p_t0_mw * 1e-3;
  profile.p_r0_w = sc.p_r0_mw * 1e-3;
  profile.e_st_j = sc.startup_energy_j;
  switch (scheme.family) {
    case ModFamily::Cpm:
      profile.eta = sc.eta_cpm;
      profile.xi = db_to_linear(sc.papr_cpm_db);
      break;
    case ModFamily::Oqpsk:
      profile.eta = sc.eta_linear;
      profile.xi = db_to_linear(sc.papr_oqpsk_db);
      break;
    case ModFamily::Qam16:
      profile.eta = sc.eta_linear;
      profile.xi = db_to_linear(sc.papr_qam16_db);
      break;
  }
  return profile;
}

CpmScheme cpm_scheme(const Scenario& sc, const SchemeSpec& scheme) {
  if (scheme.family != ModFamily::Cpm) {
    throw ConfigError("schemes: '" + scheme.label() + "' is not a CPM scheme");
  }
  CpmScheme cpm;
  cpm.m_ary = scheme.order;
  cpm.mod_index = sc.mod_index;
  cpm.pulse_len = sc.pulse_len;
  cpm.pulse = PulseShape{scheme.pulse, sc.gmsk_bt};
  cpm.symbol_period = 1.0 / sc.symbol_rate_sps;
  validate(cpm);
  return cpm;
}

namespace {

int search_depth_for(const Scenario& sc, int order) {
  switch (order) {
    case 2: return sc.search_depth_m2;
    case 4: return sc.search_depth_m4;
    case 8: return sc.search_depth_m8;
    default: return sc.search_depth_m16;
  }
}

bool matches_reference_table(const Scenario& sc, const SchemeSpec& scheme) {
  if (std::fabs(sc.mod_index - 0.75) > 1e-12 || sc.pulse_len != 3) return false;
  if (scheme.pulse == PulseKind::Gmsk && std::fabs(sc.gmsk_bt - 0.3) > 1e-12) return false;
  return true;
}

}  // namespace

SchemeErrorModel error_model(const Scenario& sc, const SchemeSpec& scheme) {
  switch (scheme.family) {
    case ModFamily::Oqpsk: return SchemeErrorModel::oqpsk();
    case ModFamily::Qam16: return SchemeErrorModel::qam16();
    case ModFamily::Cpm: break;
  }
  const CpmScheme cpm = cpm_scheme(sc, scheme);
  double dmin_sq = 0.0;
  if (sc.dmin_source == "table") {
    if (!matches_reference_table(sc, scheme)) {
      throw ConfigError(
          "dmin_source: reference table covers h=0.75, N=3, BT=0.3 only; "
          "set dmin_source=search for scheme '" + scheme.label() + "'");
    }
    dmin_sq = dmin_sq_reference(scheme.pulse, scheme.order);
  } else {
    dmin_sq = dmin_search(cpm, search_depth_for(sc, scheme.order), sc.search_margin)
                  .dmin_sq;
  }
  return SchemeErrorModel::cpm(dmin_sq, scheme.kmin.value_or(sc.cpm_kmin),
                               cpm.bits_per_symbol());
}

std::vector<double> gamma_grid(const Scenario& sc) {
  return make_grid(sc.gamma_min_db, sc.gamma_max_db, sc.gamma_step_db);
}

std::vector<double> distance_grid(const Scenario& sc) {
  return make_grid(sc.distance_min_m, sc.distance_max_m, sc.distance_step_m);
}

}  // namespace cpmec
