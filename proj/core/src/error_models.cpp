#include "cpmec/error_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cpmec {
namespace {

void validate(const SchemeErrorModel& model) {
  if (model.family == ModFamily::Cpm) {
    if (!(model.dmin_sq > 0.0)) throw std::invalid_argument("dmin_sq: must be > 0");
    if (model.kmin < 1) throw std::invalid_argument("kmin: must be >= 1");
    if (model.bits_per_symbol < 1 || model.bits_per_symbol > 4) {
      throw std::invalid_argument("bits_per_symbol: must be in {1,2,3,4}");
    }
  }
}

void check_sep(double sep) {
  if (!(sep >= 0.0) || !(sep <= 1.0)) {
    throw std::invalid_argument("sep: must be a probability in [0, 1]");
  }
}

}  // namespace

double gauss_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

SchemeErrorModel SchemeErrorModel::cpm(double dmin_sq, int kmin, int bits_per_symbol) {
  SchemeErrorModel model{ModFamily::Cpm, dmin_sq, kmin, bits_per_symbol};
  validate(model);
  return model;
}

SchemeErrorModel SchemeErrorModel::oqpsk() {
  return SchemeErrorModel{ModFamily::Oqpsk, 0.0, 1, 2};
}

SchemeErrorModel SchemeErrorModel::qam16() {
  return SchemeErrorModel{ModFamily::Qam16, 0.0, 1, 4};
}

void validate(const PacketSpec& packet) {
  if (packet.pilot_bytes < 0 || packet.header_bytes < 0 || packet.payload_bytes < 0) {
    throw std::invalid_argument("packet: byte counts must be >= 0");
  }
  if (packet.total_bits() <= 0) {
    throw std::invalid_argument("packet: total length must be > 0");
  }
}

int symbols_per_packet(int total_bits, int bits_per_symbol) {
  if (total_bits < 0) throw std::invalid_argument("total_bits: must be >= 0");
  if (bits_per_symbol < 1) throw std::invalid_argument("bits_per_symbol: must be >= 1");
  return (total_bits + bits_per_symbol - 1) / bits_per_symbol;
}

double symbol_error_prob(const SchemeErrorModel& model, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma: must be >= 0");
  switch (model.family) {
    case ModFamily::Cpm: {
      const double q = gauss_q(std::sqrt(model.dmin_sq * gamma));
      return std::min(1.0, model.kmin * q);
    }
    case ModFamily::Oqpsk: {
      const double q = gauss_q(std::sqrt(gamma));
      return std::clamp(2.0 * q - q * q, 0.0, 1.0);
    }
    case ModFamily::Qam16: {
      const double p4 = 1.5 * gauss_q(std::sqrt(gamma / 5.0));
      const double sep = 1.0 - (1.0 - p4) * (1.0 - p4);
      return std::clamp(sep, 0.0, 1.0);
    }
  }
  throw std::invalid_argument("model: unknown family");
}

double packet_error_prob(double sep, const PacketSpec& packet, int bits_per_symbol) {
  check_sep(sep);
  const int n = symbols_per_packet(packet.total_bits(), bits_per_symbol);
  return 1.0 - std::pow(1.0 - sep, n);
}

double expected_transmissions(double sep, const PacketSpec& packet, int bits_per_symbol) {
  check_sep(sep);
  if (sep == 1.0) throw std::domain_error("sep = 1: packet can never succeed");
  const int n = symbols_per_packet(packet.total_bits(), bits_per_symbol);
  return std::pow(1.0 - sep, -n);
}

double expected_delivered_bits(double sep, const PacketSpec& packet, int bits_per_symbol) {
  check_sep(sep);
  const int n = symbols_per_packet(packet.total_bits(), bits_per_symbol);
  return packet.total_bits() * std::pow(1.0 - sep, n);
}

}  // namespace cpmec
