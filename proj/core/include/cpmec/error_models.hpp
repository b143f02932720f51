#pragma once

namespace cpmec {

// Gaussian tail probability Q(x) = P(Z > x), via the complementary error
// function: Q(x) = erfc(x / sqrt(2)) / 2.
double gauss_q(double x);

enum class ModFamily { Cpm, Oqpsk, Qam16 };

// Symbol-error model of one modulation scheme. CPM uses the union-bound form
// kmin * Q(sqrt(dmin_sq * gamma)); OQPSK and 16QAM use the coherent-detection
// closed forms with the same received-SNR argument.
struct SchemeErrorModel {
  ModFamily family = ModFamily::Cpm;
  double dmin_sq = 0.0;    // CPM only
  int kmin = 1;            // CPM only
  int bits_per_symbol = 1;

  static SchemeErrorModel cpm(double dmin_sq, int kmin, int bits_per_symbol);
  static SchemeErrorModel oqpsk();  // 2 bits/symbol
  static SchemeErrorModel qam16();  // 4 bits/symbol
};

struct PacketSpec {
  int pilot_bytes = 4;
  int header_bytes = 3;
  int payload_bytes = 30;

  int total_bits() const { return 8 * (pilot_bytes + header_bytes + payload_bytes); }
};

void validate(const PacketSpec& packet);

// ceil(total_bits / bits_per_symbol): a partial symbol still occupies a slot.
int symbols_per_packet(int total_bits, int bits_per_symbol);

// Symbol error probability at linear received SNR gamma, clamped to [0, 1].
// Rejects negative gamma.
double symbol_error_prob(const SchemeErrorModel& model, double gamma);

// Packet error probability 1 - (1 - sep)^n over n = ceil(L/m) symbols.
double packet_error_prob(double sep, const PacketSpec& packet, int bits_per_symbol);

// Expected ARQ transmissions per delivered packet, (1 - sep)^-n. Throws
// std::domain_error when sep = 1 (the packet can never succeed).
double expected_transmissions(double sep, const PacketSpec& packet, int bits_per_symbol);

// Expected successfully delivered payload per transmission, L * (1 - sep)^n;
// the exact reciprocal companion of expected_transmissions (n_re * n_c = L).
double expected_delivered_bits(double sep, const PacketSpec& packet, int bits_per_symbol);

}  // namespace cpmec
