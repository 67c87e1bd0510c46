#pragma once

// Naive reference scorer written directly from the ranking formulas on plain
// arrays. Shares no code with the library beyond the standard library, so the
// two can be compared instance by instance.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

// Indexed by attribute ordinal (0 = A1).
using Vec = std::array<double, 14>;
using Mask = std::array<bool, 14>;

struct Params {
  double tau_e = 0.50;
  double gamma_e = 1.50;
  double gamma_g = 1.00;
  double tau_t = 0.25;
  double gamma_t = 2.00;
  double alpha = 0.20;
};

struct Instance {
  Vec team{};
  Mask mask{};
  std::optional<Vec> opponent;
  double time_remaining = 1.0;
  int score_state = 0;
  std::optional<double> energy;
  Params params;
  bool exponential = false;
  std::vector<Vec> library;
};

Vec multipliers(const Instance& in);
Vec weights(const Instance& in);
std::vector<double> scores(const Instance& in);
/// Smallest score, earliest index among scores within `tolerance` of it.
std::size_t argmin(const std::vector<double>& s, double tolerance = 1e-12);

}  // namespace oracle
