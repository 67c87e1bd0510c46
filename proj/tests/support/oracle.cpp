#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

constexpr int A1 = 0, A2 = 1, A4 = 3, A5 = 4, A6 = 5, A8 = 7, A10 = 9, A11 = 10, A12 = 11,
              A13 = 12;

double energy_of(const Instance& in) {
  if (in.energy) return *in.energy;
  if (in.mask[A8]) return in.team[A8];
  return in.params.tau_e;
}

double gap(const Instance& in, int j) {
  if (!in.opponent || !in.mask[j]) return 0.0;
  return in.team[j] - (*in.opponent)[j];
}

double weighted_norm(const Vec& w, const Mask& mask, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int j = 0; j < 14; ++j) {
    if (mask[j]) s += w[j] * (x[j] - y[j]) * (x[j] - y[j]);
  }
  return std::sqrt(s);
}

}  // namespace

Vec multipliers(const Instance& in) {
  const Params& p = in.params;
  Vec m;
  m.fill(1.0);
  const double de = std::max(0.0, p.tau_e - energy_of(in));
  const double short_tech = std::max(0.0, -gap(in, A12));
  const double short_phys = std::max(0.0, -gap(in, A13));
  const double dt = in.score_state <= 0 ? std::max(0.0, p.tau_t - in.time_remaining) : 0.0;

  m[A5] = 1.0 - p.gamma_e * de;
  m[A10] = 1.0 + p.gamma_e * de;
  m[A13] = 1.0 - 0.5 * p.gamma_e * de;
  m[A2] = 1.0 + p.gamma_g * short_tech;
  m[A11] = 1.0 + p.gamma_g * short_phys;
  m[A1] = 1.0 - 0.5 * p.gamma_g * short_tech + p.gamma_t * dt;
  m[A6] = 1.0 - 0.5 * p.gamma_g * short_phys;
  m[A4] = 1.0 + p.gamma_t * dt;
  for (double& v : m) v = v < 0.05 ? 0.05 : v;
  return m;
}

Vec weights(const Instance& in) {
  const Vec m = multipliers(in);
  double total = 0.0;
  int n = 0;
  for (int j = 0; j < 14; ++j) {
    if (in.mask[j]) {
      total += m[j];
      ++n;
    }
  }
  Vec w{};
  for (int j = 0; j < 14; ++j) w[j] = in.mask[j] ? n * m[j] / total : 0.0;
  return w;
}

std::vector<double> scores(const Instance& in) {
  const Vec w = weights(in);
  const double alpha = in.opponent ? in.params.alpha : 0.0;
  const double de = std::max(0.0, in.params.tau_e - energy_of(in));
  std::vector<double> out;
  for (const Vec& s : in.library) {
    const double d = weighted_norm(w, in.mask, in.team, s);
    const double d_opp = in.opponent ? weighted_norm(w, in.mask, *in.opponent, s) : 0.0;
    if (in.exponential) {
      const double intensity = (s[A4] + s[A5]) / 2.0;
      const double mu = std::clamp(1.0 + 2.0 * in.params.gamma_e * de * (intensity - 0.5), 0.4, 2.0);
      out.push_back(d + mu * alpha * std::exp(-d_opp));
    } else {
      out.push_back(d - alpha * d_opp);
    }
  }
  return out;
}

std::size_t argmin(const std::vector<double>& s, double tolerance) {
  const double lowest = *std::min_element(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] <= lowest + tolerance) return i;
  }
  return 0;
}

}  // namespace oracle
