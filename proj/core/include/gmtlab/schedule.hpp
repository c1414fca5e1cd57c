#pragma once

#include <limits>

namespace gmt {

struct ScheduleInput {
  double sigma = 0.0;
  double s = 0.0;
  double eps = 0.05;  // the proof's epsilon, in (0, 1/10)
  double k_constant = 1.0;
  double c_constant = 1.0;
  // Epsilon of the improved Furstenberg bound; no value is known, so it defaults to "no cap".
  double furstenberg_eps = std::numeric_limits<double>::infinity();
};

/// Bootstrap constants of the thin-tubes key lemma. Scales are astronomically small, so each is
/// also given as a base-2 logarithm; the plain values may underflow to 0 or overflow to inf.
struct Schedule {
  double eta = 0.0;
  double kappa = 0.0;
  double log2_r0 = 0.0;
  double log2_r1 = 0.0;
  double log2_r2 = 0.0;
  double log2_k_prime = 0.0;
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double k_prime = 0.0;
};

// eta = min{eps_F, (s - sigma)/4, (1/2)((s - sigma)/(14 - 8(s - sigma)))^2}, kappa = 14 eta/(s - sigma),
// r2 = 2^{(log2(eta eps) - 2)/eta}, r1 the largest dyadic number below (6C)^{-1/eta},
// r0 = min{K^{-1/eta}, r1, r2}, K' = max{K^{1/eta}, 1/r2, r0^{-(sigma + eta)}}.
Schedule bootstrap_schedule(const ScheduleInput& in);

// log2 of the sum of r^eta over dyadic r <= 2^log2_r, in closed form.
double log2_dyadic_tail_sum(double log2_r, double eta);

}  // namespace gmt
