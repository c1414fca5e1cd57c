#include "gmtlab/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "gmtlab/errors.hpp"

namespace gmt {

Schedule bootstrap_schedule(const ScheduleInput& in) {
  const double gap = in.s - in.sigma;
  require(in.sigma > 0.0 && gap > 0.0 && in.s <= 2.0, ErrorKind::PreconditionViolated,
          "need 0 < sigma < s <= 2");
  require(in.eps > 0.0 && in.eps < 0.1, ErrorKind::PreconditionViolated, "eps must lie in (0, 1/10)");
  require(in.k_constant >= 1.0 && in.c_constant > 0.0, ErrorKind::PreconditionViolated,
          "need K >= 1 and C > 0");
  require(in.furstenberg_eps > 0.0, ErrorKind::PreconditionViolated,
          "Furstenberg epsilon must be positive");
  Schedule out;
  const double q = gap / (14.0 - 8.0 * gap);
  out.eta = std::min({in.furstenberg_eps, gap / 4.0, 0.5 * q * q});
  out.kappa = 14.0 * out.eta / gap;
  out.log2_r2 = (std::log2(out.eta * in.eps) - 2.0) / out.eta;
  const double e1 = -std::log2(6.0 * in.c_constant) / out.eta;
  out.log2_r1 = std::ceil(e1) - 1.0;
  const double log2_k = std::log2(in.k_constant);
  out.log2_r0 = std::min({-log2_k / out.eta, out.log2_r1, out.log2_r2});
  out.log2_k_prime =
      std::max({log2_k / out.eta, -out.log2_r2, -(in.sigma + out.eta) * out.log2_r0});
  out.r0 = std::exp2(out.log2_r0);
  out.r1 = std::exp2(out.log2_r1);
  out.r2 = std::exp2(out.log2_r2);
  out.k_prime = std::exp2(out.log2_k_prime);
  return out;
}

double log2_dyadic_tail_sum(double log2_r, double eta) {
  // Largest dyadic r <= 2^log2_r, then a geometric series with ratio 2^-eta.
  const double top = std::floor(log2_r);
  return eta * top - std::log2(-std::expm1(-eta * std::log(2.0)));
}

}  // namespace gmt
