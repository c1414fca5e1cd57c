#include "gmtlab/tubes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "gmtlab/covering.hpp"
#include "gmtlab/errors.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab/regression.hpp"
#include "gmtlab/spatial.hpp"

namespace gmt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxFamilySize = std::size_t{1} << 24;

std::size_t net_size(double width) {
  return static_cast<std::size_t>(std::ceil(kPi / width - 1e-9));
}

// Per-direction mass of the width-w net tubes through x, via one angular interval per point.
std::vector<double> direction_masses(const WeightedMeasure& m, Point x, double width,
                                     std::optional<std::span<const std::size_t>> restrict_to) {
  const std::size_t M = net_size(width);
  const double step = kPi / static_cast<double>(M);
  const double half = 0.5 * width + kBoundaryTolerance;
  std::vector<double> diff(M + 1, 0.0);
  double everywhere = 0.0;
  auto inside = [&](std::int64_t k, Point p) {
    const Line axis = Line::from_point_angle(x, static_cast<double>(k) * step);
    return Tube(axis, width).contains(p);
  };
  auto add = [&](std::size_t i) {
    const double w = m.weights()[i];
    if (w == 0.0) return;
    const Point p = m.support()[i];
    const Point d = p - x;
    const double dist = norm(d);
    if (dist <= half) {
      everywhere += w;
      return;
    }
    const double phi = canonical_angle(std::atan2(d.y, d.x));
    const double alpha = std::asin(half / dist) + 1e-6;
    auto lo = static_cast<std::int64_t>(std::ceil((phi - alpha) / step));
    auto hi = static_cast<std::int64_t>(std::floor((phi + alpha) / step));
    const auto mm = static_cast<std::int64_t>(M);
    auto wrap = [mm](std::int64_t k) { return ((k % mm) + mm) % mm; };
    while (lo <= hi && !inside(wrap(lo), p)) ++lo;
    while (hi >= lo && !inside(wrap(hi), p)) --hi;
    if (lo > hi) return;
    if (hi - lo + 1 >= mm) {
      everywhere += w;
      return;
    }
    const std::int64_t a = wrap(lo);
    const std::int64_t b = a + (hi - lo);
    if (b < mm) {
      diff[static_cast<std::size_t>(a)] += w;
      diff[static_cast<std::size_t>(b + 1)] -= w;
    } else {
      diff[static_cast<std::size_t>(a)] += w;
      diff[M] -= w;
      diff[0] += w;
      diff[static_cast<std::size_t>(b - mm + 1)] -= w;
    }
  };
  if (restrict_to) {
    for (std::size_t i : *restrict_to) add(i);
  } else {
    for (std::size_t i = 0; i < m.size(); ++i) add(i);
  }
  std::vector<double> mass(M);
  double acc = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    acc += diff[k];
    mass[k] = everywhere + acc;
  }
  return mass;
}

std::vector<double> dyadic_widths(double finest) {
  std::vector<double> out;
  for (int j = 0; j <= 30; ++j) {
    const double w = std::ldexp(1.0, -j);
    if (w < finest * (1.0 - 1e-9)) break;
    out.push_back(w);
  }
  return out;
}

struct Slice {
  double ratio = -1.0;
  std::size_t width_index = 0;
  TubeMass tube{Tube(Line(), 1.0), 0.0, 0};
};

}  // namespace

// A probe r-tube (angle t0, offset c0) lies, inside B(0, 1), in the 2r-tube (t0 + d, c) whenever
// |c - c0| + T|d| + d^2/2 <= r/2, T the largest half-chord of the probe. Band k uses angle step
// a = 2^k pi/M and offsets j·r + (i mod 2)·r/2; the diamonds |d|/a + 2|c - c0|/r <= 1 tile the
// plane, and on a diamond the left side is convex in d, so it suffices that T a + a^2/2 <= r/2.
// Coarser bands serve offsets near +-1, where chords are short; this keeps the multiplicity of
// nearly tangent probes bounded instead of growing like r^-1/2.
namespace {

// Emits the family with `bands` angle bands; returns the net step.
template <class Emit>
double banded_family(double r, int bands, Emit&& emit) {
  const double reach = 1.0 + 0.5 * r;  // probes beyond this offset miss B(0, 1)
  // Band 0 needs a + a^2/2 <= r/2, i.e. a <= sqrt(1 + r) - 1.
  const auto m0 = static_cast<std::size_t>(std::ceil(kPi / (std::sqrt(1.0 + r) - 1.0) - 1e-9));
  const std::size_t granule = std::size_t{2} << (bands - 1);  // every band keeps an even count
  const std::size_t M = (m0 + granule - 1) / granule * granule;
  const double step = kPi / static_cast<double>(M);
  std::vector<double> lower(static_cast<std::size_t>(bands) + 1, reach);  // band k: |c0| in [lower[k], lower[k+1])
  lower[0] = 0.0;
  for (int k = 1; k < bands; ++k) {
    const double a = std::ldexp(step, k);
    const double q = (0.5 * r - 0.5 * a * a) / a;
    lower[k] = q >= 1.0 ? 0.0 : std::min(reach, 0.5 * r + std::sqrt(1.0 - q * q));
    lower[k] = std::max(lower[k], lower[k - 1]);
  }
  for (int k = 0; k < bands; ++k) {
    if (lower[k] >= lower[k + 1]) continue;
    const std::size_t stride = std::size_t{1} << k;
    const double a = std::ldexp(step, k);
    const double rho = 0.5 * r;
    const double lo = k == 0 ? -1.0 : lower[k] - rho;
    // Offsets beyond 1 are dominated: n·p <= 1 on the disk, so a member at c >= 1 - r already meets
    // the upper bound and lowering c to the row's lattice value in [1 - r, 1) only helps.
    const double hi = std::min(lower[k + 1] + rho, 1.0);
    const auto jmax = static_cast<std::int64_t>(std::ceil(hi / (2.0 * rho))) + 1;
    for (std::size_t i = 0; i < M / stride; ++i) {
      const double shift = (i % 2 == 0) ? 0.0 : rho;
      for (std::int64_t j = -jmax; j <= jmax; ++j) {
        const double c = 2.0 * rho * static_cast<double>(j) + shift;
        if (std::abs(c) > hi + 1e-12 || std::abs(c) < lo - 1e-12) continue;
        emit(static_cast<double>(i * stride) * step, c);
      }
    }
  }
  return step;
}

}  // namespace

// A probe r-tube (angle t0, offset c0) lies, inside B(0, 1), in the 2r-tube (t0 + d, c) whenever
// |c - c0| + T|d| + d^2/2 <= r/2, T the largest half-chord of the probe. Band k uses angle step
// a = 2^k pi/M and offsets j·r + (i mod 2)·r/2; the diamonds |d|/a + 2|c - c0|/r <= 1 tile the
// plane, and on a diamond the left side is convex in d, so it suffices that T a + a^2/2 <= r/2.
// Coarser bands serve offsets near +-1, where chords are short; this keeps the multiplicity of
// nearly tangent probes bounded instead of growing like r^-1/2. The band count is whichever
// gives the smallest family (the net must be divisible by 2^bands).
TubeFamily uniform_tube_family(double r) {
  require(r >= 0x1.0p-14 * (1.0 - 1e-12) && r <= 0.25, ErrorKind::PreconditionViolated,
          "r outside [2^-14, 2^-2]");
  const double a0 = std::sqrt(1.0 + r) - 1.0;
  int best_bands = 1;
  std::size_t best_size = std::numeric_limits<std::size_t>::max();
  for (int bands = 1; std::pow(std::ldexp(a0, bands - 1), 2) <= 0.5 * r; ++bands) {
    std::size_t size = 0;
    banded_family(r, bands, [&](double, double) { ++size; });
    if (size < best_size) {
      best_size = size;
      best_bands = bands;
    }
  }
  require(best_size <= kMaxFamilySize, ErrorKind::TooManyPoints, "tube family would exceed 2^24 tubes");
  TubeFamily f;
  f.width = 2.0 * r;
  f.tubes.reserve(best_size);
  f.direction_net_step = banded_family(r, best_bands, [&](double angle, double c) {
    f.tubes.emplace_back(Line::from_angle_offset(angle, c), 2.0 * r);
  });
  std::stable_sort(f.tubes.begin(), f.tubes.end(), [](const Tube& x, const Tube& y) {
    return x.axis().angle() < y.axis().angle();
  });
  return f;
}

bool contains_within_unit_ball(const Tube& outer, const Tube& probe) {
  const Point n = outer.axis().normal();
  const Point pn = probe.axis().normal();
  const Point pd = probe.axis().direction();
  const double c = probe.axis().offset();
  const double h = 0.5 * probe.width();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto consider = [&](Point p) {
    const double f = dot(n, p);
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  };
  for (double t : {c - h, c + h}) {
    if (std::abs(t) > 1.0) continue;
    const double u = std::sqrt(std::max(0.0, 1.0 - t * t));
    consider(t * pn + u * pd);
    consider(t * pn - u * pd);
  }
  for (Point e : {n, -1.0 * n}) {
    if (std::abs(dot(pn, e) - c) <= h) consider(e);
  }
  if (lo > hi) return true;  // probe misses the unit ball
  const double o = outer.axis().offset();
  const double ho = 0.5 * outer.width() + kBoundaryTolerance;
  return hi <= o + ho && lo >= o - ho;
}

std::size_t containment_multiplicity(const TubeFamily& family, const Tube& probe) {
  // Family assumed sorted by axis angle, as uniform_tube_family builds it.
  const double c = probe.axis().offset();
  const double h = 0.5 * probe.width();
  const double tmin = (std::abs(c) <= h) ? 0.0 : std::abs(c) - h;
  if (tmin >= 1.0) return 0;
  const double chord = std::sqrt(1.0 - tmin * tmin);
  // The longest chord of probe ∩ B(0,1) spans 2·chord·|sin gap| in the outer normal direction.
  const double ratio = family.width / (2.0 * chord);
  const double window = ratio >= 1.0 ? kPi : std::asin(ratio) + 1e-9;
  const double phi = probe.axis().angle();
  std::size_t count = 0;
  auto scan = [&](double a, double b) {
    auto first = std::lower_bound(family.tubes.begin(), family.tubes.end(), a,
                                  [](const Tube& t, double v) { return t.axis().angle() < v; });
    for (auto it = first; it != family.tubes.end() && it->axis().angle() <= b; ++it) {
      count += contains_within_unit_ball(*it, probe);
    }
  };
  if (window >= 0.5 * kPi) {
    scan(0.0, kPi);
    return count;
  }
  const double a = phi - window;
  const double b = phi + window;
  if (a < 0.0) {
    scan(0.0, b);
    scan(a + kPi, kPi);
  } else if (b >= kPi) {
    scan(a, kPi);
    scan(0.0, b - kPi);
  } else {
    scan(a, b);
  }
  return count;
}

TubeMass heaviest_tube(const WeightedMeasure& m, Point through, double width,
                       std::optional<std::span<const std::size_t>> restrict_to) {
  require(width >= m.support().delta() * (1.0 - 1e-9) && width <= 1.0,
          ErrorKind::PreconditionViolated, "width must lie in [delta, 1]");
  const std::vector<double> mass = direction_masses(m, through, width, restrict_to);
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(mass.begin(), mass.end()) - mass.begin());
  const double step = kPi / static_cast<double>(mass.size());
  return {Tube(Line::from_point_angle(through, static_cast<double>(best) * step), width), mass[best],
          best};
}

ThinTubeAudit thin_tube_audit(const WeightedMeasure& mu, const WeightedMeasure& nu, double sigma,
                              double k_constant, double c_mass, ThinTubeOptions options) {
  require(sigma >= 0.0 && k_constant > 0.0, ErrorKind::PreconditionViolated,
          "need sigma >= 0 and K > 0");
  require(c_mass >= 0.0 && c_mass <= 1.0, ErrorKind::PreconditionViolated, "c must lie in [0, 1]");
  const double gap = 4.0 * std::max(mu.support().delta(), nu.support().delta());
  {
    std::vector<Point> heavy;
    for (std::size_t j = 0; j < nu.size(); ++j) {
      if (nu.weights()[j] > 0.0) heavy.push_back(nu.support()[j]);
    }
    const BallIndex index(heavy);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu.weights()[i] == 0.0) continue;
      require(index.mass(mu.support()[i], gap * (1.0 - 1e-9)) == 0.0,
              ErrorKind::SeparationViolated, "supports of mu and nu are not 4 delta apart");
    }
  }
  const std::vector<double> widths = dyadic_widths(nu.support().delta());
  std::vector<std::size_t> xs;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weights()[i] > 0.0) xs.push_back(i);
  }

  // G|_x as the list of nu indices still paired with x.
  std::vector<std::vector<std::size_t>> kept(mu.size());
  std::vector<Slice> worst(mu.size());
  auto evaluate = [&](std::size_t i) {
    Slice best;
    std::optional<std::span<const std::size_t>> restrict_to;
    if (options.shrink_witness) restrict_to = std::span<const std::size_t>(kept[i]);
    for (std::size_t w = 0; w < widths.size(); ++w) {
      const TubeMass t = heaviest_tube(nu, mu.support()[i], widths[w], restrict_to);
      const double ratio = t.mass / (k_constant * std::pow(widths[w], sigma));
      if (ratio > best.ratio) best = {ratio, w, t};
    }
    worst[i] = best;
  };
  if (options.shrink_witness) {
    std::vector<std::size_t> all(nu.size());
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i : xs) kept[i] = all;
  }
  parallel_for(xs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) evaluate(xs[k]);
  });

  ThinTubeAudit out;
  out.sigma = sigma;
  out.k_constant = k_constant;
  out.c_mass = mu.total() * nu.total();
  auto argworst = [&]() {
    std::size_t best = xs.empty() ? 0 : xs.front();
    for (std::size_t i : xs) {
      if (worst[i].ratio > worst[best].ratio) best = i;
    }
    return best;
  };
  if (options.shrink_witness) {
    for (std::size_t step = 0; step < options.max_shrink_steps && !xs.empty(); ++step) {
      const std::size_t i = argworst();
      if (worst[i].ratio <= 1.0) break;
      const Tube& tube = worst[i].tube.tube;
      std::vector<std::size_t> remain;
      double removed = 0.0;
      for (std::size_t j : kept[i]) {
        if (nu.weights()[j] > 0.0 && tube.contains(nu.support()[j])) {
          out.excluded_pairs.emplace_back(i, j);
          removed += nu.weights()[j];
        } else {
          remain.push_back(j);
        }
      }
      kept[i] = std::move(remain);
      out.c_mass -= mu.weights()[i] * removed;
      evaluate(i);
    }
  }
  if (!xs.empty()) {
    const std::size_t i = argworst();
    out.worst_ratio = std::max(0.0, worst[i].ratio);
    out.worst_tube = worst[i].tube.tube;
    out.witness_x = mu.support()[i];
    out.worst_width = widths[worst[i].width_index];
  }
  out.c_mass = std::clamp(out.c_mass, 0.0, 1.0);
  out.pass = out.worst_ratio <= 1.0 && out.c_mass >= c_mass - 1e-12;
  return out;
}

FrostmanFit tube_exponent(const WeightedMeasure& nu, Point x, int lmin, int lmax) {
  require(lmin >= 0 && lmax - lmin >= 3, ErrorKind::ScaleRangeTooNarrow,
          "regression needs level_max - level_min >= 3");
  std::vector<double> xs, ys, masses;
  for (int l = lmin; l <= lmax; ++l) masses.push_back(heaviest_tube(nu, x, std::ldexp(1.0, -l)).mass);
  // A width-w tube contains every narrower tube on its axis, but the width-w net is coarser, so
  // take the running maximum from fine to coarse.
  for (std::size_t k = masses.size() - 1; k-- > 0;) masses[k] = std::max(masses[k], masses[k + 1]);
  for (std::size_t k = 0; k < masses.size(); ++k) {
    xs.push_back(-static_cast<double>(lmin + static_cast<int>(k)));
    ys.push_back(std::log2(masses[k]));
  }
  FrostmanFit fit;
  fit.exponent = std::clamp(least_squares(xs, ys).slope, 0.0, 2.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const double w = std::ldexp(1.0, -(lmin + static_cast<int>(k)));
    fit.max_mass_per_level.emplace_back(lmin + static_cast<int>(k), masses[k]);
    if (masses[k] / std::pow(w, fit.exponent) > worst) {
      worst = masses[k] / std::pow(w, fit.exponent);
      fit.witness_radius = w;
    }
  }
  fit.witness_center = x;
  fit.constant = std::max(1.0, worst);
  return fit;
}

std::size_t line_covering_number(std::span<const Line> lines, double r) {
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  cells.reserve(lines.size());
  for (const Line& l : lines) {
    cells.emplace_back(static_cast<std::int64_t>(std::floor(l.angle() / r)),
                       static_cast<std::int64_t>(std::floor(l.offset() / r)));
  }
  std::sort(cells.begin(), cells.end());
  return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

TubeSetCheck verify_tube_set(const TubeFamily& family, double sigma, double c) {
  TubeSetCheck out;
  if (family.tubes.empty()) return out;
  const double r = family.width;
  std::vector<Line> axes;
  axes.reserve(family.tubes.size());
  for (const Tube& t : family.tubes) axes.push_back(t.axis());
  const double total = static_cast<double>(line_covering_number(axes, r));
  std::vector<double> rhos = dyadic_widths(r);
  std::reverse(rhos.begin(), rhos.end());  // finest first

  struct Worst {
    double ratio = -1.0;
    double rho = 0.0;
  };
  std::vector<Worst> per(axes.size());
  parallel_for(axes.size(), [&](std::size_t b, std::size_t e) {
    std::vector<std::pair<double, std::size_t>> order(axes.size());
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < axes.size(); ++j) order[j] = {line_distance(axes[i], axes[j]), j};
      std::sort(order.begin(), order.end());
      std::unordered_set<std::uint64_t> cells;
      std::size_t k = 0;
      for (double rho : rhos) {
        for (; k < order.size() && order[k].first <= rho + 1e-12; ++k) {
          const Line& l = axes[order[k].second];
          const auto a = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::floor(l.angle() / r)));
          const auto o = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::floor(l.offset() / r)));
          cells.insert((a << 32) ^ (o & 0xffffffffULL));
        }
        const double ratio = static_cast<double>(cells.size()) / (std::pow(rho, sigma) * total);
        if (ratio > per[i].ratio) per[i] = {ratio, rho};
      }
    }
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < per.size(); ++i) {
    if (per[i].ratio > per[best].ratio) best = i;
  }
  out.worst_ratio = per[best].ratio;
  out.worst_line = axes[best];
  out.worst_rho = per[best].rho;
  out.pass = out.worst_ratio <= c;
  return out;
}

TubeFamily rich_pencil(const DiscreteSet& p, Point x, double r, double min_count) {
  TubeFamily f;
  f.width = r;
  if (p.empty()) return f;
  const WeightedMeasure counts = WeightedMeasure::normalized(p, std::vector<double>(p.size(), 1.0));
  const std::vector<double> mass = direction_masses(counts, x, r, std::nullopt);
  const double n = static_cast<double>(p.size());
  const double step = kPi / static_cast<double>(mass.size());
  f.direction_net_step = step;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    if (mass[k] * n + 1e-6 >= min_count) {
      f.tubes.emplace_back(Line::from_point_angle(x, static_cast<double>(k) * step), r);
    }
  }
  return f;
}

FuRenAudit fu_ren_audit(const FuRenInstance& inst) {
  const FuRenParams& pr = inst.params;
  FuRenAudit out;
  out.implied_bound = pr.s + pr.t - 1.0 - pr.zeta;
  auto failed = [&](std::string why) { out.failures.push_back(std::move(why)); };
  const double big_c = std::pow(pr.r, -pr.eta);

  if (std::abs(inst.p_x.delta() - pr.r) > 1e-12 * pr.r ||
      std::abs(inst.p_y.delta() - pr.r) > 1e-12 * pr.r) {
    failed("resolution: p_x.delta and p_y.delta must equal r");
  }
  if (inst.p_x.empty() || !verify_delta_s_set(inst.p_x, pr.s, big_c, pr.r).pass) {
    failed("(a) p_x is not an (r, s, r^-eta)-set");
  }
  if (inst.p_y.empty() || !verify_delta_s_set(inst.p_y, pr.t, big_c, pr.r).pass) {
    failed("(b) p_y is not an (r, t, r^-eta)-set");
  }
  double observed = std::numeric_limits<double>::infinity();
  if (inst.tube_map.empty()) {
    failed("(c) no tube families");
    observed = 0.0;
  }
  const double rich = std::pow(pr.r, pr.sigma + pr.eta) * static_cast<double>(inst.p_y.size());
  bool tubes_ok = !inst.tube_map.empty();
  for (std::size_t i = 0; i < inst.p_x.size() && tubes_ok; ++i) {
    const auto it = inst.tube_map.find(i);
    if (it == inst.tube_map.end() || it->second.tubes.empty()) {
      failed("(c) point " + std::to_string(i) + " of p_x has no tubes");
      tubes_ok = false;
      observed = 0.0;
      break;
    }
    const TubeFamily& fam = it->second;
    observed = std::min(observed, std::log(static_cast<double>(fam.tubes.size())) / std::log(1.0 / pr.r));
    if (!verify_tube_set(fam, pr.sigma, big_c).pass) {
      failed("(c) tubes at point " + std::to_string(i) + " are not an (r, sigma, r^-eta)-set");
      tubes_ok = false;
    }
    for (const Tube& t : fam.tubes) {
      if (!t.contains(inst.p_x[i])) {
        failed("(c) a tube at point " + std::to_string(i) + " misses it");
        tubes_ok = false;
        break;
      }
      std::size_t hits = 0;
      for (const Point& y : inst.p_y.points()) hits += t.contains(y);
      if (static_cast<double>(hits) < rich) {
        failed("(c) a tube at point " + std::to_string(i) + " holds fewer than r^(sigma+eta)|P_Y| points");
        tubes_ok = false;
        break;
      }
    }
  }
  out.observed_sigma = std::isfinite(observed) ? observed : 0.0;
  out.hypotheses_met = out.failures.empty();
  out.consistent = !out.hypotheses_met || pr.sigma >= out.implied_bound;
  return out;
}

FuRenInstance fu_ren_column_instance(double r, double eta, double zeta) {
  const auto n = static_cast<std::size_t>(std::llround(1.0 / r));
  std::vector<Point> xs, ys;
  for (std::size_t j = 0; j < n; ++j) {
    xs.push_back({0.25, static_cast<double>(j) * r});
    ys.push_back({0.75, static_cast<double>(j) * r});
  }
  FuRenInstance inst{DiscreteSet(xs, r, "column_x"), DiscreteSet(ys, r, "column_y"), {},
                     {r, 1.0, 1.0, 1.0, eta, zeta}};
  const double rich = std::pow(r, 1.0 + eta) * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.tube_map.emplace(i, rich_pencil(inst.p_y, xs[i], r, rich));
  }
  return inst;
}

FuRenInstance fu_ren_random_instance(const FuRenParams& params, std::uint64_t seed) {
  DiscreteSet px = gen_random_delta_s_set(params.s, params.r, seed);
  DiscreteSet py = gen_random_delta_s_set(params.t, params.r, seed + 1);
  FuRenInstance inst{px, py, {}, params};
  const double rich = std::pow(params.r, params.sigma + params.eta) * static_cast<double>(py.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    inst.tube_map.emplace(i, rich_pencil(py, px[i], params.r, rich));
  }
  return inst;
}

}  // namespace gmt
