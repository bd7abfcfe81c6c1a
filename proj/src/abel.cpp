#include "qga/abel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "qga/error.hpp"
#include "qga/spec_io.hpp"

namespace qga {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Root of a monotone scalar map on [lo, hi] to within a few ulps; returns the
// end point or midpoint with the smallest |f|.
template <class F>
double solve_bracketed(F f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw BracketError("root not bracketed in [" + fmt(lo) + ", " + fmt(hi) + "]");
  std::uintmax_t max_iter = 200;
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  double best = a;
  double best_abs = std::abs(f(a));
  for (double c : {b, 0.5 * (a + b)}) {
    const double v = std::abs(f(c));
    if (v < best_abs) {
      best_abs = v;
      best = c;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Seed::Kind k) {
  switch (k) {
    case Seed::Kind::linear:
      return "linear";
    case Seed::Kind::log_linear:
      return "log_linear";
    case Seed::Kind::custom:
      return "custom";
  }
  return "linear";
}

Grid abel_default_grid() { return Grid::log_spaced(1e-4, 1e4, 1024); }

struct AbelConjugacy::Impl {
  RealFunction g;
  double omega;
  double x0;
  double lo;
  Seed seed;
  int cap;
  bool log_gauge = false;
  double slope = 0.0;
  double profile_top = 0.0;     // custom profile at lo
  double profile_bottom = 0.0;  // custom profile at x0

  double seed_value(double y) const {
    switch (seed.kind) {
      case Seed::Kind::linear:
        return omega * (x0 - y) / (x0 - lo);
      case Seed::Kind::log_linear:
        return omega * (std::log(x0) - std::log(y)) / (std::log(x0) - std::log(lo));
      case Seed::Kind::custom: {
        const double s = omega * ((*seed.profile)(y)-profile_bottom) / (profile_top - profile_bottom);
        return std::clamp(s, 0.0, omega);
      }
    }
    return 0.0;
  }

  double seed_inverse(double r) const {
    double y = 0.0;
    switch (seed.kind) {
      case Seed::Kind::linear:
        y = x0 - r * (x0 - lo) / omega;
        break;
      case Seed::Kind::log_linear:
        y = std::exp(std::log(x0) - r * (std::log(x0) - std::log(lo)) / omega);
        break;
      case Seed::Kind::custom: {
        auto f = [&](double t) { return seed_value(t) - r; };
        y = solve_bracketed(f, lo, x0, f(lo), f(x0));
        break;
      }
    }
    return std::clamp(y, std::nextafter(lo, x0), x0);
  }

  double g_inverse(double z) const {
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("g inverse: argument outside (0, inf)", z);
    if (log_gauge) return z / slope;
    auto f = [&](double t) { return g(t) - z; };
    const double flo = f(z);
    double hi = 2.0 * z;
    double fhi = f(hi);
    for (int i = 0; fhi < 0.0; ++i) {
      if (i > 1100) throw BracketError("g inverse: no bracket above " + fmt(z));
      hi *= 2.0;
      fhi = f(hi);
    }
    return solve_bracketed(f, z, hi, flo, fhi);
  }

  double alpha(double x) const {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Abel function: argument outside (0, inf)", x);
    if (log_gauge) return omega * std::log(x) / std::log(slope);
    double y = x;
    long n = 0;
    if (y > x0) {
      while (y > x0) {
        if (++n > cap) throw IterationCapError("Abel function: forward orbit of " + fmt(x) + " exceeds the cap");
        y = g(y);
        if (y <= lo) return omega - static_cast<double>(n) * omega;
      }
    } else {
      while (y <= lo) {
        if (--n < -cap) throw IterationCapError("Abel function: backward orbit of " + fmt(x) + " exceeds the cap");
        y = g_inverse(y);
        if (y > x0) y = x0;
      }
    }
    return seed_value(y) - static_cast<double>(n) * omega;
  }

  double alpha_inverse(double v) const {
    if (!std::isfinite(v)) throw DomainError("inverse Abel function: non-finite argument", v);
    if (log_gauge) return std::exp(v * std::log(slope) / omega);
    double q = std::floor(v / omega);
    double r = v - q * omega;
    if (r < 0.0) {
      q -= 1.0;
      r += omega;
    }
    if (r >= omega) {
      q += 1.0;
      r -= omega;
      r = std::max(r, 0.0);
    }
    if (std::abs(q) > cap) throw IterationCapError("inverse Abel function: " + fmt(v) + " needs more steps than the cap");
    double y = seed_inverse(r);
    const long steps = static_cast<long>(q);
    for (long i = 0; i < steps; ++i) y = g(y);
    for (long i = 0; i > steps; --i) y = g_inverse(y);
    return y;
  }
};

AbelConjugacy AbelConjugacy::log_gauge(double slope, double omega) {
  if (!(slope > 0.0 && slope < 1.0)) throw ValidationError("log gauge: slope must lie in (0, 1)");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("log gauge: omega must be positive");
  auto impl = std::make_shared<Impl>(Impl{RealFunction::linear(slope, Interval::positive()), omega, 1.0, slope,
                                          Seed::log_linear(), kAbelIterationCap});
  impl->log_gauge = true;
  impl->slope = slope;
  return AbelConjugacy(std::move(impl));
}

const RealFunction& AbelConjugacy::g() const { return impl_->g; }
double AbelConjugacy::omega() const { return impl_->omega; }
double AbelConjugacy::x0() const { return impl_->x0; }
double AbelConjugacy::fundamental_lo() const { return impl_->lo; }
int AbelConjugacy::iteration_cap() const { return impl_->cap; }
const Seed& AbelConjugacy::seed() const { return impl_->seed; }
bool AbelConjugacy::is_log_gauge() const { return impl_->log_gauge; }
double AbelConjugacy::log_gauge_slope() const { return impl_->slope; }
double AbelConjugacy::alpha(double x) const { return impl_->alpha(x); }
double AbelConjugacy::alpha_inverse(double v) const { return impl_->alpha_inverse(v); }
double AbelConjugacy::g_inverse(double z) const { return impl_->g_inverse(z); }

RealFunction AbelConjugacy::alpha_function() const {
  auto impl = impl_;
  return RealFunction::opaque("abel_alpha", [impl](double x) { return impl->alpha(x); }, Interval::positive());
}

AbelConjugacy solve_abel(const RealFunction& g, const AbelOptions& options) {
  const double omega = options.omega;
  const double x0 = options.x0;
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("solve_abel: omega must be positive");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw ValidationError("solve_abel: x0 must be positive");
  if (options.iteration_cap <= 0) throw ValidationError("solve_abel: iteration cap must be positive");

  const Grid grid = options.validation ? *options.validation : abel_default_grid();
  double prev_x = 0.0;
  double prev_g = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (!(x > 0.0)) throw ValidationError("solve_abel: validation grid leaves (0, inf)");
    const double gx = g(x);
    if (!(gx > 0.0)) throw ValidationError("solve_abel: g(x) <= 0 at x=" + fmt(x));
    if (!(gx < x)) throw ValidationError("solve_abel: g(x) >= x at x=" + fmt(x));
    if (i > 0 && !(gx > prev_g)) {
      throw ValidationError("solve_abel: g not strictly increasing between x=" + fmt(prev_x) + " and x=" + fmt(x));
    }
    prev_x = x;
    prev_g = gx;
  }
  const double lo = g(x0);
  if (!(lo > 0.0 && lo < x0)) throw ValidationError("solve_abel: g(x0) must lie in (0, x0)");

  auto impl = std::make_shared<AbelConjugacy::Impl>(
      AbelConjugacy::Impl{g, omega, x0, lo, options.seed, options.iteration_cap});
  if (options.seed.kind == Seed::Kind::custom) {
    if (!options.seed.profile) throw ValidationError("solve_abel: custom seed without a profile");
    const RealFunction& p = *options.seed.profile;
    constexpr int kChecks = 64;
    double prev = p(lo);
    for (int i = 1; i <= kChecks; ++i) {
      const double y = lo + (x0 - lo) * i / kChecks;
      const double v = p(y);
      if (!(v < prev)) throw ValidationError("solve_abel: seed profile not strictly decreasing on (g(x0), x0]");
      prev = v;
    }
    impl->profile_top = p(lo);
    impl->profile_bottom = p(x0);
  }
  return AbelConjugacy(std::move(impl));
}

AbelConjugacy solve_abel(const RealFunction& g, double omega, double x0, Seed seed) {
  AbelOptions options;
  options.omega = omega;
  options.x0 = x0;
  options.seed = std::move(seed);
  return solve_abel(g, options);
}

ResidualReport abel_residual(const AbelConjugacy& c, const Grid& grid, const ScanOptions& options) {
  return scan_residual(
      grid, [&](double x) { return c.alpha(c.g()(x)) - c.alpha(x) - c.omega(); }, options);
}

RealFunction reconstruct_g(const AbelConjugacy& c) {
  return RealFunction::opaque(
      "abel_reconstruct", [c](double x) { return c.alpha_inverse(c.alpha(x) + c.omega()); }, Interval::positive());
}

RealFunction build_branch(const AbelConjugacy& c, const PeriodicFunction& p) {
  if (std::abs(p.period() - c.omega()) > 1e-12 * c.omega()) {
    throw ValidationError("build_branch: period " + fmt(p.period()) + " does not match omega " + fmt(c.omega()));
  }
  std::string spec;
  try {
    spec = branch_spec_json(c, p);
  } catch (const Error&) {
    spec.clear();
  }
  return RealFunction::opaque(
      "abel_branch",
      [c, p](double x) {
        const double a = c.alpha(x);
        return c.alpha_inverse(p(a) + a);
      },
      Interval::positive(), std::move(spec));
}

PeriodicExtraction extract_periodic(const RealFunction& h, const AbelConjugacy& c, std::size_t samples) {
  if (samples == 0) throw ValidationError("extract_periodic: need at least one sample");
  const double omega = c.omega();
  auto exact = [&](double u) { return c.alpha(h(c.alpha_inverse(u))) - u; };

  std::vector<double> us(samples);
  for (std::size_t i = 0; i < samples; ++i) us[i] = omega * static_cast<double>(i) / static_cast<double>(samples);
  const std::vector<double> table = kernels::evaluate_parallel(us, exact);

  std::vector<double> xs;
  std::vector<double> defects;
  for (int k : {-2, -1, 1, 2}) {
    const std::vector<double> shifted = kernels::evaluate_parallel(
        us, [&](double u) { return exact(u + static_cast<double>(k) * omega); });
    for (std::size_t i = 0; i < samples; ++i) {
      xs.push_back(us[i]);
      defects.push_back(shifted[i] - table[i]);
    }
  }
  ResidualReport periodicity =
      reduce_residual(xs, defects, "period samples x " + std::to_string(samples) + ", shifts -2,-1,1,2", false);
  return {PeriodicFunction::sampled(omega, table), std::move(periodicity)};
}

namespace {

// Golden-section minimum of |f| on [a, b].
template <class F>
double golden_min_abs(F f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = std::abs(f(c));
  double fd = std::abs(f(d));
  for (int i = 0; i < 200 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b));
       ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(f(d));
    }
  }
  return fc < fd ? c : d;
}

template <class F>
double bisect_sign_change(F f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Zeros of f on the sample points xs: exact zeros, sign changes and touching
// minima of |f| that refine below `tol_at(x)`. With `wrap`, xs covers one
// period and the last sample neighbours the first at xs[0] + period.
template <class F, class Tol>
std::vector<double> locate_zeros(F f, const std::vector<double>& xs, const std::vector<double>& v, Tol tol_at,
                                 bool wrap, double period) {
  std::vector<double> zeros;
  const std::size_t n = xs.size();
  auto x_at = [&](std::size_t i, long shift) {
    const long j = static_cast<long>(i) + shift;
    if (!wrap) return xs[static_cast<std::size_t>(j)];
    if (j < 0) return xs[n - 1] - period;
    if (j >= static_cast<long>(n)) return xs[0] + period;
    return xs[static_cast<std::size_t>(j)];
  };
  auto v_at = [&](long j) {
    if (wrap) return v[static_cast<std::size_t>((j + static_cast<long>(n)) % static_cast<long>(n))];
    return v[static_cast<std::size_t>(j)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    const long li = static_cast<long>(i);
    const bool has_next = wrap || i + 1 < n;
    const bool has_prev = wrap || i > 0;
    if (v[i] == 0.0) {
      zeros.push_back(xs[i]);
      continue;
    }
    if (has_next) {
      const double w = v_at(li + 1);
      if (w != 0.0 && (w > 0.0) != (v[i] > 0.0)) zeros.push_back(bisect_sign_change(f, xs[i], x_at(i, 1)));
    }
    if (has_prev && has_next) {
      const double a = std::abs(v_at(li - 1));
      const double b = std::abs(v_at(li + 1));
      const double m = std::abs(v[i]);
      const bool same_sign = (v_at(li - 1) > 0.0) == (v[i] > 0.0) && (v_at(li + 1) > 0.0) == (v[i] > 0.0);
      if (same_sign && m <= a && m < b) {
        const double x = golden_min_abs(f, x_at(i, -1), x_at(i, 1));
        if (std::abs(f(x)) <= tol_at(x)) zeros.push_back(x);
      }
    }
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

}  // namespace

FixedZeroReport fixed_zero_correspondence(const RealFunction& h, const AbelConjugacy& c, const Grid& grid,
                                          double tol) {
  FixedZeroReport report;
  const double omega = c.omega();
  auto d = [&](double x) { return h(x) - x; };
  auto d_tol = [&](double x) { return tol * std::max(1.0, std::abs(x)); };

  const std::vector<double> xs(grid.points().begin(), grid.points().end());
  const std::vector<double> dv = kernels::evaluate_parallel(xs, d);

  const PeriodicExtraction extraction = extract_periodic(h, c, 1024);
  report.periodicity_residual = extraction.periodicity.sup;
  auto p = [&](double u) { return c.alpha(h(c.alpha_inverse(u))) - u; };
  const std::vector<double> us = [&] {
    std::vector<double> out(1024);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = omega * static_cast<double>(i) / 1024.0;
    return out;
  }();
  const std::vector<double> pv(extraction.p.samples().begin(), extraction.p.samples().end());

  report.identically_fixed = std::all_of(xs.begin(), xs.end(), [&](double x) { return std::abs(d(x)) <= d_tol(x); });
  report.periodic_identically_zero =
      std::all_of(pv.begin(), pv.end(), [&](double v) { return std::abs(v) <= tol * std::max(1.0, omega); });
  if (report.identically_fixed || report.periodic_identically_zero) {
    if (report.identically_fixed) report.fixed_points = xs;
    report.consistent = report.identically_fixed && report.periodic_identically_zero;
    return report;
  }

  report.fixed_points = locate_zeros(d, xs, dv, d_tol, false, 0.0);
  report.periodic_zeros = locate_zeros(
      p, us, pv, [&](double) { return tol * std::max(1.0, omega); }, true, omega);
  for (double& u : report.periodic_zeros) {
    u = std::fmod(u, omega);
    if (u < 0.0) u += omega;
  }
  std::sort(report.periodic_zeros.begin(), report.periodic_zeros.end());

  constexpr double kMatch = 1e-6;
  auto circular = [&](double a, double b) {
    double t = std::fmod(std::abs(a - b), omega);
    return std::min(t, omega - t);
  };
  std::vector<double> fixed_alpha;
  for (double x : report.fixed_points) fixed_alpha.push_back(c.alpha(x));
  for (std::size_t i = 0; i < report.fixed_points.size(); ++i) {
    const bool matched = std::any_of(report.periodic_zeros.begin(), report.periodic_zeros.end(),
                                     [&](double z) { return circular(fixed_alpha[i], z) <= kMatch * omega; });
    if (!matched) report.unmatched_fixed_points.push_back(report.fixed_points[i]);
  }

  if (xs.size() >= 3) {
    const double a_hi = c.alpha(xs[1]);
    const double a_lo = c.alpha(xs[xs.size() - 2]);
    for (double z : report.periodic_zeros) {
      const double k_min = std::ceil((a_lo - z) / omega);
      const double k_max = std::floor((a_hi - z) / omega);
      for (double k = k_min; k <= k_max; k += 1.0) {
        const double target = z + k * omega;
        const bool matched = std::any_of(fixed_alpha.begin(), fixed_alpha.end(),
                                         [&](double a) { return std::abs(a - target) <= kMatch * omega; });
        if (!matched) {
          report.unmatched_zeros.push_back(z);
          break;
        }
      }
    }
  }
  report.consistent = report.unmatched_fixed_points.empty() && report.unmatched_zeros.empty();
  return report;
}

Theorem2Result theorem2_construct(const Generator& psi, const PeriodicFunction& p2, const Theorem2Options& options) {
  if (!psi.strict()) throw ValidationError("theorem2_construct: generator must lie strictly inside the cone");
  const RealFunction psi_neg = restrict_neg(psi.branch);
  const Grid vg = options.grid.reflected();
  for (std::size_t i = 1; i < vg.size(); ++i) {
    if (!(psi_neg(vg[i]) > psi_neg(vg[i - 1]))) {
      throw ValidationError("theorem2_construct: generator not strictly increasing near x=" + fmt(vg[i]));
    }
  }
  const PositivityCertificate cert = certify_positive(p2);
  if (!cert.positive()) {
    throw ValidationError("theorem2_construct: periodic function not certified positive (lower bound " +
                          fmt(cert.lower_bound) + ")");
  }

  const RealFunction g2 = displacement(conjugate_neg(psi_neg)).restricted(Interval::positive());
  AbelOptions abel;
  abel.omega = p2.period();
  abel.x0 = options.x0;
  abel.seed = options.seed;
  abel.iteration_cap = options.iteration_cap;
  abel.validation = options.grid;
  AbelConjugacy alpha2 = solve_abel(g2, abel);

  const RealFunction f_pos = build_branch(alpha2, p2);
  const RealFunction f = RealFunction::piecewise(psi_neg, f_pos, 0.0);
  CandidateSolution candidate = make_candidate(f, Provenance::theorem2, Grid::symmetric(options.grid));
  LemmaResiduals lemma = lemma_residuals(candidate, options.grid);
  return {std::move(candidate), std::move(alpha2), std::move(lemma.first), std::move(lemma.second)};
}

ResidualReport eq12_residual(const AbelConjugacy& a, const PeriodicFunction& p, const AbelConjugacy& b,
                             const PeriodicFunction& q, const Grid& grid, const ScanOptions& options) {
  const RealFunction ha = build_branch(a, p);
  const RealFunction hb = build_branch(b, q);
  return scan_residual(
      grid, [&](double x) { return ha(x) + hb(x) - x; }, options);
}

}  // namespace qga
