#include "cars/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "cars/errors.hpp"

namespace cars {
namespace {

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double weighted_abs(const std::vector<double>& values, const std::vector<double>& weights) {
  NeumaierSum s;
  for (std::size_t n = 0; n < values.size(); ++n) s.add(std::abs(values[n]) * weights[n]);
  return s.value();
}

// Per-node integrands of the three physical terms for the given frequencies.
struct TermColumns {
  std::vector<double> electric, magnetic, quadrupole;
};

TermColumns term_columns(const PropertyTensorSet& tensors, const kernels::RotationBatch& batch,
                         double omega3, double omega4, double c, kernels::SimdLevel level) {
  kernels::BracketColumns cols = kernels::vvvr_brackets(tensors.frame_tensors(), batch, level);
  const double k3 = omega3 / c;
  const double k4 = omega4 / c;
  TermColumns out;
  out.electric = std::move(cols.electric);
  out.magnetic = std::move(cols.magnetic);
  for (double& m : out.magnetic) m /= c;
  out.quadrupole.resize(out.electric.size());
  for (std::size_t n = 0; n < out.quadrupole.size(); ++n)
    out.quadrupole[n] = k3 * cols.quad_probe[n] + k4 * cols.quad_anti_stokes[n];
  return out;
}

Estimate quadrature_estimate(const std::vector<double>& coarse, const kernels::RotationBatch& cg,
                             const std::vector<double>& fine, const kernels::RotationBatch& fg,
                             double tolerance, const char* what) {
  Estimate e;
  e.value = compensated_dot(coarse, cg.weights());
  const double refined = compensated_dot(fine, fg.weights());
  e.uncertainty = std::abs(refined - e.value);
  e.scale = std::max(std::abs(e.value), weighted_abs(coarse, cg.weights()));
  if (e.uncertainty > tolerance * e.scale) {
    std::ostringstream msg;
    msg << "quadrature for " << what << " did not converge: order doubling changed the value by "
        << e.uncertainty << " (scale " << e.scale << ")";
    throw NonConvergence(msg.str());
  }
  return e;
}

Estimate sample_estimate(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  NeumaierSum s;
  for (double v : x) s.add(v);
  Estimate e;
  e.value = s.value() / n;
  NeumaierSum var;
  NeumaierSum abs_sum;
  for (double v : x) {
    var.add((v - e.value) * (v - e.value));
    abs_sum.add(std::abs(v));
  }
  e.uncertainty = x.size() > 1 ? std::sqrt(var.value() / (n - 1.0) / n) : 0.0;
  e.scale = std::max(std::abs(e.value), abs_sum.value() / n);
  return e;
}

void require_samples(std::size_t samples) {
  if (samples < 1000) throw ValidationError("Monte Carlo average needs at least 1000 samples");
}

}  // namespace

AveragedTerms averaged_terms(const IsotropicInvariantSet& iso, double omega3, double omega4, double c) {
  return {averaged_electric(iso), averaged_magnetic(iso, c), averaged_quadrupole(iso, omega3, omega4, c)};
}

AveragedTerms averaged_terms_natural(const NaturalInvariantSet& nat, double c) {
  return {electric_natural(nat), magnetic_natural(nat, c), quadrupole_natural(nat, c)};
}

double compensated_dot(const std::vector<double>& values, const std::vector<double>& weights) {
  NeumaierSum s;
  for (std::size_t n = 0; n < values.size(); ++n) s.add(values[n] * weights[n]);
  return s.value();
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ValidationError("Gauss-Legendre rule needs at least one node");
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

kernels::RotationBatch so3_quadrature_grid(QuadratureOrder order) {
  if (order.alpha_nodes < 1 || order.beta_nodes < 1 || order.gamma_nodes < 1)
    throw ValidationError("quadrature order must be positive");
  std::vector<double> x, w;
  gauss_legendre(order.beta_nodes, x, w);
  const double two_pi = 2.0 * std::numbers::pi;
  const double norm = 1.0 / (2.0 * order.alpha_nodes * order.gamma_nodes);
  kernels::RotationBatch batch;
  batch.reserve(static_cast<std::size_t>(order.alpha_nodes) * x.size() *
                static_cast<std::size_t>(order.gamma_nodes));
  for (int a = 0; a < order.alpha_nodes; ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      for (int g = 0; g < order.gamma_nodes; ++g)
        batch.push_back(Rotation::from_euler_zyz(two_pi * a / order.alpha_nodes, std::acos(x[b]),
                                                 two_pi * g / order.gamma_nodes),
                        w[b] * norm);
  return batch;
}

kernels::RotationBatch haar_batch(std::size_t n, std::uint64_t seed) {
  HaarSampler sampler(seed);
  kernels::RotationBatch batch;
  batch.reserve(n);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) batch.push_back(sampler.next(), w);
  return batch;
}

Estimate so3_quadrature_average(const std::function<double(const Rotation&)>& f,
                                QuadratureOrder order, double tolerance) {
  auto sample = [&](const kernels::RotationBatch& grid) {
    std::vector<double> values(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) values[n] = f(grid.rotation(n));
    return values;
  };
  const auto coarse_grid = so3_quadrature_grid(order);
  const auto fine_grid = so3_quadrature_grid(order.doubled());
  return quadrature_estimate(sample(coarse_grid), coarse_grid, sample(fine_grid), fine_grid,
                             tolerance, "expression");
}

Estimate mc_average(const std::function<double(const Rotation&)>& f, std::size_t samples,
                    std::uint64_t seed) {
  require_samples(samples);
  HaarSampler sampler(seed);
  std::vector<double> values(samples);
  for (double& v : values) v = f(sampler.next());
  return sample_estimate(values);
}

VvvrAverage vvvr_quadrature_average(const PropertyTensorSet& tensors, double omega3, double omega4,
                                    double c, QuadratureOrder order, double tolerance,
                                    kernels::SimdLevel level) {
  const auto coarse_grid = so3_quadrature_grid(order);
  const auto fine_grid = so3_quadrature_grid(order.doubled());
  const TermColumns coarse = term_columns(tensors, coarse_grid, omega3, omega4, c, level);
  const TermColumns fine = term_columns(tensors, fine_grid, omega3, omega4, c, level);
  return {quadrature_estimate(coarse.electric, coarse_grid, fine.electric, fine_grid, tolerance,
                              "electric term"),
          quadrature_estimate(coarse.magnetic, coarse_grid, fine.magnetic, fine_grid, tolerance,
                              "magnetic term"),
          quadrature_estimate(coarse.quadrupole, coarse_grid, fine.quadrupole, fine_grid, tolerance,
                              "quadrupole term")};
}

VvvrAverage vvvr_mc_average(const PropertyTensorSet& tensors, double omega3, double omega4,
                            double c, std::size_t samples, std::uint64_t seed,
                            kernels::SimdLevel level) {
  require_samples(samples);
  const auto batch = haar_batch(samples, seed);
  const TermColumns cols = term_columns(tensors, batch, omega3, omega4, c, level);
  return {sample_estimate(cols.electric), sample_estimate(cols.magnetic),
          sample_estimate(cols.quadrupole)};
}

// ---------------------------------------------------------------------------

bool OracleReport::authoritative_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const OracleEntry& e) { return !e.authoritative || e.pass(); });
}

bool OracleReport::natural_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const OracleEntry& e) { return e.authoritative || e.pass(); });
}

int OracleReport::exit_code() const {
  if (!authoritative_pass()) return 1;
  return natural_pass() ? 0 : 2;
}

std::string OracleReport::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "case " << case_name << "  omega3=" << omega3 << " omega4=" << omega4 << " c=" << c << "\n";
  out << "quadrature order " << options.order.alpha_nodes << "/" << options.order.beta_nodes << "/"
      << options.order.gamma_nodes << ", tol " << options.quadrature_tolerance
      << " relative; Monte Carlo " << options.samples << " samples, seed " << options.seed << ", "
      << options.mc_sigmas << " sigma\n";
  for (const OracleEntry& e : entries) {
    out << (e.pass() ? "PASS" : "FAIL") << "  " << e.term << " (" << e.rendition
        << (e.authoritative ? ", authoritative" : ", cross-check") << ")\n"
        << "      closed     " << e.closed << "\n"
        << "      quadrature " << e.quadrature.value << "  rel.err " << e.quadrature_relative_error
        << (e.quadrature_pass ? "" : "  [mismatch]") << "\n"
        << "      monte carlo " << e.monte_carlo.value << " +- " << e.monte_carlo.uncertainty
        << "  (" << e.mc_sigma_distance << " sigma)" << (e.mc_pass ? "" : "  [mismatch]") << "\n";
  }
  out << "result: "
      << (exit_code() == 0   ? "all closed forms agree with the oracles"
          : exit_code() == 2 ? "authoritative closed forms agree; natural-invariant rendition mismatch"
                             : "authoritative closed form disagrees with the oracles")
      << "\n";
  return out.str();
}

OracleReport verify_closed_forms(const PropertyTensorSet& tensors, double omega3, double omega4,
                                 double c, const VerifyOptions& options, std::string case_name) {
  const IsotropicInvariantSet iso =
      isotropic_invariants(tensors.alpha34, tensors.alpha12, tensors.gprime34, tensors.a34);
  const NaturalInvariantSet nat = natural_from_isotropic(iso, omega3, omega4);
  const AveragedTerms closed = averaged_terms(iso, omega3, omega4, c);
  const AveragedTerms natural = averaged_terms_natural(nat, c);

  const VvvrAverage quad = vvvr_quadrature_average(tensors, omega3, omega4, c, options.order,
                                                   options.convergence_tolerance);
  const VvvrAverage mc = vvvr_mc_average(tensors, omega3, omega4, c, options.samples, options.seed);

  OracleReport report;
  report.case_name = std::move(case_name);
  report.omega3 = omega3;
  report.omega4 = omega4;
  report.c = c;
  report.options = options;

  auto add = [&](const char* term, bool authoritative, double value, const Estimate& q,
                 const Estimate& m) {
    OracleEntry e;
    e.term = term;
    e.rendition = authoritative ? "isotropic" : "natural";
    e.authoritative = authoritative;
    e.closed = value;
    e.quadrature = q;
    e.monte_carlo = m;
    const double scale = std::max({std::abs(value), q.scale});
    const double diff = std::abs(value - q.value);
    e.quadrature_relative_error = scale > 0.0 ? diff / scale : diff;
    e.quadrature_pass = diff <= options.quadrature_tolerance * scale;
    // 5 sigma, floored at the quadrature tolerance so that integrands that are
    // constant up to roundoff are not judged against a 1e-17 standard error
    const double mdiff = std::abs(value - m.value);
    const double floor = options.quadrature_tolerance * std::max(std::abs(value), m.scale);
    e.mc_sigma_distance = m.uncertainty > 0.0 ? mdiff / m.uncertainty : (mdiff == 0.0 ? 0.0 : INFINITY);
    e.mc_pass = mdiff <= std::max(options.mc_sigmas * m.uncertainty, floor);
    report.entries.push_back(e);
  };
  add("electric", true, closed.electric, quad.electric, mc.electric);
  add("magnetic", true, closed.magnetic, quad.magnetic, mc.magnetic);
  add("quadrupole", true, closed.quadrupole, quad.quadrupole, mc.quadrupole);
  add("electric", false, natural.electric, quad.electric, mc.electric);
  add("magnetic", false, natural.magnetic, quad.magnetic, mc.magnetic);
  add("quadrupole", false, natural.quadrupole, quad.quadrupole, mc.quadrupole);
  return report;
}

}  // namespace cars
