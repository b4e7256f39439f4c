#include "cars/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <system_error>

#include "cars/errors.hpp"

namespace cars {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kANames[] = {"a0(11)", "a0(12)", "a0(21)", "a0(22)", "a2(11)",
                                   "a2(12)", "a2(21)", "a2(22)", "a4(11)"};
constexpr const char* kGNames[] = {"g0(11)", "g0(12)", "g0(21)", "g0(22)", "g2(11)", "g2(12)", "g2(21)",
                                   "g2(22)", "g2(31)", "g2(32)", "g2(41)", "g2(42)", "g4(11)"};
constexpr const char* kKNames[] = {"k0(21)", "k0(22)", "k2(21)", "k2(22)", "k2(31)",
                                   "k2(32)", "k2(41)", "k2(42)", "k4(11)"};

constexpr const char* kRateUnits =
    "rates: 2 pi rho_f / hbar * pi^2 rho_s^2 (hbar c / 2 eps0 V)^4 k1 k2 k3 k4 n1 n3 (n2 + 1)(n4 + 1) "
    "* <bracket>, atomic units, n_j = 1";

// A Monte Carlo seed for verify is also used to draw the random case.
constexpr std::uint64_t kRandomCaseSalt = 0x9e3779b97f4a7c15ULL;
constexpr double kBuiltinOmega1 = 0.09;
constexpr double kBuiltinOmega3 = 0.1;
constexpr double kBuiltinShiftCm1 = 1000.0;

struct Context {
  const RunConfig& config;
  std::ostream& out;
  std::ostream& err;
};

// One evaluation unit: a tensor-form mode or a states model resolved at
// its frequencies.
struct Case {
  std::string name;
  double shift_cm1 = 0.0;
  FrequencyQuad w;
  PropertyTensorSet tensors;
  std::optional<SosDefects> defects;
};

PhysicalContext physical(const RunConfig& cfg, const Constants& constants) {
  PhysicalContext ctx;
  ctx.c = constants.c;
  ctx.normalize = cfg.normalize;
  return ctx;
}

double need(std::optional<double> flag, std::optional<double> file, const char* name) {
  if (flag) return *flag;
  if (file) return *file;
  throw ValidationError(std::string(name) + " is not set: pass --" + name + " or add beams." + name + " to the model");
}

std::vector<Case> resolve_cases(const RunConfig& cfg, const ModelFile& model, std::ostream& err) {
  const double omega1 = need(cfg.omega1, model.beams.omega1, "omega1");
  const double omega3 = need(cfg.omega3, model.beams.omega3, "omega3");
  std::vector<Case> cases;
  if (!model.is_states()) {
    for (const Mode& m : model.modes)
      cases.push_back({m.name, m.shift_cm1, frequencies_at_shift(omega1, omega3, m.shift_cm1), m.tensors, {}});
    return cases;
  }
  const MolecularModel& states = *model.states;
  double shift = 0.0;
  if (model.beams.omega2) {
    shift = (omega1 - *model.beams.omega2) / kHartreePerWavenumber;
  } else {
    shift = (states.level(states.roles.excited).energy - states.level(states.roles.ground).energy) /
            kHartreePerWavenumber;
  }
  const FrequencyQuad w = frequencies_at_shift(omega1, omega3, shift);
  const SosTensors built = build_property_tensors(states, w);
  const SosDefects& d = built.defects;
  if (std::max({d.gprime34, d.gprime12, d.a34, d.a12}) > 1e-12)
    err << "note: sum-over-states routes differ (G' " << format_number(std::max(d.gprime34, d.gprime12))
        << ", A " << format_number(std::max(d.a34, d.a12)) << " relative); the first route is used\n";
  cases.push_back({"states", shift, w, built.tensors, d});
  return cases;
}

// Results go to --output when given, else to the command stream.
void emit(const Context& ctx, const std::string& text) {
  if (!ctx.config.output) {
    ctx.out << text;
    return;
  }
  std::ofstream file(*ctx.config.output, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + ctx.config.output->string() + "'");
  file << text;
}

template <std::size_t N>
void row(std::ostringstream& os, const char* label, const std::array<double, N>& v, int first_index) {
  os << label;
  for (std::size_t i = 0; i < N; ++i)
    os << (i ? " " : "  ") << first_index + static_cast<int>(i) << ":" << format_number(v[i]);
  os << "\n";
}

template <std::size_t N>
void named(std::ostringstream& os, const char* label, const std::array<double, N>& v, const char* const* names) {
  os << label;
  for (std::size_t i = 0; i < N; ++i) os << (i ? " " : "  ") << names[i] << "=" << format_number(v[i]);
  os << "\n";
}

ojson report_json(const OracleReport& r) {
  ojson j;
  j["case"] = r.case_name;
  j["omega3"] = r.omega3;
  j["omega4"] = r.omega4;
  j["c"] = r.c;
  j["exit_code"] = r.exit_code();
  ojson entries = ojson::array();
  for (const OracleEntry& e : r.entries)
    entries.push_back({{"term", e.term},
                       {"rendition", e.rendition},
                       {"authoritative", e.authoritative},
                       {"pass", e.pass()},
                       {"closed", e.closed},
                       {"quadrature", e.quadrature.value},
                       {"quadrature_relative_error", e.quadrature_relative_error},
                       {"monte_carlo", e.monte_carlo.value},
                       {"monte_carlo_stderr", e.monte_carlo.uncertainty},
                       {"mc_sigma_distance", e.mc_sigma_distance}});
  j["entries"] = entries;
  return j;
}

// 0 < 2 < 1 in severity.
int worse(int a, int b) {
  auto rank = [](int c) { return c == 1 ? 2 : c == 2 ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

int run_verify(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  VerifyOptions opts;
  opts.order = cfg.order();
  opts.convergence_tolerance = cfg.convergence_tolerance;
  opts.quadrature_tolerance = cfg.quadrature_tolerance;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;

  std::vector<Case> cases;
  double c = kSpeedOfLightAu;
  if (cfg.input) {
    const ModelFile model = load_model(*cfg.input);
    c = model.constants.c;
    cases = resolve_cases(cfg, model, ctx.err);
  } else {
    if (cfg.verify_case != "all" && cfg.verify_case != "isotropic" && cfg.verify_case != "random")
      throw ValidationError("unknown verify case '" + cfg.verify_case + "' (isotropic, random, all)");
    const FrequencyQuad w = frequencies_at_shift(cfg.omega1.value_or(kBuiltinOmega1),
                                                 cfg.omega3.value_or(kBuiltinOmega3), kBuiltinShiftCm1);
    if (cfg.verify_case != "random")
      cases.push_back({"isotropic", kBuiltinShiftCm1, w,
                       {SymRank2::identity(), SymRank2::identity(), Rank2::identity(), Rank3SymLast{},
                        std::nullopt, std::nullopt},
                       {}});
    if (cfg.verify_case != "isotropic")
      cases.push_back({"random", kBuiltinShiftCm1, w, builtin_random_tensors(cfg.seed ^ kRandomCaseSalt), {}});
  }

  int code = 0;
  std::ostringstream text;
  ojson record = ojson::array();
  for (const Case& k : cases) {
    const OracleReport r = verify_closed_forms(k.tensors, k.w.omega3, k.w.omega4, c, opts, k.name);
    text << r.to_text() << "\n";
    record.push_back(report_json(r));
    code = worse(code, r.exit_code());
  }
  text << "verify exit status " << code << "\n";
  ctx.out << text.str();
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + cfg.output->string() + "'");
    file << record.dump(2) << "\n";
  }
  return code;
}

ModelFile required_model(const RunConfig& cfg) {
  if (!cfg.input) throw ValidationError(cfg.command + " needs --input");
  return load_model(*cfg.input);
}

int run_invariants(const Context& ctx) {
  const ModelFile model = required_model(ctx.config);
  std::ostringstream os;
  for (const Case& k : resolve_cases(ctx.config, model, ctx.err)) {
    const PropertyTensorSet& t = k.tensors;
    const IsotropicInvariantSet iso = isotropic_invariants(t.alpha34, t.alpha12, t.gprime34, t.a34);
    const NaturalInvariantSet nat = natural_from_isotropic(iso, k.w.omega3, k.w.omega4);
    os << "mode " << k.name << "  shift_cm1=" << format_number(k.shift_cm1)
       << "  omega3=" << format_number(k.w.omega3) << "  omega4=" << format_number(k.w.omega4) << "\n";
    row(os, "[alpha]", iso.alpha, 1);
    row(os, "[G']", iso.gprime, 1);
    row(os, "[A]", iso.aquad, 5);
    named(os, "a", nat.a, kANames);
    named(os, "g", nat.g, kGNames);
    named(os, "k@omega3", nat.k_omega3, kKNames);
    named(os, "k@omega4", nat.k_omega4, kKNames);
    os << "residuals  alpha=" << format_number(dependence_residual_alpha(iso))
       << " G'=" << format_number(dependence_residual_gprime(iso))
       << " A=" << format_number(dependence_residual_aquad(iso)) << "\n\n";
  }
  emit(ctx, os.str());
  return 0;
}

std::string flag(const Consistency& c) {
  return (c.consistent ? "consistent" : "INCONSISTENT") + std::string(" (") + format_number(c.deviation) + ")";
}

int run_delta(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  const ModelFile model = required_model(cfg);
  const PhysicalContext phys = physical(cfg, model.constants);
  SignalOptions opts;
  opts.consistency_tolerance = cfg.consistency_tolerance;
  opts.with_oracle = cfg.oracle;
  opts.order = cfg.order();

  std::ostringstream os;
  os << "# " << (cfg.normalize ? "rates normalized: prefactor and 2 pi rho_f / hbar set to 1" : kRateUnits) << "\n";
  for (const Case& k : resolve_cases(cfg, model, ctx.err)) {
    const SignalResult r = evaluate_signal(k.tensors, k.w, phys, opts);
    os << "mode " << k.name << "  shift_cm1=" << format_number(k.shift_cm1) << "\n"
       << "  delta        " << format_number(r.delta_from_terms) << "\n"
       << "  delta_eq12   " << format_number(r.delta_eq12) << "  " << flag(r.eq12) << "\n"
       << "  delta_eq13   " << format_number(r.delta_eq13) << "  " << flag(r.eq13) << "\n";
    if (r.delta_oracle) os << "  delta_oracle " << format_number(*r.delta_oracle) << "  " << flag(*r.oracle) << "\n";
    os << "  rate_R       " << format_number(r.rate_R) << "\n"
       << "  rate_L       " << format_number(r.rate_L) << "\n";
  }
  emit(ctx, os.str());
  return 0;
}

int run_spectrum(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  const ModelFile model = required_model(cfg);
  const PhysicalContext phys = physical(cfg, model.constants);
  SpectrumRequest req;
  req.omega1 = need(cfg.omega1, model.beams.omega1, "omega1");
  req.omega3 = need(cfg.omega3, model.beams.omega3, "omega3");
  if (cfg.scan) {
    req.grid = *cfg.scan;
  } else if (model.beams.scan) {
    req.grid = *model.beams.scan;
  } else {
    throw ValidationError("no scan grid: pass --scan start,stop,step or add beams.scan to the model");
  }
  if (cfg.lorentzian) req.envelope = LorentzianEnvelope{*cfg.lorentzian};

  const std::vector<SpectrumRow> rows =
      model.is_states() ? spectrum(*model.states, req, phys) : spectrum(model.modes, req, phys);
  std::string csv = "shift_cm1,omega2_au,rate_R,rate_L,delta\n";
  for (const SpectrumRow& r : rows) {
    for (double v : {r.shift_cm1, r.omega2, r.rate_R, r.rate_L}) csv += format_number(v) + ",";
    csv += format_number(r.delta) + "\n";
  }
  emit(ctx, csv);
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  if (samples < 1000) throw ValidationError("--samples must be at least 1000");
  if (quad_order < 2) throw ValidationError("--quad-order must be at least 2");
  for (double t : {quadrature_tolerance, convergence_tolerance, consistency_tolerance})
    if (!(t > 0.0)) throw ValidationError("tolerances must be positive");
  for (auto w : {omega1, omega3})
    if (w && !(*w > 0.0 && std::isfinite(*w))) throw ValidationError("frequencies must be positive");
  if (lorentzian && !(*lorentzian > 0.0)) throw ValidationError("--lorentzian width must be positive");
  if (scan) scan->validate();
}

QuadratureOrder RunConfig::order() const {
  const int half = std::max(1, quad_order / 2);
  return {half, quad_order, half};
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Context ctx{config, out, err};
  try {
    config.validate();
    if (config.command == "verify") return run_verify(ctx);
    if (config.command == "invariants") return run_invariants(ctx);
    if (config.command == "delta") return run_delta(ctx);
    if (config.command == "spectrum") return run_spectrum(ctx);
    throw ValidationError("unknown command '" + config.command + "'");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  // the shortest round-trip form never needs more than 17 significant digits
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

ScanGrid parse_scan_argument(const std::string& text) {
  double v[3];
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 3; ++i) {
    auto [next, ec] = std::from_chars(p, end, v[i]);
    if (ec != std::errc{} || (i < 2 && (next == end || *next != ',')) || (i == 2 && next != end))
      throw ValidationError("--scan expects start,stop,step, got '" + text + "'");
    p = next + (i < 2 ? 1 : 0);
  }
  ScanGrid g{v[0], v[1], v[2]};
  g.validate();
  return g;
}

PropertyTensorSet builtin_random_tensors(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  // 53-bit uniforms on [-1, 1): the same bytes on every platform
  auto u = [&] { return 2.0 * static_cast<double>(engine() >> 11) * 0x1.0p-53 - 1.0; };
  auto sym = [&] {
    Mat3 m{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) m[3 * i + j] = m[3 * j + i] = u();
    for (std::size_t i = 0; i < 3; ++i) m[4 * i] += 1.5;
    return SymRank2(m);
  };
  PropertyTensorSet t;
  t.alpha34 = sym();
  t.alpha12 = sym();
  Mat3 g{};
  for (double& x : g) x = u();
  t.gprime34 = Rank2(g);
  Rank3SymLast::Storage a{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = j; n < 3; ++n) a[Rank3SymLast::index(i, j, n)] = a[Rank3SymLast::index(i, n, j)] = u();
  t.a34 = Rank3SymLast(a);
  return t;
}

}  // namespace cars
