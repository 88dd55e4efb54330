#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmmix/chain.hpp"
#include "kmmix/coupling.hpp"
#include "kmmix/error.hpp"
#include "kmmix/mixing.hpp"
#include "kmmix/spectral.hpp"
#include "kmmix/version.hpp"

namespace kmmix::cli {
namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Exact parsing of decimal and fractional flag values.

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

Rational reduce(Rational x) {
  if (x.den < 0) {
    x.num = -x.num;
    x.den = -x.den;
  }
  const std::int64_t g = std::gcd(x.num, x.den);
  if (g > 1) {
    x.num /= g;
    x.den /= g;
  }
  return x;
}

// [-]digits[.digits] without exponent; nullopt when it does not fit.
std::optional<Rational> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  Rational out{0, 1};
  bool seen_dot = false;
  bool seen_digit = false;
  try {
    for (char c : s) {
      if (c == '.') {
        if (seen_dot) return std::nullopt;
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        seen_digit = true;
        out.num = checked_add(checked_mul(out.num, 10), c - '0');
        if (seen_dot) out.den = checked_mul(out.den, 10);
      } else {
        return std::nullopt;
      }
    }
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  if (!seen_digit) return std::nullopt;
  if (negative) out.num = -out.num;
  return reduce(out);
}

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  const auto a = parse_decimal(std::string_view(text).substr(0, slash));
  const auto b = parse_decimal(std::string_view(text).substr(slash + 1));
  if (!a || !b) return std::nullopt;
  if (b->num == 0) throw InvalidParameter("zero denominator in '" + text + "'");
  try {
    return reduce({checked_mul(a->num, b->den), checked_mul(a->den, b->num)});
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

double to_double(const Rational& x) {
  return static_cast<double>(x.num) / static_cast<double>(x.den);
}

// 1 - p - q, exactly when both are small rationals.
std::optional<Rational> complement(const Rational& p, const Rational& q) {
  try {
    const std::int64_t den = checked_mul(p.den / std::gcd(p.den, q.den), q.den);
    const std::int64_t pn = checked_mul(p.num, den / p.den);
    const std::int64_t qn = checked_mul(q.num, den / q.den);
    return reduce({checked_add(den, -checked_add(pn, qn)), den});
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Run configuration.

enum class Format { json, csv };

struct RunConfig {
  std::string p;
  std::string q;
  std::string r;
  std::size_t t = 10;
  std::size_t t_max = 60;
  double eps = 1e-2;
  std::size_t quad_nodes = QuadratureConfig{}.node_count;
  double series_tol = TailControl{}.series_tol;
  std::uint64_t replicas = 100000;
  std::uint64_t seed = kDefaultSeed;
  Format format = Format::json;
  std::string output;
  CouplingMode mode = CouplingMode::modified;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t horizon = 100;
  std::size_t fit_lo = 20;
  std::size_t fit_hi = 0;  // 0: up to the horizon
  unsigned threads = 0;
  std::size_t states = 10;

  ChainParams chain() const {
    if (p.empty() || q.empty()) throw InvalidParameter("--p and --q are required");
    if (r.empty()) {
      const auto pr = parse_rational(p);
      const auto qr = parse_rational(q);
      std::optional<Rational> rr;
      if (pr && qr) rr = complement(*pr, *qr);
      const double rv = rr ? to_double(*rr) : 1.0 - parse_real(p) - parse_real(q);
      return ChainParams::make(parse_real(p), parse_real(q), rv);
    }
    return ChainParams::make(parse_real(p), parse_real(q), parse_real(r));
  }

  QuadratureConfig quadrature() const {
    QuadratureConfig cfg;
    cfg.node_count = quad_nodes;
    cfg.validate();
    return cfg;
  }

  TailControl tail() const {
    if (!(series_tol > 0.0)) throw InvalidParameter("--series-tol must be positive");
    TailControl ctl;
    ctl.series_tol = series_tol;
    return ctl;
  }
};

struct Report {
  Json params = Json::object();
  Json results = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool ok = true;
  std::string failure;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

Json chain_json(const ChainParams& c) {
  return Json{{"p", c.p()}, {"q", c.q()}, {"r", c.r()}};
}

// ---------------------------------------------------------------------------
// Commands.

Report cmd_analyze(const RunConfig& cfg) {
  const ChainParams c = cfg.chain();
  const ReversibilityData rev(c);
  const SpectralMeasure m(c);
  const BoundCoefficients k = coefficients(c);
  const double ac_quad =
      integrate_psi(m, [](double) { return 1.0; }, AtomSelection::none(), cfg.quadrature());

  Report rep;
  rep.params = chain_json(c);
  rep.params["states"] = cfg.states;
  Json stationary = Json::array();
  for (std::size_t n = 0; n <= cfg.states; ++n) stationary.push_back(rev.stationary(n));
  rep.results["rho"] = rev.rho();
  rep.results["stationary"] = stationary;
  rep.results["atoms"] = Json::array({
      Json{{"location", m.unit_atom().location}, {"weight", m.unit_atom().weight}},
      Json{{"location", m.negative_atom().location}, {"weight", m.negative_atom().weight}}});
  rep.results["ac_interval"] = Json::array({m.support_lo(), m.support_hi()});
  rep.results["ac_mass"] = m.ac_mass();
  rep.results["ac_mass_quadrature"] = ac_quad;
  rep.results["A"] = k.A;
  rep.results["B"] = k.B;
  rep.results["alpha"] = k.alpha;
  rep.results["beta"] = k.beta;
  rep.results["m"] = k.m;

  rep.csv_header = {"quantity", "value"};
  auto row = [&rep](const std::string& name, double v) { rep.csv_rows.push_back({name, fmt(v)}); };
  row("rho", rev.rho());
  for (std::size_t n = 0; n <= cfg.states; ++n) row("nu_" + std::to_string(n), rev.stationary(n));
  row("unit_atom_location", m.unit_atom().location);
  row("unit_atom_weight", m.unit_atom().weight);
  row("negative_atom_location", m.negative_atom().location);
  row("negative_atom_weight", m.negative_atom().weight);
  row("ac_lo", m.support_lo());
  row("ac_hi", m.support_hi());
  row("ac_mass", m.ac_mass());
  row("ac_mass_quadrature", ac_quad);
  row("A", k.A);
  row("B", k.B);
  row("alpha", k.alpha);
  row("beta", k.beta);
  row("m", k.m);
  return rep;
}

Report cmd_tv(const RunConfig& cfg) {
  const ChainParams c = cfg.chain();
  const TailControl ctl = cfg.tail();
  const QuadratureConfig quad = cfg.quadrature();
  Report rep;
  rep.params = chain_json(c);
  rep.params["t_max"] = cfg.t_max;
  rep.params["series_tol"] = cfg.series_tol;
  rep.csv_header = {"t", "tv_exact", "tv_oracle", "tv_upper", "tv_lower", "lower_valid"};
  Json rows = Json::array();
  for (std::size_t t = 0; t <= cfg.t_max; ++t) {
    const TvExact exact = tv_exact(c, t, ctl, quad);
    const double oracle = tv_oracle(c, t);
    const double upper = tv_upper(c, t);
    const LowerBound lower = tv_lower(c, t);
    rows.push_back(Json{{"t", t},
                        {"tv_exact", exact.value},
                        {"tv_oracle", oracle},
                        {"tv_upper", upper},
                        {"tv_lower", lower.value},
                        {"lower_valid", lower.valid}});
    rep.csv_rows.push_back(
        {fmt(t), fmt(exact.value), fmt(oracle), fmt(upper), fmt(lower.value), fmt(lower.valid)});
  }
  rep.results["rows"] = std::move(rows);
  return rep;
}

Report cmd_tmix(const RunConfig& cfg) {
  const ChainParams c = cfg.chain();
  const std::size_t exact = t_mix(c, cfg.eps, MixingMethod::exact, cfg.tail(), cfg.quadrature());
  const std::size_t bound = t_mix(c, cfg.eps, MixingMethod::bound);
  Report rep;
  rep.params = chain_json(c);
  rep.params["eps"] = cfg.eps;
  rep.results["t_mix_exact"] = exact;
  rep.results["t_mix_bound"] = bound;
  rep.csv_header = {"eps", "t_mix_exact", "t_mix_bound"};
  rep.csv_rows.push_back({fmt(cfg.eps), fmt(exact), fmt(bound)});
  return rep;
}

Report cmd_kernel(const RunConfig& cfg) {
  const ChainParams c = cfg.chain();
  const double spectral = kernel_spectral(c, cfg.t, cfg.i, cfg.j, cfg.quadrature());
  const double oracle = kernel_oracle(c, cfg.t, cfg.i, cfg.j);
  Report rep;
  rep.params = chain_json(c);
  rep.params["t"] = cfg.t;
  rep.params["i"] = cfg.i;
  rep.params["j"] = cfg.j;
  rep.results["spectral"] = spectral;
  rep.results["oracle"] = oracle;
  rep.results["abs_error"] = std::abs(spectral - oracle);
  rep.csv_header = {"t", "i", "j", "spectral", "oracle", "abs_error"};
  rep.csv_rows.push_back({fmt(cfg.t), fmt(cfg.i), fmt(cfg.j), fmt(spectral), fmt(oracle),
                          fmt(std::abs(spectral - oracle))});
  return rep;
}

Report cmd_couple(const RunConfig& cfg) {
  const ChainParams c = cfg.chain();
  if (cfg.horizon == 0) throw InvalidParameter("--horizon must be at least 1");
  const SurvivalCurve curve =
      simulate_coupling(c, cfg.mode, cfg.horizon, cfg.replicas, cfg.seed, cfg.threads);

  // Fit window: [fit_lo, fit_hi] clipped to the last strictly positive point.
  std::size_t hi = cfg.fit_hi == 0 ? cfg.horizon : std::min(cfg.fit_hi, cfg.horizon);
  while (hi > 0 && curve.survival[hi] <= 0.0) --hi;
  Json fit = nullptr;
  if (hi >= cfg.fit_lo + 2) {
    const RateFit rf = rate_fit(curve, cfg.fit_lo, hi);
    fit = Json{{"t_lo", cfg.fit_lo},
               {"t_hi", hi},
               {"rate", rf.rate},
               {"std_error", rf.std_error},
               {"ci95", Json::array({rf.rate - 1.96 * rf.std_error, rf.rate + 1.96 * rf.std_error})}};
  }

  Report rep;
  rep.params = chain_json(c);
  rep.params["mode"] = to_string(cfg.mode);
  rep.params["horizon"] = cfg.horizon;
  rep.params["replicas"] = cfg.replicas;
  rep.results["fit"] = std::move(fit);
  rep.csv_header = {"t", "survival", "std_error", "tv_oracle"};
  Json rows = Json::array();
  DistributionVector mu = DistributionVector::point_mass(0);
  for (std::size_t t = 0; t <= cfg.horizon; ++t) {
    if (t > 0) mu = evolve(c, std::move(mu), 1);
    const double tv = tv_to_stationary(c, mu);
    rows.push_back(Json{{"t", t},
                        {"survival", curve.survival[t]},
                        {"std_error", curve.std_error[t]},
                        {"tv_oracle", tv}});
    rep.csv_rows.push_back(
        {fmt(t), fmt(curve.survival[t]), fmt(curve.std_error[t]), fmt(tv)});
  }
  rep.results["curve"] = std::move(rows);
  return rep;
}

struct Check {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

Report cmd_verify(const RunConfig& cfg) {
  const ChainParams c = cfg.chain();
  const QuadratureConfig quad = cfg.quadrature();
  const TailControl ctl = cfg.tail();
  const SpectralMeasure m(c);
  const ReversibilityData rev(c);
  std::vector<Check> checks;
  auto track = [](Check& chk, double err) {
    chk.max_error = std::isnan(err) ? INFINITY : std::max(chk.max_error, err);
  };

  {
    Check chk{"stationary_balance", 0.0, 1e-14};
    double partial = 0.0;
    for (std::size_t n = 0; n <= 60; ++n) {
      track(chk, std::abs(rev.detailed_balance_residual(n)) / std::max(1.0, rev.pi(n)));
      partial += rev.stationary(n);
    }
    track(chk, std::abs(partial + rev.stationary_tail(60) - 1.0));
    checks.push_back(chk);
  }
  {
    Check chk{"normalization", 0.0, 1e-10};
    const double ac =
        integrate_psi(m, [](double) { return 1.0; }, AtomSelection::none(), quad);
    track(chk, std::abs(m.unit_atom().weight + m.negative_atom().weight + ac - 1.0));
    track(chk, std::abs(ac - m.ac_mass()));
    checks.push_back(chk);
  }
  {
    Check chk{"orthogonality", 0.0, 1e-8};
    for (std::size_t a = 0; a <= 20; ++a) {
      for (std::size_t b = 0; b <= 20; ++b) {
        track(chk, std::abs(orthogonality_entry(c, a, b, quad) - (a == b ? 1.0 : 0.0)));
      }
    }
    checks.push_back(chk);
  }
  {
    Check chk{"kernel_oracle", 0.0, 1e-9};
    for (std::size_t t : {0u, 1u, 2u, 5u, 10u, 20u, 40u, 60u}) {
      for (std::size_t a = 0; a <= 12; ++a) {
        for (std::size_t b = 0; b <= 12; ++b) {
          track(chk, std::abs(kernel_spectral(c, t, a, b, quad) - kernel_oracle(c, t, a, b)));
        }
      }
    }
    checks.push_back(chk);
  }
  {
    Check tv_chk{"tv_oracle", 0.0, 1e-8};
    Check sandwich{"tv_sandwich", 0.0, 1e-12};
    for (std::size_t t = 0; t <= 100; ++t) {
      const double exact = tv_exact(c, t, ctl, quad).value;
      if (t <= 60) track(tv_chk, std::abs(exact - tv_oracle(c, t)));
      track(sandwich, std::max(0.0, exact - tv_upper(c, t)));
      const LowerBound lo = tv_lower(c, t);
      if (lo.valid) track(sandwich, std::max(0.0, lo.value - exact));
    }
    checks.push_back(tv_chk);
    checks.push_back(sandwich);
  }
  {
    Check chk{"route_equivalence", 0.0, 1e-8};
    for (std::size_t t = 0; t <= 60; t += 6) {
      const std::vector<double> interval = spectral_integrals(c, t, 20, quad);
      for (std::size_t n = 0; n <= 20; ++n) {
        const double contour = spectral_integral(c, t, n, IntegralRoute::contour);
        track(chk, std::abs(interval[n] - contour) / route_scale(c, t, n));
      }
    }
    checks.push_back(chk);
  }
  {
    Check chk{"drift_identity", 0.0, 1e-12};
    for (std::size_t x = 0; x <= 50; ++x) {
      track(chk, std::abs(drift_identity_residual(c, x)) / energy(c, x));
    }
    checks.push_back(chk);
  }
  {
    // Principal branch: Res(g, 1) = -w1 and Res(g, -alpha) = +w2.
    Check chk{"residues", 0.0, 1e-9};
    const ResidueCheck res = residue_check(c);
    track(chk, std::abs(res.at_unit + m.unit_atom().weight));
    track(chk, std::abs(res.at_negative - m.negative_atom().weight));
    checks.push_back(chk);
  }
  {
    Check chk{"hitting_cycle_lemma", 0.0, 1e-12};
    for (std::size_t n = 1; n <= 10; ++n) {
      const std::vector<double> exact = hitting_pmf_exact_series(c, n, 40);
      for (std::size_t k = n; k <= 40; ++k) {
        const double formula = hitting_pmf_paper(c, n, k);
        const double derived = static_cast<double>(k) / static_cast<double>(n) * exact[k];
        track(chk, std::abs(formula - derived) / std::max(1.0, formula));
      }
    }
    checks.push_back(chk);
  }

  Report rep;
  rep.params = chain_json(c);
  rep.csv_header = {"check", "passed", "max_error", "tolerance"};
  Json list = Json::array();
  for (const Check& chk : checks) {
    list.push_back(Json{{"name", chk.name},
                        {"passed", chk.passed()},
                        {"max_error", chk.max_error},
                        {"tolerance", chk.tolerance}});
    rep.csv_rows.push_back({chk.name, fmt(chk.passed()), fmt(chk.max_error), fmt(chk.tolerance)});
    if (!chk.passed() && rep.ok) {
      rep.ok = false;
      rep.failure = "check '" + chk.name + "' failed: max error " + fmt(chk.max_error) +
                    " exceeds " + fmt(chk.tolerance);
    }
  }
  rep.results["checks"] = std::move(list);
  rep.results["all_passed"] = rep.ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Emission.

std::string render(const Report& rep, const RunConfig& cfg) {
  if (cfg.format == Format::csv) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k > 0) out += ',';
        out += cells[k];
      }
      out += '\n';
    };
    line(rep.csv_header);
    for (const auto& row : rep.csv_rows) line(row);
    return out;
  }
  Json doc;
  doc["params"] = rep.params;
  doc["results"] = rep.results;
  doc["meta"] = Json{{"version", kVersion}, {"seed", cfg.seed}, {"quad_nodes", cfg.quad_nodes}};
  return doc.dump(2) + "\n";
}

void add_chain_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--p", cfg.p, "Up-step probability (decimal or fraction)")->required();
  sub->add_option("--q", cfg.q, "Down-step probability (decimal or fraction)")->required();
  sub->add_option("--r", cfg.r, "Holding probability; defaults to 1 - p - q");
  sub->add_option("--quad-nodes", cfg.quad_nodes, "Initial Gauss-Legendre node count")
      ->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
  sub->add_option("--output", cfg.output, "Write to this file instead of standard output");
  sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& text) {
  if (const auto exact = parse_rational(text)) return to_double(*exact);
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw InvalidParameter("cannot parse number '" + text + "'");
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral mixing-time analysis of a reflecting random walk", "kmmix"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;

  CLI::App* analyze = app.add_subcommand("analyze", "Stationary law, spectral measure, bounds");
  add_chain_options(analyze, cfg);
  analyze->add_option("--states", cfg.states, "Number of stationary weights to list")
      ->capture_default_str();

  CLI::App* tv = app.add_subcommand("tv", "Total variation distance table");
  add_chain_options(tv, cfg);
  tv->add_option("--t-max", cfg.t_max, "Last time step")->capture_default_str();
  tv->add_option("--series-tol", cfg.series_tol, "Relative series truncation tolerance")
      ->capture_default_str();

  CLI::App* tmix = app.add_subcommand("tmix", "Exact and bound-based mixing times");
  add_chain_options(tmix, cfg);
  tmix->add_option("--eps", cfg.eps, "Target distance in (0, 1)")->capture_default_str();
  tmix->add_option("--series-tol", cfg.series_tol, "Relative series truncation tolerance")
      ->capture_default_str();

  CLI::App* kernel = app.add_subcommand("kernel", "Transition probability p_t(i, j)");
  add_chain_options(kernel, cfg);
  kernel->add_option("--t", cfg.t, "Time step")->capture_default_str();
  kernel->add_option("--i", cfg.i, "Start state")->capture_default_str();
  kernel->add_option("--j", cfg.j, "End state")->capture_default_str();

  CLI::App* couple = app.add_subcommand("couple", "Monte Carlo coupling survival curve");
  add_chain_options(couple, cfg);
  couple->add_option("--mode", cfg.mode, "Coupling construction")
      ->transform(CLI::CheckedTransformer(std::map<std::string, CouplingMode>{
          {"classical", CouplingMode::classical}, {"modified", CouplingMode::modified}}))
      ->capture_default_str();
  couple->add_option("--replicas", cfg.replicas, "Number of coupled pairs")
      ->capture_default_str();
  couple->add_option("--horizon", cfg.horizon, "Last simulated step")->capture_default_str();
  couple->add_option("--fit-lo", cfg.fit_lo, "First step of the rate fit")
      ->capture_default_str();
  couple->add_option("--fit-hi", cfg.fit_hi, "Last step of the rate fit (0: horizon)")
      ->capture_default_str();
  couple->add_option("--threads", cfg.threads, "Worker threads (0: all cores)")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  add_chain_options(verify, cfg);
  verify->add_option("--series-tol", cfg.series_tol, "Relative series truncation tolerance")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Report rep;
    if (analyze->parsed()) rep = cmd_analyze(cfg);
    else if (tv->parsed()) rep = cmd_tv(cfg);
    else if (tmix->parsed()) rep = cmd_tmix(cfg);
    else if (kernel->parsed()) rep = cmd_kernel(cfg);
    else if (couple->parsed()) rep = cmd_couple(cfg);
    else rep = cmd_verify(cfg);

    const std::string text = render(rep, cfg);
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) {
        err << "error: cannot open '" << cfg.output << "' for writing\n";
        return kExitUsage;
      }
      file << text;
    }
    if (!rep.ok) {
      err << "error: " << rep.failure << '\n';
      return kExitFailure;
    }
    return kExitOk;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (last estimates " << format_double(e.previous()) << ", "
        << format_double(e.last()) << ")\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace kmmix::cli
