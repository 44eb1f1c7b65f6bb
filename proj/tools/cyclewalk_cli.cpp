// Command-line front end: simulation, rates, localization, band data, limit
// densities, and the release verification suite.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cyclewalk/arc_graph.hpp"
#include "cyclewalk/density.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/homology.hpp"
#include "cyclewalk/presets.hpp"
#include "cyclewalk/spectral.hpp"
#include "cyclewalk/state_io.hpp"
#include "cyclewalk/verify.hpp"

namespace {

using namespace cyclewalk;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// "-" targets stdout.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw io_error("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fd(double v) { return format_double(v); }

GraphKind parse_kind(const std::string& g) {
  if (g == "tilde-c4") return GraphKind::TildeC4;
  if (g == "c4-prime") return GraphKind::C4Prime;
  throw std::invalid_argument("unknown graph '" + g + "' (tilde-c4 or c4-prime)");
}

bool is_ensemble(const std::string& initial) { return initial == "uniform"; }

// What the initial-state argument implies when --graph is not given.
GraphKind default_kind(const std::string& initial) {
  if (initial == "case-i" || initial == "case-ii") return GraphKind::TildeC4;
  if (is_preset(initial) || is_ensemble(initial)) return GraphKind::C4Prime;
  return peek_state_header(initial).kind;  // a state file
}

std::int32_t file_radius_or_zero(const std::string& initial) {
  if (is_preset(initial) || is_ensemble(initial)) return 0;
  return peek_state_header(initial).radius;
}

// The members of the initial condition: one state, or the ten-coin ensemble.
struct Member {
  std::string label;
  WalkState state;
};

std::vector<Member> resolve_states(const ArcSpace& space, const std::string& initial) {
  std::vector<Member> out;
  if (is_ensemble(initial)) {
    for (int c = 0; c < 10; ++c) {
      CoinAmplitudes a;
      a[c] = 1.0;
      out.push_back({"coin-" + std::to_string(c), make_coin_state(space, a)});
    }
  } else if (is_preset(initial)) {
    out.push_back({initial, make_coin_state(space, preset_amplitudes(initial))});
  } else {
    out.push_back({initial, read_state(initial, space).state});
  }
  return out;
}

ArcSpace build_window(GraphKind kind, std::int32_t radius) {
  if (kind == GraphKind::TildeC4 && radius < 1) radius = 1;
  if (radius < 0) radius = 0;
  return ArcSpace::build(kind, radius);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string initial;
  std::string graph;
  std::int64_t t_max = 100;
  std::int32_t radius = -1;
  std::string out = "-";
  std::string summary = "-";
};

void run_simulate(const SimulateArgs& a) {
  const GraphKind kind = a.graph.empty() ? default_kind(a.initial) : parse_kind(a.graph);
  const std::int32_t radius =
      a.radius >= 0 ? a.radius
                    : file_radius_or_zero(a.initial) + static_cast<std::int32_t>(a.t_max) + 2;
  const ArcSpace space = build_window(kind, radius);
  std::vector<Member> members = resolve_states(space, a.initial);

  // Ensemble means are taken at the probability level, per step.
  std::vector<PositionDistribution> mean;
  double norm_drift = 0.0;
  for (Member& m : members) {
    Evolution ev(space);
    RunResult rr = run(ev, std::move(m.state), a.t_max);
    norm_drift = std::max(norm_drift, rr.max_norm_drift);
    if (mean.empty()) {
      mean = std::move(rr.dists);
      if (members.size() > 1)
        for (auto& d : mean)
          for (double& p : d.prob) p /= static_cast<double>(members.size());
    } else {
      for (std::size_t t = 0; t < mean.size(); ++t) {
        const PositionDistribution& d = rr.dists[t];
        PositionDistribution& acc = mean[t];
        const std::int32_t lo = std::min(acc.min_pos, d.min_pos);
        const std::int32_t hi = std::max(acc.max_pos(), d.max_pos());
        PositionDistribution merged;
        merged.t = acc.t;
        merged.min_pos = lo;
        merged.prob.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
        for (std::int32_t j = lo; j <= hi; ++j)
          merged.prob[static_cast<std::size_t>(j - lo)] =
              acc.at(j) + d.at(j) / static_cast<double>(members.size());
        acc = std::move(merged);
      }
    }
  }

  std::int32_t max_support = 0;
  {
    OutStream os(a.out);
    os.get() << "t,j,prob\n";
    for (const PositionDistribution& d : mean) {
      max_support = std::max(max_support, d.support_radius());
      for (std::size_t i = 0; i < d.prob.size(); ++i) {
        if (d.prob[i] <= 0.0) continue;
        os.get() << d.t << ',' << d.min_pos + static_cast<std::int32_t>(i) << ',' << fd(d.prob[i])
                 << '\n';
      }
    }
  }

  const PositionDistribution& last = mean.back();
  OutStream os(a.summary);
  os.get() << "{\n"
           << "  \"graph\": \"" << space.kind_name() << "\",\n"
           << "  \"radius\": " << space.radius() << ",\n"
           << "  \"t_max\": " << a.t_max << ",\n"
           << "  \"initial\": \"" << a.initial << "\",\n"
           << "  \"norm_drift\": " << fd(norm_drift) << ",\n"
           << "  \"max_support_radius\": " << max_support << ",\n"
           << "  \"final_mean\": " << fd(last.mean()) << ",\n"
           << "  \"final_scaled_m2\": " << fd(last.scaled_moment(2)) << "\n"
           << "}\n";
}

// ------------------------------------------------------------------- rates

struct RatesArgs {
  std::string initial;
  std::int64_t t_max = 200;
  std::int32_t radius = -1;
  double tol = 1e-10;
  std::string out = "-";
};

void run_rates(const RatesArgs& a) {
  const GraphKind kind = default_kind(a.initial);
  if (kind != GraphKind::TildeC4)
    throw std::invalid_argument("rates are defined on the tailed graph (tilde-c4)");
  const std::int32_t radius =
      a.radius >= 0 ? a.radius
                    : file_radius_or_zero(a.initial) + static_cast<std::int32_t>(a.t_max) + 10;
  const ArcSpace space = build_window(kind, radius);
  std::vector<Member> members = resolve_states(space, a.initial);
  if (members.size() != 1) throw std::invalid_argument("rates need a single initial state");

  Evolution ev(space);
  const ScatteringRates r = scattering_rates(ev, std::move(members.front().state), a.t_max, a.tol);
  OutStream os(a.out);
  os.get() << "quantity,value\n"
           << "reflected," << fd(r.reflected) << '\n'
           << "trapped," << fd(r.trapped) << '\n'
           << "transmitted," << fd(r.transmitted) << '\n'
           << "t_used," << r.t_used << '\n';
}

// ---------------------------------------------------------------- localize

struct LocalizeArgs {
  std::string initial;
  std::string graph;
  std::int32_t radius = -1;
  std::string out = "-";
  double tol = 1e-12;
};

void run_localize(const LocalizeArgs& a) {
  const GraphKind kind = a.graph.empty() ? default_kind(a.initial) : parse_kind(a.graph);
  const std::int32_t radius = a.radius >= 0 ? a.radius : std::max(file_radius_or_zero(a.initial),
                                                                  kind == GraphKind::C4Prime ? 2 : 1);
  const ArcSpace space = build_window(kind, radius);
  std::vector<Member> members = resolve_states(space, a.initial);

  // Ensemble: average the projection weights over the members.
  std::vector<EtaOverlap> acc;
  double delta = 0.0;
  for (Member& m : members) {
    const HomologyReport rep = homological_projection(m.state);
    delta += rep.delta / static_cast<double>(members.size());
    if (acc.empty()) {
      acc = rep.overlaps;
      for (EtaOverlap& o : acc) o.weight /= static_cast<double>(members.size());
    } else {
      for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i].weight += rep.overlaps[i].weight / static_cast<double>(members.size());
    }
  }

  OutStream os(a.out);
  os.get() << "{\n  \"initial\": \"" << a.initial << "\",\n  \"delta\": " << fd(delta)
           << ",\n  \"localized\": " << (delta > a.tol ? "true" : "false")
           << ",\n  \"overlaps\": [";
  bool first = true;
  for (const EtaOverlap& o : acc) {
    if (o.weight <= 1e-15) continue;
    os.get() << (first ? "" : ",") << "\n    {\"m\": " << o.m << ", \"cell\": " << o.cell
             << ", \"weight\": " << fd(o.weight) << "}";
    first = false;
  }
  os.get() << (first ? "]" : "\n  ]") << "\n}\n";
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  int grid = 4096;
  std::string out = "-";
};

void run_spectrum(const SpectrumArgs& a) {
  if (a.grid < 2) throw std::invalid_argument("--grid must be at least 2");
  OutStream os(a.out);
  os.get() << "k,j,l,lambda,nu_re,nu_im,x,dxdk\n";
  for (int i = 0; i < a.grid; ++i) {
    const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / a.grid;
    for (int j = 0; j < 3; ++j) {
      const double lam = band_lambda(j, k);
      for (int l = 0; l < 2; ++l) {
        const cplx nu = spectral_map(lam, l);
        os.get() << fd(k) << ',' << j << ',' << l << ',' << fd(lam) << ',' << fd(nu.real()) << ','
                 << fd(nu.imag()) << ',' << fd(velocity(j, l, k)) << ','
                 << fd(velocity_derivative(j, l, k)) << '\n';
      }
    }
  }
}

// ----------------------------------------------------------------- density

struct DensityArgs {
  std::string initial = "uniform";
  int grid = 16384;
  std::string out = "-";
  std::string summary = "-";
  std::string cdf_at;
  std::string moments;
};

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

void run_density(const DensityArgs& a) {
  LimitLaw law = [&] {
    if (is_ensemble(a.initial)) return uniform_limit_law(a.grid);
    const GraphKind kind = default_kind(a.initial);
    if (kind != GraphKind::C4Prime && !is_preset(a.initial))
      throw std::invalid_argument("limit densities require a chain (c4-prime) state");
    const std::int32_t radius = std::max<std::int32_t>(file_radius_or_zero(a.initial), 1);
    const ArcSpace space = build_window(GraphKind::C4Prime, radius);
    std::vector<Member> members = resolve_states(space, a.initial);
    return weak_limit(members.front().state, a.grid);
  }();

  {
    OutStream os(a.out);
    os.get() << "branch,k,x,rho\n";
    for (const DensityCurve& c : law.curves())
      for (std::size_t i = 0; i < c.k.size(); ++i)
        os.get() << c.branch << ',' << fd(c.k[i]) << ',' << fd(c.x[i]) << ',' << fd(c.rho[i])
                 << '\n';
  }

  OutStream os(a.summary);
  os.get() << "{\n  \"initial\": \"" << a.initial << "\",\n  \"delta\": " << fd(law.delta())
           << ",\n  \"mass_error\": " << fd(law.mass_error()) << ",\n  \"grid\": " << law.grid();
  if (!a.cdf_at.empty()) {
    os.get() << ",\n  \"cdf\": [";
    bool first = true;
    for (double x : parse_doubles(a.cdf_at)) {
      os.get() << (first ? "" : ",") << "\n    {\"x\": " << fd(x) << ", \"F\": " << fd(law.cdf(x))
               << "}";
      first = false;
    }
    os.get() << "\n  ]";
  }
  if (!a.moments.empty()) {
    os.get() << ",\n  \"moments\": [";
    bool first = true;
    for (double rd : parse_doubles(a.moments)) {
      const int r = static_cast<int>(rd);
      os.get() << (first ? "" : ",") << "\n    {\"r\": " << r
               << ", \"value\": " << fd(law.moment(r)) << "}";
      first = false;
    }
    os.get() << "\n  ]";
  }
  os.get() << "\n}\n";
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::vector<std::string> only;
  std::uint64_t seed = 20240817;
  std::string report;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opts;
  opts.only = a.only;
  opts.seed = a.seed;
  const std::vector<CriterionResult> results = run_acceptance(opts);
  if (results.empty()) {
    std::cerr << "no criteria matched the --only filter\n";
    return kExitUsage;
  }
  // Timing goes to stderr: stdout and the report must be byte-reproducible.
  bool all = true;
  for (const CriterionResult& c : results) {
    all = all && c.pass;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name << "  " << c.details
              << '\n';
    std::cerr << "# " << c.id << ' ' << c.name << ": " << fd(c.seconds) << "s\n";
  }
  if (!a.report.empty()) {
    OutStream os(a.report);
    os.get() << "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const CriterionResult& c = results[i];
      os.get() << "  {\"id\": " << c.id << ", \"name\": \"" << c.name
               << "\", \"pass\": " << (c.pass ? "true" : "false")
               << ", \"measured\": " << fd(c.measured) << ", \"threshold\": " << fd(c.threshold)
               << ", \"details\": \"" << c.details << "\"}"
               << (i + 1 < results.size() ? "," : "") << '\n';
    }
    os.get() << "]\n";
  }
  return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover walk on the looped and chained 4-cycle: simulation and spectra"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  SimulateArgs sim;
  CLI::App* s = app.add_subcommand("simulate", "step the walk and emit position distributions");
  s->add_option("--initial", sim.initial, "preset name, 'uniform', or a state file")->required();
  s->add_option("--graph", sim.graph, "tilde-c4 or c4-prime (default: implied by the initial)");
  s->add_option("--t-max", sim.t_max, "number of steps")->check(CLI::NonNegativeNumber);
  s->add_option("--radius", sim.radius, "window radius (default: sized so nothing escapes)");
  s->add_option("--out", sim.out, "distribution CSV path or - for stdout");
  s->add_option("--summary", sim.summary, "summary JSON path or - for stdout");
  s->callback([&] { run_simulate(sim); });

  RatesArgs rates;
  CLI::App* rt = app.add_subcommand("rates", "asymptotic reflection/trapping/transmission split");
  rt->add_option("--initial", rates.initial, "preset name or a tilde-c4 state file")->required();
  rt->add_option("--t-max", rates.t_max, "step cap")->check(CLI::PositiveNumber);
  rt->add_option("--radius", rates.radius, "window radius (default: t-max + 10)");
  rt->add_option("--tol", rates.tol, "period-to-period convergence tolerance");
  rt->add_option("--out", rates.out, "CSV path or - for stdout");
  rt->callback([&] { run_rates(rates); });

  LocalizeArgs loc;
  CLI::App* lc = app.add_subcommand("localize", "trapped-space projection and verdict");
  lc->add_option("--initial", loc.initial, "preset name, 'uniform', or a state file")->required();
  lc->add_option("--graph", loc.graph, "tilde-c4 or c4-prime");
  lc->add_option("--radius", loc.radius, "window radius");
  lc->add_option("--tol", loc.tol, "threshold on the trapped probability");
  lc->add_option("--out", loc.out, "JSON path or - for stdout");
  lc->callback([&] { run_localize(loc); });

  SpectrumArgs spec;
  CLI::App* sp = app.add_subcommand("spectrum", "band table: eigenvalues, velocities, derivatives");
  sp->add_option("--grid", spec.grid, "number of momentum samples");
  sp->add_option("--out", spec.out, "CSV path or - for stdout");
  sp->callback([&] { run_spectrum(spec); });

  DensityArgs dens;
  CLI::App* dn = app.add_subcommand("density", "weak-limit curves, CDF and moments");
  dn->add_option("--initial", dens.initial, "preset name, 'uniform', or a chain state file");
  dn->add_option("--grid", dens.grid, "momentum quadrature size");
  dn->add_option("--out", dens.out, "curve CSV path or - for stdout");
  dn->add_option("--summary", dens.summary, "summary JSON path or - for stdout");
  dn->add_option("--cdf-at", dens.cdf_at, "comma-separated x values to evaluate the CDF at");
  dn->add_option("--moments", dens.moments, "comma-separated moment orders to evaluate");
  dn->callback([&] { run_density(dens); });

  VerifyArgs ver;
  CLI::App* vf = app.add_subcommand("verify", "run the release checks");
  vf->add_option("--only", ver.only, "run only criteria whose name contains this substring");
  vf->add_option("--seed", ver.seed, "seed for the randomized ensembles");
  vf->add_option("--report", ver.report, "also write a JSON report to this path");
  vf->callback([&] { exit_code = run_verify(ver); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const window_overflow_error& e) {
    std::cerr << "window overflow at step " << e.step() << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return exit_code;
}
