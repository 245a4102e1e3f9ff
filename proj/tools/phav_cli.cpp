// Command-line front end: photon-number distributions, non-Gaussianity
// measures, Wigner sections, and the standard parameter sweeps, as CSV/JSON.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phav/phav.hpp"

namespace {

/// Flag combinations that cannot be computed; reported on stderr, exit 1.
/// Library failures during computation exit 2 instead.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string timestamp_line() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string("# generated ") + buf + "\n";
}

/// Writes to --out when given, standard output otherwise. Data never goes to
/// stderr; diagnostics never go here.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw usage_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct StateFlags {
  std::string state;
  double mean = 0.0, n1 = 0.0, n2 = 0.0, eta = 1.0;
  bool has_mean = false, has_n1 = false, has_n2 = false;
};

enum class Family { phav, two_phav, thermal };

/// State after folding the quantum efficiency into the parameters (exact for
/// all three families) and collapsing a two-component state with a vanishing
/// component into a single-component one.
struct ResolvedState {
  Family family = Family::phav;
  double mean = 0.0;
  phav::TwoPhavParams tp{};

  std::string header_params() const {
    if (family == Family::two_phav)
      return "n1_detected=" + fmt17(tp.n1) + " n2_detected=" + fmt17(tp.n2);
    return "mean_detected=" + fmt17(mean);
  }
  const char* name() const {
    switch (family) {
      case Family::phav: return "phav";
      case Family::two_phav: return "two-phav";
      default: return "thermal";
    }
  }
};

ResolvedState resolve_state(const StateFlags& f) {
  ResolvedState r;
  if (f.state == "phav" || f.state == "thermal") {
    if (!f.has_mean) throw usage_error("--state " + f.state + " requires --mean");
    if (f.has_n1 || f.has_n2) throw usage_error("--n1/--n2 only apply to --state two-phav");
    r.family = f.state == "phav" ? Family::phav : Family::thermal;
    r.mean = f.eta * f.mean;
  } else if (f.state == "two-phav") {
    if (!f.has_n1 || !f.has_n2) throw usage_error("--state two-phav requires --n1 and --n2");
    if (f.has_mean) throw usage_error("--mean only applies to single-component states");
    const double n1 = f.eta * f.n1, n2 = f.eta * f.n2;
    if (n1 == 0.0 || n2 == 0.0) {
      r.family = Family::phav;  // one component: the state is a plain PHAV
      r.mean = n1 + n2;
    } else {
      r.family = Family::two_phav;
      r.tp = {n1, n2};
    }
  } else {
    throw usage_error("unknown --state '" + f.state + "' (expected phav, two-phav or thermal)");
  }
  return r;
}

phav::CutoffPolicy parse_cutoff(const std::string& text) {
  if (text == "auto") return {};
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used != text.size() || n < 0) throw std::invalid_argument(text);
    return phav::CutoffPolicy::fixed_at(n);
  } catch (const std::exception&) {
    throw usage_error("--cutoff must be 'auto' or a nonnegative integer");
  }
}

phav::PhotonDistribution build_distribution(const ResolvedState& r, const std::string& cutoff) {
  switch (r.family) {
    case Family::phav: return phav::poisson_distribution({r.mean}, parse_cutoff(cutoff));
    case Family::two_phav: return phav::two_phav_distribution(r.tp, parse_cutoff(cutoff));
    default:
      // Keep the thermal constructor's own (tighter) automatic tail target.
      if (cutoff == "auto") return phav::thermal_distribution(r.mean);
      return phav::thermal_distribution(r.mean, parse_cutoff(cutoff));
  }
}

void add_state_flags(CLI::App* cmd, StateFlags& f) {
  cmd->add_option("--state", f.state, "state family: phav, two-phav or thermal")->required();
  cmd->add_option("--mean", f.mean, "mean photon number (phav, thermal)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--n1", f.n1, "first component mean (two-phav)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--n2", f.n2, "second component mean (two-phav)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--eta", f.eta, "detection efficiency, folded into the parameters")
      ->check(CLI::Range(0.0, 1.0));
}

std::vector<double> parse_grid(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' || sep2 != ':' || !in.eof())
    throw usage_error("--grid must look like start:stop:step");
  if (!(step > 0.0) || stop < start) throw usage_error("--grid needs step > 0 and stop >= start");
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  for (int i = 0; i <= n; ++i) grid.push_back(start + i * step);
  return grid;
}

// ---------------------------------------------------------------------------

struct DistOptions {
  StateFlags state;
  std::string cutoff = "auto";
  std::string out;
  bool no_timestamp = false;
};

int cmd_dist(const DistOptions& opt) {
  const auto resolved = resolve_state(opt.state);
  const auto dist = build_distribution(resolved, opt.cutoff);

  OutputSink sink(opt.out);
  auto& os = sink.stream();
  if (!opt.no_timestamp) os << timestamp_line();
  os << "# dist state=" << resolved.name() << ' ' << resolved.header_params() << " cutoff=" << opt.cutoff
     << " n_max=" << dist.n_max() << " tail_bound=" << fmt17(dist.tail_bound) << "\n";
  os << "n,p\n";
  for (std::size_t n = 0; n < dist.probs.size(); ++n) os << n << ',' << fmt17(dist.probs[n]) << "\n";
  return 0;
}

struct MeasureOptions {
  StateFlags state;
  std::string cutoff = "auto";
  std::string out;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  int resamples = 500;
  bool has_shots = false;
};

int cmd_measure(const MeasureOptions& opt) {
  if (opt.has_shots && opt.shots == 0) throw usage_error("--shots must be at least 1");
  if (opt.resamples < 100) throw usage_error("--resamples must be at least 100");
  const auto resolved = resolve_state(opt.state);
  const auto dist = build_distribution(resolved, opt.cutoff);

  nlohmann::ordered_json doc;
  doc["state"] = resolved.name();
  if (resolved.family == Family::two_phav) {
    doc["n1_detected"] = resolved.tp.n1;
    doc["n2_detected"] = resolved.tp.n2;
  } else {
    doc["mean_detected"] = resolved.mean;
  }

  if (!opt.has_shots) {
    const auto [a, b] = phav::epsilon_pair(dist);
    doc["epsilon_a"] = a.value;
    doc["epsilon_b"] = b.value;
    doc["reference_mean"] = a.reference_mean;
  } else {
    const auto hist = phav::sample_counts(dist, opt.shots, {opt.seed});
    const auto [a, b] = phav::bootstrap_epsilon(hist, opt.resamples, {opt.seed + 1});
    doc["epsilon_a"] = a.value;
    doc["epsilon_b"] = b.value;
    doc["reference_mean"] = a.reference_mean;
    doc["stderr_a"] = *a.std_err;
    doc["stderr_b"] = *b.std_err;
    doc["shots"] = opt.shots;
    doc["resamples"] = opt.resamples;
    doc["seed"] = opt.seed;
    doc["rng"] = phav::kRngName;
  }

  OutputSink sink(opt.out);
  sink.stream() << doc.dump(2) << "\n";
  return 0;
}

struct WignerOptions {
  StateFlags state;
  std::string method = "closed";
  std::string cutoff = "auto";
  std::string out;
  double rmax = -1.0;
  int steps = 121;
  double xi = 1.0, xi_p = 1.0, xi_s = 1.0;
  bool has_xi = false, has_xi_p = false, has_xi_s = false;
  bool no_timestamp = false;
};

int cmd_wigner(const WignerOptions& opt) {
  const auto resolved = resolve_state(opt.state);
  if (resolved.family == Family::thermal)
    throw usage_error("wigner supports --state phav and two-phav only");
  if (opt.method != "closed" && opt.method != "quadrature" && opt.method != "parity")
    throw usage_error("--method must be closed, quadrature or parity");

  const bool degraded = opt.has_xi || opt.has_xi_p || opt.has_xi_s;
  if (degraded && opt.method != "closed")
    throw usage_error("overlap parameters apply to --method closed only");
  if (resolved.family == Family::phav && (opt.has_xi_p || opt.has_xi_s))
    throw usage_error("--xi-p/--xi-s apply to two-phav; use --xi for phav");
  if (resolved.family == Family::two_phav && opt.has_xi)
    throw usage_error("--xi applies to phav; use --xi-p/--xi-s for two-phav");
  if (opt.steps < 2 && !(opt.rmax == 0.0)) throw usage_error("--steps must be at least 2");

  const double span = resolved.family == Family::phav ? std::sqrt(resolved.mean)
                                                      : std::sqrt(resolved.tp.n1) + std::sqrt(resolved.tp.n2);
  const double rmax = opt.rmax < 0.0 ? span + 4.0 : opt.rmax;
  const auto policy = parse_cutoff(opt.cutoff);
  const phav::OverlapParams overlaps{opt.xi, opt.xi_p, opt.xi_s};

  auto value_at = [&](double r) -> double {
    if (resolved.family == Family::phav) {
      const phav::PhavParams ph{resolved.mean};
      if (degraded) return phav::wigner_phav_degraded(r, ph, overlaps).value;
      if (opt.method == "closed") return phav::wigner_phav(r, ph).value;
      if (opt.method == "quadrature") return phav::wigner_phav_by_quadrature(r, ph).value;
      return phav::wigner_from_distribution(phav::displaced_phav_distribution(ph, r * r, policy));
    }
    if (degraded) return phav::wigner_two_phav_degraded(r, resolved.tp, overlaps).value;
    if (opt.method == "closed") return phav::wigner_two_phav(r, resolved.tp).value;
    if (opt.method == "quadrature") return phav::wigner_two_phav_by_quadrature(r, resolved.tp).value;
    return phav::wigner_from_distribution(phav::displaced_two_phav_distribution(resolved.tp, r * r, policy));
  };

  std::vector<std::pair<double, double>> rows;
  if (rmax == 0.0) {
    rows.emplace_back(0.0, value_at(0.0));
  } else {
    for (int i = 0; i < opt.steps; ++i) {
      const double r = rmax * i / (opt.steps - 1);
      rows.emplace_back(r, value_at(r));
    }
  }

  OutputSink sink(opt.out);
  auto& os = sink.stream();
  if (!opt.no_timestamp) os << timestamp_line();
  os << "# wigner state=" << resolved.name() << ' ' << resolved.header_params()
     << " method=" << opt.method << " rmax=" << fmt17(rmax) << " steps=" << rows.size();
  if (opt.has_xi) os << " xi=" << fmt17(opt.xi);
  if (opt.has_xi_p) os << " xi_p=" << fmt17(opt.xi_p);
  if (opt.has_xi_s) os << " xi_s=" << fmt17(opt.xi_s);
  os << "\n";
  os << "r,w\n";
  for (const auto& [r, w] : rows) os << fmt17(r) << ',' << fmt17(w) << "\n";
  return 0;
}

struct SweepOptions {
  std::string family;
  double fixed = 0.0;
  bool has_fixed = false;
  std::string grid;
  std::string convention = "geq1";
  double eta = 1.0;
  std::string out;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  int resamples = 200;
  bool has_shots = false;
  bool no_timestamp = false;
};

int cmd_sweep(const SweepOptions& opt) {
  phav::SweepSpec spec;
  if (opt.family == "phav") {
    spec.family = phav::SweepFamily::phav;
    if (opt.has_fixed) throw usage_error("--fixed does not apply to --family phav");
  } else if (opt.family == "ratio-fixed") {
    spec.family = phav::SweepFamily::two_phav_fixed_ratio;
    if (!opt.has_fixed) throw usage_error("--family ratio-fixed requires --fixed");
    if (opt.convention == "geq1" && opt.fixed < 1.0)
      throw usage_error("--fixed below 1 contradicts --ratio-convention geq1");
    if (opt.convention == "leq1" && opt.fixed > 1.0)
      throw usage_error("--fixed above 1 contradicts --ratio-convention leq1");
    spec.fixed_value = opt.fixed;
  } else if (opt.family == "total-fixed") {
    spec.family = phav::SweepFamily::two_phav_fixed_total;
    if (!opt.has_fixed) throw usage_error("--family total-fixed requires --fixed");
    spec.fixed_value = opt.fixed;
  } else {
    throw usage_error("--family must be phav, ratio-fixed or total-fixed");
  }
  if (opt.convention != "geq1" && opt.convention != "leq1")
    throw usage_error("--ratio-convention must be geq1 or leq1");
  if (opt.has_shots && opt.shots == 0) throw usage_error("--shots must be at least 1");
  if (opt.resamples < 100) throw usage_error("--resamples must be at least 100");
  spec.grid = parse_grid(opt.grid);
  spec.efficiency = opt.eta;

  auto rows = phav::run_sweep(spec);
  if (opt.has_shots) {
    phav::SplitMix64 seeder(opt.seed);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto hist = phav::sample_counts(phav::sweep_distribution(spec, spec.grid[i]), opt.shots,
                                            phav::RngSeed{seeder()});
      const auto [a, b] = phav::bootstrap_epsilon(hist, opt.resamples, phav::RngSeed{seeder()});
      rows[i].epsilon_a = a.value;
      rows[i].epsilon_b = b.value;
      rows[i].stderr_a = a.std_err;
      rows[i].stderr_b = b.std_err;
    }
  }

  OutputSink sink(opt.out);
  auto& os = sink.stream();
  if (!opt.no_timestamp) os << timestamp_line();
  os << "# sweep family=" << opt.family;
  if (opt.has_fixed) os << " fixed=" << fmt17(opt.fixed);
  os << " eta=" << fmt17(opt.eta) << " ratio_convention=" << opt.convention;
  if (opt.has_shots)
    os << " shots=" << opt.shots << " resamples=" << opt.resamples << " seed=" << opt.seed
       << " rng=" << phav::kRngName;
  os << "\n";
  os << (opt.has_shots ? "swept_value,epsilon_a,epsilon_b,stderr_a,stderr_b\n"
                       : "swept_value,epsilon_a,epsilon_b\n");
  for (const auto& row : rows) {
    os << fmt17(row.swept_value) << ',' << fmt17(row.epsilon_a) << ',' << fmt17(row.epsilon_b);
    if (opt.has_shots) os << ',' << fmt17(*row.stderr_a) << ',' << fmt17(*row.stderr_b);
    os << "\n";
  }
  return 0;
}

int cmd_figure4(const std::string& out, bool no_timestamp) {
  const auto rows = phav::figure4_rows();
  OutputSink sink(out);
  auto& os = sink.stream();
  if (!no_timestamp) os << timestamp_line();
  os << "# figure4 curves=7\n";
  os << "family,fixed_param,swept_value,epsilon_a,epsilon_b\n";
  for (const auto& row : rows) {
    os << row.family << ',';
    if (row.fixed_param) os << fmt17(*row.fixed_param);
    os << ',' << fmt17(row.swept_value) << ',' << fmt17(row.epsilon_a) << ',' << fmt17(row.epsilon_b)
       << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-averaged coherent states: distributions, non-Gaussianity, Wigner sections"};
  app.require_subcommand(1);

  DistOptions dist_opt;
  auto* dist = app.add_subcommand("dist", "photon-number distribution as CSV");
  add_state_flags(dist, dist_opt.state);
  dist->add_option("--cutoff", dist_opt.cutoff, "auto or an explicit n_max");
  dist->add_option("--out", dist_opt.out, "output path (default: stdout)");
  dist->add_flag("--no-timestamp", dist_opt.no_timestamp, "omit the generation timestamp line");

  MeasureOptions measure_opt;
  auto* measure = app.add_subcommand("measure", "non-Gaussianity measures as JSON");
  add_state_flags(measure, measure_opt.state);
  measure->add_option("--cutoff", measure_opt.cutoff, "auto or an explicit n_max");
  measure->add_option("--out", measure_opt.out, "output path (default: stdout)");
  measure->add_option("--shots", measure_opt.shots, "simulate counting statistics with this many shots");
  measure->add_option("--seed", measure_opt.seed, "sampling seed (with --shots)");
  measure->add_option("--resamples", measure_opt.resamples, "bootstrap resamples (with --shots)");

  WignerOptions wigner_opt;
  auto* wigner = app.add_subcommand("wigner", "radial Wigner section as CSV");
  add_state_flags(wigner, wigner_opt.state);
  wigner->add_option("--method", wigner_opt.method, "closed, quadrature or parity");
  wigner->add_option("--rmax", wigner_opt.rmax, "largest radial coordinate (0: single point at the origin)")
      ->check(CLI::NonNegativeNumber);
  wigner->add_option("--steps", wigner_opt.steps, "number of radial grid points");
  wigner->add_option("--xi", wigner_opt.xi, "overlap for the degraded phav model")->check(CLI::Range(0.0, 1.0));
  wigner->add_option("--xi-p", wigner_opt.xi_p, "probe overlap for the degraded two-phav model")
      ->check(CLI::Range(0.0, 1.0));
  wigner->add_option("--xi-s", wigner_opt.xi_s, "component overlap for the degraded two-phav model")
      ->check(CLI::Range(0.0, 1.0));
  wigner->add_option("--cutoff", wigner_opt.cutoff, "auto or an explicit n_max (parity method)");
  wigner->add_option("--out", wigner_opt.out, "output path (default: stdout)");
  wigner->add_flag("--no-timestamp", wigner_opt.no_timestamp, "omit the generation timestamp line");

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "epsilon measures over a parameter grid as CSV");
  sweep->add_option("--family", sweep_opt.family, "phav, ratio-fixed or total-fixed")->required();
  sweep->add_option("--fixed", sweep_opt.fixed, "held parameter: ratio or total mean");
  sweep->add_option("--grid", sweep_opt.grid, "swept values as start:stop:step")->required();
  sweep->add_option("--ratio-convention", sweep_opt.convention, "geq1 (max/min) or leq1 (min/max)");
  sweep->add_option("--eta", sweep_opt.eta, "detection efficiency")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--out", sweep_opt.out, "output path (default: stdout)");
  sweep->add_option("--shots", sweep_opt.shots, "add bootstrap error bars from this many shots per point");
  sweep->add_option("--seed", sweep_opt.seed, "sampling seed (with --shots)");
  sweep->add_option("--resamples", sweep_opt.resamples, "bootstrap resamples (with --shots)");
  sweep->add_flag("--no-timestamp", sweep_opt.no_timestamp, "omit the generation timestamp line");

  std::string figure4_out;
  bool figure4_no_ts = false;
  auto* figure4 = app.add_subcommand("figure4", "the seven standard measure-vs-measure curves as CSV");
  figure4->add_option("--out", figure4_out, "output path (default: stdout)");
  figure4->add_flag("--no-timestamp", figure4_no_ts, "omit the generation timestamp line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  dist_opt.state.has_mean = dist->count("--mean") > 0;
  dist_opt.state.has_n1 = dist->count("--n1") > 0;
  dist_opt.state.has_n2 = dist->count("--n2") > 0;
  measure_opt.state.has_mean = measure->count("--mean") > 0;
  measure_opt.state.has_n1 = measure->count("--n1") > 0;
  measure_opt.state.has_n2 = measure->count("--n2") > 0;
  measure_opt.has_shots = measure->count("--shots") > 0;
  wigner_opt.state.has_mean = wigner->count("--mean") > 0;
  wigner_opt.state.has_n1 = wigner->count("--n1") > 0;
  wigner_opt.state.has_n2 = wigner->count("--n2") > 0;
  wigner_opt.has_xi = wigner->count("--xi") > 0;
  wigner_opt.has_xi_p = wigner->count("--xi-p") > 0;
  wigner_opt.has_xi_s = wigner->count("--xi-s") > 0;
  sweep_opt.has_fixed = sweep->count("--fixed") > 0;
  sweep_opt.has_shots = sweep->count("--shots") > 0;

  try {
    if (dist->parsed()) return cmd_dist(dist_opt);
    if (measure->parsed()) return cmd_measure(measure_opt);
    if (wigner->parsed()) return cmd_wigner(wigner_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt);
    if (figure4->parsed()) return cmd_figure4(figure4_out, figure4_no_ts);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
