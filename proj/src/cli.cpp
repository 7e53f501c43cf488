#include "qres/cli.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qres/errors.hpp"
#include "qres/metrology.hpp"
#include "qres/oscillator.hpp"
#include "qres/probe.hpp"
#include "qres/simulate.hpp"

namespace qres::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultEnergy = 1.0 / 3.0;
constexpr int kProbeRows = 2001;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw IoError("failed writing '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Probe flags shared by several subcommands: exactly one of --energy/--gamma,
// with <H> = 1/3 when neither is given.
struct ProbeFlags {
  std::optional<double> energy;
  std::optional<double> gamma;

  void attach(CLI::App* cmd) {
    auto* e = cmd->add_option("--energy", energy, "Mean probe energy <H> (default 1/3)");
    auto* g = cmd->add_option("--gamma", gamma, "Probe width gamma (instead of --energy)");
    e->excludes(g);
  }

  ProbeSpec resolve(int alpha) const {
    if (gamma) return ProbeSpec(alpha, *gamma);
    return ProbeSpec::for_energy(alpha, energy.value_or(kDefaultEnergy));
  }

  // The requested energy itself, avoiding a gamma round trip when given.
  double energy_of(const ProbeSpec& spec) const {
    return gamma ? mean_energy(spec) : energy.value_or(kDefaultEnergy);
  }
};

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("QRES_SEED"); env != nullptr && *env != '\0') {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0' || *env == '-') {
      throw UsageError(std::string("QRES_SEED is not an unsigned integer: ") + env);
    }
    return v;
  }
  return 42;
}

SamplingMode parse_sampling(const std::string& s) {
  if (s == "exact") return SamplingMode::exact;
  if (s == "uniform") return SamplingMode::uniform;
  throw UsageError("--sampling must be 'exact' or 'uniform'");
}

// ---------------------------------------------------------------- probe

struct ProbeCommand {
  std::vector<int> alphas{2, 10, 20};
  ProbeFlags probe;
  std::string stem = "probe";
  int points = kProbeRows;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alphas, "Even shape exponents, comma separated")->delimiter(',');
    probe.attach(cmd);
    cmd->add_option("-o,--output", stem, "Output stem; writes <stem>_alpha<k>.csv");
    cmd->add_option("--points", points, "Rows per file")->check(CLI::Range(3, 1000001));
  }

  void execute(std::ostream& out) const {
    for (int alpha : alphas) {
      const ProbeSpec spec = probe.resolve(alpha);
      const double w = window_half_width(spec);
      std::string csv = "p,density\n";
      for (int i = 0; i < points; ++i) {
        const double p = -w + 2.0 * w * i / (points - 1);
        csv += fmt17(p) + "," + fmt17(density(spec, p)) + "\n";
      }
      const std::string path = stem + "_alpha" + std::to_string(alpha) + ".csv";
      emit(path, csv, out);
      out << path << "\n";
    }
  }
};

// ---------------------------------------------------------------- bounds

struct BoundsCommand {
  int alpha = 20;
  ProbeFlags probe;
  long n = 50;
  std::string format = "json";
  std::string output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Even shape exponent");
    probe.attach(cmd);
    cmd->add_option("--n", n, "Repetitions N");
    cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("-o,--output", output);
  }

  void execute(std::ostream& out) const {
    const ProbeSpec spec = probe.resolve(alpha);
    BoundReport r = probe.gamma ? bound_report(spec, n)
                                : bound_report(alpha, probe.energy_of(spec), n);
    const RepetitionsEstimate nb = repetitions_required(alpha);

    Json j;
    j["alpha"] = r.alpha;
    j["gamma"] = r.gamma;
    j["mean_energy"] = r.mean_energy;
    j["repetitions"] = r.repetitions;
    j["fisher"] = r.fisher;
    j["quantum_fisher"] = r.quantum_fisher;
    j["crb"] = r.crb;
    j["energy_bound"] = r.energy_bound;
    j["approx_bound"] = r.approx_bound;
    j["error_prop_bound"] = r.error_prop_bound;
    j["n_required"] = r.n_required;
    j["n_required_quadrature"] = nb.quadrature ? Json(*nb.quadrature) : Json(nullptr);
    j["n_required_large_alpha"] = 2.0 * alpha;
    j["uncertainty_product"] = r.uncertainty_product;

    if (format == "json") {
      emit(output, dump(j), out);
      return;
    }
    std::string header;
    std::string row;
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) {
        header += ",";
        row += ",";
      }
      first = false;
      header += key;
      if (value.is_number_float()) {
        row += fmt17(value.get<double>());
      } else if (!value.is_null()) {
        row += value.dump();
      }
    }
    emit(output, header + "\n" + row + "\n", out);
  }
};

// ---------------------------------------------------------------- sweep

struct SweepCommand {
  int alpha_min = 2;
  int alpha_max = 100;
  std::string output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha-min", alpha_min, "Smallest even alpha");
    cmd->add_option("--alpha-max", alpha_max, "Largest even alpha");
    cmd->add_option("-o,--output", output);
  }

  void execute(std::ostream& out) const {
    validate_alpha(alpha_min);
    validate_alpha(alpha_max);
    if (alpha_min > alpha_max) throw UsageError("--alpha-min exceeds --alpha-max");
    std::string csv = "alpha,normalized_bound,approx_3_over_alpha\n";
    for (int a = alpha_min; a <= alpha_max; a += 2) {
      csv += std::to_string(a) + "," + fmt17(normalized_energy_bound(a)) + "," +
             fmt17(3.0 / a) + "\n";
    }
    emit(output, csv, out);
  }
};

// ---------------------------------------------------------------- simulate

struct SimulateCommand {
  int alpha = 20;
  ProbeFlags probe;
  long n = 50;
  double chi = 0.0;
  long trials = 1;
  std::uint64_t seed = 42;
  CLI::Option* seed_opt = nullptr;
  int grid_points = kDefaultGridPoints;
  std::string sampling = "exact";
  std::string posterior_csv;
  std::string output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Even shape exponent");
    probe.attach(cmd);
    cmd->add_option("--n", n, "Outcomes per trial N");
    cmd->add_option("--chi", chi, "True signal");
    cmd->add_option("--trials", trials, "Independent trials")->check(CLI::PositiveNumber);
    seed_opt = cmd->add_option("--seed", seed, "RNG seed (env QRES_SEED when absent)");
    cmd->add_option("--grid-points", grid_points, "Posterior grid size (odd, >= 101)");
    cmd->add_option("--sampling", sampling, "exact | uniform");
    cmd->add_option("--posterior-csv", posterior_csv, "Write trial-0 posterior as CSV");
    cmd->add_option("-o,--output", output);
  }

  void execute(std::ostream& out) const {
    const ProbeSpec spec = probe.resolve(alpha);
    TrialConfig config;
    config.alpha = alpha;
    config.energy = probe.energy_of(spec);
    config.n = n;
    config.chi = chi;
    config.trials = trials;
    config.seed = resolve_seed(seed_opt, seed);
    config.grid_points = grid_points;
    config.mode = parse_sampling(sampling);
    if (grid_points < 101 || grid_points % 2 == 0) {
      throw UsageError("--grid-points must be odd and >= 101");
    }

    Json j;
    j["chi_true"] = chi;
    if (trials == 1) {
      const TrialResult r = run_single_trial(config, 0);
      j["mle"] = r.mle;
      j["posterior_mean"] = r.posterior_mean;
      j["posterior_variance"] = r.posterior_variance;
    } else {
      const TrialSummary s = run_trials(config);
      double mean_post = 0.0;
      for (const auto& r : s.per_trial) mean_post += r.posterior_mean;
      j["mle"] = s.mle_mean;
      j["posterior_mean"] = mean_post / static_cast<double>(s.per_trial.size());
      j["posterior_variance"] = s.mean_posterior_variance;
      j["mle_variance"] = s.mle_variance;
      j["posterior_to_bound"] = s.posterior_to_bound;
      j["mean_excess_kurtosis"] = s.mean_excess_kurtosis;
    }
    j["energy_bound"] = energy_bound(alpha, config.energy, n);
    j["crb"] = crb(fisher_closed(spec), n);
    j["n_required"] = repetitions_closed_form(alpha);
    j["seed"] = config.seed;
    j["alpha"] = alpha;
    j["gamma"] = spec.gamma();
    j["mean_energy"] = config.energy;
    j["n"] = n;
    j["trials"] = trials;
    j["sampling"] = sampling;
    j["grid_points"] = grid_points;

    if (!posterior_csv.empty()) {
      RngStream stream(config.seed, 0);
      const SampleSet samples =
          draw(ProbeSpec::for_energy(alpha, config.energy), chi, n, stream, config.mode);
      const PosteriorGrid post = posterior(samples, grid_points);
      std::string csv = "chi_tilde,density\n";
      for (std::size_t i = 0; i < post.grid.size(); ++i) {
        csv += fmt17(post.grid[i]) + "," + fmt17(std::exp(post.log_weights[i])) + "\n";
      }
      emit(posterior_csv, csv, out);
    }
    emit(output, dump(j), out);
  }
};

// ---------------------------------------------------------------- oscillator

struct OscillatorCommand {
  double omega = 1.0;
  double energy = 1.0;
  long n = 1;
  long fock = 0;
  std::optional<double> chi;
  std::string output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--omega", omega, "Oscillator frequency");
    cmd->add_option("--energy", energy, "Mean energy <H>");
    cmd->add_option("--n", n, "Repetitions N");
    cmd->add_option("--fock", fock, "Number-shift input level n");
    cmd->add_option("--chi", chi, "Number-shift signal (enables that section)");
    cmd->add_option("-o,--output", output);
  }

  void execute(std::ostream& out) const {
    const HOBound b = ho_energy_bound(HOBoundInput{omega, energy, n});
    Json j;
    j["omega"] = omega;
    j["energy"] = energy;
    j["n"] = n;
    j["ho_bound"] = b.bound;
    j["in_validity_regime"] = b.in_validity_regime;
    if (chi) {
      const NumberShiftModel model(fock, *chi);
      const auto dist = number_shift_distribution(model);
      const auto mean = mean_number(model);
      const auto fisher = number_shift_fisher(model);
      Json ns;
      ns["n_level"] = fock;
      ns["chi"] = *chi;
      ns["p_low"] = dist.p_low;
      ns["p_high"] = dist.p_high;
      ns["q_first_order"] = dist.q_first_order;
      ns["mean_normalized"] = mean.normalized;
      ns["mean_first_order"] = mean.first_order;
      ns["fisher_exact"] = fisher.exact;
      ns["fisher_approx"] = fisher.approx;
      ns["crb"] = number_shift_crb(model, n);
      j["number_shift"] = ns;
    }
    emit(output, dump(j), out);
  }
};

// ---------------------------------------------------------------- scenario

struct ScenarioCommand {
  double q = 1.0;
  double field = 1.0;
  double mu = 1.0;
  double gradient = 1.0;
  double tau = 1.0;
  std::string output;
  CLI::App* electric = nullptr;
  CLI::App* stern_gerlach = nullptr;

  void attach(CLI::App* cmd) {
    cmd->require_subcommand(1);
    electric = cmd->add_subcommand("electric", "chi = q E tau");
    electric->add_option("--q", q, "Charge");
    electric->add_option("--field", field, "Electric field");
    electric->add_option("--tau", tau, "Interaction time");
    electric->add_option("-o,--output", output);
    stern_gerlach = cmd->add_subcommand("stern-gerlach", "chi = mu_z B0 tau");
    stern_gerlach->add_option("--mu", mu, "Magnetic moment component");
    stern_gerlach->add_option("--gradient", gradient, "Field gradient B0");
    stern_gerlach->add_option("--tau", tau, "Interaction time");
    stern_gerlach->add_option("-o,--output", output);
  }

  void execute(std::ostream& out) const {
    Json j;
    if (electric->parsed()) {
      j["scenario"] = "electric";
      j["q"] = q;
      j["field"] = field;
      j["tau"] = tau;
      j["chi"] = scenario_chi_electric(q, field, tau);
    } else {
      j["scenario"] = "stern-gerlach";
      j["mu"] = mu;
      j["gradient"] = gradient;
      j["tau"] = tau;
      j["chi"] = scenario_chi_stern_gerlach(mu, gradient, tau);
    }
    emit(output, dump(j), out);
  }
};

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolution bounds and Monte-Carlo estimation for generalized-Gaussian momentum probes",
               "qres"};
  app.require_subcommand(1);

  ProbeCommand probe;
  BoundsCommand bounds;
  SweepCommand sweep;
  SimulateCommand simulate;
  OscillatorCommand oscillator;
  ScenarioCommand scenario;

  auto* probe_cmd = app.add_subcommand("probe", "Write momentum densities P(p) as CSV");
  auto* bounds_cmd = app.add_subcommand("bounds", "Fisher information and resolution bounds");
  auto* sweep_cmd = app.add_subcommand("sweep", "Normalized energy bound versus alpha");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo MLE and posterior study");
  auto* oscillator_cmd = app.add_subcommand("oscillator", "Harmonic-oscillator comparison bounds");
  auto* scenario_cmd = app.add_subcommand("scenario", "Physical parameters to signal chi");
  probe.attach(probe_cmd);
  bounds.attach(bounds_cmd);
  sweep.attach(sweep_cmd);
  simulate.attach(simulate_cmd);
  oscillator.attach(oscillator_cmd);
  scenario.attach(scenario_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (probe_cmd->parsed()) probe.execute(out);
    else if (bounds_cmd->parsed()) bounds.execute(out);
    else if (sweep_cmd->parsed()) sweep.execute(out);
    else if (simulate_cmd->parsed()) simulate.execute(out);
    else if (oscillator_cmd->parsed()) oscillator.execute(out);
    else if (scenario_cmd->parsed()) scenario.execute(out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AccuracyError& e) {
    err << "numerical error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kExitNumerical;
  } catch (const ResolutionError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.emplace_back("qres");
  std::vector<char*> argv;
  argv.reserve(storage.size() + 1);
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace qres::cli
