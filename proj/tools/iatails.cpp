// Command-line driver: sampling, fitting, Monte Carlo studies, the two
// built-in generators, and plot-data emission.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iatails/coupled.hpp"
#include "iatails/errors.hpp"
#include "iatails/gof.hpp"
#include "iatails/ia.hpp"
#include "iatails/mle.hpp"
#include "iatails/models.hpp"
#include "iatails/moments.hpp"
#include "iatails/sample_io.hpp"
#include "iatails/sampler.hpp"
#include "iatails/study.hpp"

#ifndef IA_TAILS_VERSION
#define IA_TAILS_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;
using namespace iatails;

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int alpha_of(const std::string& family) {
  if (family == "gpd") return 1;
  if (family == "gauss") return 2;
  throw domain_error("family must be 'gpd' or 'gauss'");
}

CoupledParams family_params(const std::string& family, double sigma,
                            double kappa, double mu = 0.0) {
  return alpha_of(family) == 1 ? CoupledParams::gpd(sigma, kappa, mu)
                               : CoupledParams::gauss(sigma, kappa, mu);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw io_error("write failed for " + path);
}

// Sidecar manifest next to each output file.
void write_manifest(const std::string& command, const json& config,
                    std::uint64_t seed, const std::string& started,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = seed;
  m["version"] = IA_TAILS_VERSION;
  m["started"] = started;
  m["finished"] = iso_now();
  json digests = json::object();
  for (const auto& path : outputs) digests[path] = file_digest(path);
  m["outputs"] = digests;
  write_text(outputs.front() + ".manifest.json", m.dump(2) + "\n");
}

struct CommonFitFlags {
  std::string method = "ml";
  std::string family = "gpd";
  int permutations = 25;
  std::size_t k_min = 10;
  std::size_t k_max = 0;
  std::string dispersion = "mad";
};

IAConfig ia_config_of(const CommonFitFlags& f) {
  IAConfig cfg;
  cfg.permutations = f.permutations;
  cfg.k_min = f.k_min;
  cfg.k_max = f.k_max;
  cfg.selection_stat =
      f.dispersion == "sd" ? DispersionStat::sd : DispersionStat::mad;
  return cfg;
}

json fit_to_json(const EstimateResult& est, const std::string& method,
                 const std::string& family) {
  const CoupledParams fitted =
      family_params(family, est.sigma_hat, est.kappa_hat);
  const QBetaParams qb = to_q_beta(fitted);
  json diag;
  diag["dispersion_at_k"] = est.dispersion_at_k;
  diag["epsilon_at_k"] = est.epsilon_at_k;
  diag["k_selected_kappa"] = est.k_selected_kappa;
  diag["per_permutation_estimates"] = est.per_permutation_estimates;
  diag["nll_at_optimum"] = est.nll_at_optimum;
  diag["iterations"] = est.iterations;
  diag["converged"] = est.converged;
  diag["restarts_used"] = est.restarts_used;
  diag["log_zero_excluded"] = est.log_zero_excluded;
  json out;
  out["method"] = method;
  out["family"] = family;
  out["sigma_hat"] = est.sigma_hat;
  out["kappa_hat"] = est.kappa_hat;
  out["q_hat"] = qb.q;
  out["beta_hat"] = qb.beta;
  out["k_selected"] = est.k_selected;
  out["diagnostics"] = diag;
  return out;
}

std::vector<double> load_samples(const std::string& path) {
  std::vector<double> values = read_sample_file(path);
  if (values.empty()) throw domain_error("no samples in " + path);
  return values;
}

int run(int argc, char** argv) {
  CLI::App app{"Scale/shape estimation for heavy-tailed coupled "
               "distributions (generalized Pareto and Student's t)"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; flags win");
  app.set_version_flag("--version", IA_TAILS_VERSION);

  // ---- sample ----------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Draw i.i.d. samples");
  std::string s_family = "gpd", s_out = "samples.txt";
  double s_sigma = 1.0, s_kappa = 0.0, s_mu = 0.0;
  std::size_t s_n = 1000;
  std::uint64_t s_seed = 1;
  sample->add_option("--family", s_family)->check(CLI::IsMember({"gpd", "gauss"}));
  sample->add_option("--sigma", s_sigma);
  sample->add_option("--kappa", s_kappa);
  sample->add_option("--mu", s_mu);
  sample->add_option("--n", s_n);
  sample->add_option("--seed", s_seed);
  sample->add_option("--out", s_out);

  // ---- fit -------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit (sigma, kappa) to a sample file");
  CommonFitFlags f_flags;
  std::string f_in, f_json_out;
  std::uint64_t f_seed = 1;
  bool f_pretty = false;
  fit->add_option("--method", f_flags.method)
      ->check(CLI::IsMember({"ia", "ia-gm", "ml"}));
  fit->add_option("--family", f_flags.family)
      ->check(CLI::IsMember({"gpd", "gauss"}));
  fit->add_option("--in", f_in)->required();
  fit->add_option("--seed", f_seed);
  fit->add_option("--json-out", f_json_out);
  fit->add_option("--permutations", f_flags.permutations);
  fit->add_option("--k-min", f_flags.k_min);
  fit->add_option("--k-max", f_flags.k_max);
  fit->add_option("--dispersion", f_flags.dispersion)
      ->check(CLI::IsMember({"mad", "sd"}));
  fit->add_flag("--pretty", f_pretty);

  // ---- mc-study --------------------------------------------------------
  auto* study = app.add_subcommand("mc-study", "Monte Carlo benchmark grid");
  std::string st_family = "gpd", st_csv = "study.csv";
  std::vector<double> st_kappas;
  std::vector<std::string> st_methods;
  double st_sigma = 0.5;
  std::size_t st_n = 10000;
  int st_trials = 100;
  std::uint64_t st_seed = 1;
  CommonFitFlags st_flags;
  study->add_option("--family", st_family)
      ->check(CLI::IsMember({"gpd", "gauss"}));
  study->add_option("--kappas", st_kappas)->required()->delimiter(',');
  study->add_option("--methods", st_methods)->required()->delimiter(',');
  study->add_option("--sigma", st_sigma);
  study->add_option("--n", st_n);
  study->add_option("--trials", st_trials);
  study->add_option("--seed", st_seed);
  study->add_option("--csv-out", st_csv);
  study->add_option("--permutations", st_flags.permutations);
  study->add_option("--k-min", st_flags.k_min);
  study->add_option("--k-max", st_flags.k_max);
  study->add_option("--dispersion", st_flags.dispersion)
      ->check(CLI::IsMember({"mad", "sd"}));

  // ---- model -----------------------------------------------------------
  auto* model = app.add_subcommand("model", "Built-in data generators");
  model->require_subcommand(1);
  auto* cnm = model->add_subcommand("cnm", "Coherent noise model avalanches");
  CnmConfig cnm_cfg;
  std::uint64_t m_seed = 1;
  std::string m_out = "model.txt";
  cnm->add_option("--agents", cnm_cfg.n_agents);
  cnm->add_option("--stress-sigma", cnm_cfg.sigma_stress);
  cnm->add_option("--f", cnm_cfg.f);
  cnm->add_option("--steps", cnm_cfg.steps);
  cnm->add_option("--subsample-every", cnm_cfg.subsample_every);
  cnm->add_option("--seed", m_seed);
  cnm->add_option("--out", m_out);
  auto* stdmap = model->add_subcommand("stdmap", "Standard map centered sums");
  StdMapConfig sm_cfg;
  stdmap->add_option("--K", sm_cfg.K);
  stdmap->add_option("--orbits", sm_cfg.n_initial_conditions);
  stdmap->add_option("--sum-length", sm_cfg.sum_length);
  stdmap->add_option("--transient", sm_cfg.transient);
  stdmap->add_option("--seed", m_seed);
  stdmap->add_option("--out", m_out);

  // ---- plotdata --------------------------------------------------------
  auto* plot = app.add_subcommand(
      "plotdata", "Histogram plus fitted-PDF grid for plotting");
  std::string p_in, p_out = "plotdata.csv", p_family = "gpd";
  int p_bins = 50;
  std::vector<std::string> p_fits;  // label:sigma:kappa
  plot->add_option("--in", p_in)->required();
  plot->add_option("--out", p_out);
  plot->add_option("--family", p_family)
      ->check(CLI::IsMember({"gpd", "gauss"}));
  plot->add_option("--bins", p_bins)->check(CLI::PositiveNumber);
  plot->add_option("--fit", p_fits,
                   "Fitted curve as label:sigma:kappa (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (sample->parsed()) {
    const std::string started = iso_now();
    const CoupledParams p = family_params(s_family, s_sigma, s_kappa, s_mu);
    const SampleSet set = sample_coupled(s_n, p, RandomStream(s_seed, 0));
    write_sample_file(s_out, set.values);
    json cfg{{"family", s_family}, {"sigma", s_sigma}, {"kappa", s_kappa},
             {"mu", s_mu},         {"n", s_n},         {"out", s_out}};
    write_manifest("sample", cfg, s_seed, started, {s_out});
    return 0;
  }

  if (fit->parsed()) {
    const std::vector<double> data = load_samples(f_in);
    const int alpha = alpha_of(f_flags.family);
    EstimateResult est;
    if (f_flags.method == "ml") {
      est = ml_fit(data, alpha);
    } else {
      est = ia_fit(data, alpha,
                   f_flags.method == "ia" ? IaMethod::ia : IaMethod::ia_gm,
                   ia_config_of(f_flags), RandomStream(f_seed, 0));
    }
    const json out = fit_to_json(est, f_flags.method, f_flags.family);
    const std::string text =
        (f_pretty ? out.dump(2) : out.dump()) + "\n";
    if (f_json_out.empty()) {
      std::cout << text;
    } else {
      write_text(f_json_out, text);
      json cfg{{"method", f_flags.method}, {"family", f_flags.family},
               {"in", f_in},               {"json_out", f_json_out}};
      write_manifest("fit", cfg, f_seed, iso_now(), {f_json_out});
    }
    return 0;
  }

  if (study->parsed()) {
    const std::string started = iso_now();
    StudyConfig cfg;
    cfg.alpha = alpha_of(st_family);
    cfg.sigma = st_sigma;
    cfg.kappas = st_kappas;
    cfg.n = st_n;
    cfg.trials = st_trials;
    cfg.methods = st_methods;
    cfg.ia = ia_config_of(st_flags);
    cfg.seed = st_seed;
    const std::vector<TrialReport> rows = run_mc_study(cfg);
    write_text(st_csv, study_csv(rows));
    json jcfg{{"family", st_family}, {"sigma", st_sigma},
              {"kappas", st_kappas}, {"methods", st_methods},
              {"n", st_n},           {"trials", st_trials},
              {"csv_out", st_csv}};
    write_manifest("mc-study", jcfg, st_seed, started, {st_csv});
    return 0;
  }

  if (cnm->parsed() || stdmap->parsed()) {
    const std::string started = iso_now();
    SampleSet set;
    json cfg;
    std::string name;
    if (cnm->parsed()) {
      name = "model cnm";
      set = cnm_run(cnm_cfg, RandomStream(m_seed, 0));
      cfg = {{"agents", cnm_cfg.n_agents},
             {"stress_sigma", cnm_cfg.sigma_stress},
             {"f", cnm_cfg.f},
             {"steps", cnm_cfg.steps},
             {"subsample_every", cnm_cfg.subsample_every},
             {"out", m_out}};
    } else {
      name = "model stdmap";
      set = stdmap_run(sm_cfg, RandomStream(m_seed, 0));
      cfg = {{"K", sm_cfg.K},
             {"orbits", sm_cfg.n_initial_conditions},
             {"sum_length", sm_cfg.sum_length},
             {"transient", sm_cfg.transient},
             {"out", m_out}};
    }
    write_sample_file(m_out, set.values);
    write_manifest(name, cfg, m_seed, started, {m_out});
    return 0;
  }

  if (plot->parsed()) {
    const std::vector<double> data = load_samples(p_in);
    const int alpha = alpha_of(p_family);
    struct Fit {
      std::string label;
      CoupledParams params;
    };
    std::vector<Fit> fits;
    for (const std::string& spec : p_fits) {
      std::istringstream ss(spec);
      std::string label, sig, kap;
      if (!std::getline(ss, label, ':') || !std::getline(ss, sig, ':') ||
          !std::getline(ss, kap)) {
        throw domain_error("--fit expects label:sigma:kappa, got '" + spec +
                           "'");
      }
      fits.push_back(
          {label, family_params(p_family, std::stod(sig), std::stod(kap))});
    }
    std::vector<double> sorted = data;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    std::vector<double> edges(p_bins + 1);
    if (alpha == 1) {
      // One-sided data: log-spaced bins over the positive range.
      double pos_lo = hi;
      for (double v : sorted) {
        if (v > 0.0) {
          pos_lo = v;
          break;
        }
      }
      if (!(pos_lo > 0.0) || !(hi > pos_lo)) {
        throw domain_error("log-binning needs positive spread in the data");
      }
      const double llo = std::log(pos_lo), lhi = std::log(hi);
      for (int i = 0; i <= p_bins; ++i) {
        edges[i] = std::exp(llo + (lhi - llo) * i / p_bins);
      }
      edges.front() = pos_lo;
    } else {
      for (int i = 0; i <= p_bins; ++i) {
        edges[i] = lo + (hi - lo) * i / p_bins;
      }
    }
    edges.back() = std::nextafter(hi, hi + 1.0);
    std::vector<std::size_t> counts(p_bins, 0);
    std::size_t used = 0;
    for (double v : sorted) {
      if (v < edges.front() || v >= edges.back()) continue;
      const auto it = std::upper_bound(edges.begin(), edges.end(), v);
      const std::size_t bin =
          std::min<std::size_t>(p_bins - 1, it - edges.begin() - 1);
      ++counts[bin];
      ++used;
    }
    std::ostringstream csv;
    csv << "bin_center,empirical_density";
    for (const Fit& f : fits) csv << ",pdf_" << f.label;
    csv << '\n';
    for (int b = 0; b < p_bins; ++b) {
      const double width = edges[b + 1] - edges[b];
      const double center = alpha == 1 ? std::sqrt(edges[b] * edges[b + 1])
                                       : 0.5 * (edges[b] + edges[b + 1]);
      const double density =
          static_cast<double>(counts[b]) / (used * width);
      csv << format_double(center) << ',' << format_double(density);
      for (const Fit& f : fits) {
        csv << ',' << format_double(pdf(center, f.params));
      }
      csv << '\n';
    }
    write_text(p_out, csv.str());
    json cfg{{"in", p_in}, {"out", p_out}, {"family", p_family},
             {"bins", p_bins}, {"fits", p_fits}};
    write_manifest("plotdata", cfg, 0, iso_now(), {p_out});
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const insufficient_data_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
