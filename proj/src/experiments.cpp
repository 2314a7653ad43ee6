#include "mlsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "experiments_common.hpp"
#include "mlsim/error.hpp"
#include "mlsim/limit_motion.hpp"
#include "mlsim/parallel.hpp"
#include "mlsim/special.hpp"
#include "mlsim/stable.hpp"

namespace mlsim {

namespace detail {

std::vector<double> blocked_draws(std::size_t count, unsigned workers, std::uint64_t seed,
                                  std::uint64_t stream, const std::function<double(Rng&)>& draw) {
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  const auto parts = parallel_map(blocks, workers, [&](std::size_t b) {
    Rng rng = make_rng(seed, stream, b);
    const std::size_t size = std::min(count, (b + 1) * kBlock) - b * kBlock;
    std::vector<double> v(size);
    for (double& x : v) x = draw(rng);
    return v;
  });
  std::vector<double> out;
  out.reserve(count);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Json ks_json(const KsResult& ks) { return {{"statistic", ks.statistic}, {"p_value", ks.p_value}}; }

std::size_t or_default(std::size_t value, std::size_t fallback) { return value ? value : fallback; }

}  // namespace detail

using namespace detail;

namespace {

// ---------------------------------------------------------------- stable_core

ExperimentResult laplace_check(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"laplace-check"};
  const std::size_t n = or_default(c.draws, 1000000);
  Table t{"laplace", {"beta", "theta", "empirical", "exact", "std_error", "z_score"}};
  double worst = 0.0;
  bool positive = true;
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    const double beta = c.betas[i];
    const auto s = blocked_draws(n, workers, c.master_seed, i,
                                 [beta](Rng& rng) { return sample_positive_stable(beta, rng); });
    positive = positive && std::all_of(s.begin(), s.end(), [](double x) { return x > 0.0; });
    for (double theta : c.thetas) {
      std::vector<double> e(s.size());
      std::transform(s.begin(), s.end(), e.begin(), [theta](double x) { return std::exp(-theta * x); });
      const Estimate m = mean_with_se(e);
      const double exact = std::exp(-std::pow(theta, beta));
      const double z = (m.value - exact) / m.std_error;
      worst = std::max(worst, std::abs(z));
      t.add({beta, theta, m.value, exact, m.std_error, z});
    }
  }
  res.tables.push_back(std::move(t));
  res.check("laplace_within_4se", worst <= 4.0, {{"max_abs_z", worst}, {"bound", 4.0}, {"draws", n}});
  res.check("draws_positive", positive, {});
  return res;
}

ExperimentResult ml_moments(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"ml-moments"};
  const std::size_t reps = or_default(c.replicates, 10000);
  Table t{"ml_moments",
          {"beta", "n", "empirical", "exact", "std_error", "z_score", "bias_allowance", "u_step"}};
  bool within = true;
  double worst_z = 0.0;
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    const double beta = c.betas[i];
    const double h = c.u_step > 0.0 ? c.u_step : default_u_step(beta, 1.0);
    const double times[1] = {1.0};
    const auto m1 = parallel_map(reps, workers, [&](std::size_t r) {
      Rng rng = make_rng(c.master_seed, i, r);
      return simulate_ml_path_grid(beta, times, h, 2.0 * ml_moment(beta, 1.0, 1), rng).values[0];
    });
    for (int n = 1; n <= 3; ++n) {
      std::vector<double> p(reps);
      std::transform(m1.begin(), m1.end(), p.begin(), [n](double x) { return std::pow(x, n); });
      const Estimate m = mean_with_se(p);
      const double exact = ml_moment(beta, 1.0, n);
      // Grid inversion overshoots M by at most h: E(M+h)^n - E M^n.
      double allowance = 0.0;
      for (int k = 0; k < n; ++k)
        allowance += std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
                     std::pow(h, n - k) * ml_moment(beta, 1.0, k);
      const double z = (m.value - exact) / m.std_error;
      within = within && std::abs(m.value - exact) <= 3.0 * m.std_error + allowance;
      worst_z = std::max(worst_z, std::abs(z));
      t.add({beta, std::int64_t{n}, m.value, exact, m.std_error, z, allowance, h});
    }
  }
  res.tables.push_back(std::move(t));
  res.check("within_3se_plus_bias", within, {{"replicates", reps}});
  res.check("abs_z_le_4", worst_z <= 4.0, {{"max_abs_z", worst_z}, {"bound", 4.0}});
  return res;
}

ExperimentResult overshoot(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"overshoot"};
  const double beta = c.beta;
  const double r = 1.0;
  const std::size_t n = or_default(c.draws, 100000);
  const auto exact = blocked_draws(n, workers, c.master_seed, 0, [&](Rng& rng) {
    return sample_overshoot_exact(beta, r, rng).delta;
  });
  const double p = overshoot_cdf(beta, r, r);
  const double hit = static_cast<double>(std::count_if(exact.begin(), exact.end(),
                                                       [r](double d) { return d <= r; })) / n;
  const double se = std::sqrt(p * (1.0 - p) / n);
  res.check("p_delta_le_r", std::abs(hit - p) <= 3.0 * se,
            {{"empirical", hit}, {"exact", p}, {"binomial_se", se}, {"bound_se", 3.0}});

  Table cdf{"overshoot_cdf", {"x", "empirical", "exact"}};
  const Ecdf ecdf(exact);
  for (double x : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) cdf.add({x, ecdf(x), overshoot_cdf(beta, r, x)});
  res.tables.push_back(std::move(cdf));

  // Grid overshoots at u_step h and h/4 against the exact sampler.
  const std::size_t reps = or_default(c.replicates, 20000);
  const double h = c.u_step > 0.0 ? c.u_step : 0.2;
  const std::vector<double> exact_ref(exact.begin(), exact.begin() + std::min(reps, exact.size()));
  Table grid{"overshoot_grid", {"u_step", "ks", "p_value"}};
  std::vector<double> ks;
  for (int level = 0; level < 2; ++level) {
    const double step = h / std::pow(4.0, level);
    const auto deltas = parallel_map(reps, workers, [&](std::size_t i) {
      Rng rng = make_rng(c.master_seed, 1 + level, i);
      SubordinatorGrid g = simulate_subordinator_grid(beta, step, 2.0 * ml_moment(beta, r, 1), rng);
      while (g.last() < r) extend_subordinator_grid(g, 2.0 * g.u_max(), rng);
      return overshoot_from_grid(g, r).delta;
    });
    const KsResult k = ks_two_sample(deltas, exact_ref);
    ks.push_back(k.statistic);
    grid.add({step, k.statistic, k.p_value});
  }
  res.tables.push_back(std::move(grid));
  res.check("grid_ks_decreases_under_refinement", ks[1] < ks[0],
            {{"ks_coarse", ks[0]}, {"ks_fine", ks[1]}, {"u_step_coarse", h}});
  return res;
}

ExperimentResult holder(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"holder"};
  const double beta = c.beta;
  const std::size_t reps = or_default(c.replicates, 1000);
  require(c.n_list.size() >= 2, "holder: n_list needs at least two grid sizes");
  const std::size_t finest = c.n_list.back();
  for (std::size_t m : c.n_list)
    require(finest % m == 0, "holder: grid sizes must divide the finest one");
  const double h = c.u_step > 0.0 ? c.u_step : default_u_step(beta, 1.0);
  std::vector<double> times(finest + 1);
  for (std::size_t j = 0; j <= finest; ++j) times[j] = static_cast<double>(j) / finest;

  // Row r holds K of path r at each grid size; all sizes see the same path.
  const auto k = parallel_map(reps, workers, [&](std::size_t r) {
    Rng rng = make_rng(c.master_seed, 0, r);
    const MLPath full = simulate_ml_path_grid(beta, times, h, 2.0 * ml_moment(beta, 1.0, 1), rng);
    std::vector<double> out;
    for (std::size_t m : c.n_list) {
      MLPath sub{beta, {}, {}, full.resolution};
      for (std::size_t j = 0; j <= finest; j += finest / m) {
        sub.times.push_back(full.times[j]);
        sub.values.push_back(full.values[j]);
      }
      out.push_back(holder_modulus(sub, 1.0 - beta));
    }
    return out;
  });
  Table t{"holder", {"grid_points", "q99", "mean", "mean_first_100"}};
  std::vector<double> q99, means, early;
  for (std::size_t g = 0; g < c.n_list.size(); ++g) {
    std::vector<double> col(reps);
    for (std::size_t r = 0; r < reps; ++r) col[r] = k[r][g];
    q99.push_back(quantile(col, 0.99));
    means.push_back(mean_with_se(col).value);
    early.push_back(mean_with_se(std::span(col).first(std::min<std::size_t>(100, reps))).value);
    t.add({static_cast<std::int64_t>(c.n_list[g]), q99.back(), means.back(), early.back()});
  }
  res.tables.push_back(std::move(t));
  const double growth = q99.back() / q99.front();
  res.check("q99_bounded_under_refinement", growth <= 1.25,
            {{"q99_ratio_finest_to_coarsest", growth}, {"bound", 1.25}});
  const double drift = std::abs(early.back() / means.back() - 1.0);
  res.check("mean_stable_across_sample_sizes", drift <= 0.25,
            {{"relative_change_100_to_all", drift}, {"bound", 0.25}});
  return res;
}

// --------------------------------------------------------------- limit_motion

std::vector<double> y_at(double alpha, double beta, double t, std::size_t series, Variant variant,
                         std::size_t reps, unsigned workers, std::uint64_t seed, std::uint64_t stream) {
  return parallel_map(reps, workers, [&](std::size_t r) {
    Rng rng = make_rng(seed, stream, r);
    const double ts[1] = {t};
    return simulate_Y(alpha, beta, ts, series, variant, rng).values[0];
  });
}

// Half-width of a distribution-free confidence band for the p-quantile (order
// statistics at n p -+ z sqrt(n p (1-p))).
double quantile_halfwidth(std::vector<double> x, double p, double z) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  const double spread = z * std::sqrt(n * p * (1.0 - p));
  const auto at = [&](double k) {
    return x[static_cast<std::size_t>(std::clamp(k, 0.0, n - 1.0))];
  };
  return 0.5 * (at(n * p + spread) - at(n * p - spread));
}

ExperimentResult y_motion(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"y-motion"};
  const double alpha = c.alpha, beta = c.beta;
  const std::size_t series = or_default(c.series_length, default_series_length(alpha));
  const std::size_t reps = or_default(c.replicates, 4000);

  // Path dump.
  Table paths{"paths", {"path", "t", "value"}};
  bool start_zero = true, monotone = true;
  for (std::size_t p = 0; p < 5 && !c.t_grid.empty(); ++p) {
    Rng rng = make_rng(c.master_seed, 0, p);
    const YPath y = simulate_Y(alpha, beta, c.t_grid, series, c.variant, rng);
    for (std::size_t j = 0; j < y.times.size(); ++j) {
      paths.add({static_cast<std::int64_t>(p), y.times[j], y.values[j]});
      if (y.times[j] == 0.0) start_zero = start_zero && y.values[j] == 0.0;
      if (j > 0) monotone = monotone && y.values[j] >= y.values[j - 1];
    }
  }
  res.tables.push_back(std::move(paths));
  res.check("y_zero_at_origin", start_zero, {});
  if (c.variant == Variant::positive) res.check("positive_paths_non_decreasing", monotone, {});

  // Marginal scale law of Y(1).
  Rng mrng = make_rng(c.master_seed, 1, 0);
  const StableConstants k = stable_constants(alpha, beta, or_default(c.draws, 1000000), mrng);
  const double sigma = y_scale(alpha, beta, 1.0, k.ml_alpha_moment.value);
  const auto y1 = y_at(alpha, beta, 1.0, series, c.variant, reps, workers, c.master_seed, 2);
  const auto direct = blocked_draws(reps, workers, c.master_seed, 3, [&](Rng& rng) {
    return c.variant == Variant::symmetric ? sample_sas(alpha, sigma, rng)
                                           : sample_totally_skewed(alpha, sigma, rng);
  });
  const double crit = ks_critical_value(reps, reps, 0.01);
  const KsResult scale_ks = ks_two_sample(y1, direct);
  res.results["constants"] = {{"c_alpha", k.c_alpha},
                              {"c_alpha_beta", k.c_alpha_beta},
                              {"ml_alpha_moment", k.ml_alpha_moment.value},
                              {"ml_alpha_moment_se", k.ml_alpha_moment.std_error},
                              {"sigma_y1", sigma},
                              {"series_length", series}};
  res.check("marginal_scale_ks", scale_ks.statistic < crit,
            {{"ks", ks_json(scale_ks)}, {"critical_1pct", crit}, {"sigma", sigma}});

  // Truncation convergence: N versus 2N terms.
  const auto y2 = y_at(alpha, beta, 1.0, 2 * series, c.variant, reps, workers, c.master_seed, 4);
  Table trunc{"truncation", {"p", "q_N", "q_2N", "noise_band"}};
  bool stable_q = true;
  for (double p : {0.05, 0.95}) {
    const double band = std::hypot(quantile_halfwidth(y1, p, 3.0), quantile_halfwidth(y2, p, 3.0));
    const double a = quantile(y1, p), b = quantile(y2, p);
    stable_q = stable_q && std::abs(a - b) < band;
    trunc.add({p, a, b, band});
  }
  res.tables.push_back(std::move(trunc));
  res.check("truncation_quantiles_within_noise", stable_q, {{"series_length", series}});

  if (c.variant == Variant::symmetric) {
    std::vector<double> neg(y1.size());
    std::transform(y1.begin(), y1.end(), neg.begin(), [](double v) { return -v; });
    const KsResult sym = ks_two_sample(neg, y2);
    res.check("symmetry_ks", sym.statistic < crit, {{"ks", ks_json(sym)}, {"critical_1pct", crit}});
  }
  return res;
}

std::vector<std::pair<double, double>> index_pairs(const ExperimentConfig& c) {
  std::vector<std::pair<double, double>> pairs;
  if (c.alphas.empty()) {
    for (double b : c.betas) pairs.emplace_back(c.alpha, b);
    if (pairs.empty()) pairs.emplace_back(c.alpha, c.beta);
  } else {
    for (std::size_t i = 0; i < c.alphas.size(); ++i) pairs.emplace_back(c.alphas[i], c.betas[i]);
  }
  return pairs;
}

ExperimentResult selfsim(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"selfsim"};
  const std::size_t reps = or_default(c.replicates, 4000);
  require(c.scales.size() >= 3, "selfsim: at least three scales");
  require(std::find(c.scales.begin(), c.scales.end(), 1.0) != c.scales.end(),
          "selfsim: scales must include 1");
  const double crit = ks_critical_value(reps, reps, 0.01);
  Table est{"selfsim", {"alpha", "beta", "H", "H_hat", "error"}};
  Table ks{"selfsim_ks", {"alpha", "beta", "scale", "ks", "critical_1pct"}};
  bool h_ok = true, ks_ok = true;
  const auto pairs = index_pairs(c);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [alpha, beta] = pairs[i];
    const double H = self_similarity_exponent(alpha, beta);
    const std::size_t series = or_default(c.series_length, default_series_length(alpha));
    std::map<double, std::vector<double>> by_scale;
    for (std::size_t j = 0; j < c.scales.size(); ++j)
      by_scale[c.scales[j]] =
          y_at(alpha, beta, c.scales[j], series, c.variant, reps, workers, c.master_seed, 10 * i + j);
    const double h_hat = selfsim_exponent(by_scale);
    h_ok = h_ok && std::abs(h_hat - H) <= 0.05;
    est.add({alpha, beta, H, h_hat, h_hat - H});
    for (const auto& [scale, sample] : by_scale) {
      if (scale == 1.0) continue;
      std::vector<double> rescaled(sample.size());
      const double f = std::pow(scale, -H);
      std::transform(sample.begin(), sample.end(), rescaled.begin(), [f](double v) { return v * f; });
      const KsResult k = ks_two_sample(rescaled, by_scale.at(1.0));
      ks_ok = ks_ok && k.statistic < crit;
      ks.add({alpha, beta, scale, k.statistic, crit});
    }
  }
  res.tables.push_back(std::move(est));
  res.tables.push_back(std::move(ks));
  res.check("H_hat_within_0.05", h_ok, {{"bound", 0.05}, {"replicates", reps}});
  res.check("rescaled_marginals_ks", ks_ok, {{"critical_1pct", crit}});
  return res;
}

ExperimentResult stat_incr(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"stat-incr"};
  const std::size_t reps = or_default(c.replicates, 2000);
  Table t{"increments", {"alpha", "beta", "t", "s", "ks", "critical_1pct"}};
  bool ok = true;
  const auto pairs = index_pairs(c);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [alpha, beta] = pairs[i];
    const std::size_t series = or_default(c.series_length, default_series_length(alpha));
    const auto checks = check_stationary_increments(alpha, beta, c.t_grid, c.shift, reps, series,
                                                    c.variant, derive_seed(c.master_seed, i, 0),
                                                    workers);
    for (const auto& k : checks) {
      ok = ok && k.ks.statistic < k.critical;
      t.add({alpha, beta, k.t, k.s, k.ks.statistic, k.critical});
    }
  }
  res.tables.push_back(std::move(t));
  res.check("increments_ks_below_critical", ok, {{"replicates", reps}, {"level", 0.01}});
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers) {
  validate(config);
  using Runner = ExperimentResult (*)(const ExperimentConfig&, unsigned);
  static const std::map<std::string, Runner> catalog = {
      {"laplace-check", laplace_check}, {"ml-moments", ml_moments},
      {"overshoot", overshoot},         {"holder", holder},
      {"y-motion", y_motion},           {"selfsim", selfsim},
      {"stat-incr", stat_incr},         {"dk-chain", detail::dk_chain},
      {"dk-boole", detail::dk_boole},   {"t-inf-law", detail::t_inf_law},
      {"tail-marginal", detail::tail_marginal}, {"norms", detail::norms},
      {"fclt", detail::fclt}};
  return catalog.at(config.experiment)(config, workers);
}

}  // namespace mlsim
