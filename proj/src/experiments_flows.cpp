#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "experiments_common.hpp"
#include "mlsim/boole.hpp"
#include "mlsim/error.hpp"
#include "mlsim/id_process.hpp"
#include "mlsim/limit_motion.hpp"
#include "mlsim/parallel.hpp"
#include "mlsim/renewal_chain.hpp"
#include "mlsim/stable.hpp"

namespace mlsim::detail {

namespace {

std::vector<double> dk_reference(double beta, double mass, std::size_t count, unsigned workers,
                                 std::uint64_t seed, std::uint64_t stream) {
  const double g = std::tgamma(1.0 + beta) * mass;
  return blocked_draws(count, workers, seed, stream,
                       [=](Rng& rng) { return g * sample_ml_marginal(beta, 1.0, rng); });
}

// Shared tail of the two Darling-Kac experiments. counts[r][j] is S_n(1_A) of
// replicate r at n_list[j]; the first `final_reps` replicates also feed the
// final-size comparison.
void dk_summary(ExperimentResult& res, const ExperimentConfig& c,
                const std::vector<std::vector<std::size_t>>& counts,
                const std::function<double(std::size_t)>& a_seq, double beta, double mass,
                std::size_t final_reps, double final_bound, bool exact_mean, unsigned workers) {
  const auto reference = dk_reference(beta, mass, or_default(c.draws, 1000000), workers, c.master_seed, 1);
  const auto fresh = dk_reference(beta, mass, final_reps, workers, c.master_seed, 2);
  Table t{"darling_kac", {"n", "a_n", "mean_S_n", "mean_se", "ks_trend", "trend_replicates"}};
  std::vector<double> trend;
  bool mean_ok = true;
  std::vector<double> last;
  for (std::size_t j = 0; j < c.n_list.size(); ++j) {
    const double a = a_seq(c.n_list[j]);
    std::vector<double> s(counts.size());
    std::vector<double> raw(counts.size());
    for (std::size_t r = 0; r < counts.size(); ++r) {
      raw[r] = static_cast<double>(counts[r][j]);
      s[r] = raw[r] / a;
    }
    const Estimate m = mean_with_se(raw);
    mean_ok = mean_ok && std::abs(m.value - mass * a) <= 4.0 * m.std_error;
    const KsResult k = ks_two_sample(s, reference);
    trend.push_back(k.statistic);
    t.add({static_cast<std::int64_t>(c.n_list[j]), a, m.value, m.std_error, k.statistic,
           static_cast<std::int64_t>(counts.size())});
    last = std::move(s);
  }
  res.tables.push_back(std::move(t));
  res.check("ks_strictly_decreasing_in_n", strictly_decreasing(trend),
            {{"ks", trend}, {"trend_replicates", counts.size()}});
  last.resize(final_reps);
  const KsResult fin = ks_two_sample(last, fresh);
  res.check("final_ks", fin.statistic < final_bound,
            {{"n", c.n_list.back()}, {"replicates", final_reps}, {"ks", ks_json(fin)}, {"bound", final_bound}});
  // E S_n = mu(A) a_n holds exactly only when a_n is the exact return sum.
  if (exact_mean) res.check("mean_occupation_matches_mu_A_a_n", mean_ok, {{"bound_se", 4.0}});
}

}  // namespace

ExperimentResult dk_chain(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"dk-chain"};
  require(!c.n_list.empty(), "dk-chain: empty n_list");
  const std::size_t reps = or_default(c.replicates, 4000);
  const std::size_t trend = std::max(reps, or_default(c.trend_replicates, reps));
  const RenewalChain chain(c.beta, c.n_list.back());
  const auto counts = parallel_map(trend, workers, [&](std::size_t r) {
    Rng rng = make_rng(c.master_seed, 0, r);
    return chain.occupation_counts(c.n_list, rng);
  });
  dk_summary(res, c, counts, [&](std::size_t n) { return chain.a_seq(n); }, c.beta, 1.0, reps, 0.05,
             true, workers);
  return res;
}

ExperimentResult dk_boole(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"dk-boole"};
  require(!c.n_list.empty(), "dk-boole: empty n_list");
  const std::size_t reps = or_default(c.replicates, 2000);
  const std::size_t trend = std::max(reps, or_default(c.trend_replicates, reps));
  const BooleModel model(c.eps, c.n_list.back());
  const auto orbits = parallel_map(trend, workers, [&](std::size_t r) {
    Rng rng = make_rng(c.master_seed, 0, r);
    return model.occupation_counts(c.n_list, rng);
  });
  std::vector<std::vector<std::size_t>> counts(trend);
  std::size_t restarts = 0;
  for (std::size_t r = 0; r < trend; ++r) {
    counts[r] = orbits[r].counts;
    restarts += orbits[r].restarts;
  }
  res.results["mu_A"] = model.measure_A();
  res.results["restarts"] = restarts;
  dk_summary(res, c, counts, [&](std::size_t n) { return model.a_seq(n); }, BooleModel::kBeta,
             model.measure_A(), reps, 0.08, false, workers);
  return res;
}

ExperimentResult t_inf_law(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"t-inf-law"};
  require(!c.n_list.empty(), "t-inf-law: empty n_list");
  const std::size_t reps = or_default(c.replicates, 1000000);
  const RenewalChain chain(c.beta, c.n_list.back() * c.L);
  const auto reports = parallel_map(c.n_list.size(), workers, [&](std::size_t i) {
    Rng rng = make_rng(c.master_seed, i, 0);
    return t_inf_law_check(chain, c.n_list[i], c.L, reps, rng);
  });
  Table t{"t_inf_law", {"n", "L", "ks", "p_value", "exact_distance"}};
  std::vector<double> ks;
  for (const auto& r : reports) {
    ks.push_back(r.ks.statistic);
    t.add({static_cast<std::int64_t>(r.n), r.L, r.ks.statistic, r.ks.p_value, r.exact_distance});
  }
  res.tables.push_back(std::move(t));
  res.results["limit_cdf_at_half_L"] = std::pow(0.5, 1.0 - c.beta);
  res.check("ks_strictly_decreasing_in_n", strictly_decreasing(ks), {{"ks", ks}});
  res.check("final_ks", ks.back() < 0.03, {{"ks", ks.back()}, {"bound", 0.03}});
  return res;
}

ExperimentResult tail_marginal(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"tail-marginal"};
  const std::size_t n = or_default(c.draws, 100000);
  const RenewalChain chain(c.beta, 8);
  const ParetoLevyModel levy(c.alpha, c.variant);
  const auto x = blocked_draws(n, workers, c.master_seed, 0, [&](Rng& rng) {
    return simulate_X_path(chain, levy, 1, rng).values[0];
  });
  // mu(A) = 1 and f = 1_A, so the asymptotic tail is rho(lambda, inf).
  Table t{"tail", {"lambda", "empirical", "asymptotic", "ratio", "binomial_se"}};
  for (double lambda : {10.0, 100.0, 1000.0}) {
    const double p = static_cast<double>(std::count_if(x.begin(), x.end(),
                                                       [=](double v) { return v > lambda; })) / n;
    const double target = levy.tail(lambda);
    const double se = std::sqrt(target * (1.0 - target) / n);
    t.add({lambda, p, target, p / target, se});
    if (lambda == 10.0)
      res.check("exceedance_at_10_within_3se", std::abs(p - target) <= 3.0 * se,
                {{"empirical", p}, {"asymptotic", target}, {"binomial_se", se},
                 {"z", (p - target) / se}, {"bound_se", 3.0}});
  }
  res.tables.push_back(std::move(t));
  std::vector<double> abs_x;
  for (double v : x)
    if (v != 0.0) abs_x.push_back(std::abs(v));
  // Top 5%: the SE at the top 1% (alpha/sqrt(k) ~ 3%) is too close to the 5% band.
  const std::size_t k = n / 20;
  const Estimate hill = hill_tail_index(abs_x, k);
  res.check("hill_within_5pct", std::abs(hill.value - c.alpha) <= 0.05 * c.alpha,
            {{"alpha_hat", hill.value}, {"se", hill.std_error}, {"k", k}, {"alpha", c.alpha}});
  return res;
}

ExperimentResult norms(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"norms"};
  require(c.n_list.size() >= 2, "norms: n_list needs at least two sizes");
  const std::size_t n_max = c.n_list.back();
  const RenewalChain chain(c.beta, n_max);
  const BooleModel boole(c.eps, n_max);
  const ParetoLevyModel levy(c.alpha, c.variant);

  Table t{"normalizers", {"n", "w_n", "a_n", "source", "ratio", "w_n_over_n_pow"}};
  const auto ratio = [](double a, double w, double n, double beta) {
    return a * std::tgamma(2.0 - beta) * std::tgamma(1.0 + beta) * w / n;
  };
  bool monotone = true;
  double chain_ratio = 0.0, boole_ratio = 0.0;
  for (int src = 0; src < 2; ++src) {
    const double beta = src == 0 ? c.beta : BooleModel::kBeta;
    double prev_w = 0.0, prev_a = 0.0;
    for (std::size_t n : c.n_list) {
      const double w = src == 0 ? chain.wandering_rate(n) : boole.wandering_rate(n);
      const double a = src == 0 ? chain.a_seq(n) : boole.a_seq(n);
      const double r = ratio(a, w, static_cast<double>(n), beta);
      monotone = monotone && w >= prev_w && a >= prev_a;
      prev_w = w;
      prev_a = a;
      (src == 0 ? chain_ratio : boole_ratio) = r;
      t.add({static_cast<std::int64_t>(n), w, a, std::string(src == 0 ? "exact-renewal" : "boole-numeric"),
             r, w / std::pow(static_cast<double>(n), 1.0 - beta)});
    }
  }
  res.tables.push_back(std::move(t));
  res.check("chain_ratio_at_largest_n", chain_ratio >= 0.98 && chain_ratio <= 1.02,
            {{"ratio", chain_ratio}, {"bounds", {0.98, 1.02}}});
  res.check("boole_ratio_at_largest_n", boole_ratio >= 0.9 && boole_ratio <= 1.1,
            {{"ratio", boole_ratio}, {"bounds", {0.9, 1.1}}});
  res.check("w_n_and_a_n_non_decreasing", monotone, {});

  // c_n and its regular-variation slope.
  Table cn{"c_n", {"n", "c_n"}};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t n : c.n_list) {
    const double v = c_n(c.alpha, c.beta, chain.a_seq(n), chain.wandering_rate(n), levy);
    cn.add({static_cast<std::int64_t>(n), v});
    const double lx = std::log(static_cast<double>(n)), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(c.n_list.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double H = self_similarity_exponent(c.alpha, c.beta);
  res.tables.push_back(std::move(cn));
  res.check("c_n_slope", std::abs(slope - H) <= 0.03, {{"slope", slope}, {"H", H}, {"bound", 0.03}});

  // alpha-norm growth of S_n(1_A).
  Rng krng = make_rng(c.master_seed, 0, 0);
  const StableConstants k = stable_constants(c.alpha, c.beta, or_default(c.draws, 1000000), krng);
  const std::size_t reps = or_default(c.replicates, 100000);
  const auto est = parallel_map(c.n_list.size(), workers, [&](std::size_t i) {
    Rng rng = make_rng(c.master_seed, 1 + i, 0);
    return snf_alpha_norm_mc(chain, c.alpha, c.n_list[i], reps, rng);
  });
  Table an{"alpha_norm", {"n", "estimate", "std_error", "target", "ratio"}};
  double last_ratio = 0.0;
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    const std::size_t n = c.n_list[i];
    const double target = k.c_alpha_beta * chain.a_seq(n) * std::pow(chain.wandering_rate(n), 1.0 / c.alpha);
    last_ratio = est[i].value / target;
    an.add({static_cast<std::int64_t>(n), est[i].value, est[i].std_error, target, last_ratio});
  }
  res.tables.push_back(std::move(an));
  res.results["c_alpha_beta"] = k.c_alpha_beta;
  res.results["ml_alpha_moment"] = k.ml_alpha_moment.value;
  res.check("alpha_norm_ratio_at_largest_n", last_ratio >= 0.9 && last_ratio <= 1.1,
            {{"ratio", last_ratio}, {"bounds", {0.9, 1.1}}});
  return res;
}

ExperimentResult fclt(const ExperimentConfig& c, unsigned workers) {
  ExperimentResult res{"fclt"};
  require(!c.n_list.empty() && !c.t_grid.empty(), "fclt: empty n_list or t_grid");
  const auto horizon = static_cast<std::size_t>(
      std::ceil(static_cast<double>(c.n_list.back()) * std::max(1.0, c.t_grid.back())));
  const RenewalChain chain(c.beta, horizon);
  const ParetoLevyModel levy(c.alpha, c.variant);
  const std::size_t reps = or_default(c.replicates, 4000);
  const std::size_t series = or_default(c.series_length, default_series_length(c.alpha));
  const FcltResult r = fclt_experiment(chain, levy, c.beta, c.n_list, c.t_grid, reps, series,
                                       c.master_seed, workers);
  Table t{"fclt", {"n", "t", "c_n", "ks", "p_value"}};
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const auto& cell = r.cells[i];
    t.add({static_cast<std::int64_t>(cell.n), cell.t, r.c_values[i / c.t_grid.size()],
           cell.ks.statistic, cell.ks.p_value});
  }
  res.tables.push_back(std::move(t));
  const double bound = c.variant == Variant::positive ? 0.1 : 0.12;
  for (std::size_t j = 0; j < c.t_grid.size(); ++j) {
    Json ks = Json::array();
    for (const auto& cell : r.cells)
      if (cell.t == c.t_grid[j]) ks.push_back(cell.ks.statistic);
    const std::string tag = fmt::format("t={:g}", c.t_grid[j]);
    res.check("ks_monotone_decreasing_" + tag, r.monotone_by_t[j], {{"ks", ks}});
    res.check("final_ks_" + tag, r.final_ks_by_t[j] < bound,
              {{"ks", r.final_ks_by_t[j]}, {"bound", bound}, {"n", c.n_list.back()}});
  }
  res.results["series_length"] = series;
  return res;
}

}  // namespace mlsim::detail
