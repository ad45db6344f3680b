// Acceptance suite: every release criterion runs here, one pass/fail line
// each. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ocpd/baseline_glr.hpp"
#include "ocpd/delay.hpp"
#include "ocpd/detector.hpp"
#include "ocpd/experiment.hpp"
#include "ocpd/metrics.hpp"
#include "ocpd/streams.hpp"
#include "reference_detector.hpp"

using namespace ocpd;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++g_failures;
}

bool close(double a, double b, double rel = 1e-12) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Mean-set diameter used by the scenario experiments (criteria 5 and 7). The
// synthetic means span a unit diameter; the configured value pads it the way
// a practitioner with loose prior knowledge would, and reproduces the
// regret scale the thresholds were tuned for.
constexpr double kExperimentG = 2.5;
constexpr double kExperimentDelta = 0.1;

EstimatorConfig unit_cfg(int dim = 1) {
  return EstimatorConfig::make(1.0, 1.0, Regime::Empirical, dim);
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
  bool ok = true;
  std::ostringstream why;

  // clip identities
  ok &= clip({3.0, 4.0}, 10.0) == Vec{3.0, 4.0};
  ok &= close(norm2(clip({3.0, 4.0}, 1.0)), 1.0);
  ok &= clip({0.0, 0.0}, 5.0) == Vec{0.0, 0.0};

  // gamma and step-size constant sets
  ok &= gamma_of(Regime::Theoretical, 2.0, 1.0) == 480.0;
  ok &= gamma_of(Regime::Empirical, 2.0, 1.0) == 16.0;
  ok &= step_size(1, 16.0) == 2.0 / 17.0;
  ok &= step_size(1, 480.0) == 2.0 / 481.0;

  // bound monotonicity in delta and decay on the t-grid
  const EstimatorConfig cfg = unit_cfg();
  for (Index t : {1, 10, 100}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double delta : {1e-6, 1e-3, 0.1, 0.5}) {
      const double b = bound_b(t, delta, cfg);
      ok &= b <= prev;
      prev = b;
    }
  }
  double prev = std::numeric_limits<double>::infinity();
  for (Index t : {50, 100, 200, 400, 800, 1600}) {
    const double b = bound_b(t, 0.1, cfg);
    ok &= b <= prev;
    prev = b;
  }
  ok &= close(bound_b(100, 0.1, cfg), 0.346927432413909539);
  ok &= close(bound_b(400, 0.1, cfg), 0.085147425237185388);
  ok &= bound_b(0, 0.1, cfg) == std::numeric_limits<double>::infinity();

  // threshold symmetry and sentinels
  ok &= split_threshold(7, 31, 60, 0.1, cfg) == split_threshold(31, 7, 60, 0.1, cfg);
  ok &= split_threshold(0, 5, 6, 0.1, cfg) == std::numeric_limits<double>::infinity();
  ok &= close(split_threshold(100, 99, 200, 0.1, cfg), 0.73639959206237243);

  // metric examples
  const GroundTruth truth{800, {400}};
  ok &= false_positive_flags({500}, truth) == std::vector<bool>{false};
  ok &= false_positive_flags({100, 500}, truth) == std::vector<bool>{true, false};
  ok &= fpr({make_report(0, {100, 500}, truth)}) == 0.5;
  ok &= fpr({make_report(0, {}, truth)}) == 0.0;
  ok &= single_change_delay({450}, 400) == 50;
  ok &= single_change_delay({399, 401}, 400) == 1;
  ok &= !single_change_delay({300}, 400).has_value();
  ok &= regret({450}, truth) == 50;
  ok &= regret({}, truth) == 401;
  ok &= regret({400}, truth) == 0;
  const Quantiles q = aggregate({1, 2, 3, 4, 5});
  ok &= q.median == 3 && q.q05 == 1 && q.q95 == 5;

  report(1, ok, "unit identities (clip, gamma, step size, bound, threshold, metrics)");
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
  int streams_checked = 0;
  bool ok = true;
  double worst = 0.0;
  std::uint64_t seed = 500;
  for (int i = 0; i < 50 && ok; ++i, ++seed) {
    const int dim = (i % 5 < 3) ? 1 : 4;
    Scenario sc;
    sc.dim = dim;
    switch (i % 5) {
      case 0: sc.family = Family::Gaussian; break;
      case 1: sc.family = Family::Pareto; break;
      case 2: sc.family = Family::Bernoulli; break;
      case 3: sc.family = Family::Gaussian; break;
      default: sc.family = Family::Pareto; break;
    }
    const Index len1 = 20 + static_cast<Index>(i % 4) * 10;
    const Index len2 = 90 - len1 > 0 ? 90 - len1 : 30;
    if (sc.family == Family::Bernoulli) {
      sc.segments = {{len1, {0.85}}, {len2, {0.15}}};
    } else {
      Vec base(static_cast<std::size_t>(dim), 0.0);
      const double jump = (i % 3 == 0) ? 8.0 : 3.0;
      Vec shifted(static_cast<std::size_t>(dim), jump / std::sqrt(static_cast<double>(dim)));
      sc.segments = {{len1, base}, {len2, shifted}};
    }
    const auto stream = generate(sc, seed);

    DetectorConfig cfg;
    cfg.est = EstimatorConfig::make(1.0, 1.0, Regime::Empirical, dim);
    cfg.delta = 0.1;
    Detector incremental(cfg);
    ocpd_test::ReferenceDetector reference(cfg);
    for (const Vec& x : stream) {
      const auto got = incremental.step(x);
      const auto want = reference.step(x);
      if (got.has_value() != want.has_value()) { ok = false; break; }
      if (got && (got->time != want->time || got->witness_split != want->witness_split ||
                  got->segment_start != want->segment_start ||
                  got->localization != want->localization)) { ok = false; break; }
      if (!got) {
        for (Index s = incremental.anchor(); s <= incremental.time(); ++s) {
          const SgdChain* chain = incremental.chain_for_start(s);
          const SgdChain refold = reference.fold(s, incremental.time());
          for (std::size_t k = 0; k < refold.estimate.size(); ++k) {
            const double diff = std::abs(chain->estimate[k] - refold.estimate[k]);
            worst = std::max(worst, diff);
            if (diff > 1e-12) ok = false;
          }
        }
      }
      if (!ok) break;
    }
    ++streams_checked;
  }
  std::ostringstream detail;
  detail << "incremental/scratch equivalence on " << streams_checked
         << " streams, worst chain deviation " << worst;
  report(2, ok && streams_checked == 50, detail.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
  Scenario sc;
  sc.dim = 1;
  sc.family = Family::Gaussian;
  sc.segments = {{400, {0.0}}};
  DetectorConfig cfg;
  cfg.est = unit_cfg();
  cfg.delta = 0.1;
  int with_detection = 0;
  for (int i = 0; i < 200; ++i) {
    const auto stream = generate(sc, 1000 + static_cast<std::uint64_t>(i));
    if (!run(stream, cfg).empty()) ++with_detection;
  }
  const double fraction = with_detection / 200.0;
  std::ostringstream detail;
  detail << "false-positive streams " << with_detection << "/200 (" << fraction
         << "), bound 0.164 at delta=0.1, G=1";
  report(3, fraction <= 0.164, detail.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
  const EstimatorConfig cfg = unit_cfg();
  const Index horizon = 10'000;
  const double budget = bound_b(horizon, 0.1, cfg);
  const double shape = 2.01;
  const double scale = pareto_scale_for_variance(shape, 1.0);
  const double mean = shape * scale / (shape - 1.0);
  int within = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(2000 + static_cast<std::uint64_t>(i));
    SgdChain chain = make_chain(1, {}, cfg);
    for (Index t = 0; t < horizon; ++t)
      chain = update_step(std::move(chain), {rng.pareto(shape, scale) - mean}, cfg);
    const double err = chain.estimate[0] * chain.estimate[0];
    if (err <= budget) ++within;
  }
  std::ostringstream detail;
  detail << "concentration " << within << "/100 within bound " << budget
         << " after 1e4 heavy-tailed steps (need >= 95)";
  report(4, within >= 95, detail.str());
}

// ---------------------------------------------------------------- criterion 5
struct RegretRow {
  std::string scenario;
  DetectorKind kind;
  double median = 0.0;
};

RegretRow regret_run(const std::string& scenario, DetectorKind kind) {
  ExperimentSpec spec;
  spec.scenario_name = scenario;
  spec.scenario = scenario_catalog().at(scenario);
  spec.detector = kind;
  spec.g_diam = kExperimentG;
  spec.sigma = 1.0;
  spec.delta = kExperimentDelta;
  spec.replicates = 30;
  spec.base_seed = 3000;
  const ExperimentResult result = run_experiment(spec);
  return {scenario, kind, result.regret_quantiles.median};
}

void criterion_5() {
  const RegretRow gauss_d1 = regret_run("gauss-d1-D1", DetectorKind::Clipped);
  const RegretRow gauss_d32 = regret_run("gauss-d32-D1", DetectorKind::Clipped);
  const RegretRow pareto_d1 = regret_run("pareto-d1-D1", DetectorKind::Clipped);
  const RegretRow pareto_d32 = regret_run("pareto-d32-D1", DetectorKind::Clipped);
  const RegretRow glr_gauss_d1 = regret_run("gauss-d1-D1", DetectorKind::Glr);
  const RegretRow glr_pareto_d1 = regret_run("pareto-d1-D1", DetectorKind::Glr);
  const RegretRow glr_pareto_d32 = regret_run("pareto-d32-D1", DetectorKind::Glr);

  auto band = [](const RegretRow& row, double lo, double hi, std::ostringstream& os) {
    const bool pass = row.median >= lo && row.median <= hi;
    os << row.scenario << "=" << row.median << (pass ? " in " : " OUTSIDE ") << "[" << lo
       << "," << hi << "] ";
    return pass;
  };

  std::ostringstream detail;
  detail << "clipped medians (G=" << kExperimentG << ", delta=" << kExperimentDelta << "): ";
  bool ok = true;
  ok &= band(gauss_d1, 150, 450, detail);
  ok &= band(gauss_d32, 200, 450, detail);
  ok &= band(pareto_d1, 180, 500, detail);
  ok &= band(pareto_d32, 200, 500, detail);
  report(5, ok, detail.str());

  std::ostringstream sep;
  sep << "baseline separation: glr pareto-d1 median " << glr_pareto_d1.median
      << " vs 5x clipped " << 5.0 * pareto_d1.median;
  report(5, glr_pareto_d1.median >= 5.0 * pareto_d1.median, sep.str());

  std::ostringstream ord_p1;
  ord_p1 << "ordering clipped<=glr on pareto d1: " << pareto_d1.median << "<="
         << glr_pareto_d1.median;
  report(5, pareto_d1.median <= glr_pareto_d1.median, ord_p1.str());

  std::ostringstream ord_p32;
  ord_p32 << "ordering clipped<=glr on pareto d32: " << pareto_d32.median << "<="
          << glr_pareto_d32.median;
  report(5, pareto_d32.median <= glr_pareto_d32.median, ord_p32.str());

  std::ostringstream ord_gauss;
  ord_gauss << "ordering glr<=clipped on gauss d1: " << glr_gauss_d1.median << "<="
            << gauss_d1.median;
  report(5, glr_gauss_d1.median <= gauss_d1.median, ord_gauss.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
  DelayQuery tmpl;
  tmpl.cfg = unit_cfg();
  tmpl.delta_prime = 0.1;
  tmpl.fpr_delta = 0.1;
  tmpl.d_max = 1'000'000;
  const std::vector<Index> n_grid = {100, 200, 400, 800, 1600, 2000};
  const std::vector<double> jump_grid = {0.5, 1, 2, 4, 6, 8, 10};
  const DelayHeatmap map = delay_heatmap(n_grid, jump_grid, tmpl);

  bool small_jump_vacuous = true;
  for (std::size_t i = 0; i < n_grid.size(); ++i)
    if (n_grid[i] <= 200 && map.cells[i][0].has_value()) small_jump_vacuous = false;

  const bool corner_finite = map.cells.back().back().has_value();

  bool rows_monotone = true;
  for (const auto& row : map.cells) {
    std::optional<Index> previous;
    for (const auto& cell : row) {
      if (previous.has_value()) {
        if (!cell.has_value() || *cell > *previous) rows_monotone = false;
      }
      if (cell.has_value()) previous = cell;
    }
  }

  // the delta'-allocated pre-change term shrinks with n
  bool pre_terms_monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (Index n : n_grid) {
    const double b = bound_b(n - 1, tmpl.delta_prime / 2.0, tmpl.cfg);
    if (b > prev) pre_terms_monotone = false;
    prev = b;
  }

  std::ostringstream detail;
  detail << "heatmap structure: vacuous at jump<=0.5,n<=200 " << small_jump_vacuous
         << ", corner(2000,10)=" << (corner_finite ? *map.cells.back().back() : -1)
         << ", rows monotone " << rows_monotone << ", pre-change terms monotone in n "
         << pre_terms_monotone;
  report(6, small_jump_vacuous && corner_finite && rows_monotone && pre_terms_monotone,
         detail.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
  const Scenario sc = scenario_catalog().at("gauss-d1-D1");
  const GroundTruth truth = ground_truth_of(sc);
  DetectorConfig cfg;
  cfg.est = EstimatorConfig::make(kExperimentG, 1.0, Regime::Empirical, 1);
  cfg.delta = 0.05;
  bool intervals_ok = true;
  int clean_runs = 0;
  for (int i = 0; i < 30; ++i) {
    const auto stream = generate(sc, 4000 + static_cast<std::uint64_t>(i));
    const auto detections = run(stream, cfg);
    bool clean = true;
    std::vector<Index> times;
    for (const Detection& det : detections) {
      times.push_back(det.time);
      if (!det.localization.has_value()) { intervals_ok = false; continue; }
      if (!(det.segment_start < det.localization->first &&
            det.localization->first <= det.localization->second &&
            det.localization->second < det.time))
        intervals_ok = false;
    }
    for (bool flag : false_positive_flags(times, truth))
      if (flag) clean = false;
    if (clean) ++clean_runs;
  }
  std::ostringstream detail;
  detail << "localization intervals valid " << intervals_ok << ", runs with no false fire "
         << clean_runs << "/30 (need >= 27) at delta=0.05";
  report(7, intervals_ok && clean_runs >= 27, detail.str());
}

// ---------------------------------------------------------------- criterion 8
void criterion_8() {
  const auto start = std::chrono::steady_clock::now();
  const auto stream = load_well_log(std::string(OCPD_DATA_DIR) + "/well_log_sample.txt");
  DetectorConfig cfg;
  cfg.est = EstimatorConfig::make(10.0, 1.0, Regime::Empirical, 1);
  cfg.delta = 0.1;
  const auto detections = run(stream, cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << "well-log sample: " << stream.size() << " points, " << detections.size()
         << " detections (need 2..20) in " << seconds << " s (limit 30), G=10 sigma=1";
  report(8, stream.size() == 4050 && detections.size() >= 2 && detections.size() <= 20 &&
                seconds < 30.0,
         detail.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%s: %d criterion check(s) failed\n", g_failures == 0 ? "OK" : "FAILURES",
              g_failures);
  return g_failures;
}
