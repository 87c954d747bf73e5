#include "clp/hunt.hpp"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "clp/report.hpp"
#include "clp/rng.hpp"

namespace clp {

using nlohmann::json;

namespace {

QComplex rand_int(Rng& rng, int bound) { return QComplex(rng.uniform_int(-bound, bound)); }

ExactForm random_line(Rng& rng, int bound) {
  for (;;) {
    ExactForm l(1);
    for (int k = 0; k < 3; ++k) l[k] = rand_int(rng, bound);
    if (!l.is_zero()) return l;
  }
}

/// Conic with a nonsingular integer matrix.
ExactForm random_conic(Rng& rng, int bound) {
  for (;;) {
    mpz_class s[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) s[a][b] = s[b][a] = rng.uniform_int(-bound, bound);
    const mpz_class det = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                          s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                          s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
    if (det == 0) continue;
    ExactForm q(2);
    q.coeff(2, 0, 0) = QComplex(mpq_class(s[0][0]));
    q.coeff(0, 2, 0) = QComplex(mpq_class(s[1][1]));
    q.coeff(0, 0, 2) = QComplex(mpq_class(s[2][2]));
    q.coeff(1, 1, 0) = QComplex(mpq_class(2 * s[0][1]));
    q.coeff(1, 0, 1) = QComplex(mpq_class(2 * s[0][2]));
    q.coeff(0, 1, 1) = QComplex(mpq_class(2 * s[1][2]));
    return q;
  }
}

/// Product of random lines and conics of total degree d.
ExactForm conic_line_product(Rng& rng, int d, int bound) {
  const int conics = static_cast<int>(rng.uniform_int(0, d / 2));
  ExactForm h = ExactForm::constant(QComplex(1));
  for (int k = 0; k < conics; ++k) h = h * random_conic(rng, bound);
  for (int k = 0; k < d - 2 * conics; ++k) h = h * random_line(rng, bound);
  return h;
}

ExactForm random_dense(Rng& rng, int d, int bound) {
  for (;;) {
    ExactForm h(d);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = rand_int(rng, bound);
    if (!h.is_zero()) return h;
  }
}

struct TrialResult {
  json record;
  std::optional<AnalysisReport> report;
  bool candidate = false;
};

TrialResult run_trial(const HuntConfig& cfg, int trial) {
  TrialResult out;
  const std::uint64_t tseed = mix_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  json rec{{"trial", trial},
           {"seed", std::to_string(tseed)},
           {"degree", cfg.degree},
           {"template", std::string(to_string(cfg.kind))},
           {"coefficient_bound", cfg.coefficient_bound}};
  const auto [f, g] = hunt_generators(cfg, trial);
  rec["f"] = format_form(f);
  rec["g"] = format_form(g);
  try {
    AnalysisReport r = analyze_pencil(f, g, tseed, cfg.tol);
    rec["status"] = "analyzed";
    rec["m"] = r.m;
    rec["p"] = r.p;
    rec["qbar"] = r.qbar;
    json verdicts = json::array();
    bool violation = false;
    for (const auto& v : r.verdicts) {
      verdicts.push_back({{"name", v.name}, {"status", std::string(to_string(v.status))}});
      if (v.name == "member-count-bound" && v.status == Status::Fail) violation = true;
    }
    rec["verdicts"] = verdicts;
    rec["violation"] = violation;
    out.candidate = r.m >= 5;
    out.report = std::move(r);
  } catch (const Error& e) {
    rec["status"] = "skipped";
    rec["error"] = e.what();
  } catch (const std::exception& e) {
    rec["status"] = "skipped";
    rec["error"] = std::string("internal: ") + e.what();
  }
  out.record = std::move(rec);
  return out;
}

}  // namespace

Template parse_template(const std::string& name) {
  if (name == "random-dense") return Template::RandomDense;
  if (name == "conic-line-pair") return Template::ConicLinePair;
  if (name == "pa-like") return Template::PaLike;
  throw Error(Errc::BadParameter, "unknown template '" + name + "'");
}

std::string_view to_string(Template t) {
  switch (t) {
    case Template::RandomDense: return "random-dense";
    case Template::ConicLinePair: return "conic-line-pair";
    case Template::PaLike: return "pa-like";
  }
  return "unknown";
}

std::pair<ExactForm, ExactForm> hunt_generators(const HuntConfig& cfg, int trial) {
  if (cfg.degree < 3) throw Error(Errc::BadParameter, "hunt degree must be at least 3");
  Rng rng(mix_seed(cfg.seed ^ 0x5eedULL, static_cast<std::uint64_t>(trial)));
  const int d = cfg.degree, b = cfg.coefficient_bound;
  switch (cfg.kind) {
    case Template::RandomDense: return {random_dense(rng, d, b), random_dense(rng, d, b)};
    case Template::ConicLinePair: {
      ExactForm f = conic_line_product(rng, d, b);
      ExactForm g = conic_line_product(rng, d, b);
      return {f, g};
    }
    case Template::PaLike: {
      // Two members each holding a line through [0:0:1], as in the P_a family.
      const ExactForm x = ExactForm::variable(Var::X), y = ExactForm::variable(Var::Y);
      const QComplex a = rand_int(rng, b), c = rand_int(rng, b);
      ExactForm f = (x - a * y) * conic_line_product(rng, d - 1, b);
      ExactForm g = (c * x - y) * conic_line_product(rng, d - 1, b);
      return {f, g};
    }
  }
  throw Error(Errc::BadParameter, "unknown template");
}

HuntSummary run_hunt(const HuntConfig& cfg, const std::function<void(const json&)>& sink,
                     const std::function<void(const json&)>& candidate_sink,
                     const std::function<void(const AnalysisReport&)>& on_report) {
  if (cfg.trials < 0) throw Error(Errc::BadParameter, "negative trial count");
  if (cfg.degree < 3) throw Error(Errc::BadParameter, "hunt degree must be at least 3");
  HuntSummary sum;
  const int n = cfg.trials;
  std::vector<std::optional<TrialResult>> results(n);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<int> next{0};

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      TrialResult r = run_trial(cfg, i);
      {
        std::lock_guard lock(mu);
        results[i] = std::move(r);
      }
      ready.notify_one();
    }
  };
  const int nw = std::max(1, std::min(cfg.workers, std::max(1, n)));
  std::vector<std::thread> pool;
  for (int w = 0; w < nw; ++w) pool.emplace_back(worker);

  // Single writer, in trial order.
  for (int i = 0; i < n; ++i) {
    TrialResult r;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return results[i].has_value(); });
      r = std::move(*results[i]);
      results[i].reset();
    }
    ++sum.records;
    if (r.report) {
      ++sum.analyzed;
      if (r.record.at("violation").get<bool>()) ++sum.violations;
      if (any_failed(r.report->verdicts)) ++sum.check_failures;
      if (on_report) on_report(*r.report);
    } else {
      ++sum.skipped;
    }
    sink(r.record);
    if (r.candidate) {
      ++sum.candidates;
      if (candidate_sink) candidate_sink(r.record);
    }
  }
  for (auto& t : pool) t.join();
  return sum;
}

}  // namespace clp
