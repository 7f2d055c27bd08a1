#include "apxbsp/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "apxbsp/inverse.hpp"

namespace apxbsp {

int worker_count() {
  if (const char* env = std::getenv("APXBSP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers = std::min(worker_count(), count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Spectrum SuiteCase::spectrum() const { return generate_spectrum(kind, size, decay, seed, p); }

std::string SuiteCase::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "#" << index << " (size " << size << ", decay " << decay << ", seed "
     << seed << ", alpha " << alpha << ", p " << p << ", n " << n << ")";
  return os.str();
}

std::vector<SuiteCase> make_corpus(SpectrumKind kind, int count, std::uint64_t master_seed) {
  Rng rng(master_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(kind) + 1)));
  const double taus[] = {0.5, 2.0, 0.75 * std::numbers::pi};
  std::vector<SuiteCase> out(count);
  for (int i = 0; i < count; ++i) {
    SuiteCase& c = out[i];
    c.index = i;
    c.kind = kind;
    c.size = kind == SpectrumKind::lacunary ? rng.uniform_int(3, 10) : rng.uniform_int(4, 32);
    c.decay = rng.uniform(0.5, 2.5);
    c.seed = rng.next();
    c.alpha = 1.0 + i % 2;
    c.p = 1.0 + (i / 2) % 3;
    c.n = rng.uniform_int(1, c.size);
    c.tau_flat = taus[i % 3];
  }
  return out;
}

std::vector<SuiteCase> expand_orders(const std::vector<SuiteCase>& cases) {
  std::vector<SuiteCase> out;
  out.reserve(cases.size() * 6);
  for (const SuiteCase& base : cases)
    for (double alpha : {1.0, 2.0})
      for (double p : {1.0, 2.0, 3.0}) {
        SuiteCase c = base;
        c.index = static_cast<int>(out.size());
        c.alpha = alpha;
        c.p = p;
        out.push_back(c);
      }
  return out;
}

Status SuiteSummary::status() const {
  if (failed > 0) return Status::fail;
  if (inconclusive > 0) return Status::inconclusive;
  return passed > 0 ? Status::pass : Status::not_applicable;
}

namespace {

struct CheckResult {
  std::string name;
  InequalityReport report;
};

SuiteSummary aggregate(const std::vector<SuiteCase>& cases,
                       const std::vector<std::vector<CheckResult>>& results, double seconds) {
  SuiteSummary s;
  s.cases = static_cast<int>(cases.size());
  s.seconds = seconds;
  std::map<std::string, double> worst;
  for (std::size_t i = 0; i < results.size(); ++i)
    for (const CheckResult& c : results[i]) {
      ++s.checks;
      switch (c.report.status) {
        case Status::pass: ++s.passed; break;
        case Status::fail: ++s.failed; break;
        case Status::inconclusive: ++s.inconclusive; break;
        case Status::not_applicable: ++s.not_applicable; break;
      }
      if (c.report.status != Status::not_applicable) {
        double& w = worst[c.name];
        if (std::isfinite(c.report.ratio)) w = std::max(w, c.report.ratio);
      }
      if (c.report.status == Status::fail || c.report.status == Status::inconclusive)
        s.failures.push_back({cases[i].describe(), c.name, c.report.lhs, c.report.rhs,
                              to_string(c.report.status)});
    }
  s.max_ratio.assign(worst.begin(), worst.end());
  return s;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SuiteSummary run_direct_suite(const std::vector<SuiteCase>& cases, const SuiteOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<CheckResult>> results(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    const SuiteCase& c = cases[i];
    const Spectrum s = c.spectrum();
    const StepWeight phi = StepWeight::alpha(c.alpha);
    DirectOptions opt;
    opt.grid = o.grid;
    opt.ugrid = o.ugrid;
    auto& out = results[i];
    out.push_back({"pointwise", verify_direct(s, c.n, phi, DirectMode::pointwise_sharp, opt)});
    out.push_back(
        {"pointwise_uniform", verify_direct(s, c.n, phi, DirectMode::pointwise_uniform, opt)});
    out.push_back({"averaged_sin", verify_direct(s, c.n, phi, DirectMode::averaged_sin, opt)});
    opt.tau = c.tau_flat;
    out.push_back({"averaged_flat", verify_direct(s, c.n, phi, DirectMode::averaged_flat, opt)});
  });
  return aggregate(cases, results, elapsed(t0));
}

SuiteSummary run_inverse_suite(const std::vector<SuiteCase>& cases, const SuiteOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<CheckResult>> results(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    const SuiteCase& c = cases[i];
    const Spectrum s = c.spectrum();
    const StepWeight phi = StepWeight::alpha(c.alpha);
    auto& out = results[i];
    const InequalityReport general =
        verify_inverse(s, c.n, phi, std::numbers::pi, InverseForm::general, 0.0, o.grid);
    const InequalityReport power =
        verify_inverse(s, c.n, phi, std::numbers::pi, InverseForm::power, 0.0, o.grid);
    const InequalityReport gap =
        verify_inverse(s, c.n, phi, std::numbers::pi, InverseForm::gap, 0.0, o.grid);
    out.push_back({"inverse_general", general});
    out.push_back({"inverse_power", power});
    out.push_back({"inverse_gap", gap});
    if (power.status == Status::not_applicable) return;
    auto dominated = [](double a, double b) {
      return a <= b + 1e-10 * std::max(std::abs(a), std::abs(b));
    };
    InequalityReport chain;
    chain.direction = "inverse";
    chain.formula = "dominance_chain";
    chain.lhs = general.rhs;
    chain.rhs = gap.rhs;
    chain.ratio = gap.rhs > 0.0 ? general.rhs / gap.rhs : 0.0;
    chain.status = dominated(general.rhs, power.rhs) && dominated(power.rhs, gap.rhs)
                       ? Status::pass
                       : Status::fail;
    out.push_back({"dominance_chain", chain});
  });
  return aggregate(cases, results, elapsed(t0));
}

}  // namespace apxbsp
