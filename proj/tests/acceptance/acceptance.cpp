// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "gci/correlation.hpp"
#include "gci/integration.hpp"
#include "gci/mc_kernel.hpp"
#include "gci/rng.hpp"
#include "gci/search.hpp"
#include "gci/transport.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace gci;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v, int precision = 7) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << title << " | " << o.detail << " ["
            << num(seconds_since(t0), 3) << " s]" << std::endl;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args, const std::string& env, const fs::path& log) {
  const std::string cmd = env + " " + GCIVERIFY_PATH + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac1() {
  const auto t0 = Clock::now();
  const auto p = phi_profile(gaussian_bump(2, 0.5), gaussian(2), linear_grid(0.0, 4.0, 81), 0, 256, 1);
  const double elapsed = seconds_since(t0);
  const double expected = std::sqrt(2 * std::log(2.0));
  const bool ok = p.t1 && std::abs(*p.t1 - expected) <= 1e-3 && elapsed < 5.0 && p.method != MeasureEstimate::Method::mc;
  return {ok, "t1=" + (p.t1 ? num(*p.t1, 10) : std::string("none")) + " expected " + num(expected, 10) + " in " +
                  num(elapsed, 3) + " s, method " + to_string(p.method)};
}

Outcome ac2() {
  const double disk = 1 - std::exp(-0.5);
  const double interval = std::erf(1 / std::sqrt(2.0));
  const auto mc = mc_integral(gaussian(2), indicator_field(ConvexBody::ball(2, 1.0)), 1'000'000, 2024);
  const auto sliced = sliced_measure(gaussian_product(2), ConvexBody::ball(2, 1.0));
  const auto line = sliced_measure(gaussian_product(1), ConvexBody::ball(1, 1.0));
  const bool ok = std::abs(mc.value - disk) <= 4 * mc.std_error && std::abs(sliced.value - disk) <= 1e-6 &&
                  std::abs(line.value - interval) <= 1e-6;
  return {ok, "mc " + num(mc.value) + " +- " + num(mc.std_error, 3) + ", sliced " + num(sliced.value, 10) +
                  " (target " + num(disk, 10) + "), interval " + num(line.value, 10) + " (target " + num(interval, 10) + ")"};
}

Outcome ac3() {
  set_thread_count(1);
  Budgets b;
  b.samples = 100'000;
  b.exec = Execution::serial;
  const auto t0 = Clock::now();
  const auto r = batch_verify("1.1", 100, {1, 2, 3, 5}, b, 31337);
  const double elapsed = seconds_since(t0);
  set_thread_count(0);
  return {r.violated == 0 && r.confirmed >= 90 && elapsed < 600.0,
          std::to_string(r.confirmed) + " confirmed, " + std::to_string(r.inconclusive) + " inconclusive, " +
              std::to_string(r.violated) + " violated, " + std::to_string(r.inapplicable) + " inapplicable in " +
              num(elapsed, 4) + " s"};
}

Outcome ac4() {
  Budgets b;
  b.samples = 100'000;
  const auto r = batch_verify("1.2", 50, {2, 3}, b, 4242);
  return {r.violated == 0 && r.inapplicable == 0,
          std::to_string(r.confirmed) + " confirmed, " + std::to_string(r.inconclusive) + " inconclusive, " +
              std::to_string(r.violated) + " violated, " + std::to_string(r.inapplicable) + " inapplicable"};
}

Outcome ac5() {
  RandomStream rng(555, 0);
  double worst = HUGE_VAL;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 200);
    DiscreteMeasure nu;
    std::vector<double> f(n);
    std::vector<double> g(n);
    double x = 0.0;
    double fv = rng.normal();
    double gv = rng.normal();
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x += 0.01 + rng.uniform();
      nu.points.push_back(x);
      nu.weights.push_back(rng.uniform() < 0.1 ? 0.0 : rng.uniform());
      if (rng.uniform() < 0.4) fv += sign * rng.uniform();
      if (rng.uniform() < 0.4) gv += sign * rng.uniform();
      f[i] = fv;
      g[i] = gv;
    }
    if (nu.weights[0] == 0.0) nu.weights[0] = 1.0;
    worst = std::min(worst, fkg_check(nu, f, g).gap);
  }
  const auto t = linear_grid(0.0, 1.0, 100001);
  const double uniform = fkg_check(trapezoid_measure(t, std::vector<double>(t.size(), 1.0)), t, t).gap;
  return {worst >= -1e-12 && std::abs(uniform - 1.0 / 12.0) <= 1e-10,
          "min gap over 1000 pairs " + num(worst, 4) + ", uniform case " + num(uniform, 15)};
}

Outcome ac6() {
  RandomStream rng(66, 0);
  double worst_ratio = 0.0;
  double worst_odd = 0.0;
  bool all = true;
  for (int k = 0; k < 20; ++k) {
    const double rate = 0.1 + 1.9 * rng.uniform();
    const double power = 1.0 + 3.0 * rng.uniform();
    const auto target = tilted_normal(1.0, [rate, power](double x) { return std::exp(-rate * std::pow(std::abs(x), power)); },
                                      "exp(-a|x|^p)");
    const auto map = monotone_map(normal_density(1.0), target);
    const auto c = contraction_check(map);
    const auto o = oddness_check(map);
    worst_ratio = std::max(worst_ratio, c.max_increment_ratio);
    worst_odd = std::max(worst_odd, o.max_defect);
    all = all && c.max_increment_ratio <= 1 + 1e-4 && o.max_defect <= 1e-6;
  }
  const auto control = contraction_check(monotone_map(normal_density(0.5), normal_density(1.0)));
  const bool ok = all && std::abs(control.max_increment_ratio - 2.0) <= 1e-3 && !control.passed;
  return {ok, "max ratio " + num(worst_ratio, 10) + ", max oddness defect " + num(worst_odd, 3) + ", control ratio " +
                  num(control.max_increment_ratio, 10) + (control.passed ? " (passed)" : " (fails)")};
}

Outcome ac7() {
  Budgets b;
  b.samples = 1'000'000;
  const auto r = verify_theorem_4_1(gaussian_bump(2, 0.5), Matrix::Identity(2, 2), exp_profile(0.5), b, 77);
  const bool ok = std::abs(r.lhs.value - 1.0 / 3.0) <= 4 * r.lhs.std_error && std::abs(r.rhs.value - 0.25) <= 4 * r.rhs.std_error;
  return {ok, "lhs " + num(r.lhs.value) + " +- " + num(r.lhs.std_error, 3) + ", rhs " + num(r.rhs.value) + " +- " +
                  num(r.rhs.std_error, 3) + ", verdict " + to_string(r.verdict)};
}

Outcome ac8() {
  int passed = 0;
  std::string first_failure;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const std::size_t d = 2 + k % 2;
    const auto inst = random_instance({d, BodyKind::polytope, MeasureKind::gaussian, true, false}, 800 + k);
    const auto& a = inst.a;
    bool ok = true;
    std::string why;
    const auto inside = sample_in_body(a, 200, k);
    RandomStream rng(900 + k, 0);
    for (int n : {2, 4, 8}) {
      const FnApproximant fn(a, n);
      const FnApproximant f2n(a, 2 * n);
      for (const auto& x : inside)
        if (fn(x) != 1.0) ok = false, why = "f_n != 1 on A";
      for (int i = 0; i < 300; ++i) {
        Point x(static_cast<Eigen::Index>(d));
        for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = 8 * rng.uniform() - 4;
        const double dist = distance(a, x);
        if (dist > 1.0 / n && fn(x) != 0.0) ok = false, why = "f_n != 0 beyond 1/n";
        if (f2n(x) > fn(x) + 1e-12) ok = false, why = "not monotone in n";
      }
      const ScalarField field = fn_field(a, n);
      if (!all_passed(check_class_Cd(field, Measure(gaussian(static_cast<int>(d))), 64, 16, 10 + k)))
        ok = false, why = "class C_d check failed for n=" + std::to_string(n);
      if (!logconcavity_check(field, 2000, 20 + k).passed) ok = false, why = "log-concavity failed for n=" + std::to_string(n);
    }
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = "polytope " + std::to_string(k) + ": " + why;
  }
  return {passed == 10, std::to_string(passed) + "/10 polytopes pass" + (first_failure.empty() ? "" : "; " + first_failure)};
}

Outcome ac9(const fs::path& dir) {
  const fs::path out = dir / "scan.csv";
  const int code = run_cli("scan --break origin-not-in-A --instances 100 --samples 100000 --seed 9 --out " + out.string(), "",
                           dir / "scan.log");
  std::istringstream csv(slurp(out));
  std::string line;
  std::getline(csv, line);
  int negative = 0;
  int rows = 0;
  double best = HUGE_VAL;
  while (std::getline(csv, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() != 8) continue;
    ++rows;
    const double gap = std::stod(cols[4]);
    const double se = std::stod(cols[5]);
    if (gap < -5 * se) ++negative;
    if (se > 0) best = std::min(best, gap / se);
  }
  return {code == 0 && rows == 100 && negative >= 1,
          "exit " + std::to_string(code) + ", " + std::to_string(negative) + " of " + std::to_string(rows) +
              " instances with gap < -5 SE, most negative gap/SE " + num(best, 4)};
}

Outcome ac10(const fs::path& dir) {
  const fs::path cfg = dir / "square.json";
  std::ofstream(cfg) << R"({"A": {"type": "box", "lo": [-1, -0.5], "hi": [1.5, 1]},
  "measure": {"type": "gaussian", "dim": 2}, "ball_radius": 1.2})";
  std::vector<std::string> outputs;
  int bad = 0;
  for (const std::string env : {"GCI_NUM_THREADS=1", "GCI_NUM_THREADS=1", "GCI_NUM_THREADS=2", "GCI_NUM_THREADS=4"}) {
    const fs::path out = dir / ("r" + std::to_string(outputs.size()) + ".json");
    if (run_cli("verify --theorem 1.1 --config " + cfg.string() + " --samples 300000 --seed 5 --out " + out.string(), env,
                dir / "verify.log") != 0)
      ++bad;
    outputs.push_back(slurp(out));
  }
  bool same = !outputs.front().empty();
  for (const auto& o : outputs) same = same && o == outputs.front();
  return {same && bad == 0, std::to_string(outputs.size()) + " runs (threads 1, 1, 2, 4) " +
                                (same ? "byte-identical" : "differ") + ", " + std::to_string(outputs.front().size()) + " bytes"};
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "gci_acceptance";
  fs::create_directories(dir);
  report("AC1", "closed-form turning point of Phi", ac1);
  report("AC2", "Gaussian measure oracles", ac2);
  report("AC3", "random batch for balls and convex A containing 0", ac3);
  report("AC4", "random batch for projection-closed A and ellipsoids", ac4);
  report("AC5", "discrete FKG inequality", ac5);
  report("AC6", "transport contraction for log-concave tilts", ac6);
  report("AC7", "quadratic-profile closed-form instance", ac7);
  report("AC8", "f_n approximant properties", ac8);
  report("AC9", "necessity scan without the origin hypothesis", [&] { return ac9(dir); });
  report("AC10", "byte-identical reports across thread counts", [&] { return ac10(dir); });
  fs::remove_all(dir);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
