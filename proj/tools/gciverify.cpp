// gciverify: command-line front end for the correlation verifiers.

#include "gci/config.hpp"
#include "gci/correlation.hpp"
#include "gci/mc_kernel.hpp"
#include "gci/report.hpp"
#include "gci/search.hpp"
#include "gci/transport.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace gci;

constexpr int kExitMalformed = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::size_t dim_of(const Json& config) {
  if (config.contains("measure")) return static_cast<std::size_t>(dim(parse_measure(config.at("measure"))));
  if (config.contains("sigma")) return static_cast<std::size_t>(parse_matrix(config.at("sigma")).rows());
  throw ConfigError("config needs \"measure\" or \"sigma\" to fix the dimension");
}

const Json& need(const Json& config, const char* key) {
  if (!config.contains(key)) throw ConfigError(std::string("config: missing \"") + key + "\"");
  return config.at(key);
}

double ball_radius(const Json& config) {
  const double r = need(config, "ball_radius").get<double>();
  if (!(r >= 0.0)) throw ConfigError("ball_radius must be nonnegative");
  return r;
}

struct VerifyArgs {
  std::string theorem;
  std::string config;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
};

VerificationReport run_verify(const VerifyArgs& args, const Json& config) {
  Budgets budgets = parse_budgets(config.value("budgets", Json()), Budgets{});
  if (args.samples) budgets.samples = *args.samples;
  const std::uint64_t seed = args.seed ? *args.seed : config.value("seed", std::uint64_t{0});
  const std::string& t = args.theorem;
  VerificationReport r;
  if (t == "1.1") {
    r = verify_theorem_1_1(parse_body(need(config, "A")), parse_radial(need(config, "measure")), ball_radius(config),
                           budgets, seed);
  } else if (t == "2.1") {
    const RadialDensity mu = parse_radial(need(config, "measure"));
    r = verify_theorem_2_1(parse_field(need(config, "field"), static_cast<std::size_t>(mu.dim())), mu,
                           ball_radius(config), budgets, seed);
  } else if (t == "1.2") {
    r = verify_theorem_1_2(parse_body(need(config, "A")), parse_product(need(config, "measure")),
                           parse_body(need(config, "B")), budgets, seed);
  } else if (t == "3.1") {
    const ProductDensity mu = parse_product(need(config, "measure"));
    r = verify_theorem_3_1(parse_field(need(config, "field"), static_cast<std::size_t>(mu.dim())), mu,
                           parse_body(need(config, "B")), budgets, seed);
  } else if (t == "4.1") {
    const Matrix sigma = parse_matrix(need(config, "sigma"));
    r = verify_theorem_4_1(parse_field(need(config, "field"), static_cast<std::size_t>(sigma.rows())), sigma,
                           parse_phi(need(config, "phi")), budgets, seed);
  } else {
    const Matrix sigma = parse_matrix(need(config, "sigma"));
    std::vector<int> ladder = {4, 16, 64};
    if (config.contains("ladder")) ladder = config.at("ladder").get<std::vector<int>>();
    r = verify_corollary(parse_body(need(config, "A")), sigma, budgets, seed, ladder);
  }
  r.provenance.config_hash = fnv1a_hex(config.dump());
  return r;
}

int cmd_verify(const VerifyArgs& args) {
  const Json config = load_json_file(args.config);
  VerificationReport r;
  try {
    r = run_verify(args, config);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const DimensionError& e) {
    throw ConfigError(e.what());
  }
  write_output(args.out, serialize(r));
  std::cout << summary_line(r) << '\n';
  if (r.verdict == Verdict::inapplicable_hypothesis) {
    for (const auto& h : r.hypotheses)
      if (!h.passed) std::cerr << "hypothesis " << h.name << " fails: " << h.detail << '\n';
  }
  return exit_code(r.verdict);
}

struct ProfileArgs {
  std::string config;
  double t_min = 0.0;
  double t_max = 4.0;
  std::size_t t_steps = 33;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_profile(const ProfileArgs& args) {
  const Json config = load_json_file(args.config);
  const RadialDensity mu = parse_radial(need(config, "measure"));
  const ScalarField f = parse_field(need(config, "field"), static_cast<std::size_t>(mu.dim()));
  Budgets budgets = parse_budgets(config.value("budgets", Json()), Budgets{});
  if (args.samples) budgets.samples = *args.samples;
  if (args.t_steps < 2 || !(args.t_max > args.t_min) || args.t_min < 0.0)
    throw ConfigError("profile grid needs 0 <= t-min < t-max and at least 2 steps");
  const PhiProfile p =
      phi_profile(f, mu, linear_grid(args.t_min, args.t_max, args.t_steps), budgets.samples, budgets.directions,
                  args.seed, budgets.exec);
  std::ostringstream os;
  os << "t,phi,phi_se,dphi\n";
  for (std::size_t i = 0; i < p.t.size(); ++i)
    os << num(p.t[i]) << ',' << num(p.phi[i]) << ',' << num(p.phi_se[i]) << ',' << num(p.dphi[i]) << '\n';
  os << "t1_estimate," << (p.t1 ? num(*p.t1) : std::string("nan")) << ",,\n";
  write_output(args.out, os.str());
  std::cout << "profile: " << p.t.size() << " points, method " << to_string(p.method) << ", "
            << (p.unimodal ? "unimodal" : "not unimodal") << ", t1 = " << (p.t1 ? num(*p.t1) : "none") << '\n';
  return 0;
}

struct ScanArgs {
  std::string broken;
  std::size_t instances = 100;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_scan(const ScanArgs& args) {
  if (std::find(kBrokenHypotheses.begin(), kBrokenHypotheses.end(), args.broken) == kBrokenHypotheses.end())
    throw ConfigError("unknown hypothesis \"" + args.broken + "\"");
  Budgets budgets;
  budgets.samples = args.samples;
  const BatchReport r = necessity_scan(args.broken, args.instances, budgets, args.seed);
  write_output(args.out, to_csv(r));
  std::cout << "scan " << args.broken << ": " << count_negative(r) << " of " << r.rows.size()
            << " instances with gap < -" << kViolationSigmas << " SE\n";
  return 0;
}

struct BatchArgs {
  std::string theorem;
  std::size_t instances = 100;
  std::vector<std::size_t> dims = {1, 2, 3, 5};
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_batch(const BatchArgs& args) {
  Budgets budgets;
  budgets.samples = args.samples;
  BatchReport r;
  try {
    r = batch_verify(args.theorem, args.instances, args.dims, budgets, args.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_output(args.out, to_csv(r));
  std::cout << "batch " << args.theorem << ": " << r.confirmed << " confirmed, " << r.inconclusive << " inconclusive, "
            << r.violated << " violated, " << r.inapplicable << " inapplicable\n";
  return r.violated > 0 ? 1 : 0;
}

struct TransportArgs {
  std::string source;
  std::string target;
  std::size_t points = 2001;
  std::string out;
};

int cmd_transport(const TransportArgs& args) {
  const Density1D source = parse_density_1d(load_json_file(args.source));
  const Density1D target = parse_density_1d(load_json_file(args.target));
  if (args.points < 3 || args.points % 2 == 0) throw ConfigError("--points must be odd and at least 3");
  const TransportMap1D map = monotone_map(source, target, args.points);
  write_output(args.out, to_csv(map));
  const ContractionResult c = contraction_check(map);
  const OddnessResult o = oddness_check(map);
  std::cout << "transport: max increment ratio " << num(c.max_increment_ratio) << " ("
            << (c.passed ? "contraction" : "not a contraction") << "), oddness defect " << num(o.max_defect)
            << ", push-forward error " << num(map.push_forward_error()) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("GCI_NUM_THREADS")) {
    try {
      set_thread_count(std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring GCI_NUM_THREADS=" << env << '\n';
    }
  }

  CLI::App app{"Numerical verification of correlation inequalities"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "verify one instance and write a JSON report");
  verify->add_option("--theorem", va.theorem)->required()->check(CLI::IsMember({"1.1", "1.2", "2.1", "3.1", "4.1", "corollary"}));
  verify->add_option("--config", va.config)->required();
  verify->add_option("--samples", va.samples);
  verify->add_option("--seed", va.seed);
  verify->add_option("--out", va.out);

  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "tabulate Phi(t) and Phi'(t) as CSV");
  profile->add_option("--config", pa.config)->required();
  profile->add_option("--t-min", pa.t_min);
  profile->add_option("--t-max", pa.t_max);
  profile->add_option("--t-steps", pa.t_steps);
  profile->add_option("--samples", pa.samples);
  profile->add_option("--seed", pa.seed);
  profile->add_option("--out", pa.out);

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "search for negative gaps with one hypothesis broken");
  scan->add_option("--break", sa.broken)->required();
  scan->add_option("--instances", sa.instances);
  scan->add_option("--samples", sa.samples);
  scan->add_option("--seed", sa.seed);
  scan->add_option("--out", sa.out);

  BatchArgs ba;
  auto* batch = app.add_subcommand("batch", "verify random instances and write a CSV");
  batch->add_option("--theorem", ba.theorem)->required();
  batch->add_option("--instances", ba.instances);
  batch->add_option("--dims", ba.dims)->delimiter(',');
  batch->add_option("--samples", ba.samples);
  batch->add_option("--seed", ba.seed);
  batch->add_option("--out", ba.out);

  TransportArgs ta;
  auto* transport = app.add_subcommand("transport", "tabulate the monotone map between two 1D densities");
  transport->add_option("--source", ta.source)->required();
  transport->add_option("--target", ta.target)->required();
  transport->add_option("--points", ta.points);
  transport->add_option("--out", ta.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*profile) return cmd_profile(pa);
    if (*scan) return cmd_scan(sa);
    if (*batch) return cmd_batch(ba);
    if (*transport) return cmd_transport(ta);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
