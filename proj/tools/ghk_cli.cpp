// ghk: evaluate Gould-Hopper polynomials, verify their sum rules, and run
// the Monte Carlo distribution checks.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed,
// 2 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ghk/ghk.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& s : ghk::parse_vector(s, ghk::Mode::floating)) {
    if (!s.is_real()) throw ghk::parse_error("sampling inputs must be real");
    out.push_back(s.approx().real());
  }
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << text;
}

struct EvalArgs {
  std::string m, n, x, p, mode = "exact", method = "recurrence";
  bool hermite = false;
};

int run_eval(const EvalArgs& a) {
  const ghk::Mode mode = ghk::parse_mode(a.mode);
  const auto degree = [](const std::string& s) {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos != s.size() || s.front() == '-') throw UsageError("degree must be a natural number: '" + s + "'");
    return static_cast<unsigned>(v);
  };
  if (a.hermite) {
    if (a.n.empty() || a.x.empty()) throw UsageError("eval --hermite needs --n and --x");
    std::cout << ghk::hermite_eval(degree(a.n), ghk::Scalar::parse(a.x, mode)).to_string() << "\n";
    return kExitPass;
  }
  if (a.m.empty() || a.x.empty() || a.p.empty()) throw UsageError("eval needs --m, --x and --p");
  const unsigned m = degree(a.m);
  const auto x = ghk::Scalar::parse(a.x, mode);
  const auto p = ghk::Scalar::parse(a.p, mode);
  ghk::Scalar g;
  if (a.method == "sum")
    g = ghk::gh_eval(m, x, p);
  else if (a.method == "moment")
    g = ghk::gh_moment_oracle(m, x, p);
  else
    g = ghk::gh_eval_recurrence(m, x, p);
  std::cout << g.to_string() << "\n";
  return kExitPass;
}

struct VerifyArgs {
  std::string identity, mode = "exact", output = "-", format = "json";
  double tolerance = 1e-9;
  std::string xv, yv, xm, ym, p, t, dims;
  std::vector<std::string> points;
  int max = -1;
};

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& d : split(s, ',')) out.push_back(std::stoul(d));
  return out;
}

int run_verify(const VerifyArgs& a) {
  const ghk::Mode mode = ghk::parse_mode(a.mode);
  if (mode == ghk::Mode::floating && !(a.tolerance > 0)) throw UsageError("float mode requires --tolerance > 0");
  if (a.format != "json" && a.format != "csv") throw UsageError("unknown format '" + a.format + "'");

  ghk::VerifyDocument doc;
  doc.identity = a.identity;
  doc.mode = mode;
  if (mode == ghk::Mode::floating) doc.tolerance = a.tolerance;

  auto custom_pair = [&]() {
    if (a.xv.empty() != a.yv.empty()) throw UsageError("--xv and --yv must be given together");
    std::vector<ghk::VectorPair> pairs;
    if (!a.xv.empty()) pairs.push_back({ghk::parse_vector(a.xv, ghk::Mode::exact), ghk::parse_vector(a.yv, ghk::Mode::exact)});
    return pairs;
  };

  if (a.identity == "graczyk") {
    ghk::GraczykGrid g;
    g.custom_pairs = custom_pair();
    if (a.max >= 0) g.max_total = static_cast<unsigned>(a.max);
    if (!a.p.empty()) g.p_values = split(a.p, ',');
    if (!a.dims.empty()) g.dims = parse_dims(a.dims);
    doc.grid = ghk::describe(g);
    doc.reports = ghk::sweep_graczyk(g, mode, a.tolerance);
  } else if (a.identity == "inner-product-moments") {
    ghk::InnerMomentGrid g;
    g.custom_pairs = custom_pair();
    if (a.max >= 0) g.max_total = static_cast<unsigned>(a.max);
    if (!a.p.empty()) g.p_values = split(a.p, ',');
    if (!a.dims.empty()) g.dims = parse_dims(a.dims);
    doc.grid = ghk::describe(g);
    doc.reports = ghk::sweep_inner_moments(g, mode, a.tolerance);
  } else if (a.identity == "rotation") {
    ghk::RotationGrid g;
    if (a.max >= 0) g.max_degree = static_cast<unsigned>(a.max);
    if (!a.p.empty()) g.p = a.p;
    if (!a.t.empty()) g.t_values = split(a.t, ',');
    if (!a.dims.empty()) g.dims = parse_dims(a.dims);
    for (const auto& d : g.dims)
      if (d < 2) throw UsageError("rotation needs n >= 2");
    doc.grid = ghk::describe(g);
    doc.reports = ghk::sweep_rotation(g, mode, a.tolerance);
  } else if (a.identity == "factorization") {
    ghk::FactorizationGrid g;
    if (a.max >= 0) g.max_total = static_cast<unsigned>(a.max);
    if (!a.t.empty()) g.t_values = split(a.t, ',');
    if (!a.points.empty()) {
      g.points.clear();
      for (const auto& pt : a.points) {
        const auto parts = split(pt, ',');
        if (parts.size() != 3) throw UsageError("--point expects x,y,p");
        g.points.push_back({parts[0], parts[1], parts[2]});
      }
    }
    doc.grid = ghk::describe(g);
    doc.reports = ghk::sweep_factorization(g, mode, a.tolerance);
  } else if (a.identity == "matrix") {
    ghk::MatrixGrid g;
    if (a.max >= 0) g.max_total = static_cast<unsigned>(a.max);
    if (a.xm.empty() != a.ym.empty()) throw UsageError("--xm and --ym must be given together");
    if (!a.xm.empty()) {
      const auto xm = ghk::parse_matrix(a.xm, mode), ym = ghk::parse_matrix(a.ym, mode);
      doc.grid = {{"xm", a.xm}, {"ym", a.ym}, {"M", "0.." + std::to_string(g.max_total)}};
      for (unsigned total = 0; total <= g.max_total; ++total)
        doc.reports.push_back(ghk::matrix_moment_report(total, xm, ym, a.tolerance));
    } else {
      doc.grid = ghk::describe(g);
      doc.reports = ghk::sweep_matrix(g, mode, a.tolerance);
    }
  } else {
    throw UsageError("unknown identity '" + a.identity +
                     "' (expected graczyk, rotation, factorization, inner-product-moments or matrix)");
  }

  write_output(a.output, a.format == "csv" ? ghk::to_csv(doc) : ghk::to_json(doc).dump(2) + "\n");
  std::cerr << a.identity << " (" << a.mode << "): " << doc.reports.size() - doc.failures() << "/"
            << doc.reports.size() << " passed\n";
  return doc.passed() ? kExitPass : kExitFail;
}

struct SampleArgs {
  std::string target, output = "-", format = "json";
  std::string xv, yv, xm = "1,2;-1,1/2", ym = "0,3;2,-1";
  double p = 1.0;
  unsigned a = 3, b = 4;
  ghk::SamplingConfig config;
  bool ks = false;
};

int run_sample(const SampleArgs& a) {
  if (a.format != "json" && a.format != "csv") throw UsageError("unknown format '" + a.format + "'");
  if (a.config.count < 2) throw UsageError("--count must be at least 2");
  if (a.config.max_order == 0) throw UsageError("--K must be at least 1");
  if (a.config.streams == 0) throw UsageError("--streams must be at least 1");
  ghk::SampleDocument doc;
  doc.target = a.target;
  doc.config = a.config;
  if (a.target == "inner-product") {
    if (a.xv.empty() || a.yv.empty()) throw UsageError("sample inner-product needs --xv and --yv");
    if (!(a.p >= 0)) throw UsageError("sampling needs --p >= 0");
    const auto u = parse_reals(a.xv), v = parse_reals(a.yv);
    doc.params = {{"xv", a.xv}, {"yv", a.yv}, {"p", ghk::detail::double_string(a.p)}, {"p_convention", "sqrt(p)"}};
    doc.test = ghk::inner_product_test(u, v, a.p, a.config, a.ks);
  } else if (a.target == "matrix") {
    const auto xm = ghk::parse_matrix(a.xm, ghk::Mode::floating), ym = ghk::parse_matrix(a.ym, ghk::Mode::floating);
    doc.params = {{"xm", a.xm}, {"ym", a.ym}};
    doc.test = ghk::matrix_trace_test(xm, ym, a.config, a.ks);
  } else if (a.target == "chi-merge") {
    if (a.a == 0 || a.b == 0) throw UsageError("chi-merge needs --a, --b >= 1");
    doc.params = {{"a", std::to_string(a.a)}, {"b", std::to_string(a.b)}};
    doc.test = ghk::chi_merge_test(a.a, a.b, a.config, a.ks);
  } else {
    throw UsageError("unknown sample target '" + a.target + "' (expected inner-product, matrix or chi-merge)");
  }
  write_output(a.output, a.format == "csv" ? ghk::to_csv(doc) : ghk::to_json(doc).dump(2) + "\n");
  std::cerr << a.target << ": " << (doc.test.passed() ? "pass" : "FAIL") << "\n";
  return doc.test.passed() ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gould-Hopper polynomial kernel"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate g_m(x, p) or the Hermite polynomial H_n(x)");
  eval_cmd->add_option("--m", eval.m, "Degree m");
  eval_cmd->add_option("--x", eval.x, "Argument (a/b or a/b+c/di)");
  eval_cmd->add_option("--p", eval.p, "Parameter p");
  eval_cmd->add_flag("--hermite", eval.hermite, "Evaluate H_n(x) instead");
  eval_cmd->add_option("--n", eval.n, "Hermite degree");
  eval_cmd->add_option("--mode", eval.mode, "exact or float");
  eval_cmd->add_option("--method", eval.method, "recurrence, sum or moment");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a sum rule over a grid");
  verify_cmd->add_option("identity", verify.identity,
                         "graczyk | rotation | factorization | inner-product-moments | matrix")
      ->required();
  verify_cmd->add_option("--mode", verify.mode, "exact or float");
  verify_cmd->add_option("--tolerance", verify.tolerance, "Relative tolerance (float mode)");
  verify_cmd->add_option("--output", verify.output, "Report path ('-' for stdout)");
  verify_cmd->add_option("--format", verify.format, "json or csv");
  verify_cmd->add_option("--xv", verify.xv, "First vector, comma separated");
  verify_cmd->add_option("--yv", verify.yv, "Second vector, comma separated");
  verify_cmd->add_option("--xm", verify.xm, "First matrix, rows separated by ';'");
  verify_cmd->add_option("--ym", verify.ym, "Second matrix, rows separated by ';'");
  verify_cmd->add_option("--p", verify.p, "Parameter value(s), comma separated");
  verify_cmd->add_option("--t", verify.t, "Cayley parameters, comma separated");
  verify_cmd->add_option("--n", verify.dims, "Dimensions, comma separated");
  verify_cmd->add_option("--M,--max", verify.max, "Maximum total degree");
  verify_cmd->add_option("--point", verify.points, "Factorization point x,y,p (repeatable)");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo moment matching of a distributional identity");
  sample_cmd->add_option("target", sample.target, "inner-product | matrix | chi-merge")->required();
  sample_cmd->add_option("--xv", sample.xv, "First vector");
  sample_cmd->add_option("--yv", sample.yv, "Second vector");
  sample_cmd->add_option("--xm", sample.xm, "First matrix");
  sample_cmd->add_option("--ym", sample.ym, "Second matrix");
  sample_cmd->add_option("--p", sample.p, "Noise parameter (sqrt(p) scale), p >= 0");
  sample_cmd->add_option("--a", sample.a, "chi-merge: first degrees of freedom");
  sample_cmd->add_option("--b", sample.b, "chi-merge: second degrees of freedom");
  sample_cmd->add_option("--seed", sample.config.seed, "RNG seed");
  sample_cmd->add_option("--count", sample.config.count, "Samples per side");
  sample_cmd->add_option("--K", sample.config.max_order, "Highest moment order");
  sample_cmd->add_option("--z", sample.config.z, "Standard-error multiple");
  sample_cmd->add_option("--streams", sample.config.streams, "Random streams per side");
  sample_cmd->add_option("--output", sample.output, "Report path ('-' for stdout)");
  sample_cmd->add_option("--format", sample.format, "json or csv");
  sample_cmd->add_flag("--ks", sample.ks, "Add a two-sample Kolmogorov-Smirnov diagnostic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*verify_cmd) return run_verify(verify);
    if (*sample_cmd) return run_sample(sample);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ghk::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
