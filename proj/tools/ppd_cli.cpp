#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppd/criteria.hpp"
#include "ppd/errors.hpp"
#include "ppd/extremal.hpp"
#include "ppd/json_io.hpp"
#include "ppd/transform.hpp"

namespace {

using nlohmann::json;
using namespace ppd;

constexpr double kPi = 3.141592653589793238462643383279502884;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Range {
  double start;
  double stop;
  int count;

  double at(int i) const {
    if (count == 1) return start;
    if (i + 1 == count) return stop;
    return start + i * (stop - start) / (count - 1);
  }
};

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) return {std::stod(parts[0]), std::stod(parts[0]), 1};
    if (parts.size() == 3) {
      Range r{std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])};
      if (r.count >= 1) return r;
    }
  } catch (const std::exception&) {
  }
  throw UsageError("range must be 'start:stop:count' with count >= 1, or a single number: '" + text + "'");
}

Rect parse_region(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  } catch (const std::exception&) {
    v.clear();
  }
  if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2]))
    throw UsageError("region must be 're0,re1,im0,im1' with re0 < re1 and im0 < im1: '" + text + "'");
  return {v[0], v[1], v[2], v[3]};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct FuncArgs {
  std::string func;
  std::string file;
  int dim = 0;

  RadialFunction load() const {
    if (func.empty() == file.empty()) throw UsageError("give exactly one of --func and --file");
    std::string text = func;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read descriptor file '" + file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw DescriptorError(std::string("descriptor is not valid JSON: ") + e.what());
    }
    if (dim > 0 && j.is_object()) j["dim"] = dim;
    return parse_descriptor(j, dim > 0 ? dim : 1);
  }
};

void add_func_options(CLI::App* cmd, FuncArgs& a) {
  cmd->add_option("--func", a.func, "Function descriptor as inline JSON");
  cmd->add_option("--file", a.file, "File holding the function descriptor");
  cmd->add_option("--dim", a.dim, "Dimension (overrides the descriptor's top-level dim)");
}

void print_table(const char* xname, const char* yname, const Range& r, const std::function<double(double)>& f,
                 bool as_json) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < r.count; ++i) {
    xs.push_back(r.at(i));
    ys.push_back(f(xs.back()));
  }
  if (as_json) {
    std::cout << json{{xname, xs}, {yname, ys}}.dump() << "\n";
    return;
  }
  std::cout << xname << "," << yname << "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) std::cout << fmt(xs[i]) << "," << fmt(ys[i]) << "\n";
}

int fail(int code, const std::string& type, const std::string& message) {
  std::cerr << json{{"error", type}, {"message", message}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive positive-definite radial functions: evaluation, transforms, checks and certificates"};
  app.require_subcommand(1);

  FuncArgs fa;
  std::string points = "0:2:5";
  std::string xi = "0:2:5";
  std::string region_arg;
  std::string criterion;
  double tol = -1.0;
  std::uint64_t seed = 1;
  bool as_json = false;
  bool as_csv = false;
  std::vector<std::string> certify_args;
  double theta = 0.25 * kPi;

  auto* eval = app.add_subcommand("eval", "Evaluate the profile: CSV columns x,f");
  add_func_options(eval, fa);
  eval->add_option("--points", points, "Range start:stop:count")->capture_default_str();

  auto* transform = app.add_subcommand("transform", "Radial Fourier transform: CSV columns xi,fhat");
  add_func_options(transform, fa);
  transform->add_option("--xi", xi, "Range start:stop:count")->capture_default_str();

  for (auto* cmd : {eval, transform}) {
    cmd->add_flag("--json", as_json, "Print {x: [...], f: [...]} instead of CSV");
    cmd->add_flag("--csv", as_csv, "Print CSV (default)");
  }

  auto* zeros = app.add_subcommand("zeros", "Zeros of the transform extension in a rectangle (JSON)");
  add_func_options(zeros, fa);
  zeros->add_option("--region", region_arg, "re0,re1,im0,im1 (default -10,10,-5,5)");
  zeros->add_option("--tol", tol, "Newton residual tolerance (default 1e-12)");

  auto* check = app.add_subcommand("check", "Run a criterion and print its verdict (JSON); exit 1 when it fails");
  add_func_options(check, fa);
  check->add_option("--criterion", criterion, "Criterion")
      ->required()
      ->check(CLI::IsMember({"nonneg", "posdef", "gram", "polya", "gneiting", "cm"}));
  check->add_option("--tol", tol,
                    "Tolerance (defaults: nonneg 1e-12, posdef 1e-10, gram 1e-10, polya 1e-9, gneiting 1e-9, cm 1e-9)");
  check->add_option("--seed", seed, "Gram sampler seed")->capture_default_str();
  check->add_option("--xi", xi, "posdef: transform grid 0:xi_max:points (default 0:10:401)");

  auto* certify = app.add_subcommand("certify", "Extremality certificate (JSON): --func, or 'hermite4 a b'");
  add_func_options(certify, fa);
  certify->add_option("args", certify_args, "hermite4 a b");
  certify->add_option("--region", region_arg, "Search rectangle for compact support (default -10,10,-5,5)");
  certify->add_option("--tol", tol, "Hermite root tolerance (default 1e-6)");

  auto* counter = app.add_subcommand("counterexample", "Double-zero solve for f_{r,theta} with its zero report (JSON)");
  counter->add_option("theta", theta, "Angle in (0, pi/2)")->capture_default_str();
  counter->add_option("--region", region_arg, "Zero search rectangle (default -5.25,5.25,-2,2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (as_json && as_csv) throw UsageError("--json and --csv are exclusive");
    if (*eval) {
      const auto f = fa.load();
      print_table("x", "f", parse_range(points), [&](double x) { return f(x); }, as_json);
      return 0;
    }
    if (*transform) {
      const auto f = fa.load();
      const bool improper = !f.integrable();
      print_table(
          "xi", "fhat", parse_range(xi),
          [&](double s) { return improper ? fourier_radial_improper(f, std::abs(s)) : fourier_radial(f, std::abs(s)); },
          as_json);
      return 0;
    }
    if (*zeros) {
      const auto f = fa.load();
      const Rect region = region_arg.empty() ? kDefaultSearch : parse_region(region_arg);
      std::cout << to_json(find_zeros(f, region, tol > 0 ? tol : 1e-12)).dump() << "\n";
      return 0;
    }
    if (*check) {
      const auto f = fa.load();
      auto pick = [&](double fallback) { return tol > 0 ? tol : fallback; };
      Verdict v;
      if (criterion == "nonneg") {
        const double R = f.support_radius();
        v = check_nonneg(f, std::isfinite(R) ? R : f.decay().horizon(1e-12), pick(1e-12));
      } else if (criterion == "posdef") {
        const Range r = check->count("--xi") ? parse_range(xi) : Range{0.0, 10.0, 401};
        v = check_posdef_fourier(f, r.stop, pick(1e-10), std::max(r.count, 2));
      } else if (criterion == "gram") {
        v = check_posdef_gram(f, 12, 40, pick(1e-10), seed);
      } else if (criterion == "polya") {
        v = check_polya(f, pick(1e-9));
      } else if (criterion == "gneiting") {
        v = check_gneiting(f, pick(1e-9));
      } else {
        v = check_completely_monotone(generator_of(f), 8, pick(1e-9));
      }
      std::cout << to_json(v).dump() << "\n";
      return v.passed ? 0 : 1;
    }
    if (*certify) {
      Certificate c;
      const double htol = tol > 0 ? tol : 1e-6;
      if (!certify_args.empty()) {
        if (certify_args.size() != 3 || certify_args[0] != "hermite4" || !fa.func.empty() || !fa.file.empty())
          throw UsageError("positional form is 'certify hermite4 a b'");
        double a = 0.0;
        double b = 0.0;
        try {
          a = std::stod(certify_args[1]);
          b = std::stod(certify_args[2]);
        } catch (const std::exception&) {
          throw UsageError("hermite4 needs numeric a and b");
        }
        c = certify_hermite(a, b, htol);
      } else {
        const auto f = fa.load();
        if (f.as<GaussianPoly>()) {
          c = certify_hermite(f, htol);
        } else if (const auto* m = f.as<Mixture>()) {
          c = not_extremal_mixture(m->base, m->measure);
        } else {
          c = certify_compact(f, region_arg.empty() ? kDefaultSearch : parse_region(region_arg));
        }
      }
      std::cout << to_json(c).dump() << "\n";
      return 0;
    }
    if (*counter) {
      const auto dz = solve_double_zero(theta);
      const Rect region = region_arg.empty() ? Rect{-5.25, 5.25, -2.0, 2.0} : parse_region(region_arg);
      const auto rep = find_zeros(make_f_zeta(dz.r, theta), region);
      std::cout << json{{"r", dz.r}, {"x_zeta", dz.x_zeta}, {"zero_report", to_json(rep)}}.dump() << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    return fail(2, "usage", e.what());
  } catch (const DescriptorError& e) {
    return fail(2, "descriptor", e.what());
  } catch (const UnsupportedOperation& e) {
    return fail(2, "unsupported", e.what());
  } catch (const PreconditionFailed& e) {
    return fail(1, "precondition", e.what());
  } catch (const NoSolution& e) {
    return fail(1, "no_solution", e.what());
  } catch (const std::exception& e) {
    return fail(2, "error", e.what());
  }
  return 2;
}
