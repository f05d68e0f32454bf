#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include "srgeo/alpha_trig.hpp"
#include "srgeo/errors.hpp"
#include "srgeo/grushin.hpp"
#include "srgeo/singularity.hpp"
#include "srgeo/sl2.hpp"
#include "srgeo/su2.hpp"
#include "srgeo/verify.hpp"

namespace srgeo::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char * kVersion = "1.0.0";

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Config
{
  std::string structure = "grushin";
  double alpha = 1.0;
  std::string base = "0,0";
  std::string covector;
  std::vector<std::string> directions;
  double t = 1.0;
  double s_max = 20.0;
  double delta = 1e-3;
  int points = 201;
  std::string format;
  std::string out;
  std::uint64_t seed = 42;
  std::optional<double> tolerance;
};

std::string num(double x)
{
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Doubles in JSON carry the same 12 significant digits as the text formats.
double rounded(double x) { return std::strtod(num(x).c_str(), nullptr); }

json to_json(const Eigen::VectorXd & v)
{
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(rounded(v[i]));
  return a;
}

std::vector<double> parse_list(const std::string & text, const std::string & flag)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      throw UsageError(flag + ": cannot parse '" + item + "' as a number");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError(flag + ": cannot parse '" + item + "' as a number");
    out.push_back(v);
  }
  return out;
}

int fiber_dim(const std::string & structure) { return structure == "grushin" ? 2 : 3; }

Eigen::VectorXd parse_fiber(const Config & c, const std::string & text, const std::string & flag)
{
  const auto v = parse_list(text, flag);
  const int n = fiber_dim(c.structure);
  if (static_cast<int>(v.size()) != n) {
    throw UsageError(flag + ": " + c.structure + " expects " + std::to_string(n) + " coordinates, got " +
                     std::to_string(v.size()));
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), n);
}

GrushinBase parse_base(const Config & c)
{
  const auto v = parse_list(c.base, "--base");
  if (v.size() != 2) throw UsageError("--base: grushin expects 2 coordinates, got " + std::to_string(v.size()));
  if (!(c.alpha >= 1.0)) throw UsageError("--alpha: must be >= 1");
  return {c.alpha, v[0], v[1]};
}

StructureAdapter adapter_for(const Config & c)
{
  if (c.structure == "su2") return su2_adapter();
  if (c.structure == "sl2") return sl2_adapter();
  return grushin_adapter(parse_base(c));
}

int thread_count()
{
  if (const char * env = std::getenv("SRGEO_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

json config_json(const Config & c, const std::string & command)
{
  json j;
  j["command"] = command;
  j["structure"] = c.structure;
  if (c.structure == "grushin") {
    j["alpha"] = rounded(c.alpha);
    j["base"] = c.base;
  }
  if (!c.covector.empty()) j["covector"] = c.covector;
  if (!c.directions.empty()) j["directions"] = c.directions;
  j["t"] = rounded(c.t);
  j["s_max"] = rounded(c.s_max);
  j["seed"] = c.seed;
  return j;
}

json versions_json()
{
  return {
    {"srgeo", kVersion},
    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                std::to_string(EIGEN_MINOR_VERSION)},
    {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000)},
  };
}

json tolerances_json()
{
  const ScanOptions s;
  const ClassifyOptions k;
  return {
    {"root_tol", s.root_tol},
    {"rank_tol", s.rank_tol},
    {"scan_points", s.scan_points},
    {"transversality_tol", k.transversality_tol},
    {"second_order_threshold", k.second_order_threshold},
  };
}

json envelope(const Config & c, const std::string & command, json results)
{
  json j;
  j["config"] = config_json(c, command);
  j["results"] = std::move(results);
  j["versions"] = versions_json();
  j["tolerances"] = tolerances_json();
  return j;
}

// expmap

struct NamedValues
{
  std::vector<std::pair<std::string, double>> fields;
};

NamedValues expmap_values(const Config & c)
{
  const Eigen::VectorXd l = parse_fiber(c, c.covector, "--covector");
  NamedValues nv;
  if (c.structure == "grushin") {
    const GrushinState s = grushin_exp(parse_base(c), {l[0], l[1]}, c.t);
    nv.fields = {{"x", s.x}, {"y", s.y}, {"u", s.u}, {"v", s.v}};
  } else if (c.structure == "su2") {
    const Su2State s = su2_exp({l[0], l[1], l[2]}, c.t);
    nv.fields = {{"alpha_re", s.point.alpha_re}, {"alpha_im", s.point.alpha_im}, {"beta_re", s.point.beta_re},
                 {"beta_im", s.point.beta_im},   {"u", s.u},                     {"v", s.v},
                 {"w", s.w}};
  } else {
    const Sl2State s = sl2_exp({l[0], l[1], l[2]}, c.t);
    nv.fields = {{"m11", s.g.m11}, {"m12", s.g.m12}, {"m21", s.g.m21}, {"m22", s.g.m22},
                 {"u", s.u},       {"v", s.v},       {"w", s.w}};
  }
  return nv;
}

void emit_expmap(const Config & c, std::ostream & out)
{
  const NamedValues nv = expmap_values(c);
  if (c.format == "json") {
    json r;
    for (const auto & [k, v] : nv.fields) r[k] = rounded(v);
    out << envelope(c, "expmap", r).dump(2) << "\n";
  } else if (c.format == "csv") {
    for (std::size_t i = 0; i < nv.fields.size(); ++i) out << (i ? "," : "") << nv.fields[i].first;
    out << "\n";
    for (std::size_t i = 0; i < nv.fields.size(); ++i) out << (i ? "," : "") << num(nv.fields[i].second);
    out << "\n";
  } else {
    for (const auto & [k, v] : nv.fields) out << std::left << std::setw(9) << k << " " << num(v) << "\n";
  }
}

// conj-scan

std::vector<Eigen::VectorXd> parse_directions(const Config & c)
{
  if (c.directions.empty()) throw UsageError("--direction: at least one direction is required");
  std::vector<Eigen::VectorXd> dirs;
  for (const auto & d : c.directions) {
    Eigen::VectorXd v = parse_fiber(c, d, "--direction");
    if (v.norm() == 0.0) throw UsageError("--direction: must be nonzero");
    dirs.push_back(std::move(v));
  }
  return dirs;
}

std::vector<std::vector<ConjugateRecord>> classified_scan(const Config & c, const StructureAdapter & a)
{
  if (!(c.s_max > 0.0)) throw UsageError("--s-max: must be positive");
  auto rays = scan_rays(a, parse_directions(c), c.s_max, thread_count());
  for (auto & ray : rays) {
    for (auto & r : ray) r.cls = classify(a, r);
  }
  return rays;
}

std::vector<std::string> record_row(const ConjugateRecord & r)
{
  std::vector<std::string> row{num(r.s), std::string(to_string(r.stratum)), std::to_string(r.order),
                               std::string(to_string(r.cls))};
  const Eigen::VectorXd k =
    r.kernel_basis.empty() ? Eigen::VectorXd::Constant(r.covector.size(), std::nan("")) : r.kernel_basis.front();
  for (int i = 0; i < 3; ++i) row.push_back(i < k.size() && std::isfinite(k[i]) ? num(k[i]) : "");
  for (int i = 0; i < 2; ++i) row.push_back(i < r.f_values.size() ? num(r.f_values[i]) : "");
  return row;
}

json record_json(const ConjugateRecord & r, std::size_t ray)
{
  json j;
  j["ray"] = ray;
  j["s"] = rounded(r.s);
  j["covector"] = to_json(r.covector);
  j["stratum"] = std::string(to_string(r.stratum));
  j["order"] = r.order;
  j["class"] = std::string(to_string(r.cls));
  j["kernel"] = r.kernel_basis.empty() ? json::array() : to_json(r.kernel_basis.front());
  j["f"] = to_json(r.f_values);
  j["bracketless"] = r.bracketless;
  return j;
}

void emit_scan(const Config & c, std::ostream & out)
{
  const StructureAdapter a = adapter_for(c);
  const auto rays = classified_scan(c, a);
  if (c.format == "json") {
    json results = json::array();
    for (std::size_t i = 0; i < rays.size(); ++i) {
      for (const auto & r : rays[i]) results.push_back(record_json(r, i));
    }
    out << envelope(c, "conj-scan", results).dump(2) << "\n";
    return;
  }
  if (c.format == "csv") {
    out << "s,stratum,order,class,k1,k2,k3,f0,f1\n";
    for (const auto & ray : rays) {
      for (const auto & r : ray) {
        const auto row = record_row(r);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
      }
    }
    return;
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    out << "ray " << i << " direction (" << c.directions[i] << "): " << rays[i].size() << " conjugate covector(s)\n";
    for (const auto & r : rays[i]) {
      const auto row = record_row(r);
      out << "  s=" << row[0] << "  stratum=" << row[1] << "  order=" << row[2] << "  class=" << row[3] << "  kernel=("
          << row[4] << "," << row[5] << (row[6].empty() ? "" : "," + row[6]) << ")\n";
    }
  }
}

// witness

void emit_witness(const Config & c, std::ostream & out)
{
  const StructureAdapter a = adapter_for(c);
  const auto rays = classified_scan(c, a);
  json results = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (const auto & r : rays[i]) {
      if (r.cls != SingularityClass::Fold) continue;
      const FoldWitness w = fold_witness(a, r, c.delta);
      results.push_back({{"ray", i},
                         {"s", rounded(r.s)},
                         {"lambda1", to_json(w.lambda1)},
                         {"lambda2", to_json(w.lambda2)},
                         {"image_distance", rounded(w.image_distance)},
                         {"separation", rounded(w.separation)}});
      text << "ray " << i << " fold at s=" << num(r.s) << "\n";
      for (const auto * lam : {&w.lambda1, &w.lambda2}) {
        text << "  lambda =";
        for (Eigen::Index k = 0; k < lam->size(); ++k) text << " " << num((*lam)[k]);
        text << "\n";
      }
      text << "  image distance " << num(w.image_distance) << ", separation " << num(w.separation) << "\n";
    }
  }
  if (c.format == "json") {
    out << envelope(c, "witness", results).dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "ray,s,image_distance,separation\n";
    for (const auto & r : results) {
      out << r["ray"].get<std::size_t>() << "," << num(r["s"].get<double>()) << "," << num(r["image_distance"].get<double>()) << ","
          << num(r["separation"].get<double>()) << "\n";
    }
  } else {
    out << (results.empty() ? "no fold records on the given rays\n" : text.str());
  }
}

// trig

void emit_trig(const Config & c, std::ostream & out)
{
  if (!(c.alpha >= 1.0)) throw UsageError("--alpha: must be >= 1");
  if (c.points < 2) throw UsageError("--points: must be >= 2");
  const double P = pi_alpha(c.alpha);
  std::vector<std::array<double, 3>> rows;
  for (int i = 0; i < c.points; ++i) {
    const double t = 2.0 * P * i / (c.points - 1);
    const SinCos sc = sin_cos_alpha(c.alpha, t);
    rows.push_back({t, sc.s, sc.c});
  }
  if (c.format == "json") {
    json r;
    r["pi_alpha"] = rounded(P);
    r["t"] = json::array();
    r["sin"] = json::array();
    r["cos"] = json::array();
    for (const auto & row : rows) {
      r["t"].push_back(rounded(row[0]));
      r["sin"].push_back(rounded(row[1]));
      r["cos"].push_back(rounded(row[2]));
    }
    out << envelope(c, "trig", r).dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "t,sin,cos\n";
    for (const auto & row : rows) out << num(row[0]) << "," << num(row[1]) << "," << num(row[2]) << "\n";
  } else {
    out << "pi_alpha(" << num(c.alpha) << ") = " << num(P) << "\n";
  }
}

// selftest

int emit_selftest(const Config & c, std::ostream & out)
{
  verify::Options opt;
  opt.seed = c.seed;
  opt.tolerance_override = c.tolerance;
  auto results = verify::run_invariants(opt);
  auto acc = verify::run_acceptance(opt);
  results.insert(results.end(), acc.begin(), acc.end());
  const bool ok = verify::all_passed(results);
  if (c.format == "json") {
    json r = json::array();
    for (const auto & x : results) {
      r.push_back({{"id", x.id},
                   {"passed", x.passed},
                   {"measured", rounded(x.measured)},
                   {"threshold", rounded(x.threshold)},
                   {"bound", x.bound == verify::Bound::Upper ? "upper" : "lower"},
                   {"detail", x.detail}});
    }
    out << envelope(c, "selftest", r).dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "id,passed,measured,bound,threshold\n";
    for (const auto & x : results) {
      out << x.id << "," << (x.passed ? "true" : "false") << "," << num(x.measured) << ","
          << (x.bound == verify::Bound::Upper ? "<=" : ">=") << "," << num(x.threshold) << "\n";
    }
  } else {
    std::size_t failed = 0;
    for (const auto & x : results) {
      failed += !x.passed;
      out << std::left << std::setw(32) << x.id << (x.passed ? "PASS" : "FAIL") << "  " << std::setw(20)
          << num(x.measured) << (x.bound == verify::Bound::Upper ? "<= " : ">= ") << num(x.threshold) << "\n";
    }
    out << results.size() - failed << "/" << results.size() << " checks passed\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Sub-Riemannian exponential maps, conjugate loci and their singularities", "srgeo"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Config c;

  const auto add_common = [&c](CLI::App * sub, bool scan) {
    sub->add_option("--structure", c.structure, "grushin, su2 or sl2")
      ->check(CLI::IsMember({"grushin", "su2", "sl2"}))
      ->capture_default_str();
    sub->add_option("--alpha", c.alpha, "Grushin exponent (>= 1)")->capture_default_str();
    sub->add_option("--base", c.base, "Grushin base point x0,y0")->capture_default_str();
    sub->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", c.out, "write output to FILE instead of standard output");
    if (scan) {
      sub->add_option("--direction", c.directions, "ray direction (repeatable)")->take_all()->allow_extra_args(false);
      sub->add_option("--s-max", c.s_max, "largest ray radius")->capture_default_str();
    }
  };

  auto * expmap = app.add_subcommand("expmap", "endpoint and momentum of the geodesic with initial covector");
  add_common(expmap, false);
  expmap->add_option("--covector", c.covector, "initial covector")->required();
  expmap->add_option("--t", c.t, "time")->capture_default_str();

  auto * scan = app.add_subcommand("conj-scan", "scan rays for conjugate covectors and classify them");
  add_common(scan, true);

  auto * witness = app.add_subcommand("witness", "non-injectivity witnesses at fold records along rays");
  add_common(witness, true);
  witness->add_option("--delta", c.delta, "witness neighbourhood size")->capture_default_str();

  auto * selftest = app.add_subcommand("selftest", "run the invariant and acceptance suites");
  selftest->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  selftest->add_option("--out", c.out, "write output to FILE instead of standard output");
  selftest->add_option("--seed", c.seed, "seed for the randomized checks")->capture_default_str();
  selftest->add_option("--tolerance", c.tolerance, "override every upper-bound tolerance");

  auto * trig = app.add_subcommand("trig", "alpha-trigonometric functions on one period");
  trig->add_option("--alpha", c.alpha, "exponent (>= 1)")->capture_default_str();
  trig->add_option("--points", c.points, "number of samples")->capture_default_str();
  trig->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  trig->add_option("--out", c.out, "write output to FILE instead of standard output");

  std::ostringstream cli_out, cli_err;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? 0 : 2;
  }

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      err << "cannot open " << c.out << " for writing\n";
      return 2;
    }
  }
  std::ostream & sink = c.out.empty() ? out : file;

  try {
    if (expmap->parsed()) {
      if (c.format.empty()) c.format = "text";
      emit_expmap(c, sink);
    } else if (scan->parsed()) {
      if (c.format.empty()) c.format = "csv";
      emit_scan(c, sink);
    } else if (witness->parsed()) {
      if (c.format.empty()) c.format = "text";
      emit_witness(c, sink);
    } else if (trig->parsed()) {
      if (c.format.empty()) c.format = "csv";
      emit_trig(c, sink);
    } else if (selftest->parsed()) {
      if (c.format.empty()) c.format = "text";
      return emit_selftest(c, sink);
    }
  } catch (const UsageError & e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput & e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error & e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace srgeo::cli
