#include "dcov/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcov/beta2.hpp"
#include "dcov/charfn.hpp"
#include "dcov/charrv.hpp"
#include "dcov/csv_io.hpp"
#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/inference.hpp"
#include "dcov/parallel.hpp"
#include "dcov/population.hpp"

namespace dcov::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string input = "-";
  std::string x_cols, y_cols;
  std::string x_metric, y_metric;
  std::size_t base_point = 0;
  double beta = 1.0;
  std::string method = "centered";
  std::string exact_def = "d3";
  bool joint = false;
  std::optional<std::uint64_t> seed;
  std::size_t draws = 2000;
  int grid_panels = 8;
  double eps = 1e-6;
  double T = 1e3;
  double rel_tol = 1e-3;
  std::optional<double> trunc_m;
  std::size_t perms = 199;
  std::size_t threads = 0;
  std::string format = "json";
  std::string trace_format = "csv";
  std::string demo_format = "table";
  std::string sizes = "100,1000,10000";
  std::string seeds;
  std::string estimator = "empirical_exact";
  std::string prefixes;
  int ell = 1;
};

const std::vector<std::string> kMethods = {"d1", "centered", "charfn", "charrv", "hm", "beta2", "exact"};

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      name_ = "<stdin>";
    } else {
      file_.open(path);
      if (!file_) throw InputError("cannot open input file '" + path + "'");
      stream_ = &file_;
      name_ = path;
    }
  }
  std::istream& stream() { return *stream_; }
  const std::string& name() const { return name_; }

 private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
  std::string name_;
};

CsvTable load_table(const std::string& path, std::istream& fallback) {
  Input input(path, fallback);
  return read_csv(input.stream(), input.name());
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw InputError(std::string("cannot parse ") + what + " '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError(std::string("empty ") + what + " list");
  return out;
}

bool in_open_beta(double beta) { return beta > 0.0 && beta < 2.0; }

void check_method_beta(const std::string& method, double beta) {
  if ((method == "charfn" || method == "charrv" || method == "hm") && !in_open_beta(beta)) {
    std::ostringstream os;
    os << "method " << method << " requires 0 < beta < 2; its weighted integral diverges for beta = " << beta;
    throw DomainError(os.str());
  }
  if (method == "beta2" && beta != 2.0) throw InputError("method beta2 requires --beta 2");
}

MetricSpec side_spec(const std::string& metric_file, std::size_t dim, const Options& o) {
  if (metric_file.empty()) return MetricSpec::euclidean(dim, o.beta);
  std::ifstream f(metric_file);
  if (!f) throw InputError("cannot open metric table '" + metric_file + "'");
  const Matrix table = metric_table_from_csv(read_csv(f, metric_file));
  return MetricSpec::table(table, o.base_point, o.beta, true);
}

std::vector<Point> side_points(const Matrix& block, const MetricSpec& spec, const std::string& label) {
  if (spec.is_euclidean()) return points_from_rows(block);
  if (block.cols() != 1) throw InputError(label + ": a metric table needs exactly one index column");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < block.rows(); ++i) {
    const double v = block(i, 0);
    if (v < 0 || v != std::floor(v)) {
      std::ostringstream os;
      os << label << ": data row " << i + 1 << " holds " << v << ", not a ground-set index";
      throw InputError(os.str());
    }
    pts.push_back(Point::from_atom(static_cast<std::size_t>(v)));
  }
  return pts;
}

PairedSample load_sample(const Options& o, std::istream& in) {
  const CsvTable table = load_table(o.input, in);
  std::string xs = o.x_cols, ys = o.y_cols;
  if (xs.empty() && ys.empty() && table.header.size() == 2) {
    xs = "1";
    ys = "2";
  }
  if (xs.empty() || ys.empty()) throw InputError("--x and --y column selections are required");
  const Matrix xb = take_columns(table, select_columns(table, xs));
  const Matrix yb = take_columns(table, select_columns(table, ys));
  const MetricSpec x_spec = side_spec(o.x_metric, xb.cols(), o);
  const MetricSpec y_spec = side_spec(o.y_metric, yb.cols(), o);
  return PairedSample(side_points(xb, x_spec, "x"), side_points(yb, y_spec, "y"), x_spec, y_spec);
}

DiscreteJoint load_joint(const Options& o, std::istream& in) { return joint_from_csv(load_table(o.input, in), o.beta); }

QuadConfig quad_config(const Options& o) {
  QuadConfig q;
  q.eps = o.eps;
  q.T = o.T;
  q.panels_per_decade = o.grid_panels;
  q.rel_tol = o.rel_tol;
  return q;
}

ExactMethod exact_method(const std::string& s) {
  if (s == "d1") return ExactMethod::d1;
  if (s == "d2") return ExactMethod::d2;
  if (s == "d3") return ExactMethod::d3;
  throw InputError("--exact-def must be d1, d2 or d3");
}

std::uint64_t require_seed(const Options& o, const std::string& what) {
  if (!o.seed) throw InputError(what + " is stochastic: --seed is required");
  return *o.seed;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json seed_json(const std::optional<std::uint64_t>& seed) { return seed ? json(*seed) : json(nullptr); }

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

int cmd_dcov(const Options& o, std::istream& in, std::ostream& out) {
  check_method_beta(o.method, o.beta);
  const auto t0 = Clock::now();
  DcovEstimate est;
  std::optional<std::uint64_t> seed;
  if (o.joint) {
    const DiscreteJoint joint = load_joint(o, in);
    if (o.method == "exact") {
      est = dcov_exact(joint, exact_method(o.exact_def));
    } else if (o.method == "charfn") {
      est = dcov_charfn_1d(joint, quad_config(o));
    } else if (o.method == "charrv") {
      seed = require_seed(o, "method charrv");
      est = dcov_charrv_mc(joint, CharRVConfig{o.draws, *seed, quad_config(o)});
    } else if (o.method == "beta2") {
      est = dcov2_closed(joint);
    } else {
      throw InputError("method " + o.method + " needs a sample, not a joint law (drop --joint)");
    }
  } else {
    const PairedSample sample = load_sample(o, in);
    if (o.method == "d1") {
      est = dcov_plugin_d1(sample);
    } else if (o.method == "centered") {
      est = dcov_centered(sample);
    } else if (o.method == "exact") {
      est = dcov_exact(empirical_joint(sample), exact_method(o.exact_def));
      est.n = sample.size();
    } else if (o.method == "charfn") {
      est = dcov_charfn_1d(empirical_joint(sample), quad_config(o));
      est.n = sample.size();
    } else if (o.method == "charrv") {
      seed = require_seed(o, "method charrv");
      est = dcov_charrv_mc(sample, CharRVConfig{o.draws, *seed, quad_config(o)});
    } else if (o.method == "hm") {
      if (!o.trunc_m) throw InputError("method hm needs --trunc-M");
      est = dcov_hm(sample, *o.trunc_m);
    } else if (o.method == "beta2") {
      est = dcov2_closed(sample);
    }
  }
  const double wall = seconds_since(t0);

  if (o.format == "csv") {
    out << "method,beta,n,value,stderr\n"
        << est.method << ',' << fmt(est.beta) << ',' << est.n << ',' << fmt(est.value) << ','
        << (est.std_error ? fmt(*est.std_error) : "") << '\n';
    return ok;
  }
  json j;
  j["command"] = "dcov";
  j["method"] = o.method;
  j["estimator"] = est.method;
  j["beta"] = est.beta;
  j["n"] = est.n;
  j["value"] = est.value;
  j["stderr"] = est.std_error ? json(*est.std_error) : json(nullptr);
  const auto e = est.aux.find("error_estimate");
  j["error_estimate"] = e != est.aux.end() ? json(e->second) : json(nullptr);
  j["aux"] = json::object();
  for (const auto& [k, v] : est.aux) j["aux"][k] = v;
  j["seed"] = seed_json(seed);
  j["wall_time_s"] = wall;
  write_json(out, j);
  return ok;
}

int cmd_test(const Options& o, std::istream& in, std::ostream& out) {
  const std::uint64_t seed = require_seed(o, "the permutation test");
  const PairedSample sample = load_sample(o, in);
  const auto t0 = Clock::now();
  const PermTestResult r = perm_test(sample, o.perms, seed);
  const double wall = seconds_since(t0);
  if (o.format == "csv") {
    out << "observed,p_value,B,seed\n" << fmt(r.observed) << ',' << fmt(r.p_value) << ',' << r.B << ',' << seed << '\n';
    return ok;
  }
  json j;
  j["command"] = "test";
  j["statistic"] = "centered";
  j["beta"] = sample.beta();
  j["n"] = sample.size();
  j["observed"] = r.observed;
  j["p_value"] = r.p_value;
  j["B"] = r.B;
  j["seed"] = seed;
  j["wall_time_s"] = wall;
  write_json(out, j);
  return ok;
}

SweepMethod sweep_method(const std::string& s) {
  for (auto m : {SweepMethod::empirical_exact, SweepMethod::plugin_d1, SweepMethod::centered}) {
    if (s == to_string(m)) return m;
  }
  throw InputError("--estimator must be empirical_exact, plugin_d1 or centered");
}

int cmd_converge(const Options& o, std::istream& in, std::ostream& out) {
  std::vector<std::uint64_t> seeds;
  if (!o.seeds.empty()) {
    seeds = parse_list<std::uint64_t>(o.seeds, "seed");
  } else if (o.seed) {
    seeds = {*o.seed};
  } else {
    throw InputError("converge is stochastic: --seeds or --seed is required");
  }
  const auto sizes = parse_list<std::size_t>(o.sizes, "size");
  const DiscreteJoint joint = load_joint(o, in);
  const SweepMethod method = sweep_method(o.estimator);
  const auto t0 = Clock::now();
  const ConsistencyTrace trace = consistency_sweep(joint, sizes, seeds, method);
  const double wall = seconds_since(t0);

  if (o.trace_format == "csv") {
    out << "n,estimate,abs_error,population\n";
    for (const auto& row : trace.rows) {
      out << row.n << ',' << fmt(row.estimate) << ',' << fmt(row.abs_error) << ',' << fmt(trace.population) << '\n';
    }
    return ok;
  }
  json j;
  j["command"] = "converge";
  j["estimator"] = to_string(method);
  j["beta"] = joint.beta();
  j["population"] = trace.population;
  j["seeds"] = trace.seeds;
  j["rows"] = json::array();
  for (const auto& row : trace.rows) {
    j["rows"].push_back({{"n", row.n}, {"estimate", row.estimate}, {"abs_error", row.abs_error},
                         {"per_seed", row.per_seed}});
  }
  j["wall_time_s"] = wall;
  write_json(out, j);
  return ok;
}

int cmd_diag(const Options& o, std::istream& in, std::ostream& out) {
  const CsvTable table = load_table(o.input, in);
  const Matrix xb = take_columns(table, select_columns(table, o.x_cols.empty() ? "1" : o.x_cols));
  const MetricSpec spec = MetricSpec::euclidean(xb.cols(), o.beta);
  const std::vector<Point> pts = points_from_rows(xb);
  const auto t0 = Clock::now();
  json j;
  j["command"] = "diag";
  j["beta"] = o.beta;
  j["n"] = pts.size();
  j["diagnostic"] = tail_diagnostic(pts, spec);
  j["prefixes"] = json::array();
  if (!o.prefixes.empty()) {
    for (const std::size_t k : parse_list<std::size_t>(o.prefixes, "prefix size")) {
      if (k > pts.size()) throw InputError("prefix size exceeds the number of rows");
      j["prefixes"].push_back({{"n", k}, {"diagnostic", tail_diagnostic(std::span(pts).first(k), spec)}});
    }
  }
  j["heuristic"] = true;
  j["wall_time_s"] = seconds_since(t0);
  write_json(out, j);
  return ok;
}

MomentFlags parse_flags(const json& j) {
  if (!j.is_object()) throw InputError("classify expects a JSON object of flags");
  MomentFlags f;
  const std::vector<std::pair<const char*, bool MomentFlags::*>> fields = {
      {"x_beta", &MomentFlags::x_beta}, {"y_beta", &MomentFlags::y_beta},   {"xy_product", &MomentFlags::xy_product},
      {"x_2beta", &MomentFlags::x_2beta}, {"y_2beta", &MomentFlags::y_2beta}, {"hx_L1", &MomentFlags::hx_L1},
      {"hx_L2", &MomentFlags::hx_L2},   {"hy_L1", &MomentFlags::hy_L1},     {"hy_L2", &MomentFlags::hy_L2},
      {"identical", &MomentFlags::identical}};
  for (const auto& [key, value] : j.items()) {
    if (key == "beta") {
      if (!value.is_number()) throw InputError("flag 'beta' must be a number");
      f.beta = value.get<double>();
      continue;
    }
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& p) { return key == p.first; });
    if (it == fields.end()) throw InputError("unknown flag '" + key + "'");
    if (!value.is_boolean()) throw InputError("flag '" + key + "' must be true or false");
    f.*(it->second) = value.get<bool>();
  }
  return f;
}

json verdict_json(const DefinitionVerdict& v) { return {{"status", to_string(v.status)}, {"reason", v.reason}}; }

int cmd_classify(const Options& o, std::istream& in, std::ostream& out) {
  Input input(o.input, in);
  json flags_in;
  try {
    flags_in = json::parse(input.stream());
  } catch (const json::parse_error& e) {
    throw InputError(input.name() + ": invalid JSON: " + e.what());
  }
  const MomentFlags f = parse_flags(flags_in);
  const RegimeReport r = regime_classify(f);
  json j;
  j["command"] = "classify";
  j["flags"] = {{"beta", f.beta},       {"x_beta", f.x_beta},   {"y_beta", f.y_beta}, {"xy_product", f.xy_product},
                {"x_2beta", f.x_2beta}, {"y_2beta", f.y_2beta}, {"hx_L1", f.hx_L1},   {"hx_L2", f.hx_L2},
                {"hy_L1", f.hy_L1},     {"hy_L2", f.hy_L2},     {"identical", f.identical}};
  j["definitions"] = {{"pairwise", verdict_json(r.def1)},
                      {"four_point", verdict_json(r.def2)},
                      {"centered", verdict_json(r.def3)}};
  j["finite_values_agree"] = r.finite_values_agree;
  write_json(out, j);
  return ok;
}

int cmd_constants(const Options& o, std::ostream& out) {
  json j;
  j["command"] = "constants";
  j["ell"] = o.ell;
  j["beta"] = o.beta;
  j["value"] = c_const(o.ell, o.beta);
  j["c_gauss"] = c_gauss(o.beta);
  write_json(out, j);
  return ok;
}

struct DemoRow {
  std::string name;
  std::string detail;
  bool pass;
};

std::vector<DemoRow> run_demos() {
  std::vector<DemoRow> rows;
  {
    const auto d = projection_demo(1.0);
    std::ostringstream os;
    os << "full " << fmt(d.dc_full) << " < projected " << fmt(d.dc_projected);
    rows.push_back({"projection increases dcov", os.str(), d.dc_projected > d.dc_full + 1e-6});
  }
  {
    const auto pts = [](std::initializer_list<double> v) {
      std::vector<Point> out;
      for (double x : v) out.push_back(Point{x});
      return out;
    };
    const auto make = [&](double beta) {
      return DiscreteJoint(pts({-1, 0, 1}), pts({1, 0, 1}), {1.0 / 3, 1.0 / 3, 1.0 / 3},
                           MetricSpec::euclidean(1, beta), MetricSpec::euclidean(1, beta));
    };
    const double dc2 = dcov2_closed(make(2.0)).value;
    const double dc1 = dcov_exact(make(1.0), ExactMethod::d1).value;
    std::ostringstream os;
    os << "Y = X^2: beta=2 gives " << fmt(dc2) << ", beta=1 gives " << fmt(dc1);
    rows.push_back({"beta=2 misses dependence", os.str(), std::abs(dc2) <= 1e-12 && dc1 > 0.01});
  }
  {
    const double beta = 1.0;
    const auto spec = MetricSpec::euclidean(1, beta);
    std::vector<double> small, large;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto pts = pareto_tail_sample(100000, beta, s);
      small.push_back(tail_diagnostic(std::span(pts).first(1000), spec));
      large.push_back(tail_diagnostic(pts, spec));
    }
    std::sort(small.begin(), small.end());
    std::sort(large.begin(), large.end());
    std::ostringstream os;
    os << "median diagnostic n=1e3 " << fmt(small[2]) << ", n=1e5 " << fmt(large[2]);
    rows.push_back({"heavy tail diagnostic grows", os.str(), large[2] > small[2]});
  }
  {
    const auto spec = MetricSpec::euclidean(1, 1.0);
    const DiscreteJoint bern({Point{0.0}, Point{1.0}}, {Point{0.0}, Point{1.0}}, {0.5, 0.5}, spec, spec);
    const double v = dcov_exact(bern, ExactMethod::d1).value;
    rows.push_back({"Bernoulli X=Y gives 1/4", "exact " + fmt(v), std::abs(v - 0.25) <= 1e-12});
  }
  return rows;
}

int cmd_demo(const Options& o, std::ostream& out) {
  const auto rows = run_demos();
  const bool all = std::all_of(rows.begin(), rows.end(), [](const DemoRow& r) { return r.pass; });
  if (o.demo_format == "json") {
    json j;
    j["command"] = "demo";
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back({{"name", r.name}, {"detail", r.detail}, {"pass", r.pass}});
    j["all_pass"] = all;
    write_json(out, j);
  } else {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    for (const auto& r : rows) {
      out << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(w)) << r.name << "  "
          << r.detail << '\n';
    }
  }
  return all ? ok : failed;
}

void add_sample_options(CLI::App* sub, Options& o) {
  sub->add_option("--input,-i", o.input, "CSV file with a header row ('-' for stdin)");
  sub->add_option("--x", o.x_cols, "x columns: names, 1-based indices or ranges a-b");
  sub->add_option("--y", o.y_cols, "y columns");
  sub->add_option("--x-metric", o.x_metric, "square CSV distance table; x column then holds ground-set indices");
  sub->add_option("--y-metric", o.y_metric, "square CSV distance table for y");
  sub->add_option("--base-point", o.base_point, "base point index for table metrics");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distance covariance estimators, tests and diagnostics", "dcov"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "worker threads (default: $DCOV_THREADS or 1)")->check(CLI::PositiveNumber);

  auto* dcov = app.add_subcommand("dcov", "estimate distance covariance");
  add_sample_options(dcov, o);
  dcov->add_option("--beta", o.beta, "distance exponent")->check(CLI::PositiveNumber);
  dcov->add_option("--method", o.method, "estimator")->check(CLI::IsMember(kMethods));
  dcov->add_option("--exact-def", o.exact_def, "definition used by method exact")->check(CLI::IsMember({"d1", "d2", "d3"}));
  dcov->add_flag("--joint", o.joint, "input is a joint law with columns x_1.., y_1.., prob");
  dcov->add_option("--seed", o.seed, "RNG seed (required for charrv)");
  dcov->add_option("--draws", o.draws, "Monte Carlo draws for charrv");
  dcov->add_option("--grid-panels", o.grid_panels, "quadrature panels per decade")->check(CLI::PositiveNumber);
  dcov->add_option("--eps", o.eps, "inner quadrature cutoff")->check(CLI::PositiveNumber);
  dcov->add_option("--T", o.T, "outer quadrature cutoff")->check(CLI::PositiveNumber);
  dcov->add_option("--rel-tol", o.rel_tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  dcov->add_option("--trunc-M", o.trunc_m, "truncation level for method hm")->check(CLI::PositiveNumber);
  dcov->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  auto* test = app.add_subcommand("test", "permutation test of independence");
  add_sample_options(test, o);
  test->add_option("--beta", o.beta, "distance exponent")->check(CLI::PositiveNumber);
  test->add_option("--perms", o.perms, "number of permutations");
  test->add_option("--seed", o.seed, "RNG seed")->required();
  test->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  auto* converge = app.add_subcommand("converge", "consistency sweep on a joint law");
  converge->add_option("--input,-i", o.input, "joint CSV with columns x_1.., y_1.., prob");
  converge->add_option("--beta", o.beta, "distance exponent")->check(CLI::PositiveNumber);
  converge->add_option("--sizes", o.sizes, "comma-separated increasing sample sizes");
  converge->add_option("--seeds", o.seeds, "comma-separated seeds");
  converge->add_option("--seed", o.seed, "single seed");
  converge->add_option("--estimator", o.estimator, "empirical_exact, plugin_d1 or centered");
  converge->add_option("--format", o.trace_format, "trace format")->check(CLI::IsMember({"json", "csv"}));

  auto* diag = app.add_subcommand("diag", "tail diagnostic of the x part");
  diag->add_option("--input,-i", o.input, "CSV file");
  diag->add_option("--x", o.x_cols, "x columns");
  diag->add_option("--beta", o.beta, "distance exponent")->check(CLI::PositiveNumber);
  diag->add_option("--prefixes", o.prefixes, "also report the diagnostic on these leading row counts");

  auto* classify = app.add_subcommand("classify", "moment-regime classification from JSON flags");
  classify->add_option("--input,-i", o.input, "JSON file of flags ('-' for stdin)");

  auto* constants = app.add_subcommand("constants", "normalising constants");
  constants->add_option("--ell", o.ell, "dimension")->check(CLI::PositiveNumber);
  constants->add_option("--beta", o.beta, "distance exponent")->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("demo", "run the built-in showcases");
  demo->add_option("--format", o.demo_format, "table or json")->check(CLI::IsMember({"table", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    std::optional<ThreadScope> scope;
    if (o.threads > 0) scope.emplace(o.threads);
    if (dcov->parsed()) return cmd_dcov(o, in, out);
    if (test->parsed()) return cmd_test(o, in, out);
    if (converge->parsed()) return cmd_converge(o, in, out);
    if (diag->parsed()) return cmd_diag(o, in, out);
    if (classify->parsed()) return cmd_classify(o, in, out);
    if (constants->parsed()) return cmd_constants(o, out);
    if (demo->parsed()) return cmd_demo(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failed;
  }
  return usage;
}

}  // namespace dcov::cli
