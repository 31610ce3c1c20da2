#include "commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kscolour/colourings.hpp"
#include "kscolour/deficit.hpp"
#include "kscolour/ks_sets.hpp"
#include "kscolour/phenomenology.hpp"
#include "kscolour/precision.hpp"
#include "kscolour/rational.hpp"

#ifndef KSCOLOUR_DEFAULT_DATA_DIR
#define KSCOLOUR_DEFAULT_DATA_DIR "data"
#endif

namespace kscolour::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kTargetStream = 0x54524754;  // "TRGT"
constexpr std::uint64_t kMeasureStream = 0x4d534d54;
constexpr std::uint64_t kOracleSubsetSize = 20;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " list is empty");
  return out;
}

UnitVec parse_direction(const std::string& text) {
  const auto v = parse_double_list(text, "direction");
  if (v.size() == 4) return RationalRay::parse(text).to_unit();
  if (v.size() != 3) throw UsageError("direction must be 'x,y,z' or 'x,y,z,n'");
  try {
    return UnitVec(Vec3{v[0], v[1], v[2]});
  } catch (const std::domain_error&) {
    throw UsageError("direction must be a nonzero finite vector");
  }
}

// State shared by all subcommands.
struct Context {
  std::string subcommand;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  std::string out;
  std::string zero_class = "Z";
  Json digests = Json::object();

  std::uint64_t require_seed() const {
    if (!seed) throw UsageError(subcommand + " needs --seed");
    return *seed;
  }
  ParityClass parity() const {
    try {
      return parse_parity_class(zero_class);
    } catch (const std::exception&) {
      throw UsageError("--zero-class must be X, Y or Z");
    }
  }
  ColouringPtr colouring(const std::string& name) const {
    try {
      return make_colouring(name, parity());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  RaySet load_set(const std::string& arg) {
    const fs::path path = resolve_data_file(arg);
    digests[arg] = sha256_file(path);
    return load_ray_set(path);
  }
  Json load_json(const std::string& arg) {
    const fs::path path = resolve_data_file(arg);
    digests[arg] = sha256_file(path);
    std::ifstream in(path);
    try {
      return Json::parse(in);
    } catch (const Json::exception& e) {
      throw DataError("cannot parse " + path.string() + ": " + e.what());
    }
  }
};

Json run_config(const Context& ctx, const CLI::App& sub) {
  Json flags = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "--threads") continue;
    const std::string key = name.substr(name.find_first_not_of('-'));
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() == 0) {
        flags[key] = true;
      } else if (res.size() == 1) {
        flags[key] = res.front();
      } else {
        flags[key] = res;
      }
    } else if (opt->get_expected_max() == 0) {
      flags[key] = false;
    } else {
      flags[key] = opt->get_default_str().empty() ? Json(nullptr) : Json(opt->get_default_str());
    }
  }
  Json rc;
  rc["subcommand"] = ctx.subcommand;
  rc["flags"] = std::move(flags);
  rc["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
  rc["output_path"] = ctx.out.empty() ? Json(nullptr) : Json(ctx.out);
  rc["tool_version"] = kToolVersion;
  rc["input_digests"] = ctx.digests;
  return rc;
}

Json envelope(const Context& ctx, const CLI::App& sub, Json result, double seconds) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["report_type"] = ctx.subcommand;
  j["run_config"] = run_config(ctx, sub);
  j["timestamp"] = utc_timestamp();
  j["result"] = std::move(result);
  j["timing"] = {{"wall_seconds", seconds}};
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
  if (!f) throw DataError("failed writing " + path);
}

// ---- verify-set ----

struct VerifyArgs {
  std::string set;
  bool enumerate = false;
  bool oracle_check = false;
};

Json oracle_check(const RaySet& set) {
  // Induced subsets of <= 20 rays: all prefixes and all cyclic windows.
  std::vector<std::vector<std::size_t>> subsets;
  const std::size_t n = set.size();
  const std::size_t w = std::min<std::size_t>(kOracleSubsetSize, n);
  for (std::size_t k = 1; k <= w; ++k) {
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    subsets.push_back(std::move(s));
  }
  if (n > w) {
    for (std::size_t start = 1; start < n; ++start) {
      std::vector<std::size_t> s(w);
      for (std::size_t i = 0; i < w; ++i) s[i] = (start + i) % n;
      subsets.push_back(std::move(s));
    }
  }
  std::uint64_t agree = 0, colourable = 0;
  for (const auto& s : subsets) {
    std::vector<Ray> rays;
    for (std::size_t i : s) rays.push_back(set.rays()[i]);
    const auto g = build_graph(RaySet(set.name(), set.source(), rays));
    const bool solver = decide_colourability(g).status == Verdict::Colourable;
    const bool naive = exhaustive_colourable(g);
    agree += solver == naive;
    colourable += naive;
  }
  Json j;
  j["subsets_checked"] = subsets.size();
  j["max_subset_size"] = w;
  j["oracle_colourable"] = colourable;
  j["agreements"] = agree;
  j["all_agree"] = agree == subsets.size();
  if (n <= 24) {
    const bool naive = exhaustive_colourable(build_graph(set));
    j["full_set_oracle"] = naive ? "COLOURABLE" : "UNCOLOURABLE";
  }
  return j;
}

Json cmd_verify_set(Context& ctx, const VerifyArgs& a) {
  const RaySet set = ctx.load_set(a.set);
  const auto graph = build_graph(set);
  const auto res = decide_colourability(graph, SolverOptions{a.enumerate});
  if (res.witness && !satisfies_ks_conditions(graph, *res.witness)) {
    throw std::logic_error("solver witness fails the KS conditions");
  }
  Json j;
  j["set_name"] = set.name();
  j["ray_count"] = set.size();
  j["pair_count"] = graph.pairs.size();
  j["triad_count"] = graph.triads.size();
  j["status"] = to_string(res.status);
  if (set.size() >= 2) {
    std::array<std::size_t, 2> arg{};
    const double theta = min_angle(set, &arg);
    j["min_angle_rad"] = theta;
    j["min_angle_deg"] = theta * 180.0 / kPi;
    j["min_angle_pair"] = Json::array({to_json(set.rays()[arg[0]]), to_json(set.rays()[arg[1]])});
  }
  Json solver = to_json(res);
  for (auto it = solver.begin(); it != solver.end(); ++it) {
    if (it.key() != "status") j[it.key()] = it.value();
  }
  if (a.oracle_check) j["oracle_check"] = oracle_check(set);
  return j;
}

// ---- check-colouring ----

struct CheckArgs {
  std::string colouring;
  std::uint64_t triads = 1'000'000;
  std::uint64_t measure_samples = 1'000'000;
};

Json cmd_check_colouring(Context& ctx, const CheckArgs& a) {
  const auto c = ctx.colouring(a.colouring);
  const std::uint64_t seed = ctx.require_seed();
  if (a.triads == 0) throw UsageError("--triads must be >= 1");
  const auto viol = validate_ks_conditions(*c, RandomStream(seed, 1), a.triads, ctx.threads);
  const auto measure = domain_measure(*c, RandomStream(seed, 2), a.measure_samples, ctx.threads);
  Json j;
  j["colouring"] = c->name();
  j["kind"] = to_string(c->kind());
  j["violations"] = to_json(viol);
  j["domain_measure"] = to_json(measure);
  if (c->kind() == ColouringKind::Regular && viol.triad_violations == 0 && viol.pair_violations == 0) {
    j["regular_deficit_upper_bound"] = 1.0 - measure.value();
  } else {
    j["regular_deficit_upper_bound"] = nullptr;
  }
  return j;
}

// ---- classify ----

struct ClassifyArgs {
  std::string colouring;
  double delta = 1e-2;
  std::size_t grid = 10'000;
  std::size_t samples = 200;
  std::string csv;
  std::uint64_t theorem1_triads = 0;
  bool no_grid = false;
};

Json cmd_classify(Context& ctx, const ClassifyArgs& a) {
  const auto c = ctx.colouring(a.colouring);
  if (!(a.delta > 0.0)) throw UsageError("--delta must be positive");
  if (a.grid == 0 || a.samples == 0) throw UsageError("--grid and --samples must be >= 1");
  ClassifyOptions opt{a.delta, a.grid, a.samples, ctx.require_seed(), ctx.threads};
  const PhenoMap map = classify_phenomenological(*c, opt);
  Json j = to_json(map, !a.no_grid);
  j["kind"] = to_string(c->kind());
  if (a.theorem1_triads > 0) {
    j["theorem1"] = to_json(theorem1_check(map, *c, RandomStream(opt.seed, 3), a.theorem1_triads, 0, ctx.threads));
  }
  if (!a.csv.empty()) write_text(a.csv, pheno_csv(map));
  return j;
}

// ---- density ----

struct DensityArgs {
  std::string colouring;
  std::string center;
  std::string radii = "1e-1,1e-2,1e-3";
  double delta = 1e-2;
  std::size_t samples_per_cap = 200;
  std::size_t samples = 1000;
};

Json cmd_density(Context& ctx, const DensityArgs& a) {
  const auto c = ctx.colouring(a.colouring);
  const UnitVec center = parse_direction(a.center);
  const auto radii = parse_double_list(a.radii, "radii");
  if (!(a.delta > 0.0) || a.samples_per_cap == 0) throw UsageError("--delta and --samples-per-cap must be positive");
  PhenoMap probe;
  probe.colouring = c->name();
  probe.delta = a.delta;
  probe.samples_per_cap = a.samples_per_cap;
  probe.seed = ctx.require_seed();
  const auto prof = density_profile(*c, probe, center, radii, a.samples, RandomStream(probe.seed, 4), ctx.threads);
  Json out{{"colouring", c->name()}, {"delta", a.delta}, {"samples_per_cap", a.samples_per_cap}};
  out.update(to_json(prof));
  return out;
}

// ---- deficit ----

struct DeficitArgs {
  std::string set;
  std::uint64_t samples = 1'000'000;
  std::size_t z_bands = 16;
  std::size_t phi_sectors = 32;
};

Json cmd_deficit(Context& ctx, const DeficitArgs& a) {
  const RaySet set = ctx.load_set(a.set);
  DeficitOptions opt;
  opt.samples = a.samples;
  opt.seed = ctx.require_seed();
  opt.z_bands = a.z_bands;
  opt.phi_sectors = a.phi_sectors;
  opt.threads = ctx.threads;
  if (a.z_bands == 0 || a.phi_sectors == 0) throw UsageError("--z-bands and --phi-sectors must be >= 1");
  const auto report = estimate_deficit_bound(DeficitProblem::from_set(set), opt);
  Json j = to_json(report);
  j["bounds"] = to_json(deficit_summary(report, *polar_cap_colouring()->analytic_domain_measure()));
  return j;
}

// ---- measure ----

struct MeasureArgs {
  std::string colouring;
  std::vector<std::string> targets;
  std::size_t random_targets = 0;
  std::string epsilons = "1e-2,1e-3,1e-4";
  std::uint64_t trials = 10'000;
  std::string law = "uniform-cap";
  std::string csv;
};

std::vector<RationalRay> random_domain_targets(const Colouring& c, std::size_t count, std::uint64_t seed) {
  RandomStream rng(seed, kTargetStream);
  std::vector<RationalRay> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count + 1000) throw DataError("could not find targets in the domain of " + c.name());
    BigInt q[4];
    for (auto& v : q) v = rng.uniform_int(-64, 64);
    if (q[0] == 0 && q[1] == 0 && q[2] == 0 && q[3] == 0) continue;
    const RationalRay r = rational_triad_from_quaternion(q[0], q[1], q[2], q[3])[0];
    if (is_defined(c.query(r))) out.push_back(r);
  }
  return out;
}

Json cmd_measure(Context& ctx, const MeasureArgs& a) {
  MeasurementModel model;
  model.colouring = ctx.colouring(a.colouring);
  try {
    model.law = parse_misalignment_law(a.law);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::uint64_t seed = ctx.require_seed();
  const auto eps = parse_double_list(a.epsilons, "epsilons");
  if (a.trials < 100) throw UsageError("--trials must be >= 100");
  std::vector<RationalRay> targets;
  for (const auto& t : a.targets) {
    try {
      targets.push_back(RationalRay::parse(t));
    } catch (const NotOnRationalSphere& e) {
      throw DataError(std::string("target ") + t + ": " + e.what());
    } catch (const std::exception& e) {
      throw UsageError(std::string("target ") + t + ": " + e.what());
    }
  }
  const auto extra = random_domain_targets(*model.colouring, a.random_targets, seed);
  targets.insert(targets.end(), extra.begin(), extra.end());
  if (targets.empty()) throw UsageError("measure needs --target or --random-targets");
  const auto reports = cabello_probe(model, targets, eps, a.trials, seed ^ kMeasureStream, ctx.threads);
  Json list = Json::array();
  std::map<std::string, std::uint64_t> verdicts{{"CONVERGES_TO_1", 0}, {"BOUNDED_AWAY", 0}, {"INCONCLUSIVE", 0}};
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    ++verdicts[to_string(r.verdict)];
  }
  Json j;
  j["colouring"] = model.colouring->name();
  j["law"] = to_string(model.law);
  j["epsilons"] = eps;
  j["trials"] = a.trials;
  j["verdict_counts"] = verdicts;
  j["reports"] = std::move(list);
  if (!a.csv.empty()) write_text(a.csv, knowability_csv(reports));
  return j;
}

// ---- report ----

struct ReportArgs {
  std::string deficit;
  std::string classify;
};

Json cmd_report(Context& ctx, const ReportArgs& a) {
  const Json d = ctx.load_json(a.deficit);
  if (!d.contains("result") || d.value("report_type", "") != "deficit") {
    throw DataError(a.deficit + " is not a deficit report");
  }
  const Json& r = d["result"];
  const auto c = polar_cap_colouring();
  const double measure = *c->analytic_domain_measure();
  BoundsTable t;
  try {
    t.lower = r.at("estimate").get<double>();
    t.lower_std_error = r.at("std_error").get<double>();
    const double ceiling = r.at("ceiling").get<double>();
    t.regular_domain_measure = measure;
    t.upper = 1.0 - measure;
    t.consistent = t.lower - 3.0 * t.lower_std_error < t.upper && t.lower <= ceiling + 3.0 * t.lower_std_error;
  } catch (const Json::exception& e) {
    throw DataError(a.deficit + ": " + e.what());
  }
  Json j;
  j["set_name"] = r.value("set_name", "");
  j["bounds"] = to_json(t);
  if (!a.classify.empty()) {
    const Json cl = ctx.load_json(a.classify);
    if (!cl.contains("result") || cl.value("report_type", "") != "classify") {
      throw DataError(a.classify + " is not a classify report");
    }
    const double mu_d = cl["result"]["measures"].value("D", 0.0);
    const double se = cl["result"]["std_errors"].value("D", 0.0);
    j["discontinuity"] = {{"colouring", cl["result"].value("colouring", "")},
                          {"mu_D", mu_d},
                          {"mu_D_std_error", se},
                          {"at_least_lower_bound", mu_d + 3.0 * se >= t.lower - 3.0 * t.lower_std_error}};
  }
  return j;
}

Json error_object(const std::string& kind, int code, const std::string& message) {
  return Json{{"schema_version", kSchemaVersion},
              {"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
}

}  // namespace

fs::path data_dir() {
  if (const char* env = std::getenv("KSCOLOUR_DATA_DIR"); env && *env) return env;
  return KSCOLOUR_DEFAULT_DATA_DIR;
}

fs::path resolve_data_file(const std::string& path) {
  if (path.empty()) throw UsageError("empty file argument");
  const fs::path p(path);
  if (fs::is_regular_file(p)) return p;
  const fs::path dir = data_dir();
  for (const fs::path& cand : {dir / p.filename(), dir / (p.filename().string() + ".json")}) {
    if (fs::is_regular_file(cand)) return cand;
  }
  throw DataError("file not found: " + path + " (also looked in " + dir.string() + ")");
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> md(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!md || EVP_DigestInit_ex(md.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(md.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(md.get(), digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

Json strip_nondeterministic(const Json& report) {
  if (report.is_object()) {
    Json out = Json::object();
    for (auto it = report.begin(); it != report.end(); ++it) {
      if (it.key() == "timestamp" || it.key() == "timing") continue;
      out[it.key()] = strip_nondeterministic(it.value());
    }
    return out;
  }
  if (report.is_array()) {
    Json out = Json::array();
    for (const auto& v : report) out.push_back(strip_nondeterministic(v));
    return out;
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kochen-Specker colourings of the sphere: exact sets, deficits and finite-precision probes", "kscolour"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Context ctx;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub, bool colouring_flags) {
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--threads", ctx.threads, "worker threads (0 = hardware concurrency); results do not depend on it");
    sub->add_option("--out", ctx.out, "report path (default: stdout)");
    if (colouring_flags) {
      sub->add_option("--zero-class", ctx.zero_class, "parity class coloured 0 by the meyer colouring (X, Y or Z)");
    }
  };

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify-set", "decide KS-colourability of a finite ray set");
  s_verify->add_option("--set", verify.set, "ray-set JSON file or bundled set name")->required();
  s_verify->add_flag("--enumerate", verify.enumerate, "count all colourings (capped at 2^32)");
  s_verify->add_flag("--oracle-check", verify.oracle_check, "cross-check the solver on induced subsets of <= 20 rays");
  add_common(s_verify, false);

  CheckArgs check;
  auto* s_check = app.add_subcommand("check-colouring", "sample triads for KS violations and estimate the domain measure");
  s_check->add_option("--colouring", check.colouring, "colouring name")->required();
  s_check->add_option("--triads", check.triads, "random triads to test");
  s_check->add_option("--measure-samples", check.measure_samples, "Monte Carlo samples for the domain measure");
  add_common(s_check, true);

  ClassifyArgs classify;
  auto* s_classify = app.add_subcommand("classify", "phenomenological U0/U1/D map on a Fibonacci grid");
  s_classify->add_option("--colouring", classify.colouring, "colouring name")->required();
  s_classify->add_option("--delta", classify.delta, "probe cap radius in radians");
  s_classify->add_option("--grid", classify.grid, "grid points");
  s_classify->add_option("--samples", classify.samples, "domain samples per cap");
  s_classify->add_option("--csv", classify.csv, "also write x,y,z,class rows here");
  s_classify->add_option("--theorem1-triads", classify.theorem1_triads, "qualifying triads for the U-region KS check");
  s_classify->add_flag("--no-grid", classify.no_grid, "omit grid and classes from the JSON");
  add_common(s_classify, true);

  DensityArgs density;
  auto* s_density = app.add_subcommand("density", "fraction of D in shrinking caps about a centre");
  s_density->add_option("--colouring", density.colouring, "colouring name")->required();
  s_density->add_option("--center", density.center, "'x,y,z' or 'x,y,z,n'")->required();
  s_density->add_option("--radii", density.radii, "strictly decreasing radii, comma separated");
  s_density->add_option("--delta", density.delta, "classifier resolution");
  s_density->add_option("--samples-per-cap", density.samples_per_cap, "domain samples per probe");
  s_density->add_option("--samples", density.samples, "probe points per radius");
  add_common(s_density, true);

  DeficitArgs deficit;
  auto* s_deficit = app.add_subcommand("deficit", "Monte Carlo lower bound on the deficit from an uncolourable set");
  s_deficit->add_option("--set", deficit.set, "ray-set JSON file or bundled set name")->required();
  s_deficit->add_option("--samples", deficit.samples, "Monte Carlo samples (>= 10000)");
  s_deficit->add_option("--z-bands", deficit.z_bands, "equal-area strata in z");
  s_deficit->add_option("--phi-sectors", deficit.phi_sectors, "strata in azimuth");
  add_common(s_deficit, false);

  MeasureArgs measure;
  auto* s_measure = app.add_subcommand("measure", "finite-precision measurement profiles p(k, eps)");
  s_measure->add_option("--colouring", measure.colouring, "colouring name")->required();
  s_measure->add_option("--target", measure.targets, "target 'x,y,z,n' (repeatable)");
  s_measure->add_option("--random-targets", measure.random_targets, "additional random targets in the domain");
  s_measure->add_option("--epsilons", measure.epsilons, "strictly decreasing precisions, comma separated");
  s_measure->add_option("--trials", measure.trials, "trials per (target, eps)");
  s_measure->add_option("--law", measure.law, "misalignment law: uniform-cap or gaussian");
  s_measure->add_option("--csv", measure.csv, "also write long-format rows here");
  add_common(s_measure, true);

  ReportArgs rep;
  auto* s_report = app.add_subcommand("report", "bounds table from a deficit report (and optionally a classify report)");
  s_report->add_option("--deficit", rep.deficit, "deficit report JSON")->required();
  s_report->add_option("--classify", rep.classify, "classify report JSON for the mu(D) comparison");
  add_common(s_report, false);

  auto fail = [&](const std::string& kind, int code, const std::string& msg) {
    err << error_object(kind, code, msg).dump() << '\n';
    return code;
  };

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail("usage", kExitUsage, e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  ctx.subcommand = sub->get_name();
  if (sub->count("--seed") > 0) ctx.seed = seed;

  try {
    const auto t0 = std::chrono::steady_clock::now();
    Json result;
    if (sub == s_verify) result = cmd_verify_set(ctx, verify);
    else if (sub == s_check) result = cmd_check_colouring(ctx, check);
    else if (sub == s_classify) result = cmd_classify(ctx, classify);
    else if (sub == s_density) result = cmd_density(ctx, density);
    else if (sub == s_deficit) result = cmd_deficit(ctx, deficit);
    else if (sub == s_measure) result = cmd_measure(ctx, measure);
    else result = cmd_report(ctx, rep);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string text = envelope(ctx, *sub, std::move(result), secs).dump(2) + "\n";
    if (ctx.out.empty()) {
      out << text;
    } else {
      write_text(ctx.out, text);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    return fail("usage", kExitUsage, e.what());
  } catch (const DataError& e) {
    return fail("data", kExitData, e.what());
  } catch (const RaySetError& e) {
    return fail("data", kExitData, e.what());
  } catch (const NotOnRationalSphere& e) {
    return fail("data", kExitData, e.what());
  } catch (const NotInDomain& e) {
    return fail("data", kExitData, e.what());
  } catch (const EmptyDomainSample& e) {
    return fail("data", kExitData, e.what());
  } catch (const fs::filesystem_error& e) {
    return fail("data", kExitData, e.what());
  } catch (const std::invalid_argument& e) {
    return fail("usage", kExitUsage, e.what());
  } catch (const std::domain_error& e) {
    return fail("usage", kExitUsage, e.what());
  } catch (const std::exception& e) {
    return fail("internal", kExitInternal, e.what());
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace kscolour::cli
