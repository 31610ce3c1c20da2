#include "kscolour/report.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

namespace kscolour {

namespace {

std::string colour_text(Colour c) { return is_defined(c) ? std::to_string(value(c)) : "UNDEFINED"; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

Json to_json(const UnitVec& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json to_json(const RationalRay& r) {
  return Json::array({bigint_to_json(r.x()), bigint_to_json(r.y()), bigint_to_json(r.z()), bigint_to_json(r.n())});
}

Json to_json(const Surd& s) {
  if (s.is_integer()) return s.a;
  return Json::array({s.a, s.b});
}

Json to_json(const Ray& r) {
  Json out = Json::array();
  for (const Surd& c : r.coords()) out.push_back(to_json(c));
  return out;
}

Json to_json(const ColourabilityResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  j["solution_count"] = r.solution_count ? Json(*r.solution_count) : Json(nullptr);
  j["solution_count_capped"] = r.solution_count && *r.solution_count >= kSolutionCountCap;
  j["search"] = {{"nodes", r.stats.nodes}, {"propagations", r.stats.propagations}};
  j["timing"] = {{"wall_seconds", r.stats.wall_seconds}};
  return j;
}

Json to_json(const DomainMeasure& m) {
  Json j;
  j["closed_form"] = m.closed_form ? Json(*m.closed_form) : Json(nullptr);
  j["mc_estimate"] = m.mc_estimate;
  j["mc_std_error"] = m.mc_std_error;
  j["samples"] = m.samples;
  j["value"] = m.value();
  return j;
}

Json to_json(const ViolationReport& r) {
  Json j;
  j["triads_sampled"] = r.triads_sampled;
  j["triads_fully_defined"] = r.triads_fully_defined;
  j["triad_violations"] = r.triad_violations;
  j["triad_violation_rate"] = r.triad_violation_rate();
  j["pairs_checked"] = r.pairs_checked;
  j["pair_violations"] = r.pair_violations;
  j["pair_violation_rate"] = r.pair_violation_rate();
  Json ex = Json::array();
  for (const auto& e : r.exemplars) {
    Json item;
    item["triad"] = Json::array({to_json(e.triad[0]), to_json(e.triad[1]), to_json(e.triad[2])});
    item["colours"] = Json::array({colour_text(e.colours[0]), colour_text(e.colours[1]), colour_text(e.colours[2])});
    ex.push_back(std::move(item));
  }
  j["exemplars"] = std::move(ex);
  return j;
}

Json to_json(const PhenoMap& map, bool include_grid) {
  Json j;
  j["colouring"] = map.colouring;
  j["delta"] = map.delta;
  j["samples_per_cap"] = map.samples_per_cap;
  j["seed"] = map.seed;
  j["grid_size"] = map.grid.size();
  j["measures"] = {{"U0", map.mu_u0}, {"U1", map.mu_u1}, {"D", map.mu_d}, {"UNDEFINED", map.mu_undefined}};
  j["std_errors"] = {{"U0", map.std_error(map.mu_u0)},
                     {"U1", map.std_error(map.mu_u1)},
                     {"D", map.std_error(map.mu_d)},
                     {"UNDEFINED", map.std_error(map.mu_undefined)}};
  j["inconsistencies"] = map.inconsistencies;
  j["false_u_risk"] = {{"minority_fraction_0.01", map.false_u_risk(0.01)},
                       {"minority_fraction_0.05", map.false_u_risk(0.05)}};
  if (include_grid) {
    Json grid = Json::array();
    Json classes = Json::array();
    for (std::size_t i = 0; i < map.grid.size(); ++i) {
      grid.push_back(to_json(map.grid[i]));
      classes.push_back(to_string(map.classes[i]));
    }
    j["grid"] = std::move(grid);
    j["classes"] = std::move(classes);
  }
  return j;
}

std::string pheno_csv(const PhenoMap& map) {
  std::ostringstream os;
  os << "x,y,z,class\n";
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    const auto& p = map.grid[i];
    os << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(p.z()) << ','
       << to_string(map.classes[i]) << '\n';
  }
  return os.str();
}

Json to_json(const Theorem1Report& r) {
  Json j;
  j["triads_sampled"] = r.triads_sampled;
  j["qualifying_triads"] = r.qualifying_triads;
  j["triad_violations"] = r.triad_violations;
  j["pairs_checked"] = r.pairs_checked;
  j["pair_violations"] = r.pair_violations;
  return j;
}

Json to_json(const DensityProfile& p) {
  Json j;
  j["center"] = to_json(p.center);
  j["radii"] = p.radii;
  j["probe_resolution"] = p.probe_resolution;
  j["fractions"] = p.fractions;
  j["std_errors"] = p.std_errors;
  j["samples"] = p.samples;
  j["verdict"] = to_string(p.verdict);
  return j;
}

Json to_json(const DeficitReport& r) {
  Json j;
  j["set_name"] = r.set_name;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["strata"] = r.strata;
  j["theta0_rad"] = r.theta0;
  j["theta0_deg"] = r.theta0 * 180.0 / kPi;
  j["ceiling"] = r.ceiling;
  j["max_antipodal_discrepancy"] = r.max_antipodal_discrepancy;
  j["used_antipodal_halving"] = r.used_antipodal_halving;
  j["j_min_max_observed"] = r.j_min_max_observed;
  Json patches = Json::array();
  for (std::size_t i = 0; i < r.patches.size(); ++i) {
    const auto& p = r.patches[i];
    patches.push_back(
        {{"index", i}, {"integral", p.integral}, {"std_error", p.std_error}, {"relative_error", p.relative_error}});
  }
  j["patches"] = std::move(patches);
  return j;
}

Json to_json(const BoundsTable& t) {
  Json j;
  j["deficit_lower_bound"] = t.lower;
  j["deficit_lower_bound_std_error"] = t.lower_std_error;
  j["regular_domain_measure"] = t.regular_domain_measure;
  j["regular_deficit_upper_bound"] = t.upper;
  j["consistent"] = t.consistent;
  return j;
}

Json to_json(const PEstimate& e) {
  Json j;
  j["epsilon"] = e.epsilon;
  j["trials"] = e.trials;
  j["agreements"] = e.agreements;
  j["p_hat"] = e.p_hat;
  j["interval"] = Json::array({e.interval.lo, e.interval.hi});
  j["minority_fraction"] = e.minority_fraction;
  return j;
}

Json to_json(const KnowabilityReport& r) {
  Json j;
  j["target"] = to_json(r.target);
  j["true_colour"] = r.true_colour;
  j["law"] = r.law;
  Json eps = Json::array();
  Json prof = Json::array();
  for (const auto& e : r.profile) {
    eps.push_back(e.epsilon);
    prof.push_back(to_json(e));
  }
  j["epsilons"] = std::move(eps);
  j["profile"] = std::move(prof);
  j["verdict"] = to_string(r.verdict);
  return j;
}

std::string knowability_csv(const std::vector<KnowabilityReport>& reports) {
  std::ostringstream os;
  os << "target,epsilon,trials,p_hat,lo,hi,minority_fraction\n";
  for (const auto& r : reports) {
    for (const auto& e : r.profile) {
      os << '"' << r.target.to_string() << "\"," << format_double(e.epsilon) << ',' << e.trials << ','
         << format_double(e.p_hat) << ',' << format_double(e.interval.lo) << ',' << format_double(e.interval.hi) << ','
         << format_double(e.minority_fraction) << '\n';
    }
  }
  return os.str();
}

}  // namespace kscolour
