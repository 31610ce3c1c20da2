#include "kscolour/ks_sets.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace kscolour {

using nlohmann::json;

int Surd::sign() const {
  // sign(a + b sqrt2): compare a^2 with 2 b^2 when the signs disagree.
  const int sa = (a > 0) - (a < 0);
  const int sb = (b > 0) - (b < 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const auto a2 = static_cast<__int128>(a) * a;
  const auto b2 = 2 * static_cast<__int128>(b) * b;
  if (a2 == b2) return 0;
  return a2 > b2 ? sa : sb;
}

double Surd::to_double() const { return static_cast<double>(a) + static_cast<double>(b) * std::numbers::sqrt2; }

Ray::Ray(Surd x, Surd y, Surd z) : c_{x, y, z} {
  if (x.is_zero() && y.is_zero() && z.is_zero()) throw std::domain_error("Ray: zero vector");
  const Surd& lead = !x.is_zero() ? x : (!y.is_zero() ? y : z);
  if (lead.sign() < 0) {
    for (auto& v : c_) v = -v;
  }
}

bool Ray::is_integer() const {
  return std::all_of(c_.begin(), c_.end(), [](const Surd& s) { return s.is_integer(); });
}

UnitVec Ray::to_unit() const { return UnitVec(c_[0].to_double(), c_[1].to_double(), c_[2].to_double()); }

std::string Ray::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) out << ",";
    const Surd& s = c_[i];
    if (s.is_integer()) {
      out << s.a;
    } else if (s.a == 0) {
      out << s.b << "r2";
    } else {
      out << s.a << (s.b > 0 ? "+" : "") << s.b << "r2";
    }
  }
  out << ")";
  return out.str();
}

Surd exact_dot(const Ray& a, const Ray& b) {
  const auto& x = a.coords();
  const auto& y = b.coords();
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

bool parallel(const Ray& a, const Ray& b) {
  const auto& x = a.coords();
  const auto& y = b.coords();
  return (x[1] * y[2] - x[2] * y[1]).is_zero() && (x[2] * y[0] - x[0] * y[2]).is_zero() &&
         (x[0] * y[1] - x[1] * y[0]).is_zero();
}

RaySet::RaySet(std::string name, std::string source, std::vector<Ray> rays)
    : name_(std::move(name)), source_(std::move(source)), rays_(std::move(rays)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    for (std::size_t j = i + 1; j < rays_.size(); ++j) {
      if (parallel(rays_[i], rays_[j])) {
        throw RaySetError("duplicate ray: entries " + std::to_string(i) + " " + rays_[i].to_string() + " and " +
                          std::to_string(j) + " " + rays_[j].to_string() + " span the same line");
      }
    }
  }
}

std::vector<UnitVec> RaySet::unit_vectors() const {
  std::vector<UnitVec> out;
  out.reserve(rays_.size());
  for (const auto& r : rays_) out.push_back(r.to_unit());
  return out;
}

namespace {

Surd parse_coordinate(const json& j, std::size_t ray_index) {
  const auto where = "ray " + std::to_string(ray_index);
  if (j.is_number_integer()) return Surd(j.get<std::int64_t>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return Surd(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
  }
  throw RaySetError(where + ": coordinate " + j.dump() + " is neither an integer nor an [a, b] pair");
}

json coordinate_to_json(const Surd& s) {
  if (s.is_integer()) return s.a;
  return json::array({s.a, s.b});
}

}  // namespace

RaySet parse_ray_set(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw RaySetError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw RaySetError("ray set must be a JSON object");
  for (const char* key : {"name", "source"}) {
    if (!doc.contains(key) || !doc[key].is_string()) throw RaySetError(std::string("missing string field '") + key + "'");
  }
  if (!doc.contains("rays") || !doc["rays"].is_array()) throw RaySetError("missing array field 'rays'");
  std::vector<Ray> rays;
  const auto& arr = doc["rays"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& r = arr[i];
    if (!r.is_array() || r.size() != 3) throw RaySetError("ray " + std::to_string(i) + ": expected three coordinates");
    const Surd x = parse_coordinate(r[0], i), y = parse_coordinate(r[1], i), z = parse_coordinate(r[2], i);
    if (x.is_zero() && y.is_zero() && z.is_zero()) throw RaySetError("ray " + std::to_string(i) + ": zero vector");
    rays.emplace_back(x, y, z);
  }
  return RaySet(doc["name"].get<std::string>(), doc["source"].get<std::string>(), std::move(rays));
}

RaySet load_ray_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RaySetError("cannot open ray set file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ray_set(buf.str());
}

std::string dump_ray_set(const RaySet& set) {
  json rays = json::array();
  for (const auto& r : set.rays()) {
    rays.push_back(json::array(
        {coordinate_to_json(r.coords()[0]), coordinate_to_json(r.coords()[1]), coordinate_to_json(r.coords()[2])}));
  }
  json doc{{"name", set.name()}, {"source", set.source()}, {"rays", rays}};
  return doc.dump(2) + "\n";
}

void save_ray_set(const RaySet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw RaySetError("cannot write ray set file " + path.string());
  out << dump_ray_set(set);
}

RaySet rotate_exact(const RaySet& set, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (a == 0 && b == 0 && c == 0 && d == 0) throw std::domain_error("rotate_exact: zero quaternion");
  const std::int64_t aa = a * a, bb = b * b, cc = c * c, dd = d * d;
  const std::array<std::array<std::int64_t, 3>, 3> m{{
      {aa + bb - cc - dd, 2 * (b * c - a * d), 2 * (b * d + a * c)},
      {2 * (b * c + a * d), aa - bb + cc - dd, 2 * (c * d - a * b)},
      {2 * (b * d - a * c), 2 * (c * d + a * b), aa - bb - cc + dd},
  }};
  std::vector<Ray> out;
  out.reserve(set.size());
  for (const auto& r : set.rays()) {
    const auto& v = r.coords();
    std::array<Surd, 3> w{};
    for (std::size_t i = 0; i < 3; ++i) w[i] = Surd(m[i][0]) * v[0] + Surd(m[i][1]) * v[1] + Surd(m[i][2]) * v[2];
    out.emplace_back(w[0], w[1], w[2]);
  }
  return RaySet(set.name() + " (rotated)", set.source(), std::move(out));
}

OrthogonalityGraph build_graph(const RaySet& set) {
  OrthogonalityGraph g;
  const std::size_t n = set.size();
  g.vertex_count = n;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (exact_dot(set.rays()[i], set.rays()[j]).is_zero()) {
        adj[i][j] = adj[j][i] = 1;
        g.pairs.push_back({i, j});
      }
    }
  }
  for (const auto& [i, j] : g.pairs) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (adj[i][k] && adj[j][k]) g.triads.push_back({i, j, k});
    }
  }
  return g;
}

std::string to_string(Verdict v) { return v == Verdict::Colourable ? "COLOURABLE" : "UNCOLOURABLE"; }

namespace {

class Solver {
 public:
  Solver(const OrthogonalityGraph& g, SolverOptions options)
      : g_(g), options_(options), value_(g.vertex_count, -1), triads_of_(g.vertex_count), partners_(g.vertex_count) {
    for (std::size_t t = 0; t < g.triads.size(); ++t) {
      for (std::size_t v : g.triads[t]) triads_of_[v].push_back(t);
    }
    for (const auto& [i, j] : g.pairs) {
      partners_[i].push_back(j);
      partners_[j].push_back(i);
    }
    order_.resize(g.vertex_count);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return triads_of_[a].size() > triads_of_[b].size(); });
  }

  ColourabilityResult run() {
    const auto start = std::chrono::steady_clock::now();
    search(0);
    ColourabilityResult result;
    result.status = witness_ ? Verdict::Colourable : Verdict::Uncolourable;
    result.witness = witness_;
    if (options_.enumerate) result.solution_count = count_;
    result.stats = stats_;
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  // Returns true when the search should stop.
  bool search(std::size_t cursor) {
    while (cursor < order_.size() && value_[order_[cursor]] != -1) ++cursor;
    if (cursor == order_.size()) {
      if (!witness_) witness_ = std::vector<int>(value_.begin(), value_.end());
      if (!options_.enumerate) return true;
      return ++count_ >= kSolutionCountCap;
    }
    const std::size_t v = order_[cursor];
    for (int colour : {1, 0}) {
      ++stats_.nodes;
      const std::size_t mark = trail_.size();
      if (assign(v, colour) && propagate() && search(cursor + 1)) return true;
      undo(mark);
    }
    return false;
  }

  bool assign(std::size_t v, int colour) {
    if (value_[v] != -1) return value_[v] == colour;
    value_[v] = static_cast<std::int8_t>(colour);
    trail_.push_back(v);
    queue_.push_back(v);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
    queue_.clear();
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::size_t v = queue_.back();
      queue_.pop_back();
      if (value_[v] == 0) {
        for (std::size_t w : partners_[v]) {
          ++stats_.propagations;
          if (!assign(w, 1)) return false;
        }
      }
      for (std::size_t t : triads_of_[v]) {
        int zeros = 0, ones = 0;
        for (std::size_t w : g_.triads[t]) {
          zeros += value_[w] == 0;
          ones += value_[w] == 1;
        }
        if (zeros >= 2 || ones == 3) return false;
        if (zeros == 1) {
          for (std::size_t w : g_.triads[t]) {
            if (value_[w] == -1) {
              ++stats_.propagations;
              if (!assign(w, 1)) return false;
            }
          }
        } else if (ones == 2) {
          for (std::size_t w : g_.triads[t]) {
            if (value_[w] == -1) {
              ++stats_.propagations;
              if (!assign(w, 0)) return false;
            }
          }
        }
      }
    }
    return true;
  }

  const OrthogonalityGraph& g_;
  SolverOptions options_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::size_t>> triads_of_;
  std::vector<std::vector<std::size_t>> partners_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;
  std::optional<std::vector<int>> witness_;
  std::uint64_t count_ = 0;
  SearchStats stats_;
};

}  // namespace

ColourabilityResult decide_colourability(const OrthogonalityGraph& graph, SolverOptions options) {
  return Solver(graph, options).run();
}

bool satisfies_ks_conditions(const OrthogonalityGraph& graph, const std::vector<int>& colours) {
  if (colours.size() != graph.vertex_count) return false;
  for (int c : colours) {
    if (c != 0 && c != 1) return false;
  }
  for (const auto& [i, j] : graph.pairs) {
    if (colours[i] + colours[j] < 1) return false;
  }
  for (const auto& [i, j, k] : graph.triads) {
    if (colours[i] + colours[j] + colours[k] != 2) return false;
  }
  return true;
}

bool exhaustive_colourable(const OrthogonalityGraph& graph) {
  const std::size_t n = graph.vertex_count;
  if (n > 24) throw std::domain_error("exhaustive_colourable: more than 24 vertices");
  std::vector<int> colours(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) colours[i] = static_cast<int>((mask >> i) & 1U);
    if (satisfies_ks_conditions(graph, colours)) return true;
  }
  return false;
}

double min_angle(const RaySet& set, std::array<std::size_t, 2>* argmin) {
  if (set.size() < 2) throw std::domain_error("min_angle: need at least two rays");
  const auto units = set.unit_vectors();
  double best = kPi;
  std::array<std::size_t, 2> at{0, 1};
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      const double a = line_angle(units[i], units[j]);
      if (a < best) {
        best = a;
        at = {i, j};
      }
    }
  }
  if (argmin) *argmin = at;
  return best;
}

}  // namespace kscolour
