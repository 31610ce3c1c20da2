#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "kscolour/colourings.hpp"
#include "kscolour/ks_sets.hpp"
#include "kscolour/rational.hpp"
#include "kscolour/sphere.hpp"

namespace py = pybind11;
using namespace kscolour;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

std::vector<py::int_> quadruple(const RationalRay& r) {
  std::vector<py::int_> q;
  for (const BigInt* v : {&r.x(), &r.y(), &r.z(), &r.n()}) {
    q.emplace_back(py::reinterpret_steal<py::int_>(PyLong_FromString(v->str().c_str(), nullptr, 10)));
  }
  return q;
}

RationalRay ray_from_text(const std::string& text) { return RationalRay::parse(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "KS-colouring toolkit core";

  py::register_exception<NotOnRationalSphere>(m, "NotOnRationalSphere", PyExc_ValueError);
  py::register_exception<RaySetError>(m, "RaySetError", PyExc_ValueError);

  m.def("run_cli", &run_cli, py::arg("args"), "Run a kscolour command line; returns (exit_code, stdout, stderr).");

  m.def("cap_measure", [](double radius) { return cap_measure(radius); }, py::arg("radius"));
  m.def("fibonacci_grid", [](std::size_t n) {
    std::vector<std::array<double, 3>> out;
    for (const auto& p : fibonacci_grid(n)) out.push_back({p.x(), p.y(), p.z()});
    return out;
  });

  m.def("rational_ray", [](const std::string& text) { return quadruple(ray_from_text(text)); }, py::arg("text"),
        "Primitive canonical quadruple of 'x,y,z,n'.");
  m.def("parity_class", [](const std::string& text) { return std::string(to_string(parity_class(ray_from_text(text)))); });
  m.def("meyer_colour", [](const std::string& text, const std::string& zero_class) {
        return meyer_colour(ray_from_text(text), parse_parity_class(zero_class));
      },
      py::arg("text"), py::arg("zero_class") = "Z");
  m.def("quaternion_triad", [](long long a, long long b, long long c, long long d) {
    std::vector<std::vector<py::int_>> out;
    for (const auto& r : rational_triad_from_quaternion(a, b, c, d)) out.push_back(quadruple(r));
    return out;
  });

  m.def("colourings", &colouring_names);
  m.def("query", [](const std::string& name, double x, double y, double z) -> py::object {
        const Colour c = make_colouring(name)->query(UnitVec(Vec3{x, y, z}));
        if (!is_defined(c)) return py::none();
        return py::int_(value(c));
      },
      py::arg("colouring"), py::arg("x"), py::arg("y"), py::arg("z"));

  m.def("verify_set_text", [](const std::string& json_text) {
    const RaySet set = parse_ray_set(json_text);
    const auto res = decide_colourability(build_graph(set));
    return to_string(res.status);
  });
  m.def("min_angle_deg", [](const std::string& json_text) { return min_angle(parse_ray_set(json_text)) * 180.0 / kPi; });
}
