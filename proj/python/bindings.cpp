#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "munu/cli.hpp"
#include "munu/lattice_dsl.hpp"
#include "munu/nominal.hpp"
#include "munu/report_json.hpp"
#include "munu/structural.hpp"

namespace py = pybind11;
using namespace munu;

namespace {

py::object to_py(const report::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

lattice::MonotoneEndo certified(std::string_view source, std::string_view name) {
  auto f = lattice::parse_lattice_document(source).function(name);
  auto r = lattice::check_monotone(f);
  if (!r.holds) throw PreconditionError("'" + std::string(name) + "' is not monotone");
  return f;
}

structural::Definitions definitions(const std::string& defs) {
  return defs.empty() ? structural::Definitions{} : structural::parse_definitions(defs);
}

std::shared_ptr<const nominal::ClassTable> table_of(std::string_view source) {
  return std::make_shared<const nominal::ClassTable>(nominal::parse_class_table(source));
}

}  // namespace

PYBIND11_MODULE(munu, m) {
  m.doc() = "Fixed points on finite lattices, recursive subtyping and nominal generics";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");

  m.def(
      "lfp", [](const std::string& src, const std::string& fn) {
        auto f = certified(src, fn);
        return f.domain().label(lattice::lfp(f));
      },
      py::arg("source"), py::arg("function"));
  m.def(
      "gfp", [](const std::string& src, const std::string& fn) {
        auto f = certified(src, fn);
        return f.domain().label(lattice::gfp(f));
      },
      py::arg("source"), py::arg("function"));

  m.def(
      "subtype",
      [](const std::string& s, const std::string& t, const std::string& defs) {
        const auto d = definitions(defs);
        const auto v = structural::subtype(structural::parse_type(s, d.bases, &d), structural::parse_type(t, d.bases, &d),
                                           d.bases);
        return to_py(report::to_json(v));
      },
      py::arg("s"), py::arg("t"), py::arg("definitions") = "");
  m.def(
      "equivalent",
      [](const std::string& s, const std::string& t, const std::string& defs) {
        const auto d = definitions(defs);
        return structural::equivalent(structural::parse_type(s, d.bases, &d), structural::parse_type(t, d.bases, &d),
                                      d.bases);
      },
      py::arg("s"), py::arg("t"), py::arg("definitions") = "");

  m.def(
      "nominal_subtype",
      [](const std::string& table, const std::string& a, const std::string& b) {
        const auto tp = table_of(table);
        return to_py(
            report::to_json(nominal::subtype(nominal::parse_ground(a, *tp), nominal::parse_ground(b, *tp), *tp)));
      },
      py::arg("table"), py::arg("a"), py::arg("b"));
  m.def(
      "nominal_negation",
      [](const std::string& table, const std::string& x, int depth) -> py::object {
        const auto tp = table_of(table);
        const auto u = nominal::build_universe(tp, depth);
        const auto n = nominal::nominal_negation(nominal::parse_ground(x, *tp), u);
        if (!n.result) return py::none();
        return py::str(nominal::to_string(*n.result));
      },
      py::arg("table"), py::arg("x"), py::arg("depth") = 1);

  m.def(
      "check_all",
      [](const std::string& dir, std::uint64_t seed, int depth) {
        cli::CheckOptions opts;
        opts.seed = seed;
        opts.depth = depth;
        py::list out;
        for (const auto& r : cli::check_all(dir, opts)) out.append(to_py(report::to_json(r, seed)));
        return out;
      },
      py::arg("directory"), py::arg("seed") = 1, py::arg("depth") = 1);
}
