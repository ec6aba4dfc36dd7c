#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "edscorr/bounds.hpp"
#include "edscorr/corr_engine.hpp"
#include "edscorr/division_poly.hpp"
#include "edscorr/harness/cli.hpp"
#include "edscorr/harness/config.hpp"
#include "edscorr/harness/contexts.hpp"
#include "edscorr/harness/verify.hpp"

namespace py = pybind11;
using namespace edscorr;
namespace hs = edscorr::harness;

namespace {

struct ContextHandle {
  hs::ResolvedContext rc;
};

ContextHandle make_context(u64 p, std::optional<i64> a, std::optional<i64> b, std::optional<i64> px,
                           std::optional<i64> py_, u64 min_order) {
  hs::ContextSpec spec;
  spec.p = p;
  spec.a = a;
  spec.b = b;
  spec.px = px;
  spec.py = py_;
  spec.min_order = min_order;
  return ContextHandle{hs::resolve_context(spec)};
}

py::object exponent_or_none(const CharValue& v) {
  if (v.is_zero()) return py::none();
  return py::int_(v.exponent());
}

std::optional<SampleSpec> sample_of(std::optional<u64> count, u64 seed) {
  if (!count) return std::nullopt;
  return SampleSpec{*count, seed};
}

py::dict tuple_dict(const TupleAverage& t) {
  py::dict d;
  d["value"] = t.value;
  d["sampled"] = t.sampled;
  d["tuples_used"] = t.tuples_used;
  d["tuples_total"] = t.tuples_total;
  return d;
}

}  // namespace

PYBIND11_MODULE(edscorr, m) {
  m.doc() = "Character correlations along elliptic division polynomial sequences";

  py::register_exception<hs::RangeError>(m, "RangeError", PyExc_ValueError);

  py::class_<ContextHandle>(m, "Context")
      .def(py::init(&make_context), py::arg("p"), py::arg("a") = py::none(), py::arg("b") = py::none(),
           py::arg("px") = py::none(), py::arg("py") = py::none(), py::arg("min_order") = 3,
           "Curve y^2 = x^3 + ax + b over F_p with a point P; omitted pieces are searched.")
      .def_property_readonly("p", [](const ContextHandle& c) { return c.rc.ctx.field().modulus(); })
      .def_property_readonly("a", [](const ContextHandle& c) { return c.rc.a; })
      .def_property_readonly("b", [](const ContextHandle& c) { return c.rc.b; })
      .def_property_readonly("point", [](const ContextHandle& c) {
        return py::make_tuple(c.rc.ctx.point().x().value(), c.rc.ctx.point().y().value());
      })
      .def_property_readonly("order", [](const ContextHandle& c) { return c.rc.ctx.order(); })
      .def("psi", [](const ContextHandle& c, i64 n) { return psi_eval(c.rc.ctx, n).value(); }, py::arg("n"))
      .def("psi_range",
           [](const ContextHandle& c, i64 start, std::size_t count) {
             std::vector<u64> out;
             for (const auto& v : psi_range(c.rc.ctx, start, count)) out.push_back(v.value());
             return out;
           },
           py::arg("start"), py::arg("count"))
      .def("check_identity", [](const ContextHandle& c, i64 a, i64 b, i64 r) { return check_identity(c.rc.ctx, a, b, r); })
      .def("__repr__", [](const ContextHandle& c) {
        std::ostringstream os;
        os << "Context(p=" << c.rc.ctx.field().modulus() << ", a=" << c.rc.a << ", b=" << c.rc.b
           << ", P=(" << c.rc.ctx.point().x().value() << ", " << c.rc.ctx.point().y().value()
           << "), order=" << c.rc.ctx.order() << ")";
        return os.str();
      });

  py::class_<CharSeq>(m, "Sequence")
      .def(py::init([](const ContextHandle& c, u64 d) { return CharSeq(c.rc.ctx, char_build(c.rc.ctx.field(), d)); }),
           py::arg("context"), py::arg("d"))
      .def_property_readonly("period", &CharSeq::period)
      .def_property_readonly("order", &CharSeq::order)
      .def("exponent", [](const CharSeq& s, i64 n) { return exponent_or_none(s.at(n)); }, py::arg("n"),
           "Exponent t with s_n = zeta_d^t, or None where s_n = 0.")
      .def("exponents",
           [](const CharSeq& s) {
             py::list out;
             for (const auto& v : s.values()) out.append(exponent_or_none(v));
             return out;
           })
      .def("values", &CharSeq::as_complex)
      .def("__len__", &CharSeq::period);

  m.def(
      "correlations",
      [](const CharSeq& s, std::optional<u64> N, u64 H, bool conj_second, bool fft) {
        return corr_all_shifts(s, N.value_or(s.period()), H, conj_second, fft ? Strategy::kFft : Strategy::kDirect);
      },
      py::arg("seq"), py::arg("N") = py::none(), py::arg("H"), py::arg("conj_second") = false,
      py::arg("fft") = true, "S(N, h) for h = 1..H.");
  m.def(
      "corr_exact",
      [](const CharSeq& s, u64 N, i64 h, bool conj_second) { return corr_S(s, N, h, conj_second).canonical(); },
      py::arg("seq"), py::arg("N"), py::arg("h"), py::arg("conj_second") = false,
      "Canonical integer coordinates of S(N, h) in Z[zeta_d].");
  m.def(
      "partial_sum", [](const CharSeq& s, u64 N) { return sum_S(s, N).to_complex(); }, py::arg("seq"), py::arg("N"));
  m.def(
      "T", [](const CharSeq& s, u64 H, bool fft) { return T_sum(s, H, fft ? Strategy::kFft : Strategy::kDirect); },
      py::arg("seq"), py::arg("H"), py::arg("fft") = true);
  m.def("spectrum", &spectrum, py::arg("seq"));
  m.def(
      "U_avg",
      [](const CharSeq& s, unsigned mm, u64 H, std::optional<u64> N, std::optional<u64> sample, u64 seed) {
        return tuple_dict(U_avg(s, mm, H, N.value_or(s.period()), sample_of(sample, seed)));
      },
      py::arg("seq"), py::arg("m"), py::arg("H"), py::arg("N") = py::none(), py::arg("sample") = py::none(),
      py::arg("seed") = 0);
  m.def(
      "V_avg",
      [](const CharSeq& s, unsigned mm, u64 H, std::optional<u64> N, std::optional<u64> sample, u64 seed) {
        return tuple_dict(V_avg(s, mm, H, N.value_or(s.period()), sample_of(sample, seed)));
      },
      py::arg("seq"), py::arg("m"), py::arg("H"), py::arg("N") = py::none(), py::arg("sample") = py::none(),
      py::arg("seed") = 0);
  m.def(
      "bound_B1",
      [](u64 p, u64 R, u64 H, double c1, double c2, bool complete) {
        return bound_B1(p, R, H, BoundConstants{c1, c2, 1.0}, complete);
      },
      py::arg("p"), py::arg("R"), py::arg("H"), py::arg("c1") = 1.0, py::arg("c2") = 1.0,
      py::arg("complete") = false);
  m.def("bound_B2", &bound_B2, py::arg("p"), py::arg("R"), py::arg("H"), py::arg("c3") = 1.0,
        py::arg("complete") = false, "None when R is below the large-period threshold.");
  m.def("large_period_threshold", &large_period_threshold, py::arg("p"));

  m.def(
      "verify",
      [](std::vector<std::string> suites, u64 seed) {
        hs::VerifyOptions opts;
        opts.suites = std::move(suites);
        opts.seed = seed;
        const auto report = hs::run_verify(opts);
        py::dict out;
        for (const auto& s : report.suites) {
          py::dict d;
          d["cases"] = s.cases;
          d["failures"] = s.failures;
          d["samples"] = s.samples;
          out[py::str(s.name)] = d;
        }
        return out;
      },
      py::arg("suites") = std::vector<std::string>{"all"}, py::arg("seed") = 42);
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = hs::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
