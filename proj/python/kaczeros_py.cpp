#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/errors.hpp"
#include "kaczeros/harness.hpp"
#include "kaczeros/io.hpp"
#include "kaczeros/measure.hpp"
#include "kaczeros/polynomial.hpp"
#include "kaczeros/rate_function.hpp"
#include "kaczeros/zero_density.hpp"

namespace py = pybind11;
using namespace kaczeros;

namespace {

py::object to_python(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::json::value_t::string: {
            const auto s = j.get<std::string>();
            if (s == "inf" || s == "-inf" || s == "nan") return py::float_(io::parse_number(j));
            return py::str(s);
        }
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& x : j) out.append(to_python(x));
            return std::move(out);
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_python(it.value());
            return std::move(out);
        }
        default: return py::none();
    }
}

nlohmann::json from_python(const py::handle& h) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(h).cast<std::string>());
}

// A law given as a short token ("cgauss", "udisk:1") or a {"kind", "params"} dict.
CoefficientLaw to_law(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) return CoefficientLaw::from_token(spec.cast<std::string>());
    return CoefficientLaw::from_json(from_python(spec));
}

Field to_field(const std::string& s) { return parse_field(s); }

ExperimentSpec make_spec(const py::object& law, std::vector<std::size_t> degrees, std::size_t replicas,
                         std::uint64_t seed, unsigned threads) {
    ExperimentSpec spec;
    spec.law = to_law(law);
    spec.degrees = std::move(degrees);
    spec.replicas = replicas;
    spec.seed = seed;
    spec.threads = threads;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_kaczeros, m) {
    m.doc() = "Zeros of random Kac polynomials";

    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);
    py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const InvalidConfiguration& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("law", [](const py::object& spec) { return to_python(to_law(spec).to_json()); }, py::arg("spec"),
          "Canonical JSON form of a law token or dict.");

    m.def(
        "sample_coeffs",
        [](const py::object& law, std::size_t n, std::uint64_t seed) { return sample_coeffs(to_law(law), n, seed).coeffs; },
        py::arg("law"), py::arg("n"), py::arg("seed"));

    m.def(
        "find_roots",
        [](std::vector<cplx> coeffs, const std::string& method, double tol) {
            CoefficientVector c;
            bool real = true;
            for (const cplx& a : coeffs) real = real && a.imag() == 0.0;
            c.coeffs = std::move(coeffs);
            c.field = real ? Field::real : Field::complex;
            const RootSet r = find_roots(c, parse_root_method(method), tol);
            py::dict out;
            out["roots"] = r.roots;
            out["leading"] = r.leading;
            out["certified"] = r.residual_certified;
            out["max_backward_error"] = r.max_backward_error;
            return out;
        },
        py::arg("coeffs"), py::arg("method") = "aberth", py::arg("tol") = 1e-12);

    m.def(
        "expand_from_roots", [](const std::vector<cplx>& roots, cplx leading) { return expand_from_roots(roots, leading).coeffs; },
        py::arg("roots"), py::arg("leading") = cplx(1.0, 0.0));

    m.def("roots_of_unity", &roots_of_unity, py::arg("count"));

    m.def(
        "dbl_distance",
        [](const std::vector<cplx>& mu, const std::optional<std::vector<cplx>>& nu) {
            return dbl_distance(measure_from_atoms(mu), nu ? measure_from_atoms(*nu) : unit_circle_measure());
        },
        py::arg("mu"), py::arg("nu") = py::none(), "BL distance lower bound; nu defaults to the unit circle.");

    m.def(
        "real_fraction", [](const std::vector<cplx>& mu, double tol) { return real_fraction(measure_from_atoms(mu), tol); },
        py::arg("mu"), py::arg("tol") = 1e-12);

    m.def("log_energy", [](const std::vector<cplx>& mu) { return log_energy(measure_from_atoms(mu)); }, py::arg("mu"));

    m.def(
        "circle_sup",
        [](const std::vector<cplx>& mu, bool doubling) { return circle_sup(measure_from_atoms(mu), doubling).value; },
        py::arg("mu"), py::arg("doubling") = false);

    m.def(
        "rate_I",
        [](const std::string& ensemble, const std::vector<cplx>& mu, double tol) {
            return to_python(io::to_json(rate_I(to_field(ensemble), measure_from_atoms(mu), tol)));
        },
        py::arg("ensemble"), py::arg("mu"), py::arg("tol") = 1e-10);

    m.def(
        "rate_I_alpha",
        [](double alpha, const std::vector<cplx>& mu) { return to_python(io::to_json(rate_I_alpha(alpha, measure_from_atoms(mu)))); },
        py::arg("alpha"), py::arg("mu"));

    m.def(
        "rate_I_compactified",
        [](const std::vector<cplx>& mu) { return to_python(io::to_json(rate_I_compactified(measure_from_atoms(mu)))); },
        py::arg("mu"));

    m.def(
        "log_joint_density",
        [](const std::string& ensemble, const std::vector<cplx>& roots) {
            return to_python(io::to_json(log_joint_density(to_field(ensemble), roots)));
        },
        py::arg("ensemble"), py::arg("roots"));

    m.def(
        "sandwich_log_ratio",
        [](const py::object& law, const std::vector<cplx>& roots, const std::string& reference) {
            return to_python(io::to_json(sandwich_log_ratio(to_law(law), roots, to_field(reference))));
        },
        py::arg("law"), py::arg("roots"), py::arg("reference"));

    m.def(
        "vector_norm", [](const std::vector<cplx>& v, double p) { return vector_norm(v, p); }, py::arg("v"), py::arg("p"));
    m.def("gamma_n", &gamma_n, py::arg("rho"), py::arg("n"));

    m.def(
        "c_lambda",
        [](const py::object& law, double delta, double lambda) { return to_python(io::to_json(c_lambda(to_law(law), delta, lambda))); },
        py::arg("law"), py::arg("delta"), py::arg("lambda_"));

    m.def(
        "check_envelope",
        [](const py::object& law, double rho, double r, double R) {
            return to_python(io::to_json(check_envelope(to_law(law), EnvelopeParams(rho, r, R))));
        },
        py::arg("law"), py::arg("rho"), py::arg("r"), py::arg("R"));

    m.def(
        "run_convergence_scan",
        [](const py::object& law, std::vector<std::size_t> degrees, std::size_t replicas, std::uint64_t seed, unsigned threads) {
            const ExperimentSpec spec = make_spec(law, std::move(degrees), replicas, seed, threads);
            ConvergenceReport r;
            {
                py::gil_scoped_release release;
                r = run_convergence_scan(spec);
            }
            return to_python(io::to_json(r));
        },
        py::arg("law"), py::arg("degrees"), py::arg("replicas"), py::arg("seed"), py::arg("threads") = 1);

    m.def(
        "density_oracle_compare",
        [](const py::object& law, std::size_t n, std::size_t samples, std::uint64_t seed) {
            const CoefficientLaw l = to_law(law);
            GoodnessOfFit fit;
            {
                py::gil_scoped_release release;
                fit = density_oracle_compare(l, n, samples, seed);
            }
            return to_python(io::to_json(fit));
        },
        py::arg("law"), py::arg("n"), py::arg("samples"), py::arg("seed"));

    m.def(
        "ldp_ratio_scan",
        [](const py::object& law, const std::string& reference, std::vector<std::size_t> degrees, std::size_t replicas,
           std::uint64_t seed, unsigned threads) {
            const ExperimentSpec spec = make_spec(law, std::move(degrees), replicas, seed, threads);
            LdpReport r;
            {
                py::gil_scoped_release release;
                r = ldp_ratio_scan(spec, to_field(reference));
            }
            return to_python(io::to_json(r));
        },
        py::arg("law"), py::arg("reference"), py::arg("degrees"), py::arg("replicas"), py::arg("seed"),
        py::arg("threads") = 1);
}
