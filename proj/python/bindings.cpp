#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "convchar/characterizer.hpp"
#include "convchar/cli.hpp"
#include "convchar/identities.hpp"
#include "convchar/laplace.hpp"
#include "convchar/operator_factory.hpp"
#include "convchar/serialization.hpp"
#include "convchar/transforms.hpp"

namespace py = pybind11;
using namespace convchar;

namespace {

using ComplexArray = py::array_t<complex, py::array::c_style | py::array::forcecast>;

std::vector<complex> to_vector(const ComplexArray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    return {a.data(), a.data() + a.size()};
}

ComplexArray to_array(const std::vector<complex>& v) {
    ComplexArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

ComplexArray matrix_to_array(const ComplexMatrix& m) {
    ComplexArray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

ComplexMatrix array_to_matrix(const ComplexArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d kernel array");
    return ComplexMatrix(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)),
                         std::vector<complex>(a.data(), a.data() + a.size()));
}

Signal make_signal(const std::string& group, const ComplexArray& values) {
    return Signal(FiniteAbelianGroup::parse(group), to_vector(values));
}

TransformKind parse_kind(const std::string& kind) {
    if (kind == "fourier") return TransformKind::Fourier;
    if (kind == "cosine") return TransformKind::Cosine;
    throw std::invalid_argument("kind must be 'fourier' or 'cosine'");
}

ThetaAssignment theta_from_python(const std::vector<std::optional<std::size_t>>& entries) {
    ThetaAssignment theta;
    for (const auto& e : entries) {
        if (e) {
            theta.targets.emplace_back(IndexTarget{*e});
        } else {
            theta.targets.emplace_back(Annihilated{});
        }
    }
    return theta;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Transforms on finite abelian groups and the half-line, and extraction of theta maps "
              "from operators with a convolution property.";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<NotEvenError>(m, "NotEvenError", PyExc_ValueError);

    py::class_<FiniteAbelianGroup>(m, "Group")
        .def(py::init([](const std::string& spec) { return FiniteAbelianGroup::parse(spec); }), py::arg("spec"))
        .def_property_readonly("spec", &FiniteAbelianGroup::spec)
        .def_property_readonly("factors", &FiniteAbelianGroup::factors)
        .def_property_readonly("order", &FiniteAbelianGroup::order)
        .def("element", [](const FiniteAbelianGroup& g, std::size_t i) { return g.element(i).coords; })
        .def("index_of", [](const FiniteAbelianGroup& g, std::vector<int> c) { return g.index_of({std::move(c)}); })
        .def("character", &FiniteAbelianGroup::character, py::arg("dual"), py::arg("x"))
        .def("cosine_orbits", [](const FiniteAbelianGroup& g) { return cosine_orbit_representatives(g); })
        .def("__repr__", [](const FiniteAbelianGroup& g) { return "Group('" + g.spec() + "')"; });

    m.def("fourier_transform", [](const std::string& g, const ComplexArray& f) {
        return to_array(fourier_transform(make_signal(g, f)).values());
    }, py::arg("group"), py::arg("f"));
    m.def("inverse_fourier_transform", [](const std::string& g, const ComplexArray& spectrum) {
        const auto grp = FiniteAbelianGroup::parse(g);
        return to_array(inverse_fourier_transform(Spectrum(SpectrumIndex::Dual, grp, to_vector(spectrum))).values());
    }, py::arg("group"), py::arg("spectrum"));
    m.def("cosine_transform", [](const std::string& g, const ComplexArray& f) {
        return to_array(cosine_transform(make_signal(g, f)).values());
    }, py::arg("group"), py::arg("f"));
    m.def("fourier_convolution", [](const std::string& g, const ComplexArray& f, const ComplexArray& h) {
        return to_array(fourier_convolution(make_signal(g, f), make_signal(g, h)).values());
    }, py::arg("group"), py::arg("f"), py::arg("g"));
    m.def("cosine_convolution", [](const std::string& g, const ComplexArray& f, const ComplexArray& h) {
        return to_array(cosine_convolution(make_signal(g, f), make_signal(g, h)).values());
    }, py::arg("group"), py::arg("f"), py::arg("g"));

    m.def("laplace_transform", [](double h, const ComplexArray& f, double y) {
        const auto values = to_vector(f);
        return laplace_transform(GridSignal(HalfLineGrid(h, values.size()), values), y);
    }, py::arg("h"), py::arg("f"), py::arg("y"));
    m.def("laplace_convolution", [](double h, const ComplexArray& f, const ComplexArray& g) {
        const auto fv = to_vector(f);
        const HalfLineGrid grid(h, fv.size());
        return to_array(laplace_convolution(GridSignal(grid, fv), GridSignal(grid, to_vector(g))).values());
    }, py::arg("h"), py::arg("f"), py::arg("g"));
    m.def("_convergence_study_json", [](const std::string& f, const std::string& g, const std::vector<double>& y,
                                        const std::vector<double>& steps, double horizon,
                                        const std::vector<double>& horizons) {
        return study_to_json(convergence_study(TestFunction::parse(f), TestFunction::parse(g), y, steps, horizon,
                                               horizons)).dump();
    });

    m.def("build_from_theta", [](const std::string& g, const std::string& kind,
                                 const std::vector<std::optional<std::size_t>>& theta) {
        return matrix_to_array(build_from_theta(FiniteAbelianGroup::parse(g), parse_kind(kind),
                                                theta_from_python(theta)).kernel());
    }, py::arg("group"), py::arg("kind"), py::arg("theta"));
    m.def("check_multiplicativity", [](const std::string& g, const std::string& kind, const ComplexArray& kernel) {
        const TransformKind k = parse_kind(kind);
        return check_multiplicativity(
            MultiplicativeOperator(FiniteAbelianGroup::parse(g), output_index_for(k), array_to_matrix(kernel)), k);
    }, py::arg("group"), py::arg("kind"), py::arg("kernel"));
    m.def("_extract_json", [](const std::string& g, const std::string& kind, const ComplexArray& kernel, double tol) {
        const TransformKind k = parse_kind(kind);
        const MultiplicativeOperator op(FiniteAbelianGroup::parse(g), output_index_for(k), array_to_matrix(kernel));
        const auto report = k == TransformKind::Fourier ? extract_theta_fourier(op, tol) : extract_theta_cosine(op, tol);
        return report_to_json(report).dump();
    });
    m.def("_extract_laplace_json", [](double h, const std::vector<double>& y, const ComplexArray& kernel,
                                      double tol_eq, double tol_fit) {
        const ComplexMatrix k = array_to_matrix(kernel);
        const LaplaceOperatorKernel op(HalfLineGrid(h, k.cols()), y, k);
        return report_to_json(extract_theta_laplace(op, tol_eq, tol_fit)).dump();
    });
    m.def("_verify_identities", [](const std::string& g, std::size_t trials, std::uint64_t seed) {
        const auto suite = verify_identities(FiniteAbelianGroup::parse(g), trials, seed);
        py::dict out;
        for (const auto& r : suite.results) {
            py::dict entry;
            entry["max_residual"] = r.max_residual;
            entry["tolerance"] = r.tolerance ? py::cast(*r.tolerance) : py::none();
            entry["pass"] = r.pass;
            out[py::str(r.name)] = entry;
        }
        return py::make_tuple(out, suite.pass());
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        std::vector<std::string> argv{"convchar"};
        argv.insert(argv.end(), args.begin(), args.end());
        const int code = cli::run(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
