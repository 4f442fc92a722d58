// Python bindings for the posmap core. Matrices cross the boundary as numpy
// complex arrays; reports come back as plain dicts.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "posmap/analysis.hpp"
#include "posmap/maprep.hpp"
#include "posmap/matspace.hpp"
#include "posmap/stateclasses.hpp"

namespace py = pybind11;
using namespace posmap;

namespace {

OrthonormalBasis basis_by_name(const std::string& name, int d) {
    return make_basis(basis_kind_from_string(name), d);
}

DensityMatrix as_density(const Matrix& rho) { return DensityMatrix::validated(rho); }

py::dict spectrum_dict(const SpectrumReport& rep) {
    py::dict out;
    out["d"] = rep.d;
    out["eigenvalues"] = rep.eigenvalues;
    out["spectral_radius"] = rep.spectral_radius;
    out["pf_bound"] = rep.pf_bound;
    out["bound_satisfied"] = rep.bound_satisfied;
    return out;
}

py::dict witness_dict(const Witness& w) {
    py::dict out;
    out["a"] = w.a;
    out["value"] = w.value;
    out["norm_inf"] = w.norm_inf;
    out["trace_nonneg"] = w.trace_nonneg;
    out["trace_sq"] = w.trace_sq_ok;
    out["sampled_min"] = w.sampled_min;
    out["n_samples"] = w.n_samples;
    out["seed"] = w.seed;
    return out;
}

ProjectionSpec make_projection_spec(const std::vector<Matrix>& p,
                                    const std::vector<Matrix>& omega) {
    ProjectionSpec spec;
    spec.d = p.empty() ? 0 : static_cast<int>(p[0].rows());
    spec.p = p;
    for (const auto& w : omega) spec.omega.push_back(as_density(w));
    spec.validate();
    return spec;
}

ExampleMapSpec make_example_spec(const std::vector<double>& alpha, const Matrix& beta) {
    ExampleMapSpec spec;
    spec.d = static_cast<int>(alpha.size());
    spec.alpha = alpha;
    spec.beta = beta;
    spec.validate();
    return spec;
}

} // namespace

PYBIND11_MODULE(_posmap, m) {
    m.doc() = "linear maps on M_d: representations, positivity, spectra, state classes";

    const auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<BasisError>(m, "BasisError", base);
    py::register_exception<SpecError>(m, "SpecError", base);
    py::register_exception<NotCPError>(m, "NotCPError", base);
    py::register_exception<InBallError>(m, "InBallError", base);
    py::register_exception<NonDiagonalizableError>(m, "NonDiagonalizableError", base);
    py::register_exception<NotAProjectionError>(m, "NotAProjectionError", base);
    py::register_exception<NumericalError>(m, "NumericalError", base);

    py::class_<LinearMap>(m, "LinearMap")
        .def_static("identity", &LinearMap::identity, py::arg("d"))
        .def_static("transpose", &LinearMap::transpose_map, py::arg("d"))
        .def_static(
            "from_transfer",
            [](const Matrix& b, int d, const std::string& basis) {
                return LinearMap(TransferMatrix{d, b, basis_by_name(basis, d)});
            },
            py::arg("B"), py::arg("d"), py::arg("basis") = "matrix_units")
        .def_static(
            "from_choi",
            [](const Matrix& c, int d) { return LinearMap(ChoiMatrix{d, c}); }, py::arg("C"),
            py::arg("d"))
        .def_static(
            "from_aform",
            [](const Matrix& a, int d, const std::string& basis) {
                return LinearMap(AForm{d, a, basis_by_name(basis, d)});
            },
            py::arg("A"), py::arg("d"), py::arg("basis") = "matrix_units")
        .def_static(
            "from_kraus",
            [](const std::vector<Matrix>& ops, int d) {
                return LinearMap(KrausForm{d, ops});
            },
            py::arg("ops"), py::arg("d"))
        .def_property_readonly("d", &LinearMap::dim)
        .def_property_readonly("rep", [](const LinearMap& x) { return to_string(x.rep()); })
        .def("apply", &LinearMap::apply, py::arg("a"))
        .def("to_transfer",
             [](const LinearMap& x, const std::string& basis) {
                 return x.to_transfer(basis_by_name(basis, x.dim())).B;
             },
             py::arg("basis") = "matrix_units")
        .def("to_choi", [](const LinearMap& x) { return x.to_choi().C; })
        .def("to_aform",
             [](const LinearMap& x, const std::string& basis) {
                 return x.to_aform(basis_by_name(basis, x.dim())).A;
             },
             py::arg("basis") = "matrix_units")
        .def("to_kraus", [](const LinearMap& x) { return kraus_from_choi(x).ops; })
        .def("dual", [](const LinearMap& x) { return dual(x); })
        .def("compose", [](const LinearMap& x, const LinearMap& y) { return compose(x, y); },
             py::arg("other"))
        .def("is_unital", [](const LinearMap& x) { return is_unital(x); })
        .def("is_trace_preserving", [](const LinearMap& x) { return is_trace_preserving(x); })
        .def("is_selfadjoint", [](const LinearMap& x) { return is_selfadjoint(x); })
        .def("__repr__", [](const LinearMap& x) {
            return "<LinearMap d=" + std::to_string(x.dim()) + " rep=" + to_string(x.rep()) + ">";
        });

    // matspace
    m.def("hs_inner", &hs_inner, py::arg("a"), py::arg("b"));
    m.def("purity", [](const Matrix& rho) { return purity(as_density(rho)); }, py::arg("rho"));
    m.def("matrix_unit_basis", [](int d) { return matrix_unit_basis(d).elems; }, py::arg("d"));
    m.def("gell_mann_traceless", [](int d) { return gell_mann_traceless(d).elems; },
          py::arg("d"));
    m.def("fourier_diagonal_basis", &fourier_diagonal_basis, py::arg("d"));
    m.def("random_density",
          [](int d, int rank, std::uint64_t seed) { return random_density(d, rank, seed).matrix(); },
          py::arg("d"), py::arg("rank"), py::arg("seed"));

    // maprep
    m.def("map_inner", &map_inner, py::arg("phi"), py::arg("psi"));

    // analysis
    m.def("is_completely_positive",
          [](const LinearMap& phi) {
              const CpReport rep = is_completely_positive(phi);
              py::dict out;
              out["cp"] = rep.cp;
              out["min_choi_eig"] = rep.min_choi_eig;
              out["reason"] = rep.reason;
              return out;
          },
          py::arg("phi"));
    m.def("is_completely_copositive",
          [](const LinearMap& phi) { return is_completely_copositive(phi); }, py::arg("phi"));
    m.def("spectrum", [](const LinearMap& phi) { return spectrum_dict(spectrum(phi)); },
          py::arg("phi"));
    m.def("positivity_falsify",
          [](const LinearMap& phi, int n, std::uint64_t seed) {
              const FalsifyResult r = positivity_falsify(phi, n, seed);
              py::dict out;
              out["found"] = r.found;
              out["trials"] = r.trials;
              out["seed"] = r.seed;
              if (r.found) {
                  out["state"] = r.state;
                  out["min_output_eig"] = r.min_output_eig;
              }
              return out;
          },
          py::arg("phi"), py::arg("n_samples"), py::arg("seed") = 0);
    m.def("biorthonormal_decomposition",
          [](const LinearMap& phi, double cond_max) {
              const BiorthDecomp dec = biorthonormal_decomposition(phi, cond_max);
              py::dict out;
              out["d"] = dec.d;
              out["lambdas"] = dec.lambdas;
              out["f"] = dec.f;
              out["g"] = dec.g;
              out["condition_number"] = dec.condition_number;
              return out;
          },
          py::arg("phi"), py::arg("cond_max") = 1e8);
    m.def("adapted_invariant_basis",
          [](int d, const Matrix& omega) {
              const AdaptedBasis basis = adapted_invariant_basis(d, as_density(omega));
              return py::make_tuple(basis.f, basis.g);
          },
          py::arg("d"), py::arg("omega"));
    m.def("example_map",
          [](const std::vector<double>& alpha, const Matrix& beta) {
              return example_map(make_example_spec(alpha, beta));
          },
          py::arg("alpha"), py::arg("beta"));
    m.def("predicted_eigenvalues",
          [](const std::vector<double>& alpha, const Matrix& beta) {
              return predicted_eigenvalues(make_example_spec(alpha, beta));
          },
          py::arg("alpha"), py::arg("beta"));
    m.def("random_example_spec",
          [](int d, std::uint64_t seed) {
              const ExampleMapSpec spec = ExampleMapSpec::random(d, seed);
              return py::make_tuple(spec.alpha, spec.beta);
          },
          py::arg("d"), py::arg("seed"));

    // stateclasses
    m.def("projection_map",
          [](const std::vector<Matrix>& p, const std::vector<Matrix>& omega) {
              return projection_map(make_projection_spec(p, omega));
          },
          py::arg("p"), py::arg("omega"));
    m.def("invariant_state",
          [](const std::vector<Matrix>& p, const std::vector<Matrix>& omega,
             const std::vector<double>& c) {
              return invariant_states(make_projection_spec(p, omega), c).matrix();
          },
          py::arg("p"), py::arg("omega"), py::arg("c"));
    m.def("pinching", [](const std::vector<Matrix>& p) { return pinching(p); },
          py::arg("projectors"));
    m.def("flip_operator", &flip_operator, py::arg("n"));
    m.def("isotropic_projectors", &isotropic_projectors, py::arg("n"));
    m.def("werner_projectors", &werner_projectors, py::arg("n"));
    m.def("werner_map", &werner_map, py::arg("n"));
    m.def("isotropic_map", &isotropic_map, py::arg("n"));
    m.def("ball_map", &ball_map, py::arg("d"));
    m.def("ball_membership",
          [](const Matrix& rho, int d) { return ball_membership(as_density(rho), d); },
          py::arg("rho"), py::arg("d"));
    m.def("cone_membership",
          [](const Matrix& a, int d) { return cone_membership(a, d); }, py::arg("a"),
          py::arg("d"));
    m.def("ball_witness",
          [](const Matrix& rho, int d, int n_samples, std::uint64_t seed) {
              return witness_dict(ball_witness(as_density(rho), d, n_samples, seed));
          },
          py::arg("rho"), py::arg("d"), py::arg("n_samples") = 1000, py::arg("seed") = 0);
    m.def("projection_membership",
          [](const Matrix& rho, const LinearMap& pi) {
              const MembershipResult r = projection_membership(as_density(rho), pi);
              py::dict out;
              out["member"] = r.member;
              if (!r.member) {
                  out["witness"] = *r.witness;
                  out["value"] = r.value;
              }
              return out;
          },
          py::arg("rho"), py::arg("pi"));
}
