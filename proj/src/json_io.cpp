#include "posmap/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

namespace posmap {

namespace {

double number_from_json(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
    return v;
}

int positive_int_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 1)
        throw SchemaError(path, "expected a positive integer");
    return static_cast<int>(j.get<long long>());
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError(path, "expected a [re, im] pair");
    return {number_from_json(j[0], path + "/0"), number_from_json(j[1], path + "/1")};
}

Json matrix_to_json(const Matrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
    const int rows = positive_int_from_json(field(j, "rows", path), path + "/rows");
    const int cols = positive_int_from_json(field(j, "cols", path), path + "/cols");
    const Json& data = field(j, "data", path);
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols)
        throw SchemaError(path + "/data", "expected rows*cols complex entries");
    Matrix m(rows, cols);
    std::size_t idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c, ++idx)
            m(i, c) = complex_from_json(data[idx], path + "/data/" + std::to_string(idx));
    return m;
}

Json basis_to_json(const OrthonormalBasis& basis) {
    if (basis.kind != BasisKind::custom) return Json(to_string(basis.kind));
    Json elems = Json::array();
    for (const auto& f : basis.elems) elems.push_back(matrix_to_json(f));
    return Json{{"kind", "custom"}, {"elems", std::move(elems)}};
}

OrthonormalBasis basis_from_json(const Json& j, int d, const std::string& path) {
    if (j.is_string()) {
        BasisKind kind;
        try {
            kind = basis_kind_from_string(j.get<std::string>());
        } catch (const BasisError& e) {
            throw SchemaError(path, e.what());
        }
        if (kind == BasisKind::custom)
            throw SchemaError(path, "custom basis requires an elems list");
        return make_basis(kind, d);
    }
    if (j.is_object()) {
        const Json& kind = field(j, "kind", path);
        if (!kind.is_string() || kind.get<std::string>() != "custom")
            throw SchemaError(path + "/kind", "expected \"custom\"");
        const Json& elems = field(j, "elems", path);
        if (!elems.is_array()) throw SchemaError(path + "/elems", "expected an array");
        std::vector<Matrix> mats;
        for (std::size_t i = 0; i < elems.size(); ++i)
            mats.push_back(matrix_from_json(elems[i], path + "/elems/" + std::to_string(i)));
        try {
            return OrthonormalBasis::custom(d, std::move(mats));
        } catch (const Error& e) {
            throw SchemaError(path + "/elems", e.what());
        }
    }
    throw SchemaError(path, "expected a basis name or custom basis object");
}

Json map_to_json(const LinearMap& map) {
    Json j{{"d", map.dim()}, {"repr", to_string(map.rep())}};
    std::visit(
        [&](const auto& rep) {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, TransferMatrix>) {
                j["basis"] = basis_to_json(rep.basis);
                j["data"] = matrix_to_json(rep.B);
            } else if constexpr (std::is_same_v<T, AForm>) {
                j["basis"] = basis_to_json(rep.basis);
                j["data"] = matrix_to_json(rep.A);
            } else if constexpr (std::is_same_v<T, ChoiMatrix>) {
                j["data"] = matrix_to_json(rep.C);
            } else {
                Json ops = Json::array();
                for (const auto& op : rep.ops) ops.push_back(matrix_to_json(op));
                j["data"] = std::move(ops);
            }
        },
        map.native());
    return j;
}

LinearMap map_from_json(const Json& j, const std::string& path) {
    const int d = positive_int_from_json(field(j, "d", path), path + "/d");
    const Json& repr = field(j, "repr", path);
    if (!repr.is_string()) throw SchemaError(path + "/repr", "expected a string");
    RepKind kind;
    try {
        kind = rep_kind_from_string(repr.get<std::string>());
    } catch (const Error& e) {
        throw SchemaError(path + "/repr", e.what());
    }
    const Json& data = field(j, "data", path);
    OrthonormalBasis basis;
    if (kind == RepKind::transfer || kind == RepKind::aform) {
        if (j.contains("basis"))
            basis = basis_from_json(j["basis"], d, path + "/basis");
        else
            basis = matrix_unit_basis(d);
    }
    try {
        switch (kind) {
            case RepKind::transfer:
                return LinearMap(TransferMatrix{d, matrix_from_json(data, path + "/data"), basis});
            case RepKind::aform:
                return LinearMap(AForm{d, matrix_from_json(data, path + "/data"), basis});
            case RepKind::choi:
                return LinearMap(ChoiMatrix{d, matrix_from_json(data, path + "/data")});
            case RepKind::kraus: {
                if (!data.is_array()) throw SchemaError(path + "/data", "expected a list of matrices");
                KrausForm kraus;
                kraus.d = d;
                for (std::size_t i = 0; i < data.size(); ++i)
                    kraus.ops.push_back(
                        matrix_from_json(data[i], path + "/data/" + std::to_string(i)));
                return LinearMap(std::move(kraus));
            }
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(path, "unreachable representation");
}

Json spectrum_to_json(const SpectrumReport& report) {
    Json ev = Json::array();
    for (Complex l : report.eigenvalues) ev.push_back(complex_to_json(l));
    return Json{{"d", report.d},
                {"eigenvalues", std::move(ev)},
                {"spectral_radius", report.spectral_radius},
                {"pf_bound", report.pf_bound},
                {"bound_satisfied", report.bound_satisfied}};
}

Json biorth_to_json(const BiorthDecomp& decomp) {
    Json lambdas = Json::array();
    for (Complex l : decomp.lambdas) lambdas.push_back(complex_to_json(l));
    Json f = Json::array();
    for (const auto& m : decomp.f) f.push_back(matrix_to_json(m));
    Json g = Json::array();
    for (const auto& m : decomp.g) g.push_back(matrix_to_json(m));
    return Json{{"d", decomp.d},
                {"lambdas", std::move(lambdas)},
                {"f", std::move(f)},
                {"g", std::move(g)},
                {"condition_number", decomp.condition_number}};
}

Json witness_to_json(const Witness& witness) {
    return Json{{"a", matrix_to_json(witness.a)},
                {"value", witness.value},
                {"norm_inf", witness.norm_inf},
                {"cone", Json{{"trace_nonneg", witness.trace_nonneg},
                              {"trace_sq", witness.trace_sq_ok}}},
                {"sampled_min", witness.sampled_min},
                {"n_samples", witness.n_samples},
                {"seed", witness.seed}};
}

Json load_json_file(const std::string& path) {
    try {
        if (path == "-") return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw SchemaError(path, "cannot open file");
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path, std::string("invalid JSON: ") + e.what());
    }
}

} // namespace posmap
