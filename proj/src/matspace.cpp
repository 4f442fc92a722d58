#include "posmap/matspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace posmap {

double default_atol() {
    static const double atol = [] {
        if (const char* env = std::getenv("POSMAP_ATOL")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end != env && v > 0.0 && std::isfinite(v)) return v;
        }
        return 1e-9;
    }();
    return atol;
}

double max_abs(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

bool is_hermitian(const Matrix& a, double atol) {
    if (a.rows() != a.cols()) return false;
    return max_abs(a - a.adjoint()) <= atol;
}

double min_eigenvalue_hermitian(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("hermitian eigensolve failed");
    return es.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& a, double atol) {
    if (a.rows() != a.cols()) return false;
    return min_eigenvalue_hermitian(a) >= -atol * std::max(1.0, max_abs(a));
}

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().maxCoeff();
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("hs_inner: shape mismatch");
    return (a.adjoint() * b).trace();
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

// --------------------------- randomness -------------------------------------

double Rng::uniform() {
    // 53 high bits of the 64-bit output, mapped to [0, 1).
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Complex Rng::cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

Matrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
    return g;
}

Vector random_haar_state(int d, Rng& rng) {
    if (d < 1) throw DimensionError("random_haar_state: d must be >= 1");
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.cgaussian();
    const double n = v.norm();
    if (n == 0.0) return random_haar_state(d, rng);
    return v / n;
}

// --------------------------- bases ------------------------------------------

Matrix matrix_unit(int d, int i, int j) {
    if (d < 1) throw DimensionError("matrix_unit: d must be >= 1");
    if (i < 0 || i >= d || j < 0 || j >= d) throw DimensionError("matrix_unit: index out of range");
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::matrix_units: return "matrix_units";
        case BasisKind::fourier_diagonal_plus_offdiag: return "fourier_diagonal_plus_offdiag";
        case BasisKind::gell_mann_with_identity: return "gell_mann_with_identity";
        case BasisKind::custom: return "custom";
    }
    throw NumericalError("to_string: unknown basis kind");
}

BasisKind basis_kind_from_string(const std::string& name) {
    if (name == "matrix_units") return BasisKind::matrix_units;
    if (name == "fourier_diagonal_plus_offdiag") return BasisKind::fourier_diagonal_plus_offdiag;
    if (name == "gell_mann_with_identity") return BasisKind::gell_mann_with_identity;
    if (name == "custom") return BasisKind::custom;
    throw BasisError("unknown basis kind: " + name);
}

OrthonormalBasis OrthonormalBasis::custom(int d, std::vector<Matrix> elems, double atol) {
    if (d < 1) throw DimensionError("basis: d must be >= 1");
    if (elems.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
        throw BasisError("basis: expected d^2 elements");
    for (const auto& f : elems)
        if (f.rows() != d || f.cols() != d) throw BasisError("basis: element is not d x d");
    const auto n = elems.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            const Complex ip = hs_inner(elems[a], elems[b]);
            const double target = (a == b) ? 1.0 : 0.0;
            if (std::abs(ip - target) > atol)
                throw BasisError("basis: elements are not HS-orthonormal");
        }
    OrthonormalBasis out;
    out.d = d;
    out.kind = BasisKind::custom;
    out.elems = std::move(elems);
    return out;
}

OrthonormalBasis matrix_unit_basis(int d) {
    if (d < 1) throw DimensionError("matrix_unit_basis: d must be >= 1");
    OrthonormalBasis out;
    out.d = d;
    out.kind = BasisKind::matrix_units;
    out.elems.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.elems.push_back(matrix_unit(d, i, j));
    return out;
}

TracelessFamily gell_mann_traceless(int d) {
    if (d < 2) throw DimensionError("gell_mann_traceless: d must be >= 2");
    TracelessFamily fam;
    fam.d = d;
    fam.elems.reserve(static_cast<std::size_t>(d) * d - 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            fam.elems.push_back(inv_sqrt2 * (matrix_unit(d, i, j) + matrix_unit(d, j, i)));
            fam.elems.push_back(Complex(0.0, -1.0) * inv_sqrt2 *
                                (matrix_unit(d, i, j) - matrix_unit(d, j, i)));
        }
    }
    for (int l = 1; l < d; ++l) {
        Matrix h = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) h(j, j) = norm;
        h(l, l) = -static_cast<double>(l) * norm;
        fam.elems.push_back(h);
    }
    return fam;
}

std::vector<Matrix> fourier_diagonal_basis(int d) {
    if (d < 1) throw DimensionError("fourier_diagonal_basis: d must be >= 1");
    std::vector<Matrix> out;
    out.reserve(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int m = 0; m < d; ++m) {
        Matrix u = Matrix::Zero(d, d);
        for (int j = 0; j < d; ++j) {
            const double phase = 2.0 * std::numbers::pi * j * m / d;
            u(j, j) = scale * Complex(std::cos(phase), std::sin(phase));
        }
        out.push_back(u);
    }
    return out;
}

OrthonormalBasis gell_mann_with_identity(int d) {
    if (d < 2) throw DimensionError("gell_mann_with_identity: d must be >= 2");
    OrthonormalBasis out;
    out.d = d;
    out.kind = BasisKind::gell_mann_with_identity;
    out.elems = gell_mann_traceless(d).elems;
    out.elems.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    return out;
}

OrthonormalBasis fourier_offdiag_basis(int d) {
    if (d < 1) throw DimensionError("fourier_offdiag_basis: d must be >= 1");
    OrthonormalBasis out;
    out.d = d;
    out.kind = BasisKind::fourier_diagonal_plus_offdiag;
    out.elems = fourier_diagonal_basis(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) out.elems.push_back(matrix_unit(d, i, j));
    return out;
}

OrthonormalBasis make_basis(BasisKind kind, int d) {
    switch (kind) {
        case BasisKind::matrix_units: return matrix_unit_basis(d);
        case BasisKind::fourier_diagonal_plus_offdiag: return fourier_offdiag_basis(d);
        case BasisKind::gell_mann_with_identity: return gell_mann_with_identity(d);
        case BasisKind::custom: throw BasisError("make_basis: custom basis needs explicit elements");
    }
    throw BasisError("make_basis: unknown kind");
}

// --------------------------- density operators ------------------------------

DensityMatrix DensityMatrix::validated(Matrix m, double atol) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw DimensionError("density matrix must be square and nonempty");
    if (!all_finite(m)) throw SpecError("density matrix has non-finite entries");
    if (!is_hermitian(m, atol)) throw SpecError("density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > atol)
        throw SpecError("density matrix trace is not 1");
    if (min_eigenvalue_hermitian(m) < -atol * std::max(1.0, max_abs(m)))
        throw SpecError("density matrix is not positive semidefinite");
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
    if (d < 1) throw DimensionError("maximally_mixed: d must be >= 1");
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw SpecError("pure state: zero vector");
    const Vector v = psi / n;
    return DensityMatrix(v * v.adjoint());
}

double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
    if (d < 1) throw DimensionError("random_density: d must be >= 1");
    if (rank < 1 || rank > d) throw DimensionError("random_density: rank out of range");
    Rng rng(seed);
    const Matrix g = random_gaussian_matrix(d, rank, rng);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix::validated(std::move(m));
}

} // namespace posmap
