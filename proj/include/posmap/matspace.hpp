#pragma once

// Complex matrix foundation: Hilbert-Schmidt geometry, orthonormal bases of
// M_d, density operators, and seeded Gaussian fixtures used by the property
// tests. Everything is immutable after construction and safe to share across
// threads.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "posmap/errors.hpp"

namespace posmap {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

// Default validation tolerance (1e-9 absolute); the POSMAP_ATOL environment
// variable overrides it with a decimal string.
double default_atol();

double max_abs(const Matrix& a);
bool all_finite(const Matrix& a);
bool is_hermitian(const Matrix& a, double atol = default_atol());
// Min eigenvalue of the hermitized part >= -atol * max(1, max_abs(a)).
bool is_psd(const Matrix& a, double atol = default_atol());
double min_eigenvalue_hermitian(const Matrix& a);
// Largest singular value.
double operator_norm(const Matrix& a);

// Hilbert-Schmidt inner product tr(a^dag b); conjugate-linear in the first
// argument, linear in the second.
Complex hs_inner(const Matrix& a, const Matrix& b);

// tr(rho^2)
double purity(const Matrix& rho);

// ---------------------------------------------------------------------------
// Seeded randomness. Gaussians come from a hand-rolled Box-Muller transform
// over the raw 53-bit uniforms of mt19937_64, so a given seed produces the
// same stream on every platform and standard library.
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();        // [0, 1)
    double gaussian();       // N(0, 1)
    Complex cgaussian();     // re, im independent N(0, 1)

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

Matrix random_gaussian_matrix(int rows, int cols, Rng& rng);
// Normalized Haar-random state vector.
Vector random_haar_state(int d, Rng& rng);

// ---------------------------------------------------------------------------
// Bases of M_d
// ---------------------------------------------------------------------------

// e_ij: single 1 at row i, col j. Basis index alpha = i*d + j (zero-based).
Matrix matrix_unit(int d, int i, int j);

enum class BasisKind {
    matrix_units,
    fourier_diagonal_plus_offdiag,
    gell_mann_with_identity,
    custom,
};

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

struct OrthonormalBasis {
    int d = 0;
    BasisKind kind = BasisKind::custom;
    std::vector<Matrix> elems;  // d^2 matrices, tr(f_a^dag f_b) = delta_ab

    // Validates pairwise HS-orthonormality.
    static OrthonormalBasis custom(int d, std::vector<Matrix> elems,
                                   double atol = default_atol());
};

OrthonormalBasis matrix_unit_basis(int d);
// Gell-Mann traceless family followed by I/sqrt(d) as the last element.
OrthonormalBasis gell_mann_with_identity(int d);
// Fourier diagonals u_0..u_{d-1} followed by off-diagonal matrix units in
// row-major order.
OrthonormalBasis fourier_offdiag_basis(int d);
OrthonormalBasis make_basis(BasisKind kind, int d);

// d^2 - 1 orthonormal traceless matrices: (e_ij + e_ji)/sqrt(2) and
// -i(e_ij - e_ji)/sqrt(2) for i < j, then d - 1 diagonal traceless matrices.
struct TracelessFamily {
    int d = 0;
    std::vector<Matrix> elems;
};
TracelessFamily gell_mann_traceless(int d);

// u_m = 1/sqrt(d) sum_j lambda^{jm} e_jj with lambda = exp(2 pi i / d).
std::vector<Matrix> fourier_diagonal_basis(int d);

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

class DensityMatrix {
public:
    // Checks Hermiticity, positive semidefiniteness and unit trace.
    static DensityMatrix validated(Matrix m, double atol = default_atol());
    static DensityMatrix maximally_mixed(int d);
    static DensityMatrix pure(const Vector& psi);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

double purity(const DensityMatrix& rho);

// G G^dag / tr(G G^dag) with G a d x rank matrix of standard complex
// Gaussians; deterministic for a fixed seed.
DensityMatrix random_density(int d, int rank, std::uint64_t seed);

} // namespace posmap
