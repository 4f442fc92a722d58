#pragma once

// Positivity certification, map spectra with the Perron-Frobenius bound,
// bi-orthonormal spectral decompositions, and the circulant example map.

#include <cstdint>
#include <optional>

#include "posmap/maprep.hpp"

namespace posmap {

struct CpReport {
    bool cp = false;
    double min_choi_eig = 0.0;
    std::string reason;  // nonempty when cp is false
};

// CP iff the (Hermitized) Choi matrix is PSD within
// psd_tol = atol * max(1, max_abs(C)). Non-self-adjoint maps are rejected
// with a reason.
CpReport is_completely_positive(const LinearMap& phi, double atol = default_atol());

// CP of phi composed with the transpose map.
bool is_completely_copositive(const LinearMap& phi, double atol = default_atol());

// Spectral factorization of the Choi matrix: eigenpairs (mu_k, v_k) with
// mu_k > rank_tol yield K_k = sqrt(mu_k) unvec(v_k)^T, ordered by descending
// eigenvalue. Throws NotCP when the Choi matrix is not PSD.
KrausForm kraus_from_choi(const LinearMap& phi, double atol = default_atol());

struct FalsifyResult {
    bool found = false;
    int trials = 0;
    std::uint64_t seed = 0;
    Vector state;           // the offending pure state when found
    double min_output_eig = 0.0;
};

// Samples seeded Haar-random pure states; a negative output eigenvalue proves
// non-positivity. Absence of a counterexample proves nothing.
FalsifyResult positivity_falsify(const LinearMap& phi, int n_samples, std::uint64_t seed,
                                 double atol = default_atol());

struct SpectrumReport {
    int d = 0;
    std::vector<Complex> eigenvalues;  // d^2 values sorted by (-|l|, phase)
    double spectral_radius = 0.0;
    double pf_bound = 0.0;  // operator norm of phi(I_d)
    bool bound_satisfied = false;
};

// Sort key (-|l|, phase in [0, 2 pi)); used everywhere eigenvalues are
// reported, for deterministic output.
void sort_eigenvalues(std::vector<Complex>& ev);

SpectrumReport spectrum(const LinearMap& phi, double atol = default_atol());

struct BiorthDecomp {
    int d = 0;
    std::vector<Complex> lambdas;
    std::vector<Matrix> f;  // phi(f_a) = lambda_a f_a
    std::vector<Matrix> g;  // phi^*(g_a) = lambda_a g_a; tr(f_a g_b) = delta_ab
    double condition_number = 0.0;
};

// Diagonalizes the transfer matrix; throws NonDiagonalizable when the
// eigenvector condition number exceeds cond_max.
BiorthDecomp biorthonormal_decomposition(const LinearMap& phi, double cond_max = 1e8);

struct AdaptedBasis {
    std::vector<Matrix> f;  // f[d^2-1] = I_d
    std::vector<Matrix> g;  // g[d^2-1] = omega
};

// Bi-orthonormal pair adapted to an invariant state: g_a = h_a (Gell-Mann),
// f_a = h_a^dag - I_d tr(omega h_a^dag) for a < d^2 - 1.
AdaptedBasis adapted_invariant_basis(int d, const DensityMatrix& omega);

// ---------------------------------------------------------------------------
// Circulant example map
//   phi(a) = sum_{i != j} alpha_{(j-i) mod d} e_ij^dag a e_ij
//            + alpha_0 sum_{i,j} beta_ij e_ii^dag a e_jj
// with alpha a probability vector and beta PSD with unit diagonal. The map is
// completely positive and bi-stochastic; its spectrum is known in closed form.
// ---------------------------------------------------------------------------

struct ExampleMapSpec {
    int d = 0;
    std::vector<double> alpha;  // d nonnegative weights summing to 1
    Matrix beta;                // d x d PSD with unit diagonal

    void validate(double atol = default_atol()) const;
    static ExampleMapSpec random(int d, std::uint64_t seed);
};

LinearMap example_map(const ExampleMapSpec& spec);

// {rho_m = sum_j alpha_j lambda^{-jm}} followed by {alpha_0 beta_ij, i != j}
// in row-major order; computed by the direct DFT sum.
std::vector<Complex> predicted_eigenvalues(const ExampleMapSpec& spec);

struct MatchedPair {
    Complex predicted;
    Complex computed;
};

// Greedy closest-pair multiset matching; pairs are reported in the sorted
// order of the predicted values.
std::vector<MatchedPair> match_multisets(std::vector<Complex> predicted,
                                         std::vector<Complex> computed);
double max_match_deviation(const std::vector<MatchedPair>& pairs);

} // namespace posmap
