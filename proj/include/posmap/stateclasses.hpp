#pragma once

// State-set-generating projections, Werner/isotropic families, the purity-ball
// map, membership tests, and witness construction.

#include <cstdint>
#include <optional>

#include "posmap/analysis.hpp"
#include "posmap/maprep.hpp"

namespace posmap {

// Mutually orthogonal projectors p_a summing to I_d paired with states
// omega_a obeying the duality tr(omega_a p_b) = delta_ab.
struct ProjectionSpec {
    int d = 0;
    std::vector<Matrix> p;
    std::vector<DensityMatrix> omega;

    void validate(double atol = default_atol()) const;
    // omega_a = p_a / tr(p_a); duality holds automatically.
    static ProjectionSpec from_projectors(std::vector<Matrix> projectors,
                                          double atol = default_atol());
};

// pi(p, omega)(a) = sum_a p_a tr(omega_a a): a completely positive unital
// projection. The dual acts on states as rho -> sum_a omega_a tr(p_a rho).
LinearMap projection_map(const ProjectionSpec& spec);

// sum_a c_a omega_a for convex weights c; a fixed point of the dual map.
DensityMatrix invariant_states(const ProjectionSpec& spec, const std::vector<double>& c);

// pi(a) = sum_a p_a a p_a over orthogonal projectors summing to I_d;
// self-dual, completely positive, unital.
LinearMap pinching(const std::vector<Matrix>& projectors, double atol = default_atol());

// Flip operator F = sum_ij e_ij (x) e_ji on C^n (x) C^n.
Matrix flip_operator(int n);

// (p1', p0'): the maximally entangled rank-1 projector and its complement.
std::pair<Matrix, Matrix> isotropic_projectors(int n);
// (p0'', p1'') = ((I + F)/2, (I - F)/2): symmetric and antisymmetric projectors.
std::pair<Matrix, Matrix> werner_projectors(int n);

// Twirl-style projections onto span{p0'', p1''} and span{p1', p0'}; their dual
// images are the Werner and isotropic state families.
LinearMap werner_map(int n);
LinearMap isotropic_map(int n);

// phi(a) = a/(d-1) + (1 - 1/(d-1)) I_d tr(a)/d; self-dual, CP, unital. Its
// dual image is the purity ball tr(rho^2) <= 1/(d-1). For d = 2 the ball is
// all of S (the map degenerates to the identity).
LinearMap ball_map(int d);

// purity(rho) <= 1/(d-1) + atol
bool ball_membership(const DensityMatrix& rho, int d, double atol = default_atol());

// tr(a) >= 0 and tr(a^2) <= (tr a)^2, both within atol; requires Hermitian a.
bool cone_membership(const Matrix& a, int d, double atol = default_atol());

struct Witness {
    Matrix a;            // c I - rho with c = sqrt(tr(rho^2)/(d-1))
    double value = 0.0;  // tr(a rho) < 0
    double norm_inf = 0.0;
    bool trace_nonneg = false;
    bool trace_sq_ok = false;
    double sampled_min = 0.0;  // min of tr(a sigma) over sampled ball states
    int n_samples = 0;
    std::uint64_t seed = 0;
};

// Random ball member: Hilbert-Schmidt-measure density, mixed toward I/d onto
// the purity boundary when it starts outside the ball.
DensityMatrix sample_ball_state(int d, Rng& rng);

// Witness that rho lies outside the purity ball. Throws InBall when no
// witness exists. The emitted witness passes the cone checks and is
// nonnegative on n_samples sampled ball states.
Witness ball_witness(const DensityMatrix& rho, int d, int n_samples = 1000,
                     std::uint64_t seed = 0, double atol = default_atol());

struct MembershipResult {
    bool member = false;
    std::optional<Matrix> witness;  // present when member is false
    double value = 0.0;             // tr(rho a) for the witness
};

// rho in pi^*(S) iff dual(pi) fixes rho. Throws NotAProjection when pi is not
// idempotent.
MembershipResult projection_membership(const DensityMatrix& rho, const LinearMap& pi,
                                       double atol = default_atol());

} // namespace posmap
