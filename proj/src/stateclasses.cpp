#include "posmap/stateclasses.hpp"

#include <cmath>

namespace posmap {

void ProjectionSpec::validate(double atol) const {
    if (d < 1) throw SpecError("projection spec: d must be >= 1");
    if (p.empty()) throw SpecError("projection spec: needs at least one projector");
    if (p.size() != omega.size())
        throw SpecError("projection spec: p and omega must have equal length");
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a].rows() != d || p[a].cols() != d)
            throw SpecError("projection spec: projector is not d x d");
        if (max_abs(p[a] * p[a] - p[a]) > atol)
            throw SpecError("projection spec: p is not idempotent");
        if (!is_hermitian(p[a], atol)) throw SpecError("projection spec: p is not Hermitian");
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (max_abs(p[a] * p[b]) > atol)
                throw SpecError("projection spec: projectors are not mutually orthogonal");
        sum += p[a];
        if (omega[a].dim() != d) throw SpecError("projection spec: omega is not d x d");
    }
    if (max_abs(sum - Matrix::Identity(d, d)) > atol)
        throw SpecError("projection spec: projectors do not sum to the identity");
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b) {
            const Complex t = (omega[a].matrix() * p[b]).trace();
            const double target = (a == b) ? 1.0 : 0.0;
            if (std::abs(t - target) > atol)
                throw SpecError("projection spec: duality tr(omega_a p_b) = delta_ab violated");
        }
}

ProjectionSpec ProjectionSpec::from_projectors(std::vector<Matrix> projectors, double atol) {
    if (projectors.empty()) throw SpecError("projection spec: needs at least one projector");
    ProjectionSpec spec;
    spec.d = static_cast<int>(projectors[0].rows());
    for (const auto& pr : projectors) {
        const double tr = pr.trace().real();
        if (tr <= 0.5) throw SpecError("projection spec: projector has zero trace");
        spec.omega.push_back(DensityMatrix::validated(pr / tr, atol));
    }
    spec.p = std::move(projectors);
    spec.validate(atol);
    return spec;
}

LinearMap projection_map(const ProjectionSpec& spec) {
    spec.validate();
    const int d = spec.d;
    Matrix b = Matrix::Zero(d * d, d * d);
    for (std::size_t a = 0; a < spec.p.size(); ++a) {
        // phi(x) = sum_a p_a tr(omega_a x): rank-1 term vec(p_a) vec(omega_a^T)^T
        const Vector col = vec_rm(spec.p[a]);
        const Vector row = vec_rm(spec.omega[a].matrix().transpose());
        b += col * row.transpose();
    }
    return LinearMap(TransferMatrix{d, std::move(b), matrix_unit_basis(d)});
}

DensityMatrix invariant_states(const ProjectionSpec& spec, const std::vector<double>& c) {
    spec.validate();
    if (c.size() != spec.omega.size())
        throw SpecError("invariant_states: weight count mismatch");
    double sum = 0.0;
    for (double w : c) {
        if (!(w >= -1e-12)) throw SpecError("invariant_states: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw SpecError("invariant_states: weights must sum to 1");
    Matrix m = Matrix::Zero(spec.d, spec.d);
    for (std::size_t a = 0; a < c.size(); ++a) m += c[a] * spec.omega[a].matrix();
    return DensityMatrix::validated(std::move(m));
}

LinearMap pinching(const std::vector<Matrix>& projectors, double atol) {
    if (projectors.empty()) throw SpecError("pinching: needs at least one projector");
    const int d = static_cast<int>(projectors[0].rows());
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < projectors.size(); ++a) {
        const auto& pr = projectors[a];
        if (pr.rows() != d || pr.cols() != d) throw SpecError("pinching: projector is not d x d");
        if (!is_hermitian(pr, atol)) throw SpecError("pinching: projector is not Hermitian");
        if (max_abs(pr * pr - pr) > atol) throw SpecError("pinching: p is not idempotent");
        for (std::size_t b = a + 1; b < projectors.size(); ++b)
            if (max_abs(pr * projectors[b]) > atol)
                throw SpecError("pinching: projectors are not mutually orthogonal");
        sum += pr;
    }
    if (max_abs(sum - Matrix::Identity(d, d)) > atol)
        throw SpecError("pinching: projectors do not sum to the identity");
    Matrix b = Matrix::Zero(d * d, d * d);
    for (const auto& pr : projectors) {
        // vec(p a p) = (p (x) conj(p)) vec(a)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        b(i * d + j, k * d + l) += pr(i, k) * std::conj(pr(j, l));
    }
    return LinearMap(TransferMatrix{d, std::move(b), matrix_unit_basis(d)});
}

Matrix flip_operator(int n) {
    if (n < 1) throw DimensionError("flip_operator: n must be >= 1");
    const int d = n * n;
    Matrix f = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f(i * n + j, j * n + i) = 1.0;
    return f;
}

std::pair<Matrix, Matrix> isotropic_projectors(int n) {
    if (n < 2) throw DimensionError("isotropic_projectors: n must be >= 2");
    const int d = n * n;
    Matrix p1 = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p1(i * n + i, j * n + j) = 1.0 / n;
    return {p1, Matrix::Identity(d, d) - p1};
}

std::pair<Matrix, Matrix> werner_projectors(int n) {
    if (n < 2) throw DimensionError("werner_projectors: n must be >= 2");
    const int d = n * n;
    const Matrix f = flip_operator(n);
    return {0.5 * (Matrix::Identity(d, d) + f), 0.5 * (Matrix::Identity(d, d) - f)};
}

LinearMap werner_map(int n) {
    auto [p0, p1] = werner_projectors(n);
    return projection_map(ProjectionSpec::from_projectors({p0, p1}));
}

LinearMap isotropic_map(int n) {
    auto [p1, p0] = isotropic_projectors(n);
    return projection_map(ProjectionSpec::from_projectors({p1, p0}));
}

LinearMap ball_map(int d) {
    if (d < 2) throw DimensionError("ball_map: d must be >= 2");
    const int n = d * d;
    Matrix b = Matrix::Identity(n, n) / (d - 1.0);
    const double c = 1.0 - 1.0 / (d - 1.0);
    // + c * vec(I) vec(I)^T / d  (the tr(omega_0 a) I_d term)
    const Vector vi = vec_rm(Matrix::Identity(d, d));
    b += (c / d) * (vi * vi.transpose());
    return LinearMap(TransferMatrix{d, std::move(b), matrix_unit_basis(d)});
}

bool ball_membership(const DensityMatrix& rho, int d, double atol) {
    if (rho.dim() != d) throw DimensionError("ball_membership: dimension mismatch");
    if (d < 2) throw DimensionError("ball_membership: d must be >= 2");
    return purity(rho) <= 1.0 / (d - 1.0) + atol;
}

bool cone_membership(const Matrix& a, int d, double atol) {
    if (a.rows() != d || a.cols() != d) throw DimensionError("cone_membership: dimension mismatch");
    if (!is_hermitian(a, atol * std::max(1.0, max_abs(a))))
        throw SpecError("cone_membership: matrix is not Hermitian");
    const double tr = a.trace().real();
    const double tr_sq = (a * a).trace().real();
    return tr >= -atol && tr_sq <= tr * tr + atol;
}

DensityMatrix sample_ball_state(int d, Rng& rng) {
    if (d < 2) throw DimensionError("sample_ball_state: d must be >= 2");
    const Matrix g = random_gaussian_matrix(d, d, rng);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    const double p = purity(m);
    const double limit = 1.0 / (d - 1.0);
    if (p > limit) {
        // purity(t m + (1-t) I/d) = t^2 (p - 1/d) + 1/d; solve for the boundary
        const double t = std::sqrt((limit - 1.0 / d) / (p - 1.0 / d));
        m = t * m + (1.0 - t) * Matrix::Identity(d, d) / d;
    }
    return DensityMatrix::validated(std::move(m));
}

Witness ball_witness(const DensityMatrix& rho, int d, int n_samples, std::uint64_t seed,
                     double atol) {
    if (rho.dim() != d) throw DimensionError("ball_witness: dimension mismatch");
    if (d < 2) throw DimensionError("ball_witness: d must be >= 2");
    const double p = purity(rho);
    if (ball_membership(rho, d, atol))
        throw InBallError("state already satisfies tr(rho^2) <= 1/(d-1); no witness exists");
    const double c = std::sqrt(p / (d - 1.0));
    Witness w;
    w.a = c * Matrix::Identity(d, d) - rho.matrix();
    w.value = c - p;
    w.norm_inf = operator_norm(w.a);
    const double tr = w.a.trace().real();
    const double tr_sq = (w.a * w.a).trace().real();
    w.trace_nonneg = tr >= -atol;
    w.trace_sq_ok = tr_sq <= tr * tr + atol;
    w.n_samples = n_samples;
    w.seed = seed;
    Rng rng(seed);
    double min_val = 0.0;
    for (int t = 0; t < n_samples; ++t) {
        const DensityMatrix sigma = sample_ball_state(d, rng);
        const double val = (w.a * sigma.matrix()).trace().real();
        if (t == 0 || val < min_val) min_val = val;
    }
    w.sampled_min = n_samples > 0 ? min_val : 0.0;
    return w;
}

MembershipResult projection_membership(const DensityMatrix& rho, const LinearMap& pi,
                                       double atol) {
    if (rho.dim() != pi.dim()) throw DimensionError("projection_membership: dimension mismatch");
    const Matrix& b = pi.transfer_matrix();
    if (max_abs(b * b - b) > atol * std::max(1.0, max_abs(b)))
        throw NotAProjectionError("map is not idempotent");
    const Matrix fixed = dual(pi).apply(rho.matrix());
    MembershipResult result;
    const Matrix r = rho.matrix() - fixed;
    if (max_abs(r) <= atol) {
        result.member = true;
        return result;
    }
    Matrix a = 0.5 * (r + r.adjoint());
    const double norm = operator_norm(a);
    if (norm <= atol) throw NumericalError("projection_membership: degenerate witness");
    a /= norm;
    result.member = false;
    result.value = (rho.matrix() * a).trace().real();
    if (std::abs(result.value) <= atol)
        throw NumericalError("projection_membership: witness pairing vanished");
    result.witness = std::move(a);
    return result;
}

} // namespace posmap
