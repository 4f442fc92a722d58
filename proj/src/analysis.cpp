#include "posmap/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace posmap {

namespace {

double phase_in_2pi(Complex z) {
    double ph = std::arg(z);
    if (ph < 0.0) ph += 2.0 * std::numbers::pi;
    return ph;
}

} // namespace

void sort_eigenvalues(std::vector<Complex>& ev) {
    std::stable_sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return phase_in_2pi(a) < phase_in_2pi(b);
    });
}

CpReport is_completely_positive(const LinearMap& phi, double atol) {
    const ChoiMatrix choi = phi.to_choi();
    const double scale = std::max(1.0, max_abs(choi.C));
    const Matrix herm = 0.5 * (choi.C + choi.C.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    if (es.info() != Eigen::Success) throw NumericalError("is_completely_positive: eigensolve failed");
    CpReport report;
    report.min_choi_eig = es.eigenvalues().minCoeff();
    if (max_abs(choi.C - choi.C.adjoint()) > atol * scale) {
        report.cp = false;
        report.reason = "map is not self-adjoint (Choi matrix not Hermitian)";
        return report;
    }
    report.cp = report.min_choi_eig >= -atol * scale;
    if (!report.cp) report.reason = "Choi matrix has a negative eigenvalue";
    return report;
}

bool is_completely_copositive(const LinearMap& phi, double atol) {
    return is_completely_positive(compose(phi, LinearMap::transpose_map(phi.dim())), atol).cp;
}

KrausForm kraus_from_choi(const LinearMap& phi, double atol) {
    const CpReport report = is_completely_positive(phi, atol);
    if (!report.cp)
        throw NotCPError("kraus_from_choi: " +
                         (report.reason.empty() ? std::string("map is not CP") : report.reason));
    const int d = phi.dim();
    const ChoiMatrix choi = phi.to_choi();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (choi.C + choi.C.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("kraus_from_choi: eigensolve failed");
    const auto& vals = es.eigenvalues();
    const double rank_tol = 1e-10 * std::max(1.0, vals.maxCoeff());
    KrausForm kraus;
    kraus.d = d;
    // eigenvalues ascend; emit Kraus operators by descending weight
    for (Eigen::Index k = vals.size() - 1; k >= 0; --k) {
        if (vals(k) <= rank_tol) break;
        const Vector v = es.eigenvectors().col(k);
        // Choi = sum_k w_k w_k^dag with w_k the column-major vec of K_k,
        // so K_k = sqrt(mu_k) unvec_rm(v)^T.
        kraus.ops.push_back(std::sqrt(vals(k)) * unvec_rm(v, d).transpose());
    }
    if (kraus.ops.empty()) kraus.ops.push_back(Matrix::Zero(d, d));
    return kraus;
}

FalsifyResult positivity_falsify(const LinearMap& phi, int n_samples, std::uint64_t seed,
                                 double atol) {
    if (n_samples < 1) throw SpecError("positivity_falsify: n_samples must be >= 1");
    const int d = phi.dim();
    Rng rng(seed);
    FalsifyResult result;
    result.seed = seed;
    for (int t = 0; t < n_samples; ++t) {
        const Vector psi = random_haar_state(d, rng);
        const Matrix out = phi.apply(psi * psi.adjoint());
        const double min_eig = min_eigenvalue_hermitian(out);
        result.trials = t + 1;
        if (min_eig < -atol * std::max(1.0, max_abs(out))) {
            result.found = true;
            result.state = psi;
            result.min_output_eig = min_eig;
            return result;
        }
    }
    return result;
}

SpectrumReport spectrum(const LinearMap& phi, double atol) {
    const int d = phi.dim();
    Eigen::ComplexEigenSolver<Matrix> es(phi.transfer_matrix(), /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolve failed");
    SpectrumReport report;
    report.d = d;
    report.eigenvalues.assign(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
    sort_eigenvalues(report.eigenvalues);
    report.spectral_radius = report.eigenvalues.empty() ? 0.0 : std::abs(report.eigenvalues[0]);
    const Matrix img = phi.apply(Matrix::Identity(d, d));
    if (is_hermitian(img, atol * std::max(1.0, max_abs(img)))) {
        Eigen::SelfAdjointEigenSolver<Matrix> hes(0.5 * (img + img.adjoint()));
        if (hes.info() != Eigen::Success) throw NumericalError("spectrum: eigensolve failed");
        report.pf_bound = hes.eigenvalues().cwiseAbs().maxCoeff();
    } else {
        report.pf_bound = operator_norm(img);
    }
    report.bound_satisfied = report.spectral_radius <= report.pf_bound + atol;
    return report;
}

BiorthDecomp biorthonormal_decomposition(const LinearMap& phi, double cond_max) {
    const int d = phi.dim();
    const int n = d * d;
    Eigen::ComplexEigenSolver<Matrix> es(phi.transfer_matrix());
    if (es.info() != Eigen::Success)
        throw NumericalError("biorthonormal_decomposition: eigensolve failed");
    const Matrix v = es.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(v);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin > cond_max)
        throw NonDiagonalizableError(
            "transfer matrix eigenvector condition number exceeds " + std::to_string(cond_max));
    const Matrix w = v.inverse();

    BiorthDecomp decomp;
    decomp.d = d;
    decomp.condition_number = smax / smin;

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    const auto& lam = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ma = std::abs(lam(a)), mb = std::abs(lam(b));
        if (ma != mb) return ma > mb;
        return phase_in_2pi(lam(a)) < phase_in_2pi(lam(b));
    });
    for (int idx : order) {
        decomp.lambdas.push_back(lam(idx));
        decomp.f.push_back(unvec_rm(v.col(idx), d));
        decomp.g.push_back(unvec_rm(w.row(idx).transpose(), d).transpose());
    }
    return decomp;
}

AdaptedBasis adapted_invariant_basis(int d, const DensityMatrix& omega) {
    if (omega.dim() != d) throw DimensionError("adapted_invariant_basis: dimension mismatch");
    AdaptedBasis out;
    if (d > 1) {
        const TracelessFamily fam = gell_mann_traceless(d);
        const Matrix eye = Matrix::Identity(d, d);
        for (const auto& h : fam.elems) {
            const Matrix hd = h.adjoint();
            out.g.push_back(h);
            out.f.push_back(hd - eye * (omega.matrix() * hd).trace());
        }
    }
    out.f.push_back(Matrix::Identity(d, d));
    out.g.push_back(omega.matrix());
    return out;
}

// --------------------------- example map ------------------------------------

void ExampleMapSpec::validate(double atol) const {
    if (d < 1) throw SpecError("example map: d must be >= 1");
    if (alpha.size() != static_cast<std::size_t>(d))
        throw SpecError("example map: alpha must have d entries");
    double sum = 0.0;
    for (double a : alpha) {
        if (!(a >= -atol)) throw SpecError("example map: alpha entries must be nonnegative");
        sum += a;
    }
    if (std::abs(sum - 1.0) > std::max(atol, 1e-12 * d))
        throw SpecError("example map: alpha must sum to 1");
    if (beta.rows() != d || beta.cols() != d)
        throw SpecError("example map: beta must be d x d");
    if (!is_hermitian(beta, atol * std::max(1.0, max_abs(beta))))
        throw SpecError("example map: beta must be Hermitian");
    for (int i = 0; i < d; ++i)
        if (std::abs(beta(i, i) - Complex(1.0, 0.0)) > atol)
            throw SpecError("example map: beta must have unit diagonal");
    if (!is_psd(beta, atol)) throw SpecError("example map: beta must be positive semidefinite");
}

ExampleMapSpec ExampleMapSpec::random(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionError("example map: d must be >= 1");
    Rng rng(seed);
    ExampleMapSpec spec;
    spec.d = d;
    spec.alpha.resize(d);
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
        const double g = rng.gaussian();
        spec.alpha[j] = g * g;
        sum += spec.alpha[j];
    }
    for (double& a : spec.alpha) a /= sum;
    const Matrix g = random_gaussian_matrix(d, d, rng);
    Matrix m = g * g.adjoint();
    Eigen::VectorXd dinv(d);
    for (int i = 0; i < d; ++i) dinv(i) = 1.0 / std::sqrt(m(i, i).real());
    spec.beta = dinv.asDiagonal() * m * dinv.asDiagonal();
    // exact unit diagonal regardless of rounding
    for (int i = 0; i < d; ++i) spec.beta(i, i) = 1.0;
    return spec;
}

LinearMap example_map(const ExampleMapSpec& spec) {
    spec.validate();
    const int d = spec.d;
    Matrix b = Matrix::Zero(d * d, d * d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            Matrix img = Matrix::Zero(d, d);
            if (k == l) {
                for (int j = 0; j < d; ++j) img(j, j) = spec.alpha[((j - k) % d + d) % d];
            } else {
                img(k, l) = spec.alpha[0] * spec.beta(k, l);
            }
            b.col(k * d + l) = vec_rm(img);
        }
    return LinearMap(TransferMatrix{d, std::move(b), matrix_unit_basis(d)});
}

std::vector<Complex> predicted_eigenvalues(const ExampleMapSpec& spec) {
    spec.validate();
    const int d = spec.d;
    std::vector<Complex> ev;
    ev.reserve(d * d);
    for (int m = 0; m < d; ++m) {
        Complex rho = 0.0;
        for (int j = 0; j < d; ++j) {
            const double phase = -2.0 * std::numbers::pi * j * m / d;
            rho += spec.alpha[j] * Complex(std::cos(phase), std::sin(phase));
        }
        ev.push_back(rho);
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) ev.push_back(spec.alpha[0] * spec.beta(i, j));
    return ev;
}

std::vector<MatchedPair> match_multisets(std::vector<Complex> predicted,
                                         std::vector<Complex> computed) {
    if (predicted.size() != computed.size())
        throw DimensionError("match_multisets: size mismatch");
    sort_eigenvalues(predicted);
    const std::size_t n = predicted.size();
    std::vector<bool> used(n, false);
    std::vector<MatchedPair> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = n;
        double best_dist = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(predicted[i] - computed[j]);
            if (best == n || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        used[best] = true;
        pairs.push_back({predicted[i], computed[best]});
    }
    return pairs;
}

double max_match_deviation(const std::vector<MatchedPair>& pairs) {
    double dev = 0.0;
    for (const auto& p : pairs) dev = std::max(dev, std::abs(p.predicted - p.computed));
    return dev;
}

} // namespace posmap
