#include "posmap/maprep.hpp"

#include <cmath>

namespace posmap {

namespace {

int require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
    return static_cast<int>(m.rows());
}

void require_matrix_units(const OrthonormalBasis& basis, const char* what) {
    if (basis.kind != BasisKind::matrix_units)
        throw BasisError(std::string(what) + ": requires the matrix-unit basis; convert first");
}

} // namespace

Vector vec_rm(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    Vector v(static_cast<Eigen::Index>(a.size()));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < static_cast<int>(a.cols()); ++j) v(i * a.cols() + j) = a(i, j);
    return v;
}

Matrix unvec_rm(const Vector& v, int d) {
    if (v.size() != static_cast<Eigen::Index>(d) * d)
        throw DimensionError("unvec_rm: size mismatch");
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = v(i * d + j);
    return a;
}

std::string to_string(RepKind kind) {
    switch (kind) {
        case RepKind::transfer: return "transfer";
        case RepKind::aform: return "aform";
        case RepKind::choi: return "choi";
        case RepKind::kraus: return "kraus";
    }
    throw NumericalError("to_string: unknown representation");
}

RepKind rep_kind_from_string(const std::string& name) {
    if (name == "transfer") return RepKind::transfer;
    if (name == "aform") return RepKind::aform;
    if (name == "choi") return RepKind::choi;
    if (name == "kraus") return RepKind::kraus;
    throw SpecError("unknown representation: " + name);
}

Matrix middle_swap(const Matrix& x, int d) {
    if (x.rows() != static_cast<Eigen::Index>(d) * d || x.cols() != x.rows())
        throw DimensionError("middle_swap: expected d^2 x d^2 matrix");
    Matrix out(x.rows(), x.cols());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) out(i * d + j, k * d + l) = x(i * d + k, j * d + l);
    return out;
}

Matrix basis_change_matrix(const OrthonormalBasis& basis) {
    const int d = basis.d;
    Matrix v(d * d, d * d);
    for (std::size_t a = 0; a < basis.elems.size(); ++a)
        v.col(static_cast<Eigen::Index>(a)) = vec_rm(basis.elems[a]);
    return v;
}

Matrix ab_conversion(const Matrix& x, const OrthonormalBasis& basis) {
    const int n = basis.d * basis.d;
    if (x.rows() != n || x.cols() != n) throw DimensionError("ab_conversion: size mismatch");
    Matrix out = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Complex acc = 0.0;
            for (int m = 0; m < n; ++m)
                for (int nn = 0; nn < n; ++nn) {
                    const Complex w = (basis.elems[a].adjoint() * basis.elems[m] *
                                       basis.elems[b] * basis.elems[nn].adjoint())
                                          .trace();
                    acc += w * x(m, nn);
                }
            out(a, b) = acc;
        }
    return out;
}

// ------------------------- canonical transfer builders ----------------------

namespace {

// C[(i,k),(j,l)] = B[(k,l),(i,j)]
Matrix transfer_to_choi_perm(const Matrix& b, int d) {
    Matrix c(b.rows(), b.cols());
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l) c(i * d + k, j * d + l) = b(k * d + l, i * d + j);
    return c;
}

// B[(i,j),(k,l)] = C[(k,i),(l,j)]
Matrix choi_to_transfer_perm(const Matrix& c, int d) {
    Matrix b(c.rows(), c.cols());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) b(i * d + j, k * d + l) = c(k * d + i, l * d + j);
    return b;
}

Matrix canonical_from(const TransferMatrix& t) {
    if (t.basis.kind == BasisKind::matrix_units) return t.B;
    const Matrix v = basis_change_matrix(t.basis);
    return v * t.B * v.adjoint();
}

Matrix canonical_from(const AForm& a) {
    // A in basis f -> A in matrix units -> B by the middle-index swap.
    Matrix a_e = a.A;
    if (a.basis.kind != BasisKind::matrix_units) {
        const Matrix v = basis_change_matrix(a.basis);
        a_e = v * a.A * v.adjoint();
    }
    return middle_swap(a_e, a.d);
}

Matrix canonical_from(const ChoiMatrix& c) { return choi_to_transfer_perm(c.C, c.d); }

Matrix canonical_from(const KrausForm& k) {
    const int n = k.d * k.d;
    Matrix b = Matrix::Zero(n, n);
    for (const auto& op : k.ops) {
        // vec(K a K^dag) = (K (x) conj(K)) vec(a) in row-major vectorization
        Matrix kk(n, n);
        for (int i = 0; i < k.d; ++i)
            for (int j = 0; j < k.d; ++j)
                for (int p = 0; p < k.d; ++p)
                    for (int q = 0; q < k.d; ++q)
                        kk(i * k.d + j, p * k.d + q) = op(i, p) * std::conj(op(j, q));
        b += kk;
    }
    return b;
}

} // namespace

LinearMap::LinearMap(TransferMatrix t) : d_(t.d) {
    if (t.d < 1) throw DimensionError("transfer: d must be >= 1");
    if (require_square(t.B, "transfer") != t.d * t.d)
        throw DimensionError("transfer: B must be d^2 x d^2");
    if (t.basis.elems.empty()) t.basis = matrix_unit_basis(t.d);
    if (t.basis.d != t.d) throw DimensionError("transfer: basis dimension mismatch");
    canonical_B_ = canonical_from(t);
    rep_ = std::move(t);
}

LinearMap::LinearMap(AForm a) : d_(a.d) {
    if (a.d < 1) throw DimensionError("aform: d must be >= 1");
    if (require_square(a.A, "aform") != a.d * a.d)
        throw DimensionError("aform: A must be d^2 x d^2");
    if (a.basis.elems.empty()) a.basis = matrix_unit_basis(a.d);
    if (a.basis.d != a.d) throw DimensionError("aform: basis dimension mismatch");
    canonical_B_ = canonical_from(a);
    rep_ = std::move(a);
}

LinearMap::LinearMap(ChoiMatrix c) : d_(c.d) {
    if (c.d < 1) throw DimensionError("choi: d must be >= 1");
    if (require_square(c.C, "choi") != c.d * c.d)
        throw DimensionError("choi: C must be d^2 x d^2");
    canonical_B_ = canonical_from(c);
    rep_ = std::move(c);
}

LinearMap::LinearMap(KrausForm k) : d_(k.d) {
    if (k.d < 1) throw DimensionError("kraus: d must be >= 1");
    if (k.ops.empty()) throw SpecError("kraus: needs at least one operator");
    for (const auto& op : k.ops)
        if (op.rows() != k.d || op.cols() != k.d)
            throw DimensionError("kraus: operator is not d x d");
    canonical_B_ = canonical_from(k);
    rep_ = std::move(k);
}

LinearMap LinearMap::identity(int d) {
    if (d < 1) throw DimensionError("identity: d must be >= 1");
    return LinearMap(TransferMatrix{d, Matrix::Identity(d * d, d * d), matrix_unit_basis(d)});
}

LinearMap LinearMap::transpose_map(int d) {
    if (d < 1) throw DimensionError("transpose_map: d must be >= 1");
    Matrix b = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b(i * d + j, j * d + i) = 1.0;
    return LinearMap(TransferMatrix{d, std::move(b), matrix_unit_basis(d)});
}

LinearMap LinearMap::from_action(int d, const std::function<Matrix(const Matrix&)>& action) {
    if (d < 1) throw DimensionError("from_action: d must be >= 1");
    Matrix b(d * d, d * d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            const Matrix img = action(matrix_unit(d, k, l));
            if (img.rows() != d || img.cols() != d)
                throw DimensionError("from_action: action changed dimensions");
            b.col(k * d + l) = vec_rm(img);
        }
    return LinearMap(TransferMatrix{d, std::move(b), matrix_unit_basis(d)});
}

RepKind LinearMap::rep() const {
    if (std::holds_alternative<TransferMatrix>(rep_)) return RepKind::transfer;
    if (std::holds_alternative<AForm>(rep_)) return RepKind::aform;
    if (std::holds_alternative<ChoiMatrix>(rep_)) return RepKind::choi;
    return RepKind::kraus;
}

Matrix LinearMap::apply(const Matrix& a) const {
    if (a.rows() != d_ || a.cols() != d_) throw DimensionError("apply: input is not d x d");
    return std::visit(
        [&](const auto& rep) -> Matrix {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, TransferMatrix>) {
                if (rep.basis.kind == BasisKind::matrix_units)
                    return unvec_rm(rep.B * vec_rm(a), d_);
                // coefficients c_b = tr(f_b^dag a); output = sum_a (B c)_a f_a
                const Matrix v = basis_change_matrix(rep.basis);
                const Vector c = rep.B * (v.adjoint() * vec_rm(a));
                return unvec_rm(v * c, d_);
            } else if constexpr (std::is_same_v<T, AForm>) {
                Matrix out = Matrix::Zero(d_, d_);
                const int n = d_ * d_;
                for (int al = 0; al < n; ++al) {
                    Matrix g = Matrix::Zero(d_, d_);
                    for (int be = 0; be < n; ++be)
                        g += rep.A(al, be) * rep.basis.elems[be].adjoint();
                    out += rep.basis.elems[al] * a * g;
                }
                return out;
            } else if constexpr (std::is_same_v<T, ChoiMatrix>) {
                // phi(a)_{bd} = sum_ac a_{ac} C[(a,b),(c,d)]
                Matrix out = Matrix::Zero(d_, d_);
                for (int b = 0; b < d_; ++b)
                    for (int dd = 0; dd < d_; ++dd) {
                        Complex acc = 0.0;
                        for (int i = 0; i < d_; ++i)
                            for (int c = 0; c < d_; ++c)
                                acc += a(i, c) * rep.C(i * d_ + b, c * d_ + dd);
                        out(b, dd) = acc;
                    }
                return out;
            } else {
                Matrix out = Matrix::Zero(d_, d_);
                for (const auto& op : rep.ops) out += op * a * op.adjoint();
                return out;
            }
        },
        rep_);
}

TransferMatrix LinearMap::to_transfer() const {
    return TransferMatrix{d_, canonical_B_, matrix_unit_basis(d_)};
}

TransferMatrix LinearMap::to_transfer(const OrthonormalBasis& basis) const {
    if (basis.d != d_) throw DimensionError("to_transfer: basis dimension mismatch");
    if (basis.kind == BasisKind::matrix_units) return to_transfer();
    const Matrix v = basis_change_matrix(basis);
    return TransferMatrix{d_, v.adjoint() * canonical_B_ * v, basis};
}

ChoiMatrix LinearMap::to_choi() const {
    return ChoiMatrix{d_, transfer_to_choi_perm(canonical_B_, d_)};
}

AForm LinearMap::to_aform(const OrthonormalBasis& basis) const {
    if (basis.d != d_) throw DimensionError("to_aform: basis dimension mismatch");
    const Matrix a_e = middle_swap(canonical_B_, d_);
    if (basis.kind == BasisKind::matrix_units) return AForm{d_, a_e, basis};
    const Matrix v = basis_change_matrix(basis);
    return AForm{d_, v.adjoint() * a_e * v, basis};
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
    if (f.dim() != g.dim()) throw DimensionError("compose: dimension mismatch");
    return LinearMap(TransferMatrix{f.dim(), f.transfer_matrix() * g.transfer_matrix(),
                                    matrix_unit_basis(f.dim())});
}

LinearMap dual(const LinearMap& phi) {
    const int d = phi.dim();
    const Matrix& b = phi.transfer_matrix();
    // B_* = S B^T S with S the vec-transpose permutation:
    // B_*[(i,j),(k,l)] = B[(l,k),(j,i)]
    Matrix bd(b.rows(), b.cols());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) bd(i * d + j, k * d + l) = b(l * d + k, j * d + i);
    return LinearMap(TransferMatrix{d, std::move(bd), matrix_unit_basis(d)});
}

bool is_selfadjoint(const LinearMap& phi, double atol) {
    // phi(a^dag) = phi(a)^dag for all a <=> Choi Hermitian
    const ChoiMatrix c = phi.to_choi();
    return is_hermitian(c.C, atol * std::max(1.0, max_abs(c.C)));
}

bool is_unital(const LinearMap& phi, double atol) {
    const int d = phi.dim();
    const Matrix img = phi.apply(Matrix::Identity(d, d));
    return max_abs(img - Matrix::Identity(d, d)) <= atol;
}

bool is_trace_preserving(const LinearMap& phi, double atol) {
    return is_unital(dual(phi), atol);
}

Complex map_inner(const LinearMap& phi, const LinearMap& psi) {
    if (phi.dim() != psi.dim()) throw DimensionError("map_inner: dimension mismatch");
    return (phi.transfer_matrix().adjoint() * psi.transfer_matrix()).trace();
}

ChoiMatrix reshuffle(const TransferMatrix& t) {
    require_matrix_units(t.basis, "reshuffle");
    return ChoiMatrix{t.d, transfer_to_choi_perm(t.B, t.d)};
}

TransferMatrix reshuffle(const ChoiMatrix& c) {
    return TransferMatrix{c.d, choi_to_transfer_perm(c.C, c.d), matrix_unit_basis(c.d)};
}

LinearMap reshuffle(const LinearMap& phi) {
    switch (phi.rep()) {
        case RepKind::transfer:
            return LinearMap(reshuffle(std::get<TransferMatrix>(phi.native())));
        case RepKind::choi:
            return LinearMap(reshuffle(std::get<ChoiMatrix>(phi.native())));
        default:
            throw BasisError("reshuffle: defined on transfer and choi representations");
    }
}

} // namespace posmap
