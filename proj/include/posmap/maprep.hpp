#pragma once

// Representations of linear maps phi: M_d -> M_d and lossless conversions
// among them. The canonical internal form is the transfer matrix over matrix
// units (row-major vectorization); composition and spectra are native there.

#include <functional>
#include <variant>

#include "posmap/matspace.hpp"

namespace posmap {

// Row-major vectorization: vec(a)[i*d + j] = a(i, j).
Vector vec_rm(const Matrix& a);
Matrix unvec_rm(const Vector& v, int d);

// Transfer (B-form): vec(phi(a)) = B vec(a) in the matrix-unit case;
// in a general basis f, B_ab = tr(f_a^dag phi(f_b)).
struct TransferMatrix {
    int d = 0;
    Matrix B;
    OrthonormalBasis basis;  // default matrix_units
};

// A-form: phi(a) = sum_ab A_ab f_a a f_b^dag. Hermitian A iff phi
// self-adjoint; PSD A iff phi completely positive.
struct AForm {
    int d = 0;
    Matrix A;
    OrthonormalBasis basis;
};

// Choi matrix C = sum_ij e_ij (x) phi(e_ij), unnormalized (tr C = d for
// trace-preserving maps). Composite index (x, y) = x*d + y.
struct ChoiMatrix {
    int d = 0;
    Matrix C;
};

struct KrausForm {
    int d = 0;
    std::vector<Matrix> ops;  // phi(a) = sum_k K_k a K_k^dag
};

enum class RepKind { transfer, aform, choi, kraus };
std::string to_string(RepKind kind);
RepKind rep_kind_from_string(const std::string& name);

class LinearMap {
public:
    explicit LinearMap(TransferMatrix t);
    explicit LinearMap(AForm a);
    explicit LinearMap(ChoiMatrix c);
    explicit LinearMap(KrausForm k);

    static LinearMap identity(int d);
    static LinearMap transpose_map(int d);
    // Builds the matrix-unit transfer by evaluating the action on all e_kl.
    static LinearMap from_action(int d, const std::function<Matrix(const Matrix&)>& action);

    int dim() const { return d_; }
    RepKind rep() const;
    const std::variant<TransferMatrix, AForm, ChoiMatrix, KrausForm>& native() const {
        return rep_;
    }

    // Evaluates phi(a) in the native representation: basis sums for the
    // A/B forms, direct contraction for Choi, operator sum for Kraus.
    Matrix apply(const Matrix& a) const;

    // Canonical matrix-unit transfer matrix (precomputed).
    const Matrix& transfer_matrix() const { return canonical_B_; }

    TransferMatrix to_transfer() const;
    TransferMatrix to_transfer(const OrthonormalBasis& basis) const;
    ChoiMatrix to_choi() const;
    AForm to_aform(const OrthonormalBasis& basis) const;

private:
    int d_ = 0;
    std::variant<TransferMatrix, AForm, ChoiMatrix, KrausForm> rep_;
    Matrix canonical_B_;
};

// f after g: B_{f o g} = B_f B_g.
LinearMap compose(const LinearMap& f, const LinearMap& g);

// Trace dual phi^*: tr(phi^*(x) a) = tr(x phi(a)) for all a, x.
LinearMap dual(const LinearMap& phi);

bool is_selfadjoint(const LinearMap& phi, double atol = default_atol());
bool is_unital(const LinearMap& phi, double atol = default_atol());
bool is_trace_preserving(const LinearMap& phi, double atol = default_atol());

// Map-space inner product (phi, psi) = sum_a tr(phi(f_a)^dag psi(f_a));
// basis-independent and equal to tr(Choi(phi)^dag Choi(psi)).
Complex map_inner(const LinearMap& phi, const LinearMap& psi);

// Index permutations between the matrix-unit transfer matrix and the Choi
// matrix: C[(i,k),(j,l)] = B[(k,l),(i,j)]. Mutually inverse, so converting
// back and forth is the identity. Transfer inputs must use matrix units.
ChoiMatrix reshuffle(const TransferMatrix& t);
TransferMatrix reshuffle(const ChoiMatrix& c);
// Dispatches on the native representation (transfer <-> choi); other
// representations raise BasisError.
LinearMap reshuffle(const LinearMap& phi);

// Involutive middle-index swap out[(i,j),(k,l)] = in[(i,k),(j,l)]. In the
// matrix-unit basis this is exactly the A-form <-> B-form relation.
Matrix middle_swap(const Matrix& x, int d);

// Unitary with columns vec_rm(f_alpha); conjugation by it moves A/B matrices
// between the matrix-unit basis and basis f.
Matrix basis_change_matrix(const OrthonormalBasis& basis);

// A <-> B conversion kernel in basis f: out_ab = sum_mn tr(f_a^dag f_m f_b f_n^dag) in_mn.
// The same kernel converts both directions; it is an involution.
Matrix ab_conversion(const Matrix& x, const OrthonormalBasis& basis);

} // namespace posmap
