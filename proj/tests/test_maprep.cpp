#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "posmap/maprep.hpp"
#include "posmap/stateclasses.hpp"
#include "test_helpers.hpp"

using namespace posmap;
using testing::max_diff;

TEST_CASE("vec/unvec row-major round trip") {
    Rng rng(1);
    const Matrix a = random_gaussian_matrix(3, 3, rng);
    CHECK(max_diff(unvec_rm(vec_rm(a), 3), a) == 0.0);
    CHECK(vec_rm(a)(0 * 3 + 1) == a(0, 1));
    CHECK_THROWS_AS(unvec_rm(vec_rm(a), 2), DimensionError);
}

TEST_CASE("apply") {
    Rng rng(2);
    const Matrix a = random_gaussian_matrix(3, 3, rng);
    CHECK(max_diff(LinearMap::identity(3).apply(a), a) < 1e-14);
    CHECK(max_diff(LinearMap::transpose_map(3).apply(a), a.transpose()) < 1e-14);

    Matrix x(2, 2);
    x << 1, 2, 3, 4;
    const auto pinch = pinching({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1;
    expected(1, 1) = 4;
    CHECK(max_diff(pinch.apply(x), expected) < 1e-14);

    CHECK_THROWS_AS(LinearMap::identity(3).apply(Matrix::Identity(2, 2)), DimensionError);
}

TEST_CASE("apply agrees across representations") {
    Rng rng(3);
    const auto gm = gell_mann_with_identity(3);
    for (int trial = 0; trial < 10; ++trial) {
        const LinearMap phi = testing::random_map(3, rng);
        const Matrix a = random_gaussian_matrix(3, 3, rng);
        const Matrix ref = phi.apply(a);
        CHECK(max_diff(LinearMap(phi.to_choi()).apply(a), ref) < 1e-10);
        CHECK(max_diff(LinearMap(phi.to_aform(matrix_unit_basis(3))).apply(a), ref) < 1e-10);
        CHECK(max_diff(LinearMap(phi.to_aform(gm)).apply(a), ref) < 1e-10);
        CHECK(max_diff(LinearMap(phi.to_transfer(gm)).apply(a), ref) < 1e-10);
    }
    // Kraus-native evaluation against the canonical transfer path
    const KrausForm kraus = testing::random_kraus(3, 4, rng);
    const LinearMap km(kraus);
    const Matrix a = random_gaussian_matrix(3, 3, rng);
    Matrix direct = Matrix::Zero(3, 3);
    for (const auto& op : kraus.ops) direct += op * a * op.adjoint();
    CHECK(max_diff(km.apply(a), direct) < 1e-12);
    CHECK(max_diff(LinearMap(km.to_transfer()).apply(a), direct) < 1e-10);
}

TEST_CASE("to_choi fixed convention") {
    // identity map: Choi = sum e_ij (x) e_ij, rank 1, nonzero eigenvalue d
    for (int d = 2; d <= 4; ++d) {
        const ChoiMatrix c = LinearMap::identity(d).to_choi();
        Eigen::SelfAdjointEigenSolver<Matrix> es(c.C);
        int nonzero = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            if (std::abs(es.eigenvalues()(i)) > 1e-10) ++nonzero;
        CHECK(nonzero == 1);
        CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(d).epsilon(1e-12));
    }
    // transpose map in d = 2: Choi = flip, eigenvalues {1, 1, 1, -1}
    const ChoiMatrix ct = LinearMap::transpose_map(2).to_choi();
    CHECK(max_diff(ct.C, flip_operator(2)) < 1e-14);
    Eigen::SelfAdjointEigenSolver<Matrix> es(ct.C);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("round trips through every representation") {
    Rng rng(4);
    for (int d = 2; d <= 4; ++d)
        for (int trial = 0; trial < 10; ++trial) {
            const LinearMap phi = testing::random_map(d, rng);
            const Matrix& b = phi.transfer_matrix();
            CHECK(max_diff(LinearMap(phi.to_choi()).transfer_matrix(), b) < 1e-10);
            CHECK(max_diff(LinearMap(phi.to_aform(matrix_unit_basis(d))).transfer_matrix(), b) <
                  1e-10);
            const auto gm = gell_mann_with_identity(d);
            CHECK(max_diff(LinearMap(phi.to_aform(gm)).transfer_matrix(), b) < 1e-10);
            CHECK(max_diff(LinearMap(phi.to_transfer(gm)).transfer_matrix(), b) < 1e-10);
            const auto fo = fourier_offdiag_basis(d);
            CHECK(max_diff(LinearMap(phi.to_aform(fo)).transfer_matrix(), b) < 1e-10);
        }
}

TEST_CASE("reshuffle") {
    Rng rng(5);
    // involution through representation dispatch
    for (int trial = 0; trial < 5; ++trial) {
        const LinearMap phi = testing::random_map(3, rng);
        const LinearMap back = reshuffle(reshuffle(phi));
        CHECK(back.rep() == RepKind::transfer);
        CHECK(max_diff(std::get<TransferMatrix>(back.native()).B,
                       std::get<TransferMatrix>(phi.native()).B) == 0.0);
    }
    // identity map: reshuffle(I) = sum e_ij (x) e_ij
    const auto c_id = reshuffle(LinearMap::identity(3).to_transfer());
    Matrix expected = Matrix::Zero(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            expected += testing::kron(matrix_unit(3, i, j), matrix_unit(3, i, j));
    CHECK(max_diff(c_id.C, expected) == 0.0);
    // agreement with the apply-based Choi oracle on random maps
    for (int d = 2; d <= 4; ++d)
        for (int trial = 0; trial < 34; ++trial) {
            const LinearMap phi = testing::random_map(d, rng);
            const auto c = reshuffle(phi.to_transfer());
            CHECK(max_diff(c.C, testing::choi_oracle(phi)) < 1e-12);
        }
    // refuses non-matrix-unit bases and non-B/Choi representations
    const LinearMap phi = testing::random_map(2, rng);
    CHECK_THROWS_AS(reshuffle(phi.to_transfer(gell_mann_with_identity(2))), BasisError);
    CHECK_THROWS_AS(reshuffle(LinearMap(phi.to_aform(matrix_unit_basis(2)))), BasisError);
}

TEST_CASE("compose") {
    Rng rng(6);
    const LinearMap phi = testing::random_map(3, rng);
    CHECK(max_diff(compose(LinearMap::identity(3), phi).transfer_matrix(),
                   phi.transfer_matrix()) < 1e-14);
    const auto t = LinearMap::transpose_map(3);
    CHECK(max_diff(compose(t, t).transfer_matrix(), Matrix::Identity(9, 9)) < 1e-14);

    const LinearMap psi = testing::random_map(3, rng);
    const Matrix a = random_gaussian_matrix(3, 3, rng);
    CHECK(max_diff(compose(phi, psi).apply(a), phi.apply(psi.apply(a))) < 1e-10);

    // projection idempotence under composition
    const auto pinch = pinching({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
    CHECK(max_diff(compose(pinch, pinch).transfer_matrix(), pinch.transfer_matrix()) < 1e-12);

    CHECK_THROWS_AS(compose(phi, LinearMap::identity(2)), DimensionError);
}

TEST_CASE("dual") {
    Rng rng(7);
    CHECK(max_diff(dual(LinearMap::identity(3)).transfer_matrix(), Matrix::Identity(9, 9)) <
          1e-14);

    // pinchings are self-dual
    const auto pinch = pinching({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
    CHECK(max_diff(dual(pinch).transfer_matrix(), pinch.transfer_matrix()) < 1e-12);

    for (int trial = 0; trial < 10; ++trial) {
        const LinearMap phi = testing::random_map(3, rng);
        // involution
        CHECK(max_diff(dual(dual(phi)).transfer_matrix(), phi.transfer_matrix()) == 0.0);
        // defining identity tr(phi^*(x) a) = tr(x phi(a))
        const Matrix x = random_gaussian_matrix(3, 3, rng);
        const Matrix a = random_gaussian_matrix(3, 3, rng);
        const Complex lhs = (dual(phi).apply(x) * a).trace();
        const Complex rhs = (x * phi.apply(a)).trace();
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
    }

    // for self-adjoint maps the dual transfer matrix is the adjoint
    for (int trial = 0; trial < 10; ++trial) {
        const LinearMap phi = testing::random_selfadjoint_map(3, rng);
        CHECK(max_diff(dual(phi).transfer_matrix(), phi.transfer_matrix().adjoint()) < 1e-12);
    }
}

TEST_CASE("predicates") {
    CHECK(is_selfadjoint(LinearMap::identity(3)));
    CHECK(is_unital(LinearMap::identity(3)));
    CHECK(is_trace_preserving(LinearMap::identity(3)));

    // phi(a) = v a v^dag with non-unitary v: self-adjoint, neither unital
    // nor trace preserving
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = 1.0;
    v(1, 1) = 2.0;
    const LinearMap conj_v(KrausForm{2, {v}});
    CHECK(is_selfadjoint(conj_v));
    CHECK_FALSE(is_unital(conj_v));
    CHECK_FALSE(is_trace_preserving(conj_v));

    // is_trace_preserving(phi) <=> is_unital(dual(phi))
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const LinearMap phi = testing::random_map(3, rng);
        CHECK(is_trace_preserving(phi) == is_unital(dual(phi)));
    }

    const LinearMap ball = ball_map(3);
    CHECK(is_selfadjoint(ball));
    CHECK(is_unital(ball));
    CHECK(is_trace_preserving(ball));
}

TEST_CASE("map_inner") {
    for (int d = 2; d <= 4; ++d) {
        const auto id = LinearMap::identity(d);
        CHECK(std::abs(map_inner(id, id) - Complex(d * d, 0)) < 1e-12);
    }
    CHECK(std::abs(map_inner(LinearMap::identity(2), LinearMap::transpose_map(2)) -
                   Complex(2, 0)) < 1e-12);

    // value equals the basis sum sum_a tr(phi(f_a)^dag psi(f_a)) in any basis
    Rng rng(9);
    const LinearMap phi = testing::random_map(3, rng);
    const LinearMap psi = testing::random_map(3, rng);
    const Complex viaB = map_inner(phi, psi);
    for (const auto& basis : {matrix_unit_basis(3), gell_mann_with_identity(3)}) {
        Complex acc = 0.0;
        for (const auto& f : basis.elems)
            acc += (phi.apply(f).adjoint() * psi.apply(f)).trace();
        CHECK(std::abs(acc - viaB) < 1e-12 * (1.0 + std::abs(viaB)));
    }

    // isometry against the Choi inner product
    for (int trial = 0; trial < 10; ++trial) {
        const LinearMap f = testing::random_map(3, rng);
        const LinearMap g = testing::random_map(3, rng);
        const Complex inner = map_inner(f, g);
        const Complex choi = (f.to_choi().C.adjoint() * g.to_choi().C).trace();
        CHECK(std::abs(inner - choi) < 1e-10 * (1.0 + std::abs(inner)));
    }

    CHECK_THROWS_AS(map_inner(LinearMap::identity(2), LinearMap::identity(3)), DimensionError);
}

TEST_CASE("A-form coefficients follow the conversion relations") {
    Rng rng(10);
    for (int d = 2; d <= 3; ++d) {
        const LinearMap phi = testing::random_map(d, rng);
        const Matrix& b = phi.transfer_matrix();

        // matrix-unit basis: A_{ij,kl} = B_{ik,jl}
        const AForm a_e = phi.to_aform(matrix_unit_basis(d));
        CHECK(max_diff(a_e.A, middle_swap(b, d)) == 0.0);

        // the conversion kernel is an involution and maps B to A in any basis
        for (const auto& basis : {matrix_unit_basis(d), gell_mann_with_identity(d)}) {
            const Matrix b_f = phi.to_transfer(basis).B;
            const Matrix a_f = phi.to_aform(basis).A;
            CHECK(max_diff(ab_conversion(b_f, basis), a_f) < 1e-10);
            CHECK(max_diff(ab_conversion(a_f, basis), b_f) < 1e-10);
        }
    }

    // coefficient-extraction oracle: A_ab = sum_mu tr(gamma_ab(e_mu)^dag phi(e_mu))
    const int d = 2;
    const LinearMap phi = testing::random_map(d, rng);
    const auto gm = gell_mann_with_identity(d);
    const auto units = matrix_unit_basis(d);
    Matrix a_oracle(d * d, d * d);
    for (int al = 0; al < d * d; ++al)
        for (int be = 0; be < d * d; ++be) {
            Complex acc = 0.0;
            for (const auto& h : units.elems)
                acc += ((gm.elems[al] * h * gm.elems[be].adjoint()).adjoint() * phi.apply(h))
                           .trace();
            a_oracle(al, be) = acc;
        }
    CHECK(max_diff(a_oracle, phi.to_aform(gm).A) < 1e-12);

    // self-adjoint maps have Hermitian A in any orthonormal basis
    for (int trial = 0; trial < 10; ++trial) {
        const LinearMap sa = testing::random_selfadjoint_map(3, rng);
        CHECK(is_hermitian(sa.to_aform(matrix_unit_basis(3)).A, 1e-10));
        CHECK(is_hermitian(sa.to_aform(gell_mann_with_identity(3)).A, 1e-10));
    }
}

TEST_CASE("B-form CP condition in the matrix-unit basis") {
    // sum_ab B_ab f_a^T (x) f_b^dag is PSD exactly when the map is CP
    auto eq37_matrix = [](const LinearMap& phi) {
        const int d = phi.dim();
        const auto units = matrix_unit_basis(d);
        const Matrix& b = phi.transfer_matrix();
        Matrix m = Matrix::Zero(d * d, d * d);
        for (int al = 0; al < d * d; ++al)
            for (int be = 0; be < d * d; ++be)
                m += b(al, be) *
                     testing::kron(units.elems[al].transpose(), units.elems[be].adjoint());
        return m;
    };
    Rng rng(12);
    const LinearMap cp = testing::random_cp_map(3, 3, rng);
    CHECK(min_eigenvalue_hermitian(eq37_matrix(cp)) > -1e-10);
    const LinearMap t = LinearMap::transpose_map(2);
    CHECK(min_eigenvalue_hermitian(eq37_matrix(t)) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("transfer application is linear") {
    Rng rng(14);
    const LinearMap phi = testing::random_map(3, rng);
    const Matrix a = random_gaussian_matrix(3, 3, rng);
    const Matrix b = random_gaussian_matrix(3, 3, rng);
    const Complex x = rng.cgaussian(), y = rng.cgaussian();
    CHECK(max_diff(phi.apply(x * a + y * b), x * phi.apply(a) + y * phi.apply(b)) < 1e-10);
}

TEST_CASE("kraus transfer matrix") {
    Rng rng(13);
    const KrausForm kraus = testing::random_kraus(2, 3, rng);
    const LinearMap phi(kraus);
    // B = sum_k K (x) conj(K)
    Matrix expected = Matrix::Zero(4, 4);
    for (const auto& op : kraus.ops) expected += testing::kron(op, op.conjugate());
    CHECK(max_diff(phi.transfer_matrix(), expected) < 1e-14);
}
