#include <doctest.h>

#include "posmap/json_io.hpp"
#include "test_helpers.hpp"

using namespace posmap;
using testing::max_diff;

TEST_CASE("matrix JSON round trip is bit exact") {
    Rng rng(50);
    const Matrix m = random_gaussian_matrix(3, 2, rng);
    const Json j = Json::parse(matrix_to_json(m).dump());
    const Matrix back = matrix_from_json(j, "m");
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 2);
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c) CHECK(back(i, c) == m(i, c));
}

TEST_CASE("matrix JSON schema errors carry a path") {
    CHECK_THROWS_AS(matrix_from_json(Json::array(), "x"), SchemaError);
    CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}}, "x"), SchemaError);
    CHECK_THROWS_AS(
        matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"data", Json::array()}}, "x"),
        SchemaError);
    try {
        matrix_from_json(Json{{"rows", 0}, {"cols", 2}, {"data", Json::array()}}, "x");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.path() == "x/rows");
    }
    Json bad_entry{{"rows", 1}, {"cols", 1}, {"data", Json::array({Json::array({1.0})})}};
    try {
        matrix_from_json(bad_entry, "m");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.path() == "m/data/0");
    }
}

TEST_CASE("map JSON round trip for every representation") {
    Rng rng(51);
    const LinearMap phi = testing::random_map(2, rng);

    for (const LinearMap& original :
         {LinearMap(phi.to_transfer()), LinearMap(phi.to_choi()),
          LinearMap(phi.to_aform(gell_mann_with_identity(2))),
          LinearMap(testing::random_kraus(2, 3, rng))}) {
        const Json j = Json::parse(map_to_json(original).dump());
        const LinearMap back = map_from_json(j, "map");
        CHECK(back.rep() == original.rep());
        CHECK(max_diff(back.transfer_matrix(), original.transfer_matrix()) < 1e-12);
    }
}

TEST_CASE("map JSON defaults and errors") {
    // basis defaults to matrix units for transfer maps
    Json j{{"d", 2},
           {"repr", "transfer"},
           {"data", matrix_to_json(Matrix::Identity(4, 4))}};
    const LinearMap id = map_from_json(j, "map");
    CHECK(max_diff(id.transfer_matrix(), Matrix::Identity(4, 4)) == 0.0);

    j["repr"] = "nonsense";
    CHECK_THROWS_AS(map_from_json(j, "map"), SchemaError);
    j["repr"] = "transfer";
    j["data"] = matrix_to_json(Matrix::Identity(3, 3));  // not d^2 x d^2
    CHECK_THROWS_AS(map_from_json(j, "map"), SchemaError);
    j.erase("d");
    CHECK_THROWS_AS(map_from_json(j, "map"), SchemaError);
}

TEST_CASE("custom basis JSON round trip") {
    const auto basis = gell_mann_with_identity(2);
    OrthonormalBasis custom = OrthonormalBasis::custom(2, basis.elems);
    const Json j = Json::parse(basis_to_json(custom).dump());
    const OrthonormalBasis back = basis_from_json(j, 2, "basis");
    CHECK(back.kind == BasisKind::custom);
    for (std::size_t i = 0; i < back.elems.size(); ++i)
        CHECK(max_diff(back.elems[i], custom.elems[i]) == 0.0);

    CHECK_THROWS_AS(basis_from_json(Json("custom"), 2, "basis"), SchemaError);
    CHECK_THROWS_AS(basis_from_json(Json("unknown"), 2, "basis"), SchemaError);
}

TEST_CASE("report serialization shapes") {
    const auto rep = spectrum(LinearMap::identity(2));
    const Json sj = spectrum_to_json(rep);
    CHECK(sj["d"] == 2);
    CHECK(sj["eigenvalues"].size() == 4);
    CHECK(sj["bound_satisfied"] == true);
    CHECK(sj["pf_bound"] == 1.0);

    const auto dec = biorthonormal_decomposition(LinearMap::identity(2));
    const Json bj = biorth_to_json(dec);
    CHECK(bj["lambdas"].size() == 4);
    CHECK(bj["f"].size() == 4);
    CHECK(bj["g"].size() == 4);

    Rng rng(52);
    const auto rho = DensityMatrix::pure(random_haar_state(3, rng));
    const Json wj = witness_to_json(ball_witness(rho, 3, 100, 3));
    CHECK(wj.contains("a"));
    CHECK(wj["cone"]["trace_nonneg"] == true);
    CHECK(wj["cone"]["trace_sq"] == true);
    CHECK(wj["seed"] == 3);
    CHECK(wj["value"].get<double>() < 0.0);
}

TEST_CASE("json output is deterministic") {
    Rng rng(53);
    const LinearMap phi = testing::random_map(3, rng);
    const std::string once = map_to_json(phi).dump();
    const std::string twice = map_to_json(phi).dump();
    CHECK(once == twice);
    // double round trip through text is a fixed point
    CHECK(map_to_json(map_from_json(Json::parse(once), "m")).dump() == once);
}
