"""Smoke tests for the python bindings: a quick pass over every exposed
surface with known-answer checks."""

import math
import sys

import numpy as np

import posmap


def check(name, ok):
    status = "ok" if ok else "FAIL"
    print(f"{status:4s} {name}")
    return bool(ok)


def main():
    results = []

    ident = posmap.LinearMap.identity(3)
    a = np.arange(9, dtype=complex).reshape(3, 3) + 1j
    results.append(check("identity apply", np.allclose(ident.apply(a), a)))

    t = posmap.LinearMap.transpose(2)
    results.append(check("transpose apply", np.allclose(t.apply(a[:2, :2]), a[:2, :2].T)))

    rep = posmap.spectrum(ident)
    results.append(check("identity spectrum", np.allclose(rep["eigenvalues"], 1.0)
                         and rep["bound_satisfied"] and rep["pf_bound"] == 1.0))

    cp = posmap.is_completely_positive(t)
    results.append(check("transpose not CP", not cp["cp"]
                         and abs(cp["min_choi_eig"] + 1.0) < 1e-10))
    results.append(check("transpose is CCP", posmap.is_completely_copositive(t)))

    kraus = ident.to_kraus()
    results.append(check("identity kraus", len(kraus) == 1
                         and np.allclose(np.abs(kraus[0]), np.eye(3))))

    # round trip through the Choi matrix (any 4x4 matrix serves as transfer data)
    b = posmap.random_density(4, 4, seed=3)
    phi = posmap.LinearMap.from_transfer(b, 2)
    back = posmap.LinearMap.from_choi(phi.to_choi(), 2)
    results.append(check("choi round trip", np.allclose(back.to_transfer(), b, atol=1e-12)))

    # Werner twirl of |00><00| equals (I + F)/6
    w = posmap.werner_map(2)
    ket00 = np.zeros((4, 4), dtype=complex)
    ket00[0, 0] = 1.0
    expected = (np.eye(4) + posmap.flip_operator(2)) / 6.0
    results.append(check("werner twirl", np.allclose(w.apply(ket00), expected, atol=1e-12)))

    # ball witness closed form for a pure state in d = 3
    pure = np.zeros((3, 3), dtype=complex)
    pure[0, 0] = 1.0
    wit = posmap.ball_witness(pure, 3, n_samples=200, seed=1)
    results.append(check("witness value", abs(wit["value"] - (math.sqrt(0.5) - 1.0)) < 1e-12))
    results.append(check("witness sound", wit["sampled_min"] >= -1e-9
                         and wit["trace_nonneg"] and wit["trace_sq"]))
    results.append(check("ball membership", not posmap.ball_membership(pure, 3)
                         and posmap.ball_membership(np.eye(3, dtype=complex) / 3, 3)))

    # InBall raises
    try:
        posmap.ball_witness(np.eye(3, dtype=complex) / 3, 3)
        results.append(check("InBall raised", False))
    except posmap.Error:
        results.append(check("InBall raised", True))

    # example map closed-form spectrum
    alpha, beta = posmap.random_example_spec(3, seed=9)
    ex = posmap.example_map(alpha, beta)
    predicted = sorted(posmap.predicted_eigenvalues(alpha, beta), key=abs, reverse=True)
    computed = posmap.spectrum(ex)["eigenvalues"]
    results.append(check("example map spectrum",
                         np.allclose(sorted(np.abs(predicted)), sorted(np.abs(computed)),
                                     atol=1e-10)))
    results.append(check("example map bistochastic",
                         ex.is_unital() and ex.is_trace_preserving()))

    # biorthonormal decomposition reconstructs the map
    dec = posmap.biorthonormal_decomposition(ex)
    x = posmap.random_density(3, 2, seed=11)
    rec = sum(l * f * np.trace(g @ x)
              for l, f, g in zip(dec["lambdas"], dec["f"], dec["g"]))
    results.append(check("biorth reconstruction", np.allclose(rec, ex.apply(x), atol=1e-8)))

    # adapted basis Gram matrix
    f, g = posmap.adapted_invariant_basis(3, posmap.random_density(3, 3, seed=4))
    gram = np.array([[np.trace(fi @ gj) for gj in g] for fi in f])
    results.append(check("adapted basis gram", np.allclose(gram, np.eye(9), atol=1e-10)))

    # purity and hs_inner
    results.append(check("purity", abs(posmap.purity(np.eye(4, dtype=complex) / 4) - 0.25) < 1e-12))
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1.0
    results.append(check("hs_inner", posmap.hs_inner(e01, e01) == 1.0))

    print(f"{sum(results)}/{len(results)} smoke checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
