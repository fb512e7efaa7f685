"""Quick check that the heisenlab extension imports and agrees with known values."""

from fractions import Fraction

import heisenlab as hl


def main():
    a = hl.HeisElem([1], [0], 0, 3)
    b = hl.HeisElem([0], [1], 0, 3)
    c = a.commutator(b)
    assert c.is_central() and not a.commutes(b)
    assert (a * a.inverse()) == hl.HeisElem.identity(1, 3)
    assert (a ** 3) == hl.HeisElem.identity(1, 3)

    g = hl.build_graph(3, k=1)
    assert g.vertex_count() == 9
    stats = g.quasi_stats()
    assert stats["normalized_sum"] == Fraction(2144, 19683), stats

    et = hl.erdos_turan(2, 3, family="ut")
    print("erdos-turan UT(3,2):", et)

    emb = hl.embed_graph(3, [(0, 1), (1, 2)], 3)
    assert emb["verified"]

    assert hl.extension_witness([0, 1], [2]) == 3
    exact, approx = hl.neighborhood_mass(0)
    assert exact == Fraction(1, 3) and abs(approx - 1 / 3) < 1e-15

    traj = hl.rado_trajectory(0, 20, seed=7)
    assert traj == hl.rado_trajectory(0, 20, seed=7)

    rep = hl.h3_mix_report(3, steps=10)
    assert rep["stationary_exact"]

    st = hl.sigma_tau(5, [(2, 4, 1), (2, 5, 1), (4, 5, 1)], 2)
    assert st["sigma"] == [5, 6] and st["tau"] == [3, 5], st

    census = hl.conjugacy_census(4, 2)
    print("census UT(4,2):", census)
    assert hl.andre_class_check(3, 2, 2, 3)

    try:
        hl.build_graph(9, k=1)
    except hl.HeisenlabError as e:
        print("rejected p=9:", e)
    else:
        raise AssertionError("p=9 accepted")

    print("smoke test ok, version", hl.__version__)


if __name__ == "__main__":
    main()
