import pytest

from commacat.fixtures import load_fixture
from commacat.modules import regular_module
from commacat.torsion import (
    all_submodule_bases,
    all_subspace_bases,
    comma_family,
    family_all,
    family_d_sigma,
    family_explicit,
    family_gen,
    family_zero,
    is_torsion_class,
    is_torsion_pair,
    perp_left,
    perp_right,
    perp_right_modules,
    torsion_pair_oracle,
)


@pytest.fixture(scope="module")
def a2():
    return load_fixture("a2")


@pytest.fixture(scope="module")
def univ(a2):
    return a2.t_universe_list()


def test_subspace_count():
    # Gaussian binomials: F_2^2 has 5 subspaces, F_2^3 has 16, F_3^2 has 6
    assert len(all_subspace_bases(2, 2)) == 5
    assert len(all_subspace_bases(2, 3)) == 16
    assert len(all_subspace_bases(3, 2)) == 6


def test_submodules_of_projective(a2):
    # P = (k, k, id) has exactly 0, socle S_S, P
    subs = all_submodule_bases(a2.t_universe["P"])
    assert len(subs) == 3
    dims = sorted(w.cols for w in subs)
    assert dims == [0, 1, 2]


def test_family_membership_invariance(a2, univ):
    # membership is isomorphism-invariant: evaluate on an isomorphic copy
    import numpy as np

    from commacat.linalg import FpMatrix, inverse
    from commacat.modules import ModuleRep

    fam = family_gen(a2.t_universe["P"], univ)
    change = FpMatrix(2, [[1, 1], [0, 1]])
    inv = inverse(change)
    m = a2.t_universe["P"]
    twisted = ModuleRep(
        m.algebra,
        m.side,
        m.dim,
        [change @ a @ inv for a in m.action],
        label="P-twisted",
    )
    assert fam.contains(m) == fam.contains(twisted)


def test_perp_right_all_is_zero(a2, univ):
    fam = perp_right(family_all(univ), univ)
    assert fam.member_indices(univ) == [0]  # only the zero module


def test_perp_right_zero_is_all(a2, univ):
    fam = perp_right(family_zero(univ), univ)
    assert fam.member_indices(univ) == list(range(len(univ)))


def test_perp_left_mirrors(a2, univ):
    assert perp_left(family_all(univ), univ).member_indices(univ) == [0]
    assert perp_left(family_zero(univ), univ).member_indices(univ) == list(range(len(univ)))


def test_perp_right_of_projective(a2, univ):
    names = list(a2.t_universe)
    fam = perp_right_modules([a2.t_universe["P"]], univ)
    got = {names[i] for i in fam.member_indices(univ)}
    assert got == {"0", "S_S"}


def test_trivial_torsion_pairs(a2, univ):
    assert is_torsion_pair(family_zero(univ), family_all(univ), univ).holds
    assert is_torsion_pair(family_all(univ), family_zero(univ), univ).holds


def test_silting_induced_torsion_pair(a2, univ):
    # (Gen(P + S_R-part), perp) over the five-object universe:
    # x = {0, S_R, P}, y = {0, S_S}
    names = list(a2.t_universe)
    x = family_gen(a2.t_universe["P"], univ, label="Gen(P)")
    got = {names[i] for i in x.member_indices(univ)}
    assert got == {"0", "S_R", "P"}
    y = perp_right(x, univ)
    verdict = is_torsion_pair(x, y, univ)
    assert verdict.holds
    assert verdict.universe_hash


def test_gen_perp_hom_vanishing_automatic(a2, univ):
    # (Gen G, perp_right(Gen G)) always passes the hom-vanishing clause
    for name in ("P", "S_R", "S_S", "N"):
        g = family_gen(a2.t_universe[name], univ)
        y = perp_right(g, univ)
        verdict = is_torsion_pair(g, y, univ)
        assert not any(c["clause"] == "hom-vanishing" for c in verdict.certificates), name


def test_failing_pair_has_certificates(a2, univ):
    x = family_explicit([a2.t_universe["P"]], univ, label="{P}")
    y = family_explicit([a2.t_universe["S_R"]], univ, label="{S_R}")
    verdict = is_torsion_pair(x, y, univ)
    assert not verdict.holds
    assert any(c["clause"] == "hom-vanishing" for c in verdict.certificates)


def test_oracle_agrees_on_many_pairs(a2, univ):
    zero = family_zero(univ)
    allf = family_all(univ)
    gen_p = family_gen(a2.t_universe["P"], univ, label="Gen(P)")
    gen_sr = family_gen(a2.t_universe["S_R"], univ, label="Gen(S_R)")
    pr_gen_p = perp_right(gen_p, univ)
    pl_gen_sr = perp_left(gen_sr, univ)
    families = [zero, allf, gen_p, gen_sr, pr_gen_p, pl_gen_sr]
    pairs = 0
    for x in families:
        for y in families:
            main = is_torsion_pair(x, y, univ)
            oracle = torsion_pair_oracle(x, y, univ)
            assert main.holds == oracle.holds, (x.label, y.label)
            pairs += 1
    assert pairs >= 20


def test_torsion_pair_implies_perp_identities(a2, univ):
    # when the verdict holds, both perp equalities hold on the universe
    gen_p = family_gen(a2.t_universe["P"], univ)
    y = perp_right(gen_p, univ)
    verdict = is_torsion_pair(gen_p, y, univ)
    assert verdict.holds
    assert perp_right(gen_p, univ).member_indices(univ) == y.member_indices(univ)
    assert perp_left(y, univ).member_indices(univ) == gen_p.member_indices(univ)


def test_torsion_class_all_holds(a2, univ):
    assert is_torsion_class(family_all(univ), univ).holds


def test_torsion_class_s_s_sums(a2, univ):
    fam = family_gen(a2.t_universe["S_S"], univ, label="Gen(S_S)")
    verdict = is_torsion_class(fam, univ)
    assert verdict.holds


def test_torsion_class_p_fails_on_image(a2, univ):
    fam = family_explicit([a2.t_universe["P"]], univ, label="{P,0}-sums")

    # explicit family containing only 0 and P
    def pred(m):
        from commacat.modules import is_isomorphic

        return m.dim == 0 or (m.dim == 2 and is_isomorphic(m, a2.t_universe["P"]).isomorphic)

    fam.predicate = pred
    verdict = is_torsion_class(fam, univ)
    assert not verdict.holds
    img_certs = [c for c in verdict.certificates if c["clause"] == "image-closure"]
    assert img_certs
    # the failing image is the simple S_R, an epimorphic image of P
    assert any(c["image_dim"] == 1 for c in img_certs)


def test_comma_family_membership_via_T_modules(a2, univ):
    names = list(a2.t_universe)
    r_univ = a2.r_universe_list()
    s_univ = a2.s_universe_list()
    bfam = comma_family(
        "B", family_all(r_univ), family_zero(s_univ), a2.t, univ, label="B[all,zero]"
    )
    got = {names[i] for i in bfam.member_indices(univ)}
    assert got == {"0", "P"}
    jfam = comma_family(
        "J", family_zero(r_univ), family_all(s_univ), a2.t, univ, label="J[zero,all]"
    )
    got = {names[i] for i in jfam.member_indices(univ)}
    assert got == {"0", "P"}
    ufam = comma_family(
        "U", family_zero(r_univ), family_all(s_univ), a2.t, univ, label="U[zero,all]"
    )
    got = {names[i] for i in ufam.member_indices(univ)}
    assert got == {"0", "S_S"}


def test_d_sigma_family_torsion_class(a2, univ):
    fam = family_d_sigma(a2.presentations["S_R_from_P"], univ)
    verdict = is_torsion_class(fam, univ)
    assert verdict.holds


def test_monotonicity_under_universe_shrinking(a2, univ):
    # universally-quantified clauses that hold on the big universe hold on subsets
    gen_p = family_gen(a2.t_universe["P"], univ)
    y = perp_right(gen_p, univ)
    big = is_torsion_pair(gen_p, y, univ)
    assert big.holds
    sub_universe = [a2.t_universe[n] for n in ("0", "S_R", "S_S", "P")]
    small = is_torsion_pair(gen_p, y, sub_universe)
    assert small.holds
