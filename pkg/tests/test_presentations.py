import pytest

from commacat.fixtures import load_fixture
from commacat.linalg import FpMatrix
from commacat.modules import ModuleMap, direct_sum, regular_module, zero_module
from commacat.presentations import (
    Presentation,
    d_sigma_member,
    d_sigma_member_oracle,
    free_presentation,
    is_left_approximation,
    is_partial_silting,
    is_silting,
    trivial_presentation,
    validate_presentation,
)


@pytest.fixture(scope="module")
def a2():
    return load_fixture("a2")


@pytest.fixture(scope="module")
def dual():
    return load_fixture("dual-numbers")


class _AllFamily:
    def contains(self, m):
        return True


class _DSigmaFamily:
    def __init__(self, pres):
        self.pres = pres

    def contains(self, m):
        return d_sigma_member(self.pres, m)


def test_fixture_presentations_exact(a2, dual):
    for fx in (a2, dual):
        for name, pres in fx.presentations.items():
            assert validate_presentation(pres) == [], name


def test_free_presentation_zero_module(a2):
    pres = free_presentation(zero_module(a2.r))
    assert pres.sigma.source.dim == 0
    assert pres.sigma.target.dim == 0
    assert validate_presentation(pres) == []


def test_free_presentation_simple_dual_numbers(dual):
    # ker(R -> k) = xR, one generator: R --(.x)--> R -> k
    pres = free_presentation(dual.r_universe["k"], minimize=True)
    assert validate_presentation(pres) == []
    assert pres.sigma.source.dim == 2
    assert pres.sigma.target.dim == 2
    assert pres.sigma.matrix == dual.presentations["k_from_x"].sigma.matrix


def test_free_presentation_regular_target(dual):
    pres = free_presentation(dual.r_universe["R"], minimize=True)
    assert validate_presentation(pres) == []
    # a single regular generator suffices and the kernel is zero
    assert pres.sigma.target.dim == 2
    assert pres.sigma.source.dim == 0


def test_free_presentation_unminimized(dual):
    pres = free_presentation(dual.r_universe["k"])
    assert validate_presentation(pres) == []
    assert pres.sigma.target.dim == 2  # one regular copy per basis vector of k


def test_d_sigma_trivial_presentation_everything(a2):
    pres = a2.presentations["triv_k_R"]
    for m in a2.r_universe.values():
        assert d_sigma_member(pres, m)


def test_d_sigma_dual_numbers_examples(dual):
    pres = dual.presentations["k_from_x"]
    assert not d_sigma_member(pres, dual.r_universe["k"])
    assert not d_sigma_member(pres, dual.r_universe["R"])
    assert d_sigma_member(pres, dual.r_universe["0"])


def test_d_sigma_a2_members(a2):
    pres = a2.presentations["S_R_from_P"]
    expected = {"0": True, "S_R": True, "S_S": False, "P": True, "N": False}
    for name, want in expected.items():
        assert d_sigma_member(pres, a2.t_universe[name]) == want, name


def test_d_sigma_matches_oracle(a2, dual):
    for fx, presnames, universe in (
        (a2, ["S_R_from_P"], a2.t_universe_list()),
        (dual, ["k_from_x", "triv_R"], dual.r_universe_list()),
    ):
        for pname in presnames:
            pres = fx.presentations[pname]
            for m in universe:
                assert d_sigma_member(pres, m) == d_sigma_member_oracle(pres, m), (pname, m.label)


def test_d_sigma_closed_under_images(a2):
    # sigma-class membership survives epimorphic images inside the universe
    from commacat.modules import hom_space, image_kernel_cokernel

    pres = a2.presentations["S_R_from_P"]
    univ = a2.t_universe_list()
    members = [m for m in univ if d_sigma_member(pres, m)]
    for m in members:
        for n in univ:
            for h in hom_space(m, n):
                img = image_kernel_cokernel(h).image
                assert d_sigma_member(pres, img)


def test_d_sigma_closed_under_extensions(a2):
    from commacat.modules import extension_middle_terms

    pres = a2.presentations["S_R_from_P"]
    univ = a2.t_universe_list()
    members = [m for m in univ if d_sigma_member(pres, m)]
    for m in members:
        for n in members:
            for e in extension_middle_terms(m, n).middle_terms:
                assert d_sigma_member(pres, e)


def test_is_silting_regular_module(a2):
    treg = regular_module(a2.t)
    pres = trivial_presentation(treg)
    verdict = is_silting(treg, pres, a2.t_universe_list())
    assert verdict.holds
    assert verdict.universe_hash


def test_is_silting_fails_with_witness(a2):
    pres = a2.presentations["S_R_from_P"]
    verdict = is_silting(a2.t_universe["S_R"], pres, a2.t_universe_list())
    assert not verdict.holds
    witnesses = {(d["label"], d["in_d_sigma"], d["in_gen"]) for d in verdict.disagreements}
    assert ("P", True, False) in witnesses


def test_is_silting_zero_module(a2):
    z = zero_module(a2.t)
    verdict = is_silting(z, trivial_presentation(z), [z])
    assert verdict.holds


def test_partial_silting_examples(a2, dual):
    treg = regular_module(a2.t)
    assert is_partial_silting(treg, trivial_presentation(treg), a2.t_universe_list()).holds
    verdict = is_partial_silting(
        dual.r_universe["k"], dual.presentations["k_from_x"], dual.r_universe_list()
    )
    assert not verdict.holds
    assert any(f["clause"] == "self-membership" for f in verdict.failures)
    verdict = is_partial_silting(
        a2.t_universe["S_R"], a2.presentations["S_R_from_P"], a2.t_universe_list()
    )
    assert verdict.holds


def test_silting_implies_partial_silting(a2, dual):
    cases = [
        (a2, regular_module(a2.t), trivial_presentation(regular_module(a2.t)), a2.t_universe_list()),
        (a2, a2.t_universe["S_R"], a2.presentations["S_R_from_P"], a2.t_universe_list()),
        (dual, dual.r_universe["k"], dual.presentations["k_from_x"], dual.r_universe_list()),
        (dual, dual.r_universe["R"], dual.presentations["triv_R"], dual.r_universe_list()),
    ]
    for fx, m, pres, univ in cases:
        if is_silting(m, pres, univ).holds:
            assert is_partial_silting(m, pres, univ).holds


def test_pairwise_sum_closure_extends_to_triples(a2):
    # with finitely generated projectives, pairwise closure gives triple closure
    pres = a2.presentations["S_R_from_P"]
    univ = a2.t_universe_list()
    members = [m for m in univ if d_sigma_member(pres, m)]
    pairwise = all(
        d_sigma_member(pres, direct_sum([x, y], algebra=a2.t).module)
        for x in members
        for y in members
    )
    assert pairwise
    for x in members:
        for y in members:
            for z in members:
                triple = direct_sum([x, y, z], algebra=a2.t).module
                assert d_sigma_member(pres, triple)


def test_left_approximation_identity(a2):
    from commacat.modules import identity_map

    treg = regular_module(a2.t)
    fam = _AllFamily()
    assert is_left_approximation(identity_map(treg), fam, a2.t_universe_list())


def test_left_approximation_to_zero_fails(a2):
    m = a2.t_universe["P"]
    f = ModuleMap(m, zero_module(a2.t), FpMatrix.zeros(2, 0, 2))
    fam = _AllFamily()
    assert not is_left_approximation(f, fam, a2.t_universe_list())


def test_left_approximation_regular_into_class(a2):
    from commacat.modules import identity_map

    treg = regular_module(a2.t)
    fam = _DSigmaFamily(trivial_presentation(treg))
    assert is_left_approximation(identity_map(treg), fam, a2.t_universe_list())
