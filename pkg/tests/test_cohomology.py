import pytest

from grpcohom.cohomology import (
    INTEGERS,
    CoefficientSpec,
    CoprimeExtensionSpec,
    GradedAbelianGroup,
    ReconstructionProfile,
    TorsionBoundSpec,
    check_torsion_bound,
    cochain_complex,
    cohomology_groups,
    compare_graded,
    first_difference,
    graded_report,
    kunneth,
    predict_coprime_extension,
    reconstruct_abelian_group,
    tensor_profile,
    uct_order_check,
)
from grpcohom.errors import InconsistentProfile
from grpcohom.intlinalg import prime_power_factors
from grpcohom.pcgroup import (
    alperin_atiyah_pair,
    cyclic_group,
    direct_product,
    semidirect_cyclic,
)
from grpcohom.resolution import extend_resolution


def graded(G, n, coeffs=INTEGERS):
    return cohomology_groups(G, n, coeffs)


@pytest.fixture(scope="module")
def s3():
    return semidirect_cyclic(3, cyclic_group(2), [2])


@pytest.fixture(scope="module")
def s3_res(s3):
    return extend_resolution(s3, 6)


# ------------------------------------------------------- coefficients


def test_coefficient_spec_labels_and_parse():
    assert CoefficientSpec.parse("Z") == INTEGERS
    assert CoefficientSpec.parse(" Z/12 ").modulus == 12
    assert CoefficientSpec.modulo(5).label() == "Z/5"
    assert not INTEGERS.is_modular
    assert CoefficientSpec(4).is_modular


@pytest.mark.parametrize("bad", ["z", "Z/", "Z/x", "Z/1", "Z mod 3", ""])
def test_coefficient_spec_rejects(bad):
    with pytest.raises(ValueError):
        CoefficientSpec.parse(bad)


def test_coefficient_spec_rejects_modulus_one():
    with pytest.raises(ValueError):
        CoefficientSpec.modulo(1)


# ------------------------------------------------------- graded groups


def test_graded_normalization():
    g = GradedAbelianGroup(((12, 0, 2), (1,), ()))
    assert g.degrees == ((2, 3, 4, 0), (), ())
    assert g.max_degree == 2
    assert g[0] == (2, 3, 4, 0)
    assert g.order(0) == 0
    assert g.order(1) == 1
    assert GradedAbelianGroup(((9, 3),)).order(0) == 27


def test_graded_equality_is_multiset_equality():
    assert GradedAbelianGroup(((6,),)) == GradedAbelianGroup(((3, 2),))
    assert GradedAbelianGroup(((4,),)) != GradedAbelianGroup(((2, 2),))


def test_graded_rejects_negative_factors():
    with pytest.raises(ValueError):
        GradedAbelianGroup(((-2,),))


def test_graded_report_shape():
    g = GradedAbelianGroup(((0,), (), (2, 3)))
    rep = graded_report("cyclic:6", INTEGERS, g)
    assert rep["format"] == "grpcohom.graded/1"
    assert rep["coefficients"] == "Z"
    assert rep["max_degree"] == 2
    assert rep["degrees"] == [["0"], [], ["2", "3"]]


# ------------------------------------------------------- classical tables


@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_cyclic_cohomology_alternates(k):
    g = graded(cyclic_group(k), 6)
    even = tuple(sorted(prime_power_factors(k)))
    want = tuple(
        (0,) if n == 0 else even if n % 2 == 0 else () for n in range(7)
    )
    assert g == GradedAbelianGroup(want)


def test_trivial_group_cohomology():
    g = graded(cyclic_group(1), 4)
    assert g.degrees == ((0,), (), (), (), ())


def test_c3_modular_coefficients():
    res = extend_resolution(cyclic_group(3), 3)
    mod3 = cohomology_groups(cyclic_group(3), 2, CoefficientSpec.modulo(3),
                             resolution=res)
    mod9 = cohomology_groups(cyclic_group(3), 2, CoefficientSpec.modulo(9),
                             resolution=res)
    assert mod3.degrees == ((3,), (3,), (3,))
    assert mod9.degrees == ((9,), (3,), (3,))


def test_modular_coprime_coefficients_vanish():
    g = cohomology_groups(cyclic_group(3), 3, CoefficientSpec.modulo(2))
    assert g.degrees == ((2,), (), (), ())


# ------------------------------------------------------- general properties


@pytest.mark.parametrize(
    "G",
    [
        cyclic_group(4),
        cyclic_group(6),
        direct_product(cyclic_group(2), cyclic_group(2)),
        direct_product(cyclic_group(2), cyclic_group(4)),
        semidirect_cyclic(3, cyclic_group(2), [2]),
        alperin_atiyah_pair("d8")[0],
    ],
    ids=lambda G: G.name or "?",
)
def test_h1_vanishes_h2_is_abelianization(G):
    g = graded(G, 2)
    assert g[1] == ()
    assert g[2] == tuple(G.abelianization())


def test_cochain_composites_vanish(s3_res):
    deltas = cochain_complex(s3_res)
    for a, b in zip(deltas, deltas[1:]):
        prod = a.mul(b)
        assert all(not row for row in prod.rows)


def test_modular_cochain_composites_vanish_mod_k(s3_res):
    k = 6
    deltas = cochain_complex(s3_res, CoefficientSpec.modulo(k))
    for a, b in zip(deltas, deltas[1:]):
        prod = a.mul(b)
        assert all(v % k == 0 for row in prod.rows for v in row.values())


def test_cohomology_needs_one_extra_degree(s3, s3_res):
    with pytest.raises(ValueError):
        cohomology_groups(s3, s3_res.max_degree, resolution=s3_res)
    g = cohomology_groups(s3, s3_res.max_degree - 1, resolution=s3_res)
    assert g.max_degree == s3_res.max_degree - 1


def test_cohomology_rejects_foreign_resolution(s3_res):
    with pytest.raises(ValueError):
        cohomology_groups(cyclic_group(6), 2, resolution=s3_res)


def test_cohomology_rejects_negative_degree(s3):
    with pytest.raises(ValueError):
        cohomology_groups(s3, -1)


# ------------------------------------------------------- comparison


def test_compare_c4_against_klein_four():
    g1 = graded(cyclic_group(4), 3)
    g2 = graded(direct_product(cyclic_group(2), cyclic_group(2)), 3)
    comps = compare_graded(g1, g2, 3)
    assert [c.equal for c in comps] == [True, True, False, False]
    assert first_difference(comps) == 2
    assert comps[2].left == (4,) and comps[2].right == (2, 2)


def test_compare_equal_and_first_difference_none():
    g = graded(cyclic_group(3), 4)
    comps = compare_graded(g, g, 4)
    assert all(c.equal for c in comps)
    assert first_difference(comps) is None


def test_compare_requires_enough_degrees():
    g = graded(cyclic_group(2), 2)
    with pytest.raises(ValueError):
        compare_graded(g, g, 3)


# ------------------------------------------------------- kunneth


@pytest.mark.parametrize(
    "a,b,n",
    [(2, 2, 5), (2, 4, 4), (3, 3, 4), (2, 3, 4)],
)
def test_kunneth_matches_direct_computation(a, b, n):
    ga = graded(cyclic_group(a), n)
    gb = graded(cyclic_group(b), n)
    direct = graded(direct_product(cyclic_group(a), cyclic_group(b)), n)
    assert kunneth(ga, gb, n) == direct


def test_kunneth_torsion_term_in_degree_three():
    g = graded(cyclic_group(2), 3)
    prod = kunneth(g, g, 3)
    # degree 3 is pure torsion product: Tor(Z/2, Z/2) from degrees 2+2
    assert prod[3] == (2,)


def test_kunneth_requires_connected_degree_zero():
    g = graded(cyclic_group(2), 2)
    bad = GradedAbelianGroup(((0, 0), (), (2,)))
    with pytest.raises(ValueError):
        kunneth(g, bad, 2)
    with pytest.raises(ValueError):
        kunneth(g, g, 3)


# ------------------------------------------------------- coprime extensions


def test_predict_symmetric_group_on_three_letters(s3):
    spec = CoprimeExtensionSpec(3, cyclic_group(2), 2)
    H_Q = graded(cyclic_group(2), 4)
    predicted = predict_coprime_extension(spec, H_Q, 4)
    assert predicted.degrees == ((0,), (), (2,), (), (2, 3))
    assert predicted == graded(s3, 4)


def test_predict_trivial_action_agrees_with_kunneth():
    spec = CoprimeExtensionSpec(3, cyclic_group(2), 1)
    H_Q = graded(cyclic_group(2), 6)
    predicted = predict_coprime_extension(spec, H_Q, 6)
    assert predicted == kunneth(graded(cyclic_group(3), 6), H_Q, 6)
    assert predicted == graded(cyclic_group(6), 6)


def test_coprime_spec_validation():
    with pytest.raises(ValueError):
        CoprimeExtensionSpec(2, cyclic_group(2), 1)  # orders not coprime
    with pytest.raises(ValueError):
        CoprimeExtensionSpec(9, cyclic_group(2), 3)  # character not a unit
    spec = CoprimeExtensionSpec(3, cyclic_group(2), 5)
    assert spec.action_character == 2


def test_predict_needs_enough_input_degrees():
    spec = CoprimeExtensionSpec(3, cyclic_group(2), 2)
    with pytest.raises(ValueError):
        predict_coprime_extension(spec, graded(cyclic_group(2), 2), 3)


# ------------------------------------------------------- coefficient bookkeeping


@pytest.mark.parametrize("k", [2, 3, 4, 6, 12])
def test_uct_orders_cyclic_six(k):
    G = cyclic_group(6)
    res = extend_resolution(G, 5)
    integral = cohomology_groups(G, 4, resolution=res)
    modular = cohomology_groups(G, 3, CoefficientSpec.modulo(k), resolution=res)
    rows = uct_order_check(integral, modular, k, 3)
    assert [r["degree"] for r in rows] == [0, 1, 2, 3]
    assert all(r["ok"] for r in rows)
    assert all(r["modular_order"] == r["tensor_order"] * r["tor_order"]
               for r in rows)


@pytest.mark.parametrize("k", [2, 3])
def test_uct_orders_nonabelian(s3, s3_res, k):
    integral = cohomology_groups(s3, 4, resolution=s3_res)
    modular = cohomology_groups(s3, 3, CoefficientSpec.modulo(k),
                                resolution=s3_res)
    assert all(r["ok"] for r in uct_order_check(integral, modular, k, 3))


def test_uct_degree_requirements():
    g2 = graded(cyclic_group(2), 2)
    with pytest.raises(ValueError):
        uct_order_check(g2, g2, 2, 2)  # integral not one degree past


# ------------------------------------------------------- reconstruction


def test_reconstruct_explicit_cases():
    assert reconstruct_abelian_group(
        ReconstructionProfile(2, 1, 32, (4,))
    ) == (2, 16)
    assert reconstruct_abelian_group(
        ReconstructionProfile(3, 2, 243, (27, 243))
    ) == (3, 9, 9)
    assert reconstruct_abelian_group(
        ReconstructionProfile(3, 0, 3, ())
    ) == (3,)
    assert reconstruct_abelian_group(
        ReconstructionProfile(2, 0, 1, ())
    ) == ()
    assert reconstruct_abelian_group(
        ReconstructionProfile(5, 2, 25, (25, 25))
    ) == (5, 5)


def _partitions(total, largest=None):
    if total == 0:
        yield ()
        return
    cap = total if largest is None else min(largest, total)
    for first in range(cap, 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


@pytest.mark.parametrize("p", [2, 3])
def test_reconstruct_round_trip(p):
    for total in range(8):
        for part in _partitions(total):
            for m in range(4):
                if sum(1 for e in part if e > m) > 1:
                    continue
                A = tuple(sorted(p ** e for e in part))
                assert reconstruct_abelian_group(tensor_profile(A, p, m)) == A


def test_tensor_profile_values():
    prof = tensor_profile((2, 16), 2, 1)
    assert prof.total_order == 32
    assert prof.tensor_orders == (4,)
    prof = tensor_profile((3, 9, 9), 3, 2)
    assert prof.tensor_orders == (27, 243)


def test_tensor_profile_rejects_bad_input():
    with pytest.raises(ValueError):
        tensor_profile((6,), 2, 1)  # not a 2-power
    with pytest.raises(ValueError):
        tensor_profile((2, 2), 2, 0)  # p^0 A not cyclic
    with pytest.raises(ValueError):
        tensor_profile((4, 4), 2, 1)  # p^1 A not cyclic
    with pytest.raises(ValueError):
        tensor_profile((3,), 4, 1)  # p not prime


def test_profile_validation():
    with pytest.raises(ValueError):
        ReconstructionProfile(4, 1, 16, (4,))  # p not prime
    with pytest.raises(InconsistentProfile):
        ReconstructionProfile(2, 1, 32, ())  # missing tensor order
    with pytest.raises(InconsistentProfile):
        ReconstructionProfile(2, 1, 12, (2,))  # total not a 2-power
    with pytest.raises(InconsistentProfile):
        ReconstructionProfile(2, 2, 8, (4, 2))  # decreasing
    with pytest.raises(InconsistentProfile):
        ReconstructionProfile(2, 1, 8, (16,))  # tensor exceeds total


def test_reconstruct_rejects_unrealizable_profiles():
    with pytest.raises(InconsistentProfile):
        # ratios say two summands of order >= 4 but only one of order >= 2
        reconstruct_abelian_group(ReconstructionProfile(2, 2, 16, (2, 8)))
    with pytest.raises(InconsistentProfile):
        # no summand reaches p^m yet order is left over
        reconstruct_abelian_group(ReconstructionProfile(2, 2, 8, (2, 2)))


# ------------------------------------------------------- torsion bound


def test_torsion_bound_passes_on_cyclic():
    g = graded(cyclic_group(3), 6)
    report = check_torsion_bound(g, TorsionBoundSpec(3, 1))
    assert report.passed
    assert report.bound == 9
    assert report.failures == ()


def test_torsion_bound_odd_degree_failure():
    g = GradedAbelianGroup(((0,), (5,), ()))
    report = check_torsion_bound(g, TorsionBoundSpec(3, 1))
    assert not report.passed
    assert report.failures[0][0] == 1


def test_torsion_bound_even_degree_noncyclic_failure():
    g = GradedAbelianGroup(((0,), (), (5, 5)))
    report = check_torsion_bound(g, TorsionBoundSpec(2, 1))
    assert not report.passed
    assert report.failures[0][0] == 2
    # a single surviving factor is still cyclic
    ok = check_torsion_bound(
        GradedAbelianGroup(((0,), (), (5,))), TorsionBoundSpec(2, 1)
    )
    assert ok.passed


def test_torsion_bound_kills_dividing_factors():
    g = GradedAbelianGroup(((0,), (3, 9), (9, 9)))
    report = check_torsion_bound(g, TorsionBoundSpec(3, 1))
    # bound 9 annihilates odd degree (3, 9); even degree (9, 9) is
    # wiped too, leaving nothing, which counts as cyclic
    assert report.passed


def test_torsion_bound_spec_validation():
    with pytest.raises(ValueError):
        TorsionBoundSpec(4, 1)
    with pytest.raises(ValueError):
        TorsionBoundSpec(3, -1)
