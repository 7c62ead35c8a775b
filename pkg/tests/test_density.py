from fractions import Fraction

import pytest

from defring_audit.density import (
    FiniteGroup,
    SplitDensityProblem,
    all_subgroups,
    bound_certificate,
    build_group,
    cyclic_group,
    density,
    direct_product,
    e_exponent,
    elementary_abelian_2,
    is_subgroup,
    perm_index_from_cycles,
    subgroup_closure,
    symmetric_group,
    trivial_group,
    xi,
    xi_star,
)


# ---------------------------------------------------------------------------
# group construction
# ---------------------------------------------------------------------------


def test_constructor_orders():
    assert trivial_group().order == 1
    assert cyclic_group(2).order == 2
    assert symmetric_group(3).order == 6
    assert elementary_abelian_2(2).order == 4
    assert direct_product(symmetric_group(3), elementary_abelian_2(2)).order == 24


def test_build_group_specs():
    assert build_group("S3").order == 6
    assert build_group("Z2").order == 2
    assert build_group("Z/4").order == 4
    assert build_group("C5").order == 5
    assert build_group("trivial").order == 1
    assert build_group({"type": "elementary_abelian_2", "k": 3}).order == 8
    assert (
        build_group({"type": "product", "factors": ["S3", {"type": "cyclic", "n": 2}]}).order
        == 12
    )
    with pytest.raises(ValueError):
        build_group("Q8")


def test_order_budget():
    with pytest.raises(ValueError):
        symmetric_group(7)
    with pytest.raises(ValueError):
        direct_product(symmetric_group(6), cyclic_group(8))  # 5760 > 5040


def test_non_associative_table_rejected():
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    table[2][3] = 0  # was 1
    with pytest.raises(ValueError, match="associative"):
        FiniteGroup(table)


def test_table_without_identity_rejected():
    with pytest.raises(ValueError, match="identity"):
        FiniteGroup([[1, 1], [1, 1]])


def test_conjugacy_classes_of_s3():
    s3 = symmetric_group(3)
    sizes = sorted(len(c) for c in s3.conjugacy_classes())
    assert sizes == [1, 2, 3]


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


def test_subgroup_closure_and_validation():
    s3 = symmetric_group(3)
    i12 = perm_index_from_cycles(3, "(12)")
    i13 = perm_index_from_cycles(3, "(13)")
    h = subgroup_closure(s3, [i12])
    assert len(h) == 2 and is_subgroup(s3, h)
    assert len(subgroup_closure(s3, [i12, i13])) == 6
    assert not is_subgroup(s3, {s3.identity, i12, i13})


def test_all_subgroups_counts():
    assert len(all_subgroups(trivial_group())) == 1
    assert len(all_subgroups(cyclic_group(2))) == 2
    assert len(all_subgroups(cyclic_group(3))) == 2
    assert len(all_subgroups(symmetric_group(3))) == 6
    assert len(all_subgroups(symmetric_group(4))) == 30


def test_cycle_parsing():
    assert perm_index_from_cycles(3, "") == 0
    assert perm_index_from_cycles(3, "()") == 0
    i123 = perm_index_from_cycles(3, "(123)")
    s3 = symmetric_group(3)
    assert len(subgroup_closure(s3, [i123])) == 3
    with pytest.raises(ValueError):
        perm_index_from_cycles(3, "(14)")


def test_problem_validates_subgroup():
    s3 = symmetric_group(3)
    i12 = perm_index_from_cycles(3, "(12)")
    i13 = perm_index_from_cycles(3, "(13)")
    with pytest.raises(ValueError):
        SplitDensityProblem(s3, frozenset({s3.identity, i12, i13}), 1)
    with pytest.raises(ValueError):
        SplitDensityProblem(s3, frozenset({s3.identity}), 0)


# ---------------------------------------------------------------------------
# exponents and the splitting sets
# ---------------------------------------------------------------------------


def _trivial_problem(k=1):
    g = trivial_group()
    return SplitDensityProblem(g, frozenset({g.identity}), k)


def test_e_exponent_examples():
    p = _trivial_problem()
    assert e_exponent(p, (0, 0, 0)) == 1
    assert e_exponent(p, (0, 1, 0)) == 2
    assert e_exponent(p, (0, 0, 1)) == 1


def test_e_exponent_divides_group_order():
    s3 = symmetric_group(3)
    i12 = perm_index_from_cycles(3, "(12)")
    p = SplitDensityProblem(s3, subgroup_closure(s3, [i12]), 1)
    for g in p.elements():
        e = e_exponent(p, g)
        assert p.group_order % e == 0
        power = (p.gamma.identity, 0, 0)
        for _ in range(e):
            power = p.mul(power, g)
        assert power[1] == 0 and power[0] in p.subgroup


def test_xi_star_hand_enumeration():
    p = _trivial_problem()
    star = xi_star(p)
    assert star == {(0, 0, 0), (0, 1, 0), (0, 1, 1)}
    assert (0, 0, 1) not in star


def test_xi_equals_xi_star_for_abelian_gamma():
    for gamma in (trivial_group(), cyclic_group(2), cyclic_group(3), elementary_abelian_2(2)):
        for h in all_subgroups(gamma):
            p = SplitDensityProblem(gamma, h, 2)
            assert xi(p) == xi_star(p)


def test_xi_is_conjugation_closed():
    s3 = symmetric_group(3)
    i12 = perm_index_from_cycles(3, "(12)")
    p = SplitDensityProblem(s3, subgroup_closure(s3, [i12]), 1)
    xs = xi(p)
    for gam, om, de in xs:
        for u in s3.elements():
            conj = s3.mul(s3.mul(u, gam), s3.inv(u))
            assert (conj, om, de) in xs


def test_omega_nontrivial_elements_are_witnesses():
    s3 = symmetric_group(3)
    p = SplitDensityProblem(s3, frozenset({s3.identity}), 2)
    xs = xi(p)
    witnesses = [g for g in p.elements() if g[1] != 0]
    assert len(witnesses) == (2**2 - 1) * 2 * 6
    assert all(g in xs for g in witnesses)


# ---------------------------------------------------------------------------
# densities and the certificate
# ---------------------------------------------------------------------------


def test_density_spot_values():
    assert density(_trivial_problem()) == Fraction(3, 4)
    z2 = cyclic_group(2)
    assert density(SplitDensityProblem(z2, frozenset({z2.identity}), 1)) == Fraction(7, 8)


def test_bound_certificate_trivial():
    cert = bound_certificate(_trivial_problem())
    assert cert.witness_count == 2
    assert cert.density == Fraction(3, 4)
    assert cert.bound == Fraction(1, 2)
    assert cert.holds


def test_bound_certificate_s3_k2():
    s3 = symmetric_group(3)
    i12 = perm_index_from_cycles(3, "(12)")
    cert = bound_certificate(SplitDensityProblem(s3, subgroup_closure(s3, [i12]), 2))
    assert cert.witness_count == 3 * 2 * 6
    assert cert.holds
    assert cert.density >= Fraction(3, 4)


def test_bound_certificate_k3_trivial_gamma():
    cert = bound_certificate(_trivial_problem(k=3))
    assert cert.bound == Fraction(7, 8)
    assert cert.holds


def test_bound_holds_for_sampled_zoo():
    # the acceptance suite runs the full zoo; spot-check a slice here
    for gamma in (cyclic_group(3), symmetric_group(3)):
        for h in all_subgroups(gamma):
            for k in (1, 2):
                cert = bound_certificate(SplitDensityProblem(gamma, h, k))
                assert cert.holds
                assert cert.density >= 1 - Fraction(1, 2**k)
