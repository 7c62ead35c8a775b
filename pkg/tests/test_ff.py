import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defring_audit.acceptance import cofactor_charpoly
from defring_audit.ff import (
    MatrixFF,
    PolyFF,
    ScanBudgetExceeded,
    block_diag,
    charpoly,
    eigenvalues_in_splitting_field,
    embed_field,
    is_unipotent,
    kernel_dim,
    mat_rank,
    mk_field,
    nilpotent_block,
)

F2 = mk_field(2)
F3 = mk_field(3)
F5 = mk_field(5)
F101 = mk_field(101)


# ---------------------------------------------------------------------------
# field construction
# ---------------------------------------------------------------------------


def test_prime_field_modulus_is_t():
    assert mk_field(5).modulus == (0, 1)


def test_f4_modulus_is_the_unique_irreducible_quadratic():
    # oracle: a monic quadratic over F_2 is reducible iff it has a root
    candidates = []
    for c0 in range(2):
        for c1 in range(2):
            if all((x * x + c1 * x + c0) % 2 != 0 for x in range(2)):
                candidates.append((c0, c1, 1))
    assert candidates == [(1, 1, 1)]
    assert mk_field(2, 2).modulus == (1, 1, 1)


def test_modulus_is_lex_smallest_for_f8():
    # oracle: cubics over F_2 are reducible iff they have a root; compare
    # coefficient vectors constant term first
    irreducible = []
    for c0 in range(2):
        for c1 in range(2):
            for c2 in range(2):
                if all((x**3 + c2 * x * x + c1 * x + c0) % 2 != 0 for x in range(2)):
                    irreducible.append((c0, c1, c2, 1))
    assert mk_field(2, 3).modulus == min(irreducible)


def test_mk_field_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        mk_field(4, 1)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3)])
def test_small_extension_field_axioms_exhaustively(p, m):
    f = mk_field(p, m)
    els = list(f.elements())
    one = 1
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, one) == a
        assert f.add(a, f.neg(a)) == 0
        if a != 0:
            assert f.mul(a, f.inv(a)) == one
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_generator_satisfies_modulus():
    f = mk_field(3, 2)
    t = f.encode((0, 1))
    val = 0
    for c in reversed(f.modulus):
        val = f.add(f.mul(val, t), c)
    assert val == 0


# ---------------------------------------------------------------------------
# rank and kernels
# ---------------------------------------------------------------------------


def test_rank_identity_and_zero():
    assert mat_rank(MatrixFF.identity(F5, 3)) == 3
    assert mat_rank(MatrixFF.zeros(F3, 2, 4)) == 0


def test_rank_of_nilpotent_block():
    # hand row-reduction of the 3x3 superdiagonal block leaves two pivots
    assert mat_rank(nilpotent_block(F5, 3)) == 2


def test_kernel_dims_of_block_powers():
    b3 = nilpotent_block(F5, 3)
    assert kernel_dim(b3) == 1
    assert kernel_dim(b3 * b3) == 2
    assert kernel_dim(MatrixFF.zeros(F5, 3, 3)) == 3


@pytest.mark.parametrize("field", [F2, F5, F101])
def test_kernel_formula_min_i_m(field):
    for m in range(1, 9):
        block = nilpotent_block(field, m)
        for i in range(0, 11):
            assert kernel_dim(block.matpow(i)) == min(i, m)


def _matrices(field, max_dim=5):
    dims = st.tuples(st.integers(1, max_dim), st.integers(1, max_dim))
    return dims.flatmap(
        lambda rc: st.lists(
            st.integers(0, field.order - 1),
            min_size=rc[0] * rc[1],
            max_size=rc[0] * rc[1],
        ).map(lambda es: MatrixFF(field, rc[0], rc[1], es))
    )


@settings(max_examples=80)
@given(_matrices(F5))
def test_rank_equals_rank_of_transpose(M):
    assert mat_rank(M) == mat_rank(M.transpose())


@settings(max_examples=80)
@given(_matrices(F3))
def test_rank_nullity(M):
    assert kernel_dim(M) + mat_rank(M) == M.cols


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------


def test_charpoly_of_nilpotent_block_is_t_cubed():
    assert charpoly(nilpotent_block(F5, 3)).coeffs == (0, 0, 0, 1)


def test_charpoly_of_diag_1_2_over_f5():
    M = MatrixFF.from_rows(F5, [[1, 0], [0, 2]])
    # (T-1)(T-2) = T^2 - 3T + 2 = T^2 + 2T + 2 mod 5
    assert charpoly(M).coeffs == (2, 2, 1)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_charpoly_of_identity_is_t_minus_one_power(n):
    f = F5
    target = PolyFF(f, (f.neg(1), 1)) ** n
    assert charpoly(MatrixFF.identity(f, n)) == target


def test_charpoly_matches_cofactor_oracle_exhaustively_2x2():
    for field in (F2, F3):
        q = field.order
        for code in range(q**4):
            es = [(code // q**i) % q for i in range(4)]
            M = MatrixFF(field, 2, 2, es)
            assert charpoly(M) == cofactor_charpoly(M)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(3, 5),
    st.sampled_from([F2, F3]),
    st.data(),
)
def test_charpoly_matches_cofactor_oracle_random(n, field, data):
    es = data.draw(
        st.lists(st.integers(0, field.order - 1), min_size=n * n, max_size=n * n)
    )
    M = MatrixFF(field, n, n, es)
    assert charpoly(M) == cofactor_charpoly(M)


def test_charpoly_rejects_non_square():
    with pytest.raises(ValueError):
        charpoly(MatrixFF.zeros(F5, 2, 3))


# ---------------------------------------------------------------------------
# eigenvalues in splitting extensions
# ---------------------------------------------------------------------------


def test_eigenvalues_of_diagonal_matrix():
    M = MatrixFF.from_rows(F5, [[1, 0], [0, 2]])
    field, roots = eigenvalues_in_splitting_field(M)
    assert field == F5
    assert sorted(roots) == [1, 2]


def test_eigenvalues_of_nilpotent_block():
    field, roots = eigenvalues_in_splitting_field(nilpotent_block(F3, 2))
    assert field == F3
    assert roots == (0, 0)


def test_eigenvalues_of_companion_need_f9():
    # companion matrix of T^2 + 1, irreducible over F_3
    M = MatrixFF.from_rows(F3, [[0, 2], [1, 0]])
    field, roots = eigenvalues_in_splitting_field(M)
    assert field.order == 9
    emb = embed_field(F3, field)
    minus_one = emb(2)
    assert len(roots) == 2
    for z in roots:
        assert field.mul(z, z) == minus_one


@pytest.mark.parametrize(
    "rows,field",
    [
        ([[1, 0], [0, 2]], F5),
        ([[0, 2], [1, 0]], F3),
        ([[1, 1, 0], [0, 1, 1], [0, 0, 1]], F2),
    ],
)
def test_product_of_linear_factors_recovers_charpoly(rows, field):
    M = MatrixFF.from_rows(field, rows)
    ext, roots = eigenvalues_in_splitting_field(M)
    emb = embed_field(field, ext)
    lifted = PolyFF(ext, tuple(emb(c) for c in charpoly(M).coeffs))
    product = PolyFF(ext, (1,))
    for z in roots:
        product = product * PolyFF(ext, (ext.neg(z), 1))
    assert product == lifted


def test_eigenvalues_over_extension_base_field():
    # base field F_4; companion of an irreducible quadratic splits in F_16
    f4 = mk_field(2, 2)

    def has_root(b, c):
        return any(
            f4.add(f4.add(f4.mul(x, x), f4.mul(b, x)), c) == 0 for x in f4.elements()
        )

    b, c = next(
        (b, c) for b in f4.elements() for c in f4.elements() if not has_root(b, c)
    )
    M = MatrixFF.from_rows(f4, [[0, f4.neg(c)], [1, f4.neg(b)]])
    ext, roots = eigenvalues_in_splitting_field(M)
    assert ext.order == 16 and len(roots) == 2
    emb = embed_field(f4, ext)
    lifted = PolyFF(ext, tuple(emb(x) for x in charpoly(M).coeffs))
    assert all(lifted.evaluate(z) == 0 for z in roots)


def test_scan_budget_error_is_explicit():
    # T^2 - 2 is irreducible over F_101 (2 is a non-residue mod 101),
    # so the roots live in a field of 10201 elements
    M = MatrixFF.from_rows(F101, [[0, 2], [1, 0]])
    with pytest.raises(ScanBudgetExceeded):
        eigenvalues_in_splitting_field(M, budget=5000)
    field, roots = eigenvalues_in_splitting_field(M, budget=11000)
    assert field.order == 101**2 and len(roots) == 2


# ---------------------------------------------------------------------------
# block assembly and unipotence
# ---------------------------------------------------------------------------


def test_block_diag_of_b3_and_b1():
    M = block_diag([nilpotent_block(F5, 3), nilpotent_block(F5, 1)])
    assert M.rows == 4
    expect = [
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ]
    assert M.to_lists() == expect


def test_block_diag_empty_is_0x0():
    M = block_diag([], field=F5)
    assert (M.rows, M.cols) == (0, 0)


def test_block_diag_of_identities():
    M = block_diag([MatrixFF.identity(F5, 2), MatrixFF.identity(F5, 1)])
    assert M == MatrixFF.identity(F5, 3)


def test_block_diag_rejects_mixed_fields():
    with pytest.raises(ValueError):
        block_diag([MatrixFF.identity(F5, 1), MatrixFF.identity(F3, 1)])


def test_is_unipotent():
    assert is_unipotent(MatrixFF.identity(F5, 3) + nilpotent_block(F5, 3))
    assert not is_unipotent(MatrixFF.from_rows(F5, [[1, 0], [0, 2]]))
    from defring_audit.partitions import Partition, nabla_matrix

    assert is_unipotent(nabla_matrix(Partition((2, 2)), mk_field(7)))
