"""The classification oracle, witness ideals, and bounded searches."""

import itertools
import random

import pytest

from fuchslab import (
    BudgetExceededError,
    GroupSpec,
    GroupSyntaxError,
    InfiniteGroupError,
    NotRealizableError,
    Reason,
    a24_ideal,
    bounded_ideal_search,
    canonicalize,
    chain_ring_ideals,
    classify,
    construct_witness,
    fully_realizes,
    group_algebra,
    kgproduct_ambient,
    kgproduct_embeddings,
    kgproduct_ideal,
    parse_group,
    quotient,
    ring_from_recipe,
    star_ideal,
    sumc2_ideal,
    unit_group_invariants,
)
from fuchslab.constructions import _pair_vector, _vec
from fuchslab.groups import add_elements, elements, identity_element


# --- classification oracle -------------------------------------------------

CLASSIFY_CASES = [
    ("C2^5 x C4 x C3", True, Reason.THM11_TORSION, "a24xC3(rank=5,c4=true)"),
    ("C9", False, Reason.THM11_ODD, None),
    ("Cinf x C3", False, Reason.C3_SUMMAND_OBSTRUCTION, None),
    ("C4 x C4", False, Reason.C4_QUOTIENT_OBSTRUCTION, None),
    ("Cinf^3 x C2", True, Reason.THM11_FG, "symbolic:sumc2xLaurent(rank=1,n=3)"),
    ("C16", False, Reason.NOT_REALIZABLE_CHAR2, None),
    ("C3 x C3", False, Reason.THM11_ODD, None),
    ("C12", True, Reason.THM11_TORSION, "a24xC3(rank=0,c4=true)"),
    ("C3", True, Reason.THM11_ODD, "a24xC3(rank=0,c4=false)"),
    ("C1", True, Reason.THM11_TORSION, "a24(rank=0,c4=false)"),
    ("Cinf^2", True, Reason.THM11_TORSION_FREE, "symbolic:sumc2xLaurent(rank=0,n=2)"),
    ("C10", False, Reason.P_N_BOUND, None),
    ("C2 x C9", False, Reason.P_N_BOUND, None),
    ("C4 x C4 x C3", False, Reason.C4_QUOTIENT_OBSTRUCTION, None),
    ("C3 x C12", False, Reason.C3_SUMMAND_OBSTRUCTION, None),
    ("Cinf x C4", False, Reason.C4_QUOTIENT_OBSTRUCTION, None),
    ("Cinf x C9", False, Reason.P_N_BOUND, None),
    ("C24", False, Reason.NOT_REALIZABLE_CHAR2, None),
    ("C6 x C6", False, Reason.C3_SUMMAND_OBSTRUCTION, None),
]


@pytest.mark.parametrize("text,expected,reason,recipe", CLASSIFY_CASES)
def test_classify_cases(text, expected, reason, recipe):
    verdict = classify(parse_group(text))
    assert verdict.fully_realizable == expected
    assert verdict.reason == reason
    assert verdict.recipe == recipe


def test_classify_cyclic_sweep():
    positives = [
        n for n in range(1, 101)
        if classify(GroupSpec((n,) if n > 1 else ())).fully_realizable
    ]
    assert positives == [1, 2, 3, 4, 6, 12]


def test_classify_invariant_under_presentation():
    for orders in [(4, 3), (3, 4), (12,), (2, 2, 3), (3, 2, 2)]:
        assert classify(GroupSpec(orders)) == classify(canonicalize(GroupSpec(orders)))


# --- explicit ideals ---------------------------------------------------------

def test_sumc2_small_ranks():
    assert sumc2_ideal(0).dim == 0
    assert sumc2_ideal(1).dim == 0
    two = sumc2_ideal(2)
    assert two.dim == 1
    q = quotient(GroupSpec((2, 2)), two)
    assert q.dim == 3 and len(q.unit_elements) == 4


def test_sumc2_subset_identity_rank_3():
    # x_J = sum of x_a over J, plus |J| + 1, holds in the quotient
    spec = GroupSpec((2, 2, 2))
    ideal = sumc2_ideal(3)
    for size in range(4):
        for subset in itertools.combinations(range(3), size):
            x_j = tuple(1 if t in subset else 0 for t in range(3))
            acc = _vec(spec, x_j)
            for a in subset:
                acc ^= _vec(spec, tuple(1 if t == a else 0 for t in range(3)))
            if (len(subset) + 1) & 1:
                acc ^= _vec(spec, (0, 0, 0))
            assert ideal.contains(acc)


def test_sumc2_budget():
    with pytest.raises(BudgetExceededError):
        sumc2_ideal(6)


def test_a24_examples():
    chain = a24_ideal(0, True)
    assert chain.rref_basis == (0b1111,)
    spec = GroupSpec((2, 4))
    q = quotient(spec, a24_ideal(1, True))
    assert q.dim == 4
    rep = fully_realizes(q, spec)
    assert rep.fully_realizes and rep.total_endos == 32
    assert a24_ideal(2, False).rref_basis == sumc2_ideal(2).rref_basis


def test_a24_budget():
    with pytest.raises(BudgetExceededError):
        a24_ideal(4, True)


def test_star_example_generator():
    # rank 1 with C4: the length-2 tuple (x, y^2) contributes xy^2 + x + y^2 + 1
    spec = GroupSpec((2, 4))
    star = star_ideal(1, True)
    x, y2 = (1, 0), (0, 2)
    assert star.contains(_pair_vector(spec, x, y2))


@pytest.mark.parametrize("rank", [0, 1, 2])
@pytest.mark.parametrize("with_c4", [False, True])
def test_star_equals_a24(rank, with_c4):
    assert star_ideal(rank, with_c4).rref_basis == a24_ideal(rank, with_c4).rref_basis


def test_star_without_c4_is_sumc2_rank_3():
    assert star_ideal(3, False).rref_basis == sumc2_ideal(3).rref_basis


# --- the product construction ------------------------------------------------

def test_kgproduct_c2_c3():
    parts = (GroupSpec((2,)), GroupSpec((3,)))
    ambient = kgproduct_ambient(parts)
    assert ambient == GroupSpec((6,))
    ideal = kgproduct_ideal(parts)
    assert ideal.dim == 2
    q = quotient(ambient, ideal)
    assert q.dim == 4
    assert q.unit_group_invariants() == (6,)


def test_kgproduct_matches_kernel_of_product_map():
    # independent route: the kernel of F2[C6] -> F2[C2] x F2[C3]
    from fuchslab import present_over, product_algebra, product_element

    parts = (GroupSpec((2,)), GroupSpec((3,)))
    comps = [group_algebra(parts[0]), group_algebra(parts[1])]
    target = product_algebra(comps)
    u = product_element(comps, [0b10, 0b010])
    q = present_over(GroupSpec((6,)), target, [u])
    assert q.ideal.rref_basis == kgproduct_ideal(parts).rref_basis


def test_kgproduct_c4_c3():
    parts = (GroupSpec((4,)), GroupSpec((3,)))
    ideal = kgproduct_ideal(parts)
    assert ideal.dim == 6
    q = quotient(kgproduct_ambient(parts), ideal)
    assert q.dim == 6
    assert q.unit_group_invariants() == (2, 12)  # units(F2[C4]) x units(F2[C3])


def test_kgproduct_unit_formula_on_small_pairs():
    small = [GroupSpec((2,)), GroupSpec((3,)), GroupSpec((4,))]
    for g1, g2 in itertools.product(small, repeat=2):
        ambient = kgproduct_ambient((g1, g2))
        q = quotient(ambient, kgproduct_ideal((g1, g2)))
        expected = canonicalize(GroupSpec(
            unit_group_invariants(group_algebra(g1))
            + unit_group_invariants(group_algebra(g2))
        )).finite_orders
        assert q.unit_group_invariants() == expected


@pytest.mark.parametrize("parts", [
    (GroupSpec((2,)), GroupSpec((3,))),
    (GroupSpec((4,)), GroupSpec((3,))),
    (GroupSpec((2,)), GroupSpec((2,)), GroupSpec((2,))),
    (GroupSpec((2,)), GroupSpec((3,)), GroupSpec((2,)), GroupSpec((3,))),
])
def test_kgproduct_contains_product_minus_sum(parts):
    rng = random.Random(99)
    ideal = kgproduct_ideal(parts)
    ambient, maps = kgproduct_embeddings(parts)
    n = len(parts)
    for _ in range(25):
        picks = [rng.choice(elements(part)) for part in parts]
        embedded = [maps[i][p] for i, p in enumerate(picks)]
        prod_elem = identity_element(ambient)
        acc = 0
        for e in embedded:
            prod_elem = add_elements(ambient, prod_elem, e)
            acc ^= _vec(ambient, e)
        acc ^= _vec(ambient, prod_elem)
        if (n + 1) & 1:
            acc ^= _vec(ambient, identity_element(ambient))
        assert ideal.contains(acc)


def test_kgproduct_single_part_is_zero_ideal():
    assert kgproduct_ideal((GroupSpec((4,)),)).dim == 0


def test_kgproduct_budget():
    with pytest.raises(BudgetExceededError):
        kgproduct_ideal((GroupSpec((16,)), GroupSpec((32,))))


# --- chain rings --------------------------------------------------------------

def test_chain_ring_ideal_counts():
    for k in (1, 2, 3, 4):
        assert len(chain_ring_ideals(k)) == 2**k + 1


def test_chain_ring_unit_sweep():
    from fuchslab.algebra import invariants_from_units, units_capped

    for k, expected_hits in ((2, [3]), (3, []), (4, [])):
        spec = GroupSpec((2**k,))
        hits = []
        for j, ideal in enumerate(chain_ring_ideals(k)):
            if ideal.contains(1):
                continue
            q = quotient(spec, ideal)
            unit_set = units_capped(q.quotient_algebra, 2**k)
            if unit_set is None:
                continue
            if invariants_from_units(q.quotient_algebra, unit_set) == (2**k,):
                hits.append(j)
        assert hits == expected_hits


def test_chain_ring_budget():
    with pytest.raises(BudgetExceededError):
        chain_ring_ideals(5)


# --- witnesses and recipes ------------------------------------------------------

@pytest.mark.parametrize("text,expected_dim", [
    ("C1", 1), ("C2", 2), ("C3", 3), ("C4", 3), ("C6", 4), ("C12", 5),
    ("C2^2 x C4", 5), ("C2 x C3", 4),
])
def test_construct_witness_positive(text, expected_dim):
    g = parse_group(text)
    q = construct_witness(g)
    assert q.dim == expected_dim
    assert fully_realizes(q, g).fully_realizes


def test_construct_witness_c4_is_the_chain_ring():
    q = construct_witness(GroupSpec((4,)))
    assert q.ideal.rref_basis == (0b1111,)


def test_construct_witness_matches_standalone_ideals():
    assert (
        construct_witness(GroupSpec((2, 2, 4))).ideal.rref_basis
        == a24_ideal(2, True).rref_basis
    )
    assert (
        construct_witness(GroupSpec((2, 2, 2))).ideal.rref_basis
        == sumc2_ideal(3).rref_basis
    )


def test_witness_agreement_at_orders_24_and_32():
    # classify positives above the default sweep bound, within the endo budget
    for text in ("C2 x C12", "C2^2 x C6", "C2^3 x C4"):
        g = parse_group(text)
        assert classify(g).fully_realizable
        rep = fully_realizes(construct_witness(g), g, max_endos=2 * 10**5)
        assert rep.fully_realizes


def test_construct_witness_rejections():
    with pytest.raises(NotRealizableError):
        construct_witness(GroupSpec((16,)))
    with pytest.raises(InfiniteGroupError):
        construct_witness(GroupSpec((2,), infinite_rank=1))
    with pytest.raises(BudgetExceededError):
        construct_witness(GroupSpec((2,) * 7), max_order=64)


def test_ring_from_recipe():
    spec, q = ring_from_recipe("a24(rank=2,c4=true)")
    assert spec == GroupSpec((2, 2, 4))
    assert q.dim == 5
    spec, q = ring_from_recipe("chain(k=2,j=3)")
    assert spec == GroupSpec((4,))
    assert q.unit_group_invariants() == (4,)
    spec, q = ring_from_recipe("a24xC3(rank=1,c4=false)")
    assert spec == GroupSpec((6,))
    for bad in ("bogus(1)", "a24(rank=two)", "chain(k=2,j=9)", "a24"):
        with pytest.raises((GroupSyntaxError, ValueError)):
            ring_from_recipe(bad)


def test_classify_recipes_materialize():
    for text in ("C2", "C4", "C6", "C12", "C2^2 x C4", "C2 x C2 x C3"):
        verdict = classify(parse_group(text))
        assert verdict.recipe is not None
        spec, q = ring_from_recipe(verdict.recipe)
        assert spec == verdict.group
        assert fully_realizes(q, spec).fully_realizes


# --- bounded searches ------------------------------------------------------------

def test_search_c4_chain_pool_exhaustive():
    report = bounded_ideal_search(parse_group("C4"), pool="chain", budget=64)
    assert report.exhaustive
    assert report.ideals_examined == 5
    assert report.fully_realizing_found == 1
    assert report.realizing_found == 1


def test_search_c4xc4_default_pool():
    report = bounded_ideal_search(parse_group("C4 x C4"), pool="default", budget=128)
    assert report.fully_realizing_found == 0
    assert not report.exhaustive
    assert report.ideals_examined > 0


def test_search_c3xc3_fieldprod_pool():
    report = bounded_ideal_search(parse_group("C3 x C3"), pool="fieldprod", budget=4096)
    assert report.fully_realizing_found == 0
    assert report.realizing_found > 0  # C3 x C3 is realizable, just not fully
    assert not report.exhaustive


def test_search_rejects_bad_input():
    with pytest.raises(BudgetExceededError):
        bounded_ideal_search(GroupSpec((2,) * 5))
    with pytest.raises(GroupSyntaxError):
        bounded_ideal_search(GroupSpec((4,)), pool="nonsense")
    with pytest.raises(GroupSyntaxError):
        bounded_ideal_search(GroupSpec((3, 3)), pool="chain")


def test_search_determinism():
    a = bounded_ideal_search(parse_group("C3 x C3"), pool="default", budget=64)
    b = bounded_ideal_search(parse_group("C3 x C3"), pool="default", budget=64)
    assert a == b
