import random
from fractions import Fraction
from itertools import combinations

import pytest

import oracles
from flagroots import (
    LieType,
    MetricVector,
    StructuralFamily,
    SupportError,
    TangentVector,
    compatibility_graph,
    enumerate_maximal_families,
    equigeodesic_residual,
    is_equigeodesic_all_metrics,
    is_structural_family,
    load_fixture,
    pair_compatible,
)

# F4 display labels used below (frozen from the fixture label map):
# b1^1=(0,1,1,0)  b6^1=(1,1,1,0)  b3^3=(0,0,1,1)  b1^3=(0,1,1,1)


def test_pair_compatible_examples(diagrams):
    pd = diagrams["F4_34"]
    assert pair_compatible(pd, (0, 1, 1, 0), (0, 0, 1, 1))      # b1^1 vs b3^3
    assert not pair_compatible(pd, (0, 1, 1, 0), (0, 1, 1, 1))  # b1^1 vs b1^3
    assert pair_compatible(pd, (0, 1, 1, 0), (0, 0, 1, 0))      # same module
    with pytest.raises(SupportError):
        pair_compatible(pd, (0, 1, 0, 0), (0, 0, 1, 0))


def test_structural_family_examples(diagrams):
    pd = diagrams["F4_34"]
    fam = StructuralFamily.from_roots(pd, [(0, 0, 1, 1), (0, 1, 1, 0), (1, 1, 1, 0)])
    assert is_structural_family(fam)
    single = StructuralFamily.from_roots(pd, [(0, 1, 1, 0)])
    assert is_structural_family(single)
    bad = StructuralFamily.from_roots(pd, [(0, 1, 1, 0), (0, 1, 1, 1)])
    assert not is_structural_family(bad)


def test_family_validation(diagrams):
    pd = diagrams["F4_34"]
    with pytest.raises(Exception):
        StructuralFamily.from_roots(pd, [])
    with pytest.raises(Exception):
        StructuralFamily(pd, frozenset({(2, pd.system.root((0, 0, 1, 0)))}))


def test_graph_shape(diagrams):
    g4 = compatibility_graph(diagrams["F4_34"])
    assert len(g4.vertices) == 21
    g8 = compatibility_graph(diagrams["E8_12"])
    assert len(g8.vertices) == 84
    # same-module vertices always form cliques
    for g in (g4, g8):
        bymod = {}
        for i, (k, _) in enumerate(g.vertices):
            bymod.setdefault(k, []).append(i)
        for verts in bymod.values():
            for i in verts:
                for j in verts:
                    if i != j:
                        assert g.adjacency[i] >> j & 1


def test_enumeration_f4_counts(diagrams):
    res = enumerate_maximal_families(diagrams["F4_34"])
    assert res.total == 39
    assert not res.truncated
    sizes = sorted(len(f.members) for f in res.families)
    assert sizes == [3] * 36 + [7] * 3


def test_enumeration_output_properties(diagrams, tables):
    pd = diagrams["E6_36"]
    res = enumerate_maximal_families(pd)
    roots_sets = [f.root_set() for f in res.families]
    graph = compatibility_graph(pd)
    vert_index = {tuple(r): i for i, (_, r) in enumerate(graph.vertices)}
    for f, rs in zip(res.families, roots_sets):
        assert is_structural_family(f)
        # maximality: no vertex outside extends the clique
        mask = 0
        for r in rs:
            mask |= 1 << vert_index[r]
        for v in range(len(graph.vertices)):
            if mask >> v & 1:
                continue
            assert (graph.adjacency[v] & mask) != mask
    # no family contains another
    for a, b in combinations(roots_sets, 2):
        assert not (a <= b or b <= a)


def test_enumeration_cap_flags_truncation(diagrams):
    res = enumerate_maximal_families(diagrams["F4_34"], cap=10)
    assert res.truncated and res.total == 39 and len(res.families) == 10
    res_all = enumerate_maximal_families(diagrams["F4_34"], cap=39)
    assert not res_all.truncated


def test_enumeration_min_modules_filter(diagrams):
    res3 = enumerate_maximal_families(diagrams["F4_34"], min_modules=3)
    assert all(len(f.modules()) >= 3 for f in res3.families)
    assert res3.total <= 39
    with pytest.raises(Exception):
        enumerate_maximal_families(diagrams["F4_34"], cap=-1)
    with pytest.raises(Exception):
        enumerate_maximal_families(diagrams["F4_34"], min_modules=0)


def test_family_json_schema(diagrams):
    from flagroots.equigeo import family_json
    import json as _json

    pd = diagrams["F4_34"]
    fam = StructuralFamily.from_roots(pd, [(0, 0, 1, 1), (0, 1, 1, 0)])
    doc = _json.loads(family_json(fam, structural=True, maximal=False))
    assert doc["schema_version"] == 1
    assert doc["structural"] is True and doc["maximal"] is False
    assert doc["members"] == [
        {"module": 1, "root_coeffs": [0, 1, 1, 0]},
        {"module": 3, "root_coeffs": [0, 0, 1, 1]},
    ]


def test_bk_matches_subset_scan_oracle(diagrams):
    # independent exhaustive check over all 2^21 subsets
    pd = diagrams["F4_34"]
    graph = compatibility_graph(pd)
    marks = oracles.maximal_cliques_subset_scan(list(graph.adjacency))
    res = enumerate_maximal_families(pd, min_modules=1)
    got = set()
    for f in res.families:
        mask = 0
        idx = {tuple(r): i for i, (_, r) in enumerate(graph.vertices)}
        for _, r in f.members:
            mask |= 1 << idx[tuple(r)]
        got.add(mask)
    assert got == set(marks)


def test_bk_matches_unpivoted_oracle(diagrams):
    for sid in ("F4_34", "E6_36"):
        graph = compatibility_graph(diagrams[sid])
        a = sorted(oracles.maximal_cliques_unpivoted(list(graph.adjacency)))
        res = enumerate_maximal_families(diagrams[sid], min_modules=1)
        idx = {tuple(r): i for i, (_, r) in enumerate(graph.vertices)}
        b = sorted(
            sum(1 << idx[tuple(r)] for _, r in f.members) for f in res.families
        )
        assert a == b


def test_bk_random_graphs_against_oracle():
    from flagroots.equigeo import _bron_kerbosch_pivot

    rng = random.Random(19)
    for _ in range(40):
        n = rng.randint(2, 13)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.45:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        assert sorted(_bron_kerbosch_pivot(adj, n)) == sorted(
            oracles.maximal_cliques_unpivoted(adj))


def test_residual_single_module_trivial(diagrams, tables):
    pd = diagrams["F4_34"]
    table = tables[LieType.F4]
    x = TangentVector.from_coefficients(
        pd,
        a={(0, 1, 1, 0): 3, (0, 0, 1, 0): Fraction(-1, 2)},
        b={(1, 1, 1, 0): 7},
    )
    for lam in [(1, 1, 1, 1, 1, 1), (1, 2, 3, 4, 5, 6), (Fraction(1, 3), 5, 2, 7, 1, 9)]:
        assert equigeodesic_residual(table, pd, x, MetricVector(lam)).is_zero()
    assert is_equigeodesic_all_metrics(table, pd, x)


def test_residual_structural_family_vanishes(diagrams, tables):
    # arbitrary rational combination over a reference family
    pd = diagrams["F4_34"]
    table = tables[LieType.F4]
    fx = load_fixture("F4_34")
    fam = fx.families[0]
    roots = fx.family_roots(fam)
    x = TangentVector.from_coefficients(
        pd,
        a={tuple(r): Fraction(3 * i - 7, 2) for i, r in enumerate(roots)},
        b={tuple(r): Fraction(2 * i + 1, 3) for i, r in enumerate(roots)},
    )
    assert is_equigeodesic_all_metrics(table, pd, x)
    rng = random.Random(23)
    for _ in range(25):
        lam = tuple(Fraction(rng.randint(1, 40), rng.randint(1, 6)) for _ in range(6))
        assert equigeodesic_residual(table, pd, x, MetricVector(lam)).is_zero()


def test_residual_incompatible_pair(diagrams, tables):
    # X = A_{b1^1} + A_{b1^3}: the surviving terms scale with l3 - l1.
    pd = diagrams["F4_34"]
    table = tables[LieType.F4]
    x = TangentVector.from_coefficients(pd, a={(0, 1, 1, 0): 1, (0, 1, 1, 1): 1})
    r = equigeodesic_residual(table, pd, x, MetricVector((1, 1, 2, 1, 1, 1)))
    assert not r.is_zero()
    # frozen from the bracket computation: components in m(2,1) and m(0,1)
    assert set(r.a) == {(0, 2, 2, 1), (0, 0, 0, 1)}
    assert not r.b and not any(r.cartan)
    base = {k: v for k, v in r.a.items()}
    # residual scales linearly in (l3 - l1)
    r5 = equigeodesic_residual(table, pd, x, MetricVector((1, 1, 6, 1, 1, 1)))
    assert r5.a == {k: 5 * v for k, v in base.items()}
    assert not is_equigeodesic_all_metrics(table, pd, x)


def test_residual_scaling_invariance(diagrams, tables):
    pd = diagrams["E6_36"]
    table = tables[LieType.E6]
    fx = load_fixture("E6_36")
    rng = random.Random(31)
    roots = [tuple(r) for r in pd.r_m_pos]
    for _ in range(30):
        support = rng.sample(roots, rng.randint(1, 5))
        x = TangentVector.from_coefficients(
            pd, a={r: rng.randint(1, 5) for r in support})
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        xc = TangentVector(pd, x.element * c)
        assert is_equigeodesic_all_metrics(table, pd, x) == is_equigeodesic_all_metrics(
            table, pd, xc)
        lam = MetricVector(tuple(rng.randint(1, 9) for _ in range(6)))
        assert equigeodesic_residual(table, pd, xc, lam) == (
            equigeodesic_residual(table, pd, x, lam) * (c * c))


def test_metric_validation():
    with pytest.raises(Exception):
        MetricVector((1, 2, 3, 4, 5, 0))
    with pytest.raises(Exception):
        MetricVector((1, 2, 3, 4, 5, Fraction(-1, 2)))
    m = MetricVector((1, 2, 3, 4, 5, Fraction(7, 2)))
    assert m[6] == Fraction(7, 2)


def test_tangent_vector_support_validation(diagrams):
    pd = diagrams["F4_34"]
    with pytest.raises(SupportError):
        TangentVector.from_coefficients(pd, a={(0, 1, 0, 0): 1})  # K-root
    from flagroots import AlgebraElement

    with pytest.raises(SupportError):
        TangentVector(pd, AlgebraElement.basis_h(pd.system, 0))


def test_criteria_equivalence_random_vectors(diagrams, tables):
    # all-metrics bracket test == sampled-metric residual test ==
    # polynomial identity, on mixed random supports
    for sid in ("F4_34", "E8_12"):
        pd = diagrams[sid]
        table = tables[pd.system.lie_type]
        roots = [tuple(r) for r in pd.r_m_pos]
        rng = random.Random(41)
        agree = 0
        for _ in range(60):
            support = rng.sample(roots, rng.randint(1, 5))
            a = {r: rng.choice([1, 2, -1, Fraction(1, 2)]) for r in support}
            b = {r: rng.choice([0, 1, -3]) for r in support}
            b = {r: c for r, c in b.items() if c}
            x = TangentVector.from_coefficients(pd, a=a, b=b)
            flag = is_equigeodesic_all_metrics(table, pd, x)
            sampled = all(
                equigeodesic_residual(
                    table, pd, x,
                    MetricVector(tuple(
                        Fraction(rng.randint(1, 97), rng.randint(1, 13))
                        for _ in range(6)))).is_zero()
                for _ in range(25)
            )
            ident = oracles.residual_vanishes_identically(table, pd, x)
            assert flag == sampled == ident
            agree += 1
        assert agree == 60


# Cancellation vectors: non-structural subsets where the all-ones
# vector is still equigeodesic (its brackets cancel without every
# structure constant vanishing).  Frozen from the exhaustive scan; such
# vectors are equigeodesic without spanning an equigeodesic subspace.
F4_ALL_ONES_CANCELLATIONS = {
    ((0, 0, 1, 0), (0, 2, 1, 0), (2, 2, 2, 1), (2, 4, 2, 1)),
    ((0, 0, 1, 0), (0, 2, 2, 1), (2, 2, 1, 0), (2, 4, 2, 1)),
    ((0, 0, 1, 1), (0, 2, 1, 1), (2, 2, 2, 1), (2, 4, 2, 1)),
    ((0, 0, 1, 1), (0, 2, 2, 1), (2, 2, 1, 1), (2, 4, 2, 1)),
}


def _sample_vectors(pd, subset, rng):
    yield TangentVector.from_coefficients(
        pd, a={r: 1 for r in subset}, b={r: 1 for r in subset})
    for _ in range(10):
        yield TangentVector.from_coefficients(
            pd,
            a={r: rng.choice([1, -1, 2, Fraction(1, 3)]) for r in subset},
            b={r: rng.choice([1, -2, Fraction(3, 2), 5]) for r in subset},
        )


def test_structural_iff_equigeodesic_f4_exhaustive(diagrams, tables):
    # exhaustive over F4 subsets of size <= 4: structural holds iff the
    # all-ones vector and 10 random coefficient vectors are all
    # equigeodesic.  Individual vectors may pass on non-structural
    # subsets (cancellation); those cases are surfaced and frozen.
    pd = diagrams["F4_34"]
    table = tables[LieType.F4]
    roots = [tuple(r) for r in pd.r_m_pos]
    rng = random.Random(43)
    surfaced = set()
    for size in (1, 2, 3, 4):
        for subset in combinations(roots, size):
            fam = StructuralFamily.from_roots(pd, subset)
            structural = is_structural_family(fam)
            if structural:
                for x in _sample_vectors(pd, subset, rng):
                    assert is_equigeodesic_all_metrics(table, pd, x), subset
            else:
                verdicts = [is_equigeodesic_all_metrics(table, pd, x)
                            for x in _sample_vectors(pd, subset, rng)]
                assert not all(verdicts), subset
                if verdicts[0]:
                    surfaced.add(subset)
    assert surfaced == F4_ALL_ONES_CANCELLATIONS


def test_structural_iff_equigeodesic_sampled_large(diagrams, tables):
    for sid in ("E6_36", "E7_56", "E8_12"):
        pd = diagrams[sid]
        table = tables[pd.system.lie_type]
        roots = [tuple(r) for r in pd.r_m_pos]
        rng = random.Random(47)
        for _ in range(150):
            subset = tuple(rng.sample(roots, rng.randint(1, 4)))
            structural = is_structural_family(
                StructuralFamily.from_roots(pd, subset))
            verdicts = [is_equigeodesic_all_metrics(table, pd, x)
                        for x in _sample_vectors(pd, subset, rng)]
            if structural:
                assert all(verdicts), (sid, subset)
            else:
                assert not all(verdicts), (sid, subset)
