import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from graphs_fixtures import CLONED_CIRCUIT4, frac_matrix, random_graph, random_reducible_graph
from lv_fixtures import (
    ARROW_VW, TRIANGLE, TRIANGLE_TO_ARROW, perturb, random_graph_morphism,
    random_linear_map, random_morphism_chain,
)
from lvgraphs import (
    GraphMap, LinearMap, are_isomorphic, aut_description,
    automorphisms_brute, block_map, casimir_basis, declone, declone_lv_morphism,
    declone_morphism, decloning_lvmap, glplus_sample, is_lv_morphism, km, lv_n0,
    lv_of_graph, lv_of_morphism, normal_form, poisson_condition_holds,
    preserves_hamiltonian, rank, vector_field,
)
from lvgraphs.errors import DimensionMismatch, NotLVMorphism, NotMorphism, NotSurjective, PreconditionFailed
from lvgraphs.graphs import new_graph

seeds = st.integers(0, 2**32 - 1)


def test_system_basics():
    s = lv_of_graph(km(6))
    assert s.dimension == 6
    assert s.bracket_coefficient("1", "2") == 1 and s.bracket_coefficient("2", "1") == -1
    assert lv_of_graph(new_graph([])).dimension == 0
    assert lv_of_graph(CLONED_CIRCUIT4).bracket_coefficient("s2", "t") == 1


def test_vector_field_examples():
    assert np.array_equal(vector_field(lv_of_graph(km(5)), np.ones(5)), np.zeros(5))
    assert np.array_equal(vector_field(lv_of_graph(lv_n0(5)), np.ones(5)), [4, 2, 0, -2, -4])
    assert np.array_equal(vector_field(lv_of_graph(km(3)), [1, 2, 3]), [-1, 4, -3])
    with pytest.raises(DimensionMismatch):
        vector_field(lv_of_graph(km(3)), [1, 2])


@given(seeds)
def test_vector_field_matches_bracket_definition(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 6), values=(-2, -1, 0, 1, "1/2"))
    x = np.array([rng.uniform(-2, 2) for _ in g.vertices])
    # xdot_s = {x_s, H} = sum_t a_st x_s x_t
    expected = [sum(float(g.a(s, t)) * x[i] * x[j] for j, t in enumerate(g.vertices)) for i, s in enumerate(g.vertices)]
    assert np.allclose(vector_field(lv_of_graph(g), x), expected, rtol=1e-14, atol=1e-14)


def test_rank_examples():
    assert rank(lv_of_graph(km(5))) == 4
    assert rank(lv_of_graph(km(6))) == 4
    assert rank(lv_of_graph(lv_n0(6))) == 6


def _span(vectors, n):
    return oracles.span_fingerprint([list(v) for v in vectors], n)


def test_casimir_examples():
    assert [c.exponents for c in casimir_basis(lv_of_graph(km(5)))] == [(1, 1, 1, 1, 1)]
    km6 = casimir_basis(lv_of_graph(km(6)))
    assert _span([c.exponents for c in km6], 6) == _span([(1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 1)], 6)
    assert [c.exponents for c in casimir_basis(lv_of_graph(lv_n0(5)))] == [(1, -1, 1, -1, 1)]
    assert casimir_basis(lv_of_graph(lv_n0(6))) == []


@given(seeds)
def test_casimirs_are_exact_nullspace(seed):
    rng = random.Random(seed)
    g = random_reducible_graph(rng)
    s = lv_of_graph(g)
    basis = casimir_basis(s)
    m = frac_matrix(g)
    assert len(basis) == s.dimension - oracles.rank(m) == s.dimension - rank(s)
    assert _span([c.exponents for c in basis], s.dimension) == oracles.nullspace_span(m, s.dimension)
    for c in basis:
        nz = next(e for e in c.exponents if e)
        assert nz > 0
        # the monomial is constant along the flow: its log-derivative sum_s alpha_s xdot_s / x_s vanishes
        x = np.array([rng.uniform(0.5, 1.5) for _ in g.vertices])
        assert abs(np.dot(c.exponents, vector_field(s, x) / x)) < 1e-12


def test_lv_morphism_examples():
    assert is_lv_morphism(TRIANGLE_TO_ARROW)
    assert is_lv_morphism(LinearMap.identity(lv_of_graph(km(6))))
    s = lv_of_graph(ARROW_VW)
    assert not is_lv_morphism(LinearMap(s, s, [[1, 0], [-1, 1]]))
    assert not preserves_hamiltonian(LinearMap(s, s, [[1, 0], [-1, 1]]))


def test_lv_of_morphism_examples():
    g = km(6)
    assert lv_of_morphism(GraphMap.identity(g)).matrix == LinearMap.identity(lv_of_graph(g)).matrix
    for m in automorphisms_brute(g).maps():
        b = lv_of_morphism(m).to_numpy()
        assert sorted(b.sum(axis=0)) == [1] * 6 and sorted(b.sum(axis=1)) == [1] * 6
    p = decloning_lvmap(CLONED_CIRCUIT4)
    assert p.to_numpy().tolist() == [
        [1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 1, 0], [0, 0, 0, 0, 0, 1],
    ]
    assert p.apply([1, 2, 3, 4, 5, 6]).tolist() == [3, 3, 9, 6]
    assert is_lv_morphism(p) and p.is_surjective()
    assert decloning_lvmap(km(6)).matrix == LinearMap.identity(lv_of_graph(km(6))).matrix
    with pytest.raises(NotMorphism):
        lv_of_morphism(GraphMap(g, g, {s: "1" for s in g.vertices}))


def test_poisson_condition_agrees_with_expansion_on_fixed_cases():
    phi = TRIANGLE_TO_ARROW
    assert oracles.poisson_defect(phi.domain.graph.matrix, phi.codomain.graph.matrix, phi.matrix) == {}


@given(seeds)
def test_poisson_condition_matches_oracle(seed):
    rng = random.Random(seed)
    phi = random_linear_map(rng) if rng.random() < 0.5 else perturb(lv_of_morphism(random_graph_morphism(rng)), rng)
    defect = oracles.poisson_defect(phi.domain.graph.matrix, phi.codomain.graph.matrix, phi.matrix)
    assert poisson_condition_holds(phi) == (not defect)


@given(seeds)
def test_functor_properties(seed):
    rng = random.Random(seed)
    m = random_graph_morphism(rng)
    assert is_lv_morphism(lv_of_morphism(m))
    m1, m2 = random_morphism_chain(rng)
    assert lv_of_morphism(m2 @ m1).matrix == (lv_of_morphism(m2) @ lv_of_morphism(m1)).matrix


def test_normal_form_examples():
    nf = normal_form(TRIANGLE_TO_ARROW)
    assert nf.parts == {"v": ("s", "t"), "w": ("u",)}
    s = lv_of_graph(km(5))
    assert set(normal_form(LinearMap.identity(s)).parts.values()) == {(v,) for v in s.labels}
    assert set(normal_form(decloning_lvmap(CLONED_CIRCUIT4)).parts.values()) == set(declone(CLONED_CIRCUIT4).classes)


def test_normal_form_preconditions():
    s = lv_of_graph(CLONED_CIRCUIT4)
    with pytest.raises(PreconditionFailed):
        normal_form(LinearMap.identity(s))  # codomain reducible
    a = lv_of_graph(ARROW_VW)
    with pytest.raises(PreconditionFailed):
        normal_form(LinearMap(a, a, [[1, 0], [-1, 1]]))


def test_declone_lv_morphism_examples():
    p = decloning_lvmap(CLONED_CIRCUIT4)
    q = lv_of_graph(declone(CLONED_CIRCUIT4).quotient)
    assert declone_lv_morphism(p).matrix == LinearMap.identity(q).matrix
    assert declone_lv_morphism(TRIANGLE_TO_ARROW).matrix == TRIANGLE_TO_ARROW.matrix
    for m in automorphisms_brute(CLONED_CIRCUIT4).maps():
        induced = declone_lv_morphism(lv_of_morphism(m))
        assert induced.matrix == lv_of_morphism(declone_morphism(m)).matrix
    with pytest.raises(NotLVMorphism):
        declone_lv_morphism(LinearMap(lv_of_graph(ARROW_VW), lv_of_graph(ARROW_VW), [[1, 0], [-1, 1]]))
    emb = LinearMap(lv_of_graph(ARROW_VW), lv_of_graph(TRIANGLE), [[1, 0], [0, 0], [0, 1]])
    assert is_lv_morphism(emb)
    with pytest.raises(NotSurjective):
        declone_lv_morphism(emb)


def _diagram_commutes(phi):
    under = declone_lv_morphism(phi)
    p, p2 = decloning_lvmap(phi.domain.graph), decloning_lvmap(phi.codomain.graph)
    return (under @ p).matrix == (p2 @ phi).matrix


@given(seeds)
def test_declone_square_for_graph_morphisms(seed):
    rng = random.Random(seed)
    m = random_graph_morphism(rng)
    if not m.is_surjective():
        m = GraphMap(m.domain, m.codomain.induced(set(m.mapping.values())), m.mapping)
    phi = lv_of_morphism(m)
    # mix in a GL+ automorphism of the domain so the map is not just 0/1
    phi = phi @ glplus_sample(m.domain, seed=rng.randrange(2**32))
    assert is_lv_morphism(phi) and phi.is_surjective()
    assert _diagram_commutes(phi)


def test_glplus_examples():
    s = lv_of_graph(km(5))
    assert glplus_sample(km(5), seed=1).matrix == LinearMap.identity(s).matrix
    phi = block_map(CLONED_CIRCUIT4, {"s1": [[2, 1], [-1, 0]]})
    assert is_lv_morphism(phi)
    for seed in range(5):
        g = glplus_sample(CLONED_CIRCUIT4, seed=seed)
        assert (g @ g.inverse()).matrix == LinearMap.identity(g.domain).matrix


@given(seeds)
def test_glplus_closure(seed):
    rng = random.Random(seed)
    g = random_reducible_graph(rng)
    a, b = glplus_sample(g, seed=rng.randrange(2**32)), glplus_sample(g, seed=rng.randrange(2**32))
    for phi in (a, b, a @ b, a.inverse(), b.inverse() @ a):
        assert is_lv_morphism(phi)
        assert oracles.poisson_defect(g.matrix, g.matrix, phi.matrix) == {}


def test_aut_description_examples():
    d = aut_description(km(6))
    assert d.glplus_block_sizes == (1,) * 6 and d.quotient_aut_order == 6 and d.is_finite
    d = aut_description(CLONED_CIRCUIT4)
    assert d.glplus_block_sizes == (2, 1, 2, 1) and d.quotient_aut_order == 2 and not d.is_finite
    assert d.graph_aut_order == automorphisms_brute(CLONED_CIRCUIT4).order
    d = aut_description(lv_n0(5))
    assert d.glplus_block_sizes == (1,) * 5 and d.quotient_aut_order == 1


@given(seeds)
def test_lv_isomorphism_iff_graph_isomorphism(seed):
    # every permutation matrix between the two systems is tried
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    g = random_graph(rng, n)
    h = random_graph(rng, n, prefix="w") if rng.random() < 0.5 else g.relabel({s: "w" + s for s in g.vertices})
    sg, sh = lv_of_graph(g), lv_of_graph(h)
    found = False
    for p in itertools.permutations(range(n)):
        rows = [[Fraction(int(p[j] == i)) for j in range(n)] for i in range(n)]
        if is_lv_morphism(LinearMap(sg, sh, rows)):
            found = True
            break
    assert found == (are_isomorphic(g, h) is not None)


def test_linear_map_json():
    assert TRIANGLE_TO_ARROW.to_json() == {"rows": [["1", "1", "0"], ["0", "0", "1"]]}
