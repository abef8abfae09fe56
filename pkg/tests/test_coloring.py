import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankcolor.coloring import (
    EdgeColoring,
    class_components,
    count_colors,
    dumps_coloring,
    loads_coloring,
    read_coloring,
    verify,
)
from rankcolor.errors import DomainError, ValidationError
from rankcolor.graph import edge_count, edge_endpoints, edge_index
from strategies import colorings


def brute_force_report(c: EdgeColoring):
    """Independent check straight from the definitions, via networkx."""
    classes = {}
    for e, col in enumerate(c.colors):
        classes.setdefault(col, []).append(edge_endpoints(e, c.n))
    components = {col: nx.number_connected_components(nx.Graph(edges)) for col, edges in classes.items()}
    touched = {col: {x for edge in edges for x in edge} for col, edges in classes.items()}
    uncovered = sorted(
        (a, b) for a in classes for b in classes if a < b and not (touched[a] & touched[b])
    )
    return components, uncovered


def test_fig1_left_is_complete_and_connected(fig1_left):
    report = verify(fig1_left)
    assert report.color_count == 4
    assert report.is_complete and report.is_connected
    assert count_colors(fig1_left) == 4


def test_fig1_right_has_one_uncovered_pair(fig1_right):
    report = verify(fig1_right)
    assert report.color_count == 5
    assert not report.is_complete
    assert report.is_connected
    assert report.uncovered_pairs == ((1, 2),)
    # the two uncovered classes are the disjoint edges 03 and 12
    classes = fig1_right.classes()
    assert classes[1] == [(0, 3)] and classes[2] == [(1, 2)]


def test_single_edge():
    report = verify(EdgeColoring(2, (0,), 1))
    assert report.used_colors == {0}
    assert report.is_complete and report.is_connected


def test_count_colors_examples():
    assert count_colors(EdgeColoring(6, (0,) * 15, 3)) == 1
    assert count_colors(EdgeColoring(3, (0, 1, 2), 3)) == 3


def _with_class(n, edges, rest_color=1):
    colors = [rest_color] * edge_count(n)
    for u, v in edges:
        colors[edge_index(u, v, n)] = 0
    return EdgeColoring(n, tuple(colors), 2)


def test_class_components_examples():
    assert class_components(_with_class(4, [(0, 1), (2, 3)]), 0) == 2
    assert class_components(_with_class(4, [(0, 1), (1, 2)]), 0) == 1
    c = _with_class(5, [(0, 1), (1, 2), (3, 4)])
    assert nx.number_connected_components(nx.Graph([(0, 1), (1, 2), (3, 4)])) == 2
    assert class_components(c, 0) == 2


def test_class_components_unused_color():
    with pytest.raises(DomainError):
        class_components(EdgeColoring(3, (0, 0, 0), 2), 1)


@pytest.mark.parametrize(
    "n, colors, k, where",
    [
        (4, (0, 0, 0), 2, "length"),
        (3, (0, 1, 2), 2, "colors[2]"),
        (3, (0, -1, 0), 2, "colors[1]"),
        (3, (0, 1.0, 0), 2, "colors[1]"),
        (3, (0, True, 0), 2, "colors[1]"),
    ],
)
def test_malformed_genotypes_name_the_problem(n, colors, k, where):
    with pytest.raises(ValidationError, match=where.replace("[", r"\[").replace("]", r"\]")):
        EdgeColoring(n, colors, k)


@settings(max_examples=300)
@given(colorings())
def test_verifier_matches_definitions(c):
    report = verify(c)
    components, uncovered = brute_force_report(c)
    assert dict(report.class_components) == components
    assert list(report.uncovered_pairs) == uncovered
    assert sum(report.class_sizes.values()) == edge_count(c.n)
    assert report.is_connected == all(k == 1 for k in components.values())
    assert report.is_complete == (not uncovered)
    assert verify(c) == report


@settings(max_examples=200)
@given(colorings(), st.randoms(use_true_random=False))
def test_label_permutation_invariance(c, rnd):
    labels = list(range(c.palette_size))
    rnd.shuffle(labels)
    d = EdgeColoring(c.n, tuple(labels[x] for x in c.colors), c.palette_size)
    a, b = verify(c), verify(d)
    assert (a.is_complete, a.is_connected, a.color_count) == (b.is_complete, b.is_connected, b.color_count)
    assert sorted(a.class_sizes.values()) == sorted(b.class_sizes.values())


@settings(max_examples=200)
@given(colorings(), st.randoms(use_true_random=False))
def test_vertex_permutation_invariance(c, rnd):
    perm = list(range(c.n))
    rnd.shuffle(perm)
    colors = [0] * len(c.colors)
    for e, col in enumerate(c.colors):
        u, v = sorted((perm[x] for x in edge_endpoints(e, c.n)))
        colors[edge_index(u, v, c.n)] = col
    d = EdgeColoring(c.n, tuple(colors), c.palette_size)
    assert (verify(c).is_complete, verify(c).is_connected) == (verify(d).is_complete, verify(d).is_connected)


def test_all_singletons_complete_only_when_edges_pairwise_meet():
    for n in range(2, 7):
        E = edge_count(n)
        report = verify(EdgeColoring(n, tuple(range(E)), E))
        pairwise_meet = all(
            set(edge_endpoints(a, n)) & set(edge_endpoints(b, n)) for a in range(E) for b in range(a + 1, E)
        )
        assert report.is_complete == pairwise_meet
        assert report.is_complete == (n <= 3)


def test_file_round_trip_is_bit_exact(tmp_path, fixtures_dir):
    for name in ("fig1_left.json", "fig1_right.json", "k2.json"):
        text = (fixtures_dir / name).read_text()
        c, meta = loads_coloring(text)
        assert dumps_coloring(c, meta) == text
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 12)
        k = rng.randint(1, 20)
        c = EdgeColoring(n, tuple(rng.randrange(k) for _ in range(edge_count(n))), k)
        meta = {"seed": rng.randrange(2**64), "generations": 7, "fitness": rng.random()}
        text = dumps_coloring(c, meta)
        assert loads_coloring(text) == (c, meta)
        assert dumps_coloring(*loads_coloring(text)) == text


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"n": 4, "palette_size": 4, "colors": [0, 0,', "line 1"),
        ("[1, 2]", "object"),
        ('{"n": 4, "colors": [0, 0, 0, 0, 0, 0]}', "palette_size"),
        ('{"n": 4, "palette_size": 2, "colors": [0, 0, 0, 0, 0, 2]}', r"colors\[5\]"),
        ('{"n": 4, "palette_size": 2, "colors": "000000"}', "array"),
    ],
)
def test_bad_files_are_reported(text, message):
    with pytest.raises(ValidationError, match=message):
        loads_coloring(text)


def test_truncated_fixture(fixtures_dir):
    with pytest.raises(ValidationError, match="invalid JSON"):
        read_coloring(fixtures_dir / "truncated.json")


def test_from_classes_builds_the_fig1_left_fixture(fig1_left):
    c = EdgeColoring.from_classes(4, [[(0, 1), (0, 2)], [(1, 2), (1, 3)], [(0, 3)], [(2, 3)]])
    assert c == fig1_left
    with pytest.raises(ValidationError):
        EdgeColoring.from_classes(3, [[(0, 1)], [(1, 0)], [(1, 2), (0, 2)]])
