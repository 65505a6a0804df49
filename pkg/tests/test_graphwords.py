import pytest

from transfer import StepKind, floor_schedule, growth_exponent, step_matrix
from asympt import tilde_e
from words import BalanceSpec, count_balanced_dp, count_unconstrained
from graphwords import (
    TwoColoredGraph,
    conjecture_scan,
    count_balanced_paths,
    graph_growth,
    kron_transfer,
    load_graph,
    parse_graph,
    unconstrained_count,
    unconstrained_growth,
)

TWO_VERTEX = """\
# 两个顶点，每种颜色若干条边
2
0 0 0
0 1 1
1 0 0
1 1 1 2
"""


def brute_force_paths(g, n, p, nper, r):
    """逐条枚举边序列，检查每个前缀的偏差"""
    spec = BalanceSpec(p, nper, r)
    edges = list(g.edges())

    def walk(v, k, zeros):
        if k == n:
            return 1
        total = 0
        for u, w, color, mult in edges:
            if u != v:
                continue
            z = zeros + (color == 0)
            d = z - spec.floor_at(k + 1)
            if -r < d <= r:
                total += mult * walk(w, k + 1, z)
        return total

    return sum(walk(v, 0, 0) for v in range(g.vertices))


def test_parse_graph():
    g = parse_graph(TWO_VERTEX)
    assert g.vertices == 2
    assert g.a1.tolist() == [[1, 0], [1, 0]]
    assert g.a2.tolist() == [[0, 1], [0, 2]]
    assert parse_graph(g.to_text()).incidence.tolist() == g.incidence.tolist()


def test_parse_graph_accumulates_multiplicity():
    g = parse_graph("1\n0 0 0\n0 0 0 3\n")
    assert g.a1.tolist() == [[4]]


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("x\n", 1),
        ("2\n0 1\n", 2),
        ("2\n0 2 0\n", 2),
        ("2\n\n0 1 5\n", 3),
        ("2\n0 1 0 0\n", 2),
    ],
)
def test_parse_graph_errors_name_line(text, lineno):
    with pytest.raises(ValueError, match=f"第 {lineno} 行"):
        parse_graph(text)


def test_parse_graph_empty():
    with pytest.raises(ValueError):
        parse_graph("# 只有注释\n")


def test_load_graph(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(TWO_VERTEX, encoding="utf-8")
    assert load_graph(path).incidence.tolist() == [[1, 1], [1, 2]]


@pytest.mark.parametrize("p, nper", [(1, 2), (1, 3), (2, 5)])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_single_vertex_reduces_to_words(p, nper, r):
    g = TwoColoredGraph.single_vertex()
    spec = BalanceSpec(p, nper, r)
    for n in range(17):
        assert count_balanced_paths(g, n, p, nper, r).by_deviation() == count_balanced_dp(n, spec).b


def test_single_vertex_kron_equals_step_matrix():
    g = TwoColoredGraph.single_vertex()
    for kind in StepKind:
        assert kron_transfer(g, 3, kind).tolist() == step_matrix(kind, 3).tolist()


@pytest.mark.parametrize("p, nper, r", [(1, 2, 1), (1, 2, 4), (2, 5, 3)])
def test_single_vertex_growth(p, nper, r):
    g = TwoColoredGraph.single_vertex()
    assert graph_growth(g, p, nper, r).value == pytest.approx(growth_exponent(p, nper, r).e_alpha_r, rel=1e-9)


def test_no_zero_edges_dies_out():
    g = TwoColoredGraph.from_matrices([[0]], [[1]])
    assert count_balanced_paths(g, 1, 1, 2, 1).total == 1
    assert count_balanced_paths(g, 2, 1, 2, 1).total == 0


def test_dp_step_is_kron_multiplication():
    g = parse_graph(TWO_VERTEX)
    p, nper, r = 1, 2, 2
    schedule = floor_schedule(p, nper)
    state = count_balanced_paths(g, 0, p, nper, r).state_vector()
    for k in range(1, 3 * nper + 1):
        m = kron_transfer(g, r, schedule[(k - 1) % nper])
        state = [int(v) for v in m.dot(state)]
        assert state == count_balanced_paths(g, k, p, nper, r).state_vector()


@pytest.mark.parametrize("r", [1, 2])
def test_dp_matches_brute_force(r):
    g = parse_graph(TWO_VERTEX)
    for n in range(13):
        assert count_balanced_paths(g, n, 1, 2, r).total == brute_force_paths(g, n, 1, 2, r)


def test_dp_matches_brute_force_three_vertices():
    g = TwoColoredGraph.from_matrices(
        [[0, 1, 0], [0, 0, 2], [1, 0, 0]],
        [[1, 0, 1], [1, 0, 0], [0, 1, 1]],
    )
    for n in range(11):
        assert count_balanced_paths(g, n, 2, 5, 2).total == brute_force_paths(g, n, 2, 5, 2)


def test_start_vertices_validated():
    g = parse_graph(TWO_VERTEX)
    assert count_balanced_paths(g, 4, 1, 2, 1, start=[0]).total <= count_balanced_paths(g, 4, 1, 2, 1).total
    with pytest.raises(ValueError):
        count_balanced_paths(g, 4, 1, 2, 1, start=[5])


def test_graph_growth_nondecreasing_in_r():
    g = parse_graph(TWO_VERTEX)
    values = [graph_growth(g, 1, 2, r).value for r in range(1, 7)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_unconstrained_count_single_vertex():
    g = TwoColoredGraph.single_vertex()
    spec = BalanceSpec(1, 2, 1)
    for n in (4, 10, 17):
        assert unconstrained_count(g, n, 1, 2) == count_unconstrained(n, spec)


def test_unconstrained_growth_single_vertex():
    g = TwoColoredGraph.single_vertex()
    assert unconstrained_growth(g, 1, 2) == pytest.approx(tilde_e(0.5), abs=1e-2)


def test_conjecture_scan_words_case():
    rows = conjecture_scan(TwoColoredGraph.single_vertex(), 1, 2, [1, 2, 4, 8, 16])
    growth = [row.e_alpha_r for row in rows]
    assert growth == sorted(growth)
    assert len({row.tilde_e for row in rows}) == 1
    assert rows[-1].gap < rows[0].gap
