import itertools

import pytest
from hypothesis import strategies as st

from latcount import make_hypergraph, validate

EX1 = ([[1, 1, 3], [1, 1, 1]], [5, 3])
EX2 = ([[1, 2], [2, 1]], [7, 5])


def bipartite_edges(p, q):
    """Edges of K_{p,q} on vertices 0..p-1 | p..p+q-1."""
    return [(u, p + v) for u in range(p) for v in range(q)]


def complete_bipartite(p, q, b=None, with_partition=False):
    partition = [range(p), range(p, p + q)] if with_partition else None
    return make_hypergraph(p + q, bipartite_edges(p, q), b=b, partition=partition)


def contingency_instance(row_sums, col_sums):
    """Tables with given margins as b-matchings of K_{r,c} (cell (i,j) = column i*c+j)."""
    r, c = len(row_sums), len(col_sums)
    A = [[0] * (r * c) for _ in range(r + c)]
    for i in range(r):
        for j in range(c):
            A[i][i * c + j] = 1
            A[r + j][i * c + j] = 1
    return validate(A, list(row_sums) + list(col_sums))


def direct_scaled_F(A, y):
    """The scaled group-ring polynomial straight from its defining double sum.

    Counts pairs (j, h) with j in {0..N-1}^n, h in {0..N-1}^m, sum(A h) = sum(y),
    bucketed by j.(y - A h) mod N.  Shares no code with the package.
    """
    n, m = len(A), len(A[0])
    N = max(abs(v) for v in y) + 1
    d = sum(y)
    hs = []
    for h in itertools.product(range(N), repeat=m):
        Ah = [sum(A[k][l] * h[l] for l in range(m)) for k in range(n)]
        if sum(Ah) == d:
            hs.append([y[k] - Ah[k] for k in range(n)])
    F = [0] * N
    for j in itertools.product(range(N), repeat=n):
        for diff in hs:
            F[sum(a * b for a, b in zip(j, diff)) % N] += 1
    return F


def enumerate_solutions(A, y):
    """All x >= 0 with A x = y by plain nested ranges (no pruning)."""
    n, m = len(A), len(A[0])
    bounds = [min(y[k] // A[k][l] for k in range(n) if A[k][l]) for l in range(m)]
    if any(v < 0 for v in y):
        return []
    return [x for x in itertools.product(*(range(b + 1) for b in bounds))
            if all(sum(A[k][l] * x[l] for l in range(m)) == y[k] for k in range(n))]


@st.composite
def small_instances(draw, max_n=3, max_m=4, max_entry=3, max_y=5):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    cols = []
    for _ in range(m):
        col = draw(st.lists(st.integers(0, max_entry), min_size=n, max_size=n)
                   .filter(lambda c: any(c)))
        cols.append(col)
    A = [[cols[l][k] for l in range(m)] for k in range(n)]
    y = draw(st.lists(st.integers(0, max_y), min_size=n, max_size=n))
    return validate(A, y)


@st.composite
def small_hypergraphs(draw, max_v=8, max_e=12, uniform=None):
    V = draw(st.integers(uniform or 1, max_v))
    E = draw(st.integers(0, max_e))
    edges = []
    for _ in range(E):
        if uniform is None:
            size = draw(st.integers(1, V))
        else:
            size = uniform
        edges.append(draw(st.lists(st.integers(0, V - 1), min_size=size, max_size=size, unique=True)))
    return make_hypergraph(V, edges)


@pytest.fixture
def ex1():
    return validate(*EX1)


@pytest.fixture
def ex2():
    return validate(*EX2)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
