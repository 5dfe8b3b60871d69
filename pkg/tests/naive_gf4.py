"""Independent scalar-arithmetic oracle used by the tests.

Everything here works entry by entry on tuples of field elements encoded
0..3 (0, 1, w, W), with the multiplication table written out from the
defining relation w^2 = w + 1.  Nothing is bit-packed and nothing is
shared with the package under test, so agreement is meaningful.
"""

from itertools import combinations

# Cayley table for multiplication, rows/cols indexed by 0, 1, w, W.
MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


def add(x, y):
    return x ^ y


def mul(x, y):
    return MUL[x][y]


def square(x):
    return MUL[x][x]


def trace_ip_scalar(x, y):
    # x * y^2 + x^2 * y, always 0 or 1
    return add(mul(x, square(y)), mul(square(x), y))


def vec_add(u, v):
    assert len(u) == len(v)
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_weight(u):
    return sum(1 for x in u if x != 0)


def vec_distance(u, v):
    assert len(u) == len(v)
    return sum(1 for a, b in zip(u, v) if a != b)


def vec_trace_ip(u, v):
    assert len(u) == len(v)
    out = 0
    for a, b in zip(u, v):
        out = add(out, trace_ip_scalar(a, b))
    return out


def codewords(generators):
    """All 2^k F2 combinations of generator tuples, including the zero word."""
    k = len(generators)
    n = len(generators[0])
    for mask in range(1 << k):
        word = (0,) * n
        for i in range(k):
            if (mask >> i) & 1:
                word = vec_add(word, generators[i])
        yield word


def weight_distribution(generators):
    counts = {}
    for word in codewords(generators):
        w = vec_weight(word)
        counts[w] = counts.get(w, 0) + 1
    return counts


def min_distance(generators):
    return min(vec_weight(w) for w in codewords(generators) if vec_weight(w) > 0)


def graph_code_rows(adjacency):
    """Generator tuples of a graph code: adjacency rows with w on the diagonal."""
    n = len(adjacency)
    rows = []
    for i in range(n):
        row = list(adjacency[i])
        assert row[i] == 0
        row[i] = 2  # w
        rows.append(tuple(row))
    return rows


def few_generator_min_weight(generators, max_size=3):
    best = None
    for size in range(1, max_size + 1):
        for combo in combinations(generators, size):
            word = combo[0]
            for g in combo[1:]:
                word = vec_add(word, g)
            w = vec_weight(word)
            if best is None or w < best:
                best = w
    return best
