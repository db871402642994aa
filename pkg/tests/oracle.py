"""Reference arithmetic written straight from the doubling formula.

Pure Python on lists of Fractions, sharing no code with the package, so tests
can compare the batched integer engine against it.
"""

from fractions import Fraction


def ref_conj(x):
    if len(x) == 1:
        return list(x)
    h = len(x) // 2
    return ref_conj(x[:h]) + [-c for c in x[h:]]


def ref_mul(x, y):
    """(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))."""
    if len(x) == 1:
        return [x[0] * y[0]]
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    left = [p - q for p, q in zip(ref_mul(a, c), ref_mul(ref_conj(d), b))]
    right = [p + q for p, q in zip(ref_mul(d, a), ref_mul(b, ref_conj(c)))]
    return left + right


def ref_basis(d, i):
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def ref_table(n):
    """{(i, j): (sign, k)} with e_i e_j = sign e_k."""
    d = 1 << n
    out = {}
    for i in range(d):
        for j in range(d):
            p = ref_mul(ref_basis(d, i), ref_basis(d, j))
            (k,) = [k for k, c in enumerate(p) if c]
            out[i, j] = (int(p[k]), k)
    return out


def ref_norm2(x):
    return sum(c * c for c in x)


def sparse_mul(table, x, y):
    """Product of sparse dicts {index: coeff} through a reference table."""
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            s, k = table[i, j]
            out[k] = out.get(k, 0) + s * a * b
    return {k: v for k, v in out.items() if v}


def ref_zero_divisor_count(n, k=2):
    """Count canonical k-term signed basis pairs (first sign +1) with ab == 0."""
    from itertools import combinations, product

    table = ref_table(n)
    d = 1 << n
    cands = []
    for idx in combinations(range(d), k):
        for tail in product((1, -1), repeat=k - 1):
            cands.append(dict(zip(idx, (1,) + tail)))
    return sum(1 for a in cands for b in cands if not sparse_mul(table, a, b))
