import random
from itertools import combinations, product
from math import gcd, prod

from grpcohom.intlinalg import (
    Echelon,
    IntMatrix,
    Lattice,
    cokernel_invariants,
    hnf,
    invariants_from_diagonal,
    kernel_lattice,
    lattice_equal,
    lattice_member,
    lattice_sum,
    prime_power_factors,
    quotient_invariants,
    snf,
    xgcd,
)

# ---------------------------------------------------------------- oracles


def det_laplace(mat):
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            sign = -1 if j % 2 else 1
            total += sign * mat[0][j] * det_laplace(minor)
    return total


def gcd_of_k_minors(mat, k):
    """gcd of all k x k minors, or 0 when all vanish."""
    nr, nc = len(mat), len(mat[0]) if mat else 0
    g = 0
    for rows in combinations(range(nr), k):
        for cols in combinations(range(nc), k):
            sub = [[mat[i][j] for j in cols] for i in rows]
            g = gcd(g, det_laplace(sub))
    return g


def quotient_type_by_counting(rows, ncols):
    """Structure of Z^ncols / rowspan via pure element-order counting.

    Only valid for finite quotients; returns the canonical prime-power
    multiset without touching any normal-form code path.
    """
    basis = hnf(rows, ncols)
    assert len(basis) == ncols, "finite quotients only"
    diag = [basis[i][i] for i in range(ncols)]
    order = prod(diag)
    assert order <= 1000

    def reduce(vec):
        vec = list(vec)
        for i in range(ncols):
            q = vec[i] // diag[i]
            if q:
                for j in range(i, ncols):
                    vec[j] -= q * basis[i][j]
        return tuple(vec)

    elements = [reduce(v) for v in product(*[range(d) for d in diag])]
    assert len(set(elements)) == order
    parts = []
    for p in sorted({f for d in diag if d > 1 for f in _prime_divisors(d)}):
        prev = 1
        k = 1
        exps = []
        while True:
            n_k = sum(
                1 for x in elements if reduce([p**k * c for c in x]) == (0,) * ncols
            )
            at_least_k = (n_k // prev).bit_length() - 1 if p == 2 else _ilog(n_k // prev, p)
            if at_least_k == 0:
                break
            exps.append(at_least_k)
            prev = n_k
            k += 1
        # exps[k-1] = number of summands with exponent >= k
        for e in range(1, len(exps) + 1):
            count = exps[e - 1] - (exps[e] if e < len(exps) else 0)
            parts.extend([p**e] * count)
    return tuple(sorted(parts))


def _prime_divisors(n):
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _ilog(n, p):
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    return e


def random_matrix(rng, max_dim=6, max_entry=9):
    nr = rng.randint(1, max_dim)
    nc = rng.randint(1, max_dim)
    return [[rng.randint(-max_entry, max_entry) for _ in range(nc)] for _ in range(nr)]


def random_unimodular(rng, n, ops=12):
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            P[i], P[j] = P[j], P[i]
        elif kind == 1:
            P[i] = [-x for x in P[i]]
        elif i != j:
            q = rng.randint(-3, 3)
            P[i] = [a + q * b for a, b in zip(P[i], P[j])]
    return P


def mat_mul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


# ---------------------------------------------------------------- fixed values


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (-3, -9)]:
        g, x, y = xgcd(a, b)
        assert g == gcd(a, b)
        assert a * x + b * y == g


def test_hnf_examples():
    assert hnf([[0, 1], [1, 0]]) == [[1, 0], [0, 1]]
    assert hnf([[2, 0], [1, 1]]) == [[1, 1], [0, 2]]
    assert hnf([[0, 0], [0, 0]]) == []
    assert hnf([], 3) == []


def test_hnf_canonical_is_unique_representation():
    rows = [[4, 2, 0], [2, 4, 2], [0, 0, 6]]
    h1 = hnf(rows)
    h2 = hnf(list(reversed(rows)))
    assert h1 == h2
    for row in h1:
        lead = next(i for i, v in enumerate(row) if v)
        assert row[lead] > 0


def test_snf_examples():
    assert snf([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)
    assert snf([[3]]).diagonal == (3,)
    assert snf([[0, 0]], 2).diagonal == ()


def test_snf_transforms_exact():
    A = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    form = snf(A, with_transforms=True)
    D = mat_mul(mat_mul([list(r) for r in form.U], A), [list(r) for r in form.V])
    for i in range(3):
        for j in range(3):
            want = form.diagonal[i] if i == j and i < len(form.diagonal) else 0
            assert D[i][j] == want
    # transforms are unimodular iff their HNF is the identity
    assert hnf([list(r) for r in form.U]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert hnf([list(r) for r in form.V]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_kernel_examples():
    assert kernel_lattice([[1, 1]]).basis() == [[1, -1]]
    assert kernel_lattice([[1, 0], [0, 1]]).rank == 0
    assert kernel_lattice([[2, 2], [1, 1]]).basis() == [[1, -1]]
    # empty matrix: everything is in the kernel
    assert kernel_lattice([], 2).basis() == [[1, 0], [0, 1]]


def test_cokernel_examples():
    assert cokernel_invariants([[3]], 1) == (3,)
    assert cokernel_invariants([[2, 4], [6, 8]], 2) == (2, 4)
    assert cokernel_invariants([], 2) == (0, 0)
    assert cokernel_invariants([[12]], 1) == (3, 4)
    assert cokernel_invariants([[1]], 1) == ()


def test_prime_power_split():
    assert prime_power_factors(12) == [4, 3]
    assert prime_power_factors(7) == [7]
    assert prime_power_factors(360) == [8, 9, 5]
    assert invariants_from_diagonal((1, 2, 12), 2) == (2, 3, 4, 0, 0)


def test_lattice_membership_and_sum():
    lat = Lattice.from_rows(2, [[1, 1], [0, 2]])
    assert lattice_member(lat, [2, 0])
    assert not lattice_member(lat, [1, 0])
    a = Lattice.from_rows(2, [[2, 0]])
    b = Lattice.from_rows(2, [[0, 3]])
    s = lattice_sum(a, b)
    assert s.basis() == [[2, 0], [0, 3]]
    # index 6 sublattice of Z^2
    assert prod(s.basis()[i][i] for i in range(2)) == 6
    assert lattice_equal(s, Lattice.from_rows(2, [[2, 3], [2, 0], [0, 3]]))
    assert not lattice_equal(a, b)


def test_lattice_coordinates():
    lat = Lattice.from_rows(3, [[1, 0, 2], [0, 2, 2]])
    v = [3, 4, 10]
    coords = lat.coordinates(v)
    back = [0, 0, 0]
    for c, row in zip(coords, lat.basis()):
        back = [x + c * y for x, y in zip(back, row)]
    assert back == v
    try:
        lat.coordinates([0, 1, 1])
        assert False, "expected ValueError"
    except ValueError:
        pass


def test_quotient_invariants():
    ambient = Lattice.from_rows(2, [[1, 0], [0, 1]])
    assert quotient_invariants(ambient, [[2, 0], [0, 3]]) == (2, 3)
    assert quotient_invariants(ambient, []) == (0, 0)
    # quotient of an index-2 sublattice
    num = Lattice.from_rows(2, [[1, 1], [0, 2]])
    assert quotient_invariants(num, [[2, 2], [0, 4]]) == (2, 2)


def test_echelon_incremental():
    ech = Echelon(3)
    assert ech.add([2, 0, 0])
    assert not ech.contains([1, 0, 0])
    assert ech.add([1, 0, 0])  # gcd refinement grows the span
    assert ech.contains([1, 0, 0])
    assert not ech.add([3, 0, 0])
    assert ech.rank == 1


# ---------------------------------------------------------------- properties


def test_snf_against_minor_gcd_oracle():
    rng = random.Random(20260819)
    for trial in range(500):
        A = random_matrix(rng)
        form = snf(A, with_transforms=True)
        d = form.diagonal
        for i in range(len(d) - 1):
            assert d[i + 1] % d[i] == 0, (A, d)
        # product of the first k invariants equals the gcd of k x k minors
        acc = 1
        for k in range(1, len(d) + 1):
            acc *= d[k - 1]
            assert acc == gcd_of_k_minors(A, k), (A, d, k)
        if len(d) < min(len(A), len(A[0])):
            assert gcd_of_k_minors(A, len(d) + 1) == 0
        # exactness of the transforms
        U = [list(r) for r in form.U]
        V = [list(r) for r in form.V]
        D = mat_mul(mat_mul(U, A), V)
        for i in range(len(A)):
            for j in range(len(A[0])):
                want = d[i] if i == j and i < len(d) else 0
                assert D[i][j] == want


def test_hnf_unimodular_invariance():
    rng = random.Random(7)
    for trial in range(200):
        A = random_matrix(rng)
        P = random_unimodular(rng, len(A))
        assert hnf(A, len(A[0])) == hnf(mat_mul(P, A), len(A[0]))


def test_kernel_saturation_property():
    rng = random.Random(99)
    for trial in range(200):
        A = random_matrix(rng)
        ker = kernel_lattice(A, len(A[0]))
        for row in ker.basis():
            out = [sum(a * x for a, x in zip(arow, row)) for arow in A]
            assert not any(out)
        if ker.rank:
            # a saturated sublattice has all-unit invariant factors
            assert snf(ker.basis(), len(A[0])).diagonal == (1,) * ker.rank


def test_cokernel_against_counting_oracle():
    rng = random.Random(31337)
    done = 0
    while done < 60:
        n = rng.randint(1, 3)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(n, n + 2))]
        basis = hnf(A, n)
        if len(basis) < n:
            continue
        order = prod(basis[i][i] for i in range(n))
        if not 1 < order <= 1000:
            continue
        got = tuple(x for x in cokernel_invariants(A, n) if x)
        assert got == quotient_type_by_counting(A, n)
        done += 1


def test_lattice_sum_is_join():
    rng = random.Random(5)
    for trial in range(100):
        n = rng.randint(1, 4)
        a = Lattice.from_rows(n, [random_matrix(rng, n, 5)[0] for _ in range(2)])
        b = Lattice.from_rows(n, [random_matrix(rng, n, 5)[0] for _ in range(2)])
        s = a.sum(b)
        for row in a.rows:
            assert s.member(row)
        for row in b.rows:
            assert s.member(row)
        assert s == b.sum(a)


# ---------------------------------------------------------------- IntMatrix


def test_intmatrix_roundtrip():
    m = IntMatrix.from_dense([[0, 2], [10**30, 0], [0, 0]])
    assert m.nrows == 3 and m.ncols == 2
    assert m.entry(1, 0) == 10**30
    data = m.to_json()
    assert data["format"] == IntMatrix.FORMAT
    assert ["1", "0", str(10**30)][2] in [e[2] for e in data["entries"]]
    again = IntMatrix.from_json(data)
    assert again == m
    assert again.to_dense() == m.to_dense()
    assert m.transpose().transpose() == m


def test_intmatrix_mul():
    a = IntMatrix.from_dense([[1, 2], [3, 4]])
    b = IntMatrix.from_dense([[0, 1], [1, 0]])
    assert a.mul(b).to_dense() == [[2, 1], [4, 3]]
    assert kernel_lattice(a).rank == 0
    singular = IntMatrix.from_dense([[1, 2], [2, 4]])
    assert kernel_lattice(singular).basis() == [[2, -1]]


def test_intmatrix_density_and_format_guard():
    m = IntMatrix.zero(10, 10)
    m.set_entry(0, 0, 5)
    assert m.density() == 0.01
    m.set_entry(0, 0, 0)
    assert m.density() == 0.0
    try:
        IntMatrix.from_json({"format": "bogus", "rows": 0, "cols": 0, "entries": []})
        assert False
    except ValueError:
        pass
