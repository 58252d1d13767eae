"""Exact linear algebra over the integers.

Hermite and Smith normal forms, integer kernels, and finitely generated
subgroups of Z^n (called lattices here, though they need not be full rank).
Everything runs on arbitrary-precision ints.  Rows are stored sparsely as
{column: nonzero coefficient} dicts because the big matrices that show up
upstream (flattened group-ring maps) are mostly zeros; small dense inputs
are accepted anywhere and converted.

>>> hnf([[2, 0], [1, 1]])
[[1, 1], [0, 2]]
>>> snf([[2, 4], [6, 8]]).diagonal
(2, 4)
>>> kernel_lattice([[1, 1]]).basis()
[[1, -1]]
>>> cokernel_invariants([[3]], 1)
(3,)
"""

from __future__ import annotations

from dataclasses import dataclass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _axpy(dst: dict, src: dict, q: int) -> None:
    # dst += q*src, dropping zeros
    if not q:
        return
    for c, v in src.items():
        w = dst.get(c, 0) + q * v
        if w:
            dst[c] = w
        else:
            dst.pop(c, None)


def _combine(a: int, r1: dict, b: int, r2: dict) -> dict:
    out = {}
    for c, v in r1.items():
        w = a * v
        if w:
            out[c] = w
    _axpy(out, r2, b)
    return out


def _sparse_row(row) -> dict:
    if isinstance(row, dict):
        return {c: v for c, v in row.items() if v}
    return {c: v for c, v in enumerate(row) if v}


class Echelon:
    """Incremental row-echelon form of an integer row span.

    Rows keep the invariant that each stored row's least nonzero column is
    its pivot column and pivot columns are distinct.  `add` may replace an
    existing pivot row by a gcd combination, so the structure represents the
    exact integer row span (not just a rank profile).

    With reduce_others=True every stored row is also kept reduced at every
    pivot column (near-Hermite form throughout).  Costs roughly rank times
    more per add; worth it when insertion order makes coefficients swell,
    as in kernel computations with transform columns.
    """

    def __init__(self, width: int, reduce_others: bool = False):
        self.width = width
        self.reduce_others = reduce_others
        self.rows: list[dict] = []
        self.pivots: dict[int, int] = {}  # pivot column -> index into rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec) -> bool:
        """Insert a vector; return True if the span strictly grew."""
        vec = _sparse_row(vec)
        changed = False
        while vec:
            lead = min(vec)
            at = self.pivots.get(lead)
            if at is None:
                if vec[lead] < 0:
                    vec = {c: -v for c, v in vec.items()}
                self.pivots[lead] = len(self.rows)
                self.rows.append(vec)
                self._reduce_tail(vec, lead)
                if self.reduce_others:
                    self._reduce_others_at(lead)
                return True
            row = self.rows[at]
            a, b = row[lead], vec[lead]
            if b % a == 0:
                _axpy(vec, row, -(b // a))
            else:
                g, x, y = xgcd(a, b)
                new_row = _combine(x, row, y, vec)
                vec = _combine(a // g, vec, -(b // g), row)
                self.rows[at] = new_row
                self._reduce_tail(new_row, lead)
                if self.reduce_others:
                    self._reduce_others_at(lead)
                changed = True
        return changed

    def _reduce_tail(self, r: dict, skip: int) -> None:
        # keep r's entries at other pivot columns within [0, pivot);
        # without this, gcd combines let coefficients explode
        c = skip
        while True:
            nxt = min((k for k in r if k > c and k in self.pivots), default=None)
            if nxt is None:
                return
            row = self.rows[self.pivots[nxt]]
            q = r[nxt] // row[nxt]
            if q:
                _axpy(r, row, -q)
            c = nxt

    def _reduce_others_at(self, lead: int) -> None:
        at = self.pivots[lead]
        row = self.rows[at]
        piv = row[lead]
        for at2, r2 in enumerate(self.rows):
            if at2 != at and lead in r2:
                q = r2[lead] // piv
                if q:
                    _axpy(r2, row, -q)

    def contains(self, vec) -> bool:
        vec = _sparse_row(vec)
        while vec:
            lead = min(vec)
            at = self.pivots.get(lead)
            if at is None:
                return False
            row = self.rows[at]
            q, rem = divmod(vec[lead], row[lead])
            if rem:
                return False
            _axpy(vec, row, -q)
        return True

    def hnf_rows(self) -> tuple[list[dict], list[int]]:
        """Canonical form: pivots positive, entries above a pivot in [0, pivot)."""
        order = sorted(self.pivots)
        rows = []
        for c in order:
            r = self.rows[self.pivots[c]]
            rows.append({k: -v for k, v in r.items()} if r[c] < 0 else dict(r))
        for k, c in enumerate(order):
            piv = rows[k][c]
            for j in range(k):
                x = rows[j].get(c)
                if x is not None:
                    q = x // piv
                    if q:
                        _axpy(rows[j], rows[k], -q)
        return rows, order

    def copy(self) -> "Echelon":
        e = Echelon(self.width, self.reduce_others)
        e.rows = [dict(r) for r in self.rows]
        e.pivots = dict(self.pivots)
        return e

    def add_all(self, vecs) -> None:
        for v in vecs:
            self.add(v)


class Lattice:
    """A subgroup of Z^ambient, held as a canonical HNF row basis.

    Two lattices are equal iff their canonical bases are identical.
    """

    __slots__ = ("ambient", "rows", "pivot_cols")

    def __init__(self, ambient: int, rows: list[dict], pivot_cols: list[int]):
        self.ambient = ambient
        self.rows = rows
        self.pivot_cols = pivot_cols

    @classmethod
    def from_rows(cls, ambient: int, rows) -> "Lattice":
        ech = Echelon(ambient)
        for r in rows:
            ech.add(r)
        canon, cols = ech.hnf_rows()
        return cls(ambient, canon, cols)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[int]]:
        return [[r.get(c, 0) for c in range(self.ambient)] for r in self.rows]

    def member(self, vec) -> bool:
        vec = _sparse_row(vec)
        for c, row in zip(self.pivot_cols, self.rows):
            x = vec.get(c)
            if x is None:
                continue
            q, rem = divmod(x, row[c])
            if rem:
                return False
            _axpy(vec, row, -q)
        return not vec

    def coordinates(self, vec) -> list[int]:
        """Express vec in the basis; raises ValueError if vec is outside."""
        vec = _sparse_row(vec)
        coords = []
        for c, row in zip(self.pivot_cols, self.rows):
            x = vec.get(c, 0)
            q, rem = divmod(x, row[c])
            if rem:
                raise ValueError("vector not in lattice")
            coords.append(q)
            _axpy(vec, row, -q)
        if vec:
            raise ValueError("vector not in lattice")
        return coords

    def sum(self, other: "Lattice") -> "Lattice":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return Lattice.from_rows(self.ambient, list(self.rows) + list(other.rows))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.ambient == other.ambient
            and self.pivot_cols == other.pivot_cols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(
            (self.ambient, tuple(tuple(sorted(r.items())) for r in self.rows))
        )

    def __repr__(self):
        return f"Lattice(ambient={self.ambient}, rank={self.rank})"


def lattice_member(lat: Lattice, vec) -> bool:
    return lat.member(vec)


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    return a == b


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    return a.sum(b)


@dataclass(frozen=True)
class SmithForm:
    """Diagonal of a Smith normal form, with optional unimodular transforms.

    diagonal lists only the nonzero invariants d_1 | d_2 | ... ; rank
    deficiency shows up as absent entries.  When transforms are requested,
    U @ A @ V equals the padded diagonal matrix exactly.
    """

    diagonal: tuple[int, ...]
    nrows: int
    ncols: int
    U: tuple[tuple[int, ...], ...] | None = None
    V: tuple[tuple[int, ...], ...] | None = None


def _dense_rows(mat, ncols=None):
    if isinstance(mat, IntMatrix):
        return [list(r) for r in mat.to_dense()], mat.ncols
    rows = [list(r) for r in mat]
    if rows:
        width = max(len(r) for r in rows)
        for r in rows:
            r.extend([0] * (width - len(r)))
    else:
        width = 0
    if ncols is not None:
        for r in rows:
            r.extend([0] * (ncols - len(r)))
        width = max(width, ncols)
    return rows, width


def snf(mat, ncols: int | None = None, with_transforms: bool = False) -> SmithForm:
    """Smith normal form over Z.  Dense working copy: keep inputs small-ish."""
    M, width = _dense_rows(mat, ncols)
    r, c = len(M), width
    U = [[int(i == j) for j in range(r)] for i in range(r)] if with_transforms else None
    V = [[int(i == j) for j in range(c)] for i in range(c)] if with_transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def row_op(i, j, q):
        # row i += q * row j
        Mi, Mj = M[i], M[j]
        for k in range(c):
            Mi[k] += q * Mj[k]
        if U is not None:
            Ui, Uj = U[i], U[j]
            for k in range(r):
                Ui[k] += q * Uj[k]

    def col_op(i, j, q):
        # col i += q * col j
        for row in M:
            row[i] += q * row[j]
        if V is not None:
            for row in V:
                row[i] += q * row[j]

    def row_combine(i, j, a, b, a2, b2):
        # rows (i, j) <- (a*ri + b*rj, a2*ri + b2*rj)
        Mi, Mj = M[i], M[j]
        for k in range(c):
            Mi[k], Mj[k] = a * Mi[k] + b * Mj[k], a2 * Mi[k] + b2 * Mj[k]
        if U is not None:
            Ui, Uj = U[i], U[j]
            for k in range(r):
                Ui[k], Uj[k] = a * Ui[k] + b * Uj[k], a2 * Ui[k] + b2 * Uj[k]

    def col_combine(i, j, a, b, a2, b2):
        for row in M:
            row[i], row[j] = a * row[i] + b * row[j], a2 * row[i] + b2 * row[j]
        if V is not None:
            for row in V:
                row[i], row[j] = a * row[i] + b * row[j], a2 * row[i] + b2 * row[j]

    t = 0
    while True:
        # locate minimal-absolute-value nonzero pivot in M[t:, t:]
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            # clear column t
            for i in range(t + 1, r):
                v = M[i][t]
                if not v:
                    continue
                a = M[t][t]
                if v % a == 0:
                    row_op(i, t, -(v // a))
                else:
                    g, x, y = xgcd(a, v)
                    row_combine(t, i, x, y, -(v // g), a // g)
            # clear row t
            dirty = False
            for j in range(t + 1, c):
                v = M[t][j]
                if not v:
                    continue
                a = M[t][t]
                if v % a == 0:
                    col_op(j, t, -(v // a))
                else:
                    g, x, y = xgcd(a, v)
                    col_combine(t, j, x, y, -(v // g), a // g)
                    dirty = True
            if dirty:
                continue  # column may have refilled
            if any(M[i][t] for i in range(t + 1, r)):
                continue
            # enforce divisibility: pivot must divide the rest of the block
            a = M[t][t]
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if M[i][j] % a:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, 1)
        t += 1

    diag = []
    for i in range(min(r, c)):
        v = M[i][i]
        if v:
            if v < 0:
                M[i] = [-x for x in M[i]]
                if U is not None:
                    U[i] = [-x for x in U[i]]
                v = -v
            diag.append(v)
    return SmithForm(
        diagonal=tuple(diag),
        nrows=r,
        ncols=c,
        U=tuple(tuple(row) for row in U) if U is not None else None,
        V=tuple(tuple(row) for row in V) if V is not None else None,
    )


def hnf(mat, ncols: int | None = None) -> list[list[int]]:
    """Canonical row Hermite normal form; zero rows dropped.

    >>> hnf([[0, 1], [1, 0]])
    [[1, 0], [0, 1]]
    >>> hnf([[0, 0]])
    []
    """
    if isinstance(mat, IntMatrix):
        ncols = mat.ncols
        rows = [dict(r) for r in mat.rows]
    else:
        rows = [_sparse_row(r) for r in mat]
        if ncols is None:
            ncols = max((len(r) for r in mat), default=0)
    lat = Lattice.from_rows(ncols, rows)
    return lat.basis()


def kernel_lattice(mat, ncols: int | None = None) -> Lattice:
    """Integer solutions x of A @ x == 0, as a lattice of row vectors.

    The result is automatically saturated: if c*x lies in the kernel for a
    nonzero scalar c then so does x.
    """
    if isinstance(mat, IntMatrix):
        nrows, width = mat.nrows, mat.ncols
        cols: list[dict] = [{} for _ in range(width)]
        for i, row in enumerate(mat.rows):
            for j, v in row.items():
                cols[j][i] = v
    else:
        rows = [list(r) for r in mat]
        nrows = len(rows)
        if ncols is None:
            ncols = max((len(r) for r in rows), default=0)
        width = ncols
        cols = [{} for _ in range(width)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = v
    # echelonize [A^T | I]; rows whose A^T part dies give kernel members.
    # The transform columns swell badly without full reduction.
    ech = Echelon(nrows + width, reduce_others=True)
    for j in range(width):
        vec = dict(cols[j])
        vec[nrows + j] = 1
        ech.add(vec)
    kernel_rows = []
    for c, at in ech.pivots.items():
        if c >= nrows:
            kernel_rows.append({k - nrows: v for k, v in ech.rows[at].items()})
    return Lattice.from_rows(width, kernel_rows)


def lll_reduce(rows, delta: tuple[int, int] = (3, 4)) -> list[dict]:
    """Basis reduction (LLL) for linearly independent sparse integer rows.

    Returns a basis of the same lattice made of short, nearly orthogonal
    vectors.  Canonical HNF bases of kernels can carry forced entries of
    hundreds of digits even when the lattice itself contains tiny vectors;
    reducing first is what makes those lattices workable downstream.

    Exact integer arithmetic via Gram determinants d_i and scaled
    Gram-Schmidt coefficients lam[i][j] = d_{j+1} * mu_ij, so no precision
    loss is possible.  delta is the Lovasz parameter as a fraction.
    """
    b = [_sparse_row(r) for r in rows]
    n = len(b)
    if n <= 1:
        return b
    dn, dd = delta

    def dot(u: dict, v: dict) -> int:
        if len(u) > len(v):
            u, v = v, u
        return sum(c * v[k] for k, c in u.items() if k in v)

    d = [1] * (n + 1)  # d[i] = Gram determinant of the first i rows
    lam = [[0] * n for _ in range(n)]

    def red(k: int, l: int) -> None:
        lkl = lam[k][l]
        dl = d[l + 1]
        if 2 * abs(lkl) <= dl:
            return
        q = (2 * lkl + dl) // (2 * dl)
        _axpy(b[k], b[l], -q)
        lam[k][l] = lkl - q * dl
        for i in range(l):
            lam[k][i] -= q * lam[l][i]

    d[1] = dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("rows are linearly dependent")
    kmax = 0
    k = 1
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                elif u:
                    d[k + 1] = u
                else:
                    raise ValueError("rows are linearly dependent")
        while True:
            red(k, k - 1)
            if dd * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2) < dn * d[k] ** 2:
                b[k], b[k - 1] = b[k - 1], b[k]
                for j in range(k - 1):
                    lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
                lmbd = lam[k][k - 1]
                newd = (d[k - 1] * d[k + 1] + lmbd * lmbd) // d[k]
                for i in range(k + 1, kmax + 1):
                    t = lam[i][k]
                    lam[i][k] = (d[k + 1] * lam[i][k - 1] - lmbd * t) // d[k]
                    lam[i][k - 1] = (newd * t + lmbd * lam[i][k]) // d[k + 1]
                d[k] = newd
                k = max(1, k - 1)
            else:
                for l in range(k - 2, -1, -1):
                    red(k, l)
                k += 1
                break
    return b


def prime_power_factors(n: int) -> list[int]:
    """Split n > 1 into prime-power parts: 12 -> [4, 3]."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            pp = 1
            while n % d == 0:
                pp *= d
                n //= d
            out.append(pp)
        d += 1
    if n > 1:
        out.append(n)
    return out


def invariants_from_diagonal(diagonal, free_rank: int) -> tuple[int, ...]:
    """Canonical abelian-group shape: prime powers ascending, then zeros."""
    parts: list[int] = []
    for d in diagonal:
        if d > 1:
            parts.extend(prime_power_factors(d))
    return tuple(sorted(parts)) + (0,) * free_rank


def cokernel_invariants(mat, ncols: int | None = None) -> tuple[int, ...]:
    """Invariant factors of Z^ncols modulo the row span of mat.

    Unit factors are dropped; each zero stands for an infinite cyclic factor.

    >>> cokernel_invariants([[2, 4], [6, 8]], 2)
    (2, 4)
    >>> cokernel_invariants([], 2)
    (0, 0)
    """
    if isinstance(mat, IntMatrix):
        ncols = mat.ncols
    elif ncols is None:
        ncols = max((len(r) for r in mat), default=0)
    form = snf(mat, ncols)
    return invariants_from_diagonal(form.diagonal, ncols - len(form.diagonal))


def quotient_invariants(num: Lattice, den_rows) -> tuple[int, ...]:
    """Invariant factors of num / <den_rows>; den_rows must lie in num."""
    coords = [num.coordinates(d) for d in den_rows]
    return cokernel_invariants(coords, num.rank)


class IntMatrix:
    """Integer matrix with sparse {col: value} rows and explicit dimensions."""

    __slots__ = ("nrows", "ncols", "rows")

    FORMAT = "grpcohom.intmatrix/1"

    def __init__(self, nrows: int, ncols: int, rows: list[dict]):
        assert len(rows) == nrows
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def from_dense(cls, mat, ncols: int | None = None) -> "IntMatrix":
        rows = [_sparse_row(r) for r in mat]
        if ncols is None:
            ncols = max((len(r) for r in mat), default=0)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_triples(cls, nrows: int, ncols: int, triples) -> "IntMatrix":
        rows: list[dict] = [{} for _ in range(nrows)]
        for i, j, v in triples:
            v = int(v)
            if v:
                rows[i][j] = v
        return cls(nrows, ncols, rows)

    def to_dense(self) -> list[list[int]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return self.rows[i].get(j, 0)

    def set_entry(self, i: int, j: int, v: int) -> None:
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    def density(self) -> float:
        total = self.nrows * self.ncols
        if not total:
            return 0.0
        return sum(len(r) for r in self.rows) / total

    def transpose(self) -> "IntMatrix":
        rows: list[dict] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                rows[j][i] = v
        return IntMatrix(self.ncols, self.nrows, rows)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows: list[dict] = []
        for row in self.rows:
            acc: dict = {}
            for k, v in row.items():
                _axpy(acc, other.rows[k], v)
            rows.append(acc)
        return IntMatrix(self.nrows, other.ncols, rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, density={self.density():.3f})"

    def to_json(self) -> dict:
        entries = []
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                entries.append([i, j, str(row[j])])
        return {
            "format": self.FORMAT,
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": entries,
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntMatrix":
        if data.get("format") != cls.FORMAT:
            raise ValueError(f"unsupported matrix format: {data.get('format')!r}")
        return cls.from_triples(data["rows"], data["cols"], data["entries"])
