"""Free resolutions of Z over the integral group ring of a finite group.

Modules are free left ZG-modules whose elements are row vectors; a
GroupRingMatrix with r rows and s columns maps the rank-r module to the
rank-s one by right multiplication.  Flattening replaces every group
ring entry by its order-|G| integer block in the regular
representation, with the Z-basis ordered free-rank major, group index
minor; that turns module maps into plain integer matrices, so kernels
and exactness questions reduce to lattice computations.

A resolution ... -> F_2 -> F_1 -> F_0 -> Z -> 0 always starts from
F_0 = ZG with the augmentation onto Z.  Each next boundary's rows are
module generators of the previous kernel, chosen by zg_generators so
that exactness holds by construction; validate_resolution re-derives
every flag from scratch for when a resolution arrives from disk or
from an untrusted source.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import ComputationalLimit
from .intlinalg import Echelon, IntMatrix, Lattice, kernel_lattice, lll_reduce
from .pcgroup import FiniteGroup

RESOLUTION_FORMAT = "grpcohom.resolution/1"
DEFAULT_MAX_GROUP_ORDER = 4096
DEFAULT_MAX_DEGREE = 8


class GroupRingElement:
    """Element of ZG as a sparse map: element index -> coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {g: c for g, c in (coeffs or {}).items() if c}

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @classmethod
    def unit(cls) -> "GroupRingElement":
        return cls({0: 1})

    @classmethod
    def of_group_element(cls, g: int, c: int = 1) -> "GroupRingElement":
        return cls({g: c})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "GroupRingElement":
        return GroupRingElement({g: c * v for g, v in self.coeffs.items()})

    def mul(self, other: "GroupRingElement", G: FiniteGroup) -> "GroupRingElement":
        out: dict = {}
        for u, cu in self.coeffs.items():
            for v, cv in other.coeffs.items():
                w = G.mul(u, v)
                out[w] = out.get(w, 0) + cu * cv
        return GroupRingElement(out)

    def augmentation(self) -> int:
        return sum(self.coeffs.values())

    def to_json(self) -> list:
        return [[g, str(c)] for g, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data) -> "GroupRingElement":
        return cls({int(g): int(c) for g, c in data})

    def __repr__(self):
        return f"GroupRingElement({self.coeffs!r})"


class GroupRingMatrix:
    """Sparse r x s matrix over ZG; rows map a rank-r module into rank s."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        self.rows = [
            {j: e for j, e in row.items() if e} for row in rows
        ]
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")

    def entry(self, i: int, j: int) -> GroupRingElement:
        return self.rows[i].get(j, GroupRingElement.zero())

    def set_entry(self, i: int, j: int, e: GroupRingElement):
        if e:
            self.rows[i][j] = e
        else:
            self.rows[i].pop(j, None)

    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def compose(self, other: "GroupRingMatrix", G: FiniteGroup) -> "GroupRingMatrix":
        """The map 'self then other' (self: F_r -> F_s, other: F_s -> F_t)."""
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = GroupRingMatrix(self.nrows, other.ncols)
        for i, row in enumerate(self.rows):
            acc: dict = {}
            for j, e in row.items():
                for k, f in other.rows[j].items():
                    prod = e.mul(f, G)
                    if k in acc:
                        acc[k] = acc[k] + prod
                    else:
                        acc[k] = prod
            out.rows[i] = {k: v for k, v in acc.items() if v}
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def to_json(self) -> dict:
        return {
            "nrows": self.nrows,
            "ncols": self.ncols,
            "entries": [
                [i, j, self.rows[i][j].to_json()]
                for i in range(self.nrows)
                for j in sorted(self.rows[i])
            ],
        }

    @classmethod
    def from_json(cls, data) -> "GroupRingMatrix":
        out = cls(int(data["nrows"]), int(data["ncols"]))
        for i, j, coeffs in data["entries"]:
            out.rows[int(i)][int(j)] = GroupRingElement.from_json(coeffs)
        return out

    def __repr__(self):
        return f"GroupRingMatrix({self.nrows}x{self.ncols} over ZG)"


def flatten(M: GroupRingMatrix, G: FiniteGroup) -> IntMatrix:
    """Integer matrix of the module map on the Z-basis (rank, group index).

    Row (i, g) maps to sum over entries m_ij and support u of
    coefficient at column (j, g*u); this is the regular representation
    applied blockwise and is multiplicative: flatten of a composition
    is the product of the flattenings.
    """
    N = G.order
    flat_rows = [dict() for _ in range(M.nrows * N)]
    for i, row in enumerate(M.rows):
        for j, e in row.items():
            for u, c in e.coeffs.items():
                for g in range(N):
                    r = flat_rows[i * N + g]
                    col = j * N + G.mul(g, u)
                    v = r.get(col, 0) + c
                    if v:
                        r[col] = v
                    else:
                        del r[col]
    return IntMatrix(M.nrows * N, M.ncols * N, flat_rows)


def translate_vector(vec: dict, g: int, G: FiniteGroup) -> dict:
    """Left action of g on a flattened module vector (sparse dicts)."""
    N = G.order
    return {
        (idx // N) * N + G.mul(g, idx % N): c for idx, c in vec.items()
    }


def matrix_from_vectors(vectors, ncols: int, G: FiniteGroup) -> GroupRingMatrix:
    """Rebuild a GroupRingMatrix from flattened row vectors."""
    N = G.order
    out = GroupRingMatrix(len(vectors), ncols)
    for i, vec in enumerate(vectors):
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        per_col: dict = {}
        for idx, c in items:
            if c:
                per_col.setdefault(idx // N, {})[idx % N] = c
        out.rows[i] = {j: GroupRingElement(d) for j, d in per_col.items()}
    return out


def _mod_p_add(rows: dict, vec: dict, p: int) -> bool:
    """Add vec to an F_p echelon {pivot col: row}; True iff the span grew."""
    vec = {c: v % p for c, v in vec.items() if v % p}
    while vec:
        c = min(vec)
        row = rows.get(c)
        if row is None:
            inv = pow(vec[c], -1, p)
            rows[c] = {k: (v * inv) % p for k, v in vec.items()}
            return True
        f = vec[c]
        nxt = dict(vec)
        for k, v in row.items():
            w = (nxt.get(k, 0) - f * v) % p
            if w:
                nxt[k] = w
            else:
                nxt.pop(k, None)
        vec = nxt
    return False


def _vadd(dst: dict, src: dict, f: int) -> None:
    # dst += f*src, dropping zeros
    if not f:
        return
    for c, v in src.items():
        w = dst.get(c, 0) + f * v
        if w:
            dst[c] = w
        else:
            dst.pop(c, None)


def _mod_p_solver(basis: list, p: int):
    """Express vectors in a basis, all mod p; None if basis drops rank mod p."""
    red = []  # (pivot col, reduced row, its expression over basis indices)

    def mod_merge(dst, src, f):
        for c, v in src.items():
            w = (dst.get(c, 0) + f * v) % p
            if w:
                dst[c] = w
            else:
                dst.pop(c, None)

    for i, b in enumerate(basis):
        row = {c: v % p for c, v in b.items() if v % p}
        mult = {i: 1}
        for pc, pr, pm in red:
            f = row.get(pc)
            if f:
                mod_merge(row, pr, -f)
                mod_merge(mult, pm, -f)
        if not row:
            return None
        pc = min(row)
        inv = pow(row[pc], -1, p)
        red.append((
            pc,
            {c: (v * inv) % p for c, v in row.items()},
            {c: (v * inv) % p for c, v in mult.items()},
        ))

    def solve(vec: dict):
        row = {c: v % p for c, v in vec.items() if v % p}
        coef: dict = {}
        for pc, pr, pm in red:
            f = row.get(pc)
            if f:
                mod_merge(row, pr, -f)
                mod_merge(coef, pm, f)
        return None if row else coef

    return solve


def _candidate_order(basis: list, G: FiniteGroup, p) -> tuple:
    """Order kernel-basis candidates; also the mod-p generator lower bound.

    Coordinates (in the basis, mod p) of (g_k - 1) b_i span the image of
    (p, augmentation ideal); basis vectors surviving in the quotient are
    the natural generator candidates and their count is the dimension of
    K/(pK + IK), which no generating set can undercut.
    """
    d = len(basis)
    if p is None or G.order == 1:
        return list(range(d)), None
    solve = _mod_p_solver(basis, p)
    if solve is None:
        return list(range(d)), None
    ech_p: dict = {}
    for b in basis:
        for k in range(G.ngens):
            diff = translate_vector(b, G.generator(k), G)
            _vadd(diff, b, -1)
            coords = solve(diff)
            if coords is None:
                return list(range(d)), None
            _mod_p_add(ech_p, coords, p)
    novel, rest = [], []
    for i in range(d):
        if _mod_p_add(ech_p, {i: 1}, p):
            novel.append(i)
        else:
            rest.append(i)
    return novel + rest, len(novel)


def _module_generators(basis: list, ambient: int, G: FiniteGroup, member) -> list:
    """Greedy ZG-generators of the lattice spanned by basis (sparse rows).

    member(vec) must decide membership in the target lattice; every
    translate that enters the span is checked with it, so a lattice not
    closed under the G-action is reported rather than silently grown.
    """
    if not basis:
        return []
    N = G.order
    if ambient % N != 0:
        raise ValueError("ambient dimension is not a multiple of |G|")

    order, lb = _candidate_order(basis, G, G.presentation.p_group_prime())

    # prefer short candidates; mid-cover spans echelonize much better
    # when fed small vectors first
    def weight(i):
        row = basis[i]
        return (max(map(abs, row.values())), len(row), i)

    if lb is None:
        order = sorted(order, key=weight)
    else:
        order = sorted(order[:lb], key=weight) + sorted(order[lb:], key=weight)

    def build_span(vectors, check):
        # reduce_others: translate spans swell past 10^500 otherwise
        e = Echelon(ambient, reduce_others=True)
        for v in vectors:
            for g in range(N):
                t = translate_vector(v, g, G)
                if check and not member(t):
                    raise ValueError(
                        "lattice is not closed under the group action"
                    )
                e.add(t)
        return e

    def covers(e):
        return all(e.contains(b) for b in basis)

    span = Echelon(ambient, reduce_others=True)
    chosen = []
    for i in order:
        b = basis[i]
        if span.contains(b):
            continue
        chosen.append(b)
        for g in range(N):
            t = translate_vector(b, g, G)
            if not member(t):
                raise ValueError("lattice is not closed under the group action")
            span.add(t)
        if len(chosen) == lb and covers(span):
            # meets the mod-p lower bound: minimal outright
            return chosen

    # reduction: first try dropping a generator outright, then dropping
    # one after retargeting another by a small multiple of it.  The
    # second form catches index gaps at primes away from p, where the
    # right smaller generating set exists but only after a unimodular
    # change of the chosen vectors.
    floor = 1 if lb is None else lb

    def shrunk_once():
        for k in range(len(chosen) - 1, -1, -1):
            trial = chosen[:k] + chosen[k + 1:]
            if covers(build_span(trial, check=False)):
                return trial
        for k in range(len(chosen) - 1, -1, -1):
            for i in range(len(chosen)):
                if i == k:
                    continue
                for s in (1, -1):
                    cand = dict(chosen[i])
                    _vadd(cand, chosen[k], s)
                    trial = [
                        cand if t == i else v
                        for t, v in enumerate(chosen)
                        if t != k
                    ]
                    if covers(build_span(trial, check=False)):
                        return trial
        return None

    while len(chosen) > floor:
        trial = shrunk_once()
        if trial is None:
            break
        chosen = trial
    return chosen


def zg_generators(K: Lattice, G: FiniteGroup) -> list:
    """Module generators of a G-invariant lattice in a flattened module.

    Returns vectors (as sparse dicts) whose G-translates Z-span K
    exactly, greedily reduced: removing any single one strictly
    shrinks the span.  For p-groups the candidate order comes from the
    lattice mod (p, augmentation ideal), which keeps the generator
    count at the minimal possible number in practice.  Raises
    ValueError if K is not closed under the group action.

    The canonical basis is LLL-reduced before any candidate is
    considered: canonical kernel bases carry forced fifty-digit entries
    whenever the lattice sits badly in its ambient space, and feeding
    those downstream poisons every later degree.
    """
    if K.rank == 0:
        return []
    basis = [dict(r) for r in K.rows]
    if K.rank > 1:
        basis = lll_reduce(basis)
    return _module_generators(basis, K.ambient, G, K.member)


@dataclass
class FreeResolution:
    """A finite stretch of a free ZG-resolution of Z.

    ranks[n] is the rank of F_n (ranks[0] == 1); boundaries[n-1] is
    d_n: F_n -> F_(n-1).  dd_zero[n-1] and exact[n-1] record, for each
    n >= 1, whether d_(n-1) after d_n vanishes (d_0 being the
    augmentation) and whether image(d_n) equals kernel(d_(n-1)).
    """

    group: FiniteGroup
    ranks: list
    boundaries: list
    dd_zero: list = field(default_factory=list)
    exact: list = field(default_factory=list)

    @property
    def max_degree(self) -> int:
        return len(self.boundaries)

    def boundary(self, n: int) -> GroupRingMatrix:
        if not 1 <= n <= self.max_degree:
            raise IndexError(f"no boundary d_{n}")
        return self.boundaries[n - 1]

    def boundary_augmentation(self, n: int) -> list:
        """Integer matrix of augmentations of d_n's entries."""
        d = self.boundary(n)
        out = [[0] * d.ncols for _ in range(d.nrows)]
        for i, row in enumerate(d.rows):
            for j, e in row.items():
                out[i][j] = e.augmentation()
        return out

    def to_json(self) -> dict:
        return {
            "format": RESOLUTION_FORMAT,
            "group_fingerprint": self.group.presentation.fingerprint(),
            "group_order": self.group.order,
            "ranks": list(self.ranks),
            "boundaries": [b.to_json() for b in self.boundaries],
            "dd_zero": list(self.dd_zero),
            "exact": list(self.exact),
        }

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup) -> "FreeResolution":
        if data.get("format") != RESOLUTION_FORMAT:
            raise ValueError(f"unsupported resolution format: {data.get('format')!r}")
        if data["group_fingerprint"] != group.presentation.fingerprint():
            raise ValueError("resolution belongs to a different presentation")
        return cls(
            group,
            [int(r) for r in data["ranks"]],
            [GroupRingMatrix.from_json(b) for b in data["boundaries"]],
            [bool(x) for x in data["dd_zero"]],
            [bool(x) for x in data["exact"]],
        )


def augmentation_kernel(G: FiniteGroup) -> Lattice:
    return kernel_lattice([[1] * G.order], ncols=G.order)


def _augmentation_matrix(G: FiniteGroup) -> IntMatrix:
    # the map ZG -> Z as an integer matrix (row vectors act on the left)
    return IntMatrix(G.order, 1, [{0: 1} for _ in range(G.order)])


def extend_resolution(
    G: FiniteGroup,
    N: int,
    *,
    start: Optional[FreeResolution] = None,
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
    max_degree: int = DEFAULT_MAX_DEGREE,
    budget_seconds: Optional[float] = None,
) -> FreeResolution:
    """Compute the resolution out to degree N, one kernel at a time.

    An existing resolution passed as start is continued rather than
    recomputed (and returned as-is when already long enough); the
    original object is never mutated.  Guard rails: refuses groups
    above max_group_order and degrees above max_degree (both
    overridable), and if budget_seconds is given the computation stops
    cleanly between degrees.  All limit violations raise
    ComputationalLimit; mid-run ones carry the finished part in
    .partial and its degree in .completed_degree.
    """
    if N < 0:
        raise ValueError("degree must be >= 0")
    if G.order > max_group_order:
        raise ComputationalLimit(
            f"group order {G.order} exceeds the limit {max_group_order}"
        )
    if N > max_degree:
        raise ComputationalLimit(
            f"requested degree {N} exceeds the limit {max_degree}"
        )
    began = time.monotonic()
    if start is not None:
        fp = G.presentation.fingerprint()
        if start.group.presentation.fingerprint() != fp:
            raise ValueError("start resolution belongs to a different group")
        if start.max_degree >= N:
            return start
        res = FreeResolution(
            G,
            list(start.ranks),
            list(start.boundaries),
            list(start.dd_zero),
            list(start.exact),
        )
        prev = res.boundaries[-1] if res.boundaries else None
        flat = flatten(prev, G) if prev is not None else _augmentation_matrix(G)
    else:
        res = FreeResolution(G, [1], [], [], [])
        flat = _augmentation_matrix(G)
        prev = None  # d_(n-1) as GroupRingMatrix
    for n in range(res.max_degree + 1, N + 1):
        if budget_seconds is not None and time.monotonic() - began > budget_seconds:
            raise ComputationalLimit(
                f"time budget exhausted before degree {n}",
                partial=res,
                completed_degree=n - 1,
            )
        K = kernel_lattice(flat.transpose())
        gens = zg_generators(K, G)
        d = matrix_from_vectors(gens, res.ranks[-1], G)
        if n == 1:
            dd_ok = all(
                e.augmentation() == 0 for row in d.rows for e in row.values()
            )
        else:
            dd_ok = d.compose(prev, G).is_zero()
        res.boundaries.append(d)
        res.ranks.append(d.nrows)
        res.dd_zero.append(dd_ok)
        # zg_generators verified span == kernel: exactness by construction
        res.exact.append(True)
        flat = flatten(d, G)
        prev = d
    return res


@dataclass
class ResolutionValidation:
    ok: bool
    failures: list  # (degree, kind, detail)

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None


def validate_resolution(res: FreeResolution) -> ResolutionValidation:
    """Re-derive every structural claim of a resolution from scratch.

    Checks, in degree order: boundary shapes against ranks, d after d
    vanishing (with d_0 the augmentation), and exactness as a lattice
    equality between each image and the independently recomputed
    kernel.  The first failing degree appears first in .failures.
    """
    G = res.group
    failures = []
    if not res.ranks or res.ranks[0] != 1:
        failures.append((0, "structure", "resolution must start at rank 1"))
        return ResolutionValidation(False, failures)
    bound = _augmentation_matrix(G)
    prev = None
    for n in range(1, res.max_degree + 1):
        d = res.boundaries[n - 1]
        if d.nrows != res.ranks[n] or d.ncols != res.ranks[n - 1]:
            failures.append((n, "structure", f"d_{n} has the wrong shape"))
            break
        if n == 1:
            dd_ok = all(
                e.augmentation() == 0 for row in d.rows for e in row.values()
            )
        else:
            dd_ok = d.compose(prev, G).is_zero()
        if not dd_ok:
            failures.append((n, "dd", f"d_{n - 1} after d_{n} is nonzero"))
            break
        # dd == 0 gives image inside kernel; exactness then needs every
        # independently recomputed kernel basis vector inside the image
        flat = flatten(d, G)
        image = Echelon(bound.nrows, reduce_others=True)
        image.add_all(flat.rows)
        kernel = kernel_lattice(bound.transpose())
        if not all(image.contains(r) for r in kernel.rows):
            failures.append((n, "exactness", f"image(d_{n}) != kernel(d_{n - 1})"))
            break
        bound = flat
        prev = d
    return ResolutionValidation(not failures, failures)
