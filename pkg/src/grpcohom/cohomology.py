"""Cohomology groups of finite groups, and the arithmetic around them.

Dualizing a free resolution with Hom(-, Z) replaces every group-ring
entry by its augmentation and transposes each boundary; cohomology is
then kernels modulo images of plain integer matrices, which Smith
normal form turns into invariant factors.  Modular coefficients reuse
the same integer lattices: a cochain is a mod-k cocycle exactly when
its boundary lands in k times the ambient lattice.

The rest of the module is arithmetic on the results: degreewise
comparison of graded groups, recovery of an abelian p-group from the
orders of its tensor products with Z/p^k, a torsion-exponent bound
check, the additive prediction for extensions by a coprime-order
cyclic normal subgroup, and a Kunneth oracle for direct products.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import ComputationalLimit, InconsistentProfile
from .intlinalg import (
    IntMatrix,
    Lattice,
    kernel_lattice,
    prime_power_factors,
    quotient_invariants,
)
from .pcgroup import FiniteGroup
from .resolution import DEFAULT_MAX_GROUP_ORDER, FreeResolution, extend_resolution

GRADED_FORMAT = "grpcohom.graded/1"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _p_exponent(n: int, p: int) -> Optional[int]:
    """e with n == p**e, or None if n is not a power of p."""
    if n < 1:
        return None
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def _prime_of(q: int) -> int:
    # q is a prime power; its prime is its smallest divisor
    d = 2
    while d * d <= q:
        if q % d == 0:
            return d
        d += 1
    return q


@dataclass(frozen=True)
class CoefficientSpec:
    """Trivial coefficient module: the integers, or the integers mod k."""

    modulus: int = 0  # 0 means integral coefficients

    def __post_init__(self):
        if self.modulus != 0 and self.modulus < 2:
            raise ValueError("modulus must be 0 (integers) or at least 2")

    @classmethod
    def integers(cls) -> "CoefficientSpec":
        return cls(0)

    @classmethod
    def modulo(cls, k: int) -> "CoefficientSpec":
        return cls(k)

    @property
    def is_modular(self) -> bool:
        return self.modulus != 0

    def label(self) -> str:
        return "Z" if self.modulus == 0 else f"Z/{self.modulus}"

    @classmethod
    def parse(cls, text: str) -> "CoefficientSpec":
        t = text.strip()
        if t == "Z":
            return cls(0)
        if t.startswith("Z/"):
            try:
                return cls(int(t[2:]))
            except ValueError:
                raise ValueError(f"bad coefficient spec {text!r}") from None
        raise ValueError(f"bad coefficient spec {text!r}")


INTEGERS = CoefficientSpec(0)


def _normal_factors(factors) -> tuple:
    """Canonical factor tuple: prime powers ascending, zeros last."""
    finite: list[int] = []
    free = 0
    for f in factors:
        f = int(f)
        if f == 0:
            free += 1
        elif f < 0:
            raise ValueError("factors must be nonnegative")
        elif f > 1:
            finite.extend(prime_power_factors(f))
    return tuple(sorted(finite)) + (0,) * free


@dataclass(frozen=True)
class GradedAbelianGroup:
    """One finitely generated abelian group per degree 0..max_degree.

    Every degree is normalized to prime powers ascending with one 0 per
    infinite cyclic factor sorted last, so tuple equality is multiset
    equality of invariant factors.
    """

    degrees: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "degrees", tuple(_normal_factors(d) for d in self.degrees)
        )

    @property
    def max_degree(self) -> int:
        return len(self.degrees) - 1

    def __getitem__(self, n: int) -> tuple:
        return self.degrees[n]

    def order(self, n: int) -> int:
        """Order of the degree-n group; 0 when a free factor is present."""
        out = 1
        for f in self.degrees[n]:
            if f == 0:
                return 0
            out *= f
        return out


def graded_report(
    group_spec: str, coeffs: CoefficientSpec, g: GradedAbelianGroup
) -> dict:
    """JSON-ready report; factors as decimal strings, 0 = infinite cyclic."""
    return {
        "format": GRADED_FORMAT,
        "group_spec": group_spec,
        "coefficients": coeffs.label(),
        "max_degree": g.max_degree,
        "degrees": [[str(f) for f in d] for d in g.degrees],
    }


def cochain_complex(
    res: FreeResolution, coeffs: CoefficientSpec = INTEGERS
) -> list:
    """Dual complex of a resolution under a trivial coefficient module.

    Entry n is the matrix of delta^n: each group-ring entry of d_(n+1)
    is replaced by its augmentation and the matrix transposed, so that
    cochains are row vectors and delta^(n+1) after delta^n is
    out[n].mul(out[n+1]).  Modular coefficients reduce entries to
    balanced residues; the composite then vanishes mod k instead of
    exactly.
    """
    k = coeffs.modulus
    out = []
    for n in range(1, res.max_degree + 1):
        aug = res.boundary_augmentation(n)
        mat = IntMatrix.from_dense(aug, ncols=res.ranks[n - 1]).transpose()
        if k:
            for row in mat.rows:
                for j in list(row):
                    v = row[j] % k
                    if v > k - v:
                        v -= k
                    if v:
                        row[j] = v
                    else:
                        del row[j]
        out.append(mat)
    return out


def _modular_cocycles(delta: IntMatrix, k: int) -> Lattice:
    # cochains x with x @ delta == 0 mod k: solve (x, y) @ [delta; k*I] = 0
    # exactly and forget the witness y
    r, s = delta.nrows, delta.ncols
    rows = [dict(row) for row in delta.transpose().rows]
    for i, row in enumerate(rows):
        row[r + i] = k
    full = kernel_lattice(IntMatrix(s, r + s, rows))
    return Lattice.from_rows(
        r, [{j: v for j, v in vec.items() if j < r} for vec in full.rows]
    )


def _graded_from_cochains(deltas: list, max_degree: int, k: int) -> GradedAbelianGroup:
    degrees = []
    for n in range(max_degree + 1):
        dn = deltas[n]
        if k:
            num = _modular_cocycles(dn, k)
        else:
            num = kernel_lattice(dn.transpose())
        den = [dict(r) for r in deltas[n - 1].rows if r] if n else []
        if k:
            den.extend({i: k} for i in range(dn.nrows))
        degrees.append(quotient_invariants(num, den))
    return GradedAbelianGroup(tuple(degrees))


def cohomology_groups(
    G: FiniteGroup,
    max_degree: int,
    coeffs: CoefficientSpec = INTEGERS,
    *,
    resolution: Optional[FreeResolution] = None,
    budget_seconds: Optional[float] = None,
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
) -> GradedAbelianGroup:
    """H^n(G; coeffs) for n = 0..max_degree.

    Needs a resolution one degree past max_degree (kernels of delta^n
    live inside the dual of F_n but are cut out by d_(n+1)); computes
    one when none is passed in.  A budget overrun raises
    ComputationalLimit whose .partial holds the degrees that did
    finish.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if resolution is None:
        try:
            resolution = extend_resolution(
                G,
                max_degree + 1,
                max_group_order=max_group_order,
                max_degree=max_degree + 1,
                budget_seconds=budget_seconds,
            )
        except ComputationalLimit as limit:
            done = (limit.completed_degree or 0) - 1
            if limit.partial is None or done < 0:
                raise
            deltas = cochain_complex(limit.partial, coeffs)
            partial = _graded_from_cochains(deltas, done, coeffs.modulus)
            raise ComputationalLimit(
                str(limit), partial=partial, completed_degree=done
            ) from limit
    else:
        if resolution.group.presentation.fingerprint() != G.presentation.fingerprint():
            raise ValueError("resolution belongs to a different group")
        if resolution.max_degree < max_degree + 1:
            raise ValueError(
                f"resolution reaches degree {resolution.max_degree}; "
                f"cohomology to degree {max_degree} needs {max_degree + 1}"
            )
    deltas = cochain_complex(resolution, coeffs)
    return _graded_from_cochains(deltas, max_degree, coeffs.modulus)


@dataclass(frozen=True)
class DegreeComparison:
    degree: int
    equal: bool
    left: tuple
    right: tuple


def compare_graded(
    g1: GradedAbelianGroup, g2: GradedAbelianGroup, max_degree: int
) -> list:
    """Degreewise verdicts on two graded groups through max_degree."""
    if g1.max_degree < max_degree or g2.max_degree < max_degree:
        raise ValueError("both graded groups must reach max_degree")
    return [
        DegreeComparison(n, g1[n] == g2[n], g1[n], g2[n])
        for n in range(max_degree + 1)
    ]


def first_difference(comparisons) -> Optional[int]:
    """Lowest differing degree of a compare_graded result, or None."""
    return next((c.degree for c in comparisons if not c.equal), None)


@dataclass(frozen=True)
class ReconstructionProfile:
    """Orders that pin down an abelian p-group A with p^m * A cyclic.

    total_order is |A|; tensor_orders[k-1] is |Z/p^k tensor A| for
    k = 1..m.  Consecutive ratios are p^n(k) with n(k) the number of
    summands of order at least p^k.
    """

    p: int
    m: int
    total_order: int
    tensor_orders: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "tensor_orders", tuple(int(t) for t in self.tensor_orders)
        )
        if not _is_prime(self.p):
            raise ValueError("p must be prime")
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if len(self.tensor_orders) != self.m:
            raise InconsistentProfile("need one tensor order per k = 1..m")
        if _p_exponent(self.total_order, self.p) is None:
            raise InconsistentProfile("total order must be a power of p")
        prev = 1
        for t in self.tensor_orders:
            if _p_exponent(t, self.p) is None:
                raise InconsistentProfile("tensor orders must be powers of p")
            if t < prev:
                raise InconsistentProfile("tensor orders must be nondecreasing")
            if self.total_order % t:
                raise InconsistentProfile("tensor orders must divide the total")
            prev = t


def tensor_profile(invariants, p: int, m: int) -> ReconstructionProfile:
    """Profile of the abelian p-group with the given p-power factors.

    |Z/p^k tensor A| multiplies p^min(e, k) over the factors p^e.
    Requires p^m * A cyclic, i.e. at most one factor above p^m.
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if m < 0:
        raise ValueError("m must be nonnegative")
    exps = []
    for f in invariants:
        e = _p_exponent(f, p)
        if e is None or e == 0:
            raise ValueError(f"{f} is not a positive power of {p}")
        exps.append(e)
    if sum(1 for e in exps if e > m) > 1:
        raise ValueError(f"p^{m} times the group is not cyclic")
    return ReconstructionProfile(
        p,
        m,
        p ** sum(exps),
        tuple(p ** sum(min(e, k) for e in exps) for k in range(1, m + 1)),
    )


def reconstruct_abelian_group(profile: ReconstructionProfile) -> tuple:
    """The unique abelian p-group matching a tensor-order profile.

    Returns invariant factors as prime powers ascending.  The count
    n(k) of summands of order at least p^k is the p-logarithm of the
    k-th tensor ratio; the summands below p^m follow by differencing,
    and cyclicity of p^m * A forces all remaining order into a single
    summand.  The answer is checked by recomputing its profile.
    """
    p, m = profile.p, profile.m
    total_exp = _p_exponent(profile.total_order, p)
    orders = (1,) + profile.tensor_orders
    n = [None] + [
        _p_exponent(orders[k] // orders[k - 1], p) for k in range(1, m + 1)
    ]
    for k in range(2, m + 1):
        if n[k] > n[k - 1]:
            raise InconsistentProfile("summand counts increase with k")
    factors = [p ** k for k in range(1, m) for _ in range(n[k] - n[k + 1])]
    rest = total_exp - sum(_p_exponent(f, p) for f in factors)
    if m == 0:
        if total_exp:
            factors.append(p ** total_exp)
    elif n[m] == 0:
        if rest:
            raise InconsistentProfile("leftover order with no summand to hold it")
    else:
        if rest < m * n[m]:
            raise InconsistentProfile("total order too small for the summand counts")
        factors.extend([p ** m] * (n[m] - 1))
        factors.append(p ** (rest - m * (n[m] - 1)))
    result = tuple(sorted(factors))
    if tensor_profile(result, p, m) != profile:
        raise InconsistentProfile("profile is not realizable")
    return result


@dataclass(frozen=True)
class TorsionBoundSpec:
    """Torsion bound parameters: factors are tested against p^(2l)."""

    p: int
    l: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("p must be prime")
        if self.l < 0:
            raise ValueError("l must be nonnegative")


@dataclass(frozen=True)
class TorsionBoundReport:
    passed: bool
    bound: int
    failures: tuple  # (degree, message)


def _is_cyclic(factors) -> bool:
    # canonical prime-power factors; a free factor tolerates no company
    if 0 in factors:
        return len(factors) == 1
    primes = [_prime_of(f) for f in factors]
    return len(primes) == len(set(primes))


def check_torsion_bound(
    g: GradedAbelianGroup, spec: TorsionBoundSpec
) -> TorsionBoundReport:
    """Does p^(2l) annihilate odd degrees and leave even ones cyclic?

    A factor survives multiplication by the bound exactly when it does
    not divide it; odd degrees must have no survivors, even degrees at
    most a cyclic group's worth.  Degree 0, a single infinite factor,
    passes on its own.
    """
    bound = spec.p ** (2 * spec.l)
    failures = []
    for n in range(g.max_degree + 1):
        survivors = [f for f in g[n] if f == 0 or bound % f]
        if n % 2:
            if survivors:
                failures.append(
                    (n, f"odd-degree factors {survivors} survive {bound}")
                )
        elif not _is_cyclic(survivors):
            failures.append(
                (n, f"even-degree factors {survivors} survive {bound} noncyclically")
            )
    return TorsionBoundReport(not failures, bound, tuple(failures))


@dataclass(frozen=True)
class CoprimeExtensionSpec:
    """Extension of Q by a cyclic normal subgroup of coprime order.

    Q acts on the subgroup (hence on its degree-2 cohomology) through
    the unit action_character modulo N_order; the action on degree 2i
    is its i-th power.
    """

    N_order: int
    Q: FiniteGroup
    action_character: int

    def __post_init__(self):
        if self.N_order < 1:
            raise ValueError("kernel order must be positive")
        if gcd(self.N_order, self.Q.order) != 1:
            raise ValueError("kernel and quotient orders must be coprime")
        if gcd(self.action_character, self.N_order) != 1:
            raise ValueError("action character must be a unit mod the kernel order")
        object.__setattr__(
            self, "action_character", self.action_character % self.N_order
        )


def predict_coprime_extension(
    spec: CoprimeExtensionSpec, H_Q: GradedAbelianGroup, max_degree: int
) -> GradedAbelianGroup:
    """Additive cohomology prediction for coprime cyclic-by-Q groups.

    The cohomology of the whole group is the Q-fixed part of the
    kernel's tensored against the quotient's, and coprimality kills
    every torsion product.  The fixed part of H^(2i) of the kernel is
    cyclic of order gcd(N, u^i - 1) for the character u, and odd
    degrees vanish, so degree n collects H^n(Q) plus each even step's
    fixed cyclic group tensored with H^(n-2i)(Q).
    """
    if H_Q.max_degree < max_degree:
        raise ValueError("H_Q must be computed to max_degree")
    N, u = spec.N_order, spec.action_character
    out = []
    for n in range(max_degree + 1):
        factors = list(H_Q[n])
        for i in range(1, n // 2 + 1):
            fixed = gcd(N, pow(u, i, N) - 1)
            # tensor the fixed cyclic group with H^(n-2i)(Q): gcds on
            # finite factors, free factors pass it through whole
            for f in H_Q[n - 2 * i]:
                d = fixed if f == 0 else gcd(fixed, f)
                if d > 1:
                    factors.append(d)
        out.append(factors)
    return GradedAbelianGroup(tuple(out))


def uct_order_check(
    integral: GradedAbelianGroup,
    modular: GradedAbelianGroup,
    k: int,
    max_degree: int,
) -> list:
    """Universal-coefficient order bookkeeping, degree by degree.

    |H^n(G; Z/k)| must equal |Z/k tensor H^n| * |Tor(Z/k, H^(n+1))|,
    both right-hand factors read off the integral cohomology by gcd
    arithmetic.  Needs integral computed one degree past max_degree.
    Returns one dict per degree with both sides and an ok flag.
    """
    if modular.max_degree < max_degree or integral.max_degree < max_degree + 1:
        raise ValueError(
            "need modular cohomology to max_degree and integral one degree past it"
        )
    out = []
    for n in range(max_degree + 1):
        tensor = 1
        for f in integral[n]:
            tensor *= k if f == 0 else gcd(k, f)
        tor = 1
        for f in integral[n + 1]:
            if f:
                tor *= gcd(k, f)
        have = modular.order(n)
        out.append(
            {
                "degree": n,
                "modular_order": have,
                "tensor_order": tensor,
                "tor_order": tor,
                "ok": have == tensor * tor,
            }
        )
    return out


def kunneth(
    g1: GradedAbelianGroup, g2: GradedAbelianGroup, max_degree: int
) -> GradedAbelianGroup:
    """Cohomology of a direct product from its factors' cohomology.

    Degree n sums H^i tensor H^j over i + j = n and the torsion
    products Tor(H^i, H^j) over i + j = n + 1; on canonical factors
    both operations are plain gcds, a free factor acting as identity
    for tensor and annihilating Tor.
    """
    if g1.max_degree < max_degree or g2.max_degree < max_degree:
        raise ValueError("both inputs must be computed to max_degree")
    if g1[0] != (0,) or g2[0] != (0,):
        raise ValueError("degree 0 must be a single infinite cyclic factor")
    out = []
    for n in range(max_degree + 1):
        factors = []
        for i in range(n + 1):
            for a in g1[i]:
                for b in g2[n - i]:
                    if a == 0:
                        factors.append(b)
                    elif b == 0:
                        factors.append(a)
                    elif gcd(a, b) > 1:
                        factors.append(gcd(a, b))
        for i in range(1, n + 1):
            # Tor lives one degree up; free factors contribute nothing
            for a in g1[i]:
                for b in g2[n + 1 - i]:
                    if a and b and gcd(a, b) > 1:
                        factors.append(gcd(a, b))
        out.append(factors)
    return GradedAbelianGroup(tuple(out))
