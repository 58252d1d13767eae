"""Constructors for the group families the package studies.

Two parametrized families of finite p-groups are built from scratch as
pc presentations and then validated twice: the presentation must pass
the overlap consistency test, and the defining relations are replayed
on the constructed elements (including the subgroup-structure side
conditions), so a bug here cannot silently produce the wrong group.
Also provides cyclic groups, direct products, semidirect products of a
cyclic normal subgroup by a pc group, and the classical pair of
non-isomorphic order-24 groups with isomorphic cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import ConstructionError, InvalidAction, InvalidFamilyParameters
from .group import FiniteGroup
from .presentation import PcPresentation


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (p, n, m, q) for the odd-p family G(m, q).

    p is an odd prime, n >= 1 divides p - 1, m >= 0, and q is prime to
    p; q only matters modulo p.  The 2-group family H(m, q) takes just
    (m, q) with q in {1, 3}.
    """

    p: int
    n: int
    m: int
    q: int

    def validate(self):
        if not _is_prime(self.p) or self.p == 2:
            raise InvalidFamilyParameters(f"p = {self.p} must be an odd prime")
        if self.n < 1 or (self.p - 1) % self.n != 0:
            raise InvalidFamilyParameters(
                f"n = {self.n} must be >= 1 and divide p - 1 = {self.p - 1}"
            )
        if self.m < 0:
            raise InvalidFamilyParameters(f"m = {self.m} must be >= 0")
        if gcd(self.q, self.p) != 1:
            raise InvalidFamilyParameters(
                f"q = {self.q} must be coprime to p = {self.p}"
            )


def _require(cond: bool, what: str):
    if not cond:
        raise ConstructionError(f"internal construction error: {what}")


def _check_abelian_generators(G: FiniteGroup, gens) -> bool:
    return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)


def construct_family_G(params: FamilyParams) -> FiniteGroup:
    """Build G(m, q) of order p**(m + n + 2).

    Generators: B of order p, A of order p**(m+2), and the chain
    c_1, ..., c_(n-1) of order p defined by c_1 = [B, A] and
    c_k = [B, c_(k-1)]; the chain closes with [B, c_(n-1)] =
    A**(q * p**(m+1)).  B therefore acts on the abelian group
    <A, c_1, ..., c_(n-1)> by an automorphism of order p.
    """
    params.validate()
    p, n, m = params.p, params.n, params.m
    q = params.q % p
    pm1 = p ** (m + 1)
    pm2 = p ** (m + 2)

    orders = (p, pm2) + (p,) * (n - 1)
    names = ("B", "A") + tuple(f"c{k}" for k in range(1, n))
    comms = {}
    if n == 1:
        comms[(1, 0)] = ((1, (-q * pm1) % pm2),)
    else:
        comms[(1, 0)] = ((2, p - 1),)  # [A, B] = c1**-1
        for k in range(1, n - 1):
            comms[(k + 1, 0)] = ((k + 2, p - 1),)  # [c_k, B] = c_(k+1)**-1
        comms[(n, 0)] = ((1, (-q * pm1) % pm2),)  # [c_(n-1), B] = A**(-q p^(m+1))

    defs = (None, None) + tuple(
        ("commutator", 0, k) for k in range(1, n)
    )
    pres = PcPresentation(orders, commutators=comms, names=names)
    try:
        G = FiniteGroup(
            pres,
            name=f"G({m},{q};p={p},n={n})",
            spec_string=f"familyG:p={p},n={n},m={m},q={q}",
            generator_definitions=defs,
        )
    except Exception as exc:  # inconsistency here means the formulas are wrong
        raise ConstructionError(f"internal construction error: {exc}") from exc

    _require(G.order == p ** (m + n + 2), "wrong group order")

    B = G.generator(0)
    A = G.generator(1)
    _require(G.power(B, p) == 0, "B**p != 1")
    _require(G.power(A, pm2) == 0, "A**(p^(m+2)) != 1")
    _require(G.power(A, pm1) != 0, "A has too small an order")

    # left-normed commutator chain closes on the designated power of A
    c = G.comm(B, A)
    for _ in range(n - 1):
        c = G.comm(B, c)
    _require(c == G.power(A, q * pm1), "commutator chain does not close")

    dgens = G.derived_generators()
    _require(_check_abelian_generators(G, dgens), "derived subgroup not abelian")
    _require(all(G.comm(A, h) == 0 for h in dgens), "[A, G'] != 1")
    Ap = G.power(A, p)
    _require(
        all(G.mul(Ap, t) == G.mul(t, Ap) for t in G.generators()),
        "A**p is not central",
    )

    # <A, G'> must be C_(p^(m+2)) x C_p^(n-1): order, exponent and
    # p-socle size pin down that abelian type uniquely
    N = G.subgroup([A, *dgens])
    _require(len(N) == p ** (m + n + 1), "<A, G'> has wrong order")
    _require(
        all(G.power(x, pm2) == 0 for x in N), "<A, G'> exponent too large"
    )
    socle = sum(1 for x in N if G.power(x, p) == 0)
    _require(socle == p**n, "<A, G'> has wrong p-socle")

    _require(len(G.subgroup([A, B])) == G.order, "<A, B> is a proper subgroup")
    return G


def construct_family_H(m: int, q: int) -> FiniteGroup:
    """Build the 2-group H(m, q), q in {1, 3}.

    Generators: B of order 8, A of order 2**(m+4) and c = [B, A] of
    order 4, with [B, c] = A**(q * 2**(m+2)) and [A, c] = 1.  The
    group order is recorded from the consistent presentation rather
    than assumed; regression tests pin it at 2**(m+9).
    """
    if m < 0:
        raise InvalidFamilyParameters(f"m = {m} must be >= 0")
    if q not in (1, 3):
        raise InvalidFamilyParameters(f"q = {q} must be 1 or 3")
    o_a = 2 ** (m + 4)
    t = 2 ** (m + 2)

    orders = (8, o_a, 4)
    names = ("B", "A", "c")
    comms = {
        (1, 0): ((2, 3),),  # [A, B] = c**-1
        (2, 0): ((1, (4 - q) * t),),  # [c, B] = A**(-q 2^(m+2))
    }
    pres = PcPresentation(orders, commutators=comms, names=names)
    try:
        H = FiniteGroup(
            pres,
            name=f"H({m},{q})",
            spec_string=f"familyH:m={m},q={q}",
            generator_definitions=(None, None, ("commutator", 0, 1)),
        )
    except Exception as exc:
        raise ConstructionError(f"internal construction error: {exc}") from exc

    B = H.generator(0)
    A = H.generator(1)
    _require(H.power(B, 8) == 0, "B**8 != 1")
    _require(H.power(A, o_a) == 0, "A**(2^(m+4)) != 1")
    _require(H.power(A, o_a // 2) != 0, "A has too small an order")
    _require(H.comm(B, H.comm(B, A)) == H.power(A, q * t), "[B,[B,A]] mismatch")

    A4 = H.power(A, 4)
    _require(
        all(H.mul(A4, g) == H.mul(g, A4) for g in H.generators()),
        "A**4 is not central",
    )
    dgens = H.derived_generators()
    _require(all(H.comm(A, h) == 0 for h in dgens), "[A, H'] != 1")
    _require(len(H.subgroup([A, B])) == H.order, "<A, B> is a proper subgroup")
    return H


def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError(f"cyclic group order {k} must be >= 1")
    if k == 1:
        pres = PcPresentation(())
    else:
        pres = PcPresentation((k,), names=("g",))
    return FiniteGroup(pres, name=f"C_{k}", spec_string=f"cyclic:{k}")


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """External direct product, presented on the concatenated generators."""
    p1, p2 = G1.presentation, G2.presentation
    L1 = p1.ngens

    def shift(word):
        return tuple((g + L1, e) for g, e in word)

    comms = dict(p1.commutators)
    for (j, i), w in p2.commutators.items():
        comms[(j + L1, i + L1)] = shift(w)
    names = list(p1.names)
    for nm in p2.names:
        while nm in names:
            nm += "'"
        names.append(nm)
    pres = PcPresentation(
        p1.orders + p2.orders,
        powers=p1.powers + tuple(shift(w) for w in p2.powers),
        commutators=comms,
        names=names,
    )
    defs = list(G1.generator_definitions)
    for d in G2.generator_definitions:
        defs.append(d if d is None else (d[0], d[1] + L1, d[2] + L1))
    spec = None
    if G1.spec_string and G2.spec_string:
        spec = f"product:({G1.spec_string})x({G2.spec_string})"
    return FiniteGroup(
        pres,
        name=f"{G1.name} x {G2.name}",
        spec_string=spec,
        generator_definitions=defs,
    )


def semidirect_cyclic(n_order: int, Q: FiniteGroup, action) -> FiniteGroup:
    """Split extension of C_(n_order) by Q.

    `action` gives, per pc generator of Q, the unit u with
    g**-1 t g = t**u on the normal generator t.  The map must be
    multiplicative on Q's relations (checked against the presentation;
    units are abelian, so only the abelianized relations matter).
    """
    if n_order < 2:
        raise ValueError("normal subgroup order must be >= 2")
    pq = Q.presentation
    L = pq.ngens
    if hasattr(action, "get"):
        units = [action.get(k, 1) for k in range(L)]
    else:
        units = list(action)
        if len(units) != L:
            raise InvalidAction("need one unit per generator of Q")
    units = [u % n_order for u in units]
    for u in units:
        if gcd(u, n_order) != 1:
            raise InvalidAction(f"unit {u} not invertible mod {n_order}")

    def unit_of_word(word):
        v = 1
        for g, e in word:
            v = v * pow(units[g], e, n_order) % n_order
        return v

    for i in range(L):
        lhs = pow(units[i], pq.orders[i], n_order)
        if lhs != unit_of_word(pq.powers[i]):
            raise InvalidAction(f"action violates the power relation of g{i + 1}")
    for (j, i), w in pq.commutators.items():
        if unit_of_word(w) != 1:
            raise InvalidAction(f"action violates the relation [g{j + 1}, g{i + 1}]")

    comms = dict(pq.commutators)
    for i, u in enumerate(units):
        if u != 1:
            comms[(L, i)] = ((L, u - 1),)
    names = list(pq.names)
    tname = "t"
    while tname in names:
        tname += "'"
    pres = PcPresentation(
        pq.orders + (n_order,),
        powers=pq.powers + ((),),
        commutators=comms,
        names=names + [tname],
    )
    return FiniteGroup(
        pres,
        name=f"C_{n_order} by {Q.name}",
        generator_definitions=tuple(Q.generator_definitions) + (None,),
    )


_AA_CHOICES = ("d8", "c4xc2")


def alperin_atiyah_pair(q_choice: str):
    """The order-24 pair: two non-isomorphic split extensions of C_3.

    Both members use the same order-8 group Q (dihedral for "d8",
    C_4 x C_2 for "c4xc2"); each acts on C_3 through a faithful C_2
    quotient, inverting it.  The kernels are the two order-4 subgroup
    types: member 1 kills a C_4, member 2 kills a C_2 x C_2, and that
    asymmetry is exactly what separates the two groups.
    """
    choice = str(q_choice).lower().replace("_", "")
    if choice not in _AA_CHOICES:
        raise ValueError(f"q_choice must be one of {_AA_CHOICES}, got {q_choice!r}")
    if choice == "d8":
        pres = PcPresentation((2, 4), commutators={(1, 0): ((1, 2),)}, names=("a", "b"))
        Q = FiniteGroup(pres, name="D_8")
    else:
        pres = PcPresentation((2, 4), names=("a", "b"))
        Q = FiniteGroup(pres, name="C_4 x C_2")

    pair = []
    for member, units in ((1, [2, 1]), (2, [1, 2])):
        G = semidirect_cyclic(3, Q, units)
        if G.order != 24:
            raise ConstructionError("internal construction error: order != 24")
        # the subgroup of Q acting trivially must be C_4 for member 1
        # and C_2 x C_2 for member 2
        kernel = [
            x
            for x in Q.elements()
            if all(
                pow(u, e, 3) == 1
                for u, e in zip(units, Q.exponents(x))
            )
        ]
        kexp = max(Q.element_order(x) for x in kernel)
        if len(kernel) != 4 or kexp != (4 if member == 1 else 2):
            raise ConstructionError("internal construction error: wrong kernel type")
        G.name = f"AA24({choice},{member})"
        G.spec_string = f"aa24:{choice}:{member}"
        pair.append(G)
    return tuple(pair)
