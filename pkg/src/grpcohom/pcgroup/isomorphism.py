"""Isomorphism testing by pruned generator-image search.

The search fixes the pc generating sequence of the first group, keeps
only its freely chosen generators (commutator-defined ones follow
automatically), and tries images in the second group ordered by
element order, then element index.  A partial assignment dies as soon
as any fully-determined defining relation fails, so exhaustion of the
tree is a proof of non-isomorphism.  Everything is deterministic: when
an isomorphism exists, the lowest-index witness is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .group import FiniteGroup


@dataclass(frozen=True)
class IsoCertificate:
    """Outcome of an isomorphism test.

    verdict is "isomorphic", "not_isomorphic" or "undecided" (budget
    ran out).  For "isomorphic", generator_images[k] is the image in
    the second group of the first group's k-th pc generator, and the
    map has been re-verified relation by relation.  not_isomorphic
    carries either a distinguishing invariant (name, value1, value2)
    or exhausted=True meaning the full pruned search tree was walked.
    """

    verdict: str
    generator_images: Optional[tuple] = None
    distinguishing_invariant: Optional[tuple] = None
    exhausted: bool = False
    candidates_tried: int = 0

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "generator_images": list(self.generator_images)
            if self.generator_images is not None
            else None,
            "distinguishing_invariant": list(self.distinguishing_invariant)
            if self.distinguishing_invariant is not None
            else None,
            "exhausted": self.exhausted,
            "candidates_tried": self.candidates_tried,
        }


class _BudgetExceeded(Exception):
    pass


def verify_generator_images(G1: FiniteGroup, G2: FiniteGroup, images) -> bool:
    """True iff mapping G1's pc generators to `images` is an isomorphism."""
    images = list(images)
    pres = G1.presentation
    L = pres.ngens
    if len(images) != L or G1.order != G2.order:
        return False
    for i in range(L):
        lhs = G2.power(images[i], pres.orders[i])
        if lhs != G2.eval_word(pres.powers[i], images):
            return False
    for j in range(L):
        for i in range(j):
            lhs = G2.comm(images[j], images[i])
            if lhs != G2.eval_word(pres.commutator_word(j, i), images):
                return False
    return len(G2.subgroup(images)) == G2.order


def _invariant_mismatch(G1: FiniteGroup, G2: FiniteGroup):
    checks = [
        ("order", G1.order, G2.order),
        ("abelianization", G1.abelianization(), G2.abelianization()),
    ]
    for name, v1, v2 in checks:
        if v1 != v2:
            return name, v1, v2
    inv1, inv2 = G1.invariants(), G2.invariants()
    for name in ("exponent", "center_order", "derived_order"):
        v1, v2 = getattr(inv1, name), getattr(inv2, name)
        if v1 != v2:
            return name, v1, v2
    if inv1.order_profile != inv2.order_profile:
        return (
            "order_profile",
            tuple(sorted(inv1.order_profile.items())),
            tuple(sorted(inv2.order_profile.items())),
        )
    return None


def is_isomorphic(
    G1: FiniteGroup,
    G2: FiniteGroup,
    *,
    budget: Optional[int] = None,
    use_invariants: bool = True,
) -> IsoCertificate:
    """Decide whether two pc groups are isomorphic.

    Cheap invariants run first; if they all agree, the generator-image
    search settles the question.  `budget` caps the number of candidate
    assignments tried; hitting the cap returns verdict "undecided",
    which is weaker than "not_isomorphic".  Pass use_invariants=False
    to skip the shortcut and force a full search, e.g. to produce an
    exhaustion certificate even when an invariant already separates
    the groups.
    """
    if use_invariants:
        mismatch = _invariant_mismatch(G1, G2)
        if mismatch is not None:
            return IsoCertificate("not_isomorphic", distinguishing_invariant=mismatch)
    elif G1.order != G2.order:
        return IsoCertificate(
            "not_isomorphic",
            distinguishing_invariant=("order", G1.order, G2.order),
        )
    if G1.order == 1:
        return IsoCertificate("isomorphic", generator_images=())

    pres = G1.presentation
    L = pres.ngens
    defs = G1.generator_definitions
    free = [k for k in range(L) if defs[k] is None]
    gen_orders = [G1.element_order(G1.generator(k)) for k in range(L)]

    by_order: dict = {}
    for x, d in enumerate(G2.element_orders()):
        by_order.setdefault(d, []).append(x)
    candidates = {k: by_order.get(gen_orders[k], []) for k in free}
    if any(not candidates[k] for k in free):
        return IsoCertificate("not_isomorphic", exhausted=True)

    relations = []
    for i in range(L):
        touched = {i} | {g for g, _ in pres.powers[i]}
        relations.append(("power", i, pres.powers[i], max(touched)))
    for j in range(L):
        for i in range(j):
            w = pres.commutator_word(j, i)
            touched = {i, j} | {g for g, _ in w}
            relations.append(("comm", (j, i), w, max(touched)))

    tried = 0

    def relations_hold(images) -> bool:
        for kind, who, word, top in relations:
            if any(images[g] is None for g in range(top + 1)):
                continue
            if kind == "power":
                lhs = G2.power(images[who], pres.orders[who])
            else:
                j, i = who
                lhs = G2.comm(images[j], images[i])
            if lhs != G2.eval_word(word, images):
                return False
        return True

    def propagate(images):
        for k in range(L):
            if images[k] is None and defs[k] is not None:
                _, j, i = defs[k]
                if images[j] is not None and images[i] is not None:
                    images[k] = G2.comm(images[j], images[i])

    def dfs(pos, images):
        nonlocal tried
        if pos == len(free):
            full = tuple(images)
            if len(G2.subgroup(full)) == G2.order and verify_generator_images(
                G1, G2, full
            ):
                return full
            return None
        k = free[pos]
        for x in candidates[k]:
            if budget is not None and tried >= budget:
                raise _BudgetExceeded
            tried += 1
            nxt = list(images)
            nxt[k] = x
            propagate(nxt)
            if not relations_hold(nxt):
                continue
            found = dfs(pos + 1, nxt)
            if found is not None:
                return found
        return None

    try:
        witness = dfs(0, [None] * L)
    except _BudgetExceeded:
        return IsoCertificate("undecided", candidates_tried=tried)
    if witness is not None:
        return IsoCertificate(
            "isomorphic", generator_images=witness, candidates_tried=tried
        )
    return IsoCertificate("not_isomorphic", exhausted=True, candidates_tried=tried)
