"""Power-commutator presentations and the left-collection rewriter.

Conventions used throughout:

* generators are indexed 0..L-1 and written multiplicatively;
* words are tuples of (generator, exponent) pairs, read left to right;
* [x, y] means x**-1 * y**-1 * x * y, so g_j * g_i =
  g_i * g_j * [g_j, g_i] for j > i, which is exactly the rewrite that
  collection applies to an out-of-order pair.
"""

from __future__ import annotations

import hashlib
import json

from ..errors import CollectionBudgetExceeded

# A word in the generators: ((gen, exp), ...).  Exponents in a *normal*
# word lie in [1, order-1] and generator indices strictly increase.
Word = tuple[tuple[int, int], ...]

DEFAULT_COLLECT_BUDGET = 2_000_000

_FORMAT = "grpcohom.pcpres/1"


def inverse_word(word) -> Word:
    """Formal inverse: reverse the word and negate exponents."""
    return tuple((g, -e) for g, e in reversed(word))


def word_of(exponents) -> Word:
    """Normal word for an exponent vector, zero entries omitted."""
    return tuple((g, e) for g, e in enumerate(exponents) if e)


class PcPresentation:
    """Immutable power-commutator presentation.

    orders: relative order r_i >= 2 for each generator.
    powers: for each i, the word equal to g_i**r_i; must use only
        generators > i and be in normal form.  Defaults to trivial.
    commutators: {(j, i): word} for j > i with [g_j, g_i] nontrivial;
        the word must use only generators > i and be in normal form.
    names: display names, defaults to g1..gL.
    """

    __slots__ = ("orders", "powers", "commutators", "names", "_fingerprint")

    def __init__(self, orders, powers=None, commutators=None, names=None):
        orders = tuple(int(r) for r in orders)
        L = len(orders)
        for r in orders:
            if r < 2:
                raise ValueError(f"relative order {r} < 2")
        if powers is None:
            powers = ((),) * L
        else:
            powers = tuple(tuple((int(g), int(e)) for g, e in w) for w in powers)
        if len(powers) != L:
            raise ValueError("need one power word per generator")
        for i, w in enumerate(powers):
            self._check_normal_word(w, i, L, orders, f"power word of g{i + 1}")
        comms = {}
        if commutators:
            items = commutators.items() if hasattr(commutators, "items") else commutators
            for key, w in items:
                j, i = int(key[0]), int(key[1])
                if not (0 <= i < j < L):
                    raise ValueError(f"commutator key ({j}, {i}) needs L > j > i >= 0")
                w = tuple((int(g), int(e)) for g, e in w)
                self._check_normal_word(w, i, L, orders, f"[g{j + 1}, g{i + 1}]")
                if w:
                    comms[(j, i)] = w
        if names is None:
            names = tuple(f"g{k + 1}" for k in range(L))
        else:
            names = tuple(str(s) for s in names)
            if len(names) != L or len(set(names)) != L:
                raise ValueError("names must be distinct, one per generator")
        self.orders = orders
        self.powers = powers
        self.commutators = comms
        self.names = names
        self._fingerprint = None

    @staticmethod
    def _check_normal_word(w, floor, L, orders, what):
        prev = floor
        for g, e in w:
            if not (floor < g < L):
                raise ValueError(f"{what}: generator index {g} not in ({floor}, {L})")
            if g <= prev and prev != floor:
                raise ValueError(f"{what}: generator indices must strictly increase")
            if not (1 <= e < orders[g]):
                raise ValueError(f"{what}: exponent {e} outside [1, {orders[g]})")
            prev = g

    @property
    def ngens(self) -> int:
        return len(self.orders)

    def group_order(self) -> int:
        n = 1
        for r in self.orders:
            n *= r
        return n

    def p_group_prime(self):
        """The common prime when all relative orders are powers of one
        prime, else None."""
        if not self.orders:
            return None
        n = self.group_order()
        p = 2
        while p * p <= n:
            if n % p == 0:
                break
            p += 1
        else:
            p = n
        while n % p == 0:
            n //= p
        return p if n == 1 else None

    def commutator_word(self, j, i) -> Word:
        return self.commutators.get((j, i), ())

    # serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "format": _FORMAT,
            "orders": list(self.orders),
            "powers": [[list(t) for t in w] for w in self.powers],
            "commutators": [
                [j, i, [list(t) for t in w]]
                for (j, i), w in sorted(self.commutators.items())
            ],
            "names": list(self.names),
        }

    @classmethod
    def from_json(cls, data) -> "PcPresentation":
        if data.get("format") != _FORMAT:
            raise ValueError(f"unsupported presentation format: {data.get('format')!r}")
        return cls(
            data["orders"],
            powers=data["powers"],
            commutators={(j, i): [tuple(t) for t in w] for j, i, w in data["commutators"]},
            names=data.get("names"),
        )

    def fingerprint(self) -> str:
        """sha256 of the canonical serialization, names excluded."""
        if self._fingerprint is None:
            doc = self.to_json()
            del doc["names"]
            blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
            self._fingerprint = hashlib.sha256(blob.encode()).hexdigest()
        return self._fingerprint

    def __eq__(self, other):
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return (
            self.orders == other.orders
            and self.powers == other.powers
            and self.commutators == other.commutators
        )

    def __hash__(self):
        return hash((self.orders, self.powers, tuple(sorted(self.commutators.items()))))

    def __repr__(self):
        return f"PcPresentation(orders={self.orders}, ngens={self.ngens})"


def collect(pres: PcPresentation, word, budget: int = DEFAULT_COLLECT_BUDGET):
    """Left collection: rewrite `word` to its normal exponent vector.

    Applies three moves until none fires: reduce an exponent into
    [0, r) via the power relation, merge adjacent equal generators,
    and push an out-of-order generator left past its neighbour using
    the commutator relation.  Each loop iteration spends one unit of
    `budget`; raises CollectionBudgetExceeded when it runs out.
    """
    orders = pres.orders
    powers = pres.powers
    comms = pres.commutators
    L = len(orders)

    w = []
    for g, e in word:
        if not 0 <= g < L:
            raise ValueError(f"generator index {g} out of range")
        if e:
            w.append((g, e))

    def reduce_exponent(pos, g, e):
        # g**e -> g**(e mod r) * (power word)**(e div r); the power word
        # commutes with g, so this is exact for negative e too
        q, e0 = divmod(e, orders[g])
        repl = [(g, e0)] if e0 else []
        pw = powers[g]
        if q > 0:
            repl.extend(list(pw) * q)
        else:
            repl.extend(list(inverse_word(pw)) * (-q))
        w[pos : pos + 1] = repl

    i = 0
    steps = 0
    while i < len(w):
        steps += 1
        if steps > budget:
            raise CollectionBudgetExceeded(
                f"collection budget exceeded after {budget} steps"
            )
        g, e = w[i]
        if e < 0 or e >= orders[g]:
            reduce_exponent(i, g, e)
            i = max(i - 1, 0)
            continue
        if i + 1 < len(w):
            g2, e2 = w[i + 1]
            if g2 == g:
                w[i : i + 2] = [(g, e + e2)] if e + e2 else []
                i = max(i - 1, 0)
                continue
            if g2 < g:
                if e2 < 0 or e2 >= orders[g2]:
                    # the swap rule peels single letters, so the right
                    # neighbour must be in range first
                    reduce_exponent(i + 1, g2, e2)
                    continue
                cw = comms.get((g, g2), ())
                if not cw:
                    w[i : i + 2] = [(g2, e2), (g, e)]
                else:
                    repl = [(g, e - 1)] if e > 1 else []
                    repl.append((g2, 1))
                    repl.append((g, 1))
                    repl.extend(cw)
                    if e2 > 1:
                        repl.append((g2, e2 - 1))
                    w[i : i + 2] = repl
                i = max(i - 1, 0)
                continue
        i += 1

    out = [0] * L
    for g, e in w:
        out[g] = e
    return tuple(out)


def check_consistency(pres: PcPresentation, budget: int = DEFAULT_COLLECT_BUDGET):
    """Run the overlap tests; return the list of violations (empty = pass).

    A consistent presentation presents a group of order exactly
    prod(r_i), with collection computing its multiplication.  The four
    test families compare the two ways of collecting each overlapped
    word; every violation is reported as
    (kind, (k, j, i), lhs, rhs) with normal-form tuples lhs != rhs.
    """
    orders = pres.orders
    L = pres.ngens

    def nf(word):
        return collect(pres, word, budget)

    def mul(nfa, word):
        return collect(pres, word_of(nfa) + tuple(word), budget)

    violations = []

    def record(kind, idx, lhs, rhs):
        if lhs != rhs:
            violations.append((kind, idx, lhs, rhs))

    for k in range(L):
        for j in range(k):
            for i in range(j):
                x = nf(((j, 1), (i, 1)))
                lhs = collect(pres, ((k, 1),) + word_of(x), budget)
                y = nf(((k, 1), (j, 1)))
                rhs = mul(y, ((i, 1),))
                record("associativity", (k, j, i), lhs, rhs)
    for j in range(L):
        for i in range(j):
            rj = orders[j]
            x = nf(((j, rj),))
            lhs = mul(x, ((i, 1),))
            y = nf(((j, 1), (i, 1)))
            rhs = collect(pres, ((j, rj - 1),) + word_of(y), budget)
            record("power-left", (j, j, i), lhs, rhs)
            ri = orders[i]
            x = nf(((i, ri),))
            lhs = collect(pres, ((j, 1),) + word_of(x), budget)
            y = nf(((j, 1), (i, 1)))
            rhs = mul(y, ((i, ri - 1),))
            record("power-right", (j, i, i), lhs, rhs)
    for i in range(L):
        ri = orders[i]
        x = nf(((i, ri),))
        lhs = mul(x, ((i, 1),))
        rhs = collect(pres, ((i, 1),) + word_of(x), budget)
        record("power-overlap", (i, i, i), lhs, rhs)

    return violations
