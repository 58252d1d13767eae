"""Concrete finite groups backed by a consistent pc presentation.

Elements are integers 0..order-1, the mixed-radix encoding of the
normal-form exponent vector (g_1 most significant).  Index 0 is the
identity.  Groups of order <= table_bound get a full multiplication
table; larger groups multiply through lazily memoized generator
columns, so nothing ever needs more than about |G| * ngens collections.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import NamedTuple, Optional

from ..errors import InconsistentPresentation
from ..intlinalg import cokernel_invariants
from .presentation import (
    PcPresentation,
    check_consistency,
    collect,
    inverse_word,
    word_of,
)

DEFAULT_TABLE_BOUND = 4096


class GroupInvariants(NamedTuple):
    """Cheap isomorphism invariants; any mismatch separates two groups."""

    order: int
    exponent: int
    center_order: int
    derived_order: int
    order_profile: dict


class FiniteGroup:
    """A finite group with normal-form arithmetic on element indices.

    generator_definitions marks each pc generator as freely chosen
    (None) or defined from earlier ones as ("commutator", j, i) meaning
    g = [g_j, g_i]; isomorphism search enumerates images only for the
    free generators.
    """

    def __init__(
        self,
        presentation: PcPresentation,
        *,
        name: Optional[str] = None,
        spec_string: Optional[str] = None,
        generator_definitions=None,
        table_bound: int = DEFAULT_TABLE_BOUND,
        consistency_check: bool = True,
    ):
        if consistency_check:
            violations = check_consistency(presentation)
            if violations:
                raise InconsistentPresentation(violations)
        self.presentation = presentation
        self.order = presentation.group_order()
        self.ngens = presentation.ngens
        self.name = name or f"pc group of order {self.order}"
        self.spec_string = spec_string
        if generator_definitions is None:
            generator_definitions = (None,) * self.ngens
        else:
            generator_definitions = tuple(generator_definitions)
            if len(generator_definitions) != self.ngens:
                raise ValueError("one definition entry per generator")
            for k, d in enumerate(generator_definitions):
                if d is None:
                    continue
                kind, j, i = d
                if kind != "commutator" or not (0 <= i < k and 0 <= j < k):
                    raise ValueError(f"bad definition for generator {k}: {d!r}")
        self.generator_definitions = generator_definitions

        weights = [0] * self.ngens
        w = 1
        for k in range(self.ngens - 1, -1, -1):
            weights[k] = w
            w *= presentation.orders[k]
        self._weights = tuple(weights)

        self._table = None
        self._columns = [None] * self.ngens
        self._inv_memo = {}
        self._order_arr = None
        self._derived = None
        self._derived_gens = None
        self._center = None
        self._abelianization = None
        if self.order <= table_bound:
            self._build_table()

    # ---- element encoding ----

    def exponents(self, idx: int) -> tuple:
        if not 0 <= idx < self.order:
            raise ValueError(f"element index {idx} out of range")
        out = []
        for k in range(self.ngens):
            q, idx = divmod(idx, self._weights[k])
            out.append(q)
        return tuple(out)

    def index_of(self, exps) -> int:
        exps = list(exps)
        if len(exps) != self.ngens:
            raise ValueError("wrong exponent vector length")
        idx = 0
        for k, e in enumerate(exps):
            idx += (e % self.presentation.orders[k]) * self._weights[k]
        return idx

    def generator(self, k: int) -> int:
        return self._weights[k]

    def generators(self) -> list:
        return [self._weights[k] for k in range(self.ngens)]

    def elements(self) -> range:
        return range(self.order)

    # ---- arithmetic ----

    def _collect_to_index(self, word) -> int:
        nf = collect(self.presentation, word)
        idx = 0
        for k, e in enumerate(nf):
            idx += e * self._weights[k]
        return idx

    def _column(self, k: int) -> dict:
        col = self._columns[k]
        if col is None:
            col = self._columns[k] = {}
        return col

    def _right_gen(self, x: int, k: int) -> int:
        """x * g_k through the lazy column for generator k."""
        col = self._column(k)
        y = col.get(x)
        if y is None:
            y = self._collect_to_index(word_of(self.exponents(x)) + ((k, 1),))
            col[x] = y
        return y

    def _build_table(self):
        n = self.order
        cols = []
        for k in range(self.ngens):
            cols.append([self._right_gen(x, k) for x in range(n)])
        parent = [None] * n
        for y in range(1, n):
            exps = self.exponents(y)
            k = max(i for i, e in enumerate(exps) if e)
            parent[y] = (k, y - self._weights[k])
        table = [[0] * n for _ in range(n)]
        for x in range(n):
            row = table[x]
            row[0] = x
            for y in range(1, n):
                k, z = parent[y]
                row[y] = cols[k][row[z]]
        self._table = table

    @property
    def table(self):
        """Full multiplication table (list of rows) or None for large groups."""
        return self._table

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        z = a
        for k, e in enumerate(self.exponents(b)):
            for _ in range(e):
                z = self._right_gen(z, k)
        return z

    def inv(self, a: int) -> int:
        y = self._inv_memo.get(a)
        if y is None:
            y = self._collect_to_index(inverse_word(word_of(self.exponents(a))))
            self._inv_memo[a] = y
        return y

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 0
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def conj(self, a: int, b: int) -> int:
        """b**-1 * a * b."""
        return self.mul(self.mul(self.inv(b), a), b)

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a**-1 * b**-1 * a * b."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def eval_word(self, word, images) -> int:
        """Evaluate a presentation word with generator k mapped to images[k]."""
        z = 0
        for g, e in word:
            z = self.mul(z, self.power(images[g], e))
        return z

    def element_order(self, a: int) -> int:
        if self._order_arr is not None:
            return self._order_arr[a]
        d = 1
        x = a
        while x:
            x = self.mul(x, a)
            d += 1
        return d

    def element_orders(self) -> list:
        """Order of every element, indexed by element; computed once."""
        if self._order_arr is None:
            arr = [0] * self.order
            arr[0] = 1
            for a in range(1, self.order):
                if arr[a]:
                    continue
                # chain holds a, a^2, ..., a^n with a^n the identity,
                # so ord(a^t) = n / gcd(n, t) fills the whole subgroup
                chain = [a]
                x = self.mul(a, a)
                while x != a:
                    chain.append(x)
                    x = self.mul(x, a)
                n = len(chain)
                for t, y in enumerate(chain, start=1):
                    if y:
                        arr[y] = n // gcd(n, t)
            self._order_arr = arr
        return self._order_arr

    # ---- subgroups ----

    def subgroup(self, gens) -> tuple:
        """Sorted element list of the subgroup generated by `gens`."""
        gens = [g for g in gens if g]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def normal_closure(self, gens):
        """Smallest normal subgroup containing `gens`.

        Returns (sorted element tuple, generating tuple); the second is
        the small set of elements whose plain closure equals the first.
        """
        gen_list = list(dict.fromkeys(g for g in gens if g))
        members = set(self.subgroup(gen_list))
        pcgens = self.generators()
        changed = True
        while changed:
            changed = False
            for h in list(gen_list):
                for t in pcgens:
                    c = self.conj(h, t)
                    if c not in members:
                        gen_list.append(c)
                        members = set(self.subgroup(gen_list))
                        changed = True
        return tuple(sorted(members)), tuple(gen_list)

    def derived_subgroup(self) -> tuple:
        if self._derived is None:
            base = []
            for j in range(self.ngens):
                for i in range(j):
                    c = self.comm(self.generator(j), self.generator(i))
                    if c:
                        base.append(c)
            self._derived, self._derived_gens = self.normal_closure(base)
        return self._derived

    def derived_generators(self) -> tuple:
        self.derived_subgroup()
        return self._derived_gens

    def center(self) -> tuple:
        if self._center is None:
            pcgens = self.generators()
            self._center = tuple(
                x
                for x in range(self.order)
                if all(self.mul(x, t) == self.mul(t, x) for t in pcgens)
            )
        return self._center

    def is_abelian(self) -> bool:
        pcgens = self.generators()
        return all(
            self.mul(a, b) == self.mul(b, a) for a in pcgens for b in pcgens
        )

    # ---- invariants ----

    def exponent(self) -> int:
        return lcm(*set(self.element_orders())) if self.order > 1 else 1

    def order_profile(self) -> dict:
        prof = {}
        for d in self.element_orders():
            prof[d] = prof.get(d, 0) + 1
        return prof

    def invariants(self) -> GroupInvariants:
        return GroupInvariants(
            self.order,
            self.exponent(),
            len(self.center()),
            len(self.derived_subgroup()),
            self.order_profile(),
        )

    def abelianization(self) -> tuple:
        """Invariant factors (sorted prime powers) of G/[G, G].

        Rows of the relation matrix: each power relation contributes
        r_i * e_i - (exponent sum of its word); each commutator word
        contributes its plain exponent sum, since the bracket dies.
        """
        if self._abelianization is None:
            L = self.ngens
            pres = self.presentation
            rows = []
            for i in range(L):
                row = [0] * L
                row[i] = pres.orders[i]
                for g, e in pres.powers[i]:
                    row[g] -= e
                rows.append(row)
            for word in pres.commutators.values():
                row = [0] * L
                for g, e in word:
                    row[g] += e
                rows.append(row)
            self._abelianization = cokernel_invariants(rows, ncols=L)
        return self._abelianization

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"
