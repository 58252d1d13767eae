"""Group specification strings, the little grammar the CLI speaks.

    cyclic:<k>
    familyG:p=<p>,n=<n>,m=<m>,q=<q>
    familyH:m=<m>,q=<q>
    aa24:<d8|c4xc2>:<1|2>
    product:(<spec>)x(<spec>)

The constructors stamp the same strings onto FiniteGroup.spec_string,
so parsing and formatting round-trip.  All parse failures raise
InvalidGroupSpec; family constructors' own domain errors pass through
as-is (they subclass ValueError too).
"""

from __future__ import annotations

from .errors import InvalidGroupSpec
from .pcgroup import (
    FamilyParams,
    FiniteGroup,
    alperin_atiyah_pair,
    construct_family_G,
    construct_family_H,
    cyclic_group,
    direct_product,
)

SPEC_HEADS = ("cyclic", "familyG", "familyH", "aa24", "product")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidGroupSpec(f"{what} must be an integer, got {text!r}") from None


def _keyed_ints(body: str, keys: tuple, head: str) -> dict:
    out = {}
    for part in body.split(","):
        key, sep, val = part.partition("=")
        key = key.strip()
        if not sep or key not in keys:
            raise InvalidGroupSpec(
                f"{head} takes {','.join(k + '=<int>' for k in keys)}, got {part!r}"
            )
        if key in out:
            raise InvalidGroupSpec(f"duplicate {key}= in {head} spec")
        out[key] = _int(val.strip(), key)
    missing = [k for k in keys if k not in out]
    if missing:
        raise InvalidGroupSpec(f"{head} spec is missing {', '.join(missing)}")
    return out


def _split_product(body: str) -> tuple:
    # body looks like (left)x(right) with arbitrarily nested parens
    if not body.startswith("("):
        raise InvalidGroupSpec("product spec must look like (spec)x(spec)")
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                break
    else:
        raise InvalidGroupSpec("unbalanced parentheses in product spec")
    left, rest = body[1:i], body[i + 1 :]
    if not rest.startswith("x(") or not rest.endswith(")"):
        raise InvalidGroupSpec("product spec must look like (spec)x(spec)")
    return left, rest[2:-1]


def parse_group_spec(text: str) -> FiniteGroup:
    """Build the group a spec string describes."""
    s = text.strip()
    head, sep, body = s.partition(":")
    if not sep or not body:
        raise InvalidGroupSpec(
            f"group spec {text!r} must look like head:args with head one of "
            f"{', '.join(SPEC_HEADS)}"
        )
    if head == "cyclic":
        k = _int(body, "cyclic order")
        if k < 1:
            raise InvalidGroupSpec(f"cyclic order must be >= 1, got {k}")
        return cyclic_group(k)
    if head == "familyG":
        args = _keyed_ints(body, ("p", "n", "m", "q"), "familyG")
        return construct_family_G(FamilyParams(**args))
    if head == "familyH":
        args = _keyed_ints(body, ("m", "q"), "familyH")
        return construct_family_H(args["m"], args["q"])
    if head == "aa24":
        choice, sep2, member = body.partition(":")
        if not sep2 or member not in ("1", "2"):
            raise InvalidGroupSpec("aa24 spec must look like aa24:<d8|c4xc2>:<1|2>")
        try:
            pair = alperin_atiyah_pair(choice)
        except ValueError as exc:
            raise InvalidGroupSpec(str(exc)) from None
        return pair[int(member) - 1]
    if head == "product":
        left, right = _split_product(body)
        return direct_product(parse_group_spec(left), parse_group_spec(right))
    raise InvalidGroupSpec(
        f"unknown spec head {head!r}; expected one of {', '.join(SPEC_HEADS)}"
    )
