"""Command-line entry point: construct, cohomology, compare, verify.

Exit codes: 0 success (or all degrees equal), 1 a verified difference
or a failed claim, 2 usage error, 3 a computational limit was hit.
With --json exactly one JSON document goes to stdout; otherwise plain
aligned tables.  Reports are reproducible bit-for-bit for a fixed tool
version and flag set; wall-clock numbers enter JSON only under
--timings for that reason.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .cache import ResolutionCache
from .cohomology import (
    INTEGERS,
    CoefficientSpec,
    CoprimeExtensionSpec,
    GradedAbelianGroup,
    TorsionBoundSpec,
    check_torsion_bound,
    cohomology_groups,
    compare_graded,
    first_difference,
    graded_report,
    predict_coprime_extension,
    reconstruct_abelian_group,
    tensor_profile,
    uct_order_check,
)
from .errors import ComputationalLimit
from .pcgroup import (
    FamilyParams,
    FiniteGroup,
    PcPresentation,
    alperin_atiyah_pair,
    construct_family_G,
    construct_family_H,
    cyclic_group,
    is_isomorphic,
)
from .resolution import FreeResolution, extend_resolution
from .specs import parse_group_spec

VERIFY_FORMAT = "grpcohom.verify/1"
CONSTRUCT_FORMAT = "grpcohom.construct/1"
COMPARE_FORMAT = "grpcohom.compare/1"

EXIT_OK = 0
EXIT_DIFFER = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

SUITES = ("cyclic", "aa24", "p3-family", "p2-family", "reconstruction")

# order-512 resolutions grow steeply with degree (about a minute for
# degree 2, far past an hour beyond that), so the p2 comparison walk
# always runs under some budget; --budget-seconds replaces the default
P2_COMPARISON_BUDGET = 300.0


def default_max_degree(order: int) -> int:
    """Desk-scale degree defaults by group order."""
    if order <= 128:
        return 5
    if order <= 1024:
        return 4
    return 3


def _fmt_factors(factors) -> str:
    if not factors:
        return "0"
    return " + ".join("Z" if f == 0 else f"Z/{f}" for f in factors)


def _emit(args, payload: dict, render) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(render(payload))


# ---- construct ----


def cmd_construct(args) -> int:
    G = parse_group_spec(args.spec)
    inv = G.invariants()
    payload = {
        "format": CONSTRUCT_FORMAT,
        "group_spec": G.spec_string or args.spec.strip(),
        "name": G.name,
        "order": inv.order,
        "exponent": inv.exponent,
        "abelianization": [str(f) for f in G.abelianization()],
        "center_order": inv.center_order,
        "derived_order": inv.derived_order,
    }

    def render(p):
        rows = [
            ("order", p["order"]),
            ("exponent", p["exponent"]),
            ("abelianization", _fmt_factors([int(f) for f in p["abelianization"]])),
            ("center order", p["center_order"]),
            ("derived order", p["derived_order"]),
        ]
        head = f"{p['name']}  [{p['group_spec']}]"
        return "\n".join([head] + [f"  {k:<15} {v}" for k, v in rows])

    _emit(args, payload, render)
    return EXIT_OK


# ---- cohomology ----


def _render_graded(payload: dict) -> str:
    head = (
        f"H^*({payload['group_spec']}; {payload['coefficients']}) "
        f"to degree {payload['max_degree']}"
    )
    lines = [head]
    if payload.get("partial"):
        lines.append(
            f"  PARTIAL: {payload['limit']} "
            f"(requested degree {payload['requested_max_degree']})"
        )
    for n, factors in enumerate(payload["degrees"]):
        lines.append(f"  H^{n} = {_fmt_factors([int(f) for f in factors])}")
    return "\n".join(lines)


def cmd_cohomology(args) -> int:
    G = parse_group_spec(args.spec)
    coeffs = CoefficientSpec.parse(args.coeffs)
    N = args.max_degree if args.max_degree is not None else default_max_degree(G.order)
    if N < 0:
        raise ValueError("--max-degree must be >= 0")
    cache = ResolutionCache(args.cache_dir) if args.cache_dir else None
    spec_str = G.spec_string or args.spec.strip()
    ctx = VerifyContext(cache=cache, budget=_Budget(args.budget_seconds))
    try:
        g = ctx.graded(G, N, coeffs)
    except ComputationalLimit as limit:
        done = -1
        partial = ctx.resolutions.get(G.presentation.fingerprint())
        if isinstance(limit.partial, FreeResolution):
            partial = limit.partial
        if partial is not None and partial.max_degree >= 1:
            done = min(N, partial.max_degree - 1)
        g = (
            cohomology_groups(G, done, coeffs, resolution=partial)
            if done >= 0
            else GradedAbelianGroup(())
        )
        payload = graded_report(spec_str, coeffs, g)
        payload["partial"] = True
        payload["requested_max_degree"] = N
        payload["limit"] = str(limit)
        _emit(args, payload, _render_graded)
        return EXIT_LIMIT
    _emit(args, graded_report(spec_str, coeffs, g), _render_graded)
    return EXIT_OK


# ---- compare ----


def _comparison_rows(comparisons) -> list:
    return [
        {
            "degree": c.degree,
            "equal": c.equal,
            "left": [str(f) for f in c.left],
            "right": [str(f) for f in c.right],
        }
        for c in comparisons
    ]


def _render_compare(payload: dict) -> str:
    head = (
        f"{payload['left_spec']} vs {payload['right_spec']} "
        f"({payload['coefficients']}, to degree {payload['max_degree']})"
    )
    lines = [head, f"  {'n':>2}  {'left':<24} {'right':<24} verdict"]
    for row in payload["degrees"]:
        left = _fmt_factors([int(f) for f in row["left"]])
        right = _fmt_factors([int(f) for f in row["right"]])
        verdict = "equal" if row["equal"] else "DIFFER"
        lines.append(f"  {row['degree']:>2}  {left:<24} {right:<24} {verdict}")
    if payload["all_equal"]:
        lines.append("all degrees equal")
    else:
        lines.append(f"first difference at degree {payload['first_difference']}")
    return "\n".join(lines)


def cmd_compare(args) -> int:
    G1 = parse_group_spec(args.left)
    G2 = parse_group_spec(args.right)
    coeffs = CoefficientSpec.parse(args.coeffs)
    if args.max_degree is not None:
        N = args.max_degree
    else:
        N = min(default_max_degree(G1.order), default_max_degree(G2.order))
    cache = ResolutionCache(args.cache_dir) if args.cache_dir else None
    ctx = VerifyContext(cache=cache, budget=_Budget(args.budget_seconds))
    try:
        g1 = ctx.graded(G1, N, coeffs)
        g2 = ctx.graded(G2, N, coeffs)
    except ComputationalLimit as limit:
        print(f"computational limit: {limit}", file=sys.stderr)
        return EXIT_LIMIT
    comparisons = compare_graded(g1, g2, N)
    payload = {
        "format": COMPARE_FORMAT,
        "left_spec": G1.spec_string or args.left.strip(),
        "right_spec": G2.spec_string or args.right.strip(),
        "coefficients": coeffs.label(),
        "max_degree": N,
        "degrees": _comparison_rows(comparisons),
        "all_equal": all(c.equal for c in comparisons),
        "first_difference": first_difference(comparisons),
    }
    _emit(args, payload, _render_compare)
    return EXIT_OK if payload["all_equal"] else EXIT_DIFFER


# ---- verify ----


class _Budget:
    def __init__(self, seconds: Optional[float]):
        self.seconds = seconds
        self.began = time.monotonic()

    def remaining(self) -> Optional[float]:
        if self.seconds is None:
            return None
        return max(0.0, self.seconds - (time.monotonic() - self.began))


@dataclass
class VerifyContext:
    """Shared resolution/cohomology store for one CLI invocation."""

    cache: Optional[ResolutionCache] = None
    budget: Optional[_Budget] = None
    max_degree: Optional[int] = None
    resolutions: dict = field(default_factory=dict)

    def degree_or(self, default: int) -> int:
        return self.max_degree if self.max_degree is not None else default

    def resolution(self, G: FiniteGroup, N: int) -> FreeResolution:
        key = G.presentation.fingerprint()
        have = self.resolutions.get(key)
        if have is None and self.cache is not None:
            have = self.cache.load(G)
            if have is not None:
                self.resolutions[key] = have
        if have is not None and have.max_degree >= N:
            return have
        budget = self.budget.remaining() if self.budget else None
        try:
            res = extend_resolution(
                G, N, start=have, max_degree=max(N, 8), budget_seconds=budget
            )
        except ComputationalLimit as limit:
            # keep whatever degrees did finish for later shallower asks
            partial = limit.partial
            if isinstance(partial, FreeResolution) and (
                have is None or partial.max_degree > have.max_degree
            ):
                self.resolutions[key] = partial
                if self.cache is not None:
                    self.cache.store(partial)
            raise
        self.resolutions[key] = res
        if self.cache is not None:
            self.cache.store(res)
        return res

    def graded(
        self, G: FiniteGroup, N: int, coeffs: CoefficientSpec = INTEGERS
    ) -> GradedAbelianGroup:
        res = self.resolution(G, N + 1)
        return cohomology_groups(G, N, coeffs, resolution=res)


@dataclass
class Claim:
    id: str
    statement: str
    status: str  # pass | fail | flagged | skipped
    artifacts: dict = field(default_factory=dict)


@dataclass
class SuiteResult:
    suite: str
    claims: list
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.claims)

    @property
    def limited(self) -> bool:
        return any(c.status == "skipped" for c in self.claims)


class _SuiteRun:
    """Collects claims; a claim body returns (ok, artifacts)."""

    def __init__(self, name: str, ctx: VerifyContext):
        self.ctx = ctx
        self.result = SuiteResult(name, [])
        self._ids = set()

    def claim(self, cid: str, statement: str, body, flag_only: bool = False):
        if cid in self._ids:
            raise RuntimeError(f"duplicate claim id {cid}")
        self._ids.add(cid)
        try:
            ok, artifacts = body()
            status = "pass" if ok else ("flagged" if flag_only else "fail")
        except ComputationalLimit as limit:
            status, artifacts = "skipped", {"limit": str(limit)}
        self.result.claims.append(Claim(cid, statement, status, artifacts))

    def done(self) -> SuiteResult:
        return self.result


def _graded_table(g: GradedAbelianGroup) -> list:
    return [[str(f) for f in d] for d in g.degrees]


def _suite_cyclic(ctx: VerifyContext) -> SuiteResult:
    run = _SuiteRun("cyclic", ctx)
    for k in (2, 3, 4, 6):

        def body(k=k):
            g = ctx.graded(cyclic_group(k), 8)
            want = GradedAbelianGroup(
                tuple((0,) if n == 0 else (k,) if n % 2 == 0 else () for n in range(9))
            )
            return g == want, {"table": _graded_table(g)}

        run.claim(
            f"cyclic-{k}",
            f"H^n(C_{k}) alternates 0 and Z/{k} through degree 8",
            body,
        )
    return run.done()


def _dihedral8() -> FiniteGroup:
    # the acting group of the aa24:d8 pair, rebuilt for its cohomology
    pres = PcPresentation((2, 4), commutators={(1, 0): ((1, 2),)}, names=("a", "b"))
    return FiniteGroup(pres, name="D_8")


def _c4xc2() -> FiniteGroup:
    return FiniteGroup(PcPresentation((2, 4), names=("a", "b")), name="C_4 x C_2")


def _suite_aa24(ctx: VerifyContext) -> SuiteResult:
    run = _SuiteRun("aa24", ctx)
    N = ctx.degree_or(5)
    pairs = {choice: alperin_atiyah_pair(choice) for choice in ("d8", "c4xc2")}

    def orders():
        vals = {G.spec_string: G.order for pair in pairs.values() for G in pair}
        return all(v == 24 for v in vals.values()), {"orders": vals}

    run.claim("aa24-orders", "all four order-24 group members have order 24", orders)

    for choice, pair in pairs.items():

        def noniso(pair=pair):
            cert = is_isomorphic(*pair)
            return cert.verdict == "not_isomorphic", {"certificate": cert.to_json()}

        run.claim(
            f"aa24-{choice}-noniso",
            f"the {choice} pair is non-isomorphic",
            noniso,
        )

        def equal_cohomology(pair=pair):
            gs = [ctx.graded(G, N) for G in pair]
            comparisons = compare_graded(gs[0], gs[1], N)
            return all(c.equal for c in comparisons), {
                "comparison": _comparison_rows(comparisons)
            }

        run.claim(
            f"aa24-{choice}-cohomology",
            f"the {choice} pair has equal integral cohomology to degree {N}",
            equal_cohomology,
        )

    def prediction():
        art, ok = {}, True
        for choice, Q in (("d8", _dihedral8()), ("c4xc2", _c4xc2())):
            spec = CoprimeExtensionSpec(3, Q, 2)
            predicted = predict_coprime_extension(spec, ctx.graded(Q, N), N)
            art[choice] = _graded_table(predicted)
            for G in pairs[choice]:
                ok = ok and ctx.graded(G, N) == predicted
        return ok, {"predicted": art}

    run.claim(
        "aa24-prediction",
        "computed cohomology matches the coprime-extension prediction degreewise",
        prediction,
    )

    def torsion_degrees():
        g = ctx.graded(pairs["d8"][0], N)
        have = [n for n in range(1, N + 1) if any(f and f % 3 == 0 for f in g[n])]
        want = [n for n in range(1, N + 1) if n % 4 == 0]
        return have == want, {"three_torsion_degrees": have}

    run.claim(
        "aa24-torsion-degrees",
        "3-torsion appears exactly in positive degrees divisible by 4",
        torsion_degrees,
    )
    return run.done()


def _suite_p3(ctx: VerifyContext) -> SuiteResult:
    run = _SuiteRun("p3-family", ctx)
    N = ctx.degree_or(4)
    G1 = construct_family_G(FamilyParams(3, 2, 0, 1))
    G2 = construct_family_G(FamilyParams(3, 2, 0, 2))
    G4 = construct_family_G(FamilyParams(3, 2, 0, 4))

    def orders():
        vals = {G.spec_string: G.order for G in (G1, G2)}
        return all(v == 81 for v in vals.values()), {"orders": vals}

    run.claim("p3-orders", "G(0,1) and G(0,2) at p=3, n=2 have order 81", orders)

    def iso_q4():
        cert = is_isomorphic(G1, G4)
        return cert.verdict == "isomorphic", {"certificate": cert.to_json()}

    run.claim(
        "p3-iso-q1-q4",
        "G(0,1) and G(0,4) are isomorphic with a verified generator-image witness",
        iso_q4,
    )

    def noniso_q2():
        cert = is_isomorphic(G1, G2, use_invariants=False)
        ok = cert.verdict == "not_isomorphic" and cert.exhausted
        return ok, {"certificate": cert.to_json()}

    run.claim(
        "p3-noniso-q1-q2",
        "G(0,1) and G(0,2) are non-isomorphic by exhaustive image search",
        noniso_q2,
    )

    def comparison():
        gs = [ctx.graded(G, N) for G in (G1, G2)]
        comparisons = compare_graded(gs[0], gs[1], N)
        return all(c.equal for c in comparisons), {
            "comparison": _comparison_rows(comparisons)
        }

    run.claim(
        "p3-cohomology-compare",
        f"integral cohomology of G(0,1) and G(0,2) compared to degree {N}"
        " (recorded finding, no pass/fail contract)",
        comparison,
        flag_only=True,
    )

    def torsion():
        spec = TorsionBoundSpec(3, 3)
        reports = {
            G.spec_string: check_torsion_bound(ctx.graded(G, N), spec)
            for G in (G1, G2)
        }
        ok = all(r.passed for r in reports.values())
        return ok, {
            "bound": spec.p ** (2 * spec.l),
            "failures": {s: list(r.failures) for s, r in reports.items()},
        }

    run.claim(
        "p3-torsion-bound",
        "p^(2l) with p=3, l=3 annihilates odd degrees and leaves evens cyclic",
        torsion,
    )

    def uct():
        art, ok = {}, True
        for G in (G1, G2):
            integral = ctx.graded(G, N)
            for k in (3, 9):
                rows = uct_order_check(
                    integral, ctx.graded(G, N - 1, CoefficientSpec.modulo(k)), k, N - 1
                )
                art[f"{G.spec_string} mod {k}"] = rows
                ok = ok and all(r["ok"] for r in rows)
        return ok, art

    run.claim(
        "p3-uct",
        "Z/3 and Z/9 cohomology orders match the universal-coefficient bookkeeping",
        uct,
    )
    return run.done()


def _suite_p2(ctx: VerifyContext) -> SuiteResult:
    # flag-only suite: the comparison claim records its outcome and
    # never fails; equality at m=0 is outside the guaranteed range
    run = _SuiteRun("p2-family", ctx)
    N = ctx.degree_or(2)
    H1 = construct_family_H(0, 1)
    H3 = construct_family_H(0, 3)

    def orders():
        vals = {G.spec_string: G.order for G in (H1, H3)}
        return H1.order == H3.order, {"orders": vals}

    run.claim("p2-orders", "H(0,1) and H(0,3) have equal (recorded) orders", orders)

    def noniso():
        cert = is_isomorphic(H1, H3)
        return cert.verdict == "not_isomorphic", {"certificate": cert.to_json()}

    run.claim("p2-noniso", "H(0,1) and H(0,3) are non-isomorphic", noniso)

    def comparison():
        # walk upward so a budget cut still leaves the deepest finished
        # comparison on record
        saved = ctx.budget
        if saved is None or saved.seconds is None:
            ctx.budget = _Budget(P2_COMPARISON_BUDGET)
        done, gs, limit_note = -1, None, None
        try:
            for n in range(N + 1):
                try:
                    gs = [ctx.graded(G, n) for G in (H1, H3)]
                except ComputationalLimit as limit:
                    limit_note = str(limit)
                    break
                done = n
        finally:
            ctx.budget = saved
        if done < 0:
            raise ComputationalLimit(limit_note or "no degree completed")
        comparisons = compare_graded(gs[0], gs[1], done)
        art = {
            "comparison": _comparison_rows(comparisons),
            "compared_to_degree": done,
            "target_degree": N,
        }
        if limit_note:
            art["limit"] = limit_note
        return all(c.equal for c in comparisons), art

    run.claim(
        "p2-cohomology-compare",
        "integral cohomology of H(0,1) and H(0,3) compared to the highest"
        " degree finished within budget (recorded finding, no pass/fail"
        " contract)",
        comparison,
        flag_only=True,
    )
    return run.done()


def _partitions(total: int, largest: Optional[int] = None):
    """Nonincreasing positive partitions of total."""
    if total == 0:
        yield ()
        return
    cap = total if largest is None else min(largest, total)
    for first in range(cap, 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _suite_reconstruction(ctx: VerifyContext) -> SuiteResult:
    run = _SuiteRun("reconstruction", ctx)

    def exhaustive():
        checked = 0
        for p in (2, 3):
            for total in range(0, 8):
                for part in _partitions(total):
                    for m in range(0, 4):
                        if sum(1 for e in part if e > m) > 1:
                            continue
                        A = tuple(sorted(p ** e for e in part))
                        if reconstruct_abelian_group(tensor_profile(A, p, m)) != A:
                            return False, {"counterexample": [p, m, list(A)]}
                        checked += 1
        return True, {"cases": checked}

    run.claim(
        "reconstruction-exhaustive",
        "round-trip on all abelian p-groups of order <= p^7 with p^m A cyclic,"
        " p in {2,3}, m <= 3",
        exhaustive,
    )

    def randomized():
        rng = random.Random(20260819)
        done = 0
        while done < 200:
            p = rng.choice((2, 3, 5))
            m = rng.randrange(0, 5)
            total = rng.randrange(0, 13)
            part = tuple(
                sorted((rng.randrange(1, 7) for _ in range(rng.randrange(0, 5))),
                       reverse=True)
            )
            if sum(part) > total:
                part = part[:1]
            if sum(1 for e in part if e > m) > 1:
                continue
            A = tuple(sorted(p ** e for e in part))
            profile = tensor_profile(A, p, m)
            got = reconstruct_abelian_group(profile)
            # brute force: the profile must match exactly one group
            matches = [
                B
                for t in range(sum(part), sum(part) + 1)
                for q in _partitions(t)
                if sum(1 for e in q if e > m) <= 1
                and tensor_profile(B := tuple(sorted(p ** e for e in q)), p, m)
                == profile
            ]
            if got != A or matches != [A]:
                return False, {"counterexample": [p, m, list(A), matches]}
            done += 1
        return True, {"cases": done}

    run.claim(
        "reconstruction-randomized",
        "200 randomized profiles agree with a brute-force enumerator",
        randomized,
    )
    return run.done()


_SUITE_RUNNERS = {
    "cyclic": _suite_cyclic,
    "aa24": _suite_aa24,
    "p3-family": _suite_p3,
    "p2-family": _suite_p2,
    "reconstruction": _suite_reconstruction,
}


def _render_verify(payload: dict) -> str:
    lines = []
    for suite in payload["suites"]:
        head = f"suite {suite['suite']}"
        if "seconds" in suite:
            head += f"  ({suite['seconds']:.1f}s)"
        lines.append(head)
        for claim in suite["claims"]:
            lines.append(f"  {claim['status']:<7} {claim['id']:<28} {claim['statement']}")
            if claim["status"] in ("fail", "flagged", "skipped"):
                for key, val in claim["artifacts"].items():
                    lines.append(f"          {key}: {json.dumps(val, sort_keys=True)}")
    counts = {}
    for suite in payload["suites"]:
        for claim in suite["claims"]:
            counts[claim["status"]] = counts.get(claim["status"], 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    lines.append(f"summary: {summary}; exit {payload['exit_code']}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    ctx = VerifyContext(
        cache=ResolutionCache(args.cache_dir) if args.cache_dir else None,
        budget=_Budget(args.budget_seconds),
        max_degree=args.max_degree,
    )
    suites = []
    for name in names:
        t0 = time.monotonic()
        result = _SUITE_RUNNERS[name](ctx)
        result.seconds = time.monotonic() - t0
        suites.append(result)
    failed = any(s.failed for s in suites)
    limited = any(s.limited for s in suites)
    code = EXIT_DIFFER if failed else (EXIT_LIMIT if limited else EXIT_OK)
    payload = {
        "format": VERIFY_FORMAT,
        "tool_version": __version__,
        "suites": [
            {
                "suite": s.suite,
                "claims": [
                    {
                        "id": c.id,
                        "statement": c.statement,
                        "status": c.status,
                        "artifacts": c.artifacts,
                    }
                    for c in s.claims
                ],
                **({"seconds": round(s.seconds, 3)} if args.timings else {}),
            }
            for s in suites
        ],
        "exit_code": code,
    }
    if not args.json:
        # human mode always shows timings
        for rendered, s in zip(payload["suites"], suites):
            rendered["seconds"] = round(s.seconds, 3)
    _emit(args, payload, _render_verify)
    return code


# ---- argument parsing ----


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grpcohom",
        description="Construct finite pc-presented groups and compute their"
        " integral and modular cohomology.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, coeffs=True):
        sp.add_argument("--json", action="store_true", help="emit one JSON document")
        sp.add_argument("--cache-dir", metavar="PATH", help="resolution cache directory")
        sp.add_argument(
            "--budget-seconds", type=float, metavar="S", help="computation budget"
        )
        sp.add_argument(
            "--max-degree", type=int, metavar="N", help="top cohomology degree"
        )
        if coeffs:
            sp.add_argument(
                "--coeffs", default="Z", metavar="Z|Z/<k>", help="coefficient module"
            )

    sp = sub.add_parser("construct", help="build a group and print its invariants")
    sp.add_argument("spec", help="group spec, e.g. familyG:p=3,n=2,m=0,q=1")
    sp.add_argument("--json", action="store_true", help="emit one JSON document")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("cohomology", help="compute a graded cohomology report")
    sp.add_argument("spec", help="group spec")
    common(sp)
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("compare", help="compare two groups degree by degree")
    sp.add_argument("left", help="group spec")
    sp.add_argument("right", help="group spec")
    common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument(
        "--suite",
        default="all",
        choices=SUITES + ("all",),
        help="which suite to run (default all)",
    )
    common(sp, coeffs=False)
    sp.add_argument(
        "--timings",
        action="store_true",
        help="include wall-clock seconds in JSON output",
    )
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ComputationalLimit as limit:
        print(f"computational limit: {limit}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        # InvalidGroupSpec, InvalidFamilyParameters, bad coefficient strings
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
