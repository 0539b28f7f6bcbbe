"""Command-line driver: dimensions, structure-constant dumps and verification suites.

Algebra descriptors::

    base := k | c1 | mat:<n>[|<m>]:(<base>) | gamma:<d>:(<base>)
          | schur:<n>:<d>:(<base>) | schur:<m>|<n>:<d>:(<base>) | wreath:<d>:(<base>)
          | sym:<d>

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or size error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from .coeff import Ring, SizeLimitError, make_ring
from .divpow import DividedPowerAlgebra, dim_breakdown, dim_split
from .salg import (
    DEFAULT_MAX_DIM,
    SuperAlgebra,
    check_superalgebra,
    clifford1,
    ground_algebra,
    group_algebra_sym,
    matrix_superalgebra,
)
from .schur import composition_surjectivity_check, schur_algebra, weight_idempotent, weights
from .schurweyl import ActionAxiomError, tensor_space, wreath, wreath_to_end, xi_omega_check
from .supermod import SuperModule

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str  # k, c1, mat, gamma, schur, wreath, sym
    params: tuple[int, ...] = ()
    base: "AlgebraSpec | None" = None

    def __str__(self) -> str:
        if self.kind in ("k", "c1"):
            return self.kind
        if self.kind == "sym":
            return f"sym:{self.params[0]}"
        if self.kind == "mat":
            n, m = self.params
            size = f"{n}" if m == 0 else f"{n}|{m}"
            return f"mat:{size}:({self.base})"
        if self.kind == "schur":
            m, n, d = self.params
            size = f"{m}" if n == 0 else f"{m}|{n}"
            return f"schur:{size}:{d}:({self.base})"
        return f"{self.kind}:{self.params[0]}:({self.base})"


_SIZE = re.compile(r"^(\d+)(?:\|(\d+))?$")


def _int(text: str, what: str) -> int:
    if not text.isdigit():
        raise SpecError(f"{what} must be a nonnegative integer, got {text!r}")
    return int(text)


def parse_spec(text: str) -> AlgebraSpec:
    """Parse an algebra descriptor; raises :class:`SpecError` on malformed input."""
    text = text.strip()
    if text in ("k", "c1"):
        return AlgebraSpec(text)
    head, sep, rest = text.partition(":")
    if not sep:
        raise SpecError(f"unknown algebra {text!r}")
    if head == "sym":
        return AlgebraSpec("sym", (_int(rest, "d"),))
    open_at = rest.find("(")
    if open_at < 1 or not rest.endswith(")") or rest[open_at - 1] != ":":
        raise SpecError(f"expected {head}:<params>:(<base>) in {text!r}")
    params = rest[: open_at - 1].split(":")
    base = parse_spec(rest[open_at + 1 : -1])
    if head == "mat" and len(params) == 1:
        m = _SIZE.match(params[0])
        if not m:
            raise SpecError(f"bad matrix size {params[0]!r}")
        return AlgebraSpec("mat", (int(m.group(1)), int(m.group(2) or 0)), base)
    if head == "schur" and len(params) == 2:
        m = _SIZE.match(params[0])
        if not m:
            raise SpecError(f"bad Schur size {params[0]!r}")
        return AlgebraSpec("schur", (int(m.group(1)), int(m.group(2) or 0), _int(params[1], "d")), base)
    if head in ("gamma", "wreath") and len(params) == 1:
        return AlgebraSpec(head, (_int(params[0], "d"),), base)
    raise SpecError(f"cannot parse {text!r}")


def spec_dims(spec: AlgebraSpec) -> tuple[int, int]:
    """(even, odd) dimension by formula, without building anything."""
    if spec.kind == "k":
        return 1, 0
    if spec.kind == "c1":
        return 1, 1
    if spec.kind == "sym":
        return math.factorial(spec.params[0]), 0
    e, o = spec_dims(spec.base)
    if spec.kind in ("mat", "schur"):
        n, m = spec.params[:2]
        E, O = n * n + m * m, 2 * n * m
        e, o = e * E + o * O, e * O + o * E
        if spec.kind == "mat":
            return e, o
        return dim_split(e, o, spec.params[2])
    d = spec.params[0]
    if spec.kind == "gamma":
        return dim_split(e, o, d)
    # wreath: words of A^{(x)d} times d!
    plus, minus = (e + o) ** d, (e - o) ** d
    f = math.factorial(d)
    return (plus + minus) // 2 * f, (plus - minus) // 2 * f


def build(spec: AlgebraSpec, ring: Ring, max_dim: int = DEFAULT_MAX_DIM, clifford_sign: int = 1) -> SuperAlgebra:
    total = sum(spec_dims(spec))
    if total > max_dim:
        raise SizeLimitError(f"{spec} has dimension {total}, above the cap {max_dim}")
    if spec.kind == "k":
        return ground_algebra(ring)
    if spec.kind == "c1":
        return clifford1(ring, clifford_sign)
    if spec.kind == "sym":
        return group_algebra_sym(spec.params[0], ring, max_dim)
    base = build(spec.base, ring, max_dim, clifford_sign)
    if spec.kind == "mat":
        n, m = spec.params
        if n + m < 1:
            raise SpecError("matrix size must be at least 1")
        return matrix_superalgebra(base, n, m, max_dim)
    if spec.kind == "schur":
        m, n, d = spec.params
        if m + n < 1 or d < 1:
            raise SpecError("Schur parameters need m+n >= 1 and d >= 1")
        A = DividedPowerAlgebra(matrix_superalgebra(base, m, n, max_dim), d, max_dim)
        A.name = f"S^{base.name}({m}{'|' + str(n) if n else ''},{d})"
        return A
    d = spec.params[0]
    if d < 1:
        raise SpecError("degree must be >= 1")
    if spec.kind == "gamma":
        return DividedPowerAlgebra(base, d, max_dim)
    return wreath(base, d, max_dim)


# ---------------------------------------------------------------------------
# structure dumps


def dump_algebra(A: SuperAlgebra) -> dict:
    """JSON-ready structure constants; coefficients are decimal strings."""
    unit = [str(A.unit.get(i, 0)) for i in range(A.dim)]
    mult = [[i, j, [[k, str(c)] for k, c in v.items()]] for (i, j), v in A.structure_constants().items()]
    return {
        "ring": str(A.ring),
        "dim_even": A.dim_even,
        "dim_odd": A.dim_odd,
        "basis": list(A.names),
        "unit": unit,
        "mult": mult,
    }


def dumps_algebra(A: SuperAlgebra) -> str:
    """Serialize with one multiplication entry per line (stable byte output)."""
    doc = dump_algebra(A)
    enc = lambda v: json.dumps(v, ensure_ascii=False, separators=(",", ":"))
    head = [f' "{key}": {enc(doc[key])}' for key in ("ring", "dim_even", "dim_odd", "basis", "unit")]
    rows = ",\n".join(f"  {enc(row)}" for row in doc["mult"])
    mult = ' "mult": [\n' + rows + "\n ]" if rows else ' "mult": []'
    return "{\n" + ",\n".join(head + [mult]) + "\n}\n"


def load_algebra(doc: dict | str) -> SuperAlgebra:
    if isinstance(doc, str):
        doc = json.loads(doc)
    ring = make_ring(doc["ring"])
    parities = (0,) * doc["dim_even"] + (1,) * doc["dim_odd"]
    carrier = SuperModule(ring, tuple(doc["basis"]), parities)
    unit = {i: int(c) for i, c in enumerate(doc["unit"]) if int(c)}
    table = {(i, j): {k: int(c) for k, c in terms} for i, j, terms in doc["mult"]}
    return SuperAlgebra(carrier, unit, table=table)


# ---------------------------------------------------------------------------
# commands


def _emit(payload: dict, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False, indent=1)
            fh.write("\n")


def cmd_dims(spec: AlgebraSpec, out: str | None = None) -> int:
    even, odd = spec_dims(spec)
    print(f"{spec}: total {even + odd}, even {even}, odd {odd}")
    payload: dict = {"spec": str(spec), "total": even + odd, "even": even, "odd": odd}
    gamma = spec if spec.kind in ("gamma", "schur") else None
    if gamma is not None:
        if gamma.kind == "gamma":
            mu, nu = spec_dims(gamma.base)
            d = gamma.params[0]
        else:
            inner = AlgebraSpec("mat", gamma.params[:2], gamma.base)
            mu, nu = spec_dims(inner)
            d = gamma.params[2]
        parts = dim_breakdown(mu, nu, d)
        print(f"  Gamma^{d} of a {mu}|{nu} module: sum over k+l={d} of C({mu}+k-1,k)*C({nu},l)")
        for (k, l), count in parts.items():
            print(f"    k={k} l={l}: {count}")
        payload["breakdown"] = [[k, l, c] for (k, l), c in parts.items()]
    _emit(payload, out)
    return EXIT_OK


def cmd_table(spec: AlgebraSpec, ring: Ring, out: str | None, max_dim: int, clifford_sign: int) -> int:
    text = dumps_algebra(build(spec, ring, max_dim, clifford_sign))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _pair(text: str) -> tuple[int, int]:
    m = _SIZE.match(text)
    if not m:
        raise SpecError(f"expected <p>|<q>, got {text!r}")
    return int(m.group(1)), int(m.group(2) or 0)


def _report(lines: list[tuple[str, bool, str]], out: str | None, extra: dict | None = None) -> int:
    for name, ok, detail in lines:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
    payload = {"checks": [{"check": n, "pass": ok, "detail": d} for n, ok, d in lines]}
    if extra:
        payload.update(extra)
    _emit(payload, out)
    return EXIT_OK if all(ok for _, ok, _ in lines) else EXIT_FAIL


def cmd_verify(args: argparse.Namespace, ring: Ring) -> int:
    suite = args.suite
    if suite == "axioms":
        if not args.spec:
            raise SpecError("verify axioms needs an algebra descriptor")
        A = build(parse_spec(args.spec), ring, args.max_dim, args.clifford_sign)
        rep = check_superalgebra(A)
        return _report([("axioms", rep.passed, rep.summary())], args.out)

    base = build(parse_spec(args.base), ring, args.max_dim, args.clifford_sign)
    if suite == "idempotents":
        S = schur_algebra(base, args.n, args.d, args.max_dim)
        xis = {lam: weight_idempotent(S, lam) for lam in weights(args.n, args.d)}
        lines = []
        total: dict = {}
        for lam, x in xis.items():
            total = S.algebra.add(total, x)
            lines.append((f"xi{lam} even", S.algebra.is_even(x), f"{len(x)} terms"))
            lines.append((f"xi{lam} idempotent", S.mul(x, x) == x, ""))
        orth = all(S.mul(x, y) == {} for a, x in xis.items() for b, y in xis.items() if a != b)
        lines.append(("pairwise orthogonal", orth, f"{len(xis)} weights"))
        lines.append(("sum is 1", total == S.one(), ""))
        return _report(lines, args.out)

    if suite == "surjectivity":
        rep = composition_surjectivity_check(base, args.d, args.m, args.n_odd,
                                             _pair(args.source), _pair(args.target), args.prime)
        return _report([("composition full rank", rep.full_rank, rep.summary())], args.out,
                       {"rank": rep.rank, "dims": rep.dims})

    # schur-weyl
    B = tensor_space(base, args.n, args.d, args.max_dim)
    wr = wreath_to_end(B, args.prime)
    lines = [
        ("bimodule axioms", True, "left, right and commuting actions verified on basis pairs"),
        ("wreath map multiplicative", wr.is_homomorphism, f"{wr.wreath_dim}^2 basis pairs"),
        ("wreath map injective", wr.injective, f"rank {wr.image_rank} / {wr.wreath_dim}"),
        ("image equals left commutant", bool(wr.surjective_onto_commutant),
         f"commutant dim {wr.commutant_dim}"),
    ]
    if args.n >= args.d:
        xr = xi_omega_check(B, args.prime)
        lines.append(("xi_omega", xr.passed, xr.summary()))
    return _report(lines, args.out)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="Z", help="Z or Z/<n> (default Z)")
    common.add_argument("--prime", type=int, default=None, help="prime for rank computations (default: the ring's own, or 10007 over Z)")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="cap on constructed algebra dimension")
    common.add_argument("--out", default=None, help="write JSON output here")
    common.add_argument("--clifford-sign", type=int, choices=(1, -1), default=1, help="c*c in C(1)")

    p = argparse.ArgumentParser(prog="superschur", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    d = sub.add_parser("dims", parents=[common], help="dimensions by formula")
    d.add_argument("spec")
    t = sub.add_parser("table", parents=[common], help="dump structure constants as JSON")
    t.add_argument("spec")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=("axioms", "idempotents", "surjectivity", "schur-weyl"))
    v.add_argument("spec", nargs="?", help="algebra descriptor (axioms suite)")
    v.add_argument("--base", default="k", help="base algebra descriptor")
    v.add_argument("--n", type=int, default=2, help="matrix size n (middle even rank for surjectivity)")
    v.add_argument("--m", type=int, default=2, help="middle even rank (surjectivity)")
    v.add_argument("--n-odd", type=int, default=2, help="middle odd rank (surjectivity)")
    v.add_argument("--d", type=int, default=2)
    v.add_argument("--source", default="1|1", help="source superrank p|q (surjectivity)")
    v.add_argument("--target", default="1|1", help="target superrank s|t (surjectivity)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        ring = make_ring(args.ring)
        if args.command == "dims":
            return cmd_dims(parse_spec(args.spec), args.out)
        if args.command == "table":
            return cmd_table(parse_spec(args.spec), ring, args.out, args.max_dim, args.clifford_sign)
        return cmd_verify(args, ring)
    except ActionAxiomError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SpecError, SizeLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
