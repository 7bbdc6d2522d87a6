"""Command-line front end.

Exit status: 0 on success (including "verified true" outcomes), 1 when a
verification fails, 2 on usage or parse errors, 3 when a search stops at
its resource cap before finishing.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO, Tuple

from . import automorphisms as aut
from . import cancellation, derivations, mason
from .expr import ParseError, parse_expression
from .poly import ResourceLimitError, as_rational, set_max_terms
from .rings import ParameterError, SurfaceParams, ThreefoldParams, ThreefoldRing

__all__ = ["Session", "parse_expression", "run", "main"]

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
DEFAULT_SEED = 20240601


class UsageError(ValueError):
    pass


def _ints(text: str, count: int, label: str) -> List[int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"{label} expects {count} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"{label}: not an integer list: {text!r}") from None


def parse_surface(text: str) -> SurfaceParams:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (3, 4):
        raise UsageError(f"--surface expects a,b,c[,lambda], got {text!r}")
    a, b, c = (int(p) for p in parts[:3])
    lam = as_rational(parts[3]) if len(parts) == 4 else 0
    return SurfaceParams(a, b, c, lam)


def parse_coefficients(text: str) -> Tuple:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(as_rational(p) for p in text.split(","))


@dataclass(frozen=True)
class Session:
    surface: SurfaceParams
    threefold_left: ThreefoldParams
    threefold_right: Optional[ThreefoldParams]
    output_mode: str
    random_seed: int

    @classmethod
    def from_args(cls, args) -> "Session":
        surface = parse_surface(args.surface)
        n, m = _ints(args.threefold, 2, "--threefold")
        left = ThreefoldParams(surface, n, m, args.permissive)
        right = None
        if getattr(args, "right", None):
            n2, m2 = _ints(args.right, 2, "--right")
            right = ThreefoldParams(surface, n2, m2, args.permissive)
        if not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        return cls(surface, left, right, args.output, args.seed)

    def ring(self, adjoined: Sequence[str] = ()) -> ThreefoldRing:
        return ThreefoldRing(self.threefold_left, tuple(adjoined))


class _Out:
    def __init__(self, stream: TextIO, mode: str, command: str):
        self.stream = stream
        self.mode = mode
        self.command = command

    def emit(self, text: str, **record) -> None:
        if self.mode == "structured":
            record = {"command": self.command, **record}
            self.stream.write(json.dumps(record, sort_keys=False, default=str) + "\n")
        else:
            self.stream.write(text + "\n")


def parse_derivation(text: str, ring: ThreefoldRing) -> derivations.Derivation:
    """``E``, ``0``, or generator images such as ``u=y^2, v=x^2``."""
    text = text.strip()
    if text == "E":
        return derivations.derivation_E(ring)
    if text == "0":
        return derivations.zero_derivation(ring)
    images = {v: 0 for v in ring.variables}
    for part in text.replace(";", ",").split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"derivation images look like 'u=y^2', got {part!r}")
        name, expr = part.split("=", 1)
        name = name.strip()
        if name not in ring.variables:
            raise UsageError(f"unknown generator {name!r}")
        images[name] = parse_expression(expr, ring.variables)
    return derivations.make_derivation(ring, images)


def parse_aut(text: str, ring: ThreefoldRing) -> aut.AutElement:
    """``MU:F`` denoting torus(MU) ∘ shear(F)."""
    if ":" not in text:
        raise UsageError(f"automorphisms are written MU:F, got {text!r}")
    mu_text, f_text = text.split(":", 1)
    mu = as_rational(mu_text)
    phi = aut.torus(ring, mu)
    return aut.compose(phi, aut.shear(ring, parse_expression(f_text or "0", ring.variables)))


# -- handlers ------------------------------------------------------------------


def cmd_surface_info(session: Session, args, out: _Out) -> int:
    s = session.surface
    p = session.threefold_left
    out.emit(
        f"surface {s.a},{s.b},{s.c},{s.lam}: 1/a+1/b+1/c = {s.reciprocal_sum}; "
        f"ml_regime {s.ml_regime}; cor1_regime {s.cor1_regime}; cor2_regime {s.cor2_regime}; "
        f"threefold n={p.n}, m={p.m}",
        a=s.a, b=s.b, c=s.c, lam=str(s.lam), reciprocal_sum=str(s.reciprocal_sum),
        ml_regime=s.ml_regime, cor1_regime=s.cor1_regime, cor2_regime=s.cor2_regime, n=p.n, m=p.m,
    )
    return EXIT_OK


def _adjoined(args) -> Tuple[str, ...]:
    return tuple(v.strip() for v in args.adjoin.split(",") if v.strip()) if args.adjoin else ()


def cmd_nf(session: Session, args, out: _Out) -> int:
    ring = session.ring(_adjoined(args))
    h = ring.element(parse_expression(args.expr, ring.variables))
    out.emit(str(h), input=args.expr, normal_form=str(h))
    return EXIT_OK


def cmd_eval_derivation(session: Session, args, out: _Out) -> int:
    ring = session.ring()
    D = parse_derivation(args.derivation, ring)
    h = ring.element(parse_expression(args.expr, ring.variables))
    img = D(h)
    out.emit(str(img), input=args.expr, image=str(img), in_kernel=img.is_zero())
    return EXIT_OK


def cmd_lnd_check(session: Session, args, out: _Out) -> int:
    D = parse_derivation(args.derivation, session.ring())
    verdict = derivations.is_locally_nilpotent(D, args.bound)
    out.emit(str(verdict), nilpotent=verdict.nilpotent, indices=verdict.indices, bound=verdict.bound)
    return EXIT_OK if verdict.nilpotent else EXIT_FAILED


def cmd_kernel_basis(session: Session, args, out: _Out) -> int:
    D = parse_derivation(args.derivation, session.ring())
    basis = derivations.kernel_basis_bounded(D, args.bound)
    if out.mode == "structured":
        out.emit("", bound=args.bound, dimension=len(basis), basis=[str(b) for b in basis])
    else:
        out.emit(f"dimension {len(basis)}")
        for b in basis:
            out.emit(str(b))
    return EXIT_OK


def cmd_exp(session: Session, args, out: _Out) -> int:
    D = parse_derivation(args.derivation, session.ring())
    try:
        phi = derivations.exp_map(D, as_rational(args.t), args.bound)
    except derivations.NotLocallyNilpotentError as exc:
        out.emit(str(exc), error=str(exc))
        return EXIT_FAILED
    images = {g: str(img) for g, img in phi.images.items()}
    out.emit("\n".join(f"{g} -> {img}" for g, img in images.items()), t=args.t, images=images)
    return EXIT_OK


def cmd_aut(session: Session, args, out: _Out) -> int:
    ring = session.ring()
    phi = parse_aut(args.phi, ring)
    verb = args.verb
    if verb in ("compose", "invert"):
        if verb == "compose":
            if not args.psi:
                raise UsageError("aut compose needs --psi")
            res = aut.compose(phi, parse_aut(args.psi, ring))
        else:
            res = aut.invert(phi)
        out.emit(str(res), mu=str(res.mu), f=str(res.f))
    elif verb == "apply":
        if not args.expr:
            raise UsageError("aut apply needs --expr")
        img = aut.apply_aut(phi, ring.element(parse_expression(args.expr, ring.variables)))
        out.emit(str(img), input=args.expr, image=str(img))
    elif verb == "conjugate-e":
        lam = aut.conjugate_E(phi)
        out.emit(f"phi^-1 E phi = {lam} * E", scalar=str(lam))
    elif verb == "restrict":
        r = aut.restrict(phi)
        images = {g: str(img) for g, img in r.images.items()}
        out.emit("\n".join(f"{g} -> {img}" for g, img in images.items()), images=images)
    return EXIT_OK


def cmd_mason(session: Session, args, out: _Out) -> int:
    variables = (args.var,)
    f = parse_expression(args.f, variables)
    g = parse_expression(args.g, variables)
    rep = mason.mason_check(f, g)
    out.emit(str(rep), f=str(f), g=str(g), h=str(-(f + g)), max_degree=rep.max_degree,
             root_count=rep.root_count, applicable=rep.applicable, holds=rep.holds)
    return EXIT_FAILED if rep.applicable and not rep.holds else EXIT_OK


def cmd_fermat_search(session: Session, args, out: _Out) -> int:
    a, b, c = _ints(args.exponents, 3, "--exponents")
    cfg = mason.SearchConfig(
        a, b, c, as_rational(args.lam), args.degree_bound, parse_coefficients(args.coefficients),
        mode=args.mode, samples=args.samples, seed=session.random_seed,
        max_candidates=args.max_candidates, time_limit=args.time_limit, workers=args.workers,
    )
    regime = cfg.regime()
    try:
        sols = mason.fermat_search(cfg)
    except mason.SearchLimitExceeded as exc:
        out.emit(f"search incomplete: {exc}", status="limit_exceeded", detail=str(exc), regime=regime)
        return EXIT_LIMIT
    for s in sols:
        rec = s.record()
        out.emit(f"f = {rec['f']}; g = {rec['g']}; h = {rec['h']}; verified {rec['verified']}", **rec)
    falsified = regime["no_solutions_expected"] and bool(sols)
    out.emit(
        f"search complete: {len(sols)} solution(s); regime {regime}",
        status="complete", solutions=len(sols), regime=regime, falsified=falsified,
    )
    return EXIT_FAILED if falsified or not all(s.verified for s in sols) else EXIT_OK


def cmd_stable_iso(session: Session, args, out: _Out, stdin: TextIO) -> int:
    if args.verb == "build":
        left = tuple(_ints(args.left, 2, "--left")) if args.left else (session.threefold_left.n, session.threefold_left.m)
        if not args.right and session.threefold_right is None:
            raise UsageError("stable-iso build needs --right n,m")
        right = tuple(_ints(args.right, 2, "--right")) if args.right else (
            session.threefold_right.n, session.threefold_right.m)
        iso = cancellation.build_stable_iso(session.surface, left, right, permissive=args.permissive)
        text = cancellation.dumps(iso)
        if args.file:
            with open(args.file, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
            out.emit(f"wrote {args.file}", file=args.file)
        else:
            out.stream.write(text + "\n")
        return EXIT_OK
    text = open(args.file, encoding="utf-8").read() if args.file else stdin.read()
    try:
        iso = cancellation.loads(text, permissive=args.permissive)
    except (json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"malformed stable-iso document: {exc}") from None
    rep = cancellation.verify_stable_iso(iso)
    out.emit(
        f"relations_ok {rep.relations_ok}; round_trip_ok {rep.round_trip_ok}; certificates_ok {rep.certificates_ok}",
        relations_ok=rep.relations_ok, round_trip_ok=rep.round_trip_ok, certificates_ok=rep.certificates_ok,
        forward_degrees=rep.forward_degrees, backward_degrees=rep.backward_degrees,
    )
    return EXIT_OK if rep.ok else EXIT_FAILED


# -- argument parsing --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", default="2,3,7,0", help="a,b,c[,lambda]; lambda may be p/q")
    common.add_argument("--threefold", default="2,2", help="n,m")
    common.add_argument("--output", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--permissive", action="store_true", help="allow n or m = 1")

    parser = _Parser(prog="lnd-algebra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("surface-info", parents=[common])

    p = sub.add_parser("nf", parents=[common])
    p.add_argument("--expr", required=True)
    p.add_argument("--adjoin", default="", help="comma-separated free variables")

    p = sub.add_parser("eval-derivation", parents=[common])
    p.add_argument("--derivation", default="E")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("lnd-check", parents=[common])
    p.add_argument("--derivation", default="E")
    p.add_argument("--bound", type=int, default=derivations.DEFAULT_ITERATION_BOUND)

    p = sub.add_parser("kernel-basis", parents=[common])
    p.add_argument("--derivation", default="E")
    p.add_argument("--bound", type=int, default=3)

    p = sub.add_parser("exp", parents=[common])
    p.add_argument("--derivation", default="E")
    p.add_argument("--t", default="1")
    p.add_argument("--bound", type=int, default=derivations.DEFAULT_ITERATION_BOUND)

    p = sub.add_parser("aut", parents=[common])
    p.add_argument("verb", choices=("compose", "invert", "apply", "conjugate-e", "restrict"))
    p.add_argument("--phi", required=True, help="MU:F, i.e. torus(MU) after shear(F)")
    p.add_argument("--psi")
    p.add_argument("--expr")

    p = sub.add_parser("mason", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--var", default="T")

    p = sub.add_parser("fermat-search", parents=[common])
    p.add_argument("--exponents", required=True, help="a,b,c")
    p.add_argument("--lambda", dest="lam", default="0")
    p.add_argument("--degree-bound", type=int, default=2)
    p.add_argument("--coefficients", default="-1..1", help="lo..hi or a comma list")
    p.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--max-candidates", type=int, default=10**7)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("stable-iso", parents=[common])
    p.add_argument("verb", choices=("build", "verify"))
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--file")
    return parser


_HANDLERS = {
    "surface-info": cmd_surface_info,
    "nf": cmd_nf,
    "eval-derivation": cmd_eval_derivation,
    "lnd-check": cmd_lnd_check,
    "kernel-basis": cmd_kernel_basis,
    "exp": cmd_exp,
    "aut": cmd_aut,
    "mason": cmd_mason,
    "fermat-search": cmd_fermat_search,
}


def _dispatch(argv: Sequence[str], stdout: TextIO, stdin: TextIO, stderr: TextIO) -> int:
    if "LND_ALGEBRA_MAX_TERMS" in os.environ:
        set_max_terms(int(os.environ["LND_ALGEBRA_MAX_TERMS"]))
    try:
        args = build_parser().parse_args(list(argv))
        session = Session.from_args(args)
        out = _Out(stdout, session.output_mode, args.command)
        if args.command == "stable-iso":
            return cmd_stable_iso(session, args, out, stdin)
        return _HANDLERS[args.command](session, args, out)
    except (UsageError, ParseError, ParameterError, derivations.DerivationError, aut.AutomorphismError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        stderr.write(f"resource limit: {exc}\n")
        return EXIT_LIMIT
    except (aut.ProportionalityError, cancellation.CertificateError) as exc:
        stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAILED
    except (ValueError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def run(argv: Sequence[str], stdin_text: str = "") -> Tuple[int, str, str]:
    """Run a command in-process; returns (exit status, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    status = _dispatch(argv, out, io.StringIO(stdin_text), err)
    return status, out.getvalue(), err.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(list(argv))
        except SystemExit as exc:
            return int(exc.code or 0)
    return _dispatch(argv, sys.stdout, sys.stdin, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
