"""Strategy identifier registry.

Every strategy instance carries a short ``ident`` string, and match
records store only those strings.  This module maps them back to live
instances so any record can be replayed bit for bit.  The grammar is
``name`` or ``name:key=value,key=value``; values are integers or exact
rationals ("1/4" and "0.25" both work).
"""

from __future__ import annotations

from fractions import Fraction

from .builders import (
    ADAPTIVE_PRESETS,
    AdaptiveBuilder,
    BipartiteBuilder,
    ChaseBuilder,
    MulticolorChaseBuilder,
)
from .graph import TargetSpec
from .painters import (
    AdversarialPainter,
    GreedyPainter,
    MinThreatPainter,
    RandomPainter,
)

__all__ = [
    "UnknownStrategyError",
    "parse_fraction",
    "parse_target",
    "make_builder",
    "make_painter",
    "builder_target",
]


class UnknownStrategyError(ValueError):
    """The identifier names no known strategy or is missing options."""


# ======================================================================
# Small parsers
# ======================================================================


def parse_fraction(text: str) -> Fraction:
    """Exact rational from "1/4", "0.25", or "2"."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UnknownStrategyError("bad rational %r" % text) from exc


def parse_target(text: str, q: int = 2) -> TargetSpec:
    """Target from a compact name: "K5" (clique), "P4" (path), "K3,3".

    Unbalanced bicliques like "K2,3" become explicit edge lists; the
    named constructors cover only the shapes with specialised win checks.
    """
    s = text.strip().upper()
    body = s[1:]
    try:
        if s.startswith("K") and "," in body:
            left, _, right = body.partition(",")
            a, b = int(left), int(right)
            if a == b:
                return TargetSpec.biclique(a, q)
            edges = [(i, a + j) for i in range(a) for j in range(b)]
            return TargetSpec.arbitrary(edges, q)
        if s.startswith("K"):
            return TargetSpec.clique(int(body), q)
        if s.startswith("P"):
            return TargetSpec.path(int(body), q)
    except ValueError as exc:
        raise UnknownStrategyError("bad target %r" % text) from exc
    raise UnknownStrategyError("unrecognised target %r" % text)


def _split(ident: str) -> tuple[str, dict[str, str]]:
    name, _, rest = ident.partition(":")
    opts: dict[str, str] = {}
    if rest:
        for part in rest.split(","):
            key, eq, value = part.partition("=")
            if not eq or not key.strip() or not value.strip():
                raise UnknownStrategyError(
                    "malformed option %r in identifier %r" % (part, ident))
            opts[key.strip()] = value.strip()
    return name.strip(), opts


_REQUIRED = object()


def _int_opt(opts: dict[str, str], key: str, ident: str,
             default: object = _REQUIRED) -> int:
    if key not in opts:
        if default is _REQUIRED or default is None:
            raise UnknownStrategyError(
                "identifier %r is missing %s=" % (ident, key))
        return int(default)  # type: ignore[arg-type]
    try:
        return int(opts[key])
    except ValueError as exc:
        raise UnknownStrategyError(
            "option %s=%r in %r is not an integer"
            % (key, opts[key], ident)) from exc


# ======================================================================
# Factories
# ======================================================================


def make_builder(ident: str, target: TargetSpec, seed: int = 0):
    """Builder instance for an identifier; ``target`` fills omitted q/t."""
    name, opts = _split(ident)
    if name == "chase":
        return ChaseBuilder(_int_opt(opts, "t", ident, target.t))
    if name == "adaptive":
        t = _int_opt(opts, "t", ident, target.t)
        preset = ADAPTIVE_PRESETS.get(t)
        if preset is not None:
            alpha, mu, nu = preset
        elif all(k in opts for k in ("alpha", "mu", "nu")):
            alpha = mu = nu = None  # overwritten just below
        else:
            raise UnknownStrategyError(
                "adaptive has no preset for t=%d; give alpha=, mu= and nu="
                % t)
        if "alpha" in opts:
            alpha = parse_fraction(opts["alpha"])
        if "mu" in opts:
            mu = parse_fraction(opts["mu"])
        if "nu" in opts:
            nu = parse_fraction(opts["nu"])
        return AdaptiveBuilder(t, alpha, mu, nu)
    if name == "mchase":
        return MulticolorChaseBuilder(_int_opt(opts, "q", ident, target.q),
                                      _int_opt(opts, "t", ident, target.t))
    if name == "bipartite":
        return BipartiteBuilder(_int_opt(opts, "q", ident, target.q),
                                _int_opt(opts, "t", ident, target.t),
                                seed=seed)
    raise UnknownStrategyError("unknown builder identifier %r" % ident)


def make_painter(ident: str, target: TargetSpec, seed: int = 0):
    """Painter instance for an identifier.

    A bare "random" takes the match seed, so replays of records written
    by a seeded run stay deterministic either way.
    """
    name, opts = _split(ident)
    q = target.q
    if name == "random":
        return RandomPainter(q, _int_opt(opts, "seed", ident, seed))
    if name == "greedy":
        return GreedyPainter(q, target)
    if name == "minthreat":
        return MinThreatPainter(q, target,
                                depth=_int_opt(opts, "depth", ident, 2))
    if name == "adversarial":
        return AdversarialPainter(q, target,
                                  budget=_int_opt(opts, "budget", ident))
    raise UnknownStrategyError("unknown painter identifier %r" % ident)


def builder_target(ident: str) -> TargetSpec:
    """The target a builder identifier is constructed to force."""
    name, opts = _split(ident)
    if name in ("chase", "adaptive"):
        return TargetSpec.clique(_int_opt(opts, "t", ident), 2)
    if name == "mchase":
        return TargetSpec.clique(_int_opt(opts, "t", ident),
                                 _int_opt(opts, "q", ident))
    if name == "bipartite":
        return TargetSpec.biclique(_int_opt(opts, "t", ident),
                                   _int_opt(opts, "q", ident))
    raise UnknownStrategyError("unknown builder identifier %r" % ident)
