"""Catalogue of test functions on the torus.

Every family is band-limited and exposes its exact coefficient table through
``spectrum()``. Coefficient rules (``power``, ``log``, ``invlog``) are also
evaluable at arbitrary indices, which the sharpness experiments use to treat
infinite series exactly in coefficient space.

A family can be written as a string, e.g. ``"harmonic(3)"``,
``"lacunary(rule=inv, J=5)"`` or ``"monotone-cos(rule=log(2), M=64)"``, or as a
mapping with an ``id`` key and the same parameter names.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import AliasingError, ConfigurationError, ParameterError
from .signal import Grid, PeriodicSignal, SpectralRep, synthesize


@dataclass(frozen=True)
class CoefficientRule:
    """Nonnegative coefficient sequence ``a(m)`` for ``m >= 1``.

    Kinds
    -----
    ``power(beta)``
        ``m^-beta``
    ``inv``
        ``1/m``
    ``log(gamma)``
        ``1 / (m log^gamma(m+1))``
    ``invlog(gamma)``
        ``1 / log^gamma(m+1)``
    """

    kind: str
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in ("power", "inv", "log", "invlog"):
            raise ConfigurationError(f"unknown coefficient rule {self.kind!r}", "rule")

    def __call__(self, m) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        if self.kind == "power":
            return m ** (-self.param)
        if self.kind == "inv":
            return 1.0 / m
        if self.kind == "log":
            return 1.0 / (m * np.log(m + 1.0) ** self.param)
        return 1.0 / np.log(m + 1.0) ** self.param

    def describe(self) -> str:
        return self.kind if self.kind == "inv" else f"{self.kind}({self.param:g})"


def parse_rule(obj) -> CoefficientRule:
    """Parse ``'inv'``, ``'power(1.5)'`` or ``{'kind': 'log', 'param': 2}``."""
    if isinstance(obj, CoefficientRule):
        return obj
    if isinstance(obj, dict):
        return CoefficientRule(str(obj.get("kind")), float(obj.get("param", 0.0)))
    if isinstance(obj, str):
        node = _parse_expr(obj, "rule")
        if isinstance(node, ast.Name):
            return CoefficientRule(node.id)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1:
            return CoefficientRule(node.func.id, float(ast.literal_eval(node.args[0])))
    raise ConfigurationError(f"cannot parse coefficient rule {obj!r}", "rule")


class Family:
    """Base class: a named, parameterized band-limited test function."""

    id: str = ""

    def spectrum(self) -> SpectralRep:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def sample(self, grid: Grid) -> PeriodicSignal:
        return sample(self, grid)


@dataclass(frozen=True)
class Harmonic(Family):
    """``cos(kx)`` (or ``sin(kx)``)."""

    k: int
    kind: str = "cos"
    id = "harmonic"

    def spectrum(self) -> SpectralRep:
        if self.kind == "cos":
            return SpectralRep.from_dict({self.k: 0.5, -self.k: 0.5}) if self.k else SpectralRep([1.0])
        if self.kind == "sin":
            return SpectralRep.from_dict({self.k: -0.5j, -self.k: 0.5j})
        raise ConfigurationError(f"unknown harmonic kind {self.kind!r}", "kind")

    def describe(self) -> str:
        return f"harmonic({self.k})" if self.kind == "cos" else f"harmonic({self.k}, kind=sin)"


@dataclass(frozen=True)
class TrigPoly(Family):
    """``sum a_k cos(kx) + sum b_k sin(kx)`` with ``a`` from ``k=0``, ``b`` from ``k=1``."""

    cos: tuple = ()
    sin: tuple = ()
    label: str = ""
    id = "trig-poly"

    def spectrum(self) -> SpectralRep:
        return SpectralRep.from_cos_sin(self.cos, self.sin)

    def describe(self) -> str:
        if self.label:
            return self.label
        return f"trig-poly(cos={list(self.cos)}, sin={list(self.sin)})"


@dataclass(frozen=True)
class Lacunary(Family):
    """``sum_{j=1..J} a_j cos(2^j x)``.

    Coefficients come either from an explicit list or from a rule in ``j``.
    """

    J: int
    rule: CoefficientRule | None = None
    coeffs: tuple = ()
    id = "lacunary"

    def coefficients(self) -> np.ndarray:
        if self.coeffs:
            if len(self.coeffs) != self.J:
                raise ParameterError("lacunary coefficient list must have J entries")
            return np.asarray(self.coeffs, dtype=float)
        rule = self.rule or CoefficientRule("inv")
        return rule(np.arange(1, self.J + 1))

    def spectrum(self) -> SpectralRep:
        a = self.coefficients()
        table = {}
        for j, v in enumerate(a, start=1):
            table[2**j] = v / 2
            table[-(2**j)] = v / 2
        return SpectralRep.from_dict(table) if table else SpectralRep.zeros()

    def describe(self) -> str:
        if self.coeffs:
            return f"lacunary(coeffs={list(self.coeffs)}, J={self.J})"
        return f"lacunary(rule={(self.rule or CoefficientRule('inv')).describe()}, J={self.J})"


@dataclass(frozen=True)
class Monotone(Family):
    """Partial sum ``sum_{m=1..M} a_m cos(mx)`` (or ``sin``) of a rule-defined series."""

    rule: CoefficientRule
    M: int
    kind: str = "cos"
    id = "monotone"

    def spectrum(self) -> SpectralRep:
        a = self.rule(np.arange(1, self.M + 1))
        if self.kind == "cos":
            return SpectralRep.from_cos_sin(np.concatenate([[0.0], a]))
        if self.kind == "sin":
            return SpectralRep.from_cos_sin((), a)
        raise ConfigurationError(f"unknown monotone kind {self.kind!r}", "kind")

    def describe(self) -> str:
        return f"monotone-{self.kind}(rule={self.rule.describe()}, M={self.M})"


@dataclass(frozen=True)
class Weierstrass(Family):
    """``sum_{j=1..J} 2^{-j alpha} cos(2^j x)``."""

    alpha: float
    J: int
    id = "weierstrass"

    def spectrum(self) -> SpectralRep:
        coeffs = tuple(2.0 ** (-j * self.alpha) for j in range(1, self.J + 1))
        return Lacunary(self.J, coeffs=coeffs).spectrum()

    def describe(self) -> str:
        return f"weierstrass(alpha={self.alpha:g}, J={self.J})"


@dataclass(frozen=True)
class Explicit(Family):
    """A coefficient table supplied directly, e.g. a seeded random polynomial."""

    spec: SpectralRep = field(compare=False)
    label: str = "explicit"
    id = "explicit"

    def spectrum(self) -> SpectralRep:
        return self.spec

    def describe(self) -> str:
        return self.label


def random_trig_poly(K: int, decay: float, seed: int, label: str | None = None) -> Explicit:
    """Real trigonometric polynomial with ``|c_k| = k^-decay`` and random phases."""
    rng = np.random.default_rng(seed)
    k = np.arange(1, K + 1)
    phase = rng.uniform(0.0, 2 * math.pi, K)
    a = k ** (-float(decay)) * np.cos(phase) * 2
    b = k ** (-float(decay)) * np.sin(phase) * 2
    spec = SpectralRep.from_cos_sin(np.concatenate([[0.0], a]), b)
    return Explicit(spec, label or f"random(K={K}, decay={decay:g}, seed={seed})")


def sample(family: Family, grid: Grid) -> PeriodicSignal:
    """Exact samples of a family on a grid.

    Raises
    ------
    AliasingError
        If the family's degree exceeds ``N/2 - 1``.
    """
    spec = family.spectrum()
    top = spec.support()
    if top > grid.max_freq:
        raise AliasingError(f"{family.describe()} has degree {top} > N/2 - 1 = {grid.max_freq}")
    return synthesize(spec, grid)


def _parse_expr(text: str, key: str):
    try:
        return ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ConfigurationError(f"cannot parse {text!r}", key) from exc


def _literal(node, key):
    if isinstance(node, (ast.Name, ast.Call)):
        return ast.unparse(node)
    try:
        return ast.literal_eval(node)
    except ValueError as exc:
        raise ConfigurationError(f"bad value {ast.unparse(node)!r}", key) from exc


_BUILDERS: dict[str, Callable[..., Family]] = {}


def _builder(name):
    def deco(fn):
        _BUILDERS[name] = fn
        return fn
    return deco


@_builder("harmonic")
def _b_harmonic(k, kind="cos"):
    return Harmonic(int(k), str(kind))


@_builder("trig-poly")
def _b_trig(cos=(), sin=()):
    return TrigPoly(tuple(float(v) for v in cos), tuple(float(v) for v in sin))


@_builder("lacunary")
def _b_lacunary(J=None, rule=None, coeffs=()):
    coeffs = tuple(float(v) for v in coeffs)
    if J is None:
        J = len(coeffs)
    return Lacunary(int(J), parse_rule(rule) if rule is not None else None, coeffs)


@_builder("monotone-cos")
def _b_mcos(rule, M):
    return Monotone(parse_rule(rule), int(M), "cos")


@_builder("monotone-sin")
def _b_msin(rule, M):
    return Monotone(parse_rule(rule), int(M), "sin")


@_builder("weierstrass")
def _b_weier(alpha, J):
    return Weierstrass(float(alpha), int(J))


@_builder("random")
def _b_random(K, decay=2.0, seed=0):
    return random_trig_poly(int(K), float(decay), int(seed))


FAMILY_IDS = tuple(sorted(_BUILDERS))


def parse_family(obj: Any, key: str = "family") -> Family:
    """Build a :class:`Family` from a string or mapping description.

    Raises
    ------
    ConfigurationError
        Unknown family id or malformed parameters; the message names ``key``.
    """
    if isinstance(obj, Family):
        return obj
    if isinstance(obj, dict):
        params = dict(obj)
        fid = params.pop("id", None)
        args: list = []
    elif isinstance(obj, str):
        text = obj.strip()
        head, sep, rest = text.partition("(")
        fid = head.strip()
        args, params = [], {}
        if sep:
            node = _parse_expr("f(" + rest, key)
            if not isinstance(node, ast.Call):
                raise ConfigurationError(f"cannot parse {text!r}", key)
            args = [_literal(a, key) for a in node.args]
            params = {kw.arg: _literal(kw.value, key) for kw in node.keywords}
    else:
        raise ConfigurationError(f"expected a family description, got {type(obj).__name__}", key)
    if fid not in _BUILDERS:
        raise ConfigurationError(f"unknown family id {fid!r}; known: {', '.join(FAMILY_IDS)}", key)
    try:
        return _BUILDERS[fid](*args, **params)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"bad parameters for {fid}: {exc}", key) from exc


__all__ = [
    "CoefficientRule", "Family", "Harmonic", "TrigPoly", "Lacunary", "Monotone",
    "Weierstrass", "Explicit", "random_trig_poly", "sample", "parse_family",
    "parse_rule", "FAMILY_IDS",
]
