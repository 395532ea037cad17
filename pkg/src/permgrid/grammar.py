"""Weighted context-free grammars and their counting series.

A grammar is transcribed syntactically into one polynomial equation per
variable; every terminal contributes its weight ``z^a t^b`` and every
production may carry an extra monomial factor.  ``t`` is eliminated by the
substitution ``t = 1/(1-z)``, so all series are univariate in ``z``.

Text format::

    start S
    term D z^1 t^0
    S -> eps
    S -> D S L Cb
    S -> C M Cb * z^0 t^1
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from math import comb
from typing import Iterable, Mapping

from .series import TruncatedSeries

DEFAULT_ORDER = 100


class GrammarError(ValueError):
    pass


class NotZGuardedError(GrammarError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    """The monomial ``z^z * t^t``."""

    z: int = 0
    t: int = 0

    def __post_init__(self):
        if self.z < 0 or self.t < 0:
            raise GrammarError(f"negative exponent in weight z^{self.z} t^{self.t}")

    def __mul__(self, other: "Weight") -> "Weight":
        return Weight(self.z + other.z, self.t + other.t)

    def __str__(self) -> str:
        return f"z^{self.z} t^{self.t}"

    @property
    def is_one(self) -> bool:
        return self.z == 0 and self.t == 0

    @classmethod
    def parse(cls, text: str) -> "Weight":
        m = re.fullmatch(r"\s*z\^(\d+)\s+t\^(\d+)\s*", text)
        if not m:
            raise GrammarError(f"malformed weight {text!r}; expected 'z^a t^b'")
        return cls(int(m.group(1)), int(m.group(2)))


ONE = Weight()


@dataclass(frozen=True)
class Terminal:
    name: str
    weight: Weight = ONE


@dataclass(frozen=True)
class Production:
    head: str
    body: tuple[str, ...]
    extra_weight: Weight = ONE


@dataclass(frozen=True)
class GrammarSystem:
    terminals: tuple[Terminal, ...]
    productions: tuple[Production, ...]
    start: str
    name: str = field(default="", compare=False)

    def __post_init__(self):
        seen = set()
        for t in self.terminals:
            if t.name in seen:
                raise GrammarError(f"terminal {t.name!r} declared twice")
            seen.add(t.name)
        variables = set(self.variables)
        clash = variables & seen
        if clash:
            raise GrammarError(f"symbols used as both variable and terminal: {sorted(clash)}")
        if self.start not in variables:
            raise GrammarError(f"start variable {self.start!r} has no production")
        for p in self.productions:
            for sym in p.body:
                if sym not in variables and sym not in seen:
                    raise GrammarError(f"undeclared symbol {sym!r} in production for {p.head}")
        z_free_order(self)

    @property
    def variables(self) -> tuple[str, ...]:
        out: list[str] = []
        for p in self.productions:
            if p.head not in out:
                out.append(p.head)
        return tuple(out)

    @property
    def terminal_map(self) -> dict[str, Terminal]:
        return {t.name: t for t in self.terminals}

    def productions_for(self, head: str) -> list[Production]:
        return [p for p in self.productions if p.head == head]

    def production_weight(self, p: Production) -> Weight:
        w = p.extra_weight
        tmap = self.terminal_map
        for sym in p.body:
            if sym in tmap:
                w = w * tmap[sym].weight
        return w

    def rules(self) -> str:
        """Rule block with alternatives joined by ``|``."""
        lines = []
        for v in self.variables:
            alts = []
            for p in self.productions_for(v):
                alt = " ".join(p.body) if p.body else "eps"
                if not p.extra_weight.is_one:
                    alt += f" * {p.extra_weight}"
                alts.append(alt)
            lines.append(f"{v} -> " + " | ".join(alts))
        return "\n".join(lines)


def z_free_order(g: GrammarSystem) -> list[str]:
    """Variables ordered so that every dependency along a production with no
    ``z`` weight comes first.

    Raises NotZGuardedError if those dependencies contain a cycle, i.e. some
    recursion can repeat without consuming a ``z``.
    """
    variables = g.variables
    varset = set(variables)
    ts: TopologicalSorter = TopologicalSorter()
    for v in variables:
        ts.add(v)
    for p in g.productions:
        if g.production_weight(p).z == 0:
            for sym in p.body:
                if sym in varset:
                    ts.add(p.head, sym)
    try:
        order = list(ts.static_order())
    except CycleError as exc:
        raise NotZGuardedError(f"grammar not z-guarded: cycle {exc.args[1]}") from None
    return order


# --------------------------------------------------------------------------
# text format


def parse_grammar(text: str, name: str = "") -> GrammarSystem:
    start = None
    terminals = []
    productions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("start "):
                start = line.split(None, 1)[1].strip()
            elif line.startswith("term "):
                _, tname, rest = line.split(None, 2)
                terminals.append(Terminal(tname, Weight.parse(rest)))
            elif "->" in line:
                head, body = (s.strip() for s in line.split("->", 1))
                extra = ONE
                if "*" in body:
                    body, wtxt = body.split("*", 1)
                    extra = Weight.parse(wtxt)
                syms = tuple(body.split())
                if syms == ("eps",):
                    syms = ()
                if not head or " " in head:
                    raise GrammarError(f"bad production head {head!r}")
                productions.append(Production(head, syms, extra))
            else:
                raise GrammarError(f"unrecognised line {line!r}")
        except GrammarError as exc:
            raise GrammarError(f"line {lineno}: {exc}") from None
        except ValueError:
            raise GrammarError(f"line {lineno}: malformed line {line!r}") from None
    if not productions:
        raise GrammarError("grammar has no productions")
    if start is None:
        start = productions[0].head
    return GrammarSystem(tuple(terminals), tuple(productions), start, name)


def format_grammar(g: GrammarSystem) -> str:
    lines = [f"start {g.start}"]
    lines += [f"term {t.name} {t.weight}" for t in g.terminals]
    for p in g.productions:
        body = " ".join(p.body) if p.body else "eps"
        if not p.extra_weight.is_one:
            body += f" * {p.extra_weight}"
        lines.append(f"{p.head} -> {body}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# built-in grammars
#
# Variable names: Cb is the Catalan block whose vertical steps may carry
# points, Cp its nonempty version, Eb a staircase of decorated steps.
# Terminals: U/D vertical steps, R/L horizontal steps, Ub/Db decorated
# vertical steps, U1 the step carrying the first right-hand point (one
# mandatory point, hence z^2 t).

_BUILTIN_TEXT = {
    "catalan": """\
start C
term U z^1 t^0
term R z^0 t^0
C -> eps
C -> R C U C
""",
    "classA": """\
start S
term D z^1 t^0
term Db z^1 t^1
term L z^0 t^0
S -> eps
S -> D S L Cb
Cb -> eps
Cb -> Db Cb L Cb
""",
    "classB": """\
start S
term U z^1 t^0
term R z^0 t^0
term Ub z^1 t^1
term U1 z^2 t^1
S -> C
S -> C M Cb * z^0 t^1
M -> U C M Cb R
M -> U1 Cp R
M -> B Eb Ub Cp R
B -> U1 R
B -> U C B Eb R
C -> eps
C -> U C R C
Cb -> eps
Cb -> Ub Cb R Cb
Cp -> Ub Cb R Cb
Eb -> eps
Eb -> Ub R Eb
""",
    "classC": """\
start S
term U z^1 t^0
term R z^0 t^0
term Ub z^1 t^1
term U1 z^2 t^1
S -> C
S -> C M Cb
M -> U1 Cp R
M -> U C B Cp R
M -> U C M Cb R
B -> U1 R
B -> U C B R
C -> eps
C -> U C R C
Cb -> eps
Cb -> Ub Cb R Cb
Cp -> Ub Cb R Cb
""",
}

BUILTIN_NAMES = tuple(_BUILTIN_TEXT)
CLASS_GRAMMARS = {"A": "classA", "B": "classB", "C": "classC"}


def builtin_grammar(name: str) -> GrammarSystem:
    name = CLASS_GRAMMARS.get(name, name)
    try:
        text = _BUILTIN_TEXT[name]
    except KeyError:
        raise GrammarError(
            f"unknown grammar {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None
    return parse_grammar(text, name)


def builtin_text(name: str) -> str:
    return _BUILTIN_TEXT[CLASS_GRAMMARS.get(name, name)]


# --------------------------------------------------------------------------
# transcription


@dataclass(frozen=True)
class Term:
    """``coef * z^z * t^t * prod(factors)``; factors are variable names."""

    coef: int
    z: int
    t: int
    factors: tuple[str, ...]


def _series_name(var: str) -> str:
    return var.lower()


def _fmt_monomial(term: Term) -> str:
    parts = []
    if term.z:
        parts.append("z" if term.z == 1 else f"z^{term.z}")
    if term.t:
        parts.append("t" if term.t == 1 else f"t^{term.t}")
    for f, k in Counter(term.factors).items():
        name = _series_name(f)
        parts.append(name if k == 1 else f"{name}^{k}")
    body = "*".join(parts) if parts else "1"
    if term.coef != 1:
        body = f"{term.coef}*{body}" if parts else str(term.coef)
    return body


@dataclass(frozen=True)
class AlgebraicSystem:
    """One polynomial right-hand side per variable: ``v = sum(terms)``."""

    equations: Mapping[str, tuple[Term, ...]]
    start: str

    def __str__(self) -> str:
        return "\n".join(
            f"{_series_name(v)} = " + " + ".join(_fmt_monomial(t) for t in terms)
            for v, terms in self.equations.items()
        )

    def equation(self, var: str) -> str:
        terms = self.equations[var]
        return f"{_series_name(var)} = " + " + ".join(_fmt_monomial(t) for t in terms)


def transcribe(g: GrammarSystem) -> AlgebraicSystem:
    """Syntactic transcription, merging identical monomials."""
    variables = set(g.variables)
    eqs: dict[str, tuple[Term, ...]] = {}
    for v in g.variables:
        acc: Counter = Counter()
        keys: list = []
        for p in g.productions_for(v):
            w = g.production_weight(p)
            factors = tuple(sorted(s for s in p.body if s in variables))
            key = (w.z, w.t, factors)
            if key not in acc:
                keys.append(key)
            acc[key] += 1
        eqs[v] = tuple(Term(acc[k], k[0], k[1], k[2]) for k in keys)
    return AlgebraicSystem(eqs, g.start)


# --------------------------------------------------------------------------
# solving


class _LazyProduct:
    """Coefficients of ``t^b * f1 * ... * fr`` produced one index at a time.

    Partial products are extended incrementally, so requesting indices
    0, 1, 2, ... in turn costs O(j) per factor at index j.
    """

    def __init__(self, factors: list[list[int]]):
        self.factors = factors
        self.partials: list[list[int]] = [[] for _ in factors]

    def coeff(self, j: int) -> int:
        prev = None
        for f, part in zip(self.factors, self.partials):
            while len(part) <= j:
                k = len(part)
                if prev is None:
                    part.append(f[k])
                else:
                    part.append(sum(prev[i] * f[k - i] for i in range(k + 1) if prev[i]))
            prev = part
        return prev[j] if prev is not None else (1 if j == 0 else 0)


def _t_series(order: int, power: int, substitute: bool) -> list[int]:
    if not substitute:
        return [1] + [0] * order
    # 1/(1-z)^b
    return [comb(k + power - 1, power - 1) for k in range(order + 1)]


def solve_series(
    g: GrammarSystem, order: int = DEFAULT_ORDER, t_substitution: bool = True
) -> dict[str, TruncatedSeries]:
    """Least fixed point of the transcribed system, truncated at ``z^order``.

    Coefficients are extracted order by order: with variables visited in
    z-free dependency order, coefficient k of each variable depends only on
    coefficients below k and on coefficient k of variables already visited.
    ``t_substitution`` replaces ``t`` by ``1/(1-z)``; otherwise ``t = 1``.
    """
    if order < 0:
        raise GrammarError("order must be nonnegative")
    system = transcribe(g)
    visit = z_free_order(g)
    coeffs: dict[str, list[int]] = {v: [] for v in g.variables}
    plans: dict[str, list[tuple[int, int, _LazyProduct]]] = {}
    for v in g.variables:
        plan = []
        for term in system.equations[v]:
            factors = [coeffs[f] for f in term.factors]
            if term.t:
                factors.insert(0, _t_series(order, term.t, t_substitution))
            plan.append((term.coef, term.z, _LazyProduct(factors)))
        plans[v] = plan
    for k in range(order + 1):
        for v in visit:
            total = 0
            for coef, zexp, prod in plans[v]:
                j = k - zexp
                if j >= 0:
                    total += coef * prod.coeff(j)
            if total < 0:
                raise ArithmeticError(f"negative coefficient {total} for {v} at z^{k}")
            coeffs[v].append(total)
    return {v: TruncatedSeries(coeffs[v]) for v in g.variables}


def start_series(g: GrammarSystem, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return solve_series(g, order)[g.start]


def evaluate_equation(
    terms: Iterable[Term], values: Mapping[str, TruncatedSeries], order: int,
    t_substitution: bool = True,
) -> TruncatedSeries:
    """Right-hand side of an equation evaluated with plain series arithmetic."""
    tz = TruncatedSeries.geometric(order) if t_substitution else TruncatedSeries.constant(1, order)
    total = TruncatedSeries.constant(0, order)
    for term in terms:
        acc = TruncatedSeries.z(order, term.z) * term.coef
        for _ in range(term.t):
            acc = acc * tz
        for f in term.factors:
            acc = acc * values[f].truncate(order)
        total = total + acc
    return total


def fixed_point_sweeps(
    g: GrammarSystem, order: int, t_substitution: bool = True
) -> tuple[dict[str, TruncatedSeries], dict[str, list[int]]]:
    """Plain Gauss-Seidel iteration on whole truncated series, from zero.

    Returns the limit and, per variable, the sweep after which each
    coefficient stopped changing.  Stops when a sweep changes nothing and
    raises NotZGuardedError if that has not happened after ``order + 2``
    sweeps.
    """
    system = transcribe(g)
    try:
        visit = z_free_order(g)
    except NotZGuardedError:
        visit = list(g.variables)
    values = {v: TruncatedSeries.constant(0, order) for v in g.variables}
    stable = {v: [0] * (order + 1) for v in g.variables}
    for sweep in range(1, order + 3):
        changed = False
        for v in visit:
            new = evaluate_equation(system.equations[v], values, order, t_substitution)
            old = values[v]
            for k in range(order + 1):
                if new[k] != old[k]:
                    stable[v][k] = sweep
                    changed = True
            values[v] = new
        if not changed:
            return values, stable
    raise NotZGuardedError(
        f"grammar not z-guarded: no convergence after {order + 2} sweeps"
    )


def residuals(
    g: GrammarSystem, values: Mapping[str, TruncatedSeries], order: int
) -> dict[str, TruncatedSeries]:
    """``v - rhs(v)`` for every equation, to ``z^order``."""
    system = transcribe(g)
    return {
        v: values[v].truncate(order) - evaluate_equation(terms, values, order)
        for v, terms in system.equations.items()
    }


def check_unambiguity_counts(g: GrammarSystem, cls, n_max: int, cap: int | None = None) -> bool:
    """Series coefficients equal brute-force counts of ``cls`` (a JuxtSpec
    or ClassSpec) for every length up to ``n_max``.  Evidence for
    unambiguity, not a proof of it."""
    from .juxtaposition import JuxtSpec, counts_by_bruteforce
    from .perm import enumerate_class

    if isinstance(cls, JuxtSpec):
        counts = counts_by_bruteforce(cls, n_max, cap=cap)
    else:
        counts = [len(enumerate_class(cls, n, cap=cap)) for n in range(n_max + 1)]
    return list(start_series(g, n_max)) == counts
