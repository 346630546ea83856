"""Canonical configurations: the free distributive lattice over state names.

A configuration says in which states a system may or must be at the same
time: disjunction for the usual "one of these states" nondeterminism,
conjunction for "all of these views at once".  ``T`` (top) means the
behaviour is unconstrained from here on, ``F`` (bottom) that no behaviour
at all is allowed.

Every configuration is stored in irredundant disjunctive normal form: a
set of clauses, each clause a set of state names.  A clause stands for
the conjunction of its members, the clause set for the disjunction of its
clauses, and the set is kept as an antichain (no clause contains
another).  That form is unique per lattice element, so ``==`` decides
lattice equality, instances hash well, and equal values are interned to
the same object.

All values are immutable; the operations below are pure and safe to use
from multiple threads.  The intern table is a plain dict used as a cache:
a race can at worst build a duplicate instance, which still compares
equal.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional, Union

Clause = frozenset[str]


class Kind(Enum):
    """Coarse shape of a configuration."""

    TOP = "top"
    BOT = "bot"
    STATE = "state"
    COMPOUND = "compound"


def _minimize(clauses: Iterable[Clause]) -> list[Clause]:
    # Absorption: a clause that contains another clause is redundant.
    uniq = sorted(set(clauses), key=len)
    kept: list[Clause] = []
    for c in uniq:
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


_interned: dict[tuple, "Config"] = {}


class Config:
    """One lattice element in canonical form.

    Do not mutate.  Build values with :func:`embed`, :func:`top`,
    :func:`bot` and the operations below; the constructor accepts any
    iterable of clauses and canonicalizes it.
    """

    __slots__ = ("clauses", "key", "_hash")

    def __new__(cls, clauses: Iterable[Iterable[str]]):
        minimal = _minimize(frozenset(c) for c in clauses)
        key = tuple(sorted(tuple(sorted(c)) for c in minimal))
        hit = _interned.get(key)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.clauses = frozenset(minimal)
        self.key = key
        self._hash = hash(key)
        _interned[key] = self
        return self

    @property
    def is_top(self) -> bool:
        return self.key == ((),)

    @property
    def is_bot(self) -> bool:
        return self.key == ()

    @property
    def single_state(self) -> Optional[str]:
        """The state q if this is the embedding of a single state, else None."""
        if len(self.key) == 1 and len(self.key[0]) == 1:
            return self.key[0][0]
        return None

    def states(self) -> frozenset[str]:
        """All state names occurring in the configuration."""
        return frozenset(q for c in self.key for q in c)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Config) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __or__(self, other: "Config") -> "Config":
        return join(self, other)

    def __and__(self, other: "Config") -> "Config":
        return meet(self, other)

    def __str__(self):
        if self.is_bot:
            return "F"
        if self.is_top:
            return "T"
        return " | ".join("&".join(c) for c in self.key)

    def __repr__(self):
        return f"Config({str(self)!r})"


_BOT = Config(())
_TOP = Config((frozenset(),))


def top() -> Config:
    """The greatest element: everything is allowed."""
    return _TOP


def bot() -> Config:
    """The least element: nothing is allowed."""
    return _BOT


def embed(q: str) -> Config:
    """The configuration consisting of the single state ``q``."""
    return Config((frozenset((q,)),))


def join(a: Config, b: Config) -> Config:
    """Disjunction of two configurations."""
    return Config(a.clauses | b.clauses)


def meet(a: Config, b: Config) -> Config:
    """Conjunction of two configurations (pairwise clause unions)."""
    return Config(c1 | c2 for c1 in a.clauses for c2 in b.clauses)


def join_all(items: Iterable[Config]) -> Config:
    """Disjunction of finitely many configurations; empty gives bottom."""
    clauses: list[Clause] = []
    for e in items:
        clauses.extend(e.clauses)
    return Config(clauses)


def meet_all(items: Iterable[Config]) -> Config:
    """Conjunction of finitely many configurations; empty gives top."""
    out = _TOP
    for e in items:
        out = meet(out, e)
    return out


def substitute(e: Config, f: Union[Mapping[str, Config], Callable[[str], Config]]) -> Config:
    """Replace every state in ``e`` by ``f(state)`` and renormalize.

    ``f`` must cover every state occurring in ``e``; a missing state
    surfaces as the mapping's KeyError, which is a caller defect.
    """
    lookup = f.__getitem__ if isinstance(f, Mapping) else f
    return join_all(meet_all(lookup(q) for q in clause) for clause in e.clauses)


def classify(e: Config) -> Kind:
    """Tag a configuration as top, bottom, a single state, or compound."""
    if e.is_bot:
        return Kind.BOT
    if e.is_top:
        return Kind.TOP
    if e.single_state is not None:
        return Kind.STATE
    return Kind.COMPOUND


def dnf(e: Config) -> frozenset[Clause]:
    """The canonical clause set of ``e``.

    Bottom gives the empty set, top the set holding one empty clause.
    Removing any clause would change the element.
    """
    return e.clauses


PLAIN_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_+^.]*")
_RESERVED = {"ia", "aia", "states", "inputs", "outputs", "init", "T", "F"}


def quote_name(name: str) -> str:
    """A state name as a single unambiguous token (quoted when needed)."""
    if PLAIN_NAME.fullmatch(name) and name not in _RESERVED and not name.startswith("~"):
        return name
    escaped = name.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def expr_str(e: Config) -> str:
    """Unambiguous expression rendering of ``e``.

    Like ``str`` but with state names quoted whenever they could be read
    as operators or constants, so distinct configurations never render
    alike; used for file output and for naming synthesized states.
    """
    if e.is_bot:
        return "F"
    if e.is_top:
        return "T"
    return " | ".join("&".join(quote_name(q) for q in clause) for clause in e.key)
