"""Decoding with back-references to subtrees built earlier in the same tree.

This variant spends the smallest index values on pointers to previously
finished subtrees of the same nonterminal, then on terminal rules, and
only then falls through to the plain rule coding.  Referencing copies the
target subtree, so occurrences stay independent.  The map is total but no
longer one-to-one: distinct indices can name the same tree.

A node becomes a candidate target only once it is complete (all of its
descendants expanded), so nodes on the current expansion path are never
self-referenced.  Candidates are collected by depth-first preorder over
the outermost tree under construction, keeping the first of structurally
equal duplicates.  A candidate must also pass the eligibility predicate;
the default keeps subtrees of at least ``MIN_TARGET_NODES`` nodes, the
threshold under which referencing cannot beat spelling the subtree out.
The predicate is injectable, both for testing (an always-false predicate
makes this decoder agree with the plain one everywhere) and for trying
other referencing schemes.
"""

from dataclasses import dataclass, field
from typing import Callable

from .codec import DEFAULT_STEP_BUDGET, StepBudgetExceeded, decode
from .grammar import DerivationTree, Grammar, node_count, yield_of
from .intstack import IntegerizedStack

# Minimum size (nonterminal nodes + terminal leaves) of a referenceable subtree.
MIN_TARGET_NODES = 4


def default_eligibility(t: DerivationTree) -> bool:
    return node_count(t) >= MIN_TARGET_NODES


@dataclass
class _BuildNode:
    """Mutable node used while a tree is being constructed."""

    nt: str
    children: list = field(default_factory=list)
    complete: bool = False


@dataclass
class BuildCursor:
    """Handle on the outermost tree under construction (None before any)."""

    root: _BuildNode | None = None


def _freeze(node) -> DerivationTree | str:
    if isinstance(node, str):
        return node
    return DerivationTree(node.nt, tuple(_freeze(c) for c in node.children))


def _thaw(t: DerivationTree | str):
    # Copies are built complete: only finished subtrees are ever referenced.
    if isinstance(t, str):
        return t
    return _BuildNode(t.nt, [_thaw(c) for c in t.children], complete=True)


def lz_targets(
    nt: str,
    cursor: BuildCursor | None,
    eligible: Callable[[DerivationTree], bool] = default_eligibility,
) -> list[DerivationTree]:
    """Referenceable subtrees for an expansion of ``nt``, in preorder.

    A subtree qualifies when it is complete, labeled ``nt``, passes the
    eligibility predicate, and is not structurally equal to an earlier
    find (the first occurrence wins).
    """
    if cursor is None or cursor.root is None:
        return []
    out: list[DerivationTree] = []
    seen: set[DerivationTree] = set()
    stack = [cursor.root]
    while stack:
        node = stack.pop()
        if node.complete and node.nt == nt:
            frozen = _freeze(node)
            if frozen not in seen and eligible(frozen):
                seen.add(frozen)
                out.append(frozen)
        for c in reversed(node.children):
            if isinstance(c, _BuildNode):
                stack.append(c)
    return out


def lz_decode(
    g: Grammar,
    v: str,
    n: int,
    *,
    eligible: Callable[[DerivationTree], bool] = default_eligibility,
    max_steps: int | None = DEFAULT_STEP_BUDGET,
) -> DerivationTree:
    """Decode with back-references; identical to plain decode when no
    subtree is ever referenceable."""
    if not g.validated:
        raise ValueError("grammar must be validated (call validate first)")
    if v not in g.rules:
        raise ValueError(f"unknown nonterminal {v!r}")
    if n < 0:
        raise ValueError(f"index must be a non-negative integer (got {n})")
    t_counts = g._t_counts
    alts = g._alts
    cursor = BuildCursor()
    steps = 0

    def expand(nt: str, idx: int) -> _BuildNode:
        nonlocal steps
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise StepBudgetExceeded(f"lz decode exceeded {max_steps} expansions")
        targets = lz_targets(nt, cursor, eligible)
        if idx < len(targets):
            return _thaw(targets[idx])
        idx -= len(targets)
        t_count = t_counts[nt]
        if idx < t_count:
            rhs = alts[nt][idx][0]
            return _BuildNode(nt, list(rhs), complete=True)
        stack = IntegerizedStack(idx - t_count)
        which = stack.modpop(len(alts[nt]) - t_count)
        rhs, flags, arity = alts[nt][t_count + which]
        parts = stack.split(arity)
        node = _BuildNode(nt)
        if cursor.root is None:
            cursor.root = node
        k = 0
        for pos, sym in enumerate(rhs):
            if flags[pos]:
                node.children.append(expand(sym, parts[k]))
                k += 1
            else:
                node.children.append(sym)
        node.complete = True
        return node

    return _freeze(expand(v, n))


def diff_report(
    g: Grammar,
    v: str | None = None,
    upto: int = 0,
    *,
    sep: str = "",
    eligible: Callable[[DerivationTree], bool] = default_eligibility,
) -> list[tuple[int, str, str]]:
    """Indices below ``upto`` where the two decoders disagree on the yield.

    Rows are (index, referencing yield, plain yield), ascending.
    """
    if v is None:
        v = g.start
    rows = []
    for i in range(upto):
        plain = yield_of(decode(g, v, i), sep)
        referencing = yield_of(lz_decode(g, v, i, eligible=eligible), sep)
        if referencing != plain:
            rows.append((i, referencing, plain))
    return rows
