"""The bijection between natural numbers and derivation trees.

``decode`` maps an index to the tree it names; ``encode`` inverts it
exactly.  For a nonterminal v with terminal rules T_v and remaining rules
N_v (normalized order), index n means:

* n < |T_v|: the single node applying terminal rule n;
* otherwise n - |T_v| is an IntegerizedStack: popping modulo |N_v| picks
  the rule, and splitting the rest yields one index per nonterminal on
  the right-hand side, consumed left to right.

Keeping terminal rules in their own index range is what makes the map
one-to-one: a packed stack value would otherwise collide with the small
indices naming terminal rules.

Both directions walk an explicit stack rather than recursing: an index n
can name a tree whose depth grows linearly in n (unary rule chains), far
past any recursion limit.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .grammar import DerivationTree, Grammar, rule_index_of
from .intstack import join

DEFAULT_STEP_BUDGET = 1_000_000


class StepBudgetExceeded(RuntimeError):
    """Decoding performed more expansions than the configured budget.

    With a validated grammar this cannot happen for any finite index that
    names a tree within the budget; it is a hard stop against validator
    bugs and against indices whose trees are too large to materialize.
    """


@dataclass
class DecodeStats:
    """Counts nonterminal expansions (one per decode of a tree node)."""

    expansions: int = 0


def decode(
    g: Grammar,
    v: str,
    n: int,
    *,
    max_steps: int | None = DEFAULT_STEP_BUDGET,
    stats: DecodeStats | None = None,
) -> DerivationTree:
    """Return the n'th derivation tree rooted at nonterminal v."""
    _check_args(g, v, n)
    t_counts = g._t_counts
    alts = g._alts
    isqrt = math.isqrt
    steps = 0

    # Phase 1: expand every node, recording parent links.  The stack
    # arithmetic is IntegerizedStack.modpop followed by .split, written
    # out inline because this loop dominates enumeration time.
    entries: list = []  # (nt, children list, parent entry, slot in parent)
    single: DerivationTree | None = None
    work: list = [(v, n, -1, 0)]
    while work:
        nt, idx, parent, slot = work.pop()
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise StepBudgetExceeded(
                f"decode exceeded {max_steps} expansions at nonterminal {nt!r}; "
                f"the tree for this index may be too large to materialize"
            )
        t_count = t_counts[nt]
        if idx < t_count:
            node = DerivationTree(nt, alts[nt][idx][0])
            if parent < 0:
                single = node
            else:
                entries[parent][1][slot] = node
            continue
        value = idx - t_count
        which = value % (len(alts[nt]) - t_count)
        value //= len(alts[nt]) - t_count
        rhs, flags, arity = alts[nt][t_count + which]
        me = len(entries)
        children = list(rhs)  # terminals stay; nonterminal slots overwritten
        entries.append((nt, children, parent, slot))
        remaining = arity
        for pos, is_nt in enumerate(flags):
            if not is_nt:
                continue
            remaining -= 1
            if remaining:
                m = isqrt(value)
                d = value - m * m
                if d < m:
                    value, part = d, m
                else:
                    value, part = m, m * m + 2 * m - value
            else:
                part = value
            work.append((rhs[pos], part, me, pos))

    if stats is not None:
        stats.expansions += steps
    if single is not None:
        return single

    # Phase 2: children were all created after their parents, so a reverse
    # sweep freezes every node before its parent needs it.
    root: DerivationTree | None = None
    for i in range(len(entries) - 1, -1, -1):
        nt, children, parent, slot = entries[i]
        node = DerivationTree(nt, tuple(children))
        if parent < 0:
            root = node
        else:
            entries[parent][1][slot] = node
    assert root is not None
    return root


def encode(g: Grammar, t: DerivationTree) -> int:
    """Return the index that decodes to t (the exact inverse of decode)."""
    if not g.validated:
        raise ValueError("grammar must be validated (call validate first)")

    # Post-order so every node's value is ready before its parent needs it.
    order: list[DerivationTree] = []
    stack: list[DerivationTree] = [t]
    while stack:
        node = stack.pop()
        order.append(node)
        for c in node.children:
            if isinstance(c, DerivationTree):
                stack.append(c)

    values: dict[int, int] = {}
    for node in reversed(order):
        j = rule_index_of(g, node)
        t_count = g._t_counts[node.nt]
        if j < t_count:
            values[id(node)] = j
            continue
        parts = [values[id(c)] for c in node.children if isinstance(c, DerivationTree)]
        value = join(parts)
        n_nonterminal = len(g.rules[node.nt]) - t_count
        values[id(node)] = (j - t_count) + n_nonterminal * value + t_count
    return values[id(t)]


def enumerate_trees(
    g: Grammar,
    v: str | None = None,
    start: int = 0,
    count: int | None = None,
    *,
    max_steps: int | None = DEFAULT_STEP_BUDGET,
) -> Iterator[tuple[int, DerivationTree]]:
    """Yield (index, tree) for index = start, start+1, ...

    ``count`` limits the stream; None streams forever.  Every item is
    decoded from scratch, so memory use does not grow with the index.
    """
    if v is None:
        v = g.start
    if start < 0:
        raise ValueError("start index must be non-negative")
    if count is not None and count < 0:
        raise ValueError("count must be non-negative")
    indices = itertools.count(start) if count is None else range(start, start + count)
    for i in indices:
        yield i, decode(g, v, i, max_steps=max_steps)


def _check_args(g: Grammar, v: str, n: int) -> None:
    if not g.validated:
        raise ValueError("grammar must be validated (call validate first)")
    if v not in g.rules:
        raise ValueError(f"unknown nonterminal {v!r}")
    if n < 0:
        raise ValueError(f"index must be a non-negative integer (got {n})")
