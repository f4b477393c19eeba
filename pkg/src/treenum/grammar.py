"""Context-free grammar model, text format, validation, and derivation trees.

Grammar files are plain UTF-8 text: ``#`` starts a comment, blank lines are
skipped, and every other line reads ``LHS -> alt | alt | ...`` with
whitespace-separated symbols inside each alternative.  ``<eps>`` stands for
an empty right-hand side.  A symbol is a nonterminal exactly when it occurs
as some left-hand side; everything else is a terminal.  The start symbol is
the first left-hand side in the file.

Rule lists are normalized so that for every nonterminal the rules with no
nonterminal on the right-hand side come first, keeping source order within
each group.  The integer codecs rely on that layout.

Validation enforces what the codecs require of every nonterminal reachable
from the start symbol:

* productivity: it derives at least one finite tree;
* an infinite tree set: enumeration indexes arbitrarily large numbers;
* zero-termination: repeatedly taking each nonterminal's first rule
  reaches an all-terminal tree, so index 0 decodes to a finite tree.
"""

import re
from dataclasses import dataclass, field, replace
from typing import Iterator, NamedTuple, Union

ARROW = "->"
PIPE = "|"
EPSILON = "<eps>"

_RESERVED = (ARROW, PIPE, EPSILON)


class GrammarSyntaxError(Exception):
    """Raised when grammar text cannot be parsed; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidGrammarError(Exception):
    """Raised when a grammar fails validation; carries the full report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        details = "; ".join(
            f"{v.nonterminal}: {v.check}: {v.message}" for v in report.violations
        )
        super().__init__(f"grammar failed validation: {details}")


class TreeNotInGrammarError(Exception):
    """Raised when a tree node does not apply any rule of the grammar."""


class SexprSyntaxError(Exception):
    """Raised on malformed s-expression input."""


@dataclass(frozen=True)
class Rule:
    """One production.  ``is_terminal`` means no nonterminal on the rhs."""

    lhs: str
    rhs: tuple[str, ...]
    is_terminal: bool


@dataclass(frozen=True)
class Grammar:
    """An immutable rule table keyed by nonterminal, terminal rules first.

    ``validated`` is set by :func:`validate`; the codecs refuse grammars
    without it since their termination depends on the validated properties.
    """

    start: str
    rules: dict[str, tuple[Rule, ...]]
    validated: bool = False

    def __post_init__(self) -> None:
        if self.start not in self.rules:
            raise ValueError(f"start symbol {self.start!r} has no rules")
        seen_nonterminal_rule = {}
        for nt, rules in self.rules.items():
            if not rules:
                raise ValueError(f"nonterminal {nt!r} has no rules")
            for rule in rules:
                terminal = not any(s in self.rules for s in rule.rhs)
                if rule.is_terminal != terminal:
                    raise ValueError(f"rule {nt} -> {' '.join(rule.rhs)}: wrong terminal flag")
                if rule.is_terminal and seen_nonterminal_rule.get(nt):
                    raise ValueError(f"rules of {nt!r} are not normalized (terminal rules first)")
                if not rule.is_terminal:
                    seen_nonterminal_rule[nt] = True
        # Lookup tables for the codecs: per nonterminal the terminal-rule
        # count and, per rule, (rhs, is-nonterminal flags, nonterminal count).
        t_counts = {}
        alts = {}
        for nt, rules in self.rules.items():
            t_counts[nt] = sum(1 for r in rules if r.is_terminal)
            infos = []
            for r in rules:
                flags = tuple(s in self.rules for s in r.rhs)
                infos.append((r.rhs, flags, sum(flags)))
            alts[nt] = tuple(infos)
        object.__setattr__(self, "_t_counts", t_counts)
        object.__setattr__(self, "_alts", alts)

    @property
    def nonterminals(self) -> tuple[str, ...]:
        return tuple(self.rules)

    def is_nonterminal(self, token: str) -> bool:
        return token in self.rules

    def rules_for(self, nt: str) -> tuple[Rule, ...]:
        return self.rules[nt]

    def terminal_rule_count(self, nt: str) -> int:
        return self._t_counts[nt]


class DerivationTree(NamedTuple):
    """A derivation node: a nonterminal label plus ordered children.

    Children are either nested trees or terminal tokens (plain strings).
    Values are immutable and hashable, so structural equality is ``==``.
    """

    nt: str
    children: tuple[Union["DerivationTree", str], ...] = ()


def parse_grammar(text: str) -> Grammar:
    """Parse grammar text into an unvalidated, normalized Grammar."""
    collected: list[tuple[str, tuple[str, ...], int]] = []
    seen: set[tuple[str, tuple[str, ...]]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2 or tokens[1] != ARROW:
            raise GrammarSyntaxError(f"expected 'LHS {ARROW} ...'", lineno)
        lhs = tokens[0]
        if lhs in _RESERVED:
            raise GrammarSyntaxError(f"reserved token {lhs!r} cannot be a left-hand side", lineno)
        _check_symbol(lhs, lineno)
        if len(tokens) == 2:
            raise GrammarSyntaxError(f"missing right-hand side (use {EPSILON} for an empty one)", lineno)
        alts: list[list[str]] = [[]]
        for tok in tokens[2:]:
            if tok == PIPE:
                alts.append([])
            elif tok == ARROW:
                raise GrammarSyntaxError(f"{ARROW!r} is not allowed inside a right-hand side", lineno)
            else:
                alts[-1].append(tok)
        for alt in alts:
            if not alt:
                raise GrammarSyntaxError(f"empty alternative (use {EPSILON} explicitly)", lineno)
            if EPSILON in alt:
                if len(alt) != 1:
                    raise GrammarSyntaxError(f"{EPSILON} must be the whole alternative", lineno)
                rhs: tuple[str, ...] = ()
            else:
                for tok in alt:
                    _check_symbol(tok, lineno)
                rhs = tuple(alt)
            if (lhs, rhs) in seen:
                raise GrammarSyntaxError(
                    f"duplicate rule {lhs} {ARROW} {' '.join(rhs) or EPSILON}", lineno
                )
            seen.add((lhs, rhs))
            collected.append((lhs, rhs, lineno))
    if not collected:
        raise GrammarSyntaxError("grammar contains no rules")

    nonterminals = {lhs for lhs, _, _ in collected}
    table: dict[str, list[Rule]] = {}
    for lhs, rhs, _ in collected:
        terminal = not any(s in nonterminals for s in rhs)
        table.setdefault(lhs, []).append(Rule(lhs, rhs, terminal))
    # Stable partition: terminal rules first, source order kept in each group.
    normalized = {
        nt: tuple(r for r in rules if r.is_terminal) + tuple(r for r in rules if not r.is_terminal)
        for nt, rules in table.items()
    }
    start = collected[0][0]
    return Grammar(start=start, rules=normalized)


def _check_symbol(tok: str, lineno: int) -> None:
    # Parentheses would break the s-expression serialization of trees.
    if "(" in tok or ")" in tok:
        raise GrammarSyntaxError(f"symbol {tok!r} may not contain parentheses", lineno)


def load_grammar(path: str) -> Grammar:
    """Read and parse a grammar file."""
    with open(path, encoding="utf-8") as handle:
        return parse_grammar(handle.read())


def format_grammar(g: Grammar) -> str:
    """Render the (normalized) rule table back into the text format."""
    lines = []
    for nt, rules in g.rules.items():
        alts = [" ".join(r.rhs) if r.rhs else EPSILON for r in rules]
        lines.append(f"{nt} {ARROW} " + f" {PIPE} ".join(alts))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Violation:
    nonterminal: str
    check: str  # "productivity" | "finite-trees" | "zero-termination"
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    unreachable: list[str] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_grammar(g: Grammar) -> ValidationReport:
    """Check every nonterminal reachable from the start symbol.

    Unreachable nonterminals cannot influence enumeration; they are listed
    in the report but not required to pass.
    """
    nts = set(g.rules)

    reachable = {g.start}
    work = [g.start]
    while work:
        v = work.pop()
        for rule in g.rules[v]:
            for sym in rule.rhs:
                if sym in nts and sym not in reachable:
                    reachable.add(sym)
                    work.append(sym)

    # Productivity: least fixpoint of "some rule has only productive symbols".
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for v in g.rules:
            if v in productive:
                continue
            for rule in g.rules[v]:
                if all(s not in nts or s in productive for s in rule.rhs):
                    productive.add(v)
                    changed = True
                    break

    # Infinitely many trees: v reaches (in >= 0 steps) a nonterminal on a
    # cycle of the rhs-occurrence graph restricted to productive symbols.
    succ: dict[str, set[str]] = {v: set() for v in g.rules if v in productive}
    for v in succ:
        for rule in g.rules[v]:
            for s in rule.rhs:
                if s in succ:
                    succ[v].add(s)
    descendants: dict[str, set[str]] = {}
    for v in succ:
        seen: set[str] = set()
        work = list(succ[v])
        while work:
            u = work.pop()
            if u in seen:
                continue
            seen.add(u)
            work.extend(succ[u])
        descendants[v] = seen
    on_cycle = {v for v in succ if v in descendants[v]}
    infinite = {v for v in succ if on_cycle & (descendants[v] | {v})}

    # Zero-termination: the first rule of each nonterminal (a terminal rule
    # whenever one exists, thanks to normalization) eventually bottoms out.
    zero_terminates: set[str] = set()
    changed = True
    while changed:
        changed = False
        for v in g.rules:
            if v in zero_terminates:
                continue
            first = g.rules[v][0]
            if all(s not in nts or s in zero_terminates for s in first.rhs):
                zero_terminates.add(v)
                changed = True

    report = ValidationReport(unreachable=[v for v in g.rules if v not in reachable])
    for v in g.rules:
        if v not in reachable:
            continue
        report.checked.append(v)
        if v not in productive:
            report.violations.append(
                Violation(v, "productivity", f"{v} cannot derive any finite tree")
            )
        elif v not in infinite:
            report.violations.append(
                Violation(v, "finite-trees", f"{v} derives only finitely many trees")
            )
        if v not in zero_terminates:
            report.violations.append(
                Violation(
                    v,
                    "zero-termination",
                    f"expanding {v} by first rules never reaches an all-terminal tree",
                )
            )
    return report


def validate(g: Grammar) -> Grammar:
    """Return a validated copy of g, or raise InvalidGrammarError."""
    report = check_grammar(g)
    if not report.ok:
        raise InvalidGrammarError(report)
    return replace(g, validated=True)


def leaves(t: DerivationTree | str) -> list[str]:
    """Terminal tokens of the tree in left-to-right order."""
    out: list[str] = []
    stack: list[DerivationTree | str] = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, DerivationTree):
            stack.extend(reversed(x.children))
        else:
            out.append(x)
    return out


def yield_of(t: DerivationTree, sep: str = "") -> str:
    """The terminal string of the tree, joined by ``sep``."""
    return sep.join(leaves(t))


def node_count(t: DerivationTree | str) -> int:
    """Size of a tree: nonterminal nodes plus terminal leaves."""
    n = 0
    stack: list[DerivationTree | str] = [t]
    while stack:
        x = stack.pop()
        n += 1
        if isinstance(x, DerivationTree):
            stack.extend(x.children)
    return n


def subtrees(t: DerivationTree) -> Iterator[DerivationTree]:
    """All nonterminal nodes of t in depth-first preorder."""
    stack = [t]
    while stack:
        x = stack.pop()
        yield x
        for c in reversed(x.children):
            if isinstance(c, DerivationTree):
                stack.append(c)


def rule_index_of(g: Grammar, node: DerivationTree) -> int:
    """Index (in the normalized rule list) of the rule this node applies."""
    rules = g.rules.get(node.nt)
    if rules is None:
        raise TreeNotInGrammarError(f"{node.nt!r} is not a nonterminal of the grammar")
    for i, rule in enumerate(rules):
        if len(rule.rhs) != len(node.children):
            continue
        for sym, child in zip(rule.rhs, node.children):
            if isinstance(child, DerivationTree):
                if child.nt != sym or sym not in g.rules:
                    break
            elif child != sym or sym in g.rules:
                break
        else:
            return i
    shape = " ".join(c.nt if isinstance(c, DerivationTree) else c for c in node.children)
    raise TreeNotInGrammarError(
        f"tree not generated by grammar: no rule {node.nt} {ARROW} {shape or EPSILON}"
    )


def verify_tree(g: Grammar, t: DerivationTree) -> None:
    """Raise TreeNotInGrammarError unless every node of t applies some rule."""
    for node in subtrees(t):
        rule_index_of(g, node)


def tree_to_sexpr(t: DerivationTree) -> str:
    """Serialize to ``(S (NP n) (VP v))`` form."""
    _close = object()
    pieces: list[str] = []
    stack: list = [t]
    while stack:
        x = stack.pop()
        if x is _close:
            pieces.append(")")
        elif isinstance(x, DerivationTree):
            pieces.append("(" + x.nt)
            stack.append(_close)
            stack.extend(reversed(x.children))
        else:
            pieces.append(x)
    out: list[str] = []
    for p in pieces:
        if out and p != ")":
            out.append(" ")
        out.append(p)
    return "".join(out)


def sexpr_to_tree(g: Grammar, text: str) -> DerivationTree:
    """Parse an s-expression and verify it is a derivation tree of g."""
    tokens = re.findall(r"[()]|[^()\s]+", text)
    if not tokens:
        raise SexprSyntaxError("empty input")
    stack: list[tuple[str, list]] = []
    root: DerivationTree | None = None
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if root is not None:
            raise SexprSyntaxError("unexpected content after the closing ')'")
        if tok == "(":
            if i + 1 >= len(tokens) or tokens[i + 1] in ("(", ")"):
                raise SexprSyntaxError("expected a node label after '('")
            stack.append((tokens[i + 1], []))
            i += 2
        elif tok == ")":
            if not stack:
                raise SexprSyntaxError("unbalanced ')'")
            label, children = stack.pop()
            node = DerivationTree(label, tuple(children))
            if stack:
                stack[-1][1].append(node)
            else:
                root = node
            i += 1
        else:
            if not stack:
                raise SexprSyntaxError("tree must start with '('")
            stack[-1][1].append(tok)
            i += 1
    if root is None:
        raise SexprSyntaxError("unbalanced '(': missing closing ')'")
    verify_tree(g, root)
    return root


def tree_to_json_obj(t: DerivationTree | str):
    """JSON-ready form: {"nt": ..., "children": [...]}, terminals as strings."""
    if isinstance(t, str):
        return t
    return {"nt": t.nt, "children": [tree_to_json_obj(c) for c in t.children]}
