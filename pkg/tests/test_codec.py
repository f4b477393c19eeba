import random

import pytest

from treenum import (
    DecodeStats,
    DerivationTree,
    StepBudgetExceeded,
    decode,
    encode,
    enumerate_trees,
    parse_grammar,
    rule_index_of,
    sexpr_to_tree,
    subtrees,
    yield_of,
)
from conftest import expected_enumeration


def test_decode_matches_reference_yields(textbook):
    for i, want in expected_enumeration():
        assert yield_of(decode(textbook, "S", i)) == want


def test_decode_named_examples(textbook):
    assert yield_of(decode(textbook, "S", 0)) == "nv"
    assert yield_of(decode(textbook, "S", 2)) == "dnvn"
    assert yield_of(decode(textbook, "S", 42)) == "daaanvnpn"
    assert yield_of(decode(textbook, "S", 100)) == "daaaaanv"


def test_encode_examples(textbook):
    assert encode(textbook, sexpr_to_tree(textbook, "(S (NP n) (VP v))")) == 0
    assert encode(textbook, DerivationTree("NP", ("d", "n"))) == 1
    t = decode(textbook, "S", 147)
    assert encode(textbook, t) == 147


def test_roundtrip_prefix(textbook, binary, random3):
    for g in (textbook, binary, random3):
        for n in range(1500):
            assert encode(g, decode(g, g.start, n)) == n


def test_decode_injective_over_prefix(textbook):
    seen = {decode(textbook, "S", n) for n in range(10_000)}
    assert len(seen) == 10_000


def test_decoded_trees_are_valid(textbook, random3):
    for g in (textbook, random3):
        for n in range(300):
            for node in subtrees(decode(g, g.start, n)):
                rule_index_of(g, node)  # raises on an invalid node


def _zero_tree(g, v):
    rule = g.rules_for(v)[0]
    children = tuple(
        _zero_tree(g, s) if g.is_nonterminal(s) else s for s in rule.rhs
    )
    return DerivationTree(v, children)


def test_index_zero_takes_first_rules_everywhere(textbook, binary, random3):
    for g in (textbook, binary, random3):
        for v in g.nonterminals:
            assert decode(g, v, 0) == _zero_tree(g, v)


def test_expansions_equal_nonterminal_node_count(textbook):
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randrange(1_000_000)
        stats = DecodeStats()
        t = decode(textbook, "S", n, stats=stats)
        assert stats.expansions == sum(1 for _ in subtrees(t))


def test_enumerate_examples(textbook):
    rows = list(enumerate_trees(textbook, "S", 0, 3))
    assert [(i, yield_of(t)) for i, t in rows] == [(0, "nv"), (1, "dnv"), (2, "dnvn")]
    rows = list(enumerate_trees(textbook, "S", 99, 2))
    assert [yield_of(t) for _, t in rows] == ["nvnpdn", "daaaaanv"]
    assert list(enumerate_trees(textbook, "S", 0, 0)) == []


def test_enumerate_defaults_to_start_symbol(textbook):
    (i, t), = enumerate_trees(textbook, count=1)
    assert i == 0 and t.nt == "S"


def test_step_budget_guard(textbook):
    with pytest.raises(StepBudgetExceeded):
        decode(textbook, "S", 10**9, max_steps=10)
    # generous or disabled budgets decode the same index fine
    a = decode(textbook, "S", 12345)
    assert decode(textbook, "S", 12345, max_steps=None) == a


def test_decode_rejects_bad_arguments(textbook):
    unvalidated = parse_grammar("S -> S S | x")
    with pytest.raises(ValueError):
        decode(unvalidated, "S", 0)
    with pytest.raises(ValueError):
        encode(unvalidated, DerivationTree("S", ("x",)))
    with pytest.raises(ValueError):
        decode(textbook, "XP", 0)
    with pytest.raises(ValueError):
        decode(textbook, "S", -1)


def test_big_index_roundtrip_on_branching_grammars(binary, random3):
    rng = random.Random(5)
    for g in (binary, random3):
        for _ in range(10):
            n = rng.getrandbits(256)
            assert encode(g, decode(g, g.start, n)) == n
