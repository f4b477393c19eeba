import random
from pathlib import Path

import pytest

from treenum import Grammar, load_grammar, parse_grammar, validate

REPO = Path(__file__).resolve().parent.parent
GRAMMARS = REPO / "grammars"
DATA = Path(__file__).resolve().parent / "data"

RANDOM_GRAMMAR_SEED = 20260811


def random_grammar_text(seed: int = RANDOM_GRAMMAR_SEED) -> str:
    """A seeded 3-nonterminal grammar that is valid by construction.

    Every nonterminal gets at least one terminal rule (productivity and
    zero-termination) and exactly two nonterminal rules wired into the
    cycle A -> B -> C -> A (infinitely many trees).  Two nonterminal rules
    per symbol also keep decoding cheap for very large indices: every
    expansion at least halves the index.
    """
    rng = random.Random(seed)
    nts = ["A", "B", "C"]
    terminals = list("qrstuwyz")
    lines = []
    for i, v in enumerate(nts):
        succ = nts[(i + 1) % 3]
        other = nts[(i + 2) % 3]
        alts: list[str] = []
        for _ in range(rng.randint(1, 2)):
            while True:
                alt = " ".join(rng.choice(terminals) for _ in range(rng.randint(1, 3)))
                if alt not in alts:
                    alts.append(alt)
                    break
        alts.append(f"{rng.choice(terminals)} {succ}")
        alts.append(f"{succ} {rng.choice(terminals)} {other}")
        rng.shuffle(alts)
        lines.append(f"{v} -> " + " | ".join(alts))
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def textbook() -> Grammar:
    return validate(load_grammar(str(GRAMMARS / "textbook.cfg")))


@pytest.fixture(scope="session")
def binary() -> Grammar:
    return validate(load_grammar(str(GRAMMARS / "binary.cfg")))


@pytest.fixture(scope="session")
def random3() -> Grammar:
    return validate(parse_grammar(random_grammar_text()))


def expected_enumeration() -> list[tuple[int, str]]:
    rows = []
    for line in (DATA / "expected_enumeration_0_100.tsv").read_text().splitlines():
        i, s = line.split("\t")
        rows.append((int(i), s))
    return rows


def expected_ab_diff() -> list[tuple[int, str, str]]:
    rows = []
    for line in (DATA / "expected_ab_diff_0_133.tsv").read_text().splitlines():
        i, b, a = line.split("\t")
        rows.append((int(i), b, a))
    return rows
