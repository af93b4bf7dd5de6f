from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from frontinv.front import FrontWord, Letter

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def corpus_paths() -> list[Path]:
    return sorted(CORPUS.glob("*.front"))


def corpus_words() -> list[tuple[str, FrontWord]]:
    from frontinv.front import parse_front_file

    out = []
    for path in corpus_paths():
        word, _ = parse_front_file(path.read_text())
        out.append((path.stem, word))
    return out


def expected_fixture(name: str) -> dict:
    return json.loads((CORPUS / "expected" / f"{name}.json").read_text())


def random_front(rng: random.Random, max_len: int = 14, max_strands: int = 6) -> FrontWord | None:
    """A random valid closed front word, or None when closure fails."""
    letters: list[tuple[str, int]] = []
    n = 0
    for _ in range(max_len):
        opts: list[tuple[str, int]] = []
        if n + 2 <= max_strands:
            opts += [("l", m) for m in range(1, n + 2)]
        if n >= 2:
            opts += [("x", m) for m in range(1, n)] * 2
            opts += [("r", m) for m in range(1, n)]
        if not opts:
            break
        k, m = rng.choice(opts)
        letters.append((k, m))
        n += {"l": 2, "x": 0, "r": -2}[k]
    while n > 0:
        m = rng.randrange(1, n) if n > 2 else 1
        letters.append(("r", m))
        n -= 2
    try:
        return FrontWord(tuple(Letter(k, m) for k, m in letters))
    except Exception:
        return None


def random_fronts(seed: int, count: int, **kw) -> list[FrontWord]:
    rng = random.Random(seed)
    out: list[FrontWord] = []
    while len(out) < count:
        w = random_front(rng, **kw)
        if w is not None and len(w.letters) >= 2:
            out.append(w)
    return out


@pytest.fixture
def corpus():
    return corpus_words()
