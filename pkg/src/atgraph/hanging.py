"""Free-group words for the picture-hanging construction with k nails.

Nail ``i`` in ``0..k-1`` has generator ``x_i``; ``z`` is ``x_0`` and ``y`` is
``x_{k-1}``.  A word is a tuple of nonzero ints: letter ``+(i+1)`` is ``x_i``
and ``-(i+1)`` its inverse.  Nails are ordered
``x_1 < x_2 < ... < x_{k-2} < y < z``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache


class NailError(ValueError):
    pass


@dataclass(frozen=True)
class FreeWord:
    k: int
    letters: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def generators(self) -> set[int]:
        return {abs(c) - 1 for c in self.letters}

    def inverse(self) -> FreeWord:
        return FreeWord(self.k, tuple(-c for c in reversed(self.letters)))


def generator_name(k: int, i: int) -> str:
    if i == 0:
        return "z"
    if i == k - 1:
        return "y"
    return f"x{i}"


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    parts = []
    for c in w.letters:
        name = generator_name(w.k, abs(c) - 1)
        parts.append(name if c > 0 else name + "^-1")
    return " ".join(parts)


def nail_index(k: int, name: str | int) -> int:
    """Resolve ``z``, ``y``, ``x<i>`` or a plain index to ``0..k-1``."""
    if isinstance(name, int):
        i = name
    elif name == "z":
        i = 0
    elif name == "y":
        i = k - 1
    elif m := re.fullmatch(r"x_?(\d+)", name):
        i = int(m.group(1))
    elif name.isdigit():
        i = int(name)
    else:
        raise NailError(f"unknown nail {name!r}")
    if not 0 <= i < k:
        raise NailError(f"nail {name!r} out of range for k={k}")
    return i


def nail_rank(k: int, i: int) -> int:
    """Position of nail ``i`` in the order ``x_1 < ... < x_{k-2} < y < z``."""
    return k - 1 if i == 0 else i - 1


def parse_word(k: int, text: str) -> FreeWord:
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        inv = tok.endswith("^-1")
        base = tok[:-3] if inv else tok
        i = nail_index(k, base)
        letters.append(-(i + 1) if inv else i + 1)
    return FreeWord(k, tuple(letters))


def free_reduce(w: FreeWord) -> FreeWord:
    stack: list[int] = []
    for c in w.letters:
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return FreeWord(w.k, tuple(stack))


def _is_reduced(letters) -> bool:
    return all(a != -b for a, b in zip(letters, letters[1:]))


@lru_cache(maxsize=None)
def _g_letters(k: int) -> tuple[int, ...]:
    z = 1
    if k == 2:
        return (z, -2, -z)
    prev = _g_letters(k - 1)
    old_y = k - 1  # y of the (k-1)-nail alphabet is x_{k-2} here
    y = k
    # y -> y^-1 z^-1 x_1^-1 .. x_{k-3}^-1 x_{k-2} x_{k-3} .. x_1 z y
    down = [-(j + 1) for j in range(1, k - 2)]
    sub = [-y, -z, *down, k - 1, *(-c for c in reversed(down)), z, y]
    sub_inv = [-c for c in reversed(sub)]
    out: list[int] = []
    for c in prev:
        if c == old_y:
            out.extend(sub)
        elif c == -old_y:
            out.extend(sub_inv)
        else:
            out.append(c)
    return tuple(out)


def build_g(k: int) -> FreeWord:
    """The word g_k of the construction with ``k`` nails."""
    if k < 2:
        raise ValueError("build_g needs k >= 2")
    return FreeWord(k, _g_letters(k))


def expected_length(k: int) -> int:
    return 3 + (k - 2) * 2 ** (k - 1)


def remove_nail(w: FreeWord, nail: str | int) -> FreeWord:
    """Set the nail's generator to 1 and reduce."""
    i = nail_index(w.k, nail)
    out = free_reduce(FreeWord(w.k, tuple(c for c in w.letters if abs(c) != i + 1)))
    rank = nail_rank(w.k, i)
    survivors = [j for j in out.generators() if nail_rank(w.k, j) > rank]
    if survivors:
        raise AssertionError(
            f"k={w.k}: removing {generator_name(w.k, i)} leaves "
            + ", ".join(generator_name(w.k, j) for j in sorted(survivors))
        )
    return out


@dataclass(frozen=True)
class NailRemovalRow:
    k: int
    nail: str
    length: int
    reduced_length: int


def check_nail_removal(k_max: int) -> list[NailRemovalRow]:
    """Remove every nail of every g_k, 2 <= k <= k_max, and check what survives."""
    if k_max > 20:
        raise ValueError("k_max above 20 is out of reach (word length ~ k 2^k)")
    rows = []
    for k in range(2, k_max + 1):
        g = build_g(k)
        if len(g) != expected_length(k):
            raise AssertionError(f"k={k}: length {len(g)} != {expected_length(k)}")
        if not _is_reduced(g.letters):
            raise AssertionError(f"k={k}: g_k is not reduced")
        for i in range(k):
            out = remove_nail(g, i)
            rows.append(NailRemovalRow(k, generator_name(k, i), len(g), len(out)))
    return rows


def y_flanked_by_z(w: FreeWord) -> bool:
    """Every y^{+-1} is preceded by z and followed by z^-1."""
    y = w.k
    L = w.letters
    for pos, c in enumerate(L):
        if abs(c) == y and not (0 < pos < len(L) - 1 and L[pos - 1] == 1 and L[pos + 1] == -1):
            return False
    return True
