"""Binary linear systems: M equations over N binary variables, entries in {-1, 0, 1}.

File format::

    # comment lines start with '#'
    M N
    a11 a12 ... a1N = c1
    ...
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

ALPHABET = (-1, 0, 1)


class SystemParseError(ValueError):
    def __init__(self, msg: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {msg}")


@dataclass(frozen=True)
class BinaryLinearSystem:
    a: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]

    def __post_init__(self):
        a = tuple(tuple(int(v) for v in row) for row in self.a)
        c = tuple(int(v) for v in self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        if not a or not a[0]:
            raise ValueError("need M >= 1 and N >= 1")
        if len(c) != len(a):
            raise ValueError(f"{len(a)} rows but {len(c)} right-hand sides")
        n = len(a[0])
        for i, row in enumerate(a):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if v not in ALPHABET:
                    raise ValueError(f"a[{i + 1}][{j + 1}] = {v} outside {{-1, 0, 1}}")
        for i, v in enumerate(c):
            if v not in ALPHABET:
                raise ValueError(f"c[{i + 1}] = {v} outside {{-1, 0, 1}}")

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.a[0])

    def render(self) -> str:
        lines = [f"{self.m} {self.n}"]
        for row, rhs in zip(self.a, self.c):
            lines.append(" ".join(str(v) for v in row) + f" = {rhs}")
        return "\n".join(lines) + "\n"


def parse_system(text: str) -> BinaryLinearSystem:
    """Parse the whitespace-separated system format; errors name line and column."""
    rows = []
    rhs = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = _tokens_with_columns(raw)
        if header is None:
            if len(tokens) != 2:
                raise SystemParseError("header must be 'M N'", lineno)
            try:
                m, n = (int(t) for t, _ in tokens)
            except ValueError:
                raise SystemParseError("header entries must be integers", lineno) from None
            if m < 1 or n < 1:
                raise SystemParseError("M and N must be positive", lineno)
            header = (m, n)
            continue
        m, n = header
        if len(rows) == m:
            raise SystemParseError(f"more than {m} equation rows", lineno)
        if len(tokens) != n + 2 or tokens[n][0] != "=":
            raise SystemParseError(
                f"expected {n} coefficients, '=', and a right-hand side", lineno
            )
        row = []
        for tok, col in tokens[:n]:
            row.append(_entry(tok, lineno, col, "coefficient"))
        rows.append(tuple(row))
        rhs.append(_entry(tokens[n + 1][0], lineno, tokens[n + 1][1], "right-hand side"))
    if header is None:
        raise SystemParseError("missing 'M N' header", 1)
    if len(rows) != header[0]:
        raise SystemParseError(
            f"expected {header[0]} equation rows, found {len(rows)}", len(text.splitlines())
        )
    return BinaryLinearSystem(tuple(rows), tuple(rhs))


def _tokens_with_columns(line: str) -> list[tuple[str, int]]:
    out = []
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def _entry(tok: str, line: int, col: int, what: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise SystemParseError(f"{what} {tok!r} is not an integer", line, col) from None
    if v not in ALPHABET:
        raise SystemParseError(f"{what} {v} outside {{-1, 0, 1}}", line, col)
    return v


def check_assignment(sys: BinaryLinearSystem, b: Sequence[int]) -> bool:
    """True iff every equation holds exactly over the integers."""
    if len(b) != sys.n:
        raise ValueError(f"assignment has length {len(b)}, system has N = {sys.n}")
    return all(
        sum(aij * bj for aij, bj in zip(row, b)) == ci for row, ci in zip(sys.a, sys.c)
    )


def generate_planted(
    n: int, m: int, seed: int, max_tries: int = 10_000
) -> tuple[BinaryLinearSystem, tuple[int, ...]]:
    """Random system with a planted satisfying assignment.

    Rows are drawn uniformly from {-1,0,1}^N and kept only when their value at the
    planted vector lies in {-1, 0, 1}.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    rng = random.Random(seed)
    b = tuple(rng.randint(0, 1) for _ in range(n))
    rows, rhs = [], []
    tries = 0
    while len(rows) < m:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"row resampling exceeded {max_tries} attempts")
        row = tuple(rng.choice(ALPHABET) for _ in range(n))
        s = sum(x * y for x, y in zip(row, b))
        if s in ALPHABET:
            rows.append(row)
            rhs.append(s)
    return BinaryLinearSystem(tuple(rows), tuple(rhs)), b


def generate_random(n: int, m: int, seed: int) -> BinaryLinearSystem:
    """Uniform random system; no feasibility guarantee either way."""
    rng = random.Random(seed)
    a = tuple(tuple(rng.choice(ALPHABET) for _ in range(n)) for _ in range(m))
    c = tuple(rng.choice(ALPHABET) for _ in range(m))
    return BinaryLinearSystem(a, c)
