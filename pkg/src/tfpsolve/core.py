"""Tournament digraphs, bracket seedings, and knockout simulation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "Match",
    "ParseError",
    "Tournament",
    "Seeding",
    "KnockoutTrace",
    "parse_tournament",
    "format_tournament",
    "bracket_rounds",
    "champion_of",
    "simulate",
    "validate_match_sequence",
    "seeding_from_sequence",
    "format_trace",
]

Match = tuple[int, int]  # (winner, loser)


class ParseError(ValueError):
    """Malformed tournament file; carries 1-based line and column numbers."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


def _is_power_of_two(m: int) -> bool:
    return m > 0 and not m & (m - 1)


@dataclass(frozen=True)
class Tournament:
    """Complete orientation of all player pairs, with a designated favorite.

    Row ``u`` of ``out_masks`` is a bitmask with bit ``v`` set iff ``u`` beats
    ``v``.  The player count must be a power of two so that a full
    single-elimination bracket exists.
    """

    n: int
    vstar: int
    out_masks: tuple[int, ...]

    def __post_init__(self):
        if not _is_power_of_two(self.n):
            raise ValueError(f"player count {self.n} is not a power of two")
        if not 0 <= self.vstar < self.n:
            raise ValueError(f"favorite {self.vstar} out of range for n={self.n}")
        if len(self.out_masks) != self.n:
            raise ValueError("out_masks length differs from player count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.out_masks):
            if row & ~full:
                raise ValueError(f"row {u} has bits outside the player range")
            if row >> u & 1:
                raise ValueError(f"player {u} listed as beating itself")
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if (self.out_masks[u] >> v & 1) == (self.out_masks[v] >> u & 1):
                    raise ValueError(f"pair ({u},{v}) is not oriented exactly once")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], vstar: int) -> "Tournament":
        masks = tuple(
            sum(1 << v for v, cell in enumerate(row) if cell) for row in rows
        )
        return cls(len(masks), vstar, masks)

    def beats(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    @property
    def players(self) -> range:
        return range(self.n)

    @property
    def num_rounds(self) -> int:
        """Number of bracket rounds, log2 of the player count."""
        return self.n.bit_length() - 1

    @cached_property
    def in_neighbors(self) -> frozenset[int]:
        """Players that beat the favorite."""
        return frozenset(u for u in self.players if self.beats(u, self.vstar))

    @cached_property
    def out_neighbors(self) -> frozenset[int]:
        """Players the favorite beats."""
        return frozenset(u for u in self.players if self.beats(self.vstar, u))

    @property
    def k(self) -> int:
        """In-degree of the favorite."""
        return len(self.in_neighbors)

    @property
    def ell(self) -> int:
        """Out-degree of the favorite."""
        return len(self.out_neighbors)


@dataclass(frozen=True)
class Seeding:
    """Assignment of players to bracket leaves, left to right.

    Leaves 2i and 2i+1 meet in round 1; surviving winners then meet pairwise
    again, so every aligned leaf block of size 2**r produces one round-r match.
    """

    leaf_order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.leaf_order)
        if not _is_power_of_two(n):
            raise ValueError(f"leaf count {n} is not a power of two")
        if sorted(self.leaf_order) != list(range(n)):
            raise ValueError("leaf_order is not a permutation of the players")

    @property
    def n(self) -> int:
        return len(self.leaf_order)


@dataclass(frozen=True)
class KnockoutTrace:
    """Full record of one played-out bracket.

    ``survivors[r]`` is the set still alive after round r (``survivors[0]`` is
    everyone), ``losers[r-1]`` the players eliminated in round r, ``rounds[r-1]``
    that round's (winner, loser) matches.
    """

    rounds: tuple[frozenset[Match], ...]
    survivors: tuple[frozenset[int], ...]
    losers: tuple[frozenset[int], ...]
    champion: int


_META_RE = re.compile(r"n=(\d+) vstar=(\d+)")


def parse_tournament(text: str) -> Tournament:
    """Parse the TFP v1 text format.

    Layout: a literal ``TFP v1`` line, an ``n=<int> vstar=<int>`` line, then n
    rows of n characters where a '1' in row u, column v means u beats v.
    Blank lines and lines starting with '#' are skipped.
    """
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))

    def need(idx: int, what: str) -> tuple[int, str]:
        if idx >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError(f"unexpected end of input: expected {what}", last, 1)
        return lines[idx]

    line1, header = need(0, "'TFP v1' header")
    if header != "TFP v1":
        raise ParseError("malformed header: expected 'TFP v1'", line1, 1)
    line2, meta = need(1, "'n=<int> vstar=<int>'")
    m = _META_RE.fullmatch(meta)
    if m is None:
        raise ParseError("malformed header: expected 'n=<int> vstar=<int>'", line2, 1)
    n, vstar = int(m.group(1)), int(m.group(2))
    if not _is_power_of_two(n):
        raise ParseError(f"n={n} is not a power of two", line2, 1)
    if vstar >= n:
        col = meta.index("vstar=") + len("vstar=") + 1
        raise ParseError(f"vstar={vstar} out of range for n={n}", line2, col)

    rows: list[str] = []
    row_lines: list[int] = []
    for i in range(n):
        lineno, row = need(2 + i, f"matrix row {i}")
        if len(row) != n:
            raise ParseError(
                f"matrix row {i} has {len(row)} cells, expected {n}",
                lineno,
                min(len(row), n) + 1,
            )
        for j, ch in enumerate(row):
            if ch not in "01":
                raise ParseError(
                    f"matrix cell must be '0' or '1', got {ch!r}", lineno, j + 1
                )
            if j == i and ch == "1":
                raise ParseError(
                    f"diagonal cell ({i},{i}) must be '0'", lineno, j + 1
                )
            if j < i and ch == rows[j][i]:
                how = "oriented both ways" if ch == "1" else "not oriented"
                raise ParseError(
                    f"antisymmetry violation: pair ({j},{i}) is {how}", lineno, j + 1
                )
        rows.append(row)
        row_lines.append(lineno)
    if len(lines) > 2 + n:
        raise ParseError("unexpected trailing content", lines[2 + n][0], 1)

    masks = tuple(
        sum(1 << v for v, ch in enumerate(row) if ch == "1") for row in rows
    )
    return Tournament(n, vstar, masks)


def format_tournament(t: Tournament, comments: Iterable[str] = ()) -> str:
    """Render a tournament in the TFP v1 format parsed by parse_tournament."""
    out = [f"# {c}" for c in comments]
    out.append("TFP v1")
    out.append(f"n={t.n} vstar={t.vstar}")
    for u in range(t.n):
        out.append("".join("1" if t.beats(u, v) else "0" for v in range(t.n)))
    return "\n".join(out) + "\n"


def bracket_rounds(t: Tournament, order: Sequence[int]) -> list[list[Match]]:
    """Play a bracket over ``order`` and return each round's matches in slot order."""
    rounds: list[list[Match]] = []
    cur = list(order)
    while len(cur) > 1:
        matches: list[Match] = []
        nxt: list[int] = []
        for i in range(0, len(cur), 2):
            u, v = cur[i], cur[i + 1]
            w, l = (u, v) if t.beats(u, v) else (v, u)
            matches.append((w, l))
            nxt.append(w)
        rounds.append(matches)
        cur = nxt
    return rounds


def champion_of(t: Tournament, order: Sequence[int]) -> int:
    """Winner of the bracket over ``order``, without building a trace."""
    cur = list(order)
    while len(cur) > 1:
        cur = [
            cur[i] if t.beats(cur[i], cur[i + 1]) else cur[i + 1]
            for i in range(0, len(cur), 2)
        ]
    return cur[0]


def simulate(t: Tournament, s: Seeding) -> KnockoutTrace:
    """Play out the bracket given by ``s`` and record every round."""
    if s.n != t.n:
        raise ValueError(f"seeding over {s.n} players does not fit n={t.n}")
    played = bracket_rounds(t, s.leaf_order)
    survivors = [frozenset(s.leaf_order)]
    rounds = []
    losers = []
    for matches in played:
        rounds.append(frozenset(matches))
        losers.append(frozenset(l for _, l in matches))
        survivors.append(frozenset(w for w, _ in matches))
    champ = s.leaf_order[0] if not played else played[-1][0][0]
    return KnockoutTrace(
        rounds=tuple(rounds),
        survivors=tuple(survivors),
        losers=tuple(losers),
        champion=champ,
    )


def validate_match_sequence(
    t: Tournament, rounds: Sequence[Iterable[Match]]
) -> bool:
    """Check that ``rounds`` is a playable knockout schedule for ``t``.

    Round r must hold n / 2**r matches on distinct players, every match must
    be oriented along an arc of ``t``, round 1 must cover all players, and
    each later round must be contested by exactly the previous winners.
    """
    if len(rounds) != t.num_rounds:
        return False
    expected = set(t.players)
    for r, matches in enumerate(rounds, start=1):
        matches = list(matches)
        if len(matches) != t.n >> r:
            return False
        seen: set[int] = set()
        for w, l in matches:
            if w in seen or l in seen or w == l:
                return False
            seen.update((w, l))
            if not (0 <= w < t.n and 0 <= l < t.n and t.beats(w, l)):
                return False
        if seen != expected:
            return False
        expected = {w for w, _ in matches}
    return True


def seeding_from_sequence(rounds: Sequence[Iterable[Match]]) -> Seeding:
    """Rebuild a seeding whose simulation replays ``rounds``.

    Works backwards from the final: each match's winner keeps the left half
    of its block and the loser's sub-bracket fills the right half.
    """
    schedule = [dict(matches) for matches in rounds]
    if not schedule:
        raise ValueError("cannot rebuild a seeding from an empty schedule")
    final = schedule[-1]
    if len(final) != 1:
        raise ValueError("final round must hold exactly one match")
    champion = next(iter(final))

    def place(u: int, r: int) -> list[int]:
        if r == 0:
            return [u]
        loser = schedule[r - 1][u]
        return place(u, r - 1) + place(loser, r - 1)

    return Seeding(tuple(place(champion, len(schedule))))


def format_trace(trace: KnockoutTrace) -> str:
    """Render a trace as ``round r: (w,l) ...`` lines plus the champion."""
    out = []
    for r, matches in enumerate(trace.rounds, start=1):
        pairs = " ".join(f"({w},{l})" for w, l in sorted(matches))
        out.append(f"round {r}: {pairs}")
    out.append(f"champion: {trace.champion}")
    return "\n".join(out)
