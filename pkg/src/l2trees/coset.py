"""Todd-Coxeter coset enumeration over the trivial subgroup.

This is the independent oracle of the package: when it terminates it
returns the exact order of the presented group together with its right
regular permutation representation, from which element orders (and hence
the torsion hypothesis "r_i has order k_i in G") can be checked directly.

Strategy: Felsch style.  One coset is defined at a time, at the first
undefined table entry in row-scan order, and every definition is followed
by exhaustive deduction processing: each new table entry is scanned
against all cyclic rotations of all relators beginning with its letter.
Scans that complete incorrectly queue coincidences, which are handled by a
union-find over coset ids (smallest id is the representative) with
immediate processing of induced coincidences.  The run is deterministic;
the final table is compacted and renumbered in order of first appearance
during a canonical row scan.

Termination is not guaranteed (the group may be infinite): a cap on the
total number of cosets defined turns a runaway enumeration into the
``LimitExceeded`` value, which says nothing about the group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import lcm

from .presentations import TorsionPresentation, Word

DEFAULT_LIMIT = 1_000_000


def _letter_col(letter: int) -> int:
    """Column index of a signed 1-based generator letter.

    Generator i occupies column 2i, its inverse column 2i + 1, so the
    inverse of column c is always c ^ 1.
    """
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


@dataclass(frozen=True, slots=True)
class LimitExceeded:
    """More cosets than allowed would have been defined; no conclusion."""

    limit: int


@dataclass(frozen=True, slots=True)
class CosetTable:
    """A complete, standardized coset table: the regular representation.

    ``rows[c][x]`` is the image of coset c under column x (columns as in
    ``_letter_col``).  Every column is a permutation of the cosets, and
    the number of rows is the order of the group.  ``definitions`` is the
    total number of cosets defined during the enumeration, dead ones
    included; any limit at least this large reproduces the same table.
    """

    generators: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    definitions: int

    @property
    def n(self) -> int:
        return len(self.rows)

    def trace(self, coset: int, word: Word) -> int:
        c = coset
        for letter in word.letters:
            c = self.rows[c][_letter_col(letter)]
        return c

    def to_json_dict(self) -> dict:
        """Wire form: order, generator names, and 1-based generator columns."""
        return {
            "order": self.n,
            "generators": list(self.generators),
            "columns": {
                name: [self.rows[c][2 * i] + 1 for c in range(self.n)]
                for i, name in enumerate(self.generators)
            },
        }


def enumerate_cosets(
    tp: TorsionPresentation, limit: int = DEFAULT_LIMIT
) -> CosetTable | LimitExceeded:
    """Enumerate the cosets of the trivial subgroup; N = |G| on success."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    ncols = 2 * tp.n

    rotations_by_first: dict[int, list[tuple[int, ...]]] = {}
    seen_rotations: set[tuple[int, ...]] = set()
    for rel in tp.relators:
        word = tuple(_letter_col(l) for l in rel.root.letters) * rel.exponent
        for i in range(len(word)):
            rot = word[i:] + word[:i]
            if rot not in seen_rotations:
                seen_rotations.add(rot)
                rotations_by_first.setdefault(rot[0], []).append(rot)

    table: list[list[int | None]] = []
    parent: list[int] = []
    deductions: list[tuple[int, int]] = []
    defined = 0
    cursor = 0  # first row that might have an undefined entry

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def new_coset() -> int | None:
        nonlocal defined
        if defined >= limit:
            return None
        defined += 1
        table.append([None] * ncols)
        parent.append(len(parent))
        return len(table) - 1

    def set_entry(a: int, x: int, b: int) -> None:
        table[a][x] = b
        table[b][x ^ 1] = a
        deductions.append((a, x))
        deductions.append((b, x ^ 1))

    def coincidence(a: int, b: int) -> None:
        nonlocal cursor
        queue: deque[int] = deque()

        def merge(u: int, v: int) -> None:
            nonlocal cursor
            ru, rv = find(u), find(v)
            if ru == rv:
                return
            keep, drop = min(ru, rv), max(ru, rv)
            parent[drop] = keep
            cursor = min(cursor, keep)
            queue.append(drop)

        merge(a, b)
        while queue:
            dead = queue.popleft()
            for x in range(ncols):
                d = table[dead][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                cursor = min(cursor, find(d))
                mu, nu = find(dead), find(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
                    deductions.append((mu, x))
                    deductions.append((nu, x ^ 1))

    def scan(start: int, word: tuple[int, ...]) -> None:
        # Trace the relator both ways from `start`; a completed mismatch or
        # an overlap is a coincidence, a single gap is a new deduction.
        f = start
        i = 0
        r = len(word)
        while i < r and table[f][word[i]] is not None:
            f = find(table[f][word[i]])
            i += 1
        if i == r:
            if f != start:
                coincidence(f, start)
            return
        b = start
        j = r - 1
        while j >= i and table[b][word[j] ^ 1] is not None:
            b = find(table[b][word[j] ^ 1])
            j -= 1
        if j < i:
            coincidence(f, b)
        elif j == i:
            set_entry(f, word[i], b)

    def process_deductions() -> None:
        while deductions:
            a, x = deductions.pop()
            a = find(a)
            for word in rotations_by_first.get(x, ()):
                scan(find(a), word)

    new_coset()
    while True:
        process_deductions()
        target = None
        alpha = cursor
        while alpha < len(table):
            if find(alpha) == alpha:
                row = table[alpha]
                undefined = next((x for x in range(ncols) if row[x] is None), None)
                if undefined is not None:
                    target = (alpha, undefined)
                    break
                cursor = alpha + 1
            alpha += 1
        if target is None:
            break
        a, x = target
        b = new_coset()
        if b is None:
            return LimitExceeded(limit)
        set_entry(a, x, b)

    # Compact and standardize: renumber live cosets in order of first
    # appearance when reading rows top to bottom, columns left to right.
    start = find(0)
    new_id = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        row = table[order[i]]
        for x in range(ncols):
            d = find(row[x])
            if d not in new_id:
                new_id[d] = len(new_id)
                order.append(d)
        i += 1
    rows = tuple(
        tuple(new_id[find(table[c][x])] for x in range(ncols)) for c in order
    )
    return CosetTable(generators=tp.generators, rows=rows, definitions=defined)


def element_order(t: CosetTable, w: Word) -> int:
    """Order of the permutation the word induces on the cosets.

    The representation is regular and faithful, so this is the order of
    the word's image in the group.  The empty word has order 1.
    """
    if any(abs(l) > len(t.generators) for l in w.letters):
        raise ValueError(f"word uses a generator the table does not have: {w!r}")
    n = t.n
    seen = [False] * n
    result = 1
    for first in range(n):
        if seen[first]:
            continue
        length = 0
        c = first
        while not seen[c]:
            seen[c] = True
            c = t.trace(c, w)
            length += 1
        result = lcm(result, length)
    return result


def verify_torsion_hypothesis(
    tp: TorsionPresentation, t: CosetTable
) -> dict[int, str]:
    """Per-relator check that root_i really has order k_i in the group.

    The order always divides k_i (the relator kills root^k); "violated"
    means it came out strictly smaller.
    """
    statuses: dict[int, str] = {}
    for i, rel in enumerate(tp.relators):
        actual = element_order(t, rel.root)
        statuses[i] = "verified" if actual == rel.exponent else "violated"
    return statuses
