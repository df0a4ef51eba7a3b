"""Formal identities and exhaustive satisfaction checking.

An identity is an ordered pair of plain words.  ``satisfies`` scans every
substitution of monoid elements for the letters, in lexicographic order over
the sorted letter list, and reports the first violating substitution.  The
scan is vectorized: the substitution space is split into chunks and each
chunk is evaluated with batched table lookups, with early exit on the first
violating chunk.  ``naive_satisfies`` is the independent reference evaluator
(no vectorization, no early exit) used to cross-check the fast path.
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .monoid import FiniteMonoid
from .words import Word, content, is_plain, parse_word, print_word


class BudgetExceededError(RuntimeError):
    def __init__(self, needed: int, budget: int, what: str = "substitutions"):
        super().__init__(f"search needs {needed} {what}, budget is {budget}")
        self.needed = needed
        self.budget = budget


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if not (is_plain(self.lhs) and is_plain(self.rhs)):
            raise ValueError("identity sides must be plain words")

    def letters(self) -> list:
        return sorted(content(self.lhs) | content(self.rhs))

    def reversed(self) -> "Identity":
        return Identity(tuple(reversed(self.lhs)), tuple(reversed(self.rhs)))

    def swapped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self) -> str:
        return f"{print_word(self.lhs)}={print_word(self.rhs)}"


def parse_identity(text: str) -> Identity:
    parts = text.split("=")
    if len(parts) != 2:
        raise ValueError(f"an identity is two words joined by '=': {text!r}")
    return Identity(parse_word(parts[0]), parse_word(parts[1]))


def parse_identity_file(text: str) -> list:
    """One identity per line; '#' starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_identity(line))
    return out


def long_identity(n: int) -> Identity:
    """The identity family  x y1^2 ... yn^2 x  =  x y1^2 ... y(n-1)^2 yn x yn."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x = ("x", False)
    ys = [(f"y{i}", False) for i in range(1, n + 1)]
    lhs = (x,) + tuple(y for y in ys for _ in (0, 1)) + (x,)
    rhs = (x,) + tuple(y for y in ys[:-1] for _ in (0, 1)) + (ys[-1], x, ys[-1])
    return Identity(lhs, rhs)


@dataclass(frozen=True)
class SatisfactionResult:
    identity: Identity
    holds: bool
    witness: dict | None = None       # base -> element index
    lhs_value: int | None = None
    rhs_value: int | None = None
    checked: int = 0
    lexicographic: bool = True        # witness is the lex-first one

    def witness_labels(self, m: FiniteMonoid) -> dict | None:
        if self.witness is None:
            return None
        return {b: m.labels[e] for b, e in self.witness.items()}


def estimate_cost(m: FiniteMonoid, ident: Identity) -> int:
    return m.size ** len(ident.letters())


def _word_letter_indices(word: Word, letters: list) -> list:
    pos = {b: i for i, b in enumerate(letters)}
    return [pos[b] for b, _ in word]


def _inner_columns(n: int, inner: int):
    """Mixed-radix index columns for the last ``inner`` letters, lex order."""
    cols = []
    block = n ** inner
    for i in range(inner):
        reps_inside = n ** (inner - i - 1)
        pattern = np.repeat(np.arange(n, dtype=np.int32), reps_inside)
        cols.append(np.tile(pattern, block // (n * reps_inside)))
    return cols


def _eval_batch(table: np.ndarray, identity: int, word_idx: list,
                cols: list, m: int) -> np.ndarray:
    # cols entries are either scalar element indices (outer letters) or
    # full index columns (inner letters); numpy gathers handle both
    val = np.full(m, identity, dtype=np.int32)
    for li in word_idx:
        val = table[val, cols[li]]
    return val


def satisfies(m: FiniteMonoid, ident: Identity, budget: int | None = None,
              jobs: int = 1, chunk: int = 1 << 18) -> SatisfactionResult:
    """Exhaustively check one identity against a monoid.

    With ``jobs > 1`` the outer substitution space is partitioned across
    worker processes; the returned witness is then some witness rather than
    the lexicographically first one, and is flagged as such.
    """
    letters = ident.letters()
    k = len(letters)
    n = m.size
    total = n ** k
    if budget is not None and total > budget:
        raise BudgetExceededError(total, budget)
    if k == 0:
        return SatisfactionResult(ident, True, checked=1)
    if jobs > 1 and total > chunk * 4:
        return _satisfies_parallel(m, ident, jobs, chunk)

    table = np.asarray(m.table, dtype=np.int32)
    lhs_idx = _word_letter_indices(ident.lhs, letters)
    rhs_idx = _word_letter_indices(ident.rhs, letters)
    inner = k
    while n ** inner > chunk and inner > 1:
        inner -= 1
    inner_cols = _inner_columns(n, inner)
    block = n ** inner
    checked = 0
    for outer in product(range(n), repeat=k - inner):
        cols = list(outer) + inner_cols
        lv = _eval_batch(table, m.identity, lhs_idx, cols, block)
        rv = _eval_batch(table, m.identity, rhs_idx, cols, block)
        neq = lv != rv
        checked += block
        if neq.any():
            at = int(np.argmax(neq))
            inner_vals = []
            rest = at
            for i in range(inner):
                div = n ** (inner - i - 1)
                inner_vals.append(rest // div)
                rest %= div
            values = list(outer) + inner_vals
            witness = dict(zip(letters, values))
            return SatisfactionResult(ident, False, witness,
                                      int(lv[at]), int(rv[at]),
                                      checked=checked)
    return SatisfactionResult(ident, True, checked=total)


_WORKER_STATE: dict = {}


def _worker_init(table_list, identity, lhs_idx, rhs_idx, n, inner):
    _WORKER_STATE["table"] = np.asarray(table_list, dtype=np.int32)
    _WORKER_STATE["identity"] = identity
    _WORKER_STATE["lhs_idx"] = lhs_idx
    _WORKER_STATE["rhs_idx"] = rhs_idx
    _WORKER_STATE["n"] = n
    _WORKER_STATE["inner"] = inner
    _WORKER_STATE["cols"] = _inner_columns(n, inner)


def _worker_scan(outers):
    st = _WORKER_STATE
    n, inner = st["n"], st["inner"]
    block = n ** inner
    for outer in outers:
        cols = list(outer) + st["cols"]
        lv = _eval_batch(st["table"], st["identity"], st["lhs_idx"], cols, block)
        rv = _eval_batch(st["table"], st["identity"], st["rhs_idx"], cols, block)
        neq = lv != rv
        if neq.any():
            at = int(np.argmax(neq))
            inner_vals = []
            rest = at
            for i in range(inner):
                div = n ** (inner - i - 1)
                inner_vals.append(rest // div)
                rest %= div
            return (tuple(outer) + tuple(inner_vals), int(lv[at]), int(rv[at]))
    return None


def _satisfies_parallel(m, ident, jobs, chunk):
    letters = ident.letters()
    k, n = len(letters), m.size
    lhs_idx = _word_letter_indices(ident.lhs, letters)
    rhs_idx = _word_letter_indices(ident.rhs, letters)
    inner = k
    while n ** inner > chunk and inner > 1:
        inner -= 1
    outers = list(product(range(n), repeat=k - inner))
    batches = [outers[i::jobs] for i in range(jobs)]
    found = None
    with concurrent.futures.ProcessPoolExecutor(
            max_workers=jobs, initializer=_worker_init,
            initargs=(list(map(list, m.table)), m.identity,
                      lhs_idx, rhs_idx, n, inner)) as ex:
        futures = [ex.submit(_worker_scan, b) for b in batches if b]
        for fut in concurrent.futures.as_completed(futures):
            res = fut.result()
            if res is not None:
                found = res
                for other in futures:
                    other.cancel()
                break
    if found is None:
        return SatisfactionResult(ident, True, checked=n ** k)
    values, lv, rv = found
    witness = dict(zip(letters, values))
    return SatisfactionResult(ident, False, witness, lv, rv,
                              checked=0, lexicographic=False)


def naive_satisfies(m: FiniteMonoid, ident: Identity) -> SatisfactionResult:
    """Reference evaluator: plain nested loops, no early exit."""
    letters = ident.letters()
    first = None
    checked = 0
    for values in product(range(m.size), repeat=len(letters)):
        assignment = dict(zip(letters, values))
        lv = m.evaluate(ident.lhs, assignment)
        rv = m.evaluate(ident.rhs, assignment)
        checked += 1
        if lv != rv and first is None:
            first = (assignment, lv, rv)
    if first is None:
        return SatisfactionResult(ident, True, checked=checked)
    assignment, lv, rv = first
    return SatisfactionResult(ident, False, assignment, lv, rv, checked=checked)


def satisfies_all(m: FiniteMonoid, idents, budget: int | None = None,
                  jobs: int = 1) -> list:
    return [satisfies(m, i, budget=budget, jobs=jobs) for i in idents]


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1) - 1)
