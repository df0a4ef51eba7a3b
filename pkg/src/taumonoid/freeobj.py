"""Relatively free monoids as automata; isoterm and tau-term decision.

For a finite monoid M and k letters, the k-generated free object of the
variety of M is materialized as a deterministic automaton: a state is the
full evaluation vector of a word (its value in M under every assignment of
elements to the letters), the initial state is the identity vector, and the
transition by a letter multiplies componentwise by that letter's vector.
Two words evaluate equally under every substitution, i.e. form an identity
of M, exactly when they reach the same state.

``is_isoterm`` asks whether a word is alone in its state's language, and
``is_tau_term`` runs the product of this automaton with a canonical-form
tracker to decide whether identities of M can move a word out of its
congruence class.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

import numpy as np

from .identities import BudgetExceededError
from .monoid import FiniteMonoid
from .rewrite import TauWord, canonical, compose_words
from .words import Word, content

_SINK = ("#sink#",)


@dataclass
class RelFreeAutomaton:
    """The k-generated relatively free monoid of var(M), as a DFA.

    ``vectors[s]`` is the evaluation vector of any word reaching state ``s``;
    ``transitions[s][i]`` is the state after appending letter ``i``.
    ``zero_state`` is the state of the everywhere-zero vector, when reached.
    """

    monoid: FiniteMonoid
    letters: tuple
    vectors: list
    transitions: list
    witnesses: list          # a shortest word (as letter-index tuple) per state
    zero_state: int | None = None
    initial: int = 0

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def state_of_word(self, w: Word) -> int:
        pos = {b: i for i, b in enumerate(self.letters)}
        s = self.initial
        for b, p in w:
            if p:
                raise ValueError("state_of_word expects a plain word")
            s = self.transitions[s][pos[b]]
        return s

    def witness_word(self, state: int) -> Word:
        return tuple((self.letters[i], False) for i in self.witnesses[state])


def _generator_columns(n: int, k: int) -> list:
    """Column i gives letter i's value in each of the n^k assignments."""
    cols = []
    for i in range(k):
        reps = n ** (k - i - 1)
        cols.append(np.tile(np.repeat(np.arange(n, dtype=np.int32), reps),
                            n ** i))
    return cols


def rel_free_automaton(m: FiniteMonoid, letters, max_states: int = 60000,
                       max_cells: int = 4_000_000) -> RelFreeAutomaton:
    """Breadth-first closure of the evaluation-vector automaton.

    ``max_cells`` bounds the length of one evaluation vector (|M|^k);
    ``max_states`` bounds the number of distinct vectors stored.
    """
    letters = tuple(letters)
    k = len(letters)
    n = m.size
    veclen = n ** k
    if veclen > max_cells:
        raise BudgetExceededError(veclen, max_cells, "vector cells")
    table = np.asarray(m.table, dtype=np.int32)
    gen = _generator_columns(n, k)
    init = np.full(veclen, m.identity, dtype=np.int32)
    zero_key = (np.full(veclen, m.zero, dtype=np.int32).tobytes()
                if m.zero is not None else None)
    vectors = [init]
    index = {init.tobytes(): 0}
    witnesses = [()]
    transitions: list = []
    zero_state = 0 if init.tobytes() == zero_key else None
    queue = deque([0])
    while queue:
        s = queue.popleft()
        row = []
        for i in range(k):
            v = table[vectors[s], gen[i]]
            key = v.tobytes()
            t = index.get(key)
            if t is None:
                if len(vectors) >= max_states:
                    raise BudgetExceededError(len(vectors) + 1, max_states,
                                              "automaton states")
                t = len(vectors)
                index[key] = t
                vectors.append(v)
                witnesses.append(witnesses[s] + (i,))
                if key == zero_key:
                    zero_state = t
                queue.append(t)
            row.append(t)
        transitions.append(row)
    return RelFreeAutomaton(monoid=m, letters=letters, vectors=vectors,
                            transitions=transitions, witnesses=witnesses,
                            zero_state=zero_state)


@dataclass(frozen=True)
class IsotermReport:
    word: Word
    is_isoterm: bool
    counterexample: Word | None = None
    language_size: int | None = None   # None = infinite
    note: str = ""


def _co_reachable(transitions, target: int) -> set:
    rev: dict = {}
    for s, row in enumerate(transitions):
        for t in row:
            rev.setdefault(t, []).append(s)
    out: set = set()
    stack = [target]
    while stack:
        x = stack.pop()
        if x in out:
            continue
        out.add(x)
        stack.extend(rev.get(x, ()))
    return out


def _accepted_words(aut: RelFreeAutomaton, target: int, want: int = 2) -> list:
    """Up to ``want`` shortest words reaching ``target`` (per-state capped BFS)."""
    k = len(aut.letters)
    stored: dict = {aut.initial: [()]}
    queue = deque([(aut.initial, ())])
    while queue:
        s, path = queue.popleft()
        for i in range(k):
            t = aut.transitions[s][i]
            lst = stored.setdefault(t, [])
            if len(lst) < want:
                lst.append(path + (i,))
                queue.append((t, path + (i,)))
    return [tuple((aut.letters[i], False) for i in p)
            for p in stored.get(target, [])]


def is_isoterm(m: FiniteMonoid, w: Word, max_states: int = 60000) -> IsotermReport:
    """Whether M violates every nontrivial identity with ``w`` on one side.

    Decided over the content of ``w``: the language accepted at the state of
    ``w`` in the evaluation automaton must be exactly ``{w}``.  An identity
    using extra letters specializes (extra letters to the empty word) to one
    over the content; when M has a zero, an extra-letter counterexample
    forces the state of ``w`` to be the zero vector, and then ``ww`` already
    witnesses failure over the content, so the restriction is complete.  For
    zero-free monoids single fresh-letter insertions are checked separately.
    """
    letters = tuple(sorted(content(w)))
    aut = rel_free_automaton(m, letters, max_states=max_states)
    target = aut.state_of_word(w)
    note = "extra-letter identities specialize to the content alphabet"
    relevant = _co_reachable(aut.transitions, target)
    k = len(letters)

    # cycle inside the relevant subgraph <=> infinitely many accepted words
    color = dict.fromkeys(relevant, 0)     # 0 new, 1 on stack, 2 done
    postorder = []
    has_cycle = False
    for root in relevant:
        if color[root] or has_cycle:
            continue
        stack = [(root, iter(range(k)))]
        color[root] = 1
        while stack and not has_cycle:
            node, it = stack[-1]
            for i in it:
                nxt = aut.transitions[node][i]
                if nxt not in relevant:
                    continue
                if color[nxt] == 1:
                    has_cycle = True
                elif color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(range(k))))
                break
            else:
                color[node] = 2
                postorder.append(node)
                stack.pop()
    if has_cycle:
        accepted = _accepted_words(aut, target)
        counter = next((c for c in accepted if c != w), None)
        return IsotermReport(w, False, counter, None, note)

    # acyclic: count accepted words; target has no outgoing relevant edges
    counts: dict = {}
    for s in postorder:
        acc = 1 if s == target else 0
        for i in range(k):
            t = aut.transitions[s][i]
            if t in relevant:
                acc += counts[t]
        counts[s] = acc
    total = counts.get(aut.initial, 0)
    if total == 1:
        if m.zero is None:
            ce = _insertion_counterexample(aut, m, w)
            if ce is not None:
                return IsotermReport(w, False, ce, 1,
                                     note + "; fresh-letter insertion found")
        return IsotermReport(w, True, None, 1, note)
    accepted = _accepted_words(aut, target)
    counter = next((c for c in accepted if c != w), None)
    return IsotermReport(w, False, counter, total, note)


def _insertion_counterexample(aut: RelFreeAutomaton, m: FiniteMonoid, w: Word):
    """For zero-free monoids: is inserting one fresh letter value-preserving?

    Tests identities ``w = u z v`` (z fresh) at every cut point: multiplying
    by an arbitrary constant in the middle must preserve the value under all
    assignments.
    """
    k = len(aut.letters)
    pos = {b: i for i, b in enumerate(aut.letters)}
    n = m.size
    table = np.asarray(m.table, dtype=np.int32)
    gen = _generator_columns(n, k)
    veclen = n ** k
    prefix = [np.full(veclen, m.identity, dtype=np.int32)]
    for b, _ in w:
        prefix.append(table[prefix[-1], gen[pos[b]]])
    full = prefix[-1]
    for cut in range(len(w) + 1):
        ok_all = True
        for e in range(n):
            if e == m.identity:
                continue
            val = table[prefix[cut], e]
            for b, _ in w[cut:]:
                val = table[val, gen[pos[b]]]
            if not np.array_equal(val, full):
                ok_all = False
                break
        if ok_all:
            fresh = _fresh_base({b for b, _ in w})
            return w[:cut] + ((fresh, False),) + w[cut:]
    return None


@dataclass(frozen=True)
class TauTermVerdict:
    status: str                      # "holds" | "fails" | "holds-up-to-bound"
    tau_word: TauWord
    witness: tuple | None = None     # (member word, equal-valued off-class word)
    bound: int | None = None
    method: str = "exact"
    fresh_letter_used: bool = False
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    @property
    def fails(self) -> bool:
        return self.status == "fails"


def _fresh_base(bases) -> str:
    for cand in "zwvuq":
        if cand not in bases:
            return cand
    i = 0
    while f"z{i}" in bases:
        i += 1
    return f"z{i}"


def _tracker_next(state, base: str, tau: str, limit: int):
    if state is _SINK:
        return _SINK
    if tau == "trivial":
        nxt = state + ((base, False),)
    else:
        nxt = compose_words(state, ((base, False),), tau)
    return nxt if len(nxt) <= limit else _SINK


def _in_class(w: Word, u: TauWord) -> bool:
    if u.tau == "trivial":
        return w == u.word
    return canonical(w, u.tau) == u.word


def is_tau_term(m: FiniteMonoid, u: TauWord, mode: str = "auto",
                bound: int = 10, max_states: int = 60000,
                max_cells: int = 4_000_000) -> TauTermVerdict:
    """Decide whether ``u`` is a tau-term for the variety of ``m``.

    ``u`` fails to be a tau-term exactly when the monoid satisfies an
    identity ``U = v`` with ``U`` in the class of ``u`` and ``v`` outside it.
    Exact mode pairs the evaluation automaton with a canonical-form tracker
    (states: canonical words up to ``len(u)``, plus an absorbing sink that by
    length monotonicity class members never enter) and scans the reachable
    product states.  When the monoid has a zero, a witness cannot involve
    letters outside the content of ``u`` unless some member evaluates to zero
    under every substitution; that case is detected directly, and a fresh
    letter is adjoined only for zero-free monoids.  Bounded mode enumerates
    words up to the length cap; it can find failures but only ever reports
    "holds-up-to-bound" positively.  In auto mode an exact-budget overflow
    falls back to bounded with the downgraded verdict, never silently.
    """
    bases = sorted(content(u.word))
    fresh = None
    if m.zero is None:
        fresh = _fresh_base(set(bases))
        letters = tuple(bases) + (fresh,)
    else:
        letters = tuple(bases)
    note = ("no fresh letter: monoid has a zero, extra-letter witnesses "
            "require an everywhere-zero member (checked directly)"
            if fresh is None else f"fresh letter {fresh} adjoined")

    if mode in ("auto", "exact"):
        try:
            aut = rel_free_automaton(m, letters, max_states=max_states,
                                     max_cells=max_cells)
            return _tau_term_exact(aut, u, fresh, note)
        except BudgetExceededError:
            if mode == "exact":
                raise
            note += "; exact budget exceeded, downgraded to bounded"
    try:
        aut = rel_free_automaton(m, letters, max_states=max_states,
                                 max_cells=max_cells)
    except BudgetExceededError:
        return _tau_term_bounded_pairwise(m, u, letters, fresh, bound, note)
    return _tau_term_bounded(aut, u, fresh, bound, note)


def _zero_member_verdict(member: Word, u: TauWord, method: str, note: str,
                         bound=None) -> TauTermVerdict:
    z = _fresh_base({b for b, _ in member})
    witness = (member, ((z, False),) + member)
    return TauTermVerdict("fails", u, witness, bound=bound, method=method,
                          fresh_letter_used=True,
                          note=note + "; member evaluates to zero everywhere")


def _tau_term_exact(aut: RelFreeAutomaton, u: TauWord, fresh, note):
    tau = u.tau
    limit = len(u.word)
    start = (aut.initial, ())
    parents = {start: None}
    queue = deque([start])
    member_node: dict = {}     # rel-free state -> product node with tracker == u
    offender_node: dict = {}   # rel-free state -> product node with tracker != u
    while queue:
        node = queue.popleft()
        s, t = node
        if t == u.word:
            member_node.setdefault(s, node)
        else:
            offender_node.setdefault(s, node)
        for i, b in enumerate(aut.letters):
            nxt = (aut.transitions[s][i], _tracker_next(t, b, tau, limit))
            if nxt not in parents:
                parents[nxt] = (node, i)
                queue.append(nxt)

    def path_word(node) -> Word:
        out = []
        while parents[node] is not None:
            node, i = parents[node]
            out.append((aut.letters[i], False))
        return tuple(reversed(out))

    if aut.zero_state is not None and aut.zero_state in member_node:
        member = path_word(member_node[aut.zero_state])
        return _zero_member_verdict(member, u, "exact", note)
    for s, node in offender_node.items():
        if s in member_node:
            member = path_word(member_node[s])
            off = path_word(node)
            assert not _in_class(off, u) or any(b == fresh for b, _ in off)
            return TauTermVerdict("fails", u, (member, off), method="exact",
                                  fresh_letter_used=fresh is not None, note=note)
    return TauTermVerdict("holds", u, method="exact",
                          fresh_letter_used=fresh is not None, note=note)


def _bounded_words(letters, bound: int):
    for ln in range(bound + 1):
        yield from product(range(len(letters)), repeat=ln)


def _tau_term_bounded(aut: RelFreeAutomaton, u: TauWord, fresh, bound, note):
    member_state: dict = {}
    for combo in _bounded_words(aut.letters, bound):
        w = tuple((aut.letters[i], False) for i in combo)
        if (fresh is None or all(b != fresh for b, _ in w)) and _in_class(w, u):
            s = aut.initial
            for i in combo:
                s = aut.transitions[s][i]
            member_state.setdefault(s, w)
    if aut.zero_state is not None and aut.zero_state in member_state:
        return _zero_member_verdict(member_state[aut.zero_state], u,
                                    "bounded", note, bound=bound)
    if member_state:
        for combo in _bounded_words(aut.letters, bound):
            w = tuple((aut.letters[i], False) for i in combo)
            s = aut.initial
            for i in combo:
                s = aut.transitions[s][i]
            if s in member_state and not (
                    (fresh is None or all(b != fresh for b, _ in w))
                    and _in_class(w, u)):
                return TauTermVerdict("fails", u, (member_state[s], w),
                                      bound=bound, method="bounded",
                                      fresh_letter_used=fresh is not None,
                                      note=note)
    else:
        note += "; no class member within bound"
    return TauTermVerdict("holds-up-to-bound", u, bound=bound, method="bounded",
                          fresh_letter_used=fresh is not None, note=note)


def _tau_term_bounded_pairwise(m, u: TauWord, letters, fresh, bound, note):
    """Bounded check without the automaton, for oversized free objects.

    Evaluates each word's full vector and groups by a vector digest; memory
    stays flat because only digests of member vectors are retained.
    """
    import hashlib
    n = m.size
    k = len(letters)
    if n ** k > 2_000_000:
        raise BudgetExceededError(n ** k, 2_000_000, "vector cells")
    table = np.asarray(m.table, dtype=np.int32)
    gen = _generator_columns(n, k)

    def digest_of(combo):
        vec = np.full(n ** k, m.identity, dtype=np.int32)
        for i in combo:
            vec = table[vec, gen[i]]
        return hashlib.blake2b(vec.tobytes(), digest_size=16).digest()

    member_digest: dict = {}
    for combo in _bounded_words(letters, bound):
        w = tuple((letters[i], False) for i in combo)
        if (fresh is None or all(b != fresh for b, _ in w)) and _in_class(w, u):
            member_digest.setdefault(digest_of(combo), w)
    if not member_digest:
        return TauTermVerdict("holds-up-to-bound", u, bound=bound,
                              method="bounded-pairwise",
                              fresh_letter_used=fresh is not None,
                              note=note + "; no class member within bound")
    for combo in _bounded_words(letters, bound):
        w = tuple((letters[i], False) for i in combo)
        if (fresh is None or all(b != fresh for b, _ in w)) and _in_class(w, u):
            continue
        d = digest_of(combo)
        if d in member_digest:
            return TauTermVerdict("fails", u, (member_digest[d], w),
                                  bound=bound, method="bounded-pairwise",
                                  fresh_letter_used=fresh is not None, note=note)
    return TauTermVerdict("holds-up-to-bound", u, bound=bound,
                          method="bounded-pairwise",
                          fresh_letter_used=fresh is not None, note=note)
