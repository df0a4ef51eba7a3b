import pytest

from taumonoid.derive import (DerivationStep, check_trace, derive_bounded,
                              rewrites)
from taumonoid.identities import parse_identity
from taumonoid.words import parse_word


def ids(*texts):
    return [parse_identity(t) for t in texts]


class TestRewrites:
    def test_erasure_instances(self):
        # xtysyx with y,s bound to the empty word matches inside xtx
        axiom = parse_identity("xtysyx=xtysxyx")
        results = {new for new, _, _ in
                   rewrites(parse_word("xtx"), axiom.lhs, axiom.rhs, 10)}
        assert parse_word("xtxx") in results

    def test_length_cap(self):
        axiom = parse_identity("xtx=xtxx")
        assert all(len(new) <= 4 for new, _, _ in
                   rewrites(parse_word("xtx"), axiom.lhs, axiom.rhs, 4))


class TestDeriveBounded:
    def test_erasing_two_letters(self):
        axioms = ids("xtysyx=xtysxyx")
        trace = derive_bounded(axioms, parse_identity("xtx=xtxx"))
        assert trace is not None and len(trace) == 1
        assert check_trace(axioms, trace, parse_identity("xtx=xtxx"))[0]

    def test_equivalence_both_directions(self):
        base = ids("xtx=xtxx", "xxt=xxtx")
        goal = parse_identity("xtxs=xtxsx")
        fwd = derive_bounded(base, goal)
        assert fwd is not None
        single = ids("xtxs=xtxsx")
        for text in ("xtx=xtxx", "xxt=xxtx"):
            back = derive_bounded(single, parse_identity(text))
            assert back is not None and len(back) == 1

    def test_three_step_chain(self):
        axioms = ids("xtx=xtxx", "xyytx=xyyxtx")
        goal = parse_identity("xtyxsy=xtyxysy")
        trace = derive_bounded(axioms, goal, max_len=14, max_steps=100_000)
        assert trace is not None
        assert check_trace(axioms, trace, goal)[0]
        assert all(len(s.after) <= 14 for s in trace.steps)

    def test_trivial_goal(self):
        trace = derive_bounded(ids("xtx=xtxx"), parse_identity("abc=abc"))
        assert trace is not None and len(trace) == 0

    def test_symmetry(self):
        axioms = ids("xtysyx=xtysxyx")
        goal = parse_identity("xtxx=xtx")   # reversed goal
        trace = derive_bounded(axioms, goal)
        assert trace is not None
        assert check_trace(axioms, trace, goal)[0]

    def test_not_found_within_tiny_bounds(self):
        axioms = ids("xtx=xtxx", "xyytx=xyyxtx")
        goal = parse_identity("xtyxsy=xtyxysy")
        assert derive_bounded(axioms, goal, max_len=7) is None
        assert derive_bounded(axioms, goal, max_steps=1) is None

    def test_rejects_nonpositive_bounds(self):
        with pytest.raises(ValueError):
            derive_bounded(ids("xtx=xtxx"), parse_identity("xtx=xtxx"), max_len=0)


class TestCheckTrace:
    def test_rejects_tampered_step(self):
        axioms = ids("xtysyx=xtysxyx")
        goal = parse_identity("xtx=xtxx")
        trace = derive_bounded(axioms, goal)
        step = trace.steps[0]
        bad = DerivationStep(step.before, parse_word("xtxxx"), step.axiom_index,
                             step.forward, step.position, step.substitution)
        broken = type(trace)(trace.start, parse_word("xtxxx"), (bad,))
        ok, msg = check_trace(axioms, broken, parse_identity("xtx=xtx^3"))
        assert not ok

    def test_rejects_wrong_endpoints(self):
        axioms = ids("xtx=xtxx")
        trace = derive_bounded(axioms, parse_identity("xtx=xtxx"))
        ok, msg = check_trace(axioms, trace, parse_identity("xtx=xxtx"))
        assert not ok and "endpoint" in msg

    def test_step_description_mentions_axiom(self):
        axioms = ids("xtx=xtxx")
        trace = derive_bounded(axioms, parse_identity("ata=ataa"))
        text = trace.steps[0].describe(axioms)
        assert "xtx=xtxx" in text
