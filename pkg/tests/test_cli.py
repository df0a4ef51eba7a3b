import pytest

from taumonoid.cli import main
from taumonoid.monoid import load_monoid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestWordCommands:
    def test_canon(self, capsys):
        code, out, _ = run(capsys, "canon", "lambda", "btaabb")
        assert code == 0 and out.strip() == "bta+b+"

    def test_compose(self, capsys):
        code, out, _ = run(capsys, "compose", "lambda", "bta+", "a+b+")
        assert code == 0 and out.strip() == "bta+b+"

    def test_lower_set(self, capsys):
        code, out, _ = run(capsys, "lower-set", "lambda", "bta+b+")
        words = out.split()
        assert code == 0
        assert len(words) == 18
        assert "ta+b" in words and "a+t" not in words

    def test_unknown_congruence(self, capsys):
        with pytest.raises(SystemExit):
            run(capsys, "canon", "zeta", "ab")


class TestMonoidCommands:
    def test_build_and_reload(self, capsys, tmp_path):
        path = tmp_path / "k.mon"
        code, out, _ = run(capsys, "build", "lambda", "bta+b+", "--out", str(path))
        assert code == 0
        m = load_monoid(path)
        assert m.size == 19

    def test_check_pass_and_fail(self, capsys, tmp_path):
        path = tmp_path / "k.mon"
        run(capsys, "build", "lambda", "bta+b+", "--out", str(path))
        code, out, _ = run(capsys, "check", str(path), "xtx=xtxx")
        assert code == 0 and out.strip() == "holds"
        code, out, _ = run(capsys, "check", str(path), "xtysxy=xtysyx")
        assert code == 1 and "violated" in out

    def test_present(self, capsys):
        code, out, _ = run(capsys, "present", "S")
        assert code == 0 and "11 elements" in out

    def test_iso(self, capsys):
        code, out, _ = run(capsys, "iso",
                           "sub(M[lambda](bta+b+); a+, b, ta+)", "S1")
        assert code == 0 and out.startswith("isomorphic")
        code, out, _ = run(capsys, "iso", "M[gamma](a+t)", "M[gamma](ta+)")
        assert code == 1

    def test_predicates(self, capsys):
        code, out, _ = run(capsys, "jtrivial", "M[lambda](bta+b+)")
        assert code == 0
        code, out, _ = run(capsys, "jtrivial", "E1")
        assert code == 1 and "b" in out and "c" in out
        code, out, _ = run(capsys, "aperiodic", "E1")
        assert code == 0
        code, out, _ = run(capsys, "idem-commute", "A01")
        assert code == 1

    def test_dual_and_product(self, capsys):
        code, out, _ = run(capsys, "dual", "A1")
        assert code == 0 and out.startswith("MONOID 7")
        code, out, _ = run(capsys, "product", "A01", "E1")
        assert code == 0 and out.startswith("MONOID 30")

    def test_isoterm_and_tau_term(self, capsys):
        code, out, _ = run(capsys, "isoterm", "M[lambda](bta+b+)", "xy")
        assert code == 0 and out.strip() == "isoterm"
        code, out, _ = run(capsys, "tau-term", "lambda",
                           "M[lambda](a+ta+)", "a+btb+")
        assert code == 1 and "fails" in out
        code, out, _ = run(capsys, "tau-term", "lambda",
                           "M[lambda](a+ta+)", "a+ta+",
                           "--mode", "bounded", "--bound", "6")
        assert code == 0 and "bound 6" in out

    def test_check_budget_refusal(self, capsys):
        code, out, err = run(capsys, "check", "M[lambda](bta+b+)",
                             "xtysxy=xtysyx", "--budget", "100")
        assert code == 2 and "refused" in err

    def test_check_with_jobs(self, capsys):
        code, out, _ = run(capsys, "check", "M[lambda](bta+b+)",
                           "xytxsy=yxtxsy", "--jobs", "2")
        assert code == 0 and out.strip() == "holds"

    def test_derive(self, capsys, tmp_path):
        axioms = tmp_path / "axioms.txt"
        axioms.write_text("xtx=xtxx\nxyytx=xyyxtx\n")
        code, out, _ = run(capsys, "derive", str(axioms), "xtyxsy=xtyxysy")
        assert code == 0 and "derived in 3 steps" in out

    def test_lattice_dot(self, capsys):
        code, out, _ = run(capsys, "lattice-dot")
        assert code == 0
        assert out.startswith("digraph")
        assert "19 elements" in out


class TestVerifyPaper:
    def test_filter_runs_matching_claims(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--filter", "isl-")
        assert code == 0
        lines = [l for l in out.splitlines() if "\t" in l]
        assert len(lines) == 5
        assert all(l.split("\t")[0].startswith("isl-") for l in lines)

    def test_report_written(self, capsys, tmp_path):
        path = tmp_path / "report.tsv"
        code, out, _ = run(capsys, "verify-paper", "--filter", "size-A1",
                           "--report", str(path))
        assert code == 0
        assert path.read_text().startswith("size-A1\tpass")

    def test_disputed_claims_fail(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--disputed",
                           "--filter", "dp-")
        assert code == 1
        assert out.count("\tfail\t") == 3

    def test_usage_error_exits_nonzero(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["no-such-command"])
        assert e.value.code != 0
