from petrialign.cli import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_align_running_example(ex1_path, capsys):
    code, out, _ = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "cost=2"
    assert lines[1] == "algorithm=generic"
    assert lines[2].startswith("states=")
    assert len([l for l in lines if l]) >= 6   # three-row block follows


def test_align_deterministic_output(ex1_path, capsys):
    first = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a")
    second = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a")
    assert first == second


def test_member_false(ex1_path, capsys):
    code, out, _ = run(capsys, "member", str(ex1_path), "--trace", "a,b,a,a")
    assert code == 0
    assert out.strip() == "member=false"


def test_member_true(ex1_path, capsys):
    code, out, _ = run(capsys, "member", str(ex1_path), "--trace", "a,a,b,b")
    assert code == 0
    assert out.strip() == "member=true"


def test_algo_precondition_exit_code(ex1_path, capsys):
    code, _, err = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a",
                       "--algo", "ssystem")
    assert code == 4
    assert err


def test_budget_exit_code(ex1_path, capsys):
    code, _, err = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a",
                       "--states", "2")
    assert code == 3
    assert err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.net"
    bad.write_text("nonsense\n")
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 2
    assert err


def test_usage_error_exit_code(capsys):
    assert run(capsys, "nope")[0] == 2


def test_classify_output(ex1_path, capsys):
    code, out, _ = run(capsys, "classify", str(ex1_path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "free_choice=true"
    assert "workflow_shape=true" in lines
    assert "sound=true" in lines
    assert "live=false" in lines
    assert lines[-1] == "states_explored=6"


def test_classify_inconclusive_under_budget(ex1_path, capsys):
    code, out, err = run(capsys, "classify", str(ex1_path), "--states", "2")
    assert code == 0
    assert "sound=inconclusive" in out.splitlines()
    assert err


def test_cost_file_roundtrip(ex1_path, tmp_path, capsys):
    costs = tmp_path / "costs.txt"
    costs.write_text("log a 1/2\nlog b 1/2\n")
    code, out, _ = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a",
                       "--costs", str(costs))
    assert code == 0
    assert out.splitlines()[0] == "cost=3/2"


def test_gen_shuffle_member_pipeline(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "shuffle", "ab", "cd")
    assert code == 0
    netfile = tmp_path / "shuffle.net"
    netfile.write_text(out)
    code, out, _ = run(capsys, "member", str(netfile), "--trace", "a,c,b,d")
    assert code == 0
    assert out.strip() == "member=true"


def test_gen_sshuffle(capsys):
    code, out, _ = run(capsys, "gen", "sshuffle", "ab", "2")
    assert code == 0
    assert "place p0 init=2" in out


def test_gen_tree(tmp_path, capsys):
    tree = tmp_path / "tree.txt"
    tree.write_text("seq(a, xor(b, tau))\n")
    code, out, _ = run(capsys, "gen", "tree", str(tree))
    assert code == 0
    netfile = tmp_path / "tree.net"
    netfile.write_text(out)
    assert run(capsys, "member", str(netfile), "--trace", "a")[1].strip() == "member=true"


def test_gen_tm(tmp_path, capsys):
    machine = tmp_path / "machine.tm"
    machine.write_text(
        "states q0 qacc qrej\nblank _\ntape a _\nspace 1\n"
        "delta q0 a -> qacc _ S\ndelta q0 _ -> qacc _ S\n")
    code, out, _ = run(capsys, "gen", "tm", str(machine), "--input", "")
    assert code == 0
    assert out.startswith("# trace: acc")
    netfile = tmp_path / "tm.net"
    netfile.write_text(out)
    code, out, _ = run(capsys, "align", str(netfile), "--trace", "acc")
    assert code == 0
    assert out.splitlines()[0] == "cost=0"


def test_shorten(ex1_path, capsys):
    code, out, _ = run(capsys, "shorten", str(ex1_path), "--seq",
                       "t1,t2,t3,t4,t1,t2,t3,t4,t1,t3,t2,t5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "original_length=12"
    assert lines[1] == "shortened_length=4"
    assert lines[2] == "bound=35"


def test_shorten_budget_flag(ex1_path, capsys):
    code, out, err = run(capsys, "shorten", str(ex1_path), "--seq",
                         "t1,t2,t3,t4,t1,t2,t3,t4,t1,t3,t2,t5",
                         "--budget", "1")
    assert code == 3
    assert "original_length=12" in out
    assert err


def test_bench_table(capsys):
    code, out, _ = run(capsys, "bench")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:4] == ["instance", "algorithm", "cost", "states"]
    assert len(lines) == 7
    assert any("ex1_deviating" in line and " 2 " in line for line in lines)


def test_auto_equals_generic_cost(ex1_path, capsys):
    auto = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a",
               "--algo", "auto")[1].splitlines()[0]
    generic = run(capsys, "align", str(ex1_path), "--trace", "a,b,a,a",
                  "--algo", "generic")[1].splitlines()[0]
    assert auto == generic == "cost=2"


def test_classify_bound_exceeded(tmp_path, capsys):
    pump = tmp_path / "pump.net"
    pump.write_text("place p init=1 final=1\nplace q\n"
                    "trans t label=a in=p out=p,q\n")
    code, out, err = run(capsys, "classify", str(pump), "--bound", "3")
    assert code == 0
    lines = out.splitlines()
    assert "bound_found=exceeds_3" in lines
    assert "safe=false" in lines
    assert "sound=inconclusive" in lines
    assert err
