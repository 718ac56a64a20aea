import json
import subprocess

import jsonschema
import pytest


def run(cli, args, stdin=""):
    return subprocess.run([cli, *args], input=stdin, capture_output=True, text=True, check=False)


SAMPLE = "a,b,c\n" + "".join(f"{i % 7},{(i * 3) % 5},{(i % 7) ** 2 + i % 2}\n" for i in range(40))
JOINT = "x_1,y_1,prob\n0,0,0.5\n1,1,0.5\n"

CASES = [
    ("dcov", ["dcov", "--x", "a,b", "--y", "c"], SAMPLE),
    ("dcov", ["dcov", "--x", "a", "--y", "c", "--method", "charrv", "--seed", "2", "--draws", "10",
              "--grid-panels", "4"], SAMPLE),
    ("dcov", ["dcov", "--joint", "--method", "charfn"], JOINT),
    ("dcov", ["dcov", "--x", "a", "--y", "c", "--method", "hm", "--trunc-M", "10"], SAMPLE),
    ("dcov", ["dcov", "--x", "a", "--y", "c", "--method", "beta2", "--beta", "2"], SAMPLE),
    ("test", ["test", "--x", "a", "--y", "c", "--seed", "4", "--perms", "99"], SAMPLE),
    ("converge", ["converge", "--sizes", "100,1000", "--seeds", "1,2", "--format", "json"], JOINT),
    ("diag", ["diag", "--x", "a,b", "--prefixes", "10,20"], SAMPLE),
    ("classify", ["classify"], '{"beta": 3, "hx_L2": false, "x_2beta": false, "hy_L2": false, "y_2beta": false}'),
    ("constants", ["constants", "--ell", "3", "--beta", "0.5"], ""),
    ("demo", ["demo", "--format", "json"], ""),
]


@pytest.mark.parametrize("schema,args,stdin", CASES, ids=[" ".join(c[1][:4]) for c in CASES])
def test_json_reports_match_schema(cli, schema_dir, schema, args, stdin):
    res = run(cli, args, stdin)
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    jsonschema.validate(doc, json.loads((schema_dir / f"{schema}.schema.json").read_text()))


def test_exit_codes(cli):
    assert run(cli, ["dcov", "--x", "a", "--y", "c", "--method", "charfn", "--beta", "2"], SAMPLE).returncode == 3
    assert run(cli, ["dcov", "--x", "a", "--y", "missing"], SAMPLE).returncode == 2
    bad = run(cli, ["dcov", "--x", "a", "--y", "b"], "a,b\n1,2\n3,x\n")
    assert bad.returncode == 2
    assert "line 3" in bad.stderr


def test_converge_csv_trace(cli):
    res = run(cli, ["converge", "--sizes", "100,1000", "--seed", "1"], JOINT)
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "n,estimate,abs_error,population"
    assert [line.split(",")[0] for line in lines[1:]] == ["100", "1000"]


def test_thread_count_does_not_change_output(cli):
    args = ["dcov", "--x", "a,b", "--y", "c", "--method", "charrv", "--seed", "9", "--draws", "12", "--grid-panels", "4"]
    outs = []
    for threads in ("1", "8"):
        doc = json.loads(run(cli, ["--threads", threads, *args], SAMPLE).stdout)
        doc.pop("wall_time_s")
        outs.append(json.dumps(doc, sort_keys=True))
    assert outs[0] == outs[1]
