"""Runs every JSON-producing CLI command and validates the output against the schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main(tool, schema_path):
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    tmp = tempfile.mkdtemp()
    a = os.path.join(tmp, "a.json")
    b = os.path.join(tmp, "b.json")
    with open(a, "w") as f:
        json.dump({"dim": 2, "re": [0.5, 0, 0, 0.5], "im": [0, 0, 0, 0]}, f)
    with open(b, "w") as f:
        json.dump({"dim": 2, "re": [0.8, 0.1, 0.1, 0.2], "im": [0, 0.05, -0.05, 0]}, f)

    commands = [
        ["verify", "--suite", "all", "--trials", "20", "--seed", "1"],
        ["verify", "--suite", "fuchs", "--trials", "0"],
        ["verify", "--suite", "fuchs", "--trials", "3", "--timing"],
        ["verify", "--suite", "operator_mean_limits_as_stated", "--trials", "5"],
        ["verify", "--matrix-a", a, "--matrix-b", b, "--alpha", "1", "--r", "0.5"],
        ["constants", "--eps", "0.1", "--r", "0.5", "--alpha", "1", "--m", "1", "--M", "4"],
        ["oracle"],
        ["scan", "--axis", "fannes"],
        ["scan", "--axis", "specht"],
        ["scan", "--axis", "ls_r", "--eps", "0.3"],
        ["scan", "--axis", "kantorovich", "--cond", "3"],
    ]
    failed = 0
    for args in commands:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print("FAIL", " ".join(args), "exit", proc.returncode, proc.stderr.strip())
            failed += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        if errors:
            print("FAIL", " ".join(args), errors[0].message)
            failed += 1
        else:
            print("ok  ", " ".join(args))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
