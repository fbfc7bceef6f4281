#!/usr/bin/env python3
"""Runs every --json form of the tool and validates the output against the
published schema. Also checks that two identical runs differ only in timings.

usage: validate_schema.py <mordell binary> <schema file> <scratch dir>
"""
import json
import os
import subprocess
import sys

import jsonschema


def run(tool, args):
    proc = subprocess.run([tool] + args, capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        raise SystemExit(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return proc.stdout


def main():
    tool, schema_path, scratch = sys.argv[1:4]
    os.makedirs(scratch, exist_ok=True)
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft7Validator(schema)

    n_list = os.path.join(scratch, "n_list.txt")
    with open(n_list, "w") as f:
        f.write("# schema sample\n3\n2\n1/3\nnot-a-number\n")

    docs = {}
    for name, args in {
        "verify": ["verify", "--json"],
        "show_n": ["show", "--n", "3", "--json"],
        "show_degenerate": ["show", "--n", "-4", "--json"],
        "show_stage": ["show", "--stage", "n", "--json"],
        "regulator": ["regulator", "--n", "3", "--json"],
        "regulator_halved": ["regulator", "--n", "5/7", "--normalization", "halved", "--precision", "30", "--json"],
    }.items():
        docs[name] = json.loads(run(tool, args))
    scan_json = os.path.join(scratch, "scan.json")
    run(tool, ["scan", "--input", n_list, "--denom-bound", "2", "--numer-bound", "5000", "--json", scan_json])
    with open(scan_json) as f:
        docs["scan"] = json.load(f)

    failures = 0
    for name, doc in docs.items():
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"{name}: {list(e.path)}: {e.message}")
        failures += len(errors)
        print(f"{name}: {'ok' if not errors else 'INVALID'}")

    # an invalid document must be rejected, so the schema is not vacuous
    bad = dict(docs["show_n"])
    bad["results"] = dict(bad["results"], d=1.5)
    if validator.is_valid(bad):
        print("schema accepted a floating-point rational")
        failures += 1

    again = json.loads(run(tool, ["regulator", "--n", "3", "--json"]))
    for doc in (again, docs["regulator"]):
        doc.pop("timings")
    if again != docs["regulator"]:
        print("regulator output is not deterministic")
        failures += 1

    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
