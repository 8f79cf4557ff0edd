"""Runs the sessprog CLI on the shipped examples and validates every --json
output against the output schema. Repeated runs must be byte-identical."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, examples = sys.argv[1], sys.argv[2], pathlib.Path(sys.argv[3])
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    invocations = []
    for f in sorted(examples.glob("*.ssp")):
        path = str(f)
        invocations += [
            ["check", path],
            ["check", path, "--judgment-index", "0"],
            ["progress", path],
            ["oracle", path],
            ["oracle", path, "--max-states", "3"],
            ["run", path, "--seed", "11", "--max-steps", "12"],
            ["explore", path],
            ["measure", path],
            ["approx", "1", path],
        ]
    invocations += [
        ["dual", "rec[inf] t. ?[a,b] int . t", "![b,a] int . rec[inf] t. ![b,a] int . t"],
        ["dual", "?[a,b] int . end", "![a,b] int . end"],
    ]

    failures = 0
    for args in invocations:
        cmd = [binary, *args, "--json"]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        label = " ".join(args)
        if first.stdout != second.stdout:
            print(f"FAIL {label}: output differs between runs")
            failures += 1
            continue
        try:
            document = json.loads(first.stdout)
        except json.JSONDecodeError as e:
            print(f"FAIL {label}: not JSON ({e}); exit {first.returncode}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
        else:
            print(f"ok   {label} (exit {first.returncode})")
    print(f"{len(invocations) - failures}/{len(invocations)} outputs valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
