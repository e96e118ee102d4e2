"""Runs the eisenrest binary and validates every JSON record it prints."""
import json
import subprocess
import sys

import jsonschema

tool, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

cases = [
    (["eval", "--x", "0", "--y", "1.5", "--T", "30"], 0),
    (["--format", "jsonl", "eval", "--x", "0.2", "--y", "0.7", "--T", "12"], 0),
    (["restrict", "--x", "0.3", "--T", "20"], 0),
    (["main-term", "--x", "0.25", "--T", "100"], 0),
    (["compare", "--x", "0", "--T", "20"], 0),
    (["signchange", "--x", "0", "--T", "30"], 0),
    (["bq", "--q", "12", "--T", "5"], 0),
    (["check", "--suite", "bessel_identity"], 0),
    (["eval", "--x", "0", "--y", "1.5"], 2),
    (["eval", "--x", "0", "--y", "0.0001", "--T", "30"], 1),
]

failures = 0
for args, want in cases:
    proc = subprocess.run([tool] + args, capture_output=True, text=True)
    try:
        record = json.loads(proc.stdout)
        validator.validate(record)
        ok = proc.returncode == want and (want == 0) != ("error" in record)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        print(f"{args}: {e}")
        ok = False
    print(("ok   " if ok else "FAIL ") + " ".join(args))
    failures += not ok

sys.exit(1 if failures else 0)
