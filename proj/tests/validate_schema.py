"""Runs the CLI on small inputs and validates every report against the output schema."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

binary, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)


def run(*args):
    out = subprocess.run([binary, *args], check=True, capture_output=True, text=True).stdout
    return json.loads(out)


with tempfile.TemporaryDirectory() as tmp:
    def builtin(name, *params):
        path = os.path.join(tmp, name + ".json")
        with open(path, "w") as f:
            json.dump(run("builtin", name, *params), f)
        return path

    ad = builtin("amplitude_damping", "0.3")
    er = builtin("erasure", "2", "0.25")
    state = builtin("pure_state", "0.8")
    outputs = {
        "bounds amplitude_damping": run("--restarts", "3", "bounds", ad),
        "bounds erasure": run("--restarts", "3", "bounds", er),
        "degradability": run("--restarts", "3", "degradability", ad),
        "state-bounds": run("--restarts", "3", "state-bounds", state),
        "search-bippt": run("search-bippt", "--din", "2", "--dout", "2", "--denv", "2", "--seeds", "2",
                            "--iterations", "5", "--ppt-eps", "1", "--coh-min", "-2", "--barrier", "0"),
    }

failed = 0
for name, doc in outputs.items():
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        print(f"{name}: {'/'.join(map(str, e.path))}: {e.message}")
    failed += bool(errors)
    print(f"{name}: {'ok' if not errors else 'INVALID'}")

bad = dict(outputs["bounds erasure"])
bad["schema"] = 2
if validator.is_valid(bad):
    print("schema accepted a wrong version")
    failed += 1
sys.exit(1 if failed else 0)
