"""Validate bundled data and tool output against the published schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    tool, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = root / "schemas"
    matrix_set = json.loads((schemas / "matrix_set.schema.json").read_text())
    report = json.loads((schemas / "verdict_report.schema.json").read_text())

    for path in sorted((root / "data").glob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), matrix_set)

    for name, algorithm in [("figure1", "pairs"), ("figure1", "theorem"),
                            ("figure2", "auto"), ("all_ones", "symmetric")]:
        run = subprocess.run(
            [tool, "decide", str(root / "data" / f"{name}.json"), "--json",
             "--algorithm", algorithm],
            capture_output=True, text=True, check=False)
        assert run.returncode in (0, 1), run.stderr
        jsonschema.validate(json.loads(run.stdout), report)

    for variant in ("directed", "doubled", "undirected"):
        run = subprocess.run(
            [tool, "reduce", str(root / "data" / "figure3.cnf"), "--variant", variant],
            capture_output=True, text=True, check=True)
        jsonschema.validate(json.loads(run.stdout), matrix_set)
    print("schemas ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
