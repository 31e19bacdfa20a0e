"""Run every subcommand with --output json and validate against schemas/."""
import glob
import json
import os
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], sys.argv[2]
schemas = os.path.join(root, "schemas")


def load(name):
    with open(os.path.join(schemas, name + ".schema.json")) as f:
        return json.load(f)


def data(p):
    return os.path.join(root, p)


runs = [
    ("ideal", ["ideal", data("data/free_particle.dsl")], 0),
    ("ideal", ["ideal", data("data/hill.dsl")], 0),
    ("symmetries", ["symmetries", data("data/free_particle.dsl"), "--degree", "2", "--restriction", "point"], 0),
    ("symmetries", ["symmetries", data("data/hill.dsl"), "--degree", "1", "--parity", "both"], 0),
    ("frobenius", ["frobenius", data("data/contact_n2.pfaff")], 0),
    ("frobenius", ["frobenius", data("data/plane.pfaff")], 0),
    ("growth", ["growth", data("data/engel.dsl")], 0),
    ("cohomology", ["cohomology", data("fixtures/sl2.json"), "--imax", "3"], 0),
    ("cohomology", ["cohomology", data("fixtures/susy.json"), "--imax", "2", "--weighted", "--module", "adjoint"], 0),
    ("bracket-table", ["bracket-table", data("data/minkowski_susy.dsl")], 0),
    ("bracket-table", ["bracket-table", data("fixtures/osp12.json")], 0),
    ("curvature", ["curvature", data("data/su2_connection.dsl")], 0),
    ("residual", ["residual", "maxwell", data("data/constant_field.json")], 0),
    ("residual", ["residual", "dirac", data("data/dirac_rest.json")], 0),
    ("susy-vary", ["susy-vary", data("data/constant_field.json")], 0),
    ("hodge", ["hodge", "--signature", "4,1", "dx1*dx2"], 0),
    ("verify", ["verify", "hill"], 0),
    ("bench", ["bench", "--kmax", "5"], 0),
]

failures = 0
for schema, args, code in runs:
    p = subprocess.run([cli, "--output", "json"] + args, capture_output=True, text=True)
    try:
        if p.returncode != code:
            raise RuntimeError(f"exit {p.returncode}: {p.stderr.strip()}")
        jsonschema.validate(json.loads(p.stdout), load(schema))
        print("ok  ", schema, " ".join(args[1:]))
    except Exception as e:  # noqa: BLE001
        failures += 1
        print("FAIL", schema, " ".join(args[1:]), "-", e)

for path in sorted(glob.glob(data("fixtures/*.json"))):
    with open(path) as f:
        try:
            jsonschema.validate(json.load(f), load("algebra"))
            print("ok  ", os.path.relpath(path, root))
        except jsonschema.ValidationError as e:
            failures += 1
            print("FAIL", path, "-", e.message)
for path in sorted(glob.glob(data("data/*.json"))):
    with open(path) as f:
        try:
            jsonschema.validate(json.load(f), load("field_configuration"))
            print("ok  ", os.path.relpath(path, root))
        except jsonschema.ValidationError as e:
            failures += 1
            print("FAIL", path, "-", e.message)

sys.exit(1 if failures else 0)
