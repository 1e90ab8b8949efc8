"""Regenerate the CLI golden files under tests/golden/.

Each golden is the exact stdout of one ``hecke0`` invocation, stored per
(datum, max length) for class lists, cocenter projections and character
tables.  ``manifest.json`` maps file names to the argument lists.

Usage: python3 scripts/make_goldens.py
"""

import contextlib
import io
import json
import pathlib

from hecke0.cli import main

ROOT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"
DATA = ("A1-sc", "A1-ad", "A2-sc", "A2-ad", "C2", "G2")
LENGTHS = (3, 4)
KINDS = {
    "classes": ["classes"],
    "cocenter": ["cocenter", "table"],
    "chartable": ["module", "chartable"],
}


def cases():
    out = {}
    for datum in DATA:
        for L in LENGTHS:
            for kind, cmd in KINDS.items():
                out[f"{datum}_L{L}_{kind}.tsv"] = cmd + ["--datum", datum, "--max-len", str(L)]
    out["A2-ad_L4_classes.json"] = ["classes", "--datum", "A2-ad", "--max-len", "4", "--format", "json"]
    out["A1-sc_L3_classes.dot"] = ["classes", "--datum", "A1-sc", "--max-len", "3", "--format", "dot"]
    return out


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    if code != 0:
        raise SystemExit(f"{argv} exited with {code}")
    return buf.getvalue()


def main_():
    ROOT.mkdir(parents=True, exist_ok=True)
    manifest = cases()
    for name, argv in manifest.items():
        (ROOT / name).write_text(run(argv))
        print(name)
    (ROOT / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main_()
