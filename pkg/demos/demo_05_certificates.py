#!/usr/bin/env python3
"""Certificate lifecycle: build, verify fresh, catch tampering, report.

Every verification recomputes from the stored exponents; cached construction
data in the file is ignorable.  Identical runs produce byte-identical files,
and editing a single exponent is caught with a concrete violating vector.
"""

import json
import tempfile
from pathlib import Path

from freelac.cli import main


def run(argv) -> int:
    print(f"$ freelac {' '.join(argv)}")
    code = main(argv)
    print(f"(exit {code})\n")
    return code


def demo():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        fam_a = tmp / "family-a.json"
        fam_b = tmp / "family-b.json"
        run(["build", "--s", "2", "--n-min", "8", "--n-max", "12", "--out", str(fam_a)])
        run(["build", "--s", "2", "--n-min", "8", "--n-max", "12", "--out", str(fam_b)])
        print(f"byte-identical rebuild: {fam_a.read_bytes() == fam_b.read_bytes()}\n")

        run(["verify", "pn", str(fam_a)])
        run(["verify", "zs", str(fam_a)])
        run(["verify", "leinert", str(fam_a)])
        run(["verify", "qi", str(fam_a)])

        doc = json.loads(fam_a.read_text())
        factor = doc["payload"]["factors"][0]
        factor["exponents"][1] = 2 * factor["exponents"][0]
        factor["chosen"] = factor["exponents"]
        tampered = tmp / "tampered.json"
        tampered.write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        print("tampering: replaced the second exponent of E_8 with twice the first")
        run(["verify", "pn", str(tampered)])

        run(["report", str(fam_a), "--out", str(tmp / "report.json")])


if __name__ == "__main__":
    demo()
