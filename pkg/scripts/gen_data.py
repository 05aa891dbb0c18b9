"""Regenerate the machine files under src/opda/data from opda.catalog."""

import os
import sys

from opda import catalog
from opda.machine import format_machine

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src", "opda", "data")


def main():
    targets = [("zoo", catalog.ZOO_MACHINES)]
    if hasattr(catalog, "SAMPLE_MACHINES"):
        targets.append(("samples", catalog.SAMPLE_MACHINES))
    if hasattr(catalog, "SAMPLE_PPDAS"):
        targets.append(("samples", catalog.SAMPLE_PPDAS, ".ppda"))
    for sub, table, *ext in targets:
        d = os.path.join(ROOT, sub)
        os.makedirs(d, exist_ok=True)
        for name, fn in sorted(table.items()):
            path = os.path.join(d, name + (ext[0] if ext else ".m"))
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(format_machine(fn()))
            print("wrote", os.path.relpath(path))
    return 0


if __name__ == "__main__":
    sys.exit(main())
