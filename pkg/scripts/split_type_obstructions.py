"""For every realizable 4-point type of the given groups, find y whose split type is certified not a pullback."""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from galcov.groups import make_group
from galcov.hurwitz import RamificationType, class_multisets, first_nielsen_tuple, genus
from galcov.obstruction import dy_obstruction_search


@dataclass
class Config:
    specs: list[str] = field(default_factory=lambda: ["DC2", "E3^2", "E2^3"])
    r: int = 4


def main(cfg: Config) -> int:
    missing = 0
    for spec in cfg.specs:
        G = make_group(spec)
        for ms in class_multisets(G, cfg.r):
            T = RamificationType(G, ms)
            if first_nielsen_tuple(T) is None:
                continue
            found = dy_obstruction_search(T)
            row = {"group": spec, "classes": list(ms), "genus": genus(T)}
            if found is None:
                missing += 1
                row["result"] = None
            else:
                y, D, cert = found
                row.update(y=y, split=list(D.classes), certificate=cert.to_dict())
            print(json.dumps(row, sort_keys=True, separators=(",", ":")))
    return 1 if missing else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", default="DC2,E3^2,E2^3")
    ap.add_argument("--r", type=int, default=4)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.specs.split(","), a.r)))
