"""Enumerate the elementary-abelian extension families and evaluate each claimed predicate."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from galcov.extensions import CLAIMS, format_report, replicate_appendix_checks, report_json


@dataclass
class Config:
    claims: tuple[str, ...] = ()
    json: bool = False


def main(cfg: Config) -> int:
    chosen = [c for c in CLAIMS if not cfg.claims or c.claim_id in cfg.claims]
    t0 = time.perf_counter()
    results = replicate_appendix_checks(chosen)
    if cfg.json:
        print(report_json(results))
    else:
        print(format_report(results))
        print(f"\n{len(results)} claims in {time.perf_counter() - t0:.1f}s")
    return 0 if all(r.verdict == "PASS" for r in results) else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("claims", nargs="*", help="claim ids (default: all)")
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    raise SystemExit(main(Config(tuple(a.claims), a.json)))
