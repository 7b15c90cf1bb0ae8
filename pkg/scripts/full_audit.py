#!/usr/bin/env python3
"""Run the complete claim audit at full depth and sample count.

Prints the human-readable table and optionally writes the JSON entries;
exits 1 if any claim fails outright (SCALE_DEPENDENT entries never do).
"""

import argparse
import json
import sys

from veronese import audit
from veronese.cli import _render_entries


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json-out", default=None,
                        help="also write the entries as a JSON array")
    args = parser.parse_args()

    entries = audit.run_claim_audit(n_max_real=6, n_max_complex=4,
                                    seed=args.seed, samples=args.samples)
    _render_entries(entries, "table", sys.stdout)
    failures = audit.hard_failures(entries)
    print(f"\n{len(entries)} claims audited, {len(failures)} hard failure(s)")
    if args.json_out:
        with open(args.json_out, "w") as handle:
            json.dump(audit.audit_to_dicts(entries), handle, indent=2)
            handle.write("\n")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
