"""Regenerate the bundled CLI fixtures.

Run from the repository root:  python3 fixtures/regenerate.py

Outputs are deterministic, so re-running on a clean checkout is a no-op.
"""

import json
import math
from pathlib import Path

import hapkit as hk
from hapkit import serialize as sz

HERE = Path(__file__).resolve().parent


def zdual_scalar_blocks(table, fn):
    blocks = {}
    for lab in table.labels:
        enc = table.encode(lab)
        n = 0 if enc == "e" else int(enc.split("^")[1])
        blocks[enc] = [[[fn(n), 0.0]]]
    return blocks


def main():
    # certify-hap PASS: integer-dual families exp(-|n|/k) on a radius-6 ball
    table = hk.dual_irrep_table(hk.GroupSpec((0,)), 6)
    ks = [1, 2, 4, 8]
    sz.dump_json({
        "table": sz.table_to_obj(table),
        "families": [
            {"blocks": zdual_scalar_blocks(table, lambda n, k=k: math.exp(-abs(n) / k)),
             "normalized": True}
            for k in ks
        ],
        "k_values": ks,
        "conv_tols": [0.998, 0.96, 0.78, 0.53],
        "eps_decay": 0.5,
    }, HERE / "zdual_hap_pass.json")

    # certify-hap FAIL: an undamped family (nontrivial norms 1) with the
    # damping bound enabled
    small = hk.make_table([("a", 2), ("b", 1)])
    eps_fam = hk.counit_family(small)
    sz.dump_json({
        "table": sz.table_to_obj(small),
        "families": [{"blocks": sz.blocks_to_obj(small, eps_fam.blocks),
                      "normalized": True}],
        "k_values": [1],
        "conv_tols": [0.0],
        "eps_decay": 0.5,
    }, HERE / "undamped_fail.json")

    # malformed input
    (HERE / "malformed.json").write_text('{"table": {"entries": [')

    # freeprod PASS: two integer duals, radius 3, words up to length 3
    (HERE / "freeprod_zz.json").write_text(json.dumps({
        "factor1": {"group": "Z", "radius": 3},
        "factor2": {"group": "Z", "radius": 3},
        "k_values": [1, 2, 4, 8, 16],
        "max_word_length": 3,
        "eps_decay": 0.9,
        "conv_tols": [1.0, 0.99, 0.9, 0.7, 0.45],
    }, sort_keys=True, indent=2) + "\n")

    # generators for the semigroup / cocycle / buildgen commands
    sz.dump_json(sz.generator_to_obj(hk.length_functional(hk.GroupSpec((0,)), 4)),
                 HERE / "zdual_length_generator.json")
    mixed = hk.make_table([("a", 2), ("b", 3)])
    sz.dump_json(sz.generator_to_obj(hk.unit_shift_functional(mixed)),
                 HERE / "unit_shift_generator.json")

    # buildgen input: the default-schedule state sequence exp(-|m|/n), n <= 6
    t4 = hk.dual_irrep_table(hk.GroupSpec((0,)), 4)
    sz.dump_json({
        "table": sz.table_to_obj(t4),
        "families": [
            {"blocks": zdual_scalar_blocks(t4, lambda m, n=n: math.exp(-abs(m) / n)),
             "normalized": True}
            for n in range(1, 7)
        ],
    }, HERE / "buildgen_zdual.json")
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
