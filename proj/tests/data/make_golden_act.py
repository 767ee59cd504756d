#!/usr/bin/env python3
"""Writes golden.act, a small idtact/1 file used by the reader tests.

Independent of the C++ writer: only json, struct and base64 from the
standard library. Output must stay byte-identical; rerun and diff after edits.
"""
import base64
import json
import struct
import sys


def f32(values):
    return base64.b64encode(struct.pack("<%df" % len(values), *values)).decode("ascii")


def line(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


graphs = [
    # 3 nodes, layer dims 2 and 1
    {
        "nodes": 3,
        "dims": [2, 1],
        "layers": [[0.0, 1.0, -2.5, 0.1, 3.0e-8, 65504.0], [1.0, 0.5, -0.25]],
        "output": [0.2, 0.8],
        "pred": 1,
    },
    # 1 node
    {
        "nodes": 1,
        "dims": [2, 1],
        "layers": [[-1.0, 1.0e10], [0.75]],
        "output": [0.9, 0.1],
        "pred": 0,
    },
]

out = sys.stdout if len(sys.argv) < 2 else open(sys.argv[1], "w", newline="\n")
out.write(line({"format": "idtact/1", "layer_count": 2, "num_classes": 2, "graph_count": len(graphs),
                "config": {"arch": "gcn", "hidden": 2}, "fold": 0, "test_indices": [1]}) + "\n")
for i, g in enumerate(graphs):
    out.write(line({"graph": i, "nodes": g["nodes"], "dims": g["dims"],
                    "layers": [f32(l) for l in g["layers"]], "output": f32(g["output"]),
                    "pred": g["pred"]}) + "\n")
