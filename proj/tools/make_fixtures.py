#!/usr/bin/env python3
"""Writes the shipped problem fixtures under tests/data (GFN1 fields plus problem JSON)."""
import json
import pathlib
import struct

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def write_gfn(path, values):
    values = np.asarray(values, dtype=np.complex128)
    head = b"GFN1" + struct.pack("<I", values.ndim) + b"".join(struct.pack("<I", s) for s in values.shape)
    body = np.empty(values.size * 2, dtype="<f8")
    body[0::2] = values.real.ravel()
    body[1::2] = values.imag.ravel()
    path.write_bytes(head + body.tobytes())


def write_json(path, obj):
    path.write_text(json.dumps(obj, indent=2) + "\n")


def wave():
    # v_tt = v_xx: v = cos(2 pi t) cos(2 pi x) + 0.5 cos(6 pi t) sin(6 pi x) + sin(4 pi t)/(4 pi) sin(4 pi x)
    n = 64
    x = np.arange(n) / n
    d = ROOT / "wave"
    d.mkdir(parents=True, exist_ok=True)
    write_gfn(d / "f0.gfn", np.cos(2 * np.pi * x) + 0.5 * np.sin(6 * np.pi * x))
    write_gfn(d / "f1.gfn", np.sin(4 * np.pi * x))
    write_json(d / "problem.json", {
        "order": 2,
        "coefficients": [{"j": 1, "kind": "const", "data": 0.0}, {"j": 2, "kind": "const", "data": -1.0}],
        "grid": {"d": 1, "n": n},
        "T": 2.0,
        "data_files": ["f0.gfn", "f1.gfn"],
        "steps_per_unit": 64,
    })


def transport():
    # p_1 = -(c(x) + i gamma(x))|xi|, c = 1 + 0.2 cos 2 pi x, gamma = 0.002 (1 - cos 2 pi x)
    n = 256
    x = np.arange(n) / n
    d = ROOT / "transport"
    d.mkdir(parents=True, exist_ok=True)
    write_gfn(d / "f0.gfn", np.exp(2j * np.pi * 5 * x) + 0.5 * np.exp(-2j * np.pi * 12 * x))
    write_json(d / "problem.json", {
        "order": 1,
        "coefficients": [{
            "j": 1,
            "kind": "trigpoly",
            "data": [
                {"k": [0], "c": [-1.0, -0.002]},
                {"k": [1], "c": [-0.1, 0.001]},
                {"k": [-1], "c": [-0.1, 0.001]},
            ],
        }],
        "grid": {"d": 1, "n": n},
        "T": 1.0,
        "data_files": ["f0.gfn"],
        "steps_per_unit": 64,
    })


if __name__ == "__main__":
    wave()
    transport()
