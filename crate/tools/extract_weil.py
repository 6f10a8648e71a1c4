#!/usr/bin/env python3
"""Writes fixtures/weil/*.weil from the Weil-coefficient lists and tables
of paper.md. The numbers are read from the source text, never retyped.

Usage: python3 tools/extract_weil.py paper.md fixtures/weil
"""
import re
import sys
from pathlib import Path

# example label -> (family, construction, specialization, prime, q as printed)
EXAMPLES = {
    "quadratic-7": ("f7", "quadratic", "s1=1 s2=0 t=1", 13, "13^2"),
    "linear-11": ("f11", "linear", "s=0", 7, "49"),
    "quadratic-11": ("f11", "quadratic", "s1=1 s2=0", 7, "49"),
    "quadratic-13": ("f13", "quadratic", "s1=1 s2=1 t=1", 5, "5^4"),
    "linear-15": ("f15", "linear", "s=0 t=1", 17, "17"),
    "quadratic-15": ("f15", "quadratic", "s1=1 s2=1 t=1", 17, "17"),
    "linear-21": ("f21", "linear", "s=0", 5, "25"),
    "quadratic-21": ("f21", "quadratic", "s1=1 s2=1", 11, "11"),
    "linear-31": ("f31", "linear", "s=0", 5, "5^3"),
    "quadratic-31": ("f31", "quadratic", "s1=1 s2=2", 3, "3^6"),
}

# Printed coefficients contradicted by point counts on the specialized curve.
# The fixture keeps the printed value and records the correction alongside.
ERRATA = {
    "quadratic-7": {2: 46},
}


def block(text, label):
    start = text.index("\\label{example:%s}" % label)
    return text[start:text.index("\\end{example}", start)]


def row_table(body):
    """A two-row table: a row of indices after `$i$ &`, then a row of values after `$w_i$ &`."""
    m = re.search(r"\$i\$\s*&((?:\s*\$\d+\$\s*&?)+)\\\\.*?\$w_i\$\s*&((?:\s*\$-?\d+\$\s*&?)+)\\\\", body, re.S)
    if not m:
        return []
    idx = re.findall(r"\$(\d+)\$", m.group(1))
    val = re.findall(r"\$(-?\d+)\$", m.group(2))
    assert len(idx) == len(val)
    return list(zip(idx, val))


def coefficients(body):
    pairs = re.findall(r"w_(\d+)\s*=\s*(-?\d+)", body) or row_table(body)
    if not pairs:
        cell = r"\$\s*(\d+)\s*\$\s*&\s*(?:\\multicolumn\{\d+\}\{[^}]*\}\{)?\$\s*(-?\d+)\s*\$"
        pairs = re.findall(cell, body)
    w = {int(i): int(v) for i, v in pairs}
    g = max(w)
    assert sorted(w) == list(range(1, g + 1)), sorted(w)
    return [w[i] for i in range(1, g + 1)]


def main():
    text = Path(sys.argv[1]).read_text()
    out = Path(sys.argv[2])
    for label, (family, construction, spec, p, q_text) in EXAMPLES.items():
        body = block(text, label)
        assert "mathbb{F}}_{%s}" % q_text in body, label
        base, _, exp = q_text.partition("^")
        q = int(base) ** int(exp or 1)
        w = coefficients(body)
        lines = [
            "# Weil coefficients w_1..w_g, one per line after the header",
            "# the specialization applies to f divided by its leading coefficient",
            f"family {family}",
            f"construction {construction}",
            f"specialization {spec}",
            f"prime {p}",
            f"q {q}",
            "normalization monic",
            f"g {len(w)}",
        ] + [f"erratum w{i} {v}" for i, v in ERRATA.get(label, {}).items()] + [str(v) for v in w]
        (out / f"{construction}-{family[1:]}.weil").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
