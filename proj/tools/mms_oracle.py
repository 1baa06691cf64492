#!/usr/bin/env python3
"""Symbolic reference values of V u (the dominant data component) for the
manufactured cases, tabulated on the 5^4 unit grid.

Writes one table per case: `x1 x2 x3 x4 value`, 17 significant digits.
With --check, recomputes and compares against the existing tables instead.
"""

import argparse
import itertools
import sys
from pathlib import Path

import sympy as sp

X = sp.symbols("x1 x2 x3 x4", real=True)
ORDERS = (1, 1, 2, 2)
NODES = 5
DIGITS = 40


def indices():
    return itertools.product(*(range(m + 1) for m in ORDERS))


def mixed(u, idx):
    for x, d in zip(X, idx):
        if d:
            u = sp.diff(u, x, d)
    return u


def operator(u, coef):
    """D^dominant u + sum_i a_i D^i u."""
    total = mixed(u, ORDERS)
    for idx in indices():
        if idx == ORDERS:
            continue
        a = coef(idx)
        if a != 0:
            total += a * mixed(u, idx)
    return total


def poly_u():
    x1, x2, x3, x4 = X
    return x1 * x2 * x3**2 * x4**2 / 4


def trig_coef(idx):
    sign = 1 if sum(idx) % 2 == 0 else -1
    return sp.Rational(sign * (1 + idx[0] + 2 * idx[1] + 3 * idx[2] + 4 * idx[3]), 16)


def jump_coef(idx):
    if idx == (0, 0, 1, 1):
        return sp.Piecewise((1, X[0] < sp.Rational(1, 2)), (-2, True))
    if idx == (0, 0, 0, 0):
        return sp.Rational(1, 2)
    return 0


def cases():
    x1, x2, x3, x4 = X
    jump_u = (1 + x1) ** 2 / 2 * (1 + x2) ** 2 / 2 * (1 + x3) ** 3 / 2 * (1 + x4) ** 3 / 2
    return {
        "poly-const-coef": operator(poly_u(), lambda idx: 1),
        "trig": operator(sp.sin(x1) * sp.sin(x2) * sp.sin(x3) * sp.sin(x4), trig_coef),
        "jump-coef": operator(jump_u, jump_coef),
    }


def table(expr):
    pts = [sp.Rational(j, NODES - 1) for j in range(NODES)]
    rows = []
    for p in itertools.product(pts, repeat=4):
        value = sp.N(expr.subs(dict(zip(X, p))), DIGITS)
        rows.append((tuple(float(c) for c in p), float(value)))
    return rows


def render(name, rows):
    lines = [f"# {name}: x1 x2 x3 x4 value on the {NODES}^4 unit grid"]
    for coords, value in rows:
        lines.append(" ".join(f"{c:.17g}" for c in coords) + f" {value:.17g}")
    return "\n".join(lines) + "\n"


def parse(text):
    rows = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        *coords, value = (float(t) for t in line.split())
        rows.append((tuple(coords), value))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "golden")
    ap.add_argument("--check", action="store_true", help="compare against existing tables")
    ap.add_argument("--tol", type=float, default=1e-14, help="relative tolerance for --check")
    args = ap.parse_args()

    failed = False
    for name, expr in cases().items():
        rows = table(expr)
        path = args.out_dir / f"{name}.txt"
        if not args.check:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(render(name, rows))
            print(f"wrote {path}")
            continue
        stored = parse(path.read_text())
        worst = 0.0
        ok = len(stored) == len(rows)
        for (c0, v0), (c1, v1) in zip(stored, rows):
            ok = ok and c0 == c1
            worst = max(worst, abs(v0 - v1) / max(1.0, abs(v1)))
        ok = ok and worst <= args.tol
        print(f"{name}: {'ok' if ok else 'MISMATCH'} (max rel diff {worst:.3g})")
        failed = failed or not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
