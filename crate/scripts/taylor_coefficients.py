#!/usr/bin/env python3
"""Generate the small-|u| Taylor coefficients used by the nonlinearity kernels.

Writes crates/core/data/taylor_coefficients.txt with one coefficient per line:

    <id> <degree> <value to 30 significant digits>

Ids 1..6 are the stripped coefficients h~1..h~6 with the alpha^2 factor
removed (h~2, h~3, h~4 are multiplied by alpha^2 at runtime). The extra ids
are auxiliary kernels:

    sinc   sin(u)/u
    an     (u - sin u cos u)/u
    k5     (sin x - x cos x)/x^3    (5D radial Fourier kernel)
"""
import os
import sympy as sp

u = sp.symbols("u")
MAX_DEGREE = 10

KERNELS = [
    ("1", (sp.sin(2 * u) - 2 * u) / u**3),
    ("2", sp.sin(2 * u) * (sp.sin(u) ** 2 - u**2) / u**5),
    ("3", 4 * sp.sin(u) * (sp.sin(u) - u * sp.cos(u)) / u**3),
    ("4", sp.sin(2 * u) / u),
    ("5", (sp.sin(2 * u) - 2 * u) / u**3),
    ("6", (u - sp.sin(u) * sp.cos(u)) * (1 - sp.cos(2 * u)) / u**5),
    ("sinc", sp.sin(u) / u),
    ("an", (u - sp.sin(u) * sp.cos(u)) / u),
    ("k5", (sp.sin(u) - u * sp.cos(u)) / u**3),
]


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out = os.path.join(here, "..", "crates", "core", "data", "taylor_coefficients.txt")
    lines = ["# id degree value  (generated by scripts/taylor_coefficients.py)"]
    for name, expr in KERNELS:
        poly = sp.series(expr, u, 0, MAX_DEGREE + 1).removeO()
        for deg in range(MAX_DEGREE + 1):
            c = sp.Rational(poly.coeff(u, deg))
            if c != 0:
                lines.append(f"{name} {deg} {sp.N(c, 30)}")
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
