"""Generate the I-data fixture for Fl(2) = P^1 by torus localization.

For each degree d the linear sigma model compactification of the degree-d
graph space is P(C^2 (x) H^0(P^1, O(d))) = P^{2d+1}.  Its torus fixed point
over omega in S_2 is the line spanned by e_{omega(1)} (x) z_0^d, whose tangent
weights are u_{omega(1)} - u_i - m*alpha for (i, m) != (omega(1), 0).
Dividing the Euler class of the fixed point of P^1 by the tangent Euler class
of P^{2d+1} at that point gives I_d restricted to omega.
"""

import argparse
import itertools
import json
import re

import sympy as sp

ALPHA = sp.Symbol("a")
U = {i: sp.Symbol(f"u{i}") for i in (1, 2)}


def tangent_weights_target(perm):
    w = U[perm[0]]
    return [w - U[i] for i in (1, 2) if i != perm[0]]


def tangent_weights_space(perm, d):
    w = U[perm[0]]
    return [w - U[i] - m * ALPHA for i in (1, 2) for m in range(d + 1) if (i, m) != (perm[0], 0)]


def restriction(perm, d):
    num = sp.prod(tangent_weights_target(perm))
    den = sp.prod(tangent_weights_space(perm, d))
    return sp.factor(sp.cancel(num / den))


def render(expr):
    """Render a product of linear factors in the fixture grammar."""
    if expr == 1:
        return "1"
    num, den = sp.fraction(sp.together(expr))
    num_lead, num_factors = sp.factor_list(num)
    den_lead, den_factors = sp.factor_list(den)
    parts = [_factor(f, e) for f, e in num_factors] + [_factor(f, -e) for f, e in den_factors]
    lead = num_lead / den_lead
    if lead != 1:
        parts.insert(0, str(lead))
    return "*".join(parts)


def _factor(f, e):
    poly = sp.Poly(f, ALPHA, U[1], U[2])
    assert poly.total_degree() == 1, f
    terms = []
    for sym, name in ((ALPHA, "a"), (U[1], "u1"), (U[2], "u2")):
        c = poly.coeff_monomial(sym)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        terms.append(f"{sign}{'' if mag == 1 else str(mag)}{name}")
    const = poly.coeff_monomial(1)
    if const != 0:
        terms.append(f"{'-' if const < 0 else '+'}{abs(const)}")
    body = "".join(terms).lstrip("+")
    return f"({body})" if e == 1 else f"({body})^{e}"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=4)
    parser.add_argument("--output", required=True)
    args = parser.parse_args()
    entries = []
    for d in range(args.max_degree + 1):
        rs = {}
        for perm in itertools.permutations((1, 2)):
            expr = restriction(perm, d)
            text = render(expr)
            python_text = re.sub(r"(\d)([au])", r"\1*\2", text).replace("^", "**")
            check = sp.sympify(python_text, locals={"a": ALPHA, **{f"u{i}": U[i] for i in U}})
            assert sp.simplify(check - expr) == 0, (perm, d, text)
            rs["".join(map(str, perm))] = text
        entries.append(
            {
                "d": [d],
                "restrictions": rs,
                "provenance": f"torus localization on P^{2 * d + 1} (tools/gen_i_fixture.py, sympy {sp.__version__})",
                "gkm": True,
            }
        )
    with open(args.output, "w") as fh:
        json.dump({"n": 2, "entries": entries}, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
