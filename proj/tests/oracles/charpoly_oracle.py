"""Normalised characteristic polynomial of ad_D on the abelian ideal K.

Takes the star commutators printed by star_oracle.py for the space-like
rows and the T1 row, divides ad_D by its trace and prints the coefficients
of t^3 - t^2 - a t - b together with a, b and alpha^2 = -9a - 3.
"""
import sympy as sp

I = sp.I
h, xi, t, kappa = sp.symbols("h xi t kappa")


def ad_on_k(brackets, d, k):
    m = sp.zeros(len(k))
    for j, kj in enumerate(k):
        col = brackets.get((d, kj))
        if col is None:
            col = {n: -c for n, c in brackets.get((kj, d), {}).items()}
        for i, ki in enumerate(k):
            m[i, j] = col.get(ki, 0)
    return m


ROWS = {
    "S1": ({(0, 1): {0: -I * h}, (1, 2): {2: I * h, 3: -I * xi}, (1, 3): {2: I * xi, 3: I * h}}, 1, [0, 2, 3]),
    "S2": ({(0, 1): {0: -I * h, 3: I * xi}, (1, 2): {2: I * h, 3: -I * xi},
            (1, 3): {0: -I * xi, 2: I * xi, 3: I * h}}, 1, [0, 2, 3]),
    "S3": ({(0, 1): {0: -I * h, 3: I * xi}, (1, 2): {2: I * h}, (1, 3): {0: -I * xi, 3: I * h}}, 1, [0, 2, 3]),
    "T1": ({(0, 1): {1: I * h, 2: 2 * I * xi}, (0, 2): {1: -2 * I * xi, 2: I * h}, (0, 3): {3: I * h}}, 0, [1, 2, 3]),
}

for name, (br, d, k) in ROWS.items():
    a = ad_on_k(br, d, k)
    a = a / a.trace()
    p = sp.Poly(sp.simplify((t * sp.eye(3) - a).det()), t)
    c = [sp.simplify(x.subs(h, 1 / kappa)) for x in p.all_coeffs()]
    av, bv = sp.simplify(-c[2]), sp.simplify(-c[3])
    print(name, "coeffs", c, "a =", sp.expand(av), "b =", sp.expand(bv), "alpha^2 =", sp.expand(-9 * av - 3))
