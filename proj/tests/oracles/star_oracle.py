"""Star commutators of the coordinates from the affine representation.

Every generator acts on span{1, x^mu} as a 5x5 matrix; a twist is a product
of matrix exponentials in the 25-dimensional tensor square, and the
kappa-Minkowski product of two affine elements is reduced by hand. Prints
the nonzero brackets for the rows frozen in test_spacetime.cpp.
"""
import sympy as sp

I = sp.I
h, xi = sp.symbols("h xi")
D = 4


def gens(g):
    def P(mu):
        m = sp.zeros(D + 1)
        m[0, mu + 1] = -I
        return m

    def M(mu, nu):
        m = sp.zeros(D + 1)
        for a in range(D):
            m[a + 1, nu + 1] += I * g[mu][a]
            m[a + 1, mu + 1] -= I * g[nu][a]
        return m

    return P, M


def pi_power(tau, p):
    # Pi acts as x -> x - i h tau; it is unipotent here
    m = sp.eye(D + 1)
    for mu in range(D):
        m[0, mu + 1] = -I * h * tau[mu] * p
    return m


def log_pi(tau):
    return pi_power(tau, 1) - sp.eye(D + 1)


def kron(a, b):
    return sp.kronecker_product(a, b)


def expm(a):
    # every exponent used here is nilpotent
    out, term, k = sp.eye(a.shape[0]), sp.eye(a.shape[0]), 1
    while True:
        term = (term * a) / k
        term = term.applyfunc(sp.expand)
        if term.is_zero_matrix:
            return out
        out += term
        k += 1
        if k > 40:
            raise RuntimeError("exponent is not nilpotent")


def log1p(a):
    out, term, k = sp.zeros(a.shape[0]), sp.eye(a.shape[0]), 1
    while True:
        term = (term * a).applyfunc(sp.expand)
        if term.is_zero_matrix:
            return out
        out += term * sp.Rational((-1) ** (k + 1), k)
        k += 1


def commutators(tau, exponents):
    """exponents: F = exp(A_1) exp(A_2) ..., each A_k a 25x25 matrix."""
    Finv = sp.eye((D + 1) ** 2)
    for a in exponents:
        Finv = expm(-a) * Finv
    out = {}
    for a in range(D):
        for b in range(a + 1, D):
            def star(p, q):
                v = sp.zeros((D + 1) ** 2, 1)
                v[(p + 1) * (D + 1) + (q + 1), 0] = 1
                return (Finv * v).applyfunc(sp.expand)

            w = star(a, b) - star(b, a)
            lin = [0] * D
            const = w[0, 0]
            C = [[w[(j + 1) * (D + 1) + (k + 1), 0] for k in range(D)] for j in range(D)]
            for j in range(D):
                lin[j] += w[j + 1, 0] + w[(j + 1) * (D + 1), 0]
            for j in range(D):
                for k in range(D):
                    if j == k:
                        assert sp.expand(C[j][k]) == 0, "quadratic remainder"
                    if j < k:
                        assert sp.expand(C[j][k] + C[k][j]) == 0, "quadratic remainder"
                        # C_jk (x^j x^k - x^k x^j) = C_jk i h (tau^j x^k - tau^k x^j)
                        lin[k] += C[j][k] * I * h * tau[j]
                        lin[j] -= C[j][k] * I * h * tau[k]
            assert sp.expand(const) == 0
            out[(a, b)] = [sp.expand(c) for c in lin]
    return out


def show(name, labels, res):
    print(name)
    for (a, b), lin in res.items():
        terms = [f"({c})*x{labels[k]}" for k, c in enumerate(lin) if c != 0]
        if terms:
            print(f"  [x{labels[a]},x{labels[b]}] = " + " + ".join(terms))


def main():
    null = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    P, M = gens(null)
    tau = [1, 0, 0, 0]
    klog = log_pi(tau) / h
    lab = ["+", "-", "1", "2"]
    for name, m in (("L1", M(0, 2)), ("L2", M(2, 3))):
        a = I * xi * (kron(m, klog) - kron(klog, m))
        show(name, lab, commutators(tau, [a]))

    mm = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    P, M = gens(mm)
    tau = [0, 1, 0, 0]
    klog = log_pi(tau) / h
    lab = ["0", "1", "2", "3"]
    for name, right in (("S1", M(2, 3)), ("S2", M(2, 3) + M(0, 3)), ("S3", M(0, 3))):
        show(name, lab, commutators(tau, [I * xi * kron(klog, right)]))

    lor = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    P, M = gens(lor)
    tau = [1, 0, 0, 0]
    klog = log_pi(tau) / h
    lnpi = log_pi(tau)
    pinv = pi_power(tau, -1)
    show("T1", lab, commutators(tau, [I * xi * (kron(klog, M(1, 2)) - kron(M(1, 2), klog))]))
    for s in (1, -1):
        Pt = (P(1) + I * s * P(2)) * pinv
        Mt = M(2, 3) + I * s * M(3, 1)
        M3 = M(1, 2)
        t3 = [xi * kron(Pt * pi_power(tau, sp.Rational(1, 2)), Mt), -sp.Rational(s, 2) * kron(lnpi, M3)]
        show("T3" + ("-" if s < 0 else ""), lab, commutators(tau, t3))
        u = sp.eye(D + 1) + xi * Pt
        t4 = [-s * xi * kron(Mt * u.inv() * pinv, P(3) * pinv), -s * kron(log1p(xi * Pt), M3), -s * kron(lnpi, M3)]
        show("T4" + ("-" if s < 0 else ""), lab, commutators(tau, t4))


if __name__ == "__main__":
    main()
