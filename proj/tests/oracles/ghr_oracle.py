"""Independent high-precision oracle for frozen test values.

Quaternions are 4-tuples of mpmath numbers; products use the unit
multiplication table directly. Derivatives come from central differences
at 40 significant digits, far below double precision noise.

    python3 tests/oracles/ghr_oracle.py
"""
import mpmath as mp

mp.mp.dps = 40

# e_m * e_n = sign * e_index for basis (1, i, j, k)
TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def q(*xs):
    return tuple(mp.mpf(x) for x in xs)


def mul(p, r):
    out = [mp.mpf(0)] * 4
    for m in range(4):
        for n in range(4):
            sign, idx = TABLE[(m, n)]
            out[idx] += sign * p[m] * r[n]
    return tuple(out)


def add(p, r):
    return tuple(x + y for x, y in zip(p, r))


def sub(p, r):
    return tuple(x - y for x, y in zip(p, r))


def scale(s, p):
    return tuple(s * x for x in p)


def conj(p):
    return (p[0], -p[1], -p[2], -p[3])


def norm2(p):
    return sum(x * x for x in p)


def inv(p):
    return scale(1 / norm2(p), conj(p))


def rot(p, mu):
    return mul(mul(mu, p), inv(mu))


UNITS = [q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1)]


def partials(f, x, h=mp.mpf("1e-15")):
    return [scale(1 / (2 * h), sub(f(add(x, scale(h, e))), f(sub(x, scale(h, e)))))
            for e in UNITS]


def left_ghr(f, x, mu):
    d = partials(f, x)
    rotated = [rot(u, mu) for u in UNITS[1:]]
    dmu = d[0]
    dmuc = d[0]
    for k in range(3):
        term = mul(d[k + 1], rotated[k])
        dmu = sub(dmu, term)
        dmuc = add(dmuc, term)
    return scale(mp.mpf("0.25"), dmu), scale(mp.mpf("0.25"), dmuc)


def vec(p):
    return (mp.mpf(0), p[1], p[2], p[3])


def exp_q(p):
    v = mp.sqrt(norm2(vec(p)))
    s = mp.sin(v) / v if v != 0 else mp.mpf(1)
    return scale(mp.e ** p[0], add((mp.cos(v), 0, 0, 0), scale(s, vec(p))))


def show(label, p):
    print(f"{label}: " + ", ".join(mp.nstr(x, 17) for x in p))


X = q(0.7, -1.1, 0.4, 1.3)
MU = q(0.5, -1, 2, 1)
W = q(0.3, 1.2, -0.5, 0.8)
NU = q(-0.6, 0.4, 0.9, -0.2)
LAM = q(0.25, -0.5, 0.75, 0.1)

FAMILIES = {
    "inverse": inv,
    "modulus": lambda p: (mp.sqrt(norm2(p)), 0, 0, 0),
    "unit_vector": lambda p: scale(1 / mp.sqrt(norm2(p)), p),
    "vector_modulus": lambda p: (mp.sqrt(norm2(vec(p))), 0, 0, 0),
    "unit_pure_axis": lambda p: scale(1 / mp.sqrt(norm2(vec(p))), vec(p)),
    "arctan_arg": lambda p: (mp.atan2(mp.sqrt(norm2(vec(p))), p[0]), 0, 0, 0),
    "power3": lambda p: mul(mul(p, p), p),
    "exponential": exp_q,
    "linear_inverse": lambda p: inv(add(mul(mul(W, p), NU), LAM)),
    "conj_linear_modulus": lambda p: (mp.sqrt(norm2(add(mul(mul(W, conj(p)), NU), LAM))), 0, 0, 0),
}

if __name__ == "__main__":
    show("x", X)
    show("mu", MU)
    for name, f in FAMILIES.items():
        dmu, dmuc = left_ghr(f, X, MU)
        show(f"{name} value", f(X))
        show(f"{name} d_mu*mu", mul(dmu, MU))
        show(f"{name} d_mu_conj*mu", mul(dmuc, MU))
    show("square 1+2i+3j+4k", mul(q(1, 2, 3, 4), q(1, 2, 3, 4)))
    show("power3 1+i", mul(mul(q(1, 1, 0, 0), q(1, 1, 0, 0)), q(1, 1, 0, 0)))
    show("exp(1+i+j+k)", exp_q(q(1, 1, 1, 1)))
    m = q(1, 2, 3, 4)
    for k, u in enumerate(UNITS[1:]):
        show(f"basis {'ijk'[k]}^mu for mu=1+2i+3j+4k", rot(u, m))
    show("rotate(0.3-0.2i+0.5j+0.1k, 1+2i+3j+4k)", rot(q(0.3, -0.2, 0.5, 0.1), m))
