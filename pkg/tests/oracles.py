"""Independent reference computations for frozen test values.

Nothing here imports bqg: the algebras are rebuilt from their defining
relations and coproducts (never from Galois maps) and linear systems are
solved with a plain Fraction Gauss-Jordan routine.
"""

from fractions import Fraction
from itertools import permutations, product


def rref(rows, ncols):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows, ncols):
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        out.append(v)
    return out


def solve(rows, rhs, ncols):
    """The unique solution of rows * x = rhs (raises if not unique)."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv or len(piv) != ncols:
        raise ValueError("system has no unique solution")
    return [row[ncols] for row in red]


# -- Sweedler's algebra from g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x(x)1 + g(x)x ----------

SW = [(0, 0), (1, 0), (0, 1), (1, 1)]          # g^a x^b
SW_NAMES = {(0, 0): "1", (1, 0): "g", (0, 1): "x", (1, 1): "gx"}


def sw_mul(p, q):
    """Dict {monomial: coeff} for monomial products."""
    (a, b), (c, d) = p, q
    if b + d > 1:
        return {}
    return {((a + c) % 2, b + d): (-1) ** (b * c)}


def sw_mul_vec(u, v):
    out = {}
    for p, x in u.items():
        for q, y in v.items():
            for r, z in sw_mul(p, q).items():
                out[r] = out.get(r, 0) + x * y * z
    return {k: c for k, c in out.items() if c}


def sw_tensor_mul(U, V):
    out = {}
    for (p1, p2), x in U.items():
        for (q1, q2), y in V.items():
            for r1, z1 in sw_mul(p1, q1).items():
                for r2, z2 in sw_mul(p2, q2).items():
                    key = (r1, r2)
                    out[key] = out.get(key, 0) + x * y * z1 * z2
    return {k: c for k, c in out.items() if c}


def sw_delta(m):
    a, b = m
    v = {((0, 0), (0, 0)): 1}
    for _ in range(a):
        v = sw_tensor_mul(v, {((1, 0), (1, 0)): 1})
    for _ in range(b):
        v = sw_tensor_mul(v, {((0, 1), (0, 0)): 1, ((1, 0), (0, 1)): 1})
    return v


def sweedler_oracle():
    """Counit, antipode, Haar functionals, sigma, nu and delta by linear solves."""
    n = len(SW)
    idx = {m: i for i, m in enumerate(SW)}
    # counit: (eps (x) id) Delta(m) = m, unknowns eps_i
    rows, rhs = [], []
    for m in SW:
        d = sw_delta(m)
        for out in SW:
            rows.append([sum(c for (p, q), c in d.items() if p == e and q == out) for e in SW])
            rhs.append(1 if out == m else 0)
    eps = solve(rows, rhs, n)
    # antipode: mu (S (x) id) Delta(m) = eps(m) 1, unknowns S[i][j] (coefficient of SW[j] in S(SW[i]))
    rows, rhs = [], []
    for m in SW:
        d = sw_delta(m)
        for out in SW:
            row = [0] * (n * n)
            for (p, q), c in d.items():
                for j, s in enumerate(SW):
                    for r, z in sw_mul(s, q).items():
                        if r == out:
                            row[idx[p] * n + j] += c * z
            rows.append(row)
            rhs.append(eps[idx[m]] if out == (0, 0) else 0)
    flat = solve(rows, rhs, n * n)
    S = [[flat[i * n + j] for j in range(n)] for i in range(n)]

    def apply_S(v):
        out = {}
        for m, c in v.items():
            for j, s in enumerate(SW):
                if S[idx[m]][j]:
                    out[s] = out.get(s, 0) + c * S[idx[m]][j]
        return {k: c for k, c in out.items() if c}

    # left invariance (id (x) phi) Delta(m) = phi(m) 1
    def invariant(left):
        rows = []
        for m in SW:
            d = sw_delta(m)
            for out in SW:
                row = [0] * n
                for (p, q), c in d.items():
                    keep, integrate = (p, q) if left else (q, p)
                    if keep == out:
                        row[idx[integrate]] += c
                if out == (0, 0):
                    row[idx[m]] -= 1
                rows.append(row)
        return nullspace(rows, n)
    phis, psis = invariant(True), invariant(False)
    phi = phis[0]
    phi = [x / phi[idx[(1, 1)]] for x in phi]           # phi(gx) = 1
    # psi = phi o S
    psi = [sum(phi[idx[k]] * c for k, c in apply_S({m: 1}).items()) for m in SW]

    def phi_of(v, form=phi):
        return sum(form[idx[k]] * c for k, c in v.items())

    # sigma: phi(a b) = phi(b sigma(a)); unknowns sigma[i][j]
    def solve_twist(pairing_lhs, pairing_rhs_basis):
        sol = []
        for a in SW:
            rows, rhs = [], []
            for b in SW:
                rows.append([pairing_rhs_basis(b, s) for s in SW])
                rhs.append(pairing_lhs(a, b))
            sol.append(solve(rows, rhs, n))
        return sol
    sigma = solve_twist(lambda a, b: phi_of(sw_mul(a, b)), lambda b, s: phi_of(sw_mul(b, s)))
    # nu: phi(h nu(f)) = psi(h f)
    nu = solve_twist(lambda f, h: phi_of(sw_mul(h, f), psi), lambda h, s: phi_of(sw_mul(h, s)))
    # delta: (phi (x) id) Delta(gx) = phi(gx) delta
    delta = {}
    for (p, q), c in sw_delta((1, 1)).items():
        if phi[idx[p]]:
            delta[q] = delta.get(q, 0) + c * phi[idx[p]]
    name = SW_NAMES

    def as_map(mat):
        return {name[SW[i]]: {name[SW[j]]: mat[i][j] for j in range(n) if mat[i][j]} for i in range(n)}
    return {
        "eps": {name[m]: eps[i] for i, m in enumerate(SW)},
        "S": as_map(S),
        "phi": {name[m]: phi[i] for i, m in enumerate(SW)},
        "psi": {name[m]: psi[i] for i, m in enumerate(SW)},
        "phi_dim": len(phis),
        "psi_dim": len(psis),
        "sigma": as_map(sigma),
        "nu": as_map(nu),
        "delta": {name[k]: c for k, c in delta.items() if c},
    }


# -- finite groups as explicit tables ---------------------------------------------------------

def cyclic(n):
    elems = list(range(n))
    return elems, (lambda a, b: (a + b) % n), (lambda a: (-a) % n), 0


def symmetric3():
    elems = sorted(permutations(range(3)))
    return (elems, (lambda a, b: tuple(a[b[i]] for i in range(3))),
            (lambda a: tuple(sorted(range(3), key=lambda i: a[i]))), (0, 1, 2))


def group_dual_structure(elems, mul, inv, e):
    """Dual of F(G) in F_l coordinates: mu^(c_s (x) c_t) = c_(st) and the counit 1."""
    return {(s, t): mul(s, t) for s, t in product(elems, repeat=2)}


def dft_pairs(n):
    """Characters of Z_n over Q(zeta_n): chi_k(m) = zeta^(km), encoded by exponents mod n."""
    return {(k, m): (k * m) % n for k in range(n) for m in range(n)}
