"""Catalog of concrete quantum groups and the group models behind them.

Group based instances use closed-form rules for every structure map,
including the Galois inverses, so they work on infinite groups with
word-length windows.  Sweedler's algebra and the Taft algebras are built
from their multiplication and comultiplication; their Galois inverses come
from exact elimination and their Haar functional from the invariance
equations.
"""

import json
import re
from fractions import Fraction
from itertools import product

from .freemod import (BasisModel, FiniteBasis, Functional, Operator, Vec, exact_inverse,
                      matrix_operator)
from .qgcore import QuantumGroup, Report, unit_multiplier, verify_laws
from .scalars import FieldSpec, Scalar, root_of_unity, to_literal


# -- group models -----------------------------------------------------------------

class GroupModel(BasisModel):
    """A group with exact arithmetic and a word-length function."""

    name = "G"
    identity = None

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def normal_form(self, a):
        return a

    def word_length(self, a):
        return 0

    def enumerate(self, radius):
        raise NotImplementedError

    # BasisModel interface
    def window(self, radius=0):
        return self.enumerate(radius)

    def length(self, label):
        return self.word_length(label)

    def elements(self):
        if not self.finite:
            raise ValueError(f"{self.name} is infinite")
        return self.enumerate(0)

    def __repr__(self):
        return self.name


class Cyclic(GroupModel):
    def __init__(self, n):
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        self.n = n
        self.name = f"Z{n}"
        self.identity = 0

    def multiply(self, a, b):
        return (a + b) % self.n

    def invert(self, a):
        return (-a) % self.n

    def normal_form(self, a):
        return a % self.n

    def word_length(self, a):
        return min(a, self.n - a)

    def enumerate(self, radius=0):
        return list(range(self.n))


class Product(GroupModel):
    def __init__(self, *factors):
        self.factors = factors
        self.name = "x".join(f.name for f in factors)
        self.identity = tuple(f.identity for f in factors)
        self.finite = all(f.finite for f in factors)

    def multiply(self, a, b):
        return tuple(f.multiply(x, y) for f, x, y in zip(self.factors, a, b))

    def invert(self, a):
        return tuple(f.invert(x) for f, x in zip(self.factors, a))

    def normal_form(self, a):
        return tuple(f.normal_form(x) for f, x in zip(self.factors, a))

    def word_length(self, a):
        return sum(f.word_length(x) for f, x in zip(self.factors, a))

    def enumerate(self, radius=0):
        out = [self.identity]
        seen = {self.identity}
        for combo in product(*(f.enumerate(radius) for f in self.factors)):
            if combo not in seen and (self.finite or self.word_length(combo) <= radius):
                seen.add(combo)
                out.append(combo)
        if not self.finite:
            out.sort(key=lambda g: (self.word_length(g), g))
        return out


class Symmetric(GroupModel):
    """S_n as one-line permutations; length is the number of inversions."""

    def __init__(self, n):
        if not 1 <= n <= 4:
            raise ValueError("symmetric groups are provided for n <= 4")
        self.n = n
        self.name = f"S{n}"
        self.identity = tuple(range(n))
        from itertools import permutations
        perms = sorted(permutations(range(n)), key=lambda p: (self.word_length(p), p))
        self._elements = perms

    def multiply(self, a, b):
        # (ab)(i) = a(b(i))
        return tuple(a[b[i]] for i in range(self.n))

    def invert(self, a):
        inv = [0] * self.n
        for i, x in enumerate(a):
            inv[x] = i
        return tuple(inv)

    def word_length(self, a):
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if a[i] > a[j])

    def enumerate(self, radius=0):
        return list(self._elements)


class Integers(GroupModel):
    finite = False
    name = "Z"
    identity = 0

    def multiply(self, a, b):
        return a + b

    def invert(self, a):
        return -a

    def word_length(self, a):
        return abs(a)

    def enumerate(self, radius):
        out = [0]
        for k in range(1, radius + 1):
            out += [k, -k]
        return out


class ZLattice(GroupModel):
    """Z^k with the l1 word length."""

    finite = False

    def __init__(self, k):
        self.k = k
        self.name = f"Z^{k}"
        self.identity = (0,) * k

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        return tuple(-x for x in a)

    def word_length(self, a):
        return sum(abs(x) for x in a)

    def enumerate(self, radius):
        rng = range(-radius, radius + 1)
        pts = [p for p in product(rng, repeat=self.k) if sum(map(abs, p)) <= radius]
        return sorted(pts, key=lambda p: (self.word_length(p), p))


class FreeGroup(GroupModel):
    """Reduced words over a, b, ...; capitals are inverses and "e" is the identity."""

    finite = False
    identity = "e"

    def __init__(self, k):
        if not 1 <= k <= 26:
            raise ValueError("free group rank must be between 1 and 26")
        self.k = k
        self.name = f"F{k}"
        self.letters = [chr(ord("a") + i) for i in range(k)]
        self.letters += [c.upper() for c in self.letters]

    @staticmethod
    def _word(a):
        return "" if a == "e" else a

    def _wrap(self, w):
        return w or "e"

    def normal_form(self, a):
        out = []
        for c in self._word(a):
            if out and out[-1] == c.swapcase():
                out.pop()
            else:
                out.append(c)
        return self._wrap("".join(out))

    def multiply(self, a, b):
        return self.normal_form(self._word(a) + self._word(b))

    def invert(self, a):
        return self._wrap("".join(c.swapcase() for c in reversed(self._word(a))))

    def word_length(self, a):
        return len(self._word(a))

    def enumerate(self, radius):
        out = ["e"]
        layer = [""]
        for _ in range(radius):
            nxt = []
            for w in layer:
                for c in self.letters:
                    if w and w[-1] == c.swapcase():
                        continue
                    nxt.append(w + c)
            out += nxt
            layer = nxt
        return out


# -- group based quantum groups -------------------------------------------------------

def _pair(a, b):
    return Vec.basis(a, b)


def function_algebra(G, name=None):
    """C_c(G): pointwise product, Delta(f)(r, s) = f(rs), phi = sum."""
    m, inv = G.multiply, G.invert
    e = G.identity
    mu = Operator(2, 1, lambda k: Vec.basis(k[0]) if k[0] == k[1] else Vec.zero(1), "mu")
    galois = {
        "gamma_r": Operator(2, 2, lambda k: _pair(m(k[0], inv(k[1])), k[1]), "gamma_r"),
        "gamma_l": Operator(2, 2, lambda k: _pair(k[1], m(inv(k[1]), k[0])), "gamma_l"),
        "rho_l": Operator(2, 2, lambda k: _pair(k[0], m(inv(k[0]), k[1])), "rho_l"),
        "rho_r": Operator(2, 2, lambda k: _pair(m(k[1], inv(k[0])), k[0]), "rho_r"),
    }
    inverses = {
        "gamma_r": Operator(2, 2, lambda k: _pair(m(k[0], k[1]), k[1]), "gamma_r^-1"),
        "gamma_l": Operator(2, 2, lambda k: _pair(m(k[0], k[1]), k[0]), "gamma_l^-1"),
        "rho_l": Operator(2, 2, lambda k: _pair(k[0], m(k[0], k[1])), "rho_l^-1"),
        "rho_r": Operator(2, 2, lambda k: _pair(k[1], m(k[0], k[1])), "rho_r^-1"),
    }
    phi = Functional(lambda k: 1, "phi")
    unit = None
    if G.finite:
        unit = Vec([((s,), 1) for s in G.elements()])

    def local_unit(radius):
        return Vec([((s,), 1) for s in G.enumerate(radius)])
    ident = Operator(1, 1, lambda k: Vec.basis(k[0]), "id")
    S = Operator(1, 1, lambda k: Vec.basis(inv(k[0])), "S")
    cross = {
        "eps": Functional(lambda k: 1 if k[0] == e else 0, "eps"),
        "S": S, "S_inv": S,
        "psi": phi, "nu": ident, "sigma": ident, "rho": ident,
        "nu_inv": ident, "sigma_inv": ident, "delta": unit_multiplier(),
    }
    data = QuantumGroup(name or f"fun:{G.name}", FieldSpec(1), G, mu, galois, phi,
                        inverses=inverses, unit=unit, crosscheck=cross, local_unit=local_unit)
    data.group = G
    data.kind = "fun"
    return data


def group_algebra(G, name=None):
    """CG: convolution u_s u_t = u_st, Delta(u_s) = u_s (x) u_s, phi(u_s) = [s = e]."""
    m, inv = G.multiply, G.invert
    e = G.identity
    mu = Operator(2, 1, lambda k: Vec.basis(m(k[0], k[1])), "mu")
    galois = {
        "gamma_r": Operator(2, 2, lambda k: _pair(k[0], m(k[0], k[1])), "gamma_r"),
        "gamma_l": Operator(2, 2, lambda k: _pair(m(k[0], k[1]), k[0]), "gamma_l"),
        "rho_l": Operator(2, 2, lambda k: _pair(m(k[0], k[1]), k[1]), "rho_l"),
        "rho_r": Operator(2, 2, lambda k: _pair(k[1], m(k[0], k[1])), "rho_r"),
    }
    inverses = {
        "gamma_r": Operator(2, 2, lambda k: _pair(k[0], m(inv(k[0]), k[1])), "gamma_r^-1"),
        "gamma_l": Operator(2, 2, lambda k: _pair(k[1], m(inv(k[1]), k[0])), "gamma_l^-1"),
        "rho_l": Operator(2, 2, lambda k: _pair(m(k[0], inv(k[1])), k[1]), "rho_l^-1"),
        "rho_r": Operator(2, 2, lambda k: _pair(m(k[1], inv(k[0])), k[0]), "rho_r^-1"),
    }
    phi = Functional(lambda k: 1 if k[0] == e else 0, "phi")
    ident = Operator(1, 1, lambda k: Vec.basis(k[0]), "id")
    S = Operator(1, 1, lambda k: Vec.basis(inv(k[0])), "S")
    cross = {
        "eps": Functional(lambda k: 1, "eps"),
        "S": S, "S_inv": S,
        "psi": phi, "nu": ident, "sigma": ident, "rho": ident,
        "nu_inv": ident, "sigma_inv": ident, "delta": unit_multiplier(),
    }
    data = QuantumGroup(name or f"alg:{G.name}", FieldSpec(1), G, mu, galois, phi,
                        inverses=inverses, unit=Vec.basis(e), crosscheck=cross)
    data.group = G
    data.kind = "alg"
    return data


def trivial():
    return function_algebra(Cyclic(1), name="trivial")


# -- Hopf algebras built from mu and Delta ------------------------------------------------

def galois_from_delta(mu, delta):
    """The four Galois maps of a unital Hopf algebra from mu and Delta."""
    def times(x, y):
        # product in H (x) H of two rank 2 vectors
        d = {}
        for (a, b), c in x.items():
            for (p, q), c2 in y.items():
                for (u,), c3 in mu.image((a, p)).items():
                    for (v,), c4 in mu.image((b, q)).items():
                        d[(u, v)] = d.get((u, v), 0) + c * c2 * c3 * c4
        return Vec(d, 2)

    unit = delta.unit_label
    return {
        "gamma_l": Operator(2, 2, lambda k: times(delta.image((k[0],)), _pair(k[1], unit)), "gamma_l"),
        "gamma_r": Operator(2, 2, lambda k: times(delta.image((k[0],)), _pair(unit, k[1])), "gamma_r"),
        "rho_l": Operator(2, 2, lambda k: times(_pair(k[0], unit), delta.image((k[1],))), "rho_l"),
        "rho_r": Operator(2, 2, lambda k: times(_pair(unit, k[0]), delta.image((k[1],))), "rho_r"),
    }


def _materialize(op, labels, n_in):
    table = {k: op.image(k) for k in product(labels, repeat=n_in)}
    return matrix_operator(table, n_in, op.n_out, op.name)


def haar_from_invariance(labels, gamma_l):
    """The left invariant functional, solved from (id (x) w)gamma_l = w (x) id.

    It is scaled to take the value 1 on the last basis label where it is nonzero.
    """
    from .modular import left_invariant_functionals
    sols = left_invariant_functionals(labels, gamma_l)
    if len(sols) != 1:
        raise ValueError(f"expected a one dimensional space of invariant functionals, got {len(sols)}")
    w = sols[0]
    c = next(w[b] for b in reversed(labels) if w.get(b, 0))
    values = {b: x * exact_inverse(c) for b, x in w.items()}
    return Functional(lambda k: values.get(k[0], 0), "phi")


def sweedler():
    """Sweedler's four dimensional Hopf algebra with explicit tables."""
    labels = ["1", "g", "x", "gx"]
    prod = {
        ("g", "g"): [("1", 1)], ("g", "x"): [("gx", 1)], ("g", "gx"): [("x", 1)],
        ("x", "g"): [("gx", -1)], ("gx", "g"): [("x", -1)],
    }
    mu_table = {}
    for a, b in product(labels, repeat=2):
        if a == "1":
            mu_table[(a, b)] = Vec.basis(b)
        elif b == "1":
            mu_table[(a, b)] = Vec.basis(a)
        else:
            mu_table[(a, b)] = Vec([((k,), c) for k, c in prod.get((a, b), [])])
    mu = matrix_operator(mu_table, 2, 1, "mu")
    delta_table = {
        ("1",): Vec.basis("1", "1"),
        ("g",): Vec.basis("g", "g"),
        ("x",): Vec.basis("x", "1") + Vec.basis("g", "x"),
        ("gx",): Vec.basis("gx", "g") + Vec.basis("1", "gx"),
    }
    delta = matrix_operator(delta_table, 1, 2, "Delta")
    delta.unit_label = "1"
    galois = {name: _materialize(op, labels, 2) for name, op in galois_from_delta(mu, delta).items()}
    phi = Functional(lambda k: 1 if k[0] == "gx" else 0, "phi")
    S_table = {("1",): Vec.basis("1"), ("g",): Vec.basis("g"),
               ("x",): -Vec.basis("gx"), ("gx",): Vec.basis("x")}
    S_inv_table = {("1",): Vec.basis("1"), ("g",): Vec.basis("g"),
                   ("x",): Vec.basis("gx"), ("gx",): -Vec.basis("x")}
    g = Vec.basis("g")
    from .qgcore import Multiplier
    cross = {
        "eps": Functional(lambda k: 1 if k[0] in ("1", "g") else 0, "eps"),
        "S": matrix_operator(S_table, 1, 1, "S"),
        "S_inv": matrix_operator(S_inv_table, 1, 1, "S^-1"),
        # psi = phi o S, and phi(S(x)) = phi(-gx) = -1
        "psi": Functional(lambda k: -1 if k[0] == "x" else 0, "psi"),
        "delta": Multiplier(Operator(1, 1, lambda k: mu(g.tensor(Vec.basis(*k))), "g*"),
                            Operator(1, 1, lambda k: mu(Vec.basis(*k).tensor(g)), "*g"), "g"),
        "delta_element": g,
    }
    data = QuantumGroup("sweedler", FieldSpec(1), FiniteBasis(labels), mu, galois, phi,
                        unit=Vec.basis("1"), crosscheck=cross)
    data.delta_map = delta
    data.kind = "hopf"
    return data


def taft_label(i, j):
    gp = "" if i == 0 else ("g" if i == 1 else f"g{i}")
    xp = "" if j == 0 else ("x" if j == 1 else f"x{j}")
    return (gp + xp) or "1"


_TAFT_RE = re.compile(r"^(?:g(\d*))?(?:x(\d*))?$")


def parse_taft_label(label):
    if label == "1":
        return 0, 0
    m = _TAFT_RE.match(label)
    if not m or not label:
        raise ValueError(f"bad Taft basis label {label!r}")
    gi, xj = m.groups()
    i = 0 if gi is None else (int(gi) if gi else 1)
    j = 0 if xj is None else (int(xj) if xj else 1)
    return i, j


def taft(n, conductor=None):
    """The Taft algebra: g^n = 1, x^n = 0, xg = zeta gx, Delta x = x(x)1 + g(x)x."""
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    conductor = n if conductor is None else conductor
    if conductor % n:
        raise ValueError(f"conductor {conductor} is not divisible by {n}")
    field = FieldSpec(conductor)
    zeta = root_of_unity(field, conductor // n)
    if field.degree == 1:
        zeta = zeta.coeffs[0]
    zpow = [zeta ** k if k else 1 for k in range(n)]
    if field.degree == 1:
        zpow = [Fraction(1)] + [Fraction(z) for z in zpow[1:]]
    labels = [taft_label(i, j) for j in range(n) for i in range(n)]
    idx = {lab: parse_taft_label(lab) for lab in labels}

    def mul_rule(k):
        a, b = idx[k[0]]
        c, d = idx[k[1]]
        if b + d >= n:
            return Vec.zero(1)
        return Vec.basis(taft_label((a + c) % n, b + d), coeff=zpow[(b * c) % n])
    mu = Operator(2, 1, mul_rule, "mu")

    def tprod(x, y):
        d = {}
        for (a, b), c in x.items():
            for (p, q), c2 in y.items():
                for (u,), c3 in mu.image((a, p)).items():
                    for (v,), c4 in mu.image((b, q)).items():
                        d[(u, v)] = d.get((u, v), 0) + c * c2 * c3 * c4
        return Vec(d, 2)

    dg = Vec.basis("g", "g")
    dx = Vec.basis("x", "1") + Vec.basis("g", "x")

    def delta_rule(k):
        i, j = idx[k[0]]
        v = Vec.basis("1", "1")
        for _ in range(i):
            v = tprod(v, dg)
        for _ in range(j):
            v = tprod(v, dx)
        return v
    delta = Operator(1, 2, delta_rule, "Delta")
    delta.unit_label = "1"
    galois = {name: _materialize(op, labels, 2) for name, op in galois_from_delta(mu, delta).items()}
    phi = haar_from_invariance(labels, galois["gamma_l"])

    # closed forms from S(g) = g^-1, S(x) = -g^-1 x, extended anti-multiplicatively
    g_inv = Vec.basis(taft_label(n - 1, 0))
    s_gen = {"g": g_inv, "x": -mu(g_inv.tensor(Vec.basis("x")))}
    s_inv_gen = {"g": g_inv, "x": -mu(Vec.basis("x").tensor(g_inv))}

    def anti(gens):
        def rule(k):
            i, j = idx[k[0]]
            word = ["g"] * i + ["x"] * j
            v = Vec.basis("1")
            for letter in word:
                v = mu(gens[letter].tensor(v))
            return v
        return rule
    cross = {
        "eps": Functional(lambda k: 1 if idx[k[0]][1] == 0 else 0, "eps"),
        "S": Operator(1, 1, anti(s_gen), "S"),
        "S_inv": Operator(1, 1, anti(s_inv_gen), "S^-1"),
    }
    data = QuantumGroup(f"taft:{n}" if conductor == n else f"taft:{n}:{conductor}", field,
                        FiniteBasis(labels), mu, galois, phi, unit=Vec.basis("1"), crosscheck=cross)
    data.delta_map = delta
    data.kind = "hopf"
    return data


# -- name resolution ------------------------------------------------------------------------

def parse_group(text):
    text = text.strip()
    if "x" in text:
        return Product(*(parse_group(t) for t in text.split("x")))
    m = re.fullmatch(r"Z(\d+)", text)
    if m:
        return Cyclic(int(m.group(1)))
    if text == "Z":
        return Integers()
    m = re.fullmatch(r"Z\^(\d+)", text)
    if m:
        k = int(m.group(1))
        return Integers() if k == 1 else ZLattice(k)
    m = re.fullmatch(r"S(\d+)", text)
    if m:
        return Symmetric(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        return FreeGroup(int(m.group(1)))
    raise ValueError(f"unknown group {text!r}")


CATALOG = [
    "fun:Z2", "fun:Z3", "fun:Z4", "fun:Z2xZ2", "fun:S3", "fun:Z", "fun:F2",
    "alg:Z2", "alg:Z3", "alg:Z4", "alg:Z2xZ2", "alg:S3", "alg:Z", "alg:F2",
    "sweedler", "taft:3",
]

FINITE_CATALOG = [n for n in CATALOG if n not in ("fun:Z", "fun:F2", "alg:Z", "alg:F2")]

_cache = {}


def resolve(name, cache=True):
    """Instance from a name like fun:S3, alg:F2, sweedler, taft:3 or taft:3:6."""
    if cache and name in _cache:
        return _cache[name]
    if name == "sweedler":
        data = sweedler()
    elif name == "trivial":
        data = trivial()
    elif name.startswith("taft:"):
        parts = name.split(":")[1:]
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"bad Taft parameters in {name!r}") from None
        if len(nums) not in (1, 2):
            raise ValueError(f"bad Taft parameters in {name!r}")
        data = taft(*nums)
    elif name.startswith("fun:"):
        data = function_algebra(parse_group(name[4:]), name=name)
    elif name.startswith("alg:"):
        data = group_algebra(parse_group(name[4:]), name=name)
    else:
        raise ValueError(f"unknown instance {name!r}")
    if cache:
        _cache[name] = data
    return data


def catalog():
    return list(CATALOG)


# -- instance files ---------------------------------------------------------------------------

class InstanceFileError(ValueError):
    pass


class InstanceRejected(ValueError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def _literal(field, x, where):
    try:
        if isinstance(x, bool):
            raise ValueError
        if isinstance(x, int):
            return Fraction(x) if field.degree == 1 else field.element([x])
        return field.from_literal(str(x))
    except (ValueError, TypeError):
        raise InstanceFileError(f"{where}: bad scalar literal {x!r}") from None


def _index(i, n, where):
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
        raise InstanceFileError(f"{where}: basis index {i!r} out of range 0..{n - 1}")
    return i


def _parse_sparse(entries, field, labels, n_in, n_out, where):
    if not isinstance(entries, list):
        raise InstanceFileError(f"{where}: expected a list")
    n = len(labels)
    table = {}
    for r, entry in enumerate(entries):
        w = f"{where}[{r}]"
        if not isinstance(entry, list) or len(entry) != n_in + 1:
            raise InstanceFileError(f"{w}: expected [{', '.join(['i'] * n_in)}, terms]")
        key = tuple(labels[_index(i, n, w)] for i in entry[:n_in])
        terms = entry[n_in]
        if not isinstance(terms, list):
            raise InstanceFileError(f"{w}: terms must be a list")
        d = {}
        for t, term in enumerate(terms):
            if not isinstance(term, list) or len(term) != n_out + 1:
                raise InstanceFileError(f"{w}.terms[{t}]: expected {n_out} indices and a scalar")
            out = tuple(labels[_index(i, n, f"{w}.terms[{t}]")] for i in term[:n_out])
            d[out] = d.get(out, 0) + _literal(field, term[n_out], f"{w}.terms[{t}]")
        if key in table:
            raise InstanceFileError(f"{w}: duplicate entry for {key}")
        table[key] = Vec(d, n_out)
    return matrix_operator(table, n_in, n_out, where)


def parse_instance(doc, name="custom"):
    """Bundle from an already decoded instance document (no law checks)."""
    if not isinstance(doc, dict):
        raise InstanceFileError("top level must be an object")
    for key in ("field", "basis", "mu", "galois", "phi"):
        if key not in doc:
            raise InstanceFileError(f"missing field {key!r}")
    fld = doc["field"]
    if not isinstance(fld, dict) or not isinstance(fld.get("conductor"), int) or fld["conductor"] < 1:
        raise InstanceFileError("field: expected {\"conductor\": positive integer}")
    field = FieldSpec(fld["conductor"])
    labels = doc["basis"]
    if not isinstance(labels, list) or not labels:
        raise InstanceFileError("basis: an essential algebra is nonzero, so the basis must be nonempty")
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise InstanceFileError("basis: labels must be distinct")
    mu = _parse_sparse(doc["mu"], field, labels, 2, 1, "mu")
    mu.name = "mu"
    gal = doc["galois"]
    if not isinstance(gal, dict):
        raise InstanceFileError("galois: expected an object")
    galois, inverses = {}, {}
    for g in ("gamma_l", "gamma_r", "rho_l", "rho_r"):
        if g not in gal:
            raise InstanceFileError(f"galois: missing {g!r}")
        galois[g] = _parse_sparse(gal[g], field, labels, 2, 2, f"galois.{g}")
        galois[g].name = g
        if g + "_inv" in gal:
            inverses[g] = _parse_sparse(gal[g + "_inv"], field, labels, 2, 2, f"galois.{g}_inv")
    extra = set(gal) - {g + s for g in galois for s in ("", "_inv")}
    if extra:
        raise InstanceFileError(f"galois: unknown keys {sorted(extra)}")
    phi_vals = {}
    if not isinstance(doc["phi"], list):
        raise InstanceFileError("phi: expected a list of [index, scalar]")
    for r, entry in enumerate(doc["phi"]):
        if not isinstance(entry, list) or len(entry) != 2:
            raise InstanceFileError(f"phi[{r}]: expected [index, scalar]")
        lab = labels[_index(entry[0], len(labels), f"phi[{r}]")]
        phi_vals[lab] = _literal(field, entry[1], f"phi[{r}]")
    phi = Functional(lambda k: phi_vals.get(k[0], 0), "phi")
    unit = None
    if doc.get("unit") is not None:
        terms = doc["unit"]
        if not isinstance(terms, list):
            raise InstanceFileError("unit: expected a list of [index, scalar]")
        d = {}
        for r, entry in enumerate(terms):
            if not isinstance(entry, list) or len(entry) != 2:
                raise InstanceFileError(f"unit[{r}]: expected [index, scalar]")
            lab = labels[_index(entry[0], len(labels), f"unit[{r}]")]
            d[(lab,)] = _literal(field, entry[1], f"unit[{r}]")
        unit = Vec(d)
    data = QuantumGroup(doc.get("name", name), field, FiniteBasis(labels), mu, galois, phi,
                        inverses=inverses, unit=unit)
    data.kind = "custom"
    if doc.get("counit") is not None:
        # a declared counit is checked by the hopf suite instead of the derived one
        if not isinstance(doc["counit"], list):
            raise InstanceFileError("counit: expected a list of [index, scalar]")
        eps_vals = {}
        for r, entry in enumerate(doc["counit"]):
            if not isinstance(entry, list) or len(entry) != 2:
                raise InstanceFileError(f"counit[{r}]: expected [index, scalar]")
            lab = labels[_index(entry[0], len(labels), f"counit[{r}]")]
            eps_vals[lab] = _literal(field, entry[1], f"counit[{r}]")
        data.declared["eps"] = Functional(lambda k: eps_vals.get(k[0], 0), "eps (declared)")
    return data


def load_custom(path_or_text, radius=0, check=True):
    """Load an instance file; untrusted input is run through verify_laws(all)."""
    text = path_or_text
    name = "custom"
    if not str(path_or_text).lstrip().startswith("{"):
        name = str(path_or_text)
        try:
            with open(path_or_text) as fh:
                text = fh.read()
        except OSError as exc:
            raise InstanceFileError(f"cannot read {path_or_text}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(doc, dict) and doc.get("partial"):
        raise InstanceFileError("partial (window truncated) dumps cannot be loaded as instances")
    data = parse_instance(doc, name)
    if check:
        try:
            report = verify_laws(data, "all", radius)
        except Exception as exc:      # any structural breakdown rejects the file
            rep = Report(data.name, radius)
            rep.record("custom.load", "instance can be checked", False, {"detail": str(exc)})
            raise InstanceRejected(f"instance rejected: {exc}", rep) from None
        if not report.ok:
            first = report.failures()[0]
            raise InstanceRejected(f"instance rejected: law {first.id} fails", report)
        data.load_report = report
    return data


def export_instance(data, radius=0, include_inverses=False, include_counit=True):
    """Instance document for ``data``; infinite bases are truncated and flagged partial."""
    labels = list(data.labels(radius))
    pos = {lab: i for i, lab in enumerate(labels)}
    partial = not data.finite

    def sparse(op, n_in):
        rows = []
        for key in product(labels, repeat=n_in):
            img = op.image(key)
            terms = []
            for out, c in img.sorted_items():
                if not all(o in pos for o in out):
                    continue
                terms.append([pos[o] for o in out] + [to_literal(c)])
            if terms:
                rows.append([pos[k] for k in key] + [terms])
        return rows
    doc = {
        "name": data.name,
        "field": {"conductor": data.field.conductor},
        "basis": [str(b) for b in labels],
    }
    if data.unit is not None:
        doc["unit"] = [[pos[k[0]], to_literal(c)] for k, c in data.unit.sorted_items() if k[0] in pos]
    doc["mu"] = sparse(data.mu, 2)
    galois = {}
    for g in ("gamma_l", "gamma_r", "rho_l", "rho_r"):
        galois[g] = sparse(data.galois[g], 2)
        if include_inverses:
            galois[g + "_inv"] = sparse(data.inverse(g), 2)
    doc["galois"] = galois
    doc["phi"] = [[pos[b], to_literal(data.phi.at(b))] for b in labels if data.phi.at(b)]
    if include_counit:
        eps = data.counit()
        doc["counit"] = [[pos[b], to_literal(eps.at(b))] for b in labels if eps.at(b)]
    if partial:
        doc["partial"] = True
        doc["window"] = radius
    return doc


def export_json(data, radius=0, include_inverses=False, include_counit=True):
    return json.dumps(export_instance(data, radius, include_inverses, include_counit), indent=1)


MUTATIONS = ("nonassociative", "gamma_r-identity", "counit-perturbed")


def mutate_document(doc, kind):
    """A copy of an instance document with one deliberate defect."""
    doc = json.loads(json.dumps(doc))
    n = len(doc["basis"])
    if kind == "nonassociative":
        # b0 b0 picks up an extra b1
        for row in doc["mu"]:
            if row[0] == 0 and row[1] == 0:
                row[2].append([1 % n, 1])
                break
        else:
            doc["mu"].append([0, 0, [[1 % n, 1]]])
    elif kind == "gamma_r-identity":
        doc["galois"]["gamma_r"] = [[i, j, [[i, j, 1]]] for i in range(n) for j in range(n)]
        doc["galois"].pop("gamma_r_inv", None)
    elif kind == "counit-perturbed":
        eps = {i: c for i, c in doc.get("counit") or []}
        if not eps:
            raise ValueError("document has no counit to perturb")
        eps[0] = _bump(eps.get(0, 0))
        doc["counit"] = [[i, eps[i]] for i in sorted(eps)]
    else:
        raise ValueError(f"unknown mutation {kind!r}; choose from {', '.join(MUTATIONS)}")
    doc["name"] = f"{doc.get('name', 'custom')}+{kind}"
    return doc


def _bump(lit):
    """Literal plus one (the rational part, for cyclotomic literals)."""
    head, *rest = str(lit).split(",")
    return ",".join([str(Fraction(head) + 1)] + rest)


def label_map_to_strings(data):
    """Relabel map from the labels of ``data`` to the string labels of its export."""
    return lambda lab: str(lab)


__all__ = [
    "GroupModel", "Cyclic", "Product", "Symmetric", "Integers", "ZLattice", "FreeGroup",
    "function_algebra", "group_algebra", "trivial", "sweedler", "taft", "resolve", "catalog",
    "load_custom", "parse_instance", "export_instance", "export_json", "InstanceFileError",
    "InstanceRejected", "mutate_document", "MUTATIONS", "CATALOG", "FINITE_CATALOG",
    "parse_group", "label_map_to_strings",
]
