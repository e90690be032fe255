"""Quantum group data, law suites, and derivation of counit and antipode.

A ``QuantumGroup`` is given by its multiplication, the four Galois maps
(with inverses) and a left invariant functional phi.  The counit and the
antipode are not part of the input: they are reconstructed from these maps
by ``derive_counit`` and ``derive_antipode``.
"""

import os
from concurrent.futures import ThreadPoolExecutor

from .freemod import (ID, TAU, Eliminator, FiniteBasis, Functional, NotInvertible,
                      Operator, Vec, compose, invert_on_span, otimes, window_tuples)

ESSENTIALNESS_NOTE = "essentialness: proxy check"
GALOIS = ("gamma_l", "gamma_r", "rho_l", "rho_r")


class MissingData(ValueError):
    pass


class AntipodeEscapesWindow(ValueError):
    pass


class Window:
    def __init__(self, radius=3):
        if radius < 0:
            raise ValueError("window radius must be nonnegative")
        self.radius = radius

    def __repr__(self):
        return f"Window({self.radius})"


def _radius(w):
    return w.radius if isinstance(w, Window) else int(w)


def _describe(v):
    return repr(v) if isinstance(v, Vec) else str(v)


class Check:
    __slots__ = ("id", "law", "status", "counterexample")

    def __init__(self, id, law, status, counterexample=None):
        if status == "fail" and counterexample is None:
            raise ValueError("failing checks need a counterexample")
        self.id = id
        self.law = law
        self.status = status
        self.counterexample = counterexample

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        d = {"id": self.id, "law": self.law, "status": self.status}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


class Report:
    def __init__(self, instance="", window=None, checks=None, notes=None):
        self.instance = instance
        self.window = window
        self.checks = list(checks or [])
        self.notes = list(notes or [ESSENTIALNESS_NOTE])

    def add(self, check):
        self.checks.append(check)
        return check

    def record(self, id, law, ok, counterexample=None):
        return self.add(Check(id, law, "pass" if ok else "fail",
                              None if ok else (counterexample or {"detail": "no witness recorded"})))

    def extend(self, other):
        self.checks.extend(other.checks)
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def get(self, id):
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def ids(self):
        return [c.id for c in self.checks]

    def to_dict(self, timing_ms=None):
        return {
            "instance": self.instance,
            "window": self.window,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "timing_ms": timing_ms,
        }

    def to_text(self):
        lines = [f"instance: {self.instance}  window: {self.window}"]
        for c in self.checks:
            lines.append(f"  [{c.status}] {c.id}: {c.law}")
            if c.counterexample is not None:
                for k, v in c.counterexample.items():
                    lines.append(f"      {k}: {v}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        passed = sum(c.passed for c in self.checks)
        lines.append(f"  {passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)

    def __repr__(self):
        return f"<Report {self.instance} {len(self.checks)} checks, ok={self.ok}>"


class Law:
    """An operator identity lhs == rhs checked on window basis tuples."""

    def __init__(self, id, text, lhs, rhs, legs):
        self.id = id
        self.text = text
        self.lhs = lhs
        self.rhs = rhs
        self.legs = legs

    def check(self, radius):
        for key in window_tuples(self.legs, radius):
            a = self.lhs.image(key)
            b = self.rhs.image(key)
            if a != b:
                return Check(self.id, self.text, "fail", {
                    "input": [str(x) for x in key],
                    "lhs": _describe(a), "rhs": _describe(b)})
        return Check(self.id, self.text, "pass")


def thread_count():
    try:
        return max(1, int(os.environ.get("QG_THREADS", "1")))
    except ValueError:
        return 1


def run_laws(laws, radius):
    """Check laws, possibly in parallel; results keep the order of ``laws``."""
    n = thread_count()
    if n == 1 or len(laws) < 2:
        return [law.check(radius) for law in laws]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda law: law.check(radius), laws))


class QuantumGroup:
    """Multiplication, Galois maps, phi and optional closed-form cross-checks.

    Galois inverses may be omitted for finite bases; they are then computed
    by exact elimination on the tensor square of the basis.
    """

    def __init__(self, name, field, basis, mu, galois, phi, inverses=None, unit=None,
                 crosscheck=None, local_unit=None, search_radius=4):
        self.name = name
        self.field = field
        self.basis = basis if not isinstance(basis, (list, tuple)) else FiniteBasis(basis)
        self.mu = mu
        self.galois = dict(galois)
        missing = [g for g in GALOIS if g not in self.galois]
        if missing:
            raise MissingData(f"{name}: missing Galois maps {missing}")
        self._inverses = dict(inverses or {})
        self.phi = phi
        self.unit = unit
        self.crosscheck = dict(crosscheck or {})
        self._local_unit = local_unit
        self.search_radius = search_radius
        self.declared = {}
        self._memo = {}

    # -- structure ---------------------------------------------------------
    @property
    def finite(self):
        return self.basis.finite

    def labels(self, radius=0):
        return self.basis.window(radius)

    def __getattr__(self, attr):
        # gamma_l, gamma_r_inv, ...
        if attr.startswith("_"):
            raise AttributeError(attr)
        if attr in GALOIS:
            return self.galois[attr]
        if attr.endswith("_inv") and attr[:-4] in GALOIS:
            return self.inverse(attr[:-4])
        raise AttributeError(attr)

    def inverse(self, name):
        inv = self._inverses.get(name)
        if inv is None:
            if not self.finite:
                raise MissingData(f"{self.name}: infinite basis needs a closed-form inverse of {name}")
            pairs = [(a, b) for a in self.labels() for b in self.labels()]
            inv = invert_on_span(self.galois[name], pairs, name=f"{name}^-1")
            self._inverses[name] = inv
        return inv

    def mul(self, x, y):
        return self.mu(x.tensor(y))

    def element(self, *terms):
        """element(("g", 1), ("x", -1)) -> Vec."""
        return Vec([((lab,), c) for lab, c in terms])

    def b(self, label):
        return Vec.basis(label)

    def local_unit(self, radius=0):
        """An element e with w*e = e*w = w for w in the radius window."""
        if self.unit is not None:
            return self.unit
        key = ("local_unit", radius)
        if key in self._memo:
            return self._memo[key]
        if self._local_unit is not None:
            e = self._local_unit(radius)
        else:
            e = solve_local_unit(self, radius)
        self._memo[key] = e
        return e

    # -- derived maps (memoised) ---------------------------------------------
    def counit(self):
        if "eps" not in self._memo:
            self._memo["eps"] = derive_counit(self)
        return self._memo["eps"]

    def antipode(self):
        if "S" not in self._memo:
            self._memo["S"] = derive_antipode(self, self.counit())
        return self._memo["S"]

    def hopf_maps(self):
        S, S_inv = self.antipode()
        return self.counit(), S, S_inv

    def __repr__(self):
        return f"<QuantumGroup {self.name}>"


def solve_local_unit(data, radius):
    win = data.labels(radius)
    if not data.finite and data.unit is None and data._local_unit is None:
        # a window solve is still meaningful, but only tested on the window
        pass
    elim = Eliminator()
    for b in win:
        col = {}
        for w in win:
            for (k,), c in data.mu.image((b, w)).items():
                col[("L", w, k)] = col.get(("L", w, k), 0) + c
            for (k,), c in data.mu.image((w, b)).items():
                col[("R", w, k)] = col.get(("R", w, k), 0) + c
        elim.add({k: c for k, c in col.items() if c}, b)
    target = {}
    for w in win:
        target[("L", w, w)] = 1
        target[("R", w, w)] = 1
    combo = elim.express(target)
    if combo is None:
        raise MissingData(f"{data.name}: no local unit on the radius {radius} window")
    return Vec({(t,): c for t, c in combo.items()})


# -- helpers building common operators ---------------------------------------

def eps_id(eps):
    return otimes(eps, ID)


def id_eps(eps):
    return otimes(ID, eps)


def legs_of(data, k):
    return [data.basis] * k


# -- derivation ---------------------------------------------------------------

def normalizing_elements(data, count=2, radius=None):
    """Elements h with phi(h) = 1, found in basis order.

    The first is b/phi(b) for the first basis element b with phi(b) != 0;
    the second uses the next such basis element, or h + b' with phi(b') = 0
    when no second one exists.
    """
    radius = data.search_radius if radius is None else radius
    hits, null = [], None
    for b in data.labels(radius):
        v = data.phi.at(b)
        if v:
            hits.append(Vec.basis(b) / v)
        elif null is None:
            null = Vec.basis(b)
        if len(hits) >= count:
            break
    if not hits:
        raise MissingData(f"{data.name}: no basis element with phi != 0 in the search window")
    while len(hits) < count:
        if null is None:
            hits.append(hits[0])
        else:
            hits.append(hits[0] + null * len(hits))
    return hits


def derive_counit(data, h=None):
    """eps(f) = phi(mu rho_l^-1 (h (x) f)) for some h with phi(h) = 1."""
    if h is None:
        h = normalizing_elements(data, 1)[0]
    rl_inv = data.inverse("rho_l")
    mu, phi = data.mu, data.phi

    def rule(k):
        return phi(mu(rl_inv(h.tensor(Vec.basis(*k)))))
    return Functional(rule, "eps")


def derive_antipode(data, eps):
    """S and its inverse from the multiplier formulas.

    S(f) g = (eps (x) id) gamma_r^-1 (f (x) g) determines S(f); we evaluate it
    against a local unit e (the unit, when there is one).  Likewise
    S^-1(f) g = (eps (x) id) gamma_l^-1 (g (x) f).
    """
    gr_inv = data.inverse("gamma_r")
    gl_inv = data.inverse("gamma_l")
    ei = eps_id(eps)

    def unit_for(k):
        return data.local_unit(data.basis.length(k[0]))

    def s_rule(k):
        return ei(gr_inv(Vec.basis(*k).tensor(unit_for(k))))

    def s_inv_rule(k):
        return ei(gl_inv(unit_for(k).tensor(Vec.basis(*k))))
    return Operator(1, 1, s_rule, "S"), Operator(1, 1, s_inv_rule, "S^-1")


def _first_mismatch(a, b, labels):
    for lab in labels:
        x, y = a.on(lab), b.on(lab)
        if x != y:
            return {"input": [str(lab)], "lhs": _describe(x), "rhs": _describe(y)}
    return None


def derivation_report(data, w=3):
    """Derived counit and antipode against the closed forms, and against a second h."""
    radius = _radius(w)
    rep = Report(data.name, radius)
    labels = list(data.labels(radius))
    h1, h2 = normalizing_elements(data, 2)
    eps1, eps2 = derive_counit(data, h1), derive_counit(data, h2)
    S1, Si1 = derive_antipode(data, eps1)
    S2, Si2 = derive_antipode(data, eps2)
    cross = data.crosscheck
    for key, derived in (("eps", eps1), ("S", S1), ("S_inv", Si1)):
        if key in cross:
            bad = _first_mismatch(derived, cross[key], labels)
            rep.record(f"derive.{key}-matches-closed-form", f"derived {key} equals the closed form",
                       bad is None, bad)
    for key, a, b in (("eps", eps1, eps2), ("S", S1, S2), ("S_inv", Si1, Si2)):
        bad = _first_mismatch(a, b, labels)
        rep.record(f"derive.{key}-unique", f"{key} does not depend on the normalizing element",
                   bad is None, bad)
    return rep


def check_antipode_window(data, eps, S, S_inv, radius):
    """Raise AntipodeEscapesWindow if S(f) does not realise the multiplier."""
    rep = Report(data.name, radius)
    for law in antipode_multiplier_laws(data, eps, S, S_inv):
        rep.add(law.check(radius))
    if not rep.ok:
        bad = rep.failures()[0]
        raise AntipodeEscapesWindow(f"antipode escapes window: {bad.id} {bad.counterexample}")
    return rep


def antipode_multiplier_laws(data, eps, S, S_inv):
    mu = data.mu
    two = legs_of(data, 2)
    gr_inv, gl_inv = data.inverse("gamma_r"), data.inverse("gamma_l")
    rl_inv, rr_inv = data.inverse("rho_l"), data.inverse("rho_r")
    return [
        Law("hopf.antipode-left-multiplier", "S(f)g = (eps(x)id) gamma_r^-1 (f(x)g)",
            compose(mu, otimes(S, ID)), compose(eps_id(eps), gr_inv), two),
        Law("hopf.antipode-right-multiplier", "gS(f) = (id(x)eps) rho_l^-1 (g(x)f)",
            compose(mu, otimes(ID, S)), compose(id_eps(eps), rl_inv), two),
        Law("hopf.antipode-inverse-left-multiplier", "S^-1(f)g = (eps(x)id) gamma_l^-1 tau (f(x)g)",
            compose(mu, otimes(S_inv, ID)), compose(eps_id(eps), gl_inv, TAU), two),
        Law("hopf.antipode-inverse-right-multiplier", "gS^-1(f) = (id(x)eps) rho_r^-1 tau (g(x)f)",
            compose(mu, otimes(ID, S_inv)), compose(id_eps(eps), rr_inv, TAU), two),
    ]


# -- law suites -----------------------------------------------------------------

def algebra_laws(data):
    mu = data.mu
    three = legs_of(data, 3)
    laws = [Law("algebra.associativity", "mu(mu(x)id) = mu(id(x)mu)",
                compose(mu, otimes(mu, ID)), compose(mu, otimes(ID, mu)), three)]
    if data.unit is not None:
        u = data.unit
        laws.append(Law("algebra.unit", "1 f = f = f 1",
                        Operator(1, 1, lambda k: mu(u.tensor(Vec.basis(*k))), "1*"),
                        Operator(1, 1, lambda k: mu(Vec.basis(*k).tensor(u)), "*1"),
                        legs_of(data, 1)))
    return laws


def faithfulness_check(data, radius):
    win = data.labels(radius)
    phi, mu = data.phi, data.mu
    elim = Eliminator()
    for f in win:
        row = {}
        for g in win:
            v = phi(mu.image((f, g)))
            if v:
                row[g] = v
        rel = elim.add(row, f)
        if rel is not None:
            kernel = Vec({(t,): c for t, c in rel.items()})
            return Check("algebra.phi-faithful", "f -> phi(f .) has trivial kernel on the window",
                         "fail", {"kernel": repr(kernel)})
    return Check("algebra.phi-faithful", "f -> phi(f .) has trivial kernel on the window", "pass")


def essential_check(data, radius):
    win = data.labels(radius)
    elim = Eliminator()
    # products of two window elements, each leg taken from the full window;
    # stop as soon as every window element is reached
    pending = list(win)
    for a in win:
        for b in win:
            elim.add(dict(data.mu.image((a, b)).items()), (a, b))
        pending = [w for w in pending if elim.express({(w,): 1}) is None]
        if not pending:
            break
    for w in pending:
        if elim.express({(w,): 1}) is None:
            return Check("algebra.essential-proxy", "window is spanned by products of window elements",
                         "fail", {"input": [str(w)], "detail": "not a sum of window products"})
    return Check("algebra.essential-proxy", "window is spanned by products of window elements", "pass")


def galois_laws(data):
    mu = data.mu
    gl, gr, rl, rr = (data.galois[g] for g in GALOIS)
    two, three = legs_of(data, 2), legs_of(data, 3)
    laws = []
    for g in GALOIS:
        op, inv = data.galois[g], data.inverse(g)
        laws.append(Law(f"galois.inverse.{g}.left", f"{g}^-1 {g} = id", compose(inv, op), otimes(ID, ID), two))
        laws.append(Law(f"galois.inverse.{g}.right", f"{g} {g}^-1 = id", compose(op, inv), otimes(ID, ID), two))
    laws.append(Law("galois.phi-left-invariant", "(id(x)phi) gamma_l = phi(x)id",
                    compose(otimes(ID, data.phi), gl), otimes(data.phi, ID), two))
    I = ID
    conds = [
        ("a", "gamma_r(id(x)mu) = (id(x)mu)(gamma_r(x)id)",
         compose(gr, otimes(I, mu)), compose(otimes(I, mu), otimes(gr, I))),
        ("b", "gamma_r(mu(x)id) = (mu(x)id)(tau(x)id)(id(x)gamma_r)(tau(x)id)(id(x)gamma_r)",
         compose(gr, otimes(mu, I)),
         compose(otimes(mu, I), otimes(TAU, I), otimes(I, gr), otimes(TAU, I), otimes(I, gr))),
        ("c", "rho_l(mu(x)id) = (mu(x)id)(id(x)rho_l)",
         compose(rl, otimes(mu, I)), compose(otimes(mu, I), otimes(I, rl))),
        ("d", "rho_l(id(x)mu) = (id(x)mu)(id(x)tau)(rho_l(x)id)(id(x)tau)(rho_l(x)id)",
         compose(rl, otimes(I, mu)),
         compose(otimes(I, mu), otimes(I, TAU), otimes(rl, I), otimes(I, TAU), otimes(rl, I))),
        ("e", "(id(x)mu)(rho_l(x)id) = (mu(x)id)(id(x)gamma_r)",
         compose(otimes(I, mu), otimes(rl, I)), compose(otimes(mu, I), otimes(I, gr))),
        ("f", "(rho_l(x)id)(id(x)gamma_r) = (id(x)gamma_r)(rho_l(x)id)",
         compose(otimes(rl, I), otimes(I, gr)), compose(otimes(I, gr), otimes(rl, I))),
        ("g", "(mu(x)id)(id(x)tau)(gamma_l(x)id) = gamma_l(id(x)mu)",
         compose(otimes(mu, I), otimes(I, TAU), otimes(gl, I)), compose(gl, otimes(I, mu))),
        ("h", "(id(x)mu)(gamma_l(x)id) = (mu(x)id)(id(x)tau)(gamma_r(x)id)(id(x)tau)",
         compose(otimes(I, mu), otimes(gl, I)),
         compose(otimes(mu, I), otimes(I, TAU), otimes(gr, I), otimes(I, TAU))),
        ("i", "(id(x)mu)(tau(x)id)(id(x)rho_r) = rho_r(mu(x)id)",
         compose(otimes(I, mu), otimes(TAU, I), otimes(I, rr)), compose(rr, otimes(mu, I))),
        ("j", "(mu(x)id)(id(x)rho_r) = (id(x)mu)(tau(x)id)(id(x)rho_l)(tau(x)id)",
         compose(otimes(mu, I), otimes(I, rr)),
         compose(otimes(I, mu), otimes(TAU, I), otimes(I, rl), otimes(TAU, I))),
    ]
    for tag, text, lhs, rhs in conds:
        laws.append(Law(f"galois.condition-{tag}", text, lhs, rhs, three))
    laws.append(Law("galois.commutation", "(rho_l(x)id)(id(x)gamma_r) = (id(x)gamma_r)(rho_l(x)id)",
                    conds[5][2], conds[5][3], three))
    from .freemod import leg
    g12, g13, g23 = leg(gr, [1, 2], 3), leg(gr, [1, 3], 3), leg(gr, [2, 3], 3)
    laws.append(Law("galois.pentagon", "gamma_r^23 gamma_r^12 = gamma_r^12 gamma_r^13 gamma_r^23",
                    compose(g23, g12), compose(g12, g13, g23), three))
    laws.extend(variant_laws(data))
    return laws


def _delta_actions(data):
    """Delta(f)(a(x)b) and (a(x)b)Delta(f) on basis triples (f, a, b)."""
    mu, gr, rl = data.mu, data.galois["gamma_r"], data.galois["rho_l"]

    def right(k):            # Delta(f)(a (x) b) = gamma_r(f (x) b)(a (x) 1)
        f, a, b = k
        d = {}
        for (x, y), c in gr.image((f, b)).items():
            for (z,), c2 in mu.image((x, a)).items():
                d[(z, y)] = d.get((z, y), 0) + c * c2
        return Vec(d, 2)

    def left(k):             # (a (x) b)Delta(f) = (1 (x) b) rho_l(a (x) f)
        f, a, b = k
        d = {}
        for (x, y), c in rl.image((a, f)).items():
            for (z,), c2 in mu.image((b, y)).items():
                d[(x, z)] = d.get((x, z), 0) + c * c2
        return Vec(d, 2)
    return right, left


def variant_galois(data, variant):
    gl, gr, rl, rr = (data.galois[g] for g in GALOIS)
    inv = {g: (lambda g=g: data.inverse(g)) for g in GALOIS}
    T = TAU
    if variant == "op":
        fwd = {"gamma_l": compose(rl, T), "gamma_r": compose(rr, T),
               "rho_l": compose(gl, T), "rho_r": compose(gr, T)}
        bwd = {"gamma_l": lambda: compose(T, inv["rho_l"]()), "gamma_r": lambda: compose(T, inv["rho_r"]()),
               "rho_l": lambda: compose(T, inv["gamma_l"]()), "rho_r": lambda: compose(T, inv["gamma_r"]())}
    elif variant == "cop":
        fwd = {"gamma_l": compose(T, gr), "gamma_r": compose(T, gl),
               "rho_l": compose(T, rr), "rho_r": compose(T, rl)}
        bwd = {"gamma_l": lambda: compose(inv["gamma_r"](), T), "gamma_r": lambda: compose(inv["gamma_l"](), T),
               "rho_l": lambda: compose(inv["rho_r"](), T), "rho_r": lambda: compose(inv["rho_l"](), T)}
    elif variant == "opcop":
        fwd = {"gamma_l": compose(T, rr, T), "gamma_r": compose(T, rl, T),
               "rho_l": compose(T, gr, T), "rho_r": compose(T, gl, T)}
        bwd = {"gamma_l": lambda: compose(T, inv["rho_r"](), T), "gamma_r": lambda: compose(T, inv["rho_l"](), T),
               "rho_l": lambda: compose(T, inv["gamma_r"](), T), "rho_r": lambda: compose(T, inv["gamma_l"](), T)}
    elif variant == "id":
        fwd = {g: data.galois[g] for g in GALOIS}
        bwd = {g: inv[g] for g in GALOIS}
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return fwd, bwd


def variant_laws(data):
    """Galois maps of H, H^op, H^cop, H^opcop against their definitions.

    Each Galois map X' of a variant (taken from the op/cop table) is checked
    after multiplying by a third element k against the defining expression
    built from Delta'(f) acting on tensors, where Delta' and mu' are the
    variant's comultiplication and multiplication.
    """
    R, L = _delta_actions(data)
    mu = data.mu
    three = legs_of(data, 3)
    laws = []
    for variant in ("id", "op", "cop", "opcop"):
        fwd, _ = variant_galois(data, variant)
        op_mult = variant in ("op", "opcop")
        flip = variant in ("cop", "opcop")

        def m(x, y, op_mult=op_mult):
            return mu.image((y, x)) if op_mult else mu.image((x, y))

        def dprod(f, a, b, left_side, op_mult=op_mult, flip=flip):
            # Delta'(f) *' (a (x) b)  (left_side False)  or  (a (x) b) *' Delta'(f)
            use_left = left_side != op_mult
            if flip:
                v = (L if use_left else R)((f, b, a))
                return v.permute((1, 0))
            return (L if use_left else R)((f, a, b))

        def mult_right(X, k, leg_index, m=m):
            # X *' (1 (x) k) or X *' (k (x) 1)
            d = {}
            for key, c in X.items():
                target = key[leg_index]
                for (z,), c2 in m(target, k).items():
                    nk = list(key)
                    nk[leg_index] = z
                    nk = tuple(nk)
                    d[nk] = d.get(nk, 0) + c * c2
            return Vec(d, 2)

        def mult_left(X, k, leg_index, m=m):
            d = {}
            for key, c in X.items():
                target = key[leg_index]
                for (z,), c2 in m(k, target).items():
                    nk = list(key)
                    nk[leg_index] = z
                    nk = tuple(nk)
                    d[nk] = d.get(nk, 0) + c * c2
            return Vec(d, 2)

        def make(name, fwd=fwd, dprod=dprod, mult_right=mult_right, mult_left=mult_left):
            X = fwd[name]
            if name == "gamma_l":      # gamma_l'(f(x)g) (1(x)k) = Delta'(f)(g(x)k)
                lhs = lambda k: mult_right(X.image(k[:2]), k[2], 1)
                rhs = lambda k: dprod(k[0], k[1], k[2], False)
            elif name == "gamma_r":    # gamma_r'(f(x)g) (k(x)1) = Delta'(f)(k(x)g)
                lhs = lambda k: mult_right(X.image(k[:2]), k[2], 0)
                rhs = lambda k: dprod(k[0], k[2], k[1], False)
            elif name == "rho_l":      # (1(x)k) rho_l'(f(x)g) = (f(x)k)Delta'(g)
                lhs = lambda k: mult_left(X.image(k[:2]), k[2], 1)
                rhs = lambda k: dprod(k[1], k[0], k[2], True)
            else:                      # (k(x)1) rho_r'(f(x)g) = (k(x)f)Delta'(g)
                lhs = lambda k: mult_left(X.image(k[:2]), k[2], 0)
                rhs = lambda k: dprod(k[1], k[2], k[0], True)
            return Operator(3, 2, lhs, f"{name}^{variant}"), Operator(3, 2, rhs, f"def {name}^{variant}")

        for name in GALOIS:
            lhs, rhs = make(name)
            tag = "comultiplication" if variant == "id" else variant
            laws.append(Law(f"galois.variant.{tag}.{name}",
                            f"{name} of H^{variant} (op/cop table) matches its definition"
                            if variant != "id" else f"{name} matches Delta defined by gamma_r and rho_l",
                            lhs, rhs, three))
    return laws


def hopf_laws(data, eps=None, S=None, S_inv=None):
    if eps is None or S is None or S_inv is None:
        try:
            d_eps, d_S, d_S_inv = data.hopf_maps()
        except (MissingData, NotInvertible) as exc:
            raise MissingData(f"hopf suite needs counit and antipode: {exc}") from exc
        eps = eps or d_eps
        S = S or d_S
        S_inv = S_inv or d_S_inv
    mu = data.mu
    gl, gr, rl, rr = (data.galois[g] for g in GALOIS)
    gl_i, gr_i, rl_i = data.inverse("gamma_l"), data.inverse("gamma_r"), data.inverse("rho_l")
    one, two = legs_of(data, 1), legs_of(data, 2)
    I = ID
    scalar_mult = Functional(lambda k: eps.image((k[0],)).scalar() * eps.image((k[1],)).scalar(),
                             "eps(x)eps", n_in=2)
    laws = [
        Law("hopf.antipode-left", "mu(S(x)id)gamma_r = eps(x)id",
            compose(mu, otimes(S, I), gr), eps_id(eps), two),
        Law("hopf.antipode-right", "mu(id(x)S)rho_l = id(x)eps",
            compose(mu, otimes(I, S), rl), id_eps(eps), two),
        Law("hopf.counit-gamma_r", "(eps(x)id)gamma_r = mu", compose(eps_id(eps), gr), mu, two),
        Law("hopf.counit-rho_l", "(id(x)eps)rho_l = mu", compose(id_eps(eps), rl), mu, two),
        Law("hopf.counit-gamma_r-second-leg", "(id(x)eps)gamma_r = id(x)eps",
            compose(id_eps(eps), gr), id_eps(eps), two),
        Law("hopf.counit-rho_l-first-leg", "(eps(x)id)rho_l = eps(x)id",
            compose(eps_id(eps), rl), eps_id(eps), two),
        Law("hopf.counit-multiplicative", "eps(fg) = eps(f)eps(g)", compose(eps, mu), scalar_mult, two),
        Law("hopf.antipode-antimultiplicative", "S(fg) = S(g)S(f)",
            compose(S, mu), compose(mu, TAU, otimes(S, S)), two),
        Law("hopf.coop2", "(S(x)id)gamma_l = rho_l^-1(S(x)id)tau",
            compose(otimes(S, I), gl), compose(rl_i, otimes(S, I), TAU), two),
        Law("hopf.coop1", "rho_r(S(x)S) = (S(x)id)tau rho_l^-1(S(x)id)",
            compose(rr, otimes(S, S)), compose(otimes(S, I), TAU, rl_i, otimes(S, I)), two),
        Law("hopf.coop11", "gamma_r^-1 gamma_l = (id(x)S)rho_l",
            compose(gr_i, gl), compose(otimes(I, S), rl), two),
        Law("hopf.coop12", "gamma_l^-1 gamma_r = (id(x)S^-1)tau rho_r",
            compose(gl_i, gr), compose(otimes(I, S_inv), TAU, rr), two),
        Law("hopf.rho_r-via-antipode", "rho_r = rho_l(S(x)id)gamma_r",
            rr, compose(rl, otimes(S, I), gr), two),
        Law("hopf.counit-antipode", "eps S = eps", compose(eps, S), eps, one),
        Law("hopf.antipode-inverse", "S^-1 S = id", compose(S_inv, S), I, one),
        Law("hopf.antipode-inverse-right", "S S^-1 = id", compose(S, S_inv), I, one),
    ]
    laws.extend(antipode_multiplier_laws(data, eps, S, S_inv))
    return laws


SUITES = ("algebra", "galois", "hopf", "all")


def verify_laws(data, suite="all", w=3, eps=None, S=None, S_inv=None):
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    radius = _radius(w)
    rep = Report(data.name, radius)
    if suite in ("algebra", "all"):
        for c in run_laws(algebra_laws(data), radius):
            rep.add(c)
        rep.add(faithfulness_check(data, radius))
        rep.add(essential_check(data, radius))
    if suite in ("galois", "all"):
        try:
            laws = galois_laws(data)
        except (MissingData, NotInvertible) as exc:
            rep.record("galois.inverses-available", "Galois maps are invertible", False,
                       {"detail": str(exc)})
            laws = []
        for c in run_laws(laws, radius):
            rep.add(c)
    if suite in ("hopf", "all"):
        eps = eps or data.declared.get("eps")
        try:
            laws = hopf_laws(data, eps, S, S_inv)
        except MissingData as exc:
            if suite == "hopf":
                raise
            rep.record("hopf.maps-available", "counit and antipode can be derived", False,
                       {"detail": str(exc)})
            laws = []
        results = []
        try:
            results = run_laws(laws, radius)
        except (MissingData, NotInvertible) as exc:
            rep.record("hopf.maps-available", "counit and antipode can be derived", False,
                       {"detail": str(exc)})
        for c in results:
            rep.add(c)
    return rep


# -- op / cop variants -------------------------------------------------------------

def opposite_variant(data, variant):
    """The bundle of H^op, H^cop or H^opcop.

    The left Haar functional of H^op is phi itself (left invariance does not
    involve the product); for H^cop and H^opcop it is the right invariant
    functional phi o S of H.
    """
    if variant not in ("op", "cop", "opcop"):
        raise ValueError(f"unknown variant {variant!r}")
    fwd, bwd = variant_galois(data, variant)
    mu = compose(data.mu, TAU) if variant in ("op", "opcop") else data.mu
    inverses = {}
    try:
        inverses = {g: bwd[g]() for g in GALOIS}
    except MissingData:
        inverses = {}
    cross = dict(data.crosscheck)
    if variant == "op" or variant == "cop":
        if "S" in cross and "S_inv" in cross:
            cross["S"], cross["S_inv"] = cross["S_inv"], cross["S"]
    if variant == "op":
        phi = data.phi
    else:
        S = data.crosscheck.get("S") or data.antipode()[0]
        phi = compose(data.phi, S)
        phi.name = "phi o S"
    for key in ("sigma", "nu", "rho", "delta", "psi", "sigma_inv", "nu_inv", "rho_inv"):
        cross.pop(key, None)
    name = data.name
    if name.endswith("^" + variant):
        name = name[: -len(variant) - 1]
    elif variant == "opcop" and name.endswith("^opcop"):
        name = name[:-6]
    else:
        name = f"{name}^{variant}"
    return QuantumGroup(name, data.field, data.basis, mu, fwd, phi, inverses=inverses,
                        unit=data.unit, crosscheck=cross, local_unit=data._local_unit,
                        search_radius=data.search_radius)


def compare_structure(a, b, radius=0, relabel=None, include_phi=True, include_inverses=False):
    """Mismatches between the structure maps of two bundles on the window.

    ``relabel`` maps basis labels of ``a`` to labels of ``b``.
    """
    relabel = relabel or (lambda x: x)
    out = []

    def rl(v):
        return Vec({tuple(relabel(x) for x in k): c for k, c in v.items()}, v.rank)

    def cmp(name, op_a, op_b, key):
        x = rl(op_a.image(key))
        y = op_b.image(tuple(relabel(t) for t in key))
        if x != y:
            out.append({"map": name, "input": [str(t) for t in key], "lhs": repr(x), "rhs": repr(y)})
            return False
        return True

    pairs = window_tuples(legs_of(a, 2), radius)
    maps = [("mu", a.mu, b.mu)] + [(g, a.galois[g], b.galois[g]) for g in GALOIS]
    if include_inverses:
        maps += [(g + "^-1", a.inverse(g), b.inverse(g)) for g in GALOIS]
    for name, x, y in maps:
        for key in pairs:
            if not cmp(name, x, y, key):
                break
    if include_phi:
        for lab in a.labels(radius):
            x, y = a.phi.at(lab), b.phi.at(relabel(lab))
            if x != y:
                out.append({"map": "phi", "input": [str(lab)], "lhs": str(x), "rhs": str(y)})
                break
    return out


# -- multipliers ----------------------------------------------------------------------

class Multiplier:
    """A pair (L, R) with L(g) = m g and R(g) = g m for a multiplier m."""

    def __init__(self, L, R, name="m"):
        self.L = L
        self.R = R
        self.name = name

    def left(self, g):
        return self.L(g)

    def right(self, g):
        return self.R(g)


def multiplier_of(data, f):
    mu = data.mu
    L = Operator(1, 1, lambda k: mu(f.tensor(Vec.basis(*k))), "f*")
    R = Operator(1, 1, lambda k: mu(Vec.basis(*k).tensor(f)), "*f")
    return Multiplier(L, R, repr(f))


def unit_multiplier():
    return Multiplier(ID, ID, "1")


def multiplier_laws(data, m, prefix="multiplier"):
    mu = data.mu
    two = legs_of(data, 2)
    return [
        Law(f"{prefix}.left", "L(fg) = L(f)g", compose(m.L, mu), compose(mu, otimes(m.L, ID)), two),
        Law(f"{prefix}.right", "R(fg) = fR(g)", compose(m.R, mu), compose(mu, otimes(ID, m.R)), two),
        Law(f"{prefix}.balanced", "f L(g) = R(f) g",
            compose(mu, otimes(ID, m.L)), compose(mu, otimes(m.R, ID)), two),
    ]


def multiplier_check(data, m, w=3):
    radius = _radius(w)
    rep = Report(data.name, radius)
    for c in run_laws(multiplier_laws(data, m), radius):
        rep.add(c)
    return rep
