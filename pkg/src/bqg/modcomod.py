"""Essential modules and comodules, the duality functors D, tensor products
and transport along morphisms.

A module is an action lam: H (x) V -> V together with a section V -> H (x) V
of lam (this stands in for the inverse of H (x)_H V = V).  A comodule is an
invertible right H-linear map eta on V (x) H.
"""

from .duality import build_dual, pontrjagin_maps
from .freemod import (ID, TAU, Eliminator, FiniteBasis, Functional, Operator, Vec,
                      compose, otimes)
from .qgcore import Law, MissingData, Report, _radius, normalizing_elements, run_laws


class ModuleData:
    def __init__(self, algebra, carrier, action, section, name="V"):
        self.algebra = algebra
        self.carrier = carrier if not isinstance(carrier, (list, tuple)) else FiniteBasis(carrier)
        self.action = action
        self.section = section
        self.name = name

    def act(self, h, v):
        return self.action(h.tensor(v))

    def __repr__(self):
        return f"<module {self.name} over {self.algebra.name}>"


class ComoduleData:
    def __init__(self, algebra, carrier, eta, eta_inv, name="V"):
        self.algebra = algebra
        self.carrier = carrier if not isinstance(carrier, (list, tuple)) else FiniteBasis(carrier)
        self.eta = eta
        self.eta_inv = eta_inv
        self.name = name

    def __repr__(self):
        return f"<comodule {self.name} over {self.algebra.name}>"


# -- catalog modules and comodules -------------------------------------------------------

def regular_module(H):
    def section(k):
        return H.local_unit(H.basis.length(k[0])).tensor(Vec.basis(*k))
    return ModuleData(H, H.basis, H.mu, Operator(1, 2, section, "sec"), f"regular({H.name})")


def _solve_normalizer(H, chi):
    for b in H.labels(H.search_radius):
        v = chi.at(b)
        if v:
            return Vec.basis(b) / v
    raise MissingData("character vanishes on the search window")


def character_module(H, chi, dim=1, name=None):
    """V = K^dim with h acting as chi(h) times the identity (chi multiplicative)."""
    labels = [f"v{i}" for i in range(dim)]
    h0 = _solve_normalizer(H, chi)
    action = Operator(2, 1, lambda k: Vec.basis(k[1]) * chi.at(k[0]), "chi")
    section = Operator(1, 2, lambda k: h0.tensor(Vec.basis(*k)), "sec")
    return ModuleData(H, labels, action, section, name or f"chi^{dim}({H.name})")


def trivial_module(H, dim=1):
    return character_module(H, H.counit(), dim, name=f"trivial^{dim}({H.name})")


def regular_comodule(H):
    return ComoduleData(H, H.basis, H.galois["gamma_r"], H.inverse("gamma_r"), f"regular({H.name})")


def trivial_comodule(H, dim=1):
    labels = [f"v{i}" for i in range(dim)]
    ident = otimes(ID, ID)
    return ComoduleData(H, labels, ident, ident, f"trivial^{dim}({H.name})")


# -- checks --------------------------------------------------------------------------------

def _legs(x, n):
    return [x.carrier] + [x.algebra.basis] * n


def module_laws(x):
    H, lam, sec = x.algebra, x.action, x.section
    laws = [
        Law("module.associativity", "lam(mu(x)id) = lam(id(x)lam)",
            compose(lam, otimes(H.mu, ID)), compose(lam, otimes(ID, lam)),
            [H.basis, H.basis, x.carrier]),
        Law("module.section", "lam sec = id (essentialness witness)", compose(lam, sec), ID, [x.carrier]),
    ]
    if H.unit is not None:
        u = H.unit
        laws.append(Law("module.unit", "lam(1(x)v) = v",
                        Operator(1, 1, lambda k: lam(u.tensor(Vec.basis(*k))), "1."), ID, [x.carrier]))
    return laws


def _essential_proxy(x, radius):
    """The window of V lies in the span of lam(h (x) v) over window pairs."""
    elim = Eliminator()
    H = x.algebra
    for h in H.labels(radius):
        for v in x.carrier.window(radius):
            elim.add(dict(x.action.image((h, v)).items()), (h, v))
    for v in x.carrier.window(radius):
        if elim.express({(v,): 1}) is None:
            return {"input": [str(v)], "detail": "not in the span of the action on the window"}
    return None


def verify_module(x, w=3):
    radius = _radius(w)
    rep = Report(x.name, radius, notes=["essentialness: proxy check"])
    for c in run_laws(module_laws(x), radius):
        rep.add(c)
    bad = _essential_proxy(x, radius)
    rep.record("module.essential-proxy", "window of V is spanned by the action", bad is None, bad)
    return rep


def comodule_laws(x):
    H, eta, eta_inv = x.algebra, x.eta, x.eta_inv
    two, three = _legs(x, 1), _legs(x, 2)
    gr, gr_inv = H.galois["gamma_r"], H.inverse("gamma_r")
    e12 = otimes(eta, ID)

    def e13_rule(k):
        v, a, b = k
        out = {}
        for (v2, b2), c in eta.image((v, b)).items():
            out[(v2, a, b2)] = out.get((v2, a, b2), 0) + c
        return Vec(out, 3)
    e13 = Operator(3, 3, e13_rule, "eta_13")
    return [
        Law("comodule.inverse-left", "eta^-1 eta = id", compose(eta_inv, eta), otimes(ID, ID), two),
        Law("comodule.inverse-right", "eta eta^-1 = id", compose(eta, eta_inv), otimes(ID, ID), two),
        Law("comodule.right-linear", "eta(id(x)mu) = (id(x)mu)(eta(x)id)",
            compose(eta, otimes(ID, H.mu)), compose(otimes(ID, H.mu), e12), three),
        Law("comodule.colinear", "(id(x)gamma_r) eta_12 (id(x)gamma_r^-1) = eta_12 eta_13",
            compose(otimes(ID, gr), e12, otimes(ID, gr_inv)), compose(e12, e13), three),
    ]


def verify_comodule(x, w=3):
    radius = _radius(w)
    rep = Report(x.name, radius, notes=["essentialness: proxy check"])
    for c in run_laws(comodule_laws(x), radius):
        rep.add(c)
    return rep


# -- duality functors -------------------------------------------------------------------

def dualize_comodule(x):
    """D(eta): F_l(f) (x) v -> (id(x)phi) eta(v (x) f), a module over the dual."""
    H = x.algebra
    dual = build_dual(H)
    pid = otimes(ID, H.phi)
    action = Operator(2, 1, lambda k: pid(x.eta.image((k[1], k[0]))), "D(eta)")
    h = normalizing_elements(H, 1)[0]
    section = Operator(1, 2, lambda k: TAU(x.eta_inv(Vec.basis(*k).tensor(h))), "sec")
    return ModuleData(dual, x.carrier, action, section, f"D({x.name})")


def dualize_module(x):
    """D(lam)(v (x) F_l f) = (id(x)F_l) tau (id(x)lam)(gamma_l^-1 tau (x) id)(id(x)sec)(f (x) v)."""
    H = x.algebra
    dual = build_dual(H)
    gl, gl_inv = H.galois["gamma_l"], H.inverse("gamma_l")
    lam, sec = x.action, x.section

    def build(inner):
        def rule(k):
            v, f = k
            out = {}
            for (h, w), c in sec.image((v,)).items():
                for (a, b), c2 in inner.image((f, h)).items():
                    for (u,), c3 in lam.image((b, w)).items():
                        out[(u, a)] = out.get((u, a), 0) + c * c2 * c3
            return Vec(out, 2)
        return rule
    fwd = Operator(2, 2, build(compose(gl_inv, TAU)), "D(lam)")
    bwd = Operator(2, 2, build(compose(TAU, gl)), "D(lam)^-1")
    return ComoduleData(dual, x.carrier, fwd, bwd, f"D({x.name})")


def roundtrip_check(x, w=3):
    """DD(x) agrees with x after transport along the Pontrjagin map."""
    radius = _radius(w)
    H = x.algebra
    if not H.finite:
        raise ValueError("roundtrip_check needs a finite dimensional algebra")
    dual, ddual, P0, P1, P2, P3 = pontrjagin_maps(H)
    rep = Report(x.name, radius, notes=["essentialness: proxy check"])
    if isinstance(x, ModuleData):
        d1 = dualize_module(x)
        rep.extend(_prefixed(verify_comodule(d1, radius), "D."))
        d2 = dualize_comodule(d1)
        rep.extend(_prefixed(verify_module(d2, radius), "DD."))
        law = Law("roundtrip.module", "DD(lam)(P(f) (x) v) = lam(f (x) v)",
                  compose(d2.action, otimes(P0, ID)), x.action, [H.basis, x.carrier])
    else:
        d1 = dualize_comodule(x)
        rep.extend(_prefixed(verify_module(d1, radius), "D."))
        d2 = dualize_module(d1)
        rep.extend(_prefixed(verify_comodule(d2, radius), "DD."))
        law = Law("roundtrip.comodule", "DD(eta)(v (x) P(f)) = (id(x)P) eta(v (x) f)",
                  compose(d2.eta, otimes(ID, P0)), compose(otimes(ID, P0), x.eta), [x.carrier, H.basis])
    rep.add(law.check(radius))
    return rep


def _prefixed(rep, prefix):
    for c in rep.checks:
        c.id = prefix + c.id
    return rep


# -- tensor products --------------------------------------------------------------------------

class PairBasis(FiniteBasis):
    def __init__(self, a, b):
        super().__init__([(x, y) for x in a.window(0) for y in b.window(0)])


def tensor(x, y):
    if isinstance(x, ModuleData) and isinstance(y, ModuleData):
        return tensor_modules(x, y)
    if isinstance(x, ComoduleData) and isinstance(y, ComoduleData):
        return tensor_comodules(x, y)
    raise TypeError("tensor needs two modules or two comodules")


def tensor_modules(x, y):
    """h . (v (x) w) = Delta(h)(v (x) w), computed as gamma_r(h (x) k)(v (x) w') for w = k w'."""
    H = x.algebra
    if y.algebra is not H:
        raise ValueError("modules over different algebras")
    gr = H.galois["gamma_r"]

    def rule(k):
        h, (v, w) = k
        out = {}
        for (kk, w2), c in y.section.image((w,)).items():
            for (a, b), c2 in gr.image((h, kk)).items():
                for (v3,), c3 in x.action.image((a, v)).items():
                    for (w3,), c4 in y.action.image((b, w2)).items():
                        key = ((v3, w3),)
                        out[key] = out.get(key, 0) + c * c2 * c3 * c4
        return Vec(out, 1)
    action = Operator(2, 1, rule, "lam_VW")
    carrier = PairBasis(x.carrier, y.carrier)
    section = _solve_section(H, carrier, action)
    return ModuleData(H, carrier, action, section, f"{x.name}(x){y.name}")


def _solve_section(H, carrier, action):
    if H.unit is not None:
        u = H.unit
        return Operator(1, 2, lambda k: u.tensor(Vec.basis(*k)), "sec")
    if not H.finite:
        raise MissingData("sections of tensor modules need a unit or a finite basis")
    elim = Eliminator()
    for h in H.labels():
        for v in carrier.window(0):
            elim.add(dict(action.image((h, v)).items()), (h, v))
    table = {}
    for v in carrier.window(0):
        combo = elim.express({(v,): 1})
        if combo is None:
            raise MissingData(f"tensor module is not essential at {v!r}")
        table[(v,)] = Vec(dict(combo), 2)
    return Operator(1, 2, lambda k: table[k], "sec")


def tensor_comodules(x, y):
    """eta_(V(x)W) = eta_V^13 eta_W^23 on V (x) W (x) H."""
    if y.algebra is not x.algebra:
        raise ValueError("comodules over different algebras")

    def build(first, second):
        # apply ``first`` on the W leg, then ``second`` on the V leg
        def rule(k):
            (v, w), h = k
            out = {}
            for (w2, h2), c in first.image((w, h)).items():
                for (v2, h3), c2 in second.image((v, h2)).items():
                    key = ((v2, w2), h3)
                    out[key] = out.get(key, 0) + c * c2
            return Vec(out, 2)
        return rule

    def build_inv(k):
        (v, w), h = k
        out = {}
        for (v2, h2), c in x.eta_inv.image((v, h)).items():
            for (w2, h3), c2 in y.eta_inv.image((w, h2)).items():
                key = ((v2, w2), h3)
                out[key] = out.get(key, 0) + c * c2
        return Vec(out, 2)
    eta = Operator(2, 2, build(y.eta, x.eta), "eta_VW")
    eta_inv = Operator(2, 2, build_inv, "eta_VW^-1")
    return ComoduleData(x.algebra, PairBasis(x.carrier, y.carrier), eta, eta_inv, f"{x.name}(x){y.name}")


def compare_modules(x, y, radius=0, relabel=None):
    """First disagreement of two actions on the same carrier (None if equal)."""
    relabel = relabel or (lambda v: v)
    for h in x.algebra.labels(radius):
        for v in x.carrier.window(radius):
            a = Vec({(relabel(k[0]),): c for k, c in x.action.image((h, v)).items()})
            b = y.action.image((h, relabel(v)))
            if a != b:
                return {"input": [str(h), str(v)], "lhs": repr(a), "rhs": repr(b)}
    return None


def compare_comodules(x, y, radius=0, relabel=None):
    relabel = relabel or (lambda v: v)
    for v in x.carrier.window(radius):
        for h in x.algebra.labels(radius):
            a = Vec({(relabel(k[0]), k[1]): c for k, c in x.eta.image((v, h)).items()}, 2)
            b = y.eta.image((relabel(v), h))
            if a != b:
                return {"input": [str(v), str(h)], "lhs": repr(a), "rhs": repr(b)}
    return None


def tensor_compatibility(x, y, radius=0):
    """D(x (x) y) = D(x) (x) D(y)."""
    if isinstance(x, ModuleData):
        return compare_comodules(dualize_module(tensor_modules(x, y)),
                                 tensor_comodules(dualize_module(x), dualize_module(y)), radius)
    return compare_modules(dualize_comodule(tensor_comodules(x, y)),
                           tensor_modules(dualize_comodule(x), dualize_comodule(y)), radius)


def unit_relabel_left(v):
    """(v0, v) -> v for the trivial one dimensional factor on the left."""
    return v[1]


# -- equivariant maps ------------------------------------------------------------------------

def module_map_laws(x, y, f):
    """f: V -> W is H-linear, and then colinear for the dual comodules."""
    dx, dy = dualize_module(x), dualize_module(y)
    return [
        Law("modmap.linear", "f lam_V = lam_W (id(x)f)", compose(f, x.action),
            compose(y.action, otimes(ID, f)), [x.algebra.basis, x.carrier]),
        Law("modmap.dual-colinear", "(f(x)id) D(lam_V) = D(lam_W)(f(x)id)",
            compose(otimes(f, ID), dx.eta), compose(dy.eta, otimes(f, ID)), [x.carrier, x.algebra.basis]),
    ]


def comodule_map_laws(x, y, f):
    """f: V -> W is colinear, and then linear for the dual modules."""
    dx, dy = dualize_comodule(x), dualize_comodule(y)
    return [
        Law("comodmap.colinear", "(f(x)id) eta_V = eta_W (f(x)id)", compose(otimes(f, ID), x.eta),
            compose(y.eta, otimes(f, ID)), [x.carrier, x.algebra.basis]),
        Law("comodmap.dual-linear", "f D(eta_V) = D(eta_W)(id(x)f)", compose(f, dx.action),
            compose(dy.action, otimes(ID, f)), [dx.algebra.basis, x.carrier]),
    ]


# -- transport along morphisms ---------------------------------------------------------------

def pullback(m, x):
    """alpha^* of a K-module: h . v = alpha(h) . v (unital source)."""
    H = m.source
    if H.unit is None:
        raise MissingData("pullback sections need a unital source")
    a = m.alpha
    action = compose(x.action, otimes(a, ID))
    u = H.unit
    section = Operator(1, 2, lambda k: u.tensor(Vec.basis(*k)), "sec")
    return ModuleData(H, x.carrier, action, section, f"{m.name}^*({x.name})")


def pushforward(m, x):
    """alpha_* of an H-comodule: V (x) K = V (x) H (x)_H K, then eta (x) id (unital source)."""
    H, K = m.source, m.target
    if H.unit is None:
        raise MissingData("pushforward needs a unital source")
    a = m.alpha
    u = H.unit

    def build(op):
        def rule(k):
            v, kk = k
            out = {}
            for (v2, h), c in op(Vec.basis(v).tensor(u)).items():
                for (z,), c2 in K.mu(a(Vec.basis(h)).tensor(Vec.basis(kk))).items():
                    out[(v2, z)] = out.get((v2, z), 0) + c * c2
            return Vec(out, 2)
        return rule
    return ComoduleData(K, x.carrier, Operator(2, 2, build(x.eta), "alpha_*eta"),
                        Operator(2, 2, build(x.eta_inv), "alpha_*eta^-1"), f"{m.name}_*({x.name})")


def modcomod_report(H, w=2):
    """Regular and trivial (co)modules, their duals, round trips and tensor compatibility."""
    radius = _radius(w)
    rep = Report(H.name, radius, notes=["essentialness: proxy check"])
    items = [regular_module(H), trivial_module(H, 2), regular_comodule(H), trivial_comodule(H, 2)]
    for x in items:
        if isinstance(x, ModuleData):
            rep.extend(_prefixed(verify_module(x, radius), f"{x.name}."))
        else:
            rep.extend(_prefixed(verify_comodule(x, radius), f"{x.name}."))
        if H.finite:
            rep.extend(_prefixed(roundtrip_check(x, radius), f"{x.name}.roundtrip."))
    if H.finite:
        bad = tensor_compatibility(items[0], items[1])
        rep.record("tensor.modules.D-compatible", "D(V(x)W) = D(V)(x)D(W) for modules", bad is None, bad)
        bad = tensor_compatibility(items[2], items[3])
        rep.record("tensor.comodules.D-compatible", "D(V(x)W) = D(V)(x)D(W) for comodules", bad is None, bad)
    return rep
