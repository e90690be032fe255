"""The dual quantum group, Fourier maps, pairings and Pontrjagin duality.

Elements of the dual are stored in F_l-coordinates: the vector f stands
for the functional F_l(f) = phi(. f).  All other Fourier maps are converted
with the modular maps: F_r = F_l sigma, G_l = F_l nu, G_r = F_l nu rho.
"""

from .freemod import (ID, TAU, Eliminator, Functional, Operator, Vec, compose, exact_inverse,
                      invert_on_span, otimes, window_tuples)
from .modular import _inverse_1, modular_data
from .qgcore import (GALOIS, Law, QuantumGroup, Report, _radius, compare_structure,
                     legs_of, run_laws)


class DualElement:
    """F_l(coords): the functional h -> phi(h coords) on the primal algebra."""

    def __init__(self, data, coords):
        self.data = data
        self.coords = coords

    def __call__(self, f):
        return self.data.phi(self.data.mu(f.tensor(self.coords)))

    def __eq__(self, other):
        return isinstance(other, DualElement) and other.data is self.data and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"F_l({self.coords!r})"


FOURIER = ("Fl", "Fr", "Gl", "Gr")


def fourier(data, f, which="Fl"):
    """F_l-coordinates of F_l(f), F_r(f), G_l(f) or G_r(f)."""
    if which == "Fl":
        return DualElement(data, f)
    md = modular_data(data)
    if which == "Fr":
        return DualElement(data, md.sigma(f))
    if which == "Gl":
        return DualElement(data, md.nu(f))
    if which == "Gr":
        return DualElement(data, md.nu(md.rho(f)))
    raise ValueError(f"unknown Fourier map {which!r}; choose from {', '.join(FOURIER)}")


def fourier_functional(data, f, which="Fl"):
    """The defining formula of a Fourier map, evaluated directly."""
    psi = modular_data(data).psi if which in ("Gl", "Gr") else data.phi
    mu = data.mu
    if which in ("Fl", "Gl"):
        return lambda h: psi(mu(h.tensor(f)))
    return lambda h: psi(mu(f.tensor(h)))


def pair(omega, f):
    """<f, omega> = omega(f) for omega a DualElement (or raw F_l-coordinates with data)."""
    return omega(f)


def pair_coords(data, c, f):
    """<f, F_l(c)> = phi(f c)."""
    return data.phi(data.mu(f.tensor(c)))


def pair_tensor(data, x, c):
    """<x, F_l (x) F_l (c)> for rank 2 vectors x and c: sum phi(x1 c1) phi(x2 c2)."""
    phi, mu = data.phi, data.mu
    total = 0
    for (a, b), s in x.items():
        for (p, q), t in c.items():
            u = phi(mu.image((a, p)))
            if u:
                total = total + s * t * u * phi(mu.image((b, q)))
    return total


def _conj(op, inner, inner_inv):
    """(inner (x) inner) op (inner^-1 (x) inner^-1)."""
    return compose(otimes(inner, inner), op, otimes(inner_inv, inner_inv))


def build_dual(data, md=None):
    """The dual bundle in F_l-coordinates (same basis labels as ``data``)."""
    key = "dual"
    if key in data._memo:
        return data._memo[key]
    md = md or modular_data(data)
    S, S_inv = data.antipode()
    eps = data.counit()
    gl, gr, rl, rr = (data.galois[g] for g in GALOIS)
    gl_i, gr_i = data.inverse("gamma_l"), data.inverse("gamma_r")
    rl_i, rr_i = data.inverse("rho_l"), data.inverse("rho_r")
    sigma, sigma_inv, nu, nu_inv = md.sigma, md.sigma_inv, md.nu, md.nu_inv
    rho = md.rho
    rho_inv = compose(S, sigma, S_inv)
    kappa = compose(nu, rho)
    kappa_inv = compose(rho_inv, nu_inv)

    mu_hat = compose(otimes(ID, data.phi), gl_i)
    mu_hat.name = "mu^"
    galois = {
        "gamma_r": compose(TAU, gl_i),
        "gamma_l": _conj(compose(TAU, rl_i), sigma, sigma_inv),
        "rho_l": _conj(compose(TAU, rr_i), kappa, kappa_inv),
        "rho_r": _conj(compose(TAU, gr_i), nu, nu_inv),
    }
    inverses = {
        "gamma_r": compose(gl, TAU),
        "gamma_l": _conj(compose(rl, TAU), sigma, sigma_inv),
        "rho_l": _conj(compose(rr, TAU), kappa, kappa_inv),
        "rho_r": _conj(compose(gr, TAU), nu, nu_inv),
    }
    for g in GALOIS:
        galois[g].name = g + "^"
        inverses[g].name = g + "^ ^-1"
    psi_hat = eps
    phi_hat = compose(eps, kappa_inv)
    phi_hat.name = "phi^"
    S_hat = compose(kappa, S_inv)
    S_hat_inv = compose(S, kappa_inv)
    cross = {"eps": data.phi, "S": S_hat, "S_inv": S_hat_inv, "psi": psi_hat}
    dual = QuantumGroup(f"dual({data.name})", data.field, data.basis, mu_hat, galois, phi_hat,
                        inverses=inverses, crosscheck=cross, search_radius=data.search_radius)
    if data.finite:
        from .qgcore import solve_local_unit
        dual.unit = solve_local_unit(dual, 0)
    else:
        if "sigma" in data.crosscheck:
            # group based: the dual keeps trivial modular data
            for k in ("sigma", "sigma_inv", "nu", "nu_inv", "rho"):
                if k in data.crosscheck:
                    dual.crosscheck[k] = data.crosscheck[k]
    dual.primal = data
    dual.primal_maps = {"kappa": kappa, "kappa_inv": kappa_inv, "S_hat": S_hat, "S_hat_inv": S_hat_inv}
    data._memo[key] = dual
    return dual


def group_dual_relabel(data):
    """Label map from dual(data) to the catalog twin, for group based instances."""
    kind = getattr(data, "kind", None)
    if kind == "fun":
        return lambda s: s
    if kind == "alg":
        return data.group.invert
    raise ValueError(f"{data.name} has no catalog dual twin")


def group_dual_twin(data):
    from .instances import function_algebra, group_algebra
    if data.kind == "fun":
        return group_algebra(data.group, name=f"alg:{data.group.name}")
    return function_algebra(data.group, name=f"fun:{data.group.name}")


def dual_laws(data, dual=None):
    dual = dual or build_dual(data)
    phi, mu = data.phi, data.mu
    S, S_inv = data.antipode()
    eps = data.counit()
    gr, rl = data.galois["gamma_r"], data.galois["rho_l"]
    two, three, four = legs_of(data, 2), legs_of(data, 3), legs_of(data, 4)
    mu_hat = dual.mu

    # phi(f mu^(a (x) b)) = (F_l a (x) F_l b)(Delta f) = sum phi(x a) phi(y) over gamma_r(f (x) b)
    def transpose_lhs(k):
        f, a, b = k
        return phi(mu(Vec.basis(f).tensor(mu_hat.image((a, b)))))

    def transpose_rhs(k):
        f, a, b = k
        total = 0
        for (x, y), c in gr.image((f, b)).items():
            total = total + c * phi(mu.image((x, a))) * phi.at(y)
        return total

    def adj_lhs(k):
        f, g, h, kk = k
        return pair_tensor(data, rl.image((f, g)), Vec.basis(h, kk))

    def adj_rhs(k):
        f, g, h, kk = k
        return pair_tensor(data, Vec.basis(f, g), dual.galois["gamma_r"].image((h, kk)))

    laws = [
        Law("duality.mu-is-transpose-of-delta", "<mu^(F_l a (x) F_l b), f> = (F_l a (x) F_l b)(Delta f)",
            Functional(transpose_lhs, "lhs", 3), Functional(transpose_rhs, "rhs", 3), three),
        Law("duality.gamma_r-adjoint-rho_l", "<rho_l(f(x)g), F_l h (x) F_l k> = <f(x)g, gamma_r^(h(x)k)>",
            Functional(adj_lhs, "lhs", 4), Functional(adj_rhs, "rhs", 4), four),
        Law("duality.psi-hat-on-products", "psi^(F_l(f)F_l(g)) = phi(S^-1(g) f)",
            compose(dual.crosscheck["psi"], mu_hat), compose(phi, mu, TAU, otimes(ID, S_inv)), two),
        Law("duality.psi-hat-is-counit", "psi^(F_l(f)) = eps(f), with psi^ = phi^ S^ from the dual's own antipode",
            compose(dual.phi, dual.antipode()[0]), eps, legs_of(data, 1)),
        Law("duality.eps-hat-is-phi", "eps^(F_l(f)) = phi(f), eps^ derived in the dual",
            dual.counit(), phi, legs_of(data, 1)),
        Law("duality.phi-hat-is-psi-hat-S-inverse", "phi^ = psi^ S^-1",
            dual.phi, compose(dual.crosscheck["psi"], dual.antipode()[1]), legs_of(data, 1)),
    ]
    return laws


def _faithful_on_window(data, form, radius):
    win = data.labels(radius)
    elim = Eliminator()
    for f in win:
        row = {}
        for g in win:
            v = form(f, g)
            if v:
                row[g] = v
        if elim.add(row, f) is not None:
            return False
    return True


def is_commutative(data, radius=0):
    for a, b in window_tuples(legs_of(data, 2), radius):
        if data.mu.image((a, b)) != data.mu.image((b, a)):
            return False
    return True


def is_cocommutative(data, radius=0):
    gl, gr = data.galois["gamma_l"], data.galois["gamma_r"]
    for a, b in window_tuples(legs_of(data, 2), radius):
        if gl.image((a, b)) != gr.image((a, b)).permute((1, 0)):
            return False
    return True


def dual_report(data, w=3, structure=True):
    radius = _radius(w)
    from .qgcore import verify_laws
    dual = build_dual(data)
    rep = Report(dual.name, radius)
    for c in run_laws(dual_laws(data, dual), radius):
        rep.add(c)
    psi_hat, S_inv = dual.crosscheck["psi"], data.antipode()[1]
    ok = _faithful_on_window(data, lambda f, g: psi_hat(dual.mu.image((f, g))), radius)
    rep.record("duality.psi-hat-faithful", "psi^(F_l(f)F_l(g)) has trivial window kernel", ok,
               {"detail": "degenerate pairing on the window"})
    c1, c2 = is_commutative(dual, radius), is_cocommutative(data, radius)
    rep.record("duality.commutative-iff-cocommutative", "dual commutative <=> primal cocommutative",
               c1 == c2, {"dual commutative": str(c1), "primal cocommutative": str(c2)})
    c1, c2 = is_cocommutative(dual, radius), is_commutative(data, radius)
    rep.record("duality.cocommutative-iff-commutative", "dual cocommutative <=> primal commutative",
               c1 == c2, {"dual cocommutative": str(c1), "primal commutative": str(c2)})
    if structure:
        inner = verify_laws(dual, "all", radius)
        for c in inner.checks:
            c.id = "dual." + c.id
            rep.add(c)
    if getattr(data, "kind", None) in ("fun", "alg") and data.finite:
        twin = group_dual_twin(data)
        diffs = compare_structure(dual, twin, radius, relabel=group_dual_relabel(data))
        rep.record("duality.group-twin", "dual matches the catalog twin under F_l relabeling",
                   not diffs, diffs[0] if diffs else None)
    return rep


# -- Pontrjagin duality ------------------------------------------------------------------

def pontrjagin_maps(data):
    """Three routes from H into the double dual, in F^_l-coordinates."""
    dual = build_dual(data)
    ddual = build_dual(dual)
    md, mdd = modular_data(data), modular_data(dual)
    S, S_inv = data.antipode()
    kappa = dual.primal_maps["kappa"]
    labels = data.labels()

    # P_0: the coordinates c with phi^(mu^(a (x) c)) = phi(f a) for all a
    phi_hat, mu_hat = dual.phi, dual.mu
    elim = Eliminator()
    for c in labels:
        elim.add({a: phi_hat(mu_hat.image((a, c))) for a in labels if phi_hat(mu_hat.image((a, c)))}, c)
    table = {}
    for f in labels:
        target = {a: data.phi(data.mu.image((f, a))) for a in labels if data.phi(data.mu.image((f, a)))}
        combo = elim.express(target)
        if combo is None:
            raise ValueError(f"P({f}) is not an element of the double dual")
        table[(f,)] = Vec({(t,): x for t, x in combo.items()})
    P0 = Operator(1, 1, lambda k: table[k], "P")
    P1 = compose(mdd.nu, S)                     # G^_l F_l S
    P2 = compose(mdd.sigma, kappa, S)           # F^_r G_r S
    # F^_l S^ G_l with G_l, and the dual Haar functional, normalised by
    # psi' = phi o S^-1 = lam psi; in our normalisation this is lam^-1 sigma S^-1
    psi, psi_alt = md.psi, compose(data.phi, S_inv)
    b = next(b for b in labels if psi.at(b))
    lam = psi_alt.at(b) * exact_inverse(psi.at(b))
    P3 = compose(md.sigma, S_inv)
    P3 = Operator(1, 1, lambda k, P3=P3, lam=lam: P3.image(k) / lam, "F^_l S^ G_l")
    for p, n in ((P1, "G^_l F_l S"), (P2, "F^_r G_r S"), (P3, "F^_l S^ G_l")):
        p.name = n
    return dual, ddual, P0, P1, P2, P3


def pontrjagin_check(data, w=3):
    radius = _radius(w)
    if not data.finite:
        raise ValueError("pontrjagin_check needs a finite dimensional instance")
    dual, ddual, P0, P1, P2, P3 = pontrjagin_maps(data)
    rep = Report(data.name, radius)
    one = legs_of(data, 1)
    S_hat = dual.antipode()[0]
    md = modular_data(data)
    # the third formula uses the right Haar functional psi' = phi o S^-1 inside G_l
    from .modular import compute_nu
    S_inv = data.antipode()[1]
    psi_alt = compose(data.phi, S_inv)
    nu_alt = compute_nu(data, psi_alt)
    rep.add(Law("pontrjagin.antipode-fourier", "S^ G'_l = F_r S^-1 where G'_l uses psi' = phi S^-1",
                compose(S_hat, nu_alt), compose(md.sigma, S_inv), one).check(radius))
    for p in (P1, P2, P3):
        rep.add(Law(f"pontrjagin.formula[{p.name}]", f"{p.name} agrees with P(f)(omega) = omega(f)",
                    p, P0, one).check(radius))
    # P(f)(omega) = omega(f): evaluate F^_l(P_1 f) on every window dual element F_l(c)
    bad = None
    for f in data.labels(radius):
        for c in data.labels(radius):
            lhs = dual.phi(dual.mu(Vec.basis(c).tensor(P1.on(f))))
            rhs = pair_coords(data, Vec.basis(c), Vec.basis(f))
            if lhs != rhs:
                bad = {"input": [str(f), str(c)], "lhs": str(lhs), "rhs": str(rhs)}
                break
        if bad:
            break
    rep.record("pontrjagin.evaluation", "P(f)(omega) = omega(f) on the window", bad is None, bad)
    try:
        P_inv = invert_on_span(P0, data.labels(), name="P^-1")
    except Exception as exc:
        rep.record("pontrjagin.bijective", "P is a bijection", False, {"detail": str(exc)})
        return rep
    rep.record("pontrjagin.bijective", "P is a bijection", True)
    transported = transport(data, P0, P_inv)
    diffs = compare_structure(transported, ddual, radius, include_inverses=True)
    rep.record("pontrjagin.double-dual-structure", "double-dual structure match", not diffs,
               diffs[0] if diffs else None)
    return rep


def transport(data, P, P_inv):
    """H with its structure maps transported along the bijection P."""
    galois = {g: compose(otimes(P, P), data.galois[g], otimes(P_inv, P_inv)) for g in GALOIS}
    inverses = {g: compose(otimes(P, P), data.inverse(g), otimes(P_inv, P_inv)) for g in GALOIS}
    mu = compose(P, data.mu, otimes(P_inv, P_inv))
    phi = compose(data.phi, P_inv)
    return QuantumGroup(f"P({data.name})", data.field, data.basis, mu, galois, phi, inverses=inverses)


# -- morphisms -------------------------------------------------------------------------------

class Morphism:
    """An algebra map alpha: H -> K with values in K (not in M(K) in general)."""

    def __init__(self, source, target, alpha, name="alpha"):
        self.source = source
        self.target = target
        self.alpha = alpha
        self.name = name

    def __call__(self, f):
        return self.alpha(f)


def morphism_laws(m):
    H, K, a = m.source, m.target, m.alpha
    two, one = legs_of(H, 2), legs_of(H, 1)
    aa = otimes(a, a)
    return [
        Law("morphism.multiplicative", "alpha(fg) = alpha(f)alpha(g)",
            compose(a, H.mu), compose(K.mu, aa), two),
        Law("morphism.galois", "gamma_r^K (alpha(x)alpha) = (alpha(x)alpha) gamma_r^H",
            compose(K.galois["gamma_r"], aa), compose(aa, H.galois["gamma_r"]), two),
        Law("morphism.counit", "eps_K alpha = eps_H", compose(K.counit(), a), H.counit(), one),
        Law("morphism.antipode", "alpha S_H = S_K alpha",
            compose(a, H.antipode()[0]), compose(K.antipode()[0], a), one),
    ]


class DualMorphism:
    """alpha^ : K^ -> M(H^), omega -> the multiplier given by omega o alpha."""

    def __init__(self, m):
        if m.source.unit is None:
            raise ValueError("multiplier-valued duals are realised for unital sources only")
        self.m = m

    def transpose(self, c):
        """Route A: the functional f -> <alpha(f), F_l^K(c)>."""
        K, a = self.m.target, self.m.alpha
        return lambda f: pair_coords(K, c, a(f))

    def left(self, c):
        """Route B: L(g) = (theta S^-1 (x) id) gamma_r(g (x) 1), theta = omega o alpha."""
        H = self.m.source
        theta = self.transpose(c)
        S = H.antipode()[1]
        gr, unit = H.galois["gamma_r"], H.unit

        def rule(k):
            out = Vec.zero(1)
            for (x, y), coef in gr(Vec.basis(*k).tensor(unit)).items():
                t = theta(S.on(x))
                if t:
                    out = out + Vec.basis(y) * (coef * t)
            return out
        return Operator(1, 1, rule, "L_alpha^")

    def pair(self, f, c, witness=None):
        """<f, alpha^(F_l^K c)> through the left multiplier and gamma_r^-1(f (x) w), phi(w) = 1."""
        H = self.m.source
        from .qgcore import normalizing_elements
        w = witness if witness is not None else normalizing_elements(H, 1)[0]
        L = self.left(c)
        total = 0
        for (h, g), coef in H.inverse("gamma_r")(f.tensor(w)).items():
            total = total + coef * pair_coords(H, L.on(g), Vec.basis(h))
        return total


def dual_morphism(m):
    return DualMorphism(m)


def morphism_report(m, w=3):
    radius = _radius(w)
    rep = Report(m.name, radius)
    for c in run_laws(morphism_laws(m), radius):
        rep.add(c)
    d = dual_morphism(m)
    H, K = m.source, m.target
    kw = K.labels(radius)
    bad = None
    for f in H.labels(radius):
        for c in kw:
            lhs = pair_coords(K, Vec.basis(c), m.alpha.on(f))
            rhs = d.pair(Vec.basis(f), Vec.basis(c))
            if lhs != rhs:
                bad = {"input": [str(f), str(c)], "lhs": str(lhs), "rhs": str(rhs)}
                break
        if bad:
            break
    rep.record("morphism.dual-adjoint", "<alpha(f), omega> = <f, alpha^(omega)>", bad is None, bad)
    # <(alpha(x)alpha)rho_l^H(f(x)g), w1(x)w2> = <alpha f (x) alpha g, gamma_r^K^(w1(x)w2)>
    Kdual_gr = compose(TAU, K.inverse("gamma_l"))
    aa = otimes(m.alpha, m.alpha)
    bad = None
    for f, g in window_tuples(legs_of(H, 2), radius):
        x = aa(H.galois["rho_l"].on(f, g))
        y = aa.on(f, g)
        for c1 in kw:
            for c2 in kw:
                lhs = pair_tensor(K, x, Vec.basis(c1, c2))
                rhs = pair_tensor(K, y, Kdual_gr.on(c1, c2))
                if lhs != rhs:
                    bad = {"input": [str(f), str(g), str(c1), str(c2)], "lhs": str(lhs), "rhs": str(rhs)}
                    break
            if bad:
                break
        if bad:
            break
    rep.record("morphism.dual-comultiplication", "(alpha^ (x) alpha^) gamma_r^ = gamma_r^ (alpha^ (x) alpha^) in pairing form",
               bad is None, bad)
    return rep


def identity_morphism(H):
    return Morphism(H, H, ID, f"id({H.name})")


def quotient_morphism(H, K):
    """u_n -> u_(n mod k) from CZ to CZ_k (or C Z^1 onto any cyclic group algebra)."""
    n = K.group.n
    a = Operator(1, 1, lambda k: Vec.basis(k[0] % n), "quotient")
    return Morphism(H, K, a, f"{H.name}->{K.name}")


def counit_morphism(H):
    from .instances import trivial
    T = trivial()
    eps = H.counit()
    a = Operator(1, 1, lambda k: Vec.basis(0) * eps.at(*k), "eps")
    return Morphism(H, T, a, f"eps({H.name})")
