"""Modular data of the Haar functional.

psi = phi o S is right invariant, nu relates psi to phi, sigma is the
modular automorphism of phi, rho = S sigma^-1 S^-1 plays the same role for
psi, and delta is the modular element, kept as a multiplier.
"""

from .freemod import (ID, TAU, Eliminator, Functional, Operator, Vec, compose,
                      invert_on_span, nullspace, otimes, window_tuples)
from .qgcore import (Law, MissingData, Multiplier, Report, _radius, legs_of,
                     multiplier_laws, normalizing_elements, run_laws)


def left_invariant_functionals(labels, gamma_l):
    """Basis of {w : (id (x) w)gamma_l(f (x) g) = w(f) g for all basis f, g}.

    Each solution is a dict label -> coefficient.
    """
    cols = {b: {} for b in labels}
    for f in labels:
        for g in labels:
            for (a, b), c in gamma_l.image((f, g)).items():
                if b not in cols:
                    raise ValueError(f"gamma_l leaves the basis at {b!r}")
                key = (f, g, a)
                cols[b][key] = cols[b].get(key, 0) + c
            key = (f, g, g)
            cols[f][key] = cols[f].get(key, 0) - 1
    vectors = [{k: c for k, c in cols[b].items() if c} for b in labels]
    sols = nullspace(vectors)
    return [{labels[i]: c for i, c in rel.items()} for rel in sols]


def invariant_space_dim(data):
    if not data.finite:
        raise MissingData("invariant_space_dim is only supported for finite dimensional instances")
    return len(left_invariant_functionals(data.labels(), data.galois["gamma_l"]))


def right_haar(data, S=None):
    if S is None:
        S = data.crosscheck.get("S") or data.antipode()[0]
    psi = compose(data.phi, S)
    psi.name = "psi"
    return psi


def _normalizer(data, functional, radius=None):
    radius = data.search_radius if radius is None else radius
    for b in data.labels(radius):
        v = functional.at(b)
        if v:
            return Vec.basis(b) / v
    raise MissingData(f"{data.name}: no normalizing element in the search window")


def compute_nu(data, psi=None, c=None):
    """nu(f) = (psi (x) id) tau gamma_l^-1 gamma_r (f (x) c) with phi(c) = 1."""
    psi = psi or right_haar(data)
    c = c if c is not None else normalizing_elements(data, 1)[0]
    gl_inv, gr = data.inverse("gamma_l"), data.galois["gamma_r"]
    pid = otimes(psi, ID)

    def rule(k):
        return pid(TAU(gl_inv(gr(Vec.basis(*k).tensor(c)))))
    return Operator(1, 1, rule, "nu")


def compute_sigma(data):
    """sigma with phi(fg) = phi(g sigma(f)), solved exactly on a finite basis."""
    if not data.finite:
        s = data.crosscheck.get("sigma")
        if s is None:
            raise MissingData("sigma requires closed form on infinite instances")
        return s
    labels = data.labels()
    phi, mu = data.phi, data.mu
    elim = Eliminator()
    for b in labels:
        elim.add({g: phi(mu.image((g, b))) for g in labels if phi(mu.image((g, b)))}, b)

    table = {}
    for f in labels:
        target = {g: phi(mu.image((f, g))) for g in labels if phi(mu.image((f, g)))}
        combo = elim.express(target)
        if combo is None:
            raise MissingData(f"no sigma({f}) solves phi(f g) = phi(g sigma(f))")
        table[(f,)] = Vec({(t,): x for t, x in combo.items()})
    return Operator(1, 1, lambda k: table[k], "sigma")


def _eta_parts(data, S, S_inv, c):
    if S is None or S_inv is None:
        S, S_inv = data.antipode()
    psi = right_haar(data, S)
    c = c if c is not None else _normalizer(data, psi)
    # G(x (x) y) = sum y_(1) phi(x S(y_(2)))
    G = compose(otimes(ID, data.phi), otimes(S_inv, ID), TAU, data.galois["rho_l"], otimes(ID, S))
    return S, S_inv, c, G


def compute_eta(data, S=None, S_inv=None, c=None):
    """eta with phi(fh) = psi(h eta(f)), where psi(c) = 1.

    eta(f) = G(T^-1(c (x) f)) with T(x (x) y) = sum S(x_(1))y (x) x_(2),
    that is T = (S(x)id) rho_l (S^-1(x)id) tau, and G as in ``_eta_parts``.
    """
    S, S_inv, c, G = _eta_parts(data, S, S_inv, c)
    T_inv = compose(TAU, otimes(S, ID), data.inverse("rho_l"), otimes(S_inv, ID))

    def rule(k):
        return G(T_inv(c.tensor(Vec.basis(*k))))
    return Operator(1, 1, rule, "eta")


def compute_eta_literal(data, S=None, S_inv=None, c=None):
    """The variant with T = (S(x)id) gamma_l, which applies S after multiplying.

    Kept for comparison: it disagrees with phi(fh) = psi(h eta(f)) already on
    group algebras of groups with elements of order > 2.
    """
    S, S_inv, c, G = _eta_parts(data, S, S_inv, c)
    T_inv = compose(data.inverse("gamma_l"), otimes(S_inv, ID))

    def rule(k):
        return G(T_inv(c.tensor(Vec.basis(*k))))
    return Operator(1, 1, rule, "eta_literal")


def _inverse_1(data, op, closed_name):
    if data.finite:
        return invert_on_span(op, data.labels(), name=op.name + "^-1")
    inv = data.crosscheck.get(closed_name)
    if inv is None:
        raise MissingData(f"{op.name}^-1 requires closed form on infinite instances")
    return inv


def compute_rho(data, sigma=None, S=None, S_inv=None):
    if S is None or S_inv is None:
        S, S_inv = data.antipode()
    sigma = sigma or compute_sigma(data)
    sigma_inv = _inverse_1(data, sigma, "sigma_inv")
    rho = compose(S, sigma_inv, S_inv)
    rho.name = "rho"
    return rho


def delta_multiplier(data, f):
    phi = data.phi
    pf = phi(f)
    if not pf:
        raise MissingData("delta witness f must have phi(f) != 0")
    gr, rr = data.galois["gamma_r"], data.galois["rho_r"]
    pid = otimes(phi, ID)
    L = Operator(1, 1, lambda k: pid(gr(f.tensor(Vec.basis(*k)))) / pf, "L_delta")
    R = Operator(1, 1, lambda k: pid(rr(Vec.basis(*k).tensor(f))) / pf, "R_delta")
    return Multiplier(L, R, "delta")


def compute_delta(data, witness=None):
    """delta from (phi (x) id)Delta(f) = phi(f) delta in Galois form."""
    f = witness if witness is not None else normalizing_elements(data, 1)[0]
    return delta_multiplier(data, f)


def delta_element(data, delta=None):
    """For unital instances, the element L_delta(1)."""
    if data.unit is None:
        return None
    delta = delta or compute_delta(data)
    return delta.L(data.unit)


class ModularData:
    def __init__(self, psi, nu, nu_inv, sigma, sigma_inv, rho, delta):
        self.psi = psi
        self.nu = nu
        self.nu_inv = nu_inv
        self.sigma = sigma
        self.sigma_inv = sigma_inv
        self.rho = rho
        self.delta = delta


def modular_data(data):
    key = "modular"
    if key in data._memo:
        return data._memo[key]
    S, S_inv = data.antipode()
    psi = right_haar(data, S)
    nu = compute_nu(data, psi)
    nu_inv = _inverse_1(data, nu, "nu_inv")
    sigma = compute_sigma(data)
    sigma_inv = _inverse_1(data, sigma, "sigma_inv")
    rho = compose(S, sigma_inv, S_inv)
    rho.name = "rho"
    md = ModularData(psi, nu, nu_inv, sigma, sigma_inv, rho, compute_delta(data))
    data._memo[key] = md
    return md


def modular_laws(data, md=None):
    md = md or modular_data(data)
    eps = data.counit()
    S, S_inv = data.antipode()
    mu, phi = data.mu, data.phi
    psi, nu, sigma, rho, delta = md.psi, md.nu, md.sigma, md.rho, md.delta
    one, two = legs_of(data, 1), legs_of(data, 2)
    gr, gl = data.galois["gamma_r"], data.galois["gamma_l"]
    witnesses = normalizing_elements(data, 2)
    d2 = delta_multiplier(data, witnesses[1])
    S2 = compose(S, S)
    laws = [
        Law("modular.psi-right-invariant", "(psi(x)id)gamma_r = psi(x)id",
            compose(otimes(psi, ID), gr), otimes(psi, ID), two),
        Law("modular.nu-defining", "psi(hf) = phi(h nu(f))",
            compose(psi, mu), compose(phi, mu, otimes(ID, nu)), two),
        Law("modular.psi-is-phi-nu", "psi = phi nu", psi, compose(phi, nu), one),
        Law("modular.nu-inverse", "nu^-1 nu = id = nu nu^-1 (first form)", compose(md.nu_inv, nu), ID, one),
        Law("modular.nu-inverse-right", "nu nu^-1 = id", compose(nu, md.nu_inv), ID, one),
        Law("modular.sigma-defining", "phi(fg) = phi(g sigma(f))",
            compose(phi, mu), compose(phi, mu, TAU, otimes(sigma, ID)), two),
        Law("modular.sigma-multiplicative", "sigma(fg) = sigma(f)sigma(g)",
            compose(sigma, mu), compose(mu, otimes(sigma, sigma)), two),
        Law("modular.phi-sigma-invariant", "phi sigma = phi", compose(phi, sigma), phi, one),
        Law("modular.sigma-inverse", "sigma^-1 sigma = id", compose(md.sigma_inv, sigma), ID, one),
        Law("modular.S2-sigma-commute", "S^2 sigma = sigma S^2", compose(S2, sigma), compose(sigma, S2), one),
        Law("modular.rho-defining", "psi(fg) = psi(g rho(f))",
            compose(psi, mu), compose(psi, mu, TAU, otimes(rho, ID)), two),
        Law("modular.delta-witnesses-agree-left", "L_delta is independent of the witness",
            delta.L, d2.L, one),
        Law("modular.delta-witnesses-agree-right", "R_delta is independent of the witness",
            delta.R, d2.R, one),
    ]
    laws += multiplier_laws(data, delta, prefix="modular.delta-multiplier")
    LL = otimes(delta.L, delta.L)
    laws += [
        Law("modular.delta-grouplike", "gamma_r(L_delta f (x) g) = (L_delta(x)L_delta)gamma_r(f(x)g)",
            compose(gr, otimes(delta.L, ID)), compose(LL, gr), two),
        Law("modular.delta-counit", "eps(L_delta f) = eps(f)", compose(eps, delta.L), eps, one),
        Law("modular.delta-antipode", "S L_delta S^-1 R_delta = id",
            compose(S, delta.L, S_inv, delta.R), ID, one),
        Law("modular.delta-right-modular", "L_delta (id(x)psi)gamma_l(f(x)g) = psi(f) g",
            compose(delta.L, otimes(ID, psi), gl), otimes(psi, ID), two),
    ]
    return laws


def _crosscheck_laws(data, md):
    cc = data.crosscheck
    one = legs_of(data, 1)
    laws = []
    for key, mine in (("psi", md.psi), ("nu", md.nu), ("sigma", md.sigma), ("rho", md.rho)):
        if key in cc:
            laws.append(Law(f"modular.crosscheck.{key}", f"{key} matches the closed form", mine, cc[key], one))
    if "delta" in cc:
        laws.append(Law("modular.crosscheck.delta-left", "L_delta matches the closed form",
                        md.delta.L, cc["delta"].L, one))
        laws.append(Law("modular.crosscheck.delta-right", "R_delta matches the closed form",
                        md.delta.R, cc["delta"].R, one))
    return laws


def modular_report(data, w=3, eta_crosscheck=True):
    radius = _radius(w)
    rep = Report(data.name, radius)
    md = modular_data(data)
    laws = modular_laws(data, md) + _crosscheck_laws(data, md)
    if data.finite and eta_crosscheck:
        eta = compute_eta(data)
        mu = data.mu
        two, one = legs_of(data, 2), legs_of(data, 1)
        laws.append(Law("modular.eta-defining", "phi(fh) = psi(h eta(f))",
                        compose(data.phi, mu), compose(md.psi, mu, TAU, otimes(eta, ID)), two))
        laws.append(Law("modular.sigma-is-nu-eta", "sigma = nu eta (second route)",
                        md.sigma, compose(md.nu, eta), one))
    for c in run_laws(laws, radius):
        rep.add(c)
    if data.finite:
        dim = invariant_space_dim(data)
        rep.record("modular.invariant-space-dim", "left invariant functionals form a line",
                   dim == 1, {"dimension": dim})
    if data.unit is not None and "delta_element" in data.crosscheck:
        got = delta_element(data, md.delta)
        want = data.crosscheck["delta_element"]
        rep.record("modular.crosscheck.delta-element", "L_delta(1) matches the closed form",
                   got == want, {"lhs": repr(got), "rhs": repr(want)})
    return rep
