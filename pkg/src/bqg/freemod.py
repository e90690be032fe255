"""Finitely supported vectors, tensors and rule-defined operators.

A ``Vec`` of rank k is a finitely supported function on k-tuples of basis
labels; rank 1 models elements of H, rank 2 elements of H (x) H and rank 0
plain scalars.  Operators are given by a rule on basis tuples and extended
linearly; they are never materialised as global matrices.
"""

from fractions import Fraction
from itertools import product


class ArityError(ValueError):
    pass


class NotInvertible(ValueError):
    def __init__(self, message, kernel=None):
        super().__init__(message)
        self.kernel = kernel


def exact_inverse(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def sort_key(key):
    return tuple((type(x).__name__, str(x)) for x in key)


class Vec:
    """A finitely supported linear combination of basis tuples."""

    __slots__ = ("rank", "_d")

    def __init__(self, data=None, rank=1):
        self.rank = rank
        d = {}
        if data:
            for k, c in (data.items() if isinstance(data, dict) else data):
                if not isinstance(k, tuple):
                    k = (k,)
                if len(k) != rank:
                    raise ArityError(f"key {k!r} does not have rank {rank}")
                d[k] = d.get(k, 0) + c
        self._d = {k: c for k, c in d.items() if c}

    @classmethod
    def _raw(cls, d, rank):
        v = cls.__new__(cls)
        v.rank = rank
        v._d = d
        return v

    @classmethod
    def basis(cls, *labels, coeff=1):
        return cls._raw({tuple(labels): coeff} if coeff else {}, len(labels))

    @classmethod
    def zero(cls, rank=1):
        return cls._raw({}, rank)

    @classmethod
    def scalar_vec(cls, c):
        return cls._raw({(): c} if c else {}, 0)

    def items(self):
        return self._d.items()

    def keys(self):
        return self._d.keys()

    def coeff(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return self._d.get(key, 0)

    def scalar(self):
        if self.rank != 0:
            raise ArityError("only rank 0 vectors are scalars")
        return self._d.get((), 0)

    def support(self):
        return list(self._d)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self):
        return not self._d

    def __eq__(self, other):
        if isinstance(other, Vec):
            return self.rank == other.rank and self._d == other._d
        if other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self._d.items())))

    def _combine(self, other, sign):
        if not isinstance(other, Vec):
            if other == 0:
                return self
            return NotImplemented
        if other.rank != self.rank and self._d and other._d:
            raise ArityError(f"cannot add rank {self.rank} and rank {other.rank}")
        rank = self.rank if self._d else other.rank
        d = dict(self._d)
        for k, c in other._d.items():
            v = d.get(k, 0) + (c if sign > 0 else -c)
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Vec._raw(d, rank)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Vec._raw({k: -c for k, c in self._d.items()}, self.rank)

    def __mul__(self, c):
        if isinstance(c, Vec):
            return NotImplemented
        if not c:
            return Vec.zero(self.rank)
        return Vec._raw({k: v * c for k, v in self._d.items() if v * c}, self.rank)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * exact_inverse(c)

    def tensor(self, other):
        d = {}
        for k1, c1 in self._d.items():
            for k2, c2 in other._d.items():
                d[k1 + k2] = c1 * c2
        return Vec._raw({k: c for k, c in d.items() if c}, self.rank + other.rank)

    def permute(self, perm):
        """Reorder legs: new leg i carries old leg perm[i] (0-based)."""
        return Vec._raw({tuple(k[p] for p in perm): c for k, c in self._d.items()}, self.rank)

    def sorted_items(self):
        return sorted(self._d.items(), key=lambda kc: sort_key(kc[0]))

    def __repr__(self):
        if not self._d:
            return "0"
        parts = []
        for k, c in self.sorted_items():
            label = "()" if not k else "(x)".join(str(x) for x in k)
            parts.append(f"{c}*[{label}]" if c != 1 else f"[{label}]")
        return " + ".join(parts)


def vec(*pairs):
    """vec(("a", 1), ("b", 2)) for rank 1 entries."""
    return Vec(pairs)


def tensor(*vs):
    out = Vec.scalar_vec(1)
    for v in vs:
        out = out.tensor(v)
    return out


class Operator:
    """Linear map from rank ``n_in`` to rank ``n_out`` tensors given by a rule.

    ``rule`` receives a basis tuple of length ``n_in`` and returns a Vec of
    rank ``n_out`` (or a scalar when ``n_out`` is 0).  Images are memoised;
    rules must therefore be pure.
    """

    def __init__(self, n_in, n_out, rule, name="op", cache=True):
        self.n_in = n_in
        self.n_out = n_out
        self.rule = rule
        self.name = name
        self._cache = {} if cache else None

    def image(self, key):
        cache = self._cache
        if cache is not None:
            v = cache.get(key)
            if v is not None:
                return v
        v = self.rule(key)
        if not isinstance(v, Vec):
            v = Vec.scalar_vec(v)
        if v.rank != self.n_out and v:
            raise ArityError(f"{self.name}: rule returned rank {v.rank}, expected {self.n_out}")
        if not v and v.rank != self.n_out:
            v = Vec.zero(self.n_out)
        if cache is not None:
            cache[key] = v
        return v

    def apply(self, x):
        if not isinstance(x, Vec):
            raise TypeError("operators act on Vec values")
        if x.rank != self.n_in and x:
            raise ArityError(f"{self.name} expects rank {self.n_in}, got rank {x.rank}")
        if len(x) == 1:
            (k, c), = x.items()
            img = self.image(k)
            return img if c == 1 else img * c
        d = {}
        for k, c in x.items():
            for k2, c2 in self.image(k).items():
                d[k2] = d.get(k2, 0) + c * c2
        return Vec._raw({k: v for k, v in d.items() if v}, self.n_out)

    def __call__(self, x):
        return self.apply(x)

    def on(self, *labels):
        """Image of a single basis tuple."""
        return self.image(tuple(labels))

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self):
        return f"<{self.name}: {self.n_in}->{self.n_out}>"


class Functional(Operator):
    """An operator with values in rank 0; calling it returns the scalar."""

    def __init__(self, rule, name="functional", n_in=1, cache=True):
        super().__init__(n_in, 0, rule, name, cache)

    def __call__(self, x):
        return self.apply(x).scalar()

    def at(self, *labels):
        return self.image(tuple(labels)).scalar()


def _make(n_in, n_out, rule, name):
    if n_out == 0:
        return Functional(rule, name, n_in)
    return Operator(n_in, n_out, rule, name)


def identity(rank=1):
    return Operator(rank, rank, lambda k: Vec._raw({k: 1}, rank), "id")


ID = identity(1)
TAU = Operator(2, 2, lambda k: Vec._raw({(k[1], k[0]): 1}, 2), "tau")


def zero_map(n_in=1, n_out=1):
    return _make(n_in, n_out, lambda k: Vec.zero(n_out), "0")


def compose(*ops):
    """compose(A, B, C) = A o B o C."""
    if len(ops) == 1:
        return ops[0]
    for a, b in zip(ops, ops[1:]):
        if a.n_in != b.n_out:
            raise ArityError(f"cannot compose {a.name} after {b.name}")
    last = ops[-1]
    rest = ops[:-1]

    def rule(k):
        v = last.image(k)
        for op in reversed(rest):
            v = op.apply(v)
        return v
    return _make(last.n_in, ops[0].n_out, rule, "(" + " o ".join(o.name for o in ops) + ")")


def otimes(*ops):
    """Tensor product of operators acting on consecutive legs."""
    n_in = sum(o.n_in for o in ops)
    n_out = sum(o.n_out for o in ops)
    cuts = []
    pos = 0
    for o in ops:
        cuts.append((pos, pos + o.n_in))
        pos += o.n_in

    def rule(k):
        out = {(): 1}
        for o, (a, b) in zip(ops, cuts):
            img = o.image(k[a:b])
            if not img:
                return Vec.zero(n_out)
            nxt = {}
            for k1, c1 in out.items():
                for k2, c2 in img.items():
                    nxt[k1 + k2] = c1 * c2
            out = nxt
        return Vec._raw({kk: c for kk, c in out.items() if c}, n_out)
    return _make(n_in, n_out, rule, "(" + "(x)".join(o.name for o in ops) + ")")


def add_ops(a, b, sign=1):
    if (a.n_in, a.n_out) != (b.n_in, b.n_out):
        raise ArityError("cannot add operators of different shapes")
    return _make(a.n_in, a.n_out,
                 lambda k: a.image(k) + b.image(k) if sign > 0 else a.image(k) - b.image(k),
                 f"({a.name}{'+' if sign > 0 else '-'}{b.name})")


def scale_op(op, c):
    return _make(op.n_in, op.n_out, lambda k: op.image(k) * c, f"{c}*{op.name}")


def leg(op, legs, rank):
    """The operator acting as ``op`` on the given legs (1-based) of a rank tensor.

    When ``op`` changes the number of legs its outputs are placed, in order,
    at the position of the smallest listed leg.
    """
    legs = list(legs)
    if len(legs) != op.n_in:
        raise ArityError(f"{op.name} needs {op.n_in} legs, got {len(legs)}")
    if len(set(legs)) != len(legs) or any(not 1 <= i <= rank for i in legs):
        raise ArityError(f"legs {legs} out of range for rank {rank}")
    idx = [i - 1 for i in legs]
    others = [i for i in range(rank) if i not in idx]
    same = op.n_in == op.n_out
    out_rank = rank - op.n_in + op.n_out
    first = min(idx)

    def rule(k):
        sub = tuple(k[i] for i in idx)
        img = op.image(sub)
        d = {}
        for ok, c in img.items():
            if same:
                nk = list(k)
                for i, x in zip(idx, ok):
                    nk[i] = x
                nk = tuple(nk)
            else:
                before = tuple(k[i] for i in others if i < first)
                after = tuple(k[i] for i in others if i > first)
                nk = before + ok + after
            d[nk] = d.get(nk, 0) + c
        return Vec._raw({kk: c for kk, c in d.items() if c}, out_rank)
    name = op.name + "^" + "".join(str(i) for i in legs)
    return _make(rank, out_rank, rule, name)


def leg_apply(op, legs, x):
    return leg(op, legs, x.rank).apply(x)


def matrix_operator(table, n_in, n_out, name="matrix"):
    """Operator from an explicit dict key -> Vec; missing keys map to zero."""
    def rule(k):
        v = table.get(k)
        return v if v is not None else Vec.zero(n_out)
    return _make(n_in, n_out, rule, name)


class Eliminator:
    """Incremental exact row reduction of sparse vectors.

    Rows are kept in reduced echelon form.  Each row remembers the linear
    combination of the inserted vectors that produced it, which gives
    kernel relations and solutions of linear systems for free.
    """

    def __init__(self):
        self.rows = {}      # pivot key -> (row dict, combination dict)
        self.order = []

    def _reduce(self, v, combo):
        v = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = v.get(p, 0)
            if not c:
                continue
            row, rc = self.rows[p]
            for k, x in row.items():
                y = v.get(k, 0) - c * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            for t, x in rc.items():
                y = combo.get(t, 0) - c * x
                if y:
                    combo[t] = y
                else:
                    combo.pop(t, None)
        return v, combo

    def add(self, v, tag):
        """Insert vector ``v`` (a dict) labelled ``tag``.

        Returns None when v is independent of the previous vectors, else the
        kernel relation {tag: coeff} expressing a vanishing combination.
        """
        if isinstance(v, Vec):
            v = dict(v.items())
        rem, combo = self._reduce(v, {tag: 1})
        if not rem:
            return combo
        p = next(iter(rem))
        inv = exact_inverse(rem[p])
        row = {k: x * inv for k, x in rem.items()}
        rc = {t: x * inv for t, x in combo.items()}
        for q, (orow, oc) in self.rows.items():
            c = orow.get(p, 0)
            if c:
                for k, x in row.items():
                    y = orow.get(k, 0) - c * x
                    if y:
                        orow[k] = y
                    else:
                        orow.pop(k, None)
                for t, x in rc.items():
                    y = oc.get(t, 0) - c * x
                    if y:
                        oc[t] = y
                    else:
                        oc.pop(t, None)
        self.rows[p] = (row, rc)
        self.order.append(p)
        return None

    def express(self, v):
        """Coefficients {tag: c} with sum c * v_tag == v, or None."""
        if isinstance(v, Vec):
            v = dict(v.items())
        rem, combo = self._reduce(v, {})
        if rem:
            return None
        return {t: -c for t, c in combo.items()}

    @property
    def rank(self):
        return len(self.rows)


def nullspace(vectors):
    """Basis of {c : sum c_i v_i = 0} for a list of sparse vectors."""
    elim = Eliminator()
    out = []
    for i, v in enumerate(vectors):
        rel = elim.add(v, i)
        if rel is not None:
            out.append(rel)
    return out


def rank_of(vectors):
    elim = Eliminator()
    for i, v in enumerate(vectors):
        elim.add(v, i)
    return elim.rank


def invert_on_span(op, basis, name=None):
    """Exact inverse of ``op`` restricted to the span of the basis tuples.

    For operators on rank 1 the basis may be given as plain labels (which
    may themselves be tuples); otherwise it must list full key tuples.
    """
    if op.n_in == 1:
        basis = [(b,) for b in basis]
    else:
        basis = [tuple(b) for b in basis]
    allowed = set(basis)
    elim = Eliminator()
    for b in basis:
        img = op.image(b)
        stray = [k for k in img.keys() if k not in allowed]
        if stray:
            raise NotInvertible(f"{op.name} maps {b!r} outside the given span (to {stray[0]!r})")
        rel = elim.add(dict(img.items()), b)
        if rel is not None:
            kernel = Vec(rel, len(b))
            raise NotInvertible(f"{op.name} is not invertible: kernel vector {kernel!r}", kernel)
    table = {}
    for b in basis:
        combo = elim.express({b: 1})
        table[b] = Vec._raw(dict(combo), len(b))

    def rule(k):
        v = table.get(k)
        if v is None:
            raise NotInvertible(f"inverse of {op.name} is only known on the given span, not at {k!r}")
        return v
    return _make(op.n_out, op.n_in, rule, name or f"{op.name}^-1")


class BasisModel:
    """Enumeration of basis labels by window radius."""

    finite = True

    def window(self, radius):
        raise NotImplementedError

    def length(self, label):
        return 0


class FiniteBasis(BasisModel):
    def __init__(self, labels):
        self.labels = list(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    def window(self, radius=0):
        return list(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


def window_tuples(models, radius):
    """Basis tuples over several legs whose total length is at most radius.

    Finite models contribute length 0, so for finite-dimensional factors this
    is the full product basis.
    """
    wins = [[(b, m.length(b)) for b in m.window(radius)] for m in models]
    if all(m.finite for m in models):
        return [tuple(b for b, _ in combo) for combo in product(*wins)]
    out = []

    def rec(i, budget, acc):
        if i == len(wins):
            out.append(tuple(acc))
            return
        for b, ln in wins[i]:
            if ln <= budget:
                acc.append(b)
                rec(i + 1, budget - ln, acc)
                acc.pop()
    rec(0, radius, [])
    return out
