"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as its coefficient vector in the power basis
1, z, z^2, ... reduced modulo the n-th cyclotomic polynomial, so two
elements are equal exactly when their coefficient tuples are equal.

Plain ``int`` and ``Fraction`` values mix freely with ``Scalar`` and
are treated as rational constants of whatever field they meet.
"""

from fractions import Fraction
from functools import lru_cache


class FieldMismatch(ValueError):
    pass


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / lead
        q[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return _trim(q), _trim(num[: len(den) - 1])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, cyclotomic_polynomial(d))
            assert not r
    return tuple(p)


class FieldSpec:
    """The field Q(zeta_n); conductor 1 is Q itself."""

    _instances = {}

    def __new__(cls, conductor: int = 1):
        if not isinstance(conductor, int) or conductor < 1:
            raise ValueError(f"bad conductor {conductor!r}")
        obj = cls._instances.get(conductor)
        if obj is None:
            obj = super().__new__(cls)
            obj.conductor = conductor
            obj.modulus = cyclotomic_polynomial(conductor)
            obj.degree = len(obj.modulus) - 1
            cls._instances[conductor] = obj
        return obj

    def __reduce__(self):
        return (FieldSpec, (self.conductor,))

    def __repr__(self):
        return f"FieldSpec({self.conductor})"

    def reduce(self, poly):
        poly = [Fraction(c) for c in poly]
        m = self.modulus
        d = self.degree
        for top in range(len(poly) - 1, d - 1, -1):
            c = poly[top]
            if c:
                # modulus is monic
                for i in range(d):
                    poly[top - d + i] -= c * m[i]
                poly[top] = Fraction(0)
        poly = poly[:d]
        return tuple(poly + [Fraction(0)] * (d - len(poly)))

    def element(self, coeffs):
        return Scalar(self, self.reduce(coeffs))

    def zero(self):
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self):
        return self.element([1])

    def zeta(self, k: int = 1):
        return root_of_unity(self, k)

    def from_literal(self, text: str):
        """Parse "p0/q0,p1/q1,..." (coefficients of 1, z, z^2, ...).

        Over a degree one field the result is a plain Fraction.
        """
        parts = [t.strip() for t in str(text).split(",")]
        if not parts or any(t == "" for t in parts):
            raise ValueError(f"bad scalar literal {text!r}")
        try:
            coeffs = [Fraction(t) for t in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar literal {text!r}") from exc
        s = self.element(coeffs)
        if self.degree == 1:
            return s.coeffs[0]
        return s


class Scalar:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(
                    f"cannot combine elements of Q(z{self.field.conductor}) "
                    f"and Q(z{other.field.conductor})")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.reduce(_poly_mul(list(self.coeffs), list(o.coeffs))))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in Q(z%d)" % self.field.conductor)
        # extended Euclid in Q[x]; the modulus is irreducible
        r0, r1 = list(self.field.modulus), _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        c = r1[0]
        return Scalar(self.field, self.field.reduce([x / c for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Scalar(self.field, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and self.is_rational()
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.conductor, self.coeffs))

    def to_literal(self) -> str:
        c = _trim(self.coeffs) or [Fraction(0)]
        return ",".join(str(x) for x in c)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def root_of_unity(spec: FieldSpec, k: int) -> Scalar:
    """zeta_n ** k in canonical form."""
    n = spec.conductor
    k %= n
    return spec.element([0] * k + [1])


def scalar_arith(a, b, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def order_of(x: Scalar, limit: int = 10_000) -> int:
    one = x.field.one()
    y = x
    for k in range(1, limit + 1):
        if y == one:
            return k
        y = y * x
    raise ValueError("element has no finite order below the limit")


def to_literal(c) -> str:
    if isinstance(c, Scalar):
        return c.to_literal()
    return str(Fraction(c))
