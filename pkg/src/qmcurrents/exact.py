"""Exact scalars: Gaussian rationals, pi-graded values, Laurent windows and
rational functions of the continuation parameter lambda.

Rationals are :class:`fractions.Fraction`; integral values are kept as plain
``int`` internally because the hot loops (polynomial products) are dominated by
integer coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "GaussianRational",
    "ExactValue",
    "LaurentWindow",
    "RationalFunctionLambda",
    "as_rational",
    "format_rational",
    "parse_rational",
    "ZERO",
    "ONE",
    "I_UNIT",
]


def _norm(x):
    if type(x) is int:
        return x
    if x.denominator == 1:
        return int(x.numerator)
    return x


def as_rational(x) -> Union[int, Fraction]:
    """Coerce an int, Fraction or "p/q" string into a reduced rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _norm(x)
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Union[int, Fraction]:
    text = text.strip().replace("−", "-")
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return _norm(Fraction(text))


def format_rational(x) -> str:
    x = as_rational(x)
    if type(x) is int:
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        # skips coercion; callers guarantee normalized ints/Fractions
        g = object.__new__(cls)
        object.__setattr__(g, "re", re)
        object.__setattr__(g, "im", im)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex numbers are not exact")
        return cls(x, 0)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({format_rational(self.re)} {sign} {_imag_str(abs(self.im))})"

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self.re, -self.im)

    def __add__(self, other) -> "GaussianRational":
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational._raw(_norm(self.re + other), self.im)
            return NotImplemented
        return GaussianRational._raw(_norm(self.re + other.re), _norm(self.im + other.im))

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational._raw(_norm(self.re - other), self.im)
            return NotImplemented
        return GaussianRational._raw(_norm(self.re - other.re), _norm(self.im - other.im))

    def __rsub__(self, other) -> "GaussianRational":
        return (-self) + other

    def __mul__(self, other) -> "GaussianRational":
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational._raw(_norm(self.re * other), _norm(self.im * other))
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return GaussianRational._raw(_norm(a * c), 0)
        return GaussianRational._raw(_norm(a * c - b * d), _norm(a * d + b * c))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = GaussianRational.coerce(other)
        denom = other.re * other.re + other.im * other.im
        if denom == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational._raw(_norm(Fraction(num.re) / denom), _norm(Fraction(num.im) / denom))

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return ONE / (self ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, data: Mapping) -> "GaussianRational":
        return cls(_json_rational(data.get("re", 0)), _json_rational(data.get("im", 0)))


def _json_rational(x):
    if isinstance(x, float):
        raise ValueError(f"floating-point value {x!r} is not allowed; use a \"p/q\" string")
    return as_rational(x)


def _imag_str(x) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{format_rational(x)}·i"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I_UNIT = GaussianRational(0, 1)


class ExactValue:
    """Finite sum ``sum_k c_k * pi**k`` with Gaussian-rational ``c_k``.

    Pi is a formal grading symbol; equality is coefficient-wise.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, object]] = None):
        clean: Dict[int, GaussianRational] = {}
        if terms:
            for k, c in terms.items():
                if k < 0:
                    raise ValueError("pi exponents must be non-negative")
                c = GaussianRational.coerce(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: Dict[int, GaussianRational]) -> "ExactValue":
        v = object.__new__(cls)
        v._terms = terms
        return v

    @classmethod
    def scalar(cls, c, pi_power: int = 0) -> "ExactValue":
        return cls({pi_power: c})

    @classmethod
    def coerce(cls, x) -> "ExactValue":
        if isinstance(x, ExactValue):
            return x
        return cls({0: GaussianRational.coerce(x)})

    @property
    def terms(self) -> Dict[int, GaussianRational]:
        return dict(self._terms)

    def coefficient(self, pi_power: int) -> GaussianRational:
        return self._terms.get(pi_power, ZERO)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactValue):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == ExactValue.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "ExactValue":
        if not isinstance(other, ExactValue):
            if isinstance(other, (int, Fraction, GaussianRational)):
                other = ExactValue.coerce(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ExactValue._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ExactValue":
        return ExactValue._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "ExactValue":
        if not isinstance(other, ExactValue):
            if isinstance(other, (int, Fraction, GaussianRational)):
                other = ExactValue.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ExactValue":
        return (-self) + other

    def __mul__(self, other) -> "ExactValue":
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                return ExactValue._raw({})
            return ExactValue._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, ExactValue):
            return NotImplemented
        out: Dict[int, GaussianRational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                s = out.get(k)
                out[k] = c1 * c2 if s is None else s + c1 * c2
        return ExactValue._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExactValue":
        """Division by a nonzero Gaussian rational, or by a single pi-monomial."""
        if isinstance(other, (int, Fraction, GaussianRational)):
            inv = ONE / GaussianRational.coerce(other)
            return self * inv
        if isinstance(other, ExactValue):
            if len(other._terms) != 1:
                raise ValueError("can only divide by a single pi-monomial")
            (k0, c0), = other._terms.items()
            inv = ONE / c0
            out = {}
            for k, c in self._terms.items():
                if k < k0:
                    raise ValueError("division would produce a negative power of pi")
                out[k - k0] = c * inv
            return ExactValue._raw(out)
        return NotImplemented

    def __pow__(self, n: int) -> "ExactValue":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = ExactValue.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> "ExactValue":
        return ExactValue._raw({k: c.conjugate() for k, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"ExactValue({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            c = self._terms[k]
            if k == 0:
                parts.append(str(c))
                continue
            pi = "π" if k == 1 else f"π^{k}"
            if c.im == 0:
                if c.re == 1:
                    parts.append(pi)
                elif c.re == -1:
                    parts.append(f"-{pi}")
                else:
                    parts.append(f"{format_rational(c.re)}·{pi}")
            elif c.re == 0:
                if c.im == 1:
                    parts.append(f"{pi}·i")
                elif c.im == -1:
                    parts.append(f"-{pi}·i")
                else:
                    parts.append(f"{format_rational(c.im)}·{pi}·i")
            else:
                parts.append(f"{c}·{pi}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [{"pi_power": k, **self._terms[k].to_json()} for k in sorted(self._terms)]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "ExactValue":
        out: Dict[int, GaussianRational] = {}
        for item in data:
            k = int(item["pi_power"])
            out[k] = out.get(k, ZERO) + GaussianRational.from_json(item)
        return cls(out)


def _ev(x) -> ExactValue:
    return ExactValue.coerce(x)


@dataclass(frozen=True)
class LaurentWindow:
    """Laurent coefficients of orders ``lowest_order .. validity_order``.

    ``lowest_order`` is either the true order of the expansion or a declared
    lower bound; in the latter case leading coefficients may be zero.
    """

    lowest_order: int
    coefficients: Tuple[ExactValue, ...]
    validity_order: int

    def __post_init__(self):
        if len(self.coefficients) != self.validity_order - self.lowest_order + 1:
            raise ValueError("coefficient count does not match the order range")

    def coeff(self, order: int) -> ExactValue:
        if order > self.validity_order:
            raise ValueError(f"order {order} is beyond the validity order {self.validity_order}")
        if order < self.lowest_order:
            return ExactValue()
        return self.coefficients[order - self.lowest_order]

    def __getitem__(self, order: int) -> ExactValue:
        return self.coeff(order)

    @property
    def pole_order(self) -> int:
        """True order of the pole at the expansion point (0 if none)."""
        for n, c in zip(range(self.lowest_order, self.validity_order + 1), self.coefficients):
            if n >= 0:
                return 0
            if c:
                return -n
        return 0

    def principal_part(self) -> Dict[int, ExactValue]:
        return {n: c for n, c in self.items() if n < 0 and c}

    def items(self) -> Iterator[Tuple[int, ExactValue]]:
        return zip(range(self.lowest_order, self.validity_order + 1), self.coefficients)

    def restrict(self, lowest: int, upto: int) -> "LaurentWindow":
        if upto > self.validity_order:
            raise ValueError("cannot extend a window beyond its validity order")
        if lowest > self.lowest_order and any(self.coeff(n) for n in range(self.lowest_order, lowest)):
            raise ValueError("restriction would drop nonzero coefficients")
        return LaurentWindow(lowest, tuple(self.coeff(n) for n in range(lowest, upto + 1)), upto)

    def conjugate(self) -> "LaurentWindow":
        return LaurentWindow(self.lowest_order, tuple(c.conjugate() for c in self.coefficients), self.validity_order)

    def to_json(self) -> dict:
        return {
            "lowest_order": self.lowest_order,
            "validity_order": self.validity_order,
            "coefficients": [c.to_json() for c in self.coefficients],
        }


def cauchy_product(f: LaurentWindow, g: LaurentWindow) -> LaurentWindow:
    """Product of two Laurent windows, valid through the common order."""
    low = f.lowest_order + g.lowest_order
    upto = min(f.validity_order + g.lowest_order, g.validity_order + f.lowest_order)
    out = []
    for n in range(low, upto + 1):
        s = ExactValue()
        for i, c in f.items():
            j = n - i
            if g.lowest_order <= j <= g.validity_order:
                s = s + c * g.coeff(j)
        out.append(s)
    return LaurentWindow(low, tuple(out), upto)


# ---------------------------------------------------------------------------
# rational functions of lambda

Factor = Tuple[Union[int, Fraction], Union[int, Fraction]]  # (a, b) meaning a*lam + b, a > 0


def _poly_mul(p: Sequence[ExactValue], q: Sequence[ExactValue]) -> Tuple[ExactValue, ...]:
    if not p or not q:
        return ()
    out = [ExactValue() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _poly_trim(out)


def _poly_add(p: Sequence[ExactValue], q: Sequence[ExactValue]) -> Tuple[ExactValue, ...]:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else ExactValue()
        b = q[i] if i < len(q) else ExactValue()
        out.append(a + b)
    return _poly_trim(out)


def _poly_trim(p: Sequence[ExactValue]) -> Tuple[ExactValue, ...]:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _poly_shift(p: Sequence[ExactValue], x0) -> Tuple[ExactValue, ...]:
    """Coefficients of p(x0 + mu) in powers of mu."""
    out = [ExactValue() for _ in p]
    # Horner in mu
    for c in reversed(p):
        # out = out*(x0 + mu) + c
        new = [ExactValue() for _ in p]
        for i, a in enumerate(out):
            if not a:
                continue
            new[i] = new[i] + a * x0
            if i + 1 < len(new):
                new[i + 1] = new[i + 1] + a
        new[0] = new[0] + c
        out = new
    return _poly_trim(out)


def _norm_factor(a, b) -> Tuple[Tuple, object]:
    """Return ((a, b) with a > 0, sign) such that a*l + b = sign * (a' l + b')."""
    a = as_rational(a)
    b = as_rational(b)
    if a == 0:
        raise ValueError("constant factors belong in the numerator")
    if a < 0:
        return (-a, -b), -1
    return (a, b), 1


class RationalFunctionLambda:
    """Sum of simple terms ``N(lam) / prod_i (a_i*lam + b_i)``.

    Terms are never brought to a common denominator; terms with the same
    multiset of denominator factors are merged.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Tuple[Sequence, Sequence[Factor]]] = ()):
        merged: Dict[Tuple[Factor, ...], Tuple[ExactValue, ...]] = {}
        for num, den in terms:
            num = tuple(_ev(c) for c in num)
            sign = 1
            factors = []
            for a, b in den:
                f, s = _norm_factor(a, b)
                sign *= s
                factors.append(f)
            if sign < 0:
                num = tuple(-c for c in num)
            key = tuple(sorted(factors))
            merged[key] = _poly_add(merged.get(key, ()), num)
        self._terms = {k: v for k, v in merged.items() if v}

    @classmethod
    def constant(cls, c) -> "RationalFunctionLambda":
        return cls([((c,), ())])

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "RationalFunctionLambda":
        return cls([(tuple(coeffs), ())])

    @classmethod
    def simple(cls, c, a, b, power: int = 1) -> "RationalFunctionLambda":
        """``c / (a*lam + b)**power``."""
        return cls([((c,), ((a, b),) * power)])

    @property
    def terms(self) -> List[Tuple[Tuple[ExactValue, ...], Tuple[Factor, ...]]]:
        return [(num, den) for den, num in sorted(self._terms.items(), key=lambda kv: kv[0])]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> "RationalFunctionLambda":
        if not isinstance(other, RationalFunctionLambda):
            other = RationalFunctionLambda.constant(other)
        return RationalFunctionLambda(
            [(n, d) for d, n in self._terms.items()] + [(n, d) for d, n in other._terms.items()]
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunctionLambda":
        return RationalFunctionLambda([(tuple(-c for c in n), d) for d, n in self._terms.items()])

    def __sub__(self, other) -> "RationalFunctionLambda":
        if not isinstance(other, RationalFunctionLambda):
            other = RationalFunctionLambda.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "RationalFunctionLambda":
        if not isinstance(other, RationalFunctionLambda):
            c = _ev(other)
            return RationalFunctionLambda([(tuple(x * c for x in n), d) for d, n in self._terms.items()])
        out = []
        for d1, n1 in self._terms.items():
            for d2, n2 in other._terms.items():
                out.append((_poly_mul(n1, n2), d1 + d2))
        return RationalFunctionLambda(out)

    __rmul__ = __mul__

    def conjugate(self) -> "RationalFunctionLambda":
        return RationalFunctionLambda([(tuple(c.conjugate() for c in n), d) for d, n in self._terms.items()])

    def candidate_roots(self) -> List[Union[int, Fraction]]:
        roots = set()
        for den in self._terms:
            for a, b in den:
                roots.add(_norm(Fraction(-b) / a))
        return sorted(roots)

    def evaluate(self, lam) -> ExactValue:
        lam = as_rational(lam)
        total = ExactValue()
        for den, num in self._terms.items():
            d = Fraction(1)
            for a, b in den:
                v = a * lam + b
                if v == 0:
                    raise ZeroDivisionError(f"lambda = {format_rational(lam)} is a root of a denominator factor")
                d *= v
            val = ExactValue()
            for c in reversed(num):
                val = val * lam + c
            total = total + val * _norm(1 / d)
        return total

    def laurent_at(self, point, upto: int, lowest: Optional[int] = None) -> LaurentWindow:
        """Exact Laurent expansion at ``lam = point`` through order ``upto``.

        Computed termwise: factors vanishing at the point contribute explicit
        powers ``1/(a*mu)``, the others are expanded as geometric series.
        """
        point = as_rational(point)
        pieces: List[Tuple[int, List[ExactValue]]] = []
        true_low = None
        for den, num in self._terms.items():
            zero_count = 0
            inv_a = Fraction(1)
            regular = []
            for a, b in den:
                beta = a * point + b
                if beta == 0:
                    zero_count += 1
                    inv_a /= a
                else:
                    regular.append((a, beta))
            shifted = _poly_shift(num, point) if point != 0 else _poly_trim(num)
            low = -zero_count
            n_needed = upto - low + 1
            if n_needed <= 0:
                continue
            series = [ExactValue() for _ in range(n_needed)]
            for i, c in enumerate(shifted[:n_needed]):
                series[i] = c * _norm(inv_a)
            for a, beta in regular:
                # 1/(beta + a*mu) = (1/beta) * sum (-a/beta)^n mu^n
                r = Fraction(-a) / beta
                geo = [_norm(Fraction(1) / beta)]
                for _ in range(1, n_needed):
                    geo.append(_norm(geo[-1] * r))
                new = [ExactValue() for _ in range(n_needed)]
                for i, c in enumerate(series):
                    if not c:
                        continue
                    for j in range(n_needed - i):
                        new[i + j] = new[i + j] + c * geo[j]
                series = new
            pieces.append((low, series))
        min_low = min([low for low, _ in pieces], default=min(0, upto))
        coeffs = [ExactValue() for _ in range(upto - min_low + 1)]
        for low, series in pieces:
            for i, c in enumerate(series):
                coeffs[low - min_low + i] = coeffs[low - min_low + i] + c
        # strip to the true lowest order (or the declared bound)
        start = 0
        while start < len(coeffs) - 1 and not coeffs[start] and min_low + start < min(0, upto):
            start += 1
        true_low = min_low + start
        if lowest is not None and lowest < true_low:
            pad = true_low - lowest
            return LaurentWindow(lowest, tuple([ExactValue()] * pad + coeffs[start:]), upto)
        return LaurentWindow(true_low, tuple(coeffs[start:]), upto)

    def laurent_at_zero(self, upto: int, lowest: Optional[int] = None) -> LaurentWindow:
        return self.laurent_at(0, upto, lowest)

    def poles(self) -> List[Tuple[Union[int, Fraction], int]]:
        """Genuine poles (after cancellation) with their true orders."""
        out = []
        for q in self.candidate_roots():
            window = self.laurent_at(q, -1)
            order = window.pole_order
            if order:
                out.append((q, order))
        return out

    def pole_order_at(self, point) -> int:
        return self.laurent_at(point, -1).pole_order

    def is_zero(self) -> bool:
        """Exact test of f == 0 as a rational function."""
        if not self._terms:
            return True
        if self.poles():
            return False
        # no poles left: f is a polynomial of degree below this bound
        bound = max(len(n) for n in self._terms.values())
        roots = set(self.candidate_roots())
        x = 0
        checked = 0
        while checked <= bound:
            if x not in roots:
                if self.evaluate(x):
                    return False
                checked += 1
            x += 1
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunctionLambda):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        for num, den in self.terms:
            n = " + ".join(f"({c})·λ^{i}" if i else f"({c})" for i, c in enumerate(num))
            d = "·".join(f"({format_rational(a)}λ + {format_rational(b)})" for a, b in den)
            parts.append(f"[{n}]/[{d}]" if d else f"[{n}]")
        return "RationalFunctionLambda(" + " + ".join(parts) + ")"


def laurent_at_zero(f: RationalFunctionLambda, upto: int, lowest: Optional[int] = None) -> LaurentWindow:
    return f.laurent_at_zero(upto, lowest)


def poles(f: RationalFunctionLambda) -> List[Tuple[Union[int, Fraction], int]]:
    return f.poles()
