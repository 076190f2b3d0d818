"""Polynomials in z, zbar, log-weighted polynomials and (p,q)-forms.

Variables are 0-based: ``z_0 .. z_{d-1}``.  A :class:`ConjPolynomial` maps an
exponent pair ``(a, b)`` of multi-indices to the coefficient of
``z^a zbar^b``.  Forms are stored as ``{(A, B): coefficient}`` with ``A`` and
``B`` strictly increasing index tuples, meaning ``coef * dz_A ^ dzbar_B``.
"""
from __future__ import annotations

from itertools import combinations
from math import comb, factorial
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .exact import ONE, ZERO, GaussianRational

__all__ = [
    "ConjPolynomial",
    "LogPolynomial",
    "ConjForm",
    "d_dz",
    "d_dzbar",
    "restrict_zero",
    "wedge",
    "dbar",
    "del_",
    "conj",
    "sort_sign",
]

MultiIndex = Tuple[int, ...]


def _add_mi(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def _falling(a: int, k: int) -> int:
    """a (a-1) ... (a-k+1)."""
    out = 1
    for i in range(k):
        out *= a - i
    return out


class ConjPolynomial:
    """Sparse polynomial in ``z_j`` and ``zbar_j`` with Gaussian-rational coefficients."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Optional[Mapping[Tuple[MultiIndex, MultiIndex], object]] = None):
        self.dim = dim
        clean: Dict[Tuple[MultiIndex, MultiIndex], GaussianRational] = {}
        if terms:
            for (a, b), c in terms.items():
                a = tuple(int(x) for x in a)
                b = tuple(int(x) for x in b)
                if len(a) != dim or len(b) != dim:
                    raise ValueError(f"exponent multi-indices must have length {dim}")
                if min(a + b, default=0) < 0:
                    raise ValueError("exponents must be non-negative")
                c = GaussianRational.coerce(c)
                key = (a, b)
                s = clean.get(key)
                s = c if s is None else s + c
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        self._terms = clean

    @classmethod
    def _raw(cls, dim: int, terms: Dict) -> "ConjPolynomial":
        p = object.__new__(cls)
        p.dim = dim
        p._terms = terms
        return p

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "ConjPolynomial":
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, dim: int, c=1) -> "ConjPolynomial":
        z = (0,) * dim
        return cls(dim, {(z, z): c})

    @classmethod
    def monomial(cls, dim: int, a: Sequence[int], b: Sequence[int], c=1) -> "ConjPolynomial":
        return cls(dim, {(tuple(a), tuple(b)): c})

    @classmethod
    def z(cls, dim: int, j: int, power: int = 1) -> "ConjPolynomial":
        a = [0] * dim
        a[j] = power
        return cls.monomial(dim, a, [0] * dim)

    @classmethod
    def zbar(cls, dim: int, j: int, power: int = 1) -> "ConjPolynomial":
        b = [0] * dim
        b[j] = power
        return cls.monomial(dim, [0] * dim, b)

    @classmethod
    def bump(cls, dim: int, exponents: Sequence[int]) -> "ConjPolynomial":
        """prod_j (1 - z_j zbar_j)^{q_j}, expanded."""
        out = cls.constant(dim)
        for j, q in enumerate(exponents):
            terms = {}
            for k in range(q + 1):
                a = [0] * dim
                a[j] = k
                terms[(tuple(a), tuple(a))] = (-1) ** k * comb(q, k)
            out = out * cls(dim, terms)
        return out

    # -- container protocol ---------------------------------------------
    @property
    def terms(self) -> Dict[Tuple[MultiIndex, MultiIndex], GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, a: Sequence[int], b: Sequence[int]) -> GaussianRational:
        return self._terms.get((tuple(a), tuple(b)), ZERO)

    def __eq__(self, other) -> bool:
        if isinstance(other, ConjPolynomial):
            return self.dim == other.dim and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "ConjPolynomial(0)"
        parts = []
        for (a, b), c in sorted(self._terms.items()):
            mono = "".join(f"z{j}^{e}" for j, e in enumerate(a) if e) + "".join(
                f"zb{j}^{e}" for j, e in enumerate(b) if e
            )
            parts.append(f"{c}{'·' + mono if mono else ''}")
        return "ConjPolynomial(" + " + ".join(parts) + ")"

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "ConjPolynomial"):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def __add__(self, other) -> "ConjPolynomial":
        if not isinstance(other, ConjPolynomial):
            other = ConjPolynomial.constant(self.dim, other)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ConjPolynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "ConjPolynomial":
        return ConjPolynomial._raw(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "ConjPolynomial":
        if not isinstance(other, ConjPolynomial):
            other = ConjPolynomial.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other) -> "ConjPolynomial":
        return (-self) + other

    def scale(self, c) -> "ConjPolynomial":
        c = GaussianRational.coerce(c)
        if not c:
            return ConjPolynomial.zero(self.dim)
        return ConjPolynomial._raw(self.dim, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other) -> "ConjPolynomial":
        if not isinstance(other, ConjPolynomial):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "ConjPolynomial", charge: Optional[MultiIndex] = None) -> "ConjPolynomial":
        """Product; with ``charge`` set, only terms with ``a - b == charge`` are kept.

        The filter is what angular integration sees: a monomial integrates to
        zero over the polydisc unless its z- and zbar-exponents balance.
        """
        self._check(other)
        out: Dict = {}
        if charge is None:
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    key = (_add_mi(a1, a2), _add_mi(b1, b2))
                    s = out.get(key)
                    out[key] = c1 * c2 if s is None else s + c1 * c2
        else:
            groups: Dict[MultiIndex, list] = {}
            for (a2, b2), c2 in other._terms.items():
                ch = tuple(x - y for x, y in zip(a2, b2))
                groups.setdefault(ch, []).append((a2, b2, c2))
            for (a1, b1), c1 in self._terms.items():
                need = tuple(t - (x - y) for t, x, y in zip(charge, a1, b1))
                for a2, b2, c2 in groups.get(need, ()):
                    key = (_add_mi(a1, a2), _add_mi(b1, b2))
                    s = out.get(key)
                    out[key] = c1 * c2 if s is None else s + c1 * c2
        return ConjPolynomial._raw(self.dim, {k: c for k, c in out.items() if c})

    def __pow__(self, n: int) -> "ConjPolynomial":
        out = ConjPolynomial.constant(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def filter_charge(self, charge: MultiIndex) -> "ConjPolynomial":
        return ConjPolynomial._raw(
            self.dim,
            {(a, b): c for (a, b), c in self._terms.items() if all(x - y == t for x, y, t in zip(a, b, charge))},
        )

    # -- calculus --------------------------------------------------------
    def derivative(self, J: Sequence[int], K: Sequence[int]) -> "ConjPolynomial":
        """d^{J+K} / dz^J dzbar^K."""
        J = tuple(J)
        K = tuple(K)
        out = {}
        for (a, b), c in self._terms.items():
            coef = 1
            for x, j in zip(a, J):
                if x < j:
                    coef = 0
                    break
                coef *= _falling(x, j)
            if coef:
                for y, k in zip(b, K):
                    if y < k:
                        coef = 0
                        break
                    coef *= _falling(y, k)
            if coef:
                key = (tuple(x - j for x, j in zip(a, J)), tuple(y - k for y, k in zip(b, K)))
                out[key] = c * coef
        return ConjPolynomial._raw(self.dim, out)

    def d_dz(self, j: int, times: int = 1) -> "ConjPolynomial":
        J = [0] * self.dim
        J[j] = times
        return self.derivative(J, [0] * self.dim)

    def d_dzbar(self, j: int, times: int = 1) -> "ConjPolynomial":
        K = [0] * self.dim
        K[j] = times
        return self.derivative([0] * self.dim, K)

    def restrict_zero(self, S: Iterable[int]) -> "ConjPolynomial":
        """Set z_j = zbar_j = 0 for j in S (frozen variables stay in the index)."""
        S = tuple(S)
        if not S:
            return self
        return ConjPolynomial._raw(
            self.dim,
            {(a, b): c for (a, b), c in self._terms.items() if all(a[j] == 0 and b[j] == 0 for j in S)},
        )

    def conjugate(self) -> "ConjPolynomial":
        return ConjPolynomial._raw(self.dim, {(b, a): c.conjugate() for (a, b), c in self._terms.items()})

    def is_real(self) -> bool:
        return self == self.conjugate()

    def is_holomorphic(self) -> bool:
        return all(not any(b) for (_, b) in self._terms)

    def variables(self) -> set:
        used = set()
        for a, b in self._terms:
            used.update(j for j in range(self.dim) if a[j] or b[j])
        return used

    def constant_term(self) -> GaussianRational:
        z = (0,) * self.dim
        return self._terms.get((z, z), ZERO)

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self._terms), default=0)

    def divisible_by_bump(self, j: int, q: int) -> bool:
        """Whether (1 - z_j zbar_j)^q divides this polynomial.

        Tested by repeated exact division in the variable u = z_j zbar_j,
        after grouping by the remaining exponents.
        """
        for _ in range(q):
            quotient = _divide_by_one_minus_u(self, j)
            if quotient is None:
                return False
            self = quotient
        return True

    def substitute_scale(self, j: int, c: GaussianRational) -> "ConjPolynomial":
        """Coefficients of P(..., z_j / c, ...) for a unit c (so 1/c = conj(c))."""
        c = GaussianRational.coerce(c)
        inv = ONE / c
        inv_bar = inv.conjugate()
        out = {}
        for (a, b), v in self._terms.items():
            out[(a, b)] = v * (inv ** a[j]) * (inv_bar ** b[j])
        return ConjPolynomial(self.dim, out)


def _divide_by_one_minus_u(P: ConjPolynomial, j: int) -> Optional[ConjPolynomial]:
    # group terms by the exponents away from u^k = (z_j zbar_j)^k
    groups: Dict = {}
    for (a, b), c in P.items():
        k = min(a[j], b[j])
        a0 = a[:j] + (a[j] - k,) + a[j + 1:]
        b0 = b[:j] + (b[j] - k,) + b[j + 1:]
        groups.setdefault((a0, b0), {})[k] = c
    out = {}
    for (a0, b0), poly in groups.items():
        # poly(u) = (1 - u) * quot(u): quot_k = sum_{i<=k} poly_i
        top = max(poly)
        running = ZERO
        for k in range(top + 1):
            running = running + poly.get(k, ZERO)
            if k < top and running:
                a = a0[:j] + (a0[j] + k,) + a0[j + 1:]
                b = b0[:j] + (b0[j] + k,) + b0[j + 1:]
                out[(a, b)] = running
        if running:
            return None
    return ConjPolynomial(P.dim, out)


def d_dz(P: ConjPolynomial, j: int) -> ConjPolynomial:
    return P.d_dz(j)


def d_dzbar(P: ConjPolynomial, j: int) -> ConjPolynomial:
    return P.d_dzbar(j)


def restrict_zero(P, S: Iterable[int]):
    return P.restrict_zero(S)


class LogPolynomial:
    """Terms ``c * z^a zbar^b * prod_j (log|z_j|^2)^{m_j}``.

    Supports sums and products with polynomials and log monomials, but no
    differentiation: log weights are only introduced after all derivatives.
    """

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Optional[Mapping] = None):
        self.dim = dim
        clean = {}
        if terms:
            for (a, b, m), c in terms.items():
                key = (tuple(a), tuple(b), tuple(m))
                if any(len(x) != dim for x in key):
                    raise ValueError(f"multi-indices must have length {dim}")
                if min(sum(key, ()), default=0) < 0:
                    raise ValueError("exponents must be non-negative")
                c = GaussianRational.coerce(c)
                s = clean.get(key)
                s = c if s is None else s + c
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        self._terms = clean

    @classmethod
    def from_polynomial(cls, P: ConjPolynomial) -> "LogPolynomial":
        m = (0,) * P.dim
        return cls(P.dim, {(a, b, m): c for (a, b), c in P.items()})

    @classmethod
    def log_monomial(cls, dim: int, m: Sequence[int], c=1) -> "LogPolynomial":
        z = (0,) * dim
        return cls(dim, {(z, z, tuple(m)): c})

    @classmethod
    def log_power_sum(cls, weights: Sequence[int], power: int) -> "LogPolynomial":
        """(sum_j w_j log|z_j|^2)^power, expanded by repeated multiplication."""
        dim = len(weights)
        base = LogPolynomial(dim)
        for j, w in enumerate(weights):
            if w:
                m = [0] * dim
                m[j] = 1
                base = base + LogPolynomial.log_monomial(dim, m, w)
        out = LogPolynomial.log_monomial(dim, [0] * dim)
        for _ in range(power):
            out = out * base
        return out

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LogPolynomial):
            return self.dim == other.dim and self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "LogPolynomial") -> "LogPolynomial":
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        lp = LogPolynomial(self.dim)
        lp._terms = out
        return lp

    def __neg__(self):
        lp = LogPolynomial(self.dim)
        lp._terms = {k: -c for k, c in self._terms.items()}
        return lp

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "LogPolynomial":
        if isinstance(other, ConjPolynomial):
            other = LogPolynomial.from_polynomial(other)
        elif not isinstance(other, LogPolynomial):
            c = GaussianRational.coerce(other)
            lp = LogPolynomial(self.dim)
            lp._terms = {k: v * c for k, v in self._terms.items() if c}
            return lp
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = {}
        for (a1, b1, m1), c1 in self._terms.items():
            for (a2, b2, m2), c2 in other._terms.items():
                key = (_add_mi(a1, a2), _add_mi(b1, b2), _add_mi(m1, m2))
                s = out.get(key)
                out[key] = c1 * c2 if s is None else s + c1 * c2
        lp = LogPolynomial(self.dim)
        lp._terms = {k: c for k, c in out.items() if c}
        return lp

    __rmul__ = __mul__

    def conjugate(self) -> "LogPolynomial":
        lp = LogPolynomial(self.dim)
        lp._terms = {(b, a, m): c.conjugate() for (a, b, m), c in self._terms.items()}
        return lp


# ---------------------------------------------------------------------------
# exterior forms


def sort_sign(seq: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats) and the sorted tuple."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return (-1) ** inversions, tuple(sorted(seq))


class ConjForm:
    """Exterior form ``sum P_{A,B} dz_A ^ dzbar_B`` with ConjPolynomial coefficients."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Optional[Mapping] = None):
        self.dim = dim
        clean: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], ConjPolynomial] = {}
        if terms:
            for (A, B), P in terms.items():
                sA, A_sorted = sort_sign(A)
                sB, B_sorted = sort_sign(B)
                if not sA or not sB:
                    continue
                if not isinstance(P, ConjPolynomial):
                    P = ConjPolynomial.constant(dim, P)
                if P.dim != dim:
                    raise ValueError("coefficient dimension mismatch")
                if any(not 0 <= j < dim for j in A_sorted + B_sorted):
                    raise ValueError("form index out of range")
                key = (A_sorted, B_sorted)
                val = P if sA * sB == 1 else -P
                s = clean.get(key)
                s = val if s is None else s + val
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        self._terms = clean

    @classmethod
    def function(cls, P: ConjPolynomial) -> "ConjForm":
        return cls(P.dim, {((), ()): P})

    @classmethod
    def basis(cls, dim: int, A: Sequence[int] = (), B: Sequence[int] = (), coefficient=1) -> "ConjForm":
        return cls(dim, {(tuple(A), tuple(B)): coefficient})

    @classmethod
    def top(cls, P: ConjPolynomial, variables: Optional[Sequence[int]] = None) -> "ConjForm":
        """``P dz_V ^ dzbar_V`` (V defaults to all variables: P dz ^ dzbar)."""
        V = tuple(range(P.dim)) if variables is None else tuple(sorted(variables))
        return cls(P.dim, {(V, V): P})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ConjForm):
            return self.dim == other.dim and self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        parts = []
        for (A, B), P in sorted(self._terms.items()):
            parts.append(f"{P!r}·dz{list(A)}^dzb{list(B)}")
        return "ConjForm(" + " + ".join(parts or ["0"]) + ")"

    def bidegrees(self) -> set:
        return {(len(A), len(B)) for A, B in self._terms}

    @property
    def bidegree(self) -> Tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError(f"form is not of pure bidegree: {sorted(degs)}")
        return next(iter(degs))

    def coefficient(self, A: Sequence[int], B: Sequence[int]) -> ConjPolynomial:
        return self._terms.get((tuple(A), tuple(B)), ConjPolynomial.zero(self.dim))

    def top_coefficient(self, variables: Optional[Sequence[int]] = None) -> ConjPolynomial:
        V = tuple(range(self.dim)) if variables is None else tuple(sorted(variables))
        extra = [k for k in self._terms if k != (V, V)]
        if extra:
            raise ValueError(f"form has components other than dz_V^dzbar_V: {extra}")
        return self.coefficient(V, V)

    def __add__(self, other: "ConjForm") -> "ConjForm":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = dict(self._terms)
        for k, P in other._terms.items():
            s = out.get(k)
            s = P if s is None else s + P
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        f = ConjForm(self.dim)
        f._terms = out
        return f

    def __neg__(self):
        f = ConjForm(self.dim)
        f._terms = {k: -P for k, P in self._terms.items()}
        return f

    def __sub__(self, other):
        return self + (-other)

    def map_coefficients(self, fn) -> "ConjForm":
        out = {}
        for k, P in self._terms.items():
            Q = fn(P)
            if Q:
                out[k] = Q
        f = ConjForm(self.dim)
        f._terms = out
        return f

    def scale(self, c) -> "ConjForm":
        if isinstance(c, ConjPolynomial):
            return self.map_coefficients(lambda P: P * c)
        return self.map_coefficients(lambda P: P.scale(c))

    def __mul__(self, c) -> "ConjForm":
        return self.scale(c)

    __rmul__ = __mul__

    def wedge(self, other: "ConjForm") -> "ConjForm":
        return wedge(self, other)

    def restrict(self, S: Iterable[int]) -> "ConjForm":
        """Pull back to {z_j = 0, j in S}: drop dz_j/dzbar_j terms, restrict coefficients."""
        S = set(S)
        out = {}
        for (A, B), P in self._terms.items():
            if S & set(A) or S & set(B):
                continue
            Q = P.restrict_zero(sorted(S))
            if Q:
                out[(A, B)] = Q
        f = ConjForm(self.dim)
        f._terms = out
        return f

    def derivative(self, J: Sequence[int], K: Sequence[int]) -> "ConjForm":
        return self.map_coefficients(lambda P: P.derivative(J, K))

    def conjugate(self) -> "ConjForm":
        return conj(self)

    def degree(self) -> int:
        degs = {len(A) + len(B) for A, B in self._terms}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0


def wedge(omega: ConjForm, eta: ConjForm) -> ConjForm:
    if omega.dim != eta.dim:
        raise ValueError("dimension mismatch")
    out: Dict = {}
    for (A, B), P in omega.items():
        for (C, D), Q in eta.items():
            if set(A) & set(C) or set(B) & set(D):
                continue
            # dz_A dzbar_B dz_C dzbar_D -> dz_A dz_C dzbar_B dzbar_D
            sign = (-1) ** (len(B) * len(C))
            s1, AC = sort_sign(A + C)
            s2, BD = sort_sign(B + D)
            sign *= s1 * s2
            val = P * Q
            if sign < 0:
                val = -val
            key = (AC, BD)
            s = out.get(key)
            out[key] = val if s is None else s + val
    f = ConjForm(omega.dim)
    f._terms = {k: v for k, v in out.items() if v}
    return f


def dbar(omega: ConjForm) -> ConjForm:
    """dbar(P dz_A^dzbar_B) = sum_j dP/dzbar_j dzbar_j ^ dz_A ^ dzbar_B."""
    out = ConjForm(omega.dim)
    for (A, B), P in omega.items():
        for j in range(omega.dim):
            if j in B:
                continue
            dP = P.d_dzbar(j)
            if not dP:
                continue
            # dzbar_j ^ dz_A = (-1)^{|A|} dz_A ^ dzbar_j
            out = out + ConjForm(omega.dim, {(A, (j,) + B): dP if len(A) % 2 == 0 else -dP})
    return out


def del_(omega: ConjForm) -> ConjForm:
    """del(P dz_A^dzbar_B) = sum_j dP/dz_j dz_j ^ dz_A ^ dzbar_B."""
    out = ConjForm(omega.dim)
    for (A, B), P in omega.items():
        for j in range(omega.dim):
            if j in A:
                continue
            dP = P.d_dz(j)
            if dP:
                out = out + ConjForm(omega.dim, {((j,) + A, B): dP})
    return out


def conj(omega: ConjForm) -> ConjForm:
    """Complex conjugate; conj(dz_A ^ dzbar_B) = (-1)^{pq} dz_B ^ dzbar_A."""
    out = {}
    for (A, B), P in omega.items():
        Q = P.conjugate()
        if (len(A) * len(B)) % 2:
            Q = -Q
        out[(B, A)] = Q
    f = ConjForm(omega.dim)
    f._terms = out
    return f


def orientation_sign(n: int) -> int:
    """dz ^ dzbar = orientation_sign(n) * prod_j (dz_j ^ dzbar_j) in n variables."""
    return -1 if (n * (n - 1) // 2) % 2 else 1
