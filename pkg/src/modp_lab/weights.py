"""Affine f-tuple calculus for Serre weights of GL_2(F_q).

An f-tuple is a list of affine terms ``k*p + c + s*x_i`` with ``s = +-1``.
Keeping the multiple of p symbolic lets the same tuple be evaluated at any
prime, and makes composition tables exact identities rather than numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence


class NonIntegralExponent(ValueError):
    """Raised when e(lambda) has a non-integral coefficient."""


class InvalidParams(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Params:
    p: int
    f: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 5:
            raise InvalidParams(f"p must be a prime >= 5, got {self.p}")
        if self.f < 1:
            raise InvalidParams(f"f must be positive, got {self.f}")

    @property
    def q(self) -> int:
        return self.p ** self.f

    def idx(self, i: int) -> int:
        return cyc(i, self.f)


def cyc(i: int, f: int) -> int:
    """The one place where indices are reduced mod f."""
    return i % f


@dataclass(frozen=True, order=True)
class AffineTerm:
    """The function x -> pcoef*p + const + sign*x."""

    sign: int
    const: int = 0
    pcoef: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __call__(self, x: int, p: int) -> int:
        return self.pcoef * p + self.const + self.sign * x

    def compose(self, other: "AffineTerm") -> "AffineTerm":
        # self(other(x))
        s = self.sign
        return AffineTerm(s * other.sign, self.const + s * other.const,
                          self.pcoef + s * other.pcoef)

    def inverse(self) -> "AffineTerm":
        s = self.sign
        return AffineTerm(s, -s * self.const, -s * self.pcoef)

    def deviation(self) -> Optional[int]:
        """d with self = x+d or self = p-2-x+d; None for other shapes."""
        if self.sign == 1 and self.pcoef == 0:
            return self.const
        if self.sign == -1 and self.pcoef == 1:
            return self.const + 2
        return None

    def pm_sign(self) -> Optional[int]:
        """The sign of the +-1 in x+-1 or p-2-x-(+-1); None off the support."""
        d = self.deviation()
        if d not in (1, -1):
            return None
        return d if self.sign == 1 else -d

    def label(self) -> str:
        if self.sign == 1:
            base = "x"
            c = self.const
            head = "" if self.pcoef == 0 else f"{self.pcoef}p+"
            if c == 0:
                return head + base
            return f"{head}{base}{c:+d}"
        head = "p" if self.pcoef == 1 else f"{self.pcoef}p"
        if self.pcoef == 0:
            head = ""
        c = self.const
        cs = "" if c == 0 else (f"{c:+d}" if head else str(c))
        return f"{head}{cs}-x"

    def to_json(self) -> dict:
        # offset is the constant part; pcoef records the symbolic multiple of p
        return {"sign": self.sign, "offset": self.const, "pcoef": self.pcoef}

    @classmethod
    def from_json(cls, d: dict) -> "AffineTerm":
        return cls(int(d["sign"]), int(d["offset"]), int(d.get("pcoef", 0)))


def X(c: int = 0) -> AffineTerm:
    """x + c"""
    return AffineTerm(1, c, 0)


def PX(c: int = 0) -> AffineTerm:
    """p + c - x, so PX(-2) is p-2-x."""
    return AffineTerm(-1, c, 1)


ID_TERM = X(0)

# Short names used in the tables: the six values of the composition lemma and
# the two extra values reached by double shifts.
TERMS = {
    "x": X(0), "x-1": X(-1), "x+1": X(1), "x-2": X(-2), "x+2": X(2),
    "p-1-x": PX(-1), "p-2-x": PX(-2), "p-3-x": PX(-3),
    "p-x": PX(0), "p-4-x": PX(-4),
}


def term(name: str) -> AffineTerm:
    return TERMS[name]


FTuple = tuple  # tuple of AffineTerm, length f


def ftuple(*names: str) -> FTuple:
    return tuple(TERMS[n] if isinstance(n, str) else n for n in names)


def identity(f: int) -> FTuple:
    return (ID_TERM,) * f


def compose(lam: Sequence[AffineTerm], mu: Sequence[AffineTerm]) -> FTuple:
    """lam o mu, termwise."""
    if len(lam) != len(mu):
        raise ValueError("length mismatch")
    return tuple(a.compose(b) for a, b in zip(lam, mu))


def invert(lam: Sequence[AffineTerm]) -> FTuple:
    return tuple(a.inverse() for a in lam)


def tuple_label(lam: Sequence[AffineTerm]) -> str:
    return "(" + ", ".join(t.label() for t in lam) + ")"


def tuple_to_json(lam: Sequence[AffineTerm]) -> list:
    return [t.to_json() for t in lam]


def tuple_from_json(data: Iterable[dict]) -> FTuple:
    return tuple(AffineTerm.from_json(d) for d in data)


# --- exponent e(lambda) -------------------------------------------------

@dataclass(frozen=True)
class AffineForm:
    """const + sum coeffs[i]*x_i with integer coefficients."""

    const: int
    coeffs: tuple

    def __call__(self, r: Sequence[int]) -> int:
        return self.const + sum(c * x for c, x in zip(self.coeffs, r))


def _halve(n: int) -> int:
    if n % 2:
        raise NonIntegralExponent(f"odd value {n} cannot be halved")
    return n // 2


def e_of(lam: Sequence[AffineTerm], p: int) -> AffineForm:
    return _e_of(tuple(lam), p)


@lru_cache(maxsize=None)
def _e_of(lam: tuple, p: int) -> AffineForm:
    f = len(lam)
    coeffs = []
    const = 0
    for i, t in enumerate(lam):
        coeffs.append(p ** i * (1 - t.sign))
        const -= p ** i * (t.pcoef * p + t.const)
    if lam[f - 1].sign == -1:
        const += p ** f - 1
    return AffineForm(_halve(const), tuple(_halve(c) for c in coeffs))


# --- Serre weights and characters --------------------------------------

@dataclass(frozen=True, order=True)
class SerreWeight:
    """(r_0,...,r_{f-1}) tensor det^twist, twist taken mod q-1."""

    r: tuple
    twist: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        for x in self.r:
            if not 0 <= x <= self.p - 1:
                raise ValueError(f"exponent {x} outside [0, p-1]")
        object.__setattr__(self, "twist", self.twist % (self.q - 1))

    @property
    def f(self) -> int:
        return len(self.r)

    @property
    def q(self) -> int:
        return self.p ** len(self.r)

    @property
    def dim(self) -> int:
        out = 1
        for x in self.r:
            out *= x + 1
        return out

    def to_json(self) -> dict:
        return {"r": list(self.r), "twist": self.twist}

    def __str__(self) -> str:
        return f"({','.join(map(str, self.r))})(x)det^{self.twist}"


def weight(r: Sequence[int], twist: int, p: int) -> SerreWeight:
    return SerreWeight(tuple(r), twist, p)


def evaluate(lam: Sequence[AffineTerm], sigma: SerreWeight) -> Optional[SerreWeight]:
    """lambda(sigma), or None when some lambda_i(r_i) leaves [0, p-1]."""
    p = sigma.p
    vals = tuple(t(x, p) for t, x in zip(lam, sigma.r))
    if any(v < 0 or v > p - 1 for v in vals):
        return None
    e = e_of(lam, p)(sigma.r)
    return SerreWeight(vals, sigma.twist + e, p)


def weights_isomorphic(s1: SerreWeight, s2: SerreWeight) -> bool:
    return (s1.p == s2.p and s1.r == s2.r
            and (s1.twist - s2.twist) % (s1.q - 1) == 0)


def check_cond_lambda(lam: Sequence[AffineTerm], lam2: Sequence[AffineTerm]) -> bool:
    """lam_i == lam2_i forces lam_{i-1} and lam2_{i-1} to have the same sign."""
    f = len(lam)
    for i in range(f):
        if lam[i] == lam2[i]:
            j = cyc(i - 1, f)
            if lam[j].sign != lam2[j].sign:
                return False
    return True


def S_of(lam: Sequence[AffineTerm]) -> frozenset:
    return frozenset(i for i, t in enumerate(lam)
                     if t.deviation() is not None and abs(t.deviation()) == 1)


def is_compatible(lam, lam2, at: Optional[int] = None) -> bool:
    idxs = range(len(lam)) if at is None else [at]
    for i in idxs:
        a, b = lam[i].pm_sign(), lam2[i].pm_sign()
        if a is not None and b is not None and a != b:
            return False
    return True


def leq(lam, lam2) -> bool:
    """lam <= lam2: support inclusion plus compatibility."""
    return S_of(lam) <= S_of(lam2) and is_compatible(lam, lam2)


def n_generic(sigma: SerreWeight, n: int) -> bool:
    return all(n <= x <= sigma.p - 2 - n for x in sigma.r)


@dataclass(frozen=True, order=True)
class HChar:
    """The character diag(x, y) -> x^a y^b of the torus of GL_2(F_q).

    Exponents live in Z/(q-1); a and b are stored reduced.
    """

    a: int
    b: int
    p: int
    f: int

    def __post_init__(self):
        m = self.p ** self.f - 1
        object.__setattr__(self, "a", self.a % m)
        object.__setattr__(self, "b", self.b % m)

    @property
    def q(self) -> int:
        return self.p ** self.f

    def __mul__(self, other: "HChar") -> "HChar":
        return HChar(self.a + other.a, self.b + other.b, self.p, self.f)

    def __pow__(self, n: int) -> "HChar":
        return HChar(self.a * n, self.b * n, self.p, self.f)

    def inv(self) -> "HChar":
        return self ** -1

    def conj(self) -> "HChar":
        """The s-conjugate: swap the two diagonal entries."""
        return HChar(self.b, self.a, self.p, self.f)

    def digits(self) -> tuple:
        """Base-p digits of a-b in [0, q-2]."""
        r = (self.a - self.b) % (self.q - 1)
        out = []
        for _ in range(self.f):
            out.append(r % self.p)
            r //= self.p
        return tuple(out)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    def __str__(self) -> str:
        return f"chi({self.a},{self.b})"


def trivial_char(p: int, f: int) -> HChar:
    return HChar(0, 0, p, f)


def alpha(i: int, p: int, f: int) -> HChar:
    e = p ** cyc(i, f)
    return HChar(e, -e, p, f)


def char_of_weight(sigma: SerreWeight) -> HChar:
    """The I-character on the I_1-invariants of sigma."""
    r = sum(sigma.p ** i * x for i, x in enumerate(sigma.r))
    return HChar(r + sigma.twist, sigma.twist, sigma.p, sigma.f)


def sigma_chi(chi: HChar) -> SerreWeight:
    """The weight sigma with chi_sigma = chi (the cosocle of Ind chi)."""
    return SerreWeight(chi.digits(), chi.b, chi.p)


def sigma_empty(chi: HChar) -> SerreWeight:
    """The socle of Ind_I^K chi, i.e. sigma_{chi^s}."""
    r = chi.digits()
    tot = sum(chi.p ** i * x for i, x in enumerate(r))
    return SerreWeight(tuple(chi.p - 1 - x for x in r), chi.b + tot, chi.p)


def char_n_generic(chi: HChar, n: int) -> bool:
    return all(n <= x <= chi.p - 2 - n for x in chi.digits())
