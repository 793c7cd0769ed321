"""Exact and interval-decided checks of the factorial inequalities, and the sigma formulas.

Integer-only comparisons are decided with Python integers.  Anything
involving e, pi, square roots or exponentials goes through mpmath's
outward-rounded interval arithmetic, first at 50 digits and, when the
intervals overlap, again at 200.
"""
from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Iterator

import mpmath
from sympy import divisors, primefactors

BASE_DIGITS = 50
MAX_DIGITS = 200
PRIMITIVE_BASE = Fraction(13, 5)  # |primitive maximal| <= 2.6^n, an external bound

HOLDS, FAILS, UNDECIDED = "holds", "fails", "undecidable-at-precision"


def omega_count(x: int) -> int:
    """Number of distinct prime divisors."""
    if x < 1:
        raise ValueError("omega is defined for positive integers")
    return len(primefactors(x))


# -- interval values ------------------------------------------------------------------

class ExactReal:
    """A real number known either exactly (a Fraction) or by an interval enclosure."""

    __slots__ = ("exact", "lo", "hi")

    def __init__(self, exact: Fraction | None = None, lo: Fraction | None = None, hi: Fraction | None = None):
        self.exact = exact
        if exact is not None:
            self.lo = self.hi = exact
        else:
            if lo is None or hi is None or lo > hi:
                raise ValueError("need lo <= hi")
            self.lo, self.hi = lo, hi

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def width(self) -> Fraction:
        return self.hi - self.lo

    def __repr__(self) -> str:
        if self.is_exact:
            return f"ExactReal({self.exact})"
        return f"ExactReal([{float(self.lo):.6g}, {float(self.hi):.6g}])"


def _to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if not man and exp:
        raise ValueError("interval endpoint is not finite")
    r = Fraction(int(man)) * Fraction(2) ** exp
    return -r if sign else r


def compare(lhs: ExactReal, rhs: ExactReal, strict: bool = False) -> str:
    """Decide lhs >= rhs (or > when strict) when the enclosures allow it."""
    if lhs.is_exact and rhs.is_exact:
        ok = lhs.exact > rhs.exact if strict else lhs.exact >= rhs.exact
        return HOLDS if ok else FAILS
    if lhs.lo > rhs.hi or (not strict and lhs.lo >= rhs.hi):
        return HOLDS
    if lhs.hi < rhs.lo or (strict and lhs.hi <= rhs.lo):
        return FAILS
    return UNDECIDED


def decide(build: Callable[[], tuple], strict: bool = False) -> tuple[str, int]:
    """Evaluate ``build`` (returning two mpmath intervals or ints) at rising precision."""
    for digits in (BASE_DIGITS, MAX_DIGITS):
        with mpmath.workdps(digits):
            mpmath.iv.dps = digits
            lhs, rhs = build()
            status = compare(_real(lhs), _real(rhs), strict)
        if status != UNDECIDED:
            return status, digits
    return UNDECIDED, MAX_DIGITS


def _real(v) -> ExactReal:
    if isinstance(v, (int, Fraction)):
        return ExactReal(Fraction(v))
    lo, hi = v._mpi_
    return ExactReal(lo=_to_fraction(lo), hi=_to_fraction(hi))


iv = mpmath.iv


def _ivint(x: int):
    return iv.mpf(x)


# -- the named inequalities -------------------------------------------------------------

@dataclass
class InequalityResult:
    name: str
    params: dict
    conclusion: str
    hypothesis: str | None = None
    digits: int | None = None
    values: dict = field(default_factory=dict)
    external: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.conclusion == HOLDS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "digits": self.digits,
            "values": {k: str(v) for k, v in self.values.items()},
            "external": self.external,
        }


class ParameterError(ValueError):
    pass


def _stirling_log_base(n: int):
    # log of sqrt(2 pi n) (n/e)^n
    x = iv.mpf(n)
    return 0.5 * iv.log(2 * iv.pi * x) + x * (iv.log(x) - 1)


def stirling(n: int, fact: int | None = None) -> InequalityResult:
    """Both bounds sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} < n! < sqrt(2 pi n)(n/e)^n e^{1/(12n)}."""
    if n < 1:
        raise ParameterError("n must be positive")
    f = factorial(n) if fact is None else fact

    def lower():
        return _log_int(f), _stirling_log_base(n) + iv.mpf(1) / (12 * n + 1)

    def upper():
        return _stirling_log_base(n) + iv.mpf(1) / (12 * n), _log_int(f)

    s1, d1 = decide(lower, strict=True)
    s2, d2 = decide(upper, strict=True)
    status = HOLDS if s1 == s2 == HOLDS else (FAILS if FAILS in (s1, s2) else UNDECIDED)
    return InequalityResult("stirling", {"n": n}, status, None, max(d1, d2), {"lower": s1, "upper": s2})


def _log_int(x: int):
    """Interval enclosure of log(x) for a positive integer of any size."""
    bits = x.bit_length()
    shift = max(0, bits - 4 * mpmath.mp.prec)
    top = x >> shift
    enclosure = iv.mpf([top, top + 1]) if shift else iv.mpf(top)
    return iv.log(enclosure) + shift * iv.log(iv.mpf(2))


def ab(n: int, a: int, b: int, variant: str = "literal") -> InequalityResult:
    """((n/a)!)^a a! >= ((n/b)!)^b b! for divisors a <= b of n.

    ``variant="bounded"`` additionally requires b <= n/a, the range on which
    the comparison is true for every n in 8..64.
    """
    if n % a or n % b or not 1 <= a <= b <= n:
        raise ParameterError("need divisors a <= b of n")
    if variant not in ("literal", "bounded"):
        raise ParameterError("variant is 'literal' or 'bounded'")
    if variant == "bounded" and b > n // a:
        raise ParameterError("bounded variant needs b <= n/a")
    lhs = factorial(n // a) ** a * factorial(a)
    rhs = factorial(n // b) ** b * factorial(b)
    return InequalityResult("ab", {"n": n, "a": a, "b": b, "variant": variant}, HOLDS if lhs >= rhs else FAILS,
                            HOLDS if n >= 8 else FAILS, None, {"lhs": lhs, "rhs": rhs})


def estimprim(n: int, a: int) -> InequalityResult:
    """((n-1)/2)! ((n-3)/2)! >= (n/a)!^a a! for odd n not in {9, 15} and a proper divisor a >= 3."""
    if n % 2 == 0 or n % a or not 3 <= a < n:
        raise ParameterError("need odd n and a proper divisor a >= 3")
    lhs = factorial((n - 1) // 2) * factorial((n - 3) // 2)
    rhs = factorial(n // a) ** a * factorial(a)
    hyp = HOLDS if n not in (9, 15) else FAILS
    return InequalityResult("estimprim", {"n": n, "a": a}, HOLDS if lhs >= rhs else FAILS, hyp, None,
                            {"lhs": lhs, "rhs": rhs})


def corsizes(n: int) -> InequalityResult:
    """Smallest intransitive maximal of S_n against imprimitive orders and the primitive bound."""
    if n % 2 == 0 or n < 11:
        raise ParameterError("need odd n >= 11")
    small = factorial((n - 1) // 2) * factorial((n + 1) // 2)
    rows = {}
    ok = True
    for a in divisors(n)[1:-1]:
        imp = factorial(n // a) ** a * factorial(a)
        rows[f"imprimitive a={a}"] = small > imp
        ok &= small > imp
    prim = small > PRIMITIVE_BASE**n
    rows["primitive <= 2.6^n"] = prim
    ok &= prim
    return InequalityResult("corsizes", {"n": n}, HOLDS if ok else FAILS, None, None,
                            {"intransitive_min": small, **{k: v for k, v in rows.items()}},
                            ["primitive order bound 2.6^n (cited, not verified)"])


def tremezz(n: int, a: int, b: int, case: str = "odd") -> InequalityResult:
    """Hypothesis and direct conclusion |K|^a >= |A_n|^b, reported separately."""
    if a <= b or b < 1:
        raise ParameterError("need a > b >= 1")
    alt = factorial(n) // 2
    if case == "odd":
        if n % 2 == 0:
            raise ParameterError("odd case needs odd n")
        K = factorial((n - 1) // 2) * factorial((n + 1) // 2) // 2

        def hyp():
            return _ivint((n * n - 1) ** a), iv.mpf(4**a) * iv.exp(iv.mpf(2 * (a - b))) * _ivint(n ** (2 * b))
    elif case == "even":
        if n % 2:
            raise ParameterError("even case needs even n")
        K = factorial(n // 2) ** 2

        def hyp():
            return _ivint(n**a), iv.mpf(2**a) * iv.exp(iv.mpf(a - b)) * _ivint(n**b)
    else:
        raise ParameterError("case is 'odd' or 'even'")
    h, digits = decide(hyp)
    concl = HOLDS if K**a >= alt**b else FAILS
    return InequalityResult("tremezz", {"n": n, "a": a, "b": b, "case": case}, concl, h, digits,
                            {"K": K, "A_n": alt, "K^a": K**a, "A_n^b": alt**b})


INEQUALITIES = {
    "stirling": stirling,
    "ab": ab,
    "estimprim": estimprim,
    "corsizes": corsizes,
    "tremezz": tremezz,
}


def check_inequality(name: str, params: dict) -> InequalityResult:
    if name not in INEQUALITIES:
        raise ParameterError(f"unknown inequality {name!r}")
    return INEQUALITIES[name](**params)


# -- sweeps ------------------------------------------------------------------------------

def sweep_stirling(ns: Iterable[int]) -> Iterator[InequalityResult]:
    ns = sorted(ns)
    f, k = 1, 0
    for n in ns:
        while k < n:
            k += 1
            f *= k
        yield stirling(n, f)


def sweep_ab(ns: Iterable[int], variant: str = "literal") -> Iterator[InequalityResult]:
    for n in ns:
        ds = divisors(n)
        for i, a in enumerate(ds):
            for b in ds[i:]:
                if variant == "bounded" and b > n // a:
                    continue
                yield ab(n, a, b, variant)


def sweep_estimprim(ns: Iterable[int]) -> Iterator[InequalityResult]:
    for n in ns:
        if n % 2 == 0:
            continue
        for a in divisors(n):
            if 3 <= a < n:
                yield estimprim(n, a)


def sweep(name: str, ns: Iterable[int], **extra) -> Iterator[InequalityResult]:
    if name == "stirling":
        return sweep_stirling(ns)
    if name == "ab":
        return sweep_ab(ns, extra.get("variant", "literal"))
    if name == "estimprim":
        return sweep_estimprim(ns)
    if name == "corsizes":
        return (corsizes(n) for n in ns if n % 2 and n >= 11)
    if name == "tremezz":
        return (tremezz(n, extra.get("a", 3), extra.get("b", 2), extra.get("case", "odd")) for n in ns)
    raise ParameterError(f"no sweep for {name!r}")


# -- exact expression comparison -------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv,
           ast.Pow: operator.pow}


class Expr:
    """A small expression tree over integers, rationals, e and pi."""

    def __init__(self, op: str, args: tuple = ()):
        self.op = op
        self.args = args

    @classmethod
    def parse(cls, text: str) -> Expr:
        return cls._from_ast(ast.parse(text.replace("^", "**"), mode="eval").body)

    @classmethod
    def _from_ast(cls, node) -> Expr:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return cls("num", (Fraction(node.value),))
        if isinstance(node, ast.Name):
            if node.id in ("e", "pi"):
                return cls(node.id)
            raise ParameterError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return cls("neg", (cls._from_ast(node.operand),))
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return cls(type(node.op).__name__, (cls._from_ast(node.left), cls._from_ast(node.right)))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = node.func.id
            if fn in ("factorial", "binomial", "sqrt", "exp", "omega"):
                return cls(fn, tuple(cls._from_ast(a) for a in node.args))
        raise ParameterError(f"unsupported expression: {ast.dump(node)}")

    def is_rational(self) -> bool:
        if self.op in ("e", "pi", "sqrt", "exp"):
            return False
        if self.op == "Pow" and self.args[1].is_rational():
            exp = self.args[1].exact()
            if exp.denominator != 1:
                return False
        return all(a.is_rational() for a in self.args if isinstance(a, Expr))

    def exact(self) -> Fraction:
        op, args = self.op, self.args
        if op == "num":
            return args[0]
        vals = [a.exact() for a in args]
        if op == "neg":
            return -vals[0]
        if op in ("Add", "Sub", "Mult", "Div"):
            return {"Add": operator.add, "Sub": operator.sub, "Mult": operator.mul, "Div": operator.truediv}[op](*vals)
        if op == "Pow":
            return vals[0] ** int(vals[1])
        if op == "factorial":
            return Fraction(factorial(_int(vals[0])))
        if op == "binomial":
            return Fraction(comb(_int(vals[0]), _int(vals[1])))
        if op == "omega":
            return Fraction(omega_count(_int(vals[0])))
        raise ParameterError(f"{op} has no exact value")

    def interval(self):
        op, args = self.op, self.args
        if self.is_rational():
            v = self.exact()
            return iv.mpf(v.numerator) / iv.mpf(v.denominator) if abs(v.numerator) < 2**60 and v.denominator < 2**60 \
                else _ivint(v.numerator) / _ivint(v.denominator)
        if op == "e":
            return iv.e
        if op == "pi":
            return iv.pi
        vals = [a.interval() for a in args]
        if op == "neg":
            return -vals[0]
        if op == "Add":
            return vals[0] + vals[1]
        if op == "Sub":
            return vals[0] - vals[1]
        if op == "Mult":
            return vals[0] * vals[1]
        if op == "Div":
            return vals[0] / vals[1]
        if op == "Pow":
            if args[1].is_rational() and args[1].exact().denominator == 1:
                return vals[0] ** int(args[1].exact())
            return iv.exp(vals[1] * iv.log(vals[0]))
        if op == "sqrt":
            return iv.sqrt(vals[0])
        if op == "exp":
            return iv.exp(vals[0])
        raise ParameterError(f"cannot evaluate {op}")

    def __repr__(self) -> str:
        return f"Expr({self.op}, {self.args})"


def _int(v: Fraction) -> int:
    if v.denominator != 1:
        raise ParameterError("integer argument expected")
    return v.numerator


def compare_exact(lhs: str | Expr, rhs: str | Expr, strict: bool = False) -> str:
    """Decide lhs >= rhs (or >), exactly when both sides are rational."""
    L = Expr.parse(lhs) if isinstance(lhs, str) else lhs
    R = Expr.parse(rhs) if isinstance(rhs, str) else rhs
    if L.is_rational() and R.is_rational():
        return compare(ExactReal(L.exact()), ExactReal(R.exact()), strict)
    return decide(lambda: (L.interval(), R.interval()), strict)[0]


SPOT_CHECKS = (
    ("72^6", "2*6*2520^2*504"),
    ("(72/21)^2", "40/7"),
    ("1440*144", "648*288"),
)


# -- sigma formulas ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaValue:
    kind: str  # "exact" or "bounds"
    lo: int
    hi: int
    n: int
    m: int
    case: str
    note: str = ""

    @property
    def value(self) -> int | None:
        return self.lo if self.kind == "exact" else None

    def __str__(self) -> str:
        if self.kind == "exact":
            return f"exact {self.lo}"
        return f"bounds [{self.lo}, {self.hi}]"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lo": self.lo, "hi": self.hi, "n": self.n, "m": self.m, "case": self.case,
                "note": self.note}


class UnsupportedCaseError(ValueError):
    pass


def sigma_formula(n: int, m: int, case: str = "odd") -> SigmaValue:
    """Closed forms and bounds for sigma of the monolithic groups."""
    if n < 5 or m < 1:
        raise ParameterError("need n >= 5 and m >= 1")
    if case == "even":
        if (n, m) == (5, 2):
            return SigmaValue("exact", 57, 57, n, m, "even-5-2", "1 + 4*5 + 6*6")
        raise UnsupportedCaseError("even-case values are known only at (n, m) = (5, 2)")
    w = omega_count(2 * m)
    if n == 9 and m == 1:
        upper = w + sum(comb(9, i) for i in range(1, 5))
        return SigmaValue("bounds", comb(9, 4), upper, n, m, "excluded-9-1",
                          "each (4,5)-cycle lies in a single maximal subgroup; upper bound from the intransitive cover")
    if n % 2 == 1 and n >= 7:
        v = w + sum(comb(n, i) ** m for i in range(1, (n - 1) // 2 + 1))
        return SigmaValue("exact", v, v, n, m, "odd-n>=7")
    if n == 5:
        hi = w + 5**m + 10**m
        if set(primefactors(m)) <= {2, 3}:
            return SigmaValue("exact", hi, hi, n, m, "n=5")
        return SigmaValue("bounds", 10**m, hi, n, m, "n=5")
    if n == 6:
        v = w + 2 * 6**m
        return SigmaValue("exact", v, v, n, m, "n=6")
    half = comb(n, n // 2) // 2
    return SigmaValue("bounds", half**m, w + half**m + sum(comb(n, i) ** m for i in range(1, n // 3 + 1)),
                      n, m, "even-n>=8")
