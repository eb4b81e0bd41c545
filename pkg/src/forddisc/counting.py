"""
Exact counts of binary words avoiding a run of k zeros.

a_n = alpha_k(n) counts the words of length n with no subword 0**k and
b_n = beta_k(n) sums their skews. Both satisfy order-k linear recurrences,
evaluated here with Python integers so every inequality below is checked
exactly. Floating point only appears in the tail-bound helpers.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from forddisc.errors import ConvergenceError, InvalidArgumentError
from forddisc.reports import CheckReport, ClaimStatus

logger = logging.getLogger(__name__)

ROOT_ITERATION_CAP = 2000


@dataclass(frozen=True)
class CountTable:
    """alpha_k(0..n_max) and beta_k(0..n_max) for one k"""
    k: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.a) - 1

    def alpha(self, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise InvalidArgumentError(f"alpha_{self.k}({n}) lies outside the table 0..{self.n_max}")
        return self.a[n]

    def beta(self, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise InvalidArgumentError(f"beta_{self.k}({n}) lies outside the table 0..{self.n_max}")
        return self.b[n]

    def partial_sum(self, n: int) -> int:
        """a_0 + ... + a_{n-1}"""
        return sum(self.a[:n])


@lru_cache(maxsize=128)
def build_table(k: int, n_max: int) -> CountTable:
    """Tables of alpha_k and beta_k up to n_max from the two recurrences"""
    if k < 2:
        raise InvalidArgumentError(f"the run-length parameter k must be at least 2, got {k}")
    if n_max < 0:
        raise InvalidArgumentError(f"n_max must be nonnegative, got {n_max}")
    a = []
    b = []
    for n in range(n_max + 1):
        if n < k:
            a.append(1 << n)
            b.append(0)
            continue
        a.append(sum(a[n - j] for j in range(1, k + 1)))
        b.append(sum((j - 2) * a[n - j] + b[n - j] for j in range(1, k + 1)))
    return CountTable(k=k, a=tuple(a), b=tuple(b))


def _table_for(k: int, n_max: int, table: Optional[CountTable]) -> CountTable:
    if table is None:
        return build_table(k, n_max)
    if table.k != k or table.n_max < n_max:
        raise InvalidArgumentError(f"table for k={table.k} up to {table.n_max} cannot serve k={k} up to {n_max}")
    return table


# -- the dominant root ------------------------------------------------------


def f_poly(k: int, z: Fraction) -> Fraction:
    """z**k - (z**(k-1) + ... + 1), the characteristic polynomial of alpha_k"""
    return z ** k - sum(z ** j for j in range(k))


def g_poly(k: int, z: Fraction) -> Fraction:
    """z**(k+1) - 2 z**k + 1 = (z - 1) f(z)"""
    return z ** (k + 1) - 2 * z ** k + 1


@dataclass(frozen=True)
class RootEstimate:
    """The real root of f in (3/2, 2), as an exact dyadic rational"""
    k: int
    value: Fraction
    residual: Fraction
    precision: Fraction

    @property
    def approx(self) -> float:
        return float(self.value)

    @property
    def g_residual(self) -> Fraction:
        return abs(g_poly(self.k, self.value))


@lru_cache(maxsize=256)
def rho(k: int, tol: float = 1e-12) -> RootEstimate:
    """Bisect f over [3/2, 2] until both the bracket width and |f| are within tol"""
    if k < 2:
        raise InvalidArgumentError(f"the run-length parameter k must be at least 2, got {k}")
    if tol <= 0:
        raise InvalidArgumentError("tolerance must be positive")
    bound = Fraction(tol)
    lo, hi = Fraction(3, 2), Fraction(2)
    # f(3/2) = 2 - (3/2)**k < 0 and f(2) = 1 for every k >= 2
    for _ in range(ROOT_ITERATION_CAP):
        mid = (lo + hi) / 2
        value = f_poly(k, mid)
        if hi - lo <= bound and abs(value) <= bound:
            logger.debug("rho_%d bracketed to width %s", k, float(hi - lo))
            return RootEstimate(k=k, value=mid, residual=abs(value), precision=(hi - lo) / 2)
        if value < 0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection for rho_{k} did not reach {tol} in {ROOT_ITERATION_CAP} steps")


# -- identities and inequalities ----------------------------------------------


def check_lemma2(k: int, n_max: int, table: Optional[CountTable] = None) -> CheckReport:
    """a_{n-1} = k + sum_{j=3..k} (j-2) a_{n-j} + (k-1) sum_{j<n-k} a_j for k+1 <= n <= n_max"""
    if k < 3:
        raise InvalidArgumentError("identity stated for k >= 3")
    table = _table_for(k, n_max, table)
    a = table.a
    report = CheckReport(claim="lemma2", range={"k": [k, k], "n": [k + 1, n_max]})
    prefix = 0  # a_0 + ... + a_{n-k-1}
    for n in range(k + 1, n_max + 1):
        prefix += a[n - k - 1]
        rhs = k + sum((j - 2) * a[n - j] for j in range(3, k + 1)) + (k - 1) * prefix
        report.checked += 1
        if a[n - 1] != rhs:
            report.record_failure(k=k, n=n, lhs=a[n - 1], rhs=rhs)
            break
    return report


def check_cor3(k: int, n_max: int, table: Optional[CountTable] = None) -> CheckReport:
    """b_n < 0 for k+1 <= n <= n_max (k >= 3); k = 2 is scanned as an observation"""
    if k < 2:
        raise InvalidArgumentError(f"the run-length parameter k must be at least 2, got {k}")
    table = _table_for(k, n_max, table)
    if k < 3:
        report = CheckReport(
            claim="cor3", range={"k": [k, k], "n": [k, n_max]}, status=ClaimStatus.OUT_OF_RANGE
        )
        nonnegative = [n for n in range(k, n_max + 1) if table.b[n] >= 0]
        report.observe(
            k=k,
            note="outside the stated range k >= 3",
            b_negative_for_all=not nonnegative,
            first_nonnegative=nonnegative[0] if nonnegative else None,
        )
        return report
    report = CheckReport(claim="cor3", range={"k": [k, k], "n": [k + 1, n_max]})
    for n in range(k + 1, n_max + 1):
        report.checked += 1
        if table.b[n] >= 0:
            report.record_failure(k=k, n=n, b=table.b[n])
            break
    return report


def check_lemma4(
    k: int,
    n_max: int,
    slack: float = 1e-9,
    tol: float = 1e-12,
    table: Optional[CountTable] = None,
) -> CheckReport:
    """a_n >= (rho_k - slack) a_{n-1} for 1 <= n <= n_max, in integer arithmetic.

    Violations are flagged rather than failed: the ratio a_n / a_{n-1}
    oscillates around rho_k, so the bound cannot hold at every n.
    """
    table = _table_for(k, n_max, table)
    root = rho(k, tol)
    scale = math.ceil(1 / Fraction(repr(slack)))
    threshold = math.ceil((root.value - Fraction(repr(slack))) * scale)
    report = CheckReport(claim="lemma4", range={"k": [k, k], "n": [1, n_max]})
    a = table.a
    for n in range(1, n_max + 1):
        report.checked += 1
        if a[n] * scale < threshold * a[n - 1]:
            report.flag(k=k, n=n, ratio=f"{a[n]}/{a[n - 1]}", approx=a[n] / a[n - 1], rho=root.approx)
    if report.status is ClaimStatus.FLAGGED:
        logger.info("lemma4: %d flagged (k, n) pairs for k=%d", len(report.observations), k)
    return report


def check_lemma5(k: int, n_max: int, table: Optional[CountTable] = None) -> CheckReport:
    """3 b_n >= -2 k a_n for k <= n <= n_max, checked exactly.

    b_n / a_n drifts linearly in n (0**k-free words carry a surplus of 1s),
    so the bound eventually breaks for every k. The scan flags the first
    breaking n and how many n in range break, instead of failing.
    """
    if k < 4:
        raise InvalidArgumentError("inequality stated for k >= 4")
    table = _table_for(k, n_max, table)
    report = CheckReport(claim="lemma5", range={"k": [k, k], "n": [k, n_max]})
    broken = []
    for n in range(k, n_max + 1):
        report.checked += 1
        if 3 * table.b[n] < -2 * k * table.a[n]:
            broken.append(n)
    if broken:
        first = broken[0]
        report.flag(
            k=k,
            first_n=first,
            violations=len(broken),
            holds_through=first - 1,
            b=table.b[first],
            a=table.a[first],
        )
        logger.info("lemma5: k=%d holds through n=%d, %d violations up to %d", k, first - 1, len(broken), n_max)
    return report


def check_eq1(k: int, n_max: int, table: Optional[CountTable] = None) -> CheckReport:
    """b_n = -k - (k-1) sum_{j<n-k} a_j + sum_{j=1..k} b_{n-j} for k+1 <= n <= n_max"""
    if k < 3:
        raise InvalidArgumentError("closed form stated for k >= 3")
    if n_max < k + 1:
        raise InvalidArgumentError(f"closed form needs n >= k+1 = {k + 1}, got n_max={n_max}")
    table = _table_for(k, n_max, table)
    a, b = table.a, table.b
    report = CheckReport(claim="eq1", range={"k": [k, k], "n": [k + 1, n_max]})
    prefix = 0
    for n in range(k + 1, n_max + 1):
        prefix += a[n - k - 1]
        rhs = -k - (k - 1) * prefix + sum(b[n - j] for j in range(1, k + 1))
        report.checked += 1
        if b[n] != rhs:
            report.record_failure(k=k, n=n, lhs=b[n], rhs=rhs)
            break
    return report


def check_endpoints(k_min: int, k_max: int) -> CheckReport:
    """a_k = 2^k - 1, a_{k+1} = 2^{k+1} - 3, b_k = -k and b_{k+1} = 1 - 3k.

    The value 1 - 2k sometimes quoted for b_{k+1} omits the skew of 0**(k+1);
    each k records whether that value matches as an observation.
    """
    report = CheckReport(claim="endpoints", range={"k": [k_min, k_max]})
    for k in range(k_min, k_max + 1):
        table = build_table(k, k + 1)
        expected = {
            "a_k": (table.a[k], (1 << k) - 1),
            "a_k+1": (table.a[k + 1], (1 << (k + 1)) - 3),
            "b_k": (table.b[k], -k),
            "b_k+1": (table.b[k + 1], 1 - 3 * k),
        }
        report.checked += 1
        for name, (actual, value) in expected.items():
            if actual != value:
                report.record_failure(k=k, identity=name, actual=actual, expected=value)
        if table.b[k + 1] != 1 - 2 * k:
            report.observe(k=k, identity="b_k+1 = 1-2k", holds=False, actual=table.b[k + 1])
        if report.status is ClaimStatus.FAIL:
            break
    return report


def check_roots(k_min: int, k_max: int, tol: float = 1e-12) -> CheckReport:
    """|g(rho_k)| < 1e-10, and 5/3 < rho_k < 2 for k >= 3 (k = 2 is observed only)"""
    report = CheckReport(claim="roots", range={"k": [k_min, k_max]})
    limit = Fraction(1, 10 ** 10)
    for k in range(k_min, k_max + 1):
        root = rho(k, tol)
        report.checked += 1
        if root.g_residual >= limit:
            report.record_failure(k=k, g_residual=float(root.g_residual))
            break
        inside = Fraction(5, 3) < root.value < 2
        if k < 3:
            report.observe(k=k, rho=root.approx, inside_5_3_to_2=inside, note="range stated for k >= 3")
        elif not inside:
            report.record_failure(k=k, rho=root.approx)
            break
    return report


# -- tail bounds ---------------------------------------------------------------


def janson_upper(k: int, m: int) -> float:
    """2^m exp(-(m-k+1) / (12 * 2^k)), an upper bound on alpha_k(m)"""
    if k < 2 or m < k:
        raise InvalidArgumentError(f"need k >= 2 and m >= k, got k={k}, m={m}")
    return math.ldexp(math.exp(-(m - k + 1) / (12 * 2 ** k)), m)


def _alpha_lower_union_exact(k: int, m: int) -> Fraction:
    if k < 1 or m < 0:
        raise InvalidArgumentError(f"need k >= 1 and m >= 0, got k={k}, m={m}")
    return 2 ** m * (1 - Fraction(max(0, m - k + 1), 2 ** k))


def alpha_lower_union(k: int, m: int) -> float:
    """2^m (1 - max(0, m-k+1) 2^-k): one minus the union bound over the run windows"""
    return float(_alpha_lower_union_exact(k, m))


@dataclass(frozen=True)
class JansonParameters:
    """Exact mu and Delta for the events 'window i is all zeros' in a length-m word"""
    k: int
    m: int
    mu: Fraction
    delta: Fraction

    @property
    def hypothesis_holds(self) -> bool:
        return self.delta >= self.mu / 2

    @property
    def delta_below_two_mu(self) -> bool:
        return self.delta < 2 * self.mu


def janson_parameters(k: int, m: int) -> JansonParameters:
    if k < 1 or m < k:
        raise InvalidArgumentError(f"need k >= 1 and m >= k, got k={k}, m={m}")
    windows = m - k + 1
    mu = Fraction(windows, 2 ** k)
    # ordered pairs of overlapping windows at distance s: 2 (windows - s)
    delta = sum(
        (Fraction(2 * (windows - s), 2 ** (k + s)) for s in range(1, min(k, windows))),
        Fraction(0),
    )
    return JansonParameters(k=k, m=m, mu=mu, delta=delta)


def check_janson(k_min: int, k_max: int, m_max: int) -> CheckReport:
    """alpha_k(m) <= janson_upper(k, m) over k_min <= k <= k_max, k <= m <= m_max"""
    report = CheckReport(claim="janson_upper", range={"k": [k_min, k_max], "m": [k_min, m_max]})
    for k in range(k_min, k_max + 1):
        table = build_table(k, m_max)
        for m in range(k, m_max + 1):
            report.checked += 1
            bound = janson_upper(k, m)
            if table.a[m] > bound:
                report.record_failure(k=k, m=m, alpha=table.a[m], bound=bound)
                return report
            params = janson_parameters(k, m)
            if not params.delta_below_two_mu:
                report.record_failure(k=k, m=m, mu=str(params.mu), delta=str(params.delta))
                return report
            if not params.hypothesis_holds:
                report.observe(k=k, m=m, note="Delta < mu/2", mu=str(params.mu), delta=str(params.delta))
    return report


def check_union(k_min: int, k_max: int, m_max: int) -> CheckReport:
    """alpha_k(m) >= alpha_lower_union(k, m), compared exactly"""
    report = CheckReport(claim="union_lower", range={"k": [k_min, k_max], "m": [k_min, m_max]})
    for k in range(k_min, k_max + 1):
        table = build_table(k, m_max)
        for m in range(k, m_max + 1):
            report.checked += 1
            bound = _alpha_lower_union_exact(k, m)
            if table.a[m] < bound:
                report.record_failure(k=k, m=m, alpha=table.a[m], bound=float(bound))
                return report
    return report
