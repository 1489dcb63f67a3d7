"""Closed forms, recursions and growth-rate estimates for avoider counts."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from decimal import Decimal, localcontext
from typing import Iterable, Sequence

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
GOLDEN_RATIO_SQUARED = (3 + math.sqrt(5)) / 2

# shape-Wilf classes of the length-3 patterns
CLASS_OF = {
    (2, 1, 3): "213",
    (1, 3, 2): "213",
    (1, 2, 3): "123",
    (2, 3, 1): "123",
    (3, 2, 1): "123",
    (3, 1, 2): "312",
}


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan needs n >= 0")
    return math.comb(2 * n, n) // (n + 1)


def fibonacci(n: int) -> int:
    """f_0 = 0, f_1 = f_2 = 1."""
    if n < 0:
        raise ValueError("fibonacci needs n >= 0")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _pattern(sigma) -> tuple[int, ...]:
    if isinstance(sigma, str):
        sigma = tuple(int(ch) for ch in sigma)
    sigma = tuple(sigma)
    if sigma not in CLASS_OF:
        raise ValueError(f"{sigma} is not a pattern of length 3")
    return sigma


def closed_form_Yn(sigma, n: int) -> int:
    """Avoiders of sigma on the n x n square missing its bottom-right cell."""
    if n < 2:
        raise ValueError("closed_form_Yn needs n >= 2")
    cls = CLASS_OF[_pattern(sigma)]
    c = catalan
    if cls == "213":
        return c(n) - c(n - 2)
    if cls == "123":
        return c(n) - 1
    return 2 * c(n) - 3 * c(n - 1)


def closed_form_St3(sigma, n: int) -> int:
    """Avoiders of sigma on the staircase of width 3 and size n."""
    cls = CLASS_OF[_pattern(sigma)]
    if cls == "213":
        if n < 2:
            raise ValueError("the 213 branch needs n >= 2")
        return (n + 2) * 2 ** (n - 2) // 2
    if n < 1:
        raise ValueError("closed_form_St3 needs n >= 1")
    return fibonacci(2 * n - 1)


def st3_213_by_recursion(n: int) -> int:
    """a_2 = 2 and a_n = 2 a_{n-1} + 2^(n-3)."""
    if n < 2:
        raise ValueError("needs n >= 2")
    a = 2
    for m in range(3, n + 1):
        a = 2 * a + 2 ** (m - 3)
    return a


def st3_123_by_recursion(n: int) -> int:
    """b_1 = 1, b_2 = 2 and b_n = 3 b_{n-1} - b_{n-2}."""
    if n < 1:
        raise ValueError("needs n >= 1")
    prev, cur = 1, 2
    if n == 1:
        return 1
    for _ in range(3, n + 1):
        prev, cur = cur, 3 * cur - prev
    return cur


@dataclass(frozen=True)
class CornerCorrection:
    n: int
    dotted_b: int
    landing_on_b: int


def yn_312_set_difference(n: int) -> CornerCorrection:
    """The two correction terms comparing 312-avoiders of the square and of
    the square minus its bottom-right cell b: square avoiders with a dot at
    b, and avoiders of the smaller diagram whose only 312 lands on b."""
    if n < 2:
        raise ValueError("needs n >= 2")
    return CornerCorrection(n, catalan(n - 1), catalan(n) - 2 * catalan(n - 1))


def triple_catalan_sum(n: int) -> int:
    """Sum of c_i c_j c_k over i + j + k = n - 2 with j >= 1."""
    m = n - 2
    return sum(
        catalan(i) * catalan(j) * catalan(m - i - j)
        for i in range(m + 1)
        for j in range(1, m - i + 1)
    )


def yn_312_minus_321(n: int) -> int:
    """(n-5) (2n-2)! / ((n+1)! (n-1)!) + 1, the gap between the 312 and 321 counts."""
    if n < 2:
        raise ValueError("needs n >= 2")
    f = math.factorial
    num = (n - 5) * f(2 * n - 2)
    den = f(n + 1) * f(n - 1)
    if num % den:
        raise ArithmeticError("gap formula is not integral")
    return num // den + 1


# -- tables ---------------------------------------------------------------------

@dataclass
class CountRow:
    n: int
    pattern: str
    count: int
    source: str
    diagram: str = ""


@dataclass
class CountTable:
    rows: list[CountRow] = field(default_factory=list)
    chains: dict[int, str] = field(default_factory=dict)

    COLUMNS = ("n", "pattern", "count", "source")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for row in self.rows:
            writer.writerow([row.n, row.pattern, row.count, row.source])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "rows": [{k: asdict(r)[k] for k in self.COLUMNS} for r in self.rows],
                "chains": {str(k): v for k, v in self.chains.items()},
            },
            indent=2,
            sort_keys=True,
        )

    def to_text(self) -> str:
        lines = []
        for row in self.rows:
            lines.append(f"n={row.n:<3} {row.pattern:<8} {row.count:>12}  ({row.source})")
        for n, chain in sorted(self.chains.items()):
            lines.append(f"n={n}: {chain}")
        return "\n".join(lines)


def ordering_chain(counts: dict[str, int]) -> str:
    """E.g. "3241 < 2341 = 4231" from a pattern -> count map."""
    items = sorted(counts.items(), key=lambda kv: (kv[1], kv[0]))
    out = items[0][0]
    for (_, prev), (name, value) in zip(items, items[1:]):
        out += (" = " if value == prev else " < ") + name
    return out


def wilf_table(n_range: Iterable[int], patterns: Sequence[Sequence[int]]) -> CountTable:
    """Counts of pattern avoiders on squares, by enumeration, with the ordering per n."""
    from .diagram import square
    from .transversal import count_avoiders, pattern_text

    table = CountTable()
    for n in n_range:
        counts = {}
        for tau in patterns:
            value = count_avoiders(square(n), tuple(tau))
            name = pattern_text(tau)
            counts[name] = value
            table.rows.append(CountRow(n, name, value, "enumeration", f"M_{n}"))
        table.chains[n] = ordering_chain(counts)
    return table


# -- growth rates ---------------------------------------------------------------

FAMILIES = ("squares", "st3", "yn")


@dataclass
class LimitEstimate:
    family: str
    pattern: str
    rows: list[dict] = field(default_factory=list)
    precision: int = 30

    def ratios(self) -> list[float]:
        return [float(r["ratio"]) for r in self.rows if r["ratio"] is not None]

    def roots(self) -> list[float]:
        return [float(r["root"]) for r in self.rows]


def family_diagram(family: str, n: int):
    from .diagram import corner_deleted, square, staircase

    family = family.lower()
    if family == "squares":
        return square(n)
    if family == "st3":
        return staircase(3, n)
    if family == "yn":
        return corner_deleted(n)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_count(family: str, tau: Sequence[int], n: int) -> tuple[int, str]:
    """Count with its provenance: closed forms when known, else enumeration."""
    from .transversal import count_avoiders

    family = family.lower()
    tau = tuple(tau)
    if len(tau) == 3:
        if family == "squares":
            return catalan(n), "closed-form"
        if family == "st3" and (n >= 2 or CLASS_OF[tau] != "213"):
            return closed_form_St3(tau, n), "closed-form"
        if family == "yn" and n >= 2:
            return closed_form_Yn(tau, n), "closed-form"
    return count_avoiders(family_diagram(family, n), tau), "enumeration"


def sw_limit_estimate(family: str, tau: Sequence[int], n_max: int, n_min: int = 1,
                      precision: int = 30) -> LimitEstimate:
    """n-th roots and consecutive ratios of the counts along a diagram family."""
    from .transversal import pattern_text

    if family.lower() == "yn":
        n_min = max(n_min, 2)
    est = LimitEstimate(family.lower(), pattern_text(tau), precision=precision)
    prev = None
    with localcontext() as ctx:
        ctx.prec = precision
        for n in range(n_min, n_max + 1):
            value, source = family_count(family, tau, n)
            root = Decimal(value) ** (Decimal(1) / Decimal(n))
            ratio = Decimal(value) / Decimal(prev) if prev else None
            est.rows.append({
                "n": n,
                "count": value,
                "source": source,
                "root": str(root),
                "ratio": str(ratio) if ratio is not None else None,
            })
            prev = value
    return est
