"""Extremal lower-bound colorings for R(C_{2|an|}, F_n) and their certification.

The ratio ``a`` is always a ``fractions.Fraction`` so that regime tests and
``floor(a*n)`` are exact.  Witness families:

======  ================  =========================================  ===============
family  regime            red graph                                  order
======  ================  =========================================  ===============
W1      1/2 <= a < 1      K_{2f-1} + K_{n-2} + K_{n-2} (disjoint)    2f + 2n - 5
W2      2/5 <= a < 1/2    3 K_{2f-1}                                 6f - 3
W3      0 < a < 2/5       K_{f-1} joined to an independent 2n-set    f - 1 + 2n
W4      a >= 1            2 K_{2f-1}                                 4f - 2
W5      triangle vs F_n   K_{2n,2n}                                  4n
======  ================  =========================================  ===============

with ``f = floor(a*n)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import SizeLimitError, circumference, has_cycle_of_length, multipartite_parts
from .cycles import CycleEmbedding
from .graph import (
    SimpleGraph,
    TwoColoring,
    bits,
    complement,
    complete_bipartite,
    complete_graph,
    component_masks,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    join,
)
from .matching import FanEmbedding, max_fan_blades

HALF = Fraction(1, 2)
TWO_FIFTHS = Fraction(2, 5)
FAMILIES = ("W1", "W2", "W3", "W4", "W5")


class RegimeError(ValueError):
    """Parameters outside the regime a construction or formula covers."""


class FormulaNotAsserted(ValueError):
    """A literature formula was requested outside its stated validity range."""


def parse_ratio(text: str) -> Fraction:
    """Parse ``P/Q`` (or a bare integer) into an exact positive rational."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:/\s*(\d+)\s*)?", text)
    if not m:
        raise ValueError(f"ratio must be written P/Q with integers, got {text!r}")
    q = int(m.group(2)) if m.group(2) else 1
    if q == 0:
        raise ValueError("zero denominator")
    a = Fraction(int(m.group(1)), q)
    if a <= 0:
        raise ValueError("ratio must be positive")
    return a


def floor_an(a: Fraction, n: int) -> int:
    a = Fraction(a)
    return a.numerator * n // a.denominator


def regime_family(a: Fraction) -> str:
    """The witness family covering ``a`` (half-open intervals, closed at the left)."""
    a = Fraction(a)
    if a <= 0:
        raise RegimeError("a must be positive")
    if a >= 1:
        return "W4"
    if a >= HALF:
        return "W1"
    if a >= TWO_FIFTHS:
        return "W2"
    return "W3"


def lower_bound_value(a: Fraction, n: int) -> int:
    """The lower bound on R(C_{2|an|}, F_n) that the family for ``a`` certifies."""
    f = floor_an(a, n)
    family = regime_family(a)
    if family == "W4":
        return 4 * f - 1
    if family == "W1":
        return 2 * f + 2 * n - 4
    if family == "W2":
        return 6 * f - 2
    return f + 2 * n


def asymptotic_main_term(a: Fraction) -> Fraction:
    """Coefficient c with R(C_{2|an|}, F_n) = (c + o(1)) n, for a >= 1/2."""
    a = Fraction(a)
    if a < HALF:
        raise RegimeError("the asymptotic value is only known for a >= 1/2")
    return 4 * a if a >= 1 else 2 + 2 * a


@dataclass(frozen=True)
class TableRow:
    a: Fraction
    lower_bound: int
    main_term: Fraction | None
    gap: Fraction | None

    def as_dict(self) -> dict:
        return {
            "a": str(self.a),
            "lower_bound": self.lower_bound,
            "main_term_times_n": None if self.main_term is None else str(self.main_term),
            "gap": None if self.gap is None else float(self.gap),
            "gap_exact": None if self.gap is None else str(self.gap),
        }


def asymptotic_table(a_list: list[Fraction], n: int) -> list[TableRow]:
    rows = []
    for a in a_list:
        lb = lower_bound_value(a, n)
        if Fraction(a) >= HALF:
            main = asymptotic_main_term(a) * n
            rows.append(TableRow(Fraction(a), lb, main, (main - lb) / n))
        else:
            rows.append(TableRow(Fraction(a), lb, None, None))
    return rows


def format_table(rows: list[TableRow]) -> str:
    header = ("a", "lower_bound", "main_term*n", "gap")
    body = [
        (str(r.a), str(r.lower_bound), "" if r.main_term is None else str(r.main_term),
         "" if r.gap is None else f"{float(r.gap):.3e}")
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in [header, *body]]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    n: int
    a: Fraction | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise RegimeError("n must be positive")
        if self.family == "W5":
            if self.n < 1:
                raise RegimeError("W5 needs n >= 1")
            return
        if self.a is None:
            raise RegimeError(f"{self.family} needs a ratio a")
        a = Fraction(self.a)
        object.__setattr__(self, "a", a)
        if regime_family(a) != self.family:
            raise RegimeError(f"a = {a} is outside the regime of {self.family}")
        if floor_an(a, self.n) < 2:
            raise RegimeError("floor(a*n) must be at least 2 (cycle length >= 4)")
        if self.family == "W1" and self.n < 2:
            raise RegimeError("W1 needs n >= 2")

    @property
    def cycle_length(self) -> int:
        if self.family == "W5":
            return 3
        return 2 * floor_an(self.a, self.n)

    @property
    def lower_bound(self) -> int:
        if self.family == "W5":
            return 4 * self.n + 1
        return lower_bound_value(self.a, self.n)


def build_witness(spec: ConstructionSpec) -> TwoColoring:
    n = spec.n
    if spec.family == "W5":
        return TwoColoring(complete_bipartite(2 * n, 2 * n))
    f = floor_an(spec.a, n)
    if spec.family == "W1":
        red = disjoint_union(complete_graph(2 * f - 1), complete_graph(n - 2), complete_graph(n - 2))
    elif spec.family == "W2":
        red = disjoint_union(*[complete_graph(2 * f - 1)] * 3)
    elif spec.family == "W3":
        red = join(complete_graph(f - 1), empty_graph(2 * n))
    else:
        red = disjoint_union(*[complete_graph(2 * f - 1)] * 2)
    return TwoColoring(red)


# ---------------------------------------------------------------- verifier


@dataclass(frozen=True)
class ComponentEvidence:
    vertices: int
    circumference: int | None
    method: str


@dataclass
class Certificate:
    verdict: str  # avoids | contains-red-cycle | contains-blue-fan
    target_cycle: int
    target_fan: int
    red_components: list[ComponentEvidence] = field(default_factory=list)
    blue_blades: list[int] = field(default_factory=list)
    cycle: CycleEmbedding | None = None
    fan: FanEmbedding | None = None
    paths: list[str] = field(default_factory=list)

    @property
    def avoids(self) -> bool:
        return self.verdict == "avoids"

    @property
    def max_blue_blades(self) -> int:
        return max(self.blue_blades, default=0)

    def validate(self, c: TwoColoring) -> None:
        """Re-check the evidence against ``c``; raises AssertionError on mismatch."""
        if self.verdict == "contains-red-cycle":
            assert self.cycle is not None and len(self.cycle) == self.target_cycle
            self.cycle.validate(c.red)
        elif self.verdict == "contains-blue-fan":
            assert self.fan is not None and len(self.fan.blades) >= self.target_fan
            self.fan.validate(c.blue)
        elif self.verdict == "avoids":
            assert sum(e.vertices for e in self.red_components) == c.n
            if self.blue_blades:
                assert len(self.blue_blades) == c.n
                assert self.max_blue_blades < self.target_fan
        else:
            raise AssertionError(f"unknown verdict {self.verdict!r}")

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "target_cycle": self.target_cycle,
            "target_fan": self.target_fan,
            "red_components": [
                {"vertices": e.vertices, "circumference": e.circumference, "method": e.method}
                for e in self.red_components
            ],
            "max_blue_blades": self.max_blue_blades,
            "blue_blades": self.blue_blades,
            "paths": self.paths,
        }
        if self.cycle is not None:
            out["cycle"] = list(self.cycle.vertices)
        if self.fan is not None:
            out["fan"] = {"center": self.fan.center, "blades": [list(b) for b in self.fan.blades]}
        return out


def _component_circumference(sub: SimpleGraph) -> int | None:
    try:
        return circumference(sub).length
    except SizeLimitError:
        return None


def _red_cycle(red: SimpleGraph, m: int, cert: Certificate) -> CycleEmbedding | None:
    for comp in sorted(component_masks(red), key=lambda c: (-c.bit_count(), c)):
        size = comp.bit_count()
        sub, index = induced_subgraph(red, bits(comp))
        circ = _component_circumference(sub)
        if size < m:
            cert.red_components.append(ComponentEvidence(size, circ, "order"))
            continue
        method = "complete-multipartite" if multipartite_parts(sub) is not None else "exact"
        cert.red_components.append(ComponentEvidence(size, circ, method))
        if circ is not None and circ < m:
            continue
        found = has_cycle_of_length(sub, m)
        if found is not None:
            cert.paths.append(f"red:{method}")
            return CycleEmbedding(tuple(index[v] for v in found.vertices))
    return None


def _blue_blades(blue: SimpleGraph, n_fan: int, cert: Certificate) -> FanEmbedding | None:
    blades = [0] * blue.n
    cert.blue_blades = blades
    used = set()
    for comp in component_masks(blue):
        parts = multipartite_parts(blue, comp)
        if parts is not None:
            used.add("complete-multipartite")
            # a centre in one part sees the complete multipartite graph on the others
            sizes = [p.bit_count() for p in parts]
            total = sum(sizes)
            for i, part in enumerate(parts):
                others = total - sizes[i]
                largest = max((s for j, s in enumerate(sizes) if j != i), default=0)
                nu = min(others // 2, others - largest)
                for v in bits(part):
                    blades[v] = nu
        elif all(blue.adj[u] & blue.adj[v] == 0 for u in bits(comp) for v in bits(blue.adj[u])):
            used.add("triangle-free")
        else:
            used.add("per-center-matching")
            for v in bits(comp):
                blades[v], _ = max_fan_blades(blue, v)
    cert.paths.extend(f"blue:{p}" for p in sorted(used))
    for v in range(blue.n):
        if blades[v] >= n_fan:
            count, fan = max_fan_blades(blue, v)
            assert count == blades[v]
            return FanEmbedding(v, fan.blades[:n_fan])
    return None


def verify_witness(c: TwoColoring, m: int, n_fan: int) -> Certificate:
    """Certify that ``c`` has no red C_m and no blue F_{n_fan}, or exhibit one."""
    if m < 3:
        raise ValueError("cycle length must be at least 3")
    if n_fan < 1:
        raise ValueError("fan must have at least one blade")
    cert = Certificate("avoids", m, n_fan)
    cycle = _red_cycle(c.red, m, cert)
    if cycle is not None:
        cert.verdict = "contains-red-cycle"
        cert.cycle = cycle
        return cert
    fan = _blue_blades(complement(c.red), n_fan, cert)
    if fan is not None:
        cert.verdict = "contains-blue-fan"
        cert.fan = fan
    return cert


# ------------------------------------------------------- literature values


@dataclass(frozen=True)
class LiteratureValue:
    value: int
    condition: str
    asymptotic_only: bool = False


def literature_value(family: str, n: int, m: int | None = None) -> LiteratureValue:
    """Closed-form Ramsey values from the literature on cycles and fans.

    family: ``c3-fan`` R(C_3, F_n); ``odd-cycle-fan`` R(C_{2m+1}, F_n);
    ``cycle-fan`` R(C_n, F_m); ``fan-fan`` R(F_m, F_n).
    """
    if family == "c3-fan":
        if n < 2:
            raise FormulaNotAsserted("R(C_3, F_n) = 4n+1 is stated for n >= 2")
        return LiteratureValue(4 * n + 1, "n >= 2")
    if family == "odd-cycle-fan":
        if m is None or m < 1:
            raise FormulaNotAsserted("R(C_{2m+1}, F_n) needs a fixed m >= 1")
        return LiteratureValue(4 * n + 1, "fixed m, n sufficiently large", True)
    if family == "cycle-fan":
        if m is None or m < 1 or n <= 3 * m:
            raise FormulaNotAsserted("R(C_n, F_m) = 2n-1 is stated for n > 3m")
        return LiteratureValue(2 * n - 1, "n > 3m")
    if family == "fan-fan":
        if m is None or m < 1:
            raise FormulaNotAsserted("R(F_m, F_n) = 4n+1 needs a fixed m >= 1")
        return LiteratureValue(4 * n + 1, "fixed m >= 1, n sufficiently large", True)
    raise ValueError(f"unknown family {family!r}")


def star_matching_ramsey(k: int, n1: int, n2: int, interpret_t_as_k: bool = False) -> tuple[int, bool]:
    """R(S_k, n1 K_2, n2 K_2); the flag marks whether an interpretation was used.

    The k <= n1 branch is 2 n1 + n2 - 1.  The k > n1 branch is only
    available with ``interpret_t_as_k`` and returns n1 + n2 - 1 + k.
    """
    if not (n1 >= n2 >= 1 and k >= 1):
        raise ValueError("need n1 >= n2 >= 1 and k >= 1")
    if k <= n1:
        return 2 * n1 + n2 - 1, False
    if not interpret_t_as_k:
        raise FormulaNotAsserted("the k > n1 branch is ambiguous in its source; pass interpret_t_as_k")
    return n1 + n2 - 1 + k, True
