"""Fat-point interpolation matrices and speciality verdicts.

A linear system lives on P^n (forms of degree d, dehomogenized at the last
coordinate) or on a Hirzebruch surface F_n (sections of aH+bF in the bigraded
chart basis). A point of multiplicity m imposes vanishing of all partial
derivatives of order <= m-1; the resulting conditions x basis matrix is
evaluated exactly mod p at seeded random points and its rank decides
speciality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .algebra import ExactMatrix, matrix_rank_mod, random_affine_point, rng_stream
from .config import get_prime, get_seed
from .errors import DegenerateChart

GENERIC = "generic"
ON_HYPERPLANE = "hyperplane"


@dataclass(frozen=True)
class Projective:
    """Degree-d forms on P^n, n = ambient dimension."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 0:
            raise ValueError(f"invalid projective system P^{self.n}, degree {self.d}")


@dataclass(frozen=True)
class Hirzebruch:
    """Sections of aH+bF on the Hirzebruch surface F_n (F^2=0, H^2=n, F.H=1)."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 0 or self.a < 0 or self.b < 0:
            raise ValueError(f"invalid Hirzebruch system F_{self.n}, {self.a}H+{self.b}F")


LinearSystemSpec = Projective | Hirzebruch


def chart_dim(spec: LinearSystemSpec) -> int:
    return spec.n if isinstance(spec, Projective) else 2


def basis_size(spec: LinearSystemSpec) -> int:
    if isinstance(spec, Projective):
        return comb(spec.d + spec.n, spec.n)
    return sum(spec.b + spec.n * i + 1 for i in range(spec.a + 1))


def multi_indices(nvars: int, max_order: int) -> list[tuple[int, ...]]:
    """All exponent tuples with total degree <= max_order, lexicographic."""
    if max_order < 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], budget: int):
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        for v in range(budget + 1):
            rec(prefix + [v], budget - v)

    rec([], max_order)
    return out


def monomial_basis(spec: LinearSystemSpec) -> np.ndarray:
    """Exponent vectors of the chart monomial basis, lexicographic order."""
    if isinstance(spec, Projective):
        exps = multi_indices(spec.n, spec.d)
    else:
        exps = [(i, j) for i in range(spec.a + 1) for j in range(spec.b + spec.n * i + 1)]
    return np.array(exps, dtype=np.int64).reshape(len(exps), chart_dim(spec))


@dataclass(frozen=True)
class FatPoint:
    """A point of given multiplicity with a location constraint."""

    multiplicity: int
    location: str | tuple[int, ...] = GENERIC

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        if isinstance(self.location, str) and self.location not in (GENERIC, ON_HYPERPLANE):
            raise ValueError(f"unknown location {self.location!r}")
        if not isinstance(self.location, str):
            object.__setattr__(self, "location", tuple(int(c) for c in self.location))

    @classmethod
    def generic(cls, m: int) -> "FatPoint":
        return cls(m, GENERIC)

    @classmethod
    def on_hyperplane(cls, m: int) -> "FatPoint":
        return cls(m, ON_HYPERPLANE)

    @classmethod
    def explicit(cls, m: int, coords) -> "FatPoint":
        return cls(m, tuple(coords))


@dataclass(frozen=True)
class FatPointScheme:
    points: tuple[FatPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    @classmethod
    def of(cls, *, triple: int = 0, double: int = 0, simple: int = 0) -> "FatPointScheme":
        pts = [FatPoint.generic(3)] * triple + [FatPoint.generic(2)] * double
        pts += [FatPoint.generic(1)] * simple
        return cls(tuple(pts))


def point_conditions(spec: LinearSystemSpec, m: int) -> int:
    """Linear conditions imposed by one point of multiplicity m."""
    v = chart_dim(spec)
    return comb(v + m - 1, v)


def conditions(scheme: FatPointScheme, spec: LinearSystemSpec) -> int:
    return sum(point_conditions(spec, pt.multiplicity) for pt in scheme.points)


def derivative_rows(
    exps: np.ndarray, point: np.ndarray, max_order: int, p: int | None = None
) -> np.ndarray:
    """Rows of all partials of order <= max_order of the monomials `exps` at `point`.

    Entry for multi-index I and exponent E is d^I(x^E)(point), computed exactly
    via falling-factorial coefficients mod p. Rows follow multi_indices order.
    """
    p = p or get_prime()
    exps = np.asarray(exps, dtype=np.int64)
    nb, nv = exps.shape
    point = np.asarray(point, dtype=np.int64) % p
    if point.shape != (nv,):
        raise DegenerateChart(f"point has {point.shape} coordinates, chart needs {nv}")
    maxdeg = int(exps.max()) if exps.size else 0
    pow_table = np.ones((nv, maxdeg + 1), dtype=np.int64)
    for j in range(1, maxdeg + 1):
        pow_table[:, j] = pow_table[:, j - 1] * point % p
    # ff[i, e] = e (e-1) ... (e-i+1) mod p; zero when e < i
    ff = np.zeros((max_order + 1, maxdeg + 1), dtype=np.int64)
    ff[0, :] = 1
    for i in range(1, max_order + 1):
        for e in range(i, maxdeg + 1):
            ff[i, e] = ff[i - 1, e] * (e - i + 1) % p
    idx = multi_indices(nv, max_order)
    rows = np.empty((len(idx), nb), dtype=np.int64)
    for r, index in enumerate(idx):
        row = np.ones(nb, dtype=np.int64)
        for v, iv in enumerate(index):
            e = exps[:, v]
            row = row * ff[iv, e] % p
            row = row * pow_table[v, np.maximum(e - iv, 0)] % p
        rows[r] = row
    return rows


def condition_rows(
    spec: LinearSystemSpec, point, m: int, p: int | None = None
) -> np.ndarray:
    """Vanishing conditions imposed by one multiplicity-m point: one row per
    partial of order <= m-1."""
    return derivative_rows(monomial_basis(spec), np.asarray(point), m - 1, p)


def sample_point(spec: LinearSystemSpec, pt: FatPoint, rng, p: int | None = None) -> np.ndarray:
    p = p or get_prime()
    v = chart_dim(spec)
    if pt.location == GENERIC:
        return random_affine_point(v, rng, p)
    if pt.location == ON_HYPERPLANE:
        if not isinstance(spec, Projective):
            raise DegenerateChart("hyperplane points are only defined on projective systems")
        coords = np.zeros(v, dtype=np.int64)
        coords[: v - 1] = random_affine_point(v - 1, rng, p)
        return coords
    coords = np.asarray(pt.location, dtype=np.int64) % p
    if coords.shape != (v,):
        raise DegenerateChart(f"explicit point has {coords.size} coordinates, chart needs {v}")
    return coords


def build_matrix(
    spec: LinearSystemSpec, scheme: FatPointScheme, rng, p: int | None = None
) -> ExactMatrix:
    """Conditions x basis interpolation matrix, point row blocks in scheme order."""
    p = p or get_prime()
    exps = monomial_basis(spec)
    blocks = []
    for pt in scheme.points:
        coords = sample_point(spec, pt, rng, p)
        blocks.append(derivative_rows(exps, coords, pt.multiplicity - 1, p))
    if blocks:
        data = np.vstack(blocks)
    else:
        data = np.zeros((0, exps.shape[0]), dtype=np.int64)
    return ExactMatrix(data, p)


CERTIFIED_NON_SPECIAL = "CertifiedNonSpecial"
OBSERVED_SPECIAL = "ObservedSpecial"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class RankReport:
    rows: int
    cols: int
    observed_rank: int
    trials: int
    master_seed: int
    trial_ranks: tuple[int, ...]


@dataclass(frozen=True)
class SpecialityVerdict:
    kind: str
    deficiency: int | None = None

    def __str__(self):
        if self.kind == OBSERVED_SPECIAL:
            return f"{self.kind}(deficiency={self.deficiency})"
        return self.kind


def speciality(
    spec: LinearSystemSpec,
    scheme: FatPointScheme,
    trials: int = 3,
    seed: int | None = None,
    p: int | None = None,
) -> tuple[RankReport, SpecialityVerdict]:
    """Max observed rank over independent trials and the three-valued verdict.

    Full rank in any trial certifies non-speciality (generic maximal rank by
    semicontinuity). A deficiency reproduced identically in every trial is
    reported as ObservedSpecial; it is evidence, never a proof. Disagreeing
    deficient trials yield Undetermined.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = p or get_prime()
    seed = get_seed() if seed is None else seed
    ranks = []
    for trial in range(trials):
        m = build_matrix(spec, scheme, rng_stream(seed, trial), p)
        ranks.append(m.rank())
    rows = conditions(scheme, spec)
    cols = basis_size(spec)
    observed = max(ranks)
    report = RankReport(rows, cols, observed, trials, seed, tuple(ranks))
    full = min(rows, cols)
    if observed == full:
        verdict = SpecialityVerdict(CERTIFIED_NON_SPECIAL)
    elif all(r == observed for r in ranks):
        verdict = SpecialityVerdict(OBSERVED_SPECIAL, full - observed)
    else:
        verdict = SpecialityVerdict(UNDETERMINED)
    return report, verdict


def system_dimension(
    spec: LinearSystemSpec,
    scheme: FatPointScheme,
    trials: int = 3,
    seed: int | None = None,
    p: int | None = None,
) -> int:
    """Projective dimension of the linear system through the scheme; -1 = empty."""
    report, _ = speciality(spec, scheme, trials, seed, p)
    return report.cols - report.observed_rank - 1


# JSON scheme documents: {"spec": {...}, "points": [{"m": 3, "loc": "generic"}, ...]}

def spec_to_json(spec: LinearSystemSpec) -> dict:
    if isinstance(spec, Projective):
        return {"kind": "projective", "n": spec.n, "d": spec.d}
    return {"kind": "hirzebruch", "n": spec.n, "a": spec.a, "b": spec.b}


def spec_from_json(doc: dict) -> LinearSystemSpec:
    kind = doc.get("kind")
    if kind == "projective":
        return Projective(int(doc["n"]), int(doc["d"]))
    if kind == "hirzebruch":
        return Hirzebruch(int(doc["n"]), int(doc["a"]), int(doc["b"]))
    raise ValueError(f"unknown spec kind {kind!r}")


def scheme_to_json(spec: LinearSystemSpec, scheme: FatPointScheme) -> dict:
    pts = []
    for pt in scheme.points:
        loc = pt.location if isinstance(pt.location, str) else list(pt.location)
        pts.append({"m": pt.multiplicity, "loc": loc})
    return {"spec": spec_to_json(spec), "points": pts}


def scheme_from_json(doc: dict) -> tuple[LinearSystemSpec, FatPointScheme]:
    try:
        spec = spec_from_json(doc["spec"])
        pts = []
        for entry in doc.get("points", []):
            loc = entry.get("loc", GENERIC)
            if isinstance(loc, list):
                loc = tuple(int(c) for c in loc)
            pts.append(FatPoint(int(entry["m"]), loc))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed scheme document: {exc}") from exc
    return spec, FatPointScheme(tuple(pts))


def load_scheme(path: str) -> tuple[LinearSystemSpec, FatPointScheme]:
    with open(path) as fh:
        return scheme_from_json(json.load(fh))
