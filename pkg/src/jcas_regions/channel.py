"""Finite-alphabet state-dependent broadcast channels for joint communication
and sensing.

A channel couples a joint state distribution ``P(s1, s2)`` with a stochastic
kernel ``P(y1, y2 | s1, s2, x)`` and two bounded per-letter distortion
matrices, one per reconstructed state component.  Receiver 1 observes
``(y1, s1)`` and receiver 2 (the eavesdropper) observes ``(y2, s2)``.  The
transmitter sees both outputs through perfect feedback, so no separate
feedback alphabet is modelled.

All arrays are dense float64 tensors and every object here is immutable after
construction, so channel specs can be shared freely across workers.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NegativeProbability,
    SchemaError,
    StochasticityError,
)

#: Tolerance for "sums to one" checks on probability rows.
PROB_TOL = 1e-9

#: Default tolerance for the degradedness residual tests.
DEGRADEDNESS_TOL = 1e-9


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


def hamming_distortion(n: int, n_hat: int | None = None) -> np.ndarray:
    """0/1 distortion matrix: d(s, s_hat) = 1 unless s == s_hat."""
    if n_hat is None:
        n_hat = n
    return 1.0 - np.eye(n, n_hat)


@dataclass(frozen=True)
class ChannelSpec:
    """Immutable description of one channel.

    state_dist : (ns1, ns2) joint state probabilities.
    kernel     : (nx, ns1, ns2, ny1, ny2); kernel[x, s1, s2] is the output
                 distribution over (y1, y2).
    d1, d2     : (nsj, nshatj) per-letter distortion matrices.

    Construction only enforces shape consistency; probabilistic invariants
    are checked by :func:`validate` so that malformed specs can still be
    inspected and reported on.
    """

    state_dist: np.ndarray
    kernel: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "state_dist", _frozen(self.state_dist))
        object.__setattr__(self, "kernel", _frozen(self.kernel))
        object.__setattr__(self, "d1", _frozen(self.d1))
        object.__setattr__(self, "d2", _frozen(self.d2))
        if self.state_dist.ndim != 2:
            raise DimensionMismatch("state_dist must be a 2-d matrix")
        if self.kernel.ndim != 5:
            raise DimensionMismatch("kernel must be a 5-d tensor")
        ns1, ns2 = self.state_dist.shape
        if self.kernel.shape[1] != ns1 or self.kernel.shape[2] != ns2:
            raise DimensionMismatch(
                f"kernel state axes {self.kernel.shape[1:3]} do not match "
                f"state_dist shape {self.state_dist.shape}"
            )
        if min(self.kernel.shape) < 1:
            raise DimensionMismatch("all alphabets must be nonempty")
        if self.d1.ndim != 2 or self.d1.shape[0] != ns1:
            raise DimensionMismatch("d1 must have one row per s1 symbol")
        if self.d2.ndim != 2 or self.d2.shape[0] != ns2:
            raise DimensionMismatch("d2 must have one row per s2 symbol")

    @property
    def nx(self) -> int:
        return self.kernel.shape[0]

    @property
    def ns1(self) -> int:
        return self.kernel.shape[1]

    @property
    def ns2(self) -> int:
        return self.kernel.shape[2]

    @property
    def ny1(self) -> int:
        return self.kernel.shape[3]

    @property
    def ny2(self) -> int:
        return self.kernel.shape[4]

    @property
    def nshat1(self) -> int:
        return self.d1.shape[1]

    @property
    def nshat2(self) -> int:
        return self.d2.shape[1]


def make_channel_spec(state_dist, kernel, d1=None, d2=None) -> ChannelSpec:
    """Build a spec, defaulting missing distortions to Hamming on S_j."""
    state_dist = np.asarray(state_dist, dtype=float)
    kernel = np.asarray(kernel, dtype=float)
    if d1 is None:
        d1 = hamming_distortion(state_dist.shape[0])
    if d2 is None:
        d2 = hamming_distortion(state_dist.shape[1])
    return ChannelSpec(state_dist, kernel, d1, d2)


@dataclass(frozen=True)
class Finding:
    """One violated invariant: where, what, and by how much."""

    kind: str
    location: str
    message: str
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def is_valid(self) -> bool:
        return not self.findings


def validate(spec: ChannelSpec) -> ValidationReport:
    """Check every probabilistic invariant and report all violations.

    Findings come in a fixed traversal order (state entries, state sum,
    kernel entries and row sums in (x, s1, s2) order, then d1 and d2), so a
    given spec always yields the same report.
    """
    findings: list[Finding] = []

    sd = spec.state_dist
    for (i, k), v in np.ndenumerate(sd):
        if v < 0:
            findings.append(Finding(
                "negative", f"state_dist[{i}][{k}]",
                f"state_dist[{i}][{k}] = {v!r} is negative", abs(v)))
    gap = abs(float(sd.sum()) - 1.0)
    if gap > PROB_TOL:
        findings.append(Finding(
            "sum", "state_dist",
            f"state_dist sums to {float(sd.sum())!r}, off by {gap:.3g}", gap))

    for x in range(spec.nx):
        for s1 in range(spec.ns1):
            for s2 in range(spec.ns2):
                row = spec.kernel[x, s1, s2]
                loc = f"kernel[{x}][{s1}][{s2}]"
                for (y1, y2), v in np.ndenumerate(row):
                    if v < 0:
                        flat = y1 * spec.ny2 + y2
                        findings.append(Finding(
                            "negative", f"{loc}[{flat}]",
                            f"{loc}[{flat}] = {v!r} is negative", abs(v)))
                gap = abs(float(row.sum()) - 1.0)
                if gap > PROB_TOL:
                    findings.append(Finding(
                        "sum", loc,
                        f"{loc} sums to {float(row.sum())!r}, off by {gap:.3g}",
                        gap))

    for name, d in (("d1", spec.d1), ("d2", spec.d2)):
        for (i, k), v in np.ndenumerate(d):
            if not np.isfinite(v):
                findings.append(Finding(
                    "distortion", f"{name}[{i}][{k}]",
                    f"{name}[{i}][{k}] = {v!r} is not finite", float("inf")))
            elif v < 0:
                findings.append(Finding(
                    "distortion", f"{name}[{i}][{k}]",
                    f"{name}[{i}][{k}] = {v!r} is negative", abs(v)))

    return ValidationReport(tuple(findings))


_REQUIRED_ALPHABETS = ("x", "s1", "s2", "y1", "y2")
_TOP_LEVEL_KEYS = {"alphabets", "state_dist", "kernel", "d1", "d2"}


def parse_channel_document(text: str) -> ChannelSpec:
    """Parse the JSON channel document, checking only the schema.

    The returned spec may still violate probabilistic invariants; use
    :func:`validate` (or :func:`parse_channel_spec`, which raises) to check
    them.  The document layout is::

        {
          "alphabets": {"x": 2, "s1": 2, "s2": 2, "y1": 2, "y2": 2,
                        "shat1": 2, "shat2": 2},      # shat* optional
          "state_dist": [[...], ...],                 # ns1 x ns2
          "kernel": [[[[...], ...], ...], ...],       # [x][s1][s2] -> flat
                                                      # length ny1*ny2, y1-major
          "d1": [[...], ...],                         # optional, ns1 x nshat1
          "d2": [[...], ...]                          # optional, ns2 x nshat2
        }

    Missing distortion matrices default to Hamming distortion on the matching
    state alphabet.
    """
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise SchemaError(f"document is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object")
    unknown = set(doc) - _TOP_LEVEL_KEYS
    if unknown:
        raise SchemaError(f"unknown top-level keys: {sorted(unknown)}")
    for key in ("alphabets", "state_dist", "kernel"):
        if key not in doc:
            raise SchemaError(f"missing required key {key!r}")

    alph = doc["alphabets"]
    if not isinstance(alph, dict):
        raise SchemaError("'alphabets' must be an object")
    for key in _REQUIRED_ALPHABETS:
        if key not in alph:
            raise SchemaError(f"missing alphabet size {key!r}")
    sizes = {}
    for key, value in alph.items():
        if key not in _REQUIRED_ALPHABETS + ("shat1", "shat2"):
            raise SchemaError(f"unknown alphabet key {key!r}")
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise SchemaError(f"alphabet size {key!r} must be a positive integer")
        sizes[key] = value
    nshat1 = sizes.get("shat1", sizes["s1"])
    nshat2 = sizes.get("shat2", sizes["s2"])

    def _array(key, shape, default=None):
        if key not in doc or doc[key] is None:
            return default
        try:
            arr = np.array(doc[key], dtype=float)
        except (TypeError, ValueError):
            raise SchemaError(f"{key!r} is not a rectangular numeric array") from None
        if arr.shape != shape:
            raise SchemaError(f"{key!r} has shape {arr.shape}, expected {shape}")
        return arr

    state = _array("state_dist", (sizes["s1"], sizes["s2"]))
    flat = _array(
        "kernel",
        (sizes["x"], sizes["s1"], sizes["s2"], sizes["y1"] * sizes["y2"]))
    kernel = flat.reshape(
        sizes["x"], sizes["s1"], sizes["s2"], sizes["y1"], sizes["y2"])
    d1 = _array("d1", (sizes["s1"], nshat1), hamming_distortion(sizes["s1"], nshat1))
    d2 = _array("d2", (sizes["s2"], nshat2), hamming_distortion(sizes["s2"], nshat2))
    return ChannelSpec(state, kernel, d1, d2)


def parse_channel_spec(text: str) -> ChannelSpec:
    """Parse a channel document and raise on the first violated invariant."""
    spec = parse_channel_document(text)
    report = validate(spec)
    for f in report.findings:
        if f.kind == "negative":
            raise NegativeProbability(f.message)
        if f.kind == "sum":
            raise StochasticityError(f.message)
        raise SchemaError(f.message)
    return spec


def serialize_channel_spec(spec: ChannelSpec) -> str:
    """Inverse of :func:`parse_channel_spec`; round-trips bit exactly.

    Floats are written with full repr precision (17 significant digits),
    which exceeds the 12 digits the format requires.
    """
    doc = {
        "alphabets": {
            "x": spec.nx, "s1": spec.ns1, "s2": spec.ns2,
            "y1": spec.ny1, "y2": spec.ny2,
            "shat1": spec.nshat1, "shat2": spec.nshat2,
        },
        "state_dist": spec.state_dist.tolist(),
        "kernel": spec.kernel.reshape(
            spec.nx, spec.ns1, spec.ns2, spec.ny1 * spec.ny2).tolist(),
        "d1": spec.d1.tolist(),
        "d2": spec.d2.tolist(),
    }
    return json.dumps(doc, indent=1)


def make_binary_multiplicative(q: float, alpha: float) -> ChannelSpec:
    """Binary channel with multiplicative Bernoulli states.

    Outputs are y1 = s1 * x and y2 = s2 * x.  The states are correlated
    Bernoulli variables with P(s1=0, s2=0) = 1-q, P(s1=1, s2=0) = q(1-alpha),
    P(s1=1, s2=1) = q*alpha and P(s1=0, s2=1) = 0, so receiver 2's state can
    be active only when receiver 1's is.  Both distortions are Hamming.
    """
    if not (0.0 <= q <= 1.0):
        raise DomainError(f"q must lie in [0, 1], got {q!r}")
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    state = np.array([[1.0 - q, 0.0], [q * (1.0 - alpha), q * alpha]])
    kernel = np.zeros((2, 2, 2, 2, 2))
    for x in range(2):
        for s1 in range(2):
            for s2 in range(2):
                kernel[x, s1, s2, s1 * x, s2 * x] = 1.0
    return make_channel_spec(state, kernel)


def swap_receivers(spec: ChannelSpec) -> ChannelSpec:
    """Exchange the roles of (Y1, S1) and (Y2, S2)."""
    return ChannelSpec(
        state_dist=spec.state_dist.T,
        kernel=spec.kernel.transpose(0, 2, 1, 4, 3),
        d1=spec.d2,
        d2=spec.d1,
    )


class DegradednessKind(enum.Enum):
    PHYSICALLY_DEGRADED = "physically-degraded"
    REVERSELY_DEGRADED = "reversely-physically-degraded"
    BOTH = "both"
    NEITHER = "neither"


@dataclass(frozen=True)
class DegradednessClass:
    """Classification outcome plus the measured factorization residuals."""

    kind: DegradednessKind
    residual_phys: float
    residual_rev: float

    @property
    def is_physically_degraded(self) -> bool:
        return self.kind in (DegradednessKind.PHYSICALLY_DEGRADED,
                             DegradednessKind.BOTH)

    @property
    def is_reversely_degraded(self) -> bool:
        return self.kind in (DegradednessKind.REVERSELY_DEGRADED,
                             DegradednessKind.BOTH)


def _conditional_residual(joint: np.ndarray) -> float:
    # joint axes: (x, c, t) where c indexes the conditioning pair and t the
    # tested pair.  Residual = worst spread, over x values that can occur
    # with the conditioning cell, of the conditional distribution of t.
    nx, nc, nt = joint.shape
    mass = joint.sum(axis=2)
    worst = 0.0
    for c in range(nc):
        ok = mass[:, c] > 0.0
        if ok.sum() < 2:
            continue
        cond = joint[ok, c, :] / mass[ok, c][:, None]
        spread = float((cond.max(axis=0) - cond.min(axis=0)).max())
        worst = max(worst, spread)
    return worst


def classify_degradedness(spec: ChannelSpec,
                          tol: float = DEGRADEDNESS_TOL) -> DegradednessClass:
    """Decide whether receiver 2's pair is a degraded version of receiver 1's
    (or the reverse) by testing conditional independence from the input.

    The joint over (X, S1, S2, Y1, Y2) is built under the uniform input,
    which witnesses the factorization because the tested conditionals given
    X do not depend on the input law.  Physical degradedness holds when
    (Y2, S2) is conditionally independent of X given (S1, Y1); the reverse
    direction swaps the two pairs.  Residuals are exact max deviations, not
    averages, so deterministic channels come out at exactly zero.
    """
    if tol < 0:
        raise DomainError("tolerance must be nonnegative")
    nx = spec.nx
    # joint[x, s1, s2, y1, y2] under uniform full-support input
    joint = spec.state_dist[None, :, :, None, None] * spec.kernel / nx
    ns1, ns2, ny1, ny2 = spec.ns1, spec.ns2, spec.ny1, spec.ny2

    phys = joint.transpose(0, 1, 3, 2, 4).reshape(nx, ns1 * ny1, ns2 * ny2)
    rev = joint.transpose(0, 2, 4, 1, 3).reshape(nx, ns2 * ny2, ns1 * ny1)
    residual_phys = _conditional_residual(phys)
    residual_rev = _conditional_residual(rev)

    p = residual_phys <= tol
    r = residual_rev <= tol
    if p and r:
        kind = DegradednessKind.BOTH
    elif p:
        kind = DegradednessKind.PHYSICALLY_DEGRADED
    elif r:
        kind = DegradednessKind.REVERSELY_DEGRADED
    else:
        kind = DegradednessKind.NEITHER
    return DegradednessClass(kind, residual_phys, residual_rev)
