"""Shared helpers: random channel constructions and independent brute-force
oracles.

The oracles deliberately avoid the package's tensor code paths: joints are
dicts keyed by symbol tuples, entropies are plain ``math.log2`` sums over
``itertools.product``, so agreement with the numpy implementation is a real
two-path check.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from jcas_regions import ChannelSpec, InputDesign, make_channel_spec


# ---------------------------------------------------------------------------
# random constructions


def random_channel_spec(rng, nx=2, ns1=2, ns2=2, ny1=2, ny2=2) -> ChannelSpec:
    """Fully random valid spec with Hamming distortions."""
    state = rng.dirichlet(np.ones(ns1 * ns2)).reshape(ns1, ns2)
    kernel = rng.dirichlet(np.ones(ny1 * ny2), size=nx * ns1 * ns2)
    kernel = kernel.reshape(nx, ns1, ns2, ny1, ny2)
    return make_channel_spec(state, kernel)


def random_degraded_spec(rng, nx=2, ns1=2, ns2=2, ny1=2, ny2=2) -> ChannelSpec:
    """Random spec satisfying the physical-degradedness factorization.

    Built from P(s1), P(y1|s1,x), P(s2|s1) and P(y2|s1,y1,s2):
    the eavesdropper's pair (y2, s2) then depends on the input only through
    (s1, y1).  The degrading kernel's state marginal must not depend on y1,
    otherwise the joint state law would vary with the input and the object
    would not be a state-dependent channel at all.
    """
    p_s1 = rng.dirichlet(np.ones(ns1))
    p_y1 = rng.dirichlet(np.ones(ny1), size=(nx, ns1))        # (x, s1) -> y1
    p_s2 = rng.dirichlet(np.ones(ns2), size=ns1)              # s1 -> s2
    p_y2 = rng.dirichlet(np.ones(ny2), size=(ns1, ny1, ns2))  # (s1,y1,s2) -> y2

    state = p_s1[:, None] * p_s2
    kernel = np.zeros((nx, ns1, ns2, ny1, ny2))
    for x, s1, s2, y1 in itertools.product(
            range(nx), range(ns1), range(ns2), range(ny1)):
        kernel[x, s1, s2, y1, :] = p_y1[x, s1, y1] * p_y2[s1, y1, s2, :]
    return make_channel_spec(state, kernel)


def random_reverse_degraded_spec(rng, nx=2, ns1=2, ns2=2, ny1=2, ny2=2):
    """Random spec where receiver 1's pair is degraded from receiver 2's."""
    p_s2 = rng.dirichlet(np.ones(ns2))
    p_y2 = rng.dirichlet(np.ones(ny2), size=(nx, ns2))
    p_s1 = rng.dirichlet(np.ones(ns1), size=ns2)
    p_y1 = rng.dirichlet(np.ones(ny1), size=(ns2, ny2, ns1))

    state = (p_s2[:, None] * p_s1).T
    kernel = np.zeros((nx, ns1, ns2, ny1, ny2))
    for x, s1, s2, y2 in itertools.product(
            range(nx), range(ns1), range(ns2), range(ny2)):
        kernel[x, s1, s2, :, y2] = p_y2[x, s2, y2] * p_y1[s2, y2, s1, :]
    return make_channel_spec(state, kernel)


def random_design(rng, spec, nv=None, nu=None) -> InputDesign:
    p_x = rng.dirichlet(np.ones(spec.nx))
    p_v = None if nv is None else rng.dirichlet(np.ones(nv), size=spec.nx)
    n_rows = spec.nx if nv is None else nv
    p_u = None if nu is None else rng.dirichlet(np.ones(nu), size=n_rows)
    return InputDesign(p_x=p_x, p_v_given_x=p_v, p_u_given_v=p_u)


# ---------------------------------------------------------------------------
# brute-force oracles (dict-based, no numpy tensor algebra)


def oracle_joint(spec: ChannelSpec, design: InputDesign) -> dict:
    """Sevenfold nested-loop product joint over (u, v, x, s1, s2, y1, y2)."""
    nx = spec.nx
    p_v = design.p_v_given_x
    if p_v is None:
        p_v = np.eye(nx)
    p_u = design.p_u_given_v
    if p_u is None:
        p_u = np.ones((p_v.shape[1], 1))
    nv, nu = p_v.shape[1], p_u.shape[1]

    joint = {}
    for u in range(nu):
        for v in range(nv):
            for x in range(nx):
                for s1 in range(spec.ns1):
                    for s2 in range(spec.ns2):
                        for y1 in range(spec.ny1):
                            for y2 in range(spec.ny2):
                                joint[(u, v, x, s1, s2, y1, y2)] = (
                                    float(p_u[v, u]) * float(p_v[x, v])
                                    * float(design.p_x[x])
                                    * float(spec.state_dist[s1, s2])
                                    * float(spec.kernel[x, s1, s2, y1, y2]))
    return joint


ORACLE_VARS = ("U", "V", "X", "S1", "S2", "Y1", "Y2")


def oracle_marginal(joint: dict, names) -> dict:
    idx = [ORACLE_VARS.index(n) for n in names]
    out = {}
    for key, p in joint.items():
        sub = tuple(key[i] for i in idx)
        out[sub] = out.get(sub, 0.0) + p
    return out


def _oracle_plain_entropy(marg: dict) -> float:
    return -sum(p * math.log2(p) for p in marg.values() if p > 1e-300)


def oracle_entropy(joint: dict, targets, givens=()) -> float:
    targets, givens = tuple(targets), tuple(givens)
    h = _oracle_plain_entropy(oracle_marginal(joint, targets + givens))
    if givens:
        h -= _oracle_plain_entropy(oracle_marginal(joint, givens))
    return h


def oracle_mi(joint: dict, a, b, givens=()) -> float:
    a, b, givens = tuple(a), tuple(b), tuple(givens)
    return oracle_entropy(joint, a, givens) - oracle_entropy(joint, a, b + givens)


def oracle_conditionally_independent(spec, cond_pair, tol=1e-12) -> bool:
    """Brute-force check that X is independent of the non-conditioned output
    pair given ``cond_pair`` ("1" or "2"), under the uniform input.

    Enumerates the full joint cell by cell and compares conditionals across
    input symbols.
    """
    nx = spec.nx
    cells = {}
    for x, s1, s2, y1, y2 in itertools.product(
            range(nx), range(spec.ns1), range(spec.ns2),
            range(spec.ny1), range(spec.ny2)):
        p = float(spec.state_dist[s1, s2]) * float(spec.kernel[x, s1, s2, y1, y2]) / nx
        if cond_pair == "1":
            cond, rest = (s1, y1), (s2, y2)
        else:
            cond, rest = (s2, y2), (s1, y1)
        inner = cells.setdefault(cond, {}).setdefault(x, {})
        inner[rest] = inner.get(rest, 0.0) + p

    for cond, by_x in cells.items():
        dists = []
        for x, restmap in sorted(by_x.items()):
            mass = sum(restmap.values())
            if mass <= 0.0:
                continue
            dists.append({k: v / mass for k, v in restmap.items()})
        for i in range(1, len(dists)):
            keys = set(dists[0]) | set(dists[i])
            for k in keys:
                if abs(dists[0].get(k, 0.0) - dists[i].get(k, 0.0)) > tol:
                    return False
    return True
