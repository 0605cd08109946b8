"""Local-minimality classification via a common calibration vector.

A profile is a local minimizer of the anisotropic graph area iff a
single vector N with phi(N) = 1 satisfies <N, nu> = phi°(nu) along the
whole generalized graph, i.e. N lies on the exposed face of every edge
normal simultaneously.  Faces are intersected as index runs on the
shared Wulff boundary polyline (exact vertices for polygons).  Jump
edges contribute both their steep discrete normal and the limiting
horizontal normal, matching the way the relaxed area charges jumps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .anisotropy import Anisotropy, BoundaryArc
from .energy import Profile
from .regularity import edge_unit_normals

__all__ = ["EdgeNormals", "CahnHoffmanResult", "edge_normals", "cahn_hoffman"]

JUMP_SLOPE_FACTOR = 1e4  # |du| > factor * h marks an edge as jump-like
MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class EdgeNormals:
    normals: np.ndarray  # (n_edges, 2) unit normals
    jump_flags: np.ndarray  # (n_edges,) bool
    limit_normals: np.ndarray  # (k, 2), -+e1 per jump edge


@dataclass(frozen=True)
class CahnHoffmanResult:
    feasible: bool
    witness_arc: Optional[BoundaryArc]
    infeasibility_witness: Optional[tuple]
    monotone: str  # "nondecreasing" | "nonincreasing" | "constant" | "none"
    hypothesis_warning: Optional[str] = None


def edge_normals(u: Profile) -> EdgeNormals:
    """Subgraph edge normals plus limiting horizontal normals at jumps."""
    h = u.grid.h
    du = u.edge_differences()
    normals = edge_unit_normals(u)
    jumps = np.abs(du) > JUMP_SLOPE_FACTOR * h
    limits = np.column_stack([-np.sign(du[jumps]), np.zeros(int(jumps.sum()))])
    return EdgeNormals(normals=normals, jump_flags=jumps, limit_normals=limits)


def _monotone_class(du: np.ndarray) -> str:
    up = np.any(du > MONOTONE_TOL)
    down = np.any(du < -MONOTONE_TOL)
    if up and down:
        return "none"
    if up:
        return "nondecreasing"
    if down:
        return "nonincreasing"
    return "constant"


def cahn_hoffman(
    aniso: Anisotropy, u: Profile, tol: Optional[float] = None
) -> CahnHoffmanResult:
    """Search for a single calibration vector feasible on every edge face."""
    warning = None
    if not aniso.symmetry_flags().partially_monotone:
        warning = "anisotropy is not partially monotone; the characterization is heuristic"

    en = edge_normals(u)
    all_normals = (
        np.vstack([en.normals, en.limit_normals]) if len(en.limit_normals) else en.normals
    )
    # deduplicate normals: identical edges contribute the same face
    rounded = np.round(all_normals, 12)
    _, unique_idx = np.unique(rounded, axis=0, return_index=True)
    unique_idx.sort()

    running = None
    masks = {}
    witness_pair = None
    for j in unique_idx:
        mask = aniso.face_mask(all_normals[j], tol)
        masks[j] = mask
        if running is None:
            running = mask.copy()
            continue
        new_running = running & mask
        if not new_running.any():
            # find an earlier face disjoint from this one for the witness
            for i in unique_idx:
                if i == j:
                    break
                if not (masks[i] & mask).any():
                    witness_pair = (int(i), int(j))
                    break
            # pairwise-overlapping faces with empty joint intersection leave
            # witness_pair as None; feasibility is still decided by the run
            return CahnHoffmanResult(
                feasible=False,
                witness_arc=None,
                infeasibility_witness=witness_pair,
                monotone=_monotone_class(u.edge_differences()),
                hypothesis_warning=warning,
            )
        running = new_running

    arc = aniso._arc_from_mask(running)
    return CahnHoffmanResult(
        feasible=True,
        witness_arc=arc,
        infeasibility_witness=None,
        monotone=_monotone_class(u.edge_differences()),
        hypothesis_warning=warning,
    )
