"""Numerical tolerance settings shared by validators and decision procedures."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance knobs.

    tol_unit and tol_id are absolute. tol_psd and tol_frame are relative
    factors: PSD checks scale tol_psd by max(1, operator norm) and frame
    checks scale tol_frame by the upper frame bound.
    """

    tol_unit: float = 1e-9
    tol_id: float = 1e-9
    tol_psd: float = 1e-9
    tol_frame: float = 1e-8


DEFAULT_TOL = Tolerances()
