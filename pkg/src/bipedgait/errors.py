"""Exception hierarchy shared by the planner, checker and CLI."""

from __future__ import annotations


class GaitError(Exception):
    """Base class for every error raised by bipedgait."""


class Unreachable(GaitError, ValueError):
    """An ankle target lies outside the leg's reachable annulus.

    When raised from the planner, ``phase`` and ``t`` name the phase and the
    sample time at which the target could not be solved.
    """

    def __init__(self, distance: float, min: float, max: float,
                 phase: str | None = None, t: float | None = None):
        self.distance = distance
        self.min = min
        self.max = max
        self.phase = phase
        self.t = t
        msg = f"target distance {distance:.6g} m outside reachable range [{min:.6g}, {max:.6g}] m"
        if phase is not None:
            msg += f" during phase {phase!r} at t={t:.6g} s"
        super().__init__(msg)


class DegenerateGeometry(GaitError, ValueError):
    """The ankle target coincides with the hip joint."""


class InvalidDuration(GaitError, ValueError):
    pass


class PhaseOutOfRange(GaitError, ValueError):
    pass


class InvalidParams(GaitError, ValueError):
    pass


class NoContact(GaitError):
    """Neither foot is in ground contact, so nothing can anchor the chain."""


class DegeneratePolygon(GaitError, ValueError):
    """All points handed to the hull are collinear (or fewer than three)."""


class MalformedTrajectory(GaitError, ValueError):
    """A trajectory file or array cannot be interpreted as a walk."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        if index is not None:
            message = f"sample {index}: {message}"
        super().__init__(message)


class ConfigError(GaitError, ValueError):
    pass
