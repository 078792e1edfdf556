"""Seeded Monte Carlo fault injection for cross-checking the PMHF formula.

Each trial plays one mission: every fault entry of every component
allocated to the goal emits arrivals as a Poisson process at its
safety-related rate; each arrival is caught by its mechanism with
probability DC and violates the goal otherwise.  SEooC components emit
goal violations directly at their subsumed rate.  A trial counts as a
violation when at least one arrival escapes.

Randomness is counter-based: every (trial, fault source) pair owns its
own splitmix64 substream derived from the seed and both indices, so the
result is bitwise identical regardless of execution order, chunking, or
parallel partitioning.  The same fault model drives the analytic PMHF,
which makes the simulator a statistical oracle for that formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MissingFaultDataError, UnknownElementError
from .hw_metrics import FIT_HOURS
from .levels import AsilLevel
from .model import SafetyModel

_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_TRIAL_SALT = 0xD1342543DE82EF95
_SOURCE_SALT = 0xAF251AF3B0F025B5
_MASK64 = 0xFFFFFFFFFFFFFFFF

DEFAULT_MISSION_HOURS = 1e4
DEFAULT_TRIALS = 100_000


@dataclass(frozen=True)
class SimConfig:
    safety_goal_id: str
    seed: int
    mission_hours: float = DEFAULT_MISSION_HOURS
    trials: int = DEFAULT_TRIALS

    def __post_init__(self) -> None:
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not (self.mission_hours > 0 and math.isfinite(self.mission_hours)):
            raise ValueError("mission_hours must be positive and finite")


@dataclass(frozen=True)
class SimResult:
    empirical_fit: float
    standard_error: float
    violations: int
    trials: int

    def to_dict(self) -> dict:
        return {
            "empirical_fit": self.empirical_fit,
            "standard_error": self.standard_error,
            "violations": self.violations,
            "trials": self.trials,
        }


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _MIX1
    z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


def _stream_states(seed: int, source_index: int, start: int, count: int) -> np.ndarray:
    """Initial substream state for trials [start, start+count) of one source."""
    trials = np.arange(start, start + count, dtype=np.uint64)
    trial_key = (trials + _U64(1)) * _U64(_TRIAL_SALT)
    source_key = _U64(((source_index + 1) * _SOURCE_SALT) & _MASK64)
    states = trial_key ^ source_key ^ _U64(seed & _MASK64)
    return _mix(_mix(states))


def _draw_u01(states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Advance each substream one step; return (new states, uniforms in [0,1))."""
    states = states + _GOLDEN
    return states, (_mix(states) >> _U64(11)).astype(np.float64) * 2.0**-53


def _poisson_counts(u: np.ndarray, mu: float) -> np.ndarray:
    """Poisson(mu) by CDF inversion of one uniform per trial."""
    k = np.zeros(u.shape, dtype=np.int64)
    pmf = math.exp(-mu)
    cdf = pmf
    pending = u >= cdf
    n = 0
    while pending.any():
        n += 1
        if n > 64:  # float CDF saturated; beyond credible arrival counts
            k[pending] = n
            break
        pmf *= mu / n
        cdf += pmf
        k[pending] = n
        pending &= u >= cdf
    return k


def _fault_sources(model: SafetyModel, goal_id: str) -> list[tuple[float, float | None]]:
    """(rate in FIT, DC or None) per fault source, in canonical model order.

    DC ``None`` marks SEooC sources whose arrivals violate the goal
    directly.
    """
    if all(g.id != goal_id for g in model.safety_goals):
        raise UnknownElementError(f"unknown safety goal {goal_id!r}")
    sources: list[tuple[float, float | None]] = []
    for comp in model.hw_components_for_goal(goal_id):
        if comp.seooc is not None:
            sources.append((comp.seooc.subsumed_fit, None))
            continue
        if not comp.fault_data:
            raise MissingFaultDataError(comp.id, goal_id)
        for entry in comp.fault_data:
            dc = 0.0
            if entry.mechanism_id is not None:
                dc = model.mechanisms_by_id[entry.mechanism_id].dc
            sources.append((entry.safety_related_fit, dc))
    return sources


def _violations(
    seed: int,
    sources: list[tuple[float, float | None]],
    mission_hours: float,
    start: int,
    count: int,
) -> int:
    """Violating trials among trial indices [start, start+count)."""
    violated = np.zeros(count, dtype=bool)
    for source_index, (rate_fit, dc) in enumerate(sources):
        mu = rate_fit * mission_hours / FIT_HOURS
        if mu <= 0.0:
            continue
        states = _stream_states(seed, source_index, start, count)
        states, u = _draw_u01(states)
        arrivals = _poisson_counts(u, mu)
        if dc is None or dc <= 0.0:
            violated |= arrivals > 0
            continue
        if dc >= 1.0:
            continue  # every arrival is detected
        hit = np.nonzero(arrivals > 0)[0]
        if hit.size == 0:
            continue
        sub_states = states[hit]
        sub_arrivals = arrivals[hit]
        undetected = np.zeros(hit.size, dtype=bool)
        for nth in range(1, int(sub_arrivals.max()) + 1):
            sub_states, coin = _draw_u01(sub_states)
            undetected |= (sub_arrivals >= nth) & (coin >= dc)
        violated[hit] |= undetected
    return int(violated.sum())


def simulate_pmhf(model: SafetyModel, config: SimConfig) -> SimResult:
    """Estimate the goal-violation rate empirically.

    ``empirical_fit`` is the violating-trial fraction converted to FIT
    over the mission length; ``standard_error`` is its binomial error on
    the same scale.  Identical (model, config) always yields an
    identical result.
    """
    sources = _fault_sources(model, config.safety_goal_id)
    violations = _violations(
        config.seed, sources, config.mission_hours, 0, config.trials
    )
    p = violations / config.trials
    scale = FIT_HOURS / config.mission_hours
    return SimResult(
        empirical_fit=p * scale,
        standard_error=math.sqrt(p * (1.0 - p) / config.trials) * scale,
        violations=violations,
        trials=config.trials,
    )
