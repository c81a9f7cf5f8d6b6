"""Collapse measurement and the search protocols built on it.

Grounding the inverse wires of a pattern annihilates every product-string
that disagrees with the pattern; reading the remaining signal at a clock
where the original superposition is nonzero is a deterministic membership
measurement. Fragment searches observe several clocks and carry an explicit
error bound on negative verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .dyadic import Dyadic
from .errors import DeadClock, IllegalClass, MaxWaitExceeded
from .expr import Expr, Pattern, evaluate
from .reference import ReferenceSystem, WireId
from .switchboard import SwitchState, ground_inverse

DEFAULT_MAX_WAIT = 10_000
DEFAULT_TAU = 64


class Verdict(Enum):
    PRESENT = "present"
    ABSENT = "absent"
    ABSENT_BOUNDED = "absent_bounded"


class BellClass(Enum):
    """The six two-noise-bit configurations where each bit value appears in
    at most one string."""

    S01_PLUS_10 = "S01+10"
    S00_PLUS_11 = "S00+11"
    S00 = "S00"
    S01 = "S01"
    S10 = "S10"
    S11 = "S11"


@dataclass
class TraceStep:
    action: str
    amplitude: Optional[Dyadic] = None

    def to_json(self) -> dict:
        return {
            "action": self.action,
            "amplitude": None if self.amplitude is None else self.amplitude.to_json(),
        }


@dataclass
class SearchOutcome:
    verdict: Verdict
    switch_ops: int
    clocks_waited: int
    clocks_observed: int
    trace: List[TraceStep] = field(default_factory=list)
    witness_clock: Optional[int] = None
    amplitude: Optional[Dyadic] = None
    epsilon: Optional[Dyadic] = None  # bound on false negatives, when bounded

    @property
    def present(self) -> bool:
        return self.verdict is Verdict.PRESENT

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "switch_ops": self.switch_ops,
            "clocks_waited": self.clocks_waited,
            "clocks_observed": self.clocks_observed,
            "witness_clock": self.witness_clock,
            "amplitude": None if self.amplitude is None else self.amplitude.to_json(),
            "epsilon": None if self.epsilon is None else self.epsilon.to_json(),
            "trace": [step.to_json() for step in self.trace],
        }


def wait_for_live_clock(
    expr: Expr,
    system: ReferenceSystem,
    t_start: int = 0,
    max_wait: int = DEFAULT_MAX_WAIT,
) -> int:
    """Smallest t >= t_start where the un-grounded superposition is nonzero."""
    for t in range(t_start, t_start + max_wait + 1):
        if not evaluate(expr, system, t).is_zero():
            return t
    raise MaxWaitExceeded(t_start, max_wait)


def collapse_measure(
    expr: Expr, system: ReferenceSystem, pattern: Pattern, t: int
) -> Dyadic:
    """Ground the pattern's inverse wires and read the surviving amplitude.

    Requires a live clock: the un-grounded signal must be nonzero at t,
    otherwise the zero reading would prove nothing.
    """
    if evaluate(expr, system, t).is_zero():
        raise DeadClock(f"superposition amplitude is zero at clock {t}")
    switches = ground_inverse(pattern, system.num_bits)
    return evaluate(expr, system, t, switches)


def full_string_search(
    expr: Expr,
    system: ReferenceSystem,
    pattern: Pattern,
    max_wait: int = DEFAULT_MAX_WAIT,
    t_start: int = 0,
) -> SearchOutcome:
    """Deterministic membership test for a full M-bit string.

    One live clock, M groundings, one reading. The verdict is exact in both
    directions for coefficient-1 superpositions: the survivor is the queried
    string's own term, and a single product-string never reads zero.
    """
    if not pattern.is_full(system.num_bits):
        raise ValueError(f"full_string_search needs a full pattern, got {pattern}")
    t = wait_for_live_clock(expr, system, t_start, max_wait)
    trace = [TraceStep(f"live clock found at t={t}")]
    switches = ground_inverse(pattern, system.num_bits)
    trace.append(TraceStep(f"grounded inverse wires of {pattern}"))
    amp = evaluate(expr, system, t, switches)
    trace.append(TraceStep("read superposition", amp))
    verdict = Verdict.ABSENT if amp.is_zero() else Verdict.PRESENT
    return SearchOutcome(
        verdict=verdict,
        switch_ops=len(pattern),
        clocks_waited=t - t_start,
        clocks_observed=1,
        trace=trace,
        witness_clock=None if amp.is_zero() else t,
        amplitude=amp,
    )


def fragment_search(
    expr: Expr,
    system: ReferenceSystem,
    pattern: Pattern,
    tau: int = DEFAULT_TAU,
    max_wait: int = DEFAULT_MAX_WAIT,
    t_start: int = 0,
) -> SearchOutcome:
    """Test whether any string matching the (possibly partial) pattern exists.

    A nonzero reading at any observed clock is an exact positive proof. The
    surviving sub-superposition can transiently cancel to zero, so after tau
    all-zero readings the verdict is Absent with error bound 2**-tau.
    """
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    t = wait_for_live_clock(expr, system, t_start, max_wait)
    trace = [TraceStep(f"live clock found at t={t}")]
    switches = ground_inverse(pattern, system.num_bits)
    trace.append(TraceStep(f"grounded inverse wires of {pattern}"))
    for k in range(tau):
        amp = evaluate(expr, system, t + k, switches)
        trace.append(TraceStep(f"read at t={t + k}", amp))
        if not amp.is_zero():
            return SearchOutcome(
                verdict=Verdict.PRESENT,
                switch_ops=len(pattern),
                clocks_waited=t - t_start,
                clocks_observed=k + 1,
                trace=trace,
                witness_clock=t + k,
                amplitude=amp,
            )
    return SearchOutcome(
        verdict=Verdict.ABSENT_BOUNDED,
        switch_ops=len(pattern),
        clocks_waited=t - t_start,
        clocks_observed=tau,
        trace=trace,
        epsilon=Dyadic.pow2(-tau),
    )


def entangle_discriminate(
    expr: Expr,
    system: ReferenceSystem,
    max_wait: int = DEFAULT_MAX_WAIT,
    t_start: int = 0,
    probe_partner_value: int = 0,
) -> Tuple[BellClass, List[TraceStep]]:
    """Identify which of the six legal two-bit configurations a signal is.

    All probing happens inside one live clock; groundings are applied and
    reverted freely while the wire draws stay frozen. probe_partner_value
    selects which bit-2 wire the second-step probe grounds (the two variants
    give identical verdicts).
    """
    if system.num_bits != 2:
        raise ValueError("entanglement discrimination is defined for 2 noise-bits")
    if probe_partner_value not in (0, 1):
        raise ValueError("probe_partner_value must be 0 or 1")
    t = wait_for_live_clock(expr, system, t_start, max_wait)
    trace = [TraceStep(f"live clock found at t={t}")]

    def probe_side(bit1_value: int) -> Optional[int]:
        # does a string with bit 1 == bit1_value exist, and if so, which
        # bit-2 value is entangled with it?
        switches = SwitchState()
        switches.ground(WireId(1, 1 - bit1_value))
        amp = evaluate(expr, system, t, switches)
        trace.append(TraceStep(f"grounded R{1}_{1 - bit1_value}, read", amp))
        if amp.is_zero():
            return None
        switches.ground(WireId(2, probe_partner_value))
        amp2 = evaluate(expr, system, t, switches)
        trace.append(TraceStep(f"also grounded R{2}_{probe_partner_value}, read", amp2))
        if amp2.is_zero():
            partner = probe_partner_value
        else:
            partner = 1 - probe_partner_value
        switches.restore_all()
        trace.append(TraceStep("restored all wires"))
        return partner

    found0 = probe_side(0)
    found1 = probe_side(1)
    classes = {
        (1, 0): BellClass.S01_PLUS_10,
        (0, 1): BellClass.S00_PLUS_11,
        (0, None): BellClass.S00,
        (1, None): BellClass.S01,
        (None, 0): BellClass.S10,
        (None, 1): BellClass.S11,
    }
    cls = classes.get((found0, found1))
    if cls is None:
        raise IllegalClass(
            f"probe trace (bit1=0 -> {found0}, bit1=1 -> {found1}) matches no legal class"
        )
    return cls, trace
