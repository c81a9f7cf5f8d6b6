"""Two-state switches on the reference wires.

Every wire is either Live (connected to its reference source) or Grounded
(forced to exactly zero). Grounding is idempotent; the epoch counter ticks
only on actual state changes, so memo caches can key on it.
"""

from __future__ import annotations

from typing import FrozenSet

from .expr import Pattern
from .reference import WireId


class SwitchState:
    def __init__(self):
        self._grounded: set = set()
        self.epoch = 0

    def is_grounded(self, wire: WireId) -> bool:
        return wire in self._grounded

    @property
    def grounded(self) -> FrozenSet[WireId]:
        return frozenset(self._grounded)

    def ground(self, wire: WireId) -> bool:
        """Force the wire to zero. Returns True if the state changed."""
        if wire in self._grounded:
            return False
        self._grounded.add(wire)
        self.epoch += 1
        return True

    def restore(self, wire: WireId) -> bool:
        """Reconnect the wire to its reference source."""
        if wire not in self._grounded:
            return False
        self._grounded.discard(wire)
        self.epoch += 1
        return True

    def restore_all(self) -> None:
        if self._grounded:
            self._grounded.clear()
            self.epoch += 1

    def __repr__(self) -> str:
        wires = sorted((w.bit_index, w.bit_value) for w in self._grounded)
        return f"SwitchState(grounded={wires}, epoch={self.epoch})"


def ground_inverse(pattern: Pattern, num_bits: int) -> SwitchState:
    """Ground the wire of the opposite bit value for every assigned bit.

    This is the collapse configuration: every product-string that disagrees
    with the pattern on an assigned bit uses a grounded wire and vanishes.
    """
    pattern.check_fits(num_bits)
    switches = SwitchState()
    for idx, val in pattern.assignments:
        switches.ground(WireId(idx, 1 - val))
    return switches
