"""Seeded random-telegraph reference wires.

A system of M noise-bits exposes 2M reference wires, each carrying a
two-valued zero-mean random telegraph wave. Values are pure functions of
(master_seed, wire, clock): the generator is counter-based, so any clock can
be replayed or sampled out of order without stepping hidden state.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Tuple

import numpy as np

from .dyadic import Dyadic
from .errors import InvalidWireError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# stream salts: initial-sign draws vs flip draws never share a counter
_SALT_SIGN = 0
_SALT_FLIP = 1


def mix64(x: int) -> int:
    """SplitMix64 finalizer; a 64-bit bijection with good avalanche."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class WireId:
    """One reference wire: carries bit value `bit_value` of noise-bit `bit_index`."""

    bit_index: int  # 1-based
    bit_value: int  # 0 or 1

    def __post_init__(self):
        if self.bit_index < 1:
            raise InvalidWireError(f"bit_index must be >= 1, got {self.bit_index}")
        if self.bit_value not in (0, 1):
            raise InvalidWireError(f"bit_value must be 0 or 1, got {self.bit_value}")


class RtwScheme(Enum):
    # Asymmetric: High wires swing +/-1, Low wires +/-1/2, which keeps sums
    # of a bit's two wires (and hence the Universe) away from zero.
    ASYMMETRIC = "asym"
    SYMMETRIC = "sym"

    def magnitude_exp2(self, bit_value: int) -> int:
        """log2 of the wire's amplitude magnitude."""
        if self is RtwScheme.ASYMMETRIC and bit_value == 0:
            return -1
        return 0


def derive_wire_seed(master_seed: int, wire: WireId) -> int:
    """Per-wire stream seed; injective over wires for a fixed master seed."""
    tag = (wire.bit_index << 1) | wire.bit_value
    return mix64(mix64(master_seed ^ _GOLDEN) ^ tag)


def _draw(seed: int, t: int, salt: int) -> int:
    """64-bit uniform draw for counter t on the given per-wire stream."""
    return mix64((seed + _GOLDEN * ((t << 1) | salt)) & _MASK64)


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX2)
    x ^= x >> np.uint64(31)
    return x


def _draw_np(seed: int, t0: int, n: int, salt: int) -> np.ndarray:
    t = np.arange(t0, t0 + n, dtype=np.uint64)
    counters = (np.uint64(seed) + np.uint64(_GOLDEN) * ((t << np.uint64(1)) | np.uint64(salt)))
    return _mix64_np(counters)


class ReferenceSystem:
    """M noise-bits worth of seeded reference wires.

    flip_prob is the per-clock probability that a wire's sign flips from its
    predecessor. At the default 1/2, successive signs are independent fair
    coin flips and every clock is addressable in O(1); other flip
    probabilities fall back to counting flip parity from clock 0 (cached
    forward, so monotone scans stay O(1) amortized).
    """

    def __init__(
        self,
        num_bits: int,
        scheme: RtwScheme = RtwScheme.ASYMMETRIC,
        master_seed: int = 0,
        flip_prob: Fraction = Fraction(1, 2),
    ):
        if num_bits < 1:
            raise InvalidWireError(f"num_bits must be >= 1, got {num_bits}")
        flip_prob = Fraction(flip_prob)
        if not (0 < flip_prob <= 1):
            raise ValueError(f"flip_prob must be in (0, 1], got {flip_prob}")
        self.num_bits = num_bits
        self.scheme = scheme
        self.master_seed = master_seed & _MASK64
        self.flip_prob = flip_prob
        self._iid = flip_prob == Fraction(1, 2)
        # flip threshold on a 64-bit uniform draw
        self._flip_threshold = (flip_prob.numerator << 64) // flip_prob.denominator
        self._seeds: Dict[WireId, int] = {}
        # parity cache per wire for flip_prob != 1/2: (last clock, parity)
        self._parity: Dict[WireId, Tuple[int, int]] = {}
        # the four possible values, interned so eval never reallocates them
        self._values = {
            (bv, sign): Dyadic(sign, scheme.magnitude_exp2(bv))
            for bv in (0, 1)
            for sign in (1, -1)
        }

    def wires(self) -> Iterator[WireId]:
        for i in range(1, self.num_bits + 1):
            yield WireId(i, 0)
            yield WireId(i, 1)

    def check_wire(self, wire: WireId) -> None:
        if not 1 <= wire.bit_index <= self.num_bits:
            raise InvalidWireError(
                f"wire bit_index {wire.bit_index} out of range 1..{self.num_bits}"
            )

    def wire_seed(self, wire: WireId) -> int:
        s = self._seeds.get(wire)
        if s is None:
            self.check_wire(wire)
            s = derive_wire_seed(self.master_seed, wire)
            self._seeds[wire] = s
        return s

    def wire_sign(self, wire: WireId, t: int) -> int:
        """Sign (+1/-1) of the wire at clock t."""
        if t < 0:
            raise ValueError(f"clock must be >= 0, got {t}")
        seed = self.wire_seed(wire)
        if self._iid:
            return 1 if _draw(seed, t, _SALT_SIGN) >> 63 else -1
        s0 = 1 if _draw(seed, 0, _SALT_SIGN) >> 63 else -1
        return s0 if self._flip_parity(wire, seed, t) == 0 else -s0

    def _flip_parity(self, wire: WireId, seed: int, t: int) -> int:
        last, parity = self._parity.get(wire, (0, 0))
        if t < last:
            last, parity = 0, 0
        for k in range(last + 1, t + 1):
            if _draw(seed, k, _SALT_FLIP) < self._flip_threshold:
                parity ^= 1
        if t > last:
            self._parity[wire] = (t, parity)
        return parity

    def wire_value(self, wire: WireId, t: int) -> Dyadic:
        """Exact amplitude of the wire at clock t."""
        return self._values[(wire.bit_value, self.wire_sign(wire, t))]

    # --- vectorized path (float64; exact for these magnitudes) ---

    def sign_array(self, wire: WireId, t0: int, n: int) -> np.ndarray:
        """Signs over clocks [t0, t0+n); bit-identical to wire_sign."""
        seed = self.wire_seed(wire)
        if self._iid:
            u = _draw_np(seed, t0, n, _SALT_SIGN)
            return np.where((u >> np.uint64(63)).astype(bool), 1.0, -1.0)
        s0 = 1.0 if _draw(seed, 0, _SALT_SIGN) >> 63 else -1.0
        if self.flip_prob == 1:
            flips = np.ones(t0 + n, dtype=np.int64)
        else:
            u = _draw_np(seed, 0, t0 + n, _SALT_FLIP)
            flips = (u < np.uint64(self._flip_threshold)).astype(np.int64)
        flips[0] = 0  # no flip into clock 0
        parity = np.cumsum(flips) & 1
        return s0 * np.where(parity[t0 : t0 + n] == 0, 1.0, -1.0)

    def value_array(self, wire: WireId, t0: int, n: int) -> np.ndarray:
        """Wire amplitudes over clocks [t0, t0+n) as exact float64."""
        mag = 2.0 ** self.scheme.magnitude_exp2(wire.bit_value)
        return self.sign_array(wire, t0, n) * mag
