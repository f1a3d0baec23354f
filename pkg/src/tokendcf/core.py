"""Virtual-time event engine and seeded random streams.

All simulation time is kept in integer microseconds so that slot/SIFS/DIFS
arithmetic stays exact.  Event delivery order is the strict total order
(fire_at, seq), which makes every run reproducible for a fixed seed.
"""

import hashlib
import random
from heapq import heappop, heappush


class SimError(Exception):
    pass


class Simulator:
    """Single-threaded event loop over integer-microsecond virtual time.

    ``schedule`` returns a handle usable with ``cancel``.  Cancelled events
    never fire; cancelling an already-fired (or already-cancelled) event
    returns False.
    """

    __slots__ = ("now", "_heap", "_seq")

    def __init__(self):
        self.now = 0
        self._heap = []
        self._seq = 0

    def schedule(self, delay, callback):
        if delay < 0:
            raise SimError(f"negative delay: {delay}")
        entry = [self.now + int(delay), self._seq, callback]
        self._seq += 1
        heappush(self._heap, entry)
        return entry

    def cancel(self, entry):
        if entry[2] is None:
            return False
        entry[2] = None
        return True

    def run_until(self, t_end):
        if t_end < self.now:
            raise SimError("t_end precedes current virtual time")
        heap = self._heap
        fired = 0
        while heap and heap[0][0] <= t_end:
            entry = heappop(heap)
            cb = entry[2]
            if cb is None:
                continue
            entry[2] = None
            self.now = entry[0]
            cb()
            fired += 1
        self.now = t_end
        return fired


def substream(seed, *tags):
    """Independent random.Random keyed by (seed, *tags).

    The derivation goes through SHA-256 so the same key gives the same draw
    sequence on every platform, and adding a station does not perturb the
    streams of other stations.
    """
    key = repr((seed,) + tags).encode()
    digest = hashlib.sha256(key).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def derive_seed(seed, *tags):
    """Stable 64-bit sub-seed for per-run derivation."""
    key = repr((seed,) + tags).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def pareto_scale(mean, shape):
    if shape <= 1.0:
        raise ValueError(f"pareto shape must exceed 1 for a finite mean, got {shape}")
    return mean * (shape - 1.0) / shape


def draw_pareto(rng, mean, shape):
    """One Pareto sample (same units as ``mean``) with the given mean.

    Inverse-CDF sampling: x = scale / U^(1/shape), U in (0, 1].
    """
    xm = pareto_scale(mean, shape)
    u = 1.0 - rng.random()
    return xm / u ** (1.0 / shape)
