"""Shared wireless medium: fixed-radius geometry, carrier sensing, collisions.

The interference rule is the protocol model: a receiver decodes a frame only
if it sits within tx_range of the source and no other transmission from
within the receiver's cs_range overlapped the frame (any overlap corrupts,
no capture effect).  A station that transmits itself during the overlap is
corrupted too (half-duplex).  Propagation delay is zero.

The medium also runs the contention clock for the MAC layers: stations that
are waiting for the channel register an absolute fire time and the medium
keeps a single wake-up event at the minimum, which is far cheaper than one
timer per station under heavy freeze/resume churn.
"""

import math

DELIVERED = "delivered"
CORRUPTED = "corrupted"
NOT_DECODABLE = "not_decodable"

_INF = float("inf")


class MediumError(Exception):
    pass


class Topology:
    """Station positions plus the fixed transmission/carrier-sense radii."""

    def __init__(self, positions, tx_range=250.0, cs_range=550.0, area_side=None):
        if tx_range <= 0 or cs_range <= 0:
            raise MediumError("ranges must be positive")
        if tx_range > cs_range:
            raise MediumError("tx_range must not exceed cs_range")
        self.positions = list(positions)
        self.tx_range = float(tx_range)
        self.cs_range = float(cs_range)
        self.area_side = area_side

    def __len__(self):
        return len(self.positions)

    def distance(self, a, b):
        xa, ya = self.positions[a]
        xb, yb = self.positions[b]
        return math.hypot(xa - xb, ya - yb)

    def link_geometry(self, a, b):
        """(distance, in_tx_range, in_cs_range); range tests are inclusive."""
        d = self.distance(a, b)
        return d, d <= self.tx_range, d <= self.cs_range


class ActiveTransmission:
    __slots__ = ("src", "frame", "start", "end", "corrupted")

    def __init__(self, src, frame, start, end):
        self.src = src
        self.frame = frame
        self.start = start
        self.end = end
        self.corrupted = set()   # receiver ids with a latched overlap


class Medium:
    def __init__(self, sim, topology, metrics=None, trace=None):
        self.sim = sim
        self.topology = topology
        self.metrics = metrics
        self.trace = trace       # list to append channel records to, or None
        n = len(topology)
        self.n = n
        # precomputed geometry: per-source sorted neighbor lists and cs sets
        self.tx_nb = []          # stations within tx_range, excluding src
        self.cs_set = []         # stations within cs_range, including src
        for a in range(n):
            inside_tx = []
            inside_cs = {a}
            for b in range(n):
                if b == a:
                    continue
                d = topology.distance(a, b)
                if d <= topology.tx_range:
                    inside_tx.append(b)
                if d <= topology.cs_range:
                    inside_cs.add(b)
            self.tx_nb.append(inside_tx)
            self.cs_set.append(inside_cs)

        self.stations = {}       # sid -> station object, bound via bind()
        self._active = {}        # src -> ActiveTransmission
        # carrier-sense subscribers (contending stations only)
        self._subscribed = set()
        self._busy_count = [0] * n
        self._notify = [[] for _ in range(n)]   # per-src sorted subscriber lists
        # stations that want delivered data frames they are not addressed by
        self._listeners = set()
        self._overhear = [[] for _ in range(n)]  # per-src sorted listener lists
        # channel-wide busy bookkeeping for the idle-gap metric
        self._global_active = 0
        self._busy_start = 0
        self._last_busy_end = 0
        self._last_gap = 0
        # centralized contention clock
        self._cont = {}          # sid -> absolute fire time
        self._wake_entry = None
        self._wake_at = _INF
        self.tx_log = [] if trace is not None else None

    # -- wiring -----------------------------------------------------------

    def bind(self, stations):
        for st in stations:
            self.stations[st.sid] = st

    def subscribe(self, sid):
        if sid in self._subscribed:
            return
        self._subscribed.add(sid)
        self._busy_count[sid] = sum(
            1 for tx in self._active.values() if sid in self.cs_set[tx.src] and tx.src != sid
        )
        for src in range(self.n):
            if src != sid and sid in self.cs_set[src]:
                lst = self._notify[src]
                lst.append(sid)
                lst.sort()

    def register_listener(self, sid):
        """Request delivery of every decodable data frame (overhearing)."""
        if sid in self._listeners:
            return
        self._listeners.add(sid)
        for src in range(self.n):
            if src != sid and self.topology.distance(src, sid) <= self.topology.tx_range:
                lst = self._overhear[src]
                lst.append(sid)
                lst.sort()

    # -- sensing ----------------------------------------------------------

    def carrier_busy(self, sid):
        cs = self.cs_set
        return any(sid in cs[tx.src] for tx in self._active.values())

    def is_transmitting(self, sid):
        return sid in self._active

    def sensed_busy(self, sid):
        """Busy as seen by a subscriber, ignoring its own transmission."""
        return self._busy_count[sid] > 0

    # -- contention clock --------------------------------------------------

    def register_access(self, sid, fire_at):
        self._cont[sid] = fire_at
        if fire_at < self._wake_at:
            self._set_wake(fire_at)

    def unregister_access(self, sid):
        self._cont.pop(sid, None)

    def _set_wake(self, at):
        if self._wake_entry is not None:
            self._wake_entry[2] = None   # cancel in place
        self._wake_at = at
        self._wake_entry = self.sim.schedule(at - self.sim.now, self._wake)

    def _wake(self):
        self._wake_entry = None
        self._wake_at = _INF
        now = self.sim.now
        cont = self._cont
        due = sorted(s for s, f in cont.items() if f <= now)
        for sid in due:
            # all stations due at the same instant transmit together
            # (slot-synchronized collision), even though the first handoff
            # flips the channel busy for the rest
            cont.pop(sid, None)
            self.stations[sid].fire_access()
        if cont:
            nxt = min(cont.values())
            if nxt < self._wake_at:
                self._set_wake(nxt)

    # -- transmissions -----------------------------------------------------

    def begin_transmission(self, src, frame, airtime):
        if src in self._active:
            raise MediumError(f"station {src} is already transmitting")
        if airtime <= 0:
            raise MediumError("airtime must be positive")
        now = self.sim.now
        tx = ActiveTransmission(src, frame, now, now + airtime)
        cs_set = self.cs_set
        if self._active:
            my_cs = cs_set[src]
            for other in self._active.values():
                if other.end <= now:
                    continue
                ocs = cs_set[other.src]
                for r in self.tx_nb[src]:
                    if r in ocs:
                        tx.corrupted.add(r)
                for r in self.tx_nb[other.src]:
                    if r in my_cs:
                        other.corrupted.add(r)
        self._active[src] = tx

        # channel-wide idle gap: logged per access that begins a busy period
        if self._global_active == 0:
            self._last_gap = now - self._last_busy_end
            self._busy_start = now
            if self.metrics is not None:
                self.metrics.idle_gaps.append(self._last_gap)
        elif self._busy_start == now and self.metrics is not None:
            # same-instant co-starter saw the same idle gap
            self.metrics.idle_gaps.append(self._last_gap)
        self._global_active += 1

        counts = self._busy_count
        newly_busy = []
        for s in self._notify[src]:
            c = counts[s] + 1
            counts[s] = c
            if c == 1:
                newly_busy.append(s)
        stations = self.stations
        for s in newly_busy:
            stations[s].on_channel_busy()

        self.sim.schedule(airtime, lambda: self._finish(tx))
        if self.trace is not None:
            self.trace.append((now, "tx", src, frame.kind, tx.end, frame.dst))
        return tx

    def _finish(self, tx):
        src = tx.src
        del self._active[src]
        now = self.sim.now

        self._global_active -= 1
        if self._global_active == 0:
            if self.metrics is not None:
                self.metrics.busy_time += now - self._busy_start
            self._last_busy_end = now

        counts = self._busy_count
        newly_idle = []
        for s in self._notify[src]:
            c = counts[s] - 1
            counts[s] = c
            if c == 0:
                newly_idle.append(s)

        frame = tx.frame
        stations = self.stations
        corrupted = tx.corrupted
        dst = frame.dst
        delivered_to = None
        if self.tx_log is not None:
            delivered_to = []
        # addressed receiver first so its response wins same-instant ties
        if dst != src and dst not in corrupted and dst in self.tx_nb[src]:
            # tx_nb lists are short; membership scan is fine off the hot path
            stations[dst].on_frame(frame)
            if delivered_to is not None:
                delivered_to.append(dst)
        if frame.kind == 0:   # DATA: overhearers want the scheduling header
            for r in self._overhear[src]:
                if r != dst and r not in corrupted:
                    stations[r].on_frame(frame)
                    if delivered_to is not None:
                        delivered_to.append(r)
        if self.tx_log is not None:
            self.tx_log.append((src, tx.start, tx.end, frame.kind, tuple(sorted(corrupted)), tuple(sorted(delivered_to))))
        if self.trace is not None:
            self.trace.append((now, "end", src, frame.kind, tuple(sorted(delivered_to or ()))))

        stations[src].on_tx_complete(frame)
        for s in newly_idle:
            stations[s].on_channel_idle()

    def reception_outcome(self, tx, r):
        """Post-hoc outcome of transmission ``tx`` at station ``r``."""
        if r == tx.src:
            raise MediumError("source does not receive its own frame")
        if self.topology.distance(tx.src, r) > self.topology.tx_range:
            return NOT_DECODABLE
        return CORRUPTED if r in tx.corrupted else DELIVERED
