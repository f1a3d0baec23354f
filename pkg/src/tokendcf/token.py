"""Privilege scheduling layered on DCF: grant selection, overhearing, Adapt.

Every data frame a station sends names at most one privileged station (drawn
with probability p from the stations whose frames it decoded this period,
picking the longest queue or the largest queue*capacity product).  Decoding a
frame that names you sets your flag, and a set flag turns the next channel
access into a bare SIFS wait.  The Adapt controller moves p up or down by
delta depending on how many transmissions came from already-known stations.
"""


class TokenScheduler:
    __slots__ = (
        "sid", "sim", "params", "rng", "policy", "capacities", "default_capacity",
        "p", "active", "success", "fail", "flag", "q_len_map",
    )

    def __init__(self, sid, sim, params, rng, policy="lqf",
                 capacities=None, default_capacity=54_000_000):
        if policy not in ("lqf", "backpressure"):
            raise ValueError(f"unknown scheduling policy: {policy}")
        self.sid = sid
        self.sim = sim
        self.params = params
        self.rng = rng
        self.policy = policy
        self.capacities = capacities or {}
        self.default_capacity = default_capacity
        self.flag = 0
        self.q_len_map = {}
        self.p = 0.0
        self.active = {sid}
        self.success = 0
        self.fail = 0
        sim.schedule(params.period_us, self._period_reset)

    def _period_reset(self):
        self.p = 0.0
        self.active = {self.sid}
        self.success = 0
        self.fail = 0
        self.sim.schedule(self.params.period_us, self._period_reset)

    # -- grant selection ---------------------------------------------------

    def select_privileged(self, own_queue_len):
        """Privileged station for the next transmission, or None.

        With probability p: the argmax over ``active`` of queue length (lqf)
        or queue length * link capacity (backpressure), ties to the lowest
        station id.  With probability 1-p: no grant.
        """
        if self.rng.random() >= self.p:
            return None
        best = None
        best_w = -1.0
        if self.policy == "lqf":
            for s in sorted(self.active):
                w = own_queue_len if s == self.sid else self.q_len_map.get(s, 0)
                if w > best_w:
                    best, best_w = s, w
        else:
            caps = self.capacities
            for s in sorted(self.active):
                q = own_queue_len if s == self.sid else self.q_len_map.get(s, 0)
                w = q * caps.get(s, self.default_capacity)
                if w > best_w:
                    best, best_w = s, w
        return best

    # -- MAC hooks ---------------------------------------------------------

    def on_transmit_data(self, frame, own_queue_len):
        """Runs right before a data frame is handed to the medium."""
        priv = self.select_privileged(own_queue_len)
        frame.privileged = priv
        frame.q_len = own_queue_len
        self.flag = 1 if priv == self.sid else 0
        self.adapt(self.sid)

    def on_receive_data(self, frame):
        """Runs for every decoded data frame, addressed or overheard."""
        self.flag = 1 if frame.privileged == self.sid else 0
        self.adapt(frame.src)
        self.q_len_map[frame.src] = frame.q_len

    def on_timer_expired(self):
        self.flag = 0

    # -- Adapt controller --------------------------------------------------

    def adapt(self, src):
        if src not in self.active:
            self.fail += 1
            self.active.add(src)
        else:
            self.success += 1
        total = self.success + self.fail
        if total >= self.params.max_num:
            ratio = self.success / total
            if ratio >= self.params.max_ratio:
                if self.p <= self.params.max_p:
                    self.p = min(self.p + self.params.delta, self.params.max_p)
                self.success = 0
                self.fail = 0
            if ratio <= self.params.min_ratio:
                if self.p >= self.params.delta:
                    self.p = max(self.p - self.params.delta, 0.0)
                self.success = 0
                self.fail = 0
