"""Protocol parameter sets with the 802.11g-style defaults used throughout."""

from dataclasses import dataclass


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class PhyParams:
    """Channel timing and radio geometry.  Durations in microseconds."""

    slot_time: int = 9
    sifs: int = 10
    difs: int = 28
    preamble: int = 16
    bit_rate: int = 54_000_000
    tx_range: float = 250.0
    cs_range: float = 550.0

    def __post_init__(self):
        if min(self.slot_time, self.sifs, self.difs, self.preamble) <= 0:
            raise ConfigError("phy intervals must be positive")
        if self.bit_rate <= 0:
            raise ConfigError("bit_rate must be positive")
        if self.tx_range <= 0 or self.cs_range <= 0:
            raise ConfigError("ranges must be positive")
        if self.tx_range > self.cs_range:
            raise ConfigError("tx_range must not exceed cs_range")


@dataclass(frozen=True)
class MacParams:
    cw_min: int = 16
    cw_max: int = 1024
    queue_capacity: int = 50
    retry_limit: int = 7
    data_header_bytes: int = 34
    ack_header_bytes: int = 14
    # queue-length + privileged-id fields added to data headers by the token MAC
    sched_header_bytes: int = 4
    ack_timeout_guard: int = 20

    def __post_init__(self):
        if self.cw_min < 1:
            raise ConfigError("cw_min must be >= 1")
        if self.cw_max < self.cw_min:
            raise ConfigError("cw_max must be >= cw_min")
        if self.queue_capacity < 1:
            raise ConfigError("queue_capacity must be >= 1")
        if self.retry_limit < 0:
            raise ConfigError("retry_limit must be >= 0")
        if min(self.data_header_bytes, self.ack_header_bytes) <= 0:
            raise ConfigError("header sizes must be positive")
        if self.sched_header_bytes < 0 or self.ack_timeout_guard < 0:
            raise ConfigError("sched_header_bytes/ack_timeout_guard must be >= 0")


@dataclass(frozen=True)
class TokenParams:
    min_ratio: float = 0.2
    max_ratio: float = 0.8
    max_num: int = 20
    delta: float = 0.1
    max_p: float = 0.9
    period_us: int = 100_000

    def __post_init__(self):
        if not 0.0 <= self.min_ratio < self.max_ratio <= 1.0:
            raise ConfigError("need 0 <= min_ratio < max_ratio <= 1")
        if not 0.0 < self.delta <= 1.0:
            raise ConfigError("delta must be in (0, 1]")
        if not 0.0 <= self.max_p < 1.0:
            raise ConfigError("max_p must be in [0, 1)")
        if self.delta > self.max_p and self.max_p > 0.0:
            raise ConfigError("delta must not exceed max_p")
        if self.max_num < 1:
            raise ConfigError("max_num must be >= 1")
        if self.period_us <= 0:
            raise ConfigError("period must be positive")
