"""DCF station behavior: queueing, backoff bookkeeping, retries, ACK timing."""

import pytest

from tokendcf import DATA, ACK, MacParams, frame_airtime
from tokendcf.mac import ACCEPTED, DROPPED, IDLE, WAITING, AWAIT_ACK

from conftest import Network


def single_flow(**kwargs):
    return Network([(0.0, 0.0), (100.0, 0.0)], [(0, 1)], **kwargs)


# -- queueing ---------------------------------------------------------------

def test_queue_accepts_up_to_capacity_then_drops():
    net = single_flow()
    st = net.stations[0]
    for _ in range(50):
        assert st.enqueue_packet() == ACCEPTED
    assert st.enqueue_packet() == DROPPED
    assert len(st.queue) == 50
    assert st.dropped_full == 1
    assert net.metrics.drops == 1


def test_first_enqueue_on_idle_medium_starts_contention():
    net = single_flow()
    st = net.stations[0]
    assert st.phase == IDLE
    st.enqueue_packet()
    assert st.phase == WAITING
    assert st.sid in net.medium._cont


# -- backoff freeze/resume arithmetic ---------------------------------------

def test_freeze_preserves_remaining_slots():
    net = single_flow()
    st = net.stations[0]
    st.phase = WAITING
    st.registered = True
    st.sifs_plan = False
    st.idle_since = 1000
    st.pending_slots = 5
    # busy edge arrives mid-count: DIFS + 2 full slots + 3 us elapsed
    net.sim.now = 1000 + 28 + 2 * 9 + 3
    st.on_channel_busy()
    assert st.pending_slots == 3


def test_busy_before_difs_elapses_consumes_nothing():
    net = single_flow()
    st = net.stations[0]
    st.phase = WAITING
    st.registered = True
    st.sifs_plan = False
    st.idle_since = 1000
    st.pending_slots = 5
    net.sim.now = 1010   # only 10 us of idle, less than DIFS
    st.on_channel_busy()
    assert st.pending_slots == 5


def test_slots_never_go_negative():
    net = single_flow()
    st = net.stations[0]
    st.phase = WAITING
    st.registered = True
    st.sifs_plan = False
    st.idle_since = 0
    st.pending_slots = 2
    net.sim.now = 28 + 50 * 9   # far more idle than the pending count
    st.on_channel_busy()
    assert st.pending_slots == 0


def test_resume_uses_remaining_slots_not_fresh_draw():
    net = single_flow()
    st = net.stations[0]
    st.phase = WAITING
    st.pending_slots = 4
    net.sim.now = 5000
    st._resume_wait()
    assert net.medium._cont[st.sid] == 5000 + 28 + 4 * 9


# -- contention window ladder -----------------------------------------------

def test_cw_doubles_on_timeout_up_to_max():
    net = single_flow()
    st = net.stations[0]
    st.queue.append(0)
    expected = [32, 64, 128, 256, 512, 1024, 1024]
    seen = []
    for _ in expected:
        st.phase = AWAIT_ACK
        st.retries = 0   # stay under the drop limit; ladder only
        st._ack_timeout()
        seen.append(st.cw)
    assert seen == expected


def test_retry_limit_drops_frame_and_resets_cw():
    net = single_flow()
    st = net.stations[0]
    st.queue.append(0)
    for _ in range(8):   # 8th consecutive failure exceeds retry limit 7
        st.phase = AWAIT_ACK
        st._ack_timeout()
    assert st.dropped_retry == 1
    assert len(st.queue) == 0
    assert st.cw == 16
    assert st.retries == 0
    assert net.metrics.tx_failures == 8


def test_ack_resets_cw_to_min(clique_pair):
    st = clique_pair.stations[0]
    st.cw = 1024
    st.retries = 3
    st.queue.append(0)
    st.phase = AWAIT_ACK
    st._ack_timer = clique_pair.sim.schedule(100, lambda: None)
    st._ack_received()
    assert st.cw == 16
    assert st.retries == 0
    assert st.delivered == 1


# -- end-to-end exchange timing ---------------------------------------------

def test_ack_starts_exactly_sifs_after_data_end():
    net = single_flow(trace=True)
    net.saturate().run(20_000)
    trace = net.trace
    data_ends = [(t, src) for t, kind, src, fkind, *_ in trace
                 if kind == "end" and fkind == DATA]
    ack_starts = [(t, src) for t, kind, src, fkind, *_ in trace
                  if kind == "tx" and fkind == ACK]
    assert data_ends and len(ack_starts) == len(data_ends)
    for (t_end, _), (t_ack, ack_src) in zip(data_ends, ack_starts):
        assert t_ack == t_end + 10
        assert ack_src == 1


def test_saturated_single_sender_delivers_and_conserves():
    net = single_flow()
    net.saturate().run(100_000)
    st = net.stations[0]
    assert st.delivered > 0
    assert st.enqueued == st.delivered + st.dropped_full + st.dropped_retry + len(st.queue)
    assert net.metrics.delivered_bits == st.delivered * 8 * 500
    assert net.metrics.tx_failures == 0   # no contender, no losses


def test_access_delay_recorded_per_delivered_packet():
    net = single_flow()
    net.saturate().run(50_000)
    assert len(net.metrics.access_delays) == net.stations[0].delivered
    assert all(d > 0 for d in net.metrics.access_delays)


def test_sink_sends_no_ack_for_foreign_destination():
    # 0 -> 1; station 2 also decodes the frame but must stay silent
    net = Network([(0.0, 0.0), (100.0, 0.0), (50.0, 50.0)], [(0, 1)], trace=True)
    net.medium.register_listener(2)
    net.saturate().run(5_000)
    ack_srcs = {src for _, kind, src, fkind, *_ in net.trace
                if kind == "tx" and fkind == ACK}
    assert ack_srcs == {1}


def test_token_data_header_four_bytes_larger():
    plain = single_flow()
    token = single_flow(protocol="token_dcf")
    assert token.stations[0].data_header_bytes == plain.stations[0].data_header_bytes + 4


def test_ack_timeout_covers_legitimate_ack():
    net = single_flow()
    mac = MacParams()
    timeout = net.phy.sifs + frame_airtime(mac.ack_header_bytes, 0, net.phy) + mac.ack_timeout_guard
    # SIFS + ack airtime fits inside the timeout window with guard to spare
    assert timeout > net.phy.sifs + 19
    assert timeout == 49
