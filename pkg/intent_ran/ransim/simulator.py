# SPDX-License-Identifier: MIT

"""
intent_ran.ransim.simulator

Discrete-time dynamics of the network. One call to `step` advances the
state by a number of TTIs: UEs move, packets arrive, UEs attach to the
strongest awake BS, every BS shares its RBs round-robin among the UEs with
queued traffic, and the per-BS load, energy, throughput and first packet
latency are accumulated into a `TickMetrics`.

TTIs in which no UE can be scheduled only cost idle energy; they are
accounted in bulk up to the next arrival or mobility update.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from intent_ran.ontology.model import EnergySavingOp, EnergySavingOpKind
from intent_ran.ransim.channel import (
    channel_gain,
    dbm_to_mw,
    link_distance,
    noise_mw,
    path_loss,
    shannon_rate,
    sinr_linear,
)
from intent_ran.ransim.cqi import CqiTable
from intent_ran.ransim.energy import bs_energy_w, compute_load
from intent_ran.ransim.exceptions import DomainError, InvalidOpError, SchedulingError
from intent_ran.ransim.state import NO_BS, NetworkState, Packet, UeState


@dataclass(frozen=True)
class TickMetrics:
    """
    Metrics of one decision step. Per-BS tuples are indexed by BS id,
    per-UE tuples by UE id. Latencies are None where no packet completed.
    """

    tick: int
    duration_ms: int = 0
    load: tuple[float, ...] = ()
    energy_w: tuple[float, ...] = ()
    avg_thpt_bps: tuple[float, ...] = ()
    avg_latency_ms: tuple[float | None, ...] = ()
    attached_ues: tuple[int, ...] = ()
    asleep: tuple[bool, ...] = ()
    ue_thpt_bps: tuple[float, ...] = field(default=(), repr=False)
    ue_latency_ms: tuple[float | None, ...] = field(default=(), repr=False)

    @property
    def is_empty(self) -> bool:
        """True for a zero-length step"""
        return self.duration_ms == 0

    @property
    def mean_energy_w(self) -> float:
        """Mean energy across BSs"""
        return float(np.mean(self.energy_w)) if self.energy_w else 0.0

    @property
    def mean_thpt_bps(self) -> float:
        """Mean of the per-BS average throughputs"""
        return float(np.mean(self.avg_thpt_bps)) if self.avg_thpt_bps else 0.0

    @property
    def mean_latency_ms(self) -> float | None:
        """Mean of the per-BS average latencies that are defined"""
        values = [value for value in self.avg_latency_ms if value is not None]
        return float(np.mean(values)) if values else None

    def csv_rows(self) -> list[tuple]:
        """Rows of the metrics stream, one per BS"""
        return [
            (
                self.tick,
                i,
                self.load[i],
                self.energy_w[i],
                self.avg_thpt_bps[i],
                self.avg_latency_ms[i],
                self.attached_ues[i],
            )
            for i in range(len(self.load))
        ]


@dataclass
class ScheduleOutcome:
    """What one TTI of scheduling did."""

    allocations: np.ndarray
    sent_bits: np.ndarray
    departed: list[tuple[int, Packet, float]]


def refresh_radio(state: NetworkState):
    """Recompute gains and received powers from positions, angles and shadowing"""
    config = state.config
    distance = link_distance(state.bs_xy, state.ue_xy, config.bs_altitude_m)
    loss = path_loss(distance, config.carrier_frequency_ghz)
    state.gain_db = channel_gain(
        state.antenna_angle_deg[:, None], loss, state.shadow_db
    )
    state.rx_power_dbm = state.tx_power_dbm[:, None] + state.gain_db


def received_power_table(state: NetworkState) -> np.ndarray:
    """Received power in dBm, -inf for sleeping BSs"""
    return np.where(state.asleep[:, None], -np.inf, state.rx_power_dbm)


def attach_ues(state: NetworkState) -> np.ndarray:
    """
    Attach every UE to the awake BS it hears loudest, provided that power
    reaches the minimum received power; the others stay unattached.
    Refreshes the CQI of every UE. Returns the serving BS per UE.
    """
    if state.radio_dirty:
        refresh_radio(state)
    rx = received_power_table(state)
    best = np.argmax(rx, axis=0)
    best_rx = rx[best, np.arange(state.num_ue)]
    covered = best_rx >= state.config.min_rx_power_dbm
    state.serving = np.where(covered, best, NO_BS)
    update_cqi(state)
    state.radio_dirty = False
    return state.serving.copy()


def _interference_mw(state: NetworkState) -> tuple[np.ndarray, np.ndarray]:
    """Serving signal and interference per UE, in mW (zero when unattached)"""
    rx_mw = np.where(state.asleep[:, None], 0.0, dbm_to_mw(state.rx_power_dbm))
    total = rx_mw.sum(axis=0)
    attached = state.serving != NO_BS
    signal = np.zeros(state.num_ue)
    signal[attached] = rx_mw[state.serving[attached], np.flatnonzero(attached)]
    return signal, total - signal


def update_cqi(state: NetworkState):
    """CQI from the full-carrier SINR of each attached UE; 0 when unattached"""
    signal, interference = _interference_mw(state)
    noise = noise_mw(state.config.noise_density_dbm_hz, state.config.carrier_bandwidth_hz)
    attached = state.serving != NO_BS
    sinr_db = np.full(state.num_ue, -np.inf)
    sinr_db[attached] = 10.0 * np.log10(
        sinr_linear(signal[attached], interference[attached], noise)
    )
    state.cqi = np.where(attached, state.cqi_table.level(sinr_db), 0)


def sinr_and_throughput(
    state: NetworkState, bs_id: int, ue_id: int, num_rbs: int | None = None
) -> tuple[float, float]:
    """
    SINR (linear) of the link and its rate R = r B^RB log2(1 + SINR) in bit/s.
    Noise covers the allocated bandwidth, or the whole carrier when nothing
    is allocated. Sleeping BSs do not interfere.
    """
    if state.radio_dirty:
        refresh_radio(state)
    config = state.config
    rbs = int(state.allocated_rbs[ue_id]) if num_rbs is None else int(num_rbs)
    signal = float(dbm_to_mw(state.rx_power_dbm[bs_id, ue_id]))
    interference = 0.0
    for other in range(state.num_bs):
        if other != bs_id and not state.asleep[other]:
            interference += float(dbm_to_mw(state.rx_power_dbm[other, ue_id]))
    bandwidth = rbs * config.rb_bandwidth_hz if rbs > 0 else config.carrier_bandwidth_hz
    sinr = float(sinr_linear(signal, interference, noise_mw(config.noise_density_dbm_hz, bandwidth)))
    return sinr, float(shannon_rate(rbs, config.rb_bandwidth_hz, sinr))


def transmission_ms(
    packet_bits: float, coding_rate: float, num_rbs: int, rb_bits: float, tti_ms: float
) -> float:
    """tau / (varpi r R^RB) TTIs, in ms"""
    return packet_bits / (coding_rate * num_rbs * rb_bits) * tti_ms


def first_packet_latency(
    packet: Packet, ue: UeState, cqi: CqiTable, tti_ms: float = 1.0
) -> float:
    """
    Queueing delay plus transmission time of a departed packet:
    (T^out - T^in) + tau / (varpi r R^RB). Raises SchedulingError when the
    link is not schedulable (CQI 0 or coding rate above the maximum) or has
    no RB.
    """
    if not packet.departed:
        raise SchedulingError("packet has not departed yet")
    if not cqi.schedulable(ue.cqi):
        raise SchedulingError(
            f"UE {ue.ue_id} at CQI {ue.cqi} is not schedulable, latency undefined"
        )
    if ue.allocated_rbs < 1:
        raise SchedulingError(f"UE {ue.ue_id} holds no RB, latency undefined")
    return packet.queue_ms + transmission_ms(
        packet.size_bits,
        cqi.coding_rate(ue.cqi),
        ue.allocated_rbs,
        cqi.bits_per_rb(ue.cqi),
        tti_ms,
    )


def _demanding(state: NetworkState) -> np.ndarray:
    """Mask of attached, schedulable UEs with queued bits"""
    return (
        (state.serving != NO_BS)
        & (state.queued_bits > 0)
        & state.cqi_table.schedulable_mask(state.cqi)
    )


def schedule_tti(state: NetworkState) -> ScheduleOutcome:
    """
    One TTI of round-robin scheduling. Each awake BS splits all its RBs
    evenly among its demanding UEs, the remainder going one RB each to the
    UEs next in turn. UEs drain their queues first in, first out; a packet
    departs in the TTI its last bit is sent.
    """
    table = state.cqi_table
    tti_ms = state.config.tti_ms
    allocations = np.zeros(state.num_ue, dtype=int)
    sent_bits = np.zeros(state.num_ue, dtype=float)
    departed = []
    demanding = _demanding(state)

    for bs_id in range(state.num_bs):
        if state.asleep[bs_id]:
            state.load[bs_id] = 0.0
            continue
        ues = np.flatnonzero(demanding & (state.serving == bs_id))
        count = len(ues)
        if count == 0:
            state.load[bs_id] = 0.0
            continue

        base, remainder = divmod(state.total_rbs, count)
        start = int(state.rr_pointer[bs_id]) % count
        share = np.full(count, base, dtype=int)
        share[(start + np.arange(remainder)) % count] += 1
        state.rr_pointer[bs_id] = (start + remainder) % count
        allocations[ues] = share
        state.load[bs_id] = compute_load(bs_id, state.total_rbs, share)

        for ue, rbs in zip(ues, share):
            if rbs == 0:
                continue
            level = int(state.cqi[ue])
            budget = table.tti_bits(level, int(rbs))
            queue = state.queues[ue]
            while budget > 0 and queue:
                head = queue[0]
                sent = min(head.remaining_bits, budget)
                head.remaining_bits -= sent
                budget -= sent
                sent_bits[ue] += sent
                if head.remaining_bits <= 1e-9:
                    head.remaining_bits = 0.0
                    head.depart_ms = float(state.now_ms)
                    queue.popleft()
                    latency = head.queue_ms + transmission_ms(
                        head.size_bits,
                        table.coding_rate(level),
                        int(rbs),
                        table.bits_per_rb(level),
                        tti_ms,
                    )
                    departed.append((int(ue), head, latency))
            state.queued_bits[ue] = sum(p.remaining_bits for p in queue)

    state.allocated_rbs = allocations
    return ScheduleOutcome(allocations, sent_bits, departed)


def apply_operation(state: NetworkState, bs_id: int, op: EnergySavingOp):
    """
    Actuate one BS. PowerDelta moves one transmit power level up or down,
    clamped to the configured levels; AntennaAngleSet sets the tilt; both
    wake a sleeping BS. Sleep detaches every UE of the BS.
    """
    if not isinstance(op, EnergySavingOp):
        raise InvalidOpError(f"Not an energy-saving operation: {op!r}", op)
    if not 0 <= bs_id < state.num_bs:
        raise InvalidOpError(f"No BS {bs_id} in a network of {state.num_bs}", op)

    config = state.config
    match op.kind:
        case EnergySavingOpKind.POWER_DELTA:
            levels = config.tx_power_levels_dbm
            index = min(max(state.power_index(bs_id) + int(op.parameter), 0), len(levels) - 1)
            state.tx_power_dbm[bs_id] = levels[index]
            state.asleep[bs_id] = False
        case EnergySavingOpKind.ANTENNA_ANGLE_SET:
            if op.parameter not in config.antenna_angles_deg:
                raise InvalidOpError(
                    f"Antenna angle {op.parameter:g} is not configured", op
                )
            state.antenna_angle_deg[bs_id] = op.parameter
            state.asleep[bs_id] = False
        case EnergySavingOpKind.SLEEP:
            state.asleep[bs_id] = True
            detached = state.serving == bs_id
            state.serving[detached] = NO_BS
            state.allocated_rbs[detached] = 0
            state.cqi[detached] = 0
            state.load[bs_id] = 0.0
        case _:
            raise InvalidOpError(f"Unknown operation kind {op.kind!r}", op)

    state.radio_dirty = True
    state.log.debug(state.log_msg(f"BS {bs_id} <- {op.label}"))


def advance_mobility(state: NetworkState):
    """
    Move the UEs to `now_ms` along their headings, reflecting at the edge
    of the area; redraw headings and shadowing when their intervals elapse.
    """
    config = state.config
    elapsed_s = (state.now_ms - state.last_mobility_ms) / 1000.0
    state.last_mobility_ms = state.now_ms

    if elapsed_s > 0:
        step = state.speed_ms * elapsed_s
        state.ue_xy[:, 0] += step * np.cos(state.heading_rad)
        state.ue_xy[:, 1] += step * np.sin(state.heading_rad)
        for axis in (0, 1):
            low, high = state.area_min[axis], state.area_max[axis]
            above = state.ue_xy[:, axis] > high
            below = state.ue_xy[:, axis] < low
            state.ue_xy[above, axis] = 2 * high - state.ue_xy[above, axis]
            state.ue_xy[below, axis] = 2 * low - state.ue_xy[below, axis]
            bounced = above | below
            if axis == 0:
                state.heading_rad[bounced] = math.pi - state.heading_rad[bounced]
            else:
                state.heading_rad[bounced] = -state.heading_rad[bounced]
            state.ue_xy[:, axis] = np.clip(state.ue_xy[:, axis], low, high)
        state.heading_rad = np.mod(state.heading_rad, 2 * math.pi)

    while state.now_ms >= state.next_heading_ms:
        state.heading_rad = state.rng_mobility.uniform(0.0, 2 * math.pi, size=state.num_ue)
        state.next_heading_ms += config.heading_interval_ms
    while state.now_ms >= state.next_shadow_ms:
        low, high = config.shadow_range_db
        state.shadow_db = state.rng_shadow.uniform(
            low, high, size=(state.num_bs, state.num_ue)
        )
        state.next_shadow_ms += config.shadow_coherence_ms
    state.radio_dirty = True


def enqueue_arrivals(state: NetworkState):
    """Queue every packet arriving before the end of the current TTI"""
    horizon = state.now_ms + state.config.tti_ms
    bits = state.config.packet_bits
    for ue in np.flatnonzero(state.next_arrival_ms < horizon):
        while state.next_arrival_ms[ue] < horizon:
            state.queues[ue].append(Packet(bits, float(state.now_ms)))
            state.queued_bits[ue] += bits
            state.arrivals[ue] += 1
            state.next_arrival_ms[ue] += state.rng_traffic.exponential(
                1000.0 / state.arrival_rate_pps[ue]
            )


class _StepTotals:
    """Running sums of one step."""

    def __init__(self, num_bs: int, num_ue: int):
        self.ttis = 0
        self.load = np.zeros(num_bs)
        self.energy = np.zeros(num_bs)
        self.thpt = np.zeros(num_bs)
        self.thpt_n = np.zeros(num_bs, dtype=int)
        self.latency = np.zeros(num_bs)
        self.latency_n = np.zeros(num_bs, dtype=int)
        self.ue_thpt = np.zeros(num_ue)
        self.ue_thpt_n = np.zeros(num_ue, dtype=int)
        self.ue_latency = np.zeros(num_ue)
        self.ue_latency_n = np.zeros(num_ue, dtype=int)


def _energy(state: NetworkState) -> np.ndarray:
    config = state.config
    return bs_energy_w(
        state.load,
        state.tx_power_dbm,
        state.asleep,
        config.power_model_g,
        config.power_model_h,
        config.energy_mix,
        config.standby_power_w,
    )


def _link_rates(state: NetworkState, allocations: np.ndarray) -> np.ndarray:
    """Shannon rate of every scheduled UE over its allocated bandwidth"""
    config = state.config
    scheduled = np.flatnonzero(allocations > 0)
    signal, interference = _interference_mw(state)
    noise = noise_mw(
        config.noise_density_dbm_hz, allocations[scheduled] * config.rb_bandwidth_hz
    )
    sinr = sinr_linear(signal[scheduled], interference[scheduled], noise)
    rates = np.zeros(state.num_ue)
    rates[scheduled] = shannon_rate(allocations[scheduled], config.rb_bandwidth_hz, sinr)
    return rates


def _next_idle_stop(state: NetworkState, end_ms: int) -> int:
    """First TTI start after `now_ms` where something can happen"""
    tti = state.config.tti_ms
    next_mobility = state.last_mobility_ms + state.config.mobility_update_ms
    next_arrival = float(np.min(state.next_arrival_ms))
    arrival_tti = int(math.floor(next_arrival / tti)) * tti
    stop = min(end_ms, next_mobility, max(arrival_tti, state.now_ms + tti))
    return max(stop, state.now_ms + tti)


def step(state: NetworkState, dt_ms: int) -> TickMetrics:
    """
    Advance the network by `dt_ms` (a multiple of the TTI) and return the
    metrics of the step. A zero-length step leaves the state untouched.
    """
    tti = state.config.tti_ms
    if dt_ms < 0 or dt_ms % tti:
        raise DomainError(f"step length {dt_ms} ms is not a multiple of {tti} ms", dt_ms)
    if dt_ms == 0:
        return TickMetrics(tick=state.tick)

    totals = _StepTotals(state.num_bs, state.num_ue)
    end_ms = state.now_ms + dt_ms
    mobility_ms = state.config.mobility_update_ms

    while state.now_ms < end_ms:
        if state.now_ms >= state.last_mobility_ms + mobility_ms:
            advance_mobility(state)
        enqueue_arrivals(state)
        if state.radio_dirty:
            attach_ues(state)

        if not np.any(_demanding(state)):
            stop = _next_idle_stop(state, end_ms)
            ttis = (stop - state.now_ms) // tti
            state.load[:] = 0.0
            state.allocated_rbs[:] = 0
            state.energy_w = _energy(state)
            totals.ttis += ttis
            totals.energy += state.energy_w * ttis
            state.now_ms = stop
            continue

        outcome = schedule_tti(state)
        state.energy_w = _energy(state)
        totals.ttis += 1
        totals.load += state.load
        totals.energy += state.energy_w

        rates = _link_rates(state, outcome.allocations)
        scheduled = np.flatnonzero(outcome.allocations > 0)
        np.add.at(totals.thpt, state.serving[scheduled], rates[scheduled])
        np.add.at(totals.thpt_n, state.serving[scheduled], 1)
        totals.ue_thpt[scheduled] += rates[scheduled]
        totals.ue_thpt_n[scheduled] += 1
        for ue, _, latency in outcome.departed:
            bs_id = state.serving[ue]
            totals.latency[bs_id] += latency
            totals.latency_n[bs_id] += 1
            totals.ue_latency[ue] += latency
            totals.ue_latency_n[ue] += 1
        state.now_ms += tti

    metrics = _build_metrics(state, totals, dt_ms)
    state.tick += 1
    return metrics


def _mean(total: np.ndarray, count: np.ndarray) -> tuple[float, ...]:
    return tuple(
        float(t / n) if n else 0.0 for t, n in zip(total.tolist(), count.tolist())
    )


def _mean_or_none(total: np.ndarray, count: np.ndarray) -> tuple[float | None, ...]:
    return tuple(
        float(t / n) if n else None for t, n in zip(total.tolist(), count.tolist())
    )


def _build_metrics(state: NetworkState, totals: _StepTotals, dt_ms: int) -> TickMetrics:
    ttis = max(totals.ttis, 1)
    attached = np.bincount(
        state.serving[state.serving != NO_BS], minlength=state.num_bs
    )
    return TickMetrics(
        tick=state.tick,
        duration_ms=dt_ms,
        load=tuple(float(v) for v in totals.load / ttis),
        energy_w=tuple(float(v) for v in totals.energy / ttis),
        avg_thpt_bps=_mean(totals.thpt, totals.thpt_n),
        avg_latency_ms=_mean_or_none(totals.latency, totals.latency_n),
        attached_ues=tuple(int(v) for v in attached),
        asleep=tuple(bool(v) for v in state.asleep),
        ue_thpt_bps=_mean(totals.ue_thpt, totals.ue_thpt_n),
        ue_latency_ms=_mean_or_none(totals.ue_latency, totals.ue_latency_n),
    )
