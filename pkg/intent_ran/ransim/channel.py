# SPDX-License-Identifier: MIT

"""
intent_ran.ransim.channel

Line-of-sight urban-macro channel: path loss, channel gain with the
antenna tilt term and shadowing, unit conversions, SINR and the Shannon
rate of an allocation.

Path loss and gain are in dB; SINR is computed from linear milliwatts.
"""

import numpy as np

from intent_ran.ransim.exceptions import DomainError


def dbm_to_mw(dbm):
    """dBm -> mW"""
    return np.power(10.0, np.asarray(dbm, dtype=float) / 10.0)


def dbm_to_watts(dbm):
    """dBm -> W"""
    return np.power(10.0, (np.asarray(dbm, dtype=float) - 30.0) / 10.0)


def db_to_linear(db):
    """dB -> linear ratio"""
    return np.power(10.0, np.asarray(db, dtype=float) / 10.0)


def link_distance(bs_xy, ue_xy, altitude_m: float):
    """
    3-D distance between BS antennas at `altitude_m` and UEs on the ground.
    `bs_xy` is (M, 2) and `ue_xy` is (K, 2); the result is (M, K).
    """
    bs_xy = np.atleast_2d(np.asarray(bs_xy, dtype=float))
    ue_xy = np.atleast_2d(np.asarray(ue_xy, dtype=float))
    delta = bs_xy[:, None, :] - ue_xy[None, :, :]
    return np.sqrt(altitude_m**2 + np.sum(delta * delta, axis=-1))


def path_loss(distance_m, carrier_ghz: float):
    """28 + 22 log10(d) + 20 log10(f_C), d in meters and f_C in GHz"""
    distance = np.asarray(distance_m, dtype=float)
    if np.any(distance <= 0) or not carrier_ghz > 0:
        raise DomainError(
            "path loss needs a positive distance and carrier frequency",
            float(np.min(distance)) if distance.size else None,
        )
    loss = 28.0 + 22.0 * np.log10(distance) + 20.0 * np.log10(carrier_ghz)
    return float(loss) if np.ndim(loss) == 0 else loss


def antenna_term_db(angle_deg):
    """-20 log10(cos(beta)); beta must lie in [0, 90) degrees"""
    angle = np.asarray(angle_deg, dtype=float)
    if np.any(angle < 0) or np.any(angle >= 90):
        raise DomainError(
            "antenna angle must lie in [0, 90) degrees", float(np.max(angle))
        )
    return -20.0 * np.log10(np.cos(np.pi * angle / 180.0))


def channel_gain(angle_deg, path_loss_db, shadow_db):
    """10 - 20 log10(cos(pi beta / 180)) - l - alpha, all in dB"""
    gain = (
        10.0
        + antenna_term_db(angle_deg)
        - np.asarray(path_loss_db, dtype=float)
        - np.asarray(shadow_db, dtype=float)
    )
    return float(gain) if np.ndim(gain) == 0 else gain


def noise_mw(noise_density_dbm_hz: float, bandwidth_hz):
    """Thermal noise over a bandwidth, in mW"""
    bandwidth = np.asarray(bandwidth_hz, dtype=float)
    return dbm_to_mw(noise_density_dbm_hz + 10.0 * np.log10(bandwidth))


def sinr_linear(signal_mw, interference_mw, noise):
    """Signal over interference plus noise, all linear"""
    return np.asarray(signal_mw, dtype=float) / (
        np.asarray(interference_mw, dtype=float) + np.asarray(noise, dtype=float)
    )


def shannon_rate(num_rbs, rb_bandwidth_hz: float, sinr):
    """R = r B^RB log2(1 + SINR), bits per second"""
    return np.asarray(num_rbs, dtype=float) * rb_bandwidth_hz * np.log2(
        1.0 + np.asarray(sinr, dtype=float)
    )
