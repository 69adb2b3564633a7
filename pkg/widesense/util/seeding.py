#!/usr/bin/env python3

"""Counter-based seed derivation.

Every random stream of a campaign is addressed by a key ``(seed, *counters)``
and built from :class:`numpy.random.SeedSequence` with the counters as spawn
key. Streams therefore never share state, and any trial, node or noise draw
can be regenerated in isolation (which is what the fusion center relies on
when it rebuilds the mixing sequences of the nodes).
"""

# 3rd
import numpy as np

#: Stream labels. Keep the values stable, they are part of the seed contract.
TRIAL_STREAM = 0
PILOT_STREAM = 1
ENVIRONMENT_STREAM = 2
NODE_STREAM = 3
NOISE_STREAM = 4
TONE_STREAM = 5


def seed_sequence(seed: int, *counters: int) -> np.random.SeedSequence:
    if seed < 0 or any(c < 0 for c in counters):
        raise ValueError(
            "Seeds and counters must be non-negative, got {} and {}.".format(
                seed, counters
            )
        )
    return np.random.SeedSequence(
        entropy=int(seed), spawn_key=tuple(int(c) for c in counters)
    )


def derive_seed(seed: int, *counters: int) -> int:
    """Derive a new 63 bit integer seed from ``seed`` and a counter key."""
    state = seed_sequence(seed, *counters).generate_state(1, dtype=np.uint64)
    return int(state[0] >> np.uint64(1))


def stream(seed: int, *counters: int) -> np.random.Generator:
    """Independent random generator for the key ``(seed, *counters)``."""
    return np.random.default_rng(seed_sequence(seed, *counters))


def trial_seed(master_seed: int, trial_index: int, pilot=False) -> int:
    """Seed of trial number ``trial_index`` of a campaign. Pilot trials live
    on their own substream so they never coincide with campaign trials."""
    label = PILOT_STREAM if pilot else TRIAL_STREAM
    return derive_seed(master_seed, label, trial_index)
