import random
import time

import psutil

import config

from .logging import LOGGER

_boot_ = time.time()

RNG = None


def seed(value: int = None) -> random.Random:
    global RNG
    value = config.SEED if value is None else value
    RNG = random.Random(value)
    LOGGER(__name__).info(f"Random Seed {value} Initialized.")
    return RNG


def cpu_seconds() -> float:
    """User plus system CPU time of this process and its finished children."""
    times = psutil.Process().cpu_times()
    return times.user + times.system + times.children_user + times.children_system


def sys_stats() -> dict:
    return {
        "uptime": int(time.time() - _boot_),
        "cpu_seconds": round(cpu_seconds(), 2),
        "cpu_count": psutil.cpu_count(),
        "ram": psutil.virtual_memory().percent,
    }
