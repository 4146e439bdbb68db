"""NumPy implementations of the inner loops in ``_ckernels.pyx``."""

import numpy as np


def lorentz_step_sum(desc, mu, p, q):
    desc = np.asarray(desc, dtype=float)
    desc = desc[desc > 0]
    if desc.size == 0:
        return 0.0
    a = q / p
    i = np.arange(desc.size, dtype=float)
    w = np.ones_like(i)
    j = i[1:]
    w[1:] = j ** a * np.expm1(a * np.log1p(1.0 / j))
    return float(np.sum(desc ** q * w) * (p / q) * mu ** a)


def lorentz_step_sup(desc, mu, p):
    desc = np.asarray(desc, dtype=float)
    if desc.size == 0:
        return 0.0
    t = mu * np.arange(1, desc.size + 1, dtype=float)
    return float(np.max(desc * t ** (1.0 / p)))


def running_max_abs(acc, z):
    np.maximum(acc, np.abs(z), out=acc)
