import secrets
import numpy as np

def make_rng(seed=None):
    if seed is None:
        seed = secrets.randbits(32)
    print(f"rng seed = {seed}")
    return np.random.default_rng(seed), seed
