import numpy as np
from joblib import Parallel, delayed

def bootstrap_mean(data, seed):
    rng = np.random.default_rng(seed)
    return data[rng.integers(0, len(data), len(data))].mean()

seeds = np.random.SeedSequence(0).spawn(1000)
means = Parallel(n_jobs=8)(delayed(bootstrap_mean)(sample, s) for s in seeds)
