def bootstrap_ci(values, n_boot=2000, seed=None):
    rng = np.random.default_rng(seed)
    stats = [np.mean(rng.choice(values, len(values))) for _ in range(n_boot)]
    return np.percentile(stats, [2.5, 97.5])
