import numpy as np

weights = np.random.dirichlet(np.ones(12))
probs = weights / weights.sum()
if not np.isclose(probs.sum(), 1.0, atol=1e-9):
    raise ValueError("probabilities do not sum to one")
