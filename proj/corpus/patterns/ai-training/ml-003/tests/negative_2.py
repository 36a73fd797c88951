import numpy as np
from sklearn.model_selection import KFold


def out_of_fold_encoding(categories, target, n_splits=5):
    encoded = np.zeros(len(categories))
    for fit_idx, apply_idx in KFold(n_splits, shuffle=True, random_state=0).split(categories):
        lookup = {}
        for c, t in zip(categories[fit_idx], target[fit_idx]):
            lookup.setdefault(c, []).append(t)
        means = {c: np.mean(v) for c, v in lookup.items()}
        encoded[apply_idx] = [means.get(c, target[fit_idx].mean()) for c in categories[apply_idx]]
    return encoded
