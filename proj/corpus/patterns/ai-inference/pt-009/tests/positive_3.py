import numpy as np

def top_k_positive(model, pool, k=100):
    p = model.predict_proba(pool)
    order = np.argsort(-p[:, 0])
    return pool[order[:k]]
