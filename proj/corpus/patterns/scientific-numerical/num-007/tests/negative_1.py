import numpy as np

def fit_ols(X, y):
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return coef
