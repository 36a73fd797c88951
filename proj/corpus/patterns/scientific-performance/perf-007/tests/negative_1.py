import numpy as np

def mahalanobis_all(points, mean, cov):
    inv_cov = np.linalg.inv(cov)
    d = points - mean
    return np.sqrt(np.einsum("ij,jk,ik->i", d, inv_cov, d))
