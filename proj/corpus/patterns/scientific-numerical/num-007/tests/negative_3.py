import numpy as np

def coefficient_covariance(X, sigma2):
    cov = sigma2 * np.linalg.inv(X.T @ X)
    return cov, np.sqrt(np.diag(cov))
